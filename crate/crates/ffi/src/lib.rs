//! C interface to `divcodes`.
//!
//! Matrices live behind the opaque [`DcMatrix`] handle. Every fallible call
//! returns a [`DcStatus`]; on failure the message is available from
//! [`dc_last_error`] until the next failing call on the same thread.
//! Strings handed out by the library must be released with
//! [`dc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use divcodes::enumerate::canonical_form;
use divcodes::feasibility::{
    known_length_status, solve_truncated_system, FeasibilityInstance, FeasibleSolution,
    LengthStatus,
};
use divcodes::geometry::construct_named;
use divcodes::gf2::is_projective;
use divcodes::spectra::{macwilliams_transform, weight_distribution};
use divcodes::verify::verify59;
use divcodes::{Error, GeneratorMatrix, WeightDistribution};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    RankDeficient = 4,
    TooLarge = 5,
    Precondition = 6,
    Infeasible = 7,
    /// A count does not fit the caller's 64-bit buffer.
    Overflow = 8,
    BufferTooSmall = 9,
    /// A mathematical check did not hold.
    Fails = 10,
    Internal = 99,
}

/// Existence status of a projective divisible code of a given length.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcLengthStatus {
    Exists = 0,
    NotExists = 1,
    Open = 2,
}

/// Opaque generator matrix.
pub struct DcMatrix(GeneratorMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> DcStatus {
    match e {
        Error::Parse(_) | Error::CorruptDatabase { .. } => DcStatus::Parse,
        Error::RankDeficient { .. } => DcStatus::RankDeficient,
        Error::DimensionTooLarge { .. } | Error::SolutionLimitExceeded(_) => DcStatus::TooLarge,
        Error::InfeasibleBudget(_) | Error::UnboundedPolytope(_) => DcStatus::Infeasible,
        Error::StepFailed { .. } => DcStatus::Fails,
        _ => DcStatus::Precondition,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (DcStatus, String)>) -> DcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DcStatus::Internal
        }
    }
}

trait Lift<T> {
    fn lift(self) -> Result<T, (DcStatus, String)>;
}

impl<T> Lift<T> for divcodes::Result<T> {
    fn lift(self) -> Result<T, (DcStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (DcStatus, String) {
    (DcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (DcStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (DcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn matrix<'a>(m: *const DcMatrix) -> Result<&'a GeneratorMatrix, (DcStatus, String)> {
    m.as_ref().map(|m| &m.0).ok_or_else(|| null("matrix"))
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), (DcStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (DcStatus::Internal, "interior NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn give_matrix(
    out: *mut *mut DcMatrix,
    g: GeneratorMatrix,
) -> Result<(), (DcStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(DcMatrix(g)));
    Ok(())
}

/// Message of the last failing call on this thread, or NULL. The pointer is
/// owned by the library and valid until the next failing call.
#[no_mangle]
pub extern "C" fn dc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `n k c_1 ... c_n` with hexadecimal columns.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_parse(text: *const c_char, out: *mut *mut DcMatrix) -> DcStatus {
    guard(|| {
        let g = GeneratorMatrix::parse_line(read_str(text, "text")?).lift()?;
        give_matrix(out, g)
    })
}

/// Builds one of the named codes (`C1`, `C2`, `C3`, `golay24`, ...).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_named(name: *const c_char, out: *mut *mut DcMatrix) -> DcStatus {
    guard(|| {
        let name = read_str(name, "name")?.parse().lift()?;
        give_matrix(out, construct_named(name))
    })
}

/// # Safety
/// `m` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_free(m: *mut DcMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Length of the code, 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_n(m: *const DcMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.n())
}

/// Number of rows, 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_k(m: *const DcMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.k())
}

/// Text form of the matrix, in the format accepted by [`dc_matrix_parse`].
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_to_string(
    m: *const DcMatrix,
    out: *mut *mut c_char,
) -> DcStatus {
    guard(|| give_string(out, matrix(m)?.to_line(false)))
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_is_projective(m: *const DcMatrix, out: *mut bool) -> DcStatus {
    guard(|| {
        let g = matrix(m)?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = is_projective(g);
        Ok(())
    })
}

fn to_u64(counts: &[u128]) -> Result<Vec<u64>, (DcStatus, String)> {
    counts
        .iter()
        .map(|&c| {
            u64::try_from(c).map_err(|_| (DcStatus::Overflow, format!("count {c} exceeds 64 bits")))
        })
        .collect()
}

unsafe fn fill(values: &[u64], buf: *mut u64, len: usize) -> Result<(), (DcStatus, String)> {
    if buf.is_null() {
        return Err(null("buffer"));
    }
    if len < values.len() {
        return Err((
            DcStatus::BufferTooSmall,
            format!("buffer holds {len} entries, {} needed", values.len()),
        ));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

/// Writes `A_0, ..., A_n` into `buf`, which must hold `n + 1` entries.
///
/// # Safety
/// `m` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn dc_weight_distribution(
    m: *const DcMatrix,
    buf: *mut u64,
    len: usize,
) -> DcStatus {
    guard(|| {
        let a = weight_distribution(matrix(m)?).lift()?;
        fill(&to_u64(a.counts())?, buf, len)
    })
}

/// MacWilliams transform of `a[0..=n]` for a code of dimension `k`; writes
/// `B_0, ..., B_n` into `out` (`n + 1` entries, where `a_len = n + 1`).
///
/// # Safety
/// `a` must be valid for `a_len` reads and `out` for `a_len` writes.
#[no_mangle]
pub unsafe extern "C" fn dc_macwilliams(
    a: *const u64,
    a_len: usize,
    k: usize,
    out: *mut u64,
) -> DcStatus {
    guard(|| {
        if a.is_null() {
            return Err(null("distribution"));
        }
        if a_len == 0 {
            return Err((
                DcStatus::Precondition,
                "distribution needs at least A_0".into(),
            ));
        }
        let counts = std::slice::from_raw_parts(a, a_len)
            .iter()
            .map(|&c| c as u128)
            .collect();
        let b = macwilliams_transform(&WeightDistribution::from_counts(counts), k).lift()?;
        fill(&to_u64(b.as_distribution().counts())?, out, a_len)
    })
}

/// Canonical key (sorted hexadecimal column list) and automorphism group
/// order in decimal. Either output may be NULL.
///
/// # Safety
/// `m` must be a live handle; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_canonical_form(
    m: *const DcMatrix,
    key: *mut *mut c_char,
    aut_order: *mut *mut c_char,
) -> DcStatus {
    guard(|| {
        let cf = canonical_form(matrix(m)?).lift()?;
        if !key.is_null() {
            give_string(key, cf.key.to_matrix().to_line(false))?;
        }
        if !aut_order.is_null() {
            give_string(aut_order, cf.aut_order.to_string())?;
        }
        Ok(())
    })
}

/// Known status of a projective `q^r`-divisible code of length `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_length_status(
    q: u32,
    r: u32,
    n: usize,
    out: *mut DcLengthStatus,
) -> DcStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = match known_length_status(q, r, n).lift()? {
            LengthStatus::Exists => DcLengthStatus::Exists,
            LengthStatus::NotExists => DcLengthStatus::NotExists,
            LengthStatus::Open => DcLengthStatus::Open,
        };
        Ok(())
    })
}

/// Nonnegative integer solutions of the first `identities` MacWilliams
/// identities for length `n`, nonzero weights `weights[0..len]` and
/// dimension `k` (0 scans every dimension), as TSV with a header line.
///
/// # Safety
/// `weights` must be valid for `len` reads and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_feasible_distributions(
    n: usize,
    weights: *const usize,
    len: usize,
    k: usize,
    identities: usize,
    projective: bool,
    out: *mut *mut c_char,
) -> DcStatus {
    guard(|| {
        if weights.is_null() {
            return Err(null("weights"));
        }
        let w = std::slice::from_raw_parts(weights, len);
        let mut inst = FeasibilityInstance::new(n, w)
            .with_identities(identities)
            .with_projective(projective);
        if k > 0 {
            inst = inst.with_dimension(k);
        }
        let sols = solve_truncated_system(&inst).lift()?;
        let mut text = FeasibleSolution::tsv_header(&inst.weights);
        text.push('\n');
        for s in &sols {
            text.push_str(&s.tsv_row(&inst.weights));
            text.push('\n');
        }
        give_string(out, text)
    })
}

/// Runs the length-59 nonexistence check. Returns `Ok` when every step
/// holds and `Fails` otherwise; `report` (may be NULL) receives the
/// line-oriented records.
///
/// # Safety
/// `report` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn dc_verify59(report: *mut *mut c_char) -> DcStatus {
    guard(|| {
        let steps = verify59().lift()?;
        if !report.is_null() {
            let text: String = steps.iter().map(|s| s.record() + "\n").collect();
            give_string(report, text)?;
        }
        Ok(())
    })
}
