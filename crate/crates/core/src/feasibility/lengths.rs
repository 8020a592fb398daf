//! Which lengths admit a projective `q^r`-divisible code.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LengthStatus {
    Exists,
    NotExists,
    Open,
}

impl fmt::Display for LengthStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LengthStatus::Exists => "exists",
            LengthStatus::NotExists => "not_exists",
            LengthStatus::Open => "open",
        })
    }
}

/// Binary `2^4`-divisible lengths whose existence is undecided.
pub const OPEN_BINARY_R4: [usize; 19] = [
    130, 163, 164, 165, 185, 215, 216, 232, 233, 244, 245, 246, 247, 274, 275, 277, 278, 306, 309,
];

/// Ternary `3^2`-divisible lengths whose existence is undecided.
pub const OPEN_TERNARY_R2: [usize; 10] = [70, 77, 99, 100, 101, 102, 113, 114, 115, 128];

/// Status of the existence question for a projective `q^r`-divisible code
/// of effective length `n`.
///
/// Binary `r <= 3` is fully characterized. For binary `r = 4` and ternary
/// `r = 2` only the undecided lengths are tabulated; other lengths in those
/// regimes are reported as [`Error::UnknownParameterRegime`].
pub fn known_length_status(q: u32, r: u32, n: usize) -> Result<LengthStatus> {
    use LengthStatus::*;
    if n == 0 {
        return Err(Error::PreconditionViolated(
            "length must be positive".into(),
        ));
    }
    let status = match (q, r) {
        (2, 1) => {
            if n >= 3 {
                Exists
            } else {
                NotExists
            }
        }
        (2, 2) => {
            if n == 7 || n == 8 || n >= 14 {
                Exists
            } else {
                NotExists
            }
        }
        (2, 3) => match n {
            15 | 16 | 30 | 31 | 32 | 45..=51 => Exists,
            n if n >= 60 => Exists,
            _ => NotExists,
        },
        (2, 4) if OPEN_BINARY_R4.contains(&n) => Open,
        (3, 2) if OPEN_TERNARY_R2.contains(&n) => Open,
        (2, 4) | (3, 2) => {
            return Err(Error::UnknownParameterRegime {
                q,
                r,
                detail: format!(": only undecided lengths are tabulated, {n} is not one of them"),
            })
        }
        _ => {
            return Err(Error::UnknownParameterRegime {
                q,
                r,
                detail: String::new(),
            })
        }
    };
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triply_even_lengths() {
        assert_eq!(
            known_length_status(2, 3, 59).unwrap(),
            LengthStatus::NotExists
        );
        assert_eq!(
            known_length_status(2, 3, 52).unwrap(),
            LengthStatus::NotExists
        );
        let exists: Vec<usize> = (1..=70)
            .filter(|&n| known_length_status(2, 3, n).unwrap() == LengthStatus::Exists)
            .collect();
        let mut expect = vec![15, 16, 30, 31, 32, 45, 46, 47, 48, 49, 50, 51];
        expect.extend(60..=70);
        assert_eq!(exists, expect);
    }

    #[test]
    fn doubly_even_lengths() {
        let exists: Vec<usize> = (1..=16)
            .filter(|&n| known_length_status(2, 2, n).unwrap() == LengthStatus::Exists)
            .collect();
        assert_eq!(exists, vec![7, 8, 14, 15, 16]);
        assert_eq!(
            known_length_status(2, 2, 11).unwrap(),
            LengthStatus::NotExists
        );
    }

    #[test]
    fn even_lengths() {
        assert_eq!(
            known_length_status(2, 1, 2).unwrap(),
            LengthStatus::NotExists
        );
        assert_eq!(known_length_status(2, 1, 3).unwrap(), LengthStatus::Exists);
    }

    #[test]
    fn open_lists() {
        assert_eq!(known_length_status(2, 4, 130).unwrap(), LengthStatus::Open);
        assert_eq!(known_length_status(3, 2, 70).unwrap(), LengthStatus::Open);
        assert!(matches!(
            known_length_status(2, 4, 131),
            Err(Error::UnknownParameterRegime { q: 2, r: 4, .. })
        ));
        assert!(matches!(
            known_length_status(5, 1, 10),
            Err(Error::UnknownParameterRegime { .. })
        ));
    }
}
