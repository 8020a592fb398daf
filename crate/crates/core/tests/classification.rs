mod common;

use std::collections::BTreeMap;
use std::process::Command;

use divcodes::enumerate::{
    classify, lift, residual_prescribed_search, ClassifyParams, CodeDatabase, IsoMode,
    ResidualSearchParams,
};
use divcodes::geometry::{construct_named, NamedCode};
use divcodes::gf2::is_projective;
use divcodes::{Error, GeneratorMatrix};

const TRIPLY: [usize; 5] = [8, 16, 24, 32, 40];

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_divcodes"))
}

fn scratch_file(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("divcodes-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn small_classifications_match_brute_force() {
    for (delta, weights, max_n) in [
        (1, &[1, 2, 3][..], 8),
        (2, &[2, 4, 6, 8, 10, 12][..], 12),
        (2, &[6, 8][..], 12),
        (3, &[3, 6, 9][..], 12),
        (4, &[4, 8, 12][..], 12),
    ] {
        let db = classify(&ClassifyParams::new(delta, weights, max_n), None).unwrap();
        let mut counts = db.counts();
        counts.retain(|&(_, k), _| k <= 3);
        assert_eq!(
            counts,
            common::brute_force_counts(weights, max_n, 3),
            "{weights:?}"
        );
    }
}

#[test]
fn small_tables() {
    let db = classify(&ClassifyParams::new(8, &TRIPLY, 24), None).unwrap();
    let column: Vec<usize> = (1..=6).map(|k| db.bucket(24, k).len()).collect();
    assert_eq!(column, [1, 2, 3, 4, 4, 1]);
    let db = classify(&ClassifyParams::new(8, &TRIPLY, 8), None).unwrap();
    assert_eq!(db.len(), 1);
    assert_eq!(
        db.records().next().unwrap().matrix().to_line(false),
        "8 1 1 1 1 1 1 1 1 1"
    );

    let p = ClassifyParams::new(4, &[4, 8, 12, 16], 19).projective(true);
    let counts = classify(&p, None).unwrap().counts();
    assert_eq!((counts[&(19, 7)], counts[&(19, 8)]), (2, 1));
}

#[test]
fn runs_are_deterministic() {
    let run = |mode: IsoMode, jobs: usize| {
        let p = ClassifyParams::new(8, &TRIPLY, 26).mode(mode).jobs(jobs);
        classify(&p, None).unwrap()
    };
    let first = run(IsoMode::Augment, 1);
    assert_eq!(first.to_text(), run(IsoMode::Augment, 1).to_text());
    assert_eq!(first.to_text(), run(IsoMode::Augment, 4).to_text());
    let hashed = run(IsoMode::Hash, 2);
    assert_eq!(
        first.records().collect::<Vec<_>>(),
        hashed.records().collect::<Vec<_>>()
    );
}

#[test]
fn interrupted_run_resumes_from_the_command_line() {
    let path = scratch_file("resume.db");
    let mut p = ClassifyParams::new(8, &TRIPLY, 28);
    p.checkpoint = Some(path.clone());
    p.unit_limit = Some(2);
    let partial = classify(&p, None).unwrap();
    assert!(!partial.frontier.is_empty());

    let out = bin()
        .args([
            "classify",
            "--weights",
            "8,16,24,32,40",
            "--max-n",
            "28",
            "--resume",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let resumed = CodeDatabase::read(&path).unwrap();
    assert!(resumed.frontier.is_empty());
    let full = classify(&ClassifyParams::new(8, &TRIPLY, 28), None).unwrap();
    assert_eq!(
        resumed.records().collect::<Vec<_>>(),
        full.records().collect::<Vec<_>>()
    );

    let out = bin()
        .args([
            "classify",
            "--weights",
            "8,16,24,32,40",
            "--max-n",
            "30",
            "--resume",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resume mismatch"));
    let err = classify(&ClassifyParams::new(8, &TRIPLY, 30), Some(resumed)).unwrap_err();
    assert!(matches!(err, Error::ResumeMismatch(_)));
}

#[test]
fn database_file_round_trip() {
    let db = classify(&ClassifyParams::new(8, &TRIPLY, 24), None).unwrap();
    let path = scratch_file("round-trip.db");
    db.write(&path).unwrap();
    assert_eq!(CodeDatabase::read(&path).unwrap(), db);
}

/// Direct sum of two first-order Reed-Muller codes of length 16 and the
/// length-8 repetition code: a `[40, 11]` code with weights in `{8, ..., 40}`.
fn rm_rm_rep() -> GeneratorMatrix {
    let mut cols = Vec::new();
    for shift in [0, 5] {
        cols.extend((0..16u64).map(|x| (1 | x << 1) << shift));
    }
    cols.extend(std::iter::repeat_n(1u64 << 10, 8));
    GeneratorMatrix::from_columns(11, &cols)
}

#[test]
fn weight_cut_keeps_every_projective_output() {
    let base = rm_rm_rep();
    for residual in [NamedCode::C2, NamedCode::C3] {
        let residual = construct_named(residual);
        let mut counts = Vec::new();
        for weight_cut in [false, true] {
            let params = ResidualSearchParams {
                weight_cut,
                ..Default::default()
            };
            let out = lift(&base, &residual, &params).unwrap();
            counts.push(out.iter().filter(|g| is_projective(g)).count());
        }
        assert_eq!(counts[0], counts[1]);
        assert_eq!(counts[0], 0);
    }
}

#[test]
fn relaxed_lifts_emit_non_projective_codes() {
    let mut db = CodeDatabase::new();
    for g in [
        GeneratorMatrix::from_row_strs(&[&"1".repeat(40)]).unwrap(),
        rm_rm_rep(),
    ] {
        let cf = divcodes::enumerate::canonical_form(&g).unwrap();
        db.insert(cf.key, cf.aut_order);
    }
    let params = ResidualSearchParams {
        max_outputs: Some(3),
        ..Default::default()
    };
    let out = residual_prescribed_search(&construct_named(NamedCode::C2), &db, &params).unwrap();
    let mut per_base: BTreeMap<_, usize> = BTreeMap::new();
    for o in &out {
        assert_eq!(o.code.n(), 59);
        assert!(!o.projective);
        *per_base.entry(o.base.clone()).or_default() += 1;
    }
    assert!(!per_base.is_empty());
}

/// The complete length-40 database and both residual searches. Takes well
/// over ten minutes; run with `--ignored`.
#[test]
#[ignore]
fn full_length_40_database() {
    let db = classify(&ClassifyParams::new(8, &TRIPLY, 40).jobs(4), None).unwrap();
    let column: Vec<usize> = (1..=11).map(|k| db.bucket(40, k).len()).collect();
    assert_eq!(column, [1, 4, 17, 64, 194, 347, 323, 177, 59, 11, 1]);
    let params = ResidualSearchParams {
        weight_cut: true,
        ..Default::default()
    };
    for residual in [NamedCode::C2, NamedCode::C3] {
        let out = residual_prescribed_search(&construct_named(residual), &db, &params).unwrap();
        assert!(out.iter().all(|o| !o.projective));
    }
}
