//! Acceptance criterion 9: every document in the corpus parses and
//! re-serializes byte-identically, and repeated verification runs produce
//! byte-identical reports.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use decostab::document::ModelDocument;

fn docs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../decostab/testdata/docs")
}

fn decostab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_decostab"))
}

#[test]
fn criterion_9_round_trip_and_determinism() {
    let start = Instant::now();
    let budget = Duration::from_secs(60);

    let mut docs = 0usize;
    let mut entries: Vec<_> = std::fs::read_dir(docs_dir())
        .expect("document corpus present")
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    assert!(!entries.is_empty(), "criterion 9: corpus must not be empty");
    for path in entries {
        let original = std::fs::read_to_string(&path).unwrap();
        let doc = ModelDocument::from_json(&original)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(
            doc.to_canonical_json(),
            original,
            "criterion 9: {} must re-serialize identically",
            path.display()
        );
        doc.build_model()
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        docs += 1;
    }

    let run = || {
        let out = decostab()
            .args(["verify", "--suite", "all", "--r-max", "2", "--d-max", "1"])
            .output()
            .expect("verify runs");
        assert!(
            out.status.success(),
            "verify must exit 0 with zero violations"
        );
        out.stdout
    };
    let first = run();
    let second = run();
    assert!(!first.is_empty(), "criterion 9: report must not be empty");
    assert_eq!(first, second, "criterion 9: reports must be byte-identical");

    let elapsed = start.elapsed();
    let lines = first.iter().filter(|&&b| b == b'\n').count();
    println!(
        "ACCEPTANCE 9 PASS: cli round-trip and determinism — docs={docs} report_lines={lines} elapsed={elapsed:?} (budget {budget:?})"
    );
    assert!(
        elapsed <= budget,
        "criterion 9 took {elapsed:?}, budget {budget:?}"
    );
}
