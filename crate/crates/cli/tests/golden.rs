use sheaf_forge_cli::golden::verify;
use sheaf_forge_cli::report::Status;

const GOLDEN: &str = include_str!("data/verify_report.json");

#[test]
fn full_suite_passes_and_matches_the_golden_file() {
    let report = verify(None);
    for c in &report.checks {
        assert_eq!(c.status, Status::Pass, "{} [{}]: {}", c.id, c.anchor, c.detail);
    }
    let scrubbed = report.to_scrubbed_json();
    if std::env::var_os("SHEAF_FORGE_BLESS").is_some() {
        std::fs::write(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/verify_report.json"), &scrubbed).unwrap();
        return;
    }
    assert_eq!(scrubbed, GOLDEN.trim_end());
}

#[test]
fn reports_are_deterministic() {
    let a = verify(Some("rem-3.3")).to_scrubbed_json();
    let b = verify(Some("rem-3.3")).to_scrubbed_json();
    assert_eq!(a, b);
}
