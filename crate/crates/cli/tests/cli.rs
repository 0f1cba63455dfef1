//! Byte-for-byte comparisons of CLI output against files in `tests/golden`.
//! Run with `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::Command;

fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tropsing"))
        .current_dir(dir("fixtures"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn golden(name: &str, args: &[&str]) {
    let (code, stdout) = run(args);
    assert_eq!(code, 0, "{name}: {stdout}");
    let path = dir("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(dir("golden")).unwrap();
        std::fs::write(&path, &stdout).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(stdout == expected, "{name} differs from {}\n{stdout}", path.display());
}

fn error_kind(args: &[&str]) -> String {
    let (code, stdout) = run(args);
    assert_eq!(code, 2, "{stdout}");
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("error is JSON");
    v["error"]["kind"].as_str().expect("kind").to_string()
}

#[test]
fn derive_conic() {
    golden("derive_conic.json", &["derive", "conic.json", "--form", "1,0:-1"]);
}

#[test]
fn subdivision_conic() {
    golden("subdivision_conic.json", &["subdivision", "conic.json"]);
}

#[test]
fn complex_single_cell() {
    golden("complex_single_cell.json", &["complex", "single_cell_conic.json"]);
}

#[test]
fn regular_conic_point() {
    golden(
        "is_singular_conic.json",
        &["is-singular", "conic.json", "--point", "0,0"],
    );
}

#[test]
fn singular_fully_marked_point() {
    golden(
        "is_singular_fully_marked.json",
        &["is-singular", "fully_marked.json", "--point", "3/2,-3/2"],
    );
}

#[test]
fn two_point_locus() {
    golden("locus_two_point.json", &["singular-locus", "two_point_curve.json"]);
}

#[test]
fn pair_of_lines_locus() {
    golden("locus_pair_of_lines.json", &["singular-locus", "pair_of_lines.json"]);
}

#[test]
fn flags_classification() {
    golden("classify_flags_1_6.json", &["classify-planar", "flags_1_6.json"]);
}

#[test]
fn pitfall_intersection() {
    golden(
        "intersect_pitfall.json",
        &["intersect", "pitfall_f.json", "pitfall_g.json", "--point", "0,0"],
    );
}

#[test]
fn distinct_lines_locus() {
    golden(
        "intersect_locus_lines.json",
        &["intersect-locus", "line_a.json", "line_b.json"],
    );
}

#[test]
fn lift_certificates() {
    golden("verify_shifted.json", &["verify-lift", "two_point_lift_shifted.json"]);
    golden(
        "verify_pair_of_lines.json",
        &["verify-lift", "pair_of_lines_lift.json", "--poly", "pair_of_lines.json"],
    );
    golden("verify_pitfall.json", &["verify-lift", "pitfall_lift.json"]);
}

#[test]
fn plots() {
    golden(
        "plot_pair_of_lines.json",
        &["plot", "pair_of_lines.json", "--format", "json"],
    );
    golden(
        "plot_two_singular_points.svg",
        &[
            "plot",
            "two_singular_points.json",
            "--overlay-derivative",
            "0,1:0",
            "--box",
            "-4,-3,6,3",
        ],
    );
}

#[test]
fn error_paths_exit_with_code_two() {
    assert_eq!(error_kind(&["is-singular", "missing.json", "--point", "0,0"]), "io");
    assert_eq!(
        error_kind(&["is-singular", "conic.json", "--point", "0"]),
        "dimension_mismatch"
    );
    assert_eq!(error_kind(&["is-singular", "conic.json", "--point", "0,x"]), "parse");
    assert_eq!(error_kind(&["derive", "conic.json", "--form", "1,0"]), "usage");
    assert_eq!(error_kind(&["plot", "conic.json", "--box", "1,1,0,0"]), "usage");
    assert_eq!(error_kind(&["frobnicate"]), "usage");
}

#[test]
fn help_exits_cleanly() {
    let (code, stdout) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("singular-locus"));
}
