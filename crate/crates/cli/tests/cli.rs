use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    report: Value,
}

fn tilecheck(dir: &Path, args: &[&str]) -> Run {
    tilecheck_env(dir, args, &[])
}

fn tilecheck_env(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tilecheck"));
    cmd.current_dir(dir).args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().unwrap(),
        report: serde_json::from_str(&text).unwrap_or(Value::Null),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const SHARP: &str = r#"{"dim":1,"boxes":[[["0","1/2"]],[["1","3/2"]]]}"#;
const UNIT: &str = r#"{"dim":1,"boxes":[[["0","1"]]]}"#;
const INTEGERS: &str = r#"{"dim":1,"reps":[["0"]],"lattice":{"generators":[["1"]]}}"#;

#[test]
fn verify_theorem3d_passes() {
    let dir = TempDir::new().unwrap();
    let run = tilecheck(dir.path(), &["verify-theorem3d", "--epsilon", "1/10"]);
    assert_eq!(run.code, 0);
    let res = &run.report["result"];
    assert_eq!(res["checkerboard"]["holds"], true);
    assert_eq!(res["all_lattice_configs_fail"], true);
    let configs = res["lattice_configs"].as_array().unwrap();
    assert_eq!(configs.len(), 4);
    assert!(configs.iter().all(|c| c["tiles"] == false && c["witness"]["count"] != 1));
    assert_eq!(run.report["schema"], "tilecheck-report/1");
}

#[test]
fn verify_theorem3d_in_four_dimensions() {
    let dir = TempDir::new().unwrap();
    let run = tilecheck(dir.path(), &["verify-theorem3d", "--epsilon", "1/10", "--dim", "4"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.report["result"]["measure"], "1");
}

#[test]
fn overlap_lemma_exit_codes() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "u.json", UNIT);
    write(dir.path(), "sharp.json", SHARP);
    let unit = tilecheck(dir.path(), &["overlap-lemma", "--set", "u.json"]);
    assert_eq!(unit.code, 0);
    let sharp = tilecheck(dir.path(), &["overlap-lemma", "--set", "sharp.json"]);
    assert_eq!(sharp.code, 1);
    assert_eq!(sharp.report["status"], "hypothesis-violation");
    let zeros = sharp.report["result"]["zeros_in_unit_interval"].as_array().unwrap();
    assert_eq!(zeros.len(), 1);
    assert_eq!(zeros[0]["lo"], "1/2");
}

#[test]
fn tiling_check_reports_witness() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "sharp.json", SHARP);
    write(dir.path(), "z.json", INTEGERS);
    let run = tilecheck(dir.path(), &["tiling-check", "--set", "sharp.json", "--system", "z.json", "--window", "[0,3]"]);
    assert_eq!(run.code, 1);
    let res = &run.report["result"];
    assert_eq!(res["verdict"], "not-packing");
    assert_eq!(res["witness"]["count"], 2);
    assert_eq!(res["mass"]["conserved"], true);
    let packing = tilecheck(dir.path(), &["packing-check", "--set", "sharp.json", "--system", "z.json", "--window", "[0,3]"]);
    assert_eq!(packing.code, 1);
}

#[test]
fn build_outputs_feed_checks() {
    let dir = TempDir::new().unwrap();
    let b = tilecheck(
        dir.path(),
        &["build", "counterexample3d", "--epsilon", "1/10", "--out", "E.json", "--manifest", "manifest.json"],
    );
    assert_eq!(b.code, 0);
    assert_eq!(b.report["outputs"].as_array().unwrap().len(), 2);
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["segments"].as_array().unwrap().len(), 9);

    let m = tilecheck(dir.path(), &["measure", "--set", "E.json"]);
    assert_eq!(m.code, 0);
    assert_eq!(m.report["result"]["measure"], "1");
    assert_eq!(m.report["result"]["bounding_box"], "[0,11/10]x[0,11/10]x[0,1]");

    assert_eq!(tilecheck(dir.path(), &["build", "checkerboard", "--out", "cb.json"]).code, 0);
    let t = tilecheck(dir.path(), &["tiling-check", "--set", "E.json", "--system", "cb.json", "--window", "[0,2]x[0,2]x[0,1]"]);
    assert_eq!(t.code, 0);
    assert_eq!(t.report["result"]["extends_globally"], true);

    for i in ["1", "2", "3", "4"] {
        assert_eq!(tilecheck(dir.path(), &["build", "lattice-config", "--index", i, "--out", "l.json"]).code, 0);
        let t = tilecheck(dir.path(), &["tiling-check", "--set", "E.json", "--system", "l.json", "--window", "[0,2]x[0,2]x[0,1]"]);
        assert_eq!(t.code, 1, "config {i}");
    }

    assert_eq!(tilecheck(dir.path(), &["build", "lift", "--set", "E.json", "--dim", "5", "--out", "E5.json"]).code, 0);
    let m5 = tilecheck(dir.path(), &["measure", "--set", "E5.json"]);
    assert_eq!(m5.report["result"]["dim"], 5);
    assert_eq!(m5.report["result"]["measure"], "1");
}

#[test]
fn json_round_trips_through_boolean() {
    let dir = TempDir::new().unwrap();
    assert_eq!(tilecheck(dir.path(), &["build", "example1d", "--out", "e.json"]).code, 0);
    let run = tilecheck(dir.path(), &["boolean", "--op", "union", "--a", "e.json", "--b", "e.json", "--out", "u.json"]);
    assert_eq!(run.code, 0);
    assert_eq!(
        std::fs::read_to_string(dir.path().join("e.json")).unwrap(),
        std::fs::read_to_string(dir.path().join("u.json")).unwrap()
    );
    write(dir.path(), "unit.json", UNIT);
    let d = tilecheck(dir.path(), &["boolean", "--op", "symm-diff", "--a", "e.json", "--b", "unit.json"]);
    assert_eq!(d.report["result"]["measure"], "1");
}

fn slice_area(eps_num: i64, eps_den: i64, level: (i64, i64)) -> String {
    use tilecheck::constructions::Segment;
    use tilecheck::rational::{format_rational, int, rat};
    let eps = rat(eps_num, eps_den);
    let z = rat(level.0, level.1);
    let mut area = int(0);
    for seg in Segment::ALL {
        if seg.pattern().iter().any(|(a, b)| *a <= z && z < *b) {
            let ((x0, x1), (y0, y1)) = seg.footprint(&eps);
            area += (x1 - x0) * (y1 - y0);
        }
    }
    format_rational(&area)
}

#[test]
fn render_slice_is_deterministic_and_matches_patterns() {
    let dir = TempDir::new().unwrap();
    tilecheck(dir.path(), &["build", "counterexample3d", "--epsilon", "1/10", "--out", "E.json"]);
    for (level, num, den) in [("1/32", 1, 32), ("31/32", 31, 32)] {
        let a = tilecheck(dir.path(), &["render-slice", "--set", "E.json", "--axis", "2", "--level", level, "--out", "a.svg"]);
        let b = tilecheck(dir.path(), &["render-slice", "--set", "E.json", "--axis", "2", "--level", level, "--out", "b.svg"]);
        assert_eq!((a.code, b.code), (0, 0));
        assert_eq!(a.report["result"]["area"], slice_area(1, 10, (num, den)));
        let sa = std::fs::read(dir.path().join("a.svg")).unwrap();
        let sb = std::fs::read(dir.path().join("b.svg")).unwrap();
        assert_eq!(sa, sb);
        assert!(String::from_utf8(sa).unwrap().starts_with("<svg"));
    }
    let out = tilecheck(dir.path(), &["render-slice", "--set", "E.json", "--level", "3/2", "--out", "c.svg"]);
    assert_eq!(out.code, 2);
    write(dir.path(), "sq.json", r#"{"dim":2,"boxes":[[["0","1"],["0","1"]]]}"#);
    let sq = tilecheck(dir.path(), &["render-slice", "--set", "sq.json", "--out", "sq.svg"]);
    assert_eq!(sq.report["result"]["rectangles"], 1);
}

#[test]
fn spectral_commands() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "sharp.json", SHARP);
    write(dir.path(), "spectrum.json", r#"{"reps":["0","1/2"],"period":"2"}"#);
    let run = tilecheck(dir.path(), &["spectrum-check", "--set", "sharp.json", "--spectrum", "spectrum.json", "--samples", "200"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.report["result"]["orthogonality"]["pass"], true);
    assert_eq!(run.report["result"]["density"], "1");

    write(dir.path(), "z.json", r#"{"reps":["0"],"period":"1"}"#);
    let bad = tilecheck(dir.path(), &["spectrum-check", "--set", "sharp.json", "--spectrum", "z.json", "--samples", "10"]);
    assert_eq!(bad.code, 1);

    assert_eq!(tilecheck(dir.path(), &["ft-zero", "--set", "sharp.json", "--xi", "1/2"]).code, 0);
    assert_eq!(tilecheck(dir.path(), &["ft-zero", "--set", "sharp.json", "--xi", "1/4"]).code, 1);
    assert_eq!(tilecheck(dir.path(), &["ft-zero", "--set", "sharp.json", "--xi", "0"]).code, 2);

    for delta in ["1", "1/10", "1/100"] {
        assert_eq!(tilecheck(dir.path(), &["fejer", "--delta", delta]).code, 0, "δ = {delta}");
    }
}

#[test]
fn autocorr_and_completion() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "sharp.json", SHARP);
    let run = tilecheck(dir.path(), &["autocorr", "--set", "sharp.json", "--out", "g.json", "--svg", "g.svg"]);
    assert_eq!(run.code, 0);
    let g = &run.report["result"]["autocorrelation"];
    assert_eq!(g["breakpoints"][0], "-3/2");
    assert_eq!(run.report["result"]["integral"], "1");
    assert!(dir.path().join("g.svg").exists());

    let c = tilecheck(dir.path(), &["complete-1d", "--set", "sharp.json", "--window", "[0,4]", "--out", "t.json"]);
    assert_eq!(c.code, 0);
    let t = tilecheck(dir.path(), &["tiling-check", "--set", "sharp.json", "--system", "t.json", "--window", "[0,4]"]);
    assert_eq!(t.code, 0);

    write(dir.path(), "bad.json", r#"{"dim":1,"boxes":[[["0","1/2"]],[["3/4","5/4"]]]}"#);
    let f = tilecheck(dir.path(), &["complete-1d", "--set", "bad.json", "--window", "[0,4]"]);
    assert_eq!(f.code, 1);
    assert_eq!(f.report["result"]["reason"], "no-fit");
}

#[test]
fn extraction_command() {
    let dir = TempDir::new().unwrap();
    let b = tilecheck(
        dir.path(),
        &["build", "near-square", "--epsilon", "1/40", "--profile", "bumps", "--seed", "3", "--out", "sq.json", "--patch", "patch.json"],
    );
    assert_eq!(b.code, 0);
    let x = tilecheck(dir.path(), &["extract-lattice-2d", "--set", "sq.json", "--patch", "patch.json"]);
    assert_eq!(x.code, 0);
    assert_eq!(x.report["result"]["lattice_tiling"]["holds"], true);

    write(dir.path(), "lonely.json", r#"{"dim":2,"reps":[["0","0"]],"lattice":null}"#);
    let none = tilecheck(dir.path(), &["extract-lattice-2d", "--set", "sq.json", "--patch", "lonely.json"]);
    assert_eq!(none.code, 1);
    assert_eq!(none.report["result"]["no_corner"], true);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "junk.json", "{not json");
    let run = tilecheck(dir.path(), &["measure", "--set", "junk.json"]);
    assert_eq!(run.code, 2);
    assert_eq!(run.report["status"], "error");
    assert_eq!(tilecheck(dir.path(), &["measure", "--set", "missing.json"]).code, 2);
    write(dir.path(), "sq.json", r#"{"dim":2,"boxes":[[["0","1"],["0","1"]]]}"#);
    write(dir.path(), "z.json", INTEGERS);
    let mismatch = tilecheck(dir.path(), &["tiling-check", "--set", "sq.json", "--system", "z.json", "--window", "[0,1]"]);
    assert_eq!(mismatch.code, 2);
    assert_eq!(tilecheck(dir.path(), &["no-such-command"]).code, 2);
}

#[test]
fn reports_are_deterministic_and_threads_configurable() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "sharp.json", SHARP);
    write(dir.path(), "z.json", INTEGERS);
    let args = ["tiling-check", "--set", "sharp.json", "--system", "z.json", "--window", "[0,3]"];
    let a = tilecheck_env(dir.path(), &args, &[("TILECHECK_THREADS", "1")]);
    let b = tilecheck_env(dir.path(), &args, &[("TILECHECK_THREADS", "3")]);
    assert_eq!(a.report["checksum"], b.report["checksum"]);
    assert_eq!(a.report["timing"]["threads"], 1);
    assert_eq!(b.report["timing"]["threads"], 3);
    assert_eq!(a.report["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(tilecheck_env(dir.path(), &args, &[("TILECHECK_THREADS", "0")]).code, 2);
}
