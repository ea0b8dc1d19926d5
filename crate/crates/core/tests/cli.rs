//! The command-line tool as a black box: exit codes, byte-stable JSON, SVG
//! output and the resolution environment variable.

mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{random_moved_curve, rng};
use nodal_quartic::exactmath::{rat, BinaryForm, GaussianRational};
use nodal_quartic::nodes::{find_nodes, NodeKind};
use nodal_quartic::persist::write_json;
use nodal_quartic::plot::dot_count;
use nodal_quartic::realize::{realize_class, Curve};
use num_traits::Zero;

const BIN: &str = env!("CARGO_BIN_EXE_nodal-quartic");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("NODAL_QUARTIC_RESOLUTION").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn representative(dir: &Path, id: &str) -> PathBuf {
    let p = dir.join(format!("{}.json", id.replace('|', "_")));
    write_json(&p, &realize_class(&id.parse().unwrap()).unwrap()).unwrap();
    p
}

#[test]
fn enumerate_lists_the_classes() {
    let out = run(&["enumerate"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 9);
    let out = run(&["enumerate", "--chords", "3", "--json"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 5);
}

#[test]
fn outputs_are_byte_identical_and_numerics_are_strings() {
    let dir = tempfile::tempdir().unwrap();
    let curve = representative(dir.path(), "3-121323|s0");
    for cmd in ["classify", "nodes"] {
        let a = dir.path().join(format!("{cmd}_a.json"));
        let b = dir.path().join(format!("{cmd}_b.json"));
        assert_eq!(code(&run(&[cmd, s(&curve), "-o", s(&a)])), 0);
        assert_eq!(code(&run(&[cmd, s(&curve), "-o", s(&b)])), 0);
        let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
        assert_eq!(a, b, "{cmd}");
        let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
        assert_no_floats(&v);
    }
    let again = run(&["realize", "--class", "3-121323|s0"]);
    assert_eq!(again.stdout, std::fs::read(&curve).unwrap());
}

fn assert_no_floats(v: &serde_json::Value) {
    match v {
        serde_json::Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "float {n}"),
        serde_json::Value::Array(a) => a.iter().for_each(assert_no_floats),
        serde_json::Value::Object(o) => o.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn unreadable_and_malformed_input_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["classify", s(&dir.path().join("missing.json"))])), 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"degree\": 4").unwrap();
    assert_eq!(code(&run(&["classify", s(&bad)])), 1);
}

#[test]
fn shared_root_curve_is_not_generic() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("shared.json");
    // every coordinate vanishes at (0:1)
    let form = |c: &[i64]| serde_json::json!({"degree": 4, "coeffs": c.iter().map(|x| format!("{x}/1")).collect::<Vec<_>>()});
    let json = serde_json::json!({"degree": 4, "p0": form(&[1, 0, 0, 0, 0]), "p1": form(&[1, 2, 0, 0, 0]), "p2": form(&[3, 1, 5, 1, 0])});
    std::fs::write(&p, json.to_string()).unwrap();
    let out = run(&["classify", s(&p)]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn imaginary_nodes_exit_with_three() {
    let i = GaussianRational::i();
    let one = GaussianRational::real(rat(1));
    let lin = |a: GaussianRational| BinaryForm::new(vec![one.clone(), -a]);
    let q0 = BinaryForm::from_ints(&[1, -1, 0]);
    let q1 = lin(GaussianRational::new(rat(2), rat(1))).mul(&lin(GaussianRational::new(rat(-1), rat(3))));
    let q2 = q1.conj();
    let (p1, p2) = (q0.mul(&q2), q0.mul(&q1));
    let coords = [q1.mul(&q2), p1.add(&p2), p1.sub(&p2).scale(&(GaussianRational::real(rat(0)) - i))];
    let real = |f: &BinaryForm| {
        assert!(f.coeffs().iter().all(|c| c.im.is_zero()));
        BinaryForm::from_real(f.coeffs().iter().map(|c| c.re.clone()).collect())
    };
    let c = Curve::new(coords.each_ref().map(real)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("imaginary.json");
    write_json(&p, &c).unwrap();
    assert_eq!(code(&run(&["classify", s(&p)])), 3);
}

#[test]
fn path_between_classes_exits_with_four_and_frames_plot() {
    let dir = tempfile::tempdir().unwrap();
    let a = representative(dir.path(), "1-11|s2");
    let other = representative(dir.path(), "0-|s3");
    assert_eq!(code(&run(&["path", s(&a), s(&other), "--out", s(&dir.path().join("x"))])), 4);

    let mut r = rng(41);
    let b = dir.path().join("moved.json");
    write_json(&b, &random_moved_curve(&"1-11|s2".parse().unwrap(), &mut r)).unwrap();
    let path = dir.path().join("path");
    let out = run(&["path", s(&a), s(&b), "--steps", "6", "--out", s(&path)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let frames = dir.path().join("frames");
    assert_eq!(code(&run(&["plot", s(&path), "--out", s(&frames)])), 0);
    let svgs: Vec<_> = std::fs::read_dir(&frames).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(svgs.len(), 6);
    assert!(svgs.iter().all(|p| p.extension().unwrap() == "svg"));
}

/// A chart shows every solitary node except those on its line at infinity.
#[test]
fn plots_show_one_dot_per_visible_solitary_node() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = rng(42);
    for (id, solitary) in [("2-1212|s1", 1), ("1-11|s2", 2), ("0-|s3", 3), ("3-112233|s0", 0)] {
        let c = random_moved_curve(&id.parse().unwrap(), &mut r);
        let nodes = find_nodes(&c).unwrap();
        let solitary_nodes: Vec<_> = nodes.iter().filter(|n| n.kind == NodeKind::Solitary).collect();
        assert_eq!(solitary_nodes.len(), solitary);
        let p = dir.path().join("c.json");
        write_json(&p, &c).unwrap();
        for (k, chart) in ["x0", "x1", "x2"].into_iter().enumerate() {
            let visible = solitary_nodes.iter().filter(|n| n.position[k].to_f64() != 0.0).count();
            let svg = dir.path().join("c.svg");
            assert_eq!(code(&run(&["plot", s(&p), "--out", s(&svg), "--chart", chart])), 0);
            let text = std::fs::read_to_string(&svg).unwrap();
            assert_eq!(dot_count(&text), visible, "{id} {chart}");
            assert!(text.contains("<polyline") || id == "0-|s3");
        }
    }
}

#[test]
fn plot_rejects_bad_windows_and_sample_counts() {
    let dir = tempfile::tempdir().unwrap();
    let c = representative(dir.path(), "0-|s3");
    let svg = dir.path().join("c.svg");
    assert_eq!(code(&run(&["plot", s(&c), "--out", s(&svg), "--window", "1,-1,0,1"])), 1);
    assert_eq!(code(&run(&["plot", s(&c), "--out", s(&svg), "--samples", "10"])), 1);
    assert_eq!(code(&run(&["plot", s(&c), "--out", s(&svg), "--window", "-3/2,3/2,-2,2"])), 0);
}

#[test]
fn verify_passes_on_a_one_solitary_class_and_fails_a_wrong_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let c = representative(dir.path(), "2-1122|s1");
    let report = dir.path().join("report.json");
    let pgm = dir.path().join("r.pgm");
    let out = run(&["verify", s(&c), "-o", s(&report), "--pgm", s(&pgm)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["bezout_ok"], true);
    assert!(std::fs::read(&pgm).unwrap().starts_with(b"P5\n"));

    let expect = dir.path().join("expect.json");
    std::fs::write(&expect, r#"{"solitary_in_disk": true}"#).unwrap();
    assert_eq!(code(&run(&["verify", s(&c), "--expect", s(&expect), "-o", s(&report)])), 5);
}

#[test]
fn resolution_comes_from_the_environment_unless_overridden() {
    let dir = tempfile::tempdir().unwrap();
    let c = representative(dir.path(), "0-|s3");
    let with_env = |value: &str, extra: &[&str]| {
        let mut args = vec!["perturb", s(&c)];
        args.extend_from_slice(extra);
        Command::new(BIN).args(&args).env("NODAL_QUARTIC_RESOLUTION", value).output().unwrap()
    };
    let low = with_env("32", &[]);
    assert_eq!(code(&low), 1);
    assert!(String::from_utf8_lossy(&low.stderr).contains("32"));
    assert_eq!(code(&with_env("32", &["--resolution", "64"])), 0);
    assert_eq!(code(&with_env("64", &[])), 0);
}

#[test]
fn perturb_reports_nested_ovals_for_the_interleaved_class() {
    let dir = tempfile::tempdir().unwrap();
    let c = representative(dir.path(), "2-1212|s1");
    let out = run(&["perturb", s(&c), "--signs", "+,+,+"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["l"].as_u64(), v["injective_pairs"].as_u64()), (Some(2), Some(1)));
    assert_eq!(code(&run(&["perturb", s(&c), "--signs", "+,x,+"])), 1);
}
