//! Sampled rigid isotopies: endpoints, certificates, and the path directory.

mod common;

use common::{random_moved_curve, rng};
use nodal_quartic::isotopy::{build_path, read_path_dir, step_file_name, verify_generic};
use nodal_quartic::realize::realize_class;
use nodal_quartic::Error;

#[test]
fn path_directory_round_trip() {
    let class = "2-1122|s1".parse().unwrap();
    let mut r = rng(21);
    let (a, b) = (random_moved_curve(&class, &mut r), random_moved_curve(&class, &mut r));
    let path = build_path(&a, &b, 12).unwrap();
    assert_eq!(path.steps.len(), 12);
    assert_eq!(path.steps[0].curve, a);
    assert_eq!(path.steps[11].curve, b);
    for s in &path.steps {
        assert_eq!(verify_generic(&s.curve).unwrap().class_id, class);
        assert!(s.certificate.check(&s.curve));
    }

    let dir = tempfile::tempdir().unwrap();
    path.write_dir(dir.path()).unwrap();
    assert!(dir.path().join(step_file_name(11)).exists());
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["class"], "2-1122|s1");
    assert_eq!(manifest["steps"], 12);
    assert_eq!(manifest["certificates"].as_array().unwrap().len(), 12);
    let (back_class, frames) = read_path_dir(dir.path()).unwrap();
    assert_eq!(back_class, class);
    assert_eq!(frames, path.curves().cloned().collect::<Vec<_>>());
}

#[test]
fn different_classes_are_refused() {
    let a = realize_class(&"3-123123|s0".parse().unwrap()).unwrap();
    let b = realize_class(&"3-121323|s0".parse().unwrap()).unwrap();
    assert!(matches!(build_path(&a, &b, 8), Err(Error::DifferentClass(..))));
}
