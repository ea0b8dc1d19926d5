//! Classification is a rigid isotopy invariant: unchanged by projective
//! transforms and by reparametrization; normalization undoes a transform.

mod common;

use common::{random_class_curve, random_matrix, random_mobius, rng};
use nodal_quartic::classify::{classify, normalize};
use nodal_quartic::diagram::enumerate_all;
use nodal_quartic::exactmath::linalg::mat3_mul;
use nodal_quartic::realize::{realize_class, realize_from_quadratics};
use num_traits::Zero;

#[test]
fn transforms_and_reparametrizations_keep_the_class() {
    let mut r = rng(11);
    for class in enumerate_all(3) {
        let c = realize_class(&class).unwrap();
        for _ in 0..8 {
            let moved = c.transform(&random_matrix(&mut r)).unwrap();
            assert_eq!(classify(&moved).unwrap().class_id, class);
            let reparam = c.reparametrize(&random_mobius(&mut r)).unwrap();
            assert_eq!(classify(&reparam).unwrap().class_id, class);
        }
    }
}

#[test]
fn normalization_inverts_the_transform_up_to_monomial_matrices() {
    let mut r = rng(12);
    for class in enumerate_all(3) {
        let (_, c) = random_class_curve(&class, &mut r);
        let t = random_matrix(&mut r);
        let (s, out) = normalize(&c.transform(&t).unwrap()).unwrap();
        // S·T sends the seeded nodes (coordinate points) to coordinate points
        let st = mat3_mul(&s, &t);
        for row in &st {
            assert_eq!(row.iter().filter(|x| !x.is_zero()).count(), 1, "{class}");
        }
        for col in 0..3 {
            assert_eq!(st.iter().filter(|row| !row[col].is_zero()).count(), 1, "{class}");
        }
        let nodes = nodal_quartic::nodes::find_nodes(&out).unwrap();
        let q = [0, 1, 2].map(|k| nodes[k].quadratic.clone().unwrap());
        assert_eq!(out, realize_from_quadratics(&q).unwrap());
        assert_eq!(classify(&out).unwrap().class_id, class);
    }
}
