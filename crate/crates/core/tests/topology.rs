//! Implicit equation, Bezout lines, raster components, solitary node
//! placement and smoothings.

mod common;

use common::{random_class_curve, random_matrix, rng};
use nodal_quartic::diagram::ClassId;
use nodal_quartic::exactmath::linalg::null_space;
use nodal_quartic::exactmath::{rat, BinaryForm, Rational};
use nodal_quartic::realize::{realize_class, Curve};
use nodal_quartic::topology::*;
use num_traits::Zero;

fn class(id: &str) -> ClassId {
    id.parse().unwrap()
}

/// Exponents of the degree-`d` monomials in three variables.
fn exponents(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Columns: every degree-`d` monomial composed with θ, as a binary form of
/// degree `4d`. Its null space is the space of degree-`d` forms vanishing on
/// the curve.
fn vanishing_forms(c: &Curve, d: usize) -> Vec<Vec<Rational>> {
    let cols: Vec<BinaryForm> = exponents(d)
        .iter()
        .map(|e| (0..3).fold(BinaryForm::one(), |acc, i| acc.mul(&c.form(i).pow(e[i]))))
        .collect();
    let rows = 4 * d + 1;
    let m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| cols.iter().map(|f| if f.degree() == 0 && f.is_zero() { rat(0) } else { f.coeff(r).re.clone() }).collect())
        .collect();
    null_space(&m, cols.len())
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    let k = a.iter().position(|x| !x.is_zero()).unwrap();
    if b[k].is_zero() {
        return false;
    }
    let l = &b[k] / &a[k];
    a.iter().zip(b).all(|(x, y)| &(x * &l) == y)
}

#[test]
fn implicit_equation_matches_the_null_space_oracle() {
    let mut r = rng(31);
    for id in ["3-121323|s0", "2-1212|s1", "0-|s3"] {
        let (_, c) = random_class_curve(&class(id), &mut r);
        let c = c.transform(&random_matrix(&mut r)).unwrap();
        let f = implicitize(&c).unwrap();
        let ns = vanishing_forms(&c, 4);
        assert_eq!(ns.len(), 1, "{id}: quartics through the curve");
        assert!(proportional(&ns[0], f.coeffs()), "{id}");
        assert!(f.compose_curve(&c).is_zero());
    }
}

/// A factorization F = G·H would put the irreducible image inside G = 0 or
/// H = 0, so no form of degree 1, 2 or 3 may vanish on the curve.
#[test]
fn implicit_equation_is_irreducible_for_random_seeds() {
    let mut r = rng(32);
    for id in ["3-112332|s0", "2-1122|s1", "1-11|s2"] {
        let (_, c) = random_class_curve(&class(id), &mut r);
        for d in 1..=3 {
            assert!(vanishing_forms(&c, d).is_empty(), "{id}: degree {d}");
        }
    }
}

#[test]
fn nodes_at_coordinate_points_kill_the_top_monomials() {
    let mut r = rng(33);
    let (_, c) = random_class_curve(&class("3-123123|s0"), &mut r);
    let f = implicitize(&c).unwrap();
    for i in 0..3 {
        let mut e = [0; 3];
        e[i] = 4;
        assert!(f.coeff(e).is_zero());
        for j in (0..3).filter(|&j| j != i) {
            let mut e = [0; 3];
            e[i] = 3;
            e[j] = 1;
            assert!(f.coeff(e).is_zero());
        }
    }
}

#[test]
fn generic_line_has_four_simple_roots() {
    let c = realize_class(&class("3-121323|s0")).unwrap();
    let line = [rat(3), rat(-7), rat(11)];
    // oracle: the pulled-back form has nonzero discriminant iff its roots are simple
    let p = c.real_coeffs();
    let form: Vec<Rational> = (0..5).map(|k| (0..3).map(|i| &line[i] * &p[i][k]).sum()).collect();
    let q = BinaryForm::from_real(form.clone());
    let dq = BinaryForm::from_real((0..4).map(|k| &form[k] * rat(4 - k as i64)).collect());
    assert!(!nodal_quartic::exactmath::resultant(&q, &dq).is_zero());
    assert_eq!(line_multiplicities(&c, &line).unwrap(), vec![1, 1, 1, 1]);
}

/// The tangent line at θ(a:1) is spanned by ∂θ/∂s and ∂θ/∂t there.
#[test]
fn tangent_line_has_a_double_root() {
    let c = realize_class(&class("2-1122|s1")).unwrap();
    let p = c.real_coeffs();
    let a = rat(7);
    let grad = |i: usize| -> [Rational; 2] {
        let mut ds = rat(0);
        let mut dt = rat(0);
        for k in 0..5 {
            // coefficient k multiplies s^(4−k) t^k, evaluated at (a, 1)
            let c = &p[i][k];
            if k < 4 {
                ds += c * rat(4 - k as i64) * num_traits::pow::pow(a.clone(), 3 - k);
            }
            if k > 0 {
                dt += c * rat(k as i64) * num_traits::pow::pow(a.clone(), 4 - k);
            }
        }
        [ds, dt]
    };
    let g: Vec<[Rational; 2]> = (0..3).map(grad).collect();
    let (u, v) = ([0, 1, 2].map(|i| g[i][0].clone()), [0, 1, 2].map(|i| g[i][1].clone()));
    let line = [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ];
    let m = line_multiplicities(&c, &line).unwrap();
    assert_eq!(m.iter().sum::<usize>(), 4);
    assert!(m[0] >= 2, "{m:?}");
}

#[test]
fn node_lines_meet_only_the_nodes_for_random_seeds() {
    let mut r = rng(34);
    for id in ["3-112323|s0", "2-1212|s1", "1-11|s2", "0-|s3"] {
        let (_, c) = random_class_curve(&class(id), &mut r);
        let c = c.transform(&random_matrix(&mut r)).unwrap();
        for l in node_lines(&c).unwrap() {
            assert!(l.meets_only_nodes, "{id}");
            assert_eq!(l.multiplicities.iter().sum::<usize>(), 4);
        }
    }
}

#[test]
fn components_of_the_representatives() {
    // (components, disks) per class; every count satisfies the Euler sum 1 + crossings
    let expected = [
        ("3-112233|s0", 5, 4),
        ("3-112323|s0", 4, 4),
        ("3-112332|s0", 5, 4),
        ("3-121323|s0", 4, 4),
        ("3-123123|s0", 5, 4),
        ("2-1122|s1", 4, 3),
        ("1-11|s2", 3, 2),
        ("0-|s3", 2, 1),
    ];
    for (id, comps, disks) in expected {
        let c = realize_class(&class(id)).unwrap();
        let m = raster_components(&c, 256).unwrap();
        assert!(m.stable);
        assert_eq!((m.component_count(), m.disk_count()), (comps, disks), "{id}");
        let crossings = class(id).chord_count as i64;
        assert_eq!(m.euler_sum(), 1 + crossings, "{id}");
    }
}

/// The image of the two-chord interleaved diagram is a graph with two
/// vertices and four edges, so its complementary components have Euler
/// characteristics adding up to 3; with three components, all are disks.
#[test]
fn interleaved_two_chord_curve_has_three_disk_components() {
    let c = realize_class(&class("2-1212|s1")).unwrap();
    let m = raster_components(&c, 256).unwrap();
    assert_eq!(m.component_count(), 3);
    assert_eq!(m.disk_count(), 3);
    assert_eq!(m.euler_sum(), 3);
    assert!((0..3).all(|k| is_disk(&m, k)));
}

#[test]
fn solitary_nodes_share_the_non_disk_component() {
    for id in ["2-1122|s1", "1-11|s2", "0-|s3"] {
        let c = realize_class(&class(id)).unwrap();
        let p = solitary_placement_check(&c, 256).unwrap();
        assert!(p.stable && p.shared_component && p.all_in_non_disk && p.pass, "{id}");
        assert_eq!(p.components - p.disks, 1, "{id}");
        assert_eq!(p.solitary.len(), class(id).solitary);
    }
}

/// Random placements of the same diagram: the node lands in the same kind of
/// component every time, so its position is forced by the algebra. A seed
/// with a loop too small for the raster must be reported as unstable, never
/// answered wrongly.
#[test]
fn placement_is_forced_across_random_seeds() {
    let mut r = rng(35);
    for (id, in_disk) in [("2-1122|s1", false), ("1-11|s2", false), ("2-1212|s1", true)] {
        let mut stable = 0;
        for _ in 0..4 {
            let (seed, c) = random_class_curve(&class(id), &mut r);
            let m = match raster_components(&c, 256) {
                Ok(m) => m,
                Err(nodal_quartic::Error::UnstableResolution(..)) => continue,
                Err(e) => panic!("{id} {seed:?}: {e}"),
            };
            stable += 1;
            let nodes = nodal_quartic::nodes::find_nodes(&c).unwrap();
            for n in nodes.iter().filter(|n| n.kind == nodal_quartic::nodes::NodeKind::Solitary) {
                let p = [0, 1, 2].map(|k| n.position[k].to_f64());
                let comp = m.component_at(p).unwrap();
                assert_eq!(is_disk(&m, comp), in_disk, "{id} {seed:?}");
            }
        }
        assert!(stable >= 2, "{id}: only {stable} stable seeds");
    }
}

#[test]
fn interleaved_curve_smooths_into_nested_ovals() {
    let c = realize_class(&class("2-1212|s1")).unwrap();
    let r = perturb_with_retries(&c, None, 256).unwrap();
    assert_eq!((r.l, r.injective_pairs), (2, 1));
    // with Π⁺ + Π⁻ = 1 the complex orientation formula leaves only (0, 1)
    let fits: Vec<(usize, usize)> =
        (0..=1).map(|p| (p, 1 - p)).filter(|&(p, m)| rokhlin_check(r.l, p, m, 4)).collect();
    assert_eq!(fits, vec![(0, 1)]);
}

#[test]
fn opposite_sign_at_the_solitary_node_erases_it() {
    let c = realize_class(&class("2-1212|s1")).unwrap();
    let solitary = nodal_quartic::nodes::find_nodes(&c)
        .unwrap()
        .iter()
        .position(|n| n.kind == nodal_quartic::nodes::NodeKind::Solitary)
        .unwrap();
    let mut signs = [1i8; 3];
    let opened = perturb_with_retries(&c, Some(&signs), 256).unwrap();
    signs[solitary] = -1;
    let erased = perturb_with_retries(&c, Some(&signs), 256).unwrap();
    assert_eq!(opened.l, 2);
    assert_eq!(erased.l, opened.l - 1);
    assert_eq!(opened.node_signs, vec![1, 1, 1]);
    assert_eq!(erased.node_signs[solitary], -1);
}

#[test]
fn smooth_input_with_zero_epsilon_reports_itself() {
    // (x1² + x2² − x0²)(x1² + x2² − 4x0²): two concentric circles
    let f = ImplicitQuartic::product_of_quadrics(
        &[rat(-1), rat(0), rat(0), rat(1), rat(0), rat(1)],
        &[rat(-4), rat(0), rat(0), rat(1), rat(0), rat(1)],
    )
    .unwrap();
    let g = ImplicitQuartic::sum_of_fourth_powers();
    let same = perturbed_quartic(&f, &g, &rat(0)).unwrap();
    let r = oval_report(&same, 128).unwrap();
    assert_eq!((r.l, r.injective_pairs), (2, 1));
}

#[test]
fn small_oval_interior_is_a_disk_and_its_complement_is_not() {
    // x1² + x2² − x0²/4 times a positive definite quadric
    let f = ImplicitQuartic::product_of_quadrics(
        &[Rational::new(rat(-1).to_integer(), 4.into()), rat(0), rat(0), rat(1), rat(0), rat(1)],
        &[rat(1), rat(0), rat(0), rat(1), rat(0), rat(1)],
    )
    .unwrap();
    let m = raster_stable(&f, None, 128).unwrap();
    assert_eq!(m.component_count(), 2);
    let inside = m.component_at([1.0, 0.0, 0.0]).unwrap();
    let outside = m.component_at([0.0, 1.0, 1.0]).unwrap();
    assert!(is_disk(&m, inside));
    assert!(!is_disk(&m, outside));
}

#[test]
fn empty_real_quartic_leaves_one_non_disk_component() {
    let m = raster_stable(&ImplicitQuartic::sum_of_fourth_powers(), None, 64).unwrap();
    assert_eq!(m.component_count(), 1);
    assert!(!is_disk(&m, 0));
}

#[test]
fn raster_exports_a_pgm() {
    let m = raster_components(&realize_class(&class("0-|s3")).unwrap(), 64).unwrap();
    let pgm = m.to_pgm();
    assert!(pgm.starts_with(b"P5\n384 64\n255\n"));
    assert_eq!(pgm.len(), "P5\n384 64\n255\n".len() + 6 * 64 * 64);
    let dir = tempfile::tempdir().unwrap();
    m.write_pgm(&dir.path().join("r.pgm")).unwrap();
    assert_eq!(std::fs::read(dir.path().join("r.pgm")).unwrap(), pgm);
}

#[test]
fn resolution_below_the_minimum_is_refused() {
    let f = ImplicitQuartic::sum_of_fourth_powers();
    assert!(matches!(raster_quartic(&f, None, 32), Err(nodal_quartic::Error::InvalidResolution(32))));
}
