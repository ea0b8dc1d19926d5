//! Kernel oracles: the resultant against the root-product formula, real root
//! isolation against factored constructions, and field identities.

use nodal_quartic::exactmath::{
    count_real_roots, isolate_real_roots, rat, ratio, resultant, BinaryForm, GaussianRational, Poly, ProjPoint1,
    Rational,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// `u·s + v·t`.
fn linear(u: Rational, v: Rational) -> BinaryForm {
    BinaryForm::from_real(vec![u, v])
}

fn product(forms: &[BinaryForm]) -> BinaryForm {
    forms.iter().fold(BinaryForm::one(), |acc, f| acc.mul(f))
}

fn small() -> impl Strategy<Value = Rational> {
    (-9i64..10, 1i64..5).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..0, 1i64..10], 1i64..5).prop_map(|(n, d)| ratio(n, d))
}

fn linear_factor() -> impl Strategy<Value = (Rational, Rational)> {
    (small(), small()).prop_filter("nonzero linear form", |(u, v)| !(u.is_zero() && v.is_zero()))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small(), small()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Res is multiplicative in each argument and equals `u1·v2 − v1·u2` on
    /// linear forms, so for products of linear forms it is the product of
    /// the pairwise 2×2 determinants.
    #[test]
    fn resultant_is_the_product_of_pairwise_determinants(
        fs in prop::collection::vec(linear_factor(), 1..5),
        gs in prop::collection::vec(linear_factor(), 1..5),
    ) {
        let f = product(&fs.iter().map(|(u, v)| linear(u.clone(), v.clone())).collect::<Vec<_>>());
        let g = product(&gs.iter().map(|(u, v)| linear(u.clone(), v.clone())).collect::<Vec<_>>());
        let mut expected = Rational::one();
        for (u1, v1) in &fs {
            for (u2, v2) in &gs {
                expected *= u1 * v2 - v1 * u2;
            }
        }
        prop_assert_eq!(resultant(&f, &g), GaussianRational::real(expected));
    }

    #[test]
    fn resultant_vanishes_exactly_on_common_roots(
        fs in prop::collection::vec(linear_factor(), 1..4),
        shared in linear_factor(),
    ) {
        let lin: Vec<BinaryForm> = fs.iter().map(|(u, v)| linear(u.clone(), v.clone())).collect();
        let s = linear(shared.0.clone(), shared.1.clone());
        let f = product(&lin).mul(&s);
        let g = s.mul(&linear(rat(1), rat(0)));
        prop_assert!(resultant(&f, &g).is_zero());
    }

    /// Products of distinct real linear forms: isolation finds exactly those
    /// roots, in increasing chart order, each interval containing its root.
    #[test]
    fn isolation_matches_factored_construction(
        roots in prop::collection::btree_set((-30i64..30, 1i64..4), 1..6),
        lead in nonzero(),
    ) {
        let mut values: Vec<Rational> = roots.iter().map(|(n, d)| ratio(*n, *d)).collect();
        values.sort();
        values.dedup();
        let f = product(&values.iter().map(|r| linear(rat(1), -r.clone())).collect::<Vec<_>>())
            .scale(&GaussianRational::real(lead));
        let iso = isolate_real_roots(&f).unwrap();
        prop_assert_eq!(iso.len(), values.len());
        for (root, v) in iso.iter().zip(&values) {
            match root.exact() {
                Some(x) => prop_assert_eq!(x, v),
                None => {
                    let i = root.interval().unwrap();
                    prop_assert!(i.lo <= *v && *v <= i.hi);
                }
            }
        }
    }

    /// Adding a factor with no real root changes nothing.
    #[test]
    fn positive_definite_factor_adds_no_real_roots(
        roots in prop::collection::btree_set(-20i64..20, 1..4),
        a in 1i64..5,
        b in -4i64..5,
    ) {
        let real = product(&roots.iter().map(|r| linear(rat(1), rat(-r))).collect::<Vec<_>>());
        // s² + b·s·t + (b² + a)·t² has negative discriminant −4a − 3b²
        let definite = BinaryForm::from_real(vec![rat(1), rat(b), rat(b * b + a)]);
        prop_assert_eq!(count_real_roots(&real.mul(&definite)).unwrap(), roots.len());
    }

    #[test]
    fn gaussian_field_identities(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        if !b.is_zero() {
            prop_assert_eq!((a.clone() / b.clone()) * b.clone(), a.clone());
        }
    }

    #[test]
    fn polynomial_division_identity(
        a in prop::collection::vec(small(), 1..7),
        b in prop::collection::vec(small(), 1..5),
    ) {
        let (pa, pb) = (Poly::new(a), Poly::new(b));
        prop_assume!(!pb.is_zero());
        let (q, r) = pa.div_rem(&pb);
        prop_assert_eq!(q.mul(&pb).add(&r), pa.clone());
        prop_assert!(r.is_zero() || r.degree() < pb.degree());
    }

    #[test]
    fn gcd_divides_both_and_recovers_common_factor(
        common in prop::collection::btree_set(-10i64..10, 1..3),
        left in prop::collection::btree_set(11i64..20, 0..3),
        right in prop::collection::btree_set(-20i64..-10, 0..3),
    ) {
        let lin = |r: &i64| Poly::new(vec![rat(-r), rat(1)]);
        let prod = |s: &std::collections::BTreeSet<i64>| s.iter().fold(Poly::constant(rat(1)), |acc, r| acc.mul(&lin(r)));
        let c = prod(&common);
        let (a, b) = (c.mul(&prod(&left)), c.mul(&prod(&right)));
        let g = a.gcd(&b);
        prop_assert!(a.exact_div(&g).is_some() && b.exact_div(&g).is_some());
        prop_assert_eq!(g.monic(), c.monic());
    }

    /// A binary form of degree d is homogeneous: f(λa, λb) = λ^d f(a, b).
    #[test]
    fn forms_are_homogeneous(coeffs in prop::collection::vec(small(), 1..6), a in small(), b in small(), l in nonzero()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let f = BinaryForm::from_real(coeffs);
        let d = f.degree() as i32;
        let p = ProjPoint1::new(GaussianRational::real(a.clone()), GaussianRational::real(b.clone()));
        let q = ProjPoint1::new(GaussianRational::real(&l * &a), GaussianRational::real(&l * &b));
        let scale = GaussianRational::real(num_traits::pow::pow(l, d as usize));
        prop_assert_eq!(f.eval(&q), f.eval(&p) * scale);
    }
}

#[test]
fn resultant_of_coprime_quadratics_is_nonzero() {
    // s² + t² and s² − 2t² have no common root: Res = (1·(−2) − 1·1)² = 9
    let f = BinaryForm::from_ints(&[1, 0, 1]);
    let g = BinaryForm::from_ints(&[1, 0, -2]);
    assert_eq!(resultant(&f, &g), GaussianRational::real(rat(9)));
}
