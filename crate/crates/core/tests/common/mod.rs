//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use nodal_quartic::diagram::ClassId;
use nodal_quartic::exactmath::linalg::{mat3_det, Mat3};
use nodal_quartic::exactmath::{rat, ratio, ProjPoint1, Rational};
use nodal_quartic::realize::{realize_from_seed, Curve, NodeSeed};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// A random seed realizing `class`: sorted distinct chart values labelled along the
/// class word, and solitary pairs with random centres above the real axis.
pub fn random_seed(class: &ClassId, rng: &mut ChaCha8Rng) -> NodeSeed {
    let word = class.diagram().word().to_vec();
    let mut values: Vec<i64> = Vec::new();
    while values.len() < word.len() {
        let v = rng.gen_range(-40..40);
        if !values.contains(&v) {
            values.push(v);
        }
    }
    values.sort();
    let denom = rng.gen_range(1..4);
    let mut pairs: Vec<[ProjPoint1; 2]> = Vec::new();
    let mut labels = word.clone();
    labels.sort();
    labels.dedup();
    for label in labels {
        let pos: Vec<i64> = word.iter().zip(&values).filter(|(l, _)| **l == label).map(|(_, v)| *v).collect();
        pairs.push(NodeSeed::real_pair(ratio(pos[0], denom), ratio(pos[1], denom)));
    }
    let mut centres: Vec<(i64, i64)> = Vec::new();
    while centres.len() < class.solitary {
        let z = (rng.gen_range(-6..7), rng.gen_range(1..8));
        if !centres.contains(&z) {
            centres.push(z);
        }
    }
    for (re, im) in centres {
        pairs.push(NodeSeed::conjugate_pair(ratio(re, 2), ratio(im, 2)));
    }
    pairs.shuffle(rng);
    NodeSeed::new(pairs.try_into().unwrap()).unwrap()
}

/// Random realization of `class`; retries the rare seeds whose node quadratics are
/// linearly dependent.
pub fn random_class_curve(class: &ClassId, rng: &mut ChaCha8Rng) -> (NodeSeed, Curve) {
    loop {
        let seed = random_seed(class, rng);
        if let Ok(c) = realize_from_seed(&seed) {
            if nodal_quartic::isotopy::verify_generic(&c).is_ok() {
                return (seed, c);
            }
        }
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> Mat3 {
    loop {
        let m: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| rat(rng.gen_range(-4..5))));
        if !mat3_det(&m).is_zero() {
            return m;
        }
    }
}

pub fn random_mobius(rng: &mut ChaCha8Rng) -> [[Rational; 2]; 2] {
    loop {
        let m: [[Rational; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| rat(rng.gen_range(-5..6))));
        if !(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).is_zero() {
            return m;
        }
    }
}

/// Random curve of `class` moved by a random projective transform and a random
/// Möbius reparametrization.
pub fn random_moved_curve(class: &ClassId, rng: &mut ChaCha8Rng) -> Curve {
    let (_, c) = random_class_curve(class, rng);
    c.transform(&random_matrix(rng)).unwrap().reparametrize(&random_mobius(rng)).unwrap()
}
