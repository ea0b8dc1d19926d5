//! Chord diagram classification against a brute-force orbit oracle.

use std::collections::BTreeSet;

use nodal_quartic::diagram::{all_matchings, canonicalize, crossing_count, enumerate_all, ChordDiagram, ClassId};
use proptest::prelude::*;

/// A matching on `2k` points as a sorted set of sorted pairs.
type Matching = BTreeSet<(usize, usize)>;

fn pairs_of(word: &[u8]) -> Matching {
    let mut out = Matching::new();
    for (i, a) in word.iter().enumerate() {
        for (j, b) in word.iter().enumerate().skip(i + 1) {
            if a == b {
                out.insert((i, j));
            }
        }
    }
    out
}

/// The dihedral group of order `2n` acting on positions.
fn dihedral(n: usize) -> Vec<Box<dyn Fn(usize) -> usize>> {
    let mut g: Vec<Box<dyn Fn(usize) -> usize>> = Vec::new();
    for r in 0..n {
        g.push(Box::new(move |i| (i + r) % n));
        g.push(Box::new(move |i| (n + r - i) % n));
    }
    g
}

fn act(m: &Matching, f: &dyn Fn(usize) -> usize) -> Matching {
    m.iter()
        .map(|&(a, b)| {
            let (x, y) = (f(a), f(b));
            (x.min(y), x.max(y))
        })
        .collect()
}

/// Every perfect matching of `2k` points, built independently of the library.
fn matchings(points: &[usize]) -> Vec<Matching> {
    let Some((&first, rest)) = points.split_first() else {
        return vec![Matching::new()];
    };
    let mut out = Vec::new();
    for (idx, &partner) in rest.iter().enumerate() {
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, &p)| p).collect();
        for mut m in matchings(&remaining) {
            m.insert((first, partner));
            out.push(m);
        }
    }
    out
}

fn orbit_count(k: usize) -> usize {
    let n = 2 * k;
    let group = dihedral(n.max(1));
    let mut seen: BTreeSet<Matching> = BTreeSet::new();
    let mut orbits = 0;
    for m in matchings(&(0..n).collect::<Vec<_>>()) {
        if seen.contains(&m) {
            continue;
        }
        orbits += 1;
        for g in &group {
            seen.insert(act(&m, g.as_ref()));
        }
    }
    orbits
}

#[test]
fn fifteen_three_chord_matchings() {
    assert_eq!(matchings(&(0..6).collect::<Vec<_>>()).len(), 15);
    assert_eq!(all_matchings(3).len(), 15);
}

#[test]
fn class_counts_match_the_orbit_oracle() {
    let classes = enumerate_all(3);
    for k in 0..=3 {
        let listed = classes.iter().filter(|c| c.chord_count == k).count();
        assert_eq!(listed, orbit_count(k), "k = {k}");
    }
    assert_eq!(classes.len(), 9);
    assert_eq!([3, 2, 1, 0].map(|k| classes.iter().filter(|c| c.chord_count == k).count()), [5, 2, 1, 1]);
}

#[test]
fn canonical_words_are_distinct_orbits() {
    let words: Vec<Matching> = enumerate_all(3).iter().map(|c| pairs_of(c.diagram().word())).collect();
    let group = dihedral(6);
    for (i, a) in words.iter().enumerate() {
        for b in words.iter().skip(i + 1) {
            if a.len() == b.len() && a.len() == 3 {
                assert!(group.iter().all(|g| act(a, g.as_ref()) != *b));
            }
        }
    }
}

fn word_strategy() -> impl Strategy<Value = Vec<u8>> {
    (0usize..15).prop_map(|i| all_matchings(3)[i].clone())
}

proptest! {
    /// Canonicalization is invariant under rotation, reflection and relabeling,
    /// and agrees with orbit membership.
    #[test]
    fn canonical_form_is_an_orbit_invariant(word in word_strategy(), r in 0usize..6, flip in any::<bool>(), perm in 0usize..6) {
        let relabel = [[1u8, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]][perm];
        let mut moved: Vec<u8> = (0..6).map(|i| word[(i + r) % 6]).collect();
        if flip {
            moved.reverse();
        }
        let moved: Vec<u8> = moved.iter().map(|&l| relabel[l as usize - 1]).collect();
        let a = canonicalize(&ChordDiagram::new(word.clone(), 0).unwrap());
        let b = canonicalize(&ChordDiagram::new(moved.clone(), 0).unwrap());
        prop_assert_eq!(a.word(), b.word());
        prop_assert_eq!(crossing_count(&a), crossing_count(&ChordDiagram::new(moved, 0).unwrap()));
    }

    #[test]
    fn class_text_round_trips(idx in 0usize..9) {
        let c = enumerate_all(3)[idx].clone();
        let back: ClassId = c.to_string().parse().unwrap();
        prop_assert_eq!(&back, &c);
        let upper: ClassId = c.to_string().to_uppercase().parse().unwrap();
        prop_assert_eq!(upper, c);
    }
}
