//! Chord diagram and rigid-isotopy class of a curve, read from its node preimages.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::diagram::{canonicalize, ChordDiagram, ClassId};
use crate::error::{Error, Result};
use crate::exactmath::linalg::{mat3_det, mat3_inverse, Mat3};
use crate::exactmath::{AlgebraicReal, BinaryForm, GaussianRational, Rational};
use crate::nodes::{find_nodes, Node, NodeKind};
use crate::realize::{realize_from_quadratics, Curve};

#[derive(Clone, Debug)]
pub struct Classification {
    /// Canonical diagram.
    pub diagram: ChordDiagram,
    pub class_id: ClassId,
    pub nodes: Vec<Node>,
    /// Real preimages in circular order starting at the smallest chart value.
    pub circular_order: Vec<AlgebraicReal>,
    /// Node index of each entry of `circular_order`.
    pub labels: Vec<usize>,
}

impl Classification {
    /// The pairing read along `circular_order`, before canonicalization.
    pub fn raw_word(&self) -> Vec<u8> {
        self.labels.iter().map(|&l| l as u8).collect()
    }

    pub fn solitary_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Solitary).count()
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("class", &self.class_id)?;
        m.serialize_entry("word", &self.diagram.word_string())?;
        m.serialize_entry("solitary", &self.diagram.solitary_count())?;
        m.serialize_entry("nodes", &self.nodes)?;
        m.end()
    }
}

pub fn classify(c: &Curve) -> Result<Classification> {
    let nodes = find_nodes(c)?;
    Ok(classify_nodes(nodes))
}

/// Diagram of an already computed node set.
pub fn classify_nodes(nodes: Vec<Node>) -> Classification {
    let mut marked: Vec<(AlgebraicReal, usize)> = Vec::new();
    for (k, n) in nodes.iter().enumerate() {
        if let Some([a, b]) = n.real_preimages() {
            marked.push((a.clone(), k));
            marked.push((b.clone(), k));
        }
    }
    // chart order with [1:0] last is a circular order starting at the smallest value
    marked.sort_by(|x, y| x.0.cmp(&y.0));
    let solitary = nodes.iter().filter(|n| n.kind == NodeKind::Solitary).count();
    let labels: Vec<usize> = marked.iter().map(|(_, k)| *k).collect();
    let raw = ChordDiagram::new(labels.iter().map(|&k| k as u8).collect(), solitary)
        .expect("each crossing contributes two preimages");
    let diagram = canonicalize(&raw);
    let class_id = diagram.class_id();
    Classification {
        diagram,
        class_id,
        nodes,
        circular_order: marked.into_iter().map(|(a, _)| a).collect(),
        labels,
    }
}

/// Projective transform `T` and the curve `T∘c` whose nodes sit at the coordinate
/// points, `z_i` at `e_i` in node order. `T` also fixes the coordinate scales so that
/// `T∘c` equals `realize_from_quadratics` of the node quadratics exactly.
pub fn normalize(c: &Curve) -> Result<(Mat3, Curve)> {
    let nodes = find_nodes(c)?;
    normalize_with_nodes(c, &nodes)
}

pub fn normalize_with_nodes(c: &Curve, nodes: &[Node]) -> Result<(Mat3, Curve)> {
    let positions: Vec<[Rational; 3]> =
        nodes.iter().map(|n| n.rational_position()).collect::<Option<_>>().ok_or(Error::IrrationalNodes)?;
    let quadratics: Vec<BinaryForm> =
        nodes.iter().map(|n| n.quadratic.clone()).collect::<Option<_>>().ok_or(Error::IrrationalNodes)?;
    if positions.len() != 3 {
        return Err(Error::NotGeneric(format!("expected 3 nodes, got {}", positions.len())));
    }
    // columns are the node positions
    let z: Mat3 = std::array::from_fn(|r| std::array::from_fn(|k| positions[k][r].clone()));
    if mat3_det(&z) == Rational::from_integer(0.into()) {
        return Err(Error::DegenerateNodes);
    }
    let t = mat3_inverse(&z).ok_or(Error::DegenerateNodes)?;
    let moved = c.transform(&t)?;
    let q: [BinaryForm; 3] = [quadratics[0].clone(), quadratics[1].clone(), quadratics[2].clone()];
    let target = realize_from_quadratics(&q)?;
    // p'_i = c_i · target_i for nonzero constants c_i
    let mut scaled = t;
    for i in 0..3 {
        let ratio = coordinate_ratio(moved.form(i), target.form(i)).ok_or_else(|| {
            Error::NotGeneric("normalized coordinates do not factor through the node quadratics".into())
        })?;
        for entry in scaled[i].iter_mut() {
            *entry = &*entry / &ratio;
        }
    }
    let out = c.transform(&scaled)?;
    debug_assert_eq!(out, target);
    Ok((scaled, out))
}

/// The constant `λ` with `f = λ·g`, if any.
fn coordinate_ratio(f: &BinaryForm, g: &BinaryForm) -> Option<Rational> {
    let k = g.coeffs().iter().position(|c| !num_traits::Zero::is_zero(c))?;
    let lambda: GaussianRational = f.coeff(k).clone() / g.coeff(k).clone();
    (g.scale(&lambda) == *f).then_some(lambda.re)
}
