//! Lines through pairs of nodes. By Bezout a line through two nodes meets the
//! quartic with multiplicity at least 2 at each, so it meets `θ(RP¹)` nowhere
//! else: `L∘θ` is a constant multiple of the product of the two node
//! quadratics.

use serde::Serialize;

use super::implicit::line_multiplicities;
use crate::error::{Error, Result};
use crate::exactmath::{count_real_roots, BinaryForm, Rational};
use crate::nodes::find_nodes;
use crate::realize::Curve;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeLine {
    pub nodes: [usize; 2],
    #[serde(with = "crate::exactmath::encode::rational_vec")]
    pub line: Vec<Rational>,
    /// Root multiplicities of `L∘θ` over `C`, largest first.
    pub multiplicities: Vec<usize>,
    /// Distinct real parameters where the line meets `θ(RP¹)`.
    pub real_points: usize,
    /// `L∘θ` vanishes only on the preimages of the two nodes.
    pub meets_only_nodes: bool,
}

pub(crate) fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn line_form(c: &Curve, line: &[Rational; 3]) -> BinaryForm {
    let p = super::implicit::curve_coeffs(c);
    BinaryForm::from_real((0..5).map(|k| (0..3).map(|i| &line[i] * &p[i][k]).sum()).collect())
}

fn distinct_real_roots(form: &BinaryForm) -> Result<usize> {
    let (at_infinity, poly) = form.real_poly();
    let sq = poly.squarefree();
    let degree = sq.degree().unwrap_or(0) + usize::from(at_infinity > 0);
    Ok(count_real_roots(&BinaryForm::from_real_poly(&sq, degree))?)
}

/// The Bezout check for every pair of nodes. Node positions must be rational
/// (they are for any seed with rational and Gaussian-rational coordinates).
pub fn node_lines(c: &Curve) -> Result<Vec<NodeLine>> {
    let nodes = find_nodes(c)?;
    let mut out = Vec::new();
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            let (na, nb) = (&nodes[a], &nodes[b]);
            let (Some(za), Some(zb), Some(qa), Some(qb)) =
                (na.rational_position(), nb.rational_position(), na.quadratic.as_ref(), nb.quadratic.as_ref())
            else {
                return Err(Error::IrrationalNodes);
            };
            let line = cross(&za, &zb);
            let form = line_form(c, &line);
            let meets_only_nodes = form.exact_div(&qa.mul(qb)).is_some_and(|q| q.is_constant() && !q.is_zero());
            out.push(NodeLine {
                nodes: [a, b],
                multiplicities: line_multiplicities(c, &line)?,
                real_points: distinct_real_roots(&form)?,
                line: line.to_vec(),
                meets_only_nodes,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realize::realize_class;

    #[test]
    fn node_lines_meet_only_the_nodes() {
        for id in ["3-123123|s0", "2-1212|s1", "1-11|s2", "0-|s3"] {
            let c = realize_class(&id.parse().unwrap()).unwrap();
            let lines = node_lines(&c).unwrap();
            assert_eq!(lines.len(), 3);
            let nodes = find_nodes(&c).unwrap();
            for l in &lines {
                assert!(l.meets_only_nodes, "{id} {:?}", l.nodes);
                assert_eq!(l.multiplicities.iter().sum::<usize>(), 4);
                let crossings =
                    l.nodes.iter().filter(|&&k| nodes[k].kind == crate::nodes::NodeKind::Crossing).count();
                assert_eq!(l.real_points, 2 * crossings, "{id} {:?}", l.nodes);
            }
        }
    }
}
