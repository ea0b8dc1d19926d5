//! Parametrized degree-4 curves and their construction from node preimages:
//! `p0 = q1·q2`, `p1 = q0·q2`, `p2 = q0·q1`, where `q_i` vanishes on the two
//! preimages of the node placed at the `i`-th coordinate point.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::diagram::ClassId;
use crate::error::{Error, Result};
use crate::exactmath::linalg::Mat3;
use crate::exactmath::{form_gcd, rat, BinaryForm, GaussianRational, ProjPoint1, Rational};

/// `[s:t] ↦ [p0 : p1 : p2]` with real degree-4 forms and no common root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    p: [BinaryForm; 3],
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    degree: usize,
    p0: BinaryForm,
    p1: BinaryForm,
    p2: BinaryForm,
}

impl Serialize for Curve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [p0, p1, p2] = self.p.clone();
        CurveRepr { degree: 4, p0, p1, p2 }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Curve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CurveRepr::deserialize(d)?;
        if r.degree != 4 {
            return Err(serde::de::Error::custom(format!("expected degree 4, got {}", r.degree)));
        }
        Curve::new([r.p0, r.p1, r.p2]).map_err(serde::de::Error::custom)
    }
}

impl Curve {
    /// Parses curve JSON, keeping validation failures (such as a shared root)
    /// as their own error instead of a generic JSON error.
    pub fn from_json(text: &str) -> Result<Self> {
        let r: CurveRepr = serde_json::from_str(text)?;
        if r.degree != 4 {
            return Err(Error::InvalidCurve(format!("expected degree 4, got {}", r.degree)));
        }
        Curve::new([r.p0, r.p1, r.p2])
    }

    pub fn new(p: [BinaryForm; 3]) -> Result<Self> {
        for (i, f) in p.iter().enumerate() {
            if !f.is_real() {
                return Err(Error::InvalidCurve(format!("p{i} has non-real coefficients")));
            }
            if !f.is_zero() && f.degree() != 4 {
                return Err(Error::InvalidCurve(format!("p{i} has degree {}", f.degree())));
            }
        }
        let g = form_gcd(&form_gcd(&p[0], &p[1]), &p[2]);
        if g.is_zero() {
            return Err(Error::InvalidCurve("all coordinates vanish".into()));
        }
        if g.degree() > 0 {
            return Err(Error::NotGeneric("coordinates share a root".into()));
        }
        // not all proportional: some 2x2 minor of the coefficient matrix is nonzero
        let rows: Vec<Vec<GaussianRational>> = p
            .iter()
            .map(|f| if f.is_zero() { vec![GaussianRational::zero(); 5] } else { f.coeffs().to_vec() })
            .collect();
        let rank_one = (0..3).all(|i| {
            (i + 1..3).all(|j| {
                (0..5).all(|a| {
                    (a + 1..5).all(|b| {
                        rows[i][a].clone() * &rows[j][b] == rows[i][b].clone() * &rows[j][a]
                    })
                })
            })
        });
        if rank_one {
            return Err(Error::InvalidCurve("image is a single point".into()));
        }
        Ok(Self { p })
    }

    pub fn from_ints(coeffs: [[i64; 5]; 3]) -> Result<Self> {
        Self::new(coeffs.map(|c| BinaryForm::from_ints(&c)))
    }

    pub fn forms(&self) -> &[BinaryForm; 3] {
        &self.p
    }

    pub fn form(&self, i: usize) -> &BinaryForm {
        &self.p[i]
    }

    /// Real coefficient lists of the three forms.
    pub fn real_coeffs(&self) -> [Vec<Rational>; 3] {
        std::array::from_fn(|i| {
            if self.p[i].is_zero() {
                vec![Rational::zero(); 5]
            } else {
                self.p[i].real_coeffs()
            }
        })
    }

    pub fn eval(&self, x: &ProjPoint1) -> [GaussianRational; 3] {
        std::array::from_fn(|i| self.p[i].eval(x))
    }

    /// `T∘θ`: apply the projective transform `T` to the image.
    pub fn transform(&self, t: &Mat3) -> Result<Self> {
        let p = std::array::from_fn(|i| {
            (0..3).fold(BinaryForm::zero(), |acc, j| {
                if t[i][j].is_zero() {
                    acc
                } else {
                    acc.add(&self.p[j].scale(&GaussianRational::real(t[i][j].clone())))
                }
            })
        });
        Self::new(p)
    }

    /// `θ∘m`: reparametrize by `[s:t] ↦ [a·s + b·t : c·s + d·t]`.
    pub fn reparametrize(&self, m: &[[Rational; 2]; 2]) -> Result<Self> {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.is_zero() {
            return Err(Error::InvalidCurve("singular reparametrization".into()));
        }
        let g: [[GaussianRational; 2]; 2] =
            std::array::from_fn(|i| std::array::from_fn(|j| GaussianRational::real(m[i][j].clone())));
        Self::new(std::array::from_fn(|i| self.p[i].substitute(&g)))
    }

    /// Multiply each coordinate by a nonzero constant.
    pub fn scale_coordinates(&self, c: &[Rational; 3]) -> Result<Self> {
        Self::new(std::array::from_fn(|i| self.p[i].scale(&GaussianRational::real(c[i].clone()))))
    }
}

/// Preimage pairs of the nodes to be placed at `[1:0:0]`, `[0:1:0]`, `[0:0:1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeSeed {
    pub pairs: Vec<[ProjPoint1; 2]>,
}

impl NodeSeed {
    pub fn new(pairs: [[ProjPoint1; 2]; 3]) -> Result<Self> {
        let seed = Self { pairs: pairs.to_vec() };
        seed.validate()?;
        Ok(seed)
    }

    /// Convenience: pairs of chart values given as Gaussian rationals.
    pub fn from_chart(pairs: [[GaussianRational; 2]; 3]) -> Result<Self> {
        Self::new(pairs.map(|p| p.map(ProjPoint1::chart)))
    }

    /// Two real chart values.
    pub fn real_pair(a: Rational, b: Rational) -> [ProjPoint1; 2] {
        [ProjPoint1::real(a), ProjPoint1::real(b)]
    }

    /// The conjugate pair `x ± y·i`.
    pub fn conjugate_pair(x: Rational, y: Rational) -> [ProjPoint1; 2] {
        let z = GaussianRational::new(x, y);
        [ProjPoint1::chart(z.clone()), ProjPoint1::chart(z.conj())]
    }

    pub fn validate(&self) -> Result<()> {
        if self.pairs.len() != 3 {
            return Err(Error::DegenerateSeed(format!("expected 3 pairs, got {}", self.pairs.len())));
        }
        let pts: Vec<&ProjPoint1> = self.pairs.iter().flatten().collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if pts[i] == pts[j] {
                    return Err(Error::DegenerateSeed(format!("points {:?} and {:?} coincide", pts[i], pts[j])));
                }
            }
        }
        for (i, [a, b]) in self.pairs.iter().enumerate() {
            let ok = (a.is_real() && b.is_real()) || (!a.is_real() && a.conj() == *b);
            if !ok {
                return Err(Error::DegenerateSeed(format!(
                    "pair {i} must be two real points or a conjugate pair"
                )));
            }
        }
        Ok(())
    }

    /// `q_i`, the real quadratic vanishing on pair `i`.
    pub fn quadratic(&self, i: usize) -> BinaryForm {
        let [a, b] = &self.pairs[i];
        let q = BinaryForm::linear_with_root(a).mul(&BinaryForm::linear_with_root(b));
        // conjugate pairs give real coefficients; strip the zero imaginary parts
        BinaryForm::from_real(q.coeffs().iter().map(|c| c.re.clone()).collect())
    }

    pub fn is_solitary(&self, i: usize) -> bool {
        !self.pairs[i][0].is_real()
    }
}

/// Curve with nodes at the three coordinate points and the seeded preimages.
pub fn realize_from_seed(seed: &NodeSeed) -> Result<Curve> {
    seed.validate()?;
    let q: [BinaryForm; 3] = std::array::from_fn(|i| seed.quadratic(i));
    realize_from_quadratics(&q)
}

/// Same construction from the three node quadratics directly.
pub fn realize_from_quadratics(q: &[BinaryForm; 3]) -> Result<Curve> {
    Curve::new([q[1].mul(&q[2]), q[0].mul(&q[2]), q[0].mul(&q[1])])
}

/// Default placement: the word's endpoints at chart values `0, 1, …, 2k−1` in
/// circular order, chords in first-occurrence order, then solitary pairs `±i, ±2i`
/// and `1 ± 3i`. Three pairs centred on the same vertical line would make every
/// coordinate an even function of `x − centre`, a double cover of a conic.
pub fn default_seed(c: &ClassId) -> Result<NodeSeed> {
    let d = c.diagram();
    let mut pairs: Vec<[ProjPoint1; 2]> = d
        .chords()
        .into_iter()
        .map(|(a, b)| NodeSeed::real_pair(rat(a as i64), rat(b as i64)))
        .collect();
    for m in 1..=c.solitary {
        let centre = if m == 3 { rat(1) } else { Rational::zero() };
        pairs.push(NodeSeed::conjugate_pair(centre, rat(m as i64)));
    }
    if pairs.len() != 3 {
        return Err(Error::DegenerateSeed(format!("class {c} does not have three nodes")));
    }
    let seed = NodeSeed { pairs };
    seed.validate()?;
    Ok(seed)
}

pub fn realize_class(c: &ClassId) -> Result<Curve> {
    realize_from_seed(&default_seed(c)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed_ints(p: [(i64, i64); 3]) -> NodeSeed {
        NodeSeed::new(p.map(|(a, b)| NodeSeed::real_pair(rat(a), rat(b)))).unwrap()
    }

    #[test]
    fn factor_structure_of_realized_curve() {
        let seed = seed_ints([(0, 1), (2, 3), (4, 5)]);
        let c = realize_from_seed(&seed).unwrap();
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            assert_eq!(form_gcd(c.form(i), c.form(j)), seed.quadratic(k).monic());
        }
    }

    #[test]
    fn duplicated_endpoint_is_degenerate() {
        let pairs = [(0, 1), (0, 2), (3, 4)].map(|(a, b)| NodeSeed::real_pair(rat(a), rat(b)));
        assert!(matches!(NodeSeed::new(pairs), Err(Error::DegenerateSeed(_))));
    }

    #[test]
    fn non_conjugate_imaginary_pair_rejected() {
        let z = GaussianRational::new(rat(0), rat(1));
        let w = GaussianRational::new(rat(0), rat(2));
        let pairs = [
            [ProjPoint1::chart(z), ProjPoint1::chart(w)],
            NodeSeed::real_pair(rat(0), rat(1)),
            NodeSeed::real_pair(rat(2), rat(3)),
        ];
        assert!(matches!(NodeSeed::new(pairs), Err(Error::DegenerateSeed(_))));
    }

    #[test]
    fn default_seed_follows_the_word() {
        let c: ClassId = "3-123123|s0".parse().unwrap();
        let seed = default_seed(&c).unwrap();
        let vals: Vec<[Rational; 2]> = seed
            .pairs
            .iter()
            .map(|p| p.clone().map(|x| x.chart_value().unwrap().re))
            .collect();
        assert_eq!(vals, vec![[rat(0), rat(3)], [rat(1), rat(4)], [rat(2), rat(5)]]);
        let c: ClassId = "2-1212|s1".parse().unwrap();
        let seed = default_seed(&c).unwrap();
        assert!(seed.is_solitary(2));
        assert_eq!(seed.quadratic(2), BinaryForm::from_ints(&[1, 0, 1]));
    }

    #[test]
    fn json_round_trip() {
        let c = realize_class(&"0-|s3".parse().unwrap()).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.starts_with(r#"{"degree":4,"p0":{"degree":4,"coeffs":["#));
        let back: Curve = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        let seed = default_seed(&"2-1212|s1".parse().unwrap()).unwrap();
        let text = serde_json::to_string(&seed).unwrap();
        let back: NodeSeed = serde_json::from_str(&text).unwrap();
        assert_eq!(back, seed);
    }
}
