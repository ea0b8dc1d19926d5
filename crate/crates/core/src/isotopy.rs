//! Sampled rigid isotopies between curves of the same class.
//!
//! A path is a chain of legs. Each endpoint curve is first moved by a projective
//! transform that puts its nodes at the coordinate points, then reparametrized by a
//! Möbius map that aligns its chord diagram with the other side; in that frame the
//! curve is `realize_from_quadratics` of three monic node quadratics and the two
//! sides are joined by moving the node preimages. Preimage legs are certified on the
//! whole parameter interval: the quadratics depend polynomially on the leg
//! parameter, and the curve stays generic as long as the six roots stay distinct
//! and the three quadratics stay linearly independent, which is checked with Sturm
//! counts on `[0, 1]`. Every sample is additionally certified by [`verify_generic`].

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, classify_nodes, normalize_with_nodes, Classification};
use crate::diagram::ClassId;
use crate::error::{Error, Result};
use crate::exactmath::encode::rational_str;
use crate::exactmath::linalg::{mat3_det, mat3_identity, Mat3};
use crate::exactmath::{
    exact_sqrt, form_gcd, rat, resultant, AlgebraicReal, BinaryForm, GaussianRational, Poly, Rational, SturmChain,
};
use crate::nodes::{analyze_nodes, NodeKind};
use crate::persist::{read_json, write_json};
use crate::realize::{realize_class, realize_from_quadratics, Curve};

/// Witnesses that a curve is generic; recomputable from the curve alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityCertificate {
    /// Monic gcd of the three coordinates; the constant 1.
    pub triple_gcd: BinaryForm,
    /// Degree-6 form vanishing exactly on the node preimages.
    pub preimage_form: BinaryForm,
    /// `Res(∂D/∂s, ∂D/∂t)` of the preimage form `D`; nonzero iff the six
    /// preimages are distinct.
    #[serde(with = "rational_str")]
    pub distinctness: Rational,
    pub kinds: Vec<NodeKind>,
    pub class_id: ClassId,
}

impl GenericityCertificate {
    /// Recompute the certificate from `c` and compare.
    pub fn check(&self, c: &Curve) -> bool {
        verify_generic(c).map(|other| other == *self).unwrap_or(false)
    }
}

/// Certify that `c` has a constant triple gcd, exactly three real nodes and six
/// distinct node preimages.
pub fn verify_generic(c: &Curve) -> Result<GenericityCertificate> {
    let [p0, p1, p2] = c.forms();
    let triple_gcd = form_gcd(&form_gcd(p0, p1), p2);
    if triple_gcd.degree() > 0 {
        return Err(Error::NotGeneric("coordinates share a root".into()));
    }
    let analysis = match analyze_nodes(c) {
        Err(Error::ImaginaryNodePresent) => return Err(Error::NotGeneric("a node is imaginary".into())),
        other => other?,
    };
    let d = analysis.preimage_form;
    if d.degree() != 6 {
        return Err(Error::NotGeneric(format!("{} node preimages instead of 6", d.degree())));
    }
    let (ds, dt) = d.partials();
    let distinctness = resultant(&ds, &dt).re;
    if distinctness.is_zero() {
        return Err(Error::NotGeneric("node preimages are not distinct".into()));
    }
    let kinds = analysis.nodes.iter().map(|n| n.kind).collect();
    let class_id = classify_nodes(analysis.nodes).class_id;
    Ok(GenericityCertificate { triple_gcd, preimage_form: d, distinctness, kinds, class_id })
}

// ---------------------------------------------------------------------------
// Matrix paths

type Matrix = Vec<Vec<Rational>>;

#[derive(Clone, Debug)]
enum Factor {
    /// `I + v·k·E(row, col)`.
    Shear { row: usize, col: usize, k: Rational },
    /// `diag((1 - v) + v·d)` with every `d > 0`.
    Scale(Vec<Rational>),
    /// Rotation by `v·π` in the `(i, j)` plane, through rational points of the circle.
    HalfTurn(usize, usize),
}

/// A path of invertible matrices from the identity to a target of positive
/// determinant, as a product of elementary factors switched on one after another.
#[derive(Clone, Debug)]
pub struct MatrixPath {
    n: usize,
    factors: Vec<Factor>,
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect())
        .collect()
}

/// `(cos, sin)` of the angle `2·atan(w)`.
fn circle_point(w: &Rational) -> (Rational, Rational) {
    let d = Rational::one() + w * w;
    ((Rational::one() - w * w) / &d, (w * rat(2)) / d)
}

impl Factor {
    fn at(&self, n: usize, v: &Rational) -> Matrix {
        let mut m = identity(n);
        match self {
            Factor::Shear { row, col, k } => m[*row][*col] = k * v,
            Factor::Scale(d) => {
                for (i, di) in d.iter().enumerate() {
                    m[i][i] = (Rational::one() - v) + v * di;
                }
            }
            Factor::HalfTurn(i, j) => {
                let half = rat(1) / rat(2);
                // first quarter turn, then a quarter turn composed with the completed one
                let (c, s) = if *v <= half {
                    circle_point(&(v * rat(2)))
                } else {
                    let (c, s) = circle_point(&(v * rat(2) - rat(1)));
                    (-s, c)
                };
                m[*i][*i] = c.clone();
                m[*j][*j] = c;
                m[*i][*j] = -s.clone();
                m[*j][*i] = s;
            }
        }
        m
    }
}

impl MatrixPath {
    /// Factor `m` into shears, a positive scaling and half turns. `None` when `m`
    /// is singular or has negative determinant.
    pub fn new(m: &[Vec<Rational>]) -> Option<Self> {
        let n = m.len();
        let mut a: Matrix = m.to_vec();
        let mut ops: Vec<Factor> = Vec::new();
        let add_row = |a: &mut Matrix, dst: usize, src: usize, k: &Rational| {
            for c in 0..n {
                let v = &a[src][c] * k;
                a[dst][c] += v;
            }
        };
        for c in 0..n {
            if a[c][c].is_zero() {
                let r = (c + 1..n).find(|&r| !a[r][c].is_zero())?;
                add_row(&mut a, c, r, &Rational::one());
                ops.push(Factor::Shear { row: c, col: r, k: -Rational::one() });
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let k = -(&a[r][c] / &a[c][c]);
                    add_row(&mut a, r, c, &k);
                    ops.push(Factor::Shear { row: r, col: c, k: -k });
                }
            }
        }
        // a is now diagonal and m = (inverse shears in recorded order)·a
        let d: Vec<Rational> = (0..n).map(|i| a[i][i].clone()).collect();
        let negative: Vec<usize> = (0..n).filter(|&i| d[i].is_negative()).collect();
        if negative.len() % 2 == 1 {
            return None;
        }
        let mut factors = ops;
        let abs: Vec<Rational> = d.iter().map(|x| x.abs()).collect();
        if abs.iter().any(|x| !x.is_one()) {
            factors.push(Factor::Scale(abs));
        }
        for pair in negative.chunks(2) {
            factors.push(Factor::HalfTurn(pair[0], pair[1]));
        }
        Some(Self { n, factors })
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// The matrix at parameter `u ∈ [0, 1]`.
    pub fn at(&self, u: &Rational) -> Matrix {
        let len = self.factors.len();
        let pos = u * Rational::from_integer(len.into());
        self.factors.iter().enumerate().fold(identity(self.n), |acc, (j, f)| {
            let v = (&pos - Rational::from_integer(j.into())).clamp(Rational::zero(), Rational::one());
            mat_mul(&acc, &f.at(self.n, &v))
        })
    }
}

fn to_mat3(m: &Matrix) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].clone()))
}

fn from_mat3(m: &Mat3) -> Matrix {
    m.iter().map(|r| r.to_vec()).collect()
}

fn to_mat2(m: &Matrix) -> [[Rational; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].clone()))
}

fn negated(m: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| -m[i][j].clone()))
}

fn uniform(steps: usize) -> Vec<Rational> {
    let steps = steps.max(2);
    let last = BigInt::from(steps - 1);
    (0..steps).map(|k| Rational::new(BigInt::from(k), last.clone())).collect()
}

/// Sampled path of invertible matrices from the identity to `t`, or to `-t` when
/// `det t < 0` (the same projective transform).
pub fn transform_path(t: &Mat3, steps: usize) -> Vec<Mat3> {
    let target = if mat3_det(t).is_negative() { negated(t) } else { t.clone() };
    let path = MatrixPath::new(&from_mat3(&target)).expect("target has positive determinant");
    uniform(steps).iter().map(|u| to_mat3(&path.at(u))).collect()
}

// ---------------------------------------------------------------------------
// Preimage families

type UPoly = Poly<Rational>;

/// Preimages of one node at a leg endpoint, in the chart.
#[derive(Clone, Debug, PartialEq)]
enum NodeRoots {
    /// Two real preimages, smaller first.
    Real(Rational, Rational),
    /// The preimage in the upper half plane.
    Upper(GaussianRational),
}

impl NodeRoots {
    fn monic(&self) -> [Rational; 3] {
        match self {
            NodeRoots::Real(a, b) => [Rational::one(), -(a + b), a * b],
            NodeRoots::Upper(z) => [Rational::one(), -(&z.re * rat(2)), z.norm_sqr()],
        }
    }
}

/// Three node quadratics whose coefficients are polynomials in the leg parameter.
#[derive(Clone, Debug)]
struct Family {
    q: [[UPoly; 3]; 3],
}

fn lin(a: &Rational, b: &Rational) -> UPoly {
    Poly::new(vec![a.clone(), b - a])
}

impl Family {
    /// Coefficient-wise interpolation.
    fn linear(from: &[[Rational; 3]; 3], to: &[[Rational; 3]; 3]) -> Self {
        Self { q: std::array::from_fn(|k| std::array::from_fn(|i| lin(&from[k][i], &to[k][i]))) }
    }

    /// Each preimage moves along a straight segment; upper-half-plane points stay in
    /// the upper half plane because both ends lie there.
    fn roots(from: &[NodeRoots; 3], to: &[NodeRoots; 3]) -> Option<Self> {
        let one = || Poly::constant(Rational::one());
        let q: Vec<[UPoly; 3]> = from
            .iter()
            .zip(to)
            .map(|pair| match pair {
                (NodeRoots::Real(a0, a1), NodeRoots::Real(b0, b1)) => {
                    let (r0, r1) = (lin(a0, b0), lin(a1, b1));
                    Some([one(), r0.add(&r1).scale(&rat(-1)), r0.mul(&r1)])
                }
                (NodeRoots::Upper(z), NodeRoots::Upper(w)) => {
                    let (re, im) = (lin(&z.re, &w.re), lin(&z.im, &w.im));
                    Some([one(), re.scale(&rat(-2)), re.mul(&re).add(&im.mul(&im))])
                }
                _ => None,
            })
            .collect::<Option<_>>()?;
        Some(Self { q: q.try_into().ok()? })
    }

    fn is_constant(&self) -> bool {
        self.q.iter().flatten().all(|p| p.degree().unwrap_or(0) == 0)
    }

    fn at(&self, u: &Rational) -> [BinaryForm; 3] {
        std::array::from_fn(|k| BinaryForm::from_real(self.q[k].iter().map(|p| p.eval(u)).collect()))
    }

    /// Every quadratic keeps distinct roots, no two share a root and the three stay
    /// linearly independent, for every parameter in `[0, 1]`.
    fn certified(&self) -> bool {
        let q = &self.q;
        let disc = |k: usize| q[k][1].mul(&q[k][1]).sub(&q[k][0].mul(&q[k][2]).scale(&rat(4)));
        let res = |j: usize, k: usize| {
            let (a1, b1, c1) = (&q[j][0], &q[j][1], &q[j][2]);
            let (a2, b2, c2) = (&q[k][0], &q[k][1], &q[k][2]);
            let ac = a1.mul(c2).sub(&a2.mul(c1));
            let ab = a1.mul(b2).sub(&a2.mul(b1));
            let bc = b1.mul(c2).sub(&b2.mul(c1));
            ac.mul(&ac).sub(&ab.mul(&bc))
        };
        let m2 = |r1: usize, r2: usize, c1: usize, c2: usize| q[r1][c1].mul(&q[r2][c2]).sub(&q[r1][c2].mul(&q[r2][c1]));
        let det = q[0][0]
            .mul(&m2(1, 2, 1, 2))
            .sub(&q[0][1].mul(&m2(1, 2, 0, 2)))
            .add(&q[0][2].mul(&m2(1, 2, 0, 1)));
        (0..3).all(|k| nonvanishing(&disc(k)))
            && [(0, 1), (0, 2), (1, 2)].iter().all(|&(j, k)| nonvanishing(&res(j, k)))
            && nonvanishing(&det)
    }
}

/// No root in `[0, 1]`.
fn nonvanishing(p: &UPoly) -> bool {
    let (zero, one) = (Rational::zero(), Rational::one());
    if p.is_zero() || p.eval(&zero).is_zero() || p.eval(&one).is_zero() {
        return false;
    }
    SturmChain::new(p).count(&zero, &one) == 0
}

/// `⌊√x·2^bits⌋ / 2^bits` for `x ≥ 0`.
fn sqrt_floor(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = (x * Rational::from_integer(&scale * &scale)).floor().to_integer();
    Rational::new(scaled.sqrt(), scale)
}

/// Roots of `s² + b·s·t + c·t²`, approximated with `bits` fractional bits when irrational.
fn roots_of(m: &[Rational; 3], bits: Option<u32>) -> Option<NodeRoots> {
    let (b, c) = (&m[1], &m[2]);
    let disc = b * b - c * rat(4);
    let half = rat(1) / rat(2);
    let root = |x: &Rational| match bits {
        None => exact_sqrt(x),
        Some(bits) => Some(sqrt_floor(x, bits)).filter(|r| r.is_positive()),
    };
    if disc.is_positive() {
        let s = root(&disc)?;
        Some(NodeRoots::Real((-b - &s) * &half, (-b + &s) * &half))
    } else {
        let s = root(&-disc)?;
        Some(NodeRoots::Upper(GaussianRational::new(-b * &half, s * half)))
    }
}

// ---------------------------------------------------------------------------
// Legs

#[derive(Clone, Debug)]
enum Leg {
    /// `path(u)·base`.
    Ambient { base: Curve, path: MatrixPath },
    /// `base∘pre∘path(u)`.
    Reparam { base: Curve, pre: [[Rational; 2]; 2], path: MatrixPath },
    Preimages(Family),
}

#[derive(Clone, Debug)]
struct Oriented {
    leg: Leg,
    reversed: bool,
}

impl Oriented {
    fn curve_at(&self, u: &Rational) -> Result<Curve> {
        let u = if self.reversed { Rational::one() - u } else { u.clone() };
        match &self.leg {
            Leg::Ambient { base, path } => base.transform(&to_mat3(&path.at(&u))),
            Leg::Reparam { base, pre, path } => {
                let pre: Matrix = pre.iter().map(|r| r.to_vec()).collect();
                base.reparametrize(&to_mat2(&mat_mul(&pre, &path.at(&u))))
            }
            Leg::Preimages(f) => realize_from_quadratics(&f.at(&u)),
        }
    }
}

/// One endpoint brought into the aligned frame.
struct Side {
    legs: Vec<Leg>,
    /// Contracting projective transform (positive determinant).
    ambient: Mat3,
    /// Monic node quadratics of the aligned frame, node `k` at `e_k`.
    monic: [[Rational; 3]; 3],
}

/// Möbius map `y ↦ x` whose new chart order starts at `order[r]`, reading forward,
/// or backward from `order[r - 1]` when `reflect` is set. `None` is the identity.
fn alignment_map(order: &[AlgebraicReal], reflect: bool, r: usize) -> Option<[[Rational; 2]; 2]> {
    let n = order.len();
    if !reflect && r == 0 && order.last().is_none_or(|x| !x.is_infinity()) {
        return None;
    }
    let w = if n == 0 {
        Rational::zero()
    } else {
        let prev = order[(r + n - 1) % n].clone();
        let next = order[r].clone();
        if next.is_infinity() || (r == 0 && !prev.is_infinity()) {
            upper_end(&prev).ceil() + Rational::one()
        } else if prev.is_infinity() {
            lower_end(&next).floor() - Rational::one()
        } else {
            point_between(prev, next)
        }
    };
    let sign = if reflect { Rational::one() } else { -Rational::one() };
    Some([[w, sign], [Rational::one(), Rational::zero()]])
}

fn upper_end(x: &AlgebraicReal) -> Rational {
    x.interval().expect("finite").hi
}

fn lower_end(x: &AlgebraicReal) -> Rational {
    x.interval().expect("finite").lo
}

/// A rational strictly between two finite algebraic reals `a < b`.
fn point_between(mut a: AlgebraicReal, mut b: AlgebraicReal) -> Rational {
    loop {
        let (ia, ib) = (a.interval().expect("finite"), b.interval().expect("finite"));
        if ia.hi < ib.lo {
            return crate::exactmath::simplest_between(&ia.hi, &ib.lo);
        }
        if ia.hi == ib.lo && a.exact().is_none() && b.exact().is_none() {
            return ia.hi;
        }
        a.refine();
        b.refine();
    }
}

fn det2(m: &[[Rational; 2]; 2]) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

impl Side {
    /// Normalize `c` with its nodes placed in the order `perm`, then reparametrize by
    /// the alignment map and rescale to monic quadratics.
    fn prepare(c: &Curve, cl: &Classification, perm: &[usize; 3], reflect: bool, r: usize) -> Result<Self> {
        let nodes: Vec<_> = perm.iter().map(|&k| cl.nodes[k].clone()).collect();
        let (t, _) = normalize_with_nodes(c, &nodes)?;
        let q: Vec<BinaryForm> = nodes.iter().map(|n| n.quadratic.clone().expect("normalized")).collect();
        let map = alignment_map(&cl.circular_order, reflect, r);
        let qm: Vec<BinaryForm> = match &map {
            Some(m) => {
                let g = m.clone().map(|row| row.map(GaussianRational::real));
                q.iter().map(|f| f.substitute(&g)).collect()
            }
            None => q,
        };
        let lead: Vec<Rational> = qm.iter().map(|f| f.coeff(0).re.clone()).collect();
        if lead.iter().any(|a| a.is_zero()) {
            return Err(Error::PathObstruction("aligned frame keeps a preimage at infinity".into()));
        }
        let monic: [[Rational; 3]; 3] = std::array::from_fn(|k| std::array::from_fn(|i| &qm[k].coeff(i).re / &lead[k]));
        // realize(qm) = diag(a1·a2, a0·a2, a0·a1)·realize(monic)
        let mut ambient = t;
        for i in 0..3 {
            let scale = &lead[(i + 1) % 3] * &lead[(i + 2) % 3];
            for entry in ambient[i].iter_mut() {
                *entry = &*entry / &scale;
            }
        }
        if mat3_det(&ambient).is_negative() {
            ambient = negated(&ambient);
        }
        let mut legs = Vec::new();
        let path = MatrixPath::new(&from_mat3(&ambient)).expect("positive determinant");
        let moved = c.transform(&ambient)?;
        if !path.is_trivial() {
            legs.push(Leg::Ambient { base: c.clone(), path });
        }
        if let Some(m) = map {
            // an orientation-reversing map starts with the reflection x ↦ -x
            let (pre, rest) = if det2(&m).is_negative() {
                let rho = [[-Rational::one(), Rational::zero()], [Rational::zero(), Rational::one()]];
                let rest = [[-m[0][0].clone(), -m[0][1].clone()], [m[1][0].clone(), m[1][1].clone()]];
                (rho, rest)
            } else {
                let id = [[Rational::one(), Rational::zero()], [Rational::zero(), Rational::one()]];
                (id, m)
            };
            let path = MatrixPath::new(&rest.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).expect("positive determinant");
            legs.push(Leg::Reparam { base: moved, pre, path });
        }
        Ok(Self { legs, ambient, monic })
    }

    /// Exact chart roots, or a certified snapping leg to nearby rational roots.
    fn snap(&self) -> Result<(Option<Family>, [NodeRoots; 3])> {
        let exact: Vec<Option<NodeRoots>> = self.monic.iter().map(|m| roots_of(m, None)).collect();
        if exact.iter().all(Option::is_some) {
            return Ok((None, std::array::from_fn(|k| exact[k].clone().unwrap())));
        }
        for bits in [8u32, 16, 32, 64, 128, 256] {
            let approx: Option<Vec<NodeRoots>> = (0..3)
                .map(|k| exact[k].clone().or_else(|| roots_of(&self.monic[k], Some(bits))))
                .collect();
            let Some(approx) = approx else { continue };
            let target: [NodeRoots; 3] = std::array::from_fn(|k| approx[k].clone());
            let fam = Family::linear(&self.monic, &target.clone().map(|r| r.monic()));
            if fam.certified() {
                return Ok((Some(fam), target));
            }
        }
        Err(Error::PathObstruction("could not snap irrational preimages".into()))
    }
}

/// Node correspondences between `a` and `b`: `perm[k]` is the node of `b` matched
/// with node `k` of `a`, together with the alignment map parameters for `b`.
fn candidates(ca: &Classification, cb: &Classification) -> Vec<([usize; 3], bool, usize)> {
    let (la, lb) = (&ca.labels, &cb.labels);
    let n = la.len();
    let chords = n / 2;
    let mut out = Vec::new();
    for reflect in [false, true] {
        for r in 0..n.max(1) {
            let seq: Vec<usize> = (0..n).map(|i| if reflect { lb[(r + n - 1 - i) % n] } else { lb[(r + i) % n] }).collect();
            let mut map: [Option<usize>; 3] = [None; 3];
            let consistent = (0..n).all(|i| match map[la[i]] {
                Some(bn) => bn == seq[i],
                None => {
                    if map.iter().any(|m| *m == Some(seq[i])) {
                        return false;
                    }
                    map[la[i]] = Some(seq[i]);
                    true
                }
            });
            if !consistent {
                continue;
            }
            for sol in permutations(&(chords..3).collect::<Vec<_>>()) {
                let mut perm = [0usize; 3];
                for k in 0..chords {
                    perm[k] = map[k].expect("every chord labelled");
                }
                for (i, &b) in sol.iter().enumerate() {
                    perm[chords + i] = b;
                }
                out.push((perm, reflect, r));
            }
        }
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Certified preimage legs from `a` to `b`: all points at once, or crossing
/// preimages and solitary pairs in two separate phases.
fn middle_legs(a: &[NodeRoots; 3], b: &[NodeRoots; 3]) -> Option<Vec<Family>> {
    let mixed = |real_from: &[NodeRoots; 3], upper_from: &[NodeRoots; 3]| -> [NodeRoots; 3] {
        std::array::from_fn(|k| match a[k] {
            NodeRoots::Real(..) => real_from[k].clone(),
            NodeRoots::Upper(_) => upper_from[k].clone(),
        })
    };
    let schedules = [vec![a.clone(), b.clone()], vec![a.clone(), mixed(b, a), b.clone()], vec![a.clone(), mixed(a, b), b.clone()]];
    schedules.iter().find_map(|stops| {
        stops
            .windows(2)
            .map(|w| Family::roots(&w[0], &w[1]).filter(Family::certified))
            .collect::<Option<Vec<_>>>()
    })
}

struct Plan {
    legs: Vec<Oriented>,
    ambient: Vec<Mat3>,
}

fn plan(a: &Curve, ca: &Classification, b: &Curve, cb: &Classification) -> Result<Plan> {
    let side_a = Side::prepare(a, ca, &[0, 1, 2], false, 0)?;
    let (snap_a, roots_a) = side_a.snap()?;
    let mut tried = 0;
    for (perm, reflect, r) in candidates(ca, cb) {
        tried += 1;
        let side_b = match Side::prepare(b, cb, &perm, reflect, r) {
            Ok(s) => s,
            Err(Error::PathObstruction(_)) => continue,
            Err(e) => return Err(e),
        };
        let (snap_b, roots_b) = match side_b.snap() {
            Ok(x) => x,
            Err(Error::PathObstruction(_)) => continue,
            Err(e) => return Err(e),
        };
        let Some(middle) = middle_legs(&roots_a, &roots_b) else { continue };
        let mut legs: Vec<Oriented> = Vec::new();
        let forward = |leg| Oriented { leg, reversed: false };
        let backward = |leg| Oriented { leg, reversed: true };
        legs.extend(side_a.legs.iter().cloned().map(forward));
        legs.extend(snap_a.clone().map(|f| forward(Leg::Preimages(f))));
        legs.extend(middle.into_iter().filter(|f| !f.is_constant()).map(|f| forward(Leg::Preimages(f))));
        legs.extend(snap_b.map(|f| backward(Leg::Preimages(f))));
        legs.extend(side_b.legs.into_iter().rev().map(backward));
        return Ok(Plan { legs, ambient: vec![side_a.ambient.clone(), side_b.ambient] });
    }
    Err(Error::PathObstruction(format!("no certified preimage homotopy among {tried} alignments")))
}

// ---------------------------------------------------------------------------
// Paths

#[derive(Clone, Debug, Serialize)]
pub struct PathStep {
    #[serde(with = "rational_str")]
    pub t: Rational,
    pub curve: Curve,
    pub certificate: GenericityCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotopyPath {
    pub class_id: ClassId,
    pub steps: Vec<PathStep>,
    /// Contracting transforms of the two endpoints (identity for a constant path).
    #[serde(skip)]
    pub ambient: Vec<Mat3>,
    /// Whether the path was routed through the class representative.
    pub via_representative: bool,
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    class: ClassId,
    steps: usize,
    t: Vec<String>,
    certificates: serde_json::Value,
}

impl IsotopyPath {
    pub fn curves(&self) -> impl Iterator<Item = &Curve> {
        self.steps.iter().map(|s| &s.curve)
    }

    /// `step_NNNN.json` curve files plus `manifest.json`.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (k, s) in self.steps.iter().enumerate() {
            write_json(&dir.join(step_file_name(k)), &s.curve)?;
        }
        let manifest = Manifest {
            class: self.class_id.clone(),
            steps: self.steps.len(),
            t: self.steps.iter().map(|s| crate::exactmath::encode::rational_to_string(&s.t)).collect(),
            certificates: serde_json::to_value(self.steps.iter().map(|s| &s.certificate).collect::<Vec<_>>())?,
        };
        write_json(&dir.join("manifest.json"), &manifest)
    }
}

pub fn step_file_name(k: usize) -> String {
    format!("step_{k:04}.json")
}

/// Class and frame curves of a path directory written by [`IsotopyPath::write_dir`].
pub fn read_path_dir(dir: &Path) -> Result<(ClassId, Vec<Curve>)> {
    let manifest: Manifest = read_json(&dir.join("manifest.json"))?;
    let curves = (0..manifest.steps).map(|k| read_json(&dir.join(step_file_name(k)))).collect::<Result<_>>()?;
    Ok((manifest.class, curves))
}

fn certify_samples(a: &Curve, b: &Curve, legs: &[Oriented], steps: usize, class: &ClassId) -> Result<Vec<PathStep>> {
    let ts = uniform(steps);
    let len = legs.len();
    let last = ts.len() - 1;
    ts.into_par_iter()
        .enumerate()
        .map(|(k, t)| {
            let curve = if k == 0 {
                a.clone()
            } else if k == last {
                b.clone()
            } else {
                let pos = &t * Rational::from_integer(len.into());
                let j = pos.floor().to_integer().try_into().unwrap_or(usize::MAX).min(len - 1);
                let u = pos - Rational::from_integer(j.into());
                legs[j].curve_at(&u)?
            };
            let certificate = verify_generic(&curve)
                .map_err(|e| Error::PathObstruction(format!("sample {k} is not generic: {e}")))?;
            if certificate.class_id != *class {
                return Err(Error::PathObstruction(format!("sample {k} left the class")));
            }
            Ok(PathStep { t, curve, certificate })
        })
        .collect()
}

/// A certified sampled rigid isotopy from `a` to `b` with `steps` samples
/// (at least 2); the first and last samples are `a` and `b` exactly.
pub fn build_path(a: &Curve, b: &Curve, steps: usize) -> Result<IsotopyPath> {
    let ca = classify(a)?;
    let cb = classify(b)?;
    if ca.class_id != cb.class_id {
        return Err(Error::DifferentClass(ca.class_id.to_string(), cb.class_id.to_string()));
    }
    let class = ca.class_id.clone();
    if a == b {
        let cert = verify_generic(a)?;
        let steps =
            uniform(steps).into_iter().map(|t| PathStep { t, curve: a.clone(), certificate: cert.clone() }).collect();
        return Ok(IsotopyPath { class_id: class, steps, ambient: vec![mat3_identity(); 2], via_representative: false });
    }
    let direct = plan(a, &ca, b, &cb).and_then(|p| {
        let steps = certify_samples(a, b, &p.legs, steps, &class)?;
        Ok(IsotopyPath { class_id: class.clone(), steps, ambient: p.ambient, via_representative: false })
    });
    match direct {
        Err(Error::PathObstruction(_)) => {}
        other => return other,
    }
    let rep = realize_class(&class)?;
    let cr = classify(&rep)?;
    let first = plan(a, &ca, &rep, &cr)?;
    let second = plan(&rep, &cr, b, &cb)?;
    let mut legs = first.legs;
    legs.extend(second.legs);
    let samples = certify_samples(a, b, &legs, steps, &class)?;
    let ambient = vec![first.ambient[0].clone(), second.ambient[1].clone()];
    Ok(IsotopyPath { class_id: class, steps: samples, ambient, via_representative: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::linalg::mat3_det;
    use crate::realize::{realize_from_seed, NodeSeed};

    fn seed_curve(pairs: [(i64, i64); 3]) -> Curve {
        let seed = NodeSeed::new(pairs.map(|(a, b)| NodeSeed::real_pair(rat(a), rat(b)))).unwrap();
        realize_from_seed(&seed).unwrap()
    }

    fn diag(d: [i64; 3]) -> Mat3 {
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { rat(d[i]) } else { rat(0) }))
    }

    #[test]
    fn identity_transform_path_is_constant() {
        let path = transform_path(&mat3_identity(), 6);
        assert_eq!(path.len(), 6);
        assert!(path.iter().all(|m| *m == mat3_identity()));
    }

    #[test]
    fn diagonal_transform_path_is_a_segment() {
        let path = transform_path(&diag([2, 1, 1]), 5);
        for (k, m) in path.iter().enumerate() {
            let u = ratio_of(k, 4);
            let expected = diag([1, 1, 1]);
            let mut expected = expected;
            expected[0][0] = rat(1) + u;
            assert_eq!(*m, expected);
            assert!(!mat3_det(m).is_zero());
        }
    }

    fn ratio_of(k: usize, n: usize) -> Rational {
        Rational::new(BigInt::from(k), BigInt::from(n))
    }

    #[test]
    fn negative_determinant_targets_the_negated_matrix() {
        let t: Mat3 = [[rat(0), rat(1), rat(0)], [rat(1), rat(0), rat(0)], [rat(0), rat(0), rat(3)]];
        let path = transform_path(&t, 9);
        assert_eq!(*path.last().unwrap(), negated(&t));
        assert!(path.iter().all(|m| mat3_det(m).is_positive()));
    }

    #[test]
    fn half_turn_passes_through_invertible_rotations() {
        let path = MatrixPath::new(&from_mat3(&diag([-1, -1, 1]))).unwrap();
        for k in 0..=8 {
            let m = path.at(&ratio_of(k, 8));
            assert!(mat3_det(&to_mat3(&m)).is_one());
        }
        assert_eq!(to_mat3(&path.at(&rat(1))), diag([-1, -1, 1]));
    }

    #[test]
    fn realized_curves_are_certified() {
        let c = realize_class(&"2-1212|s1".parse().unwrap()).unwrap();
        let cert = verify_generic(&c).unwrap();
        assert_eq!(cert.preimage_form.degree(), 6);
        assert!(cert.check(&c));
    }

    #[test]
    fn duplicated_endpoint_is_rejected() {
        let q = [(0, 1), (0, 2), (3, 4)].map(|(a, b)| {
            BinaryForm::from_real(vec![rat(1), rat(-(a + b)), rat(a * b)])
        });
        match realize_from_quadratics(&q).and_then(|c| verify_generic(&c)) {
            Err(Error::NotGeneric(_)) => {}
            other => panic!("expected NotGeneric, got {other:?}"),
        }
    }

    #[test]
    fn equal_endpoints_give_a_constant_path() {
        let c = realize_class(&"3-112233|s0".parse().unwrap()).unwrap();
        let p = build_path(&c, &c, 5).unwrap();
        assert_eq!(p.steps.len(), 5);
        assert!(p.steps.iter().all(|s| s.curve == c));
    }

    #[test]
    fn parallel_chords_move_monotonically() {
        let a = seed_curve([(0, 1), (2, 3), (4, 5)]);
        let b = seed_curve([(0, 2), (3, 5), (7, 9)]);
        let p = build_path(&a, &b, 12).unwrap();
        assert_eq!(p.steps.len(), 12);
        assert_eq!(p.steps[0].curve, a);
        assert_eq!(p.steps[11].curve, b);
        assert!(p.steps.iter().all(|s| s.certificate.class_id.to_string() == "3-112233|s0"));
    }

    #[test]
    fn solitary_pair_rises_while_crossings_stay() {
        use crate::nodes::Preimages;
        let a = realize_class(&"2-1212|s1".parse().unwrap()).unwrap();
        let seed = NodeSeed::new([
            NodeSeed::real_pair(rat(0), rat(2)),
            NodeSeed::real_pair(rat(1), rat(3)),
            NodeSeed::conjugate_pair(rat(0), rat(5)),
        ])
        .unwrap();
        let b = realize_from_seed(&seed).unwrap();
        let p = build_path(&a, &b, 9).unwrap();
        assert!(!p.via_representative);
        let mut last = rat(1);
        for s in &p.steps {
            let cl = classify(&s.curve).unwrap();
            let reals: Vec<Rational> = cl.circular_order.iter().map(|x| x.exact().unwrap().clone()).collect();
            assert_eq!(reals, [0, 1, 2, 3].map(rat).to_vec());
            let z = cl
                .nodes
                .iter()
                .find_map(|n| match &n.preimages {
                    Preimages::Conjugate(c) => c.exact.clone(),
                    _ => None,
                })
                .unwrap();
            assert!(z.re.is_zero());
            let h = z.im.abs();
            assert!(h >= last && h <= rat(5));
            last = h;
        }
        assert_eq!(last, rat(5));
    }
}
