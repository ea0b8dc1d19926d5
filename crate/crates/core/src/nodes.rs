//! Self-intersections of a degree-4 parametrization.
//!
//! Two parameters `a ≠ b` map to the same plane point exactly when the three
//! divided minors `G_ij(a; b) = (p_i(a)p_j(b) − p_j(a)p_i(b)) / (a − b)` vanish.
//! Eliminating the second parameter from pairs of minors yields a form whose
//! roots are the node preimages; pairing is recovered by excluding every wrong
//! candidate pair with exact interval arithmetic, so a surviving pair is the true
//! one because a genuine preimage always has a partner.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::encode::rational_to_string;
use crate::exactmath::interval::{CBox, Interval};
use crate::exactmath::linalg::{det_integer, mat3_det};
use crate::exactmath::{
    conjugate_root_pair, form_gcd, isolate_complex_roots, isolate_real_roots, rat, sylvester_det, sylvester_matrix,
    AlgebraicReal, BinaryForm, ComplexRoots, GaussianRational, Poly, ProjPoint1, Rational, RootDisk,
};
use crate::realize::Curve;

const MAX_ROUNDS: usize = 80;
const MAX_COMPLEX_BITS: u32 = 1 << 15;

/// `G_ij` as the coefficients of `s^a t^(3−a) u^b v^(3−b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorForm {
    pub i: usize,
    pub j: usize,
    coef: [[Rational; 4]; 4],
}

impl MinorForm {
    pub fn coeff(&self, a: usize, b: usize) -> &Rational {
        &self.coef[a][b]
    }

    pub fn eval(&self, x: &ProjPoint1, y: &ProjPoint1) -> GaussianRational {
        let mx = monomials(x);
        let my = monomials(y);
        let mut acc = GaussianRational::zero();
        for a in 0..4 {
            for b in 0..4 {
                if !self.coef[a][b].is_zero() {
                    acc = acc + mx[a].clone() * my[b].clone() * GaussianRational::real(self.coef[a][b].clone());
                }
            }
        }
        acc
    }

    /// The cubic form in `(u, v)` obtained by fixing the first argument.
    pub fn specialize(&self, x: &ProjPoint1) -> BinaryForm {
        let mx = monomials(x);
        BinaryForm::new(
            (0..4)
                .map(|k| {
                    let b = 3 - k;
                    (0..4).fold(GaussianRational::zero(), |acc, a| {
                        acc + mx[a].clone() * GaussianRational::real(self.coef[a][b].clone())
                    })
                })
                .collect(),
        )
    }

    fn eval_box(&self, x: &Param, y: &Param) -> CBox {
        let mx = x.monomials();
        let my = y.monomials();
        let mut acc = CBox::zero();
        for a in 0..4 {
            for b in 0..4 {
                if !self.coef[a][b].is_zero() {
                    acc = acc.add(&mx[a].mul(&my[b]).scale(&self.coef[a][b]));
                }
            }
        }
        acc
    }
}

/// `s^a t^(3−a)` for `a = 0..3`.
fn monomials(x: &ProjPoint1) -> [GaussianRational; 4] {
    std::array::from_fn(|a| {
        let mut m = GaussianRational::one();
        for _ in 0..a {
            m = m * x.a.clone();
        }
        for _ in a..3 {
            m = m * x.b.clone();
        }
        m
    })
}

/// Chart coefficients: `out[i][a]` multiplies `x^a` in `p_i(x, 1)`.
fn chart_coeffs(c: &Curve) -> [[Rational; 5]; 3] {
    let rc = c.real_coeffs();
    std::array::from_fn(|i| std::array::from_fn(|a| rc[i][4 - a].clone()))
}

pub fn minor_forms(c: &Curve) -> Result<[MinorForm; 3]> {
    let pc = chart_coeffs(c);
    let mut out = Vec::with_capacity(3);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        // numerator N(s, u) = Σ n[a][b] s^a u^b, divided by (s − u) in s
        let n: [[Rational; 5]; 5] = std::array::from_fn(|a| {
            std::array::from_fn(|b| &pc[i][a] * &pc[j][b] - &pc[j][a] * &pc[i][b])
        });
        let mut q: [[Rational; 5]; 4] = Default::default();
        let mut carry: [Rational; 5] = Default::default();
        for a in (1..5).rev() {
            // q_{a−1}(u) = c_a(u) + u·q_a(u)
            let mut next: [Rational; 5] = n[a].clone();
            for b in 1..5 {
                next[b] += &carry[b - 1];
            }
            if !carry[4].is_zero() {
                return Err(Error::DivisionFailure(format!("minor ({i},{j}) exceeds bidegree (3,3)")));
            }
            q[a - 1] = next.clone();
            carry = next;
        }
        // remainder c_0(u) + u·q_0(u)
        let mut rem = n[0].clone();
        for b in 1..5 {
            rem[b] += &carry[b - 1];
        }
        if rem.iter().any(|r| !r.is_zero()) || q.iter().any(|row| !row[4].is_zero()) {
            return Err(Error::DivisionFailure(format!("minor ({i},{j}) is not divisible by sv − tu")));
        }
        let coef = std::array::from_fn(|a| std::array::from_fn(|b| q[a][b].clone()));
        out.push(MinorForm { i, j, coef });
    }
    Ok(out.try_into().unwrap())
}

/// Integer multiple of the coefficient table (a nonzero constant factor does not
/// change any root).
fn integer_table(g: &MinorForm) -> [[BigInt; 4]; 4] {
    let den = g.coef.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    std::array::from_fn(|a| std::array::from_fn(|b| (&g.coef[a][b] * Rational::from_integer(den.clone())).to_integer()))
}

fn specialize_integer(t: &[[BigInt; 4]; 4], x: &BigInt) -> Vec<BigInt> {
    (0..4)
        .map(|k| {
            let b = 3 - k;
            (0..4).rev().fold(BigInt::zero(), |acc, a| acc * x + &t[a][b])
        })
        .collect()
}

/// Degree-18 form whose roots are the parameters `a` for which the two minors share
/// a second argument.
fn minor_resultant(g: &MinorForm, h: &MinorForm) -> Poly<Rational> {
    let (tg, th) = (integer_table(g), integer_table(h));
    let xs: Vec<BigInt> = (-9..=9).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x| det_integer(sylvester_matrix(&specialize_integer(&tg, x), &specialize_integer(&th, x))))
        .collect();
    Poly::interpolate_consecutive(-9, &ys)
}

/// Squarefree form carrying every node preimage (and nothing else on generic input).
fn elimination_form(g: &[MinorForm; 3]) -> Result<(usize, Poly<Rational>)> {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let res: Vec<Poly<Rational>> = pairs.par_iter().map(|&(a, b)| minor_resultant(&g[a], &g[b])).collect();
    let mut acc: Option<(usize, Poly<Rational>)> = None;
    for r in res {
        if r.is_zero() {
            continue;
        }
        // homogenized to degree 18: the t-multiplicity is the missing top degree
        let m = 18 - r.degree().unwrap();
        acc = Some(match acc {
            None => (m, r),
            Some((m0, p0)) => (m0.min(m), p0.gcd_primitive(&r)),
        });
    }
    let (m, p) = acc.ok_or_else(|| {
        Error::NotGeneric("the minors share a common factor (the map is not birational onto its image)".into())
    })?;
    let p = if p.degree().unwrap_or(0) > 0 { p.squarefree_primitive().primitive_integer() } else { Poly::constant(rat(1)) };
    Ok((m.min(1), p))
}

/// Enclosure of a parameter value: a chart box or the exact point `[1:0]`.
#[derive(Clone, Debug)]
enum Param {
    Chart(CBox),
    Infinity,
}

impl Param {
    fn monomials(&self) -> [CBox; 4] {
        match self {
            Param::Chart(x) => {
                let mut out = [CBox::one(), CBox::one(), CBox::one(), CBox::one()];
                for a in 1..4 {
                    out[a] = out[a - 1].mul(x);
                }
                out
            }
            Param::Infinity => [CBox::zero(), CBox::zero(), CBox::zero(), CBox::one()],
        }
    }

    /// Point and tangent vector of the map at this parameter.
    fn jet(&self, pc: &[[Rational; 5]; 3]) -> ([CBox; 3], [CBox; 3]) {
        match self {
            Param::Chart(x) => {
                let val = std::array::from_fn(|i| CBox::eval_poly(&Poly::new(pc[i].to_vec()), x));
                let der = std::array::from_fn(|i| {
                    CBox::eval_poly(&Poly::new(pc[i].to_vec()).derivative(), x)
                });
                (val, der)
            }
            // chart y = t/s around [1:0]: p(1, y) = Σ pc[a] y^(4−a)
            Param::Infinity => (
                std::array::from_fn(|i| CBox::real(Interval::point(pc[i][4].clone()))),
                std::array::from_fn(|i| CBox::real(Interval::point(pc[i][3].clone()))),
            ),
        }
    }

    fn is_exact(&self) -> bool {
        match self {
            Param::Chart(b) => b.re.width().is_zero() && b.im.width().is_zero(),
            Param::Infinity => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Root {
    Real(usize),
    Upper(usize),
    Lower(usize),
}

/// All roots of the elimination form with refinable enclosures.
struct RootSet {
    form: BinaryForm,
    chart: Poly<Rational>,
    reals: Vec<AlgebraicReal>,
    complex: Option<ComplexRoots>,
    uppers: Vec<usize>,
}

impl RootSet {
    fn new(m: usize, chart: Poly<Rational>) -> Result<Self> {
        let deg = chart.degree().unwrap_or(0);
        let form = BinaryForm::from_real_poly(&chart, deg + m);
        if deg == 0 {
            let reals = AlgebraicReal::infinity_of(&form).into_iter().collect();
            return Ok(Self { form, chart, reals, complex: None, uppers: Vec::new() });
        }
        let mut cr = isolate_complex_roots(&chart)?;
        // exact points make the exclusion tests exact evaluations
        cr.pin_gaussian_rational()?;
        // real disks are disjoint from all others, so their real segments isolate
        let mut reals = Vec::new();
        for d in cr.real_disks() {
            let r = d.radius_upper();
            let exact = d.radius_sq.is_zero().then(|| d.center.re.clone());
            let (lo, hi) = if exact.is_some() {
                (&d.center.re - rat(1), &d.center.re + rat(1))
            } else {
                (&d.center.re - &r, &d.center.re + &r)
            };
            match AlgebraicReal::isolated(&form, lo, hi, exact) {
                Some(a) => reals.push(a),
                None => {
                    reals = isolate_real_roots(&form)?;
                    reals.retain(|a| !a.is_infinity());
                    break;
                }
            }
        }
        reals.sort();
        reals.extend(AlgebraicReal::infinity_of(&form));
        let uppers = upper_indices(&cr);
        Ok(Self { form, chart, reals, complex: Some(cr), uppers })
    }

    fn handles(&self) -> Vec<Root> {
        let mut out: Vec<Root> = (0..self.reals.len()).map(Root::Real).collect();
        out.extend((0..self.uppers.len()).map(Root::Upper));
        out.extend((0..self.uppers.len()).map(Root::Lower));
        out
    }

    fn disk(&self, k: usize) -> &RootDisk {
        &self.complex.as_ref().unwrap().disks()[self.uppers[k]]
    }

    fn param(&self, r: Root) -> Param {
        match r {
            Root::Real(k) => match self.reals[k].interval() {
                Some(iv) => Param::Chart(CBox::real(iv)),
                None => Param::Infinity,
            },
            Root::Upper(k) => Param::Chart(self.disk(k).cbox()),
            Root::Lower(k) => Param::Chart(self.disk(k).cbox().conj()),
        }
    }

    /// The parameter as an exact point, once its enclosure has collapsed.
    fn exact_point(&self, r: Root) -> Option<ProjPoint1> {
        match r {
            Root::Real(k) => exact_point(&self.reals[k]),
            Root::Upper(k) => {
                let d = self.disk(k);
                d.radius_sq.is_zero().then(|| ProjPoint1::chart(d.center.clone()))
            }
            Root::Lower(k) => {
                let d = self.disk(k);
                d.radius_sq.is_zero().then(|| ProjPoint1::chart(d.center.conj()))
            }
        }
    }

    fn refine_real(&mut self, k: usize) {
        for _ in 0..4 {
            self.reals[k].refine();
        }
    }

    fn refine_complex(&mut self) -> Result<()> {
        if let Some(cr) = &mut self.complex {
            if self.uppers.is_empty() {
                return Ok(());
            }
            cr.refine()?;
            self.uppers = upper_indices(cr);
        }
        Ok(())
    }

    fn refine(&mut self, r: Root) -> Result<()> {
        match r {
            Root::Real(k) => {
                self.refine_real(k);
                Ok(())
            }
            _ => self.refine_complex(),
        }
    }
}

fn upper_indices(cr: &ComplexRoots) -> Vec<usize> {
    cr.disks().iter().enumerate().filter(|(_, d)| d.center.im.is_positive()).map(|(k, _)| k).collect()
}

/// One real coordinate of a node position.
#[derive(Clone, Debug)]
pub enum Coordinate {
    Rational(Rational),
    Algebraic(AlgebraicReal),
}

impl Coordinate {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coordinate::Rational(r) => Some(r),
            Coordinate::Algebraic(a) => a.exact(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Coordinate::Rational(r) => crate::exactmath::to_f64(r),
            Coordinate::Algebraic(a) => a.to_f64(),
        }
    }

    fn interval(&self) -> Interval {
        match self {
            Coordinate::Rational(r) => Interval::point(r.clone()),
            Coordinate::Algebraic(a) => a.interval().expect("node coordinates are finite"),
        }
    }

    fn refine(&mut self) {
        if let Coordinate::Algebraic(a) = self {
            a.refine();
        }
    }
}

impl Serialize for Coordinate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coordinate::Rational(r) => s.serialize_str(&rational_to_string(r)),
            Coordinate::Algebraic(a) => a.serialize(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Crossing,
    Solitary,
}

/// The root with positive imaginary part of a solitary node's preimage pair.
#[derive(Clone, Debug)]
pub struct ComplexPreimage {
    /// Real form having this root (the exact preimage quadratic when known).
    pub form: BinaryForm,
    pub disk: RootDisk,
    pub exact: Option<GaussianRational>,
}

impl ComplexPreimage {
    fn conj(&self) -> Self {
        Self { form: self.form.clone(), disk: self.disk.conj(), exact: self.exact.as_ref().map(|z| z.conj()) }
    }
}

impl Serialize for ComplexPreimage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.exact {
            Some(z) => ProjPoint1::chart(z.clone()).serialize(s),
            None => {
                let mut st = s.serialize_struct("ComplexPreimage", 3)?;
                st.serialize_field("form", &self.form)?;
                st.serialize_field("center", &self.disk.center)?;
                st.serialize_field("radius_sq", &rational_to_string(&self.disk.radius_sq))?;
                st.end()
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Preimages {
    /// Two distinct real parameters in chart order (`[1:0]` last).
    Real([AlgebraicReal; 2]),
    /// A conjugate pair, stored through its upper member.
    Conjugate(ComplexPreimage),
}

impl Serialize for Preimages {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Preimages::Real(pair) => pair.serialize(s),
            Preimages::Conjugate(up) => [up.clone(), up.conj()].serialize(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    /// Projective position scaled so its largest-magnitude coordinate is 1.
    pub position: [Coordinate; 3],
    pub preimages: Preimages,
    pub kind: NodeKind,
    /// Real quadratic vanishing exactly on the preimages, present iff the position is rational.
    pub quadratic: Option<BinaryForm>,
}

impl Node {
    pub fn rational_position(&self) -> Option<[Rational; 3]> {
        let v: Vec<Rational> = self.position.iter().filter_map(|c| c.as_rational().cloned()).collect();
        v.try_into().ok()
    }

    /// Both preimages as exact projective points, when they are (Gaussian-)rational.
    pub fn exact_preimages(&self) -> Option<[ProjPoint1; 2]> {
        match &self.preimages {
            Preimages::Real([a, b]) => Some([exact_point(a)?, exact_point(b)?]),
            Preimages::Conjugate(up) => {
                let z = up.exact.clone()?;
                Some([ProjPoint1::chart(z.clone()), ProjPoint1::chart(z.conj())])
            }
        }
    }

    pub fn real_preimages(&self) -> Option<&[AlgebraicReal; 2]> {
        match &self.preimages {
            Preimages::Real(p) => Some(p),
            Preimages::Conjugate(_) => None,
        }
    }
}

fn exact_point(a: &AlgebraicReal) -> Option<ProjPoint1> {
    if a.is_infinity() {
        return Some(ProjPoint1::infinity());
    }
    a.exact().cloned().map(ProjPoint1::real)
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("position", &self.position)?;
        m.serialize_entry("preimages", &self.preimages)?;
        m.serialize_entry("kind", &self.kind)?;
        m.serialize_entry("quadratic", &self.quadratic)?;
        m.end()
    }
}

/// Candidate partner pairs still consistent with the enclosures.
fn pair_roots(g: &[MinorForm; 3], roots: &mut RootSet) -> Result<Vec<(Root, Root)>> {
    let handles = roots.handles();
    let n = handles.len();
    let mut alive = vec![vec![true; n]; n];
    for k in 0..n {
        alive[k][k] = false;
    }
    for _ in 0..MAX_ROUNDS {
        let params: Vec<Param> = handles.iter().map(|&h| roots.param(h)).collect();
        let points: Vec<Option<ProjPoint1>> = handles.iter().map(|&h| roots.exact_point(h)).collect();
        let cubics: Vec<Option<Vec<BinaryForm>>> =
            points.iter().map(|p| p.as_ref().map(|x| g.iter().map(|m| m.specialize(x)).collect())).collect();
        for k in 0..n {
            for l in k + 1..n {
                if !alive[k][l] {
                    continue;
                }
                let separated = match (&points[k], &points[l]) {
                    (Some(_), Some(y)) => cubics[k].as_ref().unwrap().iter().any(|f| !f.eval(y).is_zero()),
                    _ => g.iter().any(|m| !m.eval_box(&params[k], &params[l]).contains_zero()),
                };
                if separated {
                    alive[k][l] = false;
                    alive[l][k] = false;
                }
            }
        }
        let counts: Vec<usize> = alive.iter().map(|row| row.iter().filter(|&&x| x).count()).collect();
        if counts.iter().all(|&c| c <= 1) {
            let mut pairs = Vec::new();
            for k in 0..n {
                if counts[k] == 0 {
                    return Err(Error::NotGeneric("a singular point is not an ordinary node".into()));
                }
                let l = alive[k].iter().position(|&x| x).unwrap();
                if k < l {
                    pairs.push((handles[k], handles[l]));
                }
            }
            return Ok(pairs);
        }
        // exact parameters can never be separated further; a surviving exact pair
        // together with another survivor means a point with three preimages
        for k in 0..n {
            if counts[k] > 1 {
                let h = handles[k];
                if params[k].is_exact() && alive[k].iter().zip(&params).all(|(&a, p)| !a || p.is_exact()) {
                    return Err(Error::NotGeneric("a point has more than two preimages".into()));
                }
                if let Root::Real(_) = h {
                    roots.refine(h)?;
                }
            }
        }
        if handles.iter().enumerate().any(|(k, h)| counts[k] > 1 && !matches!(h, Root::Real(_))) {
            if roots.complex.as_ref().map_or(0, |c| c.bits()) > MAX_COMPLEX_BITS {
                break;
            }
            roots.refine_complex()?;
        }
    }
    Err(Error::NotGeneric("preimage pairing did not separate (repeated preimage or non-nodal point)".into()))
}

/// Pair sum and product enclosures.
fn symmetric_functions(roots: &RootSet, a: Root, b: Root) -> (Interval, Interval) {
    match (roots.param(a), roots.param(b)) {
        (Param::Chart(x), Param::Chart(y)) => {
            let s = x.add(&y);
            let p = x.mul(&y);
            (s.re, p.re)
        }
        _ => unreachable!("pairs through [1:0] are handled separately"),
    }
}

fn round_to(v: &Interval, lc: &Rational) -> Rational {
    (v.mid() * lc).round() / lc
}

/// Exact preimage quadratic `x² − σx + π` of a finite pair, if it is rational.
fn exact_quadratic(roots: &mut RootSet, a: Root, b: Root) -> Result<Option<Poly<Rational>>> {
    let lc = roots.chart.leading().unwrap().abs();
    let target = rat(1) / &lc;
    for _ in 0..MAX_ROUNDS {
        let (s, p) = symmetric_functions(roots, a, b);
        if s.width() < target && p.width() < target {
            let q = Poly::new(vec![round_to(&p, &lc), -round_to(&s, &lc), rat(1)]);
            if roots.chart.exact_div(&q).is_none() {
                return Ok(None);
            }
            return Ok(quadratic_matches(roots, &q, a, b).then_some(q));
        }
        for h in [a, b] {
            if matches!(h, Root::Real(_)) {
                roots.refine(h)?;
            }
        }
        if !matches!(a, Root::Real(_)) {
            if roots.complex.as_ref().map_or(0, |c| c.bits()) > MAX_COMPLEX_BITS {
                return Ok(None);
            }
            roots.refine_complex()?;
        }
    }
    Ok(None)
}

/// A divisor `q` of the elimination form vanishes on exactly the pair `(a, b)`:
/// each isolating enclosure holds one root of `q`.
fn quadratic_matches(roots: &RootSet, q: &Poly<Rational>, a: Root, b: Root) -> bool {
    let disc = q.coeff(1) * q.coeff(1) - rat(4) * q.coeff(0);
    match (a, b) {
        (Root::Real(i), Root::Real(j)) => [i, j].iter().all(|&k| {
            let r = &roots.reals[k];
            match (r.exact(), r.interval()) {
                (Some(x), _) => q.eval(x).is_zero(),
                (None, Some(iv)) => q.sign_at(&iv.lo) != q.sign_at(&iv.hi) && q.sign_at(&iv.lo) != Ordering::Equal,
                _ => false,
            }
        }),
        (Root::Upper(k), Root::Lower(_)) | (Root::Lower(_), Root::Upper(k)) => {
            if !disc.is_negative() {
                return false;
            }
            // root c = σ/2 + i·w with w² = −disc/4; test |c − center|² ≤ r²
            let d = roots.disk(k);
            let re = q.coeff(1) / rat(-2);
            let w2 = -disc / rat(4);
            let dr = &re - &d.center.re;
            let lhs = &dr * &dr + &w2 + &d.center.im * &d.center.im - &d.radius_sq;
            let two_ci = &d.center.im * rat(2);
            // need lhs ≤ 2·ci·w with ci > 0, w > 0
            !lhs.is_positive() || &lhs * &lhs <= &two_ci * &two_ci * &w2
        }
        _ => false,
    }
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn normalize_rational(z: [Rational; 3]) -> [Rational; 3] {
    let mut best = 0;
    for k in 1..3 {
        if z[k].abs() > z[best].abs() {
            best = k;
        }
    }
    let d = z[best].clone();
    z.map(|x| x / &d)
}

/// Position of the node whose preimages are the roots of `q`.
fn position_from_quadratic(pc: &[[Rational; 5]; 3], q: &Poly<Rational>) -> Result<[Rational; 3]> {
    let rems: Vec<Poly<Rational>> = (0..3).map(|i| Poly::new(pc[i].to_vec()).div_rem(q).1).collect();
    let alpha: [Rational; 3] = std::array::from_fn(|i| rems[i].coeff(1));
    let beta: [Rational; 3] = std::array::from_fn(|i| rems[i].coeff(0));
    if cross(&alpha, &beta).iter().any(|c| !c.is_zero()) {
        return Err(Error::NotGeneric("preimage pair does not map to a single point".into()));
    }
    let z = if alpha.iter().any(|c| !c.is_zero()) { alpha } else { beta };
    Ok(normalize_rational(z))
}

/// Node position through the algebraic route: each coordinate ratio is a root of
/// `Res_s(D, p_i − y·p_j)`, identified by refining the preimage enclosure.
fn algebraic_position(c: &Curve, pc: &[[Rational; 5]; 3], roots: &mut RootSet, a: Root) -> Result<[Coordinate; 3]> {
    let mut j = None;
    for _ in 0..MAX_ROUNDS {
        let (val, _) = roots.param(a).jet(pc);
        let nonzero: Vec<usize> = (0..3).filter(|&i| !val[i].contains_zero()).collect();
        if !nonzero.is_empty() {
            let mag = |i: usize| crate::exactmath::to_f64(&val[i].norm_sqr().mid());
            j = nonzero.into_iter().max_by(|&x, &y| mag(x).total_cmp(&mag(y)));
            break;
        }
        roots.refine(a)?;
    }
    let j = j.ok_or_else(|| Error::NotGeneric("node position could not be separated from zero".into()))?;
    let mut out: [Coordinate; 3] = std::array::from_fn(|_| Coordinate::Rational(rat(1)));
    for i in (0..3).filter(|&i| i != j) {
        let common = form_gcd(&form_gcd(&roots.form, c.form(i)), c.form(j));
        let d = roots.form.exact_div(&common).expect("gcd divides");
        let n = d.degree();
        let ys: Vec<Rational> = (0..=n as i64).map(rat).collect();
        let vals: Vec<Rational> = ys
            .iter()
            .map(|y| {
                let f: Vec<Rational> =
                    (0..5).map(|k| &pc[i][4 - k] - y * &pc[j][4 - k]).collect();
                sylvester_det(&d.real_coeffs(), &f)
            })
            .collect();
        let ypoly = Poly::interpolate(&ys, &vals);
        if ypoly.is_zero() {
            return Err(Error::NotGeneric("coordinate ratio is not determined".into()));
        }
        let ypoly = ypoly.squarefree().primitive_integer();
        let yform = BinaryForm::from_real_poly(&ypoly, ypoly.degree().unwrap());
        let mut cands: Vec<AlgebraicReal> = isolate_real_roots(&yform)?;
        let mut found = None;
        for _ in 0..MAX_ROUNDS {
            let (val, _) = roots.param(a).jet(pc);
            let ratio = val[i].mul(&val[j].recip().expect("denominator excludes zero"));
            cands.retain(|r| r.interval().is_some_and(|iv| iv.intersects(&ratio.re)));
            if cands.len() == 1 {
                found = Some(cands.pop().unwrap());
                break;
            }
            if cands.is_empty() {
                break;
            }
            roots.refine(a)?;
            for r in &mut cands {
                r.refine();
            }
        }
        let mut y = found.ok_or_else(|| Error::NotGeneric("coordinate ratio could not be isolated".into()))?;
        out[i] = match y.try_rational() {
            Some(r) => Coordinate::Rational(r),
            None => Coordinate::Algebraic(y),
        };
    }
    Ok(out)
}

/// Transversality: the tangent lines at the two preimages differ,
/// `det(θ(a), θ'(a), θ'(b)) ≠ 0`.
fn check_transversal(pc: &[[Rational; 5]; 3], roots: &mut RootSet, a: Root, b: Root) -> Result<()> {
    for _ in 0..MAX_ROUNDS {
        let (va, da) = roots.param(a).jet(pc);
        let (_, db) = roots.param(b).jet(pc);
        let m = [&va, &da, &db];
        let det = box_det(m);
        if !det.contains_zero() {
            return Ok(());
        }
        if roots.param(a).is_exact() && roots.param(b).is_exact() {
            break;
        }
        for h in [a, b] {
            if matches!(h, Root::Real(_)) {
                roots.refine(h)?;
            }
        }
        if !matches!(a, Root::Real(_)) {
            if roots.complex.as_ref().map_or(0, |c| c.bits()) > MAX_COMPLEX_BITS {
                break;
            }
            roots.refine_complex()?;
        }
    }
    Err(Error::NotGeneric("branches at a node are tangent or singular".into()))
}

fn box_det(m: [&[CBox; 3]; 3]) -> CBox {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        m[r1][c1].mul(&m[r2][c2]).sub(&m[r1][c2].mul(&m[r2][c1]))
    };
    m[0][0]
        .mul(&minor(1, 2, 1, 2))
        .sub(&m[0][1].mul(&minor(1, 2, 0, 2)))
        .add(&m[0][2].mul(&minor(1, 2, 0, 1)))
}

fn check_not_collinear(nodes: &mut [Node]) -> Result<()> {
    for _ in 0..MAX_ROUNDS {
        let rows: Vec<[Interval; 3]> =
            nodes.iter().map(|n| std::array::from_fn(|k| n.position[k].interval())).collect();
        let m: [[CBox; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|k| CBox::real(rows[r][k].clone())));
        if !box_det([&m[0], &m[1], &m[2]]).contains_zero() {
            return Ok(());
        }
        if nodes.iter().all(|n| n.rational_position().is_some()) {
            break;
        }
        for n in nodes.iter_mut() {
            for c in n.position.iter_mut() {
                c.refine();
            }
        }
    }
    Err(Error::NotGeneric("node positions are collinear".into()))
}

/// Nodes together with the squarefree form whose roots are exactly the six
/// preimages.
#[derive(Clone, Debug)]
pub struct NodeAnalysis {
    pub nodes: Vec<Node>,
    pub preimage_form: BinaryForm,
}

/// The three nodes of a generic curve, crossings first.
pub fn find_nodes(c: &Curve) -> Result<Vec<Node>> {
    analyze_nodes(c).map(|a| a.nodes)
}

pub fn analyze_nodes(c: &Curve) -> Result<NodeAnalysis> {
    let g = minor_forms(c)?;
    let pc = chart_coeffs(c);
    let (m, chart) = elimination_form(&g)?;
    let mut roots = RootSet::new(m, chart)?;
    let pairs = pair_roots(&g, &mut roots)?;
    for &(a, b) in &pairs {
        match (a, b) {
            (Root::Real(_), Root::Real(_)) => {}
            (Root::Upper(k), Root::Lower(l)) | (Root::Lower(l), Root::Upper(k)) if k == l => {}
            (Root::Real(_), _) | (_, Root::Real(_)) => {
                return Err(Error::NotGeneric("a real point has a non-real partner".into()))
            }
            _ => return Err(Error::ImaginaryNodePresent),
        }
    }
    if pairs.len() != 3 {
        return Err(Error::NotGeneric(format!("found {} nodes instead of 3", pairs.len())));
    }
    let mut nodes = Vec::with_capacity(3);
    for &(a, b) in &pairs {
        check_transversal(&pc, &mut roots, a, b)?;
        nodes.push(build_node(c, &pc, &mut roots, a, b)?);
    }
    check_not_collinear(&mut nodes)?;
    nodes.sort_by(node_order);
    Ok(NodeAnalysis { nodes, preimage_form: roots.form })
}

fn build_node(c: &Curve, pc: &[[Rational; 5]; 3], roots: &mut RootSet, a: Root, b: Root) -> Result<Node> {
    let kind = if matches!(a, Root::Real(_)) { NodeKind::Crossing } else { NodeKind::Solitary };
    let infinite = match (a, b) {
        (Root::Real(i), Root::Real(j)) if roots.reals[j].is_infinity() => Some(i),
        (Root::Real(i), Root::Real(j)) if roots.reals[i].is_infinity() => Some(j),
        _ => None,
    };
    let (quadratic, position) = if let Some(k) = infinite {
        // θ([1:0]) is always rational, so the finite partner is rational too
        let z = normalize_rational(std::array::from_fn(|i| pc[i][4].clone()));
        let q = roots.reals[k].try_rational().map(|r| {
            BinaryForm::from_real(vec![rat(0), rat(1), -r])
        });
        (q, Some(z))
    } else {
        match exact_quadratic(roots, a, b)? {
            Some(q) => {
                let z = position_from_quadratic(pc, &q)?;
                for h in [a, b] {
                    if let Root::Real(k) = h {
                        roots.reals[k].try_rational();
                    }
                }
                (Some(BinaryForm::from_real_poly(&q, 2)), Some(z))
            }
            None => (None, None),
        }
    };
    let position = match position {
        Some(z) => z.map(Coordinate::Rational),
        None => algebraic_position(c, pc, roots, a)?,
    };
    let preimages = match (a, b) {
        (Root::Real(i), Root::Real(j)) => {
            let mut pair = [roots.reals[i].clone(), roots.reals[j].clone()];
            pair.sort();
            Preimages::Real(pair)
        }
        (Root::Upper(k), _) | (_, Root::Upper(k)) => {
            let exact = match &quadratic {
                Some(q) => conjugate_root_pair(q).ok().flatten().and_then(|(u, _)| u.chart_value()),
                None => None,
            };
            Preimages::Conjugate(ComplexPreimage {
                form: quadratic.clone().unwrap_or_else(|| roots.form.clone()),
                disk: roots.disk(k).clone(),
                exact,
            })
        }
        _ => unreachable!(),
    };
    Ok(Node { position, preimages, kind, quadratic })
}

fn node_order(x: &Node, y: &Node) -> Ordering {
    match (&x.preimages, &y.preimages) {
        (Preimages::Real(a), Preimages::Real(b)) => a[0].cmp(&b[0]),
        (Preimages::Real(_), _) => Ordering::Less,
        (_, Preimages::Real(_)) => Ordering::Greater,
        (Preimages::Conjugate(a), Preimages::Conjugate(b)) => {
            let key = |p: &ComplexPreimage| p.exact.clone().unwrap_or_else(|| p.disk.center.clone());
            let (ka, kb) = (key(a), key(b));
            ka.re.cmp(&kb.re).then(ka.im.cmp(&kb.im))
        }
    }
}

/// Monic form vanishing on the preimages of the real point `z`; constant iff `z`
/// is off the curve.
pub fn preimages_of_point(c: &Curve, z: &[Rational; 3]) -> BinaryForm {
    let mut acc = BinaryForm::zero();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let f = c
            .form(i)
            .scale(&GaussianRational::real(z[j].clone()))
            .sub(&c.form(j).scale(&GaussianRational::real(z[i].clone())));
        acc = form_gcd(&acc, &f);
    }
    acc
}

/// Exact check that the three node positions are not collinear.
pub fn positions_determinant(nodes: &[Node]) -> Option<Rational> {
    let rows: Vec<[Rational; 3]> = nodes.iter().map(|n| n.rational_position()).collect::<Option<_>>()?;
    let m: [[Rational; 3]; 3] = rows.try_into().ok()?;
    Some(mat3_det(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;
    use crate::realize::{realize_from_seed, NodeSeed};

    fn seed(pairs: [(i64, i64); 3]) -> NodeSeed {
        NodeSeed::new(pairs.map(|(a, b)| NodeSeed::real_pair(rat(a), rat(b)))).unwrap()
    }

    fn point_set(nodes: &[Node]) -> Vec<Vec<ProjPoint1>> {
        nodes.iter().map(|n| n.exact_preimages().unwrap().to_vec()).collect()
    }

    fn same_pairs(nodes: &[Node], seed: &NodeSeed) -> bool {
        let got = point_set(nodes);
        seed.pairs.iter().all(|[a, b]| {
            got.iter().any(|g| (g[0] == *a && g[1] == *b) || (g[0] == *b && g[1] == *a))
        }) && got.len() == 3
    }

    #[test]
    fn minors_are_symmetric_and_vanish_on_node_pairs() {
        let c = realize_from_seed(&seed([(0, 1), (2, 3), (4, 5)])).unwrap();
        let g = minor_forms(&c).unwrap();
        for m in &g {
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!(m.coeff(a, b), m.coeff(b, a));
                }
            }
            let x = ProjPoint1::real(rat(0));
            let y = ProjPoint1::real(rat(1));
            assert!(m.eval(&x, &y).is_zero());
            assert_eq!(m.specialize(&x).eval(&y), m.eval(&x, &y));
        }
    }

    #[test]
    fn realized_crossings_are_recovered() {
        let s = seed([(0, 1), (2, 3), (4, 5)]);
        let c = realize_from_seed(&s).unwrap();
        let nodes = find_nodes(&c).unwrap();
        assert!(same_pairs(&nodes, &s));
        let mut positions: Vec<[Rational; 3]> = nodes.iter().map(|n| n.rational_position().unwrap()).collect();
        positions.sort();
        let e = |k: usize| std::array::from_fn(|i| if i == k { rat(1) } else { rat(0) });
        let mut expected = vec![e(0), e(1), e(2)];
        expected.sort();
        assert_eq!(positions, expected);
    }

    #[test]
    fn solitary_and_infinite_preimages() {
        let s = NodeSeed::new([
            NodeSeed::conjugate_pair(rat(0), rat(1)),
            NodeSeed::real_pair(rat(0), rat(1)),
            [ProjPoint1::real(rat(2)), ProjPoint1::infinity()],
        ])
        .unwrap();
        let c = realize_from_seed(&s).unwrap();
        let nodes = find_nodes(&c).unwrap();
        assert!(same_pairs(&nodes, &s));
        let kinds: Vec<NodeKind> = nodes.iter().map(|n| n.kind).collect();
        assert_eq!(kinds, vec![NodeKind::Crossing, NodeKind::Crossing, NodeKind::Solitary]);
    }

    #[test]
    fn preimages_of_coordinate_point() {
        let s = seed([(0, 1), (2, 3), (4, 5)]);
        let c = realize_from_seed(&s).unwrap();
        let q = preimages_of_point(&c, &[rat(1), rat(0), rat(0)]);
        assert_eq!(q, s.quadratic(0).monic());
        // the line x2 = 0 meets the image only at the nodes z0 and z1
        let off = preimages_of_point(&c, &[rat(1), rat(-1), rat(0)]);
        assert!(off.is_constant());
        let smooth = c.eval(&ProjPoint1::real(ratio(1, 2))).map(|z| z.re);
        let lin = preimages_of_point(&c, &smooth);
        assert_eq!(lin, BinaryForm::from_real(vec![rat(1), ratio(-1, 2)]));
    }
}
