use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::encode::{parse_rational, rational_to_string};
use super::linalg::det;
use super::{GaussianRational, Poly, Rational};

type G = GaussianRational;

/// Point `[a:b]` of the complex projective line.
#[derive(Clone)]
pub struct ProjPoint1 {
    pub a: G,
    pub b: G,
}

impl ProjPoint1 {
    pub fn new(a: G, b: G) -> Self {
        assert!(!(a.is_zero() && b.is_zero()), "[0:0] is not a projective point");
        Self { a, b }
    }

    /// `[x:1]` in the affine chart `x = s/t`.
    pub fn chart(x: G) -> Self {
        Self { a: x, b: G::one() }
    }

    pub fn real(x: Rational) -> Self {
        Self::chart(G::real(x))
    }

    pub fn infinity() -> Self {
        Self { a: G::one(), b: G::zero() }
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    /// Chart value `a/b`, `None` at `[1:0]`.
    pub fn chart_value(&self) -> Option<G> {
        (!self.b.is_zero()).then(|| self.a.clone() / self.b.clone())
    }

    pub fn conj(&self) -> Self {
        Self { a: self.a.conj(), b: self.b.conj() }
    }

    pub fn is_real(&self) -> bool {
        // real up to scale: a·conj(b) is real
        (self.a.clone() * self.b.conj()).im.is_zero()
    }

    /// Representative with `b = 1` (or `[1:0]`).
    pub fn normalized(&self) -> Self {
        match self.chart_value() {
            Some(x) => Self::chart(x),
            None => Self::infinity(),
        }
    }
}

impl PartialEq for ProjPoint1 {
    fn eq(&self, o: &Self) -> bool {
        self.a.clone() * &o.b == self.b.clone() * &o.a
    }
}

impl Eq for ProjPoint1 {}

impl fmt::Debug for ProjPoint1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}

/// Coordinate encoding: a real value as a `"num/den"` string, otherwise `{"re","im"}`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoordRepr {
    Real(String),
    Complex(G),
}

impl CoordRepr {
    fn from_g(g: &G) -> Self {
        if g.is_real() {
            CoordRepr::Real(rational_to_string(&g.re))
        } else {
            CoordRepr::Complex(g.clone())
        }
    }

    fn into_g(self) -> Result<G, String> {
        match self {
            CoordRepr::Real(s) => parse_rational(&s).map(G::real).ok_or(format!("bad rational {s:?}")),
            CoordRepr::Complex(g) => Ok(g),
        }
    }
}

impl Serialize for ProjPoint1 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [CoordRepr::from_g(&self.a), CoordRepr::from_g(&self.b)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjPoint1 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let [a, b] = <[CoordRepr; 2]>::deserialize(d)?;
        let a = a.into_g().map_err(D::Error::custom)?;
        let b = b.into_g().map_err(D::Error::custom)?;
        if a.is_zero() && b.is_zero() {
            return Err(D::Error::custom("[0:0] is not a projective point"));
        }
        Ok(ProjPoint1 { a, b })
    }
}

/// Homogeneous polynomial in `(s, t)`; `coeffs[k]` multiplies `s^(d-k) t^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<G>,
}

impl BinaryForm {
    /// Build a form; an all-zero coefficient list collapses to the zero form.
    pub fn new(coeffs: Vec<G>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        if coeffs.iter().all(|c| c.is_zero()) {
            return Self::zero();
        }
        Self { degree: coeffs.len() - 1, coeffs }
    }

    pub fn from_real(coeffs: Vec<Rational>) -> Self {
        Self::new(coeffs.into_iter().map(G::real).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_real(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    /// The designated zero form.
    pub fn zero() -> Self {
        Self { degree: 0, coeffs: vec![G::zero()] }
    }

    pub fn constant(c: G) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(G::one())
    }

    /// `b·s − a·t`, vanishing exactly at `[a:b]`.
    pub fn linear_with_root(p: &ProjPoint1) -> Self {
        Self::new(vec![p.b.clone(), -p.a.clone()])
    }

    pub fn s() -> Self {
        Self::from_ints(&[1, 0])
    }

    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[G] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &G {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    /// Reality flag: every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    pub fn conj(&self) -> Self {
        Self { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    pub fn real_coeffs(&self) -> Vec<Rational> {
        assert!(self.is_real(), "form is not real");
        self.coeffs.iter().map(|c| c.re.clone()).collect()
    }

    pub fn eval(&self, p: &ProjPoint1) -> G {
        self.eval_st(&p.a, &p.b)
    }

    pub fn eval_st(&self, s: &G, t: &G) -> G {
        // Horner in s with t-powers accumulated.
        let mut acc = G::zero();
        let mut tp = G::one();
        let mut terms = vec![G::zero(); self.degree + 1];
        for k in 0..=self.degree {
            terms[k] = tp.clone();
            tp = tp * t;
        }
        for k in 0..=self.degree {
            acc = acc * s + &(self.coeffs[k].clone() * &terms[k]);
        }
        acc
    }

    pub fn scale(&self, k: &G) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![G::zero(); self.degree + o.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Sum of two forms of equal degree (the zero form is compatible with any degree).
    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        Self::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-G::one()))
    }

    /// Leading-coefficient normalization: the first nonzero coefficient becomes 1.
    pub fn monic(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => Self::zero(),
            Some(c) => self.scale(&(G::one() / c.clone())),
        }
    }

    /// Multiplicity of the root `[1:0]` (power of `t` dividing the form).
    pub fn infinity_multiplicity(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `(m, f(x, 1))` with `f = t^m · homogenize(f(x,1))`.
    pub fn dehomogenize(&self) -> (usize, Poly<G>) {
        let m = self.infinity_multiplicity();
        let poly = Poly::new((0..=self.degree).map(|j| self.coeffs[self.degree - j].clone()).collect());
        (m, poly)
    }

    pub fn homogenize(p: &Poly<G>, degree: usize) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        assert!(p.degree().unwrap() <= degree);
        Self::new((0..=degree).map(|k| p.coeff(degree - k)).collect())
    }

    /// Real dehomogenized polynomial, for real-flagged forms.
    pub fn real_poly(&self) -> (usize, Poly<Rational>) {
        let (m, p) = self.dehomogenize();
        assert!(self.is_real(), "form is not real");
        (m, Poly::new(p.coeffs().iter().map(|c| c.re.clone()).collect()))
    }

    pub fn from_real_poly(p: &Poly<Rational>, degree: usize) -> Self {
        Self::homogenize(&Poly::new(p.coeffs().iter().cloned().map(G::real).collect()), degree)
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero form");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.degree > self.degree {
            return None;
        }
        let (ma, pa) = self.dehomogenize();
        let (md, pd) = d.dehomogenize();
        if md > ma {
            return None;
        }
        let q = pa.exact_div(&pd)?;
        Some(Self::homogenize(&q, self.degree - d.degree))
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.exact_div(self).is_some()
    }

    /// Partial derivatives `(∂/∂s, ∂/∂t)`.
    pub fn partials(&self) -> (Self, Self) {
        let d = self.degree;
        if d == 0 {
            return (Self::zero(), Self::zero());
        }
        let ds = (0..d)
            .map(|k| self.coeffs[k].clone() * G::from((d - k) as i64))
            .collect();
        let dt = (1..=d).map(|k| self.coeffs[k].clone() * G::from(k as i64)).collect();
        (Self::new(ds), Self::new(dt))
    }

    /// Substitution `f(a·s + b·t, c·s + d·t)`.
    pub fn substitute(&self, m: &[[G; 2]; 2]) -> Self {
        let ls = Self::new(vec![m[0][0].clone(), m[0][1].clone()]);
        let lt = Self::new(vec![m[1][0].clone(), m[1][1].clone()]);
        let mut acc = Self::zero();
        let d = self.degree;
        for k in 0..=d {
            if self.coeffs[k].is_zero() {
                continue;
            }
            let term = ls.pow(d - k).mul(&lt.pow(k)).scale(&self.coeffs[k]);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && squarefree_part(self).degree() == self.degree
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if d - k > 0 {
                write!(f, "·s^{}", d - k)?;
            }
            if k > 0 {
                write!(f, "·t^{k}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    degree: usize,
    coeffs: Vec<CoordRepr>,
}

impl Serialize for BinaryForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormRepr { degree: self.degree, coeffs: self.coeffs.iter().map(CoordRepr::from_g).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = FormRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.degree + 1 {
            return Err(D::Error::custom(format!(
                "degree {} form needs {} coefficients, got {}",
                repr.degree,
                repr.degree + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs: Vec<G> =
            repr.coeffs.into_iter().map(|c| c.into_g()).collect::<Result<_, _>>().map_err(D::Error::custom)?;
        if coeffs.iter().all(|c| c.is_zero()) {
            return Ok(BinaryForm::zero());
        }
        Ok(BinaryForm { degree: repr.degree, coeffs })
    }
}

/// Value of `f` at the representative `(a, b)` of `p`.
pub fn form_eval(f: &BinaryForm, p: &ProjPoint1) -> G {
    f.eval(p)
}

/// Monic greatest common divisor over the Gaussian rationals.
pub fn form_gcd(f: &BinaryForm, g: &BinaryForm) -> BinaryForm {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let (mf, pf) = f.dehomogenize();
    let (mg, pg) = g.dehomogenize();
    let m = mf.min(mg);
    let p = pf.gcd(&pg);
    let mut out = BinaryForm::homogenize(&p, p.degree().unwrap_or(0));
    if m > 0 {
        out = out.mul(&BinaryForm::t().pow(m));
    }
    out.monic()
}

/// Sylvester determinant, rows of `f` first.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> G {
    sylvester_det(f.coeffs(), g.coeffs())
}

/// Sylvester determinant of two coefficient lists (highest power of `s` first),
/// generic over the coefficient field so real pipelines avoid complex arithmetic.
pub fn sylvester_det<T: super::Field>(f: &[T], g: &[T]) -> T {
    if f.len() + g.len() == 2 {
        return T::one();
    }
    det(sylvester_matrix(f, g))
}

/// Sylvester matrix of two coefficient lists (highest power first), rows of `f` first.
pub fn sylvester_matrix<T: Clone + Zero>(f: &[T], g: &[T]) -> Vec<Vec<T>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![T::zero(); size];
        for (k, c) in f.iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![T::zero(); size];
        for (k, c) in g.iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Product of the distinct irreducible factors of `f`.
pub fn squarefree_part(f: &BinaryForm) -> BinaryForm {
    assert!(!f.is_zero(), "squarefree part of the zero form");
    let (m, p) = f.dehomogenize();
    let sq = if p.degree().unwrap_or(0) == 0 { Poly::constant(G::one()) } else { p.squarefree() };
    let d = sq.degree().unwrap_or(0);
    let mut out = BinaryForm::homogenize(&sq, d);
    if m > 0 {
        out = out.mul(&BinaryForm::t());
    }
    out.monic()
}

/// Conjugate roots of a real quadratic form with negative discriminant, when they
/// are Gaussian-rational. The first root has positive imaginary part.
pub fn conjugate_root_pair(
    f: &BinaryForm,
) -> Result<Option<(ProjPoint1, ProjPoint1)>, super::ExactMathError> {
    if f.degree() != 2 || !f.is_real() {
        return Err(super::ExactMathError::NotRealQuadratic);
    }
    let c = f.real_coeffs();
    let (a, b, cc) = (&c[0], &c[1], &c[2]);
    let disc = b * b - Rational::from_integer(4.into()) * a * cc;
    if !disc.is_negative() {
        return Ok(None);
    }
    // roots of a x^2 + b x + c with x = s/t
    let root = exact_sqrt(&-disc).ok_or(super::ExactMathError::NotRepresentable)?;
    let two_a = a * Rational::from_integer(2.into());
    let re = -b / &two_a;
    let im = (root / &two_a).abs();
    Ok(Some((
        ProjPoint1::chart(G::new(re.clone(), im.clone())),
        ProjPoint1::chart(G::new(re, -im)),
    )))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// Product of linear forms vanishing at the given points.
pub fn form_from_roots(points: &[ProjPoint1]) -> BinaryForm {
    points.iter().fold(BinaryForm::one(), |acc, p| acc.mul(&BinaryForm::linear_with_root(p)))
}

