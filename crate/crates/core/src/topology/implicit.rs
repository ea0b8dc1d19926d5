//! Implicit equations of parametrized quartics and Bezout checks along lines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::encode::rational_vec;
use crate::exactmath::linalg::solve;
use crate::exactmath::{rat, sylvester_det, to_f64, BinaryForm, GaussianRational, Poly, Rational};
use crate::realize::Curve;

/// Exponent triples of the 15 quartic monomials, `x0^4` first and `x2^4` last.
pub fn monomials() -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(15);
    for a in (0..=4).rev() {
        for b in (0..=4 - a).rev() {
            out.push([a, b, 4 - a - b]);
        }
    }
    out
}

fn monomial_index(e: [usize; 3]) -> usize {
    monomials().iter().position(|m| *m == e).expect("quartic exponent")
}

/// A ternary quartic form, stored as a primitive integer vector (the overall
/// sign is kept).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicitQuartic {
    #[serde(with = "rational_vec")]
    coeffs: Vec<Rational>,
}

impl ImplicitQuartic {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != 15 {
            return Err(Error::InvalidCurve(format!("a quartic has 15 coefficients, got {}", coeffs.len())));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidCurve("the zero quartic".into()));
        }
        Ok(Self { coeffs: primitive(coeffs) })
    }

    /// `x0^4 + x1^4 + x2^4`, whose real zero set is empty.
    pub fn sum_of_fourth_powers() -> Self {
        let mut c = vec![Rational::zero(); 15];
        for e in [[4, 0, 0], [0, 4, 0], [0, 0, 4]] {
            c[monomial_index(e)] = rat(1);
        }
        Self { coeffs: c }
    }

    /// `(l0·x0 + l1·x1 + l2·x2)^4`.
    pub fn linear_fourth_power(l: &[Rational; 3]) -> Self {
        let mut c = vec![Rational::zero(); 15];
        for (k, e) in monomials().into_iter().enumerate() {
            let multinomial = rat(24) / rat(factorial(e[0]) * factorial(e[1]) * factorial(e[2]));
            c[k] = multinomial * pow(&l[0], e[0]) * pow(&l[1], e[1]) * pow(&l[2], e[2]);
        }
        Self { coeffs: c }
    }

    /// Product of two ternary quadratic forms given on the monomials
    /// `x0², x0x1, x0x2, x1², x1x2, x2²`.
    pub fn product_of_quadrics(a: &[Rational; 6], b: &[Rational; 6]) -> Result<Self> {
        let quad = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
        let mut c = vec![Rational::zero(); 15];
        for (i, ea) in quad.iter().enumerate() {
            for (j, eb) in quad.iter().enumerate() {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                c[monomial_index(e)] += &a[i] * &b[j];
            }
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [usize; 3]) -> &Rational {
        &self.coeffs[monomial_index(e)]
    }

    pub fn eval(&self, x: &[Rational; 3]) -> Rational {
        monomials()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| c * pow(&x[0], e[0]) * pow(&x[1], e[1]) * pow(&x[2], e[2]))
            .sum()
    }

    pub fn gradient(&self, x: &[Rational; 3]) -> [Rational; 3] {
        let mut g = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (e, c) in monomials().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            for (k, gk) in g.iter_mut().enumerate() {
                if e[k] == 0 {
                    continue;
                }
                let mut d = *e;
                d[k] -= 1;
                *gk += c * rat(e[k] as i64) * pow(&x[0], d[0]) * pow(&x[1], d[1]) * pow(&x[2], d[2]);
            }
        }
        g
    }

    /// `F(p0, p1, p2)` for three binary forms of a common degree `d`; the
    /// result has formal degree `4d`.
    pub fn compose(&self, p: &[Vec<Rational>; 3]) -> Vec<Rational> {
        let powers: Vec<Vec<Vec<Rational>>> = p
            .iter()
            .map(|f| {
                let mut pw = vec![vec![rat(1)]];
                for k in 1..=4 {
                    pw.push(coeff_mul(&pw[k - 1], f));
                }
                pw
            })
            .collect();
        let d = p[0].len() - 1;
        let mut out = vec![Rational::zero(); 4 * d + 1];
        for (e, c) in monomials().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let term = coeff_mul(&coeff_mul(&powers[0][e[0]], &powers[1][e[1]]), &powers[2][e[2]]);
            for (o, t) in out.iter_mut().zip(term) {
                *o += c * t;
            }
        }
        out
    }

    /// `F(θ(s,t))` as a degree-16 binary form.
    pub fn compose_curve(&self, c: &Curve) -> BinaryForm {
        BinaryForm::from_real(self.compose(&curve_coeffs(c)))
    }

    /// `F(a·s + b·t)`: the restriction to the line through `a` and `b`.
    pub fn restrict(&self, a: &[Rational; 3], b: &[Rational; 3]) -> BinaryForm {
        let p = [0, 1, 2].map(|k| vec![a[k].clone(), b[k].clone()]);
        BinaryForm::from_real(self.compose(&p))
    }

    /// `self + k·other`, renormalized.
    pub fn add_scaled(&self, k: &Rational, other: &Self) -> Result<Self> {
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + k * b).collect())
    }

    /// Coefficients divided by the largest magnitude, so the form has unit
    /// max-coefficient norm.
    pub fn unit_scaled(&self) -> Vec<Rational> {
        let m = self.coeffs.iter().map(|c| c.abs()).max().expect("15 coefficients");
        self.coeffs.iter().map(|c| c / &m).collect()
    }

    pub fn to_f64(&self) -> QuarticF64 {
        QuarticF64::new(&self.unit_scaled())
    }
}

/// Floating-point copy of a quartic used by the raster layer.
#[derive(Clone, Debug)]
pub struct QuarticF64 {
    c: [f64; 15],
    exps: Vec<[usize; 3]>,
}

impl QuarticF64 {
    pub fn new(coeffs: &[Rational]) -> Self {
        let mut c = [0.0; 15];
        for (k, v) in coeffs.iter().enumerate() {
            c[k] = to_f64(v);
        }
        Self { c, exps: monomials() }
    }

    pub fn eval(&self, x: [f64; 3]) -> f64 {
        let pw = |v: f64| [1.0, v, v * v, v * v * v, v * v * v * v];
        let (a, b, c) = (pw(x[0]), pw(x[1]), pw(x[2]));
        self.exps.iter().zip(&self.c).map(|(e, k)| k * a[e[0]] * b[e[1]] * c[e[2]]).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = ([usize; 3], f64)> + '_ {
        self.exps.iter().copied().zip(self.c.iter().copied())
    }
}

/// Implicit equation of a generic curve, with its first nonzero coefficient positive.
///
/// The resultant `Res_{s,t}(x1·p0 − x0·p1, x2·p0 − x0·p2)` is a form of degree
/// 8 equal to `x0^4·F` up to a constant: at `x0 = 0` both forms share the four
/// roots of `p0`, and `x0` does not vanish at image points off the line
/// `x0 = 0`. The resultant is interpolated on the chart `x0 = 1` from its
/// values on the triangular lattice of degree 8, so dividing out `x0^4` means
/// checking that every term of degree above 4 vanishes.
pub fn implicitize(c: &Curve) -> Result<ImplicitQuartic> {
    let p = curve_coeffs(c);
    let lattice: Vec<(i64, i64)> = (0..=8).flat_map(|u| (0..=8 - u).map(move |v| (u, v))).collect();
    let mut rows = Vec::with_capacity(lattice.len());
    let mut values = Vec::with_capacity(lattice.len());
    for &(u, v) in &lattice {
        let (x1, x2) = (rat(u), rat(v));
        let f: Vec<Rational> = (0..5).map(|k| &x1 * &p[0][k] - &p[1][k]).collect();
        let g: Vec<Rational> = (0..5).map(|k| &x2 * &p[0][k] - &p[2][k]).collect();
        values.push(sylvester_det(&f, &g));
        rows.push(lattice.iter().map(|&(a, b)| pow(&x1, a as usize) * pow(&x2, b as usize)).collect::<Vec<_>>());
    }
    let sol = solve(&rows, &values)
        .ok_or_else(|| Error::ImplicitizationFailure("interpolation lattice is singular".into()))?;
    let mut coeffs = vec![Rational::zero(); 15];
    for (&(a, b), v) in lattice.iter().zip(&sol) {
        let (a, b) = (a as usize, b as usize);
        if a + b > 4 {
            if !v.is_zero() {
                return Err(Error::ImplicitizationFailure(
                    "resultant does not split off x0^4 times a quartic".into(),
                ));
            }
            continue;
        }
        coeffs[monomial_index([4 - a - b, a, b])] = v.clone();
    }
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::ImplicitizationFailure("resultant vanishes identically".into()));
    }
    if coeffs.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        coeffs.iter_mut().for_each(|v| *v = -v.clone());
    }
    let f = ImplicitQuartic::new(coeffs)?;
    if f.compose(&p).iter().any(|v| !v.is_zero()) {
        return Err(Error::ImplicitizationFailure("quartic does not vanish on the parametrization".into()));
    }
    if !has_reduced_restriction(&f) {
        return Err(Error::ImplicitizationFailure("quartic has a repeated factor".into()));
    }
    Ok(f)
}

/// A reduced quartic has squarefree restriction to a generic line; a square
/// of a conic restricts to a square on every line.
fn has_reduced_restriction(f: &ImplicitQuartic) -> bool {
    let lines: [([i64; 3], [i64; 3]); 4] =
        [([1, 2, 3], [3, -1, 2]), ([2, -3, 1], [1, 1, -4]), ([5, 1, -2], [-1, 4, 3]), ([1, 7, 2], [6, -5, 1])];
    lines.iter().any(|(a, b)| {
        let r = f.restrict(&a.map(rat), &b.map(rat));
        !r.is_zero() && r.is_squarefree()
    })
}

/// Multiplicities of the roots of `line∘θ`, largest first; they total 4.
pub fn line_multiplicities(c: &Curve, line: &[Rational; 3]) -> Result<Vec<usize>> {
    let p = curve_coeffs(c);
    let form: Vec<Rational> = (0..5).map(|k| (0..3).map(|i| &line[i] * &p[i][k]).sum()).collect();
    let form = BinaryForm::from_real(form);
    if form.is_zero() {
        return Err(Error::InvalidCurve("the line contains the curve".into()));
    }
    let (at_infinity, poly) = form.real_poly();
    let mut out = root_multiplicities(&poly);
    if at_infinity > 0 {
        out.push(at_infinity);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Multiplicities of the distinct complex roots (Yun's squarefree decomposition).
fn root_multiplicities(p: &Poly<Rational>) -> Vec<usize> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a = p.gcd(&dp);
    let mut b = p.exact_div(&a).expect("gcd divides");
    let mut cc = dp.exact_div(&a).expect("gcd divides");
    let mut d = cc.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let g = b.gcd(&d);
        for _ in 0..g.degree().unwrap_or(0) {
            out.push(i);
        }
        b = b.exact_div(&g).expect("gcd divides");
        cc = d.exact_div(&g).expect("gcd divides");
        d = cc.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Coefficient vectors of the three coordinates, padded to length 5.
pub(crate) fn curve_coeffs(c: &Curve) -> [Vec<Rational>; 3] {
    [0, 1, 2].map(|i| {
        let f = c.form(i);
        if f.is_zero() {
            vec![Rational::zero(); 5]
        } else {
            f.coeffs().iter().map(|g: &GaussianRational| g.re.clone()).collect()
        }
    })
}

fn coeff_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pow(x: &Rational, e: usize) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e {
        r *= x;
    }
    r
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn primitive(coeffs: Vec<Rational>) -> Vec<Rational> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.into_iter().map(|v| Rational::from(v / &g)).collect()
}
