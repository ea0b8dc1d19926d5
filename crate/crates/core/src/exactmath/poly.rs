//! Dense univariate polynomials over an exact field, coefficients in ascending order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: T) -> Self {
        Self::new(vec![-r, T::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * &T::from_rational(super::rat(k as i64)))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
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
        let mut acc = Self::constant(T::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = T::one() / d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = rem[idx].clone() - &(c.clone() * dc);
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Newton interpolation through `(xs[k], ys[k])`, all `xs` distinct.
    pub fn interpolate(xs: &[T], ys: &[T]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut div = ys.to_vec();
        for level in 1..n {
            for k in (level..n).rev() {
                let num = div[k].clone() - &div[k - 1];
                let den = xs[k].clone() - &xs[k - level];
                div[k] = num / den;
            }
        }
        let mut acc = Self::constant(div[n - 1].clone());
        for k in (0..n - 1).rev() {
            acc = acc.mul(&Self::linear_root(xs[k].clone()));
            acc = acc.add(&Self::constant(div[k].clone()));
        }
        acc
    }
}

impl Poly<Rational> {
    /// Interpolation through integer values at the consecutive points
    /// `x0, x0+1, …`, using integer forward differences.
    pub fn interpolate_consecutive(x0: i64, ys: &[BigInt]) -> Self {
        let n = ys.len();
        let mut diffs = Vec::with_capacity(n);
        let mut row = ys.to_vec();
        for _ in 0..n {
            diffs.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        // Σ_k Δ^k y0 / k! · (x − x0)(x − x0 − 1)…(x − x0 − k + 1), scaled by (n−1)!
        let fact = |k: usize| (1..=k).fold(BigInt::one(), |acc, j| acc * j);
        let total = fact(n.saturating_sub(1));
        let mut acc = vec![BigInt::zero(); n];
        let mut falling = vec![BigInt::one()];
        for (k, d) in diffs.iter().enumerate() {
            if !d.is_zero() {
                let w = d * (&total / fact(k));
                for (i, c) in falling.iter().enumerate() {
                    acc[i] += &w * c;
                }
            }
            // falling *= (x − x0 − k)
            let shift = BigInt::from(x0 + k as i64);
            let mut next = vec![BigInt::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
        }
        let total = Rational::from_integer(total);
        Self::new(acc.into_iter().map(|c| Rational::from_integer(c) / &total).collect())
    }

    /// Monic gcd through the primitive integer remainder sequence, which avoids
    /// the coefficient growth of Euclid's algorithm over the rationals.
    pub fn gcd_primitive(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let mut a = integer_coeffs(self);
        let mut b = integer_coeffs(o);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while b.len() > 1 {
            let r = primitive(pseudo_remainder(a, &b));
            a = b;
            b = r;
        }
        if b.is_empty() {
            Self::new(a.into_iter().map(Rational::from_integer).collect()).monic()
        } else {
            Self::constant(Rational::one())
        }
    }

    /// Squarefree part computed with [`Poly::gcd_primitive`].
    pub fn squarefree_primitive(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd_primitive(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Number of sign changes used by Sturm counting; zero values are skipped.
    pub fn sign_at(&self, x: &Rational) -> std::cmp::Ordering {
        use num_traits::Signed;
        let v = self.eval(x);
        if v.is_zero() {
            std::cmp::Ordering::Equal
        } else if v.is_positive() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Less
        }
    }

    /// Scale to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        use num_integer::Integer;
        use num_traits::Signed;
        if self.is_zero() {
            return Self::zero();
        }
        let mut l = num_bigint::BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<num_bigint::BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let mut g = num_bigint::BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        let sign = if ints.last().unwrap().is_negative() { -num_bigint::BigInt::one() } else { num_bigint::BigInt::one() };
        Self::new(ints.into_iter().map(|c| Rational::from_integer(&c / &g * &sign)).collect())
    }
}

fn integer_coeffs(p: &Poly<Rational>) -> Vec<BigInt> {
    p.primitive_integer().coeffs.iter().map(|c| c.to_integer()).collect()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut v {
            *c /= &g;
        }
    }
    v
}

/// Remainder of `lc(b)^k · a` by `b`, coefficients ascending, both nonzero.
fn pseudo_remainder(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().unwrap().clone();
    while a.len() >= b.len() {
        let la = a.last().unwrap().clone();
        let shift = a.len() - b.len();
        for c in a.iter_mut() {
            *c *= &lb;
        }
        for (i, c) in b.iter().enumerate() {
            a[i + shift] -= &la * c;
        }
        a.pop();
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a = primitive(a);
    }
    a
}
