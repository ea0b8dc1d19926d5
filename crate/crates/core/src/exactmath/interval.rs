//! Closed rational intervals and complex boxes with outward-exact arithmetic.

use num_traits::{One, Signed, Zero};

use super::{GaussianRational, Poly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / super::rat(2)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.mul(&Self::point(k.clone()))
    }

    /// Reciprocal, `None` if the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(Self::new(super::rat(1) / &self.hi, super::rat(1) / &self.lo))
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn abs_max(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn eval_poly(p: &Poly<Rational>, x: &Interval) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(x).add(&Interval::point(c.clone()));
        }
        acc
    }
}

/// Axis-aligned complex box `re × im`.
#[derive(Clone, Debug, PartialEq)]
pub struct CBox {
    pub re: Interval,
    pub im: Interval,
}

impl CBox {
    pub fn point(z: &GaussianRational) -> Self {
        Self { re: Interval::point(z.re.clone()), im: Interval::point(z.im.clone()) }
    }

    pub fn real(x: Interval) -> Self {
        Self { re: x, im: Interval::point(Rational::zero()) }
    }

    pub fn around(z: &GaussianRational, radius: &Rational) -> Self {
        Self {
            re: Interval::new(&z.re - radius, &z.re + radius),
            im: Interval::new(&z.im - radius, &z.im + radius),
        }
    }

    pub fn zero() -> Self {
        Self::real(Interval::point(Rational::zero()))
    }

    pub fn one() -> Self {
        Self::real(Interval::point(Rational::one()))
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { re: self.re.scale(k), im: self.im.scale(k) }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self) -> Interval {
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        Interval::new(n.lo.max(Rational::zero()), n.hi)
    }

    pub fn eval_poly(p: &Poly<Rational>, z: &CBox) -> CBox {
        let mut acc = Self::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(z).add(&Self::real(Interval::point(c.clone())));
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.neg() }
    }

    /// Enclosure of `1/z`, `None` when the box may contain zero.
    pub fn recip(&self) -> Option<Self> {
        let inv = self.norm_sqr().recip()?;
        Some(Self { re: self.re.mul(&inv), im: self.im.neg().mul(&inv) })
    }
}
