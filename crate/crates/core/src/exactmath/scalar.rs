use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number. Always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Exact field operations shared by [`Rational`] and
/// [`GaussianRational`](super::GaussianRational).
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rational(r: Rational) -> Self;
}

impl Field for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Lossy conversion used only for plotting and raster sampling.
pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Very large or very small magnitudes: scale through the bit lengths.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 0 {
        r / Rational::from_integer(BigInt::one() << (shift as usize))
    } else {
        r * Rational::from_integer(BigInt::one() << ((-shift) as usize))
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift.clamp(-2000, 2000) as i32)
}

/// Exact conversion of a finite float.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Rational with denominator `2^bits` nearest to `x`.
pub fn dyadic(x: f64, bits: u32) -> Rational {
    let scale = 2f64.powi(bits as i32);
    let n = (x * scale).round();
    Rational::new(
        BigInt::from(n as i128),
        BigInt::one() << (bits as usize),
    )
}

/// A rational upper bound for `sqrt(x)`, `x ≥ 0`, tight to a relative factor of about 2^-40.
pub fn sqrt_upper(x: &Rational) -> Rational {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if x.is_zero() {
        return Rational::zero();
    }
    // Scale by an even power of two into float range.
    let shift = (x.numer().bits() as i64 - x.denom().bits() as i64) / 2;
    let pow = Rational::from_integer(BigInt::one() << (shift.unsigned_abs() as usize));
    let scaled = if shift >= 0 { x / (&pow * &pow) } else { x * &pow * &pow };
    let approx = scaled.to_f64().unwrap_or(1.0).sqrt() * (1.0 + 1e-12);
    let mut guess = from_f64(approx);
    while &guess * &guess < scaled {
        guess *= ratio(1025, 1024);
    }
    if shift >= 0 {
        guess * pow
    } else {
        guess / pow
    }
}

/// Simplest rational (smallest denominator) strictly inside the open interval `(lo, hi)`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !hi.is_positive() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    let next = &fl + Rational::one();
    if &next < hi {
        return next;
    }
    if &fl == lo {
        let y = (Rational::one() / (hi - &fl)).floor() + Rational::one();
        return fl + Rational::one() / y;
    }
    let inner = simplest_between(
        &(Rational::one() / (hi - &fl)),
        &(Rational::one() / (lo - &fl)),
    );
    fl + Rational::one() / inner
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_upper_is_an_upper_bound() {
        for n in [1i64, 2, 3, 10, 1_000_003] {
            let x = ratio(n, 7);
            let r = sqrt_upper(&x);
            assert!(&r * &r >= x);
            assert!(to_f64(&r) < (n as f64 / 7.0).sqrt() * 1.001);
        }
        let tiny = Rational::new(BigInt::one(), BigInt::one() << 3000usize);
        let r = sqrt_upper(&tiny);
        assert!(&r * &r >= tiny);
    }

    #[test]
    fn simplest_between_examples() {
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(1, 2)), ratio(2, 5));
        assert_eq!(simplest_between(&ratio(-1, 2), &ratio(1, 2)), rat(0));
        assert_eq!(simplest_between(&ratio(3, 2), &ratio(7, 2)), rat(2));
        assert_eq!(simplest_between(&ratio(-7, 2), &ratio(-3, 2)), rat(-2));
        let a = simplest_between(&ratio(1414, 1000), &ratio(1415, 1000));
        assert!(a > ratio(1414, 1000) && a < ratio(1415, 1000));
        assert_eq!(simplest_between(&rat(1), &ratio(3, 2)), ratio(4, 3));
    }
}
