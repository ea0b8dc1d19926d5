//! Real root isolation on the real projective line with Sturm sequences, and
//! real algebraic numbers given by a defining form plus an isolating interval.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::encode::rational_to_string;
use super::interval::Interval;
use super::{rat, BinaryForm, ExactMathError, Poly, ProjPoint1, Rational};

/// Sturm chain of a squarefree real polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly<Rational>>,
}

impl SturmChain {
    pub fn new(p: &Poly<Rational>) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // positive scaling keeps the sign pattern
            let k = rat(-1) / r.leading().unwrap().abs();
            chain.push(r.scale(&k));
        }
        Self { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if let Some(l) = last {
                if l != pos {
                    count += 1;
                }
            }
            last = Some(pos);
        }
        count
    }

    /// Number of distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Strict upper bound on the absolute value of every complex root (Cauchy).
pub fn root_bound(p: &Poly<Rational>) -> Rational {
    let n = p.degree().expect("nonzero polynomial");
    let lc = p.coeff(n).abs();
    let m = (0..n).map(|k| p.coeff(k).abs() / &lc).max().unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// Location of a real root on the projective line.
#[derive(Clone, Debug, PartialEq)]
pub enum RootLocation {
    /// Open interval `(lo, hi)` in the chart `x = s/t`.
    Chart { lo: Rational, hi: Rational },
    /// The point `[1:0]`.
    Infinity,
}

/// A real point of the projective line defined by a squarefree integer form.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    form: BinaryForm,
    poly: Poly<Rational>,
    location: RootLocation,
    exact: Option<Rational>,
}

impl AlgebraicReal {
    pub fn from_rational(r: Rational) -> Self {
        let poly = Poly::new(vec![-r.clone(), Rational::one()]).primitive_integer();
        let form = BinaryForm::from_real_poly(&poly, 1);
        let location = RootLocation::Chart { lo: &r - Rational::one(), hi: &r + Rational::one() };
        Self { form, poly, location, exact: Some(r) }
    }

    /// Root of the real squarefree form `form` known to be the only root in
    /// `(lo, hi)`, optionally with its exact rational value. The enclosure is
    /// checked: an exact value must be a root inside the interval, otherwise the
    /// polynomial must change sign strictly across the interval.
    pub fn isolated(form: &BinaryForm, lo: Rational, hi: Rational, exact: Option<Rational>) -> Option<Self> {
        let (_, p) = form.real_poly();
        let poly = p.primitive_integer();
        let ok = match &exact {
            Some(r) => poly.eval(r).is_zero() && lo < *r && *r < hi,
            None => {
                let (a, b) = (poly.sign_at(&lo), poly.sign_at(&hi));
                a != Ordering::Equal && b != Ordering::Equal && a != b
            }
        };
        ok.then(|| Self {
            form: BinaryForm::from_real_poly(&poly, form.degree()),
            poly,
            location: RootLocation::Chart { lo, hi },
            exact,
        })
    }

    /// The root `[1:0]` of a form divisible by `t`.
    pub fn infinity_of(form: &BinaryForm) -> Option<Self> {
        let (m, p) = form.real_poly();
        (m > 0).then(|| Self {
            form: form.clone(),
            poly: p.primitive_integer(),
            location: RootLocation::Infinity,
            exact: None,
        })
    }

    pub fn infinity() -> Self {
        Self {
            form: BinaryForm::t(),
            poly: Poly::constant(Rational::one()),
            location: RootLocation::Infinity,
            exact: None,
        }
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    /// Dehomogenized defining polynomial (roots in the chart).
    pub fn poly(&self) -> &Poly<Rational> {
        &self.poly
    }

    pub fn location(&self) -> &RootLocation {
        &self.location
    }

    pub fn is_infinity(&self) -> bool {
        self.location == RootLocation::Infinity
    }

    /// The exact value when it is known to be rational.
    pub fn exact(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn interval(&self) -> Option<Interval> {
        match &self.location {
            RootLocation::Chart { lo, hi } => match &self.exact {
                Some(r) => Some(Interval::point(r.clone())),
                None => Some(Interval::new(lo.clone(), hi.clone())),
            },
            RootLocation::Infinity => None,
        }
    }

    /// One bisection step.
    pub fn refine(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let RootLocation::Chart { lo, hi } = &mut self.location else {
            return;
        };
        let mid = (&*lo + &*hi) / rat(2);
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == Ordering::Equal {
            self.exact = Some(mid.clone());
            let w = (&*hi - &*lo) / rat(4);
            *lo = &mid - &w;
            *hi = &mid + &w;
            return;
        }
        if self.poly.sign_at(lo) == s_mid {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }

    pub fn refine_to_width(&mut self, width: &Rational) {
        while let RootLocation::Chart { lo, hi } = &self.location {
            if self.exact.is_some() || &(hi - lo) <= width {
                break;
            }
            self.refine();
        }
    }

    /// Attempt to recognise the root as rational: a rational root `p/q` of a primitive
    /// integer polynomial with leading coefficient `lc` has `lc·p/q` integral.
    pub fn try_rational(&mut self) -> Option<Rational> {
        if let Some(r) = &self.exact {
            return Some(r.clone());
        }
        if self.is_infinity() {
            return None;
        }
        let lc = self.poly.leading()?.abs();
        let target = rat(1) / (&lc * rat(4));
        self.refine_to_width(&target);
        if let Some(r) = &self.exact {
            return Some(r.clone());
        }
        let iv = self.interval()?;
        let scaled = iv.mid() * &lc;
        let candidate = scaled.round() / &lc;
        if self.poly.eval(&candidate).is_zero() && candidate > iv.lo && candidate < iv.hi {
            self.exact = Some(candidate.clone());
            return Some(candidate);
        }
        None
    }

    /// The root as a projective point if it is rational (or `[1:0]`).
    pub fn to_proj_point(&mut self) -> Option<ProjPoint1> {
        if self.is_infinity() {
            return Some(ProjPoint1::infinity());
        }
        self.try_rational().map(ProjPoint1::real)
    }

    /// Nearest double, from an interval refined below double precision.
    pub fn to_f64(&self) -> f64 {
        match (&self.exact, &self.location) {
            (Some(r), _) => super::to_f64(r),
            (None, RootLocation::Chart { lo, hi }) => {
                let scale = lo.abs().max(hi.abs()).max(rat(1));
                let mut fine = self.clone();
                fine.refine_to_width(&(scale / rat(1i64 << 56)));
                match (&fine.exact, fine.interval()) {
                    (Some(r), _) => super::to_f64(r),
                    (None, Some(iv)) => super::to_f64(&iv.mid()),
                    (None, None) => f64::NAN,
                }
            }
            (None, RootLocation::Infinity) => f64::INFINITY,
        }
    }

    /// Exact comparison in chart order with `[1:0]` last.
    pub fn compare(&self, other: &Self) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return a.cmp(b);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut checked_equal = false;
        loop {
            let ia = a.interval().unwrap();
            let ib = b.interval().unwrap();
            if ia.hi < ib.lo {
                return Ordering::Less;
            }
            if ib.hi < ia.lo {
                return Ordering::Greater;
            }
            if let (Some(x), Some(y)) = (&a.exact, &b.exact) {
                return x.cmp(y);
            }
            if !checked_equal {
                checked_equal = true;
                if a.same_root(&b) {
                    return Ordering::Equal;
                }
            }
            a.refine();
            b.refine();
        }
    }

    /// Exact equality: the gcd of the defining polynomials has a root in the overlap.
    fn same_root(&self, other: &Self) -> bool {
        let ia = self.interval().unwrap();
        let ib = other.interval().unwrap();
        if let Some(x) = &self.exact {
            return other.poly.eval(x).is_zero() && ib.lo <= *x && *x <= ib.hi;
        }
        if let Some(y) = &other.exact {
            return self.poly.eval(y).is_zero() && ia.lo <= *y && *y <= ia.hi;
        }
        let g = self.poly.gcd(&other.poly);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let lo = ia.lo.clone().max(ib.lo.clone());
        let hi = ia.hi.clone().min(ib.hi.clone());
        if lo >= hi {
            return false;
        }
        SturmChain::new(&g).count(&lo, &hi) > 0
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, o: &Self) -> bool {
        self.compare(o) == Ordering::Equal
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, o: &Self) -> Ordering {
        self.compare(o)
    }
}

impl Serialize for AlgebraicReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraicReal", 3)?;
        st.serialize_field("form", &self.form)?;
        match (&self.exact, &self.location) {
            (Some(r), _) => {
                st.serialize_field("value", &rational_to_string(r))?;
            }
            (None, RootLocation::Chart { lo, hi }) => {
                st.serialize_field("interval", &[rational_to_string(lo), rational_to_string(hi)])?;
            }
            (None, RootLocation::Infinity) => {
                st.serialize_field("value", "infinity")?;
            }
        }
        st.end()
    }
}

/// All real projective roots of a real squarefree form, in chart order with `[1:0]` last.
pub fn isolate_real_roots(f: &BinaryForm) -> Result<Vec<AlgebraicReal>, ExactMathError> {
    if f.is_zero() {
        return Err(ExactMathError::ZeroForm);
    }
    if !f.is_real() {
        return Err(ExactMathError::NotReal);
    }
    let (m, p) = f.real_poly();
    if m > 1 || (p.degree().unwrap_or(0) > 0 && p.gcd(&p.derivative()).degree().unwrap_or(0) > 0) {
        return Err(ExactMathError::NotSquarefree);
    }
    let p = p.primitive_integer();
    let form = BinaryForm::from_real_poly(&p, f.degree());
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) > 0 {
        let chain = SturmChain::new(&p);
        let b = root_bound(&p);
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = chain.count(&lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(AlgebraicReal {
                    form: form.clone(),
                    poly: p.clone(),
                    location: RootLocation::Chart { lo, hi },
                    exact: None,
                });
                continue;
            }
            let mid = (&lo + &hi) / rat(2);
            if p.eval(&mid).is_zero() {
                let mut w = (&hi - &lo) / rat(4);
                loop {
                    let a = &mid - &w;
                    let b = &mid + &w;
                    if !p.eval(&a).is_zero() && !p.eval(&b).is_zero() && chain.count(&a, &b) == 1 {
                        out.push(AlgebraicReal {
                            form: form.clone(),
                            poly: p.clone(),
                            location: RootLocation::Chart { lo: a.clone(), hi: b.clone() },
                            exact: Some(mid.clone()),
                        });
                        stack.push((lo.clone(), a));
                        stack.push((b, hi.clone()));
                        break;
                    }
                    w /= rat(2);
                }
            } else {
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.interval().unwrap().lo.cmp(&b.interval().unwrap().lo));
    if m == 1 {
        let mut inf = AlgebraicReal::infinity();
        inf.form = form.clone();
        inf.poly = p.clone();
        out.push(inf);
    }
    Ok(out)
}

/// Number of real projective roots of a real squarefree form.
pub fn count_real_roots(f: &BinaryForm) -> Result<usize, ExactMathError> {
    isolate_real_roots(f).map(|v| v.len())
}
