//! Certified isolation of the complex roots of a real polynomial.
//!
//! Approximations come from an Aberth iteration in `f64` and are sharpened by
//! Newton steps in exact arithmetic. Isolation is certified with the Weierstrass
//! inclusion disks: for approximations `z_k` of a degree-`n` polynomial the disks
//! `|z - z_k| ≤ n·|W_k|`, `W_k = P(z_k) / (lc·∏_{j≠k}(z_k - z_j))`, cover all roots,
//! and a component made of `m` disks holds exactly `m` roots. Pairwise disjoint
//! disks therefore isolate one root each.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::interval::CBox;
use super::{rat, sqrt_upper, ExactMathError, GaussianRational, Poly, Rational};

type G = GaussianRational;

#[derive(Clone, Debug, PartialEq)]
pub struct RootDisk {
    pub center: G,
    pub radius_sq: Rational,
}

impl RootDisk {
    pub fn radius_upper(&self) -> Rational {
        sqrt_upper(&self.radius_sq)
    }

    pub fn cbox(&self) -> CBox {
        CBox::around(&self.center, &self.radius_upper())
    }

    /// The isolated root is real (disk centred on the real axis).
    pub fn is_real(&self) -> bool {
        self.center.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { center: self.center.conj(), radius_sq: self.radius_sq.clone() }
    }
}

/// Certified disks for all chart roots of a real squarefree polynomial.
#[derive(Clone, Debug)]
pub struct ComplexRoots {
    poly: Poly<Rational>,
    disks: Vec<RootDisk>,
    bits: u32,
}

impl ComplexRoots {
    pub fn poly(&self) -> &Poly<Rational> {
        &self.poly
    }

    /// Working precision of the disk centres.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn disks(&self) -> &[RootDisk] {
        &self.disks
    }

    pub fn real_disks(&self) -> impl Iterator<Item = &RootDisk> {
        self.disks.iter().filter(|d| d.is_real())
    }

    /// Disks of the non-real roots with positive imaginary part.
    pub fn upper_disks(&self) -> impl Iterator<Item = &RootDisk> {
        self.disks.iter().filter(|d| d.center.im.is_positive())
    }

    /// Replace disks around Gaussian-rational roots by exact points. A root `x + iy`
    /// of a primitive integer polynomial with leading coefficient `lc` has
    /// `2·lc·x` and `2·lc·y` integral, so rounding a close enough centre finds it.
    /// Returns the number of pinned roots.
    ///
    /// Disks are refined until every unpinned disk is small enough for the test to
    /// be conclusive.
    pub fn pin_gaussian_rational(&mut self) -> Result<usize, ExactMathError> {
        let ip = self.poly.primitive_integer();
        let Some(lc) = ip.leading().map(|c| c.abs()) else { return Ok(0) };
        let scale = lc * rat(2);
        let pg: Poly<G> = Poly::new(ip.coeffs().iter().cloned().map(G::real).collect());
        loop {
            let pinned = self.pin_pass(&pg, &scale);
            let small = |d: &RootDisk| &d.radius_sq * &scale * &scale * rat(4) < rat(1);
            if self.disks.iter().all(small) {
                return Ok(pinned);
            }
            self.refine()?;
        }
    }

    fn pin_pass(&mut self, pg: &Poly<G>, scale: &Rational) -> usize {
        let mut pinned = 0;
        for k in 0..self.disks.len() {
            let d = &self.disks[k];
            if d.radius_sq.is_zero() {
                pinned += 1;
                continue;
            }
            // the rounding is unambiguous only once the disk is smaller than 1/(4·lc)
            if &d.radius_sq * scale * scale * rat(4) >= rat(1) {
                continue;
            }
            let z = G::new((&d.center.re * scale).round() / scale, (&d.center.im * scale).round() / scale);
            if (z.clone() - &d.center).norm_sqr() <= d.radius_sq && pg.eval(&z).is_zero() {
                self.disks[k] = RootDisk { center: z, radius_sq: Rational::zero() };
                pinned += 1;
            }
        }
        pinned
    }

    /// Sharpen every disk by doubling the working precision.
    pub fn refine(&mut self) -> Result<(), ExactMathError> {
        let bits = self.bits * 2;
        let centers: Vec<G> = self.disks.iter().map(|d| d.center.clone()).collect();
        let refined = polish(&self.poly, centers, bits, 4);
        self.disks = certify(&self.poly, &refined).ok_or(ExactMathError::RootIsolationFailed)?;
        self.bits = bits;
        Ok(())
    }
}

/// Isolate every complex root of a real squarefree polynomial.
pub fn isolate_complex_roots(p: &Poly<Rational>) -> Result<ComplexRoots, ExactMathError> {
    let n = p.degree().ok_or(ExactMathError::ZeroForm)?;
    if n == 0 {
        return Ok(ComplexRoots { poly: p.clone(), disks: Vec::new(), bits: 64 });
    }
    if p.gcd(&p.derivative()).degree().unwrap_or(0) > 0 {
        return Err(ExactMathError::NotSquarefree);
    }
    let real_count = {
        let chain = super::roots::SturmChain::new(p);
        let b = super::roots::root_bound(p);
        chain.count(&-b.clone(), &b)
    };
    let approx = aberth(p);
    let mut centers = snap_conjugates(&approx, real_count);
    let mut bits = 64;
    loop {
        if let Some(disks) = certify(p, &centers) {
            return Ok(ComplexRoots { poly: p.clone(), disks, bits });
        }
        if bits > 4096 {
            return Err(ExactMathError::RootIsolationFailed);
        }
        bits *= 2;
        centers = polish(p, centers, bits, 12);
    }
}

fn aberth(p: &Poly<Rational>) -> Vec<Complex64> {
    let n = p.degree().unwrap();
    let maxc = p.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| super::to_f64(&(c / &maxc))).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::zero();
        let mut d = Complex64::zero();
        for c in coeffs.iter().rev() {
            d = d * z + v;
            v = v * z + c;
        }
        (v, d)
    };
    let bound = super::to_f64(&super::roots::root_bound(p)).min(1e12);
    let radius = bound.max(1.0) * 0.7;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / d;
            let sum: Complex64 =
                (0..n).filter(|&j| j != k).map(|j| Complex64::one() / (z[k] - z[j])).sum();
            let w = ratio / (Complex64::one() - ratio * sum);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Enforce the expected number of real roots and exact conjugate symmetry.
fn snap_conjugates(approx: &[Complex64], real_count: usize) -> Vec<G> {
    let mut by_im: Vec<Complex64> = approx.to_vec();
    by_im.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
    let mut out: Vec<G> = by_im[..real_count].iter().map(|z| G::real(super::from_f64(z.re))).collect();
    let mut rest: Vec<Complex64> = by_im[real_count..].to_vec();
    rest.sort_by(|a, b| b.im.total_cmp(&a.im));
    let half = rest.len() / 2;
    for z in &rest[..half] {
        let g = G::new(super::from_f64(z.re), super::from_f64(z.im.abs()));
        out.push(g.conj());
        out.push(g);
    }
    out
}

fn round_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = Rational::from_integer(num_bigint::BigInt::one() << bits as usize);
    (x * &scale).round() / scale
}

/// Simultaneous Aberth–Ehrlich correction in dyadic arithmetic at `bits` bits.
/// Unlike independent Newton steps, the mutual repulsion term keeps approximations
/// of clustered roots from collapsing onto the same root.
fn polish(p: &Poly<Rational>, centers: Vec<G>, bits: u32, max_steps: usize) -> Vec<G> {
    let pg: Poly<G> = Poly::new(p.coeffs().iter().cloned().map(G::real).collect());
    let dg = pg.derivative();
    let n = centers.len();
    let tol = Rational::new(num_bigint::BigInt::one(), num_bigint::BigInt::one() << (2 * bits as usize));
    let mut z = centers;
    for _ in 0..max_steps {
        let mut next = z.clone();
        let mut largest = Rational::zero();
        for k in 0..n {
            if z[k].im.is_negative() {
                continue;
            }
            let v = pg.eval(&z[k]);
            if v.is_zero() {
                continue;
            }
            let d = dg.eval(&z[k]);
            if d.is_zero() {
                continue;
            }
            let ratio = v / d;
            let mut sum = G::zero();
            for j in 0..n {
                if j != k {
                    let diff = z[k].clone() - &z[j];
                    if !diff.is_zero() {
                        sum = sum + G::one() / diff;
                    }
                }
            }
            let denom = G::one() - ratio.clone() * &sum;
            let w = if denom.is_zero() { ratio } else { ratio / denom };
            let scale = Rational::one().max(z[k].norm_sqr());
            let rel = w.norm_sqr() / scale;
            if rel > largest {
                largest = rel;
            }
            let moved = z[k].clone() - &w;
            let im = if z[k].im.is_zero() { Rational::zero() } else { round_dyadic(&moved.im, bits) };
            next[k] = G::new(round_dyadic(&moved.re, bits), im);
        }
        // lower roots mirror the upper root that follows them (see `snap_conjugates`)
        for k in 0..n {
            if next[k].im.is_negative() && k + 1 < n {
                next[k] = next[k + 1].conj();
            }
        }
        z = next;
        if largest < tol {
            break;
        }
    }
    z
}

fn certify(p: &Poly<Rational>, centers: &[G]) -> Option<Vec<RootDisk>> {
    let n = centers.len();
    let pg: Poly<G> = Poly::new(p.coeffs().iter().cloned().map(G::real).collect());
    let lc = G::real(p.leading()?.clone());
    let nn = rat((n * n) as i64);
    let mut disks = Vec::with_capacity(n);
    for k in 0..n {
        let mut prod = lc.clone();
        for j in 0..n {
            if j != k {
                let d = centers[k].clone() - &centers[j];
                if d.is_zero() {
                    return None;
                }
                prod = prod * d;
            }
        }
        let w = pg.eval(&centers[k]) / prod;
        disks.push(RootDisk { center: centers[k].clone(), radius_sq: w.norm_sqr() * &nn });
    }
    let radii: Vec<Rational> = disks.iter().map(|d| d.radius_upper()).collect();
    for k in 0..n {
        if !disks[k].is_real() && disks[k].radius_sq >= &disks[k].center.im * &disks[k].center.im {
            return None;
        }
        for j in k + 1..n {
            let sum = &radii[k] + &radii[j];
            let dist = (disks[k].center.clone() - &disks[j].center).norm_sqr();
            if &sum * &sum >= dist {
                return None;
            }
        }
    }
    Some(disks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn conjugate_pair_and_real_roots_are_certified() {
        // (x^2 + 1)(x - 2)(x + 3)
        let f = p(&[1, 0, 1]).mul(&p(&[-2, 1])).mul(&p(&[3, 1]));
        let roots = isolate_complex_roots(&f).unwrap();
        assert_eq!(roots.real_disks().count(), 2);
        let upper: Vec<_> = roots.upper_disks().collect();
        assert_eq!(upper.len(), 1);
        let c = upper[0].center.to_c64();
        assert!((c.0).abs() < 1e-9 && (c.1 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn clustered_roots_need_refinement() {
        // roots 1, 1 + 1e-6 (scaled), and ±2i
        let f = p(&[-1_000_000, 1_000_000]).mul(&p(&[-1_000_001, 1_000_000])).mul(&p(&[4, 0, 1]));
        let mut roots = isolate_complex_roots(&f).unwrap();
        assert_eq!(roots.real_disks().count(), 2);
        let before = roots.disks()[0].radius_sq.clone();
        roots.refine().unwrap();
        assert!(roots.disks()[0].radius_sq <= before);
    }
}
