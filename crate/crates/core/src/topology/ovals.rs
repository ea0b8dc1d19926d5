//! Smoothing of the singular quartic, oval counting with nesting, solitary
//! node placement, and the arithmetic of Rokhlin's complex orientation formula.

use rayon::prelude::*;
use serde::Serialize;

use super::implicit::{implicitize, ImplicitQuartic, QuarticF64};
use super::raster::{frame, label, node_point, raster_components, sign_mask, unit, CubeGrid, Framed, NONE};
use crate::classify::classify;
use crate::diagram::ClassId;
use crate::error::{Error, Result};
use crate::exactmath::encode::rational_str;
use crate::exactmath::{rat, ratio, to_f64, Rational};
use crate::nodes::{find_nodes, Node, NodeKind};
use crate::realize::Curve;

/// Ovals of a nonsingular real quartic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OvalReport {
    #[serde(with = "rational_str")]
    pub epsilon: Rational,
    pub l: usize,
    pub injective_pairs: usize,
    /// Signed pair counts are only known when orientations come from outside.
    pub pi_plus: Option<usize>,
    pub pi_minus: Option<usize>,
    pub resolution: usize,
    /// Sign of `ε·G` at each node of the unperturbed curve (empty when the
    /// quartic was given directly).
    pub node_signs: Vec<i8>,
}

/// `2(Π⁺ − Π⁻) = l − d²/4`.
pub fn rokhlin_check(l: usize, pi_plus: usize, pi_minus: usize, d: usize) -> bool {
    2 * (pi_plus as i64 - pi_minus as i64) == l as i64 - (d * d / 4) as i64
}

/// Box `x_a = σ`, `x_b ∈ [u0,u1]`, `x_c ∈ [v0,v1]` on one cube face.
#[derive(Clone, Copy, Debug)]
struct Iv {
    lo: f64,
    hi: f64,
}

impl Iv {
    fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    fn mul(self, o: Self) -> Self {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        Self { lo: p.iter().cloned().fold(f64::INFINITY, f64::min), hi: p.iter().cloned().fold(f64::NEG_INFINITY, f64::max) }
    }

    fn pow(self, e: usize) -> Self {
        let mut r = Self::point(1.0);
        for _ in 0..e {
            r = r.mul(self);
        }
        if e.is_multiple_of(2) && self.lo < 0.0 && self.hi > 0.0 {
            r.lo = 0.0;
        }
        r
    }

    fn contains_zero(self) -> bool {
        self.lo <= 0.0 && self.hi >= 0.0
    }
}

/// A form in floating point with its partial derivatives, for interval tests.
struct Terms(Vec<([usize; 3], f64)>);

impl Terms {
    fn derivative(&self, k: usize) -> Self {
        Terms(
            self.0
                .iter()
                .filter(|(e, _)| e[k] > 0)
                .map(|(e, c)| {
                    let mut d = *e;
                    d[k] -= 1;
                    (d, c * e[k] as f64)
                })
                .collect(),
        )
    }

    /// Enclosure over a box with all coordinates in `[-1, 1]`, padded for rounding.
    fn enclose(&self, x: [Iv; 3]) -> Iv {
        let mut lo = 0.0;
        let mut hi = 0.0;
        let mut mag = 0.0;
        for (e, c) in &self.0 {
            let m = x[0].pow(e[0]).mul(x[1].pow(e[1])).mul(x[2].pow(e[2]));
            let t = m.mul(Iv::point(*c));
            lo += t.lo;
            hi += t.hi;
            mag += c.abs();
        }
        let pad = 1e-10 * mag;
        Iv { lo: lo - pad, hi: hi + pad }
    }
}

/// Raster-scale certificate that `F` has no real singular point: every cell
/// (subdivided up to `depth` times) either excludes a zero of `F` or a zero
/// of one of the two chart partial derivatives.
fn certify_nonsingular(f: &QuarticF64, resolution: usize, depth: u32) -> bool {
    let terms = Terms(f.terms().collect());
    let partials = [terms.derivative(0), terms.derivative(1), terms.derivative(2)];
    let n = resolution;
    (0..6 * n).into_par_iter().all(|row| {
        let (face, i) = (row / n, row % n);
        let a = face / 2;
        let sigma = if face % 2 == 0 { 1.0 } else { -1.0 };
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let h = 2.0 / n as f64;
        (0..n).all(|j| {
            let u0 = -1.0 + i as f64 * h;
            let v0 = -1.0 + j as f64 * h;
            cell_ok(&terms, &partials, (a, sigma, b, c), (u0, u0 + h), (v0, v0 + h), depth)
        })
    })
}

fn cell_ok(
    f: &Terms,
    partials: &[Terms; 3],
    (a, sigma, b, c): (usize, f64, usize, usize),
    u: (f64, f64),
    v: (f64, f64),
    depth: u32,
) -> bool {
    let mut x = [Iv::point(0.0); 3];
    x[a] = Iv::point(sigma);
    x[b] = Iv { lo: u.0, hi: u.1 };
    x[c] = Iv { lo: v.0, hi: v.1 };
    if !f.enclose(x).contains_zero() || !partials[b].enclose(x).contains_zero() || !partials[c].enclose(x).contains_zero()
    {
        return true;
    }
    if depth == 0 {
        return false;
    }
    let (um, vm) = (0.5 * (u.0 + u.1), 0.5 * (v.0 + v.1));
    let frame = (a, sigma, b, c);
    [((u.0, um), (v.0, vm)), ((um, u.1), (v.0, vm)), ((u.0, um), (vm, v.1)), ((um, u.1), (vm, v.1))]
        .into_iter()
        .all(|(uu, vv)| cell_ok(f, partials, frame, uu, vv, depth - 1))
}

/// Number of ovals of the zero set and number of ordered pairs `(A, B)` with
/// `A` inside the disk bounded by `B`, read off the sign-change mask.
fn count_ovals(f: &QuarticF64, resolution: usize) -> (usize, usize) {
    let grid = CubeGrid { n: resolution };
    let mask = sign_mask(grid, f);
    let (lift, count) = label(grid, &mask, true);
    let mut first = vec![usize::MAX; count];
    for (cell, &l) in lift.iter().enumerate() {
        if l != NONE {
            first[l as usize] = first[l as usize].min(cell);
        }
    }
    let mut ovals: Vec<(u32, u32)> = Vec::new();
    for l in 0..count as u32 {
        let anti = lift[grid.antipode(first[l as usize])];
        if anti >= l {
            ovals.push((l, anti));
        }
    }
    let mut pairs = 0;
    for &(b0, b1) in &ovals {
        if b0 == b1 {
            continue;
        }
        let open: Vec<bool> = lift.iter().map(|&l| l != b0 && l != b1).collect();
        let (side, _) = label(grid, &open, false);
        let interior = |cell: usize| {
            let s = side[cell];
            s != NONE && side[grid.antipode(cell)] != s
        };
        pairs += ovals.iter().filter(|&&(a0, _)| a0 != b0 && interior(first[a0 as usize])).count();
    }
    (ovals.len(), pairs)
}

/// Ovals of a nonsingular quartic, stable under resolution doubling.
pub fn oval_report(f: &ImplicitQuartic, resolution: usize) -> Result<OvalReport> {
    if resolution < 64 {
        return Err(Error::InvalidResolution(resolution));
    }
    let ff = f.to_f64();
    if !certify_nonsingular(&ff, resolution, 8) {
        return Err(Error::StillSingular);
    }
    let (l, injective_pairs) = count_ovals(&ff, resolution);
    if count_ovals(&ff, 2 * resolution) != (l, injective_pairs) {
        return Err(Error::UnstableResolution(resolution, 2 * resolution));
    }
    Ok(OvalReport { epsilon: rat(0), l, injective_pairs, pi_plus: None, pi_minus: None, resolution, node_signs: Vec::new() })
}

fn node_direction(n: &Node) -> [f64; 3] {
    unit([0, 1, 2].map(|k| n.position[k].to_f64()))
}

/// `G = L⁴` for the linear form `L` among a fixed candidate list that stays
/// farthest (in angle) from every node, so `G > 0` near all of them.
pub fn perturbation_direction(nodes: &[[Rational; 3]]) -> ImplicitQuartic {
    let candidates: [[i64; 3]; 8] =
        [[1, 1, 1], [1, 1, -1], [1, -1, 1], [-1, 1, 1], [1, 2, 3], [3, -2, 1], [2, 3, -1], [1, -3, 2]];
    let dirs: Vec<[f64; 3]> = nodes.iter().map(|z| unit(z.each_ref().map(to_f64))).collect();
    let score = |l: &[i64; 3]| {
        let norm = ((l[0] * l[0] + l[1] * l[1] + l[2] * l[2]) as f64).sqrt();
        dirs.iter()
            .map(|d| (l[0] as f64 * d[0] + l[1] as f64 * d[1] + l[2] as f64 * d[2]).abs() / norm)
            .fold(f64::INFINITY, f64::min)
    };
    let best = candidates.iter().max_by(|a, b| score(a).total_cmp(&score(b))).expect("candidates");
    ImplicitQuartic::linear_fourth_power(&best.map(rat))
}

/// A quartic with prescribed signs at the three nodes:
/// `G = Σ σ_k·ℓ_k²·(x0² + x1² + x2²)` where `ℓ_k` is the line through the two
/// other nodes. Each node can then be smoothed (or, if solitary, opened into
/// an oval or erased) independently of the others.
pub fn signed_direction(z: &[[Rational; 3]], signs: &[i8]) -> Result<ImplicitQuartic> {
    if z.len() != 3 || signs.len() != 3 {
        return Err(Error::InvalidCurve("a sign pattern needs exactly three nodes".into()));
    }
    let sphere = [rat(1), rat(0), rat(0), rat(1), rat(0), rat(1)];
    let mut acc = vec![rat(0); 15];
    for k in 0..3 {
        let (a, b) = (&z[(k + 1) % 3], &z[(k + 2) % 3]);
        let l = [
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ];
        let sq = [
            &l[0] * &l[0],
            rat(2) * &l[0] * &l[1],
            rat(2) * &l[0] * &l[2],
            &l[1] * &l[1],
            rat(2) * &l[1] * &l[2],
            &l[2] * &l[2],
        ];
        let term = ImplicitQuartic::product_of_quadrics(&sq, &sphere)?;
        let scaled = term.unit_scaled();
        for (t, v) in acc.iter_mut().zip(scaled) {
            *t += rat(signs[k] as i64) * v;
        }
    }
    ImplicitQuartic::new(acc)
}

/// `F_ε = F + ε·G` with `F` and `G` scaled to unit max coefficient.
pub fn perturbed_quartic(f: &ImplicitQuartic, g: &ImplicitQuartic, epsilon: &Rational) -> Result<ImplicitQuartic> {
    let coeffs = f.unit_scaled().iter().zip(g.unit_scaled()).map(|(a, b)| a + epsilon * b).collect();
    ImplicitQuartic::new(coeffs)
}

fn perturb_with(framed: &Framed, g: &ImplicitQuartic, epsilon: &Rational, resolution: usize) -> Result<OvalReport> {
    let f = implicitize(&framed.curve)?;
    let fe = perturbed_quartic(&f, g, epsilon)?;
    let mut report = oval_report(&fe, resolution)?;
    report.epsilon = epsilon.clone();
    report.node_signs = framed
        .positions
        .iter()
        .map(|z| {
            let v = g.eval(z) * epsilon;
            (v > rat(0)) as i8 - (v < rat(0)) as i8
        })
        .collect();
    Ok(report)
}

/// Oval report of `F + ε·L⁴` at the given resolution. The curve is first
/// moved so its nodes sit at the coordinate points, which changes neither the
/// oval count nor the nesting.
pub fn perturb_and_count_at(c: &Curve, epsilon: &Rational, resolution: usize) -> Result<OvalReport> {
    perturb_at(c, None, epsilon, resolution)
}

/// Oval report of `F + ε·G` with `G` from [`signed_direction`] when `signs`
/// is given (node order of `find_nodes`), `L⁴` otherwise.
pub fn perturb_at(c: &Curve, signs: Option<&[i8]>, epsilon: &Rational, resolution: usize) -> Result<OvalReport> {
    let framed = frame(c)?;
    let g = match signs {
        Some(s) => signed_direction(&framed.positions, s)?,
        None => perturbation_direction(&framed.positions),
    };
    perturb_with(&framed, &g, epsilon, resolution)
}

/// Oval report of `F + ε·L⁴` at the default resolution.
pub fn perturb_and_count(c: &Curve, epsilon: &Rational) -> Result<OvalReport> {
    perturb_and_count_at(c, epsilon, super::default_resolution())
}

/// Starting from `1/1024`, halve `ε` up to ten times until `F + ε·G`
/// certifies nonsingular with a resolution-stable count. `signs` gives the
/// sign of the perturbation at each node (node order of `find_nodes`);
/// `None` uses `+L⁴`.
pub fn perturb_with_retries(c: &Curve, signs: Option<&[i8]>, resolution: usize) -> Result<OvalReport> {
    let framed = frame(c)?;
    let g = match signs {
        Some(s) => signed_direction(&framed.positions, s)?,
        None => perturbation_direction(&framed.positions),
    };
    let mut eps = ratio(1, 1024);
    let mut last = Error::StillSingular;
    for _ in 0..=10 {
        match perturb_with(&framed, &g, &eps, resolution) {
            Ok(r) => return Ok(r),
            Err(e @ (Error::StillSingular | Error::UnstableResolution(..))) => last = e,
            Err(e) => return Err(e),
        }
        eps /= rat(2);
    }
    Err(last)
}

#[derive(Clone, Debug, Serialize)]
pub struct SolitaryPlacement {
    /// Index into the classified node list.
    pub node: usize,
    /// Exact position, or a 40-bit dyadic approximation when irrational.
    #[serde(with = "crate::exactmath::encode::rational_vec")]
    pub position: Vec<Rational>,
    pub component: usize,
    pub is_disk: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlacementReport {
    pub class_id: ClassId,
    pub resolution: usize,
    pub stable: bool,
    pub components: usize,
    pub disks: usize,
    /// Sum of component Euler characteristics; `1 + crossings` for a consistent raster.
    pub euler_sum: i64,
    pub solitary: Vec<SolitaryPlacement>,
    pub shared_component: bool,
    pub all_in_non_disk: bool,
    /// For the diagram with two crossing chords and one solitary node: the
    /// four smoothings of the crossings that open the solitary node into an
    /// oval, followed by the four that erase it.
    pub smoothings: Vec<OvalReport>,
    /// Some smoothing opening the solitary node gives two nested ovals.
    pub nesting: Option<bool>,
    pub pass: bool,
}

/// Locates every solitary node among the components of `RP² \ θ(RP¹)`.
pub fn solitary_placement_check(c: &Curve, resolution: usize) -> Result<PlacementReport> {
    let cls = classify(c)?;
    let map = raster_components(c, resolution)?;
    let nodes = find_nodes(c)?;
    let mut solitary = Vec::new();
    for (k, node) in nodes.iter().enumerate().filter(|(_, n)| n.kind == NodeKind::Solitary) {
        let component = map
            .component_at(node_direction(node))
            .ok_or_else(|| Error::InvalidCurve("solitary node lies on the curve mask".into()))?;
        let position = node_point(node).to_vec();
        solitary.push(SolitaryPlacement { node: k, position, component, is_disk: map.regions()[component].disk });
    }
    if solitary.is_empty() {
        return Err(Error::InvalidCurve("curve has no solitary node".into()));
    }
    let shared_component = solitary.iter().all(|s| s.component == solitary[0].component);
    let all_in_non_disk = solitary.iter().all(|s| !s.is_disk);
    let mut smoothings = Vec::new();
    if cls.class_id.canonical_word == "1212" && cls.class_id.solitary == 1 {
        // F keeps one sign near the isolated zero; pushing it across zero there
        // opens a small oval around the node.
        let s = solitary[0].node;
        let open = -map.regions()[solitary[0].component].sign;
        for solitary_sign in [open, -open] {
            for pattern in [[1, 1], [1, -1], [-1, 1], [-1, -1]] {
                let mut signs = [0i8; 3];
                let mut it = pattern.into_iter();
                for (k, v) in signs.iter_mut().enumerate() {
                    *v = if k == s { solitary_sign } else { it.next().expect("two crossings") };
                }
                smoothings.push(perturb_with_retries(c, Some(&signs), resolution)?);
            }
        }
    }
    let nesting =
        (!smoothings.is_empty()).then(|| smoothings[..4].iter().any(|r| r.l == 2 && r.injective_pairs == 1));
    let pass = shared_component && all_in_non_disk && nesting.unwrap_or(true);
    Ok(PlacementReport {
        class_id: cls.class_id,
        resolution: map.resolution,
        stable: map.stable,
        components: map.component_count(),
        disks: map.disk_count(),
        euler_sum: map.euler_sum(),
        solitary,
        shared_component,
        all_in_non_disk,
        smoothings,
        nesting,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rokhlin_arithmetic() {
        assert!(rokhlin_check(2, 0, 1, 4));
        assert!(!rokhlin_check(2, 0, 0, 4));
        assert!(rokhlin_check(4, 0, 0, 4));
    }

    #[test]
    fn nested_circles_count_one_pair() {
        // (x1² + x2² − x0²)(4x1² + 4x2² − x0²): two concentric circles.
        let outer = [rat(-1), rat(0), rat(0), rat(1), rat(0), rat(1)];
        let inner = [rat(-1), rat(0), rat(0), rat(4), rat(0), rat(4)];
        let f = ImplicitQuartic::product_of_quadrics(&outer, &inner).unwrap();
        let r = oval_report(&f, 64).unwrap();
        assert_eq!((r.l, r.injective_pairs), (2, 1));
    }

    #[test]
    fn disjoint_circles_are_not_nested() {
        // (x1² + x2² − x0²/16)·((x1 − x0)² + x2² − x0²/16) has two outside-each-other ovals.
        let a = [ratio(-1, 16), rat(0), rat(0), rat(1), rat(0), rat(1)];
        let b = [ratio(15, 16), rat(-2), rat(0), rat(1), rat(0), rat(1)];
        let f = ImplicitQuartic::product_of_quadrics(&a, &b).unwrap();
        let r = oval_report(&f, 64).unwrap();
        assert_eq!((r.l, r.injective_pairs), (2, 0));
    }

    #[test]
    fn empty_quartic_has_no_ovals() {
        let r = oval_report(&ImplicitQuartic::sum_of_fourth_powers(), 64).unwrap();
        assert_eq!((r.l, r.injective_pairs), (0, 0));
    }
}
