//! Rasterized topology of `RP² \ curve`, computed on a cube-map lattice of the
//! sphere double cover. Antipodal cells represent the same projective point.
//!
//! Curves are rasterized in a projective frame that puts the three nodes at the
//! coordinate points, which are the face centres of the cube. Each face is
//! warped by `u = ξ³` (uniform in `ξ`), so cells shrink towards the nodes:
//! small loops and thin wedges of a nodal quartic all hang off a node.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::implicit::{curve_coeffs, implicitize, ImplicitQuartic, QuarticF64};
use crate::error::{Error, Result};
use crate::exactmath::linalg::{mat3_apply, mat3_inverse, Mat3};
use crate::exactmath::{dyadic, to_f64, Rational};
use crate::nodes::{find_nodes, Node, NodeKind};
use crate::persist::write_atomic;
use crate::realize::Curve;

pub(crate) const NONE: u32 = u32::MAX;

/// `6·n²` cells: face `f` is the cube face `x_a = ±1` with `a = f/2`, the sign
/// negative for odd `f`; cell `(i, j)` covers a square of side `2/n` in the
/// warped coordinates `ξ = u^(1/3)` of the two remaining axes, taken in cyclic
/// order after `a`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CubeGrid {
    pub n: usize,
}

impl CubeGrid {
    pub fn len(&self) -> usize {
        6 * self.n * self.n
    }

    pub fn split(&self, idx: usize) -> (usize, usize, usize) {
        let nn = self.n * self.n;
        (idx / nn, (idx % nn) / self.n, idx % self.n)
    }

    pub fn join(&self, f: usize, i: usize, j: usize) -> usize {
        (f * self.n + i) * self.n + j
    }

    fn frame(f: usize) -> (usize, f64, usize, usize) {
        let a = f / 2;
        let sigma = if f.is_multiple_of(2) { 1.0 } else { -1.0 };
        (a, sigma, (a + 1) % 3, (a + 2) % 3)
    }

    pub fn face_point(f: usize, u: f64, v: f64) -> [f64; 3] {
        let (a, sigma, b, c) = Self::frame(f);
        let mut p = [0.0; 3];
        p[a] = sigma;
        p[b] = u;
        p[c] = v;
        p
    }

    fn warp(xi: f64) -> f64 {
        xi * xi * xi
    }

    fn xi(&self, i: usize) -> f64 {
        -1.0 + (2 * i + 1) as f64 / self.n as f64
    }

    fn coord(&self, i: usize) -> f64 {
        Self::warp(self.xi(i))
    }

    /// Warped face coordinate of lattice line `i` (`0..=n`).
    pub fn line(&self, i: usize) -> f64 {
        Self::warp(-1.0 + 2.0 * i as f64 / self.n as f64)
    }

    /// Face and continuous cell coordinates of the ray through `p`.
    pub fn continuous(&self, p: [f64; 3]) -> (usize, f64, f64) {
        let mut a = 0;
        for k in 1..3 {
            if p[k].abs() > p[a].abs() {
                a = k;
            }
        }
        let f = 2 * a + usize::from(p[a] < 0.0);
        let (_, _, b, c) = Self::frame(f);
        let m = p[a].abs();
        let x = |w: f64| ((w / m).cbrt() + 1.0) / 2.0 * self.n as f64;
        (f, x(p[b]), x(p[c]))
    }

    pub fn center(&self, idx: usize) -> [f64; 3] {
        let (f, i, j) = self.split(idx);
        Self::face_point(f, self.coord(i), self.coord(j))
    }

    /// Cell containing the ray through `p` (nonzero).
    pub fn locate(&self, p: [f64; 3]) -> usize {
        let (f, x, y) = self.continuous(p);
        let idx = |x: f64| (x.floor() as isize).clamp(0, self.n as isize - 1) as usize;
        self.join(f, idx(x), idx(y))
    }

    pub fn antipode(&self, idx: usize) -> usize {
        let (f, i, j) = self.split(idx);
        self.join(f ^ 1, self.n - 1 - i, self.n - 1 - j)
    }

    fn step(&self, idx: usize, di: isize, dj: isize) -> usize {
        let (f, i, j) = self.split(idx);
        let (ii, jj) = (i as isize + di, j as isize + dj);
        let n = self.n as isize;
        if (0..n).contains(&ii) && (0..n).contains(&jj) {
            return self.join(f, ii as usize, jj as usize);
        }
        let h = 2.0 / self.n as f64;
        let (u, v) = (Self::warp(self.xi(i) + di as f64 * h), Self::warp(self.xi(j) + dj as f64 * h));
        self.locate(Self::face_point(f, u, v))
    }

    pub fn neighbors4(&self, idx: usize) -> [usize; 4] {
        [self.step(idx, 1, 0), self.step(idx, -1, 0), self.step(idx, 0, 1), self.step(idx, 0, -1)]
    }

    pub fn neighbors8(&self, idx: usize) -> [usize; 8] {
        let [a, b, c, d] = self.neighbors4(idx);
        [a, b, c, d, self.step(idx, 1, 1), self.step(idx, 1, -1), self.step(idx, -1, 1), self.step(idx, -1, -1)]
    }

    /// Calls `visit` once per lattice vertex with the distinct cells around it
    /// (four, or three at a cube corner).
    fn for_each_vertex(&self, mut visit: impl FnMut(&[usize])) {
        let n = self.n;
        let d = 0.5 / n as f64;
        let mut around = Vec::with_capacity(4);
        for f in 0..6 {
            let (a, sigma, b, c) = Self::frame(f);
            for i in 0..=n {
                for j in 0..=n {
                    around.clear();
                    if 0 < i && i < n && 0 < j && j < n {
                        around.extend([
                            self.join(f, i - 1, j - 1),
                            self.join(f, i - 1, j),
                            self.join(f, i, j - 1),
                            self.join(f, i, j),
                        ]);
                        visit(&around);
                        continue;
                    }
                    let mut key = [0i64; 3];
                    key[a] = sigma as i64 * n as i64;
                    key[b] = 2 * i as i64 - n as i64;
                    key[c] = 2 * j as i64 - n as i64;
                    let owner = (0..3)
                        .filter(|&k| key[k].unsigned_abs() as usize == n)
                        .map(|k| 2 * k + usize::from(key[k] < 0))
                        .min()
                        .expect("boundary vertex lies on a face");
                    if owner != f {
                        continue;
                    }
                    let (u, v) = (-1.0 + 2.0 * i as f64 / n as f64, -1.0 + 2.0 * j as f64 / n as f64);
                    for (du, dv) in [(-d, -d), (d, -d), (-d, d), (d, d)] {
                        let cell = self.locate(Self::face_point(f, Self::warp(u + du), Self::warp(v + dv)));
                        if !around.contains(&cell) {
                            around.push(cell);
                        }
                    }
                    visit(&around);
                }
            }
        }
    }
}

/// Cells whose corners see both strict signs of `F`.
pub(crate) fn sign_mask(grid: CubeGrid, f: &QuarticF64) -> Vec<bool> {
    let n = grid.n;
    let faces: Vec<Vec<bool>> = (0..6)
        .into_par_iter()
        .map(|face| {
            let sign: Vec<i8> = (0..(n + 1) * (n + 1))
                .map(|k| {
                    let (i, j) = (k / (n + 1), k % (n + 1));
                    let p = CubeGrid::face_point(face, grid.line(i), grid.line(j));
                    let v = f.eval(p);
                    (v > 0.0) as i8 - (v < 0.0) as i8
                })
                .collect();
            let mut out = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    let s = [sign[i * (n + 1) + j], sign[(i + 1) * (n + 1) + j], sign[i * (n + 1) + j + 1], sign[(i + 1) * (n + 1) + j + 1]];
                    out[i * n + j] = s.contains(&1) && s.contains(&-1);
                }
            }
            out
        })
        .collect();
    faces.concat()
}

/// Marks the cells met by the image of `θ(RP¹)` as a 4-connected chain:
/// the parameter circle is subdivided until consecutive samples fall in the
/// same or edge-adjacent cells.
fn trace_mask(grid: CubeGrid, c: &Curve, mask: &mut [bool]) {
    let coeffs = curve_coeffs(c).map(|v| v.iter().map(to_f64).collect::<Vec<f64>>());
    let point = |phi: f64| -> [f64; 3] {
        let (s, t) = (phi.cos(), phi.sin());
        let mut p = [0.0; 3];
        for (k, cf) in coeffs.iter().enumerate() {
            p[k] = (0..5).map(|m| cf[m] * s.powi(4 - m as i32) * t.powi(m as i32)).sum();
        }
        unit(p)
    };
    let mut mark = |cell: usize| {
        mask[cell] = true;
        mask[grid.antipode(cell)] = true;
    };
    let pieces = 512;
    let pi = std::f64::consts::PI;
    for k in 0..pieces {
        let (a, b) = (pi * k as f64 / pieces as f64, pi * (k + 1) as f64 / pieces as f64);
        let (pa, pb) = (point(a), point(b));
        let mut stack = vec![(a, grid.locate(pa), b, grid.locate(pb), 0u32)];
        while let Some((a, ca, b, cb, depth)) = stack.pop() {
            if ca == cb || grid.neighbors4(ca).contains(&cb) {
                mark(ca);
                mark(cb);
            } else if depth < 60 {
                let m = 0.5 * (a + b);
                let cm = grid.locate(point(m));
                stack.push((m, cm, b, cb, depth + 1));
                stack.push((a, ca, m, cm, depth + 1));
            } else {
                // passing exactly through a lattice vertex
                mark(ca);
                mark(cb);
                for nb in grid.neighbors4(ca) {
                    if grid.neighbors4(cb).contains(&nb) {
                        mark(nb);
                    }
                }
            }
        }
    }
}

/// Labels with fewer cells than this are absorbed into the mask.
const MIN_REGION_CELLS: usize = 8;

/// Where two branches run within a cell of each other the thickened mask
/// pinches off fragments of a few cells that stay the same size under
/// refinement, while every genuine component grows with the resolution. A
/// label below [`MIN_REGION_CELLS`] is treated as such a fragment; a genuine
/// component that small changes the signature between `n` and `2n` and the
/// raster is reported unstable instead.
fn absorb_fragments(grid: CubeGrid, mask: &mut [bool], lift: &[u32], count: usize) -> bool {
    let mut size = vec![0usize; count];
    for &l in lift {
        if l != NONE {
            size[l as usize] += 1;
        }
    }
    let mut changed = false;
    for cell in 0..grid.len() {
        let l = lift[cell];
        if l != NONE && size[l as usize] < MIN_REGION_CELLS {
            mask[cell] = true;
            changed = true;
        }
    }
    changed
}

/// Connected components of the cells selected by `open`, 4- or 8-connected.
pub(crate) fn label(grid: CubeGrid, open: &[bool], eight: bool) -> (Vec<u32>, usize) {
    let mut labels = vec![NONE; grid.len()];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 0..grid.len() {
        if !open[start] || labels[start] != NONE {
            continue;
        }
        labels[start] = count;
        stack.push(start);
        while let Some(cell) = stack.pop() {
            let mut push = |nb: usize| {
                if open[nb] && labels[nb] == NONE {
                    labels[nb] = count;
                    stack.push(nb);
                }
            };
            if eight {
                grid.neighbors8(cell).into_iter().for_each(&mut push);
            } else {
                grid.neighbors4(cell).into_iter().for_each(&mut push);
            }
        }
        count += 1;
    }
    (labels, count as usize)
}

/// Euler characteristic of the union of closed cells of each 8-connected
/// label: vertices minus edges plus cells. Cells around one lattice vertex
/// are pairwise 8-adjacent, so a vertex belongs to at most one label.
pub(crate) fn euler_closed(grid: CubeGrid, labels: &[u32], count: usize) -> Vec<i64> {
    let mut chi = vec![0i64; count];
    for cell in 0..grid.len() {
        let l = labels[cell];
        if l == NONE {
            continue;
        }
        let shared = grid.neighbors4(cell).iter().filter(|&&nb| labels[nb] == l).count() as i64;
        // doubled: one cell, four edges, shared edges seen from both sides
        chi[l as usize] += 2 * (1 - 4) + shared;
    }
    for x in chi.iter_mut() {
        *x /= 2;
    }
    grid.for_each_vertex(|around| {
        if let Some(&c) = around.iter().find(|&&c| labels[c] != NONE) {
            chi[labels[c] as usize] += 1;
        }
    });
    chi
}

/// One component of `RP² \ curve` at raster scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub id: usize,
    /// Cells of one sheet of the lift (projective area in cells).
    pub cells: usize,
    /// 2 when the lift splits into antipodal copies, 1 when it is connected.
    pub lifts: usize,
    /// Pixel Euler characteristic of one lift copy (of the whole lift when connected).
    pub euler: i64,
    pub disk: bool,
    /// Sign of the implicit equation on the region.
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct RasterMap {
    pub resolution: usize,
    /// Set once the component count and disk flags agree at twice the resolution.
    pub stable: bool,
    grid: CubeGrid,
    /// Projective transform from input coordinates to raster coordinates.
    frame: [[f64; 3]; 3],
    mask: Vec<bool>,
    cell_region: Vec<u32>,
    regions: Vec<Region>,
}

/// Serializable digest of a raster map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RasterSummary {
    pub resolution: usize,
    pub stable: bool,
    pub components: usize,
    pub disks: usize,
    pub regions: Vec<Region>,
}

impl RasterMap {
    fn build(f: &ImplicitQuartic, trace: Option<&Curve>, resolution: usize) -> Self {
        let grid = CubeGrid { n: resolution };
        let ff = f.to_f64();
        let mut mask = sign_mask(grid, &ff);
        if let Some(c) = trace {
            trace_mask(grid, c, &mut mask);
        }
        let mut open: Vec<bool> = mask.iter().map(|m| !m).collect();
        let (mut lift, mut count) = label(grid, &open, true);
        if absorb_fragments(grid, &mut mask, &lift, count) {
            open = mask.iter().map(|m| !m).collect();
            (lift, count) = label(grid, &open, true);
        }
        let chi = euler_closed(grid, &lift, count);
        let mut first = vec![usize::MAX; count];
        let mut size = vec![0usize; count];
        for (cell, &l) in lift.iter().enumerate() {
            if l != NONE {
                let l = l as usize;
                first[l] = first[l].min(cell);
                size[l] += 1;
            }
        }
        let mut region_of_lift = vec![NONE; count];
        let mut regions = Vec::new();
        for l in 0..count {
            if region_of_lift[l] != NONE {
                continue;
            }
            let anti = lift[grid.antipode(first[l])] as usize;
            let id = regions.len();
            region_of_lift[l] = id as u32;
            region_of_lift[anti] = id as u32;
            let lifts = if anti == l { 1 } else { 2 };
            let v = ff.eval(grid.center(first[l]));
            regions.push(Region {
                id,
                cells: if lifts == 2 { size[l] } else { size[l] / 2 },
                lifts,
                euler: chi[l],
                disk: lifts == 2 && chi[l] == 1,
                sign: (v > 0.0) as i8 - (v < 0.0) as i8,
            });
        }
        let cell_region = lift.iter().map(|&l| if l == NONE { NONE } else { region_of_lift[l as usize] }).collect();
        let frame = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        Self { resolution, stable: false, grid, frame, mask, cell_region, regions }
    }

    pub fn component_count(&self) -> usize {
        self.regions.len()
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn disk_count(&self) -> usize {
        self.regions.iter().filter(|r| r.disk).count()
    }

    /// Component label of every cell of the double cover, `None` on the curve mask.
    pub fn labels(&self) -> impl Iterator<Item = Option<usize>> + '_ {
        self.cell_region.iter().map(|&r| (r != NONE).then_some(r as usize))
    }

    pub fn masked_cells(&self) -> usize {
        self.mask.iter().filter(|m| **m).count()
    }

    /// Component of the projective point `p`; a point on the mask is assigned
    /// the nearest off-curve cell found by breadth-first search.
    pub fn component_at(&self, p: [f64; 3]) -> Option<usize> {
        let q = self.frame.map(|row| row[0] * p[0] + row[1] * p[1] + row[2] * p[2]);
        let start = self.grid.locate(q);
        let mut seen = vec![start];
        let mut frontier = vec![start];
        for _ in 0..16 {
            let mut hits: Vec<u32> = frontier.iter().map(|&c| self.cell_region[c]).filter(|&r| r != NONE).collect();
            if !hits.is_empty() {
                hits.sort_unstable();
                return Some(hits[0] as usize);
            }
            let mut next = Vec::new();
            for &c in &frontier {
                for nb in self.grid.neighbors4(c) {
                    if !seen.contains(&nb) {
                        seen.push(nb);
                        next.push(nb);
                    }
                }
            }
            frontier = next;
        }
        None
    }

    fn signature(&self) -> Vec<(bool, usize)> {
        let mut s: Vec<(bool, usize)> = self.regions.iter().map(|r| (r.disk, r.lifts)).collect();
        s.sort_unstable();
        s
    }

    /// Sum of the Euler characteristics of the components as subsets of
    /// `RP²`. For the image of a circle with `k` crossings (a graph with `k`
    /// vertices and `2k` edges) it must equal `1 + k`.
    pub fn euler_sum(&self) -> i64 {
        self.regions.iter().map(|r| if r.lifts == 2 { r.euler } else { r.euler / 2 }).sum()
    }

    pub fn summary(&self) -> RasterSummary {
        RasterSummary {
            resolution: self.resolution,
            stable: self.stable,
            components: self.component_count(),
            disks: self.disk_count(),
            regions: self.regions.clone(),
        }
    }

    /// Binary PGM of the six faces side by side; the curve mask is black and
    /// components get evenly spaced gray levels.
    pub fn to_pgm(&self) -> Vec<u8> {
        let n = self.grid.n;
        let mut out = format!("P5\n{} {}\n255\n", 6 * n, n).into_bytes();
        let k = self.regions.len().max(2) - 1;
        for j in 0..n {
            for f in 0..6 {
                for i in 0..n {
                    let r = self.cell_region[self.grid.join(f, i, j)];
                    out.push(if r == NONE { 0 } else { (64 + r as usize * 191 / k) as u8 });
                }
            }
        }
        out
    }

    pub fn write_pgm(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_pgm())
    }
}

/// True iff the component lifts to two antipodal copies, each with pixel
/// Euler characteristic 1.
pub fn is_disk(m: &RasterMap, component: usize) -> bool {
    m.regions.get(component).is_some_and(|r| r.disk)
}

/// Raster of a quartic's complement at one resolution, with `trace` (a
/// parametrization of the curve) drawn into the mask when given.
pub fn raster_quartic(f: &ImplicitQuartic, trace: Option<&Curve>, resolution: usize) -> Result<RasterMap> {
    if resolution < 64 {
        return Err(Error::InvalidResolution(resolution));
    }
    Ok(RasterMap::build(f, trace, resolution))
}

/// Like [`raster_quartic`], additionally requiring the same component count
/// and disk flags at twice the resolution.
pub fn raster_stable(f: &ImplicitQuartic, trace: Option<&Curve>, resolution: usize) -> Result<RasterMap> {
    let mut coarse = raster_quartic(f, trace, resolution)?;
    let fine = raster_quartic(f, trace, 2 * resolution)?;
    if coarse.signature() != fine.signature() {
        return Err(Error::UnstableResolution(resolution, 2 * resolution));
    }
    coarse.stable = true;
    Ok(coarse)
}

/// How many doublings [`raster_components`] may take beyond the requested
/// resolution.
const MAX_DOUBLINGS: u32 = 2;

/// Components of `RP² \ θ(RP¹)` for a generic curve. The raster is accepted
/// once it is stable under doubling and its Euler characteristics add up to
/// `1 + crossings`; otherwise the resolution is doubled (at most
/// [`MAX_DOUBLINGS`] times). The returned map records the resolution used.
pub fn raster_components(c: &Curve, resolution: usize) -> Result<RasterMap> {
    let framed = frame(c)?;
    let f = implicitize(&framed.curve)?;
    let expected = 1 + framed.crossings as i64;
    let mut res = resolution;
    for _ in 0..=MAX_DOUBLINGS {
        match raster_stable(&f, Some(&framed.curve), res) {
            Ok(mut map) if map.euler_sum() == expected => {
                map.frame = framed.t.each_ref().map(|row| row.each_ref().map(to_f64));
                return Ok(map);
            }
            Ok(_) | Err(Error::UnstableResolution(..)) => res *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(Error::UnstableResolution(res / 2, res))
}

/// A curve moved by a projective transform `T` that sends its nodes to the
/// coordinate points (up to a 40-bit approximation for irrational nodes).
pub(crate) struct Framed {
    pub t: Mat3,
    pub curve: Curve,
    /// `T·z_k`.
    pub positions: Vec<[Rational; 3]>,
    /// Number of crossing nodes.
    pub crossings: usize,
}

pub(crate) fn node_point(n: &Node) -> [Rational; 3] {
    n.rational_position().unwrap_or_else(|| [0, 1, 2].map(|k| dyadic(n.position[k].to_f64(), 40)))
}

pub(crate) fn frame(c: &Curve) -> Result<Framed> {
    let nodes = find_nodes(c)?;
    if nodes.len() != 3 {
        return Err(Error::NotGeneric(format!("expected 3 nodes, got {}", nodes.len())));
    }
    let z: Vec<[Rational; 3]> = nodes.iter().map(node_point).collect();
    let zm: Mat3 = std::array::from_fn(|r| std::array::from_fn(|k| z[k][r].clone()));
    let t = mat3_inverse(&zm).ok_or(Error::DegenerateNodes)?;
    let curve = c.transform(&t)?;
    let positions = z.iter().map(|p| mat3_apply(&t, p)).collect();
    let crossings = nodes.iter().filter(|n| n.kind == NodeKind::Crossing).count();
    Ok(Framed { t, curve, positions, crossings })
}

pub(crate) fn unit(p: [f64; 3]) -> [f64; 3] {
    let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    p.map(|x| x / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn antipode_is_an_involution_and_reverses_centers() {
        let g = CubeGrid { n: 8 };
        for cell in 0..g.len() {
            assert_eq!(g.antipode(g.antipode(cell)), cell);
            assert_eq!(g.locate(g.center(cell)), cell);
            let (p, q) = (g.center(cell), g.center(g.antipode(cell)));
            assert!((0..3).all(|k| (p[k] + q[k]).abs() < 1e-12));
        }
    }

    #[test]
    fn neighbours_are_symmetric() {
        let g = CubeGrid { n: 6 };
        for cell in 0..g.len() {
            for nb in g.neighbors4(cell) {
                assert_ne!(nb, cell);
                assert!(g.neighbors4(nb).contains(&cell));
            }
        }
    }

    #[test]
    fn whole_sphere_has_euler_characteristic_two() {
        let g = CubeGrid { n: 10 };
        let open = vec![true; g.len()];
        let (labels, count) = label(g, &open, true);
        assert_eq!(count, 1);
        assert_eq!(euler_closed(g, &labels, count), vec![2]);
    }

    #[test]
    fn empty_real_quartic_leaves_the_whole_plane() {
        let m = raster_stable(&ImplicitQuartic::sum_of_fourth_powers(), None, 64).unwrap();
        assert_eq!(m.component_count(), 1);
        assert_eq!(m.regions()[0].lifts, 1);
        assert!(!is_disk(&m, 0));
        assert_eq!(m.regions()[0].euler, 2);
    }

    #[test]
    fn circle_times_definite_quadric_has_disk_inside() {
        // (x1² + x2² − x0²/4)·(x0² + x1² + x2²)
        let circle = [rat(-1) / rat(4), rat(0), rat(0), rat(1), rat(0), rat(1)];
        let definite = [rat(1), rat(0), rat(0), rat(1), rat(0), rat(1)];
        let f = ImplicitQuartic::product_of_quadrics(&circle, &definite).unwrap();
        let m = raster_stable(&f, None, 64).unwrap();
        assert_eq!(m.component_count(), 2);
        let inside = m.component_at([1.0, 0.0, 0.0]).unwrap();
        let outside = m.component_at([0.0, 1.0, 0.0]).unwrap();
        assert!(is_disk(&m, inside));
        assert!(!is_disk(&m, outside));
        assert_eq!(m.regions()[outside].euler, 0);
    }
}
