//! Topology of the real image: implicit equation, components of the
//! complement, Bezout line checks, solitary node placement and smoothing.

mod implicit;
mod lines;
mod ovals;
mod raster;

pub use implicit::{implicitize, line_multiplicities, monomials, ImplicitQuartic, QuarticF64};
pub use ovals::{
    oval_report, perturb_and_count, perturb_at, perturb_and_count_at, perturb_with_retries, perturbation_direction,
    perturbed_quartic, rokhlin_check, signed_direction, solitary_placement_check, OvalReport, PlacementReport, SolitaryPlacement,
};
pub use lines::{node_lines, NodeLine};
pub use raster::{is_disk, raster_components, raster_quartic, raster_stable, RasterMap, RasterSummary, Region};

/// Environment variable holding the default raster resolution (cells per cube face edge).
pub const RESOLUTION_ENV: &str = "NODAL_QUARTIC_RESOLUTION";

pub const FALLBACK_RESOLUTION: usize = 256;

pub fn default_resolution() -> usize {
    std::env::var(RESOLUTION_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(FALLBACK_RESOLUTION)
}
