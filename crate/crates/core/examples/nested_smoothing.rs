//! Smooths the curve with two interleaved chords and one solitary node into
//! a nonsingular quartic, counts its ovals and their nesting, and checks the
//! complex orientation formula.
//!
//! ```text
//! cargo run --release --example nested_smoothing
//! ```

use nodal_quartic::nodes::{find_nodes, NodeKind};
use nodal_quartic::realize::realize_class;
use nodal_quartic::topology::{default_resolution, implicitize, perturb_with_retries, rokhlin_check};
use num_traits::Zero;

fn main() -> nodal_quartic::Result<()> {
    let curve = realize_class(&"2-1212|s1".parse()?)?;
    let f = implicitize(&curve)?;
    println!("implicit quartic has {} nonzero coefficients", f.coeffs().iter().filter(|c| !c.is_zero()).count());

    let res = default_resolution();
    let r = perturb_with_retries(&curve, None, res)?;
    println!("F + ({})·L⁴: {} ovals, {} nested pairs", r.epsilon, r.l, r.injective_pairs);
    for (plus, minus) in [(0, 1), (1, 0)] {
        println!("  Π⁺ = {plus}, Π⁻ = {minus}: orientation formula {}", rokhlin_check(r.l, plus, minus, 4));
    }

    let solitary = find_nodes(&curve)?.iter().position(|n| n.kind == NodeKind::Solitary).unwrap_or(0);
    let mut signs = vec![1i8; 3];
    signs[solitary] = -1;
    let erased = perturb_with_retries(&curve, Some(&signs), res)?;
    println!("with the opposite sign at the solitary node: {} ovals", erased.l);
    Ok(())
}
