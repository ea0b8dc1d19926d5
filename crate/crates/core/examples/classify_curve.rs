//! Finds the nodes of a curve exactly and reads off its chord diagram. The
//! class does not change under projective motions or reparametrization.
//!
//! ```text
//! cargo run --example classify_curve
//! ```

use nodal_quartic::classify::classify;
use nodal_quartic::exactmath::{rat, ratio};
use nodal_quartic::nodes::{Coordinate, NodeKind};
use nodal_quartic::realize::realize_class;

fn show(c: &Coordinate) -> String {
    match c.as_rational() {
        Some(r) => r.to_string(),
        None => format!("~{:.6}", c.to_f64()),
    }
}

fn main() -> nodal_quartic::Result<()> {
    let curve = realize_class(&"3-121323|s0".parse()?)?;
    let moved = curve
        .transform(&[[rat(2), rat(1), rat(0)], [rat(-1), rat(3), rat(1)], [rat(0), ratio(1, 2), rat(1)]])?
        .reparametrize(&[[rat(1), rat(2)], [rat(-1), rat(1)]])?;

    for (name, c) in [("representative", &curve), ("moved", &moved)] {
        let cls = classify(c)?;
        println!("{name}: class {}", cls.class_id);
        for (k, node) in cls.nodes.iter().enumerate() {
            let kind = match node.kind {
                NodeKind::Crossing => "crossing",
                NodeKind::Solitary => "solitary",
            };
            let pos: Vec<String> = node.position.iter().map(show).collect();
            println!("  node {k}: {kind:<8} ({})", pos.join(" : "));
        }
        let order: Vec<String> = cls.labels.iter().map(|l| (l + 1).to_string()).collect();
        println!("  preimage labels in circular order: {}", order.concat());
    }
    Ok(())
}
