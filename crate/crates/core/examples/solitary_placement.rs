//! Where do solitary nodes sit? Rasterizes the complement of the real image
//! in RP², labels the components as disks or not, and checks each line
//! through two nodes against Bezout.
//!
//! ```text
//! cargo run --release --example solitary_placement
//! ```

use nodal_quartic::realize::realize_class;
use nodal_quartic::topology::{default_resolution, node_lines, solitary_placement_check};

fn main() -> nodal_quartic::Result<()> {
    let res = default_resolution();
    for id in ["2-1122|s1", "2-1212|s1", "1-11|s2", "0-|s3"] {
        let curve = realize_class(&id.parse()?)?;
        let lines = node_lines(&curve)?;
        let bezout = lines.iter().all(|l| l.meets_only_nodes);
        let p = solitary_placement_check(&curve, res)?;
        println!(
            "{id:<10} components {} (disks {}), Euler sum {}, raster {} at {}",
            p.components,
            p.disks,
            p.euler_sum,
            if p.stable { "stable" } else { "unstable" },
            p.resolution
        );
        for s in &p.solitary {
            let kind = if s.is_disk { "a disk" } else { "the non-disk component" };
            println!("    solitary node {} lies in component {} ({kind})", s.node, s.component);
        }
        println!("    node lines meet the curve only at nodes: {bezout}");
    }
    Ok(())
}
