//! Draws the real image of every class representative as SVG, solitary
//! nodes as dots. The representatives have their nodes at the coordinate
//! points, so they are moved first to bring all three into the chart.
//!
//! ```text
//! cargo run --example plot_curve -- /tmp/plots
//! ```

use nodal_quartic::diagram::enumerate_all;
use nodal_quartic::exactmath::rat;
use nodal_quartic::plot::{dot_count, render_svg, write_svg, Chart, PlotSpec};
use nodal_quartic::realize::realize_class;

fn main() -> nodal_quartic::Result<()> {
    let dir = std::env::args().nth(1).map(std::path::PathBuf::from);
    let spec = PlotSpec { chart: Chart::X2, ..PlotSpec::default() };
    let motion = [[rat(3), rat(1), rat(1)], [rat(1), rat(3), rat(1)], [rat(1), rat(1), rat(3)]];
    for class in enumerate_all(3) {
        let curve = realize_class(&class)?.transform(&motion)?;
        let svg = render_svg(&curve, &spec)?;
        println!("{:<14} {:>7} bytes, {} dots", class.to_string(), svg.len(), dot_count(&svg));
        if let Some(d) = &dir {
            let name = format!("{}.svg", class.to_string().replace('|', "_"));
            write_svg(&curve, &spec, &d.join(name))?;
        }
    }
    Ok(())
}
