//! Builds an explicit parametrized quartic for a class and prints its curve
//! JSON, the file format every other command reads.
//!
//! ```text
//! cargo run --example realize_class -- "2-1212|s1"
//! ```

use nodal_quartic::diagram::ClassId;
use nodal_quartic::realize::{default_seed, realize_class, realize_from_seed};

fn main() -> nodal_quartic::Result<()> {
    let id: ClassId = std::env::args().nth(1).as_deref().unwrap_or("3-123123|s0").parse()?;
    let seed = default_seed(&id)?;
    eprintln!("node seed (preimage pairs in the chart s/t):");
    eprintln!("{}", serde_json::to_string(&seed)?);

    let curve = realize_class(&id)?;
    assert_eq!(curve, realize_from_seed(&seed)?);
    println!("{}", serde_json::to_string_pretty(&curve)?);
    Ok(())
}
