//! Lists the nine rigid isotopy classes of nodal real rational quartics, and
//! the chord diagrams they come from.
//!
//! ```text
//! cargo run --example enumerate_classes
//! ```

use nodal_quartic::diagram::{all_matchings, enumerate_all};

fn main() {
    for k in 0..=3 {
        println!("{} perfect matchings on {} points", all_matchings(k).len(), 2 * k);
    }
    println!();
    println!("{:<14} {:>6} {:>9} {:>9}", "class", "word", "solitary", "crossings");
    for class in enumerate_all(3) {
        println!("{:<14} {:>6} {:>9} {:>9}", class.to_string(), class.canonical_word, class.solitary, class.crossings());
    }
}
