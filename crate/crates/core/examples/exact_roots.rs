//! The exact kernel on its own: resultants of binary forms and certified
//! isolation of real roots, with no floating point in the answer.
//!
//! ```text
//! cargo run --example exact_roots
//! ```

use nodal_quartic::exactmath::{count_real_roots, isolate_real_roots, resultant, BinaryForm};

fn main() -> nodal_quartic::Result<()> {
    // (s − t)(s − 2t)(s² + t²) and (s − 2t)(s + 3t)
    let f = BinaryForm::from_ints(&[1, -3, 3, -3, 2]);
    let g = BinaryForm::from_ints(&[1, 1, -6]);
    let h = BinaryForm::from_ints(&[1, 0, -2]);
    println!("Res(f, g) = {}  (shared root s = 2t)", resultant(&f, &g));
    println!("Res(f, h) = {}", resultant(&f, &h));

    println!("f has {} real roots:", count_real_roots(&f)?);
    for mut root in isolate_real_roots(&f)? {
        match root.try_rational() {
            Some(r) => println!("  {r} (rational, certified)"),
            None => println!("  in {:?}, ~{:.12}", root.interval().map(|i| (i.lo.to_string(), i.hi.to_string())), root.to_f64()),
        }
    }
    println!("h = s² − 2t² has roots ±√2:");
    for root in isolate_real_roots(&h)? {
        println!("  ~{:.12}", root.to_f64());
    }
    Ok(())
}
