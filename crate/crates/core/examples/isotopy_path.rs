//! Connects two curves of the same class by a sampled rigid isotopy whose
//! every sample carries an exact genericity certificate, and writes it as a
//! path directory.
//!
//! ```text
//! cargo run --example isotopy_path -- /tmp/path
//! ```

use nodal_quartic::exactmath::rat;
use nodal_quartic::isotopy::{build_path, read_path_dir};
use nodal_quartic::realize::{realize_from_seed, NodeSeed};

fn main() -> nodal_quartic::Result<()> {
    let out = std::env::args().nth(1).map(std::path::PathBuf::from);
    let a = realize_from_seed(&NodeSeed::new([
        NodeSeed::real_pair(rat(0), rat(2)),
        NodeSeed::real_pair(rat(1), rat(3)),
        NodeSeed::conjugate_pair(rat(-2), rat(1)),
    ])?)?;
    let b = realize_from_seed(&NodeSeed::new([
        NodeSeed::real_pair(rat(-5), rat(1)),
        NodeSeed::real_pair(rat(-1), rat(4)),
        NodeSeed::conjugate_pair(rat(7), rat(3)),
    ])?)?;

    let path = build_path(&a, &b, 16)?;
    println!("class {}, {} samples", path.class_id, path.steps.len());
    for step in &path.steps {
        assert!(step.certificate.check(&step.curve));
        println!("  t = {:<8} certified", step.t.to_string());
    }

    let tmp;
    let dir = match &out {
        Some(d) => d.as_path(),
        None => {
            tmp = tempfile::tempdir()?;
            tmp.path()
        }
    };
    path.write_dir(dir)?;
    let (class, frames) = read_path_dir(dir)?;
    println!("read back {} frames of {class} from {}", frames.len(), dir.display());
    Ok(())
}
