//! The `nodal-quartic` command line: argument definitions, subcommand
//! implementations and the mapping from errors to exit codes.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::classify::classify;
use crate::diagram::{enumerate_all, ClassId};
use crate::error::{Error, Result};
use crate::exactmath::encode::parse_rational;
use crate::exactmath::Rational;
use crate::isotopy::{build_path, read_path_dir};
use crate::nodes::find_nodes;
use crate::persist::{read_json, write_json};
use crate::plot::{parse_window, write_frame_svgs, write_svg, Chart, PlotSpec};
use crate::realize::{realize_class, realize_from_seed, Curve, NodeSeed};
use crate::topology::{
    node_lines, perturb_and_count_at, perturb_at, perturb_with_retries, raster_components, rokhlin_check,
    solitary_placement_check, NodeLine, OvalReport, PlacementReport, RESOLUTION_ENV,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_NOT_GENERIC: i32 = 2;
pub const EXIT_IMAGINARY_NODE: i32 = 3;
pub const EXIT_DIFFERENT_CLASS: i32 = 4;
pub const EXIT_VERIFY_FAILED: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "nodal-quartic", version, about = "Realize, classify, deform and verify nodal real rational quartics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the rigid isotopy classes (chord diagrams with solitary markers).
    Enumerate {
        /// Only classes with this many chords.
        #[arg(long)]
        chords: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Write the curve JSON of a class representative or of a seed file.
    Realize {
        #[arg(long, conflicts_with = "seed", required_unless_present = "seed")]
        class: Option<String>,
        #[arg(long)]
        seed: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Classification JSON of a curve file.
    Classify {
        curve: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Node report JSON of a curve file.
    Nodes {
        curve: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Certified sampled rigid isotopy between two curves of the same class.
    Path {
        from: PathBuf,
        to: PathBuf,
        #[arg(long, default_value_t = 32)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Bezout node-line checks, solitary node placement and the smoothing check.
    Verify {
        curve: PathBuf,
        #[command(flatten)]
        raster: Raster,
        /// JSON with the expected placement, e.g. {"solitary_in_disk": false}.
        #[arg(long)]
        expect: Option<PathBuf>,
        /// Also write the component raster as a PGM image.
        #[arg(long)]
        pgm: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// SVG of a curve file, or one SVG per frame of a path directory.
    Plot {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "x2")]
        chart: Chart,
        /// xmin,xmax,ymin,ymax (rationals); fitted to the nodes by default.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
    /// Ovals of the smoothing F + ε·G of a curve's implicit equation.
    Perturb {
        curve: PathBuf,
        /// Fixed ε; without it ε = 1/1024 is halved until the result certifies.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<String>,
        /// Sign of G at each node, e.g. "+,+,-"; G = L⁴ by default.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        #[command(flatten)]
        raster: Raster,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
pub struct Output {
    /// Write to this file (atomically) instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Raster {
    /// Cells per cube face edge of the raster.
    #[arg(long, env = RESOLUTION_ENV, default_value_t = crate::topology::FALLBACK_RESOLUTION)]
    pub resolution: usize,
}

/// Exit code for an error that ended a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotGeneric(_) | Error::DegenerateNodes | Error::DegenerateSeed(_) => EXIT_NOT_GENERIC,
        Error::ImaginaryNodePresent => EXIT_IMAGINARY_NODE,
        Error::DifferentClass(..) => EXIT_DIFFERENT_CLASS,
        _ => EXIT_IO,
    }
}

fn emit<T: Serialize + ?Sized>(value: &T, out: &Output) -> Result<()> {
    match &out.output {
        Some(path) => write_json(path, value),
        None => say(&serde_json::to_string_pretty(value)?),
    }
}

/// One line on standard output; a closed pipe is an I/O error, not a panic.
fn say(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn read_curve(path: &Path) -> Result<Curve> {
    Curve::from_json(&std::fs::read_to_string(path)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub class: ClassId,
    pub word: String,
    pub solitary: usize,
    pub chords: usize,
    pub crossings: usize,
}

pub fn enumerate_rows(chords: Option<usize>) -> Vec<ClassRow> {
    enumerate_all(3)
        .into_iter()
        .filter(|c| chords.is_none_or(|k| c.chord_count == k))
        .map(|c| ClassRow {
            word: c.canonical_word.clone(),
            solitary: c.solitary,
            chords: c.chord_count,
            crossings: c.crossings(),
            class: c,
        })
        .collect()
}

/// What `verify` compares against. Defaults are the claims for generic
/// curves: solitary nodes outside disk components, in one shared component,
/// and a nested smoothing for the diagram `1212|s1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct Expectation {
    pub solitary_in_disk: bool,
    pub shared_component: bool,
    pub nested: bool,
}

impl Default for Expectation {
    fn default() -> Self {
        Self { solitary_in_disk: false, shared_component: true, nested: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub class: ClassId,
    pub expectation: Expectation,
    pub node_lines: Vec<NodeLine>,
    pub bezout_ok: bool,
    pub placement: Option<PlacementReport>,
    pub placement_ok: Option<bool>,
    /// `F + ε·L⁴` for the diagram `1212|s1`.
    pub smoothing: Option<OvalReport>,
    pub nesting_ok: Option<bool>,
    /// Failures that stopped a check (unstable raster, no certified smoothing).
    pub errors: Vec<String>,
    pub pass: bool,
}

fn is_c1(class: &ClassId) -> bool {
    class.canonical_word == "1212" && class.solitary == 1
}

/// Runs every check; failures of the numeric layers are recorded in the
/// report rather than returned, so only input errors abort.
pub fn verify_curve(c: &Curve, resolution: usize, expect: &Expectation) -> Result<VerifyReport> {
    let class = classify(c)?.class_id;
    let lines = node_lines(c)?;
    let bezout_ok = lines.iter().all(|l| l.meets_only_nodes && l.multiplicities.iter().sum::<usize>() == 4);
    let mut errors = Vec::new();

    let (placement, placement_ok) = if class.solitary > 0 {
        match solitary_placement_check(c, resolution) {
            Ok(p) => {
                let in_disk = p.solitary.iter().all(|s| s.is_disk);
                let out_of_disk = p.solitary.iter().all(|s| !s.is_disk);
                let disk_ok = if expect.solitary_in_disk { in_disk } else { out_of_disk };
                let ok = p.stable && disk_ok && p.shared_component == expect.shared_component;
                (Some(p), Some(ok))
            }
            Err(e) => {
                errors.push(format!("placement: {e}"));
                (None, Some(false))
            }
        }
    } else {
        (None, None)
    };

    let (smoothing, nesting_ok) = if is_c1(&class) {
        match perturb_with_retries(c, None, resolution) {
            Ok(r) => {
                let nested = r.l == 2 && r.injective_pairs == 1 && rokhlin_check(r.l, 0, r.injective_pairs, 4);
                let ok = nested == expect.nested;
                (Some(r), Some(ok))
            }
            Err(e) => {
                errors.push(format!("smoothing: {e}"));
                (None, Some(false))
            }
        }
    } else {
        (None, None)
    };

    let pass = bezout_ok && placement_ok.unwrap_or(true) && nesting_ok.unwrap_or(true) && errors.is_empty();
    Ok(VerifyReport {
        class,
        expectation: expect.clone(),
        node_lines: lines,
        bezout_ok,
        placement,
        placement_ok,
        smoothing,
        nesting_ok,
        errors,
        pass,
    })
}

/// Parses "+,-,+" (or "1,-1,1").
pub fn parse_signs(text: &str) -> Result<Vec<i8>> {
    text.split(',')
        .map(|p| match p.trim() {
            "+" | "1" | "+1" => Ok(1),
            "-" | "-1" => Ok(-1),
            other => Err(Error::InvalidCurve(format!("bad sign {other:?}"))),
        })
        .collect()
}

fn parse_epsilon(text: &str) -> Result<Rational> {
    parse_rational(text.trim()).ok_or_else(|| Error::InvalidCurve(format!("bad epsilon {text:?}")))
}

/// Runs one command and returns its exit code; errors are reported on stderr.
pub fn run(cli: Cli) -> i32 {
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Enumerate { chords, json } => {
            let rows = enumerate_rows(chords);
            if json {
                say(&serde_json::to_string_pretty(&rows)?)?;
            } else {
                for r in &rows {
                    say(&format!("{}\t{}\tsolitary={}\tcrossings={}", r.class, r.word, r.solitary, r.crossings))?;
                }
            }
        }
        Command::Realize { class, seed, out } => {
            let curve = match (class, seed) {
                (Some(id), _) => realize_class(&id.parse()?)?,
                (None, Some(path)) => {
                    let seed: NodeSeed = read_json(&path)?;
                    realize_from_seed(&seed)?
                }
                (None, None) => unreachable!("clap requires --class or --seed"),
            };
            emit(&curve, &out)?;
        }
        Command::Classify { curve, out } => emit(&classify(&read_curve(&curve)?)?, &out)?,
        Command::Nodes { curve, out } => emit(&find_nodes(&read_curve(&curve)?)?, &out)?,
        Command::Path { from, to, steps, out } => {
            let (a, b) = (read_curve(&from)?, read_curve(&to)?);
            let path = build_path(&a, &b, steps)?;
            path.write_dir(&out)?;
            say(&format!("{} samples of {} written to {}", path.steps.len(), path.class_id, out.display()))?;
        }
        Command::Verify { curve, raster, expect, pgm, out } => {
            let c = read_curve(&curve)?;
            let expect: Expectation = match expect {
                Some(p) => read_json(&p)?,
                None => Expectation::default(),
            };
            let report = verify_curve(&c, raster.resolution, &expect)?;
            if let Some(p) = pgm {
                raster_components(&c, raster.resolution)?.write_pgm(&p)?;
            }
            emit(&report, &out)?;
            if !report.pass {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Plot { input, out, chart, window, samples } => {
            let spec = PlotSpec {
                chart,
                window: window.as_deref().map(parse_window).transpose()?,
                samples,
                ..PlotSpec::default()
            };
            if input.is_dir() {
                let (_, frames) = read_path_dir(&input)?;
                let written = write_frame_svgs(&frames, &spec, &out)?;
                say(&format!("{} frames written to {}", written.len(), out.display()))?;
            } else {
                write_svg(&read_curve(&input)?, &spec, &out)?;
            }
        }
        Command::Perturb { curve, epsilon, signs, raster, out } => {
            let c = read_curve(&curve)?;
            let signs = signs.as_deref().map(parse_signs).transpose()?;
            let report = match (epsilon, &signs) {
                (Some(e), Some(s)) => perturb_at(&c, Some(s), &parse_epsilon(&e)?, raster.resolution)?,
                (Some(e), None) => perturb_and_count_at(&c, &parse_epsilon(&e)?, raster.resolution)?,
                (None, s) => perturb_with_retries(&c, s.as_deref(), raster.resolution)?,
            };
            emit(&report, &out)?;
        }
    }
    Ok(EXIT_OK)
}
