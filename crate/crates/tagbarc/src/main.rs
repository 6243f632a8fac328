//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 when a file or check fails validation
//! (including a FAIL verdict from `correspond` or `perturb`), 2 when a file
//! cannot be read or parsed. All diagnostics go to stderr; results go to
//! stdout in the formats the library serializes.

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tagbarc::constructions::{construction_x, construction_y};
use tagbarc::ext::ExtReal;
use tagbarc::factored::TaggedBarcode;
use tagbarc::io::{BarcodeFile, ComplexFile, ComplexFileMode, IoError, SimplicialFile};
use tagbarc::metrics::{bottleneck, interleaving_distance};
use tagbarc::morse::{
    barycenter_metric, barycentric_subdivide, is_gradient_like, morse_weights, validate_cvf,
    CombinatorialVectorField, GradientCheck,
};
use tagbarc::scalar::{persistence_barcode, verify_correspondence};
use tagbarc::weighted::xi;

#[derive(Parser)]
#[command(name = "tagbarc", version, about = "Tagged barcodes of weighted chain complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a complex or simplicial file and print a summary.
    Validate { file: PathBuf },
    /// Compute the tagged barcode of a weighted complex file.
    Tagbar {
        /// Timeline (x) or isolated-collapse (y) bookkeeping.
        #[arg(long)]
        construction: Construction,
        file: PathBuf,
    },
    /// Bottleneck distance between two tagged barcode files.
    Bottleneck {
        bar1: PathBuf,
        bar2: PathBuf,
        /// Compare one degree instead of the maximum over all degrees.
        #[arg(long)]
        degree: Option<usize>,
        /// Dump the witnessing matching per degree.
        #[arg(long)]
        matching: bool,
    },
    /// Interleaving distance between two tagged barcode files.
    Dint { bar1: PathBuf, bar2: PathBuf },
    /// Weighted Morse complex of a simplicial file with a gradient field.
    Morse {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Metric::Barycenter)]
        metric: Metric,
    },
    /// Persistence barcode of a filtered complex file.
    Persist { file: PathBuf },
    /// Check persistence against the isolated-collapse construction.
    Correspond { file: PathBuf },
    /// Barycentric subdivision of a simplicial file.
    Subdivide {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        iters: usize,
    },
    /// Genericity margin: the smallest gap between pairwise distances.
    Xi { file: PathBuf },
    /// Perturb weights and check the stability bound on the barcode.
    Perturb {
        file: PathBuf,
        /// Largest perturbation per weight; clamped to preserve weight order.
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    X,
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Barycenter,
}

/// A diagnostic with its exit code: 2 for parse-class failures, 1 for
/// invariant violations and failed checks.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }

    fn invalid(message: impl ToString) -> Self {
        Failure { code: 1, message: message.to_string() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure { code: if e.is_parse() { 2 } else { 1 }, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Tagbar { construction, file } => cmd_tagbar(construction, &file),
        Command::Bottleneck { bar1, bar2, degree, matching } => {
            cmd_bottleneck(&bar1, &bar2, degree, matching)
        }
        Command::Dint { bar1, bar2 } => cmd_dint(&bar1, &bar2),
        Command::Morse { file, metric } => cmd_morse(&file, metric),
        Command::Persist { file } => cmd_persist(&file),
        Command::Correspond { file } => cmd_correspond(&file),
        Command::Subdivide { file, iters } => cmd_subdivide(&file, iters),
        Command::Xi { file } => cmd_xi(&file),
        Command::Perturb { file, delta, trials, seed } => {
            cmd_perturb(&file, delta, trials, seed)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))
}

/// Complex files open with dim/bnd/w/f/order records, simplicial files with
/// v/s/pair records. The first content token decides.
fn is_simplicial(text: &str) -> bool {
    text.lines()
        .filter_map(|raw| raw.split('#').next().unwrap_or("").split_whitespace().next())
        .next()
        .is_some_and(|tok| matches!(tok, "v" | "s" | "pair"))
}

fn cmd_validate(path: &Path) -> Result<u8, Failure> {
    let text = read(path)?;
    if is_simplicial(&text) {
        let sf = SimplicialFile::parse(&text)?;
        let k = sf.complex();
        let report = validate_cvf(k, sf.field());
        if !report.is_valid() {
            return Err(Failure::invalid(format!("vector field: {report}")));
        }
        let gradient = match is_gradient_like(k, sf.field()).map_err(Failure::invalid)? {
            GradientCheck::Acyclic => "gradient-like".to_string(),
            GradientCheck::ClosedPath(cycle) => {
                let labels: Vec<String> =
                    cycle.iter().map(|&r| k.simplex_label(r)).collect();
                format!("not gradient-like: closed path {}", labels.join(" -> "))
            }
        };
        println!(
            "simplicial file: {} vertices, {} simplices, {} field pairs, {gradient}",
            k.num_vertices(),
            k.total_simplices(),
            sf.field().len(),
        );
    } else {
        let cf = ComplexFile::parse(&text)?;
        let report = cf.complex().validate();
        if !report.is_valid() {
            return Err(Failure::invalid(report));
        }
        let mode = match cf.mode() {
            ComplexFileMode::Bare => "bare".to_string(),
            ComplexFileMode::Weighted => {
                let w = cf.to_weighted()?;
                match w.is_generic() {
                    Ok(()) => "weighted, generic".to_string(),
                    Err(v) => format!("weighted, not generic: {v}"),
                }
            }
            ComplexFileMode::Filtered => {
                cf.to_filtered()?;
                "filtered".to_string()
            }
        };
        println!(
            "complex file: {} degrees, {} generators, {mode}",
            cf.complex().num_degrees(),
            cf.complex().total_dim(),
        );
    }
    Ok(0)
}

fn cmd_tagbar(construction: Construction, path: &Path) -> Result<u8, Failure> {
    let cf = ComplexFile::parse(&read(path)?)?;
    let w = cf.to_weighted()?;
    let barcode = match construction {
        Construction::X => construction_x(&w).map_err(Failure::invalid)?.0,
        Construction::Y => construction_y(&w),
    };
    print!("{}", BarcodeFile::Tagged(barcode).serialize());
    Ok(0)
}

fn read_tagged(path: &Path) -> Result<TaggedBarcode, Failure> {
    Ok(BarcodeFile::parse(&read(path)?)?.as_tagged()?.clone())
}

fn cmd_bottleneck(
    bar1: &Path,
    bar2: &Path,
    degree: Option<usize>,
    matching: bool,
) -> Result<u8, Failure> {
    let a = read_tagged(bar1)?;
    let b = read_tagged(bar2)?;
    let degrees: Vec<usize> = match degree {
        Some(k) => vec![k],
        None => a.degrees().chain(b.degrees()).collect::<BTreeSet<_>>().into_iter().collect(),
    };
    let mut overall = ExtReal::finite(0.0);
    let mut dumps = Vec::new();
    for k in degrees {
        let (d, m) = bottleneck(&a.slice(k), &b.slice(k));
        overall = overall.max(d);
        dumps.push((k, m));
    }
    println!("{overall}");
    if matching {
        for (k, m) in dumps {
            println!("degree {k}: epsilon {}", m.epsilon);
            for (x, y) in m.matched {
                println!("  pair {x} -- {y}");
            }
            for (x, wt) in m.unmatched {
                println!("  drop {x} (weight {wt})");
            }
        }
    }
    Ok(0)
}

fn cmd_dint(bar1: &Path, bar2: &Path) -> Result<u8, Failure> {
    let a = read_tagged(bar1)?;
    let b = read_tagged(bar2)?;
    println!("{}", interleaving_distance(&a, &b));
    Ok(0)
}

fn cmd_morse(path: &Path, metric: Metric) -> Result<u8, Failure> {
    let sf = SimplicialFile::parse(&read(path)?)?;
    let cell_metric = match metric {
        Metric::Barycenter => barycenter_metric(sf.complex()),
    };
    let w =
        morse_weights(sf.complex(), sf.field(), &cell_metric).map_err(Failure::invalid)?;
    print!("{}", ComplexFile::from_weighted(&w).serialize());
    Ok(0)
}

fn cmd_persist(path: &Path) -> Result<u8, Failure> {
    let cf = ComplexFile::parse(&read(path)?)?;
    let f = cf.to_filtered()?;
    print!("{}", BarcodeFile::Persistence(persistence_barcode(&f)).serialize());
    Ok(0)
}

fn cmd_correspond(path: &Path) -> Result<u8, Failure> {
    let cf = ComplexFile::parse(&read(path)?)?;
    let f = cf.to_filtered()?;
    let report = verify_correspondence(&f);
    println!("{report}");
    Ok(if report.is_match() { 0 } else { 1 })
}

fn cmd_subdivide(path: &Path, iters: usize) -> Result<u8, Failure> {
    let sf = SimplicialFile::parse(&read(path)?)?;
    if !sf.field().is_empty() {
        eprintln!("note: field pairs do not survive subdivision and are dropped");
    }
    let mut k = sf.complex().clone();
    for _ in 0..iters {
        k = barycentric_subdivide(&k);
    }
    print!("{}", SimplicialFile::from_parts(k, CombinatorialVectorField::new()).serialize());
    Ok(0)
}

/// Pairwise distances between all cell barycenters; a file with no `s`
/// records is read as a bare point list of its vertices.
fn cmd_xi(path: &Path) -> Result<u8, Failure> {
    let sf = SimplicialFile::parse(&read(path)?)?;
    let k = sf.complex();
    let points: Vec<Vec<f64>> = if k.total_simplices() > 0 {
        k.refs().map(|r| k.barycenter(r)).collect()
    } else {
        (0..k.num_vertices()).map(|i| k.vertex_coords(i).to_vec()).collect()
    };
    let dist = |p: &[f64], q: &[f64]| {
        p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    };
    let table: Vec<Vec<f64>> = points
        .iter()
        .map(|p| points.iter().map(|q| dist(p, q)).collect())
        .collect();
    let margin = xi(&table).expect("the table is symmetric with a zero diagonal");
    println!("{margin}");
    Ok(0)
}

fn cmd_perturb(path: &Path, delta: f64, trials: usize, seed: u64) -> Result<u8, Failure> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Failure::parse("--delta must be positive and finite"));
    }
    if trials == 0 {
        return Err(Failure::parse("--trials must be at least 1"));
    }
    let cf = ComplexFile::parse(&read(path)?)?;
    let w0 = cf.to_weighted()?;
    if let Err(v) = w0.is_generic() {
        eprintln!("note: weights are not generic ({v}); the stability bound is not guaranteed");
    }
    let reference = construction_y(&w0);

    // The stability bound needs the perturbation to preserve the order of
    // the weights, so the requested delta is clamped below half the gap
    // between the closest distinct values. Tied weights stay tied only in
    // the unperturbed complex; for them the clamp cannot help.
    let mut values: Vec<f64> = w0.weights_iter().map(|(_, _, _, v)| v).collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let min_gap =
        values.windows(2).map(|p| p[1] - p[0]).fold(f64::INFINITY, f64::min);
    let applied = if min_gap.is_finite() { delta.min(min_gap / 2.0) } else { delta };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_db = ExtReal::finite(0.0);
    let mut violation: Option<(usize, ExtReal, f64)> = None;
    for trial in 0..trials {
        let mut sup = 0.0f64;
        let perturbed = w0
            .map_weights(|_, _, _, v| {
                let shifted = (v + rng.gen_range(-applied..=applied)).max(0.0);
                sup = sup.max((shifted - v).abs());
                shifted
            })
            .map_err(Failure::invalid)?;
        let db = interleaving_distance(&reference, &construction_y(&perturbed));
        max_db = max_db.max(db);
        let within = match db.as_finite() {
            Some(x) => x <= sup,
            None => false,
        };
        if !within && violation.is_none() {
            violation = Some((trial, db, sup));
        }
    }
    println!("requested delta {delta}");
    println!("applied delta {applied}");
    println!("max observed d_B {max_db}");
    match violation {
        None => {
            println!("bound: PASS ({trials} trials, every d_B within its trial's perturbation)");
            Ok(0)
        }
        Some((trial, db, sup)) => {
            println!("bound: FAIL (trial {trial}: d_B {db} exceeds perturbation {sup})");
            Ok(1)
        }
    }
}
