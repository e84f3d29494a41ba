use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use segdepth_core::bounds::verify_set;
use segdepth_core::depth::{records_to_csv, segment_depth, DepthAlgorithm, DepthHistogram, DepthRecord};
use segdepth_core::exactgeom::{check_convex_position, PositionStatus};
use segdepth_core::facets::build_facet_histogram;
use segdepth_core::generators::{generate, GenKind, GenSpec, DEFAULT_DENOMINATOR, DEFAULT_GRID};
use segdepth_core::hull::convex_hull_3d;
use segdepth_core::io::PointSetDocument;
use segdepth_core::{PointSet, SpatialSet};

use crate::campaign::{run_campaign, CampaignArgs};
use crate::{CliError, Exit};

#[derive(Debug, Parser)]
#[command(name = "segdepth", version, about = "Exact segment depth, j-facets and circle-depth bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point set and write it as JSON.
    Gen(GenArgs),
    /// Check every applicable bound on a point set.
    Verify(VerifyArgs),
    /// Segment depths as CSV.
    Depth(DepthArgs),
    /// Oriented j-facet histogram as CSV.
    Facets(DumpArgs),
    /// Convex hull as an edge/facet list.
    Hull(DumpArgs),
    /// Seeded, resumable search for conjecture counterexamples.
    Campaign(CampaignArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: i64,
    #[arg(long, default_value_t = DEFAULT_DENOMINATOR)]
    pub denominator: i64,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

pub fn parse_kind(s: &str) -> Result<GenKind, String> {
    s.parse().map_err(|e: segdepth_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the text report here as well as to stdout.
    #[arg(long)]
    pub text: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmChoice {
    Sweep,
    Brute,
    Both,
}

#[derive(Debug, Args)]
pub struct DepthArgs {
    pub file: PathBuf,
    /// `all` or a single pair `i,j`.
    #[arg(long, default_value = "all")]
    pub pairs: String,
    #[arg(long, value_enum, default_value_t = AlgorithmChoice::Sweep)]
    pub algorithm: AlgorithmChoice,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also write the `j,s_j,S_j` histogram (all pairs only).
    #[arg(long)]
    pub histogram: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    pub file: PathBuf,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<Exit, CliError> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Depth(a) => cmd_depth(a),
        Command::Facets(a) => cmd_facets(a),
        Command::Hull(a) => cmd_hull(a),
        Command::Campaign(a) => run_campaign(a),
    }
}

pub fn write_output(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, body).map_err(CliError::io(format!("writing {}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// Reads a point-set document, reporting parse failures with the file name
/// and the line/column from the JSON parser.
pub fn load_set(path: &Path) -> Result<PointSet, CliError> {
    let text = fs::read_to_string(path).map_err(CliError::io(format!("reading {}", path.display())))?;
    let doc = PointSetDocument::from_json(&text).map_err(CliError::core(path.display().to_string()))?;
    doc.to_set().map_err(CliError::core(path.display().to_string()))
}

/// Loads a set, lifts it if planar, and insists on general position.
pub fn load_spatial(path: &Path) -> Result<SpatialSet, CliError> {
    let set = load_set(path)?;
    if let PositionStatus::Degenerate { kind, witness } = set.position_status() {
        return Err(CliError::Input(format!(
            "{}: points {:?} are {} (general position required)",
            path.display(),
            witness,
            kind
        )));
    }
    Ok(set.to_spatial())
}

fn cmd_gen(a: GenArgs) -> Result<Exit, CliError> {
    let spec = GenSpec { kind: a.kind, n: a.n, m: a.m, seed: a.seed, grid: a.grid, denominator: a.denominator };
    spec.size().map_err(CliError::core("gen"))?;
    let set = generate(&spec).map_err(CliError::core("gen"))?;
    let doc = PointSetDocument::from_set(&set, Some(spec));
    let status = match set.position_status() {
        PositionStatus::General => "general".to_string(),
        PositionStatus::Degenerate { kind, witness } => format!("degenerate ({kind} {witness:?})"),
    };
    let convex = match &set {
        PointSet::Spatial(s) => match check_convex_position(s) {
            Ok(c) if c.convex => " convex=yes",
            Ok(_) => " convex=no",
            Err(_) => "",
        },
        PointSet::Planar(_) => "",
    };
    let summary = format!("n={} dimension={} position={}{}", set.len(), set.dimension(), status, convex);
    match &a.out {
        Some(p) => {
            write_output(Some(p), &doc.to_json())?;
            println!("{summary}");
        }
        None => {
            println!("{}", doc.to_json());
            eprintln!("{summary}");
        }
    }
    Ok(Exit::Ok)
}

fn cmd_verify(a: VerifyArgs) -> Result<Exit, CliError> {
    let set = load_spatial(&a.file)?;
    let report = verify_set(&set).map_err(CliError::core(a.file.display().to_string()))?;
    let text = report.to_text();
    print!("{text}");
    if let Some(p) = &a.text {
        write_output(Some(p), &text)?;
    }
    if let Some(p) = &a.json {
        let json = serde_json::to_string_pretty(&report).expect("report serialises");
        write_output(Some(p), &json)?;
    }
    Ok(if report.has_theorem_violation() {
        Exit::TheoremViolation
    } else if report.has_conjecture_violation() {
        Exit::ConjectureViolation
    } else {
        Exit::Ok
    })
}

fn parse_pairs(spec: &str, n: usize) -> Result<Vec<(usize, usize)>, CliError> {
    if spec == "all" {
        return Ok((0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect());
    }
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [i, j] = parts.as_slice() else {
        return Err(CliError::Usage(format!("--pairs expects `all` or `i,j`, got {spec:?}")));
    };
    let parse = |s: &str| s.parse::<usize>().map_err(|_| CliError::Usage(format!("bad index {s:?} in --pairs")));
    Ok(vec![(parse(i)?, parse(j)?)])
}

fn depths_for(
    set: &SpatialSet,
    pairs: &[(usize, usize)],
    algorithm: DepthAlgorithm,
) -> Result<Vec<DepthRecord>, CliError> {
    use rayon::prelude::*;
    pairs
        .par_iter()
        .map(|&(p, q)| segment_depth(p, q, set, algorithm).map_err(CliError::core(format!("pair ({p},{q})"))))
        .collect()
}

fn cmd_depth(a: DepthArgs) -> Result<Exit, CliError> {
    let set = load_spatial(&a.file)?;
    let pairs = parse_pairs(&a.pairs, set.len())?;
    let algorithm = match a.algorithm {
        AlgorithmChoice::Sweep | AlgorithmChoice::Both => DepthAlgorithm::Sweep,
        AlgorithmChoice::Brute => DepthAlgorithm::BruteForce,
    };
    let started = Instant::now();
    let records = depths_for(&set, &pairs, algorithm)?;
    let first = started.elapsed();
    let mut exit = Exit::Ok;
    if a.algorithm == AlgorithmChoice::Both {
        let started = Instant::now();
        let brute = depths_for(&set, &pairs, DepthAlgorithm::BruteForce)?;
        let second = started.elapsed();
        let mismatches = records.iter().zip(&brute).filter(|(x, y)| x.depth != y.depth).count();
        eprintln!(
            "pairs={} sweep={:.3}ms brute={:.3}ms mismatches={}",
            records.len(),
            first.as_secs_f64() * 1e3,
            second.as_secs_f64() * 1e3,
            mismatches
        );
        if mismatches > 0 {
            exit = Exit::TheoremViolation;
        }
    }
    write_output(a.out.as_deref(), &records_to_csv(&records))?;
    if let Some(p) = &a.histogram {
        if a.pairs != "all" {
            return Err(CliError::Usage("--histogram needs --pairs all".into()));
        }
        write_output(Some(p), &DepthHistogram::from_records(set.len(), &records).to_csv())?;
    }
    Ok(exit)
}

fn cmd_facets(a: DumpArgs) -> Result<Exit, CliError> {
    let set = load_spatial(&a.file)?;
    let hist = build_facet_histogram(&set).map_err(CliError::core(a.file.display().to_string()))?;
    write_output(a.out.as_deref(), &hist.to_csv())?;
    Ok(Exit::Ok)
}

fn cmd_hull(a: DumpArgs) -> Result<Exit, CliError> {
    let set = load_spatial(&a.file)?;
    let hull = convex_hull_3d(&set).map_err(CliError::core(a.file.display().to_string()))?;
    write_output(a.out.as_deref(), &hull.to_text())?;
    Ok(Exit::Ok)
}
