//! Resumable falsification campaigns for the two depth conjectures.
//!
//! A campaign directory holds `campaign.json` (the frozen parameters),
//! `journal.jsonl` (one checksummed JSON object per finished trial, append
//! only), `summary.json` / `summary.txt`, and `violations/` with every
//! instance that broke a check. Re-running on the same directory skips the
//! journaled trials; the summary is rebuilt from the journal alone, so it
//! does not depend on scheduling or on how many runs it took.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs::{self, File, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use segdepth_core::bounds::{conj3_threshold, verify_set, BoundEntry, BoundReport};
use segdepth_core::generators::{generate, GenKind, GenSpec, DEFAULT_DENOMINATOR, DEFAULT_GRID};
use segdepth_core::io::PointSetDocument;
use serde::{Deserialize, Serialize};

use crate::commands::parse_kind;
use crate::{CliError, Exit};

pub const CAMPAIGN_SCHEMA_VERSION: u32 = 1;
pub const CAMPAIGN_FILE: &str = "campaign.json";
pub const JOURNAL_FILE: &str = "journal.jsonl";
pub const SUMMARY_FILE: &str = "summary.json";
pub const SUMMARY_TEXT_FILE: &str = "summary.txt";
pub const VIOLATIONS_DIR: &str = "violations";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// At most `3n - 8j - 6` segments of depth exactly `j`.
    Conj2,
    /// At least `n + 2` pairs of depth `>= floor(n/4) - 1`.
    Conj3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Campaign {
    pub schema_version: u32,
    pub kind: GenKind,
    pub trials: usize,
    /// Point counts, or chain lengths `m` for the construction. Trial `i`
    /// uses `sizes[i % sizes.len()]`.
    pub sizes: Vec<usize>,
    /// Trial `i` is generated with seed `base_seed + i`.
    pub base_seed: u64,
    pub grid: i64,
    pub denominator: i64,
    pub checks: Vec<Check>,
    pub stop_on_conjecture_violation: bool,
}

impl Campaign {
    pub fn new(kind: GenKind, trials: usize, sizes: Vec<usize>, base_seed: u64) -> Self {
        Self {
            schema_version: CAMPAIGN_SCHEMA_VERSION,
            kind,
            trials,
            sizes,
            base_seed,
            grid: DEFAULT_GRID,
            denominator: DEFAULT_DENOMINATOR,
            checks: vec![Check::Conj2, Check::Conj3],
            stop_on_conjecture_violation: false,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.trials == 0 {
            return Err(CliError::Usage("a campaign needs at least one trial".into()));
        }
        if self.sizes.is_empty() {
            return Err(CliError::Usage("a campaign needs at least one size".into()));
        }
        let smallest = if self.kind == GenKind::PaperConstruction { 1 } else { 4 };
        if let Some(s) = self.sizes.iter().find(|&&s| s < smallest) {
            return Err(CliError::Usage(format!("size {s} is below the minimum {smallest} for {:?}", self.kind)));
        }
        Ok(())
    }

    pub fn seed(&self, trial: usize) -> u64 {
        self.base_seed.wrapping_add(trial as u64)
    }

    pub fn spec(&self, trial: usize) -> GenSpec {
        let size = self.sizes[trial % self.sizes.len()];
        let (n, m) = if self.kind == GenKind::PaperConstruction { (None, Some(size)) } else { (Some(size), None) };
        GenSpec { kind: self.kind, n, m, seed: self.seed(trial), grid: self.grid, denominator: self.denominator }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conj2Row {
    pub j: usize,
    pub empirical: i64,
    pub bound: i64,
    pub margin: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conj3Row {
    pub depth_threshold: i64,
    pub deep_pairs: i64,
    pub required: i64,
    pub margin: i64,
}

/// What one trial contributes to the summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub set_id: String,
    pub convex: bool,
    pub max_depth: Option<i64>,
    pub guarantee_margin: Option<i64>,
    /// `name` or `name[j]` of every violated theorem entry.
    pub theorem_violations: Vec<String>,
    pub conj2: Vec<Conj2Row>,
    pub conj3: Option<Conj3Row>,
    pub conjecture_violation: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct JournalLine {
    record: TrialRecord,
    crc32: String,
}

fn checksum(record: &TrialRecord) -> String {
    let body = serde_json::to_string(record).expect("record serialises");
    format!("{:08x}", crc32fast::hash(body.as_bytes()))
}

fn entry_label(e: &BoundEntry) -> String {
    match e.j {
        Some(j) => format!("{}[{}]", e.name, j),
        None => e.name.clone(),
    }
}

fn record_from_report(campaign: &Campaign, trial: usize, report: &BoundReport) -> TrialRecord {
    let n = report.n;
    let convex = report.convex_position == Some(true);
    let guarantee = report.entries_named("max-depth-guarantee").next();
    let conj2: Vec<Conj2Row> = if campaign.checks.contains(&Check::Conj2) {
        report
            .entries_named("conj2-s_j")
            .filter_map(|e| {
                Some(Conj2Row { j: e.j?, empirical: e.empirical, bound: e.formula?, margin: e.margin()? })
            })
            .collect()
    } else {
        Vec::new()
    };
    let conj3 = if campaign.checks.contains(&Check::Conj3) {
        report.entries_named("conj3-pairs").next().and_then(|e| {
            Some(Conj3Row {
                depth_threshold: conj3_threshold(n).ok()?.depth_threshold,
                deep_pairs: e.empirical,
                required: e.formula?,
                margin: e.margin()?,
            })
        })
    } else {
        None
    };
    let conjecture_violation = conj2.iter().any(|r| r.margin < 0) || conj3.as_ref().is_some_and(|r| r.margin < 0);
    TrialRecord {
        trial,
        seed: campaign.seed(trial),
        n,
        set_id: report.set_id.clone(),
        convex,
        max_depth: guarantee.map(|e| e.empirical),
        guarantee_margin: guarantee.and_then(BoundEntry::margin),
        theorem_violations: report.theorem_violations().into_iter().map(entry_label).collect(),
        conj2,
        conj3,
        conjecture_violation,
    }
}

/// Generates and checks one trial. Instances that violate anything are
/// written to `violations/` before the record is returned.
pub fn run_trial(campaign: &Campaign, trial: usize, out: &Path) -> Result<TrialRecord, CliError> {
    let spec = campaign.spec(trial);
    let context = format!("trial {trial} (seed {})", spec.seed);
    let set = generate(&spec).map_err(CliError::core(context.clone()))?;
    let spatial = set.to_spatial();
    let report = verify_set(&spatial).map_err(CliError::core(context))?;
    let record = record_from_report(campaign, trial, &report);
    if record.conjecture_violation || !record.theorem_violations.is_empty() {
        let dir = out.join(VIOLATIONS_DIR);
        fs::create_dir_all(&dir).map_err(CliError::io(format!("creating {}", dir.display())))?;
        let points = dir.join(format!("trial-{trial}.points.json"));
        let doc = PointSetDocument::from_set(&set, Some(spec));
        fs::write(&points, doc.to_json()).map_err(CliError::io(format!("writing {}", points.display())))?;
        let report_path = dir.join(format!("trial-{trial}.report.json"));
        let json = serde_json::to_string_pretty(&report).expect("report serialises");
        fs::write(&report_path, json).map_err(CliError::io(format!("writing {}", report_path.display())))?;
    }
    Ok(record)
}

/// Reads the journal, dropping an unterminated final line (an interrupted
/// append) and truncating the file so later appends start on a clean line.
pub fn read_journal(path: &Path, campaign: &Campaign) -> Result<BTreeMap<usize, TrialRecord>, CliError> {
    let mut records = BTreeMap::new();
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(records),
        Err(e) => return Err(CliError::io(format!("reading {}", path.display()))(e)),
    };
    let complete = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    if complete < bytes.len() {
        let file = OpenOptions::new()
            .write(true)
            .open(path)
            .map_err(CliError::io(format!("opening {}", path.display())))?;
        file.set_len(complete as u64).map_err(CliError::io(format!("truncating {}", path.display())))?;
    }
    let text = std::str::from_utf8(&bytes[..complete])
        .map_err(|_| CliError::Input(format!("{}: journal is not UTF-8", path.display())))?;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let corrupt = |why: String| CliError::Input(format!("{}:{}: journal corrupted: {}", path.display(), lineno + 1, why));
        let entry: JournalLine = serde_json::from_str(line).map_err(|e| corrupt(e.to_string()))?;
        if checksum(&entry.record) != entry.crc32 {
            return Err(corrupt(format!("checksum mismatch for trial {}", entry.record.trial)));
        }
        let r = entry.record;
        if r.trial >= campaign.trials || r.seed != campaign.seed(r.trial) {
            return Err(corrupt(format!("trial {} does not belong to this campaign", r.trial)));
        }
        if records.insert(r.trial, r).is_some() {
            return Err(corrupt("trial journaled twice".into()));
        }
    }
    Ok(records)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conj2Summary {
    pub j: usize,
    pub trials: usize,
    /// Minimum over trials of `bound - empirical`.
    pub min_margin: i64,
    /// Lowest trial index attaining `min_margin`.
    pub argmin_trial: usize,
    pub equality_count: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginSummary {
    pub trials: usize,
    pub min_margin: i64,
    pub argmin_trial: usize,
    pub equality_count: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub trials: usize,
    pub min_max_depth: Option<i64>,
    pub max_max_depth: Option<i64>,
    pub conj2_min_margin: Option<i64>,
    pub conj3_min_margin: Option<i64>,
}

/// Deterministic digest of a journal. Contains no timing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub schema_version: u32,
    pub campaign: Campaign,
    pub trials_completed: usize,
    pub non_convex_trials: usize,
    pub theorem_violation_trials: Vec<usize>,
    pub conjecture_violation_trials: Vec<usize>,
    pub conj2: Vec<Conj2Summary>,
    pub conj3: Option<MarginSummary>,
    pub guarantee: Option<MarginSummary>,
    pub per_size: Vec<SizeSummary>,
}

fn fold_margin(acc: &mut Option<MarginSummary>, trial: usize, margin: i64) {
    let s = acc.get_or_insert(MarginSummary {
        trials: 0,
        min_margin: margin,
        argmin_trial: trial,
        equality_count: 0,
        violations: 0,
    });
    s.trials += 1;
    if margin < s.min_margin || (margin == s.min_margin && trial < s.argmin_trial) {
        s.min_margin = margin;
        s.argmin_trial = trial;
    }
    s.equality_count += usize::from(margin == 0);
    s.violations += usize::from(margin < 0);
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

impl Summary {
    pub fn from_records<'a>(campaign: &Campaign, records: impl IntoIterator<Item = &'a TrialRecord>) -> Self {
        let mut trials_completed = 0;
        let mut non_convex_trials = 0;
        let mut theorem = BTreeSet::new();
        let mut conjecture = BTreeSet::new();
        let mut conj2: BTreeMap<usize, Option<MarginSummary>> = BTreeMap::new();
        let mut conj3 = None;
        let mut guarantee = None;
        let mut sizes: BTreeMap<usize, SizeSummary> = BTreeMap::new();
        for r in records {
            trials_completed += 1;
            non_convex_trials += usize::from(!r.convex);
            if !r.theorem_violations.is_empty() {
                theorem.insert(r.trial);
            }
            if r.conjecture_violation {
                conjecture.insert(r.trial);
            }
            for row in &r.conj2 {
                fold_margin(conj2.entry(row.j).or_default(), r.trial, row.margin);
            }
            if let Some(c) = &r.conj3 {
                fold_margin(&mut conj3, r.trial, c.margin);
            }
            if let Some(g) = r.guarantee_margin {
                fold_margin(&mut guarantee, r.trial, g);
            }
            let s = sizes.entry(r.n).or_insert(SizeSummary {
                n: r.n,
                trials: 0,
                min_max_depth: None,
                max_max_depth: None,
                conj2_min_margin: None,
                conj3_min_margin: None,
            });
            s.trials += 1;
            s.min_max_depth = min_opt(s.min_max_depth, r.max_depth);
            s.max_max_depth = s.max_max_depth.max(r.max_depth);
            s.conj2_min_margin = min_opt(s.conj2_min_margin, r.conj2.iter().map(|c| c.margin).min());
            s.conj3_min_margin = min_opt(s.conj3_min_margin, r.conj3.as_ref().map(|c| c.margin));
        }
        let conj2 = conj2
            .into_iter()
            .filter_map(|(j, s)| {
                let s = s?;
                Some(Conj2Summary {
                    j,
                    trials: s.trials,
                    min_margin: s.min_margin,
                    argmin_trial: s.argmin_trial,
                    equality_count: s.equality_count,
                    violations: s.violations,
                })
            })
            .collect();
        Summary {
            schema_version: CAMPAIGN_SCHEMA_VERSION,
            campaign: campaign.clone(),
            trials_completed,
            non_convex_trials,
            theorem_violation_trials: theorem.into_iter().collect(),
            conjecture_violation_trials: conjecture.into_iter().collect(),
            conj2,
            conj3,
            guarantee,
            per_size: sizes.into_values().collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let c = &self.campaign;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "campaign kind={} trials={}/{} sizes={:?} base_seed={}",
            serde_json::to_value(c.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            self.trials_completed,
            c.trials,
            c.sizes,
            c.base_seed
        );
        let _ = writeln!(out, "non-convex trials: {}", self.non_convex_trials);
        let _ = writeln!(out, "theorem violations: {} {:?}", self.theorem_violation_trials.len(), self.theorem_violation_trials);
        let _ = writeln!(
            out,
            "conjecture violations: {} {:?}",
            self.conjecture_violation_trials.len(),
            self.conjecture_violation_trials
        );
        if !self.conj2.is_empty() {
            let _ = writeln!(out, "\ns_j <= 3n - 8j - 6 (margin = bound - s_j)");
            let _ = writeln!(out, "{:>3}  {:>6}  {:>10}  {:>6}  {:>8}  {:>10}", "j", "trials", "min_margin", "argmin", "equality", "violations");
            for r in &self.conj2 {
                let _ = writeln!(
                    out,
                    "{:>3}  {:>6}  {:>10}  {:>6}  {:>8}  {:>10}",
                    r.j, r.trials, r.min_margin, r.argmin_trial, r.equality_count, r.violations
                );
            }
        }
        let mut line = |label: &str, m: &Option<MarginSummary>| {
            if let Some(m) = m {
                let _ = writeln!(
                    out,
                    "\n{label}\n  trials={} min_margin={} argmin={} equality={} violations={}",
                    m.trials, m.min_margin, m.argmin_trial, m.equality_count, m.violations
                );
            }
        };
        line("pairs of depth >= floor(n/4) - 1, at least n + 2 (margin = pairs - (n + 2))", &self.conj3);
        line("max depth >= guarantee_floor(n) (margin = max depth - floor)", &self.guarantee);
        if !self.per_size.is_empty() {
            let _ = writeln!(out, "\nper size");
            let _ = writeln!(out, "{:>4}  {:>6}  {:>9}  {:>12}  {:>12}", "n", "trials", "max_depth", "conj2_margin", "conj3_margin");
            let show = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
            for s in &self.per_size {
                let depth = match (s.min_max_depth, s.max_max_depth) {
                    (Some(a), Some(b)) if a == b => a.to_string(),
                    (Some(a), Some(b)) => format!("{a}..{b}"),
                    _ => "-".into(),
                };
                let _ = writeln!(
                    out,
                    "{:>4}  {:>6}  {:>9}  {:>12}  {:>12}",
                    s.n,
                    s.trials,
                    depth,
                    show(s.conj2_min_margin),
                    show(s.conj3_min_margin)
                );
            }
        }
        out
    }

    pub fn exit(&self) -> Exit {
        if !self.theorem_violation_trials.is_empty() {
            Exit::TheoremViolation
        } else if !self.conjecture_violation_trials.is_empty() {
            Exit::ConjectureViolation
        } else {
            Exit::Ok
        }
    }
}

/// Runs (or resumes) `campaign` in `out`. At most `limit` new trials are
/// started when a limit is given.
pub fn execute(campaign: &Campaign, out: &Path, limit: Option<usize>) -> Result<Summary, CliError> {
    campaign.validate()?;
    fs::create_dir_all(out).map_err(CliError::io(format!("creating {}", out.display())))?;
    let spec_path = out.join(CAMPAIGN_FILE);
    match fs::read_to_string(&spec_path) {
        Ok(text) => {
            let existing: Campaign = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", spec_path.display())))?;
            if &existing != campaign {
                return Err(CliError::Usage(format!(
                    "{} describes a different campaign; use a fresh output directory",
                    spec_path.display()
                )));
            }
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            let json = serde_json::to_string_pretty(campaign).expect("campaign serialises");
            fs::write(&spec_path, json).map_err(CliError::io(format!("writing {}", spec_path.display())))?;
        }
        Err(e) => return Err(CliError::io(format!("reading {}", spec_path.display()))(e)),
    }

    let journal_path = out.join(JOURNAL_FILE);
    let done = read_journal(&journal_path, campaign)?;
    let already_violated = done.values().any(|r| r.conjecture_violation);
    let mut pending: Vec<usize> = (0..campaign.trials).filter(|t| !done.contains_key(t)).collect();
    if campaign.stop_on_conjecture_violation && already_violated {
        pending.clear();
    }
    if let Some(limit) = limit {
        pending.truncate(limit);
    }

    let journal = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&journal_path)
        .map_err(CliError::io(format!("opening {}", journal_path.display())))?;
    let writer: Mutex<File> = Mutex::new(journal);
    let stop = AtomicBool::new(false);
    let started = Instant::now();
    let fresh: Vec<TrialRecord> = pending
        .par_iter()
        .filter(|_| !stop.load(Ordering::Relaxed))
        .map(|&trial| {
            let record = run_trial(campaign, trial, out)?;
            let checksum = checksum(&record);
            let line = JournalLine { record, crc32: checksum };
            let mut text = serde_json::to_string(&line).expect("journal line serialises");
            text.push('\n');
            {
                let mut file = writer.lock().expect("journal writer poisoned");
                file.write_all(text.as_bytes())
                    .and_then(|_| file.flush())
                    .map_err(CliError::io(format!("appending to {}", journal_path.display())))?;
            }
            if line.record.conjecture_violation && campaign.stop_on_conjecture_violation {
                stop.store(true, Ordering::Relaxed);
            }
            Ok(line.record)
        })
        .collect::<Result<_, CliError>>()?;
    eprintln!(
        "ran {} trials in {:.2}s ({} resumed from journal)",
        fresh.len(),
        started.elapsed().as_secs_f64(),
        done.len()
    );

    let summary = Summary::from_records(campaign, done.values().chain(&fresh));
    let json = serde_json::to_string_pretty(&summary).expect("summary serialises");
    let summary_path = out.join(SUMMARY_FILE);
    fs::write(&summary_path, json).map_err(CliError::io(format!("writing {}", summary_path.display())))?;
    let text_path = out.join(SUMMARY_TEXT_FILE);
    fs::write(&text_path, summary.to_text()).map_err(CliError::io(format!("writing {}", text_path.display())))?;
    Ok(summary)
}

/// `8..24`, `8..=24` (both inclusive), `8,12,16` or a single size.
pub fn parse_sizes(s: &str) -> Result<Sizes, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad size {t:?}"));
    let sizes = if let Some((a, b)) = s.split_once("..") {
        let (lo, hi) = (num(a)?, num(b.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty size range {s:?}"));
        }
        (lo..=hi).collect()
    } else {
        s.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    Ok(Sizes(sizes))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sizes(pub Vec<usize>);

#[derive(Debug, Args)]
pub struct CampaignArgs {
    /// Campaign directory; an existing one is resumed.
    #[arg(long)]
    pub out: PathBuf,
    /// Generator kind [default: lifted-random].
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<GenKind>,
    /// Total number of trials [default: 100].
    #[arg(long)]
    pub trials: Option<usize>,
    /// Sizes as `lo..hi` (inclusive) or a comma list; `m` for the construction [default: 8..24].
    #[arg(long, value_parser = parse_sizes)]
    pub sizes: Option<Sizes>,
    /// Base seed; trial i uses seed + i [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub grid: Option<i64>,
    #[arg(long)]
    pub denominator: Option<i64>,
    /// Conjectures to check [default: conj2,conj3].
    #[arg(long, value_enum, value_delimiter = ',')]
    pub checks: Option<Vec<Check>>,
    /// Stop starting new trials once a conjecture fails.
    #[arg(long)]
    pub stop_on_violation: bool,
    /// Run at most this many new trials in this invocation.
    #[arg(long)]
    pub limit: Option<usize>,
}

impl CampaignArgs {
    /// Flags override the stored campaign; a stored campaign that then
    /// differs is rejected by [`execute`].
    fn resolve(&self) -> Result<Campaign, CliError> {
        let path = self.out.join(CAMPAIGN_FILE);
        let base = match fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
            Err(_) => Campaign::new(GenKind::LiftedRandom, 100, (8..=24).collect(), 0),
        };
        let mut checks = self.checks.clone().unwrap_or(base.checks);
        checks.sort();
        checks.dedup();
        Ok(Campaign {
            schema_version: CAMPAIGN_SCHEMA_VERSION,
            kind: self.kind.unwrap_or(base.kind),
            trials: self.trials.unwrap_or(base.trials),
            sizes: self.sizes.clone().map_or(base.sizes, |s| s.0),
            base_seed: self.seed.unwrap_or(base.base_seed),
            grid: self.grid.unwrap_or(base.grid),
            denominator: self.denominator.unwrap_or(base.denominator),
            checks,
            stop_on_conjecture_violation: self.stop_on_violation || base.stop_on_conjecture_violation,
        })
    }
}

pub fn run_campaign(args: CampaignArgs) -> Result<Exit, CliError> {
    let campaign = args.resolve()?;
    let summary = execute(&campaign, &args.out, args.limit)?;
    print!("{}", summary.to_text());
    Ok(summary.exit())
}
