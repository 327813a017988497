//! The `itsp` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input or failed run,
//! 3 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use itsp_core::eval::evaluate;
use itsp_core::ga::{run, GaParams};
use itsp_core::gen::{generate_instance, GenConfig, GridCell};
use itsp_core::repr::RepresentationKind;
use itsp_core::temperature::{Instance, ProfileKind, ProfilePair};
use itsp_core::Units;
use rayon::prelude::*;
use serde::Deserialize;

use crate::bench::{merge_rows, rows_from_csv, rows_to_csv, run_bench, BenchSettings};
use crate::files::{read_instance, read_solution, write_instance, write_solution, SolutionDoc};
use crate::verify::verify_solution;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "itsp", version, about = "Intermittent TSP solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate benchmark instances.
    Gen(GenArgs),
    /// Run the genetic algorithm on one instance.
    Solve(SolveArgs),
    /// Run every (instance, genotype, profile) combination and report means.
    Bench(BenchArgs),
    /// Check a solution file against its instance.
    Verify(VerifyArgs),
    /// Merge bench CSVs over disjoint instance sets.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    master_seed: u64,
    /// Node counts, comma separated.
    #[arg(long, value_delimiter = ',')]
    nodes: Option<Vec<usize>>,
    /// Processing-time ranges such as `10-20,10-100`.
    #[arg(long, value_delimiter = ',', value_parser = parse_range)]
    processing: Option<Vec<(Units, Units)>>,
    /// Distance ranges such as `10-20,10-100`.
    #[arg(long, value_delimiter = ',', value_parser = parse_range)]
    distance: Option<Vec<(Units, Units)>>,
    #[arg(long, value_delimiter = ',', value_parser = parse_max_temp)]
    max_temp: Option<Vec<f64>>,
    #[arg(long)]
    variations: Option<usize>,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    /// Profile for both directions: L, Q or E.
    #[arg(long, value_parser = parse_kind)]
    profile: Option<ProfileKind>,
    /// Profile while processing; overrides `--profile`.
    #[arg(long, value_parser = parse_kind)]
    increase: Option<ProfileKind>,
    /// Profile while not processing; overrides `--profile`.
    #[arg(long, value_parser = parse_kind)]
    decrease: Option<ProfileKind>,
}

impl ProfileArgs {
    fn resolve(&self, base: ProfilePair) -> ProfilePair {
        let both = self.profile.map(ProfilePair::uniform).unwrap_or(base);
        ProfilePair {
            increase: self.increase.unwrap_or(both.increase),
            decrease: self.decrease.unwrap_or(both.decrease),
        }
    }
}

#[derive(Debug, Args)]
struct GaArgs {
    /// JSON file with any of the GA parameter fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    population: Option<usize>,
    #[arg(long)]
    elite: Option<usize>,
    #[arg(long)]
    m_nl: Option<f64>,
    #[arg(long)]
    m_ptl: Option<f64>,
    #[arg(long)]
    m_sl: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    population_size: Option<usize>,
    elite_size: Option<usize>,
    m_nl: Option<f64>,
    m_ptl: Option<f64>,
    m_sl: Option<f64>,
    budget: Option<usize>,
    kind: Option<String>,
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    /// 1L, 2L or 3L.
    #[arg(long, value_parser = parse_repr)]
    repr: Option<RepresentationKind>,
    #[arg(long)]
    out: PathBuf,
    /// Per-generation CSV log.
    #[arg(long)]
    log: Option<PathBuf>,
    #[command(flatten)]
    profile: ProfileArgs,
    #[command(flatten)]
    ga: GaArgs,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Directory of instance files; every `*.json` in it is used.
    #[arg(long)]
    instances: PathBuf,
    #[arg(long, value_delimiter = ',', value_parser = parse_repr, default_value = "1L,2L,3L")]
    repr: Vec<RepresentationKind>,
    /// Profiles such as `L,Q,E`; two letters give increase then decrease.
    #[arg(long, value_delimiter = ',', value_parser = parse_pair, default_value = "L,Q,E")]
    profile: Vec<ProfilePair>,
    /// CSV output; stdout if absent. Metadata goes to `<out>.meta.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    ga: GaArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(required = true)]
    csv: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(Units, Units), String> {
    let (a, b) = s
        .split_once('-')
        .ok_or_else(|| format!("range {s:?} is not of the form LOW-HIGH"))?;
    let a: Units = a.trim().parse().map_err(|e| format!("range {s:?}: {e}"))?;
    let b: Units = b.trim().parse().map_err(|e| format!("range {s:?}: {e}"))?;
    if a == 0 || a > b {
        return Err(format!("range {s:?} must satisfy 1 <= LOW <= HIGH"));
    }
    Ok((a, b))
}

fn parse_max_temp(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(b) if b.is_finite() && b > 0.0 => Ok(b),
        _ => Err(format!("maximum temperature {s:?} must be a positive number")),
    }
}

fn parse_kind(s: &str) -> Result<ProfileKind, String> {
    ProfileKind::from_code(s).ok_or_else(|| format!("unknown profile {s:?}; expected L, Q or E"))
}

fn parse_pair(s: &str) -> Result<ProfilePair, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next(), chars.next()) {
        (Some(a), None, _) => Ok(ProfilePair::uniform(parse_kind(&a.to_string())?)),
        (Some(a), Some(b), None) => Ok(ProfilePair {
            increase: parse_kind(&a.to_string())?,
            decrease: parse_kind(&b.to_string())?,
        }),
        _ => Err(format!("unknown profile {s:?}")),
    }
}

fn parse_repr(s: &str) -> Result<RepresentationKind, String> {
    RepresentationKind::from_label(s)
        .ok_or_else(|| format!("unknown representation {s:?}; expected 1L, 2L or 3L"))
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn invalid(message: impl ToString) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Runs the CLI on `args` (program name first), writing normal output to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Solve(a) => cmd_solve(a, out, err),
        Command::Bench(a) => cmd_bench(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Report(a) => cmd_report(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// File name of a generated instance.
pub fn instance_file_name(cell: &GridCell, variation: usize) -> String {
    format!(
        "itsp_n{}_p{}-{}_d{}-{}_B{}_v{}.json",
        cell.n,
        cell.processing.0,
        cell.processing.1,
        cell.distance.0,
        cell.distance.1,
        cell.max_temp,
        variation
    )
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Outcome {
    let mut cfg = GenConfig::benchmark(a.master_seed);
    if let Some(v) = a.nodes {
        if v.contains(&0) {
            return Err(Failure::usage("node counts must be positive"));
        }
        cfg.node_counts = v;
    }
    if let Some(v) = a.processing {
        cfg.processing_ranges = v;
    }
    if let Some(v) = a.distance {
        cfg.distance_ranges = v;
    }
    if let Some(v) = a.max_temp {
        cfg.max_temps = v;
    }
    if let Some(v) = a.variations {
        cfg.variations = v;
    }
    if cfg.is_empty() {
        return Err(Failure::usage("the grid is empty"));
    }
    fs::create_dir_all(&a.out).map_err(|e| Failure::invalid(format!("{}: {e}", a.out.display())))?;
    let jobs: Vec<(GridCell, usize)> = cfg
        .cells()
        .into_iter()
        .flat_map(|c| (0..cfg.variations).map(move |v| (c, v)))
        .collect();
    jobs.par_iter()
        .map(|&(cell, v)| {
            let inst = generate_instance(&cell, v, cfg.master_seed);
            write_instance(&a.out.join(instance_file_name(&cell, v)), &inst)
        })
        .collect::<Result<Vec<()>, _>>()
        .map_err(Failure::invalid)?;
    let _ = writeln!(out, "wrote {} instances to {}", jobs.len(), a.out.display());
    Ok(())
}

fn read_config(path: &Path) -> Result<ConfigDoc, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

/// Defaults for `kind`, then the config file, then flags.
fn ga_params(kind: RepresentationKind, cfg: &ConfigDoc, a: &GaArgs, seed: u64) -> GaParams {
    let d = GaParams::defaults(kind);
    GaParams {
        population_size: a.population.or(cfg.population_size).unwrap_or(d.population_size),
        elite_size: a.elite.or(cfg.elite_size).unwrap_or(d.elite_size),
        m_nl: a.m_nl.or(cfg.m_nl).unwrap_or(d.m_nl),
        m_ptl: a.m_ptl.or(cfg.m_ptl).unwrap_or(d.m_ptl),
        m_sl: a.m_sl.or(cfg.m_sl).unwrap_or(d.m_sl),
        budget: a.budget.or(cfg.budget).unwrap_or(d.budget),
        kind,
        seed,
    }
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let cfg = match &a.ga.config {
        Some(p) => read_config(p)?,
        None => ConfigDoc::default(),
    };
    let kind = match (a.repr, &cfg.kind) {
        (Some(k), _) => k,
        (None, Some(label)) => parse_repr(label).map_err(Failure::invalid)?,
        (None, None) => return Err(Failure::usage("--repr is required")),
    };
    let seed = match a.ga.seed.or(cfg.seed) {
        Some(s) => s,
        None => {
            let s = rand::random::<u64>();
            let _ = writeln!(err, "seed: {s}");
            s
        }
    };
    let inst = read_instance(&a.instance).map_err(Failure::invalid)?;
    let inst = inst.with_profile(a.profile.resolve(inst.profile()));
    let params = ga_params(kind, &cfg, &a.ga, seed);
    params.validate().map_err(Failure::invalid)?;

    let result = run(&inst, &params).map_err(Failure::invalid)?;
    let (sched, objective) = evaluate(&result.best.repr, &inst).map_err(Failure::invalid)?;
    let doc = SolutionDoc::new(&result.best.repr, objective, inst.profile(), &sched);
    write_solution(&a.out, &doc).map_err(Failure::invalid)?;

    if let Some(log) = &a.log {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Failure::invalid(e);
        w.write_record(["generation", "evaluations", "best_total", "mean_total"])
            .map_err(io)?;
        for s in &result.stats {
            w.write_record([
                s.generation.to_string(),
                s.evaluations.to_string(),
                s.best_total.to_string(),
                format!("{:.2}", s.mean_total),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::invalid(e.to_string()))?;
        fs::write(log, bytes).map_err(|e| Failure::invalid(format!("{}: {e}", log.display())))?;
    }
    let _ = writeln!(
        out,
        "{kind} {}: total {} (processing {}, travel {}, waiting {}) after {} evaluations",
        inst.profile(),
        objective.total,
        objective.processing,
        objective.travel,
        objective.waiting,
        result.evaluations
    );
    Ok(())
}

/// Instance files in `dir`, sorted by name.
pub fn instance_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let cfg = match &a.ga.config {
        Some(p) => read_config(p)?,
        None => ConfigDoc::default(),
    };
    let Some(seed) = a.ga.seed.or(cfg.seed) else {
        return Err(Failure::usage("bench requires --seed"));
    };
    let files = instance_files(&a.instances)
        .map_err(|e| Failure::invalid(format!("{}: {e}", a.instances.display())))?;
    if files.is_empty() {
        return Err(Failure::invalid(format!("no instance files in {}", a.instances.display())));
    }
    let instances = files
        .iter()
        .map(|p| read_instance(p).map_err(|e| Failure::invalid(format!("{}: {e}", p.display()))))
        .collect::<Result<Vec<Instance>, _>>()?;

    let mut settings = BenchSettings::new(seed);
    let probe = ga_params(RepresentationKind::OneList, &cfg, &a.ga, seed);
    settings.budget = probe.budget;
    settings.population_size = probe.population_size;
    settings.elite_size = probe.elite_size;
    settings.m_nl = a.ga.m_nl.or(cfg.m_nl);
    settings.m_ptl = a.ga.m_ptl.or(cfg.m_ptl);
    settings.m_sl = a.ga.m_sl.or(cfg.m_sl);
    for &kind in &a.repr {
        settings.params(kind, seed).validate().map_err(Failure::invalid)?;
    }

    let report = run_bench(&instances, &a.repr, &a.profile, &settings);
    let csv = report.to_csv();
    match &a.out {
        Some(path) => {
            fs::write(path, &csv).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
            let mut meta = path.clone().into_os_string();
            meta.push(".meta.json");
            fs::write(&meta, report.metadata_json())
                .map_err(|e| Failure::invalid(format!("{}: {e}", Path::new(&meta).display())))?;
        }
        None => {
            let _ = out.write_all(csv.as_bytes());
        }
    }
    let failed: Vec<_> = report.failures().collect();
    for f in &failed {
        let _ = writeln!(
            err,
            "{} {} {}: {}",
            files[f.instance].display(),
            f.kind,
            f.profile,
            f.outcome.as_ref().err().map_or("", String::as_str)
        );
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::invalid(format!("{} of {} runs failed", failed.len(), report.runs.len())))
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let inst = read_instance(&a.instance).map_err(Failure::invalid)?;
    let doc = read_solution(&a.solution).map_err(Failure::invalid)?;
    let report = verify_solution(&inst, &doc).map_err(Failure::invalid)?;
    if report.passed() {
        let _ = writeln!(out, "ok: total {}", doc.objective.total);
        return Ok(());
    }
    for p in &report.problems {
        let _ = writeln!(out, "{p}");
    }
    Err(Failure {
        code: EXIT_VERIFY,
        message: format!("{} problem(s) found", report.problems.len()),
    })
}

fn cmd_report(a: ReportArgs, out: &mut dyn Write) -> Outcome {
    let mut all = Vec::new();
    for path in &a.csv {
        let file = fs::File::open(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
        all.push(rows_from_csv(file).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?);
    }
    let csv = rows_to_csv(&merge_rows(&all));
    match &a.out {
        Some(path) => fs::write(path, csv).map_err(|e| Failure::invalid(format!("{}: {e}", path.display()))),
        None => {
            let _ = out.write_all(csv.as_bytes());
            Ok(())
        }
    }
}
