//! The `fkmixer` experiment runner.
//!
//! Every run writes its outputs plus one `manifest.json` into `--out`.
//! `--replay manifest.json` reruns the recorded command and checks the new
//! outputs byte for byte against the recorded digests.

mod commands;
mod config;
mod manifest;
mod svg;
mod validate;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub use manifest::{OutputDigest, RunManifest, MANIFEST_FILE};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for a runtime failure such as an unwritable output directory.
pub const EXIT_RUNTIME: i32 = 1;
/// Exit code for invalid arguments or inputs.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for a failed validation check or replay mismatch.
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        use crate::Error as E;
        match e {
            E::InvalidInput(_) | E::TooLarge { .. } | E::Parse(_) => CliError::Usage(e.to_string()),
            E::RetryExhausted { .. } | E::Io(_) => CliError::Runtime(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fkmixer",
    version,
    about = "Random-cluster and Potts dynamics on random graphs",
    after_help = "Config files (--config FILE) hold `key = value` lines named like the flags; \
                  flags override the file, the file overrides defaults.\n\
                  Exit codes: 0 success, 2 invalid arguments, 3 validation failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Output directory; defaults to `fkmixer-out/<subcommand>`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Master seed; every random stream is derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for replicas.
    #[arg(long, global = true, env = "FKMIXER_THREADS")]
    threads: Option<usize>,

    /// Rerun the command recorded in a manifest and compare output digests.
    #[arg(long, conflicts_with = "seed")]
    replay: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Uniqueness thresholds p_u(q,γ) and β_u on a grid.
    #[command(after_help = "threshold.csv: q,gamma,p_u,beta_u,phat_at_pu")]
    Threshold(ThresholdArgs),
    /// Sample a random graph and summarize its degrees.
    #[command(after_help = "graph.edges: `n m` header then one `u v` line per edge\n\
                            degrees.csv: degree,count")]
    GenGraph(GenGraphArgs),
    /// Run FK dynamics and record snapshots.
    #[command(after_help = "samples.csv: sample,time,open_edges,components,max_cluster\n\
                            clusters.csv: size,count (final configuration)\n\
                            trace.csv (with --trace): event_time,edge,new_state")]
    SampleRc(SampleRcArgs),
    /// Sample Potts configurations by Glauber or Swendsen–Wang dynamics.
    #[command(after_help = "samples.csv: sample,energy,majority_fraction\n\
                            spins.csv: vertex,spin (final configuration)")]
    SamplePotts(SamplePottsArgs),
    /// Coupling times of the extreme FK chains across graph sizes.
    #[command(after_help = "coupling.csv: n,median_coupling_time,iqr\n\
                            coupling_runs.csv: n,seed,coupling_time,timed_out (t_max when timed out)")]
    Couple(CoupleArgs),
    /// Cluster statistics of the all-open FK chain after time t.
    #[command(after_help = "shatter.csv: seed,max_cluster,clusters (size:count pairs)\n\
                            sparse.csv: seed,max_sparsity,argmax,ok")]
    Shatter(ShatterArgs),
    /// Root connectivity on regular trees with a wired boundary.
    #[command(after_help = "tree_decay.csv: h,phi,point_to_point")]
    TreeDecay(TreeDecayArgs),
    /// Exact influence of sparse boundary conditions on tree balls.
    #[command(after_help = "influence.csv: radius,edges,partitions,max_tv")]
    Influence(InfluenceArgs),
    /// Glauber escape times from the Potts bottleneck set.
    #[command(after_help = "bottleneck.csv: d_star,threshold,median_sweeps,censored,mean_steps\n\
                            escapes.csv: d_star,seed,steps,sweeps,censored")]
    PottsBottleneck(PottsBottleneckArgs),
    /// Run a validation suite against exact oracles.
    #[command(after_help = "validate.csv: check,passed,detail")]
    Validate(ValidateArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Threshold(_) => "threshold",
            Command::GenGraph(_) => "gen-graph",
            Command::SampleRc(_) => "sample-rc",
            Command::SamplePotts(_) => "sample-potts",
            Command::Couple(_) => "couple",
            Command::Shatter(_) => "shatter",
            Command::TreeDecay(_) => "tree-decay",
            Command::Influence(_) => "influence",
            Command::PottsBottleneck(_) => "potts-bottleneck",
            Command::Validate(_) => "validate",
        }
    }
}

const SUBCOMMANDS: &[&str] = &[
    "threshold",
    "gen-graph",
    "sample-rc",
    "sample-potts",
    "couple",
    "shatter",
    "tree-decay",
    "influence",
    "potts-bottleneck",
    "validate",
];

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ThresholdArgs {
    /// Cluster weights, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub q: Vec<f64>,
    /// Offspring means, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub gamma: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    /// Poisson-cloned Erdős–Rényi with mean degree --gamma.
    Er,
    /// Configuration model with all degrees --degree.
    Regular,
    /// Configuration model on the degree sequence in --input.
    Degrees,
    /// Edge list read from --input.
    Edges,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GraphArgs {
    #[arg(long, value_enum, default_value_t = GraphKind::Er)]
    pub graph: GraphKind,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Mean degree of the Erdős–Rényi family.
    #[arg(long, default_value_t = 2.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    /// Degree-sequence or edge-list file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Condition the configuration model on a simple graph.
    #[arg(long)]
    pub simple: bool,
    #[arg(long, default_value_t = 10_000)]
    pub max_attempts: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RcArgs {
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// Edge probability; exclusive with --p-frac.
    #[arg(long, conflicts_with = "p_frac")]
    pub p: Option<f64>,
    /// Edge probability as a fraction of p_u(q,γ) (default 0.5).
    #[arg(long)]
    pub p_frac: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Er,
    Regular,
    SingleEdge,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = FamilyKind::Er)]
    pub family: FamilyKind,
    /// Mean degree of the Erdős–Rényi family.
    #[arg(long, default_value_t = 2.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GenGraphArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Start {
    Closed,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendArg {
    Auto,
    Naive,
    Dynamic,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SampleRcArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub rc: RcArgs,
    /// Vertices wired together by the boundary condition; free when empty.
    #[arg(long, value_delimiter = ',')]
    pub wired: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Start::Closed)]
    pub start: Start,
    /// Continuous burn-in time.
    #[arg(long, default_value_t = 100.0)]
    pub burn_in: f64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Continuous time between snapshots.
    #[arg(long, default_value_t = 1.0)]
    pub spacing: f64,
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    pub backend: BackendArg,
    /// Dump every burn-in update to trace.csv.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PottsMethod {
    Glauber,
    Sw,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SamplePottsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 2)]
    pub q: u16,
    /// Inverse temperature; exclusive with --beta-frac.
    #[arg(long, conflicts_with = "beta_frac")]
    pub beta: Option<f64>,
    /// Inverse temperature as a fraction of β_u(q,γ) (default 0.5).
    #[arg(long)]
    pub beta_frac: Option<f64>,
    #[arg(long, value_enum, default_value_t = PottsMethod::Glauber)]
    pub method: PottsMethod,
    /// Burn-in in sweeps (n Glauber steps or one SW step each).
    #[arg(long, default_value_t = 100)]
    pub burn_in: u64,
    #[arg(long, default_value_t = 10)]
    pub spacing: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CoupleArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub rc: RcArgs,
    #[arg(long, value_delimiter = ',', default_value = "512,1024,2048")]
    pub ns: Vec<usize>,
    #[arg(long, default_value_t = 32)]
    pub seeds: usize,
    /// Continuous time after which a run counts as timed out.
    #[arg(long, default_value_t = 1000.0)]
    pub t_max: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ShatterArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub rc: RcArgs,
    #[arg(long, default_value_t = 4096)]
    pub n: usize,
    #[arg(long, default_value_t = 50.0)]
    pub t: f64,
    #[arg(long, default_value_t = 100)]
    pub seeds: usize,
    /// Sparsity bound for the (K,R) check.
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    /// Ball radius for the (K,R) check; default ⌊0.3·log2 n⌋.
    #[arg(long)]
    pub radius: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TreeDecayArgs {
    #[arg(long, default_value_t = 2)]
    pub branching: usize,
    #[command(flatten)]
    pub rc: RcArgs,
    #[arg(long, default_value_t = 2)]
    pub min_height: usize,
    #[arg(long, default_value_t = 14)]
    pub max_height: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct InfluenceArgs {
    #[arg(long, default_value_t = 2)]
    pub branching: usize,
    #[command(flatten)]
    pub rc: RcArgs,
    #[arg(long, default_value_t = 3)]
    pub max_radius: usize,
    /// Sparsity bound of the boundary family.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PottsBottleneckArgs {
    /// Total vertex count, planted vertex included.
    #[arg(long, default_value_t = 1001)]
    pub n: usize,
    /// Degree of every vertex but the planted one.
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    #[arg(long, value_delimiter = ',', default_value = "8,12,16,20,24")]
    pub d_star: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    pub q: u16,
    #[arg(long, conflicts_with = "beta_frac")]
    pub beta: Option<f64>,
    /// Fraction of β_u(q,γ) (default 0.8).
    #[arg(long)]
    pub beta_frac: Option<f64>,
    /// γ used for β_u; default degree − 1.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, default_value_t = 32)]
    pub seeds: usize,
    #[arg(long, default_value_t = 100_000_000)]
    pub step_cap: u64,
    /// Continuous FK time before colouring the start.
    #[arg(long, default_value_t = 10.0)]
    pub burn_in: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SmallOracles,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ValidateArgs {
    #[arg(long, value_enum, default_value_t = Suite::SmallOracles)]
    pub suite: Suite,
}

/// Named output files, written in order after the command finishes.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(String, Vec<u8>)>,
    /// Printed to stdout after writing.
    pub summary: String,
    /// Set by validation commands when a check fails.
    pub failure: Option<String>,
}

impl Outputs {
    pub fn add(&mut self, name: &str, contents: impl Into<Vec<u8>>) {
        self.files.push((name.to_string(), contents.into()));
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Runtime(format!("serializing {name}: {e}")))?;
        self.add(name, text + "\n");
        Ok(())
    }

    fn digests(&self) -> Vec<OutputDigest> {
        self.files
            .iter()
            .map(|(file, bytes)| OutputDigest {
                file: file.clone(),
                sha256: manifest::sha256_hex(bytes),
            })
            .collect()
    }

    fn write(&self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))?;
        for (name, bytes) in &self.files {
            let path = dir.join(name);
            std::fs::write(&path, bytes)
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(())
    }
}

fn to_strings<I, T>(argv: I) -> Vec<String>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    argv.into_iter()
        .map(|a| a.into().to_string_lossy().into_owned())
        .collect()
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    match try_run(to_strings(argv)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn try_run(mut args: Vec<String>) -> Result<i32, CliError> {
    if let Some(path) = config::take_config_path(&mut args)? {
        let entries = config::read(Path::new(&path))?;
        let at = args
            .iter()
            .position(|a| SUBCOMMANDS.contains(&a.as_str()))
            .ok_or_else(|| CliError::Usage("--config needs a subcommand".into()))?;
        config::inject(&mut args, at, &entries);
    }
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return Ok(code);
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        // Fails only if a pool already exists, as in repeated in-process runs.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    if let Some(path) = &cli.replay {
        return replay(path, cli.out.as_deref());
    }
    let Some(command) = cli.command else {
        return Err(CliError::Usage(
            "no subcommand given; see `fkmixer --help`".into(),
        ));
    };
    let out = cli
        .out
        .unwrap_or_else(|| PathBuf::from("fkmixer-out").join(command.name()));
    execute(command, cli.seed, &out)
}

fn execute(command: Command, seed: u64, out: &Path) -> Result<i32, CliError> {
    let started_at = manifest::now();
    let outputs = commands::exec(&command, seed)?;
    outputs.write(out)?;
    let m = RunManifest {
        subcommand: command.name().to_string(),
        command,
        master_seed: seed,
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        started_at,
        finished_at: manifest::now(),
        outputs: outputs.digests(),
    };
    let mut files = Outputs::default();
    files.json(MANIFEST_FILE, &m)?;
    files.write(out)?;
    print!("{}", outputs.summary);
    match outputs.failure {
        Some(reason) => Err(CliError::Validation(reason)),
        None => Ok(EXIT_OK),
    }
}

fn replay(path: &Path, out: Option<&Path>) -> Result<i32, CliError> {
    let recorded = RunManifest::read(path)?;
    let dir = match out {
        Some(d) => d.to_path_buf(),
        None => path.parent().unwrap_or(Path::new(".")).join("replay"),
    };
    if dir.join(MANIFEST_FILE) == path {
        return Err(CliError::Usage("replay would overwrite the manifest it reads".into()));
    }
    let outputs = commands::exec(&recorded.command, recorded.master_seed)?;
    outputs.write(&dir)?;
    let fresh = outputs.digests();
    let mut mismatched = Vec::new();
    for d in &recorded.outputs {
        if !fresh.contains(d) {
            mismatched.push(d.file.clone());
        }
    }
    let started_at = manifest::now();
    let m = RunManifest {
        started_at,
        finished_at: started_at,
        outputs: fresh,
        ..recorded.clone()
    };
    let mut files = Outputs::default();
    files.json(MANIFEST_FILE, &m)?;
    files.write(&dir)?;
    if mismatched.is_empty() {
        println!(
            "replay: {} output(s) identical to {}",
            recorded.outputs.len(),
            path.display()
        );
        Ok(EXIT_OK)
    } else {
        Err(CliError::Validation(format!(
            "replay differs in {}",
            mismatched.join(", ")
        )))
    }
}
