use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hypersing::harness::{run_sweep, AuditRecord, ExperimentConfig};
use hypersing::job::{FieldSpec, JobFile};
use hypersing::mf::{mirror_double_ses, star_scaffold, MirrorReport};
use hypersing::poly::{parse_poly, CoefficientField, PolyRing};
use hypersing::quotient::{default_max_steps, resolve};
use hypersing::theta::{jacobian_check, theta, vanishing_predicted, SingularityReport, ThetaReport};
use hypersing::Error;
use serde::{Deserialize, Serialize};

/// Exact θ invariants, matrix factorizations and singularity checks for
/// hypersurface rings.
#[derive(Parser)]
#[command(name = "hypersing", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coefficient field: `rational` or `prime:p` (overrides the job file).
    #[arg(long, global = true)]
    field: Option<CoefficientField>,
    /// Comma-separated variable names (overrides the job file).
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Resolution length bound.
    #[arg(long, global = true)]
    max_steps: Option<usize>,
    /// Index-window start used when no stabilization is found.
    #[arg(long, global = true)]
    assume_stable_at: Option<usize>,
    /// Seed for the random audits of `experiment`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (CSV for `experiment`, JSON otherwise).
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// θ for every pair of a job file.
    Theta { job: PathBuf },
    /// Isolatedness, Milnor and Tjurina numbers of a hypersurface.
    Sing { f: String },
    /// Validate the matrix factorizations of a job file.
    MfVerify {
        job: PathBuf,
        /// Also check the elementary-matrix identity and the mirror sequences.
        #[arg(long)]
        deep: bool,
    },
    /// Print resolutions of the modules of a job file.
    Resolve {
        job: PathBuf,
        /// Only this module.
        #[arg(long)]
        module: Option<String>,
    },
    /// Run a sweep over bundled or custom families and write CSV.
    Experiment {
        /// Experiment configuration; every bundled family when omitted.
        config: Option<PathBuf>,
    },
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConformanceViolation(_) | Error::IdentityFailed(_) | Error::ExactnessFailed { .. } => 3,
            ref e if e.is_hypothesis_failure() => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 1, message }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct PairResult {
    pair: [String; 2],
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    report: Option<ThetaReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct ThetaOutput {
    ring: String,
    job: JobFile,
    results: Vec<PairResult>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct SingOutput {
    #[serde(flatten)]
    report: SingularityReport,
    vanishing_predicted: bool,
    justification: String,
}

#[derive(Serialize)]
struct StarSummary {
    passed: bool,
    pd_b_equals_d_prime_a: bool,
    pd_b_equals_d_prime_b: bool,
}

#[derive(Serialize)]
struct MfOutput {
    name: String,
    size: usize,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    star: Option<StarSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mirror: Option<MirrorReport>,
}

#[derive(Serialize)]
struct StabilizationOutput {
    index: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    b: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ResolveOutput {
    name: String,
    ranks: Vec<usize>,
    differentials: Vec<Vec<Vec<String>>>,
    stabilization: Option<StabilizationOutput>,
}

#[derive(Serialize)]
struct ExperimentOutput {
    records: usize,
    hash: String,
    hypothesis_failures: usize,
    audits_failed: usize,
    audits: Vec<AuditRecord>,
}

impl Cli {
    fn load_job(&self, path: &Path) -> Result<JobFile, Failure> {
        let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        let mut job = JobFile::from_json(&text)?;
        if let Some(field) = self.field {
            job.field = FieldSpec(field);
        }
        if let Some(vars) = &self.vars {
            job.variables = vars.clone();
        }
        if self.max_steps.is_some() {
            job.options.max_steps = self.max_steps;
        }
        if self.assume_stable_at.is_some() {
            job.options.assume_stable_at = self.assume_stable_at;
        }
        Ok(job)
    }

    fn emit(&self, value: &impl Serialize) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(value).expect("reports serialize");
        match &self.output {
            Some(path) => fs::write(path, text + "\n").map_err(|e| input_error(format!("{}: {e}", path.display()))),
            None => {
                println!("{text}");
                Ok(())
            }
        }
    }
}

fn cmd_theta(cli: &Cli, path: &Path) -> Result<(), Failure> {
    let job = cli.load_job(path)?;
    let loaded = job.load()?;
    let mut results = Vec::new();
    let mut worst: Option<Failure> = None;
    for (a, b) in &loaded.pairs {
        let outcome = theta(&loaded.modules[a], &loaded.modules[b], loaded.options);
        let pair = [a.clone(), b.clone()];
        match outcome {
            Ok(report) => results.push(PairResult {
                pair,
                report: Some(report),
                error: None,
            }),
            Err(e) if e.is_hypothesis_failure() => {
                results.push(PairResult {
                    pair,
                    report: None,
                    error: Some(e.to_string()),
                });
                worst.get_or_insert(Failure::from(e));
            }
            Err(e) => return Err(e.into()),
        }
    }
    cli.emit(&ThetaOutput {
        ring: loaded.ring.to_string(),
        job,
        results,
    })?;
    worst.map_or(Ok(()), Err)
}

/// Identifiers occurring in `f`, sorted.
fn guess_variables(f: &str) -> Vec<String> {
    let mut vars: Vec<String> = f
        .split(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .filter(|t| t.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_'))
        .map(str::to_string)
        .collect();
    vars.sort();
    vars.dedup();
    vars
}

fn cmd_sing(cli: &Cli, f: &str) -> Result<(), Failure> {
    let vars = cli.vars.clone().unwrap_or_else(|| guess_variables(f));
    let q = PolyRing::new(cli.field.unwrap_or(CoefficientField::Rationals), &vars, Default::default())?;
    let f = parse_poly(f, &q)?;
    if f.is_constant() {
        return Err(input_error("the polynomial must be nonconstant".into()));
    }
    if !q.field().is_zero(&f.constant_term()) {
        return Err(input_error("the hypersurface must pass through the origin".into()));
    }
    let report = jacobian_check(&f);
    let prediction = vanishing_predicted(&report);
    cli.emit(&SingOutput {
        report,
        vanishing_predicted: prediction.predicted,
        justification: prediction.justification,
    })
}

fn cmd_mf_verify(cli: &Cli, path: &Path, deep: bool) -> Result<(), Failure> {
    let loaded = cli.load_job(path)?.load()?;
    if loaded.factorizations.is_empty() {
        return Err(input_error("the job defines no matrix factorizations".into()));
    }
    let mut out = Vec::new();
    for (name, mf) in &loaded.factorizations {
        let (star, mirror) = if deep {
            let s = star_scaffold(mf)?;
            let star = StarSummary {
                passed: s.passed,
                pd_b_equals_d_prime_a: s.pd_b_equals_d_prime_a,
                pd_b_equals_d_prime_b: s.pd_b_equals_d_prime_b,
            };
            (Some(star), Some(mirror_double_ses(mf)?))
        } else {
            (None, None)
        };
        out.push(MfOutput {
            name: name.clone(),
            size: mf.size(),
            valid: true,
            star,
            mirror,
        });
    }
    cli.emit(&out)
}

fn cmd_resolve(cli: &Cli, path: &Path, only: Option<&str>) -> Result<(), Failure> {
    let loaded = cli.load_job(path)?.load()?;
    if let Some(name) = only {
        if !loaded.modules.contains_key(name) {
            return Err(input_error(format!("no module `{name}` in the job")));
        }
    }
    let steps = loaded.options.max_steps.unwrap_or_else(|| default_max_steps(&loaded.ring));
    let mut out = Vec::new();
    for (name, m) in loaded.modules.iter().filter(|(n, _)| only.is_none_or(|o| o == n.as_str())) {
        let res = resolve(m, steps)?;
        let computed = res.computed();
        let ranks = (0..=computed.len()).map(|i| res.rank(i).expect("computed")).collect();
        out.push(ResolveOutput {
            name: name.clone(),
            ranks,
            differentials: computed.iter().map(|d| d.to_strings()).collect(),
            stabilization: res.stabilization().map(|s| StabilizationOutput {
                index: s.index,
                a: s.factorization.a().to_strings(),
                b: s.factorization.b().to_strings(),
            }),
        });
    }
    cli.emit(&out)
}

fn cmd_experiment(cli: &Cli, path: Option<&Path>) -> Result<(), Failure> {
    let mut config = match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
            ExperimentConfig::from_json(&text)?
        }
        None => ExperimentConfig::bundled(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if cli.max_steps.is_some() {
        config.options.max_steps = cli.max_steps;
    }
    if cli.assume_stable_at.is_some() {
        config.options.assume_stable_at = cli.assume_stable_at;
    }
    let sweep = run_sweep(&config)?;
    let csv = sweep.csv();
    let summary = ExperimentOutput {
        records: sweep.records.len(),
        hash: sweep.hash.clone(),
        hypothesis_failures: sweep.hypothesis_failures(),
        audits_failed: sweep.audits.iter().filter(|a| !a.passed).count(),
        audits: sweep.audits.clone(),
    };
    let summary_text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    match &cli.output {
        Some(p) => {
            fs::write(p, &csv).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
            println!("{summary_text}");
        }
        None => {
            print!("{csv}");
            eprintln!("{summary_text}");
        }
    }
    if summary.audits_failed > 0 {
        return Err(Failure {
            code: 3,
            message: format!("{} audits failed", summary.audits_failed),
        });
    }
    if summary.hypothesis_failures > 0 {
        return Err(Failure {
            code: 2,
            message: format!("θ undefined for {} pairs", summary.hypothesis_failures),
        });
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Theta { job } => cmd_theta(cli, job),
        Command::Sing { f } => cmd_sing(cli, f),
        Command::MfVerify { job, deep } => cmd_mf_verify(cli, job, *deep),
        Command::Resolve { job, module } => cmd_resolve(cli, job, module.as_deref()),
        Command::Experiment { config } => cmd_experiment(cli, config.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
