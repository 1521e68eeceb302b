mod commands;
mod driver;
mod job;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pgroup_core::format::source_digest;

use job::{Command, Failure, JobConfig};

#[derive(Parser)]
#[command(name = "pgroup", version, args_conflicts_with_subcommands = true, about = "p-quotients, covering groups and Schur multipliers of finitely presented groups")]
struct Cli {
    /// Run the job described in a TOML job file.
    #[arg(long, value_name = "FILE")]
    job: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate candidate words for an exponent law.
    Words(WordsArgs),
    /// Compute a p-quotient class by class.
    Pq(QuotientArgs),
    /// Compute the p-covering group of a p-quotient.
    Cover(QuotientArgs),
    /// Compute the Schur multiplier from a central extension.
    Multiplier(ExtensionArgs),
    /// Orders of elements in a quotient of a central extension.
    Order(ExtensionArgs),
    /// Greedy search for power relators imposing an exponent law.
    Minimize(MinimizeArgs),
    /// Membership of elements in a lower central series term.
    Gamma(GammaArgs),
    /// Continue the job stored in a checkpoint directory.
    Resume(ResumeArgs),
}

#[derive(Args)]
struct WordsArgs {
    #[arg(long)]
    rank: u32,
    #[arg(long)]
    length: usize,
    /// Forbidden power: words containing `x^p` are skipped.
    #[arg(long)]
    prime: u32,
    /// Keep proper powers of shorter words.
    #[arg(long)]
    stated_rules: bool,
    /// Write the word list here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Common {
    /// Presentation file.
    #[arg(long = "pres", value_name = "FILE")]
    presentation: PathBuf,
    #[arg(long)]
    prime: u32,
    /// p-class cap (0 runs to termination).
    #[arg(long)]
    class: Option<u32>,
    /// Checkpoint directory; an existing checkpoint for the same job is resumed.
    #[arg(long, value_name = "DIR")]
    checkpoint: Option<PathBuf>,
    /// Also write the report here.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Wall-clock budget in seconds; exceeding it stops at the next checkpoint.
    #[arg(long, value_name = "SECS")]
    budget: Option<f64>,
    /// Memory advisory recorded in the report (not enforced).
    #[arg(long, value_name = "MB")]
    memory_mb: Option<u64>,
}

#[derive(Args)]
struct QuotientArgs {
    #[command(flatten)]
    common: Common,
    /// Impose the exponent law x^n = 1.
    #[arg(long)]
    exponent: Option<u64>,
}

#[derive(Args)]
struct ExtensionArgs {
    #[command(flatten)]
    common: Common,
    /// Relator numbers (from 1) imposed directly instead of made central.
    #[arg(long, value_delimiter = ',')]
    retain: Vec<usize>,
    /// Treat the base as its quotient of class one less than the cap.
    #[arg(long)]
    truncate_base: bool,
    /// Element expression over the presentation's generators.
    #[arg(long = "target")]
    targets: Vec<String>,
}

#[derive(Args)]
struct GammaArgs {
    #[command(flatten)]
    ext: ExtensionArgs,
    #[arg(long)]
    k: usize,
    /// Work in the central extension instead of the presented group.
    #[arg(long)]
    extension: bool,
}

#[derive(Args)]
struct MinimizeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    exponent: u64,
    #[arg(long)]
    from: u32,
    #[arg(long)]
    to: Option<u32>,
    /// Candidate word length (defaults to the last class).
    #[arg(long)]
    length: Option<usize>,
}

#[derive(Args)]
struct ResumeArgs {
    dir: PathBuf,
    /// Replace the stored wall-clock budget.
    #[arg(long, value_name = "SECS")]
    budget: Option<f64>,
}

fn common_job(command: Command, c: Common) -> JobConfig {
    let mut job = JobConfig::new(command);
    job.presentation = Some(c.presentation);
    job.prime = Some(c.prime);
    job.class = c.class;
    job.checkpoint = c.checkpoint;
    job.output = c.output;
    job.budget_secs = c.budget;
    job.memory_mb = c.memory_mb;
    job
}

fn extension_job(command: Command, a: ExtensionArgs) -> JobConfig {
    let mut job = common_job(command, a.common);
    job.retain = a.retain;
    job.truncate_base = a.truncate_base;
    job.targets = a.targets;
    job.extension = command != Command::Gamma;
    job
}

fn to_job(cmd: Cmd) -> Result<JobConfig, Failure> {
    Ok(match cmd {
        Cmd::Words(a) => {
            let mut job = JobConfig::new(Command::Words);
            job.rank = Some(a.rank);
            job.length = Some(a.length);
            job.prime = Some(a.prime);
            job.stated_rules = a.stated_rules;
            job.output = a.output;
            job
        }
        Cmd::Pq(a) => {
            let mut job = common_job(Command::Pq, a.common);
            job.exponent = a.exponent;
            job
        }
        Cmd::Cover(a) => {
            let mut job = common_job(Command::Cover, a.common);
            job.exponent = a.exponent;
            job
        }
        Cmd::Multiplier(a) => extension_job(Command::Multiplier, a),
        Cmd::Order(a) => extension_job(Command::Order, a),
        Cmd::Gamma(a) => {
            let mut job = extension_job(Command::Gamma, a.ext);
            job.gamma = Some(a.k);
            job.extension = a.extension;
            job
        }
        Cmd::Minimize(a) => {
            let mut job = common_job(Command::Minimize, a.common);
            job.exponent = Some(a.exponent);
            job.class_from = Some(a.from);
            job.class_to = a.to;
            job.length = a.length;
            job
        }
        Cmd::Resume(a) => {
            let path = a.dir.join("job.toml");
            let mut job = JobConfig::from_file(&path)?;
            if a.budget.is_some() {
                job.budget_secs = a.budget;
            }
            job.checkpoint = Some(a.dir);
            job
        }
    })
}

/// Creates or reopens the checkpoint directory and records the job in it.
fn prepare_checkpoint(job: &mut JobConfig) -> Result<(), Failure> {
    let Some(dir) = job.checkpoint.clone() else {
        return Ok(());
    };
    fs::create_dir_all(&dir)
        .map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
    if let Some(p) = &job.presentation {
        let abs = fs::canonicalize(p)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", p.display())))?;
        job.presentation = Some(abs);
    }
    if let Some(out) = job.output.as_mut().filter(|o| o.is_relative()) {
        let cwd = std::env::current_dir()
            .map_err(|e| Failure::input(format!("no working directory: {e}")))?;
        *out = cwd.join(&*out);
    }
    let path = dir.join("job.toml");
    if path.exists() {
        let stored = JobConfig::from_file(&path)?;
        if !stored.same_work(job) {
            return Err(Failure::input(format!(
                "{} holds a checkpoint for a different job",
                dir.display()
            )));
        }
        job.input_digest = stored.input_digest;
    }
    let pres = job.load_presentation()?;
    job.input_digest = Some(source_digest(&pres));
    let mut stored = job.clone();
    stored.checkpoint = None;
    driver::write_atomic(&path, &stored.to_toml())
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut job = match (cli.job, cli.command) {
        (Some(path), _) => JobConfig::from_file(&path)?,
        (None, Some(cmd)) => to_job(cmd)?,
        (None, None) => return Err(Failure::Usage("give a subcommand or --job FILE".into())),
    };
    if job.command != Command::Words {
        prepare_checkpoint(&mut job)?;
    }
    commands::execute(&job)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("pgroup: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
