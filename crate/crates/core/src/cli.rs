//! The `bmrel` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 resource budget exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::abelian::{abelianization, classify_by_abelianization};
use crate::config::{JobConfig, OutputDigest, RunReport};
use crate::error::{Error, Result};
use crate::group::{parse_certificate, parse_presentation, preset, BMPresentation, Word};
use crate::psi::{build_level, kimberley_count, BuildOptions, RelationLevel, DEFAULT_MAX_BETA};
use crate::search::{all_relations, count_relations, SearchOptions};
use crate::square::{all_squares, Ambient};
use crate::store::{level_path, load_level, save_level, sha256_hex, verify_level_text};

#[derive(Parser, Debug)]
#[command(name = "bmrel", version, about = "Enumerate and analyse BM relations and BM groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct JobArgs {
    /// Worker threads [default: $BMREL_JOBS, else available parallelism]
    #[arg(long, short = 'j')]
    jobs: Option<usize>,
}

#[derive(clap::Args, Debug)]
struct GroupArgs {
    /// Built-in presentation: gamma4, gamma30, gamma5 or gamma10
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    preset: Option<String>,
    /// Presentation file with one relator per line or `;`-separated
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Invariant {
    Abelianization,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every geometric square of GS(α,β), one per line
    Gs { alpha: usize, beta: usize },
    /// Count or materialise R(α,β)
    Enum {
        alpha: usize,
        beta: usize,
        /// Print the count without keeping the relations
        #[arg(long, conflicts_with = "out")]
        count_only: bool,
        /// Write the level file here
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        job: JobArgs,
        /// Fail with exit code 3 once more relations than this are found
        #[arg(long)]
        max_solutions: Option<u64>,
        /// Byte budget for materialised relations
        #[arg(long)]
        memory_cap: Option<u64>,
        /// Write a JSON run report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build R(1,β) levels iteratively with ψ
    Psi {
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Level file holding the complete R(1,from); computed when absent
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Directory for r1_<β>.bm files
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Print counts only; levels beyond the materialisation limit are counted by the recurrence
        #[arg(long, conflicts_with = "out_dir")]
        count_only: bool,
        #[command(flatten)]
        job: JobArgs,
    },
    /// Check a level file for tampering
    Verify { file: PathBuf },
    /// Normal form of a word; prints an empty line for the identity
    Nf {
        #[command(flatten)]
        group: GroupArgs,
        /// Word in letter syntax, e.g. "a1 b2 A1"
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Abelianization as Z^r ⊕ Z/d1 ⊕ …
    Abelianize {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Verify an isomorphism certificate
    CheckIso { cert: PathBuf },
    /// Partition R(α,β) by an invariant and print the class sizes
    Classify {
        alpha: usize,
        beta: usize,
        #[arg(long, value_enum, default_value_t = Invariant::Abelianization)]
        invariant: Invariant,
        #[command(flatten)]
        job: JobArgs,
    },
}

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return e.exit_code();
        }
    };
    let echo = argv.iter().map(|a| a.to_string_lossy()).collect::<Vec<_>>().join(" ");
    match dispatch(cli.command, &echo, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn jobs(args: &JobArgs) -> Result<usize> {
    JobConfig::resolve_jobs(args.jobs)
}

fn dispatch(cmd: Command, echo: &str, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Gs { alpha, beta } => {
            let ambient = Ambient::new(alpha, beta)?;
            for s in all_squares(ambient) {
                writeln!(out, "{s}")?;
            }
            Ok(0)
        }
        Command::Enum { alpha, beta, count_only, out: path, job, max_solutions, memory_cap, report } => {
            let cfg = JobConfig {
                jobs: jobs(&job)?,
                memory_cap,
                materialize: path.is_some(),
                count_only: count_only || path.is_none(),
                output_path: path,
                verify: false,
            };
            cmd_enum(Ambient::new(alpha, beta)?, &cfg, max_solutions, report.as_deref(), echo, out)
        }
        Command::Psi { from, to, input, out_dir, count_only, job } => {
            cmd_psi(from, to, input.as_deref(), out_dir.as_deref(), count_only, jobs(&job)?, out)
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(&file)?;
            match verify_level_text(&text) {
                Ok(h) => {
                    writeln!(out, "OK R{} count={} sha256={}", h.ambient, h.count, sha256_hex(text.as_bytes()))?;
                    Ok(0)
                }
                Err(Error::Corrupt(msg)) => {
                    writeln!(out, "FAILED: {msg}")?;
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Command::Nf { group, word } => {
            let p = load_group(&group)?;
            let w = word.parse::<Word>().or_else(|_| Word::parse_abcd(&word))?;
            writeln!(out, "{}", p.normal_form(&w)?)?;
            Ok(0)
        }
        Command::Abelianize { group } => {
            writeln!(out, "{}", abelianization(&load_group(&group)?)?)?;
            Ok(0)
        }
        Command::CheckIso { cert } => cmd_check_iso(&cert, out),
        Command::Classify { alpha, beta, invariant: Invariant::Abelianization, job } => {
            let jobs = jobs(&job)?;
            let rels = all_relations(Ambient::new(alpha, beta)?, &SearchOptions { jobs, max_solutions: None })?;
            writeln!(out, "R({alpha},{beta}) = {}", rels.len())?;
            write!(out, "{}", classify_by_abelianization(&rels, jobs)?)?;
            Ok(0)
        }
    }
}

fn cmd_enum(
    ambient: Ambient,
    cfg: &JobConfig,
    max_solutions: Option<u64>,
    report_path: Option<&Path>,
    echo: &str,
    out: &mut dyn Write,
) -> Result<i32> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = RunReport::new(echo);
    let label = format!("R({},{})", ambient.alpha, ambient.beta);
    let count = match &cfg.output_path {
        Some(path) => {
            let cap = match (max_solutions, cfg.solution_cap(ambient)) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            let rels = all_relations(ambient, &SearchOptions { jobs: cfg.jobs, max_solutions: cap })?;
            let digest = save_level(path, ambient, &rels)?;
            report.outputs.push(OutputDigest {
                path: path.display().to_string(),
                sha256: digest,
                relations: rels.len() as u64,
            });
            rels.len() as u64
        }
        None => count_relations(ambient, &SearchOptions { jobs: cfg.jobs, max_solutions })?,
    };
    writeln!(out, "{label} = {count}")?;
    report.counts.push((label, count.to_string()));
    report.finish(start.elapsed());
    if let Some(p) = report_path {
        std::fs::write(p, report.to_json() + "\n")?;
    }
    Ok(0)
}

fn cmd_psi(
    from: usize,
    to: usize,
    input: Option<&Path>,
    out_dir: Option<&Path>,
    count_only: bool,
    jobs: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    if to < from {
        return Err(Error::Parse(format!("--to {to} is smaller than --from {from}")));
    }
    let ambient = Ambient::new(1, from)?;
    if !count_only && to > DEFAULT_MAX_BETA {
        return Err(Error::BudgetExceeded(format!(
            "materialising R(1,{to}) exceeds the limit β ≤ {DEFAULT_MAX_BETA}; use --count-only"
        )));
    }
    let mut level = match input {
        Some(path) => {
            let (header, rels) = load_level(path)?;
            if header.ambient != ambient {
                return Err(Error::Corrupt(format!(
                    "{} holds R{}, expected R{ambient}",
                    path.display(),
                    header.ambient
                )));
            }
            let complete = kimberley_count(from);
            if rels.len() as u64 != u64::try_from(&complete).unwrap_or(u64::MAX) {
                return Err(Error::Corrupt(format!(
                    "{} is incomplete: {} relations, R(1,{from}) has {complete}",
                    path.display(),
                    rels.len()
                )));
            }
            RelationLevel::new(from, rels)?
        }
        None if from == 1 => RelationLevel::base(),
        None => RelationLevel::new(from, all_relations(ambient, &SearchOptions { jobs, max_solutions: None })?)?,
    };
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
    }
    let save = |level: &RelationLevel, out: &mut dyn Write| -> Result<()> {
        if let Some(dir) = out_dir {
            let path = level_path(dir, level.beta());
            let digest = save_level(&path, Ambient::new(1, level.beta())?, level.relations())?;
            writeln!(out, "wrote {} sha256={digest}", path.display())?;
        }
        Ok(())
    };
    writeln!(out, "R(1,{from}) = {}", level.len())?;
    save(&level, out)?;
    let opts = BuildOptions { jobs, max_beta: DEFAULT_MAX_BETA };
    let mut count = num_bigint::BigUint::from(level.len());
    for beta in from..to {
        let factor = 3 + 2 * beta;
        let next = if beta < DEFAULT_MAX_BETA {
            level = build_level(&level, &opts)?;
            save(&level, out)?;
            num_bigint::BigUint::from(level.len())
        } else {
            &count * factor
        };
        let status = if next == &count * factor { "ok" } else { "MISMATCH" };
        writeln!(out, "R(1,{}) = {next}", beta + 1)?;
        writeln!(out, "(3+2·{beta})·|R(1,{beta})| = |R(1,{})|: {factor}·{count} = {next} {status}", beta + 1)?;
        if status != "ok" {
            return Ok(1);
        }
        count = next;
    }
    Ok(0)
}

fn load_group(args: &GroupArgs) -> Result<BMPresentation> {
    match (&args.preset, &args.file) {
        (Some(name), _) => preset(name),
        (None, Some(path)) => parse_presentation(&std::fs::read_to_string(path)?),
        (None, None) => Err(Error::Parse("one of --preset or --file is required".into())),
    }
}

fn resolve_group(spec: &str, base: &Path) -> Result<BMPresentation> {
    match preset(spec) {
        Ok(p) => Ok(p),
        Err(_) => {
            let path = base.join(spec);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("{spec:?} is neither a preset nor a readable file: {e}")))?;
            parse_presentation(&text)
        }
    }
}

fn cmd_check_iso(cert: &Path, out: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(cert)?;
    let base = cert.parent().unwrap_or(Path::new("."));
    let certificate = parse_certificate(&text, |s| resolve_group(s, base))?;
    match certificate.check()? {
        Ok(()) => {
            writeln!(out, "VERIFIED")?;
            Ok(0)
        }
        Err(failure) => {
            writeln!(out, "FAILED: {}", failure)?;
            Ok(1)
        }
    }
}
