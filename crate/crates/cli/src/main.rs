//! `verify` — command-line runner for the DSER commutator verification suite.
//!
//! Exit codes: 0 when every checked case matches a recorded right-hand side,
//! 1 when any case matches neither, 2 on configuration errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use dser_core::identities::{
    verify_suite, IdentityError, LemmaId, Mode, RingChoice, SuiteConfig, SuiteReport, ALL_LEMMAS,
};

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    version,
    about = "Verify DSER elementary-orthogonal commutator identities"
)]
struct Args {
    /// Lemmas to check: "all" or a comma-separated list of ids (e.g. l01,c03,l13)
    #[arg(long = "lemma", default_value = "all", value_delimiter = ',')]
    lemma: Vec<String>,

    /// Coefficient ring for randomized trials: "rationals" or "zmod:P" (P an odd prime)
    #[arg(long, default_value = "zmod:10007")]
    ring: String,

    /// Rank of the free module P (number of hyperbolic coordinate pairs)
    #[arg(long, default_value_t = 4)]
    m: usize,

    /// Rank of the diagonal quadratic space Q
    #[arg(long, default_value_t = 3)]
    n: usize,

    /// Seed for the deterministic random instance generator (ChaCha8)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Randomized trials per lemma branch
    #[arg(long, default_value_t = 8)]
    trials: usize,

    /// Verification mode: symbolic, random, or both
    #[arg(long, default_value = "random")]
    mode: String,

    /// Report format: json or markdown
    #[arg(long, default_value = "json")]
    format: String,

    /// Write the report to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Deliberately corrupt one closed form (negative control; must fail)
    #[arg(long, default_value_t = false)]
    negative_control: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Markdown,
}

struct ConfigError(String);

impl From<String> for ConfigError {
    fn from(s: String) -> ConfigError {
        ConfigError(s)
    }
}

#[derive(Serialize)]
struct Meta {
    version: String,
    timestamp: String,
    lemmas: Vec<String>,
    ring: String,
    m: usize,
    n: usize,
    seed: u64,
    trials: usize,
    mode: String,
    negative_control: bool,
}

#[derive(Serialize)]
struct Document<'a> {
    meta: Meta,
    lemmas: &'a [dser_core::identities::LemmaReport],
    failures: &'a [dser_core::identities::VerdictRecord],
}

fn parse_lemmas(raw: &[String]) -> Result<Vec<LemmaId>, ConfigError> {
    let mut out = Vec::new();
    for item in raw {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        if item.eq_ignore_ascii_case("all") {
            for &l in &ALL_LEMMAS {
                if !out.contains(&l) {
                    out.push(l);
                }
            }
            continue;
        }
        let id = LemmaId::parse(item)
            .ok_or_else(|| format!("unknown lemma id {item:?} (expected e.g. L01, c03, all)"))?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    if out.is_empty() {
        return Err("empty lemma filter: nothing to verify".to_string().into());
    }
    Ok(out)
}

fn parse_ring(raw: &str) -> Result<RingChoice, ConfigError> {
    let raw = raw.trim();
    if raw.eq_ignore_ascii_case("rationals") || raw.eq_ignore_ascii_case("q") {
        return Ok(RingChoice::Rationals);
    }
    if let Some(num) = raw
        .strip_prefix("zmod:")
        .or_else(|| raw.strip_prefix("ZMOD:"))
    {
        let p: u64 = num
            .parse()
            .map_err(|_| format!("invalid modulus {num:?} in --ring"))?;
        // Validate primality eagerly so bad moduli are a configuration error.
        dser_core::ring::Ring::modular(p)
            .map_err(|e| format!("--ring zmod:{p}: {e}"))?;
        return Ok(RingChoice::Modular(p));
    }
    Err(format!("unknown ring {raw:?} (expected \"rationals\" or \"zmod:P\")").into())
}

fn parse_mode(raw: &str) -> Result<Mode, ConfigError> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "symbolic" => Ok(Mode::Symbolic),
        "random" => Ok(Mode::Random),
        "both" => Ok(Mode::Both),
        other => Err(format!("unknown mode {other:?} (expected symbolic, random, or both)").into()),
    }
}

fn parse_format(raw: &str) -> Result<Format, ConfigError> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "json" => Ok(Format::Json),
        "markdown" | "md" => Ok(Format::Markdown),
        other => Err(format!("unknown format {other:?} (expected json or markdown)").into()),
    }
}

fn build_config(args: &Args) -> Result<(SuiteConfig, Format), ConfigError> {
    let lemmas = parse_lemmas(&args.lemma)?;
    let ring = parse_ring(&args.ring)?;
    let mode = parse_mode(&args.mode)?;
    let format = parse_format(&args.format)?;
    if args.n < 1 {
        return Err("--n must be at least 1".to_string().into());
    }
    if matches!(mode, Mode::Random | Mode::Both) && args.trials < 1 {
        return Err("--trials must be at least 1 in random mode".to_string().into());
    }
    for &lemma in &lemmas {
        if args.m < lemma.required_m() {
            return Err(format!(
                "--m {} is too small for {lemma}: its widest branch needs {} distinct row \
                 indices, so some branches are unreachable at m={}",
                args.m,
                lemma.required_m(),
                args.m
            )
            .into());
        }
    }
    Ok((
        SuiteConfig {
            lemmas,
            ring,
            m: args.m,
            n: args.n,
            seed: args.seed,
            trials: args.trials,
            mode,
            negative_control: args.negative_control,
        },
        format,
    ))
}

fn meta_of(cfg: &SuiteConfig, args: &Args) -> Meta {
    Meta {
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339(),
        lemmas: cfg.lemmas.iter().map(|l| l.name().to_string()).collect(),
        ring: match cfg.ring {
            RingChoice::Rationals => "rationals".to_string(),
            RingChoice::Modular(p) => format!("zmod:{p}"),
        },
        m: cfg.m,
        n: cfg.n,
        seed: cfg.seed,
        trials: cfg.trials,
        mode: match cfg.mode {
            Mode::Symbolic => "symbolic",
            Mode::Random => "random",
            Mode::Both => "both",
        }
        .to_string(),
        negative_control: args.negative_control,
    }
}

fn render_markdown(meta: &Meta, report: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# DSER commutator verification report\n");
    let _ = writeln!(
        out,
        "- ring: `{}`, m = {}, n = {}, seed = {}, trials = {}, mode = {}",
        meta.ring, meta.m, meta.n, meta.seed, meta.trials, meta.mode
    );
    let _ = writeln!(out, "- generated: {} (v{})", meta.timestamp, meta.version);
    let _ = writeln!(
        out,
        "- cases: {} total, {} matched neither recorded form\n",
        report.total_cases, report.neither_count
    );
    let _ = writeln!(
        out,
        "| lemma | branch | cases | both | proof only | statement only | neither | absent |"
    );
    let _ = writeln!(out, "|---|---|---:|---:|---:|---:|---:|---:|");
    for lemma in &report.lemmas {
        for b in &lemma.branches {
            let _ = writeln!(
                out,
                "| {} | `{}` | {} | {} | {} | {} | {} | {} |",
                lemma.id,
                b.predicate,
                b.cases,
                b.matches_both,
                b.matches_proof_only,
                b.matches_statement_only,
                b.matches_neither,
                b.statement_absent
            );
        }
    }
    if !report.failures.is_empty() {
        let _ = writeln!(out, "\n## Failures\n");
        for f in &report.failures {
            let _ = writeln!(
                out,
                "### {} [{}] {} ({}{})\n",
                f.lemma,
                f.branch,
                f.indices,
                f.mode,
                f.trial.map(|t| format!(", trial {t}")).unwrap_or_default()
            );
            let _ = writeln!(out, "oracle:\n```\n{}\n```", f.lhs);
            if let Some(s) = &f.rhs_statement {
                let _ = writeln!(out, "statement form:\n```\n{s}\n```");
            }
            if let Some(p) = &f.rhs_proof {
                let _ = writeln!(out, "proof form:\n```\n{p}\n```");
            }
        }
    }
    out
}

fn emit(args: &Args, text: &str) -> Result<(), String> {
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(args: &Args) -> Result<ExitCode, ConfigError> {
    if let Ok(threads) = std::env::var("DSER_THREADS") {
        let threads: usize = threads
            .parse()
            .map_err(|_| format!("DSER_THREADS must be a positive integer, got {threads:?}"))?;
        // Ignore pool-build races (e.g. when the pool already exists in tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let (cfg, format) = build_config(args)?;
    let report = match verify_suite(&cfg) {
        Ok(report) => report,
        Err(IdentityError::RankTooSmall {
            lemma,
            m,
            required,
            branch,
        }) => {
            return Err(format!(
                "{lemma}: branch \"{branch}\" is unreachable at m={m} (needs m >= {required})"
            )
            .into())
        }
        Err(other) => return Err(format!("verification failed: {other}").into()),
    };
    let meta = meta_of(&cfg, args);
    let text = match format {
        Format::Json => {
            let doc = Document {
                meta,
                lemmas: &report.lemmas,
                failures: &report.failures,
            };
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Markdown => render_markdown(&meta, &report),
    };
    emit(args, &text).map_err(ConfigError)?;
    Ok(if report.all_confirmed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
