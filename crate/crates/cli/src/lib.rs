//! Command implementations behind the `eggert` binary.

pub mod spec;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use eggert::algebras::contracted_algebra;
use eggert::explorer::{
    best_records, registry_ids, run_search, verify_known, AlgebraRelators, GeneratorSets,
    SchemeTag, SearchConfig, Verification,
};
use eggert::powermaps::{eggert_report, identity_check_4_5, question_probe, QuestionMode};
use eggert::PrimeField;

use spec::{parse_document, parse_probe, SpecDocument, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_ANOMALY: i32 = 3;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug)]
#[command(
    name = "eggert",
    version,
    about = "Power maps of nilpotent algebras and semigroups over GF(p)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the registered verifications.
    VerifyPaper(VerifyArgs),
    /// Sweep numerical presentations and report deficits as JSON lines.
    Search(SearchArgs),
    /// Eggert report for a semigroup or algebra spec.
    Report(ReportArgs),
    /// Check the alternating subset-sum identity.
    Identity(IdentityArgs),
    /// Explore one of the power-map questions on a spec.
    Probe(ProbeArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub json: bool,
    /// Run a single registered id.
    #[arg(long)]
    pub only: Option<String>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Explicit generator set, comma separated; repeatable.
    #[arg(long, value_delimiter = ';')]
    pub gens: Vec<String>,
    /// Sweep generator pairs a < b <= this value.
    #[arg(long, conflicts_with = "gens")]
    pub pairs_max: Option<u64>,
    /// Include pairs that are not coprime.
    #[arg(long, requires = "pairs_max")]
    pub all_pairs: bool,
    /// Smallest bound; defaults to --bound-max.
    #[arg(long)]
    pub bound_min: Option<u64>,
    #[arg(long)]
    pub bound_max: u64,
    #[arg(long, default_value_t = 2)]
    pub exponent: u64,
    /// Comma separated: none, identify, collapse, identify_pair.
    #[arg(long, value_delimiter = ',', default_value = "none,identify,collapse")]
    pub scheme: Vec<String>,
    #[arg(long)]
    pub allow_multi: bool,
    /// Algebra relator coefficients, e.g. 1,-2,1; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub relator: Vec<String>,
    /// Prime for --relator sweeps; defaults to the exponent.
    #[arg(long)]
    pub field_prime: Option<u64>,
    #[arg(long)]
    pub top: Option<usize>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub fail_on_positive: bool,
    #[arg(long)]
    pub cross_check: bool,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, required_unless_present = "dump_spec")]
    pub exponent: Option<u64>,
    /// Print the parsed spec in canonical form and exit.
    #[arg(long)]
    pub dump_spec: bool,
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Question {
    V,
    W,
    U,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, value_enum)]
    pub question: Question,
    #[arg(long, default_value_t = 1 << 20)]
    pub cap: u128,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Spec { path: String, source: SpecError },
    #[error(transparent)]
    Library(#[from] eggert::Error),
    #[error("output: {0}")]
    Write(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_FAILED,
            CliError::Read { source, .. } if source.kind() == io::ErrorKind::NotFound => {
                EXIT_NO_INPUT
            }
            CliError::Read { .. } | CliError::Write(_) => EXIT_IO,
            CliError::Spec { .. } | CliError::Library(_) => EXIT_DATA,
        }
    }
}

fn read_spec(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn spec_err(path: &Path) -> impl Fn(SpecError) -> CliError + '_ {
    move |source| CliError::Spec {
        path: path.display().to_string(),
        source,
    }
}

pub fn config_hash<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("configs serialize");
    hex::encode(Sha256::digest(&bytes))
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::VerifyPaper(a) => verify_paper(a, out),
        Command::Search(a) => search(a, out),
        Command::Report(a) => report(a, out),
        Command::Identity(a) => identity(a, out),
        Command::Probe(a) => probe(a, out),
    }
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    command: &'a str,
    config_hash: String,
    checks: Vec<Verification>,
    passed: bool,
    wall_time_ms: u128,
}

#[derive(Serialize)]
struct VerifyEcho<'a> {
    command: &'a str,
    only: &'a Option<String>,
}

fn verify_paper(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let ids: Vec<&str> = match &a.only {
        Some(id) if registry_ids().contains(&id.as_str()) => vec![id.as_str()],
        Some(id) => {
            return Err(CliError::Usage(format!(
                "unknown id {id:?}; registered: {}",
                registry_ids().join(", ")
            )))
        }
        None => registry_ids(),
    };
    let checks = ids
        .iter()
        .map(|id| verify_known(id))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = checks.iter().all(|v| v.passed);
    if a.json {
        let doc = ReportDocument {
            command: "verify-paper",
            config_hash: config_hash(&VerifyEcho {
                command: "verify-paper",
                only: &a.only,
            }),
            checks,
            passed,
            wall_time_ms: start.elapsed().as_millis(),
        };
        write_json(out, &doc)?;
    } else {
        for v in &checks {
            let status = if v.passed { "PASS" } else { "FAIL" };
            let ok = v.checks.iter().filter(|c| c.passed).count();
            writeln!(
                out,
                "{status}  {:<20} {:>3}/{:<3} {}",
                v.id,
                ok,
                v.checks.len(),
                v.title
            )?;
            for c in v.checks.iter().filter(|c| !c.passed) {
                writeln!(
                    out,
                    "        {}: expected {}, computed {}",
                    c.name, c.expected, c.computed
                )?;
            }
            if let Some(note) = &v.note {
                writeln!(out, "        note: {note}")?;
            }
        }
        let failed = checks.iter().filter(|v| !v.passed).count();
        writeln!(
            out,
            "{} of {} passed in {} ms",
            checks.len() - failed,
            checks.len(),
            start.elapsed().as_millis()
        )?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

fn parse_list(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("bad {what} entry {t:?}")))
        })
        .collect()
}

pub fn search_config(a: &SearchArgs) -> Result<SearchConfig, CliError> {
    let generator_sets = match (a.pairs_max, a.gens.is_empty()) {
        (Some(max), _) => GeneratorSets::Pairs {
            max,
            coprime_only: !a.all_pairs,
        },
        (None, false) => {
            let sets = a
                .gens
                .iter()
                .map(|g| {
                    let v = parse_list(g, "generator")?;
                    if v.iter().any(|&x| x <= 0) {
                        return Err(CliError::Usage("generators must be positive".into()));
                    }
                    Ok(v.into_iter().map(|x| x as u64).collect())
                })
                .collect::<Result<Vec<Vec<u64>>, _>>()?;
            GeneratorSets::Explicit(sets)
        }
        (None, true) => return Err(CliError::Usage("give --gens or --pairs-max".into())),
    };
    let schemes = a
        .scheme
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<SchemeTag>()
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let algebra_relators = if a.relator.is_empty() {
        None
    } else {
        let templates = a
            .relator
            .iter()
            .map(|r| parse_list(r, "relator"))
            .collect::<Result<Vec<_>, _>>()?;
        Some(AlgebraRelators {
            p: a.field_prime.unwrap_or(a.exponent),
            templates,
        })
    };
    let workers = a
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = SearchConfig {
        generator_sets,
        bound_min: a.bound_min.unwrap_or(a.bound_max),
        bound_max: a.bound_max,
        exponent: a.exponent,
        schemes,
        allow_multi: a.allow_multi,
        algebra_relators,
        cross_check: a.cross_check,
        seed: a.seed,
        top_k: a.top,
        workers,
        ..SearchConfig::default()
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

#[derive(Serialize)]
struct SummaryLine {
    summary: eggert::explorer::SearchSummary,
    config_hash: String,
}

fn search(a: SearchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = search_config(&a)?;
    let records = run_search(&cfg)?;
    let k = cfg.top_k.unwrap_or(records.len());
    let (top, summary) = best_records(&records, k);
    for r in top {
        write_json(out, r)?;
    }
    // The worker count does not change the output, so it is left out of the hash.
    let hashed = SearchConfig {
        workers: 1,
        ..cfg.clone()
    };
    let anomalies = summary.anomalies;
    write_json(
        out,
        &SummaryLine {
            summary,
            config_hash: config_hash(&hashed),
        },
    )?;
    Ok(if a.fail_on_positive && anomalies > 0 {
        EXIT_ANOMALY
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct SemigroupReport {
    card_s: usize,
    card_image: usize,
    deficit: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    algebra: Option<eggert::powermaps::EggertReport>,
}

fn report(a: ReportArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = read_spec(&a.spec)?;
    let doc = parse_document(&text).map_err(spec_err(&a.spec))?;
    if a.dump_spec {
        write_json(out, &doc)?;
        return Ok(EXIT_OK);
    }
    let n = a
        .exponent
        .expect("clap requires --exponent without --dump-spec");
    if n == 0 {
        return Err(CliError::Usage("--exponent must be positive".into()));
    }
    match &doc {
        SpecDocument::Algebra(spec) => {
            let alg = spec.build().map_err(spec_err(&a.spec))?;
            write_json(out, &eggert_report(&alg, n)?)?;
        }
        SpecDocument::Semigroup(spec) => {
            let s = spec.build().map_err(spec_err(&a.spec))?;
            let algebra = match PrimeField::new(n) {
                Ok(f) => Some(eggert_report(&contracted_algebra(&s, f), n)?),
                Err(_) => None,
            };
            write_json(
                out,
                &SemigroupReport {
                    card_s: s.card_nonzero(),
                    card_image: s.whole().power_subset(n).card_nonzero(),
                    deficit: s.deficit(n),
                    algebra,
                },
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn identity(a: IdentityArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let field = PrimeField::new(a.p).map_err(|e| CliError::Usage(e.to_string()))?;
    let check = identity_check_4_5(field, a.n).map_err(|e| match e {
        eggert::Error::CharTooSmall { .. } | eggert::Error::ZeroExponent => {
            CliError::Usage(e.to_string())
        }
        other => CliError::Library(other),
    })?;
    write_json(out, &check)?;
    Ok(if check.holds { EXIT_OK } else { EXIT_FAILED })
}

fn probe(a: ProbeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = read_spec(&a.spec)?;
    let spec = parse_probe(&text).map_err(spec_err(&a.spec))?;
    let (alg, sub) = spec.build().map_err(spec_err(&a.spec))?;
    let mode = match a.question {
        Question::V => QuestionMode::V,
        Question::W => QuestionMode::W,
        Question::U => QuestionMode::U {
            m: spec
                .m
                .ok_or_else(|| CliError::Usage("question u needs \"m\" in the spec".into()))?,
        },
    };
    let record = question_probe(&alg, &sub, spec.n, mode, a.cap)?;
    write_json(out, &record)?;
    Ok(EXIT_OK)
}
