//! Argument handling and rendering for the `ordmon` binary. Every command
//! calls straight into the library; this crate only parses and formats.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordmon::chain_maps::brute_force_enumerate;
use ordmon::congruence::CongruenceLimits;
use ordmon::normal_forms::{factorize_ic, normalize};
use ordmon::verification::{verify_pd_iso, verify_presentation_with, Verdict};
use ordmon::words::parse_word;
use ordmon::{cayley, ChainSize, Error, Family, PartialMap};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ordmon",
    version,
    about = "Order-decreasing transformation monoids on a finite chain"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the elements of a monoid.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Print only the number of elements.
        #[arg(long)]
        count: bool,
    },
    /// Rewrite a word to its normal form and show the derivation.
    Normalize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Check a presentation against its concrete monoid. `--family pd` checks
    /// the isomorphism PD_n -> D_{n+1}.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Sizes over a range of chain lengths.
    Count {
        #[command(flatten)]
        common: Common,
    },
    /// Right Cayley graph in DOT.
    Cayley {
        #[command(flatten)]
        common: Common,
    },
    /// Factorize a member of IC_n given by its image sequence (0 = undefined).
    Factorize {
        #[command(flatten)]
        common: Common,
        /// Comma-separated images, e.g. `0,1,2`.
        #[arg(long)]
        map: String,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// d, pd, id, c, ic, pc (or `all` for verify).
    #[arg(long)]
    pub family: Option<String>,
    /// Chain length `k` or inclusive range `a..b`.
    #[arg(long)]
    pub n: String,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub message: Option<String>,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            output: String::new(),
            message: Some(message.into()),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) | Error::Syntax { .. } | Error::UnsupportedFamily { .. } => EXIT_USAGE,
        Error::Resource(_) | Error::TerminationGuard { .. } => EXIT_RESOURCE,
        Error::Rewrite(_) => EXIT_FAIL,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome {
            code: exit_code(&e),
            output: String::new(),
            message: Some(e.to_string()),
        }
    }
}

pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{s}` is not a chain length"))
    };
    let range = match text.split_once("..") {
        Some((a, b)) => num(a)?..=num(b)?,
        None => {
            let k = num(text)?;
            k..=k
        }
    };
    if range.is_empty() || *range.start() == 0 {
        return Err(format!(
            "`{text}` is not a nonempty range of positive lengths"
        ));
    }
    Ok(range)
}

fn single_n(common: &Common) -> Result<ChainSize, Outcome> {
    let range = parse_range(&common.n).map_err(Outcome::usage)?;
    if range.start() != range.end() {
        return Err(Outcome::usage("this command takes a single --n"));
    }
    ChainSize::new(*range.start()).map_err(Outcome::from)
}

fn chain_sizes(common: &Common) -> Result<Vec<ChainSize>, Outcome> {
    parse_range(&common.n)
        .map_err(Outcome::usage)?
        .map(|k| ChainSize::new(k).map_err(Outcome::from))
        .collect()
}

fn family(common: &Common) -> Result<Family, Outcome> {
    match &common.family {
        Some(f) => f.parse().map_err(Outcome::from),
        None => Err(Outcome::usage("--family is required")),
    }
}

fn format(common: &Common, default: Format, allowed: &[Format]) -> Result<Format, Outcome> {
    let f = common.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Outcome::usage(
            format!("--format {f:?} is not available here").to_lowercase(),
        ))
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn ok(output: String) -> Outcome {
    Outcome {
        code: EXIT_OK,
        output,
        message: None,
    }
}

/// Runs one invocation. Output is not written anywhere; see [`emit`].
pub fn run(cli: &Cli) -> Outcome {
    if let Err(e) = ordmon::startup_checks() {
        return Outcome {
            code: EXIT_FAIL,
            output: String::new(),
            message: Some(format!("startup check failed: {e}")),
        };
    }
    match dispatch(cli) {
        Ok(o) | Err(o) => o,
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Outcome> {
    match &cli.command {
        Command::Enumerate { common, count } => {
            let fmt = format(common, Format::Text, &[Format::Json, Format::Text])?;
            let fam = family(common)?;
            let n = single_n(common)?;
            let all = brute_force_enumerate(fam, n)?;
            Ok(ok(render_elements(fam, n, &all, *count, fmt)))
        }
        Command::Normalize { common, word } => {
            let fmt = format(common, Format::Text, &[Format::Json, Format::Text])?;
            let fam = family(common)?;
            let n = single_n(common)?;
            let w = parse_word(word, fam, n)?;
            let (nf, d) = normalize(&w)?;
            let out = match fmt {
                Format::Json => pretty(&json!({
                    "input": w.to_string(),
                    "normal_form": nf.to_string(),
                    "derivation": d,
                })),
                _ => {
                    let mut s = format!("{nf}\n");
                    for step in &d.steps {
                        writeln!(
                            s,
                            "  {} at {} {:?}",
                            step.relation_id, step.position, step.direction
                        )
                        .unwrap();
                    }
                    s
                }
            };
            Ok(ok(out))
        }
        Command::Verify { common } => verify(common),
        Command::Count { common } => {
            let fmt = format(common, Format::Text, &[Format::Json, Format::Text])?;
            let fam = family(common)?;
            let mut rows = Vec::new();
            for n in chain_sizes(common)? {
                rows.push((n, brute_force_enumerate(fam, n)?.len()));
            }
            let out = match fmt {
                Format::Json => pretty(
                    &rows
                        .iter()
                        .map(|(n, c)| json!({"family": fam, "n": n, "count": c}))
                        .collect::<Vec<_>>(),
                ),
                _ => rows
                    .iter()
                    .map(|(n, c)| format!("{fam}_{n}\t{c}\n"))
                    .collect(),
            };
            Ok(ok(out))
        }
        Command::Cayley { common } => {
            format(common, Format::Dot, &[Format::Dot])?;
            let fam = family(common)?;
            let n = single_n(common)?;
            Ok(ok(cayley::cayley_dot(fam, n)?))
        }
        Command::Factorize { common, map } => {
            let fmt = format(common, Format::Text, &[Format::Json, Format::Text])?;
            if common.family.is_some() && family(common)? != Family::IC {
                return Err(Outcome::usage("factorize works on IC only"));
            }
            let n = single_n(common)?;
            let images = map
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Outcome::usage(format!("bad --map `{map}`")))?;
            let alpha = PartialMap::from_images(n, &images)?;
            let w = factorize_ic(&alpha)?;
            let out = match fmt {
                Format::Json => pretty(&json!({"map": alpha.to_string(), "word": w.to_string()})),
                _ => format!("{w}\n"),
            };
            Ok(ok(out))
        }
    }
}

fn render_elements(
    fam: Family,
    n: ChainSize,
    all: &[PartialMap],
    count_only: bool,
    fmt: Format,
) -> String {
    match (fmt, count_only) {
        (Format::Json, true) => pretty(&json!({"family": fam, "n": n, "count": all.len()})),
        (Format::Json, false) => pretty(&json!({
            "family": fam,
            "n": n,
            "count": all.len(),
            "elements": all.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        })),
        (_, true) => format!("{}\n", all.len()),
        (_, false) => all.iter().map(|m| format!("{m}\n")).collect(),
    }
}

fn verify(common: &Common) -> Result<Outcome, Outcome> {
    let fmt = format(common, Format::Json, &[Format::Json, Format::Text])?;
    let sizes = chain_sizes(common)?;
    let families: Vec<Family> = if common
        .family
        .as_deref()
        .is_some_and(|f| f.eq_ignore_ascii_case("all"))
    {
        Family::PRESENTED.to_vec()
    } else {
        vec![family(common)?]
    };

    if families == [Family::PD] {
        let mut reports = Vec::new();
        for &n in &sizes {
            reports.push(verify_pd_iso(n)?);
        }
        let passed = reports.iter().all(|r| r.all_true());
        let out = match fmt {
            Format::Json if reports.len() == 1 => pretty(&reports[0]),
            Format::Json => pretty(&reports),
            _ => reports
                .iter()
                .map(|r| {
                    format!(
                        "PD_{} -> D_{}\tsizes {} {}\tbijective {}\thomomorphic {}\n",
                        r.n,
                        r.n.get() + 1,
                        r.pd_size,
                        r.d_size,
                        r.bijective,
                        r.homomorphic
                    )
                })
                .collect(),
        };
        return Ok(Outcome {
            code: if passed { EXIT_OK } else { EXIT_FAIL },
            output: out,
            message: None,
        });
    }

    let limits = CongruenceLimits::from_env()?;
    let mut reports = Vec::new();
    for &fam in &families {
        for &n in &sizes {
            reports.push(verify_presentation_with(fam, n, limits)?);
        }
    }
    let passed = reports.iter().all(|r| r.verdict == Verdict::Pass);
    let out = match fmt {
        Format::Json if reports.len() == 1 => pretty(&reports[0]),
        Format::Json => pretty(&reports),
        _ => {
            let mut s = String::from("family\tn\tsize\tforms\tpresented\tderivations\tverdict\n");
            let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            for r in &reports {
                writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}{}",
                    r.family,
                    r.n,
                    r.concrete_size,
                    opt(r.normal_form_count),
                    opt(r.presented_size),
                    r.derivations_checked,
                    serde_json::to_value(r.verdict)
                        .expect("verdicts serialize")
                        .as_str()
                        .unwrap_or("?"),
                    r.failed_stage
                        .as_deref()
                        .map(|s| format!(" ({s})"))
                        .unwrap_or_default()
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Outcome {
        code: if passed { EXIT_OK } else { EXIT_FAIL },
        output: out,
        message: None,
    })
}

/// Writes the output to `--output` or stdout.
pub fn emit(cli: &Cli, outcome: &Outcome) -> std::io::Result<()> {
    let path = match &cli.command {
        Command::Enumerate { common, .. }
        | Command::Normalize { common, .. }
        | Command::Verify { common }
        | Command::Count { common }
        | Command::Cayley { common }
        | Command::Factorize { common, .. } => common.output.as_ref(),
    };
    match path {
        Some(p) if !outcome.output.is_empty() => std::fs::write(p, &outcome.output),
        _ => {
            use std::io::Write;
            std::io::stdout().write_all(outcome.output.as_bytes())
        }
    }
}
