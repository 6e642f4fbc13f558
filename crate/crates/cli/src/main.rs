use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use holorec::algebraic::annihilating_polynomial;
use holorec::batch::{prove_entry, run_batch, BatchOptions, Parallelism};
use holorec::corpus::{load_corpus, CorpusEntry};
use holorec::expr::{eval_series, parse, RadicalExpr};
use holorec::holonomic::algeq_to_ode;
use holorec::oeis::{default_cache_dir, default_transport, FetchMode, OeisClient, CACHE_ENV};
use holorec::proof::{
    derive_recurrence, guess_recurrence, render_report, required_terms, ProofCertificate, ProveOptions, ReportFormat,
    SeriesTerms, TermSource, Verdict, DEFAULT_N_STAR_CEILING, HOLDOUT,
};

#[derive(Parser)]
#[command(name = "holorec", version, about = "Derive and prove linear recurrences for algebraic generating functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Markdown,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Markdown => ReportFormat::Markdown,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a generating function and print its normalized form
    Parse(GfArgs),
    /// Print the truncated series expansion
    Series {
        #[command(flatten)]
        gf: GfArgs,
        #[arg(long, default_value_t = 20)]
        order: i64,
    },
    /// Print the annihilating polynomial P(x, y)
    Algeq(GfArgs),
    /// Print the linear differential equation
    Ode(GfArgs),
    /// Print the derived recurrence
    Rec(GfArgs),
    /// Guess a recurrence from series terms or an OEIS record
    Guess {
        #[arg(long, required_unless_present = "id")]
        gf: Option<String>,
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        bounds: GuessBounds,
        #[command(flatten)]
        oeis: OeisArgs,
    },
    /// Derive a recurrence and prove a conjecture against it
    Prove {
        #[command(flatten)]
        gf: GfArgs,
        /// Conjectured recurrence; guessed from the series when omitted
        #[arg(long)]
        rec: Option<String>,
        /// OEIS id for an advisory comparison with the series
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        prove: ProveArgs,
        #[command(flatten)]
        oeis: OeisArgs,
    },
    /// Prove every entry of a corpus and print the report
    Batch {
        /// Corpus file, or `builtin`
        #[arg(long, default_value = "builtin")]
        corpus: String,
        #[arg(long)]
        sequential: bool,
        /// Compare each entry with its OEIS record
        #[arg(long)]
        compare_oeis: bool,
        #[command(flatten)]
        prove: ProveArgs,
        #[command(flatten)]
        oeis: OeisArgs,
    },
    /// Fetch an OEIS b-file through the cache
    Fetch {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 30)]
        terms: usize,
        #[command(flatten)]
        oeis: OeisArgs,
    },
}

#[derive(Args)]
struct GfArgs {
    #[arg(long)]
    gf: String,
}

#[derive(Args)]
struct GuessBounds {
    #[arg(long, default_value_t = 4)]
    max_order: usize,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
}

#[derive(Args)]
struct ProveArgs {
    #[command(flatten)]
    bounds: GuessBounds,
    #[arg(long, default_value_t = DEFAULT_N_STAR_CEILING)]
    n_star_ceiling: u64,
    /// Include stage timings in the output
    #[arg(long)]
    timings: bool,
}

impl ProveArgs {
    fn options(&self) -> ProveOptions {
        ProveOptions {
            n_star_ceiling: self.n_star_ceiling,
            max_order: self.bounds.max_order,
            max_degree: self.bounds.max_degree,
            timings: self.timings,
        }
    }
}

#[derive(Args)]
struct OeisArgs {
    /// Use only the cache and bundled fixtures
    #[arg(long)]
    offline: bool,
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
}

impl OeisArgs {
    fn client(&self) -> OeisClient {
        let dir = self.cache_dir.clone().unwrap_or_else(default_cache_dir);
        OeisClient::new(dir, default_transport())
    }

    fn mode(&self) -> FetchMode {
        if self.offline {
            FetchMode::Offline
        } else {
            FetchMode::Online
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{}", output.document);
            if output.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

struct Output {
    document: String,
    success: bool,
}

impl Output {
    fn ok(document: String) -> Self {
        Output { document, success: true }
    }
}

fn expr(gf: &GfArgs) -> Result<RadicalExpr> {
    parse(&gf.gf).with_context(|| format!("cannot parse generating function {:?}", gf.gf))
}

fn json_doc(value: serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(&value).expect("json value"))
}

/// Renders a single statement in the chosen format.
fn statement(format: Format, gf: &str, key: &str, value: serde_json::Value, text: String) -> String {
    match format {
        Format::Json => json_doc(json!({ "gf": gf, key: value })),
        Format::Text => format!("{text}\n"),
        Format::Markdown => format!("`{text}`\n"),
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let format = cli.format;
    match &cli.command {
        Command::Parse(gf) => {
            let e = expr(gf)?;
            let value = json!({
                "normalized": e.to_string(),
                "radical_depth": e.radical_depth(),
                "degree_bound": e.degree_bound(),
            });
            Ok(Output::ok(statement(format, &gf.gf, "parsed", value, e.to_string())))
        }
        Command::Series { gf, order } => {
            if *order < 1 {
                bail!("--order must be positive");
            }
            let f = eval_series(&expr(gf)?, *order)?;
            let coeffs: Vec<String> = f.coefficients(*order).iter().map(ToString::to_string).collect();
            let value = json!({ "order": order, "coefficients": coeffs });
            Ok(Output::ok(statement(format, &gf.gf, "series", value, f.to_string())))
        }
        Command::Algeq(gf) => {
            let p = annihilating_polynomial(&expr(gf)?)?;
            let text = format!("{p} = 0");
            Ok(Output::ok(statement(format, &gf.gf, "algebraic_eq", serde_json::to_value(&p)?, text)))
        }
        Command::Ode(gf) => {
            let p = annihilating_polynomial(&expr(gf)?)?;
            let ode = algeq_to_ode(&p)?;
            Ok(Output::ok(statement(format, &gf.gf, "ode", serde_json::to_value(&ode)?, ode.to_string())))
        }
        Command::Rec(gf) => {
            let d = derive_recurrence(&expr(gf)?)?;
            let rec = &d.recurrence;
            Ok(Output::ok(statement(format, &gf.gf, "recurrence", serde_json::to_value(rec)?, rec.to_string())))
        }
        Command::Guess { gf, id, bounds, oeis } => {
            let needed = required_terms(bounds.max_order, bounds.max_degree) + 2 * HOLDOUT;
            let (label, terms) = match (gf, id) {
                (Some(gf), _) => {
                    let e = parse(gf).with_context(|| format!("cannot parse generating function {gf:?}"))?;
                    (gf.clone(), SeriesTerms::new(e).terms_through(needed as i64 - 1)?)
                }
                (None, Some(id)) => (id.clone(), oeis.client().fetch(id, usize::MAX, oeis.mode())?.terms),
                (None, None) => unreachable!("clap requires --gf or --id"),
            };
            let guessed = guess_recurrence(&terms, bounds.max_order, bounds.max_degree)?;
            let Some(rec) = guessed else {
                bail!(
                    "no recurrence of order <= {} and degree <= {} fits {} terms",
                    bounds.max_order,
                    bounds.max_degree,
                    terms.len()
                );
            };
            Ok(Output::ok(statement(format, &label, "recurrence", serde_json::to_value(&rec)?, rec.to_string())))
        }
        Command::Prove { gf, rec, id, prove, oeis } => {
            let entry = CorpusEntry::new(id.as_deref(), &gf.gf, rec.as_deref(), "")
                .map_err(anyhow::Error::msg)
                .context("invalid input")?;
            let client = id.as_ref().map(|_| oeis.client());
            let options = BatchOptions {
                prove: prove.options(),
                parallelism: Parallelism::Sequential,
                oeis: client.as_ref().map(|c| (c, oeis.mode())),
            };
            let cert = prove_entry(&entry, &options)?;
            Ok(report(&[cert], format))
        }
        Command::Batch { corpus, sequential, compare_oeis, prove, oeis } => {
            let entries = load_corpus(corpus)?;
            let client = compare_oeis.then(|| oeis.client());
            let options = BatchOptions {
                prove: prove.options(),
                parallelism: if *sequential { Parallelism::Sequential } else { Parallelism::default() },
                oeis: client.as_ref().map(|c| (c, oeis.mode())),
            };
            let certs = run_batch(&entries, &options)?;
            Ok(report(&certs, format))
        }
        Command::Fetch { id, terms, oeis } => {
            let record = oeis.client().fetch(id, *terms, oeis.mode())?;
            let document = match format {
                Format::Json => json_doc(serde_json::to_value(&record)?),
                Format::Text | Format::Markdown => {
                    let values: Vec<String> = record.terms.values().iter().map(ToString::to_string).collect();
                    format!("{} {} (offset {})\n{}\n", record.id, record.name, record.offset, values.join(", "))
                }
            };
            Ok(Output::ok(document))
        }
    }
}

fn report(certs: &[ProofCertificate], format: Format) -> Output {
    let success = certs.iter().all(|c| c.verdict == Verdict::Proved);
    let unproved: Vec<String> = certs
        .iter()
        .filter(|c| c.verdict != Verdict::Proved)
        .map(|c| format!("{}: {}", c.id.as_deref().unwrap_or(&c.input_gf), c.verdict))
        .collect();
    for line in unproved {
        eprintln!("not proved: {line}");
    }
    Output { document: render_report(certs, format.into()), success }
}
