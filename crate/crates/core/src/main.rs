use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mixrec::claims::{ClaimId, FitResult};
use mixrec::compare::{gf_compare, gf_rows_csv, gf_rows_text, table, table_csv, FamilyId, GfFamily};
use mixrec::numeric::{format_complex, parse_complex};
use mixrec::report::{fit_claim, run_suite, SuiteConfig, ENGINE_VERSION};
use mixrec::scalar::parse_rational;
use mixrec::{BatemanHalfPower, Convention, Error, LegendreDenominator, Params, Result};

#[derive(Parser)]
#[command(name = "mixrec", version, about = "Exact two-variable Jacobi, Bateman and Legendre recurrence checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical expansion of one polynomial.
    Expand(ExpandArgs),
    /// Evaluate one polynomial at complex z and w.
    Eval(EvalArgs),
    /// Certify claims and write a verification report.
    Verify(VerifyArgs),
    /// Fit the correction ansatz of selected claims.
    Fit(VerifyArgs),
    /// Compare representations of a family degree by degree.
    GfCompare(GfArgs),
    /// Tabulate a family for n = 0..=n-max.
    Table(TableArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct ConventionArgs {
    /// Legendre denominator: paper or corrected.
    #[arg(long)]
    legendre_denom: Option<String>,
    /// Bateman half-power convention: A or B.
    #[arg(long)]
    bateman_half: Option<String>,
    /// Shorthand that sets whichever axis the value belongs to.
    #[arg(long)]
    convention: Option<String>,
}

impl ConventionArgs {
    /// Explicit choices only; `None` leaves an axis open.
    fn selected(&self) -> Result<(Option<LegendreDenominator>, Option<BatemanHalfPower>)> {
        let mut legendre = self.legendre_denom.as_deref().map(LegendreDenominator::parse).transpose()?;
        let mut bateman = self.bateman_half.as_deref().map(BatemanHalfPower::parse).transpose()?;
        if let Some(c) = &self.convention {
            if let Ok(d) = LegendreDenominator::parse(c) {
                legendre = Some(d);
            } else if let Ok(h) = BatemanHalfPower::parse(c) {
                bateman = Some(h);
            } else {
                return Err(Error::Unknown(format!("convention `{c}`")));
            }
        }
        Ok((legendre, bateman))
    }

    fn resolve(&self) -> Result<Convention> {
        let (l, b) = self.selected()?;
        let base = Convention::default();
        Ok(Convention {
            legendre_denominator: l.unwrap_or(base.legendre_denominator),
            bateman_halfpower: b.unwrap_or(base.bateman_halfpower),
        })
    }
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Rational `p/q`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    alpha: String,
    /// Rational `p/q`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    beta: String,
}

impl ParamArgs {
    fn params(&self) -> Result<Params> {
        Ok(Params::new(parse_rational(&self.alpha)?, parse_rational(&self.beta)?))
    }
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    conventions: ConventionArgs,
    /// Render even powers of s as powers of w.
    #[arg(long)]
    fold_w: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    conventions: ConventionArgs,
    /// Complex `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Complex `a+bi`; the principal square root is used.
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim id, repeatable or comma separated.
    #[arg(long, value_delimiter = ',')]
    claim: Vec<String>,
    /// Every registered claim.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// Series truncation order.
    #[arg(long, default_value_t = 12)]
    order: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Parameter samples for series claims.
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Fixed grid size per axis (must exceed the degree bound).
    #[arg(long)]
    grid_size: Option<usize>,
    /// Skip coefficient fitting.
    #[arg(long)]
    no_fit: bool,
    #[command(flatten)]
    conventions: ConventionArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

impl VerifyArgs {
    fn suite(&self) -> Result<SuiteConfig> {
        let claims = if self.all {
            ClaimId::ALL.to_vec()
        } else {
            self.claim.iter().map(|c| ClaimId::parse(c.trim())).collect::<Result<_>>()?
        };
        let (legendre_denominator, bateman_halfpower) = self.conventions.selected()?;
        Ok(SuiteConfig {
            claims,
            n_max: self.n_max,
            order: self.order,
            seed: self.seed,
            grid_per_axis: self.grid_size,
            series_samples: self.samples,
            legendre_denominator,
            bateman_halfpower,
            fit: !self.no_fit,
        })
    }
}

#[derive(Args)]
struct GfArgs {
    /// jacobi, legendre or bateman.
    #[arg(long)]
    family: String,
    /// Representations to compare, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    reps: Vec<String>,
    #[arg(long, default_value_t = 12)]
    order: usize,
    /// Defaults to the order.
    #[arg(long)]
    n_max: Option<usize>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    conventions: ConventionArgs,
    #[arg(long)]
    fold_w: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn expand(a: &ExpandArgs) -> Result<ExitCode> {
    let family = FamilyId::parse(&a.family)?;
    let poly = family.build(a.n, &a.params.params()?, &a.conventions.resolve()?)?;
    let text = if a.fold_w { poly.canonical_fold_w() } else { poly.canonical() };
    let out = match a.format {
        Format::Json => pretty(&json!({ "family": family.name(), "n": a.n, "polynomial": text }))?,
        Format::Csv => format!("family,n,polynomial\n{},{},{}\n", family.name(), a.n, text),
        Format::Text => format!("{text}\n"),
    };
    emit(&out, a.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn eval(a: &EvalArgs) -> Result<ExitCode> {
    let family = FamilyId::parse(&a.family)?;
    let poly = family.build(a.n, &a.params.params()?, &a.conventions.resolve()?)?;
    let value = poly.eval_complex(parse_complex(&a.z)?, parse_complex(&a.w)?)?;
    let text = format_complex(value);
    let out = match a.format {
        Format::Json => pretty(&json!({ "family": family.name(), "n": a.n, "value": text, "re": value.re, "im": value.im }))?,
        Format::Csv => format!("family,n,value\n{},{},{}\n", family.name(), a.n, text),
        Format::Text => format!("{text}\n"),
    };
    emit(&out, a.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn verify(a: &VerifyArgs) -> Result<ExitCode> {
    let report = run_suite(&a.suite()?)?;
    let out = match a.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
        Format::Text => report.to_text(),
    };
    emit(&out, a.output.as_ref())?;
    Ok(if report.all_hold() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn fit(a: &VerifyArgs) -> Result<ExitCode> {
    let cfg = a.suite()?;
    let mut entries: Vec<(ClaimId, String, &'static str, FitResult)> = Vec::new();
    let mut claims = cfg.claims.clone();
    claims.sort();
    claims.dedup();
    for &claim in &claims {
        for c in cfg.conventions(claim) {
            for &p in claim.pipelines() {
                entries.push((claim, claim.convention_tag(&c), p.tag(), fit_claim(claim, c, p, &cfg)?));
            }
        }
    }
    let out = match a.format {
        Format::Json => {
            let list: Vec<_> = entries
                .iter()
                .map(|(id, conv, pipe, f)| json!({ "id": id, "convention": conv, "pipeline": pipe, "fit": f }))
                .collect();
            pretty(&json!({ "engine_version": ENGINE_VERSION, "config": cfg, "fits": list }))?
        }
        Format::Csv => {
            let mut s = String::from("claim,convention,pipeline,status,term,coefficient\n");
            for (id, conv, pipe, f) in &entries {
                for (term, form) in f.ansatz.terms.iter().zip(f.rendered_forms()) {
                    s.push_str(&format!("{id},{conv},{pipe},{},\"{term}\",{form}\n", f.status.tag()));
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (id, conv, pipe, f) in &entries {
                s.push_str(&format!("{id} [{conv}] {pipe}: {} ({})\n", f.status.tag(), f.label));
                for (term, form) in f.ansatz.terms.iter().zip(f.rendered_forms()) {
                    s.push_str(&format!("  {form} * {term}\n"));
                }
                if let Some(note) = &f.note {
                    s.push_str(&format!("  note: {note}\n"));
                }
            }
            s
        }
    };
    emit(&out, a.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn gf(a: &GfArgs) -> Result<ExitCode> {
    let family = GfFamily::parse(&a.family)?;
    let rows = gf_compare(family, &a.reps, &a.params.params()?, a.order, a.n_max.unwrap_or(a.order))?;
    let out = match a.format {
        Format::Json => pretty(&rows)?,
        Format::Csv => gf_rows_csv(&rows)?,
        Format::Text => gf_rows_text(&rows),
    };
    emit(&out, a.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn tabulate(a: &TableArgs) -> Result<ExitCode> {
    let family = FamilyId::parse(&a.family)?;
    let rows = table(family, &a.params.params()?, &a.conventions.resolve()?, a.n_max, a.fold_w)?;
    let out = match a.format {
        Format::Json => pretty(&rows)?,
        Format::Csv => table_csv(&rows)?,
        Format::Text => rows.iter().map(|r| format!("{:>3}  {}\n", r.n, r.polynomial)).collect(),
    };
    emit(&out, a.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Expand(a) => expand(a),
        Command::Eval(a) => eval(a),
        Command::Verify(a) => verify(a),
        Command::Fit(a) => fit(a),
        Command::GfCompare(a) => gf(a),
        Command::Table(a) => tabulate(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
