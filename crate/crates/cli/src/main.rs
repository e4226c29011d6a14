//! `logpade`: construct, verify and audit Hermite–Padé approximants of
//! powers of `log(1+z)`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use logpade::audit::{
    constants_report, dn_check, exhaustive_audit, padic_audit, verify_suite, AuditConfig, AuditReport, ConstantsConfig,
    DnConfig, PadicAuditOptions, VerifyConfig,
};
use logpade::directed::DEFAULT_PRECISION;
use logpade::measure_bounds::{AlphaInput, DecayVariant, DEFAULT_SEARCH_CAP};
use logpade::pade_construct::{build_system, ConstructionParams};
use logpade::report::Status;
use rug::{Integer, Rational};
use serde::Deserialize;

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "logpade", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the approximant system for (m, n) and print it.
    Construct(Common),
    /// Run the construction and bound checks over a parameter range.
    Verify(Common),
    /// Compute the measure constants and the admissible-n search.
    Constants(Common),
    /// Exhaustive small-height audit of the archimedean linear forms.
    Audit(Common),
    /// Exhaustive small-height audit of the p-adic linear forms.
    PadicAudit(Common),
    /// Check the LCM growth envelope for 2 <= n <= n-max.
    Dn(Common),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Variant {
    Statement,
    Proof,
}

/// Flags shared by every subcommand. Each may also come from `--config`;
/// flags given on the command line win.
#[derive(Args, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct Common {
    /// Number of logarithm powers (m >= 2).
    #[arg(long)]
    m: Option<usize>,
    /// Rational alpha as c/d.
    #[arg(long)]
    alpha: Option<String>,
    /// Prime for p-adic modes.
    #[arg(long)]
    p: Option<u64>,
    /// Epsilon as a rational (c/d) or decimal.
    #[arg(long)]
    epsilon: Option<String>,
    /// Single n for `construct`.
    #[arg(long)]
    n: Option<usize>,
    /// Upper end of the n range.
    #[arg(long)]
    n_max: Option<u64>,
    /// Box bound for exhaustive audits.
    #[arg(long)]
    height_max: Option<i64>,
    /// Starting working precision in bits.
    #[arg(long)]
    precision_bits: Option<u32>,
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report to stdout.
    #[arg(long)]
    #[serde(default)]
    json: bool,
    /// Which decay rate to use for the archimedean constants.
    #[arg(long, value_enum)]
    a_variant: Option<Variant>,
    /// Search cap for the admissible n (decimal, `10^k` or `1ek`).
    #[arg(long)]
    n_cap: Option<String>,
    /// Skip the admissible-n search.
    #[arg(long)]
    #[serde(default)]
    no_search: bool,
    /// Include every enumerated vector in audit reports.
    #[arg(long)]
    #[serde(default)]
    full_table: bool,
    /// Perturb one partial-fraction coefficient (exercises the checks).
    #[arg(long, hide = true)]
    #[serde(default)]
    inject_fault: bool,
    /// TOML file providing defaults for any of the flags above.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

impl Common {
    fn merged(self) -> Result<Self> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let file: Common = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(Common {
            m: self.m.or(file.m),
            alpha: self.alpha.or(file.alpha),
            p: self.p.or(file.p),
            epsilon: self.epsilon.or(file.epsilon),
            n: self.n.or(file.n),
            n_max: self.n_max.or(file.n_max),
            height_max: self.height_max.or(file.height_max),
            precision_bits: self.precision_bits.or(file.precision_bits),
            out: self.out.or(file.out),
            json: self.json || file.json,
            a_variant: self.a_variant.or(file.a_variant),
            n_cap: self.n_cap.or(file.n_cap),
            no_search: self.no_search || file.no_search,
            full_table: self.full_table || file.full_table,
            inject_fault: self.inject_fault || file.inject_fault,
            config: self.config,
        })
    }

    fn m_or(&self, default: usize) -> usize {
        self.m.unwrap_or(default)
    }

    fn alpha_or(&self, default: &str) -> Result<AlphaInput> {
        let s = self.alpha.as_deref().unwrap_or(default);
        Ok(s.parse::<AlphaInput>()?)
    }

    fn precision(&self) -> u32 {
        self.precision_bits.unwrap_or(DEFAULT_PRECISION)
    }

    fn constants_config(&self, m: usize, alpha: AlphaInput) -> Result<ConstantsConfig> {
        let mut cfg = ConstantsConfig::new(m, alpha);
        cfg.p = self.p;
        if let Some(e) = &self.epsilon {
            cfg.epsilon = parse_rational(e)?;
        }
        cfg.precision_bits = self.precision();
        cfg.variant = match self.a_variant {
            Some(Variant::Proof) => DecayVariant::Proof,
            _ => DecayVariant::Statement,
        };
        cfg.n_cap = match &self.n_cap {
            Some(s) => parse_cap(s)?,
            None => Integer::from(DEFAULT_SEARCH_CAP),
        };
        cfg.search = !self.no_search;
        Ok(cfg)
    }
}

/// Parses `c/d`, an integer, or a plain decimal such as `0.25`.
fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num: Integer = digits.parse().with_context(|| format!("invalid number '{s}'"))?;
        let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        return Ok(Rational::from((num, den)));
    }
    Rational::from_str_radix(s, 10).with_context(|| format!("invalid rational '{s}'"))
}

/// Parses a positive integer given as digits, `10^k` or `1ek`.
fn parse_cap(s: &str) -> Result<Integer> {
    let s = s.trim();
    let value = if let Some((base, exp)) = s.split_once('^') {
        let base: u32 = base.parse().context("invalid cap base")?;
        let exp: u32 = exp.parse().context("invalid cap exponent")?;
        Integer::from(Integer::u_pow_u(base, exp))
    } else if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let mant: Integer = mant.parse().context("invalid cap mantissa")?;
        let exp: u32 = exp.parse().context("invalid cap exponent")?;
        mant * Integer::from(Integer::u_pow_u(10, exp))
    } else {
        s.parse().context("invalid cap")?
    };
    if value < 1 {
        bail!("cap must be positive");
    }
    Ok(value)
}

fn emit(common: &Common, json: &str, human: impl FnOnce() -> String) -> Result<()> {
    if let Some(path) = &common.out {
        write_file(path, json)?;
    }
    if common.json {
        println!("{json}");
    } else {
        print!("{}", human());
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut text = contents.to_owned();
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn human_summary(report: &AuditReport) -> String {
    let s = &report.summary;
    let mut out = format!(
        "{}: {:?} — {} checks, {} passed, {} failed, {} imprecise, {} skipped\n",
        report.mode, report.status, s.total, s.passed, s.failed, s.imprecise, s.skipped
    );
    for r in report
        .records
        .iter()
        .filter(|r| matches!(r.status, Status::Fail | Status::Imprecise))
    {
        out.push_str(&format!(
            "  {:?} {} [{}] {}\n",
            r.status, r.name, r.paper_anchor, r.instance
        ));
    }
    if let Some(measure) = report.payload.get("measure") {
        if let Some(e) = measure.get("exponent").and_then(|e| e.get("decimal")) {
            out.push_str(&format!(
                "  exponent nu/delta + eps/2 <= {}\n",
                e.as_str().unwrap_or("?")
            ));
        }
        if let Some(outcome) = measure.get("search").and_then(|s| s.get("outcome")) {
            out.push_str(&format!("  admissible-n search: {}\n", outcome.as_str().unwrap_or("?")));
        }
        if let Some(n) = measure.get("search").and_then(|s| s.get("n_star")) {
            out.push_str(&format!("  n* = {}\n", n.as_str().unwrap_or("?")));
        }
    }
    if let Some(min) = report.payload.get("overall_min").filter(|v| !v.is_null()) {
        out.push_str(&format!(
            "  overall min at b = {}, log|Lambda| >= {}\n",
            min["b"],
            min["log_abs_lambda"]["lo"]["decimal"].as_str().unwrap_or("?")
        ));
    }
    out
}

fn finish_report(common: &Common, report: AuditReport) -> Result<bool> {
    let json = report.to_json()?;
    emit(common, &json, || human_summary(&report))?;
    Ok(report.passed())
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Construct(c) => {
            let c = c.merged()?;
            let params = ConstructionParams::new(c.m_or(2), c.n.unwrap_or(0))?;
            let system = build_system(params)?;
            let doc = system.to_document();
            let json = serde_json::to_string_pretty(&doc)?;
            emit(&c, &json, || {
                let mut s = format!("m={} n={}\n", params.m(), params.n());
                for i in 1..=params.m() {
                    for j in 0..params.m() {
                        s.push_str(&format!("  A[{i},{j}](z) = {}\n", system.poly(i, j)));
                    }
                }
                if let Some(d) = &doc.determinant {
                    s.push_str(&format!("  det = {} z^{}\n", d.gamma, d.exponent));
                }
                s
            })?;
            Ok(doc.determinant.is_some())
        }
        Command::Verify(c) => {
            let c = c.merged()?;
            let mut cfg = VerifyConfig::default();
            if let Some(m) = c.m {
                cfg.m_values = vec![m];
            }
            if let Some(n) = c.n_max {
                cfg.n_max = n as usize;
            }
            if c.alpha.is_some() {
                cfg.bound_alpha = Some(c.alpha_or("1/10")?);
            }
            cfg.precision_bits = c.precision();
            cfg.inject_fault = c.inject_fault;
            finish_report(&c, verify_suite(&cfg)?)
        }
        Command::Constants(c) => {
            let c = c.merged()?;
            let cfg = c.constants_config(c.m_or(2), c.alpha_or("1/10")?)?;
            finish_report(&c, constants_report(&cfg)?)
        }
        Command::Audit(c) => {
            let c = c.merged()?;
            if c.p.is_some() {
                bail!(logpade::Error::InvalidParams("use padic-audit for a prime p".into()));
            }
            let cfg = AuditConfig {
                constants: c.constants_config(c.m_or(2), c.alpha_or("1/10")?)?,
                height_max: c.height_max.unwrap_or(30),
                full_table: c.full_table,
            };
            finish_report(&c, exhaustive_audit(&cfg)?)
        }
        Command::PadicAudit(c) => {
            let c = c.merged()?;
            if c.p.is_none() {
                bail!(logpade::Error::InvalidParams("padic-audit needs --p".into()));
            }
            let cfg = AuditConfig {
                constants: c.constants_config(c.m_or(2), c.alpha_or("5/1")?)?,
                height_max: c.height_max.unwrap_or(10),
                full_table: c.full_table,
            };
            let opts = PadicAuditOptions {
                n_min: 1,
                n_max: c.n_max.map_or(6, |n| n as usize),
            };
            finish_report(&c, padic_audit(&cfg, &opts)?)
        }
        Command::Dn(c) => {
            let c = c.merged()?;
            let cfg = DnConfig {
                n_max: c.n_max.unwrap_or(10_000),
                precision_bits: c.precision(),
            };
            finish_report(&c, dn_check(&cfg)?)
        }
    }
}

fn is_input_error(err: &anyhow::Error) -> bool {
    use logpade::Error as E;
    match err.downcast_ref::<E>() {
        Some(e) => matches!(
            e,
            E::InvalidParams(_)
                | E::InvalidAlpha(_)
                | E::HypothesisViolated(_)
                | E::PadicSmallness { .. }
                | E::OutsideConvergenceDisk { .. }
                | E::NTooSmall { .. }
                | E::CombinatorialCap { .. }
        ),
        // configuration files and numeric flags that failed to parse
        None => {
            err.chain()
                .any(|c| c.is::<toml::de::Error>() || c.is::<std::io::Error>())
                || err.to_string().starts_with("invalid")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILURE),
        Err(err) => {
            eprintln!("error: {err:#}");
            if is_input_error(&err) {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_CHECK_FAILURE)
            }
        }
    }
}
