//! Command-line front end: every computation as a deterministic report.
//!
//! JSON output is a single envelope
//! `{"command", "parameters", "results", "toolkit_version", "exact"}`; CSV
//! output is the tabular view of `results` with a mandatory header row.
//! Exit status is 0 on success, 2 on usage errors and 3 when a feasibility
//! limit stops the computation. Errors go to standard error as
//! `{"error": {"kind", "message"}}`.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Map, Number, Value};

use crate::finite_field::{audit_irreducible_counts, DEFAULT_FIELD_ORACLE_LIMIT};
use crate::integer_irreducibility::{
    classify_admissible, DecidedBy, FactorizationWitness, DEFAULT_SEARCH_LIMIT,
};
use crate::polynomials::{
    audit_bounds, count_admissible_exact, enumerate_admissible, target_sum, BoundsAuditReport,
    DEFAULT_ENUMERATION_LIMIT,
};
use crate::sieve::{
    audit_chebyshev, pipeline_lower_bound, primes_below, ChebyshevAudit, ChebyshevSample,
    LevelSource,
};
use crate::{Error, Limits};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

const EXACT_COUNT_METHOD: &str = "bounded nonnegative compositions of n!-1, inclusion-exclusion";
const LOWER_FORMULA: &str = "C(H-2, n-1), positive-composition convention";
const UPPER_FORMULA: &str = "C(H*n, n-1), positive-composition convention";

#[derive(Debug, Parser)]
#[command(
    name = "admissible",
    version,
    about = "Exact audits of monic admissible polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Largest admissible set that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    pub max_enum: u64,

    /// Largest exhaustive-oracle search space (p^n for the field oracle).
    #[arg(long, global = true, default_value_t = DEFAULT_FIELD_ORACLE_LIMIT)]
    pub max_oracle: u64,

    /// Candidate factors tried per polynomial before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_LIMIT)]
    pub max_search: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// N(H) with the claimed lower and upper bounds.
    Count {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        height: u64,
    },
    /// Stream the admissible set in lexicographic order.
    Enumerate {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        height: u64,
        /// Stop after this many rows and append a truncation marker.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// A(H) with a verdict and witness for every admissible polynomial.
    IrrCount {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        height: u64,
    },
    /// Turán sieve pipeline: exact sifted count, bound, and the A(H) chain.
    Sieve {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        height: u64,
        /// Sieve level; defaults to round(H^(1/3) (ln H)^(1/3)).
        #[arg(long)]
        z: Option<u64>,
    },
    /// Exact irreducible counts over F_p against p^n / n.
    FpAudit {
        #[arg(long)]
        degree: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Primes strictly below a bound.
    Primes {
        #[arg(long)]
        below: u64,
    },
    /// pi(z) log z / z over [3, z_max].
    Chebyshev {
        #[arg(long)]
        z_max: u64,
    },
    /// Bounds audit over a range of heights.
    BoundsAudit {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
}

/// A finished report: the JSON envelope plus its tabular view.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub results: Value,
    pub exact: bool,
    pub table: Table,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

impl Report {
    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "toolkit_version": TOOLKIT_VERSION,
            "exact": self.exact,
        })
    }

    pub fn write_json<W: Write>(&self, out: &mut W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, &self.envelope())?;
        writeln!(out)
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.table.header)?;
        for row in &self.table.rows {
            w.write_record(row)?;
        }
        w.flush()
    }
}

fn big(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal integer"))
}

fn rational(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn rational_text(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn float(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn count_results(r: &BoundsAuditReport) -> Value {
    json!({
        "degree": r.degree,
        "height": r.height,
        "target_sum": big(&target_sum(r.degree)),
        "exact_count": big(&r.exact_count),
        "exact_count_method": EXACT_COUNT_METHOD,
        "claimed_lower": big(&r.claimed_lower),
        "claimed_lower_formula": LOWER_FORMULA,
        "claimed_upper": big(&r.claimed_upper),
        "claimed_upper_formula": UPPER_FORMULA,
        "density_ratio": r.density_ratio.as_ref().map_or(Value::Null, rational),
        "lower_violated": r.lower_violated,
        "upper_violated": r.upper_violated,
    })
}

const COUNT_HEADER: [&str; 8] = [
    "degree",
    "height",
    "exact_count",
    "claimed_lower",
    "claimed_upper",
    "density_ratio",
    "lower_violated",
    "upper_violated",
];

fn count_row(r: &BoundsAuditReport) -> Vec<String> {
    vec![
        r.degree.to_string(),
        r.height.to_string(),
        r.exact_count.to_string(),
        r.claimed_lower.to_string(),
        r.claimed_upper.to_string(),
        r.density_ratio
            .as_ref()
            .map_or(String::new(), rational_text),
        r.lower_violated.to_string(),
        r.upper_violated.to_string(),
    ]
}

fn require_degree(degree: u64) -> crate::Result<()> {
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    Ok(())
}

pub fn cmd_count(degree: u64, height: u64) -> crate::Result<Report> {
    require_degree(degree)?;
    let r = BoundsAuditReport::new(degree, height);
    let mut table = Table::new(&COUNT_HEADER);
    table.push(count_row(&r));
    Ok(Report {
        command: "count",
        parameters: params(&[("degree", json!(degree)), ("height", json!(height))]),
        results: count_results(&r),
        exact: true,
        table,
    })
}

pub fn cmd_bounds_audit(degree: u64, from: u64, to: u64) -> crate::Result<Report> {
    if from > to {
        return Err(Error::InvalidArgument(format!(
            "empty height range {from}..={to}"
        )));
    }
    let reports = audit_bounds(degree, from..=to)?;
    let mut table = Table::new(&COUNT_HEADER);
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            table.push(count_row(r));
            count_results(r)
        })
        .collect();
    let lower_violations = reports.iter().filter(|r| r.lower_violated).count();
    let upper_violations = reports.iter().filter(|r| r.upper_violated).count();
    Ok(Report {
        command: "bounds-audit",
        parameters: params(&[
            ("degree", json!(degree)),
            ("from", json!(from)),
            ("to", json!(to)),
        ]),
        results: json!({
            "reports": rows,
            "lower_violations": lower_violations,
            "upper_violations": upper_violations,
        }),
        exact: true,
        table,
    })
}

/// Streams the enumeration. JSON output is one coefficient vector per line;
/// a truncated stream ends with `{"truncated":true,...}` (JSON) or a
/// `# truncated` comment line (CSV).
pub fn cmd_enumerate<W: Write>(
    degree: u64,
    height: u64,
    limit: Option<u64>,
    format: Format,
    limits: &Limits,
    out: &mut W,
) -> Result<(), CliError> {
    require_degree(degree)?;
    let total = count_admissible_exact(degree, height);
    let stream = enumerate_admissible(degree, height, limits.max_enum)?;
    let cap = limit.unwrap_or(u64::MAX);
    let mut emitted = 0u64;
    match format {
        Format::Json => {
            for f in stream.take(cap.min(usize::MAX as u64) as usize) {
                serde_json::to_writer(&mut *out, &f).map_err(io::Error::from)?;
                writeln!(out)?;
                emitted += 1;
            }
            if BigUint::from(emitted) < total {
                let marker = json!({ "truncated": true, "emitted": emitted, "total": big(&total) });
                writeln!(out, "{marker}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header: Vec<String> = (0..degree).map(|i| format!("a_{i}")).collect();
            header.push("polynomial".into());
            w.write_record(&header)?;
            for f in stream.take(cap.min(usize::MAX as u64) as usize) {
                let mut row: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
                row.push(f.to_string());
                w.write_record(&row)?;
                emitted += 1;
            }
            w.flush()?;
            drop(w);
            if BigUint::from(emitted) < total {
                writeln!(out, "# truncated: {emitted} of {total} rows")?;
            }
        }
    }
    Ok(())
}

fn decided_by_text(d: DecidedBy) -> String {
    match d {
        DecidedBy::Linear => "linear".into(),
        DecidedBy::ZeroConstantTerm => "zero constant term".into(),
        DecidedBy::IrreducibleModPrime(p) => format!("irreducible mod {p}"),
        DecidedBy::FactorSearch => "factor search".into(),
    }
}

pub fn cmd_irr_count(degree: u64, height: u64, limits: &Limits) -> crate::Result<Report> {
    require_degree(degree)?;
    let verdicts = classify_admissible(degree, height, limits)?;
    let mut table = Table::new(&[
        "coeffs",
        "polynomial",
        "irreducible",
        "decided_by",
        "factor_small",
        "factor_large",
    ]);
    let mut irreducible = 0u64;
    let rows: Vec<Value> = verdicts
        .iter()
        .map(|(f, v)| {
            let (factors, small, large) = match &v.witness {
                FactorizationWitness::Irreducible => {
                    irreducible += 1;
                    (Value::Null, String::new(), String::new())
                }
                FactorizationWitness::Reducible { small, large } => (
                    json!([small.to_string(), large.to_string()]),
                    small.to_string(),
                    large.to_string(),
                ),
            };
            let coeffs: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
            table.push(vec![
                coeffs.join(" "),
                f.to_string(),
                v.witness.is_irreducible().to_string(),
                decided_by_text(v.decided_by),
                small,
                large,
            ]);
            json!({
                "coeffs": f.coeffs(),
                "polynomial": f.to_string(),
                "irreducible": v.witness.is_irreducible(),
                "decided_by": decided_by_text(v.decided_by),
                "factors": factors,
            })
        })
        .collect();
    let total = verdicts.len() as u64;
    Ok(Report {
        command: "irr-count",
        parameters: params(&[
            ("degree", json!(degree)),
            ("height", json!(height)),
            ("max_enum", json!(limits.max_enum)),
            ("max_search", json!(limits.max_search)),
        ]),
        results: json!({
            "degree": degree,
            "height": height,
            "admissible_count": total,
            "irreducible_count": irreducible,
            "reducible_count": total - irreducible,
            "polynomials": rows,
        }),
        exact: true,
        table,
    })
}

pub fn cmd_sieve(
    degree: u64,
    height: u64,
    z: Option<u64>,
    limits: &Limits,
) -> crate::Result<Report> {
    let r = pipeline_lower_bound(degree, height, z, limits)?;
    let level_rule = match r.level_source {
        LevelSource::Rule => "round(H^(1/3) * ln(H)^(1/3)), half away from zero (floating point)",
        LevelSource::Degenerate => "height below 2: z = 1, empty sieve",
        LevelSource::Override => "override",
    };
    let bound = r.bound.as_ref().map_or(Value::Null, |b| {
        json!({
            "density_sum": rational(&b.density_sum),
            "main_term": rational(&b.main_term),
            "linear_term": rational(&b.linear_term),
            "quadratic_term": rational(&b.quadratic_term),
            "total": rational(&b.total),
        })
    });
    let primes: Vec<Value> = r
        .instance
        .primes()
        .iter()
        .zip(&r.remainders)
        .map(|(sp, rem)| {
            json!({
                "prime": sp.prime,
                "density": rational(&sp.density),
                "members": big(&sp.members),
                "remainder": rational(&rem.exact),
                "remainder_shape": float(rem.shape),
            })
        })
        .collect();
    let pairs: Vec<Value> = r
        .pair_remainders
        .iter()
        .map(|pr| {
            json!({
                "p": pr.p,
                "q": pr.q,
                "intersection": big(r.instance.intersection(pr.p, pr.q).expect("pair present")),
                "remainder": rational(&pr.exact),
                "remainder_shape": float(pr.shape),
            })
        })
        .collect();
    let mut table = Table::new(&[
        "degree",
        "height",
        "z",
        "admissible_count",
        "sifted_count",
        "turan_bound",
        "turan_holds",
        "irreducible_count",
        "chain_holds",
    ]);
    table.push(vec![
        degree.to_string(),
        height.to_string(),
        r.z.to_string(),
        r.admissible.to_string(),
        r.sifted.to_string(),
        r.bound
            .as_ref()
            .map_or(String::new(), |b| rational_text(&b.total)),
        r.turan_holds.map_or(String::new(), |b| b.to_string()),
        r.irreducible.to_string(),
        r.chain_holds.to_string(),
    ]);
    let mut parameters = params(&[("degree", json!(degree)), ("height", json!(height))]);
    if let Some(z) = z {
        parameters.insert("z".into(), json!(z));
    }
    parameters.insert("max_enum".into(), json!(limits.max_enum));
    parameters.insert("max_search".into(), json!(limits.max_search));
    Ok(Report {
        command: "sieve",
        parameters,
        results: json!({
            "degree": degree,
            "height": height,
            "z": r.z,
            "z_rule": level_rule,
            "primes": primes,
            "pairs": pairs,
            "admissible_count": big(&r.admissible),
            "sifted_count": big(&r.sifted),
            "turan_bound": bound,
            "turan_holds": r.turan_holds,
            "turan_note": if r.bound.is_none() { "no primes below z: the bound is infinite" } else { "ordered pairs (p, q), diagonal included" },
            "irreducible_count": big(&r.irreducible),
            "reducible_count": big(&r.reducible),
            "chain_holds": r.chain_holds,
            "reference": {
                "approximate": true,
                "main_term_magnitude": float(r.main_term_magnitude),
                "error_term_magnitude": float(r.error_term_magnitude),
            },
        }),
        exact: false,
        table,
    })
}

pub fn cmd_fp_audit(degree: u64, primes: &[u64], limits: &Limits) -> crate::Result<Report> {
    let audit = audit_irreducible_counts(degree, primes, limits.max_oracle)?;
    let mut table = Table::new(&[
        "prime",
        "exact",
        "exhaustive",
        "main_term",
        "squared_normalized_error",
        "normalized_error",
        "within_unit_bound",
    ]);
    let rows: Vec<Value> = audit
        .rows
        .iter()
        .map(|r| {
            table.push(vec![
                r.prime.to_string(),
                r.exact.to_string(),
                r.exhaustive
                    .as_ref()
                    .map_or(String::new(), |c| c.to_string()),
                rational_text(&r.main_term),
                rational_text(&r.squared_normalized_error),
                r.normalized_error
                    .as_ref()
                    .map_or(String::new(), rational_text),
                r.within_unit_bound.to_string(),
            ]);
            json!({
                "prime": r.prime,
                "exact": big(&r.exact),
                "exhaustive": r.exhaustive.as_ref().map_or(Value::Null, big),
                "main_term": rational(&r.main_term),
                "squared_normalized_error": rational(&r.squared_normalized_error),
                "normalized_error": r.normalized_error.as_ref().map_or(Value::Null, rational),
                "within_unit_bound": r.within_unit_bound,
            })
        })
        .collect();
    Ok(Report {
        command: "fp-audit",
        parameters: params(&[
            ("degree", json!(degree)),
            ("primes", json!(primes)),
            ("max_oracle", json!(limits.max_oracle)),
        ]),
        results: json!({
            "degree": degree,
            "convention": "squared_normalized_error = (N_n - p^n/n)^2 / p^n",
            "rows": rows,
            "max_squared_normalized_error": audit.max_squared_normalized_error.as_ref().map_or(Value::Null, rational),
        }),
        exact: true,
        table,
    })
}

pub fn cmd_primes(below: u64) -> crate::Result<Report> {
    let primes = primes_below(below);
    let mut table = Table::new(&["prime"]);
    for p in &primes {
        table.push(vec![p.to_string()]);
    }
    Ok(Report {
        command: "primes",
        parameters: params(&[("below", json!(below))]),
        results: json!({ "below": below, "count": primes.len(), "primes": primes }),
        exact: true,
        table,
    })
}

fn sample(s: &ChebyshevSample) -> Value {
    json!({ "z": s.z, "pi": s.pi, "ratio": float(s.ratio) })
}

pub fn cmd_chebyshev(z_max: u64) -> crate::Result<Report> {
    let a = audit_chebyshev(z_max)?;
    let mut table = Table::new(&["z", "pi", "ratio"]);
    for s in &a.samples {
        table.push(vec![s.z.to_string(), s.pi.to_string(), s.ratio.to_string()]);
    }
    Ok(Report {
        command: "chebyshev",
        parameters: params(&[("z_max", json!(z_max))]),
        results: json!({
            "z_max": z_max,
            "ratio": "pi(z) * ln(z) / z, floating point",
            "samples": a.samples.iter().map(sample).collect::<Vec<_>>(),
            "min": sample(&a.min),
            "max": sample(&a.max),
            "band": {
                "low": float(ChebyshevAudit::BAND_LOW),
                "high": float(ChebyshevAudit::BAND_HIGH),
                "from": ChebyshevAudit::BAND_FROM,
                "to": ChebyshevAudit::BAND_TO.min(z_max),
                "min": a.band_min.as_ref().map_or(Value::Null, sample),
                "max": a.band_max.as_ref().map_or(Value::Null, sample),
                "holds": a.band_holds,
            },
        }),
        exact: false,
        table,
    })
}

/// Failure of a CLI invocation, with its exit status.
#[derive(Debug)]
pub enum CliError {
    Toolkit(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Toolkit(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Toolkit(e) if e.is_limit() => 3,
            CliError::Toolkit(
                Error::DegreeZero
                | Error::NotPrime(_)
                | Error::ModulusTooLarge(_)
                | Error::InvalidArgument(_),
            ) => 2,
            _ => 1,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Toolkit(e) => (e.kind().to_string(), e.to_string()),
            CliError::Io(e) => ("io".to_string(), e.to_string()),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

fn error_json(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

fn dispatch<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    let limits = Limits {
        max_enum: cli.max_enum,
        max_oracle: cli.max_oracle,
        max_search: cli.max_search,
    };
    let report = match &cli.command {
        Command::Enumerate {
            degree,
            height,
            limit,
        } => {
            return cmd_enumerate(*degree, *height, *limit, cli.format, &limits, out);
        }
        Command::Count { degree, height } => cmd_count(*degree, *height)?,
        Command::IrrCount { degree, height } => cmd_irr_count(*degree, *height, &limits)?,
        Command::Sieve { degree, height, z } => cmd_sieve(*degree, *height, *z, &limits)?,
        Command::FpAudit { degree, primes } => cmd_fp_audit(*degree, primes, &limits)?,
        Command::Primes { below } => cmd_primes(*below)?,
        Command::Chebyshev { z_max } => cmd_chebyshev(*z_max)?,
        Command::BoundsAudit { degree, from, to } => cmd_bounds_audit(*degree, *from, *to)?,
    };
    // Everything is computed before the first byte is written.
    let mut buf = Vec::new();
    match cli.format {
        Format::Json => report.write_json(&mut buf)?,
        Format::Csv => report.write_csv(&mut buf)?,
    }
    out.write_all(&buf)?;
    Ok(())
}

/// Parses `args` (program name first), runs the command, and returns the exit status.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{}", error_json("usage", e.to_string().trim_end()));
            return 2;
        }
    };
    match dispatch(&cli, out).and_then(|()| out.flush().map_err(CliError::from)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["admissible"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn results(stdout: &str) -> Value {
        serde_json::from_str::<Value>(stdout).unwrap()["results"].clone()
    }

    #[test]
    fn count_examples() {
        let (code, out, _) = invoke(&[
            "count", "--degree", "3", "--height", "6", "--format", "json",
        ]);
        assert_eq!(code, 0);
        assert_eq!(results(&out)["exact_count"], json!(21));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["exact"], json!(true));
        assert_eq!(v["command"], json!("count"));

        let (_, out, _) = invoke(&["count", "--degree", "4", "--height", "5"]);
        let r = results(&out);
        assert_eq!(r["exact_count"], json!(0));
        assert_eq!(r["lower_violated"], json!(true));

        let (_, out, _) = invoke(&["count", "--degree", "3", "--height", "0"]);
        let r = results(&out);
        assert_eq!(r["exact_count"], json!(0));
        assert_eq!(r["claimed_lower"], json!(0));
        assert_eq!(r["claimed_upper"], json!(0));
        assert_eq!(r["density_ratio"], Value::Null);
    }

    #[test]
    fn enumerate_examples() {
        let (code, out, _) = invoke(&["enumerate", "--degree", "3", "--height", "2"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[2], r#"{"degree":3,"coeffs":[2,2,1]}"#);

        let (_, out, _) = invoke(&["enumerate", "--degree", "3", "--height", "1"]);
        assert!(out.is_empty());

        let (_, out, _) = invoke(&[
            "enumerate",
            "--degree",
            "3",
            "--height",
            "6",
            "--limit",
            "5",
        ]);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], r#"{"degree":3,"coeffs":[0,0,5]}"#);
        assert_eq!(lines[5], r#"{"truncated":true,"emitted":5,"total":21}"#);

        let (_, out, _) = invoke(&[
            "enumerate",
            "--degree",
            "3",
            "--height",
            "2",
            "--format",
            "csv",
        ]);
        assert_eq!(
            out,
            "a_0,a_1,a_2,polynomial\n1,2,2,x^3 + 2x^2 + 2x + 1\n2,1,2,x^3 + 2x^2 + x + 2\n2,2,1,x^3 + x^2 + 2x + 2\n"
        );
    }

    #[test]
    fn enumerate_limit_exit_code() {
        let (code, out, err) = invoke(&[
            "enumerate",
            "--degree",
            "4",
            "--height",
            "24",
            "--max-enum",
            "10",
        ]);
        assert_eq!(code, 3);
        assert!(out.is_empty());
        let e: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(e["error"]["kind"], json!("enumeration_too_large"));
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = invoke(&["count", "--degree", "x"]);
        assert_eq!(code, 2);
        let e: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(e["error"]["kind"], json!("usage"));
        let (code, _, _) = invoke(&["count", "--degree", "0", "--height", "1"]);
        assert_eq!(code, 2);
        let (code, _, _) = invoke(&["fp-audit", "--degree", "2", "--primes", "4"]);
        assert_eq!(code, 2);
        let (code, _, _) = invoke(&["frobnicate"]);
        assert_eq!(code, 2);
        let (code, out, _) = invoke(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
    }

    #[test]
    fn irr_count_examples() {
        let (code, out, _) = invoke(&["irr-count", "--degree", "3", "--height", "2"]);
        assert_eq!(code, 0);
        let r = results(&out);
        assert_eq!(r["polynomials"].as_array().unwrap().len(), 3);
        assert_eq!(
            r["polynomials"][0]["factors"],
            json!(["x + 1", "x^2 + x + 1"])
        );
        assert!(r["irreducible_count"].as_u64().unwrap() <= 2);

        let (_, out, _) = invoke(&["irr-count", "--degree", "3", "--height", "1"]);
        assert_eq!(results(&out)["irreducible_count"], json!(0));

        let (_, out, _) = invoke(&["irr-count", "--degree", "3", "--height", "6"]);
        assert!(results(&out)["irreducible_count"].as_u64().unwrap() <= 21);
    }

    #[test]
    fn sieve_examples() {
        let (code, out, _) = invoke(&["sieve", "--degree", "3", "--height", "6"]);
        assert_eq!(code, 0);
        let r = results(&out);
        assert_eq!(r["z"], json!(2));
        assert_eq!(r["turan_bound"], Value::Null);
        assert_eq!(r["chain_holds"], json!(true));

        let (_, out, _) = invoke(&["sieve", "--degree", "3", "--height", "6", "--z", "4"]);
        let r = results(&out);
        assert_eq!(r["z"], json!(4));
        assert_eq!(r["turan_holds"], json!(true));
        assert_eq!(r["primes"].as_array().unwrap().len(), 2);

        let (_, out, _) = invoke(&["sieve", "--degree", "3", "--height", "1"]);
        let r = results(&out);
        assert_eq!(r["admissible_count"], json!(0));
        assert_eq!(r["sifted_count"], json!(0));
        assert_eq!(r["irreducible_count"], json!(0));
    }

    #[test]
    fn fp_audit_and_primes() {
        let (code, out, _) = invoke(&["fp-audit", "--degree", "2", "--primes", "2,3,5,7"]);
        assert_eq!(code, 0);
        let r = results(&out);
        let rows = r["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0]["exact"], json!(1));
        assert_eq!(rows[0]["main_term"], json!({"num": "2", "den": "1"}));
        assert_eq!(rows[1]["normalized_error"], json!({"num": "1", "den": "2"}));

        let (_, out, _) = invoke(&["primes", "--below", "10"]);
        assert_eq!(results(&out)["primes"], json!([2, 3, 5, 7]));
        let (_, out, _) = invoke(&["primes", "--below", "2"]);
        assert_eq!(results(&out)["primes"], json!([]));
        let (_, out, _) = invoke(&["primes", "--below", "10", "--format", "csv"]);
        assert_eq!(out, "prime\n2\n3\n5\n7\n");
    }

    #[test]
    fn chebyshev_and_bounds_audit() {
        let (code, out, _) = invoke(&["chebyshev", "--z-max", "1000"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["exact"], json!(false));
        assert_eq!(v["results"]["band"]["holds"], json!(true));

        let (code, out, _) =
            invoke(&["bounds-audit", "--degree", "4", "--from", "0", "--to", "24"]);
        assert_eq!(code, 0);
        let r = results(&out);
        assert_eq!(r["reports"].as_array().unwrap().len(), 25);
        assert_eq!(r["reports"][5]["lower_violated"], json!(true));
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        for args in [
            vec!["count", "--degree", "10", "--height", "400000"],
            vec!["sieve", "--degree", "4", "--height", "12", "--z", "8"],
            vec!["chebyshev", "--z-max", "500"],
            vec!["fp-audit", "--degree", "3", "--primes", "2,3,101"],
        ] {
            let (_, out, _) = invoke(&args);
            let v: Value = serde_json::from_str(&out).unwrap();
            let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
            assert_eq!(again, out);
        }
    }
}
