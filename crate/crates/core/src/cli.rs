//! Command-line front end. [`run`] parses a token list, evaluates one
//! library operation and returns the exit code with the emitted document.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::analysis::{
    default_grids, gap_csv, gap_sweep, region_csv, region_map, theorem_gap_audit, AuditReport, SweepRange,
};
use crate::channel::{classify_regime_exponents, classify_regime_gains, gains_from_exponents, ExponentPoint, Regime, Topology};
use crate::error::Error;
use crate::gdof::{cooperation_classification, gdof_closed_form, GdofResult};
use crate::inner::{inner_best, inner_best_optimized, InnerBoundEval};
use crate::lda::{lda_scheme_for, lda_simulate, lda_verify, reference_configs, LdaConfig, Payload};
use crate::outer::{outer_min, GammaPolicy, OuterBoundEval};

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form gDoF at an exponent point.
    Gdof(PointArgs),
    /// Regime classification, from exponents or from gains at --snr-db.
    Regime {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, allow_hyphen_values = true)]
        snr_db: Option<f64>,
    },
    /// Outer bounds at one SNR.
    Bounds {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, allow_hyphen_values = true)]
        snr_db: f64,
        /// `auto` or a listening fraction in [0, 1].
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        gamma: String,
    },
    /// Best achievable sum-rate at one SNR.
    Inner {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, allow_hyphen_values = true)]
        snr_db: f64,
        #[arg(long)]
        optimize: bool,
    },
    /// Outer minus inner bound over an SNR range.
    GapSweep {
        #[command(flatten)]
        point: PointArgs,
        /// lo:hi:step in dB.
        #[arg(long, allow_hyphen_values = true)]
        snr_range: String,
        #[arg(long)]
        optimize: bool,
    },
    /// gDoF, regime and cooperation label over an (alpha, beta) grid.
    RegionMap {
        #[arg(long)]
        topology: Topology,
        #[arg(long, allow_hyphen_values = true)]
        alpha_range: String,
        #[arg(long, allow_hyphen_values = true)]
        beta_range: String,
    },
    /// Bit-level check of the cooperative schemes against the gDoF.
    LdaVerify {
        #[arg(long)]
        topology: Option<Topology>,
        /// n_d:n_i:n_f; defaults to one reference point per scheme.
        #[arg(long)]
        levels: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the slot-by-slot trace of --levels instead of the report.
        #[arg(long)]
        trace: bool,
    },
    /// Constant-gap audit; exits 1 on any violation.
    Audit {
        #[arg(long)]
        topology: Topology,
        #[arg(long, allow_hyphen_values = true)]
        alpha_range: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta_range: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        snr_range: Option<String>,
    },
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long)]
    topology: Topology,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hdccic", version, about = "gDoF, bounds and gap audits for the half-duplex causal cognitive interference channel")]
struct Root {
    #[command(flatten)]
    output: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stdout: String, stderr: String) -> Self {
        Outcome { code, stdout, stderr }
    }
}

/// Errors split by exit status.
enum Failure {
    Usage(String),
    Violation { document: String, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Violation {
            document: String::new(),
            message: e.to_string(),
        }
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

/// Runs one command. `args` excludes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("hdccic")).chain(args.into_iter().map(Into::into));
    let root = match Root::try_parse_from(argv) {
        Ok(r) => r,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(2, String::new(), text),
            };
        }
    };
    let format = root.output.format;
    let (code, document, message) = match execute(root.command, format) {
        Ok(doc) => (0, doc, String::new()),
        Err(Failure::Usage(m)) => return Outcome::fail(2, String::new(), format!("error: {m}\n")),
        Err(Failure::Violation { document, message }) => (1, document, format!("error: {message}\n")),
    };
    match &root.output.out {
        Some(path) => match std::fs::write(path, &document) {
            Ok(()) => Outcome::fail(code, String::new(), message),
            Err(e) => Outcome::fail(1, String::new(), format!("error: writing {}: {e}\n", path.display())),
        },
        None => Outcome::fail(code, document, message),
    }
}

fn point_of(p: &PointArgs) -> std::result::Result<ExponentPoint, Failure> {
    ExponentPoint::new(p.alpha, p.beta, p.topology).map_err(usage)
}

fn check_db(v: f64) -> std::result::Result<f64, Failure> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::Usage(format!("SNR must be finite, got {v} dB")))
    }
}

fn range_of(s: &str, nonneg: bool) -> std::result::Result<SweepRange, Failure> {
    let r: SweepRange = s.parse().map_err(usage)?;
    if nonneg && r.lo < 0.0 {
        return Err(Failure::Usage(format!("range {s} must be non-negative")));
    }
    Ok(r)
}

#[derive(Serialize)]
struct GdofDoc {
    topology: Topology,
    alpha: f64,
    beta: f64,
    #[serde(flatten)]
    result: GdofResult,
    regime: u8,
    coop: &'static str,
}

#[derive(Serialize)]
struct RegimeDoc {
    alpha: f64,
    beta: f64,
    snr_db: Option<f64>,
    #[serde(flatten)]
    regime: Regime,
}

#[derive(Serialize)]
struct BoundsDoc {
    topology: Topology,
    alpha: f64,
    beta: f64,
    snr_db: f64,
    #[serde(flatten)]
    bounds: OuterBoundEval,
}

#[derive(Serialize)]
struct InnerDoc {
    topology: Topology,
    alpha: f64,
    beta: f64,
    snr_db: f64,
    optimized: bool,
    #[serde(flatten)]
    inner: InnerBoundEval,
}

fn execute(command: Command, format: Option<Format>) -> std::result::Result<String, Failure> {
    let single = |v: &dyn ErasedSerialize, format: Option<Format>| -> std::result::Result<String, Failure> {
        let value = v.to_value()?;
        Ok(match format.unwrap_or(Format::Json) {
            Format::Json => to_json(&value),
            Format::Csv => object_csv(&value),
        })
    };
    match command {
        Command::Gdof(p) => {
            let point = point_of(&p)?;
            let doc = GdofDoc {
                topology: point.topology,
                alpha: point.alpha,
                beta: point.beta,
                result: gdof_closed_form(&point),
                regime: classify_regime_exponents(&point).index,
                coop: cooperation_classification(&point).as_str(),
            };
            single(&doc, format)
        }
        Command::Regime { point: p, snr_db } => {
            let point = point_of(&p)?;
            let regime = match snr_db {
                Some(db) => classify_regime_gains(&gains_from_exponents(&point, check_db(db)?)?, point.topology)?,
                None => classify_regime_exponents(&point),
            };
            let doc = RegimeDoc {
                alpha: point.alpha,
                beta: point.beta,
                snr_db,
                regime,
            };
            single(&doc, format)
        }
        Command::Bounds { point: p, snr_db, gamma } => {
            let point = point_of(&p)?;
            let db = check_db(snr_db)?;
            let policy = match gamma.as_str() {
                "auto" => GammaPolicy::Optimize,
                v => {
                    let g: f64 = v
                        .parse()
                        .map_err(|_| Failure::Usage(format!("--gamma expects auto or a number, got {v:?}")))?;
                    if !(0.0..=1.0).contains(&g) {
                        return Err(usage(Error::InvalidFraction { name: "gamma", value: g }));
                    }
                    GammaPolicy::Fixed(g)
                }
            };
            let gains = gains_from_exponents(&point, db)?;
            let doc = BoundsDoc {
                topology: point.topology,
                alpha: point.alpha,
                beta: point.beta,
                snr_db: db,
                bounds: outer_min(&gains, policy)?,
            };
            single(&doc, format)
        }
        Command::Inner { point: p, snr_db, optimize } => {
            let point = point_of(&p)?;
            let db = check_db(snr_db)?;
            let gains = gains_from_exponents(&point, db)?;
            let inner = if optimize {
                inner_best_optimized(&gains, point.topology)?
            } else {
                inner_best(&gains, point.topology)?
            };
            let doc = InnerDoc {
                topology: point.topology,
                alpha: point.alpha,
                beta: point.beta,
                snr_db: db,
                optimized: optimize,
                inner,
            };
            single(&doc, format)
        }
        Command::GapSweep { point: p, snr_range, optimize } => {
            let point = point_of(&p)?;
            let range = range_of(&snr_range, false)?;
            let records = gap_sweep(&point, &range, optimize)?;
            Ok(match format.unwrap_or(Format::Csv) {
                Format::Csv => gap_csv(&records),
                Format::Json => to_json(&(&records as &dyn ErasedSerialize).to_value()?),
            })
        }
        Command::RegionMap {
            topology,
            alpha_range,
            beta_range,
        } => {
            let a = range_of(&alpha_range, true)?;
            let b = range_of(&beta_range, true)?;
            let rows = region_map(topology, &a, &b)?;
            Ok(match format.unwrap_or(Format::Csv) {
                Format::Csv => region_csv(&rows),
                Format::Json => to_json(&(&rows as &dyn ErasedSerialize).to_value()?),
            })
        }
        Command::LdaVerify {
            topology,
            levels,
            seed,
            trace,
        } => lda_command(topology, levels.as_deref(), seed, trace, format),
        Command::Audit {
            topology,
            alpha_range,
            beta_range,
            snr_range,
        } => {
            let (mut alphas, mut betas, mut snrs) = default_grids();
            if let Some(r) = alpha_range {
                alphas = range_of(&r, true)?.points();
            }
            if let Some(r) = beta_range {
                betas = range_of(&r, true)?.points();
            }
            if let Some(r) = snr_range {
                snrs = range_of(&r, false)?.points();
            }
            match theorem_gap_audit(topology, &alphas, &betas, &snrs) {
                Ok(report) => match format {
                    Some(Format::Json) => to_json_erased(&report),
                    Some(Format::Csv) => Ok(audit_csv(&report)),
                    None => Ok(audit_text(&report)),
                },
                Err(e @ Error::GapViolation { .. }) => Err(Failure::Violation {
                    document: format!("violation: {e}\n"),
                    message: e.to_string(),
                }),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn parse_levels(s: &str, topology: Topology) -> std::result::Result<LdaConfig, Failure> {
    let parts: std::result::Result<Vec<usize>, _> = s.split(':').map(|p| p.trim().parse::<usize>()).collect();
    match parts {
        Ok(v) if v.len() == 3 => Ok(LdaConfig::new(v[0], v[1], v[2], topology)),
        _ => Err(Failure::Usage(format!("--levels expects n_d:n_i:n_f, got {s:?}"))),
    }
}

const LDA_CSV_HEADER: &str = "topology,n_d,n_i,n_f,scheme,listen_slots,transmit_slots,r_p,r_c,rate,gdof,status";

fn lda_command(
    topology: Option<Topology>,
    levels: Option<&str>,
    seed: u64,
    trace: bool,
    format: Option<Format>,
) -> std::result::Result<String, Failure> {
    let configs = match levels {
        Some(l) => vec![parse_levels(l, topology.unwrap_or(Topology::Symmetric))?],
        None => {
            if trace {
                return Err(Failure::Usage("--trace requires --levels".into()));
            }
            reference_configs()
                .into_iter()
                .filter(|c| topology.is_none_or(|t| c.topology == t))
                .collect()
        }
    };
    if trace {
        let cfg = &configs[0];
        let scheme = lda_scheme_for(cfg)?;
        return Ok(lda_simulate(cfg, &scheme, &Payload::Random { seed })?.dump());
    }
    let mut results = Vec::new();
    for cfg in &configs {
        results.push(lda_verify(cfg, seed)?);
    }
    let all_pass = results.iter().all(|r| r.matches);
    let document = match format.unwrap_or(Format::Csv) {
        Format::Json => to_json_erased(&results)?,
        Format::Csv => {
            let mut out = format!("{LDA_CSV_HEADER}\n");
            for r in &results {
                let kind = serde_json::to_value(r.kind).ok();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.config.topology,
                    r.config.n_d,
                    r.config.n_i,
                    r.config.n_f,
                    kind.as_ref().and_then(Value::as_str).unwrap_or(""),
                    r.listen_slots,
                    r.transmit_slots,
                    r.r_p,
                    r.r_c,
                    r.rate,
                    r.gdof,
                    if r.matches { "PASS" } else { "FAIL" }
                );
            }
            out
        }
    };
    if all_pass {
        Ok(document)
    } else {
        Err(Failure::Violation {
            document,
            message: "deterministic sum-rate differs from the gDoF".into(),
        })
    }
}

fn audit_text(r: &AuditReport) -> String {
    let w = &r.worst;
    let mut out = String::new();
    let _ = writeln!(out, "topology {}", r.topology);
    let _ = writeln!(out, "points {}", r.points);
    let _ = writeln!(
        out,
        "worst gap {:.6} bits at alpha={} beta={} snr_db={} (region {})",
        w.gap_bits, w.alpha, w.beta, w.snr_db, w.regime_index
    );
    let _ = writeln!(out, "min gap {:.6} bits", r.min_gap_bits);
    for g in r.per_regime.iter().filter(|g| g.points > 0) {
        let _ = writeln!(
            out,
            "region {:>2} {:<30} points {:>6} max {:.6} constant {}{}{}",
            g.index,
            g.label,
            g.points,
            g.max_gap_bits,
            g.regime_constant_bits,
            if g.fd_cited { " fd-cited" } else { "" },
            if g.exceeds_regime_constant { " above-constant" } else { "" }
        );
    }
    let _ = writeln!(out, "worst gap ≤ {}", r.bound_bits);
    out
}

fn audit_csv(r: &AuditReport) -> String {
    let mut out = String::from("region,label,points,max_gap_bits,regime_constant_bits,fd_cited\n");
    for g in &r.per_regime {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            g.index, g.label, g.points, g.max_gap_bits, g.regime_constant_bits, g.fd_cited
        );
    }
    out
}

/// Object-safe wrapper so documents of different types share one path.
trait ErasedSerialize {
    fn to_value(&self) -> std::result::Result<Value, Failure>;
}

impl<T: Serialize> ErasedSerialize for T {
    fn to_value(&self) -> std::result::Result<Value, Failure> {
        serde_json::to_value(self).map_err(|e| Failure::Violation {
            document: String::new(),
            message: e.to_string(),
        })
    }
}

fn to_json_erased<T: Serialize>(v: &T) -> std::result::Result<String, Failure> {
    Ok(to_json(&v.to_value()?))
}

/// Compact JSON with every float written to at least 12 significant digits.
pub fn to_json(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PaddedFloats);
    value.serialize(&mut ser).expect("serializing a JSON value into memory");
    let mut s = String::from_utf8(buf).expect("JSON is UTF-8");
    s.push('\n');
    s
}

struct PaddedFloats;

impl serde_json::ser::Formatter for PaddedFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }
}

fn significant_digits(s: &str) -> usize {
    s.chars()
        .filter(char::is_ascii_digit)
        .skip_while(|&c| c == '0')
        .count()
}

/// Shortest round-trip form, padded to 12 significant digits when shorter.
pub fn format_f64(v: f64) -> String {
    let short = v.to_string();
    if significant_digits(&short) >= 12 {
        return short;
    }
    if v == 0.0 {
        return "0.00000000000".into();
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Header and one row from a JSON object; nested objects use dotted keys.
fn object_csv(value: &Value) -> String {
    fn flatten(prefix: &str, v: &Value, keys: &mut Vec<String>, vals: &mut Vec<String>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    flatten(&key, x, keys, vals);
                }
            }
            Value::String(s) => {
                keys.push(prefix.into());
                vals.push(s.clone());
            }
            Value::Null => {
                keys.push(prefix.into());
                vals.push(String::new());
            }
            other => {
                keys.push(prefix.into());
                vals.push(other.to_string());
            }
        }
    }
    let (mut keys, mut vals) = (Vec::new(), Vec::new());
    flatten("", value, &mut keys, &mut vals);
    format!("{}\n{}\n", keys.join(","), vals.join(","))
}
