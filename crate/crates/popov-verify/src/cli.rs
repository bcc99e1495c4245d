//! Command-line front end: single verifications, parameter-grid scans, and
//! Mellin checks, with deterministic machine-readable report streams.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::identities::{catalog, run_identity, EvaluationReport, IdentityParams};
use crate::mellin::{
    asymptotic_check_2f1, asymptotic_check_gamma2f1, mellin_forward_check, mellin_inverse_check,
    mellin_jk_check, AsymptoticCheckResult,
};
use crate::series::set_max_terms_limit;
use crate::{Error, Result};

/// 17 significant digits: enough for a lossless f64 round trip.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::InvalidSpec(format!("bad number {s:?}: {e}")))
}

/// Accepts "2", "-1.5", "0.8+0.5i", "0.8-0.5i", "1.5i".
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim();
    if let Some(body) = t.strip_suffix('i') {
        // split at the last +/- that is not a leading sign or an exponent sign
        let bytes = body.as_bytes();
        for pos in (1..bytes.len()).rev() {
            let c = bytes[pos] as char;
            if (c == '+' || c == '-') && !matches!(bytes[pos - 1] as char, 'e' | 'E') {
                let re = parse_f64(&body[..pos])?;
                let im_str = &body[pos..];
                let im = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    parse_f64(im_str)?
                };
                return Ok(Complex64::new(re, im));
            }
        }
        let im = if body.is_empty() { 1.0 } else { parse_f64(body)? };
        return Ok(Complex64::new(0.0, im));
    }
    Ok(Complex64::new(parse_f64(t)?, 0.0))
}

/// "a..b:n" (n evenly spaced points, inclusive), or a single scalar.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let t = s.trim();
    if let Some((range, count)) = t.rsplit_once(':') {
        if let Some((a, b)) = range.split_once("..") {
            let (a, b) = (parse_f64(a)?, parse_f64(b)?);
            let n: usize = count
                .parse()
                .map_err(|e| Error::InvalidSpec(format!("bad grid count {count:?}: {e}")))?;
            if n == 0 {
                return Err(Error::InvalidSpec(format!("empty grid {t:?}")));
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            let step = (b - a) / (n - 1) as f64;
            return Ok((0..n).map(|i| a + step * i as f64).collect());
        }
    }
    if t.contains("..") {
        return Err(Error::InvalidSpec(format!(
            "range {t:?} needs a point count, e.g. 0.7..2.0:8"
        )));
    }
    Ok(vec![parse_f64(t)?])
}

/// "a..b" (inclusive integer range) or a single integer.
pub fn parse_int_range(s: &str) -> Result<Vec<u64>> {
    let t = s.trim();
    if let Some((a, b)) = t.split_once("..") {
        let a: u64 = a
            .parse()
            .map_err(|e| Error::InvalidSpec(format!("bad integer {a:?}: {e}")))?;
        let b: u64 = b
            .parse()
            .map_err(|e| Error::InvalidSpec(format!("bad integer {b:?}: {e}")))?;
        if b < a {
            return Err(Error::InvalidSpec(format!("empty range {t:?}")));
        }
        return Ok((a..=b).collect());
    }
    Ok(vec![t
        .parse()
        .map_err(|e| Error::InvalidSpec(format!("bad integer {t:?}: {e}")))?])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// One grid-point verification result, all floats as 17-digit strings so the
/// serialized form round-trips exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub id: String,
    pub k: u32,
    pub modulus: u64,
    pub x: String,
    pub y: String,
    pub z: String,
    pub nu: String,
    pub q: String,
    pub tol: String,
    pub lhs_re: String,
    pub lhs_im: String,
    pub rhs_re: String,
    pub rhs_im: String,
    pub abs_residual: String,
    pub rel_residual: String,
    pub lhs_tail: String,
    pub rhs_tail: String,
    pub lhs_terms: u64,
    pub rhs_terms: u64,
    pub pass: bool,
    pub wall_time_ms: String,
}

impl ReportRecord {
    fn from_report(id: &str, p: &IdentityParams, rep: &EvaluationReport, ms: f64) -> Self {
        ReportRecord {
            id: id.to_string(),
            k: p.k,
            modulus: p.modulus,
            x: fmt17(p.x),
            y: fmt17(p.y),
            z: fmt17(p.z),
            nu: fmt17(p.nu),
            q: fmt17(p.q),
            tol: fmt17(p.tol),
            lhs_re: fmt17(rep.lhs.value.re),
            lhs_im: fmt17(rep.lhs.value.im),
            rhs_re: fmt17(rep.rhs.value.re),
            rhs_im: fmt17(rep.rhs.value.im),
            abs_residual: fmt17(rep.abs_residual),
            rel_residual: fmt17(rep.rel_residual),
            lhs_tail: fmt17(rep.lhs.tail_bound),
            rhs_tail: fmt17(rep.rhs.tail_bound),
            lhs_terms: rep.lhs.terms_used as u64,
            rhs_terms: rep.rhs.terms_used as u64,
            pass: rep.pass,
            wall_time_ms: format!("{ms:.3}"),
        }
    }

    const CSV_HEADER: &'static str = "id,k,modulus,x,y,z,nu,q,tol,lhs_re,lhs_im,rhs_re,rhs_im,\
        abs_residual,rel_residual,lhs_tail,rhs_tail,lhs_terms,rhs_terms,pass,wall_time_ms";

    fn csv_row(&self) -> String {
        [
            csv_field(&self.id),
            self.k.to_string(),
            self.modulus.to_string(),
            csv_field(&self.x),
            csv_field(&self.y),
            csv_field(&self.z),
            csv_field(&self.nu),
            csv_field(&self.q),
            csv_field(&self.tol),
            csv_field(&self.lhs_re),
            csv_field(&self.lhs_im),
            csv_field(&self.rhs_re),
            csv_field(&self.rhs_im),
            csv_field(&self.abs_residual),
            csv_field(&self.rel_residual),
            csv_field(&self.lhs_tail),
            csv_field(&self.rhs_tail),
            self.lhs_terms.to_string(),
            self.rhs_terms.to_string(),
            self.pass.to_string(),
            csv_field(&self.wall_time_ms),
        ]
        .join(",")
    }

    fn pretty_row(&self) -> String {
        format!(
            "{:<18} k={:<2} x={:<9.6} y={:<9.6} z={:<7.4} nu={:<7.4} residual={:>12.5e} {}",
            self.id,
            self.k,
            self.x.parse::<f64>().unwrap_or(f64::NAN),
            self.y.parse::<f64>().unwrap_or(f64::NAN),
            self.z.parse::<f64>().unwrap_or(f64::NAN),
            self.nu.parse::<f64>().unwrap_or(f64::NAN),
            self.abs_residual.parse::<f64>().unwrap_or(f64::NAN),
            if self.pass { "pass" } else { "FAIL" },
        )
    }
}

/// RFC-4180: quote when the field contains a comma, quote, or newline.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// sha256 over the serialized records with wall_time_ms blanked out.
pub fn determinism_hash(records: &[ReportRecord]) -> String {
    let mut hasher = Sha256::new();
    for r in records {
        let mut clone = r.clone();
        clone.wall_time_ms = "0".into();
        hasher.update(serde_json::to_string(&clone).expect("record serializes"));
        hasher.update(b"\n");
    }
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Fully resolved run request: every parameter is a non-empty grid.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub id: String,
    pub k: Vec<u64>,
    pub modulus: Vec<u64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub nu: Vec<f64>,
    pub q: Vec<f64>,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if !catalog().iter().any(|e| e.id == self.id) {
            return Err(Error::InvalidSpec(format!(
                "unknown identity id {:?} (see `verify list`)",
                self.id
            )));
        }
        if self.tol <= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        for (name, len) in [
            ("k", self.k.len()),
            ("modulus", self.modulus.len()),
            ("x", self.x.len()),
            ("y", self.y.len()),
            ("z", self.z.len()),
            ("nu", self.nu.len()),
            ("q", self.q.len()),
        ] {
            if len == 0 {
                return Err(Error::InvalidSpec(format!("empty grid for {name}")));
            }
        }
        Ok(())
    }

    /// Cartesian product in fixed axis order (k, modulus, x, y, z, nu, q).
    fn grid(&self) -> Vec<IdentityParams> {
        let mut points = Vec::new();
        for &k in &self.k {
            for &modulus in &self.modulus {
                for &x in &self.x {
                    for &y in &self.y {
                        for &z in &self.z {
                            for &nu in &self.nu {
                                for &q in &self.q {
                                    points.push(IdentityParams {
                                        k: k as u32,
                                        modulus,
                                        x,
                                        y,
                                        z,
                                        nu,
                                        q,
                                        tol: self.tol,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        points
    }
}

/// Simple key=value config file; '#' starts a comment. Recognized keys
/// mirror the flags (tol, format, jobs, max_terms) and parameter defaults
/// (k, modulus, x, y, z, nu, q), grid syntax included.
#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    pub entries: Vec<(String, String)>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidSpec(format!("config line {}: expected key=value", lineno + 1))
            })?;
            entries.push((key.trim().to_string(), value.trim().to_string()));
        }
        Ok(FileConfig { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    about = "Certified numerical verification of Bessel-series summation identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Residual tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report stream to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for grid scans (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Truncation ceiling for series evaluation
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    /// key=value config file; flags override file values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, clap::Args)]
struct ParamArgs {
    /// Dimension k (integer or inclusive range like 1..4)
    #[arg(long)]
    k: Option<String>,
    /// Character modulus
    #[arg(long)]
    modulus: Option<String>,
    /// Grid syntax a..b:n or a scalar
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long)]
    q: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// List the identity catalog with parameter domains
    List,
    /// Verify one identity at a single parameter point
    Run {
        id: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Verify one identity over a parameter grid
    Scan {
        id: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Mellin-transform and asymptotic checks
    Mellin {
        #[command(subcommand)]
        check: MellinCmd,
    },
}

#[derive(Subcommand, Debug)]
enum MellinCmd {
    /// Forward transform of e^{-alpha x} J_{k/4-1/2}(beta x) vs its closed form
    Forward {
        #[arg(long)]
        s: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Truncated inverse line integral vs the original kernel
    Inverse {
        #[arg(long, default_value_t = 1.0)]
        n_arg: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 40.0)]
        t_max: f64,
    },
    /// J.K pair transform vs its closed Gamma.Gamma.2F1 form
    Jk {
        #[arg(long)]
        s: String,
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
    },
    /// Large-height 2F1 ratio table (deviation * t per height)
    Asym2f1 {
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        nu: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.3)]
        beta: f64,
        /// Comma-separated strictly increasing heights
        #[arg(long, default_value = "50,100,200")]
        heights: String,
    },
    /// Gamma.Gamma.2F1 majorant threshold scan
    #[command(name = "asymgamma2f1")]
    AsymGamma2f1 {
        #[arg(long, default_value_t = 1.5)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        #[arg(long, default_value = "0.5")]
        nu: String,
        /// beta/alpha in (0, 1)
        #[arg(long, default_value_t = 0.4)]
        ratio: f64,
        #[arg(long, default_value_t = 30.0)]
        tau_max: f64,
    },
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidSpec(format!("cannot write {path:?}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn render(records: &[ReportRecord], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(records).expect("records serialize"),
        Format::Csv => {
            let mut s = String::from(ReportRecord::CSV_HEADER);
            for r in records {
                s.push('\n');
                s.push_str(&r.csv_row());
            }
            s
        }
        Format::Pretty => records
            .iter()
            .map(ReportRecord::pretty_row)
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn cmd_list(format: Format, out: &Option<PathBuf>) -> Result<i32> {
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Entry<'a> {
                id: &'a str,
                params: &'a [&'a str],
                constraints: &'a str,
            }
            let entries: Vec<Entry> = catalog()
                .iter()
                .map(|e| Entry {
                    id: e.id,
                    params: e.params,
                    constraints: e.constraints,
                })
                .collect();
            serde_json::to_string_pretty(&entries).expect("catalog serializes")
        }
        _ => catalog()
            .iter()
            .map(|e| format!("{:<18} [{}]  {}", e.id, e.params.join(", "), e.constraints))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(&text, out)?;
    Ok(0)
}

/// Evaluates every grid point (in parallel when requested), keeping input
/// order in the output; the determinism hash goes to stderr.
pub fn run_config(config: &RunConfig) -> Result<(Vec<ReportRecord>, bool)> {
    config.validate()?;
    let points = config.grid();
    let eval = |p: &IdentityParams| -> Result<ReportRecord> {
        let start = Instant::now();
        let rep = run_identity(&config.id, p).map_err(|e| {
            Error::InvalidSpec(format!(
                "{} at k={} x={} y={} z={} nu={} q={} modulus={}: {e}",
                match e {
                    Error::TolUnreachable { .. } => "tolerance unreachable",
                    _ => "rejected",
                },
                p.k, p.x, p.y, p.z, p.nu, p.q, p.modulus
            ))
            .tagged_like(&e)
        })?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(ReportRecord::from_report(&config.id, p, &rep, ms))
    };
    let results: Vec<Result<ReportRecord>> = match config.jobs {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?
            .install(|| points.par_iter().map(eval).collect()),
        _ => points.par_iter().map(eval).collect(),
    };
    let mut records = Vec::with_capacity(results.len());
    for r in results {
        records.push(r?);
    }
    let all_pass = records.iter().all(|r| r.pass);
    Ok((records, all_pass))
}

impl Error {
    /// Keeps the original exit-code class after a message rewrite.
    fn tagged_like(self, original: &Error) -> Error {
        match original {
            Error::TolUnreachable { tol, ceiling, tail } => Error::TolUnreachable {
                tol: *tol,
                ceiling: *ceiling,
                tail: *tail,
            },
            Error::DomainNotCovered(_) => match self {
                Error::InvalidSpec(msg) => Error::DomainNotCovered(msg),
                other => other,
            },
            _ => self,
        }
    }
}

fn mellin_record(name: &str, rep: &EvaluationReport, ms: f64, tol: f64) -> ReportRecord {
    let p = IdentityParams {
        tol,
        ..IdentityParams::default()
    };
    let mut r = ReportRecord::from_report(name, &p, rep, ms);
    // identity parameter axes are meaningless here
    r.k = 0;
    r.modulus = 0;
    r.x = fmt17(0.0);
    r.y = fmt17(0.0);
    r.z = fmt17(0.0);
    r.nu = fmt17(0.0);
    r.q = fmt17(0.0);
    r
}

fn render_asym(name: &str, result: &AsymptoticCheckResult, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                t: String,
                ratio_re: String,
                ratio_im: String,
                deviation: String,
            }
            #[derive(Serialize)]
            struct Table<'a> {
                check: &'a str,
                tau0: Option<String>,
                rows: Vec<Row>,
            }
            let rows = result
                .heights
                .iter()
                .zip(&result.ratios)
                .zip(&result.deviations)
                .map(|((t, r), d)| Row {
                    t: fmt17(*t),
                    ratio_re: fmt17(r.re),
                    ratio_im: fmt17(r.im),
                    deviation: fmt17(*d),
                })
                .collect();
            serde_json::to_string_pretty(&Table {
                check: name,
                tau0: result.tau0.map(fmt17),
                rows,
            })
            .expect("table serializes")
        }
        Format::Csv => {
            let mut s = String::from("t,ratio_re,ratio_im,deviation");
            for ((t, r), d) in result
                .heights
                .iter()
                .zip(&result.ratios)
                .zip(&result.deviations)
            {
                let _ = write!(s, "\n{},{},{},{}", fmt17(*t), fmt17(r.re), fmt17(r.im), fmt17(*d));
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("{name}\n{:>10}  {:>24}  {:>14}", "t", "ratio", "deviation");
            for ((t, r), d) in result
                .heights
                .iter()
                .zip(&result.ratios)
                .zip(&result.deviations)
            {
                let _ = write!(s, "\n{t:>10.2}  {:>11.6}{:+.6}i  {d:>14.6e}", r.re, r.im);
            }
            if let Some(tau0) = result.tau0 {
                let _ = write!(s, "\ntau0 = {tau0}");
            }
            s
        }
    }
}

fn cmd_mellin(check: &MellinCmd, tol: f64, format: Format, out: &Option<PathBuf>) -> Result<i32> {
    match check {
        MellinCmd::Forward { s, alpha, beta, k } => {
            let start = Instant::now();
            let rep = mellin_forward_check(parse_complex(s)?, *alpha, *beta, *k, tol)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let records = vec![mellin_record("mellin_forward", &rep, ms, tol)];
            emit(&render(&records, format), out)?;
            Ok(if rep.pass { 0 } else { 1 })
        }
        MellinCmd::Inverse {
            n_arg,
            alpha,
            beta,
            k,
            sigma,
            t_max,
        } => {
            let start = Instant::now();
            let rep = mellin_inverse_check(*n_arg, *alpha, *beta, *k, *sigma, *t_max, tol)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let records = vec![mellin_record("mellin_inverse", &rep, ms, tol)];
            emit(&render(&records, format), out)?;
            Ok(if rep.pass { 0 } else { 1 })
        }
        MellinCmd::Jk {
            s,
            mu,
            nu,
            alpha,
            beta,
        } => {
            let start = Instant::now();
            let rep = mellin_jk_check(parse_complex(s)?, *mu, parse_complex(nu)?, *alpha, *beta, tol)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let records = vec![mellin_record("mellin_jk", &rep, ms, tol)];
            emit(&render(&records, format), out)?;
            Ok(if rep.pass { 0 } else { 1 })
        }
        MellinCmd::Asym2f1 {
            sigma,
            nu,
            alpha,
            beta,
            heights,
        } => {
            let hs: Vec<f64> = heights
                .split(',')
                .map(parse_f64)
                .collect::<Result<Vec<_>>>()?;
            let result = asymptotic_check_2f1(*sigma, *nu, *alpha, *beta, &hs)?;
            emit(&render_asym("asym2f1", &result, format), out)?;
            Ok(0)
        }
        MellinCmd::AsymGamma2f1 {
            sigma,
            mu,
            nu,
            ratio,
            tau_max,
        } => {
            let result =
                asymptotic_check_gamma2f1(*sigma, *mu, parse_complex(nu)?, *ratio, *tau_max)?;
            emit(&render_asym("asymgamma2f1", &result, format), out)?;
            Ok(0)
        }
    }
}

struct Effective {
    tol: f64,
    format: Format,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    file: FileConfig,
}

fn effective_options(cli: &Cli) -> Result<Effective> {
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidSpec(format!("cannot read {path:?}: {e}")))?;
            FileConfig::parse(&text)?
        }
        None => FileConfig::default(),
    };
    let tol = match (cli.tol, file.get("tol")) {
        (Some(t), _) => t,
        (None, Some(t)) => parse_f64(t)?,
        (None, None) => 1e-9,
    };
    let format = match (&cli.format, file.get("format")) {
        (Some(f), _) => *f,
        (None, Some(f)) => Format::from_str(f, true)
            .map_err(|e| Error::InvalidSpec(format!("config format: {e}")))?,
        (None, None) => Format::Pretty,
    };
    let out = cli
        .out
        .clone()
        .or_else(|| file.get("out").map(PathBuf::from));
    let jobs = match (cli.jobs, file.get("jobs")) {
        (Some(j), _) => Some(j),
        (None, Some(j)) => Some(
            j.parse()
                .map_err(|e| Error::InvalidSpec(format!("config jobs: {e}")))?,
        ),
        (None, None) => None,
    };
    let max_terms = match (cli.max_terms, file.get("max_terms")) {
        (Some(m), _) => Some(m),
        (None, Some(m)) => Some(
            m.parse()
                .map_err(|e| Error::InvalidSpec(format!("config max_terms: {e}")))?,
        ),
        (None, None) => None,
    };
    if let Some(m) = max_terms {
        set_max_terms_limit(m);
    }
    Ok(Effective {
        tol,
        format,
        out,
        jobs,
        file,
    })
}

fn build_run_config(
    id: &str,
    params: &ParamArgs,
    eff: &Effective,
    scalar_only: bool,
) -> Result<RunConfig> {
    let defaults = IdentityParams::default();
    let pick = |flag: &Option<String>, key: &str| -> Option<String> {
        flag.clone()
            .or_else(|| eff.file.get(key).map(str::to_string))
    };
    let int_axis = |flag: &Option<String>, key: &str, dflt: u64| -> Result<Vec<u64>> {
        match pick(flag, key) {
            Some(s) => parse_int_range(&s),
            None => Ok(vec![dflt]),
        }
    };
    let grid_axis = |flag: &Option<String>, key: &str, dflt: f64| -> Result<Vec<f64>> {
        match pick(flag, key) {
            Some(s) => parse_grid(&s),
            None => Ok(vec![dflt]),
        }
    };
    let config = RunConfig {
        id: id.to_string(),
        k: int_axis(&params.k, "k", defaults.k as u64)?,
        modulus: int_axis(&params.modulus, "modulus", defaults.modulus)?,
        x: grid_axis(&params.x, "x", defaults.x)?,
        y: grid_axis(&params.y, "y", defaults.y)?,
        z: grid_axis(&params.z, "z", defaults.z)?,
        nu: grid_axis(&params.nu, "nu", defaults.nu)?,
        q: grid_axis(&params.q, "q", defaults.q)?,
        tol: eff.tol,
        format: eff.format,
        out: eff.out.clone(),
        jobs: eff.jobs,
    };
    if scalar_only && config.grid().len() > 1 {
        return Err(Error::InvalidSpec(
            "`run` takes scalar parameters; use `scan` for grids".into(),
        ));
    }
    Ok(config)
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let eff = effective_options(cli)?;
    match &cli.cmd {
        Cmd::List => cmd_list(eff.format, &eff.out),
        Cmd::Run { id, params } => {
            let config = build_run_config(id, params, &eff, true)?;
            let (records, all_pass) = run_config(&config)?;
            emit(&render(&records, config.format), &config.out)?;
            eprintln!("determinism-hash: {}", determinism_hash(&records));
            Ok(if all_pass { 0 } else { 1 })
        }
        Cmd::Scan { id, params } => {
            let config = build_run_config(id, params, &eff, false)?;
            let (records, all_pass) = run_config(&config)?;
            emit(&render(&records, config.format), &config.out)?;
            eprintln!("determinism-hash: {}", determinism_hash(&records));
            Ok(if all_pass { 0 } else { 1 })
        }
        Cmd::Mellin { check } => cmd_mellin(check, eff.tol, eff.format, &eff.out),
    }
}

/// Entry point for the `verify` binary; returns the process exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
