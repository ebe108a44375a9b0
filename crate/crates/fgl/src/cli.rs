//! Command-line front end.

use std::collections::BTreeSet;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fgl_core::bounds::{correlation_upper_bound, prg_seed_length, Framework, SeedLengthQuery, CONSTANT_ONE};
use fgl_core::composition::{
    compose, fit_bound_profile, fit_single_profile, verify_composition_bound, verify_xor_reduction, BoundProfile,
    CompositionAnalysis, CompositionError,
};
use fgl_core::f2poly::random_read_delta_poly;
use fgl_core::readfew::{bias_certificate, coefficient_certificate, ReadFewError};
use fgl_core::spectrum::{compute_spectrum_with_cap, mask_set, SpectrumError, MAX_CAP};
use fgl_core::symmetric::{
    compare_with_lower_target, hk_profile, kravchuk, lower_bound_construction, poly_from_profile, symmetric_levels,
    symmetric_pm_levels, symmetric_poly_of, SymmetricError, SymmetricProfile,
};
use fgl_core::rational::EnclosureOrdering;
use fgl_core::{level_l1_profile, F2Poly, LevelL1Vector, Rational};
use serde_json::{json, Value};

use crate::formats::{self, ratio, CompositionSpecFile, FormatError, LevelsJson, ProfileJson, SpectrumJson};
use crate::suites::{run_suite, SuiteConfig, SUITES};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_FAILED: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Failed(_) => EXIT_FAILED,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<CompositionError> for CliError {
    fn from(e: CompositionError) -> Self {
        match e {
            CompositionError::Spectrum(s) => s.into(),
            CompositionError::ClosureCap { .. } => CliError::Cap(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SymmetricError> for CliError {
    fn from(e: SymmetricError) -> Self {
        match e {
            SymmetricError::TooLarge { .. } => CliError::Cap(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ReadFewError> for CliError {
    fn from(e: ReadFewError) -> Self {
        match e {
            ReadFewError::Spectrum(s) => s.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "fgl", version, about = "Exact Fourier-growth analysis of F2-polynomials")]
pub struct Cli {
    /// Brute-force cap on the number of variables (overrides FGL_CAP).
    #[arg(long, global = true)]
    pub cap: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads for corpus suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PolySource {
    /// Polynomial such as "x1*x2 + x3".
    #[arg(long)]
    pub poly: Option<String>,
    /// File holding a polynomial string.
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,
    /// Ambient number of variables, if larger than the highest index.
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, read, strata and level norms of a polynomial.
    Analyze {
        #[command(flatten)]
        source: PolySource,
        /// Report levels 1..=K only.
        #[arg(long)]
        levels: Option<usize>,
        /// Treat the input as a symmetric profile instead of a polynomial.
        #[arg(long)]
        symmetric: bool,
        /// Profile source for --symmetric: "lower-bound:k=K", "hk:k=K" or a bit string.
        #[arg(long)]
        profile_from: Option<String>,
        /// Index sets to certify, e.g. "1,3;2,4".
        #[arg(long)]
        certify: Option<String>,
        /// Include the full spectrum.
        #[arg(long)]
        spectrum: bool,
    },
    /// Symmetric profiles: levels, BGL polynomial and periods.
    Symmetric {
        #[arg(long)]
        n: usize,
        /// Bit string of length n+1, or "lower-bound:k=K" / "hk:k=K".
        #[arg(long)]
        profile: String,
        /// Period for the BGL polynomial; defaults to the profile period.
        #[arg(long)]
        period: Option<usize>,
    },
    /// Kravchuk values K(n, k, w).
    Kravchuk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        w: Option<usize>,
    },
    /// Coefficient and bias certificates for a read-few polynomial.
    Certify {
        #[command(flatten)]
        source: PolySource,
        /// Index sets, e.g. "1,3;2,4".
        #[arg(long)]
        sets: Option<String>,
        /// Certify every set of size at most this.
        #[arg(long)]
        all_up_to: Option<usize>,
    },
    /// Disjoint composition: composed polynomial, formula and bound checks.
    Compose {
        /// CompositionSpec JSON file.
        #[arg(long)]
        spec: Option<std::path::PathBuf>,
        /// Outer polynomial or truth-table bits (with --inner).
        #[arg(long)]
        outer: Option<String>,
        #[arg(long = "inner")]
        inners: Vec<String>,
        /// Level for the bound check.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// b used for both fitted profiles.
        #[arg(long, default_value = "1")]
        b: String,
        /// Closure cap for the outer fit.
        #[arg(long, default_value_t = 8)]
        closure_cap: u32,
    },
    /// PRG seed lengths and the correlation bound.
    Bounds {
        #[arg(long)]
        framework: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value_t = 2.0)]
        n: f64,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        /// Evaluate the correlation bound with this level norm instead.
        #[arg(long)]
        l1k: Option<String>,
    },
    /// Runs a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Seeded random read-Δ polynomials.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// XOR reduction check for one function.
    Xor {
        #[command(flatten)]
        source: PolySource,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        b: Option<String>,
    },
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Effective cap: flag, then `FGL_CAP`, then the default; never above 24.
pub fn resolve_cap(flag: Option<u32>, env: Option<&str>) -> Result<u32, CliError> {
    let cap = match (flag, env) {
        (Some(c), _) => c,
        (None, Some(s)) => s.trim().parse().map_err(|_| CliError::Usage(format!("FGL_CAP={s:?} is not an integer")))?,
        (None, None) => fgl_core::spectrum::DEFAULT_CAP,
    };
    if cap > MAX_CAP {
        return Err(CliError::Usage(format!("cap {cap} exceeds the maximum {MAX_CAP}")));
    }
    Ok(cap)
}

pub fn run<I, T>(args: I, env_cap: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli, env_cap) {
        Ok(value) => Outcome { code: 0, stdout: render(&cli, &value), stderr: String::new() },
        Err((e, value)) => Outcome {
            code: e.code(),
            stdout: value.map(|v| render(&cli, &v)).unwrap_or_default(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render(cli: &Cli, v: &Value) -> String {
    match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Csv => to_csv(v),
    }
}

/// Tables as rows; everything else as `key,value` pairs.
fn to_csv(v: &Value) -> String {
    let mut out = String::new();
    if let Some(rows) = v.get("csv_rows").and_then(Value::as_array) {
        for row in rows {
            let cells: Vec<String> = row.as_array().into_iter().flatten().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        return out;
    }
    out.push_str("key,value\n");
    if let Some(obj) = v.as_object() {
        for (k, x) in obj {
            out.push_str(&format!("{},{}\n", k, csv_cell(x)));
        }
    }
    out
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

type Run = Result<Value, (CliError, Option<Value>)>;

fn plain<T>(r: Result<T, CliError>) -> Result<T, (CliError, Option<Value>)> {
    r.map_err(|e| (e, None))
}

fn read_poly(src: &PolySource) -> Result<F2Poly, CliError> {
    let text = match (&src.poly, &src.file) {
        (Some(p), None) => p.clone(),
        (None, Some(f)) => std::fs::read_to_string(f).map_err(|e| CliError::Usage(format!("{}: {e}", f.display())))?,
        _ => return Err(CliError::Usage("give exactly one of --poly or --file".into())),
    };
    let p = formats::poly(text.trim())?;
    match src.n {
        Some(n) if n < p.n() => Err(CliError::Usage(format!("--n {n} is below the highest index {}", p.n()))),
        Some(n) => p.widen(n).map_err(|e| CliError::Usage(e.to_string())),
        None => Ok(p),
    }
}

fn parse_sets(text: &str) -> Result<Vec<BTreeSet<u32>>, CliError> {
    text.split(';')
        .map(|part| {
            part.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    let s = s.trim().trim_start_matches('x');
                    s.parse::<u32>().map_err(|_| CliError::Parse(format!("bad index {s:?}")))
                })
                .collect()
        })
        .collect()
}

fn parse_profile(n: usize, src: &str) -> Result<SymmetricProfile, CliError> {
    let level = |rest: &str| -> Result<usize, CliError> {
        rest.strip_prefix("k=")
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| CliError::Parse(format!("expected k=K in {src:?}")))
    };
    if let Some(rest) = src.strip_prefix("lower-bound:") {
        return Ok(lower_bound_construction(n, level(rest)?)?.profile);
    }
    if let Some(rest) = src.strip_prefix("hk:") {
        return Ok(hk_profile(n, level(rest)?)?);
    }
    let p = SymmetricProfile::from_bit_string(src).ok_or_else(|| CliError::Parse(format!("bad profile {src:?}")))?;
    if p.n() != n {
        return Err(CliError::Usage(format!("profile has {} values, expected {}", src.len(), n + 1)));
    }
    Ok(p)
}

fn level_rows(v: &LevelL1Vector, upto: usize) -> Value {
    let zo = v.zero_one_levels();
    let mut rows = vec![json!(["k", "level", "pm_level"])];
    for k in 1..=upto.min(v.n()) {
        rows.push(json!([k, ratio(&zo[k]), ratio(&v.levels[k])]));
    }
    Value::Array(rows)
}

fn levels_value(v: &LevelL1Vector, upto: usize) -> Value {
    let zo = v.zero_one_levels();
    let top = upto.min(v.n());
    json!({
        "bias": ratio(&v.bias),
        "alpha": ratio(&v.alpha),
        "pr_one": ratio(&zo[0]),
        "levels": (1..=top).map(|k| ratio(&zo[k])).collect::<Vec<_>>(),
        "pm_levels": (1..=top).map(|k| ratio(&v.levels[k])).collect::<Vec<_>>(),
    })
}

fn execute(cli: &Cli, env_cap: Option<&str>) -> Run {
    let cap = plain(resolve_cap(cli.cap, env_cap))?;
    match &cli.command {
        Command::Analyze { source, levels, symmetric, profile_from, certify, spectrum } => {
            if *symmetric {
                let n = plain(source.n.ok_or_else(|| CliError::Usage("--symmetric needs --n".into())))? as usize;
                let src = plain(profile_from.as_deref().ok_or_else(|| CliError::Usage("--symmetric needs --profile-from".into())))?;
                let profile = plain(parse_profile(n, src))?;
                return Ok(analyze_symmetric(&profile, levels.unwrap_or(n), src));
            }
            let p = plain(read_poly(source))?;
            analyze_poly(&p, *levels, certify.as_deref(), *spectrum, cap)
        }
        Command::Symmetric { n, profile, period } => {
            let prof = plain(parse_profile(*n, profile))?;
            let m = period.unwrap_or_else(|| prof.period().min(n + 1));
            let bgl = plain(poly_from_profile(&prof, m).map_err(CliError::from))?;
            let levels = symmetric_levels(&prof);
            Ok(json!({
                "profile": ProfileJson::new(&prof),
                "pr_one": ratio(&prof.probability_one()),
                "bgl_period": m,
                "bgl_levels": (0..=*n).filter(|&k| bgl.has_level(k)).collect::<Vec<_>>(),
                "degree": bgl.degree(),
                "levels": levels.iter().map(|l| ratio(&l.level)).collect::<Vec<_>>(),
                "coefficients": levels.iter().map(|l| ratio(&l.coefficient)).collect::<Vec<_>>(),
                "csv_rows": std::iter::once(json!(["k", "level", "coefficient"]))
                    .chain(levels.iter().map(|l| json!([l.k, ratio(&l.level), ratio(&l.coefficient)])))
                    .collect::<Vec<_>>(),
            }))
        }
        Command::Kravchuk { n, k, w } => {
            let ks: Vec<usize> = k.map_or_else(|| (0..=*n).collect(), |k| vec![k]);
            let ws: Vec<usize> = w.map_or_else(|| (0..=*n).collect(), |w| vec![w]);
            let mut rows = vec![json!(["k", "w", "value"])];
            let mut table = Vec::new();
            for &k in &ks {
                let mut row = Vec::new();
                for &w in &ws {
                    let v = plain(kravchuk(*n, k, w).map_err(CliError::from))?.to_string();
                    rows.push(json!([k, w, v.clone()]));
                    row.push(v);
                }
                table.push(row);
            }
            Ok(json!({ "n": n, "k": ks, "w": ws, "values": table, "csv_rows": rows }))
        }
        Command::Certify { source, sets, all_up_to } => {
            let p = plain(read_poly(source))?;
            let mut list = match sets {
                Some(s) => plain(parse_sets(s))?,
                None => Vec::new(),
            };
            if let Some(k) = all_up_to {
                let n = p.n() as usize;
                if n > 24 {
                    return Err((CliError::Cap(format!("{n} variables exceed the enumeration limit")), None));
                }
                for size in 1..=(*k).min(n) {
                    list.extend((0u64..1 << n).filter(|m| m.count_ones() as usize == size).map(mask_set));
                }
            }
            if list.is_empty() {
                return Err((CliError::Usage("give --sets or --all-up-to".into()), None));
            }
            let mut certs = Vec::new();
            let mut all_pass = true;
            for s in &list {
                if let Some(&v) = s.iter().find(|&&v| v == 0 || v > p.n()) {
                    return Err((CliError::Usage(format!("index {v} outside 1..={}", p.n())), None));
                }
                let c = plain(coefficient_certificate(&p, s, cap).map_err(CliError::from))?;
                all_pass &= c.pass != Some(false);
                certs.push(formats::coefficient_certificate_json(&c));
            }
            let bias: Vec<Value> = p
                .variable_strata()
                .keys()
                .map(|&t| {
                    let c = bias_certificate(&p, t, cap);
                    all_pass &= c.pass != Some(false);
                    formats::bias_certificate_json(&c)
                })
                .collect();
            let v = json!({ "poly": p.to_string(), "read": p.read(), "degree": p.degree(), "coefficients": certs, "bias": bias, "pass": all_pass });
            if all_pass {
                Ok(v)
            } else {
                Err((CliError::Failed("a certificate was violated".into()), Some(v)))
            }
        }
        Command::Compose { spec, outer, inners, k, b, closure_cap } => {
            let spec = match (spec, outer) {
                (Some(path), None) => {
                    let text = plain(std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))))?;
                    plain(CompositionSpecFile::parse(&text).map_err(CliError::from))?
                }
                (None, Some(o)) => plain(CompositionSpecFile { outer: o.clone(), inners: inners.clone() }.to_spec().map_err(CliError::from))?,
                _ => return Err((CliError::Usage("give --spec or --outer with --inner".into()), None)),
            };
            let b = plain(formats::parse_rational(b).map_err(CliError::from))?;
            let h = plain(compose(&spec, cap).map_err(CliError::from))?;
            let analysis = plain(CompositionAnalysis::new(&spec, cap).map_err(CliError::from))?;
            let hv = level_l1_profile(&plain(compute_spectrum_with_cap(&h, cap).map_err(CliError::from))?);
            let formula = plain(analysis.level_l1(*k).map_err(CliError::from))?;
            let outer_p = plain(fit_bound_profile(spec.outer(), *k, &b, *closure_cap).map_err(CliError::from))?;
            let mut inner_p = BoundProfile { a: Rational::from_integer(0.into()), b: b.clone(), k_max: *k, binding: None };
            for g in spec.inners() {
                let fit = plain(fit_single_profile(g, *k, &b, cap).map_err(CliError::from))?;
                if fit.a > inner_p.a {
                    inner_p.a = fit.a;
                }
            }
            let report = plain(verify_composition_bound(&spec, *k, &outer_p, &inner_p, cap, *closure_cap).map_err(CliError::from))?;
            let v = json!({
                "composed": h.to_string(),
                "beta": analysis.beta.iter().map(ratio).collect::<Vec<_>>(),
                "levels": LevelsJson::new(&hv),
                "formula_level": ratio(&formula),
                "formula_matches": formula == hv.level(*k),
                "a_out": ratio(&outer_p.a),
                "a_in": ratio(&inner_p.a),
                "theorem": formats::composition_report_json(&report),
            });
            if report.pass == Some(false) || formula != hv.level(*k) {
                Err((CliError::Failed("composition check failed".into()), Some(v)))
            } else {
                Ok(v)
            }
        }
        Command::Bounds { framework, a, b, t, k, n, eps, l1k } => {
            if let Some(l) = l1k {
                let l = plain(formats::parse_rational(l).map_err(CliError::from))?;
                let nn = *n as u32;
                let v = plain(correlation_upper_bound(nn, *k, &l).map_err(|e| CliError::Usage(e.to_string())))?;
                return Ok(json!({ "correlation_upper_bound_display": v, "n": nn, "k": k, "l1k": ratio(&l), "distribution": "not constructed" }));
            }
            let fw = plain(
                framework
                    .as_deref()
                    .and_then(Framework::from_name)
                    .ok_or_else(|| CliError::Usage("--framework must be chhl, chlt or cglss".into())),
            )?;
            let q = SeedLengthQuery { framework: fw, a: *a, b: *b, t: *t, k: *k, n: *n, eps: *eps };
            let s = plain(prg_seed_length(&q).map_err(|e| CliError::Usage(e.to_string())))?;
            Ok(json!({
                "framework": fw.name(),
                "seed_length_display": s.value,
                "label": CONSTANT_ONE,
                "o1_exponent_dropped": s.exponent_o1_dropped,
                "polylog": "(log2 x)^2",
            }))
        }
        Command::Verify { suite, seed, count, n_max } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err((CliError::Usage(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "))), None));
            }
            let cfg = SuiteConfig { seed: *seed, count: *count, n_max: *n_max, cap, jobs: cli.jobs.max(1) };
            let r = run_suite(suite, &cfg).expect("known suite");
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["csv_rows"] = json!([["suite", "checked", "failures", "pass"], [r.suite, r.checked, r.failures.len(), r.pass]]);
            if r.pass {
                Ok(v)
            } else {
                Err((CliError::Failed(format!("suite {suite} failed")), Some(v)))
            }
        }
        Command::Gen { n, d, delta, seed, count } => {
            let mut polys = Vec::new();
            for i in 0..*count {
                let p = plain(random_read_delta_poly(*n, *d, *delta, seed.wrapping_add(i)).map_err(|e| CliError::Usage(e.to_string())))?;
                polys.push(json!({ "seed": seed.wrapping_add(i), "poly": p.to_string(), "read": p.read(), "degree": p.degree() }));
            }
            let rows: Vec<Value> = std::iter::once(json!(["seed", "poly"]))
                .chain(polys.iter().map(|p| json!([p["seed"], p["poly"]])))
                .collect();
            Ok(json!({ "n": n, "d": d, "delta": delta, "polys": polys, "csv_rows": rows }))
        }
        Command::Xor { source, k, b } => {
            let f = plain(read_poly(source))?;
            let b = match b {
                Some(s) => Some(plain(formats::parse_rational(s).map_err(CliError::from))?),
                None => None,
            };
            let r = plain(verify_xor_reduction(&f, *k, b.as_ref(), cap).map_err(CliError::from))?;
            let v = formats::xor_report_json(&r);
            if r.pass == Some(false) {
                Err((CliError::Failed("reduction inequality failed".into()), Some(v)))
            } else {
                Ok(v)
            }
        }
    }
}

fn analyze_symmetric(profile: &SymmetricProfile, upto: usize, src: &str) -> Value {
    let v = symmetric_pm_levels(profile);
    let mut out = levels_value(&v, upto);
    out["n"] = json!(profile.n());
    out["profile"] = serde_json::to_value(ProfileJson::new(profile)).expect("serializable");
    out["path"] = json!("symmetric");
    if let Some(rest) = src.strip_prefix("lower-bound:k=") {
        if let Ok(k) = rest.parse::<usize>() {
            if k >= 1 && k <= profile.n() {
                let zo = &v.zero_one_levels()[k];
                let ord = compare_with_lower_target(zo, profile.n(), k);
                out["lower_bound_check"] = json!({
                    "k": k,
                    "level": ratio(zo),
                    "target_display": fgl_core::rational::to_f64(&Rational::from_integer(fgl_core::symmetric::binomial(profile.n(), k))).sqrt()
                        * (-(k as f64)).exp() / 2.0,
                    "holds": match ord { EnclosureOrdering::Above => Value::Bool(true), EnclosureOrdering::Below => Value::Bool(false), EnclosureOrdering::Undecided => Value::Null },
                });
            }
        }
    }
    out["csv_rows"] = level_rows(&v, upto);
    out
}

fn analyze_poly(p: &F2Poly, upto: Option<usize>, certify: Option<&str>, with_spectrum: bool, cap: u32) -> Run {
    let n = p.n() as usize;
    let upto = upto.unwrap_or(n);
    let sym = symmetric_poly_of(p).ok().filter(|_| n > 0);
    let (v, path, spec) = match &sym {
        Some(s) if !with_spectrum => (symmetric_pm_levels(&s.profile()), "symmetric", None),
        _ => {
            let s = plain(compute_spectrum_with_cap(p, cap).map_err(CliError::from))?;
            (level_l1_profile(&s), "brute-force", Some(s))
        }
    };
    let mut out = levels_value(&v, upto);
    out["poly"] = json!(p.to_string());
    out["n"] = json!(n);
    out["degree"] = json!(p.degree());
    out["read"] = json!(p.read());
    out["monomials"] = json!(p.len());
    out["strata"] = json!(formats::strata_json(p));
    out["path"] = json!(path);
    if let Some(s) = &spec {
        if with_spectrum {
            out["spectrum"] = serde_json::to_value(SpectrumJson::from_spectrum(s)).expect("serializable");
        }
    }
    if let Some(text) = certify {
        let mut certs = Vec::new();
        for s in plain(parse_sets(text))? {
            if let Some(&x) = s.iter().find(|&&x| x == 0 || x as usize > n) {
                return Err((CliError::Usage(format!("index {x} outside 1..={n}")), None));
            }
            let c = plain(coefficient_certificate(p, &s, cap).map_err(CliError::from))?;
            certs.push(formats::coefficient_certificate_json(&c));
        }
        out["certificates"] = Value::Array(certs);
    }
    out["csv_rows"] = level_rows(&v, upto);
    Ok(out)
}
