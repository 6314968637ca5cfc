//! Reports for `hodge`, `convert`, `verify` and `padic`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use hodge_core::cone::partition_report;
use hodge_core::padic::primes_one_mod;
use hodge_core::{
    apex_sequence, first_digit, hodge_polynomial_ie, hodge_vector_cone, hodge_vector_genfun,
    hodge_vector_zigzag, normalized_volume, valuation_profile, verify_lemma_fractional,
    verify_phi_bridge, ConeBasis, Decomposition, GammaVector, HodgeVector, PadicContext,
    ZigzagProfile,
};
use num_bigint::BigInt;
use serde::Serialize;

use crate::{CliError, CliResult, Input, EXIT_PARSE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    Zigzag,
    Genfun,
    Cone,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Zigzag, Method::Genfun, Method::Cone];

    pub fn name(self) -> &'static str {
        match self {
            Method::Zigzag => "zigzag",
            Method::Genfun => "genfun",
            Method::Cone => "cone",
        }
    }

    pub fn compute(self, g: &GammaVector) -> HodgeVector {
        match self {
            Method::Zigzag => hodge_vector_zigzag(g),
            Method::Genfun => hodge_vector_genfun(g),
            Method::Cone => hodge_vector_cone(g),
        }
    }
}

/// `zigzag`, `genfun`, `cone` or `all`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodSelection(pub Vec<Method>);

impl FromStr for MethodSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(MethodSelection(Method::ALL.to_vec())),
            _ => Method::ALL
                .into_iter()
                .find(|m| m.name() == s)
                .map(|m| MethodSelection(vec![m]))
                .ok_or_else(|| {
                    format!("unknown method {s:?}; expected zigzag, genfun, cone or all")
                }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComputeReport {
    pub gamma: String,
    pub alpha: String,
    pub beta: String,
    #[serde(rename = "L")]
    pub natural_length: u64,
    #[serde(rename = "M")]
    pub level: u64,
    pub n: usize,
    pub hodge: Vec<u64>,
    pub methods: BTreeMap<String, Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    pub timings_ms: BTreeMap<String, f64>,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn compute_report(g: &GammaVector, methods: &[Method]) -> ComputeReport {
    let hd = g.to_datum();
    let mut vectors = BTreeMap::new();
    let mut timings = BTreeMap::new();
    let mut first = None;
    for &m in methods {
        let start = Instant::now();
        let h = m.compute(g);
        timings.insert(m.name().to_string(), start.elapsed().as_secs_f64() * 1e3);
        first.get_or_insert_with(|| h.clone());
        vectors.insert(m.name().to_string(), h.as_slice().to_vec());
    }
    let hodge = first.map(|h| h.as_slice().to_vec()).unwrap_or_default();
    let agree = (methods.len() > 1).then(|| vectors.values().all(|v| *v == hodge));
    ComputeReport {
        gamma: g.to_string(),
        alpha: join(hd.alpha()),
        beta: join(hd.beta()),
        natural_length: g.natural_length(),
        level: g.level(),
        n: g.n(),
        hodge,
        methods: vectors,
        agree,
        timings_ms: timings,
    }
}

pub fn csv_header(n: usize) -> Vec<String> {
    let mut header = vec!["gamma".to_string(), "L".to_string(), "n".to_string()];
    header.extend((0..=n).map(|k| format!("h{k}")));
    header
}

pub fn render_compute(report: &ComputeReport, format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Json => {
            Ok(serde_json::to_string_pretty(report).expect("serializable") + "\n")
        }
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(vec![]);
            let mut row = vec![
                report.gamma.clone(),
                report.natural_length.to_string(),
                report.n.to_string(),
            ];
            row.extend(report.hodge.iter().map(u64::to_string));
            w.write_record(csv_header(report.n))
                .and_then(|_| w.write_record(&row))
                .map_err(|e| CliError::new(EXIT_PARSE, e.to_string()))?;
            Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"))
        }
        OutputFormat::Human => {
            let mut out = String::new();
            writeln!(out, "gamma   {}", report.gamma).unwrap();
            writeln!(out, "alpha   {}", report.alpha).unwrap();
            writeln!(out, "beta    {}", report.beta).unwrap();
            writeln!(
                out,
                "L={} M={} n={}",
                report.natural_length, report.level, report.n
            )
            .unwrap();
            if report.methods.len() > 1 {
                for (name, v) in &report.methods {
                    let ms = report.timings_ms[name];
                    writeln!(out, "{name:<7} [{}]  {ms:.3} ms", join(v)).unwrap();
                }
            }
            writeln!(out, "hodge   [{}]", join(&report.hodge)).unwrap();
            if let Some(agree) = report.agree {
                writeln!(out, "agree   {agree}").unwrap();
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvertReport {
    pub gamma: String,
    pub datum: String,
}

/// Converts either text form into the other; the report carries both.
pub fn convert(input: &Input) -> CliResult<(ConvertReport, String)> {
    match input {
        Input::Gamma(g) => {
            let datum = g.to_datum().to_string();
            Ok((
                ConvertReport {
                    gamma: g.to_string(),
                    datum: datum.clone(),
                },
                datum,
            ))
        }
        Input::Datum(hd) => {
            let g = hd.to_gamma()?;
            Ok((
                ConvertReport {
                    gamma: g.to_string(),
                    datum: hd.to_string(),
                },
                g.to_string(),
            ))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub gamma: String,
    pub k_max: usize,
    pub prime: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// The prime given by the user, or the smallest prime `1 mod M`.
pub fn choose_prime(g: &GammaVector, prime: Option<u64>) -> CliResult<u64> {
    let p = prime.unwrap_or_else(|| primes_one_mod(g.level(), 1)[0]);
    PadicContext::of_gamma(g, p)?;
    Ok(p)
}

pub fn verify(
    g: &GammaVector,
    k_max: Option<usize>,
    prime: Option<u64>,
) -> CliResult<VerifyReport> {
    let n = g.n();
    let k_max = k_max.unwrap_or(n);
    let p = choose_prime(g, prime)?;
    let mut checks = Vec::new();

    checks.push(Check::new(
        "relation",
        ConeBasis::new(g).relation_holds(),
        "linear relation among e_0..e_n",
    ));

    let zz = hodge_vector_zigzag(g);
    let others = [
        ("genfun", hodge_vector_genfun(g)),
        (
            "plus",
            HodgeVector::from_polynomial(&hodge_polynomial_ie(g, Decomposition::Plus), n)?,
        ),
        (
            "minus",
            HodgeVector::from_polynomial(&hodge_polynomial_ie(g, Decomposition::Minus), n)?,
        ),
        ("cone", hodge_vector_cone(g)),
    ];
    let mismatch = others.iter().find(|(_, h)| *h != zz);
    checks.push(match mismatch {
        None => Check::new("methods", true, format!("all methods give {zz}")),
        Some((name, h)) => Check::new("methods", false, format!("zigzag {zz} but {name} {h}")),
    });

    let vol = normalized_volume(g);
    checks.push(Check::new(
        "volume",
        vol == BigInt::from(g.natural_length()),
        format!("normalized volume {vol}"),
    ));

    let mut weights = apex_sequence(g).weights();
    let mut ht = ZigzagProfile::of_gamma(g).hodge_tate_multiset();
    weights.sort();
    ht.sort();
    checks.push(Check::new(
        "apexes",
        weights == ht,
        format!("apex weights {weights:?}"),
    ));

    let part = partition_report(g, k_max);
    checks.push(match &part.counterexample {
        None => Check::new(
            "partition",
            true,
            format!(
                "{} points covered once up to weight {k_max}",
                part.points_checked
            ),
        ),
        Some((v, c)) => Check::new("partition", false, format!("{v} is covered {c} times")),
    });

    let bridge = verify_phi_bridge(g, p)?;
    checks.push(Check::new("phi-bridge", bridge, format!("p = {p}")));
    let lemma = verify_lemma_fractional(g, p)?;
    checks.push(Check::new("fractional-lemma", lemma, format!("p = {p}")));

    Ok(VerifyReport {
        gamma: g.to_string(),
        k_max,
        prime: p,
        checks,
    })
}

pub fn render_verify(report: &VerifyReport, json: bool) -> String {
    if json {
        return serde_json::to_string_pretty(report).expect("serializable") + "\n";
    }
    let mut out = String::new();
    for c in &report.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        writeln!(out, "{status}  {:<17} {}", c.name, c.detail).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicReport {
    pub gamma: String,
    pub p: u64,
    pub orders: Vec<i64>,
    /// `(mu, [-mu]_0)` along the merged list.
    pub digits: Vec<(String, u64)>,
    pub phi_bridge: bool,
    pub fractional_lemma: bool,
}

pub fn padic(g: &GammaVector, prime: Option<u64>) -> CliResult<PadicReport> {
    let p = choose_prime(g, prime)?;
    let ctx = PadicContext::of_gamma(g, p)?;
    let profile = valuation_profile(&ctx);
    let digits = ctx
        .datum()
        .merged_list()
        .entries()
        .iter()
        .map(|e| Ok((e.value.to_string(), first_digit(&-&e.value, p)?)))
        .collect::<CliResult<_>>()?;
    Ok(PadicReport {
        gamma: g.to_string(),
        p,
        orders: profile.orders,
        digits,
        phi_bridge: verify_phi_bridge(g, p)?,
        fractional_lemma: verify_lemma_fractional(g, p)?,
    })
}

pub fn render_padic(report: &PadicReport, json: bool) -> String {
    if json {
        return serde_json::to_string_pretty(report).expect("serializable") + "\n";
    }
    let mut out = String::new();
    writeln!(out, "gamma   {}", report.gamma).unwrap();
    writeln!(out, "p       {}", report.p).unwrap();
    writeln!(out, "orders  [{}]", join(&report.orders)).unwrap();
    let digits: Vec<String> = report
        .digits
        .iter()
        .map(|(mu, d)| format!("{mu}:{d}"))
        .collect();
    writeln!(out, "digits  {}", digits.join(" ")).unwrap();
    writeln!(out, "phi-bridge        {}", report.phi_bridge).unwrap();
    writeln!(out, "fractional-lemma  {}", report.fractional_lemma).unwrap();
    out
}
