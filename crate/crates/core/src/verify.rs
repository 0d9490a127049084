//! Verification suites producing deterministic JSON reports.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{
    eval_expr, numeric_equal, sample_point, transformation_check, Comparison, SamplingOptions,
};
use crate::lie::{ElemId, Family, ParabolicSetup};
use crate::schubert::TypeATable;
use crate::schubert::{
    gkm_probe, normalization_check, pushforward_borel_table, pushforward_sum, ClassTable,
    DescentChoice, LambdaSymbol, Method,
};
use crate::theta::{eval_theta, theta_prime_one, EvalConfig};
use crate::weight::{
    combinatorial_identity, compositions, initial_check, normalized_restriction, rmatrix_cases,
    rmatrix_check, weight_function, BlockPartition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TwoMethod,
    Pushforward,
    Weightfn,
    Rmatrix,
    Initial,
    Normalization,
    Triangularity,
    Transformation,
    Positivity,
    Combinatorial,
    Kernel,
    Gkm,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::TwoMethod,
        Suite::Pushforward,
        Suite::Weightfn,
        Suite::Rmatrix,
        Suite::Initial,
        Suite::Normalization,
        Suite::Triangularity,
        Suite::Transformation,
        Suite::Positivity,
        Suite::Combinatorial,
        Suite::Kernel,
        Suite::Gkm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TwoMethod => "two-method",
            Suite::Pushforward => "pushforward",
            Suite::Weightfn => "weightfn",
            Suite::Rmatrix => "rmatrix",
            Suite::Initial => "initial",
            Suite::Normalization => "normalization",
            Suite::Triangularity => "triangularity",
            Suite::Transformation => "transformation",
            Suite::Positivity => "positivity",
            Suite::Combinatorial => "combinatorial",
            Suite::Kernel => "kernel",
            Suite::Gkm => "gkm",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Config(format!(
                    "unknown suite '{s}' (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerifyOptions {
    pub cfg: EvalConfig,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cfg: EvalConfig::default(),
            samples: SamplingOptions::default().samples,
            seed: 0,
        }
    }
}

impl VerifyOptions {
    fn sampling(&self) -> SamplingOptions {
        SamplingOptions {
            samples: self.samples,
            seed: self.seed,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub key: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl CaseResult {
    fn flag(key: String, passed: bool) -> Self {
        CaseResult {
            key,
            passed,
            max_deviation: None,
            samples: None,
            note: None,
            data: None,
        }
    }

    fn compared(key: String, c: Result<Comparison>) -> Self {
        match c {
            Ok(c) => CaseResult {
                max_deviation: Some(c.max_deviation),
                samples: Some(c.samples),
                ..Self::flag(key, c.equal)
            },
            Err(e) => Self::failed(key, e),
        }
    }

    fn failed(key: String, e: Error) -> Self {
        CaseResult {
            note: Some(e.to_string()),
            ..Self::flag(key, false)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub setup: String,
    pub cases: usize,
    pub failures: usize,
    pub max_deviation: f64,
    pub seed: u64,
    pub samples: usize,
    pub config: EvalConfig,
    pub details: Vec<CaseResult>,
}

impl Report {
    fn new(
        suite: Suite,
        setup: &ParabolicSetup,
        opts: &VerifyOptions,
        details: Vec<CaseResult>,
    ) -> Self {
        Report {
            suite,
            setup: describe(setup),
            cases: details.len(),
            failures: details.iter().filter(|c| !c.passed).count(),
            max_deviation: details
                .iter()
                .filter_map(|c| c.max_deviation)
                .fold(0.0, f64::max),
            seed: opts.seed,
            samples: opts.samples,
            config: opts.cfg,
            details,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// `A3 blocks 2,2` or `C2 levi 1`.
pub fn describe(setup: &ParabolicSetup) -> String {
    let rs = setup.root_system();
    let head = format!("{}{}", rs.family(), rs.rank());
    let join = |v: &[usize]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match setup.blocks() {
        Some(k) => format!("{head} blocks {}", join(k)),
        None if setup.levi().is_empty() => format!("{head} levi none"),
        None => format!("{head} levi {}", join(setup.levi())),
    }
}

fn pairs(setup: &ParabolicSetup) -> Vec<(ElemId, ElemId)> {
    let reps = setup.min_reps();
    reps.iter()
        .flat_map(|&w| reps.iter().map(move |&v| (w, v)))
        .collect()
}

fn pair_key(setup: &ParabolicSetup, w: ElemId, v: ElemId) -> String {
    format!("w={} v={}", setup.label(w), setup.label(v))
}

fn type_a_blocks(setup: &ParabolicSetup) -> Result<Vec<usize>> {
    match (setup.root_system().family(), setup.blocks()) {
        (Family::A, Some(k)) => Ok(k.to_vec()),
        _ => Err(Error::Config(
            "this suite needs a type A setup given by block sizes".into(),
        )),
    }
}

fn recursion_table(setup: &ParabolicSetup) -> Result<ClassTable> {
    ClassTable::new(setup, &LambdaSymbol::generic(setup), Method::Recursion)
}

pub fn run_suite(suite: Suite, setup: &ParabolicSetup, opts: &VerifyOptions) -> Result<Report> {
    opts.cfg.validate()?;
    let sopts = opts.sampling();
    let cfg = &opts.cfg;
    let details = match suite {
        Suite::TwoMethod => {
            // last descents follow a different reduced word than the localization sum
            let rec =
                ClassTable::recursion(setup, &LambdaSymbol::generic(setup), DescentChoice::Last)?;
            let loc = ClassTable::new(setup, &LambdaSymbol::generic(setup), Method::Localization)?;
            pairs(setup)
                .into_par_iter()
                .map(|(w, v)| {
                    let c = numeric_equal(rec.entry(w, v), loc.entry(w, v), cfg, &sopts);
                    CaseResult::compared(pair_key(setup, w, v), c)
                })
                .collect()
        }
        Suite::Pushforward => {
            let rec = recursion_table(setup)?;
            let borel = pushforward_borel_table(setup)?;
            pairs(setup)
                .into_par_iter()
                .map(|(w, v)| {
                    let c = numeric_equal(
                        rec.entry(w, v),
                        &pushforward_sum(setup, &borel, w, v),
                        cfg,
                        &sopts,
                    );
                    CaseResult::compared(pair_key(setup, w, v), c)
                })
                .collect()
        }
        Suite::Normalization => {
            let rec = recursion_table(setup)?;
            setup
                .min_reps()
                .iter()
                .map(|&w| {
                    let key = format!("w={}", setup.label(w));
                    match normalization_check(&rec, w) {
                        Ok(ok) => CaseResult::flag(key, ok),
                        Err(e) => CaseResult::failed(key, e),
                    }
                })
                .collect()
        }
        Suite::Triangularity => {
            let rec = recursion_table(setup)?;
            let g = setup.group();
            pairs(setup)
                .into_iter()
                .map(|(w, v)| {
                    CaseResult::flag(
                        pair_key(setup, w, v),
                        g.leq(v, w) || rec.entry(w, v).is_zero(),
                    )
                })
                .collect()
        }
        Suite::Transformation => {
            let rec = recursion_table(setup)?;
            let loc = ClassTable::new(setup, &LambdaSymbol::generic(setup), Method::Localization)?;
            pairs(setup)
                .into_par_iter()
                .map(|(w, v)| {
                    let ok = transformation_check(rec.entry(w, v))
                        && transformation_check(loc.entry(w, v));
                    CaseResult::flag(pair_key(setup, w, v), ok)
                })
                .collect()
        }
        Suite::Positivity => positivity_cases(setup)?,
        Suite::Weightfn => {
            let k = type_a_blocks(setup)?;
            let table = TypeATable::new(&k)?;
            let parts = BlockPartition::all(&k)?;
            let weights: Vec<_> = parts
                .par_iter()
                .map(weight_function)
                .collect::<Result<_>>()?;
            let grid: Vec<(usize, usize)> = (0..parts.len())
                .flat_map(|a| (0..parts.len()).map(move |b| (a, b)))
                .collect();
            grid.into_par_iter()
                .map(|(a, b)| {
                    let (i, j) = (&parts[a], &parts[b]);
                    let key = format!("I={i} J={j}");
                    let c = normalized_restriction(&weights[a], &k, j).and_then(|lhs| {
                        numeric_equal(
                            &lhs,
                            table.entry(&i.to_permutation(), &j.to_permutation())?,
                            cfg,
                            &sopts,
                        )
                    });
                    CaseResult::compared(key, c)
                })
                .collect()
        }
        Suite::Rmatrix => {
            let k = type_a_blocks(setup)?;
            rmatrix_cases(&k)?
                .into_par_iter()
                .map(|(i, x)| {
                    CaseResult::compared(format!("I={i} i={x}"), rmatrix_check(&i, x, cfg, &sopts))
                })
                .collect()
        }
        Suite::Initial => {
            let k = type_a_blocks(setup)?;
            initial_check(&k, cfg, &sopts)?
                .into_iter()
                .map(|(j, c)| CaseResult::compared(format!("J={j}"), Ok(c)))
                .collect()
        }
        Suite::Combinatorial => {
            let n = type_a_blocks(setup)?.iter().sum::<usize>();
            (1..=n)
                .flat_map(compositions)
                .map(|k| {
                    let key = format!(
                        "k={}",
                        k.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                    match combinatorial_identity(&k) {
                        Ok((cases, failures)) => CaseResult {
                            note: Some(format!("{cases} partitions checked")),
                            data: (!failures.is_empty()).then(|| serde_json::json!(failures)),
                            ..CaseResult::flag(key, failures.is_empty())
                        },
                        Err(e) => CaseResult::failed(key, e),
                    }
                })
                .collect()
        }
        Suite::Kernel => kernel_cases(setup, opts)?,
        Suite::Gkm => {
            let rec = recursion_table(setup)?;
            let roots = setup.root_system().positive_roots().to_vec();
            let grid: Vec<(ElemId, ElemId, Vec<i64>)> = pairs(setup)
                .into_iter()
                .flat_map(|(w, v)| roots.iter().map(move |a| (w, v, a.clone())))
                .collect();
            grid.into_par_iter()
                .map(|(w, v, alpha)| {
                    let key = format!("{} alpha={alpha:?}", pair_key(setup, w, v));
                    match gkm_probe(&rec, w, v, &alpha, cfg, opts.seed) {
                        Ok(r) => CaseResult {
                            data: Some(serde_json::to_value(r).expect("probe serializes")),
                            ..CaseResult::flag(key, true)
                        },
                        Err(e) => CaseResult {
                            note: Some(e.to_string()),
                            ..CaseResult::flag(key, true)
                        },
                    }
                })
                .collect()
        }
    };
    Ok(Report::new(suite, setup, opts, details))
}

fn positivity_cases(setup: &ParabolicSetup) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for &w in setup.min_reps() {
        for (v, _) in setup.covers(w)? {
            let key = format!("{} -> {}", setup.label(w), setup.label(v));
            let m = setup.multiplicity(w, v)?;
            let ok = m >= 1 && (!setup.is_borel() || m == 1);
            out.push(CaseResult {
                note: Some(format!("m = {m}")),
                ..CaseResult::flag(key, ok)
            });
        }
    }
    Ok(out)
}

fn kernel_cases(setup: &ParabolicSetup, opts: &VerifyOptions) -> Result<Vec<CaseResult>> {
    let cfg = &opts.cfg;
    let mut out = Vec::new();
    let eps = 1e-6;
    let fd = (eval_theta(Complex64::new(eps, 0.0), cfg)
        - eval_theta(Complex64::new(-eps, 0.0), cfg))
        / (2.0 * eps);
    let err = (fd - theta_prime_one(cfg)).norm();
    out.push(CaseResult {
        max_deviation: Some(err),
        ..CaseResult::flag("theta'(1) finite difference".into(), err < 1e-5)
    });
    let rec = recursion_table(setup)?;
    let doubled = cfg.with_trunc(cfg.trunc * 2);
    let sopts = opts.sampling();
    for (idx, (w, v)) in pairs(setup).into_iter().enumerate() {
        let e = rec.entry(w, v);
        let key = format!("truncation {}", pair_key(setup, w, v));
        let value = sample_point(
            &e.vars(),
            &crate::expr::eval::denominators(e),
            cfg,
            &sopts,
            idx as u64,
        )
        .and_then(|pt| {
            let a = eval_expr(e, &pt, cfg)?;
            let b = eval_expr(e, &pt, &doubled)?;
            Ok((a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE))
        });
        out.push(match value {
            Ok(d) => CaseResult {
                max_deviation: Some(d),
                ..CaseResult::flag(key, d < 1e-30)
            },
            Err(e) => CaseResult::failed(key, e),
        });
    }
    Ok(out)
}
