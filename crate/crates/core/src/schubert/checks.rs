use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{
    eval_expr, numeric_equal, sample_point, transformation_check, Comparison, Expr, Monomial,
    SamplingOptions,
};
use crate::lie::roots::dot;
use crate::lie::{ElemId, ParabolicSetup};
use crate::theta::EvalConfig;

use super::lambda::LambdaSymbol;
use super::recursion::{ClassTable, DescentChoice};

/// Borel table at `lambda - rho_bar^L` used on the right of the pushforward identity.
pub fn pushforward_borel_table(setup: &ParabolicSetup) -> Result<ClassTable> {
    let lambda = LambdaSymbol::generic(setup).shifted(setup.rho_bar());
    ClassTable::recursion(&setup.borel(), &lambda, DescentChoice::First)
}

/// `sum_{u in W_P} E(X^B_w, lambda - rho_bar)_{vu}`.
pub fn pushforward_sum(setup: &ParabolicSetup, borel: &ClassTable, w: ElemId, v: ElemId) -> Expr {
    let g = setup.group();
    setup
        .levi_group()
        .iter()
        .fold(Expr::zero(), |acc, &u| acc.add(borel.entry(w, g.mul(v, u))))
}

/// Compares the parabolic class with the `W_P`-sum of Borel classes.
pub fn pushforward_check(
    setup: &ParabolicSetup,
    w: ElemId,
    v: ElemId,
    cfg: &EvalConfig,
    opts: &SamplingOptions,
) -> Result<Comparison> {
    let parabolic =
        ClassTable::recursion(setup, &LambdaSymbol::generic(setup), DescentChoice::First)?;
    let borel = pushforward_borel_table(setup)?;
    numeric_equal(
        parabolic.entry(w, v),
        &pushforward_sum(setup, &borel, w, v),
        cfg,
        opts,
    )
}

/// `prod delta(e^beta, h)` over the weights of `T_w X^P_w`.
pub fn expected_diagonal(setup: &ParabolicSetup, w: ElemId) -> Result<Expr> {
    let (cell, _) = setup.tangent_weights(w)?;
    Ok(cell.iter().fold(Expr::one(), |acc, b| {
        acc.mul(&Expr::delta(Monomial::from_z_exponents(b), Monomial::h()))
    }))
}

/// Exact check of the diagonal entry.
pub fn normalization_check(table: &ClassTable, w: ElemId) -> Result<bool> {
    Ok(*table.entry(w, w) == expected_diagonal(table.setup(), w)?)
}

/// Pairs `(w, v)` with `v` not below `w` whose entry is not the zero expression.
pub fn triangularity_violations(table: &ClassTable) -> Vec<(ElemId, ElemId)> {
    let g = table.setup().group();
    table
        .iter()
        .filter(|(w, v, e)| !g.leq(*v, *w) && !e.is_zero())
        .map(|(w, v, _)| (w, v))
        .collect()
}

pub fn triangularity_check(table: &ClassTable) -> bool {
    triangularity_violations(table).is_empty()
}

/// Entries whose terms do not share one quadratic form.
pub fn transformation_violations(table: &ClassTable) -> Vec<(ElemId, ElemId)> {
    table
        .iter()
        .filter(|(_, _, e)| !transformation_check(e))
        .map(|(w, v, _)| (w, v))
        .collect()
}

/// Numeric behaviour of one function along `e^alpha -> 1`.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeSeries {
    pub label: String,
    /// `[re, im]` at each epsilon.
    pub values: Vec<[f64; 2]>,
    pub pole_order_estimate: f64,
    pub pole_order: i64,
    pub leading_coefficient: [f64; 2],
}

/// Diagnostic data near the hyperplane `ker alpha`; carries no verdict.
#[derive(Debug, Clone, Serialize)]
pub struct GkmReport {
    pub w: String,
    pub v1: String,
    pub v2: String,
    pub alpha: Vec<i64>,
    pub epsilons: Vec<f64>,
    pub series: Vec<ProbeSeries>,
}

fn probe_series(label: &str, vals: &[Complex64], eps: &[f64]) -> ProbeSeries {
    let n = vals.len();
    let (a, b) = (vals[n - 2].norm(), vals[n - 1].norm());
    let est = if a == 0.0 || b == 0.0 {
        0.0
    } else {
        -(b.ln() - a.ln()) / (eps[n - 1].ln() - eps[n - 2].ln())
    };
    let order = est.round() as i64;
    let lead = vals[n - 1] * eps[n - 1].powi(order as i32);
    ProbeSeries {
        label: label.into(),
        values: vals.iter().map(|v| [v.re, v.im]).collect(),
        pole_order_estimate: est,
        pole_order: order,
        leading_coefficient: [lead.re, lead.im],
    }
}

/// Probes `E_{v1}`, `E_{v2}`, their difference and sum along `<alpha, log z> = eps` with
/// `v1 = [v2 s_alpha]`.
pub fn gkm_probe(
    table: &ClassTable,
    w: ElemId,
    v2: ElemId,
    alpha: &[i64],
    cfg: &EvalConfig,
    seed: u64,
) -> Result<GkmReport> {
    let setup = table.setup();
    let rs = setup.root_system();
    if !rs.is_root(alpha) {
        return Err(Error::Domain(format!("{alpha:?} is not a root")));
    }
    let g = setup.group();
    let v1 = setup.min_rep(g.mul(v2, g.reflection(rs, alpha)));
    let e1 = table.entry(w, v1).clone();
    let e2 = table.entry(w, v2).clone();
    let diff = e1.sub(&e2);
    let sum = e1.add(&e2);
    let mut vars = e1.vars();
    vars.extend(e2.vars());
    for i in 1..=rs.dim() {
        vars.insert(crate::expr::Var::Z(i as u32));
    }
    let opts = SamplingOptions {
        seed,
        ..Default::default()
    };
    let base = sample_point(&vars, &[], cfg, &opts, 0)?;
    let norm = dot(alpha, alpha) as f64;
    let epsilons = vec![1e-2, 1e-3, 1e-4];
    let mut vals: [Vec<Complex64>; 4] = Default::default();
    for &eps in &epsilons {
        let mut pt = base.clone();
        let current: Complex64 = (0..rs.dim())
            .map(|i| base.0[&crate::expr::Var::Z(i as u32 + 1)] * alpha[i] as f64)
            .sum();
        let t = (Complex64::new(eps, 0.0) - current) / norm;
        for (i, &a) in alpha.iter().enumerate() {
            let v = crate::expr::Var::Z(i as u32 + 1);
            let l = pt.0[&v] + t * a as f64;
            pt.set(v, l);
        }
        for (slot, e) in vals.iter_mut().zip([&e1, &e2, &diff, &sum]) {
            slot.push(eval_expr(e, &pt, cfg)?);
        }
    }
    let labels = ["E_v1", "E_v2", "difference", "sum"];
    Ok(GkmReport {
        w: setup.label(w),
        v1: setup.label(v1),
        v2: setup.label(v2),
        alpha: alpha.to_vec(),
        series: labels
            .iter()
            .zip(vals.iter())
            .map(|(l, v)| probe_series(l, v, &epsilons))
            .collect(),
        epsilons,
    })
}
