use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, Var};
use super::term::Term;
use super::Expr;
use crate::error::{Error, Result};
use crate::theta::{eval_theta, theta_prime_one, EvalConfig};

/// Logarithms `l_v` of the variables; a monomial evaluates to `exp(sum e_v l_v)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PointAssignment(pub BTreeMap<Var, Complex64>);

impl PointAssignment {
    pub fn log_of(&self, m: &Monomial) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (v, e) in m.iter() {
            let l = self
                .0
                .get(&v)
                .ok_or_else(|| Error::Domain(format!("no value assigned to {v}")))?;
            acc += l * e.to_f64().expect("finite rational");
        }
        Ok(acc)
    }

    pub fn set(&mut self, v: Var, l: Complex64) {
        self.0.insert(v, l);
    }

    /// Reads `{"z1": [re, im], ...}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: BTreeMap<String, [f64; 2]> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("point file: {e}")))?;
        let mut pt = PointAssignment::default();
        for (k, [re, im]) in raw {
            pt.set(k.parse()?, Complex64::new(re, im));
        }
        Ok(pt)
    }

    pub fn to_json(&self) -> String {
        let raw: BTreeMap<String, [f64; 2]> = self
            .0
            .iter()
            .map(|(v, l)| (v.to_string(), [l.re, l.im]))
            .collect();
        serde_json::to_string(&raw).expect("serializable")
    }
}

/// Value of each factor of a term, in canonical factor order.
fn term_factors(
    t: &Term,
    pt: &PointAssignment,
    cfg: &EvalConfig,
) -> Result<Vec<(String, Complex64)>> {
    let mut out = Vec::new();
    let thp = theta_prime_one(cfg);
    let denominator = |label: String, l: Complex64| -> Result<Complex64> {
        let v = eval_theta(l, cfg);
        if v.norm() < cfg.tol {
            Err(Error::Pole {
                factor: label,
                magnitude: v.norm(),
            })
        } else {
            Ok(v)
        }
    };
    for (a, b, k) in t.key.deltas() {
        let (la, lb) = (pt.log_of(a)?, pt.log_of(b)?);
        let label = format!("d({a}, {b})");
        let ta = denominator(label.clone(), la)?;
        let tb = denominator(label.clone(), lb)?;
        let v = eval_theta(la + lb, cfg) * thp / (ta * tb);
        for _ in 0..k {
            out.push((label.clone(), v));
        }
    }
    for (m, p) in t.key.thetas() {
        let l = pt.log_of(m)?;
        let label = if p == 1 {
            format!("theta({m})")
        } else {
            format!("theta({m})^{p}")
        };
        let v = if p < 0 {
            denominator(label.clone(), l)?
        } else {
            eval_theta(l, cfg)
        };
        out.push((label, v.powi(p)));
    }
    let p = t.key.theta_prime_power();
    if p != 0 {
        out.push((format!("thp^{p}"), thp.powi(p)));
    }
    Ok(out)
}

fn eval_term(t: &Term, pt: &PointAssignment, cfg: &EvalConfig) -> Result<Complex64> {
    let c = t.coeff.to_f64().expect("finite rational");
    Ok(term_factors(t, pt, cfg)?
        .into_iter()
        .fold(Complex64::new(c, 0.0), |acc, (_, v)| acc * v))
}

pub fn eval_expr(e: &Expr, pt: &PointAssignment, cfg: &EvalConfig) -> Result<Complex64> {
    Ok(eval_with_scale(e, pt, cfg)?.0)
}

/// Value together with the sum of absolute values of the terms.
pub fn eval_with_scale(
    e: &Expr,
    pt: &PointAssignment,
    cfg: &EvalConfig,
) -> Result<(Complex64, f64)> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for t in e.terms() {
        let v = eval_term(&t, pt, cfg)?;
        sum += v;
        scale += v.norm();
    }
    Ok((sum, scale))
}

/// A term, its value and the value of each factor.
pub type TermBreakdown = (String, Complex64, Vec<(String, Complex64)>);

/// Per-term, per-factor values.
pub fn eval_breakdown(
    e: &Expr,
    pt: &PointAssignment,
    cfg: &EvalConfig,
) -> Result<Vec<TermBreakdown>> {
    e.terms()
        .map(|t| {
            let f = term_factors(&t, pt, cfg)?;
            let v = eval_term(&t, pt, cfg)?;
            Ok((Expr::from_term(t).to_string(), v, f))
        })
        .collect()
}

/// How random comparison points are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingOptions {
    pub samples: usize,
    pub seed: u64,
    /// Draws where a denominator theta is smaller than this are rejected.
    pub pole_margin: f64,
    pub max_retries: usize,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions {
            samples: 20,
            seed: 0,
            pole_margin: 1e-3,
            max_retries: 1000,
        }
    }
}

/// Result of a randomized identity test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub equal: bool,
    pub max_deviation: f64,
    pub samples: usize,
}

fn draw(vars: &BTreeSet<Var>, rng: &mut ChaCha8Rng) -> PointAssignment {
    let q = std::f64::consts::FRAC_PI_4;
    PointAssignment(
        vars.iter()
            .map(|&v| {
                (
                    v,
                    Complex64::new(rng.gen_range(-0.5..=0.5), rng.gen_range(-q..=q)),
                )
            })
            .collect(),
    )
}

/// A random point for `vars` keeping every monomial in `avoid` away from theta zeros.
///
/// Stream `index` of `seed` is used, so points do not depend on evaluation order.
pub fn sample_point(
    vars: &BTreeSet<Var>,
    avoid: &[Monomial],
    cfg: &EvalConfig,
    opts: &SamplingOptions,
    index: u64,
) -> Result<PointAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(index);
    for _ in 0..opts.max_retries.max(1) {
        let pt = draw(vars, &mut rng);
        let ok = avoid.iter().all(|m| {
            pt.log_of(m)
                .map(|l| eval_theta(l, cfg).norm() >= opts.pole_margin)
                .unwrap_or(false)
        });
        if ok {
            return Ok(pt);
        }
    }
    Err(Error::Domain(format!(
        "no admissible sample point after {} draws",
        opts.max_retries
    )))
}

pub(crate) fn denominators(e: &Expr) -> Vec<Monomial> {
    let set: BTreeSet<Monomial> = e.terms().flat_map(|t| t.denominator_monomials()).collect();
    set.into_iter().collect()
}

/// The first sample point of `seed` for the variables of `e`.
pub fn default_point(e: &Expr, cfg: &EvalConfig, seed: u64) -> Result<PointAssignment> {
    let opts = SamplingOptions {
        seed,
        ..Default::default()
    };
    sample_point(&e.vars(), &denominators(e), cfg, &opts, 0)
}

/// Relative deviation `|a - b| / max(scale_a, scale_b)` with the term-magnitude scales.
pub fn relative_deviation(a: (Complex64, f64), b: (Complex64, f64)) -> f64 {
    let scale = a.1.max(b.1);
    if scale == 0.0 {
        0.0
    } else {
        (a.0 - b.0).norm() / scale
    }
}

/// Randomized identity test of two expressions over the union of their variables.
pub fn numeric_equal(
    e1: &Expr,
    e2: &Expr,
    cfg: &EvalConfig,
    opts: &SamplingOptions,
) -> Result<Comparison> {
    let mut vars = e1.vars();
    vars.extend(e2.vars());
    let mut avoid = denominators(e1);
    avoid.extend(denominators(e2));
    let mut max_dev: f64 = 0.0;
    for i in 0..opts.samples {
        let pt = sample_point(&vars, &avoid, cfg, opts, i as u64)?;
        let a = eval_with_scale(e1, &pt, cfg)?;
        let b = eval_with_scale(e2, &pt, cfg)?;
        let d = relative_deviation(a, b);
        if !d.is_finite() {
            max_dev = f64::INFINITY;
        } else {
            max_dev = max_dev.max(d);
        }
    }
    Ok(Comparison {
        equal: max_dev < cfg.tol,
        max_deviation: max_dev,
        samples: opts.samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::eval_delta;

    fn p(s: &str) -> Expr {
        s.parse().unwrap()
    }

    fn pt(pairs: &[(Var, f64, f64)]) -> PointAssignment {
        PointAssignment(
            pairs
                .iter()
                .map(|&(v, a, b)| (v, Complex64::new(a, b)))
                .collect(),
        )
    }

    #[test]
    fn trivial_values() {
        let cfg = EvalConfig::default();
        let x = PointAssignment::default();
        assert_eq!(
            eval_expr(&Expr::zero(), &x, &cfg).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            eval_expr(&Expr::one(), &x, &cfg).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn delta_matches_kernel() {
        let cfg = EvalConfig::default();
        let x = pt(&[
            (Var::Z(1), 0.1, 0.2),
            (Var::Z(2), -0.3, 0.1),
            (Var::H, 0.2, -0.4),
        ]);
        let v = eval_expr(&p("d(z1/z2, h)"), &x, &cfg).unwrap();
        let w = eval_delta(Complex64::new(0.4, 0.1), Complex64::new(0.2, -0.4), &cfg).unwrap();
        assert!((v - w).norm() < 1e-14);
    }

    #[test]
    fn poles_identify_the_factor() {
        let cfg = EvalConfig::default();
        let x = pt(&[
            (Var::Z(1), 0.1, 0.2),
            (Var::Z(2), 0.1, 0.2),
            (Var::H, 0.2, -0.4),
        ]);
        match eval_expr(&p("d(z1/z2, h)"), &x, &cfg) {
            Err(Error::Pole { factor, .. }) => assert_eq!(factor, "d(z1/z2, h)"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            eval_expr(&p("theta(z1/z2)^-1"), &x, &cfg),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            eval_expr(&p("theta(y1)"), &x, &cfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn numeric_equality_basics() {
        let cfg = EvalConfig::default();
        let opts = SamplingOptions::default();
        let e = p("d(z1/z2, mu2/mu1)*d(z2/z3, h) + theta(z1)^-1");
        assert!(numeric_equal(&e, &e, &cfg, &opts).unwrap().equal);
        let two = e.scale(num_rational::Rational64::from_integer(2));
        assert!(!numeric_equal(&e, &two, &cfg, &opts).unwrap().equal);
        let sym = numeric_equal(&p("d(z1, h)"), &p("d(h, z1)"), &cfg, &opts).unwrap();
        assert!(sym.equal && sym.samples == 20);
        let z = numeric_equal(&Expr::zero(), &Expr::zero(), &cfg, &opts).unwrap();
        assert_eq!(z.max_deviation, 0.0);
    }

    #[test]
    fn delta_expansion_is_numerically_exact() {
        let cfg = EvalConfig::default();
        let e = p("d(z2/z1, mu2/mu1)*d(z1/z2, h) - 3*d(z1, h)^2");
        let c = numeric_equal(&e, &e.expand_deltas(), &cfg, &SamplingOptions::default()).unwrap();
        assert!(c.equal, "{c:?}");
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let cfg = EvalConfig::default();
        let e = p("d(z2/t.1.1, mu1*h)*theta(t.1.1*z1)");
        let map = BTreeMap::from([(Var::T(1, 1), p_m("z3^2/h"))]);
        let x = pt(&[
            (Var::Z(1), 0.1, 0.2),
            (Var::Z(2), -0.3, 0.1),
            (Var::Z(3), 0.2, 0.3),
            (Var::H, 0.2, -0.4),
            (Var::Mu(1), 0.05, 0.5),
        ]);
        let mut y = x.clone();
        y.set(Var::T(1, 1), Complex64::new(0.4 - 0.2, 0.6 + 0.4));
        let a = eval_expr(&e.substitute(&map), &x, &cfg).unwrap();
        let b = eval_expr(&e, &y, &cfg).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
    }

    fn p_m(s: &str) -> Monomial {
        match p(&format!("theta({s})"))
            .terms()
            .next()
            .unwrap()
            .factors()
            .remove(0)
        {
            super::super::Factor::Theta { arg, .. } => arg,
            _ => unreachable!(),
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let cfg = EvalConfig::default();
        let vars: BTreeSet<Var> = [Var::Z(1), Var::H].into_iter().collect();
        let opts = SamplingOptions::default();
        let a = sample_point(&vars, &[], &cfg, &opts, 3).unwrap();
        let b = sample_point(&vars, &[], &cfg, &opts, 3).unwrap();
        let c = sample_point(&vars, &[], &cfg, &opts, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let back = PointAssignment::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }
}
