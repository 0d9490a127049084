use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nome, truncation order and tolerance for theta evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub q: Complex64,
    pub trunc: usize,
    pub tol: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            q: Complex64::new(0.1, 0.0),
            trunc: 40,
            tol: 1e-9,
        }
    }
}

impl EvalConfig {
    pub fn new(q: Complex64, trunc: usize, tol: f64) -> Result<Self> {
        let cfg = EvalConfig { q, trunc, tol };
        cfg.validate()?;
        Ok(cfg)
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if !(self.q.norm() < 1.0) {
            return Err(Error::Config(format!(
                "|q| = {} must be < 1",
                self.q.norm()
            )));
        }
        if self.trunc < 1 {
            return Err(Error::Config("truncation order must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        Ok(())
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        EvalConfig { trunc, ..*self }
    }
}

/// `theta(x)` at `x = exp(log_x)`, truncated after `cfg.trunc` factors.
pub fn eval_theta(log_x: Complex64, cfg: &EvalConfig) -> Complex64 {
    let x = log_x.exp();
    let x_inv = (-log_x).exp();
    let mut acc = (log_x * 0.5).exp() - (-log_x * 0.5).exp();
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..cfg.trunc {
        qn *= cfg.q;
        acc *= (1.0 - qn * x) * (1.0 - qn * x_inv);
    }
    acc
}

/// `theta'(1) = prod (1 - q^n)^2`.
pub fn theta_prime_one(cfg: &EvalConfig) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..cfg.trunc {
        qn *= cfg.q;
        acc *= (1.0 - qn) * (1.0 - qn);
    }
    acc
}

/// `delta(x, y) = theta(xy) theta'(1) / (theta(x) theta(y))`.
pub fn eval_delta(log_x: Complex64, log_y: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let tx = eval_theta(log_x, cfg);
    if tx.norm() < cfg.tol {
        return Err(Error::Pole {
            factor: format!("delta: first argument (log {log_x})"),
            magnitude: tx.norm(),
        });
    }
    let ty = eval_theta(log_y, cfg);
    if ty.norm() < cfg.tol {
        return Err(Error::Pole {
            factor: format!("delta: second argument (log {log_y})"),
            magnitude: ty.norm(),
        });
    }
    Ok(eval_theta(log_x + log_y, cfg) * theta_prime_one(cfg) / (tx * ty))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm())
    }

    #[test]
    fn theta_vanishes_at_one() {
        assert_eq!(eval_theta(c(0.0, 0.0), &EvalConfig::default()).norm(), 0.0);
    }

    #[test]
    fn q_zero_is_the_leading_factor() {
        let cfg = EvalConfig {
            q: c(0.0, 0.0),
            ..Default::default()
        };
        let v = eval_theta(c(4f64.ln(), 0.0), &cfg);
        assert!((v - c(1.5, 0.0)).norm() < 1e-15);
        assert_eq!(theta_prime_one(&cfg), c(1.0, 0.0));
    }

    #[test]
    fn theta_prime_matches_finite_difference() {
        let cfg = EvalConfig::default();
        let eps = 1e-6;
        // theta as a function of x near x = 1
        let f = |x: f64| eval_theta(c(x.ln(), 0.0), &cfg);
        let fd = (f(1.0 + eps) - f(1.0 - eps)) / (2.0 * eps);
        assert!(rel(fd, theta_prime_one(&cfg)) < 1e-5);
    }

    #[test]
    fn truncation_has_converged() {
        let cfg = EvalConfig::default();
        let a = theta_prime_one(&cfg);
        let b = theta_prime_one(&cfg.with_trunc(80));
        assert!(rel(a, b) < 1e-30);
        let l = c(0.3, -0.2);
        assert!(rel(eval_theta(l, &cfg), eval_theta(l, &cfg.with_trunc(80))) < 1e-30);
    }

    #[test]
    fn delta_poles_are_reported() {
        let cfg = EvalConfig::default();
        let log_q = cfg.q.ln();
        let err = eval_delta(log_q, c(0.2, 0.1), &cfg).unwrap_err();
        assert!(matches!(err, Error::Pole { ref factor, .. } if factor.contains("first")));
        let err = eval_delta(c(0.2, 0.1), c(0.0, 0.0), &cfg).unwrap_err();
        assert!(matches!(err, Error::Pole { ref factor, .. } if factor.contains("second")));
    }

    #[test]
    fn delta_at_q_zero() {
        let cfg = EvalConfig {
            q: c(0.0, 0.0),
            ..Default::default()
        };
        let (lx, ly) = (c(0.3, 0.4), c(-0.1, 0.2));
        let s = |l: Complex64| (l * 0.5).exp() - (-l * 0.5).exp();
        let expected = s(lx + ly) / (s(lx) * s(ly));
        assert!(rel(eval_delta(lx, ly, &cfg).unwrap(), expected) < 1e-14);
    }

    #[test]
    fn config_validation() {
        assert!(EvalConfig::new(c(1.0, 0.0), 40, 1e-9).is_err());
        assert!(EvalConfig::new(c(0.1, 0.0), 0, 1e-9).is_err());
        assert!(EvalConfig::new(c(0.1, 0.0), 40, 0.0).is_err());
        assert!(EvalConfig::new(c(0.1, 0.2), 40, 1e-9).is_ok());
    }

    proptest! {
        #[test]
        fn theta_is_odd(re in -0.5f64..0.5, im in -0.8f64..0.8) {
            let cfg = EvalConfig::default();
            let l = c(re, im);
            let a = eval_theta(l, &cfg);
            let b = eval_theta(-l, &cfg);
            prop_assert!((a + b).norm() <= 1e-14 * a.norm().max(1e-300));
        }

        #[test]
        fn quasi_periodicity(re in -0.5f64..0.5, im in -0.8f64..0.8) {
            let cfg = EvalConfig::default();
            let l = c(re, im);
            let shifted = eval_theta(l + cfg.q.ln(), &cfg);
            let factor = -(-l).exp() / cfg.q.sqrt();
            prop_assert!(rel(shifted, factor * eval_theta(l, &cfg)) < 1e-12);
        }

        #[test]
        fn delta_is_symmetric(a in -0.5f64..0.5, b in -0.8f64..0.8, x in -0.5f64..0.5, y in -0.8f64..0.8) {
            let cfg = EvalConfig::default();
            let (lx, ly) = (c(a, b), c(x, y));
            prop_assume!(eval_theta(lx, &cfg).norm() > 1e-3 && eval_theta(ly, &cfg).norm() > 1e-3);
            let d1 = eval_delta(lx, ly, &cfg).unwrap();
            let d2 = eval_delta(ly, lx, &cfg).unwrap();
            prop_assert!(rel(d1, d2) < cfg.tol);
        }

        #[test]
        fn doubling_truncation_is_invisible(re in -0.5f64..0.5, im in -0.8f64..0.8, qr in 0.0f64..0.3) {
            let cfg = EvalConfig { q: c(qr, 0.0), trunc: 40, tol: 1e-9 };
            let l = c(re, im);
            let a = eval_theta(l, &cfg);
            let b = eval_theta(l, &cfg.with_trunc(80));
            prop_assume!(a.norm() > 1e-12);
            prop_assert!(rel(a, b) <= 10.0 * qr.powi(40) + 1e-15);
        }
    }
}
