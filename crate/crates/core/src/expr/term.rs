use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

/// A single multiplicative factor as exchanged with the outside world.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Factor {
    Delta {
        arg1: Monomial,
        arg2: Monomial,
    },
    Theta {
        pow: i32,
        arg: Monomial,
    },
    /// `theta'(1)^pow`.
    #[serde(rename = "thetaprime")]
    ThetaPrimeOne {
        pow: i32,
    },
}

/// The factor part of a term in canonical form.
///
/// Theta arguments have a positive leading exponent (`theta(1/x) = -theta(x)` is folded into
/// the coefficient) and delta pairs are stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TermKey {
    pub(crate) deltas: BTreeMap<(Monomial, Monomial), u32>,
    pub(crate) thetas: BTreeMap<Monomial, i32>,
    pub(crate) thp: i32,
}

/// Rational coefficient times a product of factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational64,
    pub key: TermKey,
}

impl TermKey {
    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty() && self.thetas.is_empty() && self.thp == 0
    }

    /// True if the product contains `theta(1)` to a positive power and therefore vanishes.
    pub fn vanishes(&self) -> bool {
        self.thetas.get(&Monomial::one()).is_some_and(|&p| p > 0)
    }

    pub fn deltas(&self) -> impl Iterator<Item = (&Monomial, &Monomial, u32)> {
        self.deltas.iter().map(|((a, b), &k)| (a, b, k))
    }

    pub fn thetas(&self) -> impl Iterator<Item = (&Monomial, i32)> {
        self.thetas.iter().map(|(m, &p)| (m, p))
    }

    pub fn theta_prime_power(&self) -> i32 {
        self.thp
    }
}

impl Term {
    pub fn constant(c: Rational64) -> Self {
        Term {
            coeff: c,
            key: TermKey::default(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational64::one())
    }

    pub fn from_factors<I: IntoIterator<Item = Factor>>(coeff: Rational64, factors: I) -> Self {
        let mut t = Self::constant(coeff);
        for f in factors {
            t.push(f);
        }
        t
    }

    pub fn delta(a: Monomial, b: Monomial) -> Self {
        Self::from_factors(Rational64::one(), [Factor::Delta { arg1: a, arg2: b }])
    }

    pub fn theta(arg: Monomial, pow: i32) -> Self {
        Self::from_factors(Rational64::one(), [Factor::Theta { pow, arg }])
    }

    pub fn theta_prime(pow: i32) -> Self {
        Self::from_factors(Rational64::one(), [Factor::ThetaPrimeOne { pow }])
    }

    pub fn push(&mut self, f: Factor) {
        match f {
            Factor::Delta { arg1, arg2 } => self.push_delta(arg1, arg2, 1),
            Factor::Theta { pow, arg } => self.push_theta(arg, pow),
            Factor::ThetaPrimeOne { pow } => self.key.thp += pow,
        }
    }

    fn push_delta(&mut self, a: Monomial, b: Monomial, count: u32) {
        let pair = if a <= b { (a, b) } else { (b, a) };
        *self.key.deltas.entry(pair).or_insert(0) += count;
    }

    fn push_theta(&mut self, arg: Monomial, pow: i32) {
        if pow == 0 {
            return;
        }
        let arg = if arg.leading_sign() < 0 {
            if pow % 2 != 0 {
                self.coeff = -self.coeff;
            }
            arg.inv()
        } else {
            arg
        };
        let entry = self.key.thetas.entry(arg.clone()).or_insert(0);
        *entry += pow;
        if *entry == 0 {
            self.key.thetas.remove(&arg);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero() || self.key.vanishes()
    }

    /// Factors in canonical order, with repeated factors listed separately.
    pub fn factors(&self) -> Vec<Factor> {
        let mut out = Vec::new();
        for ((a, b), &k) in &self.key.deltas {
            for _ in 0..k {
                out.push(Factor::Delta {
                    arg1: a.clone(),
                    arg2: b.clone(),
                });
            }
        }
        for (m, &p) in &self.key.thetas {
            out.push(Factor::Theta {
                pow: p,
                arg: m.clone(),
            });
        }
        if self.key.thp != 0 {
            out.push(Factor::ThetaPrimeOne { pow: self.key.thp });
        }
        out
    }

    pub fn mul(&self, other: &Term) -> Term {
        let mut t = self.clone();
        t.coeff *= other.coeff;
        for ((a, b), &k) in &other.key.deltas {
            t.push_delta(a.clone(), b.clone(), k);
        }
        for (m, &p) in &other.key.thetas {
            t.push_theta(m.clone(), p);
        }
        t.key.thp += other.key.thp;
        t
    }

    /// Rebuilds the term with every monomial rewritten by `f`.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Term {
        let mut t = Term::constant(self.coeff);
        for ((a, b), &k) in &self.key.deltas {
            t.push_delta(f(a), f(b), k);
        }
        for (m, &p) in &self.key.thetas {
            t.push_theta(f(m), p);
        }
        t.key.thp = self.key.thp;
        t
    }

    /// Rewrites each `delta(x, y)` as `theta(xy) theta'(1) / (theta(x) theta(y))`.
    pub fn expand_deltas(&self) -> Term {
        let mut t = Term::constant(self.coeff);
        for (m, &p) in &self.key.thetas {
            t.push_theta(m.clone(), p);
        }
        t.key.thp = self.key.thp;
        for ((a, b), &k) in &self.key.deltas {
            let k = k as i32;
            t.push_theta(a.mul(b), k);
            t.push_theta(a.clone(), -k);
            t.push_theta(b.clone(), -k);
            t.key.thp += k;
        }
        t
    }

    /// Multiplicative inverse; deltas are expanded first. `None` for a zero coefficient.
    pub fn inverse(&self) -> Option<Term> {
        if self.coeff.is_zero() {
            return None;
        }
        let e = self.expand_deltas();
        let mut t = Term::constant(e.coeff.recip());
        for (m, &p) in &e.key.thetas {
            t.key.thetas.insert(m.clone(), -p);
        }
        t.key.thp = -e.key.thp;
        Some(t)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.key
            .deltas
            .keys()
            .flat_map(|(a, b)| [a, b])
            .chain(self.key.thetas.keys())
    }

    /// Monomials whose theta sits in a denominator when the term is evaluated.
    pub fn denominator_monomials(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .key
            .deltas
            .keys()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        out.extend(
            self.key
                .thetas
                .iter()
                .filter(|(_, &p)| p < 0)
                .map(|(m, _)| m.clone()),
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::monomial::Var;

    fn z(a: u32, b: u32) -> Monomial {
        Monomial::z(a).div(&Monomial::z(b))
    }

    #[test]
    fn theta_sign_folding() {
        let t = Term::theta(z(1, 2), 1);
        let u = Term::theta(z(2, 1), 1);
        assert_eq!(t.key, u.key);
        assert_eq!(t.coeff, -u.coeff);
        let sq = Term::theta(z(2, 1), 2);
        assert_eq!(sq.coeff, Rational64::one());
    }

    #[test]
    fn delta_pairs_are_sorted() {
        let a = Term::delta(z(2, 1), Monomial::h());
        let b = Term::delta(Monomial::h(), z(2, 1));
        assert_eq!(a, b);
        let f = a.factors();
        assert_eq!(
            f,
            vec![Factor::Delta {
                arg1: z(2, 1),
                arg2: Monomial::h()
            }]
        );
    }

    #[test]
    fn theta_of_one_vanishes() {
        let t = Term::theta(Monomial::one(), 1);
        assert!(t.is_zero());
        let t = Term::theta(z(1, 2), 1).map_monomials(|m| m.swap_z(1).mul(&z(1, 2)));
        assert!(t.is_zero());
    }

    #[test]
    fn inverse_cancels() {
        let t = Term::delta(z(2, 1), Monomial::var(Var::Mu(1)))
            .mul(&Term::theta(z(3, 1), -2))
            .mul(&Term::constant(Rational64::new(3, 2)));
        let prod = t.expand_deltas().mul(&t.inverse().unwrap());
        assert!(prod.key.is_empty());
        assert_eq!(prod.coeff, Rational64::one());
    }

    #[test]
    fn factor_json_shape() {
        let f = Factor::ThetaPrimeOne { pow: 2 };
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"kind":"thetaprime","pow":2}"#
        );
        let f: Factor =
            serde_json::from_str(r#"{"kind":"delta","arg1":{"z1":1,"z2":-1},"arg2":{"h":1}}"#)
                .unwrap();
        assert_eq!(
            f,
            Factor::Delta {
                arg1: z(1, 2),
                arg2: Monomial::h()
            }
        );
    }
}
