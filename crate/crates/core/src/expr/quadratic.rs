use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, Var};
use super::term::Term;
use super::Expr;

/// Symmetric rational matrix `A` of the form `x^T A x`, stored sparsely on both triangles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct QuadraticForm(BTreeMap<(Var, Var), Rational64>);

impl QuadraticForm {
    pub fn zero() -> Self {
        Self::default()
    }

    fn bump(&mut self, u: Var, v: Var, c: Rational64) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry((u, v)).or_insert_with(Rational64::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&(u, v));
        }
    }

    /// Adds `p * L^2` for `theta(m)^p`.
    pub fn add_theta(&mut self, m: &Monomial, p: i32) {
        let p = Rational64::from_integer(p as i64);
        for (u, a) in m.iter() {
            for (v, b) in m.iter() {
                self.bump(u, v, p * a * b);
            }
        }
    }

    /// Adds `2 L_1 L_2` for `delta(m1, m2)`.
    pub fn add_delta(&mut self, m1: &Monomial, m2: &Monomial) {
        for (u, a) in m1.iter() {
            for (v, b) in m2.iter() {
                self.bump(u, v, a * b);
                self.bump(v, u, a * b);
            }
        }
    }

    pub fn add(&self, other: &QuadraticForm) -> QuadraticForm {
        let mut q = self.clone();
        for (&(u, v), &c) in &other.0 {
            q.bump(u, v, c);
        }
        q
    }

    pub fn entry(&self, u: Var, v: Var) -> Rational64 {
        self.0
            .get(&(u, v))
            .copied()
            .unwrap_or_else(Rational64::zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|(&(u, v), c)| self.entry(v, u) == *c)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Var, Var, Rational64)> + '_ {
        self.0.iter().map(|(&(u, v), &c)| (u, v, c))
    }

    pub fn of_term(t: &Term) -> QuadraticForm {
        let mut q = QuadraticForm::zero();
        for (a, b, k) in t.key.deltas() {
            for _ in 0..k {
                q.add_delta(a, b);
            }
        }
        for (m, p) in t.key.thetas() {
            q.add_theta(m, p);
        }
        q
    }

    /// Relabels `z_i <-> z_{i+1}`.
    pub fn swap_z(&self, i: u32) -> QuadraticForm {
        let sw = |v: Var| match v {
            Var::Z(j) if j == i => Var::Z(i + 1),
            Var::Z(j) if j == i + 1 => Var::Z(i),
            other => other,
        };
        QuadraticForm(
            self.0
                .iter()
                .map(|(&(u, v), &c)| ((sw(u), sw(v)), c))
                .collect(),
        )
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(u, v), &c) in &self.0 {
            if u > v {
                continue;
            }
            let c = if u == v { c } else { c * 2 };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if u == v {
                write!(f, "({c})*{u}^2")?;
            } else {
                write!(f, "({c})*{u}*{v}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for QuadraticForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadraticForm {
    fn deserialize<D: serde::Deserializer<'de>>(_: D) -> std::result::Result<Self, D::Error> {
        Err(serde::de::Error::custom("quadratic forms are output only"))
    }
}

/// True iff all terms of `e` carry the same quadratic form.
pub fn transformation_check(e: &Expr) -> bool {
    let mut forms = e.terms().map(|t| QuadraticForm::of_term(&t));
    match forms.next() {
        None => true,
        Some(first) => forms.all(|q| q == first),
    }
}
