//! Sums of products of theta and delta factors with rational coefficients.

pub(crate) mod eval;
mod monomial;
mod parse;
mod quadratic;
mod term;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use eval::{
    default_point, eval_breakdown, eval_expr, eval_with_scale, numeric_equal, sample_point,
    Comparison, PointAssignment, SamplingOptions, TermBreakdown,
};
pub use monomial::{Monomial, Var};
pub use quadratic::{transformation_check, QuadraticForm};
pub use term::{Factor, Term, TermKey};

use crate::error::{Error, Result};

/// A finite sum of [`Term`]s, always held in canonical form.
///
/// Identical factor products are merged, zero coefficients and terms containing `theta(1)` are
/// dropped, and the term order is the total order on [`TermKey`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Expr {
    terms: BTreeMap<TermKey, Rational64>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Self::from_term(Term::one())
    }

    pub fn constant(c: Rational64) -> Self {
        Self::from_term(Term::constant(c))
    }

    pub fn from_term(t: Term) -> Self {
        let mut e = Expr::zero();
        e.add_term(t);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Self {
        let mut e = Expr::zero();
        for t in terms {
            e.add_term(t);
        }
        e
    }

    pub fn delta(a: Monomial, b: Monomial) -> Self {
        Self::from_term(Term::delta(a, b))
    }

    pub fn theta(arg: Monomial, pow: i32) -> Self {
        Self::from_term(Term::theta(arg, pow))
    }

    pub fn add_term(&mut self, t: Term) {
        if t.is_zero() {
            return;
        }
        let c = self
            .terms
            .entry(t.key.clone())
            .or_insert_with(Rational64::zero);
        *c += t.coeff;
        if c.is_zero() {
            self.terms.remove(&t.key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(k, c)| Term {
            coeff: *c,
            key: k.clone(),
        })
    }

    pub fn add(&self, other: &Expr) -> Expr {
        let mut e = self.clone();
        for t in other.terms() {
            e.add_term(t);
        }
        e
    }

    pub fn neg(&self) -> Expr {
        self.scale(-Rational64::one())
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Rational64) -> Expr {
        Expr::from_terms(self.terms().map(|mut t| {
            t.coeff *= c;
            t
        }))
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        let mut e = Expr::zero();
        for a in self.terms() {
            for b in other.terms() {
                e.add_term(a.mul(&b));
            }
        }
        e
    }

    pub fn mul_term(&self, t: &Term) -> Expr {
        Expr::from_terms(self.terms().map(|a| a.mul(t)))
    }

    /// Division by a single-term expression (after delta expansion of the divisor).
    pub fn div_term(&self, t: &Term) -> Result<Expr> {
        let inv = t
            .inverse()
            .ok_or_else(|| Error::Domain("division by a zero term".into()))?;
        Ok(self.mul_term(&inv))
    }

    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Expr {
        Expr::from_terms(self.terms().map(|t| t.map_monomials(&f)))
    }

    /// Rewrites every monomial multiplicatively; variables outside `map` are kept.
    pub fn substitute(&self, map: &BTreeMap<Var, Monomial>) -> Expr {
        self.map_monomials(|m| m.substitute(map))
    }

    /// `s_i^z`: exchanges `z_i` and `z_{i+1}`.
    pub fn swap_z(&self, i: u32) -> Expr {
        self.map_monomials(|m| m.swap_z(i))
    }

    /// Acts on the `z`-exponent vectors by an ambient-lattice matrix.
    pub fn act_z(&self, matrix: &[i64], dim: usize) -> Expr {
        self.map_monomials(|m| m.act_z(matrix, dim))
    }

    pub fn expand_deltas(&self) -> Expr {
        Expr::from_terms(self.terms().map(|t| t.expand_deltas()))
    }

    /// Rebuilds the expression from its terms; a no-op on values produced by this module.
    pub fn canonicalize(&self) -> Expr {
        Expr::from_terms(self.terms())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|k| {
                let t = Term {
                    coeff: Rational64::one(),
                    key: k.clone(),
                };
                t.monomials().flat_map(|m| m.vars()).collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, t) in self.terms().enumerate() {
            let neg = t.coeff.is_negative();
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let c = t.coeff.abs();
            let factors = t.factors();
            if !c.is_one() || factors.is_empty() {
                if c.is_integer() {
                    out.push_str(&c.to_string());
                } else {
                    out.push_str(&format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()));
                }
            }
            for f in factors {
                out.push_str(&match f {
                    Factor::Delta { arg1, arg2 } => {
                        format!("\\delta\\left({}, {}\\right)", arg1.latex(), arg2.latex())
                    }
                    Factor::Theta { pow: 1, arg } => {
                        format!("\\vartheta\\left({}\\right)", arg.latex())
                    }
                    Factor::Theta { pow, arg } => {
                        format!("\\vartheta\\left({}\\right)^{{{pow}}}", arg.latex())
                    }
                    Factor::ThetaPrimeOne { pow: 1 } => "\\vartheta'(1)".to_string(),
                    Factor::ThetaPrimeOne { pow } => format!("\\vartheta'(1)^{{{pow}}}"),
                });
            }
        }
        out
    }
}

fn fmt_term_body(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    let c = t.coeff.abs();
    let factors = t.factors();
    let mut items: Vec<String> = Vec::new();
    if !c.is_one() || factors.is_empty() {
        items.push(c.to_string());
    }
    let mut k = 0;
    while k < factors.len() {
        let f0 = &factors[k];
        let mut run = 1;
        while k + run < factors.len() && factors[k + run] == *f0 {
            run += 1;
        }
        items.push(match f0 {
            Factor::Delta { arg1, arg2 } if run == 1 => format!("d({arg1}, {arg2})"),
            Factor::Delta { arg1, arg2 } => format!("d({arg1}, {arg2})^{run}"),
            Factor::Theta { pow: 1, arg } => format!("theta({arg})"),
            Factor::Theta { pow, arg } => format!("theta({arg})^{pow}"),
            Factor::ThetaPrimeOne { pow: 1 } => "thp".to_string(),
            Factor::ThetaPrimeOne { pow } => format!("thp^{pow}"),
        });
        k += run;
    }
    write!(f, "{}", items.join("*"))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, t) in self.terms().enumerate() {
            let neg = t.coeff.is_negative();
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            fmt_term_body(f, &t)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_expr(s)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: serde_json::Value,
    factors: Vec<Factor>,
}

#[derive(Serialize, Deserialize)]
struct JsonExpr {
    terms: Vec<JsonTerm>,
}

impl Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonExpr {
            terms: self
                .terms()
                .map(|t| JsonTerm {
                    coeff: serde_json::Value::String(t.coeff.to_string()),
                    factors: t.factors(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Expr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = JsonExpr::deserialize(d)?;
        let mut e = Expr::zero();
        for jt in raw.terms {
            let c = monomial::parse_rational_value(&jt.coeff).map_err(serde::de::Error::custom)?;
            e.add_term(Term::from_factors(c, jt.factors));
        }
        Ok(e)
    }
}
