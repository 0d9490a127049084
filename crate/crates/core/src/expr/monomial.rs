use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A variable of the expression namespace.
///
/// The derived order puts equivariant variables first, which fixes the argument order of
/// a sorted `delta` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `z_i`, 1-based.
    Z(u32),
    /// `t^{(s)}_i`.
    T(u32, u32),
    H,
    /// Dynamical variable `mu_i`.
    Mu(u32),
    /// `y_i = h^{-lambda_i}`.
    Y(u32),
}

type Exponents = Vec<(Var, Rational64)>;

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(i) => write!(f, "z{i}"),
            Var::T(s, i) => write!(f, "t.{s}.{i}"),
            Var::H => write!(f, "h"),
            Var::Mu(i) => write!(f, "mu{i}"),
            Var::Y(i) => write!(f, "y{i}"),
        }
    }
}

impl Var {
    pub fn latex(&self) -> String {
        match self {
            Var::Z(i) => format!("z_{{{i}}}"),
            Var::T(s, i) => format!("t^{{({s})}}_{{{i}}}"),
            Var::H => "h".into(),
            Var::Mu(i) => format!("\\mu_{{{i}}}"),
            Var::Y(i) => format!("y_{{{i}}}"),
        }
    }
}

fn parse_index(s: &str, whole: &str) -> Result<u32> {
    match s.parse::<u32>() {
        Ok(i) if i >= 1 => Ok(i),
        _ => Err(Error::Parse(format!("bad variable name {whole:?}"))),
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "h" {
            return Ok(Var::H);
        }
        if let Some(rest) = s.strip_prefix("mu") {
            return Ok(Var::Mu(parse_index(rest, s)?));
        }
        if let Some(rest) = s.strip_prefix("t.") {
            let (a, b) = rest
                .split_once('.')
                .ok_or_else(|| Error::Parse(format!("bad variable name {s:?}")))?;
            return Ok(Var::T(parse_index(a, s)?, parse_index(b, s)?));
        }
        if let Some(rest) = s.strip_prefix('z') {
            return Ok(Var::Z(parse_index(rest, s)?));
        }
        if let Some(rest) = s.strip_prefix('y') {
            return Ok(Var::Y(parse_index(rest, s)?));
        }
        Err(Error::Parse(format!("unknown variable {s:?}")))
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Laurent monomial with rational exponents. Zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<Var, Rational64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: Var) -> Self {
        Self::pow(v, Rational64::one())
    }

    pub fn pow(v: Var, e: Rational64) -> Self {
        let mut m = Self::one();
        m.add_exponent(v, e);
        m
    }

    pub fn powi(v: Var, e: i64) -> Self {
        Self::pow(v, Rational64::from_integer(e))
    }

    pub fn h() -> Self {
        Self::var(Var::H)
    }

    pub fn z(i: u32) -> Self {
        Self::var(Var::Z(i))
    }

    /// `z^e` for an ambient exponent vector (`z_i = e^{eps_i}`).
    pub fn from_z_exponents(e: &[i64]) -> Self {
        let mut m = Self::one();
        for (i, &x) in e.iter().enumerate() {
            m.add_exponent(Var::Z(i as u32 + 1), Rational64::from_integer(x));
        }
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, Rational64)>>(pairs: I) -> Self {
        let mut m = Self::one();
        for (v, e) in pairs {
            m.add_exponent(v, e);
        }
        m
    }

    pub fn add_exponent(&mut self, v: Var, e: Rational64) {
        if e.is_zero() {
            return;
        }
        let entry = self.0.entry(v).or_insert_with(Rational64::zero);
        *entry += e;
        if entry.is_zero() {
            self.0.remove(&v);
        }
    }

    pub fn exponent(&self, v: Var) -> Rational64 {
        self.0.get(&v).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, Rational64)> + '_ {
        self.0.iter().map(|(v, e)| (*v, *e))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.keys().copied()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (v, e) in other.iter() {
            m.add_exponent(v, e);
        }
        m
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (*v, -e)).collect())
    }

    pub fn scale(&self, r: Rational64) -> Monomial {
        if r.is_zero() {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (*v, e * r)).collect())
    }

    /// Sign of the exponent of the smallest variable; `0` for the trivial monomial.
    pub fn leading_sign(&self) -> i32 {
        match self.0.values().next() {
            None => 0,
            Some(e) if e.is_positive() => 1,
            Some(_) => -1,
        }
    }

    pub fn substitute(&self, map: &BTreeMap<Var, Monomial>) -> Monomial {
        let mut out = Monomial::one();
        for (v, e) in self.iter() {
            match map.get(&v) {
                Some(image) => {
                    for (u, f) in image.iter() {
                        out.add_exponent(u, f * e);
                    }
                }
                None => out.add_exponent(v, e),
            }
        }
        out
    }

    /// Applies an ambient-lattice matrix (row-major) to the `z`-exponent vector.
    pub fn act_z(&self, matrix: &[i64], dim: usize) -> Monomial {
        let mut out = Monomial::one();
        for (v, e) in self.iter() {
            match v {
                Var::Z(j) => {
                    let col = j as usize - 1;
                    assert!(
                        col < dim,
                        "z{j} outside the ambient lattice of dimension {dim}"
                    );
                    for row in 0..dim {
                        let m = matrix[row * dim + col];
                        if m != 0 {
                            out.add_exponent(
                                Var::Z(row as u32 + 1),
                                e * Rational64::from_integer(m),
                            );
                        }
                    }
                }
                _ => out.add_exponent(v, e),
            }
        }
        out
    }

    pub fn swap_z(&self, i: u32) -> Monomial {
        let mut out = Monomial::one();
        for (v, e) in self.iter() {
            let u = match v {
                Var::Z(j) if j == i => Var::Z(i + 1),
                Var::Z(j) if j == i + 1 => Var::Z(i),
                other => other,
            };
            out.add_exponent(u, e);
        }
        out
    }

    pub fn latex(&self) -> String {
        let (num, den) = self.split();
        let part = |fs: &[(Var, Rational64)]| {
            fs.iter()
                .map(|(v, e)| {
                    if e.is_one() {
                        v.latex()
                    } else {
                        format!("{}^{{{}}}", v.latex(), e)
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        match (num.is_empty(), den.is_empty()) {
            (true, true) => "1".into(),
            (false, true) => part(&num),
            (true, false) => format!("\\frac{{1}}{{{}}}", part(&den)),
            (false, false) => format!("\\frac{{{}}}{{{}}}", part(&num), part(&den)),
        }
    }

    fn split(&self) -> (Exponents, Exponents) {
        let num = self.iter().filter(|(_, e)| e.is_positive()).collect();
        let den = self
            .iter()
            .filter(|(_, e)| e.is_negative())
            .map(|(v, e)| (v, -e))
            .collect();
        (num, den)
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, v: Var, e: Rational64) -> fmt::Result {
    if e.is_one() {
        write!(f, "{v}")
    } else if e.is_integer() {
        write!(f, "{v}^{e}")
    } else {
        write!(f, "{v}^({e})")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.split();
        let write_all = |f: &mut fmt::Formatter<'_>, fs: &[(Var, Rational64)]| -> fmt::Result {
            for (k, (v, e)) in fs.iter().enumerate() {
                if k > 0 {
                    write!(f, "*")?;
                }
                fmt_power(f, *v, *e)?;
            }
            Ok(())
        };
        if num.is_empty() {
            write!(f, "1")?;
        } else {
            write_all(f, &num)?;
        }
        match den.len() {
            0 => Ok(()),
            1 => {
                write!(f, "/")?;
                write_all(f, &den)
            }
            _ => {
                write!(f, "/(")?;
                write_all(f, &den)?;
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (v, e) in &self.0 {
            if e.is_integer() {
                map.serialize_entry(&v.to_string(), &e.to_integer())?;
            } else {
                map.serialize_entry(&v.to_string(), &e.to_string())?;
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, serde_json::Value> = BTreeMap::deserialize(d)?;
        let mut m = Monomial::one();
        for (k, val) in raw {
            let v: Var = k.parse().map_err(serde::de::Error::custom)?;
            let e = parse_rational_value(&val).map_err(serde::de::Error::custom)?;
            m.add_exponent(v, e);
        }
        Ok(m)
    }
}

/// Integer or `"p/q"` string.
pub(crate) fn parse_rational_value(val: &serde_json::Value) -> Result<Rational64> {
    match val {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(Rational64::from_integer)
            .ok_or_else(|| Error::Parse(format!("exponent {n} is not an integer"))),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("bad exponent {other}"))),
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(a, b))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn variable_names_round_trip() {
        for v in [Var::Z(3), Var::T(2, 1), Var::H, Var::Mu(4), Var::Y(12)] {
            assert_eq!(v.to_string().parse::<Var>().unwrap(), v);
        }
        assert!("x1".parse::<Var>().is_err());
        assert!("z0".parse::<Var>().is_err());
    }

    #[test]
    fn products_cancel_exponents() {
        let a = Monomial::from_pairs([(Var::Z(1), r(1, 1)), (Var::H, r(1, 2))]);
        let b = Monomial::from_pairs([(Var::Z(1), r(-1, 1)), (Var::H, r(1, 2))]);
        assert_eq!(a.mul(&b), Monomial::h());
        assert!(a.div(&a).is_one());
    }

    #[test]
    fn display_forms() {
        let m = Monomial::from_pairs([(Var::Z(2), r(1, 1)), (Var::Z(1), r(-1, 1))]);
        assert_eq!(m.to_string(), "z2/z1");
        let m = Monomial::from_pairs([(Var::Z(1), r(-1, 1)), (Var::Z(2), r(-1, 1))]);
        assert_eq!(m.to_string(), "1/(z1*z2)");
        let m = Monomial::from_pairs([(Var::Mu(1), r(2, 1)), (Var::H, r(-1, 2))]);
        assert_eq!(m.to_string(), "mu1^2/h^(1/2)");
        assert_eq!(Monomial::one().to_string(), "1");
    }

    #[test]
    fn swap_and_matrix_action_agree() {
        let m = Monomial::from_pairs([
            (Var::Z(1), r(1, 1)),
            (Var::Z(2), r(-3, 1)),
            (Var::H, r(1, 1)),
        ]);
        let swap = [0, 1, 0, 1, 0, 0, 0, 0, 1];
        assert_eq!(m.swap_z(1), m.act_z(&swap, 3));
        assert_eq!(m.swap_z(1).swap_z(1), m);
    }

    #[test]
    fn json_exponents() {
        let m = Monomial::from_pairs([(Var::Z(1), r(1, 1)), (Var::H, r(-1, 2))]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"z1":1,"h":"-1/2"}"#);
        assert_eq!(serde_json::from_str::<Monomial>(&s).unwrap(), m);
    }
}
