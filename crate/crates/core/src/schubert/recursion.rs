use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Expr, Monomial};
use crate::lie::{ElemId, ParabolicSetup};

use super::lambda::LambdaSymbol;
use super::localization::class_localization;

/// How a class table was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recursion,
    Localization,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Recursion => write!(f, "recursion"),
            Method::Localization => write!(f, "localization"),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recursion" => Ok(Method::Recursion),
            "localization" => Ok(Method::Localization),
            other => Err(Error::Config(format!("unknown method {other:?}"))),
        }
    }
}

/// Which left descent the recursion peels off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DescentChoice {
    #[default]
    First,
    Last,
}

/// All restrictions `E(X^P_w, lambda)_v` for `w, v` in `W^P`.
#[derive(Debug, Clone)]
pub struct ClassTable {
    setup: ParabolicSetup,
    method: Method,
    rows: Vec<Vec<Expr>>,
}

impl ClassTable {
    pub fn new(setup: &ParabolicSetup, lambda: &LambdaSymbol, method: Method) -> Result<Self> {
        match method {
            Method::Recursion => Self::recursion(setup, lambda, DescentChoice::First),
            Method::Localization => Self::localization(setup, lambda),
        }
    }

    /// Builds rows in order of length; each row reads the row of `s_i w`.
    pub fn recursion(
        setup: &ParabolicSetup,
        lambda: &LambdaSymbol,
        choice: DescentChoice,
    ) -> Result<Self> {
        let g = setup.group();
        let rs = setup.root_system();
        let reps = setup.min_reps();
        let shifted = lambda.shifted(setup.rho_bar());
        let dim = rs.dim();
        let mut rows: Vec<Vec<Expr>> = Vec::with_capacity(reps.len());
        for &target in reps {
            if target == g.identity() {
                rows.push(
                    reps.iter()
                        .map(|&v| {
                            if v == target {
                                Expr::one()
                            } else {
                                Expr::zero()
                            }
                        })
                        .collect(),
                );
                continue;
            }
            let descents = g.left_descents(target);
            let i = match choice {
                DescentChoice::First => descents[0],
                DescentChoice::Last => *descents.last().expect("non-identity has a descent"),
            };
            let w = g.simple_left(i, target);
            let pos = setup
                .rep_position(w)
                .expect("s_i w stays in W^P for a left descent i");
            debug_assert!(pos < rows.len());
            let alpha = rs.simple_root(i);
            let neg_alpha: Vec<i64> = alpha.iter().map(|x| -x).collect();
            let coroot = g.act(g.inverse(w), rs.simple_coroot(i));
            let c1 = Expr::delta(
                Monomial::from_z_exponents(&neg_alpha),
                shifted.pairing(&coroot),
            );
            let c2 = Expr::delta(Monomial::from_z_exponents(alpha), Monomial::h());
            let refl = g.matrix(g.simple(i));
            let prev = &rows[pos];
            let row = reps
                .iter()
                .map(|&v| {
                    let sv = setup.min_rep(g.simple_left(i, v));
                    let a = c1.mul(&prev[setup.rep_position(v).unwrap()]);
                    let b = c2.mul(&prev[setup.rep_position(sv).unwrap()].act_z(refl, dim));
                    a.add(&b)
                })
                .collect();
            rows.push(row);
        }
        Ok(ClassTable {
            setup: setup.clone(),
            method: Method::Recursion,
            rows,
        })
    }

    pub fn localization(setup: &ParabolicSetup, lambda: &LambdaSymbol) -> Result<Self> {
        let reps = setup.min_reps();
        let rows = reps
            .par_iter()
            .map(|&w| {
                reps.iter()
                    .map(|&v| class_localization(setup, w, v, lambda))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassTable {
            setup: setup.clone(),
            method: Method::Localization,
            rows,
        })
    }

    pub fn setup(&self) -> &ParabolicSetup {
        &self.setup
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn elements(&self) -> &[ElemId] {
        self.setup.min_reps()
    }

    pub fn entry(&self, w: ElemId, v: ElemId) -> &Expr {
        let i = self.setup.rep_position(w).expect("w in W^P");
        let j = self.setup.rep_position(v).expect("v in W^P");
        &self.rows[i][j]
    }

    pub fn row(&self, w: ElemId) -> &[Expr] {
        &self.rows[self.setup.rep_position(w).expect("w in W^P")]
    }

    /// `(w, v, entry)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (ElemId, ElemId, &Expr)> + '_ {
        let reps = self.setup.min_reps();
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, e)| (reps[i], reps[j], e))
        })
    }
}

/// A single entry of the recursion table.
pub fn class_recursion(
    setup: &ParabolicSetup,
    w: ElemId,
    v: ElemId,
    lambda: &LambdaSymbol,
) -> Result<Expr> {
    for x in [w, v] {
        if !setup.is_min_rep(x) {
            return Err(Error::Domain(format!("{} is not in W^P", setup.label(x))));
        }
    }
    Ok(ClassTable::recursion(setup, lambda, DescentChoice::First)?
        .entry(w, v)
        .clone())
}
