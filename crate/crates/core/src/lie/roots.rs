use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    C,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::C => write!(f, "C"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "C" | "c" => Ok(Family::C),
            other => Err(Error::Config(format!(
                "unsupported root system family {other:?}"
            ))),
        }
    }
}

/// A finite root system realised in an ambient integer lattice.
///
/// Type `A_{n-1}` lives in `Z^n` with `alpha_i = e_i - e_{i+1}`; type `C_n` lives in
/// `Z^n` with `alpha_n = 2 e_n`. Coroots are taken with respect to the standard
/// scalar product, so `beta^vee = 2 beta / (beta, beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    dim: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    fundamental_weights: Vec<Vec<i64>>,
    fundamental_coweights: Vec<Vec<Rational64>>,
    positive_roots: Vec<Vec<i64>>,
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rational(a: &[Rational64], b: &[i64]) -> Rational64 {
    a.iter()
        .zip(b)
        .fold(Rational64::from_integer(0), |acc, (x, y)| {
            acc + x * Rational64::from_integer(*y)
        })
}

impl RootSystem {
    /// Builds the root system of the given family and rank.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        match family {
            Family::A => {
                if rank < 1 {
                    return Err(Error::Config("type A needs rank >= 1".into()));
                }
                Ok(Self::type_a(rank + 1))
            }
            Family::C => {
                if rank < 2 {
                    return Err(Error::Config("type C needs rank >= 2".into()));
                }
                Ok(Self::type_c(rank))
            }
        }
    }

    fn type_a(n: usize) -> Self {
        let rank = n - 1;
        let simple_roots: Vec<Vec<i64>> = (0..rank)
            .map(|i| sub(&unit(n, i), &unit(n, i + 1)))
            .collect();
        let fundamental_weights: Vec<Vec<i64>> = (1..=rank)
            .map(|k| (0..n).map(|j| if j < k { 1 } else { 0 }).collect())
            .collect();
        let fundamental_coweights = fundamental_weights
            .iter()
            .map(|w| w.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect();
        let mut positive_roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                positive_roots.push(sub(&unit(n, i), &unit(n, j)));
            }
        }
        let mut rs = RootSystem {
            family: Family::A,
            rank,
            dim: n,
            simple_coroots: simple_roots.clone(),
            simple_roots,
            fundamental_weights,
            fundamental_coweights,
            positive_roots,
        };
        rs.sort_positive_roots();
        rs
    }

    fn type_c(n: usize) -> Self {
        let mut simple_roots: Vec<Vec<i64>> = (0..n - 1)
            .map(|i| sub(&unit(n, i), &unit(n, i + 1)))
            .collect();
        simple_roots.push(unit(n, n - 1).iter().map(|x| 2 * x).collect());
        let mut simple_coroots: Vec<Vec<i64>> = simple_roots[..n - 1].to_vec();
        simple_coroots.push(unit(n, n - 1));
        let fundamental_weights: Vec<Vec<i64>> = (1..=n)
            .map(|k| (0..n).map(|j| if j < k { 1 } else { 0 }).collect())
            .collect();
        let half = Rational64::new(1, 2);
        let fundamental_coweights = (1..=n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        if k == n {
                            half
                        } else if j < k {
                            Rational64::from_integer(1)
                        } else {
                            Rational64::from_integer(0)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut positive_roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                positive_roots.push(sub(&unit(n, i), &unit(n, j)));
                positive_roots.push(add(&unit(n, i), &unit(n, j)));
            }
            positive_roots.push(unit(n, i).iter().map(|x| 2 * x).collect());
        }
        let mut rs = RootSystem {
            family: Family::C,
            rank: n,
            dim: n,
            simple_roots,
            simple_coroots,
            fundamental_weights,
            fundamental_coweights,
            positive_roots,
        };
        rs.sort_positive_roots();
        rs
    }

    fn sort_positive_roots(&mut self) {
        let mut roots = std::mem::take(&mut self.positive_roots);
        roots.sort_by(|a, b| {
            let ha = self.height(a);
            let hb = self.height(b);
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        self.positive_roots = roots;
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the ambient lattice.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Simple root `alpha_i`, 1-based.
    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.simple_roots[i - 1]
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.simple_coroots[i - 1]
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn fundamental_weight(&self, i: usize) -> &[i64] {
        &self.fundamental_weights[i - 1]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// `<alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple_roots
            .iter()
            .map(|a| self.simple_coroots.iter().map(|c| dot(a, c)).collect())
            .collect()
    }

    /// Coefficients of a weight in the basis of simple roots (exact for roots).
    pub fn simple_coordinates(&self, beta: &[i64]) -> Vec<Rational64> {
        self.fundamental_coweights
            .iter()
            .map(|w| dot_rational(w, beta))
            .collect()
    }

    fn height(&self, beta: &[i64]) -> Rational64 {
        self.simple_coordinates(beta).into_iter().sum()
    }

    pub fn is_root(&self, beta: &[i64]) -> bool {
        let neg: Vec<i64> = beta.iter().map(|x| -x).collect();
        self.positive_roots.iter().any(|r| r == beta || *r == neg)
    }

    pub fn is_positive_root(&self, beta: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r == beta)
    }

    pub fn is_negative_root(&self, beta: &[i64]) -> bool {
        let neg: Vec<i64> = beta.iter().map(|x| -x).collect();
        self.is_positive_root(&neg)
    }

    /// `beta^vee = 2 beta / (beta, beta)`; integral for every root of types A and C.
    pub fn coroot(&self, beta: &[i64]) -> Vec<i64> {
        let norm = dot(beta, beta);
        debug_assert!(norm > 0);
        beta.iter()
            .map(|x| {
                debug_assert_eq!((2 * x) % norm, 0);
                2 * x / norm
            })
            .collect()
    }

    /// Matrix of `s_beta` acting on the ambient lattice (row-major, `dim x dim`).
    pub fn reflection_matrix(&self, beta: &[i64]) -> Vec<i64> {
        let c = self.coroot(beta);
        let d = self.dim;
        let mut m = vec![0; d * d];
        for r in 0..d {
            for col in 0..d {
                m[r * d + col] = i64::from(r == col) - beta[r] * c[col];
            }
        }
        m
    }

    /// Simple-root indices `i` whose coordinate in `beta` is nonzero.
    pub fn support(&self, beta: &[i64]) -> Vec<usize> {
        self.simple_coordinates(beta)
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Rational64::from_integer(0))
            .map(|(i, _)| i + 1)
            .collect()
    }
}
