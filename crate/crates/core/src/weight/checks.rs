use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{numeric_equal, Comparison, Expr, Monomial, SamplingOptions, Var};
use crate::schubert::type_a::{block_of, inverse, partial_sums, r_vector, TypeATable};
use crate::theta::EvalConfig;

use super::function::{
    euler_factor, mu_substitution, normalization, one_over, restrict, weight_function,
};
use super::partition::BlockPartition;

/// `mu_subst(W_I(z_J)) / (e_J N_k)`.
pub fn normalized_restriction(w_i: &Expr, k: &[usize], j: &BlockPartition) -> Result<Expr> {
    let r = mu_substitution(&restrict(w_i, j), k)?;
    Ok(r.mul_term(&one_over(&euler_factor(j).mul(&normalization(k)))))
}

/// Both sides of the identity between restricted weight functions and class entries.
pub fn main_theorem_sides(
    table: &TypeATable,
    i: &BlockPartition,
    j: &BlockPartition,
) -> Result<(Expr, Expr)> {
    let k = table.blocks();
    if i.sizes() != k || j.sizes() != k {
        return Err(Error::Domain(format!(
            "{i} and {j} must have block sizes {k:?}"
        )));
    }
    let lhs = normalized_restriction(&weight_function(i)?, k, j)?;
    Ok((
        lhs,
        table
            .entry(&i.to_permutation(), &j.to_permutation())?
            .clone(),
    ))
}

pub fn main_theorem_check(
    table: &TypeATable,
    i: &BlockPartition,
    j: &BlockPartition,
    cfg: &EvalConfig,
    opts: &SamplingOptions,
) -> Result<Comparison> {
    let (lhs, rhs) = main_theorem_sides(table, i, j)?;
    numeric_equal(&lhs, &rhs, cfg, opts)
}

/// `(W_{s_i(I)}, delta(z_{i+1}/z_i, mu_b h^{p_{I,a}(i)} / (mu_a h^{p_{I,b}(i+1)})) W_I
/// + delta(z_i/z_{i+1}, h) s_i W_I)` for `i in I_a`, `i+1 in I_b`, `a < b`.
pub fn rmatrix_sides(i: &BlockPartition, idx: usize) -> Result<(Expr, Expr)> {
    if idx == 0 || idx >= i.n() {
        return Err(Error::Domain(format!(
            "index {idx} out of range for n = {}",
            i.n()
        )));
    }
    let (a, b) = (i.block_of(idx), i.block_of(idx + 1));
    if a >= b {
        return Err(Error::Domain(format!(
            "{idx} lies in block {a} and {} in block {b}; need a < b",
            idx + 1
        )));
    }
    let w = weight_function(i)?;
    let z = |x: usize| Monomial::z(x as u32);
    let arg = Monomial::var(Var::Mu(b as u32))
        .mul(&Monomial::powi(
            Var::H,
            i.p(a, idx) as i64 - i.p(b, idx + 1) as i64,
        ))
        .div(&Monomial::var(Var::Mu(a as u32)));
    let rhs = Expr::delta(z(idx + 1).div(&z(idx)), arg)
        .mul(&w)
        .add(&Expr::delta(z(idx).div(&z(idx + 1)), Monomial::h()).mul(&w.swap_z(idx as u32)));
    Ok((weight_function(&i.swap(idx))?, rhs))
}

pub fn rmatrix_check(
    i: &BlockPartition,
    idx: usize,
    cfg: &EvalConfig,
    opts: &SamplingOptions,
) -> Result<Comparison> {
    let (lhs, rhs) = rmatrix_sides(i, idx)?;
    numeric_equal(&lhs, &rhs, cfg, opts)
}

/// Every admissible `(I, i)` pair for the R-matrix relation.
pub fn rmatrix_cases(k: &[usize]) -> Result<Vec<(BlockPartition, usize)>> {
    Ok(BlockPartition::all(k)?
        .into_iter()
        .flat_map(|i| {
            (1..i.n())
                .filter(|&x| i.block_of(x) < i.block_of(x + 1))
                .map(|x| (i.clone(), x))
                .collect::<Vec<_>>()
        })
        .collect())
}

/// `W_{I^0}(z_J)` against `e_{I^0} N_k` at `J = I^0` and zero elsewhere.
pub fn initial_check(
    k: &[usize],
    cfg: &EvalConfig,
    opts: &SamplingOptions,
) -> Result<Vec<(BlockPartition, Comparison)>> {
    let i0 = BlockPartition::initial(k)?;
    let w = weight_function(&i0)?;
    BlockPartition::all(k)?
        .into_iter()
        .map(|j| {
            let r = restrict(&w, &j);
            let expected = if j == i0 {
                Expr::from_term(euler_factor(&j).mul(&normalization(k)))
            } else {
                Expr::zero()
            };
            let c = numeric_equal(&r, &expected, cfg, opts)?;
            Ok((j, c))
        })
        .collect()
}

/// `r_j = block(j) - j`.
pub fn block_offset_r_vector(k: &[usize]) -> Vec<i64> {
    let n: usize = k.iter().sum();
    (1..=n).map(|j| block_of(k, j) as i64 - j as i64).collect()
}

/// `p_{I,a}(i) + k^{(a-1)} + r_{w^{-1}(i)} - a` for `i = 1..n`, `a` the block of `i`.
pub fn identity_values(i: &BlockPartition, r: &[i64]) -> Vec<i64> {
    let ks = partial_sums(i.sizes());
    let winv = inverse(&i.to_permutation());
    (1..=i.n())
        .map(|x| {
            let a = i.block_of(x);
            i.p(a, x) as i64 + ks[a - 1] as i64 + r[winv[x - 1] - 1] - a as i64
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityFailure {
    pub blocks: Vec<usize>,
    pub partition: String,
    pub values: Vec<i64>,
    pub expected: i64,
}

/// Checks the identity for every partition of sizes `k`, in both normalizations of `r`.
pub fn combinatorial_identity(k: &[usize]) -> Result<(usize, Vec<IdentityFailure>)> {
    let n = k.iter().sum::<usize>() as i64;
    let m = k.len() as i64;
    let rs = [(block_offset_r_vector(k), -1), (r_vector(k), n - m - 1)];
    let mut cases = 0;
    let mut failures = Vec::new();
    for i in BlockPartition::all(k)? {
        for (r, expected) in &rs {
            cases += 1;
            let values = identity_values(&i, r);
            if values.iter().any(|v| v != expected) {
                failures.push(IdentityFailure {
                    blocks: k.to_vec(),
                    partition: i.to_string(),
                    values,
                    expected: *expected,
                });
            }
        }
    }
    Ok((cases, failures))
}

/// All compositions of `n`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![];
    }
    (0..1u32 << (n - 1))
        .map(|mask| {
            let mut out = vec![1];
            for bit in 0..n - 1 {
                if mask >> bit & 1 == 1 {
                    out.push(1);
                } else {
                    *out.last_mut().unwrap() += 1;
                }
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows_for_2_3_2() {
        let k = [2, 3, 2];
        assert_eq!(block_offset_r_vector(&k), vec![0, -1, -1, -2, -3, -3, -4]);
        for i in BlockPartition::all(&k).unwrap() {
            let w = i.to_permutation();
            let p: Vec<usize> = (1..=7)
                .map(|j| i.p(i.block_of(w[j - 1]), w[j - 1]))
                .collect();
            assert_eq!(p, vec![0, 1, 0, 1, 2, 0, 1]);
            assert!(identity_values(&i, &block_offset_r_vector(&k))
                .iter()
                .all(|&v| v == -1));
        }
    }

    #[test]
    fn identity_up_to_seven() {
        let mut total = 0;
        for n in 1..=7 {
            for k in compositions(n) {
                let (cases, failures) = combinatorial_identity(&k).unwrap();
                assert!(failures.is_empty(), "{failures:?}");
                total += cases;
            }
        }
        // twice the ordered set partitions of 1..=7
        assert!(total > 2 * 47293);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(4).len(), 8);
        assert!(compositions(3).contains(&vec![1, 2]));
    }

    #[test]
    fn rmatrix_small() {
        let cfg = EvalConfig::default();
        let opts = SamplingOptions {
            samples: 5,
            ..Default::default()
        };
        for k in [vec![1, 1], vec![2, 1], vec![1, 1, 1]] {
            for (i, x) in rmatrix_cases(&k).unwrap() {
                let c = rmatrix_check(&i, x, &cfg, &opts).unwrap();
                assert!(c.equal, "{i} {x} {c:?}");
            }
        }
        let i = BlockPartition::new(vec![vec![2], vec![1]]).unwrap();
        assert!(matches!(rmatrix_sides(&i, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn main_theorem_small() {
        let cfg = EvalConfig::default();
        let opts = SamplingOptions {
            samples: 5,
            ..Default::default()
        };
        for k in [vec![1, 1], vec![2, 1], vec![1, 2], vec![1, 1, 1]] {
            let table = TypeATable::new(&k).unwrap();
            for i in BlockPartition::all(&k).unwrap() {
                for j in BlockPartition::all(&k).unwrap() {
                    let c = main_theorem_check(&table, &i, &j, &cfg, &opts).unwrap();
                    assert!(c.equal, "{k:?} {i} {j} {c:?}");
                }
            }
        }
    }

    #[test]
    fn initial_vanishing() {
        let opts = SamplingOptions {
            samples: 5,
            ..Default::default()
        };
        for (j, c) in initial_check(&[2, 2], &EvalConfig::default(), &opts).unwrap() {
            assert!(c.equal, "{j} {c:?}");
        }
    }
}
