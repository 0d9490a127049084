//! The type-A recursion written with permutations and the variables `z_i`, `y_j`, `h`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::expr::{Expr, Monomial, Var};

/// `k^{(s)}` for `s = 0..=m`.
pub fn partial_sums(k: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for &x in k {
        out.push(out.last().unwrap() + x);
    }
    out
}

/// Block (1-based) of the position `j` (1-based).
pub fn block_of(k: &[usize], j: usize) -> usize {
    let ks = partial_sums(k);
    (1..ks.len())
        .find(|&s| ks[s - 1] < j && j <= ks[s])
        .expect("position inside 1..=n")
}

/// `rho_bar^L` in type A normalized by `r_n = 0`.
pub fn r_vector(k: &[usize]) -> Vec<i64> {
    let n: usize = k.iter().sum();
    let mut r = vec![0i64; n];
    for i in (0..n.saturating_sub(1)).rev() {
        let same = block_of(k, i + 1) == block_of(k, i + 2);
        r[i] = r[i + 1] + i64::from(same);
    }
    r
}

/// Shared `y` variable of the block containing position `j`: `y_{k^{(s-1)}+1}`.
pub fn block_y(k: &[usize], j: usize) -> Var {
    let ks = partial_sums(k);
    Var::Y(ks[block_of(k, j) - 1] as u32 + 1)
}

/// Identification of the dynamical variables with the `y` variables: `mu_s -> y_{k^{(s-1)}+1}`.
pub fn mu_to_y(k: &[usize]) -> BTreeMap<Var, Monomial> {
    let ks = partial_sums(k);
    (1..=k.len())
        .map(|s| {
            (
                Var::Mu(s as u32),
                Monomial::var(Var::Y(ks[s - 1] as u32 + 1)),
            )
        })
        .collect()
}

fn validate(k: &[usize]) -> Result<usize> {
    if k.is_empty() || k.contains(&0) {
        return Err(Error::Config(format!("invalid block sizes {k:?}")));
    }
    Ok(k.iter().sum())
}

/// Minimal coset representatives in one-line notation (increasing inside each block).
pub fn min_rep_permutations(k: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = validate(k)?;
    let ks = partial_sums(k);
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        if (1..ks.len()).all(|s| perm[ks[s - 1]..ks[s]].windows(2).all(|w| w[0] < w[1])) {
            out.push(perm.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out.sort_by_key(|w| (inversions(w), w.clone()));
    Ok(out)
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn inversions(w: &[usize]) -> usize {
    (0..w.len())
        .map(|a| (a + 1..w.len()).filter(|&b| w[a] > w[b]).count())
        .sum()
}

/// Sorts each block of positions, giving the minimal representative of `w W_P`.
pub fn reduce(k: &[usize], w: &[usize]) -> Vec<usize> {
    let ks = partial_sums(k);
    let mut out = w.to_vec();
    for s in 1..ks.len() {
        out[ks[s - 1]..ks[s]].sort_unstable();
    }
    out
}

/// `s_i w`: exchanges the values `i` and `i+1`.
pub fn swap_values(w: &[usize], i: usize) -> Vec<usize> {
    w.iter()
        .map(|&x| {
            if x == i {
                i + 1
            } else if x == i + 1 {
                i
            } else {
                x
            }
        })
        .collect()
}

pub fn inverse(w: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; w.len()];
    for (j, &x) in w.iter().enumerate() {
        inv[x - 1] = j + 1;
    }
    inv
}

/// Type-A class table keyed by one-line notation.
#[derive(Debug, Clone)]
pub struct TypeATable {
    k: Vec<usize>,
    perms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    rows: Vec<Vec<Expr>>,
}

impl TypeATable {
    pub fn new(k: &[usize]) -> Result<Self> {
        let n = validate(k)?;
        if n < 2 {
            return Err(Error::Config("type A needs n >= 2".into()));
        }
        let perms = min_rep_permutations(k)?;
        let index: HashMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(a, w)| (w.clone(), a))
            .collect();
        let r = r_vector(k);
        let mut rows: Vec<Vec<Expr>> = Vec::with_capacity(perms.len());
        for target in &perms {
            let tinv = inverse(target);
            let descent = (1..n).find(|&i| tinv[i - 1] > tinv[i]);
            let Some(i) = descent else {
                rows.push(
                    perms
                        .iter()
                        .map(|v| {
                            if v == target {
                                Expr::one()
                            } else {
                                Expr::zero()
                            }
                        })
                        .collect(),
                );
                continue;
            };
            let w = swap_values(target, i);
            let winv = inverse(&w);
            let (a, b) = (winv[i - 1], winv[i]);
            let arg = Monomial::powi(Var::H, r[b - 1] - r[a - 1])
                .mul(&Monomial::var(block_y(k, b)))
                .div(&Monomial::var(block_y(k, a)));
            let zi = i as u32;
            let c1 = Expr::delta(Monomial::z(zi + 1).div(&Monomial::z(zi)), arg);
            let c2 = Expr::delta(Monomial::z(zi).div(&Monomial::z(zi + 1)), Monomial::h());
            let prev = &rows[index[&w]];
            let row = perms
                .iter()
                .map(|v| {
                    let sv = reduce(k, &swap_values(v, i));
                    c1.mul(&prev[index[v]])
                        .add(&c2.mul(&prev[index[&sv]].swap_z(zi)))
                })
                .collect();
            rows.push(row);
        }
        Ok(TypeATable {
            k: k.to_vec(),
            perms,
            index,
            rows,
        })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.k
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn entry(&self, w: &[usize], v: &[usize]) -> Result<&Expr> {
        let find = |x: &[usize]| {
            self.index.get(x).copied().ok_or_else(|| {
                Error::Domain(format!("{x:?} is not a minimal coset representative"))
            })
        };
        Ok(&self.rows[find(w)?][find(v)?])
    }
}

/// A single entry of the type-A recursion.
pub fn type_a_recursion(k: &[usize], w: &[usize], v: &[usize]) -> Result<Expr> {
    Ok(TypeATable::new(k)?.entry(w, v)?.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::ParabolicSetup;

    #[test]
    fn r_vectors() {
        assert_eq!(r_vector(&[2, 3, 1]), vec![3, 2, 2, 1, 0, 0]);
        assert_eq!(r_vector(&[1, 1, 1]), vec![0, 0, 0]);
        for k in [vec![2, 2], vec![1, 3], vec![3, 1, 2]] {
            let s = ParabolicSetup::type_a(&k).unwrap();
            assert_eq!(r_vector(&k), s.rho_bar());
        }
    }

    #[test]
    fn coset_counts() {
        assert_eq!(min_rep_permutations(&[2, 2]).unwrap().len(), 6);
        assert_eq!(min_rep_permutations(&[1, 1, 1]).unwrap().len(), 6);
        assert_eq!(min_rep_permutations(&[2, 3, 2]).unwrap().len(), 210);
    }

    #[test]
    fn borel_sl2() {
        let e = type_a_recursion(&[1, 1], &[2, 1], &[1, 2]).unwrap();
        assert_eq!(e, "d(z2/z1, y2/y1)".parse().unwrap());
    }

    #[test]
    fn block_variables() {
        assert_eq!(block_y(&[2, 2], 2), Var::Y(1));
        assert_eq!(block_y(&[2, 2], 3), Var::Y(3));
        assert_eq!(mu_to_y(&[2, 2])[&Var::Mu(2)], Monomial::var(Var::Y(3)));
    }

    #[test]
    fn unknown_permutation() {
        let t = TypeATable::new(&[2, 2]).unwrap();
        assert!(t.entry(&[2, 1, 3, 4], &[1, 2, 3, 4]).is_err());
        assert!(TypeATable::new(&[0, 2]).is_err());
    }
}
