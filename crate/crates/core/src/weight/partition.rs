use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{ElemId, ParabolicSetup};
use crate::schubert::type_a::{min_rep_permutations, partial_sums};

/// An ordered set partition `I = (I_1, ..., I_m)` of `{1..n}` with `|I_s| = k_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockPartition {
    k: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl BlockPartition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let k: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        let n: usize = k.iter().sum();
        if k.is_empty() || k.contains(&0) {
            return Err(Error::Domain(format!("empty block in {blocks:?}")));
        }
        let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        if all != (1..=n).collect::<Vec<_>>() {
            return Err(Error::Domain(format!(
                "{blocks:?} is not a partition of 1..={n}"
            )));
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(BlockPartition { k, blocks })
    }

    /// `I^0 = ({1..k_1}, {k_1+1..k_1+k_2}, ...)`.
    pub fn initial(k: &[usize]) -> Result<Self> {
        let n: usize = k.iter().sum();
        Self::from_permutation(k, &(1..=n).collect::<Vec<_>>())
    }

    /// `I_s = w({k^{(s-1)}+1, ..., k^{(s)}})` for `w` in one-line notation.
    pub fn from_permutation(k: &[usize], w: &[usize]) -> Result<Self> {
        if k.iter().sum::<usize>() != w.len() {
            return Err(Error::Domain(format!(
                "{w:?} does not match block sizes {k:?}"
            )));
        }
        let ks = partial_sums(k);
        Self::new(
            (1..ks.len())
                .map(|s| w[ks[s - 1]..ks[s]].to_vec())
                .collect(),
        )
    }

    /// The minimal coset representative: blocks listed in increasing order.
    pub fn to_permutation(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// Every partition for `k`, ordered by the length of its coset representative.
    pub fn all(k: &[usize]) -> Result<Vec<Self>> {
        min_rep_permutations(k)?
            .iter()
            .map(|w| Self::from_permutation(k, w))
            .collect()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.k
    }

    pub fn m(&self) -> usize {
        self.k.len()
    }

    pub fn n(&self) -> usize {
        self.k.iter().sum()
    }

    /// `I_s`, 1-based.
    pub fn block(&self, s: usize) -> &[usize] {
        &self.blocks[s - 1]
    }

    /// `k^{(s)}`.
    pub fn k_partial(&self, s: usize) -> usize {
        self.k[..s].iter().sum()
    }

    /// `i^{(s)}_1 < ... < i^{(s)}_{k^{(s)}}`, the sorted union of the first `s` blocks.
    pub fn union(&self, s: usize) -> Vec<usize> {
        let mut u: Vec<usize> = self.blocks[..s].iter().flatten().copied().collect();
        u.sort_unstable();
        u
    }

    /// The block containing `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&i))
            .expect("i in 1..=n")
            + 1
    }

    /// `j(I, s, a)`: the block containing `i^{(s)}_a`.
    pub fn j(&self, s: usize, a: usize) -> usize {
        self.block_of(self.union(s)[a - 1])
    }

    /// `p_{I,j}(i) = |I_j ∩ {1..i-1}|`.
    pub fn p(&self, j: usize, i: usize) -> usize {
        self.blocks[j - 1].iter().filter(|&&x| x < i).count()
    }

    /// `s_i(I)`: exchanges `i` and `i+1`.
    pub fn swap(&self, i: usize) -> Self {
        let f = |x: usize| {
            if x == i {
                i + 1
            } else if x == i + 1 {
                i
            } else {
                x
            }
        };
        Self::new(
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&x| f(x)).collect())
                .collect(),
        )
        .expect("swapping labels keeps a partition")
    }
}

impl fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(
            f,
            "({})",
            parts
                .iter()
                .map(|p| format!("{{{p}}}"))
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// The partition attached to a coset representative of a type-A setup.
pub fn coset_to_partition(setup: &ParabolicSetup, w: ElemId) -> Result<BlockPartition> {
    let k = setup
        .blocks()
        .ok_or_else(|| Error::Config("partitions need a type A setup".into()))?;
    if !setup.is_min_rep(w) {
        return Err(Error::Domain(format!("{} is not in W^P", setup.label(w))));
    }
    BlockPartition::from_permutation(k, &setup.group().permutation(w))
}

pub fn partition_to_coset(setup: &ParabolicSetup, i: &BlockPartition) -> Result<ElemId> {
    if setup.blocks() != Some(i.sizes()) {
        return Err(Error::Domain(format!(
            "{i} does not match the setup's blocks"
        )));
    }
    setup
        .group()
        .from_permutation(&i.to_permutation())
        .ok_or_else(|| Error::Domain(format!("{i} has no coset representative")))
}
