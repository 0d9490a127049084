use std::collections::{HashMap, VecDeque};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::roots::RootSystem;
use crate::error::{Error, Result};

/// Largest group the enumerating constructor accepts.
pub const MAX_GROUP_ORDER: usize = 1000;

/// Index of an element inside its [`WeylGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElemId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BruhatRelation {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// A Weyl group element stored as its action matrix on the ambient weight lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    matrix: Vec<i64>,
    length: usize,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// One reduced word (1-based simple reflection indices, `w = s_{j_1} ... s_{j_l}`).
    pub fn word(&self) -> &[usize] {
        &self.word
    }
}

/// Fully enumerated finite Weyl group with multiplication tables and Bruhat order.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    dim: usize,
    rank: usize,
    elements: Vec<WeylElement>,
    lookup: HashMap<Vec<i64>, ElemId>,
    left: Vec<Vec<ElemId>>,
    right: Vec<Vec<ElemId>>,
    below: Vec<Vec<u64>>,
}

fn mat_mul(a: &[i64], b: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0; d * d];
    for r in 0..d {
        for k in 0..d {
            let x = a[r * d + k];
            if x == 0 {
                continue;
            }
            for c in 0..d {
                out[r * d + c] += x * b[k * d + c];
            }
        }
    }
    out
}

fn identity_matrix(d: usize) -> Vec<i64> {
    let mut m = vec![0; d * d];
    for i in 0..d {
        m[i * d + i] = 1;
    }
    m
}

impl WeylGroup {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let d = rs.dim();
        let rank = rs.rank();
        let simple: Vec<Vec<i64>> = (1..=rank)
            .map(|i| rs.reflection_matrix(rs.simple_root(i)))
            .collect();

        let mut elements = vec![WeylElement {
            matrix: identity_matrix(d),
            length: 0,
            word: vec![],
        }];
        let mut lookup = HashMap::new();
        lookup.insert(elements[0].matrix.clone(), ElemId(0));
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for (i, s) in simple.iter().enumerate() {
                let m = mat_mul(s, &elements[idx].matrix, d);
                if lookup.contains_key(&m) {
                    continue;
                }
                if elements.len() >= MAX_GROUP_ORDER {
                    return Err(Error::Config(format!(
                        "Weyl group of {}{} exceeds {MAX_GROUP_ORDER} elements",
                        rs.family(),
                        rank
                    )));
                }
                let mut word = vec![i + 1];
                word.extend_from_slice(&elements[idx].word);
                let id = ElemId(elements.len());
                lookup.insert(m.clone(), id);
                elements.push(WeylElement {
                    matrix: m,
                    length: elements[idx].length + 1,
                    word,
                });
                queue.push_back(id.0);
            }
        }

        let left = elements
            .iter()
            .map(|e| {
                simple
                    .iter()
                    .map(|s| lookup[&mat_mul(s, &e.matrix, d)])
                    .collect()
            })
            .collect();
        let right: Vec<Vec<ElemId>> = elements
            .iter()
            .map(|e| {
                simple
                    .iter()
                    .map(|s| lookup[&mat_mul(&e.matrix, s, d)])
                    .collect()
            })
            .collect();

        let words = elements.len().div_ceil(64);
        let below = elements
            .iter()
            .map(|e| {
                // products of all subwords of a reduced word form the lower Bruhat interval
                let mut set = vec![0u64; words];
                set[0] |= 1;
                for &j in &e.word {
                    let current: Vec<usize> = (0..elements.len())
                        .filter(|u| set[u / 64] >> (u % 64) & 1 == 1)
                        .collect();
                    for u in current {
                        let x = right[u][j - 1].0;
                        set[x / 64] |= 1 << (x % 64);
                    }
                }
                set
            })
            .collect();

        Ok(WeylGroup {
            dim: d,
            rank,
            elements,
            lookup,
            left,
            right,
            below,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> ElemId {
        ElemId(0)
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.elements.len()).map(ElemId)
    }

    pub fn element(&self, w: ElemId) -> &WeylElement {
        &self.elements[w.0]
    }

    pub fn length(&self, w: ElemId) -> usize {
        self.elements[w.0].length
    }

    pub fn word(&self, w: ElemId) -> &[usize] {
        &self.elements[w.0].word
    }

    pub fn matrix(&self, w: ElemId) -> &[i64] {
        &self.elements[w.0].matrix
    }

    pub fn find(&self, matrix: &[i64]) -> Option<ElemId> {
        self.lookup.get(matrix).copied()
    }

    /// `s_i w`
    pub fn simple_left(&self, i: usize, w: ElemId) -> ElemId {
        self.left[w.0][i - 1]
    }

    /// `w s_i`
    pub fn simple_right(&self, w: ElemId, i: usize) -> ElemId {
        self.right[w.0][i - 1]
    }

    pub fn simple(&self, i: usize) -> ElemId {
        self.simple_left(i, self.identity())
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.word(b)
            .iter()
            .fold(a, |acc, &j| self.simple_right(acc, j))
    }

    pub fn inverse(&self, a: ElemId) -> ElemId {
        self.word(a)
            .iter()
            .fold(self.identity(), |acc, &j| self.simple_left(j, acc))
    }

    /// Product of an arbitrary (not necessarily reduced) word.
    pub fn from_word(&self, word: &[usize]) -> Result<ElemId> {
        let mut acc = self.identity();
        for &j in word {
            if j == 0 || j > self.rank {
                return Err(Error::Domain(format!(
                    "letter {j} outside 1..={}",
                    self.rank
                )));
            }
            acc = self.simple_right(acc, j);
        }
        Ok(acc)
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.from_word(word)
            .map(|w| self.length(w) == word.len())
            .unwrap_or(false)
    }

    pub fn left_descents(&self, w: ElemId) -> Vec<usize> {
        (1..=self.rank)
            .filter(|&i| self.length(self.simple_left(i, w)) < self.length(w))
            .collect()
    }

    /// Bruhat order `u <= w`.
    pub fn leq(&self, u: ElemId, w: ElemId) -> bool {
        self.below[w.0][u.0 / 64] >> (u.0 % 64) & 1 == 1
    }

    pub fn compare(&self, u: ElemId, w: ElemId) -> BruhatRelation {
        if u == w {
            BruhatRelation::Equal
        } else if self.leq(u, w) {
            BruhatRelation::Less
        } else if self.leq(w, u) {
            BruhatRelation::Greater
        } else {
            BruhatRelation::Incomparable
        }
    }

    pub fn act(&self, w: ElemId, v: &[i64]) -> Vec<i64> {
        let d = self.dim;
        let m = self.matrix(w);
        (0..d)
            .map(|r| (0..d).map(|c| m[r * d + c] * v[c]).sum())
            .collect()
    }

    pub fn act_rational(&self, w: ElemId, v: &[Rational64]) -> Vec<Rational64> {
        let d = self.dim;
        let m = self.matrix(w);
        (0..d)
            .map(|r| {
                (0..d).fold(Rational64::from_integer(0), |acc, c| {
                    acc + Rational64::from_integer(m[r * d + c]) * v[c]
                })
            })
            .collect()
    }

    /// The reflection `s_beta` for a root `beta`.
    pub fn reflection(&self, rs: &RootSystem, beta: &[i64]) -> ElemId {
        self.find(&rs.reflection_matrix(beta))
            .expect("reflections lie in the Weyl group")
    }

    /// One-line notation `w(1) ... w(n)` of a type-A element (1-based).
    pub fn permutation(&self, w: ElemId) -> Vec<usize> {
        let d = self.dim;
        let m = self.matrix(w);
        (0..d)
            .map(|c| {
                (0..d)
                    .find(|&r| m[r * d + c] == 1)
                    .map(|r| r + 1)
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Inverse of [`WeylGroup::permutation`].
    pub fn from_permutation(&self, perm: &[usize]) -> Option<ElemId> {
        let d = self.dim;
        if perm.len() != d {
            return None;
        }
        let mut m = vec![0; d * d];
        for (c, &r) in perm.iter().enumerate() {
            if r == 0 || r > d {
                return None;
            }
            m[(r - 1) * d + c] = 1;
        }
        self.find(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::roots::Family;

    fn group(family: Family, rank: usize) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::new(family, rank).unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        (rs, g)
    }

    #[test]
    fn orders() {
        assert_eq!(group(Family::A, 1).1.order(), 2);
        assert_eq!(group(Family::A, 2).1.order(), 6);
        assert_eq!(group(Family::A, 3).1.order(), 24);
        assert_eq!(group(Family::C, 2).1.order(), 8);
        assert_eq!(group(Family::C, 3).1.order(), 48);
        assert_eq!(group(Family::C, 4).1.order(), 384);
    }

    #[test]
    fn length_equals_inversion_count_and_word_length() {
        for (family, rank) in [(Family::A, 3), (Family::C, 3)] {
            let (rs, g) = group(family, rank);
            for w in g.ids() {
                let inversions = rs
                    .positive_roots()
                    .iter()
                    .filter(|b| rs.is_negative_root(&g.act(w, b)))
                    .count();
                assert_eq!(g.length(w), inversions);
                assert_eq!(g.word(w).len(), g.length(w));
                assert_eq!(g.from_word(g.word(w)).unwrap(), w);
            }
        }
    }

    #[test]
    fn subword_comparison_in_a2() {
        let (_, g) = group(Family::A, 2);
        let s1 = g.simple(1);
        let w0 = g.from_word(&[1, 2, 1]).unwrap();
        assert_eq!(g.compare(s1, w0), BruhatRelation::Less);
        assert_eq!(g.compare(w0, s1), BruhatRelation::Greater);
        assert_eq!(g.compare(s1, g.simple(2)), BruhatRelation::Incomparable);
        assert_eq!(g.compare(w0, w0), BruhatRelation::Equal);
    }

    #[test]
    fn bruhat_is_a_partial_order() {
        for (family, rank) in [(Family::A, 3), (Family::C, 2)] {
            let (_, g) = group(family, rank);
            let ids: Vec<ElemId> = g.ids().collect();
            for &a in &ids {
                assert!(g.leq(a, a));
                for &b in &ids {
                    if a != b && g.leq(a, b) {
                        assert!(!g.leq(b, a), "antisymmetry");
                        assert!(g.length(a) < g.length(b));
                    }
                    for &c in &ids {
                        if g.leq(a, b) && g.leq(b, c) {
                            assert!(g.leq(a, c), "transitivity");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_and_permutations() {
        let (_, g) = group(Family::A, 2);
        for w in g.ids() {
            assert_eq!(g.mul(w, g.inverse(w)), g.identity());
            let p = g.permutation(w);
            assert_eq!(g.from_permutation(&p), Some(w));
        }
        // s_1 s_2 is the permutation 231
        assert_eq!(g.permutation(g.from_word(&[1, 2]).unwrap()), vec![2, 3, 1]);
    }

    #[test]
    fn non_reduced_words() {
        let (_, g) = group(Family::A, 2);
        assert!(g.is_reduced(&[1, 2, 1]));
        assert!(!g.is_reduced(&[1, 1]));
        assert!(g.from_word(&[3]).is_err());
    }
}
