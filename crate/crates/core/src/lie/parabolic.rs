use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Rational64;

use super::roots::{dot, Family, RootSystem};
use super::weyl::{ElemId, WeylGroup};
use super::words::{GammaEntry, ReducedWord};
use crate::error::{Error, Result};

type Weight = Vec<i64>;

/// A generator of the W_P-invariant weights used as a dynamical variable.
///
/// The variable attached to generator `k` is `h^{sign * c_k}` where `lambda = sum_k c_k weight_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicalGenerator {
    pub weight: Vec<i64>,
    pub sign: i64,
}

/// Root system, Weyl group and a standard parabolic subgroup given by a set of simple roots.
#[derive(Debug, Clone)]
pub struct ParabolicSetup {
    rs: Arc<RootSystem>,
    group: Arc<WeylGroup>,
    levi: Vec<usize>,
    levi_group: Vec<ElemId>,
    min_reps: Vec<ElemId>,
    rep_index: HashMap<ElemId, usize>,
    rho: Vec<Rational64>,
    rho_levi: Vec<Rational64>,
    rho_bar: Vec<i64>,
    dynamical: Vec<DynamicalGenerator>,
    blocks: Option<Vec<usize>>,
}

/// Splits `1..=n` into the maximal runs joined by Levi simple roots.
fn blocks_from_levi(n: usize, levi: &[usize]) -> Vec<usize> {
    let mut blocks = vec![1];
    for i in 1..n {
        if levi.contains(&i) {
            *blocks.last_mut().unwrap() += 1;
        } else {
            blocks.push(1);
        }
    }
    blocks
}

/// Simple-root indices of the Levi of the type-A parabolic with block sizes `k`.
pub fn levi_from_blocks(blocks: &[usize]) -> Result<Vec<usize>> {
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(Error::Config(format!("invalid block sizes {blocks:?}")));
    }
    let mut levi = Vec::new();
    let mut start = 1;
    for &k in blocks {
        levi.extend(start..start + k - 1);
        start += k;
    }
    Ok(levi)
}

impl ParabolicSetup {
    pub fn new(family: Family, rank: usize, levi: &[usize]) -> Result<Self> {
        let rs = Arc::new(RootSystem::new(family, rank)?);
        let group = Arc::new(WeylGroup::new(&rs)?);
        Self::from_parts(rs, group, levi)
    }

    /// Type A parabolic `P` of `GL_n` with Levi blocks `k = (k_1, ..., k_m)`.
    pub fn type_a(blocks: &[usize]) -> Result<Self> {
        let n: usize = blocks.iter().sum();
        if n < 2 {
            return Err(Error::Config("type A needs n >= 2".into()));
        }
        Self::new(Family::A, n - 1, &levi_from_blocks(blocks)?)
    }

    /// Another parabolic of the same root system, sharing the enumerated group.
    pub fn with_levi(&self, levi: &[usize]) -> Result<Self> {
        Self::from_parts(self.rs.clone(), self.group.clone(), levi)
    }

    pub fn borel(&self) -> Self {
        self.with_levi(&[])
            .expect("the Borel subgroup is always valid")
    }

    fn from_parts(rs: Arc<RootSystem>, group: Arc<WeylGroup>, levi: &[usize]) -> Result<Self> {
        let mut levi = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        if let Some(&bad) = levi.iter().find(|&&i| i == 0 || i > rs.rank()) {
            return Err(Error::Config(format!(
                "simple root index {bad} outside 1..={}",
                rs.rank()
            )));
        }
        let levi_group: Vec<ElemId> = group
            .ids()
            .filter(|&w| group.word(w).iter().all(|j| levi.contains(j)))
            .collect();
        let min_reps: Vec<ElemId> = group
            .ids()
            .filter(|&w| {
                levi.iter()
                    .all(|&i| group.length(group.simple_right(w, i)) > group.length(w))
            })
            .collect();
        let rep_index = min_reps.iter().enumerate().map(|(k, &w)| (w, k)).collect();

        let d = rs.dim();
        let half_sum = |roots: &mut dyn Iterator<Item = &Vec<i64>>| {
            let mut acc = vec![Rational64::from_integer(0); d];
            for r in roots {
                for (a, x) in acc.iter_mut().zip(r) {
                    *a += Rational64::new(*x, 2);
                }
            }
            acc
        };
        let rho = half_sum(&mut rs.positive_roots().iter());
        let rho_levi = half_sum(
            &mut rs
                .positive_roots()
                .iter()
                .filter(|b| rs.support(b).iter().all(|i| levi.contains(i))),
        );
        let mut rho_bar = vec![0; d];
        for &i in &levi {
            for (a, x) in rho_bar.iter_mut().zip(rs.fundamental_weight(i)) {
                *a += x;
            }
        }

        let (dynamical, blocks) = match rs.family() {
            Family::A => {
                let blocks = blocks_from_levi(d, &levi);
                let mut gens = Vec::new();
                let mut start = 0;
                for &k in &blocks {
                    let weight = (0..d)
                        .map(|j| i64::from(j >= start && j < start + k))
                        .collect();
                    gens.push(DynamicalGenerator { weight, sign: -1 });
                    start += k;
                }
                (gens, Some(blocks))
            }
            Family::C => {
                let gens = (1..=rs.rank())
                    .filter(|i| !levi.contains(i))
                    .map(|i| DynamicalGenerator {
                        weight: rs.fundamental_weight(i).to_vec(),
                        sign: 1,
                    })
                    .collect();
                (gens, None)
            }
        };

        Ok(ParabolicSetup {
            rs,
            group,
            levi,
            levi_group,
            min_reps,
            rep_index,
            rho,
            rho_levi,
            rho_bar,
            dynamical,
            blocks,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    pub fn is_borel(&self) -> bool {
        self.levi.is_empty()
    }

    /// `W_P`
    pub fn levi_group(&self) -> &[ElemId] {
        &self.levi_group
    }

    /// `W^P`, ordered by length.
    pub fn min_reps(&self) -> &[ElemId] {
        &self.min_reps
    }

    pub fn is_min_rep(&self, w: ElemId) -> bool {
        self.rep_index.contains_key(&w)
    }

    /// Position of `w` in [`ParabolicSetup::min_reps`].
    pub fn rep_position(&self, w: ElemId) -> Option<usize> {
        self.rep_index.get(&w).copied()
    }

    /// Minimal-length representative of the coset `u W_P`.
    pub fn min_rep(&self, u: ElemId) -> ElemId {
        let g = &self.group;
        let mut u = u;
        'outer: loop {
            for &i in &self.levi {
                let x = g.simple_right(u, i);
                if g.length(x) < g.length(u) {
                    u = x;
                    continue 'outer;
                }
            }
            return u;
        }
    }

    pub fn rho(&self) -> &[Rational64] {
        &self.rho
    }

    pub fn rho_levi(&self) -> &[Rational64] {
        &self.rho_levi
    }

    /// The weight pairing to 1 with Levi simple coroots and 0 with the others.
    ///
    /// In type A this is normalised so that its last coordinate is 0.
    pub fn rho_bar(&self) -> &[i64] {
        &self.rho_bar
    }

    pub fn dynamical_basis(&self) -> &[DynamicalGenerator] {
        &self.dynamical
    }

    /// Block sizes for type A setups.
    pub fn blocks(&self) -> Option<&[usize]> {
        self.blocks.as_deref()
    }

    fn require_min_rep(&self, w: ElemId) -> Result<()> {
        if self.is_min_rep(w) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{} is not in W^P", self.label(w))))
        }
    }

    /// All `v -> w` in `W^P` with the positive root `beta` such that `v = s_beta w`.
    pub fn covers(&self, w: ElemId) -> Result<Vec<(ElemId, Vec<i64>)>> {
        self.require_min_rep(w)?;
        let g = &self.group;
        let mut out = Vec::new();
        for &v in &self.min_reps {
            if g.length(v) + 1 != g.length(w) || !g.leq(v, w) {
                continue;
            }
            let betas: Vec<&Vec<i64>> = self
                .rs
                .positive_roots()
                .iter()
                .filter(|b| g.mul(g.reflection(&self.rs, b), w) == v)
                .collect();
            assert_eq!(betas.len(), 1, "cover root must be unique");
            out.push((v, betas[0].clone()));
        }
        Ok(out)
    }

    /// Divisor multiplicity `m^P_{w,v} = 1 - <w rho_bar, beta^vee>` for a cover `v -> w`.
    pub fn multiplicity(&self, w: ElemId, v: ElemId) -> Result<i64> {
        let (_, beta) = self
            .covers(w)?
            .into_iter()
            .find(|(u, _)| *u == v)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "{} is not covered by {}",
                    self.label(v),
                    self.label(w)
                ))
            })?;
        let w_rho = self.group.act(w, &self.rho_bar);
        Ok(1 - dot(&w_rho, &self.rs.coroot(&beta)))
    }

    /// Boundary coefficients `1 + <rho_bar, gamma_i^vee>` along a reduced word.
    pub fn word_multiplicities(&self, word: &ReducedWord) -> Vec<i64> {
        word.gamma_data(&self.rs, &self.group)
            .iter()
            .map(|g: &GammaEntry| 1 + dot(&self.rho_bar, &g.gamma_coroot))
            .collect()
    }

    /// Same coefficients via `1 - <w rho_bar, beta_i^vee>`.
    pub fn word_multiplicities_via_beta(&self, word: &ReducedWord) -> Vec<i64> {
        let w = word.element(&self.group);
        let w_rho = self.group.act(w, &self.rho_bar);
        word.gamma_data(&self.rs, &self.group)
            .iter()
            .map(|g| 1 - dot(&w_rho, &g.beta_coroot))
            .collect()
    }

    fn is_levi_root(&self, beta: &[i64]) -> bool {
        self.rs.support(beta).iter().all(|i| self.levi.contains(i))
    }

    /// Weights of `T_w X^P_w` and of `T_w (G/P)`.
    pub fn tangent_weights(&self, w: ElemId) -> Result<(Vec<Weight>, Vec<Weight>)> {
        self.require_min_rep(w)?;
        let g = &self.group;
        let w_inv = g.inverse(w);
        let cell = self
            .rs
            .positive_roots()
            .iter()
            .filter(|b| self.rs.is_negative_root(&g.act(w_inv, b)))
            .cloned()
            .collect();
        let ambient = self
            .rs
            .positive_roots()
            .iter()
            .filter(|b| !self.is_levi_root(b))
            .map(|b| g.act(w, &b.iter().map(|x| -x).collect::<Vec<_>>()))
            .collect();
        Ok((cell, ambient))
    }

    /// Human-readable name of a group element: one-line notation in type A, a word otherwise.
    pub fn label(&self, w: ElemId) -> String {
        match self.rs.family() {
            Family::A => self
                .group
                .permutation(w)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(if self.rs.dim() > 9 { "," } else { "" }),
            Family::C => {
                let word = self.group.word(w);
                if word.is_empty() {
                    "1".to_string()
                } else {
                    word.iter().map(|j| format!("s{j}")).collect()
                }
            }
        }
    }

    /// Finds a min-rep element by its [`ParabolicSetup::label`].
    pub fn find_by_label(&self, label: &str) -> Option<ElemId> {
        self.group.ids().find(|&w| self.label(w) == label)
    }
}
