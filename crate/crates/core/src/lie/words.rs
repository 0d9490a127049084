use super::roots::RootSystem;
use super::weyl::{ElemId, WeylGroup};
use crate::error::{Error, Result};

/// A reduced decomposition `w = s_{j_1} ... s_{j_l}` (1-based letters).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord(Vec<usize>);

/// Per-position root data of a reduced word.
///
/// `gamma_i = s_{j_l} ... s_{j_{i+1}} alpha_{j_i}` and `beta_i = s_{j_1} ... s_{j_{i-1}} alpha_{j_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaEntry {
    pub gamma: Vec<i64>,
    pub gamma_coroot: Vec<i64>,
    pub beta: Vec<i64>,
    pub beta_coroot: Vec<i64>,
}

impl ReducedWord {
    pub fn new(group: &WeylGroup, letters: Vec<usize>) -> Result<Self> {
        if !group.is_reduced(&letters) {
            return Err(Error::Domain(format!("word {letters:?} is not reduced")));
        }
        Ok(ReducedWord(letters))
    }

    /// The stored reduced word of `w`.
    pub fn of(group: &WeylGroup, w: ElemId) -> Self {
        ReducedWord(group.word(w).to_vec())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn element(&self, group: &WeylGroup) -> ElemId {
        group.from_word(&self.0).expect("validated on construction")
    }

    pub fn gamma_data(&self, rs: &RootSystem, group: &WeylGroup) -> Vec<GammaEntry> {
        let l = self.0.len();
        (0..l)
            .map(|i| {
                let alpha = rs.simple_root(self.0[i]);
                let tail = group.from_word(&self.0[i + 1..]).unwrap();
                let tail_inv = group.inverse(tail);
                let gamma = group.act(tail_inv, alpha);
                let head = group.from_word(&self.0[..i]).unwrap();
                let beta = group.act(head, alpha);
                GammaEntry {
                    gamma_coroot: rs.coroot(&gamma),
                    gamma,
                    beta_coroot: rs.coroot(&beta),
                    beta,
                }
            })
            .collect()
    }
}

/// Validating wrapper around [`ReducedWord::gamma_data`].
pub fn gamma_data(
    rs: &RootSystem,
    group: &WeylGroup,
    letters: &[usize],
) -> Result<Vec<GammaEntry>> {
    Ok(ReducedWord::new(group, letters.to_vec())?.gamma_data(rs, group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::parabolic::ParabolicSetup;
    use crate::lie::roots::Family;

    #[test]
    fn single_letter() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let data = gamma_data(&rs, &g, &[2]).unwrap();
        assert_eq!(data[0].gamma, rs.simple_root(2));
        assert_eq!(data[0].beta, rs.simple_root(2));
    }

    #[test]
    fn a2_word_12() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let data = gamma_data(&rs, &g, &[1, 2]).unwrap();
        // gamma_1 = s_2 alpha_1 = alpha_1 + alpha_2, gamma_2 = alpha_2
        assert_eq!(data[0].gamma, vec![1, 0, -1]);
        assert_eq!(data[1].gamma, vec![0, 1, -1]);
        // beta_2 = s_1 alpha_2
        assert_eq!(data[1].beta, vec![1, 0, -1]);
    }

    #[test]
    fn rejects_non_reduced() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        assert!(matches!(
            gamma_data(&rs, &g, &[1, 1]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn borel_word_coefficients_are_one() {
        let p = ParabolicSetup::new(Family::C, 2, &[]).unwrap();
        for w in p.group().ids() {
            let word = ReducedWord::of(p.group(), w);
            assert!(p.word_multiplicities(&word).iter().all(|&m| m == 1));
        }
    }

    /// Every reduced word of every `w in W^P`: both coefficient formulas agree, all roots are
    /// positive, and deleting a letter that lands on a cover reproduces the cover multiplicity.
    #[test]
    fn word_coefficients_match_cover_multiplicities() {
        for (f, r, levi) in [
            (Family::A, 2, vec![1]),
            (Family::A, 3, vec![1, 3]),
            (Family::A, 3, vec![2]),
            (Family::A, 3, vec![]),
            (Family::C, 2, vec![1]),
            (Family::C, 2, vec![2]),
        ] {
            let p = ParabolicSetup::new(f, r, &levi).unwrap();
            let g = p.group();
            let rs = p.root_system();
            for &w in p.min_reps() {
                for word in all_reduced_words(g, w) {
                    let rw = ReducedWord::new(g, word.clone()).unwrap();
                    let a = p.word_multiplicities(&rw);
                    assert_eq!(a, p.word_multiplicities_via_beta(&rw));
                    assert!(a.iter().all(|&m| m >= 1));
                    for (i, entry) in rw.gamma_data(rs, g).iter().enumerate() {
                        assert!(rs.is_positive_root(&entry.gamma));
                        assert!(rs.is_positive_root(&entry.beta));
                        let mut deleted = word.clone();
                        deleted.remove(i);
                        let v = g.from_word(&deleted).unwrap();
                        assert_eq!(g.mul(g.reflection(rs, &entry.beta), w), v);
                        if g.length(v) + 1 == g.length(w) && p.is_min_rep(v) {
                            assert_eq!(a[i], p.multiplicity(w, v).unwrap());
                        }
                    }
                }
            }
        }
    }

    fn all_reduced_words(g: &WeylGroup, w: crate::lie::weyl::ElemId) -> Vec<Vec<usize>> {
        if g.length(w) == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in g.left_descents(w) {
            for mut tail in all_reduced_words(g, g.simple_left(i, w)) {
                tail.insert(0, i);
                out.push(tail);
            }
        }
        out
    }
}
