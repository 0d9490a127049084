use crate::error::{Error, Result};
use crate::expr::{Expr, Monomial};
use crate::lie::{ElemId, ParabolicSetup, ReducedWord};

use super::lambda::LambdaSymbol;

/// Restriction of the Bott-Samelson class to the fixed point given by the kept letters.
///
/// `lambda` enters the second arguments unchanged; callers targeting `X^P` pass `lambda - rho_bar`.
pub fn bsdh_restriction(
    setup: &ParabolicSetup,
    word: &ReducedWord,
    kept: &[bool],
    lambda: &LambdaSymbol,
) -> Result<Expr> {
    if kept.len() != word.len() {
        return Err(Error::Domain(format!(
            "mask of length {} for a word of length {}",
            kept.len(),
            word.len()
        )));
    }
    let g = setup.group();
    let rs = setup.root_system();
    let gamma = word.gamma_data(rs, g);
    let mut prefix = g.identity();
    let mut e = Expr::one();
    for (i, &j) in word.letters().iter().enumerate() {
        if kept[i] {
            prefix = g.simple_right(prefix, j);
        }
        let root: Vec<i64> = g
            .act(prefix, rs.simple_root(j))
            .iter()
            .map(|x| -x)
            .collect();
        let psi = if kept[i] {
            Monomial::h()
        } else {
            lambda.pairing(&gamma[i].gamma_coroot)
        };
        e = e.mul(&Expr::delta(Monomial::from_z_exponents(&root), psi));
    }
    Ok(e)
}

/// Summands of the localization formula: kept positions (1-based) and their restriction.
pub fn localization_terms(
    setup: &ParabolicSetup,
    w: ElemId,
    v: ElemId,
    lambda: &LambdaSymbol,
) -> Result<Vec<(Vec<usize>, Expr)>> {
    for x in [w, v] {
        if !setup.is_min_rep(x) {
            return Err(Error::Domain(format!("{} is not in W^P", setup.label(x))));
        }
    }
    let g = setup.group();
    let word = ReducedWord::of(g, w);
    let l = word.len();
    if l > 24 {
        return Err(Error::Config(format!(
            "word length {l} too long for subword enumeration"
        )));
    }
    let shifted = lambda.shifted(setup.rho_bar());
    let mut out = Vec::new();
    for mask in 0u32..(1 << l) {
        let kept: Vec<bool> = (0..l).map(|i| mask & (1 << i) != 0).collect();
        let mut u = g.identity();
        for (i, &j) in word.letters().iter().enumerate() {
            if kept[i] {
                u = g.simple_right(u, j);
            }
        }
        if setup.min_rep(u) != v {
            continue;
        }
        let positions = (0..l).filter(|&i| kept[i]).map(|i| i + 1).collect();
        out.push((positions, bsdh_restriction(setup, &word, &kept, &shifted)?));
    }
    Ok(out)
}

/// `E(X^P_w, lambda)_v` as the sum over subwords of a reduced word of `w` landing in `v W_P`.
pub fn class_localization(
    setup: &ParabolicSetup,
    w: ElemId,
    v: ElemId,
    lambda: &LambdaSymbol,
) -> Result<Expr> {
    Ok(localization_terms(setup, w, v, lambda)?
        .into_iter()
        .fold(Expr::zero(), |acc, (_, e)| acc.add(&e)))
}
