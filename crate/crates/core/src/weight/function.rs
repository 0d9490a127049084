use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::expr::{Expr, Monomial, Term, Var};
use crate::schubert::type_a::{next_permutation, partial_sums};

use super::partition::BlockPartition;

/// Largest `n` accepted by [`weight_function`].
pub const MAX_N: usize = 5;

fn t(s: usize, a: usize) -> Var {
    Var::T(s as u32, a as u32)
}

/// `t^{(s)}_a`, with `t^{(m)}_a = z_a`.
fn slot(vars: &[Vec<Var>], m: usize, s: usize, a: usize) -> Monomial {
    if s == m {
        Monomial::z(a as u32)
    } else {
        Monomial::var(vars[s - 1][a - 1])
    }
}

/// `U_I` with the variable of slot `(s, a)` given by `vars[s-1][a-1]`.
fn u_term(i: &BlockPartition, vars: &[Vec<Var>]) -> Term {
    let m = i.m();
    let h = Monomial::h();
    let mut term = Term::one();
    for s in 1..m {
        let lower = i.union(s);
        let upper = i.union(s + 1);
        for (a0, &ia) in lower.iter().enumerate() {
            let a = a0 + 1;
            let ta = slot(vars, m, s, a);
            for (c0, &ic) in upper.iter().enumerate() {
                let x = slot(vars, m, s + 1, c0 + 1).div(&ta);
                if ic < ia {
                    term = term
                        .mul(&Term::theta(x.mul(&h), 1))
                        .mul(&Term::theta_prime(1))
                        .mul(&Term::theta(h.clone(), -1));
                } else if ic == ia {
                    let j = i.j(s, a);
                    let e = 1 + i.p(j, ia) as i64 - i.p(s + 1, ia) as i64;
                    let y = Monomial::powi(Var::H, e)
                        .mul(&Monomial::var(Var::Mu(s as u32 + 1)))
                        .div(&Monomial::var(Var::Mu(j as u32)));
                    term = term
                        .mul(&Term::theta(x.mul(&y), 1))
                        .mul(&Term::theta_prime(1))
                        .mul(&Term::theta(y, -1));
                } else {
                    term = term.mul(&Term::theta(x, 1));
                }
            }
            for b in a + 1..=lower.len() {
                let r = slot(vars, m, s, b).div(&ta);
                term = term
                    .mul(&Term::theta(r.mul(&h), 1))
                    .mul(&Term::theta(r, -1));
            }
        }
    }
    term
}

/// `1 / prod_{s<m} prod_{i,j} theta(h t^{(s)}_j / t^{(s)}_i)`, diagonal included.
fn prefactor(k: &[usize]) -> Term {
    let ks = partial_sums(k);
    let mut term = Term::one();
    for (s, &size) in ks.iter().enumerate().take(k.len()).skip(1) {
        for a in 1..=size {
            for b in 1..=size {
                let arg = Monomial::h()
                    .mul(&Monomial::var(t(s, b)))
                    .div(&Monomial::var(t(s, a)));
                term = term.mul(&Term::theta(arg, -1));
            }
        }
    }
    term
}

/// The elliptic weight function `W_I` in `t^{(s)}_a`, `z`, `h` and `mu`.
pub fn weight_function(i: &BlockPartition) -> Result<Expr> {
    let n = i.n();
    if n > MAX_N {
        return Err(Error::Config(format!(
            "weight functions are limited to n <= {MAX_N}, got {n}"
        )));
    }
    let k = i.sizes();
    let ks = partial_sums(k);
    let m = k.len();
    let mut perms: Vec<Vec<usize>> = (1..m).map(|s| (1..=ks[s]).collect()).collect();
    let mut out = Expr::zero();
    loop {
        let vars: Vec<Vec<Var>> = perms
            .iter()
            .enumerate()
            .map(|(s0, p)| p.iter().map(|&a| t(s0 + 1, a)).collect())
            .collect();
        out.add_term(u_term(i, &vars));
        // odometer over the product of symmetric groups
        let mut s = 0;
        loop {
            if s == perms.len() {
                return Ok(out.mul_term(&prefactor(k)));
            }
            if next_permutation(&mut perms[s]) {
                break;
            }
            perms[s].sort_unstable();
            s += 1;
        }
    }
}

/// `W(z_{J})`: `t^{(s)}_a -> z_{i^{(s)}_a(J)}`.
pub fn restrict(e: &Expr, j: &BlockPartition) -> Expr {
    let map: BTreeMap<Var, Monomial> = (1..j.m())
        .flat_map(|s| {
            j.union(s)
                .into_iter()
                .enumerate()
                .map(move |(a0, x)| (t(s, a0 + 1), Monomial::z(x as u32)))
        })
        .collect();
    e.substitute(&map)
}

/// `mu_s -> y_{k^{(s-1)}+1} h^{s - k^{(s-1)}}`; the expression must be free of `t`.
pub fn mu_substitution(e: &Expr, k: &[usize]) -> Result<Expr> {
    if let Some(v) = e.vars().into_iter().find(|v| matches!(v, Var::T(..))) {
        return Err(Error::Domain(format!(
            "{v} is still present; restrict before substituting"
        )));
    }
    let ks = partial_sums(k);
    let map: BTreeMap<Var, Monomial> = (1..=k.len())
        .map(|s| {
            let y = Monomial::var(Var::Y(ks[s - 1] as u32 + 1));
            (
                Var::Mu(s as u32),
                y.mul(&Monomial::powi(Var::H, s as i64 - ks[s - 1] as i64)),
            )
        })
        .collect();
    Ok(e.substitute(&map))
}

/// `e_J = prod_{a<b} prod_{i in J_a, j in J_b} theta(z_j / z_i)`.
pub fn euler_factor(j: &BlockPartition) -> Term {
    let mut term = Term::one();
    for a in 1..=j.m() {
        for b in a + 1..=j.m() {
            for &x in j.block(a) {
                for &y in j.block(b) {
                    term = term.mul(&Term::theta(
                        Monomial::z(y as u32).div(&Monomial::z(x as u32)),
                        1,
                    ));
                }
            }
        }
    }
    term
}

/// Exponent `K` of `N_k = (theta'(1) / theta(h))^K`.
pub fn normalization_exponent(k: &[usize]) -> i32 {
    let ks = partial_sums(k);
    (1..k.len()).map(|s| (ks[s] * (ks[s] + 1) / 2) as i32).sum()
}

/// `N_k = (theta'(1) / theta(h))^K`.
pub fn normalization(k: &[usize]) -> Term {
    let e = normalization_exponent(k);
    Term::theta_prime(e).mul(&Term::theta(Monomial::h(), -e))
}

pub(crate) fn one_over(t: &Term) -> Term {
    t.inverse().expect("product of theta factors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{numeric_equal, SamplingOptions};
    use crate::theta::EvalConfig;

    fn p(s: &str) -> Expr {
        s.parse().unwrap()
    }

    #[test]
    fn two_point_weight_functions() {
        let a = BlockPartition::new(vec![vec![1], vec![2]]).unwrap();
        let b = BlockPartition::new(vec![vec![2], vec![1]]).unwrap();
        assert_eq!(
            weight_function(&a).unwrap(),
            p("theta(h)^-1*theta(h*mu2/mu1)^-1*theta(z1*h*mu2/(t.1.1*mu1))*theta(z2/t.1.1)*thp")
        );
        assert_eq!(
            weight_function(&b).unwrap(),
            p("theta(h)^-2*theta(mu2/mu1)^-1*theta(z1*h/t.1.1)*theta(z2*mu2/(t.1.1*mu1))*thp^2")
        );
    }

    #[test]
    fn symmetrizer_size() {
        let i = BlockPartition::initial(&[2, 1]).unwrap();
        let w = weight_function(&i).unwrap();
        assert!(w.len() <= 2 && !w.is_zero());
        let w = weight_function(&BlockPartition::initial(&[1, 1, 1]).unwrap()).unwrap();
        assert!(w.len() <= 2 && !w.is_zero());
    }

    #[test]
    fn symmetric_in_each_level() {
        let cfg = EvalConfig::default();
        let opts = SamplingOptions {
            samples: 5,
            ..Default::default()
        };
        for k in [vec![2, 1], vec![2, 2], vec![1, 2, 1]] {
            for i in BlockPartition::all(&k).unwrap().into_iter().take(4) {
                let w = weight_function(&i).unwrap();
                let s = k.len() as u32 - 1;
                let swapped = w.substitute(&BTreeMap::from([
                    (Var::T(s, 1), Monomial::var(Var::T(s, 2))),
                    (Var::T(s, 2), Monomial::var(Var::T(s, 1))),
                ]));
                assert!(
                    numeric_equal(&w, &swapped, &cfg, &opts).unwrap().equal,
                    "{i}"
                );
            }
        }
    }

    #[test]
    fn restriction_at_initial_partition_is_normalized() {
        let cfg = EvalConfig::default();
        let opts = SamplingOptions {
            samples: 5,
            ..Default::default()
        };
        for k in [
            vec![1, 1],
            vec![2, 1],
            vec![1, 2],
            vec![2, 2],
            vec![1, 1, 1],
            vec![1, 2, 1],
        ] {
            let i = BlockPartition::initial(&k).unwrap();
            let r = restrict(&weight_function(&i).unwrap(), &i);
            let expected = Expr::from_term(euler_factor(&i).mul(&normalization(&k)));
            let c = numeric_equal(&r, &expected, &cfg, &opts).unwrap();
            assert!(c.equal, "{k:?} {c:?}");
        }
    }

    #[test]
    fn size_limit_and_order_of_operations() {
        let i = BlockPartition::initial(&[3, 3]).unwrap();
        assert!(matches!(weight_function(&i), Err(Error::Config(_))));
        let i = BlockPartition::initial(&[1, 1]).unwrap();
        let w = weight_function(&i).unwrap();
        assert!(mu_substitution(&w, &[1, 1]).is_err());
        assert!(mu_substitution(&restrict(&w, &i), &[1, 1]).is_ok());
    }

    #[test]
    fn euler_factor_of_two_blocks() {
        let j = BlockPartition::new(vec![vec![2], vec![1, 3]]).unwrap();
        assert_eq!(
            Expr::from_term(euler_factor(&j)),
            p("theta(z1/z2)*theta(z3/z2)")
        );
        assert_eq!(normalization_exponent(&[2, 2]), 3);
        assert_eq!(normalization_exponent(&[1, 1, 1]), 4);
        assert_eq!(
            one_over(&normalization(&[1, 1])).mul(&normalization(&[1, 1])),
            Term::one()
        );
    }
}
