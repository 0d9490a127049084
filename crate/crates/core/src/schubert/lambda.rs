use num_rational::Rational64;

use crate::expr::{Monomial, Var};
use crate::lie::roots::{dot, dot_rational};
use crate::lie::{DynamicalGenerator, ParabolicSetup};

/// A symbolic W_P-invariant weight `lambda - shift`, paired with coweights into monomials in `h`
/// and the dynamical variables `mu_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSymbol {
    generators: Vec<DynamicalGenerator>,
    shift: Vec<Rational64>,
}

impl LambdaSymbol {
    /// The generic `lambda` of the setup's dynamical basis, unshifted.
    pub fn generic(setup: &ParabolicSetup) -> Self {
        LambdaSymbol {
            generators: setup.dynamical_basis().to_vec(),
            shift: vec![Rational64::from_integer(0); setup.root_system().dim()],
        }
    }

    /// `lambda - by`.
    pub fn shifted(&self, by: &[i64]) -> Self {
        let shift = self
            .shift
            .iter()
            .zip(by)
            .map(|(s, b)| s + Rational64::from_integer(*b))
            .collect();
        LambdaSymbol {
            generators: self.generators.clone(),
            shift,
        }
    }

    pub fn generators(&self) -> &[DynamicalGenerator] {
        &self.generators
    }

    /// `h^{<lambda - shift, c>}` as a monomial.
    pub fn pairing(&self, coweight: &[i64]) -> Monomial {
        let mut m = Monomial::one();
        for (k, g) in self.generators.iter().enumerate() {
            let e = g.sign * dot(&g.weight, coweight);
            m.add_exponent(Var::Mu(k as u32 + 1), Rational64::from_integer(e));
        }
        m.add_exponent(Var::H, -dot_rational(&self.shift, coweight));
        m
    }
}
