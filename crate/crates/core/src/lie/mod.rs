//! Root systems, Weyl groups, parabolic quotients and the divisor-multiplicity combinatorics.

pub mod parabolic;
pub mod roots;
pub mod weyl;
pub mod words;

pub use parabolic::{levi_from_blocks, DynamicalGenerator, ParabolicSetup};
pub use roots::{Family, RootSystem};
pub use weyl::{BruhatRelation, ElemId, WeylElement, WeylGroup};
pub use words::{gamma_data, GammaEntry, ReducedWord};
