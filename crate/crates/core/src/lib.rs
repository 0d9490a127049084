//! Equivariant elliptic classes of Schubert varieties in `G/P`, computed by Bott-Samelson
//! localization and by a cover-by-cover recursion, and type-A elliptic weight functions.

pub mod error;
pub mod expr;
pub mod lie;
pub mod render;
pub mod schubert;
pub mod theta;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
