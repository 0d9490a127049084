//! Elliptic classes of Schubert varieties by localization and by recursion.

mod checks;
mod lambda;
mod localization;
mod recursion;
pub mod type_a;

pub use checks::{
    expected_diagonal, gkm_probe, normalization_check, pushforward_borel_table, pushforward_check,
    pushforward_sum, transformation_violations, triangularity_check, triangularity_violations,
    GkmReport, ProbeSeries,
};
pub use lambda::LambdaSymbol;
pub use localization::{bsdh_restriction, class_localization, localization_terms};
pub use recursion::{class_recursion, ClassTable, DescentChoice, Method};
pub use type_a::{r_vector, type_a_recursion, TypeATable};
