//! Type-A elliptic weight functions and their relation to the class tables.

mod checks;
mod function;
mod partition;

pub use checks::{
    block_offset_r_vector, combinatorial_identity, compositions, identity_values, initial_check,
    main_theorem_check, main_theorem_sides, normalized_restriction, rmatrix_cases, rmatrix_check,
    rmatrix_sides, IdentityFailure,
};
pub use function::{
    euler_factor, mu_substitution, normalization, normalization_exponent, restrict,
    weight_function, MAX_N,
};
pub use partition::{coset_to_partition, partition_to_coset, BlockPartition};
