//! Exact integer linear algebra. Every quotient in the crate is computed here.

mod abelian;
mod lattice;
mod matrix;
mod smith;

pub use abelian::FinAbGroup;
pub use lattice::{
    cokernel, column_span_basis, in_simplicial_cone, kernel_basis, rank, saturation_basis,
    solve_integer, solve_integer_matrix, solve_rational_unique,
};
pub use matrix::{content, is_primitive, to_bigints, IntMatrix};
pub use smith::{invariant_factors, smith_normal_form, SmithDecomposition};

pub(crate) use smith::smith_left_inverse;
