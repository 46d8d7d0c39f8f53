//! Finite groups, lattices with a group action, and their low-degree cohomology.
//!
//! The absolute Galois group never appears: every lattice is acted on by a
//! fixed finite quotient `G = Gal(k'/k)` through which the action factors,
//! and all cohomology is computed for `G`.

mod cohomology;
mod finite_group;
mod lattice;

pub use cohomology::{
    cohomology, cohomology_by_kernel, cohomology_with_limits, induced_h2_map,
    induced_h2_map_with_limits, kernel_of_h2_map, kernel_of_h2_map_via_presentation,
    kernel_of_h2_map_with_limits, tate_cyclic_h2, CochainComplex, CohomologyResult, InducedMap,
    Limits,
};
pub use finite_group::{FiniteGroup, Subgroup};
pub use lattice::{permutation_module, GLattice, GLatticeMap};
