//! Exact algorithms for smooth toric varieties carrying a finite Galois action.
//!
//! A toric variety over a field `k` split by a finite Galois extension with
//! group `G` is modelled by a fan of smooth cones in a cocharacter lattice `N`
//! together with a unimodular `G`-action on `N` that permutes the cones. From
//! that datum this crate computes:
//!
//! * smoothness, the orbit-cone correspondence and Galois orbits of rays
//!   ([`fan`]);
//! * the pure-divisorial open subvariety, the standard toric variety attached
//!   to the ray orbits, the covering morphism onto the original fan and the
//!   dual divisor map on characters ([`toric`]);
//! * class groups with torsion and the kernel of the induced map on `H^2`
//!   that computes the algebraic Brauer group relative to the splitting
//!   group ([`invariants`]).
//!
//! Everything is exact: integers are arbitrary precision and no floating
//! point is used anywhere. The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod fan;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod toric;

pub use error::{Error, Result};
pub use fan::{Cone, GFan, Ray, ValidationIssue, ValidationReport};
pub use group::{CohomologyResult, FiniteGroup, GLattice, GLatticeMap, Subgroup};
pub use invariants::InvariantReport;
pub use linalg::{FinAbGroup, IntMatrix, SmithDecomposition};
pub use toric::{AffineStructure, FanMorphism};
pub use num_bigint::BigInt;
