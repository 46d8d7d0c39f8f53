use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::finite_group::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, solve_integer_matrix, IntMatrix};

/// A free `Z`-module of finite rank with a linear action of a finite group.
///
/// `action(g)` acts on column vectors; `action(g) * action(h) = action(gh)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLattice {
    group: FiniteGroup,
    rank: usize,
    action: Vec<IntMatrix>,
}

impl GLattice {
    /// Validates shapes, unimodularity and the homomorphism property.
    pub fn new(group: FiniteGroup, rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::DimensionMismatch {
                context: "number of action matrices",
                expected: group.order(),
                found: action.len(),
            });
        }
        for (g, m) in action.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::DimensionMismatch {
                    context: "action matrix size",
                    expected: rank,
                    found: if m.rows() != rank { m.rows() } else { m.cols() },
                });
            }
            if !m.is_unimodular() {
                return Err(Error::NonUnimodularAction { element: g });
            }
        }
        if !action[group.identity()].is_identity() {
            return Err(Error::NotAHomomorphism {
                left: group.identity(),
                right: group.identity(),
            });
        }
        for a in group.elements() {
            for b in group.elements() {
                if action[a].mul(&action[b])? != action[group.mul(a, b)] {
                    return Err(Error::NotAHomomorphism { left: a, right: b });
                }
            }
        }
        Ok(GLattice {
            group,
            rank,
            action,
        })
    }

    /// Extends an assignment of matrices to generators to the whole group.
    ///
    /// Fails if the generators do not generate, if a matrix is not
    /// unimodular, or if the relations of the group are violated.
    pub fn from_generators(
        group: FiniteGroup,
        rank: usize,
        generators: &[(usize, IntMatrix)],
    ) -> Result<Self> {
        for (g, m) in generators {
            if *g >= group.order() {
                return Err(Error::MalformedGroup(format!("generator {g} is not a group element")));
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::DimensionMismatch {
                    context: "action matrix size",
                    expected: rank,
                    found: m.rows(),
                });
            }
            if !m.is_unimodular() {
                return Err(Error::NonUnimodularAction { element: *g });
            }
        }
        let mut action: Vec<Option<IntMatrix>> = vec![None; group.order()];
        action[group.identity()] = Some(IntMatrix::identity(rank));
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for (g, m) in generators {
                let y = group.mul(x, *g);
                let my = action[x].as_ref().unwrap().mul(m)?;
                match &action[y] {
                    Some(existing) if *existing != my => {
                        return Err(Error::NotAHomomorphism { left: x, right: *g });
                    }
                    Some(_) => {}
                    None => {
                        action[y] = Some(my);
                        frontier.push(y);
                    }
                }
            }
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(g, m)| {
                m.ok_or_else(|| Error::MalformedGroup(format!("element {g} not reached by the generators")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, rank, action)
    }

    pub fn trivial(group: FiniteGroup, rank: usize) -> Self {
        let action = vec![IntMatrix::identity(rank); group.order()];
        GLattice {
            group,
            rank,
            action,
        }
    }

    /// `Z` with `g` acting by `sign(g)`, for a homomorphism `sign: G -> {±1}`.
    pub fn character(group: FiniteGroup, sign: impl Fn(usize) -> i64) -> Result<Self> {
        let action = group
            .elements()
            .map(|g| IntMatrix::from_rows(&[[sign(g)]]))
            .collect();
        Self::new(group, 1, action)
    }

    /// Permutation lattice on a finite set: `g` sends basis vector `i` to `perm(g)[i]`.
    pub fn from_permutations(group: FiniteGroup, perms: &[Vec<usize>]) -> Result<Self> {
        let rank = perms.first().map_or(0, Vec::len);
        let action = perms
            .iter()
            .map(|p| {
                let mut m = IntMatrix::zeros(rank, rank);
                for (i, &j) in p.iter().enumerate() {
                    m[(j, i)] = BigInt::one();
                }
                m
            })
            .collect();
        Self::new(group, rank, action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    /// The dual lattice `Hom(L, Z)` with `g` acting by `action(g^{-1})^T`.
    pub fn dual(&self) -> GLattice {
        let action = self
            .group
            .elements()
            .map(|g| self.action[self.group.inverse(g)].transpose())
            .collect();
        GLattice {
            group: self.group.clone(),
            rank: self.rank,
            action,
        }
    }

    pub fn direct_sum(&self, other: &GLattice) -> Result<GLattice> {
        if self.group != other.group {
            return Err(Error::IncompatibleModules(String::from("direct sum over different groups")));
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(GLattice {
            group: self.group.clone(),
            rank: self.rank + other.rank,
            action,
        })
    }

    /// The isomorphic lattice `P L` with action `P action(g) P^{-1}`.
    pub fn conjugate(&self, p: &IntMatrix) -> Result<GLattice> {
        let p_inv = solve_integer_matrix(p, &IntMatrix::identity(self.rank))?
            .ok_or(Error::NonUnimodularAction { element: self.group.identity() })?;
        let action = self
            .action
            .iter()
            .map(|a| p.mul(a)?.mul(&p_inv))
            .collect::<Result<Vec<_>>>()?;
        Ok(GLattice {
            group: self.group.clone(),
            rank: self.rank,
            action,
        })
    }

    /// Basis of the invariants `L^G`, as columns.
    pub fn invariants_basis(&self) -> IntMatrix {
        let mut stacked = IntMatrix::zeros(0, self.rank);
        for g in self.group.elements() {
            let d = self.action[g].sub(&IntMatrix::identity(self.rank)).unwrap();
            stacked = stacked.vstack(&d).unwrap();
        }
        kernel_basis(&stacked)
    }

    /// The norm `sum_g action(g)`.
    pub fn norm(&self) -> IntMatrix {
        self.action
            .iter()
            .fold(IntMatrix::zeros(self.rank, self.rank), |acc, a| acc.add(a).unwrap())
    }

    /// The `G`-stable saturated sublattice with the given basis columns,
    /// with the action written in that basis.
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<GLattice> {
        if basis.rows() != self.rank {
            return Err(Error::DimensionMismatch {
                context: "sublattice basis",
                expected: self.rank,
                found: basis.rows(),
            });
        }
        let mut action = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let image = self.action[g].mul(basis)?;
            let coords = solve_integer_matrix(basis, &image)?.ok_or_else(|| {
                Error::IncompatibleModules(format!("sublattice is not stable under element {g}"))
            })?;
            action.push(coords);
        }
        GLattice::new(self.group.clone(), basis.cols(), action)
    }
}

/// The permutation lattice `Z[G/H]` on left cosets ordered by minimal element.
pub fn permutation_module(group: &FiniteGroup, subgroup: &Subgroup) -> Result<GLattice> {
    let subgroup = group.subgroup(subgroup.elements())?;
    let cosets = subgroup.left_cosets(group);
    let coset_of = |x: usize| cosets.iter().position(|c| c.binary_search(&x).is_ok()).unwrap();
    let perms: Vec<Vec<usize>> = group
        .elements()
        .map(|g| cosets.iter().map(|c| coset_of(group.mul(g, c[0]))).collect())
        .collect();
    GLattice::from_permutations(group.clone(), &perms)
}

/// An equivariant map between lattices over the same group.
///
/// `matrix` is `target.rank x source.rank` and acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLatticeMap {
    source: GLattice,
    target: GLattice,
    matrix: IntMatrix,
}

impl GLatticeMap {
    pub fn new(source: GLattice, target: GLattice, matrix: IntMatrix) -> Result<Self> {
        if source.group != target.group {
            return Err(Error::IncompatibleModules(String::from(
                "source and target have different groups",
            )));
        }
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(Error::DimensionMismatch {
                context: "lattice map matrix",
                expected: target.rank * source.rank,
                found: matrix.rows() * matrix.cols(),
            });
        }
        for g in source.group.elements() {
            if target.action[g].mul(&matrix)? != matrix.mul(&source.action[g])? {
                return Err(Error::NotEquivariant { element: g });
            }
        }
        Ok(GLatticeMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(lattice: &GLattice) -> Self {
        GLatticeMap {
            source: lattice.clone(),
            target: lattice.clone(),
            matrix: IntMatrix::identity(lattice.rank),
        }
    }

    pub fn zero(source: &GLattice, target: &GLattice) -> Result<Self> {
        Self::new(
            source.clone(),
            target.clone(),
            IntMatrix::zeros(target.rank, source.rank),
        )
    }

    pub fn source(&self) -> &GLattice {
        &self.source
    }

    pub fn target(&self) -> &GLattice {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &GLatticeMap) -> Result<GLatticeMap> {
        if first.target != self.source {
            return Err(Error::IncompatibleModules(String::from(
                "maps are not composable",
            )));
        }
        Ok(GLatticeMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }
}
