//! Group cohomology `H^n(G, L)` for `n <= 2` from the inhomogeneous bar
//! resolution.
//!
//! An `n`-cochain is a function `G^n -> L`, stored as a vector of length
//! `rank * |G|^n`: the value at `(g_1, ..., g_n)` occupies the block with
//! index `g_1 |G|^{n-1} + ... + g_n`.
//!
//! For `n >= 1` the group `H^n` is killed by `|G|`, so the cocycles are
//! exactly the saturation of the coboundaries and `H^n` is the torsion of
//! `C^n / B^n`. Only `d^{n-1}` is reduced; the presentation keeps a basis of
//! the cocycles (the saturation) and the coboundaries in those coordinates,
//! which makes maps between cohomology groups computable on representatives.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lattice::{GLattice, GLatticeMap};
use crate::error::{Error, Result};
use crate::linalg::{
    cokernel, column_span_basis, kernel_basis, smith_left_inverse, solve_integer_matrix,
    FinAbGroup, IntMatrix,
};

/// Size limits for the dense cochain representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_group_order: usize,
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 12,
            max_rank: 8,
        }
    }
}

impl Limits {
    pub fn check(&self, lattice: &GLattice) -> Result<()> {
        let order = lattice.group().order();
        if order > self.max_group_order {
            return Err(Error::ResourceLimit {
                what: "group order",
                value: order,
                limit: self.max_group_order,
            });
        }
        if lattice.rank() > self.max_rank {
            return Err(Error::ResourceLimit {
                what: "lattice rank",
                value: lattice.rank(),
                limit: self.max_rank,
            });
        }
        Ok(())
    }
}

/// The bar complex `C^0 -> C^1 -> C^2 -> C^3` of a lattice.
pub struct CochainComplex<'a> {
    lattice: &'a GLattice,
}

impl<'a> CochainComplex<'a> {
    pub fn new(lattice: &'a GLattice) -> Self {
        CochainComplex { lattice }
    }

    pub fn cochain_rank(&self, n: usize) -> usize {
        self.lattice.rank() * self.lattice.group().order().pow(n as u32)
    }

    /// The matrix of `d^n : C^n -> C^{n+1}`, for `n <= 2`.
    pub fn coboundary(&self, n: usize) -> Result<IntMatrix> {
        let g = self.lattice.group();
        let q = g.order();
        let r = self.lattice.rank();
        let mut d = IntMatrix::zeros(self.cochain_rank(n + 1), self.cochain_rank(n));
        let put = |d: &mut IntMatrix, row_block: usize, col_block: usize, m: Option<&IntMatrix>, sign: i64| {
            for i in 0..r {
                for j in 0..r {
                    let x = match m {
                        Some(m) => m[(i, j)].clone() * sign,
                        None if i == j => BigInt::from(sign),
                        None => continue,
                    };
                    if !x.is_zero() {
                        d[(row_block * r + i, col_block * r + j)] += x;
                    }
                }
            }
        };
        match n {
            0 => {
                // (d m)(g) = g m - m
                for a in g.elements() {
                    put(&mut d, a, 0, Some(self.lattice.action(a)), 1);
                    put(&mut d, a, 0, None, -1);
                }
            }
            1 => {
                // (d f)(a, b) = a f(b) - f(ab) + f(a)
                for a in g.elements() {
                    for b in g.elements() {
                        let row = a * q + b;
                        put(&mut d, row, b, Some(self.lattice.action(a)), 1);
                        put(&mut d, row, g.mul(a, b), None, -1);
                        put(&mut d, row, a, None, 1);
                    }
                }
            }
            2 => {
                // (d f)(a, b, c) = a f(b, c) - f(ab, c) + f(a, bc) - f(a, b)
                for a in g.elements() {
                    for b in g.elements() {
                        for c in g.elements() {
                            let row = (a * q + b) * q + c;
                            put(&mut d, row, b * q + c, Some(self.lattice.action(a)), 1);
                            put(&mut d, row, g.mul(a, b) * q + c, None, -1);
                            put(&mut d, row, a * q + g.mul(b, c), None, 1);
                            put(&mut d, row, a * q + b, None, -1);
                        }
                    }
                }
            }
            _ => return Err(Error::UnsupportedDegree(n + 1)),
        }
        Ok(d)
    }
}

/// `H^n(G, L)` with the presentation it was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    degree: usize,
    group: FinAbGroup,
    cocycles: IntMatrix,
    relations: IntMatrix,
}

impl CohomologyResult {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Basis of the cocycle lattice `Z^n`, as columns in `C^n`.
    pub fn cocycles(&self) -> &IntMatrix {
        &self.cocycles
    }

    /// Generators of `B^n` written in the cocycle basis, as columns.
    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Coordinates of a cocycle in the cocycle basis; `None` if `z` is not a cocycle.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        crate::linalg::solve_integer(&self.cocycles, z)
    }

    /// Whether a coordinate vector represents the zero class.
    pub fn is_zero_class(&self, coords: &[BigInt]) -> Result<bool> {
        Ok(crate::linalg::solve_integer(&self.relations, coords)?.is_some())
    }
}

pub fn cohomology(lattice: &GLattice, degree: usize) -> Result<CohomologyResult> {
    cohomology_with_limits(lattice, degree, &Limits::default())
}

pub fn cohomology_with_limits(
    lattice: &GLattice,
    degree: usize,
    limits: &Limits,
) -> Result<CohomologyResult> {
    if degree > 2 {
        return Err(Error::UnsupportedDegree(degree));
    }
    limits.check(lattice)?;
    let complex = CochainComplex::new(lattice);
    if degree == 0 {
        let cocycles = kernel_basis(&complex.coboundary(0)?);
        let k = cocycles.cols();
        return Ok(CohomologyResult {
            degree,
            group: FinAbGroup::free(k),
            cocycles,
            relations: IntMatrix::zeros(k, 0),
        });
    }
    let (diag, u_inv) = smith_left_inverse(&complex.coboundary(degree - 1)?);
    let idx: Vec<usize> = (0..diag.len()).collect();
    let s = diag.len();
    Ok(CohomologyResult {
        degree,
        group: FinAbGroup::from_cyclic_factors(0, &diag),
        cocycles: u_inv.select_columns(&idx),
        relations: IntMatrix::diagonal(s, s, &diag),
    })
}

/// `ker d^n / im d^{n-1}` computed literally: a basis of the kernel of
/// `d^n`, and the image of `d^{n-1}` expressed in it. Much slower than
/// [`cohomology`]; kept as a reference computation.
pub fn cohomology_by_kernel(lattice: &GLattice, degree: usize) -> Result<FinAbGroup> {
    if degree > 2 {
        return Err(Error::UnsupportedDegree(degree));
    }
    let complex = CochainComplex::new(lattice);
    let z = kernel_basis(&complex.coboundary(degree)?);
    if degree == 0 {
        return Ok(FinAbGroup::free(z.cols()));
    }
    let b = complex.coboundary(degree - 1)?;
    let coords = solve_integer_matrix(&z, &b)?
        .ok_or_else(|| Error::Internal(String::from("coboundary is not a cocycle")))?;
    Ok(cokernel(&coords))
}

/// `Ĥ^0(G, L) = L^G / N L` for cyclic `G`, which is isomorphic to `H^2(G, L)`.
pub fn tate_cyclic_h2(lattice: &GLattice) -> Result<FinAbGroup> {
    let g = lattice.group();
    if g.cyclic_generator().is_none() {
        return Err(Error::UnsupportedGroup(alloc::format!(
            "group of order {} is not cyclic",
            g.order()
        )));
    }
    let fixed = lattice.invariants_basis();
    let norm = lattice.norm();
    let coords = solve_integer_matrix(&fixed, &norm)?
        .ok_or_else(|| Error::Internal(String::from("norm image is not invariant")))?;
    Ok(cokernel(&coords))
}

/// Applies `f` to every value of each cochain column.
fn push_cochains(f: &IntMatrix, cochains: &IntMatrix) -> Result<IntMatrix> {
    let (r1, r2) = (f.cols(), f.rows());
    if r1 == 0 {
        return Ok(IntMatrix::zeros(0, cochains.cols()));
    }
    let blocks = cochains.rows() / r1;
    let mut out = IntMatrix::zeros(blocks * r2, cochains.cols());
    for c in 0..cochains.cols() {
        for b in 0..blocks {
            let value: Vec<BigInt> = (0..r1).map(|i| cochains[(b * r1 + i, c)].clone()).collect();
            let image = f.mul_vec(&value)?;
            for (i, x) in image.into_iter().enumerate() {
                out[(b * r2 + i, c)] = x;
            }
        }
    }
    Ok(out)
}

/// A homomorphism `H^2(G, source) -> H^2(G, target)` on presentations:
/// column `j` of `matrix` gives the target coordinates of the image of
/// source cocycle basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub source: CohomologyResult,
    pub target: CohomologyResult,
    pub matrix: IntMatrix,
}

impl InducedMap {
    /// Whether the map is zero on cohomology classes.
    pub fn is_zero(&self) -> Result<bool> {
        Ok(solve_integer_matrix(&self.target.relations, &self.matrix)?.is_some())
    }

    /// Whether `self` and `other` agree on classes (same source and target presentations).
    pub fn agrees_with(&self, other: &InducedMap) -> Result<bool> {
        let diff = self.matrix.sub(&other.matrix)?;
        Ok(solve_integer_matrix(&self.target.relations, &diff)?.is_some())
    }
}

fn check_limits_pair(f: &GLatticeMap, limits: &Limits) -> Result<()> {
    limits.check(f.source())?;
    limits.check(f.target())
}

pub fn induced_h2_map(f: &GLatticeMap) -> Result<InducedMap> {
    induced_h2_map_with_limits(f, &Limits::default())
}

pub fn induced_h2_map_with_limits(f: &GLatticeMap, limits: &Limits) -> Result<InducedMap> {
    check_limits_pair(f, limits)?;
    let source = cohomology_with_limits(f.source(), 2, limits)?;
    let target = cohomology_with_limits(f.target(), 2, limits)?;
    let pushed = push_cochains(f.matrix(), source.cocycles())?;
    let matrix = if target.cocycles.cols() == 0 {
        IntMatrix::zeros(0, source.cocycles.cols())
    } else {
        solve_integer_matrix(&target.cocycles, &pushed)?.ok_or_else(|| {
            Error::Internal(String::from("image of a cocycle is not a cocycle"))
        })?
    };
    Ok(InducedMap {
        source,
        target,
        matrix,
    })
}

/// Kernel of `H^2(f)`, by lifting to cochains: the cocycles `z` of the
/// source with `f(z)` a coboundary of the target, modulo source coboundaries.
pub fn kernel_of_h2_map(f: &GLatticeMap) -> Result<FinAbGroup> {
    kernel_of_h2_map_with_limits(f, &Limits::default())
}

pub fn kernel_of_h2_map_with_limits(f: &GLatticeMap, limits: &Limits) -> Result<FinAbGroup> {
    check_limits_pair(f, limits)?;
    let source = cohomology_with_limits(f.source(), 2, limits)?;
    let s1 = source.cocycles.cols();
    if s1 == 0 {
        return Ok(FinAbGroup::trivial());
    }
    let pushed = push_cochains(f.matrix(), source.cocycles())?;
    let target_d1 = CochainComplex::new(f.target()).coboundary(1)?;
    // (x, y) with f(Z x) = d1 y
    let system = pushed.hstack(&target_d1.scale(&-BigInt::one()))?;
    let lifts = kernel_basis(&system);
    let idx: Vec<usize> = (0..s1).collect();
    quotient_by_relations(&lifts.select_rows(&idx), source.relations())
}

/// Kernel of `H^2(f)` computed on the finite presentations: classes `x` of
/// the source whose image `Φ x` lies in the relation lattice of the target.
pub fn kernel_of_h2_map_via_presentation(f: &GLatticeMap) -> Result<FinAbGroup> {
    let map = induced_h2_map(f)?;
    let s1 = map.source.cocycles.cols();
    if s1 == 0 {
        return Ok(FinAbGroup::trivial());
    }
    let system = map
        .matrix
        .hstack(&map.target.relations.scale(&-BigInt::one()))?;
    let lifts = kernel_basis(&system);
    let idx: Vec<usize> = (0..s1).collect();
    quotient_by_relations(&lifts.select_rows(&idx), map.source.relations())
}

/// `(span of generators) / (span of relations)`, where the relations lie in
/// the span of the generators.
fn quotient_by_relations(generators: &IntMatrix, relations: &IntMatrix) -> Result<FinAbGroup> {
    let basis = column_span_basis(generators);
    let coords = solve_integer_matrix(&basis, relations)?
        .ok_or_else(|| Error::Internal(String::from("relations escape the kernel lattice")))?;
    Ok(cokernel(&coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{permutation_module, FiniteGroup};

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    fn sign(g: &FiniteGroup) -> GLattice {
        GLattice::character(g.clone(), |x| if x % 2 == 0 { 1 } else { -1 }).unwrap()
    }

    #[test]
    fn complex_squares_to_zero() {
        let g = FiniteGroup::symmetric3();
        let l = permutation_module(&g, &g.subgroup(&[0, 3]).unwrap()).unwrap();
        let c = CochainComplex::new(&l);
        let d0 = c.coboundary(0).unwrap();
        let d1 = c.coboundary(1).unwrap();
        let d2 = c.coboundary(2).unwrap();
        assert!(d1.mul(&d0).unwrap().is_zero());
        assert!(d2.mul(&d1).unwrap().is_zero());
    }

    #[test]
    fn small_cyclic_examples() {
        let triv = GLattice::trivial(c2(), 1);
        assert_eq!(*cohomology(&triv, 2).unwrap().group(), FinAbGroup::cyclic(2));
        assert_eq!(*cohomology(&triv, 1).unwrap().group(), FinAbGroup::trivial());
        assert_eq!(*cohomology(&triv, 0).unwrap().group(), FinAbGroup::free(1));

        let s = sign(&c2());
        assert_eq!(*cohomology(&s, 1).unwrap().group(), FinAbGroup::cyclic(2));
        assert_eq!(*cohomology(&s, 0).unwrap().group(), FinAbGroup::trivial());

        let reg = permutation_module(&c2(), &c2().trivial_subgroup()).unwrap();
        assert_eq!(*cohomology(&reg, 2).unwrap().group(), FinAbGroup::trivial());
    }

    #[test]
    fn cocycle_basis_is_closed() {
        let g = FiniteGroup::cyclic(3);
        let l = GLattice::trivial(g, 2);
        let h = cohomology(&l, 2).unwrap();
        let d2 = CochainComplex::new(&l).coboundary(2).unwrap();
        assert!(d2.mul(h.cocycles()).unwrap().is_zero());
        assert_eq!(*h.group(), FinAbGroup::from_cyclic_factors(0, &[BigInt::from(3), BigInt::from(3)]));
    }

    #[test]
    fn direct_route_agrees() {
        let g = FiniteGroup::klein_four();
        let l = permutation_module(&g, &g.subgroup(&[0, 1]).unwrap()).unwrap();
        for n in 0..=2 {
            assert_eq!(*cohomology(&l, n).unwrap().group(), cohomology_by_kernel(&l, n).unwrap());
        }
    }

    #[test]
    fn tate_examples() {
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(tate_cyclic_h2(&GLattice::trivial(c3, 1)).unwrap(), FinAbGroup::cyclic(3));
        assert_eq!(tate_cyclic_h2(&sign(&c2())).unwrap(), FinAbGroup::trivial());
        let c4 = FiniteGroup::cyclic(4);
        let reg = permutation_module(&c4, &c4.trivial_subgroup()).unwrap();
        assert_eq!(tate_cyclic_h2(&reg).unwrap(), FinAbGroup::trivial());
        let v4 = GLattice::trivial(FiniteGroup::klein_four(), 1);
        assert!(matches!(tate_cyclic_h2(&v4), Err(Error::UnsupportedGroup(_))));
    }

    #[test]
    fn degree_and_size_limits() {
        let l = GLattice::trivial(c2(), 1);
        assert_eq!(cohomology(&l, 3), Err(Error::UnsupportedDegree(3)));
        let big = GLattice::trivial(FiniteGroup::cyclic(13), 1);
        assert!(matches!(cohomology(&big, 2), Err(Error::ResourceLimit { .. })));
        let wide = GLattice::trivial(c2(), 9);
        assert!(matches!(cohomology(&wide, 1), Err(Error::ResourceLimit { .. })));
        let relaxed = Limits { max_group_order: 13, max_rank: 8 };
        assert!(cohomology_with_limits(&big, 1, &relaxed).is_ok());
    }

    #[test]
    fn induced_map_examples() {
        let triv = GLattice::trivial(c2(), 1);
        let reg = permutation_module(&c2(), &c2().trivial_subgroup()).unwrap();

        let id = induced_h2_map(&GLatticeMap::identity(&triv)).unwrap();
        assert!(id.matrix.is_identity());
        assert!(!id.is_zero().unwrap());
        assert_eq!(kernel_of_h2_map(&GLatticeMap::identity(&triv)).unwrap(), FinAbGroup::trivial());

        let zero = GLatticeMap::zero(&triv, &triv).unwrap();
        assert!(induced_h2_map(&zero).unwrap().is_zero().unwrap());
        assert_eq!(kernel_of_h2_map(&zero).unwrap(), FinAbGroup::cyclic(2));

        let diag = GLatticeMap::new(triv, reg, IntMatrix::from_rows(&[[1], [1]])).unwrap();
        let m = induced_h2_map(&diag).unwrap();
        assert!(m.is_zero().unwrap());
        assert_eq!(*m.target.group(), FinAbGroup::trivial());
        assert_eq!(kernel_of_h2_map(&diag).unwrap(), FinAbGroup::cyclic(2));
        assert_eq!(kernel_of_h2_map_via_presentation(&diag).unwrap(), FinAbGroup::cyclic(2));
    }

    #[test]
    fn trivial_group_kernels_vanish() {
        let g = FiniteGroup::trivial();
        let a = GLattice::trivial(g.clone(), 2);
        let b = GLattice::trivial(g, 1);
        let f = GLatticeMap::new(a, b, IntMatrix::from_rows(&[[1, 2]])).unwrap();
        assert_eq!(kernel_of_h2_map(&f).unwrap(), FinAbGroup::trivial());
    }

    #[test]
    fn mismatched_groups_rejected() {
        let a = GLattice::trivial(c2(), 1);
        let b = GLattice::trivial(FiniteGroup::cyclic(3), 1);
        assert!(matches!(
            GLatticeMap::new(a, b, IntMatrix::identity(1)),
            Err(Error::IncompatibleModules(_))
        ));
    }
}
