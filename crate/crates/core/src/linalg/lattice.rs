//! Kernels, cokernels and integer solving, all reduced to Smith normal form.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::abelian::FinAbGroup;
use super::matrix::IntMatrix;
use super::smith::{invariant_factors, smith_left_inverse, smith_normal_form, smith_right};
use crate::error::{Error, Result};

/// Columns form a basis of `{x in Z^cols : A x = 0}`.
///
/// The basis is the tail of the right Smith transform, so it extends to a
/// basis of `Z^cols` (the kernel is saturated).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let (diag, v) = smith_right(a);
    let idx: Vec<usize> = (diag.len()..a.cols()).collect();
    v.select_columns(&idx)
}

/// `Z^rows / (column span of A)`.
pub fn cokernel(a: &IntMatrix) -> FinAbGroup {
    let diag = invariant_factors(a);
    FinAbGroup::from_cyclic_factors(a.rows() - diag.len(), &diag)
}

pub fn rank(a: &IntMatrix) -> usize {
    invariant_factors(a).len()
}

/// Some integer `x` with `A x = b`, or `None` when no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            context: "right-hand side of integer system",
            expected: a.rows(),
            found: b.len(),
        });
    }
    let d = smith_normal_form(a);
    let c = d.u.mul_vec(b)?;
    let diag = d.invariant_factors();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(di) => {
                let (q, r) = ci.div_rem(di);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            }
            None if !ci.is_zero() => return Ok(None),
            None => {}
        }
    }
    Ok(Some(d.v.mul_vec(&y)?))
}

/// Solves `A X = B` column by column; `None` if some column has no integer solution.
pub fn solve_integer_matrix(a: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch {
            context: "right-hand side of integer system",
            expected: a.rows(),
            found: b.rows(),
        });
    }
    let d = smith_normal_form(a);
    let c = d.u.mul(b)?;
    let diag = d.invariant_factors();
    let mut y = IntMatrix::zeros(a.cols(), b.cols());
    for i in 0..c.rows() {
        for j in 0..c.cols() {
            let cij = &c[(i, j)];
            match diag.get(i) {
                Some(di) => {
                    let (q, r) = cij.div_rem(di);
                    if !r.is_zero() {
                        return Ok(None);
                    }
                    y[(i, j)] = q;
                }
                None if !cij.is_zero() => return Ok(None),
                None => {}
            }
        }
    }
    Ok(Some(d.v.mul(&y)?))
}

/// A basis (as columns) of the lattice spanned by the columns of `a`.
pub fn column_span_basis(a: &IntMatrix) -> IntMatrix {
    let (diag, ui) = smith_left_inverse(a);
    let mut out = IntMatrix::zeros(a.rows(), diag.len());
    for (j, d) in diag.iter().enumerate() {
        for i in 0..a.rows() {
            out[(i, j)] = &ui[(i, j)] * d;
        }
    }
    out
}

/// A basis of `(Q-span of the columns of a) ∩ Z^rows`, together with the
/// invariant factors: column `i` of the basis times `d_i` lies in the column
/// span of `a`, and these products form a basis of it.
pub fn saturation_basis(a: &IntMatrix) -> (IntMatrix, Vec<BigInt>) {
    let (diag, ui) = smith_left_inverse(a);
    let idx: Vec<usize> = (0..diag.len()).collect();
    (ui.select_columns(&idx), diag)
}

/// Exact rational solution of `A x = b` when `A` has full column rank.
///
/// Returns `Ok(None)` if the system is inconsistent; errors if the columns
/// are dependent.
pub fn solve_rational_unique(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigRational>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            context: "right-hand side of rational system",
            expected: a.rows(),
            found: b.len(),
        });
    }
    let (m, n) = (a.rows(), a.cols());
    let mut rows: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut r: Vec<BigRational> =
                a.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.push(BigRational::from_integer(b[i].clone()));
            r
        })
        .collect();
    // every column must pivot, so the pivot row is the column index
    for col in 0..n {
        let Some(p) = (col..m).find(|&i| !rows[i][col].is_zero()) else {
            return Err(Error::Internal(alloc::string::String::from(
                "rational solve needs independent columns",
            )));
        };
        rows.swap(col, p);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &f * y;
                }
            }
        }
    }
    if rows[n..].iter().any(|r| !r[n].is_zero()) {
        return Ok(None);
    }
    Ok(Some(rows[..n].iter().map(|r| r[n].clone()).collect()))
}

/// Whether `p` is a nonnegative rational combination of the linearly
/// independent columns of `gens`.
pub fn in_simplicial_cone(gens: &IntMatrix, p: &[BigInt]) -> Result<bool> {
    if gens.cols() == 0 {
        return Ok(p.iter().all(Zero::is_zero));
    }
    Ok(solve_rational_unique(gens, p)?
        .is_some_and(|c| c.iter().all(|x| !x.is_negative())))
}
