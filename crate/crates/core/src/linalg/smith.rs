//! Smith normal form over the integers.
//!
//! `U * A * V = S` with `U`, `V` unimodular and `S` diagonal, its nonzero
//! entries `d_1 | d_2 | ... | d_r` positive and followed by zeros. The pivot is
//! always the entry of smallest absolute value in the active block, which
//! keeps intermediate coefficients small in practice.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Left transform (`rows x rows`).
    pub u: IntMatrix,
    /// Diagonal form (same shape as the input).
    pub s: IntMatrix,
    /// Right transform (`cols x cols`).
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        diagonal_of(&self.s)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Computes `U`, `S`, `V` with `U * A * V = S`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let out = Reducer::run(a, Track { u: true, u_inv: false, v: true });
    SmithDecomposition {
        u: out.u.unwrap(),
        s: out.s,
        v: out.v.unwrap(),
    }
}

/// The nonzero invariant factors of `a`, without computing transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    diagonal_of(&Reducer::run(a, Track::default()).s)
}

/// Invariant factors and `U^{-1}`: the first `r` columns of `U^{-1}` form a
/// basis of the saturation of the column span of `a`, and scaling column `i`
/// by `d_i` gives a basis of the column span itself.
pub(crate) fn smith_left_inverse(a: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let out = Reducer::run(a, Track { u: false, u_inv: true, v: false });
    (diagonal_of(&out.s), out.u_inv.unwrap())
}

/// Invariant factors and `U` and `V`, for solving systems.
pub(crate) fn smith_right(a: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let out = Reducer::run(a, Track { u: false, u_inv: false, v: true });
    (diagonal_of(&out.s), out.v.unwrap())
}

fn diagonal_of(s: &IntMatrix) -> Vec<BigInt> {
    (0..s.rows().min(s.cols()))
        .map(|i| s[(i, i)].clone())
        .take_while(|d| !d.is_zero())
        .collect()
}

#[derive(Clone, Copy, Default)]
struct Track {
    u: bool,
    u_inv: bool,
    v: bool,
}

struct Reducer {
    s: IntMatrix,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn run(a: &IntMatrix, track: Track) -> Reducer {
        let (m, n) = (a.rows(), a.cols());
        let mut r = Reducer {
            s: a.clone(),
            u: track.u.then(|| IntMatrix::identity(m)),
            u_inv: track.u_inv.then(|| IntMatrix::identity(m)),
            v: track.v.then(|| IntMatrix::identity(n)),
        };
        for t in 0..m.min(n) {
            let Some((pi, pj)) = r.smallest_in_block(t) else {
                break;
            };
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            r.reduce_pivot(t);
        }
        r
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let x = &self.s[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    let one = ax.is_one();
                    best = Some((i, j, ax));
                    if one {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `t` and enforces that the pivot divides the
    /// remaining block.
    fn reduce_pivot(&mut self, t: usize) {
        let (m, n) = (self.s.rows(), self.s.cols());
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if self.s[(i, t)].is_zero() {
                    continue;
                }
                let q = &self.s[(i, t)] / &self.s[(t, t)];
                self.add_row(i, t, &-q);
                if !self.s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if self.s[(t, j)].is_zero() {
                    continue;
                }
                let q = &self.s[(t, j)] / &self.s[(t, t)];
                self.add_col(j, t, &-q);
                if !self.s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A nonzero remainder is smaller than the pivot; promote it.
                let mut best = (t, t, self.s[(t, t)].abs());
                for i in t + 1..m {
                    let x = self.s[(i, t)].abs();
                    if !x.is_zero() && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..n {
                    let x = self.s[(t, j)].abs();
                    if !x.is_zero() && x < best.2 {
                        best = (t, j, x);
                    }
                }
                self.swap_rows(t, best.0);
                self.swap_cols(t, best.1);
                continue;
            }
            let pivot = self.s[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(&self.s[(i, j)] % &pivot).is_zero())
            });
            match offender {
                Some(i) => self.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if self.s[(t, t)].is_negative() {
            self.negate_row(t);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.s.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.s.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    /// `row[dst] += c * row[src]` on `S`, mirrored on the transforms.
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.s.add_row_multiple(dst, src, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, c);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &-c);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.s.add_col_multiple(dst, src, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }
}
