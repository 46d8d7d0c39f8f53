use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use super::rho_map;
use crate::error::{Error, Result};
use crate::fan::{support_lattice_points, support_lattice_points_by_enumeration, GFan};

/// Box size up to which the fan's support is enumerated point by point.
const ENUMERATION_LIMIT: usize = 1 << 16;

/// Outcome of comparing the lattice points of `|F|` in a box with the image
/// under `rho` of the lattice points of the standard fan's support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCheck {
    pub passed: bool,
    pub bound: u64,
    /// Bound used on the standard side: `bound` times the largest ray norm.
    pub source_bound: u64,
    pub points: usize,
    /// Whether `|F|` was enumerated over the whole box.
    pub enumerated: bool,
    /// Points of `|F|` not hit by `rho`.
    pub missing: Vec<Vec<BigInt>>,
    /// Points hit by `rho` inside the box that are not in `|F|`.
    pub extra: Vec<Vec<BigInt>>,
}

pub fn tropical_int_check(fan: &GFan, bound: u64) -> Result<TropicalCheck> {
    let cover = rho_map(fan)?;
    let max_norm = fan
        .rays()
        .iter()
        .flat_map(|r| r.generator().iter().map(Signed::abs))
        .max()
        .unwrap_or_else(|| BigInt::from(1));
    let max_norm = u64::try_from(max_norm).map_err(|_| Error::ResourceLimit {
        what: "ray norm",
        value: usize::MAX,
        limit: u64::MAX as usize,
    })?;
    let source_bound = bound.saturating_mul(max_norm.max(1));

    let side = 2 * bound as usize + 1;
    let box_size = (0..fan.rank()).try_fold(1usize, |acc, _| acc.checked_mul(side));
    let enumerated = matches!(box_size, Some(t) if t <= ENUMERATION_LIMIT);
    let target: BTreeSet<Vec<BigInt>> = if enumerated {
        support_lattice_points_by_enumeration(fan, bound)?
    } else {
        support_lattice_points(fan, bound)?
    }
    .into_iter()
    .collect();

    let rho = cover.morphism.matrix();
    let limit = BigInt::from(bound);
    let mut image = BTreeSet::new();
    for p in support_lattice_points(cover.morphism.source(), source_bound)? {
        let q = rho.mul_vec(&p)?;
        if q.iter().all(|x| x.abs() <= limit) {
            image.insert(q);
        }
    }
    let missing: Vec<_> = target.difference(&image).cloned().collect();
    let extra: Vec<_> = image.difference(&target).cloned().collect();
    Ok(TropicalCheck {
        passed: missing.is_empty() && extra.is_empty(),
        bound,
        source_bound,
        points: target.len(),
        enumerated,
        missing,
        extra,
    })
}
