use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::GFan;
use crate::error::{Error, Result};
use crate::linalg::in_simplicial_cone;

/// Upper limit on the number of box points visited by exhaustive enumeration.
pub const MAX_BOX_POINTS: usize = 1 << 22;

/// Lattice points `p` with `|p|_inf <= bound` lying in the support of the fan,
/// sorted lexicographically.
///
/// For fans whose cones have dimension at most one the points are the
/// multiples `c v` of the ray generators; otherwise the box is enumerated.
pub fn support_lattice_points(fan: &GFan, bound: u64) -> Result<Vec<Vec<BigInt>>> {
    if fan.is_pure_divisorial() {
        Ok(ray_multiples(fan, bound))
    } else {
        support_lattice_points_by_enumeration(fan, bound)
    }
}

fn ray_multiples(fan: &GFan, bound: u64) -> Vec<Vec<BigInt>> {
    let bound = BigInt::from(bound);
    let mut points = BTreeSet::new();
    points.insert(alloc::vec![BigInt::zero(); fan.rank()]);
    for r in fan.rays() {
        let v = r.generator();
        let norm = v.iter().map(Signed::abs).max().unwrap_or_default();
        if norm.is_zero() {
            continue;
        }
        let steps = bound.div_floor(&norm);
        let mut c = BigInt::from(1);
        while c <= steps {
            points.insert(v.iter().map(|x| x * &c).collect());
            c += 1;
        }
    }
    points.into_iter().collect()
}

/// Exhaustive version: visits every point of the box `[-bound, bound]^rank`
/// and tests membership in each maximal cone by exact rational solving.
pub fn support_lattice_points_by_enumeration(fan: &GFan, bound: u64) -> Result<Vec<Vec<BigInt>>> {
    let n = fan.rank();
    let side = 2 * bound as usize + 1;
    let total = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(side));
    match total {
        Some(t) if t <= MAX_BOX_POINTS => {}
        _ => {
            return Err(Error::ResourceLimit {
                what: "support enumeration box size",
                value: total.unwrap_or(usize::MAX),
                limit: MAX_BOX_POINTS,
            })
        }
    }
    let gens: Vec<_> = fan
        .maximal_cones()
        .into_iter()
        .map(|c| fan.generator_matrix(c))
        .collect();
    let b = bound as i64;
    let mut point = alloc::vec![-b; n];
    let mut out = Vec::new();
    loop {
        let p: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        let mut inside = false;
        for g in &gens {
            if in_simplicial_cone(g, &p)? {
                inside = true;
                break;
            }
        }
        if inside {
            out.push(p);
        }
        // odometer step
        let mut i = n;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            if point[i] < b {
                point[i] += 1;
                break;
            }
            point[i] = -b;
        }
    }
}
