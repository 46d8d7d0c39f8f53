//! Class groups and the algebraic Brauer group of a smooth toric variety,
//! relative to the splitting group acting on the fan.
//!
//! The class group is the cokernel of the divisor map `M -> Z[rays]`. The
//! Brauer invariant is the kernel of the induced map
//! `H^2(G, M) -> H^2(G, Z[rays])`; it depends only on the rays, so fans with
//! higher-dimensional cones are handled through their truncation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fan::{is_smooth, orbit_count, ray_orbits, GFan};
use crate::group::{kernel_of_h2_map_via_presentation, kernel_of_h2_map_with_limits, Limits};
use crate::linalg::{cokernel, FinAbGroup};
use crate::toric::{divisor_map, pure_divisorial_truncation, tropical_int_check, TropicalCheck};

pub fn class_group(fan: &GFan) -> Result<FinAbGroup> {
    Ok(cokernel(divisor_map(fan)?.matrix()))
}

/// Kernel of `H^2(G, M) -> H^2(G, Z[rays])` for a pure-divisorial fan.
pub fn brauer_kernel(fan: &GFan) -> Result<FinAbGroup> {
    brauer_kernel_with_limits(fan, &Limits::default())
}

pub fn brauer_kernel_with_limits(fan: &GFan, limits: &Limits) -> Result<FinAbGroup> {
    if !fan.is_pure_divisorial() {
        return Err(Error::NotPureDivisorial);
    }
    kernel_of_h2_map_with_limits(&divisor_map(fan)?, limits)
}

/// Same kernel, computed from the cohomology presentations instead of by
/// lifting cochains.
pub fn brauer_kernel_via_presentation(fan: &GFan) -> Result<FinAbGroup> {
    if !fan.is_pure_divisorial() {
        return Err(Error::NotPureDivisorial);
    }
    kernel_of_h2_map_via_presentation(&divisor_map(fan)?)
}

#[derive(Clone, Debug)]
pub struct OrbitSummary {
    pub size: usize,
    pub stabilizer_order: usize,
    pub rays: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub group_order: usize,
    pub rank: usize,
    pub smooth: bool,
    pub pure_divisorial: bool,
    pub orbit_count: usize,
    pub ray_orbits: Vec<OrbitSummary>,
    pub class_group: FinAbGroup,
    pub brauer_kernel: FinAbGroup,
    /// Whether the Brauer kernel was computed on the truncation.
    pub truncated: bool,
    pub tropical_check: TropicalCheck,
}

impl InvariantReport {
    pub fn summary_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.push(format!("group order: {}", self.group_order));
        out.push(format!("lattice rank: {}", self.rank));
        out.push(format!("smooth: {}", self.smooth));
        out.push(format!("pure divisorial: {}", self.pure_divisorial));
        out.push(format!("torus orbits: {}", self.orbit_count));
        for (i, o) in self.ray_orbits.iter().enumerate() {
            out.push(format!(
                "ray orbit {i}: rays {:?}, size {}, stabilizer order {}",
                o.rays, o.size, o.stabilizer_order
            ));
        }
        out.push(format!("class group: {}", self.class_group));
        out.push(format!("brauer kernel: {}", self.brauer_kernel));
        out.push(format!(
            "lattice support check (bound {}): {}",
            self.tropical_check.bound,
            if self.tropical_check.passed { "ok" } else { "failed" }
        ));
        out
    }
}

/// All invariants of a validated fan. Errors carry the name of the stage
/// that failed.
pub fn full_report(fan: &GFan, bound: u64) -> Result<InvariantReport> {
    full_report_with_limits(fan, bound, &Limits::default())
}

pub fn full_report_with_limits(fan: &GFan, bound: u64, limits: &Limits) -> Result<InvariantReport> {
    let smooth = is_smooth(fan);
    let pure_divisorial = fan.is_pure_divisorial();
    let ray_orbits = ray_orbits(fan)
        .map_err(|e| e.in_stage("ray orbits"))?
        .into_iter()
        .map(|o| OrbitSummary {
            size: o.rays.len(),
            stabilizer_order: o.stabilizer.order(),
            rays: o.rays,
        })
        .collect();
    let class_group = class_group(fan).map_err(|e| e.in_stage("class group"))?;
    let truncated_fan;
    let base = if pure_divisorial {
        fan
    } else {
        truncated_fan = pure_divisorial_truncation(fan);
        &truncated_fan
    };
    let brauer_kernel =
        brauer_kernel_with_limits(base, limits).map_err(|e| e.in_stage("brauer kernel"))?;
    let tropical_check =
        tropical_int_check(base, bound).map_err(|e| e.in_stage("lattice support check"))?;
    Ok(InvariantReport {
        group_order: fan.group().order(),
        rank: fan.rank(),
        smooth,
        pure_divisorial,
        orbit_count: orbit_count(fan),
        ray_orbits,
        class_group,
        brauer_kernel,
        truncated: !pure_divisorial,
        tropical_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Ray;
    use crate::group::{FiniteGroup, GLattice};
    use crate::linalg::IntMatrix;
    use crate::BigInt;
    use alloc::vec;

    fn two_rays(n: i64) -> GFan {
        GFan::with_trivial_action(2, &[&[1, 0], &[-1, n]], &[vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn class_groups_of_two_ray_family() {
        assert_eq!(class_group(&two_rays(0)).unwrap(), FinAbGroup::free(1));
        assert_eq!(class_group(&two_rays(1)).unwrap(), FinAbGroup::trivial());
        for n in 2..=5u64 {
            assert_eq!(class_group(&two_rays(n as i64)).unwrap(), FinAbGroup::cyclic(n));
        }
    }

    #[test]
    fn trivial_action_has_no_brauer_kernel() {
        for n in 0..=5 {
            assert!(brauer_kernel(&two_rays(n)).unwrap().is_trivial());
        }
    }

    #[test]
    fn rank_three_swap_example() {
        let mut swap = IntMatrix::identity(3);
        swap[(1, 1)] = BigInt::from(0);
        swap[(2, 2)] = BigInt::from(0);
        swap[(1, 2)] = BigInt::from(1);
        swap[(2, 1)] = BigInt::from(1);
        let lat = GLattice::new(FiniteGroup::cyclic(2), 3, vec![IntMatrix::identity(3), swap]).unwrap();
        let f = GFan::new(
            3,
            vec![Ray::from_i64(&[1, 1, 0]), Ray::from_i64(&[1, 0, 1])],
            &[vec![0], vec![1]],
            lat,
        )
        .unwrap();
        let expected = FinAbGroup::cyclic(2);
        assert_eq!(brauer_kernel(&f).unwrap(), expected);
        assert_eq!(brauer_kernel_via_presentation(&f).unwrap(), expected);
    }

    #[test]
    fn report_on_p2_uses_truncation() {
        let f = GFan::with_trivial_action(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1]],
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let r = full_report(&f, 3).unwrap();
        assert!(r.truncated && r.smooth && !r.pure_divisorial);
        assert_eq!(r.orbit_count, 7);
        assert_eq!(r.class_group, FinAbGroup::free(1));
        assert!(r.brauer_kernel.is_trivial());
        assert!(r.tropical_check.passed);
    }

    #[test]
    fn stage_annotation() {
        let f = two_rays(1);
        let tight = Limits {
            max_group_order: 12,
            max_rank: 1,
        };
        let err = full_report_with_limits(&f, 2, &tight).unwrap_err();
        assert!(matches!(err, Error::Stage { stage: "brauer kernel", .. }));
    }
}
