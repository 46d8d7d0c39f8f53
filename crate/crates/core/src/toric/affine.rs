use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fan::{is_smooth_cone, ray_orbits, Cone, GFan};
use crate::group::{GLattice, Subgroup};
use crate::linalg::kernel_basis;

/// Structure of the affine piece of a `G`-stable smooth cone: a product of
/// Weil restrictions of the affine line, one per ray orbit, times a torus.
#[derive(Clone, Debug)]
pub struct AffineStructure {
    /// Stabilizer of the smallest ray of each orbit in the cone.
    pub res_factors: Vec<Subgroup>,
    /// The ray orbits, as indices into the fan's rays.
    pub orbits: Vec<Vec<usize>>,
    /// Characters vanishing on the cone: the units modulo constants.
    pub units: GLattice,
    /// Permutation lattice on the cone's rays, in the cone's ray order.
    pub divisor_module: GLattice,
}

pub fn affine_structure(fan: &GFan, cone: &Cone) -> Result<AffineStructure> {
    if !is_smooth_cone(fan, cone)? {
        return Err(Error::NotSmooth);
    }
    if !fan.is_stable_cone(cone) {
        return Err(Error::NotDescendable);
    }
    let (res_factors, orbits) = ray_orbits(fan)?
        .into_iter()
        .filter(|o| cone.contains_ray(o.rays[0]))
        .map(|o| (o.stabilizer, o.rays))
        .unzip();

    let m = fan.lattice().dual();
    let perp = kernel_basis(&fan.generator_matrix(cone).transpose());
    let units = m.sublattice(&perp)?;

    let local = |r: usize| cone.rays().iter().position(|&s| s == r).expect("cone is stable");
    let perms: Vec<Vec<usize>> = fan
        .group()
        .elements()
        .map(|g| {
            let p = fan.ray_permutation(g).expect("cone is stable");
            cone.rays().iter().map(|&r| local(p[r])).collect()
        })
        .collect();
    let divisor_module = GLattice::from_permutations(fan.group().clone(), &perms)?;
    Ok(AffineStructure {
        res_factors,
        orbits,
        units,
        divisor_module,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Ray;
    use crate::group::FiniteGroup;
    use alloc::vec;

    fn swap_fan() -> GFan {
        let lat =
            GLattice::from_permutations(FiniteGroup::cyclic(2), &[vec![0, 1], vec![1, 0]]).unwrap();
        GFan::new(
            2,
            vec![Ray::from_i64(&[1, 0]), Ray::from_i64(&[0, 1])],
            &[vec![0, 1]],
            lat,
        )
        .unwrap()
    }

    #[test]
    fn swapped_plane() {
        let f = swap_fan();
        let a = affine_structure(&f, &Cone::new([0, 1])).unwrap();
        assert_eq!(a.res_factors.len(), 1);
        assert_eq!(a.res_factors[0].order(), 1);
        assert_eq!(a.orbits, vec![vec![0, 1]]);
        assert_eq!(a.units.rank(), 0);
        assert_eq!(a.divisor_module.rank(), 2);
    }

    #[test]
    fn zero_cone_is_a_torus() {
        let f = swap_fan();
        let a = affine_structure(&f, &Cone::zero()).unwrap();
        assert!(a.res_factors.is_empty());
        assert_eq!(a.units.rank(), 2);
    }

    #[test]
    fn unstable_cone() {
        let f = swap_fan();
        assert!(matches!(
            affine_structure(&f, &Cone::new([0])),
            Err(Error::NotDescendable)
        ));
        assert!(matches!(
            affine_structure(&f, &Cone::new([5])),
            Err(Error::ConeNotInFan)
        ));
    }
}
