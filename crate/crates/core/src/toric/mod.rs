//! Morphisms of fans and the constructions built from ray orbits: the
//! pure-divisorial truncation, the standard fan of a family of subgroups, the
//! covering morphism `rho` from it and the dual divisor map on characters.

mod affine;
mod tropical;

pub use affine::{affine_structure, AffineStructure};
pub use tropical::{tropical_int_check, TropicalCheck};

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fan::{is_smooth, ray_orbits, Cone, GFan, Ray};
use crate::group::{permutation_module, FiniteGroup, GLattice, GLatticeMap, Subgroup};
use crate::linalg::{in_simplicial_cone, IntMatrix};

/// A `G`-equivariant lattice map sending every cone of `source` into a cone
/// of `target`. `matrix` is `target.rank x source.rank`.
#[derive(Clone, Debug)]
pub struct FanMorphism {
    source: GFan,
    target: GFan,
    matrix: IntMatrix,
}

impl FanMorphism {
    pub fn new(source: GFan, target: GFan, matrix: IntMatrix) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::IncompatibleModules(
                "fans are acted on by different groups".into(),
            ));
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch {
                context: "fan morphism matrix",
                expected: target.rank(),
                found: matrix.rows(),
            });
        }
        GLatticeMap::new(source.lattice().clone(), target.lattice().clone(), matrix.clone())?;
        let m = FanMorphism {
            source,
            target,
            matrix,
        };
        for c in m.source.maximal_cones() {
            if m.image_cone(c)?.is_none() {
                return Err(Error::NotAFanMorphism(format!(
                    "image of cone {:?} lies in no cone of the target",
                    c.rays()
                )));
            }
        }
        Ok(m)
    }

    pub fn source(&self) -> &GFan {
        &self.source
    }

    pub fn target(&self) -> &GFan {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// The underlying equivariant map of cocharacter lattices.
    pub fn lattice_map(&self) -> GLatticeMap {
        GLatticeMap::new(
            self.source.lattice().clone(),
            self.target.lattice().clone(),
            self.matrix.clone(),
        )
        .expect("checked at construction")
    }

    /// The smallest target cone containing the image of `c`, if any.
    pub fn image_cone(&self, c: &Cone) -> Result<Option<Cone>> {
        let images = c
            .rays()
            .iter()
            .map(|&r| self.matrix.mul_vec(self.source.rays()[r].generator()))
            .collect::<Result<Vec<_>>>()?;
        for t in self.target.cones() {
            let gens = self.target.generator_matrix(t);
            let mut all = true;
            for p in &images {
                if !in_simplicial_cone(&gens, p)? {
                    all = false;
                    break;
                }
            }
            // cones are sorted by dimension, so the first hit is minimal
            if all {
                return Ok(Some(t.clone()));
            }
        }
        Ok(None)
    }
}

/// The subfan of cones of dimension at most one.
pub fn pure_divisorial_truncation(fan: &GFan) -> GFan {
    let cones = fan.cones().iter().filter(|c| c.dim() <= 1).cloned().collect();
    fan.with_cones(cones)
}

/// The open immersion of the truncation into the fan.
pub fn truncation_inclusion(fan: &GFan) -> Result<FanMorphism> {
    FanMorphism::new(
        pure_divisorial_truncation(fan),
        fan.clone(),
        IntMatrix::identity(fan.rank()),
    )
}

/// The fan in `N0 = Z[G/H_1] + ... + Z[G/H_r]` whose rays are the standard
/// basis vectors, with no cones of dimension two or more.
pub fn standard_fan(group: &FiniteGroup, subgroups: &[Subgroup]) -> Result<GFan> {
    let mut lattice = GLattice::trivial(group.clone(), 0);
    for h in subgroups {
        lattice = lattice.direct_sum(&permutation_module(group, h)?)?;
    }
    let d = lattice.rank();
    let rays = (0..d)
        .map(|i| {
            let mut v = alloc::vec![BigInt::from(0); d];
            v[i] = BigInt::from(1);
            Ray::new(v)
        })
        .collect();
    let cones: Vec<Vec<usize>> = (0..d).map(|i| alloc::vec![i]).collect();
    GFan::new(d, rays, &cones, lattice)
}

/// The covering morphism from the standard fan of the ray-orbit
/// stabilizers onto a pure-divisorial fan.
#[derive(Clone, Debug)]
pub struct StandardCover {
    pub morphism: FanMorphism,
    /// `basis_rays[j]` is the ray of the target hit by the `j`-th basis vector.
    pub basis_rays: Vec<usize>,
}

/// Builds `rho: N0 -> N`. Orbit `i` with smallest ray `v` and stabilizer `H_i`
/// contributes the basis vectors `sigma H_i`, sent to `sigma . v`, where
/// `sigma` is the smallest element of its coset.
pub fn rho_map(fan: &GFan) -> Result<StandardCover> {
    if !fan.is_pure_divisorial() {
        return Err(Error::NotPureDivisorial);
    }
    if !is_smooth(fan) {
        return Err(Error::NotSmooth);
    }
    let group = fan.group();
    let orbits = ray_orbits(fan)?;
    let stabilizers: Vec<Subgroup> = orbits.iter().map(|o| o.stabilizer.clone()).collect();
    let standard = standard_fan(group, &stabilizers)?;
    let mut columns = Vec::new();
    let mut basis_rays = Vec::new();
    for orbit in &orbits {
        let r0 = orbit.rays[0];
        for coset in orbit.stabilizer.left_cosets(group) {
            let sigma = coset[0];
            let perm = fan
                .ray_permutation(sigma)
                .ok_or_else(|| Error::InvalidFan(format!("group element {sigma} does not permute the rays")))?;
            columns.push(fan.rays()[perm[r0]].generator().to_vec());
            basis_rays.push(perm[r0]);
        }
    }
    let matrix = IntMatrix::from_columns(fan.rank(), &columns);
    let morphism = FanMorphism::new(standard, fan.clone(), matrix)
        .map_err(|e| Error::Internal(format!("standard cover is not a fan morphism: {e}")))?;
    Ok(StandardCover {
        morphism,
        basis_rays,
    })
}

/// The permutation lattice `Z[rays]` with `g e_r = e_{g r}`.
pub fn ray_permutation_lattice(fan: &GFan) -> Result<GLattice> {
    let perms = fan
        .group()
        .elements()
        .map(|g| {
            fan.ray_permutation(g)
                .ok_or_else(|| Error::InvalidFan(format!("group element {g} does not permute the rays")))
        })
        .collect::<Result<Vec<_>>>()?;
    GLattice::from_permutations(fan.group().clone(), &perms)
}

/// The divisor map `M -> Z[rays]`, `m -> (<m, v_r>)_r`, whose matrix has the
/// ray generators as rows. `M` carries the dual action.
pub fn divisor_map(fan: &GFan) -> Result<GLatticeMap> {
    let m = fan.lattice().dual();
    let target = ray_permutation_lattice(fan)?;
    GLatticeMap::new(m, target, fan.ray_matrix().transpose())
}

/// Checks `<D m, e_{r(j)}> = <m, rho(e_j)>` for every basis character `m`
/// and basis vector `e_j` of the standard lattice.
pub fn pairing_identity_holds(fan: &GFan) -> Result<bool> {
    let cover = rho_map(fan)?;
    let d = divisor_map(fan)?;
    let rho = cover.morphism.matrix();
    for (j, &r) in cover.basis_rays.iter().enumerate() {
        for i in 0..fan.rank() {
            if d.matrix()[(r, i)] != rho[(i, j)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn swap2() -> GLattice {
        GLattice::from_permutations(FiniteGroup::cyclic(2), &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn p2() -> GFan {
        GFan::with_trivial_action(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1]],
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()
    }

    #[test]
    fn truncation_of_p2() {
        let t = pure_divisorial_truncation(&p2());
        assert_eq!(t.cones().len(), 4);
        assert!(t.is_pure_divisorial());
        assert!(truncation_inclusion(&p2()).is_ok());
    }

    #[test]
    fn rho_for_two_rays() {
        let n = 3;
        let f = GFan::with_trivial_action(2, &[&[1, 0], &[-1, n]], &[vec![0], vec![1]]).unwrap();
        let cover = rho_map(&f).unwrap();
        assert_eq!(cover.morphism.matrix(), &IntMatrix::from_rows(&[[1, -1], [0, n]]));
        assert_eq!(cover.basis_rays, vec![0, 1]);
        let d = divisor_map(&f).unwrap();
        assert_eq!(d.matrix(), &IntMatrix::from_rows(&[[1, 0], [-1, n]]));
        assert!(pairing_identity_holds(&f).unwrap());
    }

    #[test]
    fn rho_for_sign_action() {
        let g = FiniteGroup::cyclic(2);
        let lat = GLattice::character(g, |x| if x == 0 { 1 } else { -1 }).unwrap();
        let f = GFan::new(
            1,
            vec![Ray::from_i64(&[1]), Ray::from_i64(&[-1])],
            &[vec![0], vec![1]],
            lat,
        )
        .unwrap();
        let cover = rho_map(&f).unwrap();
        assert_eq!(cover.morphism.matrix(), &IntMatrix::from_rows(&[[1, -1]]));
        assert_eq!(cover.morphism.source().rank(), 2);
        assert!(pairing_identity_holds(&f).unwrap());
    }

    #[test]
    fn rho_rejects_higher_cones() {
        assert!(matches!(rho_map(&p2()), Err(Error::NotPureDivisorial)));
    }

    #[test]
    fn standard_fan_ranks() {
        let s3 = FiniteGroup::symmetric3();
        let h = s3.subgroup(&[0, 3]).unwrap();
        let v = standard_fan(&s3, &[h, s3.whole()]).unwrap();
        assert_eq!(v.rank(), 4);
        assert_eq!(v.rays().len(), 4);
        assert_eq!(v.cones().len(), 5);
        let empty = standard_fan(&s3, &[]).unwrap();
        assert_eq!(empty.rank(), 0);
        assert_eq!(empty.cones().len(), 1);
    }

    #[test]
    fn morphism_rejects_non_equivariant_matrix() {
        let f = GFan::new(
            2,
            vec![Ray::from_i64(&[1, 0]), Ray::from_i64(&[0, 1])],
            &[vec![0], vec![1]],
            swap2(),
        )
        .unwrap();
        let m = IntMatrix::from_rows(&[[1, 0], [0, 0]]);
        assert!(FanMorphism::new(f.clone(), f, m).is_err());
    }

    #[test]
    fn morphism_rejects_cone_escape() {
        let a = GFan::with_trivial_action(1, &[&[1]], &[vec![0]]).unwrap();
        let neg = IntMatrix::from_rows(&[[-1]]);
        assert!(matches!(
            FanMorphism::new(a.clone(), a, neg),
            Err(Error::NotAFanMorphism(_))
        ));
    }
}
