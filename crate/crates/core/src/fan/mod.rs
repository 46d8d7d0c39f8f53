//! Smooth fans in a cocharacter lattice `N` with a compatible finite group action.
//!
//! A fan is stored as a ray list plus the full face-closed list of cones,
//! each cone a sorted set of ray indices (the zero cone is the empty set).
//! The group acts on `N` through a [`GLattice`]; a valid fan has every ray
//! image equal to another ray and every cone image equal to another cone.
//! This is the descent datum of a toric variety over `k` split by `G`.

mod support;
mod validate;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GLattice, Subgroup};
use crate::linalg::{invariant_factors, IntMatrix};

pub use support::{support_lattice_points, support_lattice_points_by_enumeration};
pub use validate::{validate_fan, ValidationIssue, ValidationReport};

/// A ray of the fan, given by its primitive generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    generator: Vec<BigInt>,
}

impl Ray {
    pub fn new(generator: Vec<BigInt>) -> Self {
        Ray { generator }
    }

    pub fn from_i64(generator: &[i64]) -> Self {
        Ray::new(generator.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn generator(&self) -> &[BigInt] {
        &self.generator
    }
}

/// A cone, as the sorted set of its ray indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cone {
    rays: Vec<usize>,
}

impl Cone {
    pub fn new(rays: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = rays.into_iter().collect();
        Cone {
            rays: set.into_iter().collect(),
        }
    }

    pub fn zero() -> Self {
        Cone::default()
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn contains_ray(&self, r: usize) -> bool {
        self.rays.binary_search(&r).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|&r| other.contains_ray(r))
    }

    /// All subsets of the ray set, including the zero cone and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        let k = self.rays.len();
        (0u64..1 << k)
            .map(|mask| {
                Cone::new(
                    (0..k)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| self.rays[i]),
                )
            })
            .collect()
    }
}

/// A fan with a group action on its lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFan {
    rank: usize,
    rays: Vec<Ray>,
    cones: Vec<Cone>,
    lattice: GLattice,
}

impl GFan {
    /// Assembles a fan from an explicit cone list without any checking;
    /// use [`validate_fan`] before relying on it.
    pub fn from_parts(rank: usize, rays: Vec<Ray>, cones: Vec<Cone>, lattice: GLattice) -> Self {
        let mut cones = cones;
        cones.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        cones.dedup();
        GFan {
            rank,
            rays,
            cones,
            lattice,
        }
    }

    /// Materializes all faces of the given maximal cones (and the zero cone)
    /// without checking anything else.
    pub fn from_max_cones_unchecked(
        rank: usize,
        rays: Vec<Ray>,
        max_cones: &[Vec<usize>],
        lattice: GLattice,
    ) -> Self {
        let mut cones: BTreeSet<Cone> = BTreeSet::from([Cone::zero()]);
        for c in max_cones {
            let c = Cone::new(c.iter().copied());
            // guard the subset enumeration against absurd inputs; validation reports them
            if c.dim() <= 20 {
                cones.extend(c.faces());
            } else {
                cones.insert(c);
            }
        }
        Self::from_parts(rank, rays, cones.into_iter().collect(), lattice)
    }

    /// Builds and validates a fan from its maximal cones.
    pub fn new(
        rank: usize,
        rays: Vec<Ray>,
        max_cones: &[Vec<usize>],
        lattice: GLattice,
    ) -> Result<Self> {
        let fan = Self::from_max_cones_unchecked(rank, rays, max_cones, lattice);
        validate_fan(&fan).into_result()?;
        Ok(fan)
    }

    /// A fan with trivial group action.
    pub fn with_trivial_action(rank: usize, rays: &[&[i64]], max_cones: &[Vec<usize>]) -> Result<Self> {
        let rays = rays.iter().map(|r| Ray::from_i64(r)).collect();
        Self::new(rank, rays, max_cones, GLattice::trivial(FiniteGroup::trivial(), rank))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn lattice(&self) -> &GLattice {
        &self.lattice
    }

    pub fn group(&self) -> &FiniteGroup {
        self.lattice.group()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones.binary_search_by(|x| x.dim().cmp(&c.dim()).then_with(|| x.cmp(c))).is_ok()
    }

    /// Cones not contained in any other cone.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| {
                !self
                    .cones
                    .iter()
                    .any(|d| d.dim() > c.dim() && c.is_face_of(d))
            })
            .collect()
    }

    /// The `rank x dim` matrix whose columns are the cone's ray generators.
    pub fn generator_matrix(&self, c: &Cone) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = c
            .rays()
            .iter()
            .map(|&r| self.rays[r].generator.clone())
            .collect();
        IntMatrix::from_columns(self.rank, &cols)
    }

    /// The `rank x #rays` matrix of all ray generators.
    pub fn ray_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.rays.iter().map(|r| r.generator.clone()).collect();
        IntMatrix::from_columns(self.rank, &cols)
    }

    /// Where `g` sends each ray, or `None` if some image is not a ray.
    pub fn ray_permutation(&self, g: usize) -> Option<Vec<usize>> {
        let a = self.lattice.action(g);
        self.rays
            .iter()
            .map(|r| {
                let image = a.mul_vec(&r.generator).ok()?;
                self.rays.iter().position(|s| s.generator == image)
            })
            .collect()
    }

    /// Image of a cone under `g`, given `g`'s ray permutation.
    pub fn cone_image(perm: &[usize], c: &Cone) -> Cone {
        Cone::new(c.rays().iter().map(|&r| perm[r]))
    }

    /// Whether every group element maps the cone's ray set to itself.
    pub fn is_stable_cone(&self, c: &Cone) -> bool {
        self.group().elements().all(|g| {
            self.ray_permutation(g)
                .is_some_and(|p| Self::cone_image(&p, c) == *c)
        })
    }

    /// Every cone has dimension at most one.
    pub fn is_pure_divisorial(&self) -> bool {
        self.cones.iter().all(|c| c.dim() <= 1)
    }

    /// Same rays and action, with only the listed cones (faces must be included).
    pub(crate) fn with_cones(&self, cones: Vec<Cone>) -> GFan {
        GFan::from_parts(self.rank, self.rays.clone(), cones, self.lattice.clone())
    }
}

/// The cone's generators extend to a basis of `N`: all invariant factors
/// of the generator matrix are 1 and there is one per generator.
pub fn is_smooth_cone(fan: &GFan, c: &Cone) -> Result<bool> {
    if !fan.contains_cone(c) {
        return Err(Error::ConeNotInFan);
    }
    let factors = invariant_factors(&fan.generator_matrix(c));
    Ok(factors.len() == c.dim() && factors.iter().all(One::is_one))
}

pub fn is_smooth(fan: &GFan) -> bool {
    fan.cones()
        .iter()
        .all(|c| is_smooth_cone(fan, c).unwrap_or(false))
}

/// Number of torus orbits, one per cone.
pub fn orbit_count(fan: &GFan) -> usize {
    fan.cones().len()
}

pub fn orbit_dimension(fan: &GFan, c: &Cone) -> Result<usize> {
    if !fan.contains_cone(c) {
        return Err(Error::ConeNotInFan);
    }
    Ok(fan.rank() - c.dim())
}

/// A group orbit of rays and the stabilizer of its first (smallest) ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayOrbit {
    pub rays: Vec<usize>,
    pub stabilizer: Subgroup,
}

/// Partitions the rays into orbits, ordered by smallest ray index.
pub fn ray_orbits(fan: &GFan) -> Result<Vec<RayOrbit>> {
    let group = fan.group();
    let perms = group
        .elements()
        .map(|g| {
            fan.ray_permutation(g)
                .ok_or(Error::InvalidFan(alloc::format!("group element {g} does not permute the rays")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut assigned = alloc::vec![false; fan.rays().len()];
    let mut orbits = Vec::new();
    for r in 0..fan.rays().len() {
        if assigned[r] {
            continue;
        }
        let members: BTreeSet<usize> = perms.iter().map(|p| p[r]).collect();
        for &m in &members {
            assigned[m] = true;
        }
        let fixing: Vec<usize> = group.elements().filter(|&g| perms[g][r] == r).collect();
        orbits.push(RayOrbit {
            rays: members.into_iter().collect(),
            stabilizer: group.subgroup(&fixing)?,
        });
    }
    Ok(orbits)
}
