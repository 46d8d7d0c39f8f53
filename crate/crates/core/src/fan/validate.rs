use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Cone, GFan};
use crate::error::{Error, Result};
use crate::linalg::{content, kernel_basis, rank, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationIssue {
    LatticeRankMismatch { fan_rank: usize, lattice_rank: usize },
    RayWrongLength { ray: usize, expected: usize, found: usize },
    ZeroRay { ray: usize },
    NonPrimitiveRay { ray: usize },
    DuplicateRay { first: usize, second: usize },
    RayIndexOutOfRange { cone: Vec<usize>, index: usize },
    RayNotInAnyCone { ray: usize },
    MissingZeroCone,
    MissingFace { cone: Vec<usize>, face: Vec<usize> },
    NotSimplicial { cone: Vec<usize> },
    BadIntersection { first: Vec<usize>, second: Vec<usize> },
    RayImageMissing { element: usize, ray: usize },
    ConeImageMissing { element: usize, cone: Vec<usize> },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ValidationIssue::*;
        match self {
            LatticeRankMismatch {
                fan_rank,
                lattice_rank,
            } => write!(f, "lattice action has rank {lattice_rank}, fan has rank {fan_rank}"),
            RayWrongLength {
                ray,
                expected,
                found,
            } => write!(f, "ray {ray} has {found} coordinates, expected {expected}"),
            ZeroRay { ray } => write!(f, "ray {ray} is zero"),
            NonPrimitiveRay { ray } => write!(f, "ray {ray} not primitive"),
            DuplicateRay { first, second } => write!(f, "rays {first} and {second} coincide"),
            RayIndexOutOfRange { cone, index } => {
                write!(f, "cone {cone:?} refers to missing ray {index}")
            }
            RayNotInAnyCone { ray } => write!(f, "ray {ray} is not a cone of the fan"),
            MissingZeroCone => write!(f, "zero cone missing"),
            MissingFace { cone, face } => {
                write!(f, "face closure: cone {cone:?} has face {face:?} which is not in the fan")
            }
            NotSimplicial { cone } => {
                write!(f, "cone {cone:?} has linearly dependent generators")
            }
            BadIntersection { first, second } => write!(
                f,
                "cones {first:?} and {second:?} do not meet in a common face"
            ),
            RayImageMissing { element, ray } => write!(
                f,
                "group element {element} maps ray {ray} outside the ray list"
            ),
            ConeImageMissing { element, cone } => write!(
                f,
                "group element {element} maps cone {cone:?} to a non-cone"
            ),
        }
    }
}

/// Every violated fan invariant; empty means valid.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.issues.first() {
            None => Ok(()),
            Some(issue) => Err(Error::InvalidFan(format!("{issue}"))),
        }
    }

    pub fn messages(&self) -> Vec<String> {
        self.issues.iter().map(|i| format!("{i}")).collect()
    }
}

/// Checks every fan invariant, collecting all violations. Never panics.
pub fn validate_fan(fan: &GFan) -> ValidationReport {
    let mut issues = Vec::new();
    let n = fan.rank();
    if fan.lattice().rank() != n {
        issues.push(ValidationIssue::LatticeRankMismatch {
            fan_rank: n,
            lattice_rank: fan.lattice().rank(),
        });
    }

    let mut rays_ok = true;
    for (i, r) in fan.rays().iter().enumerate() {
        let v = r.generator();
        if v.len() != n {
            issues.push(ValidationIssue::RayWrongLength {
                ray: i,
                expected: n,
                found: v.len(),
            });
            rays_ok = false;
            continue;
        }
        let c = content(v);
        if c.is_zero() {
            issues.push(ValidationIssue::ZeroRay { ray: i });
        } else if c > BigInt::from(1) {
            issues.push(ValidationIssue::NonPrimitiveRay { ray: i });
        }
        if let Some(j) = fan.rays()[..i].iter().position(|s| s.generator() == v) {
            issues.push(ValidationIssue::DuplicateRay { first: j, second: i });
        }
    }

    let mut cones_ok = true;
    let cone_set: BTreeSet<&Cone> = fan.cones().iter().collect();
    for c in fan.cones() {
        if let Some(&bad) = c.rays().iter().find(|&&r| r >= fan.rays().len()) {
            issues.push(ValidationIssue::RayIndexOutOfRange {
                cone: c.rays().to_vec(),
                index: bad,
            });
            cones_ok = false;
        }
    }
    if !cone_set.contains(&Cone::zero()) {
        issues.push(ValidationIssue::MissingZeroCone);
    }
    for r in 0..fan.rays().len() {
        if !cone_set.contains(&Cone::new([r])) {
            issues.push(ValidationIssue::RayNotInAnyCone { ray: r });
        }
    }
    for c in fan.cones() {
        // immediate facets suffice: closure follows by induction
        for skip in 0..c.dim() {
            let face = Cone::new(
                c.rays()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &r)| r),
            );
            if !cone_set.contains(&face) {
                issues.push(ValidationIssue::MissingFace {
                    cone: c.rays().to_vec(),
                    face: face.rays().to_vec(),
                });
            }
        }
    }

    if !(rays_ok && cones_ok) {
        return ValidationReport { issues };
    }

    let mut simplicial = Vec::with_capacity(fan.cones().len());
    for c in fan.cones() {
        let ok = rank(&fan.generator_matrix(c)) == c.dim();
        if !ok {
            issues.push(ValidationIssue::NotSimplicial {
                cone: c.rays().to_vec(),
            });
        }
        simplicial.push(ok);
    }

    let maximal = fan.maximal_cones();
    for (i, a) in maximal.iter().enumerate() {
        for b in &maximal[i + 1..] {
            let ia = fan.cones().iter().position(|c| c == *a).unwrap();
            let ib = fan.cones().iter().position(|c| c == *b).unwrap();
            if !(simplicial[ia] && simplicial[ib]) {
                continue;
            }
            if !meet_in_common_face(fan, a, b) {
                issues.push(ValidationIssue::BadIntersection {
                    first: a.rays().to_vec(),
                    second: b.rays().to_vec(),
                });
            }
        }
    }

    if fan.lattice().rank() == n {
        for g in fan.group().elements() {
            let a = fan.lattice().action(g);
            let mut perm = Vec::with_capacity(fan.rays().len());
            for (i, r) in fan.rays().iter().enumerate() {
                let image = a.mul_vec(r.generator()).unwrap();
                match fan.rays().iter().position(|s| s.generator() == image.as_slice()) {
                    Some(j) => perm.push(j),
                    None => {
                        issues.push(ValidationIssue::RayImageMissing { element: g, ray: i });
                    }
                }
            }
            if perm.len() != fan.rays().len() {
                continue;
            }
            for c in fan.cones() {
                if !cone_set.contains(&GFan::cone_image(&perm, c)) {
                    issues.push(ValidationIssue::ConeImageMissing {
                        element: g,
                        cone: c.rays().to_vec(),
                    });
                }
            }
        }
    }

    ValidationReport { issues }
}

/// For simplicial cones `a`, `b`: whether `a ∩ b` is the cone on their
/// common rays. Fails exactly when some nonzero point is a nonnegative
/// combination of `a`'s rays with weight on a ray not in `b` and also of
/// `b`'s rays, which is decided by a linear feasibility problem.
fn meet_in_common_face(fan: &GFan, a: &Cone, b: &Cone) -> bool {
    let only_a: Vec<usize> = a.rays().iter().copied().filter(|&r| !b.contains_ray(r)).collect();
    let only_b: Vec<usize> = b.rays().iter().copied().filter(|&r| !a.contains_ray(r)).collect();
    let common: Vec<usize> = a.rays().iter().copied().filter(|&r| b.contains_ray(r)).collect();
    if only_a.is_empty() || only_b.is_empty() {
        // one is a face of the other
        return true;
    }
    // columns: only_a | common | -only_b ; kernel vectors are the relations
    let n = fan.rank();
    let mut m = IntMatrix::zeros(n, only_a.len() + common.len() + only_b.len());
    let cols = only_a.iter().chain(&common).chain(&only_b).enumerate();
    for (j, &r) in cols {
        let sign = if j >= only_a.len() + common.len() { -1 } else { 1 };
        for (i, x) in fan.rays()[r].generator().iter().enumerate() {
            m[(i, j)] = x * sign;
        }
    }
    let k = kernel_basis(&m);
    if k.cols() == 0 {
        return true;
    }
    let signed_rows: Vec<usize> = (0..only_a.len())
        .chain(only_a.len() + common.len()..m.cols())
        .collect();
    let p = k.select_rows(&signed_rows);
    !nonzero_nonnegative_point(&p)
}

/// Whether some `t` has `P t >= 0` componentwise with `P t != 0`, by
/// Fourier-Motzkin elimination with exact integer coefficients.
fn nonzero_nonnegative_point(p: &IntMatrix) -> bool {
    // inequalities a . t >= b
    let vars = p.cols();
    let mut system: Vec<(Vec<BigInt>, BigInt)> = (0..p.rows())
        .map(|i| (p.row(i).to_vec(), BigInt::zero()))
        .collect();
    let total: Vec<BigInt> = (0..vars)
        .map(|j| (0..p.rows()).fold(BigInt::zero(), |s, i| s + &p[(i, j)]))
        .collect();
    system.push((total, BigInt::from(1)));

    for v in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in system {
            if ineq.0[v].is_positive() {
                pos.push(ineq);
            } else if ineq.0[v].is_negative() {
                neg.push(ineq);
            } else {
                rest.push(ineq);
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let cp = -&na[v];
                let cn = pa[v].clone();
                let a: Vec<BigInt> = pa.iter().zip(na).map(|(x, y)| x * &cp + y * &cn).collect();
                let b = pb * &cp + nb * &cn;
                rest.push(normalize(a, b));
            }
        }
        rest.sort();
        rest.dedup();
        system = rest;
    }
    system.iter().all(|(_, b)| !b.is_positive())
}

fn normalize(a: Vec<BigInt>, b: BigInt) -> (Vec<BigInt>, BigInt) {
    let g = a.iter().fold(b.abs(), |g, x| g.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        return (a, b);
    }
    (a.iter().map(|x| x / &g).collect(), b / &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Ray;
    use crate::group::{FiniteGroup, GLattice};
    use alloc::vec;
    use alloc::vec::Vec;

    fn raw(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> GFan {
        GFan::from_parts(
            rank,
            rays.iter().map(|r| Ray::from_i64(r)).collect(),
            cones.iter().map(|c| Cone::new(c.iter().copied())).collect(),
            GLattice::trivial(FiniteGroup::trivial(), rank),
        )
    }

    fn issues(f: &GFan) -> Vec<ValidationIssue> {
        validate_fan(f).issues
    }

    #[test]
    fn projective_line_is_valid() {
        let f = raw(1, &[&[1], &[-1]], &[&[], &[0], &[1]]);
        assert!(validate_fan(&f).is_valid());
    }

    #[test]
    fn non_primitive_ray() {
        let f = raw(2, &[&[2, 0]], &[&[], &[0]]);
        assert_eq!(issues(&f), [ValidationIssue::NonPrimitiveRay { ray: 0 }]);
        assert_eq!(format!("{}", issues(&f)[0]), "ray 0 not primitive");
    }

    #[test]
    fn missing_face() {
        let f = raw(2, &[&[1, 0], &[0, 1]], &[&[], &[1], &[0, 1]]);
        let found = issues(&f);
        assert!(found.contains(&ValidationIssue::MissingFace {
            cone: vec![0, 1],
            face: vec![0]
        }));
        assert!(found.contains(&ValidationIssue::RayNotInAnyCone { ray: 0 }));
    }

    #[test]
    fn missing_zero_cone_and_bad_index() {
        let f = raw(1, &[&[1]], &[&[0], &[3]]);
        let found = issues(&f);
        assert!(found.contains(&ValidationIssue::MissingZeroCone));
        assert!(found.contains(&ValidationIssue::RayIndexOutOfRange { cone: vec![3], index: 3 }));
    }

    #[test]
    fn overlapping_cones() {
        // cone(e1, e2) and cone(e1 + e2, -e1 + 2 e2) overlap in their interiors
        let f = raw(2, &[&[1, 0], &[0, 1], &[1, 1], &[-1, 2]], &[&[], &[0], &[1], &[2], &[3], &[0, 1], &[2, 3]]);
        let found = issues(&f);
        assert_eq!(
            found,
            [ValidationIssue::BadIntersection { first: vec![0, 1], second: vec![2, 3] }]
        );
        // a ray inside another 2-cone
        let f = raw(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[], &[0], &[1], &[2], &[0, 1]]);
        assert_eq!(issues(&f).len(), 1);
        // adjacent cones of P2 are fine
        let f = raw(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[], &[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 2]]);
        assert!(issues(&f).is_empty());
    }

    #[test]
    fn dependent_generators() {
        let f = raw(1, &[&[1], &[-1]], &[&[], &[0], &[1], &[0, 1]]);
        assert!(issues(&f).contains(&ValidationIssue::NotSimplicial { cone: vec![0, 1] }));
    }

    #[test]
    fn non_equivariant_action() {
        let c2 = FiniteGroup::cyclic(2);
        let neg = IntMatrix::from_rows(&[[-1]]);
        let lattice = GLattice::new(c2, 1, vec![IntMatrix::identity(1), neg]).unwrap();
        let f = GFan::from_max_cones_unchecked(1, vec![Ray::from_i64(&[1])], &[vec![0]], lattice);
        assert_eq!(issues(&f), [ValidationIssue::RayImageMissing { element: 1, ray: 0 }]);
    }

    #[test]
    fn cone_image_missing() {
        // swap e1, e2 on a fan containing cone(e1) and cone(e1, e2)... but with only one 2-cone image
        let c2 = FiniteGroup::cyclic(2);
        let swap = IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let lattice = GLattice::new(c2, 3, vec![IntMatrix::identity(3), swap]).unwrap();
        let rays = [&[1i64, 0, 0][..], &[0, 1, 0], &[0, 0, 1]].iter().map(|r| Ray::from_i64(r)).collect();
        let f = GFan::from_max_cones_unchecked(3, rays, &[vec![0, 2], vec![1]], lattice);
        assert_eq!(
            issues(&f),
            [ValidationIssue::ConeImageMissing { element: 1, cone: vec![0, 2] }]
        );
    }

    #[test]
    fn lattice_rank_mismatch_does_not_panic() {
        let f = GFan::from_parts(
            2,
            vec![Ray::from_i64(&[1, 0, 0])],
            vec![Cone::zero(), Cone::new([0])],
            GLattice::trivial(FiniteGroup::trivial(), 3),
        );
        let found = issues(&f);
        assert!(found.contains(&ValidationIssue::LatticeRankMismatch { fan_rank: 2, lattice_rank: 3 }));
        assert!(found.contains(&ValidationIssue::RayWrongLength { ray: 0, expected: 2, found: 3 }));
    }

    #[test]
    fn feasibility_kernel() {
        // t >= 0 and -t >= 0 only has t = 0
        assert!(!nonzero_nonnegative_point(&IntMatrix::from_rows(&[[1], [-1]])));
        assert!(nonzero_nonnegative_point(&IntMatrix::from_rows(&[[1], [0]])));
        assert!(nonzero_nonnegative_point(&IntMatrix::from_rows(&[[1, -1], [0, 1]])));
        assert!(!nonzero_nonnegative_point(&IntMatrix::from_rows(&[[1, 1], [-1, 0], [0, -1]])));
    }
}
