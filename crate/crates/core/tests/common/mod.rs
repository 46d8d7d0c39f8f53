//! Random generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torika_core::fan::Ray;
use torika_core::group::permutation_module;
use torika_core::{BigInt, FiniteGroup, GFan, GLattice, IntMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::from_vec(rows, cols, data).unwrap()
}

/// Product of random elementary operations and sign flips.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            rows[0][0] = -1;
        }
        return IntMatrix::from_rows(&rows);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..4) {
            0 => rows.swap(i, j),
            1 => rows[i].iter_mut().for_each(|x| *x = -*x),
            _ => {
                let c = rng.gen_range(-2..=2);
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(src) {
                    *x += c * y;
                }
            }
        }
    }
    IntMatrix::from_rows(&rows)
}

pub fn inverse_unimodular(p: &IntMatrix) -> IntMatrix {
    let n = p.rows();
    let id = IntMatrix::identity(n);
    torika_core::linalg::solve_integer_matrix(p, &id)
        .unwrap()
        .expect("unimodular")
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|&d| n.is_multiple_of(d)).collect()
}

/// A random lattice over `C_n`: a sum of trivial, sign and permutation
/// summands, conjugated by a random unimodular matrix.
pub fn random_cyclic_lattice(rng: &mut impl Rng, n: usize, max_rank: usize) -> GLattice {
    let g = FiniteGroup::cyclic(n);
    let target = rng.gen_range(1..=max_rank);
    let mut lattice = GLattice::trivial(g.clone(), 0);
    while lattice.rank() < target {
        let room = target - lattice.rank();
        let mut options: Vec<GLattice> = vec![GLattice::trivial(g.clone(), 1)];
        if n.is_multiple_of(2) {
            options.push(GLattice::character(g.clone(), |x| if x % 2 == 0 { 1 } else { -1 }).unwrap());
        }
        for d in divisors(n) {
            // subgroup of order d, generated by n/d
            if n / d <= room && n / d > 1 {
                let h = g.generated_subgroup(&[(n / d) % n]);
                options.push(permutation_module(&g, &h).unwrap());
            }
        }
        let pick = options.choose(rng).unwrap().clone();
        lattice = lattice.direct_sum(&pick).unwrap();
    }
    let p = random_unimodular(rng, lattice.rank(), 8);
    lattice.conjugate(&p).unwrap()
}

/// A random smooth fan: a subfan of a product of copies of the fans of
/// `P^1`, `A^1` and a point, moved by a random unimodular change of basis.
/// With `sign_action` the group `C_2` acts by `-1`, which forces every factor
/// to be `P^1` or a point.
pub fn random_smooth_fan(rng: &mut impl Rng, sign_action: bool) -> GFan {
    let rank = rng.gen_range(1..=4);
    // signs available per coordinate
    let factors: Vec<Vec<i64>> = (0..rank)
        .map(|_| match rng.gen_range(0..if sign_action { 2 } else { 3 }) {
            0 => vec![1, -1],
            1 => vec![],
            _ => vec![if rng.gen_bool(0.5) { 1 } else { -1 }],
        })
        .collect();
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut index = vec![[usize::MAX; 2]; rank];
    for (i, signs) in factors.iter().enumerate() {
        for &s in signs {
            let mut v = vec![0; rank];
            v[i] = s;
            index[i][usize::from(s < 0)] = rays.len();
            rays.push(v);
        }
    }
    let mut max_cones: Vec<Vec<usize>> = vec![vec![]];
    for (i, signs) in factors.iter().enumerate() {
        if signs.is_empty() {
            continue;
        }
        let mut next = Vec::new();
        for c in &max_cones {
            for &s in signs {
                let mut c2 = c.clone();
                c2.push(index[i][usize::from(s < 0)]);
                next.push(c2);
            }
        }
        max_cones = next;
    }
    if !sign_action && max_cones.len() > 1 {
        max_cones.shuffle(rng);
        let keep = rng.gen_range(1..=max_cones.len());
        max_cones.truncate(keep);
        let used: std::collections::BTreeSet<usize> = max_cones.iter().flatten().copied().collect();
        for r in 0..rays.len() {
            if !used.contains(&r) {
                max_cones.push(vec![r]);
            }
        }
    }
    let p = random_unimodular(rng, rank, 6);
    let rays: Vec<Ray> = rays
        .iter()
        .map(|v| {
            let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            Ray::new(p.mul_vec(&v).unwrap())
        })
        .collect();
    let lattice = if sign_action {
        let minus = IntMatrix::identity(rank).scale(&BigInt::from(-1));
        GLattice::new(FiniteGroup::cyclic(2), rank, vec![IntMatrix::identity(rank), minus]).unwrap()
    } else {
        GLattice::trivial(FiniteGroup::trivial(), rank)
    };
    GFan::new(rank, rays, &max_cones, lattice).expect("generated fan is valid")
}

/// Moves a fan by the change of basis `p`: rays `p v`, action `p A p^-1`.
pub fn transform_fan(fan: &GFan, p: &IntMatrix) -> GFan {
    let rays = fan
        .rays()
        .iter()
        .map(|r| Ray::new(p.mul_vec(r.generator()).unwrap()))
        .collect();
    let max: Vec<Vec<usize>> = fan.maximal_cones().iter().map(|c| c.rays().to_vec()).collect();
    let lattice = fan.lattice().conjugate(p).unwrap();
    GFan::new(fan.rank(), rays, &max, lattice).unwrap()
}
