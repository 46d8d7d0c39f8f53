use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::smith::invariant_factors;

/// A finitely generated abelian group `Z^r x Z/d_1 x ... x Z/d_k` in
/// invariant-factor form: every `d_i >= 2` and `d_i | d_{i+1}`.
///
/// Construction canonicalizes, so equal groups compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            _ => Self::from_cyclic_factors(0, &[BigInt::from(n)]),
        }
    }

    /// `Z^free_rank` plus `Z/n` for each listed `n`, in any order; factors
    /// `1` are dropped, factors `0` become free summands, signs are ignored.
    pub fn from_cyclic_factors(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free = free_rank;
        let mut finite = Vec::new();
        for n in orders {
            if n.is_zero() {
                free += 1;
            } else if !n.abs().is_one() {
                finite.push(n.abs());
            }
        }
        let chain = if finite.len() <= 1 {
            finite
        } else {
            let k = finite.len();
            invariant_factors(&IntMatrix::diagonal(k, k, &finite))
        };
        FinAbGroup {
            free_rank: free,
            torsion: chain.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// Builds from an already canonical invariant-factor list.
    /// Returns `None` when the list is not a divisibility chain of entries `>= 2`.
    pub fn from_invariant_factors(free_rank: usize, torsion: Vec<BigInt>) -> Option<Self> {
        let ok = torsion.iter().all(|d| *d >= BigInt::from(2))
            && torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        ok.then_some(FinAbGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of a finite group, `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn torsion_subgroup(&self) -> FinAbGroup {
        FinAbGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        Self::from_cyclic_factors(self.free_rank + other.free_rank, &t)
    }

    /// Whether this finite group could be a subgroup of `other`: the orders
    /// divide and the number of cyclic factors does not exceed.
    pub fn order_divides(&self, other: &FinAbGroup) -> bool {
        match (self.order(), other.order()) {
            (Some(a), Some(b)) => (b % a).is_zero(),
            _ => false,
        }
    }

    pub fn to_compact_string(&self) -> String {
        alloc::format!("{self}")
    }
}

/// Formats as `Z^r x Z/d1 x Z/d2`; the trivial group is `0`.
impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if first {
                first = false;
                Ok(())
            } else {
                f.write_str(" x ")
            }
        };
        match self.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                f.write_str("Z")?;
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?;
            }
        }
        for d in &self.torsion {
            sep(f)?;
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn b(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_form_merges_coprime_factors() {
        let g = FinAbGroup::from_cyclic_factors(0, &b(&[2, 3]));
        assert_eq!(g, FinAbGroup::cyclic(6));
        let h = FinAbGroup::from_cyclic_factors(1, &b(&[4, 1, 2, 0]));
        assert_eq!(h.free_rank(), 2);
        assert_eq!(h.torsion(), b(&[2, 4]).as_slice());
    }

    #[test]
    fn display() {
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
        assert_eq!(FinAbGroup::cyclic(0).to_string(), "Z");
        assert_eq!(
            FinAbGroup::from_cyclic_factors(2, &b(&[2, 4])).to_string(),
            "Z^2 x Z/2 x Z/4"
        );
        assert_eq!(FinAbGroup::cyclic(3).to_string(), "Z/3");
    }

    #[test]
    fn rejects_broken_chains() {
        assert!(FinAbGroup::from_invariant_factors(0, b(&[2, 3])).is_none());
        assert!(FinAbGroup::from_invariant_factors(0, b(&[1])).is_none());
        assert!(FinAbGroup::from_invariant_factors(1, b(&[2, 6])).is_some());
    }

    #[test]
    fn orders() {
        let g = FinAbGroup::from_cyclic_factors(0, &b(&[2, 6]));
        assert_eq!(g.order(), Some(BigInt::from(12)));
        assert!(FinAbGroup::cyclic(4).order_divides(&g));
        assert_eq!(FinAbGroup::free(1).order(), None);
    }
}
