use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table: `table[a][b] = a*b`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedGroup(String::from("empty table")));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedGroup(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::MalformedGroup(format!("entry {x} in row {a} out of range")));
            }
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::MalformedGroup(String::from("no identity element")))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::MalformedGroup(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                    .ok_or_else(|| Error::MalformedGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup {
            order: n,
            table: flat,
            identity,
            inverses,
        })
    }

    fn from_law(n: usize, law: impl Fn(usize, usize) -> usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| law(a, b)).collect()).collect();
        Self::from_table(&table).expect("built-in group law")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n`, element `k` standing for `g^k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        Self::from_law(n, |a, b| (a + b) % n)
    }

    /// `C_2 x C_2`, element `a + 2b` standing for `(a, b)`.
    pub fn klein_four() -> Self {
        Self::from_law(4, |a, b| a ^ b)
    }

    /// `S_3` acting on `{0, 1, 2}`: elements `0, 1, 2` are the rotations
    /// `1, r, r^2` with `r = (0 1 2)`, and `3, 4, 5` are `s, rs, r^2 s` with
    /// `s = (1 2)`. Products compose right to left.
    pub fn symmetric3() -> Self {
        let perms = Self::s3_permutations();
        Self::from_law(6, |a, b| {
            let p = &perms[a];
            let q = &perms[b];
            let pq = [p[q[0]], p[q[1]], p[q[2]]];
            perms.iter().position(|r| *r == pq).unwrap()
        })
    }

    fn s3_permutations() -> [[usize; 3]; 6] {
        let r = [1, 2, 0];
        let s = [0, 2, 1];
        let comp = |p: [usize; 3], q: [usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let id = [0, 1, 2];
        let r2 = comp(r, r);
        [id, r, r2, s, comp(r, s), comp(r2, s)]
    }

    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let m = other.order;
        Self::from_law(self.order * m, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
    }

    /// Named presets: `trivial`, `C<n>`, `C2xC2` (or `V4`), `S3`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "trivial" | "1" => Some(Self::trivial()),
            "C2xC2" | "V4" => Some(Self::klein_four()),
            "S3" => Some(Self::symmetric3()),
            _ => {
                let n: usize = name.strip_prefix('C')?.parse().ok()?;
                (1..=64).contains(&n).then(|| Self::cyclic(n))
            }
        }
    }

    /// Generators used when an action is specified on generators only.
    pub fn preset_generators(name: &str) -> Option<Vec<usize>> {
        match name {
            "trivial" | "1" | "C1" => Some(Vec::new()),
            "C2xC2" | "V4" => Some(vec![1, 2]),
            "S3" => Some(vec![1, 3]),
            _ => {
                let n: usize = name.strip_prefix('C')?.parse().ok()?;
                (2..=64).contains(&n).then(|| vec![1])
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    /// The table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// An element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        self.elements().find(|&g| self.element_order(g) == self.order)
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks closure and builds the subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if let Some(&x) = set.iter().find(|&&x| x >= self.order) {
            return Err(Error::MalformedSubgroup(format!("element {x} is not in the group")));
        }
        if !set.contains(&self.identity) {
            return Err(Error::MalformedSubgroup(String::from("identity missing")));
        }
        for &a in &set {
            if !set.contains(&self.inverse(a)) {
                return Err(Error::MalformedSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::MalformedSubgroup(format!(
                        "not closed: {a} * {b} = {} missing",
                        self.mul(a, b)
                    )));
                }
            }
        }
        Ok(Subgroup {
            parent_order: self.order,
            elements: set.into_iter().collect(),
        })
    }

    /// Subgroup generated by the given elements.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            parent_order: self.order,
            elements: set.into_iter().collect(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            parent_order: self.order,
            elements: self.elements().collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            parent_order: self.order,
            elements: vec![self.identity],
        }
    }

    /// Distinct cyclic subgroups, ordered by size then elements.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut all: Vec<Subgroup> = self
            .elements()
            .map(|g| self.generated_subgroup(&[g]))
            .collect();
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        all.dedup();
        all
    }

    /// A small generating set found greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for g in self.elements() {
            if !current.contains(g) {
                gens.push(g);
                current = self.generated_subgroup(&gens);
            }
        }
        gens
    }
}

/// A subgroup, stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.elements.len()
    }

    /// Left cosets `gH`, each sorted, ordered by their minimal element.
    pub fn left_cosets(&self, group: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; group.order()];
        let mut cosets = Vec::new();
        for g in group.elements() {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = self.elements.iter().map(|&h| group.mul(g, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}
