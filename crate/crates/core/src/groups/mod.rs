//! Finite groups given by Cayley tables, with the subgroup machinery needed to
//! enumerate quasitriangular data: abelian normal subgroups, invariant-factor
//! coordinates, normal inclusions and bimultiplicative forms on duals.

mod abelian;
mod inclusion;

pub use abelian::{enumerate_biforms, AbelianGroup, BiForm, Character, FormFlags};
pub use inclusion::{normal_inclusions, same_module_structure, subgroup_structure, Inclusion};

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest group order handled (subsets are stored as `u64` bitsets).
pub const MAX_GROUP_ORDER: usize = 64;

/// A subset of a group of order at most 64.
pub type ElementSet = u64;

pub fn set_elements(s: ElementSet) -> Vec<usize> {
    (0..64).filter(|&i| s >> i & 1 == 1).collect()
}

pub fn set_of(elements: &[usize]) -> ElementSet {
    elements.iter().fold(0, |acc, &e| acc | 1 << e)
}

#[derive(Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table (`table[g][h] = g·h`) and builds the group.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge(n));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            if row.iter().collect::<BTreeSet<_>>().len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("a row is not a permutation".into()));
            }
        }
        for c in 0..n {
            if table.iter().map(|row| row[c]).collect::<BTreeSet<_>>().len() != n {
                return Err(Error::InvalidGroup("a column is not a permutation".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|g| (0..n).find(|&h| table[g][h] == identity).expect("latin square"))
            .collect();
        let mut g = FiniteGroup {
            name: name.into(),
            table,
            identity,
            inverses,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        g.classes = g.compute_classes();
        g.class_of = vec![0; n];
        for (k, cls) in g.classes.iter().enumerate() {
            for &x in cls {
                g.class_of[x] = k;
            }
        }
        Ok(Arc::new(g))
    }

    /// The direct product `Z/n_1 × … × Z/n_r`, elements in mixed-radix order
    /// matching [`AbelianGroup::index_of`].
    pub fn from_abelian(factors: &[u32]) -> Result<Arc<Self>> {
        let a = AbelianGroup::new(factors.to_vec())?;
        let n = a.order();
        if n > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge(n));
        }
        let table = (0..n).map(|x| (0..n).map(|y| a.add(x, y)).collect()).collect();
        let name = if factors.is_empty() {
            "Z1".to_string()
        } else {
            factors.iter().map(|f| format!("Z{f}")).collect::<Vec<_>>().join("x")
        };
        Self::from_table(name, table)
    }

    pub fn trivial() -> Arc<Self> {
        Self::from_table("Z1", vec![vec![0]]).expect("trivial group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// `g · x · g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
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

    pub fn exponent(&self) -> usize {
        (0..self.size())
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|g| self.elements().all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn is_central(&self, x: usize) -> bool {
        self.elements().all(|g| self.mul(g, x) == self.mul(x, g))
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_central(x)).collect()
    }

    fn compute_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen[x] {
                continue;
            }
            let cls: BTreeSet<usize> = self.elements().map(|g| self.conjugate(g, x)).collect();
            for &y in &cls {
                seen[y] = true;
            }
            classes.push(cls.into_iter().collect());
        }
        classes
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: ElementSet) -> ElementSet {
        let mut set = gens | 1 << self.identity;
        let mut frontier = set_elements(set);
        while let Some(x) = frontier.pop() {
            for y in set_elements(set) {
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if set >> z & 1 == 0 {
                        set |= 1 << z;
                        frontier.push(z);
                    }
                }
            }
        }
        set
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(0);
        for g in self.elements() {
            if span >> g & 1 == 0 {
                gens.push(g);
                span = self.closure(span | 1 << g);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, s: ElementSet) -> bool {
        s >> self.identity & 1 == 1 && self.closure(s) == s
    }

    pub fn is_normal(&self, s: ElementSet) -> bool {
        set_elements(s)
            .into_iter()
            .all(|x| self.elements().all(|g| s >> self.conjugate(g, x) & 1 == 1))
    }

    pub fn is_abelian_set(&self, s: ElementSet) -> bool {
        let el = set_elements(s);
        el.iter().all(|&x| el.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Every subgroup, by joining cyclic subgroups until nothing new appears.
    pub fn subgroups(&self) -> Vec<ElementSet> {
        let cyclic: BTreeSet<ElementSet> = self.elements().map(|g| self.closure(1 << g)).collect();
        let mut all = cyclic.clone();
        let mut frontier: Vec<ElementSet> = cyclic.iter().copied().collect();
        while let Some(h) = frontier.pop() {
            for &c in &cyclic {
                if c & !h == 0 {
                    continue;
                }
                let j = self.closure(h | c);
                if all.insert(j) {
                    frontier.push(j);
                }
            }
        }
        let mut v: Vec<ElementSet> = all.into_iter().collect();
        v.sort_by_key(|&s| (s.count_ones(), s));
        v
    }

    /// All abelian normal subgroups, sorted by order then membership.
    pub fn abelian_normal_subgroups(&self) -> Vec<Vec<usize>> {
        self.subgroups()
            .into_iter()
            .filter(|&s| self.is_abelian_set(s) && self.is_normal(s))
            .map(set_elements)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    // oracle: brute-force orbits under conjugation
    fn orbit_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut sizes: Vec<usize> = (0..g.size())
            .map(|x| (0..g.size()).map(|h| g.conjugate(h, x)).collect::<BTreeSet<_>>())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(|o| o.len())
            .collect();
        sizes.sort();
        sizes
    }

    #[test]
    fn conjugacy_classes_of_small_groups() {
        let t = FiniteGroup::trivial();
        assert_eq!(t.conjugacy_classes(), &[vec![0]]);
        let s3 = catalog::group("S3").unwrap();
        let mut sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(sizes, orbit_sizes(&s3));
        let z4 = catalog::group("Z4").unwrap();
        assert_eq!(z4.conjugacy_classes().len(), 4);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table("x", vec![vec![0, 1], vec![0, 1]]).is_err());
        // latin square that is not associative (a quasigroup of order 3 without identity)
        let bad = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        assert!(FiniteGroup::from_table("x", bad).is_err());
        let big = FiniteGroup::from_abelian(&[65]);
        assert!(matches!(big, Err(Error::GroupTooLarge(65))));
    }

    #[test]
    fn abelian_normal_subgroups_examples() {
        let z4 = catalog::group("Z4").unwrap();
        assert_eq!(
            z4.abelian_normal_subgroups(),
            vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]
        );
        let s3 = catalog::group("S3").unwrap();
        assert_eq!(s3.abelian_normal_subgroups(), vec![vec![0], vec![0, 1, 2]]);
        let q8 = catalog::group("Q8").unwrap();
        let subs = q8.abelian_normal_subgroups();
        let sizes: Vec<usize> = subs.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 4, 4, 4]);
        assert_eq!(subs[1], vec![0, 1]);
    }

    #[test]
    fn abelian_normal_subgroups_match_exhaustive_subsets() {
        // oracle: every subset of a group of order <= 8
        for name in ["Z2xZ2", "S3", "D4", "Q8"] {
            let g = catalog::group(name).unwrap();
            let n = g.size();
            let mut expect: Vec<Vec<usize>> = (0u64..1 << n)
                .filter(|&s| s & 1 == 1)
                .filter(|&s| {
                    let el = set_elements(s);
                    el.iter().all(|&x| el.iter().all(|&y| s >> g.mul(x, y) & 1 == 1))
                })
                .filter(|&s| g.is_abelian_set(s) && g.is_normal(s))
                .map(set_elements)
                .collect();
            expect.sort_by_key(|s| (s.len(), set_of(s)));
            assert_eq!(g.abelian_normal_subgroups(), expect, "{name}");
        }
    }

    #[test]
    fn generators_generate() {
        for name in catalog::NAMES {
            let g = catalog::group(name).unwrap();
            let all = if g.size() == 64 {
                u64::MAX
            } else {
                (1u64 << g.size()) - 1
            };
            assert_eq!(g.closure(set_of(&g.generators())), all);
        }
    }
}
