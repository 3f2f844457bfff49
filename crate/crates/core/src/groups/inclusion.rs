use std::sync::Arc;

use super::{set_elements, set_of, AbelianGroup, ElementSet, FiniteGroup, MAX_GROUP_ORDER};
use crate::error::{Error, Result};

/// An injective homomorphism `A → G`, stored as the image of every element of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion {
    group: Arc<FiniteGroup>,
    source: AbelianGroup,
    map: Vec<usize>,
}

impl Inclusion {
    /// Builds the homomorphism sending the `k`-th standard generator of `source`
    /// to `gens[k]`, checking it is well defined and injective.
    pub fn from_generator_images(group: &Arc<FiniteGroup>, source: &AbelianGroup, gens: &[usize]) -> Result<Self> {
        if gens.len() != source.rank() {
            return Err(Error::InvalidDatum(format!(
                "expected {} generator images, got {}",
                source.rank(),
                gens.len()
            )));
        }
        if gens.iter().any(|&g| g >= group.size()) {
            return Err(Error::InvalidDatum("generator image out of range".into()));
        }
        for (&g, &n) in gens.iter().zip(source.factors()) {
            if group.pow(g, n as i64) != group.identity() {
                return Err(Error::InvalidDatum(format!("image {g} has order not dividing {n}")));
            }
        }
        for &x in gens {
            for &y in gens {
                if group.mul(x, y) != group.mul(y, x) {
                    return Err(Error::InvalidDatum("generator images do not commute".into()));
                }
            }
        }
        let map: Vec<usize> = (0..source.order())
            .map(|k| {
                source
                    .tuple_of(k)
                    .iter()
                    .zip(gens)
                    .fold(group.identity(), |acc, (&a, &g)| group.mul(acc, group.pow(g, a as i64)))
            })
            .collect();
        if set_of(&map).count_ones() as usize != source.order() {
            return Err(Error::InvalidDatum("map is not injective".into()));
        }
        Ok(Inclusion {
            group: group.clone(),
            source: source.clone(),
            map,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    /// `i(a)` for the element of `A` with index `a`.
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn generator_images(&self) -> Vec<usize> {
        (0..self.source.rank())
            .map(|i| self.map[self.source.basis_element(i)])
            .collect()
    }

    pub fn image(&self) -> ElementSet {
        set_of(&self.map)
    }

    pub fn image_elements(&self) -> Vec<usize> {
        set_elements(self.image())
    }

    pub fn preimage(&self, g: usize) -> Option<usize> {
        self.map.iter().position(|&x| x == g)
    }

    /// For each `g ∈ G`, the automorphism `a ↦ i⁻¹(g·i(a)·g⁻¹)` of `A`.
    pub fn conjugation_action(&self) -> Result<Vec<Vec<usize>>> {
        let g = &self.group;
        g.elements()
            .map(|h| {
                (0..self.source.order())
                    .map(|a| {
                        let c = g.conjugate(h, self.map[a]);
                        self.preimage(c)
                            .ok_or_else(|| Error::InvalidDatum("image is not normal".into()))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_normal(&self) -> bool {
        self.group.is_normal(self.image())
    }
}

/// Puts an abelian subgroup into invariant-factor coordinates.
pub fn subgroup_structure(group: &Arc<FiniteGroup>, elements: &[usize]) -> Result<Inclusion> {
    let s = set_of(elements);
    if !group.is_subgroup(s) {
        return Err(Error::InvalidDatum(format!("{elements:?} is not a subgroup")));
    }
    if !group.is_abelian_set(s) {
        return Err(Error::NotAbelian);
    }
    let n = s.count_ones() as u32;
    let members = set_elements(s);
    for chain in divisibility_chains(n) {
        let mut chosen = Vec::new();
        if find_basis(group, &members, &chain, &mut chosen) {
            chosen.reverse();
            let a = AbelianGroup::new(chain)?;
            return Inclusion::from_generator_images(group, &a, &chosen);
        }
    }
    unreachable!("every finite abelian group has an invariant-factor basis")
}

// picks generators for chain[len-1], chain[len-2], ... (largest factor first)
fn find_basis(group: &FiniteGroup, members: &[usize], chain: &[u32], chosen: &mut Vec<usize>) -> bool {
    let k = chosen.len();
    if k == chain.len() {
        return true;
    }
    let want = chain[chain.len() - 1 - k] as usize;
    let target: usize = chain[chain.len() - 1 - k..].iter().map(|&x| x as usize).product();
    for &g in members {
        if group.element_order(g) != want {
            continue;
        }
        let span = group.closure(set_of(chosen) | 1 << g);
        if span.count_ones() as usize != target {
            continue;
        }
        chosen.push(g);
        if find_basis(group, members, chain, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// All `n_1 | n_2 | … | n_r` with product `n` and `n_i ≥ 2`.
fn divisibility_chains(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in min.max(2)..=rest {
            if rest.is_multiple_of(d) && d % min == 0 {
                prefix.push(d);
                go(rest / d, d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Every injective homomorphism `A → G` with normal image, ordered
/// lexicographically by generator images.
pub fn normal_inclusions(source: &AbelianGroup, group: &Arc<FiniteGroup>) -> Result<Vec<Inclusion>> {
    if group.size() > MAX_GROUP_ORDER {
        return Err(Error::GroupTooLarge(group.size()));
    }
    if source.order() > group.size() {
        return Ok(Vec::new());
    }
    let r = source.rank();
    let candidates: Vec<Vec<usize>> = source
        .factors()
        .iter()
        .map(|&n| {
            group
                .elements()
                .filter(|&g| group.pow(g, n as i64) == group.identity())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        let gens: Vec<usize> = idx.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Ok(inc) = Inclusion::from_generator_images(group, source, &gens) {
            if inc.is_normal() {
                out.push(inc);
            }
        }
        // odometer, last coordinate fastest
        let mut k = r;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < candidates[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Whether `i` and `j` induce the same conjugation action of `G` on `A`.
pub fn same_module_structure(i: &Inclusion, j: &Inclusion) -> bool {
    if i.source != j.source || i.group != j.group {
        return false;
    }
    match (i.conjugation_action(), j.conjugation_action()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn chains() {
        assert_eq!(divisibility_chains(1), vec![Vec::<u32>::new()]);
        assert_eq!(divisibility_chains(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(divisibility_chains(12), vec![vec![2, 6], vec![12]]);
    }

    #[test]
    fn structure_examples() {
        let s3 = catalog::group("S3").unwrap();
        let t = subgroup_structure(&s3, &[0]).unwrap();
        assert!(t.source().factors().is_empty());
        let a3 = subgroup_structure(&s3, &[0, 1, 2]).unwrap();
        assert_eq!(a3.source().factors(), &[3]);
        let d4 = catalog::group("D4").unwrap();
        // rotations by 0 and 180 degrees together with two reflections
        let klein: Vec<usize> = d4
            .abelian_normal_subgroups()
            .into_iter()
            .find(|s| s.len() == 4 && s.iter().all(|&x| d4.element_order(x) <= 2))
            .unwrap();
        let k = subgroup_structure(&d4, &klein).unwrap();
        assert_eq!(k.source().factors(), &[2, 2]);
        assert_eq!(k.image_elements(), klein);
        assert_eq!(subgroup_structure(&s3, &[0, 1, 2, 3, 4, 5]), Err(Error::NotAbelian));
    }

    #[test]
    fn inclusion_examples() {
        let s3 = catalog::group("S3").unwrap();
        assert_eq!(normal_inclusions(&AbelianGroup::trivial(), &s3).unwrap().len(), 1);
        let z3 = AbelianGroup::new(vec![3]).unwrap();
        let incs = normal_inclusions(&z3, &s3).unwrap();
        assert_eq!(incs.len(), 2);
        assert!(same_module_structure(&incs[0], &incs[1]));
        let z2g = catalog::group("Z2").unwrap();
        let z2 = AbelianGroup::new(vec![2]).unwrap();
        assert_eq!(normal_inclusions(&z2, &z2g).unwrap().len(), 1);
        // Z/2 in S3 has non-normal images only
        assert!(normal_inclusions(&z2, &s3).unwrap().is_empty());
    }

    #[test]
    fn klein_inclusions_of_z2_share_trivial_action() {
        let v = catalog::group("Z2xZ2").unwrap();
        let z2 = AbelianGroup::new(vec![2]).unwrap();
        let incs = normal_inclusions(&z2, &v).unwrap();
        assert_eq!(incs.len(), 3);
        for i in &incs {
            for j in &incs {
                assert!(same_module_structure(i, j));
            }
        }
    }

    #[test]
    fn inclusion_images_are_abelian_normal_subgroups() {
        for name in catalog::NAMES {
            let g = catalog::group(name).unwrap();
            let subs = g.abelian_normal_subgroups();
            for s in &subs {
                let a = subgroup_structure(&g, s).unwrap();
                for inc in normal_inclusions(a.source(), &g).unwrap() {
                    assert!(subs.contains(&inc.image_elements()), "{name}");
                }
            }
        }
    }
}
