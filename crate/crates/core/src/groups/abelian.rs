use num_integer::Integer;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};

/// `Z/n_1 × … × Z/n_r` with `n_1 | n_2 | … | n_r`.
///
/// Elements (and characters) are indexed in mixed radix, last coordinate
/// fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.iter().any(|&n| n < 2) {
            return Err(Error::InvalidGroup(format!(
                "invariant factors must be >= 2: {factors:?}"
            )));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!(
                "factors {factors:?} do not form a divisibility chain"
            )));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    pub fn exponent(&self) -> u32 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn index_of(&self, tuple: &[u32]) -> usize {
        assert_eq!(tuple.len(), self.rank());
        tuple
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&a, &n)| acc * n as usize + (a % n) as usize)
    }

    pub fn tuple_of(&self, mut index: usize) -> Vec<u32> {
        let mut t = vec![0; self.rank()];
        for (slot, &n) in t.iter_mut().zip(&self.factors).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        t
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.tuple_of(x), self.tuple_of(y));
        let s: Vec<u32> = a
            .iter()
            .zip(&b)
            .zip(&self.factors)
            .map(|((p, q), n)| (p + q) % n)
            .collect();
        self.index_of(&s)
    }

    pub fn neg(&self, x: usize) -> usize {
        let t: Vec<u32> = self
            .tuple_of(x)
            .iter()
            .zip(&self.factors)
            .map(|(a, n)| (n - a) % n)
            .collect();
        self.index_of(&t)
    }

    /// Index of the `i`-th standard generator.
    pub fn basis_element(&self, i: usize) -> usize {
        let mut t = vec![0; self.rank()];
        t[i] = 1;
        self.index_of(&t)
    }

    /// The dual group, in the same index order as the elements.
    pub fn characters(&self) -> Vec<Character> {
        (0..self.order())
            .map(|k| Character { exps: self.tuple_of(k) })
            .collect()
    }

    pub fn character(&self, index: usize) -> Character {
        Character {
            exps: self.tuple_of(index),
        }
    }
}

/// `χ(a) = Π ζ_{n_i}^{k_i a_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    exps: Vec<u32>,
}

impl Character {
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// `χ(a)` as an exponent of `ζ_e`, `e` the exponent of the group.
    pub fn log_eval(&self, a: &AbelianGroup, x: usize) -> u32 {
        let e = a.exponent();
        let t = a.tuple_of(x);
        let s: u64 = self
            .exps
            .iter()
            .zip(&t)
            .zip(a.factors())
            .map(|((&k, &x), &n)| k as u64 * x as u64 * (e / n) as u64)
            .sum();
        (s % e as u64) as u32
    }

    pub fn eval(&self, a: &AbelianGroup, x: usize) -> CycScalar {
        CycScalar::root_of_unity(a.exponent(), self.log_eval(a, x) as i64)
    }

    pub fn index(&self, a: &AbelianGroup) -> usize {
        a.index_of(&self.exps)
    }

    /// `χ ∘ φ` for an automorphism `φ` given as a permutation of element indices.
    pub fn compose(&self, a: &AbelianGroup, phi: &[usize]) -> Character {
        let e = a.exponent();
        let exps = (0..a.rank())
            .map(|i| {
                let v = self.log_eval(a, phi[a.basis_element(i)]);
                v / (e / a.factors()[i])
            })
            .collect();
        Character { exps }
    }

    pub fn mul(&self, a: &AbelianGroup, other: &Character) -> Character {
        Character {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .zip(a.factors())
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        }
    }
}

/// A bimultiplicative form on the dual group, `β(χ_i, χ_j) = ζ_{gcd(n_i,n_j)}^{m_ij}`
/// on the dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiForm {
    exps: Vec<Vec<u32>>,
}

impl BiForm {
    pub fn new(a: &AbelianGroup, exps: Vec<Vec<u32>>) -> Result<Self> {
        let r = a.rank();
        if exps.len() != r || exps.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidDatum(format!("form matrix must be {r}x{r}")));
        }
        let f = a.factors();
        let exps = exps
            .into_iter()
            .enumerate()
            .map(|(i, row)| row.into_iter().enumerate().map(|(j, m)| m % f[i].gcd(&f[j])).collect())
            .collect();
        Ok(BiForm { exps })
    }

    pub fn exps(&self) -> &[Vec<u32>] {
        &self.exps
    }

    /// `β(χ, ξ)` as an exponent of `ζ_e`.
    pub fn log_eval(&self, a: &AbelianGroup, chi: &Character, xi: &Character) -> u32 {
        let e = a.exponent() as u64;
        let f = a.factors();
        let mut s = 0u64;
        for (i, row) in self.exps.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                let g = f[i].gcd(&f[j]) as u64;
                s += m as u64 * chi.exps[i] as u64 * xi.exps[j] as u64 * (e / g);
            }
        }
        (s % e) as u32
    }

    pub fn eval(&self, a: &AbelianGroup, chi: &Character, xi: &Character) -> CycScalar {
        CycScalar::root_of_unity(a.exponent(), self.log_eval(a, chi, xi) as i64)
    }

    pub fn is_nondegenerate(&self, a: &AbelianGroup) -> bool {
        let chars = a.characters();
        chars
            .iter()
            .skip(1)
            .all(|chi| chars.iter().any(|xi| self.log_eval(a, chi, xi) != 0))
    }

    pub fn is_skewsymmetric(&self, a: &AbelianGroup) -> bool {
        let e = a.exponent();
        let chars = a.characters();
        chars.iter().all(|chi| {
            chars
                .iter()
                .all(|xi| (self.log_eval(a, chi, xi) + self.log_eval(a, xi, chi)).is_multiple_of(e))
        })
    }

    /// `β(χ∘φ, ξ∘φ) = β(χ, ξ)` for every automorphism `φ` in `action`.
    pub fn is_invariant(&self, a: &AbelianGroup, action: &[Vec<usize>]) -> bool {
        let chars = a.characters();
        action.iter().all(|phi| {
            let moved: Vec<Character> = chars.iter().map(|c| c.compose(a, phi)).collect();
            chars.iter().zip(&moved).all(|(chi, chi_g)| {
                chars
                    .iter()
                    .zip(&moved)
                    .all(|(xi, xi_g)| self.log_eval(a, chi, xi) == self.log_eval(a, chi_g, xi_g))
            })
        })
    }

    /// The form `(χ, ξ) ↦ β(χ, ξ∘φ)`.
    pub fn twist_right(&self, a: &AbelianGroup, phi: &[usize]) -> BiForm {
        let e = a.exponent();
        let f = a.factors();
        let chars: Vec<Character> = (0..a.rank()).map(|i| a.character(a.basis_element(i))).collect();
        let exps = (0..a.rank())
            .map(|i| {
                (0..a.rank())
                    .map(|j| {
                        let v = self.log_eval(a, &chars[i], &chars[j].compose(a, phi));
                        v / (e / f[i].gcd(&f[j]))
                    })
                    .collect()
            })
            .collect();
        BiForm { exps }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FormFlags {
    pub nondegenerate: bool,
    pub skewsymmetric: bool,
    pub g_invariant: bool,
}

impl FormFlags {
    pub const ALL: FormFlags = FormFlags {
        nondegenerate: true,
        skewsymmetric: true,
        g_invariant: true,
    };
}

/// Every exponent matrix on `Â` passing the requested predicates, in
/// lexicographic order of the matrix entries. `action` lists the automorphisms
/// of `A` induced by the group (only consulted for `g_invariant`).
pub fn enumerate_biforms(a: &AbelianGroup, action: &[Vec<usize>], flags: FormFlags) -> Vec<BiForm> {
    let r = a.rank();
    let f = a.factors();
    let moduli: Vec<u32> = (0..r * r).map(|k| f[k / r].gcd(&f[k % r])).collect();
    let total: usize = moduli.iter().map(|&m| m as usize).product();
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let mut flat = vec![0u32; r * r];
        for (slot, &m) in flat.iter_mut().zip(&moduli).rev() {
            *slot = (rest % m as usize) as u32;
            rest /= m as usize;
        }
        let form = BiForm {
            exps: flat.chunks(r.max(1)).take(r).map(<[u32]>::to_vec).collect(),
        };
        if flags.nondegenerate && !form.is_nondegenerate(a) {
            continue;
        }
        if flags.skewsymmetric && !form.is_skewsymmetric(a) {
            continue;
        }
        if flags.g_invariant && !form.is_invariant(a, action) {
            continue;
        }
        out.push(form);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_enforced() {
        assert!(AbelianGroup::new(vec![2, 4]).is_ok());
        assert!(AbelianGroup::new(vec![4, 2]).is_err());
        assert!(AbelianGroup::new(vec![1]).is_err());
        let a = AbelianGroup::new(vec![2, 4]).unwrap();
        assert_eq!((a.order(), a.exponent()), (8, 4));
    }

    #[test]
    fn characters_are_multiplicative_and_separate_points() {
        for f in [vec![], vec![2], vec![4], vec![2, 2], vec![2, 4], vec![3, 3]] {
            let a = AbelianGroup::new(f).unwrap();
            let e = a.exponent();
            let chars = a.characters();
            assert_eq!(chars.len(), a.order());
            for chi in &chars {
                for x in 0..a.order() {
                    for y in 0..a.order() {
                        assert_eq!(
                            chi.log_eval(&a, a.add(x, y)),
                            (chi.log_eval(&a, x) + chi.log_eval(&a, y)) % e
                        );
                    }
                }
            }
            for x in 1..a.order() {
                assert!(chars.iter().any(|c| c.log_eval(&a, x) != 0));
            }
        }
    }

    #[test]
    fn z2_has_one_skew_nondegenerate_form() {
        let a = AbelianGroup::new(vec![2]).unwrap();
        let forms = enumerate_biforms(&a, &[], FormFlags::ALL);
        assert_eq!(forms.len(), 1);
        let chi = a.character(1);
        assert_eq!(forms[0].eval(&a, &chi, &chi), CycScalar::from_integer(-1));
    }

    #[test]
    fn trivial_group_has_the_empty_form() {
        let forms = enumerate_biforms(&AbelianGroup::trivial(), &[], FormFlags::ALL);
        assert_eq!(forms.len(), 1);
        assert!(forms[0].exps().is_empty());
    }

    #[test]
    fn klein_skew_nondegenerate_count_matches_brute_force() {
        let a = AbelianGroup::new(vec![2, 2]).unwrap();
        let flags = FormFlags {
            nondegenerate: true,
            skewsymmetric: true,
            g_invariant: false,
        };
        let forms = enumerate_biforms(&a, &[], flags);
        // oracle: a 2x2 matrix over F_2 gives a skew form iff it is symmetric,
        // and a nondegenerate one iff its determinant is odd
        let mut expect = 0;
        for m in 0..16u32 {
            let (p, q, r, s) = (m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1);
            if q == r && (p * s + q * r) % 2 == 1 {
                expect += 1;
            }
        }
        assert_eq!(forms.len(), expect);
        assert_eq!(expect, 4);
        for f in &forms {
            assert!(f.is_nondegenerate(&a) && f.is_skewsymmetric(&a));
        }
    }

    #[test]
    fn skew_forms_have_diagonal_of_order_two() {
        let a = AbelianGroup::new(vec![2, 4]).unwrap();
        let flags = FormFlags {
            skewsymmetric: true,
            ..FormFlags::default()
        };
        for f in enumerate_biforms(&a, &[], flags) {
            for chi in a.characters() {
                assert!(f.eval(&a, &chi, &chi).pow(2).is_one());
            }
        }
    }
}
