//! The group algebra `k[G]` and its tensor powers.
//!
//! A [`GATensor`] of arity `n` is a finite sum of pure tensors
//! `g_1 ⊗ … ⊗ g_n` of group elements. Group elements are grouplike, so the
//! Hopf structure acts on basis tuples directly: `Δ(g) = g⊗g`, `ε(g) = 1`,
//! `S(g) = g⁻¹`. Legs are numbered from 1 in every public operation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;

#[derive(Clone)]
pub struct GATensor {
    group: Arc<FiniteGroup>,
    arity: usize,
    terms: BTreeMap<Vec<usize>, CycScalar>,
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for GATensor {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && same_group(&self.group, &other.group) && self.terms == other.terms
    }
}

impl Eq for GATensor {}

impl fmt::Debug for GATensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GATensor[{}; {}]({})", self.group.name(), self.arity, self)
    }
}

impl fmt::Display for GATensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let legs: Vec<String> = t.iter().map(usize::to_string).collect();
                format!("({c})[{}]", legs.join("⊗"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl GATensor {
    pub fn zero(group: &Arc<FiniteGroup>, arity: usize) -> Self {
        GATensor {
            group: group.clone(),
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn unit(group: &Arc<FiniteGroup>, arity: usize) -> Self {
        Self::basis(group, vec![group.identity(); arity], CycScalar::one())
    }

    pub fn basis(group: &Arc<FiniteGroup>, tuple: Vec<usize>, coeff: CycScalar) -> Self {
        let mut t = Self::zero(group, tuple.len());
        t.add_term(tuple, coeff);
        t
    }

    /// A group element as an arity-1 tensor.
    pub fn element(group: &Arc<FiniteGroup>, g: usize) -> Self {
        Self::basis(group, vec![g], CycScalar::one())
    }

    pub fn from_terms(
        group: &Arc<FiniteGroup>,
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, CycScalar)>,
    ) -> Result<Self> {
        let mut t = Self::zero(group, arity);
        for (tuple, c) in terms {
            if tuple.len() != arity {
                return Err(Error::ArityMismatch(tuple.len(), arity));
            }
            if tuple.iter().any(|&g| g >= group.size()) {
                return Err(Error::Parse(format!("element index out of range in {tuple:?}")));
            }
            t.add_term(tuple, c);
        }
        Ok(t)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, CycScalar> {
        &self.terms
    }

    pub fn coeff(&self, tuple: &[usize]) -> CycScalar {
        self.terms.get(tuple).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Adds `coeff · tuple`, dropping the entry if it cancels.
    pub fn add_term(&mut self, tuple: Vec<usize>, coeff: CycScalar) {
        debug_assert_eq!(tuple.len(), self.arity);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    fn check_leg(&self, leg: usize) -> Result<usize> {
        if leg == 0 || leg > self.arity {
            return Err(Error::LegOutOfRange { leg, arity: self.arity });
        }
        Ok(leg - 1)
    }

    fn map_tuples(&self, arity: usize, f: impl Fn(&[usize]) -> Vec<usize>) -> Self {
        let mut out = Self::zero(&self.group, arity);
        for (t, c) in &self.terms {
            out.add_term(f(t), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&CycScalar::from_integer(-1)))
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        let mut out = Self::zero(&self.group, self.arity);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c * s);
        }
        out
    }

    /// Legwise product `(g_1,…,g_n)(h_1,…,h_n) = (g_1h_1,…,g_nh_n)`, extended bilinearly.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let g = &self.group;
        let mut acc: HashMap<Vec<usize>, CycScalar> = HashMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let key: Vec<usize> = s.iter().zip(t).map(|(&x, &y)| g.mul(x, y)).collect();
                let prod = a * b;
                acc.entry(key).and_modify(|v| *v = &*v + &prod).or_insert(prod);
            }
        }
        let mut out = Self::zero(g, self.arity);
        for (t, c) in acc {
            if !c.is_zero() {
                out.terms.insert(t, c);
            }
        }
        Ok(out)
    }

    /// Product of several tensors, left to right.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a GATensor>) -> Result<Self> {
        let mut it = factors.into_iter();
        let first = it.next().expect("empty product").clone();
        it.try_fold(first, |acc, x| acc.multiply(x))
    }

    /// Applies `Δ` to one leg.
    pub fn coproduct(&self, leg: usize) -> Result<Self> {
        let k = self.check_leg(leg)?;
        Ok(self.map_tuples(self.arity + 1, |t| {
            let mut v = t.to_vec();
            v.insert(k, t[k]);
            v
        }))
    }

    /// Applies `ε` to one leg.
    pub fn counit(&self, leg: usize) -> Result<Self> {
        let k = self.check_leg(leg)?;
        Ok(self.map_tuples(self.arity - 1, |t| {
            let mut v = t.to_vec();
            v.remove(k);
            v
        }))
    }

    /// Applies `S` to one leg.
    pub fn antipode(&self, leg: usize) -> Result<Self> {
        let k = self.check_leg(leg)?;
        let g = self.group.clone();
        Ok(self.map_tuples(self.arity, |t| {
            let mut v = t.to_vec();
            v[k] = g.inv(v[k]);
            v
        }))
    }

    /// Output leg `k` carries input leg `perm[k]` (both 1-based).
    pub fn permute_legs(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.arity];
        if perm.len() != self.arity {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        for &p in perm {
            if p == 0 || p > self.arity || seen[p - 1] {
                return Err(Error::InvalidPermutation(perm.to_vec()));
            }
            seen[p - 1] = true;
        }
        Ok(self.map_tuples(self.arity, |t| perm.iter().map(|&p| t[p - 1]).collect()))
    }

    /// The flip `t` on an arity-2 tensor (`R ↦ R₂₁`).
    pub fn flip(&self) -> Result<Self> {
        self.permute_legs(&[2, 1])
    }

    /// Places an arity-2 tensor into legs `i`, `j` of an arity-`total` tensor,
    /// filling the other legs with the identity (`R ↦ R_ij`).
    pub fn embed_legs(&self, i: usize, j: usize, total: usize) -> Result<Self> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch(self.arity, 2));
        }
        if i == j || i == 0 || j == 0 || i > total || j > total {
            return Err(Error::PositionClash(i, j, total));
        }
        let e = self.group.identity();
        Ok(self.map_tuples(total, |t| {
            let mut v = vec![e; total];
            v[i - 1] = t[0];
            v[j - 1] = t[1];
            v
        }))
    }

    /// `x ↦ x ⊗ 1` style padding: appends or prepends identity legs.
    pub fn pad(&self, before: usize, after: usize) -> Self {
        let e = self.group.identity();
        self.map_tuples(self.arity + before + after, |t| {
            let mut v = vec![e; before];
            v.extend_from_slice(t);
            v.extend(std::iter::repeat_n(e, after));
            v
        })
    }

    /// The adjoint action `x ↦ h·x·h⁻¹` on one leg.
    pub fn adjoint_action(&self, h: usize, leg: usize) -> Result<Self> {
        let k = self.check_leg(leg)?;
        let g = self.group.clone();
        Ok(self.map_tuples(self.arity, |t| {
            let mut v = t.to_vec();
            v[k] = g.conjugate(h, v[k]);
            v
        }))
    }

    /// Multiplies all legs together in order (`μ`, iterated).
    pub fn multiply_legs(&self) -> Self {
        let g = self.group.clone();
        self.map_tuples(1, |t| vec![t.iter().fold(g.identity(), |acc, &x| g.mul(acc, x))])
    }

    /// Left-multiplies leg `leg` of every term by `g`.
    pub fn left_translate(&self, g: usize, leg: usize) -> Result<Self> {
        let k = self.check_leg(leg)?;
        let grp = self.group.clone();
        Ok(self.map_tuples(self.arity, |t| {
            let mut v = t.to_vec();
            v[k] = grp.mul(g, v[k]);
            v
        }))
    }

    /// `Δ(x) = x⊗x` and `ε(x) = 1`.
    pub fn is_grouplike(&self) -> bool {
        if self.arity != 1 {
            return false;
        }
        let (Ok(dx), Ok(ex)) = (self.coproduct(1), self.counit(1)) else {
            return false;
        };
        let xx = self.tensor(self);
        dx == xx && ex.scalar_value().is_one()
    }

    /// The group element represented by a grouplike tensor.
    pub fn as_group_element(&self) -> Option<usize> {
        if self.arity == 1 && self.terms.len() == 1 {
            let (t, c) = self.terms.iter().next().unwrap();
            if c.is_one() {
                return Some(t[0]);
            }
        }
        None
    }

    /// Outer tensor product; arities add.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.group, self.arity + other.arity);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let mut v = s.clone();
                v.extend_from_slice(t);
                out.add_term(v, a * b);
            }
        }
        out
    }

    /// The coefficient of the empty tuple of an arity-0 tensor.
    pub fn scalar_value(&self) -> CycScalar {
        assert_eq!(self.arity, 0, "scalar_value on a tensor of positive arity");
        self.coeff(&[])
    }

    /// Solves `x·y = 1` over the subgroup of `G^n` generated by the support of `x`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let g = &self.group;
        let unit = vec![g.identity(); self.arity];
        let mul = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().zip(b).map(|(&x, &y)| g.mul(x, y)).collect() };
        let gens: Vec<Vec<usize>> = self.terms.keys().cloned().collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut elems = vec![unit.clone()];
        index.insert(unit.clone(), 0);
        let mut k = 0;
        while k < elems.len() {
            for s in &gens {
                let p = mul(s, &elems[k]);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            k += 1;
        }
        let n = elems.len();
        let mut lmul = Matrix::zeros(n, n);
        for (col, e) in elems.iter().enumerate() {
            for (s, c) in &self.terms {
                let row = index[&mul(s, e)];
                lmul[(row, col)] = &lmul[(row, col)] + c;
            }
        }
        let mut rhs = vec![CycScalar::zero(); n];
        rhs[0] = CycScalar::one();
        let y = lmul.solve(&rhs)?;
        let inv = Self::from_terms(g, self.arity, elems.into_iter().zip(y))?;
        debug_assert_eq!(self.multiply(&inv)?, Self::unit(g, self.arity));
        Ok(inv)
    }
}
