use std::collections::VecDeque;
use std::sync::Arc;

use super::ClassFunction;
use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;

/// A matrix representation `ρ: G → GL_d`, one matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    mats: Vec<Matrix>,
}

impl MatrixRep {
    /// Validates `ρ(1) = I` and `ρ(g)ρ(h) = ρ(gh)` for all pairs (inverses follow).
    pub fn new(group: &Arc<FiniteGroup>, mats: Vec<Matrix>) -> Result<Self> {
        if mats.len() != group.size() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for a group of order {}",
                mats.len(),
                group.size()
            )));
        }
        let dim = mats[0].rows();
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidRepresentation("matrices differ in shape".into()));
        }
        if !mats[group.identity()].is_identity() {
            return Err(Error::InvalidRepresentation("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if mats[g].mul(&mats[h]) != mats[group.mul(g, h)] {
                    return Err(Error::InvalidRepresentation(format!("ρ({g})ρ({h}) ≠ ρ({g}·{h})")));
                }
            }
        }
        Ok(MatrixRep {
            group: group.clone(),
            dim,
            mats,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self, g: usize) -> &Matrix {
        &self.mats[g]
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn character(&self) -> ClassFunction {
        ClassFunction::from_fn(&self.group, |g| self.mats[g].trace())
    }

    /// `ρ(g)^⊗n` (the `1×1` identity for `n = 0`).
    pub fn tensor_power_matrix(&self, g: usize, n: usize) -> Matrix {
        (0..n).fold(Matrix::identity(1), |acc, _| acc.kron(&self.mats[g]))
    }
}

/// Left translation: `ρ(g)δ_h = δ_{gh}`.
pub fn regular_rep(group: &Arc<FiniteGroup>) -> MatrixRep {
    let n = group.size();
    let mats = group
        .elements()
        .map(|g| {
            let mut m = Matrix::zeros(n, n);
            for h in group.elements() {
                m[(group.mul(g, h), h)] = CycScalar::one();
            }
            m
        })
        .collect();
    MatrixRep::new(group, mats).expect("left translation is a representation")
}

/// All homomorphisms `G → μ_e` (`e` the exponent), as exponent tables
/// `g ↦ k` meaning `g ↦ ζ_e^k`, sorted lexicographically (trivial first).
pub fn linear_character_logs(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let e = group.exponent();
    let gens = group.generators();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(logs) = extend_to_homomorphism(group, &gens, &choice, e) {
            out.push(logs);
        }
        // odometer over generator images
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < e {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    out.sort();
    out
}

// Spreads generator values along the Cayley graph; consistency on every edge
// `x → x·s` makes the result a homomorphism.
fn extend_to_homomorphism(group: &FiniteGroup, gens: &[usize], images: &[usize], e: usize) -> Option<Vec<usize>> {
    let mut logs = vec![usize::MAX; group.size()];
    logs[group.identity()] = 0;
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &a) in gens.iter().zip(images) {
            let y = group.mul(x, s);
            let v = (logs[x] + a) % e;
            if logs[y] == usize::MAX {
                logs[y] = v;
                queue.push_back(y);
            } else if logs[y] != v {
                return None;
            }
        }
    }
    Some(logs)
}

/// The one-dimensional representations of `group`.
pub fn linear_characters(group: &Arc<FiniteGroup>) -> Vec<MatrixRep> {
    let e = group.exponent() as u32;
    linear_character_logs(group)
        .into_iter()
        .map(|logs| {
            let mats = logs
                .iter()
                .map(|&k| Matrix::from_rows(vec![vec![CycScalar::root_of_unity(e, k as i64)]]))
                .collect();
            MatrixRep::new(group, mats).expect("homomorphism into roots of unity")
        })
        .collect()
}
