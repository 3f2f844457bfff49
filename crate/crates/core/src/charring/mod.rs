//! Character rings and the λ-structures induced by triangular R-matrices.
//!
//! A triangular structure with Markov element `u` twists the Adams operations
//! to `ψ^k_u(χ)(g) = χ(u^{k+1}g^k)`; exterior powers taken with respect to the
//! braided symmetric-group action have exactly the λ-operations these Adams
//! operations generate through Newton's identities.

mod braided;
mod rep;

pub use braided::{
    braided_action, cyclic_operation_char, exterior_power_char, qtrace, qtrace_tensor_power, verify_cyclic_identities,
    verify_exterior_powers, BraidedAction,
};
pub use rep::{linear_character_logs, linear_characters, regular_rep, MatrixRep};

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::rmatrix::VerificationReport;

/// Largest tensor-power dimension `dⁿ` handled by the dense braided machinery.
pub const MAX_TENSOR_DIM: usize = 4096;

/// A class function, stored as one value per conjugacy class.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<CycScalar>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<CycScalar>) -> Result<Self> {
        let k = group.conjugacy_classes().len();
        if values.len() != k {
            return Err(Error::InvalidArgument(format!(
                "{} values for {k} classes",
                values.len()
            )));
        }
        Ok(ClassFunction {
            group: group.clone(),
            values,
        })
    }

    /// Evaluates `f` on one representative per class.
    pub fn from_fn(group: &Arc<FiniteGroup>, f: impl Fn(usize) -> CycScalar) -> Self {
        let values = group.conjugacy_classes().iter().map(|c| f(c[0])).collect();
        ClassFunction {
            group: group.clone(),
            values,
        }
    }

    pub fn constant(group: &Arc<FiniteGroup>, c: CycScalar) -> Self {
        Self::from_fn(group, |_| c.clone())
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::constant(group, CycScalar::one())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CycScalar] {
        &self.values
    }

    /// Class representatives, parallel to [`values`](Self::values).
    pub fn class_representatives(&self) -> Vec<usize> {
        self.group.conjugacy_classes().iter().map(|c| c[0]).collect()
    }

    pub fn eval(&self, g: usize) -> &CycScalar {
        &self.values[self.group.class_of(g)]
    }

    fn zip(&self, other: &Self, f: impl Fn(&CycScalar, &CycScalar) -> CycScalar) -> Self {
        assert!(
            Arc::ptr_eq(&self.group, &other.group) || self.group == other.group,
            "class functions over different groups"
        );
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycScalar::is_zero)
    }
}

fn check_central_involution(group: &FiniteGroup, u: usize) -> Result<()> {
    if u >= group.size() || !group.is_central(u) || group.mul(u, u) != group.identity() {
        return Err(Error::NotCentralInvolution(u));
    }
    Ok(())
}

/// `ψ^k(x)(g) = x(g^k)`.
pub fn adams_standard(x: &ClassFunction, k: u32) -> ClassFunction {
    let g = x.group();
    ClassFunction::from_fn(g, |h| x.eval(g.pow(h, k as i64)).clone())
}

/// `ψ^k_u(x)(g) = x(u^{k+1}g^k)` for a central involution `u`.
pub fn adams_twisted(x: &ClassFunction, u: usize, k: u32) -> Result<ClassFunction> {
    let g = x.group();
    check_central_involution(g, u)?;
    let twist = g.pow(u, k as i64 + 1);
    Ok(ClassFunction::from_fn(g, |h| {
        x.eval(g.mul(twist, g.pow(h, k as i64))).clone()
    }))
}

fn inverse_integer(n: usize) -> CycScalar {
    CycScalar::from_rational(BigRational::new(BigInt::from(1), BigInt::from(n)))
}

/// `[λ⁰, …, λⁿ]` from `kλᵏ = Σ_{i=1}^{k} (−1)^{i−1} ψ^i_u(x) λ^{k−i}`.
///
/// Purely formal on class functions: for a virtual character the result need
/// not be the character of any representation.
pub fn lambda_series(x: &ClassFunction, n: usize, u: usize) -> Result<Vec<ClassFunction>> {
    let g = x.group();
    check_central_involution(g, u)?;
    let psi: Vec<ClassFunction> = (1..=n as u32).map(|k| adams_twisted(x, u, k)).collect::<Result<_>>()?;
    let mut lam = vec![ClassFunction::one(g)];
    for k in 1..=n {
        let mut acc = ClassFunction::constant(g, CycScalar::zero());
        for i in 1..=k {
            let term = psi[i - 1].mul(&lam[k - i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        lam.push(acc.scale(&inverse_integer(k)));
    }
    Ok(lam)
}

pub fn lambda_from_adams(x: &ClassFunction, n: usize, u: usize) -> Result<ClassFunction> {
    Ok(lambda_series(x, n, u)?.pop().expect("λ⁰ is always present"))
}

/// `[σ⁰, …, σⁿ]` from `Σ_{i+j=k} (−1)^i λ^i σ^j = 0`, i.e. `σ_t = λ_{−t}⁻¹`.
pub fn sigma_series(x: &ClassFunction, n: usize, u: usize) -> Result<Vec<ClassFunction>> {
    let lam = lambda_series(x, n, u)?;
    let g = x.group();
    let mut sigma = vec![ClassFunction::one(g)];
    for k in 1..=n {
        // σᵏ = Σ_{i=1}^{k} (−1)^{i+1} λ^i σ^{k−i}
        let mut acc = ClassFunction::constant(g, CycScalar::zero());
        for i in 1..=k {
            let term = lam[i].mul(&sigma[k - i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        sigma.push(acc);
    }
    Ok(sigma)
}

pub fn sigma_from_lambda(x: &ClassFunction, n: usize, u: usize) -> Result<ClassFunction> {
    Ok(sigma_series(x, n, u)?.pop().expect("σ⁰ is always present"))
}

/// Checks the λ-ring identities on `chars` up to `depth`: the twisted Adams
/// operations are unital ring homomorphisms with `ψⁿψᵐ = ψ^{nm}`, `λ` is
/// additive (`λⁱ(x+y) = Σ λˢ(x)λ^{i−s}(y)`), the first λ's are `1, x`, and
/// `σ` inverts `λ_{−t}`; the last is cross-checked against the independent
/// Newton identity `kσᵏ = Σ ψ^i σ^{k−i}`.
///
/// Witnesses are `[character index, n, m]`-style index tuples.
pub fn verify_lambda_ring(
    group: &Arc<FiniteGroup>,
    u: usize,
    chars: &[ClassFunction],
    depth: usize,
) -> Result<VerificationReport> {
    check_central_involution(group, u)?;
    let mut report = VerificationReport::default();
    let d = depth as u32;
    let one = ClassFunction::one(group);

    let psi = |x: &ClassFunction, k: u32| adams_twisted(x, u, k).expect("u checked");
    let first = |f: &mut dyn FnMut(usize, usize, u32) -> bool| -> Option<Vec<usize>> {
        for a in 0..chars.len() {
            for b in 0..chars.len() {
                for k in 1..=d {
                    if !f(a, b, k) {
                        return Some(vec![a, b, k as usize]);
                    }
                }
            }
        }
        None
    };

    let w = (1..=d).find(|&k| psi(&one, k) != one).map(|k| vec![k as usize]);
    report.push("adams_unital", w.is_none(), w);
    let w = first(&mut |a, b, k| psi(&chars[a].add(&chars[b]), k) == psi(&chars[a], k).add(&psi(&chars[b], k)));
    report.push("adams_additive", w.is_none(), w);
    let w = first(&mut |a, b, k| psi(&chars[a].mul(&chars[b]), k) == psi(&chars[a], k).mul(&psi(&chars[b], k)));
    report.push("adams_multiplicative", w.is_none(), w);

    let mut w = None;
    'comp: for (a, x) in chars.iter().enumerate() {
        for n in 1..=d {
            for m in 1..=d {
                if psi(&psi(x, m), n) != psi(x, n * m) {
                    w = Some(vec![a, n as usize, m as usize]);
                    break 'comp;
                }
            }
        }
    }
    report.push("adams_composition", w.is_none(), w);

    let series: Vec<Vec<ClassFunction>> = chars
        .iter()
        .map(|x| lambda_series(x, depth, u))
        .collect::<Result<_>>()?;
    let w = (0..chars.len())
        .find(|&a| series[a][0] != one || (depth >= 1 && series[a][1] != chars[a]))
        .map(|a| vec![a]);
    report.push("lambda_initial_terms", w.is_none(), w);

    let mut w = None;
    'add: for a in 0..chars.len() {
        for b in 0..chars.len() {
            let sum = lambda_series(&chars[a].add(&chars[b]), depth, u)?;
            for (i, lhs) in sum.iter().enumerate() {
                let mut rhs = ClassFunction::constant(group, CycScalar::zero());
                for s in 0..=i {
                    rhs = rhs.add(&series[a][s].mul(&series[b][i - s]));
                }
                if *lhs != rhs {
                    w = Some(vec![a, b, i]);
                    break 'add;
                }
            }
        }
    }
    report.push("lambda_additive", w.is_none(), w);

    let mut inv_w = None;
    let mut newton_w = None;
    for (a, x) in chars.iter().enumerate() {
        let sigma = sigma_series(x, depth, u)?;
        for k in 1..=depth {
            let mut acc = ClassFunction::constant(group, CycScalar::zero());
            for i in 0..=k {
                let term = series[a][i].mul(&sigma[k - i]);
                acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            if inv_w.is_none() && !acc.is_zero() {
                inv_w = Some(vec![a, k]);
            }
            let mut newton = ClassFunction::constant(group, CycScalar::zero());
            for i in 1..=k {
                newton = newton.add(&psi(x, i as u32).mul(&sigma[k - i]));
            }
            if newton_w.is_none() && newton != sigma[k].scale(&CycScalar::from_integer(k as i64)) {
                newton_w = Some(vec![a, k]);
            }
        }
    }
    report.push("sigma_inverts_lambda", inv_w.is_none(), inv_w);
    report.push("sigma_newton_identity", newton_w.is_none(), newton_w);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn sign_z2() -> ClassFunction {
        let g = catalog::group("Z2").unwrap();
        ClassFunction::new(&g, vec![1.into(), (-1).into()]).unwrap()
    }

    #[test]
    fn standard_adams_examples() {
        let z2 = catalog::group("Z2").unwrap();
        let reg = regular_rep(&z2).character();
        assert_eq!(reg.values(), &[2.into(), 0.into()]);
        assert_eq!(adams_standard(&reg, 1), reg);
        assert_eq!(adams_standard(&reg, 2), ClassFunction::constant(&z2, 2.into()));
        let s3 = catalog::group("S3").unwrap();
        let x = regular_rep(&s3).character();
        assert_eq!(adams_standard(&x, 6 * 5), ClassFunction::constant(&s3, 6.into()));
    }

    #[test]
    fn twisted_adams_examples() {
        let x = sign_z2();
        let g = x.group().clone();
        assert_eq!(adams_twisted(&x, 1, 1).unwrap(), x);
        assert_eq!(
            adams_twisted(&x, 1, 2).unwrap(),
            ClassFunction::constant(&g, (-1).into())
        );
        for k in 1..8 {
            assert_eq!(adams_twisted(&x, 0, k).unwrap(), adams_standard(&x, k));
        }
        let s3 = catalog::group("S3").unwrap();
        let y = ClassFunction::one(&s3);
        assert_eq!(adams_twisted(&y, 3, 2), Err(Error::NotCentralInvolution(3)));
        let z4 = catalog::group("Z4").unwrap();
        assert_eq!(
            adams_twisted(&ClassFunction::one(&z4), 1, 2),
            Err(Error::NotCentralInvolution(1))
        );
    }

    #[test]
    fn lambda_examples() {
        let x = sign_z2();
        let g = x.group().clone();
        assert_eq!(lambda_from_adams(&x, 0, 1).unwrap(), ClassFunction::one(&g));
        assert_eq!(lambda_from_adams(&x, 1, 1).unwrap(), x);
        // odd line: λ² is the trivial character
        assert_eq!(lambda_from_adams(&x, 2, 1).unwrap(), ClassFunction::one(&g));
        // even line: λ² = 0
        assert!(lambda_from_adams(&x, 2, 0).unwrap().is_zero());
    }

    #[test]
    fn newton_recursion_rank_one_oracle() {
        // λ_t = 1 + xt for a linear character under the untwisted reading
        let z4 = catalog::group("Z4").unwrap();
        for chi in linear_characters(&z4) {
            let x = chi.character();
            let lam = lambda_series(&x, 5, 0).unwrap();
            assert!(lam[2..].iter().all(ClassFunction::is_zero));
            // geometric series: σⁿ = xⁿ
            let sigma = sigma_series(&x, 5, 0).unwrap();
            let mut pow = ClassFunction::one(&z4);
            for s in &sigma {
                assert_eq!(*s, pow);
                pow = pow.mul(&x);
            }
        }
    }

    #[test]
    fn lambda_ring_axioms() {
        let z2 = catalog::group("Z2").unwrap();
        let chars: Vec<ClassFunction> = linear_characters(&z2)
            .iter()
            .map(MatrixRep::character)
            .chain([regular_rep(&z2).character()])
            .collect();
        for u in [0, 1] {
            let r = verify_lambda_ring(&z2, u, &chars, 6).unwrap();
            assert!(r.all_passed(), "u = {u}: {r:?}");
        }
    }

    #[test]
    fn lambda_ring_rejects_non_involution() {
        let z4 = catalog::group("Z4").unwrap();
        assert!(verify_lambda_ring(&z4, 1, &[], 2).is_err());
    }
}
