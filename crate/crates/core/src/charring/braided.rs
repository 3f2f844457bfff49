use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{adams_twisted, lambda_series, ClassFunction, MatrixRep, MAX_TENSOR_DIM};
use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::hopf::GATensor;
use crate::linalg::Matrix;
use crate::rmatrix::{markov_element, verify_unitary, VerificationReport};

/// The action of `S_n` on `X^⊗n` induced by a unitary R-matrix: generator `i`
/// acts on slots `(i, i+1)` by the braiding `x⊗y ↦ R·(y⊗x)`.
#[derive(Clone, Debug)]
pub struct BraidedAction {
    rep: MatrixRep,
    n: usize,
    u: usize,
    generators: Vec<Matrix>,
    diagonal: Vec<Matrix>,
    /// `involution`, `braid_relation`, `far_commutation` and `equivariant`.
    pub report: VerificationReport,
}

fn tensor_dim(d: usize, n: usize) -> Result<usize> {
    match d.checked_pow(n as u32) {
        Some(dim) if dim <= MAX_TENSOR_DIM => Ok(dim),
        Some(dim) => Err(Error::DimensionTooLarge(dim)),
        None => Err(Error::DimensionTooLarge(usize::MAX)),
    }
}

// Markov element of a unitary R, which is then a central involution.
fn markov_involution(r: &GATensor) -> Result<usize> {
    if r.arity() != 2 {
        return Err(Error::ArityMismatch(r.arity(), 2));
    }
    if !verify_unitary(r) {
        return Err(Error::NotUnitary);
    }
    let m = markov_element(r)?;
    if !m.report.all_passed() {
        return Err(Error::Verification("Markov element checks failed".into()));
    }
    m.element()
        .ok_or_else(|| Error::Verification("Markov element is not grouplike".into()))
}

fn check_same_group(rep: &MatrixRep, r: &GATensor) -> Result<()> {
    if Arc::ptr_eq(rep.group(), r.group()) || rep.group() == r.group() {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

fn swap(d: usize) -> Matrix {
    let mut p = Matrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            p[(b * d + a, a * d + b)] = CycScalar::one();
        }
    }
    p
}

fn rational_inverse(n: usize) -> CycScalar {
    CycScalar::from_rational(BigRational::new(BigInt::from(1), BigInt::from(n)))
}

/// Builds the braided `S_n` action on `X^⊗n` and verifies it exactly.
pub fn braided_action(rep: &MatrixRep, r: &GATensor, n: usize) -> Result<BraidedAction> {
    check_same_group(rep, r)?;
    let u = markov_involution(r)?;
    let d = rep.dim();
    tensor_dim(d, n)?;
    let group = rep.group();

    let mut generators = Vec::new();
    if n >= 2 {
        let mut b = Matrix::zeros(d * d, d * d);
        for (t, c) in r.terms() {
            b = b.add(&rep.mat(t[0]).kron(rep.mat(t[1])).scale(c));
        }
        let b = b.mul(&swap(d));
        for i in 1..n {
            let left = Matrix::identity(d.pow(i as u32 - 1));
            let right = Matrix::identity(d.pow((n - i - 1) as u32));
            generators.push(left.kron(&b).kron(&right));
        }
    }
    let diagonal: Vec<Matrix> = group.elements().map(|g| rep.tensor_power_matrix(g, n)).collect();

    let mut report = VerificationReport::default();
    let id = Matrix::identity(d.pow(n as u32));
    let w = generators.iter().position(|s| s.mul(s) != id).map(|i| vec![i + 1]);
    report.push("involution", w.is_none(), w);
    let w = (0..generators.len().saturating_sub(1))
        .find(|&i| {
            let (a, b) = (&generators[i], &generators[i + 1]);
            a.mul(b).mul(a) != b.mul(a).mul(b)
        })
        .map(|i| vec![i + 1]);
    report.push("braid_relation", w.is_none(), w);
    let mut w = None;
    'far: for i in 0..generators.len() {
        for j in i + 2..generators.len() {
            if generators[i].mul(&generators[j]) != generators[j].mul(&generators[i]) {
                w = Some(vec![i + 1, j + 1]);
                break 'far;
            }
        }
    }
    report.push("far_commutation", w.is_none(), w);
    let mut w = None;
    'eq: for (i, s) in generators.iter().enumerate() {
        for g in group.elements() {
            if s.mul(&diagonal[g]) != diagonal[g].mul(s) {
                w = Some(vec![i + 1, g]);
                break 'eq;
            }
        }
    }
    report.push("equivariant", w.is_none(), w);

    Ok(BraidedAction {
        rep: rep.clone(),
        n,
        u,
        generators,
        diagonal,
        report,
    })
}

// Adjacent transpositions whose product, left to right, is `perm`.
fn reduced_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut swaps = Vec::new();
    let mut sorted = false;
    while !sorted {
        sorted = true;
        for j in 0..p.len().saturating_sub(1) {
            if p[j] > p[j + 1] {
                p.swap(j, j + 1);
                swaps.push(j);
                sorted = false;
            }
        }
    }
    // sorting right-multiplies by s_j, so perm = s_{j_k} ∘ … ∘ s_{j_1}
    swaps.reverse();
    swaps
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

impl BraidedAction {
    pub fn rep(&self) -> &MatrixRep {
        &self.rep
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Markov element of the R-matrix.
    pub fn markov(&self) -> usize {
        self.u
    }

    pub fn dim(&self) -> usize {
        self.rep.dim().pow(self.n as u32)
    }

    /// Matrices of the adjacent transpositions `s_1, …, s_{n−1}`.
    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// `ρ(g)^⊗n`.
    pub fn diagonal(&self, g: usize) -> &Matrix {
        &self.diagonal[g]
    }

    /// Operator of a permutation in one-line notation (`perm[k] = σ(k)`).
    pub fn permutation_operator(&self, perm: &[usize]) -> Result<Matrix> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&k| k >= self.n || std::mem::replace(&mut seen[k], true))
        {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        Ok(reduced_word(perm)
            .into_iter()
            .fold(Matrix::identity(self.dim()), |acc, j| acc.mul(&self.generators[j])))
    }

    /// `(1/n!) Σ_σ sign(σ)·σ`.
    pub fn antisymmetrizer(&self) -> Matrix {
        let perms = permutations(self.n);
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for p in &perms {
            let t = self.permutation_operator(p).expect("valid permutation");
            acc = if reduced_word(p).len().is_multiple_of(2) {
                acc.add(&t)
            } else {
                acc.sub(&t)
            };
        }
        acc.scale(&rational_inverse(perms.len()))
    }

    /// The cycle `τ = s_1 s_2 ⋯ s_{n−1}`.
    pub fn cycle(&self) -> Matrix {
        self.generators
            .iter()
            .fold(Matrix::identity(self.dim()), |acc, s| acc.mul(s))
    }

    /// `(1/n) Σ_{i<n} εⁱτⁱ`.
    pub fn cyclic_projector(&self, eps: &CycScalar) -> Matrix {
        let tau = self.cycle();
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        let mut power = Matrix::identity(self.dim());
        let mut coeff = CycScalar::one();
        for _ in 0..self.n {
            acc = acc.add(&power.scale(&coeff));
            power = power.mul(&tau);
            coeff = &coeff * eps;
        }
        acc.scale(&rational_inverse(self.n.max(1)))
    }

    pub fn is_equivariant(&self, f: &Matrix) -> bool {
        f.rows() == self.dim() && f.cols() == self.dim() && self.diagonal.iter().all(|m| m.mul(f) == f.mul(m))
    }

    /// Quantum trace `Tr(ρ(u)^⊗n · f)` of an equivariant endomorphism of `X^⊗n`.
    pub fn qtrace(&self, f: &Matrix) -> Result<CycScalar> {
        if !self.is_equivariant(f) {
            return Err(Error::NotEquivariant);
        }
        Ok(self.diagonal[self.u].trace_of_product(f))
    }
}

fn exterior_power(rep: &MatrixRep, r: &GATensor, n: usize) -> Result<(ClassFunction, VerificationReport)> {
    let action = braided_action(rep, r, n)?;
    let e = action.antisymmetrizer();
    let mut report = action.report.clone();
    report.push("antisymmetrizer_idempotent", e.mul(&e) == e, None);
    let w = rep.group().elements().find(|&g| {
        let m = action.diagonal(g);
        m.mul(&e) != e.mul(m)
    });
    report.push("antisymmetrizer_equivariant", w.is_none(), w.map(|g| vec![g]));
    let chi = ClassFunction::from_fn(rep.group(), |g| action.diagonal(g).trace_of_product(&e));
    Ok((chi, report))
}

/// Character of `Λⁿ_R(X)`: `g ↦ Tr(ρ(g)^⊗n · e)` with `e` the braided
/// antisymmetrizer, after checking the action and that `e` is an equivariant
/// idempotent.
pub fn exterior_power_char(rep: &MatrixRep, r: &GATensor, n: usize) -> Result<ClassFunction> {
    let (chi, report) = exterior_power(rep, r, n)?;
    match report.first_failure() {
        Some(name) => Err(Error::Verification(format!("exterior power {n}: {name} failed"))),
        None => Ok(chi),
    }
}

/// Compares braided exterior powers with the λ-operations generated by the
/// twisted Adams operations, for `n = 0, …, max_n`.
pub fn verify_exterior_powers(rep: &MatrixRep, r: &GATensor, max_n: usize) -> Result<VerificationReport> {
    check_same_group(rep, r)?;
    let u = markov_involution(r)?;
    let lam = lambda_series(&rep.character(), max_n, u)?;
    let mut report = VerificationReport::default();
    for (n, expect) in lam.iter().enumerate() {
        let (chi, sub) = exterior_power(rep, r, n)?;
        report.extend(&format!("n{n}_"), sub);
        let w = chi.values().iter().zip(expect.values()).position(|(a, b)| a != b);
        report.push(&format!("n{n}_matches_lambda"), w.is_none(), w.map(|k| vec![k]));
    }
    Ok(report)
}

fn check_prime_root(p: usize, eps: &CycScalar) -> Result<()> {
    if p < 2 || (2..p).any(|q| p.is_multiple_of(q)) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if !eps.pow(p as u32).is_one() {
        return Err(Error::NotRootOfUnity(eps.to_string()));
    }
    Ok(())
}

/// Quantum trace of `z` on the image of the cyclic projector `(1/p)Σ εⁱτⁱ`,
/// for every central `z`, as `(z, value)` pairs.
pub fn cyclic_operation_char(
    rep: &MatrixRep,
    r: &GATensor,
    p: usize,
    eps: &CycScalar,
) -> Result<Vec<(usize, CycScalar)>> {
    check_prime_root(p, eps)?;
    let action = braided_action(rep, r, p)?;
    let proj = action.cyclic_projector(eps);
    rep.group()
        .center()
        .into_iter()
        .map(|z| Ok((z, action.qtrace(&action.diagonal(z).mul(&proj))?)))
        .collect()
}

/// `Tr(ρ(u)·f)` for an equivariant endomorphism `f` of `X`.
pub fn qtrace(rep: &MatrixRep, r: &GATensor, f: &Matrix) -> Result<CycScalar> {
    qtrace_tensor_power(rep, r, 1, f)
}

/// `Tr(ρ(u)^⊗n·f)` for an equivariant endomorphism `f` of `X^⊗n`.
pub fn qtrace_tensor_power(rep: &MatrixRep, r: &GATensor, n: usize, f: &Matrix) -> Result<CycScalar> {
    check_same_group(rep, r)?;
    let u = markov_involution(r)?;
    let dim = tensor_dim(rep.dim(), n)?;
    if f.rows() != dim || f.cols() != dim {
        return Err(Error::InvalidArgument(format!("expected a {dim}×{dim} matrix")));
    }
    for g in rep.group().elements() {
        let m = rep.tensor_power_matrix(g, n);
        if m.mul(f) != f.mul(&m) {
            return Err(Error::NotEquivariant);
        }
    }
    Ok(rep.tensor_power_matrix(u, n).trace_of_product(f))
}

/// Checks, on `X^⊗p` for central `z` and every nontrivial `ε = ζ_p^k`:
///
/// * `deligne`: `qtr(τⁱ·z^⊗p) = qtr_X(z^p)` for `1 ≤ i < p` (witness `[i, z]`);
/// * `adams_difference_qtrace`: `qtr(c_1) − qtr(c_ε)` at `z` equals the quantum
///   trace of `ψ^p_u(χ)` at `z`, i.e. `ψ^p_u(χ)(uz) = χ(uz^p)` (witness `[k, z]`);
/// * `adams_difference_trace`: the ordinary traces differ by `ψ^p_u(χ)(z)`;
/// * `roots_vanish`: `Σ_{i<p} εⁱ = 0`, and `projector_decomposition`:
///   `p·qtr(c_ε) = qtr(z^⊗p) + (Σ_{0<i<p} εⁱ)·qtr_X(z^p)`;
/// * that the `P_ε` are idempotents summing to the identity and `τ^p = 1`.
pub fn verify_cyclic_identities(rep: &MatrixRep, r: &GATensor, p: usize) -> Result<VerificationReport> {
    check_prime_root(p, &CycScalar::one())?;
    let action = braided_action(rep, r, p)?;
    let g = rep.group();
    let u = action.markov();
    let chi = rep.character();
    let psi = adams_twisted(&chi, u, p as u32)?;
    let center = g.center();
    let mut report = action.report.clone();

    let tau = action.cycle();
    report.push("cycle_order", tau.pow(p as u32).is_identity(), None);

    let mut w = None;
    'del: for i in 1..p {
        let ti = tau.pow(i as u32);
        for &z in &center {
            let lhs = action.qtrace(&ti.mul(action.diagonal(z)))?;
            if lhs != *chi.eval(g.mul(u, g.pow(z, p as i64))) {
                w = Some(vec![i, z]);
                break 'del;
            }
        }
    }
    report.push("deligne", w.is_none(), w);

    let roots: Vec<CycScalar> = (0..p).map(|k| CycScalar::root_of_unity(p as u32, k as i64)).collect();
    let projectors: Vec<Matrix> = roots.iter().map(|e| action.cyclic_projector(e)).collect();
    let w = projectors.iter().position(|m| m.mul(m) != *m).map(|k| vec![k]);
    report.push("projectors_idempotent", w.is_none(), w);
    let total = projectors
        .iter()
        .skip(1)
        .fold(projectors[0].clone(), |acc, m| acc.add(m));
    report.push("projectors_sum_to_identity", total.is_identity(), None);

    let (mut wq, mut wt, mut wv, mut wd) = (None, None, None, None);
    for k in 1..p {
        let eps = &roots[k];
        let powers: Vec<CycScalar> = (0..p).map(|i| eps.pow(i as u32)).collect();
        if wv.is_none() && !powers.iter().cloned().sum::<CycScalar>().is_zero() {
            wv = Some(vec![k]);
        }
        let tail: CycScalar = powers[1..].iter().cloned().sum();
        for &z in &center {
            let dz = action.diagonal(z);
            let q1 = action.qtrace(&dz.mul(&projectors[0]))?;
            let qe = action.qtrace(&dz.mul(&projectors[k]))?;
            let chi_uzp = chi.eval(g.mul(u, g.pow(z, p as i64))).clone();
            if wq.is_none() && (&q1 - &qe != *psi.eval(g.mul(u, z)) || &q1 - &qe != chi_uzp) {
                wq = Some(vec![k, z]);
            }
            let t1 = dz.trace_of_product(&projectors[0]);
            let te = dz.trace_of_product(&projectors[k]);
            if wt.is_none() && &t1 - &te != *psi.eval(z) {
                wt = Some(vec![k, z]);
            }
            let full = action.qtrace(dz)?;
            if wd.is_none() && &qe * &CycScalar::from_integer(p as i64) != &full + &(&tail * &chi_uzp) {
                wd = Some(vec![k, z]);
            }
        }
    }
    report.push("adams_difference_qtrace", wq.is_none(), wq);
    report.push("adams_difference_trace", wt.is_none(), wt);
    report.push("roots_vanish", wv.is_none(), wv);
    report.push("projector_decomposition", wd.is_none(), wd);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::{adams_twisted, lambda_from_adams, linear_characters, regular_rep};
    use super::*;
    use crate::catalog;
    use crate::rmatrix::build_r;
    use crate::rmatrix::tests::{datum, koszul_r_u};

    fn sign() -> MatrixRep {
        linear_characters(&catalog::group("Z2").unwrap()).pop().unwrap()
    }

    fn scalar(m: &Matrix) -> CycScalar {
        assert_eq!((m.rows(), m.cols()), (1, 1));
        m[(0, 0)].clone()
    }

    #[test]
    fn unit_r_gives_plain_swaps() {
        let z2 = catalog::group("Z2").unwrap();
        let rho = regular_rep(&z2);
        let act = braided_action(&rho, &GATensor::unit(&z2, 2), 3).unwrap();
        assert!(act.report.all_passed());
        assert_eq!(act.generators()[0], swap(2).kron(&Matrix::identity(2)));
        assert_eq!(act.markov(), 0);
    }

    #[test]
    fn koszul_braiding_on_the_odd_line() {
        let act = braided_action(&sign(), &koszul_r_u(), 2).unwrap();
        assert_eq!(scalar(&act.generators()[0]), (-1).into());
        // odd line: Λ² is one-dimensional and trivial
        let lam2 = exterior_power_char(&sign(), &koszul_r_u(), 2).unwrap();
        assert_eq!(lam2, ClassFunction::one(sign().group()));
        assert_eq!(lam2, lambda_from_adams(&sign().character(), 2, 1).unwrap());
    }

    #[test]
    fn exterior_low_degrees() {
        let z2 = catalog::group("Z2").unwrap();
        let rho = regular_rep(&z2);
        let r = koszul_r_u();
        assert_eq!(exterior_power_char(&rho, &r, 0).unwrap(), ClassFunction::one(&z2));
        assert_eq!(exterior_power_char(&rho, &r, 1).unwrap(), rho.character());
    }

    #[test]
    fn rejects_non_unitary_and_oversized() {
        let d = datum("S3", &[0, 1, 2], vec![vec![1]]);
        let r = build_r(&d);
        let rho = regular_rep(d.group());
        assert_eq!(braided_action(&rho, &r, 2).unwrap_err(), Error::NotUnitary);
        let q8 = catalog::group("Q8").unwrap();
        let big = regular_rep(&q8);
        assert_eq!(
            braided_action(&big, &GATensor::unit(&q8, 2), 5).unwrap_err(),
            Error::DimensionTooLarge(8usize.pow(5))
        );
    }

    #[test]
    fn qtrace_examples() {
        let one = Matrix::identity(1);
        assert_eq!(qtrace(&sign(), &koszul_r_u(), &one).unwrap(), (-1).into());
        let z2 = catalog::group("Z2").unwrap();
        let rho = regular_rep(&z2);
        // fixed-point-free translation
        assert_eq!(qtrace(&rho, &koszul_r_u(), &Matrix::identity(2)).unwrap(), 0.into());
        assert_eq!(
            qtrace(&rho, &GATensor::unit(&z2, 2), &Matrix::identity(2)).unwrap(),
            2.into()
        );
        // δ_e ↦ δ_e, δ_u ↦ 0 does not commute with translation
        let mut f = Matrix::zeros(2, 2);
        f[(0, 0)] = CycScalar::one();
        assert_eq!(qtrace(&rho, &koszul_r_u(), &f), Err(Error::NotEquivariant));
    }

    #[test]
    fn cyclic_operation_examples() {
        let z2 = catalog::group("Z2").unwrap();
        let rho = regular_rep(&z2);
        let vals = cyclic_operation_char(&rho, &GATensor::unit(&z2, 2), 2, &CycScalar::one()).unwrap();
        // d(d+1)/2 symmetric tensors
        assert_eq!(vals[0], (0, 3.into()));
        let minus = CycScalar::from_integer(-1);
        let c1 = cyclic_operation_char(&sign(), &koszul_r_u(), 2, &CycScalar::one()).unwrap();
        let ce = cyclic_operation_char(&sign(), &koszul_r_u(), 2, &minus).unwrap();
        // τ = −1 on the odd line: all of X⊗X lies in the ε = −1 part
        assert_eq!(c1, vec![(0, 0.into()), (1, 0.into())]);
        assert_eq!(ce, vec![(0, 1.into()), (1, 1.into())]);
        let psi = adams_twisted(&sign().character(), 1, 2).unwrap();
        for z in [0, 1] {
            assert_eq!(&c1[z].1 - &ce[z].1, *psi.eval(z2.mul(1, z)));
        }
        assert!(matches!(
            cyclic_operation_char(&sign(), &koszul_r_u(), 2, &CycScalar::root_of_unity(3, 1)),
            Err(Error::NotRootOfUnity(_))
        ));
        assert!(cyclic_operation_char(&sign(), &koszul_r_u(), 4, &CycScalar::one()).is_err());
    }

    #[test]
    fn cyclic_identities_on_small_groups() {
        let z2 = catalog::group("Z2").unwrap();
        for r in [GATensor::unit(&z2, 2), koszul_r_u()] {
            for rho in [regular_rep(&z2), sign()] {
                for p in [2, 3] {
                    let rep = verify_cyclic_identities(&rho, &r, p).unwrap();
                    assert!(rep.all_passed(), "{rep:?}");
                }
            }
        }
    }

    #[test]
    fn exterior_powers_match_lambda() {
        let z2 = catalog::group("Z2").unwrap();
        for r in [GATensor::unit(&z2, 2), koszul_r_u()] {
            let rep = verify_exterior_powers(&regular_rep(&z2), &r, 3).unwrap();
            assert!(rep.all_passed(), "{rep:?}");
        }
    }

    #[test]
    fn reduced_words_multiply_back() {
        for p in permutations(4) {
            let mut q: Vec<usize> = (0..4).collect();
            // apply s_{j_1} ∘ … on the right of the identity, in word order
            for j in reduced_word(&p) {
                q.swap(j, j + 1);
            }
            assert_eq!(q, p);
        }
        assert_eq!(permutations(3).len(), 6);
    }
}
