//! Universal R-matrices on `k[G]` built from classification data, and exact
//! verification of the quasitriangular identities they must satisfy.

mod koszul;
mod markov;
mod support;

pub use koszul::{koszul_r, koszul_twist, KoszulTwist};
pub use markov::{markov_element, verify_markov_equation, MarkovElement};
pub use support::{alpha_map, minimal_support, AlphaMap, MinimalSupport};

use std::sync::Arc;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::groups::{same_module_structure, AbelianGroup, BiForm, Character, FiniteGroup, Inclusion};
use crate::hopf::GATensor;

/// A classification datum `(G, A, i, j, β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTDatum {
    i: Inclusion,
    j: Inclusion,
    beta: BiForm,
}

impl QTDatum {
    pub fn new(i: Inclusion, j: Inclusion, beta: BiForm) -> Result<Self> {
        if i.group() != j.group() {
            return Err(Error::GroupMismatch);
        }
        if i.source() != j.source() {
            return Err(Error::InvalidDatum("inclusions have different sources".into()));
        }
        if !i.is_normal() || !j.is_normal() {
            return Err(Error::InvalidDatum("inclusion image is not normal".into()));
        }
        if !same_module_structure(&i, &j) {
            return Err(Error::InvalidDatum(
                "inclusions induce different G-module structures".into(),
            ));
        }
        let a = i.source();
        if !beta.is_nondegenerate(a) {
            return Err(Error::InvalidDatum("form is degenerate".into()));
        }
        if !beta.is_invariant(a, &i.conjugation_action()?) {
            return Err(Error::InvalidDatum("form is not G-invariant".into()));
        }
        Ok(QTDatum { i, j, beta })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.i.group()
    }

    pub fn abelian(&self) -> &AbelianGroup {
        self.i.source()
    }

    pub fn i(&self) -> &Inclusion {
        &self.i
    }

    pub fn j(&self) -> &Inclusion {
        &self.j
    }

    pub fn beta(&self) -> &BiForm {
        &self.beta
    }

    /// When `i(A) = j(A)`, the form re-expressed with both legs in
    /// `i`-coordinates: `(χ, η) ↦ β(χ, η∘i⁻¹j)`. This is the datum `(i, i, β')`
    /// producing the same R-matrix.
    pub fn coinciding_form(&self) -> Option<BiForm> {
        if self.i.image() != self.j.image() {
            return None;
        }
        let a = self.abelian();
        let phi: Vec<usize> = (0..a.order())
            .map(|x| self.i.preimage(self.j.apply(x)).expect("equal images"))
            .collect();
        Some(self.beta.twist_right(a, &phi))
    }

    /// Inclusions coincide (up to an automorphism of `A`) and the transported
    /// form is skewsymmetric.
    pub fn is_triangular(&self) -> bool {
        self.coinciding_form()
            .is_some_and(|f| f.is_skewsymmetric(self.abelian()))
    }

    /// The narrow reading: literally `i = j` and `β` skewsymmetric.
    pub fn is_literally_triangular(&self) -> bool {
        self.i == self.j && self.beta.is_skewsymmetric(self.abelian())
    }
}

/// `1/|A|² Σ_{a,b} Σ_{χ,ξ} ζ_e^{form(χ,ξ)} χ(a) ξ(b) i(a) ⊗ j(b)`, evaluated
/// literally; exponent counts are gathered per coefficient before converting
/// to a cyclotomic scalar.
pub(crate) fn bicharacter_tensor(
    i: &Inclusion,
    j: &Inclusion,
    form_log: impl Fn(&Character, &Character) -> u32,
) -> GATensor {
    let a = i.source();
    let e = a.exponent();
    let n = a.order();
    let chars = a.characters();
    let table: Vec<Vec<u32>> = chars
        .iter()
        .map(|chi| chars.iter().map(|xi| form_log(chi, xi)).collect())
        .collect();
    let evals: Vec<Vec<u32>> = chars
        .iter()
        .map(|c| (0..n).map(|x| c.log_eval(a, x)).collect())
        .collect();
    let norm = CycScalar::from_ratio(1, (n * n) as i64);
    let mut r = GATensor::zero(i.group(), 2);
    for x in 0..n {
        for y in 0..n {
            let mut counts = vec![0i64; e as usize];
            for (ci, row) in table.iter().enumerate() {
                for (xi, &b) in row.iter().enumerate() {
                    let k = (b + evals[ci][x] + evals[xi][y]) % e;
                    counts[k as usize] += 1;
                }
            }
            let c: CycScalar = counts
                .iter()
                .enumerate()
                .filter(|(_, &m)| m != 0)
                .map(|(k, &m)| &CycScalar::from_integer(m) * &CycScalar::root_of_unity(e, k as i64))
                .sum();
            r.add_term(vec![i.apply(x), j.apply(y)], &c * &norm);
        }
    }
    r
}

/// The R-matrix of a classification datum.
pub fn build_r(d: &QTDatum) -> GATensor {
    let a = d.abelian().clone();
    bicharacter_tensor(&d.i, &d.j, |chi, xi| d.beta.log_eval(&a, chi, xi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// A basis tuple where the two sides differ (prefixed by the group element
    /// under test, for per-element checks).
    pub witness: Option<Vec<usize>>,
}

/// Outcome of a batch of named identity checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, name: &str, passed: bool, witness: Option<Vec<usize>>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            witness,
        });
    }

    /// Records `lhs == rhs`, with the first differing tuple as witness.
    pub fn push_eq(&mut self, name: &str, lhs: &GATensor, rhs: &GATensor) {
        let witness = difference_witness(lhs, rhs);
        self.push(name, witness.is_none(), witness);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Name of the first failed check.
    pub fn first_failure(&self) -> Option<String> {
        self.failures().next().map(|c| c.name.clone())
    }

    pub fn extend(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }
}

pub(crate) fn difference_witness(lhs: &GATensor, rhs: &GATensor) -> Option<Vec<usize>> {
    if lhs == rhs {
        return None;
    }
    match lhs.sub(rhs) {
        Ok(diff) => Some(diff.terms().keys().next().cloned().unwrap_or_default()),
        Err(_) => Some(Vec::new()),
    }
}

/// Checks invertibility and every quasitriangular identity on `R`:
/// invariance `R·Δ(h) = Δ(h)·R` (generators, then all elements), both
/// coproduct identities `(I⊗Δ)R = R₁₃R₁₂` and `(Δ⊗I)R = R₁₃R₂₃`, the
/// Yang–Baxter equation, the counit identities, `(S⊗I)R = (I⊗S)R = R⁻¹` and
/// `(S⊗S)R = R`. Witnesses are basis tuples where the two sides differ.
pub fn verify_qt(r: &GATensor) -> Result<VerificationReport> {
    if r.arity() != 2 {
        return Err(Error::ArityMismatch(r.arity(), 2));
    }
    let g = r.group().clone();
    let mut rep = VerificationReport::default();
    // a non-invertible R still gets every other identity checked, so that
    // corruptions are located by a witness tuple
    rep.push("invertible", r.inverse().is_ok(), None);

    let invariance = |elements: &[usize]| -> Result<Option<Vec<usize>>> {
        for &h in elements {
            let hh = GATensor::basis(&g, vec![h, h], CycScalar::one());
            let lhs = r.multiply(&hh)?;
            let rhs = hh.multiply(r)?;
            if let Some(w) = difference_witness(&lhs, &rhs) {
                let mut t = vec![h];
                t.extend(w);
                return Ok(Some(t));
            }
        }
        Ok(None)
    };
    let w = invariance(&g.generators())?;
    rep.push("invariance_generators", w.is_none(), w);
    let all: Vec<usize> = g.elements().collect();
    let w = invariance(&all)?;
    rep.push("invariance_all", w.is_none(), w);

    let r12 = r.embed_legs(1, 2, 3)?;
    let r13 = r.embed_legs(1, 3, 3)?;
    let r23 = r.embed_legs(2, 3, 3)?;
    rep.push_eq("first_coproduct", &r.coproduct(2)?, &r13.multiply(&r12)?);
    rep.push_eq("second_coproduct", &r.coproduct(1)?, &r13.multiply(&r23)?);
    rep.push_eq(
        "yang_baxter",
        &GATensor::product([&r12, &r13, &r23])?,
        &GATensor::product([&r23, &r13, &r12])?,
    );
    let one = GATensor::unit(&g, 1);
    rep.push_eq("counit_left", &r.counit(1)?, &one);
    rep.push_eq("counit_right", &r.counit(2)?, &one);
    // x·R = 1⊗1 forces x = R⁻¹ (one-sided inverses are two-sided here)
    let unit2 = GATensor::unit(&g, 2);
    rep.push_eq("antipode_left", &r.antipode(1)?.multiply(r)?, &unit2);
    rep.push_eq("antipode_right", &r.antipode(2)?.multiply(r)?, &unit2);
    rep.push_eq("antipode_both", &r.antipode(1)?.antipode(2)?, r);
    Ok(rep)
}

/// `R·R₂₁ = 1⊗1`.
pub fn verify_unitary(r: &GATensor) -> bool {
    match (r.flip(), r.arity()) {
        (Ok(r21), 2) => r.multiply(&r21).is_ok_and(|p| p == GATensor::unit(r.group(), 2)),
        _ => false,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::catalog;
    use crate::groups::{normal_inclusions, subgroup_structure};

    pub(crate) fn half() -> CycScalar {
        CycScalar::from_ratio(1, 2)
    }

    pub(crate) fn koszul_r_u() -> GATensor {
        let z2 = catalog::group("Z2").unwrap();
        GATensor::from_terms(
            &z2,
            2,
            [
                (vec![0, 0], half()),
                (vec![0, 1], half()),
                (vec![1, 0], half()),
                (vec![1, 1], -half()),
            ],
        )
        .unwrap()
    }

    pub(crate) fn datum(group: &str, subgroup: &[usize], beta: Vec<Vec<u32>>) -> QTDatum {
        let g = catalog::group(group).unwrap();
        let i = subgroup_structure(&g, subgroup).unwrap();
        let beta = BiForm::new(i.source(), beta).unwrap();
        QTDatum::new(i.clone(), i, beta).unwrap()
    }

    #[test]
    fn trivial_datum_gives_unit() {
        let d = datum("S3", &[0], vec![]);
        assert_eq!(build_r(&d), GATensor::unit(d.group(), 2));
        let rep = verify_qt(&build_r(&d)).unwrap();
        assert!(rep.all_passed());
        assert!(verify_unitary(&build_r(&d)));
    }

    #[test]
    fn koszul_example_matches_closed_form() {
        let d = datum("Z2", &[0, 1], vec![vec![1]]);
        assert!(d.is_triangular() && d.is_literally_triangular());
        let r = build_r(&d);
        assert_eq!(r, koszul_r_u());
        assert!(verify_qt(&r).unwrap().all_passed());
        assert!(verify_unitary(&r));
    }

    #[test]
    fn s3_zeta3_datum_is_quasitriangular_but_not_unitary() {
        let d = datum("S3", &[0, 1, 2], vec![vec![1]]);
        let r = build_r(&d);
        assert_eq!(r.support_size(), 9);
        let rep = verify_qt(&r).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(!d.is_triangular());
        // oracle: expand R·R₂₁ directly and compare with the unit
        let r21 = r.permute_legs(&[2, 1]).unwrap();
        let mut direct = GATensor::zero(d.group(), 2);
        for (s, a) in r.terms() {
            for (t, b) in r21.terms() {
                let g = d.group();
                direct.add_term(vec![g.mul(s[0], t[0]), g.mul(s[1], t[1])], a * b);
            }
        }
        assert_ne!(direct, GATensor::unit(d.group(), 2));
        assert!(!verify_unitary(&r));
    }

    #[test]
    fn projector_fails_invertibility() {
        let z2 = catalog::group("Z2").unwrap();
        let p = GATensor::from_terms(
            &z2,
            2,
            [
                (vec![0, 0], half()),
                (vec![0, 1], half()),
                (vec![1, 0], half()),
                (vec![1, 1], half()),
            ],
        )
        .unwrap();
        let rep = verify_qt(&p).unwrap();
        assert!(!rep.passed("invertible"));
        assert!(!rep.passed("antipode_left"));
        assert_eq!(rep.checks.len(), 11);
    }

    #[test]
    fn corrupted_r_fails_with_witness() {
        let r = koszul_r_u();
        let z2 = r.group().clone();
        let bad = r
            .sub(&GATensor::basis(&z2, vec![1, 1], CycScalar::from_integer(-1)))
            .unwrap();
        let rep = verify_qt(&bad).unwrap();
        assert!(!rep.passed("invertible"));
        let f = rep.get("first_coproduct").unwrap();
        assert!(!f.passed);
        assert_eq!(f.witness.as_ref().map(Vec::len), Some(3));
    }

    #[test]
    fn datum_validation() {
        let g = catalog::group("Z4").unwrap();
        let i = subgroup_structure(&g, &[0, 1, 2, 3]).unwrap();
        // β = ζ_4^2 on the generator is degenerate
        let beta = BiForm::new(i.source(), vec![vec![2]]).unwrap();
        assert!(QTDatum::new(i.clone(), i.clone(), beta).is_err());
        let s3 = catalog::group("S3").unwrap();
        let a3 = subgroup_structure(&s3, &[0, 1, 2]).unwrap();
        let incs = normal_inclusions(a3.source(), &s3).unwrap();
        let beta = BiForm::new(a3.source(), vec![vec![1]]).unwrap();
        for j in &incs {
            assert!(QTDatum::new(incs[0].clone(), j.clone(), beta.clone()).is_ok());
        }
    }

    #[test]
    fn coinciding_form_reparametrises() {
        // i = id, j = inversion on Z/4: (i, j, β) and (i, i, β') build the same R
        let g = catalog::group("Z4").unwrap();
        let a = AbelianGroup::new(vec![4]).unwrap();
        let i = Inclusion::from_generator_images(&g, &a, &[1]).unwrap();
        let j = Inclusion::from_generator_images(&g, &a, &[3]).unwrap();
        let beta = BiForm::new(&a, vec![vec![1]]).unwrap();
        let d = QTDatum::new(i.clone(), j, beta).unwrap();
        let beta2 = d.coinciding_form().unwrap();
        let d2 = QTDatum::new(i.clone(), i, beta2).unwrap();
        assert_eq!(build_r(&d), build_r(&d2));
    }
}
