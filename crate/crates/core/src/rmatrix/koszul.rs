//! The twist `F_γ` relating a triangular structure to the Koszul sign rule on
//! the subgroup generated by its Markov element.

use std::sync::Arc;

use num_integer::Integer;

use super::{bicharacter_tensor, build_r, markov_element, QTDatum, VerificationReport};
use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::groups::{enumerate_biforms, BiForm, FiniteGroup, FormFlags};
use crate::hopf::GATensor;

#[derive(Clone, Debug)]
pub struct KoszulTwist {
    /// Markov element of the datum's R-matrix.
    pub u: usize,
    /// The Koszul form pulled back from `⟨u⟩`, in `i`-coordinates.
    pub beta_u: BiForm,
    pub gamma: BiForm,
    /// Whether `γ` came from the upper-triangular rule (as opposed to the search fallback).
    pub upper_triangular: bool,
    /// `R_u`, the Koszul R-matrix of `⟨u⟩` (`1⊗1` when `u = 1`).
    pub r_u: GATensor,
    pub f: GATensor,
    pub report: VerificationReport,
}

/// `½(1⊗1 + 1⊗u + u⊗1 − u⊗u)`, or `1⊗1` for `u = 1`.
pub fn koszul_r(group: &Arc<FiniteGroup>, u: usize) -> GATensor {
    let e = group.identity();
    if u == e {
        return GATensor::unit(group, 2);
    }
    let h = CycScalar::from_ratio(1, 2);
    GATensor::from_terms(
        group,
        2,
        [
            (vec![e, e], h.clone()),
            (vec![e, u], h.clone()),
            (vec![u, e], h.clone()),
            (vec![u, u], -h),
        ],
    )
    .expect("valid tuples")
}

/// Builds `F_γ = 1/|A|² Σ γ(χ,ξ)χ(a)ξ(b) a⊗b` for a triangular datum, with
/// `γ(χ,ξ)/γ(ξ,χ) = β(χ,ξ)/β_u(χ,ξ)`, and checks `R·t(F) = R_u·F`,
/// `(u⊗u)F = F(u⊗u)` and the 2-cocycle identity
/// `(1⊗F)(I⊗Δ)(F) = (F⊗1)(Δ⊗I)(F)`.
pub fn koszul_twist(d: &QTDatum) -> Result<KoszulTwist> {
    if !d.is_triangular() {
        return Err(Error::InvalidDatum("Koszul twist needs a triangular datum".into()));
    }
    let beta = d.coinciding_form().expect("triangular data have coinciding images");
    let a = d.abelian();
    let e = a.exponent();
    let f = a.factors().to_vec();
    let g = d.group().clone();
    let r = build_r(d);
    let u = markov_element(&r)?
        .element()
        .ok_or_else(|| Error::Verification("Markov element is not grouplike".into()))?;
    let au = d.i().preimage(u).ok_or(Error::OutsideImage(u))?;

    // β_u(χ_i, χ_j) = −1 exactly when both characters are −1 on u
    let odd: Vec<bool> = (0..a.rank())
        .map(|i| a.character(a.basis_element(i)).log_eval(a, au) != 0)
        .collect();
    let beta_u = BiForm::new(
        a,
        (0..a.rank())
            .map(|i| {
                (0..a.rank())
                    .map(|j| if odd[i] && odd[j] { f[i].gcd(&f[j]) / 2 } else { 0 })
                    .collect()
            })
            .collect(),
    )?;

    let chars = a.characters();
    let delta = |x: &_, y: &_| (beta.log_eval(a, x, y) + e - beta_u.log_eval(a, x, y)) % e;
    let splits = |gamma: &BiForm| {
        chars.iter().all(|x| {
            chars
                .iter()
                .all(|y| (gamma.log_eval(a, x, y) + e - gamma.log_eval(a, y, x)) % e == delta(x, y))
        })
    };

    let basis: Vec<_> = (0..a.rank()).map(|i| a.character(a.basis_element(i))).collect();
    let upper = BiForm::new(
        a,
        (0..a.rank())
            .map(|r| {
                (0..a.rank())
                    .map(|s| {
                        if r < s {
                            delta(&basis[r], &basis[s]) / (e / f[r].gcd(&f[s]))
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect(),
    )?;
    let (gamma, upper_triangular) = if splits(&upper) {
        (upper, true)
    } else {
        let found = enumerate_biforms(a, &[], FormFlags::default())
            .into_iter()
            .find(|c| splits(c))
            .ok_or(Error::NoGamma)?;
        (found, false)
    };

    let ff = bicharacter_tensor(d.i(), d.i(), |x, y| gamma.log_eval(a, x, y));
    let r_u = koszul_r(&g, u);
    let mut report = VerificationReport::default();
    report.push("invertible", ff.inverse().is_ok(), None);
    report.push_eq("intertwines_braidings", &r.multiply(&ff.flip()?)?, &r_u.multiply(&ff)?);
    let uu = GATensor::basis(&g, vec![u, u], CycScalar::one());
    report.push_eq("commutes_with_u", &uu.multiply(&ff)?, &ff.multiply(&uu)?);
    report.push_eq(
        "two_cocycle",
        &ff.pad(1, 0).multiply(&ff.coproduct(2)?)?,
        &ff.pad(0, 1).multiply(&ff.coproduct(1)?)?,
    );
    Ok(KoszulTwist {
        u,
        beta_u,
        gamma,
        upper_triangular,
        r_u,
        f: ff,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{datum, koszul_r_u};
    use super::*;

    #[test]
    fn z2_twist_is_trivial() {
        let d = datum("Z2", &[0, 1], vec![vec![1]]);
        let k = koszul_twist(&d).unwrap();
        assert_eq!(k.u, 1);
        assert_eq!(k.beta_u, *d.beta());
        assert!(k.gamma.exps().iter().flatten().all(|&x| x == 0));
        assert_eq!(k.f, GATensor::unit(d.group(), 2));
        assert_eq!(k.r_u, koszul_r_u());
        assert!(k.report.all_passed());
    }

    #[test]
    fn klein_hyperbolic_form_has_trivial_markov_element() {
        // β = [[0,1],[1,0]] has trivial diagonal, so u = 1 and F twists R into 1⊗1
        let d = datum("Z2xZ2", &[0, 1, 2, 3], vec![vec![0, 1], vec![1, 0]]);
        let k = koszul_twist(&d).unwrap();
        assert_eq!(k.u, 0);
        assert!(k.upper_triangular);
        assert_eq!(k.gamma.exps(), &[vec![0, 1], vec![0, 0]]);
        assert!(k.report.all_passed(), "{:?}", k.report);
        // oracle: R·t(F) = F when R_u = 1⊗1
        let r = build_r(&d);
        assert_eq!(r.multiply(&k.f.flip().unwrap()).unwrap(), k.f);
    }

    #[test]
    fn klein_odd_form_twists_to_koszul() {
        let d = datum("Z2xZ2", &[0, 1, 2, 3], vec![vec![1, 1], vec![1, 0]]);
        let k = koszul_twist(&d).unwrap();
        assert_ne!(k.u, 0);
        assert!(k.report.all_passed(), "{:?}", k.report);
        assert_ne!(k.f, GATensor::unit(d.group(), 2));
    }

    #[test]
    fn rejects_non_triangular() {
        let d = datum("S3", &[0, 1, 2], vec![vec![1]]);
        assert!(koszul_twist(&d).is_err());
    }
}
