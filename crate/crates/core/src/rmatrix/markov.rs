use super::{QTDatum, VerificationReport};
use crate::error::{Error, Result};
use crate::hopf::GATensor;

/// The Markov element of an R-matrix together with the checks run on it.
#[derive(Clone, Debug)]
pub struct MarkovElement {
    /// `μ(S⊗I)(R)`, the exported element.
    pub u: GATensor,
    /// `μ(S⊗I)(R₂₁)`, the Drinfeld-style element the structural identities refer to.
    pub u_flipped: GATensor,
    pub report: VerificationReport,
}

impl MarkovElement {
    /// The group element `u`, when it is grouplike.
    pub fn element(&self) -> Option<usize> {
        self.u.as_group_element()
    }
}

/// Computes `u = μ(S⊗I)(R)` and validates it: `μ(S⊗I)(R₂₁)` is invertible,
/// central, and satisfies `Δ(u) = (R₂₁R)⁻¹(u⊗u)`; for unitary `R` both
/// conventions agree and `u` is grouplike.
pub fn markov_element(r: &GATensor) -> Result<MarkovElement> {
    if r.arity() != 2 {
        return Err(Error::ArityMismatch(r.arity(), 2));
    }
    let g = r.group().clone();
    let u = r.antipode(1)?.multiply_legs();
    let r21 = r.flip()?;
    let ud = r21.antipode(1)?.multiply_legs();
    let mut report = VerificationReport::default();

    let ud_inv = ud.inverse();
    report.push("invertible", ud_inv.is_ok(), None);

    let central = g.elements().find(|&h| {
        let x = GATensor::element(&g, h);
        x.multiply(&ud).ok() != ud.multiply(&x).ok() || x.multiply(&u).ok() != u.multiply(&x).ok()
    });
    report.push("central", central.is_none(), central.map(|h| vec![h]));

    let rhs = r21.multiply(r)?.inverse().and_then(|m| m.multiply(&ud.tensor(&ud)));
    match rhs {
        Ok(rhs) => report.push_eq("coproduct", &ud.coproduct(1)?, &rhs),
        Err(_) => report.push("coproduct", false, Some(Vec::new())),
    }

    if super::verify_unitary(r) {
        report.push_eq("conventions_agree", &u, &ud);
        report.push("grouplike", u.is_grouplike(), None);
        let sq = u.multiply(&u)?;
        report.push_eq("involution", &sq, &GATensor::unit(&g, 1));
    }
    Ok(MarkovElement {
        u,
        u_flipped: ud,
        report,
    })
}

/// `χ(i⁻¹(u)) = β(χ, χ)` for every `χ ∈ Â`, with `u` the only element of
/// `i(A)` satisfying it.
pub fn verify_markov_equation(d: &QTDatum, u: usize) -> Result<bool> {
    let beta = d
        .coinciding_form()
        .filter(|_| d.is_triangular())
        .ok_or_else(|| Error::InvalidDatum("datum is not triangular".into()))?;
    let a = d.abelian();
    let au = d.i().preimage(u).ok_or(Error::OutsideImage(u))?;
    let chars = a.characters();
    let satisfies = |x: usize| chars.iter().all(|chi| chi.log_eval(a, x) == beta.log_eval(a, chi, chi));
    if !satisfies(au) {
        return Ok(false);
    }
    Ok((0..a.order()).filter(|&x| satisfies(x)).count() == 1)
}
