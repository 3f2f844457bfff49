use super::{QTDatum, VerificationReport};
use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::hopf::GATensor;
use crate::linalg::{Matrix, RowEchelon};

/// The spans `H_l = {(I⊗l)(R)}` and `H_r = {(l⊗I)(R)}` as subspaces of `k[G]`
/// in group-element coordinates.
#[derive(Clone, Debug)]
pub struct MinimalSupport {
    pub left: RowEchelon,
    pub right: RowEchelon,
    pub report: VerificationReport,
}

fn coefficient_matrix(r: &GATensor) -> Matrix {
    let n = r.group().size();
    let mut m = Matrix::zeros(n, n);
    for (t, c) in r.terms() {
        m[(t[0], t[1])] = c.clone();
    }
    m
}

fn tensor_of(r: &GATensor, v: &[CycScalar]) -> GATensor {
    let g = r.group();
    GATensor::from_terms(g, 1, v.iter().enumerate().map(|(k, c)| (vec![k], c.clone()))).expect("valid vector")
}

fn vector_of(x: &GATensor, n: usize) -> Vec<CycScalar> {
    let mut v = vec![CycScalar::zero(); n];
    for (t, c) in x.terms() {
        v[t[0]] = c.clone();
    }
    v
}

// Records closure of `span` under product, unit, coproduct, antipode and conjugation.
fn check_hopf_subalgebra(report: &mut VerificationReport, side: &str, span: &RowEchelon, r: &GATensor) -> Result<()> {
    let g = r.group();
    let n = g.size();
    let basis: Vec<GATensor> = span.basis().iter().map(|v| tensor_of(r, v)).collect();

    let mut unit = vec![CycScalar::zero(); n];
    unit[g.identity()] = CycScalar::one();
    report.push(&format!("{side}_unit"), span.contains(&unit), None);

    let mut witness = None;
    'outer: for (p, x) in basis.iter().enumerate() {
        for (q, y) in basis.iter().enumerate() {
            if !span.contains(&vector_of(&x.multiply(y)?, n)) {
                witness = Some(vec![p, q]);
                break 'outer;
            }
        }
    }
    report.push(&format!("{side}_product"), witness.is_none(), witness);

    // Δ(x) lies in V⊗V iff every row and every column of its coefficient matrix lies in V
    let mut witness = None;
    for (p, x) in basis.iter().enumerate() {
        let m = coefficient_matrix(&x.coproduct(1)?);
        let ok = (0..n).all(|k| span.contains(m.row(k)) && span.contains(&m.column(k)));
        if !ok {
            witness = Some(vec![p]);
            break;
        }
    }
    report.push(&format!("{side}_coproduct"), witness.is_none(), witness);

    let witness = basis
        .iter()
        .position(|x| !span.contains(&vector_of(&x.antipode(1).expect("arity 1"), n)))
        .map(|p| vec![p]);
    report.push(&format!("{side}_antipode"), witness.is_none(), witness);

    let mut witness = None;
    'adj: for (p, x) in basis.iter().enumerate() {
        for h in g.elements() {
            if !span.contains(&vector_of(&x.adjoint_action(h, 1)?, n)) {
                witness = Some(vec![p, h]);
                break 'adj;
            }
        }
    }
    report.push(&format!("{side}_normal"), witness.is_none(), witness);
    Ok(())
}

/// Extracts the left and right supports of `R` by applying coordinate
/// functionals and checks that each is a normal Hopf subalgebra; for unitary
/// `R` also that they coincide.
pub fn minimal_support(r: &GATensor) -> Result<MinimalSupport> {
    if r.arity() != 2 {
        return Err(Error::ArityMismatch(r.arity(), 2));
    }
    let n = r.group().size();
    let m = coefficient_matrix(r);
    let left = RowEchelon::new((0..n).map(|h| m.column(h)).collect(), n);
    let right = RowEchelon::new((0..n).map(|g| m.row(g).to_vec()).collect(), n);
    let mut report = VerificationReport::default();
    check_hopf_subalgebra(&mut report, "left", &left, r)?;
    check_hopf_subalgebra(&mut report, "right", &right, r)?;
    if super::verify_unitary(r) {
        report.push("supports_coincide", left.same_space(&right), None);
    }
    Ok(MinimalSupport { left, right, report })
}

impl MinimalSupport {
    /// Compares the supports with `span i(A)` and `span j(A)`.
    pub fn matches_datum(&self, d: &QTDatum) -> VerificationReport {
        let n = d.group().size();
        let span_of = |elements: Vec<usize>| {
            RowEchelon::new(
                elements
                    .into_iter()
                    .map(|g| {
                        let mut v = vec![CycScalar::zero(); n];
                        v[g] = CycScalar::one();
                        v
                    })
                    .collect(),
                n,
            )
        };
        let order = d.abelian().order();
        let mut rep = VerificationReport::default();
        rep.push("left_dimension", self.left.rank() == order, None);
        rep.push("right_dimension", self.right.rank() == order, None);
        rep.push(
            "left_is_image_of_i",
            self.left.same_space(&span_of(d.i().image_elements())),
            None,
        );
        rep.push(
            "right_is_image_of_j",
            self.right.same_space(&span_of(d.j().image_elements())),
            None,
        );
        rep
    }
}

/// `α(l) = (I⊗l)(R)`, as the matrix whose column `h` is `α(δ_h)` in
/// group-element coordinates (`δ_h` the coordinate functionals).
#[derive(Clone, Debug)]
pub struct AlphaMap {
    pub matrix: Matrix,
    pub rank: usize,
    pub report: VerificationReport,
}

/// Builds `α` and checks that it reverses products of functionals, respects
/// coproducts, intertwines the adjoint actions, has rank `dim H_l`, and for
/// unitary `R` satisfies `α* = S∘α`.
pub fn alpha_map(r: &GATensor) -> Result<AlphaMap> {
    if r.arity() != 2 {
        return Err(Error::ArityMismatch(r.arity(), 2));
    }
    let g = r.group();
    let n = g.size();
    let matrix = coefficient_matrix(r);
    let images: Vec<GATensor> = (0..n).map(|h| tensor_of(r, &matrix.column(h))).collect();
    let mut report = VerificationReport::default();

    // δ_h * δ_k = [h = k] δ_h in k[G]*, so α(δ_k)α(δ_h) must equal [h = k] α(δ_h)
    let mut witness = None;
    'anti: for h in 0..n {
        for k in 0..n {
            let lhs = images[k].multiply(&images[h])?;
            let rhs = if h == k {
                images[h].clone()
            } else {
                GATensor::zero(g, 1)
            };
            if lhs != rhs {
                witness = Some(vec![h, k]);
                break 'anti;
            }
        }
    }
    report.push("antihomomorphism", witness.is_none(), witness);

    // Δ(δ_h) = Σ_{ab = h} δ_a ⊗ δ_b
    let mut witness = None;
    for h in 0..n {
        let mut rhs = GATensor::zero(g, 2);
        for a in 0..n {
            let b = g.mul(g.inv(a), h);
            rhs = rhs.add(&images[a].tensor(&images[b]))?;
        }
        if images[h].coproduct(1)? != rhs {
            witness = Some(vec![h]);
            break;
        }
    }
    report.push("coalgebra_homomorphism", witness.is_none(), witness);

    // δ_k^h = δ_{hkh⁻¹}
    let mut witness = None;
    'inv: for h in 0..n {
        for k in 0..n {
            if images[g.conjugate(h, k)] != images[k].adjoint_action(h, 1)? {
                witness = Some(vec![h, k]);
                break 'inv;
            }
        }
    }
    report.push("equivariant", witness.is_none(), witness);

    let rank = matrix.rank();
    let left_dim = RowEchelon::new((0..n).map(|h| matrix.column(h)).collect(), n).rank();
    report.push("bijective_onto_left_support", rank == left_dim, None);

    if super::verify_unitary(r) {
        // α*(δ_h) = (δ_h⊗I)(R)
        let witness = (0..n)
            .find(|&h| tensor_of(r, matrix.row(h)) != images[h].antipode(1).expect("arity 1"))
            .map(|h| vec![h]);
        report.push("dual_is_antipode", witness.is_none(), witness);
    }
    Ok(AlphaMap { matrix, rank, report })
}

#[cfg(test)]
mod tests {
    use super::super::build_r;
    use super::super::tests::{datum, half, koszul_r_u};
    use super::*;
    use crate::catalog;

    #[test]
    fn unit_r_supports_are_scalars() {
        let z2 = catalog::group("Z2").unwrap();
        let r = GATensor::unit(&z2, 2);
        let ms = minimal_support(&r).unwrap();
        assert_eq!((ms.left.rank(), ms.right.rank()), (1, 1));
        assert!(ms.report.all_passed());
        assert_eq!(alpha_map(&r).unwrap().rank, 1);
    }

    #[test]
    fn koszul_supports_are_the_whole_algebra() {
        let r = koszul_r_u();
        let ms = minimal_support(&r).unwrap();
        assert_eq!((ms.left.rank(), ms.right.rank()), (2, 2));
        assert!(ms.report.all_passed(), "{:?}", ms.report);
        let alpha = alpha_map(&r).unwrap();
        assert!(alpha.report.all_passed(), "{:?}", alpha.report);
        assert_eq!(alpha.rank, 2);
        // oracle: α(δ_1) = ½(1 + u), α(δ_u) = ½(1 − u)
        let expect = Matrix::from_rows(vec![vec![half(), half()], vec![half(), -half()]]);
        assert_eq!(alpha.matrix, expect);
    }

    #[test]
    fn s3_supports_are_a3() {
        let d = datum("S3", &[0, 1, 2], vec![vec![1]]);
        let r = build_r(&d);
        let ms = minimal_support(&r).unwrap();
        assert!(ms.report.all_passed(), "{:?}", ms.report);
        assert!(ms.matches_datum(&d).all_passed());
        // oracle: rank of the 6×6 coefficient matrix
        assert_eq!(coefficient_matrix(&r).rank(), 3);
        let alpha = alpha_map(&r).unwrap();
        assert!(alpha.report.all_passed());
        assert!(alpha.report.get("dual_is_antipode").is_none());
    }
}
