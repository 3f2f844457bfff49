//! Canonical JSON interchange.
//!
//! Objects are emitted through `serde_json::Value`, whose maps keep keys
//! sorted, and rationals are always in lowest terms, so identical values
//! serialise to identical bytes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::catalog;
use crate::charring::{ClassFunction, MatrixRep};
use crate::classify::{Catalog, COMPLETENESS_NOTE};
use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::groups::{set_of, subgroup_structure, BiForm, FiniteGroup, Inclusion};
use crate::hopf::GATensor;
use crate::linalg::Matrix;
use crate::rmatrix::{QTDatum, VerificationReport};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| perr(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| perr(format!("not an integer: {s:?}"))),
        other => Err(perr(format!("expected integer, got {other}"))),
    }
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field {key:?}")))
}

fn usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    as_array(v, what)?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| perr(format!("{what} must hold indices")))
        })
        .collect()
}

pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("Value serialises");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(e.to_string()))
}

/// `{"order": N, "coeffs": [[num, den], ...]}`, with `N` the smallest order
/// whose field contains the value.
pub fn scalar_to_json(x: &CycScalar) -> Value {
    let x = x.canonical();
    let coeffs: Vec<Value> = x
        .coeffs()
        .iter()
        .map(|q| json!([bigint_to_json(q.numer()), bigint_to_json(q.denom())]))
        .collect();
    json!({"order": x.order(), "coeffs": coeffs})
}

pub fn scalar_from_json(v: &Value) -> Result<CycScalar> {
    let order = field(v, "order")?
        .as_u64()
        .ok_or_else(|| perr("order must be a positive integer"))? as u32;
    let coeffs = as_array(field(v, "coeffs")?, "coeffs")?
        .iter()
        .map(|pair| {
            let p = as_array(pair, "coefficient")?;
            if p.len() != 2 {
                return Err(perr("coefficient must be [num, den]"));
            }
            let den = bigint_from_json(&p[1])?;
            if den == BigInt::from(0) {
                return Err(perr("zero denominator"));
            }
            Ok(BigRational::new(bigint_from_json(&p[0])?, den))
        })
        .collect::<Result<Vec<_>>>()?;
    CycScalar::from_coeffs(order, coeffs)
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({"name": g.name(), "table": g.table()})
}

/// Accepts `{"name", "table"}` or `{"abelian": [n_1, ...]}`.
pub fn group_from_json(v: &Value) -> Result<Arc<FiniteGroup>> {
    if let Some(f) = v.get("abelian") {
        let factors: Vec<u32> = usize_list(f, "abelian")?.into_iter().map(|x| x as u32).collect();
        return FiniteGroup::from_abelian(&factors);
    }
    let name = field(v, "name")?
        .as_str()
        .ok_or_else(|| perr("name must be a string"))?;
    let table = as_array(field(v, "table")?, "table")?
        .iter()
        .map(|row| usize_list(row, "table row"))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_table(name, table)
}

pub fn group_from_str(text: &str) -> Result<Arc<FiniteGroup>> {
    group_from_json(&parse(text)?)
}

/// `{"group": name, "arity": n, "terms": [{"tuple": [...], "coeff": scalar}]}`.
pub fn tensor_to_json(x: &GATensor) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .iter()
        .map(|(t, c)| json!({"tuple": t, "coeff": scalar_to_json(c)}))
        .collect();
    json!({"group": x.group().name(), "arity": x.arity(), "terms": terms})
}

/// Parses a tensor over `group`, or over the bundled group of that name.
pub fn tensor_from_json(v: &Value, group: Option<&Arc<FiniteGroup>>) -> Result<GATensor> {
    let g = resolve_group(v, group, "tensor")?;
    let arity = field(v, "arity")?
        .as_u64()
        .ok_or_else(|| perr("arity must be an integer"))? as usize;
    let terms = as_array(field(v, "terms")?, "terms")?
        .iter()
        .map(|t| {
            Ok((
                usize_list(field(t, "tuple")?, "tuple")?,
                scalar_from_json(field(t, "coeff")?)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    GATensor::from_terms(&g, arity, terms)
}

/// `{"group", "subgroup", "i", "j", "beta"}`; the abelian structure of `A` is
/// read off `subgroup` (the image of `i`).
pub fn datum_to_json(d: &QTDatum) -> Value {
    json!({
        "group": d.group().name(),
        "subgroup": d.i().image_elements(),
        "i": d.i().generator_images(),
        "j": d.j().generator_images(),
        "beta": d.beta().exps(),
    })
}

pub fn datum_from_json(v: &Value, group: Option<&Arc<FiniteGroup>>) -> Result<QTDatum> {
    let g = resolve_group(v, group, "datum")?;
    let sub = usize_list(field(v, "subgroup")?, "subgroup")?;
    if sub.iter().any(|&x| x >= g.size()) {
        return Err(perr("subgroup element out of range"));
    }
    let structure = subgroup_structure(&g, &sub)?;
    let a = structure.source().clone();
    let i = Inclusion::from_generator_images(&g, &a, &usize_list(field(v, "i")?, "i")?)?;
    if i.image() != set_of(&sub) {
        return Err(Error::InvalidDatum("image of i differs from the subgroup".into()));
    }
    let j = Inclusion::from_generator_images(&g, &a, &usize_list(field(v, "j")?, "j")?)?;
    let beta_rows = usize_rows(field(v, "beta")?)?;
    let beta = BiForm::new(&a, beta_rows.clone())?;
    if beta.exps() != beta_rows.as_slice() {
        return Err(Error::InvalidDatum(
            "beta entries must be reduced modulo gcd(n_i, n_j)".into(),
        ));
    }
    QTDatum::new(i, j, beta)
}

fn usize_rows(v: &Value) -> Result<Vec<Vec<u32>>> {
    as_array(v, "beta")?
        .iter()
        .map(|row| Ok(usize_list(row, "beta row")?.into_iter().map(|x| x as u32).collect()))
        .collect()
}

pub fn report_to_json(r: &VerificationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "witness": c.witness}))
        .collect();
    json!({"passed": r.all_passed(), "checks": checks})
}

fn resolve_group(v: &Value, group: Option<&Arc<FiniteGroup>>, what: &str) -> Result<Arc<FiniteGroup>> {
    let name = field(v, "group")?
        .as_str()
        .ok_or_else(|| perr("group must be a name"))?;
    match group {
        Some(g) if g.name() == name => Ok(g.clone()),
        Some(g) => Err(perr(format!("{what} is over {name:?}, expected {:?}", g.name()))),
        None => catalog::group(name),
    }
}

/// `{"group", "classes": [representatives], "values": [scalar]}`.
pub fn class_function_to_json(x: &ClassFunction) -> Value {
    json!({
        "group": x.group().name(),
        "classes": x.class_representatives(),
        "values": x.values().iter().map(scalar_to_json).collect::<Vec<_>>(),
    })
}

pub fn class_function_from_json(v: &Value, group: Option<&Arc<FiniteGroup>>) -> Result<ClassFunction> {
    let g = resolve_group(v, group, "class function")?;
    let reps = usize_list(field(v, "classes")?, "classes")?;
    let values = as_array(field(v, "values")?, "values")?
        .iter()
        .map(scalar_from_json)
        .collect::<Result<Vec<_>>>()?;
    if reps.len() != values.len() || reps.iter().any(|&r| r >= g.size()) {
        return Err(perr("classes and values must match"));
    }
    let mut ordered = vec![None; g.conjugacy_classes().len()];
    for (r, x) in reps.into_iter().zip(values) {
        let slot = &mut ordered[g.class_of(r)];
        if slot.is_some() {
            return Err(perr("a class is listed twice"));
        }
        *slot = Some(x);
    }
    let values = ordered
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| perr("a conjugacy class is missing"))?;
    ClassFunction::new(&g, values)
}

fn matrix_to_json(m: &Matrix) -> Value {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(scalar_to_json).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into()
}

fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows = as_array(v, "matrix")?
        .iter()
        .map(|row| {
            as_array(row, "matrix row")?
                .iter()
                .map(scalar_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != cols) {
        return Err(perr("matrix must be a non-empty rectangle"));
    }
    Ok(Matrix::from_rows(rows))
}

/// `{"group", "dim", "matrices": [one matrix per element]}`.
pub fn rep_to_json(rep: &MatrixRep) -> Value {
    json!({
        "group": rep.group().name(),
        "dim": rep.dim(),
        "matrices": rep.mats().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn rep_from_json(v: &Value, group: Option<&Arc<FiniteGroup>>) -> Result<MatrixRep> {
    let g = resolve_group(v, group, "representation")?;
    let mats = as_array(field(v, "matrices")?, "matrices")?
        .iter()
        .map(matrix_from_json)
        .collect::<Result<Vec<_>>>()?;
    MatrixRep::new(&g, mats)
}

/// Full catalog report: every datum with its R-matrix, verification report,
/// Markov element and dedup class.
pub fn catalog_to_json(c: &Catalog) -> Value {
    let entries: Vec<Value> = c
        .entries
        .iter()
        .map(|e| {
            json!({
                "datum": datum_to_json(&e.datum),
                "r": tensor_to_json(&e.r),
                "verification": report_to_json(&e.report),
                "triangular": e.datum.is_triangular(),
                "unitary": e.unitary,
                "markov": e.markov,
                "class": e.class,
            })
        })
        .collect();
    json!({
        "group": c.group.name(),
        "triangular_only": c.triangular_only,
        "note": COMPLETENESS_NOTE,
        "data": c.entries.len(),
        "distinct_rmatrices": c.dedup.len(),
        "classes": c.dedup,
        "collisions": c.collisions().count(),
        "all_verified": c.all_verified(),
        "entries": entries,
    })
}
