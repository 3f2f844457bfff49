//! Verify the Koszul R-matrix on Z2, then corrupt one coefficient and watch
//! the report point at the broken identity.

use qtriang::catalog;
use qtriang::interchange::{report_to_json, tensor_to_json, to_canonical_string};
use qtriang::rmatrix::{koszul_r, verify_qt, verify_unitary, VerificationReport};
use qtriang::CycScalar;

fn show(report: &VerificationReport) {
    for c in &report.checks {
        let mark = if c.passed { "ok " } else { "BAD" };
        match &c.witness {
            Some(w) => println!("  {mark} {:<22} witness {w:?}", c.name),
            None => println!("  {mark} {}", c.name),
        }
    }
}

fn main() -> qtriang::Result<()> {
    let z2 = catalog::group("Z2")?;
    let r = koszul_r(&z2, 1);
    println!(
        "R_u = {}",
        to_canonical_string(&tensor_to_json(&r)).replace(['\n', ' '], "")
    );
    let report = verify_qt(&r)?;
    println!(
        "R_u: all passed = {}, unitary = {}",
        report.all_passed(),
        verify_unitary(&r)
    );
    show(&report);

    // flip the sign of the u⊗u coefficient
    let mut bad = r.clone();
    bad.add_term(vec![1, 1], CycScalar::from_integer(1));
    let report = verify_qt(&bad)?;
    println!("\ncorrupted: all passed = {}", report.all_passed());
    show(&report);
    println!("\nas JSON, first failure: {}", report_to_json(&report)["checks"][0]);
    Ok(())
}
