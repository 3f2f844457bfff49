//! Braided exterior powers: antisymmetrise V^⊗n under the symmetric group
//! action built from R and compare the characters with the λ-operations.

use qtriang::catalog;
use qtriang::charring::{
    braided_action, exterior_power_char, lambda_series, linear_characters, verify_exterior_powers,
};
use qtriang::rmatrix::koszul_r;

fn main() -> qtriang::Result<()> {
    let g = catalog::group("Z2")?;
    let r = koszul_r(&g, 1);
    let sign = linear_characters(&g).remove(1);
    let action = braided_action(&sign, &r, 2)?;
    println!(
        "sign rep of Z2 with R_u: braid generator s_1 = {}",
        show(&action.generators()[0])
    );
    println!("antisymmetrizer on V⊗V = {}", show(&action.antisymmetrizer()));
    let lam = lambda_series(&sign.character(), 3, action.markov())?;
    for (n, l) in lam.iter().enumerate() {
        let ext = exterior_power_char(&sign, &r, n)?;
        println!(
            "n = {n}: char Λ^n = {:?}, λ^n = {:?}",
            fmt(ext.values()),
            fmt(l.values())
        );
    }
    let report = verify_exterior_powers(&sign, &r, 3)?;
    println!("all exterior power checks pass: {}", report.all_passed());
    Ok(())
}

fn fmt(v: &[qtriang::CycScalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn show(m: &qtriang::linalg::Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m[(i, j)].to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}
