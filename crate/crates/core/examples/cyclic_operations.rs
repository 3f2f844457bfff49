//! Cyclic operations: split V^⊗p by the eigenvalues of the p-cycle and
//! compare quantum traces of the pieces with the twisted Adams operation.

use qtriang::catalog;
use qtriang::charring::{cyclic_operation_char, regular_rep, verify_cyclic_identities};
use qtriang::rmatrix::koszul_r;
use qtriang::CycScalar;

fn main() -> qtriang::Result<()> {
    let g = catalog::group("Z2")?;
    let r = koszul_r(&g, 1);
    let rho = regular_rep(&g);
    for p in [2usize, 3] {
        println!("p = {p}");
        for k in 0..p as i64 {
            let eps = CycScalar::root_of_unity(p as u32, k);
            let vals = cyclic_operation_char(&rho, &r, p, &eps)?;
            let shown: Vec<String> = vals.iter().map(|(z, v)| format!("{z}: {v}")).collect();
            println!("  ε = ζ_{p}^{k}: qtrace of c_ε at z = [{}]", shown.join(", "));
        }
        let report = verify_cyclic_identities(&rho, &r, p)?;
        for c in &report.checks {
            println!("    {:<28} {}", c.name, c.passed);
        }
    }
    Ok(())
}
