//! Every triangular structure is a twist of the Koszul one on its Markov
//! element: R · F₂₁ = R_u · F for an explicit 2-cocycle F.

use qtriang::catalog;
use qtriang::classify::enumerate_triangular;
use qtriang::rmatrix::koszul_twist;

fn main() -> qtriang::Result<()> {
    for name in ["Z2", "Z2xZ2", "D4"] {
        let g = catalog::group(name)?;
        let tri = enumerate_triangular(&g)?;
        // one datum per distinct R-matrix
        for e in tri.dedup.iter().map(|c| &tri.entries[c[0]]) {
            let t = koszul_twist(&e.datum)?;
            println!(
                "{name} A={:?} u={} gamma={:?} upper-triangular={} |supp F|={} checks: {}",
                e.datum.abelian().factors(),
                t.u,
                t.gamma.exps(),
                t.upper_triangular,
                t.f.support_size(),
                t.report
                    .checks
                    .iter()
                    .map(|c| format!("{}={}", c.name, c.passed))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
    }
    Ok(())
}
