//! Markov elements of the triangular structures on Q8 and D4: always a
//! central involution, and the Markov equation holds for each datum.

use qtriang::catalog;
use qtriang::classify::enumerate_triangular;
use qtriang::rmatrix::{markov_element, verify_markov_equation};

fn main() -> qtriang::Result<()> {
    for name in ["Q8", "D4"] {
        let g = catalog::group(name)?;
        let tri = enumerate_triangular(&g)?;
        println!("{name}: center {:?}", g.center());
        for (k, e) in tri.entries.iter().enumerate() {
            let m = markov_element(&e.r)?;
            let u = m.element().expect("unitary R has grouplike Markov element");
            println!(
                "  datum {k:>2}: |A| = {}, u = {u}, u central involution = {}, Markov equation = {}, checks ok = {}",
                e.datum.abelian().order(),
                g.is_central(u) && g.mul(u, u) == g.identity(),
                verify_markov_equation(&e.datum, u)?,
                m.report.all_passed()
            );
        }
    }
    Ok(())
}
