//! λ- and σ-operations generated by the twisted Adams operations through the
//! Newton identities, and the λ-ring axioms they satisfy.

use qtriang::catalog;
use qtriang::charring::{lambda_series, linear_characters, regular_rep, sigma_series, verify_lambda_ring};

fn main() -> qtriang::Result<()> {
    let g = catalog::group("Z2")?;
    let (e, u) = (g.identity(), 1);
    let sign = linear_characters(&g)[1].character();
    for twist in [e, u] {
        println!("twist by {twist}:");
        let lam = lambda_series(&sign, 3, twist)?;
        let sig = sigma_series(&sign, 3, twist)?;
        for k in 0..=3 {
            println!("  λ^{k}(sign) = {:?}   σ^{k}(sign) = {:?}", fmt(&lam[k]), fmt(&sig[k]));
        }
    }
    let chars = vec![sign, regular_rep(&g).character()];
    let report = verify_lambda_ring(&g, u, &chars, 4)?;
    for c in &report.checks {
        println!("  {:<22} {}", c.name, c.passed);
    }
    Ok(())
}

fn fmt(x: &qtriang::charring::ClassFunction) -> Vec<String> {
    x.values().iter().map(|v| v.to_string()).collect()
}
