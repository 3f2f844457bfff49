//! Twisted Adams operations ψ^k_u(χ)(g) = χ(u^{k+1} g^k) next to the usual
//! ones, on the characters of D4 twisted by its central involution.

use qtriang::catalog;
use qtriang::charring::{adams_standard, adams_twisted, linear_characters, regular_rep};

fn main() -> qtriang::Result<()> {
    let g = catalog::group("D4")?;
    let u = *g
        .center()
        .iter()
        .find(|&&z| z != g.identity())
        .expect("D4 has a nontrivial center");
    println!(
        "D4, u = {u}, class representatives {:?}",
        g.conjugacy_classes().iter().map(|c| c[0]).collect::<Vec<_>>()
    );
    let mut chars: Vec<_> = linear_characters(&g).iter().map(|r| r.character()).collect();
    chars.push(regular_rep(&g).character());
    let fmt =
        |x: &qtriang::charring::ClassFunction| x.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ");
    for x in &chars {
        println!("χ        = [{}]", fmt(x));
        for k in 1..=3 {
            println!("  ψ^{k}    = [{}]", fmt(&adams_standard(x, k)));
            println!("  ψ^{k}_u  = [{}]", fmt(&adams_twisted(x, u, k)?));
        }
    }
    Ok(())
}
