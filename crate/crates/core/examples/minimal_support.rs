//! Recover the subgroups an R-matrix lives on from R alone: the left and right
//! supports are the spans of i(A) and j(A).

use qtriang::catalog;
use qtriang::classify::enumerate_qt;
use qtriang::rmatrix::{alpha_map, minimal_support};

fn main() -> qtriang::Result<()> {
    let g = catalog::group("D4")?;
    let qt = enumerate_qt(&g)?;
    for class in &qt.dedup {
        let e = &qt.entries[class[0]];
        let s = minimal_support(&e.r)?;
        let a = alpha_map(&e.r)?;
        let m = s.matches_datum(&e.datum);
        println!(
            "i(A) = {:?}: dim H_l = {}, dim H_r = {}, rank α = {}, Hopf subalgebras = {}, matches datum = {}, α checks = {}",
            e.datum.i().image_elements(),
            s.left.rank(),
            s.right.rank(),
            a.rank,
            s.report.all_passed(),
            m.all_passed(),
            a.report.all_passed()
        );
    }
    Ok(())
}
