//! Enumerate every quasitriangular and triangular structure on the bundled
//! groups and summarise the catalogs.

use qtriang::catalog;
use qtriang::classify::{enumerate_qt, enumerate_triangular, COMPLETENESS_NOTE};

fn main() -> qtriang::Result<()> {
    println!(
        "{:<6} {:>5} {:>6} {:>6} {:>6} {:>10}",
        "group", "|G|", "data", "qt R", "tri R", "collisions"
    );
    for g in catalog::all() {
        let qt = enumerate_qt(&g)?;
        let tri = enumerate_triangular(&g)?;
        assert!(qt.all_verified() && tri.all_verified());
        println!(
            "{:<6} {:>5} {:>6} {:>6} {:>6} {:>10}",
            g.name(),
            g.size(),
            qt.entries.len(),
            qt.distinct_rmatrices().len(),
            tri.distinct_rmatrices().len(),
            qt.collisions().count()
        );
    }
    println!("\n{COMPLETENESS_NOTE}");
    Ok(())
}
