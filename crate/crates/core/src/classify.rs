//! Exhaustive enumeration of quasitriangular and triangular structures on
//! `k[G]` from classification data.
//!
//! Every datum `(A, i, j, β)` is built into an R-matrix and verified; the
//! catalog then groups data by exact equality of their R-matrices. Whether the
//! data → R map is injective is not assumed: collisions are reported as found.
//! Completeness of the list rests on the classification theorem itself and is
//! not re-verified by search.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::{
    enumerate_biforms, normal_inclusions, same_module_structure, subgroup_structure, AbelianGroup, FiniteGroup,
    FormFlags, MAX_GROUP_ORDER,
};
use crate::hopf::GATensor;
use crate::rmatrix::{build_r, markov_element, verify_qt, verify_unitary, QTDatum, VerificationReport};

/// Stated in every catalog report.
pub const COMPLETENESS_NOTE: &str =
    "Entries are all data (A, i, j, beta) of the classification theorem for this group; \
     each R-matrix is verified exactly, but completeness of the list is inherited from the theorem \
     and not re-checked by search.";

/// Environment variable selecting the number of worker threads (default 1).
pub const THREADS_VAR: &str = "QTRIANG_THREADS";

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub datum: QTDatum,
    pub r: GATensor,
    pub report: VerificationReport,
    pub unitary: bool,
    /// The Markov element, when it is grouplike.
    pub markov: Option<usize>,
    /// Index into [`Catalog::dedup`].
    pub class: usize,
}

/// All structures found on one group, in canonical datum order.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub group: Arc<FiniteGroup>,
    pub triangular_only: bool,
    pub entries: Vec<CatalogEntry>,
    /// Entry indices partitioned by exact R-matrix equality, ordered by first member.
    pub dedup: Vec<Vec<usize>>,
}

impl Catalog {
    pub fn data(&self) -> impl Iterator<Item = &QTDatum> {
        self.entries.iter().map(|e| &e.datum)
    }

    /// One R-matrix per dedup class.
    pub fn distinct_rmatrices(&self) -> Vec<&GATensor> {
        self.dedup.iter().map(|c| &self.entries[c[0]].r).collect()
    }

    pub fn contains(&self, r: &GATensor) -> bool {
        self.entries.iter().any(|e| e.r == *r)
    }

    /// Dedup classes with more than one datum.
    pub fn collisions(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.dedup.iter().filter(|c| c.len() > 1)
    }

    pub fn all_verified(&self) -> bool {
        self.entries.iter().all(|e| e.report.all_passed())
    }
}

/// Loop order over subgroups, inclusions and forms; the result must not depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Order {
    #[default]
    Forward,
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Restrict to `i = j` and skewsymmetric `β`.
    pub triangular_only: bool,
    pub order: Order,
    pub threads: usize,
}

impl Options {
    pub fn new(triangular_only: bool) -> Self {
        Options {
            triangular_only,
            order: Order::Forward,
            threads: threads_from_env(),
        }
    }
}

/// Reads the thread count from the environment, defaulting to 1.
pub fn threads_from_env() -> usize {
    std::env::var(THREADS_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(1)
}

pub fn enumerate_qt(group: &Arc<FiniteGroup>) -> Result<Catalog> {
    enumerate(group, Options::new(false))
}

pub fn enumerate_triangular(group: &Arc<FiniteGroup>) -> Result<Catalog> {
    enumerate(group, Options::new(true))
}

fn maybe_reverse<T>(mut v: Vec<T>, order: Order) -> Vec<T> {
    if order == Order::Reversed {
        v.reverse();
    }
    v
}

/// Abelian groups occurring as normal subgroups, up to isomorphism.
fn abelian_types(group: &Arc<FiniteGroup>) -> Result<Vec<AbelianGroup>> {
    let mut types = BTreeMap::new();
    for s in group.abelian_normal_subgroups() {
        let a = subgroup_structure(group, &s)?.source().clone();
        types.insert(a.factors().to_vec(), a);
    }
    Ok(types.into_values().collect())
}

fn candidates(group: &Arc<FiniteGroup>, opts: &Options) -> Result<Vec<QTDatum>> {
    let mut out = Vec::new();
    for a in maybe_reverse(abelian_types(group)?, opts.order) {
        let incs = maybe_reverse(normal_inclusions(&a, group)?, opts.order);
        let flags = FormFlags {
            nondegenerate: true,
            skewsymmetric: opts.triangular_only,
            g_invariant: true,
        };
        for i in &incs {
            let forms = maybe_reverse(enumerate_biforms(&a, &i.conjugation_action()?, flags), opts.order);
            let partners: Vec<_> = if opts.triangular_only {
                vec![i]
            } else {
                incs.iter().filter(|j| same_module_structure(i, j)).collect()
            };
            for j in partners {
                for beta in &forms {
                    out.push(QTDatum::new(i.clone(), j.clone(), beta.clone())?);
                }
            }
        }
    }
    Ok(out)
}

type DatumKey = (Vec<u32>, Vec<usize>, Vec<usize>, Vec<usize>, Vec<Vec<u32>>);

fn datum_key(d: &QTDatum) -> DatumKey {
    (
        d.abelian().factors().to_vec(),
        d.i().image_elements(),
        d.i().generator_images(),
        d.j().generator_images(),
        d.beta().exps().to_vec(),
    )
}

fn build_entry(d: QTDatum) -> Result<CatalogEntry> {
    let r = build_r(&d);
    let report = verify_qt(&r)?;
    let unitary = verify_unitary(&r);
    let markov = markov_element(&r)?.element();
    Ok(CatalogEntry {
        datum: d,
        r,
        report,
        unitary,
        markov,
        class: 0,
    })
}

/// Enumerates, builds and verifies every datum, then sorts canonically and
/// partitions by exact R equality.
pub fn enumerate(group: &Arc<FiniteGroup>, opts: Options) -> Result<Catalog> {
    if group.size() > MAX_GROUP_ORDER {
        return Err(Error::GroupTooLarge(group.size()));
    }
    let data = candidates(group, &opts)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut entries: Vec<CatalogEntry> =
        pool.install(|| data.into_par_iter().map(build_entry).collect::<Result<_>>())?;
    entries.sort_by_cached_key(|e| datum_key(&e.datum));

    let mut dedup: Vec<Vec<usize>> = Vec::new();
    for k in 0..entries.len() {
        match dedup.iter().position(|c| entries[c[0]].r == entries[k].r) {
            Some(c) => {
                dedup[c].push(k);
                entries[k].class = c;
            }
            None => {
                entries[k].class = dedup.len();
                dedup.push(vec![k]);
            }
        }
    }
    Ok(Catalog {
        group: group.clone(),
        triangular_only: opts.triangular_only,
        entries,
        dedup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::groups::BiForm;
    use crate::rmatrix::tests::koszul_r_u;

    fn partition(c: &Catalog) -> Vec<Vec<DatumKey>> {
        c.dedup
            .iter()
            .map(|cls| cls.iter().map(|&k| datum_key(&c.entries[k].datum)).collect())
            .collect()
    }

    #[test]
    fn trivial_group_has_one_structure() {
        let g = FiniteGroup::trivial();
        for c in [enumerate_qt(&g).unwrap(), enumerate_triangular(&g).unwrap()] {
            assert_eq!(c.entries.len(), 1);
            assert_eq!(c.entries[0].r, GATensor::unit(&g, 2));
        }
    }

    #[test]
    fn z2_contains_koszul() {
        let g = catalog::group("Z2").unwrap();
        let tri = enumerate_triangular(&g).unwrap();
        assert_eq!(tri.entries.len(), 2);
        assert_eq!(tri.entries[0].r, GATensor::unit(&g, 2));
        assert_eq!(tri.entries[1].r, koszul_r_u());
        assert_eq!(tri.entries[1].markov, Some(1));
        // oracle: nondegenerate forms on Z/2 by direct scan of the one entry
        let a = AbelianGroup::new(vec![2]).unwrap();
        let nondeg = (0..2)
            .filter(|&x| BiForm::new(&a, vec![vec![x]]).unwrap().is_nondegenerate(&a))
            .count();
        let qt = enumerate_qt(&g).unwrap();
        assert_eq!(qt.entries.len(), 1 + nondeg);
        assert!(qt.contains(&koszul_r_u()));
    }

    #[test]
    fn z3_triangular_is_trivial() {
        let g = catalog::group("Z3").unwrap();
        let tri = enumerate_triangular(&g).unwrap();
        assert_eq!(tri.distinct_rmatrices(), vec![&GATensor::unit(&g, 2)]);
        // oracle: no skew nondegenerate form on Z/3 by scanning all three forms
        let a = AbelianGroup::new(vec![3]).unwrap();
        assert!((0..3).all(|x| {
            let f = BiForm::new(&a, vec![vec![x]]).unwrap();
            !(f.is_skewsymmetric(&a) && f.is_nondegenerate(&a))
        }));
        // the quasitriangular ones are not unitary
        let qt = enumerate_qt(&g).unwrap();
        assert_eq!(qt.entries.iter().filter(|e| e.unitary).count(), 1);
    }

    #[test]
    fn q8_markov_elements_are_central_involutions() {
        let g = catalog::group("Q8").unwrap();
        let tri = enumerate_triangular(&g).unwrap();
        assert!(tri.all_verified());
        for e in &tri.entries {
            let u = e.markov.expect("grouplike");
            assert!(g.is_central(u) && g.mul(u, u) == g.identity());
            assert!(u == 0 || u == 1);
        }
    }

    #[test]
    fn s3_is_order_independent() {
        let g = catalog::group("S3").unwrap();
        let fwd = enumerate_qt(&g).unwrap();
        assert!(fwd.all_verified());
        let rev = enumerate(
            &g,
            Options {
                triangular_only: false,
                order: Order::Reversed,
                threads: 2,
            },
        )
        .unwrap();
        assert_eq!(fwd.entries.len(), rev.entries.len());
        assert_eq!(partition(&fwd), partition(&rev));
    }

    #[test]
    fn triangular_is_a_subcatalog() {
        for name in ["Z2", "Z4", "Z2xZ2"] {
            let g = catalog::group(name).unwrap();
            let qt = enumerate_qt(&g).unwrap();
            let tri = enumerate_triangular(&g).unwrap();
            assert!(tri.entries.iter().all(|e| qt.contains(&e.r) && e.unitary));
            // the same R-matrices arise from every datum flagged triangular
            let from_flag: Vec<_> = qt
                .entries
                .iter()
                .filter(|e| e.datum.is_triangular())
                .map(|e| &e.r)
                .collect();
            assert!(from_flag.iter().all(|r| tri.contains(r)));
            assert!(tri.entries.iter().all(|e| from_flag.contains(&&e.r)));
        }
    }
}
