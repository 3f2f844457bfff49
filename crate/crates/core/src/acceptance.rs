//! The acceptance suite, shared by the `acceptance` test target and the
//! `selftest` command.
//!
//! Every criterion is an exact check over the bundled catalog; there are no
//! tolerances. Catalogs are enumerated once and reused across criteria.

use std::fmt;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::catalog;
use crate::charring::{
    braided_action, linear_characters, regular_rep, verify_cyclic_identities, verify_exterior_powers,
    verify_lambda_ring, ClassFunction, MatrixRep,
};
use crate::classify::{enumerate_qt, enumerate_triangular, Catalog};
use crate::cyclotomic::CycScalar;
use crate::error::Result;
use crate::groups::FiniteGroup;
use crate::hopf::GATensor;
use crate::interchange::{tensor_to_json, to_canonical_string};
use crate::rmatrix::{
    alpha_map, koszul_twist, markov_element, minimal_support, verify_markov_equation, verify_unitary,
};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

struct GroupData {
    group: Arc<FiniteGroup>,
    qt: OnceLock<Catalog>,
    tri: OnceLock<Catalog>,
}

/// Lazily enumerated catalogs for the bundled groups.
pub struct Suite {
    groups: Vec<GroupData>,
}

impl Default for Suite {
    fn default() -> Self {
        Self::new()
    }
}

type Outcome = Result<(bool, String)>;

pub const CRITERIA: [(u32, &str); 10] = [
    (1, "koszul_golden_value"),
    (2, "soundness_sweep"),
    (3, "triangular_iff_unitary"),
    (4, "markov_identity"),
    (5, "minimal_support"),
    (6, "exterior_powers_match_lambda"),
    (7, "cyclic_operations"),
    (8, "lambda_ring_axioms"),
    (9, "koszul_twist"),
    (10, "braiding_invariants"),
];

impl Suite {
    pub fn new() -> Self {
        Suite {
            groups: catalog::all()
                .into_iter()
                .map(|group| GroupData {
                    group,
                    qt: OnceLock::new(),
                    tri: OnceLock::new(),
                })
                .collect(),
        }
    }

    fn qt(&self, k: usize) -> Result<&Catalog> {
        let gd = &self.groups[k];
        if let Some(c) = gd.qt.get() {
            return Ok(c);
        }
        let c = enumerate_qt(&gd.group)?;
        Ok(gd.qt.get_or_init(|| c))
    }

    fn tri(&self, k: usize) -> Result<&Catalog> {
        let gd = &self.groups[k];
        if let Some(c) = gd.tri.get() {
            return Ok(c);
        }
        let c = enumerate_triangular(&gd.group)?;
        Ok(gd.tri.get_or_init(|| c))
    }

    fn group_indices(&self) -> std::ops::Range<usize> {
        0..self.groups.len()
    }

    pub fn run(&self, id: u32) -> Option<CriterionResult> {
        let &(_, name) = CRITERIA.iter().find(|(i, _)| *i == id)?;
        let start = Instant::now();
        let outcome = match id {
            1 => self.koszul_golden_value(),
            2 => self.soundness_sweep(),
            3 => self.triangular_iff_unitary(),
            4 => self.markov_identity(),
            5 => self.minimal_support(),
            6 => self.exterior_powers(),
            7 => self.cyclic_operations(),
            8 => self.lambda_ring(),
            9 => self.koszul_twist(),
            _ => self.braiding_invariants(),
        };
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        Some(CriterionResult {
            id,
            name,
            passed,
            detail,
            elapsed: start.elapsed(),
        })
    }

    pub fn run_all(&self) -> Vec<CriterionResult> {
        CRITERIA.iter().filter_map(|&(id, _)| self.run(id)).collect()
    }

    fn koszul_golden_value(&self) -> Outcome {
        let z2 = catalog::group("Z2")?;
        let start = Instant::now();
        let tri = enumerate_triangular(&z2)?;
        let elapsed = start.elapsed();
        let half = CycScalar::from_ratio(1, 2);
        let golden = GATensor::from_terms(
            &z2,
            2,
            [
                (vec![0, 0], half.clone()),
                (vec![0, 1], half.clone()),
                (vec![1, 0], half.clone()),
                (vec![1, 1], -half),
            ],
        )?;
        let distinct = tri.distinct_rmatrices();
        let golden_json = to_canonical_string(&tensor_to_json(&golden));
        let hits = distinct
            .iter()
            .filter(|r| to_canonical_string(&tensor_to_json(r)) == golden_json)
            .count();
        let others_trivial = distinct.iter().all(|r| **r == golden || **r == GATensor::unit(&z2, 2));
        let passed = hits == 1 && others_trivial && elapsed < Duration::from_secs(1);
        Ok((
            passed,
            format!(
                "{} distinct triangular R on Z2, Koszul R_u found {hits}x bit-exact, classify took {:.3}s",
                distinct.len(),
                elapsed.as_secs_f64()
            ),
        ))
    }

    fn soundness_sweep(&self) -> Outcome {
        let start = Instant::now();
        let mut total = 0;
        let mut bad = Vec::new();
        let mut parts = Vec::new();
        for k in self.group_indices() {
            let c = self.qt(k)?;
            total += c.entries.len();
            parts.push(format!("{}:{}/{}", c.group.name(), c.entries.len(), c.dedup.len()));
            for (n, e) in c.entries.iter().enumerate() {
                if !e.report.all_passed() {
                    bad.push(format!("{}#{n}", c.group.name()));
                }
            }
        }
        let elapsed = start.elapsed();
        Ok((
            bad.is_empty() && elapsed < Duration::from_secs(120),
            format!(
                "{total} data verified (data/distinct R: {}), failures {bad:?}, {:.1}s",
                parts.join(" "),
                elapsed.as_secs_f64()
            ),
        ))
    }

    fn triangular_iff_unitary(&self) -> Outcome {
        let mut checked = 0;
        let mut literal = 0;
        let mut bad = Vec::new();
        for k in self.group_indices() {
            for c in [self.qt(k)?, self.tri(k)?] {
                for (n, e) in c.entries.iter().enumerate() {
                    checked += 1;
                    literal += e.datum.is_literally_triangular() as usize;
                    if verify_unitary(&e.r) != e.datum.is_triangular() || e.unitary != e.datum.is_triangular() {
                        bad.push(format!("{}#{n}", c.group.name()));
                    }
                }
            }
        }
        Ok((
            bad.is_empty(),
            format!("{checked} data checked ({literal} with literally equal inclusions), mismatches {bad:?}"),
        ))
    }

    fn triangular_entries(&self) -> Result<Vec<(&Catalog, usize)>> {
        let mut out = Vec::new();
        for k in self.group_indices() {
            let tri = self.tri(k)?;
            out.extend((0..tri.entries.len()).map(|n| (tri, n)));
            let qt = self.qt(k)?;
            out.extend(
                (0..qt.entries.len())
                    .filter(|&n| qt.entries[n].datum.is_triangular())
                    .map(|n| (qt, n)),
            );
        }
        Ok(out)
    }

    fn markov_identity(&self) -> Outcome {
        let entries = self.triangular_entries()?;
        let mut bad = Vec::new();
        for &(c, n) in &entries {
            let e = &c.entries[n];
            let m = markov_element(&e.r)?;
            let ok = match m.element() {
                Some(u) => m.report.all_passed() && verify_markov_equation(&e.datum, u)?,
                None => false,
            };
            if !ok {
                bad.push(format!("{}#{n}", c.group.name()));
            }
        }
        Ok((
            bad.is_empty(),
            format!("{} triangular data: grouplike, central, involutive, both conventions agree, Markov equation; failures {bad:?}", entries.len()),
        ))
    }

    fn minimal_support(&self) -> Outcome {
        let mut bad = Vec::new();
        let mut rs = 0;
        let mut data = 0;
        for k in self.group_indices() {
            let c = self.qt(k)?;
            for class in &c.dedup {
                rs += 1;
                let r = &c.entries[class[0]].r;
                let ms = minimal_support(r)?;
                let alpha = alpha_map(r)?;
                let mut ok = ms.report.all_passed() && alpha.report.all_passed() && alpha.rank == ms.left.rank();
                if verify_unitary(r) {
                    ok &= ms.report.passed("supports_coincide") && alpha.report.passed("dual_is_antipode");
                }
                for &n in class {
                    data += 1;
                    if !ms.matches_datum(&c.entries[n].datum).all_passed() {
                        ok = false;
                    }
                }
                if !ok {
                    bad.push(format!("{}#{}", c.group.name(), class[0]));
                }
            }
        }
        Ok((
            bad.is_empty(),
            format!("{rs} distinct R ({data} data): supports are |A|-dimensional normal Hopf subalgebras spanned by i(A), j(A); failures {bad:?}"),
        ))
    }

    fn exterior_powers(&self) -> Outcome {
        let start = Instant::now();
        let mut runs = 0;
        let mut bad = Vec::new();
        for k in self.group_indices() {
            let tri = self.tri(k)?;
            let reps = test_representations(&tri.group);
            for r in tri.distinct_rmatrices() {
                for (label, rep) in &reps {
                    runs += 1;
                    if !verify_exterior_powers(rep, r, 3)?.all_passed() {
                        bad.push(format!("{}:{label}", tri.group.name()));
                    }
                }
            }
        }
        let elapsed = start.elapsed();
        Ok((
            bad.is_empty() && elapsed < Duration::from_secs(120),
            format!(
                "{runs} (R, X) pairs with n = 0..3, failures {bad:?}, {:.1}s",
                elapsed.as_secs_f64()
            ),
        ))
    }

    fn cyclic_operations(&self) -> Outcome {
        let mut runs = 0;
        let mut bad = Vec::new();
        for k in self.group_indices() {
            let tri = self.tri(k)?;
            let reps = test_representations(&tri.group);
            for r in tri.distinct_rmatrices() {
                for (label, rep) in &reps {
                    for p in [2, 3] {
                        runs += 1;
                        let report = verify_cyclic_identities(rep, r, p)?;
                        if let Some(name) = report.first_failure() {
                            bad.push(format!("{}:{label}:p={p}:{name}", tri.group.name()));
                        }
                    }
                }
            }
        }
        Ok((
            bad.is_empty(),
            format!("{runs} (R, X, p) instances of the Adams difference and Deligne identities, failures {bad:?}"),
        ))
    }

    fn lambda_ring(&self) -> Outcome {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let mut runs = 0;
        let mut bad = Vec::new();
        for gd in &self.groups {
            let g = &gd.group;
            let basis: Vec<ClassFunction> = linear_characters(g)
                .iter()
                .chain([regular_rep(g)].iter())
                .map(MatrixRep::character)
                .collect();
            let mut chars = basis.clone();
            for _ in 0..3 {
                let mut x = ClassFunction::constant(g, CycScalar::zero());
                for b in &basis {
                    x = x.add(&b.scale(&CycScalar::from_integer(rng.gen_range(0..3))));
                }
                chars.push(x);
            }
            for u in g.center().into_iter().filter(|&u| g.mul(u, u) == g.identity()) {
                runs += 1;
                let report = verify_lambda_ring(g, u, &chars, 6)?;
                if let Some(name) = report.first_failure() {
                    bad.push(format!("{}:u={u}:{name}", g.name()));
                }
            }
        }
        Ok((
            bad.is_empty(),
            format!("{runs} (G, u) pairs, depth 6, linear + regular + random characters; failures {bad:?}"),
        ))
    }

    fn koszul_twist(&self) -> Outcome {
        let entries = self.triangular_entries()?;
        let mut bad = Vec::new();
        let mut fallback = 0;
        for &(c, n) in &entries {
            let t = koszul_twist(&c.entries[n].datum)?;
            fallback += !t.upper_triangular as usize;
            if !t.report.all_passed() {
                bad.push(format!("{}#{n}", c.group.name()));
            }
        }
        Ok((
            bad.is_empty(),
            format!(
                "{} triangular data ({fallback} needed the search fallback for gamma); failures {bad:?}",
                entries.len()
            ),
        ))
    }

    fn braiding_invariants(&self) -> Outcome {
        let mut runs = 0;
        let mut bad = Vec::new();
        for k in self.group_indices() {
            let tri = self.tri(k)?;
            let mut reps = test_representations(&tri.group);
            if !reps.iter().any(|(l, _)| l == "regular") {
                reps.push(("regular".into(), regular_rep(&tri.group)));
            }
            for r in tri.distinct_rmatrices() {
                for (label, rep) in &reps {
                    for n in 2..=3 {
                        runs += 1;
                        let act = braided_action(rep, r, n)?;
                        if let Some(name) = act.report.first_failure() {
                            bad.push(format!("{}:{label}:n={n}:{name}", tri.group.name()));
                        }
                    }
                }
            }
        }
        Ok((
            bad.is_empty(),
            format!(
                "{runs} braided actions (n = 2, 3, regular and linear reps) are honest S_n actions; failures {bad:?}"
            ),
        ))
    }
}

/// All linear characters, plus the regular representation when `|G|³` stays
/// within 64 dimensions.
pub fn test_representations(group: &Arc<FiniteGroup>) -> Vec<(String, MatrixRep)> {
    let mut reps: Vec<(String, MatrixRep)> = linear_characters(group)
        .into_iter()
        .enumerate()
        .map(|(k, rep)| (format!("linear{k}"), rep))
        .collect();
    if group.size().pow(3) <= 64 {
        reps.push(("regular".into(), regular_rep(group)));
    }
    reps
}
