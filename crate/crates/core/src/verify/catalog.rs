use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::witness54::order54_candidates;
use super::{analyze_spec, validate_check_names, ClassificationReport, Outcome};
use crate::arith::{gcd, mod_pow};
use crate::build::{self, action_from_generators};
use crate::error::{GroupError, VerifyError};
use crate::group::{Group, Limits};
use crate::spec::GroupSpec;

pub const SCHEMA_VERSION: u32 = 1;

/// Largest order in the default catalog (`S5`).
pub const DEFAULT_CATALOG_CAP: usize = 120;

/// Group specs to sweep, with the largest order accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub cap: usize,
    pub entries: Vec<GroupSpec>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CatalogFile {
    Full(Catalog),
    List(Vec<GroupSpec>),
}

impl Catalog {
    pub fn new(cap: usize, entries: Vec<GroupSpec>) -> Self {
        Catalog { cap, entries }
    }

    /// Parses either a bare list of specs or `{"cap": .., "entries": [..]}`.
    /// A bare list takes `default_cap`.
    pub fn from_json(s: &str, default_cap: usize) -> Result<Self, VerifyError> {
        Ok(match serde_json::from_str(s)? {
            CatalogFile::Full(c) => c,
            CatalogFile::List(entries) => Catalog::new(default_cap, entries),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCounts {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDiameter {
    pub diameter: usize,
    pub entry: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub entries: usize,
    pub errors: usize,
    pub failures: usize,
    pub zero_fail: bool,
    pub checks: BTreeMap<String, CheckCounts>,
    /// Largest diameter of a connected reduced graph in the sweep.
    pub max_connected_diameter: Option<MaxDiameter>,
    /// Largest component diameter of a disconnected reduced graph.
    pub max_component_diameter: Option<MaxDiameter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EntryOutcome {
    Report(Box<ClassificationReport>),
    Error { spec: GroupSpec, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub index: usize,
    pub name: String,
    pub result: EntryOutcome,
}

impl EntryReport {
    pub fn report(&self) -> Option<&ClassificationReport> {
        match &self.result {
            EntryOutcome::Report(r) => Some(r),
            EntryOutcome::Error { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub schema_version: u32,
    pub cap: usize,
    pub entries: Vec<EntryReport>,
    pub summary: Summary,
}

impl CatalogReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn reports(&self) -> impl Iterator<Item = &ClassificationReport> {
        self.entries.iter().filter_map(EntryReport::report)
    }
}

/// Reports on every entry, in catalog order. Entries that fail to build are
/// recorded as errors and the sweep continues.
pub fn run_catalog(
    catalog: &Catalog,
    only: Option<&[String]>,
) -> Result<CatalogReport, VerifyError> {
    if let Some(names) = only {
        validate_check_names(names)?;
    }
    let limits = Limits::with_order_cap(catalog.cap);
    let entries: Vec<EntryReport> = catalog
        .entries
        .par_iter()
        .enumerate()
        .map(|(index, spec)| {
            let result = match analyze_spec(spec, limits, only) {
                Ok(r) => EntryOutcome::Report(Box::new(r)),
                Err(e) => EntryOutcome::Error {
                    spec: spec.clone(),
                    message: e.to_string(),
                },
            };
            EntryReport {
                index,
                name: spec.name(),
                result,
            }
        })
        .collect();
    let summary = summarize(&entries);
    Ok(CatalogReport {
        schema_version: SCHEMA_VERSION,
        cap: catalog.cap,
        entries,
        summary,
    })
}

fn summarize(entries: &[EntryReport]) -> Summary {
    let mut checks: BTreeMap<String, CheckCounts> = BTreeMap::new();
    let mut errors = 0;
    let mut max_connected: Option<MaxDiameter> = None;
    let mut max_component: Option<MaxDiameter> = None;
    let bump = |slot: &mut Option<MaxDiameter>, diameter: usize, e: &EntryReport| {
        if slot.as_ref().is_none_or(|m| diameter > m.diameter) {
            *slot = Some(MaxDiameter {
                diameter,
                entry: e.index,
                name: e.name.clone(),
            });
        }
    };
    for e in entries {
        let Some(r) = e.report() else {
            errors += 1;
            continue;
        };
        for (name, outcome) in &r.theorem_outcomes {
            let counts = checks.entry(name.clone()).or_default();
            match outcome {
                Outcome::Pass => counts.pass += 1,
                Outcome::Fail { .. } => counts.fail += 1,
                Outcome::NotApplicable { .. } => counts.not_applicable += 1,
            }
        }
        let stats = r.reduced_stats();
        match stats.diameter() {
            Some(d) => bump(&mut max_connected, d, e),
            None => {
                if let Some(&d) = stats.diameter_multiset.last() {
                    bump(&mut max_component, d, e);
                }
            }
        }
    }
    let failures = checks.values().map(|c| c.fail).sum();
    Summary {
        entries: entries.len(),
        errors,
        failures,
        zero_fail: failures == 0 && errors == 0,
        checks,
        max_connected_diameter: max_connected,
        max_component_diameter: max_component,
    }
}

/// Action of a small group on `C_p^k` (built as nested
/// direct products, first coordinate most significant) through matrices
/// over `Z/p`, one per generator of the acting group.
fn linear_action(
    p: usize,
    k: usize,
    acting: &Group,
    matrices: &[Vec<Vec<usize>>],
) -> Result<(GroupSpec, Vec<Vec<usize>>), GroupError> {
    let mut normal_spec = GroupSpec::cyclic(p);
    for _ in 1..k {
        normal_spec = GroupSpec::direct_product(normal_spec, GroupSpec::cyclic(p));
    }
    let size = p.pow(k as u32);
    let digits = |mut v: usize| {
        let mut d = vec![0; k];
        for i in (0..k).rev() {
            d[i] = v % p;
            v /= p;
        }
        d
    };
    let images: Vec<Vec<usize>> = matrices
        .iter()
        .map(|m| {
            (0..size)
                .map(|v| {
                    let d = digits(v);
                    (0..k).fold(0, |acc, i| {
                        acc * p + (0..k).map(|j| m[i][j] * d[j]).sum::<usize>() % p
                    })
                })
                .collect()
        })
        .collect();
    let normal = normal_spec.build(&Limits::default())?;
    let action = action_from_generators(&normal, acting, &images)?;
    Ok((normal_spec, action))
}

fn linear_extension(
    label: &str,
    p: usize,
    k: usize,
    acting_spec: GroupSpec,
    matrices: &[Vec<Vec<usize>>],
) -> GroupSpec {
    let acting = acting_spec
        .build(&Limits::default())
        .expect("acting group builds");
    let (normal, action) = linear_action(p, k, &acting, matrices).expect("valid linear action");
    GroupSpec::semidirect_table(normal, acting_spec, action).with_label(label)
}

/// Groups beyond the builder families that exercise Frobenius,
/// 2-Frobenius and A-group hypotheses.
fn extension_groups() -> Vec<GroupSpec> {
    let c = GroupSpec::cyclic;
    let (_, _, sl_action) = build::sl23_action().expect("SL(2,3) action");
    vec![
        GroupSpec::semidirect_table(GroupSpec::quaternion(2), c(3), sl_action)
            .with_label("SL(2,3)"),
        linear_extension("C3^2:C2", 3, 2, c(2), &[vec![vec![2, 0], vec![0, 2]]]),
        linear_extension("C3^2:C4", 3, 2, c(4), &[vec![vec![0, 2], vec![1, 0]]]),
        linear_extension("C3^2:C8", 3, 2, c(8), &[vec![vec![0, 1], vec![1, 1]]]),
        linear_extension(
            "C3^2:Q8",
            3,
            2,
            GroupSpec::quaternion(2),
            &[vec![vec![0, 2], vec![1, 0]], vec![vec![1, 1], vec![1, 2]]],
        ),
        linear_extension("Heis(3)", 3, 2, c(3), &[vec![vec![1, 1], vec![0, 1]]]),
        linear_extension("C2^2:C9", 2, 2, c(9), &[vec![vec![0, 1], vec![1, 1]]]),
        linear_extension(
            "C2^3:C7",
            2,
            3,
            c(7),
            &[vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]],
        ),
        linear_extension("C5^2:C4", 5, 2, c(4), &[vec![vec![2, 0], vec![0, 2]]]),
        linear_extension("C5^2:C3", 5, 2, c(3), &[vec![vec![0, 4], vec![1, 4]]]),
        linear_extension("C5^2:C2", 5, 2, c(2), &[vec![vec![4, 0], vec![0, 4]]]),
        linear_extension("C3^2:C6", 3, 2, c(6), &[vec![vec![2, 2], vec![0, 2]]]),
        linear_extension(
            "C2^2:C3xC3",
            2,
            2,
            GroupSpec::direct_product(c(3), c(3)),
            &[vec![vec![0, 1], vec![1, 1]], vec![vec![1, 0], vec![0, 1]]],
        ),
        linear_extension(
            "C3^3:C2",
            3,
            3,
            c(2),
            &[vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]],
        ),
    ]
}

/// Non-abelian builder groups of order at most 50, used as direct-product
/// factors.
fn nonabelian_factors() -> Vec<(GroupSpec, usize)> {
    let mut out: Vec<(GroupSpec, usize)> = Vec::new();
    out.extend((3..=25).map(|n| (GroupSpec::dihedral(n), 2 * n)));
    out.extend((2..=12).map(|n| (GroupSpec::quaternion(n), 4 * n)));
    out.push((GroupSpec::alternating(4), 12));
    out.push((GroupSpec::symmetric(4), 24));
    for n in 3..=25usize {
        for m in 2..=50 / n {
            for e in 2..n {
                if gcd(e, n) == 1 && mod_pow(e, m, n) == 1 && !(m == 2 && e == n - 1) {
                    out.push((GroupSpec::semidirect_cyclic(n, m, e), n * m));
                }
            }
        }
    }
    out
}

/// The default sweep: the builder families up to order 100, products of
/// small groups, linear extensions, the order-54 search family and `S5`.
pub fn default_catalog() -> Catalog {
    let c = GroupSpec::cyclic;
    let mut entries = Vec::new();
    entries.extend((1..=100).map(c));
    entries.extend((2..=50).map(GroupSpec::dihedral));
    entries.extend((2..=25).map(GroupSpec::quaternion));
    entries.extend((1..=5).map(GroupSpec::symmetric));
    entries.extend((3..=5).map(GroupSpec::alternating));
    for n in 2..=50usize {
        for m in 2..=100 / n {
            for e in 2..n {
                if gcd(e, n) == 1 && mod_pow(e, m, n) == 1 {
                    entries.push(GroupSpec::semidirect_cyclic(n, m, e));
                }
            }
        }
    }

    let small = nonabelian_factors();
    for (s, order) in &small {
        for k in 2..=100 / order {
            entries.push(GroupSpec::direct_product(s.clone(), c(k)));
        }
    }
    for (i, (a, oa)) in small.iter().enumerate() {
        for (b, ob) in &small[i..] {
            if oa * ob <= 100 {
                entries.push(GroupSpec::direct_product(a.clone(), b.clone()));
            }
        }
    }
    for (a, b) in [
        (2, 2),
        (3, 3),
        (2, 6),
        (4, 4),
        (5, 5),
        (3, 6),
        (2, 10),
        (6, 6),
    ] {
        entries.push(GroupSpec::direct_product(c(a), c(b)));
    }
    entries.push(GroupSpec::direct_product(
        GroupSpec::direct_product(c(2), c(2)),
        c(2),
    ));
    entries.push(GroupSpec::direct_product(
        GroupSpec::direct_product(c(3), c(3)),
        c(3),
    ));
    entries.push(GroupSpec::direct_product(
        GroupSpec::direct_product(GroupSpec::symmetric(3), c(2)),
        c(2),
    ));
    entries.extend(extension_groups());
    entries.extend(
        order54_candidates()
            .into_iter()
            .map(|candidate| candidate.spec),
    );
    Catalog::new(DEFAULT_CATALOG_CAP, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_list_and_object_forms_parse() {
        let list = r#"[{"constructor":"cyclic","params":{"n":3}}]"#;
        let c = Catalog::from_json(list, 50).unwrap();
        assert_eq!((c.cap, c.len()), (50, 1));
        let obj = r#"{"cap":10,"entries":[]}"#;
        let c = Catalog::from_json(obj, 50).unwrap();
        assert_eq!((c.cap, c.len()), (10, 0));
        assert!(Catalog::from_json("{", 50).is_err());
    }

    #[test]
    fn empty_catalog_gives_empty_report() {
        let r = run_catalog(&Catalog::new(10, vec![]), None).unwrap();
        assert!(r.entries.is_empty());
        assert!(r.summary.zero_fail);
    }

    #[test]
    fn oversized_entry_is_recorded_and_sweep_continues() {
        let cat = Catalog::new(10, vec![GroupSpec::cyclic(12), GroupSpec::symmetric(3)]);
        let r = run_catalog(&cat, None).unwrap();
        assert!(matches!(r.entries[0].result, EntryOutcome::Error { .. }));
        assert!(r.entries[1].report().is_some());
        assert_eq!(r.summary.errors, 1);
        assert_eq!(r.summary.failures, 0);
        assert!(!r.summary.zero_fail);
    }

    #[test]
    fn extension_groups_build_with_expected_orders() {
        let orders: Vec<usize> = extension_groups()
            .iter()
            .map(|s| s.build(&Limits::default()).unwrap().order())
            .collect();
        assert_eq!(
            orders,
            vec![24, 18, 36, 72, 72, 27, 36, 56, 100, 75, 50, 54, 36, 54]
        );
    }

    #[test]
    fn default_catalog_respects_its_cap() {
        let cat = default_catalog();
        assert!(cat.len() > 700, "{}", cat.len());
        for s in &cat.entries {
            if let Some(o) = s.predicted_order() {
                assert!(o <= cat.cap, "{}", s.name());
            }
        }
    }
}
