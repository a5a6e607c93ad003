//! The theorem harness: every connectivity, neighborhood and diameter
//! statement as an executable check, per-group reports, catalog sweeps and
//! the order-54 witness search.

mod catalog;
mod checks;
mod witness54;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::classify::{self, Flags};
use crate::error::VerifyError;
use crate::graphs::{GraphKind, GroupGraph};
use crate::group::Limits;
use crate::spec::GroupSpec;
use crate::structure;

pub use catalog::{
    default_catalog, run_catalog, Catalog, CatalogReport, CheckCounts, EntryOutcome, EntryReport,
    MaxDiameter, Summary, DEFAULT_CATALOG_CAP, SCHEMA_VERSION,
};
pub use checks::{Check, CHECKS};
pub use witness54::{find_order54_witness, order27_groups, order54_candidates, Candidate};

/// Result of one check on one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail { witness: String },
    NotApplicable { reason: String },
}

impl Outcome {
    pub fn fail(witness: impl Into<String>) -> Self {
        Outcome::Fail {
            witness: witness.into(),
        }
    }

    pub fn not_applicable(reason: impl Into<String>) -> Self {
        Outcome::NotApplicable {
            reason: reason.into(),
        }
    }

    /// `Pass` when `ok`, otherwise `Fail` with the lazily built witness.
    pub fn check(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::fail(witness())
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }
}

/// Everything a check may consult.
pub struct CheckContext<'a> {
    pub spec: &'a GroupSpec,
    pub analysis: &'a Analysis,
    pub limits: Limits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub component_count: usize,
    pub connected: bool,
    /// Component diameters, ascending.
    pub diameter_multiset: Vec<usize>,
}

impl GraphStats {
    pub fn of(graph: &GroupGraph) -> Self {
        let mut diameters = graph.diameters().to_vec();
        diameters.sort_unstable();
        GraphStats {
            vertex_count: graph.vertex_count(),
            edge_count: graph.edge_count(),
            component_count: graph.component_count(),
            connected: graph.is_connected(),
            diameter_multiset: diameters,
        }
    }

    /// Diameter when the graph is connected.
    pub fn diameter(&self) -> Option<usize> {
        self.connected.then(|| self.diameter_multiset[0])
    }
}

/// Structural invariants and check outcomes for one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub name: String,
    pub spec: GroupSpec,
    pub order: usize,
    pub center_order: usize,
    pub hypercenter_order: usize,
    pub fitting_order: usize,
    pub primes: Vec<usize>,
    pub flags: Flags,
    pub graph_stats: BTreeMap<GraphKind, GraphStats>,
    pub theorem_outcomes: BTreeMap<String, Outcome>,
}

impl ClassificationReport {
    pub fn failures(&self) -> impl Iterator<Item = (&String, &Outcome)> {
        self.theorem_outcomes.iter().filter(|(_, o)| o.is_fail())
    }

    pub fn reduced_stats(&self) -> &GraphStats {
        &self.graph_stats[&GraphKind::NilpotentReduced]
    }
}

/// Rejects unknown check names.
pub fn validate_check_names(names: &[String]) -> Result<(), VerifyError> {
    for n in names {
        if !CHECKS.iter().any(|c| c.name == n) {
            return Err(VerifyError::UnknownCheck(n.clone()));
        }
    }
    Ok(())
}

/// Runs the selected checks (all when `only` is `None`) and gathers the
/// report.
pub fn report_for(
    spec: &GroupSpec,
    analysis: &Analysis,
    limits: Limits,
    only: Option<&[String]>,
) -> ClassificationReport {
    let g = analysis.group();
    let ctx = CheckContext {
        spec,
        analysis,
        limits,
    };
    let theorem_outcomes = CHECKS
        .iter()
        .filter(|c| only.is_none_or(|names| names.iter().any(|n| n == c.name)))
        .map(|c| (c.name.to_string(), (c.run)(&ctx)))
        .collect();
    ClassificationReport {
        name: spec.name(),
        spec: spec.clone(),
        order: g.order(),
        center_order: analysis.center().len(),
        hypercenter_order: analysis.hypercenter().len(),
        fitting_order: analysis.fitting().len(),
        primes: structure::pi(g),
        flags: classify::flags(analysis),
        graph_stats: GraphKind::ALL
            .iter()
            .map(|&k| (k, GraphStats::of(analysis.graph(k))))
            .collect(),
        theorem_outcomes,
    }
}

/// Builds the group and reports on it.
pub fn analyze_spec(
    spec: &GroupSpec,
    limits: Limits,
    only: Option<&[String]>,
) -> Result<ClassificationReport, VerifyError> {
    if let Some(names) = only {
        validate_check_names(names)?;
    }
    let analysis = Analysis::new(spec.build(&limits)?);
    Ok(report_for(spec, &analysis, limits, only))
}
