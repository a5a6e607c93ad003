//! Lazily cached structural data for one group.

use std::sync::OnceLock;

use crate::classify::{self, FrobeniusWitness, TwoFrobeniusWitness};
use crate::graphs::{build_graph_with, GraphKind, GroupGraph, NilTable};
use crate::group::{Element, Group};
use crate::structure::{self, ConjugacyClasses};
use crate::subgroup::SubgroupSet;

/// A group with its expensive derived data computed on first use.
///
/// Every accessor is safe to call from several threads; each value is
/// computed at most once.
#[derive(Debug)]
pub struct Analysis {
    group: Group,
    classes: OnceLock<ConjugacyClasses>,
    normals: OnceLock<Vec<SubgroupSet>>,
    center: OnceLock<SubgroupSet>,
    hypercenter: OnceLock<SubgroupSet>,
    fitting: OnceLock<SubgroupSet>,
    solvable: OnceLock<bool>,
    nil: OnceLock<NilTable>,
    graphs: [OnceLock<GroupGraph>; 3],
    hyper_quotient: OnceLock<Option<Box<HyperQuotient>>>,
    frobenius: OnceLock<Option<FrobeniusWitness>>,
    two_frobenius: OnceLock<Option<TwoFrobeniusWitness>>,
}

/// `G / Z_∞(G)` with the projection from `G`.
#[derive(Debug)]
pub struct HyperQuotient {
    pub analysis: Analysis,
    pub projection: Vec<Element>,
}

impl Analysis {
    pub fn new(group: Group) -> Self {
        Analysis {
            group,
            classes: OnceLock::new(),
            normals: OnceLock::new(),
            center: OnceLock::new(),
            hypercenter: OnceLock::new(),
            fitting: OnceLock::new(),
            solvable: OnceLock::new(),
            nil: OnceLock::new(),
            graphs: Default::default(),
            hyper_quotient: OnceLock::new(),
            frobenius: OnceLock::new(),
            two_frobenius: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        self.classes
            .get_or_init(|| structure::conjugacy_classes(&self.group))
    }

    pub fn normal_subgroups(&self) -> &[SubgroupSet] {
        self.normals
            .get_or_init(|| structure::normal_subgroups(&self.group, self.classes()))
    }

    pub fn center(&self) -> &SubgroupSet {
        self.center.get_or_init(|| structure::center(&self.group))
    }

    pub fn hypercenter(&self) -> &SubgroupSet {
        self.hypercenter
            .get_or_init(|| structure::hypercenter(&self.group))
    }

    pub fn fitting(&self) -> &SubgroupSet {
        self.fitting.get_or_init(|| structure::fitting(&self.group))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.hypercenter().is_whole()
    }

    pub fn is_solvable(&self) -> bool {
        *self
            .solvable
            .get_or_init(|| structure::is_solvable(&self.group))
    }

    pub fn nil_table(&self) -> &NilTable {
        self.nil
            .get_or_init(|| NilTable::new(&self.group, self.classes()))
    }

    /// `Nil_G(x)`.
    pub fn nil(&self, x: Element) -> &fixedbitset::FixedBitSet {
        self.nil_table().row(x)
    }

    pub fn graph(&self, kind: GraphKind) -> &GroupGraph {
        let slot = match kind {
            GraphKind::NilpotentFull => 0,
            GraphKind::NilpotentReduced => 1,
            GraphKind::Commuting => 2,
        };
        self.graphs[slot].get_or_init(|| {
            let nil_needed = kind != GraphKind::Commuting;
            let table;
            let nil = if nil_needed {
                self.nil_table()
            } else {
                table = NilTable::empty();
                &table
            };
            build_graph_with(&self.group, kind, nil, self.center(), self.hypercenter())
        })
    }

    /// `Γ(G)`.
    pub fn reduced_graph(&self) -> &GroupGraph {
        self.graph(GraphKind::NilpotentReduced)
    }

    /// `G / Z_∞(G)`, or `None` when the hypercenter is trivial.
    pub fn hypercenter_quotient(&self) -> Option<&HyperQuotient> {
        self.hyper_quotient
            .get_or_init(|| {
                let z = self.hypercenter();
                if z.is_trivial() {
                    return None;
                }
                let q = self.group.quotient(z).expect("hypercenter is normal");
                Some(Box::new(HyperQuotient {
                    analysis: Analysis::new(q.group),
                    projection: q.projection,
                }))
            })
            .as_deref()
    }

    /// The analysis of `G / Z_∞(G)`; `self` when the hypercenter is trivial.
    pub fn reduced(&self) -> &Analysis {
        self.hypercenter_quotient().map_or(self, |hq| &hq.analysis)
    }

    /// Image of `x` in `G / Z_∞(G)`.
    pub fn project(&self, x: Element) -> Element {
        self.hypercenter_quotient()
            .map_or(x, |hq| hq.projection[x.index()])
    }

    pub fn frobenius(&self) -> Option<&FrobeniusWitness> {
        self.frobenius
            .get_or_init(|| classify::frobenius_from_normals(&self.group, self.normal_subgroups()))
            .as_ref()
    }

    pub fn two_frobenius(&self) -> Option<&TwoFrobeniusWitness> {
        self.two_frobenius
            .get_or_init(|| classify::two_frobenius_fast(&self.group, self.fitting()))
            .as_ref()
    }
}

impl From<Group> for Analysis {
    fn from(g: Group) -> Self {
        Analysis::new(g)
    }
}
