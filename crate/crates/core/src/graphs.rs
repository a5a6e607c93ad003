//! The nilpotent graph, its reduction `Γ(G)` on `G \ Z_∞(G)`, and the
//! commuting graph on `G \ Z(G)`, with components, BFS distances and
//! exports.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::group::{Element, Group};
use crate::structure::{self, ConjugacyClasses};
use crate::subgroup::{closure, SubgroupSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// Every element, `x ~ y` when `<x, y>` is nilpotent.
    NilpotentFull,
    /// The nilpotent graph restricted to `G \ Z_∞(G)`.
    NilpotentReduced,
    /// `G \ Z(G)`, `x ~ y` when `xy = yx`.
    Commuting,
}

impl GraphKind {
    pub const ALL: [GraphKind; 3] = [
        GraphKind::NilpotentFull,
        GraphKind::NilpotentReduced,
        GraphKind::Commuting,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::NilpotentFull => "nilpotent_full",
            GraphKind::NilpotentReduced => "nilpotent_reduced",
            GraphKind::Commuting => "commuting",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nilpotent" | "nilpotent_full" | "full" => Ok(GraphKind::NilpotentFull),
            "reduced" | "nilpotent_reduced" => Ok(GraphKind::NilpotentReduced),
            "commuting" => Ok(GraphKind::Commuting),
            other => Err(GraphError::UnknownKind(other.to_string())),
        }
    }
}

/// True when `<x, y>` is nilpotent.
pub fn is_nilpotent_pair(g: &Group, x: Element, y: Element) -> bool {
    if g.commute(x, y) {
        return true;
    }
    structure::is_nilpotent(g, &closure(g, [x, y]))
}

type NilCache = HashMap<SubgroupSet, bool>;

fn nil_row(g: &Group, x: Element, cache: &mut NilCache) -> FixedBitSet {
    let mut row = FixedBitSet::with_capacity(g.order());
    for y in g.elements() {
        let adjacent = g.commute(x, y) || {
            let h = closure(g, [x, y]);
            match cache.get(&h) {
                Some(&v) => v,
                None => {
                    let v = structure::is_nilpotent(g, &h);
                    cache.insert(h, v);
                    v
                }
            }
        };
        if adjacent {
            row.insert(y.index());
        }
    }
    row
}

/// `Nil_G(x) = { y : <x, y> nilpotent }` by a direct scan.
pub fn nil_neighborhood(g: &Group, x: Element) -> SubgroupSetLike {
    nil_row(g, x, &mut NilCache::new())
}

/// Plain bitset over element indices; nilpotent neighborhoods are not
/// subgroups in general.
pub type SubgroupSetLike = FixedBitSet;

/// `Nil_G(x)` for every element, computed on one representative per
/// conjugacy class and transported with `Nil_G(x^c) = Nil_G(x)^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilTable {
    rows: Vec<FixedBitSet>,
}

impl NilTable {
    pub fn new(g: &Group, classes: &ConjugacyClasses) -> Self {
        let reps: Vec<Element> = classes.representatives().collect();
        let rep_rows: Vec<FixedBitSet> = reps
            .par_iter()
            .map_init(NilCache::new, |cache, &x| nil_row(g, x, cache))
            .collect();
        let mut rows = vec![FixedBitSet::new(); g.order()];
        for (class, rep_row) in classes.classes.iter().zip(rep_rows) {
            for &y in class.iter().skip(1) {
                let c = classes.conjugator[y.index()];
                let mut row = FixedBitSet::with_capacity(g.order());
                for z in rep_row.ones() {
                    row.insert(g.conjugate(Element::new(z), c).index());
                }
                rows[y.index()] = row;
            }
            rows[class[0].index()] = rep_row;
        }
        NilTable { rows }
    }

    /// A table with no rows, for graphs that never consult it.
    pub fn empty() -> Self {
        NilTable { rows: Vec::new() }
    }

    pub fn row(&self, x: Element) -> &FixedBitSet {
        &self.rows[x.index()]
    }

    pub fn contains(&self, x: Element, y: Element) -> bool {
        self.rows[x.index()].contains(y.index())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Shortest-path distance in a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

/// Whole-graph diameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Diameter {
    /// No vertices at all.
    Empty,
    Finite(usize),
    /// More than one component.
    Disconnected,
}

/// An undirected simple graph on a subset of a group's elements.
#[derive(Clone, Debug)]
pub struct GroupGraph {
    kind: GraphKind,
    element_orders: Vec<u32>,
    vertices: FixedBitSet,
    adjacency: Vec<FixedBitSet>,
    components: Vec<Vec<usize>>,
    component_of: Vec<Option<usize>>,
    diameters: Vec<usize>,
}

impl GroupGraph {
    /// Builds the graph from adjacency rows (indexed by element, restricted
    /// to `vertices`, self-loops dropped) and analyzes its components.
    pub fn from_rows(
        kind: GraphKind,
        element_orders: Vec<u32>,
        vertices: FixedBitSet,
        rows: impl Fn(usize) -> FixedBitSet,
    ) -> Self {
        let n = vertices.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for v in vertices.ones() {
            let mut row = rows(v);
            row.intersect_with(&vertices);
            row.set(v, false);
            adjacency[v] = row;
        }
        let mut graph = GroupGraph {
            kind,
            element_orders,
            vertices,
            adjacency,
            components: Vec::new(),
            component_of: vec![None; n],
            diameters: Vec::new(),
        };
        graph.analyze();
        graph
    }

    fn analyze(&mut self) {
        let n = self.vertices.len();
        let mut seen = FixedBitSet::with_capacity(n);
        for v in self.vertices.ones() {
            if seen.contains(v) {
                continue;
            }
            let reach = self.reachable(v);
            seen.union_with(&reach);
            let id = self.components.len();
            let members: Vec<usize> = reach.ones().collect();
            for &m in &members {
                self.component_of[m] = Some(id);
            }
            self.components.push(members);
        }
        self.diameters = self
            .components
            .par_iter()
            .map(|c| c.iter().map(|&v| self.eccentricity(v)).max().unwrap_or(0))
            .collect();
    }

    fn reachable(&self, start: usize) -> FixedBitSet {
        let n = self.vertices.len();
        let mut visited = FixedBitSet::with_capacity(n);
        visited.insert(start);
        let mut frontier = visited.clone();
        while !frontier.is_clear() {
            let mut next = FixedBitSet::with_capacity(n);
            for v in frontier.ones() {
                next.union_with(&self.adjacency[v]);
            }
            next.difference_with(&visited);
            visited.union_with(&next);
            frontier = next;
        }
        visited
    }

    /// BFS levels from `start`: `levels[d]` holds the vertices at distance `d`.
    fn levels(&self, start: usize) -> Vec<FixedBitSet> {
        let n = self.vertices.len();
        let mut visited = FixedBitSet::with_capacity(n);
        visited.insert(start);
        let mut frontier = visited.clone();
        let mut levels = Vec::new();
        while !frontier.is_clear() {
            let mut next = FixedBitSet::with_capacity(n);
            for v in frontier.ones() {
                next.union_with(&self.adjacency[v]);
            }
            next.difference_with(&visited);
            visited.union_with(&next);
            levels.push(std::mem::replace(&mut frontier, next));
        }
        levels
    }

    fn eccentricity(&self, v: usize) -> usize {
        self.levels(v).len() - 1
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Order of the parent group.
    pub fn parent_order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_set(&self) -> &FixedBitSet {
        &self.vertices
    }

    pub fn vertices(&self) -> impl Iterator<Item = Element> + '_ {
        self.vertices.ones().map(Element::new)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.count_ones(..)
    }

    pub fn is_vertex(&self, x: Element) -> bool {
        x.index() < self.vertices.len() && self.vertices.contains(x.index())
    }

    pub fn adjacent(&self, x: Element, y: Element) -> bool {
        self.is_vertex(x) && self.adjacency[x.index()].contains(y.index())
    }

    pub fn neighbors(&self, x: Element) -> &FixedBitSet {
        &self.adjacency[x.index()]
    }

    pub fn edge_count(&self) -> usize {
        self.vertices
            .ones()
            .map(|v| self.adjacency[v].count_ones(..))
            .sum::<usize>()
            / 2
    }

    /// Unordered edges `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for v in self.vertices.ones() {
            for w in self.adjacency[v].ones().filter(|&w| w > v) {
                out.push([v, w]);
            }
        }
        out
    }

    /// Components sorted by their minimal vertex.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Diameter of every component, parallel to [`GroupGraph::components`].
    pub fn diameters(&self) -> &[usize] {
        &self.diameters
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn diameter(&self) -> Diameter {
        match self.components.len() {
            0 => Diameter::Empty,
            1 => Diameter::Finite(self.diameters[0]),
            _ => Diameter::Disconnected,
        }
    }

    pub fn max_component_diameter(&self) -> Option<usize> {
        self.diameters.iter().copied().max()
    }

    pub fn component_of(&self, x: Element) -> Result<usize, GraphError> {
        if !self.is_vertex(x) {
            return Err(GraphError::NotAVertex(x.index()));
        }
        Ok(self.component_of[x.index()].expect("every vertex has a component"))
    }

    pub fn distance(&self, x: Element, y: Element) -> Result<Distance, GraphError> {
        if !self.is_vertex(x) {
            return Err(GraphError::NotAVertex(x.index()));
        }
        if !self.is_vertex(y) {
            return Err(GraphError::NotAVertex(y.index()));
        }
        Ok(self
            .levels(x.index())
            .iter()
            .position(|level| level.contains(y.index()))
            .map_or(Distance::Unreachable, Distance::Finite))
    }

    /// Distance from `x` to every vertex (`None` when unreachable or not a
    /// vertex), indexed by element.
    pub fn distances_from(&self, x: Element) -> Result<Vec<Option<usize>>, GraphError> {
        if !self.is_vertex(x) {
            return Err(GraphError::NotAVertex(x.index()));
        }
        let mut out = vec![None; self.vertices.len()];
        for (d, level) in self.levels(x.index()).iter().enumerate() {
            for v in level.ones() {
                out[v] = Some(d);
            }
        }
        Ok(out)
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<Element> {
        let total = self.vertex_count();
        self.vertices
            .ones()
            .filter(|&v| self.adjacency[v].count_ones(..) + 1 == total)
            .map(Element::new)
            .collect()
    }

    /// Same vertex set and same edges.
    pub fn same_graph(&self, other: &GroupGraph) -> bool {
        self.vertices == other.vertices
            && self
                .vertices
                .ones()
                .all(|v| self.adjacency[v] == other.adjacency[v])
    }

    /// True when every edge of `self` is an edge of `other`.
    pub fn edges_subset_of(&self, other: &GroupGraph) -> bool {
        self.vertices
            .ones()
            .all(|v| self.adjacency[v].is_subset(&other.adjacency[v]))
    }

    pub fn to_export(&self) -> GraphExport {
        GraphExport {
            kind: self.kind,
            vertices: self
                .vertices
                .ones()
                .map(|v| VertexExport {
                    index: v,
                    order: self.element_orders[v] as usize,
                })
                .collect(),
            edges: self.edges(),
            components: self.components.clone(),
            diameters: self.diameters.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_export()).expect("graph export serializes")
    }

    /// Undirected DOT with one `a -- b` line per edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {{", self.kind).unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        for v in self.vertices.ones() {
            writeln!(out, "  {v} [label=\"{v} (o={})\"];", self.element_orders[v]).unwrap();
        }
        for [a, b] in self.edges() {
            writeln!(out, "  {a} -- {b};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => self.to_json(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(GraphError::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexExport {
    pub index: usize,
    pub order: usize,
}

/// JSON form of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub kind: GraphKind,
    pub vertices: Vec<VertexExport>,
    pub edges: Vec<[usize; 2]>,
    pub components: Vec<Vec<usize>>,
    pub diameters: Vec<usize>,
}

impl GraphExport {
    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        serde_json::from_str(s).map_err(|e| GraphError::Malformed(e.to_string()))
    }

    /// Sorted neighbor lists keyed by vertex index.
    pub fn adjacency(&self) -> Result<std::collections::BTreeMap<usize, Vec<usize>>, GraphError> {
        let mut adj: std::collections::BTreeMap<usize, Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| (v.index, Vec::new()))
            .collect();
        for &[a, b] in &self.edges {
            if a == b {
                return Err(GraphError::Malformed(format!("self-loop at {a}")));
            }
            adj.get_mut(&a)
                .ok_or(GraphError::Malformed(format!(
                    "edge endpoint {a} is not a vertex"
                )))?
                .push(b);
            adj.get_mut(&b)
                .ok_or(GraphError::Malformed(format!(
                    "edge endpoint {b} is not a vertex"
                )))?
                .push(a);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        Ok(adj)
    }
}

/// The three graphs of a group, given its neighborhood table, center and
/// hypercenter.
pub fn build_graph_with(
    g: &Group,
    kind: GraphKind,
    nil: &NilTable,
    center: &SubgroupSet,
    hypercenter: &SubgroupSet,
) -> GroupGraph {
    let n = g.order();
    let orders = g.element_orders().to_vec();
    match kind {
        GraphKind::NilpotentFull => {
            let mut all = FixedBitSet::with_capacity(n);
            all.insert_range(..);
            GroupGraph::from_rows(kind, orders, all, |v| nil.row(Element::new(v)).clone())
        }
        GraphKind::NilpotentReduced => {
            let mut vertices = hypercenter.bits().clone();
            vertices.toggle_range(..);
            GroupGraph::from_rows(kind, orders, vertices, |v| nil.row(Element::new(v)).clone())
        }
        GraphKind::Commuting => {
            let mut vertices = center.bits().clone();
            vertices.toggle_range(..);
            GroupGraph::from_rows(kind, orders, vertices, |v| {
                structure::centralizer(g, Element::new(v)).into_bits()
            })
        }
    }
}

/// Builds one graph from scratch.
pub fn build_graph(g: &Group, kind: GraphKind) -> GroupGraph {
    let classes = structure::conjugacy_classes(g);
    let nil = NilTable::new(g, &classes);
    build_graph_with(
        g,
        kind,
        &nil,
        &structure::center(g),
        &structure::hypercenter(g),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    fn involutions(g: &Group) -> Vec<Element> {
        g.elements().filter(|&x| g.element_order(x) == 2).collect()
    }

    #[test]
    fn nilpotent_pairs() {
        let s3 = build::symmetric(3).unwrap();
        let t = involutions(&s3);
        assert!(!is_nilpotent_pair(&s3, t[0], t[1]));
        for x in s3.elements() {
            for k in 0..6 {
                assert!(is_nilpotent_pair(&s3, x, s3.pow(x, k)));
            }
        }
    }

    #[test]
    fn neighborhoods() {
        let s3 = build::symmetric(3).unwrap();
        assert!(nil_neighborhood(&s3, Element::IDENTITY).is_full());
        let t = involutions(&s3)[0];
        let row: Vec<usize> = nil_neighborhood(&s3, t).ones().collect();
        assert_eq!(row, vec![0, t.index()]);
    }

    #[test]
    fn table_matches_direct_scan() {
        let g = build::symmetric(4).unwrap();
        let table = NilTable::new(&g, &structure::conjugacy_classes(&g));
        for x in g.elements() {
            assert_eq!(table.row(x), &nil_neighborhood(&g, x));
        }
    }

    #[test]
    fn s3_reduced_graph() {
        let s3 = build::symmetric(3).unwrap();
        let gr = build_graph(&s3, GraphKind::NilpotentReduced);
        assert_eq!(gr.vertex_count(), 5);
        assert_eq!(gr.edge_count(), 1);
        assert_eq!(gr.component_count(), 4);
        let mut d = gr.diameters().to_vec();
        d.sort();
        assert_eq!(d, vec![0, 0, 0, 1]);
        let t = involutions(&s3);
        assert_eq!(gr.distance(t[0], t[1]).unwrap(), Distance::Unreachable);
        assert_eq!(gr.distance(t[0], t[0]).unwrap(), Distance::Finite(0));
        assert_eq!(
            gr.distance(Element::IDENTITY, t[0]),
            Err(GraphError::NotAVertex(0))
        );
        let threes: Vec<Element> = s3
            .elements()
            .filter(|&x| s3.element_order(x) == 3)
            .collect();
        assert_eq!(
            gr.distance(threes[0], threes[1]).unwrap(),
            Distance::Finite(1)
        );
        assert_eq!(gr.diameter(), Diameter::Disconnected);
    }

    #[test]
    fn nilpotent_group_has_empty_reduced_graph() {
        let q8 = build::quaternion(2).unwrap();
        let gr = build_graph(&q8, GraphKind::NilpotentReduced);
        assert_eq!(gr.vertex_count(), 0);
        assert_eq!(gr.diameter(), Diameter::Empty);
        let dot = gr.to_dot();
        assert_eq!(
            dot,
            "graph nilpotent_reduced {\n  node [shape=circle];\n}\n"
        );
    }

    #[test]
    fn universal_vertices_are_the_hypercenter() {
        let c6 = build::cyclic(6).unwrap();
        assert_eq!(
            build_graph(&c6, GraphKind::NilpotentFull)
                .universal_vertices()
                .len(),
            6
        );
        let s3 = build::symmetric(3).unwrap();
        assert_eq!(
            build_graph(&s3, GraphKind::NilpotentFull).universal_vertices(),
            vec![Element::IDENTITY]
        );
        let d12 = build::dihedral(6).unwrap();
        let uv = build_graph(&d12, GraphKind::NilpotentFull).universal_vertices();
        let hyper: Vec<Element> = structure::hypercenter(&d12).iter().collect();
        assert_eq!(uv, hyper);
        assert_eq!(uv.len(), 2);
    }

    #[test]
    fn sharp_diameter_four() {
        let g = build::semidirect_cyclic(15, 4, 8).unwrap();
        let gr = build_graph(&g, GraphKind::NilpotentReduced);
        assert_eq!(gr.diameter(), Diameter::Finite(4));
    }

    #[test]
    fn json_round_trip() {
        let s4 = build::symmetric(4).unwrap();
        let gr = build_graph(&s4, GraphKind::NilpotentReduced);
        let parsed = GraphExport::from_json(&gr.to_json()).unwrap();
        assert_eq!(parsed, gr.to_export());
        let adj = parsed.adjacency().unwrap();
        for v in gr.vertices() {
            let expected: Vec<usize> = gr.neighbors(v).ones().collect();
            assert_eq!(adj[&v.index()], expected);
        }
        assert!(matches!(
            "svg".parse::<ExportFormat>(),
            Err(GraphError::UnknownFormat(_))
        ));
    }

    #[test]
    fn dot_lists_every_edge_once() {
        let s3 = build::symmetric(3).unwrap();
        let dot = build_graph(&s3, GraphKind::NilpotentReduced).to_dot();
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert_eq!(dot.matches("[label=").count(), 5);
        assert!(dot.starts_with("graph nilpotent_reduced {"));
    }
}
