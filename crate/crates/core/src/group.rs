//! Finite groups materialized as Cayley tables over dense element indices.
//!
//! Index 0 is always the identity. Products are read as "first the left
//! operand, then the right one", so for permutation groups `x * y` applies
//! `x` first, and conjugation is `x^g = g^-1 x g`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::subgroup::{closure, SubgroupSet};

pub const DEFAULT_ORDER_CAP: usize = 2000;
/// Groups up to this order get an exhaustive associativity check.
pub const FULL_ASSOCIATIVITY_MAX: usize = 512;
/// Environment variable that overrides [`DEFAULT_ORDER_CAP`].
pub const ORDER_CAP_ENV: &str = "NILGRAPH_ORDER_CAP";

/// An element of a specific [`Group`], identified by its table index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    pub fn new(index: usize) -> Self {
        Element(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl From<usize> for Element {
    fn from(i: usize) -> Self {
        Element::new(i)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Construction limits shared by every builder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub order_cap: usize,
    pub full_associativity_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: DEFAULT_ORDER_CAP,
            full_associativity_max: FULL_ASSOCIATIVITY_MAX,
        }
    }
}

impl Limits {
    pub fn with_order_cap(order_cap: usize) -> Self {
        Limits {
            order_cap,
            ..Limits::default()
        }
    }

    /// Default limits, with the order cap taken from `NILGRAPH_ORDER_CAP` when set.
    pub fn from_env() -> Self {
        let cap = std::env::var(ORDER_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
            .unwrap_or(DEFAULT_ORDER_CAP);
        Limits::with_order_cap(cap)
    }

    pub fn check_order(&self, order: usize) -> Result<(), GroupError> {
        if order > self.order_cap {
            Err(GroupError::OrderCap {
                order,
                cap: self.order_cap,
            })
        } else {
            Ok(())
        }
    }
}

/// A finite group given by its full multiplication table.
///
/// Immutable once built; every query is a table lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    element_order: Vec<u32>,
    generators: Vec<Element>,
    label: String,
}

impl Group {
    /// Validates a Cayley table and wraps it as a group.
    ///
    /// The table is row-major (`table[i * n + j]` is `i * j`) with the identity
    /// at index 0. `generators` may be empty, in which case a generating set
    /// is chosen greedily.
    pub fn from_table(
        label: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        generators: Vec<Element>,
        limits: &Limits,
    ) -> Result<Group, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidTable(
                "a group has at least one element".into(),
            ));
        }
        limits.check_order(order)?;
        if table.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v as usize >= order) {
            return Err(GroupError::InvalidTable(format!(
                "entry {bad} out of range"
            )));
        }
        for j in 0..order {
            if table[j] as usize != j || table[j * order] as usize != j {
                return Err(GroupError::InvalidTable(format!(
                    "index 0 does not act as the identity on element {j}"
                )));
            }
        }
        // Latin square: every row and column a permutation.
        let mut seen = vec![usize::MAX; order];
        for i in 0..order {
            for j in 0..order {
                let v = table[i * order + j] as usize;
                if seen[v] == i {
                    return Err(GroupError::InvalidTable(format!("row {i} repeats {v}")));
                }
                seen[v] = i;
            }
        }
        seen.fill(usize::MAX);
        for j in 0..order {
            for i in 0..order {
                let v = table[i * order + j] as usize;
                if seen[v] == j {
                    return Err(GroupError::InvalidTable(format!("column {j} repeats {v}")));
                }
                seen[v] = j;
            }
        }
        if let Some(gen) = generators.iter().find(|g| g.index() >= order) {
            return Err(GroupError::OutOfRange {
                index: gen.index(),
                order,
            });
        }
        let group = Group::assemble(label.into(), order, table, generators);
        group.check_associativity(limits)?;
        Ok(group)
    }

    /// Builds the group without validation. Callers guarantee the group laws.
    pub(crate) fn assemble(
        label: String,
        order: usize,
        table: Vec<u32>,
        generators: Vec<Element>,
    ) -> Group {
        let mut inverse = vec![0u32; order];
        for i in 0..order {
            for j in 0..order {
                if table[i * order + j] == 0 {
                    inverse[i] = j as u32;
                    break;
                }
            }
        }
        let mut element_order = vec![0u32; order];
        for i in 0..order {
            let mut k = 1u32;
            let mut p = i;
            while p != 0 {
                p = table[p * order + i] as usize;
                k += 1;
            }
            element_order[i] = k;
        }
        let mut group = Group {
            order,
            table,
            inverse,
            element_order,
            generators: Vec::new(),
            label,
        };
        let mut gens: Vec<Element> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let spans = closure(&group, gens.iter().copied()).len() == order;
        group.generators = if spans {
            gens
        } else {
            group.greedy_generators()
        };
        group
    }

    fn check_associativity(&self, limits: &Limits) -> Result<(), GroupError> {
        let n = self.order;
        let fail = |a: usize, b: usize, c: usize| {
            Err(GroupError::InvalidTable(format!(
                "associativity fails on ({a}, {b}, {c})"
            )))
        };
        if n <= limits.full_associativity_max {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.table[a * n + b] as usize;
                    for c in 0..n {
                        let bc = self.table[b * n + c] as usize;
                        if self.table[ab * n + c] != self.table[a * n + bc] {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6e69_6c67);
            for _ in 0..10 * n * n {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                let ab = self.table[a * n + b] as usize;
                let bc = self.table[b * n + c] as usize;
                if self.table[ab * n + c] != self.table[a * n + bc] {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<Element> {
        let mut gens = Vec::new();
        let mut span = SubgroupSet::trivial(self.order);
        for i in 1..self.order {
            if !span.contains(Element::new(i)) {
                gens.push(Element::new(i));
                span = closure(self, gens.iter().copied());
                if span.len() == self.order {
                    break;
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Row-major Cayley table.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.element_order
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(Element::new)
    }

    /// Checked conversion from an index.
    pub fn element(&self, index: usize) -> Result<Element, GroupError> {
        if index < self.order {
            Ok(Element::new(index))
        } else {
            Err(GroupError::OutOfRange {
                index,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        Element(self.table[x.index() * self.order + y.index()])
    }

    #[inline]
    pub fn inv(&self, x: Element) -> Element {
        Element(self.inverse[x.index()])
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: Element, y: Element) -> Element {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        // x^-1 y^-1 x y = (y x)^-1 (x y)
        self.mul(self.inv(yx), xy)
    }

    /// `x^g = g^-1 x g`.
    #[inline]
    pub fn conjugate(&self, x: Element, g: Element) -> Element {
        self.mul(self.mul(self.inv(g), x), g)
    }

    #[inline]
    pub fn element_order(&self, x: Element) -> usize {
        self.element_order[x.index()] as usize
    }

    #[inline]
    pub fn commute(&self, x: Element, y: Element) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn pow(&self, x: Element, k: usize) -> Element {
        let k = k % self.element_order(x);
        let mut acc = Element::IDENTITY;
        let mut base = x;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.commute(a, b)))
    }

    /// Factor group by a normal subgroup. Cosets are numbered in increasing
    /// order of their minimal member, so the identity coset is 0.
    pub fn quotient(&self, normal: &SubgroupSet) -> Result<Quotient, GroupError> {
        if !crate::structure::is_normal(self, normal) {
            return Err(GroupError::NotNormal);
        }
        let n = self.order;
        let mut projection = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let members: Vec<Element> = normal.iter().collect();
        for x in 0..n {
            if projection[x] != u32::MAX {
                continue;
            }
            let coset = reps.len() as u32;
            reps.push(Element::new(x));
            for &h in &members {
                projection[self.mul(Element::new(x), h).index()] = coset;
            }
        }
        let q = reps.len();
        let mut table = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = projection[self.mul(a, b).index()];
            }
        }
        let gens = self
            .generators
            .iter()
            .map(|g| Element(projection[g.index()]))
            .collect();
        let label = format!("{} / N({})", self.label, normal.len());
        let group = Group::assemble(label, q, table, gens);
        Ok(Quotient {
            group,
            projection: projection.into_iter().map(Element).collect(),
            representatives: reps,
        })
    }

    /// The subgroup `h` as a group in its own right. Members keep their
    /// relative order, so the identity stays at index 0.
    pub fn subgroup_group(&self, h: &SubgroupSet) -> Embedding {
        let to_parent: Vec<Element> = h.iter().collect();
        let mut from_parent = vec![None; self.order];
        for (i, &x) in to_parent.iter().enumerate() {
            from_parent[x.index()] = Some(Element::new(i));
        }
        let m = to_parent.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in to_parent.iter().enumerate() {
            for (j, &b) in to_parent.iter().enumerate() {
                table[i * m + j] = from_parent[self.mul(a, b).index()]
                    .expect("subgroup is closed")
                    .0;
            }
        }
        let label = format!("subgroup of order {m} in {}", self.label);
        Embedding {
            group: Group::assemble(label, m, table, Vec::new()),
            to_parent,
            from_parent,
        }
    }
}

/// A factor group together with its projection map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    /// Coset index of every element of the parent group.
    pub projection: Vec<Element>,
    /// Minimal member of every coset.
    pub representatives: Vec<Element>,
}

impl Quotient {
    pub fn project(&self, x: Element) -> Element {
        self.projection[x.index()]
    }

    /// Pulls a subgroup of the factor group back to the parent.
    pub fn preimage(&self, sub: &SubgroupSet) -> SubgroupSet {
        let n = self.projection.len();
        let mut bits = fixedbitset::FixedBitSet::with_capacity(n);
        for (x, c) in self.projection.iter().enumerate() {
            if sub.contains(*c) {
                bits.insert(x);
            }
        }
        SubgroupSet::from_bits_unchecked(bits)
    }

    /// Image of a parent subgroup in the factor group.
    pub fn image(&self, sub: &SubgroupSet) -> SubgroupSet {
        let mut bits = fixedbitset::FixedBitSet::with_capacity(self.group.order());
        for x in sub.iter() {
            bits.insert(self.project(x).index());
        }
        SubgroupSet::from_bits_unchecked(bits)
    }
}

/// A subgroup materialized as a standalone group.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub group: Group,
    pub to_parent: Vec<Element>,
    pub from_parent: Vec<Option<Element>>,
}

impl Embedding {
    /// Restricts a parent subgroup contained in the embedded one.
    pub fn restrict(&self, sub: &SubgroupSet) -> Option<SubgroupSet> {
        let mut bits = fixedbitset::FixedBitSet::with_capacity(self.group.order());
        for x in sub.iter() {
            bits.insert(self.from_parent[x.index()]?.index());
        }
        Some(SubgroupSet::from_bits_unchecked(bits))
    }

    pub fn lift(&self, sub: &SubgroupSet) -> SubgroupSet {
        let mut bits = fixedbitset::FixedBitSet::with_capacity(self.from_parent.len());
        for x in sub.iter() {
            bits.insert(self.to_parent[x.index()].index());
        }
        SubgroupSet::from_bits_unchecked(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn rejects_non_group_tables() {
        let limits = Limits::default();
        // identity not at 0
        let err = Group::from_table("bad", 2, vec![1, 0, 0, 1], vec![], &limits);
        assert!(matches!(err, Err(GroupError::InvalidTable(_))));
        // latin square but not associative: order-5 loop
        let loop5: Vec<u32> = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        let err = Group::from_table("loop", 5, loop5, vec![], &limits);
        assert!(matches!(err, Err(GroupError::InvalidTable(m)) if m.contains("associativity")));
        let err = Group::from_table("empty", 0, vec![], vec![], &limits);
        assert!(err.is_err());
    }

    #[test]
    fn order_cap_is_enforced() {
        let limits = Limits::with_order_cap(3);
        let table: Vec<u32> = (0..4u32)
            .flat_map(|i| (0..4u32).map(move |j| (i + j) % 4))
            .collect();
        assert_eq!(
            Group::from_table("c4", 4, table, vec![], &limits),
            Err(GroupError::OrderCap { order: 4, cap: 3 })
        );
    }

    #[test]
    fn element_checks() {
        let g = build::cyclic(6).unwrap();
        assert!(g.element(5).is_ok());
        assert_eq!(
            g.element(6),
            Err(GroupError::OutOfRange { index: 6, order: 6 })
        );
        let x = Element::new(1);
        assert_eq!(g.pow(x, 6), Element::IDENTITY);
        assert_eq!(g.pow(x, 4), Element::new(4));
        assert_eq!(g.commutator(x, x), Element::IDENTITY);
    }

    #[test]
    fn s3_generators_have_a_three_cycle_commutator() {
        let g = build::symmetric(3).unwrap();
        let gens = g.generators();
        let c = g.commutator(gens[0], gens[1]);
        assert_eq!(g.element_order(c), 3);
    }

    #[test]
    fn quotient_by_trivial_is_identical() {
        let g = build::symmetric(4).unwrap();
        let q = g.quotient(&SubgroupSet::trivial(24)).unwrap();
        assert_eq!(q.group.table(), g.table());
        let whole = g.quotient(&SubgroupSet::whole(24)).unwrap();
        assert_eq!(whole.group.order(), 1);
    }

    #[test]
    fn quotient_requires_normality() {
        let g = build::symmetric(3).unwrap();
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let h = closure(&g, [t]);
        assert_eq!(g.quotient(&h).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn subgroup_group_keeps_identity_first() {
        let g = build::symmetric(4).unwrap();
        let a4 = crate::structure::derived_series(&g, &SubgroupSet::whole(24)).terms[1].clone();
        let emb = g.subgroup_group(&a4);
        assert_eq!(emb.group.order(), 12);
        assert_eq!(emb.to_parent[0], Element::IDENTITY);
        let back = emb.lift(&SubgroupSet::whole(12));
        assert_eq!(back, a4);
    }
}
