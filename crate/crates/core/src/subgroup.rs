//! Subgroups as bitsets over the element indices of a parent group.

use std::cmp::Ordering;
use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::GroupError;
use crate::group::{Element, Group};

/// A subset of a parent group's elements that is closed under the group
/// operation. The parent is not stored; every operation takes it explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    bits: FixedBitSet,
}

impl SubgroupSet {
    pub fn trivial(parent_order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(parent_order);
        bits.insert(0);
        SubgroupSet { bits }
    }

    pub fn whole(parent_order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(parent_order);
        bits.insert_range(..);
        SubgroupSet { bits }
    }

    /// Validates that `bits` is a subgroup of `g`.
    pub fn new(g: &Group, bits: FixedBitSet) -> Result<Self, GroupError> {
        if bits.len() != g.order() {
            return Err(GroupError::NotSubgroup(format!(
                "bitset length {} differs from group order {}",
                bits.len(),
                g.order()
            )));
        }
        if !bits.contains(0) {
            return Err(GroupError::NotSubgroup("missing the identity".into()));
        }
        let members: Vec<usize> = bits.ones().collect();
        for &a in &members {
            if !bits.contains(g.inv(Element::new(a)).index()) {
                return Err(GroupError::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &members {
                let p = g.mul(Element::new(a), Element::new(b));
                if !bits.contains(p.index()) {
                    return Err(GroupError::NotSubgroup(format!(
                        "product of {a} and {b} missing"
                    )));
                }
            }
        }
        Ok(SubgroupSet { bits })
    }

    pub fn from_bits_unchecked(bits: FixedBitSet) -> Self {
        SubgroupSet { bits }
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn into_bits(self) -> FixedBitSet {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn parent_order(&self) -> usize {
        self.bits.len()
    }

    pub fn is_whole(&self) -> bool {
        self.bits.is_full()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.bits.contains(x.index())
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.ones().map(Element::new)
    }

    pub fn members(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        SubgroupSet { bits }
    }
}

/// Ordered by size, then lexicographically by sorted member list.
impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.bits.ones().cmp(other.bits.ones()))
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The subgroup generated by `seed`, by worklist closure.
///
/// Seeds already inside the running closure are skipped, so the cost is
/// roughly `|result| * (number of independent seeds)`.
pub fn closure<I>(g: &Group, seed: I) -> SubgroupSet
where
    I: IntoIterator<Item = Element>,
{
    let mut bits = FixedBitSet::with_capacity(g.order());
    bits.insert(0);
    let mut gens: Vec<Element> = Vec::new();
    let mut members: Vec<Element> = vec![Element::IDENTITY];
    for s in seed {
        if bits.contains(s.index()) {
            continue;
        }
        gens.push(s);
        extend(g, &mut bits, &mut members, &gens);
    }
    SubgroupSet { bits }
}

/// The subgroup generated by an existing subgroup and extra elements.
pub fn join<I>(g: &Group, base: &SubgroupSet, extra: I) -> SubgroupSet
where
    I: IntoIterator<Item = Element>,
{
    let mut bits = base.bits.clone();
    let mut members: Vec<Element> = base.iter().collect();
    // The base is closed, so it contributes its own elements as generators
    // only when something new is added.
    let mut gens: Vec<Element> = Vec::new();
    let mut base_gens_added = false;
    for s in extra {
        if bits.contains(s.index()) {
            continue;
        }
        if !base_gens_added {
            gens.extend(small_generating_set(g, base));
            base_gens_added = true;
        }
        gens.push(s);
        extend(g, &mut bits, &mut members, &gens);
    }
    SubgroupSet { bits }
}

/// Closure of the union of two subgroups.
pub fn join_subgroups(g: &Group, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
    if b.is_subset(a) {
        return a.clone();
    }
    if a.is_subset(b) {
        return b.clone();
    }
    join(g, a, small_generating_set(g, b))
}

fn extend(g: &Group, bits: &mut FixedBitSet, members: &mut Vec<Element>, gens: &[Element]) {
    // Every current member times every generator; new products are queued.
    let mut queue: VecDeque<Element> = members.iter().copied().collect();
    while let Some(e) = queue.pop_front() {
        for &s in gens {
            let p = g.mul(e, s);
            if !bits.put(p.index()) {
                members.push(p);
                queue.push_back(p);
            }
        }
    }
}

/// A generating set for `h`, picked greedily in index order.
pub fn small_generating_set(g: &Group, h: &SubgroupSet) -> Vec<Element> {
    let mut gens = Vec::new();
    let mut bits = FixedBitSet::with_capacity(g.order());
    bits.insert(0);
    let mut members = vec![Element::IDENTITY];
    let target = h.len();
    for x in h.iter() {
        if members.len() == target {
            break;
        }
        if bits.contains(x.index()) {
            continue;
        }
        gens.push(x);
        extend(g, &mut bits, &mut members, &gens);
    }
    gens
}

/// `<x>` as a subgroup.
pub fn cyclic_subgroup(g: &Group, x: Element) -> SubgroupSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    let mut p = Element::IDENTITY;
    loop {
        bits.insert(p.index());
        p = g.mul(p, x);
        if p.is_identity() {
            break;
        }
    }
    SubgroupSet { bits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn closure_examples() {
        let s3 = build::symmetric(3).unwrap();
        assert_eq!(closure(&s3, []), SubgroupSet::trivial(6));
        let transpositions: Vec<Element> = s3
            .elements()
            .filter(|&x| s3.element_order(x) == 2)
            .collect();
        assert_eq!(closure(&s3, [transpositions[0]]).len(), 2);
        assert_eq!(
            closure(&s3, [transpositions[0], transpositions[1]]).len(),
            6
        );
        for x in s3.elements() {
            assert_eq!(closure(&s3, [x]).len(), s3.element_order(x));
            assert_eq!(closure(&s3, [x]), cyclic_subgroup(&s3, x));
        }
    }

    #[test]
    fn validation_rejects_non_subgroups() {
        let g = build::cyclic(4).unwrap();
        let mut bits = FixedBitSet::with_capacity(4);
        bits.insert(0);
        bits.insert(1);
        assert!(SubgroupSet::new(&g, bits).is_err());
        let mut bits = FixedBitSet::with_capacity(4);
        bits.insert(0);
        bits.insert(2);
        assert!(SubgroupSet::new(&g, bits).is_ok());
    }

    #[test]
    fn ordering_is_size_then_members() {
        let g = build::cyclic(6).unwrap();
        let a = cyclic_subgroup(&g, Element::new(2)); // {0,2,4}
        let b = cyclic_subgroup(&g, Element::new(3)); // {0,3}
        let t = SubgroupSet::trivial(6);
        let mut v = vec![a.clone(), SubgroupSet::whole(6), b.clone(), t.clone()];
        v.sort();
        assert_eq!(v, vec![t, b, a, SubgroupSet::whole(6)]);
    }

    #[test]
    fn join_matches_closure_of_union() {
        let g = build::symmetric(4).unwrap();
        for x in g.elements().step_by(3) {
            for y in g.elements().step_by(5) {
                let a = cyclic_subgroup(&g, x);
                let b = cyclic_subgroup(&g, y);
                assert_eq!(join_subgroups(&g, &a, &b), closure(&g, [x, y]));
            }
        }
    }
}
