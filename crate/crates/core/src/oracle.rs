//! Slow, independent reference implementations used to cross-check the
//! main algorithms.

use std::collections::HashSet;

use crate::arith::is_power_of;
use crate::group::{Element, Group};
use crate::structure::{conjugate_subgroup, is_normal, normal_closure};
use crate::subgroup::{closure, cyclic_subgroup, join_subgroups, SubgroupSet};

/// Fitting subgroup as the closure of all `x` of prime-power order `p^k`
/// whose normal closure is a `p`-group.
pub fn fitting_by_normal_closures(g: &Group) -> SubgroupSet {
    let seeds: Vec<Element> = g
        .elements()
        .filter(|&x| {
            let o = g.element_order(x);
            if o == 1 {
                return false;
            }
            let p = crate::arith::factorize(o)[0].0;
            is_power_of(o, p) && is_power_of(normal_closure(g, [x]).len(), p)
        })
        .collect();
    closure(g, seeds)
}

/// Every subgroup, sorted by size then members.
pub fn all_subgroups(g: &Group) -> Vec<SubgroupSet> {
    let mut cyclics: Vec<SubgroupSet> = Vec::new();
    for x in g.elements() {
        let c = cyclic_subgroup(g, x);
        if !cyclics.contains(&c) {
            cyclics.push(c);
        }
    }
    let trivial = SubgroupSet::trivial(g.order());
    let mut seen: HashSet<SubgroupSet> = HashSet::from([trivial.clone()]);
    let mut stack = vec![trivial];
    while let Some(h) = stack.pop() {
        for c in &cyclics {
            if c.is_subset(&h) {
                continue;
            }
            let j = join_subgroups(g, &h, c);
            if seen.insert(j.clone()) {
                stack.push(j);
            }
        }
    }
    let mut out: Vec<SubgroupSet> = seen.into_iter().collect();
    out.sort();
    out
}

/// Normal subgroups by filtering the full subgroup lattice.
pub fn normal_subgroups_brute(g: &Group) -> Vec<SubgroupSet> {
    all_subgroups(g)
        .into_iter()
        .filter(|h| is_normal(g, h))
        .collect()
}

/// A Frobenius complement by definition: `1 < H < G` with `H ∩ H^x = 1`
/// for every `x` outside `H`.
pub fn frobenius_complement_brute(g: &Group) -> Option<SubgroupSet> {
    all_subgroups(g).into_iter().find(|h| {
        !h.is_trivial()
            && !h.is_whole()
            && g.elements()
                .filter(|&x| !h.contains(x))
                .all(|x| h.intersection(&conjugate_subgroup(g, h, x)).is_trivial())
    })
}

/// Upper central series terms by the element-wise definition
/// `Z_{i+1} = { x : [x, y] ∈ Z_i for all y }`.
pub fn hypercenter_brute(g: &Group) -> SubgroupSet {
    let n = g.order();
    let mut z = fixedbitset::FixedBitSet::with_capacity(n);
    z.insert(0);
    loop {
        let mut next = fixedbitset::FixedBitSet::with_capacity(n);
        for x in g.elements() {
            if g.elements().all(|y| z.contains(g.commutator(x, y).index())) {
                next.insert(x.index());
            }
        }
        if next == z {
            return SubgroupSet::from_bits_unchecked(z);
        }
        z = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::structure;

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&build::symmetric(3).unwrap()).len(), 6);
        assert_eq!(all_subgroups(&build::symmetric(4).unwrap()).len(), 30);
        assert_eq!(all_subgroups(&build::quaternion(2).unwrap()).len(), 6);
        assert_eq!(all_subgroups(&build::alternating(5).unwrap()).len(), 59);
    }

    #[test]
    fn normal_subgroups_agree() {
        for g in [
            build::symmetric(4).unwrap(),
            build::dihedral(6).unwrap(),
            build::quaternion(2).unwrap(),
            build::sl23().unwrap(),
        ] {
            let classes = structure::conjugacy_classes(&g);
            assert_eq!(
                structure::normal_subgroups(&g, &classes),
                normal_subgroups_brute(&g)
            );
        }
    }

    #[test]
    fn fitting_agrees() {
        for g in [
            build::symmetric(4).unwrap(),
            build::symmetric(3).unwrap(),
            build::sl23().unwrap(),
            build::alternating(5).unwrap(),
        ] {
            assert_eq!(structure::fitting(&g), fitting_by_normal_closures(&g));
        }
    }

    #[test]
    fn hypercenter_agrees() {
        let g = build::dihedral(6).unwrap();
        assert_eq!(hypercenter_brute(&g), structure::hypercenter(&g));
    }

    #[test]
    fn frobenius_complements() {
        assert_eq!(
            frobenius_complement_brute(&build::symmetric(3).unwrap())
                .unwrap()
                .len(),
            2
        );
        assert!(frobenius_complement_brute(&build::symmetric(4).unwrap()).is_none());
    }
}
