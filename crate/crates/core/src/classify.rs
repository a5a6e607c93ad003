//! Group-class predicates: Frobenius and 2-Frobenius recognition, A- and
//! AC-groups, 𝔫-groups and the nilpotent-neighborhood property.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::arith::{gcd, is_prime_power};
use crate::group::{Element, Group};
use crate::structure;
use crate::subgroup::{join, small_generating_set, SubgroupSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusWitness {
    pub kernel: SubgroupSet,
    pub complement: SubgroupSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFrobeniusWitness {
    pub k: SubgroupSet,
    pub l: SubgroupSet,
}

/// Structural flags reported for every group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub nilpotent: bool,
    pub solvable: bool,
    pub a_group: bool,
    pub ac_group: bool,
    pub n_group: bool,
    pub frobenius: bool,
    pub two_frobenius: bool,
    pub nil_nbhd_property: bool,
}

pub fn flags(a: &Analysis) -> Flags {
    Flags {
        nilpotent: a.is_nilpotent(),
        solvable: a.is_solvable(),
        a_group: is_a_group(a.group()),
        ac_group: is_ac_group(a),
        n_group: is_n_group(a),
        frobenius: a.frobenius().is_some(),
        two_frobenius: a.two_frobenius().is_some(),
        nil_nbhd_property: has_nilpotent_neighborhood_property(a),
    }
}

pub fn is_abelian_subgroup(g: &Group, h: &SubgroupSet) -> bool {
    let gens = small_generating_set(g, h);
    gens.iter()
        .enumerate()
        .all(|(i, &a)| gens[i + 1..].iter().all(|&b| g.commute(a, b)))
}

/// True when `k` is a Frobenius kernel of `g`: normal, proper, nontrivial,
/// and containing the centralizer of each of its nontrivial elements.
/// Normality is assumed.
pub fn is_frobenius_kernel(g: &Group, k: &SubgroupSet) -> bool {
    if k.is_trivial() || k.is_whole() {
        return false;
    }
    let outside: Vec<Element> = g.elements().filter(|&y| !k.contains(y)).collect();
    k.iter()
        .filter(|x| !x.is_identity())
        .all(|x| outside.iter().all(|&y| !g.commute(x, y)))
}

/// A complement to the normal subgroup `k` of coprime index, grown greedily
/// from elements of order coprime to `|k|`.
pub fn find_complement(g: &Group, k: &SubgroupSet) -> Option<SubgroupSet> {
    let kn = k.len();
    let target = g.order() / kn;
    if gcd(kn, target) != 1 {
        return None;
    }
    let mut h = SubgroupSet::trivial(g.order());
    for x in g.elements() {
        if h.len() == target {
            break;
        }
        if h.contains(x) || gcd(g.element_order(x), kn) != 1 {
            continue;
        }
        let grown = join(g, &h, [x]);
        if gcd(grown.len(), kn) == 1 {
            h = grown;
        }
    }
    (h.len() == target).then_some(h)
}

/// Frobenius recognition by scanning normal subgroups for a kernel.
pub fn frobenius_from_normals(g: &Group, normals: &[SubgroupSet]) -> Option<FrobeniusWitness> {
    let kernel = normals.iter().find(|k| is_frobenius_kernel(g, k))?;
    let complement = find_complement(g, kernel)?;
    Some(FrobeniusWitness {
        kernel: kernel.clone(),
        complement,
    })
}

pub fn is_frobenius(g: &Group) -> Option<FrobeniusWitness> {
    frobenius_from_normals(
        g,
        &structure::normal_subgroups(g, &structure::conjugacy_classes(g)),
    )
}

/// Whether normal subgroups `k < l` of `g` form a 2-Frobenius pair.
pub fn is_two_frobenius_pair(g: &Group, k: &SubgroupSet, l: &SubgroupSet) -> bool {
    if k.is_trivial() || l.is_whole() || k.len() == l.len() || !k.is_subset(l) {
        return false;
    }
    let emb = g.subgroup_group(l);
    let k_in_l = emb.restrict(k).expect("k lies in l");
    if !is_frobenius_kernel(&emb.group, &k_in_l) {
        return false;
    }
    let q = g.quotient(k).expect("k is normal");
    is_frobenius_kernel(&q.group, &q.image(l))
}

/// 2-Frobenius recognition with `K = Fit(G)` and `L/K = Fit(G/K)`.
pub fn two_frobenius_fast(g: &Group, fit: &SubgroupSet) -> Option<TwoFrobeniusWitness> {
    if fit.is_trivial() || fit.is_whole() {
        return None;
    }
    let q = g.quotient(fit).expect("Fitting subgroup is normal");
    let l = q.preimage(&structure::fitting(&q.group));
    is_two_frobenius_pair(g, fit, &l).then(|| TwoFrobeniusWitness { k: fit.clone(), l })
}

/// 2-Frobenius recognition by scanning all pairs of normal subgroups.
pub fn two_frobenius_scan(g: &Group, normals: &[SubgroupSet]) -> Option<TwoFrobeniusWitness> {
    for k in normals {
        for l in normals {
            if is_two_frobenius_pair(g, k, l) {
                return Some(TwoFrobeniusWitness {
                    k: k.clone(),
                    l: l.clone(),
                });
            }
        }
    }
    None
}

/// All Sylow subgroups abelian.
pub fn is_a_group(g: &Group) -> bool {
    structure::pi(g).into_iter().all(|p| {
        let s = structure::sylow_subgroup(g, p).expect("p divides |G|");
        is_abelian_subgroup(g, &s)
    })
}

/// Every nontrivial element has an abelian centralizer.
pub fn is_ac_group(a: &Analysis) -> bool {
    let g = a.group();
    a.classes()
        .representatives()
        .filter(|x| !x.is_identity())
        .all(|x| is_abelian_subgroup(g, &structure::centralizer(g, x)))
}

/// Whether a set of elements is closed under multiplication.
pub fn is_closed_set(g: &Group, s: &FixedBitSet) -> bool {
    let members: Vec<usize> = s.ones().collect();
    members.iter().all(|&a| {
        members
            .iter()
            .all(|&b| s.contains(g.mul(Element::new(a), Element::new(b)).index()))
    })
}

/// Whether `Nil_G(x)` is a subgroup.
pub fn nil_closed(a: &Analysis, x: Element) -> bool {
    is_closed_set(a.group(), a.nil(x))
}

/// 𝔫-group test on prime-power-order class representatives.
pub fn is_n_group(a: &Analysis) -> bool {
    let g = a.group();
    a.classes()
        .representatives()
        .filter(|&x| x.is_identity() || is_prime_power(g.element_order(x)))
        .all(|x| nil_closed(a, x))
}

/// 𝔫-group test on every element.
pub fn is_n_group_unreduced(a: &Analysis) -> bool {
    a.group().elements().all(|x| nil_closed(a, x))
}

/// `Nil_G(x)` is a nilpotent subgroup for every `x != 1`.
pub fn has_nilpotent_neighborhood_property(a: &Analysis) -> bool {
    let g = a.group();
    a.classes()
        .representatives()
        .filter(|x| !x.is_identity())
        .all(|x| {
            let row = a.nil(x);
            is_closed_set(g, row)
                && structure::is_nilpotent(g, &SubgroupSet::from_bits_unchecked(row.clone()))
        })
}

pub fn is_cyclic_subgroup(g: &Group, h: &SubgroupSet) -> bool {
    h.iter().any(|x| g.element_order(x) == h.len())
}

/// A factorization `G = N A` with `N` cyclic normal, `A` abelian and
/// `N ∩ A = 1`, found by searching abelian subgroups that avoid each cyclic
/// normal subgroup.
pub fn cyclic_by_abelian_factorization(a: &Analysis) -> Option<(SubgroupSet, SubgroupSet)> {
    let g = a.group();
    for n in a.normal_subgroups() {
        if !is_cyclic_subgroup(g, n) {
            continue;
        }
        let target = g.order() / n.len();
        let mut seen = HashSet::new();
        let start = SubgroupSet::trivial(g.order());
        if let Some(c) = abelian_complement(g, n, target, start, &mut seen) {
            return Some((n.clone(), c));
        }
    }
    None
}

fn abelian_complement(
    g: &Group,
    n: &SubgroupSet,
    target: usize,
    current: SubgroupSet,
    seen: &mut HashSet<SubgroupSet>,
) -> Option<SubgroupSet> {
    if current.len() == target {
        return Some(current);
    }
    let gens = small_generating_set(g, &current);
    for x in g.elements() {
        if current.contains(x) || n.contains(x) || !gens.iter().all(|&s| g.commute(s, x)) {
            continue;
        }
        let next = join(g, &current, [x]);
        if !target.is_multiple_of(next.len()) || !next.intersection(n).is_trivial() {
            continue;
        }
        if seen.insert(next.clone()) {
            if let Some(found) = abelian_complement(g, n, target, next, seen) {
                return Some(found);
            }
        }
    }
    None
}
