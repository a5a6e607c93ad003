//! Structural subgroups: centralizers, central and derived series,
//! hypercenter, Sylow subgroups, p-cores, the Fitting subgroup, conjugacy
//! classes and the normal subgroups.

use std::collections::{BTreeMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_power_of, is_prime, mod_inverse, p_part, prime_divisors};
use crate::error::GroupError;
use crate::group::{Element, Group};
use crate::subgroup::{closure, cyclic_subgroup, join, join_subgroups, SubgroupSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    UpperCentral,
    LowerCentral,
    Derived,
}

/// A central or derived series. When `stabilized` the last two terms are
/// equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    pub terms: Vec<SubgroupSet>,
    pub stabilized: bool,
}

impl SeriesResult {
    pub fn last(&self) -> &SubgroupSet {
        self.terms.last().expect("series has at least one term")
    }

    /// Number of strict steps before the series stabilized.
    pub fn strict_steps(&self) -> usize {
        self.terms.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

pub fn centralizer(g: &Group, x: Element) -> SubgroupSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for y in g.elements() {
        if g.commute(x, y) {
            bits.insert(y.index());
        }
    }
    SubgroupSet::from_bits_unchecked(bits)
}

/// Centralizer of a whole subset.
pub fn centralizer_of(g: &Group, h: &SubgroupSet) -> SubgroupSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for y in g.elements() {
        if h.iter().all(|x| g.commute(x, y)) {
            bits.insert(y.index());
        }
    }
    SubgroupSet::from_bits_unchecked(bits)
}

pub fn center(g: &Group) -> SubgroupSet {
    let gens = g.generators();
    let mut bits = FixedBitSet::with_capacity(g.order());
    for y in g.elements() {
        if gens.iter().all(|&s| g.commute(s, y)) {
            bits.insert(y.index());
        }
    }
    SubgroupSet::from_bits_unchecked(bits)
}

/// `Z_0 = 1`, `Z_{i+1}` = preimage of the center of `G / Z_i`, built through
/// explicit quotient groups.
pub fn upper_central_series(g: &Group) -> SeriesResult {
    let mut terms = vec![SubgroupSet::trivial(g.order())];
    loop {
        let current = terms.last().expect("nonempty");
        let q = g.quotient(current).expect("upper central terms are normal");
        let next = q.preimage(&center(&q.group));
        let done = &next == current;
        terms.push(next);
        if done {
            return SeriesResult {
                kind: SeriesKind::UpperCentral,
                terms,
                stabilized: true,
            };
        }
    }
}

/// Same series via `Z_{i+1} = { x : [x, g] in Z_i for all g }`; used to
/// cross-check the quotient construction.
pub fn upper_central_series_by_commutators(g: &Group) -> SeriesResult {
    let mut terms = vec![SubgroupSet::trivial(g.order())];
    loop {
        let current = terms.last().expect("nonempty");
        let mut bits = FixedBitSet::with_capacity(g.order());
        for x in g.elements() {
            if g.generators()
                .iter()
                .all(|&s| current.contains(g.commutator(x, s)))
            {
                bits.insert(x.index());
            }
        }
        let next = SubgroupSet::from_bits_unchecked(bits);
        let done = &next == current;
        terms.push(next);
        if done {
            return SeriesResult {
                kind: SeriesKind::UpperCentral,
                terms,
                stabilized: true,
            };
        }
    }
}

pub fn hypercenter(g: &Group) -> SubgroupSet {
    upper_central_series(g).last().clone()
}

/// `[A, B]`, the subgroup generated by all commutators `[a, b]`.
pub fn commutator_subgroup(g: &Group, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    let bm: Vec<Element> = b.iter().collect();
    for x in a.iter() {
        for &y in &bm {
            bits.insert(g.commutator(x, y).index());
        }
    }
    closure(g, bits.ones().map(Element::new))
}

/// `gamma_1 = H`, `gamma_{i+1} = [gamma_i, H]`.
pub fn lower_central_series(g: &Group, h: &SubgroupSet) -> SeriesResult {
    let mut terms = vec![h.clone()];
    loop {
        let current = terms.last().expect("nonempty");
        let next = commutator_subgroup(g, current, h);
        let done = &next == current;
        terms.push(next);
        if done {
            return SeriesResult {
                kind: SeriesKind::LowerCentral,
                terms,
                stabilized: true,
            };
        }
    }
}

fn is_abelian_subgroup(g: &Group, h: &SubgroupSet) -> bool {
    let gens = crate::subgroup::small_generating_set(g, h);
    gens.iter().all(|&a| gens.iter().all(|&b| g.commute(a, b)))
}

pub fn is_nilpotent(g: &Group, h: &SubgroupSet) -> bool {
    if is_abelian_subgroup(g, h) {
        return true;
    }
    lower_central_series(g, h).last().is_trivial()
}

/// Nilpotency class, or `None` for a non-nilpotent subgroup. The trivial
/// group has class 0.
pub fn nilpotency_class(g: &Group, h: &SubgroupSet) -> Option<usize> {
    let series = lower_central_series(g, h);
    series.last().is_trivial().then(|| series.strict_steps())
}

pub fn is_nilpotent_group(g: &Group) -> bool {
    is_nilpotent(g, &SubgroupSet::whole(g.order()))
}

pub fn derived_series(g: &Group, h: &SubgroupSet) -> SeriesResult {
    let mut terms = vec![h.clone()];
    loop {
        let current = terms.last().expect("nonempty");
        let next = commutator_subgroup(g, current, current);
        let done = &next == current;
        terms.push(next);
        if done {
            return SeriesResult {
                kind: SeriesKind::Derived,
                terms,
                stabilized: true,
            };
        }
    }
}

pub fn is_solvable(g: &Group) -> bool {
    derived_series(g, &SubgroupSet::whole(g.order()))
        .last()
        .is_trivial()
}

pub fn is_normal(g: &Group, h: &SubgroupSet) -> bool {
    let members: Vec<Element> = h.iter().collect();
    g.generators()
        .iter()
        .all(|&s| members.iter().all(|&x| h.contains(g.conjugate(x, s))))
}

pub fn normalizer(g: &Group, h: &SubgroupSet) -> SubgroupSet {
    let members: Vec<Element> = h.iter().collect();
    let mut bits = FixedBitSet::with_capacity(g.order());
    for y in g.elements() {
        if members.iter().all(|&x| h.contains(g.conjugate(x, y))) {
            bits.insert(y.index());
        }
    }
    SubgroupSet::from_bits_unchecked(bits)
}

/// Smallest normal subgroup containing `seed`.
pub fn normal_closure<I>(g: &Group, seed: I) -> SubgroupSet
where
    I: IntoIterator<Item = Element>,
{
    let mut bits = FixedBitSet::with_capacity(g.order());
    for s in seed {
        for y in g.elements() {
            bits.insert(g.conjugate(s, y).index());
        }
    }
    closure(g, bits.ones().map(Element::new))
}

/// The conjugate subgroup `H^y`.
pub fn conjugate_subgroup(g: &Group, h: &SubgroupSet, y: Element) -> SubgroupSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for x in h.iter() {
        bits.insert(g.conjugate(x, y).index());
    }
    SubgroupSet::from_bits_unchecked(bits)
}

/// Primes dividing `|G|`, increasing.
pub fn pi(g: &Group) -> Vec<usize> {
    prime_divisors(g.order())
}

pub fn is_p_element(g: &Group, x: Element, p: usize) -> bool {
    is_power_of(g.element_order(x), p)
}

/// A Sylow `p`-subgroup grown from the first nontrivial `p`-element.
pub fn sylow_subgroup(g: &Group, p: usize) -> Result<SubgroupSet, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let start = g
        .elements()
        .find(|&x| !x.is_identity() && is_p_element(g, x, p))
        .unwrap_or(Element::IDENTITY);
    sylow_subgroup_from(g, p, start)
}

/// A Sylow `p`-subgroup containing the `p`-element `start`.
///
/// Grows `P = <start>` by adjoining a `p`-element of `N_G(P) \ P` until `|P|`
/// is the full `p`-part of `|G|`. Such an element exists whenever `P` is not
/// yet Sylow, because `p` then divides `|N_G(P) : P|`.
pub fn sylow_subgroup_from(g: &Group, p: usize, start: Element) -> Result<SubgroupSet, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if !is_p_element(g, start, p) {
        return Err(GroupError::InvalidParameter(format!(
            "element {start} is not a {p}-element"
        )));
    }
    let target = p_part(g.order(), p);
    let mut sylow = cyclic_subgroup(g, start);
    while sylow.len() < target {
        let n = normalizer(g, &sylow);
        let x = n
            .iter()
            .find(|&x| !sylow.contains(x) && is_p_element(g, x, p))
            .expect("p divides |N(P):P| for a non-Sylow p-subgroup");
        sylow = join(g, &sylow, [x]);
    }
    Ok(sylow)
}

/// `O_p(G)`: the intersection of all conjugates of a Sylow `p`-subgroup.
pub fn p_core(g: &Group, p: usize) -> Result<SubgroupSet, GroupError> {
    let sylow = sylow_subgroup(g, p)?;
    let mut core = sylow.clone();
    let mut seen: HashSet<SubgroupSet> = HashSet::new();
    for y in g.elements() {
        if core.is_trivial() {
            break;
        }
        let c = conjugate_subgroup(g, &sylow, y);
        if seen.insert(c.clone()) {
            core = core.intersection(&c);
        }
    }
    Ok(core)
}

/// `Fit(G)`, generated by the `p`-cores for `p` dividing `|G|`.
pub fn fitting(g: &Group) -> SubgroupSet {
    let mut fit = SubgroupSet::trivial(g.order());
    for p in pi(g) {
        let core = p_core(g, p).expect("p is prime");
        fit = join_subgroups(g, &fit, &core);
    }
    fit
}

/// Conjugacy classes with a conjugating element for every member.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    /// Classes sorted by minimal member; members ascending.
    pub classes: Vec<Vec<Element>>,
    pub class_of: Vec<usize>,
    /// `conjugator[y]` is some `c` with `rep^c = y`, `rep` the class minimum.
    pub conjugator: Vec<Element>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, class: usize) -> Element {
        self.classes[class][0]
    }

    pub fn representatives(&self) -> impl Iterator<Item = Element> + '_ {
        self.classes.iter().map(|c| c[0])
    }

    pub fn class_of(&self, x: Element) -> &[Element] {
        &self.classes[self.class_of[x.index()]]
    }
}

pub fn conjugacy_classes(g: &Group) -> ConjugacyClasses {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut conjugator = vec![Element::IDENTITY; n];
    let mut classes = Vec::new();
    for x in g.elements() {
        if class_of[x.index()] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[x.index()] = id;
        let mut members = vec![x];
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &s in g.generators() {
                let z = g.conjugate(y, s);
                if class_of[z.index()] == usize::MAX {
                    class_of[z.index()] = id;
                    conjugator[z.index()] = g.mul(conjugator[y.index()], s);
                    members.push(z);
                    queue.push_back(z);
                }
            }
        }
        members.sort();
        classes.push(members);
    }
    ConjugacyClasses {
        classes,
        class_of,
        conjugator,
    }
}

/// All normal subgroups, sorted by size then members.
///
/// Every normal subgroup is the join of the subgroups generated by the
/// conjugacy classes it contains, so joins of class closures starting from
/// the trivial subgroup reach each one.
pub fn normal_subgroups(g: &Group, classes: &ConjugacyClasses) -> Vec<SubgroupSet> {
    let mut atoms: Vec<SubgroupSet> = Vec::new();
    for class in &classes.classes {
        if class[0].is_identity() {
            continue;
        }
        let a = closure(g, class.iter().copied());
        if !atoms.contains(&a) {
            atoms.push(a);
        }
    }
    let trivial = SubgroupSet::trivial(g.order());
    let mut seen: HashSet<SubgroupSet> = HashSet::from([trivial.clone()]);
    let mut found = vec![trivial.clone()];
    let mut queue = VecDeque::from([trivial]);
    while let Some(n) = queue.pop_front() {
        for a in &atoms {
            if a.is_subset(&n) {
                continue;
            }
            let j = join_subgroups(g, &n, a);
            if seen.insert(j.clone()) {
                found.push(j.clone());
                queue.push_back(j);
            }
        }
    }
    found.sort();
    found
}

/// Components `x_p = x^k`, with `k = 1 mod p^a` and `k = 0 mod o(x)/p^a`,
/// for each prime `p` dividing `o(x)`.
pub fn primary_decomposition(g: &Group, x: Element) -> BTreeMap<usize, Element> {
    let o = g.element_order(x);
    let mut out = BTreeMap::new();
    for (p, a) in factorize(o) {
        let pa = p.pow(a);
        let m = o / pa;
        let k = m * mod_inverse(m % pa, pa).expect("coprime parts");
        out.insert(p, g.pow(x, k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    fn transposition(g: &Group) -> Element {
        g.elements().find(|&x| g.element_order(x) == 2).unwrap()
    }

    #[test]
    fn centralizers() {
        let s3 = build::symmetric(3).unwrap();
        assert!(centralizer(&s3, Element::IDENTITY).is_whole());
        assert_eq!(centralizer(&s3, transposition(&s3)).len(), 2);
        let c6 = build::cyclic(6).unwrap();
        assert!(c6.elements().all(|x| centralizer(&c6, x).is_whole()));
    }

    #[test]
    fn centers_and_hypercenters() {
        let q8 = build::quaternion(2).unwrap();
        assert!(hypercenter(&q8).is_whole());
        let s3 = build::symmetric(3).unwrap();
        assert!(center(&s3).is_trivial());
        assert!(hypercenter(&s3).is_trivial());
        let d12 = build::dihedral(6).unwrap();
        assert_eq!(center(&d12).len(), 2);
        assert_eq!(hypercenter(&d12).len(), 2);
        // brute-force center of D12
        let brute = d12
            .elements()
            .filter(|&z| d12.elements().all(|y| d12.commute(z, y)))
            .count();
        assert_eq!(brute, 2);
    }

    #[test]
    fn upper_central_routes_agree() {
        let groups = [
            build::dihedral(8).unwrap(),
            build::quaternion(4).unwrap(),
            build::symmetric(4).unwrap(),
            build::sl23().unwrap(),
            build::direct_product(&build::dihedral(4).unwrap(), &build::symmetric(3).unwrap())
                .unwrap(),
        ];
        for g in groups {
            assert_eq!(
                upper_central_series(&g).terms,
                upper_central_series_by_commutators(&g).terms,
                "{}",
                g.label()
            );
        }
    }

    #[test]
    fn lower_central_examples() {
        let c12 = build::cyclic(12).unwrap();
        assert!(nilpotency_class(&c12, &SubgroupSet::whole(12)).unwrap() <= 1);
        let s3 = build::symmetric(3).unwrap();
        let series = lower_central_series(&s3, &SubgroupSet::whole(6));
        assert_eq!(series.last().len(), 3);
        assert!(!is_nilpotent_group(&s3));
        assert_eq!(nilpotency_class(&s3, &SubgroupSet::whole(6)), None);
        let q8 = build::quaternion(2).unwrap();
        assert_eq!(nilpotency_class(&q8, &SubgroupSet::whole(8)), Some(2));
        let d16 = build::dihedral(8).unwrap();
        assert_eq!(nilpotency_class(&d16, &SubgroupSet::whole(16)), Some(3));
    }

    #[test]
    fn derived_examples() {
        let c5 = build::cyclic(5).unwrap();
        let s = derived_series(&c5, &SubgroupSet::whole(5));
        assert_eq!(s.strict_steps(), 1);
        let s4 = build::symmetric(4).unwrap();
        let s = derived_series(&s4, &SubgroupSet::whole(24));
        let sizes: Vec<usize> = s.terms.iter().map(|t| t.len()).collect();
        assert_eq!(sizes, vec![24, 12, 4, 1, 1]);
        assert!(is_solvable(&s4));
        let a5 = build::alternating(5).unwrap();
        assert!(!is_solvable(&a5));
        assert!(derived_series(&a5, &SubgroupSet::whole(60))
            .last()
            .is_whole());
    }

    #[test]
    fn sylow_and_fitting() {
        let s4 = build::symmetric(4).unwrap();
        assert_eq!(sylow_subgroup(&s4, 2).unwrap().len(), 8);
        assert_eq!(sylow_subgroup(&s4, 3).unwrap().len(), 3);
        assert_eq!(sylow_subgroup(&s4, 5).unwrap().len(), 1);
        assert_eq!(sylow_subgroup(&s4, 4), Err(GroupError::NotPrime(4)));
        assert_eq!(p_core(&s4, 2).unwrap().len(), 4);
        assert!(p_core(&s4, 3).unwrap().is_trivial());
        assert_eq!(fitting(&s4).len(), 4);
        let s3 = build::symmetric(3).unwrap();
        assert_eq!(fitting(&s3).len(), 3);
        let q8 = build::quaternion(2).unwrap();
        assert!(fitting(&q8).is_whole());
        let a5 = build::alternating(5).unwrap();
        assert!(fitting(&a5).is_trivial());
    }

    #[test]
    fn sylow_from_every_start_contains_core() {
        let g = build::direct_product(&build::symmetric(4).unwrap(), &build::cyclic(3).unwrap())
            .unwrap();
        for p in [2, 3] {
            let core = p_core(&g, p).unwrap();
            for x in g.elements().filter(|&x| is_p_element(&g, x, p)) {
                let s = sylow_subgroup_from(&g, p, x).unwrap();
                assert_eq!(s.len(), p_part(g.order(), p));
                assert!(s.contains(x));
                assert!(core.is_subset(&s));
            }
        }
    }

    #[test]
    fn classes_and_normal_subgroups() {
        let s3 = build::symmetric(3).unwrap();
        let cc = conjugacy_classes(&s3);
        assert_eq!(cc.len(), 3);
        for y in s3.elements() {
            let rep = cc.class_of(y)[0];
            assert_eq!(s3.conjugate(rep, cc.conjugator[y.index()]), y);
        }
        let sizes: Vec<usize> = normal_subgroups(&s3, &cc).iter().map(|n| n.len()).collect();
        assert_eq!(sizes, vec![1, 3, 6]);

        let s4 = build::symmetric(4).unwrap();
        let sizes: Vec<usize> = normal_subgroups(&s4, &conjugacy_classes(&s4))
            .iter()
            .map(|n| n.len())
            .collect();
        assert_eq!(sizes, vec![1, 4, 12, 24]);

        let c12 = build::cyclic(12).unwrap();
        let cc = conjugacy_classes(&c12);
        assert_eq!(cc.len(), 12);
        // divisors of 12
        assert_eq!(normal_subgroups(&c12, &cc).len(), 6);
    }

    #[test]
    fn primary_decomposition_examples() {
        let c15 = build::cyclic(15).unwrap();
        let x = Element::new(1);
        let parts = primary_decomposition(&c15, x);
        let (x3, x5) = (parts[&3], parts[&5]);
        assert_eq!(c15.element_order(x3), 3);
        assert_eq!(c15.element_order(x5), 5);
        assert_eq!(c15.mul(x3, x5), x);

        let c6 = build::cyclic(6).unwrap();
        let parts = primary_decomposition(&c6, Element::new(1));
        assert_eq!(parts[&2], c6.pow(Element::new(1), 3));
        assert_eq!(parts[&3], c6.pow(Element::new(1), 4));

        let c8 = build::cyclic(8).unwrap();
        let parts = primary_decomposition(&c8, Element::new(3));
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&2], Element::new(3));
    }

    #[test]
    fn normality_helpers() {
        let s3 = build::symmetric(3).unwrap();
        let whole = SubgroupSet::whole(6);
        assert!(is_normal(&s3, &whole));
        assert_eq!(normalizer(&s3, &whole), whole);
        let t = cyclic_subgroup(&s3, transposition(&s3));
        assert!(!is_normal(&s3, &t));
        assert_eq!(normalizer(&s3, &t), t);

        let s4 = build::symmetric(4).unwrap();
        let three_cycle = s4.elements().find(|&x| s4.element_order(x) == 3).unwrap();
        assert_eq!(normal_closure(&s4, [three_cycle]).len(), 12);
        assert_eq!(pi(&s4), vec![2, 3]);
    }

    #[test]
    fn semidirect_cyclic_conjugation_rule() {
        // x^y = x^e
        let g = build::semidirect_cyclic(15, 4, 8).unwrap();
        let (x, y) = (Element::new(4), Element::new(1));
        assert_eq!(g.element_order(x), 15);
        assert_eq!(g.element_order(y), 4);
        assert_eq!(g.conjugate(x, y), g.pow(x, 8));
    }
}
