use fixedbitset::FixedBitSet;

use super::{CheckContext, Outcome};
use crate::analysis::Analysis;
use crate::arith::{gcd, is_prime};
use crate::classify;
use crate::graphs::{GraphKind, GroupGraph};
use crate::group::Element;
use crate::oracle;
use crate::spec::SpecKind;
use crate::structure;
use crate::subgroup::SubgroupSet;

/// A named statement evaluated on one group.
pub struct Check {
    pub name: &'static str,
    pub statement: &'static str,
    pub run: fn(&CheckContext) -> Outcome,
}

/// Every check, in report order.
pub const CHECKS: &[Check] = &[
    Check {
        name: "nil_prime_component_intersection",
        statement: "Nil(x) is the intersection of Nil(x_p) over the primary components of x",
        run: nil_prime_component_intersection,
    },
    Check {
        name: "n_group_prime_power_reduction",
        statement: "n-group status agrees when tested on prime-power-order elements only",
        run: n_group_prime_power_reduction,
    },
    Check {
        name: "a_group_nil_is_centralizer",
        statement: "A-group iff Nil(x) = C(x) for every prime-power-order x",
        run: a_group_nil_is_centralizer,
    },
    Check {
        name: "n_group_direct_product",
        statement: "Nil over a direct product splits factorwise; products of n-groups are n-groups",
        run: n_group_direct_product,
    },
    Check {
        name: "frobenius_n_complement",
        statement: "a Frobenius group with an n-group complement is an n-group",
        run: frobenius_n_complement,
    },
    Check {
        name: "clique_neighborhoods_iff_frobenius",
        statement: "solvable centerless: every Nil(x), x != 1, is a nilpotent subgroup iff Frobenius with nilpotent complement",
        run: clique_neighborhoods_iff_frobenius,
    },
    Check {
        name: "hypercenter_adjacency_lift",
        statement: "outside the hypercenter, adjacency of distinct cosets matches adjacency in G/Z_inf",
        run: hypercenter_adjacency_lift,
    },
    Check {
        name: "quotient_component_correspondence",
        statement: "components of the reduced graph of G and of G/Z_inf correspond, preserving diameters above 1",
        run: quotient_component_correspondence,
    },
    Check {
        name: "frobenius_kernel_component",
        statement: "Frobenius or 2-Frobenius implies disconnected; a Frobenius kernel minus 1 is a component",
        run: frobenius_kernel_component,
    },
    Check {
        name: "commuting_graph_connectivity",
        statement: "centerless: reduced and commuting graphs connect together, commuting diameter at most twice; solvable: disconnected iff Frobenius or 2-Frobenius",
        run: commuting_graph_connectivity,
    },
    Check {
        name: "disconnected_iff_frobenius_quotient",
        statement: "non-nilpotent solvable: disconnected iff G/Z_inf is Frobenius or 2-Frobenius",
        run: disconnected_iff_frobenius_quotient,
    },
    Check {
        name: "commuting_graph_equality_iff_a_group",
        statement: "reduced graph equals commuting graph iff A-group",
        run: commuting_graph_equality_iff_a_group,
    },
    Check {
        name: "diameter_bounds",
        statement: "non-nilpotent: components at most 10; solvable connected at most 8; solvable disconnected: one component at most 5, the rest at most 2",
        run: diameter_bounds,
    },
    Check {
        name: "fitting_component",
        statement: "solvable centerless: Fit minus 1 in one component, elements sharing a prime with |Fit| within 2 of it, diameter at most 5 when pi(Fit) = pi(G)",
        run: fitting_component,
    },
    Check {
        name: "prime_index_fitting_bound",
        statement: "non-nilpotent, |G:Fit| prime, connected: diameter at most 3",
        run: prime_index_fitting_bound,
    },
    Check {
        name: "ac_group_disconnected",
        statement: "solvable non-nilpotent AC-group: disconnected",
        run: ac_group_disconnected,
    },
    Check {
        name: "a_group_bound",
        statement: "non-nilpotent A-group, connected: diameter at most 6",
        run: a_group_bound,
    },
    Check {
        name: "cyclic_by_abelian_bound",
        statement: "non-nilpotent cyclic-by-abelian with Z = Z_inf, connected: diameter at most 4",
        run: cyclic_by_abelian_bound,
    },
    Check {
        name: "cyclic_fitting_bound",
        statement: "solvable centerless with cyclic Fit, connected: diameter at most 5",
        run: cyclic_fitting_bound,
    },
    Check {
        name: "two_prime_bound",
        statement: "non-nilpotent centerless {p,q}-group, connected: diameter at most 6",
        run: two_prime_bound,
    },
    Check {
        name: "universal_vertices_hypercenter",
        statement: "universal vertices of the full nilpotent graph form the hypercenter",
        run: universal_vertices_hypercenter,
    },
    Check {
        name: "commuting_subgraph",
        statement: "Z = Z_inf: the commuting graph is a spanning subgraph of the reduced graph",
        run: commuting_subgraph,
    },
    Check {
        name: "nilpotency_agreement",
        statement: "hypercenter is G iff the lower central series reaches 1",
        run: nilpotency_agreement,
    },
    Check {
        name: "fitting_oracle",
        statement: "Fit via p-cores equals the closure of p-elements with p-group normal closure",
        run: fitting_oracle,
    },
    Check {
        name: "normal_subgroups_oracle",
        statement: "class-join normal subgroups equal the normal members of the full lattice (|G| <= 60)",
        run: normal_subgroups_oracle,
    },
    Check {
        name: "frobenius_oracle",
        statement: "kernel-criterion Frobenius recognition agrees with the malnormal-complement definition (|G| <= 60)",
        run: frobenius_oracle,
    },
    Check {
        name: "two_frobenius_paths",
        statement: "Fitting-based 2-Frobenius recognition agrees with the normal-pair scan",
        run: two_frobenius_paths,
    },
    Check {
        name: "kernel_is_fitting",
        statement: "the kernel of a solvable Frobenius group is its Fitting subgroup",
        run: kernel_is_fitting,
    },
];

/// Size limit for the lattice-based oracles.
const ORACLE_MAX_ORDER: usize = 60;

fn elements_of(bits: &FixedBitSet) -> String {
    let v: Vec<usize> = bits.ones().collect();
    format!("{v:?}")
}

fn connected_diameter(graph: &GroupGraph) -> Option<usize> {
    graph.is_connected().then(|| graph.diameters()[0])
}

fn require_non_nilpotent(a: &Analysis) -> Result<(), Outcome> {
    if a.is_nilpotent() {
        Err(Outcome::not_applicable("group is nilpotent"))
    } else {
        Ok(())
    }
}

fn require_solvable(a: &Analysis) -> Result<(), Outcome> {
    if a.is_solvable() {
        Ok(())
    } else {
        Err(Outcome::not_applicable("group is not solvable"))
    }
}

fn require_centerless(a: &Analysis) -> Result<(), Outcome> {
    if a.order() == 1 {
        Err(Outcome::not_applicable("group is trivial"))
    } else if !a.center().is_trivial() {
        Err(Outcome::not_applicable("center nontrivial"))
    } else {
        Ok(())
    }
}

fn require_connected(a: &Analysis) -> Result<usize, Outcome> {
    connected_diameter(a.reduced_graph())
        .ok_or_else(|| Outcome::not_applicable("reduced graph is disconnected"))
}

fn bound(a: &Analysis, diameter: usize, limit: usize) -> Outcome {
    Outcome::check(diameter <= limit, || {
        format!("diameter {diameter} exceeds {limit} (order {})", a.order())
    })
}

macro_rules! guard {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(outcome) => return outcome,
        }
    };
}

fn nil_prime_component_intersection(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    let g = a.group();
    for x in g.elements() {
        let mut meet = FixedBitSet::with_capacity(g.order());
        meet.insert_range(..);
        for xp in structure::primary_decomposition(g, x).into_values() {
            meet.intersect_with(a.nil(xp));
        }
        if &meet != a.nil(x) {
            return Outcome::fail(format!("element {x}"));
        }
    }
    Outcome::Pass
}

fn n_group_prime_power_reduction(c: &CheckContext) -> Outcome {
    let reduced = classify::is_n_group(c.analysis);
    let full = classify::is_n_group_unreduced(c.analysis);
    Outcome::check(reduced == full, || {
        format!("prime-power test says {reduced}, all-elements test says {full}")
    })
}

fn a_group_nil_is_centralizer(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    let g = a.group();
    let a_group = classify::is_a_group(g);
    let mismatch = g
        .elements()
        .filter(|&x| crate::arith::is_prime_power(g.element_order(x)) || x.is_identity())
        .find(|&x| a.nil(x) != structure::centralizer(g, x).bits());
    Outcome::check(a_group == mismatch.is_none(), || match mismatch {
        Some(x) => format!("A-group but Nil({x}) differs from C({x})"),
        None => "not an A-group, yet Nil(x) = C(x) for all prime-power-order x".into(),
    })
}

fn n_group_direct_product(c: &CheckContext) -> Outcome {
    let SpecKind::DirectProduct { left, right } = &c.spec.kind else {
        return Outcome::not_applicable("not a direct product entry");
    };
    let (Ok(ga), Ok(gb)) = (left.build(&c.limits), right.build(&c.limits)) else {
        return Outcome::not_applicable("factor exceeds the order cap");
    };
    let (fa, fb) = (Analysis::new(ga), Analysis::new(gb));
    let nb = fb.order();
    let a = c.analysis;
    for x in a.group().elements() {
        let (xa, xb) = (Element::new(x.index() / nb), Element::new(x.index() % nb));
        let (ra, rb) = (fa.nil(xa), fb.nil(xb));
        let row = a.nil(x);
        let split =
            (0..a.order()).all(|y| row.contains(y) == (ra.contains(y / nb) && rb.contains(y % nb)));
        if !split {
            return Outcome::fail(format!("Nil({x}) is not Nil({xa}) x Nil({xb})"));
        }
    }
    if !(classify::is_n_group(&fa) && classify::is_n_group(&fb)) {
        return Outcome::Pass;
    }
    Outcome::check(classify::is_n_group(a), || {
        "factors are n-groups but the product is not".into()
    })
}

fn frobenius_n_complement(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    let Some(w) = a.frobenius() else {
        return Outcome::not_applicable("not a Frobenius group");
    };
    let h = Analysis::new(a.group().subgroup_group(&w.complement).group);
    if !classify::is_n_group(&h) {
        return Outcome::not_applicable("complement is not an n-group");
    }
    Outcome::check(classify::is_n_group(a), || {
        format!(
            "complement of order {} is an n-group but G is not",
            h.order()
        )
    })
}

fn clique_neighborhoods_iff_frobenius(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_centerless(a));
    guard!(require_solvable(a));
    let lhs = classify::has_nilpotent_neighborhood_property(a);
    let rhs = a
        .frobenius()
        .is_some_and(|w| structure::is_nilpotent(a.group(), &w.complement));
    Outcome::check(lhs == rhs, || {
        format!("nilpotent neighborhoods: {lhs}; Frobenius with nilpotent complement: {rhs}")
    })
}

fn hypercenter_adjacency_lift(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_non_nilpotent(a));
    let Some(hq) = a.hypercenter_quotient() else {
        return Outcome::not_applicable("hypercenter trivial");
    };
    let gamma = a.reduced_graph();
    let q = hq.analysis.reduced_graph();
    let vertices: Vec<Element> = gamma.vertices().collect();
    for (i, &x) in vertices.iter().enumerate() {
        let px = hq.projection[x.index()];
        for &y in &vertices[i + 1..] {
            let py = hq.projection[y.index()];
            if px != py && gamma.adjacent(x, y) != q.adjacent(px, py) {
                return Outcome::fail(format!("pair ({x}, {y})"));
            }
        }
    }
    Outcome::Pass
}

fn quotient_component_correspondence(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_non_nilpotent(a));
    let Some(hq) = a.hypercenter_quotient() else {
        return Outcome::Pass;
    };
    let gamma = a.reduced_graph();
    let q = hq.analysis.reduced_graph();
    if gamma.component_count() != q.component_count() {
        return Outcome::fail(format!(
            "{} components upstairs, {} in the quotient",
            gamma.component_count(),
            q.component_count()
        ));
    }
    let mut hit = vec![false; q.component_count()];
    for (ci, comp) in gamma.components().iter().enumerate() {
        let image = |v: usize| q.component_of(hq.projection[v]);
        let Ok(target) = image(comp[0]) else {
            return Outcome::fail(format!(
                "vertex {} projects outside the quotient graph",
                comp[0]
            ));
        };
        if let Some(&v) = comp.iter().find(|&&v| image(v) != Ok(target)) {
            return Outcome::fail(format!("component of {} splits at vertex {v}", comp[0]));
        }
        if std::mem::replace(&mut hit[target], true) {
            return Outcome::fail(format!(
                "two components map onto quotient component {target}"
            ));
        }
        let (d, e) = (gamma.diameters()[ci], q.diameters()[target]);
        if (d > 1 || e > 1) && d != e {
            return Outcome::fail(format!(
                "component of {} has diameter {d}, its image has {e}",
                comp[0]
            ));
        }
    }
    Outcome::Pass
}

fn frobenius_kernel_component(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    let frob = a.frobenius();
    if frob.is_none() && a.two_frobenius().is_none() {
        return Outcome::not_applicable("neither Frobenius nor 2-Frobenius");
    }
    let gamma = a.reduced_graph();
    if gamma.is_connected() {
        return Outcome::fail("Frobenius or 2-Frobenius but connected");
    }
    let Some(w) = frob else {
        return Outcome::Pass;
    };
    let mut ids = w
        .kernel
        .iter()
        .filter(|k| !k.is_identity())
        .map(|k| gamma.component_of(k));
    let first = ids.next().expect("kernel is nontrivial");
    let Ok(id) = first else {
        return Outcome::fail("kernel element outside the reduced graph");
    };
    if ids.any(|other| other != Ok(id)) || gamma.components()[id].len() != w.kernel.len() - 1 {
        return Outcome::fail(format!(
            "kernel of order {} is not a single component",
            w.kernel.len()
        ));
    }
    Outcome::Pass
}

fn commuting_graph_connectivity(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_centerless(a));
    let gamma = a.reduced_graph();
    let comm = a.graph(GraphKind::Commuting);
    if gamma.is_connected() != comm.is_connected() {
        return Outcome::fail(format!(
            "reduced graph connected: {}, commuting graph connected: {}",
            gamma.is_connected(),
            comm.is_connected()
        ));
    }
    if let (Some(k), Some(kc)) = (connected_diameter(gamma), connected_diameter(comm)) {
        if kc > 2 * k {
            return Outcome::fail(format!("commuting diameter {kc} exceeds 2 * {k}"));
        }
    }
    if a.is_solvable() {
        let frob = a.frobenius().is_some() || a.two_frobenius().is_some();
        if frob == gamma.is_connected() {
            return Outcome::fail(format!(
                "connected: {}, Frobenius or 2-Frobenius: {frob}",
                gamma.is_connected()
            ));
        }
    }
    Outcome::Pass
}

fn disconnected_iff_frobenius_quotient(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_non_nilpotent(a));
    guard!(require_solvable(a));
    let disconnected = !a.reduced_graph().is_connected();
    let red = a.reduced();
    let frob = red.frobenius().is_some() || red.two_frobenius().is_some();
    Outcome::check(disconnected == frob, || {
        format!("disconnected: {disconnected}; G/Z_inf Frobenius or 2-Frobenius: {frob}")
    })
}

fn commuting_graph_equality_iff_a_group(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    let equal = a.reduced_graph().same_graph(a.graph(GraphKind::Commuting));
    let a_group = classify::is_a_group(a.group());
    Outcome::check(equal == a_group, || {
        format!("graphs equal: {equal}; A-group: {a_group}")
    })
}

fn diameter_bounds(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_non_nilpotent(a));
    let gamma = a.reduced_graph();
    let ds = gamma.diameters();
    if let Some(&d) = ds.iter().find(|&&d| d > 10) {
        return Outcome::fail(format!("component of diameter {d}"));
    }
    if !a.is_solvable() {
        return Outcome::Pass;
    }
    if let Some(d) = connected_diameter(gamma) {
        return bound(a, d, 8);
    }
    let large: Vec<usize> = ds.iter().copied().filter(|&d| d > 2).collect();
    Outcome::check(large.len() <= 1 && large.iter().all(|&d| d <= 5), || {
        format!("component diameters above 2: {large:?}")
    })
}

fn fitting_component(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_centerless(a));
    guard!(require_solvable(a));
    let g = a.group();
    let gamma = a.reduced_graph();
    let fit = a.fitting();
    let mut core = fit.bits().clone();
    core.set(0, false);
    let ids: Vec<usize> = core
        .ones()
        .map(|v| {
            gamma
                .component_of(Element::new(v))
                .expect("nontrivial elements are vertices")
        })
        .collect();
    if ids.windows(2).any(|w| w[0] != w[1]) {
        return Outcome::fail("Fit minus 1 meets several components");
    }
    let home = ids[0];
    let mut ball = core.clone();
    for _ in 0..2 {
        let mut next = ball.clone();
        for v in ball.ones() {
            next.union_with(gamma.neighbors(Element::new(v)));
        }
        ball = next;
    }
    for x in g.elements().filter(|x| !x.is_identity()) {
        if gcd(g.element_order(x), fit.len()) == 1 {
            continue;
        }
        if gamma.component_of(x) != Ok(home) || !ball.contains(x.index()) {
            return Outcome::fail(format!("element {x} is farther than 2 from Fit minus 1"));
        }
    }
    let fit_group_primes: Vec<usize> = crate::arith::prime_divisors(fit.len());
    if fit_group_primes == structure::pi(g) {
        if let Some(d) = connected_diameter(gamma) {
            return bound(a, d, 5);
        }
    }
    Outcome::Pass
}

fn prime_index_fitting_bound(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_non_nilpotent(a));
    let index = a.order() / a.fitting().len();
    if !is_prime(index) {
        return Outcome::not_applicable(format!("|G:Fit| = {index} is not prime"));
    }
    let d = guard!(require_connected(a));
    bound(a, d, 3)
}

fn ac_group_disconnected(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_non_nilpotent(a));
    guard!(require_solvable(a));
    if !classify::is_ac_group(a) {
        return Outcome::not_applicable("not an AC-group");
    }
    Outcome::check(!a.reduced_graph().is_connected(), || {
        "AC-group with connected reduced graph".into()
    })
}

fn a_group_bound(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_non_nilpotent(a));
    if !classify::is_a_group(a.group()) {
        return Outcome::not_applicable("not an A-group");
    }
    let d = guard!(require_connected(a));
    bound(a, d, 6)
}

fn cyclic_by_abelian_bound(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_non_nilpotent(a));
    if a.center() != a.hypercenter() {
        return Outcome::not_applicable("center differs from hypercenter");
    }
    let d = guard!(require_connected(a));
    if classify::cyclic_by_abelian_factorization(a).is_none() {
        return Outcome::not_applicable("no cyclic-by-abelian factorization");
    }
    bound(a, d, 4)
}

fn cyclic_fitting_bound(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_centerless(a));
    guard!(require_solvable(a));
    if !classify::is_cyclic_subgroup(a.group(), a.fitting()) {
        return Outcome::not_applicable("Fitting subgroup is not cyclic");
    }
    let d = guard!(require_connected(a));
    bound(a, d, 5)
}

fn two_prime_bound(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    guard!(require_non_nilpotent(a));
    guard!(require_centerless(a));
    let primes = structure::pi(a.group());
    if primes.len() != 2 {
        return Outcome::not_applicable(format!("order has {} prime divisors", primes.len()));
    }
    let d = guard!(require_connected(a));
    bound(a, d, 6)
}

fn universal_vertices_hypercenter(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    let universal: Vec<Element> = a.graph(GraphKind::NilpotentFull).universal_vertices();
    let hyper: Vec<Element> = a.hypercenter().iter().collect();
    Outcome::check(universal == hyper, || {
        format!(
            "universal vertices {:?}, hypercenter {}",
            universal.iter().map(|e| e.index()).collect::<Vec<_>>(),
            elements_of(a.hypercenter().bits())
        )
    })
}

fn commuting_subgraph(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    if a.center() != a.hypercenter() {
        return Outcome::not_applicable("center differs from hypercenter");
    }
    let gamma = a.reduced_graph();
    let comm = a.graph(GraphKind::Commuting);
    Outcome::check(
        gamma.vertex_set() == comm.vertex_set() && comm.edges_subset_of(gamma),
        || "commuting edge missing from the reduced graph".into(),
    )
}

fn nilpotency_agreement(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    let g = a.group();
    let by_lower = structure::is_nilpotent(g, &SubgroupSet::whole(g.order()));
    Outcome::check(by_lower == a.is_nilpotent(), || {
        format!(
            "lower central series nilpotent: {by_lower}; hypercenter of order {}",
            a.hypercenter().len()
        )
    })
}

fn fitting_oracle(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    let other = oracle::fitting_by_normal_closures(a.group());
    Outcome::check(&other == a.fitting(), || {
        format!(
            "p-core Fitting order {}, normal-closure Fitting order {}",
            a.fitting().len(),
            other.len()
        )
    })
}

fn normal_subgroups_oracle(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    if a.order() > ORACLE_MAX_ORDER {
        return Outcome::not_applicable(format!("order exceeds {ORACLE_MAX_ORDER}"));
    }
    let brute = oracle::normal_subgroups_brute(a.group());
    Outcome::check(brute.as_slice() == a.normal_subgroups(), || {
        format!(
            "class joins give {} normal subgroups, the lattice gives {}",
            a.normal_subgroups().len(),
            brute.len()
        )
    })
}

fn frobenius_oracle(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    if a.order() > ORACLE_MAX_ORDER {
        return Outcome::not_applicable(format!("order exceeds {ORACLE_MAX_ORDER}"));
    }
    let kernel_side = a.frobenius().is_some();
    let complement_side = oracle::frobenius_complement_brute(a.group());
    Outcome::check(kernel_side == complement_side.is_some(), || {
        format!(
            "kernel criterion: {kernel_side}; malnormal subgroup: {:?}",
            complement_side.map(|h| h.len())
        )
    })
}

fn two_frobenius_paths(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    let fast = a.two_frobenius();
    let scan = classify::two_frobenius_scan(a.group(), a.normal_subgroups());
    Outcome::check(fast.is_some() == scan.is_some(), || {
        format!(
            "Fitting path {:?}, scan {:?}",
            fast.map(|w| (w.k.len(), w.l.len())),
            scan.map(|w| (w.k.len(), w.l.len()))
        )
    })
}

fn kernel_is_fitting(c: &CheckContext) -> Outcome {
    let a = c.analysis;
    let Some(w) = a.frobenius() else {
        return Outcome::not_applicable("not a Frobenius group");
    };
    guard!(require_solvable(a));
    Outcome::check(&w.kernel == a.fitting(), || {
        format!(
            "kernel order {}, Fitting order {}",
            w.kernel.len(),
            a.fitting().len()
        )
    })
}
