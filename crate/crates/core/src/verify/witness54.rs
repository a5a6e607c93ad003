use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::build::{action_from_generators, extend_to_automorphism};
use crate::error::VerifyError;
use crate::group::{Element, Group, Limits};
use crate::spec::GroupSpec;

/// One examined `N : C2` group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub spec: GroupSpec,
    pub normal: String,
    /// Number of elements of the order-27 subgroup fixed by the involution.
    pub fixed_points: usize,
    pub fitting_order: usize,
    pub connected: bool,
    /// Component diameters of the reduced graph, ascending.
    pub diameters: Vec<usize>,
}

impl Candidate {
    pub fn is_witness(&self) -> bool {
        self.fitting_order == 27 && self.connected && self.diameters == [3]
    }
}

/// The five groups of order 27 as specs.
pub fn order27_groups() -> Vec<GroupSpec> {
    let c = GroupSpec::cyclic;
    let c3sq = GroupSpec::direct_product(c(3), c(3));
    let heisenberg = {
        let n = c3sq.build(&Limits::default()).expect("C3 x C3");
        let acting = crate::build::cyclic(3).expect("C3");
        // (x, y) -> (x + y, y) on index 3x + y
        let shear: Vec<usize> = (0..9).map(|v| ((v / 3 + v % 3) % 3) * 3 + v % 3).collect();
        let action =
            action_from_generators(&n, &acting, &[shear]).expect("shear is an automorphism");
        GroupSpec::semidirect_table(c3sq.clone(), c(3), action).with_label("Heis(3)")
    };
    vec![
        c(27),
        GroupSpec::direct_product(c(9), c(3)).with_label("C9xC3"),
        GroupSpec::direct_product(c3sq, c(3)).with_label("C3^3"),
        heisenberg,
        GroupSpec::semidirect_cyclic(9, 3, 4).with_label("C9:C3"),
    ]
}

/// Involutive automorphisms of `n`, in lexicographic order of their image
/// arrays.
fn involutions(n: &Group) -> Vec<Vec<usize>> {
    let gens = n.generators().to_vec();
    let mut found = BTreeSet::new();
    let mut images = vec![Element::IDENTITY; gens.len()];
    fn assign(
        n: &Group,
        gens: &[Element],
        images: &mut Vec<Element>,
        i: usize,
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        if i == gens.len() {
            if let Some(phi) = extend_to_automorphism(n, images) {
                let is_identity = phi.iter().enumerate().all(|(k, &v)| k == v);
                if !is_identity && (0..phi.len()).all(|k| phi[phi[k]] == k) {
                    found.insert(phi);
                }
            }
            return;
        }
        let want = n.element_order(gens[i]);
        for y in n.elements().filter(|&y| n.element_order(y) == want) {
            images[i] = y;
            assign(n, gens, images, i + 1, found);
        }
    }
    assign(n, &gens, &mut images, 0, &mut found);
    found.into_iter().collect()
}

fn evaluate(
    normal: &GroupSpec,
    phi: Vec<usize>,
    limits: &Limits,
) -> Result<Candidate, VerifyError> {
    let fixed_points = phi.iter().enumerate().filter(|(k, &v)| *k == v).count();
    let identity: Vec<usize> = (0..phi.len()).collect();
    let spec =
        GroupSpec::semidirect_table(normal.clone(), GroupSpec::cyclic(2), vec![identity, phi])
            .with_label(format!("{} : C2 [fix {fixed_points}]", normal.name()));
    let a = Analysis::new(spec.build(limits)?);
    let gamma = a.reduced_graph();
    let mut diameters = gamma.diameters().to_vec();
    diameters.sort_unstable();
    Ok(Candidate {
        normal: normal.name(),
        fixed_points,
        fitting_order: a.fitting().len(),
        connected: gamma.is_connected(),
        diameters,
        spec,
    })
}

/// Every `N : C2` with `|N| = 27` and `C2` acting by an involutive
/// automorphism. Involutions whose fixed subgroups have the same element
/// orders give one candidate per order-27 group.
pub fn order54_candidates() -> Vec<Candidate> {
    candidates_with(&Limits::default()).expect("order 54 is below the default cap")
}

fn candidates_with(limits: &Limits) -> Result<Vec<Candidate>, VerifyError> {
    limits.check_order(54)?;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for normal in order27_groups() {
        let n = normal.build(limits)?;
        for phi in involutions(&n) {
            let fixed: Vec<usize> = (0..phi.len()).filter(|&k| phi[k] == k).collect();
            let mut fixed_orders: Vec<usize> = fixed
                .iter()
                .map(|&k| n.element_order(Element::new(k)))
                .collect();
            fixed_orders.sort_unstable();
            if !seen.insert((normal.name(), fixed_orders)) {
                continue;
            }
            out.push(evaluate(&normal, phi, limits)?);
        }
    }
    Ok(out)
}

/// The first candidate with Fitting subgroup of order 27 and a connected
/// reduced graph of diameter exactly 3, together with every candidate
/// examined.
pub fn find_order54_witness(limits: &Limits) -> Result<(Candidate, Vec<Candidate>), VerifyError> {
    let all = candidates_with(limits)?;
    let winner = all
        .iter()
        .find(|c| c.is_witness())
        .cloned()
        .ok_or(VerifyError::WitnessNotFound)?;
    Ok((winner, all))
}
