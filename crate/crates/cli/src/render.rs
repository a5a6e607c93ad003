//! Plain-text summaries. The JSON forms are authoritative.

use std::fmt::Write;

use nilgraph_core::classify::Flags;
use nilgraph_core::verify::{
    Candidate, CatalogReport, ClassificationReport, EntryOutcome, GraphStats, Outcome,
};
use nilgraph_core::{Group, GroupGraph};

fn flag_names(f: &Flags) -> String {
    let named = [
        ("nilpotent", f.nilpotent),
        ("solvable", f.solvable),
        ("a_group", f.a_group),
        ("ac_group", f.ac_group),
        ("n_group", f.n_group),
        ("frobenius", f.frobenius),
        ("two_frobenius", f.two_frobenius),
        ("nil_nbhd_property", f.nil_nbhd_property),
    ];
    let on: Vec<&str> = named.iter().filter(|(_, v)| *v).map(|(n, _)| *n).collect();
    if on.is_empty() {
        "none".into()
    } else {
        on.join(" ")
    }
}

fn stats_line(s: &GraphStats) -> String {
    format!(
        "{} vertices, {} edges, {} components, diameters {:?}",
        s.vertex_count, s.edge_count, s.component_count, s.diameter_multiset
    )
}

pub fn report(r: &ClassificationReport) -> String {
    let mut out = String::new();
    writeln!(out, "{}", r.name).unwrap();
    writeln!(
        out,
        "  order {}, center {}, hypercenter {}, fitting {}, primes {:?}",
        r.order, r.center_order, r.hypercenter_order, r.fitting_order, r.primes
    )
    .unwrap();
    writeln!(out, "  flags: {}", flag_names(&r.flags)).unwrap();
    for (kind, s) in &r.graph_stats {
        writeln!(out, "  {kind}: {}", stats_line(s)).unwrap();
    }
    let (mut pass, mut fail, mut na) = (0, 0, 0);
    for o in r.theorem_outcomes.values() {
        match o {
            Outcome::Pass => pass += 1,
            Outcome::Fail { .. } => fail += 1,
            Outcome::NotApplicable { .. } => na += 1,
        }
    }
    writeln!(
        out,
        "  checks: {pass} pass, {fail} fail, {na} not applicable"
    )
    .unwrap();
    for (name, o) in &r.theorem_outcomes {
        match o {
            Outcome::Pass => writeln!(out, "    {name}: pass"),
            Outcome::Fail { witness } => writeln!(out, "    {name}: FAIL {witness}"),
            Outcome::NotApplicable { reason } => writeln!(out, "    {name}: n/a ({reason})"),
        }
        .unwrap();
    }
    out
}

pub fn catalog(r: &CatalogReport) -> String {
    let s = &r.summary;
    let mut out = String::new();
    writeln!(
        out,
        "{} entries (cap {}), {} errors, {} failures",
        s.entries, r.cap, s.errors, s.failures
    )
    .unwrap();
    let width = s.checks.keys().map(String::len).max().unwrap_or(0);
    for (name, c) in &s.checks {
        writeln!(
            out,
            "  {name:<width$}  pass {:>4}  fail {:>3}  n/a {:>4}",
            c.pass, c.fail, c.not_applicable
        )
        .unwrap();
    }
    if let Some(m) = &s.max_connected_diameter {
        writeln!(out, "max connected diameter {} ({})", m.diameter, m.name).unwrap();
    }
    if let Some(m) = &s.max_component_diameter {
        writeln!(out, "max component diameter {} ({})", m.diameter, m.name).unwrap();
    }
    for e in &r.entries {
        match &e.result {
            EntryOutcome::Error { message, .. } => {
                writeln!(out, "error #{} {}: {message}", e.index, e.name).unwrap()
            }
            EntryOutcome::Report(rep) => {
                for (check, o) in rep.failures() {
                    if let Outcome::Fail { witness } = o {
                        writeln!(out, "FAIL #{} {} {check}: {witness}", e.index, e.name).unwrap();
                    }
                }
            }
        }
    }
    out
}

fn candidate_line(c: &Candidate) -> String {
    format!(
        "{}: fitting {}, connected {}, diameters {:?}",
        c.spec.name(),
        c.fitting_order,
        c.connected,
        c.diameters
    )
}

pub fn witness(winner: &Candidate, report_text: &str, all: Option<&[Candidate]>) -> String {
    let mut out = format!("witness {}\n{report_text}", candidate_line(winner));
    if let Some(all) = all {
        writeln!(out, "candidates:").unwrap();
        for c in all {
            writeln!(out, "  {}", candidate_line(c)).unwrap();
        }
    }
    out
}

pub fn group(name: &str, g: &Group) -> String {
    let mut counts = std::collections::BTreeMap::new();
    for &o in g.element_orders() {
        *counts.entry(o).or_insert(0usize) += 1;
    }
    let gens: Vec<usize> = g.generators().iter().map(|e| e.index()).collect();
    let profile: Vec<String> = counts.iter().map(|(o, n)| format!("{o}:{n}")).collect();
    format!(
        "{name}\n  order {}\n  generators {gens:?}\n  element orders {}\n",
        g.order(),
        profile.join(" ")
    )
}

pub fn graph(g: &GroupGraph) -> String {
    let s = GraphStats::of(g);
    format!("{}: {}\n", g.kind(), stats_line(&s))
}
