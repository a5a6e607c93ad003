//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nilgraph_core::analysis::Analysis;
use nilgraph_core::graphs::GraphKind;
use nilgraph_core::verify::{
    self, default_catalog, find_order54_witness, run_catalog, Catalog, CHECKS,
};
use nilgraph_core::{oracle, structure, GroupSpec, Limits};

type Verdict = Result<String, String>;

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let verdict = f();
    let elapsed = start.elapsed();
    match verdict {
        Ok(msg) if elapsed <= limit => Ok(format!("{msg} in {elapsed:.2?}")),
        Ok(msg) => Err(format!("{msg}, but took {elapsed:.2?} (limit {limit:?})")),
        Err(e) => Err(format!("{e} after {elapsed:.2?}")),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn diameter_four() -> Verdict {
    let spec = GroupSpec::semidirect_cyclic(15, 4, 8);
    let report = verify::analyze_spec(&spec, Limits::default(), None).map_err(|e| e.to_string())?;
    let stats = report.reduced_stats();
    ensure(stats.diameter() == Some(4), || {
        format!("C15:C4 reduced graph: {stats:?}")
    })?;
    Ok("C15:C4 with x^y = x^8: connected, diameter 4".into())
}

fn diameter_three() -> Verdict {
    let (winner, all) = find_order54_witness(&Limits::default()).map_err(|e| e.to_string())?;
    let g = winner
        .spec
        .build(&Limits::default())
        .map_err(|e| e.to_string())?;
    let a = Analysis::new(g);
    let gamma = a.reduced_graph();
    ensure(a.order() == 54, || format!("order {}", a.order()))?;
    ensure(a.fitting().len() == 27, || {
        format!("Fitting order {}", a.fitting().len())
    })?;
    ensure(gamma.is_connected() && gamma.diameters() == [3], || {
        format!("reduced graph diameters {:?}", gamma.diameters())
    })?;
    Ok(format!(
        "{} (order 54, |Fit| = 27, diameter 3) among {} candidates",
        winner.spec.name(),
        all.len()
    ))
}

fn disconnection_suite() -> Verdict {
    let cases = [
        ("S3", GroupSpec::symmetric(3), true),
        ("A4", GroupSpec::alternating(4), true),
        ("S4", GroupSpec::symmetric(4), false),
    ];
    for (name, spec, frobenius) in cases {
        let a = Analysis::new(spec.build(&Limits::default()).map_err(|e| e.to_string())?);
        let gamma = a.reduced_graph();
        ensure(!gamma.is_connected(), || format!("{name} is connected"))?;
        ensure(a.frobenius().is_some() == frobenius, || {
            format!(
                "{name}: Frobenius recognition gave {:?}",
                a.frobenius().is_some()
            )
        })?;
        if let Some(w) = a.frobenius() {
            let mut kernel: Vec<usize> = w.kernel.members();
            kernel.retain(|&k| k != 0);
            ensure(gamma.components().contains(&kernel), || {
                format!("{name}: kernel minus identity {kernel:?} is not a component")
            })?;
        } else {
            ensure(a.two_frobenius().is_some(), || {
                format!("{name} is not 2-Frobenius")
            })?;
        }
    }
    Ok("S3, A4, S4 disconnected; S3 and A4 kernels minus 1 are components".into())
}

fn master_sweep(catalog: &Catalog) -> Verdict {
    let report = run_catalog(catalog, None).map_err(|e| e.to_string())?;
    let s = &report.summary;
    ensure(s.errors == 0, || {
        format!("{} entries failed to build", s.errors)
    })?;
    for check in CHECKS {
        ensure(s.checks.contains_key(check.name), || {
            format!("{} never ran", check.name)
        })?;
    }
    let failing: Vec<String> = report
        .reports()
        .flat_map(|r| {
            r.failures()
                .map(move |(c, o)| format!("{} [{c}]: {o:?}", r.name))
        })
        .collect();
    ensure(failing.is_empty(), || failing.join("; "))?;
    Ok(format!(
        "{} groups x {} checks, zero failures, max connected diameter {}",
        s.entries,
        CHECKS.len(),
        s.max_connected_diameter
            .as_ref()
            .map_or("none".to_string(), |m| format!(
                "{} ({})",
                m.diameter, m.name
            ))
    ))
}

fn oracle_equivalences(catalog: &Catalog) -> Verdict {
    let limits = Limits::with_order_cap(catalog.cap);
    let mut frobenius_compared = 0;
    for spec in &catalog.entries {
        let a = Analysis::new(spec.build(&limits).map_err(|e| e.to_string())?);
        let g = a.group();
        let name = spec.name();
        ensure(
            &oracle::fitting_by_normal_closures(g) == a.fitting(),
            || format!("{name}: Fitting subgroups disagree"),
        )?;
        if a.order() <= 60 {
            frobenius_compared += 1;
            let brute = oracle::frobenius_complement_brute(g).is_some();
            ensure(brute == a.frobenius().is_some(), || {
                format!(
                    "{name}: malnormal complement {brute}, kernel criterion {}",
                    !brute
                )
            })?;
        }
        let universal = a.graph(GraphKind::NilpotentFull).universal_vertices();
        let hyper: Vec<_> = structure::hypercenter(g).iter().collect();
        ensure(universal == hyper, || {
            format!("{name}: universal vertices differ from Z_inf")
        })?;
    }
    Ok(format!(
        "Fitting and universal vertices agree on {} groups, Frobenius on {frobenius_compared}",
        catalog.len()
    ))
}

fn commuting_relation(catalog: &Catalog) -> Verdict {
    let limits = Limits::with_order_cap(catalog.cap);
    let mut examined = 0;
    for spec in &catalog.entries {
        let a = Analysis::new(spec.build(&limits).map_err(|e| e.to_string())?);
        if a.order() == 1 || !a.center().is_trivial() {
            continue;
        }
        let gamma = a.reduced_graph();
        if !gamma.is_connected() {
            continue;
        }
        examined += 1;
        let comm = a.graph(GraphKind::Commuting);
        let (k, kc) = (gamma.diameters()[0], comm.diameters().first().copied());
        ensure(
            comm.is_connected() && kc.is_some_and(|kc| kc <= 2 * k),
            || {
                format!(
                    "{}: diameter {k}, commuting graph {:?}",
                    spec.name(),
                    comm.diameters()
                )
            },
        )?;
    }
    ensure(examined > 0, || {
        "no centerless group with connected graph".into()
    })?;
    Ok(format!(
        "{examined} centerless connected groups satisfy diam_comm <= 2 diam"
    ))
}

fn determinism(catalog: &Catalog) -> Verdict {
    let sweep = |threads: usize| -> Result<String, String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| run_catalog(catalog, None))
            .map(|r| r.to_json())
            .map_err(|e| e.to_string())
    };
    let many = std::thread::available_parallelism()
        .map_or(4, |n| n.get())
        .max(4);
    let single = sweep(1)?;
    let parallel = sweep(many)?;
    ensure(single == parallel, || {
        format!("reports differ between 1 and {many} workers")
    })?;
    Ok(format!(
        "1 and {many} workers give identical {}-byte reports",
        single.len()
    ))
}

type Criterion<'a> = (&'a str, Box<dyn Fn() -> Verdict + 'a>);

fn main() -> ExitCode {
    let catalog = default_catalog();
    let criteria: Vec<Criterion> = vec![
        (
            "sharpness witness, diameter 4",
            Box::new(|| timed(Duration::from_secs(5), diameter_four)),
        ),
        (
            "sharpness witness, diameter 3",
            Box::new(|| timed(Duration::from_secs(60), diameter_three)),
        ),
        (
            "disconnection suite",
            Box::new(|| timed(Duration::from_secs(5), disconnection_suite)),
        ),
        (
            "master theorem sweep",
            Box::new(|| timed(Duration::from_secs(600), || master_sweep(&catalog))),
        ),
        (
            "oracle equivalences",
            Box::new(|| oracle_equivalences(&catalog)),
        ),
        (
            "commuting-graph relation",
            Box::new(|| commuting_relation(&catalog)),
        ),
        ("determinism", Box::new(|| determinism(&catalog))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
