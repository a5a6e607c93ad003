//! Fixture groups shared by the benchmarks in `benches/`.

use nilgraph_core::{build, Group, GroupSpec, Limits};

/// Named groups of increasing size covering the solvable, Frobenius and
/// nonsolvable cases.
pub fn fixtures() -> Vec<(&'static str, Group)> {
    let limits = Limits::default();
    let specs = [
        ("S4", GroupSpec::symmetric(4)),
        ("C15:C4", GroupSpec::semidirect_cyclic(15, 4, 8)),
        ("D50", GroupSpec::dihedral(50)),
        (
            "S3xC3xS3",
            GroupSpec::direct_product(
                GroupSpec::direct_product(GroupSpec::symmetric(3), GroupSpec::cyclic(3)),
                GroupSpec::symmetric(3),
            ),
        ),
        ("A5", GroupSpec::alternating(5)),
        ("S5", GroupSpec::symmetric(5)),
    ];
    let mut out: Vec<(&'static str, Group)> = specs
        .into_iter()
        .map(|(name, s)| (name, s.build(&limits).expect("fixture builds")))
        .collect();
    out.insert(1, ("SL(2,3)", build::sl23().expect("SL(2,3) builds")));
    out
}
