//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use facetforest::enumerate::{enumerate_complexes, random_complexes};
use facetforest::format::{parse_complex, parse_ideal};
use facetforest::harness::{verify, PropertyId, PropertyReport, Scope, VerifyConfig};
use facetforest::oracles;
use facetforest_core::covers::{dim_quotient, height, minimal_primes, minimal_vertex_covers};
use facetforest_core::forest::{greedy_leaf_order, is_tree, leaf_rejection};
use facetforest_core::{
    facet_ideal, nonface_complex, nonface_ideal, FieldSpec, VertexSet, DEFAULT_SUBCOMPLEX_BOUND,
};

const SAMPLE_TREE: &str = include_str!("../data/tree.cx");
const NONTREE: &str = include_str!("../data/nontree.cx");
const XY_XZ: &str = include_str!("../data/xy-xz.id");

type Check = Result<String, String>;

fn name_sets<S: AsRef<str>>(sets: &[&[S]]) -> BTreeSet<BTreeSet<String>> {
    sets.iter()
        .map(|s| s.iter().map(|v| v.as_ref().to_string()).collect())
        .collect()
}

fn named(
    names: impl Fn(VertexSet) -> Vec<String>,
    sets: &[VertexSet],
) -> BTreeSet<BTreeSet<String>> {
    sets.iter()
        .map(|s| names(*s).into_iter().collect())
        .collect()
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn suite(props: &[PropertyId], scope: Scope) -> Check {
    let config = VerifyConfig::default();
    let mut summary = Vec::new();
    for p in props {
        let r: PropertyReport = verify(*p, scope, &config).map_err(|e| format!("{p}: {e}"))?;
        if !r.ok() || r.skipped > 0 || r.cases == 0 {
            let first = r.failures.first();
            return Err(format!(
                "{p}: {} cases, {} failed, {} skipped; first failure {first:?}",
                r.cases, r.failed, r.skipped
            ));
        }
        summary.push(format!(
            "{p} {}/{} on {} instances",
            r.passed, r.cases, r.instances
        ));
    }
    Ok(summary.join(", "))
}

fn exhaustive(max_vertices: usize, max_facets: usize) -> Scope {
    Scope::Exhaustive {
        max_vertices,
        max_facets,
    }
}

fn sample_tree_example() -> Check {
    let c = parse_complex(SAMPLE_TREE).map_err(|e| e.to_string())?;
    let f = facet_ideal(&c).map_err(|e| e.to_string())?;
    let n = nonface_ideal(&c).map_err(|e| e.to_string())?;
    expect_eq(
        "facet ideal",
        named(|s| f.names(s), f.generators()),
        name_sets(&[&["u", "v", "w"], &["x", "w"], &["x", "y"]]),
    )?;
    expect_eq(
        "non-face ideal",
        named(|s| n.names(s), n.generators()),
        name_sets(&[
            &["x", "u"],
            &["x", "v"],
            &["y", "u"],
            &["y", "v"],
            &["y", "w"],
        ]),
    )?;
    expect_eq(
        "minimal covers",
        named(|s| c.names(s), &minimal_vertex_covers(&c)),
        name_sets(&[&["x", "w"], &["y", "w"], &["x", "v"], &["x", "u"]]),
    )?;
    Ok("facet ideal, non-face ideal and covers match".into())
}

fn xy_xz() -> Check {
    let i = parse_ideal(XY_XZ).map_err(|e| e.to_string())?;
    let gamma = nonface_complex(&i);
    expect_eq(
        "non-face complex",
        named(|s| gamma.names(s), gamma.facets()),
        name_sets(&[&["x"], &["y", "z"]]),
    )?;
    expect_eq(
        "minimal primes",
        named(|s| i.names(s), &minimal_primes(&i)),
        name_sets(&[&["x"], &["y", "z"]]),
    )?;
    expect_eq("dim", dim_quotient(&i), 2)?;
    expect_eq("height", height(&i), 1)?;
    Ok("non-face complex, primes, dim 2, height 1".into())
}

fn nontree() -> Check {
    let c = parse_complex(NONTREE).map_err(|e| e.to_string())?;
    let verdict = is_tree(&c, DEFAULT_SUBCOMPLEX_BOUND).map_err(|e| e.to_string())?;
    expect_eq("is_tree", verdict.tree, false)?;
    let u = c.universe();
    let set = |names: &[&str]| u.set(names).map_err(|e| e.to_string());
    let (f1, f2, f3) = (
        set(&["a", "b", "c"])?,
        set(&["a", "c", "d"])?,
        set(&["b", "c", "d", "e"])?,
    );
    let rejection = leaf_rejection(&c, f3)
        .map_err(|e| e.to_string())?
        .ok_or("F3 accepted as a leaf")?;
    let meets: BTreeSet<(u64, u64)> = rejection
        .intersections
        .iter()
        .map(|(g, m)| (g.bits(), m.bits()))
        .collect();
    let bc = set(&["b", "c"])?;
    let cd = set(&["c", "d"])?;
    expect_eq(
        "F3 intersections",
        meets,
        [(f1.bits(), bc.bits()), (f2.bits(), cd.bits())]
            .into_iter()
            .collect(),
    )?;
    if bc.is_subset(cd) || cd.is_subset(bc) {
        return Err("intersections are comparable".into());
    }
    Ok("F3 rejected with intersections {b,c}, {c,d}".into())
}

fn oracle_equivalence() -> Check {
    let instances = random_complexes(500, 0x5eed, 12, 8);
    for c in &instances {
        let n = c.universe().len();
        let masks: Vec<u64> = c.facets().iter().map(|f| f.bits()).collect();
        let mut fast: Vec<u64> = minimal_vertex_covers(c).iter().map(|s| s.bits()).collect();
        fast.sort_unstable();
        let mut slow = oracles::minimal_covers(&masks, n);
        slow.sort_unstable();
        if fast != slow {
            return Err(format!("covers differ on {:?}", c.facet_names()));
        }
    }
    let all = enumerate_complexes(5, 10).map_err(|e| e.to_string())?;
    let mut greedy_failures = 0;
    for c in &all {
        if greedy_leaf_order(c).is_none() {
            greedy_failures += 1;
            let masks: Vec<u64> = c.facets().iter().map(|f| f.bits()).collect();
            if oracles::is_forest(&masks) {
                return Err(format!("greedy failed on forest {:?}", c.facet_names()));
            }
        }
    }
    Ok(format!(
        "500 random cover sets equal; {greedy_failures} greedy failures among {} classes are all non-forests",
        all.len()
    ))
}

fn cm_unmixed() -> Check {
    let config = VerifyConfig {
        cm_fields: vec![FieldSpec::Rational, FieldSpec::Prime(2)],
        ..VerifyConfig::default()
    };
    let r = verify(PropertyId::CmUnmixed, exhaustive(5, 10), &config).map_err(|e| e.to_string())?;
    if !r.ok() || r.skipped > 0 {
        return Err(format!(
            "{} failed, {} skipped: {:?}",
            r.failed,
            r.skipped,
            r.failures.first()
        ));
    }
    Ok(format!("{} classes over Q and F2", r.instances))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Check);
    let criteria: [Criterion; 10] = [
        (
            "worked example fidelity",
            Duration::from_secs(1),
            sample_tree_example,
        ),
        ("(xy,xz) values", Duration::from_secs(1), xy_xz),
        ("non-tree rejection", Duration::from_secs(1), nontree),
        (
            "exhaustive duality suite, <= 5 vertices",
            Duration::from_secs(120),
            || {
                suite(
                    &[
                        PropertyId::PureUnmixed,
                        PropertyId::MinPrime,
                        PropertyId::Dim,
                        PropertyId::FreeVertex,
                        PropertyId::RoundTripFacet,
                        PropertyId::RoundTripNonface,
                    ],
                    exhaustive(5, 10),
                )
            },
        ),
        (
            "localizations of trees are forests",
            Duration::from_secs(300),
            || suite(&[PropertyId::LocForest], exhaustive(5, 10)),
        ),
        (
            "CM implies unmixed over Q and F2",
            Duration::from_secs(600),
            cm_unmixed,
        ),
        (
            "F1 and generator bound on trees, <= 6 vertices",
            Duration::from_secs(300),
            || suite(&[PropertyId::F1, PropertyId::Mu], exhaustive(6, 6)),
        ),
        (
            "sliding depth on trees, n <= 6, q <= 4",
            Duration::from_secs(1800),
            || suite(&[PropertyId::Slide], exhaustive(6, 4)),
        ),
        (
            "strongly CM on CM trees, n <= 6, q <= 4",
            Duration::from_secs(1800),
            || suite(&[PropertyId::Scm], exhaustive(6, 4)),
        ),
        (
            "cover search and greedy filter match oracles",
            Duration::from_secs(120),
            oracle_equivalence,
        ),
    ];

    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > *budget => {
                Err(format!("{msg}; took {elapsed:.1?}, budget {budget:?}"))
            }
            other => other,
        };
        match result {
            Ok(msg) => println!("PASS {:>2} {name} ({elapsed:.2?}): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
