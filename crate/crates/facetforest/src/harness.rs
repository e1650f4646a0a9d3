//! Executable property suite. Each property is checked on a stream of
//! instances against the public core API, with brute-force oracles from
//! [`crate::oracles`] as the reference wherever one exists.

use std::fmt;

use facetforest_core::covers::{
    dim_quotient, height, is_unmixed, minimal_primes, primary_decomposition_expand,
};
use facetforest_core::forest::{is_forest, leaf_witness};
use facetforest_core::homology::{depth_sr, is_cm};
use facetforest_core::koszul::{sliding_depth_check, strongly_cm_check};
use facetforest_core::{
    facet_complex, facet_ideal, nonface_complex, nonface_ideal, Error, FieldSpec, Limits,
    MonomialIdeal, Result, SimplicialComplex, VertexSet,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{enumerate_complexes, enumerate_trees, random_complexes, random_trees};
use crate::format::{parse_complex, parse_ideal, write_complex, write_ideal};
use crate::oracles;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    MinPrime,
    PureUnmixed,
    CmUnmixed,
    LocForest,
    Mu,
    F1,
    Slide,
    Scm,
    Dim,
    FreeVertex,
    RoundTripFacet,
    RoundTripNonface,
}

impl PropertyId {
    pub const ALL: [PropertyId; 12] = [
        PropertyId::MinPrime,
        PropertyId::PureUnmixed,
        PropertyId::CmUnmixed,
        PropertyId::LocForest,
        PropertyId::Mu,
        PropertyId::F1,
        PropertyId::Slide,
        PropertyId::Scm,
        PropertyId::Dim,
        PropertyId::FreeVertex,
        PropertyId::RoundTripFacet,
        PropertyId::RoundTripNonface,
    ];

    pub fn code(self) -> &'static str {
        match self {
            PropertyId::MinPrime => "P-MINPRIME",
            PropertyId::PureUnmixed => "P-PUREUNMIXED",
            PropertyId::CmUnmixed => "P-CMUNMIXED",
            PropertyId::LocForest => "P-LOCFOREST",
            PropertyId::Mu => "P-MU",
            PropertyId::F1 => "P-F1",
            PropertyId::Slide => "P-SLIDE",
            PropertyId::Scm => "P-SCM",
            PropertyId::Dim => "P-DIM",
            PropertyId::FreeVertex => "P-FREEVERTEX",
            PropertyId::RoundTripFacet => "RT-FACET",
            PropertyId::RoundTripNonface => "RT-NONFACE",
        }
    }

    pub fn parse(code: &str) -> Option<PropertyId> {
        let code = code.trim().to_ascii_uppercase();
        PropertyId::ALL.into_iter().find(|p| p.code() == code)
    }

    /// Instances are trees (or Cohen–Macaulay trees) rather than arbitrary
    /// complexes.
    pub fn on_trees(self) -> bool {
        matches!(
            self,
            PropertyId::LocForest
                | PropertyId::Mu
                | PropertyId::F1
                | PropertyId::Slide
                | PropertyId::Scm
        )
    }

    fn needs_cm(self) -> bool {
        matches!(self, PropertyId::Mu | PropertyId::Scm)
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Exhaustive {
        max_vertices: usize,
        max_facets: usize,
    },
    Random {
        count: usize,
        seed: u64,
        max_vertices: usize,
        max_facets: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Fields for the Cohen–Macaulay properties.
    pub cm_fields: Vec<FieldSpec>,
    /// Field for the Koszul properties and for selecting CM trees.
    pub koszul_field: FieldSpec,
    pub limits: Limits,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            cm_fields: vec![FieldSpec::Rational, FieldSpec::Prime(2)],
            koszul_field: FieldSpec::Rational,
            limits: Limits::default(),
        }
    }
}

/// Leaf and forest predicates under test. The harness only ever calls these
/// through the trait, so a faulty implementation can be swapped in.
pub trait ForestModel: Sync {
    fn is_leaf(&self, complex: &SimplicialComplex, facet: VertexSet) -> bool;
    fn is_forest(&self, complex: &SimplicialComplex) -> bool;
}

/// The core crate's leaf and forest checks.
#[derive(Debug, Clone, Copy)]
pub struct CoreForest {
    pub bound: usize,
}

impl Default for CoreForest {
    fn default() -> Self {
        CoreForest {
            bound: Limits::default().subcomplex_bound,
        }
    }
}

impl ForestModel for CoreForest {
    fn is_leaf(&self, complex: &SimplicialComplex, facet: VertexSet) -> bool {
        facetforest_core::forest::is_leaf(complex, facet).unwrap_or(false)
    }

    fn is_forest(&self, complex: &SimplicialComplex) -> bool {
        is_forest(complex, self.bound).is_ok_and(|v| v.tree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCase {
    pub property: &'static str,
    /// The instance in the text format.
    pub instance: String,
    /// Localization target, when the case is about one.
    pub target: Option<Vec<String>>,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<String>>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: &'static str,
    pub instances: usize,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn from_cases(property: PropertyId, instances: usize, cases: Vec<PropertyCase>) -> Self {
        let mut report = PropertyReport {
            property: property.code(),
            instances,
            cases: cases.len(),
            passed: 0,
            failed: 0,
            skipped: 0,
            failures: Vec::new(),
        };
        for case in cases {
            match case.outcome {
                Outcome::Pass => report.passed += 1,
                Outcome::Skipped(_) => report.skipped += 1,
                Outcome::Fail(detail) => {
                    report.failed += 1;
                    report.failures.push(Failure {
                        instance: case.instance,
                        target: case.target,
                        detail,
                    });
                }
            }
        }
        report
    }
}

/// The instances `property` is checked on within `scope`.
pub fn instances(
    property: PropertyId,
    scope: Scope,
    config: &VerifyConfig,
) -> Result<Vec<SimplicialComplex>> {
    let mut found = match (property.on_trees(), scope) {
        (
            false,
            Scope::Exhaustive {
                max_vertices,
                max_facets,
            },
        ) => enumerate_complexes(max_vertices, max_facets)?,
        (
            true,
            Scope::Exhaustive {
                max_vertices,
                max_facets,
            },
        ) => enumerate_trees(max_vertices, max_facets)?,
        (
            false,
            Scope::Random {
                count,
                seed,
                max_vertices,
                max_facets,
            },
        ) => random_complexes(count, seed, max_vertices, max_facets),
        (
            true,
            Scope::Random {
                count,
                seed,
                max_vertices,
                max_facets,
            },
        ) => random_trees(count, seed, max_vertices, max_facets)?,
    };
    if property.needs_cm() {
        let field = config.koszul_field;
        found.retain(|c| is_cm(c, field).is_ok_and(|r| r.cm));
    }
    Ok(found)
}

/// Checks `property` on every instance in `scope` with the core forest
/// model.
pub fn verify(property: PropertyId, scope: Scope, config: &VerifyConfig) -> Result<PropertyReport> {
    verify_with(property, scope, config, &CoreForest::default())
}

pub fn verify_with(
    property: PropertyId,
    scope: Scope,
    config: &VerifyConfig,
    model: &dyn ForestModel,
) -> Result<PropertyReport> {
    let found = instances(property, scope, config)?;
    let cases: Vec<PropertyCase> = found
        .par_iter()
        .flat_map_iter(|c| check(property, c, config, model))
        .collect();
    Ok(PropertyReport::from_cases(property, found.len(), cases))
}

fn masks(sets: &[VertexSet]) -> Vec<u64> {
    sets.iter().map(|s| s.bits()).collect()
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

/// Pass unless some check produced a message.
fn verdict(problems: Vec<String>) -> Outcome {
    if problems.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(problems.join("; "))
    }
}

fn capped(e: &Error) -> bool {
    matches!(e, Error::ResourceLimit { .. })
}

/// All cases of `property` on one instance.
pub fn check(
    property: PropertyId,
    complex: &SimplicialComplex,
    config: &VerifyConfig,
    model: &dyn ForestModel,
) -> Vec<PropertyCase> {
    let instance = write_complex(complex);
    let case = |target: Option<VertexSet>, outcome: Outcome| PropertyCase {
        property: property.code(),
        instance: instance.clone(),
        target: target.map(|t| complex.names(t)),
        outcome,
    };
    let single = |outcome: Outcome| vec![case(None, outcome)];
    let n = complex.universe().len();
    let facets = masks(complex.facets());
    let ideal = match facet_ideal(complex) {
        Ok(i) => i,
        Err(e) => return single(Outcome::Skipped(e.to_string())),
    };

    match property {
        PropertyId::MinPrime => single(check_min_prime(&ideal, &facets, n)),
        PropertyId::PureUnmixed => single(check_pure_unmixed(complex, &ideal)),
        PropertyId::CmUnmixed => single(check_cm_unmixed(complex, &facets, n, config)),
        PropertyId::Dim => single(check_dim(&ideal, &facets, n)),
        PropertyId::FreeVertex => single(check_free_vertex(complex, &facets, model)),
        PropertyId::RoundTripFacet => single(check_round_trip_facet(complex, &ideal)),
        PropertyId::RoundTripNonface => single(check_round_trip_nonface(complex, &facets, n)),
        PropertyId::Slide => single(check_slide(complex, &ideal, config)),
        PropertyId::Scm => single(check_scm(&ideal, config)),
        PropertyId::LocForest => complex
            .universe()
            .all()
            .subsets()
            .map(|s| case(Some(s), check_loc_forest(complex, &ideal, s, model)))
            .collect(),
        PropertyId::Mu | PropertyId::F1 => {
            let ht = height(&ideal);
            let mut out = Vec::new();
            for s in complex.universe().all().subsets() {
                // monomial primes p = (S) containing I are the covers S
                if !oracles::covers(&facets, s.bits()) {
                    continue;
                }
                out.push(case(Some(s), check_mu(property, &ideal, &facets, s, ht)));
            }
            out
        }
    }
}

fn check_min_prime(ideal: &MonomialIdeal, facets: &[u64], n: usize) -> Outcome {
    let mut problems = Vec::new();
    let got = sorted(masks(&minimal_primes(ideal)));
    let want = sorted(oracles::minimal_covers(facets, n));
    if got != want {
        problems.push(format!(
            "minimal primes {got:?}, minimal covers by scan {want:?}"
        ));
    }
    let expanded = primary_decomposition_expand(ideal);
    if &expanded != ideal {
        problems.push(format!("intersection of minimal primes is {expanded:?}"));
    }
    verdict(problems)
}

fn check_pure_unmixed(complex: &SimplicialComplex, facet_id: &MonomialIdeal) -> Outcome {
    let mut problems = Vec::new();
    let mut ideals = vec![("facet ideal", facet_id.clone())];
    match nonface_ideal(complex) {
        Ok(i) => ideals.push(("non-face ideal", i)),
        Err(e) => problems.push(format!("non-face ideal: {e}")),
    }
    for (what, ideal) in ideals {
        let n = ideal.variable_count();
        let gens = masks(ideal.generators());
        let unmixed = oracles::unmixed(&gens, n);
        let pure = nonface_complex(&ideal).is_pure();
        if unmixed != pure {
            problems.push(format!(
                "{what}: unmixed {unmixed} but non-face complex pure {pure}"
            ));
        }
        let fast = is_unmixed(&facet_complex(&ideal));
        if fast != unmixed {
            problems.push(format!("{what}: is_unmixed {fast}, scan {unmixed}"));
        }
    }
    verdict(problems)
}

fn check_cm_unmixed(
    complex: &SimplicialComplex,
    facets: &[u64],
    n: usize,
    config: &VerifyConfig,
) -> Outcome {
    let mut problems = Vec::new();
    let unmixed = oracles::unmixed(facets, n);
    for field in &config.cm_fields {
        match is_cm(complex, *field) {
            Ok(r) if r.cm && !unmixed => {
                problems.push(format!("Cohen-Macaulay over {field} but mixed"))
            }
            Ok(_) => {}
            Err(e) => problems.push(format!("{field}: {e}")),
        }
    }
    verdict(problems)
}

fn check_dim(ideal: &MonomialIdeal, facets: &[u64], n: usize) -> Outcome {
    let mut problems = Vec::new();
    let cover = oracles::covering_number(facets, n);
    if height(ideal) != cover {
        problems.push(format!(
            "height {} but covering number {cover}",
            height(ideal)
        ));
    }
    let d = dim_quotient(ideal);
    if d != n - cover {
        problems.push(format!(
            "dim R/I = {d}, n - covering number = {}",
            n - cover
        ));
    }
    let independent = oracles::maximal_independent(&masks(ideal.generators()), n);
    let top = independent
        .iter()
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    if d != top {
        problems.push(format!("dim R/I = {d}, largest independent set {top}"));
    }
    let nf = nonface_complex(ideal).dim() + 1;
    if nf != d as isize {
        problems.push(format!("dim of non-face complex + 1 = {nf}, dim R/I = {d}"));
    }
    verdict(problems)
}

fn check_free_vertex(
    complex: &SimplicialComplex,
    facets: &[u64],
    model: &dyn ForestModel,
) -> Outcome {
    let mut problems = Vec::new();
    for (i, f) in complex.facets().iter().enumerate() {
        let leaf = model.is_leaf(complex, *f);
        let want = oracles::is_leaf(facets, i);
        if leaf != want {
            problems.push(format!(
                "{:?}: model leaf {leaf}, definition {want}",
                complex.names(*f)
            ));
            continue;
        }
        if !leaf {
            continue;
        }
        let free = oracles::free_vertices(facets, i);
        if free == 0 {
            problems.push(format!("leaf {:?} has no free vertex", complex.names(*f)));
        }
        match leaf_witness(complex, *f) {
            Ok(Some(w)) if w.free_vertices.bits() == free => {}
            Ok(w) => problems.push(format!("witness {w:?}, free vertices {free:#b}")),
            Err(e) => problems.push(e.to_string()),
        }
    }
    verdict(problems)
}

fn check_round_trip_facet(complex: &SimplicialComplex, ideal: &MonomialIdeal) -> Outcome {
    let mut problems = Vec::new();
    let back = facet_complex(ideal);
    if &back != complex {
        problems.push(format!("facet complex of facet ideal is {back:?}"));
    }
    match parse_complex(&write_complex(complex)) {
        Ok(c) if &c == complex => {}
        other => problems.push(format!("complex text round trip gave {other:?}")),
    }
    match parse_ideal(&write_ideal(ideal)) {
        Ok(i) if &i == ideal => {}
        other => problems.push(format!("ideal text round trip gave {other:?}")),
    }
    verdict(problems)
}

fn check_round_trip_nonface(complex: &SimplicialComplex, facets: &[u64], n: usize) -> Outcome {
    let ideal = match nonface_ideal(complex) {
        Ok(i) => i,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let mut problems = Vec::new();
    let got = sorted(masks(ideal.generators()));
    let want = sorted(oracles::minimal_nonfaces(facets, n));
    if got != want {
        problems.push(format!("non-face generators {got:?}, scan {want:?}"));
    }
    let back = nonface_complex(&ideal);
    if &back != complex {
        problems.push(format!("non-face complex of non-face ideal is {back:?}"));
    }
    verdict(problems)
}

/// `δ𝓕(I_p)` for `p = (S)`; when `S` misses a generator `I_p` is the unit
/// ideal, whose facet complex is `{∅}`.
fn check_loc_forest(
    complex: &SimplicialComplex,
    ideal: &MonomialIdeal,
    s: VertexSet,
    model: &dyn ForestModel,
) -> Outcome {
    let localized = match ideal.localize(s) {
        Ok(j) => facet_complex(&j),
        Err(Error::NotContained) => {
            SimplicialComplex::new(complex.universe().restrict(s), [VertexSet::EMPTY])
                .expect("empty face")
        }
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    if model.is_forest(&localized) {
        Outcome::Pass
    } else {
        Outcome::Fail(format!(
            "localization {} is not a forest",
            write_complex(&localized).trim_end()
        ))
    }
}

fn check_mu(
    property: PropertyId,
    ideal: &MonomialIdeal,
    facets: &[u64],
    s: VertexSet,
    ht: usize,
) -> Outcome {
    let localized = match ideal.localize(s) {
        Ok(j) => j,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let mu = localized.generator_count();
    let mut problems = Vec::new();
    match oracles::localize(facets, s.bits()) {
        Some(g) if g.len() == mu => {}
        other => problems.push(format!("μ = {mu}, direct localization {other:?}")),
    }
    let p = s.len();
    match property {
        PropertyId::F1 if mu > p => problems.push(format!("μ(I_p) = {mu} > dim R_p = {p}")),
        PropertyId::Mu if mu > ht.max(p.saturating_sub(1)) => problems.push(format!(
            "μ(I_p) = {mu} > max(ht I = {ht}, ht p - 1 = {})",
            p - 1
        )),
        _ => {}
    }
    verdict(problems)
}

fn check_slide(
    complex: &SimplicialComplex,
    ideal: &MonomialIdeal,
    config: &VerifyConfig,
) -> Outcome {
    let field = config.koszul_field;
    let report = match sliding_depth_check(ideal, field, &config.limits.koszul) {
        Ok(r) => r,
        Err(e) if capped(&e) => return Outcome::Skipped(e.to_string()),
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let mut problems = Vec::new();
    for m in report.per_i.iter().filter(|m| !m.pass) {
        problems.push(format!("depth H_{} = {:?} < {}", m.i, m.depth, m.bound));
    }
    match depth_sr(complex, field) {
        Ok(d) if report.per_i[0].depth == Some(d) => {}
        Ok(d) => problems.push(format!(
            "depth H_0 = {:?} from Betti numbers, {d} from the skeleton criterion",
            report.per_i[0].depth
        )),
        Err(e) => problems.push(e.to_string()),
    }
    verdict(problems)
}

fn check_scm(ideal: &MonomialIdeal, config: &VerifyConfig) -> Outcome {
    match strongly_cm_check(ideal, config.koszul_field, &config.limits.koszul) {
        Ok(r) if r.strongly_cm == Some(true) => Outcome::Pass,
        Ok(r) => {
            let bad: Vec<String> = r
                .per_i
                .iter()
                .filter(|m| m.cm == Some(false))
                .map(|m| {
                    format!(
                        "depth H_{} = {:?} ≠ dim R/I = {}",
                        m.i, m.depth, r.dim_quotient
                    )
                })
                .collect();
            Outcome::Fail(bad.join("; "))
        }
        Err(e) if capped(&e) => Outcome::Skipped(e.to_string()),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}
