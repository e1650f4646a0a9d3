//! Command-line front end. [`run`] parses arguments, reads the input, runs one
//! analysis and writes a JSON or text report; the return value is the process
//! exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use facetforest_core::covers::{
    covering_number, dim_quotient, height, is_unmixed, minimal_primes, minimal_vertex_covers,
};
use facetforest_core::forest::{is_forest, TreeCertificate, TreeVerdict};
use facetforest_core::homology::{depth_sr, is_cm, CmReport};
use facetforest_core::koszul::{sliding_depth_check, strongly_cm_check, DepthReport};
use facetforest_core::{
    facet_complex, facet_ideal, nonface_complex, nonface_ideal, Error, FieldSpec, KoszulLimits,
    Limits, MonomialIdeal, SimplicialComplex, VertexSet,
};
use serde_json::{json, Map, Value};

use crate::format::{parse_complex, parse_ideal, write_complex, write_ideal, Kind, ParseError};
use crate::harness::{verify, PropertyId, Scope, VerifyConfig};

pub const SCHEMA: &str = "facetforest/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "facetforest",
    version,
    about = "Facet ideals, simplicial trees and their homological properties",
    after_help = "\
Inputs are complex files (one facet per line, comma-separated vertex names,
optional `vertices:` and `ghosts:` headers, `{}` for the empty face) or ideal
files (one square-free monomial per line, `x*y*z`). `-` reads standard input.
The kind is taken from the extension (.cx, .id), then from the content (a `*`
means ideal), unless --kind is given. Analyses of an ideal I run on its facet
complex, so every subcommand studies k[x]/I with I the facet ideal.

Exit codes: 0 success, 1 failed property or negative --assert verdict,
2 usage or parse error, 3 resource cap exceeded."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Report format. JSON carries `"schema":"facetforest/1"`; text is for
    /// reading only.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Coefficient field: `q` for the rationals, or a prime as `2`, `3`, `5`
    /// or `p:<prime>`.
    #[arg(long, default_value = "q", value_parser = parse_field, global = true)]
    pub field: FieldSpec,

    /// Worker threads for the parallel parts.
    #[arg(long, env = "FACETFOREST_THREADS", global = true)]
    pub threads: Option<usize>,

    /// Exit 1 unless the input has this property.
    #[arg(long = "assert", value_enum, global = true)]
    pub assertion: Option<Assertion>,

    /// Input kind, overriding detection.
    #[arg(long, value_enum, global = true)]
    pub kind: Option<InputKind>,

    /// Largest facet count for exhaustive subcomplex checks.
    #[arg(long, global = true)]
    pub subcomplex_bound: Option<usize>,

    /// Largest variable count for Koszul computations.
    #[arg(long, global = true)]
    pub max_variables: Option<usize>,

    /// Largest generator count for Koszul computations.
    #[arg(long, global = true)]
    pub max_generators: Option<usize>,

    /// Search-box enlargements before a Koszul computation gives up.
    #[arg(long, global = true)]
    pub box_rounds: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Assertion {
    Tree,
    Cm,
    SlidingDepth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Complex,
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    FacetIdeal,
    NonfaceIdeal,
    FacetComplex,
    NonfaceComplex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Facets, dimension, purity and components.
    Info { input: String },
    /// Translate between complexes and ideals; writes the canonical file.
    Convert {
        input: String,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Minimal vertex covers.
    Covers { input: String },
    /// Minimal primes of the facet ideal.
    Primes { input: String },
    /// Height and Krull dimension of k[x]/I.
    Dim { input: String },
    /// Tree and forest check with a leaf order or a leafless subcomplex.
    IsTree { input: String },
    /// Cohen–Macaulay test by Reisner's criterion.
    Cm { input: String },
    /// Depth of k[x]/I.
    Depth { input: String },
    /// Depths of the Koszul homology modules against n - q + i.
    SlidingDepth { input: String },
    /// Whether every nonzero Koszul homology module is Cohen–Macaulay.
    StronglyCm { input: String },
    /// Run the property suite on enumerated or random instances.
    Verify {
        /// Comma-separated property codes; all when omitted.
        #[arg(long, value_delimiter = ',', value_parser = parse_property)]
        props: Vec<PropertyId>,
        #[arg(long, default_value_t = 4)]
        vertices: usize,
        #[arg(long, default_value_t = 4)]
        max_facets: usize,
        /// Random instances instead of exhaustive enumeration.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let lower = s.trim().to_ascii_lowercase();
    if matches!(lower.as_str(), "q" | "qq" | "0" | "rational" | "rationals") {
        return Ok(FieldSpec::Rational);
    }
    let digits = lower.strip_prefix("p:").unwrap_or(&lower);
    let p: u64 = digits.parse().map_err(|_| format!("not a field: `{s}`"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

fn parse_property(s: &str) -> Result<PropertyId, String> {
    PropertyId::parse(s).ok_or_else(|| {
        let known: Vec<&str> = PropertyId::ALL.iter().map(|p| p.code()).collect();
        format!(
            "unknown property `{s}`; expected one of {}",
            known.join(", ")
        )
    })
}

/// Failures and the exit code each maps to.
#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {error}")]
    Parse { path: String, error: ParseError },
    #[error("{0}")]
    Core(Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(Error::ResourceLimit { .. } | Error::BoxUnstable { .. }) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome<T> = Result<T, Failure>;

/// The parsed input: the complex studied, and the ideal it was given as,
/// if any.
struct Input {
    complex: SimplicialComplex,
    ideal: Option<MonomialIdeal>,
}

impl Input {
    fn facet_ideal(&self) -> Outcome<MonomialIdeal> {
        match &self.ideal {
            Some(i) => Ok(i.clone()),
            None => Ok(facet_ideal(&self.complex)?),
        }
    }
}

/// A result in both output formats.
struct Report {
    json: Map<String, Value>,
    text: String,
}

impl Report {
    fn new() -> Self {
        let mut json = Map::new();
        json.insert("schema".into(), json!(SCHEMA));
        Report {
            json,
            text: String::new(),
        }
    }

    fn put(&mut self, key: &str, value: Value) {
        self.json.insert(key.into(), value);
    }

    fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }
}

fn names_list(complex: &SimplicialComplex, sets: &[VertexSet]) -> Vec<Vec<String>> {
    sets.iter().map(|s| complex.names(*s)).collect()
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

fn braces_all(sets: &[Vec<String>]) -> String {
    sets.iter().map(|s| braces(s)).collect::<Vec<_>>().join(" ")
}

fn monomials(ideal: &MonomialIdeal) -> Vec<String> {
    ideal
        .generator_names()
        .iter()
        .map(|g| {
            if g.is_empty() {
                "1".into()
            } else {
                g.join("*")
            }
        })
        .collect()
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_OK;
        }
    };
    if let Some(n) = cli.global.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let g = &cli.global;
    if g.subcomplex_bound.is_some()
        || g.max_variables.is_some()
        || g.max_generators.is_some()
        || g.box_rounds.is_some()
    {
        let _ = writeln!(
            err,
            "warning: resource caps overridden; run time and memory may grow quickly"
        );
    }
    match execute(&cli, stdin, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn limits(g: &Global) -> Limits {
    let mut limits = Limits::default();
    if let Some(b) = g.subcomplex_bound {
        limits.subcomplex_bound = b;
    }
    let k: &mut KoszulLimits = &mut limits.koszul;
    if let Some(v) = g.max_variables {
        k.max_variables = v;
    }
    if let Some(v) = g.max_generators {
        k.max_generators = v;
    }
    if let Some(v) = g.box_rounds {
        k.box_rounds = v;
    }
    limits
}

fn read_input(
    path: &str,
    kind: Option<InputKind>,
    stdin: &mut dyn Read,
) -> Outcome<(Kind, String)> {
    let text = if path == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
    };
    let kind = match kind {
        Some(InputKind::Complex) => Kind::Complex,
        Some(InputKind::Ideal) => Kind::Ideal,
        None => Kind::detect((path != "-").then_some(path), &text),
    };
    Ok((kind, text))
}

fn load(path: &str, kind: Option<InputKind>, stdin: &mut dyn Read) -> Outcome<Input> {
    let (kind, text) = read_input(path, kind, stdin)?;
    let parse_failure = |error| Failure::Parse {
        path: path.to_string(),
        error,
    };
    Ok(match kind {
        Kind::Complex => Input {
            complex: parse_complex(&text).map_err(parse_failure)?,
            ideal: None,
        },
        Kind::Ideal => {
            let ideal = parse_ideal(&text).map_err(parse_failure)?;
            Input {
                complex: facet_complex(&ideal),
                ideal: Some(ideal),
            }
        }
    })
}

fn input_path(command: &Command) -> Option<&str> {
    match command {
        Command::Info { input }
        | Command::Convert { input, .. }
        | Command::Covers { input }
        | Command::Primes { input }
        | Command::Dim { input }
        | Command::IsTree { input }
        | Command::Cm { input }
        | Command::Depth { input }
        | Command::SlidingDepth { input }
        | Command::StronglyCm { input } => Some(input),
        Command::Verify { .. } => None,
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome<i32> {
    let g = &cli.global;
    let limits = limits(g);
    let Some(path) = input_path(&cli.command) else {
        return run_verify(cli, &limits, out);
    };
    let input = load(path, g.kind, stdin)?;

    if let Command::Convert { to, .. } = &cli.command {
        let text = convert(&input, *to)?;
        emit_raw(out, &text)?;
        return assert_verdict(g, &input, &limits);
    }

    let mut report = Report::new();
    let cx = &input.complex;
    match &cli.command {
        Command::Info { .. } => info(&input, &mut report)?,
        Command::Covers { .. } => {
            let covers = names_list(cx, &minimal_vertex_covers(cx));
            report.put("covers", json!(covers));
            report.put("covering_number", json!(covering_number(cx)));
            report.put("unmixed", json!(is_unmixed(cx)));
            report.line(format!("minimal covers: {}", braces_all(&covers)));
            report.line(format!("covering number: {}", covering_number(cx)));
            report.line(format!("unmixed: {}", is_unmixed(cx)));
        }
        Command::Primes { .. } => {
            let ideal = input.facet_ideal()?;
            let primes: Vec<Vec<String>> = minimal_primes(&ideal)
                .iter()
                .map(|p| ideal.names(*p))
                .collect();
            report.put("primes", json!(primes));
            report.put("height", json!(height(&ideal)));
            for p in &primes {
                report.line(format!("({})", p.join(",")));
            }
        }
        Command::Dim { .. } => {
            let ideal = input.facet_ideal()?;
            report.put("height", json!(height(&ideal)));
            report.put("dim", json!(dim_quotient(&ideal)));
            report.line(format!(
                "height {}, dim {}",
                height(&ideal),
                dim_quotient(&ideal)
            ));
        }
        Command::IsTree { .. } => {
            let verdict = is_forest(cx, limits.subcomplex_bound)?;
            tree_report(cx, &verdict, &mut report);
        }
        Command::Cm { .. } => {
            let r = is_cm(cx, g.field)?;
            cm_report(&input, &r, &mut report);
        }
        Command::Depth { .. } => {
            let ideal = input.facet_ideal()?;
            let depth = depth_sr(cx, g.field)?;
            let dim = dim_quotient(&ideal);
            report.put("field", json!(g.field.to_string()));
            report.put("depth", json!(depth));
            report.put("dim", json!(dim));
            report.put("cm", json!(depth == dim));
            report.line(format!("depth {depth}, dim {dim} over {}", g.field));
        }
        Command::SlidingDepth { .. } => {
            let r = sliding_depth_check(&input.facet_ideal()?, g.field, &limits.koszul)?;
            depth_report(&r, false, &mut report);
        }
        Command::StronglyCm { .. } => {
            let r = strongly_cm_check(&input.facet_ideal()?, g.field, &limits.koszul)?;
            depth_report(&r, true, &mut report);
        }
        Command::Convert { .. } | Command::Verify { .. } => unreachable!("handled above"),
    }
    emit(out, g.format, &report)?;
    assert_verdict(g, &input, &limits)
}

fn emit_raw(out: &mut dyn Write, text: &str) -> Outcome<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(format!("writing output: {e}")))
}

fn emit(out: &mut dyn Write, format: Format, report: &Report) -> Outcome<()> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string(&report.json).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => report.text.clone(),
    };
    emit_raw(out, &text)
}

fn assert_verdict(g: &Global, input: &Input, limits: &Limits) -> Outcome<i32> {
    let Some(assertion) = g.assertion else {
        return Ok(EXIT_OK);
    };
    let holds = match assertion {
        Assertion::Tree => {
            input.complex.is_connected() && is_forest(&input.complex, limits.subcomplex_bound)?.tree
        }
        Assertion::Cm => is_cm(&input.complex, g.field)?.cm,
        Assertion::SlidingDepth => {
            sliding_depth_check(&input.facet_ideal()?, g.field, &limits.koszul)?.sliding_depth
        }
    };
    Ok(if holds { EXIT_OK } else { EXIT_NEGATIVE })
}

fn convert(input: &Input, to: Target) -> Outcome<String> {
    let wrong = |want: &str| {
        let name = to
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        Failure::Usage(format!("--to {name} needs {want} input"))
    };
    match (to, &input.ideal) {
        (Target::FacetIdeal, None) => Ok(write_ideal(&facet_ideal(&input.complex)?)),
        (Target::NonfaceIdeal, None) => Ok(write_ideal(&nonface_ideal(&input.complex)?)),
        (Target::FacetComplex, Some(i)) => Ok(write_complex(&facet_complex(i))),
        (Target::NonfaceComplex, Some(i)) => Ok(write_complex(&nonface_complex(i))),
        (Target::FacetIdeal | Target::NonfaceIdeal, Some(_)) => Err(wrong("complex")),
        (Target::FacetComplex | Target::NonfaceComplex, None) => Err(wrong("ideal")),
    }
}

fn info(input: &Input, report: &mut Report) -> Outcome<()> {
    let cx = &input.complex;
    let u = cx.universe();
    let facets = cx.facet_names();
    let ghosts = cx.names(cx.ghost_vertices());
    report.put(
        "kind",
        json!(if input.ideal.is_some() {
            "ideal"
        } else {
            "complex"
        }),
    );
    report.put("vertices", json!(u.names()));
    report.put("ghosts", json!(ghosts));
    report.put("facets", json!(facets));
    report.put("facet_count", json!(cx.facet_count()));
    report.put("dim", json!(cx.dim()));
    report.put("pure", json!(cx.is_pure()));
    report.put("components", json!(cx.component_facet_groups().len()));
    if let Some(i) = &input.ideal {
        report.put("generators", json!(monomials(i)));
        report.line(format!("ideal ({})", monomials(i).join(", ")));
    }
    report.line(format!("vertices: {}", u.names().join(",")));
    if !ghosts.is_empty() {
        report.line(format!("ghosts: {}", ghosts.join(",")));
    }
    report.line(format!("facets: {}", braces_all(&facets)));
    report.line(format!(
        "dim {}, {}, {} component(s)",
        cx.dim(),
        if cx.is_pure() { "pure" } else { "not pure" },
        cx.component_facet_groups().len()
    ));
    Ok(())
}

fn tree_report(cx: &SimplicialComplex, verdict: &TreeVerdict, report: &mut Report) {
    let components = cx.component_facet_groups().len();
    let connected = components == 1;
    report.put("tree", json!(connected && verdict.tree));
    report.put("forest", json!(verdict.tree));
    report.put("connected", json!(connected));
    report.put("components", json!(components));
    report.line(format!(
        "tree: {}, forest: {}, {components} component(s)",
        connected && verdict.tree,
        verdict.tree
    ));
    match &verdict.certificate {
        TreeCertificate::LeafOrder(order) => {
            let order = names_list(cx, order);
            report.line(format!("leaf order: {}", braces_all(&order)));
            report.put("leaf_order", json!(order));
        }
        TreeCertificate::FailingSubcomplex { facets, rejections } => {
            let facets = names_list(cx, facets);
            report.line(format!(
                "subcomplex without a leaf: {}",
                braces_all(&facets)
            ));
            let rejections: Vec<Value> = rejections
                .iter()
                .map(|r| {
                    let meets: Vec<Value> = r
                        .intersections
                        .iter()
                        .map(|(g, m)| json!({"facet": cx.names(*g), "intersection": cx.names(*m)}))
                        .collect();
                    let mut line = format!("  {} meets", braces(&cx.names(r.facet)));
                    for (g, m) in &r.intersections {
                        let _ = write!(
                            line,
                            " {} in {};",
                            braces(&cx.names(*g)),
                            braces(&cx.names(*m))
                        );
                    }
                    report.line(line.trim_end_matches(';'));
                    json!({"facet": cx.names(r.facet), "intersections": meets})
                })
                .collect();
            report.put("leafless_subcomplex", json!(facets));
            report.put("rejections", json!(rejections));
        }
    }
}

fn cm_report(input: &Input, r: &CmReport, report: &mut Report) {
    report.put("cm", json!(r.cm));
    report.put("field", json!(r.field.to_string()));
    report.put("depth", json!(r.depth));
    report.put("dim", json!(r.dim));
    report.line(format!(
        "{} over {}: depth {}, dim {}",
        if r.cm {
            "Cohen-Macaulay"
        } else {
            "not Cohen-Macaulay"
        },
        r.field,
        r.depth,
        r.dim
    ));
    if let Some(w) = &r.witness {
        // witness faces live in the non-face complex, over the same universe
        let face = input.complex.names(w.face);
        report.line(format!(
            "link of {} has homology in degree {}",
            braces(&face),
            w.degree
        ));
        report.put("witness", json!({"face": face, "degree": w.degree}));
    }
}

fn depth_report(r: &DepthReport, strongly: bool, report: &mut Report) {
    report.put("field", json!(r.field.to_string()));
    report.put("n", json!(r.n));
    report.put("q", json!(r.q));
    report.put("dim", json!(r.dim_quotient));
    report.put("sliding_depth", json!(r.sliding_depth));
    if strongly {
        report.put("strongly_cm", json!(r.strongly_cm));
    }
    let per_i: Vec<Value> = r
        .per_i
        .iter()
        .map(|m| {
            let mut v = json!({
                "i": m.i,
                "nonzero": m.nonzero,
                "generators": m.generators,
                "relations": m.relations,
                "depth": m.depth,
                "bound": m.bound,
                "pass": m.pass,
                "homology_box": m.homology_box.exponents(),
                "betti_box": m.betti_box.exponents(),
            });
            if strongly {
                v["cm"] = json!(m.cm);
            }
            v
        })
        .collect();
    report.put("per_i", json!(per_i));
    report.line(format!(
        "n = {}, q = {}, dim R/I = {} over {}",
        r.n, r.q, r.dim_quotient, r.field
    ));
    for m in &r.per_i {
        let depth = m.depth.map_or("-".to_string(), |d| d.to_string());
        report.line(format!(
            "H_{}: {} generators, {} relations, depth {depth}, bound {}, box {}{}",
            m.i,
            m.generators,
            m.relations,
            m.bound,
            m.homology_box,
            if m.pass { "" } else { "  FAIL" }
        ));
    }
    report.line(format!("sliding depth: {}", r.sliding_depth));
    if strongly {
        report.line(format!(
            "strongly Cohen-Macaulay: {}",
            r.strongly_cm.map_or("-".to_string(), |b| b.to_string())
        ));
    }
}

fn run_verify(cli: &Cli, limits: &Limits, out: &mut dyn Write) -> Outcome<i32> {
    let Command::Verify {
        props,
        vertices,
        max_facets,
        random,
        seed,
    } = &cli.command
    else {
        unreachable!("only verify has no input");
    };
    let props: Vec<PropertyId> = if props.is_empty() {
        PropertyId::ALL.to_vec()
    } else {
        props.clone()
    };
    let scope = match random {
        Some(count) => Scope::Random {
            count: *count,
            seed: *seed,
            max_vertices: *vertices,
            max_facets: *max_facets,
        },
        None => Scope::Exhaustive {
            max_vertices: *vertices,
            max_facets: *max_facets,
        },
    };
    let mut fields = vec![cli.global.field];
    if cli.global.field != FieldSpec::Prime(2) {
        fields.push(FieldSpec::Prime(2));
    }
    let config = VerifyConfig {
        cm_fields: fields,
        koszul_field: cli.global.field,
        limits: *limits,
    };
    let mut report = Report::new();
    report.put(
        "scope",
        match scope {
            Scope::Exhaustive { .. } => json!({"mode": "exhaustive", "vertices": vertices, "max_facets": max_facets}),
            Scope::Random { .. } => {
                json!({"mode": "random", "count": random, "seed": seed, "vertices": vertices, "max_facets": max_facets})
            }
        },
    );
    let mut all_ok = true;
    for p in props {
        let r = verify(p, scope, &config)?;
        all_ok &= r.ok();
        report.line(format!(
            "{} {}: {} cases, {} passed, {} failed, {} skipped",
            if r.ok() { "PASS" } else { "FAIL" },
            r.property,
            r.cases,
            r.passed,
            r.failed,
            r.skipped
        ));
        for f in r.failures.iter().take(3) {
            report.line(format!("  {}", f.detail));
            for l in f.instance.lines() {
                report.line(format!("    {l}"));
            }
        }
        report.put(
            r.property,
            serde_json::to_value(&r).expect("report serializes"),
        );
    }
    emit(out, cli.global.format, &report)?;
    Ok(if all_ok { EXIT_OK } else { EXIT_NEGATIVE })
}
