//! Multigraded Koszul homology of a square-free generator sequence, Betti
//! numbers and depth of the homology modules, sliding depth and strong
//! Cohen–Macaulayness.
//!
//! Everything is computed one multidegree at a time. In degree `a` the slice
//! `𝒦_{i,a}` has one basis vector per `e_S` with `deg e_S ≤ a` (the monomial
//! cofactor is then forced), so a chain in any degree is a coefficient vector
//! over the `C(q,i)` subsets and multiplication by a monomial is the identity
//! on coordinates.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::covers::dim_quotient;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg::{nullspace, Field, FieldSpec, IntMatrix, Matrix, PrimeField, Rationals, Span};
use crate::vertex::VertexSet;

/// Caps on Koszul computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KoszulLimits {
    pub max_variables: usize,
    pub max_generators: usize,
    /// How many times the search box may be enlarged by `1⃗`.
    pub box_rounds: usize,
}

impl Default for KoszulLimits {
    fn default() -> Self {
        KoszulLimits {
            max_variables: 8,
            max_generators: 6,
            box_rounds: 3,
        }
    }
}

/// Exponent vector in `ℤ^n_{≥0}`. The derived order is lexicographic, which
/// refines the componentwise partial order [`Multidegree::le`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn new(exponents: Vec<u32>) -> Self {
        Multidegree(exponents)
    }

    pub fn zero(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    /// Square-free degree of the monomial with support `set`.
    pub fn of_set(set: VertexSet, n: usize) -> Self {
        Multidegree((0..n).map(|k| set.contains(k) as u32).collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &Multidegree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Multidegree) -> Multidegree {
        Multidegree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, if `other ≤ self`.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Multidegree)
    }

    /// `self + k·1⃗`.
    pub fn shifted(&self, k: u32) -> Multidegree {
        Multidegree(self.0.iter().map(|a| a + k).collect())
    }

    pub fn support(&self) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, a)| **a > 0)
            .map(|(k, _)| k)
            .collect()
    }

    /// All degrees in `[0, self]`, in increasing lexicographic order (so
    /// every degree comes after everything below it).
    pub fn box_points(&self) -> BoxPoints {
        BoxPoints {
            top: self.0.clone(),
            next: Some(vec![0; self.0.len()]),
        }
    }

    /// Number of degrees in `[0, self]`.
    pub fn box_size(&self) -> usize {
        self.0.iter().map(|a| *a as usize + 1).product()
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

pub struct BoxPoints {
    top: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl Iterator for BoxPoints {
    type Item = Multidegree;

    fn next(&mut self) -> Option<Multidegree> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if succ[k] < self.top[k] {
                succ[k] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(Multidegree(current))
    }
}

/// `(−1)^{#{l ∈ S : l < j}}` as `±1`.
fn sign(j: usize, s: u32) -> i64 {
    if (s & ((1u32 << j) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All `i`-subsets of `0..q` as bitmasks, in increasing numeric order.
fn subsets_of_size(q: usize, i: usize) -> Vec<u32> {
    if i > q {
        return Vec::new();
    }
    (0u32..1 << q)
        .filter(|s| s.count_ones() as usize == i)
        .collect()
}

/// The Koszul complex on the generators `M_1, …, M_q` of a monomial ideal.
#[derive(Debug, Clone)]
pub struct KoszulDescriptor {
    ideal: MonomialIdeal,
    /// `containing[k]`: the generators divisible by the `k`-th variable.
    containing: Vec<u32>,
}

impl KoszulDescriptor {
    pub fn new(ideal: &MonomialIdeal, limits: &KoszulLimits) -> Result<Self> {
        let n = ideal.variable_count();
        let q = ideal.generator_count();
        if n > limits.max_variables {
            return Err(Error::ResourceLimit {
                what: "variable count",
                requested: n,
                limit: limits.max_variables,
            });
        }
        if q > limits.max_generators.min(31) {
            return Err(Error::ResourceLimit {
                what: "generator count",
                requested: q,
                limit: limits.max_generators.min(31),
            });
        }
        let containing = (0..n)
            .map(|k| {
                ideal
                    .generators()
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| g.contains(k))
                    .fold(0u32, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Ok(KoszulDescriptor {
            ideal: ideal.clone(),
            containing,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn variable_count(&self) -> usize {
        self.containing.len()
    }

    pub fn generator_count(&self) -> usize {
        self.ideal.generator_count()
    }

    /// `C(q, i)`.
    pub fn rank(&self, i: usize) -> usize {
        subsets_of_size(self.generator_count(), i).len()
    }

    /// The basis `e_S`, `|S| = i`, as generator-index bitmasks.
    pub fn basis(&self, i: usize) -> Vec<u32> {
        subsets_of_size(self.generator_count(), i)
    }

    /// `deg e_S = Σ_{j∈S} deg M_j`.
    pub fn basis_degree(&self, s: u32) -> Multidegree {
        Multidegree(
            self.containing
                .iter()
                .map(|c| (c & s).count_ones())
                .collect(),
        )
    }

    /// `σ`, the degree of `e_{[q]}`.
    pub fn sigma(&self) -> Multidegree {
        self.basis_degree((1u32 << self.generator_count()) - 1)
    }

    fn admits(&self, s: u32, a: &Multidegree) -> bool {
        self.containing
            .iter()
            .zip(&a.0)
            .all(|(c, e)| (c & s).count_ones() <= *e)
    }

    /// Basis of `𝒦_{i,a}`: the `e_S` with `deg e_S ≤ a`.
    pub fn slice_basis(&self, i: usize, a: &Multidegree) -> Vec<u32> {
        self.basis(i)
            .into_iter()
            .filter(|s| self.admits(*s, a))
            .collect()
    }

    /// `∂_{i,a} : 𝒦_{i,a} → 𝒦_{i−1,a}` in the slice bases. For `i = 0` this
    /// is the map to the zero module.
    pub fn differential(&self, i: usize, a: &Multidegree) -> IntMatrix {
        let cols = self.slice_basis(i, a);
        if i == 0 {
            return IntMatrix::zeros(0, cols.len());
        }
        let rows = self.slice_basis(i - 1, a);
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (c, s) in cols.iter().enumerate() {
            for j in 0..self.generator_count() {
                if s & 1 << j == 0 {
                    continue;
                }
                let r = rows
                    .binary_search(&(s & !(1 << j)))
                    .expect("faces of an admitted subset are admitted");
                m.set(r, c, sign(j, *s));
            }
        }
        m
    }

    /// `∂_i` on all of `𝒦_i` in the global subset coordinates.
    fn global_differential(&self, i: usize) -> IntMatrix {
        let top = self.sigma();
        self.differential(i, &top)
    }
}

/// The degree-`a` slice `𝒦_{i+1,a} → 𝒦_{i,a} → 𝒦_{i−1,a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulSlice {
    pub index: usize,
    pub degree: Multidegree,
    pub basis: Vec<u32>,
    /// `∂_{i+1,a}`.
    pub incoming: IntMatrix,
    /// `∂_{i,a}`.
    pub outgoing: IntMatrix,
}

impl KoszulSlice {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn kernel_rank(&self, field: FieldSpec) -> usize {
        self.dimension() - self.outgoing.rank(field)
    }

    /// `dim_k H_i(𝒦)_a`.
    pub fn homology_rank(&self, field: FieldSpec) -> usize {
        self.kernel_rank(field) - self.incoming.rank(field)
    }
}

/// Degree-`a` slice of the Koszul complex on the generators of `ideal`.
/// Indices above `q` give the zero complex.
///
/// # Panics
/// If `a` does not have one exponent per variable.
pub fn koszul_component(ideal: &MonomialIdeal, i: usize, a: &Multidegree) -> KoszulSlice {
    assert_eq!(a.len(), ideal.variable_count(), "multidegree length");
    let limits = KoszulLimits {
        max_variables: usize::MAX,
        max_generators: 31,
        box_rounds: 0,
    };
    let kd = KoszulDescriptor::new(ideal, &limits).expect("uncapped");
    KoszulSlice {
        index: i,
        degree: a.clone(),
        basis: kd.slice_basis(i, a),
        incoming: kd.differential(i + 1, a),
        outgoing: kd.differential(i, a),
    }
}

/// Homogeneous relation: `Σ c_j · x^{degree − deg g_j} · g_j = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation<E> {
    pub degree: Multidegree,
    /// `(generator index, scalar)`, nonzero scalars only.
    pub coefficients: Vec<(usize, E)>,
}

/// Finitely generated `ℤ^n`-graded module over `k[x_1, …, x_n]` given by
/// homogeneous generators and homogeneous relations.
#[derive(Debug, Clone, PartialEq)]
pub struct MultigradedPresentation<E> {
    n: usize,
    generator_degrees: Vec<Multidegree>,
    relations: Vec<Relation<E>>,
}

impl<E: Clone> MultigradedPresentation<E> {
    /// Checks lengths and that every relation is homogeneous.
    pub fn new(
        n: usize,
        generator_degrees: Vec<Multidegree>,
        relations: Vec<Relation<E>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::MalformedInput(msg));
        if let Some(d) = generator_degrees.iter().find(|d| d.len() != n) {
            return bad(format!("generator degree {d} is not in {n} variables"));
        }
        for r in &relations {
            if r.degree.len() != n {
                return bad(format!(
                    "relation degree {} is not in {n} variables",
                    r.degree
                ));
            }
            for (g, _) in &r.coefficients {
                match generator_degrees.get(*g) {
                    None => return bad(format!("relation uses missing generator {g}")),
                    Some(d) if !d.le(&r.degree) => {
                        return bad(format!(
                        "relation of degree {} is not homogeneous at generator {g} of degree {d}",
                        r.degree
                    ))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(MultigradedPresentation {
            n,
            generator_degrees,
            relations,
        })
    }

    /// `R^rank` generated in degree `0⃗`.
    pub fn free(n: usize, rank: usize) -> Self {
        MultigradedPresentation {
            n,
            generator_degrees: vec![Multidegree::zero(n); rank],
            relations: Vec::new(),
        }
    }

    /// `R/I` for a square-free monomial ideal `I`.
    pub fn quotient<F: Field<Elem = E>>(f: &F, ideal: &MonomialIdeal) -> Self {
        let n = ideal.variable_count();
        MultigradedPresentation {
            n,
            generator_degrees: vec![Multidegree::zero(n)],
            relations: ideal
                .generators()
                .iter()
                .map(|g| Relation {
                    degree: Multidegree::of_set(*g, n),
                    coefficients: vec![(0, f.one())],
                })
                .collect(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.n
    }

    pub fn generator_degrees(&self) -> &[Multidegree] {
        &self.generator_degrees
    }

    pub fn relations(&self) -> &[Relation<E>] {
        &self.relations
    }

    pub fn is_zero(&self) -> bool {
        self.generator_degrees.is_empty()
    }

    /// Monomial part of a relation entry.
    pub fn entry_monomial(&self, relation: usize, generator: usize) -> Multidegree {
        let r = &self.relations[relation];
        r.degree
            .checked_sub(&self.generator_degrees[generator])
            .expect("homogeneous relation")
    }

    /// Join of all generator and relation degrees; the module is determined
    /// by its restriction to `[0, join]`.
    pub fn degree_join(&self) -> Multidegree {
        self.generator_degrees
            .iter()
            .chain(self.relations.iter().map(|r| &r.degree))
            .fold(Multidegree::zero(self.n), |acc, d| acc.join(d))
    }

    /// Sorted generator and relation degrees.
    pub fn degree_profile(&self) -> (Vec<Multidegree>, Vec<Multidegree>) {
        let mut g = self.generator_degrees.clone();
        let mut r: Vec<Multidegree> = self.relations.iter().map(|r| r.degree.clone()).collect();
        g.sort();
        r.sort();
        (g, r)
    }

    fn profile_text(&self) -> String {
        let (g, r) = self.degree_profile();
        format!("generators {g:?}; relations {r:?}")
    }
}

/// `H_i(𝒦)` with the cycles chosen for its generators.
#[derive(Debug, Clone, PartialEq)]
pub struct KoszulHomology<E> {
    pub index: usize,
    pub presentation: MultigradedPresentation<E>,
    /// Basis of `𝒦_i` indexing the cycle coordinates.
    pub basis: Vec<u32>,
    /// One cycle per generator, in the degree of that generator.
    pub cycles: Vec<Vec<E>>,
    /// The box `[0, top]` whose result was accepted.
    pub search_box: Multidegree,
}

/// Cached cycles and boundaries, keyed by which basis vectors are admissible.
type PatternCache<E> = BTreeMap<(Vec<usize>, Vec<usize>), Pattern<E>>;

struct Pattern<E> {
    cycles: Vec<Vec<E>>,
    boundaries: Vec<Vec<E>>,
}

fn homology_in_box<F: Field>(
    f: &F,
    kd: &KoszulDescriptor,
    i: usize,
    top: &Multidegree,
) -> KoszulHomology<F::Elem> {
    let n = kd.variable_count();
    let basis = kd.basis(i);
    let above = kd.basis(i + 1);
    let dim = basis.len();
    let out = kd.global_differential(i).to_field(f);
    let inc = kd.global_differential(i + 1).to_field(f);
    let inc_columns: Vec<Vec<F::Elem>> = (0..inc.cols()).map(|c| inc.column(c)).collect();

    let mut patterns: PatternCache<F::Elem> = BTreeMap::new();
    let mut gens: Vec<(Multidegree, Vec<F::Elem>)> = Vec::new();
    let mut rels: Vec<Relation<F::Elem>> = Vec::new();

    for b in top.box_points() {
        let allowed: Vec<usize> = (0..dim).filter(|c| kd.admits(basis[*c], &b)).collect();
        if allowed.is_empty() {
            continue;
        }
        let allowed_above: Vec<usize> = (0..above.len())
            .filter(|c| kd.admits(above[*c], &b))
            .collect();
        let pattern = patterns
            .entry((allowed.clone(), allowed_above.clone()))
            .or_insert_with(|| {
                let restricted: Vec<Vec<F::Elem>> =
                    allowed.iter().map(|c| out.column(*c)).collect();
                let local = Matrix::from_columns(out.rows(), &restricted, f.zero());
                let cycles = nullspace(f, &local)
                    .into_iter()
                    .map(|v| {
                        let mut g = vec![f.zero(); dim];
                        for (k, c) in allowed.iter().enumerate() {
                            g[*c] = v[k].clone();
                        }
                        g
                    })
                    .collect();
                let mut span = Span::new(dim);
                let boundaries = allowed_above
                    .iter()
                    .map(|c| &inc_columns[*c])
                    .filter(|v| span.insert(f, v))
                    .cloned()
                    .collect();
                Pattern { cycles, boundaries }
            });

        let lower: Vec<usize> = (0..gens.len()).filter(|j| gens[*j].0.le(&b)).collect();
        let mut span = Span::new(dim);
        for v in pattern
            .boundaries
            .iter()
            .chain(lower.iter().map(|j| &gens[*j].1))
        {
            span.insert(f, v);
        }
        for z in &pattern.cycles {
            if span.insert(f, z) {
                gens.push((b.clone(), z.clone()));
            }
        }
        if lower.is_empty() {
            continue;
        }

        let columns: Vec<Vec<F::Elem>> = lower
            .iter()
            .map(|j| gens[*j].1.clone())
            .chain(pattern.boundaries.iter().cloned())
            .collect();
        let kernel = nullspace(f, &Matrix::from_columns(dim, &columns, f.zero()));
        if kernel.is_empty() {
            continue;
        }
        let mut known = Span::new(lower.len());
        for r in rels.iter().filter(|r| r.degree.le(&b)) {
            let mut v = vec![f.zero(); lower.len()];
            for (g, c) in &r.coefficients {
                let p = lower
                    .binary_search(g)
                    .expect("relation generators lie below");
                v[p] = c.clone();
            }
            known.insert(f, &v);
        }
        for k in kernel {
            let projected = &k[..lower.len()];
            if known.insert(f, projected) {
                rels.push(Relation {
                    degree: b.clone(),
                    coefficients: projected
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !f.is_zero(c))
                        .map(|(p, c)| (lower[p], c.clone()))
                        .collect(),
                });
            }
        }
    }

    let (degrees, cycles) = gens.into_iter().unzip();
    KoszulHomology {
        index: i,
        presentation: MultigradedPresentation {
            n,
            generator_degrees: degrees,
            relations: rels,
        },
        basis,
        cycles,
        search_box: top.clone(),
    }
}

/// Reruns `compute` on `[0, start + k·1⃗]` for `k = 0, 1, …` until two
/// consecutive boxes agree on `key`, or fails after `rounds` enlargements.
fn stable<T, K: PartialEq>(
    start: &Multidegree,
    rounds: usize,
    mut compute: impl FnMut(&Multidegree) -> T,
    key: impl Fn(&T) -> K,
    describe: impl Fn(&T) -> String,
) -> Result<T> {
    let mut previous = compute(start);
    for k in 1..=rounds as u32 {
        let next = compute(&start.shifted(k));
        if key(&next) == key(&previous) {
            return Ok(previous);
        }
        if k as usize == rounds {
            return Err(Error::BoxUnstable {
                rounds,
                previous: describe(&previous),
                last: describe(&next),
            });
        }
        previous = next;
    }
    Ok(previous)
}

/// Minimal generators and relations of `H_i(𝒦)`, found degreewise over
/// `[0, σ]` and validated against the enlarged boxes.
pub fn koszul_homology<F: Field>(
    f: &F,
    kd: &KoszulDescriptor,
    i: usize,
    limits: &KoszulLimits,
) -> Result<KoszulHomology<F::Elem>> {
    stable(
        &kd.sigma(),
        limits.box_rounds,
        |top| homology_in_box(f, kd, i, top),
        |h| h.presentation.degree_profile(),
        |h| format!("box {}: {}", h.search_box, h.presentation.profile_text()),
    )
}

pub fn koszul_homology_presentation<F: Field>(
    f: &F,
    ideal: &MonomialIdeal,
    i: usize,
    limits: &KoszulLimits,
) -> Result<MultigradedPresentation<F::Elem>> {
    let kd = KoszulDescriptor::new(ideal, limits)?;
    Ok(koszul_homology(f, &kd, i, limits)?.presentation)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiEntry {
    pub homological_degree: usize,
    pub degree: Multidegree,
    pub rank: usize,
}

/// Multigraded Betti numbers `β_{j,a} = dim_k Tor_j(M, k)_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: Vec<BettiEntry>,
    pub search_box: Multidegree,
}

impl BettiTable {
    /// `None` for the zero module.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.homological_degree).max()
    }

    pub fn total(&self, j: usize) -> usize {
        self.entries
            .iter()
            .filter(|e| e.homological_degree == j)
            .map(|e| e.rank)
            .sum()
    }

    fn text(&self) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("{}@{}x{}", e.homological_degree, e.degree, e.rank))
            .collect();
        format!("box {}: [{}]", self.search_box, parts.join(" "))
    }
}

struct Block {
    t: u64,
    gens: Vec<usize>,
    offset: usize,
}

/// `β_{j,a}` for all `j`, from the Koszul complex on the variables tensored
/// with `M`. With `W_j = ⊕_{|T|=j} F_{a−e_T}` and `B_j` the relations inside
/// it, `C_j = W_j/B_j` and the induced differential has rank
/// `rank[D_j | B_{j−1}] − rank B_{j−1}`.
fn betti_at<F: Field>(f: &F, m: &MultigradedPresentation<F::Elem>, a: &Multidegree) -> Vec<usize> {
    let n = m.n;
    let supp = a.support().bits();
    let mut blocks: Vec<Vec<Block>> = (0..=n).map(|_| Vec::new()).collect();
    let mut sizes = vec![0usize; n + 2];
    let mut t = 0u64;
    loop {
        let c = Multidegree(
            a.0.iter()
                .enumerate()
                .map(|(k, e)| e - ((t >> k) & 1) as u32)
                .collect(),
        );
        let gens: Vec<usize> = (0..m.generator_degrees.len())
            .filter(|g| m.generator_degrees[*g].le(&c))
            .collect();
        let j = t.count_ones() as usize;
        if !gens.is_empty() {
            let offset = sizes[j];
            sizes[j] += gens.len();
            blocks[j].push(Block { t, gens, offset });
        }
        if t == supp {
            break;
        }
        t = (t.wrapping_sub(supp)) & supp;
    }
    if sizes.iter().all(|s| *s == 0) {
        return vec![0; n + 1];
    }
    let position = |j: usize, t: u64, g: usize| -> Option<usize> {
        let b = blocks[j].iter().find(|b| b.t == t)?;
        b.gens.binary_search(&g).ok().map(|p| b.offset + p)
    };

    let relation_spans: Vec<Span<F::Elem>> = (0..=n)
        .map(|j| {
            let mut span = Span::new(sizes[j]);
            for block in &blocks[j] {
                let c = Multidegree(
                    a.0.iter()
                        .enumerate()
                        .map(|(k, e)| e - ((block.t >> k) & 1) as u32)
                        .collect(),
                );
                for r in m.relations.iter().filter(|r| r.degree.le(&c)) {
                    let mut v = vec![f.zero(); sizes[j]];
                    for (g, x) in &r.coefficients {
                        let p = block
                            .gens
                            .binary_search(g)
                            .expect("generator below relation");
                        v[block.offset + p] = x.clone();
                    }
                    span.insert(f, &v);
                }
            }
            span
        })
        .collect();

    let mut induced = vec![0usize; n + 2];
    for j in 1..=n {
        if sizes[j] == 0 || sizes[j - 1] == 0 {
            continue;
        }
        let mut span = relation_spans[j - 1].clone();
        let base = span.rank();
        for block in &blocks[j] {
            for g in &block.gens {
                let mut v = vec![f.zero(); sizes[j - 1]];
                for k in 0..n {
                    if block.t >> k & 1 == 0 {
                        continue;
                    }
                    let below = (block.t & ((1u64 << k) - 1)).count_ones();
                    let s = if below.is_multiple_of(2) {
                        f.one()
                    } else {
                        f.neg(&f.one())
                    };
                    let p = position(j - 1, block.t & !(1 << k), *g).expect("face block holds g");
                    v[p] = s;
                }
                span.insert(f, &v);
            }
        }
        induced[j] = span.rank() - base;
    }
    (0..=n)
        .map(|j| sizes[j] - relation_spans[j].rank() - induced[j] - induced[j + 1])
        .collect()
}

fn betti_in_box<F: Field>(
    f: &F,
    m: &MultigradedPresentation<F::Elem>,
    top: &Multidegree,
) -> BettiTable {
    let mut entries = Vec::new();
    for a in top.box_points() {
        for (j, rank) in betti_at(f, m, &a).into_iter().enumerate() {
            if rank > 0 {
                entries.push(BettiEntry {
                    homological_degree: j,
                    degree: a.clone(),
                    rank,
                });
            }
        }
    }
    entries
        .sort_by(|x, y| (x.homological_degree, &x.degree).cmp(&(y.homological_degree, &y.degree)));
    BettiTable {
        entries,
        search_box: top.clone(),
    }
}

/// The full multigraded Betti table of `M`, searched over `[0, c]` for `c`
/// the join of the presentation degrees and validated on enlarged boxes.
pub fn tor_betti<F: Field>(
    f: &F,
    m: &MultigradedPresentation<F::Elem>,
    limits: &KoszulLimits,
) -> Result<BettiTable> {
    stable(
        &m.degree_join(),
        limits.box_rounds,
        |top| betti_in_box(f, m, top),
        |t| t.entries.clone(),
        BettiTable::text,
    )
}

/// `n − pd M` (Auslander–Buchsbaum); `None` for the zero module.
pub fn depth_module<F: Field>(
    f: &F,
    m: &MultigradedPresentation<F::Elem>,
    limits: &KoszulLimits,
) -> Result<Option<usize>> {
    let table = tor_betti(f, m, limits)?;
    Ok(table.projective_dimension().map(|pd| m.n - pd))
}

/// Depth of `R/I` from its Betti table.
pub fn quotient_depth(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    limits: &KoszulLimits,
) -> Result<usize> {
    fn go<F: Field>(f: &F, ideal: &MonomialIdeal, limits: &KoszulLimits) -> Result<usize> {
        let m = MultigradedPresentation::quotient(f, ideal);
        Ok(depth_module(f, &m, limits)?.expect("R/I is nonzero"))
    }
    match field {
        FieldSpec::Rational => go(&Rationals, ideal, limits),
        FieldSpec::Prime(p) => go(&PrimeField::new(p)?, ideal, limits),
    }
}

/// Depth data of one Koszul homology module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDepth {
    pub i: usize,
    pub nonzero: bool,
    pub generators: usize,
    pub relations: usize,
    pub depth: Option<usize>,
    /// `n − q + i`.
    pub bound: i64,
    /// `depth ≥ bound` (vacuous for the zero module).
    pub pass: bool,
    /// `depth = dim R/I`, when strong Cohen–Macaulayness was requested.
    pub cm: Option<bool>,
    pub homology_box: Multidegree,
    pub betti_box: Multidegree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthReport {
    pub n: usize,
    pub q: usize,
    pub field: FieldSpec,
    pub dim_quotient: usize,
    pub per_i: Vec<ModuleDepth>,
    pub sliding_depth: bool,
    pub strongly_cm: Option<bool>,
}

fn report_in<F: Field>(
    f: &F,
    field: FieldSpec,
    ideal: &MonomialIdeal,
    limits: &KoszulLimits,
    strongly: bool,
) -> Result<DepthReport> {
    let kd = KoszulDescriptor::new(ideal, limits)?;
    let n = kd.variable_count();
    let q = kd.generator_count();
    let dimq = dim_quotient(ideal);
    let mut per_i = Vec::new();
    for i in 0..=q {
        let h = koszul_homology(f, &kd, i, limits)?;
        let m = &h.presentation;
        let table = tor_betti(f, m, limits)?;
        let depth = table.projective_dimension().map(|pd| n - pd);
        let bound = n as i64 - q as i64 + i as i64;
        per_i.push(ModuleDepth {
            i,
            nonzero: !m.is_zero(),
            generators: m.generator_degrees.len(),
            relations: m.relations.len(),
            depth,
            bound,
            pass: depth.is_none_or(|d| d as i64 >= bound),
            cm: strongly.then(|| depth.is_none_or(|d| d == dimq)),
            homology_box: h.search_box,
            betti_box: table.search_box,
        });
    }
    let sliding_depth = per_i.iter().all(|m| m.pass);
    let strongly_cm = strongly.then(|| per_i.iter().all(|m| m.cm == Some(true)));
    Ok(DepthReport {
        n,
        q,
        field,
        dim_quotient: dimq,
        per_i,
        sliding_depth,
        strongly_cm,
    })
}

fn report(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    limits: &KoszulLimits,
    strongly: bool,
) -> Result<DepthReport> {
    match field {
        FieldSpec::Rational => report_in(&Rationals, field, ideal, limits, strongly),
        FieldSpec::Prime(p) => report_in(&PrimeField::new(p)?, field, ideal, limits, strongly),
    }
}

/// Whether `depth H_i(𝒦) ≥ n − q + i` for every nonzero `H_i`.
pub fn sliding_depth_check(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    limits: &KoszulLimits,
) -> Result<DepthReport> {
    report(ideal, field, limits, false)
}

/// Whether every nonzero `H_i(𝒦)` is Cohen–Macaulay of dimension
/// `dim R/I`. The sliding-depth verdict is filled in as well.
pub fn strongly_cm_check(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    limits: &KoszulLimits,
) -> Result<DepthReport> {
    report(ideal, field, limits, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rat;

    const Q: FieldSpec = FieldSpec::Rational;

    fn ideal(vars: &[&str], gens: &[&[&str]]) -> MonomialIdeal {
        MonomialIdeal::from_names(vars, gens).unwrap()
    }

    fn md(e: &[u32]) -> Multidegree {
        Multidegree::new(e.to_vec())
    }

    #[test]
    fn box_points_are_ordered_and_complete() {
        let top = md(&[1, 2]);
        let pts: Vec<_> = top.box_points().collect();
        assert_eq!(pts.len(), top.box_size());
        for (k, a) in pts.iter().enumerate() {
            for b in &pts[k + 1..] {
                assert!(!b.le(a) || a == b);
            }
        }
        assert_eq!(Multidegree::zero(0).box_points().count(), 1);
    }

    #[test]
    fn h0_slice_of_a_single_generator() {
        let i = ideal(&["x", "y"], &[&["x", "y"]]);
        let s = koszul_component(&i, 0, &md(&[1, 1]));
        assert_eq!(s.homology_rank(Q), 0);
        assert_eq!(koszul_component(&i, 0, &md(&[1, 0])).homology_rank(Q), 1);
        let above = koszul_component(&i, 2, &md(&[1, 1]));
        assert_eq!(above.dimension(), 0);
        assert_eq!(above.homology_rank(Q), 0);
    }

    #[test]
    fn path_h1_slice() {
        let i = ideal(&["x", "y", "z"], &[&["x", "y"], &["y", "z"]]);
        let s = koszul_component(&i, 1, &md(&[1, 1, 1]));
        assert_eq!(s.homology_rank(Q), 1);
        assert_eq!(s.outgoing.mul(&s.incoming), IntMatrix::zeros(1, 0));
    }

    #[test]
    fn path_h1_presentation() {
        let i = ideal(&["x", "y", "z"], &[&["x", "y"], &["y", "z"]]);
        let kd = KoszulDescriptor::new(&i, &KoszulLimits::default()).unwrap();
        let h = koszul_homology(&Rationals, &kd, 1, &KoszulLimits::default()).unwrap();
        assert_eq!(h.presentation.generator_degrees(), &[md(&[1, 1, 1])]);
        // the cycle is proportional to z·e1 − x·e2
        let z = &h.cycles[0];
        assert_eq!(Rationals.add(&z[0], &z[1]), Rat::ZERO);
        let mut rel: Vec<_> = h
            .presentation
            .relations()
            .iter()
            .map(|r| r.degree.clone())
            .collect();
        rel.sort();
        // H_1 ≅ R/(y) shifted: y times the cycle is the boundary of e12
        assert_eq!(rel, vec![md(&[1, 2, 1])]);
        assert_eq!(h.search_box, kd.sigma());
    }

    #[test]
    fn h0_is_the_quotient() {
        let i = ideal(&["x", "y", "z"], &[&["x", "y"], &["y", "z"]]);
        let m = koszul_homology_presentation(&Rationals, &i, 0, &KoszulLimits::default()).unwrap();
        assert_eq!(m.generator_degrees(), &[md(&[0, 0, 0])]);
        let mut rel: Vec<_> = m.relations().iter().map(|r| r.degree.clone()).collect();
        rel.sort();
        assert_eq!(rel, vec![md(&[0, 1, 1]), md(&[1, 1, 0])]);
    }

    #[test]
    fn regular_sequence_is_acyclic() {
        let i = ideal(&["a", "b", "c", "d"], &[&["a", "b"], &["c"], &["d"]]);
        for k in 1..=3 {
            let m =
                koszul_homology_presentation(&Rationals, &i, k, &KoszulLimits::default()).unwrap();
            assert!(m.is_zero(), "H_{k}");
        }
    }

    #[test]
    fn caps_are_enforced() {
        let i = ideal(&["a", "b"], &[&["a"], &["b"]]);
        let tight = KoszulLimits {
            max_generators: 1,
            ..KoszulLimits::default()
        };
        assert!(matches!(
            KoszulDescriptor::new(&i, &tight),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn betti_of_free_and_principal() {
        let l = KoszulLimits::default();
        let r = MultigradedPresentation::<Rat>::free(2, 1);
        let t = tor_betti(&Rationals, &r, &l).unwrap();
        assert_eq!(
            t.entries,
            vec![BettiEntry {
                homological_degree: 0,
                degree: md(&[0, 0]),
                rank: 1
            }]
        );
        assert_eq!(depth_module(&Rationals, &r, &l).unwrap(), Some(2));

        let x = ideal(&["x", "y"], &[&["x"]]);
        let m = MultigradedPresentation::quotient(&Rationals, &x);
        let t = tor_betti(&Rationals, &m, &l).unwrap();
        assert_eq!(
            t.entries,
            vec![
                BettiEntry {
                    homological_degree: 0,
                    degree: md(&[0, 0]),
                    rank: 1
                },
                BettiEntry {
                    homological_degree: 1,
                    degree: md(&[1, 0]),
                    rank: 1
                },
            ]
        );
        assert_eq!(t.projective_dimension(), Some(1));
    }

    #[test]
    fn xy_xz_has_projective_dimension_two() {
        let l = KoszulLimits::default();
        let i = ideal(&["x", "y", "z"], &[&["x", "y"], &["x", "z"]]);
        let m = MultigradedPresentation::quotient(&Rationals, &i);
        let t = tor_betti(&Rationals, &m, &l).unwrap();
        // Taylor complex: 1, xy, xz, lcm = xyz
        let degrees: Vec<_> = t
            .entries
            .iter()
            .map(|e| (e.homological_degree, e.degree.clone()))
            .collect();
        assert_eq!(
            degrees,
            vec![
                (0, md(&[0, 0, 0])),
                (1, md(&[1, 0, 1])),
                (1, md(&[1, 1, 0])),
                (2, md(&[1, 1, 1])),
            ]
        );
        assert_eq!(depth_module(&Rationals, &m, &l).unwrap(), Some(1));
        assert_eq!(quotient_depth(&i, FieldSpec::Prime(2), &l).unwrap(), 1);
    }

    #[test]
    fn single_generator_quotient_depth() {
        let i = ideal(&["a", "b", "c", "d"], &[&["a", "b", "c"]]);
        assert_eq!(quotient_depth(&i, Q, &KoszulLimits::default()).unwrap(), 3);
        let r = strongly_cm_check(&i, Q, &KoszulLimits::default()).unwrap();
        assert!(r.sliding_depth);
        assert_eq!(r.strongly_cm, Some(true));
        assert_eq!(r.per_i.len(), 2);
        assert!(!r.per_i[1].nonzero);
    }

    #[test]
    fn zero_ideal_report() {
        let i = MonomialIdeal::zero(crate::vertex::Universe::new(["a", "b"]).unwrap());
        let r = strongly_cm_check(&i, Q, &KoszulLimits::default()).unwrap();
        assert_eq!(r.per_i[0].depth, Some(2));
        assert!(r.sliding_depth);
        assert_eq!(r.strongly_cm, Some(true));
    }

    #[test]
    fn complete_intersection_is_strongly_cm() {
        let i = ideal(&["a", "b", "c", "d"], &[&["a", "b"], &["c", "d"]]);
        let r = strongly_cm_check(&i, Q, &KoszulLimits::default()).unwrap();
        assert_eq!(r.strongly_cm, Some(true));
        assert_eq!(r.per_i[0].depth, Some(2));
    }

    #[test]
    fn sample_tree_tree_has_sliding_depth() {
        let i = ideal(
            &["u", "v", "w", "x", "y"],
            &[&["u", "v", "w"], &["x", "w"], &["x", "y"]],
        );
        for field in [Q, FieldSpec::Prime(2)] {
            let r = sliding_depth_check(&i, field, &KoszulLimits::default()).unwrap();
            assert!(r.sliding_depth, "{r:?}");
            assert_eq!(r.per_i[0].depth, Some(3));
        }
    }

    #[test]
    fn presentations_reject_inhomogeneous_relations() {
        let bad = MultigradedPresentation::new(
            1,
            vec![md(&[1])],
            vec![Relation {
                degree: md(&[0]),
                coefficients: vec![(0, Rat::ONE)],
            }],
        );
        assert!(bad.is_err());
    }
}
