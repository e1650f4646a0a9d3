//! Square-free monomial ideals and the four translations between ideals and
//! complexes: facet ideal, non-face (Stanley–Reisner) ideal, facet complex
//! and non-face complex.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex::{minimal_sets, Universe, VertexSet};

/// A square-free monomial ideal, stored as the supports of its minimal
/// generators. The zero ideal has no generators; the unit ideal is not
/// representable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    universe: Universe,
    generators: Vec<VertexSet>,
}

impl MonomialIdeal {
    /// Minimalizes `generators` under divisibility.
    pub fn new<I>(universe: Universe, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        let gens: Vec<VertexSet> = generators.into_iter().collect();
        if gens.iter().any(|g| g.is_empty()) {
            return Err(Error::UnitIdeal);
        }
        if let Some(bad) = gens.iter().find(|g| !universe.contains_set(**g)) {
            return Err(Error::MalformedInput(alloc::format!(
                "monomial {bad:?} uses variables outside a universe of {}",
                universe.len()
            )));
        }
        Ok(Self::from_minimal(universe, minimal_sets(&gens)))
    }

    pub fn from_names<S: AsRef<str>>(variables: &[S], generators: &[&[S]]) -> Result<Self> {
        let universe = Universe::new(variables.iter().map(|s| String::from(s.as_ref())))?;
        let sets = generators
            .iter()
            .map(|g| universe.set(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, sets)
    }

    fn from_minimal(universe: Universe, mut generators: Vec<VertexSet>) -> Self {
        universe.sort_sets(&mut generators);
        MonomialIdeal {
            universe,
            generators,
        }
    }

    pub fn zero(universe: Universe) -> Self {
        MonomialIdeal {
            universe,
            generators: Vec::new(),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// Number of variables of the ambient polynomial ring.
    pub fn variable_count(&self) -> usize {
        self.universe.len()
    }

    pub fn generators(&self) -> &[VertexSet] {
        &self.generators
    }

    /// Minimal number of generators.
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Variables dividing some generator.
    pub fn support(&self) -> VertexSet {
        self.generators
            .iter()
            .fold(VertexSet::EMPTY, |a, g| a.union(*g))
    }

    /// Whether the square-free monomial with support `m` lies in the ideal.
    pub fn contains(&self, m: VertexSet) -> bool {
        self.generators.iter().any(|g| g.is_subset(m))
    }

    /// Whether the monomial prime generated by `vars` contains the ideal.
    pub fn is_contained_in_prime(&self, vars: VertexSet) -> bool {
        self.generators.iter().all(|g| g.meets(vars))
    }

    /// Localization at the monomial prime generated by `vars`: variables
    /// outside `vars` become units, so each generator is cut down to
    /// `g ∩ vars` and the result is minimalized over the sub-universe `vars`.
    ///
    /// Fails with [`Error::NotContained`] when some generator misses `vars`
    /// (the localization is then the unit ideal).
    pub fn localize(&self, vars: VertexSet) -> Result<MonomialIdeal> {
        let vars = vars.intersection(self.universe.all());
        let mut cut = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let r = g.intersection(vars);
            if r.is_empty() {
                return Err(Error::NotContained);
            }
            cut.push(r.compress(vars));
        }
        Ok(Self::from_minimal(
            self.universe.restrict(vars),
            minimal_sets(&cut),
        ))
    }

    pub fn names(&self, set: VertexSet) -> Vec<String> {
        self.universe
            .names_of(set)
            .into_iter()
            .map(String::from)
            .collect()
    }

    pub fn generator_names(&self) -> Vec<Vec<String>> {
        self.generators.iter().map(|g| self.names(*g)).collect()
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.universe.names_of(*g).join("*"))?;
        }
        write!(f, ")")
    }
}

/// `𝓕(Δ)`: one generator per facet. The complex `{∅}` would give the unit
/// ideal and is rejected.
pub fn facet_ideal(complex: &SimplicialComplex) -> Result<MonomialIdeal> {
    if complex.facets().iter().any(|f| f.is_empty()) {
        return Err(Error::UnitIdeal);
    }
    Ok(MonomialIdeal::from_minimal(
        complex.universe().clone(),
        complex.facets().to_vec(),
    ))
}

/// `𝓝(Δ)`: generated by the minimal non-faces. Each candidate is a face
/// extended by one vertex, kept when it is not a face but all of its
/// one-smaller subsets are.
pub fn nonface_ideal(complex: &SimplicialComplex) -> Result<MonomialIdeal> {
    if complex.is_void() {
        return Err(Error::UnitIdeal);
    }
    let all = complex.universe().all();
    let faces: BTreeSet<VertexSet> = complex.faces().into_iter().collect();
    let mut minimal = BTreeSet::new();
    for &face in &faces {
        for v in all.difference(face).iter() {
            let cand = face.with(v);
            if faces.contains(&cand) || minimal.contains(&cand) {
                continue;
            }
            if cand.iter().all(|u| faces.contains(&cand.without(u))) {
                minimal.insert(cand);
            }
        }
    }
    Ok(MonomialIdeal::from_minimal(
        complex.universe().clone(),
        minimal.into_iter().collect(),
    ))
}

/// `δ𝓕(I)`: facets are the generator supports. The zero ideal gives the void
/// complex.
pub fn facet_complex(ideal: &MonomialIdeal) -> SimplicialComplex {
    SimplicialComplex::from_antichain(ideal.universe.clone(), ideal.generators.clone())
}

/// `δ𝓝(I)`: faces are the supports of square-free monomials outside `I`;
/// returned by its facets, the maximal sets containing no generator.
pub fn nonface_complex(ideal: &MonomialIdeal) -> SimplicialComplex {
    let n = ideal.universe.len();
    let mut facets = Vec::new();
    maximal_independent(&ideal.generators, n, 0, VertexSet::EMPTY, &mut facets);
    SimplicialComplex::from_antichain(ideal.universe.clone(), facets)
}

fn maximal_independent(
    gens: &[VertexSet],
    n: usize,
    next: usize,
    current: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    let blocked = |s: VertexSet| gens.iter().any(|g| g.is_subset(s));
    if next == n {
        let maximal = (0..n)
            .filter(|v| !current.contains(*v))
            .all(|v| blocked(current.with(v)));
        if maximal {
            out.push(current);
        }
        return;
    }
    let with = current.with(next);
    if !blocked(with) {
        maximal_independent(gens, n, next + 1, with, out);
    }
    // excluding `next` only pays off if `next` can be blocked later
    if blocked(with) || gens.iter().any(|g| g.contains(next)) {
        maximal_independent(gens, n, next + 1, current, out);
    }
}
