//! Vertex covers, minimal primes and the dimension/height dictionary.

use alloc::vec::Vec;

use crate::complex::SimplicialComplex;
use crate::ideal::{facet_complex, nonface_complex, MonomialIdeal};
use crate::vertex::{Universe, VertexSet};

/// A vertex set together with whether it is an inclusion-minimal cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverSet {
    pub cover: VertexSet,
    pub minimal: bool,
}

impl CoverSet {
    /// Classifies `set` against `complex`; `None` if it misses a facet.
    pub fn classify(complex: &SimplicialComplex, set: VertexSet) -> Option<CoverSet> {
        if !is_vertex_cover(complex, set) {
            return None;
        }
        let minimal = set
            .iter()
            .all(|v| !is_vertex_cover(complex, set.without(v)));
        Some(CoverSet {
            cover: set,
            minimal,
        })
    }
}

pub fn is_vertex_cover(complex: &SimplicialComplex, set: VertexSet) -> bool {
    complex.facets().iter().all(|f| f.meets(set))
}

/// All inclusion-minimal vertex covers in canonical order (size, then names).
///
/// Branch and bound over the first uncovered facet: branch `k` takes the
/// `k`-th vertex of that facet and bans the earlier ones, so every cover is
/// reached at most once. A branch is cut as soon as some chosen vertex has no
/// private facet left, since adding vertices never restores one.
pub fn minimal_vertex_covers(complex: &SimplicialComplex) -> Vec<VertexSet> {
    let mut facets: Vec<VertexSet> = complex.facets().to_vec();
    if facets.iter().any(|f| f.is_empty()) {
        return Vec::new();
    }
    facets.sort_by_key(|f| f.len());
    let mut out = Vec::new();
    search(&facets, VertexSet::EMPTY, VertexSet::EMPTY, &mut out);
    complex.universe().sort_sets(&mut out);
    out
}

fn search(facets: &[VertexSet], chosen: VertexSet, banned: VertexSet, out: &mut Vec<VertexSet>) {
    let Some(open) = facets.iter().find(|f| !f.meets(chosen)) else {
        out.push(chosen);
        return;
    };
    let mut banned = banned;
    for v in open.difference(banned).iter() {
        let next = chosen.with(v);
        if every_vertex_private(facets, next) {
            search(facets, next, banned, out);
        }
        banned = banned.with(v);
    }
}

/// Each chosen vertex is the only chosen vertex of some facet.
fn every_vertex_private(facets: &[VertexSet], chosen: VertexSet) -> bool {
    let mut private = VertexSet::EMPTY;
    for f in facets {
        let hit = f.intersection(chosen);
        if hit.len() == 1 {
            private = private.union(hit);
        }
    }
    chosen.is_subset(private)
}

/// Smallest size of a minimal cover (0 for the void complex).
pub fn covering_number(complex: &SimplicialComplex) -> usize {
    minimal_vertex_covers(complex)
        .iter()
        .map(|c| c.len())
        .min()
        .unwrap_or(0)
}

pub fn is_unmixed(complex: &SimplicialComplex) -> bool {
    let covers = minimal_vertex_covers(complex);
    covers.windows(2).all(|w| w[0].len() == w[1].len())
}

/// Generating sets of the minimal primes of `I` (minimal covers of its facet
/// complex). Empty for the zero ideal.
pub fn minimal_primes(ideal: &MonomialIdeal) -> Vec<VertexSet> {
    if ideal.is_zero() {
        return Vec::new();
    }
    minimal_vertex_covers(&facet_complex(ideal))
}

/// Recomputes `I` as the intersection of its minimal primes: a square-free
/// monomial lies in the intersection iff its support meets every prime's
/// generating set. The minimal such supports are the generators.
pub fn primary_decomposition_expand(ideal: &MonomialIdeal) -> MonomialIdeal {
    let universe = ideal.universe().clone();
    if ideal.is_zero() {
        return MonomialIdeal::zero(universe);
    }
    let primes = minimal_primes(ideal);
    let gens: Vec<VertexSet> = universe
        .all()
        .subsets()
        .filter(|m| !m.is_empty() && primes.iter().all(|p| m.meets(*p)))
        .collect();
    MonomialIdeal::new(universe, gens).expect("nonempty supports over the same universe")
}

/// Height of `I`: the covering number of its facet complex.
pub fn height(ideal: &MonomialIdeal) -> usize {
    covering_number(&facet_complex(ideal))
}

/// Krull dimension of `R/I`.
pub fn dim_quotient(ideal: &MonomialIdeal) -> usize {
    ideal.variable_count() - height(ideal)
}

/// Whether the facets of `δ𝓝(I)` are exactly the complements (in the
/// universe) of the minimal covers of `δ𝓕(I)`.
pub fn cover_complement_duality(ideal: &MonomialIdeal) -> bool {
    let universe: &Universe = ideal.universe();
    let all = universe.all();
    let mut complements: Vec<VertexSet> = minimal_primes(ideal)
        .into_iter()
        .map(|c| all.difference(c))
        .collect();
    if ideal.is_zero() {
        complements.push(all);
    }
    let mut facets = nonface_complex(ideal).facets().to_vec();
    complements.sort();
    facets.sort();
    complements == facets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::facet_ideal;
    use alloc::collections::BTreeSet;

    fn sample_tree() -> SimplicialComplex {
        SimplicialComplex::from_names(
            &["u", "v", "w", "x", "y"],
            &[&["u", "v", "w"], &["x", "w"], &["x", "y"]],
        )
        .unwrap()
    }

    fn xy_xz() -> MonomialIdeal {
        MonomialIdeal::from_names(&["x", "y", "z"], &[&["x", "y"], &["x", "z"]]).unwrap()
    }

    fn named(u: &Universe, sets: &[&[&str]]) -> BTreeSet<VertexSet> {
        sets.iter().map(|s| u.set(s).unwrap()).collect()
    }

    #[test]
    fn cover_predicate() {
        let s = sample_tree();
        let u = s.universe();
        assert!(is_vertex_cover(&s, u.set(&["x", "w"]).unwrap()));
        assert!(!is_vertex_cover(&s, u.set(&["x"]).unwrap()));
        assert!(is_vertex_cover(&s, u.all()));
    }

    #[test]
    fn sample_tree_minimal_covers() {
        let s = sample_tree();
        let got: BTreeSet<_> = minimal_vertex_covers(&s).into_iter().collect();
        let want = named(
            s.universe(),
            &[&["x", "w"], &["y", "w"], &["x", "v"], &["x", "u"]],
        );
        assert_eq!(got, want);
        assert_eq!(covering_number(&s), 2);
        assert!(is_unmixed(&s));
    }

    #[test]
    fn xy_xz_covers_and_primes() {
        let i = xy_xz();
        let fc = facet_complex(&i);
        let got: BTreeSet<_> = minimal_vertex_covers(&fc).into_iter().collect();
        assert_eq!(got, named(i.universe(), &[&["x"], &["y", "z"]]));
        assert_eq!(covering_number(&fc), 1);
        assert!(!is_unmixed(&fc));
        assert_eq!(minimal_primes(&i).len(), 2);
        assert_eq!(primary_decomposition_expand(&i), i);
        assert_eq!(height(&i), 1);
        assert_eq!(dim_quotient(&i), 2);
        assert!(cover_complement_duality(&i));
    }

    #[test]
    fn single_vertex_cases() {
        let a = SimplicialComplex::from_names(&["a"], &[&["a"]]).unwrap();
        assert_eq!(
            minimal_vertex_covers(&a),
            alloc::vec![VertexSet::singleton(0)]
        );
        assert_eq!(covering_number(&a), 1);
        assert!(is_unmixed(&a));
        let i = facet_ideal(&a).unwrap();
        assert_eq!(minimal_primes(&i), alloc::vec![VertexSet::singleton(0)]);
        assert_eq!(primary_decomposition_expand(&i), i);
        assert_eq!((height(&i), dim_quotient(&i)), (1, 0));
    }

    #[test]
    fn sample_tree_ideal_dictionary() {
        let i = facet_ideal(&sample_tree()).unwrap();
        assert_eq!(primary_decomposition_expand(&i), i);
        assert_eq!((height(&i), dim_quotient(&i)), (2, 3));
        assert_eq!(nonface_complex(&i).dim() + 1, dim_quotient(&i) as isize);
        assert!(cover_complement_duality(&i));
    }

    #[test]
    fn duality_with_empty_facet() {
        // (a, b): the non-face complex is {∅}, the only cover is {a,b}
        let i = MonomialIdeal::from_names(&["a", "b"], &[&["a"], &["b"]]).unwrap();
        assert_eq!(nonface_complex(&i).facets(), &[VertexSet::EMPTY]);
        assert!(cover_complement_duality(&i));
    }

    #[test]
    fn zero_ideal_conventions() {
        let z = MonomialIdeal::zero(Universe::new(["a", "b"]).unwrap());
        assert!(minimal_primes(&z).is_empty());
        assert_eq!((height(&z), dim_quotient(&z)), (0, 2));
        assert!(cover_complement_duality(&z));
    }

    #[test]
    fn classify_checks_minimality() {
        let s = sample_tree();
        let u = s.universe();
        let c = CoverSet::classify(&s, u.set(&["x", "w"]).unwrap()).unwrap();
        assert!(c.minimal);
        let c = CoverSet::classify(&s, u.set(&["x", "w", "u"]).unwrap()).unwrap();
        assert!(!c.minimal);
        assert!(CoverSet::classify(&s, u.set(&["u"]).unwrap()).is_none());
    }
}
