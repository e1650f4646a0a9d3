//! Simplicial complexes stored by their facets.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::vertex::{maximal_sets, Universe, VertexSet};

/// Default cap on the number of facets for subcomplex enumeration.
pub const DEFAULT_SUBCOMPLEX_BOUND: usize = 20;

/// A simplicial complex given by its facet antichain over a named universe.
///
/// Facets are kept in canonical order (size, then names), so structural
/// equality is equality of complexes. Two special shapes exist besides the
/// ordinary ones: the *void* complex with no faces at all, and the complex
/// `{∅}` whose only facet is the empty set. Universe vertices that lie in no
/// facet are allowed ("ghost" vertices); they show up in Stanley–Reisner
/// complexes of ideals that contain a variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    universe: Universe,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Normalizes `facets` to their maximal elements.
    pub fn new<I>(universe: Universe, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        let facets: Vec<VertexSet> = facets.into_iter().collect();
        if let Some(bad) = facets.iter().find(|f| !universe.contains_set(**f)) {
            return Err(Error::MalformedInput(alloc::format!(
                "facet {bad:?} uses indices outside a universe of {} vertices",
                universe.len()
            )));
        }
        Ok(Self::from_antichain(universe, maximal_sets(&facets)))
    }

    /// Builds from named vertices and named facets.
    pub fn from_names<S: AsRef<str>>(vertices: &[S], facets: &[&[S]]) -> Result<Self> {
        let universe = Universe::new(vertices.iter().map(|s| String::from(s.as_ref())))?;
        let sets = facets
            .iter()
            .map(|f| universe.set(f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, sets)
    }

    pub(crate) fn from_antichain(universe: Universe, mut facets: Vec<VertexSet>) -> Self {
        universe.sort_sets(&mut facets);
        SimplicialComplex { universe, facets }
    }

    /// The complex with no faces.
    pub fn void(universe: Universe) -> Self {
        SimplicialComplex {
            universe,
            facets: Vec::new(),
        }
    }

    /// The full simplex on the universe (`{∅}` when the universe is empty).
    pub fn simplex(universe: Universe) -> Self {
        let all = universe.all();
        Self::from_antichain(universe, alloc::vec![all])
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Union of all facets.
    pub fn vertex_set(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    /// Universe vertices that belong to no facet.
    pub fn ghost_vertices(&self) -> VertexSet {
        self.universe.all().difference(self.vertex_set())
    }

    pub fn is_facet(&self, set: VertexSet) -> bool {
        self.facets.contains(&set)
    }

    pub fn facet_index(&self, set: VertexSet) -> Option<usize> {
        self.facets.iter().position(|f| *f == set)
    }

    /// Dimension; `-1` for the void complex and for `{∅}`.
    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    /// All facets of one cardinality (vacuously true with at most one facet).
    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn contains_face(&self, set: VertexSet) -> bool {
        self.facets.iter().any(|f| set.is_subset(*f))
    }

    /// Every face, ordered by size and then canonically. Includes `∅` unless
    /// the complex is void.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut all = BTreeSet::new();
        for f in &self.facets {
            all.extend(f.subsets());
        }
        let mut faces: Vec<VertexSet> = all.into_iter().collect();
        self.universe.sort_sets(&mut faces);
        faces
    }

    /// Faces of dimension `i` (size `i + 1`).
    pub fn faces_of_dim(&self, i: isize) -> Vec<VertexSet> {
        if i < -1 {
            return Vec::new();
        }
        let size = (i + 1) as usize;
        let mut all = BTreeSet::new();
        for f in &self.facets {
            if f.len() >= size {
                all.extend(f.subsets().filter(|s| s.len() == size));
            }
        }
        let mut faces: Vec<VertexSet> = all.into_iter().collect();
        self.universe.sort_sets(&mut faces);
        faces
    }

    /// Re-homes the complex on the sub-universe `keep`, which must contain
    /// every facet.
    pub fn restrict_universe(&self, keep: VertexSet) -> SimplicialComplex {
        debug_assert!(self.vertex_set().is_subset(keep));
        let universe = self.universe.restrict(keep);
        let facets = self.facets.iter().map(|f| f.compress(keep)).collect();
        Self::from_antichain(universe, facets)
    }

    /// Groups of facet indices connected through shared vertices. An empty
    /// facet forms its own group.
    pub fn component_facet_groups(&self) -> Vec<Vec<usize>> {
        let q = self.facets.len();
        let mut parent: Vec<usize> = (0..q).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..q {
            for j in i + 1..q {
                if self.facets[i].meets(self.facets[j]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[b] = a;
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_slot: Vec<Option<usize>> = alloc::vec![None; q];
        for i in 0..q {
            let r = find(&mut parent, i);
            match root_slot[r] {
                Some(slot) => groups[slot].push(i),
                None => {
                    root_slot[r] = Some(groups.len());
                    groups.push(alloc::vec![i]);
                }
            }
        }
        groups
    }

    /// Connected components, each over the sub-universe of its own vertices.
    pub fn connected_components(&self) -> Vec<SimplicialComplex> {
        self.component_facet_groups()
            .into_iter()
            .map(|group| {
                let facets: Vec<VertexSet> = group.iter().map(|&i| self.facets[i]).collect();
                let keep = facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
                let universe = self.universe.restrict(keep);
                let facets = facets.iter().map(|f| f.compress(keep)).collect();
                Self::from_antichain(universe, facets)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_facet_groups().len() <= 1
    }

    /// Subcomplex on the facets whose indices are set in `mask` (same
    /// universe).
    pub fn subcomplex(&self, mask: u64) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| *f)
            .collect();
        SimplicialComplex {
            universe: self.universe.clone(),
            facets,
        }
    }

    /// All nonempty subcomplexes, i.e. `2^q - 1` facet subsets.
    pub fn subcomplexes(&self, bound: usize) -> Result<Subcomplexes<'_>> {
        let q = self.facets.len();
        if q > bound || q >= 64 {
            return Err(Error::ResourceLimit {
                what: "facet count for subcomplex enumeration",
                requested: q,
                limit: bound.min(63),
            });
        }
        Ok(Subcomplexes {
            complex: self,
            next: 1,
            end: 1u64 << q,
        })
    }

    pub fn remove_facet(&self, facet: VertexSet) -> Result<SimplicialComplex> {
        let idx = self
            .facet_index(facet)
            .ok_or_else(|| Error::NotAFacet(self.names(facet)))?;
        let mut facets = self.facets.clone();
        facets.remove(idx);
        Ok(SimplicialComplex {
            universe: self.universe.clone(),
            facets,
        })
    }

    /// Removes vertex `v` from every facet and from the universe, dropping
    /// facets that become redundant.
    pub fn delete_vertex(&self, v: usize) -> Result<SimplicialComplex> {
        if v >= self.universe.len() {
            return Err(Error::OutOfRange {
                what: "vertex index",
                value: v as i64,
                min: 0,
                max: self.universe.len() as i64 - 1,
            });
        }
        let keep = self.universe.all().without(v);
        let universe = self.universe.restrict(keep);
        let facets: Vec<VertexSet> = self
            .facets
            .iter()
            .map(|f| f.without(v).compress(keep))
            .collect();
        Ok(Self::from_antichain(universe, maximal_sets(&facets)))
    }

    /// Faces of dimension `i` together with the facets of smaller dimension.
    pub fn skeleton(&self, i: isize) -> Result<SimplicialComplex> {
        let dim = self.dim();
        if i < -1 || i > dim {
            return Err(Error::OutOfRange {
                what: "skeleton dimension",
                value: i as i64,
                min: -1,
                max: dim as i64,
            });
        }
        if self.is_void() {
            return Ok(self.clone());
        }
        let size = (i + 1) as usize;
        let mut facets: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| f.len() < size)
            .copied()
            .collect();
        facets.extend(self.faces_of_dim(i));
        Ok(Self::from_antichain(
            self.universe.clone(),
            maximal_sets(&facets),
        ))
    }

    /// `{ G ∈ Δ : G ∩ face = ∅, G ∪ face ∈ Δ }`, over the same universe.
    pub fn link(&self, face: VertexSet) -> Result<SimplicialComplex> {
        if !self.contains_face(face) {
            return Err(Error::NotAFace(self.names(face)));
        }
        let facets: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| f.difference(face))
            .collect();
        Ok(Self::from_antichain(
            self.universe.clone(),
            maximal_sets(&facets),
        ))
    }

    /// Renames vertices: `new_names[i]` replaces the name of vertex `i`. The
    /// result lives over the renamed universe (same indices).
    pub fn rename(&self, new_names: &[String]) -> Result<SimplicialComplex> {
        let universe = Universe::new(new_names.iter().cloned())?;
        if universe.len() != self.universe.len() {
            return Err(Error::MalformedInput(String::from(
                "renaming must keep the universe size",
            )));
        }
        Ok(Self::from_antichain(universe, self.facets.clone()))
    }

    pub fn names(&self, set: VertexSet) -> Vec<String> {
        self.universe
            .names_of(set)
            .into_iter()
            .map(String::from)
            .collect()
    }

    /// Facets as name lists, in canonical order.
    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| self.names(*f)).collect()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, facet) in self.facets.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{{}}}", self.universe.names_of(*facet).join(","))?;
        }
        write!(f, ">")
    }
}

/// Iterator over nonempty facet subsets; see
/// [`SimplicialComplex::subcomplexes`].
pub struct Subcomplexes<'a> {
    complex: &'a SimplicialComplex,
    next: u64,
    end: u64,
}

impl Iterator for Subcomplexes<'_> {
    type Item = SimplicialComplex;

    fn next(&mut self) -> Option<SimplicialComplex> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        Some(self.complex.subcomplex(mask))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cx(vertices: &[&str], facets: &[&[&str]]) -> SimplicialComplex {
        SimplicialComplex::from_names(vertices, facets).unwrap()
    }

    fn sample_tree() -> SimplicialComplex {
        cx(
            &["u", "v", "w", "x", "y"],
            &[&["u", "v", "w"], &["x", "w"], &["x", "y"]],
        )
    }

    #[test]
    fn normalize_drops_contained_and_duplicate_facets() {
        let c = cx(&["x", "y"], &[&["x", "y"], &["x"], &["y", "x"]]);
        assert_eq!(c.facet_names(), vec![vec!["x", "y"]]);
        assert_eq!(sample_tree().facet_count(), 3);

        let u = Universe::new(["a", "b", "c"]).unwrap();
        let all: Vec<_> = u.all().subsets().collect();
        let s = SimplicialComplex::new(u.clone(), all).unwrap();
        assert_eq!(s, SimplicialComplex::simplex(u));
    }

    #[test]
    fn normalize_rejects_facets_outside_universe() {
        let r = SimplicialComplex::new(Universe::empty(), [VertexSet::singleton(0)]);
        assert!(matches!(r, Err(Error::MalformedInput(_))));
        let e = SimplicialComplex::new(Universe::empty(), [VertexSet::EMPTY]).unwrap();
        assert_eq!(e.dim(), -1);
        assert!(!e.is_void());
        let r = SimplicialComplex::new(Universe::indexed(2).unwrap(), [VertexSet::singleton(5)]);
        assert!(matches!(r, Err(Error::MalformedInput(_))));
    }

    #[test]
    fn dimension_and_purity() {
        assert_eq!(sample_tree().dim(), 2);
        assert!(!sample_tree().is_pure());
        let empty_face = SimplicialComplex::new(Universe::empty(), []).unwrap();
        assert_eq!(empty_face.dim(), -1);
        let u = Universe::new(["a"]).unwrap();
        assert_eq!(
            SimplicialComplex::new(u.clone(), [VertexSet::EMPTY])
                .unwrap()
                .dim(),
            -1
        );
        assert_eq!(cx(&["a"], &[&["a"]]).dim(), 0);
        assert!(!cx(&["x", "y", "z"], &[&["x"], &["y", "z"]]).is_pure());
        assert!(cx(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]).is_pure());
    }

    #[test]
    fn components() {
        let two = cx(&["a", "b", "c", "d"], &[&["a", "b"], &["c", "d"]]);
        let comps = two.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].universe().len(), 2);
        assert_eq!(sample_tree().connected_components().len(), 1);
        assert_eq!(cx(&["a"], &[&["a"]]).connected_components().len(), 1);
    }

    #[test]
    fn subcomplex_counts_and_bound() {
        let c = cx(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]);
        assert_eq!(c.subcomplexes(20).unwrap().count(), 3);
        assert_eq!(sample_tree().subcomplexes(20).unwrap().count(), 7);
        assert_eq!(cx(&["a"], &[&["a"]]).subcomplexes(20).unwrap().count(), 1);
        assert!(matches!(
            sample_tree().subcomplexes(2),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn facet_removal() {
        let s = sample_tree();
        let uvw = s.universe().set(&["u", "v", "w"]).unwrap();
        let r = s.remove_facet(uvw).unwrap();
        assert_eq!(r.facet_names(), vec![vec!["w", "x"], vec!["x", "y"]]);
        let a = cx(&["a"], &[&["a"]]);
        assert!(a.remove_facet(VertexSet::singleton(0)).unwrap().is_void());
        let uv = s.universe().set(&["u", "v"]).unwrap();
        assert!(matches!(s.remove_facet(uv), Err(Error::NotAFacet(_))));
    }

    #[test]
    fn vertex_deletion() {
        let c = cx(&["a", "b", "c", "d"], &[&["a", "b", "c"], &["c", "d"]]);
        let d = c.delete_vertex(2).unwrap();
        assert_eq!(d, cx(&["a", "b", "d"], &[&["a", "b"], &["d"]]));
        let e = cx(&["a", "b", "c"], &[&["a", "b"], &["a", "c"]])
            .delete_vertex(0)
            .unwrap();
        assert_eq!(e, cx(&["b", "c"], &[&["b"], &["c"]]));
        // a vertex in no facet: identity apart from the universe
        let g = SimplicialComplex::new(
            Universe::new(["a", "b"]).unwrap(),
            [VertexSet::singleton(0)],
        )
        .unwrap();
        assert_eq!(g.delete_vertex(1).unwrap(), cx(&["a"], &[&["a"]]));
        assert!(g.delete_vertex(2).is_err());
    }

    #[test]
    fn skeletons() {
        let t = cx(&["a", "b", "c"], &[&["a", "b", "c"]]);
        assert_eq!(
            t.skeleton(1).unwrap(),
            cx(&["a", "b", "c"], &[&["a", "b"], &["a", "c"], &["b", "c"]])
        );
        let p = cx(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]);
        assert_eq!(p.skeleton(1).unwrap(), p);
        let mixed = cx(&["a", "b", "c", "d"], &[&["a", "b", "c"], &["d"]]);
        assert_eq!(
            mixed.skeleton(1).unwrap(),
            cx(
                &["a", "b", "c", "d"],
                &[&["a", "b"], &["a", "c"], &["b", "c"], &["d"]]
            )
        );
        assert_eq!(t.skeleton(-1).unwrap().facets(), &[VertexSet::EMPTY]);
        assert!(t.skeleton(3).is_err());
        assert!(t.skeleton(-2).is_err());
    }

    #[test]
    fn links() {
        let t = cx(&["a", "b", "c"], &[&["a", "b", "c"]]);
        let l = t.link(VertexSet::singleton(0)).unwrap();
        assert_eq!(l.facet_names(), vec![vec!["b", "c"]]);
        assert_eq!(sample_tree().link(VertexSet::EMPTY).unwrap(), sample_tree());
        let p = cx(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]);
        let l = p.link(VertexSet::singleton(1)).unwrap();
        assert_eq!(l.facet_names(), vec![vec!["a"], vec!["c"]]);
        assert!(matches!(
            p.link(VertexSet::from_indices([0, 2])),
            Err(Error::NotAFace(_))
        ));
    }
}
