//! Complexes up to vertex relabeling, and random instances.
//!
//! Classes are built level by level: every complex with `k + 1` facets is a
//! complex with `k` facets plus one more set, so extending each class of the
//! previous level by every compatible set and canonicalizing reaches all of
//! them. A filter that survives removing a suitable facet (trees lose a leaf
//! and stay trees) can be applied at every level.

use std::collections::BTreeSet;

use facetforest_core::forest::random_forest;
use facetforest_core::{Error, Result, SimplicialComplex, Universe, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::oracles;

/// Largest vertex count accepted by the exhaustive enumerators.
pub const MAX_ENUMERATION_VERTICES: usize = 6;

/// Every permutation of `0..n` as a lookup table on subsets.
struct Relabeler {
    images: Vec<Vec<u8>>,
}

impl Relabeler {
    fn new(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
        for k in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    (0..=k).map(move |pos| {
                        let mut q = p.clone();
                        q.insert(pos, k);
                        q
                    })
                })
                .collect();
        }
        let images = perms
            .iter()
            .map(|p| {
                (0u32..1 << n)
                    .map(|s| {
                        (0..n)
                            .filter(|&v| s >> v & 1 == 1)
                            .fold(0u8, |acc, v| acc | 1 << p[v])
                    })
                    .collect()
            })
            .collect();
        Relabeler { images }
    }

    /// Lexicographically least sorted facet list over all relabelings.
    fn canonical(&self, facets: &[u8]) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        let mut buf = Vec::with_capacity(facets.len());
        for image in &self.images {
            buf.clear();
            buf.extend(facets.iter().map(|f| image[*f as usize]));
            buf.sort_unstable();
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        best.unwrap_or_default()
    }
}

fn check_cap(v_max: usize) -> Result<()> {
    if v_max > MAX_ENUMERATION_VERTICES {
        return Err(Error::ResourceLimit {
            what: "enumeration vertex count",
            requested: v_max,
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    Ok(())
}

fn as_masks(facets: &[u8]) -> Vec<u64> {
    facets.iter().map(|f| *f as u64).collect()
}

/// Canonical facet lists of all classes passing `keep`, over `v_max` points.
fn classes<P>(v_max: usize, q_max: usize, keep: P) -> Vec<Vec<u8>>
where
    P: Fn(&[u64]) -> bool + Sync,
{
    let relabel = Relabeler::new(v_max);
    let sets: Vec<u8> = (1u8..1 << v_max).collect();
    let mut level: BTreeSet<Vec<u8>> = sets
        .iter()
        .filter(|s| keep(&[**s as u64]))
        .map(|s| relabel.canonical(&[*s]))
        .collect();
    let mut all: Vec<Vec<u8>> = level.iter().cloned().collect();
    for _ in 1..q_max {
        let current: Vec<Vec<u8>> = level.into_iter().collect();
        let found: Vec<Vec<Vec<u8>>> = current
            .par_iter()
            .map(|class| {
                let mut out = Vec::new();
                for s in &sets {
                    if class.iter().any(|f| f & s == *f || f & s == *s) {
                        continue;
                    }
                    let mut next = class.clone();
                    next.push(*s);
                    if keep(&as_masks(&next)) {
                        out.push(relabel.canonical(&next));
                    }
                }
                out
            })
            .collect();
        level = found.into_iter().flatten().collect();
        if level.is_empty() {
            break;
        }
        all.extend(level.iter().cloned());
    }
    all
}

/// Shrinks the universe to the used vertices, named `x0, x1, …`.
fn to_complex(facets: &[u8]) -> SimplicialComplex {
    let used = facets.iter().fold(0u64, |a, f| a | *f as u64);
    let keep = VertexSet::from_bits(used);
    let universe = Universe::indexed(keep.len()).expect("small universe");
    let sets: Vec<VertexSet> = facets
        .iter()
        .map(|f| VertexSet::from_bits(*f as u64).compress(keep))
        .collect();
    SimplicialComplex::new(universe, sets).expect("valid antichain")
}

fn finish(mut found: Vec<Vec<u8>>) -> Vec<SimplicialComplex> {
    found.sort_by_key(|f| {
        let used = f.iter().fold(0u8, |a, s| a | s).count_ones();
        (used, f.len(), f.clone())
    });
    found.iter().map(|f| to_complex(f)).collect()
}

/// One complex per isomorphism class on `1..=v_max` vertices (every vertex in
/// some facet) with at most `q_max` facets, ordered by vertex count, facet
/// count, then canonical form.
pub fn enumerate_complexes(v_max: usize, q_max: usize) -> Result<Vec<SimplicialComplex>> {
    check_cap(v_max)?;
    if v_max == 0 || q_max == 0 {
        return Ok(Vec::new());
    }
    Ok(finish(classes(v_max, q_max, |_| true)))
}

/// The trees among [`enumerate_complexes`], selected by the definitional
/// oracle.
pub fn enumerate_trees(v_max: usize, q_max: usize) -> Result<Vec<SimplicialComplex>> {
    check_cap(v_max)?;
    if v_max == 0 || q_max == 0 {
        return Ok(Vec::new());
    }
    Ok(finish(classes(v_max, q_max, oracles::is_tree)))
}

/// Uniform facet sampling: `1..=max_facets` nonempty subsets of
/// `1..=max_vertices` vertices, normalized, on the vertices actually used.
pub fn random_complex(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_facets: usize,
) -> SimplicialComplex {
    let n = rng.random_range(1..=max_vertices);
    let q = rng.random_range(1..=max_facets);
    let sets: Vec<VertexSet> = (0..q)
        .map(|_| VertexSet::from_bits(rng.random_range(1..1u64 << n)))
        .collect();
    let used = sets.iter().fold(VertexSet::EMPTY, |a, s| a.union(*s));
    let universe = Universe::indexed(used.len()).expect("small universe");
    SimplicialComplex::new(universe, sets.iter().map(|s| s.compress(used))).expect("valid sets")
}

/// `count` random complexes, deterministic in `seed`.
pub fn random_complexes(
    count: usize,
    seed: u64,
    max_vertices: usize,
    max_facets: usize,
) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_complex(&mut rng, max_vertices, max_facets))
        .collect()
}

/// Trees from the components of `count` random forests.
pub fn random_trees(
    count: usize,
    seed: u64,
    max_vertices: usize,
    max_facets: usize,
) -> Result<Vec<SimplicialComplex>> {
    let mut out = Vec::new();
    for k in 0..count as u64 {
        let forest = random_forest(max_vertices, max_facets, seed.wrapping_add(k))?;
        out.extend(forest.connected_components());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_classes(n: usize) -> usize {
        // every family of subsets, filtered to covering antichains
        let perms: Vec<Vec<usize>> = {
            fn go(prefix: Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
                if prefix.len() == n {
                    out.push(prefix);
                    return;
                }
                for v in 0..n {
                    if !prefix.contains(&v) {
                        let mut p = prefix.clone();
                        p.push(v);
                        go(p, n, out);
                    }
                }
            }
            let mut out = Vec::new();
            go(Vec::new(), n, &mut out);
            out
        };
        let sets: Vec<u32> = (1..1u32 << n).collect();
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for family in 1u64..1 << sets.len() {
            let chosen: Vec<u32> = (0..sets.len())
                .filter(|i| family >> i & 1 == 1)
                .map(|i| sets[i])
                .collect();
            let antichain = chosen
                .iter()
                .all(|a| chosen.iter().all(|b| a == b || a & b != *a));
            let full = chosen.iter().fold(0, |x, s| x | s) == (1 << n) - 1;
            if !antichain || !full {
                continue;
            }
            let form = perms
                .iter()
                .map(|p| {
                    let mut img: Vec<u32> = chosen
                        .iter()
                        .map(|s| {
                            (0..n)
                                .filter(|v| s >> v & 1 == 1)
                                .fold(0, |a, v| a | 1 << p[v])
                        })
                        .collect();
                    img.sort_unstable();
                    img
                })
                .min()
                .unwrap();
            seen.insert(form);
        }
        seen.len()
    }

    #[test]
    fn small_counts() {
        let one = enumerate_complexes(1, 10).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].facets(), &[VertexSet::singleton(0)]);
        assert_eq!(enumerate_complexes(2, 10).unwrap().len(), 3);
    }

    #[test]
    fn counts_match_brute_force_by_vertex_count() {
        let all = enumerate_complexes(4, 16).unwrap();
        for n in 1..=4 {
            let got = all.iter().filter(|c| c.universe().len() == n).count();
            assert_eq!(got, brute_force_classes(n), "n = {n}");
        }
    }

    #[test]
    fn trees_are_the_tree_classes() {
        let all = enumerate_complexes(4, 10).unwrap();
        let trees = enumerate_trees(4, 10).unwrap();
        let expected: Vec<_> = all
            .iter()
            .filter(|c| {
                let masks: Vec<u64> = c.facets().iter().map(|f| f.bits()).collect();
                oracles::is_tree(&masks)
            })
            .cloned()
            .collect();
        assert_eq!(trees, expected);
    }

    #[test]
    fn cumulative_counts_are_nonconstant_monotone_functions() {
        // inequivalent monotone Boolean functions on v variables, less the
        // two constants
        let want = [1, 3, 8, 28, 208];
        for (v, count) in (1..=5).zip(want) {
            assert_eq!(enumerate_complexes(v, 32).unwrap().len(), count, "v = {v}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_complexes(7, 2).is_err());
    }

    #[test]
    fn random_instances_are_deterministic() {
        assert_eq!(random_complexes(20, 7, 6, 4), random_complexes(20, 7, 6, 4));
        let trees = random_trees(10, 3, 6, 4).unwrap();
        assert!(trees.iter().all(|t| {
            let masks: Vec<u64> = t.facets().iter().map(|f| f.bits()).collect();
            oracles::is_tree(&masks)
        }));
    }
}
