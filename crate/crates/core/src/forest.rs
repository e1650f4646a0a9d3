//! Leaves, universal sets, trees and forests of simplicial complexes.
//!
//! Most checks work on a facet slice plus a `u64` mask selecting a
//! subcomplex, which keeps the exhaustive subcomplex searches allocation
//! free.

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex::{Universe, VertexSet};

/// Evidence that a facet is a leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafWitness {
    pub leaf: VertexSet,
    /// Every `G ≠ F` with `F ∩ F' ⊆ F ∩ G` for all facets `F' ≠ F`. Empty
    /// when `F` is the only facet.
    pub universal_set: Vec<VertexSet>,
    /// Vertices of the leaf that lie in no other facet.
    pub free_vertices: VertexSet,
}

/// Why a facet is not a leaf: its intersections with the other facets, none
/// of which is dominated by a single other facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafRejection {
    pub facet: VertexSet,
    /// `(other facet, facet ∩ other)` for every other facet.
    pub intersections: Vec<(VertexSet, VertexSet)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeCertificate {
    /// Facets in greedy removal order; each is a leaf of what remains.
    LeafOrder(Vec<VertexSet>),
    /// A nonempty subcomplex without a leaf, with the rejection of each of
    /// its facets.
    FailingSubcomplex {
        facets: Vec<VertexSet>,
        rejections: Vec<LeafRejection>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVerdict {
    pub tree: bool,
    pub certificate: TreeCertificate,
}

fn require_facet(complex: &SimplicialComplex, facet: VertexSet) -> Result<usize> {
    complex
        .facet_index(facet)
        .ok_or_else(|| Error::NotAFacet(complex.names(facet)))
}

#[inline]
fn single_bit(mask: u64) -> bool {
    mask != 0 && mask & (mask - 1) == 0
}

/// Union of `F_i ∩ F_j` over the other facets `j` of the mask.
#[inline]
fn shared_part(facets: &[VertexSet], mask: u64, i: usize) -> VertexSet {
    let mut shared = VertexSet::EMPTY;
    let mut rest = mask & !(1u64 << i);
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        shared = shared.union(facets[i].intersection(facets[j]));
    }
    shared
}

/// Leaf test inside the subcomplex `mask`. `F ∩ F' ⊆ F ∩ G` for every `F'`
/// is the same as the union of those intersections lying inside `G`.
#[inline]
pub(crate) fn is_leaf_in(facets: &[VertexSet], mask: u64, i: usize) -> bool {
    if single_bit(mask) {
        return true;
    }
    let shared = shared_part(facets, mask, i);
    let mut rest = mask & !(1u64 << i);
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if shared.is_subset(facets[j]) {
            return true;
        }
    }
    false
}

fn universal_in(facets: &[VertexSet], mask: u64, i: usize) -> Vec<VertexSet> {
    let shared = shared_part(facets, mask, i);
    (0..facets.len())
        .filter(|&j| j != i && mask >> j & 1 == 1 && shared.is_subset(facets[j]))
        .map(|j| facets[j])
        .collect()
}

fn rejection_in(facets: &[VertexSet], mask: u64, i: usize) -> LeafRejection {
    LeafRejection {
        facet: facets[i],
        intersections: (0..facets.len())
            .filter(|&j| j != i && mask >> j & 1 == 1)
            .map(|j| (facets[j], facets[i].intersection(facets[j])))
            .collect(),
    }
}

fn full_mask(q: usize) -> u64 {
    if q >= 64 {
        u64::MAX
    } else {
        (1u64 << q) - 1
    }
}

/// `𝒰_Δ(F)`.
pub fn universal_set(complex: &SimplicialComplex, facet: VertexSet) -> Result<Vec<VertexSet>> {
    let i = require_facet(complex, facet)?;
    let facets = complex.facets();
    if facets.len() == 1 {
        return Ok(Vec::new());
    }
    Ok(universal_in(facets, full_mask(facets.len()), i))
}

pub fn is_leaf(complex: &SimplicialComplex, facet: VertexSet) -> Result<bool> {
    let i = require_facet(complex, facet)?;
    Ok(is_leaf_in(
        complex.facets(),
        full_mask(complex.facet_count()),
        i,
    ))
}

pub fn leaf_witness(complex: &SimplicialComplex, facet: VertexSet) -> Result<Option<LeafWitness>> {
    if !is_leaf(complex, facet)? {
        return Ok(None);
    }
    let others = complex
        .facets()
        .iter()
        .filter(|f| **f != facet)
        .fold(VertexSet::EMPTY, |a, f| a.union(*f));
    Ok(Some(LeafWitness {
        leaf: facet,
        universal_set: universal_set(complex, facet)?,
        free_vertices: facet.difference(others),
    }))
}

/// `None` when `facet` is a leaf.
pub fn leaf_rejection(
    complex: &SimplicialComplex,
    facet: VertexSet,
) -> Result<Option<LeafRejection>> {
    let i = require_facet(complex, facet)?;
    let mask = full_mask(complex.facet_count());
    Ok((!is_leaf_in(complex.facets(), mask, i)).then(|| rejection_in(complex.facets(), mask, i)))
}

/// Removes the lowest-index leaf until nothing is left. `Err` carries the
/// remaining leafless subcomplex.
fn greedy_in(facets: &[VertexSet]) -> core::result::Result<Vec<usize>, u64> {
    let mut remaining = full_mask(facets.len());
    let mut order = Vec::with_capacity(facets.len());
    while remaining != 0 {
        let mut rest = remaining;
        let mut found = None;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if is_leaf_in(facets, remaining, i) {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => {
                order.push(i);
                remaining &= !(1u64 << i);
            }
            None => return Err(remaining),
        }
    }
    Ok(order)
}

/// A leaf-removal order when one exists. Failure proves the complex is not a
/// forest; success alone does not prove that it is one.
pub fn greedy_leaf_order(complex: &SimplicialComplex) -> Option<Vec<VertexSet>> {
    let facets = complex.facets();
    greedy_in(facets)
        .ok()
        .map(|order| order.into_iter().map(|i| facets[i]).collect())
}

/// Calls `visit` on every nonempty subset of facets that is connected through
/// shared vertices, each exactly once. Stops early when `visit` returns
/// `false`; the return value says whether the walk ran to completion.
pub fn for_each_connected_subset<V>(facets: &[VertexSet], mut visit: V) -> bool
where
    V: FnMut(u64) -> bool,
{
    let q = facets.len();
    assert!(
        q < 64,
        "connected subset walk supports fewer than 64 facets"
    );
    let adjacent: Vec<u64> = (0..q)
        .map(|i| {
            (0..q)
                .filter(|&j| j != i && facets[i].meets(facets[j]))
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect();

    fn grow<V: FnMut(u64) -> bool>(
        adjacent: &[u64],
        subset: u64,
        candidates: u64,
        forbidden: u64,
        visit: &mut V,
    ) -> bool {
        if !visit(subset) {
            return false;
        }
        let mut candidates = candidates;
        let mut forbidden = forbidden;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            let bit = 1u64 << v;
            candidates &= !bit;
            let grown = subset | bit;
            let next = (candidates | adjacent[v]) & !grown & !forbidden;
            if !grow(adjacent, grown, next, forbidden, visit) {
                return false;
            }
            forbidden |= bit;
        }
        true
    }

    for start in 0..q {
        let below = (1u64 << start) - 1;
        let bit = 1u64 << start;
        if !grow(
            &adjacent,
            bit,
            adjacent[start] & !below,
            below | bit,
            &mut visit,
        ) {
            return false;
        }
    }
    true
}

fn check_bound(complex: &SimplicialComplex, bound: usize) -> Result<()> {
    let q = complex.facet_count();
    if q > bound || q >= 64 {
        return Err(Error::ResourceLimit {
            what: "facet count for subcomplex enumeration",
            requested: q,
            limit: bound.min(63),
        });
    }
    Ok(())
}

fn failing(facets: &[VertexSet], mask: u64) -> TreeCertificate {
    let members: Vec<usize> = (0..facets.len()).filter(|&i| mask >> i & 1 == 1).collect();
    TreeCertificate::FailingSubcomplex {
        facets: members.iter().map(|&i| facets[i]).collect(),
        rejections: members
            .iter()
            .map(|&i| rejection_in(facets, mask, i))
            .collect(),
    }
}

/// Forest test without the connectivity precondition: greedy rejection
/// first, then every connected subcomplex must have a leaf.
fn forest_verdict(complex: &SimplicialComplex) -> TreeVerdict {
    let facets = complex.facets();
    let order = match greedy_in(facets) {
        Ok(order) => order,
        Err(stuck) => {
            return TreeVerdict {
                tree: false,
                certificate: failing(facets, stuck),
            }
        }
    };
    let mut leafless = None;
    for_each_connected_subset(facets, |mask| {
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if is_leaf_in(facets, mask, i) {
                return true;
            }
        }
        leafless = Some(mask);
        false
    });
    match leafless {
        Some(mask) => TreeVerdict {
            tree: false,
            certificate: failing(facets, mask),
        },
        None => TreeVerdict {
            tree: true,
            certificate: TreeCertificate::LeafOrder(order.into_iter().map(|i| facets[i]).collect()),
        },
    }
}

/// Definitional tree test for a connected complex.
pub fn is_tree(complex: &SimplicialComplex, bound: usize) -> Result<TreeVerdict> {
    check_bound(complex, bound)?;
    let components = complex.component_facet_groups().len();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(forest_verdict(complex))
}

/// Every connected component is a tree (vacuously true for the void complex).
pub fn is_forest(complex: &SimplicialComplex, bound: usize) -> Result<TreeVerdict> {
    check_bound(complex, bound)?;
    Ok(forest_verdict(complex))
}

/// Random forest on at most `max_vertices` vertices with at most
/// `max_facets` facets. Each new facet is glued to a proper part of an
/// existing facet plus fresh vertices, so it is a leaf when attached; the
/// result is then confirmed with [`is_forest`] and resampled on failure.
pub fn random_forest(
    max_vertices: usize,
    max_facets: usize,
    seed: u64,
) -> Result<SimplicialComplex> {
    if max_vertices == 0 || max_facets == 0 {
        return Err(Error::Generation(String::from(
            "need at least one vertex and one facet",
        )));
    }
    if max_vertices > crate::vertex::MAX_VERTICES {
        return Err(Error::UniverseTooLarge {
            size: max_vertices,
            max: crate::vertex::MAX_VERTICES,
        });
    }
    const ATTEMPTS: usize = 64;
    let bound = max_facets.min(crate::complex::DEFAULT_SUBCOMPLEX_BOUND);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let target = rng.random_range(1..=bound);
        let first = rng.random_range(1..=max_vertices.min(3));
        let mut used = first;
        let mut facets = alloc::vec![VertexSet::full(first)];
        while facets.len() < target && used < max_vertices {
            let host = facets[rng.random_range(0..facets.len())];
            let mut glue = VertexSet::from_bits(host.bits() & rng.random::<u64>());
            if glue == host {
                let members: Vec<usize> = host.iter().collect();
                glue = glue.without(members[rng.random_range(0..members.len())]);
            }
            let fresh = rng.random_range(1..=(max_vertices - used).min(2));
            let mut facet = glue;
            for k in 0..fresh {
                facet = facet.with(used + k);
            }
            used += fresh;
            facets.push(facet);
        }
        let complex = SimplicialComplex::new(Universe::indexed(used)?, facets)?;
        if is_forest(&complex, bound)?.tree {
            return Ok(complex);
        }
    }
    Err(Error::Generation(alloc::format!(
        "no forest found in {ATTEMPTS} attempts for {max_vertices} vertices, {max_facets} facets"
    )))
}
