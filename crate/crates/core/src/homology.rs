//! Exact reduced simplicial homology, Reisner's criterion and depth of
//! Stanley–Reisner rings.

use alloc::vec::Vec;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::ideal::{facet_ideal, nonface_complex};
use crate::linalg::{FieldSpec, IntMatrix};
use crate::vertex::VertexSet;

/// Augmented simplicial chain complex. Degree `d` runs from `-1` (the empty
/// face) to `dim Δ`; `boundary(d)` maps `C_d → C_{d-1}` for `d ≥ 0`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    faces: Vec<Vec<VertexSet>>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn of(complex: &SimplicialComplex) -> ChainComplex {
        let dim = complex.dim();
        let mut faces: Vec<Vec<VertexSet>> = Vec::new();
        if !complex.is_void() {
            for d in -1..=dim {
                let mut fs = complex.faces_of_dim(d);
                fs.sort();
                faces.push(fs);
            }
        }
        let mut boundaries = Vec::new();
        for k in 1..faces.len() {
            let (lower, upper) = (&faces[k - 1], &faces[k]);
            let mut m = IntMatrix::zeros(lower.len(), upper.len());
            for (c, face) in upper.iter().enumerate() {
                for (pos, v) in face.iter().enumerate() {
                    let r = lower
                        .binary_search(&face.without(v))
                        .expect("faces are closed under removal");
                    m.set(r, c, if pos % 2 == 0 { 1 } else { -1 });
                }
            }
            boundaries.push(m);
        }
        ChainComplex { faces, boundaries }
    }

    /// Face counts per degree, starting at degree `-1`.
    pub fn dimensions(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// `∂_d : C_d → C_{d-1}` for `d ≥ 0`.
    pub fn boundary(&self, d: usize) -> Option<&IntMatrix> {
        self.boundaries.get(d)
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    /// `∂_{d} ∘ ∂_{d+1} = 0` for every degree.
    pub fn is_complex(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// Ranks of `H̃_d` for `d = -1 ..= dim`.
    pub fn reduced_homology_ranks(&self, field: FieldSpec) -> Vec<usize> {
        let dims = self.dimensions();
        if dims.is_empty() {
            return alloc::vec![0];
        }
        let ranks: Vec<usize> = self.boundaries.iter().map(|b| b.rank(field)).collect();
        (0..dims.len())
            .map(|k| {
                let out = if k == 0 { 0 } else { ranks[k - 1] };
                let incoming = ranks.get(k).copied().unwrap_or(0);
                dims[k] - out - incoming
            })
            .collect()
    }
}

/// Ranks of `H̃_i(Δ; k)` for `i = -1 ..= dim Δ` (a single zero for the void
/// complex).
pub fn reduced_homology_ranks(complex: &SimplicialComplex, field: FieldSpec) -> Vec<usize> {
    ChainComplex::of(complex).reduced_homology_ranks(field)
}

/// A face whose link has homology below its top dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReisnerWitness {
    pub face: VertexSet,
    /// Homological degree `i < dim lk(face)` with `H̃_i(lk face) ≠ 0`.
    pub degree: isize,
}

/// Reisner's criterion on a Stanley–Reisner complex `Γ`: `k[Γ]` is
/// Cohen–Macaulay iff `H̃_i(lk_Γ F) = 0` for every face `F` and every
/// `i < dim lk F`. Faces are scanned by increasing dimension and the first
/// failure is returned.
pub fn reisner(gamma: &SimplicialComplex, field: FieldSpec) -> Option<ReisnerWitness> {
    for face in gamma.faces() {
        let link = gamma.link(face).expect("face of gamma");
        let top = link.dim();
        let ranks = reduced_homology_ranks(&link, field);
        for (k, r) in ranks.iter().enumerate() {
            let degree = k as isize - 1;
            if degree >= top {
                break;
            }
            if *r != 0 {
                return Some(ReisnerWitness { face, degree });
            }
        }
    }
    None
}

/// `depth k[Γ] = 1 + max{ i : Γ^(i) is Cohen–Macaulay }`. Skeletons of a
/// Cohen–Macaulay skeleton are Cohen–Macaulay, so the scan runs downward.
pub fn stanley_reisner_depth(gamma: &SimplicialComplex, field: FieldSpec) -> usize {
    debug_assert!(!gamma.is_void());
    let top = gamma.dim();
    for i in (-1..=top).rev() {
        let skeleton = gamma.skeleton(i).expect("in range");
        if reisner(&skeleton, field).is_none() {
            return (i + 1) as usize;
        }
    }
    unreachable!("the (-1)-skeleton is Cohen-Macaulay")
}

/// Cohen–Macaulay report for `k[x]/𝓕(Δ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmReport {
    pub cm: bool,
    pub field: FieldSpec,
    pub witness: Option<ReisnerWitness>,
    pub depth: usize,
    pub dim: usize,
}

/// Runs Reisner's criterion on `Γ = δ𝓝(𝓕(Δ))`. The zero ideal (void `Δ`)
/// leaves the polynomial ring itself, reported with depth `n`.
pub fn is_cm(complex: &SimplicialComplex, field: FieldSpec) -> Result<CmReport> {
    let ideal = facet_ideal(complex)?;
    let n = complex.universe().len();
    if ideal.is_zero() {
        return Ok(CmReport {
            cm: true,
            field,
            witness: None,
            depth: n,
            dim: n,
        });
    }
    let gamma = nonface_complex(&ideal);
    let dim = (gamma.dim() + 1) as usize;
    let witness = reisner(&gamma, field);
    let depth = if witness.is_none() {
        dim
    } else {
        stanley_reisner_depth(&gamma, field)
    };
    Ok(CmReport {
        cm: witness.is_none(),
        field,
        witness,
        depth,
        dim,
    })
}

/// Depth of `k[x]/𝓕(Δ)` by the skeleton criterion on its Stanley–Reisner
/// complex.
pub fn depth_sr(complex: &SimplicialComplex, field: FieldSpec) -> Result<usize> {
    let ideal = facet_ideal(complex)?;
    if ideal.is_zero() {
        return Ok(complex.universe().len());
    }
    Ok(stanley_reisner_depth(&nonface_complex(&ideal), field))
}
