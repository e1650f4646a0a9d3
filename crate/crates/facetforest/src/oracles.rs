//! Brute-force reference implementations, written straight from the
//! definitions on raw bitmasks. They share no code with the algorithms they
//! check: covers and non-faces come from full `2^n` scans, leaves from the
//! definition, forests from every facet subset.

/// Minimal elements of `sets` under inclusion, ascending.
fn minimal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable();
    sets.dedup();
    let keep: Vec<u64> = sets
        .iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && t & s == t))
        .collect();
    keep
}

fn maximal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable();
    sets.dedup();
    let keep: Vec<u64> = sets
        .iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && t & s == s))
        .collect();
    keep
}

fn subsets(n: usize) -> impl Iterator<Item = u64> {
    0..1u64 << n
}

pub fn covers(facets: &[u64], set: u64) -> bool {
    facets.iter().all(|f| f & set != 0)
}

/// All minimal vertex covers by scanning every subset of `n` vertices.
pub fn minimal_covers(facets: &[u64], n: usize) -> Vec<u64> {
    minimal(subsets(n).filter(|&s| covers(facets, s)).collect())
}

/// Smallest cover size.
pub fn covering_number(facets: &[u64], n: usize) -> usize {
    subsets(n)
        .filter(|&s| covers(facets, s))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

/// All minimal covers have one size.
pub fn unmixed(facets: &[u64], n: usize) -> bool {
    let sizes: Vec<u32> = minimal_covers(facets, n)
        .iter()
        .map(|c| c.count_ones())
        .collect();
    sizes.windows(2).all(|w| w[0] == w[1])
}

/// Minimal non-faces: subsets lying in no facet, minimal among those.
pub fn minimal_nonfaces(facets: &[u64], n: usize) -> Vec<u64> {
    minimal(
        subsets(n)
            .filter(|&s| !facets.iter().any(|f| s & f == s))
            .collect(),
    )
}

/// Maximal subsets containing no generator (the facets of the non-face
/// complex).
pub fn maximal_independent(generators: &[u64], n: usize) -> Vec<u64> {
    maximal(
        subsets(n)
            .filter(|&s| !generators.iter().any(|g| g & s == *g))
            .collect(),
    )
}

/// Generators of the localization at the variables in `keep`; `None` when it
/// is the unit ideal.
pub fn localize(generators: &[u64], keep: u64) -> Option<Vec<u64>> {
    let cut: Vec<u64> = generators.iter().map(|g| g & keep).collect();
    if cut.contains(&0) {
        return None;
    }
    Some(minimal(cut))
}

/// Leaf by definition: the only facet, or some other facet `G` with
/// `F ∩ F' ⊆ F ∩ G` for all `F' ≠ F`.
pub fn is_leaf(facets: &[u64], i: usize) -> bool {
    let f = facets[i];
    if facets.len() == 1 {
        return true;
    }
    (0..facets.len()).filter(|&g| g != i).any(|g| {
        (0..facets.len())
            .filter(|&o| o != i)
            .all(|o| (f & facets[o]) & !(f & facets[g]) == 0)
    })
}

/// Vertices of facet `i` that lie in no other facet.
pub fn free_vertices(facets: &[u64], i: usize) -> u64 {
    let others = facets
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .fold(0u64, |acc, (_, f)| acc | f);
    facets[i] & !others
}

pub fn connected(facets: &[u64]) -> bool {
    if facets.is_empty() {
        return false;
    }
    let mut reached = 1u64;
    loop {
        let before = reached;
        for i in 0..facets.len() {
            if reached >> i & 1 == 0 {
                continue;
            }
            for j in 0..facets.len() {
                if facets[i] & facets[j] != 0 {
                    reached |= 1 << j;
                }
            }
        }
        if reached == before {
            return reached.count_ones() as usize == facets.len();
        }
    }
}

/// Every nonempty facet subset has a leaf.
pub fn is_forest(facets: &[u64]) -> bool {
    let q = facets.len();
    (1u64..1 << q).all(|mask| {
        let sub: Vec<u64> = (0..q)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| facets[i])
            .collect();
        (0..sub.len()).any(|i| is_leaf(&sub, i))
    })
}

pub fn is_tree(facets: &[u64]) -> bool {
    connected(facets) && is_forest(facets)
}

/// For graphs (every facet an edge): a tree is a connected graph with one
/// edge fewer than vertices. `None` if some facet is not an edge.
pub fn graph_is_tree(facets: &[u64]) -> Option<bool> {
    if facets.iter().any(|f| f.count_ones() != 2) {
        return None;
    }
    let vertices = facets.iter().fold(0u64, |a, f| a | f).count_ones() as usize;
    Some(connected(facets) && facets.len() + 1 == vertices)
}

#[cfg(test)]
mod tests {
    use super::*;

    // u v w x y = bits 0..5
    const SAMPLE_TREE: [u64; 3] = [0b00111, 0b01100, 0b11000];

    #[test]
    fn sample_tree_covers() {
        let mut got = minimal_covers(&SAMPLE_TREE, 5);
        got.sort_unstable();
        let mut want = vec![0b01100, 0b10100, 0b01010, 0b01001];
        want.sort_unstable();
        assert_eq!(got, want);
        assert_eq!(covering_number(&SAMPLE_TREE, 5), 2);
        assert!(unmixed(&SAMPLE_TREE, 5));
        assert!(is_tree(&SAMPLE_TREE));
    }

    #[test]
    fn nontree_example() {
        // a b c d e = bits 0..5
        let f = [0b00111, 0b01101, 0b11110];
        assert!(!is_tree(&f));
        assert!(!is_leaf(&f, 0) && !is_leaf(&f, 1) && !is_leaf(&f, 2));
        assert_eq!(free_vertices(&f, 2), 0b10000);
    }

    #[test]
    fn graph_formula_matches_definition() {
        let path = [0b011, 0b110];
        let triangle = [0b011, 0b110, 0b101];
        assert_eq!(graph_is_tree(&path), Some(is_tree(&path)));
        assert_eq!(graph_is_tree(&triangle), Some(is_tree(&triangle)));
        assert_eq!(graph_is_tree(&[0b111]), None);
    }

    #[test]
    fn xy_xz_duals() {
        // x y z = bits 0..3
        let gens = [0b011, 0b101];
        assert_eq!(maximal_independent(&gens, 3), vec![0b001, 0b110]);
        assert_eq!(localize(&gens, 0b010), None);
        assert_eq!(localize(&gens, 0b001), Some(vec![0b001]));
    }
}
