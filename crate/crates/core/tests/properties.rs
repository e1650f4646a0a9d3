use facetforest_core::covers::{dim_quotient, height, minimal_primes, minimal_vertex_covers};
use facetforest_core::forest::{greedy_leaf_order, is_forest, random_forest};
use facetforest_core::homology::depth_sr;
use facetforest_core::koszul::{koszul_component, quotient_depth, KoszulDescriptor};
use facetforest_core::linalg::{
    bareiss_rank, nullspace, rank, Field, IntMatrix, PrimeField, Rationals,
};
use facetforest_core::{
    facet_complex, facet_ideal, nonface_complex, nonface_ideal, FieldSpec, KoszulLimits,
    SimplicialComplex, Universe, VertexSet,
};
use proptest::prelude::*;

fn complex(n: usize, sets: &[u64]) -> SimplicialComplex {
    let sets = sets.iter().map(|s| VertexSet::from_bits(*s));
    SimplicialComplex::new(Universe::indexed(n).unwrap(), sets).unwrap()
}

fn complexes(max_n: usize, max_q: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1u64..1 << n, 1..=max_q).prop_map(move |sets| complex(n, &sets))
    })
}

fn bits(sets: &[VertexSet]) -> Vec<u64> {
    let mut v: Vec<u64> = sets.iter().map(|s| s.bits()).collect();
    v.sort_unstable();
    v
}

fn brute_covers(facets: &[u64], n: usize) -> Vec<u64> {
    let covers: Vec<u64> = (0..1u64 << n)
        .filter(|s| facets.iter().all(|f| f & s != 0))
        .collect();
    let mut min: Vec<u64> = covers
        .iter()
        .copied()
        .filter(|s| !covers.iter().any(|t| t != s && t & s == *t))
        .collect();
    min.sort_unstable();
    min
}

fn brute_leaf(facets: &[u64], i: usize) -> bool {
    facets.len() == 1
        || (0..facets.len()).any(|g| {
            g != i
                && (0..facets.len())
                    .filter(|&o| o != i)
                    .all(|o| facets[i] & facets[o] & !facets[g] == 0)
        })
}

fn brute_forest(facets: &[u64]) -> bool {
    (1u64..1 << facets.len()).all(|mask| {
        let sub: Vec<u64> = (0..facets.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| facets[i])
            .collect();
        (0..sub.len()).any(|i| brute_leaf(&sub, i))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn translations_invert(c in complexes(7, 6)) {
        let f = facet_ideal(&c).unwrap();
        prop_assert_eq!(&facet_complex(&f), &c);
        let nf = nonface_ideal(&c).unwrap();
        prop_assert_eq!(&nonface_complex(&nf), &c);
        for g in nf.generators() {
            prop_assert!(!c.contains_face(*g));
            for v in g.iter() {
                prop_assert!(c.contains_face(g.without(v)));
            }
        }
    }

    #[test]
    fn covers_and_primes_match_subset_scan(c in complexes(8, 6)) {
        let n = c.universe().len();
        let want = brute_covers(&bits(c.facets()), n);
        prop_assert_eq!(bits(&minimal_vertex_covers(&c)), want.clone());
        let i = facet_ideal(&c).unwrap();
        prop_assert_eq!(bits(&minimal_primes(&i)), want.clone());
        let ht = want.iter().map(|s| s.count_ones() as usize).min().unwrap();
        prop_assert_eq!(height(&i), ht);
        prop_assert_eq!(dim_quotient(&i), n - ht);
        prop_assert_eq!(nonface_complex(&i).dim() + 1, (n - ht) as isize);
    }

    #[test]
    fn forest_check_matches_definition(c in complexes(6, 6)) {
        let facets: Vec<u64> = c.facets().iter().map(|f| f.bits()).collect();
        let forest = brute_forest(&facets);
        prop_assert_eq!(is_forest(&c, 20).unwrap().tree, forest);
        match greedy_leaf_order(&c) {
            None => prop_assert!(!forest),
            Some(order) => {
                let mut rest: Vec<u64> = facets.clone();
                for f in order {
                    let i = rest.iter().position(|g| *g == f.bits()).unwrap();
                    prop_assert!(brute_leaf(&rest, i));
                    rest.remove(i);
                }
                prop_assert!(rest.is_empty());
            }
        }
    }

    #[test]
    fn random_forests_are_forests(seed in any::<u64>(), v in 1usize..10, q in 1usize..7) {
        let c = random_forest(v, q, seed).unwrap();
        let facets: Vec<u64> = c.facets().iter().map(|f| f.bits()).collect();
        prop_assert!(brute_forest(&facets));
        prop_assert_eq!(random_forest(v, q, seed).unwrap(), c);
    }

    #[test]
    fn linear_algebra_identities(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-3i64..4, 36)) {
        let mut m = IntMatrix::zeros(rows, cols);
        let mut t = IntMatrix::zeros(cols, rows);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, entries[r * 6 + c]);
                t.set(c, r, entries[r * 6 + c]);
            }
        }
        let q = Rationals;
        let a = m.to_field(&q);
        let r = rank(&q, &a);
        prop_assert_eq!(r, bareiss_rank(&m));
        prop_assert_eq!(r, t.rank(FieldSpec::Rational));
        let kernel = nullspace(&q, &a);
        prop_assert_eq!(r + kernel.len(), cols);
        for v in &kernel {
            for row in 0..rows {
                let dot = (0..cols).fold(q.zero(), |acc, c| q.add(&acc, &q.mul(a.get(row, c), &v[c])));
                prop_assert!(q.is_zero(&dot));
            }
        }
        let f3 = PrimeField::new(3).unwrap();
        let b = m.to_field(&f3);
        prop_assert_eq!(rank(&f3, &b) + nullspace(&f3, &b).len(), cols);
        prop_assert!(rank(&f3, &b) <= r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn betti_depth_matches_skeleton_depth(c in complexes(5, 4)) {
        let i = facet_ideal(&c).unwrap();
        let limits = KoszulLimits::default();
        for field in [FieldSpec::Rational, FieldSpec::Prime(2)] {
            prop_assert_eq!(quotient_depth(&i, field, &limits).unwrap(), depth_sr(&c, field).unwrap());
        }
    }

    #[test]
    fn koszul_euler_characteristic(c in complexes(4, 4)) {
        let i = facet_ideal(&c).unwrap();
        let kd = KoszulDescriptor::new(&i, &KoszulLimits::default()).unwrap();
        let q = kd.generator_count();
        for a in kd.sigma().box_points() {
            let mut chain = 0i64;
            let mut homology = 0i64;
            for k in 0..=q {
                let s = koszul_component(&i, k, &a);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                chain += sign * s.dimension() as i64;
                homology += sign * s.homology_rank(FieldSpec::Rational) as i64;
            }
            prop_assert_eq!(chain, homology, "degree {}", a);
        }
    }
}
