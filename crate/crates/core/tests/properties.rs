use proptest::prelude::*;

use polyrank::constructors::{chain_polytope, order_polytope};
use polyrank::equivalence::{canonical_form, decide_equivalence, SearchLimits, Strategy as Decider};
use polyrank::geometry::{enumerate_facets, lattice_invariants, LatticePolytope};
use polyrank::{FamilySpec, Matroid, Poset};

/// Distinct 0/1 points in `[0,1]^d`, at least two.
fn points01(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::btree_set(0u32..(1 << d), 2..=(1usize << d).min(10)).prop_map(move |s| {
        s.into_iter()
            .map(|m| (0..d).map(|i| i64::from((m >> i) & 1)).collect())
            .collect()
    })
}

/// Identity with random multiples of row `j` added to row `i > j`, then a
/// row swap: determinant `-1` or `1`.
fn unimodular(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (prop::collection::vec(-2i64..=2, d * d), 0..d, 0..d).prop_map(move |(c, a, b)| {
        let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        for i in 0..d {
            for j in 0..i {
                let row = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(row) {
                    *x += c[i * d + j] * y;
                }
            }
        }
        m.swap(a, b);
        m
    })
}

fn poset() -> impl Strategy<Value = Poset> {
    (2usize..=6, prop::collection::vec(any::<bool>(), 15)).prop_map(|(n, bits)| {
        let mut rel = Vec::new();
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if bits[k] {
                    rel.push((a, b));
                }
                k += 1;
            }
        }
        Poset::new(n, rel, None).expect("forward relations are acyclic")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariants_survive_unimodular_maps(pts in points01(4), a in unimodular(4), t in prop::collection::vec(-3i64..=3, 4)) {
        let p = LatticePolytope::new(pts).unwrap();
        let q = p.map_affine(&a, &t);
        prop_assert_eq!(lattice_invariants(&p), lattice_invariants(&q));
        prop_assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
        let v = decide_equivalence(&p, &q, Decider::Both, &SearchLimits::default()).unwrap();
        prop_assert!(v.witness().is_some_and(|w| w.verify(&p, &q)));
    }

    #[test]
    fn facets_support_the_vertices(pts in points01(4)) {
        let p = LatticePolytope::new(pts).unwrap();
        let h = enumerate_facets(&p);
        if p.dim() > 0 {
            prop_assert_eq!(p.rank().unwrap(), h.inequalities.len() as i64 - p.dim() as i64 - 1);
        }
        for f in &h.inequalities {
            prop_assert!(p.vertices().iter().all(|v| f.holds(v)));
            let tight = p.vertices().iter().filter(|v| f.is_tight(v)).count();
            prop_assert!(tight >= p.dim());
        }
        for e in &h.equations {
            prop_assert!(p.vertices().iter().all(|v| e.normal.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == e.offset));
        }
    }

    #[test]
    fn uniform_rank_function(r in 1usize..=4, extra in 0usize..=3, a in any::<u64>()) {
        let n = r + extra;
        let m = Matroid::uniform(r, n).unwrap();
        let a = a & m.ground_mask();
        prop_assert_eq!(m.rank_mask(a), (a.count_ones() as usize).min(r));
    }

    #[test]
    fn direct_sum_rank_is_additive(r1 in 1usize..=2, n1 in 2usize..=4, r2 in 1usize..=2, n2 in 2usize..=4, a in any::<u64>()) {
        prop_assume!(r1 <= n1 && r2 <= n2);
        let (x, y) = (Matroid::uniform(r1, n1).unwrap(), Matroid::uniform(r2, n2).unwrap());
        let s = x.direct_sum(&y).unwrap();
        let a = a & s.ground_mask();
        let low = a & x.ground_mask();
        prop_assert_eq!(s.rank_mask(a), x.rank_mask(low) + y.rank_mask(a >> n1));
    }

    #[test]
    fn ideals_and_antichains_are_equinumerous(p in poset()) {
        let o = order_polytope(&p).unwrap();
        let c = chain_polytope(&p).unwrap();
        prop_assert_eq!(o.vertex_count(), c.vertex_count());
        prop_assert_eq!(o.vertex_count(), p.order_ideals().unwrap().len());
    }

    #[test]
    fn family_specs_round_trip(s in prop::collection::vec(1usize..=3, 1..=3), p in 0usize..=3) {
        let f = FamilySpec::B { s, p };
        let text = f.to_string();
        prop_assert_eq!(text.parse::<FamilySpec>().unwrap(), f);
    }
}
