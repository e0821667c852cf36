use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::constructors::{base_polytope, edge_polytope, independence_polytope, stable_set_polytope, stable_sets};
use crate::graph::{graphic_matroid, FamilySpec};
use crate::matroid::Matroid;

fn poly(v: Vec<Vec<i64>>) -> LatticePolytope {
    LatticePolytope::new(v).unwrap()
}

fn graphic_base(spec: &str) -> LatticePolytope {
    let g = spec.parse::<FamilySpec>().unwrap().generate().unwrap();
    base_polytope(&graphic_matroid(&g).unwrap()).unwrap()
}

fn graphic_independence(spec: &str) -> LatticePolytope {
    let g = spec.parse::<FamilySpec>().unwrap().generate().unwrap();
    independence_polytope(&graphic_matroid(&g).unwrap()).unwrap()
}

fn simple(spec: &str) -> crate::graph::SimpleGraph {
    spec.parse::<FamilySpec>().unwrap().generate().unwrap().to_simple().unwrap()
}

fn path3() -> crate::graph::SimpleGraph {
    crate::graph::Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap().to_simple().unwrap()
}

fn decide(p: &LatticePolytope, q: &LatticePolytope) -> Verdict {
    decide_equivalence(p, q, Strategy::Both, &SearchLimits::default()).unwrap()
}

#[test]
fn identity_has_identity_witness() {
    let p = graphic_base("K:4");
    let v = decide(&p, &p);
    assert!(matches!(v, Verdict::Equivalent { source: WitnessSource::Identity, .. }));
    assert!(v.witness().unwrap().verify(&p, &p));
}

#[test]
fn segments_differ_on_lattice_points() {
    let a = poly(vec![vec![0], vec![1]]);
    let b = poly(vec![vec![0], vec![2]]);
    match decide(&a, &b) {
        Verdict::NotEquivalent {
            reason: NonEquivalence::Invariant { field, .. },
        } => assert_eq!(field, "lattice_point_count"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn triangle_base_polytope_is_edge_polytope() {
    let p = graphic_base("D:2,2,2");
    let q = edge_polytope(&simple("KM:2,2,2")).unwrap();
    assert_eq!(p, q);
    let shuffled = q.map_affine(
        &[
            vec![0, 1, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1],
        ],
        &[0; 6],
    );
    let v = decide(&p, &shuffled);
    assert!(v.witness().unwrap().verify(&p, &shuffled));
}

fn cube_subset(mask: u32) -> LatticePolytope {
    poly((0..16).filter(|i| mask >> i & 1 == 1).map(|i| (0..4).map(|b| i64::from(i >> b & 1 == 1)).collect()).collect())
}

#[test]
fn vertex_count_separates_small_rank_one_pair() {
    // B(M(B:1;p=1)) has 5 vertices, P(M(A_1 + A_2)) has 6, both in dimension 3
    let p = graphic_base("B:1;p=1");
    let q = graphic_independence("U:A:1|A:2");
    assert_eq!(p.dim(), q.dim());
    match decide(&p, &q) {
        Verdict::NotEquivalent {
            reason: NonEquivalence::Invariant { field, .. },
        } => assert_eq!(field, "vertex_count"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn same_fingerprint_but_not_equivalent() {
    // two 6-point subsets of the 4-cube with identical fingerprints
    let p = cube_subset(6017);
    let q = cube_subset(6849);
    assert_eq!(lattice_invariants(&p), lattice_invariants(&q));
    let v = decide(&p, &q);
    assert!(matches!(v, Verdict::NotEquivalent { reason: NonEquivalence::ExhaustiveFrameSearch { .. } }), "{v:?}");
    assert_eq!(frame_search(&p, &q).unwrap(), None);
    assert_ne!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
}

#[test]
fn unimodular_images_share_canonical_form() {
    let t = poly(vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    let images = [
        t.map_affine(&[vec![1, 1], vec![0, 1]], &[3, -2]),
        t.map_affine(&[vec![2, 1], vec![1, 1]], &[0, 5]),
        t.map_affine(&[vec![0, -1], vec![1, 0]], &[1, 1]),
    ];
    let c = canonical_form(&t).unwrap();
    for im in &images {
        assert_eq!(canonical_form(im).unwrap(), c);
    }
    let dilated = t.map_affine(&[vec![2, 0], vec![0, 1]], &[0, 0]);
    assert_ne!(canonical_form(&dilated).unwrap(), c);
}

#[test]
fn simplex_forms_agree() {
    let p = graphic_base("A:4");
    let q = graphic_independence("A:3");
    assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
}

#[test]
fn small_base_polytope_is_stable_polytope() {
    let p = graphic_base("B:1;p=1");
    let q = stable_set_polytope(&path3()).unwrap();
    assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
    assert!(decide(&p, &q).is_equivalent());
}

#[test]
fn map_f_is_an_involution() {
    let p = graphic_base("K:4");
    let set = [0, 2, 5];
    let once = apply_map_f(&p, &set, 2).unwrap();
    assert_eq!(apply_map_f(&once, &set, 2).unwrap(), p);
    assert!(chart_map_is_unimodular(&p, |x| {
        let mut y = x.to_vec();
        y[2] = 1 - set.iter().map(|&i| x[i]).sum::<i64>();
        y
    }));
    assert!(matches!(apply_map_f(&p, &set, 1), Err(Error::PivotNotInSet { element: 1 })));
    assert!(matches!(apply_map_g(&p, &[9]), Err(Error::CoordinateOutOfRange(9))));
}

#[test]
fn map_g_on_everything_gives_the_dual() {
    let m = graphic_matroid(&"C:1,1;p=1,q=1".parse::<FamilySpec>().unwrap().generate().unwrap()).unwrap();
    let b = base_polytope(&m).unwrap();
    let all: Vec<usize> = (0..b.ambient_dim()).collect();
    assert_eq!(apply_map_g(&b, &all).unwrap(), base_polytope(&m.dual()).unwrap());
}

#[test]
fn projection_refuses_non_injective() {
    let square = poly(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    assert!(matches!(apply_projection(&square, 0), Err(Error::ProjectionNotInjective)));
    let simplex = graphic_base("A:3");
    let proj = apply_projection(&simplex, 2).unwrap();
    assert_eq!(proj.vertices(), &[vec![0, 0], vec![0, 1], vec![1, 0]]);
}

#[test]
fn smallest_path_composite_is_literal() {
    // B:1;p=1 has edges e11, e12, eps0, eps1; the composite lands on the
    // stable sets of the path m1 - u1 with leaf v11 hanging off m1
    let p = graphic_base("B:1;p=1");
    let q = apply_map_g(&p, &[2, 3]).unwrap();
    let q = apply_map_f(&q, &[0, 1], 1).unwrap();
    let q = apply_projection(&q, 3).unwrap();
    let got: std::collections::BTreeSet<Vec<i64>> = q.vertices().iter().cloned().collect();
    let g = FamilySpec::GluedCliques { s: vec![1], p: 1 }.generate().unwrap().to_simple().unwrap();
    let want: std::collections::BTreeSet<Vec<i64>> = stable_sets(&g)
        .unwrap()
        .into_iter()
        .map(|m| (0..3).map(|i| ((m >> i) & 1) as i64).collect())
        .collect();
    assert_eq!(got, want);
}

#[test]
fn lemma_reports_pass_on_small_instances() {
    let cases = [
        (LemmaId::EquiBS, LemmaParams::Paths { s: vec![1], p: 1 }),
        (LemmaId::EquiBS, LemmaParams::Paths { s: vec![2, 1], p: 2 }),
        (LemmaId::CcongO, LemmaParams::Poset { s: 1, t: 0, p: 0, q: 1 }),
        (LemmaId::CcongO, LemmaParams::Poset { s: 1, t: 1, p: 1, q: 1 }),
        (LemmaId::CcongO, LemmaParams::Poset { s: 0, t: 1, p: 1, q: 1 }),
        (LemmaId::DcongE, LemmaParams::Triangle { s: [2, 2, 2] }),
        (LemmaId::DcongE, LemmaParams::Triangle { s: [1, 2, 3] }),
    ];
    for (id, params) in cases {
        let r = verify_lemma_map(id, &params).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn lemma_rejects_mismatched_parameters() {
    assert!(verify_lemma_map(LemmaId::DcongE, &LemmaParams::Paths { s: vec![1], p: 0 }).is_err());
    assert_eq!("CcongO".parse::<LemmaId>().unwrap(), LemmaId::CcongO);
    assert_eq!(LemmaId::EquiBS.to_string(), "equiBS");
    assert!("nope".parse::<LemmaId>().is_err());
}

fn random_unimodular(k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    // product of elementary shears and a signed permutation
    let mut m: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..3 * k {
        let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
        if i == j {
            continue;
        }
        let c = rng.gen_range(-1..=1);
        for r in 0..k {
            m[r][i] += c * m[r][j];
        }
    }
    let swap = rng.gen_range(0..k);
    m.swap(0, swap);
    if rng.gen_bool(0.5) {
        m[0].iter_mut().for_each(|x| *x = -*x);
    }
    m
}

#[test]
fn random_unimodular_images_are_recognized() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sources = [graphic_base("K:4"), graphic_independence("B:1,1"), graphic_base("C:1,1;p=0,q=1")];
    for p in &sources {
        let k = p.ambient_dim();
        for _ in 0..4 {
            let a = random_unimodular(k, &mut rng);
            let t: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
            let q = p.map_affine(&a, &t);
            assert_eq!(canonical_form(p).unwrap(), canonical_form(&q).unwrap());
            let v = decide(p, &q);
            assert!(v.witness().unwrap().verify(p, &q));
        }
    }
}

#[test]
fn deciders_agree_on_small_pairs() {
    let polys = [
        graphic_base("A:3"),
        graphic_independence("A:2"),
        graphic_base("B:1;p=1"),
        stable_set_polytope(&path3()).unwrap(),
        graphic_base("B:1,1"),
        graphic_independence("U:A:1|A:2"),
        graphic_base("K:4"),
        graphic_independence("Cyc:3"),
    ];
    for p in &polys {
        for q in &polys {
            // Both errors out on disagreement
            decide_equivalence(p, q, Strategy::Both, &SearchLimits::default()).unwrap();
        }
    }
}

#[test]
fn gates_report_inconclusive() {
    let p = graphic_base("K:5");
    let q = graphic_base("K:5").map_affine(&random_unimodular(10, &mut ChaCha8Rng::seed_from_u64(1)), &[0; 10]);
    let tight = SearchLimits {
        max_dim: 3,
        ..SearchLimits::default()
    };
    assert!(matches!(
        decide_equivalence(&p, &q, Strategy::Canonical, &tight),
        Err(Error::Inconclusive(_))
    ));
}

#[test]
fn uniform_matroid_bases_are_hypersimplex() {
    let m = Matroid::uniform(2, 4).unwrap();
    let p = base_polytope(&m).unwrap();
    let q = base_polytope(&m.dual()).unwrap();
    // U24 is self-dual; g on all coordinates realizes it
    assert!(decide(&p, &q).is_equivalent());
}
