//! Independence, base, order, chain, stable set and edge polytopes, with the
//! facet descriptions known for each class.

use serde::{Deserialize, Serialize};

use crate::bits::mask_elements;
use crate::error::{Error, Result};
use crate::geometry::{Equation, HalfspaceSystem, Inequality, LatticePolytope};
use crate::graph::SimpleGraph;
use crate::matroid::Matroid;
use crate::poset::Poset;

/// Vertex gate for the odd hole / antihole search.
pub const PERFECTNESS_GATE: usize = 14;
/// Vertex gate for odd cycle enumeration.
pub const ODD_CYCLE_GATE: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectnessReport {
    pub is_perfect: bool,
    /// An odd hole of `G`, or of the complement (then `antihole` is set),
    /// listed in cyclic order.
    pub witness: Option<Vec<usize>>,
    #[serde(default)]
    pub antihole: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycleConditionReport {
    pub satisfied: bool,
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

fn indicator(n: usize, mask: u64) -> Vec<i64> {
    (0..n).map(|i| ((mask >> i) & 1) as i64).collect()
}

fn polytope_of_masks(n: usize, masks: &[u64]) -> Result<LatticePolytope> {
    LatticePolytope::from_01_points(masks.iter().map(|&m| indicator(n, m)).collect())
}

pub fn independence_polytope(m: &Matroid) -> Result<LatticePolytope> {
    polytope_of_masks(m.ground_size(), &m.independent_sets())
}

pub fn base_polytope(m: &Matroid) -> Result<LatticePolytope> {
    polytope_of_masks(m.ground_size(), m.bases())
}

/// `x_e >= 0` for every element and `x(F) <= r(F)` for every nonempty
/// indecomposable flat.
pub fn theoretical_hrep_independence(m: &Matroid) -> Result<HalfspaceSystem> {
    let n = m.ground_size();
    let mut inequalities: Vec<Inequality> = (0..n).map(|e| Inequality::nonnegative(n, e)).collect();
    for f in m.indecomposable_flats()? {
        inequalities.push(Inequality::sum_at_most(n, &mask_elements(f), m.rank_mask(f) as i64));
    }
    Ok(HalfspaceSystem {
        ambient_dim: n,
        inequalities,
        equations: Vec::new(),
        irredundant: true,
    })
}

/// `x(E) = r(E)`, `x_e >= 0` when `M \ e` is connected, and `x(F) <= r(F)`
/// for every flacet.
pub fn theoretical_hrep_base(m: &Matroid) -> Result<HalfspaceSystem> {
    let n = m.ground_size();
    if !m.is_connected()? {
        return Err(Error::Disconnected);
    }
    let mut inequalities: Vec<Inequality> = m
        .connected_deletions()?
        .into_iter()
        .map(|e| Inequality::nonnegative(n, e))
        .collect();
    for f in m.flacets()? {
        inequalities.push(Inequality::sum_at_most(n, &mask_elements(f), m.rank_mask(f) as i64));
    }
    Ok(HalfspaceSystem {
        ambient_dim: n,
        inequalities,
        equations: vec![Equation {
            normal: vec![1; n],
            offset: m.rank() as i64,
        }],
        irredundant: true,
    })
}

/// Convex hull of the order ideal indicators.
pub fn order_polytope(p: &Poset) -> Result<LatticePolytope> {
    polytope_of_masks(p.element_count(), &p.order_ideals()?)
}

/// Convex hull of the antichain indicators.
pub fn chain_polytope(p: &Poset) -> Result<LatticePolytope> {
    polytope_of_masks(p.element_count(), &p.antichains()?)
}

/// `0 <= x_i <= 1` and `x_a >= x_b` whenever `a < b` is a cover.
pub fn theoretical_hrep_order(p: &Poset) -> HalfspaceSystem {
    let n = p.element_count();
    let mut inequalities = Vec::new();
    let minimal: Vec<usize> = (0..n).filter(|&x| p.strictly_below(x) == 0).collect();
    let maximal: Vec<usize> = (0..n).filter(|&x| p.strictly_above(x) == 0).collect();
    for &x in &maximal {
        inequalities.push(Inequality::nonnegative(n, x));
    }
    for &x in &minimal {
        inequalities.push(Inequality::sum_at_most(n, &[x], 1));
    }
    for &(a, b) in p.covers() {
        let mut normal = vec![0; n];
        normal[a] = -1;
        normal[b] = 1;
        inequalities.push(Inequality::new(normal, 0));
    }
    HalfspaceSystem {
        ambient_dim: n,
        inequalities,
        equations: Vec::new(),
        irredundant: true,
    }
}

fn sorted_cycle(mut c: Vec<usize>) -> Vec<usize> {
    // rotate so the least vertex leads, then fix direction
    let k = c.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i).unwrap_or(0);
    c.rotate_left(k);
    if c.len() > 2 && c[c.len() - 1] < c[1] {
        c[1..].reverse();
    }
    c
}

// All chordless cycles of length >= 3 whose least vertex is the start.
fn induced_cycles(g: &SimpleGraph, mut visit: impl FnMut(&[usize]) -> bool) {
    let n = g.vertex_count();
    fn extend(g: &SimpleGraph, path: &mut Vec<usize>, inside: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        // vertices adjacent to the interior of the path (excluding start and last)
        let interior = path[1..path.len() - 1].iter().fold(0u64, |a, &v| a | g.neighbors(v));
        for w in mask_elements(g.neighbors(last) & !inside) {
            if w <= start || interior & (1 << w) != 0 {
                continue;
            }
            path.push(w);
            let closes = g.has_edge(w, start);
            if closes && path.len() >= 3 {
                if path[1] < w && !visit(path) {
                    return false;
                }
            } else if !closes && !extend(g, path, inside | 1 << w, visit) {
                return false;
            }
            path.pop();
        }
        true
    }
    for s in 0..n {
        for v in mask_elements(g.neighbors(s)) {
            if v <= s {
                continue;
            }
            let mut path = vec![s, v];
            if !extend(g, &mut path, (1 << s) | (1 << v), &mut visit) {
                return;
            }
        }
    }
}

fn odd_hole(g: &SimpleGraph) -> Option<Vec<usize>> {
    let mut found = None;
    induced_cycles(g, |c| {
        if c.len() >= 5 && c.len() % 2 == 1 {
            found = Some(sorted_cycle(c.to_vec()));
            false
        } else {
            true
        }
    });
    found
}

/// Perfect iff neither `G` nor its complement has an induced odd cycle of
/// length at least 5.
pub fn perfectness(g: &SimpleGraph) -> Result<PerfectnessReport> {
    if g.vertex_count() > PERFECTNESS_GATE {
        return Err(Error::GateExceeded {
            size: g.vertex_count(),
            limit: PERFECTNESS_GATE,
        });
    }
    if let Some(w) = odd_hole(g) {
        return Ok(PerfectnessReport {
            is_perfect: false,
            witness: Some(w),
            antihole: false,
        });
    }
    if let Some(w) = odd_hole(&g.complement()) {
        return Ok(PerfectnessReport {
            is_perfect: false,
            witness: Some(w),
            antihole: true,
        });
    }
    Ok(PerfectnessReport {
        is_perfect: true,
        witness: None,
        antihole: false,
    })
}

/// Stable sets as masks, `∅` included, increasing.
pub fn stable_sets(g: &SimpleGraph) -> Result<Vec<u64>> {
    let n = g.vertex_count();
    if n > 30 {
        return Err(Error::GateExceeded { size: n, limit: 30 });
    }
    let mut out = Vec::new();
    fn rec(g: &SimpleGraph, i: usize, cur: u64, out: &mut Vec<u64>) {
        if i == g.vertex_count() {
            out.push(cur);
            return;
        }
        rec(g, i + 1, cur, out);
        if g.neighbors(i) & cur == 0 {
            rec(g, i + 1, cur | 1 << i, out);
        }
    }
    rec(g, 0, 0, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Stable set polytope of a perfect graph.
pub fn stable_set_polytope(g: &SimpleGraph) -> Result<LatticePolytope> {
    let report = perfectness(g)?;
    if !report.is_perfect {
        return Err(Error::NotPerfect(report));
    }
    polytope_of_masks(g.vertex_count(), &stable_sets(g)?)
}

/// Maximal cliques by Bron–Kerbosch with pivoting, sorted.
pub fn maximal_cliques(g: &SimpleGraph) -> Vec<u64> {
    fn bk(g: &SimpleGraph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = mask_elements(p | x)
            .into_iter()
            .max_by_key(|&u| (g.neighbors(u) & p).count_ones())
            .expect("p | x nonempty");
        for v in mask_elements(p & !g.neighbors(pivot)) {
            bk(g, r | 1 << v, p & g.neighbors(v), x & g.neighbors(v), out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n > 0 {
        bk(g, 0, crate::bits::full_mask(n), 0, &mut out);
    }
    out.sort_unstable();
    out
}

/// `x_i >= 0` and `x(Q) <= 1` for each maximal clique `Q`.
pub fn theoretical_hrep_stable(g: &SimpleGraph) -> HalfspaceSystem {
    let n = g.vertex_count();
    let mut inequalities: Vec<Inequality> = (0..n).map(|i| Inequality::nonnegative(n, i)).collect();
    for q in maximal_cliques(g) {
        inequalities.push(Inequality::sum_at_most(n, &mask_elements(q), 1));
    }
    HalfspaceSystem {
        ambient_dim: n,
        inequalities,
        equations: Vec::new(),
        irredundant: true,
    }
}

/// Checks every pair of vertex-disjoint odd cycles for a bridging edge.
/// Chordless cycles suffice: an odd cycle with a chord contains a shorter
/// odd cycle on a subset of its vertices.
pub fn odd_cycle_condition(g: &SimpleGraph) -> Result<OddCycleConditionReport> {
    let n = g.vertex_count();
    if n > ODD_CYCLE_GATE {
        return Err(Error::GateExceeded {
            size: n,
            limit: ODD_CYCLE_GATE,
        });
    }
    let mut odd: Vec<Vec<usize>> = Vec::new();
    induced_cycles(g, |c| {
        if c.len() % 2 == 1 {
            odd.push(sorted_cycle(c.to_vec()));
        }
        true
    });
    let masks: Vec<u64> = odd.iter().map(|c| c.iter().fold(0, |a, &v| a | 1 << v)).collect();
    let reach: Vec<u64> = masks
        .iter()
        .map(|&m| mask_elements(m).into_iter().fold(m, |a, v| a | g.neighbors(v)))
        .collect();
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            if reach[i] & masks[j] == 0 {
                return Ok(OddCycleConditionReport {
                    satisfied: false,
                    witness: Some((odd[i].clone(), odd[j].clone())),
                });
            }
        }
    }
    Ok(OddCycleConditionReport {
        satisfied: true,
        witness: None,
    })
}

/// Convex hull of `e_u + e_v` over the edges.
pub fn edge_polytope(g: &SimpleGraph) -> Result<LatticePolytope> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    polytope_of_masks(g.vertex_count(), &edges.iter().map(|&(u, v)| (1 << u) | (1 << v)).collect::<Vec<u64>>())
}

/// Number of bipartite connected components.
pub fn bipartite_component_count(g: &SimpleGraph) -> usize {
    g.components().into_iter().filter(|&c| g.is_bipartite_on(c)).count()
}

pub fn product_polytope(p: &LatticePolytope, q: &LatticePolytope) -> LatticePolytope {
    p.product(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{graphic_matroid, FamilySpec};
    use crate::poset::make_W_poset;

    fn graphic(spec: &str) -> Matroid {
        graphic_matroid(&spec.parse::<FamilySpec>().unwrap().generate().unwrap()).unwrap()
    }

    fn simple(spec: &str) -> SimpleGraph {
        spec.parse::<FamilySpec>().unwrap().generate().unwrap().to_simple().unwrap()
    }

    fn cycle_graph(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn independence_polytope_examples() {
        let p = independence_polytope(&Matroid::uniform(1, 3).unwrap()).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.rank().unwrap(), 0);
        assert_eq!(independence_polytope(&graphic("D:1,1,1")).unwrap().vertex_count(), 7);
        let sum = Matroid::uniform(1, 1).unwrap().direct_sum(&Matroid::uniform(1, 2).unwrap()).unwrap();
        let p = independence_polytope(&sum).unwrap();
        assert_eq!(p.vertex_count(), 6);
        assert_eq!(p.rank().unwrap(), 1);
    }

    #[test]
    fn base_polytope_examples() {
        let t = base_polytope(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert_eq!(t.vertices(), &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        let b = base_polytope(&graphic("B:1;p=1")).unwrap();
        assert_eq!((b.vertex_count(), b.ambient_dim(), b.dim()), (5, 4, 3));
        let m = graphic("C:1,0;p=0,q=1");
        let dual: Vec<Vec<i64>> = base_polytope(&m)
            .unwrap()
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| 1 - x).collect())
            .collect();
        let mut expected = base_polytope(&m.dual()).unwrap().vertices().to_vec();
        let mut got = dual;
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn theoretical_hreps_match_hull() {
        let u13 = Matroid::uniform(1, 3).unwrap();
        let h = theoretical_hrep_independence(&u13).unwrap();
        assert_eq!(h.len(), 4);
        assert!(h.compare_with_hull(&independence_polytope(&u13).unwrap()).is_empty());
        let c5 = graphic("Cyc:5");
        let h = theoretical_hrep_base(&c5).unwrap();
        assert_eq!(h.len(), 5);
        assert!(h.inequalities.iter().all(|i| i.offset == 1));
        let b11 = graphic("B:1;p=1");
        let h = theoretical_hrep_base(&b11).unwrap();
        assert_eq!(h.len(), 5);
        assert!(h.compare_with_hull(&base_polytope(&b11).unwrap()).is_empty());
        let two = Matroid::uniform(1, 1).unwrap().direct_sum(&Matroid::uniform(1, 2).unwrap()).unwrap();
        assert!(matches!(theoretical_hrep_base(&two), Err(Error::Disconnected)));
    }

    #[test]
    fn order_and_chain_polytopes() {
        assert_eq!(order_polytope(&Poset::chain(2)).unwrap().vertex_count(), 3);
        let sq = order_polytope(&Poset::antichain(2)).unwrap();
        assert_eq!((sq.vertex_count(), sq.facet_count()), (4, 4));
        let w = make_W_poset(1, 1, 1, 1).unwrap();
        let o = order_polytope(&w).unwrap();
        assert_eq!(o.dim(), 7);
        assert!(theoretical_hrep_order(&w).compare_with_hull(&o).is_empty());
        let c = chain_polytope(&w).unwrap();
        assert_eq!(c.vertices(), stable_set_polytope(&w.comparability_graph()).unwrap().vertices());
    }

    #[test]
    fn perfectness_examples() {
        let r = perfectness(&cycle_graph(5)).unwrap();
        assert!(!r.is_perfect);
        assert_eq!(r.witness.as_ref().unwrap().len(), 5);
        assert!(matches!(stable_set_polytope(&cycle_graph(5)), Err(Error::NotPerfect(_))));
        let r = perfectness(&cycle_graph(7).complement()).unwrap();
        assert!(!r.is_perfect);
        assert!(perfectness(&cycle_graph(6)).unwrap().is_perfect);
        assert!(perfectness(&SimpleGraph::complete(5)).unwrap().is_perfect);
        assert!(perfectness(&simple("G:1,2;p=1")).unwrap().is_perfect);
        assert!(perfectness(&make_W_poset(2, 1, 1, 2).unwrap().comparability_graph()).unwrap().is_perfect);
    }

    #[test]
    fn stable_set_examples() {
        let k4 = stable_set_polytope(&SimpleGraph::complete(4)).unwrap();
        assert_eq!(k4.rank().unwrap(), 0);
        let p3 = simple("G:1;p=1");
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        let s = stable_set_polytope(&p3).unwrap();
        assert_eq!((s.vertex_count(), s.facet_count(), s.dim(), s.rank().unwrap()), (5, 5, 3, 1));
        assert!(theoretical_hrep_stable(&p3).compare_with_hull(&s).is_empty());
        // isolated vertex gives a unit segment factor
        let iso = SimpleGraph::new(3, &[(0, 1)]).unwrap();
        assert!(theoretical_hrep_stable(&iso).compare_with_hull(&stable_set_polytope(&iso).unwrap()).is_empty());
    }

    #[test]
    fn cliques_of_small_graphs() {
        assert_eq!(maximal_cliques(&SimpleGraph::complete(3)), vec![0b111]);
        assert_eq!(maximal_cliques(&cycle_graph(4)), vec![0b0011, 0b0110, 0b1001, 0b1100]);
        assert_eq!(maximal_cliques(&SimpleGraph::new(2, &[]).unwrap()), vec![1, 2]);
    }

    #[test]
    fn edge_polytope_examples() {
        let t = edge_polytope(&SimpleGraph::complete(3)).unwrap();
        assert_eq!((t.ambient_dim(), t.dim()), (3, 2));
        let k222 = simple("KM:2,2,2");
        let e = edge_polytope(&k222).unwrap();
        assert_eq!((e.vertex_count(), e.dim(), e.rank().unwrap()), (12, 5, 3));
        assert_eq!(bipartite_component_count(&k222), 0);
        let two = SimpleGraph::complete(3).disjoint_union(&SimpleGraph::complete(3)).unwrap();
        let r = odd_cycle_condition(&two).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.witness, Some((vec![0, 1, 2], vec![3, 4, 5])));
        let mut bridged = two.edges();
        bridged.push((2, 3));
        assert!(odd_cycle_condition(&SimpleGraph::new(6, &bridged).unwrap()).unwrap().satisfied);
        assert!(odd_cycle_condition(&k222).unwrap().satisfied);
        // bipartite: dim = |V| - 1 - 1
        let c4 = edge_polytope(&cycle_graph(4)).unwrap();
        assert_eq!(c4.dim(), 2);
    }

    #[test]
    fn product_ranks() {
        let seg = LatticePolytope::new(vec![vec![0], vec![1]]).unwrap();
        let sq = product_polytope(&seg, &seg);
        assert_eq!(sq.rank().unwrap(), 1);
        let a2 = base_polytope(&graphic("A:2")).unwrap();
        let cube = product_polytope(&product_polytope(&a2, &a2), &product_polytope(&a2, &a2));
        assert_eq!((cube.dim(), cube.rank().unwrap()), (4, 3));
    }
}
