//! Exhaustive generation of small 2-connected graphs by ear addition.

use std::collections::{BTreeSet, HashSet};

use super::Multigraph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by the canonical labelling.
pub const CANONICAL_VERTEX_LIMIT: usize = 9;

/// `g` plus a path of `len` new edges from `u` to `v` (`u != v`); the
/// `len - 1` inner vertices are appended.
pub fn add_ear(g: &Multigraph, u: usize, v: usize, len: usize) -> Result<Multigraph> {
    if u == v || len == 0 {
        return Err(Error::ParameterOutOfRange("ear needs distinct ends and length >= 1".into()));
    }
    for w in [u, v] {
        if w >= g.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: w,
                count: g.vertex_count,
            });
        }
    }
    let mut out = g.clone();
    let mut prev = u;
    for _ in 1..len {
        let w = out.vertex_count;
        out.vertex_count += 1;
        out.edges.push((prev, w));
        prev = w;
    }
    out.edges.push((prev, v));
    Ok(out)
}

fn permutations_within(groups: &[Vec<usize>], f: &mut dyn FnMut(&[usize])) {
    fn rec(groups: &[Vec<usize>], g: usize, used: &mut Vec<bool>, order: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if g == groups.len() {
            f(order);
            return;
        }
        let group = &groups[g];
        let placed = group.iter().filter(|&&v| used[v]).count();
        if placed == group.len() {
            rec(groups, g + 1, used, order, f);
            return;
        }
        for &v in group {
            if !used[v] {
                used[v] = true;
                order.push(v);
                rec(groups, g, used, order, f);
                order.pop();
                used[v] = false;
            }
        }
    }
    let n = groups.iter().map(Vec::len).sum::<usize>();
    rec(groups, 0, &mut vec![false; n], &mut Vec::with_capacity(n), f);
}

/// A labelling-independent key: equal iff the multigraphs are isomorphic
/// (ignoring edge identities). Vertices are first grouped by degree and
/// multiplicity profile; the minimum relabelled edge list over all
/// group-respecting orders is returned.
pub fn canonical_multigraph_key(g: &Multigraph) -> Result<(usize, Vec<(usize, usize)>)> {
    let n = g.vertex_count;
    if n > CANONICAL_VERTEX_LIMIT {
        return Err(Error::GateExceeded {
            size: n,
            limit: CANONICAL_VERTEX_LIMIT,
        });
    }
    let mut mult = vec![vec![0usize; n]; n];
    for &(u, v) in &g.edges {
        mult[u][v] += 1;
        if u != v {
            mult[v][u] += 1;
        }
    }
    let profile = |v: usize| {
        let mut row: Vec<usize> = mult[v].iter().copied().filter(|&m| m > 0).collect();
        row.sort_unstable();
        (row.iter().sum::<usize>(), mult[v][v], row)
    };
    let classes: BTreeSet<_> = (0..n).map(profile).collect();
    let groups: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| (0..n).filter(|&v| &profile(v) == c).collect())
        .collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    permutations_within(&groups, &mut |order| {
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut e: Vec<(usize, usize)> = g
            .edges
            .iter()
            .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    });
    Ok((n, best.unwrap_or_default()))
}

/// Every 2-connected loopless multigraph with at most `max_edges` edges and
/// `max_vertices` vertices, up to isomorphism, in order of edge count. With
/// `simple` set only simple graphs are produced. `K_2` is included.
pub fn two_connected_multigraphs(max_edges: usize, max_vertices: usize, simple: bool) -> Result<Vec<Multigraph>> {
    if max_vertices > CANONICAL_VERTEX_LIMIT {
        return Err(Error::GateExceeded {
            size: max_vertices,
            limit: CANONICAL_VERTEX_LIMIT,
        });
    }
    let k2 = Multigraph {
        vertex_count: 2,
        edges: vec![(0, 1)],
    };
    if max_edges == 0 || max_vertices < 2 {
        return Ok(Vec::new());
    }
    let mut seen = HashSet::new();
    seen.insert(canonical_multigraph_key(&k2)?);
    let mut layer = vec![k2.clone()];
    let mut out = vec![k2];
    for _ in 1..max_edges {
        let mut next = Vec::new();
        for g in &layer {
            for len in 1..=max_edges - g.edge_count() {
                if g.vertex_count + len - 1 > max_vertices {
                    break;
                }
                for u in 0..g.vertex_count {
                    for v in u + 1..g.vertex_count {
                        if simple && len == 1 && g.edges.iter().any(|&e| e == (u, v) || e == (v, u)) {
                            continue;
                        }
                        let h = add_ear(g, u, v, len)?;
                        if seen.insert(canonical_multigraph_key(&h)?) {
                            next.push(h);
                        }
                    }
                }
            }
        }
        // graphs reached in this round have more edges than their parents,
        // but not necessarily exactly one more; keep them all and sort.
        out.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    out.sort_by_key(|g| (g.edge_count(), g.vertex_count));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    #[test]
    fn isomorphic_graphs_share_keys() {
        let a = Multigraph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 0)]).unwrap();
        let b = Multigraph::new(3, vec![(2, 1), (0, 2), (1, 2), (0, 1)]).unwrap();
        let c = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0), (2, 0), (2, 0)]).unwrap();
        assert_eq!(canonical_multigraph_key(&a).unwrap(), canonical_multigraph_key(&b).unwrap());
        assert_ne!(canonical_multigraph_key(&a).unwrap(), canonical_multigraph_key(&c).unwrap());
    }

    #[test]
    fn add_ear_appends_path() {
        let k2 = Multigraph::new(2, vec![(0, 1)]).unwrap();
        let c3 = add_ear(&k2, 0, 1, 2).unwrap();
        assert_eq!(c3.edges, vec![(0, 1), (0, 2), (2, 1)]);
        assert!(add_ear(&k2, 0, 0, 1).is_err());
    }

    #[test]
    fn small_counts() {
        // simple 2-connected graphs on <= 4 vertices: K2, C3, C4, K4-e, K4
        let simple = two_connected_multigraphs(6, 4, true).unwrap();
        assert_eq!(simple.len(), 5);
        assert!(simple.iter().all(|g| g.is_simple() && g.is_two_connected()));
        // multigraphs with <= 3 edges: A1, A2, A3, C3, B_{1,0} = A3 (same), triangle
        let multi = two_connected_multigraphs(3, 9, false).unwrap();
        let names: Vec<(usize, usize)> = multi.iter().map(|g| (g.vertex_count, g.edge_count())).collect();
        assert_eq!(names, vec![(2, 1), (2, 2), (2, 3), (3, 3)]);
    }

    #[test]
    fn families_appear_in_sweep() {
        let all = two_connected_multigraphs(6, 5, false).unwrap();
        let keys: HashSet<_> = all.iter().map(|g| canonical_multigraph_key(g).unwrap()).collect();
        for s in ["A:4", "B:1;p=1", "B:1,1;p=0", "D:2,2,2", "C:1,0;p=0,q=1", "K:4"] {
            let g: Multigraph = s.parse::<FamilySpec>().unwrap().generate().unwrap();
            assert!(keys.contains(&canonical_multigraph_key(&g).unwrap()), "{s}");
        }
    }

    #[test]
    fn combinatorial_rank_matches_hull() {
        use crate::constructors::base_polytope;
        use crate::graph::graphic_matroid;
        for g in two_connected_multigraphs(6, 5, false).unwrap() {
            if g.edge_count() < 2 {
                assert!(g.base_polytope_rank().is_err());
                continue;
            }
            let hull = base_polytope(&graphic_matroid(&g).unwrap()).unwrap().rank().unwrap();
            assert_eq!(g.base_polytope_rank().unwrap(), hull, "{g:?}");
        }
    }
}
