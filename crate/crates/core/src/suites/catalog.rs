//! Finite candidate lists for the classes `MI_n`, `GMB_n`, `Order_n`,
//! `Stab_n` and `Edge_n` at a fixed rank and dimension.
//!
//! `GMB` and (past five elements) `MI` are listed through their rank <= 3
//! classifications: products of connected pieces, with
//! `rank(P x Q) + 1 = (rank P + 1) + (rank Q + 1)`. The other classes are
//! enumerated directly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{full_mask, mask_elements};
use crate::constructors::{
    edge_polytope, maximal_cliques, odd_cycle_condition, order_polytope, perfectness, stable_set_polytope,
};
use crate::error::{Error, Result};
use crate::expr::PolytopeExpr;
use crate::geometry::LatticePolytope;
use crate::graph::{canonical_multigraph_key, SimpleGraph};
use crate::matroid::{k_subsets, Matroid};
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassId {
    #[serde(rename = "MI")]
    Mi,
    #[serde(rename = "GMB")]
    Gmb,
    Order,
    Stab,
    Edge,
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Mi => "MI",
            Self::Gmb => "GMB",
            Self::Order => "Order",
            Self::Stab => "Stab",
            Self::Edge => "Edge",
        })
    }
}

use ClassId as Class;

/// Largest dimension each class can be listed in.
pub fn dimension_gate(class: ClassId) -> usize {
    match class {
        Class::Mi | Class::Gmb => 12,
        Class::Order | Class::Stab => 6,
        Class::Edge => 5,
    }
}

#[derive(Clone, Debug)]
pub struct Candidate {
    /// A polytope expression accepted by the CLI.
    pub name: String,
    pub polytope: LatticePolytope,
}

#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub class: ClassId,
    pub rank: i64,
    pub dim: usize,
    /// How the list is known to be complete.
    pub source: String,
    pub candidates: Vec<Candidate>,
}

/// Every member of `class` with the given rank and dimension, up to
/// unimodular equivalence (possibly with repeats).
pub fn candidates(class: ClassId, rank: i64, dim: usize) -> Result<CandidateSet> {
    if dim > dimension_gate(class) {
        return Err(Error::GateExceeded {
            size: dim,
            limit: dimension_gate(class),
        });
    }
    if dim == 0 {
        return Err(Error::RankUndefinedForPoint);
    }
    let classified = class == Class::Gmb || (class == Class::Mi && dim > 5);
    if classified && !(0..=3).contains(&rank) {
        return Err(Error::ParameterOutOfRange(
            "classification candidates exist only for rank <= 3".into(),
        ));
    }
    let (source, list) = match class {
        Class::Mi if dim <= 5 => (
            format!("all loopless matroids on {dim} elements"),
            independence_candidates(dim)?,
        ),
        Class::Mi => (
            "products of simplices and triangle-matroid independence polytopes".into(),
            product_candidates(&mi_pieces(dim), rank, dim, "indep")?,
        ),
        Class::Gmb => (
            "products of connected graphic base polytopes of rank <= 3".into(),
            product_candidates(&gmb_pieces(dim), rank, dim, "base")?,
        ),
        Class::Order => (format!("all posets on {dim} elements"), order_candidates(dim)?),
        Class::Stab => (format!("all perfect graphs on {dim} vertices"), stable_candidates(dim, rank)?),
        Class::Edge => (
            format!("all graphs with the odd cycle condition and |V| - b(G) = {}", dim + 1),
            edge_candidates(dim)?,
        ),
    };
    let mut out = Vec::new();
    for c in list {
        if c.polytope.dim() == dim && c.polytope.rank()? == rank {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out.dedup_by(|a, b| a.name == b.name);
    Ok(CandidateSet {
        class,
        rank,
        dim,
        source,
        candidates: out,
    })
}

fn named(name: String) -> Result<Candidate> {
    let polytope = name.parse::<PolytopeExpr>()?.build()?;
    Ok(Candidate { name, polytope })
}

/// A connected piece: family spec, rank, dimension.
type Piece = (String, i64, usize);

fn mi_pieces(max_dim: usize) -> Vec<Piece> {
    let mut out: Vec<Piece> = (1..=max_dim).map(|s| (format!("A:{s}"), 0, s)).collect();
    for a in 1..=max_dim {
        for b in a..=max_dim {
            for c in b..=max_dim {
                if a + b + c <= max_dim {
                    out.push((format!("D:{a},{b},{c}"), 3, a + b + c));
                }
            }
        }
    }
    out
}

fn gmb_pieces(max_dim: usize) -> Vec<Piece> {
    let d = max_dim;
    let mut out: Vec<Piece> = (1..=d).map(|s| (format!("A:{}", s + 1), 0, s)).collect();
    for s in 1..=d {
        for p in 1..=d {
            if s + 1 + p <= d {
                out.push((format!("B:{s};p={p}"), 1, s + 1 + p));
            }
        }
    }
    for s1 in 1..=d {
        for s2 in s1..=d {
            for p in 0..=d {
                if s1 + s2 + 2 + p <= d {
                    out.push((format!("B:{s1},{s2};p={p}"), 2, s1 + s2 + 2 + p));
                }
            }
        }
    }
    for s1 in 1..=d {
        for s2 in s1..=d {
            for s3 in s2..=d {
                for p in 0..=d {
                    if s1 + s2 + s3 + 3 + p <= d {
                        out.push((format!("B:{s1},{s2},{s3};p={p}"), 3, s1 + s2 + s3 + 3 + p));
                    }
                }
                if s1 + s2 + s3 + 2 <= d {
                    out.push((format!("D:{},{},{}", s1 + 1, s2 + 1, s3 + 1), 3, s1 + s2 + s3 + 2));
                }
            }
        }
    }
    for s in 1..=d {
        for q in 1..=d {
            for t in 0..=d {
                for p in 0..=d {
                    if s + t + p + q + 3 <= d {
                        out.push((format!("C:{s},{t};p={p},q={q}"), 3, s + t + p + q + 3));
                    }
                }
            }
        }
    }
    out
}

/// Connected graphic base polytopes of the given rank (at most 3) and
/// dimension, one per family parameter choice.
pub fn gmb_connected(rank: i64, dim: usize) -> Result<Vec<Candidate>> {
    gmb_pieces(dim)
        .into_iter()
        .filter(|(_, r, d)| *r == rank && *d == dim)
        .map(|(s, _, _)| named(format!("base:{s}")))
        .collect()
}

fn product_candidates(pieces: &[Piece], rank: i64, dim: usize, kind: &str) -> Result<Vec<Candidate>> {
    fn rec(
        pieces: &[Piece],
        from: usize,
        budget: i64,
        dim: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if budget == 0 && dim == 0 {
            out.push(chosen.clone());
            return;
        }
        for i in from..pieces.len() {
            let (_, r, d) = &pieces[i];
            if *r < budget && *d <= dim {
                chosen.push(i);
                rec(pieces, i, budget - r - 1, dim - d, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut combos = Vec::new();
    rec(pieces, 0, rank + 1, dim, &mut Vec::new(), &mut combos);
    combos
        .into_iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().map(|&i| pieces[i].0.as_str()).collect();
            let spec = if parts.len() == 1 {
                parts[0].to_string()
            } else {
                format!("U:{}", parts.join("|"))
            };
            named(format!("{kind}:{spec}"))
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: u64, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if used & 1 << i == 0 {
                cur.push(i);
                rec(n, cur, used | 1 << i, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), 0, &mut out);
    out
}

fn permute_mask(m: u64, perm: &[usize]) -> u64 {
    mask_elements(m).into_iter().fold(0, |acc, e| acc | 1 << perm[e])
}

/// Loopless matroids on `n` elements, one per isomorphism class.
pub fn loopless_matroids(n: usize) -> Result<Vec<Matroid>> {
    if n > 5 {
        return Err(Error::GateExceeded { size: n, limit: 5 });
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in 1..=n {
        let subsets = k_subsets(n, r);
        for family in 1u64..(1 << subsets.len()) {
            let bases: Vec<u64> = mask_elements(family).into_iter().map(|i| subsets[i]).collect();
            if bases.iter().fold(0, |a, &b| a | b) != full_mask(n) {
                continue;
            }
            let Ok(m) = Matroid::from_masks(n, bases.clone()) else {
                continue;
            };
            let key = perms
                .iter()
                .map(|p| {
                    let mut b: Vec<u64> = bases.iter().map(|&x| permute_mask(x, p)).collect();
                    b.sort_unstable();
                    b
                })
                .min()
                .unwrap_or_default();
            if seen.insert(key) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

fn independence_candidates(n: usize) -> Result<Vec<Candidate>> {
    loopless_matroids(n)?
        .into_iter()
        .map(|m| {
            named(format!(
                "indep:{}",
                crate::expr::MatroidSpec::Bases {
                    n,
                    bases: m.bases().to_vec()
                }
            ))
        })
        .collect()
}

/// Posets on `n` elements, one per isomorphism class.
pub fn posets(n: usize) -> Result<Vec<Poset>> {
    if n > 6 {
        return Err(Error::GateExceeded { size: n, limit: 6 });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for rel in 0u64..(1 << pairs.len()) {
        let less = |a: usize, b: usize| a < b && rel & 1 << pairs.iter().position(|&x| x == (a, b)).unwrap() != 0;
        let transitive = (0..n).all(|a| {
            (a + 1..n).all(|b| !less(a, b) || (b + 1..n).all(|c| !less(b, c) || less(a, c)))
        });
        if !transitive {
            continue;
        }
        let list: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(a, b)| less(a, b)).collect();
        let key = perms
            .iter()
            .map(|p| {
                let mut r: Vec<(usize, usize)> = list.iter().map(|&(a, b)| (p[a], p[b])).collect();
                r.sort_unstable();
                r
            })
            .min()
            .unwrap_or_default();
        if seen.insert(key) {
            out.push(Poset::new(n, list, None)?);
        }
    }
    Ok(out)
}

fn order_candidates(n: usize) -> Result<Vec<Candidate>> {
    posets(n)?
        .into_iter()
        .map(|p| {
            let rel: Vec<String> = p.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
            Ok(Candidate {
                name: format!("order:P:{n};{}", rel.join(",")),
                polytope: order_polytope(&p)?,
            })
        })
        .collect()
}

fn explicit_name(kind: &str, g: &SimpleGraph) -> String {
    let e: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{kind}:E:{};{}", g.vertex_count(), e.join(","))
}

fn graph_key(g: &SimpleGraph) -> Result<(usize, Vec<(usize, usize)>)> {
    canonical_multigraph_key(&g.to_multigraph())
}

/// Simple graphs on `n` vertices accepted by `keep`, one per isomorphism
/// class. `keep` runs before the (costlier) canonical labelling.
pub fn simple_graphs(n: usize, mut keep: impl FnMut(&SimpleGraph) -> bool) -> Result<Vec<SimpleGraph>> {
    if n > 7 {
        return Err(Error::GateExceeded { size: n, limit: 7 });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = mask_elements(m).into_iter().map(|i| pairs[i]).collect();
        let g = SimpleGraph::new(n, &edges)?;
        if keep(&g) && seen.insert(graph_key(&g)?) {
            out.push(g);
        }
    }
    Ok(out)
}

fn stable_candidates(n: usize, rank: i64) -> Result<Vec<Candidate>> {
    // for a perfect graph the facets are x_v >= 0 and one per maximal clique
    let graphs = simple_graphs(n, |g| {
        maximal_cliques(g).len() as i64 == rank + 1 && perfectness(g).is_ok_and(|r| r.is_perfect)
    })?;
    graphs
        .into_iter()
        .map(|g| {
            Ok(Candidate {
                name: explicit_name("stab", &g),
                polytope: stable_set_polytope(&g)?,
            })
        })
        .collect()
}

fn edge_candidates(dim: usize) -> Result<Vec<Candidate>> {
    // connected components, each contributing |V| - 1 (bipartite) or |V|
    // (otherwise) to |V| - b(G) = dim + 1
    let target = dim + 1;
    let mut parts: Vec<(usize, SimpleGraph)> = Vec::new();
    for k in 2..=target + 1 {
        for g in simple_graphs(k, |g| g.components().len() == 1)? {
            let c = if g.is_bipartite_on(full_mask(k)) { k - 1 } else { k };
            if c <= target {
                parts.push((c, g));
            }
        }
    }
    fn rec(
        parts: &[(usize, SimpleGraph)],
        from: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(chosen.clone());
            return;
        }
        for i in from..parts.len() {
            if parts[i].0 <= left {
                chosen.push(i);
                rec(parts, i, left - parts[i].0, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut combos = Vec::new();
    rec(&parts, 0, target, &mut Vec::new(), &mut combos);
    let mut out = Vec::new();
    for combo in combos {
        let mut g = SimpleGraph::new(0, &[])?;
        for &i in &combo {
            g = g.disjoint_union(&parts[i].1)?;
        }
        if !odd_cycle_condition(&g)?.satisfied {
            continue;
        }
        out.push(Candidate {
            name: explicit_name("edge", &g),
            polytope: edge_polytope(&g)?,
        });
    }
    Ok(out)
}

/// Candidate counts per class, for reports.
pub fn summary(sets: &[CandidateSet]) -> BTreeMap<String, usize> {
    sets.iter()
        .map(|s| (format!("{}_{} dim {}", s.class, s.rank, s.dim), s.candidates.len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        // posets on 3 elements: 5 classes; loopless matroids on 3: 4
        // (U13, U23, U33, U12 + U11)
        assert_eq!(posets(3).unwrap().len(), 5);
        assert_eq!(loopless_matroids(3).unwrap().len(), 4);
        assert_eq!(posets(4).unwrap().len(), 16);
        assert_eq!(simple_graphs(4, |_| true).unwrap().len(), 11);
        assert_eq!(simple_graphs(5, |g| g.components().len() == 1).unwrap().len(), 21);
    }

    #[test]
    fn rank_zero_candidates_are_simplices() {
        for class in [Class::Mi, Class::Gmb, Class::Stab, Class::Order] {
            let set = candidates(class, 0, 3).unwrap();
            assert!(!set.candidates.is_empty(), "{class}");
            assert!(set.candidates.iter().all(|c| c.polytope.vertex_count() == 4), "{class}");
        }
    }

    #[test]
    fn classification_products() {
        let set = candidates(Class::Mi, 1, 3).unwrap();
        // P(A1 + A2) is the only product; the matroid sweep finds it too
        assert!(set.candidates.iter().all(|c| c.polytope.vertex_count() == 6));
        let set = candidates(Class::Gmb, 3, 4).unwrap();
        assert!(set.candidates.iter().any(|c| c.name == "base:U:A:2|A:2|A:2|A:2"));
        let set = candidates(Class::Gmb, 3, 5).unwrap();
        assert!(set.candidates.iter().any(|c| c.name == "base:D:2,2,2"));
    }

    #[test]
    fn edge_candidates_in_dimension_three() {
        // the cube has nothing to match
        assert!(candidates(Class::Edge, 2, 3).unwrap().candidates.is_empty());
        let set = candidates(Class::Edge, 1, 3).unwrap();
        assert_eq!(set.candidates.len(), 4);
        assert!(set.candidates.iter().all(|c| c.polytope.dim() == 3));
        assert!(candidates(Class::Edge, 4, 3).unwrap().candidates.iter().any(|c| c.name == "edge:E:4;0-1,0-2,0-3,1-2,1-3,2-3"));
    }
}
