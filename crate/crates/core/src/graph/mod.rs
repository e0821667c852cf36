//! Multigraphs with positional edge identities, and simple graphs as
//! adjacency bitmasks.

mod families;
mod sweep;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bits::{full_mask, mask_elements};
use crate::error::{Error, Result};
use crate::matroid::{k_subsets, Matroid};

pub use families::{fixture, fixtures, theta_graph, FamilySpec, Fixture};
pub use sweep::{add_ear, canonical_multigraph_key, two_connected_multigraphs, CANONICAL_VERTEX_LIMIT};

/// Largest edge count for which edge subsets are enumerated.
pub const EDGE_SUBSET_GATE: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    pub vertex_count: usize,
    /// Edge `i` is `edges[i]`; loops have equal endpoints.
    pub edges: Vec<(usize, usize)>,
}

/// Open ear decomposition `K_2 ∪ P_1 ∪ ... ∪ P_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarDecomposition {
    /// The starting edge.
    pub base: usize,
    /// Each ear is a path, listed as edge indices from one end to the other.
    pub ears: Vec<Vec<usize>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
        }
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    pub fn has_loops(&self) -> bool {
        (0..self.edges.len()).any(|e| self.is_loop(e))
    }

    fn same_pair(a: (usize, usize), b: (usize, usize)) -> bool {
        a == b || (a.1, a.0) == b
    }

    /// Another edge joins the same two endpoints.
    pub fn has_parallel_partner(&self, e: usize) -> bool {
        let pe = self.edges[e];
        self.edges
            .iter()
            .enumerate()
            .any(|(f, &pf)| f != e && Self::same_pair(pe, pf))
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loops() && (0..self.edges.len()).all(|e| !self.has_parallel_partner(e))
    }

    fn check_edge(&self, e: usize) -> Result<()> {
        if e >= self.edges.len() {
            return Err(Error::EdgeOutOfRange {
                edge: e,
                len: self.edges.len(),
            });
        }
        Ok(())
    }

    /// Connected components of `(V, A)` for an edge mask `A`.
    fn component_count_of(&self, mask: u64) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        let mut comps = self.vertex_count;
        for e in mask_elements(mask) {
            let (u, v) = self.edges[e];
            if uf.union(u, v) {
                comps -= 1;
            }
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        let mut comps = self.vertex_count;
        for &(u, v) in &self.edges {
            if uf.union(u, v) {
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count >= 1 && self.component_count() == 1
    }

    fn connected_without(&self, removed: usize) -> bool {
        let n = self.vertex_count;
        let mut uf = UnionFind::new(n);
        let mut comps = n - 1;
        for &(u, v) in &self.edges {
            if u != removed && v != removed && uf.union(u, v) {
                comps -= 1;
            }
        }
        comps == 1
    }

    /// Connected with no cut vertex. `K_2` (and any bundle of parallel
    /// edges on two vertices) counts as 2-connected; a single vertex does
    /// not. Loops play no role.
    pub fn is_two_connected(&self) -> bool {
        if self.vertex_count < 2 || !self.is_connected() {
            return false;
        }
        if self.vertex_count == 2 {
            return true;
        }
        (0..self.vertex_count).all(|v| self.connected_without(v))
    }

    /// Greedy ear decomposition, deterministic in the edge order. `None` when
    /// the graph is not 2-connected or has loops.
    pub fn ear_decomposition(&self) -> Option<EarDecomposition> {
        if !self.is_two_connected() || self.has_loops() {
            return None;
        }
        let n = self.vertex_count;
        let mut covered = vec![false; n];
        let mut used = vec![false; self.edges.len()];
        let (a, b) = self.edges[0];
        covered[a] = true;
        covered[b] = true;
        used[0] = true;
        let mut ears = Vec::new();
        while let Some(e) = (0..self.edges.len()).find(|&e| {
            let (u, v) = self.edges[e];
            !used[e] && (covered[u] || covered[v])
        }) {
            let (u, v) = self.edges[e];
            let (start, next) = if covered[u] { (u, v) } else { (v, u) };
            if covered[next] {
                used[e] = true;
                ears.push(vec![e]);
                continue;
            }
            let path = self.path_to_covered(next, start, &covered, &used)?;
            used[e] = true;
            let mut ear = vec![e];
            for &f in &path {
                used[f] = true;
                let (x, y) = self.edges[f];
                covered[x] = true;
                covered[y] = true;
            }
            covered[next] = true;
            ear.extend(path);
            ears.push(ear);
        }
        Some(EarDecomposition { base: 0, ears })
    }

    // BFS from `from` through uncovered vertices to a covered vertex other
    // than `avoid`; returns the edges of the path in order.
    fn path_to_covered(&self, from: usize, avoid: usize, covered: &[bool], used: &[bool]) -> Option<Vec<usize>> {
        let n = self.vertex_count;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for (f, &(p, q)) in self.edges.iter().enumerate() {
                if used[f] || (p != x && q != x) {
                    continue;
                }
                let y = if p == x { q } else { p };
                if seen[y] || y == avoid {
                    continue;
                }
                seen[y] = true;
                parent[y] = Some((x, f));
                if covered[y] {
                    let mut path = Vec::new();
                    let mut cur = y;
                    while let Some((prev, edge)) = parent[cur] {
                        path.push(edge);
                        cur = prev;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(y);
            }
        }
        None
    }

    /// Removes the listed edges; the others keep their relative order.
    pub fn delete_edges(&self, s: &[usize]) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !s.contains(i))
            .map(|(_, &e)| e)
            .collect();
        Self {
            vertex_count: self.vertex_count,
            edges,
        }
    }

    /// Contracts the listed edges. Merged vertices take the position of the
    /// smallest original vertex among them; remaining edges keep their
    /// relative order and resulting loops are kept.
    pub fn contract_edges(&self, s: &[usize]) -> Self {
        let mut uf = UnionFind::new(self.vertex_count);
        for &e in s {
            let (u, v) = self.edges[e];
            uf.union(u, v);
        }
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[v] = label[r];
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !s.contains(i))
            .map(|(_, &(u, v))| (label[u], label[v]))
            .collect();
        Self {
            vertex_count: next,
            edges,
        }
    }

    fn require_two_connected(&self) -> Result<()> {
        if !self.is_two_connected() {
            return Err(Error::NotTwoConnected);
        }
        Ok(())
    }

    /// `G \ e` is 2-connected.
    pub fn edge_deletable(&self, e: usize) -> Result<bool> {
        self.require_two_connected()?;
        self.check_edge(e)?;
        Ok(self.delete_edges(&[e]).is_two_connected())
    }

    /// `G / e` is 2-connected and `e` has no parallel partner (which would
    /// become a loop).
    pub fn edge_contractible(&self, e: usize) -> Result<bool> {
        self.require_two_connected()?;
        self.check_edge(e)?;
        if self.is_loop(e) || self.has_parallel_partner(e) {
            return Ok(false);
        }
        Ok(self.contract_edges(&[e]).is_two_connected())
    }

    /// Edge sets `E(H)` of 2-connected induced subgraphs `H` with `G / E(H)`
    /// 2-connected and loopless, as increasing edge masks.
    pub fn graph_flacets(&self) -> Result<Vec<u64>> {
        self.require_two_connected()?;
        if self.has_loops() {
            return Err(Error::GraphHasLoops);
        }
        if self.edges.len() > EDGE_SUBSET_GATE {
            return Err(Error::GateExceeded {
                size: self.edges.len(),
                limit: EDGE_SUBSET_GATE,
            });
        }
        let n = self.vertex_count;
        let mut out = Vec::new();
        for vs in 1..(1u64 << n) {
            if vs.count_ones() < 2 {
                continue;
            }
            let inside: Vec<usize> = (0..self.edges.len())
                .filter(|&e| {
                    let (u, v) = self.edges[e];
                    vs & (1 << u) != 0 && vs & (1 << v) != 0
                })
                .collect();
            if inside.is_empty() || inside.len() == self.edges.len() {
                continue;
            }
            let verts = mask_elements(vs);
            let sub = self.induced(&verts, &inside);
            if !sub.is_two_connected() {
                continue;
            }
            let quotient = self.contract_edges(&inside);
            if quotient.has_loops() || !quotient.is_two_connected() {
                continue;
            }
            out.push(inside.iter().fold(0u64, |m, &e| m | 1 << e));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `rank B(M(G))` from the facet description: one facet per deletable
    /// edge and one per flacet, in dimension `|E| - 1`.
    pub fn base_polytope_rank(&self) -> Result<i64> {
        let flacets = self.graph_flacets()?.len();
        let m = self.edges.len();
        if m < 2 {
            return Err(Error::RankUndefinedForPoint);
        }
        let mut deletable = 0;
        for e in 0..m {
            if self.edge_deletable(e)? {
                deletable += 1;
            }
        }
        Ok((deletable + flacets) as i64 - m as i64)
    }

    fn induced(&self, verts: &[usize], edges: &[usize]) -> Self {
        let pos = |x: usize| verts.iter().position(|&v| v == x).unwrap();
        Self {
            vertex_count: verts.len(),
            edges: edges
                .iter()
                .map(|&e| (pos(self.edges[e].0), pos(self.edges[e].1)))
                .collect(),
        }
    }

    /// Disjoint union; vertices and edges of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let k = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + k, v + k)));
        Self {
            vertex_count: k + other.vertex_count,
            edges,
        }
    }

    pub fn to_simple(&self) -> Result<SimpleGraph> {
        if self.has_loops() {
            return Err(Error::NotSimple("graph has loops".into()));
        }
        if let Some(e) = (0..self.edges.len()).find(|&e| self.has_parallel_partner(e)) {
            return Err(Error::NotSimple(format!("edge {e} has a parallel partner")));
        }
        SimpleGraph::new(self.vertex_count, &self.edges)
    }
}

/// The graphic matroid: bases are the maximal spanning forests.
pub fn graphic_matroid(g: &Multigraph) -> Result<Matroid> {
    let m = g.edge_count();
    if m > 64 {
        return Err(Error::GroundSetTooLarge(m));
    }
    let r = g.vertex_count - g.component_count();
    let loops: u64 = (0..m).filter(|&e| g.is_loop(e)).fold(0, |acc, e| acc | 1 << e);
    let bases: Vec<u64> = k_subsets(m, r)
        .into_iter()
        .filter(|&b| b & loops == 0 && g.component_count_of(b) == g.vertex_count - r)
        .collect();
    Ok(Matroid::new_unchecked(m, bases))
}

/// Simple graph on at most 64 vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > 64 {
            return Err(Error::GateExceeded { size: n, limit: 64 });
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, count: n });
                }
            }
            if u == v {
                return Err(Error::NotSimple(format!("loop at vertex {u}")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Self { n, adj })
    }

    pub fn complete(n: usize) -> Self {
        let full = full_mask(n);
        Self {
            n,
            adj: (0..n).map(|v| full & !(1 << v)).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in mask_elements(self.adj[u]) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Self {
        let full = full_mask(self.n);
        Self {
            n: self.n,
            adj: (0..self.n).map(|v| full & !self.adj[v] & !(1 << v)).collect(),
        }
    }

    pub fn is_stable(&self, set: u64) -> bool {
        mask_elements(set).into_iter().all(|v| self.adj[v] & set == 0)
    }

    /// Connected components as vertex masks, ordered by least vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & (1 << s) != 0 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let next = mask_elements(frontier)
                    .into_iter()
                    .fold(0, |acc, v| acc | self.adj[v])
                    & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Whether the induced subgraph on `comp` is bipartite.
    pub fn is_bipartite_on(&self, comp: u64) -> bool {
        let mut color = vec![None; self.n];
        for s in mask_elements(comp) {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                for y in mask_elements(self.adj[x] & comp) {
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let k = self.n;
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(u, v)| (u + k, v + k)));
        Self::new(k + other.n, &edges)
    }

    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph {
            vertex_count: self.n,
            edges: self.edges(),
        }
    }
}
