//! Finite posets on `0..n` (n ≤ 64) stored as cover relations plus the
//! derived strict down-sets.

use serde::{Deserialize, Serialize};

use crate::bits::mask_elements;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Gate for ideal and antichain enumeration.
pub const POSET_ENUMERATION_GATE: usize = 20;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PosetRepr {
    element_count: usize,
    covers: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PosetRepr", into = "PosetRepr")]
pub struct Poset {
    element_count: usize,
    covers: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
    // below[x] = strict down-set of x
    below: Vec<u64>,
}

impl TryFrom<PosetRepr> for Poset {
    type Error = Error;

    fn try_from(r: PosetRepr) -> Result<Self> {
        Self::new(r.element_count, r.covers, r.labels)
    }
}

impl From<Poset> for PosetRepr {
    fn from(p: Poset) -> Self {
        Self {
            element_count: p.element_count,
            covers: p.covers,
            labels: p.labels,
        }
    }
}

impl Poset {
    /// Builds the order generated by `relations` (pairs `lower < upper`).
    /// Redundant pairs are dropped, so `covers()` is the Hasse diagram.
    pub fn new(element_count: usize, relations: Vec<(usize, usize)>, labels: Option<Vec<String>>) -> Result<Self> {
        if element_count > 64 {
            return Err(Error::GateExceeded {
                size: element_count,
                limit: 64,
            });
        }
        if let Some(l) = &labels {
            if l.len() != element_count {
                return Err(Error::DimensionMismatch {
                    expected: element_count,
                    found: l.len(),
                });
            }
        }
        let mut below = vec![0u64; element_count];
        for &(a, b) in &relations {
            for x in [a, b] {
                if x >= element_count {
                    return Err(Error::ElementOutOfRange {
                        element: x,
                        ground_size: element_count,
                    });
                }
            }
            if a == b {
                return Err(Error::CyclicOrder);
            }
            below[b] |= 1 << a;
        }
        // transitive closure by fixed point
        loop {
            let mut changed = false;
            for x in 0..element_count {
                let closed = mask_elements(below[x]).into_iter().fold(below[x], |acc, y| acc | below[y]);
                if closed != below[x] {
                    below[x] = closed;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if (0..element_count).any(|x| below[x] & (1 << x) != 0) {
            return Err(Error::CyclicOrder);
        }
        let mut covers = Vec::new();
        for b in 0..element_count {
            let implied = mask_elements(below[b]).into_iter().fold(0u64, |acc, y| acc | below[y]);
            for a in mask_elements(below[b] & !implied) {
                covers.push((a, b));
            }
        }
        covers.sort_unstable();
        Ok(Self {
            element_count,
            covers,
            labels,
            below,
        })
    }

    pub fn chain(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i)).collect(), None).expect("chain is acyclic")
    }

    pub fn antichain(n: usize) -> Self {
        Self::new(n, Vec::new(), None).expect("antichain is acyclic")
    }

    /// `z1, z2 < z3 < z4, z5` on elements 0..5.
    pub fn x_shape() -> Self {
        let labels = ["z1", "z2", "z3", "z4", "z5"].map(String::from).to_vec();
        Self::new(5, vec![(0, 2), (1, 2), (2, 3), (2, 4)], Some(labels)).expect("acyclic")
    }

    pub fn element_count(&self) -> usize {
        self.element_count
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        self.labels
            .as_ref()
            .map_or_else(|| x.to_string(), |l| l[x].clone())
    }

    /// `a ≺ b` strictly.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b] & (1 << a) != 0
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b) || self.less(b, a)
    }

    pub fn strictly_below(&self, x: usize) -> u64 {
        self.below[x]
    }

    pub fn strictly_above(&self, x: usize) -> u64 {
        (0..self.element_count)
            .filter(|&y| self.less(x, y))
            .fold(0, |acc, y| acc | 1 << y)
    }

    fn gate(&self) -> Result<()> {
        if self.element_count > POSET_ENUMERATION_GATE {
            return Err(Error::GateExceeded {
                size: self.element_count,
                limit: POSET_ENUMERATION_GATE,
            });
        }
        Ok(())
    }

    /// Down-closed subsets, `∅` included, in increasing mask order.
    pub fn order_ideals(&self) -> Result<Vec<u64>> {
        self.gate()?;
        // elements in a linear extension order; decide membership greedily
        let order = self.linear_extension();
        let mut out = Vec::new();
        fn rec(p: &Poset, order: &[usize], i: usize, cur: u64, out: &mut Vec<u64>) {
            if i == order.len() {
                out.push(cur);
                return;
            }
            let x = order[i];
            rec(p, order, i + 1, cur, out);
            if p.below[x] & !cur == 0 {
                rec(p, order, i + 1, cur | 1 << x, out);
            }
        }
        rec(self, &order, 0, 0, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    /// Sets of pairwise incomparable elements, `∅` included, in increasing
    /// mask order.
    pub fn antichains(&self) -> Result<Vec<u64>> {
        self.gate()?;
        let n = self.element_count;
        let comp: Vec<u64> = (0..n)
            .map(|x| (0..n).filter(|&y| y != x && self.comparable(x, y)).fold(0, |a, y| a | 1 << y))
            .collect();
        let mut out = Vec::new();
        fn rec(comp: &[u64], i: usize, cur: u64, out: &mut Vec<u64>) {
            if i == comp.len() {
                out.push(cur);
                return;
            }
            rec(comp, i + 1, cur, out);
            if comp[i] & cur == 0 {
                rec(comp, i + 1, cur | 1 << i, out);
            }
        }
        rec(&comp, 0, 0, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    /// Maximal chains, as masks.
    pub fn maximal_chains(&self) -> Result<Vec<u64>> {
        self.gate()?;
        let n = self.element_count;
        let minimal: Vec<usize> = (0..n).filter(|&x| self.below[x] == 0).collect();
        let mut out = Vec::new();
        fn rec(p: &Poset, x: usize, cur: u64, out: &mut Vec<u64>) {
            let ups: Vec<usize> = p.covers.iter().filter(|c| c.0 == x).map(|c| c.1).collect();
            if ups.is_empty() {
                out.push(cur);
            }
            for y in ups {
                rec(p, y, cur | 1 << y, out);
            }
        }
        for m in minimal {
            rec(self, m, 1 << m, &mut out);
        }
        out.sort_unstable();
        Ok(out)
    }

    fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.element_count).collect();
        order.sort_by_key(|&x| self.below[x].count_ones());
        order
    }

    fn has_incomparable_pair(&self, set: u64) -> bool {
        let xs = mask_elements(set);
        xs.iter()
            .enumerate()
            .any(|(i, &a)| xs[i + 1..].iter().any(|&b| !self.comparable(a, b)))
    }

    /// An induced X-shape: some `z3` with an incomparable pair strictly below
    /// and an incomparable pair strictly above. Transitivity forces the four
    /// remaining relations, so this is exactly the induced pattern.
    pub fn contains_x_subposet(&self) -> bool {
        self.x_witness().is_some()
    }

    /// `[z1, z2, z3, z4, z5]` realizing the induced X-shape.
    pub fn x_witness(&self) -> Option<[usize; 5]> {
        for z3 in 0..self.element_count {
            let lo = self.incomparable_pair(self.below[z3]);
            let hi = self.incomparable_pair(self.strictly_above(z3));
            if let (Some((z1, z2)), Some((z4, z5))) = (lo, hi) {
                return Some([z1, z2, z3, z4, z5]);
            }
        }
        None
    }

    fn incomparable_pair(&self, set: u64) -> Option<(usize, usize)> {
        if !self.has_incomparable_pair(set) {
            return None;
        }
        let xs = mask_elements(set);
        for (i, &a) in xs.iter().enumerate() {
            for &b in &xs[i + 1..] {
                if !self.comparable(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The weak reading: five distinct elements with `z1, z2 < z3 < z4, z5`
    /// and no constraint on the other pairs.
    pub fn contains_weak_x_subposet(&self) -> bool {
        (0..self.element_count)
            .any(|z| self.below[z].count_ones() >= 2 && self.strictly_above(z).count_ones() >= 2)
    }

    pub fn comparability_graph(&self) -> SimpleGraph {
        let n = self.element_count;
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.comparable(a, b) {
                    edges.push((a, b));
                }
            }
        }
        SimpleGraph::new(n, &edges).expect("at most 64 vertices")
    }
}

/// Element positions in `W_{s,t,p,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WLayout {
    pub s: usize,
    pub t: usize,
    pub p: usize,
    pub q: usize,
}

impl WLayout {
    pub fn alpha(&self, i: usize) -> usize {
        i - 1
    }
    pub fn beta(&self, i: usize) -> usize {
        self.s + i - 1
    }
    pub fn gamma(&self, i: usize) -> usize {
        self.s + self.p + i - 1
    }
    pub fn delta(&self, i: usize) -> usize {
        self.s + self.p + self.t + i - 1
    }
    /// `mu(1..=3)`.
    pub fn mu(&self, i: usize) -> usize {
        self.s + self.p + self.t + self.q + i - 1
    }
    pub fn len(&self) -> usize {
        self.s + self.t + self.p + self.q + 3
    }
    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `W_{s,t,p,q}` for `s, q ≥ 1` and `t, p ≥ 0`. Elements are ordered
/// `α_1..α_s, β_1..β_p, γ_1..γ_t, δ_1..δ_q, μ_1, μ_2, μ_3`.
#[allow(non_snake_case)]
pub fn make_W_poset(s: usize, t: usize, p: usize, q: usize) -> Result<Poset> {
    if s == 0 || q == 0 {
        return Err(Error::ParameterOutOfRange(format!(
            "W: s and q must be >= 1 (got s={s}, q={q})"
        )));
    }
    make_W_poset_any(s, t, p, q)
}

/// Same chains with every parameter allowed to be 0 (an empty α or δ chain
/// simply disappears). Used for the alternate parameter box.
#[allow(non_snake_case)]
pub fn make_W_poset_any(s: usize, t: usize, p: usize, q: usize) -> Result<Poset> {
    let w = WLayout { s, t, p, q };
    let chain = |start: usize, ids: Vec<usize>, end: Option<usize>| {
        let mut seq = vec![start];
        seq.extend(ids);
        seq.extend(end);
        seq.windows(2).map(|x| (x[0], x[1])).collect::<Vec<_>>()
    };
    let mut rel = Vec::new();
    rel.extend(chain(w.mu(1), (1..=s).map(|i| w.alpha(i)).collect(), None));
    rel.extend(chain(w.mu(1), (1..=p).map(|i| w.beta(i)).collect(), Some(w.mu(2))));
    rel.extend(chain(w.mu(3), (1..=t).map(|i| w.gamma(i)).collect(), Some(w.mu(2))));
    rel.extend(chain(w.mu(3), (1..=q).map(|i| w.delta(i)).collect(), None));
    let mut labels = Vec::with_capacity(w.len());
    labels.extend((1..=s).map(|i| format!("alpha{i}")));
    labels.extend((1..=p).map(|i| format!("beta{i}")));
    labels.extend((1..=t).map(|i| format!("gamma{i}")));
    labels.extend((1..=q).map(|i| format!("delta{i}")));
    labels.extend((1..=3).map(|i| format!("mu{i}")));
    Poset::new(w.len(), rel, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_antichain_ideals() {
        assert_eq!(Poset::chain(2).order_ideals().unwrap(), vec![0, 1, 3]);
        assert_eq!(Poset::antichain(2).order_ideals().unwrap().len(), 4);
        assert_eq!(Poset::chain(3).antichains().unwrap().len(), 4);
    }

    #[test]
    fn ideals_and_antichains_are_equinumerous() {
        for p in [Poset::x_shape(), make_W_poset(2, 1, 1, 2).unwrap(), Poset::chain(4)] {
            let ideals = p.order_ideals().unwrap();
            let anti = p.antichains().unwrap();
            assert_eq!(ideals.len(), anti.len());
            // brute-force oracle for ideals
            let n = p.element_count();
            let brute: Vec<u64> = (0..1u64 << n)
                .filter(|&m| mask_elements(m).iter().all(|&x| p.strictly_below(x) & !m == 0))
                .collect();
            assert_eq!(ideals, brute);
        }
        // X-shape: antichains are ∅, 5 singletons, {z1,z2}, {z4,z5}
        assert_eq!(Poset::x_shape().antichains().unwrap().len(), 8);
    }

    #[test]
    fn covers_are_irredundant() {
        let p = Poset::new(3, vec![(0, 1), (1, 2), (0, 2)], None).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.less(0, 2));
        assert!(matches!(Poset::new(2, vec![(0, 1), (1, 0)], None), Err(Error::CyclicOrder)));
    }

    #[test]
    fn x_shape_detection() {
        assert!(Poset::x_shape().contains_x_subposet());
        assert!(!Poset::chain(6).contains_x_subposet());
        for s in 1..=3 {
            for q in 1..=3 {
                for t in 0..=3 {
                    for p in 0..=3 {
                        assert!(!make_W_poset(s, t, p, q).unwrap().contains_x_subposet());
                    }
                }
            }
        }
        // a 5-chain has the pattern only in the weak reading
        let weak = Poset::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4)], None).unwrap();
        assert!(weak.contains_weak_x_subposet());
        assert!(!weak.contains_x_subposet());
    }

    #[test]
    fn comparability_graphs() {
        assert_eq!(Poset::chain(3).comparability_graph(), SimpleGraph::complete(3));
        assert!(Poset::antichain(3).comparability_graph().edges().is_empty());
        let x = Poset::x_shape().comparability_graph();
        assert_eq!(
            x.edges(),
            vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
        );
    }

    #[test]
    fn w_poset_shapes() {
        let w = make_W_poset(1, 0, 0, 1).unwrap();
        // α1, δ1, μ1, μ2, μ3
        assert_eq!(w.element_count(), 5);
        assert_eq!(w.covers(), &[(2, 0), (2, 3), (4, 1), (4, 3)]);
        assert_eq!(make_W_poset(1, 1, 1, 1).unwrap().element_count(), 7);
        let w = make_W_poset(2, 1, 0, 1).unwrap();
        let l = WLayout { s: 2, t: 1, p: 0, q: 1 };
        assert!(w.covers().contains(&(l.mu(1), l.mu(2))));
        assert!(w.covers().contains(&(l.gamma(1), l.mu(2))));
        assert!(make_W_poset(0, 1, 1, 1).is_err());
        assert_eq!(make_W_poset_any(0, 1, 0, 1).unwrap().element_count(), 5);
    }

    #[test]
    fn serde_round_trip() {
        let w = make_W_poset(1, 1, 0, 2).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<Poset>(&json).unwrap(), w);
        assert!(serde_json::from_str::<Poset>(r#"{"element_count":2,"covers":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn maximal_chains_of_x() {
        assert_eq!(Poset::x_shape().maximal_chains().unwrap().len(), 4);
    }
}
