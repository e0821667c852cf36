//! Unimodular equivalence of lattice polytopes.
//!
//! Polytopes are compared in their lattice charts. Two deciders are
//! available: a canonical form (individualization-refinement on the
//! vertex/facet lattice-distance matrix, then the Hermite form of the
//! ordered vertex differences) and a frame search that enumerates images of
//! one edge frame. Either one alone is a complete decision procedure within
//! its budget.

mod canonical;
pub(crate) mod frames;
mod lemmas;
mod maps;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::geometry::{lattice_invariants, AffineLatticeChart, InvariantFingerprint, LatticePolytope};
use crate::linalg::{self, widen};

pub use canonical::{canonical_form, canonical_form_with, CanonicalForm};
pub use frames::frame_search;
pub use lemmas::{verify_lemma_map, EngineCheck, LemmaId, LemmaParams, LemmaReport};
pub use maps::{apply_map_f, apply_map_g, apply_map_h, apply_projection, chart_map_is_unimodular};

/// Search limits. The defaults are the documented gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_dim: usize,
    pub max_vertices: usize,
    /// Leaves of the canonical-form search tree.
    pub leaf_budget: u64,
    /// Complete frames tested by the frame search.
    pub frame_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_dim: 7,
            max_vertices: 48,
            leaf_budget: 500_000,
            frame_budget: 5_000_000,
        }
    }
}

impl SearchLimits {
    /// Dimension and vertex gates lifted; budgets kept.
    pub fn ungated() -> Self {
        Self {
            max_dim: usize::MAX,
            max_vertices: usize::MAX,
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, p: &LatticePolytope) -> Result<()> {
        let d = p.dim();
        if d > self.max_dim {
            return Err(Error::Inconclusive(format!(
                "dimension {d} exceeds the search gate {}",
                self.max_dim
            )));
        }
        if p.vertex_count() > self.max_vertices {
            return Err(Error::Inconclusive(format!(
                "{} vertices exceed the search gate {}",
                p.vertex_count(),
                self.max_vertices
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Canonical,
    Frames,
    /// Run both and fail loudly if they disagree.
    Both,
}

/// `x -> matrix * x + translation` between the chart coordinates of two
/// polytopes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularWitness {
    pub matrix: Vec<Vec<i64>>,
    pub translation: Vec<i64>,
    pub source_chart: AffineLatticeChart,
    pub target_chart: AffineLatticeChart,
}

impl UnimodularWitness {
    pub fn apply_chart(&self, y: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.translation)
            .map(|(row, t)| row.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() + t)
            .collect()
    }

    /// Image of an ambient point of the source affine hull.
    pub fn apply(&self, x: &[i64]) -> Option<Vec<i64>> {
        let y = self.source_chart.to_chart(x)?;
        Some(self.target_chart.from_chart(&self.apply_chart(&y)))
    }

    pub fn determinant(&self) -> i128 {
        let m: Vec<Vec<i128>> = self.matrix.iter().map(|r| widen(r)).collect();
        linalg::det(&m)
    }

    /// `|det| = 1` and the vertices of `p` map bijectively onto those of `q`.
    pub fn verify(&self, p: &LatticePolytope, q: &LatticePolytope) -> bool {
        if self.determinant().abs() != 1 || p.vertex_count() != q.vertex_count() {
            return false;
        }
        let mut image = HashSet::new();
        for v in p.vertices() {
            match self.apply(v) {
                Some(w) if q.contains_vertex(&w) => {
                    image.insert(w);
                }
                _ => return false,
            }
        }
        image.len() == q.vertex_count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonEquivalence {
    /// A unimodular invariant differs.
    Invariant { field: String, left: String, right: String },
    /// Every candidate image of a fixed frame was tested.
    ExhaustiveFrameSearch { frames_checked: u64 },
    /// Canonical forms differ after a complete search tree.
    CanonicalFormsDiffer { leaves: u64 },
}

impl std::fmt::Display for NonEquivalence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Invariant { field, left, right } => write!(f, "invariant {field} differs ({left} vs {right})"),
            Self::ExhaustiveFrameSearch { frames_checked } => {
                write!(f, "exhaustive frame search ({frames_checked} frames)")
            }
            Self::CanonicalFormsDiffer { leaves } => write!(f, "canonical forms differ ({leaves} leaves)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    Identity,
    CanonicalForm,
    FrameSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Equivalent { witness: UnimodularWitness, source: WitnessSource },
    NotEquivalent { reason: NonEquivalence },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Self::Equivalent { .. })
    }

    pub fn witness(&self) -> Option<&UnimodularWitness> {
        match self {
            Self::Equivalent { witness, .. } => Some(witness),
            Self::NotEquivalent { .. } => None,
        }
    }
}

/// Chart data shared by both deciders.
pub(crate) struct Prepared {
    pub k: usize,
    pub coords: Vec<Vec<i64>>,
    /// `pm[v][f]`: lattice distance of vertex `v` from facet `f`.
    pub pm: Vec<Vec<i64>>,
    pub facet_sets: Vec<BitSet>,
    pub chart: AffineLatticeChart,
}

impl Prepared {
    pub fn new(p: &LatticePolytope) -> Self {
        let h = p.hull();
        let pm = h
            .coords
            .iter()
            .map(|c| {
                h.facets
                    .iter()
                    .map(|f| f.offset - f.normal.iter().zip(c).map(|(a, b)| a * b).sum::<i64>())
                    .collect()
            })
            .collect();
        Self {
            k: h.dim(),
            coords: h.coords.clone(),
            pm,
            facet_sets: p.facet_vertex_sets(),
            chart: h.chart.clone(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }
}

fn first_difference(a: &InvariantFingerprint, b: &InvariantFingerprint) -> Option<NonEquivalence> {
    macro_rules! cmp {
        ($($field:ident),*) => {
            $(
                if a.$field != b.$field {
                    return Some(NonEquivalence::Invariant {
                        field: stringify!($field).into(),
                        left: format!("{:?}", a.$field),
                        right: format!("{:?}", b.$field),
                    });
                }
            )*
        };
    }
    cmp!(dim, vertex_count, facet_count, rank, facet_vertex_multiset, lattice_point_count, normalized_volume);
    None
}

/// Cheap invariants first: dimension, vertex and facet counts, facet sizes.
fn quick_difference(p: &LatticePolytope, q: &LatticePolytope) -> Option<NonEquivalence> {
    let sizes = |x: &LatticePolytope| {
        let mut s: Vec<usize> = x.hull().facets.iter().map(|f| f.vertices.len()).collect();
        s.sort_unstable();
        s
    };
    let pairs = [
        ("dim", p.dim().to_string(), q.dim().to_string()),
        ("vertex_count", p.vertex_count().to_string(), q.vertex_count().to_string()),
        ("facet_count", p.facet_count().to_string(), q.facet_count().to_string()),
        ("facet_vertex_multiset", format!("{:?}", sizes(p)), format!("{:?}", sizes(q))),
    ];
    pairs.into_iter().find(|(_, l, r)| l != r).map(|(field, left, right)| NonEquivalence::Invariant {
        field: field.into(),
        left,
        right,
    })
}

fn identity_witness(p: &LatticePolytope) -> UnimodularWitness {
    let h = p.hull();
    let k = h.dim();
    UnimodularWitness {
        matrix: (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect(),
        translation: vec![0; k],
        source_chart: h.chart.clone(),
        target_chart: h.chart.clone(),
    }
}

// Lattice-point counts and volumes are only computed below the default
// gates; past them the search itself is cheaper than the fingerprint.
const FINGERPRINT_GATE: SearchLimits = SearchLimits {
    max_dim: 7,
    max_vertices: 48,
    leaf_budget: 0,
    frame_budget: 0,
};

/// Decides equivalence with the given strategy and limits.
pub fn decide_equivalence(
    p: &LatticePolytope,
    q: &LatticePolytope,
    strategy: Strategy,
    limits: &SearchLimits,
) -> Result<Verdict> {
    if let Some(reason) = quick_difference(p, q) {
        return Ok(Verdict::NotEquivalent { reason });
    }
    if p == q {
        return Ok(Verdict::Equivalent {
            witness: identity_witness(p),
            source: WitnessSource::Identity,
        });
    }
    limits.check(p)?;
    limits.check(q)?;
    if FINGERPRINT_GATE.check(p).is_ok() {
        if let Some(reason) = first_difference(&lattice_invariants(p), &lattice_invariants(q)) {
            return Ok(Verdict::NotEquivalent { reason });
        }
    }
    let via_canonical = || -> Result<Verdict> {
        let (cp, dp) = canonical::canonical_data(p, limits)?;
        let (cq, dq) = canonical::canonical_data(q, limits)?;
        if cp != cq {
            return Ok(Verdict::NotEquivalent {
                reason: NonEquivalence::CanonicalFormsDiffer {
                    leaves: dp.leaves + dq.leaves,
                },
            });
        }
        let witness = canonical::witness_from_leaves(&dp, &dq)?;
        Ok(Verdict::Equivalent {
            witness,
            source: WitnessSource::CanonicalForm,
        })
    };
    let via_frames = || -> Result<Verdict> {
        match frames::frame_search_with(p, q, limits)? {
            (Some(witness), _) => Ok(Verdict::Equivalent {
                witness,
                source: WitnessSource::FrameSearch,
            }),
            (None, frames_checked) => Ok(Verdict::NotEquivalent {
                reason: NonEquivalence::ExhaustiveFrameSearch { frames_checked },
            }),
        }
    };
    let verdict = match strategy {
        Strategy::Canonical => via_canonical()?,
        Strategy::Frames => via_frames()?,
        Strategy::Both => {
            let a = via_canonical()?;
            let b = via_frames()?;
            if a.is_equivalent() != b.is_equivalent() {
                return Err(Error::Inconclusive(
                    "canonical form and frame search disagree".into(),
                ));
            }
            // report the frame-search negative: it names the exhaustive search
            if b.is_equivalent() {
                a
            } else {
                b
            }
        }
    };
    if let Verdict::Equivalent { witness, .. } = &verdict {
        if !witness.verify(p, q) {
            return Err(Error::Inconclusive("witness failed re-verification".into()));
        }
    }
    Ok(verdict)
}

/// A verified witness, or `None` when the polytopes are not equivalent.
pub fn unimodular_equivalent(p: &LatticePolytope, q: &LatticePolytope) -> Result<Option<UnimodularWitness>> {
    let v = decide_equivalence(p, q, Strategy::Canonical, &SearchLimits::default())?;
    Ok(v.witness().cloned())
}

#[cfg(test)]
mod tests;
