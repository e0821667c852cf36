//! Lattice polytopes in vertex representation and their facet structure.

mod chart;
pub mod hull;
mod invariants;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::linalg::{self, narrow, widen, Rational};

pub use chart::AffineLatticeChart;
pub use invariants::{lattice_invariants, lattice_point_count, normalized_volume, InvariantFingerprint};

/// A facet in chart coordinates: `normal . y <= offset`, tight exactly on
/// `vertices` (indices into the owning polytope's vertex list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartFacet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertices: Vec<usize>,
}

#[derive(Debug)]
pub struct HullData {
    pub chart: AffineLatticeChart,
    /// Chart coordinates of the vertices, in vertex order.
    pub coords: Vec<Vec<i64>>,
    pub facets: Vec<ChartFacet>,
}

impl HullData {
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }
}

/// Convex hull of finitely many lattice points, stored by its vertices in
/// lexicographic order.
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "PolytopeRepr", try_from = "PolytopeRepr")]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<i64>>,
    hull: OnceLock<Arc<HullData>>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeRepr {
    ambient_dim: usize,
    vertices: Vec<Vec<i64>>,
}

impl From<LatticePolytope> for PolytopeRepr {
    fn from(p: LatticePolytope) -> Self {
        Self {
            ambient_dim: p.ambient_dim,
            vertices: p.vertices,
        }
    }
}

impl TryFrom<PolytopeRepr> for LatticePolytope {
    type Error = Error;

    fn try_from(r: PolytopeRepr) -> Result<Self> {
        if r.vertices.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if let Some(v) = r.vertices.iter().find(|v| v.len() != r.ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: r.ambient_dim,
                found: v.len(),
            });
        }
        LatticePolytope::new(r.vertices)
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl Hash for LatticePolytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.vertices.hash(state);
    }
}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticePolytope")
            .field("ambient_dim", &self.ambient_dim)
            .field("vertices", &self.vertices)
            .finish()
    }
}

fn check_points(points: &[Vec<i64>]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let d = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.len(),
        });
    }
    Ok(d)
}

fn sorted_unique(mut points: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    points.sort();
    points.dedup();
    points
}

fn compute_hull(points: &[Vec<i64>]) -> HullData {
    let chart = AffineLatticeChart::spanning(points);
    let coords: Vec<Vec<i64>> = points
        .iter()
        .map(|p| chart.to_chart(p).expect("point lies in its own affine hull"))
        .collect();
    let facets = if chart.dim() == 0 {
        Vec::new()
    } else {
        let wide: Vec<Vec<i128>> = coords.iter().map(|c| widen(c)).collect();
        hull::facets_full_dim(&wide)
            .into_iter()
            .map(|(c, b)| ChartFacet {
                vertices: (0..wide.len()).filter(|&i| linalg::dot(&c, &wide[i]) == b).collect(),
                normal: narrow(&c),
                offset: i64::try_from(b).expect("offset exceeds i64 range"),
            })
            .collect()
    };
    HullData {
        chart,
        coords,
        facets,
    }
}

impl LatticePolytope {
    /// Convex hull of `points`; points that are not vertices are dropped.
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let ambient_dim = check_points(&points)?;
        let points = sorted_unique(points);
        let data = compute_hull(&points);
        let k = data.dim();
        let keep: Vec<usize> = (0..points.len())
            .filter(|&i| {
                if k == 0 {
                    return true;
                }
                let normals: Vec<Vec<i128>> = data
                    .facets
                    .iter()
                    .filter(|f| f.vertices.binary_search(&i).is_ok())
                    .map(|f| widen(&f.normal))
                    .collect();
                linalg::rank(&normals) == k
            })
            .collect();
        if keep.len() == points.len() {
            return Ok(Self::with_hull(ambient_dim, points, data));
        }
        let mut reindex = vec![usize::MAX; points.len()];
        for (new, &old) in keep.iter().enumerate() {
            reindex[old] = new;
        }
        let facets = data
            .facets
            .into_iter()
            .map(|f| ChartFacet {
                vertices: f
                    .vertices
                    .iter()
                    .filter(|&&i| reindex[i] != usize::MAX)
                    .map(|&i| reindex[i])
                    .collect(),
                ..f
            })
            .collect();
        let coords = keep.iter().map(|&i| data.coords[i].clone()).collect();
        let vertices = keep.iter().map(|&i| points[i].clone()).collect();
        let data = HullData {
            chart: data.chart,
            coords,
            facets,
        };
        Ok(Self::with_hull(ambient_dim, vertices, data))
    }

    fn with_hull(ambient_dim: usize, vertices: Vec<Vec<i64>>, data: HullData) -> Self {
        let hull = OnceLock::new();
        let _ = hull.set(Arc::new(data));
        Self {
            ambient_dim,
            vertices,
            hull,
        }
    }

    /// Builds a polytope from points that are known to be in convex position.
    /// Duplicates are removed; no hull reduction is performed.
    pub fn from_vertices_unchecked(points: Vec<Vec<i64>>) -> Result<Self> {
        let ambient_dim = check_points(&points)?;
        Ok(Self {
            ambient_dim,
            vertices: sorted_unique(points),
            hull: OnceLock::new(),
        })
    }

    /// Convex hull of 0/1 points. Every 0/1 point is a vertex of the hull of
    /// any set of 0/1 points, so no reduction is needed.
    pub fn from_01_points(points: Vec<Vec<i64>>) -> Result<Self> {
        if points.iter().flatten().any(|&x| x != 0 && x != 1) {
            return Self::new(points);
        }
        Self::from_vertices_unchecked(points)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Chart and facet data, computed on first use.
    pub fn hull(&self) -> &HullData {
        self.hull
            .get_or_init(|| Arc::new(compute_hull(&self.vertices)))
    }

    pub fn dim(&self) -> usize {
        self.hull().dim()
    }

    pub fn facet_count(&self) -> usize {
        self.hull().facets.len()
    }

    /// `F - (dim + 1)`.
    pub fn rank(&self) -> Result<i64> {
        let h = self.hull();
        if h.dim() == 0 {
            return Err(Error::RankUndefinedForPoint);
        }
        Ok(h.facets.len() as i64 - h.dim() as i64 - 1)
    }

    pub fn contains_vertex(&self, v: &[i64]) -> bool {
        self.vertices.binary_search_by(|w| w.as_slice().cmp(v)).is_ok()
    }

    /// Image under `x -> A x + t`. The caller guarantees that the map is
    /// injective on the affine hull, so vertices map to vertices.
    pub fn map_affine(&self, matrix: &[Vec<i64>], translation: &[i64]) -> Self {
        let image = self
            .vertices
            .iter()
            .map(|v| {
                matrix
                    .iter()
                    .zip(translation)
                    .map(|(row, t)| row.iter().zip(v).map(|(a, x)| a * x).sum::<i64>() + t)
                    .collect()
            })
            .collect();
        Self::from_vertices_unchecked(image).expect("image of a nonempty set is nonempty")
    }

    /// Cartesian product; vertex set is all concatenations.
    pub fn product(&self, other: &Self) -> Self {
        let mut verts = Vec::with_capacity(self.vertex_count() * other.vertex_count());
        for a in &self.vertices {
            for b in &other.vertices {
                verts.push(a.iter().chain(b).copied().collect());
            }
        }
        Self {
            ambient_dim: self.ambient_dim + other.ambient_dim,
            vertices: verts,
            hull: OnceLock::new(),
        }
    }

    /// Vertex-facet incidence as bitsets over vertex indices.
    pub fn facet_vertex_sets(&self) -> Vec<BitSet> {
        self.hull()
            .facets
            .iter()
            .map(|f| f.vertices.iter().copied().collect())
            .collect()
    }
}

/// `normal . x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Inequality {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// `normal . x = offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Equation {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Inequality {
    pub fn new(normal: Vec<i64>, offset: i64) -> Self {
        Self { normal, offset }
    }

    /// `sum_{e in set} x_e <= offset` in `Z^n`.
    pub fn sum_at_most(n: usize, set: &[usize], offset: i64) -> Self {
        let mut normal = vec![0; n];
        for &e in set {
            normal[e] = 1;
        }
        Self { normal, offset }
    }

    /// `x_e >= 0` in `Z^n`.
    pub fn nonnegative(n: usize, e: usize) -> Self {
        let mut normal = vec![0; n];
        normal[e] = -1;
        Self { normal, offset: 0 }
    }

    pub fn value(&self, x: &[i64]) -> i64 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn holds(&self, x: &[i64]) -> bool {
        self.value(x) <= self.offset
    }

    pub fn is_tight(&self, x: &[i64]) -> bool {
        self.value(x) == self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceSystem {
    pub ambient_dim: usize,
    pub inequalities: Vec<Inequality>,
    #[serde(default)]
    pub equations: Vec<Equation>,
    #[serde(default)]
    pub irredundant: bool,
}

/// Outcome of comparing a claimed facet description with the hull.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FacetDiff {
    /// Claimed inequalities violated by some vertex.
    pub invalid: Vec<usize>,
    /// Claimed inequalities that are valid but do not support a facet.
    pub not_facets: Vec<usize>,
    /// Claimed inequalities defining the same facet as an earlier one.
    pub duplicates: Vec<usize>,
    /// Number of hull facets not produced by any claimed inequality.
    pub missing: usize,
}

impl FacetDiff {
    pub fn is_empty(&self) -> bool {
        self.invalid.is_empty()
            && self.not_facets.is_empty()
            && self.duplicates.is_empty()
            && self.missing == 0
    }
}

impl HalfspaceSystem {
    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    /// Compares with the facets of `p` as halfspaces of `aff(p)`: two valid
    /// inequalities cut out the same halfspace of the affine hull exactly
    /// when they are tight on the same facet's vertices.
    pub fn compare_with_hull(&self, p: &LatticePolytope) -> FacetDiff {
        let hull_sets: Vec<Vec<usize>> = p.hull().facets.iter().map(|f| f.vertices.clone()).collect();
        let mut seen = vec![false; hull_sets.len()];
        let mut diff = FacetDiff::default();
        for (i, ineq) in self.inequalities.iter().enumerate() {
            if !p.vertices().iter().all(|v| ineq.holds(v)) {
                diff.invalid.push(i);
                continue;
            }
            let tight: Vec<usize> = (0..p.vertex_count())
                .filter(|&j| ineq.is_tight(&p.vertices()[j]))
                .collect();
            match hull_sets.iter().position(|s| *s == tight) {
                Some(k) if seen[k] => diff.duplicates.push(i),
                Some(k) => seen[k] = true,
                None => diff.not_facets.push(i),
            }
        }
        diff.missing = seen.iter().filter(|s| !**s).count();
        diff
    }
}

/// Dimension of the affine hull of `points`.
pub fn affine_hull_dimension(points: &[Vec<i64>]) -> Result<usize> {
    check_points(points)?;
    let p0 = &points[0];
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(&a, &b)| a as i128 - b as i128).collect())
        .collect();
    Ok(if diffs.is_empty() { 0 } else { linalg::rank(&diffs) })
}

/// Irredundant facet inequalities of `p` in ambient coordinates, together
/// with equations cutting out its affine hull. Normals are primitive; the
/// inequality list is sorted.
pub fn enumerate_facets(p: &LatticePolytope) -> HalfspaceSystem {
    let h = p.hull();
    let w = h.chart.basis_wide();
    let d = p.ambient_dim();
    let k = h.dim();
    let mut inequalities: Vec<Inequality> = Vec::with_capacity(h.facets.len());
    if k > 0 {
        // n = W (W^T W)^{-1} c lies in the span of the chart basis and
        // satisfies W^T n = c, so n . x - c . y is constant on aff(p).
        let gram: linalg::Matrix = (0..k)
            .map(|i| (0..k).map(|j| linalg::dot(&w[i], &w[j])).collect())
            .collect();
        let gram_inv = linalg::inverse(&gram).expect("chart basis is independent");
        for f in &h.facets {
            let c = widen(&f.normal);
            let coeff: Vec<Rational> = gram_inv
                .iter()
                .map(|row| row.iter().zip(&c).map(|(g, &ci)| g * Rational::from_integer(ci)).sum())
                .collect();
            let n: Vec<Rational> = (0..d)
                .map(|r| {
                    coeff
                        .iter()
                        .zip(&w)
                        .map(|(a, b)| a * Rational::from_integer(b[r]))
                        .sum()
                })
                .collect();
            let normal = linalg::clear_denominators(&n);
            let tight = widen(&p.vertices()[f.vertices[0]]);
            let offset = linalg::dot(&normal, &tight);
            inequalities.push(Inequality {
                normal: narrow(&normal),
                offset: i64::try_from(offset).expect("offset exceeds i64 range"),
            });
        }
    }
    inequalities.sort();
    let o = widen(&h.chart.origin);
    let equations = linalg::integer_kernel(&w, d)
        .into_iter()
        .map(|a| Equation {
            offset: i64::try_from(linalg::dot(&a, &o)).expect("offset exceeds i64 range"),
            normal: narrow(&a),
        })
        .collect();
    HalfspaceSystem {
        ambient_dim: d,
        inequalities,
        equations,
        irredundant: true,
    }
}

/// `F - (dim P + 1)`; undefined for points.
pub fn polytope_rank(p: &LatticePolytope) -> Result<i64> {
    p.rank()
}

/// The polytope in its own lattice chart, full-dimensional in `Z^{dim P}`,
/// together with the chart.
pub fn normalize_to_lattice_chart(p: &LatticePolytope) -> (LatticePolytope, AffineLatticeChart) {
    let h = p.hull();
    let q = LatticePolytope::new(h.coords.clone()).expect("nonempty");
    (q, h.chart.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::new(v.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn affine_dimension_examples() {
        assert_eq!(affine_hull_dimension(&[vec![0, 0]]).unwrap(), 0);
        let simplex = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(affine_hull_dimension(&simplex).unwrap(), 3);
        let tri = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(affine_hull_dimension(&tri).unwrap(), 2);
        assert!(matches!(affine_hull_dimension(&[]), Err(Error::EmptyPointSet)));
    }

    #[test]
    fn interior_points_are_dropped() {
        let p = poly(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0]]);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.facet_count(), 4);
        assert_eq!(p.rank().unwrap(), 1);
        assert!(!p.contains_vertex(&[1, 1]));
    }

    #[test]
    fn collinear_points_reduce_to_endpoints() {
        let p = poly(&[&[0, 0, 0], &[1, 1, 1], &[3, 3, 3]]);
        assert_eq!(p.vertices(), &[vec![0, 0, 0], vec![3, 3, 3]]);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.rank().unwrap(), 0);
    }

    #[test]
    fn point_has_no_rank() {
        let p = poly(&[&[1, 2]]);
        assert_eq!(p.dim(), 0);
        assert!(matches!(p.rank(), Err(Error::RankUndefinedForPoint)));
    }

    #[test]
    fn triangle_in_plane_facets() {
        let p = poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let h = enumerate_facets(&p);
        assert_eq!(h.inequalities.len(), 3);
        assert_eq!(h.equations.len(), 1);
        for v in p.vertices() {
            for e in &h.equations {
                assert_eq!(e.normal.iter().zip(v).map(|(a, b)| a * b).sum::<i64>(), e.offset);
            }
        }
        let claimed = HalfspaceSystem {
            ambient_dim: 3,
            inequalities: (0..3).map(|e| Inequality::nonnegative(3, e)).collect(),
            equations: vec![],
            irredundant: true,
        };
        assert!(claimed.compare_with_hull(&p).is_empty());
    }

    #[test]
    fn compare_reports_problems() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let claimed = HalfspaceSystem {
            ambient_dim: 2,
            inequalities: vec![
                Inequality::nonnegative(2, 0),
                Inequality::nonnegative(2, 0),
                Inequality::sum_at_most(2, &[0, 1], 2),
                Inequality::sum_at_most(2, &[0], 0),
            ],
            equations: vec![],
            irredundant: false,
        };
        let d = claimed.compare_with_hull(&p);
        assert_eq!(d.duplicates, vec![1]);
        assert_eq!(d.not_facets, vec![2]);
        assert_eq!(d.invalid, vec![3]);
        assert_eq!(d.missing, 2);
    }

    #[test]
    fn product_rank_formula_on_prism() {
        let seg = poly(&[&[0], &[1]]);
        let tri = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let prism = seg.product(&tri);
        assert_eq!(prism.vertex_count(), 6);
        assert_eq!(prism.rank().unwrap(), seg.rank().unwrap() + tri.rank().unwrap() + 1);
    }

    #[test]
    fn normalization_of_segment() {
        let p = poly(&[&[0, 0], &[1, 0]]);
        let (q, chart) = normalize_to_lattice_chart(&p);
        assert_eq!(q.vertices(), &[vec![0], vec![1]]);
        assert_eq!(chart.dim(), 1);
    }

    #[test]
    fn full_dimensional_input_gets_identity_chart() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let (q, chart) = normalize_to_lattice_chart(&p);
        assert!(chart.is_identity());
        assert_eq!(q, p);
    }

    #[test]
    fn serde_round_trip() {
        let p = poly(&[&[0, 1], &[1, 0], &[0, 0]]);
        let s = serde_json::to_string(&p).unwrap();
        let q: LatticePolytope = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<LatticePolytope>(r#"{"ambient_dim":2,"vertices":[[1]]}"#).is_err());
    }
}
