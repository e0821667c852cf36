use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{hull, AffineLatticeChart, LatticePolytope};
use crate::bits::BitSet;
use crate::linalg::{self, widen};

/// Cheap unimodular invariants; equal for equivalent polytopes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantFingerprint {
    pub dim: usize,
    pub vertex_count: usize,
    pub facet_count: usize,
    /// Absent for points.
    pub rank: Option<i64>,
    pub lattice_point_count: u64,
    pub normalized_volume: u128,
    /// Sorted vertex counts of the facets.
    pub facet_vertex_multiset: Vec<usize>,
}

pub fn lattice_invariants(p: &LatticePolytope) -> InvariantFingerprint {
    let h = p.hull();
    let mut sizes: Vec<usize> = h.facets.iter().map(|f| f.vertices.len()).collect();
    sizes.sort_unstable();
    InvariantFingerprint {
        dim: h.dim(),
        vertex_count: p.vertex_count(),
        facet_count: h.facets.len(),
        rank: p.rank().ok(),
        lattice_point_count: lattice_point_count(p),
        normalized_volume: normalized_volume(p),
        facet_vertex_multiset: sizes,
    }
}

/// Number of lattice points of `p`, counted in its lattice chart by box
/// enumeration. The chart is lattice-surjective, so this equals
/// `|p ∩ Z^d|`.
pub fn lattice_point_count(p: &LatticePolytope) -> u64 {
    let h = p.hull();
    let k = h.dim();
    if k == 0 {
        return 1;
    }
    let lo: Vec<i64> = (0..k).map(|i| h.coords.iter().map(|c| c[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..k).map(|i| h.coords.iter().map(|c| c[i]).max().unwrap()).collect();
    let mut count = 0u64;
    let mut y = lo.clone();
    loop {
        if h
            .facets
            .iter()
            .all(|f| f.normal.iter().zip(&y).map(|(a, b)| a * b).sum::<i64>() <= f.offset)
        {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return count;
            }
            if y[i] < hi[i] {
                y[i] += 1;
                break;
            }
            y[i] = lo[i];
            i += 1;
        }
    }
}

/// `dim! * volume` relative to the lattice of the affine hull.
///
/// Cone decomposition from the first vertex: the sum over facets not
/// containing it of lattice height times the normalized volume of the facet,
/// recursing on facets in their own charts.
pub fn normalized_volume(p: &LatticePolytope) -> u128 {
    let h = p.hull();
    if h.dim() == 0 {
        return 1;
    }
    let mut memo = HashMap::new();
    let all: Vec<usize> = (0..p.vertex_count()).collect();
    face_volume(&h.coords, &all, &mut memo)
}

// `points` are full-dimensional lattice points of the ambient chart;
// `ids` name them globally for memoization.
fn face_volume(points: &[Vec<i64>], ids: &[usize], memo: &mut HashMap<BitSet, u128>) -> u128 {
    let key: BitSet = ids.iter().copied().collect();
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let chart = AffineLatticeChart::spanning(points);
    let k = chart.dim();
    let coords: Vec<Vec<i128>> = points
        .iter()
        .map(|x| widen(&chart.to_chart(x).expect("point in own hull")))
        .collect();
    let result = if k == 0 {
        1
    } else if k == 1 {
        let vals = coords.iter().map(|c| c[0]);
        (vals.clone().max().unwrap() - vals.min().unwrap()) as u128
    } else {
        let apex = &coords[0];
        let mut total = 0u128;
        for (c, b) in hull::facets_full_dim(&coords) {
            let height = b - linalg::dot(&c, apex);
            if height == 0 {
                continue;
            }
            let on: Vec<usize> = (0..coords.len()).filter(|&i| linalg::dot(&c, &coords[i]) == b).collect();
            let sub_points: Vec<Vec<i64>> = on.iter().map(|&i| points[i].clone()).collect();
            let sub_ids: Vec<usize> = on.iter().map(|&i| ids[i]).collect();
            total += height as u128 * face_volume(&sub_points, &sub_ids, memo);
        }
        total
    };
    memo.insert(key, result);
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: Vec<Vec<i64>>) -> LatticePolytope {
        LatticePolytope::new(v).unwrap()
    }

    fn cube(d: usize) -> LatticePolytope {
        poly(
            (0..1u64 << d)
                .map(|m| (0..d).map(|i| ((m >> i) & 1) as i64).collect())
                .collect(),
        )
    }

    #[test]
    fn unit_square() {
        let f = lattice_invariants(&cube(2));
        assert_eq!(
            f,
            InvariantFingerprint {
                dim: 2,
                vertex_count: 4,
                facet_count: 4,
                rank: Some(1),
                lattice_point_count: 4,
                normalized_volume: 2,
                facet_vertex_multiset: vec![2, 2, 2, 2],
            }
        );
    }

    #[test]
    fn segments_differ_in_lattice_points() {
        let a = lattice_invariants(&poly(vec![vec![0], vec![1]]));
        let b = lattice_invariants(&poly(vec![vec![0], vec![2]]));
        assert_eq!(a.lattice_point_count, 2);
        assert_eq!(b.lattice_point_count, 3);
        assert_eq!(b.normalized_volume, 2);
    }

    #[test]
    fn cube_volumes_are_factorials() {
        // d! * vol([0,1]^d) = d!
        assert_eq!(normalized_volume(&cube(3)), 6);
        assert_eq!(normalized_volume(&cube(4)), 24);
    }

    #[test]
    fn lower_dimensional_triangle_has_unit_volume() {
        let p = poly(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(normalized_volume(&p), 1);
        assert_eq!(lattice_point_count(&p), 3);
    }

    #[test]
    fn dilated_simplex() {
        // 2 * standard triangle: 6 lattice points, normalized volume 4
        let p = poly(vec![vec![0, 0], vec![2, 0], vec![0, 2]]);
        assert_eq!(lattice_point_count(&p), 6);
        assert_eq!(normalized_volume(&p), 4);
    }

    #[test]
    fn point_fingerprint_has_no_rank() {
        let f = lattice_invariants(&poly(vec![vec![3, 4]]));
        assert_eq!(f.rank, None);
        assert_eq!(f.lattice_point_count, 1);
    }
}
