//! Facet enumeration by the double description method.
//!
//! Works on full-dimensional point sets in `Z^k`. The points are homogenized
//! to `(1, y)` and the extreme rays of the dual cone
//! `{ z : (1, y_i) . z >= 0 }` are computed incrementally; each extreme ray
//! `(b, -c)` is a facet `c . y <= b`. Arithmetic is fraction-free: rays are
//! integer vectors kept primitive after every combination.

use crate::bits::BitSet;
use crate::linalg::{self, clear_denominators, dot, make_primitive};

struct Ray {
    coords: Vec<i128>,
    zeros: BitSet,
}

/// Facets `(normal, offset)` with `normal . y <= offset` of the convex hull of
/// `points`, which must affinely span `Z^k` with `k >= 1`. Normals are
/// primitive; output is sorted lexicographically.
pub fn facets_full_dim(points: &[Vec<i128>]) -> Vec<(Vec<i128>, i128)> {
    let rows: Vec<Vec<i128>> = points
        .iter()
        .map(|p| std::iter::once(1).chain(p.iter().copied()).collect())
        .collect();
    let mut out: Vec<(Vec<i128>, i128)> = extreme_rays(&rows)
        .into_iter()
        .map(|z| {
            let mut normal: Vec<i128> = z[1..].iter().map(|x| -x).collect();
            let g = linalg::content(&normal);
            let mut offset = z[0];
            if g > 1 {
                debug_assert_eq!(offset % g, 0);
                normal.iter_mut().for_each(|x| *x /= g);
                offset /= g;
            }
            (normal, offset)
        })
        .collect();
    out.sort();
    out
}

/// Vertices of the bounded full-dimensional polyhedron
/// `{ y : normal . y <= offset }` in `Z^k`, as `(numerators, denominator)`
/// with positive denominator, sorted.
pub fn vertices_from_facets(facets: &[(Vec<i128>, i128)], k: usize) -> Vec<(Vec<i128>, i128)> {
    let mut rows: Vec<Vec<i128>> = vec![std::iter::once(1).chain(std::iter::repeat_n(0, k)).collect()];
    rows.extend(
        facets
            .iter()
            .map(|(c, b)| std::iter::once(*b).chain(c.iter().map(|x| -x)).collect()),
    );
    let mut out: Vec<(Vec<i128>, i128)> = extreme_rays(&rows)
        .into_iter()
        .filter(|z| z[0] > 0)
        .map(|z| (z[1..].to_vec(), z[0]))
        .collect();
    out.sort();
    out
}

/// Extreme rays of the pointed cone `{ z : row . z >= 0 }`; the rows must
/// have full column rank. Rays are primitive.
pub fn extreme_rays(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let d = rows[0].len();
    let n = rows.len();

    let mut seed = Vec::with_capacity(d);
    let mut seed_rows: Vec<Vec<i128>> = Vec::with_capacity(d);
    for (i, row) in rows.iter().enumerate() {
        seed_rows.push(row.clone());
        if linalg::rank(&seed_rows) > seed.len() {
            seed.push(i);
            if seed.len() == d {
                break;
            }
        } else {
            seed_rows.pop();
        }
    }
    assert_eq!(seed.len(), d, "constraint rows do not have full rank");

    let inv = linalg::inverse(&seed_rows).expect("seed rows are independent");
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let col: Vec<_> = inv.iter().map(|row| row[j]).collect();
            let mut zeros = BitSet::with_capacity(n);
            for (l, &i) in seed.iter().enumerate() {
                if l != j {
                    zeros.insert(i);
                }
            }
            Ray {
                coords: clear_denominators(&col),
                zeros,
            }
        })
        .collect();

    let is_seed: BitSet = seed.iter().copied().collect();
    for (i, row) in rows.iter().enumerate() {
        if is_seed.contains(i) {
            continue;
        }
        rays = add_constraint(rays, row, i, d);
    }
    rays.into_iter().map(|r| r.coords).collect()
}

fn add_constraint(rays: Vec<Ray>, row: &[i128], index: usize, d: usize) -> Vec<Ray> {
    let values: Vec<i128> = rays.iter().map(|r| dot(&r.coords, row)).collect();
    let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > 0).collect();
    let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < 0).collect();
    if neg.is_empty() {
        let mut rays = rays;
        for (r, &v) in rays.iter_mut().zip(&values) {
            if v == 0 {
                r.zeros.insert(index);
            }
        }
        return rays;
    }

    let mut created = Vec::new();
    for &p in &pos {
        for &q in &neg {
            let common = rays[p].zeros.intersection(&rays[q].zeros);
            if common.len() + 2 < d {
                continue;
            }
            let blocked = rays
                .iter()
                .enumerate()
                .any(|(r, ray)| r != p && r != q && common.is_subset(&ray.zeros));
            if blocked {
                continue;
            }
            let (vp, vq) = (values[p], values[q]);
            let mut coords: Vec<i128> = rays[q]
                .coords
                .iter()
                .zip(&rays[p].coords)
                .map(|(&cq, &cp)| vp * cq - vq * cp)
                .collect();
            make_primitive(&mut coords);
            let mut zeros = common;
            zeros.insert(index);
            created.push(Ray { coords, zeros });
        }
    }

    let mut next: Vec<Ray> = rays
        .into_iter()
        .zip(values)
        .filter(|(_, v)| *v >= 0)
        .map(|(mut r, v)| {
            if v == 0 {
                r.zeros.insert(index);
            }
            r
        })
        .collect();
    next.extend(created);
    next
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i128]]) -> Vec<Vec<i128>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn triangle() {
        let f = facets_full_dim(&pts(&[&[0, 0], &[1, 0], &[0, 1]]));
        assert_eq!(
            f,
            vec![(vec![-1, 0], 0), (vec![0, -1], 0), (vec![1, 1], 1)]
        );
    }

    #[test]
    fn square_with_interior_point() {
        let f = facets_full_dim(&pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0]]));
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn segment() {
        let f = facets_full_dim(&pts(&[&[0], &[3], &[1]]));
        assert_eq!(f, vec![(vec![-1], 0), (vec![1], 3)]);
    }

    #[test]
    fn vertex_enumeration_inverts_facet_enumeration() {
        let p = pts(&[&[0, 0], &[2, 0], &[0, 3], &[1, 1]]);
        let f = facets_full_dim(&p);
        let v = vertices_from_facets(&f, 2);
        assert_eq!(
            v,
            vec![(vec![0, 0], 1), (vec![0, 3], 1), (vec![2, 0], 1)]
        );
    }

    #[test]
    fn cube_has_six_facets() {
        let mut p = Vec::new();
        for m in 0..8 {
            p.push(vec![(m & 1) as i128, ((m >> 1) & 1) as i128, ((m >> 2) & 1) as i128]);
        }
        assert_eq!(facets_full_dim(&p).len(), 6);
    }
}
