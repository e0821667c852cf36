//! The coordinate maps `f_{A,a}`, `g_A`, `h` and the projection `π_e`.

use crate::error::{Error, Result};
use crate::geometry::{AffineLatticeChart, LatticePolytope};
use crate::linalg::{self, widen};

fn check_coords(p: &LatticePolytope, coords: &[usize]) -> Result<()> {
    match coords.iter().find(|&&c| c >= p.ambient_dim()) {
        Some(&c) => Err(Error::CoordinateOutOfRange(c)),
        None => Ok(()),
    }
}

fn map_vertices(p: &LatticePolytope, f: impl Fn(&[i64]) -> Vec<i64>) -> LatticePolytope {
    LatticePolytope::from_vertices_unchecked(p.vertices().iter().map(|v| f(v)).collect())
        .expect("image of a nonempty set")
}

/// Whether the affine map `f`, restricted to `aff(P)`, is a lattice
/// isomorphism onto the affine lattice of the image.
pub fn chart_map_is_unimodular(p: &LatticePolytope, f: impl Fn(&[i64]) -> Vec<i64>) -> bool {
    let chart = &p.hull().chart;
    let image: Vec<Vec<i64>> = p.vertices().iter().map(|v| f(v)).collect();
    let target = AffineLatticeChart::spanning(&image);
    if target.dim() != chart.dim() {
        return false;
    }
    let o = f(&chart.origin);
    let Some(yo) = target.to_chart(&o) else {
        return false;
    };
    let mut cols = Vec::with_capacity(chart.dim());
    for j in 0..chart.dim() {
        let mut unit = vec![0; chart.dim()];
        unit[j] = 1;
        let Some(y) = target.to_chart(&f(&chart.from_chart(&unit))) else {
            return false;
        };
        cols.push(widen(&y.iter().zip(&yo).map(|(a, b)| a - b).collect::<Vec<_>>()));
    }
    linalg::det(&cols).abs() == 1
}

/// `x_a <- 1 - sum_{i in A} x_i`.
pub fn apply_map_f(p: &LatticePolytope, set: &[usize], a: usize) -> Result<LatticePolytope> {
    check_coords(p, set)?;
    check_coords(p, &[a])?;
    if !set.contains(&a) {
        return Err(Error::PivotNotInSet { element: a });
    }
    Ok(map_vertices(p, |x| {
        let mut y = x.to_vec();
        y[a] = 1 - set.iter().map(|&i| x[i]).sum::<i64>();
        y
    }))
}

/// `x_e <- 1 - x_e` for `e` in `A`.
pub fn apply_map_g(p: &LatticePolytope, set: &[usize]) -> Result<LatticePolytope> {
    check_coords(p, set)?;
    Ok(map_vertices(p, |x| {
        let mut y = x.to_vec();
        for &e in set {
            y[e] = 1 - x[e];
        }
        y
    }))
}

/// `x_pivot <- x_pivot - sum_{i in block, i != pivot} x_i`.
pub fn apply_map_h(p: &LatticePolytope, pivot: usize, block: &[usize]) -> Result<LatticePolytope> {
    check_coords(p, block)?;
    check_coords(p, &[pivot])?;
    Ok(map_vertices(p, |x| {
        let mut y = x.to_vec();
        y[pivot] = x[pivot] - block.iter().filter(|&&i| i != pivot).map(|&i| x[i]).sum::<i64>();
        y
    }))
}

/// Drops coordinate `e`; refused unless the projection is a lattice
/// isomorphism on `aff(P)`.
pub fn apply_projection(p: &LatticePolytope, e: usize) -> Result<LatticePolytope> {
    check_coords(p, &[e])?;
    let drop = |x: &[i64]| -> Vec<i64> {
        x.iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &v)| v)
            .collect()
    };
    if !chart_map_is_unimodular(p, drop) {
        return Err(Error::ProjectionNotInjective);
    }
    Ok(map_vertices(p, drop))
}
