use serde::{Deserialize, Serialize};

use crate::linalg::{self, hermite_coordinates, integral, narrow, widen};

/// Integer coordinates on the affine lattice `aff(P) ∩ Z^d`.
///
/// `basis` is the column Hermite basis of the saturated difference lattice,
/// so every lattice point of the affine hull has integer chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineLatticeChart {
    pub origin: Vec<i64>,
    pub basis: Vec<Vec<i64>>,
}

impl AffineLatticeChart {
    /// Chart for the affine hull of `points` (nonempty, equal lengths),
    /// anchored at the first point.
    pub fn spanning(points: &[Vec<i64>]) -> Self {
        let origin = points[0].clone();
        let d = origin.len();
        let o = widen(&origin);
        let diffs: Vec<Vec<i128>> = points[1..]
            .iter()
            .map(|p| p.iter().zip(&o).map(|(&x, &y)| x as i128 - y).collect())
            .collect();
        let basis = linalg::saturation(&diffs, d)
            .iter()
            .map(|b| narrow(b))
            .collect();
        Self { origin, basis }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            origin: vec![0; d],
            basis: (0..d)
                .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ambient_dim())
    }

    pub(crate) fn basis_wide(&self) -> Vec<Vec<i128>> {
        self.basis.iter().map(|b| widen(b)).collect()
    }

    /// Chart coordinates of an ambient lattice point, `None` if the point is
    /// off the affine hull.
    pub fn to_chart(&self, x: &[i64]) -> Option<Vec<i64>> {
        let diff: Vec<i128> = x
            .iter()
            .zip(&self.origin)
            .map(|(&a, &b)| a as i128 - b as i128)
            .collect();
        if self.basis.is_empty() {
            return diff.iter().all(|&v| v == 0).then(Vec::new);
        }
        let y = hermite_coordinates(&self.basis_wide(), &diff)?;
        integral(&y).map(|v| narrow(&v))
    }

    pub fn from_chart(&self, y: &[i64]) -> Vec<i64> {
        let mut x = self.origin.clone();
        for (b, &c) in self.basis.iter().zip(y) {
            for (xi, &bi) in x.iter_mut().zip(b) {
                *xi += c * bi;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_of_length_two_keeps_interior_lattice_point() {
        let c = AffineLatticeChart::spanning(&[vec![0, 0], vec![2, 2]]);
        assert_eq!(c.basis, vec![vec![1, 1]]);
        assert_eq!(c.to_chart(&[2, 2]), Some(vec![2]));
        assert_eq!(c.to_chart(&[1, 1]), Some(vec![1]));
        assert_eq!(c.to_chart(&[1, 0]), None);
    }

    #[test]
    fn round_trip() {
        let pts = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let c = AffineLatticeChart::spanning(&pts);
        assert_eq!(c.dim(), 2);
        for p in &pts {
            let y = c.to_chart(p).unwrap();
            assert_eq!(&c.from_chart(&y), p);
        }
    }
}
