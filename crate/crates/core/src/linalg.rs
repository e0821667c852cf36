//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Matrices are row-major `Vec<Vec<i128>>`. Everything here is sized for
//! polytopes of dimension at most a dozen or so; no attempt is made at
//! asymptotic efficiency.

use num_integer::Integer;
use num_rational::Ratio;

pub type Rational = Ratio<i128>;
pub type Matrix = Vec<Vec<i128>>;

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// Returns `(g, x, y)` with `x*a + y*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// gcd of all entries (0 for the zero vector).
pub fn content(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| gcd(g, x))
}

/// Divides `v` by its content; the zero vector is left untouched.
pub fn make_primitive(v: &mut [i128]) {
    let g = content(v);
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn widen(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

pub fn narrow(v: &[i128]) -> Vec<i64> {
    v.iter()
        .map(|&x| i64::try_from(x).expect("coordinate exceeds i64 range"))
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &Matrix, cols: usize) -> Matrix {
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

pub fn mat_vec(m: &Matrix, v: &[i128]) -> Vec<i128> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c] != 0 {
                let (a, b) = (pivot_row[c], row[c]);
                for j in c..ncols {
                    row[j] = a * row[j] - b * pivot_row[j];
                }
                make_primitive(row);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det(m: &Matrix) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Inverse over the rationals, `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x)).collect();
            r.extend((0..n).map(|j| Rational::from_integer(i128::from(i == j))));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| a[i][c] != Rational::from_integer(0))?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && row[c] != Rational::from_integer(0) {
                let f = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Column-style Hermite normal form: finds a unimodular `V` with `A V = H`,
/// where `H` is in column echelon form with positive pivots and the entries
/// left of each pivot reduced into `[0, pivot)`. Returns `(H, V, rank)`; the
/// first `rank` columns of `H` are the canonical basis of the column lattice
/// and the last `cols - rank` columns of `V` span the integer kernel of `A`.
pub fn column_hnf(a: &Matrix, cols: usize) -> (Matrix, Matrix, usize) {
    let rows = a.len();
    let mut h = a.clone();
    let mut v = identity(cols);
    let mut col = 0;
    for row in 0..rows {
        if col == cols {
            break;
        }
        for j in col + 1..cols {
            let b = h[row][j];
            if b == 0 {
                continue;
            }
            let a0 = h[row][col];
            let (g, x, y) = ext_gcd(a0, b);
            let (p, q) = (-b / g, a0 / g);
            combine_columns(&mut h, col, j, x, y, p, q);
            combine_columns(&mut v, col, j, x, y, p, q);
        }
        let pivot = h[row][col];
        if pivot == 0 {
            continue;
        }
        if pivot < 0 {
            negate_column(&mut h, col);
            negate_column(&mut v, col);
        }
        let pivot = h[row][col];
        for l in 0..col {
            let f = h[row][l].div_euclid(pivot);
            if f != 0 {
                axpy_column(&mut h, l, col, -f);
                axpy_column(&mut v, l, col, -f);
            }
        }
        col += 1;
    }
    (h, v, col)
}

// (c1, c2) <- (x*c1 + y*c2, p*c1 + q*c2); callers guarantee x*q - y*p = 1.
fn combine_columns(m: &mut Matrix, c1: usize, c2: usize, x: i128, y: i128, p: i128, q: i128) {
    for row in m.iter_mut() {
        let (u, w) = (row[c1], row[c2]);
        row[c1] = x * u + y * w;
        row[c2] = p * u + q * w;
    }
}

fn negate_column(m: &mut Matrix, c: usize) {
    for row in m.iter_mut() {
        row[c] = -row[c];
    }
}

// column `target` += f * column `source`
fn axpy_column(m: &mut Matrix, target: usize, source: usize, f: i128) {
    for row in m.iter_mut() {
        row[target] += f * row[source];
    }
}

/// Canonical (Hermite) basis of the lattice generated by `gens` in `Z^dim`.
pub fn lattice_basis(gens: &[Vec<i128>], dim: usize) -> Vec<Vec<i128>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let a: Matrix = (0..dim).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    let (h, _, r) = column_hnf(&a, gens.len());
    (0..r).map(|j| h.iter().map(|row| row[j]).collect()).collect()
}

/// Basis of `{x in Z^dim : row . x = 0 for all rows}`, in Hermite form.
pub fn integer_kernel(rows: &[Vec<i128>], dim: usize) -> Vec<Vec<i128>> {
    let a: Matrix = rows.to_vec();
    let (_, v, r) = column_hnf(&a, dim);
    let gens: Vec<Vec<i128>> = (r..dim).map(|j| v.iter().map(|row| row[j]).collect()).collect();
    lattice_basis(&gens, dim)
}

/// Hermite basis of the saturation `span_Q(gens) ∩ Z^dim`.
pub fn saturation(gens: &[Vec<i128>], dim: usize) -> Vec<Vec<i128>> {
    let nonzero: Vec<Vec<i128>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let orth = integer_kernel(&nonzero, dim);
    integer_kernel(&orth, dim)
}

/// Solves `basis * y = x` for a basis in column Hermite form (as returned by
/// [`lattice_basis`]). Returns `None` when `x` is outside the rational span.
pub fn hermite_coordinates(basis: &[Vec<i128>], x: &[i128]) -> Option<Vec<Rational>> {
    let mut y: Vec<Rational> = Vec::with_capacity(basis.len());
    let mut start = 0;
    for (j, b) in basis.iter().enumerate() {
        let pivot_row = (start..b.len()).find(|&i| b[i] != 0)?;
        let mut acc = Rational::from_integer(x[pivot_row]);
        for (l, bl) in basis.iter().enumerate().take(j) {
            acc -= y[l] * Rational::from_integer(bl[pivot_row]);
        }
        y.push(acc / Rational::from_integer(b[pivot_row]));
        start = pivot_row + 1;
    }
    for i in 0..x.len() {
        let mut s = Rational::from_integer(0);
        for (b, yj) in basis.iter().zip(&y) {
            s += *yj * Rational::from_integer(b[i]);
        }
        if s != Rational::from_integer(x[i]) {
            return None;
        }
    }
    Some(y)
}

/// Converts a rational vector to an integer one, `None` if any entry is fractional.
pub fn integral(v: &[Rational]) -> Option<Vec<i128>> {
    v.iter()
        .map(|r| r.is_integer().then(|| r.to_integer()))
        .collect()
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
pub fn clear_denominators(v: &[Rational]) -> Vec<i128> {
    let l = v.iter().fold(1i128, |acc, r| acc.lcm(r.denom()));
    let mut out: Vec<i128> = v.iter().map(|r| (r * Rational::from_integer(l)).to_integer()).collect();
    make_primitive(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, -3), (-9, -6)] {
            let (g, x, y) = ext_gcd(a, b);
            assert_eq!(g, gcd(a, b));
            assert_eq!(x * a + y * b, g);
        }
    }

    #[test]
    fn rank_and_det() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&m), 2);
        assert_eq!(det(&m), 0);
        let u = vec![vec![2, 1], vec![1, 1]];
        assert_eq!(det(&u), 1);
        assert_eq!(det(&vec![vec![0, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn hnf_is_canonical_for_the_lattice() {
        let a = lattice_basis(&[vec![2, 0], vec![0, 3]], 2);
        let b = lattice_basis(&[vec![2, 3], vec![4, 3], vec![2, 0]], 2);
        assert_eq!(a, b);
    }

    #[test]
    fn saturation_of_even_segment_is_full_line() {
        assert_eq!(saturation(&[vec![2, 2]], 2), vec![vec![1, 1]]);
        assert_eq!(saturation(&[vec![2]], 1), vec![vec![1]]);
    }

    #[test]
    fn kernel_vectors_are_orthogonal() {
        let rows = vec![vec![1, 1, 1, 0], vec![0, 1, 2, 3]];
        let k = integer_kernel(&rows, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                assert_eq!(dot(r, v), 0);
            }
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]];
        let inv = inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Rational = (0..3).map(|k| inv[i][k] * Rational::from_integer(m[k][j])).sum();
                assert_eq!(s, Rational::from_integer(i128::from(i == j)));
            }
        }
    }
}
