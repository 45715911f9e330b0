//! Dense matrix kernel over any [`Coeff`] backend.
//!
//! Everything here targets matrices no larger than 6x32, so plain Gaussian
//! elimination and cyclic Jacobi sweeps are both exact enough and fast
//! enough. Rank decisions route through [`Coeff::is_negligible`], which
//! makes the same code path exact over rationals and tolerance-based over
//! floats.

use crate::scalar::Coeff;

/// Row-major `rows x cols` matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<K> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<K>,
}

impl<K: std::fmt::Debug> std::fmt::Debug for Mat<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<K: Coeff> Mat<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<K>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<K> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = K::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = K::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, s: &K) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * s.clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Coeff::magnitude).fold(0.0, f64::max)
    }

    /// Reduced row echelon form; returns the echelon matrix and pivot columns.
    ///
    /// Pivots are chosen by largest magnitude within the column; entries whose
    /// magnitude is `<= eps * scale` (scale = max entry of the input) count as
    /// zero in the float backend.
    pub fn rref(&self, eps: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let scale = m.max_magnitude().max(1.0);
        let tol = eps * scale;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // best pivot in column c at or below row r
            let mut best = r;
            let mut best_mag = m[(r, c)].magnitude();
            for i in (r + 1)..m.rows {
                let mag = m[(i, c)].magnitude();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if m[(best, c)].is_negligible(tol) {
                continue;
            }
            m.swap_rows(r, best);
            let inv = K::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                        m[(i, j)] = v;
                    }
                }
            }
            // clean explicit zeros in the pivot column
            for i in 0..m.rows {
                if i != r {
                    m[(i, c)] = K::zero();
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, eps: f64) -> usize {
        self.rref(eps).1.len()
    }

    /// Basis of the kernel `{x : Ax = 0}`, one column vector per free column.
    pub fn kernel(&self, eps: f64) -> Vec<Vec<K>> {
        let (r, pivots) = self.rref(eps);
        let mut basis = Vec::new();
        let piv_in_col = |c: usize| pivots.iter().position(|&p| p == c);
        for c in 0..self.cols {
            if piv_in_col(c).is_some() {
                continue;
            }
            let mut v = vec![K::zero(); self.cols];
            v[c] = K::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = K::zero() - r[(row, c)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by Gaussian elimination (square matrices).
    pub fn det(&self, eps: f64) -> K {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let mut m = self.clone();
        let scale = m.max_magnitude().max(1.0);
        let tol = eps * scale;
        let mut det = K::one();
        for c in 0..m.cols {
            let mut best = c;
            let mut best_mag = m[(c, c)].magnitude();
            for i in (c + 1)..m.rows {
                let mag = m[(i, c)].magnitude();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if m[(best, c)].is_negligible(tol) {
                return K::zero();
            }
            if best != c {
                m.swap_rows(c, best);
                det = K::zero() - det;
            }
            det = det * m[(c, c)].clone();
            let inv = K::one() / m[(c, c)].clone();
            for i in (c + 1)..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Solve `Ax = b` for square invertible `A`.
    pub fn solve(&self, b: &[K], eps: f64) -> Option<Vec<K>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, b.len());
        let aug = self.hcat(&Mat::from_cols(vec![b.to_vec()]));
        let (r, pivots) = aug.rref(eps);
        if pivots.len() != self.cols || pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        Some((0..self.cols).map(|i| r[(i, self.cols)].clone()).collect())
    }

    /// Least-squares-free exact solve of a (possibly overdetermined but
    /// consistent) system `Ax = b`; `None` when inconsistent.
    pub fn solve_consistent(&self, b: &[K], eps: f64) -> Option<Vec<K>> {
        assert_eq!(self.rows, b.len());
        let aug = self.hcat(&Mat::from_cols(vec![b.to_vec()]));
        let (r, pivots) = aug.rref(eps);
        if pivots.iter().any(|&p| p == self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![K::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self, eps: f64) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hcat(&Mat::identity(n));
        let (r, pivots) = aug.rref(eps);
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<K> std::ops::Index<(usize, usize)> for Mat<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.data[i * self.cols + j]
    }
}

impl<K> std::ops::IndexMut<(usize, usize)> for Mat<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.data[i * self.cols + j]
    }
}

// ---------------------------------------------------------------------------
// Float-only helpers: orthonormalisation, symmetric eigenvalues, principal
// angles, singular values.
// ---------------------------------------------------------------------------

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Modified Gram-Schmidt with column pivoting; returns an orthonormal basis
/// of the column span. Columns whose remaining norm falls below
/// `eps * initial_scale` are dropped.
pub fn orthonormal_span(cols: &[Vec<f64>], eps: f64) -> Vec<Vec<f64>> {
    let mut work: Vec<Vec<f64>> = cols.to_vec();
    let scale = work.iter().map(|c| norm(c)).fold(0.0, f64::max).max(1.0);
    let tol = eps * scale;
    let mut basis: Vec<Vec<f64>> = Vec::new();
    loop {
        // pivot: remaining column with the largest norm
        let Some((best, best_norm)) = work
            .iter()
            .enumerate()
            .map(|(i, c)| (i, norm(c)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            break;
        };
        if best_norm <= tol {
            break;
        }
        let mut q = work.swap_remove(best);
        // re-orthogonalise twice for numerical safety
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&q, b);
                for (qi, bi) in q.iter_mut().zip(b) {
                    *qi -= c * bi;
                }
            }
        }
        let n = norm(&q);
        if n <= tol {
            continue;
        }
        for qi in q.iter_mut() {
            *qi /= n;
        }
        for c in work.iter_mut() {
            let d = dot(c, &q);
            for (ci, qi) in c.iter_mut().zip(&q) {
                *ci -= d * qi;
            }
        }
        basis.push(q);
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of `span(cols)` in `R^n`.
pub fn orthonormal_complement(cols: &[Vec<f64>], n: usize, eps: f64) -> Vec<Vec<f64>> {
    let span = orthonormal_span(cols, eps);
    let mut candidates = span.clone();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        candidates.push(e);
    }
    let full = orthonormal_span(&candidates, eps);
    full.into_iter().skip(span.len()).collect()
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi sweeps,
/// descending order.
pub fn symmetric_eigenvalues(m: &Mat<f64>) -> Vec<f64> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    for _ in 0..50 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[(i, j)] * a[(i, j)];
            }
        }
        if off.sqrt() < 1e-14 * a.max_magnitude().max(1.0) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

/// Singular values of an arbitrary small matrix, descending.
pub fn singular_values(m: &Mat<f64>) -> Vec<f64> {
    let (small, k) = if m.rows <= m.cols {
        (m.mul(&m.transpose()), m.rows)
    } else {
        (m.transpose().mul(m), m.cols)
    };
    symmetric_eigenvalues(&small)
        .into_iter()
        .take(k)
        .map(|l| l.max(0.0).sqrt())
        .collect()
}

/// Numerical rank: count of singular values above `rel_tol * sigma_max`.
pub fn numerical_rank(m: &Mat<f64>, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

/// Principal angles between two subspaces given by orthonormal bases,
/// ascending (radians). Both bases must be orthonormal.
pub fn principal_angles(u: &[Vec<f64>], v: &[Vec<f64>]) -> Vec<f64> {
    let p = u.len().min(v.len());
    if p == 0 {
        return Vec::new();
    }
    let s = Mat::from_fn(u.len(), v.len(), |i, j| dot(&u[i], &v[j]));
    let mut sv = singular_values(&s);
    sv.truncate(p);
    sv.into_iter()
        .map(|c| c.clamp(-1.0, 1.0).acos())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint, Rat};

    fn m(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rint).collect())
                .collect(),
        )
    }

    #[test]
    fn exact_rref_and_rank() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let (r, pivots) = a.rref(0.0);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a.rank(0.0), 2);
        assert_eq!(r[(0, 0)], rint(1));
        assert_eq!(r[(0, 1)], rint(0));
    }

    #[test]
    fn exact_kernel_solves() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        for v in a.kernel(0.0) {
            let out = a.mul_vec(&v);
            assert!(out.iter().all(|x| x.is_zero()));
        }
        assert_eq!(a.kernel(0.0).len(), 2);
    }

    #[test]
    fn exact_det_and_inverse() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(a.det(0.0), rint(1));
        let inv = a.inverse(0.0).unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        let swap = m(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.det(0.0), rint(-1));
    }

    #[test]
    fn consistent_solve_detects_inconsistency() {
        let a = m(vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let b = vec![rint(1), rint(2), rint(3)];
        assert_eq!(a.solve_consistent(&b, 0.0), Some(vec![rint(1), rint(2)]));
        let bad = vec![rint(1), rint(2), rint(4)];
        assert_eq!(a.solve_consistent(&bad, 0.0), None);
    }

    #[test]
    fn rational_entries_stay_exact() {
        let a = Mat::from_rows(vec![vec![rat(1, 3), rat(1, 6)], vec![rat(1, 2), rat(1, 4)]]);
        assert!(a.det(0.0).is_zero());
        assert_eq!(a.rank(0.0), 1);
    }

    #[test]
    fn float_orthonormal_span_and_angles() {
        let cols = vec![vec![1.0, 1.0, 0.0], vec![1.0, -1.0, 0.0], vec![2.0, 0.0, 0.0]];
        let q = orthonormal_span(&cols, 1e-12);
        assert_eq!(q.len(), 2);
        let u = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        let angles = principal_angles(&q, &u);
        assert!(angles.iter().all(|a| a.abs() < 1e-12));
        let w = vec![vec![0.0, 0.0, 1.0]];
        let a2 = principal_angles(&u, &w);
        assert!((a2[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn jacobi_eigenvalues_match_known_spectrum() {
        let a = Mat::from_rows(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        let ev = symmetric_eigenvalues(&a);
        assert!((ev[0] - 3.0).abs() < 1e-12);
        assert!((ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn numerical_rank_with_gap() {
        let a = Mat::from_rows(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1e-13, 0.0],
            vec![0.0, 0.0, 0.0],
        ]);
        assert_eq!(numerical_rank(&a, 1e-9), 1);
    }
}
