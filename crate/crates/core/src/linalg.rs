//! Small dense real matrices and a cyclic Jacobi eigensolver.
//!
//! Everything here is sized for the see-saw workloads (a few hundred rows at most),
//! so the storage is a plain row-major `Vec`.

use std::ops::{Index, IndexMut};

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row-major data. Panics if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    /// `v vᵀ`.
    pub fn outer(v: &[T]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j];
            }
        }
        m
    }

    /// Orthogonal projector onto the span of the given orthonormal vectors.
    pub fn projector_from_basis(n: usize, basis: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(n, n);
        for v in basis {
            for i in 0..n {
                if v[i] == T::zero() {
                    continue;
                }
                for j in 0..n {
                    m[(i, j)] = m[(i, j)] + v[i] * v[j];
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = *d + a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[T]) -> T {
        dot(v, &self.matvec(v))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + b;
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == T::zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `‖M − Mᵀ‖_F`.
    pub fn asymmetry(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let mut s = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - self[(j, i)];
                s = s + d * d;
            }
        }
        s.sqrt()
    }

    /// `‖M² − M‖_F`.
    pub fn idempotency_residual(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        self.matmul(self).sub(self).frobenius_norm()
    }

    pub fn cast<U: Real>(&self) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| U::lit(x.to_f64_lossy())).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

pub fn norm<T: Real>(v: &[T]) -> T {
    dot(v, v).sqrt()
}

/// Normalises `v` in place, returning its original norm.
pub fn normalize<T: Real>(v: &mut [T]) -> T {
    let n = norm(v);
    if n > T::zero() {
        for x in v.iter_mut() {
            *x = *x / n;
        }
    }
    n
}

/// Eigendecomposition of a real symmetric matrix.
///
/// `values` are sorted in descending order; column `k` of `vectors` belongs to `values[k]`.
/// Equal eigenvalues keep the order in which the Jacobi sweep produced them.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
    pub sweeps: usize,
}

impl<T: Real> SymmetricEigen<T> {
    pub fn vector(&self, k: usize) -> Vec<T> {
        self.vectors.column(k)
    }

    /// Eigenvectors whose eigenvalue exceeds `threshold`.
    pub fn vectors_above(&self, threshold: T) -> Vec<Vec<T>> {
        self.values
            .iter()
            .enumerate()
            .take_while(|(_, &v)| v > threshold)
            .map(|(k, _)| self.vector(k))
            .collect()
    }
}

const MAX_JACOBI_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// `1e-12 · ‖A‖_F` (or the scalar type's resolution, whichever is coarser).
///
/// The input is symmetrised first; callers pass matrices that are symmetric up to rounding.
pub fn symmetric_eigen<T: Real>(a: &Matrix<T>) -> SymmetricEigen<T> {
    assert!(a.is_square(), "eigendecomposition of a non-square matrix");
    let n = a.rows();
    let half = T::lit(0.5);
    let mut m = a.data.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let s = (m[i * n + j] + m[j * n + i]) * half;
            m[i * n + j] = s;
            m[j * n + i] = s;
        }
    }
    // Eigenvectors are accumulated as rows of `v` and transposed at the end.
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let scale = m.iter().map(|&x| x * x).sum::<T>().sqrt();
    let rel = T::lit(1e-12).max(T::epsilon() * T::lit(8.0));
    let target = rel * scale;
    let mut sweeps = 0;

    while sweeps < MAX_JACOBI_SWEEPS {
        let off = off_diagonal_norm(&m, n);
        if off <= target || off == T::zero() {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let tau = (aqq - app) / (apq + apq);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, n, p, q, c, s);
                m[p * n + q] = T::zero();
                m[q * n + p] = T::zero();
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].partial_cmp(&m[i * n + i]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&k| m[k * n + k]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors.data[r * n + dst] = v[src * n + r];
        }
    }
    SymmetricEigen { values, vectors, sweeps }
}

fn off_diagonal_norm<T: Real>(m: &[T], n: usize) -> T {
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + m[i * n + j] * m[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Applies the rotation in the `(p, q)` plane: `m ← Jᵀ m J`, eigenvector rows `v ← Jᵀ v`.
fn rotate<T: Real>(m: &mut [T], v: &mut [T], n: usize, p: usize, q: usize, c: T, s: T) {
    for k in 0..n {
        let mkp = m[k * n + p];
        let mkq = m[k * n + q];
        m[k * n + p] = c * mkp - s * mkq;
        m[k * n + q] = s * mkp + c * mkq;
    }
    let (rp, rq) = (p * n, q * n);
    for k in 0..n {
        let mpk = m[rp + k];
        let mqk = m[rq + k];
        m[rp + k] = c * mpk - s * mqk;
        m[rq + k] = s * mpk + c * mqk;
        let vpk = v[rp + k];
        let vqk = v[rq + k];
        v[rp + k] = c * vpk - s * vqk;
        v[rq + k] = s * vpk + c * vqk;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(e: &SymmetricEigen<f64>) -> Matrix<f64> {
        let n = e.values.len();
        let mut out = Matrix::zeros(n, n);
        for k in 0..n {
            out.add_assign(&Matrix::outer(&e.vector(k)).scale(e.values[k]));
        }
        out
    }

    #[test]
    fn jacobi_reconstructs_random_symmetric() {
        let n = 7;
        let mut a = Matrix::<f64>::zeros(n, n);
        let mut x = 0.3_f64;
        for i in 0..n {
            for j in i..n {
                x = (x * 3.7 + 0.11).fract();
                a[(i, j)] = x - 0.5;
                a[(j, i)] = x - 0.5;
            }
        }
        let e = symmetric_eigen(&a);
        assert!(reconstruct(&e).sub(&a).frobenius_norm() < 1e-11);
        let vtv = e.vectors.transpose().matmul(&e.vectors);
        assert!(vtv.sub(&Matrix::identity(n)).frobenius_norm() < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn jacobi_known_spectrum() {
        // Path P3 adjacency: eigenvalues √2, 0, −√2.
        let a = Matrix::from_rows(&[vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]]);
        let e = symmetric_eigen(&a);
        let s = 2f64.sqrt();
        assert!((e.values[0] - s).abs() < 1e-13);
        assert!(e.values[1].abs() < 1e-13);
        assert!((e.values[2] + s).abs() < 1e-13);
    }

    #[test]
    fn jacobi_works_in_f32() {
        let a = Matrix::<f32>::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let e = symmetric_eigen(&a);
        assert!((e.values[0] - 3.0).abs() < 1e-5);
        assert!((e.values[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn kron_shapes_and_entries() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let b = Matrix::<f64>::identity(2);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k[(2, 0)], 3.0);
        assert_eq!(k[(3, 1)], 3.0);
        assert_eq!(k[(2, 1)], 0.0);
    }

    #[test]
    fn degenerate_spectrum_is_deterministic() {
        let a = Matrix::<f64>::identity(4);
        let e1 = symmetric_eigen(&a);
        let e2 = symmetric_eigen(&a);
        assert_eq!(e1.vectors, e2.vectors);
        assert_eq!(e1.vector(0), vec![1.0, 0.0, 0.0, 0.0]);
    }
}
