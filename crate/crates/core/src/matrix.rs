//! Dense square matrices and the symmetric-matrix primitives used by the
//! discriminant code.

use std::fmt;

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// Absolute fallback for the PSD-rank threshold when a matrix is numerically zero.
pub const ZERO_MATRIX_FLOOR: f64 = 1e-12;

/// A dense, row-major, square real matrix. Not necessarily symmetric.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Matrix::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.data[i * d.len() + i] = v;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::param("matrix must have at least one row"));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            Error::check_dim(n, row.len())?;
            data.extend_from_slice(row);
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("matrix entry".into()));
        }
        Ok(Matrix { n, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn det(&self) -> f64 {
        let mut work = self.data.clone();
        det_in_place(&mut work, self.n)
    }

    /// Inverse by LU decomposition with partial pivoting; `None` if a pivot vanishes.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| lu[a * n + k].abs().total_cmp(&lu[b * n + k].abs()))
                .unwrap_or(k);
            if lu[p * n + k] == 0.0 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    lu[i * n + j] -= f * lu[k * n + j];
                }
            }
        }
        let mut inv = Matrix::zeros(n);
        let mut col = vec![0.0; n];
        for c in 0..n {
            for (i, slot) in col.iter_mut().enumerate() {
                *slot = if perm[i] == c { 1.0 } else { 0.0 };
            }
            for i in 0..n {
                let mut s = col[i];
                for j in 0..i {
                    s -= lu[i * n + j] * col[j];
                }
                col[i] = s;
            }
            for i in (0..n).rev() {
                let mut s = col[i];
                for j in i + 1..n {
                    s -= lu[i * n + j] * col[j];
                }
                col[i] = s / lu[i * n + i];
            }
            for (i, &v) in col.iter().enumerate() {
                inv.set(i, c, v);
            }
        }
        Some(inv)
    }
}

/// Determinant of the row-major `n`×`n` matrix stored in `a`, destroying `a`.
pub(crate) fn det_in_place(a: &mut [f64], n: usize) -> f64 {
    let mut det = 1.0;
    for k in 0..n {
        let mut p = k;
        let mut best = a[k * n + k].abs();
        for i in k + 1..n {
            let v = a[i * n + k].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if p != k {
            for j in k..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let f = a[i * n + k] / pivot;
            if f != 0.0 {
                for j in k + 1..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
    }
    det
}

/// A real symmetric matrix with finite entries.
///
/// Symmetry is exact: `get(i, j) == get(j, i)` bit for bit.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymMatrixJson", into = "SymMatrixJson")]
pub struct SymMatrix(Matrix);

#[derive(Serialize, Deserialize)]
struct SymMatrixJson {
    dim: usize,
    rows: Vec<Vec<f64>>,
}

impl TryFrom<SymMatrixJson> for SymMatrix {
    type Error = Error;

    fn try_from(raw: SymMatrixJson) -> Result<Self> {
        Error::check_dim(raw.dim, raw.rows.len())?;
        SymMatrix::from_rows(&raw.rows)
    }
}

impl From<SymMatrix> for SymMatrixJson {
    fn from(m: SymMatrix) -> Self {
        SymMatrixJson {
            dim: m.dim(),
            rows: m.0.rows(),
        }
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl SymMatrix {
    /// Rejects any asymmetry, however small.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = Matrix::from_rows(rows)?;
        let n = m.dim();
        for i in 0..n {
            for j in i + 1..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::param(format!(
                        "matrix is not symmetric at ({i}, {j}): {} vs {}",
                        m.get(i, j),
                        m.get(j, i)
                    )));
                }
            }
        }
        Ok(SymMatrix(m))
    }

    /// `(B + Bᵀ) / 2`.
    pub fn symmetrize(b: &Matrix) -> Self {
        let n = b.dim();
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, b.get(i, i));
            for j in i + 1..n {
                let v = 0.5 * (b.get(i, j) + b.get(j, i));
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        SymMatrix(m)
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix(Matrix::zeros(n))
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix(Matrix::identity(n))
    }

    pub fn diag(d: &[f64]) -> Self {
        SymMatrix(Matrix::diag(d))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn det(&self) -> f64 {
        self.0.det()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        SymMatrix(self.0.add(&other.0))
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        SymMatrix(self.0.scale(s))
    }

    /// Inverse, re-symmetrized to remove round-off asymmetry.
    pub fn inverse(&self) -> Option<SymMatrix> {
        self.0.inverse().map(|b| SymMatrix::symmetrize(&b))
    }

    /// Eigenvalues in ascending order together with the matching unit eigenvectors.
    pub fn eigen(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        let n = self.dim();
        let m = nalgebra::DMatrix::from_fn(n, n, |i, j| self.get(i, j));
        let eig = nalgebra::SymmetricEigen::new(m);
        let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
            .map(|k| {
                let v = eig.eigenvectors.column(k).iter().copied().collect();
                (eig.eigenvalues[k], v)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs.into_iter().unzip()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().0
    }

    /// Threshold below which an eigenvalue counts as zero: `tol` times the
    /// largest eigenvalue, or [`ZERO_MATRIX_FLOOR`] when that is not positive.
    pub fn rank_threshold(eigenvalues: &[f64], tol: f64) -> f64 {
        let top = eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if top > ZERO_MATRIX_FLOOR {
            tol * top
        } else {
            ZERO_MATRIX_FLOOR
        }
    }

    /// Orthonormal basis of the numeric column space (eigenvectors above the rank threshold).
    pub fn range_basis(&self, tol: f64) -> Vec<Vec<f64>> {
        let (values, vectors) = self.eigen();
        let threshold = SymMatrix::rank_threshold(&values, tol);
        values
            .into_iter()
            .zip(vectors)
            .filter(|(v, _)| *v > threshold)
            .map(|(_, vec)| vec)
            .collect()
    }
}

/// Number of eigenvalues above `tol` times the largest one.
pub fn rank_psd(m: &SymMatrix, tol: f64) -> Result<usize> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::param("rank tolerance must be positive"));
    }
    let values = m.eigenvalues();
    let threshold = SymMatrix::rank_threshold(&values, tol);
    Ok(values.iter().filter(|&&v| v > threshold).count())
}

/// `G·Gᵀ` for a `dim`×`rank` factor `G` with standard normal entries.
pub fn random_psd(dim: usize, rank: usize, seed: u64) -> Result<SymMatrix> {
    let mut r = rng::rng(seed);
    random_psd_with(dim, rank, &mut r)
}

pub fn random_psd_with(dim: usize, rank: usize, r: &mut rng::Rng) -> Result<SymMatrix> {
    if dim == 0 {
        return Err(Error::param("dimension must be positive"));
    }
    if rank > dim {
        return Err(Error::param(format!("rank {rank} exceeds dimension {dim}")));
    }
    let g: Vec<f64> = (0..dim * rank).map(|_| r.sample(StandardNormal)).collect();
    let mut m = Matrix::zeros(dim);
    for i in 0..dim {
        for j in i..dim {
            let v: f64 = (0..rank).map(|k| g[i * rank + k] * g[j * rank + k]).sum();
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    Ok(SymMatrix(m))
}

/// A matrix with independent standard normal entries (invertible with probability one).
pub fn random_matrix(dim: usize, r: &mut rng::Rng) -> Matrix {
    Matrix::from_fn(dim, |_, _| r.sample(StandardNormal))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_determinant_matches_cofactor_expansion() {
        let m = Matrix::from_rows(&[
            vec![2.0, -1.0, 0.5],
            vec![1.0, 3.0, 2.0],
            vec![0.0, 4.0, -1.0],
        ])
        .unwrap();
        let cofactor = 2.0 * (3.0 * -1.0 - 2.0 * 4.0) - (-1.0) * (1.0 * -1.0 - 2.0 * 0.0)
            + 0.5 * (1.0 * 4.0 - 3.0 * 0.0);
        assert!((m.det() - cofactor).abs() < 1e-12);
    }

    #[test]
    fn inverse_round_trips() {
        let m = random_matrix(5, &mut rng::rng(4));
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        assert!(prod.sub(&Matrix::identity(5)).max_abs() < 1e-10);
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(m.det(), 0.0);
        assert!(SymMatrix::from_rows(&m.rows()).unwrap().inverse().is_none());
    }

    #[test]
    fn symmetric_inverse_is_exactly_symmetric() {
        let a = random_psd(5, 5, 11).unwrap();
        let inv = a.inverse().unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(inv.get(i, j), inv.get(j, i));
            }
        }
    }

    #[test]
    fn rejects_asymmetry_and_nan() {
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0 + 1e-15, 1.0]]).is_err());
        assert!(SymMatrix::from_rows(&[vec![f64::NAN]]).is_err());
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_psd(&SymMatrix::identity(3), 1e-9).unwrap(), 3);
        assert_eq!(rank_psd(&SymMatrix::zeros(3), 1e-9).unwrap(), 0);
        assert_eq!(rank_psd(&SymMatrix::diag(&[1.0, 1e-14, 0.0]), 1e-9).unwrap(), 1);
        assert!(rank_psd(&SymMatrix::identity(2), 0.0).is_err());
    }

    #[test]
    fn random_psd_examples() {
        assert_eq!(random_psd(3, 0, 99).unwrap(), SymMatrix::zeros(3));
        let a = random_psd(3, 3, 7).unwrap();
        let b = random_psd(3, 3, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(rank_psd(&random_psd(4, 2, 1).unwrap(), 1e-9).unwrap(), 2);
        assert!(random_psd(3, 4, 0).is_err());
    }

    #[test]
    fn json_form() {
        let a = SymMatrix::diag(&[1.0, 2.0]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"dim":2,"rows":[[1.0,0.0],[0.0,2.0]]}"#);
        let back: SymMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let bad = r#"{"dim":2,"rows":[[1.0,0.5],[0.25,2.0]]}"#;
        assert!(serde_json::from_str::<SymMatrix>(bad).is_err());
        let wrong_dim = r#"{"dim":3,"rows":[[1.0,0.0],[0.0,2.0]]}"#;
        assert!(serde_json::from_str::<SymMatrix>(wrong_dim).is_err());
    }
}
