//! Small complex-matrix helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense complex square matrix, the concrete model for `SL(n, C)`.
pub type Matrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

/// The matrix unit `E_{ij}`.
pub fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = Complex64::new(1.0, 0.0);
    m
}

pub fn diag_real(d: &[f64]) -> Matrix {
    let n = d.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &x) in d.iter().enumerate() {
        m[(i, i)] = Complex64::new(x, 0.0);
    }
    m
}

pub fn diag(d: &[Complex64]) -> Matrix {
    let n = d.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &x) in d.iter().enumerate() {
        m[(i, i)] = x;
    }
    m
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest deviation from unit upper triangular shape.
pub fn unipotent_deviation(m: &Matrix) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..=i {
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((m[(i, j)] - target).norm());
        }
    }
    dev
}

/// `max |(m^* m - 1)_{ij}|`.
pub fn unitary_deviation(m: &Matrix) -> f64 {
    max_abs_diff(&(m.adjoint() * m), &identity(m.nrows()))
}

/// Inverse of a unit upper triangular matrix by back substitution.
pub fn inverse_unipotent(u: &Matrix) -> Matrix {
    let n = u.nrows();
    let mut inv = identity(n);
    for j in 0..n {
        for i in (0..j).rev() {
            let mut s = Complex64::new(0.0, 0.0);
            for k in i + 1..=j {
                s += u[(i, k)] * inv[(k, j)];
            }
            inv[(i, j)] = -s;
        }
    }
    inv
}

/// JSON form: rows of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(pub Vec<Vec<[f64; 2]>>);

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        MatrixJson(
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        )
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<Matrix> {
        let n = self.0.len();
        let mut m = Matrix::zeros(n, n);
        for (i, row) in self.0.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &[re, im]) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::Parse("non-finite matrix entry".into()));
                }
                m[(i, j)] = Complex64::new(re, im);
            }
        }
        Ok(m)
    }
}
