use std::ops::{Add, Index, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense `n x n` matrix with a real and an imaginary plane. Real matrices
/// carry an all-zero imaginary plane. Symmetric, Hermitian and hollow are
/// checked predicates, never stored labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct SquareMatrix {
    n: usize,
    data: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<Vec<f64>>>,
}

fn check_plane(n: usize, plane: &[Vec<f64>]) -> Result<()> {
    if plane.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: plane.len(),
        });
    }
    for (row, r) in plane.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row,
                cols: r.len(),
            });
        }
        if let Some(&bad) = r.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
    }
    Ok(())
}

impl TryFrom<MatrixJson> for SquareMatrix {
    type Error = Error;
    fn try_from(m: MatrixJson) -> Result<Self> {
        if m.n == 0 {
            return Err(Error::EmptyDimension);
        }
        check_plane(m.n, &m.re)?;
        if let Some(im) = &m.im {
            check_plane(m.n, im)?;
        }
        let data = (0..m.n * m.n)
            .map(|k| {
                let (i, j) = (k / m.n, k % m.n);
                let im = m.im.as_ref().map_or(0.0, |p| p[i][j]);
                Complex64::new(m.re[i][j], im)
            })
            .collect();
        Ok(SquareMatrix { n: m.n, data })
    }
}

impl From<SquareMatrix> for MatrixJson {
    fn from(m: SquareMatrix) -> Self {
        let plane = |f: fn(&Complex64) -> f64| {
            m.data
                .chunks(m.n)
                .map(|row| row.iter().map(f).collect())
                .collect::<Vec<Vec<f64>>>()
        };
        MatrixJson {
            n: m.n,
            re: plane(|z| z.re),
            im: if m.is_real() {
                None
            } else {
                Some(plane(|z| z.im))
            },
        }
    }
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        SquareMatrix { n, data }
    }

    /// Builds a real matrix from rows; rejects ragged or non-finite input.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        SquareMatrix::try_from(MatrixJson {
            n: rows.len(),
            re: rows.to_vec(),
            im: None,
        })
    }

    /// Builds a complex matrix from rows of complex entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        SquareMatrix::try_from(MatrixJson {
            n: rows.len(),
            re: rows
                .iter()
                .map(|r| r.iter().map(|z| z.re).collect())
                .collect(),
            im: Some(
                rows.iter()
                    .map(|r| r.iter().map(|z| z.im).collect())
                    .collect(),
            ),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_real() && self.is_hermitian()
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self.get(i, j) == self.get(j, i).conj()))
    }

    pub fn is_hollow(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == Complex64::new(0.0, 0.0))
    }

    /// Whether every diagonal entry is real and nonnegative.
    pub fn has_nonnegative_diagonal(&self) -> bool {
        (0..self.n).all(|i| {
            let d = self.get(i, i);
            d.im == 0.0 && d.re >= 0.0
        })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn with_zero_diagonal(&self) -> Self {
        let mut m = self.clone();
        for i in 0..m.n {
            m.data[i * m.n + i] = Complex64::new(0.0, 0.0);
        }
        m
    }

    /// `A x` for a complex vector of matching length.
    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self
            .data
            .chunks(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.n + j] = z;
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        SquareMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl Add for &SquareMatrix {
    type Output = SquareMatrix;
    fn add(self, rhs: &SquareMatrix) -> SquareMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;
    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;
    fn neg(self) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(|z| -z).collect(),
        }
    }
}
