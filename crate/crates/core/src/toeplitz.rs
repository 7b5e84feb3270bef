//! Toeplitz forms evaluated from the first row alone.
//!
//! For a symmetric Toeplitz matrix with first row `t` and a real vertex `x`,
//!
//! ```text
//! x^T T x = n t_0 + 2 Σ_{d=1}^{n-1} t_d Σ_i x_i x_{i+d}
//! ```
//!
//! and for a Hermitian Toeplitz matrix and a complex vertex
//!
//! ```text
//! x* T x = 2n t_0 + Σ_d t_d Σ_i x_i* x_{i+d} + Σ_d t_d* Σ_i x_i x_{i+d}*
//! ```
//!
//! The lag sums only involve hypercube entries, so they are accumulated in
//! integers and each `t_d` is touched once.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercube::{QSpinVector, SpinVector, State};
use crate::matrix::SquareMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToeplitzKind {
    /// Real symmetric; `M_ij = t_|i-j|`.
    Real,
    /// Hermitian; `M_ij = t_{j-i}` above the diagonal, conjugated below.
    Hermitian,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct ToeplitzSpec {
    kind: ToeplitzKind,
    first_row: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    kind: ToeplitzKind,
    first_row: RowJson,
}

impl TryFrom<SpecJson> for ToeplitzSpec {
    type Error = Error;
    fn try_from(s: SpecJson) -> Result<Self> {
        let im = s
            .first_row
            .im
            .unwrap_or_else(|| vec![0.0; s.first_row.re.len()]);
        if im.len() != s.first_row.re.len() {
            return Err(Error::DimensionMismatch {
                expected: s.first_row.re.len(),
                got: im.len(),
            });
        }
        let row = s
            .first_row
            .re
            .into_iter()
            .zip(im)
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        ToeplitzSpec::new(s.kind, row)
    }
}

impl From<ToeplitzSpec> for SpecJson {
    fn from(s: ToeplitzSpec) -> Self {
        SpecJson {
            kind: s.kind,
            first_row: RowJson {
                re: s.first_row.iter().map(|z| z.re).collect(),
                im: match s.kind {
                    ToeplitzKind::Real => None,
                    ToeplitzKind::Hermitian => Some(s.first_row.iter().map(|z| z.im).collect()),
                },
            },
        }
    }
}

impl ToeplitzSpec {
    pub fn new(kind: ToeplitzKind, first_row: Vec<Complex64>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if let Some(z) = first_row
            .iter()
            .find(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite(if z.re.is_finite() { z.im } else { z.re }));
        }
        match kind {
            ToeplitzKind::Real if first_row.iter().any(|z| z.im != 0.0) => {
                Err(Error::Toeplitz("real kind needs a real first row"))
            }
            ToeplitzKind::Hermitian if first_row[0].im != 0.0 => {
                Err(Error::Toeplitz("hermitian kind needs a real leading entry"))
            }
            _ => Ok(ToeplitzSpec { kind, first_row }),
        }
    }

    pub fn real(first_row: &[f64]) -> Result<Self> {
        ToeplitzSpec::new(
            ToeplitzKind::Real,
            first_row.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn hermitian(first_row: &[Complex64]) -> Result<Self> {
        ToeplitzSpec::new(ToeplitzKind::Hermitian, first_row.to_vec())
    }

    pub fn kind(&self) -> ToeplitzKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[Complex64] {
        &self.first_row
    }
}

pub fn toeplitz_dense(spec: &ToeplitzSpec) -> SquareMatrix {
    let t = &spec.first_row;
    SquareMatrix::from_fn(spec.n(), |i, j| match spec.kind {
        ToeplitzKind::Real => t[i.abs_diff(j)],
        ToeplitzKind::Hermitian if j >= i => t[j - i],
        ToeplitzKind::Hermitian => t[i - j].conj(),
    })
}

fn check_len(spec: &ToeplitzSpec, got: usize) -> Result<()> {
    if got != spec.n() {
        return Err(Error::DimensionMismatch {
            expected: spec.n(),
            got,
        });
    }
    Ok(())
}

pub fn eval_toeplitz_real(spec: &ToeplitzSpec, x: &SpinVector) -> Result<f64> {
    if spec.kind != ToeplitzKind::Real {
        return Err(Error::Toeplitz("real evaluation needs the real kind"));
    }
    check_len(spec, x.len())?;
    let x = x.entries();
    let n = x.len();
    let t = &spec.first_row;
    let mut off = 0.0;
    for d in 1..n {
        let lag: i64 = (0..n - d).map(|i| (x[i] * x[i + d]) as i64).sum();
        off += t[d].re * lag as f64;
    }
    Ok(n as f64 * t[0].re + 2.0 * off)
}

pub fn eval_toeplitz_complex(spec: &ToeplitzSpec, x: &QSpinVector) -> Result<f64> {
    if spec.kind != ToeplitzKind::Hermitian {
        return Err(Error::Toeplitz(
            "complex evaluation needs the hermitian kind",
        ));
    }
    check_len(spec, x.len())?;
    let x = x.entries();
    let n = x.len();
    let t = &spec.first_row;
    let mut upper = Complex64::new(0.0, 0.0);
    for d in 1..n {
        // Σ_i x_i* x_{i+d} over Gaussian integers
        let (mut re, mut im) = (0i64, 0i64);
        for i in 0..n - d {
            let (a, b) = (x[i].re as i64, x[i].im as i64);
            let (c, e) = (x[i + d].re as i64, x[i + d].im as i64);
            re += a * c + b * e;
            im += a * e - b * c;
        }
        upper += t[d] * Complex64::new(re as f64, im as f64);
    }
    // the lower sum is the conjugate of the upper one
    let lower = upper.conj();
    Ok(2.0 * n as f64 * t[0].re + (upper + lower).re)
}

pub fn eval_toeplitz(spec: &ToeplitzSpec, x: &State) -> Result<f64> {
    match x {
        State::Real(v) => eval_toeplitz_real(spec, v),
        State::Complex(v) => eval_toeplitz_complex(spec, v),
    }
}
