//! Symmetric/skew splits, hollow reduction and form evaluation.
//!
//! On the real hypercube every `x_i^2` is 1, so the diagonal of a symmetric
//! matrix adds the constant `Trace(P)` to `x^T P x`. On the complex hypercube
//! `|x_i|^2 = 2` and the diagonal of a Hermitian matrix adds `2 Trace(A_H)`.
//! [`hollow_reduce`] separates that constant from the zero-diagonal part that
//! actually depends on the vertex.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercube::{Flavor, State};
use crate::matrix::SquareMatrix;

/// Imaginary parts at or below this are treated as rounding for Hermitian forms.
pub const REALNESS_TOL: f64 = 1e-12;

/// Returns `((A + A†)/2, (A - A†)/2)`.
pub fn decompose(a: &SquareMatrix) -> (SquareMatrix, SquareMatrix) {
    let adj = a.conj_transpose();
    let sym = (a + &adj).scale(0.5);
    let skew = (a - &adj).scale(0.5);
    (sym, skew)
}

/// Zero-diagonal symmetric (Hermitian) matrix `c` plus the constant the
/// dropped diagonal contributes on the hypercube.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HollowReduction {
    pub flavor: Flavor,
    #[serde(rename = "C")]
    pub c: SquareMatrix,
    /// `Trace(P)`, real flavor only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset_real: Option<f64>,
    /// `2 Trace(A_H)`, complex flavor only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset_complex: Option<f64>,
}

impl HollowReduction {
    pub fn offset(&self) -> f64 {
        self.offset_real.or(self.offset_complex).unwrap_or(0.0)
    }
}

pub fn hollow_reduce(a: &SquareMatrix, flavor: Flavor) -> Result<HollowReduction> {
    if flavor == Flavor::Real && !a.is_real() {
        return Err(Error::MatrixShape("real"));
    }
    let (sym, _) = decompose(a);
    let trace = sym.trace().re;
    let c = sym.with_zero_diagonal();
    Ok(match flavor {
        Flavor::Real => HollowReduction {
            flavor,
            c,
            offset_real: Some(trace),
            offset_complex: None,
        },
        Flavor::Complex => HollowReduction {
            flavor,
            c,
            offset_real: None,
            offset_complex: Some(2.0 * trace),
        },
    })
}

/// `x† A x` exactly as accumulated, without snapping the imaginary part.
pub fn eval_form_raw(a: &SquareMatrix, x: &[Complex64]) -> Result<Complex64> {
    let ax = a.mul_vec(x)?;
    Ok(x.iter().zip(&ax).map(|(xi, yi)| xi.conj() * yi).sum())
}

/// `x† A x`. For Hermitian `A` the imaginary rounding residue (at most
/// [`REALNESS_TOL`]) is dropped and the value is reported as real.
pub fn eval_form(a: &SquareMatrix, x: &[Complex64]) -> Result<Complex64> {
    let mut v = eval_form_raw(a, x)?;
    if v.im != 0.0 && v.im.abs() <= REALNESS_TOL && a.is_hermitian() {
        v.im = 0.0;
    }
    Ok(v)
}

pub fn eval_form_state(a: &SquareMatrix, x: &State) -> Result<Complex64> {
    eval_form(a, &x.to_complex())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::{vertices_complex, vertices_real, QSpinVector, SpinVector};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> SquareMatrix {
        SquareMatrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let (sym, skew) = decompose(&real(&[&[1.0, 2.0], &[0.0, 1.0]]));
        assert_eq!(sym, real(&[&[1.0, 1.0], &[1.0, 1.0]]));
        assert_eq!(skew, real(&[&[0.0, 1.0], &[-1.0, 0.0]]));

        let h = SquareMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(4.0, 0.0)],
        ])
        .unwrap();
        let (sym, skew) = decompose(&h);
        assert_eq!(sym, h);
        assert_eq!(skew, SquareMatrix::zeros(2));

        let a = SquareMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 2.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let (sym, skew) = decompose(&a);
        assert_eq!(
            sym,
            SquareMatrix::from_rows(&[
                vec![c(0.0, 0.0), c(0.0, 1.0)],
                vec![c(0.0, -1.0), c(0.0, 0.0)]
            ])
            .unwrap()
        );
        assert_eq!(
            skew,
            SquareMatrix::from_rows(&[
                vec![c(0.0, 0.0), c(0.0, 1.0)],
                vec![c(0.0, 1.0), c(0.0, 0.0)]
            ])
            .unwrap()
        );
        assert_eq!(&sym + &skew, a);
    }

    #[test]
    fn hollow_reduce_examples() {
        let r = hollow_reduce(&real(&[&[3.0, 1.0], &[1.0, 5.0]]), Flavor::Real).unwrap();
        assert_eq!(r.c, real(&[&[0.0, 1.0], &[1.0, 0.0]]));
        assert_eq!(r.offset_real, Some(8.0));
        assert_eq!(r.offset_complex, None);

        let r = hollow_reduce(&real(&[&[0.0, 1.0], &[-1.0, 0.0]]), Flavor::Real).unwrap();
        assert_eq!(r.c, SquareMatrix::zeros(2));
        assert_eq!(r.offset(), 0.0);

        let h = SquareMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(4.0, 0.0)],
        ])
        .unwrap();
        let r = hollow_reduce(&h, Flavor::Complex).unwrap();
        assert_eq!(
            r.c,
            SquareMatrix::from_rows(&[
                vec![c(0.0, 0.0), c(0.0, 1.0)],
                vec![c(0.0, -1.0), c(0.0, 0.0)]
            ])
            .unwrap()
        );
        assert_eq!(r.offset_complex, Some(12.0));

        assert!(hollow_reduce(&h, Flavor::Real).is_err());
    }

    #[test]
    fn eval_form_examples() {
        let x = SpinVector::new(vec![1, -1]).unwrap().to_complex();
        assert_eq!(
            eval_form(&real(&[&[0.0, 1.0], &[1.0, 0.0]]), &x).unwrap(),
            c(-2.0, 0.0)
        );

        // x1* j x2 + x2* (-j) x1 with x = (1+j, 1-j): j(1-j)^2 - j(1+j)^2 = 2 + 2
        let a = SquareMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let x = QSpinVector::from_pairs(&[(1, 1), (1, -1)])
            .unwrap()
            .to_complex();
        assert_eq!(eval_form(&a, &x).unwrap(), c(4.0, 0.0));

        for v in vertices_complex(3).unwrap() {
            assert_eq!(
                eval_form(&SquareMatrix::identity(3), &v.to_complex()).unwrap(),
                c(6.0, 0.0)
            );
        }

        assert!(matches!(
            eval_form(&SquareMatrix::identity(3), &x),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn skew_part_vanishes_on_real_vertices() {
        let a = real(&[&[0.3, -1.7, 2.25], &[0.5, 1.0, -0.125], &[4.0, 0.75, -2.0]]);
        let (_, skew) = decompose(&a);
        for v in vertices_real(3).unwrap() {
            assert_eq!(eval_form(&skew, &v.to_complex()).unwrap(), c(0.0, 0.0));
        }
    }

    #[test]
    fn skew_hermitian_part_is_imaginary_on_complex_vertices() {
        let a = SquareMatrix::from_rows(&[
            vec![c(0.5, 1.0), c(-1.0, 2.0), c(0.25, 0.0)],
            vec![c(3.0, -0.5), c(1.0, 1.0), c(0.0, 0.75)],
            vec![c(-2.0, 1.5), c(0.1, 0.2), c(-1.0, 0.0)],
        ])
        .unwrap();
        let (_, skew) = decompose(&a);
        for v in vertices_complex(3).unwrap() {
            assert!(eval_form(&skew, &v.to_complex()).unwrap().re.abs() <= REALNESS_TOL);
        }
    }
}
