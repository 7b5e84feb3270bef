//! Threshold elimination with a clamped dummy node.
//!
//! A network `(W, T)` on `n` nodes becomes a zero-threshold network on
//! `n + 1` nodes whose last node is held at `+1` (real) or `1 + j`
//! (complex):
//!
//! ```text
//! real:    [ W    -T ]      complex: [ W    -S ]    (1 + j) S_i = T_i
//!          [ -T^T  k ]               [ -S*   k ]
//! ```
//!
//! `k` is large enough that the dummy node's own pre-activation always has
//! the clamp's sign, so the clamp is a fixed point of the update rule.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::energy;
use crate::error::{Error, Result};
use crate::hypercube::{Flavor, QSpin, State, Vertices};
use crate::matrix::SquareMatrix;
use crate::network::Network;
use crate::oracle::census;
use crate::stability::local_field;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AugmentedNetwork {
    /// Zero-threshold network on `n + 1` nodes with the last node clamped.
    pub network: Network,
    /// Corner element `w_{n+1,n+1}`.
    pub k: f64,
    /// `S` with `(1 + j) S_i = T_i`; complex flavor only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dummy_weights: Option<Vec<Complex64>>,
}

impl AugmentedNetwork {
    pub fn flavor(&self) -> Flavor {
        self.network.flavor()
    }

    /// Dimension of the original network.
    pub fn original_n(&self) -> usize {
        self.network.n() - 1
    }

    pub fn clamp(&self) -> Complex64 {
        clamp_value(self.flavor())
    }

    pub fn embed(&self, v: &State) -> Result<State> {
        v.check(self.flavor(), self.original_n())?;
        Ok(embed_state(v))
    }

    pub fn project(&self, v: &State) -> Result<State> {
        v.check(self.flavor(), self.network.n())?;
        project_state(v)
    }
}

pub fn clamp_value(flavor: Flavor) -> Complex64 {
    match flavor {
        Flavor::Real => Complex64::new(1.0, 0.0),
        Flavor::Complex => Complex64::new(1.0, 1.0),
    }
}

/// Extends `w` by one row and column: `dummy` down the last column, its
/// conjugate along the last row, `k` in the corner.
fn bordered(w: &SquareMatrix, dummy: &[Complex64], k: f64) -> SquareMatrix {
    let n = w.n();
    SquareMatrix::from_fn(n + 1, |i, j| match (i < n, j < n) {
        (true, true) => w.get(i, j),
        (true, false) => dummy[i],
        (false, true) => dummy[j].conj(),
        (false, false) => Complex64::new(k, 0.0),
    })
}

fn finish(
    flavor: Flavor,
    wtilde: SquareMatrix,
    k: f64,
    dummy: Option<Vec<Complex64>>,
) -> Result<AugmentedNetwork> {
    let n = wtilde.n();
    let network = Network::zero_threshold(flavor, wtilde)?.with_clamp(n - 1)?;
    Ok(AugmentedNetwork {
        network,
        k,
        dummy_weights: dummy,
    })
}

/// `W~ = [[W, -T], [-T^T, k]]` with `k = Σ|T_i| + 1`.
pub fn augment_real(w: &SquareMatrix, t: &[f64]) -> Result<AugmentedNetwork> {
    if !w.is_symmetric() {
        return Err(Error::MatrixShape("real symmetric"));
    }
    if t.len() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            got: t.len(),
        });
    }
    let k = t.iter().map(|x| x.abs()).sum::<f64>() + 1.0;
    let dummy: Vec<Complex64> = t.iter().map(|&x| Complex64::new(-x, 0.0)).collect();
    finish(Flavor::Real, bordered(w, &dummy, k), k, None)
}

/// Solves `(1 + j) S_i = T_i`: for `T_i = a + jb`, `S_i = (a+b)/2 + j(b-a)/2`.
pub fn solve_dummy_weights(t: &[Complex64]) -> Vec<Complex64> {
    t.iter()
        .map(|z| Complex64::new((z.re + z.im) / 2.0, (z.im - z.re) / 2.0))
        .collect()
}

/// `W~ = [[W, -S], [-S*, k]]` with `k = Σ(|Re T_i| + |Im T_i|) + 1`.
pub fn augment_complex(w: &SquareMatrix, t: &[Complex64]) -> Result<AugmentedNetwork> {
    if !w.is_hermitian() {
        return Err(Error::MatrixShape("Hermitian"));
    }
    if t.len() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            got: t.len(),
        });
    }
    let s = solve_dummy_weights(t);
    let k = t.iter().map(|z| z.re.abs() + z.im.abs()).sum::<f64>() + 1.0;
    let dummy: Vec<Complex64> = s.iter().map(|z| -z).collect();
    finish(Flavor::Complex, bordered(w, &dummy, k), k, Some(s))
}

pub fn augment(net: &Network) -> Result<AugmentedNetwork> {
    match net.flavor() {
        Flavor::Real => {
            let t: Vec<f64> = net.thresholds().iter().map(|z| z.re).collect();
            augment_real(net.weights(), &t)
        }
        Flavor::Complex => augment_complex(net.weights(), net.thresholds()),
    }
}

/// Appends the clamp coordinate.
pub fn embed_state(v: &State) -> State {
    match v {
        State::Real(s) => {
            let mut e = s.entries().to_vec();
            e.push(1);
            State::Real(crate::hypercube::SpinVector::new(e).expect("non-empty"))
        }
        State::Complex(q) => {
            let mut e = q.entries().to_vec();
            e.push(QSpin::ONE_PLUS_J);
            State::Complex(crate::hypercube::QSpinVector::new(e).expect("non-empty"))
        }
    }
}

/// Drops the clamp coordinate; rejects states where it is not the clamp.
pub fn project_state(v: &State) -> Result<State> {
    let n = v.len();
    if n < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: n,
        });
    }
    let last = v.get(n - 1);
    let clamp = clamp_value(v.flavor());
    if last != clamp {
        return Err(Error::ClampViolated {
            expected: clamp.to_string(),
            got: last.to_string(),
        });
    }
    Ok(match v {
        State::Real(s) => State::Real(
            crate::hypercube::SpinVector::new(s.entries()[..n - 1].to_vec()).expect("n >= 2"),
        ),
        State::Complex(q) => State::Complex(
            crate::hypercube::QSpinVector::new(q.entries()[..n - 1].to_vec()).expect("n >= 2"),
        ),
    })
}

/// Exhaustive comparison of a network with its augmentation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreservationCheck {
    /// Stable states of `(W, T)` equal the projected clamp-consistent stable
    /// states of `(W~, 0)`, in enumeration order.
    pub stable_match: bool,
    pub anti_stable_match: bool,
    pub stable_count: usize,
    pub anti_stable_count: usize,
    /// Smallest real and imaginary parts of the dummy node's pre-activation
    /// over all embedded states; both must be at least 1 (imaginary part
    /// only for the complex flavor).
    pub dummy_field_min_re: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dummy_field_min_im: Option<f64>,
    pub clamp_sound: bool,
    /// Spread of `G~(embed v) - G(v)` over all `v`; zero up to rounding.
    pub energy_offset_spread: f64,
    pub ok: bool,
}

/// Tolerance on [`PreservationCheck::energy_offset_spread`].
pub const ENERGY_OFFSET_TOL: f64 = 1e-9;

fn clamp_consistent(v: &State) -> Option<State> {
    project_state(v).ok()
}

pub fn check_preservation(net: &Network, aug: &AugmentedNetwork) -> Result<PreservationCheck> {
    if aug.original_n() != net.n() || aug.flavor() != net.flavor() {
        return Err(Error::DimensionMismatch {
            expected: net.n(),
            got: aug.original_n(),
        });
    }
    let original = census(net)?;
    let augmented = census(&aug.network)?;
    let restrict =
        |states: &[State]| -> Vec<State> { states.iter().filter_map(clamp_consistent).collect() };
    let stable_match = restrict(&augmented.stable) == original.stable;
    let anti_stable_match = restrict(&augmented.anti_stable) == original.anti_stable;

    let dummy = net.n();
    let mut min_re = f64::INFINITY;
    let mut min_im = f64::INFINITY;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in Vertices::new(net.flavor(), net.n())? {
        let e = aug.embed(&v)?;
        let h = local_field(&aug.network, &e, dummy)?;
        min_re = min_re.min(h.re);
        min_im = min_im.min(h.im);
        let diff = energy(&aug.network, &e)? - energy(net, &v)?;
        lo = lo.min(diff);
        hi = hi.max(diff);
    }
    let dummy_field_min_im = (net.flavor() == Flavor::Complex).then_some(min_im);
    let clamp_sound = min_re >= 1.0 && dummy_field_min_im.is_none_or(|m| m >= 1.0);
    let energy_offset_spread = hi - lo;
    Ok(PreservationCheck {
        stable_match,
        anti_stable_match,
        stable_count: original.stable.len(),
        anti_stable_count: original.anti_stable.len(),
        dummy_field_min_re: min_re,
        dummy_field_min_im,
        clamp_sound,
        energy_offset_spread,
        ok: stable_match
            && anti_stable_match
            && clamp_sound
            && energy_offset_spread <= ENERGY_OFFSET_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::{QSpinVector, SpinVector};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_rows(rows: &[&[f64]]) -> SquareMatrix {
        SquareMatrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn augment_real_examples() {
        let a = augment_real(&SquareMatrix::zeros(1), &[2.0]).unwrap();
        assert_eq!(a.k, 3.0);
        assert_eq!(
            a.network.weights(),
            &real_rows(&[&[0.0, -2.0], &[-2.0, 3.0]])
        );
        assert!(a.network.has_zero_thresholds());
        assert_eq!(a.network.clamped(), Some(1));

        let w = real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let a = augment_real(&w, &[0.0, 0.0]).unwrap();
        assert_eq!(a.k, 1.0);
        assert_eq!(
            a.network.weights(),
            &real_rows(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]])
        );

        let a = augment_real(&w, &[1.0, -1.0]).unwrap();
        assert_eq!(a.k, 3.0);
        assert_eq!(
            a.network.weights(),
            &real_rows(&[&[0.0, 1.0, -1.0], &[1.0, 0.0, 1.0], &[-1.0, 1.0, 3.0]])
        );

        assert!(augment_real(&real_rows(&[&[0.0, 1.0], &[2.0, 0.0]]), &[0.0, 0.0]).is_err());
    }

    #[test]
    fn dummy_weight_examples() {
        let s = solve_dummy_weights(&[c(2.0, 4.0), c(0.0, 0.0), c(1.0, 1.0)]);
        assert_eq!(s, vec![c(3.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(s[0] * c(1.0, 1.0), c(2.0, 4.0));
        assert_eq!(s[2] * c(1.0, 1.0), c(1.0, 1.0));
    }

    #[test]
    fn augment_complex_examples() {
        let a = augment_complex(&SquareMatrix::zeros(1), &[c(2.0, 4.0)]).unwrap();
        assert_eq!(a.k, 7.0);
        assert_eq!(a.dummy_weights, Some(vec![c(3.0, 1.0)]));
        assert_eq!(
            a.network.weights(),
            &SquareMatrix::from_rows(&[
                vec![c(0.0, 0.0), c(-3.0, -1.0)],
                vec![c(-3.0, 1.0), c(7.0, 0.0)]
            ])
            .unwrap()
        );
        assert!(a.network.weights().is_hermitian());

        let a = augment_complex(&SquareMatrix::zeros(2), &[c(0.0, 0.0); 2]).unwrap();
        assert_eq!(a.k, 1.0);
        assert_eq!(a.network.weights().get(2, 2), c(1.0, 0.0));

        let a = augment_complex(&SquareMatrix::zeros(2), &[c(1.0, 1.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(a.dummy_weights, Some(vec![c(1.0, 0.0), c(0.0, 0.0)]));
        assert_eq!(a.k, 3.0);

        let skew = SquareMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(augment_complex(&skew, &[c(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn preservation_on_small_networks() {
        let w = real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let net = Network::real(w, &[1.0, -1.0]).unwrap();
        let aug = augment(&net).unwrap();
        let check = check_preservation(&net, &aug).unwrap();
        assert!(check.ok, "{check:?}");
        assert_eq!(check.dummy_field_min_im, None);

        let w = SquareMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.25, -1.0)],
            vec![c(0.25, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let net = Network::new(Flavor::Complex, w, vec![c(0.5, -0.75), c(-1.0, 0.125)]).unwrap();
        let aug = augment(&net).unwrap();
        let check = check_preservation(&net, &aug).unwrap();
        assert!(check.ok, "{check:?}");
        assert!(check.dummy_field_min_im.unwrap() >= 1.0);
    }

    #[test]
    fn embed_and_project() {
        let v = State::Real(SpinVector::new(vec![1, -1]).unwrap());
        let e = embed_state(&v);
        assert_eq!(e, State::Real(SpinVector::new(vec![1, -1, 1]).unwrap()));
        assert_eq!(project_state(&e).unwrap(), v);

        let q = State::Complex(QSpinVector::from_pairs(&[(1, -1)]).unwrap());
        let e = embed_state(&q);
        assert_eq!(
            e,
            State::Complex(QSpinVector::from_pairs(&[(1, -1), (1, 1)]).unwrap())
        );
        assert_eq!(project_state(&e).unwrap(), q);

        let bad = State::Real(SpinVector::new(vec![1, -1, -1]).unwrap());
        assert!(matches!(
            project_state(&bad),
            Err(Error::ClampViolated { .. })
        ));
        let bad = State::Complex(QSpinVector::from_pairs(&[(1, 1), (1, -1)]).unwrap());
        assert!(project_state(&bad).is_err());
    }
}
