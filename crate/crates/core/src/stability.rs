//! Stable and anti-stable states, and the first-order sign condition every
//! global minimizer of a hollow form satisfies.
//!
//! [`is_stable`] and [`is_anti_stable`] use the literal definitions
//! `V = Sgn(WV - T)` and `V = -Sgn(WV - T)` with `sgn(0) = +1`, on `W` exactly
//! as given. [`minimality_slack`] instead checks `u_i (Cu)_i <= 0` per index
//! (per component in the complex case), which tolerates zero pre-activations
//! where both spin values give the same form value.
//!
//! A clamped node (see [`Network::with_clamp`]) is an input, not a neuron:
//! the dynamics never update it, so the predicates do not test it either.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercube::{sign_of, Flavor, QSpin, State};
use crate::matrix::SquareMatrix;
use crate::network::Network;

/// `H_i = Σ_j W_ij v_j - T_i` using `W` as given, diagonal included.
pub fn local_field(net: &Network, v: &State, i: usize) -> Result<Complex64> {
    net.check_state(v)?;
    if i >= net.n() {
        return Err(Error::IndexOutOfRange {
            index: i,
            n: net.n(),
        });
    }
    Ok(net.field(net.weights(), v, i))
}

fn matches_signum(net: &Network, v: &State, negate: bool) -> Result<bool> {
    net.check_state(v)?;
    let w = net.weights();
    Ok((0..net.n()).filter(|&i| net.clamped() != Some(i)).all(|i| {
        let h = net.field(w, v, i);
        match v {
            State::Real(s) => {
                let t = sign_of(h.re);
                s.get(i) == if negate { -t } else { t }
            }
            State::Complex(q) => {
                let t = QSpin::of(h);
                q.get(i) == if negate { -t } else { t }
            }
        }
    }))
}

/// `v = Sgn(Wv - T)`.
pub fn is_stable(net: &Network, v: &State) -> Result<bool> {
    matches_signum(net, v, false)
}

/// `v = -Sgn(Wv - T)`.
pub fn is_anti_stable(net: &Network, v: &State) -> Result<bool> {
    matches_signum(net, v, true)
}

/// Per-index slacks of the minimality condition `u = -Sgn(Cu)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlackReport {
    pub flavor: Flavor,
    /// `u_i (Cu)_i` (real) or `Re(u_i) Re((Cu)_i)` (complex).
    pub slacks_re: Vec<f64>,
    /// `Im(u_i) Im((Cu)_i)`; empty for the real flavor.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slacks_im: Vec<f64>,
    pub all_satisfied: bool,
    /// Indices where some component of `(Cu)_i` is exactly zero.
    pub tie_indices: Vec<usize>,
}

/// Evaluates the sign condition for a hollow symmetric (real `u`) or hollow
/// Hermitian (complex `u`) matrix `c`.
pub fn minimality_slack(c: &SquareMatrix, u: &State) -> Result<SlackReport> {
    if !c.is_hollow() {
        return Err(Error::MatrixShape("hollow"));
    }
    let flavor = u.flavor();
    match flavor {
        Flavor::Real if !c.is_symmetric() => return Err(Error::MatrixShape("real symmetric")),
        Flavor::Complex if !c.is_hermitian() => return Err(Error::MatrixShape("Hermitian")),
        _ => {}
    }
    if u.len() != c.n() {
        return Err(Error::DimensionMismatch {
            expected: c.n(),
            got: u.len(),
        });
    }
    let cu = c.mul_vec(&u.to_complex())?;
    let mut slacks_re = Vec::with_capacity(cu.len());
    let mut slacks_im = Vec::new();
    let mut tie_indices = Vec::new();
    for (i, h) in cu.iter().enumerate() {
        let ui = u.get(i);
        slacks_re.push(ui.re * h.re);
        let mut tie = h.re == 0.0;
        if flavor == Flavor::Complex {
            slacks_im.push(ui.im * h.im);
            tie |= h.im == 0.0;
        }
        if tie {
            tie_indices.push(i);
        }
    }
    let all_satisfied = slacks_re.iter().chain(&slacks_im).all(|&s| s <= 0.0);
    Ok(SlackReport {
        flavor,
        slacks_re,
        slacks_im,
        all_satisfied,
        tie_indices,
    })
}
