use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::hollow_reduce;
use crate::hypercube::{Flavor, State};
use crate::matrix::SquareMatrix;

/// A network `N(W, T)`: weights `W` and thresholds `T`.
///
/// Real networks need a real symmetric `W`, complex networks a Hermitian
/// `W`; both need a nonnegative diagonal. The hollow reduction of `W` is
/// cached because the dynamics run on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NetworkJson", into = "NetworkJson")]
pub struct Network {
    flavor: Flavor,
    w: SquareMatrix,
    t: Vec<Complex64>,
    hollow: SquareMatrix,
    clamped: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct ThresholdJson {
    re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    flavor: Flavor,
    #[serde(rename = "W")]
    w: SquareMatrix,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    t: Option<ThresholdJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    clamped: Option<usize>,
}

impl TryFrom<NetworkJson> for Network {
    type Error = Error;
    fn try_from(j: NetworkJson) -> Result<Self> {
        let n = j.w.n();
        let t = match j.t {
            None => vec![Complex64::new(0.0, 0.0); n],
            Some(t) => {
                let im = t.im.unwrap_or_else(|| vec![0.0; t.re.len()]);
                if im.len() != t.re.len() {
                    return Err(Error::DimensionMismatch {
                        expected: t.re.len(),
                        got: im.len(),
                    });
                }
                if let Some(&bad) = t.re.iter().chain(&im).find(|x| !x.is_finite()) {
                    return Err(Error::NonFinite(bad));
                }
                t.re.into_iter()
                    .zip(im)
                    .map(|(re, im)| Complex64::new(re, im))
                    .collect()
            }
        };
        let net = Network::new(j.flavor, j.w, t)?;
        match j.clamped {
            Some(i) => net.with_clamp(i),
            None => Ok(net),
        }
    }
}

impl From<Network> for NetworkJson {
    fn from(net: Network) -> Self {
        let im: Vec<f64> = net.t.iter().map(|z| z.im).collect();
        NetworkJson {
            flavor: net.flavor,
            t: Some(ThresholdJson {
                re: net.t.iter().map(|z| z.re).collect(),
                im: if net.flavor == Flavor::Complex {
                    Some(im)
                } else {
                    None
                },
            }),
            w: net.w,
            clamped: net.clamped,
        }
    }
}

impl Network {
    pub fn new(flavor: Flavor, w: SquareMatrix, t: Vec<Complex64>) -> Result<Self> {
        if t.len() != w.n() {
            return Err(Error::DimensionMismatch {
                expected: w.n(),
                got: t.len(),
            });
        }
        match flavor {
            Flavor::Real => {
                if !w.is_symmetric() {
                    return Err(Error::MatrixShape("real symmetric"));
                }
                if t.iter().any(|z| z.im != 0.0) {
                    return Err(Error::Invalid(
                        "real network thresholds must be real".into(),
                    ));
                }
            }
            Flavor::Complex => {
                if !w.is_hermitian() {
                    return Err(Error::MatrixShape("Hermitian"));
                }
            }
        }
        if !w.has_nonnegative_diagonal() {
            return Err(Error::MatrixShape("nonnegative on the diagonal"));
        }
        let hollow = hollow_reduce(&w, flavor)?.c;
        Ok(Network {
            flavor,
            w,
            t,
            hollow,
            clamped: None,
        })
    }

    pub fn real(w: SquareMatrix, t: &[f64]) -> Result<Self> {
        Network::new(
            Flavor::Real,
            w,
            t.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zero_threshold(flavor: Flavor, w: SquareMatrix) -> Result<Self> {
        let n = w.n();
        Network::new(flavor, w, vec![Complex64::new(0.0, 0.0); n])
    }

    /// Marks node `i` as clamped: the dynamics never update it.
    pub fn with_clamp(mut self, i: usize) -> Result<Self> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        self.clamped = Some(i);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.w.n()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn weights(&self) -> &SquareMatrix {
        &self.w
    }

    pub fn thresholds(&self) -> &[Complex64] {
        &self.t
    }

    /// Symmetric (Hermitian) part of `W` with the diagonal removed.
    pub fn hollow(&self) -> &SquareMatrix {
        &self.hollow
    }

    pub fn clamped(&self) -> Option<usize> {
        self.clamped
    }

    pub fn has_zero_thresholds(&self) -> bool {
        self.t.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    /// `(-W, -T)`; only valid when `W` is hollow.
    pub fn negated(&self) -> Result<Network> {
        Network::new(self.flavor, -&self.w, self.t.iter().map(|z| -z).collect())
    }

    pub fn check_state(&self, v: &State) -> Result<()> {
        v.check(self.flavor, self.n())
    }

    /// `Σ_j M_ij v_j - T_i` for `M` either `W` or its hollow reduction.
    pub(crate) fn field(&self, m: &SquareMatrix, v: &State, i: usize) -> Complex64 {
        let mut h = Complex64::new(0.0, 0.0);
        match v {
            State::Real(s) => {
                for (a, &x) in m.row(i).iter().zip(s.entries()) {
                    h.re += a.re * x as f64;
                }
            }
            State::Complex(q) => {
                for (a, x) in m.row(i).iter().zip(q.entries()) {
                    h += a * x.to_complex();
                }
            }
        }
        h - self.t[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonconforming_weights() {
        let asym = SquareMatrix::from_real_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert!(Network::zero_threshold(Flavor::Real, asym).is_err());
        let negdiag = SquareMatrix::from_real_rows(&[vec![-1.0]]).unwrap();
        assert!(Network::zero_threshold(Flavor::Real, negdiag).is_err());
        let w = SquareMatrix::from_real_rows(&[vec![0.0]]).unwrap();
        assert!(Network::real(w, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let net: Network = serde_json::from_str(
            r#"{"flavor":"complex","W":{"n":2,"re":[[0,1],[1,0]],"im":[[0,0.5],[-0.5,0]]},"T":{"re":[1,0],"im":[0,-2]}}"#,
        )
        .unwrap();
        assert_eq!(net.thresholds()[1], Complex64::new(0.0, -2.0));
        let back: Network = serde_json::from_str(&serde_json::to_string(&net).unwrap()).unwrap();
        assert_eq!(back, net);

        let real: Network =
            serde_json::from_str(r#"{"flavor":"real","W":{"n":1,"re":[[0]]}}"#).unwrap();
        assert!(real.has_zero_thresholds());
        assert!(serde_json::from_str::<Network>(
            r#"{"flavor":"real","W":{"n":1,"re":[[0]]},"T":{"re":[1],"im":[1]}}"#
        )
        .is_err());
    }
}
