//! Associative-memory weights for mutually orthogonal hypercube patterns.
//!
//! Real: `W = Σ_j (X_j X_j^T - I)` stores every `X_k` as a stable state and
//! its negation `Σ_j (I - X_j X_j^T)` stores them as anti-stable states.
//! Complex: the same with `X_j X_j*` and `2I`. With pairwise orthogonal
//! patterns `W X_k = (n - S) X_k` (real) or `(2n - 2S) X_k` (complex), which
//! is why `S < n` is required.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::Mode;
use crate::error::{Error, Result};
use crate::hypercube::{Flavor, QSpinVector, SpinVector, State};
use crate::matrix::SquareMatrix;
use crate::network::Network;
use crate::stability::{is_anti_stable, is_stable};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PatternJson", into = "PatternJson")]
pub struct PatternSet {
    flavor: Flavor,
    patterns: Vec<State>,
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    flavor: Flavor,
    patterns: Vec<State>,
}

impl TryFrom<PatternJson> for PatternSet {
    type Error = Error;
    fn try_from(p: PatternJson) -> Result<Self> {
        PatternSet::new(p.flavor, p.patterns)
    }
}

impl From<PatternSet> for PatternJson {
    fn from(p: PatternSet) -> Self {
        PatternJson {
            flavor: p.flavor,
            patterns: p.patterns,
        }
    }
}

impl PatternSet {
    /// Checks only that the patterns share one flavor and dimension;
    /// orthogonality is checked by [`check_patterns`] and on synthesis.
    pub fn new(flavor: Flavor, patterns: Vec<State>) -> Result<Self> {
        let n = patterns
            .first()
            .ok_or(Error::PatternCount { count: 0, n: 0 })?
            .len();
        for p in &patterns {
            p.check(flavor, n)?;
        }
        Ok(PatternSet { flavor, patterns })
    }

    pub fn real(patterns: Vec<SpinVector>) -> Result<Self> {
        PatternSet::new(
            Flavor::Real,
            patterns.into_iter().map(State::Real).collect(),
        )
    }

    pub fn complex(patterns: Vec<QSpinVector>) -> Result<Self> {
        PatternSet::new(
            Flavor::Complex,
            patterns.into_iter().map(State::Complex).collect(),
        )
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn n(&self) -> usize {
        self.patterns[0].len()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[State] {
        &self.patterns
    }
}

/// `X_j† X_k` in exact integer arithmetic, as `(re, im)`.
fn inner(a: &State, b: &State) -> (i64, i64) {
    match (a, b) {
        (State::Real(x), State::Real(y)) => (
            x.entries()
                .iter()
                .zip(y.entries())
                .map(|(&p, &q)| (p * q) as i64)
                .sum(),
            0,
        ),
        (State::Complex(x), State::Complex(y)) => {
            x.entries()
                .iter()
                .zip(y.entries())
                .fold((0, 0), |(re, im), (p, q)| {
                    let (a, b, c, d) = (p.re as i64, p.im as i64, q.re as i64, q.im as i64);
                    (re + a * c + b * d, im + a * d - b * c)
                })
        }
        _ => unreachable!("pattern sets are single-flavor"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub first: usize,
    pub second: usize,
    pub re: i64,
    pub im: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternReport {
    pub flavor: Flavor,
    pub n: usize,
    pub count: usize,
    /// Every pair `j < k` with `X_j† X_k != 0`.
    pub non_orthogonal: Vec<PairReport>,
    /// `X_j† X_j` for each pattern.
    pub self_products: Vec<i64>,
    pub orthogonal: bool,
}

pub fn check_patterns(ps: &PatternSet) -> PatternReport {
    let p = ps.patterns();
    let mut non_orthogonal = Vec::new();
    for j in 0..p.len() {
        for k in j + 1..p.len() {
            let (re, im) = inner(&p[j], &p[k]);
            if (re, im) != (0, 0) {
                non_orthogonal.push(PairReport {
                    first: j,
                    second: k,
                    re,
                    im,
                });
            }
        }
    }
    PatternReport {
        flavor: ps.flavor(),
        n: ps.n(),
        count: ps.len(),
        orthogonal: non_orthogonal.is_empty(),
        non_orthogonal,
        self_products: p.iter().map(|x| inner(x, x).0).collect(),
    }
}

fn validate(ps: &PatternSet, flavor: Flavor) -> Result<()> {
    if ps.flavor() != flavor {
        return Err(Error::FlavorMismatch {
            expected: flavor,
            got: ps.flavor(),
        });
    }
    if ps.len() >= ps.n() {
        return Err(Error::PatternCount {
            count: ps.len(),
            n: ps.n(),
        });
    }
    let report = check_patterns(ps);
    if let Some(pair) = report.non_orthogonal.first() {
        return Err(Error::NotOrthogonal {
            first: pair.first,
            second: pair.second,
            re: pair.re,
            im: pair.im,
        });
    }
    Ok(())
}

/// Sum of outer products `Σ_j X_j X_j†` minus `diag_shift · S · I`, negated
/// for the anti kind.
fn outer_sum(ps: &PatternSet, diag_shift: f64, kind: Mode) -> SquareMatrix {
    let xs: Vec<Vec<Complex64>> = ps.patterns().iter().map(State::to_complex).collect();
    let sign = match kind {
        Mode::Stable => 1.0,
        Mode::Anti => -1.0,
    };
    let shift = diag_shift * ps.len() as f64;
    SquareMatrix::from_fn(ps.n(), |i, k| {
        let mut z: Complex64 = xs.iter().map(|x| x[i] * x[k].conj()).sum();
        if i == k {
            z -= shift;
        }
        z * sign
    })
}

pub fn synthesize_real(ps: &PatternSet, kind: Mode) -> Result<SquareMatrix> {
    validate(ps, Flavor::Real)?;
    Ok(outer_sum(ps, 1.0, kind))
}

pub fn synthesize_complex(ps: &PatternSet, kind: Mode) -> Result<SquareMatrix> {
    validate(ps, Flavor::Complex)?;
    Ok(outer_sum(ps, 2.0, kind))
}

pub fn synthesize(ps: &PatternSet, kind: Mode) -> Result<SquareMatrix> {
    match ps.flavor() {
        Flavor::Real => synthesize_real(ps, kind),
        Flavor::Complex => synthesize_complex(ps, kind),
    }
}

/// Outcome of re-checking a synthesized matrix against its patterns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StorageCheck {
    /// Expected eigenvalue: `±(n - S)` real, `±(2n - 2S)` complex.
    pub eigenvalue: f64,
    /// Per pattern: `W X_k` equals `eigenvalue · X_k` entrywise.
    pub eigen_identity: Vec<bool>,
    /// Per pattern: passes `is_stable` (stable kind) or `is_anti_stable`.
    pub stored: Vec<bool>,
    pub ok: bool,
}

pub fn verify_storage(ps: &PatternSet, w: &SquareMatrix, kind: Mode) -> Result<StorageCheck> {
    let scale = match ps.flavor() {
        Flavor::Real => 1.0,
        Flavor::Complex => 2.0,
    };
    let magnitude = scale * (ps.n() - ps.len().min(ps.n())) as f64;
    let eigenvalue = match kind {
        Mode::Stable => magnitude,
        Mode::Anti => -magnitude,
    };
    let net = Network::zero_threshold(ps.flavor(), w.clone())?;
    let mut eigen_identity = Vec::with_capacity(ps.len());
    let mut stored = Vec::with_capacity(ps.len());
    for p in ps.patterns() {
        let x = p.to_complex();
        let wx = w.mul_vec(&x)?;
        eigen_identity.push(wx.iter().zip(&x).all(|(a, b)| *a == b * eigenvalue));
        stored.push(match kind {
            Mode::Stable => is_stable(&net, p)?,
            Mode::Anti => is_anti_stable(&net, p)?,
        });
    }
    let ok = eigen_identity.iter().chain(&stored).all(|&b| b);
    Ok(StorageCheck {
        eigenvalue,
        eigen_identity,
        stored,
        ok,
    })
}

/// Rows of the Sylvester Hadamard matrix of order `2^k`, `k >= 0`.
pub fn hadamard_rows(order: usize) -> Result<Vec<SpinVector>> {
    if !order.is_power_of_two() {
        return Err(Error::Invalid(format!(
            "Hadamard order {order} is not a power of two"
        )));
    }
    // H[i][j] = (-1)^popcount(i & j)
    Ok((0..order)
        .map(|i| {
            SpinVector::new(
                (0..order)
                    .map(|j| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 })
                    .collect(),
            )
            .expect("order >= 1")
        })
        .collect())
}

/// `(1 + j) · r` for a real spin vector `r`.
pub fn rotate_to_complex(r: &SpinVector) -> QSpinVector {
    let pairs: Vec<(i8, i8)> = r.entries().iter().map(|&s| (s, s)).collect();
    QSpinVector::from_pairs(&pairs).expect("non-empty")
}
