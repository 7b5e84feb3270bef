//! Seeded random instances for property tests, sweeps and benchmarks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypercube::Flavor;
use crate::matrix::SquareMatrix;
use crate::network::Network;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distribution of individual entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entries {
    /// Uniform on `[-1, 1]`.
    Uniform,
    /// Multiples of `1/16` in `[-1, 1]`; all hypercube arithmetic on these is
    /// exact, and exact ties occur.
    Dyadic,
}

impl Entries {
    pub fn sample<R: Rng>(self, rng: &mut R) -> f64 {
        match self {
            Entries::Uniform => rng.gen_range(-1.0..=1.0),
            Entries::Dyadic => rng.gen_range(-16i32..=16) as f64 / 16.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonal {
    Zero,
    /// Same distribution as the off-diagonal entries.
    Free,
    /// Absolute value of a sampled entry.
    Nonnegative,
}

fn diagonal<R: Rng>(rng: &mut R, entries: Entries, diag: Diagonal) -> f64 {
    match diag {
        Diagonal::Zero => 0.0,
        Diagonal::Free => entries.sample(rng),
        Diagonal::Nonnegative => entries.sample(rng).abs(),
    }
}

pub fn random_symmetric<R: Rng>(
    rng: &mut R,
    n: usize,
    entries: Entries,
    diag: Diagonal,
) -> SquareMatrix {
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, Complex64::new(diagonal(rng, entries, diag), 0.0));
        for j in i + 1..n {
            let x = Complex64::new(entries.sample(rng), 0.0);
            m.set(i, j, x);
            m.set(j, i, x);
        }
    }
    m
}

/// Hermitian with independent real and imaginary parts above the diagonal
/// and a real diagonal.
pub fn random_hermitian<R: Rng>(
    rng: &mut R,
    n: usize,
    entries: Entries,
    diag: Diagonal,
) -> SquareMatrix {
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, Complex64::new(diagonal(rng, entries, diag), 0.0));
        for j in i + 1..n {
            let z = Complex64::new(entries.sample(rng), entries.sample(rng));
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    m
}

/// Arbitrary (non-symmetric) real matrix.
pub fn random_square<R: Rng>(rng: &mut R, n: usize, entries: Entries) -> SquareMatrix {
    SquareMatrix::from_fn(n, |_, _| Complex64::new(entries.sample(rng), 0.0))
}

pub fn random_thresholds<R: Rng>(
    rng: &mut R,
    n: usize,
    flavor: Flavor,
    entries: Entries,
) -> Vec<Complex64> {
    (0..n)
        .map(|_| match flavor {
            Flavor::Real => Complex64::new(entries.sample(rng), 0.0),
            Flavor::Complex => Complex64::new(entries.sample(rng), entries.sample(rng)),
        })
        .collect()
}

/// A conforming network: symmetric (Hermitian) weights with the requested
/// diagonal, and random or zero thresholds.
pub fn random_network<R: Rng>(
    rng: &mut R,
    flavor: Flavor,
    n: usize,
    entries: Entries,
    diag: Diagonal,
    with_thresholds: bool,
) -> Network {
    assert!(
        diag != Diagonal::Free,
        "network weights need a nonnegative diagonal"
    );
    let w = match flavor {
        Flavor::Real => random_symmetric(rng, n, entries, diag),
        Flavor::Complex => random_hermitian(rng, n, entries, diag),
    };
    let t = if with_thresholds {
        random_thresholds(rng, n, flavor, entries)
    } else {
        vec![Complex64::new(0.0, 0.0); n]
    };
    Network::new(flavor, w, t).expect("generated weights conform")
}

/// Zero-threshold real network with hollow uniform symmetric weights.
pub fn hollow_symmetric_network(n: usize, seed: u64) -> Network {
    random_network(
        &mut rng(seed),
        Flavor::Real,
        n,
        Entries::Uniform,
        Diagonal::Zero,
        false,
    )
}
