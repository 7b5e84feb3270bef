//! Vertices of the real hypercube `{-1, +1}^n` and the complex hypercube
//! `{±1 ± j}^n`, the signum functions that map onto them, and exhaustive
//! enumeration.
//!
//! # Enumeration order
//!
//! Both enumerations follow the binary-reflected Gray code `k ^ (k >> 1)`
//! starting from the all-`+1` vertex (all `1+j` in the complex case), so two
//! consecutive vertices differ in exactly one sign. For the real hypercube,
//! bit `i` of the code set means entry `i` is `-1`. For the complex
//! hypercube the code has `2n` bits: bit `2i` negates the real part of entry
//! `i` and bit `2i + 1` negates its imaginary part.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest real dimension accepted by exhaustive enumeration.
pub const REAL_CAP: usize = 24;
/// Largest complex dimension accepted by exhaustive enumeration.
pub const COMPLEX_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Real,
    Complex,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Real => f.write_str("real"),
            Flavor::Complex => f.write_str("complex"),
        }
    }
}

impl Flavor {
    pub fn cap(self) -> usize {
        match self {
            Flavor::Real => REAL_CAP,
            Flavor::Complex => COMPLEX_CAP,
        }
    }

    /// Number of code bits per coordinate.
    pub(crate) fn bits_per_entry(self) -> usize {
        match self {
            Flavor::Real => 1,
            Flavor::Complex => 2,
        }
    }
}

#[inline]
pub(crate) fn sign_of(r: f64) -> i8 {
    if r >= 0.0 {
        1
    } else {
        -1
    }
}

/// Real signum with the tie convention `sgn(0) = +1`.
pub fn sgn(r: f64) -> Result<i8> {
    if !r.is_finite() {
        return Err(Error::NonFinite(r));
    }
    Ok(sign_of(r))
}

/// A single coordinate of the complex hypercube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QSpin {
    pub re: i8,
    pub im: i8,
}

impl QSpin {
    pub const ONE_PLUS_J: QSpin = QSpin { re: 1, im: 1 };

    #[inline]
    pub(crate) fn of(z: Complex64) -> QSpin {
        QSpin {
            re: sign_of(z.re),
            im: sign_of(z.im),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
}

impl std::ops::Neg for QSpin {
    type Output = QSpin;
    fn neg(self) -> QSpin {
        QSpin {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for QSpin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}j", self.re, if self.im > 0 { "+" } else { "-" })
    }
}

/// Complex signum: `csgn(a + jb) = sgn(a) + j sgn(b)`.
pub fn csgn(z: Complex64) -> Result<QSpin> {
    if !z.re.is_finite() {
        return Err(Error::NonFinite(z.re));
    }
    if !z.im.is_finite() {
        return Err(Error::NonFinite(z.im));
    }
    Ok(QSpin::of(z))
}

fn check_spin(v: i64) -> Result<i8> {
    match v {
        1 => Ok(1),
        -1 => Ok(-1),
        other => Err(Error::InvalidSpin(other as f64)),
    }
}

/// A vertex of the real hypercube.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SpinVector(Vec<i8>);

impl TryFrom<Vec<i64>> for SpinVector {
    type Error = Error;
    fn try_from(raw: Vec<i64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyDimension);
        }
        raw.into_iter()
            .map(check_spin)
            .collect::<Result<Vec<_>>>()
            .map(SpinVector)
    }
}

impl From<SpinVector> for Vec<i64> {
    fn from(v: SpinVector) -> Self {
        v.0.into_iter().map(i64::from).collect()
    }
}

impl SpinVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        SpinVector::try_from(entries.into_iter().map(i64::from).collect::<Vec<_>>())
    }

    pub fn ones(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(SpinVector(vec![1; n]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub(crate) fn set(&mut self, i: usize, s: i8) {
        debug_assert!(s == 1 || s == -1);
        self.0[i] = s;
    }

    pub fn negated(&self) -> SpinVector {
        SpinVector(self.0.iter().map(|s| -s).collect())
    }

    pub fn to_real(&self) -> Vec<f64> {
        self.0.iter().map(|&s| s as f64).collect()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.0
            .iter()
            .map(|&s| Complex64::new(s as f64, 0.0))
            .collect()
    }

    /// Vertex at Gray code `code`: bit `i` set means entry `i` is `-1`.
    pub fn from_code(n: usize, code: u64) -> SpinVector {
        SpinVector(
            (0..n)
                .map(|i| if code >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct Planes {
    re: Vec<i64>,
    im: Vec<i64>,
}

/// A vertex of the complex hypercube; every entry is one of `1+j`, `1-j`,
/// `-1+j`, `-1-j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Planes", into = "Planes")]
pub struct QSpinVector(Vec<QSpin>);

impl TryFrom<Planes> for QSpinVector {
    type Error = Error;
    fn try_from(p: Planes) -> Result<Self> {
        if p.re.len() != p.im.len() {
            return Err(Error::DimensionMismatch {
                expected: p.re.len(),
                got: p.im.len(),
            });
        }
        if p.re.is_empty() {
            return Err(Error::EmptyDimension);
        }
        p.re.into_iter()
            .zip(p.im)
            .map(|(re, im)| {
                Ok(QSpin {
                    re: check_spin(re)?,
                    im: check_spin(im)?,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(QSpinVector)
    }
}

impl From<QSpinVector> for Planes {
    fn from(v: QSpinVector) -> Self {
        Planes {
            re: v.0.iter().map(|q| q.re as i64).collect(),
            im: v.0.iter().map(|q| q.im as i64).collect(),
        }
    }
}

impl QSpinVector {
    pub fn new(entries: Vec<QSpin>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        for q in &entries {
            check_spin(q.re as i64)?;
            check_spin(q.im as i64)?;
        }
        Ok(QSpinVector(entries))
    }

    /// Builds a vertex from `(re, im)` sign pairs.
    pub fn from_pairs(pairs: &[(i8, i8)]) -> Result<Self> {
        QSpinVector::new(pairs.iter().map(|&(re, im)| QSpin { re, im }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[QSpin] {
        &self.0
    }

    pub fn get(&self, i: usize) -> QSpin {
        self.0[i]
    }

    pub(crate) fn set(&mut self, i: usize, q: QSpin) {
        self.0[i] = q;
    }

    pub fn negated(&self) -> QSpinVector {
        QSpinVector(self.0.iter().map(|&q| -q).collect())
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.0.iter().map(|q| q.to_complex()).collect()
    }

    /// Vertex at Gray code `code` over `2n` bits.
    pub fn from_code(n: usize, code: u64) -> QSpinVector {
        QSpinVector(
            (0..n)
                .map(|i| QSpin {
                    re: if code >> (2 * i) & 1 == 1 { -1 } else { 1 },
                    im: if code >> (2 * i + 1) & 1 == 1 { -1 } else { 1 },
                })
                .collect(),
        )
    }
}

/// A point on either hypercube.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum State {
    Real(SpinVector),
    Complex(QSpinVector),
}

impl From<SpinVector> for State {
    fn from(v: SpinVector) -> Self {
        State::Real(v)
    }
}

impl From<QSpinVector> for State {
    fn from(v: QSpinVector) -> Self {
        State::Complex(v)
    }
}

impl State {
    pub fn flavor(&self) -> Flavor {
        match self {
            State::Real(_) => Flavor::Real,
            State::Complex(_) => Flavor::Complex,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            State::Real(v) => v.len(),
            State::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> Complex64 {
        match self {
            State::Real(v) => Complex64::new(v.get(i) as f64, 0.0),
            State::Complex(v) => v.get(i).to_complex(),
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            State::Real(v) => v.to_complex(),
            State::Complex(v) => v.to_complex(),
        }
    }

    pub fn negated(&self) -> State {
        match self {
            State::Real(v) => State::Real(v.negated()),
            State::Complex(v) => State::Complex(v.negated()),
        }
    }

    /// Writes the signum of `h` into coordinate `i`, negated when `negate`.
    /// Returns whether the coordinate changed.
    pub(crate) fn assign_sign(&mut self, i: usize, h: Complex64, negate: bool) -> bool {
        match self {
            State::Real(v) => {
                let s = if negate {
                    -sign_of(h.re)
                } else {
                    sign_of(h.re)
                };
                let changed = v.get(i) != s;
                v.set(i, s);
                changed
            }
            State::Complex(v) => {
                let q = if negate { -QSpin::of(h) } else { QSpin::of(h) };
                let changed = v.get(i) != q;
                v.set(i, q);
                changed
            }
        }
    }

    pub fn from_code(flavor: Flavor, n: usize, code: u64) -> State {
        match flavor {
            Flavor::Real => State::Real(SpinVector::from_code(n, code)),
            Flavor::Complex => State::Complex(QSpinVector::from_code(n, code)),
        }
    }

    pub fn check(&self, flavor: Flavor, n: usize) -> Result<()> {
        if self.flavor() != flavor {
            return Err(Error::FlavorMismatch {
                expected: flavor,
                got: self.flavor(),
            });
        }
        if self.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        match self {
            State::Real(v) => {
                for (i, s) in v.entries().iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{s}")?;
                }
            }
            State::Complex(v) => {
                for (i, q) in v.entries().iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{q}")?;
                }
            }
        }
        f.write_str(")")
    }
}

#[inline]
pub fn gray(k: u64) -> u64 {
    k ^ (k >> 1)
}

/// Number of code bits for `n` coordinates of the given flavor, checked
/// against the enumeration cap.
pub(crate) fn code_bits(flavor: Flavor, n: usize) -> Result<u32> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if n > flavor.cap() {
        return Err(Error::AboveCap {
            n,
            cap: flavor.cap(),
        });
    }
    Ok((n * flavor.bits_per_entry()) as u32)
}

/// Restartable stream over all vertices of one hypercube in Gray code order.
#[derive(Clone, Debug)]
pub struct Vertices {
    flavor: Flavor,
    n: usize,
    next: u64,
    end: u64,
}

impl Vertices {
    pub fn new(flavor: Flavor, n: usize) -> Result<Self> {
        let bits = code_bits(flavor, n)?;
        Ok(Vertices {
            flavor,
            n,
            next: 0,
            end: 1u64 << bits,
        })
    }

    /// Total number of vertices, `2^n` or `4^n`.
    pub fn count(&self) -> u64 {
        self.end
    }

    /// Restricts the stream to enumeration positions `start..end`, for range
    /// partitioned sweeps.
    pub fn range(mut self, start: u64, end: u64) -> Self {
        let end = end.min(self.end);
        self.next = start.min(end);
        self.end = end;
        self
    }
}

impl Iterator for Vertices {
    type Item = State;

    fn next(&mut self) -> Option<State> {
        if self.next >= self.end {
            return None;
        }
        let v = State::from_code(self.flavor, self.n, gray(self.next));
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Vertices {}

/// All `2^n` real vertices, `1 <= n <= 24`.
pub fn vertices_real(n: usize) -> Result<impl ExactSizeIterator<Item = SpinVector>> {
    Ok(Vertices::new(Flavor::Real, n)?.map(|s| match s {
        State::Real(v) => v,
        State::Complex(_) => unreachable!(),
    }))
}

/// All `4^n` complex vertices, `1 <= n <= 12`.
pub fn vertices_complex(n: usize) -> Result<impl ExactSizeIterator<Item = QSpinVector>> {
    Ok(Vertices::new(Flavor::Complex, n)?.map(|s| match s {
        State::Complex(v) => v,
        State::Real(_) => unreachable!(),
    }))
}

fn spin<R: Rng>(rng: &mut R) -> i8 {
    if rng.gen::<bool>() {
        1
    } else {
        -1
    }
}

/// Uniformly random vertex, deterministic in `(n, seed, flavor)`.
pub fn random_vertex(n: usize, seed: u64, flavor: Flavor) -> Result<State> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_vertex_with(n, flavor, &mut rng)
}

pub fn random_vertex_with<R: Rng>(n: usize, flavor: Flavor, rng: &mut R) -> Result<State> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    Ok(match flavor {
        Flavor::Real => State::Real(SpinVector((0..n).map(|_| spin(rng)).collect())),
        Flavor::Complex => State::Complex(QSpinVector(
            (0..n)
                .map(|_| QSpin {
                    re: spin(rng),
                    im: spin(rng),
                })
                .collect(),
        )),
    })
}
