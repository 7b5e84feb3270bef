//! Exhaustive ground truth on small hypercubes.
//!
//! Enumeration walks the Gray code in blocks of at most 4096 vertices. Within
//! a block the form value is updated incrementally: flipping coordinate `i`
//! by `δ` changes `x† C x` by `2 Re(conj(δ) (Cx)_i)` for the hollow Hermitian
//! part `C`. Each block restarts from a direct evaluation, so rounding drift
//! stays far below the candidate window. Vertices whose incremental value is
//! within the window of the block's best are re-evaluated directly with
//! [`eval_form_raw`], and only exact matches of the best direct value are
//! reported. Blocks run in parallel and merge in enumeration order, so output
//! does not depend on the worker count.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{decompose, eval_form_raw, hollow_reduce};
use crate::hypercube::{code_bits, gray, Flavor, SpinVector, State};
use crate::matrix::SquareMatrix;
use crate::network::Network;
use crate::stability::{is_anti_stable, is_stable, minimality_slack, SlackReport};

const BLOCK_BITS: u32 = 12;
/// Candidate window relative to the largest possible form magnitude.
const WINDOW: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremaReport {
    pub flavor: Flavor,
    pub n: usize,
    pub min_value: f64,
    pub argmins: Vec<State>,
    pub max_value: f64,
    pub argmaxes: Vec<State>,
    pub vertex_count: u64,
}

struct Scan {
    flavor: Flavor,
    n: usize,
    bits: u32,
    c: SquareMatrix,
    offset: f64,
    window: f64,
}

struct Extreme {
    value: f64,
    codes: Vec<u64>,
}

struct BlockResult {
    min: Extreme,
    max: Extreme,
}

/// Running candidate list for one direction of one block.
struct Candidates {
    best: f64,
    items: Vec<(f64, u64)>,
}

impl Candidates {
    fn new() -> Self {
        Candidates {
            best: f64::INFINITY,
            items: Vec::new(),
        }
    }

    /// `v` is oriented so that smaller is better.
    fn offer(&mut self, v: f64, code: u64, window: f64) {
        if v < self.best {
            self.best = v;
            self.items.retain(|&(w, _)| w <= v + window);
        }
        if v <= self.best + window {
            self.items.push((v, code));
        }
    }
}

impl Scan {
    fn new(a: &SquareMatrix, flavor: Flavor) -> Result<Self> {
        if flavor == Flavor::Real && !a.is_real() {
            return Err(Error::MatrixShape("real"));
        }
        let bits = code_bits(flavor, a.n())?;
        let red = hollow_reduce(&decompose(a).0, flavor)?;
        let weight = match flavor {
            Flavor::Real => 1.0,
            Flavor::Complex => 2.0,
        };
        let scale: f64 = (0..a.n())
            .flat_map(|i| (0..a.n()).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).norm())
            .sum::<f64>()
            * weight;
        Ok(Scan {
            flavor,
            n: a.n(),
            bits,
            offset: red.offset(),
            c: red.c,
            window: WINDOW * (1.0 + scale),
        })
    }

    fn total(&self) -> u64 {
        1u64 << self.bits
    }

    fn block_len(&self) -> u64 {
        1u64 << self.bits.min(BLOCK_BITS)
    }

    fn vertex(&self, code: u64) -> Vec<Complex64> {
        State::from_code(self.flavor, self.n, code).to_complex()
    }

    fn direct(&self, x: &[Complex64]) -> f64 {
        let cx = self.c.mul_vec(x).expect("dimension");
        self.offset
            + x.iter()
                .zip(&cx)
                .map(|(a, b)| (a.conj() * b).re)
                .sum::<f64>()
    }

    fn scan_block(&self, a: &SquareMatrix, start: u64) -> BlockResult {
        let mut code = gray(start);
        let mut x = self.vertex(code);
        let mut cx = self.c.mul_vec(&x).expect("dimension");
        let mut value = self.direct(&x);
        let mut lo = Candidates::new();
        let mut hi = Candidates::new();
        let end = start + self.block_len();
        for t in start..end {
            if t > start {
                let bit = t.trailing_zeros();
                code ^= 1 << bit;
                let (i, delta) = match self.flavor {
                    Flavor::Real => (bit as usize, Complex64::new(-2.0 * x[bit as usize].re, 0.0)),
                    Flavor::Complex => {
                        let i = (bit / 2) as usize;
                        if bit % 2 == 0 {
                            (i, Complex64::new(-2.0 * x[i].re, 0.0))
                        } else {
                            (i, Complex64::new(0.0, -2.0 * x[i].im))
                        }
                    }
                };
                value += 2.0 * (delta.conj() * cx[i]).re;
                x[i] += delta;
                for (k, y) in cx.iter_mut().enumerate() {
                    *y += self.c.get(k, i) * delta;
                }
            }
            lo.offer(value, code, self.window);
            hi.offer(-value, code, self.window);
        }
        BlockResult {
            min: self.settle(a, lo, false),
            max: self.settle(a, hi, true),
        }
    }

    /// Re-evaluates candidates directly and keeps the exact best ones.
    fn settle(&self, a: &SquareMatrix, cands: Candidates, maximize: bool) -> Extreme {
        let exact: Vec<(f64, u64)> = cands
            .items
            .into_iter()
            .map(|(_, code)| {
                (
                    eval_form_raw(a, &self.vertex(code)).expect("dimension").re,
                    code,
                )
            })
            .collect();
        let pick = |v: f64| if maximize { -v } else { v };
        let best = exact
            .iter()
            .map(|&(v, _)| pick(v))
            .fold(f64::INFINITY, f64::min);
        Extreme {
            value: pick(best),
            codes: exact
                .into_iter()
                .filter(|&(v, _)| pick(v) == best)
                .map(|(_, c)| c)
                .collect(),
        }
    }

    fn run(&self, a: &SquareMatrix) -> ExtremaReport {
        let step = self.block_len();
        let blocks: Vec<BlockResult> = (0..self.total() / step)
            .into_par_iter()
            .map(|b| self.scan_block(a, b * step))
            .collect();
        let merge = |get: fn(&BlockResult) -> &Extreme, maximize: bool| {
            let best = blocks.iter().map(|b| get(b).value).fold(
                if maximize {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                },
                |acc, v| {
                    if maximize {
                        acc.max(v)
                    } else {
                        acc.min(v)
                    }
                },
            );
            let states = blocks
                .iter()
                .filter(|b| get(b).value == best)
                .flat_map(|b| get(b).codes.iter())
                .map(|&code| State::from_code(self.flavor, self.n, code))
                .collect::<Vec<_>>();
            (best, states)
        };
        let (min_value, argmins) = merge(|b| &b.min, false);
        let (max_value, argmaxes) = merge(|b| &b.max, true);
        ExtremaReport {
            flavor: self.flavor,
            n: self.n,
            min_value,
            argmins,
            max_value,
            argmaxes,
            vertex_count: self.total(),
        }
    }
}

/// Exact global extrema of `Re(x† A x)` over the whole hypercube, with every
/// attaining vertex in enumeration order. For the real flavor `A` must be
/// real; for the complex flavor the real part is the Hermitian part's form.
pub fn brute_force_extrema(a: &SquareMatrix, flavor: Flavor) -> Result<ExtremaReport> {
    Ok(Scan::new(a, flavor)?.run(a))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: State,
    pub report: SlackReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub flavor: Flavor,
    pub n: usize,
    pub min_value: f64,
    pub minimizers_checked: usize,
    pub violations: Vec<Violation>,
    pub holds: bool,
}

/// Checks that every global minimizer `u` of the form satisfies
/// `u_i (Cu)_i <= 0` (componentwise for complex) for the hollow reduction `C`.
pub fn verify_theorem(e: &SquareMatrix, flavor: Flavor) -> Result<TheoremVerdict> {
    if flavor == Flavor::Complex && !e.is_hermitian() {
        return Err(Error::MatrixShape("Hermitian"));
    }
    let c = hollow_reduce(e, flavor)?.c;
    let extrema = brute_force_extrema(e, flavor)?;
    let mut violations = Vec::new();
    for u in &extrema.argmins {
        let report = minimality_slack(&c, u)?;
        if !report.all_satisfied {
            violations.push(Violation {
                vertex: u.clone(),
                report,
            });
        }
    }
    Ok(TheoremVerdict {
        flavor,
        n: extrema.n,
        min_value: extrema.min_value,
        minimizers_checked: extrema.argmins.len(),
        holds: violations.is_empty(),
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CornerReport {
    pub corner_positive: bool,
    pub min_value: f64,
    /// A most negative vertex with first entry `+1`, when one exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SpinVector>,
}

/// Whether `x^T B x >= 0` at every real vertex.
pub fn is_corner_positive(b: &SquareMatrix) -> Result<CornerReport> {
    let ext = brute_force_extrema(b, Flavor::Real)?;
    let corner_positive = ext.min_value >= 0.0;
    let witness = if corner_positive {
        None
    } else {
        ext.argmins.into_iter().find_map(|s| match s {
            State::Real(v) if v.get(0) == 1 => Some(v),
            _ => None,
        })
    };
    Ok(CornerReport {
        corner_positive,
        min_value: ext.min_value,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub flavor: Flavor,
    pub n: usize,
    pub vertex_count: u64,
    pub stable: Vec<State>,
    pub anti_stable: Vec<State>,
}

/// Classifies every vertex with [`is_stable`] and [`is_anti_stable`].
pub fn census(net: &Network) -> Result<Census> {
    let flavor = net.flavor();
    let n = net.n();
    let bits = code_bits(flavor, n)?;
    let total = 1u64 << bits;
    let step = 1u64 << bits.min(BLOCK_BITS);
    let parts: Vec<(Vec<State>, Vec<State>)> = (0..total / step)
        .into_par_iter()
        .map(|b| {
            let mut stable = Vec::new();
            let mut anti = Vec::new();
            for k in b * step..(b + 1) * step {
                let v = State::from_code(flavor, n, gray(k));
                if is_stable(net, &v).expect("checked dimensions") {
                    stable.push(v.clone());
                }
                if is_anti_stable(net, &v).expect("checked dimensions") {
                    anti.push(v);
                }
            }
            (stable, anti)
        })
        .collect();
    let (stable, anti_stable) =
        parts
            .into_iter()
            .fold((Vec::new(), Vec::new()), |(mut s, mut a), (ps, pa)| {
                s.extend(ps);
                a.extend(pa);
                (s, a)
            });
    Ok(Census {
        flavor,
        n,
        vertex_count: total,
        stable,
        anti_stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::eval_form_state;
    use crate::hypercube::{QSpinVector, Vertices};
    use crate::instances::{self, Diagonal, Entries};
    use std::collections::HashSet;

    fn swap() -> SquareMatrix {
        SquareMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    fn real(v: &[i8]) -> State {
        State::Real(SpinVector::new(v.to_vec()).unwrap())
    }

    /// Direct evaluation at every vertex, independent of the Gray-code scan.
    fn naive(a: &SquareMatrix, flavor: Flavor) -> (f64, HashSet<State>, f64, HashSet<State>) {
        let vals: Vec<(f64, State)> = Vertices::new(flavor, a.n())
            .unwrap()
            .map(|v| (eval_form_state(a, &v).unwrap().re, v))
            .collect();
        let lo = vals.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let hi = vals.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let at = |t: f64| {
            vals.iter()
                .filter(|p| p.0 == t)
                .map(|p| p.1.clone())
                .collect()
        };
        (lo, at(lo), hi, at(hi))
    }

    #[test]
    fn extrema_real_swap() {
        let r = brute_force_extrema(&swap(), Flavor::Real).unwrap();
        assert_eq!(r.min_value, -2.0);
        assert_eq!(r.max_value, 2.0);
        assert_eq!(
            r.argmins.iter().cloned().collect::<HashSet<_>>(),
            [real(&[1, -1]), real(&[-1, 1])].into_iter().collect()
        );
        assert_eq!(
            r.argmaxes.iter().cloned().collect::<HashSet<_>>(),
            [real(&[1, 1]), real(&[-1, -1])].into_iter().collect()
        );
        assert_eq!(r.vertex_count, 4);
    }

    #[test]
    fn extrema_complex_swap() {
        let r = brute_force_extrema(&swap(), Flavor::Complex).unwrap();
        assert_eq!(r.min_value, -4.0);
        assert_eq!(r.max_value, 4.0);
        assert_eq!(r.argmins.len(), 4);
        assert_eq!(r.argmaxes.len(), 4);
        for s in &r.argmins {
            let x = s.to_complex();
            assert_eq!(x[1], -x[0]);
        }
        for s in &r.argmaxes {
            let x = s.to_complex();
            assert_eq!(x[1], x[0]);
        }
    }

    #[test]
    fn extrema_zero_matrix() {
        let r = brute_force_extrema(&SquareMatrix::zeros(3), Flavor::Real).unwrap();
        assert_eq!((r.min_value, r.max_value), (0.0, 0.0));
        assert_eq!(r.argmins.len(), 8);
        assert_eq!(r.argmaxes.len(), 8);
    }

    #[test]
    fn extrema_match_naive_enumeration() {
        let mut rng = instances::rng(11);
        for n in 1..=9 {
            let a = instances::random_square(&mut rng, n, Entries::Uniform);
            let (lo, argmin, hi, argmax) = naive(&a, Flavor::Real);
            let r = brute_force_extrema(&a, Flavor::Real).unwrap();
            assert_eq!(r.min_value, lo);
            assert_eq!(r.max_value, hi);
            assert_eq!(r.argmins.iter().cloned().collect::<HashSet<_>>(), argmin);
            assert_eq!(r.argmaxes.iter().cloned().collect::<HashSet<_>>(), argmax);
            assert_eq!(r.argmins.len(), argmin.len());
        }
        for n in 1..=5 {
            let a = instances::random_hermitian(&mut rng, n, Entries::Dyadic, Diagonal::Free);
            let (lo, argmin, hi, argmax) = naive(&a, Flavor::Complex);
            let r = brute_force_extrema(&a, Flavor::Complex).unwrap();
            assert_eq!(r.min_value, lo);
            assert_eq!(r.max_value, hi);
            assert_eq!(r.argmins.iter().cloned().collect::<HashSet<_>>(), argmin);
            assert_eq!(r.argmaxes.iter().cloned().collect::<HashSet<_>>(), argmax);
        }
    }

    #[test]
    fn incremental_scan_spans_many_blocks() {
        // 2^14 vertices: four blocks, checked against naive evaluation
        let mut rng = instances::rng(3);
        let a = instances::random_symmetric(&mut rng, 14, Entries::Uniform, Diagonal::Free);
        let (lo, argmin, hi, _) = naive(&a, Flavor::Real);
        let r = brute_force_extrema(&a, Flavor::Real).unwrap();
        assert_eq!(r.min_value, lo);
        assert_eq!(r.max_value, hi);
        assert_eq!(r.argmins.iter().cloned().collect::<HashSet<_>>(), argmin);
        assert_eq!(r.argmins.len(), 2);
    }

    #[test]
    fn extrema_caps() {
        assert!(matches!(
            brute_force_extrema(&SquareMatrix::zeros(13), Flavor::Complex),
            Err(Error::AboveCap { n: 13, cap: 12 })
        ));
        let h = SquareMatrix::from_rows(&[vec![Complex64::new(0.0, 1.0)]]).unwrap();
        assert!(brute_force_extrema(&h, Flavor::Real).is_err());
    }

    #[test]
    fn verify_examples() {
        let v = verify_theorem(&swap(), Flavor::Real).unwrap();
        assert!(v.holds);
        assert_eq!(v.minimizers_checked, 2);

        let d = SquareMatrix::from_real_rows(&[vec![5.0, 0.0], vec![0.0, 7.0]]).unwrap();
        let v = verify_theorem(&d, Flavor::Real).unwrap();
        assert!(v.holds);
        assert_eq!(v.minimizers_checked, 4);
        assert_eq!(v.min_value, 12.0);

        let nonherm = SquareMatrix::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(verify_theorem(&nonherm, Flavor::Complex).is_err());
    }

    #[test]
    fn corner_examples() {
        let r = is_corner_positive(&SquareMatrix::identity(3)).unwrap();
        assert!(r.corner_positive);
        assert_eq!(r.witness, None);

        let r = is_corner_positive(&swap()).unwrap();
        assert!(!r.corner_positive);
        assert_eq!(r.witness, Some(SpinVector::new(vec![1, -1]).unwrap()));

        let b = SquareMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = is_corner_positive(&b).unwrap();
        assert!(!r.corner_positive);
        assert_eq!(r.witness, Some(SpinVector::new(vec![1, -1]).unwrap()));
        assert_eq!(r.min_value, -1.0);
    }

    #[test]
    fn census_examples() {
        let net = Network::zero_threshold(Flavor::Real, swap()).unwrap();
        let c = census(&net).unwrap();
        assert_eq!(
            c.stable.iter().cloned().collect::<HashSet<_>>(),
            [real(&[1, 1]), real(&[-1, -1])].into_iter().collect()
        );
        assert_eq!(
            c.anti_stable.iter().cloned().collect::<HashSet<_>>(),
            [real(&[1, -1]), real(&[-1, 1])].into_iter().collect()
        );

        let net = Network::zero_threshold(Flavor::Real, SquareMatrix::zeros(2)).unwrap();
        let c = census(&net).unwrap();
        assert_eq!(c.stable, vec![real(&[1, 1])]);
        assert_eq!(c.anti_stable, vec![real(&[-1, -1])]);

        let net = Network::zero_threshold(Flavor::Complex, SquareMatrix::zeros(1)).unwrap();
        let c = census(&net).unwrap();
        assert_eq!(
            c.stable,
            vec![State::Complex(QSpinVector::from_pairs(&[(1, 1)]).unwrap())]
        );
    }

    #[test]
    fn output_is_independent_of_thread_count() {
        let mut rng = instances::rng(8);
        let a = instances::random_symmetric(&mut rng, 15, Entries::Dyadic, Diagonal::Free);
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| brute_force_extrema(&a, Flavor::Real).unwrap());
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| brute_force_extrema(&a, Flavor::Real).unwrap());
        assert_eq!(one, many);
    }
}
