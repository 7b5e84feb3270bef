//! Cross-module invariants over seeded random instances.

use hqf::augment::{augment, check_preservation, embed_state};
use hqf::dynamics::{energy, pre_activation, run_serial, serial_step, Mode, Order, Outcome};
use hqf::forms::{decompose, eval_form, eval_form_raw, hollow_reduce};
use hqf::hypercube::random_vertex_with;
use hqf::instances::{
    random_hermitian, random_network, random_square, random_symmetric, rng, Diagonal, Entries,
};
use hqf::oracle::{census, is_corner_positive};
use hqf::stability::{is_anti_stable, is_stable};
use hqf::synthesis::{hadamard_rows, synthesize, PatternSet};
use hqf::toeplitz::{eval_toeplitz, toeplitz_dense, ToeplitzSpec};
use hqf::{Flavor, Network, SquareMatrix, State};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn flavor() -> impl Strategy<Value = Flavor> {
    prop_oneof![Just(Flavor::Real), Just(Flavor::Complex)]
}

fn conforming(seed: u64, flavor: Flavor, n: usize) -> SquareMatrix {
    let mut r = rng(seed);
    match flavor {
        Flavor::Real => random_symmetric(&mut r, n, Entries::Uniform, Diagonal::Free),
        Flavor::Complex => random_hermitian(&mut r, n, Entries::Uniform, Diagonal::Free),
    }
}

fn vertex(seed: u64, flavor: Flavor, n: usize) -> State {
    random_vertex_with(n, flavor, &mut rng(seed ^ 0x9e37_79b9)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_reconstructs(seed: u64, n in 1usize..7) {
        let a = random_square(&mut rng(seed), n, Entries::Uniform);
        let (sym, skew) = decompose(&a);
        let back = &sym + &skew;
        for i in 0..n {
            for j in 0..n {
                prop_assert!((back.get(i, j) - a.get(i, j)).norm() <= 1e-15);
            }
        }
        prop_assert!(sym.is_symmetric());
    }

    #[test]
    fn skew_part_vanishes_on_the_hypercube(seed: u64, n in 1usize..7) {
        let a = random_square(&mut rng(seed), n, Entries::Uniform);
        let (sym, skew) = decompose(&a);
        let x = vertex(seed, Flavor::Real, n).to_complex();
        prop_assert!(eval_form_raw(&skew, &x).unwrap().norm() <= 1e-12);
        let full = eval_form_raw(&a, &x).unwrap().re;
        let part = eval_form_raw(&sym, &x).unwrap().re;
        prop_assert!((full - part).abs() <= 1e-12);
    }

    #[test]
    fn hollow_reduction_identity(seed: u64, n in 1usize..9, fl in flavor()) {
        let a = conforming(seed, fl, n);
        let red = hollow_reduce(&a, fl).unwrap();
        prop_assert!(red.c.is_hollow());
        let x = vertex(seed, fl, n).to_complex();
        let full = eval_form_raw(&a, &x).unwrap();
        let hollow = eval_form_raw(&red.c, &x).unwrap().re + red.offset();
        prop_assert!((full.re - hollow).abs() <= 1e-9);
        prop_assert!(full.im.abs() <= 1e-12);
        prop_assert_eq!(eval_form(&a, &x).unwrap().im, 0.0);
    }

    #[test]
    fn form_is_invariant_under_negation_and_rotation(seed: u64, n in 1usize..7) {
        let a = conforming(seed, Flavor::Complex, n);
        let x = vertex(seed, Flavor::Complex, n).to_complex();
        let base = eval_form_raw(&a, &x).unwrap();
        let neg: Vec<Complex64> = x.iter().map(|z| -z).collect();
        let rot: Vec<Complex64> = x.iter().map(|z| z * Complex64::i()).collect();
        prop_assert_eq!(eval_form_raw(&a, &neg).unwrap(), base);
        prop_assert!((eval_form_raw(&a, &rot).unwrap() - base).norm() <= 1e-12);
    }

    #[test]
    fn stability_is_negation_symmetric_without_thresholds(seed: u64, n in 1usize..8, fl in flavor()) {
        let net = random_network(&mut rng(seed), fl, n, Entries::Uniform, Diagonal::Nonnegative, false);
        let v = vertex(seed, fl, n);
        prop_assert_eq!(is_stable(&net, &v).unwrap(), is_stable(&net, &v.negated()).unwrap());
        prop_assert_eq!(is_anti_stable(&net, &v).unwrap(), is_anti_stable(&net, &v.negated()).unwrap());
    }

    #[test]
    fn modes_are_dual_under_weight_negation(seed: u64, n in 1usize..8, fl in flavor(), i in 0usize..8) {
        let net = random_network(&mut rng(seed), fl, n, Entries::Uniform, Diagonal::Zero, true);
        let neg = net.negated().unwrap();
        let v = vertex(seed, fl, n);
        let i = i % n;
        prop_assert_eq!(
            serial_step(&net, &v, i, Mode::Anti).unwrap(),
            serial_step(&neg, &v, i, Mode::Stable).unwrap()
        );
        prop_assert_eq!(is_anti_stable(&net, &v).unwrap(), is_stable(&neg, &v).unwrap());
    }

    #[test]
    fn serial_energy_is_monotone(seed: u64, n in 1usize..16, fl in flavor()) {
        let net = random_network(&mut rng(seed), fl, n, Entries::Uniform, Diagonal::Nonnegative, true);
        let v0 = vertex(seed, fl, n);
        for mode in [Mode::Anti, Mode::Stable] {
            let run = run_serial(&net, &v0, mode, Order::Random { seed }, 4 * n).unwrap();
            prop_assert_eq!(run.outcome, Outcome::FixedPoint);
            let mut prev = energy(&net, &v0).unwrap();
            for step in &run.steps {
                let e = energy(&net, &step.state).unwrap();
                match mode {
                    Mode::Anti => prop_assert!(e - prev <= 1e-12),
                    Mode::Stable => prop_assert!(e - prev >= -1e-12),
                }
                prev = e;
            }
        }
    }

    #[test]
    fn augmentation_is_sound(seed: u64, n in 1usize..6, fl in flavor()) {
        let n = if fl == Flavor::Complex { n.min(4) } else { n };
        let net = random_network(&mut rng(seed), fl, n, Entries::Dyadic, Diagonal::Nonnegative, true);
        let aug = augment(&net).unwrap();
        prop_assert!(aug.network.has_zero_thresholds());
        prop_assert_eq!(aug.network.clamped(), Some(n));
        let check = check_preservation(&net, &aug).unwrap();
        prop_assert!(check.clamp_sound);
        prop_assert!(check.ok);
    }

    #[test]
    fn augmentation_preserves_pre_activations(seed: u64, n in 1usize..10, fl in flavor()) {
        let net = random_network(&mut rng(seed), fl, n, Entries::Uniform, Diagonal::Nonnegative, true);
        let aug = augment(&net).unwrap();
        let v = vertex(seed, fl, n);
        let e = embed_state(&v);
        for i in 0..n {
            let a = pre_activation(&net, &v, i).unwrap();
            let b = pre_activation(&aug.network, &e, i).unwrap();
            prop_assert!((a - b).norm() <= 1e-12);
        }
    }

    #[test]
    fn toeplitz_matches_dense(seed: u64, n in 1usize..40, fl in flavor()) {
        let mut r = rng(seed);
        let spec = match fl {
            Flavor::Real => ToeplitzSpec::real(&(0..n).map(|_| r.gen_range(-1.0..=1.0)).collect::<Vec<_>>()),
            Flavor::Complex => {
                let mut row: Vec<Complex64> =
                    (0..n).map(|_| Complex64::new(r.gen_range(-1.0..=1.0), r.gen_range(-1.0..=1.0))).collect();
                row[0].im = 0.0;
                ToeplitzSpec::hermitian(&row)
            }
        }.unwrap();
        let v = vertex(seed, fl, n);
        let dense = eval_form_raw(&toeplitz_dense(&spec), &v.to_complex()).unwrap().re;
        prop_assert!((eval_toeplitz(&spec, &v).unwrap() - dense).abs() <= 1e-9);
    }

    #[test]
    fn stored_patterns_are_closed_under_negation(log in 2u32..4, s in 1usize..8, kind_anti: bool) {
        let n = 1usize << log;
        let s = 1 + (s - 1) % (n - 1);
        let kind = if kind_anti { Mode::Anti } else { Mode::Stable };
        let ps = PatternSet::real(hadamard_rows(n).unwrap()[..s].to_vec()).unwrap();
        let w = synthesize(&ps, kind).unwrap();
        let net = Network::zero_threshold(Flavor::Real, w).unwrap();
        for p in ps.patterns() {
            for q in [p.clone(), p.negated()] {
                let stored = match kind {
                    Mode::Stable => is_stable(&net, &q).unwrap(),
                    Mode::Anti => is_anti_stable(&net, &q).unwrap(),
                };
                prop_assert!(stored);
            }
        }
    }

    #[test]
    fn synthesized_gram_matrix_is_corner_positive(log in 2u32..4, s in 1usize..8) {
        let n = 1usize << log;
        let s = 1 + (s - 1) % (n - 1);
        let ps = PatternSet::real(hadamard_rows(n).unwrap()[..s].to_vec()).unwrap();
        let w = synthesize(&ps, Mode::Stable).unwrap();
        let gram = &w + &SquareMatrix::identity(n).scale(s as f64);
        prop_assert!(is_corner_positive(&gram).unwrap().corner_positive);
    }

    #[test]
    fn serial_fixed_points_appear_in_the_census(seed: u64, n in 1usize..9, fl in flavor()) {
        let n = if fl == Flavor::Complex { n.min(5) } else { n };
        let net = random_network(&mut rng(seed), fl, n, Entries::Uniform, Diagonal::Zero, true);
        let c = census(&net).unwrap();
        let v0 = vertex(seed, fl, n);
        for (mode, list) in [(Mode::Anti, &c.anti_stable), (Mode::Stable, &c.stable)] {
            let run = run_serial(&net, &v0, mode, Order::Cyclic, 4 * n).unwrap();
            prop_assert_eq!(run.outcome, Outcome::FixedPoint);
            prop_assert!(list.contains(run.final_state()));
        }
    }
}
