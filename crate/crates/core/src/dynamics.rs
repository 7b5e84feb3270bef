//! Serial and fully parallel signum dynamics.
//!
//! Pre-activations are computed from the hollow reduction `C` of `W`:
//! `H_i = Σ_j C_ij v_j - T_i`. On the hypercube the diagonal of `W` only adds
//! a constant to the form, and with it removed `H_i` no longer depends on
//! `v_i`, so every serial update moves the energy
//!
//! - real: `G(v) = v^T C v - 2 T^T v`
//! - complex: `G(v) = Re(v† C v) - 2 Re(T† v)`
//!
//! monotonically: up in [`Mode::Stable`], down in [`Mode::Anti`].

use std::fmt;
use std::io::{self, Write};

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercube::State;
use crate::network::Network;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `v_i <- Sgn(H_i)`; seeks stable states.
    Stable,
    /// `v_i <- -Sgn(H_i)`; seeks anti-stable states.
    Anti,
}

impl Mode {
    fn negates(self) -> bool {
        self == Mode::Anti
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Order {
    Cyclic,
    /// A fresh seeded permutation of the nodes every sweep.
    Random {
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    FixedPoint,
    TwoCycle,
    BudgetExhausted,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::FixedPoint => "fixed_point",
            Outcome::TwoCycle => "two_cycle",
            Outcome::BudgetExhausted => "budget_exhausted",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Node {
    Index(usize),
    All(AllNodes),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AllNodes {
    All,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub step: usize,
    pub node: Node,
    pub state: State,
    pub energy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Order>,
    pub initial: State,
    pub initial_energy: f64,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
    /// Total number of coordinate changes.
    pub flips: usize,
    /// Completed sweeps (serial) or steps (parallel).
    pub iterations: usize,
}

impl Trajectory {
    pub fn final_state(&self) -> &State {
        self.steps.last().map_or(&self.initial, |s| &s.state)
    }

    pub fn final_energy(&self) -> f64 {
        self.steps.last().map_or(self.initial_energy, |s| s.energy)
    }

    /// Successive energy differences, one per recorded step.
    pub fn energy_deltas(&self) -> Vec<f64> {
        let mut prev = self.initial_energy;
        self.steps
            .iter()
            .map(|s| {
                let d = s.energy - prev;
                prev = s.energy;
                d
            })
            .collect()
    }

    /// One JSON record per step.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for s in &self.steps {
            serde_json::to_writer(&mut out, s)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn check_index(net: &Network, i: usize) -> Result<()> {
    if i >= net.n() {
        return Err(Error::IndexOutOfRange {
            index: i,
            n: net.n(),
        });
    }
    Ok(())
}

/// `H_i = Σ_j C_ij v_j - T_i` with `C` the hollow reduction of `W`.
pub fn pre_activation(net: &Network, v: &State, i: usize) -> Result<Complex64> {
    net.check_state(v)?;
    check_index(net, i)?;
    Ok(net.field(net.hollow(), v, i))
}

/// Updates node `i` only.
pub fn serial_step(net: &Network, v: &State, i: usize, mode: Mode) -> Result<State> {
    let h = pre_activation(net, v, i)?;
    let mut next = v.clone();
    next.assign_sign(i, h, mode.negates());
    Ok(next)
}

/// Updates every unclamped node from the same pre-activations.
pub fn parallel_step(net: &Network, v: &State, mode: Mode) -> Result<State> {
    net.check_state(v)?;
    Ok(parallel_update(net, v, mode).0)
}

fn parallel_update(net: &Network, v: &State, mode: Mode) -> (State, usize) {
    let mut next = v.clone();
    let mut changed = 0;
    for i in 0..net.n() {
        if net.clamped() == Some(i) {
            continue;
        }
        let h = net.field(net.hollow(), v, i);
        changed += next.assign_sign(i, h, mode.negates()) as usize;
    }
    (next, changed)
}

/// Lyapunov energy `G(v)`; see the module docs.
pub fn energy(net: &Network, v: &State) -> Result<f64> {
    net.check_state(v)?;
    Ok(energy_unchecked(net, v))
}

fn energy_unchecked(net: &Network, v: &State) -> f64 {
    let x = v.to_complex();
    let c = net.hollow();
    let mut quad = 0.0;
    for (i, xi) in x.iter().enumerate() {
        let row: Complex64 = c.row(i).iter().zip(&x).map(|(a, b)| a * b).sum();
        quad += (xi.conj() * row).re;
    }
    let lin: f64 = net
        .thresholds()
        .iter()
        .zip(&x)
        .map(|(t, xi)| (t.conj() * xi).re)
        .sum();
    quad - 2.0 * lin
}

/// Default serial budget in sweeps, and parallel budget in steps: `4n`.
pub fn default_budget(n: usize) -> usize {
    4 * n
}

/// Serial run: nodes are visited per `order`, one update per step, until a
/// full sweep changes nothing or `budget` sweeps have run.
pub fn run_serial(
    net: &Network,
    v0: &State,
    mode: Mode,
    order: Order,
    budget: usize,
) -> Result<Trajectory> {
    net.check_state(v0)?;
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let n = net.n();
    let mut nodes: Vec<usize> = (0..n).filter(|&i| net.clamped() != Some(i)).collect();
    let mut rng = match order {
        Order::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        Order::Cyclic => None,
    };
    let initial_energy = energy_unchecked(net, v0);
    let mut state = v0.clone();
    let mut steps = Vec::new();
    let mut flips = 0;
    let mut step = 0;
    for sweep in 1..=budget {
        if let Some(rng) = rng.as_mut() {
            nodes.shuffle(rng);
        }
        let mut changed = false;
        for &i in &nodes {
            let h = net.field(net.hollow(), &state, i);
            if state.assign_sign(i, h, mode.negates()) {
                changed = true;
                flips += 1;
            }
            step += 1;
            steps.push(Step {
                step,
                node: Node::Index(i),
                state: state.clone(),
                energy: energy_unchecked(net, &state),
            });
        }
        if !changed {
            return Ok(Trajectory {
                mode,
                order: Some(order),
                initial: v0.clone(),
                initial_energy,
                steps,
                outcome: Outcome::FixedPoint,
                flips,
                iterations: sweep,
            });
        }
    }
    Ok(Trajectory {
        mode,
        order: Some(order),
        initial: v0.clone(),
        initial_energy,
        steps,
        outcome: Outcome::BudgetExhausted,
        flips,
        iterations: budget,
    })
}

/// Fully parallel run until a fixed point, a period-2 orbit, or `budget`
/// steps.
pub fn run_parallel(net: &Network, v0: &State, mode: Mode, budget: usize) -> Result<Trajectory> {
    net.check_state(v0)?;
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let mut before = None::<State>;
    let mut current = v0.clone();
    let mut steps = Vec::new();
    let mut flips = 0;
    let mut outcome = Outcome::BudgetExhausted;
    let mut iterations = budget;
    for step in 1..=budget {
        let (next, changed) = parallel_update(net, &current, mode);
        flips += changed;
        steps.push(Step {
            step,
            node: Node::All(AllNodes::All),
            state: next.clone(),
            energy: energy_unchecked(net, &next),
        });
        if changed == 0 {
            outcome = Outcome::FixedPoint;
        } else if before.as_ref() == Some(&next) {
            outcome = Outcome::TwoCycle;
        }
        if outcome != Outcome::BudgetExhausted {
            iterations = step;
            break;
        }
        before = Some(std::mem::replace(&mut current, next));
    }
    Ok(Trajectory {
        mode,
        order: None,
        initial: v0.clone(),
        initial_energy: energy_unchecked(net, v0),
        steps,
        outcome,
        flips,
        iterations,
    })
}
