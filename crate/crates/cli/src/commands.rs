use std::fmt::{self, Write as _};
use std::fs;
use std::io::BufWriter;
use std::path::Path;

use hqf::augment::{augment as augment_network, check_preservation};
use hqf::dynamics::{default_budget, run_parallel, run_serial, Mode, Order, Outcome, Trajectory};
use hqf::forms::{eval_form, hollow_reduce};
use hqf::hypercube::random_vertex_with;
use hqf::oracle::{brute_force_extrema, census as census_of, is_corner_positive, verify_theorem};
use hqf::stability::{is_anti_stable, is_stable};
use hqf::synthesis::{synthesize, verify_storage, PatternSet};
use hqf::toeplitz::{eval_toeplitz, toeplitz_dense as dense_of, ToeplitzSpec};
use hqf::{Flavor, Network, SquareMatrix, State};
use rand::RngCore;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::error::Category;
use serde_json::{json, Value};

use crate::{
    AugmentArgs, CornerArgs, ExecArg, FlavorArg, Format, MatrixArgs, ModeArg, NetArgs,
    OptimizeArgs, OrderArg, SynthArgs,
};

/// Tolerance for the structured-vs-dense Toeplitz cross-check.
const TOEPLITZ_TOL: f64 = 1e-9;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(String),
    Validation(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Validation(m) => write!(f, "validation failed: {m}"),
        }
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => 1,
            Failure::Validation(_) => 2,
        }
    }
}

impl From<hqf::Error> for Failure {
    fn from(e: hqf::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A requested check failed; the report is still printed.
    CheckFailed,
    BudgetExhausted,
}

pub struct Report {
    json: Value,
    text: String,
    status: Status,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            status: Status::Ok,
        }
    }

    fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn emit(&self, format: Format) {
        match format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&self.json).expect("reports serialize")
            ),
            Format::Text => print!("{}", self.text),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::CheckFailed => 2,
            Status::BudgetExhausted => 3,
        }
    }
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let raw = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    // well-formed JSON that violates a schema or invariant is a validation failure
    serde_json::from_str(&raw).map_err(|e| match e.classify() {
        Category::Data => Failure::Validation(format!("{}: {e}", path.display())),
        _ => Failure::Parse(format!("{}: {e}", path.display())),
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("artifacts serialize");
    text.push('\n');
    fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn mode_of(m: ModeArg) -> Mode {
    match m {
        ModeArg::Stable => Mode::Stable,
        ModeArg::Anti => Mode::Anti,
    }
}

fn flavor_for(requested: Option<FlavorArg>, a: &SquareMatrix) -> Flavor {
    match requested {
        Some(FlavorArg::Real) => Flavor::Real,
        Some(FlavorArg::Complex) => Flavor::Complex,
        None if a.is_real() => Flavor::Real,
        None => Flavor::Complex,
    }
}

fn passes(net: &Network, v: &State, mode: Mode) -> Result<bool, Failure> {
    Ok(match mode {
        Mode::Stable => is_stable(net, v)?,
        Mode::Anti => is_anti_stable(net, v)?,
    })
}

fn states_text(states: &[State], limit: usize) -> String {
    let mut out = String::new();
    for s in states.iter().take(limit) {
        let _ = writeln!(out, "    {s}");
    }
    if states.len() > limit {
        let _ = writeln!(out, "    ... {} more", states.len() - limit);
    }
    out
}

pub fn optimize(args: &OptimizeArgs) -> Result<Report, Failure> {
    let (net, form) = match (&args.input.matrix, &args.input.net) {
        (Some(path), _) => {
            let a: SquareMatrix = load(path)?;
            let flavor = flavor_for(args.flavor, &a);
            let c = hollow_reduce(&a, flavor)?.c;
            (Network::zero_threshold(flavor, c)?, a)
        }
        (None, Some(path)) => {
            if args.flavor.is_some() {
                return Err(Failure::Usage(
                    "--flavor applies to --matrix input only".into(),
                ));
            }
            let net: Network = load(path)?;
            let w = net.weights().clone();
            (net, w)
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    if args.restarts == 0 {
        return Err(Failure::Usage("--restarts must be at least 1".into()));
    }
    let n = net.n();
    let mode = mode_of(args.mode);
    let budget = args.budget.unwrap_or_else(|| default_budget(n));
    let mut rng = hqf::instances::rng(args.seed);

    let mut runs: Vec<Trajectory> = Vec::with_capacity(args.restarts);
    for _ in 0..args.restarts {
        let v0 = random_vertex_with(n, net.flavor(), &mut rng)?;
        let run = match args.exec {
            ExecArg::Serial => {
                let order = match args.order {
                    OrderArg::Cyclic => Order::Cyclic,
                    OrderArg::Random => Order::Random {
                        seed: rng.next_u64(),
                    },
                };
                run_serial(&net, &v0, mode, order, budget)?
            }
            ExecArg::Parallel => run_parallel(&net, &v0, mode, budget)?,
        };
        runs.push(run);
    }
    // lowest final energy wins in anti mode, highest in stable mode; first on ties
    let better = |a: f64, b: f64| match mode {
        Mode::Anti => a < b,
        Mode::Stable => a > b,
    };
    let mut best = 0;
    for (i, r) in runs.iter().enumerate().skip(1) {
        if better(r.final_energy(), runs[best].final_energy()) {
            best = i;
        }
    }
    let run = &runs[best];
    if let Some(path) = &args.trajectory {
        let file = fs::File::create(path)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
        run.write_jsonl(BufWriter::new(file))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let state = run.final_state();
    let form_value = eval_form(&form, &state.to_complex())?.re;
    let predicate = passes(&net, state, mode)?;
    let exhausted = runs
        .iter()
        .filter(|r| r.outcome == Outcome::BudgetExhausted)
        .count();

    let json = json!({
        "command": "optimize",
        "seed": args.seed,
        "flavor": net.flavor(),
        "n": n,
        "mode": mode,
        "exec": match args.exec { ExecArg::Serial => "serial", ExecArg::Parallel => "parallel" },
        "order": run.order,
        "budget": budget,
        "restarts": args.restarts,
        "best_restart": best,
        "outcome": run.outcome,
        "state": state,
        "energy": run.final_energy(),
        "form_value": form_value,
        "passes_predicate": predicate,
        "flips": run.flips,
        "iterations": run.iterations,
        "restart_energies": runs.iter().map(Trajectory::final_energy).collect::<Vec<_>>(),
        "restart_outcomes": runs.iter().map(|r| r.outcome).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "optimize  seed={}  n={}  flavor={}",
        args.seed,
        n,
        net.flavor()
    );
    let _ = writeln!(text, "  outcome      {}", run.outcome);
    let _ = writeln!(text, "  state        {state}");
    let _ = writeln!(text, "  energy       {}", run.final_energy());
    let _ = writeln!(text, "  form value   {form_value}");
    let _ = writeln!(text, "  predicate    {predicate}");
    let _ = writeln!(text, "  flips        {}", run.flips);
    let _ = writeln!(text, "  iterations   {}", run.iterations);
    let _ = writeln!(
        text,
        "  restarts     {} (best #{best}, {exhausted} exhausted)",
        args.restarts
    );
    let report = Report::new(json, text);
    Ok(if exhausted > 0 {
        report.with_status(Status::BudgetExhausted)
    } else {
        report
    })
}

pub fn extrema(args: &MatrixArgs) -> Result<Report, Failure> {
    let a: SquareMatrix = load(&args.matrix)?;
    let r = brute_force_extrema(&a, flavor_for(args.flavor, &a))?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "extrema  flavor={}  n={}  vertices={}",
        r.flavor, r.n, r.vertex_count
    );
    let _ = writeln!(
        text,
        "  min {}  ({} vertices)",
        r.min_value,
        r.argmins.len()
    );
    text += &states_text(&r.argmins, 16);
    let _ = writeln!(
        text,
        "  max {}  ({} vertices)",
        r.max_value,
        r.argmaxes.len()
    );
    text += &states_text(&r.argmaxes, 16);
    let mut json = to_value(&r);
    json["command"] = json!("oracle extrema");
    Ok(Report::new(json, text))
}

pub fn verify(args: &MatrixArgs) -> Result<Report, Failure> {
    let e: SquareMatrix = load(&args.matrix)?;
    let v = verify_theorem(&e, flavor_for(args.flavor, &e))?;
    let mut text = String::new();
    let _ = writeln!(text, "verify  flavor={}  n={}", v.flavor, v.n);
    let _ = writeln!(text, "  minimum             {}", v.min_value);
    let _ = writeln!(text, "  minimizers checked  {}", v.minimizers_checked);
    let _ = writeln!(text, "  violations          {}", v.violations.len());
    for viol in &v.violations {
        let _ = writeln!(text, "    {}", viol.vertex);
    }
    let _ = writeln!(text, "  holds               {}", v.holds);
    let mut json = to_value(&v);
    json["command"] = json!("oracle verify");
    let report = Report::new(json, text);
    Ok(if v.holds {
        report
    } else {
        report.with_status(Status::CheckFailed)
    })
}

pub fn corner(args: &CornerArgs) -> Result<Report, Failure> {
    let b: SquareMatrix = load(&args.matrix)?;
    let r = is_corner_positive(&b)?;
    let mut text = String::new();
    let _ = writeln!(text, "corner  n={}", b.n());
    let _ = writeln!(text, "  corner positive  {}", r.corner_positive);
    let _ = writeln!(text, "  minimum          {}", r.min_value);
    if let Some(w) = &r.witness {
        let _ = writeln!(text, "  witness          {}", State::Real(w.clone()));
    }
    let mut json = to_value(&r);
    json["command"] = json!("oracle corner");
    Ok(Report::new(json, text))
}

pub fn census(args: &NetArgs) -> Result<Report, Failure> {
    let net: Network = load(&args.net)?;
    let c = census_of(&net)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "census  flavor={}  n={}  vertices={}",
        c.flavor, c.n, c.vertex_count
    );
    let _ = writeln!(text, "  stable       {}", c.stable.len());
    text += &states_text(&c.stable, 16);
    let _ = writeln!(text, "  anti-stable  {}", c.anti_stable.len());
    text += &states_text(&c.anti_stable, 16);
    let mut json = to_value(&c);
    json["command"] = json!("oracle census");
    Ok(Report::new(json, text))
}

pub fn synth(args: &SynthArgs) -> Result<Report, Failure> {
    let ps: PatternSet = load(&args.patterns)?;
    let kind = mode_of(args.kind);
    let w = synthesize(&ps, kind)?;
    let check = if args.verify {
        Some(verify_storage(&ps, &w, kind)?)
    } else {
        None
    };
    let failed = check.as_ref().is_some_and(|c| !c.ok);
    if let (Some(path), false) = (&args.out, failed) {
        write_json(path, &w)?;
    }
    let mut text = String::new();
    let _ = writeln!(
        text,
        "synth  flavor={}  n={}  patterns={}  kind={:?}",
        ps.flavor(),
        ps.n(),
        ps.len(),
        kind
    );
    if let Some(c) = &check {
        let _ = writeln!(text, "  eigenvalue  {}", c.eigenvalue);
        for (i, (e, s)) in c.eigen_identity.iter().zip(&c.stored).enumerate() {
            let _ = writeln!(text, "  pattern {i}: eigen={e} stored={s}");
        }
        let _ = writeln!(text, "  verified    {}", c.ok);
    }
    if let (Some(path), false) = (&args.out, failed) {
        let _ = writeln!(text, "  wrote {}", path.display());
    }
    let json = json!({
        "command": "synth",
        "flavor": ps.flavor(),
        "n": ps.n(),
        "count": ps.len(),
        "kind": kind,
        "weights": w,
        "verification": check,
    });
    let report = Report::new(json, text);
    Ok(if failed {
        report.with_status(Status::CheckFailed)
    } else {
        report
    })
}

pub fn augment(args: &AugmentArgs) -> Result<Report, Failure> {
    let net: Network = load(&args.net)?;
    let aug = augment_network(&net)?;
    let check = if args.verify {
        Some(check_preservation(&net, &aug)?)
    } else {
        None
    };
    let failed = check.as_ref().is_some_and(|c| !c.ok);
    if let (Some(path), false) = (&args.out, failed) {
        write_json(path, &aug.network)?;
    }
    let mut text = String::new();
    let _ = writeln!(
        text,
        "augment  flavor={}  n={} -> {}  k={}",
        net.flavor(),
        net.n(),
        aug.network.n(),
        aug.k
    );
    if let Some(c) = &check {
        let _ = writeln!(
            text,
            "  stable match       {} ({} states)",
            c.stable_match, c.stable_count
        );
        let _ = writeln!(
            text,
            "  anti-stable match  {} ({} states)",
            c.anti_stable_match, c.anti_stable_count
        );
        let _ = writeln!(text, "  clamp sound        {}", c.clamp_sound);
        let _ = writeln!(text, "  verified           {}", c.ok);
    }
    let json = json!({
        "command": "augment",
        "flavor": net.flavor(),
        "n": net.n(),
        "k": aug.k,
        "dummy_weights": aug.dummy_weights,
        "network": aug.network,
        "verification": check,
    });
    let report = Report::new(json, text);
    Ok(if failed {
        report.with_status(Status::CheckFailed)
    } else {
        report
    })
}

pub fn toeplitz_dense(spec: &Path, out: Option<&Path>) -> Result<Report, Failure> {
    let spec: ToeplitzSpec = load(spec)?;
    let m = dense_of(&spec);
    if let Some(path) = out {
        write_json(path, &m)?;
    }
    let mut text = String::new();
    let _ = writeln!(
        text,
        "toeplitz dense  kind={:?}  n={}",
        spec.kind(),
        spec.n()
    );
    for i in 0..m.n() {
        let row: Vec<String> = (0..m.n())
            .map(|j| format!("{:>10}", m.get(i, j).to_string()))
            .collect();
        let _ = writeln!(text, "  {}", row.join(" "));
    }
    let json = json!({
        "command": "toeplitz dense",
        "kind": spec.kind(),
        "matrix": m,
    });
    Ok(Report::new(json, text))
}

pub fn toeplitz_eval(spec: &Path, vector: &Path, verify: bool) -> Result<Report, Failure> {
    let spec: ToeplitzSpec = load(spec)?;
    let x: State = load(vector)?;
    let value = eval_toeplitz(&spec, &x)?;
    let dense = if verify {
        Some(eval_form(&dense_of(&spec), &x.to_complex())?.re)
    } else {
        None
    };
    let failed = dense.is_some_and(|d| (d - value).abs() > TOEPLITZ_TOL);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "toeplitz eval  kind={:?}  n={}",
        spec.kind(),
        spec.n()
    );
    let _ = writeln!(text, "  structured  {value}");
    if let Some(d) = dense {
        let _ = writeln!(text, "  dense       {d}");
        let _ = writeln!(text, "  agree       {}", !failed);
    }
    let json = json!({
        "command": "toeplitz eval",
        "kind": spec.kind(),
        "value": value,
        "dense": dense,
        "agree": dense.map(|_| !failed),
    });
    let report = Report::new(json, text);
    Ok(if failed {
        report.with_status(Status::CheckFailed)
    } else {
        report
    })
}
