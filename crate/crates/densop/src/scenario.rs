//! Scenario runner: deterministic batch execution of the paradox
//! laboratories with file-based input and output.
//!
//! A scenario file is a JSON object
//! `{"kind": ..., "seed": ..., "output_path": ..., "parameters": {...}}`
//! with `kind` one of `evolve`, `measure`, `bell`, `epr`, `info`, `cat`.
//! Runs are deterministic: the same file and seed produce byte-identical
//! artifacts. Artifacts are written in one shot, so a failing run leaves no
//! partial output.

use std::fmt;
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::composite::{
    is_factorizable, lift_filter, partial_trace, partial_trace_matrix, Side, SubsystemLayout,
};
use crate::dynamics::{evolve_exact, evolve_stepped, EvolutionSpec};
use crate::epr::{
    bell_check, lhv_estimate, qm_sampled_correlation, statement_f_falsification,
    CorrelationRecord, LhvStrategy, Outcome, SignModel, TableStrategy,
};
use crate::error::Error;
use crate::info::{minimality_check, InfoReport};
use crate::matrix::ComplexMatrix;
use crate::measurement::{sample_filter, sample_index};
use crate::observable::{expectation, spectral_measure, Direction, Filter, Observable};
use crate::rng::{split_seed, trial_stream};
use crate::state::DensityOperator;
use crate::tol::{TAU_BELL, TAU_PROB, TAU_PURITY};

/// Failure modes of a scenario run, split by who is at fault.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// The scenario file or its parameters are unusable: exit status 2.
    #[error("input error: {0}")]
    Input(String),
    /// The engine hit an error or invariant breach while running: exit 1.
    #[error("run error: {0}")]
    Run(#[from] Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) => 2,
            RunError::Run(_) => 1,
        }
    }
}

/// Command-line overrides. Engine tolerances are compile-time constants;
/// `tol` only moves the pass/fail classification thresholds inside reports.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub tol: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Evolve,
    Measure,
    Bell,
    Epr,
    Info,
    Cat,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Kind::Evolve => "evolve",
            Kind::Measure => "measure",
            Kind::Bell => "bell",
            Kind::Epr => "epr",
            Kind::Info => "info",
            Kind::Cat => "cat",
        };
        f.write_str(name)
    }
}

/// Parsed scenario file, parameters still kind-specific JSON.
#[derive(Debug, Deserialize)]
pub struct Scenario {
    pub kind: Kind,
    #[serde(default)]
    pub seed: u64,
    pub output_path: PathBuf,
    #[serde(default = "empty_object")]
    pub parameters: serde_json::Value,
}

fn empty_object() -> serde_json::Value {
    serde_json::Value::Object(serde_json::Map::new())
}

fn default_hbar() -> f64 {
    1.0
}

fn default_trials() -> u64 {
    100_000
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum EvolveMethod {
    Stepped,
    Exact,
}

#[derive(Debug, Deserialize)]
struct NamedObservable {
    name: String,
    operator: Observable,
}

#[derive(Debug, Deserialize)]
struct EvolveParams {
    initial: DensityOperator,
    hamiltonian: Observable,
    #[serde(default)]
    t_start: f64,
    t_end: f64,
    step: f64,
    #[serde(default = "default_hbar")]
    hbar: f64,
    #[serde(default)]
    observables: Vec<NamedObservable>,
    #[serde(default)]
    method: Option<EvolveMethod>,
}

#[derive(Debug, Deserialize)]
struct MeasureParams {
    state: DensityOperator,
    observable: Observable,
    #[serde(default = "default_trials")]
    trials: u64,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum StrategyChoice {
    Qm,
    SignLhv,
    Table,
}

#[derive(Debug, Deserialize)]
struct TableEntry {
    angle_deg: f64,
    /// +1 or −1.
    outcome: i8,
}

#[derive(Debug, Deserialize)]
struct BellParams {
    /// Exactly three coplanar angles, degrees, measured from ẑ in the x–z
    /// plane.
    angles_deg: Vec<f64>,
    #[serde(default = "default_trials")]
    trials: u64,
    strategy: StrategyChoice,
    #[serde(default)]
    table: Vec<TableEntry>,
}

#[derive(Debug, Deserialize)]
struct InfoParams {
    state: DensityOperator,
    layout: SubsystemLayout,
}

/// A run artifact: its destination and full contents, written in one shot.
pub struct Artifact {
    pub path: PathBuf,
    pub contents: String,
}

/// Load, type-check and execute a scenario file; returns the written path.
///
/// `expected` pins the scenario kind a subcommand accepts; `None` accepts
/// any kind.
pub fn run_scenario_file(
    path: &Path,
    expected: Option<Kind>,
    overrides: &Overrides,
) -> Result<PathBuf, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Input(format!("cannot read {}: {e}", path.display())))?;
    let scenario: Scenario = serde_json::from_str(&text)
        .map_err(|e| RunError::Input(format!("cannot parse {}: {e}", path.display())))?;
    if let Some(expected) = expected {
        if scenario.kind != expected {
            return Err(RunError::Input(format!(
                "scenario kind is \"{}\" but this subcommand runs \"{expected}\"",
                scenario.kind
            )));
        }
    }
    run_scenario(scenario, overrides)
}

/// Execute an already-parsed scenario; returns the written artifact path.
pub fn run_scenario(scenario: Scenario, overrides: &Overrides) -> Result<PathBuf, RunError> {
    let seed = overrides.seed.unwrap_or(scenario.seed);
    let artifact = match scenario.kind {
        Kind::Evolve => run_evolve(&scenario)?,
        Kind::Measure => run_measure(&scenario, seed, overrides)?,
        Kind::Bell => run_bell(&scenario, seed, overrides)?,
        Kind::Epr => render_json("statement_f_report", &statement_f_falsification()),
        Kind::Info => run_info(&scenario)?,
        Kind::Cat => render_json("cat_report", &cat_demo(seed)),
    };

    let mut destination = scenario.output_path.clone();
    if destination.is_relative() {
        if let Some(dir) = &overrides.out_dir {
            destination = dir.join(destination);
        }
    }
    if let Some(parent) = destination.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(Error::from)?;
        }
    }
    std::fs::write(&destination, artifact).map_err(Error::from)?;
    Ok(destination)
}

fn parse_params<T: serde::de::DeserializeOwned>(scenario: &Scenario) -> Result<T, RunError> {
    serde_json::from_value(scenario.parameters.clone()).map_err(|e| {
        RunError::Input(format!(
            "bad parameters for kind \"{}\": {e}",
            scenario.kind
        ))
    })
}

fn fmt_f64(x: f64) -> String {
    // Shortest round-trip form, '.' decimal, locale-free.
    format!("{x}")
}

fn run_evolve(scenario: &Scenario) -> Result<String, RunError> {
    let params: EvolveParams = parse_params(scenario)?;
    let spec = EvolutionSpec::new(params.t_start, params.t_end, params.step, params.hbar)
        .map_err(|e| RunError::Input(e.to_string()))?;
    for named in &params.observables {
        if named.operator.dim() != params.initial.dim() {
            return Err(RunError::Input(format!(
                "observable \"{}\" has dimension {}, state has {}",
                named.name,
                named.operator.dim(),
                params.initial.dim()
            )));
        }
    }
    if params.hamiltonian.dim() != params.initial.dim() {
        return Err(RunError::Input(format!(
            "hamiltonian dimension {} does not match state dimension {}",
            params.hamiltonian.dim(),
            params.initial.dim()
        )));
    }
    let trajectory = match params.method.unwrap_or(EvolveMethod::Stepped) {
        EvolveMethod::Stepped => {
            let h = params.hamiltonian.matrix().clone();
            evolve_stepped(&params.initial, move |_| h.clone(), &spec)?
        }
        EvolveMethod::Exact => {
            let mut points = Vec::new();
            let span = spec.t_end - spec.t_start;
            let full = (span / spec.step).floor() as u64;
            let mut times: Vec<f64> = (0..=full)
                .map(|k| spec.t_start + k as f64 * spec.step)
                .collect();
            if span - full as f64 * spec.step > spec.step * 1e-9 {
                times.push(spec.t_end);
            }
            for t in times {
                let state = evolve_exact(
                    &params.initial,
                    &params.hamiltonian,
                    t - spec.t_start,
                    spec.hbar,
                )?;
                points.push(crate::dynamics::TrajectoryPoint { time: t, state });
            }
            points
        }
    };

    let mut csv = String::from("t");
    for named in &params.observables {
        csv.push(',');
        csv.push_str(&named.name);
    }
    csv.push_str(",trace_deviation,purity\n");
    for point in &trajectory {
        csv.push_str(&fmt_f64(point.time));
        for named in &params.observables {
            let value = expectation(&point.state, &named.operator)?;
            csv.push(',');
            csv.push_str(&fmt_f64(value));
        }
        let trace_dev = (point.state.matrix().trace().re - 1.0).abs();
        csv.push(',');
        csv.push_str(&fmt_f64(trace_dev));
        csv.push(',');
        csv.push_str(&fmt_f64(point.state.purity()));
        csv.push('\n');
    }
    Ok(csv)
}

fn run_measure(
    scenario: &Scenario,
    seed: u64,
    overrides: &Overrides,
) -> Result<String, RunError> {
    let params: MeasureParams = parse_params(scenario)?;
    if params.observable.dim() != params.state.dim() {
        return Err(RunError::Input(format!(
            "observable dimension {} does not match state dimension {}",
            params.observable.dim(),
            params.state.dim()
        )));
    }
    let trials = overrides.trials.unwrap_or(params.trials).max(1);

    let parts = spectral_measure(&params.observable);
    let probabilities: Vec<f64> = parts
        .iter()
        .map(|(_, f)| {
            params
                .state
                .matrix()
                .trace_product(f.matrix())
                .re
                .clamp(0.0, 1.0)
        })
        .collect();

    let mut counts = vec![0u64; parts.len()];
    for trial in 0..trials {
        let u: f64 = trial_stream(seed, trial).gen();
        counts[sample_index(&probabilities, u)] += 1;
    }

    let mut csv = String::from("result,eigenvalue,probability,count,frequency\n");
    for (k, (eigenvalue, _)) in parts.iter().enumerate() {
        csv.push_str(&format!(
            "{k},{},{},{},{}\n",
            fmt_f64(*eigenvalue),
            fmt_f64(probabilities[k]),
            counts[k],
            fmt_f64(counts[k] as f64 / trials as f64)
        ));
    }
    Ok(csv)
}

fn run_bell(scenario: &Scenario, seed: u64, overrides: &Overrides) -> Result<String, RunError> {
    let params: BellParams = parse_params(scenario)?;
    bell_csv(&params, seed, overrides)
}

fn bell_csv(params: &BellParams, seed: u64, overrides: &Overrides) -> Result<String, RunError> {
    if params.angles_deg.len() != 3 {
        return Err(RunError::Input(format!(
            "bell scenarios take exactly three coplanar angles, got {}",
            params.angles_deg.len()
        )));
    }
    let trials = overrides.trials.unwrap_or(params.trials).max(1);
    let report_tol = overrides.tol.unwrap_or(TAU_BELL);

    let dirs: Vec<Direction> = params
        .angles_deg
        .iter()
        .map(|deg| Direction::in_xz_plane(deg.to_radians()))
        .collect();
    let pairs = [(dirs[0], dirs[1]), (dirs[0], dirs[2]), (dirs[1], dirs[2])];
    let names = ["ab", "ac", "bc"];

    let records: Vec<CorrelationRecord> = match params.strategy {
        StrategyChoice::Qm => pairs
            .iter()
            .enumerate()
            .map(|(k, (a, b))| qm_sampled_correlation(a, b, trials, split_seed(seed, k as u64)))
            .collect(),
        StrategyChoice::SignLhv => lhv_estimate(&SignModel, &pairs, trials, seed),
        StrategyChoice::Table => {
            let entries = params
                .table
                .iter()
                .map(|entry| {
                    let outcome = match entry.outcome {
                        1 => Outcome::Plus,
                        -1 => Outcome::Minus,
                        other => {
                            return Err(RunError::Input(format!(
                                "table outcomes must be +1 or -1, got {other}"
                            )))
                        }
                    };
                    Ok((Direction::in_xz_plane(entry.angle_deg.to_radians()), outcome))
                })
                .collect::<Result<Vec<_>, RunError>>()?;
            let strategy = TableStrategy::new(entries);
            lhv_estimate(&strategy as &dyn LhvStrategy, &pairs, trials, seed)
        }
    };

    let check = bell_check(
        records[0].correlation,
        records[1].correlation,
        records[2].correlation,
    )?;
    let satisfied = check.margin >= -report_tol;

    let mut csv = String::from("pair,P,std_error,margin,satisfied\n");
    for (name, rec) in names.iter().zip(&records) {
        csv.push_str(&format!(
            "{name},{},{},{},{}\n",
            fmt_f64(rec.correlation),
            fmt_f64(rec.std_error),
            fmt_f64(check.margin),
            satisfied
        ));
    }
    Ok(csv)
}

fn run_info(scenario: &Scenario) -> Result<String, RunError> {
    let params: InfoParams = parse_params(scenario)?;
    if params.layout.total() != params.state.dim() {
        return Err(RunError::Input(format!(
            "layout ({}, {}) does not match state dimension {}",
            params.layout.dim_a,
            params.layout.dim_b,
            params.state.dim()
        )));
    }
    let report = minimality_check(&params.state, params.layout)?;
    let (factorizable, deviation) = is_factorizable(&params.state, params.layout)?;
    #[derive(Serialize)]
    struct InfoArtifact {
        kind: &'static str,
        units: &'static str,
        #[serde(flatten)]
        report: InfoReport,
        factorizable: bool,
        factorization_deviation: f64,
    }
    Ok(to_pretty_json(&InfoArtifact {
        kind: "info_report",
        units: "nats",
        report,
        factorizable,
        factorization_deviation: deviation,
    }))
}

/// One conditioned branch of the atom–pointer demonstration.
#[derive(Clone, Debug, Serialize)]
pub struct CatBranch {
    pub pointer_reading: String,
    pub probability: f64,
    /// Conditional atom state given the reading.
    pub atom_state: DensityOperator,
    pub atom_state_pure: bool,
}

/// Structured output of [`cat_demo`].
#[derive(Clone, Debug, Serialize)]
pub struct CatReport {
    /// Reduced pointer state: diag(½, ½).
    pub pointer_marginal: DensityOperator,
    pub pointer_marginal_pure: bool,
    pub branches: Vec<CatBranch>,
    /// One pointer readout sampled with the run seed.
    pub sampled_reading: String,
}

/// Two-level atom ⊗ two-level pointer toy: the joint pure state
/// (|undecayed, alive⟩ + |decayed, dead⟩)/√2.
///
/// The pointer marginal is the coin-toss mixture diag(½, ½) — not a pure
/// state — and conditioning on a pointer reading leaves the atom in the
/// matching pure state.
pub fn cat_demo(seed: u64) -> CatReport {
    use crate::matrix::C64;

    let layout = SubsystemLayout::new(2, 2).expect("2x2 layout");
    let s = 1.0 / 2.0_f64.sqrt();
    // Atom index 0 = undecayed, 1 = decayed; pointer index 0 = alive, 1 = dead.
    let joint = DensityOperator::from_pure_vector(&[
        C64::new(s, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(s, 0.0),
    ])
    .expect("nonzero vector");

    let pointer_marginal =
        partial_trace(&joint, layout, Side::B).expect("layout matches");
    let pointer_marginal_pure = pointer_marginal.purity_residue() <= TAU_PURITY;

    let readings = [(false, "alive"), (true, "dead")];
    let mut branches = Vec::with_capacity(2);
    for (dead, label) in &readings {
        let pointer_state = if *dead { [0.0, 1.0] } else { [1.0, 0.0] };
        let f_pointer = Filter::new(ComplexMatrix::from_real_diagonal(&pointer_state))
            .expect("basis projector");
        let lifted = lift_filter(&f_pointer, layout, Side::B).expect("dims match");
        let probability = joint
            .matrix()
            .trace_product(lifted.matrix())
            .re
            .clamp(0.0, 1.0);
        assert!(probability > TAU_PROB);
        let projected = &(lifted.matrix() * joint.matrix()) * lifted.matrix();
        let reduced = partial_trace_matrix(&projected, layout, Side::A)
            .expect("layout matches")
            .scaled_re(1.0 / probability);
        let atom_state = DensityOperator::new(reduced).expect("conditioned state is valid");
        branches.push(CatBranch {
            pointer_reading: (*label).to_string(),
            probability,
            atom_state_pure: atom_state.is_pure(),
            atom_state,
        });
    }

    let dead_filter = lift_filter(
        &Filter::new(ComplexMatrix::from_real_diagonal(&[0.0, 1.0])).expect("projector"),
        layout,
        Side::B,
    )
    .expect("dims match");
    let sampled = sample_filter(&joint, &dead_filter, seed, 0).expect("dims match");
    let sampled_reading = if sampled.result == 1 { "dead" } else { "alive" };

    CatReport {
        pointer_marginal,
        pointer_marginal_pure,
        branches,
        sampled_reading: sampled_reading.to_string(),
    }
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn render_json<T: Serialize>(kind: &'static str, report: &T) -> String {
    #[derive(Serialize)]
    struct Tagged<'a, T: Serialize> {
        kind: &'static str,
        #[serde(flatten)]
        report: &'a T,
    }
    to_pretty_json(&Tagged { kind, report })
}

// Convenience constructors used by the thin CLI for flag-driven runs.

/// Build a bell scenario from flags.
pub fn bell_scenario_from_flags(
    angles_deg: Vec<f64>,
    strategy: &str,
    output_path: PathBuf,
    seed: u64,
) -> Result<Scenario, RunError> {
    let strategy = match strategy {
        "qm" => "qm",
        "sign-lhv" => "sign-lhv",
        "table" => "table",
        other => {
            return Err(RunError::Input(format!(
                "unknown strategy \"{other}\" (expected qm, sign-lhv or table)"
            )))
        }
    };
    Ok(Scenario {
        kind: Kind::Bell,
        seed,
        output_path,
        parameters: serde_json::json!({
            "angles_deg": angles_deg,
            "strategy": strategy,
        }),
    })
}

/// Build a parameterless scenario (epr, cat) from flags.
pub fn plain_scenario(kind: Kind, output_path: PathBuf, seed: u64) -> Scenario {
    Scenario {
        kind,
        seed,
        output_path,
        parameters: empty_object(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;

    #[test]
    fn cat_demo_reports_ignorance_mixture() {
        let report = cat_demo(0);
        let half = DensityOperator::maximally_mixed(2).unwrap();
        assert!(report.pointer_marginal.distance(&half) < 1e-12);
        assert!(!report.pointer_marginal_pure);

        let dead_branch = report
            .branches
            .iter()
            .find(|b| b.pointer_reading == "dead")
            .unwrap();
        let decayed =
            DensityOperator::from_pure_vector(&[C64::new(0.0, 0.0), C64::new(1.0, 0.0)])
                .unwrap();
        assert!(dead_branch.atom_state.distance(&decayed) < 1e-12);
        assert!((dead_branch.probability - 0.5).abs() < 1e-12);
        assert!(dead_branch.atom_state_pure);

        let alive_branch = report
            .branches
            .iter()
            .find(|b| b.pointer_reading == "alive")
            .unwrap();
        let undecayed =
            DensityOperator::from_pure_vector(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
                .unwrap();
        assert!(alive_branch.atom_state.distance(&undecayed) < 1e-12);
    }

    #[test]
    fn cat_demo_sampling_is_seeded() {
        let a = cat_demo(3).sampled_reading;
        let b = cat_demo(3).sampled_reading;
        assert_eq!(a, b);
    }

    #[test]
    fn bell_params_reject_wrong_angle_count() {
        let scenario = Scenario {
            kind: Kind::Bell,
            seed: 0,
            output_path: PathBuf::from("out.csv"),
            parameters: serde_json::json!({
                "angles_deg": [0.0, 60.0],
                "strategy": "qm",
            }),
        };
        let result = run_bell(&scenario, 0, &Overrides::default());
        assert!(matches!(result, Err(RunError::Input(_))));
    }

    #[test]
    fn bell_quantum_csv_shows_violation() {
        let scenario = Scenario {
            kind: Kind::Bell,
            seed: 0,
            output_path: PathBuf::from("out.csv"),
            parameters: serde_json::json!({
                "angles_deg": [0.0, 60.0, 120.0],
                "trials": 20000,
                "strategy": "qm",
            }),
        };
        let csv = run_bell(&scenario, 0, &Overrides::default()).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "pair,P,std_error,margin,satisfied");
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[0], "ab");
        let margin: f64 = first[3].parse().unwrap();
        assert!((margin + 0.5).abs() < 0.05);
        assert_eq!(first[4], "false");
    }

    #[test]
    fn bell_lhv_csv_satisfies() {
        let scenario = Scenario {
            kind: Kind::Bell,
            seed: 1,
            output_path: PathBuf::from("out.csv"),
            parameters: serde_json::json!({
                "angles_deg": [0.0, 60.0, 120.0],
                "trials": 20000,
                "strategy": "sign-lhv",
            }),
        };
        let csv = run_bell(&scenario, 1, &Overrides::default()).unwrap();
        let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row[4], "true");
    }

    #[test]
    fn measure_csv_frequencies_track_probabilities() {
        let scenario = Scenario {
            kind: Kind::Measure,
            seed: 5,
            output_path: PathBuf::from("out.csv"),
            parameters: serde_json::json!({
                "state": serde_json::to_value(DensityOperator::maximally_mixed(2).unwrap()).unwrap(),
                "observable": {
                    "kind": "observable",
                    "rows": 2,
                    "cols": 2,
                    "data": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [-1.0, 0.0]],
                },
                "trials": 50000,
            }),
        };
        let csv = run_measure(&scenario, 5, &Overrides::default()).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "result,eigenvalue,probability,count,frequency"
        );
        for line in lines {
            let cells: Vec<&str> = line.split(',').collect();
            let prob: f64 = cells[2].parse().unwrap();
            let freq: f64 = cells[4].parse().unwrap();
            assert!((prob - 0.5).abs() < 1e-12);
            assert!((freq - prob).abs() < 0.01);
        }
    }

    #[test]
    fn evolve_csv_has_expected_header() {
        let plus_x =
            DensityOperator::from_pure_vector(&[C64::new(1.0, 0.0), C64::new(1.0, 0.0)])
                .unwrap();
        let scenario = Scenario {
            kind: Kind::Evolve,
            seed: 0,
            output_path: PathBuf::from("out.csv"),
            parameters: serde_json::json!({
                "initial": serde_json::to_value(&plus_x).unwrap(),
                "hamiltonian": {
                    "kind": "observable",
                    "rows": 2, "cols": 2,
                    "data": [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [-0.5, 0.0]],
                },
                "t_end": 1.0,
                "step": 0.25,
                "observables": [{
                    "name": "sx",
                    "operator": {
                        "kind": "observable",
                        "rows": 2, "cols": 2,
                        "data": [[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
                    }
                }],
            }),
        };
        let csv = run_evolve(&scenario).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,sx,trace_deviation,purity");
        // 0, 0.25, 0.5, 0.75, 1.0
        assert_eq!(lines.count(), 5);
        // <sigma_x>(t) = cos t for H = S_z; dt = 0.25 is coarse, so the
        // fourth-order global error budget here is ~1e-4.
        let row: Vec<&str> = csv.lines().nth(5).unwrap().split(',').collect();
        let sx: f64 = row[1].parse().unwrap();
        assert!((sx - 1.0_f64.cos()).abs() < 1e-3);
    }

    #[test]
    fn info_artifact_reports_nats() {
        let scenario = Scenario {
            kind: Kind::Info,
            seed: 0,
            output_path: PathBuf::from("out.json"),
            parameters: serde_json::json!({
                "state": serde_json::to_value(crate::epr::singlet()).unwrap(),
                "layout": {"dim_a": 2, "dim_b": 2},
            }),
        };
        let text = run_info(&scenario).unwrap();
        assert!(text.contains("\"units\": \"nats\""));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let excess = value["excess"].as_f64().unwrap();
        assert!((excess - 2.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert_eq!(value["factorizable"], serde_json::Value::Bool(false));
    }

    #[test]
    fn kind_mismatch_is_input_error() {
        let dir = std::env::temp_dir().join("densop_kind_mismatch_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("scenario.json");
        std::fs::write(
            &path,
            r#"{"kind":"cat","output_path":"cat.json","parameters":{}}"#,
        )
        .unwrap();
        let result = run_scenario_file(&path, Some(Kind::Bell), &Overrides::default());
        match result {
            Err(e @ RunError::Input(_)) => assert_eq!(e.exit_code(), 2),
            other => panic!("expected input error, got {other:?}"),
        }
    }
}
