//! Sequential measurements on the Peres-Mermin square with distant parties:
//! exact simulation and hidden-variable bound oracles.
//!
//! Alice measures compatible triples from the square in sequence; Bob (and
//! optionally Charlie) measure far away. Quantum states push the combined sum
//! T + S to 4 + 2√2 above what any local hidden-variable theory allows, even
//! one whose later outcomes depend on measurement order. This crate computes
//! both sides exactly: density-matrix simulation with projective updates on
//! one side, exhaustive enumeration of the classical models on the other.
//!
//! ## Where to start
//!
//! The `examples/` directory is the front door; each one is a self-contained
//! walkthrough of one capability:
//!
//! - **`mermin_square`** - the nine observables, row/column products, compatibility
//! - **`sequential_measurement`** - projective branching, repetition, order invariance
//! - **`singlet_correlators`** - the twelve conditioned correlators, S, T, T + S
//! - **`classical_bounds`** - exhaustive noncontextual and local maxima with witnesses
//! - **`behavior_table`** - a nondisturbing behavior that saturates the local bound 12
//! - **`noise_threshold`** - visibility sweeps and the critical points 0.879 / 0.621
//! - **`nonmax_sweep`** - partially entangled pairs and the violation boundary
//! - **`ghz_scenario`** - three distant parties, S' = 4 + 4√2, total 21.66
//!
//! ```bash
//! cargo run -p ctxlab --example mermin_square
//! cargo run -p ctxlab --example sequential_measurement
//! cargo run -p ctxlab --example singlet_correlators
//! cargo run -p ctxlab --example classical_bounds
//! cargo run -p ctxlab --example behavior_table
//! cargo run -p ctxlab --example noise_threshold
//! cargo run -p ctxlab --example nonmax_sweep
//! cargo run -p ctxlab --example ghz_scenario
//! ```
//!
//! The same machinery is scriptable through the `ctxlab` binary
//! (`reproduce`, `bounds`, `sweep`, `threshold`, `scenario`).
//!
//! ## Module map
//!
//! - [`tensor`] - dense complex matrices, Pauli strings, observables
//! - [`scenario`] - the square, scenario states, distant settings, expressions
//! - [`measurement`] - sequential simulation and conditioned correlators
//! - [`hv`] - hidden-variable enumeration, behaviors, algebraic relations
//! - [`runner`] - acceptance checks, sweeps, thresholds, report formats

pub mod error;
pub mod hv;
pub mod measurement;
pub mod runner;
pub mod scenario;
pub mod tensor;

pub use error::{CtxError, Result};
pub use hv::{
    check_algebraic_relations, lhvt_value, max_lhvt, max_noncontextual, nc_value,
    verify_algebraic_relations, BehaviorTable, BoundReport, ContextProbs, ContextRow, ContextSpec,
    Corruption, HVAssignment, LhvtBoundReport, LhvtTarget, NCAssignment, RelationReport,
};
pub use measurement::{
    correlation, evaluate_expression, joint_distribution, no_disturbance_check,
    order_invariance_check, EvaluationReport, JointOutcomeDistribution,
};
pub use runner::{
    acceptance_checks, bounds_report, build_scenario, evaluate_scenario, read_sweep_csv,
    render_checks_json, render_checks_text, render_scenario_text, reproduce_report,
    scenario_report, sweep, threshold, write_sweep_csv, BoundExpr, BoundModel, Check,
    ReproduceReport, Scenario, ScenarioConfig, ScenarioEvaluation, ScenarioKind, ScenarioReport,
    SweepParam, SweepRow, ThresholdResult,
};
pub use scenario::{
    bell_sum_bipartite, bell_sum_tripartite, bob_settings_nonmax, bob_settings_singlet,
    chsh_expressions, expression_s, expression_s_prime, expression_t, expression_t_plus_s,
    expression_t_plus_s_prime, ghz_settings, ghz_state, ghz_state_with_chi, nonmax_state,
    nonmax_state_with_chi, singlet_state, CorrelationSpec, DistantObs, DistantSettings,
    InequalityExpression, MerminObs, MerminSquare, Party, QuantumState,
};
pub use tensor::{ComplexMatrix, Observable, Pauli};
