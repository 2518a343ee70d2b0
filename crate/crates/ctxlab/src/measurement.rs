//! Exact sequential measurement: joint outcome distributions under the
//! projection postulate, correlators built from them, and the disturbance
//! and order-invariance diagnostics.

use crate::error::{CtxError, Result};
use crate::scenario::{
    CorrelationSpec, DistantSettings, InequalityExpression, MerminSquare, QuantumState,
};
use crate::tensor::Observable;

/// Probabilities with magnitude below this are treated as exact zeros.
pub const PROB_CLAMP: f64 = 1e-12;
/// A joint distribution must sum to 1 within this.
pub const NORMALIZATION_TOL: f64 = 1e-10;
/// Violation margin for comparing a correlator sum against an integer bound.
pub const CORRELATOR_TOL: f64 = 1e-9;

/// The joint distribution over +/-1 outcomes of an ordered measurement run:
/// Alice's sequence first, then any distant measurements.
///
/// Outcome tuples are indexed with the first measurement as the most
/// significant bit; outcome +1 maps to bit 0.
#[derive(Debug, Clone)]
pub struct JointOutcomeDistribution {
    names: Vec<String>,
    n_alice: usize,
    probs: Vec<f64>,
}

fn index_of(outcomes: &[i8]) -> usize {
    outcomes
        .iter()
        .fold(0, |acc, &o| (acc << 1) | usize::from(o < 0))
}

fn outcomes_of(index: usize, len: usize) -> Vec<i8> {
    (0..len)
        .map(|slot| {
            if index >> (len - 1 - slot) & 1 == 0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

impl JointOutcomeDistribution {
    /// Number of measurements in the run.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// How many of the measurements belong to Alice's sequence.
    pub fn n_alice(&self) -> usize {
        self.n_alice
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Probability of one outcome tuple, given as +/-1 per slot.
    pub fn prob(&self, outcomes: &[i8]) -> f64 {
        assert_eq!(outcomes.len(), self.len(), "outcome tuple length");
        self.probs[index_of(outcomes)]
    }

    /// All outcome tuples with their probabilities, +1 branches first.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<i8>, f64)> + '_ {
        let len = self.len();
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (outcomes_of(i, len), p))
    }

    /// Probability that the measurement at `slot` gave +1.
    pub fn marginal_plus(&self, slot: usize) -> f64 {
        self.iter()
            .filter(|(o, _)| o[slot] > 0)
            .map(|(_, p)| p)
            .sum()
    }

    /// Expectation of the product of the outcomes at the given slots.
    pub fn expectation(&self, slots: &[usize]) -> f64 {
        self.iter()
            .map(|(o, p)| {
                let sign: i32 = slots.iter().map(|&s| i32::from(o[s])).product();
                f64::from(sign) * p
            })
            .sum()
    }
}

/// Measures `sequence` in order on the state, then the distant observables,
/// collapsing with the projection postulate at every step.
///
/// Works for any observables on the state's register; compatibility is not
/// required (and order independence only holds when they commute).
pub fn joint_distribution(
    state: &QuantumState,
    sequence: &[&Observable],
    distant: &[&Observable],
) -> Result<JointOutcomeDistribution> {
    let n = state.n_qubits();
    let mut projectors = Vec::new();
    let mut names = Vec::new();
    for o in sequence.iter().chain(distant.iter()) {
        projectors.push(o.embedded_projectors(n)?);
        names.push(o.name().to_string());
    }

    let mut branches = vec![state.rho().clone()];
    for (plus, minus) in &projectors {
        let mut next = Vec::with_capacity(branches.len() * 2);
        for sigma in &branches {
            next.push(plus.matmul(sigma).matmul(plus));
            next.push(minus.matmul(sigma).matmul(minus));
        }
        branches = next;
    }

    let mut probs = Vec::with_capacity(branches.len());
    let mut total = 0.0;
    for sigma in &branches {
        let mut p = sigma.trace().re;
        if p < -PROB_CLAMP {
            return Err(CtxError::NegativeProbability(p));
        }
        if p.abs() < PROB_CLAMP {
            p = 0.0;
        }
        probs.push(p);
        total += p;
    }
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(CtxError::Unnormalized(total));
    }

    Ok(JointOutcomeDistribution {
        names,
        n_alice: sequence.len(),
        probs,
    })
}

/// Evaluates one signed correlator on the state.
pub fn correlation(
    state: &QuantumState,
    square: &MerminSquare,
    settings: Option<&DistantSettings>,
    spec: &CorrelationSpec,
) -> Result<f64> {
    let alice: Vec<&Observable> = spec
        .sequence
        .iter()
        .map(|&o| square.observable(o))
        .collect();
    let mut distant = Vec::with_capacity(spec.distant.len());
    for &d in &spec.distant {
        let settings = settings.ok_or_else(|| CtxError::MissingDistant(d.to_string()))?;
        distant.push(settings.get(d)?);
    }
    let dist = joint_distribution(state, &alice, &distant)?;
    let mut slots = spec.product_mask.clone();
    slots.extend((0..spec.distant.len()).map(|j| dist.n_alice() + j));
    Ok(f64::from(spec.sign) * dist.expectation(&slots))
}

/// Every term of an expression evaluated on one state.
#[derive(Debug, Clone)]
pub struct EvaluationReport {
    pub name: String,
    pub per_term: Vec<(String, f64)>,
    pub total: f64,
    pub classical_bound: i64,
    pub violated: bool,
}

pub fn evaluate_expression(
    state: &QuantumState,
    square: &MerminSquare,
    settings: Option<&DistantSettings>,
    expr: &InequalityExpression,
) -> Result<EvaluationReport> {
    let mut per_term = Vec::with_capacity(expr.terms.len());
    let mut total = 0.0;
    for term in &expr.terms {
        let value = correlation(state, square, settings, term)?;
        total += value;
        per_term.push((term.label.clone(), value));
    }
    Ok(EvaluationReport {
        name: expr.name.clone(),
        per_term,
        total,
        classical_bound: expr.classical_bound,
        violated: total > expr.classical_bound as f64 + CORRELATOR_TOL,
    })
}

fn permutations_of_three() -> [[usize; 3]; 6] {
    [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

/// Worst-case shift of any single-observable marginal when the observable is
/// measured inside a context, over all six contexts and all orderings.
///
/// Zero (up to numerics) certifies no-disturbance: compatible company never
/// moves a marginal.
pub fn no_disturbance_check(state: &QuantumState, square: &MerminSquare) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for ctx in square.contexts() {
        let obs = ctx.map(|o| square.observable(o));
        let mut alone = [0.0; 3];
        for (i, o) in obs.iter().enumerate() {
            alone[i] = joint_distribution(state, &[o], &[])?.marginal_plus(0);
        }
        for perm in permutations_of_three() {
            let ordered = perm.map(|i| obs[i]);
            let dist = joint_distribution(state, &ordered, &[])?;
            for (slot, &i) in perm.iter().enumerate() {
                worst = worst.max((dist.marginal_plus(slot) - alone[i]).abs());
            }
        }
    }
    Ok(worst)
}

/// Worst-case difference between the joint distribution of a context and the
/// same distribution measured in a different order, over all six contexts
/// and all orderings, with outcome tuples aligned before comparing.
pub fn order_invariance_check(state: &QuantumState, square: &MerminSquare) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for ctx in square.contexts() {
        let obs = ctx.map(|o| square.observable(o));
        let base = joint_distribution(state, &obs, &[])?;
        for perm in permutations_of_three() {
            let ordered = perm.map(|i| obs[i]);
            let dist = joint_distribution(state, &ordered, &[])?;
            for (outcomes, p) in base.iter() {
                let permuted: Vec<i8> = perm.iter().map(|&i| outcomes[i]).collect();
                worst = worst.max((dist.prob(&permuted) - p).abs());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{
        bob_settings_singlet, expression_s, expression_t, singlet_state, MerminObs, Party,
    };
    use crate::tensor::pauli_string_from_str;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn plus_state() -> QuantumState {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        QuantumState::pure(&[h, h], vec![Party::Alice]).unwrap()
    }

    #[test]
    fn single_z_on_plus_state_is_a_coin_flip() {
        let z = pauli_string_from_str("z").unwrap();
        let dist = joint_distribution(&plus_state(), &[&z], &[]).unwrap();
        assert_abs_diff_eq!(dist.prob(&[1]), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(dist.prob(&[-1]), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(dist.expectation(&[0]), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn repeated_measurement_is_reproducible() {
        // measuring z twice in a row never flips the outcome
        let z = pauli_string_from_str("z").unwrap();
        let dist = joint_distribution(&plus_state(), &[&z, &z], &[]).unwrap();
        assert_abs_diff_eq!(dist.prob(&[1, -1]), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dist.prob(&[-1, 1]), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dist.prob(&[1, 1]), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn noncommuting_sequence_randomizes_the_second_outcome() {
        let z = pauli_string_from_str("z").unwrap();
        let x = pauli_string_from_str("x").unwrap();
        let dist = joint_distribution(&plus_state(), &[&x, &z], &[]).unwrap();
        // x gives +1 surely, then z is an unbiased coin
        assert_abs_diff_eq!(dist.prob(&[1, 1]), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(dist.prob(&[1, -1]), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(dist.marginal_plus(0), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn context_outcomes_obey_the_product_rule() {
        // in (C, A, B) the three outcomes always multiply to +1
        let state = singlet_state(PI / 8.0, 0.7).unwrap();
        let square = MerminSquare::new();
        let obs = [MerminObs::C, MerminObs::A, MerminObs::B].map(|o| square.observable(o));
        let dist = joint_distribution(&state, &obs, &[]).unwrap();
        for (outcomes, p) in dist.iter() {
            let prod: i32 = outcomes.iter().map(|&o| i32::from(o)).product();
            if prod < 0 {
                assert_abs_diff_eq!(p, 0.0, epsilon = 1e-12);
            }
        }
        assert_abs_diff_eq!(dist.expectation(&[0, 1, 2]), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn conditioning_on_a_compatible_first_measurement_changes_nothing() {
        // <AB> within the sequence (C, A, B) equals Tr[rho (A B)] because the
        // context commutes, even on a noisy state
        let state = singlet_state(PI / 8.0, 0.7).unwrap();
        let square = MerminSquare::new();
        let spec = CorrelationSpec {
            sequence: vec![MerminObs::C, MerminObs::A, MerminObs::B],
            product_mask: vec![1, 2],
            distant: vec![],
            sign: 1,
            label: "test".into(),
        };
        let sequential = correlation(&state, &square, None, &spec).unwrap();
        let a = square.observable(MerminObs::A).embed(3).unwrap();
        let b = square.observable(MerminObs::B).embed(3).unwrap();
        let direct = state.rho().matmul(&a.matmul(&b)).trace().re;
        assert_abs_diff_eq!(sequential, direct, epsilon = 1e-12);
    }

    #[test]
    fn no_disturbance_holds_on_a_noisy_state() {
        let state = singlet_state(PI / 8.0, 0.6).unwrap();
        let square = MerminSquare::new();
        let dev = no_disturbance_check(&state, &square).unwrap();
        assert!(dev < 1e-12, "marginal shift {dev}");
    }

    #[test]
    fn order_invariance_holds_within_contexts() {
        let state = singlet_state(PI / 8.0, 0.85).unwrap();
        let square = MerminSquare::new();
        let dev = order_invariance_check(&state, &square).unwrap();
        assert!(dev < 1e-12, "distribution shift {dev}");
    }

    #[test]
    fn distant_terms_require_settings() {
        let state = singlet_state(PI / 8.0, 1.0).unwrap();
        let square = MerminSquare::new();
        let expr = expression_s();
        let err = evaluate_expression(&state, &square, None, &expr).unwrap_err();
        assert!(matches!(err, CtxError::MissingDistant(_)));
    }

    #[test]
    fn product_expression_needs_no_settings() {
        let state = singlet_state(PI / 8.0, 1.0).unwrap();
        let square = MerminSquare::new();
        let report = evaluate_expression(&state, &square, None, &expression_t()).unwrap();
        assert_abs_diff_eq!(report.total, 12.0, epsilon = 1e-9);
        assert!(report.violated);
    }

    #[test]
    fn conditioned_expression_on_the_singlet() {
        let state = singlet_state(PI / 8.0, 1.0).unwrap();
        let square = MerminSquare::new();
        let settings = bob_settings_singlet();
        let report =
            evaluate_expression(&state, &square, Some(&settings), &expression_s()).unwrap();
        assert_abs_diff_eq!(report.total, 4.0 + 2.0 * 2.0f64.sqrt(), epsilon = 1e-9);
        assert!(!report.violated, "S stays below its local bound 12");
    }
}
