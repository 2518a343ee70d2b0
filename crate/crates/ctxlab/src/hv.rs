//! Hidden-variable bound oracles: exhaustive enumeration of deterministic
//! noncontextual models, order-dependent local models, an exactly rational
//! behavior table, and the algebraic relations that tie the expressions to
//! the Bell sums.
//!
//! Everything here is exact integer or rational arithmetic; no floats.

use crate::error::{CtxError, Result};
use crate::scenario::{
    bell_sum_bipartite, bell_sum_tripartite, expression_s, expression_s_prime, expression_t,
    DistantObs, InequalityExpression, MerminObs, SeqInfo, SEQ_TABLE, S_ORDER,
};
use num_rational::Rational64;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// Sign of bit `pos` (counted from the left) in an enumeration index of the
/// given width: 0 maps to -1, so ascending indices walk assignments in
/// lexicographic order with -1 before +1.
fn bit_sign(index: u64, pos: usize, width: usize) -> i8 {
    if index >> (width - 1 - pos) & 1 == 1 {
        1
    } else {
        -1
    }
}

/// One deterministic noncontextual model: a fixed +/-1 value per observable,
/// independent of measurement company and order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCAssignment {
    pub values: BTreeMap<MerminObs, i8>,
    pub distant: BTreeMap<DistantObs, i8>,
}

/// Value of an expression under a noncontextual assignment. Only the slots
/// in each term's product mask contribute; a conditioning measurement drops
/// out because its fixed outcome is marginalized away.
pub fn nc_value(expr: &InequalityExpression, assign: &NCAssignment) -> Result<i64> {
    let mut total = 0i64;
    for term in &expr.terms {
        let mut v = i64::from(term.sign);
        for &slot in &term.product_mask {
            let obs = term.sequence[slot];
            let val = assign
                .values
                .get(&obs)
                .ok_or_else(|| CtxError::UnknownLabel(obs.to_string()))?;
            v *= i64::from(*val);
        }
        for d in &term.distant {
            let val = assign
                .distant
                .get(d)
                .ok_or_else(|| CtxError::UnknownLabel(d.to_string()))?;
            v *= i64::from(*val);
        }
        total += v;
    }
    Ok(total)
}

/// Result of an exhaustive scan: the maximum, the lexicographically smallest
/// assignment reaching it, and how many models were enumerated.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub value: i64,
    pub witness: NCAssignment,
    pub points: u64,
}

fn involved_labels(expr: &InequalityExpression) -> (Vec<MerminObs>, Vec<DistantObs>) {
    let mut alice = BTreeSet::new();
    let mut distant = BTreeSet::new();
    for term in &expr.terms {
        for &slot in &term.product_mask {
            alice.insert(term.sequence[slot]);
        }
        for &d in &term.distant {
            distant.insert(d);
        }
    }
    (alice.into_iter().collect(), distant.into_iter().collect())
}

// sign, positions of Alice factors, positions of distant factors; positions
// index the concatenated (alice labels, distant labels) bit layout
struct CompiledTerm {
    sign: i64,
    factors: Vec<usize>,
}

fn compile_terms(
    expr: &InequalityExpression,
    alice: &[MerminObs],
    distant: &[DistantObs],
) -> Vec<CompiledTerm> {
    expr.terms
        .iter()
        .map(|term| {
            let mut factors: Vec<usize> = term
                .product_mask
                .iter()
                .map(|&slot| {
                    alice
                        .iter()
                        .position(|&o| o == term.sequence[slot])
                        .expect("label collected")
                })
                .collect();
            factors.extend(term.distant.iter().map(|d| {
                alice.len()
                    + distant
                        .iter()
                        .position(|x| x == d)
                        .expect("label collected")
            }));
            CompiledTerm {
                sign: i64::from(term.sign),
                factors,
            }
        })
        .collect()
}

fn eval_compiled(terms: &[CompiledTerm], index: u64, width: usize) -> i64 {
    terms
        .iter()
        .map(|t| {
            t.factors
                .iter()
                .fold(t.sign, |acc, &p| acc * i64::from(bit_sign(index, p, width)))
        })
        .sum()
}

fn nc_assignment_from_index(
    alice: &[MerminObs],
    distant: &[DistantObs],
    index: u64,
) -> NCAssignment {
    let width = alice.len() + distant.len();
    NCAssignment {
        values: alice
            .iter()
            .enumerate()
            .map(|(i, &o)| (o, bit_sign(index, i, width)))
            .collect(),
        distant: distant
            .iter()
            .enumerate()
            .map(|(j, &d)| (d, bit_sign(index, alice.len() + j, width)))
            .collect(),
    }
}

fn nc_scan(expr: &InequalityExpression, parallel: bool) -> BoundReport {
    let (alice, distant) = involved_labels(expr);
    let width = alice.len() + distant.len();
    let terms = compile_terms(expr, &alice, &distant);
    let points = 1u64 << width;

    let better = |a: (i64, u64), b: (i64, u64)| {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    let seed = (i64::MIN, u64::MAX);
    let (value, best_index) = if parallel {
        (0..points)
            .into_par_iter()
            .map(|i| (eval_compiled(&terms, i, width), i))
            .reduce(|| seed, better)
    } else {
        (0..points)
            .map(|i| (eval_compiled(&terms, i, width), i))
            .fold(seed, better)
    };

    BoundReport {
        value,
        witness: nc_assignment_from_index(&alice, &distant, best_index),
        points,
    }
}

/// Maximum of an expression over every deterministic noncontextual model of
/// the labels it involves.
pub fn max_noncontextual(expr: &InequalityExpression) -> BoundReport {
    nc_scan(expr, true)
}

/// Single-threaded twin of [`max_noncontextual`]; must agree with it
/// (including the witness).
pub fn max_noncontextual_serial(expr: &InequalityExpression) -> BoundReport {
    nc_scan(expr, false)
}

/// Outcome-triple probabilities for one context.
pub type ContextProbs = BTreeMap<[i8; 3], Rational64>;

/// A context's observables together with its outcome probabilities.
pub type ContextRow = ([MerminObs; 3], ContextProbs);

/// Input form of one context: observables plus an outcome probability list.
pub type ContextSpec = ([MerminObs; 3], Vec<([i8; 3], Rational64)>);

/// A probability assignment to the outcome triples of each context, with
/// exact rational weights.
#[derive(Debug, Clone)]
pub struct BehaviorTable {
    contexts: Vec<ContextRow>,
}

impl BehaviorTable {
    pub fn new(rows: Vec<ContextSpec>) -> Result<Self> {
        let mut contexts = Vec::with_capacity(rows.len());
        for (obs, entries) in rows {
            let mut probs = BTreeMap::new();
            let mut sum = Rational64::new(0, 1);
            for (outcome, p) in entries {
                if outcome.iter().any(|&o| o != 1 && o != -1) {
                    return Err(CtxError::BadTable(format!(
                        "outcome {outcome:?} is not a +/-1 triple"
                    )));
                }
                if p < Rational64::new(0, 1) {
                    return Err(CtxError::BadTable(format!(
                        "negative probability {p} in context {obs:?}"
                    )));
                }
                if probs.insert(outcome, p).is_some() {
                    return Err(CtxError::BadTable(format!(
                        "duplicate outcome {outcome:?} in context {obs:?}"
                    )));
                }
                sum += p;
            }
            if sum != Rational64::new(1, 1) {
                return Err(CtxError::BadTable(format!(
                    "context {obs:?} probabilities sum to {sum}, not 1"
                )));
            }
            contexts.push((obs, probs));
        }
        Ok(BehaviorTable { contexts })
    }

    /// The order-independent table that reaches 12 in the conditioned
    /// expressions: each context is an even coin flip between one outcome
    /// triple and its negation, chosen so every term contributes +1.
    pub fn s_maximal() -> Self {
        use MerminObs::*;
        let half = Rational64::new(1, 2);
        let flip = |obs: [MerminObs; 3], first: [i8; 3]| {
            let negated = [-first[0], -first[1], -first[2]];
            (obs, vec![(first, half), (negated, half)])
        };
        BehaviorTable::new(vec![
            flip([A, B, C], [1, 1, 1]),
            flip([LowA, LowB, LowC], [1, 1, -1]),
            flip([Alpha, Beta, Gamma], [1, 1, 1]),
            flip([A, LowA, Alpha], [1, -1, 1]),
            flip([B, LowB, Beta], [1, 1, 1]),
            flip([C, LowC, Gamma], [1, -1, 1]),
        ])
        .expect("fixed table is valid")
    }

    pub fn contexts(&self) -> &[ContextRow] {
        &self.contexts
    }

    fn marginal_plus(&self, ctx: usize, pos: usize) -> Rational64 {
        self.contexts[ctx]
            .1
            .iter()
            .filter(|(outcome, _)| outcome[pos] > 0)
            .map(|(_, &p)| p)
            .sum()
    }

    /// Largest discrepancy between the marginals of one observable across
    /// the contexts that contain it; exactly zero certifies no-disturbance.
    pub fn no_disturbance(&self) -> Rational64 {
        let mut worst = Rational64::new(0, 1);
        for o in MerminObs::ALL {
            let marginals: Vec<Rational64> = self
                .contexts
                .iter()
                .enumerate()
                .filter_map(|(c, (obs, _))| {
                    obs.iter()
                        .position(|&x| x == o)
                        .map(|p| self.marginal_plus(c, p))
                })
                .collect();
            for i in 0..marginals.len() {
                for j in (i + 1)..marginals.len() {
                    let mut d = marginals[i] - marginals[j];
                    if d < Rational64::new(0, 1) {
                        d = -d;
                    }
                    worst = worst.max(d);
                }
            }
        }
        worst
    }

    /// Exact value of an expression on the table, with fixed +/-1 values for
    /// any distant labels. Each term's sequence must fit inside one context.
    pub fn evaluate(
        &self,
        expr: &InequalityExpression,
        distant: &BTreeMap<DistantObs, i8>,
    ) -> Result<Rational64> {
        let mut total = Rational64::new(0, 1);
        for term in &expr.terms {
            let (obs, probs) = self
                .contexts
                .iter()
                .find(|(obs, _)| term.sequence.iter().all(|s| obs.contains(s)))
                .ok_or_else(|| {
                    CtxError::BadTable(format!("no context contains sequence of {}", term.label))
                })?;
            let positions: Vec<usize> = term
                .product_mask
                .iter()
                .map(|&slot| {
                    obs.iter()
                        .position(|&x| x == term.sequence[slot])
                        .expect("all sequence members found")
                })
                .collect();
            let mut d_factor = i64::from(term.sign);
            for d in &term.distant {
                let v = distant
                    .get(d)
                    .ok_or_else(|| CtxError::UnknownLabel(d.to_string()))?;
                d_factor *= i64::from(*v);
            }
            let mut expectation = Rational64::new(0, 1);
            for (outcome, &p) in probs {
                let prod: i64 = positions.iter().map(|&p| i64::from(outcome[p])).product();
                expectation += p * Rational64::new(prod, 1);
            }
            total += expectation * Rational64::new(d_factor, 1);
        }
        Ok(total)
    }
}

/// One deterministic order-dependent local model: a fixed value for each
/// observable measured first, free values for the two later slots of every
/// sequence, and fixed distant values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVAssignment {
    pub fresh: BTreeMap<MerminObs, i8>,
    pub later: [[i8; 2]; 12],
    pub distant: BTreeMap<DistantObs, i8>,
}

/// Which expression an order-dependent local scan maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhvtTarget {
    T,
    S,
    SPrime,
    TPlusS,
    TPlusSPrime,
}

impl LhvtTarget {
    fn includes_t(self) -> bool {
        matches!(
            self,
            LhvtTarget::T | LhvtTarget::TPlusS | LhvtTarget::TPlusSPrime
        )
    }

    fn includes_s(self) -> bool {
        !matches!(self, LhvtTarget::T)
    }

    fn tripartite(self) -> bool {
        matches!(self, LhvtTarget::SPrime | LhvtTarget::TPlusSPrime)
    }

    fn distant_labels(self) -> Vec<DistantObs> {
        if !self.includes_s() {
            vec![]
        } else if self.tripartite() {
            DistantObs::ALL.to_vec()
        } else {
            vec![DistantObs::P, DistantObs::Q]
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LhvtTarget::T => "T",
            LhvtTarget::S => "S",
            LhvtTarget::SPrime => "S'",
            LhvtTarget::TPlusS => "T+S",
            LhvtTarget::TPlusSPrime => "T+S'",
        }
    }
}

/// The observables that appear first in some sequence, in canonical order.
pub fn fresh_labels() -> Vec<MerminObs> {
    let set: BTreeSet<MerminObs> = SEQ_TABLE.iter().map(|info| info.seq[0]).collect();
    set.into_iter().collect()
}

fn seq_distant_product(
    info: &SeqInfo,
    tripartite: bool,
    distant: &BTreeMap<DistantObs, i8>,
) -> Result<i64> {
    let labels: &[DistantObs] = if tripartite {
        &info.sp_distant
    } else {
        std::slice::from_ref(&info.s_distant)
    };
    let mut d = 1i64;
    for label in labels {
        let v = distant
            .get(label)
            .ok_or_else(|| CtxError::UnknownLabel(label.to_string()))?;
        d *= i64::from(*v);
    }
    Ok(d)
}

/// Value of the target expression under an order-dependent local model.
pub fn lhvt_value(target: LhvtTarget, assign: &HVAssignment) -> Result<i64> {
    let mut total = 0i64;
    for (j, info) in SEQ_TABLE.iter().enumerate() {
        let f = *assign
            .fresh
            .get(&info.seq[0])
            .ok_or_else(|| CtxError::UnknownLabel(info.seq[0].to_string()))?;
        let w = i64::from(assign.later[j][0]) * i64::from(assign.later[j][1]);
        if target.includes_t() {
            total += i64::from(info.t_sign) * i64::from(f) * w;
        }
        if target.includes_s() {
            let d = seq_distant_product(info, target.tripartite(), &assign.distant)?;
            total += i64::from(info.s_sign) * w * d;
        }
    }
    Ok(total)
}

/// Result of maximizing over all order-dependent local models.
#[derive(Debug, Clone)]
pub struct LhvtBoundReport {
    pub value: i64,
    pub witness: HVAssignment,
    pub points: u64,
}

fn lhvt_scan(target: LhvtTarget, parallel: bool) -> LhvtBoundReport {
    let fresh = fresh_labels();
    let distant = target.distant_labels();
    let width = fresh.len() + distant.len();
    let points = 1u64 << width;

    // per sequence: index of its first observable among the fresh labels and
    // of its distant labels among the involved ones
    let seq_fresh: Vec<usize> = SEQ_TABLE
        .iter()
        .map(|info| fresh.iter().position(|&o| o == info.seq[0]).expect("fresh"))
        .collect();
    let seq_distant: Vec<Vec<usize>> = SEQ_TABLE
        .iter()
        .map(|info| {
            let labels: &[DistantObs] = if target.tripartite() {
                &info.sp_distant
            } else {
                std::slice::from_ref(&info.s_distant)
            };
            if !target.includes_s() {
                vec![]
            } else {
                labels
                    .iter()
                    .map(|d| fresh.len() + distant.iter().position(|x| x == d).expect("distant"))
                    .collect()
            }
        })
        .collect();

    // the later pair of sequence j only enters through its product w; the
    // best w contributes |t f + s d|, so the outer scan is exact
    let value_at = |index: u64| -> i64 {
        let mut total = 0i64;
        for (j, info) in SEQ_TABLE.iter().enumerate() {
            let f = i64::from(bit_sign(index, seq_fresh[j], width));
            let mut c = 0i64;
            if target.includes_t() {
                c += i64::from(info.t_sign) * f;
            }
            if target.includes_s() {
                let d: i64 = seq_distant[j]
                    .iter()
                    .map(|&p| i64::from(bit_sign(index, p, width)))
                    .product();
                c += i64::from(info.s_sign) * d;
            }
            total += c.abs();
        }
        total
    };

    let better = |a: (i64, u64), b: (i64, u64)| {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    let seed = (i64::MIN, u64::MAX);
    let (value, best_index) = if parallel {
        (0..points)
            .into_par_iter()
            .map(|i| (value_at(i), i))
            .reduce(|| seed, better)
    } else {
        (0..points).map(|i| (value_at(i), i)).fold(seed, better)
    };

    // reconstruct the later pairs: the smallest pair with the product that
    // realizes |c|, or all -1 where the contribution vanishes either way
    let fresh_map: BTreeMap<MerminObs, i8> = fresh
        .iter()
        .enumerate()
        .map(|(i, &o)| (o, bit_sign(best_index, i, width)))
        .collect();
    let distant_map: BTreeMap<DistantObs, i8> = distant
        .iter()
        .enumerate()
        .map(|(j, &d)| (d, bit_sign(best_index, fresh.len() + j, width)))
        .collect();
    let mut later = [[-1i8; 2]; 12];
    for (j, info) in SEQ_TABLE.iter().enumerate() {
        let mut c = 0i64;
        if target.includes_t() {
            c += i64::from(info.t_sign) * i64::from(fresh_map[&info.seq[0]]);
        }
        if target.includes_s() {
            let d: i64 = seq_distant[j]
                .iter()
                .map(|&p| i64::from(bit_sign(best_index, p, width)))
                .product();
            c += i64::from(info.s_sign) * d;
        }
        if c < 0 {
            later[j] = [-1, 1];
        }
    }

    LhvtBoundReport {
        value,
        witness: HVAssignment {
            fresh: fresh_map,
            later,
            distant: distant_map,
        },
        points,
    }
}

/// Maximum of the target over every order-dependent local model. The two
/// later slots of each sequence are optimized in closed form, so only fresh
/// and distant values are enumerated.
pub fn max_lhvt(target: LhvtTarget) -> LhvtBoundReport {
    lhvt_scan(target, true)
}

/// Single-threaded twin of [`max_lhvt`].
pub fn max_lhvt_serial(target: LhvtTarget) -> LhvtBoundReport {
    lhvt_scan(target, false)
}

/// Outcome of checking one pointwise inequality over all deterministic
/// assignments of its variables.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub name: String,
    pub holds: bool,
    pub points: u64,
    pub counterexample: Option<String>,
}

/// Deliberate ways to break a relation, used as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    None,
    /// Flip the conditioned-term sign of the first sequence in each pair.
    FlipTermSign,
    /// Drop the additive slack from the right-hand side.
    DropSlack,
}

fn join_terms<I: IntoIterator<Item = String>>(labels: I) -> String {
    let mut out = String::new();
    for (k, label) in labels.into_iter().enumerate() {
        if k == 0 {
            out.push_str(&label);
        } else if let Some(rest) = label.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&label);
        }
    }
    out
}

/// Checks the six per-context-pair inequalities that prove the bound on
/// T plus the conditioned expression: summed over the pairs, the right-hand
/// sides add up to that expression minus 12 and the left-hand sides to the
/// Bell sum, giving T + S <= Bell sum + 12 <= 18.
///
/// Every inequality is verified pointwise over all assignments of its
/// variables: the two fresh values, the four later-slot values, and the
/// distant values it involves.
pub fn check_algebraic_relations(tripartite: bool, corruption: Corruption) -> Vec<RelationReport> {
    let bell = if tripartite {
        bell_sum_tripartite()
    } else {
        bell_sum_bipartite()
    };
    let s_expr = if tripartite {
        expression_s_prime()
    } else {
        expression_s()
    };
    let t_expr = expression_t();

    let mut reports = Vec::with_capacity(6);
    for pair in 0..6 {
        let idx = [2 * pair, 2 * pair + 1];
        let infos = idx.map(|i| &SEQ_TABLE[i]);

        let seq_distant: Vec<Vec<DistantObs>> = infos
            .iter()
            .map(|info| {
                if tripartite {
                    info.sp_distant.to_vec()
                } else {
                    vec![info.s_distant]
                }
            })
            .collect();
        let involved: Vec<DistantObs> = seq_distant
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        // Bell sign and label for (fresh observable, distant set) of each sequence
        let bell_terms: Vec<(&crate::scenario::CorrelationSpec, i64)> = infos
            .iter()
            .zip(&seq_distant)
            .map(|(info, dset)| {
                let term = bell
                    .terms
                    .iter()
                    .find(|t| t.sequence == [info.seq[0]] && t.distant == *dset)
                    .expect("every (fresh, distant) pair appears in the Bell sum");
                (term, i64::from(term.sign))
            })
            .collect();

        let s_sign = |k: usize| -> i64 {
            let sign = i64::from(infos[k].s_sign);
            if corruption == Corruption::FlipTermSign && k == 0 {
                -sign
            } else {
                sign
            }
        };
        let slack = if corruption == Corruption::DropSlack {
            0
        } else {
            2
        };

        // variable layout: f0, f1, u(0,1), u(0,2), u(1,1), u(1,2), distant...
        let width = 6 + involved.len();
        let points = 1u64 << width;
        let mut holds = true;
        let mut counterexample = None;

        for index in 0..points {
            let f = [bit_sign(index, 0, width), bit_sign(index, 1, width)];
            let u = [
                [bit_sign(index, 2, width), bit_sign(index, 3, width)],
                [bit_sign(index, 4, width), bit_sign(index, 5, width)],
            ];
            let dval: BTreeMap<DistantObs, i8> = involved
                .iter()
                .enumerate()
                .map(|(i, &d)| (d, bit_sign(index, 6 + i, width)))
                .collect();

            let dprod =
                |k: usize| -> i64 { seq_distant[k].iter().map(|d| i64::from(dval[d])).product() };
            let lhs: i64 = (0..2)
                .map(|k| bell_terms[k].1 * i64::from(f[k]) * dprod(k))
                .sum();
            let rhs_terms: i64 = (0..2)
                .map(|k| {
                    let w = i64::from(u[k][0]) * i64::from(u[k][1]);
                    let t = i64::from(infos[k].t_sign) * i64::from(f[k]) * w;
                    t + s_sign(k) * w * dprod(k)
                })
                .sum();

            if lhs < rhs_terms - slack {
                holds = false;
                if counterexample.is_none() {
                    let mut parts: Vec<String> = (0..2)
                        .map(|k| {
                            format!(
                                "{}={:+}, later{:?}={:+},{:+}",
                                infos[k].seq[0], f[k], infos[k].seq, u[k][0], u[k][1]
                            )
                        })
                        .collect();
                    parts.extend(involved.iter().map(|d| format!("{d}={:+}", dval[d])));
                    counterexample = Some(format!(
                        "{}: lhs {} < rhs {} - {}",
                        parts.join(", "),
                        lhs,
                        rhs_terms,
                        slack
                    ));
                }
            }
        }

        let lhs_labels: Vec<String> = bell_terms.iter().map(|(t, _)| t.label.clone()).collect();
        let rhs_labels: Vec<String> = idx
            .iter()
            .flat_map(|&i| {
                let s_pos = S_ORDER.iter().position(|&k| k == i).expect("in order");
                [
                    t_expr.terms[i].label.clone(),
                    s_expr.terms[s_pos].label.clone(),
                ]
            })
            .collect();
        reports.push(RelationReport {
            name: format!(
                "{} >= {} - 2",
                join_terms(lhs_labels),
                join_terms(rhs_labels)
            ),
            holds,
            points,
            counterexample,
        });
    }
    reports
}

/// The six inequalities without corruption.
pub fn verify_algebraic_relations(tripartite: bool) -> Vec<RelationReport> {
    check_algebraic_relations(tripartite, Corruption::None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{chsh_expressions, expression_t_plus_s, expression_t_plus_s_prime};

    #[test]
    fn product_expression_noncontextual_maximum_is_8() {
        let report = max_noncontextual(&expression_t());
        assert_eq!(report.value, 8);
        assert_eq!(report.points, 1 << 9);
        assert_eq!(nc_value(&expression_t(), &report.witness).unwrap(), 8);
    }

    #[test]
    fn conditioned_expression_noncontextual_maximum_is_10() {
        let report = max_noncontextual(&expression_s());
        assert_eq!(report.value, 10);
        assert_eq!(report.points, 1 << 11);
    }

    #[test]
    fn four_qubit_expression_noncontextual_maximum_is_10() {
        let report = max_noncontextual(&expression_s_prime());
        assert_eq!(report.value, 10);
        assert_eq!(report.points, 1 << 13);
    }

    #[test]
    fn joint_noncontextual_maxima_are_18() {
        assert_eq!(max_noncontextual(&expression_t_plus_s()).value, 18);
        assert_eq!(max_noncontextual(&expression_t_plus_s_prime()).value, 18);
    }

    #[test]
    fn serial_and_parallel_scans_agree_with_witnesses() {
        for expr in [expression_t(), expression_s(), expression_t_plus_s()] {
            let par = max_noncontextual(&expr);
            let ser = max_noncontextual_serial(&expr);
            assert_eq!(par.value, ser.value, "{}", expr.name);
            assert_eq!(par.witness, ser.witness, "{}", expr.name);
            assert_eq!(
                nc_value(&expr, &par.witness).unwrap(),
                par.value,
                "{}",
                expr.name
            );
        }
    }

    #[test]
    fn chsh_and_bell_sum_maxima() {
        for chsh in chsh_expressions() {
            assert_eq!(max_noncontextual(&chsh).value, 2, "{}", chsh.name);
        }
        assert_eq!(max_noncontextual(&bell_sum_bipartite()).value, 6);
        assert_eq!(max_noncontextual(&bell_sum_tripartite()).value, 6);
    }

    #[test]
    fn all_plus_assignment_scores_8_and_6() {
        // regression for the sign bookkeeping: with every value +1 the
        // product expression hits its bound but three conditioned terms
        // come with a minus sign
        let assign = NCAssignment {
            values: MerminObs::ALL.iter().map(|&o| (o, 1)).collect(),
            distant: DistantObs::ALL.iter().map(|&d| (d, 1)).collect(),
        };
        assert_eq!(nc_value(&expression_t(), &assign).unwrap(), 8);
        assert_eq!(nc_value(&expression_s(), &assign).unwrap(), 6);
    }

    #[test]
    fn behavior_table_is_exactly_nondisturbing() {
        let table = BehaviorTable::s_maximal();
        assert_eq!(table.no_disturbance(), Rational64::new(0, 1));
    }

    #[test]
    fn behavior_table_reaches_12_in_both_conditioned_expressions() {
        let table = BehaviorTable::s_maximal();
        let plus: BTreeMap<DistantObs, i8> = DistantObs::ALL.iter().map(|&d| (d, 1)).collect();
        assert_eq!(
            table.evaluate(&expression_s(), &plus).unwrap(),
            Rational64::new(12, 1)
        );
        assert_eq!(
            table.evaluate(&expression_s_prime(), &plus).unwrap(),
            Rational64::new(12, 1)
        );
    }

    #[test]
    fn behavior_table_rejects_bad_probabilities() {
        use MerminObs::*;
        let bad = BehaviorTable::new(vec![([A, B, C], vec![([1, 1, 1], Rational64::new(2, 3))])]);
        assert!(matches!(bad, Err(CtxError::BadTable(_))));
    }

    #[test]
    fn order_dependent_maxima() {
        assert_eq!(max_lhvt(LhvtTarget::T).value, 12);
        assert_eq!(max_lhvt(LhvtTarget::S).value, 12);
        assert_eq!(max_lhvt(LhvtTarget::SPrime).value, 12);
        assert_eq!(max_lhvt(LhvtTarget::TPlusS).value, 18);
        assert_eq!(max_lhvt(LhvtTarget::TPlusSPrime).value, 18);
    }

    #[test]
    fn order_dependent_witnesses_reproduce_their_maxima() {
        for target in [
            LhvtTarget::T,
            LhvtTarget::S,
            LhvtTarget::SPrime,
            LhvtTarget::TPlusS,
            LhvtTarget::TPlusSPrime,
        ] {
            let par = max_lhvt(target);
            let ser = max_lhvt_serial(target);
            assert_eq!(par.value, ser.value, "{}", target.name());
            assert_eq!(par.witness, ser.witness, "{}", target.name());
            assert_eq!(
                lhvt_value(target, &par.witness).unwrap(),
                par.value,
                "{}",
                target.name()
            );
        }
    }

    #[test]
    fn fresh_labels_are_the_six_first_measurements() {
        use MerminObs::*;
        assert_eq!(fresh_labels(), vec![B, C, LowA, LowC, Alpha, Beta]);
    }

    #[test]
    fn relations_hold_for_both_scenarios() {
        for tripartite in [false, true] {
            for rel in verify_algebraic_relations(tripartite) {
                assert!(rel.holds, "{} ({})", rel.name, rel.points);
                assert!(rel.counterexample.is_none());
            }
        }
    }

    #[test]
    fn relation_point_counts_track_the_involved_distant_values() {
        let bi: Vec<u64> = verify_algebraic_relations(false)
            .iter()
            .map(|r| r.points)
            .collect();
        assert_eq!(bi, vec![128, 128, 256, 128, 256, 128]);
        let tri: Vec<u64> = verify_algebraic_relations(true)
            .iter()
            .map(|r| r.points)
            .collect();
        assert_eq!(tri, vec![256, 512, 1024, 256, 1024, 512]);
    }

    #[test]
    fn corrupted_relations_fail() {
        for tripartite in [false, true] {
            for corruption in [Corruption::FlipTermSign, Corruption::DropSlack] {
                let broken = check_algebraic_relations(tripartite, corruption)
                    .iter()
                    .filter(|r| !r.holds)
                    .count();
                assert!(
                    broken > 0,
                    "corruption {corruption:?} should break at least one relation"
                );
                for rel in check_algebraic_relations(tripartite, corruption) {
                    if !rel.holds {
                        assert!(rel.counterexample.is_some());
                    }
                }
            }
        }
    }
}
