//! Exact sequential (Lüders) measurement: branch on each projector, keep the
//! unnormalized post-measurement states, and read joint outcome statistics
//! off the leaves. Shows the row constraint, repetition, order invariance
//! inside a context, and what incompatible observables do instead.
//!
//!     cargo run -p ctxlab --example sequential_measurement

use ctxlab::{
    joint_distribution, no_disturbance_check, order_invariance_check, singlet_state, MerminObs,
    MerminSquare,
};
use std::f64::consts::PI;

fn main() -> ctxlab::Result<()> {
    let square = MerminSquare::new();
    let state = singlet_state(PI / 8.0, 1.0)?;

    let seq = |obs: &[MerminObs]| -> Vec<_> { obs.iter().map(|&o| square.observable(o)).collect() };

    println!("sequence C, A, B on the singlet scenario state:\n");
    let dist = joint_distribution(
        &state,
        &seq(&[MerminObs::C, MerminObs::A, MerminObs::B]),
        &[],
    )?;
    println!("  {:>3} {:>3} {:>3}   prob", "C", "A", "B");
    for (outcomes, p) in dist.iter() {
        if p > 1e-12 {
            println!(
                "  {:>3} {:>3} {:>3}   {:.6}",
                outcomes[0], outcomes[1], outcomes[2], p
            );
        }
    }
    println!("  only outcomes with product +1 appear: C·A·B = +I fixes the third");
    println!("  value once two are known, whatever the state is.\n");

    let rep = joint_distribution(&state, &seq(&[MerminObs::A, MerminObs::A]), &[])?;
    let agree = rep.prob(&[1, 1]) + rep.prob(&[-1, -1]);
    println!("measuring A twice: P(second run repeats the first) = {agree:.6}");

    let disturbed = joint_distribution(
        &state,
        &seq(&[MerminObs::A, MerminObs::LowB, MerminObs::A]),
        &[],
    )?;
    let mut same = 0.0;
    for (outcomes, p) in disturbed.iter() {
        if outcomes[0] == outcomes[2] {
            same += p;
        }
    }
    println!("measuring A, then b (which fails to commute with A), then A again:");
    println!("  P(third run repeats the first) = {same:.6}\n");

    let fwd = joint_distribution(
        &state,
        &seq(&[MerminObs::A, MerminObs::B, MerminObs::C]),
        &[],
    )?;
    let rev = joint_distribution(
        &state,
        &seq(&[MerminObs::C, MerminObs::B, MerminObs::A]),
        &[],
    )?;
    let mut worst: f64 = 0.0;
    for (outcomes, p) in fwd.iter() {
        let aligned = [outcomes[2], outcomes[1], outcomes[0]];
        worst = worst.max((p - rev.prob(&aligned)).abs());
    }
    println!("order invariance inside the context (A,B,C): worst prob gap = {worst:.3e}");

    println!(
        "across all 6 contexts and all orderings: {:.3e}",
        order_invariance_check(&state, &square)?
    );
    println!(
        "no-disturbance (marginals ignore which compatible partner ran): {:.3e}",
        no_disturbance_check(&state, &square)?
    );
    Ok(())
}
