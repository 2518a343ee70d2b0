//! Partially entangled Alice-Bob pairs cos(θ)|01> - sin(θ)|10>, with the
//! distant measurement directions re-optimized at each θ. The violation
//! degrades gracefully and switches off at a known product of Schmidt
//! coefficients.
//!
//!     cargo run -p ctxlab --example nonmax_sweep

use ctxlab::{sweep, threshold, ScenarioKind, SweepParam};
use std::f64::consts::{FRAC_PI_4, PI};

fn closed_form_s(theta: f64) -> f64 {
    let x = theta.cos() * theta.sin();
    (1.0 + 4.0 * x * x).sqrt() * (2.0 + 2.0 * f64::sqrt(2.0))
}

fn main() -> ctxlab::Result<()> {
    let chi = PI / 8.0;
    println!("theta sweep, T + S vs the local bound 18:\n");
    println!(
        "  {:>7} {:>7} {:>10} {:>10} {:>10}  violated",
        "theta", "d1·d2", "S", "closed", "T+S"
    );
    let rows = sweep(
        ScenarioKind::Nonmax,
        SweepParam::Theta,
        0.0,
        FRAC_PI_4,
        10,
        chi,
        1.0,
        None,
    )?;
    let mut worst: f64 = 0.0;
    for row in &rows {
        let closed = closed_form_s(row.param);
        worst = worst.max((row.s - closed).abs());
        println!(
            "  {:>7.4} {:>7.4} {:>10.6} {:>10.6} {:>10.6}  {}",
            row.param,
            row.param.cos() * row.param.sin(),
            row.s,
            closed,
            row.total,
            row.violated
        );
    }
    println!("\nworst gap between simulation and closed form: {worst:.3e}");

    let cross = threshold(ScenarioKind::Nonmax, chi, 18.0, 1e-6)?;
    println!("\nviolation boundary by bisection:");
    println!("  theta* = {:.6}", cross.param);
    if let Some(d1d2) = cross.d1d2 {
        println!(
            "  d1·d2  = {d1d2:.6}   (closed form √(26-18√2)/2 = {:.6})",
            f64::sqrt(26.0 - 18.0 * f64::sqrt(2.0)) / 2.0
        );
    }
    println!("\nso even weakly entangled pairs violate T + S <= 18, down to a");
    println!("Schmidt-coefficient product of about 0.369; below that the distant");
    println!("correlations are too weak to push S past 6.");
    Ok(())
}
