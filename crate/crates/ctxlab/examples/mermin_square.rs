//! The nine observables of the square, their Pauli composition, and the
//! compatibility structure: every row and column is a commuting triple whose
//! operator product is +I, except the third column's -I.
//!
//!     cargo run -p ctxlab --example mermin_square

use ctxlab::tensor::ComplexMatrix;
use ctxlab::{MerminObs, MerminSquare};

fn main() -> ctxlab::Result<()> {
    let square = MerminSquare::new();

    println!("observable grid (rows are contexts, so are columns):\n");
    let grid = [
        [MerminObs::A, MerminObs::B, MerminObs::C],
        [MerminObs::LowA, MerminObs::LowB, MerminObs::LowC],
        [MerminObs::Alpha, MerminObs::Beta, MerminObs::Gamma],
    ];
    for row in grid {
        for o in row {
            print!("  {o}");
        }
        println!();
    }

    println!("\nrow and column operator products:");
    let id = ComplexMatrix::identity(4)?;
    for i in 0..3 {
        for (kind, triple) in [("row", square.row(i)), ("col", square.col(i))] {
            let product = triple[0]
                .embed(2)?
                .matmul(&triple[1].embed(2)?)
                .matmul(&triple[2].embed(2)?);
            let sign = if product.approx_eq(&id, 1e-12) {
                "+I"
            } else if product.approx_eq(&id.scale_re(-1.0), 1e-12) {
                "-I"
            } else {
                "??"
            };
            let names: Vec<&str> = triple.iter().map(|o| o.name()).collect();
            println!("  {kind} {i}: {} = {sign}", names.join(" · "));
        }
    }

    println!("\npairwise compatibility (x = commuting):\n");
    print!("     ");
    for o in MerminObs::ALL {
        print!(" {o}");
    }
    println!();
    for a in MerminObs::ALL {
        print!("   {a} ");
        for b in MerminObs::ALL {
            let mark = if square.observable(a).commutes(square.observable(b))? {
                " x"
            } else {
                " ."
            };
            print!("{mark}");
        }
        println!();
    }

    println!("\nthe -I column is what no noncontextual value assignment can mimic:");
    println!("values v(C) v(c) v(γ) would need v(C)v(c)v(γ) = -1 while every row");
    println!("and the other columns demand products +1; multiplying all six");
    println!("constraints gives +1 on one side and -1 on the other.");
    Ok(())
}
