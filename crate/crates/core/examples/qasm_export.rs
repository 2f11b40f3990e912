// OPENQASM 2.0 text for a few lowered primitives.

use std::error::Error;

use qsaf::catalog::lowering::{bell, ghz, qft};
use qsaf::catalog::{lower, sized_params, PrimitiveId};
use qsaf::gate::Gate;
use qsaf::qasm::export_qasm;

pub fn run() -> Result<(), Box<dyn Error>> {
    let mut b = bell("phi+")?;
    b.push(Gate::measure(0, 0)).push(Gate::measure(1, 1));
    print!("{}", export_qasm(&b)?);
    println!();
    print!("{}", export_qasm(&qft(3, 3))?);
    println!();
    println!("ghz(5): {} lines", export_qasm(&ghz(5))?.lines().count());

    // controlled matrix powers have no gate-level form
    let qpe = lower(PrimitiveId::new(22)?, &sized_params(PrimitiveId::new(22)?, 3))?;
    match export_qasm(&qpe) {
        Ok(_) => println!("qpe exported"),
        Err(e) => println!("qpe: {e}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}
