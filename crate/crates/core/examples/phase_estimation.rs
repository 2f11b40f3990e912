// Standard and iterative phase estimation, then order finding mod 15.

use std::error::Error;

use qsaf::catalog::lowering::phase_unitary;
use qsaf::sim::{find_order, iterative_qpe, qpe_estimate, StateVector};

pub fn run() -> Result<(), Box<dyn Error>> {
    let one = StateVector::basis(1, 1)?;
    for phase in [0.25, 0.375, 1.0 / 3.0] {
        let u = phase_unitary(phase);
        let est = qpe_estimate(&u, &one, 5, 512, 3)?;
        let share = est.counts.frequency(est.readout);
        println!("phase {phase:.5}: readout {} -> {:.5} in {:.1}% of shots", est.readout, est.phase, 100.0 * share);
    }

    let (phase, bits) = iterative_qpe(&phase_unitary(0.6875), &one, 4, 64, 5)?;
    println!("iterative, 4 rounds: bits {bits:?} -> {phase}");

    for a in [2, 7, 11] {
        let r = find_order(a, 15, 8, 256, 1)?;
        println!("order of {a} mod 15 = {}", r.order);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}
