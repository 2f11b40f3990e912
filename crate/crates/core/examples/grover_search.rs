// Amplitude amplification: success probability per iteration count.

use std::error::Error;

use qsaf::catalog::lowering::{grover_circuit, optimal_grover_iterations};
use qsaf::sim::{evolve, sample_circuit, Initial};

pub fn run() -> Result<(), Box<dyn Error>> {
    for n in [2, 3, 4, 5] {
        let marked = (1 << n) - 2;
        let k = optimal_grover_iterations(n, 1);
        let s = evolve(&grover_circuit(n, &[marked], k, false)?, Initial::Zero)?;
        let theta = (1.0 / (1u64 << n) as f64).sqrt().asin();
        let predicted = (((2 * k + 1) as f64) * theta).sin().powi(2);
        println!("n={n} marked={marked} iterations={k}: P = {:.6} (predicted {predicted:.6})", s.probability(marked));
    }

    let counts = sample_circuit(&grover_circuit(3, &[5], 2, true)?, Initial::Zero, 1000, 11)?;
    println!("3 qubits, 2 iterations, 1000 shots: most frequent {} with {}", counts.label(5), counts.get(5));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}
