// Variational eigensolver with a hardware-efficient ansatz.

use std::error::Error;

use qsaf::catalog::{Params, PrimitiveId};
use qsaf::sim::{variational_minimize, OptimizerConfig, PauliObservable};

pub fn run() -> Result<(), Box<dyn Error>> {
    let h = PauliObservable::parse("1.0*Z0Z1 + 0.5*X0 + 0.5*X1", 2)?;
    let exact = h.ground_energy();
    let params = Params::new().with("n", 2usize).with("layers", 2usize);
    let init = vec![0.1; 8];
    let result = variational_minimize(PrimitiveId::new(25)?, &params, &init, &h, &OptimizerConfig::default())?;
    for t in result.trace.iter().step_by(10) {
        println!("iter {:>3}: E = {:+.8}", t.iteration, t.energy);
    }
    println!("final E = {:+.8} after {} iterations, exact {exact:+.8}", result.best_energy, result.trace.len() - 1);
    println!("gap {:.2e}", result.best_energy - exact);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}
