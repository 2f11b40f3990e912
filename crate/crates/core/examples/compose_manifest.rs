// Build an architecture from a manifest, validate it, flatten and sample.

use std::error::Error;

use qsaf::manifest::{parse_manifest, render_manifest};
use qsaf::run::simulate;

const GROVER: &str = "\
architecture grover2 version 1.0
component prep = Superposition(n=2)
component oracle = PhaseOracles(n=2, marked=[2])
component diff = DiffusionOperator(n=2)
component meas = Measurement(n=2)
wire prep.out -> oracle.in
wire oracle.out -> diff.in
wire diff.out -> meas.in
contract oracle -> diff {oracle.out}
contract diff -> meas {diff.out}
run simulate shots=500 seed=1
";

pub fn run() -> Result<(), Box<dyn Error>> {
    let m = parse_manifest(GROVER)?;
    let diags = m.architecture.validate();
    println!("{} diagnostics", diags.len());
    for d in &diags {
        println!("  {d} ({:?})", d.severity());
    }

    let flat = m.architecture.flatten()?;
    println!("flattened: {} qubits, {} gates, order {:?}", flat.circuit.width(), flat.circuit.len(), flat.order);
    let counts = simulate(&m.architecture, 500, 1)?;
    for (v, n) in counts.iter() {
        println!("  {} : {n}", counts.label(v));
    }

    // copying a quantum output is refused
    let broken = GROVER.replace("wire diff.out -> meas.in", "wire diff.out -> meas.in\nwire prep.out -> diff.in");
    let bad = parse_manifest(&broken)?;
    for d in bad.architecture.validate() {
        println!("broken: {d}");
    }

    println!("\n{}", render_manifest(&m));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}
