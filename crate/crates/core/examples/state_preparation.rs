// Bell, GHZ, W and cluster states from their gate-level lowerings.

use std::error::Error;

use qsaf::catalog::lowering::{bell, cluster, ghz, w_state};
use qsaf::sim::{evolve, Initial};

pub fn run() -> Result<(), Box<dyn Error>> {
    for variant in ["phi+", "phi-", "psi+", "psi-"] {
        let s = evolve(&bell(variant)?, Initial::Zero)?;
        let amps: Vec<String> = s.amplitudes().iter().map(|a| format!("{:+.3}", a.re)).collect();
        println!("bell {variant:<4} [{}]", amps.join(" "));
    }

    let g = evolve(&ghz(4), Initial::Zero)?;
    println!("ghz(4): P(0000) = {:.3}, P(1111) = {:.3}", g.probability(0), g.probability(15));

    let w = evolve(&w_state(3), Initial::Zero)?;
    let support: Vec<String> =
        (0..8).filter(|&i| w.probability(i) > 1e-12).map(|i| format!("{i:03b}:{:.3}", w.probability(i))).collect();
    println!("w(3): {}", support.join(" "));

    let ring = [(0, 1), (1, 2), (2, 3), (3, 0)];
    let c = cluster(4, &ring)?;
    let s = evolve(&c, Initial::Zero)?;
    println!(
        "cluster on a 4-ring: {} gates, {} entanglers, every |amp|^2 = {:.4}",
        c.len(),
        c.gate_counts().two_qubit,
        s.probability(5)
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}
