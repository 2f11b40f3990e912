// QFT unitary against the DFT matrix, and its inverse.

use std::error::Error;
use std::f64::consts::PI;

use num_complex::Complex64;
use qsaf::catalog::lowering::{inverse_qft, qft};

pub fn run() -> Result<(), Box<dyn Error>> {
    for n in 1..=5 {
        let c = qft(n, n);
        let u = c.unitary()?;
        let dim = 1usize << n;
        let scale = 1.0 / (dim as f64).sqrt();
        let mut err: f64 = 0.0;
        for j in 0..dim {
            for k in 0..dim {
                let dft = Complex64::from_polar(scale, 2.0 * PI * (j * k) as f64 / dim as f64);
                err = err.max((u[(j, k)] - dft).norm());
            }
        }
        let counts = c.gate_counts();
        println!("n={n}: {} gates ({} two-qubit), max |U - F| = {err:.2e}", counts.total, counts.two_qubit);
    }

    let mut round_trip = qft(4, 4);
    round_trip.extend(&inverse_qft(4))?;
    let u = round_trip.unitary()?;
    let off: f64 = (0..16)
        .flat_map(|i| (0..16).map(move |j| (i, j)))
        .map(|(i, j)| {
            let id = if i == j { 1.0 } else { 0.0 };
            (u[(i, j)] - Complex64::new(id, 0.0)).norm()
        })
        .fold(0.0, f64::max);
    println!("iqft * qft on 4 qubits differs from identity by {off:.2e}");

    for cutoff in [1, 2, 3] {
        println!("approximate qft(6, cutoff={cutoff}): {} gates", qft(6, cutoff).len());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}
