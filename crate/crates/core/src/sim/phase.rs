//! Phase estimation drivers and order finding.

use super::{sample_circuit, Counts, SimError, StateVector};
use crate::catalog::lowering::{iterative_qpe_round, modmul_unitary, modulus_width, qpe};
use crate::gate::Matrix;

pub const MAX_PRECISION_BITS: usize = 8;
const EIGEN_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct QpeEstimate {
    /// Most frequent readout divided by `2^t`.
    pub phase: f64,
    pub readout: usize,
    pub counts: Counts,
}

fn check_bits(t: usize) -> Result<(), SimError> {
    if t == 0 || t > MAX_PRECISION_BITS {
        return Err(SimError::TooManyBits { got: t, max: MAX_PRECISION_BITS });
    }
    Ok(())
}

fn eigen_residual(u: &Matrix, v: &StateVector) -> Result<f64, SimError> {
    let amps = v.amplitudes();
    if u.nrows() != amps.len() {
        return Err(SimError::WidthMismatch { circuit: u.nrows().trailing_zeros() as usize, state: v.width() });
    }
    let uv: Vec<num_complex::Complex64> = (0..amps.len()).map(|i| (0..amps.len()).map(|j| u[(i, j)] * amps[j]).sum()).collect();
    let lambda: num_complex::Complex64 = amps.iter().zip(&uv).map(|(a, b)| a.conj() * b).sum();
    Ok(uv.iter().zip(amps).map(|(w, a)| (w - lambda * a).norm_sqr()).sum::<f64>().sqrt())
}

/// Control-register histogram of textbook QPE with the target register
/// prepared in `target`.
pub fn qpe_readout_counts(u: &Matrix, target: &StateVector, t: usize, shots: usize, seed: u64) -> Result<Counts, SimError> {
    check_bits(t)?;
    let c = qpe(u, t, "U");
    sample_circuit(&c, target, shots, seed)
}

pub fn qpe_estimate(u: &Matrix, eigenstate: &StateVector, t: usize, shots: usize, seed: u64) -> Result<QpeEstimate, SimError> {
    let residual = eigen_residual(u, eigenstate)?;
    if residual > EIGEN_TOLERANCE {
        return Err(SimError::NotEigenstate { residual });
    }
    let counts = qpe_readout_counts(u, eigenstate, t, shots, seed)?;
    let readout = counts.most_frequent().unwrap_or(0);
    Ok(QpeEstimate { phase: readout as f64 / (1u64 << t) as f64, readout, counts })
}

/// Bit-by-bit estimation, one circuit per round, majority vote over
/// `shots` per round. Returns the phase and the bits, least significant first.
pub fn iterative_qpe(
    u: &Matrix,
    eigenstate: &StateVector,
    t: usize,
    shots: usize,
    seed: u64,
) -> Result<(f64, Vec<u8>), SimError> {
    check_bits(t)?;
    let residual = eigen_residual(u, eigenstate)?;
    if residual > EIGEN_TOLERANCE {
        return Err(SimError::NotEigenstate { residual });
    }
    let mut bits = Vec::with_capacity(t);
    for round in 0..t {
        let c = iterative_qpe_round(u, t, round, &bits, "U")?;
        let counts = sample_circuit(&c, eigenstate, shots, seed.wrapping_add(round as u64))?;
        bits.push(u8::from(counts.get(1) * 2 > shots));
    }
    let y: usize = bits.iter().enumerate().map(|(i, &b)| usize::from(b) << i).sum();
    Ok((y as f64 / (1u64 << t) as f64, bits))
}

/// Denominator of the last continued-fraction convergent of `y / 2^t` whose
/// denominator does not exceed `max_den`.
pub fn continued_fraction_denominator(y: u64, t: usize, max_den: u64) -> u64 {
    let (mut num, mut den) = (y, 1u64 << t);
    let (mut q_prev, mut q) = (0u64, 1u64);
    while num != 0 {
        let a = den / num;
        let q_next = a * q + q_prev;
        if q_next > max_den {
            break;
        }
        (q_prev, q) = (q, q_next);
        (den, num) = (num, den - a * num);
    }
    q
}

fn pow_mod(a: u64, e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    let mut b = a % m;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderFinding {
    pub order: u64,
    pub counts: Counts,
    pub t: usize,
}

/// Order of `a` mod `modulus` from QPE on `x -> a x mod N` with the work
/// register in |1>. Denominators from the most frequent readouts are merged
/// by lcm until `a^r = 1 (mod N)`.
pub fn find_order(a: u64, modulus: u64, t: usize, shots: usize, seed: u64) -> Result<OrderFinding, SimError> {
    let u = modmul_unitary(a, modulus)?;
    let one = StateVector::basis(modulus_width(modulus), 1)?;
    let counts = qpe_readout_counts(&u, &one, t, shots, seed)?;
    let mut ranked: Vec<(usize, usize)> = counts.iter().collect();
    ranked.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    let mut r = 1u64;
    for (y, _) in ranked {
        let q = continued_fraction_denominator(y as u64, t, modulus);
        r = r / gcd(r, q) * q;
        if pow_mod(a, r, modulus) == 1 {
            return Ok(OrderFinding { order: r, counts, t });
        }
        if r > modulus {
            break;
        }
    }
    Err(SimError::OrderNotFound { a, modulus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lowering::phase_unitary;

    #[test]
    fn exact_phase_three_eighths() {
        let u = phase_unitary(3.0 / 8.0);
        let one = StateVector::basis(1, 1).unwrap();
        let e = qpe_estimate(&u, &one, 3, 64, 0).unwrap();
        assert_eq!(e.phase, 3.0 / 8.0);
        assert_eq!(e.counts.get(3), 64);
    }

    #[test]
    fn rejects_non_eigenstate() {
        let u = phase_unitary(0.25);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = StateVector::from_amplitudes(vec![h.into(), h.into()]).unwrap();
        assert!(matches!(qpe_estimate(&u, &plus, 3, 10, 0), Err(SimError::NotEigenstate { .. })));
    }

    #[test]
    fn iterative_matches_exact() {
        let u = phase_unitary(5.0 / 16.0);
        let one = StateVector::basis(1, 1).unwrap();
        let (phase, bits) = iterative_qpe(&u, &one, 4, 16, 1).unwrap();
        assert_eq!(phase, 5.0 / 16.0);
        assert_eq!(bits, vec![1, 0, 1, 0]);
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(continued_fraction_denominator(64, 8, 15), 4);
        assert_eq!(continued_fraction_denominator(128, 8, 15), 2);
        assert_eq!(continued_fraction_denominator(85, 8, 15), 3);
    }

    #[test]
    fn order_of_seven_mod_fifteen() {
        let r = find_order(7, 15, 8, 256, 11).unwrap();
        assert_eq!(r.order, 4);
    }
}
