//! Dense statevector simulation.
//!
//! Basis index bit `q` is the value of qubit `q`. Sampling uses a
//! `ChaCha8Rng` seeded with `seed_from_u64(seed)` and an inverse-CDF draw per
//! shot, so counts are reproducible across platforms.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::catalog::CatalogError;
use crate::circuit::GateCircuit;
use crate::gate::{Gate, GateKind, Matrix};

mod observable;
mod phase;
mod variational;

pub use observable::{maxcut_observable, PauliObservable, PauliString};
pub use phase::{
    continued_fraction_denominator, find_order, iterative_qpe, qpe_estimate, qpe_readout_counts, OrderFinding, QpeEstimate,
    MAX_PRECISION_BITS,
};
pub use variational::{
    energy, finite_difference_gradient, minimize, parameter_shift_gradient, variational_minimize, OptimizerConfig, TraceEntry,
    VariationalResult, NON_DECREASING_WARNING,
};

pub const MAX_SIM_WIDTH: usize = 16;
pub const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("width mismatch: circuit has {circuit} qubits, state has {state}")]
    WidthMismatch { circuit: usize, state: usize },
    #[error("{width} qubits exceed the simulator limit of {max}")]
    TooWide { width: usize, max: usize },
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("bad basis label `{0}`")]
    BadLabel(String),
    #[error("bad observable: {0}")]
    BadObservable(String),
    #[error("vector is not an eigenstate (residual {residual:.3e})")]
    NotEigenstate { residual: f64 },
    #[error("{got} precision bits requested, at most {max} supported")]
    TooManyBits { got: usize, max: usize },
    #[error("parameter vector has {got} entries, ansatz takes {expected}")]
    ParamLength { expected: usize, got: usize },
    #[error("no order found for {a} mod {modulus}")]
    OrderNotFound { a: u64, modulus: u64 },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: Vec<Complex64>,
}

fn check_width(width: usize) -> Result<(), SimError> {
    if width > MAX_SIM_WIDTH {
        return Err(SimError::TooWide { width, max: MAX_SIM_WIDTH });
    }
    Ok(())
}

impl StateVector {
    /// `|0...0>` on `width` qubits.
    pub fn zero(width: usize) -> Result<Self, SimError> {
        Self::basis(width, 0)
    }

    pub fn basis(width: usize, index: usize) -> Result<Self, SimError> {
        check_width(width)?;
        let dim = 1usize << width;
        if index >= dim {
            return Err(SimError::BadLabel(format!("index {index} on {width} qubits")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { width, amps })
    }

    /// Parses `"0101"` or `"|0101>"`; the rightmost character is qubit 0.
    pub fn from_label(label: &str) -> Result<Self, SimError> {
        let bits = label.trim().trim_start_matches('|').trim_end_matches('>').trim_end_matches('⟩');
        if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(SimError::BadLabel(label.to_string()));
        }
        let index = bits.chars().fold(0usize, |acc, c| (acc << 1) | usize::from(c == '1'));
        Self::basis(bits.len(), index)
    }

    /// Takes ownership of `2^width` amplitudes, which must have unit norm.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SimError> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(SimError::BadLabel(format!("{dim} amplitudes is not a power of two")));
        }
        let width = dim.trailing_zeros() as usize;
        check_width(width)?;
        let s = StateVector { width, amps };
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimError::NotNormalized(norm));
        }
        Ok(s)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `self ⊗ high`: `high` occupies the qubits above `self`.
    pub fn tensor(&self, high: &StateVector) -> Result<StateVector, SimError> {
        let width = self.width + high.width;
        check_width(width)?;
        let mut amps = Vec::with_capacity(1 << width);
        for h in &high.amps {
            amps.extend(self.amps.iter().map(|l| l * h));
        }
        Ok(StateVector { width, amps })
    }

    /// Zero-padded to `width` qubits (extra qubits in |0>).
    pub fn extended(&self, width: usize) -> Result<StateVector, SimError> {
        let pad = StateVector::zero(width.saturating_sub(self.width))?;
        self.tensor(&pad)
    }

    /// Probability that qubit `q` reads 1.
    pub fn marginal_one(&self, q: usize) -> f64 {
        self.amps.iter().enumerate().filter(|(i, _)| i >> q & 1 == 1).map(|(_, a)| a.norm_sqr()).sum()
    }

    pub fn apply(&mut self, gate: &Gate) {
        let q = &gate.qubits;
        match &gate.kind {
            GateKind::Measure { .. } => {}
            GateKind::Cnot => self.apply_cnot(q[0], q[1]),
            GateKind::Toffoli => self.apply_toffoli(q[0], q[1], q[2]),
            GateKind::Swap => self.apply_swap(q[0], q[1]),
            GateKind::Cz => self.apply_controlled_phase(q[0], q[1], Complex64::new(-1.0, 0.0)),
            GateKind::CPhase(t) => self.apply_controlled_phase(q[0], q[1], Complex64::from_polar(1.0, *t)),
            GateKind::ControlledU(u) => self.apply_controlled_matrix(q[0], &q[1..], u.matrix()),
            kind => {
                let m = kind.matrix().expect("one-qubit gate has a matrix");
                self.apply_one(q[0], [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]]);
            }
        }
    }

    fn apply_one(&mut self, q: usize, [a, b, c, d]: [Complex64; 4]) {
        let bit = 1usize << q;
        let diagonal = b == Complex64::new(0.0, 0.0) && c == b;
        for i in (0..self.amps.len()).filter(|i| i & bit == 0) {
            let j = i | bit;
            let (x, y) = (self.amps[i], self.amps[j]);
            if diagonal {
                self.amps[i] = a * x;
                self.amps[j] = d * y;
            } else {
                self.amps[i] = a * x + b * y;
                self.amps[j] = c * x + d * y;
            }
        }
    }

    fn apply_cnot(&mut self, control: usize, target: usize) {
        let (cb, tb) = (1usize << control, 1usize << target);
        for i in 0..self.amps.len() {
            if i & cb != 0 && i & tb == 0 {
                self.amps.swap(i, i | tb);
            }
        }
    }

    fn apply_toffoli(&mut self, c0: usize, c1: usize, target: usize) {
        let cb = (1usize << c0) | (1usize << c1);
        let tb = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cb == cb && i & tb == 0 {
                self.amps.swap(i, i | tb);
            }
        }
    }

    fn apply_swap(&mut self, a: usize, b: usize) {
        let (ab, bb) = (1usize << a, 1usize << b);
        for i in 0..self.amps.len() {
            if i & ab != 0 && i & bb == 0 {
                self.amps.swap(i, (i & !ab) | bb);
            }
        }
    }

    fn apply_controlled_phase(&mut self, a: usize, b: usize, phase: Complex64) {
        let mask = (1usize << a) | (1usize << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp *= phase;
            }
        }
    }

    fn apply_controlled_matrix(&mut self, control: usize, targets: &[usize], m: &Matrix) {
        let cb = 1usize << control;
        let tmask: usize = targets.iter().map(|&t| 1usize << t).sum();
        let local = 1usize << targets.len();
        let offsets: Vec<usize> = (0..local)
            .map(|l| targets.iter().enumerate().filter(|(k, _)| l >> k & 1 == 1).map(|(_, &t)| 1usize << t).sum())
            .collect();
        let mut gathered = vec![Complex64::new(0.0, 0.0); local];
        for base in 0..self.amps.len() {
            if base & cb == 0 || base & tmask != 0 {
                continue;
            }
            for (g, &off) in gathered.iter_mut().zip(&offsets) {
                *g = self.amps[base | off];
            }
            for (row, &off) in offsets.iter().enumerate() {
                self.amps[base | off] = (0..local).map(|col| m[(row, col)] * gathered[col]).sum();
            }
        }
    }

    /// Projects qubit `q` onto `outcome` and renormalizes.
    fn collapse(&mut self, q: usize, outcome: bool, probability: f64) {
        let bit = 1usize << q;
        let scale = 1.0 / probability.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i & bit != 0) == outcome {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
    }
}

/// Initial state for [`run`]: a full state vector or a basis label.
#[derive(Debug, Clone, PartialEq)]
pub enum Initial {
    Zero,
    State(StateVector),
    Label(String),
    Index(usize),
}

impl From<StateVector> for Initial {
    fn from(s: StateVector) -> Self {
        Initial::State(s)
    }
}

impl From<&StateVector> for Initial {
    fn from(s: &StateVector) -> Self {
        Initial::State(s.clone())
    }
}

impl From<&str> for Initial {
    fn from(s: &str) -> Self {
        Initial::Label(s.to_string())
    }
}

impl From<usize> for Initial {
    fn from(i: usize) -> Self {
        Initial::Index(i)
    }
}

impl Initial {
    /// Resolves to a state on exactly `width` qubits. A short state or label
    /// is padded with |0> on the upper qubits.
    pub fn resolve(self, width: usize) -> Result<StateVector, SimError> {
        let s = match self {
            Initial::Zero => return StateVector::zero(width),
            Initial::Index(i) => return StateVector::basis(width, i),
            Initial::State(s) => s,
            Initial::Label(l) => StateVector::from_label(&l)?,
        };
        if s.width > width {
            return Err(SimError::WidthMismatch { circuit: width, state: s.width });
        }
        s.extended(width)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub state: StateVector,
    /// Classical register contents, present when the circuit measures.
    pub bits: Option<Vec<u8>>,
}

fn check_circuit(circuit: &GateCircuit) -> Result<(), SimError> {
    check_width(circuit.width())
}

/// Applies every unitary gate and skips measurements.
pub fn evolve(circuit: &GateCircuit, initial: impl Into<Initial>) -> Result<StateVector, SimError> {
    check_circuit(circuit)?;
    let mut s = initial.into().resolve(circuit.width())?;
    for g in circuit.ops() {
        s.apply(g);
    }
    Ok(s)
}

/// Runs the circuit, collapsing at each measurement with seed 0.
pub fn run(circuit: &GateCircuit, initial: impl Into<Initial>) -> Result<RunResult, SimError> {
    run_seeded(circuit, initial, 0)
}

pub fn run_seeded(circuit: &GateCircuit, initial: impl Into<Initial>, seed: u64) -> Result<RunResult, SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run_with_rng(circuit, initial, &mut rng)
}

pub fn run_with_rng(circuit: &GateCircuit, initial: impl Into<Initial>, rng: &mut impl Rng) -> Result<RunResult, SimError> {
    check_circuit(circuit)?;
    let mut s = initial.into().resolve(circuit.width())?;
    let mut bits = circuit.has_measurements().then(|| vec![0u8; circuit.classical_bits()]);
    for g in circuit.ops() {
        if let GateKind::Measure { clbit } = g.kind {
            let q = g.qubits[0];
            let p1 = s.marginal_one(q);
            let one = rng.random::<f64>() < p1;
            s.collapse(q, one, if one { p1 } else { 1.0 - p1 });
            if let Some(b) = bits.as_mut() {
                b[clbit] = u8::from(one);
            }
        } else {
            s.apply(g);
        }
    }
    Ok(RunResult { state: s, bits })
}

/// Outcome histogram over a register of `width` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    width: usize,
    shots: usize,
    map: BTreeMap<usize, usize>,
}

impl Counts {
    fn new(width: usize) -> Self {
        Counts { width, shots: 0, map: BTreeMap::new() }
    }

    fn add(&mut self, outcome: usize) {
        *self.map.entry(outcome).or_default() += 1;
        self.shots += 1;
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn shots(&self) -> usize {
        self.shots
    }

    pub fn get(&self, outcome: usize) -> usize {
        self.map.get(&outcome).copied().unwrap_or(0)
    }

    pub fn frequency(&self, outcome: usize) -> f64 {
        self.get(outcome) as f64 / self.shots as f64
    }

    /// Nonzero entries in ascending outcome order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&k, &v)| (k, v))
    }

    /// Most frequent outcome; ties go to the smaller value.
    pub fn most_frequent(&self) -> Option<usize> {
        self.map.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(&k, _)| k)
    }

    /// Bit string with bit 0 rightmost.
    pub fn label(&self, outcome: usize) -> String {
        (0..self.width).rev().map(|b| if outcome >> b & 1 == 1 { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{} = {v}", self.label(k))?;
        }
        Ok(())
    }
}

fn cdf(probabilities: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    probabilities
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect()
}

fn draw(cdf: &[f64], rng: &mut impl Rng) -> usize {
    let total = *cdf.last().unwrap();
    let u = rng.random::<f64>() * total;
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
}

/// Measures every qubit `shots` times.
pub fn sample(state: &StateVector, shots: usize, seed: u64) -> Counts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = cdf(&state.probabilities());
    let mut counts = Counts::new(state.width);
    for _ in 0..shots {
        counts.add(draw(&table, &mut rng));
    }
    counts
}

/// Histogram of the classical register. Terminal measurements are sampled
/// from the final state; with mid-circuit measurement every shot is
/// simulated separately. A circuit without measurements is sampled on all
/// qubits.
pub fn sample_circuit(circuit: &GateCircuit, initial: impl Into<Initial>, shots: usize, seed: u64) -> Result<Counts, SimError> {
    let initial = initial.into();
    if !circuit.has_measurements() {
        return Ok(sample(&evolve(circuit, initial)?, shots, seed));
    }
    let mut counts = Counts::new(circuit.classical_bits());
    if circuit.mid_circuit_measurement() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..shots {
            let r = run_with_rng(circuit, initial.clone(), &mut rng)?;
            let bits = r.bits.expect("circuit measures");
            counts.add(bits.iter().enumerate().map(|(i, &b)| usize::from(b) << i).sum());
        }
        return Ok(counts);
    }
    let state = evolve(circuit, initial)?;
    let map: Vec<(usize, usize)> = circuit
        .ops()
        .iter()
        .filter_map(|g| match g.kind {
            GateKind::Measure { clbit } => Some((g.qubits[0], clbit)),
            _ => None,
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = cdf(&state.probabilities());
    for _ in 0..shots {
        let basis = draw(&table, &mut rng);
        let mut reg = 0usize;
        for &(q, c) in &map {
            reg = (reg & !(1 << c)) | ((basis >> q & 1) << c);
        }
        counts.add(reg);
    }
    Ok(counts)
}
