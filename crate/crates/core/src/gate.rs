//! Gate set and per-gate matrices.
//!
//! Qubit order inside a gate: `qubits[0]` is bit 0 of the local matrix
//! index, `qubits[1]` bit 1 and so on. Control qubits come first for the
//! controlled kinds (`Cnot`, `Cz`, `CPhase`, `Toffoli`, `ControlledU`).

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type Matrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Explicit small unitary applied under one control qubit, raised to an
/// integer power. The powered matrix is computed once by repeated squaring.
#[derive(Clone)]
pub struct ControlledUnitary {
    base: Arc<Matrix>,
    power: u64,
    effective: Arc<Matrix>,
    label: String,
}

impl ControlledUnitary {
    /// Panics if the matrix is not square with power-of-two dimension.
    pub fn new(base: Matrix, power: u64, label: impl Into<String>) -> Self {
        assert!(base.is_square() && base.nrows().is_power_of_two() && base.nrows() >= 2);
        let effective = matrix_power(&base, power);
        ControlledUnitary { base: Arc::new(base), power, effective: Arc::new(effective), label: label.into() }
    }

    fn from_parts(base: Arc<Matrix>, power: u64, effective: Matrix, label: String) -> Self {
        ControlledUnitary { base, power, effective: Arc::new(effective), label }
    }

    pub fn base(&self) -> &Matrix {
        &self.base
    }

    pub fn power(&self) -> u64 {
        self.power
    }

    /// `base^power`.
    pub fn matrix(&self) -> &Matrix {
        &self.effective
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn target_count(&self) -> usize {
        self.base.nrows().trailing_zeros() as usize
    }

    fn adjoint(&self) -> Self {
        ControlledUnitary::from_parts(
            Arc::new(self.base.adjoint()),
            self.power,
            self.effective.adjoint(),
            format!("{}^dag", self.label),
        )
    }
}

impl fmt::Debug for ControlledUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ControlledU({}^{}, {}x{})", self.label, self.power, self.base.nrows(), self.base.ncols())
    }
}

impl PartialEq for ControlledUnitary {
    fn eq(&self, other: &Self) -> bool {
        self.power == other.power && self.base == other.base
    }
}

/// `m^power` by repeated squaring.
pub fn matrix_power(m: &Matrix, mut power: u64) -> Matrix {
    let mut result = Matrix::identity(m.nrows(), m.ncols());
    let mut square = m.clone();
    while power > 0 {
        if power & 1 == 1 {
            result = &result * &square;
        }
        power >>= 1;
        if power > 0 {
            square = &square * &square;
        }
    }
    result
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rx(f64),
    Ry(f64),
    Rz(f64),
    Phase(f64),
    Cnot,
    Cz,
    CPhase(f64),
    Swap,
    Toffoli,
    ControlledU(ControlledUnitary),
    /// Measures the qubit into classical bit `clbit`.
    Measure {
        clbit: usize,
    },
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::S
            | GateKind::Sdg
            | GateKind::T
            | GateKind::Tdg
            | GateKind::Rx(_)
            | GateKind::Ry(_)
            | GateKind::Rz(_)
            | GateKind::Phase(_)
            | GateKind::Measure { .. } => 1,
            GateKind::Cnot | GateKind::Cz | GateKind::CPhase(_) | GateKind::Swap => 2,
            GateKind::Toffoli => 3,
            GateKind::ControlledU(u) => 1 + u.target_count(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Rx(_) => "rx",
            GateKind::Ry(_) => "ry",
            GateKind::Rz(_) => "rz",
            GateKind::Phase(_) => "p",
            GateKind::Cnot => "cx",
            GateKind::Cz => "cz",
            GateKind::CPhase(_) => "cp",
            GateKind::Swap => "swap",
            GateKind::Toffoli => "ccx",
            GateKind::ControlledU(_) => "cu",
            GateKind::Measure { .. } => "measure",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::Rx(t) | GateKind::Ry(t) | GateKind::Rz(t) | GateKind::Phase(t) | GateKind::CPhase(t) => Some(t),
            _ => None,
        }
    }

    /// Same kind with the rotation angle replaced. `None` for fixed gates.
    pub fn with_angle(&self, theta: f64) -> Option<GateKind> {
        Some(match self {
            GateKind::Rx(_) => GateKind::Rx(theta),
            GateKind::Ry(_) => GateKind::Ry(theta),
            GateKind::Rz(_) => GateKind::Rz(theta),
            GateKind::Phase(_) => GateKind::Phase(theta),
            GateKind::CPhase(_) => GateKind::CPhase(theta),
            _ => return None,
        })
    }

    pub fn is_measurement(&self) -> bool {
        matches!(self, GateKind::Measure { .. })
    }

    /// Inverse gate. `None` for measurements.
    pub fn inverse(&self) -> Option<GateKind> {
        Some(match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::Rx(t) => GateKind::Rx(-t),
            GateKind::Ry(t) => GateKind::Ry(-t),
            GateKind::Rz(t) => GateKind::Rz(-t),
            GateKind::Phase(t) => GateKind::Phase(-t),
            GateKind::CPhase(t) => GateKind::CPhase(-t),
            GateKind::ControlledU(u) => GateKind::ControlledU(u.adjoint()),
            GateKind::Measure { .. } => return None,
            other => other.clone(),
        })
    }

    /// Local matrix in the gate's own qubit order. `None` for measurements.
    pub fn matrix(&self) -> Option<Matrix> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m2 = |a, b, cc, d| Matrix::from_row_slice(2, 2, &[a, b, cc, d]);
        let diag = |d: &[Complex64]| Matrix::from_diagonal(&nalgebra::DVector::from_row_slice(d));
        Some(match self {
            GateKind::H => m2(c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)),
            GateKind::X => m2(ZERO, ONE, ONE, ZERO),
            GateKind::Y => m2(ZERO, -I, I, ZERO),
            GateKind::Z => diag(&[ONE, -ONE]),
            GateKind::S => diag(&[ONE, I]),
            GateKind::Sdg => diag(&[ONE, -I]),
            GateKind::T => diag(&[ONE, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]),
            GateKind::Tdg => diag(&[ONE, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)]),
            GateKind::Rx(t) => {
                let (s, co) = (t / 2.0).sin_cos();
                m2(c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0))
            }
            GateKind::Ry(t) => {
                let (s, co) = (t / 2.0).sin_cos();
                m2(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0))
            }
            GateKind::Rz(t) => diag(&[Complex64::from_polar(1.0, -t / 2.0), Complex64::from_polar(1.0, t / 2.0)]),
            GateKind::Phase(t) => diag(&[ONE, Complex64::from_polar(1.0, *t)]),
            GateKind::Cnot => permutation(4, |i| if i & 1 == 1 { i ^ 2 } else { i }),
            GateKind::Cz => diag(&[ONE, ONE, ONE, -ONE]),
            GateKind::CPhase(t) => diag(&[ONE, ONE, ONE, Complex64::from_polar(1.0, *t)]),
            GateKind::Swap => permutation(4, |i| ((i & 1) << 1) | ((i >> 1) & 1)),
            GateKind::Toffoli => permutation(8, |i| if i & 3 == 3 { i ^ 4 } else { i }),
            GateKind::ControlledU(u) => {
                let inner = u.matrix();
                let d = inner.nrows();
                let mut m = Matrix::zeros(2 * d, 2 * d);
                // Local bit 0 is the control; target index t lives in bits 1..
                for t_row in 0..d {
                    m[(t_row << 1, t_row << 1)] = ONE;
                    for t_col in 0..d {
                        m[((t_row << 1) | 1, (t_col << 1) | 1)] = inner[(t_row, t_col)];
                    }
                }
                m
            }
            GateKind::Measure { .. } => return None,
        })
    }
}

fn permutation(dim: usize, map: impl Fn(usize) -> usize) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for col in 0..dim {
        m[(map(col), col)] = ONE;
    }
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: impl Into<Vec<usize>>) -> Self {
        Gate { kind, qubits: qubits.into() }
    }

    pub fn h(q: usize) -> Self {
        Gate::new(GateKind::H, [q])
    }
    pub fn x(q: usize) -> Self {
        Gate::new(GateKind::X, [q])
    }
    pub fn y(q: usize) -> Self {
        Gate::new(GateKind::Y, [q])
    }
    pub fn z(q: usize) -> Self {
        Gate::new(GateKind::Z, [q])
    }
    pub fn s(q: usize) -> Self {
        Gate::new(GateKind::S, [q])
    }
    pub fn t(q: usize) -> Self {
        Gate::new(GateKind::T, [q])
    }
    pub fn rx(theta: f64, q: usize) -> Self {
        Gate::new(GateKind::Rx(theta), [q])
    }
    pub fn ry(theta: f64, q: usize) -> Self {
        Gate::new(GateKind::Ry(theta), [q])
    }
    pub fn rz(theta: f64, q: usize) -> Self {
        Gate::new(GateKind::Rz(theta), [q])
    }
    pub fn phase(theta: f64, q: usize) -> Self {
        Gate::new(GateKind::Phase(theta), [q])
    }
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::new(GateKind::Cnot, [control, target])
    }
    pub fn cz(a: usize, b: usize) -> Self {
        Gate::new(GateKind::Cz, [a, b])
    }
    pub fn cphase(theta: f64, control: usize, target: usize) -> Self {
        Gate::new(GateKind::CPhase(theta), [control, target])
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Gate::new(GateKind::Swap, [a, b])
    }
    pub fn toffoli(c0: usize, c1: usize, target: usize) -> Self {
        Gate::new(GateKind::Toffoli, [c0, c1, target])
    }
    pub fn controlled_u(u: ControlledUnitary, control: usize, targets: &[usize]) -> Self {
        let mut qubits = Vec::with_capacity(targets.len() + 1);
        qubits.push(control);
        qubits.extend_from_slice(targets);
        Gate::new(GateKind::ControlledU(u), qubits)
    }
    pub fn measure(q: usize, clbit: usize) -> Self {
        Gate::new(GateKind::Measure { clbit }, [q])
    }

    pub fn arity(&self) -> usize {
        self.qubits.len()
    }

    pub fn inverse(&self) -> Option<Gate> {
        self.kind.inverse().map(|kind| Gate { kind, qubits: self.qubits.clone() })
    }

    pub fn is_measurement(&self) -> bool {
        self.kind.is_measurement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unitary(m: &Matrix) -> bool {
        let prod = m.adjoint() * m;
        let id = Matrix::identity(m.nrows(), m.ncols());
        (prod - id).iter().all(|z| z.norm() < 1e-12)
    }

    #[test]
    fn every_matrix_is_unitary_and_inverse_matches() {
        let u = ControlledUnitary::new(GateKind::Ry(0.3).matrix().unwrap(), 3, "ry");
        let kinds = vec![
            GateKind::H,
            GateKind::X,
            GateKind::Y,
            GateKind::Z,
            GateKind::S,
            GateKind::Sdg,
            GateKind::T,
            GateKind::Tdg,
            GateKind::Rx(0.7),
            GateKind::Ry(-1.1),
            GateKind::Rz(2.2),
            GateKind::Phase(0.4),
            GateKind::Cnot,
            GateKind::Cz,
            GateKind::CPhase(1.3),
            GateKind::Swap,
            GateKind::Toffoli,
            GateKind::ControlledU(u),
        ];
        for k in kinds {
            let m = k.matrix().unwrap();
            assert_eq!(m.nrows(), 1 << k.arity());
            assert!(is_unitary(&m), "{k:?}");
            let inv = k.inverse().unwrap().matrix().unwrap();
            let prod = inv * &m;
            assert!((prod - Matrix::identity(m.nrows(), m.ncols())).iter().all(|z| z.norm() < 1e-12), "{k:?}");
        }
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        let m = GateKind::Cnot.matrix().unwrap();
        // local index = control + 2 * target
        assert_eq!(m[(3, 1)], ONE);
        assert_eq!(m[(1, 3)], ONE);
        assert_eq!(m[(0, 0)], ONE);
        assert_eq!(m[(2, 2)], ONE);
    }

    #[test]
    fn repeated_squaring_matches_naive_power() {
        let base = GateKind::Rx(0.37).matrix().unwrap();
        let mut naive = Matrix::identity(2, 2);
        for _ in 0..13 {
            naive = &naive * &base;
        }
        let fast = matrix_power(&base, 13);
        assert!((naive - fast).iter().all(|z| z.norm() < 1e-12));
        assert_eq!(matrix_power(&base, 0), Matrix::identity(2, 2));
    }

    #[test]
    fn measurement_has_no_inverse() {
        assert!(Gate::measure(0, 0).inverse().is_none());
        assert!(GateKind::Measure { clbit: 0 }.matrix().is_none());
    }
}
