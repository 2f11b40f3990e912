//! Gate-level circuits: the lowering target of every primitive.
//!
//! Basis-state labels are little-endian: qubit 0 is the least significant
//! bit of the integer label.

use std::collections::HashSet;

use num_complex::Complex64;
use thiserror::Error;

use crate::gate::{Gate, GateKind, Matrix};

/// Widest register for which [`GateCircuit::unitary`] builds a dense matrix.
pub const MAX_DENSE_WIDTH: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("qubit {qubit} out of range for a {width}-qubit circuit")]
    IndexOutOfRange { qubit: usize, width: usize },
    #[error("gate `{gate}` repeats qubit {qubit}")]
    DuplicateQubit { gate: &'static str, qubit: usize },
    #[error("gate `{gate}` acts on {expected} qubits, got {actual}")]
    ArityMismatch { gate: &'static str, expected: usize, actual: usize },
    #[error("qubit {qubit} was measured and cannot receive a later unitary gate")]
    MeasuredQubitReuse { qubit: usize },
    #[error("circuit contains a measurement and is not reversible")]
    NonReversible,
    #[error("dense unitary limited to {max} qubits, circuit has {width}")]
    TooWide { width: usize, max: usize },
}

/// How the qubits of a lowered circuit are split.
///
/// Indices `0..data` form the component's quantum input/output register,
/// the next `required` qubits are ancillas the component's interface asks the
/// architecture to allocate, and the last `scratch` qubits are clean helpers
/// the component returns to |0⟩ itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RegisterLayout {
    pub data: usize,
    pub required: usize,
    pub scratch: usize,
}

impl RegisterLayout {
    pub fn width(&self) -> usize {
        self.data + self.required + self.scratch
    }

    pub fn data_only(width: usize) -> Self {
        RegisterLayout { data: width, required: 0, scratch: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCounts {
    pub total: usize,
    pub one_qubit: usize,
    pub two_qubit: usize,
    pub three_qubit: usize,
    /// Gates on four or more qubits (wide controlled unitaries).
    pub wider: usize,
    pub measurements: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateCircuit {
    layout: RegisterLayout,
    classical_bits: usize,
    mid_circuit_measurement: bool,
    ops: Vec<Gate>,
    measured: Vec<bool>,
}

impl GateCircuit {
    pub fn new(width: usize) -> Self {
        GateCircuit::with_layout(RegisterLayout::data_only(width))
    }

    pub fn with_layout(layout: RegisterLayout) -> Self {
        GateCircuit {
            layout,
            classical_bits: 0,
            mid_circuit_measurement: false,
            ops: Vec::new(),
            measured: vec![false; layout.width()],
        }
    }

    /// Lifts the rule that a measured qubit receives no later unitary.
    pub fn allow_mid_circuit_measurement(mut self) -> Self {
        self.mid_circuit_measurement = true;
        self
    }

    pub fn width(&self) -> usize {
        self.layout.width()
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn ancilla_count(&self) -> usize {
        self.layout.required + self.layout.scratch
    }

    pub fn classical_bits(&self) -> usize {
        self.classical_bits
    }

    pub fn reserve_classical_bits(&mut self, bits: usize) {
        self.classical_bits = self.classical_bits.max(bits);
    }

    pub fn ops(&self) -> &[Gate] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn mid_circuit_measurement(&self) -> bool {
        self.mid_circuit_measurement
    }

    pub fn has_measurements(&self) -> bool {
        self.ops.iter().any(Gate::is_measurement)
    }

    pub fn append(&mut self, gate: Gate) -> Result<&mut Self, CircuitError> {
        self.check(&gate)?;
        if let GateKind::Measure { clbit } = gate.kind {
            self.measured[gate.qubits[0]] = true;
            self.classical_bits = self.classical_bits.max(clbit + 1);
        }
        self.ops.push(gate);
        Ok(self)
    }

    /// Chainable `append` for circuits built from known-good gates.
    ///
    /// Panics on an invalid gate.
    pub fn push(&mut self, gate: Gate) -> &mut Self {
        if let Err(e) = self.append(gate) {
            panic!("invalid gate: {e}");
        }
        self
    }

    fn check(&self, gate: &Gate) -> Result<(), CircuitError> {
        let name = gate.kind.name();
        if gate.qubits.len() != gate.kind.arity() {
            return Err(CircuitError::ArityMismatch { gate: name, expected: gate.kind.arity(), actual: gate.qubits.len() });
        }
        let width = self.width();
        let mut seen = HashSet::with_capacity(gate.qubits.len());
        for &q in &gate.qubits {
            if q >= width {
                return Err(CircuitError::IndexOutOfRange { qubit: q, width });
            }
            if !seen.insert(q) {
                return Err(CircuitError::DuplicateQubit { gate: name, qubit: q });
            }
        }
        if !gate.is_measurement() && !self.mid_circuit_measurement {
            if let Some(&q) = gate.qubits.iter().find(|&&q| self.measured[q]) {
                return Err(CircuitError::MeasuredQubitReuse { qubit: q });
            }
        }
        Ok(())
    }

    /// Appends `other` with its qubit `i` mapped to `qubit_map[i]` and its
    /// classical bit `j` mapped to `clbit_offset + j`.
    pub fn extend_mapped(&mut self, other: &GateCircuit, qubit_map: &[usize], clbit_offset: usize) -> Result<(), CircuitError> {
        for gate in &other.ops {
            let qubits = gate
                .qubits
                .iter()
                .map(|&q| qubit_map.get(q).copied().ok_or(CircuitError::IndexOutOfRange { qubit: q, width: qubit_map.len() }))
                .collect::<Result<Vec<_>, _>>()?;
            let kind = match gate.kind {
                GateKind::Measure { clbit } => GateKind::Measure { clbit: clbit + clbit_offset },
                ref k => k.clone(),
            };
            self.append(Gate::new(kind, qubits))?;
        }
        self.reserve_classical_bits(clbit_offset + other.classical_bits);
        Ok(())
    }

    /// Appends `other` on the same qubit indices.
    pub fn extend(&mut self, other: &GateCircuit) -> Result<(), CircuitError> {
        let map: Vec<usize> = (0..other.width()).collect();
        self.extend_mapped(other, &map, 0)
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts { total: self.ops.len(), ..GateCounts::default() };
        for g in &self.ops {
            if g.is_measurement() {
                counts.measurements += 1;
                continue;
            }
            match g.arity() {
                1 => counts.one_qubit += 1,
                2 => counts.two_qubit += 1,
                3 => counts.three_qubit += 1,
                _ => counts.wider += 1,
            }
        }
        counts
    }

    /// As-soon-as-possible layering; measurements occupy a layer like any gate.
    pub fn depth(&self) -> usize {
        let mut frontier = vec![0usize; self.width()];
        let mut depth = 0;
        for g in &self.ops {
            let layer = g.qubits.iter().map(|&q| frontier[q]).max().unwrap_or(0) + 1;
            for &q in &g.qubits {
                frontier[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    pub fn dagger(&self) -> Result<GateCircuit, CircuitError> {
        let mut out = GateCircuit { ops: Vec::with_capacity(self.ops.len()), ..self.clone() };
        out.measured.iter_mut().for_each(|m| *m = false);
        for g in self.ops.iter().rev() {
            out.ops.push(g.inverse().ok_or(CircuitError::NonReversible)?);
        }
        Ok(out)
    }

    /// Copy with every measurement removed.
    pub fn without_measurements(&self) -> GateCircuit {
        let mut out = GateCircuit { ops: Vec::with_capacity(self.ops.len()), ..self.clone() };
        out.measured.iter_mut().for_each(|m| *m = false);
        out.ops.extend(self.ops.iter().filter(|g| !g.is_measurement()).cloned());
        out
    }

    /// Dense `2^w x 2^w` unitary, the product of the embedded gate matrices
    /// in application order.
    pub fn unitary(&self) -> Result<Matrix, CircuitError> {
        let width = self.width();
        if width > MAX_DENSE_WIDTH {
            return Err(CircuitError::TooWide { width, max: MAX_DENSE_WIDTH });
        }
        let dim = 1usize << width;
        let mut u = Matrix::identity(dim, dim);
        for g in &self.ops {
            let local = g.kind.matrix().ok_or(CircuitError::NonReversible)?;
            u = embed_left(&local, &g.qubits, &u);
        }
        Ok(u)
    }

    pub(crate) fn replace_kind(&mut self, op: usize, kind: GateKind) {
        debug_assert_eq!(self.ops[op].kind.arity(), kind.arity());
        self.ops[op].kind = kind;
    }
}

/// `unitary_of` as a free function.
pub fn unitary_of(circuit: &GateCircuit) -> Result<Matrix, CircuitError> {
    circuit.unitary()
}

/// Computes `G_embedded * u` where `G` acts on `qubits` of the full register.
fn embed_left(local: &Matrix, qubits: &[usize], u: &Matrix) -> Matrix {
    let dim = u.nrows();
    let k = qubits.len();
    let local_dim = 1usize << k;
    let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
    let scatter =
        |l: usize| -> usize { qubits.iter().enumerate().filter(|(b, _)| l >> b & 1 == 1).map(|(_, &q)| 1usize << q).sum() };
    let offsets: Vec<usize> = (0..local_dim).map(scatter).collect();
    let mut out = Matrix::zeros(dim, dim);
    for row in 0..dim {
        let rest = row & !mask;
        let l_row = offsets.iter().position(|&o| o == row & mask).unwrap();
        for (l_col, &off) in offsets.iter().enumerate() {
            let coeff = local[(l_row, l_col)];
            if coeff == Complex64::new(0.0, 0.0) {
                continue;
            }
            let src = rest | off;
            for col in 0..dim {
                out[(row, col)] += coeff * u[(src, col)];
            }
        }
    }
    out
}

/// Where a variational parameter enters a circuit: gate `op` gets angle
/// `coefficient * theta[param] + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSlot {
    pub op: usize,
    pub param: usize,
    pub coefficient: f64,
    pub offset: f64,
}

/// A circuit template whose rotation angles are affine in a parameter vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricCircuit {
    template: GateCircuit,
    slots: Vec<ParamSlot>,
    n_params: usize,
}

impl ParametricCircuit {
    pub fn new(n_params: usize, template: GateCircuit) -> Self {
        ParametricCircuit { template, slots: Vec::new(), n_params }
    }

    /// Appends a rotation gate whose angle is `coefficient * theta[param] + offset`.
    /// `kind` supplies the gate family; its angle is overwritten on bind.
    pub fn push_param(&mut self, kind: GateKind, qubits: &[usize], param: usize, coefficient: f64, offset: f64) {
        assert!(param < self.n_params, "parameter index {param} >= {}", self.n_params);
        assert!(kind.angle().is_some(), "parameterized gate must carry an angle");
        let op = self.template.len();
        self.template.push(Gate::new(kind, qubits.to_vec()));
        self.slots.push(ParamSlot { op, param, coefficient, offset });
    }

    pub fn push(&mut self, gate: Gate) {
        self.template.push(gate);
    }

    pub fn extend(&mut self, other: &GateCircuit) {
        self.template.extend(other).expect("fixed block must fit the template");
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn slots(&self) -> &[ParamSlot] {
        &self.slots
    }

    pub fn template(&self) -> &GateCircuit {
        &self.template
    }

    pub(crate) fn from_parts(template: GateCircuit, slots: Vec<ParamSlot>, n_params: usize) -> Self {
        ParametricCircuit { template, slots, n_params }
    }

    pub fn bind(&self, theta: &[f64]) -> GateCircuit {
        assert_eq!(theta.len(), self.n_params, "parameter vector length");
        let mut c = self.template.clone();
        for s in &self.slots {
            let angle = s.coefficient * theta[s.param] + s.offset;
            let kind = c.ops()[s.op].kind.with_angle(angle).expect("slot gate has an angle");
            c.replace_kind(s.op, kind);
        }
        c
    }

    /// Bound circuit with the gate of slot `slot` shifted by `delta` radians.
    pub fn bind_shifted(&self, theta: &[f64], slot: usize, delta: f64) -> GateCircuit {
        let mut c = self.bind(theta);
        let s = self.slots[slot];
        let angle = c.ops()[s.op].kind.angle().expect("slot gate has an angle") + delta;
        let kind = c.ops()[s.op].kind.with_angle(angle).expect("slot gate has an angle");
        c.replace_kind(s.op, kind);
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> GateCircuit {
        let mut c = GateCircuit::new(2);
        c.push(Gate::h(0)).push(Gate::cnot(0, 1));
        c
    }

    fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn append_rules() {
        let mut c = GateCircuit::new(1);
        c.append(Gate::h(0)).unwrap();
        assert_eq!(c.len(), 1);

        let mut c = GateCircuit::new(2);
        assert!(matches!(c.append(Gate::cnot(0, 0)), Err(CircuitError::DuplicateQubit { .. })));
        assert!(matches!(c.append(Gate::h(2)), Err(CircuitError::IndexOutOfRange { qubit: 2, width: 2 })));
        assert!(matches!(
            c.append(Gate::new(GateKind::Cnot, vec![0])),
            Err(CircuitError::ArityMismatch { expected: 2, actual: 1, .. })
        ));

        let mut c = GateCircuit::new(1);
        c.append(Gate::measure(0, 0)).unwrap();
        assert_eq!(c.append(Gate::x(0)).unwrap_err(), CircuitError::MeasuredQubitReuse { qubit: 0 });
        // measuring again is not a unitary
        c.append(Gate::measure(0, 1)).unwrap();
        assert_eq!(c.classical_bits(), 2);

        let mut c = GateCircuit::new(1).allow_mid_circuit_measurement();
        c.append(Gate::measure(0, 0)).unwrap();
        c.append(Gate::x(0)).unwrap();
    }

    #[test]
    fn bell_metrics() {
        let c = bell();
        let counts = c.gate_counts();
        assert_eq!((counts.total, counts.one_qubit, counts.two_qubit), (2, 1, 1));
        assert_eq!(c.depth(), 2);
        assert_eq!(GateCircuit::new(3).depth(), 0);
    }

    #[test]
    fn linear_chain_depth() {
        let mut c = GateCircuit::new(5);
        c.push(Gate::h(0));
        for q in 0..4 {
            c.push(Gate::cnot(q, q + 1));
        }
        assert_eq!(c.gate_counts().total, 5);
        assert_eq!(c.depth(), 5);
    }

    #[test]
    fn measurements_take_layers() {
        let mut c = GateCircuit::new(2);
        c.push(Gate::h(0)).push(Gate::measure(0, 0)).push(Gate::measure(1, 1));
        assert_eq!(c.depth(), 2);
        assert_eq!(c.gate_counts().measurements, 2);
    }

    #[test]
    fn dagger_inverts_angles() {
        let mut c = GateCircuit::new(1);
        c.push(Gate::rz(std::f64::consts::FRAC_PI_3, 0));
        let d = c.dagger().unwrap();
        assert_eq!(d.ops()[0], Gate::rz(-std::f64::consts::FRAC_PI_3, 0));
        assert_eq!(d.dagger().unwrap(), c);

        let mut m = GateCircuit::new(1);
        m.push(Gate::measure(0, 0));
        assert_eq!(m.dagger().unwrap_err(), CircuitError::NonReversible);
        assert_eq!(m.unitary().unwrap_err(), CircuitError::NonReversible);
    }

    #[test]
    fn dense_unitary_basics() {
        let id = GateCircuit::new(1).unitary().unwrap();
        assert_eq!(id, Matrix::identity(2, 2));

        let mut hh = GateCircuit::new(1);
        hh.push(Gate::h(0)).push(Gate::h(0));
        assert!(max_abs_diff(&hh.unitary().unwrap(), &Matrix::identity(2, 2)) < 1e-12);

        assert!(matches!(GateCircuit::new(11).unitary(), Err(CircuitError::TooWide { width: 11, max: 10 })));
    }

    #[test]
    fn embedding_respects_little_endian() {
        // X on qubit 1 of a 2-qubit register maps |0> to |2>.
        let mut c = GateCircuit::new(2);
        c.push(Gate::x(1));
        let u = c.unitary().unwrap();
        assert_eq!(u[(2, 0)], Complex64::new(1.0, 0.0));
        // CNOT with control 1, target 0 maps |2> to |3>.
        let mut c = GateCircuit::new(2);
        c.push(Gate::cnot(1, 0));
        let u = c.unitary().unwrap();
        assert_eq!(u[(3, 2)], Complex64::new(1.0, 0.0));
        assert_eq!(u[(1, 1)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn parametric_binding() {
        let mut p = ParametricCircuit::new(2, GateCircuit::new(2));
        p.push_param(GateKind::Ry(0.0), &[0], 0, 1.0, 0.0);
        p.push(Gate::cnot(0, 1));
        p.push_param(GateKind::Rz(0.0), &[1], 1, 2.0, 0.5);
        let c = p.bind(&[0.3, 0.1]);
        assert_eq!(c.ops()[0], Gate::ry(0.3, 0));
        assert_eq!(c.ops()[2], Gate::rz(0.7, 1));
        let s = p.bind_shifted(&[0.3, 0.1], 1, 1.0);
        assert_eq!(s.ops()[2], Gate::rz(1.7, 1));
    }
}
