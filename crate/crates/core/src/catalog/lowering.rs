//! Gate-level constructions for the lowerable primitives.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{descriptor, CatalogError, ParamValue, Params, PrimitiveId};
use crate::circuit::{GateCircuit, ParametricCircuit, RegisterLayout};
use crate::gate::{ControlledUnitary, Gate, GateKind, Matrix};

/// Largest modulus the arithmetic oracle builds a permutation for.
pub const MAX_MODULUS: u64 = 32;

fn bad(msg: impl Into<String>) -> CatalogError {
    CatalogError::BadParams(msg.into())
}

/// Scratch qubits used by a multi-controlled X with `controls` controls.
pub fn mcx_scratch(controls: usize) -> usize {
    if controls >= 3 {
        controls - 1
    } else {
        0
    }
}

/// Multi-controlled X. Three or more controls use a Toffoli ladder over
/// `scratch` (at least `controls - 1` clean qubits, returned clean).
pub fn append_mcx(c: &mut GateCircuit, controls: &[usize], target: usize, scratch: &[usize]) {
    match controls.len() {
        0 => {
            c.push(Gate::x(target));
        }
        1 => {
            c.push(Gate::cnot(controls[0], target));
        }
        2 => {
            c.push(Gate::toffoli(controls[0], controls[1], target));
        }
        k => {
            assert!(scratch.len() >= k - 1, "mcx with {k} controls needs {} scratch qubits", k - 1);
            let mut ladder = vec![Gate::toffoli(controls[0], controls[1], scratch[0])];
            for i in 2..k {
                ladder.push(Gate::toffoli(scratch[i - 2], controls[i], scratch[i - 1]));
            }
            for g in &ladder {
                c.push(g.clone());
            }
            c.push(Gate::cnot(scratch[k - 2], target));
            for g in ladder.into_iter().rev() {
                c.push(g);
            }
        }
    }
}

/// Phase flip on the all-ones state of `qubits`.
pub fn append_mcz(c: &mut GateCircuit, qubits: &[usize], scratch: &[usize]) {
    match qubits.len() {
        0 => {}
        1 => {
            c.push(Gate::z(qubits[0]));
        }
        2 => {
            c.push(Gate::cz(qubits[0], qubits[1]));
        }
        k => {
            let t = qubits[k - 1];
            c.push(Gate::h(t));
            append_mcx(c, &qubits[..k - 1], t, scratch);
            c.push(Gate::h(t));
        }
    }
}

/// X on every qubit whose bit in `state` is 0; self-inverse.
fn dress(c: &mut GateCircuit, qubits: &[usize], state: usize) {
    for (i, &q) in qubits.iter().enumerate() {
        if state >> i & 1 == 0 {
            c.push(Gate::x(q));
        }
    }
}

/// Phase flip on basis state `state` of `qubits`.
pub fn append_reflection(c: &mut GateCircuit, qubits: &[usize], state: usize, scratch: &[usize]) {
    dress(c, qubits, state);
    append_mcz(c, qubits, scratch);
    dress(c, qubits, state);
}

fn range(start: usize, len: usize) -> Vec<usize> {
    (start..start + len).collect()
}

fn check_state(name: &str, state: usize, n: usize) -> Result<(), CatalogError> {
    if n < usize::BITS as usize && state >> n != 0 {
        return Err(bad(format!("`{name}` value {state} does not fit in {n} qubits")));
    }
    Ok(())
}

fn qubit_count(params: &Params, default: usize) -> Result<usize, CatalogError> {
    let n = params.usize_or("n", default)?;
    if n == 0 {
        return Err(bad("`n` must be at least 1"));
    }
    Ok(n)
}

/// Data plus scratch layout for `n` data qubits under a multi-controlled gate
/// touching all of them.
fn mcz_layout(n: usize) -> RegisterLayout {
    RegisterLayout { data: n, required: 0, scratch: mcx_scratch(n.saturating_sub(1)) }
}

pub fn phase_oracle(n: usize, marked: &[usize]) -> Result<GateCircuit, CatalogError> {
    let layout = mcz_layout(n);
    let mut c = GateCircuit::with_layout(layout);
    let data = range(0, n);
    let scratch = range(n, layout.scratch);
    for &m in marked {
        check_state("marked", m, n)?;
        append_reflection(&mut c, &data, m, &scratch);
    }
    Ok(c)
}

/// `2|s><s| - I` up to a global phase of -1.
pub fn diffusion(n: usize) -> GateCircuit {
    let layout = mcz_layout(n);
    let mut c = GateCircuit::with_layout(layout);
    let data = range(0, n);
    let scratch = range(n, layout.scratch);
    for &q in &data {
        c.push(Gate::h(q));
    }
    append_reflection(&mut c, &data, 0, &scratch);
    for &q in &data {
        c.push(Gate::h(q));
    }
    c
}

pub fn grover_operator(n: usize, marked: &[usize], iterations: usize) -> Result<GateCircuit, CatalogError> {
    let oracle = phase_oracle(n, marked)?;
    let diff = diffusion(n);
    let mut c = GateCircuit::with_layout(mcz_layout(n));
    for _ in 0..iterations {
        c.extend(&oracle).expect("same layout");
        c.extend(&diff).expect("same layout");
    }
    Ok(c)
}

/// Full search circuit: uniform superposition, `iterations` Grover steps and,
/// optionally, measurement of the data register.
pub fn grover_circuit(n: usize, marked: &[usize], iterations: usize, measure: bool) -> Result<GateCircuit, CatalogError> {
    let mut c = GateCircuit::with_layout(mcz_layout(n));
    for q in 0..n {
        c.push(Gate::h(q));
    }
    c.extend(&grover_operator(n, marked, iterations)?).expect("same layout");
    if measure {
        for q in 0..n {
            c.push(Gate::measure(q, q));
        }
    }
    Ok(c)
}

/// Iteration count maximizing success for `marked` of `2^n` states.
pub fn optimal_grover_iterations(n: usize, marked: usize) -> usize {
    let theta = (marked as f64 / (1u64 << n) as f64).sqrt().asin();
    (PI / (4.0 * theta) - 0.5).round().max(0.0) as usize
}

/// QFT with controlled phases restricted to `k <= cutoff`.
pub fn qft(n: usize, cutoff: usize) -> GateCircuit {
    let mut c = GateCircuit::new(n);
    for j in (0..n).rev() {
        c.push(Gate::h(j));
        for k in 1..=j.min(cutoff) {
            c.push(Gate::cphase(PI / (1u64 << k) as f64, j - k, j));
        }
    }
    for i in 0..n / 2 {
        c.push(Gate::swap(i, n - 1 - i));
    }
    c
}

pub fn inverse_qft(n: usize) -> GateCircuit {
    qft(n, n).dagger().expect("qft is unitary")
}

pub fn ghz(n: usize) -> GateCircuit {
    let mut c = GateCircuit::new(n);
    c.push(Gate::h(0));
    for q in 1..n {
        c.push(Gate::cnot(q - 1, q));
    }
    c
}

/// W state via a rotation cascade: qubit `k` keeps amplitude `1/sqrt(n-k)` of
/// the remaining weight and passes the rest to qubit `k+1`.
pub fn w_state(n: usize) -> GateCircuit {
    let mut c = GateCircuit::new(n);
    c.push(Gate::x(0));
    for k in 0..n.saturating_sub(1) {
        let theta = 2.0 * (1.0 / (n - k) as f64).sqrt().acos();
        // controlled Ry(theta) from k onto k+1
        c.push(Gate::ry(theta / 2.0, k + 1));
        c.push(Gate::cnot(k, k + 1));
        c.push(Gate::ry(-theta / 2.0, k + 1));
        c.push(Gate::cnot(k, k + 1));
        c.push(Gate::cnot(k + 1, k));
    }
    c
}

pub fn cluster(n: usize, edges: &[(usize, usize)]) -> Result<GateCircuit, CatalogError> {
    let mut c = GateCircuit::new(n);
    for q in 0..n {
        c.push(Gate::h(q));
    }
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return Err(bad(format!("edge ({a}, {b}) is not a pair of distinct vertices below {n}")));
        }
        c.push(Gate::cz(a, b));
    }
    Ok(c)
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|q| (q - 1, q)).collect()
}

pub fn bell(variant: &str) -> Result<GateCircuit, CatalogError> {
    let (z, x) = match variant {
        "phi+" | "Φ+" => (false, false),
        "phi-" | "Φ-" => (true, false),
        "psi+" | "Ψ+" => (false, true),
        "psi-" | "Ψ-" => (true, true),
        other => return Err(bad(format!("unknown Bell variant `{other}` (expected phi+, phi-, psi+, psi-)"))),
    };
    let mut c = GateCircuit::new(2);
    c.push(Gate::h(0)).push(Gate::cnot(0, 1));
    if x {
        c.push(Gate::x(1));
    }
    if z {
        c.push(Gate::z(0));
    }
    Ok(c)
}

/// `diag(1, e^{2 pi i phase})`.
pub fn phase_unitary(phase: f64) -> Matrix {
    let d = [Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, 2.0 * PI * phase)];
    Matrix::from_diagonal(&nalgebra::DVector::from_row_slice(&d))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Register width needed for residues mod `modulus`.
pub fn modulus_width(modulus: u64) -> usize {
    (u64::BITS - (modulus - 1).leading_zeros()).max(1) as usize
}

/// Permutation `|x> -> |a x mod N>` for `x < N`, identity on `x >= N`.
pub fn modmul_unitary(a: u64, modulus: u64) -> Result<Matrix, CatalogError> {
    if !(2..=MAX_MODULUS).contains(&modulus) {
        return Err(bad(format!("modulus {modulus} outside 2..={MAX_MODULUS}")));
    }
    if gcd(a % modulus, modulus) != 1 {
        return Err(bad(format!("a = {a} is not coprime to {modulus}")));
    }
    let dim = 1usize << modulus_width(modulus);
    let mut m = Matrix::zeros(dim, dim);
    for x in 0..dim as u64 {
        let y = if x < modulus { a * x % modulus } else { x };
        m[(y as usize, x as usize)] = Complex64::new(1.0, 0.0);
    }
    Ok(m)
}

fn qpe_target(params: &Params) -> Result<(Matrix, String), CatalogError> {
    match (params.f64("phase")?, params.usize("a")?, params.usize("modulus")?) {
        (Some(phase), None, None) => Ok((phase_unitary(phase), format!("P({phase})"))),
        (None, Some(a), Some(m)) => Ok((modmul_unitary(a as u64, m as u64)?, format!("M{a}mod{m}"))),
        (None, None, None) => Ok((phase_unitary(0.0), "P(0)".into())),
        _ => Err(bad("give either `phase` or both `a` and `modulus`")),
    }
}

fn target_width(u: &Matrix) -> usize {
    u.nrows().trailing_zeros() as usize
}

/// Textbook phase estimation: target register `0..m`, control register
/// `m..m+t` (required ancillas), control `k` measured into bit `k`.
pub fn qpe(u: &Matrix, t: usize, label: &str) -> GateCircuit {
    let m = target_width(u);
    let mut c = GateCircuit::with_layout(RegisterLayout { data: m, required: t, scratch: 0 });
    let targets = range(0, m);
    for k in 0..t {
        c.push(Gate::h(m + k));
    }
    for k in 0..t {
        let cu = ControlledUnitary::new(u.clone(), 1u64 << k, label);
        c.push(Gate::controlled_u(cu, m + k, &targets));
    }
    let controls = range(m, t);
    let iqft = inverse_qft(t);
    c.extend_mapped(&iqft, &controls, 0).expect("control register fits");
    for k in 0..t {
        c.push(Gate::measure(m + k, k));
    }
    c
}

/// One round of iterative phase estimation. Round `r` extracts bit
/// `t - 1 - r` of the phase, using the bits measured in earlier rounds.
pub fn iterative_qpe_round(
    u: &Matrix,
    t: usize,
    round: usize,
    prior_bits: &[u8],
    label: &str,
) -> Result<GateCircuit, CatalogError> {
    if round >= t {
        return Err(bad(format!("round {round} out of range for t = {t}")));
    }
    if prior_bits.len() < round {
        return Err(bad(format!("round {round} needs {round} prior bits, got {}", prior_bits.len())));
    }
    let m = target_width(u);
    let ctl = m;
    let mut c = GateCircuit::with_layout(RegisterLayout { data: m, required: 1, scratch: 0 });
    c.push(Gate::h(ctl));
    let cu = ControlledUnitary::new(u.clone(), 1u64 << (t - 1 - round), label);
    c.push(Gate::controlled_u(cu, ctl, &range(0, m)));
    let omega: f64 = (1..=round).map(|j| -2.0 * PI * f64::from(prior_bits[round - j]) * 0.5f64.powi(j as i32 + 1)).sum();
    if omega != 0.0 {
        c.push(Gate::rz(omega, ctl));
    }
    c.push(Gate::h(ctl));
    c.push(Gate::measure(ctl, 0));
    Ok(c)
}

pub fn hardware_efficient(n: usize, layers: usize) -> ParametricCircuit {
    let mut c = ParametricCircuit::new(2 * n * layers, GateCircuit::new(n));
    for l in 0..layers {
        for q in 0..n {
            let base = l * 2 * n + 2 * q;
            c.push_param(GateKind::Ry(0.0), &[q], base, 1.0, 0.0);
            c.push_param(GateKind::Rz(0.0), &[q], base + 1, 1.0, 0.0);
        }
        for q in 1..n {
            c.push(Gate::cnot(q - 1, q));
        }
    }
    c
}

/// QAOA for weighted MaxCut, parameters `[gamma_1, beta_1, ...]`.
pub fn qaoa(n: usize, edges: &[(usize, usize)], weights: &[f64], p: usize) -> Result<ParametricCircuit, CatalogError> {
    if weights.len() != edges.len() {
        return Err(bad(format!("{} weights for {} edges", weights.len(), edges.len())));
    }
    let mut c = ParametricCircuit::new(2 * p, GateCircuit::new(n));
    for q in 0..n {
        c.push(Gate::h(q));
    }
    for layer in 0..p {
        for (&(i, j), &w) in edges.iter().zip(weights) {
            if i >= n || j >= n || i == j {
                return Err(bad(format!("edge ({i}, {j}) is not a pair of distinct vertices below {n}")));
            }
            c.push(Gate::cnot(i, j));
            c.push_param(GateKind::Rz(0.0), &[j], 2 * layer, -w, 0.0);
            c.push(Gate::cnot(i, j));
        }
        for q in 0..n {
            c.push_param(GateKind::Rx(0.0), &[q], 2 * layer + 1, 2.0, 0.0);
        }
    }
    Ok(c)
}

/// Appends `exp(-i coefficient theta[param] P / 2)` for the Pauli string `P`
/// given as `(qubit, 'X'|'Y'|'Z')` pairs in ascending qubit order.
pub fn push_pauli_rotation(c: &mut ParametricCircuit, pauli: &[(usize, char)], param: usize, coefficient: f64) {
    let change = |c: &mut ParametricCircuit, inverse: bool| {
        for &(q, p) in pauli {
            match p {
                'X' => c.push(Gate::h(q)),
                'Y' => c.push(Gate::rx(if inverse { -FRAC_PI_2 } else { FRAC_PI_2 }, q)),
                _ => {}
            }
        }
    };
    change(c, false);
    for w in pauli.windows(2) {
        c.push(Gate::cnot(w[0].0, w[1].0));
    }
    let last = pauli.last().expect("non-empty Pauli string").0;
    c.push_param(GateKind::Rz(0.0), &[last], param, coefficient, 0.0);
    for w in pauli.windows(2).rev() {
        c.push(Gate::cnot(w[0].0, w[1].0));
    }
    change(c, true);
}

fn pauli_string(qubits: &[usize], letters: &str, fill_z: bool) -> Vec<(usize, char)> {
    let mut out = Vec::new();
    let lo = qubits[0];
    let hi = *qubits.last().unwrap();
    for q in lo..=hi {
        if let Some(pos) = qubits.iter().position(|&x| x == q) {
            out.push((q, letters.as_bytes()[pos] as char));
        } else if fill_z {
            out.push((q, 'Z'));
        }
    }
    out
}

/// Two-electron UCCSD-style ansatz on `n` spin orbitals (even index = spin up),
/// Hartree-Fock reference on qubits 0 and 1. Parameters `[theta_s, theta_d]`,
/// one shared by all singles and one by all doubles.
pub fn uccsd(n: usize) -> Result<ParametricCircuit, CatalogError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(bad(format!("UCCSD ansatz needs an even n >= 4, got {n}")));
    }
    let mut c = ParametricCircuit::new(2, GateCircuit::new(n));
    c.push(Gate::x(0));
    c.push(Gate::x(1));
    for i in 0..2 {
        for a in (2 + i..n).step_by(2) {
            c_push_strings(&mut c, &[i, a], &[("XY", 1.0), ("YX", -1.0)], 0);
        }
    }
    const DOUBLE: [(&str, f64); 8] = [
        ("XXXY", 0.25),
        ("XXYX", 0.25),
        ("XYXX", -0.25),
        ("YXXX", 0.25),
        ("XYYY", -0.25),
        ("YXYY", -0.25),
        ("YYXY", 0.25),
        ("YYYX", 0.25),
    ];
    for a in (2..n).step_by(2) {
        c_push_strings(&mut c, &[0, 1, a, a + 1], &DOUBLE, 1);
    }
    Ok(c)
}

fn c_push_strings(c: &mut ParametricCircuit, qubits: &[usize], strings: &[(&str, f64)], param: usize) {
    for &(letters, coeff) in strings {
        // Jordan-Wigner parity strings only between the two halves of each pair.
        let pairs: Vec<Vec<(usize, char)>> = qubits
            .chunks(2)
            .zip(letters.as_bytes().chunks(2))
            .map(|(qs, ls)| pauli_string(qs, std::str::from_utf8(ls).unwrap(), qs.len() == 2))
            .collect();
        let s: Vec<(usize, char)> = pairs.into_iter().flatten().collect();
        push_pauli_rotation(c, &s, param, coeff);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entangler {
    Linear,
    Ring,
    Full,
    None,
}

impl std::str::FromStr for Entangler {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Entangler::Linear),
            "ring" => Ok(Entangler::Ring),
            "full" => Ok(Entangler::Full),
            "none" => Ok(Entangler::None),
            other => Err(bad(format!("unknown entangler `{other}`"))),
        }
    }
}

impl Entangler {
    pub fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            Entangler::Linear => chain(n),
            Entangler::Ring if n > 2 => chain(n).into_iter().chain([(n - 1, 0)]).collect(),
            Entangler::Ring => chain(n),
            Entangler::Full => (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect(),
            Entangler::None => Vec::new(),
        }
    }
}

/// Layered template: each layer applies every rotation in `rotations` to
/// every qubit and then the entangling pattern.
pub fn heuristic(n: usize, layers: usize, rotations: &[GateKind], entangler: Entangler, gate: GateKind) -> ParametricCircuit {
    let per_layer = n * rotations.len();
    let mut c = ParametricCircuit::new(per_layer * layers, GateCircuit::new(n));
    for l in 0..layers {
        for q in 0..n {
            for (r, kind) in rotations.iter().enumerate() {
                c.push_param(kind.clone(), &[q], l * per_layer + q * rotations.len() + r, 1.0, 0.0);
            }
        }
        for (a, b) in entangler.pairs(n) {
            c.push(Gate::new(gate.clone(), vec![a, b]));
        }
    }
    c
}

/// First-order Trotter steps of `H = -J sum Z_i Z_{i+1} - h sum X_i` on an
/// open chain. Step `s` uses parameters `2s` (bond angle) and `2s + 1`
/// (field angle); physical evolution for time `dt` is `[-2 J dt, -2 h dt]`.
pub fn tfim_trotter(n: usize, steps: usize) -> ParametricCircuit {
    let mut c = ParametricCircuit::new(2 * steps, GateCircuit::new(n));
    for s in 0..steps {
        for (a, b) in chain(n) {
            c.push(Gate::cnot(a, b));
            c.push_param(GateKind::Rz(0.0), &[b], 2 * s, 1.0, 0.0);
            c.push(Gate::cnot(a, b));
        }
        for q in 0..n {
            c.push_param(GateKind::Rx(0.0), &[q], 2 * s + 1, 1.0, 0.0);
        }
    }
    c
}

fn check_keys(id: PrimitiveId, params: &Params) -> Result<(), CatalogError> {
    let d = descriptor(id);
    for (k, _) in params.iter() {
        if !d.parameters.iter().any(|p| p.name == k) {
            return Err(bad(format!("`{}` takes no parameter `{k}`", d.ident)));
        }
    }
    Ok(())
}

fn layers(params: &Params) -> Result<usize, CatalogError> {
    let l = params.usize_or("layers", 1)?;
    if l == 0 {
        return Err(bad("`layers` must be at least 1"));
    }
    Ok(l)
}

fn rotation_kind(name: &str) -> Result<GateKind, CatalogError> {
    match name {
        "rx" => Ok(GateKind::Rx(0.0)),
        "ry" => Ok(GateKind::Ry(0.0)),
        "rz" => Ok(GateKind::Rz(0.0)),
        other => Err(bad(format!("unknown rotation `{other}`"))),
    }
}

fn two_qubit_kind(name: &str) -> Result<GateKind, CatalogError> {
    match name {
        "cx" => Ok(GateKind::Cnot),
        "cz" => Ok(GateKind::Cz),
        other => Err(bad(format!("unknown entangling gate `{other}`"))),
    }
}

/// Parameterized template of a variational primitive.
pub fn lower_parametric(id: PrimitiveId, params: &Params) -> Result<ParametricCircuit, CatalogError> {
    check_keys(id, params)?;
    match id.get() {
        3 => {
            let mut c = ParametricCircuit::new(3, GateCircuit::new(1));
            c.push_param(GateKind::Rz(0.0), &[0], 2, 1.0, 0.0);
            c.push_param(GateKind::Ry(0.0), &[0], 0, 1.0, 0.0);
            c.push_param(GateKind::Rz(0.0), &[0], 1, 1.0, 0.0);
            Ok(c)
        }
        25 => Ok(hardware_efficient(qubit_count(params, 2)?, layers(params)?)),
        26 => {
            let n = qubit_count(params, 4)?;
            let edges = match params.edges("edges")? {
                Some(e) => e,
                None => Entangler::Ring.pairs(n),
            };
            let weights = params.f64_list("weights")?.unwrap_or_else(|| vec![1.0; edges.len()]);
            let p = params.usize_or("p", 1)?;
            if p == 0 {
                return Err(bad("`p` must be at least 1"));
            }
            qaoa(n, &edges, &weights, p)
        }
        27 => uccsd(qubit_count(params, 4)?),
        28 => {
            let n = qubit_count(params, 2)?;
            let rotations = match params.text_list("rotations")? {
                Some(r) => r.iter().map(|s| rotation_kind(s)).collect::<Result<Vec<_>, _>>()?,
                None => vec![GateKind::Ry(0.0)],
            };
            if rotations.is_empty() {
                return Err(bad("`rotations` must name at least one rotation"));
            }
            let entangler = params.text("entangler")?.unwrap_or("linear").parse()?;
            let gate = two_qubit_kind(params.text("gate")?.unwrap_or("cx"))?;
            Ok(heuristic(n, layers(params)?, &rotations, entangler, gate))
        }
        29 => Ok(tfim_trotter(qubit_count(params, 2)?, params.usize_or("steps", 1)?.max(1))),
        _ => {
            let d = descriptor(id);
            Err(CatalogError::NotParametric { id: d.id.get(), name: d.name })
        }
    }
}

/// Default angles for binding a parametric primitive without `theta`.
fn default_theta(id: PrimitiveId, params: &Params, n_params: usize) -> Result<Vec<f64>, CatalogError> {
    match id.get() {
        3 => Ok(vec![params.f64_or("theta", 0.0)?, params.f64_or("phi", 0.0)?, params.f64_or("lambda", 0.0)?]),
        29 => {
            let (j, h, dt) = (params.f64_or("j", 1.0)?, params.f64_or("h", 1.0)?, params.f64_or("dt", 0.1)?);
            Ok([-2.0 * j * dt, -2.0 * h * dt].repeat(n_params / 2))
        }
        _ => Ok(vec![0.0; n_params]),
    }
}

fn theta_for(id: PrimitiveId, params: &Params, n_params: usize) -> Result<Vec<f64>, CatalogError> {
    if id.get() == 3 {
        return default_theta(id, params, n_params);
    }
    match params.f64_list("theta")? {
        Some(t) if t.len() == n_params => Ok(t),
        Some(t) => Err(bad(format!("`theta` has {} values, the template takes {n_params}", t.len()))),
        None => default_theta(id, params, n_params),
    }
}

/// Gate circuit for a primitive instance.
pub fn lower(id: PrimitiveId, params: &Params) -> Result<GateCircuit, CatalogError> {
    check_keys(id, params)?;
    let d = descriptor(id);
    if !d.lowerable {
        return Err(CatalogError::NotLowerable { id: d.id.get(), name: d.name });
    }
    let circuit = match id.get() {
        1 => {
            let n = qubit_count(params, 1)?;
            let state = params.usize_or("state", 0)?;
            check_state("state", state, n)?;
            let mut c = GateCircuit::new(n);
            for q in (0..n).filter(|q| state >> q & 1 == 1) {
                c.push(Gate::x(q));
            }
            c
        }
        2 => {
            let n = qubit_count(params, 1)?;
            let mut c = GateCircuit::new(n);
            for q in 0..n {
                c.push(Gate::h(q));
            }
            c
        }
        4 | 7 => bell(params.text("variant")?.unwrap_or("phi+"))?,
        5 | 8 => ghz(qubit_count(params, 3)?),
        9 => w_state(qubit_count(params, 3)?),
        6 | 10 => {
            let n = qubit_count(params, 4)?;
            let edges = params.edges("edges")?.unwrap_or_else(|| chain(n));
            cluster(n, &edges)?
        }
        11 => {
            let n = qubit_count(params, 2)?;
            let marked = params.usize_list("marked")?.unwrap_or_else(|| vec![0]);
            let iterations = params.usize_or("iterations", 1)?;
            grover_operator(n, &marked, iterations)?
        }
        12 => diffusion(qubit_count(params, 2)?),
        13 => {
            let n = qubit_count(params, 2)?;
            let state = params.usize_or("state", 0)?;
            check_state("state", state, n)?;
            let layout = mcz_layout(n);
            let mut c = GateCircuit::with_layout(layout);
            append_reflection(&mut c, &range(0, n), state, &range(n, layout.scratch));
            c
        }
        15 => {
            let n = qubit_count(params, 3)?;
            qft(n, n)
        }
        16 => inverse_qft(qubit_count(params, 3)?),
        17 => {
            let n = qubit_count(params, 3)?;
            let default = (usize::BITS - n.leading_zeros()) as usize;
            qft(n, params.usize_or("cutoff", default)?)
        }
        18 => {
            let n = qubit_count(params, 2)?;
            phase_oracle(n, &params.usize_list("marked")?.unwrap_or_else(|| vec![0]))?
        }
        19 | 21 => {
            let n = qubit_count(params, 2)?;
            let marked = if id.get() == 19 {
                params.usize_list("marked")?.unwrap_or_else(|| vec![0])
            } else {
                let table = params.usize_list("table")?.ok_or_else(|| bad("missing required parameter `table`"))?;
                if table.len() != 1 << n {
                    return Err(bad(format!("truth table needs {} entries, got {}", 1usize << n, table.len())));
                }
                if table.iter().any(|&v| v > 1) {
                    return Err(bad("truth table entries must be 0 or 1"));
                }
                table.iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| i).collect()
            };
            let scratch = mcx_scratch(n);
            let mut c = GateCircuit::with_layout(RegisterLayout { data: n, required: 1, scratch });
            let data = range(0, n);
            let scratch = range(n + 1, scratch);
            for m in marked {
                check_state("marked", m, n)?;
                dress(&mut c, &data, m);
                append_mcx(&mut c, &data, n, &scratch);
                dress(&mut c, &data, m);
            }
            c
        }
        20 => {
            let a = params.require_usize("a")? as u64;
            let modulus = params.require_usize("modulus")? as u64;
            let power = params.usize_or("power", 1)? as u64;
            let u = modmul_unitary(a, modulus)?;
            let m = modulus_width(modulus);
            let mut c = GateCircuit::new(m + 1);
            let cu = ControlledUnitary::new(u, power, format!("M{a}mod{modulus}"));
            c.push(Gate::controlled_u(cu, 0, &range(1, m)));
            c
        }
        22 => {
            let t = params.usize_or("t", 3)?;
            if t == 0 {
                return Err(bad("`t` must be at least 1"));
            }
            let (u, label) = qpe_target(params)?;
            qpe(&u, t, &label)
        }
        23 => {
            let t = params.usize_or("t", 3)?;
            let round = params.usize_or("round", 0)?;
            let bits: Vec<u8> = params.usize_list("bits")?.unwrap_or_default().into_iter().map(|b| (b & 1) as u8).collect();
            let (u, label) = qpe_target(params)?;
            iterative_qpe_round(&u, t, round, &bits, &label)?
        }
        3 | 25..=29 => {
            let pc = lower_parametric(id, params)?;
            let theta = theta_for(id, params, pc.n_params())?;
            pc.bind(&theta)
        }
        30 => {
            let mut c = GateCircuit::new(2);
            c.push(Gate::swap(0, 1));
            c
        }
        31 => {
            let kind = match params.text("gate")?.unwrap_or("cx") {
                "cp" => GateKind::CPhase(params.f64_or("theta", FRAC_PI_2)?),
                other => two_qubit_kind(other)?,
            };
            let mut c = GateCircuit::new(2);
            c.push(Gate::new(kind, vec![0, 1]));
            c
        }
        32 => {
            let mut c = GateCircuit::new(3);
            c.push(Gate::toffoli(0, 1, 2));
            c
        }
        33 => {
            let n = qubit_count(params, 1)?;
            let mut c = GateCircuit::new(n);
            for q in 0..n {
                c.push(Gate::measure(q, q));
            }
            c
        }
        34 => {
            let n = params.usize_or("n", 0)?;
            let k = params.usize_or("ancillas", 1)?;
            GateCircuit::with_layout(RegisterLayout { data: n, required: k, scratch: 0 })
        }
        _ => unreachable!("non-lowerable ids handled above"),
    };
    Ok(circuit)
}

/// Parameters giving an instance of size `n` (qubits, control bits or
/// ancillas, whichever the primitive scales with).
pub fn sized_params(id: PrimitiveId, n: usize) -> Params {
    let p = Params::new();
    match id.get() {
        1 | 2 | 5 | 6 | 8 | 9 | 10 | 12 | 13 | 15 | 16 | 17 | 25 | 26 | 28 | 29 | 33 => p.with("n", n),
        11 => p.with("n", n).with("marked", vec![0usize]).with("iterations", optimal_grover_iterations(n, 1)),
        18 | 19 => p.with("n", n).with("marked", vec![0usize]),
        21 => {
            let mut table = vec![0usize; 1 << n];
            table[0] = 1;
            p.with("n", n).with("table", table)
        }
        20 => p.with("a", 2usize).with("modulus", (1usize << n) - 1),
        22 => p.with("t", n).with("phase", 0.25),
        23 => p.with("t", n).with("phase", 0.25),
        27 => p.with("n", 2 * n.div_ceil(2).max(2)),
        34 => p.with("ancillas", n),
        _ => p,
    }
}

impl From<Vec<u8>> for ParamValue {
    fn from(v: Vec<u8>) -> Self {
        ParamValue::List(v.into_iter().map(|b| ParamValue::Int(b.into())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::unitary_of;

    fn id(n: u8) -> PrimitiveId {
        PrimitiveId::new(n).unwrap()
    }

    fn max_dev(a: &Matrix, b: &Matrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn qft_gate_count_formula() {
        for n in 1..=8 {
            let c = qft(n, n);
            assert_eq!(c.gate_counts().total, n + n * (n - 1) / 2 + n / 2, "n = {n}");
        }
    }

    #[test]
    fn approximate_cutoff_n_is_exact() {
        for n in 1..=5 {
            assert_eq!(qft(n, n), lower(id(17), &Params::new().with("n", n).with("cutoff", n)).unwrap());
        }
    }

    #[test]
    fn mcx_matches_permutation() {
        for k in 0..=4 {
            let width = k + 1 + mcx_scratch(k);
            let mut c = GateCircuit::new(width);
            let controls: Vec<usize> = (0..k).collect();
            let scratch: Vec<usize> = (k + 1..width).collect();
            append_mcx(&mut c, &controls, k, &scratch);
            let u = unitary_of(&c).unwrap();
            let all = (1usize << k) - 1;
            // scratch starts clean
            for col in 0..1usize << (k + 1) {
                let expect = if col & all == all { col ^ (1 << k) } else { col };
                assert!((u[(expect, col)].re - 1.0).abs() < 1e-10, "k = {k}, col = {col}");
            }
        }
    }

    #[test]
    fn modmul_is_permutation() {
        let u = modmul_unitary(7, 15).unwrap();
        assert_eq!(u.nrows(), 16);
        assert_eq!(u[(7, 1)].re, 1.0);
        assert_eq!(u[(4, 7)].re, 1.0);
        assert_eq!(u[(15, 15)].re, 1.0);
        assert!(modmul_unitary(5, 15).is_err());
        assert!(modmul_unitary(3, 33).is_err());
    }

    #[test]
    fn unknown_parameter_rejected() {
        assert!(matches!(lower(id(15), &Params::new().with("m", 3usize)), Err(CatalogError::BadParams(_))));
        assert!(matches!(lower(id(14), &Params::new()), Err(CatalogError::NotLowerable { id: 14, .. })));
        assert!(matches!(lower(id(24), &Params::new()), Err(CatalogError::NotLowerable { id: 24, .. })));
    }

    #[test]
    fn lowerables_are_unitary_roundtrips() {
        for d in super::super::catalog().iter().filter(|d| d.lowerable && d.is_unitary()) {
            let c = lower(d.id, &sized_params(d.id, 3)).unwrap();
            let c = c.without_measurements();
            if c.width() > 6 || c.is_empty() {
                continue;
            }
            let u = unitary_of(&c).unwrap();
            let v = unitary_of(&c.dagger().unwrap()).unwrap();
            let eye = Matrix::identity(u.nrows(), u.nrows());
            assert!(max_dev(&(&u * &v), &eye) < 1e-10, "{}", d.name);
        }
    }

    #[test]
    fn parametric_counts() {
        assert_eq!(hardware_efficient(2, 2).n_params(), 8);
        assert_eq!(uccsd(4).unwrap().n_params(), 2);
        let e = Entangler::Ring.pairs(4);
        assert_eq!(qaoa(4, &e, &[1.0; 4], 1).unwrap().n_params(), 2);
        assert!(uccsd(3).is_err());
    }
}
