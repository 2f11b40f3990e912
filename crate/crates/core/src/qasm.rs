//! OPENQASM 2.0 export.

use std::fmt::Write as _;

use thiserror::Error;

use crate::circuit::GateCircuit;
use crate::gate::GateKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("gate {index} (`{label}`) is a controlled unitary given as a matrix and has no gate-level form")]
    Unexportable { index: usize, label: String },
}

/// `x` with 17 significant digits, trailing zeros dropped.
pub fn format_angle(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa))
    }
}

pub fn export_qasm(circuit: &GateCircuit) -> Result<String, ExportError> {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.width());
    if circuit.classical_bits() > 0 {
        let _ = writeln!(out, "creg c[{}];", circuit.classical_bits());
    }
    let pi = std::f64::consts::PI;
    for (index, g) in circuit.ops().iter().enumerate() {
        let q = &g.qubits;
        let one = |name: &str| format!("{name} q[{}];", q[0]);
        let rot = |name: &str, t: f64| format!("{name}({}) q[{}];", format_angle(t), q[0]);
        let line = match &g.kind {
            GateKind::H => one("h"),
            GateKind::X => one("x"),
            GateKind::Y => one("y"),
            GateKind::Z => one("z"),
            GateKind::S => one("s"),
            GateKind::T => one("t"),
            // equal up to a global phase
            GateKind::Sdg => rot("rz", -pi / 2.0),
            GateKind::Tdg => rot("rz", -pi / 4.0),
            GateKind::Phase(t) => rot("rz", *t),
            GateKind::Rx(t) => rot("rx", *t),
            GateKind::Ry(t) => rot("ry", *t),
            GateKind::Rz(t) => rot("rz", *t),
            GateKind::Cnot => format!("cx q[{}],q[{}];", q[0], q[1]),
            GateKind::Cz => format!("cz q[{}],q[{}];", q[0], q[1]),
            GateKind::CPhase(t) => format!("cp({}) q[{}],q[{}];", format_angle(*t), q[0], q[1]),
            GateKind::Swap => format!("swap q[{}],q[{}];", q[0], q[1]),
            GateKind::Toffoli => format!("ccx q[{}],q[{}],q[{}];", q[0], q[1], q[2]),
            GateKind::Measure { clbit } => format!("measure q[{}] -> c[{clbit}];", q[0]),
            GateKind::ControlledU(u) => return Err(ExportError::Unexportable { index, label: u.label().to_string() }),
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::Gate;

    #[test]
    fn angles() {
        assert_eq!(format_angle(std::f64::consts::FRAC_PI_2), "1.5707963267948966");
        assert_eq!(format_angle(0.5), "0.5");
        assert_eq!(format_angle(-2.0), "-2");
        assert_eq!(format_angle(1e-7), "9.9999999999999995e-8");
        for x in [0.1, 1.0 / 3.0, -7.25e-9, 12345.678] {
            assert_eq!(format_angle(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn bell_lines() {
        let mut c = GateCircuit::new(2);
        c.push(Gate::h(0)).push(Gate::cnot(0, 1));
        let text = export_qasm(&c).unwrap();
        let body: Vec<&str> = text.lines().skip(2).collect();
        assert_eq!(body, ["qreg q[2];", "h q[0];", "cx q[0],q[1];"]);
    }
}
