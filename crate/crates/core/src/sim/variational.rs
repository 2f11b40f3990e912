//! Hybrid loop: parameter-shift gradient descent on a parametric circuit.

use std::f64::consts::FRAC_PI_2;

use super::{evolve, Initial, PauliObservable, SimError, StateVector};
use crate::catalog::{lower_parametric, Params, PrimitiveId};
use crate::circuit::ParametricCircuit;

pub const NON_DECREASING_WARNING: &str = "NonDecreasingEnergyWarning";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Step restored at the start of every iteration.
    pub step: f64,
    pub max_iters: usize,
    /// Stop once an accepted step lowers the energy by less than this.
    pub tol: f64,
    /// Halvings tried before the line search gives up.
    pub max_halvings: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig { step: 0.2, max_iters: 500, tol: 1e-6, max_halvings: 30 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    pub iteration: usize,
    pub params: Vec<f64>,
    pub energy: f64,
    pub warning: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariationalResult {
    pub best_params: Vec<f64>,
    pub best_energy: f64,
    pub trace: Vec<TraceEntry>,
    pub converged: bool,
}

impl VariationalResult {
    pub fn warned(&self) -> bool {
        self.trace.iter().any(|t| t.warning.is_some())
    }
}

pub fn energy(
    ansatz: &ParametricCircuit,
    theta: &[f64],
    observable: &PauliObservable,
    initial: &StateVector,
) -> Result<f64, SimError> {
    let s = evolve(&ansatz.bind(theta), initial)?;
    observable.expectation(&s)
}

/// Shift rule applied per gate occurrence: each slot contributes
/// `coefficient * [E(+pi/2) - E(-pi/2)] / 2` to its parameter.
pub fn parameter_shift_gradient(
    ansatz: &ParametricCircuit,
    theta: &[f64],
    observable: &PauliObservable,
    initial: &StateVector,
) -> Result<Vec<f64>, SimError> {
    let mut g = vec![0.0; ansatz.n_params()];
    for (i, slot) in ansatz.slots().iter().enumerate() {
        let plus = observable.expectation(&evolve(&ansatz.bind_shifted(theta, i, FRAC_PI_2), initial)?)?;
        let minus = observable.expectation(&evolve(&ansatz.bind_shifted(theta, i, -FRAC_PI_2), initial)?)?;
        g[slot.param] += slot.coefficient * (plus - minus) / 2.0;
    }
    Ok(g)
}

/// Central differences with step `h`.
pub fn finite_difference_gradient(
    ansatz: &ParametricCircuit,
    theta: &[f64],
    observable: &PauliObservable,
    initial: &StateVector,
    h: f64,
) -> Result<Vec<f64>, SimError> {
    let mut g = Vec::with_capacity(theta.len());
    let mut t = theta.to_vec();
    for k in 0..theta.len() {
        t[k] = theta[k] + h;
        let plus = energy(ansatz, &t, observable, initial)?;
        t[k] = theta[k] - h;
        let minus = energy(ansatz, &t, observable, initial)?;
        t[k] = theta[k];
        g.push((plus - minus) / (2.0 * h));
    }
    Ok(g)
}

/// Gradient descent from `init`. Each iteration starts at the configured
/// step and halves it until the energy drops; when no halving helps the
/// trace records a warning and the loop stops.
pub fn minimize(
    ansatz: &ParametricCircuit,
    init: &[f64],
    observable: &PauliObservable,
    initial: impl Into<Initial>,
    cfg: &OptimizerConfig,
) -> Result<VariationalResult, SimError> {
    if init.len() != ansatz.n_params() {
        return Err(SimError::ParamLength { expected: ansatz.n_params(), got: init.len() });
    }
    if observable.width() != ansatz.template().width() {
        return Err(SimError::WidthMismatch { circuit: ansatz.template().width(), state: observable.width() });
    }
    let initial = initial.into().resolve(ansatz.template().width())?;
    let mut theta = init.to_vec();
    let mut e = energy(ansatz, &theta, observable, &initial)?;
    let mut trace = vec![TraceEntry { iteration: 0, params: theta.clone(), energy: e, warning: None }];
    let mut converged = false;
    for iteration in 1..=cfg.max_iters {
        let g = parameter_shift_gradient(ansatz, &theta, observable, &initial)?;
        let mut step = cfg.step;
        let mut accepted = None;
        for _ in 0..=cfg.max_halvings {
            let cand: Vec<f64> = theta.iter().zip(&g).map(|(t, d)| t - step * d).collect();
            let ce = energy(ansatz, &cand, observable, &initial)?;
            if ce < e {
                accepted = Some((cand, ce));
                break;
            }
            step /= 2.0;
        }
        let Some((cand, ce)) = accepted else {
            trace.push(TraceEntry { iteration, params: theta.clone(), energy: e, warning: Some(NON_DECREASING_WARNING) });
            break;
        };
        let delta = e - ce;
        theta = cand;
        e = ce;
        trace.push(TraceEntry { iteration, params: theta.clone(), energy: e, warning: None });
        if delta < cfg.tol {
            converged = true;
            break;
        }
    }
    Ok(VariationalResult { best_params: theta, best_energy: e, trace, converged })
}

/// Lowers the ansatz primitive and minimizes `observable` from `init`
/// starting on |0...0>.
pub fn variational_minimize(
    ansatz_id: PrimitiveId,
    ansatz_params: &Params,
    init: &[f64],
    observable: &PauliObservable,
    cfg: &OptimizerConfig,
) -> Result<VariationalResult, SimError> {
    let ansatz = lower_parametric(ansatz_id, ansatz_params)?;
    minimize(&ansatz, init, observable, Initial::Zero, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateCircuit;
    use crate::gate::GateKind;

    #[test]
    fn single_qubit_ry_reaches_minus_one() {
        let mut a = ParametricCircuit::new(1, GateCircuit::new(1));
        a.push_param(GateKind::Ry(0.0), &[0], 0, 1.0, 0.0);
        let z = PauliObservable::parse("Z0", 1).unwrap();
        let cfg = OptimizerConfig { tol: 1e-12, ..OptimizerConfig::default() };
        let r = minimize(&a, &[2.0], &z, Initial::Zero, &cfg).unwrap();
        assert!((r.best_energy + 1.0).abs() < 1e-6, "{}", r.best_energy);
        assert!((r.best_params[0] - std::f64::consts::PI).abs() < 1e-2);
    }

    #[test]
    fn shared_parameter_gradient() {
        // one parameter feeding two gates with different coefficients
        let mut a = ParametricCircuit::new(1, GateCircuit::new(2));
        a.push_param(GateKind::Rx(0.0), &[0], 0, 2.0, 0.1);
        a.push_param(GateKind::Ry(0.0), &[1], 0, -0.5, 0.0);
        let o = PauliObservable::parse("Z0Z1 + X1", 2).unwrap();
        let s = StateVector::zero(2).unwrap();
        let ps = parameter_shift_gradient(&a, &[0.4], &o, &s).unwrap();
        let fd = finite_difference_gradient(&a, &[0.4], &o, &s, 1e-5).unwrap();
        assert!((ps[0] - fd[0]).abs() < 1e-8);
    }
}
