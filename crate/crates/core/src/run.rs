//! Executing architectures: sampling and the variational loop.

use thiserror::Error;

use crate::compose::{Architecture, Body, ComposeError, ParametricFlattened};
use crate::sim::{minimize, sample_circuit, Counts, Initial, PauliObservable, SimError, VariationalResult};

/// Widest register [`PauliObservable::ground_energy`] is asked to diagonalize.
pub const MAX_DENSE_WIDTH: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("`{0}` is not a controller of this architecture")]
    NotController(String),
    #[error("minimization needs an observable")]
    MissingObservable,
}

/// Flattens and samples from |0...0>.
pub fn simulate(arch: &Architecture, shots: usize, seed: u64) -> Result<Counts, RunError> {
    let flat = arch.flatten()?;
    Ok(sample_circuit(&flat.circuit, Initial::Zero, shots, seed)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeOutcome {
    pub flattened: ParametricFlattened,
    pub observable: PauliObservable,
    pub result: VariationalResult,
    /// Exact minimum eigenvalue, for registers small enough to diagonalize.
    pub ground_energy: Option<f64>,
}

pub fn minimize_architecture(arch: &Architecture, controller: &str, observable: &str) -> Result<MinimizeOutcome, RunError> {
    let inl = arch.inlined();
    let Some(Body::Controller(k)) = inl.component(controller).map(|c| &c.body) else {
        return Err(RunError::NotController(controller.to_string()));
    };
    let cfg = k.config()?;
    let flattened = arch.flatten_parametric()?;
    let width = flattened.circuit.template().width();
    let observable = PauliObservable::parse(observable, width)?;
    let init = k.initial_params(flattened.n_params())?;
    let result = minimize(&flattened.circuit, &init, &observable, Initial::Zero, &cfg)?;
    let ground_energy = (width <= MAX_DENSE_WIDTH).then(|| observable.ground_energy());
    Ok(MinimizeOutcome { flattened, observable, result, ground_energy })
}
