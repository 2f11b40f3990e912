//! Architecture graphs: component instances, wires, ancilla ledger and
//! entanglement contracts, with static checks and flattening.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::catalog::{self, lower, lower_parametric, CatalogError, Params, PrimitiveDescriptor, PrimitiveId};
use crate::circuit::{CircuitError, GateCircuit};
use crate::model::{AbstractionLevel, Category, FunctionalCategory};
use crate::sim::OptimizerConfig;

mod entangle;
mod flatten;
mod plan;
mod validate;

pub use entangle::{entanglement_sets, UnionFind};
pub use flatten::{Flattened, InstanceLines, ParametricFlattened};
pub use validate::{Diagnostic, Severity};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComposeError {
    #[error("level violation: {0}")]
    LevelViolation(String),
    #[error("duplicate instance id `{0}`")]
    DuplicateId(String),
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error("`{instance}` has no port `{port}`")]
    UnknownPort { instance: String, port: String },
    #[error("no-cloning: quantum output `{0}` is already wired")]
    FanOut(String),
    #[error("input `{0}` is already wired")]
    FanIn(String),
    #[error("width mismatch: `{from}` carries {from_width} but `{to}` takes {to_width}")]
    WidthMismatch { from: String, to: String, from_width: usize, to_width: usize },
    #[error("kind mismatch: `{from}` is {from_kind} but `{to}` is {to_kind}")]
    KindMismatch { from: String, to: String, from_kind: PortKind, to_kind: PortKind },
    #[error("`{from}` is not an output or `{to}` is not an input")]
    Direction { from: String, to: String },
    #[error("unknown controller `{0}` (expected GradientDescent)")]
    UnknownController(String),
    #[error("`{0}` has no such export")]
    UnknownExport(String),
    #[error("architecture failed validation: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    ValidationFailed(Vec<Diagnostic>),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PortKind {
    Quantum,
    Classical,
}

impl fmt::Display for PortKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PortKind::Quantum => "quantum",
            PortKind::Classical => "classical",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PortSpec {
    pub kind: PortKind,
    pub direction: Direction,
    /// `None` accepts any width (controller ports).
    pub width: Option<usize>,
    /// An input that may stay unwired.
    pub optional: bool,
}

/// `instance.port` with an optional line index, as in `x.out[2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    pub instance: String,
    pub port: String,
    pub index: Option<usize>,
}

impl PortRef {
    pub fn new(instance: &str, port: &str) -> Self {
        PortRef { instance: instance.to_string(), port: port.to_string(), index: None }
    }

    pub fn at(mut self, index: usize) -> Self {
        self.index = Some(index);
        self
    }
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.instance, self.port)?;
        if let Some(i) = self.index {
            write!(f, "[{i}]")?;
        }
        Ok(())
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '-')
}

impl FromStr for PortRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (body, index) = match s.strip_suffix(']').and_then(|b| b.split_once('[')) {
            Some((body, idx)) => (body, Some(idx.trim().parse::<usize>().map_err(|_| format!("bad index in `{s}`"))?)),
            None => (s, None),
        };
        let (instance, port) = body.rsplit_once('.').ok_or_else(|| format!("expected `instance.port`, got `{s}`"))?;
        if !is_ident(instance) || !is_ident(port) {
            return Err(format!("expected `instance.port`, got `{s}`"));
        }
        Ok(PortRef { instance: instance.to_string(), port: port.to_string(), index })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wire {
    pub from: PortRef,
    pub to: PortRef,
}

/// Declared permission for qubits to be correlated across component
/// boundaries. Without a scope it applies to every wire; with one, only to
/// wires from `scope.0` to `scope.1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Contract {
    pub scope: Option<(String, String)>,
    pub refs: Vec<PortRef>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LedgerAction {
    Alloc,
    Release,
    Carry,
}

impl LedgerAction {
    pub fn keyword(self) -> &'static str {
        match self {
            LedgerAction::Alloc => "alloc",
            LedgerAction::Release => "release",
            LedgerAction::Carry => "carry",
        }
    }
}

impl FromStr for LedgerAction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alloc" => Ok(LedgerAction::Alloc),
            "release" => Ok(LedgerAction::Release),
            "carry" => Ok(LedgerAction::Carry),
            other => Err(format!("unknown ancilla action `{other}` (alloc, release, carry)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LedgerEntry {
    pub instance: String,
    pub action: LedgerAction,
    pub count: usize,
}

/// Classical optimizer node closing a variational loop.
#[derive(Debug, Clone, PartialEq)]
pub struct Controller {
    pub kind: String,
    pub params: Params,
}

impl Controller {
    pub fn gradient_descent(params: Params) -> Result<Self, ComposeError> {
        let c = Controller { kind: "GradientDescent".into(), params };
        c.config()?;
        Ok(c)
    }

    pub fn config(&self) -> Result<OptimizerConfig, ComposeError> {
        if self.kind != "GradientDescent" {
            return Err(ComposeError::UnknownController(self.kind.clone()));
        }
        let d = OptimizerConfig::default();
        for (k, _) in self.params.iter() {
            if !matches!(k, "step" | "max_iters" | "tol" | "init") {
                return Err(CatalogError::BadParams(format!("GradientDescent takes no parameter `{k}`")).into());
            }
        }
        Ok(OptimizerConfig {
            step: self.params.f64_or("step", d.step)?,
            max_iters: self.params.usize_or("max_iters", d.max_iters)?,
            tol: self.params.f64_or("tol", d.tol)?,
            ..d
        })
    }

    /// Starting parameters: `init` as one value for every parameter or as a
    /// full list; 0.1 everywhere when absent.
    pub fn initial_params(&self, n: usize) -> Result<Vec<f64>, ComposeError> {
        match self.params.get("init") {
            None => Ok(vec![0.1; n]),
            Some(v) => match v.as_f64() {
                Some(x) => Ok(vec![x; n]),
                None => {
                    let list = self.params.f64_list("init")?.unwrap_or_default();
                    if list.len() != n {
                        return Err(
                            CatalogError::BadParams(format!("`init` has {} values for {n} parameters", list.len())).into()
                        );
                    }
                    Ok(list)
                }
            },
        }
    }
}

/// Cached facts about a lowered primitive instance.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Lowered {
    pub(crate) circuit: Option<GateCircuit>,
    pub(crate) data: usize,
    pub(crate) required: usize,
    pub(crate) scratch: usize,
    pub(crate) clbits: usize,
    pub(crate) n_params: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Primitive(PrimitiveId),
    Composite(Box<Architecture>),
    Controller(Controller),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentInstance {
    pub id: String,
    pub body: Body,
    pub params: Params,
    pub level: AbstractionLevel,
    lowered: Option<Lowered>,
}

impl ComponentInstance {
    /// A catalog primitive at its default level. Parameters are checked by
    /// lowering once here.
    pub fn primitive(id: &str, primitive: PrimitiveId, params: Params) -> Result<Self, ComposeError> {
        let d = catalog::descriptor(primitive);
        let lowered = if d.lowerable {
            let c = lower(primitive, &params)?;
            let l = c.layout();
            let n_params = lower_parametric(primitive, &params).map(|p| p.n_params()).unwrap_or(0);
            Lowered {
                data: l.data,
                required: l.required,
                scratch: l.scratch,
                clbits: c.classical_bits(),
                circuit: Some(c),
                n_params,
            }
        } else {
            let m = d.interface(&params)?;
            Lowered { circuit: None, data: m.q_in().count, required: 0, scratch: 0, clbits: 0, n_params: 0 }
        };
        Ok(ComponentInstance {
            id: id.to_string(),
            body: Body::Primitive(primitive),
            params,
            level: d.default_level(),
            lowered: Some(lowered),
        })
    }

    /// A primitive looked up by manifest identifier.
    pub fn named(id: &str, ident: &str, params: Params) -> Result<Self, ComposeError> {
        Self::primitive(id, catalog::find(ident)?.id, params)
    }

    pub fn composite(id: &str, arch: Architecture) -> Self {
        let level = arch.level;
        ComponentInstance {
            id: id.to_string(),
            body: Body::Composite(Box::new(arch)),
            params: Params::new(),
            level,
            lowered: None,
        }
    }

    pub fn controller(id: &str, controller: Controller) -> Self {
        ComponentInstance {
            id: id.to_string(),
            body: Body::Controller(controller),
            params: Params::new(),
            level: AbstractionLevel::ALGORITHM,
            lowered: None,
        }
    }

    pub fn at_level(mut self, level: AbstractionLevel) -> Self {
        self.level = level;
        self
    }

    pub fn descriptor(&self) -> Option<&'static PrimitiveDescriptor> {
        match self.body {
            Body::Primitive(p) => Some(catalog::descriptor(p)),
            _ => None,
        }
    }

    pub fn is_controller(&self) -> bool {
        matches!(self.body, Body::Controller(_))
    }

    pub(crate) fn lowered(&self) -> Option<&Lowered> {
        self.lowered.as_ref()
    }

    /// Lowered gate circuit for a lowerable primitive.
    pub fn circuit(&self) -> Option<&GateCircuit> {
        self.lowered.as_ref().and_then(|l| l.circuit.as_ref())
    }

    pub fn port(&self, name: &str) -> Option<PortSpec> {
        let q = |direction, width, optional| Some(PortSpec { kind: PortKind::Quantum, direction, width: Some(width), optional });
        let c = |direction, width, optional| PortSpec { kind: PortKind::Classical, direction, width, optional };
        match &self.body {
            Body::Controller(_) => match name {
                "in" => Some(c(Direction::In, None, true)),
                "out" => Some(c(Direction::Out, None, true)),
                _ => None,
            },
            Body::Composite(arch) => arch.exported_port(name),
            Body::Primitive(p) => {
                let l = self.lowered.as_ref().expect("primitive instances are lowered on construction");
                let d = catalog::descriptor(*p);
                match name {
                    "in" if l.data > 0 => q(Direction::In, l.data, d.input_optional),
                    "out" if l.data > 0 => q(Direction::Out, l.data, false),
                    "anc" if l.required > 0 => q(Direction::Out, l.required, false),
                    "bits" if l.clbits > 0 => Some(c(Direction::Out, Some(l.clbits), false)),
                    "params" if l.n_params > 0 => Some(c(Direction::In, Some(l.n_params), true)),
                    _ => None,
                }
            }
        }
    }

    /// Port names in a fixed order.
    pub fn port_names(&self) -> Vec<&'static str> {
        ["in", "out", "anc", "bits", "params"].into_iter().filter(|p| self.port(p).is_some()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Export {
    pub name: String,
    pub target: PortRef,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Architecture {
    pub name: String,
    pub version: String,
    level: AbstractionLevel,
    components: Vec<ComponentInstance>,
    wires: Vec<Wire>,
    contracts: Vec<Contract>,
    ledger: Vec<LedgerEntry>,
    exports: Vec<Export>,
}

impl Architecture {
    /// A top-level algorithm (level 5).
    pub fn new(name: &str, version: &str) -> Self {
        Self::with_level(name, version, AbstractionLevel::ALGORITHM)
    }

    pub fn with_level(name: &str, version: &str, level: AbstractionLevel) -> Self {
        Architecture {
            name: name.to_string(),
            version: version.to_string(),
            level,
            components: Vec::new(),
            wires: Vec::new(),
            contracts: Vec::new(),
            ledger: Vec::new(),
            exports: Vec::new(),
        }
    }

    pub fn level(&self) -> AbstractionLevel {
        self.level
    }

    pub fn components(&self) -> &[ComponentInstance] {
        &self.components
    }

    pub fn component(&self, id: &str) -> Option<&ComponentInstance> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn contracts(&self) -> &[Contract] {
        &self.contracts
    }

    pub fn ledger(&self) -> &[LedgerEntry] {
        &self.ledger
    }

    pub fn exports(&self) -> &[Export] {
        &self.exports
    }

    pub fn add_component(&mut self, instance: ComponentInstance) -> Result<&mut Self, ComposeError> {
        if self.components.iter().any(|c| c.id == instance.id) {
            return Err(ComposeError::DuplicateId(instance.id));
        }
        if !is_ident(&instance.id) {
            return Err(ComposeError::UnknownInstance(instance.id));
        }
        match &instance.body {
            Body::Controller(_) => {
                if self.level != AbstractionLevel::ALGORITHM {
                    return Err(ComposeError::LevelViolation(format!(
                        "controller `{}` needs a level-5 container, `{}` is level {}",
                        instance.id, self.name, self.level
                    )));
                }
            }
            body => {
                if instance.level >= self.level {
                    return Err(ComposeError::LevelViolation(format!(
                        "`{}` is level {} but its container `{}` is level {}",
                        instance.id, instance.level, self.name, self.level
                    )));
                }
                if let Body::Primitive(p) = body {
                    let d = catalog::descriptor(*p);
                    if !d.admits_level(instance.level) {
                        return Err(ComposeError::LevelViolation(format!(
                            "`{}` {} sits at levels {}-{}, not {}",
                            instance.id, d.ident, d.levels.0, d.levels.1, instance.level
                        )));
                    }
                }
            }
        }
        self.components.push(instance);
        Ok(self)
    }

    fn lookup(&self, r: &PortRef) -> Result<PortSpec, ComposeError> {
        let inst = self.component(&r.instance).ok_or_else(|| ComposeError::UnknownInstance(r.instance.clone()))?;
        inst.port(&r.port).ok_or_else(|| ComposeError::UnknownPort { instance: r.instance.clone(), port: r.port.clone() })
    }

    /// Checked connection: ports exist and agree in direction, kind and
    /// width, and neither a quantum output nor any input is reused.
    pub fn wire(&mut self, from: PortRef, to: PortRef) -> Result<&mut Self, ComposeError> {
        let f = self.lookup(&from)?;
        let t = self.lookup(&to)?;
        if f.direction != Direction::Out || t.direction != Direction::In {
            return Err(ComposeError::Direction { from: from.to_string(), to: to.to_string() });
        }
        if f.kind != t.kind {
            return Err(ComposeError::KindMismatch {
                from: from.to_string(),
                to: to.to_string(),
                from_kind: f.kind,
                to_kind: t.kind,
            });
        }
        if let (Some(fw), Some(tw)) = (f.width, t.width) {
            if fw != tw {
                return Err(ComposeError::WidthMismatch {
                    from: from.to_string(),
                    to: to.to_string(),
                    from_width: fw,
                    to_width: tw,
                });
            }
        }
        if f.kind == PortKind::Quantum && self.wires.iter().any(|w| w.from == from) {
            return Err(ComposeError::FanOut(from.to_string()));
        }
        if self.wires.iter().any(|w| w.to == to) {
            return Err(ComposeError::FanIn(to.to_string()));
        }
        self.wires.push(Wire { from, to });
        Ok(self)
    }

    /// Records a connection without checks; [`Architecture::validate`]
    /// reports any problem.
    pub fn connect(&mut self, from: PortRef, to: PortRef) -> &mut Self {
        self.wires.push(Wire { from, to });
        self
    }

    pub fn contract(&mut self, contract: Contract) -> &mut Self {
        self.contracts.push(contract);
        self
    }

    pub fn ancilla(&mut self, instance: &str, action: LedgerAction, count: usize) -> &mut Self {
        self.ledger.push(LedgerEntry { instance: instance.to_string(), action, count });
        self
    }

    pub fn export(&mut self, name: &str, target: PortRef) -> Result<&mut Self, ComposeError> {
        if !matches!(name, "in" | "out" | "anc" | "bits" | "params") {
            return Err(ComposeError::UnknownExport(name.to_string()));
        }
        self.lookup(&target)?;
        self.exports.push(Export { name: name.to_string(), target });
        Ok(self)
    }

    fn exported_port(&self, name: &str) -> Option<PortSpec> {
        let e = self.exports.iter().find(|e| e.name == name)?;
        self.lookup(&e.target).ok()
    }

    /// Clone with every composite replaced by its components, renamed
    /// `composite/inner`, and wires rewired through the exports.
    pub fn inlined(&self) -> Architecture {
        let mut out =
            Architecture { components: Vec::new(), wires: Vec::new(), ledger: Vec::new(), contracts: Vec::new(), ..self.clone() };
        let mut exports: Vec<(String, String, PortRef)> = Vec::new();
        for c in &self.components {
            match &c.body {
                Body::Composite(sub) => {
                    let flat = sub.inlined();
                    let rename = |r: &PortRef| PortRef { instance: format!("{}/{}", c.id, r.instance), ..r.clone() };
                    for inner in flat.components {
                        out.components.push(ComponentInstance { id: format!("{}/{}", c.id, inner.id), ..inner });
                    }
                    out.wires.extend(flat.wires.iter().map(|w| Wire { from: rename(&w.from), to: rename(&w.to) }));
                    out.ledger.extend(
                        flat.ledger.iter().map(|l| LedgerEntry { instance: format!("{}/{}", c.id, l.instance), ..l.clone() }),
                    );
                    out.contracts.extend(flat.contracts.iter().map(|k| Contract {
                        scope: k.scope.as_ref().map(|(a, b)| (format!("{}/{a}", c.id), format!("{}/{b}", c.id))),
                        refs: k.refs.iter().map(rename).collect(),
                    }));
                    for e in &flat.exports {
                        exports.push((c.id.clone(), e.name.clone(), rename(&e.target)));
                    }
                }
                _ => out.components.push(c.clone()),
            }
        }
        let resolve = |r: &PortRef| -> PortRef {
            match exports.iter().find(|(inst, name, _)| *inst == r.instance && *name == r.port) {
                Some((_, _, target)) => PortRef { index: r.index, ..target.clone() },
                None => r.clone(),
            }
        };
        out.wires.extend(self.wires.iter().map(|w| Wire { from: resolve(&w.from), to: resolve(&w.to) }));
        out.ledger.extend(self.ledger.iter().cloned());
        out.contracts.extend(
            self.contracts.iter().map(|k| Contract { scope: k.scope.clone(), refs: k.refs.iter().map(resolve).collect() }),
        );
        out.exports = self.exports.iter().map(|e| Export { name: e.name.clone(), target: resolve(&e.target) }).collect();
        out
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        validate::validate(self)
    }

    pub fn flatten(&self) -> Result<Flattened, ComposeError> {
        flatten::flatten(self)
    }

    /// As [`Architecture::flatten`], optionally treating missing
    /// entanglement contracts as blocking.
    pub fn flatten_with(&self, strict_contracts: bool) -> Result<Flattened, ComposeError> {
        flatten::flatten_with(self, strict_contracts)
    }

    /// Flattened circuit with variational angles left as parameters and
    /// measurements removed, for the optimizer loop.
    pub fn flatten_parametric(&self) -> Result<ParametricFlattened, ComposeError> {
        flatten::flatten_parametric(self)
    }
}

/// Whether an instance of `d` carries problem structure (oracles and
/// problem-inspired ansatze).
pub fn is_problem_specific(d: &PrimitiveDescriptor) -> bool {
    d.problem_inspired || d.category == Category::Functional(FunctionalCategory::OracleConstruction)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prim(id: &str, ident: &str, params: Params) -> ComponentInstance {
        ComponentInstance::named(id, ident, params).unwrap()
    }

    #[test]
    fn level_rules() {
        let mut block = Architecture::with_level("blk", "1", AbstractionLevel::COMPOSITE);
        block.add_component(prim("bell", "BellStates", Params::new()).at_level(AbstractionLevel::ELEMENTARY)).unwrap();
        let qpe = prim("qpe", "StandardQpe", Params::new().with("t", 3usize));
        assert!(matches!(block.add_component(qpe.clone()), Err(ComposeError::LevelViolation(_))));
        let mut top = Architecture::new("top", "1");
        top.add_component(qpe).unwrap();
        let ctl = ComponentInstance::controller("opt", Controller::gradient_descent(Params::new()).unwrap());
        assert!(matches!(block.add_component(ctl.clone()), Err(ComposeError::LevelViolation(_))));
        top.add_component(ctl).unwrap();
        let wrong = prim("w", "StandardQft", Params::new()).at_level(AbstractionLevel::ELEMENTARY);
        assert!(matches!(top.add_component(wrong), Err(ComposeError::LevelViolation(_))));
    }

    #[test]
    fn wire_checks() {
        let mut a = Architecture::new("t", "1");
        a.add_component(prim("bell", "BellStates", Params::new())).unwrap();
        a.add_component(prim("m1", "Measurement", Params::new().with("n", 2usize))).unwrap();
        a.add_component(prim("m2", "Measurement", Params::new().with("n", 2usize))).unwrap();
        a.add_component(prim("m3", "Measurement", Params::new().with("n", 3usize))).unwrap();
        a.wire(PortRef::new("bell", "out"), PortRef::new("m1", "in")).unwrap();
        assert!(matches!(a.wire(PortRef::new("bell", "out"), PortRef::new("m2", "in")), Err(ComposeError::FanOut(_))));
        assert!(matches!(a.wire(PortRef::new("m2", "out"), PortRef::new("m3", "in")), Err(ComposeError::WidthMismatch { .. })));
        assert!(matches!(a.wire(PortRef::new("m1", "bits"), PortRef::new("m3", "in")), Err(ComposeError::KindMismatch { .. })));
        let ctl = ComponentInstance::controller("opt", Controller::gradient_descent(Params::new()).unwrap());
        a.add_component(ctl).unwrap();
        a.wire(PortRef::new("m1", "bits"), PortRef::new("opt", "in")).unwrap();
    }

    #[test]
    fn port_refs_parse() {
        let r: PortRef = "x.out[2]".parse().unwrap();
        assert_eq!(r, PortRef::new("x", "out").at(2));
        assert_eq!(r.to_string(), "x.out[2]");
        assert!("x".parse::<PortRef>().is_err());
    }
}
