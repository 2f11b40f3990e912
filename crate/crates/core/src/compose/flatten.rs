//! Lowering a validated architecture to one gate circuit.

use std::collections::BTreeMap;

use super::plan::{plan, qubit_map, Plan};
use super::{Architecture, Body, ComposeError, Diagnostic};
use crate::catalog::{self, lower_parametric, CatalogError};
use crate::circuit::{GateCircuit, ParamSlot, ParametricCircuit, RegisterLayout};

/// Where one component landed in the flattened circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceLines {
    pub data: Vec<usize>,
    pub required: Vec<usize>,
    pub scratch: usize,
    pub clbit_offset: usize,
    pub clbits: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Flattened {
    pub circuit: GateCircuit,
    /// Instance ids in execution order.
    pub order: Vec<String>,
    pub lines: BTreeMap<String, InstanceLines>,
    /// Non-blocking diagnostics found on the way.
    pub advisories: Vec<Diagnostic>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParametricFlattened {
    pub circuit: ParametricCircuit,
    pub order: Vec<String>,
    pub lines: BTreeMap<String, InstanceLines>,
    /// `(instance, offset, count)` into the joint parameter vector.
    pub params: Vec<(String, usize, usize)>,
    pub advisories: Vec<Diagnostic>,
}

impl ParametricFlattened {
    pub fn n_params(&self) -> usize {
        self.circuit.n_params()
    }
}

struct Prepared {
    arch: Architecture,
    plan: Plan,
    advisories: Vec<Diagnostic>,
}

fn prepare(arch: &Architecture, strict: bool) -> Result<Prepared, ComposeError> {
    let diags = arch.validate();
    let (blocking, advisories): (Vec<_>, Vec<_>) = diags.into_iter().partition(|d| d.is_blocking(strict));
    if !blocking.is_empty() {
        return Err(ComposeError::ValidationFailed(blocking));
    }
    let arch = arch.inlined();
    for c in arch.components() {
        if let Some(d) = c.descriptor() {
            if !d.lowerable {
                return Err(CatalogError::NotLowerable { id: d.id.get(), name: d.name }.into());
            }
        }
    }
    let plan = plan(&arch);
    Ok(Prepared { arch, plan, advisories })
}

fn empty_circuit(p: &Plan, arch: &Architecture) -> GateCircuit {
    let layout = RegisterLayout { data: p.data_lines, required: p.required_lines, scratch: p.scratch_lines };
    let c = GateCircuit::with_layout(layout);
    let mid = arch.components().iter().filter_map(|c| c.circuit()).any(|c| c.mid_circuit_measurement());
    if mid {
        c.allow_mid_circuit_measurement()
    } else {
        c
    }
}

fn lines_of(p: &Prepared) -> (Vec<String>, BTreeMap<String, InstanceLines>) {
    let mut order = Vec::new();
    let mut lines = BTreeMap::new();
    for &i in &p.plan.order {
        let c = &p.arch.components()[i];
        if !matches!(c.body, Body::Primitive(_)) {
            continue;
        }
        let ip = &p.plan.inst[i];
        order.push(c.id.clone());
        lines.insert(
            c.id.clone(),
            InstanceLines {
                data: ip.data.clone(),
                required: ip.required.clone(),
                scratch: ip.scratch,
                clbit_offset: ip.clbit_offset,
                clbits: ip.clbits,
            },
        );
    }
    (order, lines)
}

pub(crate) fn flatten_with(arch: &Architecture, strict: bool) -> Result<Flattened, ComposeError> {
    let p = prepare(arch, strict)?;
    let mut circuit = empty_circuit(&p.plan, &p.arch);
    for &i in &p.plan.order {
        let c = &p.arch.components()[i];
        let Some(local) = c.circuit() else { continue };
        circuit.extend_mapped(local, &qubit_map(&p.plan, i), p.plan.inst[i].clbit_offset)?;
    }
    circuit.reserve_classical_bits(p.plan.clbits);
    let (order, lines) = lines_of(&p);
    Ok(Flattened { circuit, order, lines, advisories: p.advisories })
}

pub(crate) fn flatten(arch: &Architecture) -> Result<Flattened, ComposeError> {
    flatten_with(arch, false)
}

/// Parametric components keep their angle slots; parameter vectors are
/// concatenated in execution order. Measurements are dropped.
pub(crate) fn flatten_parametric(arch: &Architecture) -> Result<ParametricFlattened, ComposeError> {
    let p = prepare(arch, false)?;
    let mut template = empty_circuit(&p.plan, &p.arch);
    let mut slots = Vec::new();
    let mut params = Vec::new();
    let mut n_params = 0;
    for &i in &p.plan.order {
        let c = &p.arch.components()[i];
        let Body::Primitive(id) = c.body else { continue };
        let map = qubit_map(&p.plan, i);
        let clbits = p.plan.inst[i].clbit_offset;
        match lower_parametric(id, &c.params) {
            Ok(pc) => {
                let base = template.len();
                template.extend_mapped(pc.template(), &map, clbits)?;
                slots.extend(pc.slots().iter().map(|s| ParamSlot { op: s.op + base, param: s.param + n_params, ..*s }));
                params.push((c.id.clone(), n_params, pc.n_params()));
                n_params += pc.n_params();
            }
            Err(CatalogError::NotParametric { .. }) => {
                let local = catalog::lower(id, &c.params)?.without_measurements();
                template.extend_mapped(&local, &map, clbits)?;
            }
            Err(e) => return Err(e.into()),
        }
    }
    let (order, lines) = lines_of(&p);
    Ok(ParametricFlattened {
        circuit: ParametricCircuit::from_parts(template, slots, n_params),
        order,
        lines,
        params,
        advisories: p.advisories,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{ComponentInstance, Contract, PortRef};
    use super::*;
    use crate::catalog::Params;
    use crate::sim::{sample_circuit, StateVector};

    fn prim(id: &str, ident: &str, params: Params) -> ComponentInstance {
        ComponentInstance::named(id, ident, params).unwrap()
    }

    #[test]
    fn bell_then_measure() {
        let mut a = Architecture::new("bell", "1");
        a.add_component(prim("bell", "BellStates", Params::new())).unwrap();
        a.add_component(prim("m", "Measurement", Params::new().with("n", 2usize))).unwrap();
        a.wire(PortRef::new("bell", "out"), PortRef::new("m", "in")).unwrap();
        a.contract(Contract { scope: None, refs: vec![PortRef::new("bell", "out")] });
        assert!(a.validate().is_empty());
        let f = a.flatten().unwrap();
        assert_eq!(f.circuit.width(), 2);
        assert_eq!(f.lines["m"].data, vec![0, 1]);
        let counts = sample_circuit(&f.circuit, StateVector::zero(2).unwrap(), 200, 3).unwrap();
        assert_eq!(counts.get(0) + counts.get(3), 200);
    }

    #[test]
    fn missing_contract_is_advisory() {
        let mut a = Architecture::new("bell", "1");
        a.add_component(prim("bell", "BellStates", Params::new())).unwrap();
        a.add_component(prim("m", "Measurement", Params::new().with("n", 2usize))).unwrap();
        a.wire(PortRef::new("bell", "out"), PortRef::new("m", "in")).unwrap();
        let d = a.validate();
        assert_eq!(d.len(), 1);
        assert!(matches!(d[0], Diagnostic::EntanglementContractMissing { .. }));
        assert_eq!(a.flatten().unwrap().advisories.len(), 1);
        assert!(matches!(flatten_with(&a, true), Err(ComposeError::ValidationFailed(_))));
    }
}
