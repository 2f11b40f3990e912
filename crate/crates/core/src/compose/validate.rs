//! Static checks over an architecture graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::entangle::UnionFind;
use super::plan::{index_of, plan, qubit_map, topo_order, Plan};
use super::{Architecture, Contract, Direction, LedgerAction, PortKind, PortRef, Wire};
use crate::gate::GateKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Severity {
    Blocking,
    /// Reported, and blocking only under strict contract checking.
    Advisory,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Diagnostic {
    UnknownInstance {
        reference: String,
    },
    UnknownPort {
        reference: String,
    },
    Direction {
        from: String,
        to: String,
    },
    /// A quantum output feeding more than one input: no-cloning.
    FanOut {
        port: String,
        consumers: Vec<String>,
    },
    FanIn {
        port: String,
        sources: Vec<String>,
    },
    WidthMismatch {
        from: String,
        to: String,
        from_width: usize,
        to_width: usize,
    },
    KindMismatch {
        from: String,
        to: String,
    },
    QuantumCycle {
        instances: Vec<String>,
    },
    ClassicalCycle {
        instances: Vec<String>,
    },
    UnwiredInput {
        port: String,
    },
    AncillaMissing {
        instance: String,
        required: usize,
        allocated: usize,
    },
    AncillaLeak {
        instance: String,
        allocated: usize,
        returned: usize,
    },
    AncillaNotRequired {
        instance: String,
    },
    MeasuredQubitReuse {
        instance: String,
        lines: Vec<usize>,
    },
    EntanglementContractMissing {
        from: String,
        to: String,
        qubits: Vec<usize>,
    },
}

impl Diagnostic {
    pub fn code(&self) -> &'static str {
        match self {
            Diagnostic::UnknownInstance { .. } => "UnknownInstance",
            Diagnostic::UnknownPort { .. } => "UnknownPort",
            Diagnostic::Direction { .. } => "Direction",
            Diagnostic::FanOut { .. } => "FanOut",
            Diagnostic::FanIn { .. } => "FanIn",
            Diagnostic::WidthMismatch { .. } => "WidthMismatch",
            Diagnostic::KindMismatch { .. } => "KindMismatch",
            Diagnostic::QuantumCycle { .. } => "QuantumCycle",
            Diagnostic::ClassicalCycle { .. } => "ClassicalCycle",
            Diagnostic::UnwiredInput { .. } => "UnwiredInput",
            Diagnostic::AncillaMissing { .. } => "AncillaMissing",
            Diagnostic::AncillaLeak { .. } => "AncillaLeak",
            Diagnostic::AncillaNotRequired { .. } => "AncillaNotRequired",
            Diagnostic::MeasuredQubitReuse { .. } => "MeasuredQubitReuse",
            Diagnostic::EntanglementContractMissing { .. } => "EntanglementContractMissing",
        }
    }

    pub fn severity(&self) -> Severity {
        match self {
            Diagnostic::EntanglementContractMissing { .. } => Severity::Advisory,
            _ => Severity::Blocking,
        }
    }

    pub fn is_blocking(&self, strict_contracts: bool) -> bool {
        self.severity() == Severity::Blocking || strict_contracts
    }
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.code())?;
        match self {
            Diagnostic::UnknownInstance { reference } => write!(f, "`{reference}` names no component"),
            Diagnostic::UnknownPort { reference } => write!(f, "`{reference}` names no port"),
            Diagnostic::Direction { from, to } => write!(f, "`{from} -> {to}` must run from an output to an input"),
            Diagnostic::FanOut { port, consumers } => {
                write!(
                    f,
                    "quantum output `{port}` feeds {} inputs ({}); quantum data cannot be copied",
                    consumers.len(),
                    list(consumers)
                )
            }
            Diagnostic::FanIn { port, sources } => write!(f, "input `{port}` is fed by {}", list(sources)),
            Diagnostic::WidthMismatch { from, to, from_width, to_width } => {
                write!(f, "`{from}` carries {from_width} but `{to}` takes {to_width}")
            }
            Diagnostic::KindMismatch { from, to } => write!(f, "`{from} -> {to}` joins quantum and classical ports"),
            Diagnostic::QuantumCycle { instances } => write!(f, "quantum wires form a cycle through {}", list(instances)),
            Diagnostic::ClassicalCycle { instances } => {
                write!(f, "classical feedback through {} does not pass a controller", list(instances))
            }
            Diagnostic::UnwiredInput { port } => write!(f, "mandatory input `{port}` is not wired"),
            Diagnostic::AncillaMissing { instance, required, allocated } => {
                write!(f, "`{instance}` requires {required} ancilla qubits, ledger allocates {allocated}")
            }
            Diagnostic::AncillaLeak { instance, allocated, returned } => {
                write!(f, "`{instance}` allocates {allocated} ancilla qubits but releases or carries {returned}")
            }
            Diagnostic::AncillaNotRequired { instance } => write!(f, "`{instance}` has ledger entries but needs no ancillas"),
            Diagnostic::MeasuredQubitReuse { instance, lines } => {
                write!(f, "`{instance}` applies gates to measured qubits {}", list(lines))
            }
            Diagnostic::EntanglementContractMissing { from, to, qubits } => {
                write!(
                    f,
                    "`{from} -> {to}` carries qubits {{{}}} that may be entangled, with no contract covering them",
                    list(qubits)
                )
            }
        }
    }
}

fn check_wire(arch: &Architecture, w: &Wire, out: &mut Vec<Diagnostic>) -> Option<PortKind> {
    let mut spec = |r: &PortRef| {
        let Some(c) = arch.component(&r.instance) else {
            out.push(Diagnostic::UnknownInstance { reference: r.to_string() });
            return None;
        };
        match c.port(&r.port) {
            Some(p) if r.index.is_none() => Some(p),
            _ => {
                out.push(Diagnostic::UnknownPort { reference: r.to_string() });
                None
            }
        }
    };
    let (f, t) = (spec(&w.from)?, spec(&w.to)?);
    if f.direction != Direction::Out || t.direction != Direction::In {
        out.push(Diagnostic::Direction { from: w.from.to_string(), to: w.to.to_string() });
        return None;
    }
    if f.kind != t.kind {
        out.push(Diagnostic::KindMismatch { from: w.from.to_string(), to: w.to.to_string() });
        return None;
    }
    if let (Some(fw), Some(tw)) = (f.width, t.width) {
        if fw != tw {
            out.push(Diagnostic::WidthMismatch { from: w.from.to_string(), to: w.to.to_string(), from_width: fw, to_width: tw });
        }
    }
    Some(f.kind)
}

/// All diagnostics for the architecture; empty means every check holds.
pub fn validate(arch: &Architecture) -> Vec<Diagnostic> {
    let arch = arch.inlined();
    let mut out = Vec::new();

    let mut kinds = Vec::with_capacity(arch.wires.len());
    for w in &arch.wires {
        kinds.push(check_wire(&arch, w, &mut out));
    }

    let mut by_source: BTreeMap<&PortRef, Vec<&PortRef>> = BTreeMap::new();
    let mut by_target: BTreeMap<&PortRef, Vec<&PortRef>> = BTreeMap::new();
    for (w, k) in arch.wires.iter().zip(&kinds) {
        if *k == Some(PortKind::Quantum) {
            by_source.entry(&w.from).or_default().push(&w.to);
        }
        if k.is_some() {
            by_target.entry(&w.to).or_default().push(&w.from);
        }
    }
    for (port, consumers) in by_source.iter().filter(|(_, v)| v.len() > 1) {
        out.push(Diagnostic::FanOut { port: port.to_string(), consumers: consumers.iter().map(|c| c.to_string()).collect() });
    }
    for (port, sources) in by_target.iter().filter(|(_, v)| v.len() > 1) {
        out.push(Diagnostic::FanIn { port: port.to_string(), sources: sources.iter().map(|c| c.to_string()).collect() });
    }

    let (order, acyclic) = topo_order(&arch);
    if !acyclic {
        let on_cycle = order_tail(&arch, &order);
        out.push(Diagnostic::QuantumCycle { instances: on_cycle });
    }
    if let Some(cycle) = classical_cycle(&arch) {
        out.push(Diagnostic::ClassicalCycle { instances: cycle });
    }

    for c in &arch.components {
        if let Some(p) = c.port("in") {
            let r = PortRef::new(&c.id, "in");
            if !p.optional && !by_target.contains_key(&r) {
                out.push(Diagnostic::UnwiredInput { port: r.to_string() });
            }
        }
    }

    check_ledger(&arch, &mut out);
    let plan = plan(&arch);
    check_measured(&arch, &plan, &mut out);
    if acyclic {
        check_contracts(&arch, &plan, &mut out);
    }
    out
}

fn order_tail(arch: &Architecture, order: &[usize]) -> Vec<String> {
    // Components Kahn could not schedule sit at the end of the order; keep
    // those with both an incoming and an outgoing quantum edge.
    let edges = super::plan::quantum_edges(arch);
    let scheduled = {
        let mut indeg = vec![0usize; arch.components.len()];
        for &(_, t) in &edges {
            indeg[t] += 1;
        }
        let mut ready: Vec<usize> = (0..indeg.len()).filter(|&i| indeg[i] == 0).collect();
        let mut seen = BTreeSet::new();
        while let Some(i) = ready.pop() {
            seen.insert(i);
            for &(f, t) in &edges {
                if f == i {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        seen
    };
    order.iter().filter(|i| !scheduled.contains(i)).map(|&i| arch.components[i].id.clone()).collect()
}

fn classical_cycle(arch: &Architecture) -> Option<Vec<String>> {
    let n = arch.components.len();
    let mut adj = vec![Vec::new(); n];
    for w in &arch.wires {
        let (Some(f), Some(t)) = (index_of(arch, &w.from.instance), index_of(arch, &w.to.instance)) else { continue };
        let classical = arch.components[f].port(&w.from.port).is_some_and(|p| p.kind == PortKind::Classical);
        if classical && !arch.components[f].is_controller() && !arch.components[t].is_controller() {
            adj[f].push(t);
        }
    }
    // quantum wires also count as forward edges in the feedback loop
    for (f, t) in super::plan::quantum_edges(arch) {
        if !arch.components[f].is_controller() && !arch.components[t].is_controller() {
            adj[f].push(t);
        }
    }
    let mut state = vec![0u8; n];
    let mut stack = Vec::new();
    fn dfs(v: usize, adj: &[Vec<usize>], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for &u in &adj[v] {
            if state[u] == 1 {
                let pos = stack.iter().position(|&x| x == u).unwrap();
                return Some(stack[pos..].to_vec());
            }
            if state[u] == 0 {
                if let Some(c) = dfs(u, adj, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    for v in 0..n {
        if state[v] == 0 {
            if let Some(c) = dfs(v, &adj, &mut state, &mut stack) {
                let has_classical = c.iter().zip(c.iter().cycle().skip(1)).any(|(&a, &b)| {
                    arch.wires.iter().any(|w| {
                        w.from.instance == arch.components[a].id
                            && w.to.instance == arch.components[b].id
                            && arch.components[a].port(&w.from.port).is_some_and(|p| p.kind == PortKind::Classical)
                    })
                });
                // a purely quantum cycle is reported separately
                if has_classical {
                    return Some(c.into_iter().map(|i| arch.components[i].id.clone()).collect());
                }
                return None;
            }
        }
    }
    None
}

fn check_ledger(arch: &Architecture, out: &mut Vec<Diagnostic>) {
    for c in &arch.components {
        let Some(l) = c.lowered() else { continue };
        let entries: Vec<_> = arch.ledger.iter().filter(|e| e.instance == c.id).collect();
        let sum = |a: LedgerAction| entries.iter().filter(|e| e.action == a).map(|e| e.count).sum::<usize>();
        let (alloc, returned) = (sum(LedgerAction::Alloc), sum(LedgerAction::Release) + sum(LedgerAction::Carry));
        if l.required == 0 {
            if !entries.is_empty() {
                out.push(Diagnostic::AncillaNotRequired { instance: c.id.clone() });
            }
            continue;
        }
        if alloc != l.required {
            out.push(Diagnostic::AncillaMissing { instance: c.id.clone(), required: l.required, allocated: alloc });
        }
        if returned != alloc {
            out.push(Diagnostic::AncillaLeak { instance: c.id.clone(), allocated: alloc, returned });
        }
    }
    for e in &arch.ledger {
        if arch.component(&e.instance).is_none() {
            out.push(Diagnostic::UnknownInstance { reference: e.instance.clone() });
        }
    }
}

fn check_measured(arch: &Architecture, plan: &Plan, out: &mut Vec<Diagnostic>) {
    let mut measured = vec![false; plan.width()];
    for &i in &plan.order {
        let c = &arch.components[i];
        let Some(l) = c.lowered() else { continue };
        let mut reused = BTreeSet::new();
        match &l.circuit {
            Some(circ) => {
                let map = qubit_map(plan, i);
                let mut newly = Vec::new();
                for g in circ.ops() {
                    if let GateKind::Measure { .. } = g.kind {
                        newly.push(map[g.qubits[0]]);
                    } else {
                        reused.extend(g.qubits.iter().map(|&q| map[q]).filter(|&q| measured[q]));
                    }
                }
                for q in newly {
                    measured[q] = true;
                }
            }
            None => reused.extend(plan.inst[i].data.iter().copied().filter(|&q| measured[q])),
        }
        if !reused.is_empty() {
            out.push(Diagnostic::MeasuredQubitReuse { instance: c.id.clone(), lines: reused.into_iter().collect() });
        }
    }
}

fn scope_matches(scope: &str, instance: &str) -> bool {
    instance == scope || instance.strip_prefix(scope).is_some_and(|rest| rest.starts_with('/'))
}

fn contract_lines(arch: &Architecture, plan: &Plan, contract: &Contract, out: &mut Vec<Diagnostic>) -> BTreeSet<usize> {
    let mut lines = BTreeSet::new();
    for r in &contract.refs {
        let resolved = index_of(arch, &r.instance).and_then(|i| plan.port_lines(i, &r.port).map(|l| (i, l)));
        match resolved {
            Some((_, l)) => match r.index {
                Some(k) if k < l.len() => {
                    lines.insert(l[k]);
                }
                Some(_) => out.push(Diagnostic::UnknownPort { reference: r.to_string() }),
                None => lines.extend(l.iter().copied()),
            },
            None if arch.component(&r.instance).is_none() => out.push(Diagnostic::UnknownInstance { reference: r.to_string() }),
            None => out.push(Diagnostic::UnknownPort { reference: r.to_string() }),
        }
    }
    lines
}

/// Entanglement sets over lines after each component in execution order.
/// Scratch qubits get private nodes per component so a shared pool does not
/// link unrelated components.
pub(crate) fn prefix_partitions(arch: &Architecture, plan: &Plan) -> BTreeMap<usize, Vec<Vec<usize>>> {
    let lines = plan.scratch_start();
    let mut uf = UnionFind::new(lines);
    let mut snapshots = BTreeMap::new();
    for &i in &plan.order {
        let c = &arch.components[i];
        if let Some(l) = c.lowered() {
            match &l.circuit {
                Some(circ) => {
                    let p = &plan.inst[i];
                    let private: Vec<usize> = (0..p.scratch).map(|_| uf.push()).collect();
                    let map: Vec<usize> = p.data.iter().chain(&p.required).copied().chain(private).collect();
                    for g in circ.ops() {
                        let nodes: Vec<usize> = g.qubits.iter().map(|&q| map[q]).collect();
                        uf.union_all(&nodes);
                    }
                }
                None => uf.union_all(&plan.inst[i].data),
            }
        }
        snapshots.insert(i, uf.sets_below(lines));
    }
    snapshots
}

fn check_contracts(arch: &Architecture, plan: &Plan, out: &mut Vec<Diagnostic>) {
    let snapshots = prefix_partitions(arch, plan);
    let mut ref_diags = Vec::new();
    let resolved: Vec<(&Contract, BTreeSet<usize>)> =
        arch.contracts.iter().map(|k| (k, contract_lines(arch, plan, k, &mut ref_diags))).collect();
    out.extend(ref_diags);
    for w in &arch.wires {
        let (Some(f), Some(_)) = (index_of(arch, &w.from.instance), index_of(arch, &w.to.instance)) else { continue };
        if arch.components[f].port(&w.from.port).is_none_or(|p| p.kind != PortKind::Quantum) {
            continue;
        }
        let Some(carried) = plan.port_lines(f, &w.from.port) else { continue };
        let carried: BTreeSet<usize> = carried.iter().copied().collect();
        let applicable: Vec<&BTreeSet<usize>> = resolved
            .iter()
            .filter(|(k, _)| match &k.scope {
                None => true,
                Some((a, b)) => scope_matches(a, &w.from.instance) && scope_matches(b, &w.to.instance),
            })
            .map(|(_, l)| l)
            .collect();
        let mut missing = BTreeSet::new();
        for set in &snapshots[&f] {
            if set.len() < 2 || !set.iter().any(|q| carried.contains(q)) {
                continue;
            }
            if !applicable.iter().any(|l| set.iter().all(|q| l.contains(q))) {
                missing.extend(set.iter().copied());
            }
        }
        if !missing.is_empty() {
            out.push(Diagnostic::EntanglementContractMissing {
                from: w.from.to_string(),
                to: w.to.to_string(),
                qubits: missing.into_iter().collect(),
            });
        }
    }
}
