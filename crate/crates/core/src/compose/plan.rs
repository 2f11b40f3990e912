//! Qubit-line and classical-bit assignment shared by validation and flattening.

use std::collections::BTreeSet;

use super::{Architecture, PortKind, PortRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Virt {
    Data(usize),
    Req(usize),
}

#[derive(Debug, Clone, Default)]
pub(crate) struct InstPlan {
    /// Lines carrying the data register, in local qubit order.
    pub data: Vec<usize>,
    pub required: Vec<usize>,
    pub scratch: usize,
    pub clbit_offset: usize,
    pub clbits: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Plan {
    /// Component indices in execution order.
    pub order: Vec<usize>,
    pub inst: Vec<InstPlan>,
    pub data_lines: usize,
    pub required_lines: usize,
    pub scratch_lines: usize,
    pub clbits: usize,
}

impl Plan {
    pub fn width(&self) -> usize {
        self.data_lines + self.required_lines + self.scratch_lines
    }

    pub fn scratch_start(&self) -> usize {
        self.data_lines + self.required_lines
    }

    /// Lines behind a quantum port of component `idx`.
    pub fn port_lines(&self, idx: usize, port: &str) -> Option<&[usize]> {
        match port {
            "in" | "out" => Some(&self.inst[idx].data),
            "anc" => Some(&self.inst[idx].required),
            _ => None,
        }
    }
}

pub(crate) fn index_of(arch: &Architecture, id: &str) -> Option<usize> {
    arch.components.iter().position(|c| c.id == id)
}

fn is_quantum(arch: &Architecture, r: &PortRef) -> bool {
    index_of(arch, &r.instance).and_then(|i| arch.components[i].port(&r.port)).is_some_and(|p| p.kind == PortKind::Quantum)
}

/// Quantum edges `(from, to)` between known components.
pub(crate) fn quantum_edges(arch: &Architecture) -> Vec<(usize, usize)> {
    arch.wires
        .iter()
        .filter(|w| is_quantum(arch, &w.from) && is_quantum(arch, &w.to))
        .filter_map(|w| Some((index_of(arch, &w.from.instance)?, index_of(arch, &w.to.instance)?)))
        .collect()
}

/// Kahn order over quantum wires, ties broken by declaration order.
/// Components on a cycle follow in declaration order.
pub(crate) fn topo_order(arch: &Architecture) -> (Vec<usize>, bool) {
    let n = arch.components.len();
    let edges = quantum_edges(arch);
    let mut indeg = vec![0usize; n];
    for &(_, t) in &edges {
        indeg[t] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop_first() {
        order.push(i);
        for &(f, t) in &edges {
            if f == i {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.insert(t);
                }
            }
        }
    }
    let acyclic = order.len() == n;
    if !acyclic {
        let seen: BTreeSet<usize> = order.iter().copied().collect();
        order.extend((0..n).filter(|i| !seen.contains(i)));
    }
    (order, acyclic)
}

/// Assigns lines to an inlined architecture.
pub(crate) fn plan(arch: &Architecture) -> Plan {
    let (order, _) = topo_order(arch);
    let n = arch.components.len();
    let mut virt_data: Vec<Vec<Virt>> = vec![Vec::new(); n];
    let mut virt_req: Vec<Vec<Virt>> = vec![Vec::new(); n];
    let mut done = vec![false; n];
    let (mut n_data, mut n_req) = (0usize, 0usize);
    let mut inst = vec![InstPlan::default(); n];
    let mut clbits = 0;
    let mut scratch_lines = 0;

    for &i in &order {
        let c = &arch.components[i];
        let Some(l) = c.lowered() else {
            done[i] = true;
            continue;
        };
        let source = arch
            .wires
            .iter()
            .find(|w| w.to.instance == c.id && w.to.port == "in")
            .and_then(|w| index_of(arch, &w.from.instance).map(|s| (s, w.from.port.as_str())))
            .filter(|&(s, _)| done[s]);
        let mut data: Vec<Virt> = match source {
            Some((s, "out")) => virt_data[s].clone(),
            Some((s, "anc")) => virt_req[s].clone(),
            _ => Vec::new(),
        };
        data.truncate(l.data);
        while data.len() < l.data {
            data.push(Virt::Data(n_data));
            n_data += 1;
        }
        let req: Vec<Virt> = (0..l.required).map(|k| Virt::Req(n_req + k)).collect();
        n_req += l.required;
        virt_data[i] = data;
        virt_req[i] = req;
        inst[i].scratch = l.scratch;
        inst[i].clbit_offset = clbits;
        inst[i].clbits = l.clbits;
        clbits += l.clbits;
        scratch_lines = scratch_lines.max(l.scratch);
        done[i] = true;
    }

    let resolve = |v: &Virt| match *v {
        Virt::Data(k) => k,
        Virt::Req(k) => n_data + k,
    };
    for i in 0..n {
        inst[i].data = virt_data[i].iter().map(resolve).collect();
        inst[i].required = virt_req[i].iter().map(resolve).collect();
    }
    Plan { order, inst, data_lines: n_data, required_lines: n_req, scratch_lines, clbits }
}

/// Global qubit map for component `i`'s local circuit.
pub(crate) fn qubit_map(plan: &Plan, i: usize) -> Vec<usize> {
    let p = &plan.inst[i];
    let start = plan.scratch_start();
    p.data.iter().chain(&p.required).copied().chain(start..start + p.scratch).collect()
}
