//! Conservative entanglement tracking by gate connectivity.

use crate::circuit::GateCircuit;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Adds a singleton and returns its index.
    pub fn push(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.rank.push(0);
        self.parent.len() - 1
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }

    pub fn union_all(&mut self, items: &[usize]) {
        for w in items.windows(2) {
            self.union(w[0], w[1]);
        }
    }

    /// Sets restricted to `0..limit`, each sorted, ordered by smallest member.
    pub fn sets_below(&mut self, limit: usize) -> Vec<Vec<usize>> {
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..limit.min(self.len()) {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut sets: Vec<Vec<usize>> = by_root.into_values().collect();
        sets.sort_by_key(|s| s[0]);
        sets
    }
}

/// Partition of the circuit's qubits; two qubits share a set iff a chain of
/// multi-qubit gates connects them.
pub fn entanglement_sets(circuit: &GateCircuit) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(circuit.width());
    for g in circuit.ops() {
        uf.union_all(&g.qubits);
    }
    uf.sets_below(circuit.width())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::Gate;

    #[test]
    fn bell_with_idle_qubit() {
        let mut c = GateCircuit::new(3);
        c.push(Gate::h(0)).push(Gate::cnot(0, 1));
        assert_eq!(entanglement_sets(&c), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn two_pairs() {
        let mut c = GateCircuit::new(4);
        c.push(Gate::h(0)).push(Gate::cnot(0, 1)).push(Gate::h(2)).push(Gate::cnot(2, 3));
        assert_eq!(entanglement_sets(&c), vec![vec![0, 1], vec![2, 3]]);
    }
}
