use std::collections::{BTreeMap, BTreeSet};

/// Node identifier. `START` and `END` are reserved; cluster `c` becomes node
/// `c + 2`.
pub type NodeId = usize;

pub const START: NodeId = 0;
pub const END: NodeId = 1;

pub fn cluster_node(cluster_id: usize) -> NodeId {
    cluster_id + 2
}

/// Directed graph with integer node and edge weights, iterated in id order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    pub nodes: BTreeMap<NodeId, u32>,
    pub edges: BTreeMap<(NodeId, NodeId), u32>,
}

impl Digraph {
    pub fn successors(&self, u: NodeId) -> impl Iterator<Item = (NodeId, u32)> + '_ {
        self.edges.range((u, 0)..=(u, NodeId::MAX)).map(|(&(_, v), &w)| (v, w))
    }

    pub fn edge(&self, u: NodeId, v: NodeId) -> Option<u32> {
        self.edges.get(&(u, v)).copied()
    }

    pub fn has_path_edges(&self, path: &[NodeId]) -> bool {
        path.windows(2).all(|e| self.edges.contains_key(&(e[0], e[1])))
    }

    /// Drops edges whose endpoints are not both nodes.
    pub fn retain_consistent_edges(&mut self) {
        let nodes = &self.nodes;
        self.edges.retain(|(u, v), _| nodes.contains_key(u) && nodes.contains_key(v));
    }

    /// Nodes reachable from `from` following edges forwards (or backwards).
    pub fn reachable(&self, from: NodeId, backwards: bool) -> BTreeSet<NodeId> {
        let mut adj: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for &(u, v) in self.edges.keys() {
            let (a, b) = if backwards { (v, u) } else { (u, v) };
            adj.entry(a).or_default().push(b);
        }
        let mut seen = BTreeSet::new();
        if !self.nodes.contains_key(&from) {
            return seen;
        }
        let mut stack = vec![from];
        seen.insert(from);
        while let Some(u) = stack.pop() {
            for &v in adj.get(&u).into_iter().flatten() {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Sub-graph formed by the nodes and edges of `paths`.
    pub fn union_of_paths(&self, paths: &[Vec<NodeId>]) -> Digraph {
        let mut out = Digraph::default();
        for p in paths {
            for &n in p {
                out.nodes.insert(n, self.nodes[&n]);
            }
            for e in p.windows(2) {
                out.edges.insert((e[0], e[1]), self.edges[&(e[0], e[1])]);
            }
        }
        out
    }
}
