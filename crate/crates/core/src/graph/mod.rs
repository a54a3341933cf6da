//! Undirected simple networks with canonical node numbering.
//!
//! Internal node ids are `0..node_count` and follow the sorted order of the
//! original labels, so every downstream tie-break (clique order, pivot choice,
//! generator choice) is reproducible across runs.

mod io;
mod kcore;
mod random;

pub use io::{load_edge_list, Delimiter, HeaderPolicy, LoadOptions};
pub use kcore::{
    computability_gate, k_core_decomposition, Computability, CorenessReport, GateConfig,
};
pub use random::random_gnm;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Internal node id.
pub type NodeId = u32;

/// An external node label as it appeared in the input.
///
/// Integer labels sort numerically and before any textual label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeLabel {
    Int(i64),
    Name(String),
}

impl NodeLabel {
    pub fn parse(token: &str) -> Self {
        match token.parse::<i64>() {
            Ok(v) => NodeLabel::Int(v),
            Err(_) => NodeLabel::Name(token.to_string()),
        }
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeLabel::Int(v) => write!(f, "{v}"),
            NodeLabel::Name(s) => f.write_str(s),
        }
    }
}

impl From<i64> for NodeLabel {
    fn from(v: i64) -> Self {
        NodeLabel::Int(v)
    }
}

impl From<i32> for NodeLabel {
    fn from(v: i32) -> Self {
        NodeLabel::Int(v.into())
    }
}

impl From<&str> for NodeLabel {
    fn from(s: &str) -> Self {
        NodeLabel::parse(s)
    }
}

/// A canonical undirected simple graph.
///
/// Adjacency lists are strictly increasing, symmetric and loop-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    labels: Vec<NodeLabel>,
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Network {
    pub fn empty() -> Self {
        Network {
            labels: Vec::new(),
            adjacency: Vec::new(),
            edge_count: 0,
        }
    }

    /// Builds a network from labelled edges. Reversed and repeated pairs are
    /// merged and self-loops dropped (their endpoints are kept as nodes).
    pub fn from_labeled_edges<L, I>(edges: I) -> Self
    where
        L: Into<NodeLabel>,
        I: IntoIterator<Item = (L, L)>,
    {
        let pairs: Vec<(NodeLabel, NodeLabel)> = edges
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .collect();
        Self::from_label_pairs(&pairs, std::iter::empty())
    }

    /// Builds a network on nodes labelled `1..=node_count`, with edges given
    /// as zero-based internal indices.
    pub fn from_index_edges(node_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![BTreeSet::new(); node_count];
        for &(u, v) in edges {
            assert!(
                u < node_count && v < node_count,
                "edge ({u}, {v}) out of range"
            );
            if u != v {
                adjacency[u].insert(v as NodeId);
                adjacency[v].insert(u as NodeId);
            }
        }
        let labels = (1..=node_count as i64).map(NodeLabel::Int).collect();
        Self::from_sets(labels, adjacency)
    }

    pub(crate) fn from_label_pairs(
        pairs: &[(NodeLabel, NodeLabel)],
        isolated: impl Iterator<Item = NodeLabel>,
    ) -> Self {
        let mut all: BTreeSet<NodeLabel> = isolated.collect();
        for (a, b) in pairs {
            all.insert(a.clone());
            all.insert(b.clone());
        }
        let labels: Vec<NodeLabel> = all.into_iter().collect();
        let mut adjacency = vec![BTreeSet::new(); labels.len()];
        for (a, b) in pairs {
            if a == b {
                continue;
            }
            let u = labels.binary_search(a).expect("label collected above");
            let v = labels.binary_search(b).expect("label collected above");
            adjacency[u].insert(v as NodeId);
            adjacency[v].insert(u as NodeId);
        }
        Self::from_sets(labels, adjacency)
    }

    fn from_sets(labels: Vec<NodeLabel>, sets: Vec<BTreeSet<NodeId>>) -> Self {
        let adjacency: Vec<Vec<NodeId>> =
            sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Network {
            labels,
            adjacency,
            edge_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn label(&self, id: NodeId) -> &NodeLabel {
        &self.labels[id as usize]
    }

    /// Internal id of an external label.
    pub fn id_of(&self, label: &NodeLabel) -> Option<NodeId> {
        self.labels.binary_search(label).ok().map(|i| i as NodeId)
    }

    pub fn neighbors(&self, id: NodeId) -> &[NodeId] {
        &self.adjacency[id as usize]
    }

    pub fn degree(&self, id: NodeId) -> usize {
        self.adjacency[id as usize].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn average_degree(&self) -> f64 {
        if self.labels.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.labels.len() as f64
        }
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, adj)| {
            let u = u as NodeId;
            adj.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// The sub-network induced on `nodes`, keeping the original labels.
    pub fn induced(&self, nodes: &[NodeId]) -> Network {
        let keep: BTreeSet<NodeId> = nodes.iter().copied().collect();
        let pairs: Vec<(NodeLabel, NodeLabel)> = self
            .edges()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v))
            .map(|(u, v)| (self.label(u).clone(), self.label(v).clone()))
            .collect();
        Self::from_label_pairs(&pairs, keep.iter().map(|&i| self.label(i).clone()))
    }

    /// The same network with one edge removed (labels and node set unchanged).
    pub fn without_edge(&self, u: NodeId, v: NodeId) -> Network {
        let mut net = self.clone();
        if let Ok(pos) = net.adjacency[u as usize].binary_search(&v) {
            net.adjacency[u as usize].remove(pos);
            let back = net.adjacency[v as usize]
                .binary_search(&u)
                .expect("symmetric adjacency");
            net.adjacency[v as usize].remove(back);
            net.edge_count -= 1;
        }
        net
    }

    /// Canonical edge-list text: one `u v` line per edge, `u < v` in label
    /// order, LF endings. Isolated nodes are not representable.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::with_capacity(self.edge_count * 8);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.label(u), self.label(v)));
        }
        out
    }

    /// Number of connected components (isolated nodes count as components).
    pub fn connected_components(&self) -> usize {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s as NodeId);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_sort_numerically_before_names() {
        let net = Network::from_labeled_edges([("10", "9"), ("b", "2"), ("a", "10")]);
        let shown: Vec<String> = net.labels().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["2", "9", "10", "a", "b"]);
    }

    #[test]
    fn merges_reversed_and_repeated_pairs() {
        let net = Network::from_labeled_edges([(1, 2), (2, 1), (1, 2), (3, 3)]);
        assert_eq!(net.node_count(), 3);
        assert_eq!(net.edge_count(), 1);
        assert_eq!(net.degree(2), 0);
    }

    #[test]
    fn induced_keeps_isolated_nodes() {
        let net = Network::from_labeled_edges([(1, 2), (2, 3), (3, 4)]);
        let sub = net.induced(&[0, 2, 3]);
        assert_eq!(sub.node_count(), 3);
        assert_eq!(sub.edge_count(), 1);
        assert_eq!(sub.connected_components(), 2);
    }

    #[test]
    fn without_edge_updates_both_sides() {
        let net = Network::from_index_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let cut = net.without_edge(2, 0);
        assert_eq!(cut.edge_count(), 2);
        assert!(!cut.has_edge(0, 2) && !cut.has_edge(2, 0));
    }
}
