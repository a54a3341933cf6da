//! Clique complexes built level by level with the common-neighbors rule.
//!
//! Level `k` holds every `k`-clique (a complete subgraph on `k + 1` nodes) as a
//! strictly increasing node tuple. Level `k + 1` extends each `k`-clique by the
//! common neighbors of all its nodes whose id exceeds the clique's largest id,
//! so every clique is produced exactly once and levels come out sorted.

mod cross_polytope;
mod maximal;

pub use cross_polytope::{
    cross_polytope_face_count, cross_polytope_network, smallest_cavity_complex, MAX_CAVITY_ORDER,
};
pub use maximal::{max_clique_order, maximal_cliques};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Network, NodeId};

/// All cliques of one order, stored as a flat array of `order + 1`-tuples in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueLevel {
    order: usize,
    nodes: Vec<NodeId>,
}

impl CliqueLevel {
    pub fn new(order: usize, nodes: Vec<NodeId>) -> Self {
        assert_eq!(
            nodes.len() % (order + 1),
            0,
            "flat clique array has the wrong stride"
        );
        CliqueLevel { order, nodes }
    }

    /// Builds a level from tuples, sorting and deduplicating them.
    pub fn from_tuples(order: usize, mut tuples: Vec<Vec<NodeId>>) -> Self {
        for t in tuples.iter_mut() {
            assert_eq!(t.len(), order + 1);
            t.sort_unstable();
        }
        tuples.sort_unstable();
        tuples.dedup();
        CliqueLevel {
            order,
            nodes: tuples.concat(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len() / (self.order + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, index: usize) -> &[NodeId] {
        let w = self.order + 1;
        &self.nodes[index * w..(index + 1) * w]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, NodeId> {
        self.nodes.chunks_exact(self.order + 1)
    }

    /// Position of a sorted tuple in this level.
    pub fn index_of(&self, clique: &[NodeId]) -> Option<usize> {
        if clique.len() != self.order + 1 {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(clique) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Cliques of a network organised by order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueComplex {
    levels: Vec<CliqueLevel>,
    truncated_at: Option<usize>,
    warning: Option<String>,
}

impl CliqueComplex {
    pub fn from_levels(levels: Vec<CliqueLevel>, truncated_at: Option<usize>) -> Self {
        let warning = truncated_at.map(|k| format!("enumeration stopped before order {k}"));
        let mut levels = levels;
        while levels.last().is_some_and(CliqueLevel::is_empty) {
            levels.pop();
        }
        CliqueComplex {
            levels,
            truncated_at,
            warning,
        }
    }

    pub fn levels(&self) -> &[CliqueLevel] {
        &self.levels
    }

    pub fn level(&self, order: usize) -> Option<&CliqueLevel> {
        self.levels.get(order)
    }

    /// Highest order with at least one clique, `None` for an empty complex.
    pub fn top_order(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    /// Clique counts `m_k`, without trailing zeros.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(CliqueLevel::len).collect()
    }

    /// Order at which the budget or order cap stopped enumeration.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    pub fn is_complete(&self) -> bool {
        self.truncated_at.is_none()
    }

    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    pub(crate) fn require_complete(&self, what: &'static str) -> Result<()> {
        match self.truncated_at {
            Some(order) => Err(Error::Truncated { order, what }),
            None => Ok(()),
        }
    }
}

/// Enumerates cliques order by order.
///
/// Stops when a level comes out empty, after `max_order`, or when a level
/// would hold more than `budget` cliques. The last two cases set
/// `truncated_at` so a partial result is never mistaken for a full one.
pub fn enumerate_cliques(
    net: &Network,
    budget: usize,
    max_order: Option<usize>,
) -> Result<CliqueComplex> {
    if budget == 0 {
        return Err(Error::OutOfRange("budget 0".into()));
    }
    let mut levels = Vec::new();
    if net.node_count() == 0 {
        return Ok(CliqueComplex::from_levels(levels, None));
    }
    if net.node_count() > budget {
        return Ok(CliqueComplex::from_levels(levels, Some(0)));
    }
    levels.push(CliqueLevel::new(
        0,
        (0..net.node_count() as NodeId).collect(),
    ));

    let mut order = 0;
    loop {
        let current = &levels[order];
        let next_count: usize = current
            .nodes
            .par_chunks(current.order + 1)
            .map(|c| extension_count(net, c))
            .sum();
        if next_count == 0 {
            break;
        }
        if max_order.is_some_and(|m| order + 1 > m) || next_count > budget {
            return Ok(CliqueComplex::from_levels(levels, Some(order + 1)));
        }
        let chunks: Vec<Vec<NodeId>> = current
            .nodes
            .par_chunks(current.order + 1)
            .map(|c| {
                let mut out = Vec::new();
                for w in extensions(net, c) {
                    out.extend_from_slice(c);
                    out.push(w);
                }
                out
            })
            .collect();
        levels.push(CliqueLevel::new(order + 1, chunks.concat()));
        order += 1;
    }
    Ok(CliqueComplex::from_levels(levels, None))
}

/// Common neighbors of `clique` with id above its maximum.
fn extensions<'a>(net: &'a Network, clique: &'a [NodeId]) -> impl Iterator<Item = NodeId> + 'a {
    let top = *clique.last().expect("cliques are non-empty");
    let upper = net.neighbors(top);
    let start = upper.partition_point(|&v| v <= top);
    upper[start..].iter().copied().filter(move |&w| {
        clique[..clique.len() - 1]
            .iter()
            .all(|&u| net.has_edge(u, w))
    })
}

fn extension_count(net: &Network, clique: &[NodeId]) -> usize {
    extensions(net, clique).count()
}

/// Alternating sum of clique counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct EulerNumber(pub i64);

pub fn euler_characteristic(cx: &CliqueComplex) -> Result<EulerNumber> {
    cx.require_complete("the Euler characteristic")?;
    Ok(EulerNumber(alternating_sum(&cx.counts())))
}

pub(crate) fn alternating_sum(values: &[usize]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(k, &m)| if k % 2 == 0 { m as i64 } else { -(m as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Network {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Network::from_index_edges(n, &edges)
    }

    #[test]
    fn k4_counts() {
        let cx = enumerate_cliques(&complete(4), 100, None).unwrap();
        assert_eq!(cx.counts(), vec![4, 6, 4, 1]);
        assert_eq!(cx.level(3).unwrap().get(0), &[0, 1, 2, 3]);
        assert_eq!(euler_characteristic(&cx).unwrap(), EulerNumber(1));
    }

    #[test]
    fn single_node() {
        let net = Network::from_labeled_edges([(7, 7)]);
        let cx = enumerate_cliques(&net, 10, None).unwrap();
        assert_eq!(cx.counts(), vec![1]);
        assert_eq!(euler_characteristic(&cx).unwrap().0, 1);
    }

    #[test]
    fn budget_truncates_and_refuses_euler() {
        let cx = enumerate_cliques(&complete(6), 16, None).unwrap();
        // m = (6, 15, 20, ...): the triangle level exceeds 16
        assert_eq!(cx.counts(), vec![6, 15]);
        assert_eq!(cx.truncated_at(), Some(2));
        assert!(cx.warning().is_some());
        assert!(matches!(
            euler_characteristic(&cx),
            Err(Error::Truncated { order: 2, .. })
        ));
    }

    #[test]
    fn max_order_truncates_only_when_more_cliques_exist() {
        let cx = enumerate_cliques(&complete(4), 100, Some(1)).unwrap();
        assert_eq!(cx.truncated_at(), Some(2));
        let cx = enumerate_cliques(&complete(4), 100, Some(3)).unwrap();
        assert!(cx.is_complete());
    }

    #[test]
    fn index_of_finds_tuples() {
        let cx = enumerate_cliques(&complete(5), 100, None).unwrap();
        let tri = cx.level(2).unwrap();
        for (i, t) in tri.iter().enumerate() {
            assert_eq!(tri.index_of(t), Some(i));
        }
        assert_eq!(tri.index_of(&[0, 1]), None);
        assert_eq!(tri.index_of(&[0, 1, 9]), None);
    }

    #[test]
    fn zero_budget_rejected() {
        assert!(enumerate_cliques(&complete(3), 0, None).is_err());
    }
}
