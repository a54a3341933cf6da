use serde::Serialize;

use super::{Network, NodeId};
use crate::error::{Error, Result};

/// Per-node coreness and a summary of the innermost core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorenessReport {
    pub coreness: Vec<usize>,
    pub k_max: usize,
    /// Nodes of the `k_max`-core, ascending.
    pub core: Vec<NodeId>,
    pub core_edges: usize,
}

impl CorenessReport {
    /// Number of nodes per coreness value, indexed by coreness.
    pub fn histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.k_max + 1];
        for &c in &self.coreness {
            hist[c] += 1;
        }
        hist
    }
}

/// Coreness of every node by bucket peeling (Batagelj-Zaversnik), `O(|E|)`.
pub fn k_core_decomposition(net: &Network) -> CorenessReport {
    let n = net.node_count();
    let mut degree: Vec<usize> = (0..n).map(|i| net.degree(i as NodeId)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    // nodes sorted by current degree, with bucket start offsets
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[degree[v]];
        order[pos[v]] = v;
        bin[degree[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = order[i];
        for &u in net.neighbors(v as NodeId) {
            let u = u as usize;
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }

    let coreness = degree;
    let k_max = coreness.iter().copied().max().unwrap_or(0);
    let core: Vec<NodeId> = (0..n)
        .filter(|&v| coreness[v] == k_max)
        .map(|v| v as NodeId)
        .collect();
    let core_edges = net
        .edges()
        .filter(|&(u, v)| coreness[u as usize] == k_max && coreness[v as usize] == k_max)
        .count();
    CorenessReport {
        coreness,
        k_max,
        core,
        core_edges,
    }
}

/// Limits for deciding whether full clique enumeration is attempted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateConfig {
    /// Per-order cap on the number of cliques handed to enumeration.
    pub budget: usize,
    pub coreness_threshold: usize,
}

impl GateConfig {
    pub const DEFAULT_BUDGET: usize = 10_000_000;
    pub const DEFAULT_THRESHOLD: usize = 25;

    pub fn new(budget: usize, coreness_threshold: usize) -> Result<Self> {
        if budget == 0 {
            return Err(Error::OutOfRange("budget 0".into()));
        }
        if coreness_threshold == 0 {
            return Err(Error::OutOfRange("coreness threshold 0".into()));
        }
        Ok(GateConfig {
            budget,
            coreness_threshold,
        })
    }
}

impl Default for GateConfig {
    fn default() -> Self {
        GateConfig {
            budget: Self::DEFAULT_BUDGET,
            coreness_threshold: Self::DEFAULT_THRESHOLD,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Computability {
    Computable { budget: usize },
    NotComputable { reason: String },
}

impl Computability {
    pub fn is_computable(&self) -> bool {
        matches!(self, Computability::Computable { .. })
    }
}

pub fn computability_gate(report: &CorenessReport, config: GateConfig) -> Computability {
    if report.k_max <= config.coreness_threshold {
        Computability::Computable {
            budget: config.budget,
        }
    } else {
        Computability::NotComputable {
            reason: format!(
                "maximum coreness {} exceeds the threshold {}",
                report.k_max, config.coreness_threshold
            ),
        }
    }
}
