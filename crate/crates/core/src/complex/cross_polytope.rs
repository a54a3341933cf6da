use super::{enumerate_cliques, CliqueComplex};
use crate::error::{Error, Result};
use crate::graph::Network;

/// Largest cavity order the generator accepts.
pub const MAX_CAVITY_ORDER: usize = 12;

/// 1-skeleton of the boundary of the `(k + 1)`-dimensional cross-polytope.
///
/// Built by suspension: start from two non-adjacent nodes and, `k` times, add
/// two new non-adjacent nodes joined to every existing node. Nodes are
/// labelled `1..=2(k + 1)`; `2i + 1` and `2i + 2` are antipodal.
pub fn cross_polytope_network(k: usize) -> Result<Network> {
    if !(1..=MAX_CAVITY_ORDER).contains(&k) {
        return Err(Error::OutOfRange(format!(
            "cavity order {k} (allowed 1..={MAX_CAVITY_ORDER})"
        )));
    }
    let mut edges = Vec::new();
    let mut nodes = 2;
    for _ in 0..k {
        for new in [nodes, nodes + 1] {
            edges.extend((0..nodes).map(|old| (old, new)));
        }
        nodes += 2;
    }
    Ok(Network::from_index_edges(nodes, &edges))
}

/// The smallest `k`-cavity as a clique complex. Face counts are measured by
/// enumerating the generated graph, not filled in from a formula.
pub fn smallest_cavity_complex(k: usize) -> Result<(Network, CliqueComplex)> {
    let net = cross_polytope_network(k)?;
    let cx = enumerate_cliques(&net, usize::MAX, None)?;
    Ok((net, cx))
}

/// Closed-form face count `2^(j+1) * C(k+1, j+1)` of the `k`-cavity.
pub fn cross_polytope_face_count(k: usize, j: usize) -> u64 {
    if j > k {
        return 0;
    }
    let n = (k + 1) as u64;
    let r = (j + 1) as u64;
    let mut binom: u64 = 1;
    for i in 0..r {
        binom = binom * (n - i) / (i + 1);
    }
    binom << (j + 1)
}
