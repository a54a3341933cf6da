use crate::graph::{Network, NodeId};

/// All maximal cliques, each sorted, in lexicographic order.
///
/// Bron-Kerbosch with Tomita pivoting. This is deliberately a different
/// route from [`super::enumerate_cliques`] so the two can check each other.
pub fn maximal_cliques(net: &Network) -> Vec<Vec<NodeId>> {
    let mut out = Vec::new();
    if net.node_count() == 0 {
        return out;
    }
    let candidates: Vec<NodeId> = (0..net.node_count() as NodeId).collect();
    let mut current = Vec::new();
    expand(net, &mut current, candidates, Vec::new(), &mut out);
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort_unstable();
    out
}

fn expand(
    net: &Network,
    current: &mut Vec<NodeId>,
    mut candidates: Vec<NodeId>,
    mut excluded: Vec<NodeId>,
    out: &mut Vec<Vec<NodeId>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(excluded.iter())
        .copied()
        .max_by_key(|&u| intersection_size(&candidates, net.neighbors(u)))
        .expect("candidates non-empty");
    let branch: Vec<NodeId> = candidates
        .iter()
        .copied()
        .filter(|v| net.neighbors(pivot).binary_search(v).is_err())
        .collect();
    for v in branch {
        let nv = net.neighbors(v);
        current.push(v);
        expand(
            net,
            current,
            intersect(&candidates, nv),
            intersect(&excluded, nv),
            out,
        );
        current.pop();
        let pos = candidates.binary_search(&v).expect("v is a candidate");
        candidates.remove(pos);
        let ins = excluded.binary_search(&v).unwrap_err();
        excluded.insert(ins, v);
    }
}

fn intersect(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn intersection_size(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Order (size minus one) of a maximum clique; `None` for an empty network.
pub fn max_clique_order(net: &Network) -> Option<usize> {
    maximal_cliques(net)
        .iter()
        .map(Vec::len)
        .max()
        .map(|s| s - 1)
}
