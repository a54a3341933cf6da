use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Network;
use crate::error::{Error, Result};

/// Uniform `G(n, m)`: `m` distinct edges drawn without replacement from all
/// `n(n-1)/2` pairs, deterministic per seed. Nodes are labelled `1..=n`.
pub fn random_gnm(n: usize, m: usize, seed: u64) -> Result<Network> {
    let pairs = n
        .checked_mul(n.saturating_sub(1))
        .map(|p| p / 2)
        .ok_or_else(|| Error::OutOfRange(format!("n = {n}")))?;
    if m > pairs {
        return Err(Error::OutOfRange(format!(
            "{m} edges on {n} nodes (at most {pairs})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, pairs, m).into_vec();
    picked.sort_unstable();
    let mut edges = Vec::with_capacity(m);
    // row u holds pairs (u, u+1..n) and starts at offset `start`
    let (mut u, mut start) = (0, 0);
    for p in picked {
        while p >= start + (n - 1 - u) {
            start += n - 1 - u;
            u += 1;
        }
        edges.push((u, u + 1 + (p - start)));
    }
    Ok(Network::from_index_edges(n, &edges))
}
