#![allow(dead_code)]

use netcavity_core::{BitVector, Gf2Matrix, Network};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mask(x: &BitVector) -> u128 {
    assert!(x.len() <= 128);
    x.ones().fold(0, |m, i| m | 1 << i)
}

pub fn from_mask(len: usize, m: u128) -> BitVector {
    BitVector::from_indices(len, (0..len).filter(|&i| m >> i & 1 == 1))
}

/// Columns of a matrix with at most 128 rows, as masks over the rows.
pub fn column_masks(m: &Gf2Matrix) -> Vec<u128> {
    assert!(m.rows() <= 128);
    (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .filter(|&i| m.get(i, j))
                .fold(0, |a, i| a | 1 << i)
        })
        .collect()
}

/// Rank by repeated XOR elimination, processing vectors in a shuffled order.
pub fn naive_rank(vs: &[u128], rng: &mut impl Rng) -> usize {
    let mut order: Vec<u128> = vs.to_vec();
    order.shuffle(rng);
    let mut basis: Vec<u128> = Vec::new();
    for mut v in order {
        for &b in &basis {
            let top = 127 - b.leading_zeros();
            if v >> top & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Basis of the kernel of the matrix whose columns are `cols`.
pub fn kernel(cols: &[u128]) -> Vec<u128> {
    let mut pivots: Vec<(u128, u128)> = Vec::new();
    let mut out = Vec::new();
    for (j, &c) in cols.iter().enumerate() {
        let (mut v, mut combo) = (c, 1u128 << j);
        for &(p, pc) in &pivots {
            if v & (p & p.wrapping_neg()) != 0 {
                v ^= p;
                combo ^= pc;
            }
        }
        if v == 0 {
            out.push(combo);
        } else {
            // keep pivots reduced on their lowest bit
            let low = v & v.wrapping_neg();
            for (p, pc) in pivots.iter_mut() {
                if *p & low != 0 {
                    *p ^= v;
                    *pc ^= combo;
                }
            }
            pivots.push((v, combo));
        }
    }
    out
}

/// Every element of the span of `basis`, zero included.
pub fn span(basis: &[u128]) -> Vec<u128> {
    assert!(basis.len() <= 20);
    (0u32..1 << basis.len())
        .map(|s| {
            (0..basis.len())
                .filter(|&i| s >> i & 1 == 1)
                .fold(0, |a, i| a ^ basis[i])
        })
        .collect()
}

/// Seeded G(n, p) with labels 1..=n.
pub fn gnp(n: usize, p: f64, seed: u64) -> Network {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Network::from_index_edges(n, &edges)
}
