//! Boundary matrices, their GF(2) ranks and the resulting Betti numbers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{alternating_sum, CliqueComplex};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, Gf2Matrix};

/// `B_k`: rows are the `(k-1)`-cliques, columns the `k`-cliques, both in level
/// order; entry `(i, j)` is set iff clique `i` is a face of clique `j`.
pub fn build_boundary_matrix(cx: &CliqueComplex, k: usize) -> Result<Gf2Matrix> {
    if k == 0 {
        return Err(Error::OutOfRange("boundary order 0".into()));
    }
    if let Some(t) = cx.truncated_at() {
        if t < k {
            return Err(Error::Truncated {
                order: t,
                what: "this boundary matrix",
            });
        }
    }
    let faces = cx.level(k - 1).ok_or(Error::MissingLevel(k - 1))?;
    // an empty level k past the top order is a valid zero-column matrix
    let cols = match cx.level(k) {
        Some(level) => level.len(),
        None if cx.truncated_at().is_none() => 0,
        None => return Err(Error::MissingLevel(k)),
    };
    let mut m = Gf2Matrix::zeros(faces.len(), cols)?;
    if let Some(level) = cx.level(k) {
        let mut face = Vec::with_capacity(k);
        for (j, clique) in level.iter().enumerate() {
            for skip in 0..clique.len() {
                face.clear();
                face.extend(
                    clique
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v),
                );
                let i = faces
                    .index_of(&face)
                    .expect("clique complexes are closed under faces");
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// Boundary of one `k`-clique as a vector over the `(k-1)`-cliques.
pub fn clique_boundary(cx: &CliqueComplex, k: usize, clique: usize) -> Result<BitVector> {
    let level = cx.level(k).ok_or(Error::MissingLevel(k))?;
    let faces = cx.level(k - 1).ok_or(Error::MissingLevel(k - 1))?;
    let c = level.get(clique);
    let mut v = BitVector::zeros(faces.len());
    let mut face = Vec::with_capacity(k);
    for skip in 0..c.len() {
        face.clear();
        face.extend(
            c.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v),
        );
        v.set(faces.index_of(&face).expect("closed under faces"), true);
    }
    Ok(v)
}

/// Clique counts, boundary ranks and Betti numbers of a complete complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub m: Vec<usize>,
    /// `r[k]` is the rank of `B_k`; `r[0] = 0`.
    pub r: Vec<usize>,
    pub beta: Vec<usize>,
    pub chi: i64,
    pub euler_poincare_ok: bool,
}

impl HomologyProfile {
    /// Assembles a profile from counts and ranks (`ranks[k] = rank B_k`, with
    /// `ranks[0]` ignored and treated as zero).
    pub fn from_counts_and_ranks(m: Vec<usize>, ranks: Vec<usize>) -> Self {
        assert_eq!(m.len(), ranks.len());
        let mut r = ranks;
        if let Some(r0) = r.first_mut() {
            *r0 = 0;
        }
        let beta: Vec<usize> = (0..m.len())
            .map(|k| {
                let next = r.get(k + 1).copied().unwrap_or(0);
                m[k].checked_sub(r[k] + next)
                    .expect("ranks never exceed clique counts")
            })
            .collect();
        let chi = alternating_sum(&m);
        let euler_poincare_ok = alternating_sum(&beta) == chi;
        HomologyProfile {
            m,
            r,
            beta,
            chi,
            euler_poincare_ok,
        }
    }

    /// Table with rows `m_k`, `r_k`, `beta_k`, as comma-separated values.
    pub fn to_csv(&self) -> String {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        let orders: Vec<usize> = (0..self.m.len()).collect();
        format!(
            "order,{}\nm_k,{}\nr_k,{}\nbeta_k,{}\nchi,{}\n",
            join(&orders),
            join(&self.m),
            join(&self.r),
            join(&self.beta),
            self.chi
        )
    }
}

/// Ranks of every boundary matrix and the Betti numbers they determine.
pub fn homology_profile(cx: &CliqueComplex) -> Result<HomologyProfile> {
    cx.require_complete("the homology profile")?;
    let m = cx.counts();
    let ranks: Vec<usize> = (0..m.len())
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                Ok(0)
            } else {
                build_boundary_matrix(cx, k).map(|b| b.rank().rank)
            }
        })
        .collect::<Result<_>>()?;
    Ok(HomologyProfile::from_counts_and_ranks(m, ranks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::enumerate_cliques;
    use crate::graph::Network;

    #[test]
    fn triangle_boundary_is_all_ones() {
        let net = Network::from_index_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let cx = enumerate_cliques(&net, 100, None).unwrap();
        let b2 = build_boundary_matrix(&cx, 2).unwrap();
        assert_eq!((b2.rows(), b2.cols()), (3, 1));
        assert!((0..3).all(|i| b2.get(i, 0)));
        assert_eq!(clique_boundary(&cx, 2, 0).unwrap().count_ones(), 3);
    }

    #[test]
    fn two_disjoint_triangles() {
        let net = Network::from_index_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let cx = enumerate_cliques(&net, 100, None).unwrap();
        let p = homology_profile(&cx).unwrap();
        assert_eq!(p.beta, vec![2, 0, 0]);
        assert_eq!(p.chi, 2);
        assert!(p.euler_poincare_ok);
    }

    #[test]
    fn missing_level_is_named() {
        let net = Network::from_index_edges(2, &[(0, 1)]);
        let cx = enumerate_cliques(&net, 100, None).unwrap();
        assert!(build_boundary_matrix(&cx, 2).unwrap().cols() == 0);
        assert!(matches!(
            build_boundary_matrix(&cx, 3),
            Err(Error::MissingLevel(2))
        ));
    }

    #[test]
    fn truncated_complex_is_refused() {
        let edges: Vec<_> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .collect();
        let net = Network::from_index_edges(5, &edges);
        let cx = enumerate_cliques(&net, 100, Some(1)).unwrap();
        assert!(matches!(
            homology_profile(&cx),
            Err(Error::Truncated { .. })
        ));
        assert!(build_boundary_matrix(&cx, 1).is_ok());
    }

    #[test]
    fn csv_layout() {
        let p = HomologyProfile::from_counts_and_ranks(vec![14, 26, 13, 1], vec![0, 13, 11, 1]);
        assert_eq!(p.beta, vec![1, 2, 1, 0]);
        assert_eq!(
            p.to_csv(),
            "order,0,1,2,3\nm_k,14,26,13,1\nr_k,0,13,11,1\nbeta_k,1,2,1,0\nchi,0\n"
        );
    }
}
