mod common;

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use common::{column_masks, gnp, naive_rank, rng};
use netcavity_core::solver::Search;
use netcavity_core::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn complete(n: usize) -> Network {
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Network::from_index_edges(n, &edges)
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sample_complexes() -> Vec<CliqueComplex> {
    let mut out: Vec<CliqueComplex> = (0..20)
        .map(|s| enumerate_cliques(&gnp(18, 0.35, s), 1 << 20, None).unwrap())
        .collect();
    out.push(enumerate_cliques(&fixtures::sample_network(), 1000, None).unwrap());
    for k in 1..=4 {
        out.push(smallest_cavity_complex(k).unwrap().1);
    }
    out
}

#[test]
fn boundary_of_boundary_vanishes() {
    for cx in sample_complexes() {
        let top = cx.top_order().unwrap();
        for k in 1..top {
            let bk = build_boundary_matrix(&cx, k).unwrap();
            let bk1 = build_boundary_matrix(&cx, k + 1).unwrap();
            let prod = bk.mul(&bk1).unwrap();
            assert!((0..prod.rows()).all(|i| prod.row(i).is_zero()));
        }
        for k in 1..=top {
            let bk = build_boundary_matrix(&cx, k).unwrap();
            assert!(bk.column_weights().iter().all(|&w| w == k + 1));
        }
    }
}

#[test]
fn euler_poincare_and_rank_bounds() {
    for cx in sample_complexes() {
        let p = homology_profile(&cx).unwrap();
        assert!(p.euler_poincare_ok);
        assert_eq!(euler_characteristic(&cx).unwrap().0, p.chi);
        for k in 1..p.m.len() {
            assert!(p.r[k] <= p.m[k - 1].min(p.m[k]));
        }
    }
}

fn components_by_union_find(net: &Network) -> usize {
    let n = net.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (u, v) in net.edges() {
        let (a, b) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        parent[a] = b;
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

#[test]
fn beta_zero_counts_components() {
    for seed in 0..20 {
        let net = gnp(25, 0.08, 100 + seed);
        let cx = enumerate_cliques(&net, 1 << 20, None).unwrap();
        let p = homology_profile(&cx).unwrap();
        assert_eq!(p.beta[0], components_by_union_find(&net), "seed {seed}");
    }
}

#[test]
fn maximal_clique_expansion_matches_enumeration() {
    for seed in 0..20 {
        let net = gnp(30, 0.3, 200 + seed);
        let cx = enumerate_cliques(&net, 1 << 20, None).unwrap();
        let mut expanded: Vec<BTreeSet<Vec<NodeId>>> = vec![BTreeSet::new(); cx.levels().len()];
        for clique in maximal_cliques(&net) {
            let s = clique.len();
            for subset in 1u32..1 << s {
                let sub: Vec<NodeId> = (0..s)
                    .filter(|&i| subset >> i & 1 == 1)
                    .map(|i| clique[i])
                    .collect();
                expanded[sub.len() - 1].insert(sub);
            }
        }
        for (k, level) in cx.levels().iter().enumerate() {
            let got: BTreeSet<Vec<NodeId>> = level.iter().map(<[NodeId]>::to_vec).collect();
            assert_eq!(got, expanded[k], "seed {seed} order {k}");
        }
        assert_eq!(max_clique_order(&net), cx.top_order());
    }
}

#[test]
fn complete_graph_counts() {
    for n in 1..=9 {
        let cx = enumerate_cliques(&complete(n), 1 << 20, None).unwrap();
        let want: Vec<usize> = (0..n)
            .map(|j| binom(n as u64, j as u64 + 1) as usize)
            .collect();
        assert_eq!(cx.counts(), want);
    }
}

#[test]
fn rank_matches_naive_elimination() {
    let mut r = rng(42);
    for _ in 0..200 {
        let rows = r.random_range(1..=64);
        let cols = r.random_range(1..=64);
        let density = r.random_range(0.05..0.6);
        let data: Vec<Vec<u8>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| u8::from(r.random_bool(density)))
                    .collect()
            })
            .collect();
        let m = Gf2Matrix::from_rows(&data).unwrap();
        let result = m.rank();
        assert_eq!(result.rank, naive_rank(&column_masks(&m), &mut r));
        assert_eq!(result.pivot_cols.len(), result.rank);
        assert!(result.pivot_cols.windows(2).all(|w| w[0] < w[1]));
        let pivots = m.select_columns(&result.pivot_cols).unwrap();
        assert_eq!(pivots.rank().rank, result.rank);

        // invariance under row and column shuffles
        let mut row_order: Vec<usize> = (0..rows).collect();
        let mut col_order: Vec<usize> = (0..cols).collect();
        row_order.shuffle(&mut r);
        col_order.shuffle(&mut r);
        let shuffled: Vec<Vec<u8>> = row_order
            .iter()
            .map(|&i| col_order.iter().map(|&j| data[i][j]).collect())
            .collect();
        assert_eq!(
            Gf2Matrix::from_rows(&shuffled).unwrap().rank().rank,
            result.rank
        );
    }
}

fn naive_coreness(net: &Network) -> Vec<usize> {
    let n = net.node_count();
    let mut alive = vec![true; n];
    let mut core = vec![0; n];
    let mut k = 0;
    while alive.iter().any(|&a| a) {
        loop {
            let degree = |v: usize, alive: &[bool]| {
                net.neighbors(v as NodeId)
                    .iter()
                    .filter(|&&u| alive[u as usize])
                    .count()
            };
            let drop: Vec<usize> = (0..n)
                .filter(|&v| alive[v] && degree(v, &alive) < k + 1)
                .collect();
            if drop.is_empty() {
                break;
            }
            for v in drop {
                alive[v] = false;
                core[v] = k;
            }
        }
        k += 1;
    }
    core
}

#[test]
fn coreness_is_order_independent() {
    for seed in 0..5 {
        let net = gnp(40, 0.15, 300 + seed);
        let base = k_core_decomposition(&net).coreness;
        assert_eq!(base, naive_coreness(&net));
        let mut r = rng(seed);
        for _ in 0..10 {
            // relabel with a random permutation so the peeling visits nodes in another order
            let mut perm: Vec<usize> = (0..net.node_count()).collect();
            perm.shuffle(&mut r);
            let edges: Vec<(usize, usize)> = net
                .edges()
                .map(|(u, v)| (perm[u as usize], perm[v as usize]))
                .collect();
            let relabeled = Network::from_index_edges(net.node_count(), &edges);
            let c = k_core_decomposition(&relabeled).coreness;
            for v in 0..net.node_count() {
                assert_eq!(c[perm[v]], base[v]);
            }
        }
    }
}

#[test]
fn removing_an_edge_never_raises_coreness() {
    let net = gnp(30, 0.2, 400);
    let base = k_core_decomposition(&net).coreness;
    for (u, v) in net.edges() {
        let smaller = k_core_decomposition(&net.without_edge(u, v)).coreness;
        assert!(smaller.iter().zip(&base).all(|(a, b)| a <= b));
    }
}

#[test]
fn core_report_invariants() {
    for seed in 0..10 {
        let net = gnp(35, 0.2, 500 + seed);
        let report = k_core_decomposition(&net);
        assert!((0..net.node_count()).all(|v| report.coreness[v] <= net.degree(v as NodeId)));
        assert_eq!(report.k_max, report.coreness.iter().copied().max().unwrap());
        let inside: BTreeSet<NodeId> = report.core.iter().copied().collect();
        assert!(!inside.is_empty());
        for &v in &report.core {
            let d = net
                .neighbors(v)
                .iter()
                .filter(|u| inside.contains(u))
                .count();
            assert!(d >= report.k_max);
        }
    }
}

proptest! {
    #[test]
    fn edge_list_round_trip(edges in prop::collection::vec((0i64..40, 0i64..40), 0..80)) {
        let net = Network::from_labeled_edges(edges.iter().copied().filter(|(u, v)| u != v));
        let text = net.to_edge_list_text();
        let back = load_edge_list(text.as_bytes(), LoadOptions::default()).unwrap();
        // isolated nodes are not representable in an edge list
        let connected = Network::from_labeled_edges(edges.iter().copied().filter(|(u, v)| u != v));
        prop_assert_eq!(back.to_edge_list_text(), text);
        prop_assert_eq!(back.edge_count(), connected.edge_count());
    }
}

#[test]
fn enumeration_is_deterministic() {
    let net = gnp(40, 0.3, 600);
    let a = ComplexCache::new(&enumerate_cliques(&net, 1 << 20, None).unwrap(), "x")
        .to_json()
        .unwrap();
    let b = ComplexCache::new(&enumerate_cliques(&net, 1 << 20, None).unwrap(), "x")
        .to_json()
        .unwrap();
    assert_eq!(a, b);
}

#[test]
fn cross_polytope_census() {
    for k in 1..=8 {
        let (net, cx) = smallest_cavity_complex(k).unwrap();
        assert_eq!(net.node_count(), 2 * (k + 1));
        let want: Vec<usize> = (0..=k)
            .map(|j| (binom(k as u64 + 1, j as u64 + 1) << (j + 1)) as usize)
            .collect();
        assert_eq!(cx.counts(), want, "k = {k}");
        let want_formula: Vec<usize> = (0..=k)
            .map(|j| cross_polytope_face_count(k, j) as usize)
            .collect();
        assert_eq!(cx.counts(), want_formula);
        assert_eq!(
            euler_characteristic(&cx).unwrap().0,
            1 + if k % 2 == 0 { 1 } else { -1 }
        );
    }
}

#[test]
fn cross_polytope_has_one_full_cavity() {
    for k in 1..=4 {
        let (_, cx) = smallest_cavity_complex(k).unwrap();
        let p = homology_profile(&cx).unwrap();
        let mut beta = vec![0; k + 1];
        beta[0] = 1;
        beta[k] = 1;
        assert_eq!(p.beta, beta);
        let certs = cavities_of_order(&cx, k, CavityConfig::default()).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].length, 1 << (k + 1));
        assert_eq!(certs[0].indicator.count_ones(), cx.level(k).unwrap().len());
    }
}

#[test]
fn certificate_count_equals_betti_numbers() {
    for seed in 0..12 {
        let net = gnp(13, 0.45, 700 + seed);
        let cx = enumerate_cliques(&net, 1 << 20, None).unwrap();
        let p = homology_profile(&cx).unwrap();
        for k in 1..p.m.len() {
            let bk = build_boundary_matrix(&cx, k).unwrap();
            let bk1 = build_boundary_matrix(&cx, k + 1).unwrap();
            let sel = select_spanning_and_generators(k, &bk, &bk1).unwrap();
            assert_eq!(sel.generators.len(), p.beta[k]);
            let config = CavityConfig {
                schedule: LengthSchedule::Exhaustive,
                ..Default::default()
            };
            let certs = find_cavities(&bk, &bk1, &sel, config).unwrap();
            assert_eq!(certs.len(), p.beta[k], "seed {seed} order {k}");
            for (l, c) in certs.iter().enumerate() {
                assert!(verify_certificate(c, &bk, &bk1, &certs[..l])
                    .unwrap()
                    .is_ok());
                assert!(c.length >= 1 << (k + 1));
            }
            // another processing order reaches the same adjoined rank
            let mut reversed = sel.clone();
            reversed.generators.reverse();
            let other = find_cavities(&bk, &bk1, &reversed, config).unwrap();
            let extra: Vec<BitVector> = other.iter().map(|c| c.indicator.clone()).collect();
            assert_eq!(
                bk1.rank_with_augmentation(&extra).unwrap(),
                p.r.get(k + 1).copied().unwrap_or(0) + certs.len()
            );
            for pair in certs.windows(2) {
                let mut sum = pair[0].indicator.clone();
                sum.xor_assign(&pair[1].indicator);
                assert!(bk.mul_vector(&sum).unwrap().is_zero());
            }
        }
    }
}

fn random_program(r: &mut impl Rng, n: usize) -> ZeroOneProgram {
    let mut p = ZeroOneProgram::new(n);
    for _ in 0..r.random_range(0..=n) {
        let row: Vec<usize> = (0..n).filter(|_| r.random_bool(0.3)).collect();
        if !row.is_empty() {
            p = if r.random_bool(0.2) {
                p.odd_parity_row(row)
            } else {
                p.parity_row(row)
            };
        }
    }
    if r.random_bool(0.7) {
        p = p.pin(r.random_range(0..n), r.random_bool(0.7));
    }
    if r.random_bool(0.6) {
        let over = r.random_range(0..=n);
        p = p.cardinality_over(r.random_range(0..=over), over);
    }
    if r.random_bool(0.3) {
        let cut: Vec<usize> = (0..n).filter(|_| r.random_bool(0.3)).collect();
        if !cut.is_empty() {
            p = p.exclude(cut);
        }
    }
    if r.random_bool(0.3) {
        let mut terms = Vec::new();
        for v in 0..n {
            if r.random_bool(0.4) {
                terms.push((v, r.random_range(-3i64..=3)));
            }
        }
        let rhs = r.random_range(-3..=3);
        p = p.linear_row(terms, rhs);
    }
    p.irreducible(r.random_bool(0.3))
}

fn brute_force(p: &ZeroOneProgram) -> Vec<BitVector> {
    let n = p.num_vars();
    (0u32..1 << n)
        .map(|m| BitVector::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1)))
        .filter(|x| p.is_satisfied_by(x))
        .collect()
}

/// No nonempty subset of the unpinned ones meets every even row evenly.
fn independent_by_subsets(p: &ZeroOneProgram, x: &BitVector) -> bool {
    let free: Vec<usize> = x
        .ones()
        .filter(|v| !p.fixed().contains(&(*v, true)))
        .collect();
    let even: Vec<&Vec<usize>> = p
        .parity_rows()
        .iter()
        .zip(p.parity_rhs())
        .filter(|(_, &odd)| !odd)
        .map(|(r, _)| r)
        .collect();
    (1u32..1 << free.len()).all(|s| {
        let chosen = |v: &usize| {
            free.iter()
                .position(|f| f == v)
                .is_some_and(|i| s >> i & 1 == 1)
        };
        even.iter()
            .any(|row| row.iter().filter(|v| chosen(v)).count() % 2 == 1)
    })
}

fn lex_key(x: &BitVector) -> Vec<bool> {
    (0..x.len()).map(|i| x.get(i)).collect()
}

#[test]
fn solver_matches_exhaustive_search() {
    let mut r = rng(2024);
    for case in 0..400 {
        let n = r.random_range(1..=12);
        let p = random_program(&mut r, n);
        let mut all = brute_force(&p);
        all.sort_by_key(lex_key);
        if p.requires_irreducible() {
            let mut oracle = brute_force(&p.clone().irreducible(false));
            oracle.retain(|x| independent_by_subsets(&p, x));
            oracle.sort_by_key(lex_key);
            assert_eq!(oracle, all, "case {case}");
        }
        let got = solve(&p, SolverConfig::default()).unwrap();
        assert_eq!(got.solution(), all.first(), "case {case}: {p:?}");
        let listed = enumerate(&p, 1 << 12, SolverConfig::default()).unwrap();
        assert_eq!(listed, all, "case {case}: {p:?}");
        let mut streamed = Vec::new();
        Search::new(&p, SolverConfig::default())
            .unwrap()
            .run(|x| {
                streamed.push(x.clone());
                ControlFlow::Continue(())
            })
            .unwrap();
        streamed.sort_by_key(lex_key);
        assert_eq!(streamed, all, "case {case}: {p:?}");
    }
}

#[test]
fn solver_matches_exhaustive_search_at_twenty_variables() {
    let mut r = rng(99);
    for case in 0..10 {
        let p = random_program(&mut r, 20);
        let all = brute_force(&p);
        let got = solve(&p, SolverConfig::default()).unwrap();
        let mut sorted = all.clone();
        sorted.sort_by_key(lex_key);
        assert_eq!(got.solution(), sorted.first(), "case {case}");
        let listed = enumerate(&p, 64, SolverConfig::default()).unwrap();
        assert_eq!(listed[..], sorted[..listed.len()], "case {case}");
    }
}

#[test]
fn cycle_space_of_four_free_variables() {
    // one cycle space over edges of a 4-cycle with a chord: dimension 2
    let p = ZeroOneProgram::new(5)
        .parity_row([0, 3, 4])
        .parity_row([0, 1])
        .parity_row([1, 2, 4])
        .parity_row([2, 3]);
    let nonzero: Vec<BitVector> = enumerate(&p, 100, SolverConfig::default())
        .unwrap()
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
    assert_eq!(nonzero.len(), (1 << 2) - 1);
}
