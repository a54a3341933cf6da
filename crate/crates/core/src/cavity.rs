//! Cavity-generating cliques and shortest independent cycles through them.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::CliqueComplex;
use crate::error::{Error, Result};
use crate::gf2::{BitVector, ColumnSpace, Gf2Matrix};
use crate::graph::NodeId;
use crate::homology::build_boundary_matrix;
use crate::solver::{integer_cycle_program, solve, Search, SolverConfig, ZeroOneProgram};

/// A spanning set of `k`-cliques for `B_k`, the boundaries accounting for
/// the remaining cliques, and the generators left over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanningSelection {
    pub order: usize,
    /// Independent columns of `B_k`, size `r_k`.
    pub tree_cols: Vec<usize>,
    /// Independent columns of `B_{k+1}`, size `r_{k+1}`.
    pub boundary_cols: Vec<usize>,
    /// One non-tree `k`-clique per chosen boundary, in `boundary_cols` order.
    pub covered: Vec<usize>,
    /// Non-tree cliques not covered by any boundary, ascending, size `beta_k`.
    pub generators: Vec<usize>,
}

/// Selection using the pivot columns of `B_k` as the tree.
pub fn select_spanning_and_generators(
    order: usize,
    bk: &Gf2Matrix,
    bk1: &Gf2Matrix,
) -> Result<SpanningSelection> {
    let tree = bk.rank().pivot_cols;
    select_with_tree(order, bk, bk1, &tree)
}

/// Selection around a caller-supplied tree, which must be a maximal
/// independent set of columns of `B_k`.
///
/// Each pivot column of `B_{k+1}` is restricted to the non-tree cliques and
/// reduced against the ones before it; the leading clique that survives is
/// the one it covers. A boundary is a cycle, so its restriction can only
/// vanish if it was a sum of tree columns, which are independent: the
/// covered cliques are therefore distinct and exactly `r_{k+1}` of them.
pub fn select_with_tree(
    order: usize,
    bk: &Gf2Matrix,
    bk1: &Gf2Matrix,
    tree: &[usize],
) -> Result<SpanningSelection> {
    let m = bk.cols();
    if bk1.rows() != m {
        return Err(Error::Dimension {
            expected: m,
            actual: bk1.rows(),
        });
    }
    let mut is_tree = vec![false; m];
    let mut span = ColumnSpace::new(bk.rows());
    for &j in tree {
        if j >= m || is_tree[j] {
            return Err(Error::OutOfRange(format!("tree column {j}")));
        }
        is_tree[j] = true;
        if span.insert(&bk.column(j)).is_none() {
            return Err(Error::OutOfRange(format!(
                "tree column {j} depends on earlier ones"
            )));
        }
    }
    let rk = bk.rank().rank;
    if tree.len() != rk {
        return Err(Error::OutOfRange(format!(
            "tree has {} columns but the rank is {rk}",
            tree.len()
        )));
    }
    let boundary_cols = bk1.rank().pivot_cols;
    let (_, covered) = reduce_boundaries(bk1, &is_tree, &boundary_cols);
    let mut is_covered = vec![false; m];
    for &p in &covered {
        is_covered[p] = true;
    }
    let generators = (0..m).filter(|&i| !is_tree[i] && !is_covered[i]).collect();
    let mut tree_cols = tree.to_vec();
    tree_cols.sort_unstable();
    Ok(SpanningSelection {
        order,
        tree_cols,
        boundary_cols,
        covered,
        generators,
    })
}

fn reduce_boundaries(
    bk1: &Gf2Matrix,
    is_tree: &[bool],
    boundary_cols: &[usize],
) -> (ColumnSpace, Vec<usize>) {
    let mut reduced = ColumnSpace::new(bk1.rows());
    let mut covered = Vec::with_capacity(boundary_cols.len());
    for &j in boundary_cols {
        let mut col = bk1.column(j);
        for (i, &t) in is_tree.iter().enumerate() {
            if t {
                col.set(i, false);
            }
        }
        covered.push(
            reduced
                .insert(&col)
                .expect("boundaries are independent off the tree"),
        );
    }
    (reduced, covered)
}

/// Coordinates of a cycle's homology class in the generator basis.
///
/// A cycle is determined by its non-tree part, and reducing that part
/// against the reduced boundaries leaves ones only on generators. The map is
/// linear: generator `g` contributes its own coordinate, a covered clique the
/// generator part of the boundary vector owning it, a tree clique nothing.
struct ClassMap {
    /// Generator position of each `k`-clique.
    position: Vec<Option<usize>>,
    /// Covered cliques with the generator positions their boundary touches.
    covered: Vec<(usize, Vec<usize>)>,
    beta: usize,
}

impl ClassMap {
    fn new(bk1: &Gf2Matrix, sel: &SpanningSelection) -> Self {
        let m = bk1.rows();
        let mut is_tree = vec![false; m];
        for &t in &sel.tree_cols {
            is_tree[t] = true;
        }
        let (reduced, covered) = reduce_boundaries(bk1, &is_tree, &sel.boundary_cols);
        let mut position = vec![None; m];
        for (i, &g) in sel.generators.iter().enumerate() {
            position[g] = Some(i);
        }
        let covered = covered
            .into_iter()
            .map(|p| {
                let b = reduced
                    .basis_vector(p)
                    .expect("covered clique owns a basis vector");
                (p, b.ones().filter_map(|i| position[i]).collect())
            })
            .collect();
        ClassMap {
            position,
            covered,
            beta: sel.generators.len(),
        }
    }

    fn class_of(&self, x: &BitVector) -> BitVector {
        let mut c = BitVector::from_indices(self.beta, x.ones().filter_map(|i| self.position[i]));
        for (p, gens) in &self.covered {
            if x.get(*p) {
                for &g in gens {
                    c.flip(g);
                }
            }
        }
        c
    }

    /// The cliques on which the functional `h` over classes is odd.
    fn support_of(&self, h: &BitVector) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.position.len())
            .filter(|&i| self.position[i].is_some_and(|g| h.get(g)))
            .collect();
        out.extend(
            self.covered
                .iter()
                .filter(|(_, gens)| gens.iter().filter(|&&g| h.get(g)).count() % 2 == 1)
                .map(|(p, _)| *p),
        );
        out.sort_unstable();
        out
    }
}

/// A basis of the functionals vanishing on `span`, those touching `first`
/// ordered first.
fn annihilator(span: &ColumnSpace, first: usize) -> Vec<BitVector> {
    let dim = span.dim();
    let pivots = span.pivots();
    let mut is_pivot = vec![false; dim];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out: Vec<BitVector> = (0..dim)
        .filter(|&q| !is_pivot[q])
        .map(|q| {
            let mut h = BitVector::zeros(dim);
            h.set(q, true);
            for &p in &pivots {
                if span.basis_vector(p).expect("pivot owns a vector").get(q) {
                    h.set(p, true);
                }
            }
            h
        })
        .collect();
    out.sort_by_key(|h| !h.get(first));
    out
}

/// Which cycles the cavity search visits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CycleMode {
    /// Any cycle with the required number of cliques.
    All,
    /// Only cycles with no droppable sub-cycle: one avoiding the generator
    /// and even on the class functional being searched. Dropping one would
    /// leave a shorter valid cycle, so no shortest cycle is lost.
    #[default]
    Circuits,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Formulation {
    /// Parity rows propagated directly.
    #[default]
    Parity,
    /// `sum(x) - 2 y = 0` rows with integer slack.
    Integer,
}

/// Candidate lengths for order `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LengthSchedule {
    /// `2^(k+1)`, then steps of 1 for `k = 1` and `2^(k-1)` above.
    #[default]
    Standard,
    /// `2^(k+1)`, then every length.
    Exhaustive,
}

impl LengthSchedule {
    pub fn start(order: usize) -> usize {
        1 << (order + 1)
    }

    pub fn step(self, order: usize) -> usize {
        match self {
            LengthSchedule::Exhaustive => 1,
            LengthSchedule::Standard if order <= 1 => 1,
            LengthSchedule::Standard => 1 << (order - 1),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CavityConfig {
    pub schedule: LengthSchedule,
    /// Longest cycle tried; defaults to the number of `k`-cliques.
    pub ceiling: Option<usize>,
    pub mode: CycleMode,
    pub solver: SolverConfig,
}

/// Parity rows of `B_k`, skipping rows with no ones.
pub fn parity_rows(bk: &Gf2Matrix) -> Vec<Vec<usize>> {
    (0..bk.rows())
        .map(|i| bk.row(i).ones().collect::<Vec<_>>())
        .filter(|r| !r.is_empty())
        .collect()
}

fn cycle_program(
    rows: &[Vec<usize>],
    m: usize,
    v: usize,
    length: usize,
    mode: CycleMode,
) -> ZeroOneProgram {
    let mut p = ZeroOneProgram::new(m)
        .pin(v, true)
        .cardinality(length)
        .irreducible(mode == CycleMode::Circuits);
    for row in rows {
        p = p.parity_row(row.iter().copied());
    }
    p
}

/// The lexicographically smallest cycle through clique `v` with exactly
/// `length` cliques, or `None`.
pub fn find_cycle(
    bk: &Gf2Matrix,
    v: usize,
    length: usize,
    formulation: Formulation,
    config: SolverConfig,
) -> Result<Option<BitVector>> {
    let m = bk.cols();
    if v >= m {
        return Err(Error::OutOfRange(format!("clique {v} of {m}")));
    }
    let rows = parity_rows(bk);
    match formulation {
        Formulation::Parity => Ok(solve(
            &cycle_program(&rows, m, v, length, CycleMode::All),
            config,
        )?
        .solution()
        .cloned()),
        Formulation::Integer => {
            let p = integer_cycle_program(&rows, m, length, v);
            Ok(solve(&p, config)?
                .solution()
                .map(|x| BitVector::from_indices(m, x.ones().take_while(|&i| i < m))))
        }
    }
}

/// Every cycle through `v` with exactly `length` cliques, up to `limit`, in
/// lexicographic order.
pub fn enumerate_cycles(
    bk: &Gf2Matrix,
    v: usize,
    length: usize,
    limit: usize,
    config: SolverConfig,
) -> Result<Vec<BitVector>> {
    let rows = parity_rows(bk);
    crate::solver::enumerate(
        &cycle_program(&rows, bk.cols(), v, length, CycleMode::All),
        limit,
        config,
    )
}

/// A cycle of `k`-cliques certified as a cavity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CavityCertificate {
    pub order: usize,
    /// Indicator over the `k`-cliques.
    pub indicator: BitVector,
    /// Index of the generating clique.
    pub generator: usize,
    pub length: usize,
    /// `l + r_{k+1}` when the certificate was the `l`-th accepted.
    pub rank_evidence: Option<usize>,
}

impl CavityCertificate {
    pub fn new(order: usize, indicator: BitVector, generator: usize) -> Self {
        let length = indicator.count_ones();
        CavityCertificate {
            order,
            indicator,
            generator,
            length,
            rank_evidence: None,
        }
    }

    /// Certificate from explicit node tuples of order `k` in `cx`. Tuples
    /// may list their nodes in any order.
    pub fn from_cliques(
        cx: &CliqueComplex,
        order: usize,
        cliques: &[Vec<NodeId>],
        generator: &[NodeId],
    ) -> Result<Self> {
        let level = cx.level(order).ok_or(Error::MissingLevel(order))?;
        let find = |c: &[NodeId]| {
            let mut sorted = c.to_vec();
            sorted.sort_unstable();
            level
                .index_of(&sorted)
                .ok_or_else(|| Error::UnknownClique(format!("{c:?}")))
        };
        let indices = cliques
            .iter()
            .map(|c| find(c))
            .collect::<Result<Vec<_>>>()?;
        let mut indicator = BitVector::zeros(level.len());
        for i in indices {
            indicator.set(i, true);
        }
        Ok(Self::new(order, indicator, find(generator)?))
    }

    pub fn cliques<'a>(&'a self, cx: &'a CliqueComplex) -> impl Iterator<Item = &'a [NodeId]> + 'a {
        let level = cx.level(self.order).expect("certificate order is present");
        self.indicator.ones().map(move |i| level.get(i))
    }

    pub fn node_set(&self, cx: &CliqueComplex) -> Vec<NodeId> {
        let nodes: BTreeSet<NodeId> = self.cliques(cx).flatten().copied().collect();
        nodes.into_iter().collect()
    }
}

/// Searches, for each generator in ascending order, the shortest cycle
/// through it that is independent of the boundaries and of the cycles
/// already accepted.
///
/// A cycle is independent exactly when some functional on homology classes
/// that vanishes on the accepted classes is odd on it. Each length is
/// therefore searched once per functional in a basis of those, with the
/// functional as an extra odd parity row; the first functional in basis
/// order that admits a cycle decides the certificate.
pub fn find_cavities(
    bk: &Gf2Matrix,
    bk1: &Gf2Matrix,
    sel: &SpanningSelection,
    config: CavityConfig,
) -> Result<Vec<CavityCertificate>> {
    find_cavities_with_progress(bk, bk1, sel, config, |_, _| {})
}

/// As [`find_cavities`], calling `progress(generator, length)` before each
/// length is searched.
pub fn find_cavities_with_progress(
    bk: &Gf2Matrix,
    bk1: &Gf2Matrix,
    sel: &SpanningSelection,
    config: CavityConfig,
    mut progress: impl FnMut(usize, usize),
) -> Result<Vec<CavityCertificate>> {
    let k = sel.order;
    let m = bk.cols();
    if bk1.rows() != m {
        return Err(Error::Dimension {
            expected: m,
            actual: bk1.rows(),
        });
    }
    let rows = parity_rows(bk);
    let classes = ClassMap::new(bk1, sel);
    let mut accepted_classes = ColumnSpace::new(classes.beta);
    let base_rank = sel.boundary_cols.len();
    let ceiling = config.ceiling.unwrap_or(m);
    let mut found: Vec<CavityCertificate> = Vec::with_capacity(sel.generators.len());
    for (position, &v) in sel.generators.iter().enumerate() {
        let functionals: Vec<Vec<usize>> = annihilator(&accepted_classes, position)
            .iter()
            .map(|h| classes.support_of(h))
            .collect();
        let mut length = LengthSchedule::start(k);
        let x = loop {
            if length > ceiling {
                return Err(Error::SearchExhausted {
                    order: k,
                    found: found.len(),
                    expected: sel.generators.len(),
                    ceiling,
                });
            }
            progress(v, length);
            let hit = functionals
                .par_iter()
                .map(|h| {
                    let program = cycle_program(&rows, m, v, length, config.mode)
                        .odd_parity_row(h.iter().copied());
                    solve_first(&program, config.solver)
                })
                .find_map_first(|r: Result<Option<BitVector>>| r.transpose())
                .transpose()?;
            if let Some(x) = hit {
                break x;
            }
            length += config.schedule.step(k);
        };
        debug_assert!(bk.mul_vector(&x).is_ok_and(|b| b.is_zero()));
        let inserted = accepted_classes.insert(&classes.class_of(&x));
        debug_assert!(inserted.is_some(), "an odd functional separates the class");
        let mut cert = CavityCertificate::new(k, x, v);
        cert.rank_evidence = Some(base_rank + found.len() + 1);
        found.push(cert);
    }
    Ok(found)
}

fn solve_first(p: &ZeroOneProgram, config: SolverConfig) -> Result<Option<BitVector>> {
    let mut first = None;
    Search::new(p, config)?.run(|x| {
        first = Some(x.clone());
        ControlFlow::Break(())
    })?;
    Ok(first)
}

/// Selection and certificates for order `k` of a complete complex.
pub fn cavities_of_order(
    cx: &CliqueComplex,
    k: usize,
    config: CavityConfig,
) -> Result<Vec<CavityCertificate>> {
    if k == 0 {
        return Err(Error::OutOfRange("cavities of order 0".into()));
    }
    cx.require_complete("the cavity search")?;
    let bk = build_boundary_matrix(cx, k)?;
    let bk1 = build_boundary_matrix(cx, k + 1)?;
    let sel = select_spanning_and_generators(k, &bk, &bk1)?;
    find_cavities(&bk, &bk1, &sel, config)
}

/// The constraint a certificate fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// Indicator length or recorded length disagree with the matrices.
    Shape,
    /// The generating clique is not in the cycle.
    Generator,
    /// Some face appears an odd number of times.
    Cycle,
    /// Adjoining the certificate does not raise the rank.
    Independence,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constraint::Shape => "shape",
            Constraint::Generator => "generator clique present",
            Constraint::Cycle => "boundary vanishes",
            Constraint::Independence => "rank increases",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub failed: Option<Constraint>,
    /// Rank of `B_{k+1}` with the prior certificates and this one adjoined.
    pub rank: usize,
    pub expected_rank: usize,
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        self.failed.is_none()
    }
}

/// Re-checks a certificate against the matrices, independently of how it was
/// produced. The prior certificates are adjoined first.
pub fn verify_certificate(
    cert: &CavityCertificate,
    bk: &Gf2Matrix,
    bk1: &Gf2Matrix,
    prior: &[CavityCertificate],
) -> Result<Verification> {
    let m = bk.cols();
    if bk1.rows() != m {
        return Err(Error::Dimension {
            expected: m,
            actual: bk1.rows(),
        });
    }
    let base = bk1.rank().rank;
    let expected_rank = base + prior.len() + 1;
    let fail = |c| {
        Ok(Verification {
            failed: Some(c),
            rank: 0,
            expected_rank,
        })
    };
    let x = &cert.indicator;
    if x.len() != m
        || cert.length != x.count_ones()
        || cert.generator >= m
        || prior.iter().any(|p| p.indicator.len() != m)
    {
        return fail(Constraint::Shape);
    }
    if !x.get(cert.generator) {
        return fail(Constraint::Generator);
    }
    if !bk.mul_vector(x)?.is_zero() {
        return fail(Constraint::Cycle);
    }
    let mut extra: Vec<BitVector> = prior.iter().map(|p| p.indicator.clone()).collect();
    extra.push(x.clone());
    let rank = bk1.rank_with_augmentation(&extra)?;
    let failed = (rank != expected_rank).then_some(Constraint::Independence);
    Ok(Verification {
        failed,
        rank,
        expected_rank,
    })
}
