//! Exact 0-1 feasibility search with parity, cardinality and linear
//! equality constraints.
//!
//! The search is a depth-first branch and bound with unit propagation. When
//! some parity row is odd under the current ones, the branch is taken over
//! the free variables of the most constrained odd row (one of them must be
//! set), which grows a cycle outward from the pinned variables instead of
//! scanning every variable. Otherwise the lowest free variable is branched
//! on, `0` before `1`.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::gf2::{BitVector, ColumnSpace};

/// `sum(coef * x) == rhs` over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRow {
    pub terms: Vec<(usize, i64)>,
    pub rhs: i64,
}

/// Exactly `ones` of the variables `0..over` are set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cardinality {
    pub ones: usize,
    pub over: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZeroOneProgram {
    num_vars: usize,
    fixed: Vec<(usize, bool)>,
    cardinality: Option<Cardinality>,
    parity_rows: Vec<Vec<usize>>,
    /// Required parity of each row, `true` for odd.
    parity_rhs: Vec<bool>,
    linear_rows: Vec<LinearRow>,
    exclusion_cuts: Vec<Vec<(usize, bool)>>,
    irreducible: bool,
}

impl ZeroOneProgram {
    pub fn new(num_vars: usize) -> Self {
        ZeroOneProgram {
            num_vars,
            ..Default::default()
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn pin(mut self, var: usize, value: bool) -> Self {
        self.fixed.push((var, value));
        self
    }

    /// Exactly `ones` variables set among all of them.
    pub fn cardinality(self, ones: usize) -> Self {
        let over = self.num_vars;
        self.cardinality_over(ones, over)
    }

    /// Exactly `ones` variables set among `0..over`.
    pub fn cardinality_over(mut self, ones: usize, over: usize) -> Self {
        self.cardinality = Some(Cardinality { ones, over });
        self
    }

    /// The listed variables must sum to zero mod 2. A variable listed twice
    /// cancels.
    pub fn parity_row(self, vars: impl IntoIterator<Item = usize>) -> Self {
        self.parity_row_with(vars, false)
    }

    /// The listed variables must sum to one mod 2.
    pub fn odd_parity_row(self, vars: impl IntoIterator<Item = usize>) -> Self {
        self.parity_row_with(vars, true)
    }

    fn parity_row_with(mut self, vars: impl IntoIterator<Item = usize>, odd: bool) -> Self {
        let mut row: Vec<usize> = vars.into_iter().collect();
        row.sort_unstable();
        let mut reduced: Vec<usize> = Vec::with_capacity(row.len());
        for v in row {
            if reduced.last() == Some(&v) {
                reduced.pop();
            } else {
                reduced.push(v);
            }
        }
        self.parity_rows.push(reduced);
        self.parity_rhs.push(odd);
        self
    }

    pub fn linear_row(mut self, terms: Vec<(usize, i64)>, rhs: i64) -> Self {
        self.linear_rows.push(LinearRow { terms, rhs });
        self
    }

    /// Forbids every assignment that sets all of `support`.
    pub fn exclude(mut self, support: impl IntoIterator<Item = usize>) -> Self {
        let mut s: Vec<usize> = support.into_iter().collect();
        s.sort_unstable();
        s.dedup();
        self.exclusion_cuts
            .push(s.into_iter().map(|v| (v, true)).collect());
        self
    }

    /// Forbids exactly the assignment `x`.
    pub fn exclude_assignment(mut self, x: &BitVector) -> Self {
        self.exclusion_cuts
            .push((0..x.len()).map(|v| (v, x.get(v))).collect());
        self
    }

    /// Only accept solutions whose ones outside the variables pinned to `1`
    /// have linearly independent columns over the even parity rows. For a
    /// single pin this restricts solutions to minimal cycles (circuits)
    /// through it, with odd rows as side conditions.
    pub fn irreducible(mut self, on: bool) -> Self {
        self.irreducible = on;
        self
    }

    pub fn requires_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn fixed(&self) -> &[(usize, bool)] {
        &self.fixed
    }

    pub fn parity_rows(&self) -> &[Vec<usize>] {
        &self.parity_rows
    }

    pub fn parity_rhs(&self) -> &[bool] {
        &self.parity_rhs
    }

    pub fn cardinality_constraint(&self) -> Option<Cardinality> {
        self.cardinality
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars;
        let check = |v: usize, what: &str| {
            if v < n {
                Ok(())
            } else {
                Err(Error::InvalidProgram(format!(
                    "{what} refers to variable {v} of {n}"
                )))
            }
        };
        for &(v, _) in &self.fixed {
            check(v, "pin")?;
        }
        for row in &self.parity_rows {
            if row.is_empty() {
                return Err(Error::InvalidProgram("empty parity row".into()));
            }
            for &v in row {
                check(v, "parity row")?;
            }
        }
        for row in &self.linear_rows {
            for &(v, _) in &row.terms {
                check(v, "linear row")?;
            }
        }
        for cut in &self.exclusion_cuts {
            if cut.is_empty() {
                return Err(Error::InvalidProgram("empty exclusion cut".into()));
            }
            for &(v, _) in cut {
                check(v, "exclusion cut")?;
            }
        }
        if let Some(c) = self.cardinality {
            if c.over > n {
                return Err(Error::InvalidProgram(format!(
                    "cardinality over {} of {n} variables",
                    c.over
                )));
            }
        }
        Ok(())
    }

    /// Whether `x` satisfies every constraint, checked directly.
    pub fn is_satisfied_by(&self, x: &BitVector) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        let pins = self.fixed.iter().all(|&(v, b)| x.get(v) == b);
        let card = self
            .cardinality
            .is_none_or(|c| (0..c.over).filter(|&i| x.get(i)).count() == c.ones);
        let parity = self
            .parity_rows
            .iter()
            .zip(&self.parity_rhs)
            .all(|(r, &odd)| (r.iter().filter(|&&v| x.get(v)).count() % 2 == 1) == odd);
        let linear = self.linear_rows.iter().all(|r| {
            r.terms
                .iter()
                .filter(|(v, _)| x.get(*v))
                .map(|(_, a)| a)
                .sum::<i64>()
                == r.rhs
        });
        let cuts = self
            .exclusion_cuts
            .iter()
            .all(|c| !c.iter().all(|&(v, b)| x.get(v) == b));
        pins && card && parity && linear && cuts && (!self.irreducible || self.is_irreducible(x))
    }

    fn is_irreducible(&self, x: &BitVector) -> bool {
        let pinned_one: Vec<usize> = self
            .fixed
            .iter()
            .filter(|(_, b)| *b)
            .map(|(v, _)| *v)
            .collect();
        let mut columns = vec![Vec::new(); self.num_vars];
        for (r, row) in self
            .parity_rows
            .iter()
            .enumerate()
            .filter(|&(r, _)| !self.parity_rhs[r])
        {
            for &v in row {
                columns[v].push(r);
            }
        }
        let mut space = ColumnSpace::new(self.parity_rows.len());
        x.ones().filter(|v| !pinned_one.contains(v)).all(|v| {
            space
                .insert(&BitVector::from_indices(
                    self.parity_rows.len(),
                    columns[v].iter().copied(),
                ))
                .is_some()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Feasible(BitVector),
    Infeasible,
}

impl Outcome {
    pub fn solution(&self) -> Option<&BitVector> {
        match self {
            Outcome::Feasible(x) => Some(x),
            Outcome::Infeasible => None,
        }
    }
}

/// How [`Search`] picks the next variable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Branching {
    /// Grow the support through the odd parity row with fewest free
    /// variables, falling back to the lowest free variable.
    #[default]
    Growth,
    /// Lowest free variable, `0` before `1`: solutions arrive in
    /// lexicographic order.
    Lexicographic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Search nodes allowed per call before giving up with an error.
    pub node_limit: u64,
    /// Record branching decisions into [`Search::trace`].
    pub trace: bool,
    pub branching: Branching,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_limit: 100_000_000,
            trace: false,
            branching: Branching::Growth,
        }
    }
}

/// Lexicographically smallest feasible assignment (comparing `x_0` first,
/// `0 < 1`).
///
/// Starting from any witness, variables are decided in ascending order: a
/// variable the witness leaves at `0` is fixed there; one it sets is fixed
/// to `0` if some solution agrees with every decision so far, which then
/// becomes the new witness.
pub fn solve(p: &ZeroOneProgram, config: SolverConfig) -> Result<Outcome> {
    p.validate()?;
    let Some(mut witness) = first_solution(p, config)? else {
        return Ok(Outcome::Infeasible);
    };
    let mut decided = p.clone();
    let pinned: Vec<bool> = {
        let mut v = vec![false; p.num_vars];
        for &(i, _) in &p.fixed {
            v[i] = true;
        }
        v
    };
    for (i, &is_pinned) in pinned.iter().enumerate() {
        if is_pinned {
            continue;
        }
        if !witness.get(i) {
            decided.fixed.push((i, false));
            continue;
        }
        let attempt = decided.clone().pin(i, false);
        match first_solution(&attempt, config)? {
            Some(better) => {
                witness = better;
                decided = attempt;
            }
            None => decided.fixed.push((i, true)),
        }
    }
    Ok(Outcome::Feasible(witness))
}

/// Up to `limit` solutions in lexicographic order, from one search with
/// lexicographic branching.
pub fn enumerate(p: &ZeroOneProgram, limit: usize, config: SolverConfig) -> Result<Vec<BitVector>> {
    if limit == 0 {
        return Err(Error::InvalidProgram("enumeration limit 0".into()));
    }
    let mut out = Vec::new();
    let config = SolverConfig {
        branching: Branching::Lexicographic,
        ..config
    };
    Search::new(p, config)?.run(|x| {
        out.push(x.clone());
        if out.len() == limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// Runs one search and returns its first solution.
fn first_solution(p: &ZeroOneProgram, config: SolverConfig) -> Result<Option<BitVector>> {
    let mut found = None;
    let config = SolverConfig {
        branching: Branching::Growth,
        ..config
    };
    Search::new(p, config)?.run(|x| {
        found = Some(x.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

const FREE: i8 = -1;
const ABSENT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
enum Pending {
    Row(u32),
    Cut(u32),
    Linear(u32),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub solutions: u64,
}

/// One depth-first search over a program, reporting solutions in the order
/// the search meets them.
pub struct Search<'p> {
    p: &'p ZeroOneProgram,
    config: SolverConfig,
    value: Vec<i8>,
    trail: Vec<usize>,
    var_rows: Vec<Vec<u32>>,
    row_odd: Vec<bool>,
    row_free: Vec<u32>,
    odd: Vec<u32>,
    odd_pos: Vec<u32>,
    var_cuts: Vec<Vec<(u32, bool)>>,
    cut_matched: Vec<u32>,
    cut_free: Vec<u32>,
    var_linear: Vec<Vec<(u32, i64)>>,
    lin_sum: Vec<i64>,
    lin_pos: Vec<i64>,
    lin_neg: Vec<i64>,
    prefix: usize,
    target: Option<usize>,
    ones: usize,
    free_prefix: usize,
    max_rows_per_var: usize,
    parity_in_prefix: bool,
    pinned_one: Vec<bool>,
    /// Compact index of each even row, for the circuit columns.
    even_index: Vec<Option<u32>>,
    even_rows: usize,
    /// Even rows currently violated.
    odd_even: usize,
    /// Echelon stack of the circuit columns of ones outside the pins, in
    /// trail order, each with its pivot.
    echelon: Vec<(usize, BitVector)>,
    in_echelon: Vec<bool>,
    pending: Vec<Pending>,
    consistent: bool,
    stats: SearchStats,
    trace: Vec<String>,
}

impl<'p> Search<'p> {
    pub fn new(p: &'p ZeroOneProgram, config: SolverConfig) -> Result<Self> {
        p.validate()?;
        let n = p.num_vars;
        let mut var_rows = vec![Vec::new(); n];
        for (r, row) in p.parity_rows.iter().enumerate() {
            for &v in row {
                var_rows[v].push(r as u32);
            }
        }
        let mut var_cuts = vec![Vec::new(); n];
        for (c, cut) in p.exclusion_cuts.iter().enumerate() {
            for &(v, lit) in cut {
                var_cuts[v].push((c as u32, lit));
            }
        }
        let mut var_linear = vec![Vec::new(); n];
        let mut lin_pos = vec![0; p.linear_rows.len()];
        let mut lin_neg = vec![0; p.linear_rows.len()];
        for (l, row) in p.linear_rows.iter().enumerate() {
            for &(v, a) in &row.terms {
                var_linear[v].push((l as u32, a));
                if a > 0 {
                    lin_pos[l] += a;
                } else {
                    lin_neg[l] += a;
                }
            }
        }
        let prefix = p.cardinality.map_or(0, |c| c.over);
        let parity_in_prefix = p.parity_rows.iter().flatten().all(|&v| v < prefix);
        let mut pinned_one = vec![false; n];
        for &(v, b) in &p.fixed {
            if b {
                pinned_one[v] = true;
            }
        }
        let mut even_index = vec![None; p.parity_rows.len()];
        let mut even_rows = 0;
        for (r, &odd) in p.parity_rhs.iter().enumerate() {
            if !odd {
                even_index[r] = Some(even_rows as u32);
                even_rows += 1;
            }
        }
        let mut s = Search {
            p,
            config,
            value: vec![FREE; n],
            trail: Vec::with_capacity(n),
            max_rows_per_var: var_rows.iter().map(Vec::len).max().unwrap_or(0),
            var_rows,
            row_odd: vec![false; p.parity_rows.len()],
            row_free: p.parity_rows.iter().map(|r| r.len() as u32).collect(),
            odd: Vec::new(),
            odd_pos: vec![ABSENT; p.parity_rows.len()],
            var_cuts,
            cut_matched: vec![0; p.exclusion_cuts.len()],
            cut_free: p.exclusion_cuts.iter().map(|c| c.len() as u32).collect(),
            var_linear,
            lin_sum: vec![0; p.linear_rows.len()],
            lin_pos,
            lin_neg,
            prefix,
            target: p.cardinality.map(|c| c.ones),
            ones: 0,
            free_prefix: prefix,
            parity_in_prefix,
            pinned_one,
            even_index,
            even_rows,
            odd_even: 0,
            echelon: Vec::new(),
            in_echelon: vec![false; n],
            pending: Vec::new(),
            consistent: true,
            stats: SearchStats::default(),
            trace: Vec::new(),
        };
        for (r, &odd) in p.parity_rhs.iter().enumerate() {
            if odd {
                s.toggle_odd(r as u32);
            }
        }
        if s.target.is_some_and(|t| t > prefix) {
            s.consistent = false;
        }
        for r in 0..p.parity_rows.len() {
            if s.row_free[r] <= 1 {
                s.pending.push(Pending::Row(r as u32));
            }
        }
        s.pending
            .extend((0..p.exclusion_cuts.len()).map(|c| Pending::Cut(c as u32)));
        s.pending
            .extend((0..p.linear_rows.len()).map(|l| Pending::Linear(l as u32)));
        if s.consistent {
            s.consistent = p.fixed.iter().all(|&(v, b)| s.assign(v, b)) && s.propagate();
        }
        Ok(s)
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Branching decisions, one line each, indented by depth. Empty unless
    /// tracing was requested.
    pub fn trace(&self) -> &[String] {
        &self.trace
    }

    /// Calls `visit` on each solution until it breaks or the search ends.
    pub fn run(
        &mut self,
        mut visit: impl FnMut(&BitVector) -> ControlFlow<()>,
    ) -> Result<SearchStats> {
        if self.consistent {
            let _ = self.dfs(0, &mut visit)?;
        }
        Ok(self.stats)
    }

    fn dfs(
        &mut self,
        depth: usize,
        visit: &mut impl FnMut(&BitVector) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.config.node_limit {
            return Err(Error::NodeLimit(self.config.node_limit));
        }
        if let Some(t) = self.target {
            // every new one flips at most `max_rows_per_var` rows
            if self.parity_in_prefix && self.odd.len() > (t - self.ones) * self.max_rows_per_var {
                return Ok(ControlFlow::Continue(()));
            }
        }
        if self.p.irreducible && self.odd_even == 0 && !self.odd.is_empty() {
            // the ones already form a cycle; anything added would be dependent
            return Ok(ControlFlow::Continue(()));
        }
        let mark = self.trail.len();
        if let Some(row) = self
            .most_constrained_odd_row()
            .filter(|_| self.config.branching == Branching::Growth)
        {
            let candidates: Vec<usize> = self.p.parity_rows[row as usize]
                .iter()
                .copied()
                .filter(|&v| self.value[v] == FREE)
                .collect();
            for v in candidates {
                let inner = self.trail.len();
                self.note(depth, v, true, Some(row));
                if self.assign(v, true)
                    && self.propagate()
                    && self.dfs(depth + 1, visit)?.is_break()
                {
                    return Ok(ControlFlow::Break(()));
                }
                self.undo(inner);
                if !(self.assign(v, false) && self.propagate()) {
                    break;
                }
            }
            self.undo(mark);
            return Ok(ControlFlow::Continue(()));
        }
        // With every row even, an irreducible solution cannot add anything
        // more; a met cardinality closes the counted variables.
        let close_all = self.p.irreducible && self.odd_even == 0;
        let close_prefix = self.target == Some(self.ones);
        if close_all || close_prefix {
            let limit = if close_all {
                self.value.len()
            } else {
                self.prefix
            };
            for v in 0..limit {
                if self.value[v] == FREE && !(self.assign(v, false) && self.propagate()) {
                    self.undo(mark);
                    return Ok(ControlFlow::Continue(()));
                }
            }
        }
        let flow = match self.value.iter().position(|&x| x == FREE) {
            None => self.leaf(visit),
            Some(v) => {
                let mut flow = ControlFlow::Continue(());
                for b in [false, true] {
                    let inner = self.trail.len();
                    self.note(depth, v, b, None);
                    if self.assign(v, b)
                        && self.propagate()
                        && self.dfs(depth + 1, visit)?.is_break()
                    {
                        flow = ControlFlow::Break(());
                        break;
                    }
                    self.undo(inner);
                }
                flow
            }
        };
        if flow.is_continue() {
            self.undo(mark);
        }
        Ok(flow)
    }

    fn leaf(&mut self, visit: &mut impl FnMut(&BitVector) -> ControlFlow<()>) -> ControlFlow<()> {
        let x = BitVector::from_indices(
            self.value.len(),
            (0..self.value.len()).filter(|&v| self.value[v] == 1),
        );
        debug_assert!(self.p.is_satisfied_by(&x));
        self.stats.solutions += 1;
        visit(&x)
    }

    /// Adds the circuit column of `v` to the echelon stack; `false` if it
    /// depends on the columns already there.
    fn push_column(&mut self, v: usize) -> bool {
        let mut col = BitVector::from_indices(
            self.even_rows,
            self.var_rows[v]
                .iter()
                .filter_map(|&r| self.even_index[r as usize])
                .map(|i| i as usize),
        );
        for (pivot, b) in &self.echelon {
            if col.get(*pivot) {
                col.xor_assign(b);
            }
        }
        match col.first_one() {
            Some(pivot) => {
                self.echelon.push((pivot, col));
                self.in_echelon[v] = true;
                true
            }
            None => false,
        }
    }

    fn most_constrained_odd_row(&self) -> Option<u32> {
        self.odd
            .iter()
            .copied()
            .min_by_key(|&r| (self.row_free[r as usize], r))
    }

    fn note(&mut self, depth: usize, v: usize, b: bool, row: Option<u32>) {
        if self.config.trace {
            let why = row.map(|r| format!(" odd row {r}")).unwrap_or_default();
            self.trace.push(format!(
                "{:indent$}x{v}={}{why}",
                "",
                u8::from(b),
                indent = 2 * depth
            ));
        }
    }

    fn toggle_odd(&mut self, r: u32) {
        let ri = r as usize;
        self.row_odd[ri] = !self.row_odd[ri];
        if self.even_index[ri].is_some() {
            if self.row_odd[ri] {
                self.odd_even += 1;
            } else {
                self.odd_even -= 1;
            }
        }
        if self.row_odd[ri] {
            self.odd_pos[ri] = self.odd.len() as u32;
            self.odd.push(r);
        } else {
            let pos = self.odd_pos[ri] as usize;
            let last = self.odd.pop().expect("odd row present");
            if last != r {
                self.odd[pos] = last;
                self.odd_pos[last as usize] = pos as u32;
            }
            self.odd_pos[ri] = ABSENT;
        }
    }

    /// Sets `v` and updates counters. `false` means an immediate conflict;
    /// the pending queue still has to be run or discarded by the caller.
    fn assign(&mut self, v: usize, b: bool) -> bool {
        if self.value[v] != FREE {
            return (self.value[v] == 1) == b;
        }
        self.value[v] = i8::from(b);
        self.trail.push(v);
        for i in 0..self.var_rows[v].len() {
            let r = self.var_rows[v][i];
            self.row_free[r as usize] -= 1;
            if b {
                self.toggle_odd(r);
            }
            if self.row_free[r as usize] <= 1 {
                self.pending.push(Pending::Row(r));
            }
        }
        for &(c, lit) in &self.var_cuts[v] {
            let ci = c as usize;
            self.cut_free[ci] -= 1;
            if lit == b {
                self.cut_matched[ci] += 1;
            }
            if self.cut_free[ci] <= 1 {
                self.pending.push(Pending::Cut(c));
            }
        }
        for &(l, a) in &self.var_linear[v] {
            let li = l as usize;
            if a > 0 {
                self.lin_pos[li] -= a;
            } else {
                self.lin_neg[li] -= a;
            }
            if b {
                self.lin_sum[li] += a;
            }
            self.pending.push(Pending::Linear(l));
        }
        if v < self.prefix {
            self.free_prefix -= 1;
            self.ones += usize::from(b);
        }
        if b && self.p.irreducible && !self.pinned_one[v] && !self.push_column(v) {
            return false;
        }
        match self.target {
            Some(t) if v < self.prefix => self.ones <= t && self.ones + self.free_prefix >= t,
            _ => true,
        }
    }

    fn unassign(&mut self, v: usize) {
        let b = self.value[v] == 1;
        self.value[v] = FREE;
        if self.in_echelon[v] {
            self.echelon.pop();
            self.in_echelon[v] = false;
        }
        for i in 0..self.var_rows[v].len() {
            let r = self.var_rows[v][i];
            self.row_free[r as usize] += 1;
            if b {
                self.toggle_odd(r);
            }
        }
        for &(c, lit) in &self.var_cuts[v] {
            let ci = c as usize;
            self.cut_free[ci] += 1;
            if lit == b {
                self.cut_matched[ci] -= 1;
            }
        }
        for &(l, a) in &self.var_linear[v] {
            let li = l as usize;
            if a > 0 {
                self.lin_pos[li] += a;
            } else {
                self.lin_neg[li] += a;
            }
            if b {
                self.lin_sum[li] -= a;
            }
        }
        if v < self.prefix {
            self.free_prefix += 1;
            self.ones -= usize::from(b);
        }
    }

    fn undo(&mut self, mark: usize) {
        self.pending.clear();
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail above mark");
            self.unassign(v);
        }
    }

    /// Runs unit propagation to a fixed point. On conflict the queue is
    /// cleared and `false` returned; assignments made so far stay on the
    /// trail for the caller to undo.
    fn propagate(&mut self) -> bool {
        while let Some(item) = self.pending.pop() {
            let ok = match item {
                Pending::Row(r) => self.propagate_row(r as usize),
                Pending::Cut(c) => self.propagate_cut(c as usize),
                Pending::Linear(l) => self.propagate_linear(l as usize),
            };
            if !ok {
                self.pending.clear();
                return false;
            }
        }
        true
    }

    fn propagate_row(&mut self, r: usize) -> bool {
        match self.row_free[r] {
            0 => !self.row_odd[r],
            1 => {
                let p = self.p;
                let v = p.parity_rows[r]
                    .iter()
                    .copied()
                    .find(|&v| self.value[v] == FREE)
                    .expect("one free");
                let b = self.row_odd[r];
                self.assign(v, b)
            }
            _ => true,
        }
    }

    fn propagate_cut(&mut self, c: usize) -> bool {
        let len = self.p.exclusion_cuts[c].len() as u32;
        if self.cut_matched[c] == len {
            return false;
        }
        if self.cut_matched[c] + 1 == len && self.cut_free[c] == 1 {
            let p = self.p;
            let (v, lit) = p.exclusion_cuts[c]
                .iter()
                .copied()
                .find(|&(v, _)| self.value[v] == FREE)
                .expect("one free");
            return self.assign(v, !lit);
        }
        true
    }

    fn propagate_linear(&mut self, l: usize) -> bool {
        let p = self.p;
        let rhs = p.linear_rows[l].rhs;
        let lo = self.lin_sum[l] + self.lin_neg[l];
        let hi = self.lin_sum[l] + self.lin_pos[l];
        if rhs < lo || rhs > hi {
            return false;
        }
        for &(v, a) in &p.linear_rows[l].terms {
            if self.value[v] != FREE {
                continue;
            }
            // the value each choice would leave as the row's extreme
            let forced = if a > 0 {
                if lo + a > rhs {
                    Some(false)
                } else if hi - a < rhs {
                    Some(true)
                } else {
                    None
                }
            } else if lo - a > rhs {
                Some(true)
            } else if hi + a < rhs {
                Some(false)
            } else {
                None
            };
            if let Some(b) = forced {
                // the row is queued again by the assignment
                return self.assign(v, b);
            }
        }
        true
    }
}

/// Integer form of a cycle search over `num_x` cycle variables, one per
/// column, with `target` of them set and `pin` among them. Each parity row
/// becomes `sum(x) - 2 y = 0` where `y` is written in binary with enough
/// bits for the row length, so the two forms have the same `x` solutions.
pub fn integer_cycle_program(
    rows: &[Vec<usize>],
    num_x: usize,
    target: usize,
    pin: usize,
) -> ZeroOneProgram {
    let bits: Vec<usize> = rows
        .iter()
        .map(|r| (usize::BITS - (r.len() / 2).leading_zeros()) as usize)
        .collect();
    let total = num_x + bits.iter().sum::<usize>();
    let mut p = ZeroOneProgram::new(total)
        .cardinality_over(target, num_x)
        .pin(pin, true);
    let mut next = num_x;
    for (row, &b) in rows.iter().zip(&bits) {
        let mut terms: Vec<(usize, i64)> = row.iter().map(|&v| (v, 1)).collect();
        terms.extend((0..b).map(|j| (next + j, -(2i64 << j))));
        next += b;
        p = p.linear_row(terms, 0);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(p: &ZeroOneProgram) -> Vec<BitVector> {
        let n = p.num_vars();
        (0u32..1 << n)
            .map(|m| BitVector::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1)))
            .filter(|x| p.is_satisfied_by(x))
            .collect()
    }

    /// Lexicographic key with `x_0` most significant.
    fn lex_key(x: &BitVector) -> Vec<bool> {
        (0..x.len()).map(|i| x.get(i)).collect()
    }

    fn square() -> ZeroOneProgram {
        // edges 0..4 of a 4-cycle, rows are its nodes
        ZeroOneProgram::new(4)
            .parity_row([0, 3])
            .parity_row([0, 1])
            .parity_row([1, 2])
            .parity_row([2, 3])
    }

    #[test]
    fn conflicting_pins_are_infeasible() {
        let p = ZeroOneProgram::new(1).pin(0, true).pin(0, false);
        assert_eq!(
            solve(&p, SolverConfig::default()).unwrap(),
            Outcome::Infeasible
        );
    }

    #[test]
    fn square_cycle_is_found() {
        let p = square().pin(0, true).cardinality(4);
        let x = solve(&p, SolverConfig::default()).unwrap();
        assert_eq!(x.solution().unwrap().count_ones(), 4);
        assert_eq!(
            solve(
                &square().pin(0, true).cardinality(3),
                SolverConfig::default()
            )
            .unwrap(),
            Outcome::Infeasible
        );
    }

    #[test]
    fn lexicographic_minimum_matches_brute_force() {
        // two triangles sharing edge 0: {0,1,2} and {0,3,4}
        let p = ZeroOneProgram::new(5)
            .parity_row([0, 1, 3])
            .parity_row([0, 2, 4])
            .parity_row([1, 2])
            .parity_row([3, 4]);
        let mut all = brute_force(&p);
        all.sort_by_key(lex_key);
        let got = solve(&p, SolverConfig::default()).unwrap();
        assert_eq!(got.solution(), all.first());
        let listed = enumerate(&p, 10, SolverConfig::default()).unwrap();
        assert_eq!(listed, all);
    }

    #[test]
    fn node_limit_is_an_error() {
        let p = ZeroOneProgram::new(5)
            .parity_row([0, 1, 3])
            .parity_row([0, 2, 4])
            .parity_row([1, 2])
            .parity_row([3, 4])
            .pin(0, true);
        let config = SolverConfig {
            node_limit: 1,
            ..Default::default()
        };
        assert!(matches!(
            Search::new(&p, config)
                .unwrap()
                .run(|_| ControlFlow::Continue(())),
            Err(Error::NodeLimit(1))
        ));
    }

    #[test]
    fn irreducible_mode_drops_sums_of_cycles() {
        // bowtie: triangles {0,1,2} and {3,4,5} share node a
        let p = ZeroOneProgram::new(6)
            .parity_row([0, 2, 3, 5]) // shared node
            .parity_row([0, 1])
            .parity_row([1, 2])
            .parity_row([3, 4])
            .parity_row([4, 5])
            .pin(0, true);
        let all = enumerate(&p, 10, SolverConfig::default()).unwrap();
        assert_eq!(all.len(), 2);
        let circuits = enumerate(&p.irreducible(true), 10, SolverConfig::default()).unwrap();
        assert_eq!(circuits.len(), 1);
        assert_eq!(circuits[0].ones().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn integer_form_agrees_on_square() {
        let rows = vec![vec![0, 3], vec![0, 1], vec![1, 2], vec![2, 3]];
        let p = integer_cycle_program(&rows, 4, 4, 0);
        let x = solve(&p, SolverConfig::default()).unwrap();
        let x = x.solution().unwrap();
        assert_eq!((0..4).filter(|&i| x.get(i)).count(), 4);
        // each row holds two ones, so every y is 1
        assert_eq!(p.num_vars(), 8);
        assert!((4..8).all(|i| x.get(i)));
    }

    #[test]
    fn trace_records_decisions() {
        let p = ZeroOneProgram::new(5)
            .parity_row([0, 1, 3])
            .parity_row([0, 2, 4])
            .parity_row([1, 2])
            .parity_row([3, 4])
            .pin(0, true);
        let mut s = Search::new(
            &p,
            SolverConfig {
                trace: true,
                ..Default::default()
            },
        )
        .unwrap();
        s.run(|_| ControlFlow::Break(())).unwrap();
        assert!(!s.trace().is_empty());
    }
}
