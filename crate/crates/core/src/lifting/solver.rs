//! Backtracking search for values of the template variables that make every
//! `L_g` a system of representatives for `C_0^{μ/d}`.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::fixperm::fix_permutation;
use super::forms::Gaussian;
use super::template::WitnessTemplate;
use super::witness::WitnessCollection;
use crate::algebra::{Element, FiniteField};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const NODE_BUDGET_ENV: &str = "DIFFORGE_NODE_BUDGET";

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Permutes the value order of every variable.
    pub seed: Option<u64>,
    pub threads: usize,
    /// Falls back to `DIFFORGE_NODE_BUDGET`, then to [`DEFAULT_NODE_BUDGET`].
    pub node_budget: Option<u64>,
    /// Report the solution of the lowest top-level branch.
    pub deterministic: bool,
    /// Apply the class-assignment repair for degenerate pairs first.
    pub degenerate_pair_repair: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { seed: None, threads: 1, node_budget: None, deterministic: true, degenerate_pair_repair: true }
    }
}

impl SolverOptions {
    pub fn budget(&self) -> u64 {
        self.node_budget
            .or_else(|| std::env::var(NODE_BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()))
            .unwrap_or(DEFAULT_NODE_BUDGET)
    }
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Sat {
        values: Vec<Element>,
        witness: WitnessCollection,
    },
    /// The whole search tree was explored.
    Unsat,
    /// The node budget ran out first.
    Unknown,
}

/// The class assignment applied before value search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairInfo {
    /// `α` extended to a permutation of `Z_r`.
    pub alpha: Vec<usize>,
    pub a: usize,
    /// Class of `y_{1,j}` modulo `r`.
    pub pi: Vec<usize>,
    /// Whether the restricted search found the reported solution.
    pub used: bool,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub nodes: u64,
    pub repair: Option<RepairInfo>,
}

impl SolveReport {
    pub fn witness(&self) -> Option<&WitnessCollection> {
        match &self.outcome {
            SolveOutcome::Sat { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

pub fn solve_assignment(t: &WitnessTemplate, field: Arc<FiniteField>) -> Result<SolveReport> {
    solve_assignment_with(t, field, &SolverOptions::default())
}

pub fn solve_assignment_with(
    t: &WitnessTemplate,
    field: Arc<FiniteField>,
    opts: &SolverOptions,
) -> Result<SolveReport> {
    let q = field.order();
    let mu = t.source.mu;
    if !(q - 1).is_multiple_of(mu) {
        return Err(Error::Congruence(format!("q = {q} is not 1 mod mu = {mu}")));
    }
    let r = mu / t.type_d;
    if r > 128 {
        return Err(Error::Precondition(format!("mu/d = {r} exceeds 128 classes")));
    }
    let xi = if t.type_d == 4 { field.primitive_fourth_root()? } else { 0 };
    let budget = opts.budget();
    let nodes = AtomicU64::new(0);

    let mut repair = None;
    if opts.degenerate_pair_repair {
        if let Some(info) = degenerate_pair_repair(t, &field, xi)? {
            let mut classes = vec![None; t.variables.len()];
            for (j, &v) in t.distinguished_vars.iter().enumerate() {
                classes[v] = Some(info.pi[j] as u32);
            }
            let problem = Problem::compile(t, &field, xi, r, Some(&classes), opts.seed);
            let out = problem.run(opts, budget, &nodes);
            let used = matches!(out, Search::Found(_));
            repair = Some(RepairInfo { used, ..info });
            match out {
                Search::Found(values) => return Ok(report(t, &field, values, &nodes, repair)),
                Search::Budget => {
                    return Ok(SolveReport { outcome: SolveOutcome::Unknown, nodes: nodes.into_inner(), repair })
                }
                Search::Exhausted => {}
            }
        }
    }
    let problem = Problem::compile(t, &field, xi, r, None, opts.seed);
    Ok(match problem.run(opts, budget, &nodes) {
        Search::Found(values) => report(t, &field, values, &nodes, repair),
        Search::Exhausted => SolveReport { outcome: SolveOutcome::Unsat, nodes: nodes.into_inner(), repair },
        Search::Budget => SolveReport { outcome: SolveOutcome::Unknown, nodes: nodes.into_inner(), repair },
    })
}

fn report(
    t: &WitnessTemplate,
    field: &Arc<FiniteField>,
    values: Vec<Element>,
    nodes: &AtomicU64,
    repair: Option<RepairInfo>,
) -> SolveReport {
    let witness = evaluate(t, field.clone(), &values).expect("template groups have no field factor");
    SolveReport { outcome: SolveOutcome::Sat { values, witness }, nodes: nodes.load(Ordering::Relaxed), repair }
}

/// Substitutes `values` into the symbolic blocks.
pub fn evaluate(t: &WitnessTemplate, field: Arc<FiniteField>, values: &[Element]) -> Result<WitnessCollection> {
    let xi = if t.type_d == 4 { field.primitive_fourth_root()? } else { 0 };
    let base = &t.source.group;
    let group = base.with_field(field.clone())?;
    let blocks = t
        .symbolic_blocks
        .iter()
        .map(|b| b.iter().map(|p| group.join(p.g, p.form.eval(&field, xi, values))).collect())
        .collect();
    WitnessCollection::new(base, field, blocks, t.type_d)
}

/// Residue of every `L_g` element modulo `r`, for audit output.
pub fn constraint_residues(
    t: &WitnessTemplate,
    field: &FiniteField,
    values: &[Element],
) -> Result<Vec<Vec<Option<u32>>>> {
    let xi = if t.type_d == 4 { field.primitive_fourth_root()? } else { 0 };
    let r = t.source.mu / t.type_d;
    Ok(t.constraint_map
        .iter()
        .map(|lg| lg.iter().map(|f| field.discrete_log(f.eval(field, xi, values)).ok().map(|l| l % r)).collect())
        .collect())
}

/// Pairs `(j1, j2)` with `y_{1,j1}` and `(1-ξ)y_{1,j2}` in a common `L_g`.
pub fn degenerate_pairs(t: &WitnessTemplate) -> Vec<(usize, usize)> {
    if t.type_d != 4 || t.source.k % 4 != 1 {
        return Vec::new();
    }
    // (1-ξ) normalizes to (1+ξ) under the fourth roots.
    let one_minus_xi = Gaussian::new(1, 1);
    let index = |v: usize| t.distinguished_vars.iter().position(|&d| d == v);
    let mut pairs = Vec::new();
    for lg in &t.constraint_map {
        let mut plain = Vec::new();
        let mut rotated = Vec::new();
        for f in lg {
            if let [(v, c)] = f.terms() {
                if let Some(j) = index(*v) {
                    if *c == Gaussian::ONE {
                        plain.push(j);
                    } else if *c == one_minus_xi {
                        rotated.push(j);
                    }
                }
            }
        }
        for &j1 in &plain {
            for &j2 in &rotated {
                pairs.push((j1, j2));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Computes `π` when the template has degenerate pairs that form an
/// injective fixed-point-free map and `r ≥ 5`.
fn degenerate_pair_repair(t: &WitnessTemplate, field: &FiniteField, xi: Element) -> Result<Option<RepairInfo>> {
    if t.type_d != 4 || t.source.k % 4 != 1 || t.source.k < 9 {
        return Ok(None);
    }
    let r = t.distinguished_vars.len();
    let pairs = degenerate_pairs(t);
    if pairs.is_empty() || r < 5 {
        return Ok(None);
    }
    let mut alpha: Vec<Option<usize>> = vec![None; r];
    let mut hit = vec![false; r];
    for &(j1, j2) in &pairs {
        if j1 == j2 || alpha[j1].is_some() || hit[j2] {
            return Ok(None);
        }
        alpha[j1] = Some(j2);
        hit[j2] = true;
    }
    let mut free_targets = (0..r).filter(|&j| !hit[j]);
    let alpha: Vec<usize> = alpha.into_iter().map(|a| a.unwrap_or_else(|| free_targets.next().unwrap())).collect();
    let one_minus_xi = field.sub(1, xi);
    let class = field.discrete_log(one_minus_xi)? as usize % r;
    let a = (r - class) % r;
    let pi = fix_permutation(r, a, &alpha)?;
    Ok(Some(RepairInfo { alpha, a, pi, used: false }))
}

enum Search {
    Found(Vec<Element>),
    Exhausted,
    Budget,
}

/// A form that becomes fully determined at some search position.
struct Check {
    slot: usize,
    terms: Vec<(usize, Element)>,
}

struct Problem {
    /// Variables in search order.
    order: Vec<usize>,
    domains: Vec<Vec<Element>>,
    checks: Vec<Vec<Check>>,
    slots: usize,
    log_mod_r: Vec<u8>,
    nvars: usize,
    field: FiniteField,
}

impl Problem {
    fn compile(
        t: &WitnessTemplate,
        field: &FiniteField,
        xi: Element,
        r: u32,
        classes: Option<&[Option<u32>]>,
        seed: Option<u64>,
    ) -> Problem {
        let n = t.variables.len();
        let g = &t.source.group;
        // L_g = L_{-g}, so one fiber per ±g pair suffices.
        let reps: Vec<usize> = (0..g.order()).filter(|&x| x <= g.neg(x)).map(|x| x as usize).collect();

        let mut degree = vec![0usize; n];
        for &s in &reps {
            for f in &t.constraint_map[s] {
                for v in f.variables() {
                    degree[v] += 1;
                }
            }
        }
        // Highest degree first, then repeatedly the variable closing the most
        // forms against those already placed (ties by degree, then id).
        let forms: Vec<Vec<usize>> =
            reps.iter().flat_map(|&s| t.constraint_map[s].iter().map(|f| f.variables().collect())).collect();
        let mut placed = vec![false; n];
        let mut order: Vec<usize> = Vec::with_capacity(n);
        while order.len() < n {
            let mut closing = vec![0usize; n];
            for f in &forms {
                let open: Vec<usize> = f.iter().copied().filter(|&v| !placed[v]).collect();
                if let [v] = open[..] {
                    closing[v] += 1;
                }
            }
            let v =
                (0..n).filter(|&v| !placed[v]).max_by_key(|&v| (closing[v], degree[v], std::cmp::Reverse(v))).unwrap();
            placed[v] = true;
            order.push(v);
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }

        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut checks: Vec<Vec<Check>> = (0..n).map(|_| Vec::new()).collect();
        for (slot, &s) in reps.iter().enumerate() {
            for f in &t.constraint_map[s] {
                let vars: Vec<usize> = f.variables().collect();
                for w in vars.windows(2) {
                    let (a, b) = (find(&mut uf, w[0]), find(&mut uf, w[1]));
                    uf[a] = b;
                }
                let last = vars.iter().map(|&v| pos[v]).max().expect("forms are nonzero");
                let terms = f.terms().iter().map(|&(v, c)| (v, c.eval(field, xi))).collect();
                checks[last].push(Check { slot, terms });
            }
        }
        let roots: Vec<usize> = (0..n).map(|v| find(&mut uf, v)).collect();
        let mut invariant = vec![true; n];
        for &s in &reps {
            for f in &t.constraint_map[s] {
                if !f.coefficient_sum().is_zero() {
                    invariant[roots[f.variables().next().unwrap()]] = false;
                }
            }
        }

        let q = field.order();
        let log_order: Vec<Element> = (0..q - 1).map(|i| field.omega_pow(i as i64)).collect();
        let mut full = vec![0];
        full.extend(&log_order);
        let mut domains: Vec<Vec<Element>> = (0..n)
            .map(|v| match classes.and_then(|c| c[v]) {
                Some(c) => log_order.iter().copied().skip(c as usize).step_by(r as usize).collect(),
                None => full.clone(),
            })
            .collect();

        // Translation per invariant component, then scaling: globally by
        // F_q^* once (when classes are free) and by C_0^r per component.
        let mut translated = vec![false; n];
        let mut anchored = vec![false; n];
        let mut global_used = classes.is_some();
        for &v in &order {
            let root = roots[v];
            if invariant[root] && !translated[root] {
                translated[root] = true;
                domains[v] = vec![0];
                continue;
            }
            if anchored[root] {
                continue;
            }
            anchored[root] = true;
            domains[v] = match classes.and_then(|c| c[v]) {
                Some(c) => vec![field.omega_pow(c as i64)],
                None if !global_used => {
                    global_used = true;
                    vec![0, 1]
                }
                None => {
                    let mut d = vec![0];
                    d.extend((0..r).map(|i| field.omega_pow(i as i64)));
                    d
                }
            };
        }
        if let Some(seed) = seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for d in &mut domains {
                d.shuffle(&mut rng);
            }
        }

        let mut log_mod_r = vec![0u8; q as usize];
        for x in 1..q {
            log_mod_r[x as usize] = (field.discrete_log(x).unwrap() % r) as u8;
        }
        Problem { order, domains, checks, slots: reps.len(), log_mod_r, nvars: n, field: field.clone() }
    }

    fn run(&self, opts: &SolverOptions, budget: u64, nodes: &AtomicU64) -> Search {
        if self.nvars == 0 {
            return Search::Found(Vec::new());
        }
        let first = self.order[0];
        let branches = self.domains[first].len();
        let run_branch = |b: usize, stop: &dyn Fn(usize) -> bool| -> Search {
            let mut st = State {
                values: vec![0; self.nvars],
                masks: vec![0u128; self.slots],
                local: 0,
                budget,
                nodes,
                out_of_budget: false,
            };
            let val = self.domains[first][b];
            st.local += 1;
            if !self.assign(0, val, &mut st) {
                st.flush();
                return Search::Exhausted;
            }
            let found = self.dfs(1, &mut st, &|| stop(b));
            st.flush();
            if found {
                Search::Found(st.values)
            } else if st.out_of_budget {
                Search::Budget
            } else {
                Search::Exhausted
            }
        };

        let threads = opts.threads.max(1);
        if threads == 1 || branches == 1 {
            let mut budget_hit = false;
            for b in 0..branches {
                match run_branch(b, &|_| false) {
                    Search::Found(v) => return Search::Found(v),
                    Search::Budget => {
                        budget_hit = true;
                        break;
                    }
                    Search::Exhausted => {}
                }
            }
            return if budget_hit { Search::Budget } else { Search::Exhausted };
        }

        let best = AtomicUsize::new(usize::MAX);
        let any = AtomicBool::new(false);
        let deterministic = opts.deterministic;
        let stop = |b: usize| {
            if deterministic {
                best.load(Ordering::Relaxed) < b
            } else {
                any.load(Ordering::Relaxed)
            }
        };
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        let results: Vec<Search> = pool.install(|| {
            (0..branches)
                .into_par_iter()
                .map(|b| {
                    if stop(b) {
                        return Search::Exhausted;
                    }
                    let r = run_branch(b, &stop);
                    if matches!(r, Search::Found(_)) {
                        best.fetch_min(b, Ordering::Relaxed);
                        any.store(true, Ordering::Relaxed);
                    }
                    r
                })
                .collect()
        });
        let mut budget_hit = false;
        for r in results {
            match r {
                Search::Found(v) => return Search::Found(v),
                Search::Budget => budget_hit = true,
                Search::Exhausted => {}
            }
        }
        if budget_hit {
            Search::Budget
        } else {
            Search::Exhausted
        }
    }

    /// Sets the variable at `p` and applies its checks; undoes on failure.
    fn assign(&self, p: usize, val: Element, st: &mut State) -> bool {
        let v = self.order[p];
        st.values[v] = val;
        let f = &self.field;
        let checks = &self.checks[p];
        for (i, c) in checks.iter().enumerate() {
            let x = c.terms.iter().fold(0, |acc, &(w, coef)| f.add(acc, f.mul(coef, st.values[w])));
            let ok = x != 0 && {
                let bit = 1u128 << self.log_mod_r[x as usize];
                if st.masks[c.slot] & bit != 0 {
                    false
                } else {
                    st.masks[c.slot] |= bit;
                    true
                }
            };
            if !ok {
                self.unassign(p, i, st);
                return false;
            }
        }
        true
    }

    /// Clears the bits set by the first `applied` checks at `p`.
    fn unassign(&self, p: usize, applied: usize, st: &mut State) {
        let f = &self.field;
        for c in &self.checks[p][..applied] {
            let x = c.terms.iter().fold(0, |acc, &(w, coef)| f.add(acc, f.mul(coef, st.values[w])));
            st.masks[c.slot] &= !(1u128 << self.log_mod_r[x as usize]);
        }
    }

    fn dfs(&self, p: usize, st: &mut State, stop: &dyn Fn() -> bool) -> bool {
        if p == self.nvars {
            return true;
        }
        let v = self.order[p];
        for &val in &self.domains[v] {
            if !st.tick() || (st.local & 0xfff == 0 && stop()) {
                return false;
            }
            if self.assign(p, val, st) {
                if self.dfs(p + 1, st, stop) {
                    return true;
                }
                let n = self.checks[p].len();
                self.unassign(p, n, st);
            }
            if st.out_of_budget {
                return false;
            }
        }
        false
    }
}

struct State<'a> {
    values: Vec<Element>,
    masks: Vec<u128>,
    local: u64,
    budget: u64,
    nodes: &'a AtomicU64,
    out_of_budget: bool,
}

impl State<'_> {
    const FLUSH: u64 = 1 << 12;

    /// Counts one node; false once the shared budget is spent.
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local.is_multiple_of(Self::FLUSH) {
            let total = self.nodes.fetch_add(Self::FLUSH, Ordering::Relaxed) + Self::FLUSH;
            if total > self.budget {
                self.out_of_budget = true;
                return false;
            }
        }
        true
    }

    fn flush(&mut self) {
        self.nodes.fetch_add(self.local % Self::FLUSH, Ordering::Relaxed);
        self.local = 0;
    }
}
