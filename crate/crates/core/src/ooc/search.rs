//! Exhaustive searches for single-codeword OOCs and relative difference
//! families. `None` is reported only after the whole tree was explored.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::algebra::{AbelianGroup, Element};
use crate::differences::{is_subgroup, verify_relative_df, RelativeDifferenceFamily};
use crate::error::{Error, Result};
use crate::lifting::solver::NODE_BUDGET_ENV;

pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000_000;
const FLUSH: u64 = 4096;

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Falls back to `DIFFORGE_NODE_BUDGET`, then to [`DEFAULT_SEARCH_BUDGET`].
    pub node_budget: Option<u64>,
    /// Worker count; 0 uses the available parallelism.
    pub threads: usize,
}

impl SearchOptions {
    pub fn budget(&self) -> u64 {
        self.node_budget
            .or_else(|| std::env::var(NODE_BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()))
            .unwrap_or(DEFAULT_SEARCH_BUDGET)
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// Every branch was explored without success.
    NoneFullyExplored,
    /// The node budget ran out first.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport<T> {
    pub outcome: SearchOutcome<T>,
    pub nodes: u64,
}

pub type OocSearch = SearchReport<Vec<u32>>;
pub type DfSearch = SearchReport<RelativeDifferenceFamily>;

/// Shared node counter with a global stop flag.
struct Budget {
    limit: u64,
    used: AtomicU64,
    exceeded: AtomicBool,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0), exceeded: AtomicBool::new(false) }
    }

    /// Adds `n` nodes; false once the budget is gone.
    fn charge(&self, n: u64) -> bool {
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.limit {
            self.exceeded.store(true, Ordering::Relaxed);
        }
        !self.exceeded.load(Ordering::Relaxed)
    }
}

enum Step<T> {
    Found(T),
    Exhausted,
    Stopped,
}

fn finish<T>(found: Option<T>, budget: &Budget) -> SearchReport<T> {
    let nodes = budget.used.load(Ordering::Relaxed);
    let outcome = match found {
        Some(t) => SearchOutcome::Found(t),
        None if budget.exceeded.load(Ordering::Relaxed) => SearchOutcome::Unknown,
        None => SearchOutcome::NoneFullyExplored,
    };
    SearchReport { outcome, nodes }
}

struct Ruler<'a> {
    v: u32,
    k: usize,
    g1: u32,
    used: Vec<bool>,
    elems: Vec<u32>,
    marks: Vec<u32>,
    pending: u64,
    budget: &'a Budget,
}

impl Ruler<'_> {
    /// Adds `x`, marking `±(x - y)` for every placed `y`.
    fn push(&mut self, x: u32) -> bool {
        let v = self.v;
        let mark = self.marks.len();
        for i in 0..self.elems.len() {
            let d = (x + v - self.elems[i]) % v;
            let e = v - d;
            if d == e || self.used[d as usize] || self.used[e as usize] {
                for &m in &self.marks[mark..] {
                    self.used[m as usize] = false;
                }
                self.marks.truncate(mark);
                return false;
            }
            self.used[d as usize] = true;
            self.used[e as usize] = true;
            self.marks.push(d);
            self.marks.push(e);
        }
        self.marks.push(u32::MAX);
        self.elems.push(x);
        true
    }

    fn pop(&mut self) {
        self.elems.pop();
        self.marks.pop();
        for _ in 0..self.elems.len() {
            for _ in 0..2 {
                let m = self.marks.pop().unwrap();
                self.used[m as usize] = false;
            }
        }
    }

    fn dfs(&mut self) -> Step<Vec<u32>> {
        self.pending += 1;
        if self.pending >= FLUSH {
            let n = std::mem::take(&mut self.pending);
            if !self.budget.charge(n) {
                return Step::Stopped;
            }
        }
        let last = *self.elems.last().unwrap();
        let (v, g1) = (self.v, self.g1);
        if self.elems.len() == self.k {
            let wrap = v - last;
            let g2 = self.elems.get(2).map_or(wrap, |&x| x - g1);
            return if wrap > g1 && (self.k < 3 || g2 < wrap) {
                Step::Found(self.elems.clone())
            } else {
                Step::Exhausted
            };
        }
        // After x, k - j gaps remain; they are distinct and exceed g1.
        let m = (self.k - self.elems.len()) as u32;
        let room = m * g1 + m * (m + 1) / 2;
        for x in last + g1 + 1..v {
            if v - x < room {
                break;
            }
            if self.push(x) {
                match self.dfs() {
                    Step::Exhausted => {}
                    other => return other,
                }
                self.pop();
            }
        }
        Step::Exhausted
    }
}

/// A `(v, k, 1)`-OOC with `target_count` codewords; only one codeword is
/// supported. Codewords are normalized to `0 < g₁ < …` with `g₁` the least
/// cyclic gap and the gap after `g₁` smaller than the gap before `0`.
pub fn search_ooc_exhaustive(v: u32, k: usize, target_count: usize, opts: &SearchOptions) -> Result<OocSearch> {
    if target_count != 1 {
        return Err(Error::Precondition("only single-codeword searches are supported".into()));
    }
    if k < 2 || v < 2 {
        return Err(Error::Precondition(format!("need k >= 2 and v >= 2, got v = {v}, k = {k}")));
    }
    if v > 1 << 16 {
        return Err(Error::Precondition(format!("v = {v} too large")));
    }
    let budget = Budget::new(opts.budget());
    if ((k * (k - 1)) as u64) > (v - 1) as u64 {
        return Ok(finish(None, &budget));
    }
    let kk = k as u32;
    let mut branches = Vec::new();
    let mut g1 = 1;
    while kk * g1 + kk * (kk - 1) / 2 <= v {
        if k == 2 {
            branches.push((g1, None));
        } else {
            for x2 in 2 * g1 + 1..v {
                branches.push((g1, Some(x2)));
            }
        }
        g1 += 1;
    }
    let run = |&(g1, x2): &(u32, Option<u32>)| -> Option<Vec<u32>> {
        if budget.exceeded.load(Ordering::Relaxed) {
            return None;
        }
        let mut r = Ruler {
            v,
            k,
            g1,
            used: vec![false; v as usize],
            elems: vec![0],
            marks: vec![u32::MAX],
            pending: 0,
            budget: &budget,
        };
        if !r.push(g1) || x2.is_some_and(|x| !r.push(x)) {
            budget.charge(1);
            return None;
        }
        let out = r.dfs();
        budget.charge(r.pending);
        match out {
            Step::Found(w) => Some(w),
            _ => None,
        }
    };
    let found = opts.pool()?.install(|| branches.par_iter().find_map_first(run));
    Ok(finish(found, &budget))
}

struct DfCtx {
    n: usize,
    k: usize,
    blocks: usize,
    sub: Vec<Element>,
    in_n: Vec<bool>,
}

struct DfState<'a> {
    ctx: &'a DfCtx,
    covered: Vec<bool>,
    blocks: Vec<Vec<Element>>,
    marks: Vec<Element>,
    pending: u64,
    budget: &'a Budget,
}

impl DfState<'_> {
    fn push(&mut self, x: Element) -> bool {
        let c = self.ctx;
        let cur = self.blocks.last().unwrap();
        let mark = self.marks.len();
        for &y in cur {
            let d = c.sub[x as usize * c.n + y as usize];
            let e = c.sub[y as usize * c.n + x as usize];
            if d == e || c.in_n[d as usize] || self.covered[d as usize] || self.covered[e as usize] {
                for &m in &self.marks[mark..] {
                    self.covered[m as usize] = false;
                }
                self.marks.truncate(mark);
                return false;
            }
            self.covered[d as usize] = true;
            self.covered[e as usize] = true;
            self.marks.push(d);
            self.marks.push(e);
        }
        self.blocks.last_mut().unwrap().push(x);
        true
    }

    fn pop(&mut self) {
        let cur = self.blocks.last_mut().unwrap();
        cur.pop();
        for _ in 0..2 * cur.len() {
            let m = self.marks.pop().unwrap();
            self.covered[m as usize] = false;
        }
    }

    /// Opens a block `{0, d}` at the least uncovered `d`.
    fn open(&mut self) -> bool {
        let c = self.ctx;
        let d = (1..c.n).find(|&x| !c.in_n[x] && !self.covered[x]).expect("uncovered elements remain") as Element;
        self.blocks.push(vec![0]);
        if self.push(d) {
            true
        } else {
            self.blocks.pop();
            false
        }
    }

    fn close(&mut self) {
        self.pop();
        self.blocks.pop();
    }

    fn dfs(&mut self) -> Step<Vec<Vec<Element>>> {
        self.pending += 1;
        if self.pending >= FLUSH {
            let n = std::mem::take(&mut self.pending);
            if !self.budget.charge(n) {
                return Step::Stopped;
            }
        }
        let c = self.ctx;
        let cur = self.blocks.last().unwrap();
        if cur.len() == c.k {
            if self.blocks.len() == c.blocks {
                return Step::Found(self.blocks.clone());
            }
            if !self.open() {
                return Step::Exhausted;
            }
            let out = self.dfs();
            if matches!(out, Step::Exhausted) {
                self.close();
            }
            return out;
        }
        let need = c.k - cur.len();
        let start = *cur.last().unwrap() as usize + 1;
        for x in start..c.n {
            if c.n - x < need {
                break;
            }
            if self.push(x as Element) {
                match self.dfs() {
                    Step::Exhausted => {}
                    other => return other,
                }
                self.pop();
            }
        }
        Step::Exhausted
    }
}

/// A `(G, N, k, 1)`-DF. Blocks are translated to `{0, d, …}` with `d` the
/// least difference of the block, and taken in order of `d`; then `d` is
/// forced to be the least element of `G ∖ N` not yet covered.
pub fn search_relative_df_exhaustive(
    group: &AbelianGroup,
    forbidden: &[Element],
    k: usize,
    opts: &SearchOptions,
) -> Result<DfSearch> {
    if !is_subgroup(group, forbidden) {
        return Err(Error::Precondition("forbidden set is not a subgroup".into()));
    }
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    let n = group.order() as usize;
    if n > 2048 {
        return Err(Error::Precondition(format!("|G| = {n} exceeds 2048")));
    }
    let mut in_n = vec![false; n];
    for &x in forbidden {
        in_n[x as usize] = true;
    }
    let m = in_n.iter().filter(|&&b| b).count();
    let budget = Budget::new(opts.budget());
    let kk = k * (k - 1);
    if !(n - m).is_multiple_of(kk) || n == m {
        return Ok(finish(None, &budget));
    }
    let mut sub = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            sub[a * n + b] = group.sub(a as Element, b as Element);
        }
    }
    let ctx = DfCtx { n, k, blocks: (n - m) / kk, sub, in_n };
    let fresh = || DfState {
        ctx: &ctx,
        covered: vec![false; n],
        blocks: Vec::new(),
        marks: Vec::new(),
        pending: 0,
        budget: &budget,
    };

    let mut root = fresh();
    if !root.open() {
        return Ok(finish(None, &budget));
    }
    let found = if k == 2 {
        match root.dfs() {
            Step::Found(b) => Some(b),
            _ => None,
        }
    } else {
        let d = root.blocks[0][1] as usize;
        let branches: Vec<usize> = (d + 1..n).collect();
        let run = |&x: &usize| -> Option<Vec<Vec<Element>>> {
            if budget.exceeded.load(Ordering::Relaxed) {
                return None;
            }
            let mut s = fresh();
            s.open();
            if !s.push(x as Element) {
                budget.charge(1);
                return None;
            }
            let out = s.dfs();
            budget.charge(s.pending);
            match out {
                Step::Found(b) => Some(b),
                _ => None,
            }
        };
        opts.pool()?.install(|| branches.par_iter().find_map_first(run))
    };
    let found = match found {
        Some(blocks) => {
            let df = RelativeDifferenceFamily::new(group.clone(), forbidden.to_vec(), blocks, k, 1);
            if let Err(v) = verify_relative_df(&df)? {
                return Err(Error::Invalid(format!("search produced an invalid family: {v}")));
            }
            Some(df)
        }
        None => None,
    };
    Ok(finish(found, &budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ooc::{verify_ooc, OpticalOrthogonalCode};

    fn opts() -> SearchOptions {
        SearchOptions { node_budget: Some(1 << 40), threads: 2 }
    }

    /// Whether some k-subset of Z_v containing 0 has distinct differences.
    fn brute_force_exists(v: u32, k: usize) -> bool {
        fn go(v: u32, k: usize, next: u32, set: &mut Vec<u32>) -> bool {
            if set.len() == k {
                return verify_ooc(&OpticalOrthogonalCode::new(v, k, vec![set.clone()])).valid;
            }
            (next..v).any(|x| {
                set.push(x);
                let ok = go(v, k, x + 1, set);
                set.pop();
                ok
            })
        }
        go(v, k, 1, &mut vec![0])
    }

    #[test]
    fn finds_the_perfect_ruler_mod_seven() {
        let r = search_ooc_exhaustive(7, 3, 1, &opts()).unwrap();
        assert_eq!(r.outcome, SearchOutcome::Found(vec![0, 1, 3]));
    }

    #[test]
    fn agrees_with_brute_force() {
        for v in 2..=26 {
            for k in 2..=5 {
                let r = search_ooc_exhaustive(v, k, 1, &opts()).unwrap();
                let exists = brute_force_exists(v, k);
                match r.outcome {
                    SearchOutcome::Found(w) => {
                        assert!(exists);
                        assert!(verify_ooc(&OpticalOrthogonalCode::new(v, k, vec![w])).valid);
                    }
                    SearchOutcome::NoneFullyExplored => assert!(!exists, "v={v} k={k}"),
                    SearchOutcome::Unknown => panic!("budget"),
                }
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let o = SearchOptions { node_budget: Some(10), threads: 1 };
        let r = search_ooc_exhaustive(81, 9, 1, &o).unwrap();
        assert_eq!(r.outcome, SearchOutcome::Unknown);
        assert!(search_ooc_exhaustive(81, 9, 2, &o).is_err());
    }

    #[test]
    fn trivial_relative_family() {
        let g = AbelianGroup::cyclic(4).unwrap();
        let r = search_relative_df_exhaustive(&g, &[0, 2], 2, &opts()).unwrap();
        match r.outcome {
            SearchOutcome::Found(df) => assert_eq!(df.blocks, vec![vec![0, 1]]),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn small_relative_families() {
        // (Z_15, 5Z_15, 3, 1) exists; (Z_13, {0}, 3, 1) exists; (Z_9, 3Z_9, 3, 1) does not.
        let g = AbelianGroup::cyclic(15).unwrap();
        assert!(matches!(
            search_relative_df_exhaustive(&g, &[0, 5, 10], 3, &opts()).unwrap().outcome,
            SearchOutcome::Found(_)
        ));
        let g = AbelianGroup::cyclic(13).unwrap();
        assert!(matches!(
            search_relative_df_exhaustive(&g, &[0], 3, &opts()).unwrap().outcome,
            SearchOutcome::Found(_)
        ));
        let g = AbelianGroup::cyclic(9).unwrap();
        assert_eq!(
            search_relative_df_exhaustive(&g, &[0, 3, 6], 3, &opts()).unwrap().outcome,
            SearchOutcome::NoneFullyExplored
        );
        assert!(search_relative_df_exhaustive(&g, &[0, 1], 3, &opts()).is_err());
    }
}
