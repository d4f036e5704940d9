//! Depth-first enumeration of families as ascending combinations of
//! candidate graphs, with an incrementally maintained shadow.
//!
//! The tree is split by first member. Each part runs on its own walker and
//! the parts are merged in index order, so results never depend on how the
//! parts were scheduled.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::graph::{pair_count, OrderedGraph};

/// Candidate graphs on `[n]` with their shadows as codes on `[n-1]`.
pub(crate) struct Candidates {
    pub n: usize,
    pub graphs: Vec<OrderedGraph>,
    pub shadows: Vec<Vec<u32>>,
    words: usize,
}

impl Candidates {
    /// `graphs` must be on `[n]`, `1 <= n <= 7`, in ascending order.
    pub fn new(n: usize, graphs: Vec<OrderedGraph>) -> Candidates {
        debug_assert!((1..=7).contains(&n));
        let shadows = graphs
            .iter()
            .map(|g| {
                let mut codes: Vec<u32> = g.deletions().map(|(_, h)| h.code() as u32).collect();
                codes.sort_unstable();
                codes.dedup();
                codes
            })
            .collect();
        let bits = 1usize << pair_count(n - 1);
        Candidates {
            n,
            graphs,
            shadows,
            words: bits.div_ceil(64),
        }
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn shadow_size(&self, i: usize) -> usize {
        self.shadows[i].len()
    }

    pub fn family(&self, chosen: &[usize]) -> crate::family::GraphFamily {
        crate::family::GraphFamily::new(self.n, chosen.iter().map(|&i| self.graphs[i]))
            .expect("candidates share a vertex count")
    }
}

/// What to do after a member has been appended.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Step {
    /// Keep extending the family.
    Descend,
    /// Do not extend; the family itself was fully handled.
    Leaf,
    /// Do not extend; the bound rules out every extension.
    Cut,
}

pub(crate) trait Visitor {
    /// Largest family size to build.
    fn max_size(&self) -> usize;
    /// Cheap filter on the next member.
    fn admit(&self, _cands: &Candidates, _j: usize) -> bool {
        true
    }
    /// Called on every visited family with its shadow size.
    fn visit(&mut self, cands: &Candidates, chosen: &[usize], shadow: usize) -> Step;
}

/// How the node budget is enforced.
#[derive(Clone, Copy)]
pub(crate) enum BudgetMode {
    /// One limit on the total; exceeding it aborts the whole search.
    Shared(u64),
    /// Each part gets `budget / parts`; a part that runs out stops early.
    Split(u64),
}

pub(crate) struct PartOutcome<V> {
    pub visitor: V,
    pub nodes: u64,
    pub pruned: u64,
    /// `false` if this part stopped on its budget.
    pub complete: bool,
}

pub(crate) struct Outcome<V> {
    pub parts: Vec<PartOutcome<V>>,
    pub nodes: u64,
    pub pruned: u64,
    pub complete: bool,
    /// Set when a shared budget was exceeded.
    pub exceeded: bool,
}

struct Walker<'a> {
    cands: &'a Candidates,
    bits: Vec<u64>,
    shadow: usize,
    undo: Vec<u32>,
    chosen: Vec<usize>,
    nodes: u64,
    pruned: u64,
    flushed: u64,
    limit: u64,
    shared: Option<&'a AtomicU64>,
    stopped: bool,
}

const FLUSH_EVERY: u64 = 1 << 12;

impl<'a> Walker<'a> {
    fn push(&mut self, j: usize) -> usize {
        let mut added = 0;
        for &code in &self.cands.shadows[j] {
            let (w, b) = (code as usize / 64, code % 64);
            if self.bits[w] >> b & 1 == 0 {
                self.bits[w] |= 1 << b;
                self.undo.push(code);
                added += 1;
            }
        }
        self.shadow += added;
        self.chosen.push(j);
        added
    }

    fn pop(&mut self, added: usize) {
        for _ in 0..added {
            let code = self.undo.pop().expect("undo stack matches pushes");
            self.bits[code as usize / 64] &= !(1 << (code % 64));
        }
        self.shadow -= added;
        self.chosen.pop();
    }

    /// Counts a node; returns `false` once the budget is gone.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        match self.shared {
            Some(total) => {
                if self.nodes - self.flushed >= FLUSH_EVERY {
                    let delta = self.nodes - self.flushed;
                    self.flushed = self.nodes;
                    if total.fetch_add(delta, Ordering::Relaxed) + delta > self.limit {
                        self.stopped = true;
                    }
                }
            }
            None => {
                if self.nodes > self.limit {
                    self.stopped = true;
                }
            }
        }
        !self.stopped
    }

    fn enter<V: Visitor>(&mut self, visitor: &mut V, j: usize) {
        let added = self.push(j);
        if self.tick() {
            match visitor.visit(self.cands, &self.chosen, self.shadow) {
                Step::Descend if self.chosen.len() < visitor.max_size() => {
                    for next in j + 1..self.cands.len() {
                        if self.stopped {
                            break;
                        }
                        if visitor.admit(self.cands, next) {
                            self.enter(visitor, next);
                        }
                    }
                }
                Step::Cut => self.pruned += 1,
                _ => {}
            }
        }
        self.pop(added);
    }
}

/// Runs one part per admissible first member and returns the parts in
/// first-member order.
pub(crate) fn run<V, F>(cands: &Candidates, make: F, mode: BudgetMode) -> Outcome<V>
where
    V: Visitor + Send,
    F: Fn(usize) -> V + Sync,
{
    let total = AtomicU64::new(0);
    let parts_count = cands.len().max(1) as u64;
    let limit = match mode {
        BudgetMode::Shared(b) => b,
        BudgetMode::Split(b) => (b / parts_count).max(1),
    };
    let shared = matches!(mode, BudgetMode::Shared(_)).then_some(&total);
    let parts: Vec<PartOutcome<V>> = (0..cands.len())
        .into_par_iter()
        .filter_map(|first| {
            let mut visitor = make(first);
            if visitor.max_size() == 0 || !visitor.admit(cands, first) {
                return None;
            }
            let mut walker = Walker {
                cands,
                bits: vec![0; cands.words],
                shadow: 0,
                undo: Vec::new(),
                chosen: Vec::new(),
                nodes: 0,
                pruned: 0,
                flushed: 0,
                limit,
                shared,
                stopped: false,
            };
            walker.enter(&mut visitor, first);
            if let Some(t) = shared {
                t.fetch_add(walker.nodes - walker.flushed, Ordering::Relaxed);
            }
            Some(PartOutcome {
                visitor,
                nodes: walker.nodes,
                pruned: walker.pruned,
                complete: !walker.stopped,
            })
        })
        .collect();
    let nodes = parts.iter().map(|p| p.nodes).sum();
    let pruned = parts.iter().map(|p| p.pruned).sum();
    let complete = parts.iter().all(|p| p.complete);
    let exceeded = match mode {
        BudgetMode::Shared(b) => total.load(Ordering::Relaxed) > b || !complete,
        BudgetMode::Split(_) => false,
    };
    Outcome {
        parts,
        nodes,
        pruned,
        complete,
        exceeded,
    }
}
