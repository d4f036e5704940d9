//! Searches organised by graph type: the line bound inside a type class and
//! the joint-shadow bound for graphs of small excess.

use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::engine::{run, BudgetMode, Candidates, Step, Visitor};
use super::lemmas::{trial_rng, LemmaMode};
use super::{all_graphs, family_search_guard, SearchConfig, SearchReport, MAX_STORED};
use crate::blocks::{contains_line, excess, group_by_type, type_excess};
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{pair_count, OrderedGraph};
use crate::parallel::with_threads;

/// Largest type class whose subsets are enumerated.
const CLASS_SUBSET_LIMIT: usize = 20;

/// For every type `T` on `[n]` and every `𝒢_T` containing a line:
/// `|∂𝒢_T| >= min{2 m_n(T) + 1, |𝒢_T|}`.
pub fn verify_2mt(n: usize, cfg: &SearchConfig) -> Result<SearchReport> {
    let started = Instant::now();
    if n > 6 {
        return Err(Error::Feasibility(format!("type-class sweeps are limited to n <= 6, asked for {n}")));
    }
    family_search_guard(n)?;
    let everything = GraphFamily::new(n, all_graphs(n)?)?;
    let classes: Vec<_> = group_by_type(&everything)?.into_iter().collect();
    if let Some((t, c)) = classes.iter().find(|(_, c)| c.len() > CLASS_SUBSET_LIMIT) {
        return Err(Error::Feasibility(format!(
            "type {t} has {} members; subsets are enumerated only up to {CLASS_SUBSET_LIMIT}",
            c.len()
        )));
    }
    let parts: Vec<Result<(u64, u64, Vec<GraphFamily>)>> = with_threads(cfg.threads, || {
        classes
            .par_iter()
            .map(|(t, class)| {
                let m = type_excess(t, n)?;
                let members = class.members();
                let (mut checked, mut with_line) = (0u64, 0u64);
                let mut bad = Vec::new();
                for mask in 1u32..1 << members.len() {
                    checked += 1;
                    let sub = GraphFamily::new(
                        n,
                        (0..members.len()).filter(|i| mask >> i & 1 == 1).map(|i| members[i]),
                    )?;
                    if contains_line(&sub)?.is_none() {
                        continue;
                    }
                    with_line += 1;
                    if sub.shadow()?.len() < (2 * m + 1).min(sub.len()) {
                        bad.push(sub);
                    }
                }
                Ok((checked, with_line, bad))
            })
            .collect()
    });
    let mut report = SearchReport::new("2mT", json!({"n": n}));
    let mut with_line = 0;
    for part in parts {
        let (checked, lines, bad) = part?;
        report.checked += checked;
        with_line += lines;
        for family in bad {
            report.violation(family);
        }
    }
    report.findings.push(format!(
        "{} type classes, {with_line} subfamilies containing a line",
        classes.len()
    ));
    Ok(report.finish(started))
}

/// `|∂𝒢| >= t(n-m)^2 / (2(n-m) + 32t)`, compared in integers. `m < n`.
pub fn difftypes_bound_holds(shadow: usize, t: usize, m: usize, n: usize) -> bool {
    let (s, t, r) = (shadow as i128, t as i128, n as i128 - m as i128);
    s * (2 * r + 32 * t) >= t * r * r
}

/// `⌈t(n-m)^2 / (2(n-m) + 32t)⌉ <= t·n`, the sanity cap on the bound.
fn bound_within_cap(t: usize, m: usize, n: usize) -> bool {
    let (t, r, n) = (t as i128, n as i128 - m as i128, n as i128);
    t * r * r <= t * n * (2 * r + 32 * t)
}

struct Difftypes {
    t_max: usize,
    excess: Vec<usize>,
    found: Vec<Vec<usize>>,
    count: u64,
    cap_broken: bool,
}

impl Visitor for Difftypes {
    fn max_size(&self) -> usize {
        self.t_max
    }

    fn visit(&mut self, cands: &Candidates, chosen: &[usize], shadow: usize) -> Step {
        let n = cands.n;
        let m = chosen.iter().map(|&i| self.excess[i]).max().unwrap_or(0);
        if !bound_within_cap(chosen.len(), m, n) {
            self.cap_broken = true;
        }
        // Extensions only raise t (towards t_max) and m, and the bound grows
        // with t and shrinks with m, so this shadow settles the subtree.
        if difftypes_bound_holds(shadow, self.t_max, m, n) {
            return Step::Cut;
        }
        if !difftypes_bound_holds(shadow, chosen.len(), m, n) {
            self.count += 1;
            if self.found.len() < MAX_STORED {
                self.found.push(chosen.to_vec());
            }
        }
        Step::Descend
    }
}

/// Families of `t <= t_max` distinct graphs on `[n]` whose excesses are at
/// most `m_max`, checked against the joint-shadow bound with `m` the
/// largest excess in the family.
pub fn verify_difftypes(
    n: usize,
    t_max: usize,
    m_max: usize,
    mode: LemmaMode,
    cfg: &SearchConfig,
) -> Result<SearchReport> {
    let started = Instant::now();
    if n > 6 {
        return Err(Error::Feasibility(format!("the excess sweep is limited to n <= 6, asked for {n}")));
    }
    family_search_guard(n)?;
    let mut graphs = Vec::new();
    let mut ex = Vec::new();
    for g in all_graphs(n)? {
        let m = excess(&g)?;
        if m <= m_max {
            graphs.push(g);
            ex.push(m);
        }
    }
    let params = json!({"n": n, "t_max": t_max, "m_max": m_max, "mode": mode.name(), "trials": mode.trials()});
    let mut report = SearchReport::new("difftypes", params);
    match mode {
        LemmaMode::Exhaustive => {
            let cands = Candidates::new(n, graphs);
            let out = with_threads(cfg.threads, || {
                run(
                    &cands,
                    |_| Difftypes {
                        t_max,
                        excess: ex.clone(),
                        found: Vec::new(),
                        count: 0,
                        cap_broken: false,
                    },
                    BudgetMode::Shared(cfg.budget),
                )
            });
            if out.exceeded {
                return Err(Error::Feasibility(format!(
                    "search visited more than {} partial families",
                    cfg.budget
                )));
            }
            report.checked = out.nodes;
            report.pruned = out.pruned;
            for part in &out.parts {
                report.suspect_implementation |= part.visitor.cap_broken;
                for chosen in &part.visitor.found {
                    report.violation(cands.family(chosen));
                }
            }
            report.violations = out.parts.iter().map(|p| p.visitor.count).sum();
        }
        LemmaMode::Random { trials, seed } => {
            report.seed = Some(seed);
            if graphs.is_empty() || t_max == 0 {
                return Ok(report.finish(started));
            }
            let results: Vec<Option<GraphFamily>> = with_threads(cfg.threads, || {
                (0..trials)
                    .into_par_iter()
                    .map(|i| {
                        let mut rng = trial_rng(seed, i as u64);
                        let family = random_family(&mut rng, n, &graphs, t_max);
                        let m = family.iter().map(|g| excess(g).expect("n is small")).max().unwrap_or(0);
                        let shadow = family.shadow().expect("n >= 1").len();
                        (!difftypes_bound_holds(shadow, family.len(), m, n)).then_some(family)
                    })
                    .collect()
            });
            report.checked = trials as u64;
            for family in results.into_iter().flatten() {
                report.violation(family);
            }
        }
    }
    Ok(report.finish(started))
}

fn random_family(rng: &mut ChaCha8Rng, n: usize, pool: &[OrderedGraph], t_max: usize) -> GraphFamily {
    let t = rng.gen_range(1..=t_max.min(pool.len()));
    let mut picked: Vec<OrderedGraph> = Vec::with_capacity(t);
    while picked.len() < t {
        let g = pool[rng.gen_range(0..pool.len())];
        if !picked.contains(&g) {
            picked.push(g);
        }
    }
    debug_assert!(pair_count(n) < 64);
    GraphFamily::new(n, picked).expect("pool graphs share n")
}
