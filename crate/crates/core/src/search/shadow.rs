//! Family searches on the full shadow: the shadow inequality and its
//! `k`-deficit generalisation, the refinement within types, and minimum
//! shadows.

use std::time::Instant;

use serde_json::json;

use super::engine::{run, BudgetMode, Candidates, Step, Visitor};
use super::{all_graphs, family_search_guard, SearchConfig, SearchReport, Status, MAX_STORED};
use crate::blocks::{contains_line, excess, group_by_type, shadow_within_types, type_excess};
use crate::error::{invalid, Error, Result};
use crate::family::GraphFamily;
use crate::parallel::with_threads;

/// Collects families with `|∂𝒢| + slack < |𝒢|`.
struct Deficit {
    max_size: usize,
    slack: i64,
    /// Largest shadow a violating family can have.
    bound: i64,
    prune: bool,
    found: Vec<Vec<usize>>,
    count: u64,
}

impl Visitor for Deficit {
    fn max_size(&self) -> usize {
        self.max_size
    }

    fn admit(&self, cands: &Candidates, j: usize) -> bool {
        !self.prune || cands.shadow_size(j) as i64 <= self.bound
    }

    fn visit(&mut self, _: &Candidates, chosen: &[usize], shadow: usize) -> Step {
        let shadow = shadow as i64;
        if self.prune && shadow > self.bound {
            return Step::Cut;
        }
        if shadow + self.slack < chosen.len() as i64 {
            self.count += 1;
            if self.found.len() < MAX_STORED {
                self.found.push(chosen.to_vec());
            }
        }
        Step::Descend
    }
}

fn exceeded(budget: u64) -> Error {
    Error::Feasibility(format!(
        "search visited more than {budget} partial families; raise the budget or shrink the request"
    ))
}

/// Every family of at most `max_size` graphs on `[n]` with
/// `|∂𝒢| < |𝒢| - slack`, searched with or without the shadow bound.
pub(crate) fn deficit_search(
    target: &str,
    params: serde_json::Value,
    n: usize,
    max_size: usize,
    slack: i64,
    prune: bool,
    cfg: &SearchConfig,
) -> Result<SearchReport> {
    let started = Instant::now();
    family_search_guard(n)?;
    let bound = max_size as i64 - slack - 1;
    let graphs = all_graphs(n)?;
    let cands = Candidates::new(n, graphs);
    let out = with_threads(cfg.threads, || {
        run(
            &cands,
            |_| Deficit {
                max_size,
                slack,
                bound,
                prune,
                found: Vec::new(),
                count: 0,
            },
            BudgetMode::Shared(cfg.budget),
        )
    });
    if out.exceeded {
        return Err(exceeded(cfg.budget));
    }
    let mut report = SearchReport::new(target, params);
    report.checked = out.nodes;
    report.pruned = out.pruned;
    let total: u64 = out.parts.iter().map(|p| p.visitor.count).sum();
    for part in &out.parts {
        for chosen in &part.visitor.found {
            let family = cands.family(chosen);
            let shadow = family.shadow()?.len() as i64;
            if shadow + slack >= family.len() as i64 {
                report.suspect_implementation = true;
            }
            report.violation(family);
        }
    }
    report.violations = total;
    if total > 0 {
        report.status = Status::Counterexamples;
    }
    Ok(report.finish(started))
}

/// Every family `𝒢` of at most `max_size` graphs on `[n]`, `max_size < n`,
/// satisfies `|∂𝒢| >= |𝒢|`.
pub fn verify_shadow_theorem(n: usize, max_size: usize, cfg: &SearchConfig) -> Result<SearchReport> {
    if max_size >= n.max(1) {
        return Err(invalid(format!("max_size must be below n = {n}, got {max_size}")));
    }
    deficit_search(
        "theorem1",
        json!({"n": n, "max_size": max_size}),
        n,
        max_size,
        0,
        true,
        cfg,
    )
}

/// Families with `|𝒢| < k·n - f_k` and `|∂𝒢| < |𝒢| - k + 1`. A hit is a
/// counterexample to the conjecture and is reported, not raised.
pub fn verify_conjecture_generalk(n: usize, k: usize, f_k: i64, cfg: &SearchConfig) -> Result<SearchReport> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let limit = (k * n) as i64 - f_k;
    let max_size = (limit - 1).max(0) as usize;
    let mut report = deficit_search(
        "conjecture-generalk",
        json!({"n": n, "k": k, "f_k": f_k, "max_size": max_size}),
        n,
        max_size,
        k as i64 - 1,
        true,
        cfg,
    )?;
    report.findings.push(if report.violations == 0 {
        format!("no family with |G| < {limit} has |dG| < |G| - {}", k - 1)
    } else {
        format!(
            "{} families with |G| < {limit} have |dG| < |G| - {}; the conjecture fails at n = {n}",
            report.violations,
            k - 1
        )
    });
    Ok(report)
}

/// Default `f_k = (k-1)(k+4)/2`.
pub fn default_f(k: usize) -> i64 {
    (k as i64 - 1) * (k as i64 + 4) / 2
}

/// Checks the type dichotomy on one family with a deficient shadow.
fn gline_holds(family: &GraphFamily) -> Result<bool> {
    let n = family.n();
    for (t, members) in group_by_type(family)? {
        let within = shadow_within_types(&members)?;
        if within.len() >= members.len() {
            continue;
        }
        let m = type_excess(&t, n)?;
        if members.len() >= 2 * m || contains_line(&members)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

struct Gline {
    max_size: usize,
    deficient: u64,
    failures: Vec<Vec<usize>>,
    failure_count: u64,
    error: Option<Error>,
}

impl Visitor for Gline {
    fn max_size(&self) -> usize {
        self.max_size
    }

    fn admit(&self, cands: &Candidates, j: usize) -> bool {
        cands.shadow_size(j) < self.max_size
    }

    fn visit(&mut self, cands: &Candidates, chosen: &[usize], shadow: usize) -> Step {
        if shadow >= self.max_size {
            return Step::Cut;
        }
        if shadow < chosen.len() {
            self.deficient += 1;
            match gline_holds(&cands.family(chosen)) {
                Ok(true) => {}
                Ok(false) => {
                    self.failure_count += 1;
                    if self.failures.len() < MAX_STORED {
                        self.failures.push(chosen.to_vec());
                    }
                }
                Err(e) => {
                    self.error.get_or_insert(e);
                }
            }
        }
        Step::Descend
    }
}

/// Every family with `|∂𝒢| < |𝒢| <= max_size` has a type `T` with
/// `|∂_τ 𝒢_T| < |𝒢_T|` and either `|𝒢_T| >= 2 m_n(T)` or a line in `𝒢_T`.
pub fn verify_gline(n: usize, max_size: usize, cfg: &SearchConfig) -> Result<SearchReport> {
    let started = Instant::now();
    family_search_guard(n)?;
    let cands = Candidates::new(n, all_graphs(n)?);
    let out = with_threads(cfg.threads, || {
        run(
            &cands,
            |_| Gline {
                max_size,
                deficient: 0,
                failures: Vec::new(),
                failure_count: 0,
                error: None,
            },
            BudgetMode::Shared(cfg.budget),
        )
    });
    if out.exceeded {
        return Err(exceeded(cfg.budget));
    }
    let mut report = SearchReport::new("gline", json!({"n": n, "max_size": max_size}));
    report.checked = out.nodes;
    report.pruned = out.pruned;
    let mut deficient = 0;
    for part in &out.parts {
        if let Some(e) = &part.visitor.error {
            return Err(e.clone());
        }
        deficient += part.visitor.deficient;
        for chosen in &part.visitor.failures {
            report.violation(cands.family(chosen));
        }
    }
    report.violations = out.parts.iter().map(|p| p.visitor.failure_count).sum();
    report
        .findings
        .push(format!("{deficient} families with |dG| < |G| examined"));
    Ok(report.finish(started))
}

/// Smallest shadow of a family of exactly `t` members.
struct MinShadow {
    t: usize,
    best: usize,
    witness: Option<Vec<usize>>,
}

impl Visitor for MinShadow {
    fn max_size(&self) -> usize {
        self.t
    }

    fn admit(&self, cands: &Candidates, j: usize) -> bool {
        cands.shadow_size(j) < self.best
    }

    fn visit(&mut self, _: &Candidates, chosen: &[usize], shadow: usize) -> Step {
        if shadow >= self.best {
            return Step::Cut;
        }
        if chosen.len() == self.t {
            self.best = shadow;
            self.witness = Some(chosen.to_vec());
            return Step::Leaf;
        }
        Step::Descend
    }
}

/// Greedy family of `t` members: start from the first graph with the
/// smallest shadow, then repeatedly add the graph that grows the shadow
/// least. Its shadow size bounds the optimum.
fn greedy_bound(cands: &Candidates, t: usize) -> (usize, Vec<usize>) {
    let mut chosen: Vec<usize> = Vec::with_capacity(t);
    let mut union: Vec<u32> = Vec::new();
    for _ in 0..t {
        let mut best: Option<(usize, usize)> = None;
        for j in 0..cands.len() {
            if chosen.contains(&j) {
                continue;
            }
            let extra = cands.shadows[j].iter().filter(|c| union.binary_search(c).is_err()).count();
            if best.is_none_or(|(e, _)| extra < e) {
                best = Some((extra, j));
            }
        }
        let (_, j) = best.expect("enough candidates for the greedy family");
        chosen.push(j);
        union.extend_from_slice(&cands.shadows[j]);
        union.sort_unstable();
        union.dedup();
    }
    chosen.sort_unstable();
    (union.len(), chosen)
}

fn minimum_over(
    target: &str,
    params: serde_json::Value,
    cands: Candidates,
    t: usize,
    cfg: &SearchConfig,
) -> Result<SearchReport> {
    let started = Instant::now();
    if t == 0 || t > cands.len() {
        return Err(invalid(format!(
            "family size {t} is outside 1..={}",
            cands.len()
        )));
    }
    let (upper, greedy) = greedy_bound(&cands, t);
    // Only graphs whose own shadow is at most the greedy value can appear
    // in an optimal family.
    let keep: Vec<usize> = (0..cands.len()).filter(|&i| cands.shadow_size(i) <= upper).collect();
    let greedy_family = cands.family(&greedy);
    let narrowed = Candidates::new(cands.n, keep.iter().map(|&i| cands.graphs[i]).collect());
    let out = with_threads(cfg.threads, || {
        run(
            &narrowed,
            |_| MinShadow {
                t,
                best: upper + 1,
                witness: None,
            },
            BudgetMode::Split(cfg.budget),
        )
    });
    let mut best: Option<(usize, &Vec<usize>)> = None;
    for part in &out.parts {
        if let Some(w) = &part.visitor.witness {
            if best.is_none_or(|(b, _)| part.visitor.best < b) {
                best = Some((part.visitor.best, w));
            }
        }
    }
    let (value, witness) = match best {
        Some((v, w)) => (v, narrowed.family(w)),
        None => (upper, greedy_family),
    };
    let mut report = SearchReport::new(target, params);
    report.status = Status::Computed;
    report.value = Some(value as i64);
    report.checked = out.nodes;
    report.pruned = out.pruned;
    report.complete = out.complete;
    if witness.shadow()?.len() != value {
        report.suspect_implementation = true;
    }
    report.witness = Some(witness);
    if !out.complete {
        report
            .findings
            .push(format!("budget exhausted; {value} is the best value found, not a proven minimum"));
    }
    Ok(report.finish(started))
}

/// `min |∂𝒢|` over families of exactly `t` graphs on `[n]`, with a witness.
pub fn min_shadow(n: usize, t: usize, cfg: &SearchConfig) -> Result<SearchReport> {
    family_search_guard(n)?;
    let cands = Candidates::new(n, all_graphs(n)?);
    let mut report = minimum_over("min-shadow", json!({"n": n, "t": t}), cands, t, cfg)?;
    if let Some(v) = report.value {
        if t < n && (v as usize) < t && report.complete {
            report
                .findings
                .push(format!("value {v} < t = {t} < n: a family with a smaller shadow than itself"));
        }
    }
    Ok(report)
}

/// `min |∂{G, H}|` over distinct `G, H` on `[n]` with `m(G) = m(H) = 0`,
/// compared with `n - 1`.
pub fn question_5_1(n: usize, cfg: &SearchConfig) -> Result<SearchReport> {
    if n > 6 {
        return Err(Error::Feasibility(format!(
            "the pair search is limited to n <= 6, asked for {n}"
        )));
    }
    family_search_guard(n)?;
    let mut zero = Vec::new();
    for g in all_graphs(n)? {
        if excess(&g)? == 0 {
            zero.push(g);
        }
    }
    let cands = Candidates::new(n, zero);
    let count = cands.len();
    let mut report = minimum_over("question-5.1", json!({"n": n, "t": 2, "m": 0}), cands, 2, cfg)?;
    let v = report.value.unwrap_or_default();
    report.findings.push(format!("{count} graphs on [{n}] have excess 0"));
    report.findings.push(if v >= n as i64 - 1 {
        format!("minimum {v} >= n - 1 = {}", n - 1)
    } else {
        format!("minimum {v} < n - 1 = {}", n - 1)
    });
    Ok(report)
}
