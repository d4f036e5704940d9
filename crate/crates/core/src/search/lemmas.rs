//! Statement checks for the small-excess lemmas, run exhaustively on `[n]`
//! or on seeded random samples.
//!
//! Statements about pairs `(G, H)` are checked on every pair that shares a
//! deletion. Exhaustively the pairs come from an index of all deletions;
//! in random mode `G` is sampled and `H` ranges over every graph obtained by
//! deleting a vertex of `G` and inserting a new one anywhere.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::types::verify_difftypes;
use super::{all_graphs, SearchConfig, SearchReport, MAX_STORED};
use crate::blocks::{excess, homogeneous_blocks, is_semi_homogeneous, type_of, BlockDecomposition};
use crate::error::{invalid, Error, Result};
use crate::family::GraphFamily;
use crate::graph::{pair_at, pair_count, OrderedGraph};
use crate::parallel::with_threads;

/// Largest `n` for the lemma checks.
pub const LEMMA_MAX_N: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaMode {
    Exhaustive,
    Random { trials: usize, seed: u64 },
}

impl LemmaMode {
    pub fn name(&self) -> &'static str {
        match self {
            LemmaMode::Exhaustive => "exhaustive",
            LemmaMode::Random { .. } => "random",
        }
    }

    pub fn trials(&self) -> Option<usize> {
        match self {
            LemmaMode::Exhaustive => None,
            LemmaMode::Random { trials, .. } => Some(*trials),
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            LemmaMode::Exhaustive => None,
            LemmaMode::Random { seed, .. } => Some(*seed),
        }
    }
}

/// Generator for trial `i`: one stream per trial, so results do not
/// depend on which worker runs the trial.
pub(crate) fn trial_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// `G - a = G - b = G - c`, `a < b < c` ⇒ `[a, c]` is homogeneous.
    ThreeSaCrowd,
    /// `G - a = G - b`, `a < b` ⇒ `[a, b]` is semi-homogeneous.
    Gagb,
    /// `G - a = H - b`, `a <= b` ⇒ every edge of `G △ H` meets `[a, b]`.
    Edgein,
    /// Three disjoint agreeing intervals force `G = H`.
    ThreeDj,
    /// Four agreeing deletions `a_1 < ... < a_4 <= b_i` ⇒ `[a_2, a_3]` homogeneous.
    FourInARow,
    /// Deleting from a block of size at most two changes the type.
    Typechange,
    /// `|∂_[A] G| >= (|A| - m(G)) / 2`.
    AMinusHalf,
    /// Many members of `∂G` have excess at most `m(G) + 2r + 1`, `r ∈ {1,2,3}`.
    Vsmall,
    /// Joint shadow bound for `t <= 3` graphs of excess at most 2.
    Difftypes,
    /// A union of cliques on `n` vertices has at least `n² / (n + 2e)` components.
    Allcliques,
}

impl Lemma {
    pub const ALL: [Lemma; 10] = [
        Lemma::ThreeSaCrowd,
        Lemma::Gagb,
        Lemma::Edgein,
        Lemma::ThreeDj,
        Lemma::FourInARow,
        Lemma::Typechange,
        Lemma::AMinusHalf,
        Lemma::Vsmall,
        Lemma::Difftypes,
        Lemma::Allcliques,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Lemma::ThreeSaCrowd => "3sacrowd",
            Lemma::Gagb => "gagb",
            Lemma::Edgein => "edgein",
            Lemma::ThreeDj => "3dj",
            Lemma::FourInARow => "4inarow",
            Lemma::Typechange => "typechange",
            Lemma::AMinusHalf => "a-m/2",
            Lemma::Vsmall => "vsmall",
            Lemma::Difftypes => "difftypes",
            Lemma::Allcliques => "allcliques",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Lemma::ALL.iter().map(Lemma::name).collect();
                invalid(format!("unknown lemma {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// A failed instance: the graphs involved and what went wrong.
type Failure = (Vec<OrderedGraph>, String);

#[derive(Default)]
struct Tally {
    checked: u64,
    failures: Vec<Failure>,
    count: u64,
}

impl Tally {
    fn fail(&mut self, graphs: Vec<OrderedGraph>, why: String) {
        self.count += 1;
        if self.failures.len() < MAX_STORED {
            self.failures.push((graphs, why));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.count += other.count;
        for f in other.failures {
            if self.failures.len() < MAX_STORED {
                self.failures.push(f);
            }
        }
        self
    }
}

/// Runs one lemma on `[n]`.
pub fn run_lemma(lemma: Lemma, n: usize, mode: LemmaMode, cfg: &SearchConfig) -> Result<SearchReport> {
    let started = Instant::now();
    match lemma {
        Lemma::Difftypes => {
            let mut r = verify_difftypes(n, 3, 2, mode, cfg)?;
            r.target = format!("lemma:{lemma}");
            return Ok(r);
        }
        Lemma::Allcliques => {
            let mut r = match mode {
                LemmaMode::Exhaustive => allcliques_exhaustive(n)?,
                LemmaMode::Random { trials, seed } => verify_allcliques(n, trials, seed)?,
            };
            r.target = format!("lemma:{lemma}");
            return Ok(r);
        }
        _ => {}
    }
    if n == 0 || n > LEMMA_MAX_N {
        return Err(Error::Feasibility(format!(
            "lemma checks run on 1 <= n <= {LEMMA_MAX_N}, asked for {n}"
        )));
    }
    if mode == LemmaMode::Exhaustive && n > 6 && lemma != Lemma::FourInARow {
        return Err(Error::Feasibility(format!(
            "exhaustive lemma checks are limited to n <= 6, asked for {n}"
        )));
    }
    let ctx = Context::new(n)?;
    let tally = with_threads(cfg.threads, || match lemma {
        Lemma::Edgein | Lemma::ThreeDj | Lemma::FourInARow => pair_lemma(&ctx, lemma, mode),
        _ => single_lemma(&ctx, lemma, mode),
    })?;
    let params = json!({"lemma": lemma.name(), "n": n, "mode": mode.name(), "trials": mode.trials()});
    let mut report = SearchReport::new(format!("lemma:{lemma}"), params);
    report.seed = mode.seed();
    report.checked = tally.checked;
    for (graphs, why) in tally.failures {
        report.violation(GraphFamily::new(n, graphs)?);
        report.findings.push(why);
    }
    report.violations = tally.count;
    Ok(report.finish(started))
}

/// Shared lookup tables for one `n`.
struct Context {
    n: usize,
    /// Excess of every graph on `[n-1]`, by code.
    below_excess: Vec<u8>,
    /// All graphs on `[n]` (exhaustive mode only uses these).
    graphs: Vec<OrderedGraph>,
}

impl Context {
    fn new(n: usize) -> Result<Context> {
        // The empty graph on [0] is given excess 0.
        let below_excess = if n < 2 {
            vec![0]
        } else {
            crate::graph::all_graphs(n - 1)
                .map(|h| excess(&h).map(|m| m as u8))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Context {
            n,
            below_excess,
            graphs: if n <= 6 { all_graphs(n)? } else { Vec::new() },
        })
    }

    fn random_graph(&self, rng: &mut ChaCha8Rng) -> OrderedGraph {
        let bits = pair_count(self.n);
        let code = if bits == 0 { 0 } else { rng.gen::<u64>() & ((1u64 << bits) - 1) };
        OrderedGraph::from_code(self.n, code).expect("n is small")
    }
}

fn deletion_codes(g: &OrderedGraph) -> Vec<u64> {
    g.deletions().map(|(_, h)| h.code()).collect()
}

fn single_lemma(ctx: &Context, lemma: Lemma, mode: LemmaMode) -> Result<Tally> {
    let check = |g: &OrderedGraph| -> Result<Tally> {
        let mut t = Tally::default();
        check_single(ctx, lemma, g, &mut t)?;
        Ok(t)
    };
    let parts: Vec<Result<Tally>> = match mode {
        LemmaMode::Exhaustive => ctx.graphs.par_iter().map(check).collect(),
        LemmaMode::Random { trials, seed } => (0..trials)
            .into_par_iter()
            .map(|i| check(&ctx.random_graph(&mut trial_rng(seed, i as u64))))
            .collect(),
    };
    parts.into_iter().try_fold(Tally::default(), |acc, p| Ok(acc.merge(p?)))
}

fn check_single(ctx: &Context, lemma: Lemma, g: &OrderedGraph, t: &mut Tally) -> Result<()> {
    let n = ctx.n;
    let dels = deletion_codes(g);
    let blocks = homogeneous_blocks(g)?;
    let m = blocks.excess();
    match lemma {
        Lemma::ThreeSaCrowd | Lemma::Gagb => {
            let mut groups: HashMap<u64, Vec<usize>> = HashMap::new();
            for (i, &c) in dels.iter().enumerate() {
                groups.entry(c).or_default().push(i + 1);
            }
            let mut groups: Vec<Vec<usize>> = groups.into_values().collect();
            groups.sort();
            for group in groups {
                if lemma == Lemma::ThreeSaCrowd {
                    if group.len() >= 3 {
                        t.checked += 1;
                        let (a, c) = (group[0], group[group.len() - 1]);
                        if !blocks.covers(a, c) {
                            t.fail(vec![*g], format!("{g}: G-{a} = G-{} = G-{c} but [{a},{c}] is not homogeneous ({blocks})", group[1]));
                        }
                    }
                    continue;
                }
                for (i, &a) in group.iter().enumerate() {
                    for &b in &group[i + 1..] {
                        t.checked += 1;
                        if is_semi_homogeneous(g, a, b)?.is_none() {
                            t.fail(vec![*g], format!("{g}: G-{a} = G-{b} but [{a},{b}] is not semi-homogeneous"));
                        }
                    }
                }
            }
        }
        Lemma::Typechange => {
            if n < 2 {
                return Ok(());
            }
            let tg = type_of(g)?;
            for (&(a, b), size) in blocks.blocks().iter().zip(blocks.sizes()) {
                if size > 2 {
                    continue;
                }
                for v in a..=b {
                    t.checked += 1;
                    if type_of(&g.delete_vertex(v)?)? == tg {
                        t.fail(vec![*g], format!("{g}: deleting {v} from block [{a},{b}] keeps the type {tg}"));
                    }
                }
            }
        }
        Lemma::AMinusHalf => {
            for mask in 0u32..1 << n {
                t.checked += 1;
                let mut seen: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| dels[i]).collect();
                seen.sort_unstable();
                seen.dedup();
                let size_a = mask.count_ones() as i64;
                if 2 * (seen.len() as i64) < size_a - m as i64 {
                    t.fail(vec![*g], format!("{g}: A = {mask:#b} has |dA G| = {} < ({size_a} - {m})/2", seen.len()));
                }
            }
        }
        Lemma::Vsmall => {
            let mut distinct = dels.clone();
            distinct.sort_unstable();
            distinct.dedup();
            for r in 1..=3i64 {
                t.checked += 1;
                let limit = m as i64 + 2 * r + 1;
                let count = distinct
                    .iter()
                    .filter(|&&c| ctx.below_excess[c as usize] as i64 <= limit)
                    .count() as i64;
                // count >= (1 - 1/r) n / 2 - m / 2, times 2r.
                if 2 * r * count < (r - 1) * n as i64 - r * m as i64 {
                    t.fail(vec![*g], format!("{g}: r = {r}, only {count} shadow members with excess <= {limit}"));
                }
            }
        }
        _ => unreachable!("pair lemmas are handled separately"),
    }
    Ok(())
}

fn pair_lemma(ctx: &Context, lemma: Lemma, mode: LemmaMode) -> Result<Tally> {
    let n = ctx.n;
    let parts: Vec<Result<Tally>> = match mode {
        LemmaMode::Exhaustive if n == 7 => forced_four_in_a_row(ctx),
        LemmaMode::Exhaustive => {
            let dels: Vec<Vec<u64>> = ctx.graphs.iter().map(deletion_codes).collect();
            let mut index: HashMap<u64, Vec<usize>> = HashMap::new();
            for (i, d) in dels.iter().enumerate() {
                for &c in d {
                    let list = index.entry(c).or_default();
                    if list.last() != Some(&i) {
                        list.push(i);
                    }
                }
            }
            (0..ctx.graphs.len())
                .into_par_iter()
                .map(|i| {
                    let mut partners: Vec<usize> =
                        dels[i].iter().flat_map(|c| index[c].iter().copied()).collect();
                    partners.sort_unstable();
                    partners.dedup();
                    let mut t = Tally::default();
                    for j in partners {
                        check_pair(lemma, &ctx.graphs[i], &dels[i], &ctx.graphs[j], &dels[j], &mut t)?;
                    }
                    Ok(t)
                })
                .collect()
        }
        LemmaMode::Random { trials, seed } => (0..trials)
            .into_par_iter()
            .map(|i| {
                let g = ctx.random_graph(&mut trial_rng(seed, i as u64));
                let dg = deletion_codes(&g);
                let partners = all_partners(&g)?;
                let mut t = Tally::default();
                for h in partners {
                    check_pair(lemma, &g, &dg, &h, &deletion_codes(&h), &mut t)?;
                }
                Ok(t)
            })
            .collect(),
    };
    parts.into_iter().try_fold(Tally::default(), |acc, p| Ok(acc.merge(p?)))
}

/// Exhaustive 4inarow on `[7]`. Four distinct `b_i >= a_4` force
/// `a = (1, 2, 3, 4)` and `{b_i} = {4, 5, 6, 7}`, so `H - 7` and `H - 4` are
/// among `G - 1, ..., G - 4`, which fixes `H` up to the edge `47`.
fn forced_four_in_a_row(ctx: &Context) -> Vec<Result<Tally>> {
    const CHUNK: u64 = 1 << 12;
    let n = ctx.n;
    let total = 1u64 << pair_count(n);
    (0..total / CHUNK)
        .into_par_iter()
        .map(|c| {
            let mut t = Tally::default();
            for code in c * CHUNK..(c + 1) * CHUNK {
                let g = OrderedGraph::from_code(n, code)?;
                let dg = deletion_codes(&g);
                let partners = forced_partners(&g)?;
                for h in partners {
                    check_pair(Lemma::FourInARow, &g, &dg, &h, &deletion_codes(&h), &mut t)?;
                }
            }
            Ok(t)
        })
        .collect()
}

/// The only graphs that can meet the 4inarow hypothesis with `G` on `[7]`.
fn forced_partners(g: &OrderedGraph) -> Result<Vec<OrderedGraph>> {
    let low = (1..=4).map(|a| g.delete_vertex(a)).collect::<Result<Vec<_>>>()?;
    let mut partners = Vec::with_capacity(24);
    for i in 0..4 {
        for j in (0..4).filter(|&j| j != i) {
            // Vertex 7 of H is vertex 6 of H - 4 = low[j].
            let mut nbrs = 0u64;
            for v in [1, 2, 3, 5, 6] {
                let w = if v < 4 { v } else { v - 1 };
                if low[j].has_edge(w, 6) {
                    nbrs |= 1 << (v - 1);
                }
            }
            for e47 in [0, 1 << 3] {
                partners.push(low[i].insert_vertex(7, nbrs | e47)?);
            }
        }
    }
    partners.sort_unstable();
    partners.dedup();
    Ok(partners)
}

/// Every graph sharing a deletion with `G`.
fn all_partners(g: &OrderedGraph) -> Result<Vec<OrderedGraph>> {
    let n = g.n();
    let mut partners = Vec::with_capacity((n * n) << (n - 1));
    for a in 1..=n {
        let base = g.delete_vertex(a)?;
        for pos in 1..=n {
            for nbrs in 0..1u64 << (n - 1) {
                partners.push(base.insert_vertex(pos, nbrs)?);
            }
        }
    }
    partners.sort_unstable();
    partners.dedup();
    Ok(partners)
}

fn check_pair(lemma: Lemma, g: &OrderedGraph, dg: &[u64], h: &OrderedGraph, dh: &[u64], t: &mut Tally) -> Result<()> {
    let n = g.n();
    // agree[a-1] has bit b-1 set when G - a = H - b.
    let agree: Vec<u32> = (0..n)
        .map(|a| (0..n).filter(|&b| dg[a] == dh[b]).fold(0u32, |acc, b| acc | 1 << b))
        .collect();
    match lemma {
        Lemma::Edgein => {
            let diff = g.code() ^ h.code();
            for a in 1..=n {
                for b in a..=n {
                    if agree[a - 1] >> (b - 1) & 1 == 0 {
                        continue;
                    }
                    t.checked += 1;
                    let mut rest = diff;
                    while rest != 0 {
                        let (i, j) = pair_at(rest.trailing_zeros() as usize);
                        rest &= rest - 1;
                        let inside = |v: usize| a <= v && v <= b;
                        if !inside(i) && !inside(j) {
                            t.fail(vec![*g, *h], format!("G = {g}, H = {h}: G-{a} = H-{b} but edge {i}{j} of G xor H misses [{a},{b}]"));
                        }
                    }
                }
            }
        }
        Lemma::ThreeDj => {
            if g == h {
                return Ok(());
            }
            let mut intervals: Vec<(usize, usize)> = Vec::new();
            for a in 1..=n {
                for b in a..=n {
                    if agree[a - 1] >> (b - 1) & 1 == 1 {
                        intervals.push((a, b));
                    }
                }
            }
            t.checked += 1;
            intervals.sort_by_key(|&(a, b)| (b, a));
            let mut chain = Vec::new();
            let mut last = 0;
            for (a, b) in intervals {
                if a > last {
                    chain.push((a, b));
                    last = b;
                }
            }
            if chain.len() >= 3 {
                t.fail(vec![*g, *h], format!("G = {g} != H = {h} agree on disjoint intervals {:?}", &chain[..3]));
            }
        }
        Lemma::FourInARow => {
            let rows: Vec<usize> = (1..=n).filter(|&a| agree[a - 1] != 0).collect();
            if rows.len() < 4 {
                return Ok(());
            }
            let mut blocks: Option<BlockDecomposition> = None;
            for quad in quadruples(&rows) {
                let a4 = quad[3];
                // Columns b >= a4, as a mask.
                let allowed = !0u32 << (a4 - 1);
                let options: Vec<u32> = quad.iter().map(|&a| agree[a - 1] & allowed).collect();
                if !distinct_choice(&options) {
                    continue;
                }
                t.checked += 1;
                let blocks = match &blocks {
                    Some(b) => b,
                    None => blocks.insert(homogeneous_blocks(g)?),
                };
                if !blocks.covers(quad[1], quad[2]) {
                    t.fail(vec![*g, *h], format!("G = {g}, H = {h}: deletions {quad:?} agree but [{},{}] is not homogeneous", quad[1], quad[2]));
                }
            }
        }
        _ => unreachable!("single-graph lemmas are handled separately"),
    }
    Ok(())
}

fn quadruples(items: &[usize]) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    let k = items.len();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for m in l + 1..k {
                    out.push([items[i], items[j], items[l], items[m]]);
                }
            }
        }
    }
    out
}

/// Whether one bit can be picked from each mask with all bits distinct.
fn distinct_choice(options: &[u32]) -> bool {
    fn go(options: &[u32], used: u32) -> bool {
        let Some((&first, rest)) = options.split_first() else {
            return true;
        };
        let mut free = first & !used;
        while free != 0 {
            let bit = free & free.wrapping_neg();
            if go(rest, used | bit) {
                return true;
            }
            free &= free - 1;
        }
        false
    }
    go(options, 0)
}

/// Components `c` of a union of cliques with sizes `parts`, checked as
/// `c (n + 2e) >= n²`.
fn cliques_hold(parts: &[usize]) -> (bool, usize, usize) {
    let n: usize = parts.iter().sum();
    let e: usize = parts.iter().map(|&s| s * (s.saturating_sub(1)) / 2).sum();
    let c = parts.len();
    ((c as u128) * (n as u128 + 2 * e as u128) >= (n as u128).pow(2), n, e)
}

fn allcliques_exhaustive(n: usize) -> Result<SearchReport> {
    let started = Instant::now();
    if n == 0 || n > 24 {
        return Err(Error::Feasibility(format!("compositions are enumerated for 1 <= n <= 24, asked for {n}")));
    }
    let mut report = SearchReport::new("allcliques", json!({"n": n, "mode": "exhaustive"}));
    // Bit i of the mask cuts between positions i + 1 and i + 2.
    for mask in 0u32..1 << (n - 1) {
        let mut parts = Vec::new();
        let mut run = 1;
        for i in 0..n - 1 {
            if mask >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        report.checked += 1;
        let (ok, _, e) = cliques_hold(&parts);
        if !ok {
            report.violations += 1;
            report.status = super::Status::Counterexamples;
            report.findings.push(format!("clique sizes {parts:?}: {} components < {n}^2 / ({n} + {})", parts.len(), 2 * e));
        }
    }
    Ok(report.finish(started))
}

/// Random compositions of `n ∈ [1, max_n]` into clique sizes, checked
/// against `components >= n² / (n + 2e)`.
pub fn verify_allcliques(max_n: usize, trials: usize, seed: u64) -> Result<SearchReport> {
    let started = Instant::now();
    if max_n == 0 {
        return Err(invalid("max_n must be at least 1"));
    }
    let mut report = SearchReport::new(
        "allcliques",
        json!({"max_n": max_n, "mode": "random", "trials": trials}),
    );
    report.seed = Some(seed);
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let n = rng.gen_range(1..=max_n);
        let mut parts = Vec::new();
        let mut run = 1;
        for _ in 0..n - 1 {
            if rng.gen_bool(0.5) {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        report.checked += 1;
        let (ok, _, e) = cliques_hold(&parts);
        if !ok {
            report.violations += 1;
            report.status = super::Status::Counterexamples;
            if report.findings.len() < MAX_STORED {
                report.findings.push(format!("clique sizes {parts:?}: {} components < {n}^2 / ({n} + {})", parts.len(), 2 * e));
            }
        }
    }
    Ok(report.finish(started))
}
