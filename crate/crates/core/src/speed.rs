//! Hereditary properties materialized level by level, their speeds, and the
//! monotonicity check that follows from the shadow inequality.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::families::NamedFamily;
use crate::family::GraphFamily;
use crate::graph::OrderedGraph;

pub const SPEED_SCHEMA: u32 = 1;

/// Largest level `from_forbidden` will enumerate.
pub const FORBIDDEN_MAX_N: usize = 7;

/// How a property was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Named(NamedFamily),
    Closure,
    Forbidden,
    File,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Named(family) => write!(f, "named:{family}"),
            Origin::Closure => write!(f, "closure"),
            Origin::Forbidden => write!(f, "forbidden"),
            Origin::File => write!(f, "file"),
        }
    }
}

/// Levels `P_a, P_{a+1}, ..., P_N` of a (claimed) hereditary property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HereditaryProperty {
    name: String,
    origin: Origin,
    levels: Vec<GraphFamily>,
}

/// On-disk JSON form: `{"name": str?, "levels": [{"n": int, "graphs": [...]}]}`.
#[derive(Serialize, Deserialize)]
struct PropertyFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    levels: Vec<GraphFamily>,
}

impl HereditaryProperty {
    /// Wraps explicit levels, which must have consecutive vertex counts.
    pub fn from_levels(name: impl Into<String>, origin: Origin, mut levels: Vec<GraphFamily>) -> Result<Self> {
        levels.sort_by_key(GraphFamily::n);
        for pair in levels.windows(2) {
            if pair[1].n() != pair[0].n() + 1 {
                return Err(invalid(format!(
                    "levels must be contiguous; found [{}] followed by [{}]",
                    pair[0].n(),
                    pair[1].n()
                )));
            }
        }
        Ok(HereditaryProperty {
            name: name.into(),
            origin,
            levels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn levels(&self) -> &[GraphFamily] {
        &self.levels
    }

    /// Smallest materialized vertex count, if any.
    pub fn first_level(&self) -> Option<usize> {
        self.levels.first().map(GraphFamily::n)
    }

    /// Largest materialized vertex count, if any.
    pub fn last_level(&self) -> Option<usize> {
        self.levels.last().map(GraphFamily::n)
    }

    pub fn level(&self, n: usize) -> Result<&GraphFamily> {
        let first = self.first_level();
        first
            .and_then(|a| n.checked_sub(a))
            .and_then(|i| self.levels.get(i))
            .ok_or_else(|| {
                invalid(format!(
                    "level {n} is not materialized (have {})",
                    self.range_text()
                ))
            })
    }

    fn range_text(&self) -> String {
        match (self.first_level(), self.last_level()) {
            (Some(a), Some(b)) => format!("{a}..={b}"),
            _ => "no levels".to_string(),
        }
    }

    /// The complement of every member, level by level.
    pub fn complement_image(&self) -> HereditaryProperty {
        HereditaryProperty {
            name: format!("complement of {}", self.name),
            origin: self.origin.clone(),
            levels: self.levels.iter().map(GraphFamily::complement_image).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let file = PropertyFile {
            name: Some(self.name.clone()),
            levels: self.levels.clone(),
        };
        serde_json::to_string(&file).expect("property serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PropertyFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        HereditaryProperty::from_levels(file.name.unwrap_or_else(|| "unnamed".into()), Origin::File, file.levels)
    }
}

/// Smallest hereditary property containing `generators`, materialized on
/// levels `1..=max_n` by repeated single-vertex deletion from the top.
pub fn closure(generators: &[GraphFamily], max_n: usize) -> Result<HereditaryProperty> {
    if max_n == 0 {
        return Err(invalid("closure needs at least one level"));
    }
    if let Some(bad) = generators.iter().find(|g| !g.is_empty() && (g.n() > max_n || g.n() == 0)) {
        return Err(invalid(format!(
            "generator on [{}] lies outside levels 1..={max_n}",
            bad.n()
        )));
    }
    let mut levels: Vec<GraphFamily> = Vec::with_capacity(max_n);
    let mut above: Option<GraphFamily> = None;
    for n in (1..=max_n).rev() {
        let mut level = match &above {
            Some(up) => up.shadow()?,
            None => GraphFamily::empty(n),
        };
        for g in generators.iter().filter(|g| g.n() == n) {
            level = level.union(g)?;
        }
        above = Some(level.clone());
        levels.push(level);
    }
    levels.reverse();
    HereditaryProperty::from_levels("closure", Origin::Closure, levels)
}

/// Graphs on `[n]`, `1 <= n <= max_n`, with no induced ordered copy of any
/// pattern.
pub fn from_forbidden(patterns: &[GraphFamily], max_n: usize) -> Result<HereditaryProperty> {
    if max_n > FORBIDDEN_MAX_N {
        return Err(Error::Feasibility(format!(
            "forbidden-pattern enumeration is limited to {FORBIDDEN_MAX_N} vertices, asked for {max_n}"
        )));
    }
    if max_n == 0 {
        return Err(invalid("from_forbidden needs at least one level"));
    }
    let forbids_everything = patterns.iter().any(|p| p.n() == 0 && !p.is_empty());
    let at = |n: usize| -> Vec<&GraphFamily> { patterns.iter().filter(|p| p.n() == n).collect() };
    let mut levels: Vec<GraphFamily> = Vec::with_capacity(max_n);
    let mut prev = GraphFamily::new(0, [OrderedGraph::empty(0)?])?;
    if forbids_everything {
        prev = GraphFamily::empty(0);
    }
    for n in 1..=max_n {
        let banned = at(n);
        let banned = &banned;
        let below = &prev;
        let grown: Vec<OrderedGraph> = below
            .members()
            .par_iter()
            .flat_map_iter(|h| {
                (0u64..1 << (n - 1)).filter_map(move |nbrs| {
                    let g = h.extend(nbrs).expect("extension stays within range");
                    let keep = g.deletions().all(|(_, d)| below.contains(&d))
                        && !banned.iter().any(|p| p.contains(&g));
                    keep.then_some(g)
                })
            })
            .collect();
        let level = GraphFamily::new(n, grown)?;
        prev = level.clone();
        levels.push(level);
    }
    HereditaryProperty::from_levels("forbidden", Origin::Forbidden, levels)
}

/// One of the named hereditary families, on levels `1..=max_n`.
pub fn named_property(family: NamedFamily, max_n: usize) -> Result<HereditaryProperty> {
    let levels = (1..=max_n)
        .map(|n| family.level(n))
        .collect::<Result<Vec<_>>>()?;
    let (ok, witness) = is_hereditary(&levels);
    if !ok {
        let (g, h) = witness.expect("a failed check carries a witness");
        return Err(invalid(format!(
            "{family} is not a hereditary property: {g} has the deletion {h} outside the level below"
        )));
    }
    HereditaryProperty::from_levels(family.to_string(), Origin::Named(family), levels)
}

/// `|P_n|`.
pub fn speed(property: &HereditaryProperty, n: usize) -> Result<usize> {
    property.level(n).map(GraphFamily::len)
}

/// Checks `∂P_n ⊆ P_{n-1}` on every consecutive pair of levels and returns
/// the first member `G` with a deletion `G - v` missing from the level below.
pub fn is_hereditary(levels: &[GraphFamily]) -> (bool, Option<(OrderedGraph, OrderedGraph)>) {
    let mut sorted: Vec<&GraphFamily> = levels.iter().collect();
    sorted.sort_by_key(|l| l.n());
    for pair in sorted.windows(2) {
        let (below, above) = (pair[0], pair[1]);
        if above.n() != below.n() + 1 {
            continue;
        }
        for g in above.iter() {
            if let Some((_, h)) = g.deletions().find(|(_, h)| !below.contains(h)) {
                return (false, Some((*g, h)));
            }
        }
    }
    (true, None)
}

/// Speeds of a property together with monotonicity findings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeedReport {
    pub schema: u32,
    pub name: String,
    pub origin: String,
    pub first_level: usize,
    #[serde(rename = "N")]
    pub last_level: usize,
    pub speeds: Vec<usize>,
    /// Smallest `n` from which the speeds never increase again.
    pub monotone_from: Option<usize>,
    pub findings: Vec<String>,
    /// Subfamilies of some `P_{n+1}` with `|∂𝒢| < |𝒢| < n + 1`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<GraphFamily>,
    pub suspect_implementation: bool,
}

/// Speeds on every materialized level, with the formula checks that apply
/// to the property's origin.
pub fn speed_sequence(property: &HereditaryProperty) -> Result<SpeedReport> {
    let first = property
        .first_level()
        .ok_or_else(|| invalid("property has no materialized levels"))?;
    let speeds: Vec<usize> = property.levels.iter().map(GraphFamily::len).collect();
    let last = first + speeds.len() - 1;
    let mut findings = Vec::new();
    let (hereditary, witness) = is_hereditary(&property.levels);
    if let Some((g, h)) = witness {
        findings.push(format!("not hereditary: {g} has the deletion {h} outside level {}", h.n()));
    }
    if let Origin::Named(family) = property.origin {
        findings.extend(formula_findings(family, first, &speeds));
    }
    Ok(SpeedReport {
        schema: SPEED_SCHEMA,
        name: property.name.clone(),
        origin: property.origin.to_string(),
        first_level: first,
        last_level: last,
        monotone_from: monotone_from(first, &speeds),
        speeds,
        findings,
        witnesses: Vec::new(),
        suspect_implementation: !hereditary && property.origin != Origin::File,
    })
}

fn monotone_from(first: usize, speeds: &[usize]) -> Option<usize> {
    if speeds.is_empty() {
        return None;
    }
    let mut start = speeds.len() - 1;
    while start > 0 && speeds[start - 1] >= speeds[start] {
        start -= 1;
    }
    Some(first + start)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_{i=0}^{k} C(n-i, i)`.
pub fn qk_formula(n: usize, k: usize) -> usize {
    (0..=k).map(|i| binom(n.saturating_sub(i), i)).sum()
}

fn formula_findings(family: NamedFamily, first: usize, speeds: &[usize]) -> Vec<String> {
    let mut out = Vec::new();
    let levels = || speeds.iter().enumerate().map(|(i, &s)| (first + i, s));
    match family {
        NamedFamily::Six(_) | NamedFamily::G1 => {
            let off: Vec<_> = levels().filter(|&(n, s)| s != n).collect();
            if off.is_empty() {
                out.push("speed equals n on every level".into());
            } else {
                out.push(format!("speed differs from n at {off:?}"));
            }
        }
        NamedFamily::Fibonacci | NamedFamily::FibonacciComplement => {
            let broken: Vec<usize> = (2..speeds.len())
                .filter(|&i| speeds[i] != speeds[i - 1] + speeds[i - 2])
                .map(|i| first + i)
                .collect();
            if broken.is_empty() {
                out.push("speeds satisfy s(n) = s(n-1) + s(n-2)".into());
            } else {
                out.push(format!("recurrence s(n) = s(n-1) + s(n-2) fails at n = {broken:?}"));
            }
        }
        NamedFamily::QkConsecutive(k) | NamedFamily::QkNested(k) => {
            let off: Vec<_> = levels()
                .filter(|&(n, s)| s != qk_formula(n, k))
                .map(|(n, s)| (n, s, qk_formula(n, k)))
                .collect();
            if off.is_empty() {
                out.push(format!("speeds match sum_(i<={k}) C(n-i, i)"));
            } else {
                out.push(format!(
                    "speeds differ from sum_(i<={k}) C(n-i, i) at (n, speed, formula) = {off:?}"
                ));
            }
        }
        _ => {}
    }
    out
}

/// Checks `|P_n| <= |P_k|` for `k <= n <= N`, and that the speeds do not
/// increase on that range. Every increase `|P_{n+1}| > |P_n|` with
/// `|P_n| < n` yields a subfamily of `P_{n+1}` whose shadow is smaller
/// than itself; it is recorded as a witness and flags the run as suspect.
pub fn verify_theorem_hered(property: &HereditaryProperty, k: usize) -> Result<SpeedReport> {
    let last = property
        .last_level()
        .ok_or_else(|| invalid("property has no materialized levels"))?;
    if k > last {
        return Err(invalid(format!("k = {k} exceeds the last materialized level {last}")));
    }
    let pk = speed(property, k)?;
    let mut report = speed_sequence(property)?;
    if pk >= k {
        report
            .findings
            .push(format!("k = {k}: |P_k| = {pk} >= k, hypothesis fails, check is vacuous"));
        return Ok(report);
    }
    let mut exceed = Vec::new();
    let mut increases = Vec::new();
    for n in k..=last {
        let pn = speed(property, n)?;
        if pn > pk {
            exceed.push(n);
        }
        if n < last {
            let next = speed(property, n + 1)?;
            if next > pn {
                increases.push(n + 1);
                if pn < n {
                    witness_at(property, n, &mut report)?;
                }
            }
        }
    }
    if exceed.is_empty() && increases.is_empty() {
        report.findings.push(format!(
            "k = {k}: |P_k| = {pk} < k and |P_n| is non-increasing on {k}..={last}"
        ));
    } else {
        if !exceed.is_empty() {
            report
                .findings
                .push(format!("k = {k}: |P_n| > |P_k| = {pk} at n = {exceed:?}"));
        }
        if !increases.is_empty() {
            report
                .findings
                .push(format!("k = {k}: speed increases at n = {increases:?}"));
        }
    }
    Ok(report)
}

/// Runs [`verify_theorem_hered`] for every `k <= max_k` with `|P_k| < k`
/// and merges the findings.
pub fn verify_theorem_hered_all(property: &HereditaryProperty, max_k: usize) -> Result<SpeedReport> {
    let mut report = speed_sequence(property)?;
    let first = report.first_level;
    let top = max_k.min(report.last_level);
    let mut any = false;
    for k in first.max(1)..=top {
        if speed(property, k)? >= k {
            continue;
        }
        any = true;
        let sub = verify_theorem_hered(property, k)?;
        report
            .findings
            .extend(sub.findings.into_iter().filter(|f| f.starts_with(&format!("k = {k}:"))));
        for w in sub.witnesses {
            if !report.witnesses.contains(&w) {
                report.witnesses.push(w);
            }
        }
        report.suspect_implementation |= sub.suspect_implementation;
    }
    if !any {
        report
            .findings
            .push(format!("no k <= {top} has |P_k| < k; nothing to check"));
    }
    Ok(report)
}

fn witness_at(property: &HereditaryProperty, n: usize, report: &mut SpeedReport) -> Result<()> {
    let below = property.level(n)?;
    let above = property.level(n + 1)?;
    let take = below.len() + 1;
    let family = GraphFamily::new(n + 1, above.iter().take(take).copied())?;
    let shadow = family.shadow()?;
    if shadow.len() < family.len() {
        report.findings.push(format!(
            "level {}: {} members with a shadow of {} contradict the shadow inequality",
            n + 1,
            family.len(),
            shadow.len()
        ));
    } else {
        report.findings.push(format!(
            "level {}: extracted subfamily has shadow {} >= {}, so the levels are not hereditary",
            n + 1,
            shadow.len(),
            family.len()
        ));
    }
    report.suspect_implementation = true;
    if !report.witnesses.contains(&family) {
        report.witnesses.push(family);
    }
    Ok(())
}
