//! The simplex lattice `Z^d(n)`: nonnegative integer `d`-tuples summing to
//! `n`, with the domination-order shadow, lines, compressions and an
//! exhaustive checker for the shadow/line dichotomy on small levels.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest lattice level whose full subset space is enumerated.
pub const EXHAUSTIVE_POINT_LIMIT: usize = 24;

const RANDOM_POINT_LIMIT: usize = 1 << 20;

/// A point of `Z^d(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<u32>);

impl LatticePoint {
    pub fn new(coords: Vec<u32>) -> Self {
        LatticePoint(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate sum.
    pub fn level(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    /// `self - e_j` (1-based `j`) when coordinate `j` is positive.
    pub fn step_down(&self, j: usize) -> Option<LatticePoint> {
        let c = *self.0.get(j - 1)?;
        if c == 0 {
            return None;
        }
        let mut out = self.0.clone();
        out[j - 1] -= 1;
        Some(LatticePoint(out))
    }

    /// `self + e_j` (1-based `j`).
    pub fn step_up(&self, j: usize) -> LatticePoint {
        let mut out = self.0.clone();
        out[j - 1] += 1;
        LatticePoint(out)
    }

    pub fn dominated_by(&self, other: &LatticePoint) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `|Z^d(n)| = C(n+d-1, d-1)`; `Z^0(0)` holds the empty tuple.
pub fn simplex_size(d: usize, n: usize) -> u128 {
    if d == 0 {
        return u128::from(n == 0);
    }
    let mut acc: u128 = 1;
    for i in 1..d as u128 {
        acc = acc * (n as u128 + i) / i;
    }
    acc
}

/// All points of `Z^d(n)` in lexicographic order.
pub fn simplex_points(d: usize, n: usize) -> Vec<LatticePoint> {
    fn fill(prefix: &mut Vec<u32>, remaining: usize, slots: usize, out: &mut Vec<LatticePoint>) {
        if slots == 1 {
            prefix.push(remaining as u32);
            out.push(LatticePoint(prefix.clone()));
            prefix.pop();
            return;
        }
        for c in 0..=remaining {
            prefix.push(c as u32);
            fill(prefix, remaining - c, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if n == 0 {
            out.push(LatticePoint(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(d), n, d, &mut out);
    out
}

/// Points of the line through coordinates `j < k` (1-based) in `Z^d(n)`.
pub fn line_points(d: usize, n: usize, j: usize, k: usize) -> Vec<LatticePoint> {
    (0..=n)
        .map(|a| {
            let mut c = vec![0u32; d];
            c[j - 1] = a as u32;
            c[k - 1] = (n - a) as u32;
            LatticePoint(c)
        })
        .collect()
}

/// A subset of `Z^d(n)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "LatticeFile", into = "LatticeFile")]
pub struct LatticeSet {
    d: usize,
    n: usize,
    points: Vec<LatticePoint>,
}

/// On-disk JSON form: `{"d": int, "n": int, "points": [[c1, ..., cd], ...]}`.
#[derive(Clone, Serialize, Deserialize)]
pub struct LatticeFile {
    pub d: usize,
    pub n: usize,
    pub points: Vec<Vec<u32>>,
}

impl TryFrom<LatticeFile> for LatticeSet {
    type Error = Error;

    fn try_from(file: LatticeFile) -> Result<Self> {
        LatticeSet::new(file.d, file.n, file.points.into_iter().map(LatticePoint))
    }
}

impl From<LatticeSet> for LatticeFile {
    fn from(set: LatticeSet) -> Self {
        LatticeFile {
            d: set.d,
            n: set.n,
            points: set.points.into_iter().map(|p| p.0).collect(),
        }
    }
}

impl LatticeSet {
    pub fn new<I>(d: usize, n: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticePoint>,
    {
        let mut points: Vec<_> = points.into_iter().collect();
        for p in &points {
            if p.dim() != d || p.level() != n {
                return Err(invalid(format!("{p:?} is not a point of Z^{d}({n})")));
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(LatticeSet { d, n, points })
    }

    fn from_sorted(d: usize, n: usize, mut points: Vec<LatticePoint>) -> Self {
        points.sort_unstable();
        points.dedup();
        LatticeSet { d, n, points }
    }

    /// The whole of `Z^d(n)`.
    pub fn full(d: usize, n: usize) -> Self {
        LatticeSet {
            d,
            n,
            points: simplex_points(d, n),
        }
    }

    pub fn line(d: usize, n: usize, j: usize, k: usize) -> Result<Self> {
        if j == 0 || j >= k || k > d {
            return Err(invalid(format!("({j},{k}) is not a coordinate pair of Z^{d}")));
        }
        Ok(LatticeSet::from_sorted(d, n, line_points(d, n, j, k)))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &LatticeSet) -> bool {
        self.d == other.d && self.n == other.n && self.points.iter().all(|p| other.contains(p))
    }

    /// `∂A`: the points one level down dominated by some member.
    pub fn shadow(&self) -> Result<LatticeSet> {
        if self.n == 0 {
            return Err(invalid("Z^d(0) has no shadow"));
        }
        let down = self
            .points
            .iter()
            .flat_map(|p| (1..=self.d).filter_map(move |j| p.step_down(j)))
            .collect();
        Ok(LatticeSet::from_sorted(self.d, self.n - 1, down))
    }

    /// The first coordinate pair `(j, k)`, scanned lexicographically, whose
    /// whole line lies in the set. On level 0 every line is the single zero
    /// point, so any nonempty set contains one; `(1, 1)` is reported when
    /// `d = 1`.
    pub fn find_line(&self) -> Option<(usize, usize)> {
        if self.n == 0 && !self.points.is_empty() {
            return match self.d {
                0 => None,
                1 => Some((1, 1)),
                _ => Some((1, 2)),
            };
        }
        if self.points.len() < self.n + 1 {
            return None;
        }
        for j in 1..=self.d {
            for k in j + 1..=self.d {
                if line_points(self.d, self.n, j, k).iter().all(|p| self.contains(p)) {
                    return Some((j, k));
                }
            }
        }
        None
    }

    /// Compression in direction `j`: `{x ∈ ∂A : x + e_j ∈ A}`.
    pub fn compress(&self, j: usize) -> Result<LatticeSet> {
        if j == 0 || j > self.d {
            return Err(invalid(format!("direction {j} is not in [1,{}]", self.d)));
        }
        if self.n == 0 {
            return Err(invalid("Z^d(0) cannot be compressed"));
        }
        let down = self.points.iter().filter_map(|p| p.step_down(j)).collect();
        Ok(LatticeSet::from_sorted(self.d, self.n - 1, down))
    }

    /// `F_j = {x ∈ A : x_j = 0}`.
    pub fn face(&self, j: usize) -> Vec<LatticePoint> {
        self.points
            .iter()
            .filter(|p| p.coords()[j - 1] == 0)
            .cloned()
            .collect()
    }

    /// Relabels coordinates: coordinate `i` of the result is coordinate
    /// `perm[i]` of the input (0-based permutation).
    pub fn permute(&self, perm: &[usize]) -> LatticeSet {
        let moved = self
            .points
            .iter()
            .map(|p| LatticePoint(perm.iter().map(|&src| p.0[src]).collect()))
            .collect();
        LatticeSet::from_sorted(self.d, self.n, moved)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lattice serialization is infallible")
    }
}

/// The two line-free sets in `Z^3(n)` of size `2n` with shadow `2n - 1`:
/// the two lowest layers in the third coordinate, and the union of two
/// faces, each with their common corner `(0, n, 0)` removed.
pub fn extremal_sets(n: usize) -> Result<(LatticeSet, LatticeSet)> {
    if n < 2 {
        return Err(invalid("extremal sets need n >= 2"));
    }
    let corner = LatticePoint(vec![0, n as u32, 0]);
    let all = simplex_points(3, n);
    let first = all
        .iter()
        .filter(|p| p.0[2] <= 1 && **p != corner)
        .cloned()
        .collect();
    let second = all
        .iter()
        .filter(|p| (p.0[2] == 0 || p.0[0] == 0) && **p != corner)
        .cloned()
        .collect();
    Ok((
        LatticeSet::from_sorted(3, n, first),
        LatticeSet::from_sorted(3, n, second),
    ))
}

/// How a line-lemma verification explores subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum CheckMode {
    Exhaustive,
    Randomized { trials: u64, seed: u64 },
}

/// Which statement a reported set fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeViolationKind {
    /// `|∂A| < |A|` and `A` contains no line.
    LineDichotomy,
    /// `|∂A| < |A| - 1`.
    ShadowMinusOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeViolation {
    pub kind: LatticeViolationKind,
    pub points: Vec<LatticePoint>,
    pub shadow_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineLemmaParams {
    pub d: usize,
    pub n: usize,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
}

/// Outcome of checking every (or a sample of) `A ⊂ Z^d(n)` with `|A| < 2n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub lemma: &'static str,
    pub params: LineLemmaParams,
    pub checked: u64,
    pub violations: Vec<LatticeViolation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

/// Precomputed index tables for bitmask work over `Z^d(n)`.
struct RankTables {
    points: Vec<LatticePoint>,
    shadow_of: Vec<Vec<usize>>,
    lines: Vec<Vec<usize>>,
}

impl RankTables {
    fn new(d: usize, n: usize) -> Self {
        let points = simplex_points(d, n);
        let lower: HashMap<LatticePoint, usize> = simplex_points(d, n - 1)
            .into_iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let rank: HashMap<&LatticePoint, usize> =
            points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let shadow_of = points
            .iter()
            .map(|p| (1..=d).filter_map(|j| p.step_down(j)).map(|q| lower[&q]).collect())
            .collect();
        let mut lines = Vec::new();
        for j in 1..=d {
            for k in j + 1..=d {
                lines.push(line_points(d, n, j, k).iter().map(|p| rank[p]).collect());
            }
        }
        RankTables {
            points,
            shadow_of,
            lines,
        }
    }
}

fn bit_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}

#[derive(Default)]
struct Tally {
    checked: u64,
    violations: Vec<(Vec<usize>, LatticeViolationKind, usize)>,
}

/// Checks "either `|∂A| >= |A|` or `A` contains a line" together with
/// `|∂A| >= |A| - 1` for subsets with `|A| < 2n`.
pub fn verify_line_lemma(
    d: usize,
    n: usize,
    mode: CheckMode,
    threads: Option<usize>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if d == 0 || n == 0 {
        return Err(invalid("the line lemma needs d >= 1 and n >= 1"));
    }
    let size = simplex_size(d, n);
    let tally = match mode {
        CheckMode::Exhaustive => {
            if size > EXHAUSTIVE_POINT_LIMIT as u128 {
                return Err(Error::Feasibility(format!(
                    "|Z^{d}({n})| = {size} exceeds the exhaustive bound of {EXHAUSTIVE_POINT_LIMIT} points"
                )));
            }
            crate::parallel::with_threads(threads, || exhaustive_line_lemma(d, n))
        }
        CheckMode::Randomized { trials, seed } => {
            if size > RANDOM_POINT_LIMIT as u128 {
                return Err(Error::Feasibility(format!(
                    "|Z^{d}({n})| = {size} exceeds the sampling bound of {RANDOM_POINT_LIMIT} points"
                )));
            }
            randomized_line_lemma(d, n, trials, seed)
        }
    };
    let points = simplex_points(d, n);
    let violations = tally
        .violations
        .into_iter()
        .map(|(indices, kind, shadow_size)| LatticeViolation {
            kind,
            points: indices.iter().map(|&i| points[i].clone()).collect(),
            shadow_size,
        })
        .collect();
    let (mode_name, trials, seed) = match mode {
        CheckMode::Exhaustive => ("exhaustive", None, None),
        CheckMode::Randomized { trials, seed } => ("randomized", Some(trials), Some(seed)),
    };
    Ok(VerificationReport {
        schema: 1,
        lemma: "line",
        params: LineLemmaParams {
            d,
            n,
            mode: mode_name,
            trials,
        },
        checked: tally.checked,
        violations,
        seed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn exhaustive_line_lemma(d: usize, n: usize) -> Tally {
    let tables = RankTables::new(d, n);
    let total = tables.points.len();
    let shadow_masks: Vec<u32> = tables.shadow_of.iter().map(|s| mask_of(s)).collect();
    let line_masks: Vec<u32> = tables.lines.iter().map(|l| mask_of(l)).collect();
    let max_size = (2 * n - 1).min(total);

    // Split on the top `prefix_bits` points; each prefix enumerates the
    // remaining low bits size by size.
    let prefix_bits = total.min(6);
    let low_bits = total - prefix_bits;
    let parts: Vec<Tally> = (0u32..1 << prefix_bits)
        .into_par_iter()
        .map(|prefix| {
            let mut tally = Tally::default();
            let high = (prefix as u64) << low_bits;
            let fixed = prefix.count_ones() as usize;
            for size in 1..=max_size {
                if size < fixed || size - fixed > low_bits {
                    continue;
                }
                for low in combinations(low_bits, size - fixed) {
                    let set = (high | low) as u32;
                    tally.checked += 1;
                    let mut shadow = 0u32;
                    let mut rest = set;
                    while rest != 0 {
                        shadow |= shadow_masks[rest.trailing_zeros() as usize];
                        rest &= rest - 1;
                    }
                    let s = shadow.count_ones() as usize;
                    if s + 1 < size {
                        tally
                            .violations
                            .push((bit_indices(set), LatticeViolationKind::ShadowMinusOne, s));
                    }
                    if s < size && !line_masks.iter().any(|&l| set & l == l) {
                        tally
                            .violations
                            .push((bit_indices(set), LatticeViolationKind::LineDichotomy, s));
                    }
                }
            }
            tally
        })
        .collect();
    let mut merged = Tally::default();
    for part in parts {
        merged.checked += part.checked;
        merged.violations.extend(part.violations);
    }
    merged.violations.sort_unstable();
    merged
}

/// All `k`-subsets of `bits` low bits, in increasing numeric order.
pub(crate) fn combinations(bits: usize, k: usize) -> impl Iterator<Item = u64> {
    let mut next = if k > bits {
        None
    } else {
        Some(if k == 0 { 0 } else { (1u64 << k) - 1 })
    };
    let limit = 1u64 << bits;
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let candidate = (((r ^ cur) >> 2) / c) | r;
            (candidate < limit).then_some(candidate)
        };
        Some(cur)
    })
}

fn randomized_line_lemma(d: usize, n: usize, trials: u64, seed: u64) -> Tally {
    let tables = RankTables::new(d, n);
    let total = tables.points.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    let lower = simplex_size(d, n - 1) as usize;
    let mut in_set = vec![false; total];
    let mut shadow_seen = vec![false; lower];
    for size in 1..(2 * n).min(total + 1) {
        for _ in 0..trials {
            let chosen = rand::seq::index::sample(&mut rng, total, size).into_vec();
            tally.checked += 1;
            for &i in &chosen {
                in_set[i] = true;
            }
            let mut s = 0;
            for &i in &chosen {
                for &q in &tables.shadow_of[i] {
                    if !shadow_seen[q] {
                        shadow_seen[q] = true;
                        s += 1;
                    }
                }
            }
            let has_line = || tables.lines.iter().any(|l| l.iter().all(|&i| in_set[i]));
            let mut sorted = chosen.clone();
            sorted.sort_unstable();
            if s + 1 < size {
                tally
                    .violations
                    .push((sorted.clone(), LatticeViolationKind::ShadowMinusOne, s));
            }
            if s < size && !has_line() {
                tally
                    .violations
                    .push((sorted, LatticeViolationKind::LineDichotomy, s));
            }
            for &i in &chosen {
                in_set[i] = false;
                for &q in &tables.shadow_of[i] {
                    shadow_seen[q] = false;
                }
            }
        }
    }
    tally
}
