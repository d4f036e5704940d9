//! Ordered graphs on `[n]` stored as fixed-width edge bitmasks.
//!
//! Vertex pairs are indexed colexicographically by their larger endpoint:
//! the pair `(i, j)` with `1 <= i < j` occupies bit `(j-1)(j-2)/2 + (i-1)`.
//! A graph literal is `"<n>:<hex>"`, where `<hex>` is the lowercase
//! big-endian hexadecimal value of the whole bitmask.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::family::GraphFamily;

/// Largest vertex count accepted by direct graph operations.
pub const MAX_VERTICES: usize = 32;

const WORDS: usize = 8;
const MAX_PAIRS: usize = MAX_VERTICES * (MAX_VERTICES - 1) / 2;

/// Number of vertex pairs on `[n]`.
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Bit position of the pair `{i, j}` (1-based, `i < j`).
#[inline]
pub const fn pair_index(i: usize, j: usize) -> usize {
    (j - 1) * (j - 2) / 2 + (i - 1)
}

static PAIRS: [(u8, u8); MAX_PAIRS] = build_pair_table();

const fn build_pair_table() -> [(u8, u8); MAX_PAIRS] {
    let mut table = [(0u8, 0u8); MAX_PAIRS];
    let mut j = 2;
    while j <= MAX_VERTICES {
        let mut i = 1;
        while i < j {
            table[pair_index(i, j)] = (i as u8, j as u8);
            i += 1;
        }
        j += 1;
    }
    table
}

/// Inverse of [`pair_index`].
#[inline]
pub fn pair_at(index: usize) -> (usize, usize) {
    let (i, j) = PAIRS[index];
    (i as usize, j as usize)
}

/// A graph on `[n]` together with the natural order of its vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderedGraph {
    n: u8,
    words: [u64; WORDS],
}

impl OrderedGraph {
    /// The edgeless graph on `[n]`.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(invalid(format!(
                "vertex count {n} exceeds the maximum of {MAX_VERTICES}"
            )));
        }
        Ok(OrderedGraph {
            n: n as u8,
            words: [0; WORDS],
        })
    }

    /// The complete graph on `[n]`.
    pub fn complete(n: usize) -> Result<Self> {
        Ok(Self::empty(n)?.complement())
    }

    /// Builds a graph from 1-based pairs `(i, j)` with `i < j`.
    /// Repeated pairs are harmless.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (i, j) in edges {
            if i < 1 || j > n || i >= j {
                return Err(invalid(format!(
                    "pair ({i},{j}) is not a valid edge on [{n}]"
                )));
            }
            g.set_pair(pair_index(i, j));
        }
        Ok(g)
    }

    /// Builds a graph whose bitmask is `code`. Requires `C(n,2) <= 64`.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        let pairs = pair_count(n);
        if pairs > 64 {
            return Err(invalid(format!("[{n}] has too many pairs for a 64-bit code")));
        }
        if pairs < 64 && code >> pairs != 0 {
            return Err(invalid(format!("code {code:#x} has bits beyond C({n},2)")));
        }
        let mut g = Self::empty(n)?;
        g.words[0] = code;
        Ok(g)
    }

    /// The low 64 bits of the bitmask; the whole mask when `n <= 11`.
    #[inline]
    pub fn code(&self) -> u64 {
        self.words[0]
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// `e(G)`.
    pub fn edge_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Adjacency test for two distinct vertices in either order.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v || u == 0 || v == 0 || u > self.n() || v > self.n() {
            return false;
        }
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        self.test_pair(pair_index(i, j))
    }

    /// Edges as 1-based pairs in ascending bit order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.set_bits().map(pair_at)
    }

    /// Neighbourhood of `v` as a bitmask where bit `u-1` stands for vertex `u`.
    pub fn neighbors(&self, v: usize) -> u64 {
        let mut mask = 0u64;
        for u in 1..=self.n() {
            if self.has_edge(u, v) {
                mask |= 1 << (u - 1);
            }
        }
        mask
    }

    /// Appends vertex `n + 1` adjacent to the vertices in `nbrs`
    /// (bit `u - 1` for vertex `u`).
    pub fn extend(&self, nbrs: u64) -> Result<Self> {
        let n = self.n() + 1;
        if n > MAX_VERTICES {
            return Err(invalid(format!("cannot grow past {MAX_VERTICES} vertices")));
        }
        if self.n() < 64 && nbrs >> self.n() != 0 {
            return Err(invalid(format!("neighbourhood {nbrs:#x} reaches past [{}]", self.n())));
        }
        let mut out = *self;
        out.n += 1;
        let mut rest = nbrs;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            out.set_pair(pair_index(u, n));
        }
        Ok(out)
    }

    /// Inserts a new vertex at position `pos` (`1 <= pos <= n + 1`), shifting
    /// later vertices up. `nbrs` names its neighbours among the old vertices
    /// (bit `u - 1` for old vertex `u`). Inverse of [`Self::delete_vertex`].
    pub fn insert_vertex(&self, pos: usize, nbrs: u64) -> Result<Self> {
        let n = self.n();
        if pos < 1 || pos > n + 1 {
            return Err(invalid(format!("position {pos} is outside 1..={}", n + 1)));
        }
        if n >= MAX_VERTICES {
            return Err(invalid(format!("cannot grow past {MAX_VERTICES} vertices")));
        }
        if n < 64 && nbrs >> n != 0 {
            return Err(invalid(format!("neighbourhood {nbrs:#x} reaches past [{n}]")));
        }
        let shift = |u: usize| if u >= pos { u + 1 } else { u };
        let mut out = OrderedGraph {
            n: self.n + 1,
            words: [0; WORDS],
        };
        for idx in self.set_bits() {
            let (i, j) = pair_at(idx);
            out.set_pair(pair_index(shift(i), shift(j)));
        }
        let mut rest = nbrs;
        while rest != 0 {
            let u = shift(rest.trailing_zeros() as usize + 1);
            rest &= rest - 1;
            out.set_pair(pair_index(u.min(pos), u.max(pos)));
        }
        Ok(out)
    }

    /// `G - v`: remove vertex `v` and shift every later vertex down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        if v < 1 || v > self.n() {
            return Err(invalid(format!("vertex {v} is not in [{}]", self.n())));
        }
        Ok(self.remove(v))
    }

    /// Unchecked deletion; `1 <= v <= n`.
    #[inline]
    pub(crate) fn remove(&self, v: usize) -> Self {
        debug_assert!(v >= 1 && v <= self.n());
        let mut out = OrderedGraph {
            n: self.n - 1,
            words: [0; WORDS],
        };
        for idx in self.set_bits() {
            let (i, j) = pair_at(idx);
            if i == v || j == v {
                continue;
            }
            let i2 = if i > v { i - 1 } else { i };
            let j2 = if j > v { j - 1 } else { j };
            out.set_pair(pair_index(i2, j2));
        }
        out
    }

    /// All `n` single-vertex deletions, indexed by the deleted vertex.
    pub fn deletions(&self) -> impl Iterator<Item = (usize, OrderedGraph)> + '_ {
        (1..=self.n()).map(move |v| (v, self.remove(v)))
    }

    /// `G[U]` with the inherited order. `U` may be given in any order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut keep = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&u| u < 1 || u > self.n()) {
            return Err(invalid(format!("vertex {bad} is not in [{}]", self.n())));
        }
        let mut out = Self::empty(keep.len())?;
        for (b, &v) in keep.iter().enumerate() {
            for (a, &u) in keep[..b].iter().enumerate() {
                if self.test_pair(pair_index(u, v)) {
                    out.set_pair(pair_index(a + 1, b + 1));
                }
            }
        }
        Ok(out)
    }

    /// Swaps edges and non-edges.
    pub fn complement(&self) -> Self {
        let pairs = pair_count(self.n());
        let mut out = *self;
        for (w, word) in out.words.iter_mut().enumerate() {
            let lo = w * 64;
            if lo >= pairs {
                *word = 0;
            } else if pairs - lo >= 64 {
                *word = !*word;
            } else {
                *word = !*word & ((1u64 << (pairs - lo)) - 1);
            }
        }
        out
    }

    /// Mirror image: vertex `i` becomes `n + 1 - i`.
    pub fn reverse(&self) -> Self {
        let n = self.n();
        let mut out = OrderedGraph {
            n: self.n,
            words: [0; WORDS],
        };
        for idx in self.set_bits() {
            let (i, j) = pair_at(idx);
            out.set_pair(pair_index(n + 1 - j, n + 1 - i));
        }
        out
    }

    /// `∂G`, the distinct graphs `G - v`.
    pub fn shadow(&self) -> Result<GraphFamily> {
        if self.n() == 0 {
            return Err(invalid("the shadow of the 0-vertex graph is undefined"));
        }
        Ok(GraphFamily::from_sorted_unchecked(
            self.n() - 1,
            sorted_unique(self.deletions().map(|(_, h)| h).collect()),
        ))
    }

    /// `∂_[A] G`, the distinct graphs `G - a` for `a ∈ A`.
    pub fn shadow_restricted(&self, subset: &[usize]) -> Result<GraphFamily> {
        if self.n() == 0 {
            return Err(invalid("the shadow of the 0-vertex graph is undefined"));
        }
        let mut out = Vec::with_capacity(subset.len());
        for &a in subset {
            out.push(self.delete_vertex(a)?);
        }
        Ok(GraphFamily::from_sorted_unchecked(
            self.n() - 1,
            sorted_unique(out),
        ))
    }

    #[inline]
    fn test_pair(&self, idx: usize) -> bool {
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    #[inline]
    fn set_pair(&mut self, idx: usize) {
        self.words[idx / 64] |= 1 << (idx % 64);
    }

    fn set_bits(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }
}

pub(crate) fn sorted_unique(mut graphs: Vec<OrderedGraph>) -> Vec<OrderedGraph> {
    graphs.sort_unstable();
    graphs.dedup();
    graphs
}

impl Ord for OrderedGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for OrderedGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        match self.words.iter().rposition(|&w| w != 0) {
            None => write!(f, "0"),
            Some(top) => {
                write!(f, "{:x}", self.words[top])?;
                for w in self.words[..top].iter().rev() {
                    write!(f, "{w:016x}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedGraph({self})")
    }
}

impl FromStr for OrderedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed graph literal {s:?}"));
        let (n, hex) = s.trim().split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let mut g = OrderedGraph::empty(n)?;
        let hex = hex.trim_start_matches('0');
        if hex.len() > WORDS * 16 || !hex.bytes().all(|c| c.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let digits = hex.as_bytes();
        for (w, chunk) in digits.rchunks(16).enumerate() {
            let text = std::str::from_utf8(chunk).map_err(|_| bad())?;
            g.words[w] = u64::from_str_radix(text, 16).map_err(|_| bad())?;
        }
        if g.set_bits().any(|idx| idx >= pair_count(n)) {
            return Err(Error::Parse(format!(
                "literal {s:?} sets bits beyond C({n},2)"
            )));
        }
        Ok(g)
    }
}

impl Serialize for OrderedGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrderedGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every graph on `[n]` in ascending bitmask order. Requires `n <= 11`.
pub fn all_graphs(n: usize) -> impl Iterator<Item = OrderedGraph> {
    assert!(pair_count(n) < 64, "all_graphs streams at most 2^55 graphs");
    let total = 1u64 << pair_count(n);
    (0..total).map(move |code| OrderedGraph {
        n: n as u8,
        words: {
            let mut w = [0; WORDS];
            w[0] = code;
            w
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> OrderedGraph {
        OrderedGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn insert_then_delete() {
        for base in all_graphs(4) {
            for pos in 1..=5 {
                for nbrs in 0..16u64 {
                    let grown = base.insert_vertex(pos, nbrs).unwrap();
                    assert_eq!(grown.delete_vertex(pos).unwrap(), base);
                    let got: u64 = (1..=4)
                        .filter(|&u| {
                            let w = if u >= pos { u + 1 } else { u };
                            grown.has_edge(w, pos)
                        })
                        .map(|u| 1 << (u - 1))
                        .sum();
                    assert_eq!(got, nbrs);
                }
            }
        }
        assert!(OrderedGraph::empty(3).unwrap().insert_vertex(5, 0).is_err());
        assert!(OrderedGraph::empty(3).unwrap().insert_vertex(1, 8).is_err());
    }

    #[test]
    fn make_graph_examples() {
        assert_eq!(g(3, &[]).code(), 0);
        assert_eq!(g(3, &[(1, 2)]).code(), 1 << pair_index(1, 2));
        assert_eq!(pair_index(1, 2), 0);
        assert_eq!(g(4, &[(1, 2), (3, 4)]).edge_count(), 2);
        assert_eq!(g(4, &[(1, 2), (1, 2)]).edge_count(), 1);
    }

    #[test]
    fn make_graph_rejects_bad_pairs() {
        for pair in [(0, 2), (2, 2), (3, 2), (1, 4)] {
            assert!(matches!(
                OrderedGraph::from_edges(3, [pair]),
                Err(Error::InvalidInput(_))
            ));
        }
        assert!(OrderedGraph::empty(33).is_err());
    }

    #[test]
    fn literals() {
        assert_eq!(g(3, &[(1, 2)]).to_string(), "3:1");
        assert_eq!(g(3, &[(1, 3)]).to_string(), "3:2");
        assert_eq!(g(3, &[(2, 3)]).to_string(), "3:4");
        assert_eq!(g(5, &[]).to_string(), "5:0");
        let big = g(32, &[(31, 32), (1, 2)]);
        let text = big.to_string();
        assert_eq!(text.parse::<OrderedGraph>().unwrap(), big);
        assert_eq!("3:01".parse::<OrderedGraph>().unwrap(), g(3, &[(1, 2)]));
        assert!("3:8".parse::<OrderedGraph>().is_err());
        assert!("3".parse::<OrderedGraph>().is_err());
        assert!("x:1".parse::<OrderedGraph>().is_err());
    }

    #[test]
    fn delete_vertex_examples() {
        assert_eq!(g(5, &[]).delete_vertex(3).unwrap(), g(4, &[]));
        assert_eq!(
            g(4, &[(1, 2), (3, 4)]).delete_vertex(2).unwrap(),
            g(3, &[(2, 3)])
        );
        assert_eq!(g(3, &[(1, 3)]).delete_vertex(2).unwrap(), g(2, &[(1, 2)]));
        assert!(g(3, &[]).delete_vertex(0).is_err());
        assert!(g(3, &[]).delete_vertex(4).is_err());
    }

    #[test]
    fn extend_then_delete_last() {
        for h in all_graphs(4) {
            for nbrs in 0..16 {
                let big = h.extend(nbrs).unwrap();
                assert_eq!(big.remove(5), h);
                assert_eq!(big.neighbors(5), nbrs);
            }
        }
        assert!(g(3, &[]).extend(8).is_err());
    }

    #[test]
    fn induced_examples() {
        let h = g(4, &[(1, 4), (2, 3)]);
        assert_eq!(h.induced(&[1, 2, 3, 4]).unwrap(), h);
        assert_eq!(h.induced(&[]).unwrap(), OrderedGraph::empty(0).unwrap());
        assert_eq!(g(4, &[(1, 4)]).induced(&[1, 2, 4]).unwrap(), g(3, &[(1, 3)]));
        assert!(h.induced(&[5]).is_err());
    }

    #[test]
    fn complement_and_reverse() {
        assert_eq!(g(3, &[]).complement(), OrderedGraph::complete(3).unwrap());
        assert_eq!(g(3, &[(1, 2)]).reverse(), g(3, &[(2, 3)]));
        for h in all_graphs(5) {
            assert_eq!(h.reverse().reverse(), h);
            assert_eq!(h.complement().complement(), h);
        }
        let k32 = OrderedGraph::complete(32).unwrap();
        assert_eq!(k32.edge_count(), 496);
        assert_eq!(k32.complement(), OrderedGraph::empty(32).unwrap());
    }

    #[test]
    fn deletion_commutes_with_symmetries() {
        for n in 1..=5 {
            for h in all_graphs(n) {
                for v in 1..=n {
                    let d = h.remove(v);
                    assert_eq!(h.complement().remove(v), d.complement());
                    assert_eq!(h.reverse().remove(n + 1 - v), d.reverse());
                }
            }
        }
    }

    #[test]
    fn shadow_examples() {
        for n in 1..=6 {
            let e = OrderedGraph::empty(n).unwrap();
            assert_eq!(e.shadow().unwrap().len(), 1);
            let k = OrderedGraph::complete(n).unwrap();
            assert_eq!(k.shadow().unwrap().len(), 1);
        }
        let s = g(5, &[(2, 3)]).shadow().unwrap();
        let expected = [g(4, &[]), g(4, &[(1, 2)]), g(4, &[(2, 3)])];
        assert_eq!(s.members(), &expected[..]);
        assert!(OrderedGraph::empty(0).unwrap().shadow().is_err());
    }

    #[test]
    fn shadow_size_bounds() {
        for n in 1..=5 {
            for h in all_graphs(n) {
                let s = h.shadow().unwrap().len();
                assert!((1..=n).contains(&s));
            }
        }
    }

    #[test]
    fn restricted_shadow() {
        let h = g(5, &[(2, 3), (1, 5)]);
        assert!(h.shadow_restricted(&[]).unwrap().is_empty());
        assert_eq!(h.shadow_restricted(&[1, 2, 3, 4, 5]).unwrap(), h.shadow().unwrap());
        assert_eq!(g(6, &[]).shadow_restricted(&[1, 4]).unwrap().len(), 1);
        assert!(h.shadow_restricted(&[6]).is_err());
    }

    #[test]
    fn ordering_is_by_bitmask() {
        let a = g(12, &[(11, 12)]);
        let b = g(12, &[(1, 2), (1, 3)]);
        assert!(b < a);
        assert!(g(3, &[(1, 2)]) > g(2, &[(1, 2)]));
        let high = g(32, &[(31, 32)]);
        let low = g(32, &[(1, 2), (2, 3), (20, 21)]);
        assert!(low < high);
    }

    #[test]
    fn all_graphs_counts() {
        assert_eq!(all_graphs(0).count(), 1);
        assert_eq!(all_graphs(3).count(), 8);
        assert_eq!(all_graphs(4).count(), 64);
    }
}
