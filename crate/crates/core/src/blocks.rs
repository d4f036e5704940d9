//! Homogeneous blocks, graph types, excess and the map from a type class
//! into the simplex lattice.
//!
//! Two vertices are twins (`x ∼ y`) when `Γ(x) ∖ {y} = Γ(y) ∖ {x}`. A
//! homogeneous block is a maximal run of consecutive, pairwise twin
//! vertices. The type of a graph records the quotient loop-graph over its
//! blocks together with which blocks are singletons; the excess counts how
//! far the non-singleton blocks exceed size two.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::family::GraphFamily;
use crate::graph::OrderedGraph;
use crate::lattice::{line_points, LatticePoint, LatticeSet};

/// Blocks as 1-based inclusive intervals, left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlockDecomposition {
    blocks: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().map(|&(a, b)| b - a + 1)
    }

    /// Index of the block holding vertex `v`.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|&(a, b)| a <= v && v <= b)
    }

    /// Whether `[a, b]` lies inside a single block.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.block_of(a).is_some() && self.block_of(a) == self.block_of(b)
    }

    /// `m(G)`: the sum of `|B| - 2` over blocks of size at least three.
    pub fn excess(&self) -> usize {
        self.sizes().map(|s| s.saturating_sub(2)).sum()
    }
}

impl fmt::Display for BlockDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.blocks {
            write!(f, "[{a},{b}]")?;
        }
        Ok(())
    }
}

impl Serialize for BlockDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn neighbor_masks(g: &OrderedGraph) -> Vec<u64> {
    let mut masks = vec![0u64; g.n() + 1];
    for (i, j) in g.edges() {
        masks[i] |= 1 << (j - 1);
        masks[j] |= 1 << (i - 1);
    }
    masks
}

fn twins(masks: &[u64], x: usize, y: usize) -> bool {
    masks[x] & !(1 << (y - 1)) == masks[y] & !(1 << (x - 1))
}

/// Splits `[n]` into maximal consecutive runs of pairwise twins.
pub fn homogeneous_blocks(g: &OrderedGraph) -> Result<BlockDecomposition> {
    if g.n() == 0 {
        return Err(invalid("the 0-vertex graph has no blocks"));
    }
    let masks = neighbor_masks(g);
    let mut blocks = Vec::new();
    let mut start = 1;
    for v in 2..=g.n() {
        if !(start..v).all(|u| twins(&masks, u, v)) {
            blocks.push((start, v - 1));
            start = v;
        }
    }
    blocks.push((start, g.n()));
    Ok(BlockDecomposition { blocks })
}

/// `T(G) = (H(G), b_G)`.
///
/// `H` is stored as a bitmask over the upper triangle of `[k] × [k]`
/// including the diagonal, row by row. A diagonal entry is set when the
/// block is a clique of size at least two; singleton blocks never carry a
/// loop. `b_i` is 1 for singleton blocks and 2 otherwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GraphType {
    k: usize,
    links: Vec<u64>,
    b: Vec<u8>,
}

impl GraphType {
    /// Builds a type from its parts. `links(i, j)` is queried for
    /// `1 <= i <= j <= k`.
    pub fn new<F>(b: Vec<u8>, links: F) -> Result<GraphType>
    where
        F: Fn(usize, usize) -> bool,
    {
        if let Some(bad) = b.iter().find(|&&x| x != 1 && x != 2) {
            return Err(invalid(format!("block class {bad} is not 1 or 2")));
        }
        let k = b.len();
        let mut t = GraphType {
            k,
            links: vec![0; (k * (k + 1) / 2).div_ceil(64)],
            b,
        };
        for i in 1..=k {
            for j in i..=k {
                if links(i, j) {
                    let idx = t.link_index(i, j);
                    t.links[idx / 64] |= 1 << (idx % 64);
                }
            }
        }
        Ok(t)
    }

    fn link_index(&self, i: usize, j: usize) -> usize {
        let k = self.k;
        (i - 1) * (k + 1) - (i - 1) * i / 2 + (j - i)
    }

    /// Number of blocks.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> &[u8] {
        &self.b
    }

    /// Whether `ij ∈ E(H)` (loops when `i = j`).
    pub fn has_link(&self, i: usize, j: usize) -> bool {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let idx = self.link_index(i, j);
        self.links[idx / 64] >> (idx % 64) & 1 == 1
    }

    /// `d_T`: the number of non-singleton blocks.
    pub fn d(&self) -> usize {
        self.b.iter().filter(|&&x| x == 2).count()
    }

    pub fn singletons(&self) -> usize {
        self.k - self.d()
    }

    /// Lowercase big-endian hex of the link bitmask.
    fn links_hex(&self) -> String {
        match self.links.iter().rposition(|&w| w != 0) {
            None => "0".into(),
            Some(top) => {
                let mut s = format!("{:x}", self.links[top]);
                for w in self.links[..top].iter().rev() {
                    s.push_str(&format!("{w:016x}"));
                }
                s
            }
        }
    }
}

impl fmt::Display for GraphType {
    /// `k=<k>;H=<hex>;b=<bits>`, with `1` marking a non-singleton block.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.b.iter().map(|&x| if x == 2 { '1' } else { '0' }).collect();
        write!(f, "k={};H={};b={}", self.k, self.links_hex(), bits)
    }
}

impl Serialize for GraphType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn type_from_blocks(g: &OrderedGraph, blocks: &BlockDecomposition) -> GraphType {
    let bl = blocks.blocks();
    let b = bl.iter().map(|&(s, e)| if s == e { 1 } else { 2 }).collect();
    GraphType::new(b, |i, j| {
        let (si, ei) = bl[i - 1];
        if i == j {
            return ei > si && g.has_edge(si, si + 1);
        }
        // Adjacency between distinct blocks is all-or-nothing.
        g.has_edge(si, bl[j - 1].0)
    })
    .expect("block classes are 1 or 2")
}

pub fn type_of(g: &OrderedGraph) -> Result<GraphType> {
    let blocks = homogeneous_blocks(g)?;
    Ok(type_from_blocks(g, &blocks))
}

/// `m(G)`.
pub fn excess(g: &OrderedGraph) -> Result<usize> {
    Ok(homogeneous_blocks(g)?.excess())
}

/// `m_n(T) = n - #{b_i = 1} - 2·#{b_i = 2}`.
pub fn type_excess(t: &GraphType, n: usize) -> Result<usize> {
    let floor = t.singletons() + 2 * t.d();
    if n < floor {
        return Err(Error::Unrealizable(format!(
            "type {t} needs at least {floor} vertices, not {n}"
        )));
    }
    let m = n - floor;
    if t.d() == 0 && m > 0 {
        return Err(Error::Unrealizable(format!(
            "type {t} has only singleton blocks and fits exactly {floor} vertices, not {n}"
        )));
    }
    Ok(m)
}

/// `φ(G) = (|B| - 2)` over the non-singleton blocks, left to right.
pub fn phi(g: &OrderedGraph) -> Result<LatticePoint> {
    let blocks = homogeneous_blocks(g)?;
    Ok(phi_of_blocks(&blocks))
}

fn phi_of_blocks(blocks: &BlockDecomposition) -> LatticePoint {
    LatticePoint::new(
        blocks
            .sizes()
            .filter(|&s| s >= 2)
            .map(|s| (s - 2) as u32)
            .collect(),
    )
}

/// The graph on `[n]` of type `t` whose non-singleton blocks have sizes
/// `x_i + 2`.
pub fn realize(t: &GraphType, x: &LatticePoint, n: usize) -> Result<OrderedGraph> {
    let m = type_excess(t, n)?;
    if x.dim() != t.d() || x.level() != m {
        return Err(invalid(format!(
            "{x:?} is not a point of Z^{}({m})",
            t.d()
        )));
    }
    let mut extra = x.coords().iter();
    let mut bounds = Vec::with_capacity(t.k());
    let mut next = 1;
    for &class in t.b() {
        let size = if class == 1 {
            1
        } else {
            *extra.next().expect("dimension checked") as usize + 2
        };
        bounds.push((next, next + size - 1));
        next += size;
    }
    let mut edges = Vec::new();
    for i in 1..=t.k() {
        let (si, ei) = bounds[i - 1];
        if t.has_link(i, i) {
            for u in si..=ei {
                for v in u + 1..=ei {
                    edges.push((u, v));
                }
            }
        }
        for j in i + 1..=t.k() {
            if t.has_link(i, j) {
                let (sj, ej) = bounds[j - 1];
                for u in si..=ei {
                    for v in sj..=ej {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    let g = OrderedGraph::from_edges(n, edges)?;
    if &type_of(&g)? != t {
        return Err(Error::Unrealizable(format!(
            "blocks of {t} do not survive as homogeneous blocks on [{n}]"
        )));
    }
    Ok(g)
}

/// `𝒢_T` for every type present in the family.
pub fn group_by_type(family: &GraphFamily) -> Result<BTreeMap<GraphType, GraphFamily>> {
    let mut groups: BTreeMap<GraphType, Vec<OrderedGraph>> = BTreeMap::new();
    for g in family {
        groups.entry(type_of(g)?).or_default().push(*g);
    }
    groups
        .into_iter()
        .map(|(t, members)| Ok((t, GraphFamily::new(family.n(), members)?)))
        .collect()
}

/// `∂_τ G`: the deletions of `G` that keep its type.
pub fn shadow_within_type(g: &OrderedGraph) -> Result<Vec<OrderedGraph>> {
    if g.n() <= 1 {
        return Err(invalid("shadow within types needs n >= 2"));
    }
    let t = type_of(g)?;
    let mut out = Vec::new();
    for (_, h) in g.deletions() {
        if type_of(&h)? == t {
            out.push(h);
        }
    }
    Ok(out)
}

/// `∂_τ 𝒢 = ⋃ ∂_τ G`.
pub fn shadow_within_types(family: &GraphFamily) -> Result<GraphFamily> {
    if family.n() <= 1 {
        return Err(invalid("shadow within types needs n >= 2"));
    }
    let mut all = Vec::new();
    for g in family {
        all.extend(shadow_within_type(g)?);
    }
    GraphFamily::new(family.n() - 1, all)
}

/// Finds a line inside a single type class: a subfamily whose `φ`-image is
/// a full line of `Z^{d_T}(m_n(T))`. Lines are tried by coordinate pair in
/// lexicographic order. When `m_n(T) = 0` any single member is a line.
pub fn contains_line(family: &GraphFamily) -> Result<Option<GraphFamily>> {
    let Some(first) = family.iter().next() else {
        return Ok(None);
    };
    let n = family.n();
    let t = type_of(first)?;
    let mut by_point: HashMap<LatticePoint, OrderedGraph> = HashMap::new();
    for g in family {
        let blocks = homogeneous_blocks(g)?;
        if type_from_blocks(g, &blocks) != t {
            return Err(invalid("contains_line needs a family of a single type"));
        }
        by_point.insert(phi_of_blocks(&blocks), *g);
    }
    let m = type_excess(&t, n)?;
    if m == 0 {
        return Ok(Some(GraphFamily::new(n, [*first])?));
    }
    if family.len() < m + 1 {
        return Ok(None);
    }
    let image = LatticeSet::new(t.d(), m, by_point.keys().cloned())?;
    match image.find_line() {
        None => Ok(None),
        Some((j, k)) => {
            let members = line_points(t.d(), m, j, k)
                .into_iter()
                .map(|p| by_point[&p])
                .collect::<Vec<_>>();
            Ok(Some(GraphFamily::new(n, members)?))
        }
    }
}

/// Returns the distance set `L` when `[a, b]` is semi-homogeneous: all of
/// its vertices share their neighbourhood outside the interval, and inside
/// it `xy` is an edge exactly when `|x - y| ∈ L`.
pub fn is_semi_homogeneous(g: &OrderedGraph, a: usize, b: usize) -> Result<Option<Vec<usize>>> {
    if a < 1 || a > b || b > g.n() {
        return Err(invalid(format!("[{a},{b}] is not an interval of [{}]", g.n())));
    }
    let masks = neighbor_masks(g);
    let inside: u64 = ((1u64 << (b - a + 1)) - 1) << (a - 1);
    if (a..=b).any(|x| masks[x] & !inside != masks[a] & !inside) {
        return Ok(None);
    }
    let mut distances = Vec::new();
    for delta in 1..=b - a {
        let first = g.has_edge(a, a + delta);
        if (a + 1..=b - delta).any(|x| g.has_edge(x, x + delta) != first) {
            return Ok(None);
        }
        if first {
            distances.push(delta);
        }
    }
    Ok(Some(distances))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_graphs;

    fn g(n: usize, edges: &[(usize, usize)]) -> OrderedGraph {
        OrderedGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn clique_prefix(n: usize, k: usize) -> OrderedGraph {
        let edges: Vec<_> = (1..=k).flat_map(|j| (1..j).map(move |i| (i, j))).collect();
        g(n, &edges)
    }

    #[test]
    fn blocks_examples() {
        for n in 1..=7 {
            let k = OrderedGraph::complete(n).unwrap();
            assert_eq!(homogeneous_blocks(&k).unwrap().blocks(), &[(1, n)]);
        }
        for n in 5..=9 {
            for k in 2..=n - 3 {
                let h = g(n, &[(k, k + 1)]);
                assert_eq!(
                    homogeneous_blocks(&h).unwrap().blocks(),
                    &[(1, k - 1), (k, k + 1), (k + 2, n)]
                );
            }
        }
        for n in 6..=10 {
            for k in 3..=n - 3 {
                assert_eq!(
                    homogeneous_blocks(&clique_prefix(n, k)).unwrap().blocks(),
                    &[(1, k), (k + 1, n)]
                );
            }
        }
        assert_eq!(homogeneous_blocks(&g(3, &[(1, 2)])).unwrap().to_string(), "[1,2][3,3]");
        assert!(homogeneous_blocks(&OrderedGraph::empty(0).unwrap()).is_err());
    }

    #[test]
    fn twin_relation_is_transitive_on_runs() {
        // Checking each new vertex against the whole run agrees with
        // checking it against its left neighbour only.
        for n in 1..=6 {
            for h in all_graphs(n) {
                let masks = neighbor_masks(&h);
                let mut runs = vec![];
                let mut start = 1;
                for v in 2..=n {
                    if !twins(&masks, v - 1, v) {
                        runs.push((start, v - 1));
                        start = v;
                    }
                }
                runs.push((start, n));
                assert_eq!(homogeneous_blocks(&h).unwrap().blocks(), &runs[..]);
            }
        }
    }

    #[test]
    fn type_examples() {
        for n in 2..=6 {
            let e = type_of(&OrderedGraph::empty(n).unwrap()).unwrap();
            assert_eq!((e.k(), e.b()), (1, &[2u8][..]));
            assert!(!e.has_link(1, 1));
            let k = type_of(&OrderedGraph::complete(n).unwrap()).unwrap();
            assert_eq!((k.k(), k.b()), (1, &[2u8][..]));
            assert!(k.has_link(1, 1));
        }
        let t = type_of(&g(8, &[(3, 4)])).unwrap();
        assert_eq!(t.k(), 3);
        assert_eq!(t.b(), &[2, 2, 2]);
        for i in 1..=3 {
            for j in i..=3 {
                assert_eq!(t.has_link(i, j), (i, j) == (2, 2));
            }
        }
        let t = type_of(&g(5, &[(2, 3)])).unwrap();
        assert_eq!(t.b(), &[1, 2, 2]);
        assert_eq!(t.to_string(), "k=3;H=8;b=011");
    }

    #[test]
    fn excess_examples() {
        for n in 3..=8 {
            assert_eq!(excess(&OrderedGraph::complete(n).unwrap()).unwrap(), n - 2);
        }
        assert_eq!(excess(&clique_prefix(10, 5)).unwrap(), 6);
        assert_eq!(excess(&g(4, &[(1, 2), (3, 4)])).unwrap(), 0);
    }

    #[test]
    fn type_excess_examples() {
        let empty_type = type_of(&OrderedGraph::empty(4).unwrap()).unwrap();
        assert_eq!(type_excess(&empty_type, 7).unwrap(), 5);
        let t = GraphType::new(vec![1, 2, 1], |_, _| false).unwrap();
        assert_eq!(type_excess(&t, 6).unwrap(), 2);
        let pair = GraphType::new(vec![1, 1], |_, _| false).unwrap();
        assert_eq!(type_excess(&pair, 2).unwrap(), 0);
        assert!(matches!(type_excess(&pair, 3), Err(Error::Unrealizable(_))));
        assert!(matches!(type_excess(&t, 3), Err(Error::Unrealizable(_))));
    }

    #[test]
    fn phi_examples() {
        let p = phi(&OrderedGraph::complete(6).unwrap()).unwrap();
        assert_eq!(p.coords(), &[4]);
        // Blocks of sizes 1, 2, 3: vertex 1 alone, {2,3} adjacent, {4,5,6} empty.
        let h = g(6, &[(2, 3)]);
        assert_eq!(homogeneous_blocks(&h).unwrap().blocks(), &[(1, 1), (2, 3), (4, 6)]);
        assert_eq!(phi(&h).unwrap().coords(), &[0, 1]);
        let small = g(4, &[(1, 2), (3, 4)]);
        assert!(phi(&small).unwrap().coords().iter().all(|&c| c == 0));
    }

    #[test]
    fn realize_round_trips_exhaustively() {
        for n in 1..=6 {
            let mut seen: HashMap<(GraphType, LatticePoint), OrderedGraph> = HashMap::new();
            for h in all_graphs(n) {
                let t = type_of(&h).unwrap();
                let x = phi(&h).unwrap();
                assert_eq!(realize(&t, &x, n).unwrap(), h);
                assert_eq!(x.level(), type_excess(&t, n).unwrap());
                assert_eq!(x.level(), excess(&h).unwrap());
                assert!(seen.insert((t, x), h).is_none(), "φ is not injective at {h}");
            }
        }
    }

    #[test]
    fn realize_examples_and_errors() {
        let empty_type = type_of(&OrderedGraph::empty(3).unwrap()).unwrap();
        let x = LatticePoint::new(vec![3]);
        assert_eq!(realize(&empty_type, &x, 5).unwrap(), OrderedGraph::empty(5).unwrap());
        // Two empty non-singleton blocks with nothing between them merge.
        let merged = GraphType::new(vec![2, 2], |_, _| false).unwrap();
        let zero = LatticePoint::new(vec![0, 0]);
        assert!(matches!(realize(&merged, &zero, 4), Err(Error::Unrealizable(_))));
        // A loop on a singleton block is not a valid type.
        let looped = GraphType::new(vec![1], |_, _| true).unwrap();
        assert!(matches!(
            realize(&looped, &LatticePoint::new(vec![]), 1),
            Err(Error::Unrealizable(_))
        ));
        assert!(realize(&empty_type, &LatticePoint::new(vec![2]), 5).is_err());
    }

    #[test]
    fn group_by_type_examples() {
        let f = GraphFamily::new(
            4,
            [OrderedGraph::empty(4).unwrap(), OrderedGraph::complete(4).unwrap()],
        )
        .unwrap();
        let groups = group_by_type(&f).unwrap();
        assert_eq!(groups.len(), 2);
        assert!(groups.values().all(|m| m.len() == 1));
        assert!(group_by_type(&GraphFamily::empty(4)).unwrap().is_empty());

        for n in 6..=9 {
            let g2 = GraphFamily::new(n, (1..n).map(|k| g(n, &[(k, k + 1)]))).unwrap();
            let groups = group_by_type(&g2).unwrap();
            assert_eq!(groups.values().map(GraphFamily::len).sum::<usize>(), n - 1);
            // Edges at 1 and n-1 give two end types; edges at 2 and n-2
            // leave a singleton end block; the rest share one type.
            let mut sizes: Vec<_> = groups.values().map(GraphFamily::len).collect();
            sizes.sort();
            assert_eq!(sizes, vec![1, 1, 1, 1, n - 5]);
        }
    }

    #[test]
    fn shadow_within_types_examples() {
        for n in 3..=7 {
            let k = GraphFamily::new(n, [OrderedGraph::complete(n).unwrap()]).unwrap();
            let s = shadow_within_types(&k).unwrap();
            assert_eq!(s.members(), &[OrderedGraph::complete(n - 1).unwrap()]);
        }
        let small = GraphFamily::new(4, [g(4, &[(1, 2), (3, 4)]), g(4, &[(2, 3)])]).unwrap();
        assert!(shadow_within_types(&small).unwrap().is_empty());
        assert!(shadow_within_types(&GraphFamily::empty(1)).is_err());
        let all: Vec<_> = all_graphs(5).collect();
        for chunk in all.chunks(7) {
            let f = GraphFamily::new(5, chunk.iter().copied()).unwrap();
            assert!(shadow_within_types(&f).unwrap().is_subset(&f.shadow().unwrap()));
        }
    }

    #[test]
    fn typechange_exhaustive() {
        for n in 2..=6 {
            for h in all_graphs(n) {
                let blocks = homogeneous_blocks(&h).unwrap();
                let t = type_from_blocks(&h, &blocks);
                for &(a, b) in blocks.blocks() {
                    if b - a < 2 {
                        for v in a..=b {
                            assert_ne!(type_of(&h.remove(v)).unwrap(), t, "{h} - {v}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn contains_line_examples() {
        // The empty graph is alone in its type class; with m > 0 it is not a line.
        for n in 3..=7 {
            let e = GraphFamily::new(n, [OrderedGraph::empty(n).unwrap()]).unwrap();
            assert_eq!(contains_line(&e).unwrap(), None);
        }
        // Clique on a prefix of size 2..=4 followed by an empty block on [6]:
        // the type class is Z^2(2), a line of three graphs.
        let class = GraphFamily::new(6, (2..=4).map(|k| clique_prefix(6, k))).unwrap();
        assert_eq!(group_by_type(&class).unwrap().len(), 1);
        let line = contains_line(&class).unwrap().unwrap();
        assert_eq!(line, class);
        let partial = GraphFamily::new(6, (2..=3).map(|k| clique_prefix(6, k))).unwrap();
        assert_eq!(contains_line(&partial).unwrap(), None);
        // Excess zero: every single member is a degenerate line.
        let single = GraphFamily::new(4, [g(4, &[(1, 2), (3, 4)])]).unwrap();
        assert_eq!(contains_line(&single).unwrap(), Some(single.clone()));
        let mixed = GraphFamily::new(
            4,
            [OrderedGraph::empty(4).unwrap(), OrderedGraph::complete(4).unwrap()],
        )
        .unwrap();
        assert!(contains_line(&mixed).is_err());
        assert_eq!(contains_line(&GraphFamily::empty(4)).unwrap(), None);
    }

    #[test]
    fn semi_homogeneous_examples() {
        assert_eq!(is_semi_homogeneous(&g(4, &[(1, 2), (3, 4)]), 1, 4).unwrap(), None);
        let h = g(5, &[(1, 3), (2, 4), (3, 5)]);
        assert_eq!(is_semi_homogeneous(&h, 1, 5).unwrap(), Some(vec![2]));
        for n in 1..=5 {
            for h in all_graphs(n) {
                for a in 1..=n {
                    assert_eq!(is_semi_homogeneous(&h, a, a).unwrap(), Some(vec![]));
                }
                for &(a, b) in homogeneous_blocks(&h).unwrap().blocks() {
                    let l = is_semi_homogeneous(&h, a, b).unwrap().unwrap();
                    assert!(l.is_empty() || l == (1..=b - a).collect::<Vec<_>>());
                }
            }
        }
        assert!(is_semi_homogeneous(&h, 3, 2).is_err());
        assert!(is_semi_homogeneous(&h, 1, 6).is_err());
    }
}
