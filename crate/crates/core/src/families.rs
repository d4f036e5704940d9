//! Explicit families of ordered graphs: the two shadow-sharpness families,
//! the level sets of the speed-`n` properties, the Fibonacci properties,
//! both readings of the nested-edge family `Q_k`, and the seeds of the
//! two-edge family bounding `f(k)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::family::GraphFamily;
use crate::graph::OrderedGraph;

/// A family defined for every vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedFamily {
    /// `G_k` with edge set `{ij : i < j <= k}` for `k ∈ [n]`.
    G1,
    /// Single edge `k(k+1)` for `k ∈ [n-1]`.
    G2,
    /// Level set of one of the six speed-`n` properties (1..=6).
    Six(u8),
    /// Pairwise non-adjacent consecutive edges `i(i+1)`.
    Fibonacci,
    /// Complements of the Fibonacci family.
    FibonacciComplement,
    /// At most `k` pairwise non-adjacent consecutive edges.
    QkConsecutive(usize),
    /// Edges `i_1 j_1, ..., i_t j_t` with `i_1 < j_1 < ... < i_t < j_t`, `t <= k`.
    QkNested(usize),
    /// `QkConsecutive(2)` without the empty graph.
    Q2Sharp,
    /// Two consecutive edges `{i(i+1), j(j+1)}` with `i <= k - 1`, `i + 1 < j`.
    FkSeeds(usize),
}

impl NamedFamily {
    /// Names accepted by [`FromStr`].
    pub const NAMES: &'static [&'static str] = &[
        "G1",
        "G2",
        "six-family-1",
        "six-family-2",
        "six-family-3",
        "six-family-4",
        "six-family-5",
        "six-family-6",
        "fibonacci",
        "fibonacci-complement",
        "Qk-consecutive",
        "Qk-nested",
        "Q2-sharp",
        "fk-seeds",
    ];

    /// Parses a name, taking `k` for the parametrised families.
    pub fn parse(name: &str, k: Option<usize>) -> Result<NamedFamily> {
        let need_k = || {
            k.ok_or_else(|| invalid(format!("family {name} needs a parameter k")))
        };
        Ok(match name {
            "G1" => NamedFamily::G1,
            "G2" => NamedFamily::G2,
            "fibonacci" => NamedFamily::Fibonacci,
            "fibonacci-complement" => NamedFamily::FibonacciComplement,
            "Qk-consecutive" => NamedFamily::QkConsecutive(need_k()?),
            "Qk-nested" => NamedFamily::QkNested(need_k()?),
            "Q2-sharp" => NamedFamily::Q2Sharp,
            "fk-seeds" => NamedFamily::FkSeeds(need_k()?),
            other => match other.strip_prefix("six-family-").map(str::parse::<u8>) {
                Some(Ok(i)) if (1..=6).contains(&i) => NamedFamily::Six(i),
                _ => {
                    return Err(invalid(format!(
                        "unknown family {other:?}; expected one of {}",
                        Self::NAMES.join(", ")
                    )))
                }
            },
        })
    }

    /// The members on `[n]`.
    pub fn level(&self, n: usize) -> Result<GraphFamily> {
        let empty = OrderedGraph::empty(n)?;
        let mut members = Vec::new();
        match *self {
            NamedFamily::G1 | NamedFamily::Six(1) => {
                for k in 1..=n {
                    members.push(edges(n, (1..=k).flat_map(|j| (1..j).map(move |i| (i, j))))?);
                }
                if n == 0 {
                    members.push(empty);
                }
            }
            NamedFamily::G2 => {
                for k in 1..n {
                    members.push(edges(n, [(k, k + 1)])?);
                }
            }
            NamedFamily::Six(2) => {
                members.push(empty);
                for k in 1..n {
                    members.push(edges(n, (1..=k).flat_map(|i| (k + 1..=n).map(move |j| (i, j))))?);
                }
            }
            NamedFamily::Six(3) => {
                members.push(empty);
                for k in 2..=n {
                    members.push(edges(n, [(1, k)])?);
                }
            }
            NamedFamily::Six(4) => {
                members.push(empty);
                for k in 1..n {
                    members.push(edges(n, [(k, k + 1)])?);
                }
            }
            NamedFamily::Six(5) => {
                members.push(empty);
                for k in 2..=n {
                    members.push(edges(n, (2..=k).map(|j| (1, j)))?);
                }
            }
            NamedFamily::Six(6) => {
                members.push(empty);
                for k in 1..n {
                    members.push(edges(n, (k + 1..=n).map(|j| (1, j)))?);
                }
            }
            NamedFamily::Six(i) => return Err(invalid(format!("six-family-{i} does not exist"))),
            NamedFamily::Fibonacci => members = consecutive_matchings(n, usize::MAX)?,
            NamedFamily::FibonacciComplement => {
                members = consecutive_matchings(n, usize::MAX)?
                    .iter()
                    .map(OrderedGraph::complement)
                    .collect()
            }
            NamedFamily::QkConsecutive(k) => members = consecutive_matchings(n, k)?,
            NamedFamily::QkNested(k) => members = nested_matchings(n, k)?,
            NamedFamily::Q2Sharp => {
                members = consecutive_matchings(n, 2)?;
                members.retain(|g| g.edge_count() > 0);
            }
            NamedFamily::FkSeeds(k) => {
                for i in 1..=k.saturating_sub(1) {
                    for j in i + 2..n {
                        members.push(edges(n, [(i, i + 1), (j, j + 1)])?);
                    }
                }
            }
        }
        GraphFamily::new(n, members)
    }
}

impl fmt::Display for NamedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedFamily::G1 => write!(f, "G1"),
            NamedFamily::G2 => write!(f, "G2"),
            NamedFamily::Six(i) => write!(f, "six-family-{i}"),
            NamedFamily::Fibonacci => write!(f, "fibonacci"),
            NamedFamily::FibonacciComplement => write!(f, "fibonacci-complement"),
            NamedFamily::QkConsecutive(k) => write!(f, "Qk-consecutive(k={k})"),
            NamedFamily::QkNested(k) => write!(f, "Qk-nested(k={k})"),
            NamedFamily::Q2Sharp => write!(f, "Q2-sharp"),
            NamedFamily::FkSeeds(k) => write!(f, "fk-seeds(k={k})"),
        }
    }
}

impl FromStr for NamedFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedFamily::parse(s, None)
    }
}

fn edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Result<OrderedGraph> {
    OrderedGraph::from_edges(n, pairs)
}

/// Edge sets `{i_1(i_1+1), ..., i_t(i_t+1)}` with `i_j + 1 < i_{j+1}`, `t <= cap`.
fn consecutive_matchings(n: usize, cap: usize) -> Result<Vec<OrderedGraph>> {
    fn go(n: usize, from: usize, left: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        out.push(acc.clone());
        if left == 0 {
            return;
        }
        for i in from..n {
            acc.push((i, i + 1));
            go(n, i + 2, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut sets = Vec::new();
    go(n, 1, cap, &mut Vec::new(), &mut sets);
    sets.into_iter().map(|s| edges(n, s)).collect()
}

/// Edge sets `{i_1 j_1, ..., i_t j_t}` with `i_1 < j_1 < ... < i_t < j_t`, `t <= cap`.
fn nested_matchings(n: usize, cap: usize) -> Result<Vec<OrderedGraph>> {
    fn go(n: usize, from: usize, left: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        out.push(acc.clone());
        if left == 0 {
            return;
        }
        for i in from..=n {
            for j in i + 1..=n {
                acc.push((i, j));
                go(n, j + 1, left - 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut sets = Vec::new();
    go(n, 1, cap, &mut Vec::new(), &mut sets);
    sets.into_iter().map(|s| edges(n, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn sharpness_family_sizes() {
        for n in 2..=12 {
            let g1 = NamedFamily::G1.level(n).unwrap();
            assert_eq!(g1.len(), n);
            assert_eq!(g1.shadow().unwrap().len(), n - 1);
            let g2 = NamedFamily::G2.level(n).unwrap();
            assert_eq!(g2.len(), n - 1);
            assert_eq!(g2.shadow().unwrap().len(), n - 1);
        }
    }

    #[test]
    fn six_families_have_n_members() {
        for i in 1..=6u8 {
            for n in 1..=10 {
                let level = NamedFamily::Six(i).level(n).unwrap();
                assert_eq!(level.len(), n, "six-family-{i} on [{n}]");
                assert!(level.contains(&OrderedGraph::empty(n).unwrap()));
            }
        }
    }

    #[test]
    fn fibonacci_counts() {
        let counts: Vec<_> = (1..=6)
            .map(|n| NamedFamily::Fibonacci.level(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 8, 13]);
        for n in 1..=8 {
            assert_eq!(
                NamedFamily::FibonacciComplement.level(n).unwrap().len(),
                NamedFamily::Fibonacci.level(n).unwrap().len()
            );
        }
    }

    #[test]
    fn qk_readings() {
        assert_eq!(NamedFamily::QkConsecutive(2).level(6).unwrap().len(), 12);
        assert_eq!(NamedFamily::QkNested(1).level(4).unwrap().len(), 1 + binom(4, 2));
        for k in 0..=3usize {
            for n in 0..=12usize {
                let expected: usize = (0..=k).map(|i| binom(n.saturating_sub(i), i)).sum();
                assert_eq!(NamedFamily::QkConsecutive(k).level(n).unwrap().len(), expected);
            }
        }
    }

    #[test]
    fn parse_names() {
        for name in NamedFamily::NAMES {
            assert!(NamedFamily::parse(name, Some(2)).is_ok(), "{name}");
        }
        assert!(NamedFamily::parse("six-family-7", None).is_err());
        assert!(NamedFamily::parse("Qk-nested", None).is_err());
        assert!("bogus".parse::<NamedFamily>().is_err());
        assert_eq!("G1".parse::<NamedFamily>().unwrap(), NamedFamily::G1);
    }

    #[test]
    fn fk_seeds_shape() {
        let seeds = NamedFamily::FkSeeds(3).level(7).unwrap();
        assert!(seeds.iter().all(|g| g.edge_count() == 2));
        // i ∈ {1, 2}; j ranges over i+2..=6.
        assert_eq!(seeds.len(), 4 + 3);
    }
}
