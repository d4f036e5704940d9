use ordshadow::families::NamedFamily;
use ordshadow::search::named_family;
use ordshadow::speed::{named_property, qk_formula, speed_sequence};
use ordshadow::{GraphFamily, OrderedGraph};

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Shadow computed vertex by vertex through `induced`, independent of the
/// bit tricks behind `delete_vertex`.
fn naive_shadow(family: &GraphFamily) -> Vec<OrderedGraph> {
    let n = family.n();
    let mut out = Vec::new();
    for g in family {
        for v in 1..=n {
            let keep: Vec<usize> = (1..=n).filter(|&u| u != v).collect();
            out.push(g.induced(&keep).unwrap());
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[test]
fn g1_is_the_clique_prefix_family() {
    for n in 1..=12 {
        let built: Vec<OrderedGraph> = (1..=n)
            .map(|k| {
                let edges = (1..=k).flat_map(|j| (1..j).map(move |i| (i, j)));
                OrderedGraph::from_edges(n, edges).unwrap()
            })
            .collect();
        let built = GraphFamily::new(n, built).unwrap();
        assert_eq!(named_family("G1", n, None).unwrap(), built);
    }
}

#[test]
fn sharpness_families_have_small_shadows() {
    for n in 5..=12 {
        let g1 = named_family("G1", n, None).unwrap();
        assert_eq!(g1.len(), n);
        assert_eq!(naive_shadow(&g1).len(), n - 1);
        assert_eq!(g1.shadow().unwrap().len(), n - 1);
        let g2 = named_family("G2", n, None).unwrap();
        assert_eq!(g2.len(), n - 1);
        assert_eq!(naive_shadow(&g2).len(), n - 1);
    }
}

#[test]
fn q2_sharp_counts() {
    for n in 5..=10 {
        let f = named_family("Q2-sharp", n, None).unwrap();
        assert_eq!(f.len(), binom(n - 2, 2) + n - 1);
        assert_eq!(naive_shadow(&f).len(), binom(n - 3, 2) + n - 1);
    }
}

#[test]
fn consecutive_edge_speeds_match_the_binomial_sum() {
    for k in 0..=3 {
        let p = named_property(NamedFamily::QkConsecutive(k), 12).unwrap();
        let r = speed_sequence(&p).unwrap();
        for (i, &s) in r.speeds.iter().enumerate() {
            let n = r.first_level + i;
            let direct: usize = (0..=k).map(|j| binom(n.saturating_sub(j), j)).sum();
            assert_eq!(s, direct, "k = {k}, n = {n}");
            assert_eq!(s, qk_formula(n, k));
        }
    }
}

#[test]
fn fibonacci_speeds() {
    let r = speed_sequence(&named_property(NamedFamily::Fibonacci, 12).unwrap()).unwrap();
    let mut expected = vec![1usize, 2];
    while expected.len() < 12 {
        let l = expected.len();
        expected.push(expected[l - 1] + expected[l - 2]);
    }
    assert_eq!(r.speeds, expected);
    let c = speed_sequence(&named_property(NamedFamily::FibonacciComplement, 12).unwrap()).unwrap();
    assert_eq!(c.speeds, expected);
}

#[test]
fn six_properties_have_speed_n() {
    for i in 1..=6 {
        let r = speed_sequence(&named_property(NamedFamily::Six(i), 10).unwrap()).unwrap();
        assert_eq!(r.speeds, (1..=10).collect::<Vec<_>>(), "six-family-{i}");
        assert!(!r.suspect_implementation);
    }
}
