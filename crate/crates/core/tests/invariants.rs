use proptest::prelude::*;

use ordshadow::blocks::{excess, homogeneous_blocks, type_of};
use ordshadow::lattice::{LatticePoint, LatticeSet};
use ordshadow::{GraphFamily, OrderedGraph};

fn graph(max_n: usize) -> impl Strategy<Value = OrderedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let bits = n * (n - 1) / 2;
        (Just(n), 0u64..1 << bits).prop_map(|(n, code)| OrderedGraph::from_code(n, code).unwrap())
    })
}

proptest! {
    #[test]
    fn shadow_of_a_family_is_the_union(codes in prop::collection::vec(0u64..1 << 15, 1..8)) {
        let graphs: Vec<_> = codes.iter().map(|&c| OrderedGraph::from_code(6, c).unwrap()).collect();
        let family = GraphFamily::new(6, graphs.iter().copied()).unwrap();
        let mut union = GraphFamily::empty(5);
        for g in &graphs {
            union = union.union(&g.shadow().unwrap()).unwrap();
        }
        prop_assert_eq!(family.shadow().unwrap(), union);
    }

    #[test]
    fn shadow_commutes_with_complement_and_reverse(g in graph(8)) {
        prop_assume!(g.n() >= 2);
        let s = g.shadow().unwrap();
        prop_assert_eq!(g.complement().shadow().unwrap(), s.complement_image());
        prop_assert_eq!(g.reverse().shadow().unwrap(), s.reverse_image());
        prop_assert!(s.len() <= g.n());
    }

    #[test]
    fn blocks_partition_the_vertices(g in graph(9)) {
        let b = homogeneous_blocks(&g).unwrap();
        prop_assert_eq!(b.sizes().sum::<usize>(), g.n());
        let mut next = 1;
        for &(s, e) in b.blocks() {
            prop_assert_eq!(s, next);
            prop_assert!(e >= s);
            next = e + 1;
        }
        // Complementing keeps twins twins.
        prop_assert_eq!(&homogeneous_blocks(&g.complement()).unwrap(), &b);
        prop_assert_eq!(excess(&g).unwrap(), b.sizes().map(|s| s.saturating_sub(2)).sum::<usize>());
    }

    #[test]
    fn type_is_fixed_by_blocks_and_links(g in graph(8)) {
        // Re-deriving the type from a copy built edge by edge gives the same answer.
        let copy = OrderedGraph::from_edges(g.n(), g.edges()).unwrap();
        prop_assert_eq!(type_of(&copy).unwrap(), type_of(&g).unwrap());
    }

    #[test]
    fn lattice_shadow_is_monotone(mask in 0u32..1 << 15) {
        let all = LatticeSet::full(3, 4);
        let pts: Vec<LatticePoint> = all.points().iter().enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
        let a = LatticeSet::new(3, 4, pts).unwrap();
        prop_assert!(a.shadow().unwrap().is_subset(&all.shadow().unwrap()));
        for j in 1..=3 {
            let c = a.compress(j).unwrap();
            prop_assert!(c.is_subset(&a.shadow().unwrap()));
        }
    }
}
