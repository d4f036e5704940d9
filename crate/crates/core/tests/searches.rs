use ordshadow::blocks::excess;
use ordshadow::graph::all_graphs;
use ordshadow::search::{
    min_shadow, question_5_1, run_lemma, verify_conjecture_generalk, verify_gline, verify_shadow_theorem,
    Lemma, LemmaMode, SearchConfig, Status,
};
use ordshadow::{Error, GraphFamily, OrderedGraph};

fn shadow_size(graphs: &[OrderedGraph]) -> usize {
    let n = graphs[0].n();
    GraphFamily::new(n, graphs.iter().copied()).unwrap().shadow().unwrap().len()
}

#[test]
fn theorem_at_four_vertices_matches_brute_force() {
    let graphs: Vec<_> = all_graphs(4).collect();
    let mut families = 0u64;
    let mut bad = 0;
    for a in 0..64 {
        families += 1;
        bad += (shadow_size(&[graphs[a]]) < 1) as u32;
        for b in a + 1..64 {
            families += 1;
            bad += (shadow_size(&[graphs[a], graphs[b]]) < 2) as u32;
            for c in b + 1..64 {
                families += 1;
                bad += (shadow_size(&[graphs[a], graphs[b], graphs[c]]) < 3) as u32;
            }
        }
    }
    assert_eq!(families, 64 + 2016 + 41664);
    assert_eq!(bad, 0);
    let r = verify_shadow_theorem(4, 3, &SearchConfig::default()).unwrap();
    assert_eq!(r.status, Status::Verified);
    assert!(r.checked <= families);
}

#[test]
fn theorem_at_five_vertices() {
    let r = verify_shadow_theorem(5, 4, &SearchConfig::default()).unwrap();
    assert!(r.is_verified());
    assert!(r.complete);
}

#[test]
fn theorem_rejects_sizes_outside_its_range() {
    assert!(verify_shadow_theorem(4, 4, &SearchConfig::default()).is_err());
}

#[test]
fn budget_overrun_is_a_feasibility_error() {
    let cfg = SearchConfig { budget: 10, threads: None };
    assert!(matches!(verify_shadow_theorem(5, 4, &cfg), Err(Error::Feasibility(_))));
}

#[test]
fn min_shadow_on_three_vertices_by_brute_force() {
    let graphs: Vec<_> = all_graphs(3).collect();
    for t in 1..=4usize {
        let mut best = usize::MAX;
        for mask in 0u32..1 << graphs.len() {
            if mask.count_ones() as usize == t {
                let chosen: Vec<_> = (0..8).filter(|i| mask >> i & 1 == 1).map(|i| graphs[i]).collect();
                best = best.min(shadow_size(&chosen));
            }
        }
        let r = min_shadow(3, t, &SearchConfig::default()).unwrap();
        assert_eq!(r.value, Some(best as i64), "t = {t}");
        assert_eq!(shadow_size(r.witness.as_ref().unwrap().members()), best);
    }
}

#[test]
fn question_on_excess_zero_pairs_by_brute_force() {
    let flat: Vec<_> = all_graphs(4).filter(|g| excess(g).unwrap() == 0).collect();
    let mut best = usize::MAX;
    for i in 0..flat.len() {
        for j in i + 1..flat.len() {
            best = best.min(shadow_size(&[flat[i], flat[j]]));
        }
    }
    let r = question_5_1(4, &SearchConfig::default()).unwrap();
    assert_eq!(r.value, Some(best as i64));
}

#[test]
fn gline_small_cases() {
    for (n, size) in [(3, 4), (4, 5)] {
        let r = verify_gline(n, size, &SearchConfig::default()).unwrap();
        assert!(r.is_verified(), "{:?}", r.counterexamples);
    }
}

#[test]
fn general_k_conjecture_at_four_vertices() {
    let r = verify_conjecture_generalk(4, 2, 3, &SearchConfig::default()).unwrap();
    assert!(r.complete);
    assert!(r.is_verified());
}

#[test]
fn lemma_reports_are_thread_independent() {
    let mode = LemmaMode::Random { trials: 50, seed: 99 };
    for lemma in Lemma::ALL {
        let mut a = run_lemma(lemma, 6, mode, &SearchConfig { threads: Some(1), ..Default::default() }).unwrap();
        let mut b = run_lemma(lemma, 6, mode, &SearchConfig { threads: Some(3), ..Default::default() }).unwrap();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(a.to_json(), b.to_json(), "{lemma}");
        assert_eq!(a.seed, Some(99));
    }
}
