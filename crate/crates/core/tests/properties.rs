use disimplicial::classes::bounds;
use disimplicial::elimination::{maximal_elimination_with, RoundStrategy, TransitiveEliminationState};
use disimplicial::oracle::{enumerate_maximal_dicliques, naive_disimplicial_arcs, naive_is_disimplicial};
use disimplicial::transforms::{join_split_roundtrip_check, split_join_roundtrip_check};
use disimplicial::*;
use proptest::prelude::*;

fn digraph(max_n: usize, loops: bool) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * n).prop_map(move |bits| {
            let arcs = (0..n * n)
                .filter(|&b| bits[b] && (loops || b / n != b % n))
                .map(|b| (b / n, b % n));
            Digraph::new(n, arcs.collect::<Vec<_>>()).unwrap()
        })
    })
}

fn st_graph(max_side: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_side, 1..=max_side).prop_flat_map(|(s, t)| {
        proptest::collection::vec(proptest::bool::weighted(0.4), s * t).prop_map(move |bits| {
            let arcs = (0..s * t).filter(|&b| bits[b]).map(|b| (b / t, s + b % t));
            Digraph::new(s + t, arcs.collect::<Vec<_>>()).unwrap()
        })
    })
}

/// A digraph with a matching picked by a bit per arc, greedily.
fn with_matching(max_n: usize) -> impl Strategy<Value = (Digraph, Matching)> {
    digraph(max_n, true).prop_flat_map(|g| {
        let m = g.m();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |pick| {
            let mut used = vec![false; g.n()];
            let mut arcs = Vec::new();
            for ((u, v), take) in g.arcs().zip(pick) {
                if take && !used[u] && !used[v] {
                    used[u] = true;
                    used[v] = true;
                    arcs.push((u, v));
                }
            }
            (g.clone(), Matching::new(arcs).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rebuild_from_arc_dump_is_identical(g in digraph(12, true)) {
        let again = Digraph::new(g.n(), g.arcs()).unwrap();
        prop_assert_eq!(&again, &g);
        prop_assert_eq!(g.arcs().count(), g.m());
        let out_sum: usize = (0..g.n()).map(|v| g.out_degree(v)).sum();
        let in_sum: usize = (0..g.n()).map(|v| g.in_degree(v)).sum();
        prop_assert_eq!((out_sum, in_sum), (g.m(), g.m()));
    }

    #[test]
    fn h_index_is_bounded(g in digraph(12, true)) {
        let s = g.stats();
        let root = (2.0 * s.m as f64).sqrt().ceil() as usize;
        prop_assert!(s.h_index <= s.max_degree.min(root));
    }

    #[test]
    fn twin_free_st_disimplicial_arcs_are_thin(g in st_graph(6)) {
        let (r, _) = repr_reduction(&g);
        let thin = thin_arcs(&r);
        for (v, w) in naive_disimplicial_arcs(&r) {
            prop_assert!(thin.contains(v, w), "{v}->{w} is disimplicial but not thin");
        }
    }

    #[test]
    fn twin_reduction_is_idempotent(g in digraph(10, true)) {
        let (r, _) = repr_reduction(&g);
        let (rr, map) = repr_reduction(&r);
        prop_assert_eq!(&rr, &r);
        prop_assert!(twin_partition(&r).is_twin_free());
        for v in 0..r.n() {
            prop_assert_eq!(map.representative(v), v);
        }
    }

    #[test]
    fn listing_matches_oracle(g in digraph(10, true)) {
        prop_assert_eq!(all_disimplicial_arcs(&g), naive_disimplicial_arcs(&g));
    }

    #[test]
    fn single_arc_queries_match_oracle(g in digraph(10, true)) {
        for (v, w) in g.arcs() {
            prop_assert_eq!(is_disimplicial(&g, v, w).unwrap(), naive_is_disimplicial(&g, v, w));
        }
    }

    #[test]
    fn roundtrips(d in digraph(10, false)) {
        let d = d.reflexive_closure();
        prop_assert!(split_join_roundtrip_check(&d).is_ok());
        let (s, map) = split(&d);
        let m = Matching::new(
            (0..d.n()).map(|v| (map.out_vertex(v).unwrap(), map.in_vertex(v).unwrap())).collect(),
        )
        .unwrap();
        prop_assert!(join_split_roundtrip_check(&s, &m).is_ok());
    }

    #[test]
    fn schemes_validate((g, m) in with_matching(10)) {
        let s = maximal_elimination(&g);
        prop_assert_eq!(check_scheme(&g, &s, None), Ok(()));
        let full = maximal_elimination_with(&g, RoundStrategy::FullScan);
        prop_assert_eq!(check_scheme(&g, &full, None), Ok(()));
        let ms = matched_elimination(&g, &m).unwrap();
        prop_assert_eq!(check_scheme(&g, &ms, Some(&m)), Ok(()));
    }

    #[test]
    fn transitive_elimination_keeps_counters_exact(d in digraph(10, true)) {
        let all: Vec<usize> = (0..d.n()).collect();
        let mut state = TransitiveEliminationState::new(&d, &all);
        prop_assert!(state.stale_counters().is_empty());
        let mut removed = vec![false; d.n()];
        while let Some(v) = state.step() {
            // v was transitive in the digraph left before its removal
            let before = d.without_vertices(&removed);
            prop_assert!(disimplicial::oracle::naive_transitive_vertices(&before)[v]);
            removed[v] = true;
            prop_assert!(state.stale_counters().is_empty());
        }
        let rest = d.without_vertices(&removed);
        let transitive = disimplicial::oracle::naive_transitive_vertices(&rest);
        prop_assert!((0..d.n()).all(|v| removed[v] || !transitive[v]));
    }

    #[test]
    fn class_implications(g in digraph(7, true)) {
        let r = classify(&g);
        prop_assert!(!r.is_di || r.is_wdi);
        prop_assert!(!r.is_dedekind || r.is_order);
        prop_assert_eq!(r.is_wdi, is_wdi(&g));
        prop_assert_eq!(r.is_di, is_di(&g));
    }

    #[test]
    fn maximal_dicliques_are_bound_pairs_of_the_thin_join(g in st_graph(5)) {
        let (g, _) = repr_reduction(&g);
        let (d, map) = join_thin(&g);
        for b in enumerate_maximal_dicliques(&g) {
            let mut lower: Vec<usize> = b.tails.iter().filter_map(|&v| map.joined_by_tail(v)).collect();
            let mut upper: Vec<usize> = b.heads.iter().filter_map(|&w| map.joined_by_head(w)).collect();
            lower.sort_unstable();
            upper.sort_unstable();
            prop_assert_eq!(&bounds(&d, &upper).unwrap().lower, &lower);
            prop_assert_eq!(&bounds(&d, &lower).unwrap().upper, &upper);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn hdigraph_survives_removals(g in digraph(14, true), order in proptest::collection::vec(any::<prop::sample::Index>(), 0..14)) {
        let mut h = HDigraph::new(&g);
        for idx in order {
            let live = h.live_vertices();
            if live.is_empty() {
                break;
            }
            let v = live[idx.index(live.len())];
            h.remove(v).unwrap();
            prop_assert_eq!(h.validate(), Ok(()));
        }
        let current = h.live_digraph();
        let fresh = HDigraph::new(&current);
        let live = h.live_vertices();
        let expected: Vec<_> = fresh.snapshot().into_iter().filter(|s| live.contains(&s.vertex)).collect();
        prop_assert_eq!(h.snapshot(), expected);
        for &v in &live {
            for dir in [Dir::Out, Dir::In] {
                let nbrs = current.neighbors_in(v, dir).to_vec();
                let mut got = h.neighbors(v, dir);
                got.sort_unstable();
                prop_assert_eq!(got, nbrs.clone());
                if nbrs.is_empty() {
                    prop_assert!(h.min_n(v, dir).is_err());
                    continue;
                }
                let key = |z: usize| match dir {
                    Dir::Out => current.in_degree(z),
                    Dir::In => current.out_degree(z),
                };
                let least = nbrs.iter().map(|&z| key(z)).min().unwrap();
                let want: Vec<usize> = nbrs.iter().copied().filter(|&z| key(z) == least).collect();
                prop_assert_eq!(h.min_n(v, dir).unwrap(), want);
                let mut inside: Vec<(usize, usize)> = current
                    .arcs()
                    .filter(|&(a, b)| nbrs.contains(&a) && nbrs.contains(&b))
                    .collect();
                inside.sort_unstable();
                prop_assert_eq!(h.n_prime(v, dir).unwrap(), inside);
            }
        }
    }
}
