use std::collections::BTreeSet;

use super::*;
use crate::bubble::oracle::oracle_enumerate;
use crate::graph::random_digraph;

fn diamond() -> Digraph {
    // s=0, a=1, c=2, t=3
    Digraph::from_arcs(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
}

fn all(g: &Digraph, q: BubbleQuery) -> (Vec<Bubble>, EnumerationReport) {
    collect_bubbles(g, &q, None, Limits::default()).unwrap()
}

#[test]
fn diamond_has_one_bubble() {
    let (bs, rep) = all(&diamond(), BubbleQuery::new(0, 2, 2, 0));
    assert_eq!(bs.len(), 1);
    let b = &bs[0];
    assert_eq!(
        (b.path1.as_slice(), b.path2.as_slice()),
        (&[0, 1, 3][..], &[0, 2, 3][..])
    );
    assert_eq!((b.len1, b.len2, b.branch1, b.branch2), (2, 2, 0, 0));
    assert!(rep.is_complete());
    assert_eq!(rep.barren_nodes, 0);
}

#[test]
fn extra_arc_makes_a_branching_vertex() {
    let g = Digraph::from_arcs(5, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1), (1, 4, 1)]);
    assert!(all(&g, BubbleQuery::new(0, 2, 2, 0)).0.is_empty());
    let (bs, _) = all(&g, BubbleQuery::new(0, 2, 2, 1));
    assert_eq!(bs.len(), 1);
    assert_eq!((bs[0].branch1, bs[0].branch2), (1, 0));
    assert_eq!(oracle_enumerate(&g, &BubbleQuery::new(0, 2, 2, 1)).unwrap().len(), 1);
}

#[test]
fn length_bounds_pair_longer_with_alpha1() {
    // Paths of length 2 and 4 from 0 to 5.
    let g = Digraph::from_arcs(6, [(0, 1, 1), (1, 5, 1), (0, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1)]);
    assert_eq!(all(&g, BubbleQuery::new(0, 4, 2, 9)).0.len(), 1);
    assert_eq!(all(&g, BubbleQuery::new(0, 2, 4, 9)).0.len(), 1);
    assert!(all(&g, BubbleQuery::new(0, 3, 3, 9)).0.is_empty());
    assert!(all(&g, BubbleQuery::new(0, 4, 1, 9)).0.is_empty());
    let b = &all(&g, BubbleQuery::new(0, 4, 2, 9)).0[0];
    assert_eq!((b.len1, b.len2), (4, 2));
}

#[test]
fn low_out_degree_source_is_empty() {
    let g = Digraph::from_arcs(3, [(0, 1, 1), (1, 2, 1)]);
    let (bs, rep) = all(&g, BubbleQuery::new(0, 10, 10, 10));
    assert!(bs.is_empty());
    assert_eq!(rep.nodes, 1);
}

#[test]
fn ring_gadget_has_no_bubbles() {
    let g = crate::repeat::ring_gadget(3).unwrap().graph;
    for s in 0..6 {
        assert!(all(&g, BubbleQuery::new(s, 10, 10, 10)).0.is_empty());
    }
}

#[test]
fn cycles_through_the_source() {
    // 0 -> 1 -> 2 -> 0 plus 0 -> 3 -> 2.
    let g = Digraph::from_arcs(4, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 3, 1), (3, 2, 1), (2, 2, 1)]);
    let (bs, _) = all(&g, BubbleQuery::new(0, 5, 5, 4));
    let want = oracle_enumerate(&g, &BubbleQuery::new(0, 5, 5, 4)).unwrap();
    assert_eq!(bs.into_iter().collect::<BTreeSet<_>>(), want);
    assert_eq!(want.len(), 1);
}

#[test]
fn feasibility_examples() {
    let g = diamond();
    let ep = |v, l, b| Endpoint {
        vertex: v,
        remaining_length: l,
        remaining_branching: b,
    };
    assert!(bubble_feasible(&g, ep(1, 0, 0), ep(1, 0, 0), true).unwrap());
    assert!(bubble_feasible(&g, ep(1, 1, 0), ep(2, 1, 0), true).unwrap());
    assert!(!bubble_feasible(&g, ep(1, 0, 0), ep(2, 0, 0), true).unwrap());
    // Two components.
    let g = Digraph::from_arcs(4, [(0, 1, 1), (2, 3, 1)]);
    assert!(!bubble_feasible(&g, ep(0, 9, 9), ep(2, 9, 9), true).unwrap());
    assert!(bubble_feasible(&g, ep(9, 9, 9), ep(2, 9, 9), true).is_err());
}

#[test]
fn timeouts_and_node_budgets_mark_partial_results() {
    let g = random_digraph(12, 0.4, 1, 3);
    let q = BubbleQuery::new(0, 8, 8, 12);
    let (_, rep) = collect_bubbles(
        &g,
        &q,
        None,
        Limits {
            timeout: Some(Duration::ZERO),
            max_nodes: None,
        },
    )
    .unwrap();
    assert!(matches!(rep.status, Status::PartialEnumeration { .. }));
    assert_eq!(rep.bubbles, 0);

    let (full, _) = all(&g, q);
    assert!(full.len() > 5);
    let (some, rep) = collect_bubbles(
        &g,
        &q,
        None,
        Limits {
            timeout: None,
            max_nodes: Some(10),
        },
    )
    .unwrap();
    let Status::PartialEnumeration { frontier } = rep.status else {
        panic!("expected a partial result")
    };
    assert_eq!(frontier.path1[0], 0);
    assert!(some.len() < full.len());
    assert!(some.iter().all(|b| full.contains(b)));
}

#[test]
fn sink_filter_matches_filtered_full_set() {
    for seed in 0..60 {
        let g = random_digraph(10, 0.3, 1, seed);
        let q = BubbleQuery::new(0, 6, 5, 3);
        let (full, _) = all(&g, q);
        for t in 1..10 {
            let (got, _) = collect_bubbles(&g, &q, Some(t), Limits::default()).unwrap();
            let want: Vec<_> = full.iter().filter(|b| b.sink == t).cloned().collect();
            assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), want.into_iter().collect());
        }
    }
}

#[test]
fn matches_oracle_on_random_graphs() {
    for seed in 0..300 {
        let n = 4 + (seed as usize % 9);
        let w = 1 + seed % 3;
        let mut g = random_digraph(n, 0.25, 1, seed);
        if w > 1 {
            // Mixed weights 1..=3.
            let arcs: Vec<_> = g
                .arcs()
                .map(|(u, a)| (u, a.head, 1 + (u + a.head) as u64 % w))
                .collect();
            g = Digraph::from_arcs(n, arcs);
        }
        for b in [0, 1, 2, n] {
            for alpha in [3, 5, 8] {
                for s in 0..n.min(3) {
                    let q = BubbleQuery::new(s, alpha, alpha - 1, b);
                    let (got, rep) = all(&g, q);
                    let set: BTreeSet<_> = got.iter().cloned().collect();
                    assert_eq!(set.len(), got.len(), "duplicate emitted, seed {seed}");
                    assert!(got.iter().all(Bubble::is_internally_disjoint));
                    assert_eq!(
                        set,
                        oracle_enumerate(&g, &q).unwrap(),
                        "seed {seed} b {b} alpha {alpha}"
                    );
                    assert_eq!(rep.barren_nodes, 0, "seed {seed}");
                }
            }
        }
    }
}

#[test]
fn monotone_in_budgets() {
    for seed in 0..80 {
        let g = random_digraph(9, 0.3, 1, seed);
        let set = |a1, a2, b| {
            all(&g, BubbleQuery::new(0, a1, a2, b))
                .0
                .into_iter()
                .collect::<BTreeSet<_>>()
        };
        for b in 0..3 {
            assert!(set(5, 5, b).is_subset(&set(5, 5, b + 1)));
        }
        assert!(set(4, 3, 2).is_subset(&set(5, 3, 2)));
        assert!(set(5, 3, 2).is_subset(&set(5, 4, 2)));
    }
}

#[test]
fn recursion_tree_has_no_dead_branches() {
    let g = random_digraph(12, 0.35, 1, 99);
    let (bs, rep) = all(&g, BubbleQuery::new(0, 10, 10, 12));
    assert!(!bs.is_empty());
    assert_eq!(rep.barren_nodes, 0);
    // Each internal call has at least one emitting child.
    assert!(rep.nodes <= 1 + bs.len() as u64 * (2 * rep.max_depth as u64 + 1));
}

#[test]
fn parallel_sources_are_ordered_and_deterministic() {
    let g = random_digraph(12, 0.3, 1, 5);
    let a = enumerate_sources(&g, 6, 6, 3, Limits::default());
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| enumerate_sources(&g, 6, 6, 3, Limits::default()));
    let key = |r: &[SourceResult]| {
        r.iter()
            .map(|s| (s.report.source, s.bubbles.clone()))
            .collect::<Vec<_>>()
    };
    assert_eq!(key(&a), key(&b));
    assert!(a.windows(2).all(|w| w[0].report.source < w[1].report.source));
}
