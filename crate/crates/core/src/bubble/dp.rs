//! Shortest paths that pass through a bounded number of branching vertices.
//!
//! States are (vertex, charges so far). A vertex is charged when a path
//! leaves it, so the endpoint of a path is never charged and the start only
//! when `count_source` is set. Charges never decrease along a path, which
//! makes a label-setting search over (length, charges) exact: states are
//! popped in length order and a state is kept only if it uses strictly
//! fewer charges than every state already settled at its vertex.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexId};

const UNSET: u32 = u32::MAX;

/// The subgraph a search runs in: removed vertices are skipped and cut
/// vertices keep their in-arcs but lose their out-arcs.
#[derive(Clone, Copy)]
pub(crate) struct View<'a> {
    pub graph: &'a Digraph,
    pub branching: &'a [bool],
    pub removed: &'a [bool],
    pub cut: &'a [bool],
}

/// Reusable scratch space for repeated searches on one graph.
pub(crate) struct Search {
    min_charge: Vec<u32>,
    best: Vec<u64>,
    touched: Vec<VertexId>,
    heap: BinaryHeap<Reverse<(u64, u32, VertexId)>>,
}

impl Search {
    pub fn new(n: usize) -> Self {
        Search {
            min_charge: vec![UNSET; n],
            best: vec![u64::MAX; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.min_charge[v] = UNSET;
            self.best[v] = u64::MAX;
        }
        self.touched.clear();
        self.heap.clear();
    }

    /// Run from `source` with at most `budget` charges, ignoring paths
    /// longer than `limit`. `on_settle(v, length, charges)` sees every
    /// Pareto-optimal state, shortest first per vertex.
    pub fn run(
        &mut self,
        view: View<'_>,
        source: VertexId,
        budget: usize,
        count_source: bool,
        limit: u64,
        mut on_settle: impl FnMut(VertexId, u64, u32),
    ) {
        self.reset();
        let budget = budget.min(UNSET as usize - 1) as u32;
        self.heap.push(Reverse((0, 0, source)));
        while let Some(Reverse((d, c, v))) = self.heap.pop() {
            if c >= self.min_charge[v] {
                continue;
            }
            if self.min_charge[v] == UNSET {
                self.best[v] = d;
                self.touched.push(v);
            }
            self.min_charge[v] = c;
            on_settle(v, d, c);
            if view.cut[v] {
                continue;
            }
            let charged = view.branching[v] && (v != source || count_source);
            let nc = c + charged as u32;
            if nc > budget {
                continue;
            }
            for a in view.graph.successors(v) {
                if view.removed[a.head] {
                    continue;
                }
                let nd = d.saturating_add(a.weight);
                if nd <= limit && nc < self.min_charge[a.head] {
                    self.heap.push(Reverse((nd, nc, a.head)));
                }
            }
        }
    }

    /// Vertices reached by the last run.
    pub fn reached(&self) -> &[VertexId] {
        &self.touched
    }

    /// Shortest length to `v` within the last run's budget and limit.
    pub fn best(&self, v: VertexId) -> Option<u64> {
        (self.best[v] != u64::MAX).then_some(self.best[v])
    }
}

/// dist[j][v] for 0 <= j <= b: the length of a shortest source -> v path
/// with at most j charged branching vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingDistTable {
    source: VertexId,
    budget: usize,
    /// Per vertex, Pareto-optimal (length, charges) with length increasing
    /// and charges strictly decreasing.
    frontier: Vec<Vec<(u64, u32)>>,
}

impl BranchingDistTable {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// `None` stands for an unreachable vertex (+inf).
    pub fn dist(&self, j: usize, v: VertexId) -> Option<u64> {
        self.frontier[v]
            .iter()
            .find(|&&(_, c)| c as usize <= j)
            .map(|&(d, _)| d)
    }

    /// The row dist[j][.].
    pub fn row(&self, j: usize) -> Vec<Option<u64>> {
        (0..self.frontier.len()).map(|v| self.dist(j, v)).collect()
    }
}

/// Shortest paths from `source` using at most `b` branching vertices,
/// branching status taken from the degrees of `g`.
pub fn branching_bounded_distances(
    g: &Digraph,
    source: VertexId,
    b: usize,
    count_source: bool,
) -> Result<BranchingDistTable> {
    let n = g.vertex_count();
    if source >= n {
        return Err(Error::NoSuchVertex(source.to_string()));
    }
    let branching = g.branching_mask();
    let none = vec![false; n];
    let view = View {
        graph: g,
        branching: &branching,
        removed: &none,
        cut: &none,
    };
    let mut frontier = vec![Vec::new(); n];
    Search::new(n).run(view, source, b, count_source, u64::MAX, |v, d, c| {
        frontier[v].push((d, c))
    });
    Ok(BranchingDistTable {
        source,
        budget: b,
        frontier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bubble::oracle::exhaustive_branching_distances;
    use crate::graph::random_digraph;

    #[test]
    fn simple_path_without_branching() {
        let g = Digraph::from_arcs(3, [(0, 1, 1), (1, 2, 1)]);
        let t = branching_bounded_distances(&g, 0, 0, true).unwrap();
        assert_eq!(t.row(0), vec![Some(0), Some(1), Some(2)]);
    }

    /// u -> x -> v is the only route to v and x has two out-arcs.
    fn star_crossing() -> Digraph {
        // 0 = u, 1 = a, 2 = x, 3 = y, 4 = v, 5 = w
        Digraph::from_arcs(6, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (2, 5, 1), (3, 4, 1), (5, 4, 3)])
    }

    #[test]
    fn star_crossing_needs_one_charge() {
        let g = star_crossing();
        let t = branching_bounded_distances(&g, 0, 2, true).unwrap();
        assert_eq!(t.dist(0, 4), None);
        // v itself has in-degree 2 but is the endpoint, so never charged.
        assert_eq!(t.dist(1, 4), Some(4));
        assert_eq!(t.dist(0, 2), Some(2));
        let exact = exhaustive_branching_distances(&g, 0, 2, true).unwrap();
        for (j, row) in exact.iter().enumerate() {
            assert_eq!(&t.row(j), row);
        }
    }

    #[test]
    fn source_is_free_unless_counted() {
        let g = Digraph::from_arcs(3, [(0, 1, 1), (0, 2, 1)]);
        assert_eq!(
            branching_bounded_distances(&g, 0, 0, false).unwrap().dist(0, 1),
            Some(1)
        );
        assert_eq!(branching_bounded_distances(&g, 0, 0, true).unwrap().dist(0, 1), None);
        assert_eq!(branching_bounded_distances(&g, 0, 1, true).unwrap().dist(1, 1), Some(1));
    }

    #[test]
    fn source_distance_is_zero_and_rows_monotone() {
        for seed in 0..50 {
            let g = random_digraph(10, 0.25, 1, seed);
            let t = branching_bounded_distances(&g, 0, 4, seed % 2 == 0).unwrap();
            for j in 0..=4 {
                assert_eq!(t.dist(j, 0), Some(0));
                if j > 0 {
                    for v in 0..10 {
                        let (prev, cur) = (t.dist(j - 1, v), t.dist(j, v));
                        assert!(prev.is_none() || cur <= prev);
                    }
                }
            }
        }
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        for seed in 0..200 {
            let g = random_digraph(9, 0.3, 1, seed);
            for count_source in [false, true] {
                let t = branching_bounded_distances(&g, 0, 3, count_source).unwrap();
                let exact = exhaustive_branching_distances(&g, 0, 3, count_source).unwrap();
                for (j, row) in exact.iter().enumerate() {
                    assert_eq!(&t.row(j), row, "seed {seed} j {j}");
                }
            }
        }
    }

    #[test]
    fn weighted_detour_is_cheaper_in_charges() {
        // Short route 0 -> 1 -> 3 through branching 1; long route 0 -> 2 -> 3.
        let g = Digraph::from_arcs(5, [(0, 1, 1), (1, 3, 1), (1, 4, 1), (0, 2, 5), (2, 3, 5)]);
        let t = branching_bounded_distances(&g, 0, 1, false).unwrap();
        assert_eq!(t.dist(0, 3), Some(10));
        assert_eq!(t.dist(1, 3), Some(2));
    }

    #[test]
    fn missing_source() {
        let g = Digraph::new(2);
        assert!(matches!(
            branching_bounded_distances(&g, 2, 0, false),
            Err(Error::NoSuchVertex(_))
        ));
    }
}
