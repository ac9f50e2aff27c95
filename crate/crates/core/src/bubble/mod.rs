//! Enumeration of (s, *, alpha1, alpha2, b)-bubbles: pairs of internally
//! vertex-disjoint paths from a source s to a common sink t, of bounded
//! weighted length, each with at most b branching vertices besides s and t.

mod dp;
mod enumerate;
pub mod oracle;
pub mod output;

use serde::{Deserialize, Serialize};

pub use dp::{branching_bounded_distances, BranchingDistTable};
pub use enumerate::{
    bubble_feasible, collect_bubbles, enumerate_bubbles, enumerate_sources, Endpoint, EnumerationReport, Frontier,
    Limits, SourceResult, Status,
};
pub use oracle::{oracle_enumerate, ORACLE_MAX_VERTICES};

use crate::graph::{Digraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BubbleQuery {
    pub source: VertexId,
    /// Bound on the longer path; always >= `alpha2`.
    pub alpha1: u64,
    /// Bound on the shorter path.
    pub alpha2: u64,
    /// Branching vertices allowed on each path.
    pub max_branching: usize,
}

impl BubbleQuery {
    /// The two length bounds are swapped if needed so that alpha1 >= alpha2.
    pub fn new(source: VertexId, alpha1: u64, alpha2: u64, max_branching: usize) -> Self {
        BubbleQuery {
            source,
            alpha1: alpha1.max(alpha2),
            alpha2: alpha1.min(alpha2),
            max_branching,
        }
    }

    /// A branching bound no path can exceed.
    pub fn uncapped(g: &Digraph) -> usize {
        g.vertex_count()
    }

    pub(crate) fn accepts_lengths(&self, a: u64, b: u64) -> bool {
        a.max(b) <= self.alpha1 && a.min(b) <= self.alpha2
    }
}

/// A bubble in canonical form: `path1` is the longer path (ties broken by
/// the lexicographically smaller vertex list), so two bubbles made of the
/// same pair of paths compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bubble {
    pub source: VertexId,
    pub sink: VertexId,
    pub path1: Vec<VertexId>,
    pub path2: Vec<VertexId>,
    pub len1: u64,
    pub len2: u64,
    pub branch1: usize,
    pub branch2: usize,
}

pub(crate) fn path_length(g: &Digraph, path: &[VertexId]) -> u64 {
    path.windows(2)
        .map(|e| g.arc(e[0], e[1]).expect("path follows arcs").weight)
        .sum()
}

pub(crate) fn path_branching(branching: &[bool], path: &[VertexId]) -> usize {
    path[1..path.len() - 1].iter().filter(|&&v| branching[v]).count()
}

impl Bubble {
    pub(crate) fn from_paths(g: &Digraph, branching: &[bool], a: Vec<VertexId>, b: Vec<VertexId>) -> Self {
        let (la, lb) = (path_length(g, &a), path_length(g, &b));
        let swap = lb > la || (lb == la && b < a);
        let ((p1, l1), (p2, l2)) = if swap { ((b, lb), (a, la)) } else { ((a, la), (b, lb)) };
        Bubble {
            source: p1[0],
            sink: *p1.last().expect("non-empty path"),
            branch1: path_branching(branching, &p1),
            branch2: path_branching(branching, &p2),
            path1: p1,
            path2: p2,
            len1: l1,
            len2: l2,
        }
    }

    /// Both paths are simple, run from source to sink and share no other
    /// vertex.
    pub fn is_internally_disjoint(&self) -> bool {
        let simple = |p: &[VertexId]| {
            let mut s = p.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        let inner = |p: &[VertexId]| p[1..p.len() - 1].to_vec();
        let (a, b) = (inner(&self.path1), inner(&self.path2));
        let ends = [self.source, self.sink];
        simple(&self.path1)
            && simple(&self.path2)
            && self.path1[0] == self.source
            && self.path1.last() == Some(&self.sink)
            && self.path2[0] == self.source
            && self.path2.last() == Some(&self.sink)
            && self.source != self.sink
            && !a.iter().any(|v| b.contains(v) || ends.contains(v))
            && !b.iter().any(|v| ends.contains(v))
    }
}
