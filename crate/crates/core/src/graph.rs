//! Simple weighted directed graphs over dense vertex ids.
//!
//! Parallel arcs are not representable; adding an arc twice keeps the first
//! weight and sums multiplicities. Self-loops are allowed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub head: VertexId,
    pub weight: u64,
    /// Number of times the arc was observed. Informational only.
    pub multiplicity: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<Arc>>,
    inc: Vec<Vec<VertexId>>,
    arc_count: usize,
}

impl Digraph {
    pub fn new(vertex_count: usize) -> Self {
        Digraph {
            out: vec![Vec::new(); vertex_count],
            inc: vec![Vec::new(); vertex_count],
            arc_count: 0,
        }
    }

    /// Build from `(tail, head, weight)` triples. Adjacency lists end up
    /// sorted by neighbour id.
    pub fn from_arcs<I>(vertex_count: usize, arcs: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId, u64)>,
    {
        let mut g = Digraph::new(vertex_count);
        for (u, v, w) in arcs {
            g.push_arc(u, v, w, 1);
        }
        g.finish();
        g
    }

    pub(crate) fn push_arc(&mut self, u: VertexId, v: VertexId, weight: u64, multiplicity: u32) {
        self.out[u].push(Arc {
            head: v,
            weight,
            multiplicity,
        });
    }

    /// Sort adjacency, merge duplicates and rebuild in-lists.
    pub(crate) fn finish(&mut self) {
        self.arc_count = 0;
        for list in &mut self.inc {
            list.clear();
        }
        for (u, list) in self.out.iter_mut().enumerate() {
            list.sort_by_key(|a| a.head);
            list.dedup_by(|dup, keep| {
                if dup.head == keep.head {
                    keep.multiplicity += dup.multiplicity;
                    true
                } else {
                    false
                }
            });
            self.arc_count += list.len();
            for a in list.iter() {
                self.inc[a.head].push(u);
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn successors(&self, v: VertexId) -> &[Arc] {
        &self.out[v]
    }

    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.inc[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.inc[v].len()
    }

    pub fn arc(&self, u: VertexId, v: VertexId) -> Option<&Arc> {
        let list = self.out.get(u)?;
        list.binary_search_by_key(&v, |a| a.head).ok().map(|i| &list[i])
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.arc(u, v).is_some()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, &Arc)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |a| (u, a)))
    }

    /// Degree test only: d+(u) = 1 and d-(v) = 1. A self-loop on an
    /// otherwise isolated vertex passes.
    pub fn is_compressible(&self, u: VertexId, v: VertexId) -> Result<bool> {
        if !self.has_arc(u, v) {
            return Err(Error::NoSuchArc(u.to_string(), v.to_string()));
        }
        Ok(self.out_degree(u) == 1 && self.in_degree(v) == 1)
    }

    /// Number of compressible arcs. A self-loop counts when it is the only
    /// arc at its vertex.
    pub fn gamma(&self) -> usize {
        self.arcs()
            .filter(|(u, a)| self.out_degree(*u) == 1 && self.in_degree(a.head) == 1)
            .count()
    }

    /// d+(v) > 1 or d-(v) > 1.
    pub fn is_branching(&self, v: VertexId) -> bool {
        self.out_degree(v) > 1 || self.in_degree(v) > 1
    }

    pub fn branching_mask(&self) -> Vec<bool> {
        (0..self.vertex_count()).map(|v| self.is_branching(v)).collect()
    }
}

/// Erdős–Rényi style random digraph: every ordered pair (u, v), u != v,
/// gets an arc of the given weight with probability `p`.
pub fn random_digraph(n: usize, p: f64, weight: u64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v, weight));
            }
        }
    }
    Digraph::from_arcs(n, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_merge() {
        let g = Digraph::from_arcs(3, [(0, 1, 1), (0, 1, 5), (1, 2, 1), (2, 2, 1)]);
        assert_eq!(g.arc_count(), 3);
        assert_eq!(g.arc(0, 1).unwrap().weight, 1);
        assert_eq!(g.arc(0, 1).unwrap().multiplicity, 2);
        assert_eq!(g.predecessors(2), &[1, 2]);
    }

    #[test]
    fn compressible_and_gamma() {
        // 0 -> 1 -> 2, plus 3 -> 2.
        let g = Digraph::from_arcs(4, [(0, 1, 1), (1, 2, 1), (3, 2, 1)]);
        assert!(g.is_compressible(0, 1).unwrap());
        assert!(!g.is_compressible(1, 2).unwrap());
        assert!(matches!(g.is_compressible(2, 0), Err(Error::NoSuchArc(..))));
        assert_eq!(g.gamma(), 1);
        assert!(g.is_branching(2));
        assert!(!g.is_branching(1));
    }

    #[test]
    fn isolated_self_loop() {
        let g = Digraph::from_arcs(1, [(0, 0, 1)]);
        assert!(g.is_compressible(0, 0).unwrap());
        assert_eq!(g.gamma(), 1);
        let g = Digraph::from_arcs(2, [(0, 0, 1), (0, 1, 1)]);
        assert!(!g.is_compressible(0, 0).unwrap());
        assert_eq!(g.gamma(), 0);
    }

    #[test]
    fn random_digraph_is_reproducible() {
        let a = random_digraph(12, 0.2, 1, 7);
        assert_eq!(a, random_digraph(12, 0.2, 1, 7));
        assert!(a.arcs().all(|(u, arc)| u != arc.head));
    }
}
