//! Directed (strand-specific) de Bruijn graphs and their compressed form.

mod binary;
mod gfa;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use binary::{read_binary, write_binary, BINARY_MAGIC};
pub use gfa::{read_gfa, write_gfa};

use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexId};
use crate::kmer::{check_k, mask, unpack, windows_packed, Sequence};

/// A de Bruijn graph: vertices carry labels of length >= k and every arc
/// (u, v) has the last k-1 characters of u equal to the first k-1 of v.
///
/// Arc weights are always `|label(v)| - (k - 1)`, the number of characters a
/// walk appends when it steps onto v. On a raw graph that is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeBruijnGraph {
    k: usize,
    labels: Vec<Vec<u8>>,
    graph: Digraph,
    index: HashMap<Vec<u8>, VertexId>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertex_count: usize,
    pub arc_count: usize,
    pub gamma: usize,
    /// gamma / arc_count, or 0 for a graph without arcs.
    pub compressible_ratio: f64,
}

impl DeBruijnGraph {
    /// Assemble a graph from labels and `(tail, head, multiplicity)` arcs,
    /// checking the overlap invariant.
    pub fn from_parts(
        k: usize,
        labels: Vec<Vec<u8>>,
        arcs: impl IntoIterator<Item = (VertexId, VertexId, u32)>,
    ) -> Result<Self> {
        check_k(k)?;
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if l.len() < k {
                return Err(Error::Format(format!("label of vertex {i} is shorter than k")));
            }
            if Sequence::new(l.as_slice()).is_err() {
                return Err(Error::Format(format!("label of vertex {i} is not over ACGT")));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Format(format!("duplicate label at vertex {i}")));
            }
        }
        let mut graph = Digraph::new(labels.len());
        for (u, v, mult) in arcs {
            let (Some(lu), Some(lv)) = (labels.get(u), labels.get(v)) else {
                return Err(Error::Format(format!("arc {u} -> {v} references a missing vertex")));
            };
            if lu[lu.len() - (k - 1)..] != lv[..k - 1] {
                return Err(Error::Format(format!("arc {u} -> {v} does not overlap by k-1")));
            }
            graph.push_arc(u, v, (lv.len() - (k - 1)) as u64, mult);
        }
        graph.finish();
        Ok(DeBruijnGraph {
            k,
            labels,
            graph,
            index,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.graph.arc_count()
    }

    pub fn label(&self, v: VertexId) -> &[u8] {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Vec<u8>] {
        &self.labels
    }

    pub fn vertex(&self, label: &[u8]) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    fn require(&self, label: &[u8]) -> Result<VertexId> {
        self.vertex(label)
            .ok_or_else(|| Error::NoSuchVertex(String::from_utf8_lossy(label).into_owned()))
    }

    pub fn out_degree(&self, label: &[u8]) -> Result<usize> {
        Ok(self.graph.out_degree(self.require(label)?))
    }

    pub fn in_degree(&self, label: &[u8]) -> Result<usize> {
        Ok(self.graph.in_degree(self.require(label)?))
    }

    pub fn is_compressible(&self, u: &[u8], v: &[u8]) -> Result<bool> {
        let no_arc = || {
            Error::NoSuchArc(
                String::from_utf8_lossy(u).into_owned(),
                String::from_utf8_lossy(v).into_owned(),
            )
        };
        let (Some(iu), Some(iv)) = (self.vertex(u), self.vertex(v)) else {
            return Err(no_arc());
        };
        self.graph.is_compressible(iu, iv).map_err(|_| no_arc())
    }

    /// Number of arcs passing the degree test, including those `compress`
    /// leaves alone (self-loops, 2-cycles).
    pub fn gamma(&self) -> usize {
        self.graph.gamma()
    }

    pub fn stats(&self) -> GraphStats {
        let arcs = self.arc_count();
        let gamma = self.gamma();
        GraphStats {
            vertex_count: self.vertex_count(),
            arc_count: arcs,
            gamma,
            compressible_ratio: if arcs == 0 { 0.0 } else { gamma as f64 / arcs as f64 },
        }
    }

    /// The string spelled by a walk.
    pub fn spell(&self, walk: &[VertexId]) -> Vec<u8> {
        let mut out = Vec::new();
        for (i, &v) in walk.iter().enumerate() {
            let l = &self.labels[v];
            out.extend_from_slice(if i == 0 { l } else { &l[self.k - 1..] });
        }
        out
    }

    /// Contract compressible arcs until none can be contracted.
    ///
    /// An arc (u, v) is contracted when d+(u) = 1, d-(v) = 1, u != v and
    /// (v, u) is absent. Maximal runs of such arcs are merged in one step.
    /// A run whose last vertex points back at its first keeps the last
    /// vertex apart, since the final contraction would close a 2-cycle. A
    /// cycle made only of contractible arcs keeps its lexicographically
    /// smallest vertex apart and merges the rest.
    ///
    /// Vertices of the result are ordered by label.
    pub fn compress(&self) -> DeBruijnGraph {
        let g = &self.graph;
        let n = g.vertex_count();
        let next: Vec<Option<VertexId>> = (0..n)
            .map(|u| match g.successors(u) {
                [a] if a.head != u && g.in_degree(a.head) == 1 && !g.has_arc(a.head, u) => Some(a.head),
                _ => None,
            })
            .collect();
        let mut has_prev = vec![false; n];
        for v in next.iter().flatten() {
            has_prev[*v] = true;
        }

        let mut visited = vec![false; n];
        let mut groups: Vec<Vec<VertexId>> = Vec::new();
        for start in 0..n {
            if has_prev[start] {
                continue;
            }
            let mut chain = vec![start];
            visited[start] = true;
            let mut cur = start;
            while let Some(v) = next[cur] {
                visited[v] = true;
                chain.push(v);
                cur = v;
            }
            if chain.len() >= 3 && g.has_arc(cur, start) {
                chain.pop();
                groups.push(chain);
                groups.push(vec![cur]);
            } else {
                groups.push(chain);
            }
        }
        // Whatever is left lies on cycles of contractible arcs. Vertex ids
        // follow label order, so the first unvisited vertex of a cycle is its
        // smallest label.
        for start in 0..n {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut rest = Vec::new();
            let mut cur = next[start].expect("cycle vertex has a successor");
            while cur != start {
                visited[cur] = true;
                rest.push(cur);
                cur = next[cur].expect("cycle vertex has a successor");
            }
            groups.push(vec![start]);
            groups.push(rest);
        }

        let mut merged: Vec<(Vec<u8>, Vec<VertexId>)> = groups.into_iter().map(|grp| (self.spell(&grp), grp)).collect();
        merged.sort_unstable_by(|a, b| a.0.cmp(&b.0));

        let mut group_of = vec![0usize; n];
        let mut in_group_next = vec![usize::MAX; n];
        for (gi, (_, grp)) in merged.iter().enumerate() {
            for (i, &v) in grp.iter().enumerate() {
                group_of[v] = gi;
                if let Some(&w) = grp.get(i + 1) {
                    in_group_next[v] = w;
                }
            }
        }
        let arcs: Vec<(VertexId, VertexId, u32)> = g
            .arcs()
            .filter(|(u, a)| in_group_next[*u] != a.head)
            .map(|(u, a)| (group_of[u], group_of[a.head], a.multiplicity))
            .collect();
        let labels = merged.into_iter().map(|(l, _)| l).collect();
        DeBruijnGraph::from_parts(self.k, labels, arcs).expect("contraction preserves overlaps")
    }

    /// True when no arc is contractible under the rule used by [`compress`].
    ///
    /// [`compress`]: DeBruijnGraph::compress
    pub fn is_compressed(&self) -> bool {
        let g = &self.graph;
        g.arcs().all(|(u, a)| {
            let v = a.head;
            u == v || g.out_degree(u) != 1 || g.in_degree(v) != 1 || g.has_arc(v, u)
        })
    }
}

/// Build G_k(R): vertices are the distinct k-mers of the reads, arcs their
/// distinct (k+1)-mers. Arc multiplicity counts (k+1)-mer occurrences.
pub fn build_graph(reads: &[Sequence], k: usize) -> Result<DeBruijnGraph> {
    check_k(k)?;
    if !reads.iter().any(|r| r.len() > k) {
        return Err(Error::EmptyGraph);
    }
    let (kmers, edges) = reads
        .par_iter()
        .fold(
            || (HashSet::new(), HashMap::new()),
            |(mut kmers, mut edges): (HashSet<u128>, HashMap<u128, u32>), r| {
                kmers.extend(windows_packed(r.as_bytes(), k));
                for e in windows_packed(r.as_bytes(), k + 1) {
                    *edges.entry(e).or_insert(0) += 1;
                }
                (kmers, edges)
            },
        )
        .reduce(
            || (HashSet::new(), HashMap::new()),
            |(mut ka, mut ea), (kb, eb)| {
                ka.extend(kb);
                for (e, c) in eb {
                    *ea.entry(e).or_insert(0) += c;
                }
                (ka, ea)
            },
        );
    let mut kmers: Vec<u128> = kmers.into_iter().collect();
    kmers.sort_unstable();
    let id = |code: u128| kmers.binary_search(&code).expect("edge endpoints are vertices");
    let arcs: Vec<(VertexId, VertexId, u32)> = edges
        .into_iter()
        .map(|(e, c)| (id(e >> 2), id(e & mask(k)), c))
        .collect();
    let labels = kmers.iter().map(|&c| unpack(c, k)).collect();
    DeBruijnGraph::from_parts(k, labels, arcs)
}
