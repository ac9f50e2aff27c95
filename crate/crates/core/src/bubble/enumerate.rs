//! Recursive partition of the bubble space with a non-emptiness check
//! before every descent.
//!
//! A call holds two partial paths s ~> u1 and s ~> u2 in the graph G' left
//! after deleting every path vertex except u1 and u2. It is only entered
//! when some pair of extensions u1 ~> t, u2 ~> t completes a bubble. It then
//! picks one endpoint u and splits the remaining bubbles into those that
//! continue through each out-arc of u, and those that never leave u (u's
//! out-arcs cut). When both endpoints coincide the pair is emitted.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::dp::{Search, View};
use super::{Bubble, BubbleQuery};
use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    /// Wall-clock budget per source.
    pub timeout: Option<Duration>,
    /// Budget on recursion nodes per source.
    pub max_nodes: Option<u64>,
}

/// Partial paths at the moment an enumeration was interrupted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Frontier {
    pub path1: Vec<VertexId>,
    pub path2: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Complete,
    /// A limit was hit; the bubbles emitted so far are correct but the set
    /// may be incomplete.
    PartialEnumeration {
        frontier: Frontier,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub source: VertexId,
    pub bubbles: usize,
    /// Recursive calls, the root included.
    pub nodes: u64,
    /// Entered calls whose subtree emitted nothing. Always 0 without a sink
    /// filter when the run completes.
    pub barren_nodes: u64,
    pub max_depth: usize,
    pub status: Status,
    pub elapsed: Duration,
    /// Longest wait between consecutive outputs, counting the start and the
    /// end of the run as outputs.
    pub max_gap: Duration,
    pub mean_gap: Duration,
}

impl EnumerationReport {
    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }
}

/// One endpoint of a feasibility question.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub vertex: VertexId,
    pub remaining_length: u64,
    pub remaining_branching: usize,
}

/// Is there a vertex t reachable from both endpoints within their length
/// and branching budgets? The endpoints themselves are charged when left iff
/// `count_source`. Disjointness is not required: cutting both walks at
/// their first common vertex yields disjoint ones within budget.
pub fn bubble_feasible(g: &Digraph, first: Endpoint, second: Endpoint, count_source: bool) -> Result<bool> {
    let n = g.vertex_count();
    for e in [first, second] {
        if e.vertex >= n {
            return Err(Error::NoSuchVertex(e.vertex.to_string()));
        }
    }
    if first.vertex == second.vertex {
        return Ok(true);
    }
    let branching = g.branching_mask();
    let none = vec![false; n];
    let view = View {
        graph: g,
        branching: &branching,
        removed: &none,
        cut: &none,
    };
    let mut a = Search::new(n);
    let mut b = Search::new(n);
    a.run(
        view,
        first.vertex,
        first.remaining_branching,
        count_source,
        first.remaining_length,
        |_, _, _| {},
    );
    b.run(
        view,
        second.vertex,
        second.remaining_branching,
        count_source,
        second.remaining_length,
        |_, _, _| {},
    );
    Ok(a.reached().iter().any(|&t| b.best(t).is_some()))
}

struct Enumerator<'a, F> {
    g: &'a Digraph,
    branching: Vec<bool>,
    query: BubbleQuery,
    sink: Option<VertexId>,
    removed: Vec<bool>,
    cut: Vec<bool>,
    paths: [Vec<VertexId>; 2],
    lens: [u64; 2],
    charges: [usize; 2],
    searches: [Search; 2],
    limits: Limits,
    start: Instant,
    last_output: Instant,
    max_gap: Duration,
    nodes: u64,
    barren: u64,
    max_depth: usize,
    emitted: usize,
    frontier: Option<Frontier>,
    emit: F,
}

impl<'a, F: FnMut(Bubble)> Enumerator<'a, F> {
    fn endpoint(&self, e: usize) -> VertexId {
        *self.paths[e].last().expect("paths start at the source")
    }

    fn feasible(&mut self) -> bool {
        let q = self.query;
        let b = q.max_branching;
        if self.charges.iter().any(|&c| c > b) {
            return false;
        }
        let (u1, u2) = (self.endpoint(0), self.endpoint(1));
        let [l1, l2] = self.lens;
        if u1 == u2 {
            return q.accepts_lengths(l1, l2) && self.sink.is_none_or(|t| t == u1);
        }
        // The bubble condition max <= alpha1, min <= alpha2 is the union of
        // two boxes on the extension lengths.
        let mut boxes = Vec::with_capacity(2);
        if l1 <= q.alpha2 && l2 <= q.alpha1 {
            boxes.push((q.alpha2 - l1, q.alpha1 - l2));
        }
        if l1 <= q.alpha1 && l2 <= q.alpha2 {
            boxes.push((q.alpha1 - l1, q.alpha2 - l2));
        }
        if boxes.is_empty() {
            return false;
        }
        let lim1 = boxes.iter().map(|b| b.0).max().expect("non-empty");
        let lim2 = boxes.iter().map(|b| b.1).max().expect("non-empty");
        let view = View {
            graph: self.g,
            branching: &self.branching,
            removed: &self.removed,
            cut: &self.cut,
        };
        let [s1, s2] = &mut self.searches;
        s1.run(view, u1, b - self.charges[0], true, lim1, |_, _, _| {});
        s2.run(view, u2, b - self.charges[1], true, lim2, |_, _, _| {});
        let sink = self.sink;
        s1.reached().iter().any(|&t| {
            if sink.is_some_and(|s| s != t) {
                return false;
            }
            match (s1.best(t), s2.best(t)) {
                (Some(d1), Some(d2)) => boxes.iter().any(|&(x, y)| d1 <= x && d2 <= y),
                _ => false,
            }
        })
    }

    fn out_of_budget(&mut self) -> bool {
        if self.frontier.is_some() {
            return true;
        }
        let timed_out = self.limits.timeout.is_some_and(|t| self.start.elapsed() >= t);
        let too_many = self.limits.max_nodes.is_some_and(|m| self.nodes > m);
        if timed_out || too_many {
            self.frontier = Some(Frontier {
                path1: self.paths[0].clone(),
                path2: self.paths[1].clone(),
            });
        }
        self.frontier.is_some()
    }

    fn usable(&self, u: VertexId) -> bool {
        !self.cut[u] && self.g.successors(u).iter().any(|a| !self.removed[a.head])
    }

    /// Returns the number of bubbles emitted below this call.
    fn descend(&mut self, depth: usize) -> usize {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        if self.out_of_budget() {
            return 0;
        }
        let (u1, u2) = (self.endpoint(0), self.endpoint(1));
        if u1 == u2 {
            let bubble = Bubble::from_paths(self.g, &self.branching, self.paths[0].clone(), self.paths[1].clone());
            (self.emit)(bubble);
            self.emitted += 1;
            let now = Instant::now();
            self.max_gap = self.max_gap.max(now - self.last_output);
            self.last_output = now;
            return 1;
        }
        // Extend the shorter usable path, path 1 on ties.
        let candidates = [0, 1].into_iter().filter(|&e| self.usable(self.endpoint(e)));
        let Some(e) = candidates.min_by_key(|&e| self.lens[e]) else {
            self.barren += 1;
            return 0;
        };
        let u = self.endpoint(e);
        let mut found = 0;
        let g = self.g;
        for arc in g.successors(u) {
            let v = arc.head;
            if v == u || self.removed[v] {
                continue;
            }
            self.removed[u] = true;
            self.paths[e].push(v);
            self.lens[e] += arc.weight;
            self.charges[e] += self.branching[u] as usize;
            if self.feasible() {
                found += self.descend(depth + 1);
            }
            self.charges[e] -= self.branching[u] as usize;
            self.lens[e] -= arc.weight;
            self.paths[e].pop();
            self.removed[u] = false;
            if self.frontier.is_some() {
                return found;
            }
        }
        self.cut[u] = true;
        if self.feasible() {
            found += self.descend(depth + 1);
        }
        self.cut[u] = false;
        if found == 0 && self.frontier.is_none() {
            self.barren += 1;
        }
        found
    }

    fn run(mut self) -> EnumerationReport {
        let s = self.query.source;
        self.nodes = 1;
        let firsts: Vec<_> = self.g.successors(s).iter().filter(|a| a.head != s).copied().collect();
        self.removed[s] = true;
        if !self.out_of_budget() {
            'pairs: for i in 0..firsts.len() {
                for j in i + 1..firsts.len() {
                    let (a, b) = (firsts[i], firsts[j]);
                    self.paths = [vec![s, a.head], vec![s, b.head]];
                    self.lens = [a.weight, b.weight];
                    self.charges = [0, 0];
                    if self.feasible() {
                        self.descend(1);
                    }
                    if self.frontier.is_some() {
                        break 'pairs;
                    }
                }
            }
        }
        let end = Instant::now();
        let elapsed = end - self.start;
        EnumerationReport {
            source: s,
            bubbles: self.emitted,
            nodes: self.nodes,
            barren_nodes: self.barren,
            max_depth: self.max_depth,
            status: match self.frontier.take() {
                None => Status::Complete,
                Some(frontier) => Status::PartialEnumeration { frontier },
            },
            elapsed,
            max_gap: self.max_gap.max(end - self.last_output),
            mean_gap: elapsed / (self.emitted as u32 + 1),
        }
    }
}

fn check_vertex(g: &Digraph, v: VertexId) -> Result<()> {
    if v < g.vertex_count() {
        Ok(())
    } else {
        Err(Error::NoSuchVertex(v.to_string()))
    }
}

/// Stream every (s, *, alpha1, alpha2, b)-bubble of `g` to `emit`, each
/// exactly once. With a `sink`, only bubbles ending there are produced; the
/// non-emptiness check is then only necessary, so calls may come back empty.
pub fn enumerate_bubbles<F: FnMut(Bubble)>(
    g: &Digraph,
    query: &BubbleQuery,
    sink: Option<VertexId>,
    limits: Limits,
    emit: F,
) -> Result<EnumerationReport> {
    check_vertex(g, query.source)?;
    if let Some(t) = sink {
        check_vertex(g, t)?;
    }
    let n = g.vertex_count();
    let now = Instant::now();
    let query = BubbleQuery::new(query.source, query.alpha1, query.alpha2, query.max_branching);
    Ok(Enumerator {
        g,
        branching: g.branching_mask(),
        query,
        sink,
        removed: vec![false; n],
        cut: vec![false; n],
        paths: [Vec::new(), Vec::new()],
        lens: [0; 2],
        charges: [0; 2],
        searches: [Search::new(n), Search::new(n)],
        limits,
        start: now,
        last_output: now,
        max_gap: Duration::ZERO,
        nodes: 0,
        barren: 0,
        max_depth: 0,
        emitted: 0,
        frontier: None,
        emit,
    }
    .run())
}

pub fn collect_bubbles(
    g: &Digraph,
    query: &BubbleQuery,
    sink: Option<VertexId>,
    limits: Limits,
) -> Result<(Vec<Bubble>, EnumerationReport)> {
    let mut out = Vec::new();
    let report = enumerate_bubbles(g, query, sink, limits, |b| out.push(b))?;
    Ok((out, report))
}

#[derive(Clone, Debug)]
pub struct SourceResult {
    pub bubbles: Vec<Bubble>,
    /// Time since the start of the source's run at which each bubble came out.
    pub emitted_at: Vec<Duration>,
    pub report: EnumerationReport,
}

/// Enumerate from every vertex with out-degree >= 2, in parallel. Results
/// come back in source order whatever the thread count.
pub fn enumerate_sources(
    g: &Digraph,
    alpha1: u64,
    alpha2: u64,
    max_branching: usize,
    limits: Limits,
) -> Vec<SourceResult> {
    let sources: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| g.out_degree(v) >= 2).collect();
    sources
        .par_iter()
        .map(|&s| {
            let q = BubbleQuery::new(s, alpha1, alpha2, max_branching);
            let start = Instant::now();
            let mut bubbles = Vec::new();
            let mut emitted_at = Vec::new();
            let report = enumerate_bubbles(g, &q, None, limits, |b| {
                bubbles.push(b);
                emitted_at.push(start.elapsed());
            })
            .expect("source is a vertex");
            SourceResult {
                bubbles,
                emitted_at,
                report,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests;
