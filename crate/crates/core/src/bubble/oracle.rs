//! Brute-force references for small graphs, by exhaustive search over
//! simple paths.

use std::collections::{BTreeMap, BTreeSet};

use super::{Bubble, BubbleQuery};
use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexId};

pub const ORACLE_MAX_VERTICES: usize = 20;

fn guard(g: &Digraph) -> Result<()> {
    if g.vertex_count() > ORACLE_MAX_VERTICES {
        return Err(Error::OracleRefused(g.vertex_count(), ORACLE_MAX_VERTICES));
    }
    Ok(())
}

/// Every simple path from `from`, handed to `visit` with its length.
/// Extension stops once `keep_going` rejects a path.
fn simple_paths(
    g: &Digraph,
    from: VertexId,
    keep_going: &mut impl FnMut(&[VertexId], u64) -> bool,
    visit: &mut impl FnMut(&[VertexId], u64),
) {
    fn go(
        g: &Digraph,
        path: &mut Vec<VertexId>,
        on_path: &mut [bool],
        len: u64,
        keep_going: &mut impl FnMut(&[VertexId], u64) -> bool,
        visit: &mut impl FnMut(&[VertexId], u64),
    ) {
        visit(path, len);
        if !keep_going(path, len) {
            return;
        }
        let u = *path.last().expect("non-empty");
        for a in g.successors(u) {
            if on_path[a.head] {
                continue;
            }
            on_path[a.head] = true;
            path.push(a.head);
            go(g, path, on_path, len + a.weight, keep_going, visit);
            path.pop();
            on_path[a.head] = false;
        }
    }
    let mut on_path = vec![false; g.vertex_count()];
    on_path[from] = true;
    go(g, &mut vec![from], &mut on_path, 0, keep_going, visit);
}

/// All bubbles for the query, as a set of canonical bubbles, found by
/// pairing every two simple paths from the source that end at the same
/// vertex.
pub fn oracle_enumerate(g: &Digraph, q: &BubbleQuery) -> Result<BTreeSet<Bubble>> {
    guard(g)?;
    if q.source >= g.vertex_count() {
        return Err(Error::NoSuchVertex(q.source.to_string()));
    }
    let q = BubbleQuery::new(q.source, q.alpha1, q.alpha2, q.max_branching);
    let branching = g.branching_mask();
    let internal_branching = |p: &[VertexId]| -> usize {
        if p.len() < 3 {
            return 0;
        }
        p[1..p.len() - 1].iter().filter(|&&v| branching[v]).count()
    };
    let mut by_sink: BTreeMap<VertexId, Vec<(Vec<VertexId>, u64)>> = BTreeMap::new();
    simple_paths(
        g,
        q.source,
        &mut |p, len| len <= q.alpha1 && internal_branching(p) <= q.max_branching,
        &mut |p, len| {
            if p.len() >= 2 && len <= q.alpha1 && internal_branching(p) <= q.max_branching {
                by_sink.entry(*p.last().unwrap()).or_default().push((p.to_vec(), len));
            }
        },
    );
    let mut out = BTreeSet::new();
    for paths in by_sink.values() {
        for (i, (a, la)) in paths.iter().enumerate() {
            for (b, lb) in &paths[i + 1..] {
                if !q.accepts_lengths(*la, *lb) {
                    continue;
                }
                let inner_a = &a[1..a.len() - 1];
                if b[1..b.len() - 1].iter().any(|v| inner_a.contains(v)) {
                    continue;
                }
                out.insert(Bubble::from_paths(g, &branching, a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// dist[j][v] by minimising over every simple path, charging each vertex
/// left by the path (the start only if `count_source`).
pub fn exhaustive_branching_distances(
    g: &Digraph,
    source: VertexId,
    b: usize,
    count_source: bool,
) -> Result<Vec<Vec<Option<u64>>>> {
    guard(g)?;
    if source >= g.vertex_count() {
        return Err(Error::NoSuchVertex(source.to_string()));
    }
    let mut dist = vec![vec![None::<u64>; g.vertex_count()]; b + 1];
    let charges = |p: &[VertexId]| -> usize {
        let left = &p[..p.len() - 1];
        left.iter()
            .enumerate()
            .filter(|&(i, &v)| g.is_branching(v) && (i > 0 || count_source))
            .count()
    };
    simple_paths(g, source, &mut |_, _| true, &mut |p, len| {
        let c = charges(p);
        let v = *p.last().unwrap();
        for row in dist.iter_mut().skip(c) {
            if row[v].is_none_or(|d| len < d) {
                row[v] = Some(len);
            }
        }
    });
    Ok(dist)
}
