use crate::error::{Error, Result};
use crate::graph::Digraph;

/// The alternating ring R(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingGadget {
    pub graph: Digraph,
    /// Parallel arcs merged because the graph is simple. Non-zero only for
    /// x = 1, where both arcs of v0 point at v1.
    pub collapsed_arcs: usize,
}

/// A cycle on 2x vertices with alternating arc directions: v_{2i} -> v_{2i+1}
/// and v_{2i} -> v_{2i-1 mod 2x}. Even vertices are sources, odd vertices
/// sinks.
pub fn ring_gadget(x: usize) -> Result<RingGadget> {
    if x < 1 {
        return Err(Error::InvalidParameter("ring gadget needs x >= 1".into()));
    }
    let n = 2 * x;
    let arcs: Vec<_> = (0..x)
        .flat_map(|i| {
            let v = 2 * i;
            [(v, v + 1, 1), (v, (v + n - 1) % n, 1)]
        })
        .collect();
    let graph = Digraph::from_arcs(n, arcs);
    Ok(RingGadget {
        collapsed_arcs: 2 * x - graph.arc_count(),
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_two() {
        let r = ring_gadget(2).unwrap();
        assert_eq!(r.graph.vertex_count(), 4);
        assert_eq!(r.graph.arc_count(), 4);
        assert_eq!(r.graph.gamma(), 0);
        assert_eq!(r.collapsed_arcs, 0);
    }

    #[test]
    fn x_one_is_degenerate() {
        let r = ring_gadget(1).unwrap();
        assert_eq!(r.graph.vertex_count(), 2);
        assert_eq!(r.graph.arc_count(), 1);
        assert_eq!(r.collapsed_arcs, 1);
        // The lone arc v0 -> v1 passes the degree test.
        assert_eq!(r.graph.gamma(), 1);
    }

    #[test]
    fn alternation() {
        for x in 2..20 {
            let g = ring_gadget(x).unwrap().graph;
            let sources = (0..2 * x).filter(|&v| g.in_degree(v) == 0).count();
            let sinks = (0..2 * x).filter(|&v| g.out_degree(v) == 0).count();
            assert_eq!((sources, sinks), (x, x));
            for v in 0..2 * x {
                let want = if v % 2 == 0 { (2, 0) } else { (0, 2) };
                assert_eq!((g.out_degree(v), g.in_degree(v)), want);
            }
            assert_eq!(g.gamma(), 0);
        }
        assert!(ring_gadget(0).is_err());
    }
}
