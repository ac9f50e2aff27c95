use std::collections::HashMap;

use crate::error::Result;
use crate::kmer::{check_k, windows_packed, Sequence};

type Context = (Option<u8>, Option<u8>);

/// Count rigid (k-1)-mers by scanning the reads, without building a graph.
///
/// A (k-1)-mer M seen with left symbol x and right symbol y is rigid in the
/// context (x, y) when every occurrence of xM that has a right neighbour has
/// y there, and every occurrence of My that has a left neighbour has x
/// there. Each rigid (x, M, y) is counted once. Occurrences at a read end
/// constrain only the side they have, and a context must come from at
/// least one interior occurrence.
///
/// When M occurs in a single context this is the usual notion of a
/// boundary-rigid (k-1)-mer; counting per context keeps the count equal to
/// the number of compressible arcs of G_k(R) when M occurs in several
/// disjoint contexts.
pub fn count_boundary_rigid(reads: &[Sequence], k: usize) -> Result<usize> {
    check_k(k)?;
    let w = k - 1;
    let mut contexts: HashMap<u128, Vec<Context>> = HashMap::new();
    for r in reads {
        let s = r.as_bytes();
        if s.len() < w {
            continue;
        }
        for (i, code) in windows_packed(s, w).enumerate() {
            let pred = i.checked_sub(1).map(|p| s[p]);
            let succ = s.get(i + w).copied();
            let seen = contexts.entry(code).or_default();
            if !seen.contains(&(pred, succ)) {
                seen.push((pred, succ));
            }
        }
    }
    let mut count = 0;
    for seen in contexts.values() {
        for &(p, q) in seen {
            let (Some(x), Some(y)) = (p, q) else { continue };
            let rigid = seen.iter().all(|&(p2, q2)| {
                (p2 != Some(x) || q2.is_none() || q2 == Some(y)) && (q2 != Some(y) || p2.is_none() || p2 == Some(x))
            });
            count += rigid as usize;
        }
    }
    Ok(count)
}
