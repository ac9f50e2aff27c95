//! Synthetic "repeat trap" instances: an alternative-splicing-like bubble
//! planted inside one copy of a repeat family.
//!
//! Two isoforms share the host copy and differ by an inserted middle
//! segment: `host[..h] + upper + host[h..]` and `host[..h] + lower +
//! host[h..]`. The remaining copies of the family are added as reads, so
//! the bubble's source and sink k-mers sit among many similar repeat
//! k-mers.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{generate_with, random_sequence};
use crate::debruijn::{build_graph, DeBruijnGraph};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::kmer::{check_k, Sequence, ALPHABET};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BubbleSpec {
    /// Length of the middle segment of the upper isoform.
    pub upper_middle: usize,
    /// Length of the middle segment of the lower isoform.
    pub lower_middle: usize,
    /// Insertion offset into the host copy; the middle of the copy if unset.
    pub insert_at: Option<usize>,
}

impl Default for BubbleSpec {
    fn default() -> Self {
        BubbleSpec {
            upper_middle: 40,
            lower_middle: 10,
            insert_at: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrapSpec {
    /// Repeat copies; 0 plants the bubble in a unique random host.
    pub m: usize,
    pub n: usize,
    pub alpha: f64,
    pub k: usize,
}

impl Default for TrapSpec {
    fn default() -> Self {
        TrapSpec {
            m: 50,
            n: 300,
            alpha: 0.03,
            k: 25,
        }
    }
}

/// Ground truth for the planted bubble in one particular graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlantedBubble {
    pub source: VertexId,
    pub sink: VertexId,
    pub upper: Vec<VertexId>,
    pub lower: Vec<VertexId>,
    pub upper_len: u64,
    pub lower_len: u64,
    pub upper_branching: usize,
    pub lower_branching: usize,
}

#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub reads: Vec<Sequence>,
    pub raw: DeBruijnGraph,
    pub compressed: DeBruijnGraph,
    /// Source k-mer, middle, sink k-mer of each isoform.
    pub upper_seq: Vec<u8>,
    pub lower_seq: Vec<u8>,
    /// The planted bubble in `compressed`.
    pub planted: PlantedBubble,
}

fn pick_other<R: Rng>(rng: &mut R, avoid: &[u8]) -> u8 {
    let allowed: Vec<u8> = ALPHABET.iter().copied().filter(|c| !avoid.contains(c)).collect();
    allowed[rng.gen_range(0..allowed.len())]
}

fn middle<R: Rng>(rng: &mut R, len: usize, avoid_first: &[u8], avoid_last: &[u8]) -> Vec<u8> {
    let mut m = random_sequence(rng, len);
    m[0] = pick_other(rng, avoid_first);
    m[len - 1] = pick_other(rng, avoid_last);
    m
}

pub fn planted_bubble_graph(bubble: &BubbleSpec, trap: &TrapSpec, rng_seed: u64) -> Result<PlantedInstance> {
    check_k(trap.k)?;
    let k = trap.k;
    let h = bubble.insert_at.unwrap_or(trap.n / 2);
    if bubble.upper_middle < 2 || bubble.lower_middle < 2 {
        return Err(Error::InvalidSpec("middle segments need at least 2 bases".into()));
    }
    if h < k || trap.n < h + k {
        return Err(Error::InvalidSpec(format!(
            "insertion offset {h} must leave k = {k} bases on both sides of a length-{} host",
            trap.n
        )));
    }
    if !(0.0..=1.0).contains(&trap.alpha) {
        return Err(Error::InvalidAlpha(trap.alpha));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut copies = if trap.m == 0 {
        vec![random_sequence(&mut rng, trap.n)]
    } else {
        generate_with(&mut rng, trap.m, trap.n, trap.alpha, rng_seed)?
            .copies
            .into_iter()
            .map(Sequence::into_bytes)
            .collect()
    };
    let host = copies.remove(0);
    // Middles diverge right after the source k-mer and rejoin right before
    // the sink k-mer, away from the host's own continuation.
    let lower = middle(&mut rng, bubble.lower_middle, &[host[h]], &[host[h - 1]]);
    let upper = middle(
        &mut rng,
        bubble.upper_middle,
        &[host[h], lower[0]],
        &[host[h - 1], lower[bubble.lower_middle - 1]],
    );
    let isoform = |mid: &[u8]| [&host[..h], mid, &host[h..]].concat();
    let mut reads = vec![
        Sequence::from_valid(isoform(&upper)),
        Sequence::from_valid(isoform(&lower)),
    ];
    reads.extend(copies.into_iter().map(Sequence::from_valid));

    let raw = build_graph(&reads, k)?;
    let compressed = raw.compress();
    let flank = |mid: &[u8]| [&host[h - k..h], mid, &host[h..h + k]].concat();
    let upper_seq = flank(&upper);
    let lower_seq = flank(&lower);
    let planted = locate_planted(&compressed, &upper_seq, &lower_seq)?;
    Ok(PlantedInstance {
        reads,
        raw,
        compressed,
        upper_seq,
        lower_seq,
        planted,
    })
}

/// Find the bubble spelled by `upper_seq` / `lower_seq` (each running from
/// the source k-mer to the sink k-mer) in `g`.
pub fn locate_planted(g: &DeBruijnGraph, upper_seq: &[u8], lower_seq: &[u8]) -> Result<PlantedBubble> {
    let k = g.k();
    let mut wanted: HashMap<&[u8], Option<VertexId>> = upper_seq
        .windows(k)
        .chain(lower_seq.windows(k))
        .map(|w| (w, None))
        .collect();
    for (v, label) in g.labels().iter().enumerate() {
        for w in label.windows(k) {
            if let Some(slot) = wanted.get_mut(w) {
                *slot = Some(v);
            }
        }
    }
    let trace = |seq: &[u8]| -> Result<Vec<VertexId>> {
        let mut path: Vec<VertexId> = Vec::new();
        for w in seq.windows(k) {
            let v = wanted[w].ok_or_else(|| Error::InvalidSpec("planted k-mer missing from graph".into()))?;
            if path.last() != Some(&v) {
                path.push(v);
            }
        }
        Ok(path)
    };
    let upper = trace(upper_seq)?;
    let lower = trace(lower_seq)?;
    let collision = || Error::InvalidSpec("planted bubble collides with repeat k-mers; try another seed".into());
    let (source, sink) = (upper[0], *upper.last().expect("non-empty"));
    if lower[0] != source || *lower.last().expect("non-empty") != sink || source == sink {
        return Err(collision());
    }
    if !g.label(source).ends_with(&upper_seq[..k]) || !g.label(sink).starts_with(&upper_seq[upper_seq.len() - k..]) {
        return Err(collision());
    }
    let inner = |p: &[VertexId]| p[1..p.len() - 1].to_vec();
    let (iu, il) = (inner(&upper), inner(&lower));
    if iu.iter().any(|v| il.contains(v) || *v == source || *v == sink) || il.iter().any(|v| *v == source || *v == sink)
    {
        return Err(collision());
    }
    let length = |p: &[VertexId]| -> Result<u64> {
        p.windows(2)
            .map(|e| g.graph().arc(e[0], e[1]).map(|a| a.weight).ok_or_else(collision))
            .sum()
    };
    let branching = |p: &[VertexId]| inner(p).iter().filter(|&&v| g.graph().is_branching(v)).count();
    Ok(PlantedBubble {
        source,
        sink,
        upper_len: length(&upper)?,
        lower_len: length(&lower)?,
        upper_branching: branching(&upper),
        lower_branching: branching(&lower),
        upper,
        lower,
    })
}
