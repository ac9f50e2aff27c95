//! Bubble output: paired FASTA records and JSON-lines.
//!
//! Vertices are reported by their GFA segment names (id + 1).

use std::io::Write;

use serde::Serialize;

use super::{Bubble, EnumerationReport, Status};
use crate::debruijn::DeBruijnGraph;
use crate::seqio::write_fasta_record;

fn names(path: &[usize]) -> Vec<usize> {
    path.iter().map(|v| v + 1).collect()
}

/// Upper (path1) and lower (path2) records, headers in the style
/// `bubble_<i>|source_<s>|sink_<t>|upper|length_<l>|branching_<b>`.
pub fn write_bubble_fasta<W: Write>(w: &mut W, g: &DeBruijnGraph, index: usize, b: &Bubble) -> std::io::Result<()> {
    let sides = [
        ("upper", &b.path1, b.len1, b.branch1),
        ("lower", &b.path2, b.len2, b.branch2),
    ];
    for (side, path, len, branching) in sides {
        let header = format!(
            "bubble_{index}|source_{}|sink_{}|{side}|length_{len}|branching_{branching}",
            b.source + 1,
            b.sink + 1
        );
        write_fasta_record(w, &header, &g.spell(path))?;
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct BubbleRecord {
    pub record: &'static str,
    pub index: usize,
    pub source: usize,
    pub sink: usize,
    pub path1: Vec<usize>,
    pub path2: Vec<usize>,
    pub len1: u64,
    pub len2: u64,
    pub branch1: usize,
    pub branch2: usize,
    /// Time from the start of this source's enumeration to the emission.
    pub elapsed_us: u64,
}

impl BubbleRecord {
    pub fn new(index: usize, b: &Bubble, elapsed_us: u64) -> Self {
        BubbleRecord {
            record: "bubble",
            index,
            source: b.source + 1,
            sink: b.sink + 1,
            path1: names(&b.path1),
            path2: names(&b.path2),
            len1: b.len1,
            len2: b.len2,
            branch1: b.branch1,
            branch2: b.branch2,
            elapsed_us,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SourceSummary {
    pub record: &'static str,
    pub source: usize,
    pub bubbles: usize,
    pub nodes: u64,
    pub max_depth: usize,
    #[serde(flatten)]
    pub status: Status,
    pub elapsed_us: u64,
    pub max_gap_us: u64,
    pub mean_gap_us: u64,
}

impl From<&EnumerationReport> for SourceSummary {
    fn from(r: &EnumerationReport) -> Self {
        let status = match &r.status {
            Status::Complete => Status::Complete,
            Status::PartialEnumeration { frontier } => Status::PartialEnumeration {
                frontier: super::Frontier {
                    path1: names(&frontier.path1),
                    path2: names(&frontier.path2),
                },
            },
        };
        SourceSummary {
            record: "source_summary",
            source: r.source + 1,
            bubbles: r.bubbles,
            nodes: r.nodes,
            max_depth: r.max_depth,
            status,
            elapsed_us: r.elapsed.as_micros() as u64,
            max_gap_us: r.max_gap.as_micros() as u64,
            mean_gap_us: r.mean_gap.as_micros() as u64,
        }
    }
}

pub fn write_json_line<W: Write, T: Serialize>(w: &mut W, value: &T) -> std::io::Result<()> {
    serde_json::to_writer(&mut *w, value)?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bubble::{collect_bubbles, BubbleQuery, Limits};
    use crate::debruijn::build_graph;

    #[test]
    fn fasta_spells_both_paths() {
        let reads: Vec<crate::Sequence> = ["AACCGTTGG", "AACCATTGG"].iter().map(|s| s.parse().unwrap()).collect();
        let g = build_graph(&reads, 3).unwrap().compress();
        let s = g.vertex(b"AACC").unwrap();
        let (bs, rep) = collect_bubbles(g.graph(), &BubbleQuery::new(s, 10, 10, 0), None, Limits::default()).unwrap();
        assert_eq!(bs.len(), 1);
        let mut out = Vec::new();
        write_bubble_fasta(&mut out, &g, 0, &bs[0]).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].contains("|upper|length_5|branching_0"));
        let mut seqs = vec![lines[1], lines[3]];
        seqs.sort();
        assert_eq!(seqs, ["AACCATTGG", "AACCGTTGG"]);

        let mut jl = Vec::new();
        write_json_line(&mut jl, &BubbleRecord::new(0, &bs[0], 5)).unwrap();
        write_json_line(&mut jl, &SourceSummary::from(&rep)).unwrap();
        let text = String::from_utf8(jl).unwrap();
        let v: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(v[0]["record"], "bubble");
        assert_eq!(v[0]["source"], s + 1);
        assert_eq!(v[1]["status"], "complete");
    }
}
