use std::io::{BufRead, Write};

use super::DeBruijnGraph;
use crate::error::{Error, Result};

/// Write GFA-1: optional `#` comment lines, an `H` line carrying k, one
/// `S` line per vertex (1-based names in id order) and one `L` line per
/// arc with a (k-1)M overlap and the multiplicity as a `KC` tag.
pub fn write_gfa<W: Write>(g: &DeBruijnGraph, w: &mut W, comments: &[String]) -> Result<()> {
    for c in comments {
        for line in c.lines() {
            writeln!(w, "# {line}")?;
        }
    }
    writeln!(w, "H\tVN:Z:1.0\tKM:i:{}", g.k())?;
    for (i, l) in g.labels().iter().enumerate() {
        write!(w, "S\t{}\t", i + 1)?;
        w.write_all(l)?;
        writeln!(w)?;
    }
    for (u, a) in g.graph().arcs() {
        writeln!(
            w,
            "L\t{}\t+\t{}\t+\t{}M\tKC:i:{}",
            u + 1,
            a.head + 1,
            g.k() - 1,
            a.multiplicity
        )?;
    }
    Ok(())
}

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("GFA line {line}: {msg}"))
}

/// Read a graph written by [`write_gfa`]. Comment lines are returned
/// separately, without their `# ` prefix.
pub fn read_gfa<R: BufRead>(r: R) -> Result<(DeBruijnGraph, Vec<String>)> {
    let mut k = None;
    let mut comments = Vec::new();
    let mut names = std::collections::HashMap::new();
    let mut labels = Vec::new();
    let mut arcs = Vec::new();
    for (ln, line) in r.lines().enumerate() {
        let line = line?;
        let ln = ln + 1;
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields[0] {
            "H" => {
                for tag in &fields[1..] {
                    if let Some(v) = tag.strip_prefix("KM:i:") {
                        k = Some(v.parse::<usize>().map_err(|e| bad(ln, e))?);
                    }
                }
            }
            "S" => {
                if fields.len() < 3 {
                    return Err(bad(ln, "S line needs a name and a sequence"));
                }
                if names.insert(fields[1].to_string(), labels.len()).is_some() {
                    return Err(bad(ln, format!("duplicate segment {}", fields[1])));
                }
                labels.push(fields[2].as_bytes().to_vec());
            }
            "L" => {
                if fields.len() < 6 {
                    return Err(bad(ln, "L line needs six fields"));
                }
                if fields[2] != "+" || fields[4] != "+" {
                    return Err(bad(ln, "only forward orientations are supported"));
                }
                let id = |name: &str| {
                    names
                        .get(name)
                        .copied()
                        .ok_or_else(|| bad(ln, format!("unknown segment {name}")))
                };
                let mult = fields[6..]
                    .iter()
                    .find_map(|t| t.strip_prefix("KC:i:"))
                    .map(|v| v.parse::<u32>().map_err(|e| bad(ln, e)))
                    .transpose()?
                    .unwrap_or(1);
                let overlap = fields[5]
                    .strip_suffix('M')
                    .and_then(|o| o.parse::<usize>().ok())
                    .ok_or_else(|| bad(ln, "overlap must be <n>M"))?;
                arcs.push((id(fields[1])?, id(fields[3])?, mult, overlap, ln));
            }
            _ => {}
        }
    }
    let k = k.ok_or_else(|| Error::Format("GFA header lacks KM:i:<k>".into()))?;
    if let Some(&(.., ln)) = arcs.iter().find(|a| a.3 + 1 != k) {
        return Err(bad(ln, format!("overlap differs from k-1 = {}", k - 1)));
    }
    let g = DeBruijnGraph::from_parts(k, labels, arcs.into_iter().map(|(u, v, m, ..)| (u, v, m)))?;
    Ok((g, comments))
}
