//! Compact binary edge list.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "DBG1"  k:u16  vertex_count:u32
//! per vertex:  label_len:u32  ceil(label_len/4) bytes, 2 bits per base,
//!              first base in the low bits of the first byte
//! arc_count:u32
//! per arc:     tail:u32  head:u32  multiplicity:u32
//! ```

use std::io::{Read, Write};

use super::DeBruijnGraph;
use crate::error::{Error, Result};
use crate::kmer::{decode_base, encode_base};

pub const BINARY_MAGIC: &[u8; 4] = b"DBG1";

pub fn write_binary<W: Write>(g: &DeBruijnGraph, w: &mut W) -> Result<()> {
    w.write_all(BINARY_MAGIC)?;
    w.write_all(&(g.k() as u16).to_le_bytes())?;
    w.write_all(&(g.vertex_count() as u32).to_le_bytes())?;
    for l in g.labels() {
        w.write_all(&(l.len() as u32).to_le_bytes())?;
        let mut packed = vec![0u8; l.len().div_ceil(4)];
        for (i, &b) in l.iter().enumerate() {
            packed[i / 4] |= encode_base(b).expect("labels are ACGT") << (2 * (i % 4));
        }
        w.write_all(&packed)?;
    }
    w.write_all(&(g.arc_count() as u32).to_le_bytes())?;
    for (u, a) in g.graph().arcs() {
        w.write_all(&(u as u32).to_le_bytes())?;
        w.write_all(&(a.head as u32).to_le_bytes())?;
        w.write_all(&a.multiplicity.to_le_bytes())?;
    }
    Ok(())
}

fn u32_le<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(u32::from_le_bytes(b))
}

fn truncated(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::UnexpectedEof {
        Error::Format("truncated DBG1 file".into())
    } else {
        Error::Io(e)
    }
}

pub fn read_binary<R: Read>(r: &mut R) -> Result<DeBruijnGraph> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(truncated)?;
    if &magic != BINARY_MAGIC {
        return Err(Error::Format("missing DBG1 magic".into()));
    }
    let mut kb = [0u8; 2];
    r.read_exact(&mut kb).map_err(truncated)?;
    let k = u16::from_le_bytes(kb) as usize;
    let n = u32_le(r)? as usize;
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let len = u32_le(r)? as usize;
        let mut packed = vec![0u8; len.div_ceil(4)];
        r.read_exact(&mut packed).map_err(truncated)?;
        labels.push((0..len).map(|i| decode_base(packed[i / 4] >> (2 * (i % 4)))).collect());
    }
    let m = u32_le(r)? as usize;
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        arcs.push((u32_le(r)? as usize, u32_le(r)? as usize, u32_le(r)?));
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(Error::Format("trailing bytes after DBG1 arc list".into()));
    }
    DeBruijnGraph::from_parts(k, labels, arcs)
}
