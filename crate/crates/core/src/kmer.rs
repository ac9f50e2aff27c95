//! DNA alphabet, read validation and k-mer extraction.
//!
//! K-mers are packed two bits per base into a `u128`, first base in the most
//! significant position, so numeric order on equal-length k-mers is the
//! lexicographic order of their strings.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const ALPHABET: [u8; 4] = *b"ACGT";

/// Smallest admissible k. Arcs overlap in k-1 >= 1 characters.
pub const MIN_K: usize = 2;
/// Largest admissible k, so that a (k+1)-mer still fits in 128 bits.
pub const MAX_K: usize = 63;

#[inline]
pub fn encode_base(b: u8) -> Option<u8> {
    match b {
        b'A' => Some(0),
        b'C' => Some(1),
        b'G' => Some(2),
        b'T' => Some(3),
        _ => None,
    }
}

#[inline]
pub fn decode_base(code: u8) -> u8 {
    ALPHABET[(code & 3) as usize]
}

pub fn check_k(k: usize) -> Result<()> {
    if (MIN_K..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidK(k))
    }
}

/// A non-empty string over {A, C, G, T}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequence(Vec<u8>);

impl Sequence {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(pos) = bytes.iter().position(|&b| encode_base(b).is_none()) {
            return Err(Error::InvalidCharacter(pos));
        }
        Ok(Sequence(bytes))
    }

    pub(crate) fn from_valid(bytes: Vec<u8>) -> Self {
        debug_assert!(!bytes.is_empty() && bytes.iter().all(|&b| encode_base(b).is_some()));
        Sequence(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence({})", self)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).expect("ACGT is ASCII"))
    }
}

impl serde::Serialize for Sequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sequence::new(s.as_bytes())
    }
}

/// A k-mer with 1 <= k <= 64, packed into a `u128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Kmer {
    // `len` first so the derived ordering groups by length before content.
    len: u8,
    bits: u128,
}

impl Kmer {
    pub fn from_bytes(bytes: &[u8]) -> Option<Kmer> {
        if bytes.is_empty() || bytes.len() > 64 {
            return None;
        }
        let mut bits = 0u128;
        for &b in bytes {
            bits = (bits << 2) | encode_base(b)? as u128;
        }
        Some(Kmer {
            len: bytes.len() as u8,
            bits,
        })
    }

    pub fn from_bits(bits: u128, len: usize) -> Kmer {
        assert!((1..=64).contains(&len));
        Kmer {
            len: len as u8,
            bits: bits & mask(len),
        }
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        unpack(self.bits, self.len())
    }

    /// The first `len() - 1` bases.
    pub fn prefix(&self) -> Kmer {
        Kmer::from_bits(self.bits >> 2, self.len() - 1)
    }

    /// The last `len() - 1` bases.
    pub fn suffix(&self) -> Kmer {
        Kmer::from_bits(self.bits, self.len() - 1)
    }
}

impl fmt::Debug for Kmer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Kmer({})", self)
    }
}

impl fmt::Display for Kmer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8(self.to_bytes()).expect("ACGT is ASCII"))
    }
}

#[inline]
pub(crate) fn mask(len: usize) -> u128 {
    if len >= 64 {
        u128::MAX
    } else {
        (1u128 << (2 * len)) - 1
    }
}

pub(crate) fn unpack(bits: u128, len: usize) -> Vec<u8> {
    (0..len)
        .map(|i| decode_base((bits >> (2 * (len - 1 - i))) as u8))
        .collect()
}

/// Packed codes of every length-`w` window of `seq`, in order. `seq` must be
/// valid ACGT.
pub(crate) fn windows_packed(seq: &[u8], w: usize) -> impl Iterator<Item = u128> + '_ {
    let m = mask(w);
    let mut acc = 0u128;
    seq.iter().enumerate().filter_map(move |(i, &b)| {
        acc = ((acc << 2) | encode_base(b).expect("validated sequence") as u128) & m;
        (i + 1 >= w).then_some(acc)
    })
}

/// How non-ACGT characters in raw reads are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NPolicy {
    /// Break the read into maximal ACGT fragments.
    #[default]
    Split,
    /// Fail on the first invalid character.
    Reject,
}

/// Clean raw read strings. Lower-case bases are upper-cased first.
pub fn validate_reads<S: AsRef<[u8]>>(raw: &[S], policy: NPolicy) -> Result<Vec<Sequence>> {
    let mut out = Vec::new();
    for read in raw {
        let read: Vec<u8> = read.as_ref().iter().map(u8::to_ascii_uppercase).collect();
        match policy {
            NPolicy::Reject => {
                if read.is_empty() {
                    continue;
                }
                out.push(Sequence::new(read)?);
            }
            NPolicy::Split => out.extend(
                read.split(|&b| encode_base(b).is_none())
                    .filter(|frag| !frag.is_empty())
                    .map(|frag| Sequence::from_valid(frag.to_vec())),
            ),
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub kmers: BTreeSet<Kmer>,
    /// Sequences shorter than k, which contribute nothing.
    pub skipped: usize,
}

/// The set of distinct k-mers over all sequences.
pub fn span(seqs: &[Sequence], k: usize) -> Result<Span> {
    check_k(k)?;
    let skipped = seqs.iter().filter(|s| s.len() < k).count();
    let kmers = seqs
        .par_iter()
        .fold(BTreeSet::new, |mut set, s| {
            set.extend(windows_packed(s.as_bytes(), k).map(|b| Kmer::from_bits(b, k)));
            set
        })
        .reduce(BTreeSet::new, |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            a
        });
    Ok(Span { kmers, skipped })
}

pub fn hamming_distance(a: &Sequence, b: &Sequence) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.as_bytes().iter().zip(b.as_bytes()).filter(|(x, y)| x != y).count())
}
