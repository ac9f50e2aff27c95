//! The uniform repeat model and the statistics built on it.

mod experiment;
mod gadget;
mod planted;
mod rigid;

pub use experiment::{gamma_experiment, GammaExperiment, GammaExperimentReport, GammaTrial};
pub use gadget::{ring_gadget, RingGadget};
pub use planted::{locate_planted, planted_bubble_graph, BubbleSpec, PlantedBubble, PlantedInstance, TrapSpec};
pub use rigid::count_boundary_rigid;

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kmer::{Sequence, ALPHABET};
use crate::seqio::write_fasta_record;

/// m mutated copies of a uniformly random seed sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepeatFamily {
    pub seed_sequence: Sequence,
    pub copies: Vec<Sequence>,
    /// Positions at which each copy differs from the seed sequence.
    pub mutations: Vec<usize>,
    pub alpha: f64,
    pub rng_seed: u64,
}

pub(crate) fn random_sequence<R: Rng>(rng: &mut R, n: usize) -> Vec<u8> {
    (0..n).map(|_| ALPHABET[rng.gen_range(0..4)]).collect()
}

pub(crate) fn mutate_copy<R: Rng>(rng: &mut R, seed: &[u8], alpha: f64) -> (Vec<u8>, usize) {
    let mut muts = 0;
    let copy = seed
        .iter()
        .map(|&c| {
            if rng.gen_bool(alpha) {
                muts += 1;
                // One of the three other symbols, uniformly.
                let cur = ALPHABET.iter().position(|&a| a == c).expect("ACGT");
                ALPHABET[(cur + rng.gen_range(1..4)) % 4]
            } else {
                c
            }
        })
        .collect();
    (copy, muts)
}

impl RepeatFamily {
    pub fn write_fasta<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        for (i, (c, muts)) in self.copies.iter().zip(&self.mutations).enumerate() {
            write_fasta_record(w, &format!("copy_{} mutations={}", i + 1, muts), c.as_bytes())?;
        }
        Ok(())
    }
}

/// Draw S(m, n, alpha): a uniform seed sequence of length n and m copies in
/// which every position independently keeps its symbol with probability
/// 1 - alpha and otherwise takes one of the other three symbols.
pub fn generate_repeats(m: usize, n: usize, alpha: f64, rng_seed: u64) -> Result<RepeatFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    generate_with(&mut rng, m, n, alpha, rng_seed)
}

pub(crate) fn generate_with<R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
    alpha: f64,
    rng_seed: u64,
) -> Result<RepeatFamily> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "repeat family needs m >= 1 and n >= 1 (got m={m}, n={n})"
        )));
    }
    let seed = random_sequence(rng, n);
    let (copies, mutations) = (0..m)
        .map(|_| {
            let (c, muts) = mutate_copy(rng, &seed, alpha);
            (Sequence::from_valid(c), muts)
        })
        .unzip();
    Ok(RepeatFamily {
        seed_sequence: Sequence::from_valid(seed),
        copies,
        mutations,
        alpha,
        rng_seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmer::hamming_distance;

    #[test]
    fn alpha_zero_copies_equal_seed() {
        let f = generate_repeats(5, 10, 0.0, 42).unwrap();
        assert_eq!(f.copies.len(), 5);
        assert!(f.copies.iter().all(|c| *c == f.seed_sequence));
        assert!(f.mutations.iter().all(|&m| m == 0));
    }

    #[test]
    fn small_family_shape() {
        let f = generate_repeats(20, 10, 0.1, 7).unwrap();
        assert_eq!(f.copies.len(), 20);
        assert!(f.copies.iter().all(|c| c.len() == 10));
        for (c, &m) in f.copies.iter().zip(&f.mutations) {
            assert_eq!(hamming_distance(c, &f.seed_sequence).unwrap(), m);
        }
        let mut fasta = Vec::new();
        f.write_fasta(&mut fasta).unwrap();
        assert_eq!(fasta.iter().filter(|&&b| b == b'>').count(), 20);
    }

    #[test]
    fn mean_distance_is_alpha_n() {
        let f = generate_repeats(1000, 1000, 0.05, 1).unwrap();
        let mean = f.mutations.iter().sum::<usize>() as f64 / 1000.0;
        assert!((47.0..=53.0).contains(&mean), "mean distance {mean}");
    }

    #[test]
    fn alpha_one_changes_every_position() {
        let f = generate_repeats(3, 50, 1.0, 3).unwrap();
        assert!(f.mutations.iter().all(|&m| m == 50));
    }

    #[test]
    fn column_rates_within_three_standard_errors() {
        let (m, n, alpha) = (4000, 30, 0.1);
        let f = generate_repeats(m, n, alpha, 11).unwrap();
        let se = (alpha * (1.0 - alpha) / m as f64).sqrt();
        for j in 0..n {
            let col = f
                .copies
                .iter()
                .filter(|c| c.as_bytes()[j] != f.seed_sequence.as_bytes()[j]);
            let rate = col.count() as f64 / m as f64;
            assert!((rate - alpha).abs() <= 3.0 * se, "column {j}: {rate}");
        }
    }

    #[test]
    fn reproducible_and_validated() {
        assert_eq!(
            generate_repeats(4, 30, 0.2, 9).unwrap(),
            generate_repeats(4, 30, 0.2, 9).unwrap()
        );
        assert_ne!(
            generate_repeats(4, 30, 0.2, 9).unwrap(),
            generate_repeats(4, 30, 0.2, 10).unwrap()
        );
        assert!(matches!(generate_repeats(4, 30, 1.5, 9), Err(Error::InvalidAlpha(_))));
        assert!(matches!(generate_repeats(4, 30, -0.1, 9), Err(Error::InvalidAlpha(_))));
    }
}
