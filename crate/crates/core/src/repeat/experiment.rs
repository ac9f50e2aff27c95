use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{generate_with, random_sequence};
use crate::debruijn::build_graph;
use crate::error::{Error, Result};
use crate::kmer::{check_k, Sequence};

/// Upper bound on m * n per trial, which bounds the vertex count of each
/// trial's graph.
pub const MAX_TRIAL_BASES: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaExperiment {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
    pub trials: usize,
    pub rng_seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaTrial {
    pub trial: usize,
    pub gamma_random: usize,
    pub gamma_model: usize,
    pub arcs_random: usize,
    pub arcs_model: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaExperimentReport {
    pub params: GammaExperiment,
    pub trials: Vec<GammaTrial>,
    pub mean_gamma_random: f64,
    pub mean_gamma_model: f64,
    /// mean_gamma_model / mean_gamma_random, 0 when the baseline is 0.
    pub ratio: f64,
    /// m (n - k): gamma of m random reads when no k-mer repeats.
    pub collision_free_gamma: usize,
    pub warnings: Vec<String>,
}

/// Per-trial generator. Trials draw from disjoint ChaCha streams so a
/// trial's result does not depend on which thread runs it.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trial(p: &GammaExperiment, trial: usize) -> Result<GammaTrial> {
    let mut rng = trial_rng(p.rng_seed, trial);
    let random: Vec<Sequence> = (0..p.m)
        .map(|_| Sequence::from_valid(random_sequence(&mut rng, p.n)))
        .collect();
    let family_seed = rng.gen::<u64>();
    let family = generate_with(&mut rng, p.m, p.n, p.alpha, family_seed)?;
    let g_random = build_graph(&random, p.k)?;
    let g_model = build_graph(&family.copies, p.k)?;
    Ok(GammaTrial {
        trial,
        gamma_random: g_random.gamma(),
        gamma_model: g_model.gamma(),
        arcs_random: g_random.arc_count(),
        arcs_model: g_model.arc_count(),
    })
}

/// Compare gamma of G_k over m uniform random reads against gamma over a
/// repeat family S(m, n, alpha) of the same shape, for each trial.
pub fn gamma_experiment(p: &GammaExperiment) -> Result<GammaExperimentReport> {
    check_k(p.k)?;
    if p.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if p.m == 0 || p.n <= p.k {
        return Err(Error::InvalidParameter(format!(
            "need m >= 1 and n > k (got m={}, n={}, k={})",
            p.m, p.n, p.k
        )));
    }
    if !(0.0..=1.0).contains(&p.alpha) {
        return Err(Error::InvalidAlpha(p.alpha));
    }
    if p.m.saturating_mul(p.n) > MAX_TRIAL_BASES {
        return Err(Error::InvalidParameter(format!(
            "m * n = {} exceeds the per-trial cap of {MAX_TRIAL_BASES}",
            p.m * p.n
        )));
    }
    let mut warnings = Vec::new();
    let kmer_space = 4f64.powi(p.k as i32);
    if (p.m * (p.n - p.k + 2)) as f64 > kmer_space {
        warnings.push(format!(
            "m(n-k+2) = {} exceeds 4^k; the random baseline will have many k-mer collisions",
            p.m * (p.n - p.k + 2)
        ));
    }
    let trials = (0..p.trials)
        .into_par_iter()
        .map(|t| run_trial(p, t))
        .collect::<Result<Vec<_>>>()?;
    let mean = |f: fn(&GammaTrial) -> usize| trials.iter().map(|t| f(t) as f64).sum::<f64>() / trials.len() as f64;
    let mean_gamma_random = mean(|t| t.gamma_random);
    let mean_gamma_model = mean(|t| t.gamma_model);
    Ok(GammaExperimentReport {
        params: p.clone(),
        ratio: if mean_gamma_random == 0.0 {
            0.0
        } else {
            mean_gamma_model / mean_gamma_random
        },
        mean_gamma_random,
        mean_gamma_model,
        collision_free_gamma: p.m * (p.n - p.k),
        trials,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: usize, n: usize, k: usize, alpha: f64, trials: usize) -> GammaExperiment {
        GammaExperiment {
            m,
            n,
            k,
            alpha,
            trials,
            rng_seed: 2024,
        }
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(matches!(
            gamma_experiment(&params(5, 50, 9, 0.1, 0)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn deterministic_regardless_of_threads() {
        let p = params(10, 80, 9, 0.05, 4);
        let a = gamma_experiment(&p).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| gamma_experiment(&p).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.trials.len(), 4);
    }

    #[test]
    fn single_copy_matches_random_read() {
        // One copy of a uniform sequence is itself a uniform read.
        let r = gamma_experiment(&params(1, 200, 15, 0.3, 5)).unwrap();
        for t in &r.trials {
            assert_eq!(t.gamma_model, 200 - 15);
            assert_eq!(t.gamma_random, 200 - 15);
        }
    }

    #[test]
    fn warns_outside_collision_free_regime() {
        let r = gamma_experiment(&params(50, 200, 4, 0.1, 1)).unwrap();
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn gamma_model_shrinks_with_alpha() {
        let mut prev = None;
        for alpha in [0.0, 0.01, 0.05, 0.1] {
            let r = gamma_experiment(&params(60, 200, 15, alpha, 4)).unwrap();
            if alpha == 0.0 {
                assert!(r.trials.iter().all(|t| t.gamma_model == 200 - 15));
            }
            if let Some(p) = prev {
                assert!(r.mean_gamma_model >= p, "alpha {alpha}: {} < {p}", r.mean_gamma_model);
            }
            prev = Some(r.mean_gamma_model);
        }
    }
}
