use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::model::complex_gaussian;
use super::{effective_channel, sensitivity_metric, ChannelError, ChannelRealization, SensitivityFamily};
use crate::decoder::{affine_system, qr_preprocess, sphere_decode_in, ParityCheck, SearchSpace};
use crate::lattices::{residue_member, shortest_vectors, unit_det_scale_sqr, LatticeId};

/// Trials are drawn and aggregated in fixed-size batches; the stopping rule
/// is evaluated only between batches so results do not depend on threading.
pub const BATCH_SIZE: u64 = 1024;

/// Which finite set of coefficient vectors is transmitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Codebook {
    /// Coordinates `u = 2q − Q + 1`, `q ∈ Z_Q`, with the lattice congruences
    /// applied to `q`.
    Pam,
    /// The `k` shortest vectors of the lattice, or of the coset `½𝟙 + L`
    /// when `offset` is set.
    Shortest { k: usize, offset: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub lattice: LatticeId,
    /// PAM alphabet size `Q` (ignored by shortest-vector codebooks).
    #[serde(rename = "q", alias = "Q")]
    pub alphabet: u32,
    pub snr_db: Vec<f64>,
    /// Trials per SNR point when no error target is set.
    pub trials_per_point: u64,
    pub seed: u64,
    #[serde(default)]
    pub normalize_mindet: bool,
    /// Stop a point once this many block errors have been seen.
    #[serde(default)]
    pub target_errors: Option<u64>,
    /// Trial cap when `target_errors` is set; defaults to `trials_per_point`.
    #[serde(default)]
    pub max_trials: Option<u64>,
    #[serde(default = "default_codebook")]
    pub codebook: Codebook,
}

fn default_codebook() -> Codebook {
    Codebook::Pam
}

impl SimConfig {
    pub fn new(lattice: LatticeId, alphabet: u32, snr_db: Vec<f64>, trials_per_point: u64, seed: u64) -> Self {
        Self {
            lattice,
            alphabet,
            snr_db,
            trials_per_point,
            seed,
            normalize_mindet: false,
            target_errors: None,
            max_trials: None,
            codebook: Codebook::Pam,
        }
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        let invalid = |m: &str| Err(ChannelError::InvalidConfig(m.to_string()));
        if self.snr_db.is_empty() {
            return invalid("snr_db grid is empty");
        }
        if self.snr_db.iter().any(|s| s.is_nan()) || self.snr_db.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("snr_db grid must be strictly increasing");
        }
        if self.trials_per_point == 0 {
            return invalid("trials_per_point must be at least 1");
        }
        if self.max_trials == Some(0) || self.target_errors == Some(0) {
            return invalid("max_trials and target_errors must be at least 1");
        }
        if matches!(self.lattice, LatticeId::L3) {
            return invalid("L3 has half-integral coordinates and no PAM basis");
        }
        if self.codebook == Codebook::Pam && self.alphabet < 2 {
            return invalid("q must be at least 2");
        }
        if self.normalize_mindet && self.lattice.min_det().is_none() {
            return Err(ChannelError::InvalidConfig(format!(
                "{} has no minimum determinant to normalize",
                self.lattice
            )));
        }
        Ok(())
    }

    fn trial_cap(&self) -> u64 {
        match self.target_errors {
            Some(_) => self.max_trials.unwrap_or(self.trials_per_point),
            None => self.trials_per_point,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlerPoint {
    pub snr_db: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub bler: f64,
    pub avg_nodes: f64,
    pub p95_nodes: f64,
}

/// Scale factors of a configuration, for the output metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimScaling {
    /// Mean squared norm of the transmitted coefficient vectors.
    pub mean_coeff_energy: f64,
    pub codebook_size: u64,
    /// Entry scale bringing the minimum determinant to one, when requested.
    pub mindet_entry_scale: Option<f64>,
    /// Squared amplitude applied to the coefficients at each SNR point.
    pub amplitude_sqr: Vec<f64>,
    pub snr_convention: String,
    pub fading: String,
}

/// The prepared transmit set.
struct Transmitter {
    space: SearchSpace,
    /// Transmitted coordinate `t = scale·q + shift` (natural order).
    scale: f64,
    shift: Vec<f64>,
    kind: Source,
    mean_energy: f64,
}

enum Source {
    /// Rejection sampling over `Z_Q^8`.
    Congruences,
    /// Uniform choice among listed `q` vectors.
    List(Vec<Vec<i64>>),
}

impl Transmitter {
    fn new(cfg: &SimConfig) -> Result<Self, ChannelError> {
        match cfg.codebook {
            Codebook::Pam => {
                let space = SearchSpace::for_lattice(cfg.lattice, cfg.alphabet)?;
                let q = cfg.alphabet;
                Ok(Self {
                    mean_energy: pam_mean_energy(cfg.lattice, q),
                    space,
                    scale: 2.0,
                    shift: vec![-(f64::from(q) - 1.0); 8],
                    kind: Source::Congruences,
                })
            }
            Codebook::Shortest { k, offset } => {
                let vectors = shortest_vectors(cfg.lattice, k, offset)?;
                let parity = i64::from(offset);
                let lo: Vec<i64> = (0..8).map(|c| vectors.iter().map(|v| v.doubled[c]).min().unwrap()).collect();
                let hi: Vec<i64> = (0..8).map(|c| vectors.iter().map(|v| v.doubled[c]).max().unwrap()).collect();
                let alphabet = (0..8).map(|c| (hi[c] - lo[c]) / 2 + 1).max().unwrap() as u32;
                let list: Vec<Vec<i64>> = vectors
                    .iter()
                    .map(|v| (0..8).map(|c| (v.doubled[c] - lo[c]) / 2).collect())
                    .collect();
                // lattice coordinate = q + (lo − parity)/2, so each check's
                // parity picks up the constant part
                let base: Vec<i64> = lo.iter().map(|l| (l - parity).div_euclid(2)).collect();
                let checks = cfg
                    .lattice
                    .parity_checks()
                    .iter()
                    .map(|&mask| {
                        let s: i64 = (0..8).filter(|c| mask >> c & 1 == 1).map(|c| base[c]).sum();
                        ParityCheck { mask, parity: s.rem_euclid(2) as u8 }
                    })
                    .collect();
                let mean_energy = vectors.iter().map(|v| v.norm_sqr()).sum::<f64>() / k as f64;
                let space = SearchSpace {
                    alphabet,
                    order: cfg.lattice.search_order().to_vec(),
                    checks,
                    codebook: Some(list.iter().cloned().collect::<HashSet<_>>()),
                };
                Ok(Self {
                    space,
                    scale: 1.0,
                    shift: lo.iter().map(|&l| l as f64 / 2.0).collect(),
                    kind: Source::List(list),
                    mean_energy,
                })
            }
        }
    }

    fn size(&self, cfg: &SimConfig) -> u64 {
        match &self.kind {
            Source::List(l) => l.len() as u64,
            Source::Congruences => {
                let members = (0..=u8::MAX).filter(|&w| residue_member(cfg.lattice, w)).count() as u64;
                u64::from(cfg.alphabet).pow(8) * members / 256
            }
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<i64> {
        match &self.kind {
            Source::List(list) => list[rng.random_range(0..list.len())].clone(),
            Source::Congruences => loop {
                let q: Vec<i64> = (0..8).map(|_| i64::from(rng.random_range(0..self.space.alphabet))).collect();
                if self.space.satisfies_all(&self.to_search(&q)) {
                    return q;
                }
            },
        }
    }

    fn to_search<T: Copy>(&self, natural: &[T]) -> Vec<T> {
        self.space.order.iter().map(|&k| natural[k]).collect()
    }

    fn coords(&self, q: &[i64]) -> Vec<f64> {
        q.iter().zip(&self.shift).map(|(&v, s)| self.scale * v as f64 + s).collect()
    }
}

/// Exact mean of `‖u‖²` for uniform PAM codewords satisfying the lattice
/// congruences.
fn pam_mean_energy(lattice: LatticeId, q: u32) -> f64 {
    let amplitude = |v: u32| 2.0 * f64::from(v) - f64::from(q) + 1.0;
    // per parity class: count and sum of squared amplitudes
    let count = |b: u32| (0..q).filter(|v| v % 2 == b).count() as f64;
    let energy = |b: u32| (0..q).filter(|v| v % 2 == b).map(|v| amplitude(v).powi(2)).sum::<f64>();
    let mut total = 0.0;
    let mut size = 0.0;
    for w in (0..=u8::MAX).filter(|&w| residue_member(lattice, w)) {
        let bit = |k: usize| u32::from(w >> k & 1);
        let words: f64 = (0..8).map(|k| count(bit(k))).product();
        size += words;
        for k in 0..8 {
            let others: f64 = (0..8).filter(|&l| l != k).map(|l| count(bit(l))).product();
            total += energy(bit(k)) * others;
        }
    }
    total / size
}

/// Decorrelates `(seed, snr index, trial index)` into a 64-bit stream seed.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent generator for one trial.
pub fn trial_rng(seed: u64, snr_index: u64, trial_index: u64) -> ChaCha8Rng {
    let s = splitmix64(splitmix64(splitmix64(seed) ^ snr_index) ^ trial_index);
    ChaCha8Rng::seed_from_u64(s)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialOutcome {
    pub error: bool,
    pub nodes: u64,
    pub sensitivity: f64,
}

/// SNR in dB to the squared amplitude applied to the coefficient vector.
///
/// Received signal energy per block is `4·a²·E‖t‖²` (each column of a
/// codeword has squared norm `‖t‖²` and `E|h_k|² = 1`), against total noise
/// energy `4`, so `a² = snr / E‖t‖²`.
fn amplitude_sqr(snr_db: f64, mean_energy: f64) -> f64 {
    10f64.powf(snr_db / 10.0) / mean_energy
}

fn run_trial(cfg: &SimConfig, tx: &Transmitter, amp_sqr: f64, snr_index: u64, trial: u64) -> Result<TrialOutcome, ChannelError> {
    let mut rng = trial_rng(cfg.seed, snr_index, trial);
    let h = ChannelRealization::sample(&mut rng);
    let q = tx.draw(&mut rng);
    let noise: Vec<f64> = {
        let n: [_; 4] = std::array::from_fn(|_| complex_gaussian(&mut rng));
        super::realify(&n).to_vec()
    };
    let sensitivity = sensitivity_metric(&h, SensitivityFamily::of(cfg.lattice));
    let amp = amp_sqr.sqrt();
    let g = effective_channel(&h, cfg.lattice)?.scaled(if amp.is_finite() { amp } else { 1.0 });
    let t = tx.to_search(&tx.coords(&q));
    let signal = g.mul_vec(&t);
    let y: Vec<f64> = if amp.is_finite() {
        signal.iter().zip(&noise).map(|(s, n)| s + n).collect()
    } else {
        signal
    };
    let shift = tx.to_search(&tx.shift);
    let (b, y_adj) = affine_system(&g, &y, tx.scale, &shift);
    let ch = match qr_preprocess(&b) {
        Ok(ch) => ch,
        Err(_) => return Ok(TrialOutcome { error: true, nodes: 0, sensitivity }),
    };
    let res = sphere_decode_in(&ch, &ch.rotate(&y_adj)?, &tx.space, f64::INFINITY, None)?;
    Ok(TrialOutcome { error: !res.found || res.q_hat != q, nodes: res.nodes_visited, sensitivity })
}

/// Simulates trial `trial` of SNR point `snr_index` of `cfg` in isolation.
pub fn simulate_trial(cfg: &SimConfig, snr_index: usize, trial: u64) -> Result<TrialOutcome, ChannelError> {
    cfg.validate()?;
    let tx = Transmitter::new(cfg)?;
    let amp = amplitude_sqr(cfg.snr_db[snr_index], tx.mean_energy);
    run_trial(cfg, &tx, amp, snr_index as u64, trial)
}

fn percentile_95(sorted: &[u64]) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let rank = (0.95 * sorted.len() as f64).ceil() as usize;
    sorted[rank.max(1) - 1] as f64
}

fn run_point(cfg: &SimConfig, tx: &Transmitter, snr_index: usize) -> Result<Vec<TrialOutcome>, ChannelError> {
    let amp = amplitude_sqr(cfg.snr_db[snr_index], tx.mean_energy);
    let cap = cfg.trial_cap();
    let mut outcomes = Vec::new();
    let mut errors = 0;
    while (outcomes.len() as u64) < cap {
        let start = outcomes.len() as u64;
        let end = (start + BATCH_SIZE).min(cap);
        let batch = (start..end)
            .into_par_iter()
            .map(|t| run_trial(cfg, tx, amp, snr_index as u64, t))
            .collect::<Result<Vec<_>, _>>()?;
        errors += batch.iter().filter(|o| o.error).count() as u64;
        outcomes.extend(batch);
        if cfg.target_errors.is_some_and(|target| errors >= target) {
            break;
        }
    }
    Ok(outcomes)
}

/// Block error rate and decoder work at each SNR point.
pub fn run_bler(cfg: &SimConfig) -> Result<Vec<BlerPoint>, ChannelError> {
    cfg.validate()?;
    let tx = Transmitter::new(cfg)?;
    (0..cfg.snr_db.len())
        .map(|i| {
            let outcomes = run_point(cfg, &tx, i)?;
            let trials = outcomes.len() as u64;
            let block_errors = outcomes.iter().filter(|o| o.error).count() as u64;
            let mut nodes: Vec<u64> = outcomes.iter().map(|o| o.nodes).collect();
            nodes.sort_unstable();
            Ok(BlerPoint {
                snr_db: cfg.snr_db[i],
                trials,
                block_errors,
                bler: block_errors as f64 / trials as f64,
                avg_nodes: nodes.iter().sum::<u64>() as f64 / trials as f64,
                p95_nodes: percentile_95(&nodes),
            })
        })
        .collect()
}

impl SimConfig {
    /// Scale factors and conventions used by [`run_bler`].
    pub fn scaling(&self) -> Result<SimScaling, ChannelError> {
        self.validate()?;
        let tx = Transmitter::new(self)?;
        let mindet_entry_scale = if self.normalize_mindet {
            Some(unit_det_scale_sqr(self.lattice)?.sqrt())
        } else {
            None
        };
        Ok(SimScaling {
            mean_coeff_energy: tx.mean_energy,
            codebook_size: tx.size(self),
            mindet_entry_scale,
            amplitude_sqr: self.snr_db.iter().map(|&s| amplitude_sqr(s, tx.mean_energy)).collect(),
            snr_convention: "mean codeword energy E||X||_F^2 over total noise energy per 4-use block (noise CN(0,1) per complex dimension)".into(),
            fading: "h_k i.i.d. CN(0,1), variance 1/2 per real component".into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileBin {
    pub sensitivity_lo: f64,
    pub sensitivity_hi: f64,
    pub trials: u64,
    pub mean_nodes: f64,
    pub p95_nodes: f64,
}

/// Node counts grouped into equal-population sensitivity bins.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub bins: Vec<ProfileBin>,
    /// `(sensitivity, nodes_visited)` per trial, sorted by sensitivity.
    pub samples: Vec<(f64, u64)>,
}

impl ComplexityProfile {
    pub fn near_collapse_fraction(&self, threshold: f64) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().filter(|(s, _)| *s < threshold).count() as f64 / self.samples.len() as f64
    }

    pub fn p95_nodes(&self) -> f64 {
        let mut nodes: Vec<u64> = self.samples.iter().map(|s| s.1).collect();
        nodes.sort_unstable();
        percentile_95(&nodes)
    }

    pub fn mean_nodes(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().map(|s| s.1 as f64).sum::<f64>() / self.samples.len() as f64
    }
}

/// Joint distribution of the sensitivity metric and decoder node count over
/// all trials of all SNR points of `cfg`.
pub fn complexity_profile(cfg: &SimConfig, bins: usize) -> Result<ComplexityProfile, ChannelError> {
    cfg.validate()?;
    if bins == 0 {
        return Err(ChannelError::InvalidConfig("bins must be at least 1".into()));
    }
    let tx = Transmitter::new(cfg)?;
    let mut samples = Vec::new();
    for i in 0..cfg.snr_db.len() {
        samples.extend(run_point(cfg, &tx, i)?.into_iter().map(|o| (o.sensitivity, o.nodes)));
    }
    Ok(profile_from_samples(samples, bins))
}

fn profile_from_samples(mut samples: Vec<(f64, u64)>, bins: usize) -> ComplexityProfile {
    samples.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let n = samples.len();
    let bins = (0..bins)
        .filter_map(|b| {
            let (lo, hi) = (b * n / bins, (b + 1) * n / bins);
            let chunk = &samples[lo..hi];
            if chunk.is_empty() {
                return None;
            }
            let mut nodes: Vec<u64> = chunk.iter().map(|s| s.1).collect();
            nodes.sort_unstable();
            Some(ProfileBin {
                sensitivity_lo: chunk[0].0,
                sensitivity_hi: chunk[chunk.len() - 1].0,
                trials: chunk.len() as u64,
                mean_nodes: nodes.iter().sum::<u64>() as f64 / chunk.len() as f64,
                p95_nodes: percentile_95(&nodes),
            })
        })
        .collect();
    ComplexityProfile { bins, samples }
}
