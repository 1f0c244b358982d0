//! Scale-free test networks: a truncated power-law degree sequence wired up
//! with the erased configuration model.
//!
//! All randomness comes from `ChaCha8Rng`, whose output stream is fixed
//! across platforms, so a seed pins the graph exactly.

use rand::distributions::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_K_MIN: usize = 1;

/// Structural cutoff `floor(sqrt(n))`, capped at `n - 1`.
pub fn default_k_max(n: usize) -> usize {
    (n as f64).sqrt().floor().max(1.0).min(n.saturating_sub(1) as f64) as usize
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    /// Power-law exponent, `P(k) ∝ k^-alpha`.
    pub alpha: f64,
    pub k_min: usize,
    pub k_max: usize,
    pub seed: u64,
}

impl GenSpec {
    /// Spec with the default degree bounds.
    pub fn new(n: usize, alpha: f64, seed: u64) -> Self {
        Self {
            n,
            alpha,
            k_min: DEFAULT_K_MIN,
            k_max: default_k_max(n),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidSpec(msg));
        if self.n < 2 {
            return fail(format!("n must be at least 2, got {}", self.n));
        }
        if !(self.alpha > 1.0) || !self.alpha.is_finite() {
            return fail(format!("alpha must exceed 1, got {}", self.alpha));
        }
        if self.k_min < 1 {
            return fail("k_min must be at least 1".into());
        }
        if self.k_min > self.k_max {
            return fail(format!(
                "k_min ({}) exceeds k_max ({})",
                self.k_min, self.k_max
            ));
        }
        if self.k_max > self.n - 1 {
            return fail(format!(
                "k_max ({}) exceeds n - 1 ({})",
                self.k_max,
                self.n - 1
            ));
        }
        Ok(())
    }
}

/// Discrete power law on `k_min..=k_max`, sampled by inverse CDF.
#[derive(Debug, Clone)]
pub struct PowerLaw {
    k_min: usize,
    cdf: Vec<f64>,
}

impl PowerLaw {
    pub fn new(alpha: f64, k_min: usize, k_max: usize) -> Result<Self> {
        if k_min == 0 || k_min > k_max {
            return Err(Error::InvalidSpec(format!(
                "degree support {k_min}..={k_max} is empty or contains 0"
            )));
        }
        let mut cdf: Vec<f64> = (k_min..=k_max)
            .scan(0.0, |acc, k| {
                *acc += (k as f64).powf(-alpha);
                Some(*acc)
            })
            .collect();
        let total = *cdf.last().expect("non-empty support");
        for c in &mut cdf {
            *c /= total;
        }
        Ok(Self { k_min, cdf })
    }

    pub fn probability(&self, k: usize) -> f64 {
        match k.checked_sub(self.k_min) {
            Some(0) => self.cdf[0],
            Some(i) if i < self.cdf.len() => self.cdf[i] - self.cdf[i - 1],
            _ => 0.0,
        }
    }
}

impl Distribution<usize> for PowerLaw {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let i = self.cdf.partition_point(|&c| c <= u);
        self.k_min + i.min(self.cdf.len() - 1)
    }
}

/// `spec.n` independent power-law degrees, nudged to an even sum.
pub fn sample_degree_sequence<R: Rng + ?Sized>(spec: &GenSpec, rng: &mut R) -> Result<Vec<usize>> {
    spec.validate()?;
    let law = PowerLaw::new(spec.alpha, spec.k_min, spec.k_max)?;
    let mut degrees: Vec<usize> = (0..spec.n).map(|_| law.sample(rng)).collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        if degrees.iter().all(|&d| d >= spec.k_max) {
            // Every node saturated: the only way to even out is down.
            let i = rng.gen_range(0..spec.n);
            degrees[i] -= 1;
        } else {
            loop {
                let i = rng.gen_range(0..spec.n);
                if degrees[i] < spec.k_max {
                    degrees[i] += 1;
                    break;
                }
            }
        }
    }
    Ok(degrees)
}

/// Uniform stub matching; self-loops and repeated edges are dropped, so
/// realized degrees can fall slightly below the requested ones.
pub fn configuration_model<R: Rng + ?Sized>(degrees: &[usize], rng: &mut R) -> Result<Graph> {
    let n = degrees.len();
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return Err(Error::OddDegreeSum(total));
    }
    let mut stubs = Vec::with_capacity(total);
    for (node, &degree) in degrees.iter().enumerate() {
        if degree > n.saturating_sub(1) {
            return Err(Error::DegreeTooLarge {
                node,
                degree,
                max: n.saturating_sub(1),
            });
        }
        stubs.extend(std::iter::repeat_n(node, degree));
    }
    stubs.shuffle(rng);
    let edges = stubs
        .chunks_exact(2)
        .map(|pair| (pair[0], pair[1]))
        .filter(|(u, v)| u != v);
    Graph::from_edges(n, edges)
}

/// Deterministic scale-free graph for `spec`.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    generate_with_degrees(spec).map(|(_, graph)| graph)
}

/// Like [`generate`], also returning the requested degree sequence.
pub fn generate_with_degrees(spec: &GenSpec) -> Result<(Vec<usize>, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let degrees = sample_degree_sequence(spec, &mut rng)?;
    let graph = configuration_model(&degrees, &mut rng)?;
    Ok((degrees, graph))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derives a per-run seed from a master seed and a list of indices.
///
/// `h0 = splitmix64(master)`, then `h = splitmix64(h ^ splitmix64(index))`
/// for each index in turn. The result depends only on the values, never on
/// the order runs are scheduled in.
pub fn mix_seed(master: u64, indices: &[u64]) -> u64 {
    indices
        .iter()
        .fold(splitmix64(master), |h, &i| splitmix64(h ^ splitmix64(i)))
}
