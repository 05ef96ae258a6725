//! Plain evolutionary strategies: Gaussian offspring around the current
//! parameters, one evaluation per offspring, fitness normalization and a
//! fitness-weighted step along the perturbations.

use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::{derive_seed, StreamRng, TAG_EPISODE, TAG_PERTURB};

/// Standard deviations below this are treated as zero by [`normalize`].
pub const DEGENERATE_STD: f64 = 1e-8;

/// Divisor used for the standard deviation in fitness normalization.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StdMode {
    /// Divide by `N`.
    #[default]
    Population,
    /// Divide by `N - 1`.
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsConfig {
    pub population: usize,
    pub sigma: f64,
    pub alpha: f64,
    pub std_mode: StdMode,
}

impl Default for EsConfig {
    /// `N = 20`, `sigma = 0.1`, `alpha = 0.01`.
    fn default() -> Self {
        EsConfig {
            population: 20,
            sigma: 0.1,
            alpha: 0.01,
            std_mode: StdMode::Population,
        }
    }
}

impl EsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(Error::Config(format!(
                "population must be at least 2, got {}",
                self.population
            )));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::Config(format!("sigma must be positive, got {}", self.sigma)));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1], got {}", self.alpha)));
        }
        Ok(())
    }

    /// Scale `alpha / (sigma N)` of the parameter step.
    pub fn step_scale(&self) -> f64 {
        self.alpha / (self.sigma * self.population as f64)
    }
}

pub fn normalize(values: &[f64]) -> Result<Vec<f64>> {
    normalize_with(values, StdMode::Population)
}

/// `(x - mean) / std`, or all zeros when the std is degenerate.
pub fn normalize_with(values: &[f64], mode: StdMode) -> Result<Vec<f64>> {
    if values.len() < 2 {
        return Err(Error::Config(format!(
            "normalization needs at least 2 values, got {}",
            values.len()
        )));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
    let std = match mode {
        StdMode::Population => (ss / n).sqrt(),
        StdMode::Sample => (ss / (n - 1.0)).sqrt(),
    };
    if std < DEGENERATE_STD {
        return Ok(vec![0.0; values.len()]);
    }
    Ok(values.iter().map(|v| (v - mean) / std).collect())
}

/// One perturbation of the current parameters and the seed of its episode
/// stream.
#[derive(Debug, Clone)]
pub struct Offspring {
    pub noise: Vec<f64>,
    seed: u64,
}

impl Offspring {
    /// Fresh generator for this offspring's evaluation episode.
    pub fn episode_rng(&self) -> StreamRng {
        StreamRng::seed_from_u64(derive_seed(self.seed, &[TAG_EPISODE]))
    }

    pub fn perturbed(&self, theta: &[f64]) -> Vec<f64> {
        theta.iter().zip(&self.noise).map(|(t, e)| t + e).collect()
    }
}

/// Draws `N` offspring of dimension `dim` with i.i.d. `Normal(0, sigma)`
/// components. Each offspring owns derived streams, so evaluation order does
/// not affect results.
pub fn sample_offspring<R: Rng + ?Sized>(dim: usize, cfg: &EsConfig, rng: &mut R) -> Vec<Offspring> {
    let normal = Normal::new(0.0, cfg.sigma).expect("validated sigma");
    (0..cfg.population)
        .map(|_| {
            let seed: u64 = rng.gen();
            let mut noise_rng = StreamRng::seed_from_u64(derive_seed(seed, &[TAG_PERTURB]));
            Offspring {
                noise: (0..dim).map(|_| normal.sample(&mut noise_rng)).collect(),
                seed,
            }
        })
        .collect()
}

/// `sum_j w_j * noise_j`, folded in offspring order.
pub fn weighted_noise_sum(noise: &[&[f64]], weights: &[f64], dim: usize) -> Vec<f64> {
    let mut acc = vec![0.0; dim];
    for (eps, w) in noise.iter().zip(weights) {
        for (a, e) in acc.iter_mut().zip(eps.iter()) {
            *a += w * e;
        }
    }
    acc
}

pub(crate) fn check_finite(quantity: &'static str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(offspring) => Err(Error::NonFinite {
            quantity,
            offspring,
            value: values[offspring],
        }),
        None => Ok(()),
    }
}

/// `theta + alpha / (sigma N) * sum_j normalize(R)_j * noise_j`.
pub fn es_update(theta: &[f64], noise: &[&[f64]], returns: &[f64], cfg: &EsConfig) -> Result<Vec<f64>> {
    check_finite("return", returns)?;
    let weights = normalize_with(returns, cfg.std_mode)?;
    let step = weighted_noise_sum(noise, &weights, theta.len());
    let scale = cfg.step_scale();
    Ok(theta.iter().zip(&step).map(|(t, s)| t + scale * s).collect())
}

/// One ES generation. `evaluate` receives perturbed parameters and the
/// offspring's episode generator.
pub fn es_generation<R, F>(theta: &[f64], cfg: &EsConfig, mut evaluate: F, rng: &mut R) -> Result<Vec<f64>>
where
    R: Rng + ?Sized,
    F: FnMut(&[f64], &mut StreamRng) -> Result<f64>,
{
    cfg.validate()?;
    let offspring = sample_offspring(theta.len(), cfg, rng);
    let returns = offspring
        .iter()
        .map(|o| evaluate(&o.perturbed(theta), &mut o.episode_rng()))
        .collect::<Result<Vec<_>>>()?;
    let noise: Vec<&[f64]> = offspring.iter().map(|o| o.noise.as_slice()).collect();
    es_update(theta, &noise, &returns, cfg)
}
