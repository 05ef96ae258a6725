//! Declarative experiment configuration.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cmdp::{Environment, Horizon};
use crate::envs::{
    Metric, ObstacleRun, ParticleDance, DEFAULT_HORIZON, OBSTACLE_RUN_REQUIREMENT, PARTICLE_DANCE_REQUIREMENT,
};
use crate::error::{Error, Result};
use crate::es::{EsConfig, StdMode};
use crate::pctl::{parse_requirement, Requirement};
use crate::snes::{LagrangianMode, MleEstimate, SnesConfig};

/// Environment variable that replaces the configured output directory.
pub const OUT_DIR_ENV: &str = "PSYCO_OUT_DIR";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvKind {
    #[default]
    ParticleDance,
    ObstacleRun,
}

impl EnvKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EnvKind::ParticleDance => "particle_dance",
            EnvKind::ObstacleRun => "obstacle_run",
        }
    }

    pub fn default_requirement(self) -> &'static str {
        match self {
            EnvKind::ParticleDance => PARTICLE_DANCE_REQUIREMENT,
            EnvKind::ObstacleRun => OBSTACLE_RUN_REQUIREMENT,
        }
    }
}

impl fmt::Display for EnvKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EnvKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "particle_dance" => Ok(EnvKind::ParticleDance),
            "obstacle_run" => Ok(EnvKind::ObstacleRun),
            _ => Err(Error::Config(format!(
                "unknown environment `{s}` (expected particle_dance or obstacle_run)"
            ))),
        }
    }
}

/// How the Lagrangian weight is chosen during training.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Posterior confidence (SNES).
    #[default]
    Bayesian,
    /// Cumulative maximum-likelihood estimate.
    Mle,
    /// Maximum-likelihood estimate from the current generation only.
    MlePerGeneration,
    /// `lambda = 1`; the constraint is tracked but ignored.
    Unconstrained,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Bayesian => "bayesian",
            Mode::Mle => "mle",
            Mode::MlePerGeneration => "mle_per_generation",
            Mode::Unconstrained => "unconstrained",
        }
    }

    pub fn lagrangian(self) -> LagrangianMode {
        match self {
            Mode::Bayesian => LagrangianMode::BayesianConfidence,
            Mode::Mle => LagrangianMode::MaxLikelihood(MleEstimate::Cumulative),
            Mode::MlePerGeneration => LagrangianMode::MaxLikelihood(MleEstimate::PerGeneration),
            Mode::Unconstrained => LagrangianMode::Fixed(1.0),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "bayesian" | "snes" => Ok(Mode::Bayesian),
            "mle" => Ok(Mode::Mle),
            "mle_per_generation" => Ok(Mode::MlePerGeneration),
            "unconstrained" => Ok(Mode::Unconstrained),
            _ => Err(Error::Config(format!(
                "unknown mode `{s}` (expected bayesian, mle, mle_per_generation or unconstrained)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub env: EnvKind,
    /// Requirement text; the environment's own requirement when absent.
    pub requirement: Option<String>,
    pub n_max: u32,
    /// Particle Dance collision radius.
    pub d_min: f64,
    /// Particle Dance distance.
    pub metric: Metric,
    pub horizon: usize,
    pub population: usize,
    pub sigma: f64,
    pub alpha: f64,
    pub std_mode: StdMode,
    pub mode: Mode,
    /// Generations kept in the posterior used for `c_sat`; unbounded when absent.
    pub posterior_window: Option<usize>,
    /// Training episodes per repetition; a multiple of `population`.
    pub episodes: u64,
    /// Episodes between verification checkpoints.
    pub verify_every: u64,
    /// Episode cap of each verification.
    pub verify_cap: u64,
    pub repetitions: u32,
    pub seed: u64,
    pub out: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let es = EsConfig::default();
        ExperimentConfig {
            env: EnvKind::ParticleDance,
            requirement: None,
            n_max: 4,
            d_min: 0.1,
            metric: Metric::Euclidean,
            horizon: DEFAULT_HORIZON,
            population: es.population,
            sigma: es.sigma,
            alpha: es.alpha,
            std_mode: es.std_mode,
            mode: Mode::Bayesian,
            posterior_window: None,
            episodes: 60_000,
            verify_every: 1_000,
            verify_cap: 1_000,
            repetitions: 5,
            seed: 0,
            out: PathBuf::from("runs"),
        }
    }
}

/// Command-line overrides; `None` leaves the configured value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub env: Option<EnvKind>,
    /// Requirement text, taking precedence over the environment default.
    pub requirement: Option<String>,
    pub n_max: Option<u32>,
    pub p_req: Option<f64>,
    pub c_req: Option<f64>,
    pub alpha: Option<f64>,
    pub sigma: Option<f64>,
    pub population: Option<usize>,
    pub episodes: Option<u64>,
    pub mode: Option<Mode>,
    pub seed: Option<u64>,
    pub repetitions: Option<u32>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("configuration serializes to TOML")
    }

    /// Applies `o`, then re-validates.
    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(env) = o.env {
            if env != self.env {
                // a requirement written for one environment names the other's atoms
                self.requirement = None;
            }
            self.env = env;
        }
        if let Some(text) = &o.requirement {
            self.requirement = Some(text.clone());
        }
        if o.p_req.is_some() || o.c_req.is_some() {
            let mut req = self.requirement()?;
            req.p_req = o.p_req.unwrap_or(req.p_req);
            req.c_req = o.c_req.unwrap_or(req.c_req);
            let req = Requirement::new(req.path, req.p_req, req.c_req)?;
            self.requirement = Some(req.to_string());
        }
        macro_rules! set {
            ($($field:ident <- $src:ident),*) => {
                $(if let Some(v) = o.$src.clone() { self.$field = v; })*
            };
        }
        set!(n_max <- n_max, alpha <- alpha, sigma <- sigma, population <- population,
             episodes <- episodes, mode <- mode, seed <- seed, repetitions <- repetitions,
             out <- out);
        self.validate()
    }

    /// Replaces `out` with the value of [`OUT_DIR_ENV`] when it is set.
    pub fn apply_env_override(&mut self) {
        if let Some(dir) = std::env::var_os(OUT_DIR_ENV) {
            self.out = PathBuf::from(dir);
        }
    }

    pub fn requirement(&self) -> Result<Requirement> {
        parse_requirement(self.requirement.as_deref().unwrap_or(self.env.default_requirement()))
    }

    pub fn horizon(&self) -> Result<Horizon> {
        Horizon::new(self.horizon)
    }

    pub fn es(&self) -> EsConfig {
        EsConfig {
            population: self.population,
            sigma: self.sigma,
            alpha: self.alpha,
            std_mode: self.std_mode,
        }
    }

    pub fn snes(&self) -> SnesConfig {
        SnesConfig {
            es: self.es(),
            mode: self.mode.lagrangian(),
            posterior_window: self.posterior_window,
        }
    }

    pub fn generations(&self) -> u64 {
        self.episodes / self.population as u64
    }

    pub fn particle_dance(&self) -> ParticleDance {
        ParticleDance::new(self.d_min, self.n_max, self.metric)
    }

    pub fn obstacle_run(&self) -> ObstacleRun {
        ObstacleRun::new(self.n_max)
    }

    pub fn validate(&self) -> Result<()> {
        self.snes().validate()?;
        self.horizon()?;
        if self.episodes == 0 || !self.episodes.is_multiple_of(self.population as u64) {
            return Err(Error::Config(format!(
                "episodes ({}) must be a positive multiple of the population size ({})",
                self.episodes, self.population
            )));
        }
        if self.verify_every == 0 {
            return Err(Error::Config("verify_every must be positive".into()));
        }
        if self.verify_cap == 0 {
            return Err(Error::Config("verify_cap must be positive".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::Config("repetitions must be positive".into()));
        }
        if !(self.d_min > 0.0 && self.d_min.is_finite()) {
            return Err(Error::Config(format!("d_min must be positive, got {}", self.d_min)));
        }
        let req = self.requirement()?;
        let atoms = req.path.atoms();
        match self.env {
            EnvKind::ParticleDance => self.particle_dance().labeling().check(atoms),
            EnvKind::ObstacleRun => self.obstacle_run().labeling().check(atoms),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_benchmark_setup() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.generations(), 3000);
        assert_eq!(cfg.episodes / cfg.verify_every, 60);
        let req = cfg.requirement().unwrap();
        assert_eq!((req.p_req, req.c_req), (0.85, 0.98));
    }

    #[test]
    fn obstacle_run_default_is_a_thousand_generations() {
        let cfg = ExperimentConfig::from_toml_str("env = \"obstacle_run\"\nepisodes = 20000\n").unwrap();
        assert_eq!(cfg.generations(), 1000);
        let req = cfg.requirement().unwrap();
        assert_eq!((req.p_req, req.c_req), (0.9, 0.98));
    }

    #[test]
    fn toml_round_trip() {
        let cfg = ExperimentConfig {
            env: EnvKind::ObstacleRun,
            requirement: Some("P[>=0.8](G within_budget) with C[>=0.95]".into()),
            mode: Mode::MlePerGeneration,
            posterior_window: Some(10),
            ..ExperimentConfig::default()
        };
        assert_eq!(ExperimentConfig::from_toml_str(&cfg.to_toml_string()).unwrap(), cfg);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        for text in [
            "episodes = 1010",
            "verify_every = 0",
            "repetitions = 0",
            "sigma = 0.0",
            "horizon = 1",
            "requirement = \"P[>=0.9](G off_target) with C[>=0.9]\"",
            "requirement = \"P[>=1.5](G within_budget) with C[>=0.9]\"",
            "mode = \"greedy\"",
            "unknown_key = 3",
        ] {
            assert!(
                matches!(
                    ExperimentConfig::from_toml_str(text),
                    Err(Error::Config(_) | Error::Formula(_) | Error::Range { .. })
                ),
                "{text}"
            );
        }
    }

    #[test]
    fn overrides_rewrite_requirement_bounds() {
        let mut cfg = ExperimentConfig::default();
        cfg.apply(&Overrides {
            env: Some(EnvKind::ObstacleRun),
            p_req: Some(0.7),
            n_max: Some(1),
            mode: Some(Mode::Unconstrained),
            ..Overrides::default()
        })
        .unwrap();
        let req = cfg.requirement().unwrap();
        assert_eq!((req.p_req, req.c_req), (0.7, 0.98));
        assert_eq!(req.path.to_string(), "G (off_target | within_budget)");
        assert_eq!(cfg.n_max, 1);
        assert_eq!(cfg.mode.lagrangian(), LagrangianMode::Fixed(1.0));
        assert!(cfg
            .apply(&Overrides {
                c_req: Some(1.0),
                ..Overrides::default()
            })
            .is_err());
    }

    #[test]
    fn explicit_requirement_survives_env_change() {
        let mut cfg = ExperimentConfig::default();
        cfg.apply(&Overrides {
            env: Some(EnvKind::ObstacleRun),
            requirement: Some("P[>=0.5](F !off_target) with C[>=0.9]".into()),
            c_req: Some(0.95),
            ..Overrides::default()
        })
        .unwrap();
        assert_eq!(
            cfg.requirement().unwrap().to_string(),
            "P[>=0.5](F !off_target) with C[>=0.95]"
        );
    }

    #[test]
    fn names_parse() {
        assert_eq!("obstacle-run".parse::<EnvKind>().unwrap(), EnvKind::ObstacleRun);
        assert_eq!("snes".parse::<Mode>().unwrap(), Mode::Bayesian);
        assert!("maze".parse::<EnvKind>().is_err());
    }
}
