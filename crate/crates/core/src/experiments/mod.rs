//! Seeded verification experiments. Each builds a family of configurations,
//! runs the geometric pipeline and records failures with witness data.

mod construction;
mod curvature;
mod disks;
mod hypercycles;
mod lambert;
mod paraballs;
mod soundness;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::space::SpaceKind;
use crate::Tolerances;

pub use construction::{construction_c_pair, inner_angle, six_arc_pair, PerturbationOutcome};
pub use hypercycles::{lemma21_pair, small_intersection_config, SmallConfig};
pub use lambert::{lambert_quadrangle, LambertQuadrangle};

pub const EXPERIMENTS: [&str; 10] = [
    "curvature",
    "lambert",
    "balls",
    "paraballs",
    "small-intersections",
    "lemma21",
    "construction-c",
    "perturbation",
    "symmetry-soundness",
    "theorem4",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Overrides every experiment's default trial count when set.
    pub trials: Option<usize>,
    /// Restricts multi-space experiments to one space.
    pub space: Option<SpaceKind>,
    pub tolerances: Tolerances,
    pub alpha_k: f64,
    pub alpha_l: f64,
    pub lambda: f64,
    pub radius: f64,
    pub step: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: None,
            space: None,
            tolerances: Tolerances::default(),
            alpha_k: 2.0 * std::f64::consts::FRAC_PI_3,
            alpha_l: 2.0 * std::f64::consts::FRAC_PI_3,
            lambda: 0.5,
            radius: 1.0,
            step: 1e-2,
        }
    }
}

impl ExperimentConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.trials.map_or(true, |t| t >= 1)
            && self.alpha_k > 0.0
            && self.alpha_k < std::f64::consts::PI
            && self.alpha_l > 0.0
            && self.alpha_l < std::f64::consts::PI
            && self.lambda > 0.0
            && self.radius > 0.0
            && self.step.abs() < 0.1;
        if ok {
            Ok(())
        } else {
            Err(GeomError::Invalid("experiment parameters out of range".into()))
        }
    }

    pub(crate) fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    pub(crate) fn spaces(&self) -> Vec<SpaceKind> {
        match self.space {
            Some(s) => vec![s],
            None => vec![SpaceKind::H2, SpaceKind::S2, SpaceKind::E2],
        }
    }

    /// Residual band used for symmetry verdicts.
    pub(crate) fn band(&self) -> f64 {
        self.tolerances.geometry
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    pub description: String,
    pub witness: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub passed: bool,
    pub trials_run: usize,
    pub failures: Vec<Failure>,
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

/// Accumulates trial outcomes for one experiment.
pub(crate) struct Recorder {
    name: &'static str,
    seed: u64,
    trials: usize,
    failures: Vec<Failure>,
    metrics: BTreeMap<String, f64>,
    notes: Vec<String>,
}

impl Recorder {
    pub(crate) fn new(name: &'static str, cfg: &ExperimentConfig) -> Self {
        Self {
            name,
            seed: experiment_seed(cfg.seed, name),
            trials: 0,
            failures: Vec::new(),
            metrics: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn trial_seed(&self, trial: usize) -> u64 {
        mix(self.seed, trial as u64)
    }

    pub(crate) fn rng(&self, trial: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.trial_seed(trial))
    }

    pub(crate) fn ran(&mut self) {
        self.trials += 1;
    }

    pub(crate) fn fail(&mut self, trial: usize, description: impl Into<String>, witness: &[(&str, f64)]) {
        self.failures.push(Failure {
            trial,
            seed: self.trial_seed(trial),
            description: description.into(),
            witness: witness.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        });
    }

    /// Record a failure unless `ok`.
    pub(crate) fn check(&mut self, trial: usize, ok: bool, description: &str, witness: &[(&str, f64)]) {
        if !ok {
            self.fail(trial, description, witness);
        }
    }

    pub(crate) fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    pub(crate) fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub(crate) fn finish(self) -> ExperimentReport {
        ExperimentReport {
            name: self.name.to_string(),
            passed: self.failures.is_empty(),
            trials_run: self.trials,
            failures: self.failures,
            metrics: self.metrics,
            notes: self.notes,
        }
    }
}

/// 64-bit FNV-1a over the master seed and the experiment name.
pub fn experiment_seed(master: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in master.to_le_bytes().iter().chain(name.as_bytes()) {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn mix(seed: u64, k: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = seed ^ k.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Run one experiment by name.
pub fn run(name: &str, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    Ok(match name {
        "curvature" => curvature::run(cfg),
        "lambert" => lambert::run(cfg),
        "balls" => disks::run_balls(cfg),
        "paraballs" => paraballs::run(cfg),
        "small-intersections" => hypercycles::run_small(cfg),
        "lemma21" => hypercycles::run_lemma21(cfg),
        "construction-c" => construction::run_construction(cfg),
        "perturbation" => construction::run_perturbation(cfg),
        "symmetry-soundness" => soundness::run(cfg),
        "theorem4" => disks::run_theorem4(cfg),
        other => return Err(GeomError::Invalid(format!("unknown experiment `{other}`"))),
    })
}

/// Run every experiment in the fixed order of [`EXPERIMENTS`].
pub fn run_all(cfg: &ExperimentConfig) -> Result<Vec<ExperimentReport>> {
    EXPERIMENTS.iter().map(|n| run(n, cfg)).collect()
}

/// Metric values as they appear in reports (non-finite values become -1).
pub(crate) fn finite_or(v: f64, fallback: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        fallback
    }
}
