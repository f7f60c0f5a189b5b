//! Monte-Carlo observation of GUMs and automata.
//!
//! An experiment draws a ball type (or initial state) from a rational prior,
//! looks at it through one color (or feeds it one input) and records the
//! symbol seen. [`predict`] gives the exact outcome distribution and
//! [`simulate`] the empirical one.
//!
//! Random numbers come from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Trials are cut into chunks of [`CHUNK_TRIALS`];
//! chunk `j` draws from stream `j` of that generator, so a report depends
//! only on the seed, never on thread count or scheduling.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::automaton::MealyAutomaton;
use crate::exec::Exec;
use crate::gum::{align, Gum};
use crate::text::{directives, FormatError};
use crate::Rational;

/// Trials per independent random stream.
pub const CHUNK_TRIALS: u64 = 1 << 14;

/// Name of the generator recorded in every report.
pub const PRNG_NAME: &str = "ChaCha8Rng (rand_chacha), stream j per 16384-trial chunk";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("prior has {found} entries for {expected} ground elements")]
    PriorLength { expected: usize, found: usize },
    #[error("prior has a negative entry")]
    NegativePrior,
    #[error("prior sums to {0}, not 1")]
    PriorSum(Rational),
    #[error("unknown probe `{0}`")]
    UnknownProbe(String),
}

/// The observed model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Gum(Gum),
    Automaton(MealyAutomaton),
}

impl Model {
    pub fn ground(&self) -> &[String] {
        match self {
            Model::Gum(g) => g.ball_types(),
            Model::Automaton(a) => a.states(),
        }
    }

    pub fn probes(&self) -> &[String] {
        match self {
            Model::Gum(g) => g.colors(),
            Model::Automaton(a) => a.inputs(),
        }
    }

    pub fn outcomes(&self) -> &[String] {
        match self {
            Model::Gum(g) => g.symbols(),
            Model::Automaton(a) => a.outputs(),
        }
    }

    fn outcome(&self, x: usize, probe: usize) -> usize {
        match self {
            Model::Gum(g) => g.lookup(x, probe),
            Model::Automaton(a) => a.lambda(x, probe),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Experiment {
    model: Model,
    prior: Vec<Rational>,
    probe: usize,
    pub trials: u64,
    pub seed: u64,
}

impl Experiment {
    pub fn new(
        model: Model,
        prior: Vec<Rational>,
        probe: &str,
        trials: u64,
        seed: u64,
    ) -> Result<Self, SimError> {
        let n = model.ground().len();
        if prior.len() != n {
            return Err(SimError::PriorLength {
                expected: n,
                found: prior.len(),
            });
        }
        if prior.iter().any(Signed::is_negative) {
            return Err(SimError::NegativePrior);
        }
        let sum = prior.iter().fold(Rational::zero(), |s, p| s + p);
        if !sum.is_one() {
            return Err(SimError::PriorSum(sum));
        }
        let probe = model
            .probes()
            .iter()
            .position(|p| p == probe)
            .ok_or_else(|| SimError::UnknownProbe(probe.to_string()))?;
        Ok(Experiment {
            model,
            prior,
            probe,
            trials,
            seed,
        })
    }

    pub fn uniform_prior(n: usize) -> Vec<Rational> {
        vec![Rational::new(BigInt::one(), BigInt::from(n)); n]
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn prior(&self) -> &[Rational] {
        &self.prior
    }

    pub fn probe(&self) -> &str {
        &self.model.probes()[self.probe]
    }

    /// Exact probability of each outcome index.
    fn outcome_mass(&self) -> Vec<Rational> {
        let mut mass = vec![Rational::zero(); self.model.outcomes().len()];
        for (x, p) in self.prior.iter().enumerate() {
            mass[self.model.outcome(x, self.probe)] += p;
        }
        mass
    }
}

/// Exact outcome distribution: outcomes with positive probability, in the
/// model's declared symbol order.
pub fn predict(e: &Experiment) -> Vec<(String, Rational)> {
    e.outcome_mass()
        .into_iter()
        .enumerate()
        .filter(|(_, p)| p.is_positive())
        .map(|(v, p)| (e.model.outcomes()[v].clone(), p))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyReport {
    pub prng: &'static str,
    pub seed: u64,
    pub probe: String,
    pub trials: u64,
    pub outcomes: Vec<String>,
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
    pub predicted: Vec<Rational>,
    /// Total-variation distance between empirical and predicted
    /// distributions; `None` when no trial was run.
    pub tv_distance: Option<f64>,
    /// `5·sqrt(k / trials)` for `k` outcomes.
    pub threshold: Option<f64>,
}

impl FrequencyReport {
    pub fn within_threshold(&self) -> bool {
        matches!((self.tv_distance, self.threshold), (Some(d), Some(t)) if d < t)
    }

    /// Aligned text table.
    pub fn to_table(&self) -> String {
        let mut rows = vec![vec![
            "outcome".to_string(),
            "count".to_string(),
            "frequency".to_string(),
            "predicted".to_string(),
        ]];
        for k in 0..self.outcomes.len() {
            rows.push(vec![
                self.outcomes[k].clone(),
                self.counts[k].to_string(),
                format!("{:.6}", self.frequencies[k]),
                self.predicted[k].to_string(),
            ]);
        }
        let mut out = format!(
            "probe {}  trials {}  seed {}\nprng {}\n",
            self.probe, self.trials, self.seed, self.prng
        );
        out.push_str(&align(&rows));
        match (self.tv_distance, self.threshold) {
            (Some(d), Some(t)) => {
                let _ = writeln!(out, "tv_distance {d:.6}  threshold {t:.6}");
            }
            _ => out.push_str("tv_distance n/a\n"),
        }
        out
    }

    /// One `key=value` per line.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "prng={}", self.prng);
        let _ = writeln!(out, "seed={}", self.seed);
        let _ = writeln!(out, "probe={}", self.probe);
        let _ = writeln!(out, "trials={}", self.trials);
        let _ = writeln!(out, "outcomes={}", self.outcomes.len());
        for k in 0..self.outcomes.len() {
            let o = &self.outcomes[k];
            let _ = writeln!(out, "outcome.{o}.count={}", self.counts[k]);
            let _ = writeln!(out, "outcome.{o}.frequency={}", self.frequencies[k]);
            let _ = writeln!(out, "outcome.{o}.predicted={}", self.predicted[k]);
        }
        let fmt = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |x| x.to_string());
        let _ = writeln!(out, "tv_distance={}", fmt(self.tv_distance));
        let _ = writeln!(out, "threshold={}", fmt(self.threshold));
        out
    }
}

/// Draws ground indices from the prior.
enum Sampler {
    /// Cumulative integer weights over a common denominator.
    Exact { cumulative: Vec<u64>, total: u64 },
    /// Fallback when the common denominator does not fit 64 bits.
    Float(rand::distributions::WeightedIndex<f64>),
}

impl Sampler {
    fn new(prior: &[Rational]) -> Self {
        let denom = prior.iter().fold(BigInt::one(), |l, p| l.lcm(p.denom()));
        let exact: Option<Vec<u64>> = prior
            .iter()
            .map(|p| (p.numer() * (&denom / p.denom())).to_u64())
            .collect();
        if let (Some(weights), Some(total)) = (exact, denom.to_u64()) {
            let cumulative = weights
                .iter()
                .scan(0u64, |acc, &w| {
                    *acc += w;
                    Some(*acc)
                })
                .collect();
            return Sampler::Exact { cumulative, total };
        }
        let weights: Vec<f64> = prior.iter().map(|p| p.to_f64().unwrap_or(0.0)).collect();
        Sampler::Float(
            rand::distributions::WeightedIndex::new(weights).expect("prior has positive mass"),
        )
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> usize {
        match self {
            Sampler::Exact { cumulative, total } => {
                let r = rng.gen_range(0..*total);
                cumulative.partition_point(|&c| c <= r)
            }
            Sampler::Float(w) => rng.sample(w),
        }
    }
}

pub fn simulate(e: &Experiment) -> FrequencyReport {
    simulate_with(e, Exec::default())
}

/// Runs the experiment, chunk by chunk, under the given execution policy.
pub fn simulate_with(e: &Experiment, exec: Exec) -> FrequencyReport {
    let sampler = Sampler::new(&e.prior);
    let n_out = e.model.outcomes().len();
    let chunks: Vec<(u64, u64)> = (0..e.trials.div_ceil(CHUNK_TRIALS))
        .map(|j| (j, CHUNK_TRIALS.min(e.trials - j * CHUNK_TRIALS)))
        .collect();
    let partial = exec.map(chunks, |(j, len)| {
        let mut rng = ChaCha8Rng::seed_from_u64(e.seed);
        rng.set_stream(j);
        let mut counts = vec![0u64; n_out];
        for _ in 0..len {
            let x = sampler.draw(&mut rng);
            counts[e.model.outcome(x, e.probe)] += 1;
        }
        counts
    });
    let mut all = vec![0u64; n_out];
    for c in partial {
        for (a, b) in all.iter_mut().zip(c) {
            *a += b;
        }
    }

    let mass = e.outcome_mass();
    let keep: Vec<usize> = (0..n_out)
        .filter(|&v| mass[v].is_positive() || all[v] > 0)
        .collect();
    let counts: Vec<u64> = keep.iter().map(|&v| all[v]).collect();
    let frequencies: Vec<f64> = counts
        .iter()
        .map(|&c| {
            if e.trials == 0 {
                0.0
            } else {
                c as f64 / e.trials as f64
            }
        })
        .collect();
    let predicted: Vec<Rational> = keep.iter().map(|&v| mass[v].clone()).collect();
    let (tv_distance, threshold) = if e.trials == 0 {
        (None, None)
    } else {
        let tv = 0.5
            * frequencies
                .iter()
                .zip(&predicted)
                .map(|(f, p)| (f - p.to_f64().unwrap_or(0.0)).abs())
                .sum::<f64>();
        let k = keep.len() as f64;
        (Some(tv), Some(5.0 * (k / e.trials as f64).sqrt()))
    };
    FrequencyReport {
        prng: PRNG_NAME,
        seed: e.seed,
        probe: e.probe().to_string(),
        trials: e.trials,
        outcomes: keep
            .iter()
            .map(|&v| e.model.outcomes()[v].clone())
            .collect(),
        counts,
        frequencies,
        predicted,
        tv_distance,
        threshold,
    }
}

/// Prior given in a simulation spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PriorSpec {
    Uniform,
    Explicit(Vec<Rational>),
}

/// Contents of a simulation spec file:
///
/// ```text
/// model gum l12.gum      # or: model am <file>; path relative to the spec
/// prior uniform          # or: prior 1/2 1/4 1/4 0 0
/// probe red
/// trials 100000
/// seed 7
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationSpec {
    pub model_is_gum: bool,
    pub model_path: String,
    pub prior: PriorSpec,
    pub probe: String,
    pub trials: u64,
    pub seed: u64,
}

impl SimulationSpec {
    pub fn parse(src: &str) -> Result<Self, FormatError> {
        let mut model = None;
        let mut prior = None;
        let mut probe = None;
        let mut trials = None;
        let mut seed = None;
        for (line, tokens) in directives(src) {
            match tokens[..] {
                ["model", kind @ ("gum" | "am"), path] => {
                    model = Some((kind == "gum", path.to_string()))
                }
                ["prior", "uniform"] => prior = Some(PriorSpec::Uniform),
                ["prior", ref values @ ..] if !values.is_empty() => {
                    let v = values
                        .iter()
                        .map(|t| t.parse::<Rational>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| {
                            FormatError::syntax(line, "prior entries must be rationals")
                        })?;
                    prior = Some(PriorSpec::Explicit(v));
                }
                ["probe", p] => probe = Some(p.to_string()),
                ["trials", t] => {
                    trials = Some(
                        t.parse()
                            .map_err(|_| FormatError::syntax(line, "trials must be an integer"))?,
                    )
                }
                ["seed", s] => {
                    seed = Some(
                        s.parse()
                            .map_err(|_| FormatError::syntax(line, "seed must be a u64"))?,
                    )
                }
                _ => {
                    return Err(FormatError::syntax(
                        line,
                        format!("unexpected directive `{}`", tokens.join(" ")),
                    ))
                }
            }
        }
        let missing = |what: &str| FormatError::syntax(0, format!("missing `{what}` line"));
        let (model_is_gum, model_path) = model.ok_or_else(|| missing("model"))?;
        Ok(SimulationSpec {
            model_is_gum,
            model_path,
            prior: prior.unwrap_or(PriorSpec::Uniform),
            probe: probe.ok_or_else(|| missing("probe"))?,
            trials: trials.ok_or_else(|| missing("trials"))?,
            seed: seed.unwrap_or(0),
        })
    }
}
