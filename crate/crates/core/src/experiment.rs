//! Seeded Monte Carlo harness: runs independent trials of a sampler, measures
//! a maximum-load or maximum-degree statistic and compares it with the
//! predicted interval.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bins::{loads, throw};
use crate::error::{Error, Result};
use crate::graph::{core_of, split, Degrees};
use crate::nu::{
    floor_interval, nu_hat, predicted_interval, two_point, IntInterval, Regime, RegimeGates,
    RegimeSpec,
};
use crate::pruefer::sample_forest;
use crate::samplers::{
    sample_complex, sample_cs_with, sample_gnm_with, sample_pipeline, uniform_fit, CoreGraph,
    GnmEnumeration, PipelineOptions, PipelineSpec, SamplerCaps,
};
use crate::seed::{rng_from_seed, trial_seed};

pub use crate::nu::classify_regime;

pub const DEFAULT_EPSILON: f64 = 0.25;
pub const DEFAULT_THRESHOLD: f64 = 0.9;
pub const DEFAULT_CENSUS_THRESHOLD: f64 = 0.97;

/// What to sample, with its size parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentKind {
    /// Maximum load of `k` balls in `n` bins.
    Bins { n: usize, k: usize },
    /// Maximum degree of a uniform forest in `F(n, t)`.
    Forest { n: usize, t: usize },
    /// Maximum degree of `G(n, m)`.
    Gnm { n: usize, m: usize },
    /// Maximum degree of a uniform complex-free graph.
    Cs { n: usize, m: usize },
    /// Maximum degree of `Q(C, q)`.
    Complex { core: CoreGraph, q: usize },
    /// Part-wise maximum degrees of pipeline draws.
    Pipeline {
        spec: PipelineSpec,
        shuffle_labels: bool,
    },
    /// Which graph of the enumerated class `G(n, m)` was drawn.
    Census { n: usize, m: usize },
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Bins { .. } => "bins",
            ExperimentKind::Forest { .. } => "forest",
            ExperimentKind::Gnm { .. } => "gnm",
            ExperimentKind::Cs { .. } => "cs",
            ExperimentKind::Complex { .. } => "complex",
            ExperimentKind::Pipeline { .. } => "pipeline",
            ExperimentKind::Census { .. } => "census",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Half-width of the predicted interval.
    pub epsilon: f64,
    pub trials: u64,
    pub master_seed: u64,
    /// Pass when the hit fraction reaches this value.
    pub threshold: f64,
    /// Constant in front of `n^{2/3}` when classifying regimes.
    pub regime_constant: f64,
    pub gates: RegimeGates,
    pub caps: SamplerCaps,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, trials: u64, master_seed: u64) -> Self {
        let threshold = match kind {
            ExperimentKind::Census { .. } => DEFAULT_CENSUS_THRESHOLD,
            _ => DEFAULT_THRESHOLD,
        };
        ExperimentConfig {
            kind,
            epsilon: DEFAULT_EPSILON,
            trials,
            master_seed,
            threshold,
            regime_constant: 1.0,
            gates: RegimeGates::default(),
            caps: SamplerCaps::default(),
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.trials == 0 {
            return bad("at least one trial is required".into());
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            return bad(format!(
                "threshold must lie in [0, 1], got {}",
                self.threshold
            ));
        }
        if self.regime_constant.is_nan() || self.regime_constant <= 0.0 {
            return bad(format!(
                "regime constant must be positive, got {}",
                self.regime_constant
            ));
        }
        match &self.kind {
            &ExperimentKind::Bins { n, k } if n == 0 || k == 0 => {
                bad(format!("bins needs n, k >= 1, got n = {n}, k = {k}"))
            }
            &ExperimentKind::Forest { n, t } if t == 0 || t > n => {
                bad(format!("forest needs 1 <= t <= n, got n = {n}, t = {t}"))
            }
            &ExperimentKind::Gnm { n, m } if m == 0 || m > n * n.saturating_sub(1) / 2 => bad(
                format!("gnm needs 1 <= m <= n(n-1)/2, got n = {n}, m = {m}"),
            ),
            &ExperimentKind::Cs { n, m } if n == 0 || m > n => {
                bad(format!("cs needs n >= 1 and m <= n, got n = {n}, m = {m}"))
            }
            ExperimentKind::Complex { core, q } if core.is_empty() || *q < core.vertex_count() => {
                bad(format!(
                    "complex needs a nonempty core and q >= {}, got q = {q}",
                    core.vertex_count()
                ))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Prediction {
    /// `[lo, hi]`; absent for the census.
    pub interval: Option<[i64; 2]>,
    /// Two-point value, for graph experiments with a classified regime.
    pub h: Option<i64>,
}

/// One trial as it appears in the CSV output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub index: u64,
    pub seed: u64,
    /// `None` when the sampler failed.
    pub statistic: Option<i64>,
    pub in_interval: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailedTrial {
    pub index: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConcentrationReport {
    pub kind: String,
    pub params: serde_json::Value,
    pub prediction: Prediction,
    /// `(value, count)` pairs in increasing value order.
    pub histogram: Vec<(i64, u64)>,
    pub hit_fraction: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub master_seed: u64,
    pub trial_seeds: Vec<u64>,
    pub elapsed_ms: u64,
    pub failed_trials: Vec<FailedTrial>,
    /// Kind-specific side measurements, e.g. acceptance rates.
    pub auxiliary: BTreeMap<String, f64>,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl ConcentrationReport {
    /// The report with the wall-clock field zeroed, for comparisons.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Result of a single trial: the statistic plus flags and counters that are
/// aggregated into the auxiliary section.
#[derive(Debug, Default)]
struct Outcome {
    statistic: i64,
    flags: Vec<(&'static str, bool)>,
    counters: Vec<(&'static str, f64)>,
}

impl Outcome {
    fn of(statistic: usize) -> Self {
        Outcome {
            statistic: statistic as i64,
            ..Outcome::default()
        }
    }

    fn flag(mut self, name: &'static str, value: bool) -> Self {
        self.flags.push((name, value));
        self
    }

    fn counter(mut self, name: &'static str, value: f64) -> Self {
        self.counters.push((name, value));
        self
    }
}

/// Prediction and parameters resolved before any trial runs.
struct Plan {
    params: serde_json::Value,
    prediction: Prediction,
    interval: Option<IntInterval>,
    census: Option<GnmEnumeration>,
}

fn regime_h(n: usize, m: usize, cfg: &ExperimentConfig) -> (Regime, Option<i64>) {
    let regime = classify_regime(n as f64, m as f64, cfg.regime_constant, cfg.gates);
    let spec = RegimeSpec {
        o_n_fraction: cfg.gates.o_n_fraction,
        ..RegimeSpec::new(n as f64, m as f64, regime)
    };
    (regime, two_point(spec).ok().map(|p| p.h))
}

fn plan(cfg: &ExperimentConfig) -> Result<Plan> {
    let eps = cfg.epsilon;
    let common = json!({ "epsilon": eps, "trials": cfg.trials, "threshold": cfg.threshold });
    let with = |extra: serde_json::Value| {
        let mut p = common.clone();
        p.as_object_mut()
            .expect("object")
            .extend(extra.as_object().expect("object").clone());
        p
    };
    let interval_plan = |params, interval: IntInterval, h| Plan {
        params,
        prediction: Prediction {
            interval: Some([interval.lo, interval.hi]),
            h,
        },
        interval: Some(interval),
        census: None,
    };
    Ok(match &cfg.kind {
        &ExperimentKind::Bins { n, k } => interval_plan(
            with(json!({ "n": n, "k": k })),
            predicted_interval(n as f64, k as f64, eps)?,
            None,
        ),
        &ExperimentKind::Forest { n, t } => interval_plan(
            with(json!({ "n": n, "t": t })),
            floor_interval(nu_hat(n as f64)?, eps)?.shifted(1),
            None,
        ),
        &ExperimentKind::Gnm { n, m } => {
            let (regime, h) = regime_h(n, m, cfg);
            interval_plan(
                with(json!({ "n": n, "m": m, "regime": regime })),
                predicted_interval(n as f64, 2.0 * m as f64, eps)?,
                h,
            )
        }
        &ExperimentKind::Cs { n, m } => {
            let (regime, h) = regime_h(n, m, cfg);
            interval_plan(
                with(json!({ "n": n, "m": m, "regime": regime })),
                floor_interval(nu_hat(n as f64)?, eps)?,
                h,
            )
        }
        ExperimentKind::Complex { core, q } => interval_plan(
            with(json!({
                "q": q,
                "coreVertices": core.vertex_count(),
                "coreEdges": core.edge_count(),
            })),
            floor_interval(nu_hat(*q as f64)?, eps)?.shifted(1),
            None,
        ),
        ExperimentKind::Pipeline {
            spec,
            shuffle_labels,
        } => {
            let (n, m) = (spec.n(), spec.m());
            let (regime, h) = regime_h(n, m, cfg);
            // regime I: the whole graph; II and III: the large complex part
            let interval = match regime {
                Regime::I => predicted_interval(n as f64, 2.0 * m as f64, eps)?,
                Regime::II => floor_interval(nu_hat(m as f64 - n as f64 / 2.0)?, eps)?.shifted(1),
                Regime::III => floor_interval(nu_hat(n as f64)?, eps)?.shifted(1),
                Regime::OutOfScope => {
                    return Err(Error::InvalidArgument(format!(
                        "pipeline with n = {n}, m = {m} is outside every regime"
                    )))
                }
            };
            interval_plan(
                with(json!({
                    "n": n, "m": m, "l": spec.l(), "r": spec.r(), "u": spec.u(), "w": spec.w(),
                    "coreVertices": spec.core().vertex_count(),
                    "coreEdges": spec.core().edge_count(),
                    "regime": regime,
                    "shuffleLabels": shuffle_labels,
                })),
                interval,
                h,
            )
        }
        &ExperimentKind::Census { n, m } => Plan {
            params: with(json!({ "n": n, "m": m })),
            prediction: Prediction::default(),
            interval: None,
            census: Some(GnmEnumeration::new(n, m)?),
        },
    })
}

fn run_trial(cfg: &ExperimentConfig, plan: &Plan, seed: u64) -> Result<Outcome> {
    Ok(match &cfg.kind {
        &ExperimentKind::Bins { n, k } => Outcome::of(loads(&throw(n, k, seed)?).max_load()),
        &ExperimentKind::Forest { n, t } => {
            let f = sample_forest(n, t, seed)?;
            let delta = f.max_degree();
            Outcome::of(delta).flag("rootGap", delta > f.max_root_degree())
        }
        &ExperimentKind::Gnm { n, m } => {
            let d = sample_gnm_with(&mut rng_from_seed(seed), n, m, cfg.caps.gnm)?;
            Outcome::of(d.graph.max_degree()).counter("multigraphDraws", d.rejections as f64 + 1.0)
        }
        &ExperimentKind::Cs { n, m } => {
            let d = sample_cs_with(&mut rng_from_seed(seed), n, m, cfg.caps)?;
            Outcome::of(d.graph.max_degree()).counter("gnmDraws", d.attempts as f64)
        }
        ExperimentKind::Complex { core, q } => {
            let d = sample_complex(core, *q, seed)?;
            let found = core_of(&d.graph);
            let c = core.vertex_count();
            let recovered =
                found.vertices().iter().copied().eq(1..=c) && found.edges() == core.graph().edges();
            let (dq, df, dc) = (
                d.graph.degree_sequence(),
                d.forest.degree_sequence(),
                core.graph().degree_sequence(),
            );
            let identity = (0..*q).all(|v| dq[v] == df[v] + dc.get(v).copied().unwrap_or(0));
            Outcome::of(d.graph.max_degree())
                .flag("coreRecovered", recovered)
                .flag("degreeIdentity", identity)
        }
        ExperimentKind::Pipeline {
            spec,
            shuffle_labels,
        } => {
            let options = PipelineOptions {
                shuffle_labels: *shuffle_labels,
                caps: cfg.caps,
            };
            let g = sample_pipeline(spec, seed, options)?.graph;
            let parts = split(&g);
            let regime = classify_regime(
                spec.n() as f64,
                spec.m() as f64,
                cfg.regime_constant,
                cfg.gates,
            );
            let statistic = if regime == Regime::I {
                g.max_degree()
            } else {
                parts.large_complex.max_degree()
            };
            Outcome::of(statistic)
                .flag(
                    "conservation",
                    g.n() == spec.n() && g.edge_count() == spec.m(),
                )
                .flag(
                    "partOrders",
                    parts.large_complex.vertex_count() == spec.l()
                        && parts.small_complex.vertex_count() == spec.r()
                        && parts.non_complex.vertex_count() == spec.u(),
                )
                .flag(
                    "smallBelowNonComplex",
                    parts.small_complex.max_degree() < parts.non_complex.max_degree(),
                )
        }
        &ExperimentKind::Census { n, m } => {
            let class = plan.census.as_ref().expect("census plan");
            let d = sample_gnm_with(&mut rng_from_seed(seed), n, m, cfg.caps.gnm)?;
            let index = class
                .index_of(&d.graph)
                .expect("sampled graph lies in the class");
            Outcome::of(index)
        }
    })
}

/// Runs `cfg.trials` independent trials in parallel. Trial `i` uses
/// `trial_seed(master_seed, i)`, so the report does not depend on the
/// number of worker threads. A failed trial is recorded and counts as a miss.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ConcentrationReport> {
    cfg.validate()?;
    let start = Instant::now();
    let plan = plan(cfg)?;
    let trial_seeds: Vec<u64> = (0..cfg.trials)
        .map(|i| trial_seed(cfg.master_seed, i))
        .collect();
    let outcomes: Vec<Result<Outcome>> = trial_seeds
        .par_iter()
        .map(|&seed| run_trial(cfg, &plan, seed))
        .collect();

    let mut histogram: BTreeMap<i64, u64> = BTreeMap::new();
    let mut flags: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    let mut counters: BTreeMap<&str, f64> = BTreeMap::new();
    let mut records = Vec::with_capacity(outcomes.len());
    let mut failed_trials = Vec::new();
    let mut hits = 0u64;
    for (index, (outcome, &seed)) in outcomes.into_iter().zip(&trial_seeds).enumerate() {
        let index = index as u64;
        match outcome {
            Ok(o) => {
                let hit = plan.interval.is_none_or(|iv| iv.contains(o.statistic));
                hits += hit as u64;
                *histogram.entry(o.statistic).or_insert(0) += 1;
                for (name, value) in o.flags {
                    let e = flags.entry(name).or_insert((0, 0));
                    e.0 += value as u64;
                    e.1 += 1;
                }
                for (name, value) in o.counters {
                    *counters.entry(name).or_insert(0.0) += value;
                }
                records.push(TrialRecord {
                    index,
                    seed,
                    statistic: Some(o.statistic),
                    in_interval: hit,
                });
            }
            Err(e) => {
                failed_trials.push(FailedTrial {
                    index,
                    error: e.to_string(),
                });
                records.push(TrialRecord {
                    index,
                    seed,
                    statistic: None,
                    in_interval: false,
                });
            }
        }
    }

    let succeeded = cfg.trials - failed_trials.len() as u64;
    let mut auxiliary: BTreeMap<String, f64> = flags
        .into_iter()
        .map(|(name, (yes, all))| (format!("{name}Fraction"), yes as f64 / all as f64))
        .collect();
    for (name, total) in counters {
        auxiliary.insert(format!("{name}Total"), total);
    }
    if let Some(&draws) = auxiliary.get("multigraphDrawsTotal") {
        auxiliary.insert("simpleFraction".into(), succeeded as f64 / draws);
    }
    if let Some(&draws) = auxiliary.get("gnmDrawsTotal") {
        auxiliary.insert("acceptanceFraction".into(), succeeded as f64 / draws);
    }

    let hit_fraction = match &plan.census {
        Some(class) => {
            let mut counts = vec![0u64; class.len()];
            for (&index, &count) in &histogram {
                counts[index as usize] = count;
            }
            let (tv, chi) = uniform_fit(&counts);
            auxiliary.insert("tvDistance".into(), tv);
            auxiliary.insert("chiSquare".into(), chi);
            auxiliary.insert("graphCount".into(), class.len() as f64);
            let insufficient = succeeded < 5 * class.len() as u64;
            auxiliary.insert("insufficientSamples".into(), insufficient as u8 as f64);
            // failed draws are misses here too
            (1.0 - tv) * succeeded as f64 / cfg.trials as f64
        }
        None => hits as f64 / cfg.trials as f64,
    };
    let verdict = if hit_fraction >= cfg.threshold {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ConcentrationReport {
        kind: cfg.kind.name().into(),
        params: plan.params,
        prediction: plan.prediction,
        histogram: histogram.into_iter().collect(),
        hit_fraction,
        threshold: cfg.threshold,
        verdict,
        master_seed: cfg.master_seed,
        trial_seeds,
        elapsed_ms: start.elapsed().as_millis() as u64,
        failed_trials,
        auxiliary,
        records,
    })
}

/// Serializes the report: the JSON summary, or one CSV row per trial.
pub fn emit_report(report: &ConcentrationReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let mut out =
                serde_json::to_vec_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(["trialIndex", "seed", "statistic", "inInterval"])
                .map_err(csv_err)?;
            for r in &report.records {
                let stat = r.statistic.map(|s| s.to_string()).unwrap_or_default();
                w.write_record([
                    r.index.to_string(),
                    r.seed.to_string(),
                    stat,
                    r.in_interval.to_string(),
                ])
                .map_err(csv_err)?;
            }
            w.into_inner().map_err(|e| Error::Io(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bin_single_ball() {
        let cfg = ExperimentConfig::new(ExperimentKind::Bins { n: 1, k: 1 }, 5, 9);
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.histogram, vec![(1, 5)]);
        assert_eq!(r.trial_seeds.len(), 5);
    }

    #[test]
    fn zero_trials_rejected() {
        let cfg = ExperimentConfig::new(ExperimentKind::Bins { n: 4, k: 4 }, 0, 9);
        assert!(run_experiment(&cfg).is_err());
        let cfg =
            ExperimentConfig::new(ExperimentKind::Bins { n: 4, k: 4 }, 3, 9).with_epsilon(0.0);
        assert!(run_experiment(&cfg).is_err());
    }

    #[test]
    fn verdict_matches_threshold() {
        let base = ExperimentConfig::new(ExperimentKind::Bins { n: 1000, k: 1000 }, 50, 2);
        let r = run_experiment(&base).unwrap();
        let at = run_experiment(&base.clone().with_threshold(r.hit_fraction)).unwrap();
        assert_eq!(at.verdict, Verdict::Pass);
        if r.hit_fraction > 0.0 {
            let above = (r.hit_fraction + 1e-9).min(1.0);
            if above > r.hit_fraction {
                let over = run_experiment(&base.with_threshold(above)).unwrap();
                assert_eq!(over.verdict, Verdict::Fail);
            }
        }
    }

    #[test]
    fn size_preconditions() {
        for kind in [
            ExperimentKind::Bins { n: 0, k: 3 },
            ExperimentKind::Forest { n: 3, t: 4 },
            ExperimentKind::Gnm { n: 3, m: 4 },
            ExperimentKind::Cs { n: 3, m: 4 },
            ExperimentKind::Census { n: 8, m: 10 },
        ] {
            assert!(
                run_experiment(&ExperimentConfig::new(kind.clone(), 3, 0)).is_err(),
                "{kind:?}"
            );
        }
    }

    #[test]
    fn failed_trials_are_misses() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::Gnm { n: 5, m: 10 }, 4, 1);
        cfg.caps.gnm = 1;
        let r = run_experiment(&cfg).unwrap();
        assert!(!r.failed_trials.is_empty());
        let ok: u64 = r.histogram.iter().map(|&(_, c)| c).sum();
        assert_eq!(ok + r.failed_trials.len() as u64, 4);
        assert!(r.hit_fraction <= ok as f64 / 4.0);
    }

    #[test]
    fn csv_has_one_row_per_trial() {
        let cfg = ExperimentConfig::new(ExperimentKind::Bins { n: 10, k: 10 }, 7, 3);
        let r = run_experiment(&cfg).unwrap();
        let text = String::from_utf8(emit_report(&r, ReportFormat::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "trialIndex,seed,statistic,inInterval");
        assert_eq!(lines.len(), 8);
        assert!(lines[1].starts_with(&format!("0,{},", r.trial_seeds[0])));
    }
}
