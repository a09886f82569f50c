//! The easy-trial-injection bias study.
//!
//! Two synthetic systems share one positive score distribution and differ in
//! their negative ones, so system II is better by construction. Easy trials
//! (negatives far below the operating region, positives far above) are then
//! appended cumulatively in fixed-size batches, and the EER of each system
//! plus the relative EER reduction between them is recorded at every step.
//! Repeats run on independent RNG substreams and are aggregated into
//! per-step means and population variances.
//!
//! Draw order within a repeat is fixed: positive pool, system I negatives,
//! system II negatives, then per step the easy draws (system I negatives,
//! system II negatives, shared positives, as the mode requires). Easy
//! negative scores are drawn independently for each system: each system
//! scores the injected trials itself, from the same easy distribution.

use std::fmt;

use thiserror::Error;

use crate::metrics::{self, ScoredTrials};
use crate::rng::CounterRng;

/// Errors for simulation configuration and export.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("too few steps: the plot needs at least one injection step")]
    TooFewSteps,
}

/// A Gaussian score population: `count` draws from N(mean, std^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec {
    pub mean: f64,
    pub std: f64,
    pub count: usize,
}

impl GaussianSpec {
    pub fn new(mean: f64, std: f64, count: usize) -> GaussianSpec {
        GaussianSpec { mean, std, count }
    }
}

/// Which easy-trial pools grow during injection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimMode {
    NegOnly,
    PosOnly,
    Both,
}

impl fmt::Display for SimMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimMode::NegOnly => write!(f, "neg"),
            SimMode::PosOnly => write!(f, "pos"),
            SimMode::Both => write!(f, "both"),
        }
    }
}

/// Full parameterization of one simulation run.
///
/// Defaults follow the reference setup: 10,000 positives from N(0,1),
/// 10,000 negatives from N(-1,1) and N(-1.5,1) for systems I and II, easy
/// negatives from N(-3,1), easy positives from N(3,1), 500 easy trials per
/// step, 1000 steps, 10 repeats. The `count` field of the easy specs is
/// ignored; `batch_size` controls how many are drawn per step.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub pos: GaussianSpec,
    pub neg_sys1: GaussianSpec,
    pub neg_sys2: GaussianSpec,
    pub easy_neg: GaussianSpec,
    pub easy_pos: GaussianSpec,
    pub batch_size: usize,
    pub steps: usize,
    pub repeats: usize,
    pub mode: SimMode,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            pos: GaussianSpec::new(0.0, 1.0, 10_000),
            neg_sys1: GaussianSpec::new(-1.0, 1.0, 10_000),
            neg_sys2: GaussianSpec::new(-1.5, 1.0, 10_000),
            easy_neg: GaussianSpec::new(-3.0, 1.0, 0),
            easy_pos: GaussianSpec::new(3.0, 1.0, 0),
            batch_size: 500,
            steps: 1000,
            repeats: 10,
            mode: SimMode::NegOnly,
            seed: 42,
        }
    }
}

impl SimConfig {
    fn validate(&self) -> Result<(), SimError> {
        for (name, spec) in [
            ("pos", &self.pos),
            ("neg_sys1", &self.neg_sys1),
            ("neg_sys2", &self.neg_sys2),
            ("easy_neg", &self.easy_neg),
            ("easy_pos", &self.easy_pos),
        ] {
            if spec.std <= 0.0 || !spec.std.is_finite() || !spec.mean.is_finite() {
                return Err(SimError::InvalidConfig(format!(
                    "{name}: std must be positive and finite, mean finite (got mean={}, std={})",
                    spec.mean, spec.std
                )));
            }
        }
        for (name, count) in [
            ("pos", self.pos.count),
            ("neg_sys1", self.neg_sys1.count),
            ("neg_sys2", self.neg_sys2.count),
        ] {
            if count == 0 {
                return Err(SimError::InvalidConfig(format!(
                    "{name}: base pool count must be at least 1"
                )));
            }
        }
        if self.batch_size == 0 {
            return Err(SimError::InvalidConfig("batch_size must be >= 1".into()));
        }
        if self.repeats == 0 {
            return Err(SimError::InvalidConfig("repeats must be >= 1".into()));
        }
        Ok(())
    }

    /// Easy trials present at a given step.
    fn n_easy_at(&self, step: usize) -> usize {
        let per_pool = step * self.batch_size;
        match self.mode {
            SimMode::Both => 2 * per_pool,
            _ => per_pool,
        }
    }
}

/// One (step, metrics) record of one repeat.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub n_easy_added: usize,
    pub eer_sys1: f64,
    pub eer_sys2: f64,
    pub rel_reduction: f64,
}

/// Per-step mean and population variance of each metric across repeats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregateRecord {
    pub step: usize,
    pub n_easy_added: usize,
    pub eer_sys1_mean: f64,
    pub eer_sys1_var: f64,
    pub eer_sys2_mean: f64,
    pub eer_sys2_var: f64,
    pub rel_reduction_mean: f64,
    pub rel_reduction_var: f64,
}

/// Trajectories of every repeat plus the per-step aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub config: SimConfig,
    pub per_repeat: Vec<Vec<StepRecord>>,
    pub aggregate: Vec<AggregateRecord>,
}

/// Draw `spec.count` normal variates via the Box-Muller transform.
///
/// Both variates of each uniform pair are consumed (the second is dropped
/// only on an odd tail), so the stream advances by a fixed amount and the
/// output is fully determined by the stream state.
pub fn sample_gaussian(spec: &GaussianSpec, rng: &mut CounterRng) -> Vec<f64> {
    debug_assert!(spec.std > 0.0, "std must be positive");
    let mut out = Vec::with_capacity(spec.count);
    while out.len() < spec.count {
        let u1 = rng.next_unit();
        let u2 = rng.next_unit();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        out.push(spec.mean + spec.std * radius * angle.cos());
        if out.len() < spec.count {
            out.push(spec.mean + spec.std * radius * angle.sin());
        }
    }
    out
}

/// Run the injection study.
///
/// Each repeat r draws everything from substream `(seed, r)`: fresh base
/// pools, then cumulative easy batches per step. Metrics are recomputed
/// after every step; step 0 is the uncontaminated baseline.
pub fn run_simulation(cfg: &SimConfig) -> Result<SimResult, SimError> {
    cfg.validate()?;
    let mut per_repeat = Vec::with_capacity(cfg.repeats);
    for repeat in 0..cfg.repeats {
        let mut rng = CounterRng::substream(cfg.seed, repeat as u64);
        let mut pos = sample_gaussian(&cfg.pos, &mut rng);
        let mut neg1 = sample_gaussian(&cfg.neg_sys1, &mut rng);
        let mut neg2 = sample_gaussian(&cfg.neg_sys2, &mut rng);

        let mut records = Vec::with_capacity(cfg.steps + 1);
        records.push(step_record(cfg, 0, &pos, &neg1, &neg2));
        for step in 1..=cfg.steps {
            let easy_neg_batch =
                GaussianSpec::new(cfg.easy_neg.mean, cfg.easy_neg.std, cfg.batch_size);
            let easy_pos_batch =
                GaussianSpec::new(cfg.easy_pos.mean, cfg.easy_pos.std, cfg.batch_size);
            match cfg.mode {
                SimMode::NegOnly => {
                    neg1.extend(sample_gaussian(&easy_neg_batch, &mut rng));
                    neg2.extend(sample_gaussian(&easy_neg_batch, &mut rng));
                }
                SimMode::PosOnly => {
                    pos.extend(sample_gaussian(&easy_pos_batch, &mut rng));
                }
                SimMode::Both => {
                    neg1.extend(sample_gaussian(&easy_neg_batch, &mut rng));
                    neg2.extend(sample_gaussian(&easy_neg_batch, &mut rng));
                    pos.extend(sample_gaussian(&easy_pos_batch, &mut rng));
                }
            }
            records.push(step_record(cfg, step, &pos, &neg1, &neg2));
        }
        per_repeat.push(records);
    }
    let aggregate = aggregate_records(cfg, &per_repeat);
    Ok(SimResult {
        config: cfg.clone(),
        per_repeat,
        aggregate,
    })
}

fn step_record(
    cfg: &SimConfig,
    step: usize,
    pos: &[f64],
    neg1: &[f64],
    neg2: &[f64],
) -> StepRecord {
    let eer_sys1 = eer_of_pools(pos, neg1);
    let eer_sys2 = eer_of_pools(pos, neg2);
    let rel_reduction = if eer_sys1 > 0.0 {
        (eer_sys1 - eer_sys2) / eer_sys1
    } else {
        0.0
    };
    StepRecord {
        step,
        n_easy_added: cfg.n_easy_at(step),
        eer_sys1,
        eer_sys2,
        rel_reduction,
    }
}

fn eer_of_pools(pos: &[f64], neg: &[f64]) -> f64 {
    let data = ScoredTrials::from_pools(pos, neg);
    // Pools are non-empty by config validation, so this cannot fail.
    metrics::eer(&data).expect("non-degenerate pools").0
}

fn aggregate_records(cfg: &SimConfig, per_repeat: &[Vec<StepRecord>]) -> Vec<AggregateRecord> {
    let n_steps = cfg.steps + 1;
    let n = per_repeat.len() as f64;
    let mut out = Vec::with_capacity(n_steps);
    for step in 0..n_steps {
        let column: Vec<&StepRecord> = per_repeat.iter().map(|r| &r[step]).collect();
        let (e1m, e1v) = mean_var(column.iter().map(|r| r.eer_sys1), n);
        let (e2m, e2v) = mean_var(column.iter().map(|r| r.eer_sys2), n);
        let (rm, rv) = mean_var(column.iter().map(|r| r.rel_reduction), n);
        out.push(AggregateRecord {
            step,
            n_easy_added: cfg.n_easy_at(step),
            eer_sys1_mean: e1m,
            eer_sys1_var: e1v,
            eer_sys2_mean: e2m,
            eer_sys2_var: e2v,
            rel_reduction_mean: rm,
            rel_reduction_var: rv,
        })
    }
    out
}

fn mean_var(values: impl Iterator<Item = f64> + Clone, n: f64) -> (f64, f64) {
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var)
}

const METRIC_NAMES: [&str; 3] = ["eer_sys1", "eer_sys2", "rel_reduction"];

/// Export the result as CSV with header `step,n_easy,metric,statistic,value`.
///
/// Aggregate rows come first (step, then metric, then mean before variance);
/// with `include_per_repeat` each repeat's raw trajectory follows with
/// statistic `repeat<k>`. Values use the shortest round-trip decimal form,
/// so re-exporting the same result is byte-identical.
pub fn export_sim_csv(result: &SimResult, include_per_repeat: bool) -> String {
    let mut out = String::from("step,n_easy,metric,statistic,value\n");
    for agg in &result.aggregate {
        let metrics_values = [
            (agg.eer_sys1_mean, agg.eer_sys1_var),
            (agg.eer_sys2_mean, agg.eer_sys2_var),
            (agg.rel_reduction_mean, agg.rel_reduction_var),
        ];
        for (name, (mean, var)) in METRIC_NAMES.iter().zip(metrics_values) {
            out.push_str(&format!(
                "{},{},{},mean,{}\n{},{},{},variance,{}\n",
                agg.step, agg.n_easy_added, name, mean, agg.step, agg.n_easy_added, name, var
            ));
        }
    }
    if include_per_repeat {
        for (k, records) in result.per_repeat.iter().enumerate() {
            for rec in records {
                let values = [rec.eer_sys1, rec.eer_sys2, rec.rel_reduction];
                for (name, value) in METRIC_NAMES.iter().zip(values) {
                    out.push_str(&format!(
                        "{},{},{},repeat{},{}\n",
                        rec.step, rec.n_easy_added, name, k, value
                    ));
                }
            }
        }
    }
    out
}

/// Render the aggregate trajectories as a standalone SVG document: one chart
/// per metric, mean line with a +/- one-standard-deviation band, axes
/// labelled with the step range and metric name. Fully deterministic.
pub fn export_sim_plot(result: &SimResult) -> Result<String, SimError> {
    if result.aggregate.len() < 2 {
        return Err(SimError::TooFewSteps);
    }
    let titles = ["EER system I", "EER system II", "relative EER reduction"];
    let panel_w = 640.0;
    let panel_h = 200.0;
    let margin_left = 70.0;
    let margin_right = 20.0;
    let margin_top = 30.0;
    let margin_bottom = 40.0;
    let total_w = margin_left + panel_w + margin_right;
    let total_h = 3.0 * (margin_top + panel_h + margin_bottom);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total_w}\" height=\"{total_h}\" \
         viewBox=\"0 0 {total_w} {total_h}\" font-family=\"monospace\" font-size=\"12\">\n"
    ));
    let max_step = result.aggregate.last().map(|a| a.step).unwrap_or(0) as f64;
    for (panel, title) in titles.iter().enumerate() {
        let series: Vec<(f64, f64, f64)> = result
            .aggregate
            .iter()
            .map(|a| {
                let (mean, var) = match panel {
                    0 => (a.eer_sys1_mean, a.eer_sys1_var),
                    1 => (a.eer_sys2_mean, a.eer_sys2_var),
                    _ => (a.rel_reduction_mean, a.rel_reduction_var),
                };
                (a.step as f64, mean, var.sqrt())
            })
            .collect();
        let y_min = series
            .iter()
            .map(|(_, m, s)| m - s)
            .fold(f64::INFINITY, f64::min);
        let y_max = series
            .iter()
            .map(|(_, m, s)| m + s)
            .fold(f64::NEG_INFINITY, f64::max);
        let pad = (0.05 * (y_max - y_min)).max(1e-9);
        let (y_lo, y_hi) = (y_min - pad, y_max + pad);

        let top = margin_top + panel as f64 * (margin_top + panel_h + margin_bottom);
        let x_of = |step: f64| margin_left + panel_w * step / max_step.max(1.0);
        let y_of = |v: f64| top + panel_h - panel_h * (v - y_lo) / (y_hi - y_lo);

        svg.push_str(&format!(
            "<g class=\"panel\" data-metric=\"{}\">\n",
            METRIC_NAMES[panel]
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">{}</text>\n",
            margin_left,
            top - 10.0,
            title
        ));
        // variance band: mean + std forward, mean - std back
        let mut band = String::from("<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" points=\"");
        for (x, m, s) in &series {
            band.push_str(&format!("{:.2},{:.2} ", x_of(*x), y_of(m + s)));
        }
        for (x, m, s) in series.iter().rev() {
            band.push_str(&format!("{:.2},{:.2} ", x_of(*x), y_of(m - s)));
        }
        band.push_str("\"/>\n");
        svg.push_str(&band);
        let mut line = String::from(
            "<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.5\" points=\"",
        );
        for (x, m, _) in &series {
            line.push_str(&format!("{:.2},{:.2} ", x_of(*x), y_of(*m)));
        }
        line.push_str("\"/>\n");
        svg.push_str(&line);
        // axes
        svg.push_str(&format!(
            "<line x1=\"{l}\" y1=\"{b:.2}\" x2=\"{r}\" y2=\"{b:.2}\" stroke=\"black\"/>\n\
             <line x1=\"{l}\" y1=\"{t:.2}\" x2=\"{l}\" y2=\"{b:.2}\" stroke=\"black\"/>\n",
            l = margin_left,
            r = margin_left + panel_w,
            t = top,
            b = top + panel_h,
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{:.2}\" text-anchor=\"middle\">step (0..{})</text>\n",
            margin_left + panel_w / 2.0,
            top + panel_h + 30.0,
            max_step as usize
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{:.4}</text>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{:.4}</text>\n",
            margin_left - 5.0,
            top + 5.0,
            y_hi,
            margin_left - 5.0,
            top + panel_h,
            y_lo
        ));
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
