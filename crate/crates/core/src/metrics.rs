//! Detection-error metrics over scored trials.
//!
//! The decision rule is fixed everywhere: accept iff `score >= threshold`,
//! with ties counting as acceptances. FAR is the fraction of nontargets
//! accepted, FRR the fraction of targets rejected. The ROC sweep emits one
//! operating point per distinct score plus sentinels at minus/plus infinity,
//! EER is found by linear interpolation between the points bracketing the
//! FAR = FRR crossing, and minDCF is the normalized minimum detection cost
//! over the same sweep. Relative comparisons between two systems (relative
//! EER reduction, relative FAR change at a fixed threshold) live here too.
//!
//! Sorting is by score value then original index, so every count and every
//! reported value is reproducible bit-for-bit.

use thiserror::Error;

use crate::trials::Label;

/// Errors for metric computation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("scores and labels have different lengths ({0} vs {1})")]
    MismatchedLengths(usize, usize),
    #[error("degenerate labels: need at least one target and one nontarget")]
    DegenerateLabels,
    #[error("system A has no false acceptances at this threshold; relative FAR change undefined")]
    ZeroFalseAcceptances,
    #[error("baseline EER is zero; relative reduction undefined")]
    ZeroBaselineEER,
    #[error("invalid DCF parameters: {0}")]
    InvalidDcfParams(String),
    #[error("non-finite score at position {0}")]
    NonFiniteScore(usize),
}

/// Parallel scores and labels for one system on one trial set.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredTrials {
    scores: Vec<f64>,
    labels: Vec<Label>,
}

impl ScoredTrials {
    pub fn new(scores: Vec<f64>, labels: Vec<Label>) -> Result<ScoredTrials, MetricsError> {
        if scores.len() != labels.len() {
            return Err(MetricsError::MismatchedLengths(scores.len(), labels.len()));
        }
        if let Some(bad) = scores.iter().position(|s| !s.is_finite()) {
            return Err(MetricsError::NonFiniteScore(bad));
        }
        Ok(ScoredTrials { scores, labels })
    }

    /// Build from separate pools: targets first, then nontargets. Scores
    /// must be finite.
    pub fn from_pools(target_scores: &[f64], nontarget_scores: &[f64]) -> ScoredTrials {
        debug_assert!(
            target_scores
                .iter()
                .chain(nontarget_scores)
                .all(|s| s.is_finite()),
            "scores must be finite"
        );
        let mut scores = Vec::with_capacity(target_scores.len() + nontarget_scores.len());
        let mut labels = Vec::with_capacity(scores.capacity());
        scores.extend_from_slice(target_scores);
        labels.extend(std::iter::repeat_n(Label::Target, target_scores.len()));
        scores.extend_from_slice(nontarget_scores);
        labels.extend(std::iter::repeat_n(
            Label::Nontarget,
            nontarget_scores.len(),
        ));
        ScoredTrials { scores, labels }
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn n_targets(&self) -> usize {
        self.labels.iter().filter(|l| **l == Label::Target).count()
    }

    pub fn n_nontargets(&self) -> usize {
        self.labels.len() - self.n_targets()
    }

    fn check_non_degenerate(&self) -> Result<(usize, usize), MetricsError> {
        let pos = self.n_targets();
        let neg = self.len() - pos;
        if pos == 0 || neg == 0 {
            return Err(MetricsError::DegenerateLabels);
        }
        Ok((pos, neg))
    }
}

/// One point of the FAR/FRR trade-off at a given threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub threshold: f64,
    pub far: f64,
    pub frr: f64,
}

/// Detection cost function parameters. Defaults: `p_target = 0.01`,
/// `c_miss = c_fa = 1.0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcfParams {
    pub p_target: f64,
    pub c_miss: f64,
    pub c_fa: f64,
}

impl Default for DcfParams {
    fn default() -> Self {
        DcfParams {
            p_target: 0.01,
            c_miss: 1.0,
            c_fa: 1.0,
        }
    }
}

impl DcfParams {
    fn validate(&self) -> Result<(), MetricsError> {
        if !(self.p_target > 0.0 && self.p_target < 1.0) {
            return Err(MetricsError::InvalidDcfParams(format!(
                "p_target must be in (0, 1), got {}",
                self.p_target
            )));
        }
        if self.c_miss <= 0.0 || self.c_fa <= 0.0 || self.c_miss.is_nan() || self.c_fa.is_nan() {
            return Err(MetricsError::InvalidDcfParams(
                "c_miss and c_fa must be positive".to_string(),
            ));
        }
        Ok(())
    }
}

/// Full evaluation of one system: EER, minDCF, and the operating curve.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub eer: f64,
    pub eer_threshold: f64,
    pub min_dcf: f64,
    pub min_dcf_threshold: f64,
    pub curve: Vec<OperatingPoint>,
}

/// The full ROC sweep: one operating point per distinct score value plus
/// sentinels at minus/plus infinity, in increasing threshold order. FAR is
/// non-increasing and FRR non-decreasing along the sweep.
pub fn roc_points(data: &ScoredTrials) -> Result<Vec<OperatingPoint>, MetricsError> {
    let (n_pos, n_neg) = data.check_non_degenerate()?;
    let order = sorted_order(data.scores());
    let mut points = Vec::with_capacity(data.len() + 2);
    points.push(OperatingPoint {
        threshold: f64::NEG_INFINITY,
        far: 1.0,
        frr: 0.0,
    });
    let mut pos_below = 0usize;
    let mut neg_below = 0usize;
    let mut i = 0usize;
    while i < order.len() {
        let value = data.scores[order[i]];
        points.push(OperatingPoint {
            threshold: value,
            far: (n_neg - neg_below) as f64 / n_neg as f64,
            frr: pos_below as f64 / n_pos as f64,
        });
        while i < order.len() && data.scores[order[i]] == value {
            match data.labels[order[i]] {
                Label::Target => pos_below += 1,
                Label::Nontarget => neg_below += 1,
            }
            i += 1;
        }
    }
    points.push(OperatingPoint {
        threshold: f64::INFINITY,
        far: 0.0,
        frr: 1.0,
    });
    Ok(points)
}

/// Indices sorted by (score, original index): a deterministic total order.
fn sorted_order(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_unstable_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    order
}

/// Equal error rate and its threshold.
///
/// Sweeps [`roc_points`] for the FAR/FRR crossing. When no operating point
/// attains FAR = FRR exactly, the bracketing points are joined linearly and
/// the interpolated common value and threshold are returned. A bracket
/// ending at the plus-infinity sentinel keeps the finite endpoint's
/// threshold.
pub fn eer(data: &ScoredTrials) -> Result<(f64, f64), MetricsError> {
    let points = roc_points(data)?;
    // far - frr is non-increasing along the sweep, from +1 down to -1.
    for (idx, p) in points.iter().enumerate() {
        let d = p.far - p.frr;
        if d == 0.0 {
            return Ok((p.far, p.threshold));
        }
        if d < 0.0 {
            let prev = &points[idx - 1];
            let d1 = prev.far - prev.frr;
            let lambda = d1 / (d1 - d);
            let value = prev.far + lambda * (p.far - prev.far);
            let threshold = if !p.threshold.is_finite() {
                prev.threshold
            } else if !prev.threshold.is_finite() {
                p.threshold
            } else {
                prev.threshold + lambda * (p.threshold - prev.threshold)
            };
            return Ok((value, threshold));
        }
    }
    unreachable!("sweep ends at far=0, frr=1, so a crossing always exists")
}

/// Minimum normalized detection cost and the threshold attaining it.
///
/// Minimizes `(c_miss*frr*p + c_fa*far*(1-p)) / min(c_miss*p, c_fa*(1-p))`
/// over the full sweep including sentinels; ties go to the lowest threshold.
pub fn min_dcf(data: &ScoredTrials, params: &DcfParams) -> Result<(f64, f64), MetricsError> {
    params.validate()?;
    let points = roc_points(data)?;
    let normalizer = (params.c_miss * params.p_target).min(params.c_fa * (1.0 - params.p_target));
    let mut best = f64::INFINITY;
    let mut best_threshold = f64::NEG_INFINITY;
    for p in &points {
        let cost = (params.c_miss * p.frr * params.p_target
            + params.c_fa * p.far * (1.0 - params.p_target))
            / normalizer;
        if cost < best {
            best = cost;
            best_threshold = p.threshold;
        }
    }
    Ok((best, best_threshold))
}

/// FAR and FRR at a fixed threshold, by direct counting.
pub fn far_frr_at(data: &ScoredTrials, threshold: f64) -> Result<OperatingPoint, MetricsError> {
    let (n_pos, n_neg) = data.check_non_degenerate()?;
    let mut false_accepts = 0usize;
    let mut false_rejects = 0usize;
    for (score, label) in data.scores.iter().zip(&data.labels) {
        match label {
            Label::Nontarget if *score >= threshold => false_accepts += 1,
            Label::Target if *score < threshold => false_rejects += 1,
            _ => {}
        }
    }
    Ok(OperatingPoint {
        threshold,
        far: false_accepts as f64 / n_neg as f64,
        frr: false_rejects as f64 / n_pos as f64,
    })
}

/// Relative FAR change from system A to system B at a fixed threshold:
/// `(FAR_A - FAR_B) / FAR_A`.
///
/// Both slices score the same negative trials. The shared denominator
/// cancels, so the result is a ratio of false-acceptance counts and is
/// exactly invariant under appending negatives that both systems score
/// below the threshold.
pub fn relative_far_change(
    neg_a: &[f64],
    neg_b: &[f64],
    threshold: f64,
) -> Result<f64, MetricsError> {
    if neg_a.len() != neg_b.len() {
        return Err(MetricsError::MismatchedLengths(neg_a.len(), neg_b.len()));
    }
    let fa_a = neg_a.iter().filter(|&&s| s >= threshold).count();
    let fa_b = neg_b.iter().filter(|&&s| s >= threshold).count();
    if fa_a == 0 {
        return Err(MetricsError::ZeroFalseAcceptances);
    }
    Ok((fa_a as f64 - fa_b as f64) / fa_a as f64)
}

/// Relative EER reduction from system A to system B:
/// `(eer(A) - eer(B)) / eer(A)`. May be negative when B is worse.
pub fn relative_eer_reduction(
    data_a: &ScoredTrials,
    data_b: &ScoredTrials,
) -> Result<f64, MetricsError> {
    let (eer_a, _) = eer(data_a)?;
    let (eer_b, _) = eer(data_b)?;
    if eer_a == 0.0 {
        return Err(MetricsError::ZeroBaselineEER);
    }
    Ok((eer_a - eer_b) / eer_a)
}

/// Evaluate one system end to end.
pub fn evaluate(data: &ScoredTrials, params: &DcfParams) -> Result<DetectionReport, MetricsError> {
    let curve = roc_points(data)?;
    let (eer_value, eer_threshold) = eer(data)?;
    let (dcf_value, dcf_threshold) = min_dcf(data, params)?;
    Ok(DetectionReport {
        eer: eer_value,
        eer_threshold,
        min_dcf: dcf_value,
        min_dcf_threshold: dcf_threshold,
        curve,
    })
}

/// EER as a percentage with 3 decimal places, e.g. `4.558`.
pub fn format_eer_percent(eer: f64) -> String {
    format!("{:.3}", eer * 100.0)
}

/// minDCF with 4 decimal places, e.g. `0.4882`.
pub fn format_min_dcf(min_dcf: f64) -> String {
    format!("{min_dcf:.4}")
}
