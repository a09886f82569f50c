//! Soft-margin linear SVM trained by sequential minimal optimization.
//!
//! Solves the standard dual with an explicit bias term,
//!
//! ```text
//!   max  sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j <x_i, x_j>
//!   s.t. 0 <= alpha_i <= C,   sum_i alpha_i y_i = 0
//! ```
//!
//! by analytic two-variable updates. Pair selection is fully deterministic
//! and keyed to sample identity, not storage position: the first index
//! sweeps a canonical order (samples sorted by feature vector, then label),
//! the second is the index maximizing |E_i - E_j|, and when that choice
//! cannot make progress the remaining candidates are planned and the one
//! with the largest dual improvement is taken; all ties break by canonical
//! position. The decision rule is `f(x) = w . x + b`; support vectors are
//! the samples with dual coefficient above `alpha_eps`.
//!
//! After optimization the dual mass of exactly identical samples is averaged
//! within each duplicate group. The optimum is invariant under this
//! redistribution (identical rows contribute through their sum only) and it
//! makes the support set canonical, independent of storage order.

use std::fmt::Write as _;

use thiserror::Error;

/// Errors for training, evaluation, and model (de)serialization.
#[derive(Debug, Error, PartialEq)]
pub enum SvmError {
    #[error("training data is empty")]
    EmptyInput,
    #[error("labels contain a single class only")]
    SingleClass,
    #[error("non-finite value in training data at sample {0}")]
    NonFiniteInput(usize),
    #[error("label at sample {0} is {1}; labels must be +1 or -1")]
    InvalidLabel(usize, f64),
    #[error("x has {0} features but the model expects {1}")]
    DimensionMismatch(usize, usize),
    #[error("data length {0} is not n_samples x n_features = {1}")]
    ShapeMismatch(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("did not converge: iteration cap hit with max KKT violation {0:.3e}")]
    DidNotConverge(f64),
    #[error("model parse error: {0}")]
    ModelParse(String),
}

/// Training hyperparameters.
///
/// `alpha_eps` separates numerically-zero dual coefficients from true
/// support vectors; the default pairs with `c = 1.0` and should scale with
/// `c`. `seed` is part of the contract for shuffling-based selection
/// strategies; the canonical deterministic sweep used here does not consume
/// it.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmParams {
    pub c: f64,
    pub tol: f64,
    pub max_passes_without_change: usize,
    pub max_iterations: usize,
    pub alpha_eps: f64,
    pub standardize: bool,
    pub seed: u64,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            c: 1.0,
            tol: 1e-3,
            max_passes_without_change: 10,
            max_iterations: 10_000_000,
            alpha_eps: 1e-8,
            standardize: false,
            seed: 42,
        }
    }
}

impl SvmParams {
    /// Defaults with regularization `c`, keeping `alpha_eps = 1e-8 * c`.
    pub fn with_c(c: f64) -> SvmParams {
        SvmParams {
            c,
            alpha_eps: 1e-8 * c,
            ..SvmParams::default()
        }
    }

    fn validate(&self) -> Result<(), SvmError> {
        if self.c <= 0.0 || !self.c.is_finite() {
            return Err(SvmError::InvalidParams(format!(
                "c must be positive, got {}",
                self.c
            )));
        }
        if self.tol <= 0.0 || !self.tol.is_finite() {
            return Err(SvmError::InvalidParams(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if !(self.alpha_eps > 0.0 && self.alpha_eps < self.c) {
            return Err(SvmError::InvalidParams(format!(
                "alpha_eps must satisfy 0 < alpha_eps < c, got {}",
                self.alpha_eps
            )));
        }
        if self.max_iterations == 0 {
            return Err(SvmError::InvalidParams(
                "max_iterations must be >= 1".into(),
            ));
        }
        if self.max_passes_without_change == 0 {
            return Err(SvmError::InvalidParams(
                "max_passes_without_change must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Per-dimension affine map applied to inputs at decision time.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardization {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

/// How the optimization ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergence {
    /// Max KKT violation at exit was within `tol`.
    pub converged: bool,
    /// The pair-update cap was hit.
    pub capped: bool,
    /// Successful pair updates performed.
    pub iterations: usize,
    /// Full sweeps over the data.
    pub passes: usize,
    pub max_kkt_violation: f64,
}

/// A trained linear SVM.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmModel {
    pub params: SvmParams,
    pub weights: Vec<f64>,
    pub bias: f64,
    /// Dual coefficients in `[0, c]`, one per training sample.
    pub alphas: Vec<f64>,
    /// `{i : alphas[i] > alpha_eps}`, ascending.
    pub support_indices: Vec<usize>,
    pub standardization: Option<Standardization>,
    pub convergence: Convergence,
}

impl SvmModel {
    pub fn n_features(&self) -> usize {
        self.weights.len()
    }

    /// `f(x) = w . x' + b`, where `x'` is `x` after the stored
    /// standardization, if any.
    pub fn decision_value(&self, x: &[f64]) -> Result<f64, SvmError> {
        if x.len() != self.weights.len() {
            return Err(SvmError::DimensionMismatch(x.len(), self.weights.len()));
        }
        let value = match &self.standardization {
            Some(st) => self
                .weights
                .iter()
                .zip(x)
                .zip(st.mean.iter().zip(&st.std))
                .map(|((w, v), (m, s))| w * ((v - m) / s))
                .sum::<f64>(),
            None => dot(&self.weights, x),
        };
        Ok(value + self.bias)
    }

    /// Sorted indices of the support vectors.
    pub fn support_indices(&self) -> &[usize] {
        &self.support_indices
    }

    /// Dual objective value of the stored coefficients on the given data
    /// (the data must be what the model was trained on).
    pub fn dual_objective(&self, x: &[f64], n_features: usize, y: &[f64]) -> f64 {
        dual_objective(
            &self.alphas,
            x,
            n_features,
            y,
            self.standardization.as_ref(),
        )
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dual objective `sum(alpha) - 1/2 |sum_i alpha_i y_i x_i|^2` (linear
/// kernel form).
pub fn dual_objective(
    alphas: &[f64],
    x: &[f64],
    n_features: usize,
    y: &[f64],
    standardization: Option<&Standardization>,
) -> f64 {
    let data = match standardization {
        Some(st) => apply_standardization(x, n_features, st),
        None => x.to_vec(),
    };
    let mut w = vec![0.0; n_features];
    for i in 0..y.len() {
        let coef = alphas[i] * y[i];
        for (wd, xd) in w
            .iter_mut()
            .zip(&data[i * n_features..(i + 1) * n_features])
        {
            *wd += coef * xd;
        }
    }
    alphas.iter().sum::<f64>() - 0.5 * dot(&w, &w)
}

fn apply_standardization(x: &[f64], k: usize, st: &Standardization) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len());
    for row in x.chunks(k) {
        for ((v, m), s) in row.iter().zip(&st.mean).zip(&st.std) {
            out.push((v - m) / s);
        }
    }
    out
}

/// Train a soft-margin linear SVM on `n_samples x n_features` row-major
/// data with labels in `{+1, -1}`.
pub fn train_linear_svm(
    x: &[f64],
    n_features: usize,
    y: &[f64],
    params: &SvmParams,
) -> Result<SvmModel, SvmError> {
    params.validate()?;
    let n = y.len();
    if n == 0 || n_features == 0 {
        return Err(SvmError::EmptyInput);
    }
    if x.len() != n * n_features {
        return Err(SvmError::ShapeMismatch(x.len(), n * n_features));
    }
    if let Some(bad) = x.iter().position(|v| !v.is_finite()) {
        return Err(SvmError::NonFiniteInput(bad / n_features));
    }
    for (i, &label) in y.iter().enumerate() {
        if label != 1.0 && label != -1.0 {
            return Err(SvmError::InvalidLabel(i, label));
        }
    }
    if y.iter().all(|&l| l == y[0]) {
        return Err(SvmError::SingleClass);
    }

    let (data, standardization) = if params.standardize {
        let st = fit_standardization(x, n_features);
        (apply_standardization(x, n_features, &st), Some(st))
    } else {
        (x.to_vec(), None)
    };

    let mut solver = Solver {
        data: &data,
        k: n_features,
        y,
        c: params.c,
        tol: params.tol,
        alpha: vec![0.0; n],
        w: vec![0.0; n_features],
        b: 0.0,
    };
    let canon = canonical_order(&data, n_features, y);

    let mut iterations = 0usize;
    let mut passes = 0usize;
    let mut clean_passes = 0usize;
    let mut capped = false;
    'outer: while clean_passes < params.max_passes_without_change {
        // Re-derive the bias from the current duals before each sweep. The
        // running pairwise updates keep b only approximately consistent;
        // judging KKT violations against a drifted bias flags phantom
        // violators and stalls the sweep on micro-updates.
        solver.b = compute_bias(&solver.alpha, &data, n_features, y, &solver.w, params);
        let mut changed = 0usize;
        for &i in &canon {
            if !solver.violates_kkt(i) {
                continue;
            }
            if solver.update_around(i, &canon) {
                changed += 1;
                iterations += 1;
                if iterations >= params.max_iterations {
                    capped = true;
                    break 'outer;
                }
            }
        }
        passes += 1;
        if changed == 0 {
            clean_passes += 1;
        } else {
            clean_passes = 0;
        }
    }

    let mut alphas = solver.alpha;
    symmetrize_duplicates(&mut alphas, &canon, &data, n_features, y);

    // Recompute the primal quantities from the final duals so the model
    // satisfies w = sum alpha_i y_i x_i by construction.
    let mut weights = vec![0.0; n_features];
    for i in 0..n {
        let coef = alphas[i] * y[i];
        for (wd, xd) in weights
            .iter_mut()
            .zip(&data[i * n_features..(i + 1) * n_features])
        {
            *wd += coef * xd;
        }
    }
    let bias = compute_bias(&alphas, &data, n_features, y, &weights, params);
    let max_kkt_violation =
        max_kkt_violation(&alphas, &data, n_features, y, &weights, bias, params);
    if capped && max_kkt_violation > 10.0 * params.tol {
        return Err(SvmError::DidNotConverge(max_kkt_violation));
    }
    let support_indices: Vec<usize> = (0..n).filter(|&i| alphas[i] > params.alpha_eps).collect();
    Ok(SvmModel {
        params: params.clone(),
        weights,
        bias,
        alphas,
        support_indices,
        standardization,
        convergence: Convergence {
            converged: max_kkt_violation <= params.tol,
            capped,
            iterations,
            passes,
            max_kkt_violation,
        },
    })
}

/// Indices sorted by (feature vector, label, storage index): the processing
/// order used by the sweep, keyed to sample identity rather than storage
/// position.
fn canonical_order(data: &[f64], k: usize, y: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..y.len()).collect();
    order.sort_unstable_by(|&a, &b| {
        let ra = &data[a * k..(a + 1) * k];
        let rb = &data[b * k..(b + 1) * k];
        for (va, vb) in ra.iter().zip(rb) {
            match va.total_cmp(vb) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        y[a].total_cmp(&y[b]).then(a.cmp(&b))
    });
    order
}

/// Average the dual mass of exactly identical (x, y) samples. Duplicate
/// groups are adjacent in canonical order.
fn symmetrize_duplicates(alpha: &mut [f64], canon: &[usize], data: &[f64], k: usize, y: &[f64]) {
    let same =
        |a: usize, b: usize| y[a] == y[b] && data[a * k..(a + 1) * k] == data[b * k..(b + 1) * k];
    let mut start = 0;
    while start < canon.len() {
        let mut end = start + 1;
        while end < canon.len() && same(canon[start], canon[end]) {
            end += 1;
        }
        if end - start > 1 {
            let total: f64 = canon[start..end].iter().map(|&i| alpha[i]).sum();
            let share = total / (end - start) as f64;
            for &i in &canon[start..end] {
                alpha[i] = share;
            }
        }
        start = end;
    }
}

fn fit_standardization(x: &[f64], k: usize) -> Standardization {
    let n = x.len() / k;
    let mut mean = vec![0.0; k];
    for row in x.chunks(k) {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut var = vec![0.0; k];
    for row in x.chunks(k) {
        for ((v, m), acc) in row.iter().zip(&mean).zip(var.iter_mut()) {
            *acc += (v - m) * (v - m);
        }
    }
    let std = var
        .into_iter()
        .map(|v| {
            let s = (v / n as f64).sqrt();
            if s > 0.0 {
                s
            } else {
                1.0 // constant column: pass through unscaled
            }
        })
        .collect();
    Standardization { mean, std }
}

struct Solver<'a> {
    data: &'a [f64],
    k: usize,
    y: &'a [f64],
    c: f64,
    tol: f64,
    alpha: Vec<f64>,
    w: Vec<f64>,
    b: f64,
}

impl Solver<'_> {
    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.k..(i + 1) * self.k]
    }

    fn error(&self, i: usize) -> f64 {
        dot(&self.w, self.row(i)) + self.b - self.y[i]
    }

    fn violates_kkt(&self, i: usize) -> bool {
        let r = self.y[i] * self.error(i); // = y_i f(x_i) - 1
        (r < -self.tol && self.alpha[i] < self.c) || (r > self.tol && self.alpha[i] > 0.0)
    }

    /// Try to improve around first-choice index `i`.
    ///
    /// The primary second choice is the index maximizing |E_i - E_j|, ties
    /// broken by canonical position. When that pair is blocked (bounds
    /// collapse the feasible segment, or the step is negligible) the
    /// remaining candidates are planned and the one with the largest dual
    /// improvement is taken, again with canonical tie-break. Picking the
    /// best improver rather than the first acceptable one is what keeps the
    /// sweep from starving on near-duplicate coordinates.
    fn update_around(&mut self, i: usize, canon: &[usize]) -> bool {
        let errors: Vec<f64> = (0..self.y.len()).map(|j| self.error(j)).collect();
        let e_i = errors[i];
        let mut primary = usize::MAX;
        let mut best_gap = -1.0;
        for &j in canon {
            if j == i {
                continue;
            }
            let gap = (e_i - errors[j]).abs();
            if gap > best_gap {
                best_gap = gap;
                primary = j;
            }
        }
        if primary != usize::MAX {
            if let Some(plan) = self.plan_pair(i, primary, &errors) {
                self.commit(i, &plan, &errors);
                return true;
            }
        }
        let mut best: Option<PairPlan> = None;
        for &j in canon {
            if j == i || j == primary {
                continue;
            }
            if let Some(plan) = self.plan_pair(i, j, &errors) {
                if best
                    .as_ref()
                    .is_none_or(|b| plan.improvement > b.improvement)
                {
                    best = Some(plan);
                }
            }
        }
        match best {
            Some(plan) => {
                self.commit(i, &plan, &errors);
                true
            }
            None => false,
        }
    }

    /// Solve the two-variable subproblem for `(i, j)` without committing.
    /// Returns `None` when the pair cannot make strict progress.
    fn plan_pair(&self, i: usize, j: usize, errors: &[f64]) -> Option<PairPlan> {
        if i == j {
            return None;
        }
        let (a_i, a_j) = (self.alpha[i], self.alpha[j]);
        let (y_i, y_j) = (self.y[i], self.y[j]);
        let s = y_i * y_j;
        let (lo, hi) = if y_i != y_j {
            ((a_j - a_i).max(0.0), (self.c + a_j - a_i).min(self.c))
        } else {
            ((a_i + a_j - self.c).max(0.0), (a_i + a_j).min(self.c))
        };
        if lo >= hi {
            return None;
        }
        let k_ii = dot(self.row(i), self.row(i));
        let k_jj = dot(self.row(j), self.row(j));
        let k_ij = dot(self.row(i), self.row(j));
        let (e_i, e_j) = (errors[i], errors[j]);
        // Restricted to the feasible pair segment, the (minimization-form)
        // dual is the quadratic  slope * d + curvature * d^2 / 2  in the
        // displacement d of alpha_j. Working with slope and curvature
        // directly keeps the improvement estimate free of the catastrophic
        // cancellation a difference of full objective values would have.
        let slope = y_j * (e_j - e_i);
        let curvature = k_ii + k_jj - 2.0 * k_ij; // >= 0 for any kernel
        let a_j_new = if curvature > 0.0 {
            (a_j - slope / curvature).clamp(lo, hi)
        } else if slope > 0.0 {
            lo
        } else if slope < 0.0 {
            hi
        } else {
            return None; // exactly flat: nothing to gain
        };
        if (a_j_new - a_j).abs() < 1e-12 * (a_j_new + a_j + 1e-12) {
            return None;
        }
        let delta = a_j_new - a_j;
        let improvement = -(slope * delta) - 0.5 * curvature * delta * delta;
        if improvement <= 0.0 {
            return None;
        }
        let a_i_new = (a_i + s * (a_j - a_j_new)).clamp(0.0, self.c);
        Some(PairPlan {
            j,
            a_i_new,
            a_j_new,
            improvement,
            k_ii,
            k_jj,
            k_ij,
        })
    }

    fn commit(&mut self, i: usize, plan: &PairPlan, errors: &[f64]) {
        let j = plan.j;
        let (y_i, y_j) = (self.y[i], self.y[j]);
        let d_i = plan.a_i_new - self.alpha[i];
        let d_j = plan.a_j_new - self.alpha[j];
        let b1 = self.b - errors[i] - y_i * d_i * plan.k_ii - y_j * d_j * plan.k_ij;
        let b2 = self.b - errors[j] - y_i * d_i * plan.k_ij - y_j * d_j * plan.k_jj;
        self.b = if plan.a_i_new > 0.0 && plan.a_i_new < self.c {
            b1
        } else if plan.a_j_new > 0.0 && plan.a_j_new < self.c {
            b2
        } else {
            0.5 * (b1 + b2)
        };
        let (ci, cj) = (y_i * d_i, y_j * d_j);
        let row_i_start = i * self.k;
        let row_j_start = j * self.k;
        for d in 0..self.k {
            self.w[d] += ci * self.data[row_i_start + d] + cj * self.data[row_j_start + d];
        }
        self.alpha[i] = plan.a_i_new;
        self.alpha[j] = plan.a_j_new;
    }
}

/// A prepared two-variable update.
struct PairPlan {
    j: usize,
    a_i_new: f64,
    a_j_new: f64,
    improvement: f64,
    k_ii: f64,
    k_jj: f64,
    k_ij: f64,
}

/// Bias from the free support vectors, or the midpoint of the feasible bias
/// interval when every dual coefficient sits at a bound.
fn compute_bias(
    alphas: &[f64],
    data: &[f64],
    k: usize,
    y: &[f64],
    weights: &[f64],
    params: &SvmParams,
) -> f64 {
    let g = |i: usize| y[i] - dot(weights, &data[i * k..(i + 1) * k]);
    let mut free_sum = 0.0;
    let mut free_count = 0usize;
    for (i, &alpha) in alphas.iter().enumerate() {
        if alpha > params.alpha_eps && alpha < params.c - params.alpha_eps {
            free_sum += g(i);
            free_count += 1;
        }
    }
    if free_count > 0 {
        return free_sum / free_count as f64;
    }
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::INFINITY;
    for (i, (&alpha, &label)) in alphas.iter().zip(y).enumerate() {
        let gi = g(i);
        let at_zero = alpha <= params.alpha_eps;
        let is_lower = (at_zero && label > 0.0) || (!at_zero && label < 0.0);
        if is_lower {
            lower = lower.max(gi);
        } else {
            upper = upper.min(gi);
        }
    }
    match (lower.is_finite(), upper.is_finite()) {
        (true, true) => 0.5 * (lower + upper),
        (true, false) => lower,
        (false, true) => upper,
        (false, false) => 0.0,
    }
}

fn max_kkt_violation(
    alphas: &[f64],
    data: &[f64],
    k: usize,
    y: &[f64],
    weights: &[f64],
    bias: f64,
    params: &SvmParams,
) -> f64 {
    let mut worst = 0.0f64;
    for (i, (&alpha, &label)) in alphas.iter().zip(y).enumerate() {
        let r = label * (dot(weights, &data[i * k..(i + 1) * k]) + bias) - 1.0;
        let viol = if alpha <= params.alpha_eps {
            (-r).max(0.0)
        } else if alpha >= params.c - params.alpha_eps {
            r.max(0.0)
        } else {
            r.abs()
        };
        worst = worst.max(viol);
    }
    worst
}

impl SvmModel {
    /// Serialize as a self-describing text document. Floats use the
    /// shortest round-trip decimal form, so `from_text(to_text(m)) == m`.
    pub fn to_text(&self) -> String {
        let mut out = String::from("trialkit-svm v1\n");
        let p = &self.params;
        let _ = writeln!(out, "c {}", p.c);
        let _ = writeln!(out, "tol {}", p.tol);
        let _ = writeln!(
            out,
            "max_passes_without_change {}",
            p.max_passes_without_change
        );
        let _ = writeln!(out, "max_iterations {}", p.max_iterations);
        let _ = writeln!(out, "alpha_eps {}", p.alpha_eps);
        let _ = writeln!(out, "standardize {}", p.standardize);
        let _ = writeln!(out, "seed {}", p.seed);
        let _ = writeln!(out, "n_features {}", self.weights.len());
        let _ = writeln!(out, "n_samples {}", self.alphas.len());
        let c = &self.convergence;
        let _ = writeln!(out, "converged {}", c.converged);
        let _ = writeln!(out, "capped {}", c.capped);
        let _ = writeln!(out, "iterations {}", c.iterations);
        let _ = writeln!(out, "passes {}", c.passes);
        let _ = writeln!(out, "max_kkt_violation {}", c.max_kkt_violation);
        match &self.standardization {
            None => out.push_str("standardization none\n"),
            Some(st) => {
                out.push_str("standardization some\n");
                let _ = writeln!(out, "mean {}", join_floats(&st.mean));
                let _ = writeln!(out, "std {}", join_floats(&st.std));
            }
        }
        let _ = writeln!(out, "weights {}", join_floats(&self.weights));
        let _ = writeln!(out, "bias {}", self.bias);
        let _ = writeln!(out, "alphas {}", join_floats(&self.alphas));
        let _ = writeln!(
            out,
            "support {}",
            self.support_indices
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        out
    }

    /// Parse a document produced by [`SvmModel::to_text`].
    pub fn from_text(text: &str) -> Result<SvmModel, SvmError> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        if header != "trialkit-svm v1" {
            return Err(SvmError::ModelParse(format!("unknown header `{header}`")));
        }
        let mut fields = std::collections::HashMap::new();
        let mut order = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(' ').unwrap_or((line, ""));
            fields.insert(key.to_string(), value.to_string());
            order.push(key.to_string());
        }
        let get = |key: &str| {
            fields
                .get(key)
                .cloned()
                .ok_or_else(|| SvmError::ModelParse(format!("missing field `{key}`")))
        };
        let parse_f64 = |key: &str| -> Result<f64, SvmError> {
            get(key)?
                .parse()
                .map_err(|_| SvmError::ModelParse(format!("bad float in `{key}`")))
        };
        let parse_usize = |key: &str| -> Result<usize, SvmError> {
            get(key)?
                .parse()
                .map_err(|_| SvmError::ModelParse(format!("bad integer in `{key}`")))
        };
        let parse_bool = |key: &str| -> Result<bool, SvmError> {
            get(key)?
                .parse()
                .map_err(|_| SvmError::ModelParse(format!("bad bool in `{key}`")))
        };
        let parse_floats = |key: &str| -> Result<Vec<f64>, SvmError> {
            get(key)?
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| SvmError::ModelParse(format!("bad float in `{key}`")))
                })
                .collect()
        };
        let params = SvmParams {
            c: parse_f64("c")?,
            tol: parse_f64("tol")?,
            max_passes_without_change: parse_usize("max_passes_without_change")?,
            max_iterations: parse_usize("max_iterations")?,
            alpha_eps: parse_f64("alpha_eps")?,
            standardize: parse_bool("standardize")?,
            seed: get("seed")?
                .parse()
                .map_err(|_| SvmError::ModelParse("bad integer in `seed`".into()))?,
        };
        let standardization = match get("standardization")?.as_str() {
            "none" => None,
            "some" => Some(Standardization {
                mean: parse_floats("mean")?,
                std: parse_floats("std")?,
            }),
            other => {
                return Err(SvmError::ModelParse(format!(
                    "bad standardization marker `{other}`"
                )))
            }
        };
        let support_indices = get("support")?
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| SvmError::ModelParse("bad index in `support`".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let model = SvmModel {
            params,
            weights: parse_floats("weights")?,
            bias: parse_f64("bias")?,
            alphas: parse_floats("alphas")?,
            support_indices,
            standardization,
            convergence: Convergence {
                converged: parse_bool("converged")?,
                capped: parse_bool("capped")?,
                iterations: parse_usize("iterations")?,
                passes: parse_usize("passes")?,
                max_kkt_violation: parse_f64("max_kkt_violation")?,
            },
        };
        if model.weights.len() != parse_usize("n_features")? {
            return Err(SvmError::ModelParse("weights length != n_features".into()));
        }
        if model.alphas.len() != parse_usize("n_samples")? {
            return Err(SvmError::ModelParse("alphas length != n_samples".into()));
        }
        Ok(model)
    }
}

fn join_floats(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn train(x: &[f64], k: usize, y: &[f64]) -> SvmModel {
        train_linear_svm(x, k, y, &SvmParams::default()).unwrap()
    }

    #[test]
    fn two_point_analytic_solution() {
        // max 2a - 2a^2 over the equality-constrained dual: a = 1/2,
        // w = 1, b = 0.
        let model = train(&[-1.0, 1.0], 1, &[-1.0, 1.0]);
        assert!(
            (model.weights[0] - 1.0).abs() < 1e-9,
            "w = {:?}",
            model.weights
        );
        assert!(model.bias.abs() < 1e-9, "b = {}", model.bias);
        assert!((model.alphas[0] - 0.5).abs() < 1e-9);
        assert!((model.alphas[1] - 0.5).abs() < 1e-9);
        assert_eq!(model.support_indices(), &[0, 1]);
        assert!(model.convergence.converged);
    }

    #[test]
    fn outside_margin_point_gets_zero_alpha() {
        // The +3 point satisfies y f(x) = 3 > 1, so its dual is zero.
        let model = train(&[-1.0, 1.0, 3.0], 1, &[-1.0, 1.0, 1.0]);
        assert!((model.weights[0] - 1.0).abs() < 1e-9);
        assert!(model.bias.abs() < 1e-9);
        assert!(
            model.alphas[2].abs() < 1e-12,
            "alpha2 = {}",
            model.alphas[2]
        );
        assert_eq!(model.support_indices(), &[0, 1]);
    }

    #[test]
    fn single_class_rejected() {
        assert_eq!(
            train_linear_svm(&[1.0, 2.0], 1, &[1.0, 1.0], &SvmParams::default()).unwrap_err(),
            SvmError::SingleClass
        );
    }

    #[test]
    fn non_finite_input_rejected() {
        assert_eq!(
            train_linear_svm(&[1.0, f64::NAN], 1, &[1.0, -1.0], &SvmParams::default()).unwrap_err(),
            SvmError::NonFiniteInput(1)
        );
    }

    #[test]
    fn bad_labels_rejected() {
        assert_eq!(
            train_linear_svm(&[1.0, 2.0], 1, &[1.0, 0.5], &SvmParams::default()).unwrap_err(),
            SvmError::InvalidLabel(1, 0.5)
        );
    }

    #[test]
    fn decision_value_basics() {
        let model = train(&[-1.0, 1.0], 1, &[-1.0, 1.0]);
        assert!((model.decision_value(&[0.5]).unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(
            model.decision_value(&[0.5, 1.0]).unwrap_err(),
            SvmError::DimensionMismatch(2, 1)
        );
        let constant = SvmModel {
            weights: vec![0.0, 0.0],
            bias: 0.3,
            ..model
        };
        assert_eq!(constant.decision_value(&[5.0, -9.0]).unwrap(), 0.3);
    }

    #[test]
    fn free_support_vectors_sit_on_margin() {
        let model = train(&[-1.0, 1.0, 3.0], 1, &[-1.0, 1.0, 1.0]);
        for &i in model.support_indices() {
            let a = model.alphas[i];
            if a > model.params.alpha_eps && a < model.params.c - model.params.alpha_eps {
                let x = [[-1.0], [1.0], [3.0]][i];
                let y = [-1.0, 1.0, 1.0][i];
                let margin = y * model.decision_value(&x).unwrap();
                assert!((margin - 1.0).abs() <= model.params.tol, "margin {margin}");
            }
        }
    }

    #[test]
    fn alpha_at_eps_boundary_excluded() {
        let params = SvmParams::default();
        let model = SvmModel {
            params: params.clone(),
            weights: vec![1.0],
            bias: 0.0,
            alphas: vec![params.alpha_eps, 2.0 * params.alpha_eps, 0.0],
            support_indices: vec![],
            standardization: None,
            convergence: Convergence {
                converged: true,
                capped: false,
                iterations: 0,
                passes: 0,
                max_kkt_violation: 0.0,
            },
        };
        let support: Vec<usize> = (0..3)
            .filter(|&i| model.alphas[i] > params.alpha_eps)
            .collect();
        assert_eq!(support, vec![1]);
    }

    #[test]
    fn dual_balance_holds() {
        // 2-D separable blobs with a few overlapping points.
        let x = vec![
            0.0, 0.0, 0.5, 0.2, 1.0, 0.8, 0.2, 0.9, 3.0, 3.0, 3.5, 2.8, 2.7, 3.3, 3.1, 2.4, 1.6,
            1.4, 1.5, 1.7,
        ];
        let y = vec![-1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0];
        let model = train(&x, 2, &y);
        let balance: f64 = model.alphas.iter().zip(&y).map(|(a, yi)| a * yi).sum();
        assert!(
            balance.abs() <= 1e-6 * model.params.c * y.len() as f64,
            "balance {balance}"
        );
        assert!(!model.support_indices().is_empty());
    }

    #[test]
    fn standardized_training_decides_on_raw_inputs() {
        let x = vec![100.0, 0.001, 102.0, 0.003, 104.0, 0.005, 106.0, 0.007];
        let y = vec![-1.0, -1.0, 1.0, 1.0];
        let params = SvmParams {
            standardize: true,
            ..SvmParams::default()
        };
        let model = train_linear_svm(&x, 2, &y, &params).unwrap();
        assert!(model.standardization.is_some());
        // Raw-space inputs classify correctly through the stored transform.
        assert!(model.decision_value(&[100.0, 0.001]).unwrap() < 0.0);
        assert!(model.decision_value(&[106.0, 0.007]).unwrap() > 0.0);
    }

    #[test]
    fn model_text_roundtrip() {
        let x = vec![-1.0, 0.5, 1.0, -0.25, 2.0, 0.125];
        let y = vec![-1.0, 1.0, 1.0];
        let params = SvmParams {
            standardize: true,
            ..SvmParams::default()
        };
        let model = train_linear_svm(&x, 2, &y, &params).unwrap();
        let text = model.to_text();
        let back = SvmModel::from_text(&text).unwrap();
        assert_eq!(back, model);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn model_text_rejects_garbage() {
        assert!(matches!(
            SvmModel::from_text("not a model"),
            Err(SvmError::ModelParse(_))
        ));
        let model = train(&[-1.0, 1.0], 1, &[-1.0, 1.0]);
        let broken = model.to_text().replace("bias", "bais");
        assert!(matches!(
            SvmModel::from_text(&broken),
            Err(SvmError::ModelParse(_))
        ));
    }

    #[test]
    fn duplicated_points_share_dual_mass() {
        // Two identical positive points: the optimizer may find any split,
        // but the reported duals are symmetrized.
        let x = vec![-1.0, 1.0, 1.0];
        let y = vec![-1.0, 1.0, 1.0];
        let model = train(&x, 1, &y);
        assert!(
            (model.alphas[1] - model.alphas[2]).abs() < 1e-12,
            "duplicates got {} vs {}",
            model.alphas[1],
            model.alphas[2]
        );
    }

    #[test]
    fn invalid_params_rejected() {
        let bad = SvmParams {
            c: 0.0,
            ..SvmParams::default()
        };
        assert!(matches!(
            train_linear_svm(&[-1.0, 1.0], 1, &[-1.0, 1.0], &bad).unwrap_err(),
            SvmError::InvalidParams(_)
        ));
        let bad = SvmParams {
            alpha_eps: 2.0,
            ..SvmParams::default()
        };
        assert!(matches!(
            train_linear_svm(&[-1.0, 1.0], 1, &[-1.0, 1.0], &bad).unwrap_err(),
            SvmError::InvalidParams(_)
        ));
    }
}
