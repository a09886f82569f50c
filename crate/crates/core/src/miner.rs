//! Hard-trial mining.
//!
//! Every trial's multi-system score vector becomes a training sample, the
//! trial label becomes the class (target = +1, nontarget = -1), and a linear
//! SVM is trained on the test set's own trials. The trials whose score
//! vectors end up as support vectors are the hard subset: the ones near the
//! decision boundary that the reference systems do not agree on. This is a
//! selection procedure, not a classifier to be generalized, so there is no
//! held-out split and no class reweighting; the report surfaces any label
//! imbalance instead.

use thiserror::Error;

use crate::scores::ScoreTable;
use crate::svm::{self, SvmModel, SvmParams};
use crate::trials::{Label, TrialError, TrialSet};

/// Errors propagated from the mining pipeline.
#[derive(Debug, Error, PartialEq)]
pub enum MinerError {
    #[error(transparent)]
    Svm(#[from] svm::SvmError),
    #[error(transparent)]
    Trials(#[from] TrialError),
}

/// Counts and model metadata for one mining run.
#[derive(Debug, Clone, PartialEq)]
pub struct MiningReport {
    pub set_name: String,
    pub n_target_full: usize,
    pub n_nontarget_full: usize,
    pub n_target_hard: usize,
    pub n_nontarget_hard: usize,
    /// `(n_target_hard + n_nontarget_hard) / (n_target_full + n_nontarget_full)`.
    pub hard_fraction: f64,
    pub model: SvmModel,
}

/// Train the SVM on all score vectors and extract the support-vector trials.
///
/// Returns the hard subset (original order preserved) and the report. The
/// table carries the trial set it was aligned against.
pub fn mine_hard_trials(
    table: &ScoreTable,
    params: &SvmParams,
) -> Result<(TrialSet, MiningReport), MinerError> {
    let set = table.trial_set();
    let labels: Vec<f64> = set
        .iter()
        .map(|t| match t.label {
            Label::Target => 1.0,
            Label::Nontarget => -1.0,
        })
        .collect();
    let model = svm::train_linear_svm(table.matrix(), table.n_systems(), &labels, params)?;
    let hard = set.subset(model.support_indices())?;
    let n_target_hard = hard.target_count();
    let n_nontarget_hard = hard.nontarget_count();
    let report = MiningReport {
        set_name: set.name().to_string(),
        n_target_full: set.target_count(),
        n_nontarget_full: set.nontarget_count(),
        n_target_hard,
        n_nontarget_hard,
        hard_fraction: (n_target_hard + n_nontarget_hard) as f64 / set.len() as f64,
        model,
    };
    Ok((hard, report))
}

/// Render the report as an aligned table: full target/nontarget counts, hard
/// target/nontarget counts, then the hard fraction.
pub fn mining_stats_text(report: &MiningReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<16} {:>12} {:>14} {:>12} {:>14} {:>14}\n",
        "set", "target_full", "nontarget_full", "target_hard", "nontarget_hard", "hard_fraction"
    ));
    out.push_str(&format!(
        "{:<16} {:>12} {:>14} {:>12} {:>14} {:>14.3}\n",
        report.set_name,
        group_thousands(report.n_target_full),
        group_thousands(report.n_nontarget_full),
        group_thousands(report.n_target_hard),
        group_thousands(report.n_nontarget_hard),
        report.hard_fraction,
    ));
    out
}

/// CSV form: `set,full_target,full_nontarget,hard_target,hard_nontarget,fraction`.
pub fn mining_stats_csv(report: &MiningReport) -> String {
    format!(
        "set,full_target,full_nontarget,hard_target,hard_nontarget,fraction\n{},{},{},{},{},{}\n",
        report.set_name,
        report.n_target_full,
        report.n_nontarget_full,
        report.n_target_hard,
        report.n_nontarget_hard,
        report.hard_fraction,
    )
}

fn group_thousands(n: usize) -> String {
    let digits = n.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (idx, ch) in digits.chars().enumerate() {
        if idx > 0 && (digits.len() - idx).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}
