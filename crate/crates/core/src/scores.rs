//! Score ingestion and trial alignment.
//!
//! Each reference system contributes one score file of `<enroll> <test>
//! <score>` lines. [`align`] arranges the scores of K systems into a dense
//! `|trials| x K` matrix in trial order, so row i is the K-dimensional score
//! vector of trial i. Missing scores are a hard error: downstream mining
//! needs complete vectors and silent imputation would corrupt it.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::trials::TrialSet;

/// Errors for score parsing and alignment.
#[derive(Debug, Error, PartialEq)]
pub enum ScoreError {
    #[error("line {0}: malformed line (expected `<enroll> <test> <score>`)")]
    MalformedLine(usize),
    #[error("line {0}: non-finite score `{1}`")]
    NonFiniteScore(usize, String),
    #[error("line {0}: duplicate key ({1}, {2})")]
    DuplicateKey(usize, String, String),
    #[error("system `{system}`: {total} trial(s) missing a score, first {}: {}",
            .missing.len(),
            .missing.iter().map(|(e, t)| format!("({e}, {t})")).collect::<Vec<_>>().join(" "))]
    MissingScores {
        system: String,
        /// First few missing `(enroll, test)` keys (at most 10).
        missing: Vec<(String, String)>,
        total: usize,
    },
    #[error("row index {0} out of range for table of {1} trials")]
    IndexOutOfRange(usize, usize),
    #[error("matrix shape {rows}x{cols} does not match {expected} cells")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("non-finite value in score matrix at row {0}, column {1}")]
    NonFiniteCell(usize, usize),
}

/// One system's scores, keyed by `(enroll, test)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreList {
    system_name: String,
    entries: Vec<(String, String, f64)>,
}

impl ScoreList {
    /// Build a list, enforcing finite scores and unique keys.
    pub fn new(
        system_name: impl Into<String>,
        entries: Vec<(String, String, f64)>,
    ) -> Result<ScoreList, ScoreError> {
        let mut seen = HashMap::new();
        for (idx, (e, t, s)) in entries.iter().enumerate() {
            if !s.is_finite() {
                return Err(ScoreError::NonFiniteScore(idx + 1, s.to_string()));
            }
            if seen.insert((e.clone(), t.clone()), idx).is_some() {
                return Err(ScoreError::DuplicateKey(idx + 1, e.clone(), t.clone()));
            }
        }
        Ok(ScoreList {
            system_name: system_name.into(),
            entries,
        })
    }

    pub fn system_name(&self) -> &str {
        &self.system_name
    }

    pub fn entries(&self) -> &[(String, String, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Parse a score file: one `<enroll> <test> <score>` per line, scientific
/// notation accepted, 64-bit precision, file order preserved.
pub fn parse_scores(input: &str, system_name: impl Into<String>) -> Result<ScoreList, ScoreError> {
    let mut entries = Vec::new();
    let mut seen: HashMap<(String, String), usize> = HashMap::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(&[' ', '\t']).filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 3 {
            return Err(ScoreError::MalformedLine(line_no));
        }
        let score: f64 = fields[2]
            .parse()
            .map_err(|_| ScoreError::MalformedLine(line_no))?;
        if !score.is_finite() {
            return Err(ScoreError::NonFiniteScore(line_no, fields[2].to_string()));
        }
        let key = (fields[0].to_string(), fields[1].to_string());
        if seen.insert(key.clone(), line_no).is_some() {
            return Err(ScoreError::DuplicateKey(line_no, key.0, key.1));
        }
        entries.push((key.0, key.1, score));
    }
    Ok(ScoreList {
        system_name: system_name.into(),
        entries,
    })
}

/// Trial-aligned score matrix: row i = trial i, column j = system j.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    trial_set: Arc<TrialSet>,
    system_names: Vec<String>,
    /// Row-major `|trials| x K`.
    matrix: Vec<f64>,
    extra_ignored: usize,
}

impl ScoreTable {
    /// Build a table directly from a row-major matrix. Every cell must be
    /// finite and the shape must be `|trials| x system_names.len()`.
    pub fn from_matrix(
        trial_set: Arc<TrialSet>,
        system_names: Vec<String>,
        matrix: Vec<f64>,
    ) -> Result<ScoreTable, ScoreError> {
        let rows = trial_set.len();
        let cols = system_names.len();
        if matrix.len() != rows * cols {
            return Err(ScoreError::ShapeMismatch {
                rows,
                cols,
                expected: matrix.len(),
            });
        }
        if let Some(bad) = matrix.iter().position(|v| !v.is_finite()) {
            return Err(ScoreError::NonFiniteCell(bad / cols, bad % cols));
        }
        Ok(ScoreTable {
            trial_set,
            system_names,
            matrix,
            extra_ignored: 0,
        })
    }

    pub fn trial_set(&self) -> &Arc<TrialSet> {
        &self.trial_set
    }

    pub fn system_names(&self) -> &[String] {
        &self.system_names
    }

    pub fn n_trials(&self) -> usize {
        self.trial_set.len()
    }

    pub fn n_systems(&self) -> usize {
        self.system_names.len()
    }

    /// Score entries not matching any trial that were dropped during
    /// alignment, summed over all systems.
    pub fn extra_ignored(&self) -> usize {
        self.extra_ignored
    }

    /// Row-major matrix data.
    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn row(&self, trial_index: usize) -> Result<&[f64], ScoreError> {
        let k = self.n_systems();
        if trial_index >= self.n_trials() {
            return Err(ScoreError::IndexOutOfRange(trial_index, self.n_trials()));
        }
        Ok(&self.matrix[trial_index * k..(trial_index + 1) * k])
    }

    /// The K-vector of trial `trial_index`, in declared system order.
    pub fn score_vector(&self, trial_index: usize) -> Result<Vec<f64>, ScoreError> {
        self.row(trial_index).map(|r| r.to_vec())
    }

    /// All scores of one system, in trial order.
    pub fn column(&self, system_index: usize) -> Vec<f64> {
        let k = self.n_systems();
        (0..self.n_trials())
            .map(|i| self.matrix[i * k + system_index])
            .collect()
    }
}

/// Align one score list per system against the trial set.
///
/// Cell `(i, j)` is system j's score for trial i. Every trial must be scored
/// by every system; extra entries are dropped and counted. The result is
/// independent of entry order within each list.
pub fn align(trial_set: Arc<TrialSet>, lists: &[ScoreList]) -> Result<ScoreTable, ScoreError> {
    let n = trial_set.len();
    let k = lists.len();
    let mut matrix = vec![0.0; n * k];
    let mut extra_ignored = 0usize;
    for (j, list) in lists.iter().enumerate() {
        let mut lookup: HashMap<(&str, &str), f64> = HashMap::with_capacity(list.len());
        for (e, t, s) in list.entries() {
            lookup.insert((e.as_str(), t.as_str()), *s);
        }
        let mut missing: Vec<(String, String)> = Vec::new();
        let mut total_missing = 0usize;
        let mut used = 0usize;
        for (i, trial) in trial_set.iter().enumerate() {
            match lookup.get(&trial.key()) {
                Some(&s) => {
                    matrix[i * k + j] = s;
                    used += 1;
                }
                None => {
                    total_missing += 1;
                    if missing.len() < 10 {
                        missing.push((trial.enroll_id.clone(), trial.test_id.clone()));
                    }
                }
            }
        }
        if total_missing > 0 {
            return Err(ScoreError::MissingScores {
                system: list.system_name().to_string(),
                missing,
                total: total_missing,
            });
        }
        extra_ignored += list.len() - used;
    }
    Ok(ScoreTable {
        trial_set,
        system_names: lists.iter().map(|l| l.system_name().to_string()).collect(),
        matrix,
        extra_ignored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trials::{parse_trials, TrialFormat};

    fn toy_set() -> Arc<TrialSet> {
        Arc::new(
            parse_trials("e1 t1 target\ne2 t2 nontarget\n", TrialFormat::Kaldi, "toy").unwrap(),
        )
    }

    #[test]
    fn parse_basic_line() {
        let list = parse_scores("e1 t1 -3.25\n", "sys").unwrap();
        assert_eq!(
            list.entries(),
            &[("e1".to_string(), "t1".to_string(), -3.25)]
        );
    }

    #[test]
    fn parse_scientific_notation() {
        let list = parse_scores("e1 t1 1.5e-3\n", "sys").unwrap();
        assert_eq!(list.entries()[0].2, 1.5e-3);
    }

    #[test]
    fn parse_rejects_nan_and_inf() {
        assert_eq!(
            parse_scores("e1 t1 nan\n", "sys").unwrap_err(),
            ScoreError::NonFiniteScore(1, "nan".to_string())
        );
        assert!(matches!(
            parse_scores("e1 t1 inf\n", "sys").unwrap_err(),
            ScoreError::NonFiniteScore(1, _)
        ));
    }

    #[test]
    fn parse_rejects_duplicate_key() {
        let text = "a b 1\nc d 2\na b 3\n";
        assert_eq!(
            parse_scores(text, "sys").unwrap_err(),
            ScoreError::DuplicateKey(3, "a".to_string(), "b".to_string())
        );
    }

    #[test]
    fn parse_rejects_malformed() {
        assert_eq!(
            parse_scores("a b\n", "sys").unwrap_err(),
            ScoreError::MalformedLine(1)
        );
        assert_eq!(
            parse_scores("a b notanumber\n", "sys").unwrap_err(),
            ScoreError::MalformedLine(1)
        );
    }

    #[test]
    fn align_two_complete_lists() {
        let set = toy_set();
        let a = parse_scores("e1 t1 1.0\ne2 t2 2.0\n", "a").unwrap();
        let b = parse_scores("e2 t2 4.0\ne1 t1 3.0\n", "b").unwrap();
        let table = align(set, &[a, b]).unwrap();
        assert_eq!(table.n_systems(), 2);
        assert_eq!(table.row(0).unwrap(), &[1.0, 3.0]);
        assert_eq!(table.row(1).unwrap(), &[2.0, 4.0]);
        assert_eq!(table.extra_ignored(), 0);
    }

    #[test]
    fn align_is_entry_order_invariant() {
        let set = toy_set();
        let fwd = parse_scores("e1 t1 1.0\ne2 t2 2.0\n", "a").unwrap();
        let rev = parse_scores("e2 t2 2.0\ne1 t1 1.0\n", "a").unwrap();
        let t1 = align(set.clone(), &[fwd]).unwrap();
        let t2 = align(set, &[rev]).unwrap();
        assert_eq!(t1.matrix(), t2.matrix());
    }

    #[test]
    fn align_missing_score_is_an_error() {
        let set = toy_set();
        let a = parse_scores("e1 t1 1.0\n", "sysA").unwrap();
        match align(set, &[a]).unwrap_err() {
            ScoreError::MissingScores {
                system,
                missing,
                total,
            } => {
                assert_eq!(system, "sysA");
                assert_eq!(total, 1);
                assert_eq!(missing, vec![("e2".to_string(), "t2".to_string())]);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn align_reports_extra_entries() {
        let set = toy_set();
        let a = parse_scores("e1 t1 1.0\ne2 t2 2.0\nzz zz 9.0\n", "a").unwrap();
        let table = align(set, &[a]).unwrap();
        assert_eq!(table.extra_ignored(), 1);
    }

    #[test]
    fn score_vector_bounds_and_width() {
        let set = toy_set();
        let a = parse_scores("e1 t1 1.0\ne2 t2 2.0\n", "a").unwrap();
        let table = align(set, &[a]).unwrap();
        assert_eq!(table.score_vector(0).unwrap(), vec![1.0]);
        assert_eq!(
            table.score_vector(2).unwrap_err(),
            ScoreError::IndexOutOfRange(2, 2)
        );
    }

    #[test]
    fn from_matrix_checks_shape_and_finiteness() {
        let set = toy_set();
        assert!(matches!(
            ScoreTable::from_matrix(set.clone(), vec!["a".into()], vec![1.0]).unwrap_err(),
            ScoreError::ShapeMismatch { .. }
        ));
        assert!(matches!(
            ScoreTable::from_matrix(set, vec!["a".into()], vec![1.0, f64::NAN]).unwrap_err(),
            ScoreError::NonFiniteCell(1, 0)
        ));
    }
}
