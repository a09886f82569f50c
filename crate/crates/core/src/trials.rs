//! Verification trials: the data model, cross-pairing generation, and the
//! standard trial-list text formats.
//!
//! A trial is an ordered `(enroll, test)` utterance pair labelled `Target`
//! (same speaker) or `Nontarget` (different speakers). Cross-pairing a
//! catalog of N speakers with K utterances each yields `N*K*(K-1)` target
//! and `N*(N-1)*K^2` nontarget trials when pairs are ordered, which is the
//! convention used throughout. Ids are opaque tokens: no path normalization,
//! no case folding, so they match score files byte-for-byte.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Errors for trial-set construction and parsing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrialError {
    #[error("catalog is empty")]
    EmptyCatalog,
    #[error("duplicate utterance id `{0}` in catalog")]
    DuplicateUtteranceId(String),
    #[error("line {0}: malformed line (expected {1})")]
    MalformedLine(usize, &'static str),
    #[error("line {0}: unknown label `{1}`")]
    UnknownLabel(usize, String),
    #[error("line {0}: duplicate trial ({1}, {2})")]
    DuplicateTrial(usize, String, String),
    #[error("duplicate trial ({0}, {1})")]
    DuplicatePair(String, String),
    #[error("invalid id `{0}`: ids must be non-empty and contain no whitespace")]
    InvalidId(String),
    #[error("trial index {0} out of range for set of {1} trials")]
    IndexOutOfRange(usize, usize),
}

/// Trial label: `Target` = same speaker (positive), `Nontarget` = different
/// speakers (negative).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Target,
    Nontarget,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Target => write!(f, "target"),
            Label::Nontarget => write!(f, "nontarget"),
        }
    }
}

/// One verification trial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trial {
    pub enroll_id: String,
    pub test_id: String,
    pub label: Label,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(|c| c.is_whitespace())
}

impl Trial {
    /// Build a trial, validating that both ids are non-empty whitespace-free
    /// tokens.
    pub fn new(
        enroll_id: impl Into<String>,
        test_id: impl Into<String>,
        label: Label,
    ) -> Result<Trial, TrialError> {
        let enroll_id = enroll_id.into();
        let test_id = test_id.into();
        if !valid_id(&enroll_id) {
            return Err(TrialError::InvalidId(enroll_id));
        }
        if !valid_id(&test_id) {
            return Err(TrialError::InvalidId(test_id));
        }
        Ok(Trial {
            enroll_id,
            test_id,
            label,
        })
    }

    /// The trial identity used for uniqueness checks.
    pub fn key(&self) -> (&str, &str) {
        (&self.enroll_id, &self.test_id)
    }
}

/// An ordered, duplicate-free sequence of trials: the evaluation protocol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialSet {
    name: String,
    trials: Vec<Trial>,
}

impl TrialSet {
    /// Build a set, rejecting duplicate `(enroll, test)` pairs.
    pub fn new(name: impl Into<String>, trials: Vec<Trial>) -> Result<TrialSet, TrialError> {
        if let Some((e, t)) = first_duplicate_key(&trials) {
            return Err(TrialError::DuplicatePair(e.to_string(), t.to_string()));
        }
        Ok(TrialSet {
            name: name.into(),
            trials,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn trials(&self) -> &[Trial] {
        &self.trials
    }

    pub fn len(&self) -> usize {
        self.trials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trials.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Trial> {
        self.trials.iter()
    }

    pub fn target_count(&self) -> usize {
        self.trials
            .iter()
            .filter(|t| t.label == Label::Target)
            .count()
    }

    pub fn nontarget_count(&self) -> usize {
        self.trials.len() - self.target_count()
    }

    /// The trials selected by `keep`, in original order. `keep` may arrive in
    /// any order and with repeats; each kept trial appears exactly once. The
    /// set name is preserved.
    pub fn subset(&self, keep: &[usize]) -> Result<TrialSet, TrialError> {
        let mut sorted: Vec<usize> = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&i| i >= self.trials.len()) {
            return Err(TrialError::IndexOutOfRange(bad, self.trials.len()));
        }
        let trials = sorted.iter().map(|&i| self.trials[i].clone()).collect();
        Ok(TrialSet {
            name: self.name.clone(),
            trials,
        })
    }
}

/// Detects duplicate keys without cloning, by sorting an index permutation.
fn first_duplicate_key(trials: &[Trial]) -> Option<(&str, &str)> {
    let mut order: Vec<usize> = (0..trials.len()).collect();
    order.sort_unstable_by_key(|&i| trials[i].key());
    order
        .windows(2)
        .find(|w| trials[w[0]].key() == trials[w[1]].key())
        .map(|w| trials[w[0]].key())
}

/// A test-set inventory: `(speaker_id, utterance_id)` entries with unique
/// utterance ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtteranceCatalog {
    entries: Vec<(String, String)>,
}

impl UtteranceCatalog {
    pub fn new(entries: Vec<(String, String)>) -> Result<UtteranceCatalog, TrialError> {
        let mut seen = HashSet::new();
        for (speaker, utterance) in &entries {
            if !valid_id(speaker) {
                return Err(TrialError::InvalidId(speaker.clone()));
            }
            if !valid_id(utterance) {
                return Err(TrialError::InvalidId(utterance.clone()));
            }
            if !seen.insert(utterance.as_str().to_string()) {
                return Err(TrialError::DuplicateUtteranceId(utterance.clone()));
            }
        }
        Ok(UtteranceCatalog { entries })
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Options for [`cross_pair`]. Defaults: ordered pairs, no self-pairs, no
/// symmetric deduplication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairingOptions {
    /// Emit `(u, u)` pairs as target trials.
    pub include_self_pairs: bool,
    /// Emit each unordered pair once instead of both orientations.
    pub symmetric_dedup: bool,
}

/// Generate all cross-paired trials over the catalog.
///
/// With defaults, a balanced catalog of N speakers with K utterances each
/// produces exactly `N*K*(K-1)` target and `N*(N-1)*K^2` nontarget trials.
/// `symmetric_dedup` halves both counts by keeping one orientation per pair.
pub fn cross_pair(
    catalog: &UtteranceCatalog,
    opts: PairingOptions,
) -> Result<TrialSet, TrialError> {
    if catalog.is_empty() {
        return Err(TrialError::EmptyCatalog);
    }
    let entries = catalog.entries();
    let mut trials = Vec::new();
    for (i, (spk_i, utt_i)) in entries.iter().enumerate() {
        for (j, (spk_j, utt_j)) in entries.iter().enumerate() {
            if i == j && !opts.include_self_pairs {
                continue;
            }
            if opts.symmetric_dedup && j < i {
                continue;
            }
            let label = if spk_i == spk_j {
                Label::Target
            } else {
                Label::Nontarget
            };
            trials.push(Trial {
                enroll_id: utt_i.clone(),
                test_id: utt_j.clone(),
                label,
            });
        }
    }
    // Utterance ids are unique, so ordered pairs are unique by construction.
    Ok(TrialSet {
        name: "crosspair".to_string(),
        trials,
    })
}

/// Trial-list text formats.
///
/// `Kaldi`: `<enroll> <test> <target|nontarget>`.
/// `VoxCeleb`: `<1|0> <enroll> <test>` with 1 = target.
/// `Auto` detects per file from the first non-empty line (a leading `0` or
/// `1` token means VoxCeleb).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialFormat {
    Kaldi,
    VoxCeleb,
    Auto,
}

/// Parse a trial list. Lines are split on ASCII spaces/tabs; empty lines are
/// skipped; file order is preserved.
pub fn parse_trials(
    input: &str,
    format: TrialFormat,
    name: impl Into<String>,
) -> Result<TrialSet, TrialError> {
    let resolved = match format {
        TrialFormat::Auto => detect_format(input),
        f => f,
    };
    let mut trials = Vec::new();
    let mut seen: HashSet<(String, String)> = HashSet::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(&[' ', '\t']).filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 3 {
            return Err(TrialError::MalformedLine(line_no, "3 fields"));
        }
        let (enroll, test, label) = match resolved {
            TrialFormat::Kaldi => {
                let label = match fields[2] {
                    "target" => Label::Target,
                    "nontarget" => Label::Nontarget,
                    other => return Err(TrialError::UnknownLabel(line_no, other.to_string())),
                };
                (fields[0], fields[1], label)
            }
            TrialFormat::VoxCeleb => {
                let label = match fields[0] {
                    "1" => Label::Target,
                    "0" => Label::Nontarget,
                    other => return Err(TrialError::UnknownLabel(line_no, other.to_string())),
                };
                (fields[1], fields[2], label)
            }
            TrialFormat::Auto => unreachable!("auto resolved above"),
        };
        if !seen.insert((enroll.to_string(), test.to_string())) {
            return Err(TrialError::DuplicateTrial(
                line_no,
                enroll.to_string(),
                test.to_string(),
            ));
        }
        trials.push(Trial {
            enroll_id: enroll.to_string(),
            test_id: test.to_string(),
            label,
        });
    }
    Ok(TrialSet {
        name: name.into(),
        trials,
    })
}

fn detect_format(input: &str) -> TrialFormat {
    for line in input.lines() {
        let mut fields = line.split(&[' ', '\t']).filter(|f| !f.is_empty());
        match fields.next() {
            None => continue,
            Some("0") | Some("1") => return TrialFormat::VoxCeleb,
            Some(_) => return TrialFormat::Kaldi,
        }
    }
    TrialFormat::Kaldi
}

/// Serialize a trial list. Round-trips exactly through [`parse_trials`] for
/// both concrete formats.
pub fn write_trials(set: &TrialSet, format: TrialFormat) -> String {
    let mut out = String::new();
    for trial in set.iter() {
        match format {
            TrialFormat::Kaldi | TrialFormat::Auto => {
                out.push_str(&trial.enroll_id);
                out.push(' ');
                out.push_str(&trial.test_id);
                out.push(' ');
                out.push_str(&trial.label.to_string());
            }
            TrialFormat::VoxCeleb => {
                out.push(match trial.label {
                    Label::Target => '1',
                    Label::Nontarget => '0',
                });
                out.push(' ');
                out.push_str(&trial.enroll_id);
                out.push(' ');
                out.push_str(&trial.test_id);
            }
        }
        out.push('\n');
    }
    out
}
