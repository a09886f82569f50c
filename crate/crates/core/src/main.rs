//! Command-line front end.
//!
//! Subcommands: `pair`, `eval`, `compare`, `simulate`, `mine`, `report`.
//! Long flags only; unknown flags are usage errors. Every run echoes its
//! resolved configuration (defaults and seed included) to stderr, results go
//! to stdout or to the requested files. Exit codes: 0 success, 1 usage
//! error, 2 data error, 3 convergence failure.

use std::collections::{HashMap, HashSet};
use std::fmt::Display;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use trialkit::metrics::{self, DcfParams, ScoredTrials};
use trialkit::miner::{self, MinerError};
use trialkit::scores::{self, ScoreList};
use trialkit::sim::{self, GaussianSpec, SimConfig, SimError, SimMode};
use trialkit::svm::{SvmError, SvmParams};
use trialkit::trials::{self, Label, PairingOptions, TrialFormat, TrialSet, UtteranceCatalog};

const USAGE: &str = "\
trialkit - trial-set engineering for verification benchmarks

usage: trialkit <command> --flag value ...

commands:
  pair      generate cross-paired trials from an utterance inventory
            --utt2spk FILE --out FILE [--format kaldi|voxceleb]
            [--symmetric-dedup]
  eval      EER/minDCF of one score file on a trial list
            --trials FILE --scores FILE [--p-target P] [--c-miss C]
            [--c-fa C]
  compare   two-system comparison: EERs, relative EER reduction, and the
            relative FAR change at a fixed threshold
            --trials FILE --scores-a FILE --scores-b FILE [--threshold T]
  simulate  easy-trial injection study, exported as CSV and optional SVG
            --mode neg|pos|both [--steps N] [--batch N] [--repeats N]
            [--seed N] --out-csv FILE [--out-plot FILE] [--per-repeat]
            [--pos-mean X --pos-std X --pos-count N]
            [--neg1-mean X --neg1-std X --neg1-count N]
            [--neg2-mean X --neg2-std X --neg2-count N]
            [--easy-neg-mean X --easy-neg-std X]
            [--easy-pos-mean X --easy-pos-std X]
  mine      SVM-based hard-trial mining from K score files
            --trials FILE --scores FILE [--scores FILE ...]
            --out-hard FILE --out-stats FILE [--c C] [--tol T]
            [--max-passes N] [--max-iterations N] [--alpha-eps E]
            [--standardize] [--seed N]
  report    side-by-side EER/minDCF on full vs hard trials per system
            --trials FILE --hard FILE --scores FILE [--scores FILE ...]
  help      print this text

exit codes: 0 success, 1 usage error, 2 data error, 3 convergence failure
";

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn convergence(message: impl Into<String>) -> CliError {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(args: &[String]) -> CliResult<()> {
    let Some(command) = args.first() else {
        return Err(CliError::usage(format!("missing command\n\n{USAGE}")));
    };
    match command.as_str() {
        "pair" => cmd_pair(&args[1..]),
        "eval" => cmd_eval(&args[1..]),
        "compare" => cmd_compare(&args[1..]),
        "simulate" => cmd_simulate(&args[1..]),
        "mine" => cmd_mine(&args[1..]),
        "report" => cmd_report(&args[1..]),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(())
        }
        other => Err(CliError::usage(format!(
            "unknown command `{other}`\n\n{USAGE}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// flag parsing

#[derive(Debug)]
struct Flags {
    single: HashMap<String, String>,
    multi: HashMap<String, Vec<String>>,
    bools: HashSet<String>,
}

fn parse_flags(
    args: &[String],
    value_flags: &[&str],
    multi_flags: &[&str],
    bool_flags: &[&str],
) -> CliResult<Flags> {
    let mut flags = Flags {
        single: HashMap::new(),
        multi: HashMap::new(),
        bools: HashSet::new(),
    };
    let mut iter = args.iter().peekable();
    while let Some(token) = iter.next() {
        let Some(raw) = token.strip_prefix("--") else {
            return Err(CliError::usage(format!(
                "unexpected positional argument `{token}`"
            )));
        };
        let (name, inline_value) = match raw.split_once('=') {
            Some((n, v)) => (n, Some(v.to_string())),
            None => (raw, None),
        };
        if bool_flags.contains(&name) {
            if inline_value.is_some() {
                return Err(CliError::usage(format!("flag --{name} takes no value")));
            }
            flags.bools.insert(name.to_string());
        } else if multi_flags.contains(&name) {
            let value = take_value(name, inline_value, &mut iter)?;
            flags.multi.entry(name.to_string()).or_default().push(value);
        } else if value_flags.contains(&name) {
            let value = take_value(name, inline_value, &mut iter)?;
            if flags.single.insert(name.to_string(), value).is_some() {
                return Err(CliError::usage(format!("flag --{name} given twice")));
            }
        } else {
            return Err(CliError::usage(format!("unknown flag --{name}")));
        }
    }
    Ok(flags)
}

fn take_value(
    name: &str,
    inline: Option<String>,
    iter: &mut std::iter::Peekable<std::slice::Iter<'_, String>>,
) -> CliResult<String> {
    if let Some(v) = inline {
        return Ok(v);
    }
    match iter.next() {
        Some(v) => Ok(v.clone()),
        None => Err(CliError::usage(format!("flag --{name} needs a value"))),
    }
}

impl Flags {
    fn require(&self, name: &str) -> CliResult<&str> {
        self.single
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| CliError::usage(format!("missing required flag --{name}")))
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.single.get(name).map(String::as_str)
    }

    fn get_all(&self, name: &str) -> &[String] {
        self.multi.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    fn has(&self, name: &str) -> bool {
        self.bools.contains(name)
    }

    fn parsed<T>(&self, name: &str, default: T) -> CliResult<T>
    where
        T: std::str::FromStr,
    {
        match self.single.get(name) {
            None => Ok(default),
            Some(raw) => raw
                .parse()
                .map_err(|_| CliError::usage(format!("bad value `{raw}` for --{name}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// shared helpers

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::data(format!("cannot read {path}: {e}")))
}

fn write_file(path: &str, content: &str) -> CliResult<()> {
    std::fs::write(path, content).map_err(|e| CliError::data(format!("cannot write {path}: {e}")))
}

fn file_stem(path: &str) -> String {
    Path::new(path)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string())
}

fn data_err(e: impl Display) -> CliError {
    CliError::data(e.to_string())
}

fn echo_config(command: &str, pairs: &[(&str, String)]) {
    let joined = pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    eprintln!("config: command={command} {joined}");
}

fn load_trials(path: &str) -> CliResult<TrialSet> {
    let text = read_file(path)?;
    trials::parse_trials(&text, TrialFormat::Auto, file_stem(path))
        .map_err(|e| CliError::data(format!("{path}: {e}")))
}

fn load_scores(path: &str) -> CliResult<ScoreList> {
    let text = read_file(path)?;
    scores::parse_scores(&text, file_stem(path)).map_err(|e| CliError::data(format!("{path}: {e}")))
}

fn scored_column(table: &scores::ScoreTable, column: usize) -> ScoredTrials {
    let labels: Vec<Label> = table.trial_set().iter().map(|t| t.label).collect();
    ScoredTrials::new(table.column(column), labels).expect("aligned lengths")
}

fn dcf_params(flags: &Flags) -> CliResult<DcfParams> {
    Ok(DcfParams {
        p_target: flags.parsed("p-target", 0.01)?,
        c_miss: flags.parsed("c-miss", 1.0)?,
        c_fa: flags.parsed("c-fa", 1.0)?,
    })
}

// ---------------------------------------------------------------------------
// pair

fn cmd_pair(args: &[String]) -> CliResult<()> {
    let flags = parse_flags(
        args,
        &["utt2spk", "out", "format"],
        &[],
        &["symmetric-dedup"],
    )?;
    let utt2spk = flags.require("utt2spk")?;
    let out = flags.require("out")?;
    let format = match flags.get("format").unwrap_or("kaldi") {
        "kaldi" => TrialFormat::Kaldi,
        "voxceleb" => TrialFormat::VoxCeleb,
        other => {
            return Err(CliError::usage(format!(
                "bad value `{other}` for --format (kaldi|voxceleb)"
            )))
        }
    };
    let symmetric_dedup = flags.has("symmetric-dedup");
    echo_config(
        "pair",
        &[
            ("utt2spk", utt2spk.to_string()),
            ("out", out.to_string()),
            ("format", flags.get("format").unwrap_or("kaldi").to_string()),
            ("symmetric_dedup", symmetric_dedup.to_string()),
        ],
    );

    let text = read_file(utt2spk)?;
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split(&[' ', '\t']).filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 2 {
            return Err(CliError::data(format!(
                "{utt2spk}:{}: expected `<utterance> <speaker>`",
                idx + 1
            )));
        }
        entries.push((fields[1].to_string(), fields[0].to_string()));
    }
    let catalog = UtteranceCatalog::new(entries).map_err(data_err)?;
    let opts = PairingOptions {
        symmetric_dedup,
        ..Default::default()
    };
    let set = trials::cross_pair(&catalog, opts).map_err(data_err)?;
    write_file(out, &trials::write_trials(&set, format))?;
    println!(
        "target={} nontarget={}",
        set.target_count(),
        set.nontarget_count()
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// eval

fn cmd_eval(args: &[String]) -> CliResult<()> {
    let flags = parse_flags(
        args,
        &["trials", "scores", "p-target", "c-miss", "c-fa"],
        &[],
        &[],
    )?;
    let trials_path = flags.require("trials")?;
    let scores_path = flags.require("scores")?;
    let params = dcf_params(&flags)?;
    echo_config(
        "eval",
        &[
            ("trials", trials_path.to_string()),
            ("scores", scores_path.to_string()),
            ("p_target", params.p_target.to_string()),
            ("c_miss", params.c_miss.to_string()),
            ("c_fa", params.c_fa.to_string()),
        ],
    );
    let set = Arc::new(load_trials(trials_path)?);
    let list = load_scores(scores_path)?;
    let table = scores::align(set, &[list]).map_err(data_err)?;
    let data = scored_column(&table, 0);
    let report = metrics::evaluate(&data, &params).map_err(data_err)?;
    println!(
        "EER(%) {} minDCF(p-target={}) {}",
        metrics::format_eer_percent(report.eer),
        params.p_target,
        metrics::format_min_dcf(report.min_dcf)
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// compare

fn cmd_compare(args: &[String]) -> CliResult<()> {
    let flags = parse_flags(
        args,
        &["trials", "scores-a", "scores-b", "threshold"],
        &[],
        &[],
    )?;
    let trials_path = flags.require("trials")?;
    let path_a = flags.require("scores-a")?;
    let path_b = flags.require("scores-b")?;
    let threshold: Option<f64> = match flags.get("threshold") {
        None => None,
        Some(raw) => Some(
            raw.parse()
                .map_err(|_| CliError::usage(format!("bad value `{raw}` for --threshold")))?,
        ),
    };
    echo_config(
        "compare",
        &[
            ("trials", trials_path.to_string()),
            ("scores_a", path_a.to_string()),
            ("scores_b", path_b.to_string()),
            (
                "threshold",
                threshold.map_or("none".to_string(), |t| t.to_string()),
            ),
        ],
    );
    let set = Arc::new(load_trials(trials_path)?);
    let list_a = load_scores(path_a)?;
    let list_b = load_scores(path_b)?;
    let table = scores::align(set, &[list_a, list_b]).map_err(data_err)?;
    let data_a = scored_column(&table, 0);
    let data_b = scored_column(&table, 1);
    let (eer_a, _) = metrics::eer(&data_a).map_err(data_err)?;
    let (eer_b, _) = metrics::eer(&data_b).map_err(data_err)?;
    let reduction = metrics::relative_eer_reduction(&data_a, &data_b).map_err(data_err)?;
    println!("EER_A(%) {}", metrics::format_eer_percent(eer_a));
    println!("EER_B(%) {}", metrics::format_eer_percent(eer_b));
    println!("relative_eer_reduction {reduction:.3}");
    if let Some(t) = threshold {
        let nontarget_rows: Vec<usize> = table
            .trial_set()
            .iter()
            .enumerate()
            .filter(|(_, trial)| trial.label == Label::Nontarget)
            .map(|(i, _)| i)
            .collect();
        let neg_a: Vec<f64> = nontarget_rows.iter().map(|&i| data_a.scores()[i]).collect();
        let neg_b: Vec<f64> = nontarget_rows.iter().map(|&i| data_b.scores()[i]).collect();
        let rfar = metrics::relative_far_change(&neg_a, &neg_b, t).map_err(data_err)?;
        let op_a = metrics::far_frr_at(&data_a, t).map_err(data_err)?;
        let op_b = metrics::far_frr_at(&data_b, t).map_err(data_err)?;
        println!("rFAR {rfar:.3}");
        println!("FAR_A {:.3} FRR_A {:.3}", op_a.far, op_a.frr);
        println!("FAR_B {:.3} FRR_B {:.3}", op_b.far, op_b.frr);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// simulate

fn cmd_simulate(args: &[String]) -> CliResult<()> {
    let flags = parse_flags(
        args,
        &[
            "mode",
            "steps",
            "batch",
            "repeats",
            "seed",
            "out-csv",
            "out-plot",
            "pos-mean",
            "pos-std",
            "pos-count",
            "neg1-mean",
            "neg1-std",
            "neg1-count",
            "neg2-mean",
            "neg2-std",
            "neg2-count",
            "easy-neg-mean",
            "easy-neg-std",
            "easy-pos-mean",
            "easy-pos-std",
        ],
        &[],
        &["per-repeat"],
    )?;
    let mode = match flags.require("mode")? {
        "neg" => SimMode::NegOnly,
        "pos" => SimMode::PosOnly,
        "both" => SimMode::Both,
        other => {
            return Err(CliError::usage(format!(
                "bad value `{other}` for --mode (neg|pos|both)"
            )))
        }
    };
    let out_csv = flags.require("out-csv")?;
    let defaults = SimConfig::default();
    let cfg = SimConfig {
        pos: GaussianSpec::new(
            flags.parsed("pos-mean", defaults.pos.mean)?,
            flags.parsed("pos-std", defaults.pos.std)?,
            flags.parsed("pos-count", defaults.pos.count)?,
        ),
        neg_sys1: GaussianSpec::new(
            flags.parsed("neg1-mean", defaults.neg_sys1.mean)?,
            flags.parsed("neg1-std", defaults.neg_sys1.std)?,
            flags.parsed("neg1-count", defaults.neg_sys1.count)?,
        ),
        neg_sys2: GaussianSpec::new(
            flags.parsed("neg2-mean", defaults.neg_sys2.mean)?,
            flags.parsed("neg2-std", defaults.neg_sys2.std)?,
            flags.parsed("neg2-count", defaults.neg_sys2.count)?,
        ),
        easy_neg: GaussianSpec::new(
            flags.parsed("easy-neg-mean", defaults.easy_neg.mean)?,
            flags.parsed("easy-neg-std", defaults.easy_neg.std)?,
            0,
        ),
        easy_pos: GaussianSpec::new(
            flags.parsed("easy-pos-mean", defaults.easy_pos.mean)?,
            flags.parsed("easy-pos-std", defaults.easy_pos.std)?,
            0,
        ),
        batch_size: flags.parsed("batch", defaults.batch_size)?,
        steps: flags.parsed("steps", defaults.steps)?,
        repeats: flags.parsed("repeats", defaults.repeats)?,
        mode,
        seed: flags.parsed("seed", 42u64)?,
    };
    let per_repeat = flags.has("per-repeat");
    echo_config(
        "simulate",
        &[
            ("mode", cfg.mode.to_string()),
            ("steps", cfg.steps.to_string()),
            ("batch", cfg.batch_size.to_string()),
            ("repeats", cfg.repeats.to_string()),
            ("seed", cfg.seed.to_string()),
            ("pos", gaussian_echo(&cfg.pos)),
            ("neg_sys1", gaussian_echo(&cfg.neg_sys1)),
            ("neg_sys2", gaussian_echo(&cfg.neg_sys2)),
            (
                "easy_neg",
                format!("N({},{})", cfg.easy_neg.mean, cfg.easy_neg.std),
            ),
            (
                "easy_pos",
                format!("N({},{})", cfg.easy_pos.mean, cfg.easy_pos.std),
            ),
            ("per_repeat", per_repeat.to_string()),
            ("out_csv", out_csv.to_string()),
            (
                "out_plot",
                flags.get("out-plot").unwrap_or("none").to_string(),
            ),
        ],
    );
    let result = sim::run_simulation(&cfg).map_err(|e| match e {
        SimError::InvalidConfig(_) | SimError::TooFewSteps => CliError::usage(e.to_string()),
    })?;
    write_file(out_csv, &sim::export_sim_csv(&result, per_repeat))?;
    if let Some(plot_path) = flags.get("out-plot") {
        let svg = sim::export_sim_plot(&result).map_err(|e| CliError::usage(e.to_string()))?;
        write_file(plot_path, &svg)?;
    }
    Ok(())
}

fn gaussian_echo(spec: &GaussianSpec) -> String {
    format!("N({},{})x{}", spec.mean, spec.std, spec.count)
}

// ---------------------------------------------------------------------------
// mine

fn cmd_mine(args: &[String]) -> CliResult<()> {
    let flags = parse_flags(
        args,
        &[
            "trials",
            "out-hard",
            "out-stats",
            "c",
            "tol",
            "max-passes",
            "max-iterations",
            "alpha-eps",
            "seed",
        ],
        &["scores"],
        &["standardize"],
    )?;
    let trials_path = flags.require("trials")?;
    let out_hard = flags.require("out-hard")?;
    let out_stats = flags.require("out-stats")?;
    let score_paths = flags.get_all("scores");
    if score_paths.is_empty() {
        return Err(CliError::usage("at least one --scores file is required"));
    }
    let c = flags.parsed("c", 1.0)?;
    let params = SvmParams {
        c,
        tol: flags.parsed("tol", 1e-3)?,
        max_passes_without_change: flags.parsed("max-passes", 10)?,
        max_iterations: flags.parsed("max-iterations", 10_000_000)?,
        alpha_eps: flags.parsed("alpha-eps", 1e-8 * c)?,
        standardize: flags.has("standardize"),
        seed: flags.parsed("seed", 42u64)?,
    };
    echo_config(
        "mine",
        &[
            ("trials", trials_path.to_string()),
            ("scores", score_paths.join(",")),
            ("dimension", score_paths.len().to_string()),
            ("out_hard", out_hard.to_string()),
            ("out_stats", out_stats.to_string()),
            ("c", params.c.to_string()),
            ("tol", params.tol.to_string()),
            ("max_passes", params.max_passes_without_change.to_string()),
            ("max_iterations", params.max_iterations.to_string()),
            ("alpha_eps", params.alpha_eps.to_string()),
            ("standardize", params.standardize.to_string()),
            ("seed", params.seed.to_string()),
        ],
    );
    let set = Arc::new(load_trials(trials_path)?);
    let lists = score_paths
        .iter()
        .map(|p| load_scores(p))
        .collect::<CliResult<Vec<_>>>()?;
    let table = scores::align(set, &lists).map_err(data_err)?;
    if table.extra_ignored() > 0 {
        eprintln!(
            "note: ignored {} score entries not present in the trial set",
            table.extra_ignored()
        );
    }
    let (hard, report) = miner::mine_hard_trials(&table, &params).map_err(|e| match e {
        MinerError::Svm(SvmError::DidNotConverge(v)) => {
            CliError::convergence(SvmError::DidNotConverge(v).to_string())
        }
        other => data_err(other),
    })?;
    write_file(out_hard, &trials::write_trials(&hard, TrialFormat::Kaldi))?;
    write_file(out_stats, &miner::mining_stats_csv(&report))?;
    let conv = &report.model.convergence;
    println!(
        "converged={} capped={} iterations={} passes={} max_kkt_violation={:.3e}",
        conv.converged, conv.capped, conv.iterations, conv.passes, conv.max_kkt_violation
    );
    println!(
        "full_target={} full_nontarget={} hard_target={} hard_nontarget={} fraction={:.3}",
        report.n_target_full,
        report.n_nontarget_full,
        report.n_target_hard,
        report.n_nontarget_hard,
        report.hard_fraction
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// report

fn cmd_report(args: &[String]) -> CliResult<()> {
    let flags = parse_flags(args, &["trials", "hard"], &["scores"], &[])?;
    let trials_path = flags.require("trials")?;
    let hard_path = flags.require("hard")?;
    let score_paths = flags.get_all("scores");
    if score_paths.is_empty() {
        return Err(CliError::usage("at least one --scores file is required"));
    }
    echo_config(
        "report",
        &[
            ("trials", trials_path.to_string()),
            ("hard", hard_path.to_string()),
            ("scores", score_paths.join(",")),
        ],
    );
    let full = Arc::new(load_trials(trials_path)?);
    let hard = load_trials(hard_path)?;
    let mut index: HashMap<(&str, &str), (usize, Label)> = HashMap::with_capacity(full.len());
    for (i, trial) in full.iter().enumerate() {
        index.insert(trial.key(), (i, trial.label));
    }
    let mut hard_rows = Vec::with_capacity(hard.len());
    for trial in hard.iter() {
        match index.get(&trial.key()) {
            Some(&(row, label)) if label == trial.label => hard_rows.push(row),
            Some(_) => {
                return Err(CliError::data(format!(
                    "hard trial ({}, {}) disagrees with the trial set on its label",
                    trial.enroll_id, trial.test_id
                )))
            }
            None => {
                return Err(CliError::data(format!(
                    "hard trial ({}, {}) is not in the trial set",
                    trial.enroll_id, trial.test_id
                )))
            }
        }
    }
    let params = DcfParams::default();
    println!(
        "{:<20} {:>12} {:>12} {:>10} {:>12} {:>12} {:>10}",
        "system", "eer_full(%)", "eer_hard(%)", "delta(pp)", "mindcf_full", "mindcf_hard", "delta"
    );
    for path in score_paths {
        let list = load_scores(path)?;
        let system = list.system_name().to_string();
        let table = scores::align(full.clone(), &[list]).map_err(data_err)?;
        let full_data = scored_column(&table, 0);
        let full_report = metrics::evaluate(&full_data, &params).map_err(data_err)?;
        let column = table.column(0);
        let hard_scores: Vec<f64> = hard_rows.iter().map(|&i| column[i]).collect();
        let hard_labels: Vec<Label> = hard_rows.iter().map(|&i| full.trials()[i].label).collect();
        let hard_data = ScoredTrials::new(hard_scores, hard_labels).expect("parallel");
        let hard_report = metrics::evaluate(&hard_data, &params).map_err(data_err)?;
        println!(
            "{:<20} {:>12} {:>12} {:>10.3} {:>12} {:>12} {:>10.4}",
            system,
            metrics::format_eer_percent(full_report.eer),
            metrics::format_eer_percent(hard_report.eer),
            (hard_report.eer - full_report.eer) * 100.0,
            metrics::format_min_dcf(full_report.min_dcf),
            metrics::format_min_dcf(hard_report.min_dcf),
            hard_report.min_dcf - full_report.min_dcf,
        );
    }
    Ok(())
}
