//! Thin CLI over the choicegate library. Subcommands map one-to-one onto
//! library operations; all heavy lifting lives in the library. Exit codes:
//! 0 success, 2 validation error, 3 mechanism error, 4 I/O error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use choicegate::audit::{run_audit, AuditConfig, Axiom, Strategy};
use choicegate::epistemic::{
    aggregate_labels, estimate_reliabilities, mle_labels, AggregationMode, AnnotationSet,
};
use choicegate::error::{Error, Result};
use choicegate::harness::mocks::{make_mock, MockSpec};
use choicegate::harness::report::{canonical_json, text_summary, ReportFormat};
use choicegate::harness::scenario::{run_scenario, ScenarioConfig};
use choicegate::harness::suite::load_suite;
use choicegate::portioning::{equal_split_portion, mean_portion, portion_with_exclusion};
use choicegate::prefs::PreferenceProfile;
use choicegate::temporal::{
    group_proportionality_audit, individual_neglect_audit, run_credit_sequence, DecisionLog,
    GroupSpec,
};
use choicegate::voting::{
    approval_committee, median_select, single_winner, veto_core, CommitteeRule, SingleWinnerRule,
};

#[derive(Parser)]
#[command(name = "choicegate", version, about = "Collective-decision mechanisms and axiom audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Audit a mock decision system against social-choice axioms
    Audit {
        /// Suite JSON file
        #[arg(long)]
        suite: PathBuf,
        /// Mock kind: dictatorial|ignoring|utilitarian|weighted-utilitarian|random
        #[arg(long)]
        mock: String,
        /// Roster position of the dictator (dictatorial mock)
        #[arg(long, default_value_t = 0)]
        dictator_position: usize,
        /// Comma-separated axiom list; defaults to all
        #[arg(long)]
        axioms: Option<String>,
        /// Dominance strategy: sample-alternatives|no-input-baseline
        #[arg(long, default_value = "sample-alternatives")]
        strategy: String,
        /// Alternative samples per instance for dominance axioms
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Permutations per instance for anonymity
        #[arg(long, default_value_t = 8)]
        permutations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format: json|text-summary
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Elections over preference profiles
    #[command(subcommand)]
    Vote(VoteCommand),
    /// Divide a budget across a type system
    #[command(subcommand)]
    Portion(PortionCommand),
    /// Aggregate annotator labels and estimate reliabilities
    #[command(subcommand)]
    Labels(LabelsCommand),
    /// Sequential decisions with carried credit and fairness audits
    #[command(subcommand)]
    Temporal(TemporalCommand),
    /// Run a multi-stage scenario config
    Scenario {
        /// Scenario JSON config
        #[arg(long)]
        config: PathBuf,
        /// Directory for stage reports and the manifest
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum VoteCommand {
    /// Single winner from strict rankings
    Single {
        #[arg(long)]
        profile: PathBuf,
        /// plurality|borda|condorcet
        #[arg(long)]
        rule: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Committee of size k from approval ballots
    Committee {
        #[arg(long)]
        profile: PathBuf,
        /// av|seq-pav|pav-exact
        #[arg(long)]
        rule: String,
        #[arg(long)]
        k: usize,
        /// Comma-separated candidate pool; defaults to union of approvals
        #[arg(long)]
        candidates: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted lower median of numeric reports
    Median {
        #[arg(long)]
        metric_id: String,
        /// Comma-separated numeric reports
        #[arg(long)]
        reports: String,
        /// Comma-separated weights; defaults to unit weights
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Proportional veto core from strict rankings
    VetoCore {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PortionCommand {
    /// Weighted mean of normalized cardinal ballots
    Mean {
        #[arg(long)]
        profile: PathBuf,
        /// Comma-separated type ids
        #[arg(long)]
        types: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equal split of each stakeholder's mass over approved types
    EqualSplit {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        types: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean portion after veto-based exclusion
    Filtered {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        types: String,
        /// Profile of veto ballots
        #[arg(long)]
        veto_profile: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LabelsCommand {
    /// Aggregate reports into hard or soft labels
    Aggregate {
        /// CSV with header item,annotator,label
        #[arg(long)]
        csv: PathBuf,
        /// plurality|weighted|soft
        #[arg(long, default_value = "plurality")]
        mode: String,
        /// JSON file mapping annotator id to weight
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// EM reliability estimation plus maximum-likelihood labels
    Estimate {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 100)]
        max_iterations: usize,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TemporalCommand {
    /// Run the credit rule over a round sequence
    Run {
        /// Comma-separated stakeholder roster
        #[arg(long)]
        roster: String,
        /// JSON file with an array of round instances
        #[arg(long)]
        rounds: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check group satisfaction rates against proportional shares
    AuditGroup {
        /// Decision log JSON
        #[arg(long)]
        log: PathBuf,
        /// JSON file with an array of group specs
        #[arg(long)]
        groups: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        slack: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Flag sustained neglect runs per stakeholder
    AuditIndividual {
        #[arg(long)]
        log: PathBuf,
        #[arg(long)]
        window: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    let deserializer = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(deserializer).map_err(|e| {
        Error::validation(format!(
            "{}: schema error at {}: {}",
            path.display(),
            e.path(),
            e.inner()
        ))
    })
}

fn write_output<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let rendered = canonical_json(value)?;
    match out {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn parse_list(csv: &str) -> Vec<String> {
    csv.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn parse_floats(csv: &str) -> Result<Vec<f64>> {
    parse_list(csv)
        .iter()
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::validation(format!("not a number: {s}")))
        })
        .collect()
}

fn parse_single_rule(name: &str) -> Result<SingleWinnerRule> {
    match name {
        "plurality" => Ok(SingleWinnerRule::Plurality),
        "borda" => Ok(SingleWinnerRule::Borda),
        "condorcet" => Ok(SingleWinnerRule::Condorcet),
        other => Err(Error::validation(format!("unknown single-winner rule: {other}"))),
    }
}

fn parse_committee_rule(name: &str) -> Result<CommitteeRule> {
    match name {
        "av" => Ok(CommitteeRule::Av),
        "seq-pav" => Ok(CommitteeRule::SeqPav),
        "pav-exact" => Ok(CommitteeRule::PavExact),
        other => Err(Error::validation(format!("unknown committee rule: {other}"))),
    }
}

fn parse_strategy(name: &str) -> Result<Strategy> {
    match name {
        "sample-alternatives" => Ok(Strategy::SampleAlternatives),
        "no-input-baseline" => Ok(Strategy::NoInputBaseline),
        other => Err(Error::validation(format!("unknown strategy: {other}"))),
    }
}

fn parse_label_mode(name: &str) -> Result<AggregationMode> {
    match name {
        "plurality" => Ok(AggregationMode::Plurality),
        "weighted" => Ok(AggregationMode::Weighted),
        "soft" => Ok(AggregationMode::Soft),
        other => Err(Error::validation(format!("unknown aggregation mode: {other}"))),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Audit {
            suite,
            mock,
            dictator_position,
            axioms,
            strategy,
            samples,
            permutations,
            seed,
            out,
            format,
        } => {
            let suite = load_suite(&suite)?;
            let mut spec = MockSpec::parse(&mock, seed)?;
            if let MockSpec::Dictatorial { dictator_position: p } = &mut spec {
                *p = dictator_position;
            }
            let system = make_mock(&spec);
            let axioms = match axioms {
                Some(list) => parse_list(&list)
                    .iter()
                    .map(|a| Axiom::parse(a))
                    .collect::<Result<Vec<_>>>()?,
                None => Axiom::ALL.to_vec(),
            };
            let config = AuditConfig {
                axioms,
                strategy: parse_strategy(&strategy)?,
                samples_per_instance: samples,
                permutations_per_instance: permutations,
                seed,
            };
            let report = run_audit(system.as_ref(), &suite, &config)?;
            match ReportFormat::parse(&format)? {
                ReportFormat::Json => write_output(&report, out.as_deref())?,
                ReportFormat::TextSummary => {
                    let text = text_summary(&report);
                    match out {
                        Some(path) => fs::write(path, text)?,
                        None => print!("{text}"),
                    }
                }
            }
        }
        Command::Vote(cmd) => match cmd {
            VoteCommand::Single { profile, rule, out } => {
                let profile: PreferenceProfile = read_json(&profile)?;
                let result = single_winner(&profile, parse_single_rule(&rule)?)?;
                write_output(&result, out.as_deref())?;
            }
            VoteCommand::Committee {
                profile,
                rule,
                k,
                candidates,
                out,
            } => {
                let profile: PreferenceProfile = read_json(&profile)?;
                let pool = candidates.map(|c| parse_list(&c));
                let result =
                    approval_committee(&profile, pool.as_deref(), k, parse_committee_rule(&rule)?)?;
                write_output(&result, out.as_deref())?;
            }
            VoteCommand::Median {
                metric_id,
                reports,
                weights,
                out,
            } => {
                let reports = parse_floats(&reports)?;
                let weights = match weights {
                    Some(w) => parse_floats(&w)?,
                    None => vec![1.0; reports.len()],
                };
                let result = median_select(&metric_id, &reports, &weights)?;
                write_output(&result, out.as_deref())?;
            }
            VoteCommand::VetoCore { profile, out } => {
                let profile: PreferenceProfile = read_json(&profile)?;
                let core = veto_core(&profile)?;
                write_output(&core, out.as_deref())?;
            }
        },
        Command::Portion(cmd) => match cmd {
            PortionCommand::Mean { profile, types, out } => {
                let profile: PreferenceProfile = read_json(&profile)?;
                let dist = mean_portion(&profile, &parse_list(&types))?;
                write_output(&dist, out.as_deref())?;
            }
            PortionCommand::EqualSplit { profile, types, out } => {
                let profile: PreferenceProfile = read_json(&profile)?;
                let dist = equal_split_portion(&profile, &parse_list(&types))?;
                write_output(&dist, out.as_deref())?;
            }
            PortionCommand::Filtered {
                profile,
                types,
                veto_profile,
                threshold,
                out,
            } => {
                let profile: PreferenceProfile = read_json(&profile)?;
                let veto: PreferenceProfile = read_json(&veto_profile)?;
                let dist = portion_with_exclusion(&profile, &veto, &parse_list(&types), threshold)?;
                write_output(&dist, out.as_deref())?;
            }
        },
        Command::Labels(cmd) => match cmd {
            LabelsCommand::Aggregate {
                csv,
                mode,
                weights,
                out,
            } => {
                let annotations = AnnotationSet::from_csv(fs::File::open(&csv)?)?;
                let weights: Option<BTreeMap<String, f64>> = match weights {
                    Some(path) => Some(read_json(&path)?),
                    None => None,
                };
                let labels =
                    aggregate_labels(&annotations, parse_label_mode(&mode)?, weights.as_ref())?;
                write_output(&labels, out.as_deref())?;
            }
            LabelsCommand::Estimate {
                csv,
                max_iterations,
                tolerance,
                out,
            } => {
                let annotations = AnnotationSet::from_csv(fs::File::open(&csv)?)?;
                let estimate = estimate_reliabilities(&annotations, max_iterations, tolerance)?;
                let labels = mle_labels(&annotations, &estimate)?;
                let combined = serde_json::json!({ "reliabilities": estimate, "labels": labels });
                write_output(&combined, out.as_deref())?;
            }
        },
        Command::Temporal(cmd) => match cmd {
            TemporalCommand::Run { roster, rounds, out } => {
                let rounds: Vec<choicegate::prefs::Instance> = read_json(&rounds)?;
                let roster = parse_list(&roster);
                let (log, trace) = run_credit_sequence(&roster, &rounds)?;
                let combined = serde_json::json!({ "log": log, "weight-trace": trace });
                write_output(&combined, out.as_deref())?;
            }
            TemporalCommand::AuditGroup {
                log,
                groups,
                slack,
                out,
            } => {
                let log: DecisionLog = read_json(&log)?;
                let groups: Vec<GroupSpec> = read_json(&groups)?;
                let entries = group_proportionality_audit(&log, &groups, slack)?;
                write_output(&entries, out.as_deref())?;
            }
            TemporalCommand::AuditIndividual { log, window, out } => {
                let log: DecisionLog = read_json(&log)?;
                let entries = individual_neglect_audit(&log, window)?;
                write_output(&entries, out.as_deref())?;
            }
        },
        Command::Scenario { config, out_dir } => {
            let config = ScenarioConfig::load(&config)?;
            let manifest = run_scenario(&config, &out_dir)?;
            print!("{}", canonical_json(&manifest)?);
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
