use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use truthful_arch::gs_demo::{gs_scan, GsScanResult, VotingRule};
use truthful_arch::mechanisms::{
    apply_mechanism, vcg_select, Mechanism, MechanismOutcome, NetBenefitBasis, VcgTrace,
};
use truthful_arch::numeric::{decimal_string, parse_number, Rational};
use truthful_arch::report::{render_all, Cell, Report, ReportFormat};
use truthful_arch::scenario::Scenario;
use truthful_arch::strategic::{
    search_misreports, CoalitionGainMode, ManipulationQuery, ManipulationReport, Objective,
};
use truthful_arch::DEFAULT_SEARCH_BUDGET;

const BUDGET_ENV: &str = "TRUTHFUL_ARCH_BUDGET";

#[derive(Parser)]
#[command(
    name = "truthful-arch",
    version,
    about = "Architecture selection mechanisms with exact arithmetic and misreport analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::TableText)]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a selection mechanism to a scenario file.
    Select {
        #[arg(long, value_enum)]
        mechanism: MechanismArg,
        /// Dictator index, required by the dictatorial mechanisms.
        #[arg(long)]
        dictator: Option<usize>,
        /// Path to the scenario JSON document.
        #[arg(long)]
        scenario: PathBuf,
        /// Benefit matrix the net-benefit rows are computed from.
        #[arg(long, value_enum, default_value_t = BasisArg::Actual)]
        net_benefit_basis: BasisArg,
    },
    /// Search for profitable misreports by one or more stakeholders.
    Analyze {
        #[arg(long, value_enum)]
        mechanism: MechanismArg,
        #[arg(long)]
        dictator: Option<usize>,
        #[arg(long)]
        scenario: PathBuf,
        /// Manipulating stakeholder indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        manipulators: Vec<usize>,
        /// Defaults to net_benefit against vcg and benefit otherwise.
        #[arg(long, value_enum)]
        objective: Option<ObjectiveArg>,
        /// Misreport grid spacing over [-100, 100].
        #[arg(long, default_value = "10")]
        grid_step: String,
        /// When a coalition misreport counts as successful.
        #[arg(long, value_enum, default_value_t = CoalitionModeArg::Strict)]
        coalition_mode: CoalitionModeArg,
    },
    /// Exhaustive manipulability scan of an ordinal voting rule.
    GsScan {
        #[arg(long, value_enum)]
        rule: RuleArg,
        #[arg(long)]
        voters: usize,
        #[arg(long, default_value_t = 3)]
        alternatives: usize,
        /// Dictator index for the dictatorship rule.
        #[arg(long)]
        dictator: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    TableText,
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(value: FormatArg) -> ReportFormat {
        match value {
            FormatArg::TableText => ReportFormat::TableText,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MechanismArg {
    Cbam,
    DictatorialCbam,
    Dictator,
    Vcg,
}

impl MechanismArg {
    fn id(self) -> &'static str {
        match self {
            MechanismArg::Cbam => "cbam",
            MechanismArg::DictatorialCbam => "dictatorial-cbam",
            MechanismArg::Dictator => "dictator",
            MechanismArg::Vcg => "vcg",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Actual,
    Reported,
}

impl From<BasisArg> for NetBenefitBasis {
    fn from(value: BasisArg) -> NetBenefitBasis {
        match value {
            BasisArg::Actual => NetBenefitBasis::Actual,
            BasisArg::Reported => NetBenefitBasis::Reported,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Benefit,
    #[value(name = "net_benefit", alias = "net-benefit")]
    NetBenefit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoalitionModeArg {
    Strict,
    ParetoWeak,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Plurality,
    Borda,
    Dictatorship,
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(cli) {
        eprintln!("error: {error:#}");
        std::process::exit(2);
    }
}

fn run(cli: Cli) -> Result<()> {
    let format = cli.format.into();
    let reports = match cli.command {
        Command::Select {
            mechanism,
            dictator,
            scenario,
            net_benefit_basis,
        } => {
            let scenario = Scenario::from_json_file(&scenario)?;
            let mechanism = Mechanism::parse(mechanism.id(), dictator)?;
            select_reports(&mechanism, &scenario, net_benefit_basis.into())?
        }
        Command::Analyze {
            mechanism,
            dictator,
            scenario,
            manipulators,
            objective,
            grid_step,
            coalition_mode,
        } => {
            let scenario = Scenario::from_json_file(&scenario)?;
            let mechanism = Mechanism::parse(mechanism.id(), dictator)?;
            let mut query = ManipulationQuery::new(mechanism, manipulators)
                .with_grid_step(
                    parse_number(&grid_step)
                        .with_context(|| format!("invalid --grid-step {grid_step:?}"))?,
                )
                .with_candidate_cap(budget_from_env()?)
                .with_coalition_mode(match coalition_mode {
                    CoalitionModeArg::Strict => CoalitionGainMode::AllStrict,
                    CoalitionModeArg::ParetoWeak => CoalitionGainMode::ParetoWeak,
                });
            if let Some(objective) = objective {
                query = query.with_objective(match objective {
                    ObjectiveArg::Benefit => Objective::Benefit,
                    ObjectiveArg::NetBenefit => Objective::NetBenefit,
                });
            }
            let report = search_misreports(&query, &scenario)?;
            analyze_reports(&query, &scenario, &report)
        }
        Command::GsScan {
            rule,
            voters,
            alternatives,
            dictator,
        } => {
            let rule = match rule {
                RuleArg::Plurality => VotingRule::Plurality,
                RuleArg::Borda => VotingRule::Borda,
                RuleArg::Dictatorship => match dictator {
                    Some(voter) => VotingRule::Dictatorship { voter },
                    None => bail!("--rule dictatorship requires --dictator"),
                },
            };
            let result = gs_scan(&rule, voters, alternatives, budget_from_env()?)?;
            gs_reports(&result)
        }
    };
    print!("{}", render_all(&reports, format));
    Ok(())
}

fn budget_from_env() -> Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .with_context(|| format!("invalid {BUDGET_ENV} value {text:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEARCH_BUDGET),
        Err(e) => Err(e).context(format!("cannot read {BUDGET_ENV}")),
    }
}

fn alternative_names(scenario: &Scenario) -> Vec<String> {
    scenario
        .alternatives
        .iter()
        .map(|a| a.name.clone())
        .collect()
}

fn stakeholder_names(scenario: &Scenario) -> Vec<String> {
    scenario
        .stakeholders
        .iter()
        .map(|s| s.name.clone())
        .collect()
}

fn rational_cells(values: &[Rational]) -> Vec<Cell> {
    values.iter().map(Cell::from).collect()
}

fn average_reported(scenario: &Scenario) -> Vec<Rational> {
    let n = Rational::from_integer(scenario.stakeholder_count().into());
    (0..scenario.alternative_count())
        .map(|k| {
            scenario
                .reported
                .iter()
                .map(|p| &p.values[k])
                .sum::<Rational>()
                / &n
        })
        .collect()
}

fn selection_rows(report: &mut Report, scenario: &Scenario, outcome: &MechanismOutcome) {
    report.push(
        "Selected",
        vec![Cell::from(
            scenario.alternatives[outcome.selected].name.clone(),
        )],
    );
    if outcome.tie.len() > 1 {
        let tied: Vec<String> = outcome
            .tie
            .iter()
            .map(|&k| scenario.alternatives[k].name.clone())
            .collect();
        report.push("Tie", vec![Cell::from(tied.join(", "))]);
    }
}

fn stakeholder_outcome_report(
    scenario: &Scenario,
    outcome: &MechanismOutcome,
    trace: Option<&VcgTrace>,
) -> Option<Report> {
    let mut report = Report::new("Stakeholder outcomes", stakeholder_names(scenario));
    if let Some(trace) = trace {
        report.push("T+", rational_cells(&trace.t_plus));
        report.push("T-", rational_cells(&trace.t_minus));
    }
    report.push("Payment", rational_cells(&outcome.payments));
    match &outcome.net_benefits {
        Some(net) => report.push("Net benefit", rational_cells(net)),
        None if trace.is_none() => return None,
        None => {}
    }
    Some(report)
}

fn select_reports(
    mechanism: &Mechanism,
    scenario: &Scenario,
    basis: NetBenefitBasis,
) -> Result<Vec<Report>> {
    let mut reports = Vec::new();
    match mechanism {
        Mechanism::Cbam => {
            let outcome = apply_mechanism(mechanism, scenario, basis)?;
            let mut report = Report::new("CBAM selection", alternative_names(scenario));
            for (stakeholder, profile) in scenario.stakeholders.iter().zip(&scenario.reported) {
                report.push(
                    format!("Reported benefit {}", stakeholder.name),
                    rational_cells(&profile.values),
                );
            }
            report.push(
                "Average reported benefit",
                rational_cells(&average_reported(scenario)),
            );
            report.push(
                "Cost",
                scenario
                    .alternatives
                    .iter()
                    .map(|a| Cell::from(&a.cost))
                    .collect(),
            );
            report.push("Desirability", rational_cells(&outcome.scores));
            selection_rows(&mut report, scenario, &outcome);
            reports.push(report);
            if let Some(extra) = stakeholder_outcome_report(scenario, &outcome, None) {
                reports.push(extra);
            }
        }
        Mechanism::DictatorialCbam { dictator } | Mechanism::Dictator { dictator } => {
            let outcome = apply_mechanism(mechanism, scenario, basis)?;
            let title = match mechanism {
                Mechanism::DictatorialCbam { .. } => "Dictatorial CBAM selection",
                _ => "Dictatorship selection",
            };
            let mut report = Report::new(title, alternative_names(scenario));
            report.push(
                format!("Reported benefit {}", scenario.stakeholders[*dictator].name),
                rational_cells(&scenario.reported[*dictator].values),
            );
            if matches!(mechanism, Mechanism::DictatorialCbam { .. }) {
                report.push(
                    "Cost",
                    scenario
                        .alternatives
                        .iter()
                        .map(|a| Cell::from(&a.cost))
                        .collect(),
                );
                report.push("Desirability", rational_cells(&outcome.scores));
            }
            selection_rows(&mut report, scenario, &outcome);
            reports.push(report);
            if let Some(extra) = stakeholder_outcome_report(scenario, &outcome, None) {
                reports.push(extra);
            }
        }
        Mechanism::Vcg => {
            let (outcome, trace) = vcg_select(scenario, basis);
            let mut report = Report::new("VCG selection", alternative_names(scenario));
            for (stakeholder, profile) in scenario.stakeholders.iter().zip(&scenario.reported) {
                report.push(
                    format!("Reported benefit {}", stakeholder.name),
                    rational_cells(&profile.values),
                );
            }
            report.push("Total reported benefit", rational_cells(&trace.trb));
            selection_rows(&mut report, scenario, &outcome);
            reports.push(report);
            if let Some(extra) = stakeholder_outcome_report(scenario, &outcome, Some(&trace)) {
                reports.push(extra);
            }
        }
    }
    Ok(reports)
}

fn objective_name(objective: Objective) -> &'static str {
    match objective {
        Objective::Benefit => "benefit",
        Objective::NetBenefit => "net_benefit",
    }
}

fn analyze_reports(
    query: &ManipulationQuery,
    scenario: &Scenario,
    report: &ManipulationReport,
) -> Vec<Report> {
    let mut summary = Report::new("Misreport search", vec!["Value".into()]);
    summary.push("Mechanism", vec![Cell::from(query.mechanism.to_string())]);
    summary.push(
        "Objective",
        vec![Cell::from(objective_name(query.objective))],
    );
    summary.push(
        "Grid step",
        vec![Cell::from(decimal_string(&query.grid_step))],
    );
    summary.push("Candidates evaluated", vec![Cell::from(report.search_size)]);
    summary.push(
        "Found profitable misreport",
        vec![Cell::from(if report.found { "true" } else { "false" })],
    );
    summary.push(
        "Truthful selection",
        vec![Cell::from(
            scenario.alternatives[report.truthful_outcome.selected]
                .name
                .clone(),
        )],
    );
    for member in &report.member_gains {
        let name = &scenario.stakeholders[member.stakeholder].name;
        summary.push(
            format!("Truthful value {name}"),
            vec![Cell::from(&member.truthful_value)],
        );
        summary.push(
            format!("Best value {name}"),
            vec![Cell::from(&member.best_value)],
        );
        summary.push(format!("Gain {name}"), vec![Cell::from(&member.gain)]);
    }
    let mut reports = vec![summary];

    if let (Some(witness), Some(outcome)) = (&report.witness, &report.manipulated_outcome) {
        let mut detail = Report::new("Witness misreport", alternative_names(scenario));
        for profile in witness {
            detail.push(
                format!(
                    "Reported benefit {}",
                    scenario.stakeholders[profile.stakeholder_id].name
                ),
                rational_cells(&profile.values),
            );
        }
        detail.push(
            "Manipulated selection",
            vec![Cell::from(
                scenario.alternatives[outcome.selected].name.clone(),
            )],
        );
        reports.push(detail);
    }
    reports
}

fn format_ordering(ordering: &[usize]) -> String {
    ordering
        .iter()
        .map(|a| format!("a{a}"))
        .collect::<Vec<_>>()
        .join(" > ")
}

fn gs_reports(result: &GsScanResult) -> Vec<Report> {
    let mut report = Report::new("Ordinal manipulability scan", vec!["Value".into()]);
    report.push("Rule", vec![Cell::from(result.rule.to_string())]);
    report.push("Voters", vec![Cell::from(result.voters as u64)]);
    report.push("Alternatives", vec![Cell::from(result.alternatives as u64)]);
    report.push("Total profiles", vec![Cell::from(result.total_profiles)]);
    report.push(
        "Manipulable profiles",
        vec![Cell::from(result.manipulable_profiles)],
    );
    if let Some(witness) = &result.example {
        for (voter, ordering) in witness.profile.orderings.iter().enumerate() {
            report.push(
                format!("Witness profile voter {voter}"),
                vec![Cell::from(format_ordering(ordering))],
            );
        }
        report.push(
            "Witness manipulator",
            vec![Cell::from(format!("voter {}", witness.voter))],
        );
        report.push(
            "Witness misreport",
            vec![Cell::from(format_ordering(&witness.misreport))],
        );
        report.push(
            "Winner shift",
            vec![Cell::from(format!(
                "a{} -> a{}",
                witness.truthful_winner, witness.manipulated_winner
            ))],
        );
    }
    vec![report]
}
