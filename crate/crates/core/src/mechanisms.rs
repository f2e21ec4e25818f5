//! The selection mechanisms: CBAM desirability, its dictatorial variant,
//! plain dictatorship, and VCG with Clarke-pivot payments.
//!
//! Every mechanism consumes the scenario's *reported* benefits, scores the
//! alternatives with exact rationals, and selects the lowest-index member
//! of the exact argmax set. Payments are zero except under VCG, where the
//! Clarke pivot rule charges each stakeholder her externality on the rest
//! (always ≤ 0).

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::numeric::Rational;
use crate::scenario::Scenario;

/// Identifier plus parameters of a selection mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mechanism {
    Cbam,
    DictatorialCbam { dictator: usize },
    Dictator { dictator: usize },
    Vcg,
}

impl Mechanism {
    /// Resolves a mechanism id (`cbam`, `dictatorial-cbam`, `dictator`,
    /// `vcg`) and an optional dictator index.
    pub fn parse(id: &str, dictator: Option<usize>) -> Result<Mechanism, MechanismError> {
        match id {
            "cbam" => Ok(Mechanism::Cbam),
            "vcg" => Ok(Mechanism::Vcg),
            "dictatorial-cbam" => Ok(Mechanism::DictatorialCbam {
                dictator: dictator.ok_or(MechanismError::DictatorRequired)?,
            }),
            "dictator" => Ok(Mechanism::Dictator {
                dictator: dictator.ok_or(MechanismError::DictatorRequired)?,
            }),
            other => Err(MechanismError::UnknownMechanism(other.to_string())),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Mechanism::Cbam => "cbam",
            Mechanism::DictatorialCbam { .. } => "dictatorial-cbam",
            Mechanism::Dictator { .. } => "dictator",
            Mechanism::Vcg => "vcg",
        }
    }

    pub fn dictator(&self) -> Option<usize> {
        match self {
            Mechanism::DictatorialCbam { dictator } | Mechanism::Dictator { dictator } => {
                Some(*dictator)
            }
            _ => None,
        }
    }

    /// Whether the mechanism charges non-trivial payments.
    pub fn has_payments(&self) -> bool {
        matches!(self, Mechanism::Vcg)
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dictator() {
            Some(d) => write!(f, "{}({d})", self.id()),
            None => write!(f, "{}", self.id()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MechanismError {
    #[error("unknown mechanism {0:?} (expected cbam, dictatorial-cbam, dictator, or vcg)")]
    UnknownMechanism(String),
    #[error("dictator index {dictator} is out of range for {stakeholders} stakeholders")]
    InvalidDictator {
        dictator: usize,
        stakeholders: usize,
    },
    #[error("mechanism requires a dictator index")]
    DictatorRequired,
}

/// Which benefit matrix net benefits are computed from.
///
/// `Actual` is the definitionally correct choice (net benefit is actual
/// benefit plus payment); `Reported` substitutes the reported value, which
/// some published figures use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NetBenefitBasis {
    #[default]
    Actual,
    Reported,
}

/// Result of applying a mechanism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MechanismOutcome {
    /// Selected alternative: the lowest index of `tie`.
    pub selected: usize,
    /// Per-alternative score the mechanism maximized (desirability or TRB).
    pub scores: Vec<Rational>,
    /// Per-stakeholder payment; all zero except under VCG.
    pub payments: Vec<Rational>,
    /// Per-stakeholder net benefit (benefit of the selected alternative
    /// plus payment). `None` when the required benefit matrix is absent.
    pub net_benefits: Option<Vec<Rational>>,
    /// The full exact argmax set of `scores`, ascending.
    pub tie: Vec<usize>,
}

/// Intermediate quantities of a VCG run, one entry per stakeholder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcgTrace {
    /// Total reported benefit per alternative.
    pub trb: Vec<Rational>,
    pub selected: usize,
    /// Everyone else's reported benefit at the selected alternative.
    pub t_plus: Vec<Rational>,
    /// Best total the others could reach without this stakeholder.
    pub t_minus: Vec<Rational>,
    /// Clarke payments: `t_plus − t_minus`, never positive.
    pub payments: Vec<Rational>,
    pub net_benefits: Option<Vec<Rational>>,
}

/// Lowest-index argmax plus the full exact tie set, ascending.
pub fn argmax_lowest(scores: &[Rational]) -> (usize, Vec<usize>) {
    assert!(!scores.is_empty(), "argmax of empty score vector");
    let best = scores.iter().max().expect("non-empty");
    let tie: Vec<usize> = scores
        .iter()
        .enumerate()
        .filter(|(_, s)| *s == best)
        .map(|(k, _)| k)
        .collect();
    (tie[0], tie)
}

fn zero_payments(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

fn net_benefits(
    scenario: &Scenario,
    selected: usize,
    payments: &[Rational],
    basis: NetBenefitBasis,
) -> Option<Vec<Rational>> {
    let profiles = match basis {
        NetBenefitBasis::Actual => scenario.actual.as_deref()?,
        NetBenefitBasis::Reported => &scenario.reported,
    };
    Some(
        profiles
            .iter()
            .zip(payments)
            .map(|(p, pay)| &p.values[selected] + pay)
            .collect(),
    )
}

/// Per-alternative column sums of the reported benefits.
fn column_sums(scenario: &Scenario) -> Vec<Rational> {
    (0..scenario.alternative_count())
        .map(|k| {
            scenario
                .reported
                .iter()
                .map(|p| &p.values[k])
                .sum::<Rational>()
        })
        .collect()
}

/// CBAM desirability per alternative: average reported benefit divided by
/// the alternative's cost.
pub fn cbam_desirability(scenario: &Scenario) -> Vec<Rational> {
    let n = Rational::from_integer(scenario.stakeholder_count().into());
    column_sums(scenario)
        .into_iter()
        .zip(&scenario.alternatives)
        .map(|(sum, alt)| sum / (&n * &alt.cost))
        .collect()
}

/// Selects the alternative with maximal CBAM desirability.
pub fn cbam_select(scenario: &Scenario, basis: NetBenefitBasis) -> MechanismOutcome {
    let scores = cbam_desirability(scenario);
    let (selected, tie) = argmax_lowest(&scores);
    let payments = zero_payments(scenario.stakeholder_count());
    let net = net_benefits(scenario, selected, &payments, basis);
    MechanismOutcome {
        selected,
        scores,
        payments,
        net_benefits: net,
        tie,
    }
}

fn check_dictator(scenario: &Scenario, dictator: usize) -> Result<(), MechanismError> {
    if dictator >= scenario.stakeholder_count() {
        return Err(MechanismError::InvalidDictator {
            dictator,
            stakeholders: scenario.stakeholder_count(),
        });
    }
    Ok(())
}

/// CBAM with the dictator's report standing in for the average: scores are
/// her reported benefit divided by cost; everyone else is ignored.
pub fn dictatorial_cbam_select(
    scenario: &Scenario,
    dictator: usize,
    basis: NetBenefitBasis,
) -> Result<MechanismOutcome, MechanismError> {
    check_dictator(scenario, dictator)?;
    let scores: Vec<Rational> = scenario.reported[dictator]
        .values
        .iter()
        .zip(&scenario.alternatives)
        .map(|(v, alt)| v / &alt.cost)
        .collect();
    let (selected, tie) = argmax_lowest(&scores);
    let payments = zero_payments(scenario.stakeholder_count());
    let net = net_benefits(scenario, selected, &payments, basis);
    Ok(MechanismOutcome {
        selected,
        scores,
        payments,
        net_benefits: net,
        tie,
    })
}

/// Plain dictatorship: the alternative with the dictator's maximal
/// reported benefit wins; costs and everyone else's reports are ignored.
pub fn dictator_select(
    scenario: &Scenario,
    dictator: usize,
    basis: NetBenefitBasis,
) -> Result<MechanismOutcome, MechanismError> {
    check_dictator(scenario, dictator)?;
    let scores = scenario.reported[dictator].values.clone();
    let (selected, tie) = argmax_lowest(&scores);
    let payments = zero_payments(scenario.stakeholder_count());
    let net = net_benefits(scenario, selected, &payments, basis);
    Ok(MechanismOutcome {
        selected,
        scores,
        payments,
        net_benefits: net,
        tie,
    })
}

/// VCG: selects the alternative maximizing total reported benefit and
/// charges each stakeholder her Clarke-pivot payment.
pub fn vcg_select(scenario: &Scenario, basis: NetBenefitBasis) -> (MechanismOutcome, VcgTrace) {
    let trb = column_sums(scenario);
    let (selected, tie) = argmax_lowest(&trb);
    let m = scenario.alternative_count();
    let mut t_plus = Vec::with_capacity(scenario.stakeholder_count());
    let mut t_minus = Vec::with_capacity(scenario.stakeholder_count());
    let mut payments = Vec::with_capacity(scenario.stakeholder_count());
    for profile in &scenario.reported {
        // Sums over everyone but this stakeholder: total minus her value.
        let plus = &trb[selected] - &profile.values[selected];
        let minus = (0..m)
            .map(|k| &trb[k] - &profile.values[k])
            .max()
            .expect("at least one alternative");
        payments.push(&plus - &minus);
        t_plus.push(plus);
        t_minus.push(minus);
    }
    let net = net_benefits(scenario, selected, &payments, basis);
    let outcome = MechanismOutcome {
        selected,
        scores: trb.clone(),
        payments: payments.clone(),
        net_benefits: net.clone(),
        tie,
    };
    let trace = VcgTrace {
        trb,
        selected,
        t_plus,
        t_minus,
        payments,
        net_benefits: net,
    };
    (outcome, trace)
}

/// Dispatches to the named mechanism. Pure: identical inputs produce
/// identical outcomes.
pub fn apply_mechanism(
    mechanism: &Mechanism,
    scenario: &Scenario,
    basis: NetBenefitBasis,
) -> Result<MechanismOutcome, MechanismError> {
    match mechanism {
        Mechanism::Cbam => Ok(cbam_select(scenario, basis)),
        Mechanism::DictatorialCbam { dictator } => {
            dictatorial_cbam_select(scenario, *dictator, basis)
        }
        Mechanism::Dictator { dictator } => dictator_select(scenario, *dictator, basis),
        Mechanism::Vcg => Ok(vcg_select(scenario, basis).0),
    }
}
