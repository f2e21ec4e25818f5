//! Domain model: alternatives, stakeholders, benefit profiles, and the
//! validated [`Scenario`] every mechanism consumes.
//!
//! The external scenario document is JSON whose numbers are carried as
//! decimal strings (e.g. `"62.33"` = 6233/100) so that no value is ever
//! coerced through floating point.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{decimal_string, parse_number, rational, NumberParseError, Rational};

/// One candidate architecture alternative with its anticipated cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alternative {
    pub id: usize,
    pub name: String,
    /// Anticipated cost; strictly positive.
    pub cost: Rational,
}

/// One participant in the decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stakeholder {
    pub id: usize,
    pub name: String,
}

/// A stakeholder's benefit over every alternative, each value within
/// [−100, 100]. Used for both actual and reported benefits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenefitProfile {
    pub stakeholder_id: usize,
    pub values: Vec<Rational>,
}

/// A validated decision scenario.
///
/// `reported` is what stakeholders submitted; `actual` is their true
/// benefit when known. Operations that need true benefits (net-benefit
/// computation, misreport search) reject scenarios without `actual`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub alternatives: Vec<Alternative>,
    pub stakeholders: Vec<Stakeholder>,
    pub actual: Option<Vec<BenefitProfile>>,
    pub reported: Vec<BenefitProfile>,
}

/// Which benefit matrix a validation complaint refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenefitKind {
    Actual,
    Reported,
}

impl fmt::Display for BenefitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenefitKind::Actual => write!(f, "actual"),
            BenefitKind::Reported => write!(f, "reported"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("scenario must contain at least one alternative")]
    NoAlternatives,
    #[error("scenario must contain at least one stakeholder")]
    NoStakeholders,
    #[error("invalid number for {context}: {source}")]
    InvalidNumber {
        context: String,
        source: NumberParseError,
    },
    #[error("cost {cost} of alternative {name:?} is not positive")]
    NonPositiveCost { name: String, cost: String },
    #[error("{matrix} benefit {value} of stakeholder {stakeholder} for alternative {alternative} is outside [-100, 100]")]
    BenefitOutOfRange {
        matrix: BenefitKind,
        stakeholder: usize,
        alternative: usize,
        value: String,
    },
    #[error("{matrix} benefit matrix has {got} rows, expected one per stakeholder ({expected})")]
    ProfileCountMismatch {
        matrix: BenefitKind,
        expected: usize,
        got: usize,
    },
    #[error("{matrix} benefit row for stakeholder {stakeholder} has {got} values, expected one per alternative ({expected})")]
    DimensionMismatch {
        matrix: BenefitKind,
        stakeholder: usize,
        expected: usize,
        got: usize,
    },
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario file {path:?}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid scenario JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// The raw scenario document, mirroring the JSON layout. All numbers are
/// strings; `validate_scenario` turns them into exact rationals.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub alternatives: Vec<RawAlternative>,
    pub stakeholders: Vec<RawStakeholder>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual: Option<Vec<Vec<String>>>,
    pub reported: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAlternative {
    pub name: String,
    pub cost: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStakeholder {
    pub name: String,
}

/// Checks every structural invariant of the raw document and converts it
/// into a [`Scenario`] with exact rational values.
pub fn validate_scenario(raw: RawScenario) -> Result<Scenario, ValidationError> {
    let mut alternatives = Vec::with_capacity(raw.alternatives.len());
    for (id, alt) in raw.alternatives.into_iter().enumerate() {
        let cost = parse_number(&alt.cost).map_err(|source| ValidationError::InvalidNumber {
            context: format!("cost of alternative {:?}", alt.name),
            source,
        })?;
        if cost <= rational(0) {
            return Err(ValidationError::NonPositiveCost {
                name: alt.name,
                cost: decimal_string(&cost),
            });
        }
        alternatives.push(Alternative {
            id,
            name: alt.name,
            cost,
        });
    }
    let stakeholders = raw
        .stakeholders
        .into_iter()
        .enumerate()
        .map(|(id, s)| Stakeholder { id, name: s.name })
        .collect::<Vec<_>>();

    let reported = parse_matrix(raw.reported, BenefitKind::Reported)?;
    let actual = raw
        .actual
        .map(|rows| parse_matrix(rows, BenefitKind::Actual))
        .transpose()?;

    build_scenario(alternatives, stakeholders, actual, reported)
}

fn parse_matrix(
    rows: Vec<Vec<String>>,
    matrix: BenefitKind,
) -> Result<Vec<BenefitProfile>, ValidationError> {
    let mut profiles = Vec::with_capacity(rows.len());
    for (stakeholder_id, row) in rows.into_iter().enumerate() {
        let mut values = Vec::with_capacity(row.len());
        for (alternative, text) in row.into_iter().enumerate() {
            let value =
                parse_number(&text).map_err(|source| ValidationError::InvalidNumber {
                    context: format!(
                        "{matrix} benefit of stakeholder {stakeholder_id} for alternative {alternative}"
                    ),
                    source,
                })?;
            values.push(value);
        }
        profiles.push(BenefitProfile {
            stakeholder_id,
            values,
        });
    }
    Ok(profiles)
}

fn build_scenario(
    alternatives: Vec<Alternative>,
    stakeholders: Vec<Stakeholder>,
    actual: Option<Vec<BenefitProfile>>,
    reported: Vec<BenefitProfile>,
) -> Result<Scenario, ValidationError> {
    if alternatives.is_empty() {
        return Err(ValidationError::NoAlternatives);
    }
    if stakeholders.is_empty() {
        return Err(ValidationError::NoStakeholders);
    }
    check_matrix(
        &reported,
        BenefitKind::Reported,
        stakeholders.len(),
        alternatives.len(),
    )?;
    if let Some(actual) = &actual {
        check_matrix(
            actual,
            BenefitKind::Actual,
            stakeholders.len(),
            alternatives.len(),
        )?;
    }
    Ok(Scenario {
        alternatives,
        stakeholders,
        actual,
        reported,
    })
}

fn check_matrix(
    profiles: &[BenefitProfile],
    matrix: BenefitKind,
    stakeholders: usize,
    alternatives: usize,
) -> Result<(), ValidationError> {
    if profiles.len() != stakeholders {
        return Err(ValidationError::ProfileCountMismatch {
            matrix,
            expected: stakeholders,
            got: profiles.len(),
        });
    }
    let min = rational(-100);
    let max = rational(100);
    for profile in profiles {
        if profile.values.len() != alternatives {
            return Err(ValidationError::DimensionMismatch {
                matrix,
                stakeholder: profile.stakeholder_id,
                expected: alternatives,
                got: profile.values.len(),
            });
        }
        for (alternative, value) in profile.values.iter().enumerate() {
            if *value < min || *value > max {
                return Err(ValidationError::BenefitOutOfRange {
                    matrix,
                    stakeholder: profile.stakeholder_id,
                    alternative,
                    value: decimal_string(value),
                });
            }
        }
    }
    Ok(())
}

impl Scenario {
    /// Builds and validates a scenario from in-memory values. Benefit rows
    /// are ordered by stakeholder, columns by alternative.
    pub fn new(
        alternatives: Vec<(String, Rational)>,
        stakeholders: Vec<String>,
        actual: Option<Vec<Vec<Rational>>>,
        reported: Vec<Vec<Rational>>,
    ) -> Result<Scenario, ValidationError> {
        for (name, cost) in &alternatives {
            if *cost <= rational(0) {
                return Err(ValidationError::NonPositiveCost {
                    name: name.clone(),
                    cost: decimal_string(cost),
                });
            }
        }
        let alternatives = alternatives
            .into_iter()
            .enumerate()
            .map(|(id, (name, cost))| Alternative { id, name, cost })
            .collect();
        let stakeholders = stakeholders
            .into_iter()
            .enumerate()
            .map(|(id, name)| Stakeholder { id, name })
            .collect();
        let to_profiles = |rows: Vec<Vec<Rational>>| {
            rows.into_iter()
                .enumerate()
                .map(|(stakeholder_id, values)| BenefitProfile {
                    stakeholder_id,
                    values,
                })
                .collect::<Vec<_>>()
        };
        build_scenario(
            alternatives,
            stakeholders,
            actual.map(to_profiles),
            to_profiles(reported),
        )
    }

    pub fn from_json_str(text: &str) -> Result<Scenario, ScenarioError> {
        let raw: RawScenario = serde_json::from_str(text)?;
        Ok(validate_scenario(raw)?)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn to_raw(&self) -> RawScenario {
        let matrix = |profiles: &[BenefitProfile]| {
            profiles
                .iter()
                .map(|p| p.values.iter().map(decimal_string).collect())
                .collect()
        };
        RawScenario {
            alternatives: self
                .alternatives
                .iter()
                .map(|a| RawAlternative {
                    name: a.name.clone(),
                    cost: decimal_string(&a.cost),
                })
                .collect(),
            stakeholders: self
                .stakeholders
                .iter()
                .map(|s| RawStakeholder {
                    name: s.name.clone(),
                })
                .collect(),
            actual: self.actual.as_deref().map(matrix),
            reported: matrix(&self.reported),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("scenario serializes")
    }

    pub fn alternative_count(&self) -> usize {
        self.alternatives.len()
    }

    pub fn stakeholder_count(&self) -> usize {
        self.stakeholders.len()
    }

    /// Copy of this scenario with the reported rows of the listed
    /// stakeholders replaced. Values must already be in range.
    pub(crate) fn with_reported_rows(&self, rows: &[(usize, Vec<Rational>)]) -> Scenario {
        let mut out = self.clone();
        for (stakeholder, values) in rows {
            debug_assert_eq!(values.len(), self.alternative_count());
            out.reported[*stakeholder].values = values.clone();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContributionError {
    #[error("contribution score {0} is outside [-1, 1]")]
    ScoreOutOfRange(String),
}

/// Converts a contribution score in [−1, 1] into a benefit in [−100, 100]
/// by scaling with 100, exactly.
pub fn contribution_to_benefit(score: &Rational) -> Result<Rational, ContributionError> {
    if *score < rational(-1) || *score > rational(1) {
        return Err(ContributionError::ScoreOutOfRange(decimal_string(score)));
    }
    Ok(score * rational(100))
}
