//! Exhaustive search for profitable misreports against any mechanism.
//!
//! A search fixes every non-manipulator at her reported profile, takes the
//! manipulators' actual profiles as the truthful baseline, and enumerates
//! every joint misreport on a uniform grid over [−100, 100] per value.
//! Candidates are ranked by gain (for coalitions, the minimum gain across
//! members) and ties broken toward the lexicographically first candidate,
//! so results are deterministic. The reduction is a plain max-by-key and
//! order independent; serial and chunked evaluation agree.
//!
//! The scan never re-derives a score from scratch per candidate: for every
//! mechanism the score of an alternative is affine in the manipulators'
//! grid values, so the engine tabulates the exact rational score of each
//! (alternative, grid input) pair once, sorts the table, and compares
//! integer ranks inside the loop. The only case that resists tabulation is
//! the net-benefit objective against VCG for coalitions, where payments
//! couple the members; that path evaluates candidates with full rational
//! arithmetic. Either way the winning candidate is re-run through
//! [`apply_mechanism`] and the report is assembled from that outcome, so a
//! reported gain always reproduces exactly.

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::mechanisms::{
    apply_mechanism, argmax_lowest, Mechanism, MechanismError, MechanismOutcome, NetBenefitBasis,
};
use crate::numeric::{decimal_string, rational, Rational};
use crate::scenario::{BenefitProfile, Scenario};
use crate::DEFAULT_SEARCH_BUDGET;

/// What a manipulator tries to maximize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Actual benefit of the selected alternative.
    Benefit,
    /// Actual benefit plus payment. Equal to `Benefit` for mechanisms
    /// without payments.
    NetBenefit,
}

impl Objective {
    /// The objective a rational stakeholder holds under this mechanism:
    /// net benefit when the mechanism pays, plain benefit otherwise.
    pub fn default_for(mechanism: &Mechanism) -> Objective {
        if mechanism.has_payments() {
            Objective::NetBenefit
        } else {
            Objective::Benefit
        }
    }
}

/// When a coalition misreport counts as successful. Irrelevant for
/// unilateral searches, where both modes demand a strict gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoalitionGainMode {
    /// Every member strictly gains (the default).
    #[default]
    AllStrict,
    /// No member loses and at least one member strictly gains. Under this
    /// mode a report can have `found = true` with `gain = 0` for the
    /// worst-off member.
    ParetoWeak,
}

/// A misreport search request.
#[derive(Debug, Clone)]
pub struct ManipulationQuery {
    pub mechanism: Mechanism,
    /// Stakeholders searching together; duplicates are ignored.
    pub manipulators: Vec<usize>,
    pub objective: Objective,
    /// Grid spacing over [−100, 100]; must divide the range evenly.
    pub grid_step: Rational,
    /// Maximum number of candidates the search may enumerate.
    pub candidate_cap: u64,
    pub coalition_mode: CoalitionGainMode,
}

impl ManipulationQuery {
    pub fn new(mechanism: Mechanism, manipulators: Vec<usize>) -> Self {
        let objective = Objective::default_for(&mechanism);
        ManipulationQuery {
            mechanism,
            manipulators,
            objective,
            grid_step: rational(10),
            candidate_cap: DEFAULT_SEARCH_BUDGET,
            coalition_mode: CoalitionGainMode::default(),
        }
    }

    pub fn with_objective(mut self, objective: Objective) -> Self {
        self.objective = objective;
        self
    }

    pub fn with_grid_step(mut self, step: Rational) -> Self {
        self.grid_step = step;
        self
    }

    pub fn with_candidate_cap(mut self, cap: u64) -> Self {
        self.candidate_cap = cap;
        self
    }

    pub fn with_coalition_mode(mut self, mode: CoalitionGainMode) -> Self {
        self.coalition_mode = mode;
        self
    }
}

/// One manipulator's objective at the truthful baseline and at the best
/// candidate found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberGain {
    pub stakeholder: usize,
    pub truthful_value: Rational,
    pub best_value: Rational,
    pub gain: Rational,
}

/// Result of a misreport search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManipulationReport {
    /// Whether a profitable misreport exists on the grid.
    pub found: bool,
    /// The witnessing misreport, one profile per manipulator; present iff
    /// `found`.
    pub witness: Option<Vec<BenefitProfile>>,
    /// Objective of the worst-off manipulator under truthful reporting.
    pub truthful_value: Rational,
    /// Her objective at the best candidate.
    pub best_value: Rational,
    /// `best_value − truthful_value`; under the default strict mode,
    /// `found` iff this is strictly positive.
    pub gain: Rational,
    /// Per-manipulator detail at the best candidate.
    pub member_gains: Vec<MemberGain>,
    pub truthful_outcome: MechanismOutcome,
    /// Outcome at the witness; present iff `found`.
    pub manipulated_outcome: Option<MechanismOutcome>,
    /// Number of candidates enumerated.
    pub search_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("scenario carries no actual benefits; the search needs them as the truthful baseline")]
    MissingActualBenefits,
    #[error("grid too fine: {candidates} candidates exceed the cap of {cap}; coarsen the grid step or raise the budget")]
    GridTooFine { candidates: u128, cap: u64 },
    #[error("grid step {0} must be positive and divide the range [-100, 100] evenly")]
    InvalidGridStep(String),
    #[error("at least one manipulator is required")]
    NoManipulators,
    #[error("manipulator index {index} is out of range for {stakeholders} stakeholders")]
    InvalidManipulator { index: usize, stakeholders: usize },
    #[error(transparent)]
    Mechanism(#[from] MechanismError),
}

/// The misreport grid: −100, −100+step, …, 100.
pub fn grid_points(step: &Rational) -> Result<Vec<Rational>, SearchError> {
    if !step.is_positive() {
        return Err(SearchError::InvalidGridStep(decimal_string(step)));
    }
    let span = rational(200) / step;
    if !span.is_integer() {
        return Err(SearchError::InvalidGridStep(decimal_string(step)));
    }
    let intervals = span
        .to_integer()
        .to_u64()
        .ok_or_else(|| SearchError::InvalidGridStep(decimal_string(step)))?;
    let mut points = Vec::with_capacity(intervals as usize + 1);
    let mut v = rational(-100);
    for _ in 0..intervals {
        points.push(v.clone());
        v += step;
    }
    points.push(v);
    debug_assert_eq!(*points.last().unwrap(), rational(100));
    Ok(points)
}

fn distinct_manipulators(query: &ManipulationQuery) -> Vec<usize> {
    let mut members = query.manipulators.clone();
    members.sort_unstable();
    members.dedup();
    members
}

/// Searches for a profitable unilateral misreport. The query must name
/// exactly one manipulator.
pub fn search_unilateral(
    query: &ManipulationQuery,
    scenario: &Scenario,
) -> Result<ManipulationReport, SearchError> {
    assert_eq!(
        distinct_manipulators(query).len(),
        1,
        "search_unilateral requires exactly one manipulator"
    );
    search_misreports(query, scenario)
}

/// Searches for a joint misreport profitable for every coalition member.
/// The query must name at least two manipulators.
pub fn search_coalition(
    query: &ManipulationQuery,
    scenario: &Scenario,
) -> Result<ManipulationReport, SearchError> {
    assert!(
        distinct_manipulators(query).len() >= 2,
        "search_coalition requires at least two manipulators"
    );
    search_misreports(query, scenario)
}

/// Runs [`search_unilateral`] for every stakeholder against an otherwise
/// fully truthful profile. The mechanism is grid-truthful iff every
/// returned report has `found = false`.
pub fn verify_truthfulness(
    mechanism: &Mechanism,
    scenario: &Scenario,
    grid_step: &Rational,
    candidate_cap: u64,
) -> Result<Vec<ManipulationReport>, SearchError> {
    let actual = scenario
        .actual
        .as_ref()
        .ok_or(SearchError::MissingActualBenefits)?;
    let truthful_rows: Vec<(usize, Vec<Rational>)> = actual
        .iter()
        .map(|p| (p.stakeholder_id, p.values.clone()))
        .collect();
    let truthful = scenario.with_reported_rows(&truthful_rows);
    (0..scenario.stakeholder_count())
        .map(|i| {
            let query = ManipulationQuery::new(*mechanism, vec![i])
                .with_grid_step(grid_step.clone())
                .with_candidate_cap(candidate_cap);
            search_unilateral(&query, &truthful)
        })
        .collect()
}

/// Dispatches on coalition size.
pub fn search_misreports(
    query: &ManipulationQuery,
    scenario: &Scenario,
) -> Result<ManipulationReport, SearchError> {
    let ctx = SearchContext::prepare(query, scenario)?;
    let best = ctx.scan();
    ctx.into_report(best)
}

// ---------------------------------------------------------------------
// Search engine internals
// ---------------------------------------------------------------------

/// Ordering key of a candidate, derived from the per-member gains.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum GainKey {
    /// Minimum gain across members; maximized.
    Strict(Rational),
    /// (qualifies as Pareto improvement, min gain, max gain); maximized
    /// lexicographically.
    Pareto(bool, Rational, Rational),
}

fn gain_key(mode: CoalitionGainMode, gains: &[Rational]) -> GainKey {
    let min = gains.iter().min().expect("non-empty").clone();
    match mode {
        CoalitionGainMode::AllStrict => GainKey::Strict(min),
        CoalitionGainMode::ParetoWeak => {
            let max = gains.iter().max().expect("non-empty").clone();
            let qualifies = !min.is_negative() && max.is_positive();
            GainKey::Pareto(qualifies, min, max)
        }
    }
}

fn key_found(key: &GainKey) -> bool {
    match key {
        GainKey::Strict(min) => min.is_positive(),
        GainKey::Pareto(qualifies, _, _) => *qualifies,
    }
}

/// How the selection tables are indexed per candidate.
#[derive(Debug, Clone, Copy)]
enum TableInput {
    /// `table[k]` is indexed by the digit of member `member_pos` at
    /// alternative `k`. Covers every unilateral search and coalitions
    /// under dictatorial mechanisms whose dictator is a member.
    MemberDigit { member_pos: usize },
    /// `table[k]` is indexed by the sum of all members' digits at
    /// alternative `k`. Covers CBAM and VCG coalitions, whose score
    /// weights are identical across members.
    DigitSum,
    /// Scores do not depend on the candidate at all (dictatorial
    /// mechanisms whose dictator is not a member); `table[k]` has one
    /// entry.
    Constant,
}

/// Precomputed exact tables for the ranked scan.
struct RankTables {
    input: TableInput,
    /// `m × width` dense ranks of the exact scores; higher rank = higher
    /// score. Equal scores share a rank, so the lowest-index tie-break on
    /// ranks equals the exact tie-break on rationals.
    selection_rank: Vec<Vec<u32>>,
    /// Rank of the candidate key achieved when alternative `k` wins.
    key_rank: Vec<u32>,
    /// Exact key per selected alternative, for the final consistency
    /// check.
    keys: Vec<GainKey>,
}

enum Engine {
    Ranked(RankTables),
    /// Exact per-candidate arithmetic: VCG net-benefit coalitions.
    VcgCoalition,
}

struct SearchContext<'a> {
    scenario: &'a Scenario,
    mechanism: Mechanism,
    objective: Objective,
    mode: CoalitionGainMode,
    members: Vec<usize>,
    points: Vec<Rational>,
    m: usize,
    axes: usize,
    total: u64,
    /// Per-alternative sums of the fixed (non-member) reported values.
    others_sum: Vec<Rational>,
    truthful_outcome: MechanismOutcome,
    /// Objective per member at the truthful baseline.
    truthful: Vec<Rational>,
    engine: Engine,
}

struct BestCandidate {
    index: u64,
    key: GainKey,
}

impl<'a> SearchContext<'a> {
    fn prepare(
        query: &ManipulationQuery,
        scenario: &'a Scenario,
    ) -> Result<SearchContext<'a>, SearchError> {
        let n = scenario.stakeholder_count();
        let m = scenario.alternative_count();

        let mut members = query.manipulators.clone();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(SearchError::NoManipulators);
        }
        if let Some(&index) = members.iter().find(|&&i| i >= n) {
            return Err(SearchError::InvalidManipulator {
                index,
                stakeholders: n,
            });
        }
        let actual = scenario
            .actual
            .as_ref()
            .ok_or(SearchError::MissingActualBenefits)?;
        if let Some(dictator) = query.mechanism.dictator() {
            if dictator >= n {
                return Err(SearchError::Mechanism(MechanismError::InvalidDictator {
                    dictator,
                    stakeholders: n,
                }));
            }
        }

        let points = grid_points(&query.grid_step)?;
        let axes = m * members.len();
        let mut total: u128 = 1;
        for _ in 0..axes {
            total = total
                .checked_mul(points.len() as u128)
                .ok_or(SearchError::GridTooFine {
                    candidates: u128::MAX,
                    cap: query.candidate_cap,
                })?;
        }
        if total > u128::from(query.candidate_cap) {
            return Err(SearchError::GridTooFine {
                candidates: total,
                cap: query.candidate_cap,
            });
        }
        let total = total as u64;

        // Truthful baseline: members report their actual benefits, the
        // rest stay at their reported profiles.
        let truthful_rows: Vec<(usize, Vec<Rational>)> = members
            .iter()
            .map(|&i| (i, actual[i].values.clone()))
            .collect();
        let baseline = scenario.with_reported_rows(&truthful_rows);
        let truthful_outcome =
            apply_mechanism(&query.mechanism, &baseline, NetBenefitBasis::Actual)?;
        let truthful: Vec<Rational> = members
            .iter()
            .map(|&i| {
                objective_value(
                    query.objective,
                    &actual[i].values,
                    truthful_outcome.selected,
                    &truthful_outcome.payments[i],
                )
            })
            .collect();

        let others_sum: Vec<Rational> = (0..m)
            .map(|k| {
                scenario
                    .reported
                    .iter()
                    .filter(|p| !members.contains(&p.stakeholder_id))
                    .map(|p| &p.values[k])
                    .sum::<Rational>()
            })
            .collect();

        let mut ctx = SearchContext {
            scenario,
            mechanism: query.mechanism,
            objective: query.objective,
            mode: query.coalition_mode,
            members,
            points,
            m,
            axes,
            total,
            others_sum,
            truthful_outcome,
            truthful,
            engine: Engine::VcgCoalition,
        };
        ctx.engine = ctx.build_engine();
        Ok(ctx)
    }

    fn actual_values(&self, member: usize) -> &[Rational] {
        &self.scenario.actual.as_ref().expect("checked")[member].values
    }

    fn actual_value(&self, member: usize, alternative: usize) -> &Rational {
        &self.actual_values(member)[alternative]
    }

    /// Gains per member as a function of the selected alternative, for
    /// engines where payments don't depend on the candidate.
    fn gains_by_alternative(&self) -> Vec<Vec<Rational>> {
        let vcg_pay =
            matches!(self.mechanism, Mechanism::Vcg) && self.objective == Objective::NetBenefit;
        // Under unilateral VCG, T⁻ equals the best the others can reach on
        // their own and T⁺ is their total at the winner; neither depends
        // on the manipulator's report.
        let t_minus = self.others_sum.iter().max().cloned();
        (0..self.m)
            .map(|k| {
                self.members
                    .iter()
                    .zip(&self.truthful)
                    .map(|(&i, truthful)| {
                        let mut value = self.actual_value(i, k).clone();
                        if vcg_pay {
                            value += &self.others_sum[k] - t_minus.as_ref().expect("m >= 1");
                        }
                        value - truthful
                    })
                    .collect()
            })
            .collect()
    }

    fn build_engine(&self) -> Engine {
        let coalition = self.members.len() > 1;
        let vcg_net =
            matches!(self.mechanism, Mechanism::Vcg) && self.objective == Objective::NetBenefit;
        if coalition && vcg_net {
            return Engine::VcgCoalition;
        }

        let input;
        let score_table: Vec<Vec<Rational>>;
        match self.mechanism {
            Mechanism::Vcg | Mechanism::Cbam => {
                // Score is (others' sum + sum of member values) with a
                // positive per-alternative factor for CBAM; the factor and
                // the member weights are shared, so a digit sum indexes it.
                let width = (self.points.len() - 1) * self.members.len() + 1;
                let base: Rational =
                    rational(-100) * Rational::from_integer(self.members.len().into());
                let step = if self.points.len() > 1 {
                    &self.points[1] - &self.points[0]
                } else {
                    Rational::zero()
                };
                let n = Rational::from_integer(self.scenario.stakeholder_count().into());
                input = if self.members.len() == 1 {
                    TableInput::MemberDigit { member_pos: 0 }
                } else {
                    TableInput::DigitSum
                };
                score_table = (0..self.m)
                    .map(|k| {
                        (0..width)
                            .map(|t| {
                                let sum = &self.others_sum[k]
                                    + &base
                                    + &step * Rational::from_integer(t.into());
                                match self.mechanism {
                                    Mechanism::Cbam => {
                                        sum / (&n * &self.scenario.alternatives[k].cost)
                                    }
                                    _ => sum,
                                }
                            })
                            .collect()
                    })
                    .collect();
            }
            Mechanism::DictatorialCbam { dictator } | Mechanism::Dictator { dictator } => {
                let cost_divided = matches!(self.mechanism, Mechanism::DictatorialCbam { .. });
                let score = |k: usize, v: &Rational| {
                    if cost_divided {
                        v / &self.scenario.alternatives[k].cost
                    } else {
                        v.clone()
                    }
                };
                if let Some(member_pos) = self.members.iter().position(|&i| i == dictator) {
                    input = TableInput::MemberDigit { member_pos };
                    score_table = (0..self.m)
                        .map(|k| self.points.iter().map(|v| score(k, v)).collect())
                        .collect();
                } else {
                    // The dictator is not manipulating; the outcome is
                    // fixed by her reported profile.
                    input = TableInput::Constant;
                    score_table = (0..self.m)
                        .map(|k| vec![score(k, &self.scenario.reported[dictator].values[k])])
                        .collect();
                }
            }
        }

        let selection_rank = dense_ranks(&score_table);
        let gains = self.gains_by_alternative();
        let keys: Vec<GainKey> = gains
            .iter()
            .map(|per_member| gain_key(self.mode, per_member))
            .collect();
        let key_rank = dense_ranks(&keys.iter().map(|k| vec![k.clone()]).collect::<Vec<_>>())
            .into_iter()
            .map(|row| row[0])
            .collect();
        Engine::Ranked(RankTables {
            input,
            selection_rank,
            key_rank,
            keys,
        })
    }

    fn scan(&self) -> BestCandidate {
        match &self.engine {
            Engine::Ranked(tables) => self.scan_ranked(tables),
            Engine::VcgCoalition => self.scan_vcg_coalition(),
        }
    }

    /// Enumerates candidates in lexicographic order (first axis most
    /// significant, grid values ascending), reducing by (key rank
    /// descending, index ascending).
    fn scan_ranked(&self, tables: &RankTables) -> BestCandidate {
        let m = self.m;
        let mut digits = vec![0usize; self.axes];
        let mut best_rank = 0u32;
        let mut best_index = 0u64;
        let mut best_alt = 0usize;
        for index in 0..self.total {
            let selected = match tables.input {
                TableInput::MemberDigit { member_pos } => {
                    let offset = member_pos * m;
                    let mut best_k = 0usize;
                    let mut best_score = tables.selection_rank[0][digits[offset]];
                    for k in 1..m {
                        let score = tables.selection_rank[k][digits[offset + k]];
                        if score > best_score {
                            best_score = score;
                            best_k = k;
                        }
                    }
                    best_k
                }
                TableInput::DigitSum => {
                    let mut best_k = 0usize;
                    let mut best_score = 0u32;
                    for k in 0..m {
                        let mut t = 0usize;
                        for mm in 0..self.members.len() {
                            t += digits[mm * m + k];
                        }
                        let score = tables.selection_rank[k][t];
                        if k == 0 || score > best_score {
                            best_score = score;
                            best_k = k;
                        }
                    }
                    best_k
                }
                TableInput::Constant => {
                    let mut best_k = 0usize;
                    let mut best_score = tables.selection_rank[0][0];
                    for k in 1..m {
                        let score = tables.selection_rank[k][0];
                        if score > best_score {
                            best_score = score;
                            best_k = k;
                        }
                    }
                    best_k
                }
            };
            let rank = tables.key_rank[selected];
            if index == 0 || rank > best_rank {
                best_rank = rank;
                best_index = index;
                best_alt = selected;
            }
            increment(&mut digits, self.points.len());
        }
        BestCandidate {
            index: best_index,
            key: tables.keys[best_alt].clone(),
        }
    }

    /// Exact path for VCG net-benefit coalitions: Clarke payments couple
    /// the members' reports, so each candidate is evaluated with rational
    /// arithmetic.
    fn scan_vcg_coalition(&self) -> BestCandidate {
        let m = self.m;
        let members = self.members.len();
        let mut digits = vec![0usize; self.axes];
        let mut best: Option<BestCandidate> = None;
        let mut trb = vec![Rational::zero(); m];
        for index in 0..self.total {
            for (k, slot) in trb.iter_mut().enumerate() {
                let mut sum = self.others_sum[k].clone();
                for mm in 0..members {
                    sum += &self.points[digits[mm * m + k]];
                }
                *slot = sum;
            }
            let (selected, _) = argmax_lowest(&trb);
            let gains: Vec<Rational> = self
                .members
                .iter()
                .enumerate()
                .zip(&self.truthful)
                .map(|((mm, &i), truthful)| {
                    let own = |k: usize| &self.points[digits[mm * m + k]];
                    let t_plus = &trb[selected] - own(selected);
                    let t_minus = (0..m).map(|k| &trb[k] - own(k)).max().expect("m >= 1");
                    self.actual_value(i, selected) + t_plus - t_minus - truthful
                })
                .collect();
            let key = gain_key(self.mode, &gains);
            let better = match &best {
                None => true,
                Some(b) => key > b.key,
            };
            if better {
                best = Some(BestCandidate { index, key });
            }
            increment(&mut digits, self.points.len());
        }
        best.expect("at least one candidate")
    }

    /// Decodes a candidate index into one row of values per member.
    fn decode(&self, index: u64) -> Vec<Vec<Rational>> {
        let mut digits = vec![0usize; self.axes];
        let mut rest = index;
        let base = self.points.len() as u64;
        for axis in (0..self.axes).rev() {
            digits[axis] = (rest % base) as usize;
            rest /= base;
        }
        (0..self.members.len())
            .map(|mm| {
                (0..self.m)
                    .map(|k| self.points[digits[mm * self.m + k]].clone())
                    .collect()
            })
            .collect()
    }

    /// Re-runs the winning candidate through the production mechanism path
    /// and assembles the report from that outcome.
    fn into_report(self, best: BestCandidate) -> Result<ManipulationReport, SearchError> {
        let rows = self.decode(best.index);
        let replaced: Vec<(usize, Vec<Rational>)> = self
            .members
            .iter()
            .zip(&rows)
            .map(|(&i, values)| (i, values.clone()))
            .collect();
        let manipulated = self.scenario.with_reported_rows(&replaced);
        let outcome = apply_mechanism(&self.mechanism, &manipulated, NetBenefitBasis::Actual)?;

        let member_gains: Vec<MemberGain> = self
            .members
            .iter()
            .zip(&self.truthful)
            .map(|(&i, truthful)| {
                let best_value = objective_value(
                    self.objective,
                    self.actual_values(i),
                    outcome.selected,
                    &outcome.payments[i],
                );
                MemberGain {
                    stakeholder: i,
                    truthful_value: truthful.clone(),
                    gain: &best_value - truthful,
                    best_value,
                }
            })
            .collect();

        let gains: Vec<Rational> = member_gains.iter().map(|g| g.gain.clone()).collect();
        let recomputed_key = gain_key(self.mode, &gains);
        assert_eq!(
            recomputed_key, best.key,
            "scan tables disagree with the mechanism re-run"
        );
        let found = key_found(&recomputed_key);

        // Scalar view: the worst-off member, lowest id on ties.
        let worst = member_gains
            .iter()
            .min_by(|a, b| a.gain.cmp(&b.gain).then(a.stakeholder.cmp(&b.stakeholder)))
            .expect("non-empty")
            .clone();

        let witness = found.then(|| {
            self.members
                .iter()
                .zip(rows)
                .map(|(&i, values)| BenefitProfile {
                    stakeholder_id: i,
                    values,
                })
                .collect()
        });

        Ok(ManipulationReport {
            found,
            witness,
            truthful_value: worst.truthful_value.clone(),
            best_value: worst.best_value.clone(),
            gain: worst.gain.clone(),
            member_gains,
            truthful_outcome: self.truthful_outcome,
            manipulated_outcome: found.then_some(outcome),
            search_size: self.total,
        })
    }
}

fn objective_value(
    objective: Objective,
    actual_values: &[Rational],
    selected: usize,
    payment: &Rational,
) -> Rational {
    match objective {
        Objective::Benefit => actual_values[selected].clone(),
        Objective::NetBenefit => &actual_values[selected] + payment,
    }
}

/// Dense ranks over the whole table: equal values share a rank, larger
/// values get larger ranks.
fn dense_ranks<T: Ord>(table: &[Vec<T>]) -> Vec<Vec<u32>> {
    let mut flat: Vec<(&T, usize, usize)> = table
        .iter()
        .enumerate()
        .flat_map(|(row, values)| values.iter().enumerate().map(move |(col, v)| (v, row, col)))
        .collect();
    flat.sort_by(|a, b| a.0.cmp(b.0));
    let mut ranks: Vec<Vec<u32>> = table.iter().map(|row| vec![0u32; row.len()]).collect();
    let mut rank = 0u32;
    for i in 0..flat.len() {
        if i > 0 && flat[i].0 != flat[i - 1].0 {
            rank += 1;
        }
        ranks[flat[i].1][flat[i].2] = rank;
    }
    ranks
}

/// Odometer increment, last axis fastest.
fn increment(digits: &mut [usize], base: usize) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return;
        }
        *d = 0;
    }
}
