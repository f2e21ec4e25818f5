//! Cross-checks the misreport search engine against an independent naive
//! enumeration: every grid candidate is materialized as a fresh scenario
//! and pushed through `apply_mechanism`, with no shared search machinery.
//! On small grids the two must agree on every report field.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{load_fixture, random_grid_scenario};
use truthful_arch::mechanisms::{apply_mechanism, Mechanism, NetBenefitBasis};
use truthful_arch::numeric::{rational, Rational};
use truthful_arch::scenario::{BenefitProfile, Scenario};
use truthful_arch::strategic::{
    search_misreports, CoalitionGainMode, ManipulationQuery, ManipulationReport, Objective,
};

fn with_rows(scenario: &Scenario, rows: &[(usize, Vec<Rational>)]) -> Scenario {
    let alternatives = scenario
        .alternatives
        .iter()
        .map(|a| (a.name.clone(), a.cost.clone()))
        .collect();
    let stakeholders = scenario
        .stakeholders
        .iter()
        .map(|s| s.name.clone())
        .collect();
    let actual = scenario
        .actual
        .as_ref()
        .map(|ps| ps.iter().map(|p| p.values.clone()).collect());
    let mut reported: Vec<Vec<Rational>> =
        scenario.reported.iter().map(|p| p.values.clone()).collect();
    for (i, values) in rows {
        reported[*i] = values.clone();
    }
    Scenario::new(alternatives, stakeholders, actual, reported).expect("rebuilt scenario")
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Clone)]
enum Key {
    Strict(Rational),
    Pareto(bool, Rational, Rational),
}

fn key_of(mode: CoalitionGainMode, gains: &[Rational]) -> Key {
    let min = gains.iter().min().unwrap().clone();
    match mode {
        CoalitionGainMode::AllStrict => Key::Strict(min),
        CoalitionGainMode::ParetoWeak => {
            let max = gains.iter().max().unwrap().clone();
            let zero = rational(0);
            Key::Pareto(min >= zero && max > zero, min, max)
        }
    }
}

fn grid(step: i64) -> Vec<Rational> {
    let mut points = Vec::new();
    let mut v = -100;
    while v <= 100 {
        points.push(rational(v));
        v += step;
    }
    points
}

/// Literal re-enumeration in lexicographic order, returning the same
/// report shape as the engine.
fn naive_search(
    mechanism: &Mechanism,
    scenario: &Scenario,
    manipulators: &[usize],
    objective: Objective,
    step: i64,
    mode: CoalitionGainMode,
) -> ManipulationReport {
    let points = grid(step);
    let m = scenario.alternative_count();
    let members: Vec<usize> = {
        let mut ms = manipulators.to_vec();
        ms.sort_unstable();
        ms.dedup();
        ms
    };
    let actual = scenario.actual.as_ref().expect("oracle needs actuals");

    let truthful_rows: Vec<(usize, Vec<Rational>)> = members
        .iter()
        .map(|&i| (i, actual[i].values.clone()))
        .collect();
    let truthful_outcome = apply_mechanism(
        mechanism,
        &with_rows(scenario, &truthful_rows),
        NetBenefitBasis::Actual,
    )
    .unwrap();
    let value_of = |i: usize, outcome: &truthful_arch::MechanismOutcome| match objective {
        Objective::Benefit => actual[i].values[outcome.selected].clone(),
        Objective::NetBenefit => &actual[i].values[outcome.selected] + &outcome.payments[i],
    };
    let truthful: Vec<Rational> = members
        .iter()
        .map(|&i| value_of(i, &truthful_outcome))
        .collect();

    let axes = m * members.len();
    let mut digits = vec![0usize; axes];
    let mut best: Option<(Key, Vec<Vec<Rational>>, Vec<Rational>)> = None;
    let mut size = 0u64;
    loop {
        size += 1;
        let rows: Vec<Vec<Rational>> = (0..members.len())
            .map(|mm| (0..m).map(|k| points[digits[mm * m + k]].clone()).collect())
            .collect();
        let replaced: Vec<(usize, Vec<Rational>)> = members
            .iter()
            .zip(&rows)
            .map(|(&i, values)| (i, values.clone()))
            .collect();
        let outcome = apply_mechanism(
            mechanism,
            &with_rows(scenario, &replaced),
            NetBenefitBasis::Actual,
        )
        .unwrap();
        let gains: Vec<Rational> = members
            .iter()
            .zip(&truthful)
            .map(|(&i, t)| value_of(i, &outcome) - t)
            .collect();
        let key = key_of(mode, &gains);
        let better = match &best {
            None => true,
            Some((k, _, _)) => key > *k,
        };
        if better {
            best = Some((key, rows, gains));
        }
        // odometer, last axis fastest
        let mut done = true;
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < points.len() {
                done = false;
                break;
            }
            *d = 0;
        }
        if done {
            break;
        }
    }

    let (key, rows, gains) = best.unwrap();
    let found = match &key {
        Key::Strict(min) => *min > rational(0),
        Key::Pareto(qualifies, _, _) => *qualifies,
    };
    let replaced: Vec<(usize, Vec<Rational>)> = members
        .iter()
        .zip(&rows)
        .map(|(&i, values)| (i, values.clone()))
        .collect();
    let outcome = apply_mechanism(
        mechanism,
        &with_rows(scenario, &replaced),
        NetBenefitBasis::Actual,
    )
    .unwrap();
    let member_gains: Vec<truthful_arch::strategic::MemberGain> = members
        .iter()
        .zip(&truthful)
        .zip(&gains)
        .map(|((&i, t), g)| truthful_arch::strategic::MemberGain {
            stakeholder: i,
            truthful_value: t.clone(),
            best_value: t + g,
            gain: g.clone(),
        })
        .collect();
    let worst = member_gains
        .iter()
        .min_by(|a, b| a.gain.cmp(&b.gain).then(a.stakeholder.cmp(&b.stakeholder)))
        .unwrap()
        .clone();
    ManipulationReport {
        found,
        witness: found.then(|| {
            members
                .iter()
                .zip(rows)
                .map(|(&i, values)| BenefitProfile {
                    stakeholder_id: i,
                    values,
                })
                .collect()
        }),
        truthful_value: worst.truthful_value.clone(),
        best_value: worst.best_value.clone(),
        gain: worst.gain.clone(),
        member_gains,
        truthful_outcome,
        manipulated_outcome: found.then_some(outcome),
        search_size: size,
    }
}

fn engine_search(
    mechanism: &Mechanism,
    scenario: &Scenario,
    manipulators: &[usize],
    objective: Objective,
    step: i64,
    mode: CoalitionGainMode,
) -> ManipulationReport {
    let query = ManipulationQuery::new(*mechanism, manipulators.to_vec())
        .with_objective(objective)
        .with_grid_step(rational(step))
        .with_coalition_mode(mode);
    search_misreports(&query, scenario).expect("engine search succeeds")
}

fn assert_engine_matches_naive(
    mechanism: &Mechanism,
    scenario: &Scenario,
    manipulators: &[usize],
    objective: Objective,
    step: i64,
    mode: CoalitionGainMode,
) {
    let expected = naive_search(mechanism, scenario, manipulators, objective, step, mode);
    let got = engine_search(mechanism, scenario, manipulators, objective, step, mode);
    assert_eq!(
        got, expected,
        "engine disagrees with naive oracle: mechanism={mechanism:?} manipulators={manipulators:?} objective={objective:?} step={step} mode={mode:?}"
    );
}

#[test]
fn unilateral_cbam_matches_naive() {
    let scenario = load_fixture("table1.json");
    for step in [50, 25] {
        assert_engine_matches_naive(
            &Mechanism::Cbam,
            &scenario,
            &[0],
            Objective::Benefit,
            step,
            CoalitionGainMode::AllStrict,
        );
    }
}

#[test]
fn unilateral_vcg_matches_naive() {
    let scenario = load_fixture("table2.json");
    assert_engine_matches_naive(
        &Mechanism::Vcg,
        &scenario,
        &[0],
        Objective::NetBenefit,
        25,
        CoalitionGainMode::AllStrict,
    );
    assert_engine_matches_naive(
        &Mechanism::Vcg,
        &scenario,
        &[1],
        Objective::Benefit,
        50,
        CoalitionGainMode::AllStrict,
    );
}

#[test]
fn unilateral_dictatorial_mechanisms_match_naive() {
    let scenario = load_fixture("table3.json");
    let dcbam = Mechanism::DictatorialCbam { dictator: 1 };
    assert_engine_matches_naive(
        &dcbam,
        &scenario,
        &[1],
        Objective::Benefit,
        25,
        CoalitionGainMode::AllStrict,
    );
    // A non-dictator manipulator cannot move anything.
    assert_engine_matches_naive(
        &dcbam,
        &scenario,
        &[0],
        Objective::Benefit,
        50,
        CoalitionGainMode::AllStrict,
    );
    assert_engine_matches_naive(
        &Mechanism::Dictator { dictator: 1 },
        &scenario,
        &[1],
        Objective::Benefit,
        50,
        CoalitionGainMode::AllStrict,
    );
}

#[test]
fn coalition_searches_match_naive() {
    let scenario = load_fixture("table1.json");
    assert_engine_matches_naive(
        &Mechanism::Cbam,
        &scenario,
        &[1, 2],
        Objective::Benefit,
        100,
        CoalitionGainMode::AllStrict,
    );
    // Clarke payments couple coalition members, exercising the exact path.
    assert_engine_matches_naive(
        &Mechanism::Vcg,
        &scenario,
        &[0, 1],
        Objective::NetBenefit,
        100,
        CoalitionGainMode::AllStrict,
    );
    assert_engine_matches_naive(
        &Mechanism::Vcg,
        &scenario,
        &[0, 2],
        Objective::Benefit,
        100,
        CoalitionGainMode::AllStrict,
    );
    let dictator = Mechanism::Dictator { dictator: 1 };
    assert_engine_matches_naive(
        &dictator,
        &scenario,
        &[0, 1],
        Objective::Benefit,
        100,
        CoalitionGainMode::AllStrict,
    );
    assert_engine_matches_naive(
        &dictator,
        &scenario,
        &[0, 2],
        Objective::Benefit,
        100,
        CoalitionGainMode::AllStrict,
    );
}

#[test]
fn pareto_weak_mode_matches_naive() {
    let scenario = Scenario::new(
        vec![("A0".into(), rational(1)), ("A1".into(), rational(1))],
        vec!["s0".into(), "s1".into(), "s2".into()],
        Some(vec![
            vec![rational(10), rational(10)],
            vec![rational(0), rational(5)],
            vec![rational(100), rational(0)],
        ]),
        vec![
            vec![rational(10), rational(10)],
            vec![rational(0), rational(5)],
            vec![rational(100), rational(0)],
        ],
    )
    .unwrap();
    for mode in [CoalitionGainMode::AllStrict, CoalitionGainMode::ParetoWeak] {
        assert_engine_matches_naive(
            &Mechanism::Vcg,
            &scenario,
            &[0, 1],
            Objective::Benefit,
            50,
            mode,
        );
    }
}

#[test]
fn randomized_unilateral_searches_match_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for round in 0..40 {
        let scenario = random_grid_scenario(&mut rng);
        let n = scenario.stakeholder_count();
        let manipulator = rng.gen_range(0..n);
        let mechanism = match rng.gen_range(0..4) {
            0 => Mechanism::Cbam,
            1 => Mechanism::Vcg,
            2 => Mechanism::Dictator {
                dictator: rng.gen_range(0..n),
            },
            _ => Mechanism::DictatorialCbam {
                dictator: rng.gen_range(0..n),
            },
        };
        let objective = if rng.gen_bool(0.5) {
            Objective::Benefit
        } else {
            Objective::NetBenefit
        };
        assert_engine_matches_naive(
            &mechanism,
            &scenario,
            &[manipulator],
            objective,
            100,
            CoalitionGainMode::AllStrict,
        );
        let _ = round;
    }
}

#[test]
fn randomized_coalition_searches_match_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut rounds = 0;
    while rounds < 12 {
        let scenario = random_grid_scenario(&mut rng);
        let n = scenario.stakeholder_count();
        if n < 2 || scenario.alternative_count() > 3 {
            continue;
        }
        rounds += 1;
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        if b == a {
            b = (b + 1) % n;
        }
        let mechanism = if rng.gen_bool(0.5) {
            Mechanism::Vcg
        } else {
            Mechanism::Cbam
        };
        let objective = if rng.gen_bool(0.5) {
            Objective::Benefit
        } else {
            Objective::NetBenefit
        };
        let mode = if rng.gen_bool(0.5) {
            CoalitionGainMode::AllStrict
        } else {
            CoalitionGainMode::ParetoWeak
        };
        assert_engine_matches_naive(&mechanism, &scenario, &[a, b], objective, 100, mode);
    }
}

#[test]
fn refining_the_grid_never_loses_a_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let scenario = random_grid_scenario(&mut rng);
        let n = scenario.stakeholder_count();
        let manipulator = rng.gen_range(0..n);
        let mechanism = if rng.gen_bool(0.5) {
            Mechanism::Cbam
        } else {
            Mechanism::Vcg
        };
        let objective = if rng.gen_bool(0.5) {
            Objective::Benefit
        } else {
            Objective::NetBenefit
        };
        let mut previous_found = false;
        for step in [100, 50, 25] {
            let report = engine_search(
                &mechanism,
                &scenario,
                &[manipulator],
                objective,
                step,
                CoalitionGainMode::AllStrict,
            );
            assert!(
                !previous_found || report.found,
                "halving the grid step lost a witness: mechanism={mechanism:?} step={step}"
            );
            previous_found = report.found;
        }
    }
}
