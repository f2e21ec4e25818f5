//! C ABI over the decision engine: parse a scenario once into an opaque
//! handle, then run selections, misreport searches, and ordinal scans
//! against it. Results come back as JSON strings whose numeric fields are
//! exact decimal or fraction literals, so no caller ever sees a rounded
//! value. Every function returns a [`TaStatus`] code;
//! [`ta_last_error_message`] holds the detail of the most recent failure
//! on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde_json::json;

use truthful_arch::gs_demo::{gs_scan, GsScanResult, VotingRule};
use truthful_arch::mechanisms::{
    apply_mechanism, vcg_select, Mechanism, MechanismOutcome, NetBenefitBasis,
};
use truthful_arch::numeric::{decimal_string, parse_number, Rational};
use truthful_arch::scenario::Scenario;
use truthful_arch::strategic::{
    search_misreports, ManipulationQuery, ManipulationReport, Objective,
};
use truthful_arch::DEFAULT_SEARCH_BUDGET;

/// Opaque validated scenario handle.
pub struct TaScenario {
    inner: Scenario,
}

/// Status code of every API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    MechanismError = 5,
    SearchError = 6,
    ScanError = 7,
    InvalidArgument = 8,
    InternalError = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: impl Into<String>) {
    let message = message.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() =
            CString::new(message).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    });
}

fn fail(status: TaStatus, message: impl Into<String>) -> TaStatus {
    set_last_error(message);
    status
}

/// Detail of the most recent error on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ta_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

fn guarded(body: impl FnOnce() -> TaStatus) -> TaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(TaStatus::InternalError, "internal panic"),
    }
}

/// # Safety
/// `text` must be a valid NUL-terminated string or NULL.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, TaStatus> {
    if text.is_null() {
        return Err(fail(TaStatus::NullPointer, "unexpected NULL string"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(TaStatus::InvalidUtf8, format!("invalid UTF-8: {e}")))
}

fn write_string(out: *mut *mut c_char, text: String) -> TaStatus {
    if out.is_null() {
        return fail(TaStatus::NullPointer, "unexpected NULL output pointer");
    }
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            TaStatus::Ok
        }
        Err(e) => fail(TaStatus::InternalError, format!("NUL byte in output: {e}")),
    }
}

/// Parses and validates a scenario JSON document into a handle. On
/// success writes the handle to `out`; free it with [`ta_scenario_free`].
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to a pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ta_scenario_from_json(
    json: *const c_char,
    out: *mut *mut TaScenario,
) -> TaStatus {
    guarded(|| {
        if out.is_null() {
            return fail(TaStatus::NullPointer, "unexpected NULL output pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match Scenario::from_json_str(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(TaScenario { inner }));
                TaStatus::Ok
            }
            Err(truthful_arch::ScenarioError::Invalid(e)) => {
                fail(TaStatus::ValidationError, e.to_string())
            }
            Err(e) => fail(TaStatus::ParseError, e.to_string()),
        }
    })
}

/// Releases a scenario handle. NULL is a no-op.
///
/// # Safety
/// `scenario` must be NULL or a pointer returned by
/// [`ta_scenario_from_json`] that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn ta_scenario_free(scenario: *mut TaScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Releases a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `text` must be NULL or a string returned by this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn ta_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Serializes the scenario back to its canonical JSON document.
///
/// # Safety
/// `scenario` must be a live handle; `out_json` a valid pointer slot. The
/// returned string must be freed with [`ta_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ta_scenario_to_json(
    scenario: *const TaScenario,
    out_json: *mut *mut c_char,
) -> TaStatus {
    guarded(|| {
        let Some(handle) = scenario.as_ref() else {
            return fail(TaStatus::NullPointer, "unexpected NULL scenario");
        };
        write_string(out_json, handle.inner.to_json_string())
    })
}

unsafe fn parse_mechanism(mechanism: *const c_char, dictator: i32) -> Result<Mechanism, TaStatus> {
    let id = read_str(mechanism)?;
    let dictator = usize::try_from(dictator).ok();
    Mechanism::parse(id, dictator).map_err(|e| fail(TaStatus::MechanismError, e.to_string()))
}

fn rational_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(decimal_string).collect()
}

fn outcome_json(scenario: &Scenario, outcome: &MechanismOutcome) -> serde_json::Value {
    json!({
        "selected": outcome.selected,
        "selected_name": scenario.alternatives[outcome.selected].name,
        "tie": outcome.tie,
        "scores": rational_strings(&outcome.scores),
        "payments": rational_strings(&outcome.payments),
        "net_benefits": outcome.net_benefits.as_deref().map(rational_strings),
    })
}

/// Applies a mechanism (`cbam`, `dictatorial-cbam`, `dictator`, `vcg`;
/// dictator index −1 when unused) and returns the outcome as JSON. For
/// VCG the outcome carries a `trace` object with the per-stakeholder
/// totals. `reported_basis` switches net benefits to the reported matrix.
///
/// # Safety
/// `scenario` must be a live handle, `mechanism` a valid NUL-terminated
/// string, `out_json` a valid pointer slot. Free the result with
/// [`ta_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ta_select(
    scenario: *const TaScenario,
    mechanism: *const c_char,
    dictator: i32,
    reported_basis: bool,
    out_json: *mut *mut c_char,
) -> TaStatus {
    guarded(|| {
        let Some(handle) = scenario.as_ref() else {
            return fail(TaStatus::NullPointer, "unexpected NULL scenario");
        };
        let mechanism = match parse_mechanism(mechanism, dictator) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let basis = if reported_basis {
            NetBenefitBasis::Reported
        } else {
            NetBenefitBasis::Actual
        };
        let mut value = match apply_mechanism(&mechanism, &handle.inner, basis) {
            Ok(outcome) => outcome_json(&handle.inner, &outcome),
            Err(e) => return fail(TaStatus::MechanismError, e.to_string()),
        };
        if mechanism == Mechanism::Vcg {
            let (_, trace) = vcg_select(&handle.inner, basis);
            value["trace"] = json!({
                "trb": rational_strings(&trace.trb),
                "t_plus": rational_strings(&trace.t_plus),
                "t_minus": rational_strings(&trace.t_minus),
            });
        }
        value["mechanism"] = json!(mechanism.to_string());
        write_string(out_json, value.to_string())
    })
}

fn report_json(scenario: &Scenario, report: &ManipulationReport) -> serde_json::Value {
    json!({
        "found": report.found,
        "truthful_value": decimal_string(&report.truthful_value),
        "best_value": decimal_string(&report.best_value),
        "gain": decimal_string(&report.gain),
        "search_size": report.search_size,
        "truthful_outcome": outcome_json(scenario, &report.truthful_outcome),
        "manipulated_outcome": report
            .manipulated_outcome
            .as_ref()
            .map(|o| outcome_json(scenario, o)),
        "member_gains": report.member_gains.iter().map(|g| json!({
            "stakeholder": g.stakeholder,
            "truthful_value": decimal_string(&g.truthful_value),
            "best_value": decimal_string(&g.best_value),
            "gain": decimal_string(&g.gain),
        })).collect::<Vec<_>>(),
        "witness": report.witness.as_ref().map(|profiles| profiles.iter().map(|p| json!({
            "stakeholder": p.stakeholder_id,
            "values": rational_strings(&p.values),
        })).collect::<Vec<_>>()),
    })
}

/// Searches for profitable misreports by the listed manipulators.
/// `objective`: 0 benefit, 1 net benefit, any negative value for the
/// mechanism default. `grid_step`: decimal string, NULL for the default
/// of 10. `budget`: candidate cap, 0 for the default.
///
/// # Safety
/// `scenario` must be a live handle; `mechanism` a valid string;
/// `manipulators` must point to `manipulator_count` readable indices;
/// `grid_step` must be NULL or a valid string; `out_json` a valid pointer
/// slot. Free the result with [`ta_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ta_analyze(
    scenario: *const TaScenario,
    mechanism: *const c_char,
    dictator: i32,
    manipulators: *const usize,
    manipulator_count: usize,
    objective: i32,
    grid_step: *const c_char,
    budget: u64,
    out_json: *mut *mut c_char,
) -> TaStatus {
    guarded(|| {
        let Some(handle) = scenario.as_ref() else {
            return fail(TaStatus::NullPointer, "unexpected NULL scenario");
        };
        if manipulators.is_null() && manipulator_count > 0 {
            return fail(TaStatus::NullPointer, "unexpected NULL manipulator list");
        }
        let mechanism = match parse_mechanism(mechanism, dictator) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let members = if manipulator_count == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(manipulators, manipulator_count).to_vec()
        };
        let mut query = ManipulationQuery::new(mechanism, members);
        match objective {
            o if o < 0 => {}
            0 => query = query.with_objective(Objective::Benefit),
            1 => query = query.with_objective(Objective::NetBenefit),
            other => {
                return fail(
                    TaStatus::InvalidArgument,
                    format!("unknown objective code {other}"),
                )
            }
        }
        if !grid_step.is_null() {
            let text = match read_str(grid_step) {
                Ok(t) => t,
                Err(status) => return status,
            };
            match parse_number(text) {
                Ok(step) => query = query.with_grid_step(step),
                Err(e) => return fail(TaStatus::InvalidArgument, e.to_string()),
            }
        }
        if budget > 0 {
            query = query.with_candidate_cap(budget);
        }
        match search_misreports(&query, &handle.inner) {
            Ok(report) => write_string(out_json, report_json(&handle.inner, &report).to_string()),
            Err(e) => fail(TaStatus::SearchError, e.to_string()),
        }
    })
}

fn scan_json(result: &GsScanResult) -> serde_json::Value {
    json!({
        "rule": result.rule.to_string(),
        "voters": result.voters,
        "alternatives": result.alternatives,
        "total_profiles": result.total_profiles,
        "manipulable_profiles": result.manipulable_profiles,
        "example": result.example.as_ref().map(|w| json!({
            "profile": w.profile.orderings,
            "voter": w.voter,
            "misreport": w.misreport,
            "truthful_winner": w.truthful_winner,
            "manipulated_winner": w.manipulated_winner,
        })),
    })
}

/// Runs an exhaustive ordinal manipulability scan. `rule` is `plurality`,
/// `borda`, or `dictatorship` (with `dictator` ≥ 0); `budget` caps rule
/// evaluations, 0 for the default.
///
/// # Safety
/// `rule` must be a valid NUL-terminated string and `out_json` a valid
/// pointer slot. Free the result with [`ta_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ta_gs_scan(
    rule: *const c_char,
    voters: usize,
    alternatives: usize,
    dictator: i32,
    budget: u64,
    out_json: *mut *mut c_char,
) -> TaStatus {
    guarded(|| {
        let rule = match read_str(rule) {
            Ok("plurality") => VotingRule::Plurality,
            Ok("borda") => VotingRule::Borda,
            Ok("dictatorship") => match usize::try_from(dictator) {
                Ok(voter) => VotingRule::Dictatorship { voter },
                Err(_) => {
                    return fail(
                        TaStatus::InvalidArgument,
                        "dictatorship requires a non-negative dictator index",
                    )
                }
            },
            Ok(other) => return fail(TaStatus::InvalidArgument, format!("unknown rule {other:?}")),
            Err(status) => return status,
        };
        let budget = if budget == 0 {
            DEFAULT_SEARCH_BUDGET
        } else {
            budget
        };
        match gs_scan(&rule, voters, alternatives, budget) {
            Ok(result) => write_string(out_json, scan_json(&result).to_string()),
            Err(e) => fail(TaStatus::ScanError, e.to_string()),
        }
    })
}
