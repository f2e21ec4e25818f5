//! Selection of one architecture alternative from stakeholder-reported
//! benefits, under several mechanisms (CBAM desirability, dictatorial
//! variants, and VCG with Clarke-pivot payments), plus a strategic layer
//! that exhaustively searches for profitable misreports.
//!
//! All benefit, cost, score, and payment arithmetic is exact rational
//! arithmetic; argmax ties are decided exactly and broken toward the
//! lowest index, so every outcome is deterministic and reproducible.

pub mod gs_demo;
pub mod mechanisms;
pub mod numeric;
pub mod report;
pub mod scenario;
pub mod strategic;

pub use mechanisms::{
    apply_mechanism, cbam_desirability, cbam_select, dictator_select, dictatorial_cbam_select,
    vcg_select, Mechanism, MechanismError, MechanismOutcome, NetBenefitBasis, VcgTrace,
};
pub use numeric::Rational;
pub use scenario::{
    contribution_to_benefit, validate_scenario, Alternative, BenefitProfile, Scenario,
    ScenarioError, Stakeholder, ValidationError,
};
pub use strategic::{
    search_coalition, search_misreports, search_unilateral, verify_truthfulness, ManipulationQuery,
    ManipulationReport, Objective, SearchError,
};

/// Default cap on the number of misreport candidates a single search may
/// enumerate. Overridable per query and, in the CLI, through the
/// `TRUTHFUL_ARCH_BUDGET` environment variable.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;
