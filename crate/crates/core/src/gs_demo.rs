//! Ordinal companion to the misreport search: exhaustive manipulability
//! scans of small voting rules over strict preference orderings.
//!
//! Over three alternatives, every onto non-dictatorial rule admits a
//! profile where some voter profits from misreporting her ordering, while
//! a dictatorship admits none. The scan checks this dichotomy by literal
//! enumeration of every profile and every alternative ordering a voter
//! could submit instead.

use std::fmt;

use thiserror::Error;

/// Strict preference orderings, one per voter, most preferred first. Each
/// ordering is a permutation of `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalProfile {
    pub orderings: Vec<Vec<usize>>,
}

/// An ordinal rule mapping profiles to a single alternative, ties broken
/// toward the lowest alternative index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VotingRule {
    /// Most first-place votes wins.
    Plurality,
    /// Positional scores m−1 … 0 from top to bottom; highest total wins.
    Borda,
    /// The named voter's top choice wins.
    Dictatorship { voter: usize },
}

impl fmt::Display for VotingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VotingRule::Plurality => write!(f, "plurality"),
            VotingRule::Borda => write!(f, "borda"),
            VotingRule::Dictatorship { voter } => write!(f, "dictatorship({voter})"),
        }
    }
}

/// One concrete manipulation: at `profile`, `voter` submitting `misreport`
/// moves the winner somewhere she truly prefers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsWitness {
    pub profile: OrdinalProfile,
    pub voter: usize,
    pub misreport: Vec<usize>,
    pub truthful_winner: usize,
    pub manipulated_winner: usize,
}

/// Result of an exhaustive manipulability scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsScanResult {
    pub rule: VotingRule,
    pub voters: usize,
    pub alternatives: usize,
    /// (m!)^n profiles scanned.
    pub total_profiles: u64,
    /// Profiles where some voter has a profitable ordinal misreport.
    pub manipulable_profiles: u64,
    /// First witness in enumeration order; present iff the count is
    /// positive.
    pub example: Option<GsWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GsError {
    #[error("scan budget exceeded: {required} rule evaluations over a budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error(
        "scan supports exactly 3 alternatives and 1 to 3 voters, got {alternatives} and {voters}"
    )]
    UnsupportedScale { voters: usize, alternatives: usize },
    #[error("dictator {voter} is out of range for {voters} voters")]
    InvalidDictator { voter: usize, voters: usize },
    #[error("ordering {0:?} is not a permutation of the alternatives")]
    InvalidOrdering(Vec<usize>),
    #[error("profile is empty")]
    EmptyProfile,
}

/// Applies the rule to a profile.
pub fn evaluate_rule(rule: &VotingRule, profile: &OrdinalProfile) -> Result<usize, GsError> {
    let orderings = &profile.orderings;
    if orderings.is_empty() {
        return Err(GsError::EmptyProfile);
    }
    let m = orderings[0].len();
    for ordering in orderings {
        if !is_permutation(ordering, m) {
            return Err(GsError::InvalidOrdering(ordering.clone()));
        }
    }
    let winner = match rule {
        VotingRule::Plurality => {
            let mut first_places = vec![0u64; m];
            for ordering in orderings {
                first_places[ordering[0]] += 1;
            }
            argmax_lowest_u64(&first_places)
        }
        VotingRule::Borda => {
            let mut scores = vec![0u64; m];
            for ordering in orderings {
                for (rank, &alt) in ordering.iter().enumerate() {
                    scores[alt] += (m - 1 - rank) as u64;
                }
            }
            argmax_lowest_u64(&scores)
        }
        VotingRule::Dictatorship { voter } => {
            if *voter >= orderings.len() {
                return Err(GsError::InvalidDictator {
                    voter: *voter,
                    voters: orderings.len(),
                });
            }
            orderings[*voter][0]
        }
    };
    Ok(winner)
}

fn is_permutation(ordering: &[usize], m: usize) -> bool {
    if ordering.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &alt in ordering {
        if alt >= m || seen[alt] {
            return false;
        }
        seen[alt] = true;
    }
    true
}

fn argmax_lowest_u64(scores: &[u64]) -> usize {
    let best = scores.iter().max().expect("non-empty");
    scores.iter().position(|s| s == best).expect("non-empty")
}

/// Scans every profile of `voters` orderings over `alternatives`
/// alternatives, testing for each voter all alternative orderings she
/// could submit. A misreport is profitable when the new winner sits
/// strictly higher in her true ordering.
///
/// Scale is fixed to 3 alternatives and at most 3 voters; `budget` caps
/// the number of rule evaluations, `(m!)^n · m!`.
pub fn gs_scan(
    rule: &VotingRule,
    voters: usize,
    alternatives: usize,
    budget: u64,
) -> Result<GsScanResult, GsError> {
    if alternatives != 3 || voters == 0 || voters > 3 {
        return Err(GsError::UnsupportedScale {
            voters,
            alternatives,
        });
    }
    if let VotingRule::Dictatorship { voter } = rule {
        if *voter >= voters {
            return Err(GsError::InvalidDictator {
                voter: *voter,
                voters,
            });
        }
    }
    let perms = permutations_lex(alternatives);
    let factorial = perms.len() as u128;
    let total: u128 = factorial.pow(voters as u32);
    let required = total * factorial;
    if required > u128::from(budget) {
        return Err(GsError::BudgetExceeded { required, budget });
    }

    let mut manipulable = 0u64;
    let mut example: Option<GsWitness> = None;
    // Profile enumeration: voter 0 is the most significant digit.
    let mut indices = vec![0usize; voters];
    for _ in 0..total {
        let profile = OrdinalProfile {
            orderings: indices.iter().map(|&p| perms[p].clone()).collect(),
        };
        let truthful_winner = evaluate_rule(rule, &profile).expect("profile is valid");
        let mut hit = None;
        'voters: for voter in 0..voters {
            let true_order = &profile.orderings[voter];
            let truthful_rank = rank_of(true_order, truthful_winner);
            for misreport in &perms {
                if *misreport == *true_order {
                    continue;
                }
                let mut tampered = profile.clone();
                tampered.orderings[voter] = misreport.clone();
                let winner = evaluate_rule(rule, &tampered).expect("profile is valid");
                if rank_of(true_order, winner) < truthful_rank {
                    hit = Some((voter, misreport.clone(), winner));
                    break 'voters;
                }
            }
        }
        if let Some((voter, misreport, manipulated_winner)) = hit {
            manipulable += 1;
            if example.is_none() {
                example = Some(GsWitness {
                    profile: profile.clone(),
                    voter,
                    misreport,
                    truthful_winner,
                    manipulated_winner,
                });
            }
        }
        increment_indices(&mut indices, perms.len());
    }
    Ok(GsScanResult {
        rule: *rule,
        voters,
        alternatives,
        total_profiles: total as u64,
        manipulable_profiles: manipulable,
        example,
    })
}

fn rank_of(ordering: &[usize], alternative: usize) -> usize {
    ordering
        .iter()
        .position(|&a| a == alternative)
        .expect("winner is an alternative")
}

/// All permutations of `0..m` in lexicographic order.
fn permutations_lex(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    let mut used = vec![false; m];
    build_perms(m, &mut current, &mut used, &mut out);
    out
}

fn build_perms(
    m: usize,
    current: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == m {
        out.push(current.clone());
        return;
    }
    for alt in 0..m {
        if !used[alt] {
            used[alt] = true;
            current.push(alt);
            build_perms(m, current, used, out);
            current.pop();
            used[alt] = false;
        }
    }
}

/// Odometer over permutation indices, last voter fastest.
fn increment_indices(indices: &mut [usize], base: usize) {
    for i in indices.iter_mut().rev() {
        *i += 1;
        if *i < base {
            return;
        }
        *i = 0;
    }
}
