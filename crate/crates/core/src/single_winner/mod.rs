//! Single-winner tallying methods.
//!
//! Every tally returns a [`TallyResult`](crate::TallyResult) whose rounds
//! reproduce the count as an election official would publish it.

mod condorcet;
mod plurality;
mod runoff;
mod scoring;

pub use condorcet::{
    black, schulze, schulze_links, schulze_tally, smith_irv, smith_set, SchulzeOutcome, SchulzeStrength,
};
pub use plurality::{approval, fptp, quota_winner};
pub use runoff::{
    contingent, coombs, exhaustive_engine, exhaustive_simulated, irv, two_round_engine,
    two_round_final, two_round_simulated, Decision, ExhaustiveBallot, RoundOutcome,
};
pub use scoring::{borda, borda_scores, cumulative, majority_judgement, range_voting, BordaScheme};

pub(crate) use runoff::irv_among;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{CandidateId, NominalBallot, Profile};
use crate::rational::{self, Rational};
use crate::report::{Action, RoundReport, TallyResult};
use crate::tie::{Pick, TieBreaker, TiePolicy};

/// Weighted mark counts per candidate.
pub(crate) fn nominal_totals(profile: &Profile<NominalBallot>) -> Vec<u64> {
    let mut totals = vec![0u64; profile.candidate_count()];
    for b in profile.ballots() {
        for c in &b.marks {
            totals[c.index()] += b.weight;
        }
    }
    totals
}

pub(crate) fn check_mark_limit(profile: &Profile<NominalBallot>, limit: usize) -> Result<()> {
    match profile.ballots().iter().position(|b| b.marks.len() > limit) {
        Some(i) => Err(Error::MarkLimitViolation {
            ballot: i,
            marks: profile.ballots()[i].marks.len(),
            limit,
        }),
        None => Ok(()),
    }
}

pub(crate) fn to_rationals(values: &[u64]) -> Vec<Rational> {
    values.iter().map(|&v| rational::int(v)).collect()
}

pub(crate) fn totals_map(
    candidates: impl IntoIterator<Item = CandidateId>,
    values: &[Rational],
) -> BTreeMap<CandidateId, Rational> {
    candidates.into_iter().map(|c| (c, values[c.index()].clone())).collect()
}

/// One-shot count: the candidate with the largest value wins.
pub(crate) fn single_round(
    method: &str,
    values: Vec<Rational>,
    tie: TiePolicy,
) -> Result<TallyResult> {
    let candidates: Vec<CandidateId> = (0..values.len()).map(CandidateId::new).collect();
    let mut tb = TieBreaker::new(tie);
    let winner = tb.extreme(1, &candidates, &values, Pick::Best, &[], method_context(method))?;
    let mut report = RoundReport::new(1, totals_map(candidates.iter().copied(), &values), rational::zero());
    report.action = Action::Elected(vec![winner]);
    Ok(TallyResult {
        method: String::from(method),
        winners: vec![winner],
        rounds: vec![report],
        ties: tb.into_events(),
        scores: totals_map(candidates, &values),
    })
}

fn method_context(method: &str) -> &'static str {
    match method {
        "fptp" => "fptp winner",
        "approval" => "approval winner",
        "range" => "range winner",
        "borda" => "borda winner",
        "black" => "black winner",
        _ => "winner",
    }
}
