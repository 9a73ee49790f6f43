//! Wasted votes: ballots that helped elect nobody.

use alloc::vec::Vec;

use crate::apportionment::SeatAllocation;
use crate::model::{CandidateId, NominalBallot, Profile, RankedBallot};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wasted {
    pub votes: Rational,
    /// Share of all valid votes.
    pub fraction: Rational,
}

impl Wasted {
    fn of(votes: Rational, total: Rational) -> Self {
        let fraction = if total == rational::zero() { rational::zero() } else { &votes / total };
        Wasted { votes, fraction }
    }
}

fn elected_mask(k: usize, winners: &[CandidateId]) -> Vec<bool> {
    let mut mask = alloc::vec![false; k];
    for w in winners {
        mask[w.index()] = true;
    }
    mask
}

/// Weight of ranked ballots naming no elected candidate.
pub fn wasted_votes_ranked(profile: &Profile<RankedBallot>, winners: &[CandidateId]) -> Wasted {
    let elected = elected_mask(profile.candidate_count(), winners);
    let votes: u64 = profile
        .ballots()
        .iter()
        .filter(|b| !b.ranking.iter().any(|c| elected[c.index()]))
        .map(|b| b.weight)
        .sum();
    Wasted::of(rational::int(votes), rational::int(profile.total_weight()))
}

/// Weight of nominal ballots marking no elected candidate.
pub fn wasted_votes_nominal(profile: &Profile<NominalBallot>, winners: &[CandidateId]) -> Wasted {
    let elected = elected_mask(profile.candidate_count(), winners);
    let votes: u64 = profile
        .ballots()
        .iter()
        .filter(|b| !b.marks.iter().any(|c| elected[c.index()]))
        .map(|b| b.weight)
        .sum();
    Wasted::of(rational::int(votes), rational::int(profile.total_weight()))
}

/// Votes of parties that won no seat.
pub fn wasted_votes_seats(allocation: &SeatAllocation) -> Wasted {
    let total = allocation.votes.iter().fold(rational::zero(), |acc, v| acc + v);
    Wasted::of(allocation.wasted_votes(), total)
}
