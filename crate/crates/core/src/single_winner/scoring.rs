//! Point-based methods: Borda variants, range voting, majority judgement and
//! cumulative voting.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{CandidateId, CumulativeBallot, Profile, RankedBallot, ScoreBallot};
use crate::rational::{self, Rational};
use crate::report::{Action, RoundReport, TallyResult};
use crate::tie::{Pick, TieBreaker, TiePolicy};

use super::{single_round, totals_map};

/// Points awarded by rank position.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum BordaScheme {
    /// `k - i` points for rank `i` (`k-1, ..., 0`).
    #[default]
    Standard,
    /// `k + 1 - i` points (`k, ..., 1`).
    Slovenian,
    /// `1 / i` points (`1, 1/2, ..., 1/k`).
    Dowdall,
    /// Explicit strictly decreasing points, one per rank.
    Custom(Vec<Rational>),
}

impl BordaScheme {
    pub fn points(&self, k: usize) -> Result<Vec<Rational>> {
        let points: Vec<Rational> = match self {
            BordaScheme::Standard => (1..=k).map(|i| rational::int((k - i) as u64)).collect(),
            BordaScheme::Slovenian => (1..=k).map(|i| rational::int((k + 1 - i) as u64)).collect(),
            BordaScheme::Dowdall => (1..=k).map(|i| rational::ratio(1, i as i64)).collect(),
            BordaScheme::Custom(points) => {
                if points.len() != k {
                    return Err(Error::InvalidScheme("one point value per candidate is required"));
                }
                if points.windows(2).any(|w| w[0] <= w[1]) {
                    return Err(Error::InvalidScheme("points must strictly decrease with rank"));
                }
                points.clone()
            }
        };
        Ok(points)
    }
}

/// Summed rank points per candidate. Unranked candidates receive nothing.
pub fn borda_scores(profile: &Profile<RankedBallot>, scheme: &BordaScheme) -> Result<Vec<Rational>> {
    let points = scheme.points(profile.candidate_count())?;
    let mut scores = vec![rational::zero(); profile.candidate_count()];
    for b in profile.ballots() {
        let weight = rational::int(b.weight);
        for (rank, c) in b.ranking.iter().enumerate() {
            scores[c.index()] += &points[rank] * &weight;
        }
    }
    Ok(scores)
}

pub fn borda(profile: &Profile<RankedBallot>, scheme: &BordaScheme, tie: TiePolicy) -> Result<TallyResult> {
    single_round("borda", borda_scores(profile, scheme)?, tie)
}

fn dense_scores(ballot: &ScoreBallot, k: usize, floor: i64) -> Vec<i64> {
    let mut scores = vec![floor; k];
    for &(c, s) in &ballot.scores {
        scores[c.index()] = s;
    }
    scores
}

/// Range voting: highest sum of scores wins. Unscored candidates count as the
/// bottom of the range.
pub fn range_voting(profile: &Profile<ScoreBallot>, tie: TiePolicy) -> Result<TallyResult> {
    let k = profile.candidate_count();
    let lo = profile.rules().lo;
    let mut sums = vec![0i64; k];
    for b in profile.ballots() {
        for (sum, s) in sums.iter_mut().zip(dense_scores(b, k, lo)) {
            *sum += s * b.weight as i64;
        }
    }
    single_round("range", sums.into_iter().map(rational::signed).collect(), tie)
}

/// Weighted grade histogram of one candidate.
#[derive(Clone, Debug)]
struct Grades {
    counts: BTreeMap<i64, u64>,
    size: u64,
}

impl Grades {
    /// Lower median grade.
    fn median(&self) -> Option<i64> {
        if self.size == 0 {
            return None;
        }
        let target = (self.size - 1) / 2;
        let mut seen = 0u64;
        for (&grade, &n) in &self.counts {
            seen += n;
            if seen > target {
                return Some(grade);
            }
        }
        None
    }

    fn remove_one(&mut self, grade: i64) {
        if let Some(n) = self.counts.get_mut(&grade) {
            *n -= 1;
            if *n == 0 {
                self.counts.remove(&grade);
            }
            self.size -= 1;
        }
    }
}

/// Majority judgement: highest lower-median grade wins.
///
/// Tied candidates each drop one median grade at a time and are compared
/// again; a tie surviving until the grades run out goes to the tie policy.
pub fn majority_judgement(profile: &Profile<ScoreBallot>, tie: TiePolicy) -> Result<TallyResult> {
    let k = profile.candidate_count();
    let lo = profile.rules().lo;
    let mut grades = vec![Grades { counts: BTreeMap::new(), size: 0 }; k];
    for b in profile.ballots() {
        for (g, s) in grades.iter_mut().zip(dense_scores(b, k, lo)) {
            *g.counts.entry(s).or_insert(0) += b.weight;
            g.size += b.weight;
        }
    }
    let medians: Vec<Rational> =
        grades.iter().map(|g| rational::signed(g.median().unwrap_or(lo))).collect();
    let all: Vec<CandidateId> = profile.roster().ids().collect();

    let best = medians.iter().max().cloned().expect("non-empty roster");
    let mut tied: Vec<CandidateId> = all.iter().copied().filter(|c| medians[c.index()] == best).collect();
    let mut working = grades;
    while tied.len() > 1 {
        let current: Vec<Option<i64>> = tied.iter().map(|c| working[c.index()].median()).collect();
        if current.iter().any(Option::is_none) {
            break;
        }
        for (c, m) in tied.iter().zip(&current) {
            working[c.index()].remove_one(m.expect("checked"));
        }
        let next: Vec<Option<i64>> = tied.iter().map(|c| working[c.index()].median()).collect();
        let top = next.iter().copied().max().flatten();
        if top.is_none() {
            break;
        }
        tied = tied.iter().zip(&next).filter(|(_, m)| **m == top).map(|(c, _)| *c).collect();
    }
    let mut tb = TieBreaker::new(tie);
    let winner = tb.pick(1, &tied, Pick::Best, &[], "majority judgement winner")?;
    let mut report = RoundReport::new(1, totals_map(all.iter().copied(), &medians), rational::zero());
    report.action = Action::Elected(vec![winner]);
    Ok(TallyResult {
        method: String::from("majority-judgement"),
        winners: vec![winner],
        rounds: vec![report],
        ties: tb.into_events(),
        scores: totals_map(all, &medians),
    })
}

/// Cumulative voting: the `seats` candidates with the most points win.
pub fn cumulative(profile: &Profile<CumulativeBallot>, seats: usize, tie: TiePolicy) -> Result<TallyResult> {
    let k = profile.candidate_count();
    if seats == 0 {
        return Err(Error::ZeroSeats);
    }
    if seats > k {
        return Err(Error::SeatsExceedCandidates { seats, candidates: k });
    }
    let mut totals = vec![rational::zero(); k];
    for b in profile.ballots() {
        for &(c, p) in &b.points {
            totals[c.index()] += rational::int(p * b.weight);
        }
    }
    let all: Vec<CandidateId> = profile.roster().ids().collect();
    let mut tb = TieBreaker::new(tie);
    let winners = tb.top_n(1, &all, &totals, seats, "cumulative seat")?;
    let mut report = RoundReport::new(1, totals_map(all.iter().copied(), &totals), rational::zero());
    report.action = Action::Elected(winners.clone());
    Ok(TallyResult {
        method: String::from("cumulative"),
        winners,
        rounds: vec![report],
        ties: tb.into_events(),
        scores: totals_map(all, &totals),
    })
}
