//! Candidates, ballots and validated profiles.
//!
//! Ballots carry an integer weight: a ballot of weight `w` stands for `w`
//! identical ballots, so every count before a fractional transfer is exact
//! integer arithmetic.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Dense zero-based position of a candidate (or party) in its roster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub u32);

/// Parties are addressed by roster position exactly like candidates.
pub type PartyId = CandidateId;

impl CandidateId {
    pub fn new(index: usize) -> Self {
        CandidateId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Ordered list of candidate (or party) names. Roster order doubles as the
/// tie-break priority order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roster {
    names: Vec<String>,
}

impl Roster {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyRoster);
        }
        for (i, name) in names.iter().enumerate() {
            if name.trim().is_empty() {
                return Err(Error::EmptyCandidateName(i));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateCandidateName(name.clone()));
            }
        }
        Ok(Roster { names })
    }

    /// `k` candidates named `A`, `B`, `C`, ... (then `A1`, `B1`, ... past 26).
    pub fn lettered(k: usize) -> Self {
        let names = (0..k.max(1))
            .map(|i| {
                let letter = (b'A' + (i % 26) as u8) as char;
                if i < 26 {
                    letter.to_string()
                } else {
                    alloc::format!("{}{}", letter, i / 26)
                }
            })
            .collect();
        Roster { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: CandidateId) -> &str {
        &self.names[id.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<CandidateId> {
        self.names.iter().position(|n| n == name).map(CandidateId::new)
    }

    pub fn ids(&self) -> impl Iterator<Item = CandidateId> + Clone {
        (0..self.names.len()).map(CandidateId::new)
    }

    pub fn contains(&self, id: CandidateId) -> bool {
        id.index() < self.names.len()
    }
}

/// Whether invalid ballots abort profile construction or are set aside as
/// spoiled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Validation {
    #[default]
    Strict,
    Lenient,
}

/// Shared behaviour of the four ballot structures.
pub trait Ballot: Clone {
    /// Per-profile constraints the ballot is checked against.
    type Rules: Clone + fmt::Debug + PartialEq;

    fn weight(&self) -> u64;

    /// Structural validation of ballot number `index` against a roster of
    /// `k` candidates.
    fn check(&self, index: usize, k: usize, rules: &Self::Rules) -> Result<()>;
}

fn check_members<'a>(
    index: usize,
    k: usize,
    ids: impl Iterator<Item = &'a CandidateId>,
) -> Result<()> {
    let mut seen = vec![false; k];
    let mut any = false;
    for &c in ids {
        any = true;
        if c.index() >= k {
            return Err(Error::UnknownCandidate { ballot: index, candidate: c });
        }
        if seen[c.index()] {
            return Err(Error::DuplicateCandidateInBallot { ballot: index, candidate: c });
        }
        seen[c.index()] = true;
    }
    if !any {
        return Err(Error::EmptyBallot(index));
    }
    Ok(())
}

/// Ordinal ballot, most preferred first. Candidates left off the ranking are
/// unranked (truncation).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankedBallot {
    pub ranking: Vec<CandidateId>,
    pub weight: u64,
}

impl RankedBallot {
    pub fn new(weight: u64, ranking: Vec<CandidateId>) -> Self {
        RankedBallot { ranking, weight }
    }

    pub fn from_indices(weight: u64, ranking: &[usize]) -> Self {
        RankedBallot::new(weight, ranking.iter().copied().map(CandidateId::new).collect())
    }

    /// Most preferred candidate for which `continuing` holds.
    pub fn top_among(&self, continuing: &[bool]) -> Option<CandidateId> {
        self.ranking.iter().copied().find(|c| continuing[c.index()])
    }

    pub fn position(&self, c: CandidateId) -> Option<usize> {
        self.ranking.iter().position(|&x| x == c)
    }
}

impl Ballot for RankedBallot {
    type Rules = ();

    fn weight(&self) -> u64 {
        self.weight
    }

    fn check(&self, index: usize, k: usize, _: &()) -> Result<()> {
        if self.weight == 0 {
            return Err(Error::ZeroWeight(index));
        }
        check_members(index, k, self.ranking.iter())
    }
}

/// Nominal ballot: an unordered set of marked candidates. Mark-count limits
/// are enforced by the counting method, not here.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NominalBallot {
    pub marks: Vec<CandidateId>,
    pub weight: u64,
}

impl NominalBallot {
    pub fn new(weight: u64, mut marks: Vec<CandidateId>) -> Self {
        marks.sort_unstable();
        NominalBallot { marks, weight }
    }

    pub fn from_indices(weight: u64, marks: &[usize]) -> Self {
        NominalBallot::new(weight, marks.iter().copied().map(CandidateId::new).collect())
    }

    pub fn single(weight: u64, c: CandidateId) -> Self {
        NominalBallot { marks: vec![c], weight }
    }
}

impl Ballot for NominalBallot {
    type Rules = ();

    fn weight(&self) -> u64 {
        self.weight
    }

    fn check(&self, index: usize, k: usize, _: &()) -> Result<()> {
        if self.weight == 0 {
            return Err(Error::ZeroWeight(index));
        }
        check_members(index, k, self.marks.iter())
    }
}

/// Inclusive integer score range for cardinal ballots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScoreRange {
    pub lo: i64,
    pub hi: i64,
}

impl ScoreRange {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidScoreRange { lo, hi });
        }
        Ok(ScoreRange { lo, hi })
    }
}

impl Default for ScoreRange {
    fn default() -> Self {
        ScoreRange { lo: 0, hi: 5 }
    }
}

/// Cardinal ballot. Candidates without an entry are treated as rated at the
/// bottom of the range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreBallot {
    pub scores: Vec<(CandidateId, i64)>,
    pub weight: u64,
}

impl ScoreBallot {
    pub fn new(weight: u64, scores: Vec<(CandidateId, i64)>) -> Self {
        ScoreBallot { scores, weight }
    }

    /// Scores listed in roster order, `scores[i]` for candidate `i`.
    pub fn dense(weight: u64, scores: &[i64]) -> Self {
        ScoreBallot::new(
            weight,
            scores.iter().enumerate().map(|(i, &s)| (CandidateId::new(i), s)).collect(),
        )
    }
}

impl Ballot for ScoreBallot {
    type Rules = ScoreRange;

    fn weight(&self) -> u64 {
        self.weight
    }

    fn check(&self, index: usize, k: usize, range: &ScoreRange) -> Result<()> {
        if self.weight == 0 {
            return Err(Error::ZeroWeight(index));
        }
        check_members(index, k, self.scores.iter().map(|(c, _)| c))?;
        for &(_, score) in &self.scores {
            if score < range.lo || score > range.hi {
                return Err(Error::ScoreOutOfRange {
                    ballot: index,
                    score,
                    lo: range.lo,
                    hi: range.hi,
                });
            }
        }
        Ok(())
    }
}

/// Point budget and per-candidate cap for cumulative ballots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CumulativeRules {
    pub budget: u64,
    pub cap: u64,
}

/// Point-allocation ballot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulativeBallot {
    pub points: Vec<(CandidateId, u64)>,
    pub weight: u64,
}

impl CumulativeBallot {
    pub fn new(weight: u64, points: Vec<(CandidateId, u64)>) -> Self {
        CumulativeBallot { points, weight }
    }

    pub fn dense(weight: u64, points: &[u64]) -> Self {
        CumulativeBallot::new(
            weight,
            points
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| (CandidateId::new(i), p))
                .collect(),
        )
    }
}

impl Ballot for CumulativeBallot {
    type Rules = CumulativeRules;

    fn weight(&self) -> u64 {
        self.weight
    }

    fn check(&self, index: usize, k: usize, rules: &CumulativeRules) -> Result<()> {
        if self.weight == 0 {
            return Err(Error::ZeroWeight(index));
        }
        check_members(index, k, self.points.iter().map(|(c, _)| c))?;
        let mut spent = 0u64;
        for &(_, p) in &self.points {
            if p > rules.cap {
                return Err(Error::OverCap { ballot: index, points: p, cap: rules.cap });
            }
            spent = spent.saturating_add(p);
        }
        if spent > rules.budget {
            return Err(Error::OverBudget { ballot: index, spent, budget: rules.budget });
        }
        Ok(())
    }
}

/// Validated multiset of weighted ballots of one kind over a fixed roster.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile<B: Ballot> {
    roster: Roster,
    ballots: Vec<B>,
    total_weight: u64,
    spoiled: u64,
    rules: B::Rules,
}

/// Validates `ballots` against `roster` and `rules`.
///
/// Under [`Validation::Strict`] the first invalid ballot aborts construction;
/// under [`Validation::Lenient`] invalid ballots are dropped and their weight
/// is reported by [`Profile::spoiled`].
pub fn build_profile<B: Ballot>(
    roster: Roster,
    ballots: Vec<B>,
    rules: B::Rules,
    validation: Validation,
) -> Result<Profile<B>> {
    let k = roster.len();
    let mut kept = Vec::with_capacity(ballots.len());
    let mut spoiled = 0u64;
    for (i, ballot) in ballots.into_iter().enumerate() {
        match ballot.check(i, k, &rules) {
            Ok(()) => kept.push(ballot),
            Err(e) if validation == Validation::Strict => return Err(e),
            Err(_) => spoiled += ballot.weight(),
        }
    }
    let total_weight = kept.iter().map(Ballot::weight).sum::<u64>();
    if total_weight == 0 {
        return Err(Error::NoVotes);
    }
    Ok(Profile { roster, ballots: kept, total_weight, spoiled, rules })
}

impl<B: Ballot> Profile<B> {
    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn candidate_count(&self) -> usize {
        self.roster.len()
    }

    pub fn ballots(&self) -> &[B] {
        &self.ballots
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    /// Weight of ballots dropped by lenient validation.
    pub fn spoiled(&self) -> u64 {
        self.spoiled
    }

    pub fn rules(&self) -> &B::Rules {
        &self.rules
    }
}

impl Profile<RankedBallot> {
    /// Strictly validated ranked profile.
    pub fn ranked(roster: Roster, ballots: Vec<RankedBallot>) -> Result<Self> {
        build_profile(roster, ballots, (), Validation::Strict)
    }

    /// First preferences as single-mark nominal ballots.
    pub fn first_preferences(&self) -> Profile<NominalBallot> {
        let ballots = self
            .ballots
            .iter()
            .map(|b| NominalBallot::single(b.weight, b.ranking[0]))
            .collect();
        Profile {
            roster: self.roster.clone(),
            ballots,
            total_weight: self.total_weight,
            spoiled: self.spoiled,
            rules: (),
        }
    }

    /// Every ballot restricted to `keep` (order preserved). Ballots left with
    /// no candidate are dropped.
    pub fn restricted_to(&self, keep: &[bool]) -> Option<Self> {
        let ballots: Vec<RankedBallot> = self
            .ballots
            .iter()
            .filter_map(|b| {
                let ranking: Vec<CandidateId> =
                    b.ranking.iter().copied().filter(|c| keep[c.index()]).collect();
                (!ranking.is_empty()).then(|| RankedBallot::new(b.weight, ranking))
            })
            .collect();
        let total_weight = ballots.iter().map(|b| b.weight).sum::<u64>();
        (total_weight > 0).then(|| Profile {
            roster: self.roster.clone(),
            ballots,
            total_weight,
            spoiled: self.spoiled,
            rules: (),
        })
    }

    /// Whether every ballot ranks every candidate.
    pub fn is_complete(&self) -> bool {
        let k = self.roster.len();
        self.ballots.iter().all(|b| b.ranking.len() == k)
    }
}

impl Profile<NominalBallot> {
    pub fn nominal(roster: Roster, ballots: Vec<NominalBallot>) -> Result<Self> {
        build_profile(roster, ballots, (), Validation::Strict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Roster {
        Roster::new(["A", "B", "C"]).unwrap()
    }

    #[test]
    fn election_one_total_weight() {
        let p = Profile::ranked(
            abc(),
            vec![
                RankedBallot::from_indices(4, &[0, 1, 2]),
                RankedBallot::from_indices(2, &[1, 2, 0]),
                RankedBallot::from_indices(3, &[2, 1, 0]),
            ],
        )
        .unwrap();
        assert_eq!(p.total_weight(), 9);
        assert_eq!(p.spoiled(), 0);
    }

    #[test]
    fn single_candidate_profile() {
        let p = Profile::ranked(
            Roster::new(["A"]).unwrap(),
            vec![RankedBallot::from_indices(1, &[0])],
        )
        .unwrap();
        assert_eq!(p.total_weight(), 1);
    }

    #[test]
    fn duplicate_in_ballot_is_rejected_strictly() {
        let err = Profile::ranked(abc(), vec![RankedBallot::from_indices(1, &[0, 0, 1])])
            .unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateCandidateInBallot { ballot: 0, candidate: CandidateId(0) }
        );
    }

    #[test]
    fn lenient_validation_counts_spoiled() {
        let p = build_profile(
            abc(),
            vec![
                RankedBallot::from_indices(3, &[0, 0]),
                RankedBallot::from_indices(2, &[1, 7]),
                RankedBallot::from_indices(5, &[2]),
            ],
            (),
            Validation::Lenient,
        )
        .unwrap();
        assert_eq!(p.total_weight(), 5);
        assert_eq!(p.spoiled(), 5);
    }

    #[test]
    fn roster_errors() {
        assert_eq!(Roster::new(Vec::<String>::new()), Err(Error::EmptyRoster));
        assert_eq!(Roster::new(["A", ""]), Err(Error::EmptyCandidateName(1)));
        assert!(matches!(Roster::new(["A", "A"]), Err(Error::DuplicateCandidateName(_))));
    }

    #[test]
    fn unknown_candidate_and_empty_ballot() {
        assert!(matches!(
            Profile::ranked(abc(), vec![RankedBallot::from_indices(1, &[3])]),
            Err(Error::UnknownCandidate { .. })
        ));
        assert_eq!(
            Profile::ranked(abc(), vec![RankedBallot::from_indices(1, &[])]),
            Err(Error::EmptyBallot(0))
        );
        assert_eq!(
            Profile::ranked(abc(), vec![RankedBallot::from_indices(0, &[1])]),
            Err(Error::ZeroWeight(0))
        );
    }

    #[test]
    fn cumulative_budget_and_cap() {
        let rules = CumulativeRules { budget: 9, cap: 2 };
        let over_cap = build_profile(
            abc(),
            vec![CumulativeBallot::dense(1, &[3, 0, 0])],
            rules,
            Validation::Strict,
        );
        assert!(matches!(over_cap, Err(Error::OverCap { .. })));
        let rules = CumulativeRules { budget: 3, cap: 2 };
        let over_budget = build_profile(
            abc(),
            vec![CumulativeBallot::dense(1, &[2, 2, 0])],
            rules,
            Validation::Strict,
        );
        assert!(matches!(over_budget, Err(Error::OverBudget { .. })));
    }

    #[test]
    fn score_range_is_enforced() {
        let r = build_profile(
            abc(),
            vec![ScoreBallot::dense(1, &[0, 6, 1])],
            ScoreRange::new(0, 5).unwrap(),
            Validation::Strict,
        );
        assert!(matches!(r, Err(Error::ScoreOutOfRange { score: 6, .. })));
    }

    #[test]
    fn restriction_drops_empty_ballots() {
        let p = Profile::ranked(
            abc(),
            vec![RankedBallot::from_indices(2, &[2]), RankedBallot::from_indices(3, &[1, 0])],
        )
        .unwrap();
        let r = p.restricted_to(&[true, true, false]).unwrap();
        assert_eq!(r.total_weight(), 3);
        assert_eq!(r.ballots()[0].ranking, vec![CandidateId(1), CandidateId(0)]);
    }
}
