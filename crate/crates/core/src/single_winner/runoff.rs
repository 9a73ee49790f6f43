//! Elimination-based methods: instant runoff, contingent vote, two-round
//! system, exhaustive ballot and Coombs' method.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{CandidateId, NominalBallot, Profile, RankedBallot, Roster};
use crate::rational::{self, Rational};
use crate::report::{Action, RoundReport, TallyResult};
use crate::tie::{Pick, TieBreaker, TiePolicy};

use super::{check_mark_limit, to_rationals, totals_map};

/// Instant runoff voting.
///
/// Each count compares the leader against an absolute-majority quota of
/// `floor(continuing / 2) + 1`, recomputed over non-exhausted ballots. Without
/// a majority the lowest candidate is excluded and each of their ballots moves
/// to its next continuing preference or, if none is left, to the exhausted
/// pile.
pub fn irv(profile: &Profile<RankedBallot>, tie: TiePolicy) -> Result<TallyResult> {
    let all: Vec<CandidateId> = profile.roster().ids().collect();
    irv_among(profile, &all, tie, "irv")
}

/// Instant runoff restricted to `candidates`; ballots skip everyone else.
pub(crate) fn irv_among(
    profile: &Profile<RankedBallot>,
    candidates: &[CandidateId],
    tie: TiePolicy,
    method: &str,
) -> Result<TallyResult> {
    let k = profile.candidate_count();
    let mut continuing = vec![false; k];
    for c in candidates {
        continuing[c.index()] = true;
    }
    let ballots = profile.ballots();
    let mut holder: Vec<Option<CandidateId>> =
        ballots.iter().map(|b| b.top_among(&continuing)).collect();
    let mut totals = vec![0u64; k];
    let mut exhausted = 0u64;
    for (b, h) in ballots.iter().zip(&holder) {
        match h {
            Some(c) => totals[c.index()] += b.weight,
            None => exhausted += b.weight,
        }
    }

    let mut tb = TieBreaker::new(tie);
    let mut history: Vec<Vec<Rational>> = Vec::new();
    let mut rounds = Vec::new();
    loop {
        let round = rounds.len() + 1;
        let remaining: Vec<CandidateId> =
            (0..k).filter(|&i| continuing[i]).map(CandidateId::new).collect();
        let values = to_rationals(&totals);
        let live: u64 = remaining.iter().map(|c| totals[c.index()]).sum();
        let quota = live / 2 + 1;
        let mut report =
            RoundReport::new(round, totals_map(remaining.iter().copied(), &values), rational::int(exhausted));
        report.quota = Some(rational::int(quota));

        let majority = remaining.iter().copied().find(|c| totals[c.index()] >= quota);
        if let Some(winner) = majority.or_else(|| (remaining.len() == 1).then(|| remaining[0])) {
            report.action = Action::Elected(vec![winner]);
            rounds.push(report);
            return Ok(TallyResult {
                method: String::from(method),
                winners: vec![winner],
                rounds,
                ties: tb.into_events(),
                scores: BTreeMap::new(),
            });
        }

        let loser = tb.extreme(round, &remaining, &values, Pick::Worst, &history, "irv exclusion")?;
        history.push(values);
        continuing[loser.index()] = false;
        let mut moved = vec![0u64; k];
        let mut to_exhausted = 0u64;
        for (i, b) in ballots.iter().enumerate() {
            if holder[i] == Some(loser) {
                holder[i] = b.top_among(&continuing);
                match holder[i] {
                    Some(c) => moved[c.index()] += b.weight,
                    None => to_exhausted += b.weight,
                }
            }
        }
        record_exclusion(&mut report, loser, totals[loser.index()], &moved, to_exhausted);
        totals[loser.index()] = 0;
        for (t, m) in totals.iter_mut().zip(&moved) {
            *t += m;
        }
        exhausted += to_exhausted;
        report.action = Action::Excluded(vec![loser]);
        rounds.push(report);
    }
}

fn record_exclusion(
    report: &mut RoundReport,
    loser: CandidateId,
    outflow: u64,
    moved: &[u64],
    to_exhausted: u64,
) {
    if outflow > 0 {
        report.transfers.insert(loser, -rational::int(outflow));
    }
    for (i, &m) in moved.iter().enumerate().filter(|(_, &m)| m > 0) {
        report.transfers.insert(CandidateId::new(i), rational::int(m));
    }
    report.exhausted_transfer = rational::int(to_exhausted);
}

/// Contingent vote: everyone but the top two is excluded at once after the
/// first count, and each of their ballots goes to whichever finalist it ranks
/// higher.
///
/// `max_prefs` truncates every ballot before counting (2 gives the
/// supplementary vote, 3 the Sri Lankan variant).
pub fn contingent(
    profile: &Profile<RankedBallot>,
    max_prefs: Option<usize>,
    tie: TiePolicy,
) -> Result<TallyResult> {
    let depth = match max_prefs {
        Some(0) => return Err(Error::InvalidParameter("max_prefs must be at least 1")),
        Some(d) => d,
        None => usize::MAX,
    };
    let k = profile.candidate_count();
    let ballots: Vec<(&[CandidateId], u64)> = profile
        .ballots()
        .iter()
        .map(|b| (&b.ranking[..b.ranking.len().min(depth)], b.weight))
        .collect();
    let mut first = vec![0u64; k];
    for (r, w) in &ballots {
        first[r[0].index()] += w;
    }
    let total = profile.total_weight();
    let all: Vec<CandidateId> = profile.roster().ids().collect();
    let values = to_rationals(&first);
    let mut tb = TieBreaker::new(tie);
    let mut report = RoundReport::new(1, totals_map(all.iter().copied(), &values), rational::zero());
    report.quota = Some(rational::int(total / 2 + 1));

    let majority = all.iter().copied().find(|c| first[c.index()] > total / 2);
    if let Some(winner) = majority.or_else(|| (k == 1).then(|| all[0])) {
        report.action = Action::Elected(vec![winner]);
        return Ok(TallyResult {
            method: String::from("contingent"),
            winners: vec![winner],
            rounds: vec![report],
            ties: tb.into_events(),
            scores: BTreeMap::new(),
        });
    }

    let finalists = tb.top_n(1, &all, &values, 2, "contingent finalist")?;
    let is_finalist = |c: CandidateId| finalists.contains(&c);
    let excluded: Vec<CandidateId> = all.iter().copied().filter(|&c| !is_finalist(c)).collect();
    let mut second = vec![0u64; k];
    let mut exhausted = 0u64;
    for (r, w) in &ballots {
        match r.iter().copied().find(|&c| is_finalist(c)) {
            Some(c) => second[c.index()] += w,
            None => exhausted += w,
        }
    }
    for &c in &excluded {
        if first[c.index()] > 0 {
            report.transfers.insert(c, -rational::int(first[c.index()]));
        }
    }
    for &f in &finalists {
        let gain = second[f.index()] - first[f.index()];
        if gain > 0 {
            report.transfers.insert(f, rational::int(gain));
        }
    }
    report.exhausted_transfer = rational::int(exhausted);
    report.action = Action::Excluded(excluded);

    let second_values = to_rationals(&second);
    let mut runoff = RoundReport::new(
        2,
        totals_map(finalists.iter().copied(), &second_values),
        rational::int(exhausted),
    );
    runoff.quota = Some(rational::int((total - exhausted) / 2 + 1));
    let winner = tb.extreme(2, &finalists, &second_values, Pick::Best, &[values], "contingent runoff")?;
    runoff.action = Action::Elected(vec![winner]);
    Ok(TallyResult {
        method: String::from("contingent"),
        winners: vec![winner],
        rounds: vec![report, runoff],
        ties: tb.into_events(),
        scores: BTreeMap::new(),
    })
}

/// First-round decision of the two-round system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Elected(CandidateId),
    Runoff(CandidateId, CandidateId),
}

/// First round of the two-round system: an absolute majority elects,
/// otherwise the top two go to a runoff.
pub fn two_round_engine(round1: &Profile<NominalBallot>, tie: TiePolicy) -> Result<Decision> {
    let mut tb = TieBreaker::new(tie);
    first_round(round1, &mut tb)
}

fn first_round(round1: &Profile<NominalBallot>, tb: &mut TieBreaker) -> Result<Decision> {
    check_mark_limit(round1, 1)?;
    let totals = super::nominal_totals(round1);
    let total = round1.total_weight();
    let all: Vec<CandidateId> = round1.roster().ids().collect();
    if let Some(c) = all.iter().copied().find(|c| totals[c.index()] > total / 2) {
        return Ok(Decision::Elected(c));
    }
    if all.len() == 1 {
        return Ok(Decision::Elected(all[0]));
    }
    let top = tb.top_n(1, &all, &to_rationals(&totals), 2, "two-round finalist")?;
    Ok(Decision::Runoff(top[0], top[1]))
}

/// Runoff between the two finalists; simple majority.
pub fn two_round_final(
    pair: (CandidateId, CandidateId),
    round2: &Profile<NominalBallot>,
    tie: TiePolicy,
) -> Result<CandidateId> {
    let mut tb = TieBreaker::new(tie);
    final_round(pair, round2, &mut tb)
}

fn final_round(
    pair: (CandidateId, CandidateId),
    round2: &Profile<NominalBallot>,
    tb: &mut TieBreaker,
) -> Result<CandidateId> {
    check_mark_limit(round2, 1)?;
    if let Some(i) = round2
        .ballots()
        .iter()
        .position(|b| b.marks[0] != pair.0 && b.marks[0] != pair.1)
    {
        return Err(Error::NonFinalistMark(i));
    }
    let totals = to_rationals(&super::nominal_totals(round2));
    tb.extreme(2, &[pair.0, pair.1], &totals, Pick::Best, &[], "two-round runoff")
}

/// Two-round system simulated from a ranked profile: voters cast their first
/// preference, then back whichever finalist they rank higher (or abstain).
pub fn two_round_simulated(profile: &Profile<RankedBallot>, tie: TiePolicy) -> Result<TallyResult> {
    let mut tb = TieBreaker::new(tie);
    let round1 = profile.first_preferences();
    let first = super::nominal_totals(&round1);
    let first_values = to_rationals(&first);
    let all: Vec<CandidateId> = profile.roster().ids().collect();
    let mut report = RoundReport::new(1, totals_map(all.iter().copied(), &first_values), rational::zero());
    report.quota = Some(rational::int(profile.total_weight() / 2 + 1));
    let (a, b) = match first_round(&round1, &mut tb)? {
        Decision::Elected(c) => {
            report.action = Action::Elected(vec![c]);
            return Ok(TallyResult {
                method: String::from("two-round"),
                winners: vec![c],
                rounds: vec![report],
                ties: tb.into_events(),
                scores: BTreeMap::new(),
            });
        }
        Decision::Runoff(a, b) => (a, b),
    };
    report.action = Action::Runoff(a, b);

    let votes: Vec<NominalBallot> = profile
        .ballots()
        .iter()
        .filter_map(|bal| {
            bal.ranking
                .iter()
                .copied()
                .find(|&c| c == a || c == b)
                .map(|c| NominalBallot::single(bal.weight, c))
        })
        .collect();
    let second = match Profile::nominal(profile.roster().clone(), votes) {
        Ok(round2) => super::nominal_totals(&round2),
        Err(Error::NoVotes) => vec![0; all.len()],
        Err(e) => return Err(e),
    };
    let voted = second[a.index()] + second[b.index()];
    let second_values = to_rationals(&second);
    let mut runoff = RoundReport::new(
        2,
        totals_map([a, b], &second_values),
        rational::int(profile.total_weight() - voted),
    );
    runoff.quota = Some(rational::int(voted / 2 + 1));
    let winner = tb.extreme(2, &[a, b], &second_values, Pick::Best, &[first_values], "two-round runoff")?;
    runoff.action = Action::Elected(vec![winner]);
    Ok(TallyResult {
        method: String::from("two-round"),
        winners: vec![winner],
        rounds: vec![report, runoff],
        ties: tb.into_events(),
        scores: BTreeMap::new(),
    })
}

/// Result of one round of the exhaustive ballot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoundOutcome {
    Elected(CandidateId),
    Eliminated(CandidateId),
}

/// Round-by-round engine for the exhaustive ballot. Each round is a fresh
/// single-mark vote among the continuing candidates; without an absolute
/// majority the lowest candidate is eliminated.
///
/// The exhausted column of the report is the drop in turnout relative to
/// round one, and each round's transfers are the net changes to the next
/// round's totals.
#[derive(Clone, Debug)]
pub struct ExhaustiveBallot {
    method: String,
    continuing: Vec<bool>,
    tb: TieBreaker,
    rounds: Vec<RoundReport>,
    history: Vec<Vec<Rational>>,
    first_weight: Option<u64>,
    winner: Option<CandidateId>,
}

impl ExhaustiveBallot {
    pub fn new(roster: &Roster, tie: TiePolicy) -> Self {
        ExhaustiveBallot {
            method: String::from("exhaustive"),
            continuing: vec![true; roster.len()],
            tb: TieBreaker::new(tie),
            rounds: Vec::new(),
            history: Vec::new(),
            first_weight: None,
            winner: None,
        }
    }

    pub fn continuing(&self) -> Vec<CandidateId> {
        (0..self.continuing.len()).filter(|&i| self.continuing[i]).map(CandidateId::new).collect()
    }

    pub fn winner(&self) -> Option<CandidateId> {
        self.winner
    }

    /// Counts one round of voting.
    pub fn vote(&mut self, round: &Profile<NominalBallot>) -> Result<RoundOutcome> {
        if let Some(w) = self.winner {
            return Ok(RoundOutcome::Elected(w));
        }
        check_mark_limit(round, 1)?;
        for (i, b) in round.ballots().iter().enumerate() {
            let c = b.marks[0];
            if !self.continuing[c.index()] {
                return Err(Error::MarkForEliminatedCandidate { ballot: i, candidate: c });
            }
        }
        self.count(super::nominal_totals(round))
    }

    fn count(&mut self, totals: Vec<u64>) -> Result<RoundOutcome> {
        let weight: u64 = totals.iter().sum();
        let first = *self.first_weight.get_or_insert(weight);
        let exhausted = rational::int(first.saturating_sub(weight));
        let values = to_rationals(&totals);
        if let Some(prev) = self.rounds.last_mut() {
            for (c, old) in &prev.totals {
                let delta = &values[c.index()] - old;
                if delta != rational::zero() {
                    prev.transfers.insert(*c, delta);
                }
            }
            prev.exhausted_transfer = &exhausted - &prev.exhausted;
        }

        let round = self.rounds.len() + 1;
        let remaining = self.continuing();
        let quota = weight / 2 + 1;
        let mut report = RoundReport::new(round, totals_map(remaining.iter().copied(), &values), exhausted);
        report.quota = Some(rational::int(quota));
        let majority = remaining.iter().copied().find(|c| totals[c.index()] >= quota);
        let outcome = match majority.or_else(|| (remaining.len() == 1).then(|| remaining[0])) {
            Some(w) => {
                self.winner = Some(w);
                report.action = Action::Elected(vec![w]);
                RoundOutcome::Elected(w)
            }
            None => {
                let loser = self.tb.extreme(
                    round,
                    &remaining,
                    &values,
                    Pick::Worst,
                    &self.history,
                    "exhaustive elimination",
                )?;
                self.continuing[loser.index()] = false;
                report.action = Action::Excluded(vec![loser]);
                RoundOutcome::Eliminated(loser)
            }
        };
        self.history.push(values);
        self.rounds.push(report);
        Ok(outcome)
    }

    pub fn finish(self) -> Result<TallyResult> {
        let winner = self.winner.ok_or(Error::RoundsExhausted)?;
        Ok(TallyResult {
            method: self.method,
            winners: vec![winner],
            rounds: self.rounds,
            ties: self.tb.into_events(),
            scores: BTreeMap::new(),
        })
    }
}

/// Runs the exhaustive ballot over a pre-recorded sequence of rounds.
pub fn exhaustive_engine(rounds: &[Profile<NominalBallot>], tie: TiePolicy) -> Result<TallyResult> {
    let roster = rounds.first().ok_or(Error::RoundsExhausted)?.roster();
    let mut engine = ExhaustiveBallot::new(roster, tie);
    for round in rounds {
        if let RoundOutcome::Elected(_) = engine.vote(round)? {
            break;
        }
    }
    engine.finish()
}

/// Exhaustive ballot in which every voter keeps the preferences of a ranked
/// ballot and, each round, votes for their highest continuing choice.
pub fn exhaustive_simulated(profile: &Profile<RankedBallot>, tie: TiePolicy) -> Result<TallyResult> {
    let k = profile.candidate_count();
    let mut engine = ExhaustiveBallot::new(profile.roster(), tie);
    loop {
        let mut totals = vec![0u64; k];
        for b in profile.ballots() {
            if let Some(c) = b.top_among(&engine.continuing) {
                totals[c.index()] += b.weight;
            }
        }
        if let RoundOutcome::Elected(_) = engine.count(totals)? {
            return engine.finish();
        }
    }
}

/// Coombs' method: without a first-preference majority, exclude the
/// candidate ranked last (among those continuing) on the most ballots.
/// Every ballot must rank every candidate.
pub fn coombs(profile: &Profile<RankedBallot>, tie: TiePolicy) -> Result<TallyResult> {
    let k = profile.candidate_count();
    if let Some(i) = profile.ballots().iter().position(|b| b.ranking.len() != k) {
        return Err(Error::IncompleteRankingForCoombs(i));
    }
    let ballots = profile.ballots();
    let total = profile.total_weight();
    let quota = total / 2 + 1;
    let mut continuing = vec![true; k];
    let mut tb = TieBreaker::new(tie);
    let mut history: Vec<Vec<Rational>> = Vec::new();
    let mut rounds = Vec::new();
    loop {
        let round = rounds.len() + 1;
        let remaining: Vec<CandidateId> =
            (0..k).filter(|&i| continuing[i]).map(CandidateId::new).collect();
        let mut first = vec![0u64; k];
        let mut last = vec![0u64; k];
        let mut tops = Vec::with_capacity(ballots.len());
        for b in ballots {
            let top = b.top_among(&continuing).expect("complete ranking");
            let bottom = b.ranking.iter().rev().copied().find(|c| continuing[c.index()]);
            first[top.index()] += b.weight;
            last[bottom.expect("complete ranking").index()] += b.weight;
            tops.push(top);
        }
        let values = to_rationals(&first);
        let mut report = RoundReport::new(round, totals_map(remaining.iter().copied(), &values), rational::zero());
        report.quota = Some(rational::int(quota));
        let majority = remaining.iter().copied().find(|c| first[c.index()] >= quota);
        if let Some(winner) = majority.or_else(|| (remaining.len() == 1).then(|| remaining[0])) {
            report.action = Action::Elected(vec![winner]);
            rounds.push(report);
            return Ok(TallyResult {
                method: String::from("coombs"),
                winners: vec![winner],
                rounds,
                ties: tb.into_events(),
                scores: BTreeMap::new(),
            });
        }
        let most_last = remaining.iter().map(|c| last[c.index()]).max().expect("non-empty");
        let tied: Vec<CandidateId> =
            remaining.iter().copied().filter(|c| last[c.index()] == most_last).collect();
        let loser = tb.pick(round, &tied, Pick::Worst, &history, "coombs exclusion")?;
        history.push(values);
        continuing[loser.index()] = false;
        let mut moved = vec![0u64; k];
        for (b, _) in ballots.iter().zip(&tops).filter(|(_, &t)| t == loser) {
            let next = b.top_among(&continuing).expect("complete ranking");
            moved[next.index()] += b.weight;
        }
        record_exclusion(&mut report, loser, first[loser.index()], &moved, 0);
        report.action = Action::Excluded(vec![loser]);
        rounds.push(report);
    }
}
