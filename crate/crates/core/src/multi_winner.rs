//! Multi-winner candidate methods: block vote and its limited variants, and
//! the single transferable vote.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::apportionment::{exact_quota, QuotaKind};
use crate::error::{Error, Result};
use crate::model::{CandidateId, NominalBallot, Profile, RankedBallot};
use crate::rational::{self, Rational};
use crate::report::{Action, RoundReport, TallyResult};
use crate::single_winner::{check_mark_limit, nominal_totals, to_rationals, totals_map};
use crate::tie::{Pick, TieBreaker, TiePolicy};

pub use crate::apportionment::party_block_vote;

/// Block vote with at most `mark_limit` marks per ballot; the `seats`
/// candidates with most marks are elected.
///
/// `mark_limit == seats` is the block vote, `1 < mark_limit < seats` the
/// limited vote and `mark_limit == 1` the single non-transferable vote.
pub fn block_vote(
    profile: &Profile<NominalBallot>,
    seats: usize,
    mark_limit: usize,
    tie: TiePolicy,
) -> Result<TallyResult> {
    check_seats(seats, profile.candidate_count())?;
    check_mark_limit(profile, mark_limit)?;
    let values = to_rationals(&nominal_totals(profile));
    let ids: Vec<CandidateId> = profile.roster().ids().collect();
    let mut tb = TieBreaker::new(tie);
    let winners = tb.top_n(1, &ids, &values, seats, "block vote seat")?;
    let method = match mark_limit {
        1 if seats > 1 => "sntv",
        m if m < seats => "limited-vote",
        _ => "block-vote",
    };
    let mut report = RoundReport::new(1, totals_map(ids.iter().copied(), &values), rational::zero());
    report.action = Action::Elected(winners.clone());
    Ok(TallyResult {
        method: String::from(method),
        winners,
        rounds: vec![report],
        ties: tb.into_events(),
        scores: totals_map(ids, &values),
    })
}

fn check_seats(seats: usize, candidates: usize) -> Result<()> {
    if seats == 0 {
        Err(Error::ZeroSeats)
    } else if seats > candidates {
        Err(Error::SeatsExceedCandidates { seats, candidates })
    } else {
        Ok(())
    }
}

/// How a surplus is passed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SurplusMethod {
    /// Every ballot held by the elected candidate moves on at value
    /// `surplus / total` times its current value.
    #[default]
    InclusiveGregory,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StvConfig {
    pub seats: usize,
    pub quota_kind: QuotaKind,
    pub surplus: SurplusMethod,
    pub tie: TiePolicy,
    /// Decimal places used when rendering transfer values.
    pub display_scale: usize,
    /// Recompute the quota each count from the non-exhausted total.
    pub recompute_quota: bool,
}

impl StvConfig {
    pub fn new(seats: usize) -> Self {
        StvConfig {
            seats,
            quota_kind: QuotaKind::Droop,
            surplus: SurplusMethod::InclusiveGregory,
            tie: TiePolicy::default(),
            display_scale: 2,
            recompute_quota: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Continuing,
    Elected,
    Excluded,
}

struct Count<'a> {
    ballots: &'a [RankedBallot],
    status: Vec<Status>,
    /// Candidate currently holding each ballot.
    holder: Vec<Option<CandidateId>>,
    /// Current value of one unit of each ballot.
    value: Vec<Rational>,
    totals: Vec<Rational>,
    exhausted: Rational,
}

impl Count<'_> {
    fn continuing_mask(&self) -> Vec<bool> {
        self.status.iter().map(|s| *s == Status::Continuing).collect()
    }

    fn continuing(&self) -> Vec<CandidateId> {
        ids_where(&self.status, Status::Continuing)
    }

    /// Moves every ballot held by `from` on to its next continuing
    /// preference, scaling its value by `factor`.
    fn transfer(&mut self, from: CandidateId, factor: &Rational, report: &mut RoundReport) {
        let mask = self.continuing_mask();
        let mut moved = vec![rational::zero(); self.status.len()];
        let mut to_exhausted = rational::zero();
        for (i, b) in self.ballots.iter().enumerate() {
            if self.holder[i] != Some(from) {
                continue;
            }
            self.value[i] = &self.value[i] * factor;
            let amount = &self.value[i] * rational::int(b.weight);
            self.holder[i] = b.top_among(&mask);
            match self.holder[i] {
                Some(c) => moved[c.index()] += amount,
                None => to_exhausted += amount,
            }
        }
        let outflow = moved.iter().fold(to_exhausted.clone(), |acc, m| acc + m);
        if !outflow.is_zero() {
            report.transfers.insert(from, -outflow.clone());
        }
        self.totals[from.index()] -= outflow;
        for (i, m) in moved.into_iter().enumerate() {
            if !m.is_zero() {
                self.totals[i] += &m;
                report.transfers.insert(CandidateId::new(i), m);
            }
        }
        self.exhausted += &to_exhausted;
        report.exhausted_transfer = to_exhausted;
    }
}

fn ids_where(status: &[Status], wanted: Status) -> Vec<CandidateId> {
    status
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == wanted)
        .map(|(i, _)| CandidateId::new(i))
        .collect()
}

/// Single transferable vote.
///
/// Each count first elects every continuing candidate at or above the quota,
/// largest total first, and distributes the first of their surpluses. Later
/// counts distribute any pending surpluses in that order. With nothing left
/// to distribute the lowest continuing candidate is excluded and all their
/// ballots move on at their current value. The count stops when every seat
/// is filled or when the continuing candidates just fill the remaining seats.
/// All values are exact.
pub fn stv(profile: &Profile<RankedBallot>, config: &StvConfig) -> Result<TallyResult> {
    let k = profile.candidate_count();
    check_seats(config.seats, k)?;
    let ballots = profile.ballots();
    let mut count = Count {
        ballots,
        status: vec![Status::Continuing; k],
        holder: ballots.iter().map(|b| b.ranking.first().copied()).collect(),
        value: vec![rational::one(); ballots.len()],
        totals: vec![rational::zero(); k],
        exhausted: rational::zero(),
    };
    for (b, h) in ballots.iter().zip(&count.holder) {
        match h {
            Some(c) => count.totals[c.index()] += rational::int(b.weight),
            None => count.exhausted += rational::int(b.weight),
        }
    }
    let valid = rational::int(profile.total_weight());
    let seats = config.seats as u64;
    let mut quota = exact_quota(config.quota_kind, &valid, seats)?;
    if quota.is_zero() {
        return Err(Error::InvalidQuota);
    }

    let mut tb = TieBreaker::new(config.tie);
    let mut history: Vec<Vec<Rational>> = Vec::new();
    let mut rounds: Vec<RoundReport> = Vec::new();
    let mut winners: Vec<CandidateId> = Vec::new();
    let mut pending: Vec<CandidateId> = Vec::new();
    loop {
        let round = rounds.len() + 1;
        if config.recompute_quota {
            let live = &valid - &count.exhausted;
            quota = exact_quota(config.quota_kind, &live, seats)?;
        }
        let in_count: Vec<CandidateId> =
            (0..k).map(CandidateId::new).filter(|c| count.status[c.index()] != Status::Excluded).collect();
        let mut report = RoundReport::new(round, totals_map(in_count, &count.totals), count.exhausted.clone());
        report.quota = Some(quota.clone());
        let continuing = count.continuing();
        let remaining = config.seats - winners.len();

        let reached: Vec<CandidateId> =
            continuing.iter().copied().filter(|c| count.totals[c.index()] >= quota).collect();
        if !reached.is_empty() {
            let take = reached.len().min(remaining);
            let ordered = tb.top_n(round, &reached, &count.totals, take, "stv election order")?;
            for &c in &ordered {
                count.status[c.index()] = Status::Elected;
                winners.push(c);
                if count.totals[c.index()] > quota {
                    pending.push(c);
                }
            }
            report.action = Action::Elected(ordered);
            if winners.len() == config.seats {
                rounds.push(report);
                break;
            }
            if let Some(&first) = pending.first() {
                if pending_elected_this_round(&report, first) {
                    pending.remove(0);
                    distribute_surplus(&mut count, first, &quota, &mut report);
                }
            }
            history.push(count_snapshot(&report, k));
            rounds.push(report);
            continue;
        }

        if continuing.len() <= remaining {
            for &c in &continuing {
                count.status[c.index()] = Status::Elected;
            }
            winners.extend(continuing.iter().copied());
            report.action = Action::Elected(continuing);
            rounds.push(report);
            break;
        }

        if !pending.is_empty() {
            let c = pending.remove(0);
            distribute_surplus(&mut count, c, &quota, &mut report);
            report.action = Action::SurplusTransferred(c);
            history.push(count_snapshot(&report, k));
            rounds.push(report);
            continue;
        }

        let values = count.totals.clone();
        let loser = tb.extreme(round, &continuing, &values, Pick::Worst, &history, "stv exclusion")?;
        history.push(values);
        count.status[loser.index()] = Status::Excluded;
        count.transfer(loser, &rational::one(), &mut report);
        report.action = Action::Excluded(vec![loser]);
        rounds.push(report);
    }

    Ok(TallyResult {
        method: String::from("stv"),
        winners,
        rounds,
        ties: tb.into_events(),
        scores: BTreeMap::new(),
    })
}

fn pending_elected_this_round(report: &RoundReport, c: CandidateId) -> bool {
    matches!(&report.action, Action::Elected(list) if list.first() == Some(&c))
}

fn distribute_surplus(count: &mut Count<'_>, c: CandidateId, quota: &Rational, report: &mut RoundReport) {
    let total = count.totals[c.index()].clone();
    let surplus = &total - quota;
    match SurplusMethod::InclusiveGregory {
        SurplusMethod::InclusiveGregory => count.transfer(c, &(surplus / total), report),
    }
    count.totals[c.index()] = quota.clone();
}

fn count_snapshot(report: &RoundReport, k: usize) -> Vec<Rational> {
    (0..k)
        .map(|i| report.totals.get(&CandidateId::new(i)).cloned().unwrap_or_else(rational::zero))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Roster;
    use crate::rational::{display_truncated, ratio};

    fn ranked(names: &[&str], lines: &[(u64, &[usize])]) -> Profile<RankedBallot> {
        Profile::ranked(
            Roster::new(names.iter().copied()).unwrap(),
            lines.iter().map(|(w, r)| RankedBallot::from_indices(*w, r)).collect(),
        )
        .unwrap()
    }

    fn nominal(k: usize, lines: &[(u64, &[usize])]) -> Profile<NominalBallot> {
        Profile::nominal(
            Roster::lettered(k),
            lines.iter().map(|(w, m)| NominalBallot::from_indices(*w, m)).collect(),
        )
        .unwrap()
    }

    const A: CandidateId = CandidateId(0);
    const B: CandidateId = CandidateId(1);
    const C: CandidateId = CandidateId(2);
    const D: CandidateId = CandidateId(3);

    #[test]
    fn block_vote_top_two() {
        let p = nominal(3, &[(3, &[0, 1]), (2, &[2])]);
        assert_eq!(block_vote(&p, 2, 2, TiePolicy::Error).unwrap().winners, vec![A, B]);
        assert!(matches!(block_vote(&p, 2, 1, TiePolicy::Error), Err(Error::MarkLimitViolation { .. })));
    }

    #[test]
    fn sntv_tie_for_last_seat() {
        let p = nominal(3, &[(5, &[0]), (4, &[1]), (4, &[2])]);
        let err = block_vote(&p, 2, 1, TiePolicy::Error);
        assert!(matches!(err, Err(Error::TieUnresolved { .. })));
        let ok = block_vote(&p, 2, 1, TiePolicy::FirstListed).unwrap();
        assert_eq!(ok.winners, vec![A, B]);
        assert_eq!(ok.method, "sntv");
    }

    #[test]
    fn aboriginal_land_council() {
        // K, M, N, S
        let p = ranked(
            &["K", "M", "N", "S"],
            &[(4, &[0, 1]), (3, &[0, 2]), (13, &[1]), (18, &[2]), (6, &[3, 0]), (15, &[3, 1]), (12, &[3, 2])],
        );
        let r = stv(&p, &StvConfig::new(2)).unwrap();
        assert_eq!(r.winners, vec![D, C]);
        let first = &r.rounds[0];
        assert_eq!(first.quota, Some(rational::int(24)));
        assert_eq!(first.action, Action::Elected(vec![D]));
        let shown: Vec<String> = [A, B, C].iter().map(|c| display_truncated(&first.transfers[c], 2)).collect();
        assert_eq!(shown, ["1.63", "4.09", "3.27"]);
        assert_eq!(r.rounds[1].action, Action::Excluded(vec![A]));
        assert_eq!(r.rounds[1].total_of(A), Some(&ratio(285, 33)));
        assert_eq!(r.rounds[2].action, Action::Elected(vec![C]));
        assert_eq!(display_truncated(r.rounds[2].total_of(C).unwrap(), 2), "24.27");
        for round in &r.rounds {
            assert_eq!(round.accounted(), rational::int(71));
            assert!(round.transfers_balance());
        }
    }

    #[test]
    fn surplus_then_quota() {
        let p = ranked(&["A", "B", "C"], &[(10, &[0, 1]), (5, &[1]), (4, &[2])]);
        let r = stv(&p, &StvConfig::new(2)).unwrap();
        assert_eq!(r.rounds[0].quota, Some(rational::int(7)));
        assert_eq!(r.rounds[0].transfers[&B], rational::int(3));
        assert_eq!(r.winners, vec![A, B]);
        assert_eq!(r.rounds[1].total_of(B), Some(&rational::int(8)));
    }

    #[test]
    fn remaining_candidates_fill_remaining_seats() {
        let p = ranked(&["A", "B", "C"], &[(3, &[0]), (2, &[1]), (1, &[2])]);
        let r = stv(&p, &StvConfig::new(3)).unwrap();
        // A and B reach the quota of 2; C then fills the last seat unopposed.
        assert_eq!(r.winners, vec![A, B, C]);
        assert_eq!(r.rounds.last().unwrap().action, Action::Elected(vec![C]));
    }

    #[test]
    fn seat_errors() {
        let p = ranked(&["A", "B"], &[(1, &[0])]);
        assert!(matches!(stv(&p, &StvConfig::new(3)), Err(Error::SeatsExceedCandidates { .. })));
        assert!(matches!(stv(&p, &StvConfig::new(0)), Err(Error::ZeroSeats)));
    }

    #[test]
    fn recomputed_quota_follows_exhaustion() {
        let p = ranked(&["A", "B", "C", "D"], &[(5, &[0]), (4, &[1]), (3, &[2, 3]), (2, &[3])]);
        let mut config = StvConfig::new(1);
        config.recompute_quota = true;
        let r = stv(&p, &config).unwrap();
        for round in &r.rounds {
            let live = rational::int(14) - &round.exhausted;
            assert_eq!(round.quota, Some((live / rational::int(2)).floor() + rational::one()));
        }
    }
}
