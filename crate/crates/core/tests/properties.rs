mod common;

use ballotworks_core::apportionment::{highest_averages, largest_remainder, DivisorFamily, PartyVotes, QuotaKind};
use ballotworks_core::mixed::{mmp, parallel, MixedInput};
use ballotworks_core::multi_winner::{stv, StvConfig};
use ballotworks_core::rational::{self, Rational};
use ballotworks_core::single_winner::{
    approval, borda, fptp, irv, range_voting, schulze_tally, smith_set, BordaScheme, SchulzeStrength,
};
use ballotworks_core::{
    build_profile, NominalBallot, PairwiseMatrix, Profile, RankedBallot, Roster, ScoreBallot, ScoreRange, TiePolicy,
    Validation,
};
use proptest::prelude::*;

use common::c;

/// Ballot lines over `k` candidates: a weight and a ranking of length
/// `1..=k`, or always `k` when `complete`.
fn lines(k: usize, complete: bool) -> impl Strategy<Value = Vec<(u64, Vec<usize>)>> {
    let line = (1u64..=6, Just((0..k).collect::<Vec<_>>()).prop_shuffle(), 1..=k)
        .prop_map(move |(w, order, len)| (w, order[..if complete { k } else { len }].to_vec()));
    prop::collection::vec(line, 1..12)
}

fn ranked(k: usize, lines: &[(u64, Vec<usize>)]) -> Profile<RankedBallot> {
    let ballots = lines.iter().map(|(w, r)| RankedBallot::from_indices(*w, r)).collect();
    Profile::ranked(Roster::lettered(k), ballots).unwrap()
}

fn party_votes(votes: &[u64]) -> PartyVotes {
    let names: Vec<String> = (0..votes.len()).map(|i| format!("P{i}")).collect();
    PartyVotes::new(&names, votes.iter().map(|&v| rational::int(v)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn approval_is_binary_range_voting(k in 2usize..6, raw in lines(5, false)) {
        let marks: Vec<(u64, Vec<usize>)> =
            raw.into_iter().map(|(w, r)| (w, r.into_iter().filter(|&x| x < k).collect::<Vec<_>>())).filter(|(_, r)| !r.is_empty()).collect();
        prop_assume!(!marks.is_empty());
        let nominal = Profile::nominal(
            Roster::lettered(k),
            marks.iter().map(|(w, m)| NominalBallot::from_indices(*w, m)).collect(),
        ).unwrap();
        let scores = marks
            .iter()
            .map(|(w, m)| ScoreBallot::dense(*w, &(0..k).map(|i| i64::from(m.contains(&i))).collect::<Vec<_>>()))
            .collect();
        let scored = build_profile(Roster::lettered(k), scores, ScoreRange::new(0, 1).unwrap(), Validation::Strict).unwrap();
        let a = approval(&nominal, TiePolicy::FirstListed).unwrap();
        let r = range_voting(&scored, TiePolicy::FirstListed).unwrap();
        prop_assert_eq!(a.winners, r.winners);
    }

    #[test]
    fn plurality_rewards_an_extra_vote(raw in lines(4, true)) {
        let p = ranked(4, &raw).first_preferences();
        let w = fptp(&p, TiePolicy::FirstListed).unwrap().winner();
        let mut ballots = p.ballots().to_vec();
        ballots.push(NominalBallot::single(1, w));
        let more = Profile::nominal(p.roster().clone(), ballots).unwrap();
        prop_assert_eq!(fptp(&more, TiePolicy::FirstListed).unwrap().winner(), w);
    }

    #[test]
    fn borda_winner_survives_being_raised(raw in lines(4, true), line in 0usize..12) {
        let p = ranked(4, &raw);
        let w = borda(&p, &BordaScheme::Standard, TiePolicy::FirstListed).unwrap().winner();
        let mut changed = raw.clone();
        let r = &mut changed[line % raw.len()].1;
        let at = r.iter().position(|&x| x == w.index()).unwrap();
        if at > 0 {
            r.swap(at, at - 1);
        }
        let q = ranked(4, &changed);
        prop_assert_eq!(borda(&q, &BordaScheme::Standard, TiePolicy::FirstListed).unwrap().winner(), w);
    }

    #[test]
    fn irv_winner_holds_a_final_majority(k in 2usize..6, raw in lines(5, false)) {
        let raw: Vec<_> = raw.into_iter().map(|(w, r)| (w, r.into_iter().filter(|&x| x < k).collect::<Vec<_>>())).filter(|(_, r)| !r.is_empty()).collect();
        prop_assume!(!raw.is_empty());
        let p = ranked(k, &raw);
        let r = irv(&p, TiePolicy::FirstListed).unwrap();
        let last = r.rounds.last().unwrap();
        let active = common::sum(last.totals.values().cloned());
        let top = last.totals.get(&r.winner()).unwrap().clone();
        prop_assert!(top * rational::int(2) > active || last.totals.len() <= 2);
    }

    #[test]
    fn condorcet_methods_agree_with_a_condorcet_winner(raw in lines(4, false)) {
        let p = ranked(4, &raw);
        let m = PairwiseMatrix::from_profile(&p);
        if let Some(cw) = m.condorcet_winner() {
            prop_assert_eq!(smith_set(&m), vec![cw]);
            let s = schulze_tally(&p, SchulzeStrength::WinningVotes, TiePolicy::Error).unwrap();
            prop_assert_eq!(s.winner(), cw);
        }
        let smith = smith_set(&m);
        for &x in &smith {
            for y in (0..4).map(c).filter(|y| !smith.contains(y)) {
                prop_assert!(m.beats(x, y));
            }
        }
    }

    #[test]
    fn stv_fills_every_seat_once(k in 2usize..7, seats in 1usize..4, raw in lines(6, false)) {
        let raw: Vec<_> = raw.into_iter().map(|(w, r)| (w, r.into_iter().filter(|&x| x < k).collect::<Vec<_>>())).filter(|(_, r)| !r.is_empty()).collect();
        prop_assume!(!raw.is_empty() && seats <= k);
        let r = stv(&ranked(k, &raw), &StvConfig::new(seats)).unwrap();
        let mut w = r.winners.clone();
        w.sort();
        w.dedup();
        prop_assert_eq!(w.len(), seats);
    }

    #[test]
    fn seeded_ties_replay(raw in lines(3, true), seed in any::<u64>()) {
        let p = ranked(3, &raw);
        let a = stv(&p, &StvConfig { tie: TiePolicy::SeededRandom(seed), ..StvConfig::new(2) }).unwrap();
        let b = stv(&p, &StvConfig { tie: TiePolicy::SeededRandom(seed), ..StvConfig::new(2) }).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn divisor_methods_are_house_monotone(votes in prop::collection::vec(1u64..100_000, 2..7), seats in 1u64..15) {
        let v = party_votes(&votes);
        for family in [DivisorFamily::DHondt, DivisorFamily::SainteLague, DivisorFamily::Danish] {
            let a = highest_averages(&v, seats, &family, &rational::zero(), TiePolicy::FirstListed).unwrap();
            let b = highest_averages(&v, seats + 1, &family, &rational::zero(), TiePolicy::FirstListed).unwrap();
            prop_assert_eq!(a.house_size(), seats);
            prop_assert!(a.seats.iter().zip(&b.seats).all(|(x, y)| x <= y));
        }
    }

    #[test]
    fn hare_remainders_respect_the_quota_rule(votes in prop::collection::vec(1u64..100_000, 2..7), seats in 1u64..20) {
        let v = party_votes(&votes);
        let a = largest_remainder(&v, seats, QuotaKind::Hare, &rational::zero(), TiePolicy::FirstListed).unwrap();
        let total: u64 = votes.iter().sum();
        prop_assert_eq!(a.house_size(), seats);
        for (&s, &x) in a.seats.iter().zip(&votes) {
            let share = Rational::new((x * seats).into(), total.into());
            prop_assert!(rational::int(s) >= share.floor() && rational::int(s) <= share.ceil());
        }
    }

    #[test]
    fn mixed_houses_add_up(votes in prop::collection::vec(1u64..100_000, 2..6), won in prop::collection::vec(0u64..4, 6), list in 1u64..20) {
        let n = votes.len();
        let constituency = won[..n].to_vec();
        let input = MixedInput::new(party_votes(&votes), constituency.clone()).unwrap();
        let p = parallel(&input, list).unwrap();
        prop_assert_eq!(p.house_size(), list + constituency.iter().sum::<u64>());
        let total = list + constituency.iter().sum::<u64>();
        let m = mmp(&input, total).unwrap();
        prop_assert!(m.house_size() >= total);
        prop_assert!(m.seats.iter().zip(&constituency).all(|(s, w)| s >= w));
    }
}
