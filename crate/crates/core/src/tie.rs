//! Tie-break policies.
//!
//! Roster order is the priority order: whenever a tie is broken
//! deterministically, the earlier-listed candidate is favoured, meaning it
//! wins a tie for a seat and survives a tie for exclusion.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::model::CandidateId;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// Refuse to break ties; the tally fails with [`Error::TieUnresolved`].
    Error,
    /// Favour the earliest-listed tied candidate.
    FirstListed,
    /// Compare totals in earlier rounds, most recent first, and fall back to
    /// roster order when every earlier round is tied too.
    #[default]
    BackwardThenFirstListed,
    /// Draw uniformly from the tied set with a ChaCha8 stream seeded once per
    /// count; the same seed always replays the same draws.
    SeededRandom(u64),
}

/// Which member of a tied set the caller needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pick {
    /// The candidate to favour (winner, finalist, seat).
    Best,
    /// The candidate to disfavour (exclusion).
    Worst,
}

/// One resolved tie, kept in the audit trail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieEvent {
    pub round: usize,
    pub tied: Vec<CandidateId>,
    pub pick: Pick,
    pub chosen: CandidateId,
}

/// Stateful tie resolver for a single count.
#[derive(Clone, Debug)]
pub struct TieBreaker {
    policy: TiePolicy,
    rng: Option<ChaCha8Rng>,
    events: Vec<TieEvent>,
}

impl TieBreaker {
    pub fn new(policy: TiePolicy) -> Self {
        let rng = match policy {
            TiePolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        TieBreaker { policy, rng, events: Vec::new() }
    }

    pub fn policy(&self) -> TiePolicy {
        self.policy
    }

    pub fn events(&self) -> &[TieEvent] {
        &self.events
    }

    pub fn into_events(self) -> Vec<TieEvent> {
        self.events
    }

    /// Resolves a tie among `tied` (at least two candidates).
    ///
    /// `history` holds per-round totals indexed by candidate for the rounds
    /// before the tie, oldest first; only the backward policy reads it. Larger
    /// historical totals count as better.
    pub fn pick(
        &mut self,
        round: usize,
        tied: &[CandidateId],
        pick: Pick,
        history: &[Vec<Rational>],
        context: &'static str,
    ) -> Result<CandidateId> {
        let mut sorted: Vec<CandidateId> = tied.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == 1 {
            return Ok(sorted[0]);
        }
        let chosen = match self.policy {
            TiePolicy::Error => {
                return Err(Error::TieUnresolved { tied: sorted, context });
            }
            TiePolicy::FirstListed => by_roster(&sorted, pick),
            TiePolicy::BackwardThenFirstListed => {
                let mut pool = sorted.clone();
                for totals in history.iter().rev() {
                    if pool.len() == 1 {
                        break;
                    }
                    let value = |c: &CandidateId| &totals[c.index()];
                    let target = match pick {
                        Pick::Best => pool.iter().map(value).max(),
                        Pick::Worst => pool.iter().map(value).min(),
                    }
                    .cloned()
                    .expect("pool is non-empty");
                    pool.retain(|c| *value(c) == target);
                }
                by_roster(&pool, pick)
            }
            TiePolicy::SeededRandom(_) => {
                let rng = self.rng.as_mut().expect("seeded policy has an rng");
                let draw = ((rng.next_u64() as u128 * sorted.len() as u128) >> 64) as usize;
                sorted[draw]
            }
        };
        self.events.push(TieEvent { round, tied: sorted, pick, chosen });
        Ok(chosen)
    }

    /// Candidates with the highest (`Pick::Best`) or lowest (`Pick::Worst`)
    /// value, with ties resolved by policy.
    pub fn extreme(
        &mut self,
        round: usize,
        candidates: &[CandidateId],
        values: &[Rational],
        pick: Pick,
        history: &[Vec<Rational>],
        context: &'static str,
    ) -> Result<CandidateId> {
        let value = |c: &CandidateId| &values[c.index()];
        let target = match pick {
            Pick::Best => candidates.iter().map(value).max(),
            Pick::Worst => candidates.iter().map(value).min(),
        }
        .expect("at least one candidate");
        let tied: Vec<CandidateId> =
            candidates.iter().copied().filter(|c| value(c) == target).collect();
        self.pick(round, &tied, pick, history, context)
    }

    /// The `n` candidates with the largest values, best first. Ties that
    /// straddle the cut are resolved by policy; ties entirely inside the
    /// selection are ordered by roster position and never consult the policy.
    pub fn top_n(
        &mut self,
        round: usize,
        candidates: &[CandidateId],
        values: &[Rational],
        n: usize,
        context: &'static str,
    ) -> Result<Vec<CandidateId>> {
        let mut remaining: Vec<CandidateId> = candidates.to_vec();
        remaining.sort_by(|a, b| values[b.index()].cmp(&values[a.index()]).then(a.cmp(b)));
        let mut chosen = Vec::with_capacity(n);
        while chosen.len() < n && !remaining.is_empty() {
            let best = values[remaining[0].index()].clone();
            let group: Vec<CandidateId> =
                remaining.iter().copied().take_while(|c| values[c.index()] == best).collect();
            if chosen.len() + group.len() <= n {
                chosen.extend(group.iter().copied());
                remaining.drain(..group.len());
            } else {
                let c = self.pick(round, &group, Pick::Best, &[], context)?;
                chosen.push(c);
                remaining.retain(|&x| x != c);
            }
        }
        Ok(chosen)
    }
}

fn by_roster(sorted: &[CandidateId], pick: Pick) -> CandidateId {
    match pick {
        Pick::Best => sorted[0],
        Pick::Worst => *sorted.last().expect("non-empty"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    const A: CandidateId = CandidateId(0);
    const B: CandidateId = CandidateId(1);
    const C: CandidateId = CandidateId(2);

    #[test]
    fn error_policy_refuses() {
        let mut tb = TieBreaker::new(TiePolicy::Error);
        assert!(matches!(
            tb.pick(1, &[A, B], Pick::Best, &[], "test"),
            Err(Error::TieUnresolved { .. })
        ));
        assert_eq!(tb.pick(1, &[B], Pick::Best, &[], "test"), Ok(B));
    }

    #[test]
    fn first_listed_favours_roster_order() {
        let mut tb = TieBreaker::new(TiePolicy::FirstListed);
        assert_eq!(tb.pick(1, &[C, B], Pick::Best, &[], "t"), Ok(B));
        assert_eq!(tb.pick(1, &[A, C, B], Pick::Worst, &[], "t"), Ok(C));
        assert_eq!(tb.events().len(), 2);
    }

    #[test]
    fn backward_consults_most_recent_round_first() {
        let mut tb = TieBreaker::new(TiePolicy::BackwardThenFirstListed);
        let history = vec![vec![int(1), int(5), int(5)], vec![int(3), int(2), int(4)]];
        // Most recent earlier round: B=2 < C=4, so B is the worse one.
        assert_eq!(tb.pick(3, &[B, C], Pick::Worst, &history, "t"), Ok(B));
        let flat = vec![vec![int(5), int(5), int(0)]];
        assert_eq!(tb.pick(3, &[A, B], Pick::Worst, &flat, "t"), Ok(B));
    }

    #[test]
    fn seeded_random_is_reproducible() {
        let run = |seed| {
            let mut tb = TieBreaker::new(TiePolicy::SeededRandom(seed));
            (0..16).map(|_| tb.pick(1, &[A, B, C], Pick::Best, &[], "t").unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(run(7), run(7));
        let draws = run(7);
        assert!(draws.contains(&A) && draws.contains(&B) && draws.contains(&C));
    }

    #[test]
    fn top_n_only_consults_policy_at_the_cut() {
        let values = vec![int(5), int(4), int(4)];
        let mut tb = TieBreaker::new(TiePolicy::Error);
        assert_eq!(tb.top_n(1, &[A, B, C], &values, 3, "t"), Ok(vec![A, B, C]));
        assert!(tb.top_n(1, &[A, B, C], &values, 2, "t").is_err());
        let mut tb = TieBreaker::new(TiePolicy::FirstListed);
        assert_eq!(tb.top_n(1, &[A, B, C], &values, 2, "t"), Ok(vec![A, B]));
    }
}
