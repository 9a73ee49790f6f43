//! Mixed systems: constituency seats combined with a party-list tier.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::apportionment::{
    highest_averages, largest_remainder, DivisorFamily, PartyVotes, QuotaKind, SeatAllocation, Working,
};
use crate::error::{Error, Result};
use crate::model::PartyId;
use crate::rational::{self, Rational};
use crate::tie::TiePolicy;

/// Which list apportionment a mixed system uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ListMethod {
    Divisor(DivisorFamily),
    Remainder(QuotaKind),
}

impl Default for ListMethod {
    fn default() -> Self {
        ListMethod::Divisor(DivisorFamily::DHondt)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedInput {
    pub party_votes: PartyVotes,
    /// Single-member seats won, indexed like `party_votes`.
    pub constituency: Vec<u64>,
    pub method: ListMethod,
    pub threshold: Rational,
    pub tie: TiePolicy,
}

impl MixedInput {
    pub fn new(party_votes: PartyVotes, constituency: Vec<u64>) -> Result<Self> {
        if constituency.len() != party_votes.len() {
            return Err(Error::LengthMismatch("constituency seats and parties"));
        }
        Ok(MixedInput {
            party_votes,
            constituency,
            method: ListMethod::default(),
            threshold: rational::zero(),
            tie: TiePolicy::default(),
        })
    }

    fn apportion(&self, seats: u64) -> Result<SeatAllocation> {
        match &self.method {
            ListMethod::Divisor(family) => {
                highest_averages(&self.party_votes, seats, family, &self.threshold, self.tie)
            }
            ListMethod::Remainder(kind) => {
                largest_remainder(&self.party_votes, seats, *kind, &self.threshold, self.tie)
            }
        }
    }

    fn constituency_total(&self) -> u64 {
        self.constituency.iter().sum()
    }
}

/// Mixed-member proportional: all `total_seats` are apportioned by party vote
/// and each party's list seats top its constituency seats up to that target.
/// Overhang seats are kept, so the house can exceed `total_seats`.
pub fn mmp(input: &MixedInput, total_seats: u64) -> Result<SeatAllocation> {
    let constituency = input.constituency_total();
    if constituency > total_seats {
        return Err(Error::ConstituencySeatsExceedTotal { constituency, total: total_seats });
    }
    let target = input.apportion(total_seats)?;
    let list: Vec<u64> =
        target.seats.iter().zip(&input.constituency).map(|(t, c)| t.saturating_sub(*c)).collect();
    let overhang: Vec<u64> =
        target.seats.iter().zip(&input.constituency).map(|(t, c)| c.saturating_sub(*t)).collect();
    let seats: Vec<u64> = input.constituency.iter().zip(&list).map(|(c, l)| c + l).collect();
    Ok(combine("mmp", input, seats, list, overhang, target))
}

/// Parallel system: `list_seats` are apportioned by party vote regardless of
/// constituency results, and the two tiers are added.
pub fn parallel(input: &MixedInput, list_seats: u64) -> Result<SeatAllocation> {
    let list_alloc = if list_seats == 0 {
        SeatAllocation {
            method: String::from("none"),
            parties: input.party_votes.parties().clone(),
            votes: input.party_votes.votes().to_vec(),
            seats: vec![0; input.party_votes.len()],
            working: Working::WinnerTakesAll,
            excluded: Vec::new(),
            ties: Vec::new(),
        }
    } else {
        input.apportion(list_seats)?
    };
    let list = list_alloc.seats.clone();
    let seats: Vec<u64> = input.constituency.iter().zip(&list).map(|(c, l)| c + l).collect();
    let overhang = vec![0; seats.len()];
    Ok(combine("parallel", input, seats, list, overhang, list_alloc))
}

fn combine(
    method: &str,
    input: &MixedInput,
    seats: Vec<u64>,
    list: Vec<u64>,
    overhang: Vec<u64>,
    apportioned: SeatAllocation,
) -> SeatAllocation {
    SeatAllocation {
        method: String::from(method),
        parties: input.party_votes.parties().clone(),
        votes: input.party_votes.votes().to_vec(),
        seats,
        excluded: apportioned.excluded.clone(),
        ties: apportioned.ties.clone(),
        working: Working::Mixed {
            constituency: input.constituency.clone(),
            list,
            overhang,
            apportioned: Box::new(apportioned),
        },
    }
}

/// Party vote from candidate votes: sums `(party, votes)` entries across all
/// districts.
pub fn aggregate_party_votes<S: AsRef<str>>(parties: &[S], candidate_votes: &[(PartyId, u64)]) -> Result<PartyVotes> {
    let mut sums = vec![0u64; parties.len()];
    for &(p, v) in candidate_votes {
        let slot = sums.get_mut(p.index()).ok_or(Error::InvalidParameter("unknown party"))?;
        *slot += v;
    }
    PartyVotes::new(parties, sums.into_iter().map(rational::int).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CandidateId;

    fn input(constituency: Vec<u64>) -> MixedInput {
        let votes = PartyVotes::from_counts(&[("P", 50), ("Q", 30), ("R", 20)]).unwrap();
        MixedInput::new(votes, constituency).unwrap()
    }

    #[test]
    fn mmp_tops_up_to_target() {
        let a = mmp(&input(vec![4, 1, 0]), 10).unwrap();
        assert_eq!(a.seats, vec![5, 3, 2]);
        match &a.working {
            Working::Mixed { list, .. } => assert_eq!(list, &vec![1, 2, 2]),
            _ => panic!("expected mixed working"),
        }
    }

    #[test]
    fn mmp_without_disproportionality() {
        let a = mmp(&input(vec![5, 3, 2]), 10).unwrap();
        assert_eq!(a.seats, vec![5, 3, 2]);
    }

    #[test]
    fn mmp_keeps_overhang() {
        let a = mmp(&input(vec![6, 0, 0]), 10).unwrap();
        assert_eq!(a.seats, vec![6, 3, 2]);
        assert_eq!(a.house_size(), 11);
        match &a.working {
            Working::Mixed { overhang, .. } => assert_eq!(overhang, &vec![1, 0, 0]),
            _ => panic!("expected mixed working"),
        }
    }

    #[test]
    fn parallel_adds_tiers() {
        let a = parallel(&input(vec![4, 1, 0]), 10).unwrap();
        assert_eq!(a.seats, vec![9, 4, 2]);
        assert_eq!(parallel(&input(vec![4, 1, 0]), 0).unwrap().seats, vec![4, 1, 0]);
        assert_eq!(parallel(&input(vec![0, 0, 0]), 10).unwrap().seats, vec![5, 3, 2]);
    }

    #[test]
    fn too_many_constituency_seats() {
        assert!(matches!(mmp(&input(vec![8, 3, 0]), 10), Err(Error::ConstituencySeatsExceedTotal { .. })));
    }

    #[test]
    fn aggregation() {
        let v = aggregate_party_votes(
            &["P", "Q"],
            &[(CandidateId(0), 10), (CandidateId(1), 4), (CandidateId(0), 3)],
        )
        .unwrap();
        assert_eq!(v.votes(), &[rational::int(13), rational::int(4)]);
    }
}
