//! Party-seat apportionment: quotas, highest averages, largest remainders
//! and open-list ordering.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{CandidateId, PartyId, Roster};
use crate::rational::{self, Rational};
use crate::tie::{Pick, TieBreaker, TieEvent, TiePolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QuotaKind {
    Hare,
    #[default]
    Droop,
    HagenbachBischoff,
    Imperiali,
}

impl QuotaKind {
    pub fn name(self) -> &'static str {
        match self {
            QuotaKind::Hare => "hare",
            QuotaKind::Droop => "droop",
            QuotaKind::HagenbachBischoff => "hagenbach-bischoff",
            QuotaKind::Imperiali => "imperiali",
        }
    }
}

/// Integer quota for `votes` and `seats`; fractions are dropped.
pub fn quota(kind: QuotaKind, votes: u64, seats: u64) -> Result<u64> {
    let q = exact_quota(kind, &rational::int(votes), seats)?;
    Ok(rational::floor_u64(&q))
}

/// [`quota`] over a rational vote total. The result is always a whole number.
pub fn exact_quota(kind: QuotaKind, votes: &Rational, seats: u64) -> Result<Rational> {
    if seats == 0 {
        return Err(Error::ZeroSeats);
    }
    let s = |n: u64| rational::int(n);
    let droop = (votes / s(seats + 1)).floor() + rational::one();
    Ok(match kind {
        QuotaKind::Hare => (votes / s(seats)).floor(),
        QuotaKind::Droop => droop,
        QuotaKind::HagenbachBischoff => droop - rational::one(),
        QuotaKind::Imperiali => (votes / s(seats + 2)).floor(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum DivisorFamily {
    /// 1, 2, 3, 4, ...
    #[default]
    DHondt,
    /// 1, 3, 5, 7, ...
    SainteLague,
    /// 1.4, 3, 5, 7, ...
    ModifiedSainteLague,
    /// 2, 3, 4, 5, ...
    Imperiali,
    /// 1, 4, 7, 10, ...
    Danish,
    /// Explicit divisors, positive and strictly increasing.
    Custom(Vec<Rational>),
}

impl DivisorFamily {
    pub fn name(&self) -> &'static str {
        match self {
            DivisorFamily::DHondt => "dhondt",
            DivisorFamily::SainteLague => "sainte-lague",
            DivisorFamily::ModifiedSainteLague => "modified-sainte-lague",
            DivisorFamily::Imperiali => "imperiali",
            DivisorFamily::Danish => "danish",
            DivisorFamily::Custom(_) => "custom",
        }
    }

    /// The first `n` divisors (fewer for a short custom list).
    pub fn divisors(&self, n: usize) -> Result<Vec<Rational>> {
        let seq = |f: &dyn Fn(u64) -> Rational| (0..n as u64).map(f).collect::<Vec<_>>();
        Ok(match self {
            DivisorFamily::DHondt => seq(&|j| rational::int(j + 1)),
            DivisorFamily::SainteLague => seq(&|j| rational::int(2 * j + 1)),
            DivisorFamily::ModifiedSainteLague => {
                seq(&|j| if j == 0 { rational::ratio(7, 5) } else { rational::int(2 * j + 1) })
            }
            DivisorFamily::Imperiali => seq(&|j| rational::int(j + 2)),
            DivisorFamily::Danish => seq(&|j| rational::int(3 * j + 1)),
            DivisorFamily::Custom(list) => {
                if list.is_empty() {
                    return Err(Error::InvalidDivisors("empty divisor list"));
                }
                if list.iter().any(|d| !d.is_positive()) {
                    return Err(Error::InvalidDivisors("divisors must be positive"));
                }
                if list.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidDivisors("divisors must be strictly increasing"));
                }
                list.iter().take(n).cloned().collect()
            }
        })
    }
}

/// Votes per party, in roster order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartyVotes {
    parties: Roster,
    votes: Vec<Rational>,
}

impl PartyVotes {
    pub fn new<S: AsRef<str>>(names: &[S], votes: Vec<Rational>) -> Result<Self> {
        if names.len() != votes.len() {
            return Err(Error::LengthMismatch("party names and votes"));
        }
        let parties = Roster::new(names.iter().map(|s| s.as_ref())).map_err(|e| match e {
            Error::DuplicateCandidateName(name) => Error::DuplicateParty(name),
            other => other,
        })?;
        if let Some(i) = votes.iter().position(|v| v.is_negative()) {
            return Err(Error::NegativeVotes(names[i].as_ref().to_string()));
        }
        Ok(PartyVotes { parties, votes })
    }

    pub fn from_counts<S: AsRef<str>>(pairs: &[(S, u64)]) -> Result<Self> {
        let names: Vec<&str> = pairs.iter().map(|(n, _)| n.as_ref()).collect();
        PartyVotes::new(&names, pairs.iter().map(|(_, v)| rational::int(*v)).collect())
    }

    pub fn parties(&self) -> &Roster {
        &self.parties
    }

    pub fn votes(&self) -> &[Rational] {
        &self.votes
    }

    pub fn len(&self) -> usize {
        self.votes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.votes.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.votes.iter().fold(rational::zero(), |acc, v| acc + v)
    }

    pub fn ids(&self) -> impl Iterator<Item = PartyId> + Clone {
        self.parties.ids()
    }
}

/// One entry of a highest-averages table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Average {
    pub value: Rational,
    pub selected: bool,
}

/// One row of a largest-remainder table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemainderRow {
    pub quotient: Rational,
    pub initial: u64,
    pub remainder: Rational,
    pub extra: u64,
}

/// Intermediate figures behind an allocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Working {
    /// `averages[party][j]` is votes divided by the `j`-th divisor.
    Averages { divisors: Vec<Rational>, averages: Vec<Vec<Average>> },
    Remainders { quota: Rational, rows: Vec<RemainderRow> },
    WinnerTakesAll,
    /// Constituency seats topped up (or not) by a list allocation.
    Mixed {
        constituency: Vec<u64>,
        list: Vec<u64>,
        /// Constituency seats above the proportional target, kept as won.
        overhang: Vec<u64>,
        apportioned: alloc::boxed::Box<SeatAllocation>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeatAllocation {
    pub method: String,
    pub parties: Roster,
    pub votes: Vec<Rational>,
    pub seats: Vec<u64>,
    pub working: Working,
    /// Parties below the threshold; they take no part in the allocation.
    pub excluded: Vec<PartyId>,
    pub ties: Vec<TieEvent>,
}

impl SeatAllocation {
    pub fn seats_of(&self, party: PartyId) -> u64 {
        self.seats[party.index()]
    }

    pub fn house_size(&self) -> u64 {
        self.seats.iter().sum()
    }

    /// Votes of parties that won nothing.
    pub fn wasted_votes(&self) -> Rational {
        self.votes
            .iter()
            .zip(&self.seats)
            .filter(|(_, &s)| s == 0)
            .fold(rational::zero(), |acc, (v, _)| acc + v)
    }
}

fn included(votes: &PartyVotes, threshold: &Rational) -> Result<(Vec<bool>, Vec<PartyId>)> {
    if threshold.is_negative() || *threshold >= rational::one() {
        return Err(Error::InvalidThreshold);
    }
    let bar = votes.total() * threshold;
    let keep: Vec<bool> = votes.votes.iter().map(|v| *v >= bar).collect();
    let excluded = votes.ids().filter(|p| !keep[p.index()]).collect();
    Ok((keep, excluded))
}

/// Picks `n` of `items` (party, value) by value, then raw votes; remaining
/// ties at the cut go to the tie policy.
fn select(
    items: &[(PartyId, Rational)],
    votes: &[Rational],
    n: usize,
    tb: &mut TieBreaker,
    context: &'static str,
) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    let key = |i: &usize| (&items[*i].1, &votes[items[*i].0.index()]);
    order.sort_by(|a, b| key(b).cmp(&key(a)).then(items[*a].0.cmp(&items[*b].0)));
    let mut chosen = Vec::with_capacity(n);
    let mut rest = &order[..];
    while chosen.len() < n && !rest.is_empty() {
        let head = key(&rest[0]);
        let width = rest.iter().take_while(|i| key(i) == head).count();
        if chosen.len() + width <= n {
            chosen.extend_from_slice(&rest[..width]);
            rest = &rest[width..];
        } else {
            let mut group: Vec<usize> = rest[..width].to_vec();
            while chosen.len() < n {
                let tied: Vec<PartyId> = group.iter().map(|&i| items[i].0).collect();
                let p = tb.pick(1, &tied, Pick::Best, &[], context)?;
                let at = group.iter().position(|&i| items[i].0 == p).expect("picked from group");
                chosen.push(group.remove(at));
            }
        }
    }
    Ok(chosen)
}

/// Highest-averages (divisor) allocation of `seats`.
pub fn highest_averages(
    votes: &PartyVotes,
    seats: u64,
    family: &DivisorFamily,
    threshold: &Rational,
    tie: TiePolicy,
) -> Result<SeatAllocation> {
    if seats == 0 {
        return Err(Error::ZeroSeats);
    }
    let (keep, excluded) = included(votes, threshold)?;
    let divisors = family.divisors(seats as usize)?;
    let averages: Vec<Vec<Rational>> = votes
        .votes
        .iter()
        .map(|v| divisors.iter().map(|d| v / d).collect())
        .collect();
    let mut items = Vec::new();
    let mut slot = Vec::new();
    for p in votes.ids().filter(|p| keep[p.index()]) {
        for (j, a) in averages[p.index()].iter().enumerate() {
            items.push((p, a.clone()));
            slot.push(j);
        }
    }
    if items.len() < seats as usize {
        return Err(Error::InvalidDivisors("not enough divisors for the house size"));
    }
    let mut tb = TieBreaker::new(tie);
    let chosen = select(&items, &votes.votes, seats as usize, &mut tb, "boundary average")?;
    let mut table: Vec<Vec<Average>> = averages
        .into_iter()
        .map(|row| row.into_iter().map(|value| Average { value, selected: false }).collect())
        .collect();
    let mut won = vec![0u64; votes.len()];
    for i in chosen {
        let p = items[i].0.index();
        table[p][slot[i]].selected = true;
        won[p] += 1;
    }
    Ok(SeatAllocation {
        method: String::from(family.name()),
        parties: votes.parties.clone(),
        votes: votes.votes.clone(),
        seats: won,
        working: Working::Averages { divisors, averages: table },
        excluded,
        ties: tb.into_events(),
    })
}

/// Largest-remainder allocation: whole quotas first, then one extra seat each
/// to the largest remainders.
///
/// The quota is taken over the votes of parties above the threshold.
pub fn largest_remainder(
    votes: &PartyVotes,
    seats: u64,
    kind: QuotaKind,
    threshold: &Rational,
    tie: TiePolicy,
) -> Result<SeatAllocation> {
    let (keep, excluded) = included(votes, threshold)?;
    let counted = votes
        .ids()
        .filter(|p| keep[p.index()])
        .fold(rational::zero(), |acc, p| acc + &votes.votes[p.index()]);
    let q = exact_quota(kind, &counted, seats)?;
    if q.is_zero() {
        return Err(Error::InvalidQuota);
    }
    let mut rows: Vec<RemainderRow> = votes
        .votes
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if !keep[i] {
                return RemainderRow {
                    quotient: rational::zero(),
                    initial: 0,
                    remainder: rational::zero(),
                    extra: 0,
                };
            }
            let quotient = v / &q;
            let whole = quotient.floor();
            RemainderRow {
                initial: rational::floor_u64(&whole),
                remainder: &quotient - whole,
                quotient,
                extra: 0,
            }
        })
        .collect();
    let initial: u64 = rows.iter().map(|r| r.initial).sum();
    if initial > seats {
        return Err(Error::InitialSeatsExceedHouse { initial, seats });
    }
    let extras = seats - initial;
    let eligible: Vec<(PartyId, Rational)> = votes
        .ids()
        .filter(|p| keep[p.index()])
        .map(|p| (p, rows[p.index()].remainder.clone()))
        .collect();
    if extras as usize > eligible.len() {
        return Err(Error::MoreExtrasThanParties { extras, parties: eligible.len() });
    }
    let mut tb = TieBreaker::new(tie);
    for i in select(&eligible, &votes.votes, extras as usize, &mut tb, "largest remainder")? {
        rows[eligible[i].0.index()].extra = 1;
    }
    Ok(SeatAllocation {
        method: alloc::format!("lr-{}", kind.name()),
        parties: votes.parties.clone(),
        votes: votes.votes.clone(),
        seats: rows.iter().map(|r| r.initial + r.extra).collect(),
        working: Working::Remainders { quota: q, rows },
        excluded,
        ties: tb.into_events(),
    })
}

/// Party block vote: the plurality party takes every seat.
pub fn party_block_vote(votes: &PartyVotes, seats: u64, tie: TiePolicy) -> Result<SeatAllocation> {
    if seats == 0 {
        return Err(Error::ZeroSeats);
    }
    let ids: Vec<PartyId> = votes.ids().collect();
    let mut tb = TieBreaker::new(tie);
    let winner = tb.extreme(1, &ids, &votes.votes, Pick::Best, &[], "party block winner")?;
    let mut won = vec![0u64; votes.len()];
    won[winner.index()] = seats;
    Ok(SeatAllocation {
        method: String::from("party-block"),
        parties: votes.parties.clone(),
        votes: votes.votes.clone(),
        seats: won,
        working: Working::WinnerTakesAll,
        excluded: Vec::new(),
        ties: tb.into_events(),
    })
}

/// Open list: the party's seats go to its candidates with the most personal
/// votes. `personal_votes` is in list order; list position breaks ties under
/// the deterministic policies.
pub fn open_list_order(seats: usize, personal_votes: &[u64], tie: TiePolicy) -> Result<Vec<CandidateId>> {
    if seats > personal_votes.len() {
        return Err(Error::SeatsExceedCandidates { seats, candidates: personal_votes.len() });
    }
    let ids: Vec<CandidateId> = (0..personal_votes.len()).map(CandidateId::new).collect();
    let values: Vec<Rational> = personal_votes.iter().map(|&v| rational::int(v)).collect();
    TieBreaker::new(tie).top_n(1, &ids, &values, seats, "open list order")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pct(pairs: &[(&str, i64)]) -> PartyVotes {
        let names: Vec<&str> = pairs.iter().map(|p| p.0).collect();
        PartyVotes::new(&names, pairs.iter().map(|p| rational::ratio(p.1, 100)).collect()).unwrap()
    }

    fn czestochowa() -> PartyVotes {
        pct(&[
            ("PO", 3497),
            ("PiS", 2736),
            ("RP", 1339),
            ("SLD", 1049),
            ("PSL", 877),
            ("PJN", 214),
            ("NP", 206),
            ("PPP", 84),
        ])
    }

    #[test]
    fn quota_formulas() {
        assert_eq!(quota(QuotaKind::Droop, 4_382_163, 73), Ok(59_219));
        assert_eq!(quota(QuotaKind::Droop, 71, 2), Ok(24));
        assert_eq!(quota(QuotaKind::Hare, 10, 2), Ok(5));
        assert_eq!(quota(QuotaKind::HagenbachBischoff, 71, 2), Ok(23));
        assert_eq!(quota(QuotaKind::Imperiali, 100, 8), Ok(10));
        assert_eq!(quota(QuotaKind::Hare, 10, 0), Err(Error::ZeroSeats));
    }

    #[test]
    fn divisor_sequences() {
        let d = DivisorFamily::ModifiedSainteLague.divisors(3).unwrap();
        assert_eq!(d, vec![rational::ratio(7, 5), rational::int(3), rational::int(5)]);
        assert_eq!(DivisorFamily::Danish.divisors(3).unwrap()[2], rational::int(7));
        assert_eq!(DivisorFamily::Imperiali.divisors(1).unwrap()[0], rational::int(2));
        let bad = DivisorFamily::Custom(vec![rational::int(2), rational::int(2)]);
        assert!(matches!(bad.divisors(2), Err(Error::InvalidDivisors(_))));
    }

    #[test]
    fn dhondt_czestochowa() {
        let a = highest_averages(&czestochowa(), 7, &DivisorFamily::DHondt, &rational::zero(), TiePolicy::Error)
            .unwrap();
        assert_eq!(a.seats, vec![3, 2, 1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn sainte_lague_czestochowa() {
        let a = highest_averages(
            &czestochowa(),
            7,
            &DivisorFamily::SainteLague,
            &rational::zero(),
            TiePolicy::Error,
        )
        .unwrap();
        assert_eq!(a.seats, vec![2, 2, 1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn single_party_takes_all() {
        let v = PartyVotes::from_counts(&[("P", 10)]).unwrap();
        for fam in [DivisorFamily::DHondt, DivisorFamily::Danish, DivisorFamily::Imperiali] {
            let a = highest_averages(&v, 4, &fam, &rational::zero(), TiePolicy::Error).unwrap();
            assert_eq!(a.seats, vec![4]);
        }
    }

    #[test]
    fn threshold_excludes_small_parties() {
        let v = PartyVotes::from_counts(&[("P", 60), ("Q", 36), ("R", 4)]).unwrap();
        let a = highest_averages(&v, 5, &DivisorFamily::DHondt, &rational::ratio(1, 20), TiePolicy::Error)
            .unwrap();
        assert_eq!(a.excluded, vec![CandidateId(2)]);
        assert_eq!(a.seats[2], 0);
        assert_eq!(a.house_size(), 5);
    }

    #[test]
    fn boundary_tie_prefers_larger_vote_then_policy() {
        // P's second average equals Q's first; P has more votes.
        let v = PartyVotes::from_counts(&[("Q", 5), ("P", 10)]).unwrap();
        let a = highest_averages(&v, 2, &DivisorFamily::DHondt, &rational::zero(), TiePolicy::Error).unwrap();
        assert_eq!(a.seats, vec![0, 2]);
        let even = PartyVotes::from_counts(&[("P", 5), ("Q", 5)]).unwrap();
        let err = highest_averages(&even, 1, &DivisorFamily::DHondt, &rational::zero(), TiePolicy::Error);
        assert!(matches!(err, Err(Error::TieUnresolved { .. })));
        let first = highest_averages(&even, 1, &DivisorFamily::DHondt, &rational::zero(), TiePolicy::FirstListed);
        assert_eq!(first.unwrap().seats, vec![1, 0]);
    }

    #[test]
    fn largest_remainder_even_split() {
        let v = PartyVotes::from_counts(&[("P", 50), ("Q", 50)]).unwrap();
        let a = largest_remainder(&v, 2, QuotaKind::Hare, &rational::zero(), TiePolicy::Error).unwrap();
        assert_eq!(a.seats, vec![1, 1]);
        match a.working {
            Working::Remainders { rows, .. } => assert!(rows.iter().all(|r| r.extra == 0)),
            _ => panic!("expected remainder table"),
        }
    }

    #[test]
    fn imperiali_overallocation_is_an_error() {
        let v = PartyVotes::from_counts(&[("P", 95), ("Q", 3), ("R", 2)]).unwrap();
        let err = largest_remainder(&v, 3, QuotaKind::Imperiali, &rational::zero(), TiePolicy::Error);
        assert!(matches!(err, Err(Error::InitialSeatsExceedHouse { .. })));
    }

    #[test]
    fn more_extras_than_parties() {
        let v = PartyVotes::from_counts(&[("P", 1)]).unwrap();
        let err = largest_remainder(&v, 5, QuotaKind::Droop, &rational::zero(), TiePolicy::Error);
        assert_eq!(err, Err(Error::MoreExtrasThanParties { extras: 4, parties: 1 }));
    }

    #[test]
    fn party_block() {
        let v = PartyVotes::from_counts(&[("P", 100), ("Q", 99)]).unwrap();
        assert_eq!(party_block_vote(&v, 5, TiePolicy::Error).unwrap().seats, vec![5, 0]);
        let even = PartyVotes::from_counts(&[("P", 50), ("Q", 50)]).unwrap();
        assert!(matches!(party_block_vote(&even, 5, TiePolicy::Error), Err(Error::TieUnresolved { .. })));
    }

    #[test]
    fn open_list() {
        let ids = open_list_order(2, &[10, 7, 3], TiePolicy::Error).unwrap();
        assert_eq!(ids, vec![CandidateId(0), CandidateId(1)]);
        assert!(open_list_order(0, &[1, 2], TiePolicy::Error).unwrap().is_empty());
        let tied = open_list_order(1, &[4, 4], TiePolicy::FirstListed).unwrap();
        assert_eq!(tied, vec![CandidateId(0)]);
    }

    #[test]
    fn input_validation() {
        assert!(matches!(
            PartyVotes::from_counts(&[("P", 1), ("P", 2)]),
            Err(Error::DuplicateParty(_))
        ));
        assert!(matches!(
            PartyVotes::new(&["P"], vec![rational::signed(-1)]),
            Err(Error::NegativeVotes(_))
        ));
    }
}
