//! Two-candidate rules against the four conditions of May's theorem.

use alloc::vec;
use alloc::vec::Vec;

use crate::model::{CandidateId, NominalBallot, Profile, Roster};
use crate::rational::Rational;
use crate::single_winner as sw;
use crate::tie::TiePolicy;

use super::Outcome;

const A: CandidateId = CandidateId(0);
const B: CandidateId = CandidateId(1);

/// A decision rule between two candidates.
#[derive(Clone, Debug)]
pub enum MayRule {
    /// More votes wins; equal votes tie.
    SimpleMajority,
    /// A candidate needs a share strictly above the fraction; otherwise tie.
    SuperMajority(Rational),
    /// Always a tie.
    ConstantTie,
    /// Caller-supplied rule over the ordered list of votes.
    Custom(&'static str, fn(&[CandidateId]) -> Outcome),
}

impl MayRule {
    pub fn decide(&self, votes: &[CandidateId]) -> Outcome {
        let profile = || {
            let ballots = votes.iter().map(|&c| NominalBallot::single(1, c)).collect();
            Profile::nominal(Roster::lettered(2), ballots).expect("non-empty two-candidate profile")
        };
        match self {
            MayRule::SimpleMajority => match sw::fptp(&profile(), TiePolicy::Error) {
                Ok(r) => Outcome::Winner(r.winner()),
                Err(_) => Outcome::Tie,
            },
            MayRule::SuperMajority(fraction) => match sw::quota_winner(&profile(), fraction) {
                Ok(Some(c)) => Outcome::Winner(c),
                _ => Outcome::Tie,
            },
            MayRule::ConstantTie => Outcome::Tie,
            MayRule::Custom(_, rule) => rule(votes),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MayProperty {
    /// Swapping two voters' ballots never changes the outcome.
    Egalitarian,
    /// Swapping every vote between the candidates swaps the outcome.
    Neutral,
    /// A vote moving to a candidate that wins or ties never makes them
    /// lose or drop from a win to a tie.
    Monotone,
    /// Ties happen only when the candidates have equal votes.
    NearlyDecisive,
}

impl MayProperty {
    pub const ALL: [MayProperty; 4] =
        [MayProperty::Egalitarian, MayProperty::Neutral, MayProperty::Monotone, MayProperty::NearlyDecisive];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MayWitness {
    pub votes: Vec<CandidateId>,
    pub outcome: Outcome,
    pub variant: Option<Vec<CandidateId>>,
    pub variant_outcome: Option<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MayVerdict {
    /// Held on every enumerated profile.
    Holds { profiles: usize },
    Violated(MayWitness),
}

fn other(c: CandidateId) -> CandidateId {
    if c == A {
        B
    } else {
        A
    }
}

fn flip(o: Outcome) -> Outcome {
    match o {
        Outcome::Winner(c) => Outcome::Winner(other(c)),
        Outcome::Tie => Outcome::Tie,
    }
}

/// No worse for `c` than before: a win stays a win, a tie stays a tie or
/// becomes a win.
fn responsive(before: Outcome, after: Outcome, c: CandidateId) -> bool {
    match before {
        Outcome::Winner(w) if w == c => after == Outcome::Winner(c),
        Outcome::Tie => after == Outcome::Tie || after == Outcome::Winner(c),
        Outcome::Winner(_) => true,
    }
}

/// Checks each property on every vote vector of `1..=max_voters` voters,
/// voters taken in order and vectors in lexicographic order.
pub fn check_may_properties(rule: &MayRule, max_voters: usize) -> Vec<(MayProperty, MayVerdict)> {
    let mut verdicts: Vec<Option<MayWitness>> = vec![None; 4];
    let mut profiles = 0usize;
    let set = |slot: usize, w: MayWitness, verdicts: &mut Vec<Option<MayWitness>>| {
        if verdicts[slot].is_none() {
            verdicts[slot] = Some(w);
        }
    };
    for n in 1..=max_voters {
        for bits in 0u64..1 << n {
            profiles += 1;
            let votes: Vec<CandidateId> = (0..n).map(|i| if bits >> (n - 1 - i) & 1 == 0 { A } else { B }).collect();
            let outcome = rule.decide(&votes);
            let witness = |variant: Option<Vec<CandidateId>>, variant_outcome: Option<Outcome>| MayWitness {
                votes: votes.clone(),
                outcome,
                variant,
                variant_outcome,
            };
            for i in 0..n.saturating_sub(1) {
                if votes[i] != votes[i + 1] {
                    let mut v = votes.clone();
                    v.swap(i, i + 1);
                    let after = rule.decide(&v);
                    if after != outcome {
                        set(0, witness(Some(v), Some(after)), &mut verdicts);
                    }
                }
            }
            let flipped: Vec<CandidateId> = votes.iter().map(|&c| other(c)).collect();
            let after = rule.decide(&flipped);
            if after != flip(outcome) {
                set(1, witness(Some(flipped), Some(after)), &mut verdicts);
            }
            for i in 0..n {
                let mut v = votes.clone();
                v[i] = other(votes[i]);
                let after = rule.decide(&v);
                if !responsive(outcome, after, v[i]) {
                    set(2, witness(Some(v), Some(after)), &mut verdicts);
                }
            }
            let a = votes.iter().filter(|&&c| c == A).count();
            if outcome == Outcome::Tie && 2 * a != n {
                set(3, witness(None, None), &mut verdicts);
            }
        }
    }
    MayProperty::ALL
        .iter()
        .zip(verdicts)
        .map(|(&p, w)| {
            (p, match w {
                Some(w) => MayVerdict::Violated(w),
                None => MayVerdict::Holds { profiles },
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn holds(v: &[(MayProperty, MayVerdict)], p: MayProperty) -> bool {
        v.iter().any(|(q, r)| *q == p && matches!(r, MayVerdict::Holds { .. }))
    }

    #[test]
    fn simple_majority_satisfies_all() {
        let v = check_may_properties(&MayRule::SimpleMajority, 6);
        assert!(MayProperty::ALL.iter().all(|&p| holds(&v, p)));
    }

    #[test]
    fn super_majority_is_not_nearly_decisive() {
        let v = check_may_properties(&MayRule::SuperMajority(ratio(3, 5)), 6);
        assert!(holds(&v, MayProperty::Egalitarian));
        assert!(holds(&v, MayProperty::Neutral));
        assert!(holds(&v, MayProperty::Monotone));
        match &v[3].1 {
            MayVerdict::Violated(w) => {
                assert_eq!(w.votes, vec![A, A, A, B, B]);
                assert_eq!(w.outcome, Outcome::Tie);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn constant_tie() {
        let v = check_may_properties(&MayRule::ConstantTie, 4);
        assert!(!holds(&v, MayProperty::NearlyDecisive));
        assert!(holds(&v, MayProperty::Neutral));
    }

    #[test]
    fn dictator_is_not_egalitarian() {
        let v = check_may_properties(&MayRule::Custom("first voter", |v| Outcome::Winner(v[0])), 3);
        assert!(!holds(&v, MayProperty::Egalitarian));
        assert!(holds(&v, MayProperty::Neutral));
    }
}
