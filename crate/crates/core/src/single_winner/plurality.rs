use crate::error::{Error, Result};
use crate::model::{CandidateId, NominalBallot, Profile};
use crate::rational::{self, Rational};
use crate::report::TallyResult;
use crate::tie::TiePolicy;

use super::{check_mark_limit, nominal_totals, single_round, to_rationals};

/// First past the post: one mark per ballot, most votes wins.
pub fn fptp(profile: &Profile<NominalBallot>, tie: TiePolicy) -> Result<TallyResult> {
    check_mark_limit(profile, 1)?;
    single_round("fptp", to_rationals(&nominal_totals(profile)), tie)
}

/// Super-majority rule: a candidate wins only with a share of the valid votes
/// strictly above `quota_fraction`. A fraction of exactly 1 means unanimity.
pub fn quota_winner(
    profile: &Profile<NominalBallot>,
    quota_fraction: &Rational,
) -> Result<Option<CandidateId>> {
    let half = rational::ratio(1, 2);
    if *quota_fraction <= half || *quota_fraction > rational::one() {
        return Err(Error::InvalidQuota);
    }
    check_mark_limit(profile, 1)?;
    let totals = nominal_totals(profile);
    let valid = rational::int(profile.total_weight());
    let unanimity = *quota_fraction == rational::one();
    Ok(totals.iter().enumerate().find_map(|(i, &t)| {
        let share = rational::int(t) / &valid;
        let passes = if unanimity { share == rational::one() } else { share > *quota_fraction };
        passes.then(|| CandidateId::new(i))
    }))
}

/// Approval voting: any number of marks, most approvals wins.
pub fn approval(profile: &Profile<NominalBallot>, tie: TiePolicy) -> Result<TallyResult> {
    single_round("approval", to_rationals(&nominal_totals(profile)), tie)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Roster;
    use alloc::vec;
    use alloc::vec::Vec;

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

    #[test]
    fn fptp_election_one_first_preferences() {
        let p = nominal(3, &[(4, &[0]), (2, &[1]), (3, &[2])]);
        assert_eq!(fptp(&p, TiePolicy::Error).unwrap().winners, vec![A]);
    }

    #[test]
    fn fptp_unanimity_tie_and_mark_limit() {
        let p = nominal(3, &[(5, &[0])]);
        assert_eq!(fptp(&p, TiePolicy::Error).unwrap().winner(), A);
        let p = nominal(2, &[(3, &[0]), (3, &[1])]);
        assert!(matches!(fptp(&p, TiePolicy::Error), Err(Error::TieUnresolved { .. })));
        let p = nominal(2, &[(3, &[0, 1])]);
        assert!(matches!(fptp(&p, TiePolicy::Error), Err(Error::MarkLimitViolation { .. })));
    }

    #[test]
    fn quota_rule() {
        let three_fifths = rational::ratio(3, 5);
        let p = nominal(2, &[(61, &[0]), (39, &[1])]);
        assert_eq!(quota_winner(&p, &three_fifths), Ok(Some(A)));
        let p = nominal(2, &[(59, &[0]), (41, &[1])]);
        assert_eq!(quota_winner(&p, &three_fifths), Ok(None));
        let p = nominal(2, &[(100, &[0])]);
        assert_eq!(quota_winner(&p, &rational::ratio(2, 3)), Ok(Some(A)));
        assert_eq!(quota_winner(&p, &rational::one()), Ok(Some(A)));
        assert_eq!(quota_winner(&p, &rational::ratio(1, 2)), Err(Error::InvalidQuota));
    }

    #[test]
    fn approval_behaviours_on_election_one() {
        let winner = |lines: &[(u64, &[usize])]| {
            approval(&nominal(3, lines), TiePolicy::Error).unwrap().winner()
        };
        assert_eq!(winner(&[(4, &[0]), (2, &[1]), (3, &[2])]), A);
        assert_eq!(winner(&[(4, &[0, 1]), (2, &[1, 2]), (3, &[2, 1])]), B);
        assert_eq!(winner(&[(4, &[0]), (2, &[1, 2]), (3, &[2])]), C);
    }

    #[test]
    fn approving_everyone_is_accepted() {
        let p = nominal(3, &[(1, &[0, 1, 2]), (1, &[0])]);
        let r = approval(&p, TiePolicy::Error).unwrap();
        let scores: Vec<_> = r.scores.values().cloned().collect();
        assert_eq!(scores, vec![rational::int(2), rational::int(1), rational::int(1)]);
    }
}
