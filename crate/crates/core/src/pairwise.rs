//! Pairwise comparison matrix and the Condorcet machinery built on it.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Add;

use crate::model::{CandidateId, Profile, RankedBallot};

/// `d[x][y]` is the total weight of ballots preferring `x` to `y`.
///
/// A ranked candidate is preferred to every unranked one; two unranked
/// candidates contribute nothing to each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairwiseMatrix {
    k: usize,
    total: u64,
    d: Vec<u64>,
}

impl PairwiseMatrix {
    pub fn from_profile(profile: &Profile<RankedBallot>) -> Self {
        let k = profile.candidate_count();
        let mut d = vec![0u64; k * k];
        let mut ranked = vec![false; k];
        for ballot in profile.ballots() {
            ranked.iter_mut().for_each(|r| *r = false);
            for (i, &x) in ballot.ranking.iter().enumerate() {
                for &y in &ballot.ranking[i + 1..] {
                    d[x.index() * k + y.index()] += ballot.weight;
                }
                ranked[x.index()] = true;
            }
            for &x in &ballot.ranking {
                for (y, _) in ranked.iter().enumerate().filter(|(_, &r)| !r) {
                    d[x.index() * k + y] += ballot.weight;
                }
            }
        }
        PairwiseMatrix { k, total: profile.total_weight(), d }
    }

    /// Builds a matrix from row-major counts. Diagonal entries are forced to
    /// zero.
    pub fn from_counts(k: usize, total: u64, counts: &[u64]) -> Self {
        assert_eq!(counts.len(), k * k, "counts must be k*k");
        let mut d = counts.to_vec();
        for x in 0..k {
            d[x * k + x] = 0;
        }
        PairwiseMatrix { k, total, d }
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn get(&self, x: CandidateId, y: CandidateId) -> u64 {
        self.d[x.index() * self.k + y.index()]
    }

    /// Strict pairwise majority of `x` over `y`.
    pub fn beats(&self, x: CandidateId, y: CandidateId) -> bool {
        self.get(x, y) > self.get(y, x)
    }

    fn ids(&self) -> impl Iterator<Item = CandidateId> + Clone {
        (0..self.k).map(CandidateId::new)
    }

    pub fn condorcet_winner(&self) -> Option<CandidateId> {
        self.ids().find(|&x| self.ids().filter(|&y| y != x).all(|y| self.beats(x, y)))
    }

    pub fn condorcet_loser(&self) -> Option<CandidateId> {
        self.ids().find(|&x| self.ids().filter(|&y| y != x).all(|y| self.beats(y, x)))
    }

    /// Copeland score: pairwise wins minus pairwise losses.
    pub fn copeland(&self, x: CandidateId) -> i64 {
        self.ids()
            .filter(|&y| y != x)
            .map(|y| match self.get(x, y).cmp(&self.get(y, x)) {
                core::cmp::Ordering::Greater => 1,
                core::cmp::Ordering::Less => -1,
                core::cmp::Ordering::Equal => 0,
            })
            .sum()
    }

    /// Whether the strict majority relation contains a directed cycle.
    pub fn majority_cycle_exists(&self) -> bool {
        // Kahn's algorithm: the relation is acyclic iff every node can be
        // peeled off once its in-degree drops to zero.
        let mut indegree: Vec<usize> = self
            .ids()
            .map(|y| self.ids().filter(|&x| self.beats(x, y)).count())
            .collect();
        let mut stack: Vec<CandidateId> = self.ids().filter(|y| indegree[y.index()] == 0).collect();
        let mut removed = 0;
        while let Some(x) = stack.pop() {
            removed += 1;
            for y in self.ids().filter(|&y| self.beats(x, y)) {
                indegree[y.index()] -= 1;
                if indegree[y.index()] == 0 {
                    stack.push(y);
                }
            }
        }
        removed < self.k
    }
}

impl Add for &PairwiseMatrix {
    type Output = PairwiseMatrix;

    fn add(self, rhs: &PairwiseMatrix) -> PairwiseMatrix {
        assert_eq!(self.k, rhs.k, "matrices over different rosters");
        PairwiseMatrix {
            k: self.k,
            total: self.total + rhs.total,
            d: self.d.iter().zip(&rhs.d).map(|(a, b)| a + b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Roster;

    fn profile(k: usize, lines: &[(u64, &[usize])]) -> Profile<RankedBallot> {
        Profile::ranked(
            Roster::lettered(k),
            lines.iter().map(|(w, r)| RankedBallot::from_indices(*w, r)).collect(),
        )
        .unwrap()
    }

    const A: CandidateId = CandidateId(0);
    const B: CandidateId = CandidateId(1);
    const C: CandidateId = CandidateId(2);

    #[test]
    fn election_one_matrix() {
        let m = PairwiseMatrix::from_profile(&profile(
            3,
            &[(4, &[0, 1, 2]), (2, &[1, 2, 0]), (3, &[2, 1, 0])],
        ));
        assert_eq!((m.get(B, A), m.get(A, B)), (5, 4));
        assert_eq!((m.get(B, C), m.get(C, B)), (6, 3));
        assert_eq!((m.get(C, A), m.get(A, C)), (5, 4));
        assert_eq!(m.condorcet_winner(), Some(B));
        assert_eq!(m.condorcet_loser(), Some(A));
        assert!(!m.majority_cycle_exists());
    }

    #[test]
    fn paradox_matrix() {
        let m = PairwiseMatrix::from_profile(&profile(
            3,
            &[(1, &[0, 1, 2]), (1, &[1, 2, 0]), (1, &[2, 0, 1])],
        ));
        assert_eq!((m.get(A, B), m.get(B, C), m.get(C, A)), (2, 2, 2));
        assert_eq!((m.get(B, A), m.get(C, B), m.get(A, C)), (1, 1, 1));
        assert_eq!(m.condorcet_winner(), None);
        assert_eq!(m.condorcet_loser(), None);
        assert!(m.majority_cycle_exists());
    }

    #[test]
    fn single_ballot_and_two_candidates() {
        let m = PairwiseMatrix::from_profile(&profile(2, &[(1, &[0, 1])]));
        assert_eq!((m.get(A, B), m.get(B, A)), (1, 0));
        let m = PairwiseMatrix::from_counts(2, 4, &[0, 3, 1, 0]);
        assert_eq!(m.condorcet_winner(), Some(A));
        assert_eq!(m.condorcet_loser(), Some(B));
        let single = PairwiseMatrix::from_profile(&profile(1, &[(1, &[0])]));
        assert!(!single.majority_cycle_exists());
    }

    #[test]
    fn truncated_ballots_prefer_ranked_over_unranked() {
        let m = PairwiseMatrix::from_profile(&profile(3, &[(2, &[1])]));
        assert_eq!(m.get(B, A), 2);
        assert_eq!(m.get(B, C), 2);
        assert_eq!(m.get(A, C), 0);
        assert_eq!(m.get(C, A), 0);
    }
}
