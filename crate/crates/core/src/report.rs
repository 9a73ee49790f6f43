use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::model::CandidateId;
use crate::rational::{self, Rational};
use crate::tie::TieEvent;

/// What a count did after its totals were taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Candidates reaching the quota (or the final winner). When a surplus is
    /// distributed in the same count it belongs to the first listed.
    Elected(Vec<CandidateId>),
    Excluded(Vec<CandidateId>),
    /// Surplus distribution of a candidate elected in an earlier count.
    SurplusTransferred(CandidateId),
    Runoff(CandidateId, CandidateId),
    None,
}

/// One count of a tally: the totals at the start of the count, then the
/// action taken and the transfers it caused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundReport {
    pub round: usize,
    /// Candidates still in the count (continuing, plus elected candidates
    /// for multi-winner counts).
    pub totals: BTreeMap<CandidateId, Rational>,
    pub exhausted: Rational,
    pub quota: Option<Rational>,
    pub action: Action,
    /// Signed changes applied by the action.
    pub transfers: BTreeMap<CandidateId, Rational>,
    pub exhausted_transfer: Rational,
}

impl RoundReport {
    pub fn new(round: usize, totals: BTreeMap<CandidateId, Rational>, exhausted: Rational) -> Self {
        RoundReport {
            round,
            totals,
            exhausted,
            quota: None,
            action: Action::None,
            transfers: BTreeMap::new(),
            exhausted_transfer: rational::zero(),
        }
    }

    pub fn total_of(&self, c: CandidateId) -> Option<&Rational> {
        self.totals.get(&c)
    }

    /// Sum of all listed totals plus the exhausted pile.
    pub fn accounted(&self) -> Rational {
        self.totals.values().fold(self.exhausted.clone(), |acc, v| acc + v)
    }

    /// Transfers cancel out: what leaves one pile arrives at another.
    pub fn transfers_balance(&self) -> bool {
        let net = self
            .transfers
            .values()
            .fold(self.exhausted_transfer.clone(), |acc, v| acc + v);
        net == rational::zero()
    }
}

/// Outcome of a tally with its full audit trail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TallyResult {
    pub method: String,
    pub winners: Vec<CandidateId>,
    pub rounds: Vec<RoundReport>,
    pub ties: Vec<TieEvent>,
    /// Final per-candidate scores for point-based methods; empty for
    /// round-based counts.
    pub scores: BTreeMap<CandidateId, Rational>,
}

impl TallyResult {
    pub fn winner(&self) -> CandidateId {
        self.winners[0]
    }
}
