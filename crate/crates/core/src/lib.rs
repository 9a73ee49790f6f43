//! Exact, deterministic election tallying.
//!
//! Every counting procedure in this crate works on immutable [`Profile`]s and
//! exact rational arithmetic; decimal rounding only happens when a caller asks
//! for a display string. The crate is `no_std` and needs only `alloc`.
//!
//! Modules:
//!
//! * [`model`] and [`pairwise`]: candidates, ballots, profiles and the
//!   pairwise comparison matrix.
//! * [`single_winner`]: plurality, runoff, positional, cardinal and Condorcet
//!   methods.
//! * [`multi_winner`]: block voting variants and the single transferable vote.
//! * [`apportionment`]: quotas, highest-averages and largest-remainder seat
//!   allocation.
//! * [`mixed`]: mixed-member proportional and parallel systems.
//! * [`criteria`]: machine-checkable voting criteria with bounded
//!   counterexample search.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod apportionment;
pub mod criteria;
mod error;
pub mod mixed;
pub mod model;
pub mod multi_winner;
pub mod pairwise;
pub mod rational;
mod report;
pub mod single_winner;
pub mod tie;

pub use error::{Error, Result};
pub use model::{
    build_profile, CandidateId, CumulativeBallot, CumulativeRules, NominalBallot, PartyId,
    Profile, RankedBallot, Roster, ScoreBallot, ScoreRange, Validation,
};
pub use pairwise::PairwiseMatrix;
pub use rational::Rational;
pub use report::{Action, RoundReport, TallyResult};
pub use tie::{TieEvent, TiePolicy};
