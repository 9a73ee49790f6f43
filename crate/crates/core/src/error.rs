use alloc::string::String;
use alloc::vec::Vec;

use crate::model::CandidateId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("the candidate roster is empty")]
    EmptyRoster,
    #[error("candidate {0} has an empty name")]
    EmptyCandidateName(usize),
    #[error("candidate name {0:?} appears more than once")]
    DuplicateCandidateName(String),
    #[error("ballot {ballot} lists candidate {candidate} more than once")]
    DuplicateCandidateInBallot { ballot: usize, candidate: CandidateId },
    #[error("ballot {ballot} references unknown candidate {candidate}")]
    UnknownCandidate { ballot: usize, candidate: CandidateId },
    #[error("ballot {0} marks no candidate")]
    EmptyBallot(usize),
    #[error("ballot {0} has zero weight")]
    ZeroWeight(usize),
    #[error("ballot {ballot} spends {spent} points, budget is {budget}")]
    OverBudget { ballot: usize, spent: u64, budget: u64 },
    #[error("ballot {ballot} gives {points} points to one candidate, cap is {cap}")]
    OverCap { ballot: usize, points: u64, cap: u64 },
    #[error("ballot {ballot} has score {score} outside [{lo}, {hi}]")]
    ScoreOutOfRange { ballot: usize, score: i64, lo: i64, hi: i64 },
    #[error("invalid score range [{lo}, {hi}]")]
    InvalidScoreRange { lo: i64, hi: i64 },
    #[error("ballot {ballot} marks {marks} candidates, limit is {limit}")]
    MarkLimitViolation { ballot: usize, marks: usize, limit: usize },
    #[error("unresolved tie between {tied:?} ({context})")]
    TieUnresolved { tied: Vec<CandidateId>, context: &'static str },
    #[error("quota fraction must lie in (1/2, 1]")]
    InvalidQuota,
    #[error("ballot {0} marks a candidate that is not a finalist")]
    NonFinalistMark(usize),
    #[error("ballot {ballot} marks eliminated candidate {candidate}")]
    MarkForEliminatedCandidate { ballot: usize, candidate: CandidateId },
    #[error("the exhaustive ballot needs another round but none was supplied")]
    RoundsExhausted,
    #[error("ballot {0} does not rank every candidate (required by Coombs' method)")]
    IncompleteRankingForCoombs(usize),
    #[error("{seats} seats requested but only {candidates} candidates stand")]
    SeatsExceedCandidates { seats: usize, candidates: usize },
    #[error("the number of seats must be positive")]
    ZeroSeats,
    #[error("the electorate has no valid votes")]
    NoVotes,
    #[error("invalid point scheme: {0}")]
    InvalidScheme(&'static str),
    #[error("invalid divisor sequence: {0}")]
    InvalidDivisors(&'static str),
    #[error("{extras} remainder seats but only {parties} eligible parties")]
    MoreExtrasThanParties { extras: u64, parties: usize },
    #[error("quota allocates {initial} initial seats in a house of {seats}")]
    InitialSeatsExceedHouse { initial: u64, seats: u64 },
    #[error("party {0:?} appears more than once")]
    DuplicateParty(String),
    #[error("party {0:?} has negative votes")]
    NegativeVotes(String),
    #[error("threshold must lie in [0, 1)")]
    InvalidThreshold,
    #[error("{constituency} constituency seats exceed a house of {total}")]
    ConstituencySeatsExceedTotal { constituency: u64, total: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("input length mismatch: {0}")]
    LengthMismatch(&'static str),
}
