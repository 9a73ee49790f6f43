//! Fairness criteria as executable checks.
//!
//! Single-profile checks return [`Verdict::Holds`] or a [`Witness`]. The
//! bounded searches in [`search`] can only fail to find a counterexample; a
//! tick there is reported as [`Verdict::NotRefuted`], never as a proof.
//!
//! Every count here runs with [`TiePolicy::Error`](crate::TiePolicy::Error):
//! an instance whose count needs a tie-break has outcome [`Outcome::Tie`] and
//! can never count as a violation.

mod may;
mod search;
mod wasted;

pub use may::{check_may_properties, MayProperty, MayRule, MayVerdict, MayWitness};
pub use search::{
    criteria_table, search_iia, search_monotonicity, seed_cases, Bounds, CriteriaTable, PoolConfig,
};
pub use wasted::{wasted_votes_nominal, wasted_votes_ranked, wasted_votes_seats, Wasted};

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::model::{
    build_profile, CandidateId, CumulativeBallot, CumulativeRules, NominalBallot, Profile, RankedBallot,
    Roster, Validation,
};
use crate::pairwise::PairwiseMatrix;
use crate::single_winner as sw;
use crate::tie::TiePolicy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    Equality,
    Neutrality,
    Majority,
    Condorcet,
    Monotonicity,
    Pareto,
    Iia,
    NearlyDecisive,
}

impl Criterion {
    /// Columns of the criteria table, in display order.
    pub const TABLE: [Criterion; 7] = [
        Criterion::Equality,
        Criterion::Neutrality,
        Criterion::Majority,
        Criterion::Condorcet,
        Criterion::Monotonicity,
        Criterion::Pareto,
        Criterion::Iia,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Criterion::Equality => "Equ.",
            Criterion::Neutrality => "Neu.",
            Criterion::Majority => "Maj.",
            Criterion::Condorcet => "Con.",
            Criterion::Monotonicity => "Mon.",
            Criterion::Pareto => "Par.",
            Criterion::Iia => "IIA",
            Criterion::NearlyDecisive => "N.D.",
        }
    }
}

/// How a voter turns their ranking into a non-ordinal ballot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Behaviour {
    /// Approve the top choice; give all points to it.
    Sincere,
    /// Approve the top `d` candidates.
    ApproveTop(usize),
    /// All cumulative points to the top choice.
    Plump,
    /// Cumulative points `k-1, k-2, ..., 0` down the ranking.
    BordaPoints,
}

/// A group of voters sharing a complete ranking and a behaviour.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Voter {
    pub weight: u64,
    pub ranking: Vec<CandidateId>,
    pub behaviour: Behaviour,
}

impl Voter {
    fn approval_depth(&self) -> usize {
        match self.behaviour {
            Behaviour::ApproveTop(d) => d,
            _ => 1,
        }
    }

    fn approves(&self, c: CandidateId) -> bool {
        self.ranking.iter().take(self.approval_depth()).any(|&x| x == c)
    }

    fn prefers(&self, a: CandidateId, b: CandidateId) -> bool {
        let pos = |c| self.ranking.iter().position(|&x| x == c);
        pos(a) < pos(b)
    }
}

/// An election instance for criteria checks: complete rankings plus the
/// behaviour each voter group follows on approval and cumulative ballots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Case {
    pub candidates: usize,
    pub voters: Vec<Voter>,
}

impl Case {
    pub fn new(candidates: usize, voters: Vec<Voter>) -> Result<Self> {
        if candidates == 0 {
            return Err(Error::EmptyRoster);
        }
        for (i, v) in voters.iter().enumerate() {
            if v.weight == 0 {
                return Err(Error::ZeroWeight(i));
            }
            let mut seen = vec![false; candidates];
            for &c in &v.ranking {
                if c.index() >= candidates || core::mem::replace(&mut seen[c.index()], true) {
                    return Err(Error::InvalidParameter("criteria rankings must be permutations"));
                }
            }
            if v.ranking.len() != candidates {
                return Err(Error::InvalidParameter("criteria rankings must be complete"));
            }
            if let Behaviour::ApproveTop(d) = v.behaviour {
                if d == 0 || d > candidates {
                    return Err(Error::InvalidParameter("approval depth out of range"));
                }
            }
        }
        if voters.is_empty() {
            return Err(Error::NoVotes);
        }
        Ok(Case { candidates, voters })
    }

    /// Sincere voter groups from `(weight, ranking)` lines.
    pub fn ranked(candidates: usize, lines: &[(u64, &[usize])]) -> Result<Self> {
        Case::with_behaviour(
            candidates,
            &lines.iter().map(|&(w, r)| (w, r, Behaviour::Sincere)).collect::<Vec<_>>(),
        )
    }

    pub fn with_behaviour(candidates: usize, lines: &[(u64, &[usize], Behaviour)]) -> Result<Self> {
        let voters = lines
            .iter()
            .map(|&(weight, r, behaviour)| Voter {
                weight,
                ranking: r.iter().map(|&i| CandidateId::new(i)).collect(),
                behaviour,
            })
            .collect();
        Case::new(candidates, voters)
    }

    /// The same voters with every behaviour replaced.
    pub fn behaving(&self, behaviour: Behaviour) -> Case {
        let mut out = self.clone();
        for v in &mut out.voters {
            v.behaviour = behaviour;
        }
        out
    }

    pub fn total_weight(&self) -> u64 {
        self.voters.iter().map(|v| v.weight).sum()
    }

    pub fn ranked_profile(&self) -> Profile<RankedBallot> {
        let ballots = self.voters.iter().map(|v| RankedBallot::new(v.weight, v.ranking.clone())).collect();
        Profile::ranked(Roster::lettered(self.candidates), ballots).expect("cases hold valid rankings")
    }

    /// Approval ballots: each group approves its top `d` (one when the
    /// behaviour is not an approval depth).
    pub fn approval_profile(&self) -> Profile<NominalBallot> {
        let ballots = self
            .voters
            .iter()
            .map(|v| NominalBallot::new(v.weight, v.ranking[..v.approval_depth()].to_vec()))
            .collect();
        Profile::nominal(Roster::lettered(self.candidates), ballots).expect("cases hold valid rankings")
    }

    pub fn plurality_profile(&self) -> Profile<NominalBallot> {
        let ballots = self.voters.iter().map(|v| NominalBallot::single(v.weight, v.ranking[0])).collect();
        Profile::nominal(Roster::lettered(self.candidates), ballots).expect("cases hold valid rankings")
    }

    /// Cumulative ballots with a budget of `k(k-1)/2` points and no cap
    /// below the budget.
    pub fn cumulative_profile(&self) -> Profile<CumulativeBallot> {
        let k = self.candidates as u64;
        let budget = (k * k.saturating_sub(1) / 2).max(1);
        let ballots = self
            .voters
            .iter()
            .map(|v| match v.behaviour {
                Behaviour::BordaPoints => CumulativeBallot::new(
                    v.weight,
                    v.ranking
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| (*i as u64) < k - 1)
                        .map(|(i, &c)| (c, k - 1 - i as u64))
                        .collect(),
                ),
                _ => CumulativeBallot::new(v.weight, vec![(v.ranking[0], budget)]),
            })
            .collect();
        build_profile(
            Roster::lettered(self.candidates),
            ballots,
            CumulativeRules { budget, cap: budget },
            Validation::Strict,
        )
        .expect("cases hold valid rankings")
    }

    /// Candidate ranked first by more than half of the voters.
    pub fn majority_candidate(&self) -> Option<CandidateId> {
        let total = self.total_weight();
        (0..self.candidates).map(CandidateId::new).find(|&c| {
            let firsts: u64 = self.voters.iter().filter(|v| v.ranking[0] == c).map(|v| v.weight).sum();
            2 * firsts > total
        })
    }

    pub fn condorcet_winner(&self) -> Option<CandidateId> {
        PairwiseMatrix::from_profile(&self.ranked_profile()).condorcet_winner()
    }

    /// Renames candidate `c` to `perm[c]` everywhere.
    pub fn relabeled(&self, perm: &[CandidateId]) -> Case {
        let mut out = self.clone();
        for v in &mut out.voters {
            for c in &mut v.ranking {
                *c = perm[c.index()];
            }
        }
        out
    }

    /// Whether every voter ranks `a` above `b`.
    pub fn unanimous(&self, a: CandidateId, b: CandidateId) -> bool {
        self.voters.iter().all(|v| v.prefers(a, b))
    }
}

/// Result of one count under the error tie policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Winner(CandidateId),
    /// The count could not finish without breaking a tie.
    Tie,
}

impl Outcome {
    pub fn relabeled(self, perm: &[CandidateId]) -> Outcome {
        match self {
            Outcome::Winner(c) => Outcome::Winner(perm[c.index()]),
            Outcome::Tie => Outcome::Tie,
        }
    }

    pub fn winner(self) -> Option<CandidateId> {
        match self {
            Outcome::Winner(c) => Some(c),
            Outcome::Tie => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Winner(c) => write!(f, "{}", letter(*c)),
            Outcome::Tie => f.write_str("tie"),
        }
    }
}

pub(crate) fn letter(c: CandidateId) -> char {
    char::from(b'A' + c.index() as u8)
}

/// A single-winner method the criteria machinery can run.
#[derive(Clone, Copy, Debug)]
pub enum System {
    Fptp,
    Approval,
    /// Two-round system with sincere voters in both rounds.
    Trs,
    Contingent,
    /// Exhaustive ballot with sincere voters in every round.
    Exhaustive,
    Irv,
    Borda,
    Cumulative,
    Schulze,
    SmithIrv,
    Black,
    Coombs,
    /// Any rule supplied by the caller.
    Custom(&'static str, fn(&Case) -> Outcome),
}

impl System {
    /// Rows of the criteria table.
    pub const TABLE: [System; 9] = [
        System::Fptp,
        System::Approval,
        System::Trs,
        System::Contingent,
        System::Exhaustive,
        System::Irv,
        System::Borda,
        System::Cumulative,
        System::Schulze,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            System::Fptp => "FPTP",
            System::Approval => "Approval",
            System::Trs => "TRS",
            System::Contingent => "Contingent",
            System::Exhaustive => "Exhaustive",
            System::Irv => "IRV",
            System::Borda => "Borda",
            System::Cumulative => "Cumulative",
            System::Schulze => "Schulze",
            System::SmithIrv => "Smith/IRV",
            System::Black => "Black",
            System::Coombs => "Coombs",
            System::Custom(name, _) => name,
        }
    }

    /// Behaviours the exhaustive pool assigns to voters.
    pub(crate) fn behaviours(&self, k: usize) -> Vec<Behaviour> {
        match self {
            System::Approval => (1..=k).map(Behaviour::ApproveTop).collect(),
            System::Cumulative => vec![Behaviour::Plump, Behaviour::BordaPoints],
            _ => vec![Behaviour::Sincere],
        }
    }

    /// Runs the count with ties treated as unresolved.
    pub fn outcome(&self, case: &Case) -> Outcome {
        let tie = TiePolicy::Error;
        let result = match self {
            System::Fptp => sw::fptp(&case.plurality_profile(), tie),
            System::Approval => sw::approval(&case.approval_profile(), tie),
            System::Trs => sw::two_round_simulated(&case.ranked_profile(), tie),
            System::Contingent => sw::contingent(&case.ranked_profile(), None, tie),
            System::Exhaustive => sw::exhaustive_simulated(&case.ranked_profile(), tie),
            System::Irv => sw::irv(&case.ranked_profile(), tie),
            System::Borda => sw::borda(&case.ranked_profile(), &sw::BordaScheme::Standard, tie),
            System::Cumulative => sw::cumulative(&case.cumulative_profile(), 1, tie),
            System::Schulze => sw::schulze_tally(&case.ranked_profile(), sw::SchulzeStrength::WinningVotes, tie),
            System::SmithIrv => sw::smith_irv(&case.ranked_profile(), tie),
            System::Black => sw::black(&case.ranked_profile(), &sw::BordaScheme::Standard, tie),
            System::Coombs => sw::coombs(&case.ranked_profile(), tie),
            System::Custom(_, rule) => return rule(case),
        };
        match result {
            Ok(r) => Outcome::Winner(r.winner()),
            Err(_) => Outcome::Tie,
        }
    }
}

/// Evidence that a system violates a criterion. [`Witness::verify`] replays
/// it through the public counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub criterion: Criterion,
    pub base: Case,
    pub base_outcome: Outcome,
    /// Second instance for criteria that compare two elections.
    pub variant: Option<Case>,
    pub variant_outcome: Option<Outcome>,
    /// Candidates involved: majority or Condorcet candidate, the dominating
    /// and dominated candidate for Pareto, the two winners for IIA.
    pub pair: Option<(CandidateId, CandidateId)>,
    /// Improvement moves `(voter group, candidate the winner swaps with)`.
    pub moves: Vec<(usize, CandidateId)>,
    /// Candidate renaming for neutrality.
    pub relabel: Vec<CandidateId>,
}

impl Witness {
    fn single(criterion: Criterion, base: &Case, outcome: Outcome, pair: (CandidateId, CandidateId)) -> Self {
        Witness {
            criterion,
            base: base.clone(),
            base_outcome: outcome,
            variant: None,
            variant_outcome: None,
            pair: Some(pair),
            moves: Vec::new(),
            relabel: Vec::new(),
        }
    }

    /// Re-runs both elections and re-checks the violation.
    pub fn verify(&self, system: &System) -> bool {
        let base_outcome = system.outcome(&self.base);
        if base_outcome != self.base_outcome {
            return false;
        }
        let variant_outcome = self.variant.as_ref().map(|v| system.outcome(v));
        if variant_outcome != self.variant_outcome {
            return false;
        }
        match self.criterion {
            Criterion::Majority => {
                let m = self.base.majority_candidate();
                m.is_some() && base_outcome.winner().is_some_and(|w| Some(w) != m)
            }
            Criterion::Condorcet => {
                let c = self.base.condorcet_winner();
                c.is_some() && base_outcome.winner().is_some_and(|w| Some(w) != c)
            }
            Criterion::Pareto => match self.pair {
                Some((a, b)) => self.base.unanimous(a, b) && base_outcome == Outcome::Winner(b),
                None => false,
            },
            Criterion::Monotonicity => {
                let (Some(w), Some(variant), Some(after)) =
                    (base_outcome.winner(), &self.variant, variant_outcome)
                else {
                    return false;
                };
                replay_moves(&self.base, w, &self.moves).as_ref() == Some(variant)
                    && after.winner().is_some_and(|x| x != w)
            }
            Criterion::Iia => {
                let (Some((a, b)), Some(variant)) = (self.pair, &self.variant) else {
                    return false;
                };
                base_outcome == Outcome::Winner(a)
                    && variant_outcome == Some(Outcome::Winner(b))
                    && preserves_pair(&self.base, variant, a, b, system)
            }
            Criterion::Equality => match &self.variant {
                Some(variant) => is_rearrangement(&self.base, variant) && variant_outcome != Some(base_outcome),
                None => false,
            },
            Criterion::Neutrality => match &self.variant {
                Some(variant) => {
                    *variant == self.base.relabeled(&self.relabel)
                        && variant_outcome != Some(base_outcome.relabeled(&self.relabel))
                }
                None => false,
            },
            Criterion::NearlyDecisive => false,
        }
    }
}

/// Applies improvement moves for `winner`; `None` if a move is not one.
pub(crate) fn replay_moves(base: &Case, winner: CandidateId, moves: &[(usize, CandidateId)]) -> Option<Case> {
    let mut case = base.clone();
    for &(group, other) in moves {
        let ranking = &mut case.voters.get_mut(group)?.ranking;
        let w = ranking.iter().position(|&c| c == winner)?;
        let o = ranking.iter().position(|&c| c == other)?;
        if o >= w {
            return None;
        }
        ranking.swap(w, o);
    }
    Some(case)
}

/// Every group keeps its weight and its order between `a` and `b`; approval
/// voters also keep their approval of `a` and of `b`.
pub(crate) fn preserves_pair(base: &Case, variant: &Case, a: CandidateId, b: CandidateId, system: &System) -> bool {
    let approval = matches!(system, System::Approval);
    base.candidates == variant.candidates
        && base.voters.len() == variant.voters.len()
        && base.voters.iter().zip(&variant.voters).all(|(x, y)| {
            x.weight == y.weight
                && x.prefers(a, b) == y.prefers(a, b)
                && (!approval || (x.approves(a) == y.approves(a) && x.approves(b) == y.approves(b)))
        })
}

fn is_rearrangement(base: &Case, variant: &Case) -> bool {
    let mut x = base.voters.clone();
    let mut y = variant.voters.clone();
    x.sort();
    y.sort();
    base.candidates == variant.candidates && x == y
}

/// Verdict of a criterion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The criterion holds on the instance examined.
    Holds,
    Violated(Box<Witness>),
    /// No counterexample among the instances searched.
    NotRefuted { profiles: usize },
    /// The instance could not be judged because its count ended in a tie.
    Inconclusive,
}

impl Verdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Violated(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("holds"),
            Verdict::Violated(_) => f.write_str("violated"),
            Verdict::NotRefuted { profiles } => {
                write!(f, "not refuted within bounds ({profiles} profiles)")
            }
            Verdict::Inconclusive => f.write_str("inconclusive (tie)"),
        }
    }
}

fn judge(
    criterion: Criterion,
    case: &Case,
    outcome: Outcome,
    favoured: Option<CandidateId>,
) -> Verdict {
    match (favoured, outcome) {
        (None, _) => Verdict::Holds,
        (Some(_), Outcome::Tie) => Verdict::Inconclusive,
        (Some(m), Outcome::Winner(w)) if w == m => Verdict::Holds,
        (Some(m), Outcome::Winner(w)) => Verdict::Violated(Box::new(Witness::single(criterion, case, outcome, (m, w)))),
    }
}

/// A candidate ranked first by a majority must win. Holds vacuously without
/// such a candidate.
pub fn check_majority(system: &System, case: &Case) -> Verdict {
    judge(Criterion::Majority, case, system.outcome(case), case.majority_candidate())
}

/// A Condorcet winner, when one exists, must win.
pub fn check_condorcet(system: &System, case: &Case) -> Verdict {
    judge(Criterion::Condorcet, case, system.outcome(case), case.condorcet_winner())
}

/// No candidate every voter ranks below some other candidate may win.
pub fn check_pareto(system: &System, case: &Case) -> Verdict {
    let outcome = system.outcome(case);
    let Outcome::Winner(w) = outcome else {
        return Verdict::Holds;
    };
    let dominator = (0..case.candidates).map(CandidateId::new).find(|&a| a != w && case.unanimous(a, w));
    match dominator {
        Some(a) => Verdict::Violated(Box::new(Witness::single(Criterion::Pareto, case, outcome, (a, w)))),
        None => Verdict::Holds,
    }
}

/// Reordering the voter groups must not change the outcome. Tries every
/// ordering for up to six groups, otherwise every rotation and the reverse.
pub fn check_equality(system: &System, case: &Case) -> Verdict {
    let base_outcome = system.outcome(case);
    let n = case.voters.len();
    let orders: Vec<Vec<usize>> = if n <= 6 {
        permutations(n)
    } else {
        let mut v: Vec<Vec<usize>> = (1..n).map(|r| (0..n).map(|i| (i + r) % n).collect()).collect();
        v.push((0..n).rev().collect());
        v
    };
    for order in orders {
        let variant = Case {
            candidates: case.candidates,
            voters: order.iter().map(|&i| case.voters[i].clone()).collect(),
        };
        if let Some(w) = rearrangement_violation(system, case, base_outcome, variant) {
            return Verdict::Violated(Box::new(w));
        }
    }
    Verdict::Holds
}

pub(crate) fn rearrangement_violation(
    system: &System,
    case: &Case,
    base_outcome: Outcome,
    variant: Case,
) -> Option<Witness> {
    let after = system.outcome(&variant);
    (after != base_outcome).then(|| Witness {
        criterion: Criterion::Equality,
        base: case.clone(),
        base_outcome,
        variant: Some(variant),
        variant_outcome: Some(after),
        pair: None,
        moves: Vec::new(),
        relabel: Vec::new(),
    })
}

/// Renaming candidates must rename the outcome; tries every renaming.
pub fn check_neutrality(system: &System, case: &Case) -> Verdict {
    let base_outcome = system.outcome(case);
    for perm in permutations(case.candidates) {
        let perm: Vec<CandidateId> = perm.into_iter().map(CandidateId::new).collect();
        let variant = case.relabeled(&perm);
        let after = system.outcome(&variant);
        if after != base_outcome.relabeled(&perm) {
            return Verdict::Violated(Box::new(Witness {
                criterion: Criterion::Neutrality,
                base: case.clone(),
                base_outcome,
                variant: Some(variant),
                variant_outcome: Some(after),
                pair: None,
                moves: Vec::new(),
                relabel: perm,
            }));
        }
    }
    Verdict::Holds
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}
