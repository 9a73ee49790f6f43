//! Condorcet-consistent methods: Smith set, Smith/IRV, Black and Schulze.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::model::{CandidateId, Profile, RankedBallot};
use crate::pairwise::PairwiseMatrix;
use crate::rational;
use crate::report::{Action, RoundReport, TallyResult};
use crate::tie::{Pick, TieBreaker, TiePolicy};

use super::{borda_scores, irv_among, single_round, to_rationals, totals_map, BordaScheme};

/// Smallest non-empty set whose members all beat every non-member pairwise.
///
/// Starts from the Copeland maximizers (always inside the set) and absorbs
/// every outsider that some member fails to beat until nothing changes.
pub fn smith_set(m: &PairwiseMatrix) -> Vec<CandidateId> {
    let k = m.len();
    let ids: Vec<CandidateId> = (0..k).map(CandidateId::new).collect();
    let best = ids.iter().map(|&c| m.copeland(c)).max().unwrap_or(0);
    let mut inside: Vec<bool> = ids.iter().map(|&c| m.copeland(c) == best).collect();
    loop {
        let absorbed: Vec<CandidateId> = ids
            .iter()
            .copied()
            .filter(|y| !inside[y.index()])
            .filter(|&y| ids.iter().any(|&x| inside[x.index()] && !m.beats(x, y)))
            .collect();
        if absorbed.is_empty() {
            break;
        }
        for y in absorbed {
            inside[y.index()] = true;
        }
    }
    ids.into_iter().filter(|c| inside[c.index()]).collect()
}

/// Smith/IRV: a singleton Smith set wins outright; otherwise instant runoff
/// among the Smith set, with every ballot restricted to its members.
pub fn smith_irv(profile: &Profile<RankedBallot>, tie: TiePolicy) -> Result<TallyResult> {
    let m = PairwiseMatrix::from_profile(profile);
    let smith = smith_set(&m);
    if let [winner] = smith[..] {
        let first = super::nominal_totals(&profile.first_preferences());
        let values = to_rationals(&first);
        let mut report = RoundReport::new(1, totals_map(profile.roster().ids(), &values), rational::zero());
        report.action = Action::Elected(vec![winner]);
        return Ok(TallyResult {
            method: String::from("smith-irv"),
            winners: vec![winner],
            rounds: vec![report],
            ties: Vec::new(),
            scores: BTreeMap::new(),
        });
    }
    let mut keep = vec![false; profile.candidate_count()];
    for c in &smith {
        keep[c.index()] = true;
    }
    let restricted = profile.restricted_to(&keep).expect("smith members are ranked somewhere");
    irv_among(&restricted, &smith, tie, "smith-irv")
}

/// Black's method: the Condorcet winner if one exists, otherwise Borda.
pub fn black(profile: &Profile<RankedBallot>, scheme: &BordaScheme, tie: TiePolicy) -> Result<TallyResult> {
    let scores = borda_scores(profile, scheme)?;
    match PairwiseMatrix::from_profile(profile).condorcet_winner() {
        Some(winner) => {
            let all = profile.roster().ids();
            let mut report = RoundReport::new(1, totals_map(all.clone(), &scores), rational::zero());
            report.action = Action::Elected(vec![winner]);
            Ok(TallyResult {
                method: String::from("black"),
                winners: vec![winner],
                rounds: vec![report],
                ties: Vec::new(),
                scores: totals_map(all, &scores),
            })
        }
        None => single_round("black", scores, tie),
    }
}

/// How the strength of a direct pairwise link is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SchulzeStrength {
    /// `d[x][y]` when `x` wins the pairing, else no link.
    #[default]
    WinningVotes,
    /// `d[x][y] - d[y][x]` when positive, else no link.
    Margins,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchulzeOutcome {
    /// Widest-path strength `p[x][y]`, row-major.
    pub strengths: Vec<Vec<u64>>,
    /// Candidates grouped best first; a group holds mutually unbeaten
    /// candidates.
    pub order: Vec<Vec<CandidateId>>,
    pub winners: Vec<CandidateId>,
}

/// Direct link strengths for the chosen measure.
pub fn schulze_links(m: &PairwiseMatrix, strength: SchulzeStrength) -> Vec<Vec<u64>> {
    let k = m.len();
    let mut links = vec![vec![0u64; k]; k];
    for (x, row) in links.iter_mut().enumerate() {
        for (y, link) in row.iter_mut().enumerate() {
            let (cx, cy) = (CandidateId::new(x), CandidateId::new(y));
            if x != y && m.beats(cx, cy) {
                *link = match strength {
                    SchulzeStrength::WinningVotes => m.get(cx, cy),
                    SchulzeStrength::Margins => m.get(cx, cy) - m.get(cy, cx),
                };
            }
        }
    }
    links
}

/// Schulze method via widest paths (Floyd-Warshall with bottleneck
/// composition).
pub fn schulze(profile: &Profile<RankedBallot>, strength: SchulzeStrength) -> SchulzeOutcome {
    let m = PairwiseMatrix::from_profile(profile);
    let k = m.len();
    let mut p = schulze_links(&m, strength);
    for i in 0..k {
        for j in 0..k {
            if j == i {
                continue;
            }
            for l in 0..k {
                if l == i || l == j {
                    continue;
                }
                let via = p[j][i].min(p[i][l]);
                if via > p[j][l] {
                    p[j][l] = via;
                }
            }
        }
    }
    let mut left: Vec<usize> = (0..k).collect();
    let mut order = Vec::new();
    while !left.is_empty() {
        let group: Vec<usize> = left
            .iter()
            .copied()
            .filter(|&x| !left.iter().any(|&y| p[y][x] > p[x][y]))
            .collect();
        // The beat relation is a strict partial order, so a non-empty set
        // always has unbeaten members.
        debug_assert!(!group.is_empty());
        left.retain(|x| !group.contains(x));
        order.push(group.into_iter().map(CandidateId::new).collect::<Vec<_>>());
    }
    let winners = order.first().cloned().unwrap_or_default();
    SchulzeOutcome { strengths: p, order, winners }
}

/// Schulze as a single-winner tally; a tied winner set goes to the tie
/// policy.
pub fn schulze_tally(
    profile: &Profile<RankedBallot>,
    strength: SchulzeStrength,
    tie: TiePolicy,
) -> Result<TallyResult> {
    let outcome = schulze(profile, strength);
    let mut tb = TieBreaker::new(tie);
    let winner = tb.pick(1, &outcome.winners, Pick::Best, &[], "schulze winner")?;
    // Score each candidate by the number of rivals it beats on paths.
    let k = profile.candidate_count();
    let beaten: Vec<u64> = (0..k)
        .map(|x| (0..k).filter(|&y| outcome.strengths[x][y] > outcome.strengths[y][x]).count() as u64)
        .collect();
    let values = to_rationals(&beaten);
    let all = profile.roster().ids();
    let mut report = RoundReport::new(1, totals_map(all.clone(), &values), rational::zero());
    report.action = Action::Elected(vec![winner]);
    Ok(TallyResult {
        method: String::from("schulze"),
        winners: vec![winner],
        rounds: vec![report],
        ties: tb.into_events(),
        scores: totals_map(all, &values),
    })
}
