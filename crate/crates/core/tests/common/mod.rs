//! Fixtures, random generators and brute-force oracles shared by the
//! integration tests.
#![allow(dead_code)]

use ballotworks_core::apportionment::PartyVotes;
use ballotworks_core::rational::{self, Rational};
use ballotworks_core::{CandidateId, PairwiseMatrix, Profile, RankedBallot, Roster};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(i: usize) -> CandidateId {
    CandidateId::new(i)
}

pub fn ranked(names: &[&str], lines: &[(u64, &[usize])]) -> Profile<RankedBallot> {
    let roster = Roster::new(names.iter().copied()).unwrap();
    let ballots = lines.iter().map(|&(w, r)| RankedBallot::from_indices(w, r)).collect();
    Profile::ranked(roster, ballots).unwrap()
}

/// Derwent Valley mayoral count rebuilt from its transfer table.
/// Candidates: PBe, PBi, MEv, CLe, FPe.
pub fn derwent_valley() -> Profile<RankedBallot> {
    ranked(
        &["PBe", "PBi", "MEv", "CLe", "FPe"],
        &[
            (870, &[0]),
            (1632, &[2]),
            (73, &[1, 0]),
            (86, &[1, 2]),
            (13, &[1, 3, 0]),
            (47, &[1, 3]),
            (62, &[1, 4, 2]),
            (52, &[1]),
            (141, &[3, 0]),
            (147, &[3, 2]),
            (11, &[3, 4, 2]),
            (124, &[3, 4]),
            (386, &[4, 0]),
            (234, &[4, 2]),
        ],
    )
}

/// Seventy-one ballots over K, M, N, S, two vacancies.
pub fn land_council() -> Profile<RankedBallot> {
    ranked(
        &["K", "M", "N", "S"],
        &[(4, &[0, 1]), (3, &[0, 2]), (13, &[1]), (18, &[2]), (6, &[3, 0]), (15, &[3, 1]), (12, &[3, 2])],
    )
}

pub const ABC: [&str; 3] = ["A", "B", "C"];

pub fn election1() -> Profile<RankedBallot> {
    ranked(&ABC, &[(4, &[0, 1, 2]), (2, &[1, 2, 0]), (3, &[2, 1, 0])])
}

pub fn election2() -> Profile<RankedBallot> {
    ranked(&ABC, &[(6, &[0, 1, 2]), (5, &[2, 0, 1]), (4, &[1, 2, 0]), (2, &[1, 0, 2])])
}

/// Election 2 after the last group moves A above B.
pub fn election2_raised() -> Profile<RankedBallot> {
    ranked(&ABC, &[(6, &[0, 1, 2]), (5, &[2, 0, 1]), (4, &[1, 2, 0]), (2, &[0, 1, 2])])
}

pub fn election3() -> Profile<RankedBallot> {
    ranked(
        &ABC,
        &[(30, &[0, 1, 2]), (1, &[0, 2, 1]), (29, &[1, 0, 2]), (10, &[1, 2, 0]), (10, &[2, 0, 1]), (1, &[2, 1, 0])],
    )
}

/// Vote shares in percent, kept exact.
pub fn czestochowa() -> PartyVotes {
    let rows = [
        ("PO", 3497),
        ("PiS", 2736),
        ("RP", 1339),
        ("SLD", 1049),
        ("PSL", 877),
        ("PJN", 214),
        ("NP", 206),
        ("PPP", 84),
    ];
    let names: Vec<&str> = rows.iter().map(|r| r.0).collect();
    PartyVotes::new(&names, rows.iter().map(|r| rational::ratio(r.1, 100)).collect()).unwrap()
}

/// The eight listed parties plus four small ones standing in for the
/// unlisted remainder of the 4,382,163 valid votes.
pub fn gauteng() -> PartyVotes {
    PartyVotes::from_counts(&[
        ("ANC", 2_348_564),
        ("DA", 1_349_001),
        ("EFF", 451_318),
        ("VF+", 52_436),
        ("IFP", 34_240),
        ("ACDP", 27_196),
        ("COPE", 21_652),
        ("NFP", 20_733),
        ("Other 1", 19_256),
        ("Other 2", 19_256),
        ("Other 3", 19_256),
        ("Other 4", 19_255),
    ])
    .unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random ranked profile: `k` candidates, up to `groups` ballot lines with
/// weights 1..=5 and rankings truncated at random unless `complete`.
pub fn random_profile(rng: &mut ChaCha8Rng, k: usize, groups: usize, complete: bool) -> Profile<RankedBallot> {
    let roster = Roster::lettered(k);
    let n = rng.random_range(1..=groups);
    let ballots = (0..n)
        .map(|_| {
            let mut order: Vec<usize> = (0..k).collect();
            order.shuffle(rng);
            let len = if complete { k } else { rng.random_range(1..=k) };
            RankedBallot::from_indices(rng.random_range(1..=5), &order[..len])
        })
        .collect();
    Profile::ranked(roster, ballots).unwrap()
}

/// Smallest set whose members all beat every outsider, by trying subsets
/// in order of size.
pub fn smith_by_subsets(m: &PairwiseMatrix) -> Vec<CandidateId> {
    let k = m.len();
    let mut masks: Vec<u32> = (1..(1u32 << k)).collect();
    masks.sort_by_key(|s| (s.count_ones(), *s));
    for s in masks {
        let inside = |i: usize| s & (1 << i) != 0;
        let dominates =
            (0..k).filter(|&i| inside(i)).all(|i| (0..k).filter(|&j| !inside(j)).all(|j| m.get(c(i), c(j)) > m.get(c(j), c(i))));
        if dominates {
            return (0..k).filter(|&i| inside(i)).map(c).collect();
        }
    }
    unreachable!("the full set always dominates")
}

/// Strongest path strength between every ordered pair, enumerating every
/// simple path. Links carry the winning side's votes; defeats only.
pub fn strongest_paths_by_enumeration(m: &PairwiseMatrix) -> Vec<Vec<u64>> {
    let k = m.len();
    let link = |i: usize, j: usize| {
        let (a, b) = (m.get(c(i), c(j)), m.get(c(j), c(i)));
        if a > b {
            a
        } else {
            0
        }
    };
    fn walk(at: usize, to: usize, width: u64, seen: &mut Vec<bool>, link: &dyn Fn(usize, usize) -> u64, best: &mut u64) {
        if at == to {
            *best = (*best).max(width);
            return;
        }
        for next in 0..seen.len() {
            let w = link(at, next);
            if !seen[next] && w > 0 {
                seen[next] = true;
                walk(next, to, width.min(w), seen, link, best);
                seen[next] = false;
            }
        }
    }
    let mut out = vec![vec![0; k]; k];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i != j {
                let mut seen = vec![false; k];
                seen[i] = true;
                walk(i, j, u64::MAX, &mut seen, &link, cell);
            }
        }
    }
    out
}

pub fn sum(values: impl IntoIterator<Item = Rational>) -> Rational {
    values.into_iter().fold(rational::zero(), |a, b| a + b)
}

/// Every complete ranking of `k` candidates.
pub fn all_rankings(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in all_rankings(k - 1) {
        for at in 0..=rest.len() {
            let mut r = rest.clone();
            r.insert(at, k - 1);
            out.push(r);
        }
    }
    out
}
