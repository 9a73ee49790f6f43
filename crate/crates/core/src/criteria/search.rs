//! Bounded counterexample search and the system-by-criterion table.
//!
//! Instances are visited in a fixed order (seed cases first, then every
//! multiset of voter types by size and lexicographic order), so the first
//! witness found is always the same one.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::CandidateId;

use super::{
    judge, permutations, rearrangement_violation, Behaviour, Case, Criterion, Outcome, System, Verdict, Voter,
    Witness,
};

/// Limits on how far a search strays from each base instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Improvement moves applied for monotonicity.
    pub improvement_moves: usize,
    /// Voter groups whose ballots may change for IIA.
    pub iia_changes: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { improvement_moves: 2, iia_changes: 2 }
    }
}

/// Instances searched by [`criteria_table`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoolConfig {
    pub candidates: usize,
    /// Every multiset of up to this many single voters is enumerated.
    pub max_voters: usize,
    pub bounds: Bounds,
    /// Visited before the enumerated pool; cases over a different number of
    /// candidates are skipped.
    pub seeds: Vec<Case>,
}

impl Default for PoolConfig {
    fn default() -> Self {
        PoolConfig { candidates: 3, max_voters: 5, bounds: Bounds::default(), seeds: seed_cases() }
    }
}

/// Classic three-candidate counterexamples: plurality against the Condorcet
/// winner, the runoff monotonicity failure, the Borda/Condorcet clash and
/// the cyclic profile.
pub fn seed_cases() -> Vec<Case> {
    let lines: [&[(u64, &[usize])]; 4] = [
        &[(4, &[0, 1, 2]), (2, &[1, 2, 0]), (3, &[2, 1, 0])],
        &[(6, &[0, 1, 2]), (5, &[2, 0, 1]), (4, &[1, 2, 0]), (2, &[1, 0, 2])],
        &[(30, &[0, 1, 2]), (1, &[0, 2, 1]), (29, &[1, 0, 2]), (10, &[1, 2, 0]), (10, &[2, 0, 1]), (1, &[2, 1, 0])],
        &[(1, &[0, 1, 2]), (1, &[1, 2, 0]), (1, &[2, 0, 1])],
    ];
    lines.iter().map(|l| Case::ranked(3, l).expect("seed cases are valid")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Line {
    perm: u16,
    behaviour: Behaviour,
    weight: u64,
}

/// Outcome oracle over compact instances, memoised on the ballots the
/// system actually reads.
struct Engine<'a> {
    system: &'a System,
    k: usize,
    perms: Vec<Vec<CandidateId>>,
    index: BTreeMap<Vec<CandidateId>, u16>,
    palette: Vec<Behaviour>,
    cache: BTreeMap<Vec<(u32, u64)>, Outcome>,
}

impl<'a> Engine<'a> {
    fn new(system: &'a System, k: usize) -> Self {
        let perms: Vec<Vec<CandidateId>> = permutations(k)
            .into_iter()
            .map(|p| p.into_iter().map(CandidateId::new).collect())
            .collect();
        let index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i as u16)).collect();
        Engine { system, k, perms, index, palette: system.behaviours(k), cache: BTreeMap::new() }
    }

    fn ranking(&self, line: &Line) -> &[CandidateId] {
        &self.perms[line.perm as usize]
    }

    fn lines(&self, case: &Case) -> Vec<Line> {
        case.voters
            .iter()
            .map(|v| Line { perm: self.index[&v.ranking], behaviour: v.behaviour, weight: v.weight })
            .collect()
    }

    fn case(&self, lines: &[Line]) -> Case {
        Case {
            candidates: self.k,
            voters: lines
                .iter()
                .map(|l| Voter { weight: l.weight, ranking: self.ranking(l).to_vec(), behaviour: l.behaviour })
                .collect(),
        }
    }

    /// What the system reads from one ballot.
    fn code(&self, line: &Line) -> u32 {
        let r = self.ranking(line);
        let top = r[0].index() as u32;
        match (self.system, line.behaviour) {
            (System::Fptp, _) => top,
            (System::Approval, b) => {
                let d = match b {
                    Behaviour::ApproveTop(d) => d,
                    _ => 1,
                };
                r[..d].iter().fold(0, |m, c| m | 1 << c.index())
            }
            (System::Cumulative, Behaviour::BordaPoints) => 1 << 16 | u32::from(line.perm),
            (System::Cumulative, _) => top,
            _ => u32::from(line.perm),
        }
    }

    fn outcome(&mut self, lines: &[Line]) -> Outcome {
        let mut key: Vec<(u32, u64)> = lines.iter().map(|l| (self.code(l), l.weight)).collect();
        key.sort_unstable();
        let mut merged: Vec<(u32, u64)> = Vec::with_capacity(key.len());
        for (code, w) in key {
            match merged.last_mut() {
                Some(last) if last.0 == code => last.1 += w,
                _ => merged.push((code, w)),
            }
        }
        if let Some(o) = self.cache.get(&merged) {
            return *o;
        }
        let o = self.system.outcome(&self.case(lines));
        self.cache.insert(merged, o);
        o
    }

    fn swapped(&self, perm: u16, a: CandidateId, b: CandidateId) -> u16 {
        let mut r = self.perms[perm as usize].clone();
        for c in &mut r {
            if *c == a {
                *c = b;
            } else if *c == b {
                *c = a;
            }
        }
        self.index[&r]
    }

    /// Every single voter type, in lexicographic order.
    fn types(&self) -> Vec<(u16, Behaviour)> {
        (0..self.perms.len() as u16)
            .flat_map(|p| self.palette.iter().map(move |&b| (p, b)))
            .collect()
    }

    /// Multisets of `1..=max` single voters.
    fn pool(&self, max: usize) -> Vec<Vec<Line>> {
        let types = self.types();
        let mut out = Vec::new();
        for size in 1..=max {
            let mut pick = vec![0usize; size];
            loop {
                out.push(
                    pick.iter()
                        .map(|&t| Line { perm: types[t].0, behaviour: types[t].1, weight: 1 })
                        .collect(),
                );
                // Next non-decreasing sequence.
                let Some(i) = (0..size).rev().find(|&i| pick[i] + 1 < types.len()) else {
                    break;
                };
                let next = pick[i] + 1;
                for p in &mut pick[i..] {
                    *p = next;
                }
            }
        }
        out
    }

    /// Shortest sequence of improvement moves for the winner that makes
    /// someone else win.
    fn monotonicity(&mut self, base: &[Line], bound: usize) -> Option<Witness> {
        let Outcome::Winner(w) = self.outcome(base) else {
            return None;
        };
        for limit in 1..=bound {
            let mut moves = Vec::new();
            if let Some((lines, after)) = self.improve(base.to_vec(), w, limit, &mut moves) {
                return Some(Witness {
                    criterion: Criterion::Monotonicity,
                    base: self.case(base),
                    base_outcome: Outcome::Winner(w),
                    variant: Some(self.case(&lines)),
                    variant_outcome: Some(after),
                    pair: None,
                    moves,
                    relabel: Vec::new(),
                });
            }
        }
        None
    }

    fn improve(
        &mut self,
        lines: Vec<Line>,
        w: CandidateId,
        left: usize,
        moves: &mut Vec<(usize, CandidateId)>,
    ) -> Option<(Vec<Line>, Outcome)> {
        for i in 0..lines.len() {
            let ranking = self.ranking(&lines[i]).to_vec();
            let at = ranking.iter().position(|&c| c == w).expect("complete ranking");
            for &other in &ranking[..at] {
                let mut next = lines.clone();
                next[i].perm = self.swapped(lines[i].perm, w, other);
                moves.push((i, other));
                if left == 1 {
                    let after = self.outcome(&next);
                    if matches!(after, Outcome::Winner(x) if x != w) {
                        return Some((next, after));
                    }
                } else if let Some(found) = self.improve(next, w, left - 1, moves) {
                    return Some(found);
                }
                moves.pop();
            }
        }
        None
    }

    /// Alternative ballots for one line keeping its order between `a` and
    /// `b` (and, for approval, whether it approves each of them).
    fn alternatives(&self, line: &Line, a: CandidateId, b: CandidateId) -> Vec<Line> {
        let base = self.case(core::slice::from_ref(line));
        let behaviours: Vec<Behaviour> =
            if matches!(self.system, System::Approval) { self.palette.clone() } else { vec![line.behaviour] };
        let mut out = Vec::new();
        for perm in 0..self.perms.len() as u16 {
            for &behaviour in &behaviours {
                let alt = Line { perm, behaviour, weight: line.weight };
                if alt != *line
                    && super::preserves_pair(&base, &self.case(core::slice::from_ref(&alt)), a, b, self.system)
                {
                    out.push(alt);
                }
            }
        }
        out
    }

    /// Changes to at most `bound` lines that keep every line's order between
    /// the winner and some `b` but make `b` win.
    fn iia(&mut self, base: &[Line], bound: usize) -> Option<Witness> {
        let Outcome::Winner(a) = self.outcome(base) else {
            return None;
        };
        for b in (0..self.k).map(CandidateId::new).filter(|&b| b != a) {
            let alts: Vec<Vec<Line>> = base.iter().map(|l| self.alternatives(l, a, b)).collect();
            for changes in 1..=bound.min(base.len()) {
                for chosen in combinations(base.len(), changes) {
                    let mut choice = vec![0usize; changes];
                    if chosen.iter().any(|&i| alts[i].is_empty()) {
                        continue;
                    }
                    loop {
                        let mut variant = base.to_vec();
                        for (slot, &i) in chosen.iter().enumerate() {
                            variant[i] = alts[i][choice[slot]];
                        }
                        if self.outcome(&variant) == Outcome::Winner(b) {
                            return Some(Witness {
                                criterion: Criterion::Iia,
                                base: self.case(base),
                                base_outcome: Outcome::Winner(a),
                                variant: Some(self.case(&variant)),
                                variant_outcome: Some(Outcome::Winner(b)),
                                pair: Some((a, b)),
                                moves: Vec::new(),
                                relabel: Vec::new(),
                            });
                        }
                        // Odometer over the alternatives of the chosen lines.
                        let Some(slot) =
                            (0..changes).rev().find(|&s| choice[s] + 1 < alts[chosen[s]].len())
                        else {
                            break;
                        };
                        choice[slot] += 1;
                        for c in &mut choice[slot + 1..] {
                            *c = 0;
                        }
                    }
                }
            }
        }
        None
    }

    fn neutrality(&mut self, base: &[Line]) -> Option<Witness> {
        let before = self.outcome(base);
        for perm in permutations(self.k).into_iter().skip(1) {
            let perm: Vec<CandidateId> = perm.into_iter().map(CandidateId::new).collect();
            let relabeled: Vec<Line> = base
                .iter()
                .map(|l| {
                    let r: Vec<CandidateId> = self.ranking(l).iter().map(|c| perm[c.index()]).collect();
                    Line { perm: self.index[&r], ..*l }
                })
                .collect();
            let after = self.outcome(&relabeled);
            if after != before.relabeled(&perm) {
                return Some(Witness {
                    criterion: Criterion::Neutrality,
                    base: self.case(base),
                    base_outcome: before,
                    variant: Some(self.case(&relabeled)),
                    variant_outcome: Some(after),
                    pair: None,
                    moves: Vec::new(),
                    relabel: perm,
                });
            }
        }
        None
    }

    /// Reversed and rotated voter lists, counted afresh without the cache.
    fn equality(&self, base: &[Line]) -> Option<Witness> {
        let case = self.case(base);
        let before = self.system.outcome(&case);
        let mut reversed = case.clone();
        reversed.voters.reverse();
        let mut rotated = case.clone();
        rotated.voters.rotate_left(1);
        [reversed, rotated]
            .into_iter()
            .find_map(|variant| rearrangement_violation(self.system, &case, before, variant))
    }

    fn check(&mut self, criterion: Criterion, base: &[Line], bounds: &Bounds) -> Option<Witness> {
        let single = |v: Verdict| match v {
            Verdict::Violated(w) => Some(*w),
            _ => None,
        };
        match criterion {
            Criterion::Majority | Criterion::Condorcet => {
                let case = self.case(base);
                let favoured = if criterion == Criterion::Majority {
                    case.majority_candidate()
                } else {
                    case.condorcet_winner()
                };
                favoured?;
                let outcome = self.outcome(base);
                single(judge(criterion, &case, outcome, favoured))
            }
            Criterion::Pareto => {
                let Outcome::Winner(w) = self.outcome(base) else {
                    return None;
                };
                let case = self.case(base);
                let a = (0..self.k).map(CandidateId::new).find(|&a| a != w && case.unanimous(a, w))?;
                Some(Witness::single(Criterion::Pareto, &case, Outcome::Winner(w), (a, w)))
            }
            Criterion::Monotonicity => self.monotonicity(base, bounds.improvement_moves),
            Criterion::Iia => self.iia(base, bounds.iia_changes),
            Criterion::Neutrality => self.neutrality(base),
            Criterion::Equality => self.equality(base),
            Criterion::NearlyDecisive => None,
        }
    }
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(c.clone());
        let Some(i) = (0..r).rev().find(|&i| c[i] < n - r + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..r {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Searches for a monotonicity failure: improvement moves (the winner swaps
/// places with a candidate ranked above it in one voter group) that make
/// another candidate win.
pub fn search_monotonicity(system: &System, case: &Case, bounds: &Bounds) -> Verdict {
    let mut engine = Engine::new(system, case.candidates);
    let lines = engine.lines(case);
    match engine.monotonicity(&lines, bounds.improvement_moves) {
        Some(w) => Verdict::Violated(Box::new(w)),
        None => Verdict::NotRefuted { profiles: engine.cache.len() },
    }
}

/// Searches for an IIA failure: a second election, changing at most
/// `bounds.iia_changes` voter groups, in which every group keeps its order
/// between the winner and some rival, and the rival wins.
pub fn search_iia(system: &System, case: &Case, bounds: &Bounds) -> Verdict {
    let mut engine = Engine::new(system, case.candidates);
    let lines = engine.lines(case);
    match engine.iia(&lines, bounds.iia_changes) {
        Some(w) => Verdict::Violated(Box::new(w)),
        None => Verdict::NotRefuted { profiles: engine.cache.len() },
    }
}

/// Verdicts for every system and criterion over one pool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaTable {
    pub systems: Vec<&'static str>,
    pub criteria: Vec<Criterion>,
    /// `cells[system][criterion]`.
    pub cells: Vec<Vec<Verdict>>,
}

impl CriteriaTable {
    pub fn get(&self, system: &str, criterion: Criterion) -> Option<&Verdict> {
        let row = self.systems.iter().position(|s| *s == system)?;
        let col = self.criteria.iter().position(|c| *c == criterion)?;
        Some(&self.cells[row][col])
    }
}

/// Searches every `(system, criterion)` pair over the seeds and the
/// enumerated pool, stopping at the first verified witness.
pub fn criteria_table(systems: &[System], criteria: &[Criterion], config: &PoolConfig) -> CriteriaTable {
    let cells = systems
        .iter()
        .map(|system| {
            let mut engine = Engine::new(system, config.candidates);
            let mut bases: Vec<Vec<Line>> = config
                .seeds
                .iter()
                .filter(|c| c.candidates == config.candidates)
                .map(|c| engine.lines(c))
                .collect();
            bases.extend(engine.pool(config.max_voters));
            criteria
                .iter()
                .map(|&criterion| {
                    for base in &bases {
                        if let Some(w) = engine.check(criterion, base, &config.bounds) {
                            assert!(w.verify(system), "witness failed to replay");
                            return Verdict::Violated(Box::new(w));
                        }
                    }
                    Verdict::NotRefuted { profiles: bases.len() }
                })
                .collect()
        })
        .collect();
    CriteriaTable { systems: systems.iter().map(System::name).collect(), criteria: criteria.to_vec(), cells }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_sizes() {
        let engine = Engine::new(&System::Irv, 3);
        assert_eq!(engine.pool(5).len(), 461);
        let approval = Engine::new(&System::Approval, 3);
        assert_eq!(approval.pool(2).len(), 18 + 171);
    }

    #[test]
    fn combinations_in_order() {
        assert_eq!(combinations(4, 2), vec![
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3]
        ]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn irv_monotonicity_witness() {
        let e2 = &seed_cases()[1];
        let v = search_monotonicity(&System::Irv, e2, &Bounds::default());
        let w = v.witness().expect("violated");
        assert_eq!(w.base_outcome, Outcome::Winner(CandidateId(0)));
        assert_eq!(w.variant_outcome, Some(Outcome::Winner(CandidateId(2))));
        assert!(w.verify(&System::Irv));
    }

    #[test]
    fn fptp_iia_witness() {
        let e1 = &seed_cases()[0];
        let v = search_iia(&System::Fptp, e1, &Bounds { improvement_moves: 0, iia_changes: 1 });
        let w = v.witness().expect("violated");
        assert!(w.verify(&System::Fptp));
        assert_eq!(w.pair, Some((CandidateId(0), CandidateId(1))));
    }
}
