//! Plain-text tables for terminals.
//!
//! Tally tables truncate toward zero so that displayed transfers never
//! overstate what moved; apportionment tables round.

use ballotworks_core::apportionment::{SeatAllocation, Working};
use ballotworks_core::criteria::{Behaviour, Case, CriteriaTable, Outcome, Verdict, Witness};
use ballotworks_core::rational::{display_rounded, display_truncated};
use ballotworks_core::{Action, CandidateId, Rational, Roster, TallyResult};
use num_bigint::Sign;

/// Column-aligned text: first column left-aligned, the rest right-aligned.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self) -> String {
        let columns = self.rows.iter().map(Vec::len).chain([self.header.len()]).max().unwrap_or(0);
        let mut widths = vec![0usize; columns];
        for row in std::iter::once(&self.header).chain(&self.rows) {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let mut line = String::new();
            for (i, w) in widths.iter().enumerate() {
                let cell = row.get(i).map(String::as_str).unwrap_or("");
                if i == 0 {
                    line.push_str(&format!("{cell:<w$}"));
                } else {
                    line.push_str(&format!("  {cell:>w$}"));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

fn signed(r: &Rational, scale: usize) -> String {
    match r.numer().sign() {
        Sign::NoSign => String::new(),
        Sign::Plus => format!("+{}", display_truncated(r, scale)),
        Sign::Minus => display_truncated(r, scale),
    }
}

fn who(roster: &Roster, ids: &[CandidateId]) -> String {
    ids.iter().map(|&c| roster.name(c)).collect::<Vec<_>>().join(", ")
}

fn remark(roster: &Roster, action: &Action) -> String {
    match action {
        Action::Elected(c) => format!("{} elected", who(roster, c)),
        Action::Excluded(c) => format!("{} excluded", who(roster, c)),
        Action::SurplusTransferred(c) => format!("{} surplus", roster.name(*c)),
        Action::Runoff(a, b) => format!("{} v {} runoff", roster.name(*a), roster.name(*b)),
        Action::None => String::new(),
    }
}

/// Round-by-round count sheet: totals per count, signed transfers between
/// counts, exhausted pile, quota and a remark per count. Single-count
/// results print the final scores.
pub fn tally_table(result: &TallyResult, roster: &Roster, scale: usize) -> String {
    let mut t = Table { header: vec!["Candidate".into()], rows: Vec::new() };
    let rounds = &result.rounds;
    let with_transfer: Vec<bool> =
        rounds.iter().map(|r| !r.transfers.is_empty() || r.exhausted_transfer != Rational::default()).collect();
    for (r, &tr) in rounds.iter().zip(&with_transfer) {
        t.header.push(if rounds.len() == 1 { "Votes".into() } else { format!("Count {}", r.round) });
        if tr {
            t.header.push("Transfer".into());
        }
    }
    let line = |label: String, cell: &dyn Fn(&ballotworks_core::RoundReport) -> (String, String)| {
        let mut row = vec![label];
        for (r, &tr) in rounds.iter().zip(&with_transfer) {
            let (total, transfer) = cell(r);
            row.push(total);
            if tr {
                row.push(transfer);
            }
        }
        row
    };
    let mut rows = Vec::new();
    for c in roster.ids() {
        rows.push(line(roster.name(c).to_string(), &|r| {
            (
                r.totals.get(&c).map(|v| display_truncated(v, scale)).unwrap_or_default(),
                r.transfers.get(&c).map(|v| signed(v, scale)).unwrap_or_default(),
            )
        }));
    }
    if rounds.iter().any(|r| r.exhausted != Rational::default() || r.exhausted_transfer != Rational::default()) {
        rows.push(line("Exhausted".into(), &|r| {
            (display_truncated(&r.exhausted, scale), signed(&r.exhausted_transfer, scale))
        }));
    }
    if rounds.iter().any(|r| r.quota.is_some()) {
        rows.push(line("Quota".into(), &|r| {
            (r.quota.as_ref().map(|q| display_truncated(q, scale)).unwrap_or_default(), String::new())
        }));
    }
    rows.push(line("Remark".into(), &|r| (remark(roster, &r.action), String::new())));
    t.rows = rows;

    let mut out = format!("{}\n\n", result.method);
    out.push_str(&t.render());
    out.push_str(&format!("\nElected: {}\n", who(roster, &result.winners)));
    for tie in &result.ties {
        out.push_str(&format!(
            "Tie in count {} among {} resolved for {}\n",
            tie.round,
            who(roster, &tie.tied),
            roster.name(tie.chosen)
        ));
    }
    out
}

/// Seat allocation with its working: averages (selected ones starred),
/// quota/remainder columns, or the constituency and list tiers.
pub fn allocation_table(a: &SeatAllocation, scale: usize) -> String {
    let round = |r: &Rational| display_rounded(r, scale);
    let mut t = Table { header: vec!["Party".into(), "Votes".into()], rows: Vec::new() };
    let mut notes = Vec::new();
    let parties: Vec<CandidateId> = a.parties.ids().collect();
    match &a.working {
        Working::Averages { divisors, averages } => {
            let shown = (a.seats.iter().copied().max().unwrap_or(0) as usize + 1).min(divisors.len());
            for d in &divisors[..shown] {
                t.header.push(format!("/{}", round(d)));
            }
            for &p in &parties {
                let mut row = vec![a.parties.name(p).to_string(), round(&a.votes[p.index()])];
                for avg in &averages[p.index()][..shown] {
                    row.push(format!("{}{}", round(&avg.value), if avg.selected { "*" } else { " " }));
                }
                t.rows.push(row);
            }
            notes.push("* average awarded a seat".to_string());
        }
        Working::Remainders { quota, rows } => {
            for h in ["Quotient", "Initial", "Remainder", "Extra"] {
                t.header.push(h.into());
            }
            for &p in &parties {
                let r = &rows[p.index()];
                t.rows.push(vec![
                    a.parties.name(p).to_string(),
                    round(&a.votes[p.index()]),
                    round(&r.quotient),
                    r.initial.to_string(),
                    round(&r.remainder),
                    r.extra.to_string(),
                ]);
            }
            notes.push(format!("Quota: {}", round(quota)));
        }
        Working::WinnerTakesAll => {
            for &p in &parties {
                t.rows.push(vec![a.parties.name(p).to_string(), round(&a.votes[p.index()])]);
            }
        }
        Working::Mixed { constituency, list, overhang, .. } => {
            for h in ["Constituency", "List", "Overhang"] {
                t.header.push(h.into());
            }
            for &p in &parties {
                let i = p.index();
                t.rows.push(vec![
                    a.parties.name(p).to_string(),
                    round(&a.votes[i]),
                    constituency[i].to_string(),
                    list[i].to_string(),
                    overhang[i].to_string(),
                ]);
            }
            if overhang.iter().any(|&o| o > 0) {
                notes.push("Overhang seats retained; no leveling seats added".to_string());
            }
        }
    }
    t.header.push("Seats".into());
    for (row, &p) in t.rows.iter_mut().zip(&parties) {
        row.push(a.seats[p.index()].to_string());
    }
    let mut out = format!("{}\n\n", a.method);
    out.push_str(&t.render());
    out.push('\n');
    if !a.excluded.is_empty() {
        notes.push(format!("Below threshold: {}", who(&a.parties, &a.excluded)));
    }
    let total = a.votes.iter().fold(Rational::default(), |acc, v| acc + v);
    let wasted = a.wasted_votes();
    if total != Rational::default() {
        let pct = &wasted * Rational::from_integer(100.into()) / &total;
        notes.push(format!("Wasted votes: {} ({}%)", round(&wasted), round(&pct)));
    }
    notes.push(format!("House size: {}", a.house_size()));
    for n in notes {
        out.push_str(&n);
        out.push('\n');
    }
    out
}

pub fn criteria_matrix(table: &CriteriaTable) -> String {
    let mut t = Table { header: vec!["System".into()], rows: Vec::new() };
    t.header.extend(table.criteria.iter().map(|c| c.label().to_string()));
    for (name, cells) in table.systems.iter().zip(&table.cells) {
        let mut row = vec![name.to_string()];
        row.extend(cells.iter().map(|v| {
            match v {
                Verdict::Violated(_) => "✗",
                Verdict::Holds | Verdict::NotRefuted { .. } => "✓",
                Verdict::Inconclusive => "?",
            }
            .to_string()
        }));
        t.rows.push(row);
    }
    let mut out = t.render();
    out.push_str("\n✗ violated, with a replayed witness; ✓ not refuted within the search bounds\n");
    out
}

fn case_lines(case: &Case, roster: &Roster) -> Vec<String> {
    case.voters
        .iter()
        .map(|v| {
            let order = v.ranking.iter().map(|&c| roster.name(c)).collect::<Vec<_>>().join(">");
            let how = match v.behaviour {
                Behaviour::Sincere => String::new(),
                Behaviour::ApproveTop(d) => format!(" (approve top {d})"),
                Behaviour::Plump => " (plump)".to_string(),
                Behaviour::BordaPoints => " (points by rank)".to_string(),
            };
            format!("  {:>6}  {order}{how}", v.weight)
        })
        .collect()
}

fn outcome_text(o: Outcome, roster: &Roster) -> String {
    match o {
        Outcome::Winner(c) => format!("{} wins", roster.name(c)),
        Outcome::Tie => "tie".to_string(),
    }
}

/// Human-readable replay of a counterexample.
pub fn witness_text(w: &Witness, roster: &Roster) -> String {
    let mut out = String::from("base profile:\n");
    for l in case_lines(&w.base, roster) {
        out.push_str(&l);
        out.push('\n');
    }
    out.push_str(&format!("  -> {}\n", outcome_text(w.base_outcome, roster)));
    for (group, c) in &w.moves {
        out.push_str(&format!("move: group {} raises the winner above {}\n", group + 1, roster.name(*c)));
    }
    if !w.relabel.is_empty() {
        let names: Vec<&str> = w.relabel.iter().map(|&c| roster.name(c)).collect();
        out.push_str(&format!("relabel: {}\n", names.join(" ")));
    }
    if let Some(v) = &w.variant {
        out.push_str("variant profile:\n");
        for l in case_lines(v, roster) {
            out.push_str(&l);
            out.push('\n');
        }
        if let Some(o) = w.variant_outcome {
            out.push_str(&format!("  -> {}\n", outcome_text(o, roster)));
        }
    }
    if let Some((a, b)) = w.pair {
        out.push_str(&format!("candidates: {}, {}\n", roster.name(a), roster.name(b)));
    }
    out
}
