//! BLT ballot files.
//!
//! ```text
//! 3 1            candidates, seats
//! -2             optional: withdrawn candidates, negated
//! 4 1 2 3 0      weight, preferences (1-based), 0
//! 2 2 3 1 0
//! 0              end of ballots
//! "A"            one quoted name per candidate
//! "B"
//! "C"
//! "Election 1"   quoted title
//! ```

use ballotworks_core::{CandidateId, Profile, RankedBallot, Roster};

use super::{IoError, IoResult};

/// Contents of a BLT file.
#[derive(Clone, Debug, PartialEq)]
pub struct ElectionFile {
    pub title: String,
    pub seats: usize,
    pub withdrawn: Vec<CandidateId>,
    /// Ballots as listed, withdrawn candidates included.
    pub ballots: Vec<RankedBallot>,
    pub roster: Roster,
}

impl ElectionFile {
    /// The validated profile, with withdrawn candidates struck from every
    /// ballot. Ballots left empty are dropped.
    pub fn profile(&self) -> IoResult<Profile<RankedBallot>> {
        let ballots = self
            .ballots
            .iter()
            .map(|b| {
                let ranking = b.ranking.iter().copied().filter(|c| !self.withdrawn.contains(c)).collect();
                RankedBallot::new(b.weight, ranking)
            })
            .filter(|b| !b.ranking.is_empty())
            .collect();
        Ok(Profile::ranked(self.roster.clone(), ballots)?)
    }
}

/// Meaningful lines with their 1-based line numbers; blank lines and `#`
/// comments are skipped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, text: &str) -> IoResult<Vec<i64>> {
    text.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| IoError::syntax(line, format!("expected an integer, found {t:?}"))))
        .collect()
}

fn quoted(line: usize, text: &str) -> IoResult<String> {
    text.strip_prefix('"')
        .and_then(|t| t.strip_suffix('"'))
        .map(|t| t.replace("\\\"", "\""))
        .ok_or_else(|| IoError::syntax(line, "expected a quoted string"))
}

pub fn parse_blt(text: &str) -> IoResult<ElectionFile> {
    let mut it = lines(text).peekable();
    let (first_line, header) = it.next().ok_or_else(|| IoError::syntax(1, "empty file"))?;
    let head = numbers(first_line, header)?;
    let [k, seats] = head[..] else {
        return Err(IoError::syntax(first_line, "header must be \"candidates seats\""));
    };
    if k <= 0 || seats <= 0 {
        return Err(IoError::syntax(first_line, "candidate and seat counts must be positive"));
    }
    let k = k as usize;
    let check = |line: usize, v: i64| -> IoResult<CandidateId> {
        if v < 1 || v as usize > k {
            return Err(IoError::CandidateIndexOutOfRange { line, index: v, candidates: k });
        }
        Ok(CandidateId::new(v as usize - 1))
    };

    let mut withdrawn = Vec::new();
    if let Some(&(line, text)) = it.peek() {
        if text.starts_with('-') {
            for v in numbers(line, text)? {
                if v >= 0 {
                    return Err(IoError::syntax(line, "withdrawn candidates are written as negative indices"));
                }
                withdrawn.push(check(line, -v)?);
            }
            it.next();
        }
    }

    let mut ballots = Vec::new();
    let mut terminated = false;
    for (line, text) in it.by_ref() {
        let values = numbers(line, text)?;
        if values == [0] {
            terminated = true;
            break;
        }
        let (&weight, rest) = values.split_first().expect("lines are non-empty");
        if weight <= 0 {
            return Err(IoError::syntax(line, "ballot weights must be positive"));
        }
        let Some((&0, prefs)) = rest.split_last() else {
            return Err(IoError::syntax(line, "ballot line must end with 0"));
        };
        if prefs.is_empty() {
            return Err(IoError::syntax(line, "ballot lists no candidates"));
        }
        let ranking = prefs.iter().map(|&v| check(line, v)).collect::<IoResult<Vec<_>>>()?;
        let mut seen = vec![false; k];
        for c in &ranking {
            if std::mem::replace(&mut seen[c.index()], true) {
                return Err(IoError::syntax(line, format!("candidate {} ranked twice", c.index() + 1)));
            }
        }
        ballots.push(RankedBallot::new(weight as u64, ranking));
    }
    if !terminated {
        return Err(IoError::MissingTerminator);
    }
    if ballots.is_empty() {
        return Err(IoError::syntax(first_line, "no ballots"));
    }

    let mut names = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, text) = it.next().ok_or_else(|| IoError::syntax(0, format!("expected {k} candidate names")))?;
        names.push(quoted(line, text)?);
    }
    let title = match it.next() {
        Some((line, text)) => quoted(line, text)?,
        None => String::new(),
    };
    if let Some((line, _)) = it.next() {
        return Err(IoError::syntax(line, "unexpected content after the title"));
    }
    Ok(ElectionFile { title, seats: seats as usize, withdrawn, ballots, roster: Roster::new(names)? })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

pub fn write_blt(file: &ElectionFile) -> String {
    let mut out = format!("{} {}\n", file.roster.len(), file.seats);
    if !file.withdrawn.is_empty() {
        let ids: Vec<String> = file.withdrawn.iter().map(|c| format!("-{}", c.index() + 1)).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    for b in &file.ballots {
        out.push_str(&b.weight.to_string());
        for c in &b.ranking {
            out.push_str(&format!(" {}", c.index() + 1));
        }
        out.push_str(" 0\n");
    }
    out.push_str("0\n");
    for name in file.roster.names() {
        out.push_str(&quote(name));
        out.push('\n');
    }
    out.push_str(&quote(&file.title));
    out.push('\n');
    out
}
