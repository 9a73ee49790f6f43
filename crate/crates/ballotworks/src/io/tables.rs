//! CSV tables: party votes, mixed-system inputs and score or point ballots.

use ballotworks_core::apportionment::PartyVotes;
use ballotworks_core::rational;
use ballotworks_core::{
    build_profile, CandidateId, CumulativeBallot, CumulativeRules, Profile, Rational, Roster, ScoreBallot,
    ScoreRange, Validation,
};

use super::{IoError, IoResult};

fn records(text: &str) -> IoResult<Vec<(usize, Vec<String>)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        out.push((line, record.iter().map(String::from).collect()));
    }
    Ok(out)
}

/// Drops a leading header row, recognised by a non-numeric second column.
fn skip_header(rows: &mut Vec<(usize, Vec<String>)>) {
    if rows.first().is_some_and(|(_, r)| r.len() > 1 && rational::parse(&r[1]).is_none()) {
        rows.remove(0);
    }
}

fn votes(line: usize, text: &str) -> IoResult<Rational> {
    rational::parse(text).ok_or_else(|| IoError::syntax(line, format!("expected a vote count, found {text:?}")))
}

/// `party,votes` rows; the header is optional and votes may be integers,
/// decimals or fractions.
pub fn parse_party_votes(text: &str) -> IoResult<PartyVotes> {
    let (votes, _) = party_rows(text, false)?;
    Ok(votes)
}

/// `party,votes,constituency_seats` rows for mixed systems.
pub fn parse_mixed(text: &str) -> IoResult<(PartyVotes, Vec<u64>)> {
    party_rows(text, true)
}

fn party_rows(text: &str, with_seats: bool) -> IoResult<(PartyVotes, Vec<u64>)> {
    let mut rows = records(text)?;
    skip_header(&mut rows);
    let width = if with_seats { 3 } else { 2 };
    let mut names = Vec::new();
    let mut values = Vec::new();
    let mut seats = Vec::new();
    for (line, row) in rows {
        if row.len() != width {
            return Err(IoError::syntax(line, format!("expected {width} columns")));
        }
        names.push(row[0].clone());
        values.push(votes(line, &row[1])?);
        if with_seats {
            let s = row[2].parse::<u64>().map_err(|_| IoError::syntax(line, "constituency seats must be a whole number"))?;
            seats.push(s);
        }
    }
    if names.is_empty() {
        return Err(IoError::syntax(0, "no parties"));
    }
    Ok((PartyVotes::new(&names, values)?, seats))
}

/// Writes `party,votes` with a header; non-integral votes as fractions.
pub fn write_party_votes(votes: &PartyVotes) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut rows = vec![("party".to_string(), "votes".to_string())];
    rows.extend(votes.parties().names().iter().zip(votes.votes()).map(|(n, v)| (n.clone(), v.to_string())));
    for row in rows {
        w.write_record([row.0, row.1]).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}

/// Source line, weight and one optional cell per candidate.
type GridRow = (usize, u64, Vec<Option<i64>>);

/// Header `weight,<candidate>,...` followed by one row per ballot; empty
/// cells are unscored.
fn grid(text: &str) -> IoResult<(Roster, Vec<GridRow>)> {
    let mut rows = records(text)?.into_iter();
    let (line, header) = rows.next().ok_or_else(|| IoError::syntax(1, "empty file"))?;
    if header.len() < 2 || !header[0].eq_ignore_ascii_case("weight") {
        return Err(IoError::syntax(line, "header must be \"weight,<candidate>,...\""));
    }
    let roster = Roster::new(header[1..].iter().cloned())?;
    let mut out = Vec::new();
    for (line, row) in rows {
        if row.len() != header.len() {
            return Err(IoError::syntax(line, format!("expected {} columns", header.len())));
        }
        let weight = row[0].parse::<u64>().map_err(|_| IoError::syntax(line, "weight must be a whole number"))?;
        let cells = row[1..]
            .iter()
            .map(|c| {
                if c.is_empty() {
                    Ok(None)
                } else {
                    c.parse::<i64>().map(Some).map_err(|_| IoError::syntax(line, format!("bad value {c:?}")))
                }
            })
            .collect::<IoResult<Vec<_>>>()?;
        out.push((line, weight, cells));
    }
    Ok((roster, out))
}

pub fn parse_scores(text: &str, range: ScoreRange, validation: Validation) -> IoResult<Profile<ScoreBallot>> {
    let (roster, rows) = grid(text)?;
    let ballots = rows
        .into_iter()
        .map(|(_, weight, cells)| {
            let scores = cells
                .into_iter()
                .enumerate()
                .filter_map(|(i, s)| s.map(|s| (CandidateId::new(i), s)))
                .collect();
            ScoreBallot::new(weight, scores)
        })
        .collect();
    Ok(build_profile(roster, ballots, range, validation)?)
}

pub fn parse_cumulative(
    text: &str,
    rules: CumulativeRules,
    validation: Validation,
) -> IoResult<Profile<CumulativeBallot>> {
    let (roster, rows) = grid(text)?;
    let mut ballots = Vec::new();
    for (line, weight, cells) in rows {
        let mut points = Vec::new();
        for (i, p) in cells.into_iter().enumerate() {
            match p {
                Some(p) if p < 0 => return Err(IoError::syntax(line, "points cannot be negative")),
                Some(0) | None => {}
                Some(p) => points.push((CandidateId::new(i), p as u64)),
            }
        }
        ballots.push(CumulativeBallot::new(weight, points));
    }
    Ok(build_profile(roster, ballots, rules, validation)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ballotworks_core::Error;

    #[test]
    fn party_votes_with_and_without_header() {
        let a = parse_party_votes("party,votes\nANC,2348564\nDA,1349001\n").unwrap();
        let b = parse_party_votes("ANC,2348564\nDA,1349001").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.votes()[1], rational::int(1_349_001));
        let pct = parse_party_votes("PO,34.97\nPiS,27.36").unwrap();
        assert_eq!(pct.votes()[0], rational::ratio(3497, 100));
    }

    #[test]
    fn party_votes_errors() {
        assert!(matches!(parse_party_votes("P,-1"), Err(IoError::Core(Error::NegativeVotes(_)))));
        assert!(matches!(parse_party_votes("P,1\nP,2"), Err(IoError::Core(Error::DuplicateParty(_)))));
        assert!(matches!(parse_party_votes("P,1,2"), Err(IoError::Syntax { .. })));
    }

    #[test]
    fn party_votes_round_trip() {
        let v = parse_party_votes("PO,34.97\nPiS,27.36\nX,1/3").unwrap();
        assert_eq!(parse_party_votes(&write_party_votes(&v)).unwrap(), v);
    }

    #[test]
    fn score_grid() {
        let p = parse_scores("weight,A,B\n2,5,\n1,0,3\n", ScoreRange::default(), Validation::Strict).unwrap();
        assert_eq!(p.total_weight(), 3);
        assert_eq!(p.ballots()[0].scores, vec![(CandidateId(0), 5)]);
        assert!(parse_scores("weight,A\n1,9\n", ScoreRange::default(), Validation::Strict).is_err());
    }

    #[test]
    fn mixed_rows() {
        let (v, seats) = parse_mixed("party,votes,seats\nP,50,4\nQ,30,1\n").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(seats, vec![4, 1]);
    }
}
