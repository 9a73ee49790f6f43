//! JSON documents for results, allocations, ballot files and witnesses.
//!
//! Objects are emitted with sorted keys and rationals as
//! `{"num": .., "den": .., "display": ..}`, so identical inputs serialise to
//! identical bytes. Candidates are referred to by name.

use std::collections::BTreeMap;

use ballotworks_core::apportionment::{SeatAllocation, Working};
use ballotworks_core::criteria::{Behaviour, Case, Outcome, Witness};
use ballotworks_core::rational::display_truncated;
use ballotworks_core::tie::Pick;
use ballotworks_core::{Action, CandidateId, Rational, RankedBallot, Roster, RoundReport, TallyResult, TieEvent};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::{ElectionFile, IoError, IoResult};

fn big_to_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}

fn big_from_json(v: &Value) -> IoResult<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| IoError::schema("integer expected")),
        Value::String(s) => s.parse().map_err(|_| IoError::schema("integer string expected")),
        _ => Err(IoError::schema("integer expected")),
    }
}

pub fn rational_to_json(r: &Rational, scale: usize) -> Value {
    json!({
        "num": big_to_json(r.numer()),
        "den": big_to_json(r.denom()),
        "display": display_truncated(r, scale),
    })
}

pub fn rational_from_json(v: &Value) -> IoResult<Rational> {
    let num = big_from_json(field(v, "num")?)?;
    let den = big_from_json(field(v, "den")?)?;
    if den == BigInt::from(0) {
        return Err(IoError::schema("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn field<'a>(v: &'a Value, key: &str) -> IoResult<&'a Value> {
    v.get(key).ok_or_else(|| IoError::schema(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, key: &str) -> IoResult<&'a Vec<Value>> {
    field(v, key)?.as_array().ok_or_else(|| IoError::schema(format!("{key:?} must be an array")))
}

fn string<'a>(v: &'a Value, key: &str) -> IoResult<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| IoError::schema(format!("{key:?} must be a string")))
}

fn uint(v: &Value, key: &str) -> IoResult<u64> {
    field(v, key)?.as_u64().ok_or_else(|| IoError::schema(format!("{key:?} must be a whole number")))
}

fn names(roster: &Roster, ids: &[CandidateId]) -> Value {
    Value::from(ids.iter().map(|&c| roster.name(c).to_string()).collect::<Vec<_>>())
}

fn ids(roster: &Roster, v: &Value) -> IoResult<Vec<CandidateId>> {
    v.as_array()
        .ok_or_else(|| IoError::schema("candidate list expected"))?
        .iter()
        .map(|n| id(roster, n))
        .collect()
}

fn id(roster: &Roster, v: &Value) -> IoResult<CandidateId> {
    let name = v.as_str().ok_or_else(|| IoError::schema("candidate name expected"))?;
    roster.find(name).ok_or_else(|| IoError::schema(format!("unknown candidate {name:?}")))
}

fn by_name(roster: &Roster, map: &BTreeMap<CandidateId, Rational>, scale: usize) -> Value {
    let m: Map<String, Value> =
        map.iter().map(|(c, r)| (roster.name(*c).to_string(), rational_to_json(r, scale))).collect();
    Value::Object(m)
}

fn from_names(roster: &Roster, v: &Value) -> IoResult<BTreeMap<CandidateId, Rational>> {
    let obj = v.as_object().ok_or_else(|| IoError::schema("object expected"))?;
    obj.iter()
        .map(|(name, r)| {
            let c = roster.find(name).ok_or_else(|| IoError::schema(format!("unknown candidate {name:?}")))?;
            Ok((c, rational_from_json(r)?))
        })
        .collect()
}

fn action_to_json(roster: &Roster, action: &Action) -> Value {
    let (kind, who): (&str, Vec<CandidateId>) = match action {
        Action::Elected(c) => ("elected", c.clone()),
        Action::Excluded(c) => ("excluded", c.clone()),
        Action::SurplusTransferred(c) => ("surplus", vec![*c]),
        Action::Runoff(a, b) => ("runoff", vec![*a, *b]),
        Action::None => ("none", Vec::new()),
    };
    json!({ "kind": kind, "candidates": names(roster, &who) })
}

fn action_from_json(roster: &Roster, v: &Value) -> IoResult<Action> {
    let who = ids(roster, field(v, "candidates")?)?;
    let one = || who.first().copied().ok_or_else(|| IoError::schema("action needs a candidate"));
    Ok(match string(v, "kind")? {
        "elected" => Action::Elected(who.clone()),
        "excluded" => Action::Excluded(who.clone()),
        "surplus" => Action::SurplusTransferred(one()?),
        "runoff" if who.len() == 2 => Action::Runoff(who[0], who[1]),
        "none" => Action::None,
        other => return Err(IoError::schema(format!("unknown action {other:?}"))),
    })
}

fn round_to_json(roster: &Roster, r: &RoundReport, scale: usize) -> Value {
    json!({
        "round": r.round,
        "totals": by_name(roster, &r.totals, scale),
        "exhausted": rational_to_json(&r.exhausted, scale),
        "quota": r.quota.as_ref().map_or(Value::Null, |q| rational_to_json(q, scale)),
        "action": action_to_json(roster, &r.action),
        "transfers": by_name(roster, &r.transfers, scale),
        "exhausted_transfer": rational_to_json(&r.exhausted_transfer, scale),
    })
}

fn round_from_json(roster: &Roster, v: &Value) -> IoResult<RoundReport> {
    let quota = match field(v, "quota")? {
        Value::Null => None,
        q => Some(rational_from_json(q)?),
    };
    Ok(RoundReport {
        round: uint(v, "round")? as usize,
        totals: from_names(roster, field(v, "totals")?)?,
        exhausted: rational_from_json(field(v, "exhausted")?)?,
        quota,
        action: action_from_json(roster, field(v, "action")?)?,
        transfers: from_names(roster, field(v, "transfers")?)?,
        exhausted_transfer: rational_from_json(field(v, "exhausted_transfer")?)?,
    })
}

fn tie_to_json(roster: &Roster, t: &TieEvent) -> Value {
    json!({
        "round": t.round,
        "tied": names(roster, &t.tied),
        "pick": match t.pick { Pick::Best => "best", Pick::Worst => "worst" },
        "chosen": roster.name(t.chosen),
    })
}

fn tie_from_json(roster: &Roster, v: &Value) -> IoResult<TieEvent> {
    Ok(TieEvent {
        round: uint(v, "round")? as usize,
        tied: ids(roster, field(v, "tied")?)?,
        pick: match string(v, "pick")? {
            "best" => Pick::Best,
            "worst" => Pick::Worst,
            other => return Err(IoError::schema(format!("unknown pick {other:?}"))),
        },
        chosen: id(roster, field(v, "chosen")?)?,
    })
}

/// Serialises a tally. `wasted` is informational and ignored when reading.
pub fn result_to_json(result: &TallyResult, roster: &Roster, scale: usize, wasted: Option<&Rational>) -> Value {
    json!({
        "candidates": roster.names(),
        "method": result.method,
        "winners": names(roster, &result.winners),
        "rounds": result.rounds.iter().map(|r| round_to_json(roster, r, scale)).collect::<Vec<_>>(),
        "ties": result.ties.iter().map(|t| tie_to_json(roster, t)).collect::<Vec<_>>(),
        "scores": by_name(roster, &result.scores, scale),
        "wasted": wasted.map_or(Value::Null, |w| rational_to_json(w, scale)),
    })
}

pub fn result_from_json(v: &Value) -> IoResult<(Roster, TallyResult)> {
    let candidates: Vec<String> = array(v, "candidates")?
        .iter()
        .map(|n| n.as_str().map(String::from).ok_or_else(|| IoError::schema("candidate names must be strings")))
        .collect::<IoResult<_>>()?;
    let roster = Roster::new(candidates)?;
    let result = TallyResult {
        method: string(v, "method")?.to_string(),
        winners: ids(&roster, field(v, "winners")?)?,
        rounds: array(v, "rounds")?.iter().map(|r| round_from_json(&roster, r)).collect::<IoResult<_>>()?,
        ties: array(v, "ties")?.iter().map(|t| tie_from_json(&roster, t)).collect::<IoResult<_>>()?,
        scores: from_names(&roster, field(v, "scores")?)?,
    };
    Ok((roster, result))
}

fn rationals(values: &[Rational], scale: usize) -> Value {
    Value::from(values.iter().map(|r| rational_to_json(r, scale)).collect::<Vec<_>>())
}

fn working_to_json(a: &SeatAllocation, scale: usize) -> Value {
    let party = |i: usize| a.parties.name(CandidateId::new(i)).to_string();
    match &a.working {
        Working::Averages { divisors, averages } => json!({
            "kind": "averages",
            "divisors": rationals(divisors, scale),
            "averages": averages.iter().enumerate().map(|(i, row)| json!({
                "party": party(i),
                "values": rationals(&row.iter().map(|x| x.value.clone()).collect::<Vec<_>>(), scale),
                "selected": row.iter().map(|x| x.selected).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
        Working::Remainders { quota, rows } => json!({
            "kind": "remainders",
            "quota": rational_to_json(quota, scale),
            "rows": rows.iter().enumerate().map(|(i, r)| json!({
                "party": party(i),
                "quotient": rational_to_json(&r.quotient, scale),
                "initial": r.initial,
                "remainder": rational_to_json(&r.remainder, scale),
                "extra": r.extra,
            })).collect::<Vec<_>>(),
        }),
        Working::WinnerTakesAll => json!({ "kind": "winner-takes-all" }),
        Working::Mixed { constituency, list, overhang, apportioned } => json!({
            "kind": "mixed",
            "constituency": constituency,
            "list": list,
            "overhang": overhang,
            "apportioned": allocation_to_json(apportioned, scale),
        }),
    }
}

pub fn allocation_to_json(a: &SeatAllocation, scale: usize) -> Value {
    json!({
        "method": a.method,
        "parties": a.parties.names(),
        "votes": rationals(&a.votes, scale),
        "seats": a.seats,
        "excluded": names(&a.parties, &a.excluded),
        "ties": a.ties.iter().map(|t| tie_to_json(&a.parties, t)).collect::<Vec<_>>(),
        "working": working_to_json(a, scale),
        "wasted": rational_to_json(&a.wasted_votes(), scale),
        "house_size": a.house_size(),
    })
}

/// Ballot file as JSON: `{title, seats, candidates, withdrawn, ballots}`.
pub fn election_to_json(file: &ElectionFile) -> Value {
    json!({
        "title": file.title,
        "seats": file.seats,
        "candidates": file.roster.names(),
        "withdrawn": names(&file.roster, &file.withdrawn),
        "ballots": file.ballots.iter().map(|b| json!({
            "weight": b.weight,
            "ranking": names(&file.roster, &b.ranking),
        })).collect::<Vec<_>>(),
    })
}

pub fn election_from_json(v: &Value) -> IoResult<ElectionFile> {
    let candidates: Vec<String> = array(v, "candidates")?
        .iter()
        .map(|n| n.as_str().map(String::from).ok_or_else(|| IoError::schema("candidate names must be strings")))
        .collect::<IoResult<_>>()?;
    let roster = Roster::new(candidates)?;
    let ballots = array(v, "ballots")?
        .iter()
        .map(|b| {
            let weight = uint(b, "weight")?;
            if weight == 0 {
                return Err(IoError::schema("ballot weights must be positive"));
            }
            Ok(RankedBallot::new(weight, ids(&roster, field(b, "ranking")?)?))
        })
        .collect::<IoResult<_>>()?;
    Ok(ElectionFile {
        title: v.get("title").and_then(Value::as_str).unwrap_or_default().to_string(),
        seats: v.get("seats").and_then(Value::as_u64).unwrap_or(1) as usize,
        withdrawn: match v.get("withdrawn") {
            Some(w) => ids(&roster, w)?,
            None => Vec::new(),
        },
        ballots,
        roster,
    })
}

fn case_to_json(roster: &Roster, case: &Case) -> Value {
    Value::from(
        case.voters
            .iter()
            .map(|v| {
                let behaviour = match v.behaviour {
                    Behaviour::Sincere => "sincere".to_string(),
                    Behaviour::ApproveTop(d) => format!("approve-top-{d}"),
                    Behaviour::Plump => "plump".to_string(),
                    Behaviour::BordaPoints => "borda-points".to_string(),
                };
                json!({ "weight": v.weight, "ranking": names(roster, &v.ranking), "behaviour": behaviour })
            })
            .collect::<Vec<_>>(),
    )
}

fn outcome_to_json(roster: &Roster, o: Option<Outcome>) -> Value {
    match o {
        Some(Outcome::Winner(c)) => Value::from(roster.name(c)),
        Some(Outcome::Tie) => Value::from("tie"),
        None => Value::Null,
    }
}

pub fn witness_to_json(system: &str, w: &Witness, roster: &Roster) -> Value {
    json!({
        "system": system,
        "criterion": format!("{:?}", w.criterion).to_lowercase(),
        "base": case_to_json(roster, &w.base),
        "base_outcome": outcome_to_json(roster, Some(w.base_outcome)),
        "variant": w.variant.as_ref().map_or(Value::Null, |c| case_to_json(roster, c)),
        "variant_outcome": outcome_to_json(roster, w.variant_outcome),
        "pair": w.pair.map_or(Value::Null, |(a, b)| names(roster, &[a, b])),
        "moves": w.moves.iter().map(|(g, c)| json!({ "group": g, "swap_with": roster.name(*c) })).collect::<Vec<_>>(),
        "relabel": names(roster, &w.relabel),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use ballotworks_core::multi_winner::{stv, StvConfig};
    use ballotworks_core::Profile;
    use ballotworks_core::rational;

    fn abo() -> (Roster, TallyResult) {
        let roster = Roster::new(["K", "M", "N", "S"]).unwrap();
        let lines: [(u64, &[usize]); 7] =
            [(4, &[0, 1]), (3, &[0, 2]), (13, &[1]), (18, &[2]), (6, &[3, 0]), (15, &[3, 1]), (12, &[3, 2])];
        let p = Profile::ranked(roster.clone(), lines.iter().map(|(w, r)| RankedBallot::from_indices(*w, r)).collect())
            .unwrap();
        (roster, stv(&p, &StvConfig::new(2)).unwrap())
    }

    #[test]
    fn rational_encoding() {
        let v = rational_to_json(&rational::ratio(54, 33), 2);
        assert_eq!(v, json!({"num": 18, "den": 11, "display": "1.63"}));
        assert_eq!(rational_from_json(&v).unwrap(), rational::ratio(18, 11));
        let huge = Rational::new(BigInt::from(u64::MAX) * 10, BigInt::from(3));
        assert_eq!(rational_from_json(&rational_to_json(&huge, 2)).unwrap(), huge);
    }

    #[test]
    fn result_round_trip() {
        let (roster, result) = abo();
        let v = result_to_json(&result, &roster, 2, None);
        let (roster2, back) = result_from_json(&v).unwrap();
        assert_eq!(roster2, roster);
        assert_eq!(back, result);
        assert_eq!(to_pretty(&v), to_pretty(&result_to_json(&back, &roster2, 2, None)));
    }

    #[test]
    fn election_round_trip() {
        let file = super::super::parse_blt("2 1\n-2\n3 1 2 0\n0\n\"A\"\n\"B\"\n\"t\"\n").unwrap();
        assert_eq!(election_from_json(&election_to_json(&file)).unwrap(), file);
    }
}
