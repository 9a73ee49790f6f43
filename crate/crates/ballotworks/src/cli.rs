//! Argument parsing and dispatch for the `ballotworks` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use ballotworks_core::apportionment::{
    highest_averages, largest_remainder, party_block_vote, DivisorFamily, PartyVotes, QuotaKind, SeatAllocation,
};
use ballotworks_core::criteria::{
    check_condorcet, check_equality, check_majority, check_may_properties, check_neutrality, check_pareto,
    criteria_table, search_iia, search_monotonicity, wasted_votes_nominal, wasted_votes_ranked, Behaviour, Bounds,
    Case, Criterion, MayProperty, MayRule, MayVerdict, Outcome, PoolConfig, System, Verdict, Voter,
};
use ballotworks_core::mixed::{mmp, parallel, ListMethod, MixedInput};
use ballotworks_core::multi_winner::{block_vote, stv, StvConfig};
use ballotworks_core::rational::{self, display_rounded, Rational};
use ballotworks_core::single_winner as sw;
use ballotworks_core::{
    CumulativeRules, Error as CoreError, NominalBallot, Profile, RankedBallot, Roster, ScoreRange, TallyResult,
    TiePolicy, Validation,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::io::{self, IoError};
use crate::render;

#[derive(Debug, Parser)]
#[command(name = "ballotworks", version, about = "Exact election tallies, seat apportionment and criteria audits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count a ballot file with a single- or multi-winner method.
    Tally(TallyArgs),
    /// Allocate seats from a party vote table.
    Apportion(ApportionArgs),
    /// Two-tier allocation from party votes and constituency seats.
    Mixed(MixedArgs),
    /// Check a voting system against a fairness criterion.
    Audit(AuditArgs),
    /// Convert a ballot file between BLT and JSON.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieArg {
    Error,
    FirstListed,
    Backward,
    Random,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Tie-breaking policy.
    #[arg(long, value_enum, default_value = "backward")]
    pub tie: TieArg,
    /// Seed for random tie-breaking.
    #[arg(long, env = "BALLOTWORKS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Decimal places shown in tables.
    #[arg(long, default_value_t = 2)]
    pub scale: usize,
}

impl Output {
    fn policy(&self) -> TiePolicy {
        match self.tie {
            TieArg::Error => TiePolicy::Error,
            TieArg::FirstListed => TiePolicy::FirstListed,
            TieArg::Backward => TiePolicy::BackwardThenFirstListed,
            TieArg::Random => TiePolicy::SeededRandom(self.seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TallyMethod {
    Fptp,
    Approval,
    Irv,
    Coombs,
    Contingent,
    Borda,
    Range,
    Mj,
    Cumulative,
    SmithIrv,
    Black,
    Schulze,
    Stv,
    Block,
    Sntv,
    Limited,
    Pbv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Standard,
    Slovenian,
    Dowdall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuotaArg {
    Hare,
    Droop,
    Hb,
    Imperiali,
}

impl From<QuotaArg> for QuotaKind {
    fn from(q: QuotaArg) -> Self {
        match q {
            QuotaArg::Hare => QuotaKind::Hare,
            QuotaArg::Droop => QuotaKind::Droop,
            QuotaArg::Hb => QuotaKind::HagenbachBischoff,
            QuotaArg::Imperiali => QuotaKind::Imperiali,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrengthArg {
    WinningVotes,
    Margins,
}

#[derive(Debug, Args)]
pub struct TallyArgs {
    #[arg(long, value_enum)]
    pub method: TallyMethod,
    /// BLT ballot file; a score grid for range, mj and cumulative; a party
    /// vote table for pbv.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Seats to fill; defaults to the count in the ballot file.
    #[arg(long)]
    pub seats: Option<usize>,
    /// Marks allowed per ballot for the limited vote.
    #[arg(long)]
    pub marks: Option<usize>,
    #[arg(long, value_enum, default_value = "standard")]
    pub scheme: SchemeArg,
    #[arg(long, value_enum, default_value = "droop")]
    pub quota: QuotaArg,
    /// Recompute the STV quota from the active vote each count.
    #[arg(long)]
    pub recompute_quota: bool,
    /// Preferences counted by the contingent vote (2 gives the supplementary vote).
    #[arg(long)]
    pub max_prefs: Option<usize>,
    #[arg(long, value_enum, default_value = "winning-votes")]
    pub strength: StrengthArg,
    /// Read only the first preference of each ballot for nominal methods.
    #[arg(long)]
    pub first_preferences: bool,
    /// Lowest score on a range or majority judgement ballot.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub min_score: i64,
    #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
    pub max_score: i64,
    /// Points per cumulative ballot.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Points one candidate may receive; defaults to the budget.
    #[arg(long)]
    pub cap: Option<u64>,
    /// Set invalid ballots aside instead of rejecting the file.
    #[arg(long)]
    pub lenient: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApportionMethod {
    Dhondt,
    SainteLague,
    Msl,
    Imperiali,
    Danish,
    Lr,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    #[arg(long, value_enum, default_value = "dhondt")]
    pub method: ApportionMethod,
    /// Quota for largest remainder.
    #[arg(long, value_enum, default_value = "droop")]
    pub quota: QuotaArg,
    /// Comma-separated divisors replacing the method's sequence.
    #[arg(long, value_delimiter = ',')]
    pub divisors: Vec<String>,
    /// Minimum vote share, as a fraction (0.05) or ratio (1/20).
    #[arg(long, default_value = "0")]
    pub threshold: String,
}

impl ListArgs {
    fn list_method(&self) -> Result<ListMethod, CliError> {
        if !self.divisors.is_empty() {
            let divisors = self.divisors.iter().map(|d| number(d)).collect::<Result<Vec<_>, _>>()?;
            return Ok(ListMethod::Divisor(DivisorFamily::Custom(divisors)));
        }
        Ok(match self.method {
            ApportionMethod::Dhondt => ListMethod::Divisor(DivisorFamily::DHondt),
            ApportionMethod::SainteLague => ListMethod::Divisor(DivisorFamily::SainteLague),
            ApportionMethod::Msl => ListMethod::Divisor(DivisorFamily::ModifiedSainteLague),
            ApportionMethod::Imperiali => ListMethod::Divisor(DivisorFamily::Imperiali),
            ApportionMethod::Danish => ListMethod::Divisor(DivisorFamily::Danish),
            ApportionMethod::Lr => ListMethod::Remainder(self.quota.into()),
        })
    }
}

#[derive(Debug, Args)]
pub struct ApportionArgs {
    #[command(flatten)]
    pub list: ListArgs,
    #[arg(long)]
    pub seats: u64,
    /// CSV of party,votes.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MixedMode {
    Mmp,
    Parallel,
}

#[derive(Debug, Args)]
pub struct MixedArgs {
    #[arg(long, value_enum)]
    pub mode: MixedMode,
    #[command(flatten)]
    pub list: ListArgs,
    /// House size for mmp; list seats for parallel.
    #[arg(long)]
    pub seats: u64,
    /// CSV of party,votes,constituency seats.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Majority,
    Condorcet,
    Monotonicity,
    Iia,
    Pareto,
    Equality,
    Neutrality,
    Table,
    May,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    Fptp,
    Approval,
    Trs,
    Contingent,
    Exhaustive,
    Irv,
    Borda,
    Cumulative,
    Schulze,
    SmithIrv,
    Black,
    Coombs,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::Fptp => System::Fptp,
            SystemArg::Approval => System::Approval,
            SystemArg::Trs => System::Trs,
            SystemArg::Contingent => System::Contingent,
            SystemArg::Exhaustive => System::Exhaustive,
            SystemArg::Irv => System::Irv,
            SystemArg::Borda => System::Borda,
            SystemArg::Cumulative => System::Cumulative,
            SystemArg::Schulze => System::Schulze,
            SystemArg::SmithIrv => System::SmithIrv,
            SystemArg::Black => System::Black,
            SystemArg::Coombs => System::Coombs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PointsArg {
    Plump,
    Borda,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, value_enum)]
    pub criterion: CriterionArg,
    #[arg(long, value_enum)]
    pub method: Option<SystemArg>,
    /// BLT file with complete rankings.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Search radius: improvement moves for monotonicity, changed
    /// ballots for IIA.
    #[arg(long, default_value_t = 2)]
    pub bounds: usize,
    /// Write the counterexample as JSON.
    #[arg(long, value_name = "FILE")]
    pub witness: Option<PathBuf>,
    /// Approvals per voter, counted down each ranking.
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    /// How cumulative voters spend their points.
    #[arg(long, value_enum, default_value = "plump")]
    pub points: PointsArg,
    /// Largest electorate enumerated by the table and May checks.
    #[arg(long)]
    pub max_voters: Option<usize>,
    /// Winning share for the May check; omitted means simple majority.
    #[arg(long)]
    pub super_majority: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Blt,
    Json,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub to: FileFormat,
    /// Destination; standard output when omitted.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Input(#[from] IoError),
    #[error(transparent)]
    Count(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Count(CoreError::TieUnresolved { .. })
            | CliError::Input(IoError::Core(CoreError::TieUnresolved { .. })) => 2,
            _ => 1,
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })
}

fn number(text: &str) -> Result<Rational, CliError> {
    rational::parse(text.trim()).ok_or_else(|| usage(format!("not a number: {text:?}")))
}

/// Parses `args` (program name first), runs the command and writes its
/// report to `out`. Returns the process exit code: 0 on success, 2 for a
/// tie left unresolved by the error policy, 1 for anything else.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => match out.write_all(report.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Tally(a) => tally(a),
        Command::Apportion(a) => apportion(a),
        Command::Mixed(a) => mixed(a),
        Command::Audit(a) => audit(a),
        Command::Convert(a) => convert(a),
    }
}

fn tally_report(result: &TallyResult, roster: &Roster, wasted: Option<&Rational>, o: &Output) -> String {
    match o.format {
        Format::Table => {
            let mut s = render::tally_table(result, roster, o.scale);
            if let Some(w) = wasted {
                s.push_str(&format!("Wasted votes: {}\n", display_rounded(w, o.scale)));
            }
            s
        }
        Format::Json => io::to_pretty(&io::result_to_json(result, roster, o.scale, wasted)),
    }
}

fn allocation_report(a: &SeatAllocation, o: &Output) -> String {
    match o.format {
        Format::Table => render::allocation_table(a, o.scale),
        Format::Json => io::to_pretty(&io::allocation_to_json(a, o.scale)),
    }
}

fn nominal_from(file: &io::ElectionFile, first_only: bool) -> Result<Profile<NominalBallot>, CliError> {
    let ranked = file.profile()?;
    if first_only {
        return Ok(ranked.first_preferences());
    }
    let ballots = ranked.ballots().iter().map(|b| NominalBallot::new(b.weight, b.ranking.clone())).collect();
    Ok(Profile::nominal(ranked.roster().clone(), ballots)?)
}

fn scheme(a: &TallyArgs) -> sw::BordaScheme {
    match a.scheme {
        SchemeArg::Standard => sw::BordaScheme::Standard,
        SchemeArg::Slovenian => sw::BordaScheme::Slovenian,
        SchemeArg::Dowdall => sw::BordaScheme::Dowdall,
    }
}

fn tally(a: &TallyArgs) -> Result<String, CliError> {
    let tie = a.output.policy();
    let text = read(&a.input)?;
    let validation = if a.lenient { Validation::Lenient } else { Validation::Strict };
    match a.method {
        TallyMethod::Pbv => {
            let votes = io::parse_party_votes(&text)?;
            let seats = a.seats.ok_or_else(|| usage("pbv needs --seats"))?;
            let alloc = party_block_vote(&votes, seats as u64, tie)?;
            return Ok(allocation_report(&alloc, &a.output));
        }
        TallyMethod::Range | TallyMethod::Mj => {
            let range = ScoreRange::new(a.min_score, a.max_score)?;
            let profile = io::parse_scores(&text, range, validation)?;
            let result = if a.method == TallyMethod::Range {
                sw::range_voting(&profile, tie)?
            } else {
                sw::majority_judgement(&profile, tie)?
            };
            return Ok(tally_report(&result, profile.roster(), None, &a.output));
        }
        TallyMethod::Cumulative => {
            let budget = a.budget.ok_or_else(|| usage("cumulative needs --budget"))?;
            let rules = CumulativeRules { budget, cap: a.cap.unwrap_or(budget) };
            let profile = io::parse_cumulative(&text, rules, validation)?;
            let result = sw::cumulative(&profile, a.seats.unwrap_or(1), tie)?;
            return Ok(tally_report(&result, profile.roster(), None, &a.output));
        }
        _ => {}
    }

    let file = io::parse_blt(&text)?;
    let seats = a.seats.unwrap_or(file.seats);
    let nominal = |first_only| -> Result<(Profile<NominalBallot>, TallyResult), CliError> {
        let profile = nominal_from(&file, first_only || a.first_preferences)?;
        let result = match a.method {
            TallyMethod::Fptp => sw::fptp(&profile, tie)?,
            TallyMethod::Approval => sw::approval(&profile, tie)?,
            TallyMethod::Block => block_vote(&profile, seats, a.marks.unwrap_or(seats), tie)?,
            TallyMethod::Sntv => block_vote(&profile, seats, 1, tie)?,
            TallyMethod::Limited => {
                let marks = a.marks.ok_or_else(|| usage("limited needs --marks"))?;
                block_vote(&profile, seats, marks, tie)?
            }
            _ => unreachable!("ranked methods are handled below"),
        };
        Ok((profile, result))
    };
    let ranked = |m: TallyMethod, p: &Profile<RankedBallot>| -> Result<TallyResult, CliError> {
        Ok(match m {
            TallyMethod::Irv => sw::irv(p, tie)?,
            TallyMethod::Coombs => sw::coombs(p, tie)?,
            TallyMethod::Contingent => sw::contingent(p, a.max_prefs, tie)?,
            TallyMethod::Borda => sw::borda(p, &scheme(a), tie)?,
            TallyMethod::SmithIrv => sw::smith_irv(p, tie)?,
            TallyMethod::Black => sw::black(p, &scheme(a), tie)?,
            TallyMethod::Schulze => {
                let strength = match a.strength {
                    StrengthArg::WinningVotes => sw::SchulzeStrength::WinningVotes,
                    StrengthArg::Margins => sw::SchulzeStrength::Margins,
                };
                sw::schulze_tally(p, strength, tie)?
            }
            TallyMethod::Stv => {
                let config = StvConfig {
                    quota_kind: a.quota.into(),
                    tie,
                    display_scale: a.output.scale,
                    recompute_quota: a.recompute_quota,
                    ..StvConfig::new(seats)
                };
                stv(p, &config)?
            }
            _ => unreachable!("nominal methods are handled above"),
        })
    };

    match a.method {
        TallyMethod::Fptp | TallyMethod::Sntv => {
            let (p, r) = nominal(true)?;
            let wasted = wasted_votes_nominal(&p, &r.winners).votes;
            Ok(tally_report(&r, p.roster(), Some(&wasted), &a.output))
        }
        TallyMethod::Approval | TallyMethod::Block | TallyMethod::Limited => {
            let (p, r) = nominal(false)?;
            let wasted = wasted_votes_nominal(&p, &r.winners).votes;
            Ok(tally_report(&r, p.roster(), Some(&wasted), &a.output))
        }
        m => {
            let p = file.profile()?;
            let r = ranked(m, &p)?;
            let wasted = wasted_votes_ranked(&p, &r.winners).votes;
            Ok(tally_report(&r, p.roster(), Some(&wasted), &a.output))
        }
    }
}

fn threshold(l: &ListArgs) -> Result<Rational, CliError> {
    number(&l.threshold)
}

fn apportion(a: &ApportionArgs) -> Result<String, CliError> {
    let votes: PartyVotes = io::parse_party_votes(&read(&a.input)?)?;
    let tie = a.output.policy();
    let t = threshold(&a.list)?;
    let alloc = match a.list.list_method()? {
        ListMethod::Divisor(family) => highest_averages(&votes, a.seats, &family, &t, tie)?,
        ListMethod::Remainder(kind) => largest_remainder(&votes, a.seats, kind, &t, tie)?,
    };
    Ok(allocation_report(&alloc, &a.output))
}

fn mixed(a: &MixedArgs) -> Result<String, CliError> {
    let (votes, constituency) = io::parse_mixed(&read(&a.input)?)?;
    let input = MixedInput {
        method: a.list.list_method()?,
        threshold: threshold(&a.list)?,
        tie: a.output.policy(),
        ..MixedInput::new(votes, constituency)?
    };
    let alloc = match a.mode {
        MixedMode::Mmp => mmp(&input, a.seats)?,
        MixedMode::Parallel => parallel(&input, a.seats)?,
    };
    Ok(allocation_report(&alloc, &a.output))
}

fn case_from(file: &io::ElectionFile, behaviour: Behaviour) -> Result<Case, CliError> {
    let profile = file.profile()?;
    let k = profile.candidate_count();
    let voters = profile
        .ballots()
        .iter()
        .map(|b| Voter { weight: b.weight, ranking: b.ranking.clone(), behaviour })
        .collect();
    Case::new(k, voters).map_err(|e| usage(format!("audit needs complete rankings: {e}")))
}

fn verdict_word(v: &Verdict) -> String {
    match v {
        Verdict::Holds => "holds".to_string(),
        Verdict::Violated(_) => "violated".to_string(),
        Verdict::NotRefuted { profiles } => format!("not refuted within bounds ({profiles} profiles searched)"),
        Verdict::Inconclusive => "inconclusive (the count ends in a tie)".to_string(),
    }
}

fn audit(a: &AuditArgs) -> Result<String, CliError> {
    match a.criterion {
        CriterionArg::Table => return audit_table(a),
        CriterionArg::May => return audit_may(a),
        _ => {}
    }
    let system: System = a.method.ok_or_else(|| usage("--method is required for this criterion"))?.into();
    let path = a.input.as_ref().ok_or_else(|| usage("--in is required for this criterion"))?;
    let file = io::parse_blt(&read(path)?)?;
    let behaviour = match system {
        System::Approval => Behaviour::ApproveTop(a.depth),
        System::Cumulative if a.points == PointsArg::Borda => Behaviour::BordaPoints,
        System::Cumulative => Behaviour::Plump,
        _ => Behaviour::Sincere,
    };
    let case = case_from(&file, behaviour)?;
    let bounds = Bounds { improvement_moves: a.bounds, iia_changes: a.bounds };
    let (criterion, verdict) = match a.criterion {
        CriterionArg::Majority => (Criterion::Majority, check_majority(&system, &case)),
        CriterionArg::Condorcet => (Criterion::Condorcet, check_condorcet(&system, &case)),
        CriterionArg::Pareto => (Criterion::Pareto, check_pareto(&system, &case)),
        CriterionArg::Equality => (Criterion::Equality, check_equality(&system, &case)),
        CriterionArg::Neutrality => (Criterion::Neutrality, check_neutrality(&system, &case)),
        CriterionArg::Monotonicity => (Criterion::Monotonicity, search_monotonicity(&system, &case, &bounds)),
        CriterionArg::Iia => (Criterion::Iia, search_iia(&system, &case, &bounds)),
        CriterionArg::Table | CriterionArg::May => unreachable!("handled above"),
    };
    let roster = &file.roster;
    let witness_json = verdict.witness().map(|w| io::witness_to_json(system.name(), w, roster));
    if let (Some(path), Some(w)) = (&a.witness, &witness_json) {
        std::fs::write(path, io::to_pretty(w)).map_err(|source| CliError::Write { path: path.clone(), source })?;
    }
    let word = verdict_word(&verdict);
    Ok(match a.format {
        Format::Json => io::to_pretty(&json!({
            "system": system.name(),
            "criterion": format!("{criterion:?}").to_lowercase(),
            "verdict": word,
            "witness": witness_json.unwrap_or(Value::Null),
        })),
        Format::Table => {
            let mut s = format!("{} / {}: {}\n", system.name(), criterion.label(), word);
            if let Some(w) = verdict.witness() {
                s.push_str(&render::witness_text(w, roster));
            }
            s
        }
    })
}

fn audit_table(a: &AuditArgs) -> Result<String, CliError> {
    let defaults = PoolConfig::default();
    let config = PoolConfig {
        bounds: Bounds { improvement_moves: a.bounds, iia_changes: a.bounds },
        max_voters: a.max_voters.unwrap_or(defaults.max_voters),
        ..defaults
    };
    let systems: Vec<System> = match a.method {
        Some(m) => vec![m.into()],
        None => System::TABLE.to_vec(),
    };
    let table = criteria_table(&systems, &Criterion::TABLE, &config);
    let roster = Roster::lettered(config.candidates);
    Ok(match a.format {
        Format::Table => render::criteria_matrix(&table),
        Format::Json => {
            let rows: Vec<Value> = systems
                .iter()
                .zip(&table.cells)
                .map(|(s, cells)| {
                    let entries: serde_json::Map<String, Value> = table
                        .criteria
                        .iter()
                        .zip(cells)
                        .map(|(c, v)| {
                            let witness = v.witness().map_or(Value::Null, |w| io::witness_to_json(s.name(), w, &roster));
                            (c.label().to_string(), json!({ "verdict": verdict_word(v), "witness": witness }))
                        })
                        .collect();
                    json!({ "system": s.name(), "criteria": entries })
                })
                .collect();
            io::to_pretty(&Value::Array(rows))
        }
    })
}

fn audit_may(a: &AuditArgs) -> Result<String, CliError> {
    let rule = match &a.super_majority {
        Some(f) => MayRule::SuperMajority(number(f)?),
        None => MayRule::SimpleMajority,
    };
    let results = check_may_properties(&rule, a.max_voters.unwrap_or(8));
    let roster = Roster::lettered(2);
    let names = |v: &[ballotworks_core::CandidateId]| v.iter().map(|&c| roster.name(c)).collect::<Vec<_>>().join("");
    let outcome = |o: Outcome| match o {
        Outcome::Winner(c) => roster.name(c).to_string(),
        Outcome::Tie => "tie".to_string(),
    };
    let label = |p: MayProperty| match p {
        MayProperty::Egalitarian => "egalitarian",
        MayProperty::Neutral => "neutral",
        MayProperty::Monotone => "monotone",
        MayProperty::NearlyDecisive => "nearly-decisive",
    };
    Ok(match a.format {
        Format::Table => {
            let mut s = String::new();
            for (p, v) in &results {
                match v {
                    MayVerdict::Holds { profiles } => {
                        s.push_str(&format!("{}: holds ({profiles} profiles)\n", label(*p)))
                    }
                    MayVerdict::Violated(w) => {
                        s.push_str(&format!("{}: violated by {} -> {}", label(*p), names(&w.votes), outcome(w.outcome)));
                        if let (Some(v), Some(o)) = (&w.variant, w.variant_outcome) {
                            s.push_str(&format!(" against {} -> {}", names(v), outcome(o)));
                        }
                        s.push('\n');
                    }
                }
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|(p, v)| match v {
                    MayVerdict::Holds { profiles } => json!({ "property": label(*p), "holds": true, "profiles": profiles }),
                    MayVerdict::Violated(w) => json!({
                        "property": label(*p),
                        "holds": false,
                        "votes": names(&w.votes),
                        "outcome": outcome(w.outcome),
                        "variant": w.variant.as_deref().map(names),
                        "variant_outcome": w.variant_outcome.map(outcome),
                    }),
                })
                .collect();
            io::to_pretty(&Value::Array(rows))
        }
    })
}

fn convert(a: &ConvertArgs) -> Result<String, CliError> {
    let text = read(&a.input)?;
    let file = if text.trim_start().starts_with('{') {
        io::election_from_json(&serde_json::from_str(&text).map_err(IoError::from)?)?
    } else {
        io::parse_blt(&text)?
    };
    let converted = match a.to {
        FileFormat::Blt => io::write_blt(&file),
        FileFormat::Json => io::to_pretty(&io::election_to_json(&file)),
    };
    match &a.out {
        Some(path) => {
            std::fs::write(path, converted).map_err(|source| CliError::Write { path: path.clone(), source })?;
            Ok(String::new())
        }
        None => Ok(converted),
    }
}
