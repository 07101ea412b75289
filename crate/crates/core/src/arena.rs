//! Match runner: plays a Seeker against a Hider on one board, recording the
//! decision status and running the strategies' monitors after every move.

use std::fmt;
use std::io::{BufRead, Write};
use std::ops::Range;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::board::{pairs_below, Board, Color, Pair, Transcript, Vertex, DEFAULT_WINDOW_CAP};
use crate::error::{Error, Result};
use crate::hider::{
    BipartiteHider, CautiousIsolationHider, CautiousMatchingHider, ConnectedHider, CycleHider, DegreeHider,
    DiameterHider, HiderStrategy, MonitorReport, RandomHider, SensitiveHider, SensitiveWitness, StageState, Tau2Source,
    Witness,
};
use crate::properties::{decide, DecisionStatus, PropertyId, Semantics};
use crate::s0::{BitString, S0Hider};
use crate::seeker::{
    ForcingVerdict, IndependentEdgesSeeker, NoIsolatedSeeker, OneWhiteSeeker, RandomSeeker, ScriptSeeker,
    SeekerStrategy,
};

pub const DEFAULT_TURNS: usize = 2000;

/// Name under which Seeker monitors are enabled.
pub const SEEKER_MONITORS: &str = "seeker";

/// Which monitors run during a match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonitorSet {
    All,
    None,
    Only(Vec<String>),
}

impl MonitorSet {
    pub fn enabled(&self, name: &str) -> bool {
        match self {
            MonitorSet::All => true,
            MonitorSet::None => false,
            MonitorSet::Only(names) => names.iter().any(|n| n == name),
        }
    }
}

impl FromStr for MonitorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => MonitorSet::All,
            "none" => MonitorSet::None,
            list => MonitorSet::Only(list.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct MatchConfig {
    pub turns: usize,
    pub window_cap: u32,
    /// Seed for strategies whose id leaves it out.
    pub seed: u64,
    pub monitors: MonitorSet,
    /// Property to decide after every move; the Hider's own when `None`.
    pub property: Option<PropertyId>,
    pub semantics: Semantics,
    /// Full monitor recomputation every this many turns; 0 means only at
    /// the end of the run.
    pub checkpoint: usize,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            turns: DEFAULT_TURNS,
            window_cap: DEFAULT_WINDOW_CAP,
            seed: 0,
            monitors: MonitorSet::All,
            property: None,
            semantics: Semantics::InfiniteTail,
            checkpoint: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    AllInvariantsHeld,
    Violation {
        turn: usize,
        check: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<Witness>,
    },
    SeekerTrap {
        forcing: ForcingVerdict,
    },
    /// A strategy or the board raised an error; recorded, not propagated.
    Aborted {
        turn: usize,
        error: String,
    },
}

impl Verdict {
    /// Whether the run supports the strategies' claims.
    pub fn is_pass(&self) -> bool {
        match self {
            Verdict::AllInvariantsHeld => true,
            Verdict::SeekerTrap { forcing } => !forcing.is_refuted(),
            _ => false,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::AllInvariantsHeld => write!(f, "all invariants held"),
            Verdict::Violation { turn, check, witness } => {
                write!(f, "violation of {check} at turn {turn}")?;
                match witness {
                    Some(w) => write!(f, ": {w}"),
                    None => Ok(()),
                }
            }
            Verdict::SeekerTrap { forcing } => {
                write!(f, "seeker verdict {}", serde_json::to_string(forcing).unwrap_or_default())
            }
            Verdict::Aborted { turn, error } => write!(f, "aborted at turn {turn}: {error}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchResult {
    pub hider: String,
    pub seeker: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub property: Option<String>,
    pub turns_played: usize,
    pub verdict: Verdict,
    pub seeker_verdict: ForcingVerdict,
    /// Turns (1-based move counts) at which the decision status changed.
    pub status_changes: Vec<(usize, DecisionStatus)>,
    /// Full monitor reports at checkpoints and at the end of the run.
    pub reports: Vec<MonitorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage: Option<StageState>,
    /// Decision status after each move.
    #[serde(skip)]
    pub statuses: Vec<DecisionStatus>,
    #[serde(skip)]
    pub transcript: Transcript,
}

impl MatchResult {
    pub fn final_status(&self) -> Option<DecisionStatus> {
        self.statuses.last().copied()
    }
}

fn check_config(hider: &dyn HiderStrategy, cfg: &MatchConfig) -> Result<()> {
    if cfg.turns == 0 {
        return Err(Error::Invalid("a match needs at least one turn".into()));
    }
    if let MonitorSet::Only(names) = &cfg.monitors {
        let known = hider.monitor_names();
        if let Some(bad) = names.iter().find(|n| n.as_str() != SEEKER_MONITORS && !known.contains(&n.as_str())) {
            return Err(Error::Invalid(format!(
                "{} has no monitor `{bad}` (registered: {})",
                hider.id(),
                known.join(", ")
            )));
        }
    }
    if let Some(p) = cfg.property {
        p.validate()?;
    }
    Ok(())
}

fn first_failure(report: &MonitorReport, monitors: &MonitorSet) -> Option<(String, Option<Witness>)> {
    report.checks.iter().find(|c| !c.pass && monitors.enabled(&c.name)).map(|c| (c.name.clone(), c.witness.clone()))
}

fn filtered(mut report: MonitorReport, monitors: &MonitorSet) -> MonitorReport {
    report.checks.retain(|c| monitors.enabled(&c.name));
    report
}

/// Plays up to `cfg.turns` moves. Stops early when Seeker runs out of
/// moves, the finite universe is exhausted, a check fails, or a strategy
/// errors.
pub fn run_match(
    seeker: &mut dyn SeekerStrategy,
    hider: &mut dyn HiderStrategy,
    cfg: &MatchConfig,
) -> Result<MatchResult> {
    check_config(hider, cfg)?;
    let property = cfg.property.or(hider.property());
    let tail = cfg.semantics == Semantics::InfiniteTail;
    let must_stay_undecided = tail && hider.claims_undecided() && property == hider.property();
    // Under the tail rules a red move can only matter for diameter 1.
    let red_may_decide = !tail || property == Some(PropertyId::DiameterAtMostD(1));

    let mut board = Board::with_cap(cfg.window_cap);
    let mut statuses: Vec<DecisionStatus> = Vec::new();
    let mut reports = Vec::new();
    let mut stop: Option<Verdict> = None;

    for t in 0..cfg.turns {
        if let Semantics::FiniteUniverse(n) = cfg.semantics {
            if board.turn() >= pairs_below(n) {
                break;
            }
        }
        let abort = |e: Error| Some(Verdict::Aborted { turn: t, error: e.to_string() });
        let e = match seeker.next(&board) {
            Ok(Some(e)) => e,
            Ok(None) => break,
            Err(err) => {
                stop = abort(err);
                break;
            }
        };
        let played = hider
            .respond(&board, e)
            .and_then(|c| board.play(e, c).map(|_| c))
            .and_then(|c| hider.observe(&board).map(|_| c))
            .and_then(|c| seeker.observe(&board).map(|_| c));
        let c = match played {
            Ok(c) => c,
            Err(err) => {
                stop = abort(err);
                break;
            }
        };

        if let Some(p) = property {
            let status = match statuses.last() {
                Some(&s) if c == Color::Red && !red_may_decide => s,
                _ => match decide(p, &board, cfg.semantics) {
                    Ok(s) => s,
                    Err(err) => {
                        stop = abort(err);
                        break;
                    }
                },
            };
            if let Some(&prev) = statuses.last() {
                if !prev.may_precede(status) {
                    stop = Some(Verdict::Violation {
                        turn: t,
                        check: "decide-antitone".into(),
                        witness: Some(Witness::Note(format!("{prev:?} became {status:?}"))),
                    });
                }
            }
            if must_stay_undecided && status.is_decided() && stop.is_none() {
                stop = Some(Verdict::Violation {
                    turn: t,
                    check: "undecided".into(),
                    witness: Some(Witness::Note(format!("{p} is {status:?}"))),
                });
            }
            statuses.push(status);
        }

        if stop.is_none() && cfg.monitors != MonitorSet::None {
            let fail = first_failure(&hider.monitor_move(&board), &cfg.monitors).or_else(|| {
                let due = cfg.checkpoint > 0 && (t + 1) % cfg.checkpoint == 0;
                if !due {
                    return None;
                }
                let report = full_report(seeker, hider, &board, &cfg.monitors);
                let fail = first_failure(&report, &MonitorSet::All);
                reports.push(report);
                fail
            });
            if let Some((check, witness)) = fail {
                stop = Some(Verdict::Violation { turn: t, check, witness });
            }
        }
        if stop.is_some() {
            break;
        }
    }

    if stop.is_none() && cfg.monitors != MonitorSet::None && reports.last().is_none_or(|r| r.turn != board.turn()) {
        let report = full_report(seeker, hider, &board, &cfg.monitors);
        if let Some((check, witness)) = first_failure(&report, &MonitorSet::All) {
            stop = Some(Verdict::Violation { turn: board.turn().saturating_sub(1), check, witness });
        }
        reports.push(report);
    }
    let seeker_verdict = seeker.conclude(&board);
    let verdict = match stop {
        Some(v) => v,
        None if seeker_verdict != ForcingVerdict::OnTrack => Verdict::SeekerTrap { forcing: seeker_verdict.clone() },
        None => Verdict::AllInvariantsHeld,
    };
    let mut status_changes = Vec::new();
    for (i, &s) in statuses.iter().enumerate() {
        if i == 0 || statuses[i - 1] != s {
            status_changes.push((i + 1, s));
        }
    }
    Ok(MatchResult {
        hider: hider.id(),
        seeker: seeker.id(),
        seed: cfg.seed,
        property: property.map(|p| p.to_string()),
        turns_played: board.turn(),
        verdict,
        seeker_verdict,
        status_changes,
        reports,
        stage: hider.stage(),
        statuses,
        transcript: board.to_transcript(),
    })
}

fn full_report(
    seeker: &dyn SeekerStrategy,
    hider: &dyn HiderStrategy,
    board: &Board,
    monitors: &MonitorSet,
) -> MonitorReport {
    let mut report = filtered(hider.monitor(board), monitors);
    if monitors.enabled(SEEKER_MONITORS) {
        for mut c in seeker.monitor(board).checks {
            c.name = format!("{SEEKER_MONITORS}:{}", c.name);
            report.checks.push(c);
        }
    }
    report
}

/// Replays the Seeker moves of `t` against `hider` and checks that every
/// reply matches the recorded color.
pub fn replay(t: &Transcript, hider: &mut dyn HiderStrategy, cfg: &MatchConfig) -> Result<MatchResult> {
    let recorded = Board::from_transcript(t)?;
    let moves: Vec<Pair> = t.moves.iter().map(|m| m.e).collect();
    if moves.is_empty() {
        return Err(Error::MalformedTranscript("no moves to replay".into()));
    }
    let mut seeker = ScriptSeeker::new("replay", moves);
    let cfg = MatchConfig { turns: t.moves.len(), window_cap: t.window_cap, ..cfg.clone() };
    let mut result = run_match(&mut seeker, hider, &cfg)?;
    let diverged = result.transcript.moves.iter().zip(&t.moves).find(|(a, b)| a.c != b.c);
    if let Some((m, _)) = diverged {
        let earlier = matches!(result.verdict, Verdict::Violation { turn, .. } | Verdict::Aborted { turn, .. } if turn < m.t as usize);
        if !earlier {
            result.verdict = Verdict::Violation {
                turn: m.t as usize,
                check: "replay-agrees".into(),
                witness: Some(Witness::Edges(vec![m.e])),
            };
        }
    } else if result.verdict.is_pass() && result.transcript.moves.len() == t.moves.len() {
        debug_assert_eq!(
            Board::from_transcript(&result.transcript).map(|b| b.history().to_vec()),
            Ok(recorded.history().to_vec())
        );
    }
    Ok(result)
}

/// Runs one match per seed on all available cores. Results come back in
/// seed order.
pub fn run_batch<F>(seeds: Range<u64>, cfg: &MatchConfig, make: F) -> Vec<Result<MatchResult>>
where
    F: Fn(u64) -> Result<(Box<dyn SeekerStrategy>, Box<dyn HiderStrategy>)> + Sync,
{
    let count = (seeds.end.saturating_sub(seeds.start)) as usize;
    let slots: Vec<Mutex<Option<Result<MatchResult>>>> = (0..count).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(count.max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let seed = seeds.start + i as u64;
                let cfg = MatchConfig { seed, ..cfg.clone() };
                let result = make(seed).and_then(|(mut s, mut h)| run_match(s.as_mut(), h.as_mut(), &cfg));
                *slots[i].lock().expect("no worker panics while holding a slot") = Some(result);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every seed ran")).collect()
}

fn split_id(id: &str) -> (&str, Vec<&str>) {
    let mut parts = id.split(':');
    let name = parts.next().unwrap_or_default();
    (name, parts.collect())
}

fn num<T: FromStr>(id: &str, s: Option<&&str>) -> Result<T> {
    s.ok_or_else(|| Error::UnknownStrategy(format!("{id} (missing parameter)")))?
        .parse()
        .map_err(|_| Error::UnknownStrategy(format!("{id} (bad parameter)")))
}

fn seed_or(id: &str, s: Option<&&str>, seed: u64) -> Result<u64> {
    match s {
        Some(_) => num(id, s),
        None => Ok(seed),
    }
}

/// Hider ids: `k-cycle:K`, `girth:K`, `connected`, `bipartite`,
/// `bipartite:solved`, `degree:D`, `diameter:D`, `sensitive:path|star`,
/// `random[:SEED]`, `cautious-indep:K[:SEED]`, `cautious-isolation:P[:SEED]`,
/// `s0[:BITS]`. `seed` fills in a missing seed.
pub fn parse_hider(id: &str, seed: u64) -> Result<Box<dyn HiderStrategy>> {
    let (name, args) = split_id(id);
    let unknown = || Error::UnknownStrategy(id.to_string());
    let arity = |n: usize| if args.len() > n { Err(unknown()) } else { Ok(()) };
    let at_least = |k: usize, min: usize| {
        if k < min {
            Err(Error::Invalid(format!("{id}: parameter must be at least {min}")))
        } else {
            Ok(k)
        }
    };
    let h: Box<dyn HiderStrategy> = match name {
        "k-cycle" | "girth" => {
            arity(1)?;
            let k = at_least(num(id, args.first())?, 3)?;
            Box::new(if name == "girth" { CycleHider::girth(k) } else { CycleHider::k_cycle(k) })
        }
        "connected" => {
            arity(0)?;
            Box::new(ConnectedHider::new())
        }
        "bipartite" => match args.as_slice() {
            [] => Box::new(BipartiteHider::new()),
            ["solved"] => Box::new(BipartiteHider::with_tau2(Tau2Source::Solved)),
            ["appendix"] => Box::new(BipartiteHider::with_tau2(Tau2Source::Appendix)),
            _ => return Err(unknown()),
        },
        "degree" => {
            arity(1)?;
            Box::new(DegreeHider::new(at_least(num(id, args.first())?, 1)?))
        }
        "diameter" => {
            arity(1)?;
            Box::new(DiameterHider::new(at_least(num(id, args.first())?, 2)?))
        }
        "sensitive" => match args.as_slice() {
            ["path"] => Box::new(SensitiveHider::new(SensitiveWitness::Path)),
            ["star"] => Box::new(SensitiveHider::new(SensitiveWitness::Star)),
            _ => return Err(unknown()),
        },
        "random" => {
            arity(1)?;
            Box::new(RandomHider::new(seed_or(id, args.first(), seed)?))
        }
        "cautious-indep" => {
            arity(2)?;
            let k = at_least(num(id, args.first())?, 1)?;
            Box::new(CautiousMatchingHider::new(k, seed_or(id, args.get(1), seed)?))
        }
        "cautious-isolation" => {
            arity(2)?;
            let p: u32 = num(id, args.first())?;
            Box::new(CautiousIsolationHider::new(seed_or(id, args.get(1), seed)?, p))
        }
        "s0" => {
            arity(1)?;
            let g = match args.first() {
                Some(bits) => bits.parse::<BitString>()?,
                None => BitString::alternating(64),
            };
            Box::new(S0Hider::new(&g)?)
        }
        _ => return Err(unknown()),
    };
    Ok(h)
}

/// Seeker ids: `indep:K`, `no-isolated`, `one-white:U-V`, `random[:SEED]`,
/// `script:FILE` (a JSON list of `[u, v]` pairs).
pub fn parse_seeker(id: &str, seed: u64) -> Result<Box<dyn SeekerStrategy>> {
    let unknown = || Error::UnknownStrategy(id.to_string());
    if let Some(path) = id.strip_prefix("script:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
        let moves: Vec<Pair> = serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
        return Ok(Box::new(ScriptSeeker::new(path, moves)));
    }
    let (name, args) = split_id(id);
    let s: Box<dyn SeekerStrategy> = match (name, args.as_slice()) {
        ("indep", [_]) => {
            let k: usize = num(id, args.first())?;
            if k < 2 {
                return Err(Error::Invalid(format!("{id}: k must be at least 2")));
            }
            Box::new(IndependentEdgesSeeker::new(k))
        }
        ("no-isolated", []) => Box::new(NoIsolatedSeeker::new()),
        ("one-white", [pair]) => {
            let (u, v) = pair.split_once('-').ok_or_else(unknown)?;
            let (u, v): (Vertex, Vertex) = (u.parse().map_err(|_| unknown())?, v.parse().map_err(|_| unknown())?);
            Box::new(OneWhiteSeeker::new(Pair::try_new(u, v).ok_or_else(unknown)?))
        }
        ("random", []) => Box::new(RandomSeeker::new(seed)),
        ("random", [_]) => Box::new(RandomSeeker::new(num(id, args.first())?)),
        _ => return Err(unknown()),
    };
    Ok(s)
}

/// Reads `u v` (any non-digit separators) from a line.
pub fn parse_edge(line: &str) -> Option<Pair> {
    let nums: Vec<Vertex> = line
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().ok())
        .collect::<Option<_>>()?;
    match nums[..] {
        [u, v] => Pair::try_new(u, v),
        _ => None,
    }
}

fn is_quit(line: &str) -> bool {
    matches!(line.trim(), "q" | "quit" | "exit")
}

fn exhausted(board: &Board, semantics: Semantics) -> bool {
    matches!(semantics, Semantics::FiniteUniverse(n) if board.turn() >= pairs_below(n))
}

fn summarize(board: &Board, property: Option<PropertyId>, semantics: Semantics, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Invalid(e.to_string());
    writeln!(out, "{} moves, {} green, {} red", board.turn(), board.green_count(), board.red_count()).map_err(io)?;
    if let Some(p) = property {
        writeln!(out, "{p}: {:?}", decide(p, board, semantics)?).map_err(io)?;
    }
    Ok(())
}

/// A human Seeker against `hider`. Lines are edges like `0 1`; `quit` or
/// end of input stops the session.
pub fn play_as_seeker(
    hider: &mut dyn HiderStrategy,
    property: Option<PropertyId>,
    semantics: Semantics,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<Board> {
    let io = |e: std::io::Error| Error::Invalid(e.to_string());
    let property = property.or(hider.property());
    let mut board = Board::new();
    let mut line = String::new();
    while !exhausted(&board, semantics) {
        write!(out, "turn {}> ", board.turn() + 1).map_err(io)?;
        out.flush().map_err(io)?;
        line.clear();
        if input.read_line(&mut line).map_err(io)? == 0 || is_quit(&line) {
            break;
        }
        let Some(e) = parse_edge(&line) else {
            writeln!(out, "expected two distinct vertices, e.g. `0 1`").map_err(io)?;
            continue;
        };
        if let Semantics::FiniteUniverse(n) = semantics {
            if e.v() >= n {
                writeln!(out, "{e} is outside the {n}-vertex universe").map_err(io)?;
                continue;
            }
        }
        if e.v() >= board.cap() {
            writeln!(out, "{e} is beyond the window cap").map_err(io)?;
            continue;
        }
        if !board.is_white(e) {
            writeln!(out, "{e} is already {}", board.color(e)).map_err(io)?;
            continue;
        }
        let c = hider.respond(&board, e)?;
        board.play(e, c)?;
        hider.observe(&board)?;
        writeln!(out, "{c}").map_err(io)?;
    }
    summarize(&board, property, semantics, out)?;
    Ok(board)
}

/// A human Hider against `seeker`. Answer each proposed edge with `g` or
/// `r`; `quit` or end of input stops the session.
pub fn play_as_hider(
    seeker: &mut dyn SeekerStrategy,
    property: Option<PropertyId>,
    semantics: Semantics,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<Board> {
    let io = |e: std::io::Error| Error::Invalid(e.to_string());
    let mut board = Board::new();
    let mut line = String::new();
    'game: while !exhausted(&board, semantics) {
        let Some(e) = seeker.next(&board)? else { break };
        if let Semantics::FiniteUniverse(n) = semantics {
            if e.v() >= n {
                writeln!(out, "seeker has no move left inside the {n}-vertex universe").map_err(io)?;
                break;
            }
        }
        loop {
            write!(out, "turn {}: seeker plays {e}, color [g/r]> ", board.turn() + 1).map_err(io)?;
            out.flush().map_err(io)?;
            line.clear();
            if input.read_line(&mut line).map_err(io)? == 0 || is_quit(&line) {
                break 'game;
            }
            let c = match line.trim() {
                "g" | "green" => Color::Green,
                "r" | "red" => Color::Red,
                _ => {
                    writeln!(out, "answer g or r").map_err(io)?;
                    continue;
                }
            };
            board.play(e, c)?;
            seeker.observe(&board)?;
            break;
        }
    }
    let verdict = seeker.conclude(&board);
    writeln!(out, "seeker: {}", serde_json::to_string(&verdict).unwrap_or_default()).map_err(io)?;
    summarize(&board, property, semantics, out)?;
    Ok(board)
}
