//! Command-line front end: simulate matches, solve the finite subgames,
//! run the S0 lab, replay transcripts and play interactively.
//!
//! Machine output is JSON on stdout; logs and prompts go to stderr.
//! Exit codes: 0 all checks pass, 1 violation or counterexample, 2 usage or
//! resource error.

use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use elusive::arena::{
    parse_hider, parse_seeker, play_as_hider, play_as_seeker, replay, run_batch, run_match, MatchConfig, MatchResult,
    MonitorSet, Verdict,
};
use elusive::s0::{
    default_threshold, parse_role_pair, reduction_map, rigidity_check, s0_consistent_truncation, BitString,
    ColoredGraph, Rigidity,
};
use elusive::solver::{
    classical_elusiveness, classical_elusiveness_with_order, make_bipartite_subgame, solve, verify_appendix,
    verify_policy, Tau1, Winner,
};
use elusive::{PropertyId, Semantics, Transcript};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "arena", version, about = "Seeker/Hider edge-query games: matches, solvers and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play a Seeker strategy against a Hider strategy.
    Simulate(SimulateArgs),
    /// Solve the three five-vertex bipartiteness subgames.
    Solve {
        /// Only this subgame (0, 1 or 2).
        #[arg(long)]
        subgame: Option<usize>,
    },
    /// Check the hand-written policy for the largest subgame exhaustively.
    VerifyAppendix,
    /// Decide elusiveness of a property on the complete graph K_n.
    Classical {
        #[arg(long)]
        property: PropertyId,
        #[arg(long)]
        n: u32,
        /// Also re-solve with Seeker moves tried in a shuffled order.
        #[arg(long)]
        shuffle_seed: Option<u64>,
    },
    /// The S0 laboratory.
    S0 {
        #[command(subcommand)]
        command: S0Command,
    },
    /// Replay a saved match or a bare transcript against a Hider.
    Replay {
        file: PathBuf,
        /// Hider to replay against; defaults to the one saved with the match.
        #[arg(long)]
        hider: Option<String>,
        #[arg(long, default_value = "all")]
        monitors: MonitorSet,
    },
    /// Play one side yourself.
    Play {
        #[arg(long, value_enum)]
        side: Side,
        /// Opponent when you play Seeker.
        #[arg(long)]
        hider: Option<String>,
        /// Opponent when you play Hider.
        #[arg(long)]
        seeker: Option<String>,
        #[arg(long)]
        property: Option<PropertyId>,
        /// Play on the complete graph over 0..N instead of all of ℕ.
        #[arg(long)]
        universe: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Seeker,
    Hider,
}

#[derive(Subcommand)]
enum S0Command {
    /// Compare the truncated template with a copy with one edge flipped.
    Rigidity {
        #[arg(long, default_value_t = 10)]
        m: u32,
        /// Edge to flip, written as two roles, e.g. x0x1 or p2q4.
        #[arg(long)]
        flip: Option<String>,
    },
    /// Run the truncated consistency checks on a colored graph file.
    Check {
        file: PathBuf,
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Build the reduction graph of a bit string and check it.
    Reduce {
        bits: BitString,
        /// Print the graph itself as well.
        #[arg(long)]
        graph: bool,
    },
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    hider: String,
    #[arg(long)]
    seeker: String,
    #[arg(long, default_value_t = elusive::arena::DEFAULT_TURNS)]
    turns: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run this many matches with seeds seed, seed+1, ...
    #[arg(long)]
    seeds: Option<u64>,
    #[arg(long, default_value = "all")]
    monitors: MonitorSet,
    /// Property to track; defaults to the Hider's.
    #[arg(long)]
    property: Option<PropertyId>,
    /// Play on the complete graph over 0..N instead of all of ℕ.
    #[arg(long)]
    universe: Option<u32>,
    #[arg(long, default_value_t = elusive::board::DEFAULT_WINDOW_CAP)]
    window_cap: u32,
    /// Full monitor pass every this many turns (0: only at the end).
    #[arg(long, default_value_t = 500)]
    checkpoint: usize,
    /// Write the match with its transcript here (single runs only).
    #[arg(long)]
    save: Option<PathBuf>,
}

fn semantics(universe: Option<u32>) -> Semantics {
    universe.map_or(Semantics::InfiniteTail, Semantics::FiniteUniverse)
}

fn emit(v: &Value) {
    // A closed pipe downstream is not an error worth reporting.
    let _ = writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

/// 0 pass, 1 violation, 2 aborted.
fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Aborted { .. } => 2,
        v if v.is_pass() => 0,
        _ => 1,
    }
}

fn simulate(a: SimulateArgs) -> Result<u8> {
    let cfg = MatchConfig {
        turns: a.turns,
        window_cap: a.window_cap,
        seed: a.seed,
        monitors: a.monitors.clone(),
        property: a.property,
        semantics: semantics(a.universe),
        checkpoint: a.checkpoint,
    };
    // Surface bad ids as usage errors before any match runs.
    parse_hider(&a.hider, a.seed)?;
    parse_seeker(&a.seeker, a.seed)?;
    match a.seeds {
        None => {
            let mut seeker = parse_seeker(&a.seeker, a.seed)?;
            let mut hider = parse_hider(&a.hider, a.seed)?;
            let start = Instant::now();
            let r = run_match(seeker.as_mut(), hider.as_mut(), &cfg)?;
            eprintln!("{} vs {}: {} ({:.2?})", r.seeker, r.hider, r.verdict, start.elapsed());
            if let Some(path) = &a.save {
                let saved = json!({
                    "hider": a.hider,
                    "seeker": a.seeker,
                    "seed": a.seed,
                    "turns": a.turns,
                    "transcript": r.transcript,
                });
                std::fs::write(path, serde_json::to_string(&saved)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit(&serde_json::to_value(&r)?);
            Ok(verdict_code(&r.verdict))
        }
        Some(n) => {
            if a.save.is_some() {
                bail!("--save needs a single run");
            }
            let start = Instant::now();
            let results = run_batch(a.seed..a.seed + n, &cfg, |seed| {
                Ok((parse_seeker(&a.seeker, seed)?, parse_hider(&a.hider, seed)?))
            });
            let results: Vec<MatchResult> = results.into_iter().collect::<Result<_, _>>()?;
            let failing: Vec<&MatchResult> = results.iter().filter(|r| !r.verdict.is_pass()).collect();
            let traps = results.iter().filter(|r| matches!(r.verdict, Verdict::SeekerTrap { .. })).count();
            eprintln!("{n} runs, {} failing ({:.2?})", failing.len(), start.elapsed());
            let code = results.iter().map(|r| verdict_code(&r.verdict)).max().unwrap_or(0);
            emit(&json!({
                "hider": a.hider,
                "seeker": a.seeker,
                "runs": n,
                "turns": a.turns,
                "passed": results.len() - failing.len(),
                "seeker_traps": traps,
                "failures": failing.iter().take(10).map(|r| json!({"seed": r.seed, "verdict": r.verdict})).collect::<Vec<_>>(),
            }));
            Ok(code)
        }
    }
}

fn solve_subgames(only: Option<usize>) -> Result<u8> {
    let which: Vec<usize> = match only {
        Some(s) if s <= 2 => vec![s],
        Some(s) => bail!("no subgame {s}; choose 0, 1 or 2"),
        None => vec![0, 1, 2],
    };
    let mut out = Vec::new();
    let mut code = 0;
    for s in which {
        let spec = make_bipartite_subgame(s);
        let start = Instant::now();
        let v = solve(&spec)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        if v.winner != Winner::Hider {
            code = 1;
        }
        let mut entry = json!({"subgame": s, "name": spec.name, "edges": spec.universe.len(), "millis": ms});
        entry["winner"] = serde_json::to_value(v.winner)?;
        entry["positions_explored"] = json!(v.positions_explored);
        if s == 1 {
            let check = verify_policy(&spec, &Tau1::default());
            if !check.pass {
                code = 1;
            }
            entry["hand_policy"] = serde_json::to_value(check)?;
        }
        out.push(entry);
    }
    emit(&Value::Array(out));
    Ok(code)
}

fn classical(property: PropertyId, n: u32, shuffle_seed: Option<u64>) -> Result<u8> {
    let start = Instant::now();
    let result = classical_elusiveness(property, n)?;
    let mut out = json!({"property": property.to_string(), "n": n, "result": result, "millis": start.elapsed().as_secs_f64() * 1e3});
    if let Some(seed) = shuffle_seed {
        let mut order: Vec<usize> = (0..elusive::board::pairs_below(n)).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let again = classical_elusiveness_with_order(property, n, Some(&order))?;
        out["shuffled"] = json!({"seed": seed, "result": again, "agrees": again == result});
        if again != result {
            emit(&out);
            return Ok(1);
        }
    }
    emit(&out);
    Ok(0)
}

fn s0(cmd: S0Command) -> Result<u8> {
    match cmd {
        S0Command::Rigidity { m, flip } => {
            let edge = flip.as_deref().map(parse_role_pair).transpose()?;
            let start = Instant::now();
            let r = rigidity_check(m, edge)?;
            emit(&json!({"m": m, "flip": flip, "result": r, "millis": start.elapsed().as_secs_f64() * 1e3}));
            // A flip that leaves the graph isomorphic would break rigidity.
            Ok(u8::from(edge.is_some() && r == Rigidity::Isomorphic))
        }
        S0Command::Check { file, threshold } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let g = ColoredGraph::from_json(&text)?;
            let report = s0_consistent_truncation(&g, threshold.unwrap_or(default_threshold(g.m)));
            emit(&serde_json::to_value(&report)?);
            Ok(u8::from(!report.pass))
        }
        S0Command::Reduce { bits, graph } => {
            let phi = reduction_map(&bits);
            // phi fixes the Q colors outright, so the a-degree threshold is
            // not part of this check.
            let report = s0_consistent_truncation(&phi, 0);
            let parity = elusive::s0::parity_coloring(bits.bits());
            let mut out = json!({"bits": bits.to_string(), "parity": parity, "report": report});
            if graph {
                out["graph"] = serde_json::from_str::<Value>(&phi.to_json())?;
            }
            emit(&out);
            Ok(u8::from(report.pass != (parity == 1)))
        }
    }
}

fn replay_file(file: PathBuf, hider: Option<String>, monitors: MonitorSet) -> Result<u8> {
    let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
    let raw: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", file.display()))?;
    let (transcript, saved_hider, seed) = match raw.get("transcript") {
        Some(t) => (
            Transcript::from_json(&t.to_string())?,
            raw.get("hider").and_then(Value::as_str).map(str::to_string),
            raw.get("seed").and_then(Value::as_u64).unwrap_or(0),
        ),
        None => (Transcript::from_json(&text)?, None, 0),
    };
    let Some(id) = hider.or(saved_hider) else {
        let board = elusive::Board::from_transcript(&transcript)?;
        emit(
            &json!({"moves": board.turn(), "green": board.green_count(), "red": board.red_count(), "window": board.window()}),
        );
        return Ok(0);
    };
    let mut h = parse_hider(&id, seed)?;
    let cfg = MatchConfig { seed, monitors, ..MatchConfig::default() };
    let r = replay(&transcript, h.as_mut(), &cfg)?;
    eprintln!("replay against {id}: {}", r.verdict);
    emit(&serde_json::to_value(&r)?);
    Ok(verdict_code(&r.verdict))
}

fn play(
    side: Side,
    hider: Option<String>,
    seeker: Option<String>,
    property: Option<PropertyId>,
    universe: Option<u32>,
    seed: u64,
) -> Result<u8> {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut prompts = io::stderr();
    let board = match side {
        Side::Seeker => {
            let id = hider.context("--hider is required when you play Seeker")?;
            let mut h = parse_hider(&id, seed)?;
            eprintln!("You are Seeker against {id}. Enter edges as `u v`; `quit` ends.");
            play_as_seeker(h.as_mut(), property, semantics(universe), &mut input as &mut dyn BufRead, &mut prompts)?
        }
        Side::Hider => {
            let id = seeker.context("--seeker is required when you play Hider")?;
            let mut s = parse_seeker(&id, seed)?;
            eprintln!("You are Hider against {id}. Answer g or r; `quit` ends.");
            play_as_hider(s.as_mut(), property, semantics(universe), &mut input as &mut dyn BufRead, &mut prompts)?
        }
    };
    emit(&serde_json::to_value(board.to_transcript())?);
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Solve { subgame } => solve_subgames(subgame),
        Command::VerifyAppendix => {
            let start = Instant::now();
            let r = verify_appendix();
            let mut out = serde_json::to_value(&r)?;
            out["millis"] = json!(start.elapsed().as_secs_f64() * 1e3);
            emit(&out);
            Ok(u8::from(!r.pass))
        }
        Command::Classical { property, n, shuffle_seed } => classical(property, n, shuffle_seed),
        Command::S0 { command } => s0(command),
        Command::Replay { file, hider, monitors } => replay_file(file, hider, monitors),
        Command::Play { side, hider, seeker, property, universe, seed } => {
            play(side, hider, seeker, property, universe, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
