//! Command-line front end: encode and inspect sequence codes, build
//! securedness tables, solve finite games, evaluate formula codes, run
//! interval-real computations, classify spread laws, apply and verify
//! catalogue reductions, and run the acceptance suites.
//!
//! Exit status: 0 on success, 1 when a verification or suite run produced a
//! genuine contract counterexample, 2 on usage or input errors.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;
use sha2::{Digest, Sha256};

use bimwb::coding::{bin_codes_of_length, Nat, SeqCode, SeqOrder};
use bimwb::games::{self, Arena, Side};
use bimwb::logic::{self, FiniteStructure, PositiveFormula};
use bimwb::reals::{bisect, rat, ternary, PLFunction, Rat};
use bimwb::reductions::{self, Instance};
use bimwb::report;
use bimwb::secured::{
    avoidance_witness, kleene_bar, root_secured_level, sec_table, Machine, NodePredicate,
};
use bimwb::spreads::{
    bar_in_cone, bar_on_left, classify, oi_path, thin_bar_check, Classification, SpreadLaw,
};

#[derive(Parser)]
#[command(name = "bimwb", version, about = "depth-bounded constructive mathematics workbench")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Check depth for tables, bars, and contracts.
    #[arg(long, global = true, default_value_t = 6)]
    depth: usize,
    /// Probe budget for transforms and searches.
    #[arg(long, global = true, default_value_t = 256)]
    budget: u64,
    /// Seed for generated instances and samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit records as JSON instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Encode, decode, and concatenate sequence codes.
    Code {
        #[command(subcommand)]
        op: CodeOp,
    },
    /// Build a securedness table for a finite bar and report the root level.
    Sec {
        /// Comma-separated code values of the bar members.
        #[arg(long)]
        bar: String,
    },
    /// Solve a finite game described by a JSON file.
    Game {
        /// JSON file: {"moves": n, "alternatives": l, "side": "I"|"II", "target": [values]}.
        file: std::path::PathBuf,
    },
    /// Evaluate or realize propositional formula codes.
    Logic {
        #[command(subcommand)]
        op: LogicOp,
    },
    /// Interval-real computations.
    Real {
        #[command(subcommand)]
        op: RealOp,
    },
    /// Classify spread laws and compute open-induction paths.
    Spread {
        #[command(subcommand)]
        op: SpreadOp,
    },
    /// Apply one catalogue reduction to an instance file.
    Reduce {
        #[arg(long)]
        id: String,
        /// JSON instance file.
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Verify catalogue contracts on generated or supplied instances.
    Verify {
        #[arg(long)]
        id: String,
        /// Number of generated instances (ignored with --input).
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// JSON instance file to verify instead of generating.
        #[arg(long)]
        input: Option<std::path::PathBuf>,
    },
    /// Run an acceptance-criteria batch.
    Suite {
        /// coding | sec | kleene | games | reductions | logic | reals |
        /// openinduction | thinbar | all
        name: String,
        /// Maximum move count for the games batch.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CodeOp {
    /// Code value of the listed entries.
    Encode { entries: Vec<u64> },
    /// Entries of the given code value.
    Decode { value: String },
    /// Code value of the concatenation of two code values.
    Concat { a: String, b: String },
}

#[derive(Subcommand)]
enum LogicOp {
    /// Evaluate a formula code against a zero-extended binary valuation.
    Eval {
        formula: String,
        /// Comma-separated valuation bits.
        valuation: String,
    },
    /// Search for a valuation realizing every listed formula code.
    Realize { formulas: Vec<String> },
}

#[derive(Subcommand)]
enum RealOp {
    /// The closed ternary interval of a binary word.
    Ternary {
        /// Comma-separated binary word.
        word: String,
    },
    /// Bisect a piecewise-linear sign change on [0,1].
    Bisect {
        #[arg(long, default_value_t = 20)]
        steps: u64,
        /// Breakpoints as x=y pairs of rationals, e.g. "0=-1/3,1=2/3".
        #[arg(long, default_value = "0=-1/3,1=2/3")]
        breakpoints: String,
    },
}

#[derive(Subcommand)]
enum SpreadOp {
    /// Walk a named law to the given depth and classify it.
    Classify { law: String },
    /// The leftmost path avoiding the listed code values.
    OiPath {
        #[arg(long)]
        avoid: String,
        #[arg(long, default_value_t = 8)]
        len: usize,
    },
}

/// One structured output record.
#[derive(Serialize)]
struct Record {
    op: String,
    digest: String,
    result: String,
    depth: usize,
    elapsed_ms: u128,
}

impl Record {
    fn line(&self) -> String {
        format!(
            "op={} digest={} result={} depth={} elapsed_ms={}",
            self.op,
            self.digest,
            self.result.replace(' ', "_"),
            self.depth,
            self.elapsed_ms
        )
    }
}

fn digest_of(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for p in parts {
        hasher.update(p.as_bytes());
        hasher.update([0u8]);
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn emit(common: &Common, records: &[Record]) {
    if common.json {
        println!("{}", serde_json::to_string(records).expect("records serialize"));
    } else {
        for r in records {
            println!("{}", r.line());
        }
    }
}

fn parse_nat(s: &str) -> Result<Nat, String> {
    s.parse::<Nat>().map_err(|_| format!("not a natural number: {s}"))
}

fn parse_values(s: &str) -> Result<Vec<u64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| format!("not a number: {p}")))
        .collect()
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: i64 = num.trim().parse().map_err(|_| format!("bad rational: {s}"))?;
    let d: i64 = den.trim().parse().map_err(|_| format!("bad rational: {s}"))?;
    if d == 0 {
        return Err(format!("zero denominator: {s}"));
    }
    Ok(rat(n, d))
}

fn codes_from_values(values: &[u64]) -> Vec<SeqCode> {
    values.iter().map(|&v| SeqCode::from_value(Nat::from(v))).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("bimwb: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let c = &cli.common;
    let start = Instant::now();
    match &cli.cmd {
        Cmd::Code { op } => {
            let (opname, input, result) = match op {
                CodeOp::Encode { entries } => {
                    let code = SeqCode::encode_u64(entries);
                    ("code:encode", format!("{entries:?}"), code.value().to_string())
                }
                CodeOp::Decode { value } => {
                    let code = SeqCode::from_value(parse_nat(value)?);
                    let shown = code
                        .entries_u64()
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(",");
                    ("code:decode", value.clone(), shown)
                }
                CodeOp::Concat { a, b } => {
                    let left = SeqCode::from_value(parse_nat(a)?);
                    let right = SeqCode::from_value(parse_nat(b)?);
                    ("code:concat", format!("{a},{b}"), left.concat(&right).value().to_string())
                }
            };
            emit(c, &[Record {
                op: opname.to_string(),
                digest: digest_of(&[&input]),
                result,
                depth: c.depth,
                elapsed_ms: start.elapsed().as_millis(),
            }]);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sec { bar } => {
            let values = parse_values(bar)?;
            let pred = NodePredicate::from_codes(codes_from_values(&values));
            let table = sec_table(&pred, c.depth);
            let level = root_secured_level(&pred, c.depth);
            let counts: Vec<String> = (0..=c.depth)
                .map(|n| {
                    let secured = (0..=c.depth)
                        .flat_map(bin_codes_of_length)
                        .filter(|s| table.is_secured(s, n).unwrap_or(false))
                        .count();
                    format!("sec{n}:{secured}")
                })
                .collect();
            let result = format!(
                "root_level={} {}",
                level.map_or("none".to_string(), |l| l.to_string()),
                counts.join(" ")
            );
            emit(c, &[Record {
                op: "sec".to_string(),
                digest: digest_of(&[bar]),
                result,
                depth: c.depth,
                elapsed_ms: start.elapsed().as_millis(),
            }]);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Game { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| format!("{}: {e}", file.display()))?;
            let desc: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let moves = desc["moves"].as_u64().ok_or("game file: missing moves")? as usize;
            let alts = desc["alternatives"].as_u64().ok_or("game file: missing alternatives")?;
            let side = match desc["side"].as_str() {
                Some("I") | None => Side::I,
                Some("II") => Side::II,
                Some(other) => return Err(format!("game file: unknown side {other}")),
            };
            let target: Vec<SeqCode> = desc["target"]
                .as_array()
                .ok_or("game file: missing target")?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .map(|n| SeqCode::from_value(Nat::from(n)))
                        .ok_or_else(|| format!("game file: bad target value {v}"))
                })
                .collect::<Result<_, _>>()?;
            let arena = Arena::new(moves, alts);
            let outcome = games::solve(side, &arena, &target).map_err(|e| e.to_string())?;
            let result = format!(
                "halfwin={} win={} counterstrategy={}",
                outcome.halfwin,
                outcome.win.map_or("none".to_string(), |s| s.table().value().to_string()),
                outcome
                    .counterstrategy
                    .map_or("none".to_string(), |s| s.table().value().to_string()),
            );
            emit(c, &[Record {
                op: "game".to_string(),
                digest: digest_of(&[&text]),
                result,
                depth: c.depth,
                elapsed_ms: start.elapsed().as_millis(),
            }]);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Logic { op } => {
            let (opname, input, result) = match op {
                LogicOp::Eval { formula, valuation } => {
                    let m = parse_nat(formula)?;
                    let bits = parse_values(valuation)?;
                    let value = logic::eval_zero_extended(&SeqCode::encode_u64(&bits), &m);
                    ("logic:eval", format!("{formula};{valuation}"), value.to_string())
                }
                LogicOp::Realize { formulas } => {
                    let codes: Vec<Nat> =
                        formulas.iter().map(|f| parse_nat(f)).collect::<Result<_, _>>()?;
                    let answer = logic::realizable(&codes).map_err(|e| e.to_string())?;
                    let shown = match answer {
                        None => "unrealizable".to_string(),
                        Some(v) => format!("valuation={}", v.value()),
                    };
                    ("logic:realize", format!("{formulas:?}"), shown)
                }
            };
            emit(c, &[Record {
                op: opname.to_string(),
                digest: digest_of(&[&input]),
                result,
                depth: c.depth,
                elapsed_ms: start.elapsed().as_millis(),
            }]);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Real { op } => {
            let (opname, input, result) = match op {
                RealOp::Ternary { word } => {
                    let bits = parse_values(word)?;
                    let iv = ternary(&SeqCode::encode_u64(&bits)).map_err(|e| e.to_string())?;
                    ("real:ternary", word.clone(), format!("{}..{}", iv.lo(), iv.hi()))
                }
                RealOp::Bisect { steps, breakpoints } => {
                    let points: Vec<(Rat, Rat)> = breakpoints
                        .split(',')
                        .map(|pair| {
                            let (x, y) = pair
                                .split_once('=')
                                .ok_or_else(|| format!("bad breakpoint: {pair}"))?;
                            Ok((parse_rat(x)?, parse_rat(y)?))
                        })
                        .collect::<Result<_, String>>()?;
                    let phi = PLFunction::new(points).map_err(|e| e.to_string())?;
                    let run = bisect(&phi, *steps).map_err(|e| e.to_string())?;
                    let shown = match (&run.exact_root, run.intervals.last()) {
                        (Some(root), _) => format!("exact_root={root}"),
                        (None, Some(last)) => format!("interval={}..{}", last.lo(), last.hi()),
                        (None, None) => "interval=0..1".to_string(),
                    };
                    ("real:bisect", format!("{steps};{breakpoints}"), shown)
                }
            };
            emit(c, &[Record {
                op: opname.to_string(),
                digest: digest_of(&[&input]),
                result,
                depth: c.depth,
                elapsed_ms: start.elapsed().as_millis(),
            }]);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Spread { op } => {
            let (opname, input, result) = match op {
                SpreadOp::Classify { law } => {
                    let law =
                        SpreadLaw::by_name(law).ok_or_else(|| format!("unknown law: {law}"))?;
                    let shown = match classify(&law, c.depth) {
                        Classification::NotSpread { witness } => {
                            format!("not-spread witness={:?}", witness.entries_u64())
                        }
                        Classification::Spread => "spread".to_string(),
                        Classification::ApproxFan { level_counts } => {
                            format!("approx-fan level_counts={level_counts:?}")
                        }
                        Classification::Fan { bounds } => format!(
                            "fan nodes={} max_branch={}",
                            bounds.len(),
                            bounds.iter().map(|(_, b)| *b).max().unwrap_or(0)
                        ),
                        Classification::ExplicitFan { level_bounds } => {
                            format!("explicit-fan level_bounds={level_bounds:?}")
                        }
                    };
                    ("spread:classify", law.name().to_string(), shown)
                }
                SpreadOp::OiPath { avoid, len } => {
                    let values = parse_values(avoid)?;
                    let gamma =
                        oi_path(&codes_from_values(&values)).map_err(|e| e.to_string())?;
                    let shown = gamma
                        .prefix_values(*len)
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(",");
                    ("spread:oi-path", format!("{avoid};{len}"), shown)
                }
            };
            emit(c, &[Record {
                op: opname.to_string(),
                digest: digest_of(&[&input]),
                result,
                depth: c.depth,
                elapsed_ms: start.elapsed().as_millis(),
            }]);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Reduce { id, input } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| format!("{}: {e}", input.display()))?;
            let inst: Instance =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", input.display()))?;
            let output = reductions::apply(id, &inst, c.budget).map_err(|e| e.to_string())?;
            emit(c, &[Record {
                op: format!("reduce:{id}"),
                digest: inst.digest(),
                result: output.fingerprint(16),
                depth: c.depth,
                elapsed_ms: start.elapsed().as_millis(),
            }]);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { id, count, input } => {
            let reports = match input {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    let inst: Instance = serde_json::from_str(&text)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    vec![reductions::verify(id, &inst, c.depth, c.seed)
                        .map_err(|e| e.to_string())?]
                }
                None => report::run_suite(&[id.as_str()], *count, c.depth, c.seed)
                    .map_err(|e| e.to_string())?,
            };
            let failures = reports.iter().filter(|r| r.counterexample.is_some()).count();
            let records: Vec<Record> = reports
                .iter()
                .map(|r| Record {
                    op: format!("verify:{}", r.id),
                    digest: r.digest.clone(),
                    result: r
                        .counterexample
                        .clone()
                        .map_or("pass".to_string(), |ce| format!("counterexample:{ce}")),
                    depth: r.depth,
                    elapsed_ms: r.elapsed_micros.div_ceil(1000),
                })
                .collect();
            emit(c, &records);
            if failures > 0 {
                eprintln!("bimwb: {failures} contract counterexample(s)");
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Cmd::Suite { name, n } => {
            let outcomes = suites::run(name, *n, c)?;
            let records: Vec<Record> = outcomes
                .iter()
                .map(|o| Record {
                    op: format!("suite:{}", o.name),
                    digest: digest_of(&[&o.name, &c.depth.to_string(), &c.seed.to_string()]),
                    result: if o.pass {
                        format!("pass {}", o.detail)
                    } else {
                        format!("fail {}", o.detail)
                    },
                    depth: c.depth,
                    elapsed_ms: o.elapsed_ms,
                })
                .collect();
            emit(c, &records);
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            if failed > 0 {
                eprintln!("bimwb: {failed} suite batch(es) failed");
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

/// The acceptance-criteria batches.
mod suites {
    use super::*;

    pub struct Outcome {
        pub name: String,
        pub pass: bool,
        pub detail: String,
        pub elapsed_ms: u128,
    }

    pub fn run(name: &str, n: usize, c: &Common) -> Result<Vec<Outcome>, String> {
        let all = [
            "coding",
            "sec",
            "kleene",
            "games",
            "reductions",
            "logic",
            "reals",
            "openinduction",
            "thinbar",
        ];
        let chosen: Vec<&str> = if name == "all" {
            all.to_vec()
        } else if all.contains(&name) {
            vec![name]
        } else {
            return Err(format!("unknown suite: {name} (expected one of {all:?} or all)"));
        };
        Ok(chosen
            .into_iter()
            .map(|batch| {
                let start = Instant::now();
                let (pass, detail) = match batch {
                    "coding" => coding_batch(),
                    "sec" => sec_batch(c.seed),
                    "kleene" => kleene_batch(c.seed),
                    "games" => games_batch(n),
                    "reductions" => reductions_batch(c.seed),
                    "logic" => logic_batch(),
                    "reals" => reals_batch(c.seed),
                    "openinduction" => open_induction_batch(c.seed),
                    "thinbar" => thin_bar_batch(),
                    _ => unreachable!("filtered above"),
                };
                Outcome {
                    name: batch.to_string(),
                    pass,
                    detail,
                    elapsed_ms: start.elapsed().as_millis(),
                }
            })
            .collect())
    }

    fn all_lists(max_entry: u64, max_len: usize) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|l: &Vec<u64>| {
                    (0..=max_entry).map(move |e| {
                        let mut next = l.clone();
                        next.push(e);
                        next
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// Criterion 1: coding laws, exhaustive over entries <= 5, length <= 6.
    fn coding_batch() -> (bool, String) {
        let mut checked = 0usize;
        for l in all_lists(5, 6) {
            let code = SeqCode::encode_u64(&l);
            if SeqCode::from_value(code.value()) != code {
                return (false, format!("decode-encode broke on {l:?}"));
            }
            checked += 1;
        }
        // Monoid laws on the sub-universe whose concatenations stay inside.
        let small = all_lists(5, 3);
        let empty = SeqCode::empty();
        for a in &small {
            let ca = SeqCode::encode_u64(a);
            if ca.concat(&empty) != ca || empty.concat(&ca) != ca {
                return (false, format!("identity law broke on {a:?}"));
            }
            for b in &small {
                let cb = SeqCode::encode_u64(b);
                let mut joined = a.clone();
                joined.extend_from_slice(b);
                if ca.concat(&cb) != SeqCode::encode_u64(&joined) {
                    return (false, format!("concat broke on {a:?} {b:?}"));
                }
                // Prefix / compare coherence.
                let expect = if a == b {
                    SeqOrder::Equal
                } else if ca.is_initial_of(&cb) {
                    SeqOrder::ProperInitial
                } else if cb.is_initial_of(&ca) {
                    SeqOrder::ProperExtension
                } else {
                    SeqOrder::Deviates
                };
                if ca.compare(&cb) != expect {
                    return (false, format!("compare broke on {a:?} {b:?}"));
                }
                checked += 1;
            }
            for k in 0..=a.len() {
                if ca.prefix(k).unwrap() != SeqCode::encode_u64(&a[..k]) {
                    return (false, format!("prefix broke on {a:?} at {k}"));
                }
            }
        }
        // Associativity at entry-level length <= 2.
        let tiny = all_lists(5, 2);
        for a in &tiny {
            for b in &tiny {
                for cc in &tiny {
                    let ca = SeqCode::encode_u64(a);
                    let cb = SeqCode::encode_u64(b);
                    let ccc = SeqCode::encode_u64(cc);
                    if ca.concat(&cb).concat(&ccc) != ca.concat(&cb.concat(&ccc)) {
                        return (false, format!("associativity broke on {a:?} {b:?} {cc:?}"));
                    }
                }
            }
        }
        (true, format!("checked={checked}"))
    }

    fn subsets_of(nodes: &[SeqCode]) -> impl Iterator<Item = Vec<SeqCode>> + '_ {
        (0u64..(1 << nodes.len())).map(move |mask| {
            nodes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect()
        })
    }

    fn least_barring_depth(bar: &NodePredicate, maxd: usize) -> Option<usize> {
        (0..=maxd).find(|&d| {
            bin_codes_of_length(d)
                .all(|s| (0..=d).any(|j| bar.contains(&s.prefix(j).expect("within length"))))
        })
    }

    fn sec_laws_hold(bar: &NodePredicate, depth: usize) -> Result<(), String> {
        let table = sec_table(bar, depth);
        for len in 0..=depth {
            for s in bin_codes_of_length(len) {
                // Level 0 means some initial part lies in the bar.
                let hit =
                    (0..=len).any(|j| bar.contains(&s.prefix(j).expect("within length")));
                if table.is_secured(&s, 0).expect("in range") != hit {
                    return Err(format!("level-0 securedness broke at {s:?}"));
                }
                // Extension soundness: a level-0 hit persists to children.
                if hit && len < depth {
                    for b in 0..2u64 {
                        if !table.is_secured(&s.push(Nat::from(b)), 0).expect("in range") {
                            return Err(format!("extension soundness broke below {s:?}"));
                        }
                    }
                }
                for level in 1..=depth {
                    let here = table.is_secured(&s, level).expect("in range");
                    // Monotone in the level.
                    if table.is_secured(&s, level - 1).expect("in range") && !here {
                        return Err(format!("monotonicity broke at {s:?} level {level}"));
                    }
                    // The defining descent, re-evaluated directly; frontier
                    // nodes carry their level-0 answer.
                    let direct = if len < depth {
                        (0..2u64).all(|b| {
                            table
                                .is_secured(&s.push(Nat::from(b)), level - 1)
                                .expect("in range")
                        })
                    } else {
                        table.is_secured(&s, 0).expect("in range")
                    };
                    if here != direct {
                        return Err(format!("recursion broke at {s:?} level {level}"));
                    }
                }
            }
        }
        let lvl = root_secured_level(bar, depth);
        if lvl != least_barring_depth(bar, depth) {
            return Err(format!("root level {lvl:?} disagrees with least barring depth"));
        }
        Ok(())
    }

    /// Criterion 2: the securedness calculus.  The full universe of
    /// predicates on codes of length <= 4 has 2^31 members; this batch is
    /// exhaustive on supports of length <= 2 and exactly 3, plus seeded
    /// samples on <= 4.
    fn sec_batch(seed: u64) -> (bool, String) {
        let depth = 8;
        let short: Vec<SeqCode> = (0..=2).flat_map(bin_codes_of_length).collect();
        let exact3: Vec<SeqCode> = bin_codes_of_length(3).collect();
        let mut checked = 0usize;
        for set in subsets_of(&short).chain(subsets_of(&exact3)) {
            if let Err(e) = sec_laws_hold(&NodePredicate::from_codes(set), depth) {
                return (false, e);
            }
            checked += 1;
        }
        let wide: Vec<SeqCode> = (0..=4).flat_map(bin_codes_of_length).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ec);
        for _ in 0..500 {
            let mask = rng.next_u64() % (1 << wide.len() as u64);
            let set: Vec<SeqCode> = wide
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect();
            if let Err(e) = sec_laws_hold(&NodePredicate::from_codes(set), depth) {
                return (false, e);
            }
            checked += 1;
        }
        (true, format!("tables={checked} depth={depth}"))
    }

    /// Criterion 3: the diagonal machine bar is escapable at every finite
    /// stage, yet every machine-computed stream meets it quickly.
    fn kleene_batch(seed: u64) -> (bool, String) {
        let machine = Machine::default();
        let bar = kleene_bar(&machine);
        for m in 0..=10 {
            if avoidance_witness(&bar, m).is_none() {
                return (false, format!("no avoidance witness at depth {m}"));
            }
        }
        // Certificates and diagonal values, precomputed to the horizon.
        let horizon = 1000usize;
        let certs: Vec<Option<u64>> =
            (0..horizon as u64).map(|e| machine.certificate(e, e)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b1e);
        let mut sampled = 0;
        let mut tried = 0u64;
        while sampled < 20 && tried < 4000 {
            tried += 1;
            let e = rng.next_u64() % 400;
            if machine.certificate(e, e).is_none() {
                continue;
            }
            sampled += 1;
            let stream = machine.stream(e);
            let values: Vec<u64> = (0..horizon as u64).map(|i| stream.at(i)).collect();
            let met = (1..=horizon).any(|len| {
                (0..len).any(|p| match certs[p] {
                    Some(z) => (z as usize) < len && values[p] != (1 - Machine::psi(z)) as u64,
                    None => false,
                })
            });
            if !met {
                return (false, format!("stream of program {e} misses the bar"));
            }
        }
        (true, format!("witnesses<=10 streams={sampled}"))
    }

    /// Criterion 4: finite determinacy against a direct strategy-enumeration
    /// oracle, exhaustive over all binary targets up to `max_moves` moves.
    fn games_batch(max_moves: usize) -> (bool, String) {
        let mut checked = 0usize;
        for n in 2..=max_moves.clamp(2, 3) {
            let arena = Arena::new(n, 2);
            let plays = arena.plays();
            for mask in 0u64..(1 << plays.len()) {
                let x: Vec<SeqCode> = plays
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, p)| p.clone())
                    .collect();
                for side in [Side::I, Side::II] {
                    let outcome = games::solve(side, &arena, &x).expect("plays admitted");
                    let oracle_half = oracle_halfwin(side, n, &x);
                    let oracle_win = oracle_win(side, n, &x);
                    if outcome.halfwin != oracle_half
                        || outcome.win.is_some() != oracle_win
                        || outcome.halfwin != outcome.win.is_some()
                    {
                        return (
                            false,
                            format!("determinacy broke at n={n} mask={mask} side={side:?}"),
                        );
                    }
                    checked += 1;
                }
            }
        }
        (true, format!("solved={checked}"))
    }

    fn binary_vectors(len: usize) -> Vec<Vec<u64>> {
        (0..(1u64 << len)).map(|m| (0..len).map(|i| m >> i & 1).collect()).collect()
    }

    /// Decision positions of the given parity in an n-move binary game.
    fn decision_positions(parity: usize, n: usize) -> Vec<Vec<u64>> {
        (0..n).filter(|k| k % 2 == parity).flat_map(binary_vectors).collect()
    }

    fn obeys_assignment(play: &[u64], parity: usize, pos: &[Vec<u64>], asg: &[u64]) -> bool {
        (0..play.len()).filter(|k| k % 2 == parity).all(|k| {
            let here = &play[..k];
            pos.iter().position(|p| p == here).is_none_or(|i| play[k] == asg[i])
        })
    }

    fn in_target(play: &[u64], x: &[SeqCode]) -> bool {
        x.iter().any(|s| s.entries_u64() == play)
    }

    fn oracle_halfwin(side: Side, n: usize, x: &[SeqCode]) -> bool {
        let mine = side.parity();
        let theirs = 1 - mine;
        let opp_pos = decision_positions(theirs, n);
        let plays = binary_vectors(n);
        // Against every opposing strategy, some play obeying it hits x.
        all_assignments(opp_pos.len(), |asg| {
            plays
                .iter()
                .any(|p| obeys_assignment(p, theirs, &opp_pos, asg) && in_target(p, x))
        })
    }

    fn oracle_win(side: Side, n: usize, x: &[SeqCode]) -> bool {
        let mine = side.parity();
        let my_pos = decision_positions(mine, n);
        let plays = binary_vectors(n);
        // Some strategy of mine confines every obeying play to x.
        !all_assignments(my_pos.len(), |asg| {
            !plays
                .iter()
                .filter(|p| obeys_assignment(p, mine, &my_pos, asg))
                .all(|p| in_target(p, x))
        })
    }

    /// Visits every assignment of binary moves to `count` positions; returns
    /// whether the predicate held on all of them.
    fn all_assignments(count: usize, mut pred: impl FnMut(&[u64]) -> bool) -> bool {
        (0u64..(1 << count)).all(|m| {
            let asg: Vec<u64> = (0..count).map(|i| m >> i & 1).collect();
            pred(&asg)
        })
    }

    /// Criterion 5: zero contract counterexamples over the whole registry,
    /// plus the finite-strategy extraction of the table-marking entry.
    fn reductions_batch(seed: u64) -> (bool, String) {
        let ids: Vec<&'static str> =
            reductions::registry().iter().map(|e| e.id).collect();
        let reports = match report::run_suite(&ids, 100, 6, seed) {
            Ok(r) => r,
            Err(e) => return (false, format!("suite error: {e}")),
        };
        if let Some(bad) = reports.iter().find(|r| r.counterexample.is_some()) {
            return (false, format!("counterexample: {}", bad.line()));
        }
        let extractions = reports
            .iter()
            .filter(|r| r.id == "g_halfwin_to_bar" && r.antecedent_holds)
            .collect::<Vec<_>>();
        if extractions.is_empty() {
            return (false, "no satisfied table-marking instances generated".to_string());
        }
        for r in &extractions {
            if !r.witness.contains("finite-second-player-win=true")
                && !r.witness.contains("extraction-skipped")
            {
                return (false, format!("extraction missing: {}", r.line()));
            }
        }
        if !extractions.iter().any(|r| r.witness.contains("finite-second-player-win=true")) {
            return (false, "no strategy was ever extracted".to_string());
        }
        let descent_ids = ["bar_to_sep", "llpo_choice_path", "bar_to_binchoice", "twofold_descent"];
        for id in descent_ids {
            if !reports.iter().any(|r| r.id == id && r.consequent_holds) {
                return (false, format!("descent contrapositive unexercised for {id}"));
            }
        }
        (true, format!("reports={} extractions={}", reports.len(), extractions.len()))
    }

    /// Criterion 6: formula-coding adequacy, realizability against a truth
    /// table, and strong-negation soundness.
    fn logic_batch() -> (bool, String) {
        // Adequacy: evaluation of a word's characteristic formula against a
        // zero-extended valuation finds exactly the initial parts.
        for la in 0..=6usize {
            for a in bin_codes_of_length(la) {
                let f = logic::fm(&a).expect("binary word");
                for lb in la..=6usize {
                    for b in bin_codes_of_length(lb) {
                        let got = logic::eval_zero_extended(&b, &f) == 1;
                        if got != a.is_initial_of(&b) {
                            return (false, format!("adequacy broke at {a:?} vs {b:?}"));
                        }
                    }
                }
            }
        }
        // Realizability against a brute-force truth table over 4 atoms.
        let atoms: Vec<Nat> = (0..4u64).map(|i| logic::atom(&Nat::from(i))).collect();
        let mut pool: Vec<Nat> = atoms.clone();
        pool.extend(atoms.iter().map(logic::negation));
        pool.push(logic::conjunction(&[atoms[0].clone(), atoms[1].clone()]));
        pool.push(logic::disjunction(&[atoms[2].clone(), logic::negation(&atoms[3])]));
        pool.push(logic::falsum());
        let mut sets: Vec<Vec<Nat>> = vec![vec![]];
        for i in 0..pool.len() {
            sets.push(vec![pool[i].clone()]);
            for j in i..pool.len() {
                sets.push(vec![pool[i].clone(), pool[j].clone()]);
                for k in j..pool.len() {
                    sets.push(vec![pool[i].clone(), pool[j].clone(), pool[k].clone()]);
                }
            }
        }
        for set in &sets {
            let got = logic::realizable(set).expect("atoms in range").is_some();
            let truth = (0u64..16).any(|bits| {
                let valuation: Vec<u64> = (0..4).map(|i| bits >> i & 1).collect();
                let c = SeqCode::encode_u64(&valuation);
                set.iter().all(|f| logic::eval_zero_extended(&c, f) == 1)
            });
            if got != truth {
                return (false, format!("realizability broke on a set of {}", set.len()));
            }
        }
        // Strong negation: over every one-relation structure of size <= 3,
        // the strong negation of a formula excludes the formula.
        let formulas = positive_formula_pool();
        for size in 1..=3usize {
            let tuples: Vec<Vec<usize>> = (0..size).map(|d| vec![d]).collect();
            for mask in 0u64..(1 << tuples.len()) {
                let mut structure = FiniteStructure::new(size, 1);
                for (i, t) in tuples.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        structure.insert(0, t);
                    }
                }
                for f in &formulas {
                    if logic::strong_negation(f).holds(&structure, &[])
                        && f.holds(&structure, &[])
                    {
                        return (false, format!("strong negation unsound on {f:?}"));
                    }
                }
            }
        }
        (true, format!("adequacy<=6 sets={} formulas={}", sets.len(), formulas.len()))
    }

    fn positive_formula_pool() -> Vec<PositiveFormula> {
        use PositiveFormula::*;
        let lit = |neg: bool, v: usize| Lit { rel: 0, args: vec![v], negated: neg };
        vec![
            lit(false, 0),
            lit(true, 0),
            Forall(Box::new(lit(false, 0))),
            Exists(Box::new(lit(true, 0))),
            Forall(Box::new(Exists(Box::new(Or(vec![lit(false, 0), lit(true, 1)]))))),
            Exists(Box::new(Forall(Box::new(And(vec![lit(false, 1), lit(false, 0)]))))),
            And(vec![Exists(Box::new(lit(false, 0))), Forall(Box::new(lit(false, 0)))]),
            Or(vec![Forall(Box::new(lit(true, 0))), Exists(Box::new(lit(false, 0)))]),
        ]
    }

    /// Criterion 7: ternary widths, the 1/3 bisection, and the sign
    /// invariant on random piecewise-linear functions.
    fn reals_batch(seed: u64) -> (bool, String) {
        let third = rat(1, 3);
        for n in 0..=8usize {
            let width = (0..n).fold(rat(1, 1), |w, _| w / rat(3, 1));
            for a in bin_codes_of_length(n) {
                let iv = ternary(&a).expect("binary word");
                if iv.length() != width {
                    return (false, format!("ternary width broke at {a:?}"));
                }
            }
        }
        let phi = PLFunction::new(vec![(rat(0, 1), rat(-1, 3)), (rat(1, 1), rat(2, 3))])
            .expect("valid breakpoints");
        let run = bisect(&phi, 20).expect("endpoint signs differ");
        let last = run.intervals.last().expect("twenty steps");
        let width_goal = (0..20).fold(rat(1, 1), |w, _| w / rat(2, 1));
        if run.exact_root.is_none()
            && (last.length() != width_goal || !last.contains(&third))
        {
            return (false, "bisection missed one third".to_string());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4ea1);
        for trial in 0..50 {
            let mut points = vec![(rat(0, 1), rat(-(1 + (rng.next_u64() % 50) as i64), 25))];
            let mut xs: Vec<i64> = (0..rng.next_u64() % 4).map(|_| (rng.next_u64() % 98 + 1) as i64).collect();
            xs.sort_unstable();
            xs.dedup();
            for x in xs {
                let y = (rng.next_u64() % 101) as i64 - 50;
                points.push((rat(x, 100), rat(y, 25)));
            }
            points.push((rat(1, 1), rat(1 + (rng.next_u64() % 50) as i64, 25)));
            let phi = PLFunction::new(points).expect("sorted breakpoints");
            let run = bisect(&phi, 12).expect("endpoint signs differ");
            for step in &run.intervals {
                if !(phi.eval(&step.lo()) < rat(0, 1) && rat(0, 1) < phi.eval(&step.hi())) {
                    return (false, format!("sign invariant broke on trial {trial}"));
                }
            }
        }
        (true, "widths<=8 bisection=2^-20 random=50".to_string())
    }

    /// Criterion 8: the open-induction path invariant, exhaustive over
    /// non-barring marks supported on short codes plus seeded samples.
    fn open_induction_batch(seed: u64) -> (bool, String) {
        let short: Vec<SeqCode> = (0..=3).flat_map(bin_codes_of_length).collect();
        let exact4: Vec<SeqCode> = bin_codes_of_length(4).collect();
        let mut checked = 0usize;
        for set in subsets_of(&short).chain(subsets_of(&exact4)) {
            match oi_invariant(&set) {
                Ok(used) => checked += usize::from(used),
                Err(e) => return (false, e),
            }
        }
        let wide: Vec<SeqCode> = (0..=4).flat_map(bin_codes_of_length).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01d);
        for _ in 0..2000 {
            let mask = rng.next_u64() % (1 << wide.len() as u64);
            let set: Vec<SeqCode> = wide
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect();
            match oi_invariant(&set) {
                Ok(used) => checked += usize::from(used),
                Err(e) => return (false, e),
            }
        }
        (true, format!("non-barring-sets={checked}"))
    }

    /// For a non-barring set, the leftmost avoiding path keeps the set a
    /// bar strictly to its left while never itself entering the set.
    fn oi_invariant(set: &[SeqCode]) -> Result<bool, String> {
        if bar_in_cone(set, &SeqCode::empty()) {
            return Ok(false);
        }
        let gamma = oi_path(set).map_err(|e| format!("path failed: {e:?}"))?;
        for n in 0..=8usize {
            let prefix = gamma.prefix_code(n);
            if !bar_on_left(set, &prefix) {
                return Err(format!("left-bar invariant broke at stage {n}"));
            }
            if set.contains(&prefix) {
                return Err(format!("path entered the set at stage {n}"));
            }
        }
        Ok(true)
    }

    /// Criterion 9: thin bars on explicit fan laws, exhaustive over the
    /// antichains of the depth-3 binary tree, checked at depth 5.
    fn thin_bar_batch() -> (bool, String) {
        let nodes: Vec<SeqCode> = (0..=3).flat_map(bin_codes_of_length).collect();
        let laws =
            [SpreadLaw::binary(), SpreadLaw::binary().with_level_bound(|_| 2)];
        let mut antichains = 0usize;
        for set in subsets_of(&nodes) {
            let antichain = set.iter().all(|a| {
                set.iter().all(|b| a == b || (!a.is_initial_of(b) && !b.is_initial_of(a)))
            });
            if !antichain {
                continue;
            }
            antichains += 1;
            let pred = NodePredicate::from_codes(set.clone());
            let level = root_secured_level(&pred, 5);
            for law in &laws {
                let thin = thin_bar_check(law, &set, 5);
                if thin != level.is_some() {
                    return (
                        false,
                        format!("thin-bar verdict disagrees with securedness on {set:?}"),
                    );
                }
            }
            if let Some(lvl) = level {
                if least_barring_depth(&pred, 5) != Some(lvl) {
                    return (false, format!("secured level mismatch on {set:?}"));
                }
            }
        }
        (true, format!("antichains={antichains}"))
    }
}
