//! The catalogue entries: transforms, depth-bounded contracts, and
//! instance generators.
//!
//! Conventions shared by every entry:
//!
//! * Streams index the binary tree by sequence-code values; "the marks bar
//!   the tree at depth d" means every binary code of length d has a marked
//!   initial part.
//! * The n-th subsequence of a master stream follows the same convention as
//!   [`crate::streams::BairePoint::subsequence`].
//! * Enumerated-set membership is probed to [`super::CHECK_BUDGET`] (or the
//!   wider pair-code horizon where indices are pair codes).
//! * Transform rules decode query indices with a bounded factorization;
//!   indices that are not codes over the first 26 primes read as "no node".

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::coding::{self, Nat, SeqCode};
use crate::games::{self, Arena, Side};
use crate::logic;
use crate::reals::{double, rat, s_relation, ternary, thirds, RatInterval, SRelation};
use crate::secured::{
    avoidance_witness, bar_depth, root_secured_level, sec_table, NodePredicate, SecuredTable,
};
use crate::spreads::{bar_in_cone, bar_on_left};
use crate::streams::{lpo_probe, BairePoint, FinSeed, LpoVerdict, Tail};

use super::{Check, Instance, Output, ReductionError, Sig, CHECK_BUDGET};

const B: u64 = CHECK_BUDGET;
/// Probe horizon for streams indexed by pair codes.
const WIDE: u64 = 256;

const PRIMES26: [u64; 26] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
    83, 89, 97, 101,
];

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

/// Decodes a query index into a sequence code, provided the index is a code
/// over the first 26 primes; anything else is "no node".
pub(super) fn decode_bounded(m: &Nat) -> Option<SeqCode> {
    if m.is_zero() {
        return Some(SeqCode::empty());
    }
    let mut n = m + Nat::one();
    let mut entries: Vec<Nat> = Vec::new();
    for p in PRIMES26 {
        if n.is_one() {
            break;
        }
        let p = Nat::from(p);
        let mut e = Nat::zero();
        loop {
            let (q, r) = n.div_rem(&p);
            if r.is_zero() {
                n = q;
                e += Nat::one();
            } else {
                break;
            }
        }
        entries.push(e);
    }
    if !n.is_one() {
        return None;
    }
    let last = entries.last_mut()?;
    if last.is_zero() {
        return None;
    }
    *last -= Nat::one();
    Some(SeqCode::encode(entries))
}

fn bit(b: u64) -> Nat {
    Nat::from(b)
}

fn code_str(s: &SeqCode) -> String {
    if s.is_empty() {
        "e".to_string()
    } else {
        s.entries_u64().iter().map(u64::to_string).collect::<Vec<_>>().join(".")
    }
}

fn bar_of(alpha: &BairePoint) -> NodePredicate {
    NodePredicate::from_stream(alpha.clone())
}

/// Value of the n-th subsequence of `alpha` at index `p`.
pub(super) fn sub_at(alpha: &BairePoint, n: u64, p: u64) -> u64 {
    let idx =
        SeqCode::encode_u64(&[n]).concat(&SeqCode::from_value(Nat::from(p))).value();
    alpha.at_nat(&idx)
}

fn bin_exact(len: usize) -> Vec<SeqCode> {
    coding::bin_codes_of_length(len).collect()
}

fn bin_up_to(len: usize) -> Vec<SeqCode> {
    (0..=len).flat_map(coding::bin_codes_of_length).collect()
}

fn point_output(points: Vec<BairePoint>) -> Result<Output, ReductionError> {
    Ok(Output::Points(points))
}

fn first_point(out: Result<Output, ReductionError>) -> BairePoint {
    match out.expect("transform succeeds inside checks") {
        Output::Points(ps) => ps.into_iter().next().expect("at least one point"),
        _ => unreachable!("stream-producing entry"),
    }
}

/// AND/OR evaluation on the binary tree: a marked node (checked on the way
/// down) counts as a hit; the side whose position parity equals
/// `or_parity` chooses, the other side is quantified universally.
pub(super) fn forced_hit(
    hit: &dyn Fn(&SeqCode) -> bool,
    or_parity: usize,
    s: &SeqCode,
    depth: usize,
) -> bool {
    if hit(s) {
        return true;
    }
    if s.len() >= depth {
        return false;
    }
    let results = (0..2u64).map(|b| forced_hit(hit, or_parity, &s.push(bit(b)), depth));
    if s.len() % 2 == or_parity {
        results.into_iter().fold(false, |acc, r| acc | r)
    } else {
        results.into_iter().fold(true, |acc, r| acc & r)
    }
}

/// Descent path through the securedness table: at each step follow the
/// child that becomes secured later (an unsecured child counts as latest).
pub(super) fn descent_path(table: &SecuredTable, d: usize) -> SeqCode {
    let mut s = SeqCode::empty();
    for _ in 0..d {
        let level = |c: &SeqCode| -> Option<usize> {
            (0..=table.depth()).find(|&n| table.is_secured(c, n).unwrap_or(false))
        };
        let l0 = level(&s.push(bit(0)));
        let l1 = level(&s.push(bit(1)));
        let b = match (l0, l1) {
            (None, _) => 0,
            (Some(_), None) => 1,
            (Some(a), Some(bv)) => u64::from(a < bv),
        };
        s = s.push(bit(b));
    }
    s
}

/// "A hit along the descent path at stage n secures the root at level n."
fn descent_consequent(alpha: &BairePoint, d: usize) -> Check {
    let table = sec_table(&bar_of(alpha), d);
    let delta = descent_path(&table, d);
    for n in 0..=d {
        let prefix = delta.prefix(n).expect("within length");
        if alpha.at_nat(&prefix.value()) != 0 && !table.root_secured(n).expect("in range") {
            return Check::from(false, format!("hit-at-{n}-without-secured-root"));
        }
    }
    Check::from(true, format!("descent={}", code_str(&delta)))
}

fn sample_binary_points(seed: u64, tag: u64, count: usize, len: usize) -> Vec<BairePoint> {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(tag));
    (0..count)
        .map(|_| {
            let prefix: Vec<u64> = (0..len).map(|_| rng.next_u64() & 1).collect();
            FinSeed::new(prefix, Tail::Zero).point()
        })
        .collect()
}

fn rbit(rng: &mut ChaCha8Rng) -> u64 {
    rng.next_u64() & 1
}

fn rng_below(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    rng.next_u64() % n
}

fn streams_only(seeds: Vec<FinSeed>) -> Instance {
    Instance { streams: seeds, ..Instance::default() }
}

/// A random tree marking.  Satisfying: all length-2 nodes marked (a bar at
/// depth 2) plus noise.  Non-satisfying: sparse noise with the all-left ray
/// kept clear to depth 8.
fn gen_bar_seed(rng: &mut ChaCha8Rng, barred: bool) -> FinSeed {
    let mut prefix = vec![0u64; 40];
    if barred {
        for i in [2usize, 5, 8, 17] {
            prefix[i] = 1;
        }
        for _ in 0..4 {
            let j = rng_below(rng, 40) as usize;
            if rbit(rng) == 1 {
                prefix[j] = 1;
            }
        }
    } else {
        for _ in 0..6 {
            let j = rng_below(rng, 40) as usize;
            if rbit(rng) == 1 {
                prefix[j] = 1;
            }
        }
        for i in [0usize, 1, 2, 4, 6, 10, 12, 16, 18] {
            prefix[i] = 0;
        }
    }
    FinSeed::new(prefix, Tail::Zero)
}

/// A random master stream for the subsequence entries.  Satisfying: the
/// 0th subsequence takes both values 1 and 2 at its first two indices.
fn gen_master_seed(rng: &mut ChaCha8Rng, satisfy: bool) -> FinSeed {
    let mut prefix = vec![0u64; 24];
    for v in prefix.iter_mut() {
        if rbit(rng) == 1 {
            *v = 1;
        }
    }
    if satisfy {
        prefix[1] = 1;
        prefix[2] = 2;
    }
    FinSeed::new(prefix, Tail::Zero)
}

fn gen_small_values(rng: &mut ChaCha8Rng, len: usize, max: u64) -> FinSeed {
    FinSeed::new((0..len).map(|_| rng_below(rng, max + 1)).collect(), Tail::Zero)
}

// ---------------------------------------------------------------------------
// Entry 1: wkl_to_ft
// ---------------------------------------------------------------------------

fn t_wkl_to_ft(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let cap = (budget as usize).min(14);
    // Unmarked-companion table: at each length, does some node with all
    // initial parts unmarked survive?
    let mut layer = if alpha.at(0) == 0 { vec![SeqCode::empty()] } else { Vec::new() };
    let mut alive = vec![!layer.is_empty()];
    for _ in 0..cap {
        layer = layer
            .iter()
            .flat_map(|s| (0..2u64).map(|b| s.push(bit(b))).collect::<Vec<_>>())
            .filter(|c| alpha.at_nat(&c.value()) == 0)
            .collect();
        alive.push(!layer.is_empty());
    }
    let alive = Arc::new(alive);
    let a2 = alpha.clone();
    point_output(vec![BairePoint::from_rule("pruned-marks", move |m| {
        let Some(s) = decode_bounded(m) else { return 0 };
        if !s.is_bin() || s.len() > cap {
            return 0;
        }
        u64::from(a2.at_nat(m) != 0 && alive[s.len()])
    })])
}

fn a_wkl_to_ft(inst: &Instance, d: usize, _seed: u64) -> Check {
    let held = bar_depth(&bar_of(&inst.point(0)), d);
    Check::from(held, format!("marks-bar-depth-{d}={held}"))
}

fn c_wkl_to_ft(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_wkl_to_ft(inst, d as u64));
    let escape = avoidance_witness(&bar_of(&beta), d);
    let level = root_secured_level(&bar_of(&inst.point(0)), d);
    match (escape, level) {
        (Some(w), Some(n)) => {
            Check::from(true, format!("escape={} secured-level={n}", code_str(&w)))
        }
        (e, l) => Check::from(
            false,
            format!("escape-found={} secured-level-found={}", e.is_some(), l.is_some()),
        ),
    }
}

fn g_wkl_to_ft(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    streams_only(vec![gen_bar_seed(rng, satisfy)])
}

// ---------------------------------------------------------------------------
// Entry 2: wkl_to_llpo
// ---------------------------------------------------------------------------

/// No parity violation strictly below `k`: every position of the stated
/// parity whose predecessors are all zero carries a zero itself.
pub(super) fn ray_ok(alpha: &BairePoint, parity: u64, k: u64) -> bool {
    (0..k).filter(|m| m % 2 == parity).all(|m| {
        let prefix_zero = (0..m).all(|j| alpha.at(j) == 0);
        !prefix_zero || alpha.at(m) == 0
    })
}

fn t_wkl_to_llpo(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let cap = (budget as usize).min(26);
    point_output(vec![BairePoint::from_rule("parity-rays", move |m| {
        let Some(s) = decode_bounded(m) else { return 1 };
        if !s.is_bin() {
            return 1;
        }
        if s.is_empty() {
            return 0;
        }
        if s.len() > cap {
            return 1;
        }
        let entries = s.entries_u64();
        let b = entries[0];
        if entries.iter().any(|&e| e != b) {
            return 1;
        }
        u64::from(!ray_ok(&alpha, b, s.len() as u64))
    })])
}

fn a_wkl_to_llpo(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let held = (0..=d as u64).all(|k| ray_ok(&alpha, 0, k) || ray_ok(&alpha, 1, k));
    Check::from(held, format!("some-ray-survives-to-{d}={held}"))
}

fn c_wkl_to_llpo(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let even = ray_ok(&alpha, 0, d as u64);
    let odd = ray_ok(&alpha, 1, d as u64);
    Check::from(even || odd, format!("even-disjunct={even} odd-disjunct={odd}"))
}

fn g_wkl_to_llpo(rng: &mut ChaCha8Rng, _satisfy: bool) -> Instance {
    streams_only(vec![gen_small_values(rng, 12, 2)])
}

// ---------------------------------------------------------------------------
// Entry 3: lpo_to_llpo
// ---------------------------------------------------------------------------

fn t_lpo_to_llpo(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let values = match lpo_probe(&alpha, budget) {
        LpoVerdict::Witness(m) => vec![Nat::one(), Nat::from(m)],
        LpoVerdict::AllZeroUpTo(b) => vec![Nat::zero(), Nat::from(b)],
    };
    Ok(Output::Values(values))
}

fn a_lpo_to_llpo(_inst: &Instance, _d: usize, _seed: u64) -> Check {
    Check::from(true, "least-witness-decision-is-computed")
}

fn c_lpo_to_llpo(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let check_parity = |parity: u64| ray_ok(&alpha, parity, d as u64 + 1);
    match lpo_probe(&alpha, d as u64) {
        LpoVerdict::Witness(m) => {
            // An odd least witness leaves the even-position disjunct true,
            // and symmetrically.
            let parity = (m + 1) % 2;
            let held = check_parity(parity);
            Check::from(held, format!("witness={m} chosen-parity={parity} holds={held}"))
        }
        LpoVerdict::AllZeroUpTo(b) => {
            let held = check_parity(0) && check_parity(1);
            Check::from(held, format!("all-zero-to-{b} both-disjuncts={held}"))
        }
    }
}

fn g_lpo_to_llpo(rng: &mut ChaCha8Rng, _satisfy: bool) -> Instance {
    streams_only(vec![gen_small_values(rng, 10, 1)])
}

// ---------------------------------------------------------------------------
// Entry 4: sep_to_path
// ---------------------------------------------------------------------------

/// Does node `s` answer both enumerations consistently: 1 wherever the
/// first set enumerates the coordinate, 0 wherever the second does?
fn sep_admits(a0: &BairePoint, a1: &BairePoint, s: &SeqCode) -> bool {
    (0..s.len()).all(|n| {
        (0..s.len() as u64).all(|p| {
            (a0.at(p) != n as u64 + 1 || s.get_u64(n) == 1)
                && (a1.at(p) != n as u64 + 1 || s.get_u64(n) == 0)
        })
    })
}

fn t_sep_to_path(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let a0 = inst.point(0);
    let a1 = inst.point(1);
    let cap = (budget as usize).min(26);
    point_output(vec![BairePoint::from_rule("separating-tree", move |m| {
        let Some(s) = decode_bounded(m) else { return 1 };
        if !s.is_bin() {
            return 1;
        }
        if s.len() > cap {
            return 0;
        }
        u64::from(!sep_admits(&a0, &a1, &s))
    })])
}

fn a_sep_to_path(inst: &Instance, d: usize, _seed: u64) -> Check {
    let a0 = inst.point(0);
    let a1 = inst.point(1);
    let clash = (0..d as u64).find_map(|p| {
        (0..d as u64).find_map(|q| {
            let x = a0.at(p);
            (x != 0 && x == a1.at(q)).then_some((p, q))
        })
    });
    match clash {
        None => Check::from(true, format!("enumerations-disjoint-below-{d}")),
        Some((p, q)) => Check::from(false, format!("shared-element-at-{p}-{q}")),
    }
}

fn c_sep_to_path(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_sep_to_path(inst, d as u64));
    let level = root_secured_level(&bar_of(&beta), d);
    match level {
        None => Check::from(true, format!("root-unsecured-to-{d}")),
        Some(n) => Check::from(false, format!("root-secured-at-{n}")),
    }
}

fn g_sep_to_path(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    let mut p0: Vec<u64> = (0..6).map(|_| [0, 1, 3, 5][rng_below(rng, 4) as usize]).collect();
    let mut p1: Vec<u64> = (0..6).map(|_| [0, 2, 4, 6][rng_below(rng, 4) as usize]).collect();
    if !satisfy {
        let v = 1 + rng_below(rng, 4);
        p0[rng_below(rng, 6) as usize] = v;
        p1[rng_below(rng, 6) as usize] = v;
    }
    streams_only(vec![FinSeed::new(p0, Tail::Zero), FinSeed::new(p1, Tail::Zero)])
}

// ---------------------------------------------------------------------------
// Entry 5: bar_to_sep
// ---------------------------------------------------------------------------

fn t_bar_to_sep(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let cap = (budget as usize).min(12);
    let table = Arc::new(sec_table(&bar_of(&inst.point(0)), cap));
    let mk = |side: u64| {
        let table = Arc::clone(&table);
        BairePoint::from_rule(format!("one-sided-{side}"), move |m| {
            let (n, sv) = coding::unpair(m);
            let Ok(n) = usize::try_from(&n) else { return 0 };
            let Some(s) = decode_bounded(&sv) else { return 0 };
            if !s.is_bin() || s.len() + 1 > table.depth() || n > table.depth() {
                return 0;
            }
            let here = table.is_secured(&s.push(bit(side)), n).expect("in range");
            let there = table.is_secured(&s.push(bit(1 - side)), n).expect("in range");
            if here && !there {
                u64::try_from(&sv).map_or(0, |v| v + 1)
            } else {
                0
            }
        })
    };
    point_output(vec![mk(0), mk(1)])
}

fn a_bar_to_sep(inst: &Instance, d: usize, _seed: u64) -> Check {
    let out = t_bar_to_sep(inst, d as u64).expect("transform succeeds");
    let Output::Points(ps) = out else { unreachable!() };
    let clash = (0..B).any(|m| {
        let x = ps[0].at(m);
        x != 0 && (0..B).any(|m2| ps[1].at(m2) == x)
    });
    Check::from(!clash, format!("one-sided-sets-disjoint={}", !clash))
}

fn c_bar_to_sep(inst: &Instance, d: usize, _seed: u64) -> Check {
    descent_consequent(&inst.point(0), d)
}

fn g_bar_to_sep(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    streams_only(vec![gen_bar_seed(rng, satisfy)])
}

// ---------------------------------------------------------------------------
// Entry 6: llpo_choice_path
// ---------------------------------------------------------------------------

fn t_llpo_choice_path(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let cap = (budget as usize).min(16);
    let table = sec_table(&bar_of(&inst.point(0)), cap);
    let delta = descent_path(&table, cap);
    point_output(vec![BairePoint::from_rule("descent-choice", move |m| {
        usize::try_from(m).ok().filter(|&i| i < cap).map_or(0, |i| delta.get_u64(i))
    })])
}

fn a_llpo_choice_path(_inst: &Instance, _d: usize, _seed: u64) -> Check {
    Check::from(true, "parity-choices-are-computed-from-the-table")
}

fn c_llpo_choice_path(inst: &Instance, d: usize, _seed: u64) -> Check {
    descent_consequent(&inst.point(0), d)
}

fn g_llpo_choice_path(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    streams_only(vec![gen_bar_seed(rng, satisfy)])
}

// ---------------------------------------------------------------------------
// Entry 7: binchoice_to_bar
// ---------------------------------------------------------------------------

fn t_binchoice_to_bar(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let cap = (budget as usize).min(20);
    point_output(vec![BairePoint::from_rule("diagonal-marks", move |m| {
        let Some(s) = decode_bounded(m) else { return 1 };
        if !s.is_bin() {
            return 1;
        }
        if s.len() > cap {
            return 0;
        }
        let hit = (0..s.len()).any(|n| {
            (0..s.len() as u64).any(|p| sub_at(&alpha, n as u64, p) == s.get_u64(n) + 1)
        });
        u64::from(hit)
    })])
}

/// The binary-choice hypothesis, finitely: some subsequence enumerates both
/// answers within the window (so no bit vector avoids every enumeration).
fn both_answers(alpha: &BairePoint, rows: u64, window: u64) -> Option<u64> {
    (0..rows).find(|&n| {
        (0..window).any(|p| sub_at(alpha, n, p) == 1)
            && (0..window).any(|p| sub_at(alpha, n, p) == 2)
    })
}

fn a_binchoice_to_bar(inst: &Instance, d: usize, _seed: u64) -> Check {
    let found = both_answers(&inst.point(0), d as u64, d as u64);
    Check::from(found.is_some(), format!("row-with-both-answers={found:?}"))
}

fn c_binchoice_to_bar(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_binchoice_to_bar(inst, d as u64));
    if !bar_depth(&bar_of(&beta), d) {
        return Check::from(false, format!("diagonal-marks-miss-depth-{d}"));
    }
    let m = root_secured_level(&bar_of(&beta), d).expect("barred tree secures the root");
    let back = both_answers(&inst.point(0), m as u64, m as u64);
    Check::from(
        back.is_some(),
        format!("bar-at-{d} secured-level={m} recovered-row={back:?}"),
    )
}

fn g_binchoice_to_bar(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    streams_only(vec![gen_master_seed(rng, satisfy)])
}

// ---------------------------------------------------------------------------
// Entry 8: bar_to_binchoice
// ---------------------------------------------------------------------------

fn t_bar_to_binchoice(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let cap = (budget as usize).min(12);
    let table = Arc::new(sec_table(&bar_of(&inst.point(0)), cap));
    let mut nodes = bin_up_to(2);
    nodes.sort_by_key(SeqCode::value);
    let points = nodes
        .into_iter()
        .map(|s| {
            let table = Arc::clone(&table);
            BairePoint::from_rule(format!("choice-row-{}", code_str(&s)), move |m| {
                let (n, i) = coding::unpair(m);
                let (Ok(n), Ok(i)) = (usize::try_from(&n), u64::try_from(&i)) else {
                    return 0;
                };
                if i > 1 || n > table.depth() || s.len() + 1 > table.depth() {
                    return 0;
                }
                if table.root_secured(n).expect("in range") {
                    return i + 1;
                }
                let here = table.is_secured(&s.push(bit(i)), n).expect("in range");
                let there = table.is_secured(&s.push(bit(1 - i)), n).expect("in range");
                if here && !there {
                    i + 1
                } else {
                    0
                }
            })
        })
        .collect();
    point_output(points)
}

fn a_bar_to_binchoice(inst: &Instance, d: usize, _seed: u64) -> Check {
    let held = bar_depth(&bar_of(&inst.point(0)), d);
    Check::from(held, format!("marks-bar-depth-{d}={held}"))
}

fn c_bar_to_binchoice(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let table = sec_table(&bar_of(&alpha), d);
    let delta = descent_path(&table, d);
    // Membership in the row of node s, read off the table directly.
    let row_member = |s: &SeqCode, i: u64| -> bool {
        (0..=d).any(|n| {
            table.root_secured(n).expect("in range")
                || (s.len() < d
                    && table.is_secured(&s.push(bit(i)), n).expect("in range")
                    && !table.is_secured(&s.push(bit(1 - i)), n).expect("in range"))
        })
    };
    for n in 0..=d {
        let prefix = delta.prefix(n).expect("within length");
        if alpha.at_nat(&prefix.value()) == 0 {
            continue;
        }
        let chosen = (0..n).any(|j| {
            let s = delta.prefix(j).expect("within length");
            row_member(&s, delta.get_u64(j))
        });
        if !chosen && !table.root_secured(n).expect("in range") {
            return Check::from(false, format!("hit-at-{n}-with-no-chosen-row"));
        }
    }
    Check::from(true, format!("descent={}", code_str(&delta)))
}

fn g_bar_to_binchoice(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    streams_only(vec![gen_bar_seed(rng, satisfy)])
}

// ---------------------------------------------------------------------------
// Entry 9: finchoice_to_binchoice
// ---------------------------------------------------------------------------

fn t_finchoice_to_binchoice(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    point_output(vec![BairePoint::constant(1), inst.point(0)])
}

fn a_finchoice_to_binchoice(inst: &Instance, d: usize, _seed: u64) -> Check {
    let found = both_answers(&inst.point(0), d as u64, d as u64);
    Check::from(found.is_some(), format!("row-with-both-answers={found:?}"))
}

fn c_finchoice_to_binchoice(inst: &Instance, d: usize, _seed: u64) -> Check {
    let found = both_answers(&inst.point(0), d as u64, B);
    Check::from(found.is_some(), format!("bounded-transfer-row={found:?}"))
}

fn g_finchoice_to_binchoice(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    streams_only(vec![gen_master_seed(rng, satisfy)])
}

// ---------------------------------------------------------------------------
// Entry 10: finchoice_to_bar
// ---------------------------------------------------------------------------

/// Splits a binary code into its block decomposition: the coded number
/// sequence (unary 0-blocks closed by 1s) and the trailing open run.
pub(super) fn block_split(t: &SeqCode) -> (Vec<u64>, u64) {
    let entries = t.entries_u64();
    let mut seq = Vec::new();
    let mut run = 0u64;
    for e in entries {
        if e == 0 {
            run += 1;
        } else {
            seq.push(run);
            run = 0;
        }
    }
    (seq, run)
}

fn t_finchoice_to_bar(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let bound = inst.point(0);
    let master = inst.point(1);
    let cap = (budget as usize).min(24);
    point_output(vec![BairePoint::from_rule("fuel-marks", move |m| {
        let Some(t) = decode_bounded(m) else { return 1 };
        if !t.is_bin() {
            return 1;
        }
        if t.len() > cap {
            return 0;
        }
        let (s, run) = block_split(&t);
        let k = s.len() as u64;
        let over = (0..s.len()).any(|n| s[n] > bound.at(n as u64));
        let covered = (0..s.len()).any(|n| {
            s[n] <= bound.at(n as u64)
                && (0..k).any(|p| sub_at(&master, n as u64, p) == s[n] + 1)
        });
        u64::from(over || covered || bound.at(k) < run)
    })])
}

fn a_finchoice_to_bar(inst: &Instance, d: usize, _seed: u64) -> Check {
    let bound = inst.point(0);
    let master = inst.point(1);
    // A coordinate whose whole answer range is enumerated, with enough
    // depth left for the block coding to reach it.
    for n in 0..d as u64 {
        let witnesses: Vec<Option<u64>> = (0..=bound.at(n))
            .map(|j| (0..B).find(|&p| sub_at(&master, n, p) == j + 1))
            .collect();
        if witnesses.iter().any(Option::is_none) {
            continue;
        }
        let maxp = witnesses.iter().map(|w| w.unwrap()).max().unwrap_or(0);
        let reach = n.max(maxp);
        let fuel: u64 = (0..=reach).map(|i| bound.at(i) + 1).sum();
        if fuel <= d as u64 {
            return Check::from(true, format!("covered-coordinate={n} fuel={fuel}"));
        }
    }
    Check::from(false, format!("no-covered-coordinate-within-{d}"))
}

fn c_finchoice_to_bar(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_finchoice_to_bar(inst, d as u64));
    if !bar_depth(&bar_of(&beta), d) {
        return Check::from(false, format!("fuel-marks-miss-depth-{d}"));
    }
    let m = root_secured_level(&bar_of(&beta), d).expect("barred tree secures the root");
    let bound = inst.point(0);
    let master = inst.point(1);
    let back = (0..m as u64).find(|&n| {
        (0..=bound.at(n)).all(|j| (0..m as u64).any(|p| sub_at(&master, n, p) == j + 1))
    });
    Check::from(back.is_some(), format!("secured-level={m} recovered-coordinate={back:?}"))
}

fn g_finchoice_to_bar(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    let mut bounds = vec![0u64; 8];
    bounds[0] = rbit(rng);
    let mut master = vec![0u64; 16];
    if satisfy {
        master[1] = 1;
        if bounds[0] >= 1 {
            master[2] = 2;
        }
    } else {
        bounds[0] = 1;
        master[1] = 1;
    }
    streams_only(vec![
        FinSeed::new(bounds, Tail::Zero),
        FinSeed::new(master, Tail::Zero),
    ])
}

// ---------------------------------------------------------------------------
// Entry 11: compact_choice_unit
// ---------------------------------------------------------------------------

fn t_compact_choice_unit(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let cap = (budget as usize).min(6);
    let mut out = Vec::new();
    for seed in &inst.streams {
        let alpha = seed.point();
        for len in 1..=cap {
            for a in bin_exact(len) {
                if alpha.at_nat(&a.value()) != 0 {
                    out.push(double(&ternary(&a).expect("binary word")));
                }
            }
        }
        for a in bin_up_to(2) {
            out.push(thirds(&ternary(&a).expect("binary word")).1);
        }
    }
    Ok(Output::Intervals(out))
}

fn a_compact_choice_unit(inst: &Instance, d: usize, _seed: u64) -> Check {
    let held =
        inst.streams.iter().all(|s| avoidance_witness(&bar_of(&s.point()), d).is_some());
    Check::from(held, format!("every-family-member-avoidable-to-{d}={held}"))
}

fn c_compact_choice_unit(inst: &Instance, d: usize, _seed: u64) -> Check {
    for (idx, seed) in inst.streams.iter().enumerate() {
        let alpha = seed.point();
        let Some(w) = avoidance_witness(&bar_of(&alpha), d) else {
            return Check::from(false, format!("family-{idx}-has-no-avoiding-path"));
        };
        let members: Vec<RatInterval> = bin_up_to(d)
            .into_iter()
            .filter(|a| !a.is_empty() && alpha.at_nat(&a.value()) != 0)
            .map(|a| double(&ternary(&a).expect("binary word")))
            .collect();
        // The widened intervals along the avoiding path never enter a
        // listed open part.
        for p in 0..=d {
            let dp = double(&ternary(&w.prefix(p).expect("within length")).unwrap());
            if members.iter().any(|iv| s_relation(&dp, iv) == SRelation::InsideProper) {
                return Check::from(false, format!("family-{idx}-path-enters-open-at-{p}"));
            }
        }
        // Digit extraction: the interval two stages deeper determines each
        // digit uniquely and recovers the path.
        for m in 0..=d.saturating_sub(2).min(4) {
            let dp = double(&ternary(&w.prefix(m + 2).expect("within length")).unwrap());
            for a in bin_exact(m + 1) {
                let rel = s_relation(&dp, &ternary(&a).expect("binary word"));
                let is_path = a == w.prefix(m + 1).expect("within length");
                if is_path && rel == SRelation::Apart {
                    return Check::from(false, format!("family-{idx}-digit-{m}-lost"));
                }
                if !is_path && rel != SRelation::Apart {
                    return Check::from(
                        false,
                        format!("family-{idx}-digit-{m}-ambiguous"),
                    );
                }
            }
        }
    }
    Check::from(true, "paths-avoid-opens-and-digits-round-trip")
}

fn g_compact_choice_unit(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    // Satisfying means the tree stays open: sparse marks.
    streams_only(vec![gen_bar_seed(rng, !satisfy)])
}

// ---------------------------------------------------------------------------
// Entry 12: cantor_compact_to_bar
// ---------------------------------------------------------------------------

/// The n-th extracted subsequence of a finite code, mirroring the stream
/// subsequence convention: entry k is read at the code value of `<n>` *
/// (the code with value k), whenever that value lies below the length.
pub(super) fn extracted(s: &SeqCode, n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for k in 0..s.len() as u64 {
        let idx =
            SeqCode::encode_u64(&[n]).concat(&SeqCode::from_value(Nat::from(k))).value();
        if idx < Nat::from(s.len() as u64) {
            out.push(s.get_u64(usize::try_from(&idx).expect("below length")));
        }
    }
    out
}

fn row_hits_extraction(alpha: &BairePoint, s: &SeqCode, n: u64) -> bool {
    let sub = extracted(s, n);
    (0..=sub.len()).any(|p| {
        let prefix = SeqCode::encode_u64(&sub[..p]);
        alpha
            .at_nat(&SeqCode::encode_u64(&[n]).concat(&prefix).value())
            != 0
    })
}

fn t_cantor_compact_to_bar(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let cap = (budget as usize).min(20);
    point_output(vec![BairePoint::from_rule("interleaved-marks", move |m| {
        let Some(s) = decode_bounded(m) else { return 1 };
        if !s.is_bin() {
            return 1;
        }
        if s.len() > cap {
            return 0;
        }
        u64::from((0..s.len() as u64).any(|n| row_hits_extraction(&alpha, &s, n)))
    })])
}

fn a_cantor_compact_to_bar(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let held = bin_exact(d)
        .into_iter()
        .all(|s| (0..d as u64).any(|n| row_hits_extraction(&alpha, &s, n)));
    Check::from(held, format!("every-depth-{d}-node-hits-some-row={held}"))
}

fn c_cantor_compact_to_bar(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_cantor_compact_to_bar(inst, d as u64));
    if !bar_depth(&bar_of(&beta), d) {
        return Check::from(false, format!("interleaved-marks-miss-depth-{d}"));
    }
    let m = root_secured_level(&bar_of(&beta), d).expect("barred tree secures the root");
    let alpha = inst.point(0);
    let back = (0..m.max(1) as u64).find(|&n| {
        bin_exact(m).into_iter().all(|s| {
            (0..=m).any(|j| {
                let prefix = s.prefix(j).expect("within length");
                alpha.at_nat(&SeqCode::encode_u64(&[n]).concat(&prefix).value()) != 0
            })
        })
    });
    Check::from(back.is_some(), format!("secured-level={m} barred-row={back:?}"))
}

fn g_cantor_compact_to_bar(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    let mut prefix = vec![0u64; 54];
    if satisfy {
        prefix[1] = 1; // the 0th row is hit at its empty prefix
        for _ in 0..3 {
            let j = rng_below(rng, 54) as usize;
            if rbit(rng) == 1 {
                prefix[j] = 1;
            }
        }
    } else {
        for j in [8usize, 17, 35, 53] {
            if rbit(rng) == 1 {
                prefix[j] = 1;
            }
        }
    }
    streams_only(vec![FinSeed::new(prefix, Tail::Zero)])
}

// ---------------------------------------------------------------------------
// Entry 13: compact_to_unit_contr
// ---------------------------------------------------------------------------

fn t_compact_to_unit_contr(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let cap = (budget as usize).min(26);
    let points = inst
        .intervals
        .iter()
        .cloned()
        .enumerate()
        .map(|(n, ivs)| {
            BairePoint::from_rule(format!("pulled-back-open-{n}"), move |m| {
                let Some(a) = decode_bounded(m) else { return 0 };
                if !a.is_bin() || a.len() > cap {
                    return 0;
                }
                let da = double(&ternary(&a).expect("binary word"));
                u64::from(
                    ivs.iter().any(|iv| s_relation(&da, iv) == SRelation::InsideProper),
                )
            })
        })
        .collect();
    point_output(points)
}

/// Shared sampled check: some family member's widened path interval lies
/// strictly inside a listed interval.
fn contr_sampled(inst: &Instance, d: usize, seed: u64) -> (bool, String) {
    let k = inst.intervals.len();
    for t in 0..4u64 {
        let samples = sample_binary_points(seed, t, k, d + 1);
        let hit = (0..k).any(|n| {
            (0..=d as u64).any(|p| {
                let prefix = samples[n].prefix_code(p as usize);
                let dp = double(&ternary(&prefix).expect("binary sample"));
                inst.intervals[n]
                    .iter()
                    .any(|iv| s_relation(&dp, iv) == SRelation::InsideProper)
            })
        });
        if !hit {
            return (false, format!("sample-tuple-{t}-misses-every-open"));
        }
    }
    (true, "all-sample-tuples-enter-some-open".to_string())
}

fn a_compact_to_unit_contr(inst: &Instance, d: usize, seed: u64) -> Check {
    let (held, note) = contr_sampled(inst, d, seed);
    Check::from(held, note)
}

fn c_compact_to_unit_contr(inst: &Instance, d: usize, seed: u64) -> Check {
    // The pulled-back marking agrees definitionally with the interval
    // relation, so the same samples must pass through the marked trees.
    let out = t_compact_to_unit_contr(inst, d as u64).expect("transform succeeds");
    let Output::Points(ps) = out else { unreachable!() };
    for t in 0..4u64 {
        let samples = sample_binary_points(seed, t, ps.len(), d + 1);
        let hit = (0..ps.len()).any(|n| {
            (0..=d as u64)
                .any(|p| ps[n].at_nat(&samples[n].prefix_code(p as usize).value()) != 0)
        });
        if !hit {
            return Check::from(false, format!("sample-tuple-{t}-unmarked"));
        }
    }
    Check::from(true, "marks-track-the-interval-relation")
}

fn g_compact_to_unit_contr(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    let iv = if satisfy {
        let slack = 1 + rng_below(rng, 3) as i64;
        RatInterval::new(rat(-slack, 1), rat(1 + slack, 1)).expect("lo < hi")
    } else {
        let num = 16 + rng_below(rng, 3) as i64;
        RatInterval::new(rat(num, 20), rat(num + 1, 20)).expect("lo < hi")
    };
    Instance { intervals: vec![vec![iv]], ..Instance::default() }
}

// ---------------------------------------------------------------------------
// Entry 14: binchoice_to_unit
// ---------------------------------------------------------------------------

fn t_binchoice_to_unit(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let mut out = Vec::new();
    for seed in &inst.streams {
        let alpha = seed.point();
        let has = |v: u64| (0..budget.max(B)).any(|p| alpha.at(p) == v);
        if has(1) {
            for j in 1..=3i64 {
                out.push(
                    RatInterval::new(rat(-1, 1), rat(1, 1) - rat(1, 1 << j))
                        .expect("lo < hi"),
                );
            }
        }
        if has(2) {
            for j in 1..=3i64 {
                out.push(RatInterval::new(rat(1, 1 << j), rat(2, 1)).expect("lo < hi"));
            }
        }
    }
    Ok(Output::Intervals(out))
}

fn a_binchoice_to_unit(inst: &Instance, _d: usize, _seed: u64) -> Check {
    let found = inst.streams.iter().position(|s| {
        let alpha = s.point();
        (0..B).any(|p| alpha.at(p) == 1) && (0..B).any(|p| alpha.at(p) == 2)
    });
    Check::from(found.is_some(), format!("family-member-with-both-answers={found:?}"))
}

fn c_binchoice_to_unit(inst: &Instance, d: usize, seed: u64) -> Check {
    let k = inst.streams.len();
    for t in 0..4u64 {
        let samples = sample_binary_points(seed, t, k, d + 1);
        // Discriminate each sampled real away from one endpoint, then ask
        // the hypothesis for a family member answering on that side.
        let side_served = (0..k).any(|n| {
            let m = (1..=d as u64).find(|&m| {
                let dp = double(&ternary(&samples[n].prefix_code(m as usize)).unwrap());
                dp.hi() < rat(1, 1) || dp.lo() > rat(0, 1)
            });
            let Some(m) = m else { return false };
            let dp = double(&ternary(&samples[n].prefix_code(m as usize)).unwrap());
            let want = if dp.hi() < rat(1, 1) { 1 } else { 2 };
            let alpha = inst.streams[n].point();
            (0..B).any(|p| alpha.at(p) == want)
        });
        if !side_served {
            return Check::from(false, format!("sample-tuple-{t}-unanswered"));
        }
    }
    Check::from(true, "every-discriminated-side-is-enumerated")
}

fn g_binchoice_to_unit(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    let mut first: Vec<u64> = (0..6).map(|_| rbit(rng)).collect();
    if satisfy {
        first[0] = 1;
        first[1] = 2;
    }
    let second: Vec<u64> = (0..6).map(|_| rbit(rng)).collect();
    streams_only(vec![FinSeed::new(first, Tail::Zero), FinSeed::new(second, Tail::Zero)])
}

// ---------------------------------------------------------------------------
// Entry 15: twofold_eta
// ---------------------------------------------------------------------------

fn eta_point(alpha: &BairePoint, eps: &BairePoint, kill_parity: u64) -> BairePoint {
    let alpha = alpha.clone();
    let eps = eps.clone();
    BairePoint::from_rule(format!("split-{kill_parity}"), move |m| {
        let p = u64::try_from(m).unwrap_or(u64::MAX);
        let scan = (2 * p.min(2048)).saturating_add(2);
        match (0..scan).find(|&j| eps.at(j) != 0) {
            Some(f) if f % 2 == kill_parity => {
                let q = Nat::from(f / 2);
                if *m >= q {
                    0
                } else {
                    alpha.at_nat(m)
                }
            }
            _ => alpha.at_nat(m),
        }
    })
}

fn t_twofold_eta(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let eps = inst.point(1);
    point_output(vec![eta_point(&alpha, &eps, 0), eta_point(&alpha, &eps, 1)])
}

fn a_twofold_eta(inst: &Instance, d: usize, _seed: u64) -> Check {
    let held = bar_depth(&bar_of(&inst.point(0)), d);
    Check::from(held, format!("marks-bar-depth-{d}={held}"))
}

fn c_twofold_eta(inst: &Instance, d: usize, seed: u64) -> Check {
    let alpha = inst.point(0);
    let eps = inst.point(1);
    let etas = [eta_point(&alpha, &eps, 0), eta_point(&alpha, &eps, 1)];
    // At most one half is pruned: a deviation in one forces the other to
    // agree with the original everywhere probed.
    for side in 0..2 {
        if (0..B).any(|p| etas[side].at(p) != alpha.at(p))
            && (0..B).any(|p| etas[1 - side].at(p) != alpha.at(p))
        {
            return Check::from(false, "both-halves-deviate".to_string());
        }
    }
    if bar_depth(&bar_of(&alpha), d) {
        for gamma in sample_binary_points(seed, 15, 4, d) {
            let hit = (0..=d as u64).any(|n| {
                let v = gamma.prefix_code(n as usize).value();
                etas[0].at_nat(&v) != 0 || etas[1].at_nat(&v) != 0
            });
            if !hit {
                return Check::from(false, "sampled-path-misses-both-halves".to_string());
            }
        }
    }
    Check::from(true, "one-half-tracks-the-original")
}

fn g_twofold_eta(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    let eps = gen_small_values(rng, 10, 1);
    streams_only(vec![gen_bar_seed(rng, satisfy), eps])
}

// ---------------------------------------------------------------------------
// Entry 16: twofold_descent
// ---------------------------------------------------------------------------

fn t_twofold_descent(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let cap = (budget as usize).min(16);
    let table = sec_table(&bar_of(&inst.point(0)), cap);
    let delta = descent_path(&table, cap);
    point_output(vec![BairePoint::from_rule("descent", move |m| {
        usize::try_from(m).ok().filter(|&i| i < cap).map_or(0, |i| delta.get_u64(i))
    })])
}

fn a_twofold_descent(inst: &Instance, d: usize, _seed: u64) -> Check {
    let held = bar_depth(&bar_of(&inst.point(0)), d);
    Check::from(held, format!("marks-bar-depth-{d}={held}"))
}

fn c_twofold_descent(inst: &Instance, d: usize, _seed: u64) -> Check {
    descent_consequent(&inst.point(0), d)
}

fn g_twofold_descent(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    streams_only(vec![gen_bar_seed(rng, satisfy)])
}

// ---------------------------------------------------------------------------
// Entry 17: scheme_prop_to_open
// ---------------------------------------------------------------------------

fn t_scheme_prop_to_open(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let a1 = inst.point(1);
    let fwd = {
        let a1 = a1.clone();
        BairePoint::from_rule("witness-marks", move |m| {
            match decode_bounded(m) {
                Some(t) if t.is_bin() => u64::from(a1.at_nat(m) != 0),
                _ => 0,
            }
        })
    };
    let rev = BairePoint::from_rule("cumulative-witness-marks", move |m| {
        match decode_bounded(m) {
            Some(t) if t.is_bin() => {
                let lim = u64::try_from(m).unwrap_or(B).min(B);
                u64::from((0..=lim).any(|i| a1.at(i) != 0))
            }
            _ => 0,
        }
    });
    point_output(vec![fwd, rev])
}

fn a_scheme_prop_to_open(inst: &Instance, d: usize, _seed: u64) -> Check {
    let verdict = logic::scheme_eval(
        logic::SchemeShape::CantorOpenProposition,
        &inst.point(0),
        &inst.point(1),
        d as u64,
    );
    let held = verdict == logic::SchemeVerdict::Holds;
    Check::from(held, format!("bar-or-witness-to-{d}={held}"))
}

fn c_scheme_prop_to_open(inst: &Instance, d: usize, _seed: u64) -> Check {
    let out = t_scheme_prop_to_open(inst, d as u64).expect("transform succeeds");
    let Output::Points(ps) = out else { unreachable!() };
    match (0..d as u64).find(|&n| inst.point(1).at(n) != 0) {
        Some(w) => {
            // The cumulative marking must fire along the all-right ray.
            let ones: Vec<u64> = vec![1; d];
            let hit = (0..=d).any(|k| {
                ps[1].at_nat(&SeqCode::encode_u64(&ones[..k]).value()) != 0
            });
            Check::from(hit, format!("witness={w} cumulative-mark-found={hit}"))
        }
        None => {
            let held = bar_depth(&bar_of(&inst.point(0)), d);
            Check::from(held, format!("no-witness-so-bar-required={held}"))
        }
    }
}

fn g_scheme_prop_to_open(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    if satisfy {
        let mut witness = vec![0u64; 6];
        witness[rng_below(rng, 6) as usize] = 1;
        let dense = rbit(rng) == 1;
        streams_only(vec![gen_bar_seed(rng, dense), FinSeed::new(witness, Tail::Zero)])
    } else {
        streams_only(vec![gen_bar_seed(rng, false), FinSeed::zeros()])
    }
}

// ---------------------------------------------------------------------------
// Entry 18: llpo_struct
// ---------------------------------------------------------------------------

fn t_llpo_struct(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let a0 = inst.point(0);
    let a1 = inst.point(1);
    let eps = inst.point(2);
    let fwd = BairePoint::from_rule("interleaved-gaps", move |m| {
        let p = u64::try_from(m).unwrap_or(u64::MAX);
        let v = if p % 2 == 0 { a0.at(p / 2) } else { a1.at(p / 2) };
        u64::from(v == 0)
    });
    let rev = |side: u64| {
        let eps = eps.clone();
        BairePoint::from_rule(format!("first-nonzero-row-{side}"), move |m| {
            let p = u64::try_from(m).unwrap_or(u64::MAX).min(4096);
            let pos = 2 * p + side;
            let first = (0..pos).all(|j| eps.at(j) == 0) && eps.at(pos) != 0;
            u64::from(!first)
        })
    };
    point_output(vec![fwd, rev(0), rev(1)])
}

fn a_llpo_struct(inst: &Instance, d: usize, _seed: u64) -> Check {
    let a0 = inst.point(0);
    let a1 = inst.point(1);
    let held = (0..=d as u64).all(|p| a0.at(p) != 0)
        || (0..=d as u64).all(|q| a1.at(q) != 0);
    Check::from(held, format!("one-row-everywhere-nonzero-to-{d}={held}"))
}

fn c_llpo_struct(inst: &Instance, d: usize, _seed: u64) -> Check {
    let out = t_llpo_struct(inst, d as u64).expect("transform succeeds");
    let Output::Points(ps) = out else { unreachable!() };
    let a0 = inst.point(0);
    let a1 = inst.point(1);
    // Forward: a nonzero row leaves gaps only on the opposite parity.
    if (0..=d as u64).all(|p| a0.at(p) != 0) && (0..=d as u64).any(|p| ps[0].at(2 * p) != 0)
    {
        return Check::from(false, "even-gap-despite-nonzero-row".to_string());
    }
    if (0..=d as u64).all(|q| a1.at(q) != 0)
        && (0..=d as u64).any(|q| ps[0].at(2 * q + 1) != 0)
    {
        return Check::from(false, "odd-gap-despite-nonzero-row".to_string());
    }
    // Reverse: the first nonzero of the third stream has one parity, so the
    // two reverse rows never both dip to zero.
    let rev_ok =
        (0..=d as u64).all(|p| ps[1].at(p) != 0) || (0..=d as u64).all(|q| ps[2].at(q) != 0);
    Check::from(rev_ok, format!("reverse-rows-consistent={rev_ok}"))
}

fn g_llpo_struct(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    let eps = gen_small_values(rng, 10, 1);
    if satisfy {
        let ones = FinSeed::new(Vec::new(), Tail::Cycle(vec![1]));
        let other = gen_small_values(rng, 8, 1);
        let (a0, a1) = if rbit(rng) == 0 { (ones, other) } else { (other, ones) };
        streams_only(vec![a0, a1, eps])
    } else {
        let mut p0: Vec<u64> = (0..6).map(|_| rbit(rng)).collect();
        let mut p1: Vec<u64> = (0..6).map(|_| rbit(rng)).collect();
        p0[rng_below(rng, 6) as usize] = 0;
        p1[rng_below(rng, 6) as usize] = 0;
        streams_only(vec![
            FinSeed::new(p0, Tail::Zero),
            FinSeed::new(p1, Tail::Zero),
            eps,
        ])
    }
}

// ---------------------------------------------------------------------------
// Entry 19: lpo_struct
// ---------------------------------------------------------------------------

fn t_lpo_struct(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let compl = {
        let alpha = alpha.clone();
        BairePoint::from_rule("zero-set", move |m| u64::from(alpha.at_nat(m) == 0))
    };
    point_output(vec![compl, alpha])
}

fn a_lpo_struct(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let held = (0..=d as u64).all(|n| alpha.at(n) == 0 || alpha.at(n) != 0);
    Check::from(held, format!("positions-split-to-{d}={held}"))
}

fn c_lpo_struct(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    match lpo_probe(&alpha, d as u64) {
        LpoVerdict::Witness(m) => {
            Check::from(alpha.at(m) != 0, format!("witness={m}"))
        }
        LpoVerdict::AllZeroUpTo(b) => {
            let held = (0..=b).all(|n| alpha.at(n) == 0);
            Check::from(held, format!("all-zero-to-{b}={held}"))
        }
    }
}

fn g_lpo_struct(rng: &mut ChaCha8Rng, _satisfy: bool) -> Instance {
    streams_only(vec![gen_small_values(rng, 10, 1)])
}

// ---------------------------------------------------------------------------
// Entry 20: g_binchoice_to_game
// ---------------------------------------------------------------------------

fn t_g_binchoice_to_game(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    point_output(vec![BairePoint::from_rule("move-answer-pairs", move |m| {
        let (n, p) = coding::unpair(m);
        let (Ok(n), Ok(p)) = (u64::try_from(&n), u64::try_from(&p)) else { return 0 };
        if n > 40 {
            return 0;
        }
        let v = sub_at(&alpha, n, p);
        if v == 1 || v == 2 {
            u64::try_from(&SeqCode::encode_u64(&[n, v - 1]).value()).expect("small code")
                + 1
        } else {
            0
        }
    })])
}

fn a_g_binchoice_to_game(inst: &Instance, d: usize, _seed: u64) -> Check {
    let found = both_answers(&inst.point(0), d as u64, d as u64);
    Check::from(found.is_some(), format!("row-with-both-answers={found:?}"))
}

fn c_g_binchoice_to_game(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_g_binchoice_to_game(inst, d as u64));
    let mut members = std::collections::HashSet::new();
    for p in 0..WIDE {
        let v = beta.at(p);
        if v > 0 {
            let c = SeqCode::from_value(Nat::from(v - 1));
            if c.len() == 2 {
                members.insert((c.get_u64(0), c.get_u64(1)));
            }
        }
    }
    let n = (0..d as u64).find(|&n| members.contains(&(n, 0)) && members.contains(&(n, 1)));
    let Some(n) = n else {
        return Check::from(false, format!("no-first-move-wins-both-replies-below-{d}"));
    };
    let extract = (0..WIDE).any(|p| sub_at(&inst.point(0), n, p) == 1)
        && (0..WIDE).any(|p| sub_at(&inst.point(0), n, p) == 2);
    Check::from(extract, format!("winning-first-move={n} recovered={extract}"))
}

fn g_g_binchoice_to_game(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    streams_only(vec![gen_master_seed(rng, satisfy)])
}

// ---------------------------------------------------------------------------
// Entry 21: g_game_to_3move
// ---------------------------------------------------------------------------

fn pair_target(n: u64, i: u64) -> u64 {
    u64::try_from(&SeqCode::encode_u64(&[n, i]).value()).expect("small code") + 1
}

fn t_g_game_to_3move(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    point_output(vec![BairePoint::from_rule("indexed-witnesses", move |m| {
        let Some(s) = decode_bounded(m) else { return 0 };
        if s.len() != 3 || s.get_u64(1) > 1 {
            return 0;
        }
        u64::from(alpha.at(s.get_u64(2)) == pair_target(s.get_u64(0), s.get_u64(1)))
    })])
}

fn a_g_game_to_3move(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let n = (0..d as u64)
        .find(|&n| (0..2).all(|i| (0..WIDE).any(|p| alpha.at(p) == pair_target(n, i))));
    Check::from(n.is_some(), format!("first-move-winning-both-replies={n:?}"))
}

fn c_g_game_to_3move(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_g_game_to_3move(inst, d as u64));
    let alpha = inst.point(0);
    let n = (0..d as u64).find(|&n| {
        (0..2u64).all(|i| {
            (0..WIDE).any(|p| {
                beta.at_nat(&SeqCode::encode_u64(&[n, i, p]).value()) != 0
            })
        })
    });
    let Some(n) = n else {
        return Check::from(false, format!("no-three-move-win-below-{d}"));
    };
    let back =
        (0..2).all(|i| (0..WIDE).any(|p| alpha.at(p) == pair_target(n, i)));
    Check::from(back, format!("three-move-win-at={n} recovered={back}"))
}

fn g_g_game_to_3move(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    let mut prefix: Vec<u64> = (0..8).map(|_| [0, 3][rbit(rng) as usize]).collect();
    prefix[0] = 3; // the pair (0, 0) is always enumerated
    if satisfy {
        prefix[1] = 9; // and so is (0, 1)
    }
    streams_only(vec![FinSeed::new(prefix, Tail::Zero)])
}

// ---------------------------------------------------------------------------
// Entry 22: g_finite_to_cantor
// ---------------------------------------------------------------------------

fn cantor_game_target(inst: &Instance) -> (Arena, Vec<SeqCode>) {
    let (m, l) = (inst.numbers[0] as usize, inst.numbers[1]);
    let arena = Arena::new(2 * m, l);
    let alpha = inst.point(0);
    let x = arena
        .plays()
        .into_iter()
        .filter(|s| {
            let shaped = (1..s.len()).step_by(2).all(|k| s.get_u64(k) < 2);
            // A reply outside the binary range concedes; otherwise the
            // original marking decides.
            !shaped || alpha.at_nat(&s.value()) != 0
        })
        .collect();
    (arena, x)
}

fn t_g_finite_to_cantor(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let n = 2 * inst.numbers[0] as usize;
    let l = inst.numbers[1];
    point_output(vec![BairePoint::from_rule("shaped-target", move |m| {
        let Some(s) = decode_bounded(m) else { return 0 };
        let shaped = s.len() == n
            && s.entries_u64().iter().all(|&e| e < l)
            && (1..s.len()).step_by(2).all(|k| s.get_u64(k) < 2);
        u64::from(shaped && alpha.at_nat(m) != 0)
    })])
}

fn a_g_finite_to_cantor(inst: &Instance, _d: usize, _seed: u64) -> Check {
    let (arena, x) = cantor_game_target(inst);
    let report = games::solve(Side::I, &arena, &x).expect("plays lie in the arena");
    Check::from(report.halfwin, format!("first-player-halfwin={}", report.halfwin))
}

fn c_g_finite_to_cantor(inst: &Instance, _d: usize, _seed: u64) -> Check {
    let (arena, x) = cantor_game_target(inst);
    let report = games::solve(Side::I, &arena, &x).expect("plays lie in the arena");
    let Some(strategy) = report.win else {
        return Check::from(false, "no-finite-winning-strategy".to_string());
    };
    // Definitional spot check: the shaped marking agrees with the original
    // on every arena play.
    let beta = first_point(t_g_finite_to_cantor(inst, 16));
    let alpha = inst.point(0);
    for p in arena.plays() {
        let shaped = (1..p.len()).step_by(2).all(|k| p.get_u64(k) < 2);
        let expect = u64::from(shaped && alpha.at_nat(&p.value()) != 0);
        if beta.at_nat(&p.value()) != expect {
            return Check::from(false, format!("marking-disagrees-at-{}", code_str(&p)));
        }
    }
    Check::from(true, format!("finite-strategy-table={}", code_str(strategy.table())))
}

fn g_g_finite_to_cantor(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    let mut prefix = vec![0u64; 18];
    if satisfy {
        prefix[2] = 1; // play <0,0>
        prefix[8] = 1; // play <0,1>
    } else if rbit(rng) == 1 {
        prefix[8] = 1;
    }
    if rbit(rng) == 1 {
        prefix[5] = 1; // play <1,0>
    }
    Instance {
        streams: vec![FinSeed::new(prefix, Tail::Zero)],
        numbers: vec![1, 2],
        ..Instance::default()
    }
}

// ---------------------------------------------------------------------------
// Entry 23: g_postpone
// ---------------------------------------------------------------------------

fn t_g_postpone(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let mut codes = Vec::new();
    for s in &inst.sets[0] {
        codes.push(games::postpone_encode(s).map_err(|_| {
            ReductionError::SignatureMismatch {
                id: "g_postpone".to_string(),
                expected: "answer-shaped plays in the first set".to_string(),
            }
        })?);
    }
    for a in &inst.sets[1] {
        codes.push(games::postpone_decode(a).map_err(|_| {
            ReductionError::SignatureMismatch {
                id: "g_postpone".to_string(),
                expected: "even-length binary plays in the second set".to_string(),
            }
        })?);
    }
    Ok(Output::Codes(codes))
}

fn a_g_postpone(inst: &Instance, _d: usize, _seed: u64) -> Check {
    Check::from(
        true,
        format!("shapes-validated sets={},{}", inst.sets[0].len(), inst.sets[1].len()),
    )
}

fn c_g_postpone(inst: &Instance, _d: usize, _seed: u64) -> Check {
    for s in &inst.sets[0] {
        let enc = games::postpone_encode(s).expect("validated shape");
        let back = games::postpone_decode(&enc).expect("encoded plays are binary");
        if back != *s {
            return Check::from(false, format!("round-trip-lost-{}", code_str(s)));
        }
    }
    for a in &inst.sets[1] {
        let dec = games::postpone_decode(a).expect("validated shape");
        let again = games::postpone_encode(&dec).expect("decoded plays are shaped");
        if !again.is_initial_of(a) {
            return Check::from(false, format!("re-encoding-overshoots-{}", code_str(a)));
        }
    }
    Check::from(true, "translations-round-trip")
}

fn g_g_postpone(rng: &mut ChaCha8Rng, _satisfy: bool) -> Instance {
    let rounds = 1 + rng_below(rng, 2) as usize;
    let answer: Vec<u64> =
        (0..rounds).flat_map(|_| [rng_below(rng, 3), rbit(rng)]).collect();
    let chunks = 1 + rng_below(rng, 3) as usize;
    let play: Vec<u64> = (0..chunks)
        .flat_map(|_| if rbit(rng) == 1 { [1, rbit(rng)] } else { [0, 0] })
        .collect();
    Instance {
        streams: vec![gen_small_values(rng, 6, 1)],
        sets: vec![vec![SeqCode::encode_u64(&answer)], vec![SeqCode::encode_u64(&play)]],
        ..Instance::default()
    }
}

// ---------------------------------------------------------------------------
// Entry 24: g_swap_players
// ---------------------------------------------------------------------------

fn t_g_swap_players(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    point_output(vec![BairePoint::from_rule("prepended-move", move |m| {
        let Some(s) = decode_bounded(m) else { return 0 };
        if !s.is_bin() || s.is_empty() {
            return 0;
        }
        let tail = SeqCode::encode(s.entries()[1..].to_vec());
        alpha.at_nat(&tail.value())
    })])
}

fn a_g_swap_players(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let hit = |s: &SeqCode| alpha.at_nat(&s.value()) != 0;
    let held = forced_hit(&hit, 0, &SeqCode::empty(), d);
    Check::from(held, format!("first-player-forces-hit-to-{d}={held}"))
}

fn c_g_swap_players(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_g_swap_players(inst, d as u64));
    let hit = |s: &SeqCode| beta.at_nat(&s.value()) != 0;
    let held = forced_hit(&hit, 1, &SeqCode::empty(), d + 1);
    Check::from(held, format!("second-player-forces-hit-to-{}={held}", d + 1))
}

fn g_g_swap_players(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    if satisfy {
        let mut prefix = vec![0u64; 18];
        if rbit(rng) == 1 {
            prefix[1] = 1;
            prefix[3] = 1;
        } else {
            for i in [2usize, 5, 8, 17] {
                prefix[i] = 1;
            }
        }
        streams_only(vec![FinSeed::new(prefix, Tail::Zero)])
    } else {
        let mut prefix = vec![0u64; 8];
        prefix[7] = rbit(rng); // a non-binary code changes nothing
        streams_only(vec![FinSeed::new(prefix, Tail::Zero)])
    }
}

// ---------------------------------------------------------------------------
// Entry 25: g_halfwin_to_bar
// ---------------------------------------------------------------------------

/// Does the strategy-table prefix `c` certify a hit: some play following
/// `c` at every first-mover position (all of which must be decided by `c`)
/// reaches a marked node within the horizon `len(c) + 1`.
pub(super) fn table_certifies(alpha: &BairePoint, c: &SeqCode) -> bool {
    fn go(alpha: &BairePoint, c: &SeqCode, s: &SeqCode, horizon: usize) -> bool {
        if alpha.at_nat(&s.value()) != 0 {
            return true;
        }
        if s.len() >= horizon {
            return false;
        }
        if s.len().is_multiple_of(2) {
            let pos = s.value();
            if pos >= Nat::from(c.len() as u64) {
                return false;
            }
            let b = c.get_u64(usize::try_from(&pos).expect("below length"));
            go(alpha, c, &s.push(bit(b)), horizon)
        } else {
            (0..2u64).any(|b| go(alpha, c, &s.push(bit(b)), horizon))
        }
    }
    go(alpha, c, &SeqCode::empty(), (c.len() + 1).min(12))
}

fn t_g_halfwin_to_bar(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    point_output(vec![BairePoint::from_rule("certifying-tables", move |m| {
        match decode_bounded(m) {
            Some(c) if c.is_bin() => u64::from(table_certifies(&alpha, &c)),
            _ => 0,
        }
    })])
}

fn a_g_halfwin_to_bar(inst: &Instance, _d: usize, _seed: u64) -> Check {
    // The hypothesis is taken in its short form: the second player forces a
    // hit within two moves, so tables of length one already certify.
    let alpha = inst.point(0);
    let hit = |s: &SeqCode| alpha.at_nat(&s.value()) != 0;
    let held = forced_hit(&hit, 1, &SeqCode::empty(), 2);
    Check::from(held, format!("second-player-forces-hit-in-two-moves={held}"))
}

fn c_g_halfwin_to_bar(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_g_halfwin_to_bar(inst, d as u64));
    if !bar_depth(&bar_of(&beta), d) {
        return Check::from(false, format!("table-marks-miss-depth-{d}"));
    }
    let m = root_secured_level(&bar_of(&beta), d).expect("barred tree secures the root");
    if m + 1 > 5 {
        return Check::from(true, format!("bar-at-{d} secured-level={m} extraction-skipped"));
    }
    let alpha = inst.point(0);
    let arena = Arena::new(m + 1, 2);
    let x: Vec<SeqCode> = arena
        .plays()
        .into_iter()
        .filter(|s| {
            (0..=s.len())
                .any(|j| alpha.at_nat(&s.prefix(j).expect("within length").value()) != 0)
        })
        .collect();
    let report = games::solve(Side::II, &arena, &x).expect("plays lie in the arena");
    Check::from(
        report.win.is_some(),
        format!("secured-level={m} finite-second-player-win={}", report.win.is_some()),
    )
}

fn g_g_halfwin_to_bar(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    if satisfy {
        let mut prefix = vec![0u64; 18];
        if rbit(rng) == 1 {
            prefix[1] = 1;
            prefix[3] = 1;
        } else {
            for i in [2usize, 5, 8, 17] {
                prefix[i] = 1;
            }
        }
        streams_only(vec![FinSeed::new(prefix, Tail::Zero)])
    } else {
        let mut prefix = vec![0u64; 8];
        prefix[7] = rbit(rng);
        streams_only(vec![FinSeed::new(prefix, Tail::Zero)])
    }
}

// ---------------------------------------------------------------------------
// Entry 26: g_2xomega_llpo
// ---------------------------------------------------------------------------

/// Membership of the pair (row, n) in the derived target: no first-nonzero
/// violation of the guarded parity strictly below n.
pub(super) fn two_row_mark(eps: &BairePoint, row: u64, n: u64) -> bool {
    let parity = 1 - row;
    (0..n).filter(|m| m % 2 == parity).all(|m| {
        let prefix_zero = (0..m).all(|j| eps.at(j) == 0);
        !prefix_zero || eps.at(m) == 0
    })
}

fn t_g_2xomega_llpo(inst: &Instance, _budget: u64) -> Result<Output, ReductionError> {
    let eps = inst.point(0);
    point_output(vec![BairePoint::from_rule("two-row-target", move |m| {
        let Some(s) = decode_bounded(m) else { return 0 };
        if s.len() != 2 || s.get_u64(0) > 1 {
            return 0;
        }
        u64::from(two_row_mark(&eps, s.get_u64(0), s.get_u64(1).min(4096)))
    })])
}

fn a_g_2xomega_llpo(inst: &Instance, d: usize, _seed: u64) -> Check {
    let eps = inst.point(0);
    let held = (0..d as u64)
        .all(|c0| (0..d as u64).all(|c1| two_row_mark(&eps, 0, c0) || two_row_mark(&eps, 1, c1)));
    Check::from(held, format!("every-reply-pair-answered-below-{d}={held}"))
}

fn c_g_2xomega_llpo(inst: &Instance, d: usize, _seed: u64) -> Check {
    let eps = inst.point(0);
    let n = d.saturating_sub(1) as u64;
    let row = (0..2u64).find(|&i| two_row_mark(&eps, i, n));
    match row {
        Some(i) => Check::from(true, format!("winning-row={i} to-depth={n}")),
        None => Check::from(false, format!("no-row-survives-to-{n}")),
    }
}

fn g_g_2xomega_llpo(rng: &mut ChaCha8Rng, _satisfy: bool) -> Instance {
    streams_only(vec![gen_small_values(rng, 12, 1)])
}

// ---------------------------------------------------------------------------
// Entry 27: unreal_to_bar
// ---------------------------------------------------------------------------

fn valuation_fails(alpha: &BairePoint, c: &SeqCode, window: u64) -> bool {
    (0..window).any(|n| {
        (0..window).any(|p| {
            alpha.at(p) == n + 1 && logic::eval_zero_extended(c, &Nat::from(n)) == 0
        })
    })
}

fn t_unreal_to_bar(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let cap = (budget as usize).min(20);
    point_output(vec![BairePoint::from_rule("failing-valuations", move |m| {
        let Some(c) = decode_bounded(m) else { return 1 };
        if !c.is_bin() {
            return 1;
        }
        if c.len() > cap {
            return 0;
        }
        u64::from(valuation_fails(&alpha, &c, c.len() as u64))
    })])
}

fn a_unreal_to_bar(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let held =
        bin_exact(d).into_iter().all(|c| valuation_fails(&alpha, &c, d as u64));
    Check::from(held, format!("every-depth-{d}-valuation-fails-a-formula={held}"))
}

fn c_unreal_to_bar(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_unreal_to_bar(inst, d as u64));
    if !bar_depth(&bar_of(&beta), d) {
        return Check::from(false, format!("valuation-marks-miss-depth-{d}"));
    }
    let m = root_secured_level(&bar_of(&beta), d).expect("barred tree secures the root");
    let alpha = inst.point(0);
    let back =
        bin_exact(m).into_iter().all(|c| valuation_fails(&alpha, &c, m as u64));
    Check::from(back, format!("secured-level={m} all-valuations-fail-there={back}"))
}

fn g_unreal_to_bar(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    if satisfy {
        // Enumerate an atom and its negation: every valuation fails one.
        let mut prefix = vec![1u64, 2];
        if rbit(rng) == 1 {
            prefix.push(7); // the empty disjunction, failed by everyone
        }
        streams_only(vec![FinSeed::new(prefix, Tail::Zero)])
    } else {
        // Atoms only: the all-true valuation satisfies them all.
        let atoms = [1u64, 3, 6, 10];
        let len = 1 + rng_below(rng, 3) as usize;
        let prefix: Vec<u64> =
            (0..len).map(|_| atoms[rng_below(rng, 4) as usize]).collect();
        streams_only(vec![FinSeed::new(prefix, Tail::Zero)])
    }
}

// ---------------------------------------------------------------------------
// Entry 28: bar_to_unreal
// ---------------------------------------------------------------------------

pub(super) fn stage_survivors(alpha: &BairePoint, m: usize) -> Vec<SeqCode> {
    let mut out: Vec<SeqCode> = bin_exact(m)
        .into_iter()
        .filter(|a| {
            (0..=m).all(|j| alpha.at_nat(&a.prefix(j).expect("within length").value()) == 0)
        })
        .collect();
    out.sort_by_key(SeqCode::value);
    out
}

fn t_bar_to_unreal(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let mut out = Vec::new();
    for m in 0..=(budget as usize) {
        let survivors = stage_survivors(&alpha, m);
        if survivors.is_empty() {
            let at = logic::atom(&Nat::from(m as u64));
            out.push(logic::conjunction(&[at.clone(), logic::negation(&at)]));
            continue;
        }
        let mut fms = Vec::new();
        let mut weight: u128 = 0;
        for a in &survivors {
            let f = logic::fm(a).expect("binary word");
            if f.bits() > 48 {
                weight = u128::MAX;
                break;
            }
            // Coarse size bound: each disjunct contributes its code as an
            // exponent on a prime of at most 7 bits.
            weight = weight.saturating_add((u128::from(u64::try_from(&f).unwrap()) + 1) * 7);
            fms.push(f);
        }
        if weight > 1 << 15 {
            return Err(ReductionError::BudgetExceeded {
                id: "bar_to_unreal".to_string(),
                index: m as u64,
            });
        }
        out.push(logic::disjunction(&fms));
    }
    Ok(Output::Values(out))
}

fn a_bar_to_unreal(inst: &Instance, d: usize, _seed: u64) -> Check {
    let held = bar_depth(&bar_of(&inst.point(0)), d);
    Check::from(held, format!("marks-bar-depth-{d}={held}"))
}

fn c_bar_to_unreal(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    // Structural reading of the formula stages: a stage is witness-free
    // exactly when the marks bar that depth, and realizability can only be
    // lost, never regained, as stages grow.
    let empties: Vec<bool> =
        (0..=d).map(|m| stage_survivors(&alpha, m).is_empty()).collect();
    for m in 0..=d {
        if empties[m] != bar_depth(&bar_of(&alpha), m) {
            return Check::from(false, format!("stage-{m}-disagrees-with-bar"));
        }
        if m > 0 && empties[m - 1] && !empties[m] {
            return Check::from(false, format!("stage-{m}-regains-witnesses"));
        }
    }
    Check::from(true, format!("stages-track-the-bar-to-{d}"))
}

fn g_bar_to_unreal(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    streams_only(vec![gen_bar_seed(rng, satisfy)])
}

// ---------------------------------------------------------------------------
// Entry 29: real_compact_prop
// ---------------------------------------------------------------------------

fn enumerated_formulas(alpha: &BairePoint, window: u64) -> Vec<u64> {
    (0..window).filter_map(|p| alpha.at(p).checked_sub(1)).collect()
}

fn t_real_compact_prop(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let cap = (budget as usize).min(20);
    point_output(vec![BairePoint::from_rule("refuting-valuations", move |m| {
        let Some(c) = decode_bounded(m) else { return 1 };
        if !c.is_bin() {
            return 1;
        }
        if c.len() > cap {
            return 0;
        }
        let refuted = enumerated_formulas(&alpha, c.len() as u64)
            .into_iter()
            .any(|n| logic::eval_zero_extended(&c, &Nat::from(n)) == 0);
        u64::from(refuted)
    })])
}

fn a_real_compact_prop(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    for m in 0..=d {
        let formulas = enumerated_formulas(&alpha, m as u64);
        let realized = bin_exact(m).into_iter().any(|c| {
            formulas.iter().all(|&n| logic::eval_zero_extended(&c, &Nat::from(n)) == 1)
        });
        if !realized {
            return Check::from(false, format!("stage-{m}-unrealizable"));
        }
    }
    Check::from(true, format!("every-stage-to-{d}-realizable"))
}

fn c_real_compact_prop(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_real_compact_prop(inst, d as u64));
    if root_secured_level(&bar_of(&beta), d).is_some() {
        return Check::from(false, format!("refutation-marks-secure-the-root-to-{d}"));
    }
    let Some(w) = avoidance_witness(&bar_of(&beta), d) else {
        return Check::from(false, "no-avoiding-valuation".to_string());
    };
    let alpha = inst.point(0);
    let realizes = enumerated_formulas(&alpha, d as u64)
        .into_iter()
        .all(|n| logic::eval_zero_extended(&w, &Nat::from(n)) == 1);
    Check::from(realizes, format!("avoiding-valuation={} realizes={realizes}", code_str(&w)))
}

fn g_real_compact_prop(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    if satisfy {
        // Enumerate atom p at position p: the all-true valuation works at
        // every stage.
        let atoms = [1u64, 3, 6, 10, 15, 21];
        let len = 2 + rng_below(rng, 5) as usize;
        streams_only(vec![FinSeed::new(atoms[..len].to_vec(), Tail::Zero)])
    } else {
        streams_only(vec![FinSeed::new(vec![1, 2], Tail::Zero)])
    }
}

// ---------------------------------------------------------------------------
// Entry 30: appft_to_oi
// ---------------------------------------------------------------------------

fn small_members(alpha: &BairePoint, below: u64) -> Vec<SeqCode> {
    (0..below)
        .filter(|&v| alpha.at(v) != 0)
        .map(|v| SeqCode::from_value(Nat::from(v)))
        .filter(SeqCode::is_bin)
        .collect()
}

/// Folds an admitted-or-not decision over a candidate law node, carrying
/// the binary image along: 0 always continues, and n+1 continues exactly
/// when n is the least stage whose marks justify turning right.
pub(super) fn law_admits(alpha: &BairePoint, t: &SeqCode) -> bool {
    let mut delta = SeqCode::empty();
    for i in 0..t.len() {
        let n = t.get_u64(i);
        let justified =
            (0..=B).find(|&m| bar_on_left(&small_members(alpha, m), &delta.push(bit(1))));
        if n == 0 {
            delta = delta.push(bit(0));
        } else if justified == Some(n - 1) {
            delta = delta.push(bit(1));
        } else {
            return false;
        }
    }
    true
}

fn t_appft_to_oi(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let cap = (budget as usize).min(12);
    point_output(vec![BairePoint::from_rule("staged-law", move |m| {
        let Some(t) = decode_bounded(m) else { return 1 };
        if t.len() > cap {
            return 1;
        }
        u64::from(!law_admits(&alpha, &t))
    })])
}

fn a_appft_to_oi(inst: &Instance, d: usize, _seed: u64) -> Check {
    let members = small_members(&inst.point(0), B);
    for s in bin_up_to(d) {
        if bar_on_left(&members, &s) && !bar_in_cone(&members, &s) {
            return Check::from(false, format!("progressivity-fails-at-{}", code_str(&s)));
        }
    }
    Check::from(true, format!("marks-progressive-to-{d}"))
}

fn c_appft_to_oi(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let members = small_members(&alpha, B);
    if !bar_in_cone(&members, &SeqCode::empty()) {
        return Check::from(false, "marks-do-not-bar-the-root".to_string());
    }
    // Law structure: 0 always admitted, and at most one nonzero branch.
    for t in bin_up_to(d.min(3)) {
        if !law_admits(&alpha, &t) {
            continue;
        }
        if !law_admits(&alpha, &t.push(bit(0))) {
            return Check::from(false, format!("zero-branch-closed-at-{}", code_str(&t)));
        }
        let open: Vec<u64> =
            (1..=8).filter(|&n| law_admits(&alpha, &t.push(bit(n)))).collect();
        if open.len() > 1 {
            return Check::from(false, format!("ambiguous-stage-at-{}", code_str(&t)));
        }
    }
    Check::from(true, "root-barred-and-law-single-staged")
}

fn g_appft_to_oi(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    if satisfy {
        let mut prefix = vec![0u64; 40];
        prefix[1] = 1;
        prefix[3] = 1;
        for _ in 0..3 {
            let j = rng_below(rng, 40) as usize;
            if rbit(rng) == 1 {
                prefix[j] = 1;
            }
        }
        streams_only(vec![FinSeed::new(prefix, Tail::Zero)])
    } else {
        streams_only(vec![gen_bar_seed(rng, false)])
    }
}

// ---------------------------------------------------------------------------
// Entry 31: oi_to_ft
// ---------------------------------------------------------------------------

fn t_oi_to_ft(inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let alpha = inst.point(0);
    let cap = (budget as usize).min(20);
    point_output(vec![BairePoint::from_rule("left-closed-marks", move |m| {
        let Some(s) = decode_bounded(m) else { return 0 };
        if !s.is_bin() || s.len() > cap {
            return 0;
        }
        let below = u64::try_from(&(m + Nat::one())).unwrap_or(B).min(B);
        let members = small_members(&alpha, below);
        u64::from(bar_in_cone(&members, &s) && bar_on_left(&members, &s))
    })])
}

fn a_oi_to_ft(inst: &Instance, d: usize, _seed: u64) -> Check {
    let alpha = inst.point(0);
    let bounded = NodePredicate::new("bounded-marks", move |s| {
        s.value() < Nat::from(B) && alpha.at_nat(&s.value()) != 0
    });
    let held = bar_depth(&bounded, d);
    Check::from(held, format!("small-marks-bar-depth-{d}={held}"))
}

fn c_oi_to_ft(inst: &Instance, d: usize, _seed: u64) -> Check {
    let beta = first_point(t_oi_to_ft(inst, d as u64));
    // Once a node is marked, both children stay marked: the left-closed
    // reading is monotone.
    for s in bin_up_to(d.min(4).saturating_sub(1)) {
        if beta.at_nat(&s.value()) != 0
            && (0..2u64).any(|b| beta.at_nat(&s.push(bit(b)).value()) == 0)
        {
            return Check::from(false, format!("mark-lost-below-{}", code_str(&s)));
        }
    }
    let level = root_secured_level(&bar_of(&inst.point(0)), d);
    match level {
        Some(n) => Check::from(true, format!("monotone-marks root-secured-at-{n}")),
        None => Check::from(false, format!("root-unsecured-to-{d}")),
    }
}

fn g_oi_to_ft(rng: &mut ChaCha8Rng, satisfy: bool) -> Instance {
    if satisfy {
        let mut prefix = vec![0u64; 40];
        prefix[1] = 1;
        prefix[3] = 1;
        for _ in 0..3 {
            let j = rng_below(rng, 40) as usize;
            if rbit(rng) == 1 {
                prefix[j] = 1;
            }
        }
        streams_only(vec![FinSeed::new(prefix, Tail::Zero)])
    } else {
        streams_only(vec![gen_bar_seed(rng, false)])
    }
}

// ---------------------------------------------------------------------------
// Catalogue assembly
// ---------------------------------------------------------------------------

pub(super) fn extra_validation(id: &str, inst: &Instance) -> bool {
    match id {
        "g_finite_to_cantor" => {
            matches!(inst.numbers.as_slice(), [1, 2] | [1, 3] | [2, 2])
        }
        "g_postpone" => {
            inst.sets[0].iter().all(|s| {
                s.len() % 2 == 0 && (1..s.len()).step_by(2).all(|k| s.get_u64(k) < 2)
            }) && inst.sets[1].iter().all(|a| a.is_bin() && a.len() % 2 == 0)
        }
        _ => true,
    }
}

pub(super) fn zero_instance(sig: &Sig, id: &str) -> Instance {
    Instance {
        streams: vec![FinSeed::zeros(); sig.streams],
        sets: vec![Vec::new(); sig.sets],
        numbers: if id == "g_finite_to_cantor" { vec![1, 2] } else { Vec::new() },
        intervals: vec![Vec::new(); sig.intervals],
    }
}

fn sig(streams: usize, sets: usize, numbers: usize, intervals: usize, variadic: bool) -> Sig {
    Sig { streams, sets, numbers, intervals, variadic }
}

macro_rules! entry {
    ($id:literal, $cite:literal, $sig:expr, $t:ident, $a:ident, $c:ident, $g:ident) => {
        super::ReductionEntry {
            id: $id,
            citation: $cite,
            sig: $sig,
            transform: $t,
            antecedent: $a,
            consequent: $c,
            generate: $g,
        }
    };
}

pub(super) fn catalogue() -> Vec<super::ReductionEntry> {
    vec![
        entry!(
            "wkl_to_ft",
            "prunes marked nodes to those whose length still admits an unmarked \
             companion; an avoiding path always survives while a full bar secures the root",
            sig(1, 0, 0, 0, false),
            t_wkl_to_ft, a_wkl_to_ft, c_wkl_to_ft, g_wkl_to_ft
        ),
        entry!(
            "wkl_to_llpo",
            "marks every node off the two constant rays and kills a ray at the first \
             parity violation of the input; the surviving ray decides the parity disjunction",
            sig(1, 0, 0, 0, false),
            t_wkl_to_llpo, a_wkl_to_llpo, c_wkl_to_llpo, g_wkl_to_llpo
        ),
        entry!(
            "lpo_to_llpo",
            "decides the parity disjunction from the least nonzero index when one \
             exists, and keeps both disjuncts when none does",
            sig(1, 0, 0, 0, false),
            t_lpo_to_llpo, a_lpo_to_llpo, c_lpo_to_llpo, g_lpo_to_llpo
        ),
        entry!(
            "sep_to_path",
            "builds the tree of answers consistent with two enumerations (1 on the \
             first, 0 on the second); disjoint enumerations leave the root unsecured",
            sig(2, 0, 0, 0, false),
            t_sep_to_path, a_sep_to_path, c_sep_to_path, g_sep_to_path
        ),
        entry!(
            "bar_to_sep",
            "enumerates, per side, the nodes whose chosen child is secured at a level \
             while the other is not; the two sets are disjoint and the descent path \
             turns hits into a secured root",
            sig(1, 0, 0, 0, false),
            t_bar_to_sep, a_bar_to_sep, c_bar_to_sep, g_bar_to_sep
        ),
        entry!(
            "llpo_choice_path",
            "resolves each binary fork by comparing the least securing levels of the \
             two children and follows the later one",
            sig(1, 0, 0, 0, false),
            t_llpo_choice_path, a_llpo_choice_path, c_llpo_choice_path, g_llpo_choice_path
        ),
        entry!(
            "binchoice_to_bar",
            "marks a node when some subsequence enumerates the complement of one of \
             its bits; a bar forces a single row to enumerate both answers",
            sig(1, 0, 0, 0, false),
            t_binchoice_to_bar, a_binchoice_to_bar, c_binchoice_to_bar, g_binchoice_to_bar
        ),
        entry!(
            "bar_to_binchoice",
            "per node, enumerates the answer whose child is one-sidedly secured, with \
             a secured root enumerating both; the descent path recovers a chosen row \
             or the secured root",
            sig(1, 0, 0, 0, false),
            t_bar_to_binchoice, a_bar_to_binchoice, c_bar_to_binchoice, g_bar_to_binchoice
        ),
        entry!(
            "finchoice_to_binchoice",
            "pads a binary-choice family with the constant bound 1, making \
             bounded-choice and binary-choice premises coincide",
            sig(1, 0, 0, 0, false),
            t_finchoice_to_binchoice, a_finchoice_to_binchoice, c_finchoice_to_binchoice,
            g_finchoice_to_binchoice
        ),
        entry!(
            "finchoice_to_bar",
            "block-codes number sequences into the binary tree and marks overruns of \
             the bound, enumerated answers, and overlong waits; full coverage of a \
             coordinate bars the tree within its fuel",
            sig(2, 0, 0, 0, false),
            t_finchoice_to_bar, a_finchoice_to_bar, c_finchoice_to_bar, g_finchoice_to_bar
        ),
        entry!(
            "compact_choice_unit",
            "lists the widened ternary intervals of marked words together with \
             middle-third witnesses; an avoiding path stays outside the opens and its \
             digits are recovered from interval sizes",
            sig(1, 0, 0, 0, true),
            t_compact_choice_unit, a_compact_choice_unit, c_compact_choice_unit,
            g_compact_choice_unit
        ),
        entry!(
            "cantor_compact_to_bar",
            "marks a node when one of its extracted subsequences has a marked initial \
             part in the corresponding family member; a bar singles out one family \
             member barring on its own",
            sig(1, 0, 0, 0, false),
            t_cantor_compact_to_bar, a_cantor_compact_to_bar, c_cantor_compact_to_bar,
            g_cantor_compact_to_bar
        ),
        entry!(
            "compact_to_unit_contr",
            "pulls interval covers of the unit back to tree markings: a word is marked \
             when its widened ternary interval lies strictly inside a listed interval",
            sig(0, 0, 0, 1, true),
            t_compact_to_unit_contr, a_compact_to_unit_contr, c_compact_to_unit_contr,
            g_compact_to_unit_contr
        ),
        entry!(
            "binchoice_to_unit",
            "turns enumerated binary answers into one-sided interval covers of the \
             unit; discriminating a real away from an endpoint picks the answer to ask \
             for",
            sig(1, 0, 0, 0, true),
            t_binchoice_to_unit, a_binchoice_to_unit, c_binchoice_to_unit,
            g_binchoice_to_unit
        ),
        entry!(
            "twofold_eta",
            "splits one marking into two halves pruned above the first nonzero index \
             of a side stream, by its parity; at most one half deviates, so the other \
             still meets every path under a bar",
            sig(2, 0, 0, 0, false),
            t_twofold_eta, a_twofold_eta, c_twofold_eta, g_twofold_eta
        ),
        entry!(
            "twofold_descent",
            "encodes the child-securing comparison as a side stream and descends \
             against it; a hit on the descent path secures the root at that level",
            sig(1, 0, 0, 0, false),
            t_twofold_descent, a_twofold_descent, c_twofold_descent, g_twofold_descent
        ),
        entry!(
            "scheme_prop_to_open",
            "re-marks a number-witness stream on the binary tree, pointwise in one \
             direction and cumulatively in the other, so a bar-or-witness disjunction \
             keeps its shape",
            sig(2, 0, 0, 0, false),
            t_scheme_prop_to_open, a_scheme_prop_to_open, c_scheme_prop_to_open,
            g_scheme_prop_to_open
        ),
        entry!(
            "llpo_struct",
            "interleaves two decidable rows into one gap stream and, conversely, \
             splits a stream by the parity of its first nonzero index",
            sig(3, 0, 0, 0, false),
            t_llpo_struct, a_llpo_struct, c_llpo_struct, g_llpo_struct
        ),
        entry!(
            "lpo_struct",
            "pairs a stream with its pointwise zero set, so the least-witness search \
             decides which of the two exhausts the positions",
            sig(1, 0, 0, 0, false),
            t_lpo_struct, a_lpo_struct, c_lpo_struct, g_lpo_struct
        ),
        entry!(
            "g_binchoice_to_game",
            "re-enumerates subsequence answers as move-answer pairs of a two-reply \
             game; a first move winning both replies recovers a doubly answering row",
            sig(1, 0, 0, 0, false),
            t_g_binchoice_to_game, a_g_binchoice_to_game, c_g_binchoice_to_game,
            g_g_binchoice_to_game
        ),
        entry!(
            "g_game_to_3move",
            "indexes each enumerated move-answer pair by its witness position, turning \
             the two-move game into a three-move game with decidable target",
            sig(1, 0, 0, 0, false),
            t_g_game_to_3move, a_g_game_to_3move, c_g_game_to_3move, g_g_game_to_3move
        ),
        entry!(
            "g_finite_to_cantor",
            "restricts a finite alternating game to binary replies, conceding \
             deviations to the first player; the finite solver turns a half-win into \
             a full strategy table",
            sig(1, 0, 2, 0, false),
            t_g_finite_to_cantor, a_g_finite_to_cantor, c_g_finite_to_cantor,
            g_g_finite_to_cantor
        ),
        entry!(
            "g_postpone",
            "translates between answer-shaped plays and binary wait-marker plays: each \
             round becomes a run of waits, a marker, and the answer",
            sig(1, 2, 0, 0, false),
            t_g_postpone, a_g_postpone, c_g_postpone, g_g_postpone
        ),
        entry!(
            "g_swap_players",
            "prepends one throwaway move so the target set reappears under both first \
             moves and the mover roles swap",
            sig(1, 0, 0, 0, false),
            t_g_swap_players, a_g_swap_players, c_g_swap_players, g_g_swap_players
        ),
        entry!(
            "g_halfwin_to_bar",
            "reads binary codes as strategy-table prefixes and marks those certifying \
             a hit; a two-move forcing premise bars the tables, and a secured level \
             yields a finite second-player win",
            sig(1, 0, 0, 0, false),
            t_g_halfwin_to_bar, a_g_halfwin_to_bar, c_g_halfwin_to_bar, g_g_halfwin_to_bar
        ),
        entry!(
            "g_2xomega_llpo",
            "builds the two-row target whose row survives while the input stream has \
             no first-nonzero of the guarded parity; the surviving row decides the \
             parity disjunction",
            sig(1, 0, 0, 0, false),
            t_g_2xomega_llpo, a_g_2xomega_llpo, c_g_2xomega_llpo, g_g_2xomega_llpo
        ),
        entry!(
            "unreal_to_bar",
            "marks a valuation prefix once it refutes an enumerated formula whose \
             code lies below the prefix length; unrealizability of the whole set bars \
             the valuations",
            sig(1, 0, 0, 0, false),
            t_unreal_to_bar, a_unreal_to_bar, c_unreal_to_bar, g_unreal_to_bar
        ),
        entry!(
            "bar_to_unreal",
            "emits, per stage, the disjunction of the characteristic formulas of the \
             unmarked words of that length, degenerating to a contradiction when none \
             survive; stage realizability tracks the bar exactly",
            sig(1, 0, 0, 0, false),
            t_bar_to_unreal, a_bar_to_unreal, c_bar_to_unreal, g_bar_to_unreal
        ),
        entry!(
            "real_compact_prop",
            "marks a valuation prefix that refutes some formula enumerated below its \
             length; stagewise realizability keeps the root unsecured and the leftmost \
             avoiding valuation realizes the whole window",
            sig(1, 0, 0, 0, false),
            t_real_compact_prop, a_real_compact_prop, c_real_compact_prop,
            g_real_compact_prop
        ),
        entry!(
            "appft_to_oi",
            "stages the marks by code bound into a spread law that turns right exactly \
             at the least stage barring everything to the left; progressive marks bar \
             the root and the law admits one stage per node",
            sig(1, 0, 0, 0, false),
            t_appft_to_oi, a_appft_to_oi, c_appft_to_oi, g_appft_to_oi
        ),
        entry!(
            "oi_to_ft",
            "marks a node when the marks listed below its own code bar its cone and \
             everything to its left; the marking is monotone and a small-code bar \
             secures the root",
            sig(1, 0, 0, 0, false),
            t_oi_to_ft, a_oi_to_ft, c_oi_to_ft, g_oi_to_ft
        ),
    ]
}
