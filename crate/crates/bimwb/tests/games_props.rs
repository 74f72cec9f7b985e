//! Finite-game solver properties, cross-checked against an independent
//! oracle that enumerates strategies directly as maps from decision
//! positions to moves (no backward induction, no strategy codes).

use std::collections::HashSet;

use bimwb::coding::{bin_codes_of_length, Nat, SeqCode};
use bimwb::games::{
    contrapose_find, finite_choice, obeys, postpone_decode, postpone_encode, safe, solve,
    strat_bounds, two_move_diag, Arena, Side, Strategy,
};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

mod oracle {
    //! Strategy enumeration over plays represented as plain vectors.

    use std::collections::HashSet;

    /// All plays of length n with entries < l, lexicographically.
    pub fn plays(n: usize, l: u64) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..l).map(move |e| {
                        let mut q = p.clone();
                        q.push(e);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Decision prefixes for the player moving at parity (0 = first mover).
    pub fn positions(parity: usize, n: usize, l: u64) -> Vec<Vec<u64>> {
        (0..n).filter(|k| k % 2 == parity).flat_map(|k| plays(k, l)).collect()
    }

    /// Visit every map from the given positions to moves < l, as a value
    /// vector parallel to `positions`, in lexicographic order.
    pub fn assignments(positions: &[Vec<u64>], l: u64, mut visit: impl FnMut(&[u64])) {
        let mut values = vec![0u64; positions.len()];
        loop {
            visit(&values);
            match values.iter().rposition(|&v| v + 1 < l) {
                Some(i) => {
                    values[i] += 1;
                    values[i + 1..].fill(0);
                }
                None => return,
            }
        }
    }

    /// For each play, the obedience constraints against the moving
    /// player's positions, as (position index, required move) pairs.
    fn constraints(parity: usize, positions: &[Vec<u64>], all: &[Vec<u64>]) -> Vec<Vec<(usize, u64)>> {
        all.iter()
            .map(|play| {
                (0..play.len())
                    .filter(|k| k % 2 == parity)
                    .map(|k| {
                        let at =
                            positions.iter().position(|p| p[..] == play[..k]).unwrap();
                        (at, play[k])
                    })
                    .collect()
            })
            .collect()
    }

    /// Half-win for the player moving at parity `mine`: every opposing
    /// strategy admits an obeying play in X.
    pub fn halfwin(mine: usize, n: usize, l: u64, x: &HashSet<Vec<u64>>) -> bool {
        let opp = 1 - mine;
        let all = plays(n, l);
        let pos = positions(opp, n, l);
        let cons = constraints(opp, &pos, &all);
        let in_x: Vec<bool> = all.iter().map(|p| x.contains(p)).collect();
        let mut ok = true;
        assignments(&pos, l, |values| {
            ok &= (0..all.len())
                .any(|i| in_x[i] && cons[i].iter().all(|&(at, mv)| values[at] == mv));
        });
        ok
    }

    /// Win for the player moving at parity `mine`: some own strategy keeps
    /// every obeying play inside X.
    pub fn win(mine: usize, n: usize, l: u64, x: &HashSet<Vec<u64>>) -> bool {
        let all = plays(n, l);
        let pos = positions(mine, n, l);
        let cons = constraints(mine, &pos, &all);
        let in_x: Vec<bool> = all.iter().map(|p| x.contains(p)).collect();
        let mut found = false;
        assignments(&pos, l, |values| {
            found |= (0..all.len())
                .all(|i| in_x[i] || !cons[i].iter().all(|&(at, mv)| values[at] == mv));
        });
        found
    }
}

fn enc(xs: &[u64]) -> SeqCode {
    SeqCode::encode_u64(xs)
}

fn side_parity(side: Side) -> usize {
    match side {
        Side::I => 0,
        Side::II => 1,
    }
}

fn set(plays: &[&[u64]]) -> Vec<SeqCode> {
    plays.iter().map(|p| enc(p)).collect()
}

#[test]
fn obeys_unfolds_the_defining_axioms() {
    // The empty play obeys everything: the quantifier is vacuous.
    for v in 0..20u32 {
        let b = SeqCode::from_value(Nat::from(v));
        assert!(obeys(&SeqCode::empty(), &Strategy::new(Side::I, b.clone())));
        assert!(obeys(&SeqCode::empty(), &Strategy::new(Side::II, b)));
    }
    // s = <0,1>: the first mover's only constraint is s(0) = b(code of <>),
    // i.e. b(0) = 0; the second mover's is s(1) = c(code of <0>), i.e.
    // c(1) = 1.
    let s = enc(&[0, 1]);
    for v in 0..200u32 {
        let table = SeqCode::from_value(Nat::from(v));
        let first = obeys(&s, &Strategy::new(Side::I, table.clone()));
        assert_eq!(first, table.get_u64(0) == 0, "I-table {v}");
        let second = obeys(&s, &Strategy::new(Side::II, table.clone()));
        assert_eq!(second, table.get_u64(1) == 1, "II-table {v}");
    }
}

#[test]
fn obeys_is_monotone_under_prefix() {
    let arena = Arena::new(3, 3);
    for s in arena.plays() {
        for v in 0..400u32 {
            for side in [Side::I, Side::II] {
                let strat = Strategy::new(side, SeqCode::from_value(Nat::from(v)));
                if obeys(&s, &strat) {
                    for m in 0..=s.len() {
                        assert!(obeys(&s.prefix(m).unwrap(), &strat));
                    }
                }
            }
        }
    }
}

#[test]
fn strat_bounds_are_exact_maxima() {
    // Oracle: enumerate every position code of length <= n directly.
    for n in 0..=3usize {
        for l in 1..=3u64 {
            let (f, g) = strat_bounds(n, l);
            let max_pos = (0..=n)
                .flat_map(|k| oracle::plays(k, l))
                .map(|p| enc(&p).value())
                .max()
                .unwrap();
            assert_eq!(f, &max_pos + 1u32, "F({n},{l})");
            let f_len = f.to_string().parse::<u128>().ok();
            if let Some(f_small) = f_len.filter(|&v| v <= 12) {
                let max_strat = oracle::plays(f_small as usize, l)
                    .into_iter()
                    .map(|p| enc(&p).value())
                    .max()
                    .unwrap();
                assert_eq!(g, &max_strat + 1u32, "G({n},{l})");
            }
        }
    }
    assert_eq!(strat_bounds(0, 2).0, Nat::from(1u32));
    assert_eq!(strat_bounds(1, 2).0, Nat::from(4u32)); // codes 0,1,3
}

#[test]
fn strat_bound_g_is_monotone_small() {
    for n in 0..3usize {
        for l in 1..3u64 {
            let (_, g) = strat_bounds(n, l);
            assert!(strat_bounds(n + 1, l).1 >= g);
            assert!(strat_bounds(n, l + 1).1 >= g);
        }
    }
}

/// Check a solver report against the oracle and verify any produced
/// strategy by full play enumeration.
fn check_solve(side: Side, arena: &Arena, x: &[SeqCode]) {
    let parity = side_parity(side);
    let x_vecs: HashSet<Vec<u64>> = x.iter().map(|c| c.entries_u64()).collect();
    let report = solve(side, arena, x).expect("X within arena");
    assert_eq!(
        report.halfwin,
        oracle::halfwin(parity, arena.moves(), arena.alternatives(), &x_vecs),
        "halfwin {side:?} n={} l={} X={x:?}",
        arena.moves(),
        arena.alternatives()
    );
    assert_eq!(
        report.win.is_some(),
        oracle::win(parity, arena.moves(), arena.alternatives(), &x_vecs),
        "win {side:?} X={x:?}"
    );
    // Determinacy: the halfwin verdict and the strategy's presence agree.
    assert_eq!(report.halfwin, report.win.is_some(), "determinacy {x:?}");
    if let Some(strat) = &report.win {
        assert_eq!(strat.side(), side);
        for s in arena.plays() {
            assert!(
                !obeys(&s, strat) || x.contains(&s),
                "obeying play {s:?} escapes X={x:?}"
            );
        }
    }
    if let Some(counter) = &report.counterstrategy {
        assert!(!report.halfwin);
        for s in arena.plays() {
            assert!(
                !obeys(&s, counter) || !x.contains(&s),
                "counterstrategy admits {s:?} in X={x:?}"
            );
        }
    }
}

#[test]
fn determinacy_exhaustive_binary_arenas() {
    for n in 0..=3usize {
        let arena = Arena::new(n, 2);
        let plays = arena.plays();
        for mask in 0u32..(1 << plays.len()) {
            let x: Vec<SeqCode> = plays
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, c)| c.clone())
                .collect();
            check_solve(Side::I, &arena, &x);
            check_solve(Side::II, &arena, &x);
        }
    }
}

#[test]
fn determinacy_sampled_ternary_arenas() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &(n, l) in &[(2usize, 3u64), (3, 3)] {
        let arena = Arena::new(n, l);
        let plays = arena.plays();
        for _ in 0..12 {
            let x: Vec<SeqCode> =
                plays.iter().filter(|_| rng.next_u32() % 2 == 0).cloned().collect();
            check_solve(Side::I, &arena, &x);
            check_solve(Side::II, &arena, &x);
        }
    }
}

#[test]
fn solve_frozen_examples() {
    // Zero-move game on X = {<>}: both verdicts are true.
    let arena0 = Arena::new(0, 2);
    let report = solve(Side::I, &arena0, &[SeqCode::empty()]).unwrap();
    assert!(report.halfwin && report.win.is_some());

    // First mover fixes the first coordinate to 0 and wins.
    let arena = Arena::new(2, 2);
    let x = set(&[&[0, 0], &[0, 1]]);
    let report = solve(Side::I, &arena, &x).unwrap();
    let strat = report.win.expect("winning strategy");
    assert_eq!(strat.move_at(&SeqCode::empty()), 0);

    // The diagonal set admits the counterstrategy c(<0>)=1, c(<1>)=0,
    // whose least table is the code of <0,1>.
    let x = set(&[&[0, 0], &[1, 1]]);
    let report = solve(Side::I, &arena, &x).unwrap();
    assert!(!report.halfwin && report.win.is_none());
    let counter = report.counterstrategy.expect("counterstrategy");
    assert_eq!(counter.move_at(&enc(&[0])), 1);
    assert_eq!(counter.move_at(&enc(&[1])), 0);
    assert_eq!(counter.table(), &enc(&[0, 1]));
}

#[test]
fn solve_rejects_plays_outside_arena() {
    let arena = Arena::new(2, 2);
    assert!(solve(Side::I, &arena, &[enc(&[0, 2])]).is_err());
    assert!(solve(Side::I, &arena, &[enc(&[0])]).is_err());
}

#[test]
fn finite_choice_and_contraposition_small_grids() {
    // Frozen examples.
    assert_eq!(finite_choice(0, 2, |_, _| false), Ok(Vec::new()));
    assert!(contrapose_find(0, 2, |_, _| true).is_err());
    let a = |n: u64, m: u64| matches!((n, m), (0, 1) | (1, 0) | (1, 1));
    assert_eq!(finite_choice(2, 2, a), Ok(vec![1, 0]));
    assert_eq!(contrapose_find(2, 2, a), Ok(1));
    assert_eq!(finite_choice(2, 2, |_, _| true), Ok(vec![0, 0]));
    assert_eq!(contrapose_find(2, 2, |_, _| true), Ok(0));

    // Exhaustive agreement with brute force over every relation on k x l.
    for k in 0..=3u64 {
        for l in 1..=3u64 {
            for mask in 0u32..(1 << (k * l)) {
                let rel = |n: u64, m: u64| (mask >> (n * l + m)) & 1 == 1;
                match finite_choice(k, l, rel) {
                    Ok(s) => {
                        assert_eq!(s.len(), k as usize);
                        assert!((0..k).all(|n| rel(n, s[n as usize])));
                    }
                    Err(row) => assert!((0..l).all(|m| !rel(row, m))),
                }
                // Brute-force hypothesis: every selector hits the relation.
                let selectors = oracle::plays(k as usize, l);
                let hypothesis = selectors
                    .iter()
                    .all(|s| (0..k).any(|n| rel(n, s[n as usize])));
                match contrapose_find(k, l, rel) {
                    Ok(row) => {
                        assert!(hypothesis);
                        assert!((0..l).all(|m| rel(row, m)), "mask {mask} row {row}");
                    }
                    Err(falsifier) => {
                        assert!(!hypothesis);
                        assert!((0..k).all(|n| !rel(n, falsifier[n as usize])));
                    }
                }
            }
        }
    }
}

#[test]
fn two_move_diagonal_finds_doubled_columns() {
    assert_eq!(two_move_diag(&set(&[&[3, 0], &[3, 1]]), 10), Some(3));
    assert_eq!(two_move_diag(&set(&[&[3, 0]]), 10), None);
    assert_eq!(two_move_diag(&[], 10), None);
    // Randomized agreement with the direct doubled-column search.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let d: Vec<SeqCode> = (0..12u64)
            .flat_map(|n| (0..2u64).map(move |i| (n, i)))
            .filter(|_| rng.next_u32() % 3 == 0)
            .map(|(n, i)| enc(&[n, i]))
            .collect();
        let expect = (0..=12u64)
            .find(|&n| d.contains(&enc(&[n, 0])) && d.contains(&enc(&[n, 1])));
        assert_eq!(two_move_diag(&d, 12), expect, "D = {d:?}");
    }
}

/// All even-length sequences with odd positions binary, bounded entries.
fn postponable(max_pairs: usize, max_first: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_pairs {
        let mut next = Vec::new();
        for base in &layer {
            for n in 0..=max_first {
                for i in 0..2u64 {
                    let mut s = base.clone();
                    s.push(n);
                    s.push(i);
                    next.push(s);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn postpone_coding_round_trips() {
    assert_eq!(postpone_encode(&SeqCode::empty()).unwrap(), SeqCode::empty());
    assert_eq!(postpone_decode(&SeqCode::empty()).unwrap(), SeqCode::empty());
    // <2,1> becomes four postponing entries, the marker, and the answer.
    let image = postpone_encode(&enc(&[2, 1])).unwrap();
    assert_eq!(image, enc(&[0, 0, 0, 0, 1, 1]));
    assert_eq!(postpone_decode(&image).unwrap(), enc(&[2, 1]));

    let mut image_codes = HashSet::new();
    for s in postponable(3, 3) {
        let code = enc(&s);
        let img = postpone_encode(&code).unwrap();
        assert_eq!(postpone_decode(&img).unwrap(), code, "round trip {s:?}");
        image_codes.insert(img);
    }
    // Decoding is total on even-length binary codes, and re-encoding is
    // the identity exactly on the image of the encoder.
    for len in (0..=6usize).step_by(2) {
        for a in bin_codes_of_length(len) {
            let s = postpone_decode(&a).unwrap();
            let back = postpone_encode(&s).unwrap();
            assert_eq!(back == a, image_codes.contains(&a), "{a:?}");
        }
    }
    // Malformed shapes are rejected.
    assert!(postpone_encode(&enc(&[1])).is_err());
    assert!(postpone_encode(&enc(&[1, 2])).is_err());
    assert!(postpone_decode(&enc(&[1, 2])).is_err());
    assert!(postpone_decode(&enc(&[1])).is_err());
}

#[test]
fn safe_decision_examples() {
    // Every answer prefix is empty and the bar is the full first level:
    // any continuation above the empty position is fine.
    let phi = vec![(enc(&[0]), SeqCode::empty()), (enc(&[1]), SeqCode::empty())];
    let bar = set(&[&[0], &[1]]);
    assert_eq!(
        safe(&phi, &bar, &SeqCode::empty(), &SeqCode::empty()),
        Ok(true)
    );

    // The enumeration forces the first answer pair <5,0> but the position
    // asks for <5,1>: no enumerated pair supports it.
    let phi = vec![(enc(&[0]), enc(&[5, 0])), (enc(&[1]), enc(&[5, 0]))];
    assert_eq!(
        safe(&phi, &bar, &enc(&[5, 1]), &SeqCode::empty()),
        Ok(false)
    );
    assert_eq!(safe(&phi, &bar, &enc(&[5, 0]), &SeqCode::empty()), Ok(true));

    // A certificate that fails to bar the binary tree is rejected.
    assert!(safe(&phi, &set(&[&[0]]), &enc(&[5, 0]), &SeqCode::empty()).is_err());
    // Malformed shapes are rejected.
    assert!(safe(&phi, &bar, &enc(&[5, 2]), &SeqCode::empty()).is_err());
    assert!(safe(&phi, &bar, &enc(&[5]), &SeqCode::empty()).is_err());
    assert!(safe(&phi, &bar, &SeqCode::empty(), &enc(&[2])).is_err());
}

#[test]
fn safe_failure_is_monotone_in_the_conjecture() {
    // Once a position fails for a conjecture, it fails for every
    // one-letter extension of that conjecture.
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let answers: Vec<Vec<u64>> = vec![vec![], vec![5, 0], vec![5, 1], vec![5, 0, 4, 1]];
    for _ in 0..150 {
        let mut phi = Vec::new();
        for b in bin_codes_of_length(2) {
            let d = &answers[(rng.next_u32() % 4) as usize];
            phi.push((b, enc(d)));
        }
        let bar: Vec<SeqCode> = bin_codes_of_length(2).collect();
        for a in [enc(&[5, 0]), enc(&[5, 1])] {
            for c in [SeqCode::empty(), enc(&[0]), enc(&[1])] {
                if safe(&phi, &bar, &a, &c) == Ok(false) {
                    for i in 0..2u64 {
                        let c2 = c.concat(&enc(&[i]));
                        assert_eq!(
                            safe(&phi, &bar, &a, &c2),
                            Ok(false),
                            "phi={phi:?} a={a:?} c={c:?} i={i}"
                        );
                    }
                }
            }
        }
    }
}
