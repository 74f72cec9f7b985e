//! Finite perfect-information games with strategies coded as numbers.
//!
//! Two players alternate moves, the first mover choosing at even
//! positions and the second at odd ones.  A play of the arena with `n`
//! moves and `l` alternatives is a sequence code of length `n` with all
//! entries below `l`.  A strategy is itself a sequence code, read as a
//! table mapping the *code value* of the current position to the move to
//! play; positions beyond the table's length read 0.
//!
//! The solver decides the "half-win" question (does every opposing
//! strategy admit an obeying play inside the target set?) by exhausting
//! opposing strategies, and produces a winning strategy by backward
//! induction.  For finite games the two verdicts agree; the solver
//! reports both so that callers can check the equivalence.
//!
//! The module also houses three smaller devices used by the reduction
//! registry: finite choice and its contraposition on a rectangular grid,
//! the diagonal argument finding a doubled column in a two-move game,
//! and the "postponing" codings that simulate a game with arbitrary
//! first-player moves inside the binary tree, together with the `safe`
//! decision procedure for anti-strategy positions.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coding::{bin_codes_of_length, Nat, SeqCode, SeqOrder};
use crate::secured::{bar_depth, NodePredicate};

/// Errors raised by the game solver and coding procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    /// A target-set member is not a play of the arena.
    #[error("play {0:?} lies outside the arena")]
    PlayOutsideArena(SeqCode),
    /// An argument does not have the required sequence shape.
    #[error("code {0:?} is malformed: {1}")]
    BadShape(SeqCode, &'static str),
    /// A claimed finite bar fails to bar the binary tree.
    #[error("certificate does not bar the binary tree at depth {0}")]
    NotABar(usize),
}

/// Which player a strategy belongs to: the first mover (even positions)
/// or the second (odd positions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    I,
    II,
}

impl Side {
    /// The parity of the positions at which this side moves.
    pub fn parity(self) -> usize {
        match self {
            Side::I => 0,
            Side::II => 1,
        }
    }

    pub fn opponent(self) -> Side {
        match self {
            Side::I => Side::II,
            Side::II => Side::I,
        }
    }
}

/// A finite arena: plays are the sequences of length `n` over `{0..l}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arena {
    n: usize,
    l: u64,
}

impl Arena {
    /// An arena with `n` moves and `l >= 1` alternatives per move.
    pub fn new(n: usize, l: u64) -> Arena {
        assert!(l >= 1, "an arena needs at least one alternative");
        Arena { n, l }
    }

    pub fn moves(&self) -> usize {
        self.n
    }

    pub fn alternatives(&self) -> u64 {
        self.l
    }

    /// All plays, in lexicographic order (l^n codes).
    pub fn plays(&self) -> Vec<SeqCode> {
        self.sequences_of_length(self.n)
    }

    /// All position codes of the given length over this alphabet.
    fn sequences_of_length(&self, len: usize) -> Vec<SeqCode> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u64>| {
                    (0..self.l).map(move |e| {
                        let mut q = p.clone();
                        q.push(e);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(|p| SeqCode::encode_u64(&p)).collect()
    }

    /// Is `s` a play of this arena?
    pub fn admits(&self, s: &SeqCode) -> bool {
        s.len() == self.n && s.entries_u64().iter().all(|&e| e < self.l)
    }

    /// The decision positions of `side`: every position of matching
    /// parity that can occur before the last move.
    fn decision_positions(&self, side: Side) -> Vec<SeqCode> {
        (0..self.n)
            .filter(|k| k % 2 == side.parity())
            .flat_map(|k| self.sequences_of_length(k))
            .collect()
    }
}

/// A strategy: a side together with a numeric move table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    side: Side,
    table: SeqCode,
}

impl Strategy {
    pub fn new(side: Side, table: SeqCode) -> Strategy {
        Strategy { side, table }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn table(&self) -> &SeqCode {
        &self.table
    }

    /// The move prescribed at a position, read off the table at the
    /// position's code value; positions beyond the table read 0.
    pub fn move_at(&self, position: &SeqCode) -> u64 {
        match usize::try_from(&position.value()) {
            Ok(ix) => self.table.get_u64(ix),
            // The table is a finite code, so astronomically large
            // position values are necessarily beyond its length.
            Err(_) => 0,
        }
    }

    /// The least-valued table realizing the given position-to-move
    /// assignment (zeros elsewhere, trailing zeros trimmed).
    fn canonical(side: Side, assignment: &HashMap<SeqCode, u64>) -> Strategy {
        let mut entries: Vec<u64> = Vec::new();
        for (pos, &mv) in assignment {
            if mv == 0 {
                continue;
            }
            let ix = usize::try_from(&pos.value()).expect("position value fits an index");
            if entries.len() <= ix {
                entries.resize(ix + 1, 0);
            }
            entries[ix] = mv;
        }
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Strategy::new(side, SeqCode::encode_u64(&entries))
    }
}

/// Does the play obey the strategy?  At every position of the
/// strategy's parity the played entry must equal the table's value at
/// the code of the preceding position.
pub fn obeys(s: &SeqCode, strategy: &Strategy) -> bool {
    let entries = s.entries_u64();
    (strategy.side.parity()..entries.len()).step_by(2).all(|k| {
        let position = s.prefix(k).expect("prefix within length");
        entries[k] == strategy.move_at(&position)
    })
}

/// Exact strategy bounds: `F` exceeds every position code of length at
/// most `n` over `l` alternatives, and `G` exceeds every strategy table
/// defined on all positions below `F`.
pub fn strat_bounds(n: usize, l: u64) -> (Nat, Nat) {
    assert!(l >= 1);
    let arena = Arena::new(n, l);
    let f = (0..=n)
        .flat_map(|k| arena.sequences_of_length(k))
        .map(|c| c.value())
        .max()
        .expect("at least the empty position")
        + 1u32;
    // The largest table on positions below F is the constant l-1 table
    // of that length; its value is the code of (l-1, ..., l-1).
    let f_len = usize::try_from(&f).expect("bound fits an index in supported ranges");
    let g = SeqCode::encode_u64(&vec![l - 1; f_len]).value() + 1u32;
    (f, g)
}

/// The decision positions of one side together with, for every play,
/// the obedience constraints as (position index, required move) pairs.
/// Lets the solver exhaust extensional strategy classes as plain move
/// vectors instead of numeric tables.
struct ConstraintTable {
    positions: Vec<SeqCode>,
    constraints: Vec<Vec<(usize, u64)>>,
}

impl ConstraintTable {
    fn build(side: Side, arena: &Arena, plays: &[SeqCode]) -> ConstraintTable {
        let positions = arena.decision_positions(side);
        let index: HashMap<&SeqCode, usize> =
            positions.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let constraints = plays
            .iter()
            .map(|s| {
                let entries = s.entries_u64();
                (side.parity()..entries.len())
                    .step_by(2)
                    .map(|k| (index[&s.prefix(k).expect("prefix in range")], entries[k]))
                    .collect()
            })
            .collect();
        ConstraintTable { positions, constraints }
    }

    fn obeys(&self, play_ix: usize, assignment: &[u64]) -> bool {
        self.constraints[play_ix].iter().all(|&(pos, mv)| assignment[pos] == mv)
    }

    /// Run `visit` on every assignment of moves to the decision
    /// positions, in lexicographic order.
    fn for_each_assignment(&self, l: u64, mut visit: impl FnMut(&[u64])) {
        let mut assignment = vec![0u64; self.positions.len()];
        loop {
            visit(&assignment);
            let Some(bump) = assignment.iter().rposition(|&m| m + 1 < l) else {
                return;
            };
            assignment[bump] += 1;
            assignment[bump + 1..].fill(0);
        }
    }

    fn to_strategy(&self, side: Side, assignment: &[u64]) -> Strategy {
        let map: HashMap<SeqCode, u64> = self
            .positions
            .iter()
            .cloned()
            .zip(assignment.iter().copied())
            .collect();
        Strategy::canonical(side, &map)
    }
}

/// The outcome of solving a game: the half-win verdict with its least
/// counterstrategy when negative, and a winning strategy when positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameReport {
    pub halfwin: bool,
    pub counterstrategy: Option<Strategy>,
    pub win: Option<Strategy>,
}

/// Solve the game for `side` on target set `x`.
///
/// The half-win verdict exhausts opposing strategies; the winning
/// strategy, when one exists, is built by backward induction, choosing
/// the least winning move at every reachable decision position.
pub fn solve(side: Side, arena: &Arena, x: &[SeqCode]) -> Result<GameReport, GameError> {
    for s in x {
        if !arena.admits(s) {
            return Err(GameError::PlayOutsideArena(s.clone()));
        }
    }
    let plays = arena.plays();
    let in_x = |s: &SeqCode| x.contains(s);
    let x_mask: Vec<bool> = plays.iter().map(&in_x).collect();

    // Exhaust opposing strategy classes; among the falsifying classes,
    // report the one with the least numeric table.
    let table = ConstraintTable::build(side.opponent(), arena, &plays);
    let mut falsifiers: Vec<Vec<u64>> = Vec::new();
    table.for_each_assignment(arena.alternatives(), |assignment| {
        let hit = (0..plays.len()).any(|i| x_mask[i] && table.obeys(i, assignment));
        if !hit {
            falsifiers.push(assignment.to_vec());
        }
    });
    let counterstrategy = falsifiers
        .into_iter()
        .map(|a| table.to_strategy(side.opponent(), &a))
        .min_by_key(|s| s.table.value());
    let halfwin = counterstrategy.is_none();

    // Backward induction on positions: the solving side needs some
    // winning child at its own positions and all children winning at the
    // opponent's.
    fn winning(arena: &Arena, side: Side, in_x: &dyn Fn(&SeqCode) -> bool, pos: &SeqCode) -> bool {
        if pos.len() == arena.moves() {
            return in_x(pos);
        }
        let children = (0..arena.alternatives())
            .map(|k| pos.concat(&SeqCode::encode_u64(&[k])));
        if pos.len() % 2 == side.parity() {
            children.into_iter().any(|c| winning(arena, side, in_x, &c))
        } else {
            children.into_iter().all(|c| winning(arena, side, in_x, &c))
        }
    }

    let win = if winning(arena, side, &in_x, &SeqCode::empty()) {
        // Walk the winning region, fixing the least winning move at own
        // positions and branching over all opponent replies.
        let mut assignment = HashMap::new();
        let mut frontier = vec![SeqCode::empty()];
        while let Some(pos) = frontier.pop() {
            if pos.len() == arena.moves() {
                continue;
            }
            if pos.len() % 2 == side.parity() {
                let k = (0..arena.alternatives())
                    .find(|&k| {
                        winning(arena, side, &in_x, &pos.concat(&SeqCode::encode_u64(&[k])))
                    })
                    .expect("winning position has a winning move");
                assignment.insert(pos.clone(), k);
                frontier.push(pos.concat(&SeqCode::encode_u64(&[k])));
            } else {
                for k in 0..arena.alternatives() {
                    frontier.push(pos.concat(&SeqCode::encode_u64(&[k])));
                }
            }
        }
        Some(Strategy::canonical(side, &assignment))
    } else {
        None
    };

    debug_assert_eq!(halfwin, win.is_some(), "finite determinacy");
    Ok(GameReport { halfwin, counterstrategy, win })
}

/// Finite choice: if every row `n < k` of the relation is inhabited,
/// return the least selection; otherwise report an empty row.
pub fn finite_choice(
    k: u64,
    l: u64,
    rel: impl Fn(u64, u64) -> bool,
) -> Result<Vec<u64>, u64> {
    (0..k)
        .map(|n| (0..l).find(|&m| rel(n, m)).ok_or(n))
        .collect()
}

/// The contraposition of finite choice: if every selector `s : k -> l`
/// hits the relation somewhere, return a row `n < k` on which the
/// relation holds everywhere; otherwise report the least selector that
/// misses everywhere.
pub fn contrapose_find(
    k: u64,
    l: u64,
    rel: impl Fn(u64, u64) -> bool,
) -> Result<u64, Vec<u64>> {
    // Exhaust selectors for a falsifier first; the induction below is
    // only sound under the hypothesis.
    let mut falsifier = vec![0u64; k as usize];
    'search: loop {
        if (0..k).all(|n| !rel(n, falsifier[n as usize])) {
            return Err(falsifier);
        }
        for n in (0..k as usize).rev() {
            if falsifier[n] + 1 < l {
                falsifier[n] += 1;
                falsifier[n + 1..].fill(0);
                continue 'search;
            }
        }
        break;
    }

    // The inductive argument: weaken the relation on the first k rows by
    // the fact in question about the last row, recurse, then split.
    fn ind(k: u64, l: u64, rel: &dyn Fn(u64, u64) -> bool) -> u64 {
        if k == 1 {
            // Every one-row selector hits, so the single row is full.
            return 0;
        }
        let last = k - 1;
        for m in 0..l {
            let weakened = |n: u64, j: u64| rel(n, j) || rel(last, m);
            let row = ind(k - 1, l, &weakened);
            if (0..l).all(|j| rel(row, j)) {
                return row;
            }
            // Otherwise the weakened fullness came from the last row.
            debug_assert!(rel(last, m));
        }
        last
    }
    Ok(ind(k, l, &rel))
}

/// The diagonal argument for two-move games: build the reply that plays
/// 1 exactly when `<n,0>` lies in the set, and scan for the column it
/// exposes, where both `<n,0>` and `<n,1>` are present.
pub fn two_move_diag(d: &[SeqCode], budget: u64) -> Option<u64> {
    for n in 0..=budget {
        let gamma = u64::from(d.contains(&SeqCode::encode_u64(&[n, 0])));
        if d.contains(&SeqCode::encode_u64(&[n, gamma])) {
            debug_assert_eq!(gamma, 1);
            debug_assert!(d.contains(&SeqCode::encode_u64(&[n, 0])));
            return Some(n);
        }
    }
    None
}

/// Is `s` an even-length code whose odd positions are binary (the shape
/// of a play where the second mover answers with bits)?
fn check_answer_shape(s: &SeqCode) -> Result<(), GameError> {
    if !s.len().is_multiple_of(2) {
        return Err(GameError::BadShape(s.clone(), "odd length"));
    }
    let entries = s.entries_u64();
    if entries.iter().skip(1).step_by(2).any(|&i| i >= 2) {
        return Err(GameError::BadShape(s.clone(), "non-binary answer entry"));
    }
    Ok(())
}

fn check_binary(s: &SeqCode, what: &'static str) -> Result<(), GameError> {
    if s.is_bin() {
        Ok(())
    } else {
        Err(GameError::BadShape(s.clone(), what))
    }
}

/// Translate a play with arbitrary first-mover entries into the binary
/// tree: the move `n` becomes `n` postponing rounds `<0,_>` followed by
/// the marker round `<1,i>` carrying the original answer.
pub fn postpone_encode(s: &SeqCode) -> Result<SeqCode, GameError> {
    check_answer_shape(s)?;
    let entries = s.entries_u64();
    let mut out = Vec::new();
    for pair in entries.chunks(2) {
        let postpone = usize::try_from(pair[0]).expect("move fits a count");
        out.extend(std::iter::repeat_n(0, 2 * postpone));
        out.push(1);
        out.push(pair[1]);
    }
    Ok(SeqCode::encode_u64(&out))
}

/// Read a binary play back: count postponing rounds up to each marker;
/// an unfinished trailing run of postponing rounds is dropped.
pub fn postpone_decode(a: &SeqCode) -> Result<SeqCode, GameError> {
    check_binary(a, "not a binary code")?;
    if !a.len().is_multiple_of(2) {
        return Err(GameError::BadShape(a.clone(), "odd length"));
    }
    let entries = a.entries_u64();
    let mut out = Vec::new();
    let mut postponed: u64 = 0;
    for pair in entries.chunks(2) {
        if pair[0] == 0 {
            postponed += 1;
        } else {
            out.push(postponed);
            out.push(pair[1]);
            postponed = 0;
        }
    }
    Ok(SeqCode::encode_u64(&out))
}

/// The finite subsequence of `b` read above `a`: entries `b(a * k)` for
/// `k = 0, 1, ...` up to the first index past the end of `b`.
fn shifted_prefix(b: &SeqCode, a: &SeqCode) -> SeqCode {
    let mut out = Vec::new();
    for k in 0u64.. {
        let ix = a.concat(&SeqCode::from_value(Nat::from(k))).value();
        match usize::try_from(&ix) {
            Ok(ix) if ix < b.len() => out.push(b.get_u64(ix)),
            _ => break,
        }
    }
    SeqCode::encode_u64(&out)
}

/// Decide whether the position `a` is safe for the enumerated
/// answer-function prefix `phi` under the conjecture `c`.
///
/// `phi` lists pairs `(b, d)`: "on inputs extending `b`, the answer
/// extends `d`".  `bar_cert` must be a finite set of binary codes
/// barring the whole binary tree; among them, the supporting codes are
/// those paired with an answer extending `a` while themselves extending
/// `c`.  The position is safe when every binary continuation of maximal
/// supported length passes through a supporting code read above `a`.
pub fn safe(
    phi: &[(SeqCode, SeqCode)],
    bar_cert: &[SeqCode],
    a: &SeqCode,
    c: &SeqCode,
) -> Result<bool, GameError> {
    check_answer_shape(a)?;
    check_binary(c, "conjecture is not binary")?;
    let mut depth = 0;
    for b in bar_cert {
        check_binary(b, "certificate node is not binary")?;
        depth = depth.max(b.len());
    }
    if !bar_depth(&NodePredicate::from_codes(bar_cert.to_vec()), depth) {
        return Err(GameError::NotABar(depth));
    }

    let is_initial = |small: &SeqCode, big: &SeqCode| {
        matches!(small.compare(big), SeqOrder::Equal | SeqOrder::ProperInitial)
    };
    let supporting: Vec<SeqCode> = bar_cert
        .iter()
        .filter(|b| {
            phi.iter()
                .any(|(pb, pd)| pb == *b && is_initial(c, pb) && is_initial(a, pd))
        })
        .map(|b| shifted_prefix(b, a))
        .collect();
    let p = supporting.iter().map(|t| t.len()).max().unwrap_or(0);
    Ok(bin_codes_of_length(p)
        .all(|e| supporting.iter().any(|t| is_initial(t, &e))))
}
