//! Propositional formulas as numbers, their evaluation along points and
//! prefixes, and two small side theories: positive first-order formulas
//! with strong negation, and a depth-bounded evaluator for the three
//! implication shapes the tool suite compares.
//!
//! A formula code unpairs as `(tag, body)`.  Tag `0` is an atom whose
//! body is its index; tag `1` negates the body; tags `2` and `3` read
//! the body as a sequence code listing the conjuncts or disjuncts.
//! Everything below works on codes directly — the recursion bottoms out
//! because both halves of a pair, and every entry of a sequence code,
//! are strictly below the code itself (atoms excepted, and those are
//! leaves).

use crate::coding::{pair, unpair, Nat, SeqCode};
use crate::secured::{avoidance_witness, NodePredicate};
use crate::streams::{BairePoint, FinSeed, Tail};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from formula-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    /// `eval_prefix` requires the formula code to lie below the prefix
    /// length, which bounds every atom index occurring in it.
    #[error("formula code {code} is not below the prefix length {len}")]
    PrefixTooShort { code: Nat, len: usize },
    /// The characteristic formula is only defined on binary codes.
    #[error("sequence code {0} is not binary")]
    NotBinary(Nat),
    /// A code that does not decode to a formula where one is required.
    #[error("code {0} is not a formula")]
    NotAFormula(Nat),
    /// Joint realizability is only decided over a bounded atom range.
    #[error("formula set mentions atom {0}, beyond the search range")]
    AtomRangeExceeded(Nat),
}

const TAG_ATOM: u32 = 0;
const TAG_NOT: u32 = 1;
const TAG_AND: u32 = 2;
const TAG_OR: u32 = 3;

/// The atom with index `n`.
pub fn atom(n: &Nat) -> Nat {
    pair(&Nat::from(TAG_ATOM), n)
}

/// The negation of the formula `m`.
pub fn negation(m: &Nat) -> Nat {
    pair(&Nat::from(TAG_NOT), m)
}

/// The conjunction of the listed formulas; empty input is verum.
pub fn conjunction(items: &[Nat]) -> Nat {
    pair(&Nat::from(TAG_AND), &SeqCode::encode(items.to_vec()).value())
}

/// The disjunction of the listed formulas; empty input is falsum.
pub fn disjunction(items: &[Nat]) -> Nat {
    pair(&Nat::from(TAG_OR), &SeqCode::encode(items.to_vec()).value())
}

/// The empty disjunction, realized by no valuation.
pub fn falsum() -> Nat {
    disjunction(&[])
}

/// Shape of a decoded formula, one layer deep.
enum Layer {
    Atom(Nat),
    Not(Nat),
    And(SeqCode),
    Or(SeqCode),
    Junk,
}

fn layer(m: &Nat) -> Layer {
    let (tag, body) = unpair(m);
    match tag.to_u32() {
        Some(TAG_ATOM) => Layer::Atom(body),
        Some(TAG_NOT) => Layer::Not(body),
        Some(TAG_AND) => Layer::And(SeqCode::from_value(body)),
        Some(TAG_OR) => Layer::Or(SeqCode::from_value(body)),
        _ => Layer::Junk,
    }
}

/// Whether `m` codes a formula.
pub fn is_form(m: &Nat) -> bool {
    match layer(m) {
        Layer::Atom(_) => true,
        Layer::Not(body) => is_form(&body),
        Layer::And(items) | Layer::Or(items) => items.entries().iter().all(is_form),
        Layer::Junk => false,
    }
}

/// Whether the atom with index `n` occurs in the formula `m`.
pub fn occurs(n: &Nat, m: &Nat) -> bool {
    match layer(m) {
        Layer::Atom(index) => index == *n,
        Layer::Not(body) => occurs(n, &body),
        Layer::And(items) | Layer::Or(items) => {
            items.entries().iter().any(|item| occurs(n, item))
        }
        Layer::Junk => false,
    }
}

/// Collects the indices of all atoms occurring in `m`, in formula order.
fn collect_atoms(m: &Nat, out: &mut Vec<Nat>) {
    match layer(m) {
        Layer::Atom(index) => out.push(index),
        Layer::Not(body) => collect_atoms(&body, out),
        Layer::And(items) | Layer::Or(items) => {
            items.entries().iter().for_each(|item| collect_atoms(item, out))
        }
        Layer::Junk => {}
    }
}

/// Truth value of `m` along the point `gamma`, reading atom `n` as the
/// bit `min(gamma(n), 1)`.  Codes that are not formulas evaluate to 0.
pub fn eval(gamma: &BairePoint, m: &Nat) -> u8 {
    match layer(m) {
        Layer::Atom(index) => u8::from(gamma.at_nat(&index) != 0),
        Layer::Not(body) => 1 - eval(gamma, &body),
        Layer::And(items) => {
            items.entries().iter().map(|item| eval(gamma, item)).min().unwrap_or(1)
        }
        Layer::Or(items) => {
            items.entries().iter().map(|item| eval(gamma, item)).max().unwrap_or(0)
        }
        Layer::Junk => 0,
    }
}

/// Truth value of `m` along the finite prefix `c`.  Defined only when
/// the code `m` is below the length of `c`; since every atom index in a
/// formula is below the formula's own code, this keeps all atom reads
/// inside the prefix.
pub fn eval_prefix(c: &SeqCode, m: &Nat) -> Result<u8, LogicError> {
    if *m >= Nat::from(c.len()) {
        return Err(LogicError::PrefixTooShort { code: m.clone(), len: c.len() });
    }
    Ok(eval_zero_extended(c, m))
}

/// Truth value of `m` along `c` continued by zeros.  This is total in
/// `m` and agrees with [`eval_prefix`] wherever the latter is defined.
pub fn eval_zero_extended(c: &SeqCode, m: &Nat) -> u8 {
    let gamma = FinSeed::new(c.entries_u64(), Tail::Zero).point();
    eval(&gamma, m)
}

/// The characteristic formula of a binary code `a`: the conjunction
/// whose `i`-th member is atom `i` if `a(i) = 1` and its negation if
/// `a(i) = 0`.  Along any point it evaluates to 1 exactly when the
/// point starts with `a`.
pub fn fm(a: &SeqCode) -> Result<Nat, LogicError> {
    if !a.is_bin() {
        return Err(LogicError::NotBinary(a.value()));
    }
    let members: Vec<Nat> = (0..a.len())
        .map(|i| {
            let at = atom(&Nat::from(i));
            if a.get_u64(i) == 1 { at } else { negation(&at) }
        })
        .collect();
    Ok(conjunction(&members))
}

/// Searches for a valuation realizing every formula in `xs` at once.
///
/// The valuation is returned as a binary code read with zero extension;
/// among the satisfying valuations the one with the least code value is
/// chosen.  The search is exhaustive over the occurring atoms, so the
/// largest occurring atom index must be small.
pub fn realizable(xs: &[Nat]) -> Result<Option<SeqCode>, LogicError> {
    let mut atoms: Vec<Nat> = Vec::new();
    for m in xs {
        if !is_form(m) {
            return Err(LogicError::NotAFormula(m.clone()));
        }
        collect_atoms(m, &mut atoms);
    }
    atoms.sort();
    atoms.dedup();
    let mut indices: Vec<usize> = Vec::with_capacity(atoms.len());
    for a in &atoms {
        match a.to_usize() {
            Some(i) if i < 24 => indices.push(i),
            _ => return Err(LogicError::AtomRangeExceeded(a.clone())),
        }
    }
    let len = indices.iter().max().map_or(0, |i| i + 1);
    let mut best: Option<SeqCode> = None;
    for bits in 0u32..(1 << indices.len()) {
        let mut values = vec![0u64; len];
        for (k, &i) in indices.iter().enumerate() {
            values[i] = u64::from((bits >> k) & 1);
        }
        let gamma = FinSeed::new(values.clone(), Tail::Zero).point();
        if xs.iter().any(|m| eval(&gamma, m) == 0) {
            continue;
        }
        while values.last() == Some(&0) {
            values.pop();
        }
        let candidate = SeqCode::encode_u64(&values);
        let smaller = best
            .as_ref()
            .is_none_or(|b| candidate.value() < b.value());
        if smaller {
            best = Some(candidate);
        }
    }
    Ok(best)
}

/// Renders a formula code in a readable surface syntax:
/// `pN`, `(not F)`, `(and F...)`, `(or F...)`.
pub fn to_sexpr(m: &Nat) -> Option<String> {
    let inner = |items: &SeqCode| -> Option<String> {
        items
            .entries()
            .iter()
            .map(to_sexpr)
            .collect::<Option<Vec<_>>>()
            .map(|parts| parts.join(" "))
    };
    match layer(m) {
        Layer::Atom(index) => Some(format!("p{index}")),
        Layer::Not(body) => Some(format!("(not {})", to_sexpr(&body)?)),
        Layer::And(items) => Some(format!("(and {})", inner(&items)?).replace("(and )", "(and)")),
        Layer::Or(items) => Some(format!("(or {})", inner(&items)?).replace("(or )", "(or)")),
        Layer::Junk => None,
    }
}

/// Parses the surface syntax produced by [`to_sexpr`].
pub fn parse_sexpr(input: &str) -> Option<Nat> {
    fn tokens(input: &str) -> Vec<String> {
        input
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_string)
            .collect()
    }
    fn parse(ts: &[String], at: usize) -> Option<(Nat, usize)> {
        let head = ts.get(at)?;
        if head != "(" {
            let index: Nat = head.strip_prefix('p')?.parse().ok()?;
            return Some((atom(&index), at + 1));
        }
        let op = ts.get(at + 1)?.clone();
        let mut pos = at + 2;
        let mut items = Vec::new();
        while ts.get(pos)? != ")" {
            let (item, next) = parse(ts, pos)?;
            items.push(item);
            pos = next;
        }
        let code = match op.as_str() {
            "not" if items.len() == 1 => negation(&items[0]),
            "and" => conjunction(&items),
            "or" => disjunction(&items),
            _ => return None,
        };
        Some((code, pos + 1))
    }
    let ts = tokens(input);
    let (code, end) = parse(&ts, 0)?;
    (end == ts.len()).then_some(code)
}

/// Positive first-order formulas over finitely many relations, with
/// variables named by de Bruijn index (0 is the innermost binder).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PositiveFormula {
    /// An atomic statement `R(args)` or its direct denial.
    Lit { rel: usize, args: Vec<usize>, negated: bool },
    And(Vec<PositiveFormula>),
    Or(Vec<PositiveFormula>),
    Forall(Box<PositiveFormula>),
    Exists(Box<PositiveFormula>),
}

/// The strong negation: swap the two lattice connectives, swap the two
/// quantifiers, and flip literal polarity.  An involution.
pub fn strong_negation(f: &PositiveFormula) -> PositiveFormula {
    use PositiveFormula::*;
    match f {
        Lit { rel, args, negated } => {
            Lit { rel: *rel, args: args.clone(), negated: !negated }
        }
        And(items) => Or(items.iter().map(strong_negation).collect()),
        Or(items) => And(items.iter().map(strong_negation).collect()),
        Forall(body) => Exists(Box::new(strong_negation(body))),
        Exists(body) => Forall(Box::new(strong_negation(body))),
    }
}

/// Reverses an implication by strongly negating both sides and swapping
/// them: from `phi -> psi` to `psi^~ -> phi^~`.
pub fn contrapose(
    antecedent: &PositiveFormula,
    consequent: &PositiveFormula,
) -> (PositiveFormula, PositiveFormula) {
    (strong_negation(consequent), strong_negation(antecedent))
}

/// A finite relational structure: a domain `{0, .., size-1}` and a list
/// of relations, each a set of argument tuples.
#[derive(Debug, Clone)]
pub struct FiniteStructure {
    size: usize,
    relations: Vec<std::collections::HashSet<Vec<usize>>>,
}

impl FiniteStructure {
    pub fn new(size: usize, relation_count: usize) -> Self {
        FiniteStructure {
            size,
            relations: vec![std::collections::HashSet::new(); relation_count],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Declares `rel(args)` true.
    pub fn insert(&mut self, rel: usize, args: &[usize]) {
        self.relations[rel].insert(args.to_vec());
    }

    pub fn holds(&self, rel: usize, args: &[usize]) -> bool {
        self.relations.get(rel).is_some_and(|r| r.contains(args))
    }
}

impl PositiveFormula {
    /// Classical truth in a finite structure.  `env` assigns values to
    /// de Bruijn indices; unassigned variables read as element 0.
    pub fn holds(&self, structure: &FiniteStructure, env: &[usize]) -> bool {
        use PositiveFormula::*;
        match self {
            Lit { rel, args, negated } => {
                let values: Vec<usize> = args
                    .iter()
                    .map(|&v| env.get(v).copied().unwrap_or(0))
                    .collect();
                structure.holds(*rel, &values) != *negated
            }
            And(items) => items.iter().all(|f| f.holds(structure, env)),
            Or(items) => items.iter().any(|f| f.holds(structure, env)),
            Forall(body) => (0..structure.size).all(|d| {
                let mut inner = vec![d];
                inner.extend_from_slice(env);
                body.holds(structure, &inner)
            }),
            Exists(body) => (0..structure.size).any(|d| {
                let mut inner = vec![d];
                inner.extend_from_slice(env);
                body.holds(structure, &inner)
            }),
        }
    }
}

/// The three implication shapes the depth-bounded evaluator knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeShape {
    /// "The nodes flagged by `p` bar the binary tree, or `q` hits a
    /// nonzero value": a disjunction over the whole tree against an
    /// unbounded existential.
    CantorOpenProposition,
    /// "If `p` is nonzero everywhere then `q` hits a nonzero value",
    /// with both sides decidable pointwise.
    NatDecidableDecidable,
    /// The same implication with the conclusion treated as an opaque
    /// proposition; the bounded evaluation coincides.
    NatDecidableProposition,
}

/// Outcome of a depth-bounded scheme evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeVerdict {
    /// Settled affirmatively within the depth.
    Holds,
    /// Refuted: for the tree-shaped instance, a full-depth node none of
    /// whose initial parts is flagged, while the existential also found
    /// no witness.
    Fails(SeqCode),
    /// Neither settled nor refuted within the depth.
    UnknownAt(u64),
}

/// Evaluates one scheme instance to the given depth.
///
/// For [`SchemeShape::CantorOpenProposition`] the disjunction is
/// decided outright: the flagged nodes either bar the tree at `depth`
/// or a leftmost avoiding node refutes that disjunct, and the
/// existential is searched to the same depth.  For the two arithmetic
/// shapes the implication can hold vacuously (the hypothesis fails
/// within depth) or by witness, but never fails at a finite depth — an
/// unbroken hypothesis with no witness yet is simply still open.
pub fn scheme_eval(
    shape: SchemeShape,
    p: &BairePoint,
    q: &BairePoint,
    depth: u64,
) -> SchemeVerdict {
    match shape {
        SchemeShape::CantorOpenProposition => {
            if (0..depth).any(|n| q.at(n) != 0) {
                return SchemeVerdict::Holds;
            }
            let bar = NodePredicate::from_stream(p.clone());
            let d = usize::try_from(depth).expect("depth fits usize");
            match avoidance_witness(&bar, d) {
                None => SchemeVerdict::Holds,
                Some(node) => SchemeVerdict::Fails(node),
            }
        }
        SchemeShape::NatDecidableDecidable | SchemeShape::NatDecidableProposition => {
            if (0..=depth).any(|n| p.at(n) == 0) {
                return SchemeVerdict::Holds;
            }
            if (0..=depth).any(|n| q.at(n) != 0) {
                return SchemeVerdict::Holds;
            }
            SchemeVerdict::UnknownAt(depth)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_syntax_round_trips() {
        let code = conjunction(&[
            atom(&Nat::from(0u32)),
            negation(&disjunction(&[atom(&Nat::from(1u32))])),
        ]);
        let text = to_sexpr(&code).unwrap();
        assert_eq!(text, "(and p0 (not (or p1)))");
        assert_eq!(parse_sexpr(&text), Some(code));
        assert_eq!(parse_sexpr("(or)"), Some(falsum()));
        assert_eq!(parse_sexpr("p p"), None);
        assert_eq!(parse_sexpr("(not p0 p1)"), None);
    }

    #[test]
    fn falsum_is_never_realized() {
        for bits in 0u64..8 {
            let gamma = FinSeed::new(
                vec![bits & 1, (bits >> 1) & 1, (bits >> 2) & 1],
                Tail::Zero,
            )
            .point();
            assert_eq!(eval(&gamma, &falsum()), 0);
        }
    }

    #[test]
    fn contraposition_swaps_and_negates() {
        use PositiveFormula::*;
        let phi = Lit { rel: 0, args: vec![0], negated: false };
        let psi = Exists(Box::new(Lit { rel: 1, args: vec![0], negated: false }));
        let (a, b) = contrapose(&phi, &psi);
        assert_eq!(a, Forall(Box::new(Lit { rel: 1, args: vec![0], negated: true })));
        assert_eq!(b, Lit { rel: 0, args: vec![0], negated: true });
    }
}
