//! Rule-given points of Baire space with memoized prefixes.
//!
//! A [`BairePoint`] is a total deterministic map from naturals to naturals.
//! Indices are arbitrary-precision because subsequence access works through
//! sequence codes: the n-th subsequence of `a` reads `a` at the code
//! `<n> * m`, so even small subsequence positions address large indices.
//!
//! Test and CLI instances are always [`FinSeed`]-induced points (a finite
//! prefix followed by a zero or cyclic tail), which keeps every
//! depth-bounded check total, deterministic, and serializable.  Queries
//! about semi-decidable properties take an explicit budget and report
//! "unknown at budget" distinctly from "false".

use crate::coding::{Nat, SeqCode};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use thiserror::Error;

/// Tail rule of a finitely-seeded point: zeros forever, or a repeating cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    Zero,
    Cycle(Vec<u64>),
}

/// A finitely-described point: explicit prefix, then the tail rule.
/// This is the CLI's instance currency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinSeed {
    pub prefix: Vec<u64>,
    pub tail: Tail,
}

impl FinSeed {
    pub fn zeros() -> Self {
        FinSeed { prefix: Vec::new(), tail: Tail::Zero }
    }

    pub fn new(prefix: Vec<u64>, tail: Tail) -> Self {
        FinSeed { prefix, tail }
    }

    /// Value at index `n`.
    pub fn at(&self, n: &Nat) -> u64 {
        if let Some(i) = n.to_usize() {
            if i < self.prefix.len() {
                return self.prefix[i];
            }
        }
        match &self.tail {
            Tail::Zero => 0,
            Tail::Cycle(cycle) => {
                if cycle.is_empty() {
                    return 0;
                }
                let offset = n - Nat::from(self.prefix.len());
                let idx = offset.mod_floor(&Nat::from(cycle.len()));
                cycle[idx.to_usize().expect("cycle index fits usize")]
            }
        }
    }

    /// The induced point.
    pub fn point(&self) -> BairePoint {
        let seed = self.clone();
        BairePoint::from_rule("seed", move |n| seed.at(n))
    }
}

struct Inner {
    name: String,
    rule: Box<dyn Fn(&Nat) -> u64 + Send + Sync>,
    memo: Mutex<HashMap<Nat, u64>>,
}

/// A total infinite sequence of naturals given by a pure rule, with a
/// thread-safe memo.  Cloning shares the memo.
#[derive(Clone)]
pub struct BairePoint {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for BairePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BairePoint({})", self.inner.name)
    }
}

impl BairePoint {
    /// Wraps a pure rule.  The rule must be deterministic; memoization is
    /// observationally invisible.
    pub fn from_rule(
        name: impl Into<String>,
        rule: impl Fn(&Nat) -> u64 + Send + Sync + 'static,
    ) -> Self {
        BairePoint {
            inner: Arc::new(Inner {
                name: name.into(),
                rule: Box::new(rule),
                memo: Mutex::new(HashMap::new()),
            }),
        }
    }

    /// The everywhere-zero point.
    pub fn zero() -> Self {
        BairePoint::from_rule("zero", |_| 0)
    }

    /// The constant point `k, k, k, ...`.
    pub fn constant(k: u64) -> Self {
        BairePoint::from_rule(format!("const({k})"), move |_| k)
    }

    /// A point whose n-th subsequence is induced by `seeds[n]` (and is zero
    /// for `n >= seeds.len()`).  Indices that are not of the form
    /// `<n> * m` (i.e. the empty code) read 0.
    pub fn from_subsequence_seeds(seeds: Vec<FinSeed>) -> Self {
        BairePoint::from_rule("subseq-seeds", move |i| {
            let code = SeqCode::from_value(i.clone());
            if code.is_empty() {
                return 0;
            }
            let n = match code.get(0).to_usize() {
                Some(n) => n,
                None => return 0,
            };
            match seeds.get(n) {
                Some(seed) => seed.at(&code.suffix(1).expect("nonempty").value()),
                None => 0,
            }
        })
    }

    /// Value at an arbitrary-precision index.
    pub fn at_nat(&self, n: &Nat) -> u64 {
        if let Some(&v) = self.inner.memo.lock().expect("memo lock").get(n) {
            return v;
        }
        let v = (self.inner.rule)(n);
        self.inner.memo.lock().expect("memo lock").insert(n.clone(), v);
        v
    }

    /// Value at a machine-word index.
    pub fn at(&self, n: u64) -> u64 {
        self.at_nat(&Nat::from(n))
    }

    /// First `n` values.
    pub fn prefix_values(&self, n: usize) -> Vec<u64> {
        (0..n as u64).map(|i| self.at(i)).collect()
    }

    /// Code of the first `n` values.
    pub fn prefix_code(&self, n: usize) -> SeqCode {
        SeqCode::encode_u64(&self.prefix_values(n))
    }

    /// The shifted point reading `self` past the finite piece `s`:
    /// `shift(a, s)(m) = a(s * m)` with `m` read as a code.
    pub fn shift(&self, s: &SeqCode) -> BairePoint {
        let base = self.clone();
        let s = s.clone();
        BairePoint::from_rule(format!("{}^shift", self.inner.name), move |m| {
            let tail = SeqCode::from_value(m.clone());
            base.at_nat(&s.concat(&tail).value())
        })
    }

    /// The n-th subsequence: `shift` by the singleton `<n>`.
    pub fn subsequence(&self, n: u64) -> BairePoint {
        self.shift(&SeqCode::encode_u64(&[n]))
    }

    /// Membership in the decided set: `n` is in `D` iff the value at `n`
    /// is nonzero.
    pub fn d_member(&self, n: u64) -> bool {
        self.at(n) != 0
    }

    /// Least index `p <= budget` with value `n+1`, witnessing enumerated-set
    /// membership.  `None` means "not found within budget", never "not a
    /// member".
    pub fn e_witness(&self, n: u64, budget: u64) -> Option<u64> {
        (0..=budget).find(|&p| self.at(p) == n + 1)
    }

    /// Turns a decided set into an enumeration of the same set:
    /// the result maps `n` to `n+1` when `self(n)` is nonzero, else to 0.
    pub fn d_to_e(&self) -> BairePoint {
        let base = self.clone();
        BairePoint::from_rule(format!("d_to_e({})", self.inner.name), move |n| {
            if base.at_nat(n) != 0 {
                n.to_u64().map(|v| v + 1).unwrap_or(u64::MAX)
            } else {
                0
            }
        })
    }
}

/// Which form of choice sequence [`sigma_ac_choice`] extracts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChoiceVariant {
    /// The chosen value itself: `g(n) = a^n(d(n)) - 1` where `d(n)` is the
    /// least index with `a^n(d(n)) > 0`.
    Number,
    /// The chosen witness code: the n-th subsequence of the result is the
    /// least code `s` with `a^n(s) != 0`, padded with zeros.
    Code,
}

/// Budget exhaustion during a per-coordinate witness search.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("choice search exhausted budget at coordinate {coordinate}")]
pub struct ChoiceFailure {
    pub coordinate: u64,
}

/// The least-witness choice scan: for each coordinate `n <= budget`, finds
/// the least witness index `<= budget` in the n-th subsequence and packages
/// the choices as a single point.  Fails on the first coordinate whose
/// search exhausts the budget.
pub fn sigma_ac_choice(
    alpha: &BairePoint,
    variant: ChoiceVariant,
    budget: u64,
) -> Result<BairePoint, ChoiceFailure> {
    match variant {
        ChoiceVariant::Number => {
            let mut values = Vec::new();
            for n in 0..=budget {
                let sub = alpha.subsequence(n);
                let p = (0..=budget)
                    .find(|&p| sub.at(p) > 0)
                    .ok_or(ChoiceFailure { coordinate: n })?;
                values.push(sub.at(p) - 1);
            }
            Ok(FinSeed::new(values, Tail::Zero).point())
        }
        ChoiceVariant::Code => {
            let mut choices: Vec<SeqCode> = Vec::new();
            for n in 0..=budget {
                let sub = alpha.subsequence(n);
                // Least code in numeric order.
                let s = (0..=budget)
                    .find(|&s| sub.at(s) != 0)
                    .ok_or(ChoiceFailure { coordinate: n })?;
                choices.push(SeqCode::from_value(Nat::from(s)));
            }
            Ok(BairePoint::from_rule("sigma-ac-code", move |i| {
                let code = SeqCode::from_value(i.clone());
                if code.is_empty() {
                    return 0;
                }
                let n = match code.get(0).to_usize() {
                    Some(n) => n,
                    None => return 0,
                };
                let m = code.suffix(1).expect("nonempty").value();
                match (choices.get(n), m.to_usize()) {
                    (Some(s), Some(pos)) => s.get_u64(pos),
                    _ => 0,
                }
            }))
        }
    }
}

/// Bounded existence probe for "some value is nonzero".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpoVerdict {
    /// Least index with a nonzero value.
    Witness(u64),
    /// All values up to the budget are zero; the unbounded claim is not made.
    AllZeroUpTo(u64),
}

/// Scans for the least nonzero index up to the budget.
pub fn lpo_probe(alpha: &BairePoint, budget: u64) -> LpoVerdict {
    match (0..=budget).find(|&n| alpha.at(n) != 0) {
        Some(n) => LpoVerdict::Witness(n),
        None => LpoVerdict::AllZeroUpTo(budget),
    }
}

/// Bounded parity disjunction probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LlpoVerdict {
    /// Commit to "every even position seen first is zero": chosen when the
    /// least nonzero index is odd.
    EvenDisjunct,
    /// Chosen when the least nonzero index is even.
    OddDisjunct,
    /// No nonzero value up to the budget; both disjuncts still open.
    BothUpTo(u64),
}

/// Decides the parity disjunction from the least nonzero index, when one
/// exists within the budget.
pub fn llpo_probe(alpha: &BairePoint, budget: u64) -> LlpoVerdict {
    match (0..=budget).find(|&n| alpha.at(n) != 0) {
        Some(n) if n % 2 == 1 => LlpoVerdict::EvenDisjunct,
        Some(_) => LlpoVerdict::OddDisjunct,
        None => LlpoVerdict::BothUpTo(budget),
    }
}
