//! A registry of explicit stream-to-stream reductions with depth-bounded
//! verifiable contracts.
//!
//! Each catalogue entry packages one construction: a *transform* that turns
//! an input [`Instance`] into derived streams, codes, formula codes, or
//! rational intervals, together with a depth-bounded *antecedent* (the
//! finite surrogate of the construction's hypothesis) and *consequent* (the
//! finite surrogate of its conclusion).  Verifying an entry evaluates both
//! sides to a given depth and reports a counterexample exactly when the
//! antecedent holds but the consequent does not; a failed contract is a
//! report, never an error.
//!
//! Contracts are depth-relative throughout: "the marks bar the tree" always
//! means "every binary code of the given length has a marked initial part",
//! and "the root is secured" always refers to the finite securedness table
//! built to that depth.  Transforms are budget-relative in the same spirit:
//! the output is faithful up to the stated budget and withheld beyond it.
//!
//! One note on coverage: the catalogue has a single entry
//! (`g_game_to_3move`) for the two-step game compression, because the
//! converse direction is definitional — a three-move win restricted to its
//! first two moves is already a win of the original shape — and adds no
//! checkable content beyond what that entry verifies.

mod entries;

use std::fmt;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coding::{Nat, SeqCode};
use crate::reals::RatInterval;
use crate::streams::{BairePoint, FinSeed};

/// Probe budget used inside antecedent and consequent checks for
/// enumerated-set membership and other linear scans.
pub const CHECK_BUDGET: u64 = 64;

/// A finite, serializable input to a reduction: seeded streams, finite code
/// sets, machine numbers, and rational interval lists.  Which of the four
/// slots an entry reads is part of its signature.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    /// Finitely seeded points of Baire space.
    #[serde(default)]
    pub streams: Vec<FinSeed>,
    /// Finite sets of sequence codes.
    #[serde(default)]
    pub sets: Vec<Vec<SeqCode>>,
    /// Plain numeric parameters.
    #[serde(default)]
    pub numbers: Vec<u64>,
    /// Lists of rational intervals.
    #[serde(default)]
    pub intervals: Vec<Vec<RatInterval>>,
}

impl Instance {
    /// The hex SHA-256 digest of the canonical JSON form; used to key
    /// reports deterministically.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("instances serialize");
        let hash = Sha256::digest(json.as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The `i`-th stream as a point.
    pub(crate) fn point(&self, i: usize) -> BairePoint {
        self.streams[i].point()
    }
}

/// What a transform produces.
#[derive(Debug, Clone)]
pub enum Output {
    /// Derived points, queryable up to the transform budget.
    Points(Vec<BairePoint>),
    /// Finite sequence codes.
    Codes(Vec<SeqCode>),
    /// Plain numbers (formula codes, verdict codes).
    Values(Vec<Nat>),
    /// Rational intervals.
    Intervals(Vec<RatInterval>),
}

impl Output {
    /// A deterministic textual sample of the output: points are read on
    /// `0..budget`, the finite shapes are printed in full.
    pub fn fingerprint(&self, budget: u64) -> String {
        match self {
            Output::Points(ps) => ps
                .iter()
                .map(|p| format!("{:?}", p.prefix_values(budget as usize)))
                .collect::<Vec<_>>()
                .join("|"),
            Output::Codes(cs) => cs
                .iter()
                .map(|c| c.value().to_string())
                .collect::<Vec<_>>()
                .join("|"),
            Output::Values(vs) => {
                vs.iter().map(Nat::to_string).collect::<Vec<_>>().join("|")
            }
            Output::Intervals(ivs) => ivs
                .iter()
                .map(|iv| format!("{}..{}", iv.lo(), iv.hi()))
                .collect::<Vec<_>>()
                .join("|"),
        }
    }
}

/// Errors raised by catalogue operations.  Contract violations are not
/// errors; they appear as counterexamples in a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    /// The identifier names no catalogue entry.
    #[error("no catalogue entry named {0}")]
    UnknownEntry(String),
    /// The instance does not fit the entry's input signature.
    #[error("{id} expects {expected}")]
    SignatureMismatch { id: String, expected: String },
    /// The transform ran out of budget while materializing the output
    /// component at the given index.
    #[error("{id} exceeded its budget at output index {index}")]
    BudgetExceeded { id: String, index: u64 },
}

/// Outcome of one side of a contract check.
#[derive(Debug, Clone)]
pub(crate) struct Check {
    pub(crate) holds: bool,
    pub(crate) note: String,
}

impl Check {
    pub(crate) fn from(holds: bool, note: impl Into<String>) -> Self {
        Check { holds, note: note.into() }
    }
}

/// Expected slot counts for an entry's input.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Sig {
    pub(crate) streams: usize,
    pub(crate) sets: usize,
    pub(crate) numbers: usize,
    pub(crate) intervals: usize,
    /// Whether the stream/interval counts are minimums rather than exact
    /// (for the entries parametrized by a finite family).
    pub(crate) variadic: bool,
}

impl Sig {
    fn describe(&self) -> String {
        let qual = if self.variadic { "at least " } else { "" };
        format!(
            "{qual}{} stream(s), {} code set(s), {} number(s), {} interval list(s)",
            self.streams, self.sets, self.numbers, self.intervals
        )
    }

    fn admits(&self, inst: &Instance) -> bool {
        let counts_ok = if self.variadic {
            inst.streams.len() >= self.streams && inst.intervals.len() >= self.intervals
        } else {
            inst.streams.len() == self.streams && inst.intervals.len() == self.intervals
        };
        counts_ok && inst.sets.len() == self.sets && inst.numbers.len() == self.numbers
    }
}

/// One catalogue entry: a named construction with its contract.
#[derive(Clone)]
pub struct ReductionEntry {
    /// Stable identifier, also the CLI name.
    pub id: &'static str,
    /// A one-line description of the construction itself: what is built
    /// from what, and how the contract reads it.
    pub citation: &'static str,
    pub(crate) sig: Sig,
    pub(crate) transform: fn(&Instance, u64) -> Result<Output, ReductionError>,
    pub(crate) antecedent: fn(&Instance, usize, u64) -> Check,
    pub(crate) consequent: fn(&Instance, usize, u64) -> Check,
    pub(crate) generate: fn(&mut ChaCha8Rng, bool) -> Instance,
}

impl fmt::Debug for ReductionEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReductionEntry").field("id", &self.id).finish()
    }
}

impl ReductionEntry {
    /// The all-zero instance of this entry's signature: every stream is the
    /// zero seed, sets and interval lists are empty only where permitted.
    pub fn zero_instance(&self) -> Instance {
        entries::zero_instance(&self.sig, self.id)
    }

    fn validate(&self, inst: &Instance) -> Result<(), ReductionError> {
        if self.sig.admits(inst) && entries::extra_validation(self.id, inst) {
            Ok(())
        } else {
            Err(ReductionError::SignatureMismatch {
                id: self.id.to_string(),
                expected: self.sig.describe(),
            })
        }
    }
}

/// Result of verifying one entry on one instance to one depth.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub digest: String,
    pub depth: usize,
    pub antecedent_holds: bool,
    pub consequent_holds: bool,
    /// Compact notes from both checks.
    pub witness: String,
    /// Present exactly when the antecedent holds and the consequent fails.
    pub counterexample: Option<String>,
    pub elapsed_micros: u128,
}

impl VerificationReport {
    /// One structured text record on a single line.
    pub fn line(&self) -> String {
        let dash = |s: &str| if s.is_empty() { "-".to_string() } else { s.replace(' ', "_") };
        format!(
            "id={} digest={} depth={} antecedent={} consequent={} witness={} counterexample={} elapsed_us={}",
            self.id,
            self.digest,
            self.depth,
            self.antecedent_holds,
            self.consequent_holds,
            dash(&self.witness),
            dash(self.counterexample.as_deref().unwrap_or("")),
            self.elapsed_micros,
        )
    }
}

/// The full catalogue, in fixed order.
pub fn registry() -> Vec<ReductionEntry> {
    entries::catalogue()
}

/// Looks up one entry by identifier.
pub fn entry(id: &str) -> Result<ReductionEntry, ReductionError> {
    registry()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| ReductionError::UnknownEntry(id.to_string()))
}

/// Runs an entry's transform on an instance with the given budget.
pub fn apply(id: &str, inst: &Instance, budget: u64) -> Result<Output, ReductionError> {
    let e = entry(id)?;
    e.validate(inst)?;
    (e.transform)(inst, budget)
}

/// Evaluates an entry's contract on an instance at the given depth.  The
/// seed drives only the sampled portions of checks that cannot be
/// exhaustive; everything else is deterministic in the inputs.
pub fn verify(
    id: &str,
    inst: &Instance,
    depth: usize,
    seed: u64,
) -> Result<VerificationReport, ReductionError> {
    let e = entry(id)?;
    e.validate(inst)?;
    let start = Instant::now();
    let a = (e.antecedent)(inst, depth, seed);
    let c = (e.consequent)(inst, depth, seed);
    let counterexample = if a.holds && !c.holds { Some(c.note.clone()) } else { None };
    Ok(VerificationReport {
        id: e.id.to_string(),
        digest: inst.digest(),
        depth,
        antecedent_holds: a.holds,
        consequent_holds: c.holds,
        witness: format!("{};{}", a.note, c.note),
        counterexample,
        elapsed_micros: start.elapsed().as_micros(),
    })
}

/// Produces `count` deterministic instances for an entry, biased so that
/// roughly half satisfy the antecedent (entries whose hypothesis is
/// decidably true on all finite inputs generate unbiased noise instead).
pub fn generate_instances(
    id: &str,
    count: usize,
    seed: u64,
) -> Result<Vec<Instance>, ReductionError> {
    let e = entry(id)?;
    let mut hasher = Sha256::new();
    hasher.update(id.as_bytes());
    hasher.update(seed.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(hasher.finalize().into());
    Ok((0..count).map(|i| (e.generate)(&mut rng, i % 2 == 0)).collect())
}
