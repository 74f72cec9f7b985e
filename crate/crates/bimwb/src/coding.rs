//! Numeric codings of finite sequences of naturals.
//!
//! A finite sequence `<m0, ..., m_{k-1}>` is coded by the natural number
//! `2^{m0} * 3^{m1} * ... * p(k-2)^{m_{k-2}} * p(k-1)^{m_{k-1}+1} - 1`,
//! where `p(i)` is the i-th prime; the empty sequence is coded by `0`.
//! Bumping the final exponent makes the coding a bijection between finite
//! sequences and naturals: the length of a code `a` is the least `i` such
//! that no prime `p(j)` with `j >= i` divides `a+1`.
//!
//! The module also provides the Cantor pairing `pair`/`unpair` and the
//! embedding `cod2` of arbitrary sequences into binary ones.
//!
//! Code values are arbitrary-precision: prime-power codes overflow 64 bits
//! at modest lengths.  Entries are arbitrary-precision too (nested codings
//! such as formula numbers store whole codes as entries).  Internally a
//! `SeqCode` keeps the entry list; the numeric value is authoritative at
//! every API and serialization boundary.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::sync::Mutex;
use thiserror::Error;

/// Arbitrary-precision natural number.
pub type Nat = BigUint;

/// Errors from partial coding operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodingError {
    #[error("prefix length {requested} exceeds sequence length {length}")]
    PrefixTooLong { requested: usize, length: usize },
    #[error("entry at position {index} does not fit in a machine word")]
    EntryTooLarge { index: usize },
}

/// Global prime table, extended on demand.
static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// Returns the first `n` primes.
fn primes(n: usize) -> Vec<u64> {
    let mut table = PRIMES.lock().expect("prime table lock");
    while table.len() < n {
        let mut candidate = table.last().map_or(2, |&p| p + 1);
        loop {
            if table.iter().take_while(|&&p| p * p <= candidate).all(|&p| !candidate.is_multiple_of(p)) {
                break;
            }
            candidate += 1;
        }
        table.push(candidate);
    }
    table[..n].to_vec()
}

/// The i-th prime (0-based).
fn prime(i: usize) -> u64 {
    primes(i + 1)[i]
}

/// Relation between two sequence codes under the initial-part ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeqOrder {
    /// Same sequence.
    Equal,
    /// The first is a proper initial part of the second.
    ProperInitial,
    /// The first properly extends the second.
    ProperExtension,
    /// Neither is an initial part of the other.
    Deviates,
}

/// The code of a finite sequence of naturals.
///
/// Equality, hashing and ordering all agree with the numeric code value
/// because the coding is bijective.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeqCode {
    entries: Vec<Nat>,
}

impl SeqCode {
    /// The empty sequence, coded by 0.
    pub fn empty() -> Self {
        SeqCode { entries: Vec::new() }
    }

    /// Codes the given entry list.
    pub fn encode(entries: Vec<Nat>) -> Self {
        SeqCode { entries }
    }

    /// Codes a list of machine-word entries.
    pub fn encode_u64(entries: &[u64]) -> Self {
        SeqCode { entries: entries.iter().map(|&e| Nat::from(e)).collect() }
    }

    /// The singleton sequence `<n>`.
    pub fn singleton(n: Nat) -> Self {
        SeqCode { entries: vec![n] }
    }

    /// Decodes a numeric value by factoring `value + 1` over consecutive
    /// primes; the exponent of the last dividing prime is one more than the
    /// final entry.
    pub fn from_value(value: Nat) -> Self {
        if value.is_zero() {
            return SeqCode::empty();
        }
        let mut n = value + Nat::one();
        let mut entries: Vec<Nat> = Vec::new();
        let mut i = 0;
        while !n.is_one() {
            let p = Nat::from(prime(i));
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
            i += 1;
        }
        let last = entries.last_mut().expect("value > 0 has a prime factor");
        *last -= Nat::one();
        SeqCode { entries }
    }

    /// The numeric code value.
    pub fn value(&self) -> Nat {
        if self.entries.is_empty() {
            return Nat::zero();
        }
        let mut acc = Nat::one();
        for (i, e) in self.entries.iter().enumerate() {
            let mut exp = e.clone();
            if i + 1 == self.entries.len() {
                exp += Nat::one();
            }
            acc *= Nat::from(prime(i)).pow(
                exp.to_u32().expect("exponent too large to materialize a code value"),
            );
        }
        acc - Nat::one()
    }

    /// Sequence length.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True for the empty sequence.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at position `i`; positions at or beyond the length read 0.
    pub fn get(&self, i: usize) -> Nat {
        self.entries.get(i).cloned().unwrap_or_else(Nat::zero)
    }

    /// Entry at position `i` as a machine word; panics if it does not fit.
    pub fn get_u64(&self, i: usize) -> u64 {
        self.entries
            .get(i)
            .map(|e| e.to_u64().expect("entry does not fit in u64"))
            .unwrap_or(0)
    }

    /// All entries as machine words; panics if any does not fit.
    pub fn entries_u64(&self) -> Vec<u64> {
        (0..self.len()).map(|i| self.get_u64(i)).collect()
    }

    /// Borrow the entry list.
    pub fn entries(&self) -> &[Nat] {
        &self.entries
    }

    /// Concatenation `a * b`.
    pub fn concat(&self, other: &SeqCode) -> SeqCode {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        SeqCode { entries }
    }

    /// Appends a single entry.
    pub fn push(&self, entry: Nat) -> SeqCode {
        let mut entries = self.entries.clone();
        entries.push(entry);
        SeqCode { entries }
    }

    /// The code of the first `n` entries.
    pub fn prefix(&self, n: usize) -> Result<SeqCode, CodingError> {
        if n > self.len() {
            return Err(CodingError::PrefixTooLong { requested: n, length: self.len() });
        }
        Ok(SeqCode { entries: self.entries[..n].to_vec() })
    }

    /// The code of the entries from position `n` on.
    pub fn suffix(&self, n: usize) -> Result<SeqCode, CodingError> {
        if n > self.len() {
            return Err(CodingError::PrefixTooLong { requested: n, length: self.len() });
        }
        Ok(SeqCode { entries: self.entries[n..].to_vec() })
    }

    /// Initial-part comparison.
    pub fn compare(&self, other: &SeqCode) -> SeqOrder {
        let shared = self.len().min(other.len());
        if self.entries[..shared] != other.entries[..shared] {
            return SeqOrder::Deviates;
        }
        match self.len().cmp(&other.len()) {
            std::cmp::Ordering::Equal => SeqOrder::Equal,
            std::cmp::Ordering::Less => SeqOrder::ProperInitial,
            std::cmp::Ordering::Greater => SeqOrder::ProperExtension,
        }
    }

    /// True when `self` is an initial part of `other` (allowing equality).
    pub fn is_initial_of(&self, other: &SeqCode) -> bool {
        matches!(self.compare(other), SeqOrder::Equal | SeqOrder::ProperInitial)
    }

    /// True when every entry is 0 or 1.
    pub fn is_bin(&self) -> bool {
        self.entries.iter().all(|e| e < &Nat::from(2u32))
    }
}

impl fmt::Debug for SeqCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeqCode<")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Display for SeqCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for SeqCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.value().to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for SeqCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let value = Nat::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom(format!("invalid decimal code: {s:?}")))?;
        Ok(SeqCode::from_value(value))
    }
}

/// Cantor pairing `(m+n)(m+n+1)/2 + n`.
///
/// The pairing function is only axiomatized by its projection laws; the
/// Cantor formula is this artifact's concrete choice, so cross-implementation
/// numeric equality requires the same formula.
pub fn pair(m: &Nat, n: &Nat) -> Nat {
    let s = m + n;
    (&s * (&s + Nat::one())) / Nat::from(2u32) + n
}

/// Convenience pairing on machine words.
pub fn pair_u64(m: u64, n: u64) -> Nat {
    pair(&Nat::from(m), &Nat::from(n))
}

/// Inverse of [`pair`]: returns `(left, right)`.
pub fn unpair(p: &Nat) -> (Nat, Nat) {
    // w = floor((sqrt(8p+1) - 1) / 2) is the diagonal index.
    let w = ((p * Nat::from(8u32) + Nat::one()).sqrt() - Nat::one()) / Nat::from(2u32);
    let t = (&w * (&w + Nat::one())) / Nat::from(2u32);
    let n = p - &t;
    let m = &w - &n;
    (m, n)
}

/// Left projection of a pair code.
pub fn left(p: &Nat) -> Nat {
    unpair(p).0
}

/// Right projection of a pair code.
pub fn right(p: &Nat) -> Nat {
    unpair(p).1
}

/// The binary embedding: `cod2(s * <n>) = cod2(s) * 0^n * <1>`, starting
/// from `cod2(<>) = <>`.  Each entry `n` becomes a block of `n` zeros
/// followed by a one.
pub fn cod2(s: &SeqCode) -> SeqCode {
    let mut entries = Vec::new();
    for i in 0..s.len() {
        let n = s
            .get(i)
            .to_usize()
            .expect("cod2 entry too large to materialize");
        entries.extend(std::iter::repeat_n(Nat::zero(), n));
        entries.push(Nat::one());
    }
    SeqCode { entries }
}

/// Partial inverse of [`cod2`]: `Some(s)` exactly when `b = cod2(s)`.
/// Binary codes ending in a zero block (and non-binary codes) are not in
/// the image.
pub fn cod2_inv(b: &SeqCode) -> Option<SeqCode> {
    if !b.is_bin() {
        return None;
    }
    let mut entries = Vec::new();
    let mut run: u64 = 0;
    for i in 0..b.len() {
        if b.get_u64(i) == 0 {
            run += 1;
        } else {
            entries.push(Nat::from(run));
            run = 0;
        }
    }
    if run != 0 {
        return None;
    }
    Some(SeqCode { entries })
}

/// Iterates all binary codes of exactly the given length, in numeric order
/// of the underlying bit word (all-zeros first).
pub fn bin_codes_of_length(len: usize) -> impl Iterator<Item = SeqCode> {
    assert!(len < 64, "binary enumeration limited to short codes");
    (0u64..(1 << len)).map(move |bits| {
        SeqCode::encode((0..len).map(|i| Nat::from((bits >> i) & 1)).collect())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_table_grows() {
        assert_eq!(primes(8), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn bijection_spot_checks() {
        // <2> = 2^3 - 1 = 7, <0,1> = 2^0 * 3^2 - 1 = 8.
        assert_eq!(SeqCode::encode_u64(&[2]).value(), Nat::from(7u32));
        assert_eq!(SeqCode::encode_u64(&[0, 1]).value(), Nat::from(8u32));
        assert_eq!(SeqCode::from_value(Nat::from(7u32)).entries_u64(), vec![2]);
    }

    #[test]
    fn suffix_complements_prefix() {
        let a = SeqCode::encode_u64(&[3, 1, 4, 1]);
        for n in 0..=4 {
            let joined = a.prefix(n).unwrap().concat(&a.suffix(n).unwrap());
            assert_eq!(joined, a);
        }
    }

    #[test]
    fn bin_enumeration_counts() {
        assert_eq!(bin_codes_of_length(0).count(), 1);
        assert_eq!(bin_codes_of_length(5).count(), 32);
        assert!(bin_codes_of_length(5).all(|c| c.is_bin() && c.len() == 5));
    }
}
