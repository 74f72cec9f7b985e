//! Reals as shrinking nests of rational intervals, the ternary interval
//! map from binary words, comparison probes, and successive bisection.
//!
//! All arithmetic is exact rational arithmetic on arbitrary-precision
//! integers; the interval relations below are literal inequalities on
//! endpoints and nothing is rounded anywhere.

use crate::coding::SeqCode;
use crate::streams::BairePoint;
use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

/// Exact rational numbers.
pub type Rat = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Errors from interval-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealError {
    #[error("interval endpoints must satisfy lo < hi, got {lo} and {hi}")]
    EmptyInterval { lo: String, hi: String },
    #[error("sequence code {0} is not binary")]
    NotBinaryCode(crate::coding::Nat),
    #[error("point value {value} at index {index} is not a bit")]
    NotBinaryPoint { index: u64, value: u64 },
    #[error("bisection requires a negative left end and a positive right end")]
    EndpointSigns,
    #[error("piecewise-linear breakpoints invalid: {0}")]
    BadBreakpoints(&'static str),
}

/// A rational interval with positive length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: Rat,
    hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self, RealError> {
        if lo < hi {
            Ok(RatInterval { lo, hi })
        } else {
            Err(RealError::EmptyInterval { lo: lo.to_string(), hi: hi.to_string() })
        }
    }

    pub fn lo(&self) -> Rat {
        self.lo.clone()
    }

    pub fn hi(&self) -> Rat {
        self.hi.clone()
    }

    pub fn length(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2, 1)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

impl Serialize for RatInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.lo.to_string(), self.hi.to_string()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatInterval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (lo, hi) = <(String, String)>::deserialize(deserializer)?;
        let lo = Rat::from_str(&lo).map_err(D::Error::custom)?;
        let hi = Rat::from_str(&hi).map_err(D::Error::custom)?;
        RatInterval::new(lo, hi).map_err(D::Error::custom)
    }
}

/// How two intervals relate: strictly inside, separated, or neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SRelation {
    /// `s` lies strictly between the endpoints of `t`.
    InsideProper,
    /// The intervals are separated by a nonempty gap.
    Apart,
    /// Not apart (and not strictly inside): they touch or overlap.
    Overlapping,
}

/// Classifies the relation of `s` to `t`.
pub fn s_relation(s: &RatInterval, t: &RatInterval) -> SRelation {
    if t.lo < s.lo && s.hi < t.hi {
        SRelation::InsideProper
    } else if s.hi < t.lo || t.hi < s.lo {
        SRelation::Apart
    } else {
        SRelation::Overlapping
    }
}

/// The left, middle, and right third parts of an interval.
pub fn thirds(s: &RatInterval) -> (RatInterval, RatInterval, RatInterval) {
    let cut1 = (rat(2, 1) * &s.lo + &s.hi) / rat(3, 1);
    let cut2 = (&s.lo + rat(2, 1) * &s.hi) / rat(3, 1);
    (
        RatInterval { lo: s.lo.clone(), hi: cut1.clone() },
        RatInterval { lo: cut1, hi: cut2.clone() },
        RatInterval { lo: cut2, hi: s.hi.clone() },
    )
}

/// The interval with the same midpoint and twice the length.
pub fn double(s: &RatInterval) -> RatInterval {
    let half = s.length() / rat(2, 1);
    RatInterval { lo: &s.lo - &half, hi: &s.hi + &half }
}

/// The interval of a binary word: start at `(0,1)` and take the left or
/// right third per bit.  Width is `3^-length`.
pub fn ternary(a: &SeqCode) -> Result<RatInterval, RealError> {
    if !a.is_bin() {
        return Err(RealError::NotBinaryCode(a.value()));
    }
    let mut s = RatInterval { lo: rat(0, 1), hi: rat(1, 1) };
    for i in 0..a.len() {
        let (l, _, r) = thirds(&s);
        s = if a.get_u64(i) == 0 { l } else { r };
    }
    Ok(s)
}

/// A real as a rule producing one rational interval per index.  The
/// code is honest only if the intervals nest properly and shrink; the
/// constructors here guarantee that, and the test suite spot-checks it.
#[derive(Clone)]
pub struct RealCode {
    name: String,
    rule: Arc<dyn Fn(u64) -> RatInterval + Send + Sync>,
}

impl std::fmt::Debug for RealCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RealCode({})", self.name)
    }
}

impl RealCode {
    pub fn from_rule(
        name: impl Into<String>,
        rule: impl Fn(u64) -> RatInterval + Send + Sync + 'static,
    ) -> Self {
        RealCode { name: name.into(), rule: Arc::new(rule) }
    }

    /// The interval at index `n`.
    pub fn at(&self, n: u64) -> RatInterval {
        (self.rule)(n)
    }
}

/// The canonical real of a rational: symmetric intervals of width
/// `2/2^n` around `q`.
pub fn q_embed(q: Rat) -> RealCode {
    let name = format!("q({q})");
    RealCode::from_rule(name, move |n| {
        let eps = Rat::new(BigInt::from(1), BigInt::from(2).pow(n.try_into().expect("exponent")));
        RatInterval { lo: &q - &eps, hi: &q + &eps }
    })
}

/// Verdict of a bounded order probe between two reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RealOrder {
    Less,
    Greater,
    UnknownAt(u64),
}

/// Scans indices up to `budget` for an interval of one real lying
/// strictly below an interval of the other.  `UnknownAt` is honest:
/// apartness of reals is only semi-decidable, so exhausting the budget
/// decides nothing.
pub fn real_less(alpha: &RealCode, beta: &RealCode, budget: u64) -> RealOrder {
    for n in 0..=budget {
        let a = alpha.at(n);
        let b = beta.at(n);
        if a.hi < b.lo {
            return RealOrder::Less;
        }
        if b.hi < a.lo {
            return RealOrder::Greater;
        }
    }
    RealOrder::UnknownAt(budget)
}

/// How many leading entries of a point [`rho`] checks to be bits before
/// trusting the rest.  A lying tail merely yields a lying real code.
const RHO_BIT_PROBE: u64 = 32;

/// The canonical map from binary points into the unit interval: index
/// `n` maps to the doubled ternary interval of the point's length-`n`
/// prefix.  Doubling makes consecutive intervals nest properly even
/// when the prefix sits at the edge of its parent interval.
pub fn rho(gamma: &BairePoint) -> Result<RealCode, RealError> {
    for index in 0..RHO_BIT_PROBE {
        let value = gamma.at(index);
        if value > 1 {
            return Err(RealError::NotBinaryPoint { index, value });
        }
    }
    let gamma = gamma.clone();
    Ok(RealCode::from_rule("rho", move |n| {
        let prefix = gamma.prefix_code(n.try_into().expect("prefix length"));
        double(&ternary(&prefix).expect("probed binary point"))
    }))
}

/// A piecewise-linear function on `[0,1]` given by its breakpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunction {
    breakpoints: Vec<(Rat, Rat)>,
}

impl Serialize for PLFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let points: Vec<(String, String)> = self
            .breakpoints
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        points.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PLFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let points = <Vec<(String, String)>>::deserialize(deserializer)?;
        let breakpoints = points
            .into_iter()
            .map(|(x, y)| {
                Ok((
                    Rat::from_str(&x).map_err(D::Error::custom)?,
                    Rat::from_str(&y).map_err(D::Error::custom)?,
                ))
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        PLFunction::new(breakpoints).map_err(D::Error::custom)
    }
}

impl PLFunction {
    /// Validates that the x-coordinates strictly increase from 0 to 1.
    pub fn new(breakpoints: Vec<(Rat, Rat)>) -> Result<Self, RealError> {
        if breakpoints.len() < 2 {
            return Err(RealError::BadBreakpoints("need at least two breakpoints"));
        }
        if breakpoints[0].0 != rat(0, 1) {
            return Err(RealError::BadBreakpoints("first x-coordinate must be 0"));
        }
        if breakpoints.last().expect("nonempty").0 != rat(1, 1) {
            return Err(RealError::BadBreakpoints("last x-coordinate must be 1"));
        }
        if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(RealError::BadBreakpoints("x-coordinates must strictly increase"));
        }
        Ok(PLFunction { breakpoints })
    }

    pub fn breakpoints(&self) -> &[(Rat, Rat)] {
        &self.breakpoints
    }

    /// Exact value at `x`, which must lie in `[0,1]`.
    pub fn eval(&self, x: &Rat) -> Rat {
        assert!(
            *x >= rat(0, 1) && *x <= rat(1, 1),
            "argument outside the unit interval"
        );
        let segment = self
            .breakpoints
            .windows(2)
            .find(|w| w[0].0 <= *x && *x <= w[1].0)
            .expect("breakpoints cover [0,1]");
        let (x0, y0) = &segment[0];
        let (x1, y1) = &segment[1];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// The trace of a bisection run: the nested halving intervals, and the
/// midpoint root if one was hit exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisectRun {
    pub intervals: Vec<RatInterval>,
    pub exact_root: Option<Rat>,
}

impl Serialize for BisectRun {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut out = serializer.serialize_struct("BisectRun", 2)?;
        out.serialize_field("intervals", &self.intervals)?;
        out.serialize_field("exact_root", &self.exact_root.as_ref().map(Rat::to_string))?;
        out.end()
    }
}

/// Successive bisection of a sign change: starting from `[0,1]`, each
/// step keeps the half on which the function still changes sign.  An
/// exact root at a midpoint ends the run early — the decidable sign
/// test has a third outcome that the idealized setting never meets.
pub fn bisect(phi: &PLFunction, steps: u64) -> Result<BisectRun, RealError> {
    let zero = rat(0, 1);
    let mut lo = rat(0, 1);
    let mut hi = rat(1, 1);
    if !(phi.eval(&lo) < zero && zero < phi.eval(&hi)) {
        return Err(RealError::EndpointSigns);
    }
    let mut intervals =
        vec![RatInterval { lo: lo.clone(), hi: hi.clone() }];
    let mut exact_root = None;
    for _ in 0..steps {
        let mid = (&lo + &hi) / rat(2, 1);
        let v = phi.eval(&mid);
        if v == zero {
            exact_root = Some(mid);
            break;
        }
        if v < zero {
            lo = mid;
        } else {
            hi = mid;
        }
        intervals.push(RatInterval { lo: lo.clone(), hi: hi.clone() });
    }
    Ok(BisectRun { intervals, exact_root })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_and_containment() {
        let s = RatInterval::new(rat(1, 4), rat(3, 4)).unwrap();
        assert_eq!(s.midpoint(), rat(1, 2));
        assert!(s.contains(&rat(1, 4)) && s.contains(&rat(3, 4)));
        assert!(!s.contains(&rat(4, 5)));
    }

    #[test]
    fn embedded_rational_is_never_self_apart() {
        let x = q_embed(rat(7, 5));
        for n in 1..6 {
            assert!(s_relation(&x.at(n), &x.at(n - 1)) != SRelation::Apart);
        }
    }

    #[test]
    fn pl_eval_interpolates() {
        let phi = PLFunction::new(vec![
            (rat(0, 1), rat(-1, 1)),
            (rat(1, 2), rat(0, 1)),
            (rat(1, 1), rat(3, 1)),
        ])
        .unwrap();
        assert_eq!(phi.eval(&rat(1, 4)), rat(-1, 2));
        assert_eq!(phi.eval(&rat(3, 4)), rat(3, 2));
        assert_eq!(phi.eval(&rat(1, 2)), rat(0, 1));
    }
}
