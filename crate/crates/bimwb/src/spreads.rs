//! Spread laws at finite depth: classification into spread / fan /
//! approximate-fan, leftmost choice paths, thin bars, and the
//! open-induction path over a finite avoided set.
//!
//! Everything here is budgeted.  A spread law is an arbitrary decidable
//! node test; only children with index up to the branch budget are ever
//! scanned, and classification walks the admitted tree to a stated
//! depth.  Verdicts are therefore certificates about the scanned
//! portion, not about the infinite object.

use crate::coding::{Nat, SeqCode};
use crate::streams::BairePoint;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

/// Errors from spread-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpreadError {
    #[error("law {law} rejects the empty sequence")]
    RootRejected { law: usize },
    #[error("law {law} admits no child of node {node:?} within the branch budget")]
    ChoiceExhausted { law: usize, node: SeqCode },
    #[error("the avoided set bars the whole binary tree")]
    BarsEverything,
    #[error("sequence code {0} is not binary")]
    NotBinaryCode(Nat),
    #[error("index stream fails to increase at position {index}")]
    NotIncreasing { index: u64 },
}

/// Total number of child scans a classification walk may spend before
/// giving up on exact level counts.
const NODE_CAP: usize = 200_000;

/// A decidable node test with a branch budget, standing in for a
/// spread law.
#[derive(Clone)]
pub struct SpreadLaw {
    name: String,
    admits: Arc<dyn Fn(&SeqCode) -> bool + Send + Sync>,
    branch_budget: u64,
    declared_level_bound: Option<Arc<dyn Fn(u64) -> u64 + Send + Sync>>,
}

impl std::fmt::Debug for SpreadLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SpreadLaw({}, budget {})", self.name, self.branch_budget)
    }
}

impl SpreadLaw {
    pub fn new(
        name: impl Into<String>,
        test: impl Fn(&SeqCode) -> bool + Send + Sync + 'static,
    ) -> Self {
        SpreadLaw {
            name: name.into(),
            admits: Arc::new(test),
            branch_budget: 64,
            declared_level_bound: None,
        }
    }

    /// Admits exactly the binary codes.
    pub fn binary() -> Self {
        SpreadLaw::new("binary", SeqCode::is_bin)
    }

    /// Admits every code.
    pub fn full() -> Self {
        SpreadLaw::new("full", |_| true)
    }

    /// Admits codes whose entries are all below `k`.
    pub fn bounded(k: u64) -> Self {
        SpreadLaw::new(format!("bounded:{k}"), move |s: &SeqCode| {
            s.entries_u64().iter().all(|&e| e < k)
        })
    }

    /// Admits exactly the listed codes.
    pub fn from_table(codes: Vec<SeqCode>) -> Self {
        let table: std::collections::HashSet<SeqCode> = codes.into_iter().collect();
        SpreadLaw::new("table", move |s: &SeqCode| table.contains(s))
    }

    /// Looks up the named built-in: "binary", "full", or "bounded:k".
    pub fn by_name(name: &str) -> Option<SpreadLaw> {
        match name {
            "binary" => Some(SpreadLaw::binary()),
            "full" => Some(SpreadLaw::full()),
            _ => {
                let k = name.strip_prefix("bounded:")?.parse().ok()?;
                Some(SpreadLaw::bounded(k))
            }
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.branch_budget = budget;
        self
    }

    /// Declares a per-level branching bound, to be verified (and then
    /// reported) by classification.
    pub fn with_level_bound(
        mut self,
        bound: impl Fn(u64) -> u64 + Send + Sync + 'static,
    ) -> Self {
        self.declared_level_bound = Some(Arc::new(bound));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn branch_budget(&self) -> u64 {
        self.branch_budget
    }

    /// Whether the law admits the node.
    pub fn admits(&self, s: &SeqCode) -> bool {
        (self.admits)(s)
    }

    /// The admitted children of `s` within the branch budget, by index.
    fn admitted_children(&self, s: &SeqCode) -> Vec<u64> {
        (0..=self.branch_budget)
            .filter(|&n| self.admits(&s.push(Nat::from(n))))
            .collect()
    }
}

/// Outcome of a single-node spread-condition check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SprVerdict {
    /// Admittance of the node matches admittance of some child.
    Consistent,
    /// A rejected node with an admitted child: definitely not a spread
    /// law, whatever lies beyond the budget.
    Violation,
    /// An admitted node with no admitted child in budget: a dead end or
    /// a branch past the budget — the scan cannot tell.
    Inconclusive,
}

/// Checks the spread condition at one node: admitted iff some child is
/// admitted, with child scans limited to the branch budget.
pub fn spr_check(law: &SpreadLaw, s: &SeqCode) -> SprVerdict {
    let node = law.admits(s);
    let child = !law.admitted_children(s).is_empty();
    match (node, child) {
        (true, false) => SprVerdict::Inconclusive,
        (false, true) => SprVerdict::Violation,
        _ => SprVerdict::Consistent,
    }
}

/// The strongest certificate a depth-bounded walk could produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Classification {
    /// Some walked node breaks the spread condition; the first such
    /// node in breadth-first order.
    NotSpread { witness: SeqCode },
    /// The spread condition held, but no branching bound is in
    /// evidence (or the walk was cut short by the node cap).
    Spread,
    /// No per-node bound, but every fully-counted level holds fewer
    /// admitted nodes than the scan maximum; counts are per level.
    ApproxFan { level_counts: Vec<u64> },
    /// Every admitted node's admitted children stay strictly below the
    /// branch budget; the per-node maxima are listed.
    Fan { bounds: Vec<(SeqCode, u64)> },
    /// A fan whose declared per-level bound checked out; the bound's
    /// values for the walked levels.
    ExplicitFan { level_bounds: Vec<u64> },
}

/// Walks the admitted tree to `depth` and classifies the law.
///
/// The walk scans every admitted node's children up to the branch
/// budget.  A node admitting its budget-indexed child is treated as
/// unbounded there (nothing past the budget is knowable); a level of
/// the tree counts as thin when it holds strictly fewer admitted nodes
/// than a full budget-ary tree would.
pub fn classify(law: &SpreadLaw, depth: usize) -> Classification {
    let mut level: Vec<SeqCode> = vec![SeqCode::empty()];
    let mut level_counts: Vec<u64> = Vec::new();
    let mut bounds: Vec<(SeqCode, u64)> = Vec::new();
    let mut fan = true;
    let mut capped = false;
    let mut scans = 0usize;
    if !law.admits(&SeqCode::empty()) {
        // A rejected root with an admitted child is the first
        // violation; with no admitted child the law is merely empty,
        // which also fails the root clause of spreadhood here.
        return Classification::NotSpread { witness: SeqCode::empty() };
    }
    for current_depth in 0..=depth {
        level_counts.push(level.len() as u64);
        if current_depth == depth {
            break;
        }
        let mut next = Vec::new();
        for node in &level {
            scans += 1;
            if scans > NODE_CAP {
                capped = true;
                break;
            }
            let children = law.admitted_children(node);
            match children.last() {
                None => return Classification::NotSpread { witness: node.clone() },
                Some(&max) => {
                    if max >= law.branch_budget {
                        fan = false;
                    }
                    bounds.push((node.clone(), max));
                }
            }
            for k in children {
                next.push(node.push(Nat::from(k)));
            }
        }
        if capped {
            break;
        }
        level = next;
    }
    if capped {
        return Classification::Spread;
    }
    if fan {
        if let Some(declared) = &law.declared_level_bound {
            let verified = bounds
                .iter()
                .all(|(node, max)| *max <= declared(node.len() as u64));
            if verified {
                return Classification::ExplicitFan {
                    level_bounds: (0..depth as u64).map(|n| declared(n)).collect(),
                };
            }
        }
        return Classification::Fan { bounds };
    }
    let budgetary = |n: u32| (law.branch_budget + 1).checked_pow(n);
    let thin = level_counts
        .iter()
        .enumerate()
        .skip(1)
        .all(|(n, &count)| budgetary(n as u32).is_none_or(|full| count < full));
    if thin {
        Classification::ApproxFan { level_counts }
    } else {
        Classification::Spread
    }
}

/// For each law, the leftmost admitted path to the horizon: at every
/// step the least admitted child within the branch budget.
pub fn spread_choice(laws: &[SpreadLaw], horizon: usize) -> Result<Vec<Vec<u64>>, SpreadError> {
    let mut paths = Vec::with_capacity(laws.len());
    for (index, law) in laws.iter().enumerate() {
        if !law.admits(&SeqCode::empty()) {
            return Err(SpreadError::RootRejected { law: index });
        }
        let mut node = SeqCode::empty();
        let mut path = Vec::with_capacity(horizon);
        for _ in 0..horizon {
            let k = (0..=law.branch_budget)
                .find(|&n| law.admits(&node.push(Nat::from(n))))
                .ok_or_else(|| SpreadError::ChoiceExhausted { law: index, node: node.clone() })?;
            path.push(k);
            node = node.push(Nat::from(k));
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Whether `bar_set` is a thin bar in the law's spread, checked to
/// `depth`: every member admitted, no member an initial part of
/// another, and every admitted node at `depth` reachable through
/// admitted nodes meets the set on an initial part.
pub fn thin_bar_check(law: &SpreadLaw, bar_set: &[SeqCode], depth: usize) -> bool {
    if !bar_set.iter().all(|s| law.admits(s)) {
        return false;
    }
    let antichain = bar_set.iter().all(|s| {
        bar_set
            .iter()
            .all(|t| s == t || !(s.is_initial_of(t) || t.is_initial_of(s)))
    });
    if !antichain {
        return false;
    }
    // Depth-first bar check over the admitted tree.
    fn barred(law: &SpreadLaw, bar_set: &[SeqCode], node: &SeqCode, depth: usize) -> bool {
        if bar_set.iter().any(|b| b.is_initial_of(node)) {
            return true;
        }
        if node.len() >= depth {
            return false;
        }
        let children = law.admitted_children(node);
        if children.is_empty() {
            // No admitted continuation: nothing at full depth below
            // this node, so nothing to bar.
            return true;
        }
        children
            .iter()
            .all(|&k| barred(law, bar_set, &node.push(Nat::from(k)), depth))
    }
    if !law.admits(&SeqCode::empty()) {
        return true;
    }
    barred(law, bar_set, &SeqCode::empty(), depth)
}

/// Greatest member length of a finite node set.
fn max_length(set: &[SeqCode]) -> usize {
    set.iter().map(SeqCode::len).max().unwrap_or(0)
}

/// Whether the finite binary set bars the cone below `t`: decided by
/// structural recursion — a member above `t` settles it, and past the
/// set's greatest length no member can still appear.
pub fn bar_in_cone(set: &[SeqCode], t: &SeqCode) -> bool {
    if set.iter().any(|b| b.is_initial_of(t)) {
        return true;
    }
    if t.len() >= max_length(set) {
        return false;
    }
    bar_in_cone(set, &t.push(Nat::from(0u32))) && bar_in_cone(set, &t.push(Nat::from(1u32)))
}

/// Whether the finite binary set bars everything strictly left of `s`:
/// the cones entered by following `s` and branching to 0 under a 1.
pub fn bar_on_left(set: &[SeqCode], s: &SeqCode) -> bool {
    (0..s.len()).filter(|&i| s.get_u64(i) == 1).all(|i| {
        let stem = s.prefix(i).expect("within length").push(Nat::from(0u32));
        bar_in_cone(set, &stem)
    })
}

/// The leftmost binary path avoiding the finite set `avoided`, built by
/// the rule: go right exactly when the set bars everything left of
/// going right.  At every step the set bars everything strictly left of
/// the path and the path stays outside the set.
pub fn oi_path(avoided: &[SeqCode]) -> Result<BairePoint, SpreadError> {
    for s in avoided {
        if !s.is_bin() {
            return Err(SpreadError::NotBinaryCode(s.value()));
        }
    }
    if bar_in_cone(avoided, &SeqCode::empty()) {
        return Err(SpreadError::BarsEverything);
    }
    let set: Vec<SeqCode> = avoided.to_vec();
    Ok(BairePoint::from_rule("oi-path", move |n| {
        let steps = num_traits::ToPrimitive::to_usize(n).expect("index fits usize");
        let mut prefix = SeqCode::empty();
        let mut bit = 0;
        for _ in 0..=steps {
            bit = u64::from(bar_on_left(&set, &prefix.push(Nat::from(1u32))));
            prefix = prefix.push(Nat::from(bit));
        }
        bit
    }))
}

/// Least `n <= budget` with `alpha(zeta(n)) = 0`, after checking that
/// `zeta` strictly increases on the scanned range.
pub fn almost_finite_probe(
    alpha: &BairePoint,
    zeta: &BairePoint,
    budget: u64,
) -> Result<Option<u64>, SpreadError> {
    let mut previous = None;
    for n in 0..=budget {
        let z = zeta.at(n);
        if previous.is_some_and(|p| z <= p) {
            return Err(SpreadError::NotIncreasing { index: n });
        }
        previous = Some(z);
    }
    Ok((0..=budget).find(|&n| alpha.at(zeta.at(n)) == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enc(xs: &[u64]) -> SeqCode {
        SeqCode::encode_u64(xs)
    }

    #[test]
    fn admitted_children_respect_the_budget() {
        let law = SpreadLaw::full().with_budget(3);
        assert_eq!(law.admitted_children(&SeqCode::empty()), vec![0, 1, 2, 3]);
        let law = SpreadLaw::binary();
        assert_eq!(law.admitted_children(&enc(&[1])), vec![0, 1]);
        assert_eq!(law.admitted_children(&enc(&[2])), Vec::<u64>::new());
    }

    #[test]
    fn cone_bar_structural_base_cases() {
        assert!(!bar_in_cone(&[], &SeqCode::empty()));
        assert!(bar_in_cone(&[SeqCode::empty()], &enc(&[0, 1])));
        assert!(bar_in_cone(&[enc(&[0]), enc(&[1])], &SeqCode::empty()));
        assert!(!bar_in_cone(&[enc(&[0])], &SeqCode::empty()));
    }

    #[test]
    fn left_bar_of_all_zero_prefixes_is_vacuous() {
        assert!(bar_on_left(&[], &enc(&[0, 0, 0])));
        assert!(!bar_on_left(&[], &enc(&[0, 1])));
    }
}
