//! The securedness calculus over the binary tree.
//!
//! A node `s` (a binary sequence code) is secured by a node set `B` at
//! level 0 when some initial part of `s` lies in `B`, and at level `n+1`
//! when both of its children are secured at level `n`.  "The root is
//! secured at level n" is the finite certificate that `B` bars every
//! binary path within depth `n`; the calculus makes bar depth, avoidance,
//! and their equivalence checkable by dynamic programming.
//!
//! The module also ships a minimal deterministic register machine and the
//! diagonal node predicate built from it: a bar against every
//! machine-computable binary stream whose finite stages are all avoidable.

use crate::coding::SeqCode;
use crate::streams::BairePoint;
use std::sync::Arc;
use thiserror::Error;

/// Errors from depth-bounded securedness queries.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SecError {
    #[error("node of length {length} queried beyond table depth {depth}")]
    BeyondDepth { length: usize, depth: usize },
    #[error("securedness level {level} exceeds table depth {depth}")]
    LevelBeyondDepth { level: usize, depth: usize },
    #[error("node {0:?} is not a binary sequence code")]
    NotBinary(SeqCode),
}

/// A decidable set of binary nodes, with a provenance label.
#[derive(Clone)]
pub struct NodePredicate {
    test: Arc<dyn Fn(&SeqCode) -> bool + Send + Sync>,
    description: String,
}

impl std::fmt::Debug for NodePredicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NodePredicate({})", self.description)
    }
}

impl NodePredicate {
    /// Wraps a total decidable test on binary codes.
    pub fn new(
        description: impl Into<String>,
        test: impl Fn(&SeqCode) -> bool + Send + Sync + 'static,
    ) -> Self {
        NodePredicate { test: Arc::new(test), description: description.into() }
    }

    /// The finite set of the given codes.
    pub fn from_codes(codes: Vec<SeqCode>) -> Self {
        let description = format!(
            "finite{{{}}}",
            codes.iter().map(|c| c.value().to_string()).collect::<Vec<_>>().join(",")
        );
        NodePredicate::new(description, move |s| codes.contains(s))
    }

    /// The set decided by a stream: a node is in iff the stream is nonzero
    /// at the node's code value.
    pub fn from_stream(alpha: BairePoint) -> Self {
        NodePredicate::new("decided-by-stream", move |s| alpha.at_nat(&s.value()) != 0)
    }

    /// The empty set.
    pub fn empty() -> Self {
        NodePredicate::new("empty", |_| false)
    }

    /// Membership test.
    pub fn contains(&self, s: &SeqCode) -> bool {
        (self.test)(s)
    }

    /// Provenance label.
    pub fn description(&self) -> &str {
        &self.description
    }
}

/// Identifies a binary node of length `<= depth` by (length, bit word);
/// bit `i` of `bits` is the entry at position `i`.
fn node_id(len: usize, bits: u32) -> usize {
    (1usize << len) - 1 + bits as usize
}

fn node_code(len: usize, bits: u32) -> SeqCode {
    SeqCode::encode_u64((0..len).map(|i| ((bits >> i) & 1) as u64).collect::<Vec<_>>().as_slice())
}

/// Dynamic-programming table of level-wise securedness for every binary
/// node up to a depth.  Immutable after construction; frontier nodes (at
/// exactly the table depth) carry only level-0 data, and deeper queries
/// are errors, never silent falsehoods.
pub struct SecuredTable {
    depth: usize,
    /// `sec[n][node]`: node is secured at level `n`.
    sec: Vec<Vec<bool>>,
}

impl SecuredTable {
    /// Table depth.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Builds the table bottom-up.
    pub fn build(bar: &NodePredicate, depth: usize) -> SecuredTable {
        assert!(depth < 26, "securedness tables are limited to desk-scale depths");
        let total = (1usize << (depth + 1)) - 1;
        // Level 0: some initial part lies in the bar set.  Walk the tree so
        // each node reuses its parent's answer.
        let mut level0 = vec![false; total];
        level0[node_id(0, 0)] = bar.contains(&SeqCode::empty());
        for len in 1..=depth {
            for bits in 0..(1u32 << len) {
                let parent = node_id(len - 1, bits & ((1 << (len - 1)) - 1));
                level0[node_id(len, bits)] =
                    level0[parent] || bar.contains(&node_code(len, bits));
            }
        }
        let mut sec = vec![level0];
        for n in 1..=depth {
            let prev = &sec[n - 1];
            let mut level = vec![false; total];
            for len in 0..=depth {
                for bits in 0..(1u32 << len) {
                    let id = node_id(len, bits);
                    level[id] = if len < depth {
                        prev[node_id(len + 1, bits)] && prev[node_id(len + 1, bits | (1 << len))]
                    } else {
                        // Frontier: no children in the table; only level-0
                        // data is claimed.
                        sec[0][id]
                    };
                }
            }
            sec.push(level);
        }
        SecuredTable { depth, sec }
    }

    /// Whether node `s` is secured at level `n`.
    pub fn is_secured(&self, s: &SeqCode, n: usize) -> Result<bool, SecError> {
        if !s.is_bin() {
            return Err(SecError::NotBinary(s.clone()));
        }
        if s.len() > self.depth {
            return Err(SecError::BeyondDepth { length: s.len(), depth: self.depth });
        }
        if n > self.depth {
            return Err(SecError::LevelBeyondDepth { level: n, depth: self.depth });
        }
        let bits = (0..s.len()).fold(0u32, |acc, i| acc | ((s.get_u64(i) as u32) << i));
        Ok(self.sec[n][node_id(s.len(), bits)])
    }

    /// Whether the root is secured at level `n`.
    pub fn root_secured(&self, n: usize) -> Result<bool, SecError> {
        self.is_secured(&SeqCode::empty(), n)
    }
}

/// Builds the securedness table for `bar` up to `depth`.
pub fn sec_table(bar: &NodePredicate, depth: usize) -> SecuredTable {
    SecuredTable::build(bar, depth)
}

/// True iff every binary code of length `d` has an initial part in `bar`.
pub fn bar_depth(bar: &NodePredicate, d: usize) -> bool {
    avoidance_witness(bar, d).is_none()
}

/// The least level `n <= maxd` at which the root is secured.  By the
/// equivalence proved in the tests, this equals the least barring depth.
pub fn root_secured_level(bar: &NodePredicate, maxd: usize) -> Option<usize> {
    let table = sec_table(bar, maxd);
    (0..=maxd).find(|&n| table.root_secured(n).expect("within depth"))
}

/// Depth-first search for a binary code of length `m` none of whose
/// initial parts lies in `bar`; `None` exactly when `bar` bars depth `m`.
pub fn avoidance_witness(bar: &NodePredicate, m: usize) -> Option<SeqCode> {
    fn extend(bar: &NodePredicate, prefix: &SeqCode, remaining: usize) -> Option<SeqCode> {
        if bar.contains(prefix) {
            return None;
        }
        if remaining == 0 {
            return Some(prefix.clone());
        }
        for bit in 0..2u64 {
            let child = prefix.push(bit.into());
            if let Some(found) = extend(bar, &child, remaining - 1) {
                return Some(found);
            }
        }
        None
    }
    extend(bar, &SeqCode::empty(), m)
}

/// A minimal deterministic register machine.
///
/// A program is the entry list of the code `e`; each entry `w` decodes as
/// operation `w % 8` with argument `w / 8`:
///
/// | op | effect                                   |
/// |----|------------------------------------------|
/// | 0  | halt with output `arg % 2`               |
/// | 1  | increment r0                             |
/// | 2  | increment r1                             |
/// | 3  | decrement r0 (saturating)                |
/// | 4  | decrement r1 (saturating)                |
/// | 5  | if r0 = 0 jump to instruction `arg`      |
/// | 6  | jump to instruction `arg`                |
/// | 7  | halt with output `r0 % 2`                |
///
/// The input is loaded into r0; running past the end of the program halts
/// with output `r1 % 2`.  Each executed instruction (including the halt)
/// counts as one step, so "halts in exactly k steps" is decidable by
/// running k steps, and at most one step count halts a given (program,
/// input) pair.  The computation certificate is `z = 2k + output`, which
/// makes the output recoverable from `z` alone.
#[derive(Debug, Clone)]
pub struct Machine {
    /// Simulation cap: runs longer than this count as non-halting.
    pub step_cap: u64,
}

impl Default for Machine {
    fn default() -> Self {
        Machine { step_cap: 1024 }
    }
}

impl Machine {
    /// Runs program `e` on `input`; `Some((steps, output_bit))` when it
    /// halts within the step cap.
    pub fn run(&self, e: u64, input: u64) -> Option<(u64, u8)> {
        let program: Vec<u64> = SeqCode::from_value(e.into()).entries_u64();
        let mut r0 = input;
        let mut r1: u64 = 0;
        let mut pc: usize = 0;
        for step in 1..=self.step_cap {
            let Some(&w) = program.get(pc) else {
                return Some((step, (r1 % 2) as u8));
            };
            let (op, arg) = (w % 8, w / 8);
            match op {
                0 => return Some((step, (arg % 2) as u8)),
                1 => r0 = r0.saturating_add(1),
                2 => r1 = r1.saturating_add(1),
                3 => r0 = r0.saturating_sub(1),
                4 => r1 = r1.saturating_sub(1),
                5 => {
                    if r0 == 0 {
                        pc = arg as usize;
                        continue;
                    }
                }
                6 => {
                    pc = arg as usize;
                    continue;
                }
                7 => return Some((step, (r0 % 2) as u8)),
                _ => unreachable!("op is w % 8"),
            }
            pc += 1;
        }
        None
    }

    /// Halting predicate on computation certificates: true iff program `e`
    /// on input `n` halts with certificate exactly `z`.
    pub fn tau(&self, e: u64, n: u64, z: u64) -> bool {
        self.run(e, n).map(|(steps, out)| 2 * steps + out as u64 == z) == Some(true)
    }

    /// Output bit encoded in a computation certificate.
    pub fn psi(z: u64) -> u8 {
        (z % 2) as u8
    }

    /// The unique halting certificate for `(e, n)`, if any.
    pub fn certificate(&self, e: u64, n: u64) -> Option<u64> {
        self.run(e, n).map(|(steps, out)| 2 * steps + out as u64)
    }

    /// The total binary stream computed by program `e` (0 where the run
    /// does not halt within the step cap).
    pub fn stream(&self, e: u64) -> BairePoint {
        let machine = self.clone();
        BairePoint::from_rule(format!("machine({e})"), move |n| {
            use num_traits::ToPrimitive;
            match n.to_u64() {
                Some(n) => machine.run(e, n).map(|(_, out)| out as u64).unwrap_or(0),
                None => 0,
            }
        })
    }
}

/// The diagonal bar of a machine: a binary node `c` is in the bar iff for
/// some program index `e < length(c)` with halting certificate
/// `z < length(c)` on its own index, `c(e)` differs from `1 - psi(z)`.
///
/// Every machine-computed binary stream meets this bar (at any length
/// beyond both its own index and its certificate), while the diagonal
/// flip `e -> 1 - psi(z)` escapes every finite stage.
pub fn kleene_bar(machine: &Machine) -> NodePredicate {
    let machine = machine.clone();
    NodePredicate::new("kleene-diagonal", move |c| {
        let len = c.len() as u64;
        (0..len).any(|e| match machine.certificate(e, e) {
            Some(z) => z < len && c.get_u64(e as usize) != (1 - Machine::psi(z)) as u64,
            None => false,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(values: &[u64]) -> Vec<SeqCode> {
        values.iter().map(|&v| SeqCode::from_value(v.into())).collect()
    }

    #[test]
    fn root_in_bar_secures_everything() {
        let bar = NodePredicate::from_codes(codes(&[0]));
        let table = sec_table(&bar, 4);
        for len in 0..=4usize {
            for bits in 0..(1u32 << len) {
                assert!(table.is_secured(&node_code(len, bits), 0).unwrap());
            }
        }
        assert_eq!(root_secured_level(&bar, 4), Some(0));
        assert!(bar_depth(&bar, 0) && bar_depth(&bar, 3));
    }

    #[test]
    fn both_children_secure_the_root_one_level_up() {
        // {1, 3} = {<0>, <1>}.
        let bar = NodePredicate::from_codes(codes(&[1, 3]));
        let table = sec_table(&bar, 4);
        assert!(!table.root_secured(0).unwrap());
        assert!(table.root_secured(1).unwrap());
        assert_eq!(root_secured_level(&bar, 4), Some(1));
        assert!(bar_depth(&bar, 1));
        assert!(!bar_depth(&bar, 0));
    }

    #[test]
    fn empty_bar_secures_nothing() {
        let bar = NodePredicate::empty();
        let table = sec_table(&bar, 5);
        for n in 0..=5 {
            assert!(!table.root_secured(n).unwrap());
        }
        assert_eq!(root_secured_level(&bar, 5), None);
    }

    #[test]
    fn one_sided_bar_is_escaped() {
        // {3} = {<1>}: the all-zero path escapes.
        let bar = NodePredicate::from_codes(codes(&[3]));
        assert_eq!(root_secured_level(&bar, 6), None);
        let witness = avoidance_witness(&bar, 4).unwrap();
        assert_eq!(witness.entries_u64(), vec![0, 0, 0, 0]);
        // {1} = {<0>}: the search routes around and then goes left again.
        let bar = NodePredicate::from_codes(codes(&[1]));
        assert_eq!(avoidance_witness(&bar, 3).unwrap().entries_u64(), vec![1, 0, 0]);
        assert_eq!(avoidance_witness(&NodePredicate::from_codes(codes(&[1, 3])), 1), None);
    }

    #[test]
    fn table_rejects_out_of_range_queries() {
        let table = sec_table(&NodePredicate::empty(), 2);
        let deep = SeqCode::encode_u64(&[0, 1, 0]);
        assert_eq!(
            table.is_secured(&deep, 0),
            Err(SecError::BeyondDepth { length: 3, depth: 2 })
        );
        assert_eq!(
            table.root_secured(3),
            Err(SecError::LevelBeyondDepth { level: 3, depth: 2 })
        );
        let nonbin = SeqCode::encode_u64(&[2]);
        assert!(matches!(table.is_secured(&nonbin, 0), Err(SecError::NotBinary(_))));
    }

    #[test]
    fn machine_halt_certificates_are_unique() {
        let m = Machine::default();
        // Program <0>: immediate halt with output 0, in one step.
        let halt0 = SeqCode::encode_u64(&[0]).value();
        use num_traits::ToPrimitive;
        let e = halt0.to_u64().unwrap();
        assert_eq!(m.run(e, 5), Some((1, 0)));
        assert_eq!(m.certificate(e, 5), Some(2));
        let hits: Vec<u64> = (0..20).filter(|&z| m.tau(e, 5, z)).collect();
        assert_eq!(hits, vec![2]);
    }

    #[test]
    fn looping_program_never_halts() {
        // Program <6>: op 6 arg 0 = jump to self.
        use num_traits::ToPrimitive;
        let e = SeqCode::encode_u64(&[6]).value().to_u64().unwrap();
        assert_eq!(Machine::default().run(e, 0), None);
    }

    #[test]
    fn kleene_bar_vacuous_before_certificates_fit() {
        // Certificates are at least 2, so nodes of length <= 2 can only be
        // barred once some program below 2 halts on itself with z < 2:
        // impossible.  The root and length-1 nodes are never in the bar.
        let bar = kleene_bar(&Machine::default());
        assert!(!bar.contains(&SeqCode::empty()));
        assert!(!bar.contains(&SeqCode::encode_u64(&[0])));
        assert!(!bar.contains(&SeqCode::encode_u64(&[1])));
    }
}
