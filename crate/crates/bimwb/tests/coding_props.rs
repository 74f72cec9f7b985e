//! Exhaustive small-instance properties for the sequence coding.
//!
//! The `oracle` module below is an independent re-implementation of the
//! prime-power coding, written first and kept deliberately naive (direct
//! product evaluation, trial-division primes).  The library must agree
//! with it on every value in the exhaustive ranges.

use bimwb::coding::{cod2, cod2_inv, pair, unpair, Nat, SeqCode, SeqOrder};
use num_traits::ToPrimitive;

mod oracle {
    //! Naive reference implementation: code = 2^{m0}...p(k-1)^{m_{k-1}+1} - 1.

    use std::sync::OnceLock;

    /// The i-th prime, by trial division (memoized table).
    pub fn prime(i: usize) -> u128 {
        static TABLE: OnceLock<Vec<u128>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            let mut primes = Vec::new();
            let mut n: u128 = 2;
            while primes.len() < 800 {
                if (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d)) {
                    primes.push(n);
                }
                n += 1;
            }
            primes
        });
        table[i]
    }

    /// Direct evaluation of the displayed product formula, small inputs only.
    pub fn encode(xs: &[u64]) -> u128 {
        if xs.is_empty() {
            return 0;
        }
        let mut acc: u128 = 1;
        for (i, &m) in xs.iter().enumerate() {
            let e = if i + 1 == xs.len() { m + 1 } else { m };
            acc *= prime(i).pow(e as u32);
        }
        acc - 1
    }

    /// Factor a+1 over consecutive primes; last exponent is entry+1.
    pub fn decode(a: u128) -> Vec<u64> {
        if a == 0 {
            return Vec::new();
        }
        let mut n = a + 1;
        let mut exps = Vec::new();
        let mut i = 0;
        while n > 1 {
            let p = prime(i);
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            exps.push(e);
            i += 1;
        }
        // Trailing zero exponents cannot occur: the last prime divides a+1.
        let last = exps.last_mut().expect("nonempty");
        assert!(*last >= 1);
        *last -= 1;
        exps
    }

    pub fn cantor_pair(m: u64, n: u64) -> u64 {
        (m + n) * (m + n + 1) / 2 + n
    }
}

fn enc(xs: &[u64]) -> SeqCode {
    SeqCode::encode_u64(xs)
}

fn value_u128(a: &SeqCode) -> u128 {
    a.value().to_u128().expect("value fits u128 in test range")
}

/// All lists with entries <= max_entry and length <= max_len.
fn all_lists(max_entry: u64, max_len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for base in &layer {
            for e in 0..=max_entry {
                let mut xs = base.clone();
                xs.push(e);
                next.push(xs);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn frozen_examples_match_oracle() {
    // Values frozen from the oracle before the library was written.
    assert_eq!(oracle::encode(&[]), 0);
    assert_eq!(oracle::encode(&[0]), 1);
    assert_eq!(oracle::encode(&[1]), 3);
    assert_eq!(oracle::encode(&[0, 0]), 2);
    assert_eq!(oracle::encode(&[1, 0]), 5);
    assert_eq!(oracle::encode(&[0, 1]), 8);
    assert_eq!(oracle::decode(2), vec![0, 0]);
    assert_eq!(oracle::decode(5), vec![1, 0]);

    assert_eq!(value_u128(&enc(&[])), 0);
    assert_eq!(value_u128(&enc(&[0])), 1);
    assert_eq!(value_u128(&enc(&[1])), 3);
    assert_eq!(value_u128(&enc(&[0, 0])), 2);
    assert_eq!(value_u128(&enc(&[1, 0])), 5);
    assert_eq!(value_u128(&enc(&[0, 1])), 8);
    assert_eq!(SeqCode::from_value(Nat::from(2u32)).entries_u64(), vec![0, 0]);
    assert_eq!(SeqCode::from_value(Nat::from(5u32)).entries_u64(), vec![1, 0]);
}

#[test]
fn encode_agrees_with_oracle_exhaustively() {
    for xs in all_lists(5, 6) {
        let lib = enc(&xs);
        assert_eq!(value_u128(&lib), oracle::encode(&xs), "encode {xs:?}");
        assert_eq!(lib.entries_u64(), xs, "decode round trip {xs:?}");
        assert_eq!(lib.len(), xs.len());
        // Out-of-range indices read 0.
        assert_eq!(lib.get_u64(xs.len()), 0);
        assert_eq!(lib.get_u64(xs.len() + 3), 0);
    }
}

#[test]
fn decode_agrees_with_oracle_on_raw_values() {
    for a in 0..5000u128 {
        let lib = SeqCode::from_value(Nat::from(a));
        assert_eq!(lib.entries_u64(), oracle::decode(a), "decode {a}");
        assert_eq!(value_u128(&lib), a, "re-encode {a}");
    }
}

#[test]
fn concat_monoid_and_prefix() {
    let lists = all_lists(3, 4);
    for xs in &lists {
        let a = enc(xs);
        assert_eq!(a.concat(&SeqCode::empty()), a);
        assert_eq!(SeqCode::empty().concat(&a), a);
        for n in 0..=xs.len() {
            assert_eq!(a.prefix(n).unwrap(), enc(&xs[..n]));
        }
        assert!(a.prefix(xs.len() + 1).is_err());
        for ys in &lists {
            let spliced: Vec<u64> = xs.iter().chain(ys.iter()).copied().collect();
            assert_eq!(a.concat(&enc(ys)), enc(&spliced), "concat {xs:?} {ys:?}");
        }
    }
    // Associativity on a smaller grid.
    let small = all_lists(2, 2);
    for xs in &small {
        for ys in &small {
            for zs in &small {
                let (a, b, c) = (enc(xs), enc(ys), enc(zs));
                assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
            }
        }
    }
}

#[test]
fn frozen_concat_examples() {
    assert_eq!(value_u128(&enc(&[0]).concat(&enc(&[0]))), 2); // <0>*<0> = <0,0>
    assert_eq!(value_u128(&enc(&[1]).concat(&enc(&[0]))), 5); // <1>*<0> = <1,0>
}

#[test]
fn compare_trichotomy_and_converse() {
    let lists = all_lists(2, 4);
    for xs in &lists {
        for ys in &lists {
            let a = enc(xs);
            let b = enc(ys);
            let fwd = a.compare(&b);
            let bwd = b.compare(&a);
            // Oracle: direct prefix test on the lists.
            let a_pref = xs.len() <= ys.len() && ys[..xs.len()] == xs[..];
            let b_pref = ys.len() <= xs.len() && xs[..ys.len()] == ys[..];
            let expect = match (a_pref, b_pref) {
                (true, true) => SeqOrder::Equal,
                (true, false) => SeqOrder::ProperInitial,
                (false, true) => SeqOrder::ProperExtension,
                (false, false) => SeqOrder::Deviates,
            };
            assert_eq!(fwd, expect, "compare {xs:?} {ys:?}");
            let conv = match expect {
                SeqOrder::Equal => SeqOrder::Equal,
                SeqOrder::ProperInitial => SeqOrder::ProperExtension,
                SeqOrder::ProperExtension => SeqOrder::ProperInitial,
                SeqOrder::Deviates => SeqOrder::Deviates,
            };
            assert_eq!(bwd, conv);
        }
    }
}

#[test]
fn compare_frozen_examples() {
    assert_eq!(
        SeqCode::from_value(Nat::from(1u32)).compare(&SeqCode::from_value(Nat::from(2u32))),
        SeqOrder::ProperInitial
    );
    assert_eq!(
        SeqCode::from_value(Nat::from(1u32)).compare(&SeqCode::from_value(Nat::from(3u32))),
        SeqOrder::Deviates
    );
}

#[test]
fn is_bin_matches_entry_bound() {
    for xs in all_lists(3, 4) {
        assert_eq!(enc(&xs).is_bin(), xs.iter().all(|&e| e < 2), "{xs:?}");
    }
    assert!(SeqCode::from_value(Nat::from(0u32)).is_bin());
    assert!(SeqCode::from_value(Nat::from(3u32)).is_bin()); // <1>
    assert!(!SeqCode::from_value(Nat::from(7u32)).is_bin()); // <2>
}

#[test]
fn pairing_bijection_on_grid() {
    let mut seen = std::collections::HashSet::new();
    for m in 0..=50u64 {
        for n in 0..=50u64 {
            let p = pair(&Nat::from(m), &Nat::from(n));
            assert_eq!(p, Nat::from(oracle::cantor_pair(m, n)), "pair({m},{n})");
            let (m2, n2) = unpair(&p);
            assert_eq!((m2, n2), (Nat::from(m), Nat::from(n)));
            assert!(seen.insert(p), "pair collision at ({m},{n})");
        }
    }
    assert_eq!(pair(&Nat::from(0u32), &Nat::from(0u32)), Nat::from(0u32));
    assert_eq!(pair(&Nat::from(1u32), &Nat::from(0u32)), Nat::from(1u32));
    assert_eq!(pair(&Nat::from(0u32), &Nat::from(1u32)), Nat::from(2u32));
}

#[test]
fn cod2_recurrence_and_inverse() {
    // Frozen: cod2(<>) = <>, cod2(<0>) = <1>, cod2(<1>) = <0,1>.
    assert_eq!(value_u128(&cod2(&SeqCode::empty())), 0);
    assert_eq!(value_u128(&cod2(&enc(&[0]))), 3);
    assert_eq!(value_u128(&cod2(&enc(&[1]))), 8);
    // <0> is not in the image of cod2.
    assert_eq!(cod2_inv(&SeqCode::from_value(Nat::from(1u32))), None);

    for xs in all_lists(3, 4) {
        let s = enc(&xs);
        let b = cod2(&s);
        assert!(b.is_bin(), "cod2 image binary for {xs:?}");
        // Oracle recurrence: image is 0^{x0} 1 0^{x1} 1 ... directly.
        let mut expect = Vec::new();
        for &x in &xs {
            expect.extend(std::iter::repeat_n(0, x as usize));
            expect.push(1);
        }
        assert_eq!(b.entries_u64(), expect, "cod2 {xs:?}");
        assert_eq!(cod2_inv(&b).as_ref(), Some(&s), "cod2_inv o cod2 {xs:?}");
    }

    // Binary codes with a trailing zero block are not in the image.
    for xs in all_lists(1, 5) {
        let b = enc(&xs);
        let in_image = xs.is_empty() || *xs.last().unwrap() == 1;
        assert_eq!(cod2_inv(&b).is_some(), in_image, "image test {xs:?}");
    }
}

#[test]
fn cod2_preserves_prefix_order() {
    // If s extends t then cod2(t) is an initial part of cod2(s).
    let lists = all_lists(2, 3);
    for xs in &lists {
        for ys in &lists {
            let s = enc(xs);
            let t = enc(ys);
            if matches!(t.compare(&s), SeqOrder::ProperInitial | SeqOrder::Equal) {
                let order = cod2(&t).compare(&cod2(&s));
                assert!(
                    matches!(order, SeqOrder::ProperInitial | SeqOrder::Equal),
                    "cod2 order {ys:?} vs {xs:?}"
                );
            }
        }
    }
}

#[test]
fn serialization_is_decimal_value() {
    let a = enc(&[4, 0, 7]);
    let json = serde_json::to_string(&a).unwrap();
    assert_eq!(json, format!("\"{}\"", a.value()));
    let back: SeqCode = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
}
