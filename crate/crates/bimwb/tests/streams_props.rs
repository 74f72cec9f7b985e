//! Properties of rule-given points: memo invisibility, shift composition,
//! and soundness of the decided/enumerated set translation.

use bimwb::coding::SeqCode;
use bimwb::streams::{
    llpo_probe, lpo_probe, BairePoint, FinSeed, LlpoVerdict, LpoVerdict, Tail,
};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn random_seed(rng: &mut ChaCha8Rng) -> FinSeed {
    let len = (rng.next_u32() % 6) as usize;
    let prefix: Vec<u64> = (0..len).map(|_| (rng.next_u32() % 4) as u64).collect();
    let tail = if rng.next_u32().is_multiple_of(2) {
        Tail::Zero
    } else {
        let clen = 1 + (rng.next_u32() % 3) as usize;
        Tail::Cycle((0..clen).map(|_| (rng.next_u32() % 4) as u64).collect())
    };
    FinSeed::new(prefix, tail)
}

#[test]
fn memoization_is_invisible() {
    let seed = FinSeed::new(vec![7, 1, 2], Tail::Cycle(vec![5, 6]));
    let p = seed.point();
    // Interleave point queries and prefix queries in scrambled order.
    let scrambled = [9u64, 0, 4, 2, 9, 1, 7, 3];
    let first: Vec<u64> = scrambled.iter().map(|&i| p.at(i)).collect();
    let _ = p.prefix_code(12);
    let second: Vec<u64> = scrambled.iter().map(|&i| p.at(i)).collect();
    assert_eq!(first, second);
    // A fresh, unmemoized point agrees everywhere.
    let fresh = seed.point();
    assert_eq!(p.prefix_values(16), fresh.prefix_values(16));
}

#[test]
fn shift_composes_along_concat() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let alpha = random_seed(&mut rng).point();
        let s = SeqCode::encode_u64(&[(rng.next_u32() % 3) as u64]);
        let t = SeqCode::encode_u64(&[(rng.next_u32() % 3) as u64, (rng.next_u32() % 2) as u64]);
        let twice = alpha.shift(&s).shift(&t);
        let once = alpha.shift(&s.concat(&t));
        for m in 0..20u64 {
            assert_eq!(twice.at(m), once.at(m));
        }
    }
}

#[test]
fn nested_subsequence_is_pair_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10 {
        let alpha = random_seed(&mut rng).point();
        for m in 0..3u64 {
            for n in 0..3u64 {
                let nested = alpha.subsequence(m).subsequence(n);
                let direct = alpha.shift(&SeqCode::encode_u64(&[m, n]));
                for i in 0..20u64 {
                    assert_eq!(nested.at(i), direct.at(i), "m={m} n={n} i={i}");
                }
            }
        }
    }
}

#[test]
fn d_to_e_sound_and_complete_on_seeds() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let seed = random_seed(&mut rng);
        let alpha = seed.point();
        let beta = alpha.d_to_e();
        for n in 0..=30u64 {
            let decided = alpha.d_member(n);
            let enumerated = beta.e_witness(n, 31).is_some();
            assert_eq!(decided, enumerated, "seed {seed:?} n={n}");
        }
    }
}

#[test]
fn d_to_e_pointwise_example() {
    let alpha = FinSeed::new(vec![0, 7], Tail::Zero).point();
    let beta = alpha.d_to_e();
    assert_eq!(beta.prefix_values(4), vec![0, 2, 0, 0]);
}

#[test]
fn lpo_witness_is_least() {
    for k in 0..=20u64 {
        let mut prefix = vec![0u64; k as usize];
        prefix.push(1);
        let alpha = FinSeed::new(prefix, Tail::Zero).point();
        match lpo_probe(&alpha, 64) {
            LpoVerdict::Witness(n) => {
                assert_eq!(n, k);
                assert_ne!(alpha.at(n), 0);
                assert!((0..n).all(|m| alpha.at(m) == 0));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }
}

#[test]
fn llpo_matches_parity_of_least_witness() {
    for k in 0..=15u64 {
        let mut prefix = vec![0u64; k as usize];
        prefix.push(3);
        let alpha = FinSeed::new(prefix, Tail::Zero).point();
        let expect = if k % 2 == 1 { LlpoVerdict::EvenDisjunct } else { LlpoVerdict::OddDisjunct };
        assert_eq!(llpo_probe(&alpha, 64), expect, "k={k}");
    }
}

#[test]
fn identity_rule_shift_example() {
    // Point whose value at index i is i itself (truncated to u64).
    let ident = BairePoint::from_rule("identity", |n| {
        use num_traits::ToPrimitive;
        n.to_u64().unwrap_or(u64::MAX)
    });
    // Shifting by <0> (code 1) reads index <0>*<> = <0> = 1 at position 0.
    let shifted = ident.shift(&SeqCode::encode_u64(&[0]));
    let expected: u64 =
        SeqCode::encode_u64(&[0]).concat(&SeqCode::empty()).value().try_into().unwrap();
    assert_eq!(shifted.at(0), expected);
}
