//! Rational-interval reals, the ternary interval map, and bisection,
//! cross-checked against an oracle that does its own fraction
//! arithmetic on machine integers.

use bimwb::coding::{bin_codes_of_length, SeqCode, SeqOrder};
use bimwb::reals::{
    bisect, double, q_embed, rat, real_less, rho, s_relation, ternary, thirds, PLFunction,
    RatInterval, RealOrder, SRelation,
};
use bimwb::streams::{BairePoint, FinSeed, Tail};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

mod oracle {
    //! Exact fractions over machine integers, enough for interval
    //! arithmetic at desk depth.

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct Frac {
        pub num: i128,
        pub den: i128, // > 0
    }

    impl Frac {
        pub fn new(num: i128, den: i128) -> Frac {
            assert!(den > 0);
            let g = gcd(num.abs().max(1), den);
            Frac { num: num / g, den: den / g }
        }
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    /// The interval of a binary word under the ternary recurrence:
    /// endpoints over the common denominator 3^len.
    pub fn ternary(word: &[u64]) -> (Frac, Frac) {
        let (mut lo, mut hi, mut den) = (0i128, 1i128, 1i128);
        for &bit in word {
            // Over denominator 3*den: left third (3lo, 2lo+hi), right
            // third (lo+2hi, 3hi).
            if bit == 0 {
                let new_hi = 2 * lo + hi;
                lo *= 3;
                hi = new_hi;
            } else {
                lo += 2 * hi;
                hi *= 3;
            }
            den *= 3;
        }
        (Frac::new(lo, den), Frac::new(hi, den))
    }
}

fn q(num: i64, den: i64) -> bimwb::reals::Rat {
    rat(num, den)
}

fn interval(lo_num: i64, lo_den: i64, hi_num: i64, hi_den: i64) -> RatInterval {
    RatInterval::new(q(lo_num, lo_den), q(hi_num, hi_den)).unwrap()
}

fn random_rat(rng: &mut ChaCha8Rng) -> bimwb::reals::Rat {
    let num = (rng.next_u32() % 201) as i64 - 100;
    let den = (rng.next_u32() % 19 + 1) as i64;
    q(num, den)
}

fn random_interval(rng: &mut ChaCha8Rng) -> RatInterval {
    loop {
        let a = random_rat(rng);
        let b = random_rat(rng);
        if a < b {
            return RatInterval::new(a, b).unwrap();
        }
        if b < a {
            return RatInterval::new(b, a).unwrap();
        }
    }
}

#[test]
fn interval_relations_frozen() {
    let unit = interval(0, 1, 1, 1);
    assert_eq!(s_relation(&unit, &unit), SRelation::Overlapping);
    assert_eq!(s_relation(&interval(1, 4, 1, 2), &unit), SRelation::InsideProper);
    assert_eq!(s_relation(&interval(0, 1, 1, 3), &interval(1, 2, 1, 1)), SRelation::Apart);
    // Sharing an endpoint is not apartness.
    assert_eq!(s_relation(&interval(0, 1, 1, 3), &interval(1, 3, 1, 1)), SRelation::Overlapping);
    // Proper inclusion is one-sided.
    assert_eq!(s_relation(&unit, &interval(1, 4, 1, 2)), SRelation::Overlapping);
    // Degenerate construction is rejected.
    assert!(RatInterval::new(q(1, 2), q(1, 2)).is_err());
    assert!(RatInterval::new(q(1, 1), q(0, 1)).is_err());
}

#[test]
fn relation_classification_matches_endpoint_comparisons() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let s = random_interval(&mut rng);
        let t = random_interval(&mut rng);
        let expected = if t.lo() < s.lo() && s.hi() < t.hi() {
            SRelation::InsideProper
        } else if s.hi() < t.lo() || t.hi() < s.lo() {
            SRelation::Apart
        } else {
            SRelation::Overlapping
        };
        assert_eq!(s_relation(&s, &t), expected, "{s:?} vs {t:?}");
    }
}

#[test]
fn thirds_partition_and_double() {
    let (l, m, r) = thirds(&interval(0, 1, 1, 1));
    assert_eq!(l, interval(0, 1, 1, 3));
    assert_eq!(m, interval(1, 3, 2, 3));
    assert_eq!(r, interval(2, 3, 1, 1));
    assert_eq!(double(&interval(1, 3, 2, 3)), interval(1, 6, 5, 6));

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let s = random_interval(&mut rng);
        let (l, m, r) = thirds(&s);
        assert_eq!(l.lo(), s.lo());
        assert_eq!(l.hi(), m.lo());
        assert_eq!(m.hi(), r.lo());
        assert_eq!(r.hi(), s.hi());
        assert_eq!(l.length(), m.length());
        assert_eq!(m.length(), r.length());
        let d = double(&s);
        assert_eq!(d.length(), s.length() * q(2, 1));
        assert_eq!(d.lo() + d.hi(), s.lo() + s.hi());
    }
}

#[test]
fn narrow_subintervals_avoid_an_outer_third() {
    // A subinterval less than a third as long as its host is apart from
    // the host's left or right third.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let s = random_interval(&mut rng);
        // t: a subinterval of width length(s)/4 at a random offset.
        let w = s.length() / q(4, 1);
        let slack = s.length() - w.clone();
        let k = (rng.next_u32() % 101) as i64;
        let lo = s.lo() + slack * q(k, 100);
        let t = RatInterval::new(lo.clone(), lo + w).unwrap();
        let (l, _, r) = thirds(&s);
        assert!(
            s_relation(&t, &l) == SRelation::Apart || s_relation(&t, &r) == SRelation::Apart,
            "{t:?} inside {s:?}"
        );
    }
}

#[test]
fn ternary_map_matches_oracle() {
    assert_eq!(ternary(&SeqCode::empty()).unwrap(), interval(0, 1, 1, 1));
    assert_eq!(ternary(&SeqCode::encode_u64(&[0])).unwrap(), interval(0, 1, 1, 3));
    assert_eq!(ternary(&SeqCode::encode_u64(&[1])).unwrap(), interval(2, 3, 1, 1));
    assert!(ternary(&SeqCode::encode_u64(&[2])).is_err());

    for len in 0..=8 {
        for a in bin_codes_of_length(len) {
            let got = ternary(&a).unwrap();
            let (lo, hi) = oracle::ternary(&a.entries_u64());
            assert_eq!(got.lo(), q(lo.num as i64, lo.den as i64), "{a:?}");
            assert_eq!(got.hi(), q(hi.num as i64, hi.den as i64), "{a:?}");
            assert_eq!(got.length(), q(1, 3i64.pow(len as u32)), "{a:?}");
        }
    }
}

#[test]
fn ternary_inside_doubled_forces_prefix() {
    let all: Vec<SeqCode> = (0..=5).flat_map(bin_codes_of_length).collect();
    let mut hits = 0;
    for a in &all {
        let da = ternary(a).unwrap();
        for b in &all {
            if s_relation(&da, &double(&ternary(b).unwrap())) == SRelation::InsideProper {
                hits += 1;
                assert!(
                    matches!(b.compare(a), SeqOrder::Equal | SeqOrder::ProperInitial),
                    "{a:?} {b:?}"
                );
            }
        }
    }
    // The property is not vacuous.
    assert!(hits > all.len());
}

#[test]
fn rational_embedding_and_comparison() {
    let half = q_embed(q(1, 2));
    assert_eq!(half.at(2), interval(1, 4, 3, 4));
    assert_eq!(real_less(&q_embed(q(0, 1)), &q_embed(q(1, 1)), 2), RealOrder::Less);
    assert_eq!(real_less(&half, &half, 5), RealOrder::UnknownAt(5));

    // Asymmetry and monotone refinement over random rational pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let a = random_rat(&mut rng);
        let b = random_rat(&mut rng);
        if a == b {
            continue;
        }
        let (small, large) = if a < b { (a, b) } else { (b, a) };
        let x = q_embed(small);
        let y = q_embed(large);
        let mut seen_less = false;
        for budget in 0..=8 {
            match real_less(&x, &y, budget) {
                RealOrder::Less => seen_less = true,
                RealOrder::Greater => panic!("greater on an increasing pair"),
                RealOrder::UnknownAt(b) => {
                    assert!(!seen_less, "refinement regressed at {b}");
                }
            }
        }
        assert!(seen_less, "budget 8 separates all catalogue gaps");
    }
}

#[test]
fn cantor_map_nests_and_converges() {
    // The all-zero point lands on 0: at index n the interval is the
    // doubled left-most ternary piece.
    let zero = rho(&BairePoint::zero()).unwrap();
    for n in 0..6u64 {
        let s = zero.at(n);
        let width = q(1, 3i64.pow(n as u32));
        assert_eq!(s.lo(), -width.clone() / q(2, 1));
        assert_eq!(s.hi(), width.clone() * q(3, 2));
        assert!(s.lo() <= q(0, 1) && q(0, 1) <= s.hi());
    }
    // The all-one point lands on 1, symmetrically.
    let one = rho(&BairePoint::constant(1)).unwrap();
    for n in 0..6u64 {
        let s = one.at(n);
        assert!(s.lo() <= q(1, 1) && q(1, 1) <= s.hi());
        assert_eq!(s.length(), q(2, 3i64.pow(n as u32)));
    }
    // Non-binary points are rejected.
    assert!(rho(&BairePoint::constant(2)).is_err());

    // Nesting is proper at every step for random binary points.
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..50 {
        let prefix: Vec<u64> = (0..12).map(|_| (rng.next_u32() % 2) as u64).collect();
        let gamma = FinSeed::new(prefix, Tail::Zero).point();
        let code = rho(&gamma).unwrap();
        for n in 0..12u64 {
            assert_eq!(
                s_relation(&code.at(n + 1), &code.at(n)),
                SRelation::InsideProper
            );
        }
    }
}

#[test]
fn bisection_traps_a_root() {
    // x - 1/3 on [0,1].
    let phi = PLFunction::new(vec![(q(0, 1), q(-1, 3)), (q(1, 1), q(2, 3))]).unwrap();
    let run = bisect(&phi, 20).unwrap();
    assert_eq!(run.exact_root, None);
    assert_eq!(run.intervals.len(), 21);
    let last = run.intervals.last().unwrap();
    assert_eq!(last.length(), q(1, 1 << 20));
    assert!(last.lo() <= q(1, 3) && q(1, 3) <= last.hi());
    // Exact halving at every step.
    for (k, step) in run.intervals.iter().enumerate() {
        assert_eq!(step.length(), q(1, 1i64 << k));
    }

    // 2x - 1 hits its root at the first midpoint.
    let phi = PLFunction::new(vec![(q(0, 1), q(-1, 1)), (q(1, 1), q(1, 1))]).unwrap();
    let run = bisect(&phi, 20).unwrap();
    assert_eq!(run.exact_root, Some(q(1, 2)));
    assert_eq!(run.intervals.len(), 1);

    // End-sign precondition.
    let rising = PLFunction::new(vec![(q(0, 1), q(1, 3)), (q(1, 1), q(2, 3))]).unwrap();
    assert!(bisect(&rising, 4).is_err());
}

#[test]
fn bisection_sign_invariant_on_random_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut produced = 0;
    while produced < 50 {
        // Random breakpoints on [0,1] with a negative start and a
        // positive end.
        let interior = rng.next_u32() % 4;
        let mut xs: Vec<bimwb::reals::Rat> = (0..interior)
            .map(|_| q((rng.next_u32() % 99 + 1) as i64, 100))
            .collect();
        xs.sort();
        xs.dedup();
        let mut points = vec![(q(0, 1), q(-((rng.next_u32() % 50 + 1) as i64), 25))];
        for x in xs {
            points.push((x, random_rat(&mut rng)));
        }
        points.push((q(1, 1), q((rng.next_u32() % 50 + 1) as i64, 25)));
        let phi = PLFunction::new(points).unwrap();
        let run = bisect(&phi, 12).unwrap();
        produced += 1;
        for step in &run.intervals {
            assert!(phi.eval(&step.lo()) < q(0, 1), "{phi:?} at {step:?}");
            assert!(q(0, 1) < phi.eval(&step.hi()), "{phi:?} at {step:?}");
        }
        if let Some(root) = &run.exact_root {
            assert_eq!(phi.eval(root), q(0, 1));
        }
    }
}

#[test]
fn rationals_serialize_as_fraction_strings() {
    let s = interval(1, 3, 1, 2);
    let json = serde_json::to_string(&s).unwrap();
    assert_eq!(json, r#"["1/3","1/2"]"#);
    let back: RatInterval = serde_json::from_str(&json).unwrap();
    assert_eq!(back, s);
    // Integral endpoints keep an explicit denominator of one omitted.
    assert_eq!(serde_json::to_string(&interval(0, 1, 2, 1)).unwrap(), r#"["0","2"]"#);
    // Degenerate data is rejected on the way in.
    assert!(serde_json::from_str::<RatInterval>(r#"["1/2","1/2"]"#).is_err());
    assert!(serde_json::from_str::<RatInterval>(r#"["x","1/2"]"#).is_err());
}
