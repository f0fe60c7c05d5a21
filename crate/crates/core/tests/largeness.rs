mod common;

use std::collections::BTreeSet;

use common::{pick, transport_trial};
use monochrome::largeness::{
    finite_products, finite_sums, ideal_in_window, ipstar_refute, parse_element_set, ps_witness_search,
    ps_witness_search_par, syndetic_check, ElementSet, LargenessError, SyndeticCheck,
};
use monochrome::ring::{Domain, GaussianIntegers, Integers, PolyOverPrimeField, Window, WindowParams};
use monochrome::rng::SplitMix64;
use num_bigint::BigInt;
use proptest::prelude::*;

fn zset(v: impl IntoIterator<Item = i64>) -> ElementSet<BigInt> {
    v.into_iter().map(BigInt::from).collect()
}

fn zvec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #[test]
    fn finite_sums_match_subset_loop(seq in prop::collection::vec(-50i64..50, 1..10)) {
        let fs = finite_sums(&Integers, &zvec(&seq)).unwrap();
        let brute: ElementSet<BigInt> = (1u32..1 << seq.len())
            .map(|mask| (0..seq.len()).filter(|i| mask >> i & 1 == 1).map(|i| seq[i]).sum::<i64>())
            .map(BigInt::from)
            .collect();
        prop_assert_eq!(fs.values, brute);
    }

    #[test]
    fn finite_products_match_subset_loop(seq in prop::collection::vec(-6i64..7, 1..9)) {
        let fp = finite_products(&Integers, &zvec(&seq)).unwrap();
        let brute: ElementSet<BigInt> = (1u32..1 << seq.len())
            .map(|mask| (0..seq.len()).filter(|i| mask >> i & 1 == 1).map(|i| seq[i]).product::<i64>())
            .map(BigInt::from)
            .collect();
        prop_assert_eq!(fp.values, brute);
    }

    #[test]
    fn least_anchor_matches_brute_force(
        members in prop::collection::btree_set(-20i64..=20, 0..30),
        gaps in prop::collection::vec(-3i64..=3, 1..3),
        block in prop::collection::vec(-4i64..=4, 1..4),
    ) {
        let w = Window::new(Integers, WindowParams::N { n: 20, signed: true }).unwrap();
        let a = zset(members.iter().copied());
        let found = ps_witness_search(&a, &zvec(&gaps), &zvec(&block), &w).map(|wt| wt.anchor);
        let brute = (-20i64..=20)
            .find(|x| block.iter().all(|b| gaps.iter().any(|t| members.contains(&(t + b + x)))))
            .map(BigInt::from);
        prop_assert_eq!(&found, &brute);
        let par = ps_witness_search_par(&a, &zvec(&gaps), &zvec(&block), &w, 4).map(|wt| wt.anchor);
        prop_assert_eq!(par, brute);
    }
}

#[test]
fn syndetic_sets_have_every_block() {
    let w = Window::new(Integers, WindowParams::N { n: 12, signed: true }).unwrap();
    let gaps = zvec(&[-1, 0, 1]);
    let mut rng = SplitMix64::new(3);
    let mut tried = 0;
    while tried < 40 {
        let a: ElementSet<BigInt> = (-12i64..=12).filter(|_| rng.below(3) != 0).map(BigInt::from).collect();
        if syndetic_check(&a, &gaps, &w) != SyndeticCheck::Holds {
            continue;
        }
        tried += 1;
        // Every block that fits inside the window under some shift.
        for mask in 1u32..1 << 6 {
            let block: Vec<i64> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| i - 3).collect();
            let fits = (-12i64..=12).any(|x| block.iter().all(|b| (b + x).abs() <= 12));
            if fits {
                assert!(ps_witness_search(&a, &gaps, &zvec(&block), &w).is_some(), "block {block:?}");
            }
        }
    }
}

#[test]
fn syndetic_counterexample_is_first_uncovered() {
    let w = Window::new(Integers, WindowParams::n(10)).unwrap();
    assert_eq!(syndetic_check(&zset([2, 4, 6, 8, 10]), &zvec(&[0, 1]), &w), SyndeticCheck::Holds);
    assert_eq!(
        syndetic_check(&zset([2, 4, 6, 10]), &zvec(&[0, 1]), &w),
        SyndeticCheck::Counterexample(BigInt::from(7))
    );
    assert!(ps_witness_search(&zset([]), &zvec(&[0]), &zvec(&[0]), &w).is_none());
}

#[test]
fn transports_hold_in_every_ring() {
    let mut rng = SplitMix64::new(17);
    let z = Window::new(Integers, WindowParams::N { n: 30, signed: true }).unwrap();
    let g = Window::new(GaussianIntegers, WindowParams::B(3)).unwrap();
    let p = Window::new(PolyOverPrimeField::new(3).unwrap(), WindowParams::D(3)).unwrap();
    for _ in 0..100 {
        transport_trial(&z, &mut rng).unwrap();
        transport_trial(&g, &mut rng).unwrap();
        transport_trial(&p, &mut rng).unwrap();
    }
}

#[test]
fn multiples_are_ip_star_evidence() {
    let entries = Window::new(Integers, WindowParams::n(100)).unwrap();
    for n in 2..=6i64 {
        let big = Window::new(Integers, WindowParams::N { n: 100 * n as u64, signed: true }).unwrap();
        let a = ideal_in_window(&big, &BigInt::from(n));
        assert_eq!(ipstar_refute(&a, &entries, n as usize, 100, n as u64).unwrap(), None);
    }
    let odds =
        parse_element_set(&Window::new(Integers, WindowParams::N { n: 200, signed: true }).unwrap(), "odds").unwrap();
    let seq = ipstar_refute(&odds, &entries, 1, 5, 1).unwrap().expect("an even entry within five draws");
    assert!(seq.iter().all(|e| !odds.contains(e)));
    assert_eq!(ipstar_refute(&odds, &entries, 0, 5, 1), Err(LargenessError::EmptySequence));
}

#[test]
fn gaussian_multiples_of_one_plus_i() {
    let w = Window::new(GaussianIntegers, WindowParams::B(6)).unwrap();
    let m = GaussianIntegers.parse("1+i").unwrap();
    let ideal = ideal_in_window(&w, &m);
    let brute: BTreeSet<_> = w.elements().iter().filter(|e| (&e.re + &e.im) % 2 == BigInt::from(0)).cloned().collect();
    assert_eq!(ideal, brute);
    let mut rng = SplitMix64::new(1);
    for _ in 0..20 {
        let e = pick(&w, &mut rng);
        assert_eq!(ideal.contains(&e), GaussianIntegers.div_nonzero(&e, &m).is_some());
    }
}
