mod common;

use common::sigma_trial;
use monochrome::halesjewett::{verify_sigma_line_identity, PhjPoint, SigmaError, WildcardSet, YAssignment};
use monochrome::patterns::PolyFamily;
use monochrome::ring::{GaussianIntegers, Integers, PolyOverPrimeField, Window, WindowParams};
use monochrome::rng::SplitMix64;
use num_bigint::BigInt;

#[test]
fn identity_holds_on_random_instances() {
    let mut rng = SplitMix64::new(2024);
    let z = Window::new(Integers, WindowParams::N { n: 9, signed: true }).unwrap();
    let g = Window::new(GaussianIntegers, WindowParams::B(2)).unwrap();
    let p = Window::new(PolyOverPrimeField::new(3).unwrap(), WindowParams::D(2)).unwrap();
    for _ in 0..200 {
        assert!(sigma_trial(&z, &mut rng).unwrap());
        assert!(sigma_trial(&g, &mut rng).unwrap());
        assert!(sigma_trial(&p, &mut rng).unwrap());
    }
}

#[test]
fn worked_example_over_integers() {
    // F = {t, 2t}: alphabet {1, 2}; N = 2, y = (3, 5), gamma = {2}.
    let fam = PolyFamily::parse(&Integers, "t; 2t").unwrap();
    let y = YAssignment::multiplicative(&Integers, &[BigInt::from(3), BigInt::from(5)], 1);
    let u = PhjPoint::new(1, 2, 2, vec![vec![2, 1]]).unwrap();
    let gamma = WildcardSet::new(2, [2]).unwrap();
    let checks = verify_sigma_line_identity(&Integers, &fam, &y, &gamma, &u, &BigInt::from(7)).unwrap();
    // s = 2*3 = 6, y_gamma = 5; rhs = 7 + 6 + f(5).
    assert_eq!(checks[0].rhs, BigInt::from(7 + 6 + 5));
    assert_eq!(checks[1].rhs, BigInt::from(7 + 6 + 10));
    assert!(checks.iter().all(|c| c.holds));
}

#[test]
fn rejects_non_multiplicative_y() {
    let fam = PolyFamily::parse(&Integers, "t^2").unwrap();
    let mut entries: Vec<(Vec<usize>, BigInt)> = vec![(vec![1], BigInt::from(2)), (vec![1, 1], BigInt::from(5))];
    entries.sort();
    let y = YAssignment::from_entries(1, 2, entries);
    let u = PhjPoint::constant(2, 1, 2, 1).unwrap();
    let gamma = WildcardSet::new(1, [1]).unwrap();
    let err = verify_sigma_line_identity(&Integers, &fam, &y, &gamma, &u, &BigInt::from(0)).unwrap_err();
    assert_eq!(err, SigmaError::NotMultiplicative(vec![1, 1]));
}
