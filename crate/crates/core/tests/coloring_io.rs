use std::sync::Arc;

use monochrome::coloring::{Coloring, ColoringError};
use monochrome::ring::{Domain, GaussianIntegers, Integers, PolyOverPrimeField, Window, WindowParams};

fn roundtrip<R: Domain>(ring: R, params: &[WindowParams]) {
    for (k, p) in params.iter().cycle().take(100).enumerate() {
        let w = Arc::new(Window::new(ring.clone(), *p).unwrap());
        let r = 1 + (k as u32 % 5);
        let c = Coloring::random(w, r, k as u64).unwrap();
        let text = c.to_text();
        assert!(text.ends_with('\n') && !text.ends_with("\n\n"));
        assert_eq!(Coloring::from_text(ring.clone(), &text).unwrap(), c);
    }
}

#[test]
fn text_roundtrip_every_ring() {
    roundtrip(Integers, &[WindowParams::n(1), WindowParams::n(41), WindowParams::N { n: 17, signed: true }]);
    roundtrip(GaussianIntegers, &[WindowParams::B(0), WindowParams::B(3), WindowParams::B(6)]);
    roundtrip(PolyOverPrimeField::new(3).unwrap(), &[WindowParams::D(1), WindowParams::D(3), WindowParams::D(5)]);
}

#[test]
fn file_roundtrip() {
    let dir = std::env::temp_dir().join(format!("monochrome-coloring-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.txt");
    let w = Arc::new(Window::new(GaussianIntegers, WindowParams::B(2)).unwrap());
    let c = Coloring::random(w, 3, 99).unwrap();
    c.store(&path).unwrap();
    assert_eq!(Coloring::load(GaussianIntegers, &path).unwrap(), c);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn random_colorings_are_seed_stable() {
    let w = Arc::new(Window::new(Integers, WindowParams::n(200)).unwrap());
    let a = Coloring::random(w.clone(), 3, 7).unwrap();
    assert_eq!(a, Coloring::random(w.clone(), 3, 7).unwrap());
    assert_ne!(a, Coloring::random(w, 3, 8).unwrap());
    for i in 1..=3 {
        assert!(a.colors().contains(&i));
    }
}

#[test]
fn rejects_bad_files() {
    let wrong_ring = "ring Zi\nwindow N=3\ncolors 2\n1 2 1\n";
    assert!(Coloring::from_text(Integers, wrong_ring).is_err());
    let short = "ring Z\nwindow N=3\ncolors 2\n1 2\n";
    assert!(matches!(Coloring::from_text(Integers, short), Err(ColoringError::WrongCount { expected: 3, found: 2 })));
    let out_of_range = "ring Z\nwindow N=3\ncolors 2\n1 3 1\n";
    assert!(matches!(Coloring::from_text(Integers, out_of_range), Err(ColoringError::ColorOutOfRange { .. })));
}
