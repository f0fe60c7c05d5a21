//! Finite, checkable shadows of monochromatic sums-and-products
//! configurations `{xy} ∪ {x + f(y) : f ∈ F}` over windows of `Z`, the
//! Gaussian integers and `GF(q)[x]`.
//!
//! Everything is generic over [`ring::Domain`]; the aliases below fix the
//! three supported rings.

pub mod coloring;
pub mod halesjewett;
pub mod largeness;
pub mod patterns;
pub mod ring;
pub mod rng;
pub mod search;
pub mod ufp;

pub use coloring::{Coloring, ColoringError};
pub use patterns::{PolyFamily, ScanConstraints, Witness, ZeroConstPoly};
pub use ring::{Domain, Gaussian, GaussianIntegers, Integers, PolyOverPrimeField, RingSpec, Window, WindowParams};

pub type IntWindow = Window<Integers>;
pub type GaussianWindow = Window<GaussianIntegers>;
pub type PolyWindow = Window<PolyOverPrimeField>;

pub type IntColoring = Coloring<Integers>;
pub type GaussianColoring = Coloring<GaussianIntegers>;
pub type PolyColoring = Coloring<PolyOverPrimeField>;

pub type IntFamily = PolyFamily<num_bigint::BigInt>;
pub type GaussianFamily = PolyFamily<Gaussian>;
pub type PolyFamilyOverField = PolyFamily<ring::FpPoly>;
