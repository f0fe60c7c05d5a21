//! Integral-domain arithmetic over the three concrete rings supported by the
//! crate: the integers `Z`, the Gaussian integers `Z[i]` and polynomial rings
//! `GF(q)[x]` over a prime field.
//!
//! A ring is a small value implementing [`Domain`]; elements are plain data
//! (`Domain::Elem`) and every operation goes through the ring object. This
//! keeps the modulus of `GF(q)[x]` out of the element type while letting the
//! rest of the crate stay generic over the ring.

mod gaussian;
mod integers;
mod polyfield;
mod window;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gaussian::{Gaussian, GaussianIntegers};
pub use integers::Integers;
pub use polyfield::{FpPoly, PolyOverPrimeField};
pub use window::{Window, WindowParams, MAX_WINDOW_LEN};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("invalid ring spec `{0}`")]
    InvalidSpec(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("element `{0}` does not belong to ring {1}")]
    SpecMismatch(String, RingSpec),
    #[error("cannot parse `{0}` as an element of {1}")]
    Parse(String, RingSpec),
    #[error("invalid window parameters `{0}`")]
    InvalidParams(String),
    #[error("window of {0} elements exceeds the cap of {MAX_WINDOW_LEN}")]
    WindowTooLarge(u128),
    #[error("operation `{0}` requires a second operand")]
    MissingOperand(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("division by zero")]
    DivideByZero,
    #[error("not divisible")]
    NotDivisible,
}

/// Which ring a value lives in. Parsed from and printed as `Z`, `Zi` or
/// `GF(q)[x]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    Integers,
    GaussianIntegers,
    PolyOverPrimeField { q: u64 },
}

impl RingSpec {
    pub fn poly(q: u64) -> Result<Self, RingError> {
        if is_prime(q) {
            Ok(RingSpec::PolyOverPrimeField { q })
        } else {
            Err(RingError::NotPrime(q))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("Z"),
            RingSpec::GaussianIntegers => f.write_str("Zi"),
            RingSpec::PolyOverPrimeField { q } => write!(f, "GF({q})[x]"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "Z" => return Ok(RingSpec::Integers),
            "Zi" => return Ok(RingSpec::GaussianIntegers),
            _ => {}
        }
        let q = s
            .strip_prefix("GF(")
            .and_then(|rest| rest.strip_suffix(")[x]"))
            .filter(|digits| !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|digits| digits.parse::<u64>().ok())
            .ok_or_else(|| RingError::InvalidSpec(s.to_string()))?;
        RingSpec::poly(q)
    }
}

/// Trial-division primality test; moduli are small.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q < 4 {
        return true;
    }
    if q.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A commutative ring without zero divisors, with canonical element forms,
/// exact division and a deterministic enumeration of finite windows.
pub trait Domain: Clone + fmt::Debug + Send + Sync + 'static {
    /// Canonical element representation. Structural equality is ring equality.
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> RingSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, base: &Self::Elem, mut exp: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut sq = base.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `Some(c)` with `b * c = a` if it exists. `b` is nonzero.
    fn div_nonzero(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Exact division in the ring. The quotient is unique by cancellation.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, DivisionError> {
        if self.is_zero(b) {
            return Err(DivisionError::DivideByZero);
        }
        self.div_nonzero(a, b).ok_or(DivisionError::NotDivisible)
    }

    /// Whether `a` is in canonical form for this ring.
    fn is_canonical(&self, a: &Self::Elem) -> bool;
    fn normalize(&self, a: Self::Elem) -> Self::Elem;

    /// Elements of the window described by `params`, in canonical order.
    fn enumerate(&self, params: &WindowParams) -> Result<Vec<Self::Elem>, RingError>;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, RingError>;

    fn check(&self, a: &Self::Elem) -> Result<(), RingError> {
        if self.is_canonical(a) {
            Ok(())
        } else {
            Err(RingError::SpecMismatch(format!("{a:?}"), self.spec()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Sub,
}

/// Checked arithmetic entry point: both operands are validated against the
/// ring before the operation runs.
pub fn ring_arith<R: Domain>(ring: &R, op: ArithOp, a: &R::Elem, b: Option<&R::Elem>) -> Result<R::Elem, RingError> {
    ring.check(a)?;
    if let Some(b) = b {
        ring.check(b)?;
    }
    let second = |name| b.ok_or(RingError::MissingOperand(name));
    Ok(match op {
        ArithOp::Add => ring.add(a, second("add")?),
        ArithOp::Mul => ring.mul(a, second("mul")?),
        ArithOp::Sub => ring.sub(a, second("sub")?),
        ArithOp::Neg => ring.neg(a),
    })
}

/// Runs `$body` with `$ring` bound to the concrete ring named by a
/// [`RingSpec`]. The body is monomorphised once per ring.
#[macro_export]
macro_rules! with_ring {
    ($spec:expr, |$ring:ident| $body:expr) => {
        match $spec {
            $crate::ring::RingSpec::Integers => {
                let $ring = $crate::ring::Integers;
                $body
            }
            $crate::ring::RingSpec::GaussianIntegers => {
                let $ring = $crate::ring::GaussianIntegers;
                $body
            }
            $crate::ring::RingSpec::PolyOverPrimeField { q } => {
                let $ring = $crate::ring::PolyOverPrimeField::new(q).expect("RingSpec carries a prime modulus");
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings() {
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Integers);
        assert_eq!("Zi".parse::<RingSpec>().unwrap(), RingSpec::GaussianIntegers);
        assert_eq!("GF(7)[x]".parse::<RingSpec>().unwrap(), RingSpec::PolyOverPrimeField { q: 7 });
        assert_eq!("GF(4)[x]".parse::<RingSpec>(), Err(RingError::NotPrime(4)));
        assert!("GF()[x]".parse::<RingSpec>().is_err());
        assert!("Q".parse::<RingSpec>().is_err());
        for s in ["Z", "Zi", "GF(2)[x]", "GF(13)[x]"] {
            assert_eq!(s.parse::<RingSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn arith_examples() {
        let z = Integers;
        let two = z.from_i64(2);
        let three = z.from_i64(3);
        assert_eq!(ring_arith(&z, ArithOp::Add, &two, Some(&three)).unwrap(), z.from_i64(5));
        assert_eq!(ring_arith(&z, ArithOp::Add, &two, None), Err(RingError::MissingOperand("add")));

        let gf2 = PolyOverPrimeField::new(2).unwrap();
        let p = gf2.parse("x+1").unwrap();
        assert_eq!(ring_arith(&gf2, ArithOp::Add, &p, Some(&p)).unwrap(), gf2.zero());
        let bogus = FpPoly::from_raw(vec![3]);
        assert!(matches!(ring_arith(&gf2, ArithOp::Add, &bogus, Some(&p)), Err(RingError::SpecMismatch(..))));

        let zi = GaussianIntegers;
        let a = zi.parse("1+i").unwrap();
        let b = zi.parse("1-i").unwrap();
        assert_eq!(ring_arith(&zi, ArithOp::Mul, &a, Some(&b)).unwrap(), zi.from_i64(2));
    }

    #[test]
    fn division_examples() {
        let z = Integers;
        assert_eq!(z.exact_div(&z.from_i64(6), &z.from_i64(3)), Ok(z.from_i64(2)));
        assert_eq!(z.exact_div(&z.from_i64(7), &z.from_i64(3)), Err(DivisionError::NotDivisible));
        assert_eq!(z.exact_div(&z.from_i64(7), &z.zero()), Err(DivisionError::DivideByZero));
        let gf2 = PolyOverPrimeField::new(2).unwrap();
        let a = gf2.parse("x^2+x").unwrap();
        let b = gf2.parse("x").unwrap();
        assert_eq!(gf2.exact_div(&a, &b), Ok(gf2.parse("x+1").unwrap()));
    }

    #[test]
    fn dispatch_macro() {
        let spec: RingSpec = "GF(3)[x]".parse().unwrap();
        let shown = with_ring!(spec, |ring| ring.format(&ring.from_i64(5)));
        assert_eq!(shown, "2");
    }
}
