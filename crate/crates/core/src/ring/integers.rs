use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Domain, RingError, RingSpec, WindowParams, MAX_WINDOW_LEN};

/// The ring of rational integers, backed by arbitrary-precision `BigInt`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Domain for Integers {
    type Elem = BigInt;

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn div_nonzero(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }

    fn is_canonical(&self, _a: &BigInt) -> bool {
        true
    }

    fn normalize(&self, a: BigInt) -> BigInt {
        a
    }

    fn enumerate(&self, params: &WindowParams) -> Result<Vec<BigInt>, RingError> {
        match *params {
            WindowParams::N { n, signed } => {
                if n == 0 {
                    return Err(RingError::InvalidParams(params.to_string()));
                }
                let len = if signed { 2 * n as u128 + 1 } else { n as u128 };
                if len > MAX_WINDOW_LEN as u128 {
                    return Err(RingError::WindowTooLarge(len));
                }
                let n = n as i64;
                let lo = if signed { -n } else { 1 };
                Ok((lo..=n).map(BigInt::from).collect())
            }
            _ => Err(RingError::InvalidParams(params.to_string())),
        }
    }

    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<BigInt, RingError> {
        let t = strip_parens(s.trim());
        let t = t.strip_prefix('+').unwrap_or(t);
        t.parse::<BigInt>().map_err(|_| RingError::Parse(s.to_string(), RingSpec::Integers))
    }
}

/// Removes one pair of enclosing parentheses, if the whole string is wrapped.
pub(crate) fn strip_parens(s: &str) -> &str {
    let b = s.as_bytes();
    if b.len() >= 2 && b[0] == b'(' && b[b.len() - 1] == b')' {
        let mut depth = 0i32;
        for (i, &c) in b.iter().enumerate() {
            match c {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && i + 1 < b.len() {
                return s;
            }
        }
        return s[1..s.len() - 1].trim();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        let z = Integers;
        let w = z.enumerate(&WindowParams::N { n: 5, signed: false }).unwrap();
        assert_eq!(w, (1..=5).map(BigInt::from).collect::<Vec<_>>());
        let w = z.enumerate(&WindowParams::N { n: 2, signed: true }).unwrap();
        assert_eq!(w, (-2..=2).map(BigInt::from).collect::<Vec<_>>());
        assert!(z.enumerate(&WindowParams::N { n: 0, signed: false }).is_err());
        assert!(z.enumerate(&WindowParams::B(3)).is_err());
    }

    #[test]
    fn literals() {
        let z = Integers;
        assert_eq!(z.parse("-17").unwrap(), BigInt::from(-17));
        assert_eq!(z.parse("(+4)").unwrap(), BigInt::from(4));
        assert!(z.parse("4x").is_err());
        assert_eq!(strip_parens("(1)+(2)"), "(1)+(2)");
    }

    #[test]
    fn no_overflow() {
        let z = Integers;
        let big = z.pow(&z.from_i64(10), 40);
        assert_eq!(z.format(&big), format!("1{}", "0".repeat(40)));
        assert_eq!(z.exact_div(&big, &z.pow(&z.from_i64(10), 39)), Ok(z.from_i64(10)));
    }
}
