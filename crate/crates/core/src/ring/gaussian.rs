use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::integers::strip_parens;
use super::{Domain, RingError, RingSpec, WindowParams, MAX_WINDOW_LEN};

/// A Gaussian integer `re + im*i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gaussian {
    pub re: BigInt,
    pub im: BigInt,
}

impl Gaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Gaussian { re: re.into(), im: im.into() }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -&self.im }
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        &self + &rhs
    }
}

impl Sub for &Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian { re: -&self.re, im: -&self.im }
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        &self * &rhs
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::new(1, 0)
    }
}

/// The Gaussian integers `Z[i]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct GaussianIntegers;

impl Domain for GaussianIntegers {
    type Elem = Gaussian;

    fn spec(&self) -> RingSpec {
        RingSpec::GaussianIntegers
    }

    fn zero(&self) -> Gaussian {
        Gaussian::zero()
    }

    fn one(&self) -> Gaussian {
        Gaussian::one()
    }

    fn from_i64(&self, n: i64) -> Gaussian {
        Gaussian::new(n, 0)
    }

    fn add(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        a + b
    }

    fn neg(&self, a: &Gaussian) -> Gaussian {
        -a
    }

    fn sub(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        a - b
    }

    fn mul(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        a * b
    }

    fn is_zero(&self, a: &Gaussian) -> bool {
        a.is_zero()
    }

    fn div_nonzero(&self, a: &Gaussian, b: &Gaussian) -> Option<Gaussian> {
        // a / b = a * conj(b) / N(b); exact iff both parts divide by N(b).
        let num = a * &b.conj();
        let n = b.norm();
        let (re, rr) = num.re.div_rem(&n);
        let (im, ri) = num.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then_some(Gaussian { re, im })
    }

    fn is_canonical(&self, _a: &Gaussian) -> bool {
        true
    }

    fn normalize(&self, a: Gaussian) -> Gaussian {
        a
    }

    fn enumerate(&self, params: &WindowParams) -> Result<Vec<Gaussian>, RingError> {
        let WindowParams::B(b) = *params else {
            return Err(RingError::InvalidParams(params.to_string()));
        };
        let side = 2 * b as u128 + 1;
        if side * side > MAX_WINDOW_LEN as u128 {
            return Err(RingError::WindowTooLarge(side * side));
        }
        let b = b as i64;
        let mut pts: Vec<(i64, i64, i64)> = Vec::with_capacity((side * side) as usize);
        for re in -b..=b {
            for im in -b..=b {
                pts.push((re * re + im * im, re, im));
            }
        }
        pts.sort_unstable();
        Ok(pts.into_iter().map(|(_, re, im)| Gaussian::new(re, im)).collect())
    }

    fn format(&self, a: &Gaussian) -> String {
        fn imag(im: &BigInt) -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        }
        match (a.re.is_zero(), a.im.is_zero()) {
            (_, true) => a.re.to_string(),
            (true, false) => imag(&a.im),
            (false, false) => {
                let im = imag(&a.im);
                if a.im.is_negative() {
                    format!("{}{im}", a.re)
                } else {
                    format!("{}+{im}", a.re)
                }
            }
        }
    }

    fn parse(&self, s: &str) -> Result<Gaussian, RingError> {
        let err = || RingError::Parse(s.to_string(), RingSpec::GaussianIntegers);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = strip_parens(&compact);
        let int = |p: &str| -> Result<BigInt, RingError> {
            let p = p.strip_prefix('+').unwrap_or(p);
            if p.is_empty() || p.starts_with(['+', '-']) && p.len() == 1 {
                return Err(err());
            }
            p.parse::<BigInt>().map_err(|_| err())
        };
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Gaussian { re: int(t)?, im: BigInt::zero() });
        };
        let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(k, _)| k).last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im_part = im_part.strip_suffix('*').unwrap_or(im_part);
        let im = match im_part {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            p => int(p)?,
        };
        let re = if re_part.is_empty() { BigInt::zero() } else { int(re_part)? };
        Ok(Gaussian { re, im })
    }
}
