use super::{is_prime, Domain, RingError, RingSpec, WindowParams, MAX_WINDOW_LEN};

/// A polynomial over `GF(q)`, coefficients stored lowest degree first with no
/// trailing zeros. The zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FpPoly(Vec<u64>);

impl FpPoly {
    /// Wraps a raw coefficient vector without reduction. Use
    /// [`Domain::normalize`] to obtain the canonical form.
    pub fn from_raw(coeffs: Vec<u64>) -> Self {
        FpPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }
}

/// `GF(q)[x]` for a prime `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolyOverPrimeField {
    q: u64,
}

impl PolyOverPrimeField {
    pub fn new(q: u64) -> Result<Self, RingError> {
        if is_prime(q) {
            Ok(PolyOverPrimeField { q })
        } else {
            Err(RingError::NotPrime(q))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    fn addmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.q as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat: a^(q-2) mod q.
        let mut acc = 1u64;
        let mut base = a % self.q;
        let mut e = self.q - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        acc
    }

    /// Builds the polynomial whose coefficient vector is the base-`q`
    /// expansion of `value`.
    pub fn from_index(&self, mut value: u128) -> FpPoly {
        let mut coeffs = Vec::new();
        let q = self.q as u128;
        while value > 0 {
            coeffs.push((value % q) as u64);
            value /= q;
        }
        FpPoly(coeffs)
    }

    pub fn monomial(&self, coeff: u64, degree: usize) -> FpPoly {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = coeff % self.q;
        FpPoly(coeffs).trim()
    }

    /// Polynomial long division; `b` is nonzero.
    fn div_rem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        let db = b.0.len() - 1;
        let lead_inv = self.inv(b.0[db]);
        let mut rem = a.0.clone();
        if rem.len() <= db {
            return (FpPoly::default(), a.clone());
        }
        let mut quot = vec![0u64; rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let f = self.mulmod(c, lead_inv);
            quot[k - db] = f;
            for (j, &bj) in b.0.iter().enumerate() {
                let sub = self.mulmod(f, bj);
                let slot = &mut rem[k - db + j];
                *slot = self.addmod(*slot, self.q - sub);
            }
        }
        (FpPoly(quot).trim(), FpPoly(rem).trim())
    }
}

impl Domain for PolyOverPrimeField {
    type Elem = FpPoly;

    fn spec(&self) -> RingSpec {
        RingSpec::PolyOverPrimeField { q: self.q }
    }

    fn zero(&self) -> FpPoly {
        FpPoly::default()
    }

    fn one(&self) -> FpPoly {
        FpPoly(vec![1])
    }

    fn from_i64(&self, n: i64) -> FpPoly {
        let r = n.rem_euclid(self.q.min(i64::MAX as u64) as i64) as u64;
        FpPoly(vec![r]).trim()
    }

    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (long, short) = if a.0.len() >= b.0.len() { (a, b) } else { (b, a) };
        let mut out = long.0.clone();
        for (slot, &c) in out.iter_mut().zip(&short.0) {
            *slot = self.addmod(*slot, c);
        }
        FpPoly(out).trim()
    }

    fn neg(&self, a: &FpPoly) -> FpPoly {
        FpPoly(a.0.iter().map(|&c| if c == 0 { 0 } else { self.q - c }).collect())
    }

    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.0.is_empty() || b.0.is_empty() {
            return FpPoly::default();
        }
        let mut out = vec![0u64; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                out[i + j] = self.addmod(out[i + j], self.mulmod(x, y));
            }
        }
        // Product of nonzero leading coefficients is nonzero in a field.
        FpPoly(out).trim()
    }

    fn is_zero(&self, a: &FpPoly) -> bool {
        a.0.is_empty()
    }

    fn div_nonzero(&self, a: &FpPoly, b: &FpPoly) -> Option<FpPoly> {
        let (quot, rem) = self.div_rem(a, b);
        rem.0.is_empty().then_some(quot)
    }

    fn is_canonical(&self, a: &FpPoly) -> bool {
        a.0.last() != Some(&0) && a.0.iter().all(|&c| c < self.q)
    }

    fn normalize(&self, a: FpPoly) -> FpPoly {
        FpPoly(a.0.into_iter().map(|c| c % self.q).collect()).trim()
    }

    fn enumerate(&self, params: &WindowParams) -> Result<Vec<FpPoly>, RingError> {
        let WindowParams::D(d) = *params else {
            return Err(RingError::InvalidParams(params.to_string()));
        };
        if d == 0 {
            return Err(RingError::InvalidParams(params.to_string()));
        }
        let len = (self.q as u128)
            .checked_pow(d)
            .filter(|&len| len <= MAX_WINDOW_LEN as u128)
            .ok_or(RingError::WindowTooLarge(u128::MAX))?;
        // Base-q value order is (degree, value) order.
        Ok((0..len).map(|v| self.from_index(v)).collect())
    }

    fn format(&self, a: &FpPoly) -> String {
        if a.0.is_empty() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (deg, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (deg, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (d, 1) => format!("x^{d}"),
                (d, c) => format!("{c}x^{d}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }

    fn parse(&self, s: &str) -> Result<FpPoly, RingError> {
        let err = || RingError::Parse(s.to_string(), self.spec());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = super::integers::strip_parens(&compact);
        if t.is_empty() {
            return Err(err());
        }
        let mut acc = FpPoly::default();
        let mut start = 0;
        let bytes = t.as_bytes();
        for k in 0..=bytes.len() {
            let boundary = k == bytes.len() || (k > start && (bytes[k] == b'+' || bytes[k] == b'-'));
            if !boundary {
                continue;
            }
            let term = &t[start..k];
            start = k;
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coeff, degree) = match body.find('x') {
                None => (body, 0usize),
                Some(pos) => {
                    let coeff = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                    let coeff = if coeff.is_empty() { "1" } else { coeff };
                    let rest = &body[pos + 1..];
                    let degree = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()).ok_or_else(err)?
                    };
                    (coeff, degree)
                }
            };
            if degree > 1 << 16 {
                return Err(err());
            }
            let c: u64 = coeff.parse::<u128>().map(|c| (c % self.q as u128) as u64).map_err(|_| err())?;
            let mono = self.monomial(c, degree);
            acc = if negative { self.sub(&acc, &mono) } else { self.add(&acc, &mono) };
        }
        Ok(acc)
    }
}
