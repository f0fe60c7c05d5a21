use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{Domain, RingError};

/// Largest window the crate will materialise.
pub const MAX_WINDOW_LEN: usize = 1 << 24;

/// Size parameter of a finite window.
///
/// * `N=n` over `Z`: `{1..n}`; `N=n,signed`: `{-n..n}`.
/// * `B=b` over `Z[i]`: the box `|re| <= b, |im| <= b`.
/// * `d=k` over `GF(q)[x]`: polynomials of degree `< k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowParams {
    N { n: u64, signed: bool },
    B(u64),
    D(u32),
}

impl WindowParams {
    pub fn n(n: u64) -> Self {
        WindowParams::N { n, signed: false }
    }
}

impl fmt::Display for WindowParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowParams::N { n, signed: false } => write!(f, "N={n}"),
            WindowParams::N { n, signed: true } => write!(f, "N={n},signed"),
            WindowParams::B(b) => write!(f, "B={b}"),
            WindowParams::D(d) => write!(f, "d={d}"),
        }
    }
}

impl FromStr for WindowParams {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RingError::InvalidParams(s.to_string());
        let (key, value) = s.trim().split_once('=').ok_or_else(bad)?;
        match key.trim() {
            "N" => {
                let (num, signed) = match value.split_once(',') {
                    Some((num, "signed")) => (num, true),
                    Some(_) => return Err(bad()),
                    None => (value, false),
                };
                let n = num.trim().parse().map_err(|_| bad())?;
                Ok(WindowParams::N { n, signed })
            }
            "B" => Ok(WindowParams::B(value.trim().parse().map_err(|_| bad())?)),
            "d" => Ok(WindowParams::D(value.trim().parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

/// A finite slice of a ring in canonical enumeration order, with the inverse
/// position index.
#[derive(Debug, Clone)]
pub struct Window<R: Domain> {
    ring: R,
    params: WindowParams,
    elements: Vec<R::Elem>,
    index: HashMap<R::Elem, usize>,
}

impl<R: Domain> Window<R> {
    pub fn new(ring: R, params: WindowParams) -> Result<Self, RingError> {
        let elements = ring.enumerate(&params)?;
        let index = elements.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        Ok(Window { ring, params, elements, index })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn params(&self) -> WindowParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[R::Elem] {
        &self.elements
    }

    pub fn get(&self, position: usize) -> Option<&R::Elem> {
        self.elements.get(position)
    }

    pub fn index_of(&self, e: &R::Elem) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &R::Elem) -> bool {
        self.index.contains_key(e)
    }

    /// Whether two windows describe the same slice of the same ring.
    pub fn same_as(&self, other: &Window<R>) -> bool {
        self.ring.spec() == other.ring.spec() && self.params == other.params
    }
}
