//! Uniqueness of finite products: a sequence has it when products over
//! distinct nonempty index sets are pairwise distinct. Sequences are grown
//! one term at a time by avoiding the finite set of quotients of existing
//! products.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::largeness::MAX_SEQUENCE_LEN;
use crate::ring::{Domain, Window};

/// Longest sequence `grow_ufp` will build.
pub const MAX_GROW_LEN: usize = 20;

/// A repeated product: `H` precedes `K` in binary-counter order. Index sets
/// are 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision<E> {
    pub h: Vec<usize>,
    pub k: Vec<usize>,
    pub product: E,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UfpCheck<E> {
    Holds,
    Violation(Collision<E>),
}

impl<E> UfpCheck<E> {
    pub fn holds(&self) -> bool {
        matches!(self, UfpCheck::Holds)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UfpError {
    #[error("sequence of length {0} exceeds the cap of {MAX_SEQUENCE_LEN}")]
    TooLong(usize),
    #[error("target length {0} must be between 1 and {MAX_GROW_LEN}")]
    BadTarget(usize),
    #[error("start element must not be 0 or 1")]
    TrivialStart,
    #[error("products over {h:?} and {k:?} coincide")]
    NotUfp { h: Vec<usize>, k: Vec<usize> },
    #[error("product over {0:?} is 0 or 1")]
    TrivialProduct(Vec<usize>),
    #[error("pool exhausted at step {step}: every candidate is excluded")]
    PoolExhausted { step: usize },
}

fn index_set(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b as usize + 1).collect()
}

/// Products over every nonempty index set, indexed by bitmask (slot 0 holds 1).
fn all_products<R: Domain>(ring: &R, seq: &[R::Elem]) -> Result<Vec<R::Elem>, UfpError> {
    if seq.len() > MAX_SEQUENCE_LEN {
        return Err(UfpError::TooLong(seq.len()));
    }
    let total = 1usize << seq.len();
    let mut products = Vec::with_capacity(total);
    products.push(ring.one());
    for mask in 1..total {
        let low = mask.trailing_zeros() as usize;
        let p = ring.mul(&products[mask & (mask - 1)], &seq[low]);
        products.push(p);
    }
    Ok(products)
}

/// Checks pairwise distinctness of the `2^len - 1` products, reporting the
/// first repeat met while counting through index-set bitmasks.
pub fn has_ufp<R: Domain>(ring: &R, seq: &[R::Elem]) -> Result<UfpCheck<R::Elem>, UfpError> {
    let products = all_products(ring, seq)?;
    let mut seen: HashMap<&R::Elem, u32> = HashMap::with_capacity(products.len());
    for (mask, p) in products.iter().enumerate().skip(1) {
        if let Some(&earlier) = seen.get(p) {
            return Ok(UfpCheck::Violation(Collision {
                h: index_set(earlier),
                k: index_set(mask as u32),
                product: p.clone(),
            }));
        }
        seen.insert(p, mask as u32);
    }
    Ok(UfpCheck::Holds)
}

/// First index set whose product is 0 or 1.
pub fn trivial_product<R: Domain>(ring: &R, seq: &[R::Elem]) -> Result<Option<Vec<usize>>, UfpError> {
    let products = all_products(ring, seq)?;
    Ok(products
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, p)| ring.is_zero(p) || ring.is_one(p))
        .map(|(mask, _)| index_set(mask as u32)))
}

/// A sequence verified to have unique finite products, all outside `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UfpSequence<E> {
    elements: Vec<E>,
}

impl<E: Clone + Eq + Ord + std::hash::Hash> UfpSequence<E> {
    pub fn verified<R: Domain<Elem = E>>(ring: &R, elements: Vec<E>) -> Result<Self, UfpError> {
        if let UfpCheck::Violation(c) = has_ufp(ring, &elements)? {
            return Err(UfpError::NotUfp { h: c.h, k: c.k });
        }
        if let Some(h) = trivial_product(ring, &elements)? {
            return Err(UfpError::TrivialProduct(h));
        }
        Ok(UfpSequence { elements })
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `FP` of the sequence.
    pub fn products<R: Domain<Elem = E>>(&self, ring: &R) -> BTreeSet<E> {
        all_products(ring, &self.elements).expect("length checked on construction").into_iter().skip(1).collect()
    }
}

/// `{ x ∉ {0,1} : x·α = β for some α, β ∈ B ∪ {1} }`, by exact division.
pub fn exclusion_set<R: Domain>(ring: &R, b: &BTreeSet<R::Elem>) -> BTreeSet<R::Elem> {
    let one = ring.one();
    let base: Vec<&R::Elem> = b.iter().chain(std::iter::once(&one)).collect();
    let mut out = BTreeSet::new();
    for alpha in base.iter().filter(|a| !ring.is_zero(a)) {
        for beta in &base {
            if let Some(q) = ring.div_nonzero(beta, alpha) {
                if !ring.is_zero(&q) && !ring.is_one(&q) {
                    out.insert(q);
                }
            }
        }
    }
    out
}

/// Appends the first pool element outside `exclusion_set(FP(seq)) ∪ {0,1}`.
/// The result is re-verified before it is returned.
pub fn extend_ufp<'a, R: Domain>(
    ring: &R,
    seq: &UfpSequence<R::Elem>,
    pool: impl IntoIterator<Item = &'a R::Elem>,
) -> Result<UfpSequence<R::Elem>, UfpError> {
    if seq.len() >= MAX_SEQUENCE_LEN {
        return Err(UfpError::TooLong(seq.len() + 1));
    }
    let excluded = exclusion_set(ring, &seq.products(ring));
    let pick = pool
        .into_iter()
        .find(|p| !ring.is_zero(p) && !ring.is_one(p) && !excluded.contains(*p))
        .ok_or(UfpError::PoolExhausted { step: seq.len() + 1 })?;
    let mut elements = seq.elements.clone();
    elements.push(pick.clone());
    UfpSequence::verified(ring, elements)
}

/// Builds a length-`m` sequence from `start`, drawing each new term from
/// the window in canonical order.
pub fn grow_ufp<R: Domain>(
    start: &R::Elem,
    pool_window: &Window<R>,
    m: usize,
) -> Result<UfpSequence<R::Elem>, UfpError> {
    let ring = pool_window.ring();
    if m == 0 || m > MAX_GROW_LEN {
        return Err(UfpError::BadTarget(m));
    }
    if ring.is_zero(start) || ring.is_one(start) {
        return Err(UfpError::TrivialStart);
    }
    let mut seq = UfpSequence::verified(ring, vec![start.clone()])?;
    while seq.len() < m {
        seq = extend_ufp(ring, &seq, pool_window.elements())?;
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::ring::{Integers, PolyOverPrimeField, WindowParams};

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn has_ufp_examples() {
        assert!(has_ufp(&Integers, &z(&[2, 3])).unwrap().holds());
        assert_eq!(
            has_ufp(&Integers, &z(&[2, 2])).unwrap(),
            UfpCheck::Violation(Collision { h: vec![1], k: vec![2], product: BigInt::from(2) })
        );
        let gf2 = PolyOverPrimeField::new(2).unwrap();
        let seq = vec![gf2.parse("x").unwrap(), gf2.parse("x+1").unwrap()];
        assert!(has_ufp(&gf2, &seq).unwrap().holds());
        assert_eq!(has_ufp(&Integers, &z(&[2; 25])), Err(UfpError::TooLong(25)));
    }

    #[test]
    fn exclusion_examples() {
        let set = |v: &[i64]| z(v).into_iter().collect::<BTreeSet<_>>();
        assert_eq!(exclusion_set(&Integers, &set(&[2])), set(&[2]));
        assert_eq!(exclusion_set(&Integers, &set(&[2, 3, 6])), set(&[2, 3, 6]));
        assert!(exclusion_set(&Integers, &set(&[])).is_empty());
    }

    #[test]
    fn extend_and_grow() {
        let seq = UfpSequence::verified(&Integers, z(&[2])).unwrap();
        let pool = z(&[2, 3, 4, 5, 6, 7, 8, 9, 10]);
        assert_eq!(extend_ufp(&Integers, &seq, &pool).unwrap().elements(), z(&[2, 3]).as_slice());
        assert_eq!(extend_ufp(&Integers, &seq, &z(&[0, 1, 2])), Err(UfpError::PoolExhausted { step: 2 }));

        let w = Window::new(Integers, WindowParams::n(10_000)).unwrap();
        let grown = grow_ufp(&BigInt::from(2), &w, 10).unwrap();
        assert!(has_ufp(&Integers, grown.elements()).unwrap().holds());
        assert_eq!(grow_ufp(&BigInt::from(2), &w, 1).unwrap().elements(), z(&[2]).as_slice());
        assert_eq!(grow_ufp(&BigInt::from(1), &w, 3), Err(UfpError::TrivialStart));
    }
}
