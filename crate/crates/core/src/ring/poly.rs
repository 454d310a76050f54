//! Localized multivariate polynomials.
//!
//! Elements are stored as Laurent-style term maps: a monomial with signed
//! exponents mapped to a rational coefficient. Negative exponents only ever
//! arise on inverted variables (the only source is [`LaurentPoly::invert`]),
//! which makes the "polynomial over a minimal monomial denominator" form
//! canonical for free: equal values have identical term maps.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{One, Zero};

use super::RingError;

/// Exponent vector over the ring's declared variables, ordered graded-lex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Monomial(pub Box<[i32]>);

impl Monomial {
    fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| -e).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational, nvars: usize) -> LaurentPoly {
        Self::term(c, Monomial(vec![0; nvars].into_boxed_slice()))
    }

    pub fn variable(idx: usize, nvars: usize) -> LaurentPoly {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Self::term(BigRational::one(), Monomial(exps.into_boxed_slice()))
    }

    pub fn term(c: BigRational, m: Monomial) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&m);
                }
            }
        }
        LaurentPoly { terms }
    }

    pub fn half(&self) -> LaurentPoly {
        let two = BigRational::from_integer(2.into());
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c / &two))
                .collect(),
        }
    }

    /// Inverts a single term supported on inverted variables only.
    pub fn invert(&self, inverted: &[bool]) -> Result<LaurentPoly, RingError> {
        if self.terms.is_empty() {
            return Err(RingError::NotAUnit);
        }
        if self.terms.len() > 1 {
            return Err(RingError::NonMonomialDenominator);
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        for (v, &e) in m.0.iter().enumerate() {
            if e != 0 && !inverted[v] {
                return Err(RingError::NotAUnit);
            }
        }
        Ok(Self::term(c.recip(), m.inverse()))
    }
}
