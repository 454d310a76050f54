//! Commutative ring backends with exact, canonical arithmetic.
//!
//! Three backends are provided, all with `2` invertible:
//!
//! * `Rationals` — arbitrary-precision fractions;
//! * `Modular(p)` — residues modulo an odd prime;
//! * `LocalizedPoly` — multivariate polynomials with rational coefficients in
//!   which a declared subset of the variables is inverted, so denominators are
//!   always monomials.
//!
//! Values are canonical after every operation: two elements are equal iff
//! their payloads are identical.

mod poly;

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

pub(crate) use poly::{LaurentPoly, Monomial};

/// Errors produced by ring construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("element is not a unit")]
    NotAUnit,
    #[error("denominator is not a monomial in the inverted variables")]
    NonMonomialDenominator,
    #[error("operands belong to different rings")]
    DescriptorMismatch,
    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u64),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("inverted variable `{0}` is not among the declared variables")]
    InvalidInvertedVariable(String),
    #[error("cannot parse `{input}` as a ring element: {reason}")]
    Parse { input: String, reason: String },
}

/// Which concrete ring a value lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingDescriptor {
    Rationals,
    Modular {
        modulus: u64,
    },
    LocalizedPoly {
        /// Declared variable names, in canonical order.
        variables: Vec<String>,
        /// `inverted[v]` is true when variable `v` may appear with negative
        /// exponents.
        inverted: Vec<bool>,
    },
}

/// A shared handle to a ring; cheap to clone.
#[derive(Debug, Clone)]
pub struct Ring {
    desc: Arc<RingDescriptor>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.desc, &other.desc) || self.desc == other.desc
    }
}

impl Eq for Ring {}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Ring {
    pub fn rationals() -> Ring {
        Ring {
            desc: Arc::new(RingDescriptor::Rationals),
        }
    }

    /// The field `Z/p` for an odd prime `p`.
    pub fn modular(modulus: u64) -> Result<Ring, RingError> {
        if !is_odd_prime(modulus) {
            return Err(RingError::InvalidModulus(modulus));
        }
        Ok(Ring {
            desc: Arc::new(RingDescriptor::Modular { modulus }),
        })
    }

    /// Polynomials over `Q` in `variables`, localized at the monomials in
    /// `inverted`.
    pub fn localized_poly<S: AsRef<str>>(
        variables: &[S],
        inverted: &[S],
    ) -> Result<Ring, RingError> {
        let vars: Vec<String> = variables.iter().map(|v| v.as_ref().to_string()).collect();
        let mut flags = vec![false; vars.len()];
        for inv in inverted {
            let name = inv.as_ref();
            match vars.iter().position(|v| v == name) {
                Some(idx) => flags[idx] = true,
                None => return Err(RingError::InvalidInvertedVariable(name.to_string())),
            }
        }
        Ok(Ring {
            desc: Arc::new(RingDescriptor::LocalizedPoly {
                variables: vars,
                inverted: flags,
            }),
        })
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    fn nvars(&self) -> usize {
        match &*self.desc {
            RingDescriptor::LocalizedPoly { variables, .. } => variables.len(),
            _ => 0,
        }
    }

    pub fn zero(&self) -> RingValue {
        match &*self.desc {
            RingDescriptor::Rationals => self.wrap(Payload::Rational(BigRational::zero())),
            RingDescriptor::Modular { .. } => self.wrap(Payload::Residue(0)),
            RingDescriptor::LocalizedPoly { .. } => {
                self.wrap(Payload::Poly(LaurentPoly::zero()))
            }
        }
    }

    pub fn one(&self) -> RingValue {
        self.from_int(1)
    }

    pub fn from_int(&self, value: i64) -> RingValue {
        match &*self.desc {
            RingDescriptor::Rationals => {
                self.wrap(Payload::Rational(BigRational::from(BigInt::from(value))))
            }
            RingDescriptor::Modular { modulus } => {
                let m = *modulus as i128;
                let r = ((value as i128 % m) + m) % m;
                self.wrap(Payload::Residue(r as u64))
            }
            RingDescriptor::LocalizedPoly { .. } => self.wrap(Payload::Poly(
                LaurentPoly::constant(BigRational::from(BigInt::from(value)), self.nvars()),
            )),
        }
    }

    /// The fraction `num/den`; in the modular backend this is `num · den⁻¹`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<RingValue, RingError> {
        if den == 0 {
            return Err(RingError::NotAUnit);
        }
        match &*self.desc {
            RingDescriptor::Modular { .. } => {
                let d = self.from_int(den).invert()?;
                Ok(self.from_int(num).mul(&d))
            }
            _ => {
                let q = BigRational::new(BigInt::from(num), BigInt::from(den));
                match &*self.desc {
                    RingDescriptor::Rationals => Ok(self.wrap(Payload::Rational(q))),
                    RingDescriptor::LocalizedPoly { .. } => {
                        Ok(self.wrap(Payload::Poly(LaurentPoly::constant(q, self.nvars()))))
                    }
                    RingDescriptor::Modular { .. } => unreachable!(),
                }
            }
        }
    }

    /// The variable `name` as a ring element (LocalizedPoly only).
    pub fn var(&self, name: &str) -> Result<RingValue, RingError> {
        match &*self.desc {
            RingDescriptor::LocalizedPoly { variables, .. } => {
                let idx = variables
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| RingError::UnknownVariable(name.to_string()))?;
                Ok(self.wrap(Payload::Poly(LaurentPoly::variable(idx, variables.len()))))
            }
            _ => Err(RingError::UnknownVariable(name.to_string())),
        }
    }

    /// A uniformly-sampled element (small, for property tests).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RingValue {
        match &*self.desc {
            RingDescriptor::Rationals => {
                let num = rng.gen_range(-20i64..=20);
                let den = rng.gen_range(1i64..=10);
                self.from_ratio(num, den).expect("nonzero denominator")
            }
            RingDescriptor::Modular { modulus } => {
                self.wrap(Payload::Residue(rng.gen_range(0..*modulus)))
            }
            RingDescriptor::LocalizedPoly { variables, inverted } => {
                let nterms = rng.gen_range(0..=2);
                let mut acc = self.zero();
                for _ in 0..nterms {
                    let coeff = rng.gen_range(-5i64..=5);
                    let mut exps = vec![0i32; variables.len()];
                    for (v, e) in exps.iter_mut().enumerate() {
                        let lo = if inverted[v] { -1 } else { 0 };
                        *e = rng.gen_range(lo..=2);
                    }
                    let term = LaurentPoly::term(
                        BigRational::from(BigInt::from(coeff)),
                        Monomial(exps.into_boxed_slice()),
                    );
                    acc = acc.add(&self.wrap(Payload::Poly(term)));
                }
                acc
            }
        }
    }

    /// A uniformly-sampled unit.
    pub fn sample_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> RingValue {
        match &*self.desc {
            RingDescriptor::Rationals => {
                let mut num = rng.gen_range(-20i64..=20);
                if num == 0 {
                    num = 1;
                }
                let den = rng.gen_range(1i64..=10);
                self.from_ratio(num, den).expect("nonzero denominator")
            }
            RingDescriptor::Modular { modulus } => {
                self.wrap(Payload::Residue(rng.gen_range(1..*modulus)))
            }
            RingDescriptor::LocalizedPoly { variables, inverted } => {
                let mut coeff = rng.gen_range(-5i64..=5);
                if coeff == 0 {
                    coeff = 1;
                }
                let mut exps = vec![0i32; variables.len()];
                for (v, e) in exps.iter_mut().enumerate() {
                    if inverted[v] {
                        *e = rng.gen_range(-1i32..=1);
                    }
                }
                let term = LaurentPoly::term(
                    BigRational::from(BigInt::from(coeff)),
                    Monomial(exps.into_boxed_slice()),
                );
                self.wrap(Payload::Poly(term))
            }
        }
    }

    fn wrap(&self, payload: Payload) -> RingValue {
        RingValue {
            ring: self.clone(),
            payload,
        }
    }

    /// Parses the ring's human-readable value syntax (the inverse of
    /// [`RingValue`]'s `Display`).
    pub fn parse(&self, input: &str) -> Result<RingValue, RingError> {
        let s = input.trim();
        let err = |reason: &str| RingError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        match &*self.desc {
            RingDescriptor::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
                let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
                if den.is_zero() {
                    return Err(err("zero denominator"));
                }
                Ok(self.wrap(Payload::Rational(BigRational::new(num, den))))
            }
            RingDescriptor::Modular { modulus } => {
                let head = match s.split_once("mod") {
                    Some((k, p)) => {
                        let p: u64 = p.trim().parse().map_err(|_| err("bad modulus"))?;
                        if p != *modulus {
                            return Err(err("modulus does not match the ring"));
                        }
                        k.trim()
                    }
                    None => s,
                };
                let k: i64 = head.parse().map_err(|_| err("bad residue"))?;
                Ok(self.from_int(k))
            }
            RingDescriptor::LocalizedPoly { .. } => self.parse_poly(s),
        }
    }

    fn parse_poly(&self, s: &str) -> Result<RingValue, RingError> {
        let err = |reason: String| RingError::Parse {
            input: s.to_string(),
            reason,
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input".into()));
        }
        // Split into signed terms at top level (no parentheses in the syntax).
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = compact.starts_with('-');
        let body = compact.trim_start_matches(['+', '-']);
        let mut prev: Option<char> = None;
        for c in body.chars() {
            if (c == '+' || c == '-') && prev != Some('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = c == '-';
            } else {
                cur.push(c);
            }
            prev = Some(c);
        }
        terms.push((neg, cur));

        let mut acc = self.zero();
        for (negated, term) in terms {
            if term.is_empty() {
                return Err(err("empty term".into()));
            }
            let mut value = self.one();
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor".into()));
                }
                if factor.chars().next().unwrap().is_ascii_digit() {
                    let (num, den) = match factor.split_once('/') {
                        Some((a, b)) => (a, b),
                        None => (factor, "1"),
                    };
                    let num: i64 = num.parse().map_err(|_| err(format!("bad number `{factor}`")))?;
                    let den: i64 = den.parse().map_err(|_| err(format!("bad number `{factor}`")))?;
                    value = value.mul(&self.from_ratio(num, den)?);
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        Some((v, e)) => {
                            let e: i32 =
                                e.parse().map_err(|_| err(format!("bad exponent in `{factor}`")))?;
                            (v, e)
                        }
                        None => (factor, 1),
                    };
                    let base = self.var(name)?;
                    let powered = if exp >= 0 {
                        base.pow(exp as u32)
                    } else {
                        base.invert()?.pow((-exp) as u32)
                    };
                    value = value.mul(&powered);
                }
            }
            if negated {
                value = value.neg();
            }
            acc = acc.add(&value);
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Payload {
    Rational(BigRational),
    Residue(u64),
    Poly(LaurentPoly),
}

/// An element of one of the ring backends, always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingValue {
    ring: Ring,
    payload: Payload,
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_inv(a: u64, m: u64) -> Option<u64> {
    // Extended Euclid on (a, m); m is prime so any nonzero a has an inverse.
    if a == 0 {
        return None;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    let inv = ((old_s % m as i128) + m as i128) % m as i128;
    Some(inv as u64)
}

impl RingValue {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn check_same(&self, other: &RingValue) {
        assert!(
            self.ring == other.ring,
            "ring descriptor mismatch in scalar arithmetic"
        );
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Rational(q) => q.is_zero(),
            Payload::Residue(r) => *r == 0,
            Payload::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    pub fn add(&self, other: &RingValue) -> RingValue {
        self.check_same(other);
        let payload = match (&self.payload, &other.payload) {
            (Payload::Rational(a), Payload::Rational(b)) => Payload::Rational(a + b),
            (Payload::Residue(a), Payload::Residue(b)) => {
                let m = match *self.ring.desc {
                    RingDescriptor::Modular { modulus } => modulus,
                    _ => unreachable!(),
                };
                Payload::Residue((a + b) % m)
            }
            (Payload::Poly(a), Payload::Poly(b)) => Payload::Poly(a.add(b)),
            _ => unreachable!("payload kind always matches descriptor"),
        };
        self.ring.wrap(payload)
    }

    pub fn sub(&self, other: &RingValue) -> RingValue {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingValue {
        let payload = match &self.payload {
            Payload::Rational(a) => Payload::Rational(-a),
            Payload::Residue(a) => {
                let m = match *self.ring.desc {
                    RingDescriptor::Modular { modulus } => modulus,
                    _ => unreachable!(),
                };
                Payload::Residue((m - a) % m)
            }
            Payload::Poly(a) => Payload::Poly(a.neg()),
        };
        self.ring.wrap(payload)
    }

    pub fn mul(&self, other: &RingValue) -> RingValue {
        self.check_same(other);
        let payload = match (&self.payload, &other.payload) {
            (Payload::Rational(a), Payload::Rational(b)) => Payload::Rational(a * b),
            (Payload::Residue(a), Payload::Residue(b)) => {
                let m = match *self.ring.desc {
                    RingDescriptor::Modular { modulus } => modulus,
                    _ => unreachable!(),
                };
                Payload::Residue(mod_mul(*a, *b, m))
            }
            (Payload::Poly(a), Payload::Poly(b)) => Payload::Poly(a.mul(b)),
            _ => unreachable!("payload kind always matches descriptor"),
        };
        self.ring.wrap(payload)
    }

    pub fn pow(&self, exp: u32) -> RingValue {
        let mut acc = self.ring.one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// The unique `b` with `b + b = a`; total because `2` is a unit in every
    /// backend.
    pub fn half(&self) -> RingValue {
        match &self.payload {
            Payload::Rational(a) => self
                .ring
                .wrap(Payload::Rational(a / BigRational::from(BigInt::from(2)))),
            Payload::Residue(_) => {
                let two_inv = self.ring.from_int(2).invert().expect("odd modulus");
                self.mul(&two_inv)
            }
            Payload::Poly(a) => self.ring.wrap(Payload::Poly(a.half())),
        }
    }

    /// Multiplicative inverse, when `self` is a unit of the backend.
    pub fn invert(&self) -> Result<RingValue, RingError> {
        match &self.payload {
            Payload::Rational(a) => {
                if a.is_zero() {
                    Err(RingError::NotAUnit)
                } else {
                    Ok(self.ring.wrap(Payload::Rational(a.recip())))
                }
            }
            Payload::Residue(a) => {
                let m = match *self.ring.desc {
                    RingDescriptor::Modular { modulus } => modulus,
                    _ => unreachable!(),
                };
                mod_inv(*a, m)
                    .map(|inv| self.ring.wrap(Payload::Residue(inv)))
                    .ok_or(RingError::NotAUnit)
            }
            Payload::Poly(a) => {
                let inverted = match &*self.ring.desc {
                    RingDescriptor::LocalizedPoly { inverted, .. } => inverted,
                    _ => unreachable!(),
                };
                a.invert(inverted).map(|p| self.ring.wrap(Payload::Poly(p)))
            }
        }
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Payload::Residue(r) => {
                let m = match *self.ring.desc {
                    RingDescriptor::Modular { modulus } => modulus,
                    _ => unreachable!(),
                };
                write!(f, "{r} mod {m}")
            }
            Payload::Poly(p) => {
                let vars = match &*self.ring.desc {
                    RingDescriptor::LocalizedPoly { variables, .. } => variables,
                    _ => unreachable!(),
                };
                p.format(vars, f)
            }
        }
    }
}

fn format_coeff_factor(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl LaurentPoly {
    fn format(&self, vars: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (mono, coeff)) in self.terms().rev().enumerate() {
            let abs = coeff.abs();
            if idx == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let trivial_mono = mono.0.iter().all(|&e| e == 0);
            if abs.is_one() && !trivial_mono {
                // coefficient 1 is implicit
            } else {
                format_coeff_factor(&abs, f)?;
                if !trivial_mono {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (v, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{}", vars[v])?;
                } else {
                    write!(f, "{}^{}", vars[v], e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn modulus_validation() {
        assert!(Ring::modular(7).is_ok());
        assert!(Ring::modular(10007).is_ok());
        assert_eq!(Ring::modular(9), Err(RingError::InvalidModulus(9)));
        assert_eq!(Ring::modular(2), Err(RingError::InvalidModulus(2)));
        assert_eq!(Ring::modular(1), Err(RingError::InvalidModulus(1)));
    }

    #[test]
    fn half_examples() {
        let q = Ring::rationals();
        assert_eq!(q.one().half(), q.from_ratio(1, 2).unwrap());

        // Brute-force oracle over Z/7: the x with 2x ≡ 1 is x = 4.
        let z7 = Ring::modular(7).unwrap();
        let mut found = None;
        for x in 0..7 {
            if (2 * x) % 7 == 1 {
                found = Some(x);
            }
        }
        assert_eq!(found, Some(4));
        assert_eq!(z7.one().half(), z7.from_int(4));

        let p = Ring::localized_poly(&["d1"], &["d1"]).unwrap();
        let d1 = p.var("d1").unwrap();
        assert_eq!(d1.half().add(&d1.half()), d1);
        assert_eq!(d1.half().to_string(), "1/2*d1");
    }

    #[test]
    fn invert_examples() {
        let q = Ring::rationals();
        assert_eq!(
            q.from_ratio(3, 4).unwrap().invert().unwrap(),
            q.from_ratio(4, 3).unwrap()
        );

        // Extended-gcd oracle: 2·5004 = 10008 ≡ 1 mod 10007.
        let zp = Ring::modular(10007).unwrap();
        let inv = zp.from_int(2).invert().unwrap();
        assert_eq!(inv, zp.from_int(5004));
        assert!(inv.mul(&zp.from_int(2)).is_one());

        let p = Ring::localized_poly(&["d1", "x"], &["d1"]).unwrap();
        let two_d1 = p.var("d1").unwrap().mul(&p.from_int(2));
        let inv = two_d1.invert().unwrap();
        assert!(inv.mul(&two_d1).is_one());
        assert_eq!(inv.to_string(), "1/2*d1^-1");

        // x is not inverted, so it is not a unit.
        assert_eq!(p.var("x").unwrap().invert(), Err(RingError::NotAUnit));
        // A two-term polynomial is never a unit here.
        let sum = p.var("d1").unwrap().add(&p.var("x").unwrap());
        assert_eq!(sum.invert(), Err(RingError::NonMonomialDenominator));
        assert_eq!(p.zero().invert(), Err(RingError::NotAUnit));
    }

    #[test]
    fn canonicalize_examples() {
        let q = Ring::rationals();
        assert_eq!(q.from_ratio(2, 4).unwrap(), q.from_ratio(1, 2).unwrap());
        assert_eq!(q.from_ratio(1, -2).unwrap().to_string(), "-1/2");

        let z7 = Ring::modular(7).unwrap();
        assert_eq!(z7.from_int(-3), z7.from_int(4));

        // (d1·x + d1²)/d1 reduces to x + d1; verified by re-multiplying.
        let p = Ring::localized_poly(&["d1", "x"], &["d1"]).unwrap();
        let d1 = p.var("d1").unwrap();
        let x = p.var("x").unwrap();
        let num = d1.mul(&x).add(&d1.mul(&d1));
        let reduced = num.mul(&d1.invert().unwrap());
        assert_eq!(reduced, x.add(&d1));
        assert_eq!(reduced.mul(&d1), num);
    }

    #[test]
    fn ring_laws_sampled() {
        let rings = [
            Ring::rationals(),
            Ring::modular(10007).unwrap(),
            Ring::localized_poly(&["d1", "d2", "w"], &["d1", "d2"]).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ring in &rings {
            for _ in 0..50 {
                let a = ring.sample(&mut rng);
                let b = ring.sample(&mut rng);
                let c = ring.sample(&mut rng);
                assert_eq!(a.add(&b), b.add(&a));
                assert_eq!(a.mul(&b), b.mul(&a));
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert_eq!(a.half().add(&a.half()), a);
                let u = ring.sample_unit(&mut rng);
                assert!(u.invert().unwrap().mul(&u).is_one());
            }
        }
    }

    #[test]
    fn modular_agrees_with_integers() {
        let z7 = Ring::modular(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = rng.gen_range(-100i64..=100);
            let b = rng.gen_range(-100i64..=100);
            assert_eq!(z7.from_int(a).add(&z7.from_int(b)), z7.from_int(a + b));
            assert_eq!(z7.from_int(a).mul(&z7.from_int(b)), z7.from_int(a * b));
        }
    }

    #[test]
    fn render_and_parse_round_trip() {
        let q = Ring::rationals();
        for v in [
            q.from_ratio(-3, 7).unwrap(),
            q.from_int(12),
            q.zero(),
        ] {
            assert_eq!(q.parse(&v.to_string()).unwrap(), v);
        }

        let zp = Ring::modular(10007).unwrap();
        let v = zp.from_int(123);
        assert_eq!(v.to_string(), "123 mod 10007");
        assert_eq!(zp.parse(&v.to_string()).unwrap(), v);

        let p = Ring::localized_poly(&["d1", "w11", "v12"], &["d1"]).unwrap();
        let val = p
            .parse("1/2*d1^2*w11 - 3*v12")
            .unwrap();
        let expect = p
            .var("d1")
            .unwrap()
            .pow(2)
            .mul(&p.var("w11").unwrap())
            .half()
            .sub(&p.var("v12").unwrap().mul(&p.from_int(3)));
        assert_eq!(val, expect);
        assert_eq!(val.to_string(), "1/2*d1^2*w11 - 3*v12");
        assert_eq!(p.parse(&val.to_string()).unwrap(), val);

        // Negative exponents round-trip too.
        let inv = p.var("d1").unwrap().invert().unwrap().half();
        assert_eq!(inv.to_string(), "1/2*d1^-1");
        assert_eq!(p.parse(&inv.to_string()).unwrap(), inv);
    }
}
