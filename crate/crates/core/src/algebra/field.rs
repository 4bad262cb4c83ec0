//! Exact coefficient fields: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate is exact; there is no floating point
//! anywhere. The field is selected per computation: rationals are the
//! default, prime fields back the finite-field census.

use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Which exact field a value or polynomial lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rationals,
    /// F_p for a prime p. Constructed through [`FieldDesc::prime_field`],
    /// which checks primality.
    PrimeField(u64),
}

impl FieldDesc {
    pub fn prime_field(p: u64) -> Result<FieldDesc> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldDesc::PrimeField(p))
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            FieldDesc::Rationals => FieldElement::Rat(BigRational::zero()),
            FieldDesc::PrimeField(p) => FieldElement::Fp { val: 0, p: *p },
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            FieldDesc::Rationals => FieldElement::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldDesc::PrimeField(p) => FieldElement::Fp {
                val: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldDesc::Rationals => Ok(FieldElement::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldDesc::PrimeField(_) => self.from_i64(num).div(&self.from_i64(den)),
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// An element of the selected coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
}

impl FieldElement {
    pub fn desc(&self) -> FieldDesc {
        match self {
            FieldElement::Rat(_) => FieldDesc::Rationals,
            FieldElement::Fp { p, .. } => FieldDesc::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_zero(),
            FieldElement::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_one(),
            FieldElement::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a + b),
            (FieldElement::Fp { val: a, p }, FieldElement::Fp { val: b, p: q }) => {
                check_same_modulus(*p, *q);
                FieldElement::Fp {
                    val: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rat(a) => FieldElement::Rat(-a),
            FieldElement::Fp { val, p } => FieldElement::Fp {
                val: if *val == 0 { 0 } else { p - val },
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a * b),
            (FieldElement::Fp { val: a, p }, FieldElement::Fp { val: b, p: q }) => {
                check_same_modulus(*p, *q);
                FieldElement::Fp {
                    val: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldElement::Rat(a) => Ok(FieldElement::Rat(a.recip())),
            FieldElement::Fp { val, p } => Ok(FieldElement::Fp {
                val: mod_inverse(*val, *p),
                p: *p,
            }),
        }
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.desc().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Exact rational value; only for rational elements.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rat(r) => Some(r),
            FieldElement::Fp { .. } => None,
        }
    }
}

fn check_same_modulus(p: u64, q: u64) {
    assert_eq!(p, q, "mixed prime fields F_{p} and F_{q}");
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(r) => write!(f, "{r}"),
            FieldElement::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        // Exact JSON: integers stay numbers, proper fractions become "p/q".
        match self {
            FieldElement::Rat(r) => {
                if r.is_integer() {
                    if let Ok(n) = i64::try_from(r.numer().clone()) {
                        return ser.serialize_i64(n);
                    }
                }
                ser.serialize_str(&r.to_string())
            }
            FieldElement::Fp { val, .. } => ser.serialize_u64(*val),
        }
    }
}

/// Trial division; moduli in this crate are small census primes.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p), p prime and a != 0 mod p.
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "element not invertible");
    s0.rem_euclid(p as i128) as u64
}

/// Parse an integer or `p/q` literal into the given field.
pub fn parse_scalar(text: &str, desc: FieldDesc) -> Result<FieldElement> {
    let make = |b: BigRational| -> Result<FieldElement> {
        match desc {
            FieldDesc::Rationals => Ok(FieldElement::Rat(b)),
            FieldDesc::PrimeField(p) => {
                let reduce = |n: &BigInt| -> u64 {
                    let m = n % BigInt::from(p);
                    let m = if m.sign() == Sign::Minus { m + BigInt::from(p) } else { m };
                    u64::try_from(m).unwrap()
                };
                let num = FieldElement::Fp { val: reduce(b.numer()), p };
                let den = FieldElement::Fp { val: reduce(b.denom()), p };
                num.div(&den)
            }
        }
    };
    let parse_int = |s: &str| -> Result<BigInt> {
        s.parse::<BigInt>()
            .map_err(|_| Error::BadArgument(format!("bad numeric literal `{s}`")))
    };
    match text.split_once('/') {
        None => make(BigRational::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            make(BigRational::new(parse_int(n)?, den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_requires_prime() {
        assert!(FieldDesc::prime_field(7).is_ok());
        assert_eq!(FieldDesc::prime_field(6), Err(Error::NotPrime(6)));
        assert_eq!(FieldDesc::prime_field(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let q = FieldDesc::Rationals;
        assert_eq!(q.one().div(&q.zero()), Err(Error::DivisionByZero));
        let f5 = FieldDesc::prime_field(5).unwrap();
        assert_eq!(f5.from_i64(3).div(&f5.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn fp_inverses() {
        let f7 = FieldDesc::prime_field(7).unwrap();
        for a in 1..7 {
            let x = f7.from_i64(a);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_literals() {
        let x = parse_scalar("3/4", FieldDesc::Rationals).unwrap();
        let y = parse_scalar("9/12", FieldDesc::Rationals).unwrap();
        assert_eq!(x, y);
        let f5 = FieldDesc::prime_field(5).unwrap();
        // 1/2 = 3 in F_5
        assert_eq!(parse_scalar("1/2", f5).unwrap(), f5.from_i64(3));
    }
}
