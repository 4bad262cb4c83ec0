//! Integer polynomials and reduced rational functions in the class L of the
//! affine line.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in L with integer coefficients, sparse by exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_int(n: i64) -> LPoly {
        let mut p = LPoly::zero();
        if n != 0 {
            p.coeffs.insert(0, BigInt::from(n));
        }
        p
    }

    pub fn l_power(e: u32) -> LPoly {
        let mut p = LPoly::zero();
        p.coeffs.insert(e, BigInt::one());
        p
    }

    /// L^a - 1.
    pub fn l_power_minus_one(a: u32) -> LPoly {
        LPoly::l_power(a).sub(&LPoly::from_int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    pub fn coefficient(&self, e: u32) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    fn insert(&mut self, e: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.insert(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> LPoly {
        LPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &LPoly) -> LPoly {
        let mut out = LPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                out.insert(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale_int(&self, n: &BigInt) -> LPoly {
        if n.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * n)).collect(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let deg = match self.degree() {
            None => return acc,
            Some(d) => d,
        };
        for e in (0..=deg).rev() {
            acc *= x;
            if let Some(c) = self.coeffs.get(&e) {
                acc += BigRational::from_integer(c.clone());
            }
        }
        acc
    }

    fn content(&self) -> BigInt {
        self.coeffs
            .values()
            .fold(BigInt::zero(), |a, c| a.gcd(&c.abs()))
    }

    fn to_dense(&self) -> Vec<BigRational> {
        let deg = match self.degree() {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut out = vec![BigRational::zero(); deg + 1];
        for (e, c) in &self.coeffs {
            out[*e as usize] = BigRational::from_integer(c.clone());
        }
        out
    }

    fn from_dense(v: &[BigRational]) -> LPoly {
        // Clear denominators and divide out the content to get a primitive
        // integer polynomial.
        let mut denom = BigInt::one();
        for c in v {
            denom = denom.lcm(c.denom());
        }
        let mut p = LPoly::zero();
        for (e, c) in v.iter().enumerate() {
            let scaled = c * BigRational::from_integer(denom.clone());
            debug_assert!(scaled.is_integer());
            p.insert(e as u32, scaled.to_integer());
        }
        let content = p.content();
        if content > BigInt::one() {
            p = p.div_exact_int(&content);
        }
        p
    }

    fn div_exact_int(&self, n: &BigInt) -> LPoly {
        LPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| {
                    debug_assert!((c % n).is_zero());
                    (*e, c / n)
                })
                .collect(),
        }
    }

}

fn dense_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.iter().rposition(|c| !c.is_zero()).expect("division by zero poly");
    let mut rem: Vec<BigRational> = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len().saturating_sub(db)];
    loop {
        let da = match rem.iter().rposition(|c| !c.is_zero()) {
            None => break,
            Some(d) => d,
        };
        if da < db {
            break;
        }
        let factor = &rem[da] / &b[db];
        let shift = da - db;
        quot[shift] = factor.clone();
        for (i, c) in b.iter().enumerate().take(db + 1) {
            let delta = c * &factor;
            rem[i + shift] -= delta;
        }
    }
    (quot, rem)
}

/// Primitive gcd of two integer L-polynomials, positive leading coefficient.
pub fn lpoly_gcd(a: &LPoly, b: &LPoly) -> LPoly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let mut x = a.to_dense();
    let mut y = b.to_dense();
    loop {
        let dy = y.iter().rposition(|c| !c.is_zero());
        match dy {
            None => break,
            Some(_) => {
                let (_, r) = dense_divmod(&x, &y);
                x = y;
                y = r;
            }
        }
    }
    normalize_sign(LPoly::from_dense(&x))
}

fn normalize_sign(p: LPoly) -> LPoly {
    match p.leading() {
        Some(l) if l.is_negative() => p.neg(),
        _ => p,
    }
}

/// A reduced fraction of L-polynomials. In the expressions this crate builds,
/// denominators are products of (L^a - 1) factors and powers of L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LPoly,
    den: LPoly,
}

impl RatFunc {
    pub fn new(num: LPoly, den: LPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RatFunc { num, den };
        rf.reduce();
        rf
    }

    pub fn zero() -> RatFunc {
        RatFunc {
            num: LPoly::zero(),
            den: LPoly::from_int(1),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_int(1)
    }

    pub fn from_int(n: i64) -> RatFunc {
        RatFunc {
            num: LPoly::from_int(n),
            den: LPoly::from_int(1),
        }
    }

    pub fn from_poly(p: LPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: LPoly::from_int(1),
        }
    }

    /// L^e for any integer e.
    pub fn l_pow(e: i64) -> RatFunc {
        if e >= 0 {
            RatFunc::from_poly(LPoly::l_power(e as u32))
        } else {
            RatFunc {
                num: LPoly::from_int(1),
                den: LPoly::l_power((-e) as u32),
            }
        }
    }

    pub fn num(&self) -> &LPoly {
        &self.num
    }

    pub fn den(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LPoly::from_int(1);
            return;
        }
        let g = lpoly_gcd(&self.num, &self.den);
        if g.degree() != Some(0) || g.leading() != Some(&BigInt::one()) {
            self.num = poly_div_via_dense(&self.num, &g);
            self.den = poly_div_via_dense(&self.den, &g);
        }
        // Split integer content between the two and fix the sign.
        let cn = self.num.content();
        let cd = self.den.content();
        let c = cn.gcd(&cd);
        if c > BigInt::one() {
            self.num = self.num.div_exact_int(&c);
            self.den = self.den.div_exact_int(&c);
        }
        if self.den.leading().map(|l| l.is_negative()).unwrap_or(false) {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::new(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    /// Degree of the numerator minus degree of the denominator; None for 0.
    pub fn l_degree(&self) -> Option<i64> {
        self.num
            .degree()
            .map(|dn| dn as i64 - self.den.degree().unwrap_or(0) as i64)
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }
}

fn poly_div_via_dense(a: &LPoly, b: &LPoly) -> LPoly {
    let (q, r) = dense_divmod(&a.to_dense(), &b.to_dense());
    debug_assert!(r.iter().all(|c| c.is_zero()));
    // Rational quotient with integer inputs divided by their gcd is integral
    // up to content handled by the caller; rebuild exactly.
    let mut denom = BigInt::one();
    for c in &q {
        denom = denom.lcm(c.denom());
    }
    let mut p = LPoly::zero();
    for (e, c) in q.iter().enumerate() {
        let scaled = c * BigRational::from_integer(denom.clone());
        debug_assert!(scaled.is_integer());
        p.insert(e as u32, scaled.to_integer());
    }
    debug_assert_eq!(denom, BigInt::one(), "gcd division left denominators");
    p
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match (*e, a == BigInt::one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "L")?,
                (1, false) => write!(f, "{a}*L")?,
                (_, true) => write!(f, "L^{e}")?,
                (_, false) => write!(f, "{a}*L^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LPoly::from_int(1) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
