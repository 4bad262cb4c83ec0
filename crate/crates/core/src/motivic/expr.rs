//! Symbolic Grothendieck-ring expressions: rational functions in L, linear
//! over formal products of class symbols [V_{p,k}] (the affine hypersurface
//! 1 + x_1^k + .. + x_p^k = 0), with the class rewrites
//!
//!   [C_k] = ([V_{n-1,k}] + .. + [V_{1,k}]) (L - 1)
//!   [W_k] = [V_{n,k}] (L - 1)
//!
//! In characteristic zero [V_{1,k}] is the class of k points, which is how
//! the display form writes it; over F_q the two can have different point
//! counts, so the symbol is kept and only identified with k on demand.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::motivic::lpoly::{LPoly, RatFunc};

/// A formal product of class symbols [V_{p,k}]^e; empty means the unit class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymProduct(Vec<(u32, u32, u32)>);

impl SymProduct {
    pub fn unit() -> SymProduct {
        SymProduct(Vec::new())
    }

    pub fn single(p: u32, k: u32) -> SymProduct {
        SymProduct(vec![(p, k, 1)])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(u32, u32, u32)] {
        &self.0
    }

    fn mul(&self, other: &SymProduct) -> SymProduct {
        let mut map: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for &(p, k, e) in self.0.iter().chain(&other.0) {
            *map.entry((p, k)).or_insert(0) += e;
        }
        SymProduct(map.into_iter().map(|((p, k), e)| (p, k, e)).collect())
    }

    /// dim [V_{p,k}] = p - 1, summed over the product.
    fn dimension(&self) -> i64 {
        self.0
            .iter()
            .map(|&(p, _, e)| (p as i64 - 1) * e as i64)
            .sum()
    }
}

/// A rational function in L with integer coefficients, linear over formal
/// products of class symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotivicExpr {
    terms: BTreeMap<SymProduct, RatFunc>,
}

impl MotivicExpr {
    pub fn zero() -> MotivicExpr {
        MotivicExpr {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MotivicExpr {
        MotivicExpr::from_rat(RatFunc::one())
    }

    pub fn from_rat(r: RatFunc) -> MotivicExpr {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(SymProduct::unit(), r);
        }
        MotivicExpr { terms }
    }

    pub fn from_int(n: i64) -> MotivicExpr {
        MotivicExpr::from_rat(RatFunc::from_int(n))
    }

    /// L^e.
    pub fn l_pow(e: i64) -> MotivicExpr {
        MotivicExpr::from_rat(RatFunc::l_pow(e))
    }

    /// The class symbol [V_{p,k}].
    pub fn sym(p: u32, k: u32) -> MotivicExpr {
        let mut terms = BTreeMap::new();
        terms.insert(SymProduct::single(p, k), RatFunc::one());
        MotivicExpr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymProduct, &RatFunc)> {
        self.terms.iter()
    }

    fn insert(&mut self, s: SymProduct, r: RatFunc) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&r);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MotivicExpr) -> MotivicExpr {
        let mut out = self.clone();
        for (s, r) in &other.terms {
            out.insert(s.clone(), r.clone());
        }
        out
    }

    pub fn sub(&self, other: &MotivicExpr) -> MotivicExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MotivicExpr {
        MotivicExpr {
            terms: self
                .terms
                .iter()
                .map(|(s, r)| (s.clone(), r.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MotivicExpr) -> MotivicExpr {
        let mut out = MotivicExpr::zero();
        for (sa, ra) in &self.terms {
            for (sb, rb) in &other.terms {
                out.insert(sa.mul(sb), ra.mul(rb));
            }
        }
        out
    }

    pub fn scale(&self, r: &RatFunc) -> MotivicExpr {
        self.mul(&MotivicExpr::from_rat(r.clone()))
    }

    /// Replace [V_{1,k}] by the integer k, the characteristic-zero
    /// identification used by the display form of the closed volume.
    pub fn identify_v1_with_k(&self, k: u32) -> MotivicExpr {
        let mut out = MotivicExpr::zero();
        for (s, r) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = RatFunc::one();
            for &(p, kk, e) in s.factors() {
                if p == 1 && kk == k {
                    for _ in 0..e {
                        factor = factor.mul(&RatFunc::from_int(k as i64));
                    }
                } else {
                    kept.push((p, kk, e));
                }
            }
            out.insert(SymProduct(kept), r.mul(&factor));
        }
        out
    }

    /// Max over terms of (L-degree of the rational function + dimension of
    /// the symbol product); None encodes minus infinity (the zero element).
    pub fn virtual_dimension(&self) -> Option<i64> {
        self.terms
            .iter()
            .filter_map(|(s, r)| r.l_degree().map(|d| d + s.dimension()))
            .max()
    }

    /// Counting-measure specialization: L -> q and [V_{p,k}] -> the number
    /// of F_q-points of 1 + x_1^k + .. + x_p^k = 0, by brute force.
    pub fn specialize(&self, q: u64, counter: &mut PointCounter) -> Result<BigRational> {
        let qe = BigRational::from_integer(BigInt::from(q));
        let mut acc = BigRational::zero();
        for (s, r) in &self.terms {
            let mut coeff = BigRational::one();
            for &(p, k, e) in s.factors() {
                let c = BigInt::from(counter.count(p, k, q)?);
                for _ in 0..e {
                    coeff *= BigRational::from_integer(c.clone());
                }
            }
            acc += coeff * r.eval(&qe)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for MotivicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, r) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if s.is_unit() {
                write!(f, "{r}")?;
            } else {
                for &(p, k, e) in s.factors() {
                    if e == 1 {
                        write!(f, "[V_{{{p},{k}}}]")?;
                    } else {
                        write!(f, "[V_{{{p},{k}}}]^{e}")?;
                    }
                }
                write!(f, " * ({r})")?;
            }
        }
        Ok(())
    }
}

/// Memoized brute-force point counts of the symbol hypersurfaces over F_q.
#[derive(Debug, Default)]
pub struct PointCounter {
    cache: BTreeMap<(u32, u32, u64), u64>,
}

impl PointCounter {
    pub fn new() -> PointCounter {
        PointCounter::default()
    }

    /// #{x in F_q^p : 1 + x_1^k + .. + x_p^k = 0}. Only prime q is
    /// supported; the census never needs proper prime powers.
    pub fn count(&mut self, p: u32, k: u32, q: u64) -> Result<u64> {
        if let Some(&c) = self.cache.get(&(p, k, q)) {
            return Ok(c);
        }
        if !crate::algebra::field::is_prime(q) {
            return Err(Error::BadArgument(format!(
                "specialization at q = {q}: only prime fields are supported"
            )));
        }
        let total = (q as u128).checked_pow(p).filter(|&t| t <= 200_000_000);
        if total.is_none() {
            return Err(Error::GuardExceeded((q as u128).pow(p)));
        }
        let powers: Vec<u64> = (0..q).map(|x| pow_mod(x, k, q)).collect();
        let count = count_rec(p, q, 1 % q, &powers);
        self.cache.insert((p, k, q), count);
        Ok(count)
    }
}

fn count_rec(vars: u32, q: u64, partial: u64, powers: &[u64]) -> u64 {
    if vars == 0 {
        return (partial == 0) as u64;
    }
    let mut acc = 0;
    for x in 0..q {
        acc += count_rec(vars - 1, q, (partial + powers[x as usize]) % q, powers);
    }
    acc
}

fn pow_mod(mut b: u64, mut e: u32, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// (L - 1) as a rational function.
pub fn l_minus_one() -> RatFunc {
    RatFunc::from_poly(LPoly::l_power_minus_one(1))
}

/// [C_k] = ([V_{n-1,k}] + .. + [V_{1,k}]) (L - 1): the punctured Fermat cone
/// in K^n, decomposed by last nonvanishing coordinate.
pub fn c_class(n: u32, k: u32) -> MotivicExpr {
    let mut sum = MotivicExpr::zero();
    for p in 1..n {
        sum = sum.add(&MotivicExpr::sym(p, k));
    }
    sum.scale(&l_minus_one())
}

/// [W_k] = [V_{n,k}] (L - 1).
pub fn w_class(n: u32, k: u32) -> MotivicExpr {
    MotivicExpr::sym(n, k).scale(&l_minus_one())
}

/// Sum over v >= v0 of L^{-a v} = L^{-a(v0-1)} / (L^a - 1), the geometric
/// tail used to pass from partial sums to the closed volume.
pub fn geometric_tail(a: u32, v0: u32) -> RatFunc {
    assert!(a >= 1 && v0 >= 1);
    RatFunc::l_pow(-((a * (v0 - 1)) as i64))
        .div(&RatFunc::from_poly(LPoly::l_power_minus_one(a)))
        .expect("nonzero denominator")
}

/// Finite geometric sum over v0 <= v <= v1 of L^{-a v}.
fn geometric_sum(a: u32, v0: u32, v1: u32) -> RatFunc {
    let mut acc = RatFunc::zero();
    for v in v0..=v1 {
        acc = acc.add(&RatFunc::l_pow(-((a * v) as i64)));
    }
    acc
}

/// The level-i partial sum T_i = [P^i] L^{-ni} of the principal parts of the
/// Brieskorn germ x_1^k + .. + x_n^k + y^{2k}:
///
///   T_i = [C_k] L sum_{v=1..i} L^{-nv}
///       + [W_k] sum_{v=1..floor(i/2)} L^{-(2n-1)v}
///       + [C_k](L-1) sum_{v=2..i} L^{-nv} sum_{l=1..min(v-1,i-v)} L^{-(n-1)l}
pub fn partial_sum(n: u32, k: u32, i: u32) -> Result<MotivicExpr> {
    check_brieskorn_params(n, k)?;
    if i < 1 {
        return Err(Error::BadArgument("level must be >= 1".into()));
    }
    let c = c_class(n, k);
    let w = w_class(n, k);

    let first = c.scale(&RatFunc::l_pow(1).mul(&geometric_sum(n, 1, i)));

    let mut t = first;
    if i >= 2 {
        let case_a = w.scale(&geometric_sum(2 * n - 1, 1, i / 2));
        t = t.add(&case_a);
    }
    let mut case_b = RatFunc::zero();
    for v in 2..=i {
        let inner_top = (v - 1).min(i - v);
        if inner_top == 0 {
            continue;
        }
        let inner = geometric_sum(n - 1, 1, inner_top);
        case_b = case_b.add(&RatFunc::l_pow(-((n * v) as i64)).mul(&inner));
    }
    if !case_b.is_zero() {
        t = t.add(&c.scale(&l_minus_one().mul(&case_b)));
    }
    Ok(t)
}

/// The closed-form motivic volume, produced by the symbolic geometric-series
/// limits of the three families of the partial sums. The third term's
/// denominator comes out of the summation as (L^n - 1)(L^{2n-1} - 1).
#[derive(Debug, Clone)]
pub struct VolumeClosedForm {
    pub terms: [MotivicExpr; 3],
    pub total: MotivicExpr,
}

pub fn volume_closed_form(n: u32, k: u32) -> Result<VolumeClosedForm> {
    check_brieskorn_params(n, k)?;
    let c = c_class(n, k);
    let w = w_class(n, k);

    // lim_i [C_k] L sum_{v=1..i} L^{-nv}
    let term1 = c.scale(&RatFunc::l_pow(1).mul(&geometric_tail(n, 1)));
    // lim_i [W_k] sum_{v=1..floor(i/2)} L^{-(2n-1)v}
    let term2 = w.scale(&geometric_tail(2 * n - 1, 1));
    // lim_i of the double sum: the inner bound min(v-1, i-v) tends to v-1,
    // and sum_{l=1..v-1} x^l = (x - x^v)/(1 - x) with x = L^{-(n-1)} turns
    // the double series into a combination of geometric tails in v.
    let x = RatFunc::l_pow(-((n - 1) as i64));
    let one_minus_x_inv = RatFunc::one()
        .div(&RatFunc::one().sub(&x))
        .expect("1 - L^{-(n-1)} is nonzero");
    let double = x
        .mul(&geometric_tail(n, 2))
        .sub(&geometric_tail(2 * n - 1, 2))
        .mul(&one_minus_x_inv);
    let term3 = c.scale(&l_minus_one().mul(&double));

    let total = term1.add(&term2).add(&term3);
    Ok(VolumeClosedForm {
        terms: [term1, term2, term3],
        total,
    })
}

fn check_brieskorn_params(n: u32, k: u32) -> Result<()> {
    if n < 3 || k < 2 {
        return Err(Error::BadArgument(format!(
            "Brieskorn family needs n >= 3 and k >= 2, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t1_is_c_times_l_to_one_minus_n() {
        let n = 3;
        let k = 2;
        let t1 = partial_sum(n, k, 1).unwrap();
        let expect = c_class(n, k).scale(&RatFunc::l_pow(1 - n as i64));
        assert_eq!(t1, expect);
    }

    #[test]
    fn t2_contains_the_w_term() {
        let n = 3;
        let k = 2;
        let t2 = partial_sum(n, k, 2).unwrap();
        let w_part = w_class(n, k).scale(&RatFunc::l_pow(-(2 * n as i64 - 1)));
        // Subtracting the two case-1 contributions leaves exactly the W term.
        let case1 = c_class(n, k).scale(&RatFunc::l_pow(1).mul(
            &RatFunc::l_pow(-(n as i64)).add(&RatFunc::l_pow(-2 * n as i64)),
        ));
        assert_eq!(t2.sub(&case1), w_part);
    }

    #[test]
    fn closed_form_terms_match_the_display() {
        // The display writes the symbol sum with the (L-1) of [C_k] pulled
        // out: ([V_{n-1,k}] + .. + k) L (L-1) / (L^n - 1), etc.
        for (n, k) in [(3u32, 2u32), (4, 3)] {
            let v = volume_closed_form(n, k).unwrap();
            let sym_sum = (1..n).fold(MotivicExpr::zero(), |a, p| a.add(&MotivicExpr::sym(p, k)));
            let denom1 = RatFunc::from_poly(LPoly::l_power_minus_one(n));
            let t1 =
                sym_sum.scale(&RatFunc::l_pow(1).mul(&l_minus_one()).div(&denom1).unwrap());
            assert_eq!(v.terms[0], t1);

            let denom2 = RatFunc::from_poly(LPoly::l_power_minus_one(2 * n - 1));
            let t2 = MotivicExpr::sym(n, k).scale(&l_minus_one().div(&denom2).unwrap());
            assert_eq!(v.terms[1], t2);

            // The summation's third denominator: (L^n - 1)(L^{2n-1} - 1).
            let denom3 = denom1.mul(&denom2);
            let t3 =
                sym_sum.scale(&l_minus_one().mul(&l_minus_one()).div(&denom3).unwrap());
            assert_eq!(v.terms[2], t3);
            assert!(!v.total.is_zero());
        }
    }

    #[test]
    fn virtual_dimension_examples() {
        let e = MotivicExpr::sym(4, 2).scale(&RatFunc::l_pow(7));
        assert_eq!(e.virtual_dimension(), Some(3 + 7));
        assert_eq!(MotivicExpr::zero().virtual_dimension(), None);
        let mixed = e.add(&MotivicExpr::l_pow(20));
        assert_eq!(mixed.virtual_dimension(), Some(20));
    }

    #[test]
    fn specialize_examples() {
        let mut pc = PointCounter::new();
        // L(L-1) at q=5 is 20.
        let e = MotivicExpr::l_pow(1).scale(&l_minus_one());
        let v = e.specialize(5, &mut pc).unwrap();
        assert_eq!(v, BigRational::from_integer(20.into()));
        // [V_{2,2}](F_5): 1 + x^2 + y^2 = 0 has 4 points.
        assert_eq!(pc.count(2, 2, 5).unwrap(), 4);
        // [V_{1,2}](F_7) is empty: -1 is not a square mod 7.
        assert_eq!(pc.count(1, 2, 7).unwrap(), 0);
        assert_eq!(pc.count(1, 2, 5).unwrap(), 2);
    }

    #[test]
    fn expr_ring_axioms_smoke() {
        let a = MotivicExpr::sym(2, 2).add(&MotivicExpr::l_pow(-3));
        let b = c_class(3, 2);
        let c = MotivicExpr::from_int(4).sub(&MotivicExpr::sym(3, 2));
        let left = a.mul(&b.add(&c));
        let right = a.mul(&b).add(&a.mul(&c));
        assert_eq!(left, right);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}
