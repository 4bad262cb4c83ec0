//! Sparse multivariate polynomials over an exact field, with the valuations
//! and substitutions the transform pipeline needs.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::exponent::ExponentVector;
use crate::algebra::field::{FieldDesc, FieldElement};
use crate::error::{Error, Result};

/// Exact multivariate polynomial. Terms are keyed by the t-first
/// degree-lexicographic order, so the first key is the initial exponent.
/// No zero coefficients are ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    field: FieldDesc,
    terms: BTreeMap<ExponentVector, FieldElement>,
}

impl Polynomial {
    pub fn zero(field: FieldDesc, vars: usize) -> Self {
        Polynomial {
            vars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldDesc, vars: usize, c: FieldElement) -> Self {
        let mut p = Polynomial::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(ExponentVector::zero(vars), c);
        }
        p
    }

    pub fn one(field: FieldDesc, vars: usize) -> Self {
        Polynomial::constant(field, vars, field.one())
    }

    pub fn var(field: FieldDesc, vars: usize, i: usize) -> Self {
        assert!(i < vars);
        Polynomial::monomial(field, ExponentVector::unit(vars, i), field.one())
    }

    pub fn monomial(field: FieldDesc, exp: ExponentVector, c: FieldElement) -> Self {
        let mut p = Polynomial::zero(field, exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms<I>(field: FieldDesc, vars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, FieldElement)>,
    {
        let mut p = Polynomial::zero(field, vars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &ExponentVector) -> FieldElement {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, exp: ExponentVector, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exp.len(), self.vars);
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Order (multiplicity) at the origin: min |a| over the support,
    /// `None` for the zero polynomial (order infinity).
    pub fn order(&self) -> Option<u64> {
        // The map order is degree-first, so the first key has minimal degree.
        self.terms.keys().next().map(|e| e.total())
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.total()).max()
    }

    /// Gap between degree and order, the quantity that makes local division
    /// terminate.
    pub fn ecart(&self) -> u64 {
        match (self.degree(), self.order()) {
            (Some(d), Some(o)) => d - o,
            _ => 0,
        }
    }

    /// The minimal exponent of the support.
    pub fn initial_exponent(&self) -> Result<&ExponentVector> {
        self.terms.keys().next().ok_or(Error::NoInitialExponent)
    }

    /// Coefficient-monomial pair at the initial exponent.
    pub fn initial_monomial(&self) -> Result<(FieldElement, ExponentVector)> {
        let (e, c) = self.terms.iter().next().ok_or(Error::NoInitialExponent)?;
        Ok((c.clone(), e.clone()))
    }

    /// Sum of the terms of minimal total degree.
    pub fn initial_form(&self) -> Polynomial {
        match self.order() {
            None => self.clone(),
            Some(m) => Polynomial::from_terms(
                self.field,
                self.vars,
                self.terms
                    .iter()
                    .take_while(|(e, _)| e.total() == m)
                    .map(|(e, c)| (e.clone(), c.clone())),
            ),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Polynomial::zero(self.field, self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.vars);
        }
        Polynomial {
            vars: self.vars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// self - c * X^e * g; the reduction step of local division.
    pub fn sub_mul_monomial(&self, c: &FieldElement, e: &ExponentVector, g: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (eg, cg) in &g.terms {
            out.add_term(eg.add(e), cg.mul(c).neg());
        }
        out
    }

    pub fn mul_monomial(&self, c: &FieldElement, e: &ExponentVector) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.vars,
            self.terms
                .iter()
                .map(|(eg, cg)| (eg.add(e), cg.mul(c))),
        )
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divide by the initial coefficient.
    pub fn monic(&self) -> Result<Polynomial> {
        let (c, _) = self.initial_monomial()?;
        Ok(self.scale(&c.inv()?))
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        assert!(i < self.vars);
        let mut out = Polynomial::zero(self.field, self.vars);
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d.0[i] -= 1;
            out.add_term(d, c.mul(&self.field.from_i64(e.0[i] as i64)));
        }
        out
    }

    /// d^a f / dx^a for a multi-index.
    pub fn derivative_multi(&self, idx: &[u32]) -> Polynomial {
        let mut out = self.clone();
        for (i, &e) in idx.iter().enumerate() {
            for _ in 0..e {
                out = out.derivative(i);
            }
        }
        out
    }

    /// Largest m with t^m | f (t is variable 0); `None` for zero.
    pub fn max_t_power(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0[0]).min()
    }

    /// f / t^m; requires t^m | f.
    pub fn div_t_power(&self, m: u32) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.vars,
            self.terms.iter().map(|(e, c)| {
                let mut d = e.clone();
                debug_assert!(d.0[0] >= m);
                d.0[0] -= m;
                (d, c.clone())
            }),
        )
    }

    /// The blowup chart substitution f(t, t(A_1+X_1), .., t(A_n+X_n)),
    /// expanded exactly. Variable 0 must be t.
    pub fn quadratic_substitute(&self, a: &[FieldElement]) -> Polynomial {
        assert_eq!(a.len() + 1, self.vars, "chart vector must cover the X variables");
        let n = a.len();
        let mut out = Polynomial::zero(self.field, self.vars);
        // Binomial expansions of (A_j + X_j)^e, cached per (j, e).
        let mut binom_cache: BTreeMap<(usize, u32), Vec<FieldElement>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let xdeg: u32 = e.0[1..].iter().sum();
            // c * t^{a0 + |beta|} * prod_j (A_j + X_j)^{e_j}
            let mut partial: Vec<(Vec<u32>, FieldElement)> = vec![(vec![0u32; n], c.clone())];
            for j in 0..n {
                let ej = e.0[j + 1];
                if ej == 0 {
                    continue;
                }
                let coeffs = binom_cache
                    .entry((j, ej))
                    .or_insert_with(|| binomial_coeffs(&a[j], ej, self.field));
                let mut next = Vec::with_capacity(partial.len() * (ej as usize + 1));
                for (exps, coef) in &partial {
                    for (k, bc) in coeffs.iter().enumerate() {
                        if bc.is_zero() {
                            continue;
                        }
                        let mut e2 = exps.clone();
                        e2[j] = k as u32;
                        next.push((e2, coef.mul(bc)));
                    }
                }
                partial = next;
            }
            let t0 = e.0[0] + xdeg;
            for (exps, coef) in partial {
                let mut full = Vec::with_capacity(self.vars);
                full.push(t0);
                full.extend_from_slice(&exps);
                out.add_term(ExponentVector(full), coef);
            }
        }
        out
    }

    /// Substitute each variable by the given polynomial. All images must live
    /// in the same ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.vars);
        let (tvars, field) = match images.first() {
            Some(p) => (p.vars, p.field),
            None => (0, self.field),
        };
        let mut out = Polynomial::zero(field, tvars);
        // Power cache per variable.
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(field, tvars), p.clone()])
            .collect();
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(field, tvars, c.clone());
            for (j, &ej) in e.0.iter().enumerate() {
                if ej == 0 {
                    continue;
                }
                while powers[j].len() <= ej as usize {
                    let last = powers[j].last().unwrap().mul(&images[j]);
                    powers[j].push(last);
                }
                term = term.mul(&powers[j][ej as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluate at a point.
    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.vars);
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (j, &ej) in e.0.iter().enumerate() {
                if ej > 0 {
                    v = v.mul(&point[j].pow(ej));
                }
            }
            acc = acc.add(&v);
        }
        acc
    }

    /// View an n-variable polynomial inside K[t, X_1..X_n] with t free.
    pub fn lift_t(&self) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.vars + 1,
            self.terms.iter().map(|(e, c)| {
                let mut d = Vec::with_capacity(e.len() + 1);
                d.push(0);
                d.extend_from_slice(&e.0);
                (ExponentVector(d), c.clone())
            }),
        )
    }

    /// Truncate, discarding terms of total degree strictly above `bound`.
    pub fn truncate_degree(&self, bound: u64) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.vars,
            self.terms
                .iter()
                .filter(|(e, _)| e.total() <= bound)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }
}

/// Coefficients of (a + X)^e in increasing powers of X.
fn binomial_coeffs(a: &FieldElement, e: u32, field: FieldDesc) -> Vec<FieldElement> {
    // C(e,k) a^{e-k}
    let mut out = Vec::with_capacity(e as usize + 1);
    let mut binom = num::BigInt::from(1);
    for k in 0..=e {
        if k > 0 {
            binom = binom * num::BigInt::from(e - k + 1) / num::BigInt::from(k);
        }
        let b = match field {
            FieldDesc::Rationals => FieldElement::Rat(num::BigRational::from_integer(binom.clone())),
            FieldDesc::PrimeField(p) => {
                let m = &binom % num::BigInt::from(p);
                FieldElement::Fp {
                    val: u64::try_from(m).unwrap(),
                    p,
                }
            }
        };
        out.push(b.mul(&a.pow(e - k)));
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<String> = default_var_names(self.vars);
        let mut first = true;
        for (e, c) in &self.terms {
            // Split a rational sign off for readable output; prime-field
            // residues print as-is.
            let (neg, mag) = match c {
                FieldElement::Rat(r) if r < &num::BigRational::from_integer(0.into()) => {
                    (true, c.neg())
                }
                _ => (false, c.clone()),
            };
            if first {
                first = false;
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let monomial: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &ej)| ej > 0)
                .map(|(j, &ej)| {
                    if ej == 1 {
                        names[j].clone()
                    } else {
                        format!("{}^{}", names[j], ej)
                    }
                })
                .collect();
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn default_var_names(vars: usize) -> Vec<String> {
    // Display-only convention: t then x1..xn.
    (0..vars)
        .map(|j| if j == 0 { "t".to_string() } else { format!("x{j}") })
        .collect()
}
