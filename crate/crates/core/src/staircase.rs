//! Diagrams N in N^m stable under translation (N + N^m = N), stored by their
//! finite vertex antichain: membership, the total order on diagrams, lattice
//! counting functions, and the Hilbert-Samuel polynomial with dimension and
//! multiplicity extraction.

use std::cmp::Ordering;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::algebra::ExponentVector;
use crate::error::{Error, Result};

/// A translation-stable diagram, represented by its vertex antichain sorted in
/// the exponent order. The empty vertex set is the empty diagram N = {} (zero
/// ideal); the single vertex 0 is the full diagram N = N^m (unit ideal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    dim: usize,
    vertices: Vec<ExponentVector>,
}

impl Staircase {
    pub fn empty(dim: usize) -> Staircase {
        Staircase {
            dim,
            vertices: Vec::new(),
        }
    }

    /// N = N^m, the diagram of the unit ideal.
    pub fn full(dim: usize) -> Staircase {
        Staircase {
            dim,
            vertices: vec![ExponentVector::zero(dim)],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0].is_zero()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    /// Dickson reduction: the unique antichain generating the same
    /// upward-closed set.
    pub fn minimalize<I>(dim: usize, exponents: I) -> Result<Staircase>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        let mut exps: Vec<ExponentVector> = Vec::new();
        for e in exponents {
            if e.len() != dim {
                return Err(Error::DimensionMismatch(e.len(), dim));
            }
            exps.push(e);
        }
        exps.sort();
        exps.dedup();
        let mut vertices: Vec<ExponentVector> = Vec::new();
        // Sorted by the degree-first order, so no later element can divide an
        // earlier one.
        'outer: for e in exps {
            for v in &vertices {
                if v.divides(&e) {
                    continue 'outer;
                }
            }
            vertices.push(e);
        }
        Ok(Staircase { dim, vertices })
    }

    pub fn contains(&self, alpha: &ExponentVector) -> bool {
        self.vertices.iter().any(|v| v.divides(alpha))
    }

    /// Whether some (m, 0, .., 0) lies in the diagram, i.e. a power of t is
    /// in the initial ideal.
    pub fn contains_pure_t(&self) -> bool {
        self.vertices
            .iter()
            .any(|v| v.0[1..].iter().all(|&e| e == 0))
    }

    /// The total order on diagrams: vertex sequences compared
    /// lexicographically, padded with infinity (a missing vertex is larger
    /// than any exponent).
    pub fn compare(&self, other: &Staircase) -> Result<Ordering> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut a = self.vertices.iter();
        let mut b = other.vertices.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ok(Ordering::Equal),
                (Some(_), None) => return Ok(Ordering::Less),
                (None, Some(_)) => return Ok(Ordering::Greater),
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Equal => continue,
                    ord => return Ok(ord),
                },
            }
        }
    }

    /// H_N(k): the number of lattice points of degree <= k outside N, by
    /// inclusion-exclusion over vertex subsets.
    pub fn hilbert(&self, k: u64) -> u64 {
        let m = self.dim as u64;
        let total = binomial(k + m, m);
        let inside = self.count_inside(k);
        (total - inside) as u64
    }

    // Points of N with degree <= k.
    fn count_inside(&self, k: u64) -> i128 {
        let m = self.dim as u64;
        let p = self.vertices.len();
        assert!(p <= 24, "inclusion-exclusion over vertex subsets");
        let mut acc: i128 = 0;
        // Subset joins, built incrementally over the subset lattice.
        for mask in 1u32..(1 << p) {
            let mut join: Option<ExponentVector> = None;
            for (i, v) in self.vertices.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    join = Some(match join {
                        None => v.clone(),
                        Some(j) => j.join(v),
                    });
                }
            }
            let j = join.unwrap().total();
            if j > k {
                continue;
            }
            let c = binomial(k - j + m, m);
            if mask.count_ones() % 2 == 1 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    /// Degree bound past which H_N agrees with its polynomial: the largest
    /// subset join degree.
    pub fn polynomial_bound(&self) -> u64 {
        let p = self.vertices.len();
        assert!(p <= 24, "inclusion-exclusion over vertex subsets");
        let mut bound = 0u64;
        for mask in 1u32..(1 << p) {
            let mut join: Option<ExponentVector> = None;
            for (i, v) in self.vertices.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    join = Some(match join {
                        None => v.clone(),
                        Some(j) => j.join(v),
                    });
                }
            }
            bound = bound.max(join.unwrap().total());
        }
        bound
    }

    /// Hilbert-Samuel data: exact values, the interpolated polynomial, its
    /// degree (the dimension) and normalized leading coefficient (the Samuel
    /// multiplicity).
    pub fn hilbert_samuel(&self) -> HilbertData {
        let m = self.dim;
        if self.is_full() {
            // Unit ideal: H = 0, the sentinel dimension.
            return HilbertData {
                values: vec![0; 4],
                polynomial: Vec::new(),
                stabilization: 0,
                dimension: Dimension::MinusInfinity,
                multiplicity: 0,
                full_ring: false,
            };
        }
        let flagged_full_ring = self.is_empty();
        let bound = self.polynomial_bound();
        // Sample m+1 points from the polynomial range; the degree is at most m.
        let samples: Vec<(u64, u64)> = (bound..=bound + m as u64)
            .map(|k| (k, self.hilbert(k)))
            .collect();
        let polynomial = interpolate(&samples);
        let degree = poly_degree(&polynomial);
        let values: Vec<u64> = (0..=bound + m as u64 + 1).map(|k| self.hilbert(k)).collect();
        // Shrink the stabilization degree while values still agree.
        let mut stab = bound;
        while stab > 0 {
            let k = stab - 1;
            if eval_rat_poly(&polynomial, k) != BigRational::from_integer(BigInt::from(values[k as usize])) {
                break;
            }
            stab -= 1;
        }
        let (dimension, multiplicity) = match degree {
            None => (Dimension::MinusInfinity, 0),
            Some(d) => {
                let lead = polynomial[d].clone();
                let mult = lead * BigRational::from_integer(factorial(d));
                debug_assert!(mult.is_integer() && mult.numer().is_positive());
                (
                    Dimension::Finite(d as u32),
                    u64::try_from(mult.to_integer()).expect("multiplicity fits"),
                )
            }
        };
        HilbertData {
            values,
            polynomial,
            stabilization: stab,
            dimension,
            multiplicity,
            full_ring: flagged_full_ring,
        }
    }
}

impl Serialize for Staircase {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        // Sorted vertex list.
        let mut seq = ser.serialize_seq(Some(self.vertices.len()))?;
        for v in &self.vertices {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

/// Dimension of a local ring read off the Hilbert-Samuel polynomial;
/// MinusInfinity encodes the unit ideal (the point left the space).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Dimension {
    MinusInfinity,
    Finite(u32),
}

/// The Hilbert-Samuel function of a diagram: exact initial values, the
/// eventual polynomial, and the Samuel data extracted from its leading term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    /// H(0), H(1), ... out past the stabilization degree.
    pub values: Vec<u64>,
    /// Coefficients of the eventual polynomial in k, low degree first.
    pub polynomial: Vec<BigRational>,
    /// All k >= this agree with the polynomial.
    pub stabilization: u64,
    pub dimension: Dimension,
    /// d! times the leading coefficient; 0 for the unit ideal.
    pub multiplicity: u64,
    /// Set when the diagram was empty (zero ideal, full polynomial ring).
    pub full_ring: bool,
}

impl HilbertData {
    pub fn eval(&self, k: u64) -> u64 {
        if let Some(v) = self.values.get(k as usize) {
            return *v;
        }
        let r = eval_rat_poly(&self.polynomial, k);
        u64::try_from(r.to_integer()).expect("Hilbert value fits")
    }

    /// Pointwise comparison certified for every k: explicit values are
    /// compared directly and the eventual polynomials are compared beyond all
    /// real roots of their difference.
    pub fn leq_everywhere(&self, other: &HilbertData) -> bool {
        let upto = self
            .stabilization
            .max(other.stabilization)
            .max(self.values.len() as u64)
            .max(other.values.len() as u64);
        for k in 0..=upto {
            if self.eval(k) > other.eval(k) {
                return false;
            }
        }
        // Beyond: diff = other.poly - self.poly must be eventually
        // nonnegative; check the sign of the leading coefficient and every
        // integer up to the Cauchy root bound, in exact arithmetic.
        let diff = sub_polys(&other.polynomial, &self.polynomial);
        match poly_degree(&diff) {
            None => true,
            Some(d) => {
                if diff[d].is_negative() {
                    return false;
                }
                let bound = cauchy_root_bound(&diff).max(upto);
                (upto..=bound).all(|k| !eval_rat_poly(&diff, k).is_negative())
            }
        }
    }
}

fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Exact Lagrange interpolation through integer samples.
fn interpolate(samples: &[(u64, u64)]) -> Vec<BigRational> {
    let n = samples.len();
    let mut acc = vec![BigRational::zero(); n];
    for (i, &(xi, yi)) in samples.iter().enumerate() {
        // Basis polynomial prod_{j != i} (k - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in samples.iter().enumerate() {
            if j == i {
                continue;
            }
            basis = mul_linear(&basis, &BigRational::from_integer(BigInt::from(xj)));
            denom *= BigRational::from_integer(BigInt::from(xi as i64 - xj as i64));
        }
        let scale = BigRational::from_integer(BigInt::from(yi)) / denom;
        for (k, b) in basis.iter().enumerate() {
            acc[k] += b * &scale;
        }
    }
    while acc.last().map(|c| c.is_zero()).unwrap_or(false) {
        acc.pop();
    }
    acc
}

// p(k) * (k - root)
fn mul_linear(p: &[BigRational], root: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * root;
    }
    out
}

fn poly_degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn eval_rat_poly(p: &[BigRational], k: u64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(k));
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}

fn sub_polys(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

/// 1 + max |a_i / a_d|, beyond which a polynomial has the sign of its leading
/// coefficient.
fn cauchy_root_bound(p: &[BigRational]) -> u64 {
    let d = match poly_degree(p) {
        Some(d) => d,
        None => return 0,
    };
    let lead = p[d].clone();
    let mut bound = BigRational::one();
    for c in &p[..d] {
        let r = (c / &lead).abs();
        if r > bound {
            bound = r;
        }
    }
    let b = bound.ceil().to_integer();
    u64::try_from(b).unwrap_or(u64::MAX / 2) + 1
}
