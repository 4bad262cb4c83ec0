//! Lattice exponents with the t-first degree-lexicographic total order.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// A point of N^m. When the ambient ring is K[t, X_1..X_n], index 0 is the
/// t-exponent by convention.
///
/// The total order compares `(|a|, a_0, a_1, ..)` lexicographically, so the
/// minimum of a polynomial's support is its initial exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(m: usize) -> Self {
        ExponentVector(vec![0; m])
    }

    pub fn unit(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |a|, the total degree.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise divisibility: self <= other in every coordinate.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise max (the join used in inclusion-exclusion and S-pairs).
    pub fn join(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// self - other; requires other | self.
    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert!(other.divides(self));
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Exponent with the t-coordinate as its only nonzero entry.
    pub fn is_pure_t(&self) -> bool {
        !self.is_empty() && self.0[0] > 0 && self.0[1..].iter().all(|&e| e == 0)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.len(), other.len(), "exponent dimension mismatch");
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn degree_first_then_lex() {
        // In vars (t, X): t^2 vs tX: (2,0) vs (1,1): same degree, t-entry decides.
        assert!(ev(&[1, 1]) < ev(&[2, 0]));
        // Lower degree always first.
        assert!(ev(&[0, 2]) < ev(&[1, 3]));
    }

    #[test]
    fn join_and_divides() {
        let a = ev(&[1, 0, 3]);
        let b = ev(&[0, 2, 1]);
        assert_eq!(a.join(&b), ev(&[1, 2, 3]));
        assert!(a.divides(&a.join(&b)));
        assert!(!a.divides(&b));
    }

    #[test]
    fn pure_t_detection() {
        assert!(ev(&[3, 0, 0]).is_pure_t());
        assert!(!ev(&[0, 0, 0]).is_pure_t());
        assert!(!ev(&[2, 1, 0]).is_pure_t());
    }
}
