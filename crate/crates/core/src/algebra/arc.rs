//! Truncated arcs: coefficient vectors A_1..A_i in K^n, plus the truncated
//! evaluation of polynomials along them.

use crate::algebra::field::{FieldDesc, FieldElement};
use crate::algebra::poly::Polynomial;
use crate::error::{Error, Result};

/// A truncated arc phi(t) = A_0 + sum_{k=1..i} A_k t^k.
///
/// The base point A_0 is the origin for everything in the Nash pipeline;
/// it is carried so that arcs at distinct base points can be compared by
/// the arc-space metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    n: usize,
    field: FieldDesc,
    base: Vec<FieldElement>,
    coeffs: Vec<Vec<FieldElement>>,
}

impl Arc {
    /// Arc at the origin with the given coefficient vectors A_1..A_i.
    pub fn new(field: FieldDesc, n: usize, coeffs: Vec<Vec<FieldElement>>) -> Result<Arc> {
        for a in &coeffs {
            if a.len() != n {
                return Err(Error::DimensionMismatch(a.len(), n));
            }
        }
        Ok(Arc {
            n,
            field,
            base: vec![field.zero(); n],
            coeffs,
        })
    }

    pub fn with_base(mut self, base: Vec<FieldElement>) -> Result<Arc> {
        if base.len() != self.n {
            return Err(Error::DimensionMismatch(base.len(), self.n));
        }
        self.base = base;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    /// Truncation order i.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn base(&self) -> &[FieldElement] {
        &self.base
    }

    pub fn is_centered(&self) -> bool {
        self.base.iter().all(|c| c.is_zero())
    }

    /// A_k for 1 <= k <= i.
    pub fn coeff(&self, k: usize) -> &[FieldElement] {
        &self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[Vec<FieldElement>] {
        &self.coeffs
    }

    /// The j-th coordinate as a univariate polynomial in t.
    pub fn component(&self, j: usize) -> Polynomial {
        let mut p = Polynomial::constant(self.field, 1, self.base[j].clone());
        for (k, a) in self.coeffs.iter().enumerate() {
            p = p.add(&Polynomial::monomial(
                self.field,
                crate::algebra::ExponentVector(vec![(k + 1) as u32]),
                a[j].clone(),
            ));
        }
        p
    }

    pub fn truncate(&self, i: usize) -> Arc {
        Arc {
            n: self.n,
            field: self.field,
            base: self.base.clone(),
            coeffs: self.coeffs.iter().take(i).cloned().collect(),
        }
    }

    /// Extend with further coefficient vectors.
    pub fn extend(&self, more: Vec<Vec<FieldElement>>) -> Result<Arc> {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(more);
        Arc::new(self.field, self.n, coeffs).and_then(|a| a.with_base(self.base.clone()))
    }

    /// The shifted arc phi_j(t) = sum_{k>j} A_k t^{k-j}, the arc carried by
    /// the j-th chart of the transform chain.
    pub fn tail(&self, j: usize) -> Arc {
        Arc {
            n: self.n,
            field: self.field,
            base: vec![self.field.zero(); self.n],
            coeffs: self.coeffs.iter().skip(j).cloned().collect(),
        }
    }

    /// Exact composition f(phi(t)) for f in n variables; the result is a
    /// univariate polynomial in t.
    pub fn compose_exact(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.vars() != self.n {
            return Err(Error::DimensionMismatch(f.vars(), self.n));
        }
        let images: Vec<Polynomial> = (0..self.n).map(|j| self.component(j)).collect();
        Ok(f.substitute(&images))
    }

    /// f(phi^i(t)) truncated at degree `precision`, together with whether the
    /// truncation is provably nonzero at this precision.
    pub fn compose(&self, f: &Polynomial, precision: u32) -> Result<Composition> {
        let full = self.compose_exact(f)?;
        let series = full.truncate_degree(precision as u64);
        Ok(Composition {
            series,
            precision,
        })
    }
}

/// A truncated composition f(phi(t)) mod t^{precision+1}.
#[derive(Debug, Clone)]
pub struct Composition {
    pub series: Polynomial,
    pub precision: u32,
}

impl Composition {
    /// Witnessed nonvanishing: some coefficient up to t^precision is nonzero.
    pub fn provably_nonzero(&self) -> bool {
        !self.series.is_zero()
    }

    /// Order of the truncated series, when witnessed.
    pub fn order(&self) -> Option<u64> {
        self.series.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{parse_arc, parse_polynomial, VarTable};

    fn q() -> FieldDesc {
        FieldDesc::Rationals
    }

    fn cusp_arc() -> Arc {
        parse_arc("(t^3, t^2)", q()).unwrap()
    }

    fn germ(src: &str) -> Polynomial {
        parse_polynomial(src, &VarTable::new(&["x", "y"]), q()).unwrap()
    }

    #[test]
    fn cusp_arc_lies_on_cusp() {
        let f = germ("x^2 - y^3");
        let c = cusp_arc().compose(&f, 10).unwrap();
        assert!(!c.provably_nonzero());
    }

    #[test]
    fn coordinate_composition() {
        let x = germ("x");
        let c = cusp_arc().compose(&x, 5).unwrap();
        assert_eq!(c.order(), Some(3));
        assert_eq!(c.series.num_terms(), 1);
    }

    #[test]
    fn partial_of_cusp_composes_to_order_three() {
        let fx = germ("2*x");
        let c = cusp_arc().compose(&fx, 10).unwrap();
        assert_eq!(c.order(), Some(3));
        // 2 t^3 exactly
        let exact = cusp_arc().compose_exact(&fx).unwrap();
        assert_eq!(
            exact,
            parse_polynomial("2*t^3", &VarTable::new(&["t"]), q()).unwrap()
        );
    }

    #[test]
    fn composition_is_multiplicative() {
        let f = germ("x + y^2");
        let g = germ("x*y - 2*y");
        let arc = cusp_arc();
        let fg = arc.compose_exact(&f.mul(&g)).unwrap();
        let sep = arc
            .compose_exact(&f)
            .unwrap()
            .mul(&arc.compose_exact(&g).unwrap());
        assert_eq!(fg, sep);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let f = parse_polynomial("x1 + x3", &VarTable::new(&["x1", "x2", "x3"]), q()).unwrap();
        assert!(matches!(
            cusp_arc().compose(&f, 4),
            Err(Error::DimensionMismatch(3, 2))
        ));
    }
}
