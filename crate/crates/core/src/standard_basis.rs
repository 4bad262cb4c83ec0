//! Standard bases of polynomial-generated ideals in the local ring with the
//! t-first degree-lex order, the diagram of initial exponents, distinguished
//! reduction, and strict transforms of ideals.
//!
//! Division is Mora's tangent-cone variant: under a local order a naive
//! division need not terminate on polynomial input, so reducers are chosen
//! with minimal ecart and intermediate remainders join the reducer set.

use std::collections::BTreeSet;

use crate::algebra::{strict_transform, ExponentVector, FieldElement, Polynomial};
use crate::error::{Error, Result};
use crate::staircase::Staircase;

/// A standard basis: generators whose initial exponents are exactly the
/// vertices of the diagram of initial exponents of the ideal they generate.
#[derive(Debug, Clone)]
pub struct StandardBasis {
    generators: Vec<Polynomial>,
    diagram: Staircase,
    distinguished: bool,
    reduction_bound: Option<u64>,
}

impl StandardBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn diagram(&self) -> &Staircase {
        &self.diagram
    }

    pub fn is_distinguished(&self) -> bool {
        self.distinguished
    }

    pub fn reduction_bound(&self) -> Option<u64> {
        self.reduction_bound
    }

    /// Strict transforms of the basis elements under the chart
    /// (t, X) -> (t, t(A+X)). For a standard basis these generate the strict
    /// transform of the ideal.
    pub fn strict_transform_ideal(&self, a: &[FieldElement]) -> Vec<Polynomial> {
        self.generators
            .iter()
            .map(|g| strict_transform(g, a).0)
            .collect()
    }

    /// Tail-reduce each generator so that its support below the degree bound
    /// avoids the diagram. Tails above the bound are left untouched; the
    /// bound is recorded. Generators stay exact elements of the ideal.
    pub fn distinguish(&self, bound: u64) -> StandardBasis {
        let mut gens = self.generators.clone();
        let initials: Vec<ExponentVector> = gens
            .iter()
            .map(|g| g.initial_exponent().unwrap().clone())
            .collect();
        for i in 0..gens.len() {
            loop {
                let bad = gens[i]
                    .terms()
                    .find(|(e, _)| {
                        e.total() <= bound
                            && **e != initials[i]
                            && initials.iter().any(|v| v.divides(e))
                    })
                    .map(|(e, c)| (e.clone(), c.clone()));
                let (e, c) = match bad {
                    Some(t) => t,
                    None => break,
                };
                let j = initials.iter().position(|v| v.divides(&e)).unwrap();
                let g_j = gens[j].clone();
                gens[i] = gens[i].sub_mul_monomial(&c, &e.sub(&initials[j]), &g_j);
            }
        }
        StandardBasis {
            generators: gens,
            diagram: self.diagram.clone(),
            distinguished: true,
            reduction_bound: Some(bound),
        }
    }
}

fn dims_checked(polys: &[Polynomial]) -> Result<usize> {
    let mut vars = None;
    for p in polys {
        match vars {
            None => vars = Some(p.vars()),
            Some(v) if v == p.vars() => {}
            Some(v) => return Err(Error::DimensionMismatch(p.vars(), v)),
        }
    }
    Ok(vars.unwrap_or(0))
}

/// Mora weak normal form: a remainder h with u*f = q*G + h for a unit u of
/// the local ring, whose initial exponent lies outside the cone of the
/// initial exponents of G. Returns zero exactly when f is in the ideal
/// locally (for G a standard basis).
pub fn weak_normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut h = f.clone();
    let mut reducers: Vec<Polynomial> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    loop {
        if h.is_zero() {
            return h;
        }
        let nu_h = h.initial_exponent().unwrap().clone();
        // Divisor of minimal ecart, first found on ties, for determinism.
        let mut chosen: Option<usize> = None;
        for (idx, g) in reducers.iter().enumerate() {
            let nu_g = g.initial_exponent().unwrap();
            if !nu_g.divides(&nu_h) {
                continue;
            }
            match chosen {
                None => chosen = Some(idx),
                Some(c) => {
                    if g.ecart() < reducers[c].ecart() {
                        chosen = Some(idx);
                    }
                }
            }
        }
        let idx = match chosen {
            Some(i) => i,
            None => return h,
        };
        if reducers[idx].ecart() > h.ecart() {
            reducers.push(h.clone());
        }
        let g = &reducers[idx];
        let (c_h, _) = h.initial_monomial().unwrap();
        let (c_g, nu_g) = g.initial_monomial().unwrap();
        let factor = c_h.div(&c_g).expect("initial coefficients are nonzero");
        h = h.sub_mul_monomial(&factor, &nu_h.sub(&nu_g), g);
    }
}

/// Full local normal form: repeatedly peel the (irreducible) initial term of
/// a Mora weak normal form into the remainder and continue with the tail.
/// No term of the result is divisible by any initial monomial of G.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut remainder = Polynomial::zero(f.field(), f.vars());
    let mut work = f.clone();
    loop {
        work = weak_normal_form(&work, basis);
        if work.is_zero() {
            return remainder;
        }
        let (c, e) = work.initial_monomial().unwrap();
        let head = Polynomial::monomial(f.field(), e, c);
        remainder = remainder.add(&head);
        work = work.sub(&head);
    }
}

/// Complete generators to a standard basis by S-pair saturation with the
/// Mora normal form. Zero generators are dropped; a unit in the ideal gives
/// the basis {1} with the full diagram.
pub fn standard_basis(generators: &[Polynomial]) -> Result<StandardBasis> {
    let vars = dims_checked(generators)?;
    let field = generators
        .first()
        .map(|g| g.field())
        .unwrap_or(crate::algebra::FieldDesc::Rationals);
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in generators {
        if g.is_zero() {
            continue;
        }
        if g.order() == Some(0) {
            return unit_ideal(field, vars);
        }
        basis.push(g.monic()?);
    }
    if basis.is_empty() {
        return Ok(StandardBasis {
            generators: Vec::new(),
            diagram: Staircase::empty(vars),
            distinguished: false,
            reduction_bound: None,
        });
    }

    // Pairs processed in increasing |join| of initial exponents.
    type PairQueue = BTreeSet<(u64, ExponentVector, usize, usize)>;
    let mut pairs: PairQueue = BTreeSet::new();
    let enqueue = |pairs: &mut PairQueue, basis: &[Polynomial], i: usize, j: usize| {
        let a = basis[i].initial_exponent().unwrap();
        let b = basis[j].initial_exponent().unwrap();
        let join = a.join(b);
        pairs.insert((join.total(), join, i, j));
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            enqueue(&mut pairs, &basis, i, j);
        }
    }

    while let Some(pair) = pairs.iter().next().cloned() {
        pairs.remove(&pair);
        let (_, join, i, j) = pair;
        let fi = &basis[i];
        let fj = &basis[j];
        let nu_i = fi.initial_exponent()?.clone();
        let nu_j = fj.initial_exponent()?.clone();
        let one = field.one();
        let s = fi
            .mul_monomial(&one, &join.sub(&nu_i))
            .sub(&fj.mul_monomial(&one, &join.sub(&nu_j)));
        let h = weak_normal_form(&s, &basis);
        if h.is_zero() {
            continue;
        }
        if h.order() == Some(0) {
            return unit_ideal(field, vars);
        }
        let h = h.monic()?;
        let new_idx = basis.len();
        basis.push(h);
        for k in 0..new_idx {
            enqueue(&mut pairs, &basis, k, new_idx);
        }
    }

    // The diagram; keep one generator per vertex.
    let diagram = Staircase::minimalize(
        vars,
        basis
            .iter()
            .map(|g| g.initial_exponent().cloned())
            .collect::<Result<Vec<_>>>()?,
    )?;
    let mut kept: Vec<Polynomial> = Vec::new();
    for v in diagram.vertices() {
        let g = basis
            .iter()
            .find(|g| g.initial_exponent().unwrap() == v)
            .expect("vertex has a witness generator");
        kept.push(g.clone());
    }
    Ok(StandardBasis {
        generators: kept,
        diagram,
        distinguished: false,
        reduction_bound: None,
    })
}

fn unit_ideal(field: crate::algebra::FieldDesc, vars: usize) -> Result<StandardBasis> {
    Ok(StandardBasis {
        generators: vec![Polynomial::one(field, vars)],
        diagram: Staircase::full(vars),
        distinguished: true,
        reduction_bound: None,
    })
}

/// H_I(k) = dim_K K[[X]]/(I + M^{k+1}) by exact linear algebra: the span of
/// the truncated monomial multiples of the generators inside the space of
/// polynomials of degree <= k. Independent of the staircase route.
pub fn hilbert_samuel_direct(generators: &[Polynomial], k: u64) -> Result<u64> {
    let vars = dims_checked(generators)?;
    let field = generators
        .first()
        .map(|g| g.field())
        .unwrap_or(crate::algebra::FieldDesc::Rationals);
    let monomials = monomials_up_to(vars, k);
    let index: std::collections::BTreeMap<&ExponentVector, usize> =
        monomials.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for g in generators {
        let ord = match g.order() {
            None => continue,
            Some(o) => o,
        };
        if ord > k {
            continue;
        }
        for mu in monomials_up_to(vars, k - ord) {
            let prod = g.mul_monomial(&field.one(), &mu);
            let mut row = vec![field.zero(); monomials.len()];
            let mut nonzero = false;
            for (e, c) in prod.terms() {
                if let Some(&i) = index.get(e) {
                    row[i] = c.clone();
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let rank = row_rank(&mut rows);
    Ok(monomials.len() as u64 - rank as u64)
}

fn monomials_up_to(vars: usize, k: u64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; vars];
    fn rec(out: &mut Vec<ExponentVector>, cur: &mut Vec<u32>, pos: usize, left: u64) {
        if pos == cur.len() {
            out.push(ExponentVector(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u32;
            rec(out, cur, pos + 1, left - e);
        }
        cur[pos] = 0;
    }
    if vars == 0 {
        return vec![ExponentVector(Vec::new())];
    }
    rec(&mut out, &mut cur, 0, k);
    out
}

fn row_rank(rows: &mut [Vec<FieldElement>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => continue,
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("pivot nonzero");
        for entry in rows[rank][col..].iter_mut() {
            *entry = entry.mul(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let pivot_row: Vec<FieldElement> = rows[rank][col..].to_vec();
                for (entry, p) in rows[r][col..].iter_mut().zip(&pivot_row) {
                    *entry = entry.sub(&p.mul(&factor));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{parse_polynomial_list, VarTable};
    use crate::algebra::FieldDesc;

    fn q() -> FieldDesc {
        FieldDesc::Rationals
    }

    fn ideal(src: &str, vars: &[&str]) -> Vec<Polynomial> {
        parse_polynomial_list(src, &VarTable::new(vars), q()).unwrap()
    }

    fn vertices(sb: &StandardBasis) -> Vec<Vec<u32>> {
        sb.diagram().vertices().iter().map(|v| v.0.clone()).collect()
    }

    #[test]
    fn normal_form_examples() {
        let g = ideal("x", &["t", "x"]);
        let f = ideal("x^2", &["t", "x"]).pop().unwrap();
        assert!(normal_form(&f, &g).is_zero());
        let f2 = ideal("x^2 + t", &["t", "x"]).pop().unwrap();
        let r = normal_form(&f2, &g);
        assert_eq!(r, ideal("t", &["t", "x"]).pop().unwrap());
        // No initial monomial of {x^2, xy + t^3} divides (1,1,0).
        let g2 = ideal("x^2; x*y + t^3", &["t", "x", "y"]);
        let f3 = ideal("t*x", &["t", "x", "y"]).pop().unwrap();
        assert_eq!(normal_form(&f3, &g2), f3);
    }

    #[test]
    fn mora_handles_local_nontermination() {
        // x is in (x - x^2) locally: x - x^2 = x(1 - x).
        let g = ideal("x - x^2", &["x"]);
        let f = ideal("x", &["x"]).pop().unwrap();
        assert!(weak_normal_form(&f, &g).is_zero());
    }

    #[test]
    fn principal_ideal_basis_is_generator() {
        let sb = standard_basis(&ideal("x^2 - y^3", &["t", "x", "y"])).unwrap();
        assert_eq!(vertices(&sb), vec![vec![0, 2, 0]]);
        assert_eq!(sb.generators().len(), 1);
    }

    #[test]
    fn coordinate_ideal() {
        let sb = standard_basis(&ideal("x; y", &["t", "x", "y"])).unwrap();
        // Vertices {(0,1,0), (0,0,1)}, stored sorted.
        assert_eq!(vertices(&sb), vec![vec![0, 0, 1], vec![0, 1, 0]]);
    }

    #[test]
    fn worked_ideal_diagram() {
        let sb = standard_basis(&ideal("x^2; x*y + t^3", &["t", "x", "y"])).unwrap();
        // Vertices {(0,2,0), (0,1,1), (3,1,0), (6,0,0)}, stored sorted.
        assert_eq!(
            vertices(&sb),
            vec![vec![0, 1, 1], vec![0, 2, 0], vec![3, 1, 0], vec![6, 0, 0]]
        );
    }

    #[test]
    fn unit_ideal_and_zero_ideal() {
        let sb = standard_basis(&ideal("1 + x", &["t", "x"])).unwrap();
        assert!(sb.diagram().is_full());
        assert_eq!(sb.generators().len(), 1);
        assert!(sb.generators()[0].order() == Some(0));

        let sb0 = standard_basis(&[]).unwrap();
        assert!(sb0.diagram().is_empty());
    }

    #[test]
    fn hilbert_samuel_direct_examples() {
        let gx = ideal("x", &["x"]);
        assert_eq!(hilbert_samuel_direct(&gx, 3).unwrap(), 1);
        let cusp = ideal("x^2 - y^3", &["t", "x", "y"]);
        assert_eq!(hilbert_samuel_direct(&cusp, 1).unwrap(), 4);
        let unit = ideal("1", &["t", "x", "y"]);
        for k in 0..4 {
            assert_eq!(hilbert_samuel_direct(&unit, k).unwrap(), 0);
        }
    }

    #[test]
    fn strict_transform_examples() {
        let sb = standard_basis(&ideal("x^2 - y^3", &["t", "x", "y"])).unwrap();
        let zero = [q().zero(), q().zero()];
        let t1 = sb.strict_transform_ideal(&zero);
        assert_eq!(t1, ideal("x^2 - t*y^3", &["t", "x", "y"]));

        let sbx = standard_basis(&ideal("x", &["t", "x"])).unwrap();
        let ta = sbx.strict_transform_ideal(&[q().from_i64(5)]);
        assert_eq!(ta, ideal("5 + x", &["t", "x"]));

        let sb1 = standard_basis(&ideal("1", &["t", "x"])).unwrap();
        assert_eq!(sb1.strict_transform_ideal(&[q().zero()]), ideal("1", &["t", "x"]));
    }

    #[test]
    fn input_generators_reduce_to_zero() {
        let gens = ideal("x^2; x*y + t^3", &["t", "x", "y"]);
        let sb = standard_basis(&gens).unwrap();
        for g in &gens {
            assert!(normal_form(g, sb.generators()).is_zero());
        }
    }

    #[test]
    fn distinguished_reduction_respects_bound() {
        let gens = ideal("x^2; x*y + t^3 + x^2*y", &["t", "x", "y"]);
        let sb = standard_basis(&gens).unwrap();
        let d = sb.distinguish(8);
        assert!(d.is_distinguished());
        assert_eq!(d.reduction_bound(), Some(8));
        for g in d.generators() {
            let nu = g.initial_exponent().unwrap().clone();
            for (e, _) in g.terms() {
                if *e != nu && e.total() <= 8 {
                    assert!(!d.diagram().contains(e), "term {e} inside diagram");
                }
            }
            // Still in the ideal.
            assert!(normal_form(g, sb.generators()).is_zero());
        }
    }
}
