//! The Nash sequences of a germ along a truncated arc: iterate strict
//! transforms through the blowup charts (t, X) -> (t, t(A_i + X)) and record
//! the multiplicity, Hilbert-Samuel function and diagram of initial exponents
//! of every step, together with the generic-value and smooth-stabilization
//! bounds.

use std::cmp::Ordering;

use crate::algebra::{strict_transform, Arc, FieldElement, Polynomial};
use crate::error::{Error, Result};
use crate::staircase::{HilbertData, Staircase};
use crate::standard_basis::{standard_basis, StandardBasis};

/// A polynomial-defined germ at the origin of K^n.
#[derive(Debug, Clone)]
pub struct GermIdeal {
    n: usize,
    generators: Vec<Polynomial>,
}

impl GermIdeal {
    pub fn new(n: usize, generators: Vec<Polynomial>) -> Result<GermIdeal> {
        if generators.is_empty() {
            return Err(Error::BadArgument("germ needs at least one generator".into()));
        }
        for g in &generators {
            if g.vars() != n {
                return Err(Error::DimensionMismatch(g.vars(), n));
            }
            if g.is_zero() {
                return Err(Error::BadArgument("zero generator".into()));
            }
            if g.order() == Some(0) {
                return Err(Error::BadArgument(
                    "germ generators must vanish at the origin".into(),
                ));
            }
        }
        Ok(GermIdeal { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_hypersurface(&self) -> bool {
        self.generators.len() == 1
    }
}

/// One step of the transform chain.
#[derive(Debug, Clone)]
pub struct NashStep {
    /// Generators of the step ideal in K[t, X].
    pub generators: Vec<Polynomial>,
    pub diagram: Staircase,
    pub hilbert: HilbertData,
    pub multiplicity: u64,
    /// Multiplicity one, i.e. the step germ is smooth.
    pub smooth: bool,
}

/// The three Nash sequences along an arc, up to the arc's truncation order.
#[derive(Debug, Clone)]
pub struct NashReport {
    pub n: usize,
    pub steps: Vec<NashStep>,
    /// First index from which the diagram sequence is constant through the
    /// last computed step; empirical, not certified final for general germs.
    pub stabilized_at: Option<usize>,
    /// First index from which every remaining step is smooth.
    pub smooth_from: Option<usize>,
}

impl NashReport {
    pub fn multiplicities(&self) -> Vec<u64> {
        self.steps.iter().map(|s| s.multiplicity).collect()
    }

    pub fn diagrams(&self) -> Vec<&Staircase> {
        self.steps.iter().map(|s| &s.diagram).collect()
    }
}

/// The Nash pipeline: step 0 views the germ ideal in K[t, X] with t free;
/// step j is the strict transform of a standard basis of step j-1 through the
/// chart given by A_j. Principal ideals bypass basis completion entirely.
pub fn nash_sequences(germ: &GermIdeal, arc: &Arc) -> Result<NashReport> {
    if arc.n() != germ.n {
        return Err(Error::DimensionMismatch(arc.n(), germ.n));
    }
    if !arc.is_centered() {
        return Err(Error::BadArgument("arc must be centered at the origin".into()));
    }
    let steps = arc.order();
    let mut current: Vec<Polynomial> = germ.generators.iter().map(|g| g.lift_t()).collect();
    let mut out: Vec<NashStep> = Vec::with_capacity(steps + 1);
    for j in 0..=steps {
        let analyzed = analyze_step(&current)?;
        if j < steps {
            current = match &analyzed.1 {
                StepBasis::Principal(f) => {
                    vec![strict_transform(f, arc.coeff(j + 1)).0]
                }
                StepBasis::Completed(sb) => sb.strict_transform_ideal(arc.coeff(j + 1)),
            };
        }
        out.push(analyzed.0);
    }

    let stabilized_at = stabilization_index(&out);
    let smooth_from = (0..out.len())
        .find(|&j| out[j..].iter().all(|s| s.smooth));
    Ok(NashReport {
        n: germ.n,
        steps: out,
        stabilized_at,
        smooth_from,
    })
}

enum StepBasis {
    Principal(Polynomial),
    Completed(StandardBasis),
}

fn analyze_step(generators: &[Polynomial]) -> Result<(NashStep, StepBasis)> {
    let vars = generators[0].vars();
    let (diagram, basis) = if generators.len() == 1 {
        // Hypersurface fast path: a principal ideal's diagram is the single
        // vertex nu(f), by additivity of the initial exponent.
        let f = &generators[0];
        let nu = f.initial_exponent()?.clone();
        (
            Staircase::minimalize(vars, [nu])?,
            StepBasis::Principal(f.clone()),
        )
    } else {
        let sb = standard_basis(generators)?;
        (sb.diagram().clone(), StepBasis::Completed(sb))
    };
    let hilbert = diagram.hilbert_samuel();
    let multiplicity = hilbert.multiplicity;
    let step = NashStep {
        generators: generators.to_vec(),
        diagram,
        hilbert,
        multiplicity,
        smooth: multiplicity == 1,
    };
    Ok((step, basis))
}

fn stabilization_index(steps: &[NashStep]) -> Option<usize> {
    if steps.len() < 2 {
        return None;
    }
    let last = &steps[steps.len() - 1].diagram;
    let mut j = steps.len() - 1;
    while j > 0 && steps[j - 1].diagram == *last {
        j -= 1;
    }
    if j == steps.len() - 1 {
        None
    } else {
        Some(j)
    }
}

/// Lexicographic comparison of the diagram sequences of two reports.
pub fn compare_sequences(a: &NashReport, b: &NashReport) -> Result<Ordering> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    if a.steps.len() != b.steps.len() {
        return Err(Error::BadArgument(format!(
            "truncation orders differ: {} vs {}",
            a.steps.len() - 1,
            b.steps.len() - 1
        )));
    }
    for (x, y) in a.steps.iter().zip(&b.steps) {
        match x.diagram.compare(&y.diagram)? {
            Ordering::Equal => continue,
            ord => return Ok(ord),
        }
    }
    Ok(Ordering::Equal)
}

/// Generic multiplicity of a hypersurface along an arc, with its witness
/// order: the smallest k such that a partial derivative of order <= k
/// composes to a provably nonzero series at the given precision, and
/// D = ord of the composed derivative ideal at that level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericMultiplicity {
    pub multiplicity: u64,
    pub bound_d: u64,
}

pub fn generic_multiplicity_along_arc(
    f: &Polynomial,
    arc: &Arc,
    precision: u32,
) -> Result<GenericMultiplicity> {
    if f.vars() != arc.n() {
        return Err(Error::DimensionMismatch(f.vars(), arc.n()));
    }
    if f.is_zero() {
        return Err(Error::BadArgument("zero polynomial".into()));
    }
    let deg = f.degree().unwrap_or(0);
    let mut best: Option<u64> = None;
    for k in 0..=deg {
        for idx in multi_indices(f.vars(), k) {
            let df = f.derivative_multi(&idx);
            if df.is_zero() {
                continue;
            }
            // Compositions along a truncated arc are exact polynomials.
            if let Some(ord) = arc.compose_exact(&df)?.order() {
                best = Some(best.map_or(ord, |b: u64| b.min(ord)));
            }
        }
        if let Some(d) = best {
            // A witness invisible below the requested precision cannot be
            // told apart from a vanishing composition.
            if d > precision as u64 {
                return Err(Error::UndeterminedAtPrecision(precision));
            }
            return Ok(GenericMultiplicity {
                multiplicity: k,
                bound_d: d,
            });
        }
    }
    Err(Error::UndeterminedAtPrecision(precision))
}

/// Result of the Remark-4.3 style bound: order of the composed ideal
/// generated by the germ and the (n-d)-minors of Jacobians of (n-d)-tuples
/// of generators. Unknown when every composition vanishes at the precision,
/// which happens exactly when the truncated arc cannot be told apart from an
/// arc inside the singular locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothBound {
    Known(u64),
    UnknownAtPrecision,
}

pub fn smooth_stabilization_bound(
    germ: &GermIdeal,
    arc: &Arc,
    dim: usize,
    precision: u32,
) -> Result<SmoothBound> {
    if arc.n() != germ.n {
        return Err(Error::DimensionMismatch(arc.n(), germ.n));
    }
    if dim >= germ.n {
        return Err(Error::BadArgument(
            "germ dimension must be less than the ambient dimension".into(),
        ));
    }
    let p = germ.n - dim;
    let mut elements: Vec<Polynomial> = germ.generators.clone();
    for tuple in combinations(germ.generators.len(), p) {
        for vars in combinations(germ.n, p) {
            let minor = jacobian_minor(&germ.generators, &tuple, &vars);
            if !minor.is_zero() {
                elements.push(minor);
            }
        }
    }
    let mut best: Option<u64> = None;
    for g in &elements {
        if let Some(ord) = arc.compose_exact(g)?.order() {
            best = Some(best.map_or(ord, |b: u64| b.min(ord)));
        }
    }
    Ok(match best {
        Some(d) if d <= precision as u64 => SmoothBound::Known(d),
        _ => SmoothBound::UnknownAtPrecision,
    })
}

fn jacobian_minor(gens: &[Polynomial], rows: &[usize], cols: &[usize]) -> Polynomial {
    let p = rows.len();
    let field = gens[0].field();
    let vars = gens[0].vars();
    let matrix: Vec<Vec<Polynomial>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| gens[i].derivative(j)).collect())
        .collect();
    determinant(&matrix, p, field, vars)
}

fn determinant(
    m: &[Vec<Polynomial>],
    size: usize,
    field: crate::algebra::FieldDesc,
    vars: usize,
) -> Polynomial {
    if size == 0 {
        return Polynomial::one(field, vars);
    }
    if size == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(field, vars);
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sub = determinant(&minor, size - 1, field, vars);
        let term = entry.mul(&sub);
        acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, n: usize, k: usize) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(out, cur, i + 1, n, k);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 0, n, k);
    out
}

fn multi_indices(vars: usize, total: u64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; vars];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u64) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u32;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u32;
            rec(out, cur, pos + 1, left - e);
        }
        cur[pos] = 0;
    }
    if vars == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, total);
    out
}

/// Random truncated arcs on a rational line s -> base + s * dir, used by the
/// semicontinuity sampling check.
pub fn arc_on_line(
    base: &Arc,
    dir: &Arc,
    s: &FieldElement,
) -> Result<Arc> {
    if base.n() != dir.n() || base.order() != dir.order() {
        return Err(Error::DimensionMismatch(base.n(), dir.n()));
    }
    let coeffs = base
        .coeffs()
        .iter()
        .zip(dir.coeffs())
        .map(|(b, d)| {
            b.iter()
                .zip(d)
                .map(|(x, y)| x.add(&y.mul(s)))
                .collect()
        })
        .collect();
    Arc::new(base.field(), base.n(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{parse_arc, parse_polynomial, VarTable};
    use crate::algebra::FieldDesc;

    fn q() -> FieldDesc {
        FieldDesc::Rationals
    }

    fn germ(src: &str, vars: &[&str]) -> GermIdeal {
        let t = VarTable::new(vars);
        GermIdeal::new(vars.len(), vec![parse_polynomial(src, &t, q()).unwrap()]).unwrap()
    }

    fn arc(src: &str) -> Arc {
        parse_arc(src, q()).unwrap()
    }

    #[test]
    fn cusp_multiplicity_sequence() {
        let g = germ("x^2 - y^3", &["x", "y"]);
        let r = nash_sequences(&g, &arc("(t^3, t^2)")).unwrap();
        assert_eq!(r.multiplicities(), vec![2, 2, 2, 1]);
        assert_eq!(
            r.steps[3].diagram.vertices()[0].0,
            vec![0, 1, 0]
        );
        // Worked intermediate transforms.
        let t = VarTable::new(&["t", "x", "y"]);
        let expect =
            |s: &str| parse_polynomial(s, &t, q()).unwrap();
        assert_eq!(r.steps[1].generators[0], expect("x^2 - t*y^3"));
        assert_eq!(r.steps[2].generators[0], expect("x^2 - t^2*(1+y)^3"));
        assert_eq!(r.steps[3].generators[0], expect("(1+x)^2 - (1+t*y)^3"));
    }

    #[test]
    fn whitney_umbrella_is_constant() {
        let g = germ("z1^2 - z2*z3^2", &["z1", "z2", "z3"]);
        let r = nash_sequences(&g, &arc("(0, t, 0)")).unwrap();
        // Arc of order 1 extended to 3 by zero coefficients.
        let a3 = arc("(0, t, 0)").extend(vec![
            vec![q().zero(); 3],
            vec![q().zero(); 3],
        ]).unwrap();
        let r3 = nash_sequences(&g, &a3).unwrap();
        assert_eq!(r.multiplicities(), vec![2, 2]);
        assert_eq!(r3.multiplicities(), vec![2, 2, 2, 2]);
        assert_eq!(r3.smooth_from, None);
    }

    #[test]
    fn smooth_germ_stays_smooth() {
        let g = germ("x", &["x", "y"]);
        let a = arc("(0, t + t^2)");
        let r = nash_sequences(&g, &a.truncate(2)).unwrap();
        assert_eq!(r.multiplicities(), vec![1, 1, 1]);
        assert_eq!(r.smooth_from, Some(0));
    }

    #[test]
    fn arc_order_zero_yields_only_step_zero() {
        let g = germ("x^2 - y^3", &["x", "y"]);
        let a = arc("(t, t)").truncate(0);
        let r = nash_sequences(&g, &a).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.stabilized_at, None);
    }

    #[test]
    fn dimension_mismatch() {
        let g = germ("x^2 - y^3", &["x", "y"]);
        assert!(matches!(
            nash_sequences(&g, &arc("(t, t, t)")),
            Err(Error::DimensionMismatch(3, 2))
        ));
    }

    #[test]
    fn germ_generators_must_vanish_at_the_origin() {
        let t = VarTable::new(&["x", "y"]);
        let unit = parse_polynomial("1 + x", &t, q()).unwrap();
        assert!(GermIdeal::new(2, vec![unit]).is_err());
        let zero = Polynomial::zero(q(), 2);
        assert!(GermIdeal::new(2, vec![zero]).is_err());
    }

    #[test]
    fn generic_multiplicity_examples() {
        let f = |s: &str, v: &[&str]| parse_polynomial(s, &VarTable::new(v), q()).unwrap();
        let cusp = f("x^2 - y^3", &["x", "y"]);
        let g = generic_multiplicity_along_arc(&cusp, &arc("(t^3, t^2)"), 40).unwrap();
        assert_eq!(g, GenericMultiplicity { multiplicity: 1, bound_d: 3 });

        let umbrella = f("z1^2 - z2*z3^2", &["z1", "z2", "z3"]);
        let g2 = generic_multiplicity_along_arc(&umbrella, &arc("(0, t, 0)"), 40).unwrap();
        assert_eq!(g2.multiplicity, 2);
        assert_eq!(g2.bound_d, 0);

        // Smooth hyperplane, arc on it: the first partial is the constant 1.
        let hyper = f("x", &["x", "y"]);
        let g3 = generic_multiplicity_along_arc(&hyper, &arc("(0, t)"), 40).unwrap();
        assert_eq!(g3.multiplicity, 1);
        assert_eq!(g3.bound_d, 0);
        // An arc off the germ has generic multiplicity zero.
        let g4 = generic_multiplicity_along_arc(&hyper, &arc("(t, 0)"), 40).unwrap();
        assert_eq!(g4.multiplicity, 0);
    }

    #[test]
    fn smooth_bound_examples() {
        let g = germ("x^2 - y^3", &["x", "y"]);
        let b = smooth_stabilization_bound(&g, &arc("(t^3, t^2)"), 1, 40).unwrap();
        assert_eq!(b, SmoothBound::Known(3));
        // Report agrees: step 3 is smooth.
        let r = nash_sequences(&g, &arc("(t^3, t^2)")).unwrap();
        assert!(r.steps[3].smooth);

        let plane = germ("x", &["x", "y"]);
        let b2 = smooth_stabilization_bound(&plane, &arc("(0, t)"), 1, 40).unwrap();
        assert_eq!(b2, SmoothBound::Known(0));

        let umb = germ("z1^2 - z2*z3^2", &["z1", "z2", "z3"]);
        let b3 = smooth_stabilization_bound(&umb, &arc("(0, t, 0)"), 2, 40).unwrap();
        assert_eq!(b3, SmoothBound::UnknownAtPrecision);
    }

    #[test]
    fn compare_sequences_examples() {
        let g = germ("x^2 - y^3", &["x", "y"]);
        let a = arc("(t^3, t^2)");
        let r1 = nash_sequences(&g, &a).unwrap();
        assert_eq!(compare_sequences(&r1, &r1).unwrap(), Ordering::Equal);

        // The perturbed arc (t^3, t^2 + t^3) leaves the cusp; through order 3
        // the chains agree, and the first diverging step (step 4, where the
        // perturbed chain hits a unit) decides the comparison.
        let b = arc("(t^3, t^2 + t^3)");
        let r2 = nash_sequences(&g, &b).unwrap();
        assert_eq!(compare_sequences(&r1, &r2).unwrap(), Ordering::Equal);
        let pad = |x: &Arc| x.extend(vec![vec![q().zero(); 2]]).unwrap();
        let r1x = nash_sequences(&g, &pad(&a)).unwrap();
        let r2x = nash_sequences(&g, &pad(&b)).unwrap();
        assert_eq!(compare_sequences(&r1x, &r2x).unwrap(), Ordering::Greater);

        let short = nash_sequences(&g, &a.truncate(2)).unwrap();
        assert!(compare_sequences(&r1, &short).is_err());
    }

    #[test]
    fn truncation_dependence() {
        // Steps up to i do not depend on coefficients beyond i.
        let g = germ("x^2 - y^3", &["x", "y"]);
        let a = arc("(t^3, t^2)");
        let b = arc("(t^3 + 7*t^4, t^2 - 5*t^4)");
        let ra = nash_sequences(&g, &a.truncate(3)).unwrap();
        let rb = nash_sequences(&g, &b.truncate(3)).unwrap();
        assert_eq!(compare_sequences(&ra, &rb).unwrap(), Ordering::Equal);
        assert_eq!(ra.multiplicities(), rb.multiplicities());
    }

    #[test]
    fn unit_step_for_arcs_off_the_germ() {
        // Arc (t, t) is not on the cusp: the transform chain hits a unit and
        // the multiplicity drops to zero with the full diagram.
        let g = germ("x^2 - y^3", &["x", "y"]);
        let a = arc("(t, t)").extend(vec![vec![q().zero(); 2]]).unwrap();
        let r = nash_sequences(&g, &a).unwrap();
        let last = r.steps.last().unwrap();
        assert_eq!(last.multiplicity, 0);
        assert!(last.diagram.is_full());
        assert!(last.hilbert.values.iter().all(|&v| v == 0));
    }
}
