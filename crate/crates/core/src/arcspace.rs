//! The ultrametric on arcs, balls, and the exact minimum of ord(f o theta)
//! over a ball of truncated arcs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{strict_transform, Arc, FieldElement, Polynomial};
use crate::error::{Error, Result};

/// Distance between two arcs, reported through the exact order rather than
/// the real number e^{-ord}: the metric topology only depends on the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ArcDistance {
    /// Arcs at distinct base points are at distance 1.
    DistinctBasePoints,
    /// Distance e^{-ord}.
    Order { ord: u64 },
    /// Indistinguishable at the common truncation order.
    InfiniteUpToPrecision { precision: u64 },
}

/// ord of the difference of two arcs, compared up to the smaller truncation
/// order. The order of a coordinate tuple is the minimum coordinate order.
pub fn arc_distance(a: &Arc, b: &Arc) -> Result<ArcDistance> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    if a.base() != b.base() {
        return Ok(ArcDistance::DistinctBasePoints);
    }
    let common = a.order().min(b.order());
    for k in 1..=common {
        if a.coeff(k) != b.coeff(k) {
            return Ok(ArcDistance::Order { ord: k as u64 });
        }
    }
    Ok(ArcDistance::InfiniteUpToPrecision {
        precision: common as u64,
    })
}

/// The chain f_0, .., f_steps of strict transforms of a germ polynomial along
/// an arc; f_0 is f viewed in K[t, X].
pub fn transform_chain(f: &Polynomial, arc: &Arc, steps: usize) -> Result<Vec<Polynomial>> {
    if f.vars() != arc.n() {
        return Err(Error::DimensionMismatch(f.vars(), arc.n()));
    }
    if arc.order() < steps {
        return Err(Error::BadArgument(format!(
            "arc truncated at order {} but {} transform steps requested",
            arc.order(),
            steps
        )));
    }
    let mut chain = Vec::with_capacity(steps + 1);
    let mut g = f.lift_t();
    chain.push(g.clone());
    for j in 1..=steps {
        g = strict_transform(&g, arc.coeff(j)).0;
        chain.push(g.clone());
    }
    Ok(chain)
}

/// Exact minimum of ord(f o theta) over the ball B_i(phi) = {theta :
/// ord(theta - phi) > i}: the sum of the orders of the strict transforms
/// f_0, .., f_i along the arc. Always lies in [m_0(f), m_0(f)(i+1)].
pub fn min_order_on_ball(f: &Polynomial, arc: &Arc, i: usize) -> Result<u64> {
    Ok(ball_order_profile(f, arc, i)?.iter().sum())
}

/// The per-step orders m_0(f_0), .., m_0(f_i) whose sum is the ball minimum.
pub fn ball_order_profile(f: &Polynomial, arc: &Arc, i: usize) -> Result<Vec<u64>> {
    if f.is_zero() {
        return Err(Error::BadArgument("zero polynomial".into()));
    }
    let chain = transform_chain(f, arc, i)?;
    Ok(chain
        .iter()
        .map(|g| g.order().expect("transforms of a nonzero polynomial are nonzero"))
        .collect())
}

/// ord(f o theta) for `samples` random arcs theta = phi^i + t^{i+1} * c with
/// a random linear tail c in K^n; deterministic under the seed. `None` marks
/// a sample that landed exactly on the zero locus.
pub fn sample_ball_orders(
    f: &Polynomial,
    arc: &Arc,
    i: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<Option<u64>>> {
    if samples == 0 {
        return Err(Error::BadArgument("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let dir: Vec<FieldElement> = (0..arc.n())
            .map(|_| f.field().from_i64(rng.gen_range(-9..=9)))
            .collect();
        out.push(ball_sample_order(f, arc, i, &dir)?);
    }
    Ok(out)
}

/// ord(f o theta) for theta = phi^i + t^{i+1} * dir.
pub fn ball_sample_order(
    f: &Polynomial,
    arc: &Arc,
    i: usize,
    dir: &[FieldElement],
) -> Result<Option<u64>> {
    if f.vars() != arc.n() {
        return Err(Error::DimensionMismatch(f.vars(), arc.n()));
    }
    let theta = arc.truncate(i).extend(vec![dir.to_vec()])?;
    Ok(theta.compose_exact(f)?.order())
}

/// A direction off the zeros of the initial form of the i-th transform; the
/// sample there attains the ball minimum. Deterministic under the seed.
pub fn attaining_direction(
    f: &Polynomial,
    arc: &Arc,
    i: usize,
    seed: u64,
) -> Result<Vec<FieldElement>> {
    let chain = transform_chain(f, arc, i)?;
    let last = chain.last().unwrap();
    let init = last.initial_form();
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4096 {
        let dir: Vec<FieldElement> = (0..arc.n())
            .map(|_| field.from_i64(rng.gen_range(-9..=9)))
            .collect();
        // Evaluate the initial form at (1, dir).
        let mut point = Vec::with_capacity(arc.n() + 1);
        point.push(field.one());
        point.extend(dir.iter().cloned());
        if !init.evaluate(&point).is_zero() {
            return Ok(dir);
        }
    }
    Err(Error::BadArgument(
        "no generic direction found; initial form vanishes on the sample grid".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{parse_arc, parse_polynomial, VarTable};
    use crate::algebra::FieldDesc;

    fn q() -> FieldDesc {
        FieldDesc::Rationals
    }

    fn germ(src: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(src, &VarTable::new(vars), q()).unwrap()
    }

    #[test]
    fn distance_examples() {
        let a = parse_arc("(t, 0)", q()).unwrap();
        assert_eq!(
            arc_distance(&a, &a).unwrap(),
            ArcDistance::InfiniteUpToPrecision { precision: 1 }
        );
        let b = parse_arc("(t, t^3)", q()).unwrap();
        // The first arc is exact, so pad it to the order of the second.
        let padded = a.extend(vec![vec![q().zero(); 2]; 2]).unwrap();
        assert_eq!(arc_distance(&padded, &b).unwrap(), ArcDistance::Order { ord: 3 });
        let off = parse_arc("(1 + t, 0)", q()).unwrap();
        assert_eq!(
            arc_distance(&a, &off).unwrap(),
            ArcDistance::DistinctBasePoints
        );
    }

    #[test]
    fn ultrametric_inequality_on_random_arcs() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ord_of = |d: ArcDistance| match d {
            ArcDistance::Order { ord } => ord,
            ArcDistance::InfiniteUpToPrecision { precision } => precision + 1,
            ArcDistance::DistinctBasePoints => 0,
        };
        for _ in 0..60 {
            let n = 2;
            let order = 4;
            let mut mk = || {
                let coeffs = (0..order)
                    .map(|_| (0..n).map(|_| q().from_i64(rng.gen_range(-1..=1))).collect())
                    .collect();
                Arc::new(q(), n, coeffs).unwrap()
            };
            let (a, b, c) = (mk(), mk(), mk());
            let ab = ord_of(arc_distance(&a, &b).unwrap());
            let ac = ord_of(arc_distance(&a, &c).unwrap());
            let cb = ord_of(arc_distance(&c, &b).unwrap());
            assert!(ab >= ac.min(cb), "strong triangle inequality violated");
        }
    }

    #[test]
    fn cusp_ball_minimum() {
        let f = germ("x^2 - y^3", &["x", "y"]);
        let phi = parse_arc("(t^3, t^2)", q()).unwrap();
        assert_eq!(min_order_on_ball(&f, &phi, 0).unwrap(), 2);
        assert_eq!(min_order_on_ball(&f, &phi, 2).unwrap(), 6);
        assert_eq!(min_order_on_ball(&f, &phi, 3).unwrap(), 7);
        // Bounds m <= min <= m(i+1).
        for i in 0..=3 {
            let v = min_order_on_ball(&f, &phi, i).unwrap();
            assert!(v >= 2 && v <= 2 * (i as u64 + 1));
        }
    }

    #[test]
    fn samples_never_beat_the_minimum_and_generic_attains() {
        let f = germ("x^2 - y^3", &["x", "y"]);
        let phi = parse_arc("(t^3, t^2)", q()).unwrap();
        for i in 0..=3 {
            let min = min_order_on_ball(&f, &phi, i).unwrap();
            for ord in sample_ball_orders(&f, &phi, i, 12, 99).unwrap().into_iter().flatten() {
                assert!(ord >= min);
            }
            let dir = attaining_direction(&f, &phi, i, 7).unwrap();
            assert_eq!(ball_sample_order(&f, &phi, i, &dir).unwrap(), Some(min));
        }
    }

    #[test]
    fn coordinate_sample() {
        // f = X, phi = 0, i = 2, theta = (t^3): order 3.
        let f = germ("x", &["x"]);
        let phi = Arc::new(q(), 1, vec![vec![q().zero()]; 2]).unwrap();
        let got = ball_sample_order(&f, &phi, 2, &[q().one()]).unwrap();
        assert_eq!(got, Some(3));
    }

    #[test]
    fn profile_is_monotone_in_i() {
        let f = germ("x^2 - y^3", &["x", "y"]);
        let phi = parse_arc("(t^3, t^2)", q()).unwrap();
        let mut prev = 0;
        for i in 0..=3 {
            let v = min_order_on_ball(&f, &phi, i).unwrap();
            assert!(v > prev || i == 0);
            prev = v;
        }
    }
}
