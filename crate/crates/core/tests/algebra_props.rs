//! Property tests for the exact-algebra layer.

use proptest::prelude::*;

use nashseq_core::algebra::{Arc, ExponentVector, FieldDesc, Polynomial};

fn q() -> FieldDesc {
    FieldDesc::Rationals
}

/// Random polynomial in `vars` variables, degree per variable <= 2.
fn poly_strategy(vars: usize) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0u32..=2, vars), -4i64..=4);
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        Polynomial::from_terms(
            q(),
            vars,
            terms
                .into_iter()
                .map(|(e, c)| (ExponentVector(e), q().from_i64(c))),
        )
    })
}

proptest! {
    #[test]
    fn initial_exponent_is_additive(f in poly_strategy(3), g in poly_strategy(3)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let nf = f.initial_exponent().unwrap().clone();
        let ng = g.initial_exponent().unwrap().clone();
        let p = f.mul(&g);
        prop_assert_eq!(p.initial_exponent().unwrap(), &nf.add(&ng));
    }

    #[test]
    fn order_of_sum_is_ultrametric(f in poly_strategy(3), g in poly_strategy(3)) {
        let of = f.order();
        let og = g.order();
        let osum = f.add(&g).order();
        match (of, og) {
            (Some(a), Some(b)) => {
                if let Some(s) = osum {
                    prop_assert!(s >= a.min(b));
                }
                if a != b {
                    prop_assert_eq!(osum, Some(a.min(b)));
                }
            }
            (None, _) => prop_assert_eq!(osum, og),
            (_, None) => prop_assert_eq!(osum, of),
        }
    }

    #[test]
    fn composition_is_a_truncated_ring_homomorphism(
        f in poly_strategy(2),
        g in poly_strategy(2),
        coeffs in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..4),
        precision in 0u32..12,
    ) {
        let arc = Arc::new(
            q(),
            2,
            coeffs
                .into_iter()
                .map(|a| a.into_iter().map(|c| q().from_i64(c)).collect())
                .collect(),
        ).unwrap();
        let lhs = arc.compose(&f.mul(&g), precision).unwrap().series;
        let rhs = arc
            .compose(&f, precision)
            .unwrap()
            .series
            .mul(&arc.compose(&g, precision).unwrap().series)
            .truncate_degree(precision as u64);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadratic_substitute_fixes_t_degree_count(
        f in poly_strategy(3),
        a in prop::collection::vec(-3i64..=3, 2),
    ) {
        // Substitution is injective on nonzero polynomials.
        prop_assume!(!f.is_zero());
        let av: Vec<_> = a.into_iter().map(|c| q().from_i64(c)).collect();
        let g = f.quadratic_substitute(&av);
        prop_assert!(!g.is_zero());
        // Total transform order doubles at most: ord(g) >= ord(f).
        prop_assert!(g.order().unwrap() >= f.order().unwrap());
    }
}
