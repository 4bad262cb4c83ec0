//! Exact coefficient fields, multivariate polynomials, the t-first
//! degree-lexicographic order, valuations, and the quadratic-transform
//! substitution.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is freely shareable across threads.

pub mod arc;
pub mod exponent;
pub mod field;
pub mod parse;
pub mod poly;

pub use arc::{Arc, Composition};
pub use exponent::ExponentVector;
pub use field::{FieldDesc, FieldElement};
pub use poly::Polynomial;

/// Strict transform of a single element under the chart (t, X) -> (t, t(A+X)):
/// substitute, then divide by the maximal power of t. Returns the transform
/// and the power removed.
pub fn strict_transform(f: &Polynomial, a: &[FieldElement]) -> (Polynomial, u32) {
    let total = f.quadratic_substitute(a);
    match total.max_t_power() {
        None => (total, 0),
        Some(m) => (total.div_t_power(m), m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{parse_arc, parse_polynomial, VarTable};

    fn q() -> FieldDesc {
        FieldDesc::Rationals
    }

    fn tpoly(src: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(src, &VarTable::new(vars), q()).unwrap()
    }

    /// t^{sum of removed powers} * f_i(t,X) = f(sum A_k t^k + t^i X), the
    /// exact identity behind the chain of quadratic transforms.
    #[test]
    fn transform_chain_identity_on_the_cusp() {
        let f = tpoly("x^2 - y^3", &["x", "y"]);
        let arc = parse_arc("(t^3, t^2)", q()).unwrap();
        check_transform_identity(&f, &arc, 3);
    }

    #[test]
    fn transform_chain_identity_random_arcs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..12 {
            let n = rng.gen_range(1..=3);
            let vars: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
            let table = VarTable::from_names(vars);
            let f = random_poly(&mut rng, &table);
            if f.is_zero() {
                continue;
            }
            let order = rng.gen_range(1..=3);
            let coeffs = (0..order)
                .map(|_| (0..n).map(|_| q().from_i64(rng.gen_range(-2..=2))).collect())
                .collect();
            let arc = Arc::new(q(), n, coeffs).unwrap();
            check_transform_identity(&f, &arc, order);
        }
    }

    fn random_poly(rng: &mut impl rand::Rng, table: &VarTable) -> Polynomial {
        let n = table.len();
        let mut p = Polynomial::zero(q(), n);
        for _ in 0..rng.gen_range(1..=4) {
            let exp: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            if exp.iter().all(|&e| e == 0) {
                continue;
            }
            let c = q().from_i64(rng.gen_range(-3..=3));
            p = p.add(&Polynomial::monomial(q(), ExponentVector(exp), c));
        }
        p
    }

    fn check_transform_identity(f: &Polynomial, arc: &Arc, steps: usize) {
        let n = f.vars();
        let mut g = f.lift_t();
        let mut removed: u32 = 0;
        for i in 1..=steps {
            let (next, m) = strict_transform(&g, arc.coeff(i));
            removed += m;
            g = next;

            // Right side: f(sum_{k<=i} A_k t^k + t^i X_j) in K[t,X].
            let field = q();
            let images: Vec<Polynomial> = (0..n)
                .map(|j| {
                    let mut img = Polynomial::zero(field, n + 1);
                    for k in 1..=i {
                        img = img.add(&Polynomial::monomial(
                            field,
                            ExponentVector(std::iter::once(k as u32).chain(vec![0; n]).collect()),
                            arc.coeff(k)[j].clone(),
                        ));
                    }
                    let mut e = vec![0u32; n + 1];
                    e[0] = i as u32;
                    e[j + 1] = 1;
                    img.add(&Polynomial::monomial(field, ExponentVector(e), field.one()))
                })
                .collect();
            let rhs = f.substitute(&images);
            let lhs = {
                let mut e = vec![0u32; n + 1];
                e[0] = removed;
                g.mul_monomial(&field.one(), &ExponentVector(e))
            };
            assert_eq!(lhs, rhs, "transform identity failed at step {i}");
        }
    }
}
