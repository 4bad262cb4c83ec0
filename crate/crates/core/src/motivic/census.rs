//! Brute-force census of principal strata of the Brieskorn germs
//! x_1^k + .. + x_n^k + y^{2k} over a prime field: count the level-i
//! coefficient tuples whose strict-transform chain ends with order one and a
//! non-exceptional initial exponent. Independent oracle for the partial sums.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::{strict_transform, ExponentVector, FieldDesc, FieldElement, Polynomial};
use crate::error::{Error, Result};

/// Outcome of one census run.
#[derive(Debug, Clone, Serialize)]
pub struct CensusResult {
    pub n: u32,
    pub k: u32,
    pub level: u32,
    pub q: u64,
    /// Principal tuples among the q^{(n+1) level} coefficient tuples.
    pub count: u64,
    pub total_tuples: u64,
    /// Interior nodes of the prefix tree actually expanded.
    pub visited: u64,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// The Brieskorn hypersurface equation in K[t, x_1..x_n, y].
pub fn brieskorn_germ(n: u32, k: u32, field: FieldDesc) -> Polynomial {
    let vars = n as usize + 2;
    let mut f = Polynomial::zero(field, vars);
    for j in 1..=n as usize {
        let mut e = vec![0u32; vars];
        e[j] = k;
        f = f.add(&Polynomial::monomial(field, ExponentVector(e), field.one()));
    }
    let mut e = vec![0u32; vars];
    e[vars - 1] = 2 * k;
    f.add(&Polynomial::monomial(field, ExponentVector(e), field.one()))
}

/// Enumeration guard: the census refuses more than this many tuples.
const TUPLE_GUARD: u128 = 1_000_000_000;

pub fn census(n: u32, k: u32, level: u32, q: u64, threads: usize) -> Result<CensusResult> {
    if n < 3 || k < 2 {
        return Err(Error::BadArgument(format!(
            "census needs n >= 3 and k >= 2, got n = {n}, k = {k}"
        )));
    }
    if level < 1 {
        return Err(Error::BadArgument("census level must be >= 1".into()));
    }
    let field = FieldDesc::prime_field(q)?;
    if q == 2 || (k as u64).is_multiple_of(q) {
        return Err(Error::BadArgument(format!(
            "census requires an odd prime q with q not dividing k; got q = {q}, k = {k}"
        )));
    }
    let width = n as usize + 1;
    let total = (q as u128)
        .checked_pow(width as u32 * level)
        .filter(|&t| t <= TUPLE_GUARD)
        .ok_or_else(|| Error::GuardExceeded((q as u128).saturating_pow(width as u32 * level)))?;

    let start = Instant::now();
    let f0 = brieskorn_germ(n, k, field);
    let threads = threads.max(1);
    let per_level = q.pow(width as u32);

    let (count, visited) = if threads == 1 || level == 1 {
        walk_range(&f0, level, q, width, 0, per_level)
    } else {
        // Partition the first coefficient vector across the workers; the
        // total is the order-independent sum of the partial counts.
        let chunk = per_level.div_ceil(threads as u64);
        let mut acc = (0u64, 0u64);
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..threads {
                let lo = chunk * w as u64;
                let hi = per_level.min(lo + chunk);
                if lo >= hi {
                    continue;
                }
                let f_ref = &f0;
                handles.push(scope.spawn(move || walk_range(f_ref, level, q, width, lo, hi)));
            }
            for h in handles {
                let (c, v) = h.join().expect("census worker panicked");
                acc.0 += c;
                acc.1 += v;
            }
        });
        acc
    };

    Ok(CensusResult {
        n,
        k,
        level,
        q,
        count,
        total_tuples: total as u64,
        visited,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn walk_range(
    f: &Polynomial,
    levels_left: u32,
    q: u64,
    width: usize,
    lo: u64,
    hi: u64,
) -> (u64, u64) {
    let mut count = 0u64;
    let mut visited = 0u64;
    let mut coeffs: Vec<FieldElement> = vec![FieldElement::Fp { val: 0, p: q }; width];
    for idx in lo..hi {
        decode(idx, q, &mut coeffs);
        let g = strict_transform(f, &coeffs).0;
        visited += 1;
        let (c, v) = walk(&g, levels_left - 1, q, width);
        count += c;
        visited += v;
    }
    (count, visited)
}

fn walk(f: &Polynomial, levels_left: u32, q: u64, width: usize) -> (u64, u64) {
    match f.order() {
        // The step germ left the origin; every extension keeps multiplicity
        // zero, so the whole subtree is dead.
        Some(0) => return (0, 0),
        Some(_) => {}
        None => unreachable!("transforms of a nonzero polynomial are nonzero"),
    }
    if levels_left == 0 {
        return (is_principal(f) as u64, 0);
    }
    // Whole-subtree count: q^{(n+1) levels_left} tuples share this prefix.
    let mut count = 0u64;
    let mut visited = 0u64;
    let mut coeffs: Vec<FieldElement> = vec![FieldElement::Fp { val: 0, p: q }; width];
    let per_level = q.pow(width as u32);
    for idx in 0..per_level {
        decode(idx, q, &mut coeffs);
        let g = strict_transform(f, &coeffs).0;
        visited += 1;
        let (c, v) = walk(&g, levels_left - 1, q, width);
        count += c;
        visited += v;
    }
    (count, visited)
}

/// Principal stratum membership for the hypersurface step: multiplicity one
/// and no pure power of t in the diagram, i.e. the (single) vertex nu(f_i)
/// has a nonzero X/Y component.
fn is_principal(f: &Polynomial) -> bool {
    f.order() == Some(1) && !f.initial_exponent().unwrap().is_pure_t()
}

fn decode(mut idx: u64, q: u64, out: &mut [FieldElement]) {
    for slot in out.iter_mut() {
        *slot = FieldElement::Fp { val: idx % q, p: q };
        idx /= q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_census_matches_the_quadric_count() {
        // (q^2 - 1) nonzero zeros of the ternary quadric, times q choices of
        // the free y-coefficient.
        let r = census(3, 2, 1, 5, 1).unwrap();
        assert_eq!(r.count, 120);
        assert_eq!(r.total_tuples, 625);

        let r7 = census(3, 2, 1, 7, 1).unwrap();
        assert_eq!(r7.count, (7 * 7 - 1) * 7);
    }

    #[test]
    fn count_bounded_by_tuple_space() {
        let r = census(3, 2, 1, 3, 1).unwrap();
        assert!(r.count <= r.total_tuples);
    }

    #[test]
    fn bad_characteristic_rejected() {
        assert!(census(3, 2, 1, 2, 1).is_err());
        assert!(census(3, 3, 1, 3, 1).is_err());
        assert!(census(3, 2, 1, 9, 1).is_err());
    }

    #[test]
    fn guard_rejects_huge_enumerations() {
        assert!(matches!(
            census(3, 2, 4, 101, 1),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn threads_do_not_change_the_count() {
        let a = census(3, 2, 1, 5, 1).unwrap();
        let b = census(3, 2, 1, 5, 3).unwrap();
        assert_eq!(a.count, b.count);
    }
}
