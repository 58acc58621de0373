//! Exhaustive enumeration of `a/n = 1/x + 1/y + 1/z`, independent of the
//! closed-form constructors.
//!
//! The smallest denominator satisfies `n/a < x <= 3n/a`. For each such `x` the
//! residual `(ax - n)/(nx)` is reduced to `p/q`, and `1/y + 1/z = p/q` is solved
//! through the factorization identity `(py - q)(pz - q) = q²`: every divisor
//! `d <= q` of `q²` with `d ≡ -q (mod p)` gives `y = (d + q)/p`. Work is bounded
//! by divisor counts instead of the size of `y`.

use std::collections::BTreeMap;

use crate::arith::{checked_add, checked_mul, checked_sub, factorize, gcd, ArithError, Factorization, Int, Result};
use crate::triple::{ConstructError, Method, UnitTriple};

/// Default cap on the number of divisors of `q²` examined for one `x`.
pub const DEFAULT_DIVISOR_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleQuery<T> {
    pub a: T,
    pub n: T,
    pub distinct_only: bool,
    pub limit: Option<usize>,
    pub divisor_budget: u64,
}

impl<T: Int> OracleQuery<T> {
    /// Distinct triples, no limit, default budget.
    pub fn new(a: T, n: T) -> Self {
        OracleQuery {
            a,
            n,
            distinct_only: true,
            limit: None,
            divisor_budget: DEFAULT_DIVISOR_BUDGET,
        }
    }

    pub fn allow_repeats(self) -> Self {
        OracleQuery {
            distinct_only: false,
            ..self
        }
    }

    pub fn limit(self, limit: usize) -> Self {
        OracleQuery {
            limit: Some(limit),
            ..self
        }
    }

    /// False when the target is too large for any triple to exist.
    fn admissible(&self) -> Result<bool> {
        if self.distinct_only {
            // 1 + 1/2 + 1/3 = 11/6 is the largest distinct sum, and is attained.
            Ok(checked_mul(self.a, T::lit(6))? <= checked_mul(self.n, T::lit(11))?)
        } else {
            Ok(self.a <= checked_mul(self.n, T::lit(3))?)
        }
    }
}

/// Factorization of `n·x / g` assembled from the factorizations of `n` and `x`.
fn residual_den_factors<T: Int>(nf: &[(T, u32)], x: T, g: T) -> Result<Factorization<T>> {
    let mut exps: BTreeMap<T, u32> = nf.iter().copied().collect();
    if x > T::one() {
        for &(p, e) in factorize(x)?.pairs() {
            *exps.entry(p).or_insert(0) += e;
        }
    }
    let mut g = g;
    for (&p, e) in exps.iter_mut() {
        while *e > 0 && (g % p).is_zero() {
            g = g / p;
            *e -= 1;
        }
    }
    debug_assert!(g == T::one());
    Ok(Factorization::from_pairs(
        exps.into_iter().filter(|&(_, e)| e > 0).collect(),
    ))
}

/// All triples `x <= y <= z` (strict when `distinct_only`) summing to `a/n`, in
/// lexicographic order, truncated at `limit`.
pub fn enumerate_three_term<T: Int>(query: &OracleQuery<T>) -> Result<Vec<[T; 3]>> {
    let OracleQuery { a, n, .. } = *query;
    if a.is_zero() || n.is_zero() {
        return Err(ArithError::Domain("a and n must be positive"));
    }
    let mut out = Vec::new();
    let limit = query.limit.unwrap_or(usize::MAX);
    if limit == 0 || !query.admissible()? {
        return Ok(out);
    }
    let nf = if n > T::one() {
        factorize(n)?.pairs().to_vec()
    } else {
        Vec::new()
    };
    let lo = n / a + T::one();
    let hi = checked_mul(n, T::lit(3))? / a;
    let mut x = lo;
    while x <= hi {
        let num = checked_sub(checked_mul(a, x)?, n)?;
        let den = checked_mul(n, x)?;
        let g = gcd(num, den)?;
        let (p, q) = (num / g, den / g);
        let qf = residual_den_factors(&nf, x, g)?;
        let q2 = qf.pow(2);
        if q2.divisor_count() > query.divisor_budget {
            return Err(ArithError::BudgetExceeded {
                what: "divisor enumeration",
                budget: query.divisor_budget,
            });
        }
        // d ≡ -q (mod p)
        let want = (p - q % p) % p;
        for d in q2.divisors()?.into_iter().take_while(|&d| d <= q) {
            if d % p != want {
                continue;
            }
            let y = checked_add(d, q)? / p;
            let e = checked_mul(q, q)? / d;
            let z = checked_add(e, q)? / p;
            let keep = if query.distinct_only { x < y && y < z } else { x <= y };
            if keep {
                out.push([x, y, z]);
                if out.len() >= limit {
                    return Ok(out);
                }
            }
        }
        x = x + T::one();
    }
    Ok(out)
}

/// Lexicographically smallest distinct triple for `a/n`; `None` is a proof by
/// exhaustion that none exists.
pub fn first_solution<T: Int>(a: T, n: T) -> std::result::Result<Option<UnitTriple<T>>, ConstructError> {
    let found = enumerate_three_term(&OracleQuery::new(a, n).limit(1))?;
    found
        .first()
        .map(|&xs| UnitTriple::validated(xs, crate::arith::Fraction::new(a, n)?, Method::Oracle))
        .transpose()
}

pub fn count_solutions<T: Int>(a: T, n: T, distinct_only: bool) -> Result<usize> {
    let query = OracleQuery {
        distinct_only,
        ..OracleQuery::new(a, n)
    };
    Ok(enumerate_three_term(&query)?.len())
}
