//! Witness-based decompositions for odd `n`.
//!
//! A witness is a divisor `δ` of `n`, an odd `k` and an `m ≡ 3 (mod 4)` dividing
//! `δ + k`. With `a = (δ + k)/m` and `t = (m + 1)/4`, whenever `k | a·t·n`:
//!
//! ```text
//! 4/n = 1/(a·t·n/k) + 1/(a·t·(n/δ)) + 1/(t·n)
//! ```
//!
//! Choosing `k = d` for a second divisor `d` of `n` makes the congruence
//! automatic, which is what [`theorem4_construct`] does.

use crate::arith::{checked_add, checked_mul, divisors, factorize, Int};
use crate::triple::{ConstructError, Method, UnitTriple};

type Result<T> = std::result::Result<T, ConstructError>;

/// Default upper bound on `k` for [`theorem3_search`].
pub const DEFAULT_K_BOUND: u64 = 999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Th3Params<T> {
    pub delta: T,
    pub k: T,
    pub m: T,
    pub a: T,
    pub t: T,
}

fn violation<T: Int>(n: T, reason: &'static str) -> ConstructError {
    ConstructError::HypothesisViolation { n: n.wide(), reason }
}

impl<T: Int> Th3Params<T> {
    /// Derives `a` and `t` from `(δ, k, m)` and checks the whole system for `n`.
    pub fn derive(n: T, delta: T, k: T, m: T) -> Result<Self> {
        if k.is_zero() || k.is_even() {
            return Err(violation(n, "k must be odd"));
        }
        if m % T::lit(4) != T::lit(3) {
            return Err(violation(n, "m must be 3 mod 4"));
        }
        let s = checked_add(delta, k)?;
        if !m.divides(s) {
            return Err(violation(n, "m must divide delta + k"));
        }
        let params = Th3Params {
            delta,
            k,
            m,
            a: s / m,
            t: (m + T::one()) / T::lit(4),
        };
        params.check(n)?;
        Ok(params)
    }

    /// Verifies every constraint of the system against `n`.
    pub fn check(&self, n: T) -> Result<()> {
        if n.is_zero() || n.is_even() {
            return Err(violation(n, "n must be odd"));
        }
        if !self.delta.divides(n) {
            return Err(violation(n, "delta must divide n"));
        }
        if self.k.is_zero() || self.k.is_even() {
            return Err(violation(n, "k must be odd"));
        }
        if self.m % T::lit(4) != T::lit(3) {
            return Err(violation(n, "m must be 3 mod 4"));
        }
        if checked_mul(self.a, self.m)? != checked_add(self.delta, self.k)? {
            return Err(violation(n, "a * m must equal delta + k"));
        }
        if checked_mul(self.t, T::lit(4))? != checked_add(self.m, T::one())? {
            return Err(violation(n, "t must equal (m + 1) / 4"));
        }
        if !self.k.divides(checked_mul(checked_mul(self.a, self.t)?, n)?) {
            return Err(violation(n, "k must divide a * t * n"));
        }
        Ok(())
    }
}

/// True when some divisor of `n` is `3 (mod 4)`, i.e. some prime factor is.
pub fn has_divisor_3_mod_4<T: Int>(n: T) -> crate::arith::Result<bool> {
    if n < T::lit(2) {
        return Ok(false);
    }
    Ok(factorize(n)?.primes().any(|p| p % T::lit(4) == T::lit(3)))
}

/// Smallest divisor of `s` that is `3 (mod 4)`.
pub fn smallest_divisor_3_mod_4<T: Int>(s: T) -> crate::arith::Result<Option<T>> {
    Ok(divisors(s)?.into_iter().find(|&m| m % T::lit(4) == T::lit(3)))
}

fn construct_tagged<T: Int>(n: T, params: &Th3Params<T>, method: Method) -> Result<UnitTriple<T>> {
    params.check(n)?;
    let at = checked_mul(params.a, params.t)?;
    let x1 = checked_mul(at, n)? / params.k;
    let x2 = checked_mul(at, n / params.delta)?;
    let x3 = checked_mul(params.t, n)?;
    UnitTriple::for_four_over([x1, x2, x3], n, method).map_err(|e| {
        if matches!(e, ConstructError::NotDistinct { .. }) {
            let hypothesis = has_divisor_3_mod_4(n).map(|b| !b).unwrap_or(false);
            log::debug!(
                "witness {params:?} for n = {n} repeats a value (no-divisor-3-mod-4 hypothesis holds: {hypothesis})"
            );
        }
        e
    })
}

/// Builds `(a·t·n/k, a·t·(n/δ), t·n)` from a witness and validates it.
///
/// Parameters are re-checked against `n`. The no-divisor-3-mod-4 hypothesis on
/// `n` is not required: the exact identity and distinctness checks decide
/// acceptance, and [`has_divisor_3_mod_4`] reports whether it held.
pub fn theorem3_construct<T: Int>(n: T, params: &Th3Params<T>) -> Result<UnitTriple<T>> {
    construct_tagged(n, params, Method::Theorem3Search)
}

/// Every witness for `n` with odd `k <= k_bound`, in search order:
/// `δ` ascending over divisors of `n`, then `k`, then `m` ascending over
/// divisors of `δ + k`.
pub fn theorem3_witnesses<T: Int>(n: T, k_bound: T) -> Result<impl Iterator<Item = Result<Th3Params<T>>>> {
    if n < T::lit(3) || n.is_even() {
        return Err(violation(n, "n must be odd and at least 3"));
    }
    let deltas = divisors(n)?;
    let ks = std::iter::successors(Some(T::one()), |&k| k.checked_add(&T::lit(2))).take_while(move |&k| k <= k_bound);
    let pairs = deltas
        .into_iter()
        .flat_map(move |delta| ks.clone().map(move |k| (delta, k)));
    Ok(pairs.flat_map(move |(delta, k)| {
        let ms = checked_add(delta, k).and_then(divisors).map_err(ConstructError::from);
        let ms: Vec<Result<T>> = match ms {
            Ok(ms) => ms.into_iter().filter(|&m| m % T::lit(4) == T::lit(3)).map(Ok).collect(),
            Err(e) => vec![Err(e)],
        };
        ms.into_iter().filter_map(move |m| {
            let m = match m {
                Ok(m) => m,
                Err(e) => return Some(Err(e)),
            };
            match Th3Params::derive(n, delta, k, m) {
                Ok(p) => Some(Ok(p)),
                Err(ConstructError::HypothesisViolation { .. }) => None,
                Err(e) => Some(Err(e)),
            }
        })
    }))
}

/// First witness in [`theorem3_witnesses`] order whose triple validates.
pub fn theorem3_search<T: Int>(n: T, k_bound: T) -> Result<Option<(UnitTriple<T>, Th3Params<T>)>> {
    for params in theorem3_witnesses(n, k_bound)? {
        let params = params?;
        match theorem3_construct(n, &params) {
            Ok(t) => return Ok(Some((t, params))),
            Err(ConstructError::Arith(e)) => return Err(e.into()),
            Err(_) => continue,
        }
    }
    Ok(None)
}

/// Witness with `k = d` and the smallest `m ≡ 3 (mod 4)` dividing `δ + d`.
pub fn theorem4_construct<T: Int>(n: T, delta: T, d: T) -> Result<Option<(UnitTriple<T>, Th3Params<T>)>> {
    if !delta.divides(n) || !d.divides(n) {
        return Err(violation(n, "delta and d must divide n"));
    }
    let Some(m) = smallest_divisor_3_mod_4(checked_add(delta, d)?)? else {
        return Ok(None);
    };
    let params = Th3Params::derive(n, delta, d, m)?;
    let t = construct_tagged(n, &params, Method::Theorem4)?;
    Ok(Some((t, params)))
}

/// First success over ordered divisor pairs `(δ, d)` in lexicographic order.
pub fn theorem4_search<T: Int>(n: T) -> Result<Option<(UnitTriple<T>, Th3Params<T>)>> {
    if n < T::lit(3) || n.is_even() {
        return Err(violation(n, "n must be odd and at least 3"));
    }
    let ds = divisors(n)?;
    for &delta in &ds {
        for &d in &ds {
            match theorem4_construct(n, delta, d) {
                Ok(Some(found)) => return Ok(Some(found)),
                Ok(None) => {}
                Err(ConstructError::Arith(e)) => return Err(e.into()),
                Err(e) => log::trace!("pair ({delta}, {d}) for n = {n} rejected: {e}"),
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(delta: u64, k: u64, m: u64, a: u64, t: u64) -> Th3Params<u64> {
        Th3Params { delta, k, m, a, t }
    }

    #[test]
    fn construct_examples() {
        let p = Th3Params::derive(25u64, 5, 1, 3).unwrap();
        assert_eq!(p, params(5, 1, 3, 2, 1));
        let t = theorem3_construct(25, &p).unwrap();
        assert_eq!((t.xs(), t.method()), ([10, 25, 50], Method::Theorem3Search));

        let p = Th3Params::derive(25u64, 25, 5, 3).unwrap();
        assert_eq!(p, params(25, 5, 3, 10, 1));
        assert_eq!(theorem3_construct(25, &p).unwrap().xs(), [10, 25, 50]);

        // δ + k = 2 has no divisor 3 mod 4.
        assert!(matches!(
            Th3Params::derive(5u64, 1, 1, 3),
            Err(ConstructError::HypothesisViolation { .. })
        ));
        assert_eq!(smallest_divisor_3_mod_4(2u64).unwrap(), None);
    }

    #[test]
    fn construct_rechecks_parameters() {
        assert!(theorem3_construct(25u64, &params(5, 1, 3, 3, 1)).is_err());
        assert!(theorem3_construct(25u64, &params(3, 1, 3, 2, 1)).is_err());
        assert!(theorem3_construct(24u64, &params(1, 1, 3, 2, 1)).is_err());
        assert!(theorem3_construct(25u64, &params(5, 2, 7, 1, 2)).is_err());
        // 7 does not divide 2 * 1 * 25.
        assert!(Th3Params::derive(25u64, 5, 7, 3).is_err());
    }

    #[test]
    fn distinctness_guard_fires_outside_the_hypothesis() {
        // n = 3 is itself 3 mod 4; δ = k = m = 3 gives x1 = x2 = 2.
        let p = Th3Params::derive(3u64, 3, 3, 3).unwrap();
        assert!(matches!(
            theorem3_construct(3, &p),
            Err(ConstructError::NotDistinct { .. })
        ));
        assert!(has_divisor_3_mod_4(3u64).unwrap());
        assert!(!has_divisor_3_mod_4(25u64).unwrap());
    }

    #[test]
    fn search_examples() {
        let (t, p) = theorem3_search(25u64, 99).unwrap().unwrap();
        assert_eq!(t.xs(), [10, 25, 50]);
        assert_eq!(p, params(1, 5, 3, 2, 1));

        let (t, p) = theorem3_search(5u64, 99).unwrap().unwrap();
        assert_eq!(t.xs(), [2, 5, 10]);
        assert_eq!(p, params(1, 5, 3, 2, 1));

        // k = 5, m = 39 with δ = n reaches 73.
        let (t, p) = theorem3_search(73u64, 99).unwrap().unwrap();
        assert_eq!(t.xs(), [20, 292, 730]);
        assert_eq!(p, params(73, 5, 39, 2, 10));
        assert_eq!(theorem3_search(73u64, 3).unwrap(), None);

        assert!(theorem3_search(24u64, 99).is_err());
    }

    #[test]
    fn theorem4_examples() {
        let (t, p) = theorem4_construct(25u64, 5, 1).unwrap().unwrap();
        assert_eq!((t.xs(), p.m, t.method()), ([10, 25, 50], 3, Method::Theorem4));
        assert_eq!(theorem4_construct(73u64, 73, 1).unwrap(), None);
        assert_eq!(theorem4_construct(5u64, 1, 1).unwrap(), None);
        assert!(theorem4_construct(25u64, 3, 1).is_err());

        let (t, p) = theorem4_search(25u64).unwrap().unwrap();
        assert_eq!((t.xs(), p.delta, p.k), ([10, 25, 50], 1, 5));
        assert_eq!(theorem4_search(73u64).unwrap(), None);
        let (t, p) = theorem4_search(13u64).unwrap().unwrap();
        assert_eq!(t.xs(), [4, 26, 52]);
        assert_eq!(p, params(1, 13, 7, 2, 2));
    }
}
