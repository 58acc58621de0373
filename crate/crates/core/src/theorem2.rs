//! Closed-form decompositions of `4/n` by residue class, plus lifting from a
//! prime divisor.
//!
//! Each path computes its formula and hands the result to
//! [`UnitTriple::validated`]; small `n` where a formula repeats a value (2, 3, 6)
//! surface as [`ConstructError::NotDistinct`] and the dispatcher moves on.
//!
//! `path_3mod4` is used for every `n ≡ 3 (mod 4)`, `n >= 7`. That is wider than
//! the `n ≡ 7 (mod 12)` case it is usually quoted for; the identity holds for the
//! whole class.

use crate::arith::{checked_add, checked_mul, exact_div, factorize, is_prime, Int};
use crate::triple::{ConstructError, Method, UnitTriple};

type Result<T> = std::result::Result<T, ConstructError>;

fn inapplicable<T: Int>(method: Method, n: T, reason: &'static str) -> ConstructError {
    ConstructError::Inapplicable {
        method,
        n: n.wide(),
        reason,
    }
}

/// `4/n = 1/(n/2 + 1) + 1/((n/2)(n/2 + 1)) + 1/(n/2)` for even `n`.
pub fn path_even<T: Int>(n: T) -> Result<UnitTriple<T>> {
    if n.is_zero() || !n.is_even() {
        return Err(inapplicable(Method::Even, n, "n must be even and positive"));
    }
    let h = n / T::lit(2);
    let h1 = checked_add(h, T::one())?;
    UnitTriple::for_four_over([h1, checked_mul(h, h1)?, h], n, Method::Even)
}

/// `4/n = 1/((n+1)/3) + 1/(n(n+1)/3) + 1/n` for `n ≡ 2 (mod 3)`.
pub fn path_mod3_2<T: Int>(n: T) -> Result<UnitTriple<T>> {
    if n % T::lit(3) != T::lit(2) {
        return Err(inapplicable(Method::Mod3Is2, n, "n must be 2 mod 3"));
    }
    let x1 = checked_add(n, T::one())? / T::lit(3);
    UnitTriple::for_four_over([x1, checked_mul(n, x1)?, n], n, Method::Mod3Is2)
}

/// `4/n = 1/(n/3 + 1) + 1/((n/3 + 1)(n/3)) + 1/n` for `n ≡ 0 (mod 3)`.
pub fn path_mod3_0<T: Int>(n: T) -> Result<UnitTriple<T>> {
    if n.is_zero() || !(n % T::lit(3)).is_zero() {
        return Err(inapplicable(Method::Mod3Is0, n, "n must be a positive multiple of 3"));
    }
    let third = n / T::lit(3);
    let x1 = checked_add(third, T::one())?;
    UnitTriple::for_four_over([x1, checked_mul(x1, third)?, n], n, Method::Mod3Is0)
}

/// With `δ = (n+1)/4`: `x1 = δ + 1`, `x2 = δ(δ + 1)`, `x3 = δn`, for `n ≡ 3 (mod 4)`.
pub fn path_3mod4<T: Int>(n: T) -> Result<UnitTriple<T>> {
    if n % T::lit(4) != T::lit(3) {
        return Err(inapplicable(Method::Mod4Is3, n, "n must be 3 mod 4"));
    }
    let delta = checked_add(n, T::one())? / T::lit(4);
    let x1 = checked_add(delta, T::one())?;
    UnitTriple::for_four_over(
        [x1, checked_mul(delta, x1)?, checked_mul(delta, n)?],
        n,
        Method::Mod4Is3,
    )
}

/// With `k = (p+3)/4` (even): `4/p = 1/k + 1/(p(p+3)/8) + 1/(kp)` for prime `p ≡ 13 (mod 24)`.
pub fn path_prime_13mod24<T: Int>(p: T) -> Result<UnitTriple<T>> {
    if p % T::lit(24) != T::lit(13) {
        return Err(inapplicable(Method::Prime13Mod24, p, "p must be 13 mod 24"));
    }
    if !is_prime(p) {
        return Err(inapplicable(Method::Prime13Mod24, p, "p must be prime"));
    }
    let p3 = checked_add(p, T::lit(3))?;
    let k = p3 / T::lit(4);
    let x2 = exact_div(checked_mul(p, p3)?, T::lit(8))?;
    UnitTriple::for_four_over([k, x2, checked_mul(k, p)?], p, Method::Prime13Mod24)
}

/// Multiplies a decomposition of `4/p` through by `c`, giving one of `4/(pc)`.
pub fn lift_by_cofactor<T: Int>(t: &UnitTriple<T>, c: T) -> Result<UnitTriple<T>> {
    if c.is_zero() {
        return Err(crate::arith::ArithError::Domain("cofactor must be positive").into());
    }
    if c == T::one() {
        return Ok(*t);
    }
    t.scaled(c, Method::PrimeLift)
}

type Path<T> = fn(T) -> Result<UnitTriple<T>>;

/// Residue-class paths applied to `n` directly, in priority order.
fn direct_paths<T: Int>(n: T) -> Result<Option<UnitTriple<T>>> {
    let paths: [(Path<T>, bool); 4] = [
        (path_even, n.is_even()),
        (path_mod3_2, n % T::lit(3) == T::lit(2)),
        (path_mod3_0, (n % T::lit(3)).is_zero()),
        (path_3mod4, n % T::lit(4) == T::lit(3)),
    ];
    first_success(paths.into_iter().filter(|&(_, guard)| guard).map(|(path, _)| path(n)))
}

/// Closed-form construction for a prime `p`; never consults a search or oracle.
fn closed_form_for_prime<T: Int>(p: T) -> Result<Option<UnitTriple<T>>> {
    if let Some(t) = direct_paths(p)? {
        return Ok(Some(t));
    }
    if p % T::lit(24) == T::lit(13) {
        return first_success(std::iter::once(path_prime_13mod24(p)));
    }
    Ok(None)
}

/// First `Ok`; guard failures fall through, arithmetic errors propagate.
fn first_success<T: Int>(attempts: impl Iterator<Item = Result<UnitTriple<T>>>) -> Result<Option<UnitTriple<T>>> {
    for attempt in attempts {
        match attempt {
            Ok(t) => return Ok(Some(t)),
            Err(ConstructError::Arith(e)) => return Err(e.into()),
            Err(e) => log::trace!("path rejected: {e}"),
        }
    }
    Ok(None)
}

/// Tries the residue-class paths on `n`, then each prime divisor `p ≢ 1 (mod 24)`
/// in ascending order, lifting its decomposition by `n/p`.
///
/// Priority: Even, Mod3Is2, Mod3Is0, Mod4Is3, then prime divisors. A prime that
/// equals `n` keeps its own tag; a proper lift is tagged `PrimeLift`.
/// `None` means every path was inapplicable (n ∈ {2, 3}, or every prime divisor
/// is 1 mod 24).
pub fn theorem2_dispatch<T: Int>(n: T) -> Result<Option<UnitTriple<T>>> {
    if n < T::lit(2) {
        return Err(crate::arith::ArithError::Domain("n must be at least 2").into());
    }
    if let Some(t) = direct_paths(n)? {
        return Ok(Some(t));
    }
    let factors = factorize(n)?;
    for p in factors.primes().filter(|&p| p % T::lit(24) != T::one()) {
        if let Some(base) = closed_form_for_prime(p)? {
            let c = n / p;
            match lift_by_cofactor(&base, c) {
                Ok(t) => return Ok(Some(t)),
                Err(ConstructError::Arith(e)) => return Err(e.into()),
                Err(e) => log::trace!("lift of p = {p} rejected: {e}"),
            }
        }
    }
    Ok(None)
}

/// True when every prime divisor of `n >= 2` is `1 (mod 24)`.
pub fn all_primes_1_mod_24<T: Int>(n: T) -> crate::arith::Result<bool> {
    Ok(factorize(n)?.primes().all(|p| p % T::lit(24) == T::one()))
}
