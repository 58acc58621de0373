//! Exact unsigned integer and rational arithmetic.
//!
//! Every operation here is checked: an overflow is an [`ArithError`], never a
//! wrapped value. The functions are generic over [`Int`], which covers the
//! primitive unsigned types; the crate root fixes the working width to `u128`.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};
use thiserror::Error;

/// Default cap on trial divisions performed by a single factorization.
pub const DEFAULT_TRIAL_BUDGET: u64 = 1 << 32;

/// Unsigned primitive integer usable as the working scalar.
pub trait Int: PrimInt + Unsigned + From<u8> + Hash + Debug + Display + Send + Sync + 'static {
    /// Small literal in the working type.
    #[inline]
    fn lit(v: u8) -> Self {
        <Self as From<u8>>::from(v)
    }

    /// Widening view used in diagnostics. Lossless for every type up to 128 bits.
    #[inline]
    fn wide(self) -> u128 {
        self.to_u128().unwrap_or(u128::MAX)
    }

    #[inline]
    fn is_even(self) -> bool {
        self & Self::one() == Self::zero()
    }

    #[inline]
    fn divides(self, n: Self) -> bool {
        !self.is_zero() && (n % self).is_zero()
    }
}

impl<T> Int for T where T: PrimInt + Unsigned + From<u8> + Hash + Debug + Display + Send + Sync + 'static {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("arithmetic overflow in {op}({lhs}, {rhs})")]
    Overflow { op: &'static str, lhs: u128, rhs: u128 },
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("{what} exceeded its budget of {budget}")]
    BudgetExceeded { what: &'static str, budget: u64 },
}

pub type Result<T, E = ArithError> = std::result::Result<T, E>;

fn overflow<T: Int>(op: &'static str, lhs: T, rhs: T) -> ArithError {
    ArithError::Overflow {
        op,
        lhs: lhs.wide(),
        rhs: rhs.wide(),
    }
}

pub fn checked_mul<T: Int>(a: T, b: T) -> Result<T> {
    a.checked_mul(&b).ok_or_else(|| overflow("mul", a, b))
}

pub fn checked_add<T: Int>(a: T, b: T) -> Result<T> {
    a.checked_add(&b).ok_or_else(|| overflow("add", a, b))
}

pub fn checked_sub<T: Int>(a: T, b: T) -> Result<T> {
    a.checked_sub(&b).ok_or_else(|| overflow("sub", a, b))
}

/// Exact quotient; fails unless `b` divides `a`.
pub fn exact_div<T: Int>(a: T, b: T) -> Result<T> {
    if b.is_zero() {
        return Err(ArithError::Domain("division by zero"));
    }
    if !(a % b).is_zero() {
        return Err(ArithError::Domain("inexact division"));
    }
    Ok(a / b)
}

pub fn gcd<T: Int>(a: T, b: T) -> Result<T> {
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::Domain("gcd(0, 0) is undefined"));
    }
    let (mut a, mut b) = (a, b);
    while !b.is_zero() {
        let r = a % b;
        a = b;
        b = r;
    }
    Ok(a)
}

pub fn lcm<T: Int>(a: T, b: T) -> Result<T> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::Domain("lcm of zero"));
    }
    checked_mul(a / gcd(a, b)?, b)
}

/// Integer square root: the largest `r` with `r * r <= n`.
pub fn isqrt<T: Int>(n: T) -> T {
    if n < T::lit(2) {
        return n;
    }
    // Newton iteration from an upper bound; monotone decreasing to the floor root.
    let bits = T::zero().count_zeros() - n.leading_zeros();
    let mut x = T::one() << (bits.div_ceil(2) as usize);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Prime factorization as strictly increasing `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<T> {
    pairs: Vec<(T, u32)>,
}

impl<T: Int> Factorization<T> {
    /// Caller guarantees strictly increasing primes and positive exponents.
    pub(crate) fn from_pairs(pairs: Vec<(T, u32)>) -> Self {
        Factorization { pairs }
    }

    pub fn pairs(&self) -> &[(T, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = T> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Product of `p^e` over all pairs.
    pub fn product(&self) -> Result<T> {
        self.pairs.iter().try_fold(T::one(), |acc, &(p, e)| {
            (0..e).try_fold(acc, |acc, _| checked_mul(acc, p))
        })
    }

    /// Factorization of `self^k`.
    pub fn pow(&self, k: u32) -> Self {
        Factorization {
            pairs: self.pairs.iter().map(|&(p, e)| (p, e * k)).collect(),
        }
    }

    /// All divisors of the represented integer, ascending.
    pub fn divisors(&self) -> Result<Vec<T>> {
        let mut out = vec![T::one()];
        for &(p, e) in &self.pairs {
            let len = out.len();
            let mut pk = T::one();
            for _ in 0..e {
                pk = checked_mul(pk, p)?;
                for i in 0..len {
                    out.push(checked_mul(out[i], pk)?);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Number of divisors, saturating at `u64::MAX`.
    pub fn divisor_count(&self) -> u64 {
        self.pairs
            .iter()
            .fold(1u64, |acc, &(_, e)| acc.saturating_mul(u64::from(e) + 1))
    }
}

pub fn factorize<T: Int>(n: T) -> Result<Factorization<T>> {
    factorize_with_budget(n, DEFAULT_TRIAL_BUDGET)
}

/// Trial division by 2, 3 and then `6k ± 1` up to `√n`.
///
/// `budget` caps the number of candidate divisors tried; exceeding it is an
/// error rather than a silent partial result.
pub fn factorize_with_budget<T: Int>(n: T, budget: u64) -> Result<Factorization<T>> {
    if n < T::lit(2) {
        return Err(ArithError::Domain("factorize requires n >= 2"));
    }
    let mut pairs = Vec::new();
    let mut rest = n;
    let mut take = |p: T, rest: &mut T| {
        let mut e = 0u32;
        while (*rest % p).is_zero() {
            *rest = *rest / p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    take(T::lit(2), &mut rest);
    take(T::lit(3), &mut rest);
    let mut p = T::lit(5);
    let mut trials = 0u64;
    // p <= rest / p avoids squaring p near the top of the width.
    while p <= rest / p {
        trials += 2;
        if trials > budget {
            return Err(ArithError::BudgetExceeded {
                what: "trial division",
                budget,
            });
        }
        take(p, &mut rest);
        let q = p + T::lit(2);
        if q <= rest / q {
            take(q, &mut rest);
        }
        p = match p.checked_add(&T::lit(6)) {
            Some(p) => p,
            None => break,
        };
    }
    if rest > T::one() {
        pairs.push((rest, 1));
    }
    Ok(Factorization { pairs })
}

/// Ascending divisors of `n`.
pub fn divisors<T: Int>(n: T) -> Result<Vec<T>> {
    if n.is_zero() {
        return Err(ArithError::Domain("divisors of zero"));
    }
    if n == T::one() {
        return Ok(vec![T::one()]);
    }
    factorize(n)?.divisors()
}

// Deterministic Miller-Rabin bases for every n < 3.3 * 10^24, a superset of u64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // Callers guarantee m < 2^64, so the product fits in 128 bits.
    a * b % m
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin_u64(n: u128) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'bases: for &a in &MR_BASES {
        let a = u128::from(a);
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Exact primality test.
///
/// Deterministic Miller-Rabin below `2^64`; above that, trial division (exact but slow).
pub fn is_prime<T: Int>(n: T) -> bool {
    let n = n.wide();
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n <= u128::from(u64::MAX) {
        return miller_rabin_u64(n);
    }
    let mut p = 41u128;
    while p <= n / p {
        if n.is_multiple_of(p) || n.is_multiple_of(p + 2) {
            return false;
        }
        p += 6;
    }
    true
}

/// Positive rational, always stored in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction<T> {
    num: T,
    den: T,
}

impl<T: Int> Fraction<T> {
    pub fn new(num: T, den: T) -> Result<Self> {
        if num.is_zero() || den.is_zero() {
            return Err(ArithError::Domain("fraction parts must be positive"));
        }
        let g = gcd(num, den)?;
        Ok(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    pub fn unit(den: T) -> Result<Self> {
        Self::new(T::one(), den)
    }

    pub fn num(&self) -> T {
        self.num
    }

    pub fn den(&self) -> T {
        self.den
    }

    pub fn is_unit(&self) -> bool {
        self.num == T::one()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let g = gcd(self.den, rhs.den)?;
        let (l, r) = (self.den / g, rhs.den / g);
        let num = checked_add(checked_mul(self.num, r)?, checked_mul(rhs.num, l)?)?;
        let den = checked_mul(checked_mul(l, r)?, g)?;
        Self::new(num, den)
    }

    /// Divides by a positive integer.
    pub fn checked_div_int(&self, c: T) -> Result<Self> {
        if c.is_zero() {
            return Err(ArithError::Domain("division by zero"));
        }
        let g = gcd(self.num, c)?;
        Ok(Fraction {
            num: self.num / g,
            den: checked_mul(self.den, c / g)?,
        })
    }
}

impl<T: Display> Display for Fraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl<T: Debug> Debug for Fraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}

/// Exact sum of `1/x` over `xs`, reduced.
pub fn unit_sum<T: Int>(xs: &[T]) -> Result<Fraction<T>> {
    let (first, rest) = xs
        .split_first()
        .ok_or(ArithError::Domain("unit_sum of an empty list"))?;
    rest.iter()
        .try_fold(Fraction::unit(*first)?, |acc, &x| acc.checked_add(&Fraction::unit(x)?))
}
