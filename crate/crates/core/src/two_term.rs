//! Two-term decompositions `q/p = 1/x1 + 1/x2`.
//!
//! When `q | p + 1` the pair `((p+1)/q, p(p+1)/q)` always works. For prime `p`
//! that divisibility is also necessary and the distinct solution is unique, so a
//! `None` from [`solve_two_term`] with prime `p` means no distinct pair exists.
//! For composite `p` it only means the closed form does not apply; use
//! [`enumerate_two_term`] for an exhaustive answer.

use crate::arith::{checked_add, checked_mul, checked_sub, unit_sum, Fraction, Int, Result};

/// Distinct pair with `x1 < x2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoTermSolution<T> {
    x1: T,
    x2: T,
}

impl<T: Int> TwoTermSolution<T> {
    /// Orders the pair; `None` when the two values coincide.
    pub fn new(a: T, b: T) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(TwoTermSolution { x1: a, x2: b }),
            std::cmp::Ordering::Greater => Some(TwoTermSolution { x1: b, x2: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn x1(&self) -> T {
        self.x1
    }

    pub fn x2(&self) -> T {
        self.x2
    }

    pub fn pair(&self) -> [T; 2] {
        [self.x1, self.x2]
    }

    pub fn sum(&self) -> Result<Fraction<T>> {
        unit_sum(&self.pair())
    }
}

pub fn solve_two_term<T: Int>(q: T, p: T) -> Result<Option<TwoTermSolution<T>>> {
    if q.is_zero() || p.is_zero() {
        return Err(crate::arith::ArithError::Domain("q and p must be positive"));
    }
    let p1 = checked_add(p, T::one())?;
    if !(p1 % q).is_zero() {
        return Ok(None);
    }
    let x1 = p1 / q;
    let x2 = checked_mul(p, x1)?;
    // p = 1 gives x1 = x2.
    Ok(TwoTermSolution::new(x1, x2))
}

/// All pairs `x <= y` with `1/x + 1/y = q/p`, sorted by `x`.
///
/// Scans the window `p/q < x <= 2p/q` and keeps each `x` whose residual
/// `q/p - 1/x` is a unit fraction. With `distinct_only` the `x = y` pair is dropped.
pub fn enumerate_two_term<T: Int>(q: T, p: T, distinct_only: bool) -> Result<Vec<[T; 2]>> {
    if q.is_zero() || p.is_zero() {
        return Err(crate::arith::ArithError::Domain("q and p must be positive"));
    }
    let mut out = Vec::new();
    if q > checked_mul(p, T::lit(2))? {
        return Ok(out);
    }
    let lo = p / q + T::one();
    let hi = checked_mul(p, T::lit(2))? / q;
    let mut x = lo;
    while x <= hi {
        // 1/y = (q x - p) / (p x)
        let rnum = checked_sub(checked_mul(q, x)?, p)?;
        let rden = checked_mul(p, x)?;
        if (rden % rnum).is_zero() {
            let y = rden / rnum;
            if !(distinct_only && y == x) {
                out.push([x, y]);
            }
        }
        x = x + T::one();
    }
    Ok(out)
}
