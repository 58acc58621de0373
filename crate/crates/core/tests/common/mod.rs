//! Test-only reference implementations. Nothing here calls into the crate, so
//! they can falsify it.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Prime factors of `n` (with multiplicity) by plain trial division.
pub fn trial_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn trial_is_prime(n: u64) -> bool {
    n >= 2 && trial_factors(n) == [n]
}

/// All prime factors are 1 mod 24.
pub fn is_hard(n: u64) -> bool {
    n >= 2 && trial_factors(n).iter().all(|p| p % 24 == 1)
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact check of `1/x + 1/y + 1/z == a/n` by cross-multiplication.
pub fn sums_to(xs: [u128; 3], a: u128, n: u128) -> bool {
    let [x, y, z] = xs;
    let num = y * z + x * z + x * y;
    let den = x * y * z;
    num * n == a * den
}

/// Naive double loop over `x` and `y`, solving for `z` directly.
///
/// Scans `x` one step beyond each end of the window `n/a < x <= 3n/a` so the
/// window itself is tested. Returns sorted triples `x <= y <= z`.
pub fn naive_three_term(a: u128, n: u128, distinct_only: bool) -> BTreeSet<[u128; 3]> {
    let mut out = BTreeSet::new();
    let x_lo = (n / a).max(1);
    let x_hi = 3 * n / a + 1;
    for x in x_lo..=x_hi {
        // r = a/n - 1/x = rn / rd
        if a * x <= n {
            continue;
        }
        let (rn, rd) = (a * x - n, n * x);
        let g = gcd(rn, rd);
        let (rn, rd) = (rn / g, rd / g);
        // 1/y < r  and  2/y >= r
        let y_lo = (rd / rn + 1).max(x);
        let y_hi = 2 * rd / rn;
        for y in y_lo..=y_hi {
            let zn = rn * y - rd;
            let zd = rd * y;
            if zd % zn != 0 {
                continue;
            }
            let z = zd / zn;
            if z < y {
                continue;
            }
            if distinct_only && (x == y || y == z) {
                continue;
            }
            out.insert([x, y, z]);
        }
    }
    out
}
