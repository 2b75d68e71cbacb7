//! Boundary powers.
//!
//! The array is mapped onto the unit interval. The boundary between two
//! adjacent runs owns the interval between their midpoints, `(a, b]`, and its
//! power is the least `p >= 1` such that that interval contains a multiple of
//! `k^-p`, i.e. `floor(a k^p) < floor(b k^p)`. Powers are evaluated exactly
//! on integers: with `A = b1 + e1` and `B = b2 + e2`, `a = A / 2n` and
//! `b = B / 2n`, and we compare the base-`k` digits of both fractions one at
//! a time.

use crate::error::{Error, Result};

/// Power of a run boundary; always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryPower(pub u32);

impl BoundaryPower {
    pub fn get(self) -> u32 {
        self.0
    }
}

/// Power of the boundary between runs `[b1, e1)` and `[b2, e2)` of an array
/// of length `n`, for merge arity `k`.
///
/// Accepts `k` in `2..=4`; use [`node_power_generic`] for other arities.
pub fn node_power(
    k: usize,
    n: usize,
    b1: usize,
    e1: usize,
    b2: usize,
    e2: usize,
) -> Result<BoundaryPower> {
    if !(2..=4).contains(&k) {
        return Err(Error::UnsupportedArity(k));
    }
    node_power_generic(k, n, b1, e1, b2, e2)
}

/// [`node_power`] for any `k >= 2`.
pub fn node_power_generic(
    k: usize,
    n: usize,
    b1: usize,
    e1: usize,
    b2: usize,
    e2: usize,
) -> Result<BoundaryPower> {
    if k < 2 {
        return Err(Error::UnsupportedArity(k));
    }
    if !(b1 < e1 && e1 == b2 && b2 < e2 && e2 <= n) {
        return Err(Error::MalformedBounds(format!(
            "[{b1}, {e1}) and [{b2}, {e2}) in an array of length {n}"
        )));
    }
    Ok(power_unchecked(
        k as u128,
        n as u128,
        (b1 + e1) as u128,
        (b2 + e2) as u128,
    ))
}

/// Digit loop on the numerators `a2 = 2n·a` and `b2 = 2n·b`, both in `[0, 2n)`.
#[inline]
pub(crate) fn power_unchecked(k: u128, n: u128, mut a2: u128, mut b2: u128) -> BoundaryPower {
    let denom = 2 * n;
    let mut p = 0;
    loop {
        p += 1;
        a2 *= k;
        b2 *= k;
        let (da, db) = (a2 / denom, b2 / denom);
        if da != db {
            return BoundaryPower(p);
        }
        a2 -= da * denom;
        b2 -= db * denom;
    }
}

/// Powers of all interior boundaries of a profile of run lengths; entry
/// `i - 1` is the boundary in front of run `i`.
pub fn boundary_powers(lengths: &[usize], k: usize) -> Vec<u32> {
    let n: usize = lengths.iter().sum();
    let mut powers = Vec::with_capacity(lengths.len().saturating_sub(1));
    let mut begin = 0;
    for w in lengths.windows(2) {
        let (b1, e1) = (begin, begin + w[0]);
        let e2 = e1 + w[1];
        powers.push(power_unchecked(k as u128, n as u128, (b1 + e1) as u128, (e1 + e2) as u128).0);
        begin = e1;
    }
    powers
}

/// `ceil(log_k(n))` for `n >= 1`.
pub fn ceil_log(k: usize, n: usize) -> u32 {
    let mut e = 0;
    let mut pow: u128 = 1;
    while pow < n as u128 {
        pow *= k as u128;
        e += 1;
    }
    e
}

/// Largest possible boundary power in an array of length `n`.
pub fn max_power(k: usize, n: usize) -> u32 {
    ceil_log(k, n) + 1
}
