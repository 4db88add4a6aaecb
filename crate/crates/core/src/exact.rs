//! Exact integer and rational primitives.
//!
//! `ExactInt` and `ExactRational` are the arbitrary-precision types used by
//! every public surface of the crate. The hot search loops work in machine
//! words and only promote to `ExactInt` when a value is reported or when a
//! checked operation overflows, so the word-sized helpers live here too.
//! Nothing in this module touches floating point.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Signed integer of unbounded magnitude.
pub type ExactInt = BigInt;

/// Exact fraction, always kept in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("square root of negative value {0}")]
    NegativeRadicand(String),
}

/// Floor of the square root of a nonnegative integer (Newton iteration).
///
/// Panics on negative input; use [`isqrt_exact`] for the checked variant.
pub fn isqrt_floor(n: &ExactInt) -> ExactInt {
    assert!(!n.is_negative(), "isqrt_floor of negative value");
    if n.is_zero() {
        return ExactInt::zero();
    }
    let bits = n.bits();
    // 2^ceil(bits/2) is always >= sqrt(n), so the iteration decreases monotonically.
    let mut x: ExactInt = ExactInt::one() << bits.div_ceil(2);
    loop {
        let y: ExactInt = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Returns `r` with `r * r == n` when `n` is a perfect square, `None` otherwise.
pub fn isqrt_exact(n: &ExactInt) -> Result<Option<ExactInt>, DomainError> {
    if n.is_negative() {
        return Err(DomainError::NegativeRadicand(n.to_string()));
    }
    if let Some(small) = to_u128(n) {
        return Ok(exact_sqrt_u128(small).map(ExactInt::from));
    }
    if !passes_square_residue_filter_big(n) {
        return Ok(None);
    }
    let r = isqrt_floor(n);
    if &(&r * &r) == n {
        Ok(Some(r))
    } else {
        Ok(None)
    }
}

/// Nonnegative greatest common divisor; `gcd(0, 0) == 0`.
pub fn gcd(a: &ExactInt, b: &ExactInt) -> ExactInt {
    a.gcd(b)
}

/// Exact square root of a nonnegative rational, if it has one.
pub fn rational_square_root(q: &ExactRational) -> Result<Option<ExactRational>, DomainError> {
    if q.is_negative() {
        return Err(DomainError::NegativeRadicand(q.to_string()));
    }
    // Ratio keeps lowest terms, so the root exists iff numerator and denominator are squares.
    let Some(num) = isqrt_exact(q.numer())? else {
        return Ok(None);
    };
    let Some(den) = isqrt_exact(q.denom())? else {
        return Ok(None);
    };
    Ok(Some(ExactRational::new(num, den)))
}

/// True when `n` is a perfect square (negative values never are).
pub fn is_square(n: &ExactInt) -> bool {
    matches!(isqrt_exact(n), Ok(Some(_)))
}

fn to_u128(n: &ExactInt) -> Option<u128> {
    if n.sign() == Sign::Minus || n.bits() > 128 {
        return None;
    }
    let digits = n.to_u64_digits().1;
    let mut out = 0u128;
    for (i, d) in digits.iter().enumerate() {
        out |= (*d as u128) << (64 * i);
    }
    Some(out)
}

// Quadratic-residue tables. A value that is not a square modulo any of these
// moduli is certainly not a perfect square, so the filter is exact.
const fn square_table<const M: usize>() -> [bool; M] {
    let mut t = [false; M];
    let mut i = 0;
    while i < M {
        t[(i * i) % M] = true;
        i += 1;
    }
    t
}

static SQ64: [bool; 64] = square_table::<64>();
static SQ63: [bool; 63] = square_table::<63>();
static SQ65: [bool; 65] = square_table::<65>();
static SQ11: [bool; 11] = square_table::<11>();

#[inline]
fn passes_square_residue_filter(n: u128) -> bool {
    SQ64[(n & 63) as usize]
        && SQ63[(n % 63) as usize]
        && SQ65[(n % 65) as usize]
        && SQ11[(n % 11) as usize]
}

fn passes_square_residue_filter_big(n: &ExactInt) -> bool {
    // 64 * 63 * 65 * 11 fits comfortably in a u64
    const PRODUCT: u64 = 64 * 63 * 65 * 11;
    let r = (n % ExactInt::from(PRODUCT))
        .to_u64_digits()
        .1
        .first()
        .copied()
        .unwrap_or(0);
    passes_square_residue_filter(r as u128)
}

/// Floor square root of a `u64`.
#[inline]
pub fn isqrt_u64(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let bits = 64 - n.leading_zeros();
    let mut x = 1u64 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Floor square root of a `u128`.
#[inline]
pub fn isqrt_u128(n: u128) -> u128 {
    if n <= u64::MAX as u128 {
        return isqrt_u64(n as u64) as u128;
    }
    let bits = 128 - n.leading_zeros();
    let mut x = 1u128 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Exact square root of a `u128`, or `None` when it is not a perfect square.
#[inline]
pub fn exact_sqrt_u128(n: u128) -> Option<u128> {
    if !passes_square_residue_filter(n) {
        return None;
    }
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

/// Binary gcd on machine words.
#[inline]
pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Number of ordered pairs `(x, y)` in `[1, n]^2` with `gcd(x, y) == 1`.
///
/// Computed as `2 * (phi(1) + ... + phi(n)) - 1` from a totient sieve.
pub fn coprime_pair_count(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let n = n as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            let mut k = p;
            while k <= n {
                phi[k] -= phi[k] / p as u64;
                k += p;
            }
        }
    }
    2 * phi[1..].iter().sum::<u64>() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt_exact(&big(0)).unwrap(), Some(big(0)));
        assert_eq!(isqrt_exact(&big(15184)).unwrap(), None);
        assert_eq!(isqrt_exact(&big(9409)).unwrap(), Some(big(97)));
        assert_eq!(isqrt_exact(&big(121)).unwrap(), Some(big(11)));
    }

    #[test]
    fn isqrt_negative_is_domain_error() {
        assert!(matches!(
            isqrt_exact(&big(-4)),
            Err(DomainError::NegativeRadicand(_))
        ));
    }

    #[test]
    fn isqrt_agrees_with_scan_up_to_a_million() {
        // brute-force oracle: walk r upward and compare every n in [0, 10^6]
        let mut r = 0u64;
        for n in 0..=1_000_000u64 {
            while (r + 1) * (r + 1) <= n {
                r += 1;
            }
            let expected = (r * r == n).then(|| big(r as i64));
            assert_eq!(isqrt_exact(&big(n as i64)).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn isqrt_wide_values() {
        // (2^100 + 7)^2 and its neighbours exercise the arbitrary-precision path
        let root: ExactInt = (ExactInt::one() << 100u32) + 7;
        let sq = &root * &root;
        assert_eq!(isqrt_exact(&sq).unwrap(), Some(root.clone()));
        assert_eq!(isqrt_exact(&(&sq + 1)).unwrap(), None);
        assert_eq!(isqrt_exact(&(&sq - 1)).unwrap(), None);
        assert_eq!(isqrt_floor(&(&sq - 1)), &root - 1);
        let u = u128::MAX;
        let r = isqrt_u128(u);
        assert!(r * r <= u && (r + 1).checked_mul(r + 1).is_none());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&big(6), &big(35)), big(1));
        assert_eq!(gcd(&big(2), &big(4)), big(2));
        assert_eq!(gcd(&big(0), &big(7)), big(7));
        assert_eq!(gcd(&big(0), &big(0)), big(0));
        assert_eq!(gcd(&big(-12), &big(18)), big(6));
        assert_eq!(gcd_u64(0, 0), 0);
        assert_eq!(gcd_u64(48, 180), 12);
    }

    #[test]
    fn gcd_divides_and_is_greatest() {
        for a in -500i64..=500 {
            for b in -500i64..=500 {
                let g = gcd(&big(a), &big(b));
                assert!(!g.is_negative());
                if g.is_zero() {
                    assert_eq!((a, b), (0, 0));
                    continue;
                }
                assert!((big(a) % &g).is_zero() && (big(b) % &g).is_zero());
                if a >= 0 && b > 0 {
                    assert_eq!(
                        gcd_u64(a as u64, b as u64),
                        g.to_string().parse::<u64>().unwrap()
                    );
                }
            }
        }
        // any common divisor divides the gcd (sampled)
        for a in -60i64..=60 {
            for b in -60i64..=60 {
                let g = gcd(&big(a), &big(b));
                for k in 1i64..=60 {
                    if a % k == 0 && b % k == 0 {
                        assert!((&g % big(k)).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn rational_root_examples() {
        let q = |n: i64, d: i64| ExactRational::new(big(n), big(d));
        assert_eq!(rational_square_root(&q(97, 4)).unwrap(), None);
        assert_eq!(rational_square_root(&q(16, 1)).unwrap(), Some(q(4, 1)));
        assert_eq!(rational_square_root(&q(9409, 4)).unwrap(), Some(q(97, 2)));
        assert!(rational_square_root(&q(-1, 4)).is_err());
        // unreduced input still works because Ratio reduces on construction
        assert_eq!(rational_square_root(&q(36, 16)).unwrap(), Some(q(3, 2)));
    }

    #[test]
    fn coprime_pair_count_matches_scan() {
        for n in 0..=40u64 {
            let mut count = 0;
            for x in 1..=n {
                for y in 1..=n {
                    if gcd_u64(x, y) == 1 {
                        count += 1;
                    }
                }
            }
            assert_eq!(coprime_pair_count(n), count);
        }
        assert_eq!(coprime_pair_count(10), 63);
    }
}
