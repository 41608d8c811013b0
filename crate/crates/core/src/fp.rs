//! Scalar arithmetic in the prime field `F_p`.
//!
//! Elements are represented as `u64` values in `0..p`. The modulus travels
//! in an [`Fp`] context value rather than in every scalar, which keeps the
//! element type a plain machine word. All products go through `u128` so no
//! intermediate can wrap for any prime below `2^63`.

use alloc::format;
use alloc::string::String;

/// Deterministic primality test by trial division.
///
/// The moduli in this crate are small (single digits to a few hundred), so
/// trial division up to `sqrt(n)` is exact and instant.
#[must_use]
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic context for the field `F_p`.
///
/// Construction asserts primality; operations assume operands are already
/// reduced into `0..p` (every constructor in this crate reduces on entry).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// Creates the context, panicking if `p` is not prime.
    ///
    /// User-facing entry points validate with [`is_prime`] first and report
    /// a proper error; this assertion is the last line of defense.
    #[must_use]
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "modulus {p} is not prime");
        assert!(
            p < (1 << 62),
            "modulus {p} too large for checked arithmetic"
        );
        Self { p }
    }

    #[must_use]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[must_use]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[must_use]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[must_use]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[must_use]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((u128::from(a) * u128::from(b)) % u128::from(self.p)) as u64
    }

    /// Reduces an arbitrary signed integer into `0..p`.
    #[must_use]
    pub fn from_i64(&self, a: i64) -> u64 {
        let p = self.p as i64;
        let r = a.rem_euclid(p);
        r as u64
    }

    #[must_use]
    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat: `a^(p-2)`.
    ///
    /// Panics on `a = 0`; callers check for zero pivots before inverting.
    #[must_use]
    pub fn inv(&self, a: u64) -> u64 {
        assert!(
            !a.is_multiple_of(self.p),
            "division by zero in F_{}",
            self.p
        );
        self.pow(a, self.p - 2)
    }

    /// Renders a scalar, used by diagnostics.
    #[must_use]
    pub fn render(&self, a: u64) -> String {
        format!("{a}")
    }
}
