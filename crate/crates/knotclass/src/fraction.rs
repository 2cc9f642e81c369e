//! Extended rationals p/q with a single point at infinity, 1/0.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A reduced fraction p/q with q >= 0 and gcd(|p|, q) = 1.
/// Infinity is the unique value with q = 0 and is stored as 1/0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fraction {
    p: i64,
    q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { p: 0, q: 1 };
    pub const INFINITY: Fraction = Fraction { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Fraction {
        if q == 0 {
            assert!(p != 0, "0/0 is not a fraction");
            return Fraction::INFINITY;
        }
        let g = gcd(p, q);
        let sign = if q < 0 { -1 } else { 1 };
        Fraction {
            p: sign * p / g,
            q: sign * q / g,
        }
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    pub fn is_integer(&self) -> bool {
        self.q == 1
    }

    /// p/q + n, with infinity absorbing.
    pub fn add_int(&self, n: i64) -> Fraction {
        Fraction::new(self.p + n * self.q, self.q)
    }

    /// q/p, with 1/0 <-> 0/1.
    pub fn invert(&self) -> Fraction {
        Fraction::new(self.q, self.p)
    }

    pub fn negate(&self) -> Fraction {
        Fraction::new(-self.p, self.q)
    }

    /// Largest integer k with k <= p/q. Requires a finite value.
    pub fn floor(&self) -> i64 {
        assert!(self.q != 0);
        self.p.div_euclid(self.q)
    }

    /// Fractional part in [0, 1).
    pub fn fract(&self) -> Fraction {
        self.add_int(-self.floor())
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}
