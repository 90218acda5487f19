//! Prime fields, exact integer binomials and Lucas-reduced binomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime characteristic. Primality is checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(value: u32) -> Result<Self> {
        if is_prime(value as u64) {
            Ok(Prime(value))
        } else {
            Err(Error::NotPrime(value as u64))
        }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub(crate) fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.0 as u64) as u32
    }

    #[inline]
    pub(crate) fn sub(self, a: u32, b: u32) -> u32 {
        let p = self.0 as u64;
        ((a as u64 + p - b as u64) % p) as u32
    }

    #[inline]
    pub(crate) fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub(crate) fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub(crate) fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue, by Fermat.
    #[inline]
    pub(crate) fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 as u64 - 2)
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(v: u32) -> Result<Self> {
        Prime::new(v)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= v {
        if v.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_p`. The residue is always fully reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElement {
    residue: u32,
    modulus: Prime,
}

impl FpElement {
    pub fn new(value: i64, modulus: Prime) -> Self {
        FpElement { residue: modulus.reduce(value), modulus }
    }

    pub fn zero(modulus: Prime) -> Self {
        FpElement { residue: 0, modulus }
    }

    pub fn one(modulus: Prime) -> Self {
        FpElement { residue: 1 % modulus.value(), modulus }
    }

    pub(crate) fn from_residue(residue: u32, modulus: Prime) -> Self {
        debug_assert!(residue < modulus.value());
        FpElement { residue, modulus }
    }

    #[inline]
    pub fn residue(self) -> u32 {
        self.residue
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(FpElement { residue: self.modulus.inv(self.residue), modulus: self.modulus })
        }
    }

    pub fn pow(self, exp: u64) -> Self {
        FpElement { residue: self.modulus.pow(self.residue, exp), modulus: self.modulus }
    }

    fn same_field(self, other: Self) -> Prime {
        assert_eq!(self.modulus, other.modulus, "mixed characteristics in F_p arithmetic");
        self.modulus
    }
}

impl Add for FpElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let p = self.same_field(rhs);
        FpElement { residue: p.add(self.residue, rhs.residue), modulus: p }
    }
}

impl Sub for FpElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let p = self.same_field(rhs);
        FpElement { residue: p.sub(self.residue, rhs.residue), modulus: p }
    }
}

impl Mul for FpElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = self.same_field(rhs);
        FpElement { residue: p.mul(self.residue, rhs.residue), modulus: p }
    }
}

impl Neg for FpElement {
    type Output = Self;
    fn neg(self) -> Self {
        FpElement { residue: self.modulus.neg(self.residue), modulus: self.modulus }
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

/// Exact binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
///
/// Panics if the result does not fit in 64 bits (not reachable for `n <= 62`).
pub fn binomial(n: u64, k: i64) -> u64 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// `C(n, k) mod p` as the product of digit binomials in base `p` (Lucas).
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: Prime) -> FpElement {
    let pv = p.value() as u64;
    let mut acc = 1 % p.value();
    while k > 0 || n > 0 {
        let (nd, kd) = ((n % pv) as u32, (k % pv) as u32);
        if kd > nd {
            return FpElement::zero(p);
        }
        acc = p.mul(acc, small_binomial_mod_p(nd, kd, p));
        n /= pv;
        k /= pv;
    }
    FpElement::from_residue(acc, p)
}

// Requires k <= n < p, so every factor below is a unit.
fn small_binomial_mod_p(n: u32, k: u32, p: Prime) -> u32 {
    let k = k.min(n - k);
    let mut num = 1;
    let mut den = 1;
    for i in 0..k {
        num = p.mul(num, n - i);
        den = p.mul(den, i + 1);
    }
    p.mul(num, p.inv(den))
}

/// Checks `C(pm + p - 1, pn + p - 1) == C(m, n)` in `F_p`.
pub fn lucas_shift_identity_check(m: u64, n: u64, p: Prime) -> bool {
    let pv = p.value() as u64;
    binomial_mod_p(pv * m + pv - 1, pv * n + pv - 1, p) == binomial_mod_p(m, n, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn primality_gate() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(7).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(0), Err(Error::NotPrime(0)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(4, 7), 0);
        assert_eq!(binomial(4, -1), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binomial_mod_p(7, 3, p(2)).residue(), 1);
        assert_eq!(binomial_mod_p(5, 3, p(3)).residue(), 1);
        for q in [2, 3, 5, 7] {
            assert_eq!(binomial_mod_p(13, 0, p(q)).residue(), 1);
        }
    }

    #[test]
    fn lucas_matches_integer_binomial() {
        for q in [2, 3, 5, 7] {
            for n in 0..=60u64 {
                for k in 0..=n {
                    let expected = (binomial(n, k as i64) % q as u64) as u32;
                    assert_eq!(binomial_mod_p(n, k, p(q)).residue(), expected, "C({n},{k}) mod {q}");
                }
            }
        }
    }

    #[test]
    fn lucas_shift_examples() {
        assert!(lucas_shift_identity_check(3, 1, p(2)));
        assert!(lucas_shift_identity_check(4, 2, p(3)));
        for q in [2, 3, 5, 7] {
            assert!(lucas_shift_identity_check(0, 0, p(q)));
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 5, 7] {
            let f = p(q);
            let elems: Vec<_> = (0..q as i64).map(|v| FpElement::new(v, f)).collect();
            let zero = FpElement::zero(f);
            let one = FpElement::one(f);
            for &a in &elems {
                assert_eq!(a + zero, a);
                assert_eq!(a * one, a);
                assert_eq!(a + (-a), zero);
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), one);
                } else {
                    assert!(a.inv().is_none());
                }
                for &b in &elems {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    assert_eq!(a - b, a + (-b));
                    for &c in &elems {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
        }
    }

    #[test]
    fn negative_values_reduce() {
        assert_eq!(FpElement::new(-1, p(5)).residue(), 4);
        assert_eq!(FpElement::new(-10, p(5)).residue(), 0);
    }
}
