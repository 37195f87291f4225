//! Coefficient rings for truncated q-series.
//!
//! A series is generic over a [`Ring`], which carries whatever runtime
//! context its elements need (the prime for [`PrimeField`]). The exact
//! rings [`Integers`] and [`Rationals`] are backed by `num-bigint` and
//! `num-rational`; residues mod a word-sized prime are plain `u64`.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::SeriesError;

/// Arithmetic context for series coefficients.
///
/// Every operation is exact. There is no floating point anywhere.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + Display + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// Image of a rational number, or `None` when its denominator is not
    /// invertible in this ring.
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem>;

    /// Canonical rational lift. Residues lift to their representative in `[0, p)`.
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    /// Multiplicative inverse of a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `a / n` when the quotient exists in this ring.
    fn div_exact_i64(&self, a: &Self::Elem, n: i64) -> Option<Self::Elem>;

    /// `Some(p)` for residue rings, `None` in characteristic zero.
    fn characteristic(&self) -> Option<u64>;

    /// Whether `a` is in the normal form this ring expects.
    fn is_canonical(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn mul_i64(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(k))
    }

    fn pow_u64(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The first `len` coefficients of the product of `a` and `b`.
    fn convolve_naive(&self, a: &[Self::Elem], b: &[Self::Elem], len: usize) -> Vec<Self::Elem> {
        let mut out = vec![self.zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if self.is_zero(y) {
                    continue;
                }
                let t = self.mul(x, y);
                self.add_assign(&mut out[i + j], &t);
            }
        }
        out
    }
}

/// The ring of integers with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn from_rational(&self, r: &BigRational) -> Option<BigInt> {
        r.is_integer().then(|| r.to_integer())
    }
    fn to_rational(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        a.abs().is_one().then(|| a.clone())
    }
    fn div_exact_i64(&self, a: &BigInt, n: i64) -> Option<BigInt> {
        if n == 0 {
            return None;
        }
        let (q, r) = a.div_rem(&BigInt::from(n));
        r.is_zero().then_some(q)
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
    fn mul_i64(&self, a: &BigInt, k: i64) -> BigInt {
        a * k
    }
}

/// The field of rationals; elements are kept in lowest terms with a
/// positive denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, r: &BigRational) -> Option<BigRational> {
        Some(r.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn div_exact_i64(&self, a: &BigRational, n: i64) -> Option<BigRational> {
        (n != 0).then(|| a / BigRational::from_integer(BigInt::from(n)))
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }
}

/// Residues modulo a prime `p < 2^32`, stored as `u64` in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, SeriesError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(SeriesError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }
    fn from_rational(&self, r: &BigRational) -> Option<u64> {
        let den = self.from_bigint(r.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.from_bigint(r.numer()), &inv))
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            return None;
        }
        Some(self.pow_u64(a, self.p - 2))
    }
    fn div_exact_i64(&self, a: &u64, n: i64) -> Option<u64> {
        let d = self.inv(&self.reduce_i64(n))?;
        Some(self.mul(a, &d))
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.p)
    }
    fn is_canonical(&self, a: &u64) -> bool {
        *a < self.p
    }
    fn mul_i64(&self, a: &u64, k: i64) -> u64 {
        a * self.reduce_i64(k) % self.p
    }

    // Residues are below 2^32, so each product fits in u64 and a u128
    // accumulator never overflows.
    fn convolve_naive(&self, a: &[u64], b: &[u64], len: usize) -> Vec<u64> {
        let mut acc = vec![0u128; len];
        for (i, &x) in a.iter().enumerate().take(len) {
            if x == 0 {
                continue;
            }
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot += (x * y) as u128;
            }
        }
        acc.into_iter().map(|s| (s % self.p as u128) as u64).collect()
    }
}

/// Deterministic trial-division primality test; adequate for the word-sized
/// primes this crate works with.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `lo..=hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
