//! Truncated q-expansions with exact coefficients and precision tracking.
//!
//! A [`TruncatedSeries`] stores the coefficients of `q^offset .. q^(precision-1)`.
//! Everything below `offset` is known to be zero; everything at or above
//! `precision` is unknown. Operations return the tightest precision that
//! can be proven from their inputs.

use std::cmp::{max, min};
use std::fmt;

use crate::error::SeriesError;
use crate::ring::{Integers, PrimeField, Ring};

/// Below this length products use the schoolbook convolution.
const KARATSUBA_THRESHOLD: usize = 48;

#[derive(Clone, Debug)]
pub struct TruncatedSeries<R: Ring> {
    ring: R,
    offset: i64,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Series `sum coeffs[i] q^(offset+i)` known below `offset + coeffs.len()`.
    pub fn new(ring: R, offset: i64, coeffs: Vec<R::Elem>) -> Result<Self, SeriesError> {
        if let Some(i) = coeffs.iter().position(|c| !ring.is_canonical(c)) {
            return Err(SeriesError::NonCanonical(i));
        }
        Ok(Self { ring, offset, coeffs })
    }

    pub(crate) fn from_parts(ring: R, offset: i64, coeffs: Vec<R::Elem>) -> Self {
        debug_assert!(coeffs.iter().all(|c| ring.is_canonical(c)));
        Self { ring, offset, coeffs }
    }

    pub fn from_i64s(ring: R, offset: i64, values: &[i64]) -> Self {
        let coeffs = values.iter().map(|&v| ring.from_i64(v)).collect();
        Self { ring, offset, coeffs }
    }

    /// The zero series known on `offset..precision`.
    pub fn zero(ring: R, offset: i64, precision: i64) -> Self {
        let len = (precision - offset).max(0) as usize;
        let coeffs = vec![ring.zero(); len];
        Self { ring, offset, coeffs }
    }

    /// The constant 1, known below `precision`.
    pub fn one(ring: R, precision: i64) -> Self {
        Self::monomial(ring.clone(), ring.one(), 0, precision)
    }

    /// `c q^exponent`, known below `precision`.
    pub fn monomial(ring: R, c: R::Elem, exponent: i64, precision: i64) -> Self {
        let mut s = Self::zero(ring, exponent, max(precision, exponent));
        if let Some(slot) = s.coeffs.first_mut() {
            *slot = c;
        }
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Exclusive upper bound of the known exponents.
    pub fn precision(&self) -> i64 {
        self.offset + self.coeffs.len() as i64
    }

    /// The prime modulus, if coefficients are residues.
    pub fn modulus(&self) -> Option<u64> {
        self.ring.characteristic()
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// `(exponent, coefficient)` pairs over the stored range.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &R::Elem)> + '_ {
        (self.offset..).zip(self.coeffs.iter())
    }

    /// Coefficient of `q^n`; zero below the offset, an error at or above the precision.
    pub fn coeff(&self, n: i64) -> Result<R::Elem, SeriesError> {
        if n >= self.precision() {
            return Err(SeriesError::PrecisionShortfall {
                exponent: n,
                precision: self.precision(),
            });
        }
        if n < self.offset {
            return Ok(self.ring.zero());
        }
        Ok(self.coeffs[(n - self.offset) as usize].clone())
    }

    /// Exponent of the first nonzero stored coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !self.ring.is_zero(c))
            .map(|i| self.offset + i as i64)
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    fn valuation_or_precision(&self) -> i64 {
        self.valuation().unwrap_or_else(|| self.precision())
    }

    /// Forget coefficients at or above `precision`.
    pub fn truncate(&self, precision: i64) -> Self {
        let p = min(precision, self.precision());
        let mut out = self.clone();
        if p <= self.offset {
            out.offset = p;
            out.coeffs.clear();
        } else {
            out.coeffs.truncate((p - self.offset) as usize);
        }
        out
    }

    /// Equality on the common known range: both series are known below
    /// the smaller precision, and they must agree there.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// Least exponent below the common precision where the two series differ.
    pub fn first_disagreement(&self, other: &Self) -> Option<i64> {
        let top = min(self.precision(), other.precision());
        let bottom = min(self.offset, other.offset);
        (bottom..top).find(|&n| {
            let a = self.coeff(n).expect("below precision");
            let b = other.coeff(n).expect("below precision");
            a != b
        })
    }

    fn check_ring(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring != other.ring {
            return Err(SeriesError::ModulusMismatch {
                left: self.modulus(),
                right: other.modulus(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let offset = min(self.offset, other.offset);
        let precision = min(self.precision(), other.precision());
        let coeffs = (offset..max(offset, precision))
            .map(|n| op(&self.coeff(n).unwrap(), &other.coeff(n).unwrap()))
            .collect();
        Ok(Self::from_parts(self.ring.clone(), offset, coeffs))
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip_with(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip_with(other, |a, b| self.ring.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| self.ring.neg(c))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map_coeffs(|_, x| self.ring.mul(x, c))
    }

    fn map_coeffs(&self, f: impl Fn(i64, &R::Elem) -> R::Elem) -> Self {
        let coeffs = self.iter().map(|(n, c)| f(n, c)).collect();
        Self::from_parts(self.ring.clone(), self.offset, coeffs)
    }

    /// Product, known below `min(P_a + v_b, P_b + v_a)` where `v` is the valuation.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let va = self.valuation_or_precision();
        let vb = other.valuation_or_precision();
        let precision = min(self.precision() + vb, other.precision() + va);
        let offset = self.offset + other.offset;
        let mut coeffs = vec![self.ring.zero(); (precision - offset) as usize];
        let len = (precision - va - vb).max(0) as usize;
        if len > 0 {
            let a = &self.coeffs[(va - self.offset) as usize..];
            let b = &other.coeffs[(vb - other.offset) as usize..];
            let prod = convolve(&self.ring, &a[..min(len, a.len())], &b[..min(len, b.len())], len);
            let start = (va + vb - offset) as usize;
            for (slot, c) in coeffs[start..].iter_mut().zip(prod) {
                *slot = c;
            }
        }
        Ok(Self::from_parts(self.ring.clone(), offset, coeffs))
    }

    /// Multiplicative inverse; the lowest nonzero coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::NotInvertible)?;
        let unit = &self.coeffs[(v - self.offset) as usize..];
        let lead_inv = self.ring.inv(&unit[0]).ok_or(SeriesError::NotInvertible)?;
        let len = unit.len();
        let mut g: Vec<R::Elem> = Vec::with_capacity(len);
        g.push(lead_inv.clone());
        for n in 1..len {
            let mut acc = self.ring.zero();
            for k in 1..=n {
                if !self.ring.is_zero(&unit[k]) {
                    let t = self.ring.mul(&unit[k], &g[n - k]);
                    self.ring.add_assign(&mut acc, &t);
                }
            }
            g.push(self.ring.neg(&self.ring.mul(&acc, &lead_inv)));
        }
        Ok(Self::from_parts(self.ring.clone(), -v, g))
    }

    /// `self^k`. Negative powers go through [`inverse`](Self::inverse). In
    /// characteristic `p`, factors of `p` in the exponent are taken by the
    /// Frobenius substitution `q -> q^p`, which is exact and keeps the full
    /// precision.
    pub fn pow(&self, k: i64) -> Result<Self, SeriesError> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        if k == 0 {
            let v = self.valuation_or_precision();
            return Ok(Self::one(self.ring.clone(), self.precision() - v));
        }
        if let Some(p) = self.ring.characteristic() {
            let p = p as i64;
            if k % p == 0 {
                return Ok(self.pow(k / p)?.dilate(p as u64));
            }
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc.expect("k > 0"))
    }

    /// `sum n c(n) q^n`.
    pub fn theta(&self) -> Self {
        self.map_coeffs(|n, c| self.ring.mul_i64(c, n))
    }

    /// `theta` applied `times` times.
    pub fn theta_pow(&self, times: u64) -> Self {
        (0..times).fold(self.clone(), |f, _| f.theta())
    }

    /// `sum c(ell n) q^n`.
    pub fn u_operator(&self, ell: u64) -> Result<Self, SeriesError> {
        if ell < 2 {
            return Err(SeriesError::BadOperatorIndex(ell));
        }
        let l = ell as i64;
        let offset = -((-self.offset).div_euclid(l));
        let precision = (self.precision() - 1).div_euclid(l) + 1;
        let coeffs = (offset..precision)
            .map(|n| self.coeffs[(l * n - self.offset) as usize].clone())
            .collect();
        Ok(Self::from_parts(self.ring.clone(), offset, coeffs))
    }

    /// `sum c(ell n + r) q^n` for `0 <= r < ell`.
    pub fn ap_extract(&self, ell: u64, r: i64) -> Result<Self, SeriesError> {
        if r < 0 || r >= ell as i64 {
            return Err(SeriesError::ResidueOutOfRange { r, modulus: ell });
        }
        self.shift(-r).u_operator(ell)
    }

    /// Multiply by `q^s`.
    pub fn shift(&self, s: i64) -> Self {
        let mut out = self.clone();
        out.offset += s;
        out
    }

    /// `f(q^d)`, known below `d * precision`.
    pub fn dilate(&self, d: u64) -> Self {
        assert!(d >= 1, "dilation factor must be positive");
        if d == 1 {
            return self.clone();
        }
        let d = d as usize;
        let len = self.coeffs.len() * d;
        let mut coeffs = vec![self.ring.zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        Self::from_parts(self.ring.clone(), self.offset * d as i64, coeffs)
    }

    /// Coefficientwise image in `F_ell`. Fails if a coefficient has a
    /// denominator divisible by `ell`, or if the series already lives mod a
    /// different prime.
    pub fn reduce_mod(&self, ell: u64) -> Result<TruncatedSeries<PrimeField>, SeriesError> {
        let field = PrimeField::new(ell)?;
        match self.modulus() {
            Some(p) if p != ell => {
                return Err(SeriesError::ModulusMismatch {
                    left: Some(p),
                    right: Some(ell),
                })
            }
            _ => {}
        }
        let coeffs = self
            .iter()
            .map(|(n, c)| {
                field
                    .from_rational(&self.ring.to_rational(c))
                    .ok_or(SeriesError::NotIntegral {
                        exponent: n,
                        prime: ell,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries::from_parts(field, self.offset, coeffs))
    }

    /// Move the coefficients into another ring, failing where a coefficient
    /// has no image.
    pub fn change_ring<S: Ring>(&self, target: S) -> Result<TruncatedSeries<S>, SeriesError> {
        let coeffs = self
            .iter()
            .map(|(n, c)| {
                target
                    .from_rational(&self.ring.to_rational(c))
                    .ok_or(SeriesError::NotIntegral {
                        exponent: n,
                        prime: target.characteristic().unwrap_or(0),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries::from_parts(target, self.offset, coeffs))
    }
}

impl TruncatedSeries<Integers> {
    pub fn from_integers(offset: i64, values: &[i64]) -> Self {
        Self::from_i64s(Integers, offset, values)
    }
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.iter() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{n}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.precision())
    }
}

/// First `len` coefficients of `a * b`.
pub(crate) fn convolve<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], len: usize) -> Vec<R::Elem> {
    let a = &a[..min(a.len(), len)];
    let b = &b[..min(b.len(), len)];
    if min(a.len(), b.len()) < KARATSUBA_THRESHOLD {
        return ring.convolve_naive(a, b, len);
    }
    let mut full = karatsuba(ring, a, b);
    full.resize(len, ring.zero());
    full.truncate(len);
    full
}

/// Full product of two coefficient slices.
fn karatsuba<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let full_len = a.len() + b.len() - 1;
    if min(a.len(), b.len()) < KARATSUBA_THRESHOLD {
        return ring.convolve_naive(a, b, full_len);
    }
    let half = max(a.len(), b.len()) / 2;
    let (a0, a1) = a.split_at(min(half, a.len()));
    let (b0, b1) = b.split_at(min(half, b.len()));
    let z0 = karatsuba(ring, a0, b0);
    let z2 = karatsuba(ring, a1, b1);
    let sa = add_slices(ring, a0, a1);
    let sb = add_slices(ring, b0, b1);
    let mut z1 = karatsuba(ring, &sa, &sb);
    for (i, c) in z0.iter().enumerate() {
        z1[i] = ring.sub(&z1[i], c);
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] = ring.sub(&z1[i], c);
    }
    let mut out = vec![ring.zero(); full_len];
    for (i, c) in z0.into_iter().enumerate() {
        ring.add_assign(&mut out[i], &c);
    }
    for (i, c) in z1.into_iter().enumerate() {
        if i + half < full_len {
            ring.add_assign(&mut out[i + half], &c);
        }
    }
    for (i, c) in z2.into_iter().enumerate() {
        ring.add_assign(&mut out[i + 2 * half], &c);
    }
    out
}

fn add_slices<R: Ring>(ring: &R, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
    let n = max(x.len(), y.len());
    (0..n)
        .map(|i| match (x.get(i), y.get(i)) {
            (Some(a), Some(b)) => ring.add(a, b),
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}
