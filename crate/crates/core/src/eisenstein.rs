//! Level-1 building blocks: Bernoulli numbers, Eisenstein series, the
//! discriminant, the Delta-product forms `F_ell`, and the weight-raising
//! form `R` with `R = theta f (mod ell)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{FormError, SeriesError, SpecError};
use crate::product::{expand_product, ProductSpec};
use crate::ring::{PrimeField, Rationals, Ring};
use crate::series::TruncatedSeries;

pub type Rational = BigRational;

/// A q-expansion tagged with the weight and level of the form it represents.
#[derive(Clone, Debug)]
pub struct FormWithWeight<R: Ring> {
    pub series: TruncatedSeries<R>,
    pub weight: i64,
    pub level: u64,
}

impl<R: Ring> FormWithWeight<R> {
    pub fn new(series: TruncatedSeries<R>, weight: i64, level: u64) -> Self {
        Self { series, weight, level }
    }

    pub fn reduce_mod(&self, ell: u64) -> Result<FormWithWeight<PrimeField>, SeriesError> {
        Ok(FormWithWeight::new(
            self.series.reduce_mod(ell)?,
            self.weight,
            self.level,
        ))
    }

    pub fn change_ring<S: Ring>(&self, target: S) -> Result<FormWithWeight<S>, SeriesError> {
        Ok(FormWithWeight::new(
            self.series.change_ring(target)?,
            self.weight,
            self.level,
        ))
    }

    /// Product of forms: weights add, levels combine by lcm.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        use num_integer::Integer;
        Ok(Self::new(
            self.series.mul(&other.series)?,
            self.weight + other.weight,
            self.level.lcm(&other.level),
        ))
    }

    pub fn pow(&self, k: u32) -> Result<Self, SeriesError> {
        Ok(Self::new(
            self.series.pow(k as i64)?,
            self.weight * k as i64,
            self.level,
        ))
    }
}

/// Exact Bernoulli number `B_m` (with `B_1 = -1/2`), from the recurrence
/// `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli(m: u64) -> Result<Rational, FormError> {
    if m > 1 && m % 2 == 1 {
        return Err(FormError::OddBernoulliIndex(m));
    }
    Ok(bernoulli_table(m as usize).pop().expect("table has m + 1 entries"))
}

fn bernoulli_table(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for n in 1..=m {
        // binom(n+1, k) for k = 0..n, built incrementally
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += bk * Rational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// `E_w = 1 - (2w / B_w) sum_{n>=1} sigma_{w-1}(n) q^n` for even `w >= 2`.
///
/// Fails when the normalizing constant has no image in `ring` (for example
/// `E_12` over the integers, or over `F_691`).
pub fn eisenstein<R: Ring>(ring: R, weight: u64, precision: i64) -> Result<FormWithWeight<R>, FormError> {
    if weight < 2 || weight % 2 == 1 {
        return Err(FormError::BadWeight(weight as i64));
    }
    if precision < 1 {
        return Err(SeriesError::PrecisionTooSmall { min: 1, got: precision }.into());
    }
    let b = bernoulli(weight)?;
    let scale = -Rational::from_integer(BigInt::from(2 * weight)) / b;
    let scale = ring
        .from_rational(&scale)
        .ok_or(FormError::NonIntegralNormalization { weight })?;
    let p = precision as usize;
    let mut sigma = vec![ring.zero(); p];
    for d in 1..p {
        let dk = ring.pow_u64(&ring.from_i64(d as i64), weight - 1);
        for m in (d..p).step_by(d) {
            ring.add_assign(&mut sigma[m], &dk);
        }
    }
    let mut coeffs: Vec<R::Elem> = sigma.iter().map(|s| ring.mul(s, &scale)).collect();
    coeffs[0] = ring.one();
    Ok(FormWithWeight::new(
        TruncatedSeries::from_parts(ring, 0, coeffs),
        weight as i64,
        1,
    ))
}

/// `Delta = q prod (1 - q^n)^24`, weight 12, level 1.
pub fn delta<R: Ring>(ring: R, precision: i64) -> Result<FormWithWeight<R>, FormError> {
    if precision < 2 {
        return Err(SeriesError::PrecisionTooSmall { min: 2, got: precision }.into());
    }
    let spec = ProductSpec::new([(1, 24)])?;
    let s = expand_product(ring, &spec, precision - 1)?.shift(1);
    Ok(FormWithWeight::new(s, 12, 1))
}

/// `delta_ell = (ell^2 - 1) / 24`, defined for primes `ell > 3`.
pub fn delta_ell(ell: u64) -> Option<u64> {
    (ell > 3).then(|| (ell * ell - 1) / 24)
}

/// `F_ell = (prod_i Delta(a_i z))^delta_ell` for a product `prod 1/(1-q^(a_i n))`.
///
/// The result has weight `j (ell^2 - 1) / 2`, level `lcm(a_i)`, offset
/// `delta_ell * sum a_i` and leading coefficient 1; it is known below
/// `precision`.
pub fn build_f<R: Ring>(ring: R, spec: &ProductSpec, ell: u64, precision: i64) -> Result<FormWithWeight<R>, FormError> {
    let delta = delta_ell(ell).ok_or(FormError::PrimeTooSmall { ell, min: 5 })?;
    if !crate::ring::is_prime(ell) {
        return Err(SeriesError::NotPrime(ell).into());
    }
    let (j, part_sum) = match (spec.j(), spec.part_sum()) {
        (Some(j), Some(s)) => (j, s),
        _ => return Err(SpecError::NotPartitionClass(spec.to_string()).into()),
    };
    let offset = (delta * part_sum) as i64;
    if precision <= offset {
        return Err(SeriesError::PrecisionTooSmall {
            min: offset + 1,
            got: precision,
        }
        .into());
    }
    let body = expand_product(ring, &spec.scaled(-24 * delta as i64), precision - offset)?;
    Ok(FormWithWeight::new(
        body.shift(offset),
        (j * (ell * ell - 1) / 2) as i64,
        spec.level(),
    ))
}

/// `R = (theta f - (k/12) E_2 f) E_{ell-1} + (k/12) E_{ell+1} f`, a form of
/// weight `k + ell + 1` congruent to `theta f` mod `ell`.
///
/// Each term carries the rational prefactor `k/12` (or 1), mapped into
/// `ring` at runtime; over the integers this fails unless `12 | k`, so
/// callers wanting an integral check should work over [`Rationals`] and
/// reduce, as [`compute_r_mod`] does.
pub fn compute_r<R: Ring>(f: &FormWithWeight<R>, ell: u64, precision: i64) -> Result<FormWithWeight<R>, FormError> {
    if ell < 5 {
        return Err(FormError::PrimeTooSmall { ell, min: 5 });
    }
    if !crate::ring::is_prime(ell) {
        return Err(SeriesError::NotPrime(ell).into());
    }
    let ring = f.series.ring().clone();
    let k = f.weight;
    let prec = precision.min(f.series.precision());
    let fs = f.series.truncate(prec);
    let eis_prec = prec.max(1);
    let e2 = eisenstein(ring.clone(), 2, eis_prec)?.series;
    let e_minus = eisenstein(ring.clone(), ell - 1, eis_prec)?.series;
    let e_plus = eisenstein(ring.clone(), ell + 1, eis_prec)?.series;
    let k12 = Rational::new(BigInt::from(k), BigInt::from(12));
    let k12 = ring
        .from_rational(&k12)
        .ok_or(FormError::NonIntegralNormalization { weight: 12 })?;

    let inner = fs.theta().sub(&e2.mul(&fs)?.scale(&k12))?;
    let r = inner.mul(&e_minus)?.add(&e_plus.mul(&fs)?.scale(&k12))?;
    Ok(FormWithWeight::new(r, k + ell as i64 + 1, f.level))
}

/// [`compute_r`] carried out over the rationals and reduced mod `ell`; the
/// reduction fails if any assembled coefficient is not `ell`-integral.
pub fn compute_r_mod<R: Ring>(
    f: &FormWithWeight<R>,
    ell: u64,
    precision: i64,
) -> Result<FormWithWeight<PrimeField>, FormError> {
    let exact = f.change_ring(Rationals)?;
    Ok(compute_r(&exact, ell, precision)?.reduce_mod(ell)?)
}
