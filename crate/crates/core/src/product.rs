//! Eta-product specifications and their q-expansions.
//!
//! A [`ProductSpec`] describes `prod_d prod_{n>=1} (1 - q^(d n))^(e_d)`.
//! The text form is a whitespace-separated list of `d^e` tokens; `"1^-1 2^-1"`
//! counts partitions whose even parts come in two colours.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{SeriesError, SpecError};
use crate::ring::Ring;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ProductSpec {
    /// `(d, e)` sorted by `d`, distinct `d`, no zero `e`.
    factors: Vec<(u64, i64)>,
}

impl ProductSpec {
    /// Normalizes the factor list: duplicate bases are merged by summing
    /// exponents and factors whose exponent sums to zero are dropped.
    pub fn new(factors: impl IntoIterator<Item = (u64, i64)>) -> Result<Self, SpecError> {
        let mut merged: BTreeMap<u64, i64> = BTreeMap::new();
        for (d, e) in factors {
            if d == 0 {
                return Err(SpecError::NonPositiveBase(0));
            }
            if e == 0 {
                return Err(SpecError::ZeroExponent(d));
            }
            *merged.entry(d).or_insert(0) += e;
        }
        Ok(Self {
            factors: merged.into_iter().filter(|&(_, e)| e != 0).collect(),
        })
    }

    /// `prod 1/(1 - q^(a_i n))` for the parts `a_i`.
    pub fn from_parts(parts: &[u64]) -> Result<Self, SpecError> {
        Self::new(parts.iter().map(|&a| (a, -1)))
    }

    /// The generating function of `c_N(n)`: `1/((q;q)_inf (q^N;q^N)_inf)`.
    pub fn c_n(n: u64) -> Self {
        Self::from_parts(&[1, n]).expect("positive parts")
    }

    /// The partition generating function `1/(q;q)_inf`.
    pub fn partitions() -> Self {
        Self { factors: vec![(1, -1)] }
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Least common multiple of the bases; 1 for the empty product.
    pub fn level(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &(d, _)| acc.lcm(&d))
    }

    /// True when every exponent is negative, i.e. the product is
    /// `prod_i prod_n 1/(1 - q^(a_i n))`.
    pub fn is_partition_class(&self) -> bool {
        !self.factors.is_empty() && self.factors.iter().all(|&(_, e)| e < 0)
    }

    /// Number of parts `j`, defined on the partition class.
    pub fn j(&self) -> Option<u64> {
        self.is_partition_class()
            .then(|| self.factors.iter().map(|&(_, e)| (-e) as u64).sum())
    }

    /// The parts `(a_1, ..., a_j)` with multiplicity, ascending.
    pub fn parts(&self) -> Option<Vec<u64>> {
        self.is_partition_class().then(|| {
            self.factors
                .iter()
                .flat_map(|&(d, e)| std::iter::repeat_n(d, (-e) as usize))
                .collect()
        })
    }

    /// `sum a_i` over the parts.
    pub fn part_sum(&self) -> Option<u64> {
        self.is_partition_class()
            .then(|| self.factors.iter().map(|&(d, e)| d * (-e) as u64).sum())
    }

    /// The same product with every exponent multiplied by `k`.
    pub fn scaled(&self, k: i64) -> Self {
        assert!(k != 0, "scale factor must be nonzero");
        Self {
            factors: self.factors.iter().map(|&(d, e)| (d, e * k)).collect(),
        }
    }

    /// Factors whose base satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(u64) -> bool) -> Self {
        Self {
            factors: self.factors.iter().copied().filter(|&(d, _)| keep(d)).collect(),
        }
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (d, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}^{e}")?;
        }
        Ok(())
    }
}

impl FromStr for ProductSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut factors = Vec::new();
        for token in s.split_whitespace() {
            let (d, e) = token
                .split_once('^')
                .ok_or_else(|| SpecError::BadToken(token.to_string()))?;
            let d: i64 = d.parse().map_err(|_| SpecError::BadToken(token.to_string()))?;
            let e: i64 = e.parse().map_err(|_| SpecError::BadToken(token.to_string()))?;
            if d <= 0 {
                return Err(SpecError::NonPositiveBase(d));
            }
            if e == 0 {
                return Err(SpecError::ZeroExponent(d as u64));
            }
            factors.push((d as u64, e));
        }
        if factors.is_empty() {
            return Err(SpecError::Empty);
        }
        Self::new(factors)
    }
}

impl TryFrom<String> for ProductSpec {
    type Error = SpecError;
    // the empty product serializes as "", which user input may not be
    fn try_from(s: String) -> Result<Self, Self::Error> {
        if s.trim().is_empty() {
            return Self::new([]);
        }
        s.parse()
    }
}

impl From<ProductSpec> for String {
    fn from(p: ProductSpec) -> String {
        p.to_string()
    }
}

/// Pentagonal-number support of `prod (1 - q^n)`: `(exponent, sign)` for
/// every exponent below `bound`, ascending.
pub fn pentagonal_terms(bound: u64) -> Vec<(u64, i64)> {
    let mut out = vec![(0u64, 1i64)];
    let mut k = 1u64;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        if g1 >= bound {
            break;
        }
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        out.push((g1, sign));
        let g2 = k * (3 * k + 1) / 2;
        if g2 < bound {
            out.push((g2, sign));
        }
        k += 1;
    }
    out
}

/// `prod_{n>=1} (1 - q^n)` below `q^precision`.
pub fn euler_series<R: Ring>(ring: R, precision: i64) -> Result<TruncatedSeries<R>, SeriesError> {
    if precision < 1 {
        return Err(SeriesError::PrecisionTooSmall { min: 1, got: precision });
    }
    let mut coeffs = vec![ring.zero(); precision as usize];
    for (g, s) in pentagonal_terms(precision as u64) {
        coeffs[g as usize] = ring.from_i64(s);
    }
    Ok(TruncatedSeries::from_parts(ring, 0, coeffs))
}

/// q-expansion of `spec` below `q^precision`; offset 0, constant term 1.
///
/// In characteristic `p` each exponent is written in base `p` and
/// `(q^d;q^d)^(p^i)` is replaced by `(q^(d p^i); q^(d p^i))`, so only
/// digit-many sparse Euler factors remain. In characteristic zero the
/// cheaper of the sparse route and the logarithmic-derivative recurrence
/// is used.
pub fn expand_product<R: Ring>(ring: R, spec: &ProductSpec, precision: i64) -> Result<TruncatedSeries<R>, SeriesError> {
    if precision < 1 {
        return Err(SeriesError::PrecisionTooSmall { min: 1, got: precision });
    }
    let p = precision as u64;
    let coeffs = match ring.characteristic() {
        Some(ell) => {
            let mut steps = Vec::new();
            for &(d, e) in spec.factors() {
                let mut rest = e.unsigned_abs();
                let mut base = d;
                while rest > 0 && base < p {
                    let digit = rest % ell;
                    if digit > 0 {
                        steps.push((base, digit, e < 0));
                    }
                    rest /= ell;
                    base = base.saturating_mul(ell);
                }
            }
            sparse_euler_product(&ring, &steps, p)
        }
        None => {
            let sparse_cost: u128 = spec
                .factors()
                .iter()
                .filter(|&&(d, _)| d < p)
                .map(|&(d, e)| e.unsigned_abs() as u128 * p as u128 * (2 * (p / d)).sqrt() as u128)
                .sum();
            let logder_cost = p as u128 * p as u128 / 2;
            if sparse_cost <= logder_cost {
                let steps: Vec<_> = spec
                    .factors()
                    .iter()
                    .filter(|&&(d, _)| d < p)
                    .map(|&(d, e)| (d, e.unsigned_abs(), e < 0))
                    .collect();
                sparse_euler_product(&ring, &steps, p)
            } else {
                log_derivative_product(&ring, spec, p)
            }
        }
    };
    Ok(TruncatedSeries::from_parts(ring, 0, coeffs))
}

/// Applies `(q^d;q^d)^(+-count)` for every `(d, count, divide)` step, in place
/// on a dense coefficient vector starting from 1.
fn sparse_euler_product<R: Ring>(ring: &R, steps: &[(u64, u64, bool)], p: u64) -> Vec<R::Elem> {
    let mut c = vec![ring.zero(); p as usize];
    c[0] = ring.one();
    for &(d, count, divide) in steps {
        if d >= p {
            continue;
        }
        let terms: Vec<(usize, i64)> = pentagonal_terms((p - 1) / d + 1)
            .into_iter()
            .skip(1)
            .map(|(g, s)| ((g * d) as usize, s))
            .collect();
        for _ in 0..count {
            if divide {
                // c <- c / E(q^d): c[n] -= sum_k s_k c[n - g_k d], ascending
                for n in 1..p as usize {
                    let mut acc = ring.zero();
                    for &(g, s) in terms.iter().take_while(|&&(g, _)| g <= n) {
                        let t = ring.mul_i64(&c[n - g], s);
                        ring.add_assign(&mut acc, &t);
                    }
                    c[n] = ring.sub(&c[n], &acc);
                }
            } else {
                // c <- c * E(q^d), descending so sources are still unmodified
                for n in (1..p as usize).rev() {
                    let mut acc = c[n].clone();
                    for &(g, s) in terms.iter().take_while(|&&(g, _)| g <= n) {
                        let t = ring.mul_i64(&c[n - g], s);
                        ring.add_assign(&mut acc, &t);
                    }
                    c[n] = acc;
                }
            }
        }
    }
    c
}

/// `n c(n) = sum_{k=1}^n s(k) c(n-k)` where `s` are the coefficients of
/// `q f'/f = -sum_(d,e) e d sigma(k/d) q^k`.
fn log_derivative_product<R: Ring>(ring: &R, spec: &ProductSpec, p: u64) -> Vec<R::Elem> {
    let p = p as usize;
    let mut sigma = vec![0i128; p];
    for d in 1..p {
        for m in (d..p).step_by(d) {
            sigma[m] += d as i128;
        }
    }
    let mut s = vec![0i128; p];
    for &(d, e) in spec.factors() {
        let d = d as usize;
        for m in (d..p).step_by(d) {
            s[m] -= e as i128 * d as i128 * sigma[m / d];
        }
    }
    let s: Vec<Option<i64>> = s.into_iter().map(|v| i64::try_from(v).ok()).collect();
    let mut c: Vec<R::Elem> = Vec::with_capacity(p);
    c.push(ring.one());
    for n in 1..p {
        let mut acc = ring.zero();
        for k in 1..=n {
            let t = match s[k] {
                Some(0) => continue,
                Some(v) => ring.mul_i64(&c[n - k], v),
                None => unreachable!("divisor sums fit in i64 for word-sized precision"),
            };
            ring.add_assign(&mut acc, &t);
        }
        let next = ring.div_exact_i64(&acc, n as i64).unwrap_or_else(|| {
            // integrality of the product guarantees exact division
            panic!("log-derivative recurrence lost exactness at n = {n}")
        });
        c.push(next);
    }
    c
}

/// Coefficient of `q^n` in `prod (1 - q^k)`, straight from the pentagonal
/// number theorem.
pub fn euler_coefficient(n: u64) -> i64 {
    pentagonal_terms(n + 1)
        .into_iter()
        .find(|&(g, _)| g == n)
        .map_or(0, |(_, s)| s)
}
