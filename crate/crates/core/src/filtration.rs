//! Level-1 modular forms mod `ell`: spanning sets, the filtration
//! `w_ell`, and theta-cycle classification.
//!
//! Membership of a series in `M_k' (SL2(Z))` mod `ell` is decided by
//! solving for a combination of the monomials `E4^a E6^b` on the first
//! `floor(k'/12) + 1` coefficients and then checking every computed
//! coefficient. When the input is known past the Sturm bound of its
//! declared weight, agreement there is a proof of membership.

use serde::{Deserialize, Serialize};

use crate::eisenstein::{compute_r, eisenstein, FormWithWeight};
use crate::error::{FormError, SeriesError};
use crate::ring::{is_prime, PrimeField, Ring};
use crate::series::TruncatedSeries;

/// `E4^a E6^b` for every `4a + 6b = weight`, ordered by increasing `b`.
pub fn level1_basis<R: Ring>(ring: R, weight: i64, precision: i64) -> Result<Vec<TruncatedSeries<R>>, FormError> {
    if weight < 0 || weight % 2 != 0 {
        return Err(FormError::BadWeight(weight));
    }
    let precision = precision.max(1);
    let exps: Vec<(i64, i64)> = (0..=weight / 6)
        .filter(|b| (weight - 6 * b) % 4 == 0)
        .map(|b| ((weight - 6 * b) / 4, b))
        .collect();
    if exps.is_empty() {
        return Ok(Vec::new());
    }
    let e4 = eisenstein(ring.clone(), 4, precision)?.series;
    let e6 = eisenstein(ring.clone(), 6, precision)?.series;
    exps.into_iter()
        .map(|(a, b)| e4.pow(a)?.mul(&e6.pow(b)?))
        .collect::<Result<Vec<_>, SeriesError>>()
        .map_err(FormError::from)
}

fn check_mod_ell(f: &TruncatedSeries<PrimeField>, ell: u64) -> Result<(), FormError> {
    if ell < 5 {
        return Err(FormError::PrimeTooSmall { ell, min: 5 });
    }
    if !is_prime(ell) {
        return Err(SeriesError::NotPrime(ell).into());
    }
    if f.modulus() != Some(ell) {
        return Err(FormError::WrongModulus {
            expected: ell,
            got: f.modulus(),
        });
    }
    Ok(())
}

/// Sturm bound at level 1 plus one extra coefficient.
/// Coefficients needed to decide level-1 membership in weight `weight`.
pub fn required_precision(weight: i64) -> i64 {
    weight / 12 + 2
}

/// Whether `f` is the reduction of a level-1 form of weight `weight`.
/// `f` must be known past the Sturm bound of whatever weight it was
/// declared at for a `true` answer to be a certificate.
pub fn is_level1_of_weight(f: &TruncatedSeries<PrimeField>, weight: i64) -> Result<bool, FormError> {
    let field = *f.ring();
    let precision = f.precision();
    let basis = level1_basis(field, weight, precision)?;
    if basis.is_empty() {
        return Ok(f.is_zero());
    }
    let rows = ((weight / 12 + 1) as usize).min(precision.max(0) as usize);
    let lo = f.offset().min(0);
    let matrix: Vec<Vec<u64>> = (0..rows as i64)
        .map(|n| basis.iter().map(|b| b.coeff(n).unwrap()).collect())
        .collect();
    let rhs: Vec<u64> = (0..rows as i64).map(|n| f.coeff(n).unwrap()).collect();
    let Some(x) = solve_mod(&field, matrix, rhs) else {
        return Ok(false);
    };
    for n in lo..precision {
        let mut g = 0u64;
        if n >= 0 {
            for (xi, b) in x.iter().zip(&basis) {
                g = field.add(&g, &field.mul(xi, &b.coeff(n).unwrap()));
            }
        }
        if g != f.coeff(n).unwrap() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `w_ell(f)`: the least `k' = declared_weight (mod ell - 1)`, `0 <= k' <= declared_weight`,
/// such that `f` is the reduction of a level-1 form of weight `k'`.
pub fn filtration(f: &TruncatedSeries<PrimeField>, declared_weight: i64, ell: u64) -> Result<i64, FormError> {
    check_mod_ell(f, ell)?;
    if declared_weight < 0 || declared_weight % 2 != 0 {
        return Err(FormError::BadWeight(declared_weight));
    }
    if f.is_zero() {
        return Err(FormError::ZeroModEll(ell));
    }
    let needed = required_precision(declared_weight);
    if f.precision() < needed {
        return Err(SeriesError::PrecisionTooSmall {
            min: needed,
            got: f.precision(),
        }
        .into());
    }
    let step = (ell - 1) as i64;
    let mut best = None;
    let mut k = declared_weight;
    // membership is upward closed along k, k - (ell-1), ... (multiply by E_{ell-1} = 1)
    while k >= 0 {
        if !is_level1_of_weight(f, k)? {
            break;
        }
        best = Some(k);
        k -= step;
    }
    best.ok_or(FormError::NoMatchingWeight {
        declared: declared_weight,
        step: ell - 1,
        ell,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaCase {
    I,
    II,
    III,
    IV,
    None,
}

impl ThetaCase {
    pub fn label(&self) -> &'static str {
        match self {
            ThetaCase::I => "I",
            ThetaCase::II => "II",
            ThetaCase::III => "III",
            ThetaCase::IV => "IV",
            ThetaCase::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaCycleReport {
    pub ell: u64,
    /// `w_ell(theta^i f)` for `i = 0..ell-1`.
    pub filtrations: Vec<i64>,
    /// `k0` in `1..ell-1` with `w_ell(f) = -k0 (mod ell)`; absent when `ell | w_ell(f)`.
    pub k0: Option<u64>,
    pub case_label: ThetaCase,
    /// The `i` with `w_ell(theta^i f) = 0 (mod ell)`.
    pub drop_indices: Vec<usize>,
    /// `s_j` with `w(theta^(i_j+1) f) = w(theta^(i_j) f) + ell + 1 - s_j (ell - 1)`.
    pub drops: Vec<i64>,
    /// `w_ell(f) = w_ell(theta^(ell-1) f)`.
    pub stable: bool,
}

/// Filtrations of `theta^i f` for `i = 0..ell-1` and the drop pattern.
///
/// Each `theta^i f` is carried as the form `R` of weight
/// `declared_weight + i (ell + 1)`.
pub fn theta_cycle(
    f: &TruncatedSeries<PrimeField>,
    declared_weight: i64,
    ell: u64,
) -> Result<ThetaCycleReport, FormError> {
    check_mod_ell(f, ell)?;
    if f.theta().is_zero() {
        return Err(FormError::ZeroModEll(ell));
    }
    let precision = f.precision();
    let mut form = FormWithWeight::new(f.clone(), declared_weight, 1);
    let mut filtrations = Vec::with_capacity(ell as usize);
    for i in 0..ell {
        if i > 0 {
            form = compute_r(&form, ell, precision)?;
        }
        filtrations.push(filtration(&form.series, form.weight, ell)?);
    }
    Ok(classify_cycle(ell, filtrations))
}

/// Drop data and case label for a full cycle of filtrations.
pub fn classify_cycle(ell: u64, filtrations: Vec<i64>) -> ThetaCycleReport {
    let l = ell as i64;
    let k = filtrations[0];
    let k0 = (k.rem_euclid(l) != 0).then(|| (-k).rem_euclid(l) as u64);
    let drop_indices: Vec<usize> = (0..filtrations.len())
        .filter(|&i| filtrations[i].rem_euclid(l) == 0)
        .collect();
    // theta^ell f = theta f, so the successor of the last entry is entry 1
    let next = |i: usize| {
        if i + 1 < filtrations.len() {
            filtrations[i + 1]
        } else {
            filtrations[1]
        }
    };
    let drops: Vec<i64> = drop_indices
        .iter()
        .map(|&i| (filtrations[i] + l + 1 - next(i)) / (l - 1))
        .collect();
    let kr = k.rem_euclid(l);
    let case_label = match (drop_indices.as_slice(), drops.as_slice(), k0) {
        ([i1], [s1], _) if kr == 1 && *i1 as i64 == l - 1 && *s1 == l + 1 => ThetaCase::I,
        ([i1], [s1], _) if kr == 2 && *i1 as i64 == l - 2 && *s1 == l + 1 => ThetaCase::II,
        ([i1, i2], [s1, s2], Some(k0)) if kr != 1 && *i1 as u64 == k0 => {
            let k0 = k0 as i64;
            if *i2 as i64 == l - 1 && *s1 == k0 + 1 && *s2 == l - k0 {
                ThetaCase::III
            } else if *i2 as i64 == l - 2 && *s1 == k0 + 2 && *s2 == l - k0 - 1 {
                ThetaCase::IV
            } else {
                ThetaCase::None
            }
        }
        _ => ThetaCase::None,
    };
    let stable = filtrations[0] == *filtrations.last().expect("nonempty cycle");
    ThetaCycleReport {
        ell,
        filtrations,
        k0,
        case_label,
        drop_indices,
        drops,
        stable,
    }
}

/// Solves `A x = b` over `F_p` by Gaussian elimination; any solution will do.
fn solve_mod(field: &PrimeField, mut a: Vec<Vec<u64>>, mut b: Vec<u64>) -> Option<Vec<u64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        b.swap(r, pr);
        let inv = field.inv(&a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        b[r] = field.mul(&b[r], &inv);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let factor = a[i][c];
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = field.sub(x, &field.mul(&factor, y));
                }
                let t = field.mul(&factor, &b[r]);
                b[i] = field.sub(&b[i], &t);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|&v| v != 0) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i];
    }
    Some(x)
}
