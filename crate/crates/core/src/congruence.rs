//! Scanning, refuting and certifying Ramanujan congruences
//! `c(ell n + a) = 0 (mod ell)` for eta-product coefficient sequences.
//!
//! Three certification routes exist:
//!
//! * **Divisor reduction.** Factors `(q^d;q^d)^e` with `ell | d` are series
//!   in `q^ell` with constant term 1, so removing them does not change
//!   whether the progression vanishes mod `ell`. When only `1/(q;q)` is left
//!   the classification of partition congruences (Ahlgren-Boylan) is used
//!   as an axiom.
//! * **Sturm theta fixpoint.** For `ell` prime to the level and larger than
//!   `max(5, j + 3)`, only the residue with `24 a = sum a_i (mod ell)` can
//!   carry a congruence, and it holds exactly when
//!   `theta^(ell-1) F_ell = F_ell (mod ell)`. That identity is decided on a
//!   Sturm-bound prefix.
//! * **Empirical.** Everything else is checked coefficient by coefficient up
//!   to a horizon; a nonzero coefficient is always a rigorous refutation.

use std::cmp::max;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eisenstein::{build_f, delta_ell};
use crate::error::{CongruenceError, SpecError};
use crate::product::{expand_product, ProductSpec};
use crate::ring::{is_prime, prime_divisors, primes_in, PrimeField, Ring};

pub const DEFAULT_SCAN_HORIZON: u64 = 10_000;
pub const DEFAULT_REFUTE_HORIZON: u64 = 100_000;
/// A scan of prime `ell` needs at least `MIN_TERMS_PER_PRIME * ell` coefficients.
pub const MIN_TERMS_PER_PRIME: u64 = 50;

/// Congruences `p(ell n + a) = 0 (mod ell)` for the partition function.
pub const PARTITION_CONGRUENCES: [(u64, u64); 3] = [(5, 4), (7, 5), (11, 6)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Empirical,
    Certified,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceCandidate {
    pub ell: u64,
    pub a: u64,
    /// Coefficients `c(m)` with `m < horizon` were checked.
    pub horizon: u64,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    DivisorReduction,
    SturmThetaFixpoint,
    EmpiricalOnly,
    Refuted,
}

/// `c(ell n + a) = residue (mod ell)`, nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u64,
    pub residue: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub ell: u64,
    pub a: u64,
    pub route: Route,
    pub witness: Option<Witness>,
    pub sturm_bound: Option<u64>,
    /// `b` with `24 a = 24 b + sum a_i (mod ell)`.
    pub b: Option<u64>,
    pub delta_ell: Option<u64>,
    /// Coefficient horizon of an empirical check.
    pub horizon: Option<u64>,
    /// The product left after divisor reduction.
    pub reduced_spec: Option<ProductSpec>,
    pub note: Option<String>,
}

impl Certificate {
    fn base(ell: u64, a: u64, route: Route) -> Self {
        Self {
            ell,
            a,
            route,
            witness: None,
            sturm_bound: None,
            b: None,
            delta_ell: delta_ell(ell),
            horizon: None,
            reduced_spec: None,
            note: None,
        }
    }

    pub fn status(&self) -> Status {
        match self.route {
            Route::DivisorReduction | Route::SturmThetaFixpoint => Status::Certified,
            Route::EmpiricalOnly => Status::Empirical,
            Route::Refuted => Status::Refuted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeBound {
    pub primes: Vec<u64>,
    /// False when `j` is odd: no bound is known, the cap is the caller's.
    pub exhaustive: bool,
}

fn class_data(spec: &ProductSpec) -> Result<(u64, u64), CongruenceError> {
    match (spec.j(), spec.part_sum()) {
        (Some(j), Some(s)) => Ok((j, s)),
        _ => Err(SpecError::NotPartitionClass(spec.to_string()).into()),
    }
}

fn check_prime(ell: u64) -> Result<(), CongruenceError> {
    if is_prime(ell) {
        Ok(())
    } else {
        Err(CongruenceError::NotPrime { ell })
    }
}

fn check_residue(ell: u64, a: u64) -> Result<(), CongruenceError> {
    if a < ell {
        Ok(())
    } else {
        Err(CongruenceError::ResidueOutOfRange { a, ell })
    }
}

fn field(ell: u64) -> Result<PrimeField, CongruenceError> {
    Ok(PrimeField::new(ell)?)
}

/// Primes that can carry a congruence for a product `prod 1/(1 - q^(a_i n))`:
/// the divisors of `N = lcm(a_i)` together with every prime up to
/// `max(5, j + 4)`. For odd `j` the upper part is `cap` (default
/// `max(5, j + 4)`) and the set is marked non-exhaustive.
pub fn prime_bound(spec: &ProductSpec, cap: Option<u64>) -> Result<PrimeBound, CongruenceError> {
    let (j, _) = class_data(spec)?;
    let exhaustive = j % 2 == 0;
    let top = if exhaustive {
        max(5, j + 4)
    } else {
        cap.unwrap_or(max(5, j + 4))
    };
    let mut primes = primes_in(2, top);
    primes.extend(prime_divisors(spec.level()));
    primes.sort_unstable();
    primes.dedup();
    Ok(PrimeBound { primes, exhaustive })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub spec: ProductSpec,
    pub horizon: u64,
    pub primes: Vec<u64>,
    pub exhaustive: bool,
    pub candidates: Vec<CongruenceCandidate>,
}

/// Every `(ell, a)` whose progression vanishes mod `ell` on all coefficients
/// below `horizon`. Primes default to [`prime_bound`]; odd-`j` products
/// need an explicit list.
pub fn scan(spec: &ProductSpec, horizon: u64, primes: Option<Vec<u64>>) -> Result<ScanReport, CongruenceError> {
    let (primes, exhaustive) = match primes {
        Some(list) => {
            let covered = match prime_bound(spec, None) {
                Ok(b) if b.exhaustive => b.primes.iter().all(|p| list.contains(p)),
                _ => false,
            };
            let mut list = list;
            list.sort_unstable();
            list.dedup();
            (list, covered)
        }
        None => {
            let (j, _) = class_data(spec)?;
            if j % 2 == 1 {
                return Err(CongruenceError::OddJ(j));
            }
            (prime_bound(spec, None)?.primes, true)
        }
    };
    for &ell in &primes {
        check_prime(ell)?;
        let needed = MIN_TERMS_PER_PRIME * ell;
        if horizon < needed {
            return Err(CongruenceError::HorizonTooSmall { ell, horizon, needed });
        }
    }
    let per_prime: Vec<Vec<CongruenceCandidate>> = primes
        .par_iter()
        .map(|&ell| -> Result<_, CongruenceError> {
            let series = expand_product(field(ell)?, spec, horizon as i64)?;
            let c = series.coeffs();
            Ok((0..ell)
                .filter(|&a| (a as usize..c.len()).step_by(ell as usize).all(|m| c[m] == 0))
                .map(|a| CongruenceCandidate {
                    ell,
                    a,
                    horizon,
                    status: Status::Empirical,
                })
                .collect())
        })
        .collect::<Result<_, _>>()?;
    Ok(ScanReport {
        spec: spec.clone(),
        horizon,
        primes,
        exhaustive,
        candidates: per_prime.into_iter().flatten().collect(),
    })
}

/// The unique `a` in `[0, ell)` with `24 a = sum a_i (mod ell)`, defined for
/// `ell > max(5, j + 3)` prime to the level.
pub fn forced_residue(spec: &ProductSpec, ell: u64) -> Result<u64, CongruenceError> {
    let (j, part_sum) = class_data(spec)?;
    check_prime(ell)?;
    if ell <= max(5, j + 3) {
        return Err(CongruenceError::NoForcedResidue(format!(
            "ell = {ell} <= max(5, j + 3) = {}",
            max(5, j + 3)
        )));
    }
    if spec.level().is_multiple_of(ell) {
        return Err(CongruenceError::NoForcedResidue(format!(
            "ell = {ell} divides the level {}",
            spec.level()
        )));
    }
    Ok(solve_24(part_sum, 0, ell))
}

/// `x` in `[0, ell)` with `24 x = target - 24 shift`, for `ell >= 5`.
fn solve_24(target: u64, shift: u64, ell: u64) -> u64 {
    let f = PrimeField::new(ell).expect("prime");
    let inv24 = f.inv(&f.from_i64(24)).expect("ell > 3");
    let t = f.sub(
        &f.from_i64((target % ell) as i64),
        &f.from_i64(24 * (shift % ell) as i64),
    );
    f.mul(&t, &inv24)
}

/// `b` with `24 a = 24 b + sum a_i (mod ell)`, when `24` is invertible.
fn shifted_residue(spec: &ProductSpec, ell: u64, a: u64) -> Option<u64> {
    let s = spec.part_sum()?;
    if ell < 5 {
        return None;
    }
    // 24 b = 24 a - s
    let f = PrimeField::new(ell).ok()?;
    let inv24 = f.inv(&f.from_i64(24))?;
    let rhs = f.sub(&f.mul(&f.from_i64(24), &(a % ell)), &f.from_i64((s % ell) as i64));
    Some(f.mul(&rhs, &inv24))
}

/// Least `n` with `c(ell n + a) != 0 (mod ell)` and `ell n + a < horizon`.
/// Expansions grow geometrically so early witnesses stay cheap.
pub fn refute(spec: &ProductSpec, ell: u64, a: u64, horizon: u64) -> Result<Certificate, CongruenceError> {
    check_prime(ell)?;
    check_residue(ell, a)?;
    let fld = field(ell)?;
    let mut checked = a; // next exponent on the progression to inspect
    let mut precision = horizon.min(max(4 * ell + a + 1, 256));
    loop {
        let series = expand_product(fld, spec, precision as i64)?;
        let c = series.coeffs();
        while checked < precision {
            let r = c[checked as usize];
            if r != 0 {
                let mut cert = Certificate::base(ell, a, Route::Refuted);
                cert.witness = Some(Witness {
                    n: (checked - a) / ell,
                    residue: r,
                });
                cert.b = shifted_residue(spec, ell, a);
                return Ok(cert);
            }
            checked += ell;
        }
        if precision >= horizon {
            break;
        }
        precision = horizon.min(precision * 2);
    }
    let mut cert = Certificate::base(ell, a, Route::EmpiricalOnly);
    cert.horizon = Some(horizon);
    cert.b = shifted_residue(spec, ell, a);
    Ok(cert)
}

/// Removes every factor whose base is divisible by `ell`.
pub fn divisor_reduce(spec: &ProductSpec, ell: u64) -> Result<ProductSpec, CongruenceError> {
    if !spec.factors().iter().any(|&(d, _)| d % ell == 0) {
        return Err(CongruenceError::NoDivisibleFactor { ell });
    }
    Ok(spec.filter(|d| d % ell != 0))
}

/// `N^2 prod_{p | N} (1 - 1/p^2)`, computed exactly.
pub fn index_surrogate(n: u64) -> u64 {
    let mut m = n * n;
    for p in prime_divisors(n) {
        m = m / (p * p) * (p * p - 1);
    }
    m
}

/// Number of leading coefficients compared in the theta-fixpoint test:
/// `ceil((k_F + ell^2 - 1) mu(N) / 12) + 1`.
pub fn sturm_bound(spec: &ProductSpec, ell: u64) -> Result<u64, CongruenceError> {
    let (j, _) = class_data(spec)?;
    let weight = j * (ell * ell - 1) / 2 + ell * ell - 1;
    Ok((weight * index_surrogate(spec.level())).div_ceil(12) + 1)
}

fn refuted_with_witness(spec: &ProductSpec, ell: u64, a: u64, horizon: u64) -> Result<Certificate, CongruenceError> {
    let cert = refute(spec, ell, a, horizon)?;
    if cert.route != Route::Refuted {
        return Err(CongruenceError::WitnessNotFound { ell, a, horizon });
    }
    Ok(cert)
}

/// Decides `(ell, a)` by the strongest applicable route; see the module docs.
///
/// `horizon` bounds both the empirical check and the number of
/// coefficients the Sturm comparison may use; exceeding the latter is a
/// [`CongruenceError::PrecisionShortfall`].
pub fn certify(spec: &ProductSpec, ell: u64, a: u64, horizon: u64) -> Result<Certificate, CongruenceError> {
    check_prime(ell)?;
    check_residue(ell, a)?;

    if spec.factors().iter().any(|&(d, _)| d % ell == 0) {
        let residual = divisor_reduce(spec, ell)?;
        let mut cert = if residual.is_empty() {
            // the whole product is a unit series in q^ell
            if a == 0 {
                refuted_with_witness(spec, ell, a, horizon)?
            } else {
                Certificate::base(ell, a, Route::DivisorReduction)
            }
        } else if residual == ProductSpec::partitions() {
            if PARTITION_CONGRUENCES.contains(&(ell, a)) {
                let mut c = Certificate::base(ell, a, Route::DivisorReduction);
                c.note = Some("partition congruence (Ramanujan; complete list by Ahlgren-Boylan)".into());
                c
            } else {
                let mut c = refuted_with_witness(spec, ell, a, horizon)?;
                c.note = Some("no partition congruence for this (ell, a) (Ahlgren-Boylan)".into());
                c
            }
        } else {
            let inner = certify(&residual, ell, a, horizon)?;
            match inner.status() {
                Status::Certified => {
                    let mut c = Certificate::base(ell, a, Route::DivisorReduction);
                    c.sturm_bound = inner.sturm_bound;
                    c.note = inner.note;
                    c
                }
                Status::Refuted => {
                    let n = inner.witness.expect("refuted has witness").n;
                    refuted_with_witness(spec, ell, a, horizon.max((n + 1) * ell + a + 1))?
                }
                Status::Empirical => refute(spec, ell, a, horizon)?,
            }
        };
        cert.reduced_spec = Some(residual);
        cert.b = shifted_residue(spec, ell, a);
        return Ok(cert);
    }

    if let (Some(j), Some(part_sum)) = (spec.j(), spec.part_sum()) {
        if j % 2 == 0 && ell > max(5, j + 3) {
            return sturm_route(spec, ell, a, part_sum, horizon);
        }
    }

    let mut cert = refute(spec, ell, a, horizon)?;
    if cert.route == Route::EmpiricalOnly {
        cert.note = Some(if ell <= 3 {
            "ell <= 3: checked to the horizon only, no certification route".into()
        } else {
            "no certification route applies: checked to the horizon only".into()
        });
    }
    Ok(cert)
}

fn sturm_route(
    spec: &ProductSpec,
    ell: u64,
    a: u64,
    part_sum: u64,
    horizon: u64,
) -> Result<Certificate, CongruenceError> {
    let forced = forced_residue(spec, ell)?;
    let b = shifted_residue(spec, ell, a);
    if a != forced {
        let mut c = refuted_with_witness(spec, ell, a, horizon)?;
        c.b = b;
        c.note = Some(format!("only a = {forced} can carry a congruence mod {ell}"));
        return Ok(c);
    }
    let bound = sturm_bound(spec, ell)?;
    if bound > horizon {
        return Err(CongruenceError::PrecisionShortfall {
            needed: bound,
            available: horizon,
        });
    }
    let f = build_f(field(ell)?, spec, ell, bound as i64)?.series;
    let fixed = f.theta_pow(ell - 1);
    let mut cert = Certificate::base(ell, a, Route::SturmThetaFixpoint);
    cert.sturm_bound = Some(bound);
    cert.b = b;
    if let Some(m) = fixed.first_disagreement(&f) {
        // theta^(ell-1) F - F = -sum_{ell | m} d(m) q^m, and
        // sum_n d(ell (n + s0)) q^n = (unit) * sum_n c(ell n + a) q^n
        let m = m as u64;
        debug_assert_eq!(m % ell, 0);
        let s0 = (delta_ell(ell).expect("ell > 3") * part_sum + a) / ell;
        cert.route = Route::Refuted;
        cert.witness = Some(Witness {
            n: m / ell - s0,
            residue: f.coeff(m as i64)?,
        });
        cert.note = Some("theta^(ell-1) F_ell differs from F_ell below the Sturm bound".into());
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub ell: u64,
    pub a: u64,
    pub status: Status,
    pub route: Route,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub n: u64,
    pub entries: Vec<ClassEntry>,
}

/// Scan and certify `c_N` for every `N` in `range` (all `N >= 2`); rows
/// keep the certified and empirical congruences.
pub fn classify_cn(range: RangeInclusive<u64>, horizon: u64) -> Result<Vec<ClassRow>, CongruenceError> {
    if *range.start() < 2 {
        return Err(SpecError::NonPositiveBase(*range.start() as i64).into());
    }
    range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let spec = ProductSpec::c_n(n);
            let scan = scan(&spec, horizon, None)?;
            let mut entries = Vec::new();
            for cand in scan.candidates {
                let cert = certify(&spec, cand.ell, cand.a, horizon)?;
                if cert.status() != Status::Refuted {
                    entries.push(ClassEntry {
                        ell: cand.ell,
                        a: cand.a,
                        status: cert.status(),
                        route: cert.route,
                    });
                }
            }
            Ok(ClassRow { n, entries })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditAttempt {
    pub a: u64,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub ell: u64,
    pub forced_residue: u64,
    /// Non-forced residues first, the forced residue last.
    pub attempts: Vec<AuditAttempt>,
    /// Residues with no witness below the horizon.
    pub anomalies: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub spec: ProductSpec,
    pub horizon: u64,
    pub entries: Vec<AuditEntry>,
    /// Primes in range where the bound does not exclude congruences.
    pub skipped: Vec<u64>,
}

impl AuditReport {
    pub fn anomalies(&self) -> usize {
        self.entries.iter().map(|e| e.anomalies.len()).sum()
    }
}

/// For every prime in range above `max(5, j + 4)` and prime to the level,
/// looks for a refuting coefficient for every residue. Any survivor is an
/// anomaly.
pub fn audit_prime_bound(
    spec: &ProductSpec,
    primes: RangeInclusive<u64>,
    horizon: u64,
) -> Result<AuditReport, CongruenceError> {
    let (j, _) = class_data(spec)?;
    if j % 2 == 1 {
        return Err(CongruenceError::OddJ(j));
    }
    let limit = max(5, j + 4);
    let (audited, skipped): (Vec<u64>, Vec<u64>) = primes_in(*primes.start(), *primes.end())
        .into_iter()
        .partition(|&ell| ell > limit && !spec.level().is_multiple_of(ell));
    let entries = audited
        .par_iter()
        .map(|&ell| -> Result<AuditEntry, CongruenceError> {
            let forced = forced_residue(spec, ell)?;
            let order = (0..ell).filter(|&a| a != forced).chain(std::iter::once(forced));
            let mut attempts = Vec::with_capacity(ell as usize);
            let mut anomalies = Vec::new();
            for a in order {
                let cert = refute(spec, ell, a, horizon)?;
                if cert.witness.is_none() {
                    anomalies.push(a);
                }
                attempts.push(AuditAttempt {
                    a,
                    witness: cert.witness,
                });
            }
            Ok(AuditEntry {
                ell,
                forced_residue: forced,
                attempts,
                anomalies,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AuditReport {
        spec: spec.clone(),
        horizon,
        entries,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> ProductSpec {
        s.parse().unwrap()
    }

    #[test]
    fn prime_bound_examples() {
        assert_eq!(prime_bound(&spec("1^-1 2^-1"), None).unwrap().primes, vec![2, 3, 5]);
        assert_eq!(
            prime_bound(&spec("1^-1 22^-1"), None).unwrap().primes,
            vec![2, 3, 5, 11]
        );
        assert_eq!(
            prime_bound(&spec("1^-1 1^-1 1^-1 1^-1"), None).unwrap().primes,
            vec![2, 3, 5, 7]
        );
        let odd = prime_bound(&spec("1^-3"), Some(13)).unwrap();
        assert!(!odd.exhaustive);
        assert_eq!(odd.primes, vec![2, 3, 5, 7, 11, 13]);
        assert!(prime_bound(&spec("1^1"), None).is_err());
    }

    #[test]
    fn forced_residue_examples() {
        assert_eq!(forced_residue(&spec("1^-1 2^-1"), 13).unwrap(), 5);
        assert_eq!(forced_residue(&spec("1^-1 1^-1"), 13).unwrap(), 12);
        assert!(matches!(
            forced_residue(&spec("1^-1 2^-1"), 5),
            Err(CongruenceError::NoForcedResidue(_))
        ));
        assert!(matches!(
            forced_residue(&spec("1^-1 14^-1"), 7),
            Err(CongruenceError::NoForcedResidue(_))
        ));
    }

    #[test]
    fn index_surrogate_values() {
        assert_eq!(index_surrogate(1), 1);
        assert_eq!(index_surrogate(2), 3);
        assert_eq!(index_surrogate(4), 12);
        assert_eq!(index_surrogate(6), 24);
    }

    #[test]
    fn refute_examples() {
        let c = refute(&spec("1^-1 2^-1"), 5, 2, 1000).unwrap();
        assert_eq!(c.route, Route::Refuted);
        assert_eq!(c.witness, Some(Witness { n: 0, residue: 3 }));
        let p = refute(&ProductSpec::partitions(), 5, 4, 5000).unwrap();
        assert_eq!(p.route, Route::EmpiricalOnly);
        assert_eq!(p.horizon, Some(5000));
        let c = refute(&spec("1^-1 2^-1"), 3, 0, 1000).unwrap();
        assert_eq!(c.route, Route::Refuted);
        assert!(refute(&spec("1^-1"), 4, 0, 100).is_err());
        assert!(refute(&spec("1^-1"), 5, 5, 100).is_err());
    }

    #[test]
    fn divisor_reduce_examples() {
        assert_eq!(
            divisor_reduce(&spec("1^-1 10^-1"), 5).unwrap(),
            ProductSpec::partitions()
        );
        assert_eq!(
            divisor_reduce(&spec("1^-1 2^-1"), 3).unwrap_err(),
            CongruenceError::NoDivisibleFactor { ell: 3 }
        );
        assert_eq!(
            divisor_reduce(&spec("1^-1 22^-1"), 11).unwrap(),
            ProductSpec::partitions()
        );
    }

    #[test]
    fn scan_rejects_small_horizon() {
        assert!(matches!(
            scan(&spec("1^-1 22^-1"), 500, None),
            Err(CongruenceError::HorizonTooSmall { ell: 11, .. })
        ));
        assert!(matches!(scan(&spec("1^-3"), 5000, None), Err(CongruenceError::OddJ(3))));
        assert!(scan(&spec("1^-3"), 5000, Some(vec![2, 3, 5, 7])).is_ok());
    }

    #[test]
    fn certify_divisor_route() {
        let c = certify(&spec("1^-1 10^-1"), 5, 4, 2000).unwrap();
        assert_eq!(c.route, Route::DivisorReduction);
        assert_eq!(c.reduced_spec, Some(ProductSpec::partitions()));
        let r = certify(&spec("1^-1 10^-1"), 5, 3, 2000).unwrap();
        assert_eq!(r.route, Route::Refuted);
        // all factors divisible: a unit series in q^5
        let u = certify(&spec("5^-1"), 5, 2, 2000).unwrap();
        assert_eq!(u.route, Route::DivisorReduction);
        let z = certify(&spec("5^-1"), 5, 0, 2000).unwrap();
        assert_eq!(z.witness, Some(Witness { n: 0, residue: 1 }));
    }

    #[test]
    fn certify_small_primes_are_empirical() {
        let c = certify(&spec("1^-1 2^-1"), 3, 2, 3000).unwrap();
        assert_eq!(c.route, Route::EmpiricalOnly);
        assert_eq!(c.horizon, Some(3000));
        assert!(c.note.is_some());
    }

    #[test]
    fn certify_sturm_route_refutes() {
        let c = certify(&spec("1^-1 2^-1"), 13, 5, 10_000).unwrap();
        assert_eq!(c.route, Route::Refuted);
        assert_eq!(c.sturm_bound, Some(85));
        assert_eq!(c.b, Some(0));
        let w = c.witness.unwrap();
        let direct = refute(&spec("1^-1 2^-1"), 13, 5, 10_000).unwrap();
        assert_eq!(direct.witness, Some(w));
    }

    #[test]
    fn certify_reports_precision_shortfall() {
        assert_eq!(
            certify(&spec("1^-1 2^-1"), 13, 5, 50).unwrap_err(),
            CongruenceError::PrecisionShortfall {
                needed: 85,
                available: 50
            }
        );
    }

    #[test]
    fn certify_non_forced_residue_is_refuted() {
        let c = certify(&spec("1^-1 2^-1"), 7, 0, 1000).unwrap();
        assert_eq!(c.route, Route::Refuted);
        assert!(c.witness.is_some());
    }

    #[test]
    fn audit_empty_range() {
        let r = audit_prime_bound(&spec("1^-1 2^-1"), 8..=10, 1000).unwrap();
        assert!(r.entries.is_empty());
        assert!(r.skipped.is_empty());
    }
}
