use etaq::congruence::{
    audit_prime_bound, certify, classify_cn, divisor_reduce, forced_residue, prime_bound, refute, scan, ClassRow,
    Route, Status,
};
use etaq::{expand_product, IntSeries, Integers, PrimeField, ProductSpec};
use num_integer::Integer;

fn spec(s: &str) -> ProductSpec {
    s.parse().unwrap()
}

fn pairs(report: &etaq::congruence::ScanReport) -> Vec<(u64, u64)> {
    report.candidates.iter().map(|c| (c.ell, c.a)).collect()
}

#[test]
fn scan_examples() {
    assert_eq!(pairs(&scan(&spec("1^-1 2^-1"), 10_000, None).unwrap()), vec![(3, 2)]);
    assert_eq!(pairs(&scan(&spec("1^-1 5^-1"), 10_000, None).unwrap()), vec![(5, 4)]);
    assert!(scan(&spec("1^-1 3^-1"), 10_000, None).unwrap().candidates.is_empty());
}

#[test]
fn scan_candidates_use_forced_residue_above_bound() {
    // widen the prime list past max(5, j + 3) so the cross-check has work to do
    for s in ["1^-1 2^-1", "1^-1 1^-1", "1^-1 7^-1", "1^-1 3^-1 4^-1 4^-1"] {
        let sp = spec(s);
        let j = sp.j().unwrap();
        let report = scan(&sp, 6000, Some(vec![2, 3, 5, 7, 11, 13, 17, 19, 23])).unwrap();
        for c in &report.candidates {
            if c.ell > (j + 3).max(5) && !sp.level().is_multiple_of(c.ell) {
                assert_eq!(c.a, forced_residue(&sp, c.ell).unwrap(), "{s}: {c:?}");
            }
        }
    }
}

#[test]
fn refuted_witnesses_reproduce_through_expansion() {
    let cases = [
        ("1^-1 2^-1", 7, 0),
        ("1^-1 2^-1", 13, 5),
        ("1^-1 2^-1", 3, 1),
        ("1^-1 10^-1", 5, 3),
        ("1^-1 1^-1", 11, 1),
        ("1^-1 1^-1", 13, 12),
        ("1^-1 14^-1", 7, 3),
    ];
    for (s, ell, a) in cases {
        let sp = spec(s);
        let integral = expand_product(Integers, &sp, 4000).unwrap();
        for cert in [refute(&sp, ell, a, 4000).unwrap(), certify(&sp, ell, a, 4000).unwrap()] {
            assert_eq!(cert.route, Route::Refuted, "{s} {ell} {a}");
            let w = cert.witness.unwrap();
            let m = (ell * w.n + a) as i64;
            let c = integral.coeff(m).unwrap();
            let residue = c.mod_floor(&ell.into());
            assert_eq!(residue, w.residue.into(), "{s} {ell} {a}");
            assert_ne!(w.residue, 0);
            // least witness: everything earlier on the progression vanishes
            for n in 0..w.n {
                let c = integral.coeff((ell * n + a) as i64).unwrap();
                assert_eq!(c.mod_floor(&ell.into()), 0u32.into());
            }
        }
    }
}

#[test]
fn certificate_invariants() {
    let sp = spec("1^-1 2^-1");
    for ell in [5u64, 7, 11, 13] {
        for a in 0..ell {
            let cert = certify(&sp, ell, a, 10_000).unwrap();
            assert_eq!(cert.route == Route::Refuted, cert.witness.is_some());
            if cert.route == Route::SturmThetaFixpoint {
                assert!(cert.sturm_bound.is_some());
            }
            if let Some(b) = cert.b {
                // 24 a = 24 b + sum a_i (mod ell)
                assert_eq!((24 * a) % ell, (24 * b + 3) % ell);
            }
        }
    }
}

#[test]
fn certify_examples() {
    assert_eq!(
        certify(&spec("1^-1 10^-1"), 5, 4, 1000).unwrap().status(),
        Status::Certified
    );
    let mod3 = certify(&spec("1^-1 2^-1"), 3, 2, 10_000).unwrap();
    assert_eq!(mod3.route, Route::EmpiricalOnly);
    let r = certify(&spec("1^-1 2^-1"), 13, 5, 10_000).unwrap();
    assert_eq!(r.route, Route::Refuted);
    assert_eq!(r.b, Some(0));
    assert_eq!(
        certify(&spec("1^-1 35^-1"), 7, 5, 1000).unwrap().route,
        Route::DivisorReduction
    );
    assert_eq!(
        certify(&spec("1^-1 22^-1"), 11, 6, 1000).unwrap().route,
        Route::DivisorReduction
    );
}

#[test]
fn divisor_reduce_preserves_progression_vanishing() {
    let samples = [
        ("1^-1 10^-1", 5),
        ("1^-1 14^-1", 7),
        ("1^-1 22^-1", 11),
        ("1^-1 15^-1 5^-1", 5),
        ("1^-1 3^-1 6^-1", 3),
    ];
    for (s, ell) in samples {
        let full = spec(s);
        let reduced = divisor_reduce(&full, ell).unwrap();
        let f = PrimeField::new(ell).unwrap();
        let prec = (501 * ell) as i64;
        let cf = expand_product(f, &full, prec).unwrap();
        let cr = expand_product(f, &reduced, prec).unwrap();
        // the removed factors form a unit series in q^ell
        let removed = ProductSpec::new(full.factors().iter().copied().filter(|&(d, _)| d % ell == 0)).unwrap();
        let unit = expand_product(f, &removed, prec).unwrap();
        assert!(unit.iter().all(|(m, c)| *c == 0 || (m as u64).is_multiple_of(ell)));
        assert!(cr.mul(&unit).unwrap().agrees_with(&cf));
        for a in 0..ell {
            let vf = cf.ap_extract(ell, a as i64).unwrap().is_zero();
            let vr = cr.ap_extract(ell, a as i64).unwrap().is_zero();
            assert_eq!(vf, vr, "{s} ell={ell} a={a}");
        }
    }
}

fn row_pairs(rows: &[ClassRow]) -> Vec<(u64, Vec<(u64, u64)>)> {
    rows.iter()
        .map(|r| (r.n, r.entries.iter().map(|e| (e.ell, e.a)).collect()))
        .collect()
}

#[test]
fn classify_examples() {
    let rows = classify_cn(2..=2, 5000).unwrap();
    assert_eq!(row_pairs(&rows), vec![(2, vec![(3, 2)])]);
    let rows = classify_cn(35..=35, 5000).unwrap();
    assert_eq!(row_pairs(&rows), vec![(35, vec![(5, 4), (7, 5)])]);
    let rows = classify_cn(13..=13, 5000).unwrap();
    assert_eq!(row_pairs(&rows), vec![(13, vec![])]);
    assert!(classify_cn(1..=3, 5000).is_err());
}

#[test]
fn classify_stable_under_horizon_doubling() {
    let a = classify_cn(2..=30, 5000).unwrap();
    let b = classify_cn(2..=30, 10_000).unwrap();
    assert_eq!(row_pairs(&a), row_pairs(&b));
}

#[test]
fn audit_examples() {
    let report = audit_prime_bound(&spec("1^-1 2^-1"), 7..=31, 2000).unwrap();
    assert_eq!(
        report.entries.iter().map(|e| e.ell).collect::<Vec<_>>(),
        vec![7, 11, 13, 17, 19, 23, 29, 31]
    );
    assert_eq!(report.anomalies(), 0);

    let report = audit_prime_bound(&spec("1^-1 1^-1"), 11..=23, 2000).unwrap();
    assert_eq!(report.anomalies(), 0);
    for e in &report.entries {
        let last = e.attempts.last().unwrap();
        assert_eq!(last.a, e.forced_residue);
        assert!(last.witness.is_some());
        assert_eq!(e.attempts.len() as u64, e.ell);
    }
    assert!(audit_prime_bound(&spec("1^-1"), 7..=7, 100).is_err());
}

#[test]
fn prime_bound_matches_small_scan() {
    // every scanned candidate over a wide prime list lies inside the bound
    for s in ["1^-1 2^-1", "1^-1 1^-1", "1^-1 6^-1", "1^-1 1^-1 1^-1 1^-1"] {
        let sp = spec(s);
        let bound = prime_bound(&sp, None).unwrap();
        let report = scan(&sp, 2000, Some(vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37])).unwrap();
        for c in report.candidates {
            assert!(bound.primes.contains(&c.ell), "{s}: {c:?}");
        }
    }
}

#[test]
fn r_series_head() {
    // 1 / ((q;q)(q^2;q^2)) = sum_k p(n - 2k) p(k)
    let e = expand_product(Integers, &spec("1^-1 2^-1"), 7).unwrap();
    let expect = IntSeries::from_integers(0, &[1, 1, 3, 4, 9, 12, 23]);
    assert!(e.agrees_with(&expect));
    let c = refute(&spec("1^-1 2^-1"), 5, 2, 100).unwrap();
    assert_eq!(c.witness.unwrap().residue, 3);
}

#[test]
fn certificates_round_trip_through_json() {
    let certs = [
        certify(&spec("5^-1"), 5, 2, 1000).unwrap(),
        certify(&spec("1^-1 10^-1"), 5, 4, 1000).unwrap(),
        certify(&spec("1^-1 2^-1"), 13, 5, 10_000).unwrap(),
        refute(&spec("1^-1"), 5, 4, 1000).unwrap(),
    ];
    for c in certs {
        let text = serde_json::to_string(&c).unwrap();
        let back: etaq::Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
    let report = scan(&spec("1^-1 2^-1"), 2000, None).unwrap();
    let back: etaq::congruence::ScanReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(back, report);
}
