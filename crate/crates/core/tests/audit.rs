use logpade::audit::{
    dn_check, eval_linear_form_arch, exhaustive_audit, padic_audit, padic_remainder_checks, verify_suite, AuditConfig,
    ConstantsConfig, DnConfig, PadicAuditOptions, VerifyConfig,
};
use logpade::measure_bounds::AlphaInput;
use logpade::report::{anchors, Status};
use logpade::Error;
use rug::float::Round;
use rug::{Float, Integer};

fn alpha(c: i64, d: i64) -> AlphaInput {
    AlphaInput::new(c, d).unwrap()
}

/// Best approximation oracle: among `1 ≤ q ≤ h`, `|q·x − p|` is minimal at
/// the largest continued-fraction denominator `q_k ≤ h`. Returns `(p_k, q_k)`.
fn best_approximation(x: &Float, h: i64) -> (Integer, Integer) {
    let (mut p0, mut q0) = (Integer::from(0), Integer::from(1));
    let (mut p1, mut q1) = (Integer::from(1), Integer::from(0));
    let mut rest = x.clone();
    loop {
        let a = rest.to_integer_round(Round::Down).unwrap().0;
        let p2 = Integer::from(&a * &p1) + &p0;
        let q2 = Integer::from(&a * &q1) + &q0;
        if q2 > h {
            return (p1, q1);
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = Float::with_val(x.prec(), &rest - &a);
        rest = Float::with_val(x.prec(), 1) / frac;
    }
}

#[test]
fn linear_form_examples() {
    let e = eval_linear_form_arch(&[1, 0, 0], &alpha(1, 10), 128).unwrap();
    assert!(e.precise && e.value.lo() <= &1.0 && e.value.hi() >= &1.0);

    let ln2 = eval_linear_form_arch(&[0, 1], &alpha(1, 1), 128).unwrap();
    let oracle = eval_linear_form_arch(&[0, 1], &alpha(1, 1), 256).unwrap();
    assert!(ln2.value.lo() <= oracle.value.lo() && ln2.value.hi() >= oracle.value.hi());
    assert!((ln2.value.midpoint_f64() - std::f64::consts::LN_2).abs() < 1e-15);

    let f = eval_linear_form_arch(&[-1, 0, 1], &alpha(1, 1), 128).unwrap();
    let l = std::f64::consts::LN_2;
    assert!((f.value.midpoint_f64() - (l * l - 1.0).abs()).abs() < 1e-15);
    assert!((f.value.midpoint_f64() - 0.5195).abs() < 1e-4);

    assert!(matches!(
        eval_linear_form_arch(&[0, 0], &alpha(1, 10), 64),
        Err(Error::InvalidParams(_))
    ));
}

fn audit_config(h: i64, full: bool) -> AuditConfig {
    let mut constants = ConstantsConfig::new(2, alpha(1, 10));
    constants.search = false;
    AuditConfig {
        constants,
        height_max: h,
        full_table: full,
    }
}

#[test]
fn audit_minimum_matches_continued_fractions() {
    for h in [5, 30, 50] {
        let report = exhaustive_audit(&audit_config(h, false)).unwrap();
        assert!(report.passed(), "h = {h}");
        let b: Vec<i64> = serde_json::from_value(report.payload["overall_min"]["b"].clone()).unwrap();
        let x = Float::with_val(256, rug::Rational::from((11, 10))).ln();
        let (p, q) = best_approximation(&x, h);
        // Λ = b₀ + b₁·log(1.1) is minimized by ±(−p, q)
        let expected = if p == 0 {
            vec![0, q.to_i64().unwrap()]
        } else {
            vec![p.to_i64().unwrap(), -q.to_i64().unwrap()]
        };
        assert_eq!(b, expected, "h = {h}");
    }
}

#[test]
fn audit_running_minimum_and_sign_symmetry() {
    let report = exhaustive_audit(&audit_config(12, true)).unwrap();
    let table: Vec<Vec<i64>> = report.payload["full_table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| serde_json::from_value(r["b"].clone()).unwrap())
        .collect();
    assert_eq!(table.len() as u64, (25u64 * 25 - 1) / 2);
    for b in &table {
        let neg: Vec<i64> = b.iter().map(|x| -x).collect();
        assert!(!table.contains(&neg));
    }
    assert_eq!(report.payload["vectors_evaluated"], 312);
    for name in ["lambda-nonzero", "running-min-monotone", "sign-representatives"] {
        assert!(report.records_named(name).all(|r| r.status == Status::Pass), "{name}");
        assert!(report.records_named(name).count() > 0, "{name}");
    }
}

#[test]
fn audit_is_deterministic() {
    let a = exhaustive_audit(&audit_config(20, true)).unwrap().to_json().unwrap();
    let b = exhaustive_audit(&audit_config(20, true)).unwrap().to_json().unwrap();
    assert_eq!(a, b);
}

#[test]
fn audit_respects_combinatorial_cap() {
    let mut cfg = audit_config(10, false);
    cfg.constants.m = 9;
    assert!(matches!(exhaustive_audit(&cfg), Err(Error::CombinatorialCap { .. })));
}

#[test]
fn verify_suite_passes_and_detects_faults() {
    let cfg = VerifyConfig {
        n_max: 4,
        ..VerifyConfig::default()
    };
    let report = verify_suite(&cfg).unwrap();
    assert!(report.passed());
    for r in &report.records {
        assert!(anchors::ALL.contains(&r.paper_anchor), "{}", r.paper_anchor);
    }
    let faulty = verify_suite(&VerifyConfig {
        inject_fault: true,
        ..cfg
    })
    .unwrap();
    assert!(!faulty.passed());
    assert!(faulty
        .records
        .iter()
        .any(|r| r.status == Status::Fail && (r.name == "remainder-order" || r.name.starts_with("determinant"))));
}

#[test]
fn lcm_envelope_small_range() {
    let report = dn_check(&DnConfig {
        n_max: 500,
        precision_bits: 128,
    })
    .unwrap();
    assert!(report.passed());
    assert!(matches!(
        dn_check(&DnConfig {
            n_max: 1,
            precision_bits: 128
        }),
        Err(Error::InvalidParams(_))
    ));
}

#[test]
fn padic_remainders_within_bound() {
    let records = padic_remainder_checks(2, &alpha(5, 1), 5, &PadicAuditOptions::default()).unwrap();
    assert_eq!(records.len(), 6 * 2);
    assert!(records.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn padic_audit_runs() {
    let mut cfg = audit_config(6, false);
    cfg.constants.alpha = alpha(5, 1);
    cfg.constants.p = Some(5);
    let report = padic_audit(&cfg, &PadicAuditOptions::default()).unwrap();
    assert!(report.passed());
    for r in &report.records {
        assert!(anchors::ALL.contains(&r.paper_anchor));
    }
}
