use nonsolv_core::bounds::counting::{load_scenarios, SzCase};
use nonsolv_core::bounds::ppart::{divides_order_polynomial, RowStatus};
use nonsolv_core::bounds::*;
use num_bigint::BigUint;

const PSL2_QS: [u64; 14] = [7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32];

#[test]
fn ppart_rows_hold_at_small_q() {
    let tables = load_tables().unwrap();
    assert_eq!(tables.len(), 7);
    let mut checked = 0;
    for t in &tables {
        for c in t.check_all(&[2, 3, 4, 5]).unwrap() {
            match &c.status {
                RowStatus::Fail => panic!("{} row {} ({}) fails at q = {}: {:?}", c.family, c.row, c.case, c.q, c.primes),
                RowStatus::Pass => {
                    assert!(!c.primes.is_empty());
                    checked += 1;
                }
                RowStatus::Skipped(reason) => assert!(!reason.is_empty()),
            }
        }
    }
    assert!(checked > 100, "only {checked} row checks ran");
}

#[test]
fn ppart_expressions_divide_order_polynomials() {
    for t in load_tables().unwrap() {
        for row in t.rows.iter().filter(|r| !r.skip) {
            assert!(divides_order_polynomial(&t.family, row).unwrap(), "{} {}: {}", t.family, row.case, row.ppart_expr);
        }
    }
}

/// For untwisted families the row label `e` is a degree `dᵢ`, and the case
/// names the factor of `q^e − 1` that `p` divides, so its order divides `e`.
#[test]
fn row_labels_match_degrees() {
    let degrees: [(&str, &[u32]); 4] = [
        ("E6", &[2, 5, 6, 8, 9, 12]),
        ("E7", &[2, 6, 8, 10, 12, 14, 18]),
        ("E8", &[2, 8, 12, 14, 18, 20, 24, 30]),
        ("F4", &[2, 6, 8, 12]),
    ];
    for (fam, ds) in degrees {
        let t = load_table(fam).unwrap();
        for row in &t.rows {
            let e = row.e.expect("untwisted rows carry e");
            assert!(ds.contains(&e), "{fam}: e = {e} is not a degree");
            assert_eq!(e % ppart::case_order(&row.case).unwrap(), 0, "{fam} {}", row.case);
        }
    }
}

#[test]
fn ppart_examples() {
    let e7 = load_table("E7").unwrap();
    let c = e7.check_row(e7.find_row(Some(18), "q^9+1").unwrap(), 2).unwrap();
    assert_eq!(c.status, RowStatus::Pass);
    assert_eq!(c.primes.len(), 1);
    assert_eq!((c.primes[0].p, c.primes[0].group_ppart.as_str()), (19, "19"));

    let f4 = load_table("F4").unwrap();
    let c = f4.check_row(f4.find_row(Some(8), "q^4+1").unwrap(), 2).unwrap();
    assert_eq!(c.status, RowStatus::Pass);
    assert_eq!((c.primes[0].p, c.primes[0].claim_ppart.as_str()), (17, "17"));

    let d4 = load_table("3D4").unwrap();
    let i = d4.rows.iter().position(|r| r.ppart_expr.replace(' ', "").starts_with("(q^2+q+1)^2")).unwrap();
    let c = d4.check_row(i, 2).unwrap();
    assert_eq!(c.status, RowStatus::Pass);
    assert_eq!((c.primes[0].p, c.primes[0].group_ppart.as_str()), (7, "49"));

    // 2F4 only exists for odd powers of 2.
    let f = load_table("2F4").unwrap();
    let skipped = f.check_row(0, 4).unwrap();
    assert!(matches!(skipped.status, RowStatus::Skipped(_)));
}

#[test]
fn zsigmondy_examples() {
    assert_eq!(zsigmondy_ppd(2, 6).unwrap(), None);
    assert_eq!(zsigmondy_ppd(2, 18).unwrap(), Some(19));
    assert_eq!(zsigmondy_ppd(3, 5).unwrap(), Some(11));
}

#[test]
fn psl2_sweep() {
    for q in PSL2_QS {
        for case in [Psl2Case::PDivQMinus, Psl2Case::PDivQPlus, Psl2Case::Unipotent] {
            let b = psl2_bounds(q, case).unwrap();
            assert!(b.status.ok(), "q = {q} {case}: {:?}", b.status);
            // The lower bound used for i₂(G) never exceeds the true count.
            let lower = &b.values.iter().find(|v| v.name == "i2(G) lower").unwrap().value;
            assert!(num_rational::BigRational::from_integer(b.i2_exact.clone().into()) >= *lower);
        }
        assert_eq!(psl2_bounds(q, Psl2Case::PDivQMinus).unwrap().status, BoundStatus::Pass);
    }
}

#[test]
fn field_aut_grid() {
    let mut ran = 0;
    for q0 in [2u64, 3, 4, 5, 8, 9] {
        for p in [5u64, 7, 11] {
            if (q0 as f64).powi(p as i32) > 1e10 {
                continue;
            }
            let b = field_aut_gamma_bound(q0, p, FieldAutFamily::Psl2).unwrap();
            assert!(b.passes, "PSL2 q0 = {q0}, p = {p}");
            ran += 1;
        }
    }
    assert!(ran >= 10);
    for (q0, p) in [(2u64, 5u64), (2, 7), (8, 5), (8, 7)] {
        let b = field_aut_gamma_bound(q0, p, FieldAutFamily::Sz).unwrap();
        assert!(b.passes, "Sz q0 = {q0}, p = {p}");
        let q = BigUint::from(q0).pow(p as u32);
        assert_eq!(b.i2, (&q * &q + 1u32) * (q - 1u32));
    }
}

#[test]
fn sz8_scenarios_pass() {
    let scen = load_scenarios().unwrap();
    assert_eq!(scen.len(), 2);
    for s in &scen {
        let o = countinv_check(s).unwrap();
        assert!(o.passes, "{}: {} vs {}", s.name, o.lhs, o.rhs);
    }
    // The displayed bound chain dominates the exact right-hand side.
    let chain = sz_countinv_chain(8, SzCase::QMinus1, None).unwrap();
    let exact = countinv_check(&scen[0]).unwrap();
    assert!(exact.rhs <= chain.rhs);
    assert!(!sz_countinv_chain(8, SzCase::QMinus1, Some(50u32.into())).unwrap().passes);
}
