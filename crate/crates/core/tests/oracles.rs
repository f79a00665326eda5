//! Frozen values.

use num_bigint::BigInt;
use pointbound::classical::*;
use pointbound::order3::{bound_a3, precision_from_bits, rec3_table, wo3_report, wo3_t, RefineMatrix3};
use pointbound::qext::{int, rat, Quad};
use pointbound::refine2::*;
use pointbound::verify::hp::Hp;
use pointbound::verify::{check_affine_ineq, psd4_feasible_point, scan_halfinteger, weil_domain_min2, WeilDomainPoint};
use pointbound::BoundError;

fn p(q: u64, g: u64) -> CurveParams {
    CurveParams::new(q, g).unwrap()
}

fn n1(q: u64, t: &Quad) -> i64 {
    n1_from_trace(q, t).try_into().unwrap()
}

fn b(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn quad_construction() {
    let q = Quad::new(int(0), int(1), int(4)).unwrap();
    assert_eq!((q.x(), q.y()), (&int(2), &int(0)));
    let q = Quad::new(int(0), int(1), int(5)).unwrap();
    assert_eq!((q.x(), q.y(), q.radicand()), (&int(0), &int(1), &int(5)));
    assert_eq!(Quad::new(int(28), int(-7), int(5)).unwrap().to_string(), "28 + -7*sqrt(5)");
    assert!(matches!(Quad::new(int(0), int(1), int(-1)), Err(BoundError::DomainError(_))));
}

#[test]
fn quad_field_ops() {
    let s5 = Quad::sqrt_int(5);
    assert_eq!(&s5 * &s5, Quad::from_int(5));
    assert_eq!(Quad::from(rat(7, 2)) * Quad::from_int(2), Quad::from_int(7));
    let u = Quad::new(int(1), int(1), int(2)).unwrap();
    assert_eq!(u.inv().unwrap(), Quad::new(int(-1), int(1), int(2)).unwrap());
    assert_eq!(Quad::from_int(0).inv(), Err(BoundError::DivisionByZero));
    assert!(matches!(Quad::sqrt_int(2).checked_add(&Quad::sqrt_int(3)), Err(BoundError::RadicandMismatch { .. })));
}

#[test]
fn quad_sign_floor_cmp() {
    let u = Quad::new(int(-70), int(66), int(5)).unwrap();
    assert_eq!(u.signum(), 1);
    assert_eq!(u.floor(), BigInt::from(77));
    assert_eq!(Quad::from_int(0).signum(), 0);
    assert_eq!(Quad::new(int(7), int(-5), int(2)).unwrap().signum(), -1);
    assert_eq!(Quad::new(int(0), int(2), int(4)).unwrap().floor(), BigInt::from(4));
    assert_eq!(Quad::new(int(0), int(2), int(2)).unwrap().floor(), BigInt::from(2));
    let al = Quad::new(rat(-1, 2), rat(1, 2), int(61)).unwrap();
    assert!(al.checked_cmp(&Quad::from_int(3)).unwrap().is_gt());
    assert!(al.checked_cmp(&al).unwrap().is_eq());
    assert!(Quad::sqrt_int(5).checked_cmp(&Quad::from(rat(9, 4))).unwrap().is_lt());
}

#[test]
fn weil_and_serre() {
    assert_eq!(weil_t(&p(4, 3)), Quad::from_int(-12));
    assert_eq!(n1(4, &weil_t(&p(4, 3))), 17);
    assert_eq!(weil_t(&p(2, 1)), Quad::new(int(0), int(-2), int(2)).unwrap());
    assert_eq!(n1(2, &weil_t(&p(2, 1))), 5);
    assert_eq!(n1(9, &weil_t(&p(9, 1))), 16);
    assert_eq!(weil_serre_t(&p(2, 50)), int(-100));
    assert_eq!(n1(2, &Quad::from(weil_serre_t(&p(2, 50)))), 103);
    assert_eq!(Quad::from(weil_serre_t(&p(4, 7))), weil_t(&p(4, 7)));
    assert_eq!(weil_serre_t(&p(3, 10)), int(-30));
    assert_eq!(n1(3, &Quad::from(weil_serre_t(&p(3, 10)))), 34);
}

#[test]
fn thresholds() {
    assert_eq!((g2_threshold(23).rounded, g3_threshold(23).rounded), (10, 74));
    assert_eq!(g2_threshold(4).rounded, 1);
    assert!((g2_threshold(23).exact.to_f64() - 9.102).abs() < 1e-3);
    assert!((g3_threshold(23).exact.to_f64() - 74.61).abs() < 1e-2);
    for q in prime_powers(2, 200) {
        assert_eq!(in_ihara_range(&p(q, 4 * q)), q >= 34, "q = {q}");
    }
}

#[test]
fn ihara() {
    for (q, g, r, t, n) in [(3, 1, 49, -3, 7), (5, 10, 49, -30, 36), (2, 1, 25, -2, 5)] {
        let params = p(q, g);
        assert_eq!(ihara_radicand(&params), int(r));
        assert_eq!(ihara_t(&params).unwrap(), Quad::from_int(t));
        assert_eq!(n1(q, &ihara_t(&params).unwrap()), n);
    }
}

#[test]
fn general_bounds() {
    for q in [2u64, 5, 7, 13] {
        let params = p(q, 9);
        assert_eq!(general_bound(&params, &AffineCut::weil_serre(q)).unwrap(), weil_serre_t(&params));
    }
    let cut = AffineCut::new(b(&[5, 1])).unwrap().certify(5).unwrap();
    assert_eq!(general_bound(&p(5, 4), &cut).unwrap(), int(-16));
    let m = RefineMatrix2::new(1, 7, 13).unwrap();
    assert_eq!(general_bound(&p(5, 4), &AffineCut::from_matrix2(5, &m)).unwrap(), bound_a2(&p(5, 4), &m));
}

#[test]
fn refine2_values() {
    assert_eq!(bound_a2(&p(5, 4), &RefineMatrix2::new(1, 7, 13).unwrap()), rat(-27, 2));
    assert_eq!(bound_a2(&p(3, 1), &RefineMatrix2::new(1, 1, 1).unwrap()), int(-6));
    assert_eq!(alpha(&p(5, 10)).unwrap(), Quad::from_int(3));
    assert_eq!(alpha(&p(64, 256)).unwrap(), Quad::from(rat(23, 2)));
    assert_eq!(ihara_serre_t(&p(5, 4)).unwrap(), rat(-27, 2));
    assert_eq!(n1(5, &Quad::from(ihara_serre_t(&p(5, 4)).unwrap())), 19);
    assert_eq!(ihara_serre_t(&p(5, 10)).unwrap(), int(-30));
    let (ti, tis) = (ihara_t(&p(11, 8)).unwrap(), Quad::from(ihara_serre_t(&p(11, 8)).unwrap()));
    assert_eq!(n1(11, &tis), n1(11, &ti) - 1);
    assert!(gain(&p(5, 10)).unwrap().is_zero());
    assert_eq!(gain(&p(64, 256)).unwrap(), Quad::from(rat(8, 3)));
    assert!((gain(&p(5, 4)).unwrap().to_f64() - 0.1205).abs() < 1e-4);
    assert_eq!(seq_gain_4q(64).unwrap(), Quad::from(rat(8, 3)));
    assert_eq!(seq_gain_4q(256).unwrap(), Quad::from(rat(16, 3)));
    assert_eq!(seq_gain_cap(64), rat(8, 3));
}

#[test]
fn asymptotic_values() {
    let a = asymptotics(3);
    assert_eq!(a.alpha_inf, Quad::from_int(2));
    assert!(a.slope.is_zero());
    assert_eq!(asymptotics(2).alpha_inf.floor(), BigInt::from(1));
}

#[test]
fn oracle_values() {
    let tol = Hp::pow10(-90);
    let close = |a: &Hp, b: &Hp| pointbound::verify::hp::close(a, b, &tol);
    assert!(close(&weil_domain_min2(&p(3, 1)), &Hp::from_int(-3)));
    assert!(close(&weil_domain_min2(&p(5, 1)), &Hp::from_quad(&weil_t(&p(5, 1)))));
    assert!(close(&weil_domain_min2(&p(2, 1)), &Hp::from_int(-2)));

    let serre = check_affine_ineq(7, &b(&[6, 1])).unwrap();
    assert!(serre.holds);
    let expected = Hp::from_int(6) - Hp::from_int(28).sqrt();
    assert!(close(&serre.min_value, &expected));
    assert!(check_affine_ineq(5, &b(&[23, 7, 1])).unwrap().holds);
    assert!(!check_affine_ineq(5, &b(&[0, 1])).unwrap().holds);

    let params = p(5, 4);
    assert!(psd4_feasible_point(&params, &WeilDomainPoint::new(vec![int(0), int(40), int(0)])));
    assert_eq!(scan_halfinteger(&params, 40).unwrap(), 7);
    assert_eq!(scan_halfinteger(&p(5, 10), 40).unwrap(), 5);
    assert_eq!(scan_halfinteger(&p(64, 256), 80).unwrap(), 23);
}

#[test]
fn order3_values() {
    let m = RefineMatrix3::new(5, 1, 7, 28, -7).unwrap();
    assert_eq!(bound_a3(&p(5, 19), &m).unwrap(), rat(-1723, 36));
    let m = RefineMatrix3::new(7, 3, 29, 147, -29).unwrap();
    assert_eq!(bound_a3(&p(7, 21), &m).unwrap(), rat(-12348, 179));
    let m = RefineMatrix3::new(11, 2, 28, 191, -28).unwrap();
    assert_eq!(bound_a3(&p(11, 35), &m).unwrap(), rat(-33580, 221));
    let ns: Vec<BigInt> = rec3_table().into_iter().map(|r| r.n1_upper).collect();
    assert_eq!(ns, b(&[53, 76, 129, 163]));

    assert_eq!(wo3_report(&p(5, 19), 60).unwrap().n1_upper, BigInt::from(54));
    assert_eq!(wo3_report(&p(8, 36), 60).unwrap().n1_upper, BigInt::from(130));
    let enc = wo3_t(&p(5, 19), &precision_from_bits(60)).unwrap();
    assert!(enc.width() <= precision_from_bits(60));
}
