use binharm_core::hpreal::{const_log2, const_log3, const_pi};
use binharm_core::special::{dilog, dilog_rational, eq21_check, DilogValue};
use binharm_core::{ExactRational, HPReal, PrecisionContext};
use proptest::prelude::*;

fn zeta2(c: &PrecisionContext) -> HPReal {
    const_pi(c).square().div_int(6)
}

fn tol(c: &PrecisionContext) -> HPReal {
    HPReal::pow10(-(c.working_digits() as i32), c)
}

fn tenths() -> impl Iterator<Item = ExactRational> {
    (1..=9).map(|k| ExactRational::ratio(k, 10))
}

/// Li₂(−x) for x > 1, by inversion; the library domain stops at −1.
fn dilog_below_minus_one(x: &ExactRational, c: &PrecisionContext) -> HPReal {
    let xv = HPReal::from_rational(x, c);
    let inv = dilog_rational(&-x.recip().unwrap(), c).unwrap();
    -zeta2(c) - xv.ln().unwrap().square().div_int(2) - inv
}

#[test]
fn special_points() {
    for wd in [32, 64, 100] {
        let c = PrecisionContext::new(wd).unwrap();
        let pi2 = const_pi(&c).square();
        let l2 = const_log2(&c);
        let cases = [
            (ExactRational::one(), pi2.div_int(6)),
            (ExactRational::ratio(-1, 1), -pi2.div_int(12)),
            (ExactRational::ratio(1, 2), pi2.div_int(12) - l2.square().div_int(2)),
        ];
        for (x, expect) in cases {
            let v = dilog_rational(&x, &c).unwrap();
            assert!((&v - &expect).abs() < tol(&c), "Li2({x}) at {wd}");
        }
    }
}

#[test]
fn reflection_on_tenths() {
    let c = PrecisionContext::default();
    for x in tenths() {
        let xv = HPReal::from_rational(&x, &c);
        let y = &HPReal::one(&c) - &xv;
        let lhs = dilog(&xv, &c).unwrap() + dilog(&y, &c).unwrap() + xv.ln().unwrap() * y.ln().unwrap();
        assert!((&lhs - &zeta2(&c)).abs() < tol(&c), "x = {x}");
    }
}

#[test]
fn duplication_on_tenths() {
    let c = PrecisionContext::default();
    for x in tenths() {
        let lhs = dilog_rational(&x, &c).unwrap() + dilog_rational(&-x.clone(), &c).unwrap();
        let rhs = dilog_rational(&(&x * &x), &c).unwrap().div_int(2);
        assert!((&lhs - &rhs).abs() < tol(&c), "x = {x}");
    }
}

#[test]
fn landen_grid() {
    let c = PrecisionContext::default();
    for x in [ExactRational::ratio(1, 3), ExactRational::ratio(1, 2), ExactRational::one(), ExactRational::ratio(2, 1)] {
        let xv = HPReal::from_rational(&x, &c);
        let up = &HPReal::one(&c) + &xv;
        let first = dilog_rational(&(ExactRational::one() / (ExactRational::one() + &x)), &c).unwrap();
        let second = if x > ExactRational::one() {
            dilog_below_minus_one(&x, &c)
        } else {
            dilog_rational(&-x.clone(), &c).unwrap()
        };
        let rhs = zeta2(&c) - (up.ln().unwrap() * up.checked_div(&xv.square()).unwrap().ln().unwrap()).div_int(2);
        assert!((&(first - second) - &rhs).abs() < tol(&c), "x = {x}");
    }
}

#[test]
fn derivative_by_central_differences() {
    let c = PrecisionContext::default();
    let wd = c.working_digits() as i32;
    let h = HPReal::pow10(-wd / 4, &c);
    let one = HPReal::one(&c);
    let f = |x: &HPReal| dilog(&(&one - x).ldexp(-1), &c).unwrap();
    for x in [HPReal::from_ratio(1, 5, &c), HPReal::from_ratio(1, 2, &c)] {
        let numeric = (f(&(&x + &h)) - f(&(&x - &h))).checked_div(&h.mul_int(2)).unwrap();
        let exact = (&one + &x).ldexp(-1).ln().unwrap().checked_div(&(&one - &x)).unwrap();
        assert!((&numeric - &exact).abs() < HPReal::pow10(-wd / 2, &c), "x = {}", x.to_sig_string(3));
    }
}

#[test]
fn two_dilogs_of_thirds() {
    for wd in [64, 128] {
        let c = PrecisionContext::new(wd).unwrap();
        let (l, r) = eq21_check(&c).unwrap();
        assert!(l.to_sig_string_truncated(10).starts_with("1.041459586"));
        assert!((&l - &r).abs() < HPReal::pow10(-(wd as i32) + 2, &c));
        assert_eq!(r, zeta2(&c) - const_log3(&c).square().div_int(2));
    }
}

#[test]
fn out_of_domain_is_an_error() {
    let c = PrecisionContext::default();
    assert!(dilog(&HPReal::from_ratio(101, 100, &c), &c).is_err());
    assert!(DilogValue::new(&HPReal::from_ratio(-3, 2, &c), &c).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn increasing_and_bounded(p in 0i64..1000, q in 0i64..1000) {
        let c = PrecisionContext::new(32).unwrap();
        let (a, b) = (p.min(q), p.max(q));
        let la = dilog(&HPReal::from_ratio(a, 1000, &c), &c).unwrap();
        let lb = dilog(&HPReal::from_ratio(b, 1000, &c), &c).unwrap();
        prop_assert!(la <= lb);
        prop_assert!(lb.abs() <= zeta2(&c));
    }

    #[test]
    fn reflection_anywhere(p in 1i64..1000) {
        let c = PrecisionContext::new(40).unwrap();
        let x = HPReal::from_ratio(p, 1000, &c);
        let y = &HPReal::one(&c) - &x;
        let lhs = dilog(&x, &c).unwrap() + dilog(&y, &c).unwrap() + x.ln().unwrap() * y.ln().unwrap();
        prop_assert!((&lhs - &zeta2(&c)).abs() < tol(&c));
    }
}
