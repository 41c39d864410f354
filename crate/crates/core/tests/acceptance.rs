//! One line per acceptance criterion.
//!
//! E1J's printed right-hand side is wrong (its series sums to π²/6 + log²2,
//! twice E1G, not 2π²/3 + log²2 = 8·E1G). Criteria 1 and 7 are run exactly
//! as stated and report FAIL because of it; the process only exits nonzero
//! when a criterion fails for any other reason, or when E1J stops failing.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use binharm_core::accel::{self, SumOptions};
use binharm_core::catalog::{self, verify_identity, Verification};
use binharm_core::exact::{binomial_row, binomial_transform_seq, harmonic, HarmonicNumbers};
use binharm_core::genfun::{closed_form, GenFunId};
use binharm_core::hpreal::{const_catalan, const_log2, const_log3, const_pi};
use binharm_core::special::{dilog, dilog_rational, eq21_check};
use binharm_core::transform::boyadzhiev_two_sided;
use binharm_core::{inventory, ExactRational, HPReal, PrecisionContext, Status};

/// Identities whose printed closed form disagrees with their series.
const MISPRINTED: &[&str] = &["E1J"];

struct Outcome {
    pass: bool,
    detail: String,
    /// Everything that failed is explained by `MISPRINTED`.
    explained: bool,
}

impl Outcome {
    fn new(failures: &[String], detail: String) -> Self {
        let explained = !failures.is_empty() && failures.iter().all(|f| MISPRINTED.iter().any(|m| f.starts_with(m)));
        let detail = if failures.is_empty() { detail } else { format!("{detail}; failing: {}", failures.join(", ")) };
        Outcome { pass: failures.is_empty(), detail, explained }
    }
}

fn ctx(wd: u32) -> PrecisionContext {
    PrecisionContext::new(wd).unwrap()
}

fn agree(a: &HPReal, b: &HPReal, digits: u32) -> bool {
    a.agreeing_digits(b, 200) >= digits
}

fn verified(id: &str, digits: u32, c: &PrecisionContext) -> Verification {
    verify_identity(catalog::get(id).unwrap(), digits, c, &SumOptions::default())
}

fn lhs(id: &str, c: &PrecisionContext) -> HPReal {
    verified(id, 12, c).sum.expect("series summed").value
}

fn full_catalog() -> Outcome {
    let c = ctx(32);
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut closed = 0;
    for identity in inventory().iter().filter(|i| !i.is_open()) {
        closed += 1;
        let r = verify_identity(identity, 12, &c, &SumOptions::default()).report;
        if r.status != Status::Pass {
            failures.push(format!("{} ({}, rel diff {})", r.id, r.status, r.rel_diff));
        }
    }
    let elapsed = started.elapsed();
    if closed < 27 {
        failures.push(format!("only {closed} closed forms"));
    }
    if elapsed > Duration::from_secs(120) {
        failures.push(format!("took {:.1} s", elapsed.as_secs_f64()));
    }
    let passed = closed - failures.len();
    Outcome::new(
        &failures,
        format!("{passed} of {closed} closed forms agree to 12 digits at precision 32 in {:.1} s", elapsed.as_secs_f64()),
    )
}

fn flagship_values() -> Outcome {
    let c = ctx(32);
    let pi = const_pi(&c);
    let l2 = const_log2(&c);
    let expected = [
        ("EQ10", pi.square().div_int(3)),
        ("EQ7", HPReal::from_i64(2, &c)),
        ("EQ17", const_catalan(&c).mul_int(4) - &pi * &l2),
        ("EQ20", pi.square().div_int(6) - l2.square()),
        ("EQ22", dilog_rational(&ExactRational::ratio(1, 3), &c).unwrap().mul_int(2)),
    ];
    let failures: Vec<String> = expected
        .iter()
        .filter(|(id, v)| !agree(&lhs(id, &c), v, 12))
        .map(|(id, _)| id.to_string())
        .collect();
    Outcome::new(&failures, "EQ10 = π²/3, EQ7 = 2, EQ17 = 4G − π·log2, EQ20 = π²/6 − log²2, EQ22 = 2·Li₂(1/3)".into())
}

fn high_precision() -> Outcome {
    let c = ctx(64);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for id in ["EQ10", "EQ6"] {
        let v = verified(id, 30, &c);
        notes.push(format!("{id} {} digits with {} terms", v.report.digits_verified, v.report.terms_used));
        if v.report.status != Status::Pass || v.report.terms_used > accel::DEFAULT_TERM_BUDGET {
            failures.push(id.to_string());
        }
    }
    Outcome::new(&failures, format!("30 digits at precision 64: {}", notes.join(", ")))
}

fn signed(k: u64, q: ExactRational) -> ExactRational {
    if k % 2 == 1 {
        q
    } else {
        -q
    }
}

fn exact_arithmetic() -> Outcome {
    let mut failures = Vec::new();
    let h: Vec<ExactRational> = HarmonicNumbers::new().take(201).map(|(_, v)| v).collect();
    for n in 1..=200u64 {
        let row = binomial_row(n);
        let b = |k: u64| ExactRational::from(row[k as usize].clone());
        let forward: ExactRational = (1..=n).map(|k| signed(k, b(k) / ExactRational::from(k))).sum();
        let inverse: ExactRational = (1..=n).map(|k| signed(k, b(k) * &h[k as usize])).sum();
        if forward != harmonic(n) || inverse != ExactRational::ratio(1, n as i64) {
            failures.push(format!("n = {n}"));
        }
    }
    for len in 1..=50usize {
        // a deterministic mix of signs, sizes and denominators
        let f: Vec<_> = (0..len as i64).map(|k| ExactRational::ratio((k * 37 % 23) - 11, 1 + k % 7)).collect();
        if binomial_transform_seq(&binomial_transform_seq(&f)) != f {
            failures.push(format!("involution at length {len}"));
        }
    }
    Outcome::new(&failures, "harmonic binomial identity and its inversion for n ≤ 200; involution for length ≤ 50".into())
}

fn dilogarithm_suite() -> Outcome {
    let c = ctx(64);
    let wd = c.working_digits() as i32;
    let tol = HPReal::pow10(-wd, &c);
    let one = HPReal::one(&c);
    let pi2 = const_pi(&c).square();
    let zeta2 = pi2.div_int(6);
    let l2 = const_log2(&c);
    let li2q = |p, q| dilog_rational(&ExactRational::ratio(p, q), &c).unwrap();
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            failures.push(what);
        }
    };

    check((&li2q(1, 1) - &zeta2).abs() < tol, "Li₂(1)".into());
    check((&li2q(-1, 1) + &pi2.div_int(12)).abs() < tol, "Li₂(−1)".into());
    check((&li2q(1, 2) - &(pi2.div_int(12) - l2.square().div_int(2))).abs() < tol, "Li₂(1/2)".into());

    for k in 1..=9 {
        let x = HPReal::from_ratio(k, 10, &c);
        let y = &one - &x;
        let refl = dilog(&x, &c).unwrap() + dilog(&y, &c).unwrap() + x.ln().unwrap() * y.ln().unwrap();
        check((&refl - &zeta2).abs() < tol, format!("reflection at {k}/10"));
        let dup = li2q(k, 10) + li2q(-k, 10) - li2q(k * k, 100).div_int(2);
        check(dup.abs() < tol, format!("duplication at {k}/10"));
    }

    for (p, q) in [(1i64, 3i64), (1, 2), (1, 1), (2, 1)] {
        let x = HPReal::from_ratio(p, q, &c);
        let up = &one + &x;
        let minus = if p > q {
            // Li₂(−x) for x > 1 by inversion, outside the library's domain
            -&zeta2 - x.ln().unwrap().square().div_int(2) - li2q(-q, p)
        } else {
            li2q(-p, q)
        };
        let lhs = li2q(q, p + q) - minus;
        let rhs = &zeta2 - &(up.ln().unwrap() * up.checked_div(&x.square()).unwrap().ln().unwrap()).div_int(2);
        check((&lhs - &rhs).abs() < tol, format!("Landen at {p}/{q}"));
    }

    let (a, b) = eq21_check(&c).unwrap();
    check((&a - &b).abs() < tol, "2·Li₂(1/3) − Li₂(−1/3)".into());
    // the same value as π²/6 − log²3/2, built here from scratch
    check((&a - &(&zeta2 - &const_log3(&c).square().div_int(2))).abs() < tol, "log 3 form".into());

    let h = HPReal::pow10(-wd / 4, &c);
    let f = |x: &HPReal| dilog(&(&one - x).ldexp(-1), &c).unwrap();
    for x in [HPReal::from_ratio(1, 5, &c), HPReal::from_ratio(1, 2, &c)] {
        let numeric = (f(&(&x + &h)) - f(&(&x - &h))).checked_div(&h.mul_int(2)).unwrap();
        let exact = (&one + &x).ldexp(-1).ln().unwrap().checked_div(&(&one - &x)).unwrap();
        check((&numeric - &exact).abs() < HPReal::pow10(-wd / 2, &c), format!("derivative at {}", x.to_sig_string(2)));
    }
    Outcome::new(&failures, format!("special values, reflection, duplication, Landen, two-thirds relation, derivative at {wd} digits"))
}

fn transform_suite() -> Outcome {
    let c = ctx(40);
    let half = HPReal::from_ratio(-1, 2, &c);
    let tol = HPReal::pow10(-20, &c);
    let h: Vec<ExactRational> = HarmonicNumbers::new().take(400).map(|(_, v)| v).collect();
    let signed_h: Vec<ExactRational> = h.iter().enumerate().map(|(k, v)| signed(k as u64, v.clone())).collect();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (p, q) in [(1, 20), (1, 10), (1, 5)] {
        let x = HPReal::from_ratio(p, q, &c);
        let z = x.mul_int(4);
        // a_k = H_k gives Σ H_n binom(2n,n) xⁿ on the left
        let (_, rhs) = boyadzhiev_two_sided(&h, &half, &z, 400, &c).unwrap();
        let err = (&rhs - &closed_form(GenFunId::HnCbc, &x, &c).unwrap()).abs();
        // a_k = (−1)^{k−1} H_k gives the alternating generating function
        let (_, alt) = boyadzhiev_two_sided(&signed_h, &half, &z, 400, &c).unwrap();
        let alt_err = (&alt - &closed_form(GenFunId::HnCbcAlt, &x, &c).unwrap()).abs();
        worst = worst.max(err.to_f64()).max(alt_err.to_f64());
        if err >= tol || alt_err >= tol {
            failures.push(format!("x = {p}/{q}"));
        }
    }
    Outcome::new(&failures, format!("N = 400 at precision 40, x ∈ {{0.05, 0.1, 0.2}}, worst error {worst:.2e}"))
}

fn derivation_chains() -> Outcome {
    let c = ctx(32);
    let v = |id| lhs(id, &c);
    let (eq5, eq10, eq12, eq15) = (v("EQ5"), v("EQ10"), v("EQ12"), v("EQ15"));
    let (e1e, e1g) = (v("E1E"), v("E1G"));
    let e1j = v("E1J");
    let chains = [
        ("EQ11 = EQ10 − EQ5", v("EQ11"), &eq10 - &eq5),
        ("EQ13 = EQ10 − EQ12", v("EQ13"), &eq10 - &eq12),
        ("EQ16 = EQ10 − EQ5 − EQ15", v("EQ16"), &(&eq10 - &eq5) - &eq15),
        ("AH1 = E1G − E1E", v("AH1"), &e1g - &e1e),
        ("AH2 = E1G + E1E", v("AH2"), &e1g + &e1e),
        ("E1J = 8·E1G", e1j.clone(), e1g.mul_int(8)),
    ];
    let failures: Vec<String> = chains
        .iter()
        .filter(|(_, a, b)| !agree(a, b, 12))
        .map(|(name, _, _)| name.to_string())
        .collect();
    let ratio = e1j.checked_div(&e1g).unwrap();
    Outcome::new(&failures, format!("six chains on summed left sides, 12 digits; E1J/E1G = {}", ratio.to_sig_string(12)))
}

fn open_sums() -> Outcome {
    let (lo, hi) = (ctx(64), ctx(96));
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for id in ["OS1", "OS2"] {
        let series = &catalog::get(id).unwrap().series;
        let a = accel::sum(series, 64, &lo).unwrap().value;
        let b = accel::sum(series, 96, &hi).unwrap().value;
        let stable = a.agreeing_digits(&b, 64);
        let report = verified(id, 30, &lo).report;
        notes.push(format!("{id} = {}… ({stable} stable digits)", b.to_sig_string_truncated(20)));
        if stable < 30 || report.status != Status::OpenEvaluated {
            failures.push(id.to_string());
        }
    }
    Outcome::new(&failures, notes.join(", "))
}

fn bound_soundness() -> Outcome {
    let c = ctx(32);
    let mut failures = Vec::new();
    let mut checked = 0;
    for identity in inventory().iter().filter(|i| !i.is_open()) {
        let v = verify_identity(identity, 12, &c, &SumOptions::default());
        let Some(sum) = v.sum else {
            failures.push(format!("{} not summed", identity.id));
            continue;
        };
        // the true value of a misprinted identity is its corrected form
        let truth = match identity.id {
            "E1J" => verified("E1J_CORRECTED", 12, &c).rhs,
            _ => v.rhs,
        }
        .unwrap();
        checked += 1;
        if (&sum.value - &truth).abs() > sum.error_bound {
            failures.push(identity.id.to_string());
        }
    }
    Outcome::new(&failures, format!("|sum − true value| ≤ error_bound for {checked} identities at 12 digits"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("full catalog", full_catalog),
        ("flagship values", flagship_values),
        ("high-precision stress", high_precision),
        ("exact arithmetic", exact_arithmetic),
        ("dilogarithm suite", dilogarithm_suite),
        ("transform suite", transform_suite),
        ("derivation chains", derivation_chains),
        ("open sums", open_sums),
        ("bound soundness", bound_soundness),
    ];
    let mut passed = 0;
    let mut explained = 0;
    let mut unexplained = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {verdict} {name}: {} [{:.1} s]", k + 1, o.detail, started.elapsed().as_secs_f64());
        match (o.pass, o.explained) {
            (true, _) => passed += 1,
            (false, true) => explained += 1,
            (false, false) => unexplained += 1,
        }
    }
    println!("acceptance: {passed} of 9 pass, {explained} fail only on misprinted closed forms, {unexplained} fail otherwise");
    // E1J must keep failing: if it ever passed, the catalog would be hiding the misprint
    let e1j_still_red = verified("E1J", 12, &ctx(32)).report.status == Status::Fail;
    if unexplained == 0 && e1j_still_red {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
