//! Transcendental constants. Each is produced by a series with a geometric
//! error bound and cached per bit width; `crosscheck` holds the second,
//! independent algorithm for each one.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::elementary::ln_mant;
use super::{round_shr, HPReal, PrecisionContext};

const GUARD: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Pi,
    Log2,
    Log3,
    Gamma,
    Catalan,
    SqrtPiRecip,
}

fn cache() -> &'static Mutex<HashMap<(Kind, u32), BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<(Kind, u32), BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(kind: Kind, bits: u32, compute: impl FnOnce(u32) -> BigInt) -> BigInt {
    if let Some(v) = cache().lock().unwrap().get(&(kind, bits)) {
        return v.clone();
    }
    // computed outside the lock; a racing thread may duplicate work, never corrupt it
    let v = round_shr(&compute(bits + GUARD), GUARD);
    cache().lock().unwrap().entry((kind, bits)).or_insert(v).clone()
}

/// atan(1/k) or atanh(1/k) in fixed point at `bits`.
pub(crate) fn arctan_recip(k: u64, bits: u32, hyperbolic: bool) -> BigInt {
    let k2 = BigInt::from(k) * BigInt::from(k);
    let mut power: BigInt = (BigInt::one() << bits as usize) / k;
    let mut sum = BigInt::zero();
    let mut n: u64 = 1;
    let mut positive = true;
    while !power.is_zero() {
        let t = &power / n;
        if positive || hyperbolic {
            sum += t;
        } else {
            sum -= t;
        }
        positive = !positive;
        power /= &k2;
        n += 2;
    }
    sum
}

fn pi_machin(bits: u32) -> BigInt {
    arctan_recip(5, bits, false) * 16 - arctan_recip(239, bits, false) * 4
}

fn log2_machin(bits: u32) -> BigInt {
    arctan_recip(26, bits, true) * 18 - arctan_recip(4801, bits, true) * 2
        + arctan_recip(8749, bits, true) * 8
}

fn log3_split(bits: u32) -> BigInt {
    // log 3 = log 2 + log(3/2), log(3/2) = 2 atanh(1/5)
    log2_machin(bits) + arctan_recip(5, bits, true) * 2
}

/// Brent–McMillan: γ = U/V − O(e^{−4n}) with
/// U = Σ (n^k/k!)² (H_k − log n), V = Σ (n^k/k!)².
fn gamma_brent_mcmillan(bits: u32) -> BigInt {
    let n = ((bits as f64 * std::f64::consts::LN_2) / 4.0).ceil() as u64 + 2;
    let one: BigInt = BigInt::one() << bits as usize;
    let log_n = ln_mant(&(BigInt::from(n) << bits as usize), bits);
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut a = -log_n;
    let mut b = one;
    let mut u = a.clone();
    let mut v = b.clone();
    let mut k: u64 = 1;
    loop {
        b = &b * &n2 / (BigInt::from(k) * BigInt::from(k));
        a = (&a * &n2 / k + &b) / k;
        if a.is_zero() && b.is_zero() {
            break;
        }
        u += &a;
        v += &b;
        k += 1;
    }
    (u << bits as usize) / v
}

/// G = (π/8)·log(2+√3) + (3/8)·Σ_{n≥0} 1/((2n+1)² binom(2n,n)).
fn catalan_ramanujan(bits: u32) -> BigInt {
    let one: BigInt = BigInt::one() << bits as usize;
    let sqrt3 = (BigInt::from(3) << (2 * bits) as usize).sqrt();
    let log_term = ln_mant(&((&one << 1usize) + sqrt3), bits);
    let first = round_shr(&(pi_mant(bits) * log_term), bits) >> 3usize;
    let mut inv_binom = one;
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    while !inv_binom.is_zero() {
        let d = BigInt::from(2 * n + 1);
        sum += &inv_binom / (&d * &d);
        n += 1;
        inv_binom = inv_binom * n / (2 * (2 * n - 1));
    }
    first + ((sum * 3) >> 3usize)
}

pub(crate) fn pi_mant(bits: u32) -> BigInt {
    cached(Kind::Pi, bits, pi_machin)
}

pub(crate) fn ln2_mant(bits: u32) -> BigInt {
    cached(Kind::Log2, bits, log2_machin)
}

fn at(ctx: &PrecisionContext, kind: Kind, f: fn(u32) -> BigInt) -> HPReal {
    let bits = ctx.bits();
    HPReal::from_parts(cached(kind, bits, f), bits)
}

pub fn const_pi(ctx: &PrecisionContext) -> HPReal {
    at(ctx, Kind::Pi, pi_machin)
}

pub fn const_log2(ctx: &PrecisionContext) -> HPReal {
    at(ctx, Kind::Log2, log2_machin)
}

pub fn const_log3(ctx: &PrecisionContext) -> HPReal {
    at(ctx, Kind::Log3, log3_split)
}

/// Euler–Mascheroni constant.
pub fn const_gamma(ctx: &PrecisionContext) -> HPReal {
    at(ctx, Kind::Gamma, gamma_brent_mcmillan)
}

/// ζ(2) = π²/6.
pub fn const_zeta2(ctx: &PrecisionContext) -> HPReal {
    const_pi(ctx).square().div_int(6)
}

/// Catalan's constant G = Σ (−1)^n/(2n+1)².
pub fn const_catalan(ctx: &PrecisionContext) -> HPReal {
    at(ctx, Kind::Catalan, catalan_ramanujan)
}

/// 1/√π, the leading coefficient of binom(2n,n)/4^n ~ 1/√(πn).
pub fn const_sqrt_pi_recip(ctx: &PrecisionContext) -> HPReal {
    at(ctx, Kind::SqrtPiRecip, |bits| {
        let pi = pi_mant(bits + 8);
        let root = (pi << (bits as usize + 8)).sqrt();
        round_shr(&((BigInt::one() << (2 * bits + 8) as usize) / root), 0)
    })
}
