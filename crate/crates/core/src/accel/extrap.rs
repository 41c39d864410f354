//! Generalized Richardson extrapolation of partial sums with a known
//! asymptotic lattice of exponents (and optional single logarithms).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hpreal::{HPReal, PrecisionContext};

/// Solves A·x = b by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<HPReal>>, mut b: Vec<HPReal>) -> Result<Vec<HPReal>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs())).expect("non-empty");
        if a[pivot][col].is_zero() {
            return Err(Error::Unsupported("singular extrapolation system".into()));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col].checked_div(&a[col][col])?;
            if f.is_zero() {
                continue;
            }
            for k in col..n {
                let d = &f * &a[col][k];
                a[row][k] -= d;
            }
            let d = &f * &b[col];
            b[row] -= d;
        }
    }
    let mut x = vec![HPReal::from_parts(BigInt::zero(), b[0].bits()); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc -= &a[row][k] * &x[k];
        }
        x[row] = acc.checked_div(&a[row][row])?;
    }
    Ok(x)
}

/// Sample points M_i = M0·(1 + i/4), i < count.
pub fn sample_points(m0: u64, count: usize) -> Vec<u64> {
    (0..count as u64).map(|i| m0 + m0 * i / 4).collect()
}

/// The limit S of samples S(M) ~ S + Σ_j (a_j + b_j·log M)·M^{−(x0 + j)},
/// x0 = tail_e2/2 > 0. Unknowns are S and as many basis functions as the
/// sample count allows, log terms first within each order.
pub fn extrapolate(samples: &[(u64, HPReal)], tail_e2: i64, logs: bool, ctx: &PrecisionContext) -> Result<HPReal> {
    let m = samples.len();
    if m < 2 || tail_e2 <= 0 {
        return Err(Error::Unsupported("extrapolation needs two samples and a decaying tail".into()));
    }
    let m0 = samples[0].0 as i64;
    let mut rows = Vec::with_capacity(m);
    for (big_m, _) in samples {
        // t = M/M0 ≥ 1, scaled so every entry is O(1)
        let t = HPReal::from_ratio(*big_m as i64, m0, ctx);
        let inv = t.recip()?;
        let log_t = t.ln()?;
        let mut p = inv.powi((tail_e2 / 2) as i32)?;
        if tail_e2 % 2 != 0 {
            p = &p * &inv.sqrt()?;
        }
        let mut row = vec![HPReal::one(ctx)];
        while row.len() < m {
            if logs {
                row.push(&p * &log_t);
            }
            if row.len() < m {
                row.push(p.clone());
            }
            p = &p * &inv;
        }
        rows.push(row);
    }
    let rhs = samples.iter().map(|(_, s)| s.with_ctx(ctx)).collect();
    Ok(solve(rows, rhs)?.swap_remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpreal::const_zeta2;

    #[test]
    fn linear_system() {
        let c = PrecisionContext::new(32).unwrap();
        let r = |v: i64| HPReal::from_i64(v, &c);
        // 2x + y = 5, x + 3y = 10 → (1, 3)
        let x = solve(vec![vec![r(2), r(1)], vec![r(1), r(3)]], vec![r(5), r(10)]).unwrap();
        assert!((&x[0] - &r(1)).abs() < c.epsilon());
        assert!((&x[1] - &r(3)).abs() < c.epsilon());
        assert!(solve(vec![vec![r(1), r(2)], vec![r(2), r(4)]], vec![r(1), r(2)]).is_err());
    }

    #[test]
    fn zeta_two_from_partial_sums() {
        let c = PrecisionContext::new(60).unwrap();
        let points = sample_points(100, 17);
        let mut s = HPReal::zero(&c);
        let mut samples = Vec::new();
        let mut k = 0;
        for n in 1..=*points.last().unwrap() {
            s += HPReal::from_ratio(1, (n * n) as i64, &c);
            if n == points[k] {
                samples.push((n, s.clone()));
                k += 1;
            }
        }
        let v = extrapolate(&samples, 2, false, &c).unwrap();
        assert!((&v - &const_zeta2(&c)).abs() < HPReal::pow10(-30, &c));
    }
}
