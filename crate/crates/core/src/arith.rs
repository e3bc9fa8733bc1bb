//! Exact integer helpers for the colour-count formulas.

/// `base^exp`, saturating at `u128::MAX`.
pub fn pow_sat(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}

/// Binomial coefficient `C(n, k)`, saturating at `u128::MAX`.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128)
        .try_fold(1u128, |acc, i| acc.checked_mul(i))
        .unwrap_or(u128::MAX)
}

/// Largest integer `k` with `k <= scale * (num / den)^(1/r)`, that is with
/// `k^r * den <= scale^r * num`.
///
/// Exact whenever `scale^r * num` fits in a `u128`; beyond that the answer
/// falls back to a floating-point estimate.
pub fn floor_scaled_root(scale: u64, num: u64, den: u64, r: u32) -> u64 {
    assert!(den > 0 && r > 0);
    let rhs = pow_sat(scale as u128, r).checked_mul(num as u128);
    let Some(rhs) = rhs else {
        let est = scale as f64 * libm::pow(num as f64 / den as f64, 1.0 / r as f64);
        return libm::floor(est) as u64;
    };
    let fits = |k: u64| match pow_sat(k as u128, r).checked_mul(den as u128) {
        Some(lhs) => lhs <= rhs,
        None => false,
    };
    // k <= scale * num^(1/r) <= scale * num
    let (mut lo, mut hi) = (0u64, scale.saturating_mul(num.max(1)).saturating_add(1));
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(5, 0), 1);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom(10, 3), 120);
        assert_eq!(factorial(5), 120);
    }

    #[test]
    fn scaled_root_matches_float_on_small_inputs() {
        for r in 1..=4u32 {
            for num in 0..200u64 {
                for den in 1..6u64 {
                    let exact = floor_scaled_root(49, num, den, r);
                    let est = 49.0 * (num as f64 / den as f64).powf(1.0 / r as f64);
                    // float floor can be off by one right at perfect powers
                    assert!((exact as f64 - est.floor()).abs() <= 1.0, "{r} {num} {den}");
                    assert!(
                        pow_sat(exact as u128, r) * den as u128 <= pow_sat(49, r) * num as u128
                    );
                    assert!(
                        pow_sat(exact as u128 + 1, r) * den as u128 > pow_sat(49, r) * num as u128
                    );
                }
            }
        }
    }

    #[test]
    fn scaled_root_perfect_powers() {
        // 100 * (16 / 1)^(1/2) = 400 exactly
        assert_eq!(floor_scaled_root(100, 16, 1, 2), 400);
        assert_eq!(floor_scaled_root(1, 27, 1, 3), 3);
        assert_eq!(floor_scaled_root(1, 26, 1, 3), 2);
        assert_eq!(floor_scaled_root(49, 0, 1, 2), 0);
    }
}
