//! Truncated power series of `numerator / Π (1 − x^d)` and the low-`k`
//! dimension formulas they are compared against.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// First `count` coefficients of `numerator(x) / Π_d (1 − x^d)`.
///
/// `numerator[i]` is the coefficient of `x^i`. Each factor `1/(1 − x^d)` is
/// applied as a prefix sum with stride `d`.
pub fn series_coefficients(numerator: &[i64], denominator_degrees: &[usize], count: usize) -> Result<Vec<BigInt>> {
    if let Some(&d) = denominator_degrees.iter().find(|&&d| d == 0) {
        return Err(Error::InvalidParams(format!("denominator degree {d} must be at least 1")));
    }
    let mut c: Vec<BigInt> = (0..count)
        .map(|i| BigInt::from(numerator.get(i).copied().unwrap_or(0)))
        .collect();
    for &d in denominator_degrees {
        for i in d..count {
            let prev = c[i - d].clone();
            c[i] += prev;
        }
    }
    Ok(c)
}

/// `1/((1−x²)(1−x⁶))`.
pub const K1_DENOMINATOR: [usize; 2] = [2, 6];
/// `1/((1−x²)(1−x⁴)(1−x⁶))`.
pub const K2_DENOMINATOR: [usize; 3] = [2, 4, 6];
/// `(1−x²)(1−x⁴)(1−x⁶)(1−x^10)`, shared by both `k = 3` series.
pub const K3_DENOMINATOR: [usize; 4] = [2, 4, 6, 10];

fn poly(terms: &[(usize, i64)]) -> Vec<i64> {
    let len = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
    let mut v = vec![0; len];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

pub fn k3_lower_numerator() -> Vec<i64> {
    poly(&[(0, 1), (8, 1)])
}

pub fn k3_conjecture_numerator() -> Vec<i64> {
    poly(&[(0, 1), (2, 1), (8, 1), (10, -1)])
}

pub fn k1_series(count: usize) -> Vec<BigInt> {
    series_coefficients(&[1], &K1_DENOMINATOR, count).expect("valid degrees")
}

pub fn k2_series(count: usize) -> Vec<BigInt> {
    series_coefficients(&[1], &K2_DENOMINATOR, count).expect("valid degrees")
}

/// `(1 + x⁸)/((1−x²)(1−x⁴)(1−x⁶)(1−x^10))`.
pub fn k3_lower_gf_coefficients(count: usize) -> Vec<BigInt> {
    series_coefficients(&k3_lower_numerator(), &K3_DENOMINATOR, count).expect("valid degrees")
}

/// CONJECTURE: `(1 + x² + x⁸ − x^10)/((1−x²)(1−x⁴)(1−x⁶)(1−x^10))`.
pub fn k3_conjecture_coefficients(count: usize) -> Vec<BigInt> {
    series_coefficients(&k3_conjecture_numerator(), &K3_DENOMINATOR, count).expect("valid degrees")
}

fn require_even(u: u64) -> Result<()> {
    if u % 2 != 0 {
        return Err(Error::OddLegCount(u as usize));
    }
    Ok(())
}

/// `⌊u/6⌋ + 1`.
pub fn k1_dimension(u: u64) -> Result<u64> {
    require_even(u)?;
    Ok(u / 6 + 1)
}

/// `⌊(u² + 12u)/48⌋ + 1`.
pub fn k2_dimension(u: u64) -> Result<u64> {
    require_even(u)?;
    Ok((u * u + 12 * u) / 48 + 1)
}
