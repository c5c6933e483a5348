//! Catalan numbers and their inclusion-exclusion variants for polygons with
//! minimally-blocking reflex vertices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::number::BigCount;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("C^({r})_{n} needs 0 <= 2r <= n")]
pub struct OutOfRange {
    pub n: u32,
    pub r: u32,
}

/// `C_m = binom(2m, m) / (m + 1)`, via `C_{k+1} = C_k·2(2k+1)/(k+2)`.
pub fn catalan(m: u32) -> BigCount {
    let mut c = BigCount::one();
    for k in 0..m as u64 {
        c = c * BigCount::from(2 * (2 * k + 1)) / BigCount::from(k + 2);
    }
    c
}

pub fn binomial(n: u32, k: u32) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc = acc * BigCount::from(n - i) / BigCount::from(i + 1);
    }
    acc
}

/// `C^{(r)}_n = Σ_{i=0..r} (-1)^i binom(r, i) C_{n-i}`.
pub fn catalan_generalized(n: u32, r: u32) -> Result<BigCount, OutOfRange> {
    if 2 * r > n {
        return Err(OutOfRange { n, r });
    }
    let mut acc = BigInt::zero();
    for i in 0..=r {
        let term = BigInt::from(binomial(r, i) * catalan(n - i));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    debug_assert!(!acc.is_negative());
    Ok(acc.to_biguint().expect("inclusion-exclusion count is non-negative"))
}

/// `C'_n = C_n - C_{n-1}`.
pub fn catalan_prime(n: u32) -> Result<BigCount, OutOfRange> {
    catalan_generalized(n, 1)
}

/// `C''_n = C_n - 2C_{n-1} + C_{n-2}`.
pub fn catalan_double_prime(n: u32) -> Result<BigCount, OutOfRange> {
    catalan_generalized(n, 2)
}
