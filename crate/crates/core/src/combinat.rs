//! Integer combinatorics: binomials on all of Z x Z and trinomial coefficients.

use crate::error::{Error, Result};

fn classical_binom(a: i64, b: i64) -> i64 {
    debug_assert!(a >= 0 && b >= 0);
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: i128 = 1;
    for i in 0..b {
        acc = acc * i128::from(a - i) / i128::from(i + 1);
    }
    i64::try_from(acc).expect("binomial coefficient overflows i64")
}

/// Binomial coefficient extended to all integer pairs by Pascal's rule.
///
/// Zero for `b < 0`; for `a < 0` and `b >= 0` it equals `(-1)^b binom(b-a-1, b)`.
pub fn ext_binom(a: i64, b: i64) -> i64 {
    if b < 0 {
        return 0;
    }
    if a >= 0 {
        classical_binom(a, b)
    } else {
        let v = classical_binom(b - a - 1, b);
        if b % 2 == 0 {
            v
        } else {
            -v
        }
    }
}

/// `C^d_{p,q} = d! / (p! q! (d-p-q)!)`.
pub fn multinomial(d: u32, p: u32, q: u32) -> Result<i64> {
    if p + q > d {
        return Err(Error::Domain(format!("multinomial needs p+q <= d, got p={p} q={q} d={d}")));
    }
    let (d, p, q) = (i64::from(d), i64::from(p), i64::from(q));
    let first = i128::from(classical_binom(d, p));
    let second = i128::from(classical_binom(d - p, q));
    i64::try_from(first * second).map_err(|_| Error::Domain("multinomial overflows i64".into()))
}
