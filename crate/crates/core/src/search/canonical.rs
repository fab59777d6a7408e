//! Canonical representatives under simultaneous row and column permutation.

use super::space::encode_slice;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Largest order for which all `n!` relabelings are tried.
pub const MAX_CANONICAL_ORDER: usize = 8;

/// The smallest mask over all matrices `P^T M P`.
pub fn canonical_mask(m: &IntMatrix) -> Result<u128> {
    m.require_symmetric()?;
    m.require_zero_one()?;
    let n = m.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::OrderOutOfRange { n, min: 1, max: MAX_CANONICAL_ORDER });
    }
    Ok(canonical_slice(m.as_slice(), n))
}

pub(crate) fn canonical_slice(a: &[i64], n: usize) -> u128 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut buf = vec![0i64; n * n];
    let mut best = u128::MAX;
    let mut visit = |p: &[usize], buf: &mut Vec<i64>| {
        for i in 0..n {
            for j in 0..n {
                buf[i * n + j] = a[p[i] * n + p[j]];
            }
        }
        best = best.min(encode_slice(buf, n));
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    visit(&perm, &mut buf);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm, &mut buf);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}
