//! Low-level determinant kernels over row-major `n × n` buffers.
//!
//! The in-place routines destroy their buffer. The 64-bit Bareiss kernel
//! returns `None` rather than wrapping when a value leaves `i64`; [`det_exact`]
//! and [`is_nonsingular`] then rerun the elimination over `BigInt`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Fraction-free (Bareiss) determinant with 64-bit storage, in place.
///
/// Every intermediate value is itself a minor of the input, so the only way to
/// leave `i64` is for some minor to exceed it; that case yields `None`. A
/// singular input yields `Some(0)`.
pub fn bareiss_i64(buf: &mut [i64], n: usize) -> Option<i64> {
    debug_assert!(buf.len() >= n * n);
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i64 = 1;
    for k in 0..n - 1 {
        if buf[k * n + k] == 0 {
            match (k + 1..n).find(|&r| buf[r * n + k] != 0) {
                Some(swap) => {
                    for j in k..n {
                        buf.swap(k * n + j, swap * n + j);
                    }
                    negate = !negate;
                }
                None => return Some(0),
            }
        }
        let pivot = buf[k * n + k];
        for i in k + 1..n {
            let lead = buf[i * n + k];
            for j in k + 1..n {
                let cur = buf[i * n + j];
                let across = buf[k * n + j];
                buf[i * n + j] = match cur
                    .checked_mul(pivot)
                    .and_then(|x| lead.checked_mul(across).and_then(|y| x.checked_sub(y)))
                {
                    Some(v) => v / prev,
                    None => wide_step(cur, pivot, lead, across, prev)?,
                };
            }
        }
        prev = pivot;
    }
    let last = buf[n * n - 1];
    if negate {
        last.checked_neg()
    } else {
        Some(last)
    }
}

#[inline(never)]
fn wide_step(cur: i64, pivot: i64, lead: i64, across: i64, prev: i64) -> Option<i64> {
    let num = (cur as i128)
        .checked_mul(pivot as i128)?
        .checked_sub((lead as i128).checked_mul(across as i128)?)?;
    i64::try_from(num / prev as i128).ok()
}

/// Exact determinant of the `n × n` row-major matrix in `src`.
///
/// Runs the 64-bit kernel in `scratch` and escalates to arbitrary precision on
/// overflow. `src` is left untouched.
pub fn det_exact(src: &[i64], n: usize, scratch: &mut Vec<i64>) -> BigInt {
    scratch.clear();
    scratch.extend_from_slice(&src[..n * n]);
    match bareiss_i64(scratch, n) {
        Some(v) => BigInt::from(v),
        None => {
            let mut big: Vec<BigInt> = src[..n * n].iter().copied().map(BigInt::from).collect();
            bareiss_big(&mut big, n)
        }
    }
}

/// Whether the determinant of `src` is nonzero; same escalation as [`det_exact`].
pub fn is_nonsingular(src: &[i64], n: usize, scratch: &mut Vec<i64>) -> bool {
    scratch.clear();
    scratch.extend_from_slice(&src[..n * n]);
    match bareiss_i64(scratch, n) {
        Some(v) => v != 0,
        None => {
            let mut big: Vec<BigInt> = src[..n * n].iter().copied().map(BigInt::from).collect();
            !bareiss_big(&mut big, n).is_zero()
        }
    }
}

/// Fraction-free determinant over arbitrary-precision integers.
pub fn bareiss_big(buf: &mut [BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if buf[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !buf[r * n + k].is_zero()) {
                Some(swap) => {
                    for j in k..n {
                        buf.swap(k * n + j, swap * n + j);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = buf[k * n + k].clone();
        for i in k + 1..n {
            let lead = buf[i * n + k].clone();
            for j in k + 1..n {
                let v = (&buf[i * n + j] * &pivot - &lead * &buf[k * n + j]) / &prev;
                buf[i * n + j] = v;
            }
        }
        prev = pivot;
    }
    let last = buf[n * n - 1].clone();
    if negate {
        -last
    } else {
        last
    }
}

/// Determinant over GF(2) of a matrix given as row bitmasks (bit `j` of
/// `rows[i]` is entry `(i, j)` mod 2).
pub fn det_gf2(rows: &mut [u64]) -> bool {
    let n = rows.len();
    for k in 0..n {
        let bit = 1u64 << k;
        let Some(p) = (k..n).find(|&r| rows[r] & bit != 0) else {
            return false;
        };
        rows.swap(k, p);
        let pivot = rows[k];
        for row in rows.iter_mut().skip(k + 1) {
            if *row & bit != 0 {
                *row ^= pivot;
            }
        }
    }
    true
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order. Stops early
/// when `f` returns `false`.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
