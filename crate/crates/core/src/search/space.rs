//! The space of symmetric 0-1 matrices of a fixed order, indexed by bitmask.
//!
//! Bit order (frozen): bits `0..n` hold the diagonal entries `(1,1)..(n,n)`;
//! the remaining `n(n-1)/2` bits hold the strict upper triangle row by row,
//! `(1,2), (1,3), .., (1,n), (2,3), ..`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Largest supported order: every minor of a 0-1 matrix of order 13 fits
/// comfortably in 64 bits, and a mask fits in 91 bits.
pub const MAX_ORDER: usize = 13;

pub fn check_order(n: usize) -> Result<()> {
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange { n, min: 1, max: MAX_ORDER });
    }
    Ok(())
}

pub fn mask_bits(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Which masks a scan visits. Zero-diagonal scans walk only the upper-triangle
/// bits: index `x` stands for mask `x << n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Restriction {
    #[default]
    All,
    ZeroDiagonal,
}

impl Restriction {
    pub fn name(self) -> &'static str {
        match self {
            Self::All => "all",
            Self::ZeroDiagonal => "zero-diagonal",
        }
    }

    /// Number of indices in the space.
    pub fn space_size(self, n: usize) -> u128 {
        match self {
            Self::All => 1u128 << mask_bits(n),
            Self::ZeroDiagonal => 1u128 << (mask_bits(n) - n),
        }
    }

    pub fn mask_of(self, index: u128, n: usize) -> u128 {
        match self {
            Self::All => index,
            Self::ZeroDiagonal => index << n,
        }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Restriction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(Self::All),
            "zero-diagonal" => Ok(Self::ZeroDiagonal),
            _ => Err(format!("unknown restriction `{s}`")),
        }
    }
}

/// Shard `index` of `count` equal contiguous pieces of the index space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shard {
    index: u64,
    count: u64,
}

impl Shard {
    pub const FULL: Shard = Shard { index: 0, count: 1 };

    pub fn new(index: u64, count: u64) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::Precondition(format!("invalid shard {index}/{count}")));
        }
        Ok(Self { index, count })
    }

    pub fn index(self) -> u64 {
        self.index
    }

    pub fn count(self) -> u64 {
        self.count
    }

    /// `[i T / c, (i + 1) T / c)`.
    pub fn range(self, total: u128) -> (u128, u128) {
        let bound = |i: u64| {
            let (q, r) = (total / self.count as u128, total % self.count as u128);
            q * i as u128 + r * i as u128 / self.count as u128
        };
        (bound(self.index), bound(self.index + 1))
    }

    /// The `j`-th of `jobs` pieces of this shard; the pieces tile it exactly.
    pub fn split(self, j: u64, jobs: u64) -> Result<Shard> {
        if jobs == 0 || j >= jobs {
            return Err(Error::Precondition(format!("invalid job {j} of {jobs}")));
        }
        let count = self
            .count
            .checked_mul(jobs)
            .ok_or_else(|| Error::Precondition("shard count overflow".into()))?;
        Shard::new(self.index * jobs + j, count)
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

impl FromStr for Shard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("shard must look like `i/c`, found `{s}`"));
        let (i, c) = s.split_once('/').ok_or_else(bad)?;
        Shard::new(i.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?)
    }
}

impl Serialize for Shard {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Shard {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Writes the matrix with the given mask into a row-major `n * n` buffer.
pub fn fill(mask: u128, n: usize, out: &mut [i64]) {
    for i in 0..n {
        out[i * n + i] = (mask >> i & 1) as i64;
    }
    let mut bit = n;
    for i in 0..n {
        for j in i + 1..n {
            let v = (mask >> bit & 1) as i64;
            out[i * n + j] = v;
            out[j * n + i] = v;
            bit += 1;
        }
    }
}

pub fn decode(mask: u128, n: usize) -> Result<IntMatrix> {
    check_order(n)?;
    if mask >> mask_bits(n) != 0 {
        return Err(Error::Precondition(format!("mask {mask} has bits beyond order {n}")));
    }
    let mut buf = vec![0; n * n];
    fill(mask, n, &mut buf);
    IntMatrix::new(n, buf)
}

pub fn encode(m: &IntMatrix) -> Result<u128> {
    m.require_symmetric()?;
    m.require_zero_one()?;
    let n = m.order();
    check_order(n)?;
    Ok(encode_slice(m.as_slice(), n))
}

/// Mask of a symmetric 0-1 row-major buffer; no checks.
pub(crate) fn encode_slice(a: &[i64], n: usize) -> u128 {
    let mut mask = 0u128;
    for i in 0..n {
        mask |= (a[i * n + i] as u128 & 1) << i;
    }
    let mut bit = n;
    for i in 0..n {
        for j in i + 1..n {
            mask |= (a[i * n + j] as u128 & 1) << bit;
            bit += 1;
        }
    }
    mask
}

/// Position in one shard of the enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationCursor {
    n: usize,
    restriction: Restriction,
    shard: Shard,
    next: u128,
    end: u128,
}

impl EnumerationCursor {
    pub fn new(n: usize, restriction: Restriction, shard: Shard) -> Result<Self> {
        check_order(n)?;
        let (next, end) = shard.range(restriction.space_size(n));
        Ok(Self { n, restriction, shard, next, end })
    }

    /// Continues from index `next` inside the shard.
    pub fn resume_at(mut self, next: u128) -> Result<Self> {
        let (start, end) = self.shard.range(self.restriction.space_size(self.n));
        if !(start..=end).contains(&next) {
            return Err(Error::Checkpoint(format!("cursor {next} lies outside shard {}", self.shard)));
        }
        self.next = next;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn restriction(&self) -> Restriction {
        self.restriction
    }

    pub fn shard(&self) -> Shard {
        self.shard
    }

    /// Next index to be visited.
    pub fn position(&self) -> u128 {
        self.next
    }

    pub fn end(&self) -> u128 {
        self.end
    }

    pub fn is_done(&self) -> bool {
        self.next >= self.end
    }

    /// Advances and returns the mask just passed, filling `buf` with its matrix.
    pub fn advance_into(&mut self, buf: &mut [i64]) -> Option<u128> {
        if self.is_done() {
            return None;
        }
        let mask = self.restriction.mask_of(self.next, self.n);
        self.next += 1;
        fill(mask, self.n, buf);
        Some(mask)
    }
}

impl Iterator for EnumerationCursor {
    type Item = (u128, IntMatrix);

    fn next(&mut self) -> Option<Self::Item> {
        let mut buf = vec![0; self.n * self.n];
        let mask = self.advance_into(&mut buf)?;
        Some((mask, IntMatrix::new(self.n, buf).expect("square buffer")))
    }
}

/// Every symmetric 0-1 matrix of order `n` in `shard`, in mask order.
pub fn enumerate(n: usize, shard: Shard) -> Result<EnumerationCursor> {
    EnumerationCursor::new(n, Restriction::All, shard)
}
