//! Named matrix families.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    /// `I_n`
    Identity,
    /// `O_n`
    Zero,
    /// `J_n`
    AllOnes,
    /// `J_n - 2 I_n`
    OnesMinusTwoIdentity,
    /// `J_n - I_n`, the adjacency matrix of the complete graph.
    Complete,
    /// `A(C_n)`, edges `{i, i+1 mod n}`; needs `n >= 3`.
    Cycle,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Self::Identity,
        Self::Zero,
        Self::AllOnes,
        Self::OnesMinusTwoIdentity,
        Self::Complete,
        Self::Cycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::Zero => "zero",
            Self::AllOnes => "ones",
            Self::OnesMinusTwoIdentity => "jn-2i",
            Self::Complete => "complete",
            Self::Cycle => "cycle",
        }
    }

    fn min_order(self) -> usize {
        match self {
            Self::Cycle => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown construction `{s}`"))
    }
}

pub fn construct(kind: Construction, n: usize) -> Result<IntMatrix> {
    let min = kind.min_order();
    if n < min {
        return Err(Error::OrderOutOfRange { n, min, max: usize::MAX });
    }
    Ok(match kind {
        Construction::Identity => IntMatrix::from_fn(n, |i, j| (i == j) as i64),
        Construction::Zero => IntMatrix::from_fn(n, |_, _| 0),
        Construction::AllOnes => IntMatrix::from_fn(n, |_, _| 1),
        Construction::OnesMinusTwoIdentity => IntMatrix::from_fn(n, |i, j| if i == j { -1 } else { 1 }),
        Construction::Complete => IntMatrix::from_fn(n, |i, j| (i != j) as i64),
        Construction::Cycle => IntMatrix::from_fn(n, |i, j| {
            let d = i.abs_diff(j);
            (d == 1 || d == n - 1) as i64
        }),
    })
}

pub fn identity(n: usize) -> IntMatrix {
    construct(Construction::Identity, n).expect("n >= 1")
}

pub fn cycle(n: usize) -> Result<IntMatrix> {
    construct(Construction::Cycle, n)
}

/// Appends a copy of the last row and column, so the new last row equals the
/// old last row extended by `b_nn`.
pub fn border_duplicate(m: &IntMatrix) -> Result<IntMatrix> {
    m.require_symmetric()?;
    let n = m.order();
    Ok(IntMatrix::from_fn(n + 1, |i, j| m.get(i.min(n), j.min(n))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_matches_the_five_by_five_display() {
        let expected = IntMatrix::from_rows(&[
            [0, 1, 0, 0, 1],
            [1, 0, 1, 0, 0],
            [0, 1, 0, 1, 0],
            [0, 0, 1, 0, 1],
            [1, 0, 0, 1, 0],
        ])
        .unwrap();
        assert_eq!(cycle(5).unwrap(), expected);
    }

    #[test]
    fn small_cycles_rejected() {
        assert!(cycle(2).is_err());
        assert!(construct(Construction::Identity, 0).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(construct(Construction::OnesMinusTwoIdentity, 2).unwrap().as_slice(), &[-1, 1, 1, -1]);
        assert_eq!(construct(Construction::Complete, 2).unwrap().as_slice(), &[0, 1, 1, 0]);
        assert_eq!(cycle(3).unwrap(), construct(Construction::Complete, 3).unwrap());
        for c in Construction::ALL {
            assert_eq!(c.name().parse::<Construction>().unwrap(), c);
        }
    }

    #[test]
    fn border_duplicate_repeats_last_row() {
        let m = IntMatrix::from_rows(&[[1, 2], [2, 3]]).unwrap();
        let b = border_duplicate(&m).unwrap();
        assert_eq!(b.as_slice(), &[1, 2, 2, 2, 3, 3, 2, 3, 3]);
        assert_eq!(b.row(2), b.row(3));
        assert!(border_duplicate(&IntMatrix::from_rows(&[[0, 1], [0, 0]]).unwrap()).is_err());
    }
}
