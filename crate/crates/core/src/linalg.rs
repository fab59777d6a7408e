//! Exact determinants, minors, inverses and Schur complements of integer matrices.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{precondition, Error, Result};
use crate::kernel;
use crate::matrix::{IndexSet, IntMatrix};
use crate::rational::{Rational, RationalMatrix};

/// Exact determinant by fraction-free elimination. Never rounds and never
/// wraps: a 64-bit overflow reruns the elimination over `BigInt`.
pub fn det(m: &IntMatrix) -> BigInt {
    kernel::det_exact(m.as_slice(), m.order(), &mut Vec::new())
}

/// `det(M[rows, cols])`.
pub fn minor(m: &IntMatrix, rows: &IndexSet, cols: &IndexSet) -> Result<BigInt> {
    Ok(det(&m.submatrix(rows, cols)?))
}

/// `det(M[set])`. The empty set has principal minor 1.
pub fn principal_minor(m: &IntMatrix, set: &IndexSet) -> Result<BigInt> {
    if set.is_empty() {
        return Ok(BigInt::from(1));
    }
    minor(m, set, set)
}

/// `det(M({i}, {j}))`: the minor with row `i` and column `j` deleted (1-based).
/// For an order-1 matrix this is the empty determinant, 1.
pub fn deleted_minor(m: &IntMatrix, i: usize, j: usize) -> Result<BigInt> {
    if m.order() == 1 {
        if i != 1 || j != 1 {
            return Err(Error::IndexOutOfRange { index: i.max(j), order: 1 });
        }
        return Ok(BigInt::from(1));
    }
    Ok(det(&m.delete(i, j)?))
}

/// Signed cofactor `(-1)^(i+j) det(M({i},{j}))`.
pub fn cofactor(m: &IntMatrix, i: usize, j: usize) -> Result<BigInt> {
    let d = deleted_minor(m, i, j)?;
    Ok(if (i + j).is_multiple_of(2) { d } else { -d })
}

/// All `n²` deleted minors `det(M({i},{j}))`, row-major in `(i, j)`.
pub fn deleted_minors(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.order();
    let mut out = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            out.push(deleted_minor(m, i, j).expect("indices in range"));
        }
    }
    out
}

/// Exact inverse via the adjugate: entry `(i, j)` is
/// `(-1)^(i+j) det(M({j},{i})) / det(M)` in lowest terms.
pub fn inverse(m: &IntMatrix) -> Result<RationalMatrix> {
    let d = det(m);
    if d.is_zero() {
        return Err(Error::Singular);
    }
    let n = m.order();
    let minors = deleted_minors(m);
    Ok(RationalMatrix::from_fn(n, |i, j| {
        let mut c = minors[(j - 1) * n + (i - 1)].clone();
        if (i + j) % 2 == 1 {
            c = -c;
        }
        Rational::new(c, d.clone())
    }))
}

/// A Schur complement together with the original indices of its rows.
///
/// Indexing is inherited: position `p` of `matrix` corresponds to index
/// `indices.members()[p - 1]` of the parent matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurComplement {
    pub matrix: RationalMatrix,
    pub indices: IndexSet,
}

impl SchurComplement {
    /// `det(C[gamma])` where `gamma` uses the parent's (inherited) indices.
    pub fn principal_minor(&self, gamma: &IndexSet) -> Result<Rational> {
        let local = gamma
            .iter()
            .map(|g| {
                self.indices
                    .members()
                    .binary_search(&g)
                    .map(|p| p + 1)
                    .map_err(|_| precondition(format!("index {g} is not in the complement")))
            })
            .collect::<Result<Vec<_>>>()?;
        if local.is_empty() {
            return Ok(Rational::one());
        }
        Ok(self.matrix.principal_submatrix(&IndexSet::new(local)?)?.det())
    }
}

/// `M/M[mu] = M[mu^c] - M[mu^c, mu] M[mu]^{-1} M[mu, mu^c]`.
///
/// `mu` must be a proper subset of `1..=n` with `M[mu]` nonsingular. An empty
/// `mu` yields `M` itself.
pub fn schur_complement(m: &IntMatrix, mu: &IndexSet) -> Result<SchurComplement> {
    let n = m.order();
    mu.check_within(n)?;
    if mu.len() == n {
        return Err(precondition("mu must be a proper subset of the index set"));
    }
    let comp = mu.complement(n);
    if mu.is_empty() {
        return Ok(SchurComplement { matrix: RationalMatrix::from(m), indices: comp });
    }
    let pivot = m.principal_submatrix(mu)?;
    let pivot_inv = inverse(&pivot).map_err(|_| precondition("pivot block M[mu] is singular"))?;
    let mu_idx = mu.zero_based();
    let c_idx = comp.zero_based();
    let k = mu_idx.len();
    // left = M[mu^c, mu] * M[mu]^{-1}, an (n-k) x k matrix
    let left: Vec<Vec<Rational>> = c_idx
        .iter()
        .map(|&r| {
            (0..k)
                .map(|q| {
                    let mut acc = Rational::zero();
                    for (p, &mp) in mu_idx.iter().enumerate() {
                        let a = m.at(r, mp);
                        if a != 0 {
                            acc = &acc + &(&Rational::from(a) * pivot_inv.get(p + 1, q + 1));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let matrix = RationalMatrix::from_fn(c_idx.len(), |i, j| {
        let col = c_idx[j - 1];
        let mut acc = Rational::from(m.at(c_idx[i - 1], col));
        for (q, &mq) in mu_idx.iter().enumerate() {
            let b = m.at(mq, col);
            if b != 0 {
                acc = &acc - &(&left[i - 1][q] * &Rational::from(b));
            }
        }
        acc
    });
    Ok(SchurComplement { matrix, indices: comp })
}

/// Kronecker product: block `(i, j)` is `P[i][j] * Q`.
pub fn kronecker(p: &IntMatrix, q: &IntMatrix) -> IntMatrix {
    let (np, nq) = (p.order(), q.order());
    IntMatrix::from_fn(np * nq, |i, j| {
        let (i, j) = (i - 1, j - 1);
        p.at(i / nq, j / nq) * q.at(i % nq, j % nq)
    })
}

/// Rank by elimination over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    RationalMatrix::from(m).rank()
}

/// Largest order of a nonsingular principal submatrix (0 for the zero
/// matrix). For symmetric matrices this equals the rank.
pub fn rank_principal(m: &IntMatrix) -> Result<usize> {
    m.require_symmetric()?;
    let n = m.order();
    let mut buf = Vec::new();
    let mut scratch = Vec::new();
    for k in (1..=n).rev() {
        let mut found = false;
        kernel::for_each_subset(n, k, |s| {
            m.gather(s, s, &mut buf);
            found = kernel::is_nonsingular(&buf, k, &mut scratch);
            !found
        });
        if found {
            return Ok(k);
        }
    }
    Ok(0)
}
