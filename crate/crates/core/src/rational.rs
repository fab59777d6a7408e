//! Exact rationals and rational matrices.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{parse_rows, IndexSet, IntMatrix};

/// An exact rational `num/den` kept in lowest terms with `den >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// `num/den` reduced. Panics on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Self(self.0.recip())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (p, q),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| format!("bad numerator `{num}`"))?;
        let den: BigInt = den.parse().map_err(|_| format!("bad denominator `{den}`"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Self::new(num, den))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

/// A dense square matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    /// Row-major constructor. Order 0 is allowed (the empty matrix, det 1).
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| self.entries[i * n + j] == self.entries[j * n + i]))
    }

    pub fn scale(&self, by: &Rational) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|e| e * by).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::Dimension(format!("cannot multiply orders {} and {}", self.n, rhs.n)));
        }
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    let a = &self.entries[i * n + k];
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * &rhs.entries[k * n + j]);
                }
                out.push(acc);
            }
        }
        Ok(Self { n, entries: out })
    }

    /// Principal submatrix on positions of `set` (1-based, relative to this matrix).
    pub fn principal_submatrix(&self, set: &IndexSet) -> Result<Self> {
        set.check_within(self.n)?;
        let idx = set.zero_based();
        let k = idx.len();
        let mut out = Vec::with_capacity(k * k);
        for &r in &idx {
            for &c in &idx {
                out.push(self.entries[r * self.n + c].clone());
            }
        }
        Ok(Self { n: k, entries: out })
    }

    /// Determinant by Gaussian elimination over the rationals.
    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut a: Vec<BigRational> = self.entries.iter().map(|e| e.0.clone()).collect();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det *= &pivot;
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let factor = &a[i * n + k] / &pivot;
                for j in k..n {
                    let sub = &factor * &a[k * n + j];
                    a[i * n + j] -= sub;
                }
            }
        }
        Rational(det)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a: Vec<BigRational> = self.entries.iter().map(|e| e.0.clone()).collect();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                a.swap(row * n + j, p * n + j);
            }
            let pivot = a[row * n + col].clone();
            for i in row + 1..n {
                if a[i * n + col].is_zero() {
                    continue;
                }
                let factor = &a[i * n + col] / &pivot;
                for j in col..n {
                    let sub = &factor * &a[row * n + j];
                    a[i * n + j] -= sub;
                }
            }
            row += 1;
        }
        row
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a: Vec<BigRational> = self.entries.iter().map(|e| e.0.clone()).collect();
        let mut inv: Vec<BigRational> = Self::identity(n).entries.into_iter().map(|e| e.0).collect();
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r * n + k].is_zero()).ok_or(Error::Singular)?;
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                    inv.swap(k * n + j, p * n + j);
                }
            }
            let pivot = a[k * n + k].recip();
            for j in 0..n {
                a[k * n + j] *= &pivot;
                inv[k * n + j] *= &pivot;
            }
            for i in 0..n {
                if i == k || a[i * n + k].is_zero() {
                    continue;
                }
                let factor = a[i * n + k].clone();
                for j in 0..n {
                    let s1 = &factor * &a[k * n + j];
                    a[i * n + j] -= s1;
                    let s2 = &factor * &inv[k * n + j];
                    inv[i * n + j] -= s2;
                }
            }
        }
        Ok(Self { n, entries: inv.into_iter().map(Rational).collect() })
    }

    /// The common modulus of all entries, if every entry has the same nonzero
    /// absolute value.
    pub fn common_modulus(&self) -> Option<Rational> {
        let first = self.entries.first()?.abs();
        if first.is_zero() {
            return None;
        }
        self.entries.iter().all(|e| e.abs() == first).then_some(first)
    }
}

impl From<&IntMatrix> for RationalMatrix {
    fn from(m: &IntMatrix) -> Self {
        Self {
            n: m.order(),
            entries: m.as_slice().iter().map(|&v| Rational::from(v)).collect(),
        }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let line: Vec<String> =
                self.entries[i * self.n..(i + 1) * self.n].iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for RationalMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = parse_rows(s, |tok| tok.parse::<Rational>())?;
        let n = rows.len();
        Self::new(n, rows.into_iter().flatten().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_eagerly() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::new(0, 5).to_string(), "0");
        assert_eq!(Rational::new(0, 5).denom(), &BigInt::from(1));
        assert_eq!("4/-6".parse::<Rational>().unwrap(), Rational::new(-2, 3));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn gauss_jordan_inverse_and_det() {
        let m = RationalMatrix::from(&IntMatrix::from_rows(&[[2, 1], [1, 1]]).unwrap());
        assert_eq!(m.det(), Rational::from(1));
        let inv = m.inverse().unwrap();
        assert_eq!(inv.mul(&m).unwrap(), RationalMatrix::identity(2));
        let singular = RationalMatrix::from(&IntMatrix::from_rows(&[[1, 2], [2, 4]]).unwrap());
        assert!(matches!(singular.inverse(), Err(Error::Singular)));
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn text_round_trip() {
        let m = RationalMatrix::from_fn(2, |i, j| Rational::new(i as i64, (i + j) as i64));
        let text = m.to_string();
        assert_eq!(text, "2\n1/2 1/3\n2/3 1/2\n");
        assert_eq!(text.parse::<RationalMatrix>().unwrap(), m);
    }
}
