//! Dense square integer matrices and index sets.
//!
//! All indices at this surface are 1-based: row `i` of an order-`n` matrix has
//! `1 <= i <= n`. Storage is row-major and 0-based internally.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A dense square matrix of signed integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("order must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries)
    }

    /// Builds an order-`n` matrix from a function of 1-based `(row, col)`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        assert!(n > 0, "order must be at least 1");
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[i64] {
        &self.entries
    }

    pub(crate) fn at(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Row `i` (1-based).
    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    /// Column `j` (1-based), copied.
    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.at(i, j - 1)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|&v| v == 0 || v == 1)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.at(i, i) == 0)
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.at(i, i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn require_symmetric(&self) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::NotSymmetric)
        }
    }

    pub fn require_zero_one(&self) -> Result<()> {
        if self.is_zero_one() {
            Ok(())
        } else {
            Err(Error::NotZeroOne)
        }
    }

    /// Submatrix on the given rows and columns, as a row-major buffer.
    pub(crate) fn gather(&self, rows: &[usize], cols: &[usize], out: &mut Vec<i64>) {
        out.clear();
        for &r in rows {
            let base = r * self.n;
            out.extend(cols.iter().map(|&c| self.entries[base + c]));
        }
    }

    /// The submatrix `M[rows, cols]`.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        rows.check_within(self.n)?;
        cols.check_within(self.n)?;
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::Dimension(format!(
                "submatrix needs equal nonzero sizes, got {}x{}",
                rows.len(),
                cols.len()
            )));
        }
        let mut out = Vec::new();
        self.gather(&rows.zero_based(), &cols.zero_based(), &mut out);
        Self::new(rows.len(), out)
    }

    /// The principal submatrix `M[set]`.
    pub fn principal_submatrix(&self, set: &IndexSet) -> Result<Self> {
        self.submatrix(set, set)
    }

    /// `M` with row `i` and column `j` removed (1-based), i.e. `M({i},{j})`.
    pub fn delete(&self, i: usize, j: usize) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::Dimension("cannot delete from an order-1 matrix".into()));
        }
        for idx in [i, j] {
            if !(1..=self.n).contains(&idx) {
                return Err(Error::IndexOutOfRange { index: idx, order: self.n });
            }
        }
        let rows: Vec<usize> = (0..self.n).filter(|&r| r != i - 1).collect();
        let cols: Vec<usize> = (0..self.n).filter(|&c| c != j - 1).collect();
        let mut out = Vec::new();
        self.gather(&rows, &cols, &mut out);
        Self::new(self.n - 1, out)
    }

    /// Number of nonzero entries in row `i` (1-based).
    pub fn row_support(&self, i: usize) -> usize {
        self.row(i).iter().filter(|&&v| v != 0).count()
    }

    /// Number of nonzero entries in column `j` (1-based).
    pub fn column_support(&self, j: usize) -> usize {
        (0..self.n).filter(|&i| self.at(i, j - 1) != 0).count()
    }

    /// Serializes to the text format: the order on the first line, then one
    /// line of space-separated entries per row.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let row = &self.entries[i * self.n..(i + 1) * self.n];
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = parse_rows(s, |tok| tok.parse::<i64>().map_err(|e| e.to_string()))?;
        let n = rows.len();
        Self::new(n, rows.into_iter().flatten().collect())
    }
}

/// Shared reader for the matrix text format. Blank lines are skipped.
pub(crate) fn parse_rows<T>(
    s: &str,
    mut parse: impl FnMut(&str) -> std::result::Result<T, String>,
) -> Result<Vec<Vec<T>>> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first_no, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line: first_no,
        message: format!("expected the matrix order, found `{first}`"),
    })?;
    if n == 0 {
        return Err(Error::Parse { line: first_no, message: "order must be at least 1".into() });
    }
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if rows.len() == n {
            return Err(Error::Parse { line: line_no, message: "trailing data after last row".into() });
        }
        let row = line
            .split_whitespace()
            .map(|tok| parse(tok).map_err(|m| Error::Parse { line: line_no, message: format!("`{tok}`: {m}") }))
            .collect::<Result<Vec<T>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: s.lines().count().max(1),
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    Ok(rows)
}

/// A sorted, duplicate-free set of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet {
    members: Vec<usize>,
}

impl IndexSet {
    /// Builds a set from arbitrary-order members. Rejects zero and duplicates.
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if members.first() == Some(&0) {
            return Err(Error::IndexOutOfRange { index: 0, order: 0 });
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("index set has duplicate members".into()));
        }
        Ok(Self { members })
    }

    /// Builds a set and checks every member lies in `1..=n`.
    pub fn within(members: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let set = Self::new(members)?;
        set.check_within(n)?;
        Ok(set)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        Self { members: (1..=n).collect() }
    }

    /// `{1, ..., n} \ self`.
    pub fn complement(&self, n: usize) -> Self {
        Self { members: (1..=n).filter(|i| !self.contains(*i)).collect() }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut members: Vec<usize> = self.members.iter().chain(&other.members).copied().collect();
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    /// Set from a bitmask over 0-based positions (bit `b` means index `b + 1`).
    pub fn from_bits(bits: u64) -> Self {
        Self { members: (0..64).filter(|b| bits >> b & 1 == 1).map(|b| b + 1).collect() }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub(crate) fn zero_based(&self) -> Vec<usize> {
        self.members.iter().map(|i| i - 1).collect()
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<()> {
        match self.members.last() {
            Some(&m) if m > n => Err(Error::IndexOutOfRange { index: m, order: n }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
