//! Enhanced principal rank sequences.
//!
//! Letter `j` of the sequence of a symmetric matrix records whether all (`A`),
//! some but not all (`S`), or none (`N`) of its order-`j` principal minors are
//! nonzero. Over GF(2) "nonzero" means "odd".

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{precondition, Error, Result};
use crate::kernel;
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    S,
    N,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::S => 'S',
            Letter::N => 'N',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'A' => Some(Letter::A),
            'S' => Some(Letter::S),
            'N' => Some(Letter::N),
            _ => None,
        }
    }

    fn from_flags(saw_nonzero: bool, saw_zero: bool) -> Self {
        match (saw_nonzero, saw_zero) {
            (true, false) => Letter::A,
            (false, _) => Letter::N,
            (true, true) => Letter::S,
        }
    }
}

/// Parses a word over `{A, S, N}`.
pub fn letters(word: &str) -> Result<Vec<Letter>> {
    word.chars()
        .enumerate()
        .map(|(i, c)| {
            Letter::from_char(c).ok_or_else(|| Error::PatternSyntax {
                column: i + 1,
                message: format!("`{c}` is not one of A, S, N"),
            })
        })
        .collect()
}

pub fn word(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.as_char()).collect()
}

/// The field a sequence was computed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Gf2,
}

impl Field {
    pub fn tag(self) -> &'static str {
        match self {
            Field::Rationals => "Q",
            Field::Gf2 => "GF2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EprSequence {
    letters: Vec<Letter>,
    field: Field,
}

impl EprSequence {
    pub fn new(letters: Vec<Letter>, field: Field) -> Result<Self> {
        if letters.is_empty() {
            return Err(precondition("an epr-sequence has at least one letter"));
        }
        Ok(Self { letters, field })
    }

    /// Sequence over the rationals from a word such as `NSNAA`.
    pub fn from_word(w: &str) -> Result<Self> {
        Self::new(letters(w)?, Field::Rationals)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter `j`, 1-based.
    pub fn letter(&self, j: usize) -> Letter {
        self.letters[j - 1]
    }

    pub fn word(&self) -> String {
        word(&self.letters)
    }

    /// Word with its field suffix, e.g. `NSNAA@Q`.
    pub fn tagged(&self) -> String {
        format!("{}@{}", self.word(), self.field.tag())
    }

    pub fn starts_with(&self, prefix: &str) -> bool {
        self.word().starts_with(prefix)
    }

    pub fn ends_with(&self, suffix: &str) -> bool {
        self.word().ends_with(suffix)
    }
}

impl fmt::Display for EprSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl FromStr for EprSequence {
    type Err = Error;

    /// Accepts `NSNAA`, `NSNAA@Q` or `NSNAN@GF2`.
    fn from_str(s: &str) -> Result<Self> {
        let (w, field) = match s.split_once('@') {
            None => (s, Field::Rationals),
            Some((w, "Q")) => (w, Field::Rationals),
            Some((w, "GF2")) => (w, Field::Gf2),
            Some((_, t)) => return Err(precondition(format!("unknown field tag `{t}`"))),
        };
        Self::new(letters(w)?, field)
    }
}

impl Serialize for EprSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.tagged())
    }
}

impl<'de> Deserialize<'de> for EprSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reusable buffers for principal-minor evaluation.
#[derive(Default)]
pub(crate) struct MinorScratch {
    buf: Vec<i64>,
    work: Vec<i64>,
}

/// Letter at order `k` over the rationals, no symmetry check.
pub(crate) fn rational_letter(m: &IntMatrix, k: usize, s: &mut MinorScratch) -> Letter {
    let n = m.order();
    let (mut nonzero, mut zero) = (false, false);
    kernel::for_each_subset(n, k, |set| {
        m.gather(set, set, &mut s.buf);
        if kernel::is_nonsingular(&s.buf, k, &mut s.work) {
            nonzero = true;
        } else {
            zero = true;
        }
        !(nonzero && zero)
    });
    Letter::from_flags(nonzero, zero)
}

fn gf2_rows(m: &IntMatrix) -> Vec<u64> {
    let n = m.order();
    (0..n)
        .map(|i| (0..n).fold(0u64, |acc, j| acc | (((m.at(i, j) & 1) as u64) << j)))
        .collect()
}

fn gf2_letter(rows: &[u64], k: usize, sub: &mut Vec<u64>) -> Letter {
    let n = rows.len();
    let (mut odd, mut even) = (false, false);
    kernel::for_each_subset(n, k, |set| {
        sub.clear();
        for &r in set {
            let bits = set.iter().enumerate().fold(0u64, |acc, (p, &c)| acc | ((rows[r] >> c & 1) << p));
            sub.push(bits);
        }
        if kernel::det_gf2(sub) {
            odd = true;
        } else {
            even = true;
        }
        !(odd && even)
    });
    Letter::from_flags(odd, even)
}

/// The epr-sequence of a symmetric integer matrix over the rationals.
///
/// Every order is evaluated from its principal minors; within an order the
/// scan stops once both a zero and a nonzero minor have been seen.
pub fn epr(m: &IntMatrix) -> Result<EprSequence> {
    m.require_symmetric()?;
    let mut s = MinorScratch::default();
    let letters = (1..=m.order()).map(|k| rational_letter(m, k, &mut s)).collect();
    EprSequence::new(letters, Field::Rationals)
}

/// The epr-sequence of a symmetric 0-1 matrix read over GF(2). Orders above
/// 64 are not supported.
pub fn epr2(m: &IntMatrix) -> Result<EprSequence> {
    m.require_symmetric()?;
    m.require_zero_one()?;
    if m.order() > 64 {
        return Err(Error::OrderOutOfRange { n: m.order(), min: 1, max: 64 });
    }
    let rows = gf2_rows(m);
    let mut sub = Vec::new();
    let letters = (1..=m.order()).map(|k| gf2_letter(&rows, k, &mut sub)).collect();
    EprSequence::new(letters, Field::Gf2)
}

/// Letter `k` (1-based) of `epr(m)` without computing the rest.
pub fn letter_at(m: &IntMatrix, k: usize) -> Result<Letter> {
    m.require_symmetric()?;
    if !(1..=m.order()).contains(&k) {
        return Err(Error::IndexOutOfRange { index: k, order: m.order() });
    }
    Ok(rational_letter(m, k, &mut MinorScratch::default()))
}

/// The last `count` letters of `epr(m)`.
pub fn tail(m: &IntMatrix, count: usize) -> Result<Vec<Letter>> {
    m.require_symmetric()?;
    let n = m.order();
    if count > n {
        return Err(precondition(format!("cannot take {count} letters from a sequence of length {n}")));
    }
    let mut s = MinorScratch::default();
    Ok((n - count + 1..=n).map(|k| rational_letter(m, k, &mut s)).collect())
}

/// The sequence of the inverse of a nonsingular symmetric matrix with sequence
/// `seq`: the first `n - 1` letters reversed, followed by `A`.
pub fn inverse_epr(seq: &EprSequence) -> Result<EprSequence> {
    let l = seq.letters();
    if l.last() != Some(&Letter::A) {
        return Err(precondition("sequence does not end in A, so the matrix is singular"));
    }
    let mut out: Vec<Letter> = l[..l.len() - 1].iter().rev().copied().collect();
    out.push(Letter::A);
    EprSequence::new(out, seq.field())
}
