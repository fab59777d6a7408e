//! Equimodular inverses of 0-1 matrices: detection from integer cofactors,
//! the necessary conditions such matrices satisfy, and the `NAA` predicates.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::epr::{self, Letter};
use crate::error::{precondition, Error, Result};
use crate::graph::graph_of;
use crate::linalg::{self, schur_complement};
use crate::matrix::{IndexSet, IntMatrix};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquimodularReport {
    pub nonsingular: bool,
    pub equimodular: bool,
    /// Common modulus of the inverse's entries, always positive.
    pub alpha: Option<Rational>,
    /// Whether the inverse has constant diagonal; only set when nonsingular.
    pub constant_diagonal: Option<bool>,
}

/// Decides equimodularity of `m^{-1}` from the `n^2` deleted minors alone:
/// `|(m^{-1})_{ij}| = |det m({j},{i})| / |det m|`.
pub fn equimodular_report(m: &IntMatrix) -> EquimodularReport {
    let det = linalg::det(m);
    if det.is_zero() {
        return EquimodularReport { nonsingular: false, equimodular: false, alpha: None, constant_diagonal: None };
    }
    let minors = linalg::deleted_minors(m);
    let n = m.order();
    let first = minors[0].abs();
    let equimodular = !first.is_zero() && minors.iter().all(|d| d.abs() == first);
    let alpha = equimodular.then(|| Rational::new(first, det.abs()));
    let d0 = &minors[0];
    let constant_diagonal = (0..n).all(|i| &minors[i * n + i] == d0);
    EquimodularReport { nonsingular: true, equimodular, alpha, constant_diagonal: Some(constant_diagonal) }
}

/// Equimodularity read off the rational inverse itself. Slower; kept as a
/// cross-check for [`equimodular_report`].
pub fn equimodular_by_inverse(m: &IntMatrix) -> Option<Rational> {
    let inv = linalg::inverse(m).ok()?;
    inv.common_modulus()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndsNaa {
    pub ends_naa: bool,
    /// The last three letters of the epr-sequence.
    pub tail: String,
}

/// Whether `epr(m)` ends with `NAA`, from the last three orders only.
pub fn check_ends_naa(m: &IntMatrix) -> Result<EndsNaa> {
    m.require_symmetric()?;
    if m.order() < 3 {
        return Err(Error::OrderOutOfRange { n: m.order(), min: 3, max: usize::MAX });
    }
    let t = epr::tail(m, 3)?;
    Ok(EndsNaa { ends_naa: t == [Letter::N, Letter::A, Letter::A], tail: epr::word(&t) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    RowColParity,
    DetEven,
    AlphaReciprocalEven,
    MinorDividesDet,
    PowerOfTwoProfile,
    ColumnDiffParity,
    RowDiffParity,
    DiagonalParity,
    RankOneUpdateDiagonalParity,
    PerfectSquareProducts,
    SchurPropagation,
}

impl Condition {
    pub const ALL: [Condition; 11] = [
        Self::RowColParity,
        Self::DetEven,
        Self::AlphaReciprocalEven,
        Self::MinorDividesDet,
        Self::PowerOfTwoProfile,
        Self::ColumnDiffParity,
        Self::RowDiffParity,
        Self::DiagonalParity,
        Self::RankOneUpdateDiagonalParity,
        Self::PerfectSquareProducts,
        Self::SchurPropagation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::RowColParity => "ROW_COL_PARITY",
            Self::DetEven => "DET_EVEN",
            Self::AlphaReciprocalEven => "ALPHA_RECIPROCAL_EVEN",
            Self::MinorDividesDet => "MINOR_DIVIDES_DET",
            Self::PowerOfTwoProfile => "POWER_OF_TWO_PROFILE",
            Self::ColumnDiffParity => "COLUMN_DIFF_PARITY",
            Self::RowDiffParity => "ROW_DIFF_PARITY",
            Self::DiagonalParity => "DIAGONAL_PARITY",
            Self::RankOneUpdateDiagonalParity => "RANK_ONE_UPDATE_DIAGONAL_PARITY",
            Self::PerfectSquareProducts => "PERFECT_SQUARE_PRODUCTS",
            Self::SchurPropagation => "SCHUR_PROPAGATION",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "NA")]
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub verdict: Verdict,
    pub detail: String,
}

/// `|det| = 2^k` and every deleted minor has modulus `2^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PowerOfTwoProfile {
    pub t: u64,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionBattery {
    results: BTreeMap<Condition, ConditionResult>,
    profile: Option<PowerOfTwoProfile>,
}

impl ConditionBattery {
    pub fn get(&self, c: Condition) -> &ConditionResult {
        &self.results[&c]
    }

    pub fn verdict(&self, c: Condition) -> Verdict {
        self.results[&c].verdict
    }

    pub fn iter(&self) -> impl Iterator<Item = (Condition, &ConditionResult)> {
        self.results.iter().map(|(c, r)| (*c, r))
    }

    /// `(t, k)` when `|det|` is a positive power of two.
    pub fn profile(&self) -> Option<PowerOfTwoProfile> {
        self.profile
    }

    pub fn failures(&self) -> impl Iterator<Item = (Condition, &ConditionResult)> {
        self.iter().filter(|(_, r)| r.verdict == Verdict::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    fn not_applicable(reason: &str) -> Self {
        let results = Condition::ALL
            .into_iter()
            .map(|c| (c, ConditionResult { verdict: Verdict::NotApplicable, detail: reason.to_string() }))
            .collect();
        Self { results, profile: None }
    }
}

impl Serialize for ConditionBattery {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.results.len()))?;
        for (c, r) in &self.results {
            map.serialize_entry(c.name(), r)?;
        }
        map.end()
    }
}

fn check(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> ConditionResult {
    if ok {
        ConditionResult { verdict: Verdict::Pass, detail: pass.into() }
    } else {
        ConditionResult { verdict: Verdict::Fail, detail: fail.into() }
    }
}

fn na(detail: impl Into<String>) -> ConditionResult {
    ConditionResult { verdict: Verdict::NotApplicable, detail: detail.into() }
}

/// `m - a_k a_k^T`, where `a_k` is column `k` of `m`.
pub fn rank_one_update(m: &IntMatrix, k: usize) -> Result<IntMatrix> {
    let n = m.order();
    if !(1..=n).contains(&k) {
        return Err(Error::IndexOutOfRange { index: k, order: n });
    }
    let a = m.column(k);
    Ok(IntMatrix::from_fn(n, |i, j| m.get(i, j) - a[i - 1] * a[j - 1]))
}

fn nonzero_count(v: impl IntoIterator<Item = i64>) -> usize {
    v.into_iter().filter(|&x| x != 0).count()
}

/// Exponent `k` with `v = 2^k`, for positive `v`.
fn log2_exact(v: &BigInt) -> Option<u64> {
    if !v.is_positive() {
        return None;
    }
    let tz = v.trailing_zeros()?;
    (v >> tz as usize).is_one().then_some(tz)
}

fn is_perfect_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    let r = v.sqrt();
    &r * &r == *v
}

/// Runs every necessary condition for an equimodular inverse.
///
/// Every verdict is `NA` unless `m` is nonsingular, `n >= 2` and `m^{-1}` is
/// equimodular. Entries other than 0 and 1 are an error.
pub fn condition_battery(m: &IntMatrix) -> Result<ConditionBattery> {
    m.require_zero_one()?;
    let n = m.order();
    if n < 2 {
        return Ok(ConditionBattery::not_applicable("order below 2"));
    }
    let det = linalg::det(m);
    if det.is_zero() {
        return Ok(ConditionBattery::not_applicable("singular"));
    }
    let minors = linalg::deleted_minors(m);
    let modulus = minors[0].abs();
    if modulus.is_zero() || minors.iter().any(|d| d.abs() != modulus) {
        return Ok(ConditionBattery::not_applicable("inverse is not equimodular"));
    }
    let alpha = Rational::new(modulus.clone(), det.abs());
    let symmetric = m.is_symmetric();
    let mut results = BTreeMap::new();
    let mut profile = None;

    let odd_rows: Vec<usize> = (1..=n).filter(|&i| m.row_support(i) % 2 == 1).collect();
    let odd_cols: Vec<usize> = (1..=n).filter(|&j| m.column_support(j) % 2 == 1).collect();
    results.insert(
        Condition::RowColParity,
        check(
            odd_rows.is_empty() && odd_cols.is_empty(),
            "every row and column has an even number of nonzero entries",
            format!("odd rows {odd_rows:?}, odd columns {odd_cols:?}"),
        ),
    );

    results.insert(Condition::DetEven, check(det.is_even(), format!("det = {det}"), format!("det = {det} is odd")));

    let recip = alpha.recip();
    results.insert(
        Condition::AlphaReciprocalEven,
        check(
            recip.is_integer() && recip.numer().is_even(),
            format!("alpha = {alpha}"),
            format!("1/alpha = {recip} is not an even integer"),
        ),
    );

    let bad_minor = minors.iter().position(|d| !(&det % d).is_zero());
    results.insert(
        Condition::MinorDividesDet,
        check(
            bad_minor.is_none(),
            format!("|minor| = {modulus} divides det = {det}"),
            match bad_minor {
                Some(p) => format!("minor ({}, {}) = {} does not divide {det}", p / n + 1, p % n + 1, minors[p]),
                None => String::new(),
            },
        ),
    );

    let power = match log2_exact(&det.abs()) {
        Some(k) if k > 0 => match log2_exact(&modulus) {
            Some(t) => {
                profile = Some(PowerOfTwoProfile { t, k });
                let expected = Rational::new(1, BigInt::one() << (k.saturating_sub(t)) as usize);
                check(
                    t < k && alpha == expected,
                    format!("t = {t}, k = {k}, alpha = {alpha}"),
                    format!("t = {t}, k = {k}, alpha = {alpha}"),
                )
            }
            None => check(false, "", format!("|det| = 2^{k} but |minor| = {modulus} is not a power of two")),
        },
        _ => na(format!("|det| = {} is not a positive power of two", det.abs())),
    };
    results.insert(Condition::PowerOfTwoProfile, power);

    let pair_parity = |vectors: &[Vec<i64>]| -> Option<(usize, usize)> {
        for i in 0..n {
            for j in i + 1..n {
                if nonzero_count(vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a - b)) % 2 == 1 {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    };
    if n >= 3 {
        let cols: Vec<Vec<i64>> = (1..=n).map(|j| m.column(j)).collect();
        let rows: Vec<Vec<i64>> = (1..=n).map(|i| m.row(i).to_vec()).collect();
        for (cond, vecs, what) in [(Condition::ColumnDiffParity, cols, "columns"), (Condition::RowDiffParity, rows, "rows")] {
            let bad = pair_parity(&vecs);
            results.insert(
                cond,
                check(
                    bad.is_none(),
                    format!("every difference of two {what} has even support"),
                    bad.map_or(String::new(), |(i, j)| format!("{what} {i} and {j} differ in an odd number of places")),
                ),
            );
        }
    } else {
        results.insert(Condition::ColumnDiffParity, na("order below 3"));
        results.insert(Condition::RowDiffParity, na("order below 3"));
    }

    if symmetric {
        let count = nonzero_count(m.diagonal());
        results.insert(
            Condition::DiagonalParity,
            check(count.is_multiple_of(2), format!("{count} nonzero diagonal entries"), format!("{count} nonzero diagonal entries")),
        );
    } else {
        let count = nonzero_count(m.diagonal());
        results.insert(Condition::DiagonalParity, na(format!("not symmetric; {count} nonzero diagonal entries")));
    }

    if !symmetric {
        results.insert(Condition::RankOneUpdateDiagonalParity, na("not symmetric"));
    } else if n < 3 {
        results.insert(Condition::RankOneUpdateDiagonalParity, na("order below 3"));
    } else {
        let bad = (1..=n).find_map(|k| {
            let c = nonzero_count(rank_one_update(m, k).expect("k in range").diagonal());
            (c % 2 == 1).then_some((k, c))
        });
        results.insert(
            Condition::RankOneUpdateDiagonalParity,
            check(
                bad.is_none(),
                "every rank-one update has an even number of nonzero diagonal entries",
                bad.map_or(String::new(), |(k, c)| format!("update by column {k} has {c} nonzero diagonal entries")),
            ),
        );
    }

    let ends = if symmetric && n >= 3 { check_ends_naa(m)?.ends_naa } else { false };
    if ends {
        let mut bad = None;
        'outer: for i in 0..n {
            for j in 0..n {
                let lhs = &minors[i * n + i] * &minors[j * n + j];
                let dij = &minors[i * n + j];
                if lhs != dij * dij || !is_perfect_square(&lhs) {
                    bad = Some((i + 1, j + 1));
                    break 'outer;
                }
            }
        }
        results.insert(
            Condition::PerfectSquareProducts,
            check(
                bad.is_none(),
                "d_i d_j = d_ij^2 for all i, j",
                bad.map_or(String::new(), |(i, j)| format!("d_{i} d_{j} != d_{i}{j}^2")),
            ),
        );
    } else {
        results.insert(Condition::PerfectSquareProducts, na("does not end with NAA"));
    }

    let pivots: Vec<usize> = (1..=n).filter(|&i| m.get(i, i) != 0).collect();
    if pivots.is_empty() {
        results.insert(Condition::SchurPropagation, na("no nonzero diagonal entry"));
    } else {
        let mut bad = None;
        for &i in &pivots {
            let mu = IndexSet::within([i], n)?;
            let c = schur_complement(m, &mu)?;
            let modulus = c.matrix.inverse().ok().and_then(|inv| inv.common_modulus());
            if modulus.as_ref() != Some(&alpha) {
                bad = Some((i, modulus));
                break;
            }
        }
        results.insert(
            Condition::SchurPropagation,
            check(
                bad.is_none(),
                format!("checked mu = {pivots:?}"),
                match &bad {
                    Some((i, Some(r))) => format!("mu = {{{i}}}: modulus {r} differs from alpha = {alpha}"),
                    Some((i, None)) => format!("mu = {{{i}}}: complement inverse is not equimodular"),
                    None => String::new(),
                },
            ),
        );
    }

    Ok(ConditionBattery { results, profile })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    pub ends_naa: bool,
    pub inverse_equimodular_constant_diagonal: bool,
    pub agree: bool,
    pub tail: String,
}

fn require_symmetric_zero_one(m: &IntMatrix, min: usize) -> Result<()> {
    m.require_symmetric()?;
    m.require_zero_one()?;
    if m.order() < min {
        return Err(Error::OrderOutOfRange { n: m.order(), min, max: usize::MAX });
    }
    Ok(())
}

/// Evaluates "ends with `NAA`" and "inverse is equimodular with constant
/// diagonal" independently.
pub fn conjecture_verdict(m: &IntMatrix) -> Result<ConjectureVerdict> {
    require_symmetric_zero_one(m, 3)?;
    let r = equimodular_report(m);
    if !r.nonsingular {
        return Err(Error::Singular);
    }
    let ends = check_ends_naa(m)?;
    let b = r.equimodular && r.constant_diagonal == Some(true);
    Ok(ConjectureVerdict { ends_naa: ends.ends_naa, inverse_equimodular_constant_diagonal: b, agree: ends.ends_naa == b, tail: ends.tail })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DichotomyClass {
    #[serde(rename = "NSNAA")]
    Nsnaa,
    #[serde(rename = "SSNAA")]
    Ssnaa,
    #[serde(rename = "VIOLATION")]
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dichotomy {
    pub class: DichotomyClass,
    /// The last five letters.
    pub tail: String,
    pub detail: String,
}

/// Classifies the five-letter tail of an `NAA`-ending symmetric 0-1 matrix.
/// An `NSNAA` tail must come from an odd cycle on all `n` vertices.
pub fn dichotomy_check(m: &IntMatrix) -> Result<Dichotomy> {
    require_symmetric_zero_one(m, 5)?;
    let t = epr::tail(m, 5)?;
    let tail = epr::word(&t);
    if !tail.ends_with("NAA") {
        return Err(precondition(format!("epr-sequence ends with {tail}, not NAA")));
    }
    let n = m.order();
    let (class, detail) = match tail.as_str() {
        "NSNAA" => {
            let cycle = m.has_zero_diagonal() && graph_of(m)?.is_cycle();
            if n % 2 == 1 && cycle {
                (DichotomyClass::Nsnaa, format!("graph is a {n}-cycle"))
            } else if n.is_multiple_of(2) {
                (DichotomyClass::Violation, format!("NSNAA at even order {n}"))
            } else {
                (DichotomyClass::Violation, "NSNAA but the graph is not an n-cycle".into())
            }
        }
        "SSNAA" => (DichotomyClass::Ssnaa, String::new()),
        _ => (DichotomyClass::Violation, format!("tail {tail} is neither NSNAA nor SSNAA")),
    };
    Ok(Dichotomy { class, tail, detail })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainResultCheck {
    pub ends_naa: bool,
    pub inverse_equimodular_constant_diagonal: bool,
    pub holds: bool,
}

/// When letter `n - 4` is not `S`, ending with `NAA` is equivalent to an
/// equimodular inverse with constant diagonal.
pub fn main_result_check(m: &IntMatrix) -> Result<MainResultCheck> {
    require_symmetric_zero_one(m, 5)?;
    let n = m.order();
    if epr::letter_at(m, n - 4)? == Letter::S {
        return Err(precondition(format!("letter {} is S", n - 4)));
    }
    let v = conjecture_verdict(m)?;
    Ok(MainResultCheck {
        ends_naa: v.ends_naa,
        inverse_equimodular_constant_diagonal: v.inverse_equimodular_constant_diagonal,
        holds: v.agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct, cycle, identity, Construction};
    use crate::linalg::kronecker;

    fn non_symmetric_example() -> IntMatrix {
        IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap()
    }

    #[test]
    fn report_examples() {
        let r = equimodular_report(&cycle(5).unwrap());
        assert!(r.equimodular);
        assert_eq!(r.alpha, Some(Rational::new(1, 2)));
        assert_eq!(r.constant_diagonal, Some(true));

        let r = equimodular_report(&identity(3));
        assert!(r.nonsingular && !r.equimodular && r.alpha.is_none());

        let r = equimodular_report(&non_symmetric_example());
        assert!(r.equimodular);
        assert_eq!(r.constant_diagonal, Some(true));
        assert_eq!(r.alpha, Some(Rational::new(1, 2)));

        let r = equimodular_report(&construct(Construction::AllOnes, 3).unwrap());
        assert!(!r.nonsingular && r.constant_diagonal.is_none());
    }

    #[test]
    fn ends_naa_examples() {
        assert_eq!(check_ends_naa(&cycle(5).unwrap()).unwrap(), EndsNaa { ends_naa: true, tail: "NAA".into() });
        assert_eq!(check_ends_naa(&identity(3)).unwrap().tail, "AAA");
        let c3 = cycle(3).unwrap();
        assert!(check_ends_naa(&kronecker(&c3, &c3)).unwrap().ends_naa);
        assert!(check_ends_naa(&identity(2)).is_err());
        assert!(check_ends_naa(&non_symmetric_example()).is_err());
    }

    #[test]
    fn battery_on_five_cycle() {
        let b = condition_battery(&cycle(5).unwrap()).unwrap();
        assert!(b.all_pass());
        for c in Condition::ALL {
            let v = b.verdict(c);
            match c {
                // det = 2 = 2^1 and every minor is 1
                Condition::PowerOfTwoProfile => {
                    assert_eq!(v, Verdict::Pass);
                    assert_eq!(b.profile(), Some(PowerOfTwoProfile { t: 0, k: 1 }));
                }
                Condition::SchurPropagation => assert_eq!(v, Verdict::NotApplicable),
                _ => assert_eq!(v, Verdict::Pass, "{c}"),
            }
        }
    }

    #[test]
    fn battery_on_non_symmetric_example() {
        let m = non_symmetric_example();
        let b = condition_battery(&m).unwrap();
        assert_eq!(b.verdict(Condition::DiagonalParity), Verdict::NotApplicable);
        assert_eq!(b.verdict(Condition::RankOneUpdateDiagonalParity), Verdict::NotApplicable);
        assert!(b.all_pass());
        assert_eq!(b.verdict(Condition::SchurPropagation), Verdict::Pass);
        assert_eq!(nonzero_count(m.diagonal()), 3);
        let u = rank_one_update(&m, 1).unwrap();
        assert_eq!(u, IntMatrix::from_rows(&[[0, 1, -1], [0, 1, 1], [0, 0, 0]]).unwrap());
        assert_eq!(nonzero_count(u.diagonal()), 1);
    }

    #[test]
    fn battery_on_kronecker_square() {
        let c3 = cycle(3).unwrap();
        let b = condition_battery(&kronecker(&c3, &c3)).unwrap();
        assert!(b.all_pass());
        assert_eq!(b.profile(), Some(PowerOfTwoProfile { t: 4, k: 6 }));
        assert_eq!(b.verdict(Condition::PerfectSquareProducts), Verdict::Pass);
    }

    #[test]
    fn battery_not_applicable_and_errors() {
        let b = condition_battery(&identity(3)).unwrap();
        assert!(b.iter().all(|(_, r)| r.verdict == Verdict::NotApplicable));
        assert!(condition_battery(&construct(Construction::OnesMinusTwoIdentity, 3).unwrap()).is_err());
        let json = serde_json::to_value(condition_battery(&cycle(5).unwrap()).unwrap()).unwrap();
        assert_eq!(json["DET_EVEN"]["verdict"], "PASS");
        assert_eq!(json["SCHUR_PROPAGATION"]["verdict"], "NA");
    }

    #[test]
    fn conjecture_examples() {
        let v = conjecture_verdict(&cycle(5).unwrap()).unwrap();
        assert!(v.ends_naa && v.inverse_equimodular_constant_diagonal && v.agree);
        let v = conjecture_verdict(&construct(Construction::Complete, 3).unwrap()).unwrap();
        assert!(v.ends_naa && v.inverse_equimodular_constant_diagonal && v.agree);
        let v = conjecture_verdict(&identity(3)).unwrap();
        assert!(!v.ends_naa && !v.inverse_equimodular_constant_diagonal && v.agree);
        assert!(conjecture_verdict(&construct(Construction::AllOnes, 3).unwrap()).is_err());
    }

    #[test]
    fn dichotomy_examples() {
        let d = dichotomy_check(&cycle(7).unwrap()).unwrap();
        assert_eq!(d.class, DichotomyClass::Nsnaa);
        let c3 = cycle(3).unwrap();
        assert_eq!(dichotomy_check(&kronecker(&c3, &c3)).unwrap().class, DichotomyClass::Ssnaa);
        assert!(dichotomy_check(&identity(5)).is_err());
    }

    #[test]
    fn main_result_examples() {
        for n in [7, 9] {
            let r = main_result_check(&cycle(n).unwrap()).unwrap();
            assert!(r.holds && r.ends_naa);
        }
        // letter 5 of NSSSSSNAA is S
        let c3 = cycle(3).unwrap();
        assert!(main_result_check(&kronecker(&c3, &c3)).is_err());
    }

    #[test]
    fn helpers() {
        assert_eq!(log2_exact(&BigInt::from(64)), Some(6));
        assert_eq!(log2_exact(&BigInt::from(1)), Some(0));
        assert_eq!(log2_exact(&BigInt::from(12)), None);
        assert!(is_perfect_square(&BigInt::from(256)));
        assert!(!is_perfect_square(&BigInt::from(255)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
    }
}
