//! Sequence-level constraints satisfied by the epr-sequence of every real
//! symmetric matrix, and the named families of sequences used elsewhere.

use std::fmt;

use serde::Serialize;

use crate::epr::{self, EprSequence, Letter};
use crate::error::{precondition, Result};
use crate::matrix::IntMatrix;
use crate::pattern::{fixed, EprPattern};

use Letter::{A, N, S};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ForbiddenRule {
    /// Two consecutive `N`s force `N` from there on.
    NnThenN,
    Nsa,
    Nan,
    Nas,
    /// `ASN` at positions `k..k+2` forbids `A` at every position `>= k + 3`.
    AsnLaterA,
    /// `ANA` inside the first `n - 1` letters forces the form `(A)*ANAA(A)*`.
    AnaForm,
    /// `SNA` may not occur inside the first `n - 2` letters.
    Sna,
    /// No sequence ends in `S`.
    TerminalS,
}

impl ForbiddenRule {
    pub fn name(self) -> &'static str {
        match self {
            Self::NnThenN => "NN_THEN_N",
            Self::Nsa => "NSA",
            Self::Nan => "NAN",
            Self::Nas => "NAS",
            Self::AsnLaterA => "ASN_LATER_A",
            Self::AnaForm => "ANA_FORM",
            Self::Sna => "SNA",
            Self::TerminalS => "TERMINAL_S",
        }
    }
}

impl fmt::Display for ForbiddenRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One broken rule. `position` is the 1-based index of the letter at which the
/// rule first fails (for the triple bans, the first letter of the triple).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub rule: ForbiddenRule,
    pub position: usize,
    pub detail: String,
}

fn find_triple(l: &[Letter], t: [Letter; 3], limit: usize) -> Option<usize> {
    l[..limit.min(l.len())].windows(3).position(|w| w == t)
}

/// Every forbidden-pattern rule that `seq` breaks, in rule order. An empty
/// result means the sequence is consistent with all of them.
pub fn validate_forbidden(seq: &EprSequence) -> Vec<ViolationReport> {
    let l = seq.letters();
    let n = l.len();
    let mut out = Vec::new();

    if let Some(k) = l.windows(2).position(|w| w == [N, N]) {
        if let Some(j) = (k + 2..n).find(|&j| l[j] != N) {
            out.push(ViolationReport {
                rule: ForbiddenRule::NnThenN,
                position: j + 1,
                detail: format!("NN at {} followed by {} at {}", k + 1, l[j].as_char(), j + 1),
            });
        }
    }

    for (rule, triple) in [
        (ForbiddenRule::Nsa, [N, S, A]),
        (ForbiddenRule::Nan, [N, A, N]),
        (ForbiddenRule::Nas, [N, A, S]),
    ] {
        if let Some(k) = find_triple(l, triple, n) {
            out.push(ViolationReport {
                rule,
                position: k + 1,
                detail: format!("{} at positions {}..{}", rule.name(), k + 1, k + 3),
            });
        }
    }

    if let Some(k) = find_triple(l, [A, S, N], n) {
        if let Some(j) = (k + 3..n).find(|&j| l[j] == A) {
            out.push(ViolationReport {
                rule: ForbiddenRule::AsnLaterA,
                position: j + 1,
                detail: format!("ASN at {} followed by A at {}", k + 1, j + 1),
            });
        }
    }

    if n >= 1 {
        if let Some(k) = find_triple(l, [A, N, A], n - 1) {
            if !fixed("(A)*ANAA(A)*").matches_letters(l) {
                out.push(ViolationReport {
                    rule: ForbiddenRule::AnaForm,
                    position: k + 1,
                    detail: format!("ANA at {} but the sequence is not of the form (A)*ANAA(A)*", k + 1),
                });
            }
        }
    }

    if n >= 2 {
        if let Some(k) = find_triple(l, [S, N, A], n - 2) {
            out.push(ViolationReport {
                rule: ForbiddenRule::Sna,
                position: k + 1,
                detail: format!("SNA at {} within the first n-2 letters", k + 1),
            });
        }
    }

    if l.last() == Some(&S) {
        out.push(ViolationReport {
            rule: ForbiddenRule::TerminalS,
            position: n,
            detail: "sequence ends in S".into(),
        });
    }
    out
}

/// The six families of sequences starting with `AN` whose fourth letter is not `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AnStartForm {
    /// `AN(N)*`
    AnN,
    /// `ANA(A)*`
    AnaA,
    /// `ANSN(SN)*(N)*`
    AnsnSnN,
    /// `ANSN(SN)*A`
    AnsnSnA,
    /// `ANSNAA`
    Ansnaa,
    /// `ANSNSSN(N)*`
    AnsnssnN,
}

impl AnStartForm {
    pub const ALL: [AnStartForm; 6] =
        [Self::AnN, Self::AnaA, Self::AnsnSnN, Self::AnsnSnA, Self::Ansnaa, Self::AnsnssnN];

    pub fn pattern_text(self) -> &'static str {
        match self {
            Self::AnN => "AN(N)*",
            Self::AnaA => "ANA(A)*",
            Self::AnsnSnN => "ANSN(SN)*(N)*",
            Self::AnsnSnA => "ANSN(SN)*A",
            Self::Ansnaa => "ANSNAA",
            Self::AnsnssnN => "ANSNSSN(N)*",
        }
    }

    pub fn pattern(self) -> EprPattern {
        fixed(self.pattern_text()).clone()
    }
}

/// Which `AN`-start family `seq` belongs to, or `None` if it fits none.
///
/// Precondition: `seq` starts with `AN` and its fourth letter (if any) is not `S`.
pub fn classify_an_start(seq: &EprSequence) -> Result<Option<AnStartForm>> {
    let l = seq.letters();
    if l.len() < 2 || l[0] != A || l[1] != N {
        return Err(precondition("sequence does not start with AN"));
    }
    if l.len() >= 4 && l[3] == S {
        return Err(precondition("fourth letter is S"));
    }
    Ok(AnStartForm::ALL.into_iter().find(|f| fixed(f.pattern_text()).matches(seq)))
}

/// The four families `epr2` can take when `epr` ends with `NAA`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Epr2NaaForm {
    /// `(NS)*NAN`
    NsNan,
    /// `(NS)*NNN(N)*`
    NsNnnN,
    /// `A(S)*NNN(N)*`
    ASNnnN,
    /// `S(S)*NNN(N)*`
    SSNnnN,
}

impl Epr2NaaForm {
    pub const ALL: [Epr2NaaForm; 4] = [Self::NsNan, Self::NsNnnN, Self::ASNnnN, Self::SSNnnN];

    pub fn pattern_text(self) -> &'static str {
        match self {
            Self::NsNan => "(NS)*NAN",
            Self::NsNnnN => "(NS)*NNN(N)*",
            Self::ASNnnN => "A(S)*NNN(N)*",
            Self::SSNnnN => "S(S)*NNN(N)*",
        }
    }

    pub fn pattern(self) -> EprPattern {
        fixed(self.pattern_text()).clone()
    }
}

/// `epr2` of an `NAA`-ending matrix and the family it falls in. `form` is
/// `None` when no family matches, which would contradict the parity theory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Epr2NaaCheck {
    pub epr2: EprSequence,
    pub form: Option<Epr2NaaForm>,
}

pub fn classify_epr2(seq: &EprSequence) -> Option<Epr2NaaForm> {
    Epr2NaaForm::ALL.into_iter().find(|f| fixed(f.pattern_text()).matches(seq))
}

/// Precondition: `m` is symmetric 0-1 and `epr(m)` ends with `NAA`.
pub fn epr2_form_for_naa(m: &IntMatrix) -> Result<Epr2NaaCheck> {
    m.require_symmetric()?;
    m.require_zero_one()?;
    if m.order() < 3 || epr::tail(m, 3)? != [N, A, A] {
        return Err(precondition("epr-sequence does not end with NAA"));
    }
    let epr2 = epr::epr2(m)?;
    let form = classify_epr2(&epr2);
    Ok(Epr2NaaCheck { epr2, form })
}
