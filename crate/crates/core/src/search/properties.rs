//! Validators run over an enumeration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::pipeline::{Evaluation, Evaluator};
use super::report::ScanReport;
use crate::epr::{self, EprSequence, Letter};
use crate::equimodular::{condition_battery, dichotomy_check, DichotomyClass};
use crate::error::Result;
use crate::graph::{bipartite_from_epr, graph_of, odd_cycle_from_epr, odd_girth_from_epr, odd_girth_search, OddGirth};
use crate::matrix::IntMatrix;
use crate::rules::{epr2_form_for_naa, validate_forbidden};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// Forbidden subsequences on the full epr-sequence.
    Forbidden,
    /// `NSNAA` / `SSNAA` tails of `NAA`-enders, `n >= 5`.
    Dichotomy,
    /// epr2 forms and parity of `NAA`-enders.
    Epr2,
    /// Necessary conditions on matrices with equimodular inverse, and equal
    /// principal minors of `NAA`-enders forcing an equimodular inverse.
    Battery,
    /// Odd girth, bipartiteness and odd cycles on zero-diagonal matrices.
    Graph,
}

impl Property {
    pub const ALL: [Property; 5] = [Self::Forbidden, Self::Dichotomy, Self::Epr2, Self::Battery, Self::Graph];

    pub fn name(self) -> &'static str {
        match self {
            Self::Forbidden => "forbidden",
            Self::Dichotomy => "dichotomy",
            Self::Epr2 => "epr2",
            Self::Battery => "battery",
            Self::Graph => "graph",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertySet(BTreeSet<Property>);

impl PropertySet {
    pub fn all() -> Self {
        Self(Property::ALL.into_iter().collect())
    }

    pub fn only(props: impl IntoIterator<Item = Property>) -> Self {
        Self(props.into_iter().collect())
    }

    pub fn contains(&self, p: Property) -> bool {
        self.0.contains(&p)
    }

    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|p| p.name().to_string()).collect()
    }
}

impl Default for PropertySet {
    fn default() -> Self {
        Self::all()
    }
}

impl fmt::Display for PropertySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(","))
    }
}

impl FromStr for PropertySet {
    type Err = String;

    /// Comma-separated names, or `all`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.trim() == "all" {
            return Ok(Self::all());
        }
        let mut set = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let p = Property::ALL
                .into_iter()
                .find(|p| p.name() == part)
                .ok_or_else(|| format!("unknown property `{part}`"))?;
            set.insert(p);
        }
        if set.is_empty() {
            return Err("no properties selected".into());
        }
        Ok(Self(set))
    }
}

pub(crate) fn declare_counts(props: &PropertySet, n: usize, report: &mut ScanReport) {
    for key in ["nonsingular", "ends_NAA", "equimodular", "equimodular_constant_diagonal"] {
        report.declare(key);
    }
    for p in Property::ALL {
        if props.contains(p) {
            report.declare(&format!("{}_checked", p.name()));
        }
    }
    if props.contains(Property::Dichotomy) && n >= 5 {
        report.declare("tail_NSNAA");
        report.declare("tail_SSNAA");
    }
}

/// Runs the selected validators on one matrix, recording counts and failures.
pub(crate) fn check_matrix(
    props: &PropertySet,
    m: &IntMatrix,
    mask: u128,
    ev: &mut Evaluator,
    report: &mut ScanReport,
) -> Result<()> {
    let n = m.order();
    let a = m.as_slice();
    let e: Evaluation = if n >= 3 { ev.evaluate(a) } else { ev.equimodular(a) };
    if e.nonsingular {
        report.bump("nonsingular");
    }
    if e.ends_naa {
        report.bump("ends_NAA");
    }
    if e.equimodular {
        report.bump("equimodular");
    }
    if e.equimodular_constant_diagonal() {
        report.bump("equimodular_constant_diagonal");
    }

    let need_epr = props.contains(Property::Forbidden) || props.contains(Property::Graph);
    let seq: Option<EprSequence> = if need_epr { Some(epr::epr(m)?) } else { None };

    if let Some(s) = &seq {
        let full_naa = n >= 3 && s.ends_with("NAA");
        if full_naa != e.ends_naa {
            report.record(mask, "PIPELINE", format!("epr {s} but fast tail test says ends_NAA = {}", e.ends_naa));
        }
    }

    if props.contains(Property::Forbidden) {
        let s = seq.as_ref().expect("computed above");
        report.bump("forbidden_checked");
        let v = validate_forbidden(s);
        if !v.is_empty() {
            let rules: Vec<&str> = v.iter().map(|r| r.rule.name()).collect();
            report.record(mask, "FORBIDDEN", format!("{s}: {}", rules.join(",")));
        }
    }

    if props.contains(Property::Dichotomy) && n >= 5 && e.ends_naa {
        report.bump("dichotomy_checked");
        let d = dichotomy_check(m)?;
        match d.class {
            DichotomyClass::Nsnaa => report.bump("tail_NSNAA"),
            DichotomyClass::Ssnaa => report.bump("tail_SSNAA"),
            DichotomyClass::Violation => report.record(mask, "DICHOTOMY", format!("{}: {}", d.tail, d.detail)),
        }
    }

    if props.contains(Property::Epr2) && n >= 3 && e.ends_naa {
        report.bump("epr2_checked");
        let check = epr2_form_for_naa(m)?;
        let w = check.epr2.word();
        let mut problems = Vec::new();
        if check.form.is_none() {
            problems.push(format!("epr2 {w} matches no form"));
        }
        if !(w.ends_with("NAN") || w.ends_with("NNN")) {
            problems.push(format!("epr2 {w} ends with neither NAN nor NNN"));
        }
        let strong = n.is_multiple_of(2) || m.diagonal().iter().any(|&d| d != 0);
        if strong && !w.ends_with("NNN") {
            problems.push(format!("epr2 {w} should end with NNN"));
        }
        if ev.det(a) % 2 != 0 {
            problems.push("det is odd".into());
        }
        if strong && ev.principal_minors().iter().any(|d| d % 2 != 0) {
            problems.push("an order n-1 principal minor is odd".into());
        }
        if !problems.is_empty() {
            report.record(mask, "EPR2", problems.join("; "));
        }
    }

    if props.contains(Property::Battery) {
        if e.equimodular && n >= 2 {
            report.bump("battery_checked");
            let b = condition_battery(m)?;
            if !b.all_pass() {
                let failed: Vec<String> = b.failures().map(|(c, r)| format!("{c} ({})", r.detail)).collect();
                report.record(mask, "BATTERY", failed.join("; "));
            }
        }
        if e.ends_naa && e.constant_diagonal && !e.equimodular {
            report.record(mask, "CONSTANT_MINORS", "ends NAA with equal principal minors but inverse not equimodular".into());
        }
    }

    if props.contains(Property::Graph) && m.has_zero_diagonal() {
        report.bump("graph_checked");
        let s = seq.as_ref().expect("computed above");
        let g = graph_of(m)?;
        let mut problems = Vec::new();
        let searched = odd_girth_search(&g);
        let from_epr = odd_girth_from_epr(s)?;
        if searched != from_epr {
            problems.push(format!("odd girth {searched} by search, {from_epr} from epr"));
        }
        let limit = match searched {
            OddGirth::Finite(g) => g,
            OddGirth::Infinite => n + 1,
        };
        if let Some(j) = (1..limit.min(n + 1)).step_by(2).find(|&j| s.letter(j) != Letter::N) {
            problems.push(format!("letter {j} is not N below the odd girth"));
        }
        if n >= 2 && g.is_bipartite() != bipartite_from_epr(s)? {
            problems.push(format!("bipartite = {} but epr says otherwise", g.is_bipartite()));
        }
        if g.is_odd_cycle() != odd_cycle_from_epr(s)? {
            problems.push(format!("odd cycle = {} but epr says otherwise", g.is_odd_cycle()));
        }
        if !problems.is_empty() {
            report.record(mask, "GRAPH", format!("{s}: {}", problems.join("; ")));
        }
    }
    Ok(())
}
