//! Patterns over `{A, S, N}` with repeatable groups.
//!
//! ASCII syntax: a letter is a literal, and `(w)*` is the word `w` repeated any
//! number of times, including zero. Groups do not nest. `(NS)*NAA` matches
//! `NAA`, `NSNAA`, `NSNSNAA`, ...

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{LazyLock, Mutex};

use crate::epr::{Letter, EprSequence};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PatternItem {
    Literal(Letter),
    /// A non-empty word repeated zero or more times.
    Repeat(Vec<Letter>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EprPattern {
    items: Vec<PatternItem>,
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::PatternSyntax { column, message: message.into() }
}

impl EprPattern {
    pub fn new(items: Vec<PatternItem>) -> Result<Self> {
        if items.is_empty() {
            return Err(syntax(1, "empty pattern"));
        }
        if items.iter().any(|it| matches!(it, PatternItem::Repeat(w) if w.is_empty())) {
            return Err(syntax(1, "empty repeat group"));
        }
        Ok(Self { items })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut items = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if let Some(l) = Letter::from_char(c) {
                items.push(PatternItem::Literal(l));
                i += 1;
                continue;
            }
            if c != '(' {
                return Err(syntax(i + 1, format!("unexpected `{c}`")));
            }
            let open = i;
            i += 1;
            let mut group = Vec::new();
            loop {
                match chars.get(i) {
                    None => return Err(syntax(open + 1, "unclosed `(`")),
                    Some(')') => break,
                    Some(&c) => match Letter::from_char(c) {
                        Some(l) => group.push(l),
                        None => return Err(syntax(i + 1, format!("unexpected `{c}` inside group"))),
                    },
                }
                i += 1;
            }
            if group.is_empty() {
                return Err(syntax(open + 1, "empty repeat group"));
            }
            i += 1;
            if chars.get(i) != Some(&'*') {
                return Err(syntax(i + 1, "a group must be followed by `*`"));
            }
            i += 1;
            items.push(PatternItem::Repeat(group));
        }
        Self::new(items)
    }

    pub fn items(&self) -> &[PatternItem] {
        &self.items
    }

    /// Whether some expansion of the pattern spells exactly `word`.
    ///
    /// Runs a Thompson-style simulation over states `(item, offset)`; repeat
    /// groups are non-empty so the epsilon closure is finite.
    pub fn matches_letters(&self, word: &[Letter]) -> bool {
        let slots = self.items.len() + 1;
        let width = self
            .items
            .iter()
            .map(|it| match it {
                PatternItem::Literal(_) => 1,
                PatternItem::Repeat(w) => w.len(),
            })
            .max()
            .unwrap_or(1);
        let index = |item: usize, off: usize| item * width + off;
        let mut current = vec![false; slots * width];
        let mut next = vec![false; slots * width];
        self.close(0, &mut current, width);
        for &c in word {
            next.iter_mut().for_each(|b| *b = false);
            for item in 0..self.items.len() {
                for off in 0..width {
                    if !current[index(item, off)] {
                        continue;
                    }
                    match &self.items[item] {
                        PatternItem::Literal(l) if off == 0 && *l == c => self.close(item + 1, &mut next, width),
                        PatternItem::Repeat(w) if off < w.len() && w[off] == c => {
                            if off + 1 == w.len() {
                                self.close(item, &mut next, width);
                            } else {
                                next[index(item, off + 1)] = true;
                            }
                        }
                        _ => {}
                    }
                }
            }
            std::mem::swap(&mut current, &mut next);
        }
        current[index(self.items.len(), 0)]
    }

    /// Marks `(item, 0)` and everything reachable from it without input.
    fn close(&self, mut item: usize, set: &mut [bool], width: usize) {
        loop {
            set[item * width] = true;
            match self.items.get(item) {
                Some(PatternItem::Repeat(_)) => item += 1,
                _ => return,
            }
        }
    }

    pub fn matches(&self, seq: &EprSequence) -> bool {
        self.matches_letters(seq.letters())
    }
}

impl fmt::Display for EprPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.items {
            match it {
                PatternItem::Literal(l) => write!(f, "{}", l.as_char())?,
                PatternItem::Repeat(w) => write!(f, "({})*", crate::epr::word(w))?,
            }
        }
        Ok(())
    }
}

impl FromStr for EprPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A built-in pattern, parsed once and then shared.
pub(crate) fn fixed(text: &'static str) -> &'static EprPattern {
    static CACHE: LazyLock<Mutex<HashMap<&'static str, &'static EprPattern>>> = LazyLock::new(Default::default);
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    cache
        .entry(text)
        .or_insert_with(|| Box::leak(Box::new(EprPattern::parse(text).expect("built-in pattern is well formed"))))
}
