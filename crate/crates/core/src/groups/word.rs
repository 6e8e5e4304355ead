use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// One generator raised to the power ±1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: impl Into<String>, inverse: bool) -> Letter {
        Letter { gen: gen.into(), inverse }
    }

    pub fn pos(gen: impl Into<String>) -> Letter {
        Letter::new(gen, false)
    }

    pub fn neg(gen: impl Into<String>) -> Letter {
        Letter::new(gen, true)
    }

    pub fn inv(&self) -> Letter {
        Letter { gen: self.gen.clone(), inverse: !self.inverse }
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word in named generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<Letter>,
}

fn is_compact_name(s: &str) -> bool {
    s.len() == 1 && s.chars().all(|c| c.is_ascii_lowercase())
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    /// Builds a word and freely reduces it.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        free_reduce(&Word { letters: letters.into_iter().collect() })
    }

    /// Builds a word without reducing it.
    pub fn raw(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn gen(name: impl Into<String>) -> Word {
        Word { letters: vec![Letter::pos(name)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::inv).collect() }
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).cloned())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> BTreeMap<String, i64> {
        let mut m = BTreeMap::new();
        for l in &self.letters {
            *m.entry(l.gen.clone()).or_insert(0) += l.sign();
        }
        m
    }

    /// Number of letters (either sign) on generator `g`.
    pub fn occurrences(&self, g: &str) -> usize {
        self.letters.iter().filter(|l| l.gen == g).count()
    }

    pub fn uses(&self, g: &str) -> bool {
        self.letters.iter().any(|l| l.gen == g)
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        let n = self.letters.len();
        if n == 0 {
            return self.clone();
        }
        let mut letters = self.letters[k % n..].to_vec();
        letters.extend_from_slice(&self.letters[..k % n]);
        Word { letters }
    }

    /// Replace every occurrence of generator `g` by `w` (and `g^-1` by `w^-1`).
    pub fn substitute(&self, g: &str, w: &Word) -> Word {
        let winv = w.inverse();
        let mut out = Vec::new();
        for l in &self.letters {
            if l.gen == g {
                let rep = if l.inverse { &winv } else { w };
                out.extend(rep.letters.iter().cloned());
            } else {
                out.push(l.clone());
            }
        }
        Word::from_letters(out)
    }

    /// Rename generators through `f`.
    pub fn map_gens(&self, mut f: impl FnMut(&str) -> String) -> Word {
        Word::from_letters(self.letters.iter().map(|l| Letter::new(f(&l.gen), l.inverse)))
    }

    /// Parse the compact form: lowercase letter = generator, uppercase = inverse.
    pub fn parse_compact(s: &str) -> Result<Word, GroupError> {
        let mut letters = Vec::new();
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            if c == '1' && s.trim() == "1" {
                break;
            }
            if !c.is_ascii_alphabetic() {
                return Err(GroupError::Parse(s.to_string()));
            }
            letters.push(Letter::new(c.to_ascii_lowercase().to_string(), c.is_ascii_uppercase()));
        }
        Ok(Word::from_letters(letters))
    }

    /// Parse the token form `x*y^-1*z`; `1` is the empty word.
    pub fn parse_tokens(s: &str) -> Result<Word, GroupError> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for tok in t.split('*') {
            let tok = tok.trim();
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            if name.is_empty()
                || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '-' || c == ',')
            {
                return Err(GroupError::Parse(s.to_string()));
            }
            letters.push(Letter::new(name, inverse));
        }
        Ok(Word::from_letters(letters))
    }

    /// Compact text when every generator is a single lowercase letter,
    /// token text otherwise.
    pub fn to_text(&self) -> String {
        if self.letters.iter().all(|l| is_compact_name(&l.gen)) {
            self.to_compact()
        } else {
            self.to_tokens()
        }
    }

    pub fn to_compact(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters.iter().map(|l| if l.inverse { l.gen.to_uppercase() } else { l.gen.clone() }).collect()
    }

    pub fn to_tokens(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> =
            self.letters.iter().map(|l| if l.inverse { format!("{}^-1", l.gen) } else { l.gen.clone() }).collect();
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.letters.len());
    for l in &w.letters {
        if out.last().is_some_and(|last| last.cancels(l)) {
            out.pop();
        } else {
            out.push(l.clone());
        }
    }
    Word { letters: out }
}

/// Free reduction followed by removal of cancelling first/last letters.
pub fn cyclic_reduce(w: &Word) -> Word {
    let mut letters = free_reduce(w).letters;
    let mut start = 0;
    let mut end = letters.len();
    while end - start >= 2 && letters[start].cancels(&letters[end - 1]) {
        start += 1;
        end -= 1;
    }
    letters.truncate(end);
    letters.drain(..start);
    Word { letters }
}

/// Canonical representative of a relator up to cyclic rotation and inversion.
pub fn cyclic_canonical(w: &Word) -> Word {
    let r = cyclic_reduce(w);
    let inv = r.inverse();
    let n = r.len().max(1);
    (0..n).flat_map(|k| [r.rotate(k), inv.rotate(k)]).min().unwrap_or_default()
}
