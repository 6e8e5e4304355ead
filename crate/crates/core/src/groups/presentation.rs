use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::word::{cyclic_reduce, Word};
use super::GroupError;

/// A finite presentation; relators are stored cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation, GroupError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(GroupError::DuplicateGenerator(g.clone()));
            }
        }
        let p = Presentation { generators, relators: Vec::new() };
        p.with_relators(relators)
    }

    fn with_relators(mut self, relators: Vec<Word>) -> Result<Presentation, GroupError> {
        for r in relators {
            self.check_word(&r)?;
            self.relators.push(cyclic_reduce(&r));
        }
        Ok(self)
    }

    pub fn from_strs(gens: &[&str], rels: &[&str]) -> Result<Presentation, GroupError> {
        let generators = gens.iter().map(|g| g.to_string()).collect();
        let relators = rels.iter().map(|r| parse_word(r)).collect::<Result<Vec<_>, _>>()?;
        Presentation::new(generators, relators)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), GroupError> {
        for l in w.letters() {
            if !self.generators.iter().any(|g| g == &l.gen) {
                return Err(GroupError::UnknownGenerator(l.gen.clone()));
            }
        }
        Ok(())
    }

    pub fn gen_index(&self, g: &str) -> Option<usize> {
        self.generators.iter().position(|x| x == g)
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let sums = r.exponent_sums();
                self.generators.iter().map(|g| sums.get(g).copied().unwrap_or(0)).collect()
            })
            .collect()
    }

    fn compact(&self) -> bool {
        self.generators.iter().all(|g| g.len() == 1 && g.chars().all(|c| c.is_ascii_lowercase()))
    }

    fn word_text(&self, w: &Word) -> String {
        if self.compact() {
            w.to_compact()
        } else {
            w.to_tokens()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r)).collect();
        serde_json::json!({ "generators": self.generators, "relators": rels })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Presentation, GroupError> {
        #[derive(Deserialize)]
        struct Raw {
            generators: Vec<String>,
            relators: Vec<String>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| GroupError::Parse(e.to_string()))?;
        let compact = raw.generators.iter().all(|g| g.len() == 1 && g.chars().all(|c| c.is_ascii_lowercase()));
        let rels = raw
            .relators
            .iter()
            .map(|r| if compact { Word::parse_compact(r) } else { Word::parse_tokens(r) })
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(raw.generators, rels)
    }

    /// Generators never used by a relator, in declaration order.
    pub fn free_generators(&self) -> Vec<String> {
        let used: BTreeMap<&str, ()> =
            self.relators.iter().flat_map(|r| r.letters().iter().map(|l| (l.gen.as_str(), ()))).collect();
        self.generators.iter().filter(|g| !used.contains_key(g.as_str())).cloned().collect()
    }
}

fn parse_word(s: &str) -> Result<Word, GroupError> {
    if s.contains('*') || s.contains('^') {
        Word::parse_tokens(s)
    } else {
        Word::parse_compact(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r)).collect();
        write!(f, "gens: {} ; rels: {}", self.generators.join(","), rels.join(", "))
    }
}

impl FromStr for Presentation {
    type Err = GroupError;

    /// Parses `gens: a,b ; rels: aBAb, bb`.
    fn from_str(s: &str) -> Result<Presentation, GroupError> {
        let bad = || GroupError::Parse(s.to_string());
        let (g, r) = s.split_once(';').ok_or_else(bad)?;
        let g = g.trim().strip_prefix("gens:").ok_or_else(bad)?;
        let r = r.trim().strip_prefix("rels:").ok_or_else(bad)?;
        let gens: Vec<String> = g.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
        let compact = gens.iter().all(|g| g.len() == 1 && g.chars().all(|c| c.is_ascii_lowercase()));
        let rels = r
            .split(", ")
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| if compact { Word::parse_compact(x) } else { Word::parse_tokens(x) })
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(gens, rels)
    }
}

/// Append relators, reducing each.
pub fn add_relations(p: &Presentation, ws: &[Word]) -> Result<Presentation, GroupError> {
    p.clone().with_relators(ws.to_vec())
}
