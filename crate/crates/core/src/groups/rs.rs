use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::{Letter, Word};
use super::GroupError;

/// A homomorphism to {±1} given on generators.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OrientationChar {
    pub eps: BTreeMap<String, i8>,
}

impl OrientationChar {
    pub fn new(pairs: impl IntoIterator<Item = (String, i8)>) -> OrientationChar {
        OrientationChar { eps: pairs.into_iter().collect() }
    }

    /// Character sending every listed generator to -1 and the others to +1.
    pub fn reversing(p: &Presentation, reversing: &[&str]) -> OrientationChar {
        OrientationChar::new(
            p.generators.iter().map(|g| (g.clone(), if reversing.contains(&g.as_str()) { -1 } else { 1 })),
        )
    }

    pub fn of_gen(&self, g: &str) -> Result<i8, GroupError> {
        self.eps.get(g).copied().ok_or_else(|| GroupError::UnknownGenerator(g.to_string()))
    }

    pub fn of_word(&self, w: &Word) -> Result<i8, GroupError> {
        let mut s = 1i8;
        for l in w.letters() {
            s *= self.of_gen(&l.gen)?;
        }
        Ok(s)
    }
}

/// Transversal {1, t} of the kernel of `eps`, with `t = alpha^-1`.
///
/// Schreier generators are named after the coset words they stand for:
/// for preserving `x`, `x` and `Gxg` (= t·x·t^-1); for reversing `x`, `xg`
/// (= x·t^-1) and `Gx` (= t·x). Single-letter lowercase names use the
/// compact spelling shown (uppercase = inverse); longer names use
/// `alpha^-1*x*alpha` style tokens.
#[derive(Debug, Clone)]
pub struct TransversalData {
    pub alpha: String,
    pub eps: OrientationChar,
}

fn compact(s: &str) -> bool {
    s.len() == 1 && s.chars().all(|c| c.is_ascii_lowercase())
}

impl TransversalData {
    pub fn new(eps: &OrientationChar, alpha: &str) -> Result<TransversalData, GroupError> {
        if eps.of_gen(alpha)? != -1 {
            return Err(GroupError::AlphaNotReversing(alpha.to_string()));
        }
        Ok(TransversalData { alpha: alpha.to_string(), eps: eps.clone() })
    }

    /// Coset index (0 for 1, 1 for t) of a word.
    pub fn psi(&self, w: &Word) -> Result<usize, GroupError> {
        Ok(if self.eps.of_word(w)? == 1 { 0 } else { 1 })
    }

    /// `rho(w) = w · psi(w)^-1` as a word in the ambient generators.
    pub fn rho(&self, w: &Word) -> Result<Word, GroupError> {
        Ok(if self.psi(w)? == 0 { w.clone() } else { w.mul(&Word::gen(&self.alpha)) })
    }

    fn name_t_conj(&self, x: &str) -> String {
        let a = &self.alpha;
        if compact(x) && compact(a) {
            format!("{}{x}{a}", a.to_uppercase())
        } else {
            format!("{a}^-1*{x}*{a}")
        }
    }

    fn name_x_tinv(&self, x: &str) -> String {
        let a = &self.alpha;
        if compact(x) && compact(a) {
            format!("{x}{a}")
        } else {
            format!("{x}*{a}")
        }
    }

    fn name_t_x(&self, x: &str) -> String {
        let a = &self.alpha;
        if compact(x) && compact(a) {
            format!("{}{x}", a.to_uppercase())
        } else {
            format!("{a}^-1*{x}")
        }
    }

    /// Schreier generator `rho(c · x)` for coset `c` and generator `x`, or
    /// `None` when it is trivial (only `t · alpha`).
    pub fn schreier_gen(&self, coset: usize, x: &str) -> Result<Option<String>, GroupError> {
        let e = self.eps.of_gen(x)?;
        Ok(match (coset, e) {
            (0, 1) => Some(x.to_string()),
            (1, 1) => Some(self.name_t_conj(x)),
            (0, _) => Some(self.name_x_tinv(x)),
            (_, _) if x == self.alpha => None,
            (_, _) => Some(self.name_t_x(x)),
        })
    }

    /// Name of the trivial Schreier generator `t · alpha`.
    pub fn trivial_name(&self) -> String {
        self.name_t_x(&self.alpha)
    }

    /// Rewrite `w`, read from coset `start`, over the Schreier generators.
    /// Returns the rewritten word and the final coset.
    pub fn rewrite_from(&self, w: &Word, start: usize) -> Result<(Word, usize), GroupError> {
        let mut coset = start;
        let mut out = Vec::new();
        for l in w.letters() {
            let flip = (self.eps.of_gen(&l.gen)? == -1) as usize;
            if l.inverse {
                coset ^= flip;
                if let Some(s) = self.schreier_gen(coset, &l.gen)? {
                    out.push(Letter::neg(s));
                }
            } else {
                if let Some(s) = self.schreier_gen(coset, &l.gen)? {
                    out.push(Letter::pos(s));
                }
                coset ^= flip;
            }
        }
        Ok((Word::from_letters(out), coset))
    }

    /// Rewrite a kernel element from the trivial coset.
    pub fn rewrite(&self, w: &Word) -> Result<Word, GroupError> {
        if self.eps.of_word(w)? != 1 {
            return Err(GroupError::NotInKernel(w.to_text()));
        }
        Ok(self.rewrite_from(w, 0)?.0)
    }

    pub fn generators(&self, ambient: &Presentation) -> Result<Vec<String>, GroupError> {
        let mut out = Vec::new();
        for x in &ambient.generators {
            for c in 0..2 {
                if let Some(s) = self.schreier_gen(c, x)? {
                    out.push(s);
                }
            }
        }
        Ok(out)
    }
}

/// Presentation of the kernel of `eps` by index-2 Reidemeister–Schreier.
///
/// The relators are every ambient relator rewritten from each of the two
/// cosets, so there are `2|R|` of them on `2|X| - 1` generators.
pub fn rs_double_cover(p: &Presentation, eps: &OrientationChar, alpha: &str) -> Result<Presentation, GroupError> {
    let td = TransversalData::new(eps, alpha)?;
    for r in &p.relators {
        if eps.of_word(r)? != 1 {
            return Err(GroupError::NotInKernel(r.to_text()));
        }
    }
    let gens = td.generators(p)?;
    let mut rels = Vec::new();
    for start in 0..2 {
        for r in &p.relators {
            let (w, end) = td.rewrite_from(r, start)?;
            debug_assert_eq!(end, start);
            rels.push(w);
        }
    }
    Presentation::new(gens, rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelianization, todd_coxeter, CosetResult};

    #[test]
    fn cover_of_z2_is_trivial() {
        let p = Presentation::from_strs(&["x"], &["xx"]).unwrap();
        let eps = OrientationChar::reversing(&p, &["x"]);
        let q = rs_double_cover(&p, &eps, "x").unwrap();
        assert_eq!(q.generators, vec!["xx".to_string()]);
        assert_eq!(q.relators.len(), 2);
        assert_eq!(todd_coxeter(&q, 100), CosetResult::Order(1));
    }

    #[test]
    fn cover_of_z_is_z() {
        let p = Presentation::from_strs(&["x"], &[]).unwrap();
        let eps = OrientationChar::reversing(&p, &["x"]);
        let q = rs_double_cover(&p, &eps, "x").unwrap();
        assert_eq!(q.generators.len(), 1);
        assert_eq!(abelianization(&q).rank, 1);
    }

    #[test]
    fn alpha_must_reverse() {
        let p = Presentation::from_strs(&["x", "y"], &[]).unwrap();
        let eps = OrientationChar::reversing(&p, &["x"]);
        assert!(matches!(rs_double_cover(&p, &eps, "y"), Err(GroupError::AlphaNotReversing(_))));
        let bad = Presentation::from_strs(&["x", "y"], &["x"]).unwrap();
        assert!(matches!(rs_double_cover(&bad, &eps, "x"), Err(GroupError::NotInKernel(_))));
    }

    #[test]
    fn rewriting_a_commutator() {
        let p = Presentation::from_strs(&["e", "h", "g"], &[]).unwrap();
        let eps = OrientationChar::reversing(&p, &["e", "h", "g"]);
        let td = TransversalData::new(&eps, "g").unwrap();
        let w = Word::parse_compact("EheH").unwrap();
        let got = td.rewrite(&w).unwrap();
        assert_eq!(got.to_tokens(), "Ge^-1*Gh*eg*hg^-1");
        assert!(td.rewrite(&Word::gen("e")).is_err());
    }

    #[test]
    fn klein_bottle_cover_is_torus() {
        // <a, b | abAb>: conjugation by a inverts b, so a reverses orientation
        let p = Presentation::from_strs(&["a", "b"], &["abAb"]).unwrap();
        let eps = OrientationChar::reversing(&p, &["a"]);
        let q = rs_double_cover(&p, &eps, "a").unwrap();
        assert_eq!(q.generators.len(), 3);
        let ab = abelianization(&q);
        assert_eq!(ab.rank, 2);
        assert!(ab.torsion.is_empty());
    }
}
