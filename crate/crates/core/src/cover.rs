//! The orientable double cover built geometrically from two copies of the
//! 24-cell, `P` and `t·P` with `t = alpha^-1`.

use serde::Serialize;
use thiserror::Error;

use crate::census::{Census, CensusError, PairedDomain, RidgeCycle, SideMove};
use crate::exact::QS2;
use crate::groups::{GroupError, Presentation, TransversalData, Word};
use crate::kirby::layout::{reflect_x, LayoutTable, Point3};
use crate::moebius::MoebiusWord;
use crate::polytope24::polytope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("letter {0:?} is not a pairing of this manifold")]
    UnknownLetter(char),
    #[error("letter {0:?} preserves orientation; the cover needs a reversing one")]
    AlphaNotReversing(char),
    #[error("cover pairing {0} reverses orientation")]
    NotOrientable(String),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoverSide {
    /// 0 for `P`, 1 for `t·P`.
    pub copy: usize,
    pub base: usize,
}

impl CoverSide {
    pub fn index(&self) -> usize {
        self.copy * 24 + self.base
    }

    pub fn from_index(i: usize) -> CoverSide {
        CoverSide { copy: i / 24, base: i % 24 }
    }

    /// `S` for the first copy, `S-` for the second.
    pub fn label(&self) -> String {
        let l = polytope().sides[self.base].label;
        if self.copy == 0 {
            l.to_string()
        } else {
            format!("{l}-")
        }
    }

    pub fn parse(label: &str) -> Option<CoverSide> {
        let (base, copy) = match label.strip_suffix('-') {
            Some(b) => (b, 1),
            None => (label, 0),
        };
        polytope().side_by_label(base).ok().map(|b| CoverSide { copy, base: b })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoverRule {
    /// `x: S -> S'` inside `P`.
    Preserving,
    /// `t x t^-1` inside `t·P`.
    PreservingConjugate,
    /// `t x: S -> t·S'`.
    ReversingOut,
    /// `x t^-1: t·S -> S'`.
    ReversingBack,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverPairing {
    pub name: String,
    pub source: CoverSide,
    pub target: CoverSide,
    pub base_letter: char,
    pub rule: CoverRule,
    /// The interior wall identification, whose word is the identity.
    pub trivial: bool,
    #[serde(skip)]
    pub word: MoebiusWord,
}

#[derive(Debug, Clone)]
pub struct DoubleCover {
    pub alpha: char,
    pub transversal: TransversalData,
    pub pairings: Vec<CoverPairing>,
    pub domain: PairedDomain,
    pub cycles: Vec<RidgeCycle>,
    pub edge_classes: Vec<Vec<usize>>,
    base_presentation: Presentation,
    alpha_kpart: [i8; 4],
}

pub fn build_double_cover(census: &Census, alpha: char) -> Result<DoubleCover, CoverError> {
    let sp_alpha = census.pairing(alpha).ok_or(CoverError::UnknownLetter(alpha))?;
    if census.eps.of_gen(&alpha.to_string())? != -1 {
        return Err(CoverError::AlphaNotReversing(alpha));
    }
    let td = TransversalData::new(&census.eps, &alpha.to_string())?;
    let t = sp_alpha.word.inverse();
    let coset_word = |c: usize| if c == 0 { MoebiusWord::identity() } else { t.clone() };

    let mut pairings = Vec::new();
    let mut moves: Vec<Option<SideMove>> = vec![None; 48];
    let mut trivial_gens = Vec::new();
    for sp in &census.pairings {
        let x = sp.letter.to_string();
        let flip = (census.eps.of_gen(&x)? == -1) as usize;
        for c in 0..2 {
            let src_copy = c ^ flip;
            let (name, trivial) = match td.schreier_gen(c, &x)? {
                Some(n) => (n, false),
                None => (td.trivial_name(), true),
            };
            let word = coset_word(c).compose(&sp.word).compose(&coset_word(src_copy).inverse());
            if !word.preserves_orientation() {
                return Err(CoverError::NotOrientable(name));
            }
            let source = CoverSide { copy: src_copy, base: sp.source };
            let target = CoverSide { copy: c, base: sp.target };
            let rule = match (flip, c) {
                (0, 0) => CoverRule::Preserving,
                (0, _) => CoverRule::PreservingConjugate,
                (_, 1) => CoverRule::ReversingOut,
                (_, _) => CoverRule::ReversingBack,
            };
            if trivial {
                trivial_gens.push(name.clone());
            }
            moves[source.index()] =
                Some(SideMove { gen: name.clone(), inverse: false, target: target.index(), word: word.clone() });
            moves[target.index()] =
                Some(SideMove { gen: name.clone(), inverse: true, target: source.index(), word: word.inverse() });
            pairings.push(CoverPairing { name, source, target, base_letter: sp.letter, rule, trivial, word });
        }
    }
    let moves: Vec<SideMove> = moves.into_iter().map(|m| m.expect("every cover side is paired")).collect();
    let domain = PairedDomain::new(
        vec![MoebiusWord::identity(), t.clone()],
        |copy, base| CoverSide { copy, base }.label(),
        moves,
        trivial_gens,
    );
    domain.check_moves()?;

    // lifts of the base cycles' starting ridges, first copy then second
    let mut starts = Vec::new();
    for copy in 0..2 {
        for c in &census.cycles {
            let s = &c.steps[0];
            starts.push((copy * 24 + s.active, copy * 24 + s.passive));
        }
    }
    let cycles = domain.trace_cycles(&starts)?;
    for (i, c) in cycles.iter().enumerate() {
        if !c.moebius.is_identity() {
            return Err(CensusError::PoincareViolation(format!("cover cycle {} is not the identity", i + 1)).into());
        }
    }
    let edge_classes = domain.edge_classes()?;
    Ok(DoubleCover {
        alpha,
        transversal: td,
        pairings,
        domain,
        cycles,
        edge_classes,
        base_presentation: census.presentation(),
        alpha_kpart: sp_alpha.kpart,
    })
}

impl DoubleCover {
    /// Sides other than the interior wall shared by the two copies.
    pub fn boundary_sides(&self) -> Vec<CoverSide> {
        let wall = self.pairings.iter().find(|p| p.trivial).expect("one trivial pairing");
        (0..48).map(CoverSide::from_index).filter(|s| *s != wall.source && *s != wall.target).collect()
    }

    pub fn generators(&self) -> Vec<String> {
        self.transversal.generators(&self.base_presentation).expect("base generators have characters")
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::new(self.generators(), self.cycles.iter().map(|c| c.relator.clone()).collect())
            .expect("cover relators use cover generators")
    }

    pub fn pairing_named(&self, name: &str) -> Option<&CoverPairing> {
        self.pairings.iter().find(|p| p.name == name)
    }

    /// Rewrite base kernel words over the cover generators.
    pub fn lift_filling_words(&self, words: &[Word]) -> Result<Vec<Word>, CoverError> {
        Ok(words.iter().map(|w| self.transversal.rewrite(w)).collect::<Result<Vec<_>, _>>()?)
    }

    /// The isometry of a word in cover generators.
    pub fn word_moebius(&self, w: &Word) -> Option<MoebiusWord> {
        let mut m = MoebiusWord::identity();
        for l in w.letters() {
            let p = self.pairing_named(&l.gen)?;
            let x = if l.inverse { p.word.inverse() } else { p.word.clone() };
            m = m.compose(&x);
        }
        Some(m)
    }

    pub fn cycle_row(&self, c: &RidgeCycle) -> String {
        crate::census::cycle_row(&self.domain, c)
    }

    /// Layout position: the base table for `P`; for `t·P`, the position of
    /// the side with center `k ⊙ c` mirrored in x = 3, `k` the k-part of alpha.
    pub fn layout(&self, side: CoverSide) -> Point3 {
        cover_layout_with(self.alpha_kpart, side)
    }
}

pub fn cover_layout_with(kpart: [i8; 4], side: CoverSide) -> Point3 {
    let table = LayoutTable::get();
    if side.copy == 0 {
        return table.position(side.base).clone();
    }
    let c = polytope().sides[side.base].center;
    let image: [i8; 4] = std::array::from_fn(|j| c[j] * kpart[j]);
    let partner = polytope().side_of_center(&image).expect("sign flips permute centers");
    reflect_x(table.position(partner))
}

/// Layout for the default cover over `g` of code 146928.
pub fn cover_layout(side: CoverSide) -> Point3 {
    cover_layout_with([-1, 1, 1, -1], side)
}

/// True when every coordinate of `p` is exactly zero in the given axis.
pub fn coordinate_zero(p: &Point3, axis: usize) -> bool {
    p[axis] == QS2::zero()
}
