use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::layout::{reflect_x, LayoutTable, Point3};
use super::KirbyError;
use crate::census::{Census, RidgeCycle};
use crate::cover::{CoverSide, DoubleCover};
use crate::exact::QS2;
use crate::groups::{Letter, Presentation, Word};
use crate::polytope24::polytope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PanelTag {
    XY,
    XZ,
    YZ,
    #[serde(rename = "OFF")]
    OffPlane,
}

impl PanelTag {
    pub const ALL: [PanelTag; 4] = [PanelTag::XY, PanelTag::XZ, PanelTag::YZ, PanelTag::OffPlane];

    /// Coordinate that vanishes on the plane.
    fn normal_axis(self) -> Option<usize> {
        match self {
            PanelTag::XY => Some(2),
            PanelTag::XZ => Some(1),
            PanelTag::YZ => Some(0),
            PanelTag::OffPlane => None,
        }
    }

    /// The two coordinates drawn in this panel.
    pub fn axes(self) -> (usize, usize) {
        match self {
            PanelTag::XY | PanelTag::OffPlane => (0, 1),
            PanelTag::XZ => (0, 2),
            PanelTag::YZ => (1, 2),
        }
    }
}

impl fmt::Display for PanelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PanelTag::XY => "xy",
            PanelTag::XZ => "xz",
            PanelTag::YZ => "yz",
            PanelTag::OffPlane => "off",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for PanelTag {
    type Err = KirbyError;

    fn from_str(s: &str) -> Result<PanelTag, KirbyError> {
        match s.to_ascii_lowercase().as_str() {
            "xy" => Ok(PanelTag::XY),
            "xz" => Ok(PanelTag::XZ),
            "yz" => Ok(PanelTag::YZ),
            "off" | "offplane" => Ok(PanelTag::OffPlane),
            _ => Err(KirbyError::UnknownPanel(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Framing {
    Integer(i64),
    Unspecified,
}

impl Serialize for Framing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Framing::Integer(n) => s.serialize_i64(*n),
            Framing::Unspecified => s.serialize_str("unspecified"),
        }
    }
}

impl<'de> Deserialize<'de> for Framing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Framing, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => {
                n.as_i64().map(Framing::Integer).ok_or_else(|| serde::de::Error::custom("framing must be an integer"))
            }
            serde_json::Value::String(s) if s == "unspecified" => Ok(Framing::Unspecified),
            other => Err(serde::de::Error::custom(format!("bad framing {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Origin {
    Ridge { row: usize },
    Filling { word: String },
    Killing,
}

/// A dotted 1-handle: the pair of balls at the two paired sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneHandle {
    /// Generator the handle stands for.
    pub gen: String,
    /// `S,T` for the source and target sides.
    pub label: String,
    pub positions: [Point3; 2],
    /// Positions in the frame of the side's own copy of the polytope, used
    /// for panel tags.
    pub local: [Point3; 2],
}

impl OneHandle {
    pub fn sides(&self) -> (&str, &str) {
        self.label.split_once(',').expect("labels are side pairs")
    }

    /// Whether `label` names this handle, in either order.
    pub fn answers_to(&self, label: &str) -> bool {
        let (s, t) = self.sides();
        match label.split_once(',') {
            Some((a, b)) => (a.trim() == s && b.trim() == t) || (a.trim() == t && b.trim() == s),
            None => label == self.gen,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoHandle {
    /// `r<row>` for ridge cycles, `f:<word>` for fillings, `kill` for the
    /// handle cancelling the interior wall.
    pub id: String,
    pub color: usize,
    pub word: Word,
    pub framing: Framing,
    pub panel: PanelTag,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub step: usize,
    pub op: String,
    pub detail: String,
    pub one_handles: usize,
    pub two_handles: usize,
    pub three_handles: usize,
    pub h1: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KirbyDiagram {
    pub one_handles: Vec<OneHandle>,
    pub two_handles: Vec<TwoHandle>,
    pub three_handles: usize,
    pub four_handles: usize,
    pub trace: Vec<TraceEvent>,
}

/// Number of colours in the palette; handles in one panel cycle through it.
pub const PALETTE_SIZE: usize = 12;

fn in_plane(p: &Point3, axis: usize) -> bool {
    p[axis] == QS2::zero()
}

impl KirbyDiagram {
    pub fn empty() -> KirbyDiagram {
        KirbyDiagram {
            one_handles: Vec::new(),
            two_handles: Vec::new(),
            three_handles: 0,
            four_handles: 0,
            trace: Vec::new(),
        }
    }

    pub fn one_handle(&self, label: &str) -> Result<&OneHandle, KirbyError> {
        self.one_handles
            .iter()
            .find(|h| h.answers_to(label))
            .ok_or_else(|| KirbyError::UnknownHandle(label.to_string()))
    }

    pub fn one_handle_by_gen(&self, gen: &str) -> Option<&OneHandle> {
        self.one_handles.iter().find(|h| h.gen == gen)
    }

    pub fn two_handle(&self, id: &str) -> Result<&TwoHandle, KirbyError> {
        self.two_handles.iter().find(|h| h.id == id).ok_or_else(|| KirbyError::UnknownHandle(id.to_string()))
    }

    /// Panel a word belongs to: the first coordinate plane containing every
    /// ball it runs through, otherwise off-plane.
    pub fn panel_of(&self, w: &Word) -> PanelTag {
        let gens: BTreeSet<&str> = w.letters().iter().map(|l| l.gen.as_str()).collect();
        let points: Vec<&Point3> =
            gens.iter().filter_map(|g| self.one_handle_by_gen(g)).flat_map(|h| h.local.iter()).collect();
        for tag in [PanelTag::XY, PanelTag::XZ, PanelTag::YZ] {
            let axis = tag.normal_axis().expect("coordinate plane");
            if points.iter().all(|p| in_plane(p, axis)) {
                return tag;
            }
        }
        PanelTag::OffPlane
    }

    /// Recompute panel tags and colours from the current words.
    pub fn retag(&mut self) {
        let panels: Vec<PanelTag> = self.two_handles.iter().map(|h| self.panel_of(&h.word)).collect();
        let mut counts = [0usize; 4];
        for (h, p) in self.two_handles.iter_mut().zip(panels) {
            let k = PanelTag::ALL.iter().position(|t| *t == p).expect("known panel");
            h.panel = p;
            h.color = counts[k] % PALETTE_SIZE;
            counts[k] += 1;
        }
    }

    pub fn panel_count(&self, tag: PanelTag) -> usize {
        self.two_handles.iter().filter(|h| h.panel == tag).count()
    }

    /// 1-handles as generators and 2-handle words as relators.
    pub fn presentation(&self) -> Presentation {
        Presentation::new(
            self.one_handles.iter().map(|h| h.gen.clone()).collect(),
            self.two_handles.iter().map(|h| h.word.clone()).collect(),
        )
        .expect("attaching words use 1-handle generators")
    }

    pub fn euler_characteristic(&self) -> i64 {
        1 - self.one_handles.len() as i64 + self.two_handles.len() as i64 - self.three_handles as i64
            + self.four_handles as i64
    }

    pub fn handle_counts(&self) -> [usize; 5] {
        [1, self.one_handles.len(), self.two_handles.len(), self.three_handles, self.four_handles]
    }

    pub fn check_words(&self) -> Result<(), KirbyError> {
        for h in &self.two_handles {
            for l in h.word.letters() {
                if self.one_handle_by_gen(&l.gen).is_none() {
                    return Err(KirbyError::UnknownGenerator(l.gen.clone()));
                }
            }
        }
        Ok(())
    }
}

/// A filling 2-handle: display label and word over the diagram generators.
#[derive(Debug, Clone)]
pub struct Filling {
    pub label: String,
    pub word: Word,
}

/// The word of a ridge cycle including steps through trivial generators.
pub fn attaching_word(c: &RidgeCycle) -> Word {
    let mut letters: Vec<Letter> = c.steps.iter().map(|s| Letter::new(s.gen.clone(), s.inverse)).collect();
    letters.reverse();
    Word::from_letters(letters)
}

fn add_fillings(d: &mut KirbyDiagram, fillings: &[Filling]) -> Result<(), KirbyError> {
    for f in fillings {
        d.two_handles.push(TwoHandle {
            id: format!("f:{}", f.label),
            color: 0,
            word: f.word.clone(),
            framing: Framing::Integer(0),
            panel: PanelTag::OffPlane,
            origin: Origin::Filling { word: f.label.clone() },
        });
        // filling a cusp adds a 2-handle, two 3-handles and a 4-handle
        d.three_handles += 2;
        d.four_handles += 1;
    }
    d.check_words()
}

fn ridge_handles(cycles: &[RidgeCycle]) -> Vec<TwoHandle> {
    cycles
        .iter()
        .enumerate()
        .map(|(i, c)| TwoHandle {
            id: format!("r{}", i + 1),
            color: 0,
            word: attaching_word(c),
            framing: Framing::Unspecified,
            panel: PanelTag::OffPlane,
            origin: Origin::Ridge { row: i + 1 },
        })
        .collect()
}

pub fn build_base_diagram(census: &Census, fillings: &[Filling]) -> Result<KirbyDiagram, KirbyError> {
    let table = LayoutTable::get();
    let p = polytope();
    let one_handles = census
        .pairings
        .iter()
        .map(|sp| {
            let pos = [table.position(sp.source).clone(), table.position(sp.target).clone()];
            OneHandle {
                gen: sp.letter.to_string(),
                label: format!("{},{}", p.sides[sp.source].label, p.sides[sp.target].label),
                positions: pos.clone(),
                local: pos,
            }
        })
        .collect();
    let mut d = KirbyDiagram {
        one_handles,
        two_handles: ridge_handles(&census.cycles),
        three_handles: census.edge_classes.len(),
        four_handles: 0,
        trace: Vec::new(),
    };
    add_fillings(&mut d, fillings)?;
    d.retag();
    Ok(d)
}

fn local_position(cover: &DoubleCover, s: CoverSide) -> Point3 {
    let pos = cover.layout(s);
    if s.copy == 0 {
        pos
    } else {
        reflect_x(&pos)
    }
}

/// Cover diagram; `fillings` must already be written over cover generators.
pub fn build_cover_diagram(cover: &DoubleCover, fillings: &[Filling]) -> Result<KirbyDiagram, KirbyError> {
    let one_handles = cover
        .pairings
        .iter()
        .map(|cp| OneHandle {
            gen: cp.name.clone(),
            label: format!("{},{}", cp.source.label(), cp.target.label()),
            positions: [cover.layout(cp.source), cover.layout(cp.target)],
            local: [local_position(cover, cp.source), local_position(cover, cp.target)],
        })
        .collect();
    let mut two_handles = Vec::new();
    for cp in cover.pairings.iter().filter(|p| p.trivial) {
        two_handles.push(TwoHandle {
            id: "kill".to_string(),
            color: 0,
            word: Word::gen(cp.name.clone()),
            framing: Framing::Unspecified,
            panel: PanelTag::OffPlane,
            origin: Origin::Killing,
        });
    }
    two_handles.extend(ridge_handles(&cover.cycles));
    let mut d = KirbyDiagram {
        one_handles,
        two_handles,
        three_handles: cover.edge_classes.len(),
        four_handles: 0,
        trace: Vec::new(),
    };
    add_fillings(&mut d, fillings)?;
    d.retag();
    Ok(d)
}

/// Fillings given over the base letters, lifted to the cover generators.
pub fn lift_fillings(cover: &DoubleCover, words: &[Word]) -> Result<Vec<Filling>, KirbyError> {
    let lifted = cover.lift_filling_words(words)?;
    Ok(words.iter().zip(lifted).map(|(b, w)| Filling { label: b.to_text(), word: w }).collect())
}

pub fn base_fillings(words: &[Word]) -> Vec<Filling> {
    words.iter().map(|w| Filling { label: w.to_text(), word: w.clone() }).collect()
}
