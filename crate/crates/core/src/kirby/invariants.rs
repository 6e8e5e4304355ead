use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::diagram::{base_fillings, build_base_diagram, build_cover_diagram, lift_fillings};
use super::moves::{simplification_trace, Script};
use super::KirbyError;
use crate::census::Census;
use crate::cover::{build_double_cover, DoubleCover};
use crate::cusps::default_fillings;
use crate::groups::{
    abelianization, add_relations, rs_double_cover, tietze_simplify, todd_coxeter, AbelianInvariants, CosetResult,
    OrientationChar, Presentation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Base,
    Cover,
    Filled,
    FilledCover,
    Degree2,
}

impl Stage {
    pub const ALL: [Stage; 5] = [Stage::Base, Stage::Cover, Stage::Filled, Stage::FilledCover, Stage::Degree2];
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Base => "base",
            Stage::Cover => "cover",
            Stage::Filled => "filled",
            Stage::FilledCover => "filled_cover",
            Stage::Degree2 => "degree2",
        };
        f.write_str(s)
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Stage, String> {
        Stage::ALL
            .into_iter()
            .find(|st| st.to_string() == s.replace('-', "_"))
            .ok_or_else(|| format!("unknown stage {s}; expected base, cover, filled, filled_cover or degree2"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub stage: Stage,
    pub euler_characteristic: i64,
    pub h1: AbelianInvariants,
    pub group_order: CosetResult,
    pub orientable: bool,
    pub generators: usize,
    pub relators: usize,
    pub candidate_remark: String,
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = match &self.group_order {
            CosetResult::Order(n) => n.to_string(),
            CosetResult::Exceeded => "unknown (coset limit reached)".to_string(),
        };
        writeln!(f, "stage: {}", self.stage)?;
        writeln!(f, "presentation: {} generators, {} relators", self.generators, self.relators)?;
        writeln!(f, "euler characteristic: {}", self.euler_characteristic)?;
        writeln!(f, "H1: {}", self.h1)?;
        writeln!(f, "pi1 order: {order}")?;
        writeln!(f, "orientable: {}", self.orientable)?;
        write!(f, "remark: {}", self.candidate_remark)
    }
}

/// Filled base presentation: the ridge relators plus the filling words.
pub fn filled_presentation(census: &Census) -> Result<Presentation, KirbyError> {
    let fills = default_fillings(census).map_err(|e| KirbyError::Import(e.to_string()))?;
    Ok(add_relations(&census.presentation(), &fills.base)?)
}

/// Filled cover presentation: one lifted filling per cusp.
pub fn filled_cover_presentation(census: &Census, cover: &DoubleCover) -> Result<Presentation, KirbyError> {
    let fills = default_fillings(census).map_err(|e| KirbyError::Import(e.to_string()))?;
    let lifted = cover.lift_filling_words(&fills.cover)?;
    Ok(add_relations(&cover.presentation(), &lifted)?)
}

/// Characters to {±1} killing every relator, found by brute force over the
/// generators (at most 16 of them); the first nontrivial one is returned.
fn nontrivial_character(p: &Presentation) -> Option<OrientationChar> {
    let n = p.generators.len();
    if n > 16 {
        return None;
    }
    (1u32..(1 << n)).find_map(|mask| {
        let eps = OrientationChar::new(
            p.generators.iter().enumerate().map(|(i, g)| (g.clone(), if mask >> i & 1 == 1 { -1 } else { 1 })),
        );
        p.relators.iter().all(|r| eps.of_word(r) == Ok(1)).then_some(eps)
    })
}

/// The closed filled cover after simplification: the shipped trace when the
/// code has one, Tietze moves otherwise.
pub fn simplified_filled_cover(census: &Census, alpha: char) -> Result<Presentation, KirbyError> {
    let cover = build_double_cover(census, alpha)?;
    let script = Script::shipped_names()
        .into_iter()
        .filter_map(|n| Script::shipped(n).ok())
        .find(|s| s.code == census.code && s.alpha == alpha);
    match script {
        Some(s) => {
            let fills = default_fillings(census).map_err(|e| KirbyError::Import(e.to_string()))?;
            let d = build_cover_diagram(&cover, &lift_fillings(&cover, &fills.cover)?)?;
            Ok(simplification_trace(&d, &s.steps)?.presentation)
        }
        None => Ok(tietze_simplify(&filled_cover_presentation(census, &cover)?, 64)),
    }
}

fn report(
    stage: Stage,
    p: &Presentation,
    chi: i64,
    orientable: bool,
    max_cosets: usize,
    remark: String,
) -> InvariantReport {
    InvariantReport {
        stage,
        euler_characteristic: chi,
        h1: abelianization(p),
        group_order: todd_coxeter(p, max_cosets),
        orientable,
        generators: p.generators.len(),
        relators: p.relators.len(),
        candidate_remark: remark,
    }
}

/// Invariants at one stage of the pipeline. Euler characteristics come from
/// the handle counts of the corresponding diagram; the last stage is the
/// double cover of the simplified filled cover, so its characteristic is
/// twice that of the filled cover.
pub fn invariant_report(
    census: &Census,
    stage: Stage,
    alpha: char,
    max_cosets: usize,
) -> Result<InvariantReport, KirbyError> {
    let fills = default_fillings(census).map_err(|e| KirbyError::Import(e.to_string()))?;
    Ok(match stage {
        Stage::Base => {
            let d = build_base_diagram(census, &[])?;
            let p = census.presentation();
            report(stage, &p, d.euler_characteristic(), false, max_cosets, "cusped, non-orientable".to_string())
        }
        Stage::Cover => {
            let cover = build_double_cover(census, alpha)?;
            let d = build_cover_diagram(&cover, &[])?;
            let p = cover.presentation();
            report(stage, &p, d.euler_characteristic(), true, max_cosets, "cusped orientable double cover".to_string())
        }
        Stage::Filled => {
            let d = build_base_diagram(census, &base_fillings(&fills.base))?;
            let p = filled_presentation(census)?;
            report(stage, &p, d.euler_characteristic(), false, max_cosets, "closed, every cusp filled".to_string())
        }
        Stage::FilledCover => {
            let cover = build_double_cover(census, alpha)?;
            let d = build_cover_diagram(&cover, &lift_fillings(&cover, &fills.cover)?)?;
            let p = filled_cover_presentation(census, &cover)?;
            report(stage, &p, d.euler_characteristic(), true, max_cosets, "closed orientable".to_string())
        }
        Stage::Degree2 => {
            let cover = build_double_cover(census, alpha)?;
            let d = build_cover_diagram(&cover, &lift_fillings(&cover, &fills.cover)?)?;
            let simple = simplified_filled_cover(census, alpha)?;
            let eps = nontrivial_character(&simple)
                .ok_or_else(|| KirbyError::Import("the filled cover has no double cover to take".to_string()))?;
            let reversing = eps.eps.iter().find(|(_, v)| **v == -1).map(|(g, _)| g.clone()).expect("nontrivial");
            let p = rs_double_cover(&simple, &eps, &reversing)?;
            let r = report(stage, &p, 2 * d.euler_characteristic(), true, max_cosets, String::new());
            let remark = if r.group_order == CosetResult::Order(1) && r.euler_characteristic == 4 {
                "simply connected, χ=4, so homeomorphic to S²×S², CP²#CP² or its mirror; an even intersection \
                 form singles out S²×S², and the diagrammatic argument gives a diffeomorphism to S²×S² \
                 (cited, not derived here)"
                    .to_string()
            } else {
                format!("χ={}", r.euler_characteristic)
            };
            InvariantReport { candidate_remark: remark, ..r }
        }
    })
}
