use serde::{Deserialize, Serialize};

use super::diagram::{KirbyDiagram, TraceEvent};
use super::KirbyError;
use crate::groups::{abelianization, cyclic_reduce, solve_for, Presentation, Word};

fn record(d: &mut KirbyDiagram, op: &str, detail: String) {
    let h1 = abelianization(&d.presentation()).to_string();
    let ev = TraceEvent {
        step: d.trace.len() + 1,
        op: op.to_string(),
        detail,
        one_handles: d.one_handles.len(),
        two_handles: d.two_handles.len(),
        three_handles: d.three_handles,
        h1,
    };
    d.trace.push(ev);
}

/// Cancel a 1-handle against a 2-handle running over it exactly once. The
/// generator is solved from the 2-handle's word and substituted into every
/// other attaching word.
pub fn cancel_pair(d: &KirbyDiagram, one: &str, two: &str) -> Result<KirbyDiagram, KirbyError> {
    let h1 = d.one_handle(one)?;
    let h2 = d.two_handle(two)?;
    let w = cyclic_reduce(&h2.word);
    let count = w.occurrences(&h1.gen);
    let value = solve_for(&w, &h1.gen).ok_or_else(|| KirbyError::NotCancellable {
        one: h1.label.clone(),
        two: h2.id.clone(),
        count,
    })?;
    let gen = h1.gen.clone();
    let (label, id) = (h1.label.clone(), h2.id.clone());
    let mut out = d.clone();
    out.one_handles.retain(|h| h.gen != gen);
    out.two_handles.retain(|h| h.id != id);
    for h in &mut out.two_handles {
        h.word = cyclic_reduce(&h.word.substitute(&gen, &value));
    }
    out.retag();
    record(&mut out, "cancel", format!("{label} with {id}"));
    Ok(out)
}

fn remove_trivial(d: &mut KirbyDiagram, id: &str) -> Result<(), KirbyError> {
    if d.three_handles == 0 {
        return Err(KirbyError::Bookkeeping(id.to_string()));
    }
    d.two_handles.retain(|h| h.id != id);
    d.three_handles -= 1;
    record(d, "delete", id.to_string());
    Ok(())
}

/// Delete one 2-handle whose attaching word is freely trivial, together
/// with a 3-handle.
pub fn delete_handle(d: &KirbyDiagram, id: &str) -> Result<KirbyDiagram, KirbyError> {
    let h = d.two_handle(id)?;
    if !cyclic_reduce(&h.word).is_empty() {
        return Err(KirbyError::NotTrivial(id.to_string()));
    }
    let mut out = d.clone();
    remove_trivial(&mut out, id)?;
    Ok(out)
}

/// Delete every freely trivial 2-handle, one 3-handle each.
pub fn delete_trivial(d: &KirbyDiagram) -> Result<KirbyDiagram, KirbyError> {
    let ids: Vec<String> =
        d.two_handles.iter().filter(|h| cyclic_reduce(&h.word).is_empty()).map(|h| h.id.clone()).collect();
    let mut out = d.clone();
    for id in ids {
        remove_trivial(&mut out, &id)?;
    }
    Ok(out)
}

/// Slide `moving` over `over`: its word becomes `w · c u^±1 c^-1` with `u`
/// the word of `over` and `c` an optional conjugating path.
pub fn slide(d: &KirbyDiagram, moving: &str, over: &str, inverse: bool, by: &Word) -> Result<KirbyDiagram, KirbyError> {
    if moving == over {
        return Err(KirbyError::SelfSlide(moving.to_string()));
    }
    let u = d.two_handle(over)?.word.clone();
    d.two_handle(moving)?;
    let u = if inverse { u.inverse() } else { u };
    let term = by.mul(&u).mul(&by.inverse());
    let mut out = d.clone();
    for h in &mut out.two_handles {
        if h.id == moving {
            h.word = cyclic_reduce(&h.word.mul(&term));
        }
    }
    out.check_words()?;
    out.retag();
    record(&mut out, "slide", format!("{moving} over {over}{}", if inverse { " inverted" } else { "" }));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ScriptStep {
    Cancel {
        one: String,
        two: String,
    },
    Delete {
        two: String,
    },
    DeleteTrivial,
    Slide {
        two: String,
        over: String,
        #[serde(default)]
        inverse: bool,
        #[serde(default)]
        by: Option<String>,
    },
}

impl ScriptStep {
    fn name(&self) -> String {
        match self {
            ScriptStep::Cancel { one, two } => format!("cancel {one} with {two}"),
            ScriptStep::Delete { two } => format!("delete {two}"),
            ScriptStep::DeleteTrivial => "delete trivial".to_string(),
            ScriptStep::Slide { two, over, .. } => format!("slide {two} over {over}"),
        }
    }
}

/// A replayable simplification: the diagram it starts from and its moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Script {
    pub name: String,
    pub code: String,
    /// Reversing generator used for the double cover.
    pub alpha: char,
    pub steps: Vec<ScriptStep>,
}

const SHIPPED: &[(&str, &str)] = &[("m35-cover-fill", include_str!("../../data/m35-cover-fill.json"))];

impl Script {
    pub fn shipped(name: &str) -> Result<Script, KirbyError> {
        let (_, text) =
            SHIPPED.iter().find(|(n, _)| *n == name).ok_or_else(|| KirbyError::UnknownScript(name.to_string()))?;
        serde_json::from_str(text).map_err(|e| KirbyError::Import(e.to_string()))
    }

    pub fn shipped_names() -> Vec<&'static str> {
        SHIPPED.iter().map(|(n, _)| *n).collect()
    }
}

#[derive(Debug, Clone)]
pub struct TraceResult {
    pub diagram: KirbyDiagram,
    pub presentation: Presentation,
}

fn apply(d: &KirbyDiagram, step: &ScriptStep) -> Result<KirbyDiagram, KirbyError> {
    match step {
        ScriptStep::Cancel { one, two } => cancel_pair(d, one, two),
        ScriptStep::Delete { two } => delete_handle(d, two),
        ScriptStep::DeleteTrivial => delete_trivial(d),
        ScriptStep::Slide { two, over, inverse, by } => {
            let by = match by {
                Some(s) => Word::parse_tokens(s)?,
                None => Word::empty(),
            };
            slide(d, two, over, *inverse, &by)
        }
    }
}

/// Replay a script, checking after every step that the abelianization of
/// the diagram's presentation is unchanged.
pub fn simplification_trace(d: &KirbyDiagram, steps: &[ScriptStep]) -> Result<TraceResult, KirbyError> {
    let initial = abelianization(&d.presentation());
    let mut cur = d.clone();
    for (i, step) in steps.iter().enumerate() {
        let fail = |reason: String| KirbyError::Step { step: i + 1, op: step.name(), reason };
        cur = apply(&cur, step).map_err(|e| fail(e.to_string()))?;
        let now = abelianization(&cur.presentation());
        if now != initial {
            return Err(fail(format!("abelianization changed from {initial} to {now}")));
        }
    }
    let presentation = cur.presentation();
    Ok(TraceResult { diagram: cur, presentation })
}
