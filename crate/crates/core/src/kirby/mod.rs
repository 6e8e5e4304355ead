//! Kirby diagrams for the handle decompositions, their algebraic
//! simplification and exports.
//!
//! Moves act on attaching words only: a cancellation substitutes the solved
//! generator everywhere and a handle whose word becomes freely trivial is
//! taken to be a zero framed unknot cancelling a 3-handle. Isotopy and
//! framing arithmetic are not modelled.

use thiserror::Error;

use crate::cover::CoverError;
use crate::groups::GroupError;

pub mod diagram;
pub mod export;
pub mod invariants;
pub mod layout;
pub mod moves;

pub use diagram::{
    attaching_word, base_fillings, build_base_diagram, build_cover_diagram, lift_fillings, Filling, Framing,
    KirbyDiagram, OneHandle, Origin, PanelTag, TraceEvent, TwoHandle, PALETTE_SIZE,
};
pub use export::{export_json, export_svg, import_json};
pub use invariants::{invariant_report, InvariantReport, Stage};
pub use layout::{reflect_x, LayoutTable, Point3};
pub use moves::{
    cancel_pair, delete_handle, delete_trivial, simplification_trace, slide, Script, ScriptStep, TraceResult,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KirbyError {
    #[error("no handle named {0}")]
    UnknownHandle(String),
    #[error("attaching word uses unknown generator {0}")]
    UnknownGenerator(String),
    #[error("unknown panel {0}; expected xy, xz, yz or off")]
    UnknownPanel(String),
    #[error("2-handle {two} runs over {one} {count} times, not once")]
    NotCancellable { one: String, two: String, count: usize },
    #[error("2-handle {0} is not freely trivial")]
    NotTrivial(String),
    #[error("deleting 2-handle {0} would leave a negative number of 3-handles")]
    Bookkeeping(String),
    #[error("a handle cannot slide over itself ({0})")]
    SelfSlide(String),
    #[error("script step {step} ({op}) failed: {reason}")]
    Step { step: usize, op: String, reason: String },
    #[error("unknown script {0}")]
    UnknownScript(String),
    #[error("bad diagram document: {0}")]
    Import(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
