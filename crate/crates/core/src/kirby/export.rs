use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::diagram::{Framing, KirbyDiagram, OneHandle, Origin, PanelTag, TraceEvent, TwoHandle, PALETTE_SIZE};
use super::layout::Point3;
use super::KirbyError;
use crate::groups::{Letter, Word};

#[derive(Serialize, Deserialize)]
struct OneHandleDoc {
    label: String,
    gen: String,
    pos: [Point3; 2],
    local: [Point3; 2],
}

#[derive(Serialize, Deserialize)]
struct LetterDoc {
    handle: String,
    sign: i8,
}

#[derive(Serialize, Deserialize)]
struct TwoHandleDoc {
    id: String,
    color: usize,
    word: Vec<LetterDoc>,
    framing: Framing,
    panel: PanelTag,
    origin: Origin,
}

#[derive(Serialize, Deserialize)]
struct DiagramDoc {
    one_handles: Vec<OneHandleDoc>,
    two_handles: Vec<TwoHandleDoc>,
    three_handles: usize,
    four_handles: usize,
    trace: Vec<TraceEvent>,
}

/// JSON document of a diagram. Attaching words are lists of 1-handle labels
/// with signs; coordinates are `[a, b]` pairs meaning `a + b·sqrt2`.
pub fn export_json(d: &KirbyDiagram) -> serde_json::Value {
    let label_of = |g: &str| d.one_handle_by_gen(g).map(|h| h.label.clone()).unwrap_or_else(|| g.to_string());
    let doc = DiagramDoc {
        one_handles: d
            .one_handles
            .iter()
            .map(|h| OneHandleDoc {
                label: h.label.clone(),
                gen: h.gen.clone(),
                pos: h.positions.clone(),
                local: h.local.clone(),
            })
            .collect(),
        two_handles: d
            .two_handles
            .iter()
            .map(|h| TwoHandleDoc {
                id: h.id.clone(),
                color: h.color,
                word: h
                    .word
                    .letters()
                    .iter()
                    .map(|l| LetterDoc { handle: label_of(&l.gen), sign: if l.inverse { -1 } else { 1 } })
                    .collect(),
                framing: h.framing,
                panel: h.panel,
                origin: h.origin.clone(),
            })
            .collect(),
        three_handles: d.three_handles,
        four_handles: d.four_handles,
        trace: d.trace.clone(),
    };
    serde_json::to_value(doc).expect("diagram serializes")
}

pub fn import_json(v: &serde_json::Value) -> Result<KirbyDiagram, KirbyError> {
    let doc: DiagramDoc = serde_json::from_value(v.clone()).map_err(|e| KirbyError::Import(e.to_string()))?;
    let one_handles: Vec<OneHandle> = doc
        .one_handles
        .into_iter()
        .map(|h| OneHandle { gen: h.gen, label: h.label, positions: h.pos, local: h.local })
        .collect();
    let gen_of = |label: &str| -> Result<String, KirbyError> {
        one_handles
            .iter()
            .find(|h| h.label == label)
            .map(|h| h.gen.clone())
            .ok_or_else(|| KirbyError::UnknownHandle(label.to_string()))
    };
    let mut two_handles = Vec::new();
    for h in doc.two_handles {
        let letters = h
            .word
            .iter()
            .map(|l| Ok(Letter::new(gen_of(&l.handle)?, l.sign < 0)))
            .collect::<Result<Vec<_>, KirbyError>>()?;
        two_handles.push(TwoHandle {
            id: h.id,
            color: h.color,
            word: Word::raw(letters),
            framing: h.framing,
            panel: h.panel,
            origin: h.origin,
        });
    }
    Ok(KirbyDiagram {
        one_handles,
        two_handles,
        three_handles: doc.three_handles,
        four_handles: doc.four_handles,
        trace: doc.trace,
    })
}

/// Twelve distinguishable colours for the 2-handles of one panel.
pub const PALETTE: [&str; PALETTE_SIZE] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#000000", "#f2c500",
];

const SCALE: f64 = 60.0;
const MARGIN: f64 = 60.0;

fn side_labels(h: &OneHandle) -> [&str; 2] {
    let (a, b) = h.sides();
    [a, b]
}

/// One panel as a static SVG 1.1 document: dotted circles for the balls of
/// every 1-handle, a polyline per 2-handle of the panel through the balls it
/// visits, and a legend.
pub fn export_svg(d: &KirbyDiagram, panel: PanelTag) -> String {
    let (ax, ay) = panel.axes();
    let pts: Vec<(f64, f64)> =
        d.one_handles.iter().flat_map(|h| h.positions.iter()).map(|p| (p[ax].to_f64(), p[ay].to_f64())).collect();
    let min_x = pts.iter().map(|p| p.0).fold(0.0f64, f64::min);
    let max_x = pts.iter().map(|p| p.0).fold(0.0f64, f64::max);
    let min_y = pts.iter().map(|p| p.1).fold(0.0f64, f64::min);
    let max_y = pts.iter().map(|p| p.1).fold(0.0f64, f64::max);
    let handles: Vec<&TwoHandle> = d.two_handles.iter().filter(|h| h.panel == panel).collect();
    let width = (max_x - min_x) * SCALE + 2.0 * MARGIN + 260.0;
    let height = ((max_y - min_y) * SCALE + 2.0 * MARGIN).max(40.0 + 18.0 * handles.len() as f64);
    let to_screen = |x: f64, y: f64| (MARGIN + (x - min_x) * SCALE, MARGIN + (max_y - y) * SCALE);

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{height:.1}">"#)
        .unwrap();
    writeln!(s, r#"<title>{} panel</title>"#, panel).unwrap();
    for h in &handles {
        let mut coords = Vec::new();
        for l in h.word.letters() {
            if let Some(oh) = d.one_handle_by_gen(&l.gen) {
                let (a, b) = if l.inverse { (1, 0) } else { (0, 1) };
                for k in [a, b] {
                    let p = &oh.positions[k];
                    let (x, y) = to_screen(p[ax].to_f64(), p[ay].to_f64());
                    coords.push(format!("{x:.2},{y:.2}"));
                }
            }
        }
        if let Some(first) = coords.first().cloned() {
            coords.push(first);
        }
        writeln!(
            s,
            r#"<polyline id="{}" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            h.id,
            PALETTE[h.color % PALETTE_SIZE],
            coords.join(" ")
        )
        .unwrap();
    }
    for h in &d.one_handles {
        for (k, label) in side_labels(h).iter().enumerate() {
            let p = &h.positions[k];
            let (x, y) = to_screen(p[ax].to_f64(), p[ay].to_f64());
            writeln!(
                s,
                r#"<circle cx="{x:.2}" cy="{y:.2}" r="9" fill="white" stroke="black" stroke-dasharray="2,2"/>"#
            )
            .unwrap();
            writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{label}</text>"#, x, y + 3.5)
                .unwrap();
        }
    }
    let lx = width - 240.0;
    writeln!(s, r#"<g id="legend">"#).unwrap();
    for (i, h) in handles.iter().enumerate() {
        let y = 30.0 + 18.0 * i as f64;
        writeln!(
            s,
            r#"<rect x="{lx:.1}" y="{:.1}" width="12" height="12" fill="{}"/>"#,
            y - 10.0,
            PALETTE[h.color % PALETTE_SIZE]
        )
        .unwrap();
        let framing = match h.framing {
            Framing::Integer(n) => n.to_string(),
            Framing::Unspecified => "?".to_string(),
        };
        writeln!(
            s,
            r#"<text x="{:.1}" y="{y:.1}" font-size="11">{} [{}] {}</text>"#,
            lx + 18.0,
            h.id,
            framing,
            escape(&h.word.to_tokens())
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
