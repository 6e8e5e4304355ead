//! Side-pairing codes, side pairings, ridge cycles, edge classes and the
//! fundamental-group presentation of a 24-cell manifold.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{Letter, OrientationChar, Presentation, Word};
use crate::moebius::{AtomicMap, BoundaryPoint, GenSphere, MoebiusWord};
use crate::polytope24::{polytope, Polytope};

pub type KVec = [i8; 4];

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum CensusError {
    #[error("cannot parse pairing code {0:?}: expected six hexadecimal digits")]
    Parse(String),
    #[error("invalid pairing code: {0}")]
    InvalidCode(String),
    #[error("Poincaré condition violated: {0}")]
    PoincareViolation(String),
}

/// Coordinate supports of the six side families, in code-digit order.
pub const FAMILIES: [[usize; 2]; 6] = [[0, 1], [0, 2], [1, 2], [0, 3], [1, 3], [2, 3]];

/// Generator letters of each family.
pub const FAMILY_LETTERS: [[char; 2]; 6] = [['a', 'b'], ['c', 'd'], ['e', 'f'], ['g', 'h'], ['i', 'j'], ['k', 'l']];

/// The k-parts of code 146928 as printed with its pairing display.
const CALIBRATION: (&str, [KVec; 6]) =
    ("146928", [[-1, 1, 1, 1], [1, 1, -1, 1], [1, -1, -1, 1], [-1, 1, 1, -1], [1, -1, 1, 1], [1, 1, 1, -1]]);

fn decode_digit(d: u32) -> KVec {
    std::array::from_fn(|j| if d & (1 << j) != 0 { -1 } else { 1 })
}

fn calibrate() {
    static DONE: OnceLock<()> = OnceLock::new();
    DONE.get_or_init(|| {
        let got: Vec<KVec> = CALIBRATION.0.chars().map(|c| decode_digit(c.to_digit(16).unwrap())).collect();
        assert_eq!(got, CALIBRATION.1.to_vec(), "digit decoding disagrees with the reference code");
    });
}

/// Decode a six-digit hexadecimal code: digit `d` gives the sign vector
/// with coordinate `j` negative iff bit `j-1` of `d` is set.
pub fn parse_code(text: &str) -> Result<[KVec; 6], CensusError> {
    calibrate();
    let t = text.trim();
    let digits: Vec<u32> = t
        .chars()
        .map(|c| c.to_digit(16))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CensusError::Parse(text.to_string()))?;
    if digits.len() != 6 {
        return Err(CensusError::Parse(text.to_string()));
    }
    let mut out = [[1i8; 4]; 6];
    for (f, &d) in digits.iter().enumerate() {
        if d == 0 {
            return Err(CensusError::InvalidCode(format!("digit {} is 0", f + 1)));
        }
        let k = decode_digit(d);
        let [p, q] = FAMILIES[f];
        if k[p] == 1 && k[q] == 1 {
            return Err(CensusError::InvalidCode(format!(
                "digit {} fixes the sides of family {}",
                f + 1,
                FAMILY_LETTERS[f].iter().collect::<String>()
            )));
        }
        out[f] = k;
    }
    Ok(out)
}

pub fn print_code(ks: &[KVec; 6]) -> String {
    ks.iter()
        .map(|k| {
            let d: u32 = (0..4).filter(|&j| k[j] < 0).map(|j| 1 << j).sum();
            std::char::from_digit(d, 16).expect("digit below 16")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SidePairing {
    pub letter: char,
    pub source: usize,
    pub target: usize,
    pub kpart: KVec,
    pub word: MoebiusWord,
}

impl SidePairing {
    /// Inversion in the target sphere after the sign flip.
    pub fn new(letter: char, source: usize, target: usize, kpart: KVec) -> SidePairing {
        let p = polytope();
        let word = MoebiusWord::from_atoms(vec![
            AtomicMap::inversion(&p.sides[target].sphere()).expect("side spheres are round"),
            AtomicMap::sign_flip(kpart).expect("pairing k-part is not the identity"),
        ]);
        SidePairing { letter, source, target, kpart, word }
    }

    pub fn describe(&self) -> String {
        let p = polytope();
        let k: Vec<String> = self.kpart.iter().map(|x| if *x < 0 { "-1".into() } else { "+1".into() }).collect();
        format!(
            "{}: {} -> {}  k=({})",
            self.letter,
            p.sides[self.source].label,
            p.sides[self.target].label,
            k.join(",")
        )
    }
}

pub fn build_pairings(ks: &[KVec; 6]) -> Vec<SidePairing> {
    let p = polytope();
    let mut out = Vec::new();
    for (f, k) in ks.iter().enumerate() {
        let [a, b] = FAMILIES[f];
        let members: Vec<usize> =
            p.sides.iter().filter(|s| s.center[a] != 0 && s.center[b] != 0).map(|s| s.index).collect();
        let mut used = Vec::new();
        let mut letter = FAMILY_LETTERS[f].iter();
        for &s in &members {
            if used.contains(&s) {
                continue;
            }
            let c = p.sides[s].center;
            let image: [i8; 4] = std::array::from_fn(|j| c[j] * k[j]);
            let t = p.side_of_center(&image).expect("sign flips permute side centers");
            used.push(s);
            used.push(t);
            out.push(SidePairing::new(*letter.next().expect("two letters per family"), s, t, *k));
        }
    }
    out
}

/// `eps(x) = +1` iff the k-part of `x` has an odd number of -1 entries.
pub fn orientation_character(pairings: &[SidePairing]) -> OrientationChar {
    OrientationChar::new(pairings.iter().map(|sp| {
        let neg = sp.kpart.iter().filter(|x| **x < 0).count();
        (sp.letter.to_string(), if neg % 2 == 1 { 1 } else { -1 })
    }))
}

/// How a side of a domain is carried to its partner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideMove {
    pub gen: String,
    pub inverse: bool,
    pub target: usize,
    pub word: MoebiusWord,
}

impl SideMove {
    pub fn letter(&self) -> Letter {
        Letter::new(self.gen.clone(), self.inverse)
    }

    pub fn label(&self) -> String {
        if self.inverse {
            format!("{}^-1", self.gen)
        } else {
            self.gen.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainSide {
    pub copy: usize,
    pub base: usize,
    pub label: String,
    pub sphere: GenSphere,
}

/// One or more placed copies of the 24-cell glued into a fundamental
/// domain, with a move attached to each side.
///
/// Side, ridge, vertex and edge indices are `copy * n + base` with `n` the
/// base count (24, 96, 24, 96).
#[derive(Debug, Clone, Serialize)]
pub struct PairedDomain {
    pub placements: Vec<MoebiusWord>,
    pub sides: Vec<DomainSide>,
    pub moves: Vec<SideMove>,
    /// Generators whose word is the identity; they are omitted from relators.
    pub trivial_gens: Vec<String>,
    #[serde(skip)]
    vertex_points: Vec<BoundaryPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleStep {
    pub active: usize,
    pub passive: usize,
    pub gen: String,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RidgeCycle {
    pub steps: Vec<CycleStep>,
    pub relator: Word,
    #[serde(skip)]
    pub moebius: MoebiusWord,
}

impl RidgeCycle {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Domain ridges visited, as sorted side pairs.
    pub fn ridges(&self) -> Vec<(usize, usize)> {
        self.steps.iter().map(|s| (s.active.min(s.passive), s.active.max(s.passive))).collect()
    }
}

impl PairedDomain {
    pub fn new(
        placements: Vec<MoebiusWord>,
        labels: impl Fn(usize, usize) -> String,
        moves: Vec<SideMove>,
        trivial_gens: Vec<String>,
    ) -> PairedDomain {
        let p = polytope();
        let mut sides = Vec::new();
        let mut vertex_points = Vec::new();
        for (copy, place) in placements.iter().enumerate() {
            for s in &p.sides {
                sides.push(DomainSide {
                    copy,
                    base: s.index,
                    label: labels(copy, s.index),
                    sphere: place.apply_sphere(&s.sphere()),
                });
            }
            for v in &p.vertices {
                vertex_points.push(place.apply_point(&v.point()));
            }
        }
        assert_eq!(moves.len(), sides.len(), "one move per side");
        PairedDomain { placements, sides, moves, trivial_gens, vertex_points }
    }

    pub fn copies(&self) -> usize {
        self.placements.len()
    }

    pub fn ridge_label(&self, a: usize, b: usize) -> String {
        let (x, y) = (a.min(b), a.max(b));
        format!("{}∩{}", self.sides[x].label, self.sides[y].label)
    }

    pub fn vertex_point(&self, v: usize) -> &BoundaryPoint {
        &self.vertex_points[v]
    }

    fn side_in_copy(&self, copy: usize, s: &GenSphere) -> Option<usize> {
        (copy * 24..copy * 24 + 24).find(|&i| &self.sides[i].sphere == s)
    }

    fn is_ridge(&self, a: usize, b: usize) -> bool {
        let (sa, sb) = (&self.sides[a], &self.sides[b]);
        sa.copy == sb.copy && polytope().ridge_of(sa.base, sb.base).is_some()
    }

    /// Check that every move carries its side sphere onto its target's sphere
    /// and that moves come in inverse pairs.
    pub fn check_moves(&self) -> Result<(), CensusError> {
        for (i, mv) in self.moves.iter().enumerate() {
            let img = mv.word.apply_sphere(&self.sides[i].sphere);
            if img != self.sides[mv.target].sphere {
                return Err(CensusError::PoincareViolation(format!(
                    "{} does not carry {} onto {}",
                    mv.label(),
                    self.sides[i].label,
                    self.sides[mv.target].label
                )));
            }
            let back = &self.moves[mv.target];
            if back.target != i || back.gen != mv.gen || back.inverse == mv.inverse {
                return Err(CensusError::PoincareViolation(format!(
                    "moves of {} and {} are not mutually inverse",
                    self.sides[i].label, self.sides[mv.target].label
                )));
            }
        }
        Ok(())
    }

    /// One step of the ridge walk from ridge (active, passive).
    fn step(&self, active: usize, passive: usize) -> Result<(usize, usize), CensusError> {
        let mv = &self.moves[active];
        let img = mv.word.apply_sphere(&self.sides[passive].sphere);
        let copy = self.sides[mv.target].copy;
        let u = self.side_in_copy(copy, &img).ok_or_else(|| {
            CensusError::PoincareViolation(format!(
                "{} sends {} to {}, which is not a side",
                mv.label(),
                self.sides[passive].label,
                img
            ))
        })?;
        if !self.is_ridge(mv.target, u) {
            return Err(CensusError::PoincareViolation(format!(
                "{} ∩ {} is not a ridge",
                self.sides[mv.target].label, self.sides[u].label
            )));
        }
        Ok((u, mv.target))
    }

    /// Trace one ridge cycle starting at (active, passive).
    pub fn trace_cycle(&self, active: usize, passive: usize) -> Result<RidgeCycle, CensusError> {
        let limit = 4 * self.sides.len() * 8;
        let mut steps = Vec::new();
        let (mut a, mut b) = (active, passive);
        loop {
            let mv = &self.moves[a];
            steps.push(CycleStep { active: a, passive: b, gen: mv.gen.clone(), inverse: mv.inverse });
            (a, b) = self.step(a, b)?;
            if (a, b) == (active, passive) {
                break;
            }
            if steps.len() > limit {
                return Err(CensusError::PoincareViolation(format!(
                    "ridge cycle through {} does not close",
                    self.ridge_label(active, passive)
                )));
            }
        }
        let mut moebius = MoebiusWord::identity();
        let mut letters = Vec::new();
        for s in &steps {
            moebius = self.moves[s.active].word.compose(&moebius);
            if !self.trivial_gens.contains(&s.gen) {
                letters.push(Letter::new(s.gen.clone(), s.inverse));
            }
        }
        letters.reverse();
        Ok(RidgeCycle { steps, relator: Word::from_letters(letters), moebius })
    }

    /// Trace cycles from the given starts in order, skipping starts whose
    /// ridge is already covered, then from any remaining ridge.
    pub fn trace_cycles(&self, starts: &[(usize, usize)]) -> Result<Vec<RidgeCycle>, CensusError> {
        let p = polytope();
        let nr = p.ridges.len();
        let ridge_id = |a: usize, b: usize| -> usize {
            let copy = self.sides[a].copy;
            copy * nr + p.ridge_of(self.sides[a].base, self.sides[b].base).expect("ridge")
        };
        let mut seen = vec![false; nr * self.copies()];
        let mut all_starts: Vec<(usize, usize)> = starts.to_vec();
        for copy in 0..self.copies() {
            for r in &p.ridges {
                all_starts.push((copy * 24 + r.sides.0, copy * 24 + r.sides.1));
            }
        }
        let mut out = Vec::new();
        for (a, b) in all_starts {
            if seen[ridge_id(a, b)] {
                continue;
            }
            let cyc = self.trace_cycle(a, b)?;
            if let Some(s) = cyc.steps.iter().find(|s| seen[ridge_id(s.active, s.passive)]) {
                return Err(CensusError::PoincareViolation(format!(
                    "ridge {} lies on two cycles",
                    self.ridge_label(s.active, s.passive)
                )));
            }
            for s in &cyc.steps {
                seen[ridge_id(s.active, s.passive)] = true;
            }
            out.push(cyc);
        }
        Ok(out)
    }

    /// Orbits of edge faces under the moves, each sorted, ordered by least member.
    pub fn edge_classes(&self) -> Result<Vec<Vec<usize>>, CensusError> {
        let p = polytope();
        let ne = p.edge_faces.len();
        let total = ne * self.copies();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for copy in 0..self.copies() {
            for e in &p.edge_faces {
                let id = copy * ne + e.index;
                let pts: Vec<&BoundaryPoint> = e.vertices.iter().map(|&v| &self.vertex_points[copy * 24 + v]).collect();
                for &s in &e.sides {
                    let side = copy * 24 + s;
                    let mv = &self.moves[side];
                    let tcopy = self.sides[mv.target].copy;
                    let imgs: Vec<BoundaryPoint> = pts.iter().map(|q| mv.word.apply_point(q)).collect();
                    let found = p.edge_faces.iter().find(|f| {
                        let fp: Vec<&BoundaryPoint> =
                            f.vertices.iter().map(|&v| &self.vertex_points[tcopy * 24 + v]).collect();
                        (fp[0] == &imgs[0] && fp[1] == &imgs[1]) || (fp[0] == &imgs[1] && fp[1] == &imgs[0])
                    });
                    let Some(f) = found else {
                        return Err(CensusError::PoincareViolation(format!(
                            "{} does not carry an edge of {} to an edge",
                            mv.label(),
                            self.sides[side].label
                        )));
                    };
                    // the image edge must lie on the image sides
                    let img_sides: Vec<usize> = e
                        .sides
                        .iter()
                        .map(|&t| {
                            let sph = mv.word.apply_sphere(&self.sides[copy * 24 + t].sphere);
                            self.side_in_copy(tcopy, &sph).map(|i| self.sides[i].base)
                        })
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| CensusError::PoincareViolation("edge sides leave the domain".into()))?;
                    let mut sorted = img_sides.clone();
                    sorted.sort();
                    if sorted != f.sides {
                        return Err(CensusError::PoincareViolation(format!(
                            "{} maps edge sides inconsistently",
                            mv.label()
                        )));
                    }
                    let a = find(&mut parent, id);
                    let b = find(&mut parent, tcopy * ne + f.index);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..total {
            let r = find(&mut parent, x);
            classes.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = classes.into_values().collect();
        out.sort_by_key(|c| c[0]);
        Ok(out)
    }
}

fn base_domain(pairings: &[SidePairing]) -> Result<PairedDomain, CensusError> {
    let p = polytope();
    let mut moves: Vec<Option<SideMove>> = vec![None; 24];
    for sp in pairings {
        for (side, mv) in [
            (
                sp.source,
                SideMove { gen: sp.letter.to_string(), inverse: false, target: sp.target, word: sp.word.clone() },
            ),
            (
                sp.target,
                SideMove { gen: sp.letter.to_string(), inverse: true, target: sp.source, word: sp.word.inverse() },
            ),
        ] {
            if moves[side].is_some() {
                return Err(CensusError::InvalidCode(format!("side {} is paired twice", p.sides[side].label)));
            }
            moves[side] = Some(mv);
        }
    }
    let moves = moves
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| CensusError::InvalidCode(format!("side {} is unpaired", p.sides[i].label))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PairedDomain::new(vec![MoebiusWord::identity()], |_, s| p.sides[s].label.to_string(), moves, Vec::new()))
}

/// Canonical starts: ridges in table order, lesser side active.
fn base_starts(p: &Polytope) -> Vec<(usize, usize)> {
    p.ridges.iter().map(|r| r.sides).collect()
}

pub fn ridge_cycles(pairings: &[SidePairing]) -> Result<Vec<RidgeCycle>, CensusError> {
    let d = base_domain(pairings)?;
    d.check_moves()?;
    d.trace_cycles(&base_starts(polytope()))
}

pub fn edge_classes(pairings: &[SidePairing]) -> Result<Vec<Vec<usize>>, CensusError> {
    let d = base_domain(pairings)?;
    d.check_moves()?;
    d.edge_classes()
}

/// Generators a..l with one relator per ridge cycle.
pub fn presentation(pairings: &[SidePairing], cycles: &[RidgeCycle]) -> Presentation {
    let mut gens: Vec<String> = pairings.iter().map(|sp| sp.letter.to_string()).collect();
    gens.sort();
    Presentation::new(gens, cycles.iter().map(|c| c.relator.clone()).collect()).expect("relators use pairing letters")
}

/// Everything derived from one pairing code.
#[derive(Debug, Clone)]
pub struct Census {
    pub code: String,
    pub kvecs: [KVec; 6],
    pub pairings: Vec<SidePairing>,
    pub eps: OrientationChar,
    pub domain: PairedDomain,
    pub cycles: Vec<RidgeCycle>,
    pub edge_classes: Vec<Vec<usize>>,
}

impl Census {
    pub fn from_code(code: &str) -> Result<Census, CensusError> {
        let kvecs = parse_code(code)?;
        let pairings = build_pairings(&kvecs);
        Census::from_pairings(code.trim().to_string(), kvecs, pairings)
    }

    pub fn from_pairings(code: String, kvecs: [KVec; 6], pairings: Vec<SidePairing>) -> Result<Census, CensusError> {
        let domain = base_domain(&pairings)?;
        domain.check_moves()?;
        let cycles = domain.trace_cycles(&base_starts(polytope()))?;
        for (i, c) in cycles.iter().enumerate() {
            if !c.moebius.is_identity() {
                return Err(CensusError::PoincareViolation(format!("cycle {} is not the identity", i + 1)));
            }
        }
        let edge_classes = domain.edge_classes()?;
        let eps = orientation_character(&pairings);
        Ok(Census { code, kvecs, pairings, eps, domain, cycles, edge_classes })
    }

    pub fn presentation(&self) -> Presentation {
        presentation(&self.pairings, &self.cycles)
    }

    pub fn pairing(&self, letter: char) -> Option<&SidePairing> {
        self.pairings.iter().find(|p| p.letter == letter)
    }

    /// The isometry of a word in the pairing letters (left action).
    pub fn word_moebius(&self, w: &Word) -> Option<MoebiusWord> {
        let mut m = MoebiusWord::identity();
        for l in w.letters() {
            let c = l.gen.chars().next()?;
            let sp = self.pairing(c)?;
            let x = if l.inverse { sp.word.inverse() } else { sp.word.clone() };
            m = m.compose(&x);
        }
        Some(m)
    }

    pub fn cycle_row(&self, c: &RidgeCycle) -> String {
        cycle_row(&self.domain, c)
    }
}

/// One table row: `A∩C -a-> A'∩D -d-> ... -> A∩C`.
pub fn cycle_row(d: &PairedDomain, c: &RidgeCycle) -> String {
    let mut s = String::new();
    for st in &c.steps {
        s.push_str(&d.ridge_label(st.active, st.passive));
        let lab = if st.inverse { format!("{}^-1", st.gen) } else { st.gen.clone() };
        s.push_str(&format!(" -{lab}-> "));
    }
    let first = &c.steps[0];
    s.push_str(&d.ridge_label(first.active, first.passive));
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub code: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub cycle_lengths: Vec<usize>,
    pub error: Option<CensusError>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "code {}: {}", self.code, if self.passed { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

fn check(name: &str, res: Result<String, CensusError>, checks: &mut Vec<Check>) -> Option<CensusError> {
    match res {
        Ok(detail) => {
            checks.push(Check { name: name.into(), passed: true, detail });
            None
        }
        Err(e) => {
            checks.push(Check { name: name.into(), passed: false, detail: e.to_string() });
            Some(e)
        }
    }
}

/// Run every Poincaré check on explicit pairings.
pub fn validate_pairings(code: &str, pairings: &[SidePairing]) -> ValidationReport {
    let mut checks = Vec::new();
    let mut cycle_lengths = Vec::new();
    let fail = |checks: Vec<Check>, cycle_lengths: Vec<usize>, e: CensusError| ValidationReport {
        code: code.to_string(),
        passed: false,
        checks,
        cycle_lengths,
        error: Some(e),
    };
    let targets = pairings.iter().try_for_each(|sp| {
        let c = polytope().sides[sp.source].center;
        let img: [i8; 4] = std::array::from_fn(|j| c[j] * sp.kpart[j]);
        if polytope().sides[sp.target].center != img {
            return Err(CensusError::PoincareViolation(format!(
                "{}: target is not k applied to the source",
                sp.letter
            )));
        }
        Ok(())
    });
    if let Some(e) = check("pairing targets", targets.map(|_| format!("{} pairings", pairings.len())), &mut checks) {
        return fail(checks, cycle_lengths, e);
    }
    let domain = match base_domain(pairings).and_then(|d| d.check_moves().map(|_| d)) {
        Ok(d) => {
            checks.push(Check {
                name: "pairing spheres".into(),
                passed: true,
                detail: "every word carries source to target".into(),
            });
            d
        }
        Err(e) => {
            checks.push(Check { name: "pairing spheres".into(), passed: false, detail: e.to_string() });
            return fail(checks, cycle_lengths, e);
        }
    };
    let cycles = match domain.trace_cycles(&base_starts(polytope())) {
        Ok(c) => c,
        Err(e) => {
            checks.push(Check { name: "ridge cycles".into(), passed: false, detail: e.to_string() });
            return fail(checks, cycle_lengths, e);
        }
    };
    cycle_lengths = cycles.iter().map(RidgeCycle::len).collect();
    let covered: usize = cycle_lengths.iter().sum();
    checks.push(Check {
        name: "ridge cycles".into(),
        passed: true,
        detail: format!("{} cycles covering {} ridge visits", cycles.len(), covered),
    });
    let ident = cycles.iter().enumerate().try_for_each(|(i, c)| {
        if c.moebius.is_identity() {
            Ok(())
        } else {
            Err(CensusError::PoincareViolation(format!("cycle {} is not the identity", i + 1)))
        }
    });
    if let Some(e) = check("cycle isometries", ident.map(|_| "all identity".into()), &mut checks) {
        return fail(checks, cycle_lengths, e);
    }
    if let Some(e) = check("edge classes", domain.edge_classes().map(|c| format!("{} classes", c.len())), &mut checks) {
        return fail(checks, cycle_lengths, e);
    }
    ValidationReport { code: code.to_string(), passed: true, checks, cycle_lengths, error: None }
}

pub fn validate(code: &str) -> ValidationReport {
    match parse_code(code) {
        Ok(ks) => validate_pairings(code, &build_pairings(&ks)),
        Err(e) => ValidationReport {
            code: code.to_string(),
            passed: false,
            checks: vec![Check { name: "parse".into(), passed: false, detail: e.to_string() }],
            cycle_lengths: Vec::new(),
            error: Some(e),
        },
    }
}
