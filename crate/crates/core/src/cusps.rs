//! Cusps: orbits of ideal vertices, their stabilizers, translations to fill
//! along and the flat 3-manifold type of each cross-section.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::Census;
use crate::exact::Rat;
use crate::groups::{abelianization, AbelianInvariants, Letter, Presentation, Word};
use crate::moebius::{affine_part, BoundaryPoint, MoebiusError, MoebiusWord, ParabolicClass};
use crate::polytope24::polytope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CuspError {
    #[error("pairing {letter} sends vertex {vertex} off the vertex set")]
    PoincareViolation { letter: char, vertex: String },
    #[error("loop word {0} moves its base vertex")]
    Inconsistent(String),
    #[error("word {0} uses a letter that is not a pairing")]
    UnknownLetter(String),
    #[error("no vertex class contains {0}")]
    UnknownVertex(String),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

/// An edge of the vertex graph: `letter` carries `from` to `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexEdge {
    pub from: usize,
    pub letter: char,
    pub to: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CuspClass {
    pub vertices: Vec<usize>,
    pub representative: usize,
    /// `tree_words[v]` maps `v` to the representative.
    pub tree_words: BTreeMap<usize, Word>,
    /// Edges inside the class; those not in the spanning tree give loops.
    pub edges: Vec<VertexEdge>,
    pub tree_edges: BTreeSet<usize>,
}

impl CuspClass {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Vertex set written as a list of coordinates.
    pub fn label(&self) -> String {
        let p = polytope();
        let vs: Vec<String> = self.vertices.iter().map(|&v| p.vertices[v].label()).collect();
        format!("{{{}}}", vs.join(", "))
    }

    pub fn representative_point(&self) -> BoundaryPoint {
        polytope().vertices[self.representative].point()
    }

    fn loop_word(&self, e: &VertexEdge) -> Word {
        let x = Word::gen(e.letter.to_string());
        self.tree_words[&e.to].mul(&x).mul(&self.tree_words[&e.from].inverse())
    }
}

fn vertex_edges(census: &Census) -> Result<Vec<VertexEdge>, CuspError> {
    let p = polytope();
    let mut out = Vec::new();
    for sp in &census.pairings {
        for &v in &p.side_vertices[sp.source] {
            let img = sp.word.apply_point(&p.vertices[v].point());
            let to = p
                .vertex_of_point(&img)
                .ok_or_else(|| CuspError::PoincareViolation { letter: sp.letter, vertex: p.vertices[v].label() })?;
            out.push(VertexEdge { from: v, letter: sp.letter, to });
        }
    }
    Ok(out)
}

/// Connected components of the vertex graph, with BFS spanning trees rooted
/// at the least vertex of each class.
pub fn vertex_classes(census: &Census) -> Result<Vec<CuspClass>, CuspError> {
    let edges = vertex_edges(census)?;
    let n = polytope().vertices.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        adj[e.from].push(i);
        if e.to != e.from {
            adj[e.to].push(i);
        }
    }
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut words = BTreeMap::from([(root, Word::empty())]);
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &i in &adj[v] {
                let e = &edges[i];
                let x = Word::gen(e.letter.to_string());
                let (w, word) =
                    if e.from == v { (e.to, words[&v].mul(&x.inverse())) } else { (e.from, words[&v].mul(&x)) };
                if !seen[w] {
                    seen[w] = true;
                    words.insert(w, word);
                    tree.insert(i);
                    queue.push_back(w);
                }
            }
        }
        let vertices: Vec<usize> = words.keys().copied().collect();
        // re-index class edges and tree membership
        let mut class_edges = Vec::new();
        let mut class_tree = BTreeSet::new();
        for (i, e) in edges.iter().enumerate() {
            if words.contains_key(&e.from) {
                if tree.contains(&i) {
                    class_tree.insert(class_edges.len());
                }
                class_edges.push(e.clone());
            }
        }
        let class =
            CuspClass { vertices, representative: root, tree_words: words, edges: class_edges, tree_edges: class_tree };
        let rep = class.representative_point();
        for (&v, w) in &class.tree_words {
            let m = census.word_moebius(w).expect("tree words use pairing letters");
            if m.apply_point(&polytope().vertices[v].point()) != rep {
                return Err(CuspError::Inconsistent(w.to_text()));
            }
        }
        classes.push(class);
    }
    Ok(classes)
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizerGen {
    /// Name used in the stabilizer presentation, `x@v` for the loop through
    /// the edge leaving vertex `v` by letter `x`.
    pub name: String,
    pub word: Word,
    pub eps: i8,
    pub class: ParabolicClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct CuspStabilizer {
    pub generators: Vec<StabilizerGen>,
    /// Presentation of the cross-section group on the loop generators, with
    /// one relator per (ridge cycle, vertex) orbit.
    pub presentation: Presentation,
    #[serde(skip)]
    linear_parts: Vec<[[Rat; 3]; 3]>,
}

fn edge_name(e: &VertexEdge) -> String {
    format!("{}@{}", e.letter, e.from)
}

pub fn stabilizer_generators(census: &Census, class: &CuspClass) -> Result<CuspStabilizer, CuspError> {
    let rep = class.representative_point();
    let mut generators = Vec::new();
    let mut linear_parts = Vec::new();
    for (i, e) in class.edges.iter().enumerate() {
        if class.tree_edges.contains(&i) {
            continue;
        }
        let word = class.loop_word(e);
        let m = census.word_moebius(&word).expect("loop words use pairing letters");
        if m.apply_point(&rep) != rep {
            return Err(CuspError::Inconsistent(word.to_text()));
        }
        let aff = affine_part(&m, &rep)?;
        let eps = census.eps.of_word(&word).expect("pairing letters have a character");
        generators.push(StabilizerGen { name: edge_name(e), class: aff.classify(), word, eps });
        linear_parts.push(aff.linear);
    }

    // follow each vertex of the class around the ridge cycles
    let p = polytope();
    let edge_index: HashMap<(usize, char), usize> =
        class.edges.iter().enumerate().map(|(i, e)| ((e.from, e.letter), i)).collect();
    let mut relators = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for cycle in &census.cycles {
        for step0 in 0..cycle.steps.len() {
            let st = &cycle.steps[step0];
            let ridge = p.ridge_of(st.active, st.passive).expect("cycle steps are ridges");
            for &v0 in &p.ridges[ridge].vertices {
                if !class.contains(v0) || done.contains(&(ridge, v0)) {
                    continue;
                }
                let mut letters = Vec::new();
                let mut v = v0;
                for k in 0..cycle.steps.len() {
                    let s = &cycle.steps[(step0 + k) % cycle.steps.len()];
                    let r = p.ridge_of(s.active, s.passive).expect("cycle steps are ridges");
                    done.insert((r, v));
                    let mv = &census.domain.moves[s.active];
                    let img = mv.word.apply_point(&p.vertices[v].point());
                    let w = p.vertex_of_point(&img).expect("pairings permute vertices");
                    let letter = mv.gen.chars().next().expect("single letter generator");
                    let (i, inverse) =
                        if mv.inverse { (edge_index[&(w, letter)], true) } else { (edge_index[&(v, letter)], false) };
                    if !class.tree_edges.contains(&i) {
                        letters.push(Letter::new(edge_name(&class.edges[i]), inverse));
                    }
                    v = w;
                }
                if v != v0 {
                    return Err(CuspError::Inconsistent(format!("vertex {} around cycle", p.vertices[v0].label())));
                }
                letters.reverse();
                relators.push(Word::from_letters(letters));
            }
        }
    }
    let presentation = Presentation::new(generators.iter().map(|g| g.name.clone()).collect(), relators)
        .expect("relators use loop generators");
    Ok(CuspStabilizer { generators, presentation, linear_parts })
}

#[derive(Debug, Clone, Serialize)]
pub struct CuspInvariants {
    pub orientable: bool,
    pub holonomy_order: usize,
    pub h1: AbelianInvariants,
    /// Wolf name of the flat manifold with these invariants, or
    /// `Ambiguous` when the lookup table cannot tell.
    pub label: String,
}

fn mat_mul(a: &[[Rat; 3]; 3], b: &[[Rat; 3]; 3]) -> [[Rat; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(Rat::zero(), |s, k| s + &a[i][k] * &b[k][j])))
}

/// Order of the group generated by the given linear parts.
fn holonomy_order(gens: &[[[Rat; 3]; 3]]) -> usize {
    let id: [[Rat; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() }));
    let mut seen = BTreeSet::from([format!("{id:?}")]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let n = mat_mul(g, &m);
            if seen.insert(format!("{n:?}")) {
                queue.push_back(n);
            }
            // holonomy of a flat 3-manifold has order at most 12
            if seen.len() > 48 {
                return seen.len();
            }
        }
    }
    seen.len()
}

pub fn cusp_invariants(stab: &CuspStabilizer) -> CuspInvariants {
    let orientable = stab.generators.iter().all(|g| g.eps == 1);
    let holonomy_order = holonomy_order(&stab.linear_parts);
    let h1 = abelianization(&stab.presentation);
    let label = wolf_label(orientable, holonomy_order, &h1);
    CuspInvariants { orientable, holonomy_order, h1, label }
}

#[derive(Debug, Clone, Deserialize)]
struct FlatRecord {
    name: String,
    orientable: bool,
    holonomy_order: usize,
    generators: Vec<String>,
    relators: Vec<String>,
}

/// A closed flat 3-manifold with the invariants computed from its group.
#[derive(Debug, Clone, Serialize)]
pub struct FlatManifold {
    pub name: String,
    pub orientable: bool,
    pub holonomy_order: usize,
    pub presentation: Presentation,
    pub h1: AbelianInvariants,
}

/// The ten closed flat 3-manifolds, invariants computed from shipped group
/// presentations.
pub fn flat_manifolds() -> &'static [FlatManifold] {
    static T: OnceLock<Vec<FlatManifold>> = OnceLock::new();
    T.get_or_init(|| {
        let raw: Vec<FlatRecord> =
            serde_json::from_str(include_str!("../data/flat_manifolds.json")).expect("flat manifold table parses");
        raw.into_iter()
            .map(|r| {
                let gens: Vec<&str> = r.generators.iter().map(String::as_str).collect();
                let rels: Vec<&str> = r.relators.iter().map(String::as_str).collect();
                let presentation = Presentation::from_strs(&gens, &rels).expect("flat manifold presentation");
                let h1 = abelianization(&presentation);
                FlatManifold {
                    name: r.name,
                    orientable: r.orientable,
                    holonomy_order: r.holonomy_order,
                    presentation,
                    h1,
                }
            })
            .collect()
    })
}

pub fn wolf_label(orientable: bool, holonomy_order: usize, h1: &AbelianInvariants) -> String {
    let hits: Vec<&FlatManifold> = flat_manifolds()
        .iter()
        .filter(|m| m.orientable == orientable && m.holonomy_order == holonomy_order && &m.h1 == h1)
        .collect();
    match hits.as_slice() {
        [m] => m.name.clone(),
        _ => "Ambiguous".to_string(),
    }
}

/// Classify a base word at a vertex it fixes.
pub fn classify_word_at(census: &Census, w: &Word, v: &BoundaryPoint) -> Result<ParabolicClass, CuspError> {
    let m = census.word_moebius(w).ok_or_else(|| CuspError::UnknownLetter(w.to_text()))?;
    if &m.apply_point(v) != v {
        return Err(CuspError::Inconsistent(w.to_text()));
    }
    Ok(affine_part(&m, v)?.classify())
}

/// Classify a base word at whichever vertex of the class it fixes.
pub fn classify_in_class(census: &Census, class: &CuspClass, w: &Word) -> Result<(usize, ParabolicClass), CuspError> {
    let m = census.word_moebius(w).ok_or_else(|| CuspError::UnknownLetter(w.to_text()))?;
    let p = polytope();
    for &v in &class.vertices {
        let pt = p.vertices[v].point();
        if m.apply_point(&pt) == pt {
            return Ok((v, affine_part(&m, &pt)?.classify()));
        }
    }
    Err(CuspError::Inconsistent(w.to_text()))
}

/// A translation word together with the ideal vertex it fixes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Translation {
    pub word: Word,
    pub vertex: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FillingChoice {
    pub class: usize,
    pub translation: Option<Translation>,
    /// Other translations of the same length at vertices of the class,
    /// inverses of the choice excluded.
    pub alternates: Vec<Translation>,
}

/// Longest translation word the search considers.
pub const MAX_TRANSLATION_LENGTH: usize = 4;

fn all_words(gens: &[String], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in gens {
                for inv in [false, true] {
                    let l = Letter::new(g.clone(), inv);
                    if w.letters().last().is_some_and(|last| last == &l.inv()) {
                        continue;
                    }
                    next.push(Word::raw(w.letters().iter().cloned().chain([l]).collect()));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Reduced words of bounded length with their isometries, for matching
/// `a(v) = b(v)` and forming stabilizer elements `a^-1 b`.
pub struct WordTable {
    words: Vec<(Word, MoebiusWord)>,
    max_len: usize,
}

impl WordTable {
    pub fn new(census: &Census, max_len: usize) -> WordTable {
        let gens: Vec<String> = census.pairings.iter().map(|p| p.letter.to_string()).collect();
        let words = all_words(&gens, max_len.div_ceil(2))
            .into_iter()
            .map(|w| {
                let m = census.word_moebius(&w).expect("pairing letters");
                (w, m)
            })
            .collect();
        WordTable { words, max_len }
    }

    /// All nontrivial reduced words of length at most `max_len` fixing `v`.
    pub fn stabilizer_words(&self, v: &BoundaryPoint) -> BTreeSet<Word> {
        let mut buckets: HashMap<BoundaryPoint, Vec<&Word>> = HashMap::new();
        for (w, m) in &self.words {
            buckets.entry(m.apply_point(v)).or_default().push(w);
        }
        let mut out = BTreeSet::new();
        for ws in buckets.values() {
            for a in ws {
                for b in ws {
                    let w = a.inverse().mul(b);
                    if !w.is_empty() && w.len() <= self.max_len {
                        out.insert(w);
                    }
                }
            }
        }
        out
    }
}

/// Shortest translation fixing some vertex of each class, ties broken by
/// letter order (a < A < b < ...) and then by vertex.
pub fn find_filling_translations(census: &Census, classes: &[CuspClass]) -> Result<Vec<FillingChoice>, CuspError> {
    let table = WordTable::new(census, MAX_TRANSLATION_LENGTH);
    let p = polytope();
    let mut out = Vec::new();
    for (ci, class) in classes.iter().enumerate() {
        let mut found: Vec<Translation> = Vec::new();
        for &v in &class.vertices {
            let pt = p.vertices[v].point();
            for w in table.stabilizer_words(&pt) {
                if classify_word_at(census, &w, &pt)? == ParabolicClass::Translation {
                    found.push(Translation { word: w, vertex: v });
                }
            }
        }
        found.sort_by(|x, y| (x.word.len(), &x.word, x.vertex).cmp(&(y.word.len(), &y.word, y.vertex)));
        let translation = found.first().cloned();
        let alternates = match &translation {
            Some(t) => found
                .iter()
                .filter(|x| x.word.len() == t.word.len() && x.word != t.word && x.word != t.word.inverse())
                .cloned()
                .collect(),
            None => Vec::new(),
        };
        out.push(FillingChoice { class: ci, translation, alternates });
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CuspReport {
    pub class: CuspClass,
    pub vertices: String,
    pub representative: String,
    pub stabilizer: CuspStabilizer,
    pub filling: FillingChoice,
    pub invariants: CuspInvariants,
}

pub fn cusp_reports(census: &Census) -> Result<Vec<CuspReport>, CuspError> {
    let classes = vertex_classes(census)?;
    let fills = find_filling_translations(census, &classes)?;
    let p = polytope();
    classes
        .into_iter()
        .zip(fills)
        .map(|(class, filling)| {
            let stabilizer = stabilizer_generators(census, &class)?;
            let invariants = cusp_invariants(&stabilizer);
            Ok(CuspReport {
                vertices: class.label(),
                representative: p.vertices[class.representative].label(),
                class,
                stabilizer,
                filling,
                invariants,
            })
        })
        .collect()
}

/// Class containing the given vertex.
pub fn class_of_vertex<'a>(classes: &'a [CuspClass], p: &BoundaryPoint) -> Result<&'a CuspClass, CuspError> {
    let v = polytope().vertex_of_point(p).ok_or_else(|| CuspError::UnknownVertex(p.to_string()))?;
    classes.iter().find(|c| c.contains(v)).ok_or_else(|| CuspError::UnknownVertex(p.to_string()))
}

/// Filling words recorded for a code: `base` over the pairing letters and
/// `cover` over the same letters, to be lifted into the double cover.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct FillingTable {
    pub base: Vec<Word>,
    pub cover: Vec<Word>,
}

#[derive(Deserialize)]
struct RawFillings {
    base: Vec<String>,
    cover: Vec<String>,
}

fn parse_words(ws: &[String]) -> Vec<Word> {
    ws.iter().map(|s| Word::parse_tokens(s).expect("shipped filling word parses")).collect()
}

/// Shipped filling words for a code, if any.
pub fn shipped_fillings(code: &str) -> Option<FillingTable> {
    static T: OnceLock<BTreeMap<String, FillingTable>> = OnceLock::new();
    T.get_or_init(|| {
        let raw: BTreeMap<String, RawFillings> =
            serde_json::from_str(include_str!("../data/fillings.json")).expect("filling table parses");
        raw.into_iter()
            .map(|(k, v)| (k, FillingTable { base: parse_words(&v.base), cover: parse_words(&v.cover) }))
            .collect()
    })
    .get(code)
    .cloned()
}

/// Filling words for a code: the shipped table when present, otherwise the
/// translations found by [`find_filling_translations`].
pub fn default_fillings(census: &Census) -> Result<FillingTable, CuspError> {
    if let Some(t) = shipped_fillings(&census.code) {
        return Ok(t);
    }
    let classes = vertex_classes(census)?;
    let words: Vec<Word> = find_filling_translations(census, &classes)?
        .into_iter()
        .filter_map(|f| f.translation.map(|t| t.word))
        .collect();
    Ok(FillingTable { base: words.clone(), cover: words })
}
