//! End-to-end acceptance checks for code 146928, one line per criterion.
//! Runs without the libtest harness so the summary is always printed.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rtkirby::census::{parse_code, Census};
use rtkirby::cover::{build_double_cover, DoubleCover};
use rtkirby::cusps::{classify_in_class, cusp_reports, default_fillings, vertex_classes};
use rtkirby::groups::{
    abelianization, add_relations, cyclic_reduce, free_reduce, rs_double_cover, smith_normal_form, tietze_simplify,
    todd_coxeter, CosetResult, Letter, OrientationChar, Presentation, Word, DEFAULT_MAX_COSETS,
};
use rtkirby::kirby::{
    base_fillings, build_base_diagram, build_cover_diagram, export_json, export_svg, import_json, invariant_report,
    lift_fillings, simplification_trace, Framing, KirbyDiagram, Origin, PanelTag, Script, Stage,
};
use rtkirby::moebius::ParabolicClass;
use rtkirby::polytope24::polytope;

const CODE: &str = "146928";

/// Rows of the published tables whose printed final ridge is not the first.
const BASE_TERMINUS_TYPOS: [usize; 2] = [20, 24];
const COVER_TERMINUS_TYPOS: [usize; 1] = [28];
/// Rows of the published cover table with a wrong generator exponent.
const COVER_STEP_TYPOS: [usize; 2] = [44, 46];

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn golden(name: &str) -> Vec<String> {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{path}: {e}"))
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(str::to_string)
        .collect()
}

// ---- cycle tables ----

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Step {
    ridge: String,
    letter: String,
}

#[derive(Debug, Clone)]
struct Row {
    steps: Vec<Step>,
    terminus: String,
}

fn normalize_ridge(r: &str) -> String {
    let mut sides: Vec<&str> = r.split('∩').map(str::trim).collect();
    sides.sort();
    sides.join("∩")
}

fn parse_row(text: &str) -> Row {
    let segs: Vec<&str> = text.split("-> ").collect();
    let steps = segs[..segs.len() - 1]
        .iter()
        .map(|s| {
            let (ridge, letter) = s.trim_end().rsplit_once(" -").expect("step has a generator");
            Step { ridge: normalize_ridge(ridge), letter: letter.to_string() }
        })
        .collect();
    Row { steps, terminus: normalize_ridge(segs[segs.len() - 1]) }
}

fn invert_letter(l: &str) -> String {
    match l.strip_suffix("^-1") {
        Some(g) => g.to_string(),
        None => format!("{l}^-1"),
    }
}

/// Least form over all rotations and reversals of the closed cycle.
fn canonical(steps: &[Step]) -> Vec<Step> {
    let n = steps.len();
    let reversed: Vec<Step> = (0..n)
        .map(|i| {
            let ridge = steps[(n - i) % n].ridge.clone();
            let letter = invert_letter(&steps[(2 * n - i - 1) % n].letter);
            Step { ridge, letter }
        })
        .collect();
    let mut forms = Vec::new();
    for seq in [steps, &reversed[..]] {
        for k in 0..n {
            forms.push(seq[k..].iter().chain(&seq[..k]).cloned().collect::<Vec<_>>());
        }
    }
    forms.into_iter().min().expect("nonempty")
}

struct TableCheck {
    literal: BTreeSet<usize>,
    step_mismatch: BTreeSet<usize>,
    terminus_mismatch: BTreeSet<usize>,
}

fn compare_table(rows: &[String], computed: &[String]) -> TableCheck {
    let comp: Vec<Row> = computed.iter().map(|r| parse_row(r)).collect();
    let forms: BTreeSet<Vec<Step>> = comp.iter().map(|r| canonical(&r.steps)).collect();
    let mut out =
        TableCheck { literal: BTreeSet::new(), step_mismatch: BTreeSet::new(), terminus_mismatch: BTreeSet::new() };
    for line in rows {
        let (num, body) = line.split_once('|').expect("numbered row");
        let num: usize = num.parse().expect("row number");
        let row = parse_row(body);
        if !forms.contains(&canonical(&row.steps)) {
            out.step_mismatch.insert(num);
        } else if row.terminus != row.steps[0].ridge {
            out.terminus_mismatch.insert(num);
        } else {
            out.literal.insert(num);
        }
    }
    out
}

fn golden_word(row: &str) -> Word {
    let (_, body) = row.split_once('|').unwrap();
    let letters = parse_row(body).steps.into_iter().map(|s| match s.letter.strip_suffix("^-1") {
        Some(g) => Letter::neg(g),
        None => Letter::pos(s.letter),
    });
    Word::raw(letters.collect())
}

// ---- criteria ----

fn c1_decoding(c: &Census) -> Outcome {
    let ks = parse_code(CODE).map_err(|e| e.to_string())?;
    let p = polytope();
    let parse_vec = |s: &str| -> [i8; 4] {
        let v: Vec<i8> = s.split(',').map(|x| x.trim_start_matches('+').parse().unwrap()).collect();
        [v[0], v[1], v[2], v[3]]
    };
    let rows = golden("pairings.txt");
    ensure!(rows.len() == 12, "golden table has {} rows", rows.len());
    for (i, row) in rows.iter().enumerate() {
        let f: Vec<&str> = row.split('|').collect();
        let letter = f[0].chars().next().unwrap();
        let sp = c.pairing(letter).ok_or(format!("no pairing {letter}"))?;
        let (src, k, tgt) = (parse_vec(f[1]), parse_vec(f[2]), parse_vec(f[3]));
        ensure!(p.sides[sp.source].center == src, "{letter}: source {:?}, expected {src:?}", p.sides[sp.source].center);
        ensure!(p.sides[sp.target].center == tgt, "{letter}: target {:?}, expected {tgt:?}", p.sides[sp.target].center);
        ensure!(sp.kpart == k, "{letter}: k {:?}, expected {k:?}", sp.kpart);
        ensure!(ks[i / 2] == k, "family {}: decoded k {:?}, expected {k:?}", i / 2, ks[i / 2]);
    }
    Ok("six k-vectors and 12 arrows match".into())
}

fn c2_cycles(c: &Census) -> Outcome {
    ensure!(c.cycles.len() == 24, "{} cycles", c.cycles.len());
    ensure!(c.cycles.iter().all(|cy| cy.len() == 4), "a cycle has length other than 4");
    let computed: Vec<String> = c.cycles.iter().map(|cy| c.cycle_row(cy)).collect();
    let t = compare_table(&golden("base_cycles.txt"), &computed);
    ensure!(t.step_mismatch.is_empty(), "rows {:?} match no computed cycle", t.step_mismatch);
    ensure!(t.literal.contains(&1) && t.literal.contains(&2), "rows 1 and 2 are not literal matches");
    let expected: BTreeSet<usize> = BASE_TERMINUS_TYPOS.into_iter().collect();
    ensure!(
        t.terminus_mismatch == expected,
        "misprinted termini at {:?}, documented {:?}",
        t.terminus_mismatch,
        expected
    );
    Ok(format!("24 cycles of length 4 match; rows {:?} match with a misprinted final ridge", t.terminus_mismatch))
}

fn c3_certificate(c: &Census, cov: &DoubleCover) -> Outcome {
    for (i, cy) in c.cycles.iter().enumerate() {
        let m = c.word_moebius(&cy.relator).ok_or("relator uses an unknown letter")?;
        ensure!(m.is_identity() && cy.moebius.is_identity(), "base relator {} is not the identity", i + 1);
    }
    for (i, cy) in cov.cycles.iter().enumerate() {
        let m = cov.word_moebius(&cy.relator).ok_or("cover relator uses an unknown generator")?;
        ensure!(m.is_identity() && cy.moebius.is_identity(), "cover relator {} is not the identity", i + 1);
    }
    Ok("24 base and 48 cover relators fix all six certificate points".into())
}

fn c4_orientation(c: &Census) -> Outcome {
    for sp in &c.pairings {
        let want = if "efgh".contains(sp.letter) { -1 } else { 1 };
        let got = c.eps.of_gen(&sp.letter.to_string()).map_err(|e| e.to_string())?;
        ensure!(got == want, "eps({}) = {got}", sp.letter);
        ensure!(sp.word.preserves_orientation() == (want == 1), "{} isometry disagrees with eps", sp.letter);
    }
    for cy in &c.cycles {
        ensure!(c.eps.of_word(&cy.relator) == Ok(1), "eps does not kill {}", cy.relator.to_text());
    }
    Ok("e,f,g,h reverse orientation, the rest preserve it; every relator in the kernel".into())
}

fn parse_vertex_set(s: &str) -> BTreeSet<[i8; 4]> {
    let coord = |x: &str| -> Vec<i8> {
        match x {
            "0" => vec![0],
            "1" => vec![2],
            "-1" => vec![-2],
            "1/2" => vec![1],
            "-1/2" => vec![-1],
            "±1/2" => vec![1, -1],
            _ => panic!("bad coordinate {x}"),
        }
    };
    let mut out = BTreeSet::new();
    for v in s.split_whitespace() {
        let cs: Vec<Vec<i8>> = v.trim_matches(|ch| ch == '(' || ch == ')').split(',').map(coord).collect();
        for a in &cs[0] {
            for b in &cs[1] {
                for c in &cs[2] {
                    for d in &cs[3] {
                        out.insert([*a, *b, *c, *d]);
                    }
                }
            }
        }
    }
    out
}

fn c5_cusps(c: &Census) -> Outcome {
    let p = polytope();
    let classes = vertex_classes(c).map_err(|e| e.to_string())?;
    let reports = cusp_reports(c).map_err(|e| e.to_string())?;
    let rows = golden("cusp_classes.txt");
    ensure!(classes.len() == rows.len(), "{} classes, expected {}", classes.len(), rows.len());
    let mut notes = Vec::new();
    for (class, row) in classes.iter().zip(&rows) {
        let (verts, word) = row.split_once('|').unwrap();
        let want = parse_vertex_set(verts);
        let got: BTreeSet<[i8; 4]> = class.vertices.iter().map(|&v| p.vertices[v].doubled).collect();
        ensure!(got == want, "class {} differs from {verts}", class.label());
        let w = Word::parse_tokens(word).map_err(|e| e.to_string())?;
        let (v, kind) = classify_in_class(c, class, &w).map_err(|e| e.to_string())?;
        ensure!(kind == ParabolicClass::Translation, "{word} is {kind:?}");
        if v != class.representative {
            notes.push(format!(
                "{} fixes {} not {}",
                w.to_text(),
                p.vertices[v].label(),
                p.vertices[class.representative].label()
            ));
        }
    }
    let last = &reports[3];
    ensure!(
        last.filling.alternates.iter().any(|t| t.word.to_text() == "j"),
        "j is not an alternate for {}",
        last.vertices
    );
    let labels: Vec<&str> = reports.iter().map(|r| r.invariants.label.as_str()).collect();
    Ok(format!(
        "5 classes, every table word a translation, j alternate to i; types {}; {}",
        labels.concat(),
        notes.join(", ")
    ))
}

fn c6_filling(c: &Census) -> Outcome {
    let fills = default_fillings(c).map_err(|e| e.to_string())?;
    let p = add_relations(&c.presentation(), &fills.base).map_err(|e| e.to_string())?;
    ensure!(
        p.generators.len() == 12 && p.relators.len() == 29,
        "{} gens / {} rels",
        p.generators.len(),
        p.relators.len()
    );
    let order = todd_coxeter(&p, DEFAULT_MAX_COSETS);
    let ab = abelianization(&p);
    ensure!(order == CosetResult::Order(4), "order {order:?}");
    ensure!(ab.rank == 0 && ab.torsion_u64() == vec![2, 2], "H1 = {ab}");
    let s = tietze_simplify(&p, 64);
    ensure!(s.generators.len() <= 3, "simplified to {} generators", s.generators.len());
    ensure!(abelianization(&s) == ab, "simplification changed H1");
    ensure!(todd_coxeter(&s, DEFAULT_MAX_COSETS) == order, "simplification changed the order");
    Ok(format!("order 4, H1 = {ab}; simplified to {} generators: {s}", s.generators.len()))
}

fn c7_double_cover(c: &Census, cov: &DoubleCover) -> Outcome {
    let rs = rs_double_cover(&c.presentation(), &c.eps, "g").map_err(|e| e.to_string())?;
    let geo = cov.presentation();
    ensure!(
        rs.generators.len() == 23 && rs.relators.len() == 48,
        "RS: {} / {}",
        rs.generators.len(),
        rs.relators.len()
    );
    ensure!(
        geo.generators.len() == 23 && geo.relators.len() == 48,
        "domain: {} / {}",
        geo.generators.len(),
        geo.relators.len()
    );
    let (a, b) = (abelianization(&rs), abelianization(&geo));
    ensure!(a == b, "H1 differs: {a} vs {b}");
    let filled = invariant_report(c, Stage::FilledCover, 'g', DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
    ensure!(filled.h1.rank == 0 && filled.h1.torsion_u64() == vec![2], "filled cover H1 = {}", filled.h1);
    ensure!(filled.group_order == CosetResult::Order(2), "filled cover order {:?}", filled.group_order);
    Ok(format!("23 gens / 48 rels both ways, H1 = {a}; filled cover H1 = {}, order 2", filled.h1))
}

fn c8_cover_cycles(cov: &DoubleCover) -> Outcome {
    ensure!(cov.cycles.len() == 48, "{} cycles", cov.cycles.len());
    ensure!(cov.cycles.iter().all(|cy| cy.len() == 4), "a cycle has length other than 4");
    let computed: Vec<String> = cov.cycles.iter().map(|cy| cov.cycle_row(cy)).collect();
    let rows = golden("cover_cycles.txt");
    let t = compare_table(&rows, &computed);
    for r in [1, 2, 25] {
        ensure!(t.literal.contains(&r), "row {r} is not a literal match");
    }
    let steps: BTreeSet<usize> = COVER_STEP_TYPOS.into_iter().collect();
    let termini: BTreeSet<usize> = COVER_TERMINUS_TYPOS.into_iter().collect();
    ensure!(t.step_mismatch == steps, "rows {:?} mismatch, documented {:?}", t.step_mismatch, steps);
    ensure!(t.terminus_mismatch == termini, "termini {:?} misprinted, documented {:?}", t.terminus_mismatch, termini);
    for r in &t.step_mismatch {
        let w = golden_word(&rows[r - 1]);
        let m = cov.word_moebius(&w).ok_or(format!("row {r} uses an unknown generator"))?;
        ensure!(!m.is_identity(), "row {r} as printed is a relator after all");
    }
    Ok(format!(
        "48 cycles of length 4, {} literal; flagged rows {:?} (printed word is not a relation) and {:?} (misprinted final ridge)",
        t.literal.len(),
        t.step_mismatch,
        t.terminus_mismatch
    ))
}

fn c9_euler(c: &Census) -> Outcome {
    let chi = |s| invariant_report(c, s, 'g', DEFAULT_MAX_COSETS).map_err(|e| e.to_string());
    let (base, cover, deg2) = (chi(Stage::Base)?, chi(Stage::Cover)?, chi(Stage::Degree2)?);
    ensure!(base.euler_characteristic == 1, "base χ = {}", base.euler_characteristic);
    ensure!(cover.euler_characteristic == 2 * base.euler_characteristic, "cover χ = {}", cover.euler_characteristic);
    ensure!(deg2.euler_characteristic == 4, "degree-2 χ = {}", deg2.euler_characteristic);
    ensure!(
        deg2.group_order == CosetResult::Order(1) && deg2.h1.is_trivial(),
        "degree-2 cover is not simply connected"
    );
    let x2 = Presentation::from_strs(&["x"], &["xx"]).map_err(|e| e.to_string())?;
    let eps = OrientationChar::new([("x".to_string(), -1)]);
    let univ = rs_double_cover(&x2, &eps, "x").map_err(|e| e.to_string())?;
    ensure!(todd_coxeter(&univ, 16) == CosetResult::Order(1), "double cover of <x|x^2> is not trivial");
    ensure!(deg2.candidate_remark.contains("S²×S²"), "remark missing");
    Ok("χ = 1, 2, 4; the last stage is simply connected (S²×S² recorded as a remark)".into())
}

fn kirby_diagrams(c: &Census, cov: &DoubleCover) -> Result<(KirbyDiagram, KirbyDiagram), String> {
    let fills = default_fillings(c).map_err(|e| e.to_string())?;
    let lifted = lift_fillings(cov, &fills.cover).map_err(|e| e.to_string())?;
    let cover_d = build_cover_diagram(cov, &lifted).map_err(|e| e.to_string())?;
    let base_d = build_base_diagram(c, &base_fillings(&fills.base)).map_err(|e| e.to_string())?;
    Ok((base_d, cover_d))
}

fn c10_kirby(c: &Census, cov: &DoubleCover) -> Outcome {
    let (base_d, d) = kirby_diagrams(c, cov)?;
    ensure!(d.one_handles.len() == 24, "{} 1-handles", d.one_handles.len());
    let kills: Vec<_> = d.two_handles.iter().filter(|h| h.origin == Origin::Killing).collect();
    ensure!(kills.len() == 1, "{} killing handles", kills.len());
    let kill_gen = &kills[0].word.letters()[0].gen;
    let kill_label = d.one_handle_by_gen(kill_gen).map(|h| h.label.clone()).unwrap_or_default();
    ensure!(kills[0].word.len() == 1 && kill_label == "G,G'-", "killing handle runs over {kill_label}");
    let ridge = |d: &KirbyDiagram| -> Vec<PanelTag> {
        d.two_handles.iter().filter(|h| matches!(h.origin, Origin::Ridge { .. })).map(|h| h.panel).collect()
    };
    let cover_ridge = ridge(&d);
    ensure!(cover_ridge.len() == 48, "{} ridge handles", cover_ridge.len());
    let fills: Vec<_> = d.two_handles.iter().filter(|h| matches!(h.origin, Origin::Filling { .. })).collect();
    ensure!(fills.len() == 5, "{} filling handles", fills.len());
    ensure!(fills.iter().all(|h| h.framing == Framing::Integer(0)), "a filling handle is not 0-framed");
    let off = |tags: &[PanelTag]| tags.iter().filter(|t| **t == PanelTag::OffPlane).count();
    ensure!(off(&cover_ridge) == 12, "cover OFF count {}", off(&cover_ridge));
    ensure!(off(&ridge(&base_d)) == 6, "base OFF count {}", off(&ridge(&base_d)));
    let doc = export_json(&d);
    let back = import_json(&doc).map_err(|e| e.to_string())?;
    ensure!(export_json(&back) == doc, "json does not round-trip");
    for t in PanelTag::ALL {
        ensure!(export_svg(&d, t) == export_svg(&back, t), "svg for {t} is not deterministic");
    }
    Ok(format!(
        "24 1-handles, kill over G,G'-, 48 ridge and 5 zero-framed filling handles; OFF ridge handles 12 (base 6); handles {:?}",
        d.handle_counts()
    ))
}

fn c11_trace(c: &Census, cov: &DoubleCover) -> Outcome {
    let script = Script::shipped("m35-cover-fill").map_err(|e| e.to_string())?;
    ensure!(script.code == CODE, "script is for {}", script.code);
    let (_, d) = kirby_diagrams(c, cov)?;
    let r = simplification_trace(&d, &script.steps).map_err(|e| e.to_string())?;
    ensure!(r.diagram.trace.iter().all(|e| e.h1 == "Z2"), "an intermediate state has H1 other than Z2");
    let p = &r.presentation;
    ensure!(p.generators.len() == 1 && p.relators.len() == 1, "ends at {p}");
    let rel = cyclic_reduce(&p.relators[0]);
    ensure!(rel.len() == 2 && rel.exponent_sums().values().all(|e| e.abs() == 2), "relator {}", rel.to_text());
    Ok(format!("{} moves end at <x | x^2> ({p}), handles {:?}", r.diagram.trace.len(), r.diagram.handle_counts()))
}

fn c12_edges(c: &Census) -> Outcome {
    let p = polytope();
    // union-find over edge faces along the pairings, by endpoints
    let mut parent: Vec<usize> = (0..p.edge_faces.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for sp in &c.pairings {
        for e in &p.edge_faces {
            if !e.sides.contains(&sp.source) {
                continue;
            }
            let img: Vec<usize> = e
                .vertices
                .iter()
                .map(|&v| {
                    p.vertex_of_point(&sp.word.apply_point(&p.vertices[v].point())).expect("vertex maps to vertex")
                })
                .collect();
            let f = p.edge_of_vertices(img[0], img[1]).ok_or("image of an edge face is not an edge face")?;
            let (a, b) = (find(&mut parent, e.index), find(&mut parent, f));
            parent[a] = b;
        }
    }
    let oracle: BTreeSet<usize> = (0..p.edge_faces.len()).map(|i| find(&mut parent, i)).collect();
    let classes = &c.edge_classes;
    let mut seen = BTreeMap::new();
    for (i, cl) in classes.iter().enumerate() {
        for &e in cl {
            ensure!(seen.insert(e, i).is_none(), "edge face {e} in two classes");
        }
    }
    ensure!(seen.len() == 96, "classes cover {} edge faces", seen.len());
    ensure!(classes.len() == oracle.len(), "{} classes, oracle has {}", classes.len(), oracle.len());
    for cl in classes {
        let roots: BTreeSet<usize> = cl.iter().map(|&e| find(&mut parent, e)).collect();
        ensure!(roots.len() == 1, "a class straddles oracle orbits");
    }
    let chi = 1 - c.pairings.len() as i64 + c.cycles.len() as i64 - classes.len() as i64;
    ensure!(classes.len() == 12 && chi == 1, "χ = {chi}");
    Ok("12 orbits partition 96 edge faces; χ = 1 - 12 + 24 - 12 = 1".into())
}

/// Smith invariants from gcds of k×k minors.
fn determinantal_invariants(m: &[Vec<i64>]) -> Vec<BigInt> {
    fn det(m: &[Vec<i128>]) -> i128 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }
    let (rows, cols) = (m.len(), m[0].len());
    let mut d_prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                g = g.gcd(&BigInt::from(det(&sub)));
            }
        }
        if g.is_zero() {
            out.resize(rows.min(cols), BigInt::zero());
            break;
        }
        out.push(&g / &d_prev);
        d_prev = g;
    }
    out
}

fn random_word(rng: &mut StdRng, gens: &[String], len: usize) -> Word {
    Word::raw((0..len).map(|_| Letter::new(gens[rng.gen_range(0..gens.len())].clone(), rng.gen_bool(0.5))).collect())
}

fn c13_toolkit() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x2424);
    for i in 0..200 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let m: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let big: Vec<Vec<BigInt>> = m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let snf = smith_normal_form(&big);
        ensure!(snf == determinantal_invariants(&m), "matrix {i} {m:?}: {snf:?}");
        ensure!(
            snf.windows(2).all(|w| w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero()),
            "chain broken for {m:?}"
        );
        ensure!(snf.iter().all(|d| !d.is_negative()), "negative invariant for {m:?}");
    }
    for i in 0..50 {
        let n = rng.gen_range(1..=4);
        let gens: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
        let rels: Vec<Word> = (0..rng.gen_range(0..=4))
            .map(|_| {
                let len = rng.gen_range(1..=8);
                random_word(&mut rng, &gens, len)
            })
            .collect();
        let p = Presentation::new(gens.clone(), rels).map_err(|e| e.to_string())?;
        let s = tietze_simplify(&p, 32);
        ensure!(abelianization(&s) == abelianization(&p), "presentation {i} ({p}) changed H1");
    }
    let gens: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    for _ in 0..200 {
        let len = rng.gen_range(0..=12);
        let w = random_word(&mut rng, &gens, len);
        let once = free_reduce(&w);
        ensure!(free_reduce(&once) == once, "free_reduce not idempotent on {}", w.to_text());
    }
    Ok("200 SNF checks against determinantal divisors, 50 Tietze runs, free_reduce idempotent".into())
}

fn main() -> ExitCode {
    let census = Census::from_code(CODE).expect("code 146928 is valid");
    let cover = build_double_cover(&census, 'g').expect("double cover builds");
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("code decoding", Box::new(|| c1_decoding(&census))),
        ("ridge cycles", Box::new(|| c2_cycles(&census))),
        ("certificate", Box::new(|| c3_certificate(&census, &cover))),
        ("orientation", Box::new(|| c4_orientation(&census))),
        ("cusps", Box::new(|| c5_cusps(&census))),
        ("filling", Box::new(|| c6_filling(&census))),
        ("double cover", Box::new(|| c7_double_cover(&census, &cover))),
        ("cover cycles", Box::new(|| c8_cover_cycles(&cover))),
        ("euler bookkeeping", Box::new(|| c9_euler(&census))),
        ("kirby structure", Box::new(|| c10_kirby(&census, &cover))),
        ("trace", Box::new(|| c11_trace(&census, &cover))),
        ("edge classes", Box::new(|| c12_edges(&census))),
        ("toolkit properties", Box::new(c13_toolkit)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
