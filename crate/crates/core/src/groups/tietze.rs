use std::collections::BTreeSet;

use super::presentation::Presentation;
use super::word::{cyclic_canonical, cyclic_reduce, Letter, Word};

/// Remove empty and duplicate relators (duplicates up to rotation and inversion).
pub fn tidy(p: &Presentation) -> Presentation {
    let mut seen = BTreeSet::new();
    let mut rels = Vec::new();
    for r in &p.relators {
        let r = cyclic_reduce(r);
        if r.is_empty() {
            continue;
        }
        if seen.insert(cyclic_canonical(&r)) {
            rels.push(r);
        }
    }
    Presentation { generators: p.generators.clone(), relators: rels }
}

/// Solve relator `r` for a generator occurring in it exactly once.
pub fn solve_for(r: &Word, g: &str) -> Option<Word> {
    let k = r.letters().iter().position(|l| l.gen == g)?;
    if r.occurrences(g) != 1 {
        return None;
    }
    let rot = r.rotate(k);
    let head = &rot.letters()[0];
    let rest = Word::from_letters(rot.letters()[1..].iter().cloned());
    // g·rest = 1 or g^-1·rest = 1
    Some(if head.inverse { rest } else { rest.inverse() })
}

/// One elimination: the shortest relator in which some generator occurs
/// exactly once, breaking ties by generator name.
fn eliminate_once(p: &Presentation) -> Option<Presentation> {
    let mut order: Vec<usize> = (0..p.relators.len()).collect();
    order.sort_by_key(|&i| (p.relators[i].len(), i));
    for i in order {
        let r = &p.relators[i];
        let names: BTreeSet<&str> = r.letters().iter().map(|l: &Letter| l.gen.as_str()).collect();
        let Some(g) = names.into_iter().find(|g| r.occurrences(g) == 1) else {
            continue;
        };
        let value = solve_for(r, g)?;
        let relators = p
            .relators
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, w)| cyclic_reduce(&w.substitute(g, &value)))
            .collect();
        let generators = p.generators.iter().filter(|x| x.as_str() != g).cloned().collect();
        return Some(Presentation { generators, relators });
    }
    None
}

/// Greedy Tietze simplification with at most `budget` generator eliminations.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> Presentation {
    let mut cur = tidy(p);
    for _ in 0..budget {
        match eliminate_once(&cur) {
            Some(next) => cur = tidy(&next),
            None => break,
        }
    }
    cur
}
