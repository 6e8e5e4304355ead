use serde::{Deserialize, Serialize};

use super::presentation::Presentation;

pub const DEFAULT_MAX_COSETS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetResult {
    Order(usize),
    Exceeded,
}

impl std::fmt::Display for CosetResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CosetResult::Order(n) => write!(f, "{n}"),
            CosetResult::Exceeded => write!(f, "exceeded"),
        }
    }
}

const NONE: usize = usize::MAX;

struct Table {
    ncols: usize,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    max: usize,
    overflow: bool,
}

impl Table {
    fn new(ncols: usize, max: usize) -> Table {
        Table { ncols, rows: vec![vec![NONE; ncols]], parent: vec![0], queue: Vec::new(), max, overflow: false }
    }

    fn inv(x: usize) -> usize {
        x ^ 1
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) {
        if self.rows.len() >= self.max {
            self.overflow = true;
            return;
        }
        let n = self.rows.len();
        self.rows.push(vec![NONE; self.ncols]);
        self.parent.push(n);
        self.rows[c][x] = n;
        self.rows[n][Self::inv(x)] = c;
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, k: usize, l: usize) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.rows[g][x];
                if d == NONE {
                    continue;
                }
                self.rows[d][Self::inv(x)] = NONE;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.rows[mu][x] != NONE {
                    let t = self.rows[mu][x];
                    self.merge(nu, t);
                } else if self.rows[nu][Self::inv(x)] != NONE {
                    let t = self.rows[nu][Self::inv(x)];
                    self.merge(mu, t);
                } else {
                    self.rows[mu][x] = nu;
                    self.rows[nu][Self::inv(x)] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) {
        if w.is_empty() {
            return;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.rows[f][w[i]] != NONE {
                f = self.rows[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize && self.rows[b][Self::inv(w[j as usize])] != NONE {
                b = self.rows[b][Self::inv(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if i as isize == j {
                self.rows[f][w[i]] = b;
                self.rows[b][Self::inv(w[i])] = f;
                return;
            }
            self.define(f, w[i]);
            if self.overflow {
                return;
            }
        }
    }
}

/// Order of the group by HLT coset enumeration over the trivial subgroup.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> CosetResult {
    let ncols = 2 * p.generators.len();
    if ncols == 0 {
        return CosetResult::Order(1);
    }
    let rels: Vec<Vec<usize>> = p
        .relators
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.letters()
                .iter()
                .map(|l| 2 * p.gen_index(&l.gen).expect("relator over declared generators") + l.inverse as usize)
                .collect()
        })
        .collect();
    let mut t = Table::new(ncols, max_cosets.max(1));
    let mut c = 0;
    while c < t.rows.len() {
        if t.live(c) {
            for r in &rels {
                t.scan_and_fill(c, r);
                if t.overflow {
                    return CosetResult::Exceeded;
                }
                if !t.live(c) {
                    break;
                }
            }
            for x in 0..ncols {
                if !t.live(c) {
                    break;
                }
                if t.rows[c][x] == NONE {
                    t.define(c, x);
                    if t.overflow {
                        return CosetResult::Exceeded;
                    }
                }
            }
        }
        c += 1;
    }
    CosetResult::Order((0..t.rows.len()).filter(|&k| t.live(k)).count())
}
