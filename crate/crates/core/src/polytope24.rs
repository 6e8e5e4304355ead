//! Combinatorics of the ideal 24-cell in the conformal ball model.
//!
//! Sides are unit spheres centered at the 24 vectors of norm sqrt 2 with two
//! nonzero entries ±1; ideal vertices are the 24 unit vectors of shape
//! (±1,0,0,0) and (±1/2,±1/2,±1/2,±1/2). A vertex lies on a side iff
//! `v·c = 1`.

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::exact::Rat;
use crate::moebius::{dot, norm_sq, vec4, BoundaryPoint, GenSphere, Vec4};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("{0} is not a side sphere of the 24-cell")]
    NotASide(String),
    #[error("unknown side label {0:?}")]
    UnknownLabel(String),
}

/// Labels and centers in table order A, A', B, B', ..., L, L'.
pub const SIDE_TABLE: [(&str, [i8; 4]); 24] = [
    ("A", [1, 1, 0, 0]),
    ("A'", [-1, 1, 0, 0]),
    ("B", [1, -1, 0, 0]),
    ("B'", [-1, -1, 0, 0]),
    ("C", [1, 0, 1, 0]),
    ("C'", [1, 0, -1, 0]),
    ("D", [-1, 0, 1, 0]),
    ("D'", [-1, 0, -1, 0]),
    ("E", [0, 1, 1, 0]),
    ("E'", [0, -1, -1, 0]),
    ("F", [0, 1, -1, 0]),
    ("F'", [0, -1, 1, 0]),
    ("G", [1, 0, 0, 1]),
    ("G'", [-1, 0, 0, -1]),
    ("H", [1, 0, 0, -1]),
    ("H'", [-1, 0, 0, 1]),
    ("I", [0, 1, 0, 1]),
    ("I'", [0, -1, 0, 1]),
    ("J", [0, 1, 0, -1]),
    ("J'", [0, -1, 0, -1]),
    ("K", [0, 0, 1, 1]),
    ("K'", [0, 0, 1, -1]),
    ("L", [0, 0, -1, 1]),
    ("L'", [0, 0, -1, -1]),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Side {
    pub index: usize,
    pub label: &'static str,
    pub center: [i8; 4],
}

impl Side {
    pub fn center_vec(&self) -> Vec4 {
        self.center.map(|x| Rat::from_int(x as i64))
    }

    pub fn sphere(&self) -> GenSphere {
        GenSphere::Sphere { center: self.center_vec(), radius_sq: Rat::one() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealVertex {
    pub index: usize,
    /// Twice the coordinates, so all entries are integers.
    pub doubled: [i8; 4],
}

impl IdealVertex {
    pub fn coords(&self) -> Vec4 {
        self.doubled.map(|x| Rat::new(x as i64, 2))
    }

    pub fn point(&self) -> BoundaryPoint {
        BoundaryPoint::Finite(self.coords())
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.coords().iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ridge {
    pub index: usize,
    /// Side indices with `sides.0 < sides.1`.
    pub sides: (usize, usize),
    pub vertices: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeFace {
    pub index: usize,
    /// Sorted side indices.
    pub sides: Vec<usize>,
    pub vertices: [usize; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct Polytope {
    pub sides: Vec<Side>,
    pub vertices: Vec<IdealVertex>,
    pub ridges: Vec<Ridge>,
    pub edge_faces: Vec<EdgeFace>,
    /// `side_vertices[s]` lists the vertices on side `s`.
    pub side_vertices: Vec<Vec<usize>>,
    /// `side_ridges[s]` lists the ridges containing side `s`.
    pub side_ridges: Vec<Vec<usize>>,
}

fn idot(x: &[i8; 4], y: &[i8; 4]) -> i32 {
    (0..4).map(|i| x[i] as i32 * y[i] as i32).sum()
}

fn vertex_list() -> Vec<[i8; 4]> {
    let mut out = Vec::new();
    for i in 0..4 {
        for s in [2i8, -2] {
            let mut v = [0i8; 4];
            v[i] = s;
            out.push(v);
        }
    }
    // (±1/2)^4 in lexicographic order with + before -
    for bits in 0..16u8 {
        out.push(std::array::from_fn(|j| if bits & (8 >> j) != 0 { -1 } else { 1 }));
    }
    out
}

pub fn build_polytope() -> Polytope {
    let sides: Vec<Side> =
        SIDE_TABLE.iter().enumerate().map(|(index, (label, center))| Side { index, label, center: *center }).collect();
    let vertices: Vec<IdealVertex> =
        vertex_list().into_iter().enumerate().map(|(index, doubled)| IdealVertex { index, doubled }).collect();
    // v·c = 1 with v doubled reads 2v·c = 2
    let on = |v: &IdealVertex, s: &Side| idot(&v.doubled, &s.center) == 2;
    let side_vertices: Vec<Vec<usize>> =
        sides.iter().map(|s| vertices.iter().filter(|v| on(v, s)).map(|v| v.index).collect()).collect();

    let mut ridges = Vec::new();
    for s in 0..24 {
        for t in s + 1..24 {
            if idot(&sides[s].center, &sides[t].center) == 1 {
                let common: Vec<usize> =
                    side_vertices[s].iter().filter(|v| side_vertices[t].contains(v)).copied().collect();
                assert_eq!(common.len(), 3, "ridge without three ideal vertices");
                ridges.push(Ridge { index: ridges.len(), sides: (s, t), vertices: [common[0], common[1], common[2]] });
            }
        }
    }
    let mut side_ridges = vec![Vec::new(); 24];
    for r in &ridges {
        side_ridges[r.sides.0].push(r.index);
        side_ridges[r.sides.1].push(r.index);
    }

    let adjacent = |s: usize, t: usize| idot(&sides[s].center, &sides[t].center) == 1;
    let mut edge_faces = Vec::new();
    for s in 0..24 {
        for t in s + 1..24 {
            if !adjacent(s, t) {
                continue;
            }
            for u in t + 1..24 {
                if !adjacent(s, u) || !adjacent(t, u) {
                    continue;
                }
                let common: Vec<usize> = side_vertices[s]
                    .iter()
                    .filter(|v| side_vertices[t].contains(v) && side_vertices[u].contains(v))
                    .copied()
                    .collect();
                if common.len() == 2 {
                    edge_faces.push(EdgeFace {
                        index: edge_faces.len(),
                        sides: vec![s, t, u],
                        vertices: [common[0], common[1]],
                    });
                }
            }
        }
    }

    let p = Polytope { sides, vertices, ridges, edge_faces, side_vertices, side_ridges };
    p.self_check();
    p
}

/// The shared, lazily built polytope.
pub fn polytope() -> &'static Polytope {
    static P: OnceLock<Polytope> = OnceLock::new();
    P.get_or_init(build_polytope)
}

impl Polytope {
    fn self_check(&self) {
        for s in &self.sides {
            let c = s.center_vec();
            // orthogonality to S^3: |c|^2 = 1 + R^2 with R = 1
            assert_eq!(norm_sq(&c), Rat::from_int(2));
        }
        for v in &self.vertices {
            assert!(norm_sq(&v.coords()).is_one());
        }
    }

    pub fn side_by_label(&self, label: &str) -> Result<usize, PolytopeError> {
        self.sides.iter().position(|s| s.label == label).ok_or_else(|| PolytopeError::UnknownLabel(label.to_string()))
    }

    pub fn side_of_center(&self, c: &[i8; 4]) -> Option<usize> {
        self.sides.iter().position(|s| &s.center == c)
    }

    pub fn side_of_sphere(&self, s: &GenSphere) -> Result<usize, PolytopeError> {
        let not_side = || PolytopeError::NotASide(s.to_string());
        let GenSphere::Sphere { center, radius_sq } = s else {
            return Err(not_side());
        };
        if !radius_sq.is_one() {
            return Err(not_side());
        }
        self.sides.iter().position(|side| &side.center_vec() == center).ok_or_else(not_side)
    }

    pub fn ridge_of(&self, s: usize, t: usize) -> Option<usize> {
        let key = (s.min(t), s.max(t));
        self.ridges.iter().position(|r| r.sides == key)
    }

    pub fn vertex_of_point(&self, p: &BoundaryPoint) -> Option<usize> {
        let x = p.finite()?;
        self.vertices.iter().position(|v| &v.coords() == x)
    }

    pub fn vertex_on_side(&self, v: usize, s: usize) -> bool {
        dot(&self.vertices[v].coords(), &self.sides[s].center_vec()).is_one()
    }

    pub fn edge_of_vertices(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_faces
            .iter()
            .position(|e| (e.vertices[0] == a && e.vertices[1] == b) || (e.vertices[0] == b && e.vertices[1] == a))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polytope serializes")
    }
}

pub fn side_of_sphere(s: &GenSphere) -> Result<usize, PolytopeError> {
    polytope().side_of_sphere(s)
}

/// The point `(x_1, ..., x_4)` as a [`Vec4`] from small integers over a
/// common denominator.
pub fn point_over(den: i64, xs: [i64; 4]) -> Vec4 {
    let v = vec4(xs);
    v.map(|x| x / Rat::from_int(den))
}
