//! Exact Möbius geometry of R^4 ∪ {∞}: generalized spheres, inversions,
//! sign-diagonal maps and words of them.
//!
//! Words act on the left and their atoms are applied right-to-left, so the
//! word `[m1, m2, m3]` is the map `m1 ∘ m2 ∘ m3`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rat;

pub type Vec4 = [Rat; 4];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoebiusError {
    #[error("sphere radius must be positive")]
    NonPositiveRadius,
    #[error("plane normal must be nonzero")]
    ZeroNormal,
    #[error("sign flip with all entries +1 is the identity, not an atom")]
    TrivialSignFlip,
    #[error("inversion needs a sphere, reflection needs a plane")]
    WrongSphereKind,
    #[error("point is not on the unit sphere S^3")]
    NotOnUnitSphere,
    #[error("the map does not fix the given point")]
    NotFixed,
}

pub fn vec4(xs: [i64; 4]) -> Vec4 {
    xs.map(Rat::from_int)
}

pub fn dot(x: &Vec4, y: &Vec4) -> Rat {
    let mut s = Rat::zero();
    for i in 0..4 {
        s = s + &x[i] * &y[i];
    }
    s
}

pub fn norm_sq(x: &Vec4) -> Rat {
    dot(x, x)
}

pub fn add(x: &Vec4, y: &Vec4) -> Vec4 {
    std::array::from_fn(|i| &x[i] + &y[i])
}

pub fn sub(x: &Vec4, y: &Vec4) -> Vec4 {
    std::array::from_fn(|i| &x[i] - &y[i])
}

pub fn scale(t: &Rat, x: &Vec4) -> Vec4 {
    std::array::from_fn(|i| t * &x[i])
}

fn fmt_vec(v: &Vec4) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// A point of the boundary sphere R^4 ∪ {∞}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryPoint {
    Finite(Vec4),
    Infinity,
}

impl BoundaryPoint {
    pub fn from_ints(xs: [i64; 4]) -> BoundaryPoint {
        BoundaryPoint::Finite(vec4(xs))
    }

    pub fn finite(&self) -> Option<&Vec4> {
        match self {
            BoundaryPoint::Finite(v) => Some(v),
            BoundaryPoint::Infinity => None,
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(v) => write!(f, "{}", fmt_vec(v)),
            BoundaryPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A round 3-sphere or an affine hyperplane in R^4.
///
/// Planes compare equal when their equations are proportional.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum GenSphere {
    Sphere { center: Vec4, radius_sq: Rat },
    Plane { normal: Vec4, offset: Rat },
}

impl GenSphere {
    pub fn sphere(center: Vec4, radius_sq: Rat) -> Result<GenSphere, MoebiusError> {
        if radius_sq.signum() <= 0 {
            return Err(MoebiusError::NonPositiveRadius);
        }
        Ok(GenSphere::Sphere { center, radius_sq })
    }

    pub fn plane(normal: Vec4, offset: Rat) -> Result<GenSphere, MoebiusError> {
        if normal.iter().all(Rat::is_zero) {
            return Err(MoebiusError::ZeroNormal);
        }
        Ok(GenSphere::Plane { normal, offset })
    }

    /// Scale a plane so its first nonzero normal coordinate is 1.
    fn normalized_plane(normal: &Vec4, offset: &Rat) -> (Vec4, Rat) {
        let lead = normal.iter().find(|x| !x.is_zero()).expect("nonzero normal");
        (std::array::from_fn(|i| &normal[i] / lead), offset / lead)
    }

    pub fn contains(&self, p: &BoundaryPoint) -> bool {
        match (self, p) {
            (GenSphere::Sphere { .. }, BoundaryPoint::Infinity) => false,
            (GenSphere::Plane { .. }, BoundaryPoint::Infinity) => true,
            (GenSphere::Sphere { center, radius_sq }, BoundaryPoint::Finite(x)) => {
                &norm_sq(&sub(x, center)) == radius_sq
            }
            (GenSphere::Plane { normal, offset }, BoundaryPoint::Finite(x)) => &dot(normal, x) == offset,
        }
    }
}

impl PartialEq for GenSphere {
    fn eq(&self, other: &GenSphere) -> bool {
        match (self, other) {
            (GenSphere::Sphere { center: c1, radius_sq: r1 }, GenSphere::Sphere { center: c2, radius_sq: r2 }) => {
                c1 == c2 && r1 == r2
            }
            (GenSphere::Plane { normal: n1, offset: d1 }, GenSphere::Plane { normal: n2, offset: d2 }) => {
                Self::normalized_plane(n1, d1) == Self::normalized_plane(n2, d2)
            }
            _ => false,
        }
    }
}

impl Eq for GenSphere {}

impl fmt::Display for GenSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSphere::Sphere { center, radius_sq } => write!(f, "S[{};{}]", fmt_vec(center), radius_sq),
            GenSphere::Plane { normal, offset } => write!(f, "P[{};{}]", fmt_vec(normal), offset),
        }
    }
}

/// An involutive generator of the Möbius group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AtomicMap {
    Inversion { center: Vec4, radius_sq: Rat },
    SignFlip([i8; 4]),
    PlaneReflect { normal: Vec4, offset: Rat },
}

impl AtomicMap {
    pub fn inversion(s: &GenSphere) -> Result<AtomicMap, MoebiusError> {
        match s {
            GenSphere::Sphere { center, radius_sq } => {
                Ok(AtomicMap::Inversion { center: center.clone(), radius_sq: radius_sq.clone() })
            }
            GenSphere::Plane { .. } => Err(MoebiusError::WrongSphereKind),
        }
    }

    pub fn sign_flip(eps: [i8; 4]) -> Result<AtomicMap, MoebiusError> {
        assert!(eps.iter().all(|e| *e == 1 || *e == -1), "sign entries must be ±1");
        if eps.iter().all(|e| *e == 1) {
            return Err(MoebiusError::TrivialSignFlip);
        }
        Ok(AtomicMap::SignFlip(eps))
    }

    pub fn plane_reflect(p: &GenSphere) -> Result<AtomicMap, MoebiusError> {
        match p {
            GenSphere::Plane { normal, offset } => {
                Ok(AtomicMap::PlaneReflect { normal: normal.clone(), offset: offset.clone() })
            }
            GenSphere::Sphere { .. } => Err(MoebiusError::WrongSphereKind),
        }
    }

    /// True for maps that reverse orientation of R^4; every atom does.
    pub fn reverses_orientation(&self) -> bool {
        match self {
            AtomicMap::SignFlip(eps) => eps.iter().filter(|e| **e < 0).count() % 2 == 1,
            _ => true,
        }
    }

    pub fn apply_point(&self, p: &BoundaryPoint) -> BoundaryPoint {
        match self {
            AtomicMap::SignFlip(eps) => match p {
                BoundaryPoint::Infinity => BoundaryPoint::Infinity,
                BoundaryPoint::Finite(x) => {
                    BoundaryPoint::Finite(std::array::from_fn(|i| if eps[i] < 0 { -&x[i] } else { x[i].clone() }))
                }
            },
            AtomicMap::Inversion { center, radius_sq } => match p {
                BoundaryPoint::Infinity => BoundaryPoint::Finite(center.clone()),
                BoundaryPoint::Finite(x) => {
                    let d = sub(x, center);
                    let n = norm_sq(&d);
                    if n.is_zero() {
                        BoundaryPoint::Infinity
                    } else {
                        BoundaryPoint::Finite(add(center, &scale(&(radius_sq / &n), &d)))
                    }
                }
            },
            AtomicMap::PlaneReflect { normal, offset } => match p {
                BoundaryPoint::Infinity => BoundaryPoint::Infinity,
                BoundaryPoint::Finite(x) => {
                    let t = Rat::from_int(2) * (dot(normal, x) - offset) / norm_sq(normal);
                    BoundaryPoint::Finite(sub(x, &scale(&t, normal)))
                }
            },
        }
    }

    pub fn apply_sphere(&self, s: &GenSphere) -> GenSphere {
        match self {
            AtomicMap::SignFlip(eps) => {
                let flip =
                    |v: &Vec4| -> Vec4 { std::array::from_fn(|i| if eps[i] < 0 { -&v[i] } else { v[i].clone() }) };
                match s {
                    GenSphere::Sphere { center, radius_sq } => {
                        GenSphere::Sphere { center: flip(center), radius_sq: radius_sq.clone() }
                    }
                    GenSphere::Plane { normal, offset } => {
                        GenSphere::Plane { normal: flip(normal), offset: offset.clone() }
                    }
                }
            }
            AtomicMap::Inversion { center: c, radius_sq: big_r } => match s {
                GenSphere::Sphere { center: m, radius_sq: r2 } => {
                    let mc = sub(m, c);
                    let dist = norm_sq(&mc);
                    let denom = &dist - r2;
                    if denom.is_zero() {
                        // the sphere passes through the inversion center
                        let offset = dot(&mc, c) + big_r / &Rat::from_int(2);
                        GenSphere::Plane { normal: mc, offset }
                    } else {
                        GenSphere::Sphere {
                            center: add(c, &scale(&(big_r / &denom), &mc)),
                            radius_sq: big_r.square() * r2 / denom.square(),
                        }
                    }
                }
                GenSphere::Plane { normal: n, offset: d } => {
                    let gap = d - &dot(n, c);
                    if gap.is_zero() {
                        s.clone()
                    } else {
                        let two_gap = Rat::from_int(2) * &gap;
                        GenSphere::Sphere {
                            center: add(c, &scale(&(big_r / &two_gap), n)),
                            radius_sq: big_r.square() * norm_sq(n) / (Rat::from_int(4) * gap.square()),
                        }
                    }
                }
            },
            AtomicMap::PlaneReflect { normal: n0, offset: d0 } => {
                let n0sq = norm_sq(n0);
                let reflect_vec = |v: &Vec4| -> Vec4 {
                    let t = Rat::from_int(2) * dot(n0, v) / &n0sq;
                    sub(v, &scale(&t, n0))
                };
                match s {
                    GenSphere::Sphere { center, radius_sq } => {
                        match self.apply_point(&BoundaryPoint::Finite(center.clone())) {
                            BoundaryPoint::Finite(c) => GenSphere::Sphere { center: c, radius_sq: radius_sq.clone() },
                            BoundaryPoint::Infinity => unreachable!("plane reflection fixes infinity"),
                        }
                    }
                    GenSphere::Plane { normal, offset } => {
                        // y = L x + t with L the linear reflection and t = 2 d0 n0 / |n0|^2,
                        // so n·x = d becomes (L n)·y = d + (L n)·t
                        let t = scale(&(Rat::from_int(2) * d0 / &n0sq), n0);
                        let ln = reflect_vec(normal);
                        let new_offset = offset + &dot(&ln, &t);
                        GenSphere::Plane { normal: ln, offset: new_offset }
                    }
                }
            }
        }
    }
}

impl fmt::Display for AtomicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomicMap::Inversion { center, radius_sq } => write!(f, "Inv[{};{}]", fmt_vec(center), radius_sq),
            AtomicMap::SignFlip(eps) => {
                let s: String = eps.iter().map(|e| if *e < 0 { '-' } else { '+' }).collect();
                write!(f, "Diag[{s}]")
            }
            AtomicMap::PlaneReflect { normal, offset } => write!(f, "Refl[{};{}]", fmt_vec(normal), offset),
        }
    }
}

/// A composite Möbius transformation stored as its sequence of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MoebiusWord {
    pub atoms: Vec<AtomicMap>,
}

impl MoebiusWord {
    pub fn identity() -> MoebiusWord {
        MoebiusWord::default()
    }

    pub fn from_atoms(atoms: Vec<AtomicMap>) -> MoebiusWord {
        MoebiusWord { atoms }
    }

    /// The map `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &MoebiusWord) -> MoebiusWord {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        MoebiusWord { atoms }
    }

    pub fn inverse(&self) -> MoebiusWord {
        MoebiusWord { atoms: self.atoms.iter().rev().cloned().collect() }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn preserves_orientation(&self) -> bool {
        self.atoms.iter().filter(|a| a.reverses_orientation()).count() % 2 == 0
    }

    pub fn apply_point(&self, p: &BoundaryPoint) -> BoundaryPoint {
        self.atoms.iter().rev().fold(p.clone(), |q, a| a.apply_point(&q))
    }

    pub fn apply_sphere(&self, s: &GenSphere) -> GenSphere {
        self.atoms.iter().rev().fold(s.clone(), |t, a| a.apply_sphere(&t))
    }

    /// Exact identity test on the certificate point set.
    pub fn is_identity(&self) -> bool {
        certificate().iter().all(|p| &self.apply_point(p) == p)
    }
}

impl fmt::Display for MoebiusWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "Id");
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" ∘ "))
    }
}

pub fn apply_point(w: &MoebiusWord, p: &BoundaryPoint) -> BoundaryPoint {
    w.apply_point(p)
}

pub fn apply_sphere(w: &MoebiusWord, s: &GenSphere) -> GenSphere {
    w.apply_sphere(s)
}

pub fn is_identity(w: &MoebiusWord) -> bool {
    w.is_identity()
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[r][col];
                for j in col..ncols {
                    let v = &m[i][j] - &(&f * &m[r][j]);
                    m[i][j] = v;
                }
            }
        }
        r += 1;
    }
    r
}

fn certificate_points() -> Vec<Vec4> {
    vec![
        vec4([1, 0, 0, 0]),
        vec4([0, 1, 0, 0]),
        vec4([0, 0, 1, 0]),
        vec4([0, 0, 0, 1]),
        vec4([-1, 0, 0, 0]),
        [Rat::new(1, 2), Rat::new(1, 2), Rat::new(1, 2), Rat::new(1, 2)],
    ]
}

/// Six ideal vertices of S^3 in general position plus the origin.
///
/// A Möbius map fixing six points of S^3 that lie on no common 2-sphere
/// fixes S^3 pointwise, so it is either the identity or the inversion in
/// S^3; the origin separates the two.
pub fn certificate() -> &'static [BoundaryPoint] {
    static CERT: OnceLock<Vec<BoundaryPoint>> = OnceLock::new();
    CERT.get_or_init(|| {
        let pts = certificate_points();
        for p in &pts {
            assert!(norm_sq(p).is_one(), "certificate point off S^3");
        }
        let rows: Vec<Vec<Rat>> =
            pts.iter().map(|p| std::iter::once(Rat::one()).chain(p.iter().cloned()).collect()).collect();
        assert_eq!(rank(&rows), 5, "certificate points lie on a common 2-sphere");
        let mut out: Vec<BoundaryPoint> = pts.into_iter().map(BoundaryPoint::Finite).collect();
        out.push(BoundaryPoint::from_ints([0, 0, 0, 0]));
        out
    })
}

/// Inversion in the unit sphere centered at `v`, which sends `v` to ∞ and
/// S^3 to the hyperplane `v·x = 1/2`.
pub fn conjugate_to_infinity(v: &BoundaryPoint) -> Result<MoebiusWord, MoebiusError> {
    let x = v.finite().ok_or(MoebiusError::NotOnUnitSphere)?;
    if !norm_sq(x).is_one() {
        return Err(MoebiusError::NotOnUnitSphere);
    }
    Ok(MoebiusWord::from_atoms(vec![AtomicMap::Inversion { center: x.clone(), radius_sq: Rat::one() }]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParabolicClass {
    Identity,
    Translation,
    OtherParabolicOrElliptic,
}

/// The Euclidean action of a map fixing an ideal vertex, read in an
/// orthogonal frame of the horosphere-at-infinity hyperplane.
///
/// Coordinates transform as `y ↦ linear·y + translation`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: [[Rat; 3]; 3],
    pub translation: [Rat; 3],
}

impl AffineMap {
    pub fn identity() -> AffineMap {
        AffineMap {
            linear: std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() })),
            translation: std::array::from_fn(|_| Rat::zero()),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let lin = std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).fold(Rat::zero(), |s, k| s + &self.linear[i][k] * &other.linear[k][j]))
        });
        let tr = std::array::from_fn(|i| {
            (0..3).fold(self.translation[i].clone(), |s, k| s + &self.linear[i][k] * &other.translation[k])
        });
        AffineMap { linear: lin, translation: tr }
    }

    pub fn is_linear_identity(&self) -> bool {
        self.linear == AffineMap::identity().linear
    }

    pub fn classify(&self) -> ParabolicClass {
        if !self.is_linear_identity() {
            ParabolicClass::OtherParabolicOrElliptic
        } else if self.translation.iter().all(Rat::is_zero) {
            ParabolicClass::Identity
        } else {
            ParabolicClass::Translation
        }
    }
}

/// Orthogonal frame of the hyperplane `v·x = 1/2` (the image of S^3 under
/// [`conjugate_to_infinity`]): origin `v/2` and three orthogonal directions.
struct Frame {
    origin: Vec4,
    dirs: Vec<Vec4>,
}

impl Frame {
    fn new(v: &Vec4) -> Frame {
        let origin = scale(&Rat::new(1, 2), v);
        let mut dirs: Vec<Vec4> = Vec::new();
        let mut candidates: Vec<Vec4> = Vec::new();
        if v.iter().all(|x| !x.is_zero()) {
            // sign-twisted Hadamard rows are orthogonal to v when |v_i| are equal
            for row in [[1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]] {
                candidates.push(std::array::from_fn(|i| Rat::from_int(row[i] * v[i].signum() as i64)));
            }
        }
        for i in 0..4 {
            let mut e = vec4([0, 0, 0, 0]);
            e[i] = Rat::one();
            candidates.push(e);
        }
        for c in candidates {
            if dirs.len() == 3 {
                break;
            }
            let mut u = sub(&c, &scale(&(dot(&c, v) / norm_sq(v)), v));
            for d in &dirs {
                u = sub(&u, &scale(&(dot(&u, d) / norm_sq(d)), d));
            }
            if !norm_sq(&u).is_zero() {
                dirs.push(u);
            }
        }
        Frame { origin, dirs }
    }

    fn coords(&self, q: &Vec4) -> [Rat; 3] {
        let d = sub(q, &self.origin);
        std::array::from_fn(|i| dot(&d, &self.dirs[i]) / norm_sq(&self.dirs[i]))
    }

    fn point(&self, i: Option<usize>) -> BoundaryPoint {
        match i {
            None => BoundaryPoint::Finite(self.origin.clone()),
            Some(i) => BoundaryPoint::Finite(add(&self.origin, &self.dirs[i])),
        }
    }
}

/// The affine action of `w` at the fixed ideal vertex `v`, after conjugating
/// `v` to infinity.
pub fn affine_part(w: &MoebiusWord, v: &BoundaryPoint) -> Result<AffineMap, MoebiusError> {
    let sigma = conjugate_to_infinity(v)?;
    if &w.apply_point(v) != v {
        return Err(MoebiusError::NotFixed);
    }
    let conj = sigma.compose(w).compose(&sigma);
    let frame = Frame::new(v.finite().expect("checked finite"));
    let image = |i: Option<usize>| -> [Rat; 3] {
        match conj.apply_point(&frame.point(i)) {
            BoundaryPoint::Finite(q) => frame.coords(&q),
            BoundaryPoint::Infinity => unreachable!("conjugated map fixes infinity"),
        }
    };
    let base = image(None);
    let cols: Vec<[Rat; 3]> = (0..3).map(|i| image(Some(i))).collect();
    let linear = std::array::from_fn(|r| std::array::from_fn(|c| &cols[c][r] - &base[r]));
    Ok(AffineMap { linear, translation: base })
}

pub fn classify_parabolic(w: &MoebiusWord, v: &BoundaryPoint) -> Result<ParabolicClass, MoebiusError> {
    Ok(affine_part(w, v)?.classify())
}
