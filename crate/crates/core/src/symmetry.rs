//! Reflection symmetries of a polygon and the dihedral groups they generate.
//!
//! All maps act linearly on `M ⊗ Q` and fix the origin. A map is a symmetry of
//! a polygon when it permutes the vertices and its contragredient action on
//! `N` carries every edge normal exactly onto the normal of the image edge.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{LinAlgError, Rat, RatMatrix};
use crate::geometry::{pairing, primitive_rational, GeometryError, LatticeVec, RatPoint, RationalPolygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("not a symmetry of the polygon: {0}")]
    NotASymmetry(String),
    #[error("matrix is not a reflection: {0}")]
    NotAReflection(String),
    #[error("product of the generators has no finite order up to {0}")]
    NotFiniteOrder(usize),
    #[error("the generators coincide (order of s1 s2 is {0})")]
    EllTooSmall(usize),
    #[error("mirror normals do not isolate a fundamental chamber")]
    OrientationAmbiguous,
    #[error("inconsistent geometry: {0}")]
    InconsistentGeometry(String),
    #[error("edges are not partitioned into orbits: {0}")]
    PartitionFailure(String),
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A 2x2 rational matrix acting on column vectors of `M ⊗ Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[Rat; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]])
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Mat2([
            [Rat::from_int(m[0][0]), Rat::from_int(m[0][1])],
            [Rat::from_int(m[1][0]), Rat::from_int(m[1][1])],
        ])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn apply(&self, p: &RatPoint) -> RatPoint {
        let a = &self.0;
        RatPoint::new(
            &a[0][0] * &p.x + &a[0][1] * &p.y,
            &a[1][0] * &p.x + &a[1][1] * &p.y,
        )
    }

    pub fn det(&self) -> Rat {
        let a = &self.0;
        &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
    }

    pub fn transpose(&self) -> Mat2 {
        let a = &self.0;
        Mat2([
            [a[0][0].clone(), a[1][0].clone()],
            [a[0][1].clone(), a[1][1].clone()],
        ])
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let a = &self.0;
        let inv = d.recip();
        Some(Mat2([
            [&a[1][1] * &inv, -(&a[0][1] * &inv)],
            [-(&a[1][0] * &inv), &a[0][0] * &inv],
        ]))
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// The contragredient action on `N`: `λ ↦ (A^{-1})^T λ`, so that
    /// `<A x, A* λ> = <x, λ>`. `None` when the image is not integral.
    pub fn dual_apply(&self, n: &LatticeVec) -> Option<LatticeVec> {
        let d = self.inverse()?.transpose();
        let v = d.apply(&RatPoint::from_ints(n.x, n.y));
        Some(LatticeVec::new(v.x.to_i64()?, v.y.to_i64()?))
    }

    pub fn to_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(vec![self.0[0].to_vec(), self.0[1].to_vec()]).expect("2x2")
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]
        )
    }
}

impl Serialize for Mat2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .0
            .iter()
            .map(|r| r.iter().map(Rat::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

/// A linear reflection of `M ⊗ Q`: `R² = I`, `det R = -1`.
///
/// `mirror_normal` is a primitive `η ∈ N` with fixed line `<x, η> = 0`; its
/// sign selects the half `<x, η> <= 0` used as the fundamental region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflection {
    pub matrix: Mat2,
    pub mirror_normal: LatticeVec,
}

impl Reflection {
    pub fn from_matrix(matrix: Mat2) -> Result<Self, SymmetryError> {
        if !matrix.mul(&matrix).is_identity() {
            return Err(SymmetryError::NotAReflection(format!("{matrix:?} squared is not I")));
        }
        if matrix.det() != Rat::from_int(-1) {
            return Err(SymmetryError::NotAReflection(format!("det {matrix:?} != -1")));
        }
        // Fixed line = kernel of (R - I); η is perpendicular to it.
        let a = &matrix.0;
        let (fx, fy) = if !(&a[0][0] - Rat::one()).is_zero() || !a[0][1].is_zero() {
            (a[0][1].clone(), Rat::one() - &a[0][0])
        } else {
            (Rat::one() - &a[1][1], a[1][0].clone())
        };
        let eta = primitive_rational(&-fy, &fx)?.canonical_sign();
        Ok(Reflection {
            matrix,
            mirror_normal: eta,
        })
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Result<Self, SymmetryError> {
        Self::from_matrix(Mat2::from_ints(m))
    }

    /// The same reflection with the opposite half selected.
    pub fn flipped(&self) -> Self {
        Reflection {
            matrix: self.matrix.clone(),
            mirror_normal: self.mirror_normal.neg(),
        }
    }
}

/// How each edge moves under a linear map; errors if the map is not a
/// symmetry of `p`.
pub fn edge_permutation(p: &RationalPolygon, map: &Mat2) -> Result<Vec<usize>, SymmetryError> {
    let mut perm = Vec::with_capacity(p.num_edges());
    for e in p.edges() {
        let a = map.apply(&e.start);
        let b = map.apply(&e.end);
        let j = p
            .edges()
            .iter()
            .position(|f| (f.start == a && f.end == b) || (f.start == b && f.end == a))
            .ok_or_else(|| {
                SymmetryError::NotASymmetry(format!("edge {} has no image edge", e.index))
            })?;
        match map.dual_apply(&e.normal) {
            Some(n) if n == p.edge(j).normal => {}
            _ => {
                return Err(SymmetryError::NotASymmetry(format!(
                    "normal of edge {} is not carried to the normal of edge {j}",
                    e.index
                )))
            }
        }
        perm.push(j);
    }
    Ok(perm)
}

/// `σ(E_i) = E_π(i)` for a reflection `σ` preserving `p`.
pub fn induced_edge_permutation(
    p: &RationalPolygon,
    sigma: &Reflection,
) -> Result<Vec<usize>, SymmetryError> {
    edge_permutation(p, &sigma.matrix)
}

/// All linear reflections preserving `p`.
///
/// A reflection reverses the cyclic order, so it is determined by the image
/// `v_k` of vertex 0, which forces `v_1 ↦ v_{k-1}`. Each of the `m`
/// candidates is solved for and then checked.
pub fn detect_reflections(p: &RationalPolygon) -> Vec<Reflection> {
    let v = p.vertices();
    let m = v.len();
    let basis = Mat2([
        [v[0].x.clone(), v[1].x.clone()],
        [v[0].y.clone(), v[1].y.clone()],
    ]);
    let Some(basis_inv) = basis.inverse() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for k in 0..m {
        let a = &v[k];
        let b = &v[(k + m - 1) % m];
        let image = Mat2([[a.x.clone(), b.x.clone()], [a.y.clone(), b.y.clone()]]);
        let candidate = image.mul(&basis_inv);
        let Ok(r) = Reflection::from_matrix(candidate) else {
            continue;
        };
        if edge_permutation(p, &r.matrix).is_ok() {
            out.push(r);
        }
    }
    out
}

/// The symmetry configurations of a single reflection (1-x) and of a
/// dihedral group (2-x).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SymmetryCase {
    /// Mirror crosses two edge interiors.
    Single11,
    /// Mirror crosses one edge interior and one vertex.
    Single12,
    /// Mirror passes through two vertices.
    Single13,
    /// Both chamber walls exit through edge interiors.
    Dihedral21,
    /// One wall exits through an edge interior, the other through a vertex.
    Dihedral22,
    /// Both walls exit through vertices.
    Dihedral23,
}

impl SymmetryCase {
    pub fn label(&self) -> &'static str {
        match self {
            SymmetryCase::Single11 => "1-1",
            SymmetryCase::Single12 => "1-2",
            SymmetryCase::Single13 => "1-3",
            SymmetryCase::Dihedral21 => "2-1",
            SymmetryCase::Dihedral22 => "2-2",
            SymmetryCase::Dihedral23 => "2-3",
        }
    }

    pub fn is_single(&self) -> bool {
        matches!(
            self,
            SymmetryCase::Single11 | SymmetryCase::Single12 | SymmetryCase::Single13
        )
    }
}

impl fmt::Display for SymmetryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where the line `<x, η> = 0` meets the boundary of a polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorIncidence {
    pub vertices: Vec<usize>,
    pub crossed_edges: Vec<usize>,
}

pub fn mirror_incidence(p: &RationalPolygon, eta: &LatticeVec) -> MirrorIncidence {
    let vals: Vec<Rat> = p.vertices().iter().map(|v| pairing(v, eta)).collect();
    let m = vals.len();
    let vertices = (0..m).filter(|&i| vals[i].is_zero()).collect();
    let crossed_edges = (0..m)
        .filter(|&i| vals[i].signum() * vals[(i + 1) % m].signum() < 0)
        .collect();
    MirrorIncidence {
        vertices,
        crossed_edges,
    }
}

pub fn classify_single(p: &RationalPolygon, sigma: &Reflection) -> Result<SymmetryCase, SymmetryError> {
    induced_edge_permutation(p, sigma)?;
    let inc = mirror_incidence(p, &sigma.mirror_normal);
    match (inc.vertices.len(), inc.crossed_edges.len()) {
        (0, 2) => Ok(SymmetryCase::Single11),
        (1, 1) => Ok(SymmetryCase::Single12),
        (2, 0) => Ok(SymmetryCase::Single13),
        other => Err(SymmetryError::InconsistentGeometry(format!(
            "mirror meets the boundary in {other:?} (vertices, edges)"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    S1,
    S2,
}

impl Generator {
    pub fn other(self) -> Generator {
        match self {
            Generator::S1 => Generator::S2,
            Generator::S2 => Generator::S1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Generator::S1 => 0,
            Generator::S2 => 1,
        }
    }
}

/// A group element with a reduced word, read left to right as a product of
/// matrices (`s1s2` applies `s2` first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub word: Vec<Generator>,
    pub matrix: Mat2,
    pub name: String,
}

impl GroupElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

fn word_name(word: &[Generator]) -> String {
    if word.is_empty() {
        return "id".to_string();
    }
    word.iter()
        .map(|g| match g {
            Generator::S1 => "s1",
            Generator::S2 => "s2",
        })
        .collect()
}

/// Alternating word of length `len` starting with `first`.
fn alternating(first: Generator, len: usize) -> Vec<Generator> {
    let mut g = first;
    let mut w = Vec::with_capacity(len);
    for _ in 0..len {
        w.push(g);
        g = g.other();
    }
    w
}

const MAX_ORDER: usize = 64;

/// The dihedral group `D_{2ℓ}` generated by two reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralGroup {
    s1: Reflection,
    s2: Reflection,
    ell: usize,
    elements: Vec<GroupElement>,
    coset_reps_s1: Vec<usize>,
    coset_reps_s2: Vec<usize>,
    eta1: LatticeVec,
    eta2: LatticeVec,
}

impl DihedralGroup {
    pub fn new(s1: Reflection, s2: Reflection) -> Result<Self, SymmetryError> {
        let r = s1.matrix.mul(&s2.matrix);
        let mut power = r.clone();
        let mut ell = 1;
        while !power.is_identity() {
            ell += 1;
            if ell > MAX_ORDER {
                return Err(SymmetryError::NotFiniteOrder(MAX_ORDER));
            }
            power = power.mul(&r);
        }
        if ell < 2 {
            return Err(SymmetryError::EllTooSmall(ell));
        }
        let gen_matrix = |g: Generator| match g {
            Generator::S1 => &s1.matrix,
            Generator::S2 => &s2.matrix,
        };
        let make = |word: Vec<Generator>| {
            let matrix = word
                .iter()
                .fold(Mat2::identity(), |acc, &g| acc.mul(gen_matrix(g)));
            GroupElement {
                name: word_name(&word),
                word,
                matrix,
            }
        };
        let mut elements = vec![make(Vec::new())];
        for len in 1..ell {
            elements.push(make(alternating(Generator::S1, len)));
            elements.push(make(alternating(Generator::S2, len)));
        }
        elements.push(make(alternating(Generator::S1, ell)));
        for i in 0..elements.len() {
            for j in i + 1..elements.len() {
                if elements[i].matrix == elements[j].matrix {
                    return Err(SymmetryError::InconsistentGeometry(format!(
                        "{} and {} coincide",
                        elements[i].name, elements[j].name
                    )));
                }
            }
        }
        let lookup = |m: &Mat2| elements.iter().position(|e| &e.matrix == m);
        let reps = |s: &Reflection| -> Vec<usize> {
            (0..elements.len())
                .filter(|&u| {
                    let us = elements[u].matrix.mul(&s.matrix);
                    let k = lookup(&us).expect("closed under multiplication");
                    elements[k].length() >= elements[u].length()
                })
                .collect()
        };
        let coset_reps_s1 = reps(&s1);
        let coset_reps_s2 = reps(&s2);
        let mut g = DihedralGroup {
            eta1: s1.mirror_normal,
            eta2: s2.mirror_normal,
            s1,
            s2,
            ell,
            elements,
            coset_reps_s1,
            coset_reps_s2,
        };
        let c1 = g.s1.mirror_normal.canonical_sign();
        let c2 = g.s2.mirror_normal.canonical_sign();
        let choice = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
            .into_iter()
            .map(|(a, b)| (scaled(&c1, a), scaled(&c2, b)))
            .find(|(e1, e2)| g.is_chamber(e1, e2))
            .ok_or(SymmetryError::OrientationAmbiguous)?;
        g.eta1 = choice.0;
        g.eta2 = choice.1;
        Ok(g)
    }

    /// Selects the chamber `<x, η1> <= 0, <x, η2> <= 0` explicitly. Each
    /// normal must be `±` the corresponding mirror normal.
    pub fn with_orientation(mut self, eta1: LatticeVec, eta2: LatticeVec) -> Result<Self, SymmetryError> {
        let ok1 = eta1 == self.s1.mirror_normal || eta1 == self.s1.mirror_normal.neg();
        let ok2 = eta2 == self.s2.mirror_normal || eta2 == self.s2.mirror_normal.neg();
        if !ok1 || !ok2 || !self.is_chamber(&eta1, &eta2) {
            return Err(SymmetryError::OrientationAmbiguous);
        }
        self.eta1 = eta1;
        self.eta2 = eta2;
        Ok(self)
    }

    /// Directions of the two walls of the chamber cut out by `η1`, `η2`.
    fn wall_rays(eta1: &LatticeVec, eta2: &LatticeVec) -> (RatPoint, RatPoint) {
        let ray = |own: &LatticeVec, other: &LatticeVec| {
            let r = RatPoint::from_ints(own.y, -own.x);
            if pairing(&r, other).is_negative() {
                r
            } else {
                r.scale(&Rat::from_int(-1))
            }
        };
        (ray(eta1, eta2), ray(eta2, eta1))
    }

    /// No mirror of the group passes through the open cone.
    fn is_chamber(&self, eta1: &LatticeVec, eta2: &LatticeVec) -> bool {
        let (r1, r2) = Self::wall_rays(eta1, eta2);
        self.elements
            .iter()
            .filter(|e| e.matrix.det().is_negative())
            .all(|e| {
                let zeta = Reflection::from_matrix(e.matrix.clone())
                    .expect("odd-length elements are reflections")
                    .mirror_normal;
                pairing(&r1, &zeta).signum() * pairing(&r2, &zeta).signum() >= 0
            })
    }

    pub fn chamber_rays(&self) -> (RatPoint, RatPoint) {
        Self::wall_rays(&self.eta1, &self.eta2)
    }

    pub fn s1(&self) -> &Reflection {
        &self.s1
    }

    pub fn s2(&self) -> &Reflection {
        &self.s2
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Indices of `^{s1}W = { u : l(u s1) >= l(u) }`, by increasing length.
    pub fn coset_reps_s1(&self) -> &[usize] {
        &self.coset_reps_s1
    }

    pub fn coset_reps_s2(&self) -> &[usize] {
        &self.coset_reps_s2
    }

    pub fn eta1(&self) -> LatticeVec {
        self.eta1
    }

    pub fn eta2(&self) -> LatticeVec {
        self.eta2
    }

    pub fn element_named(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.name == name)
    }
}

fn scaled(v: &LatticeVec, s: i64) -> LatticeVec {
    LatticeVec::new(v.x * s, v.y * s)
}

pub fn dihedral_group(s1: Reflection, s2: Reflection) -> Result<DihedralGroup, SymmetryError> {
    DihedralGroup::new(s1, s2)
}

/// A group generated by reflections: one reflection, or two.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SymmetryGroup {
    Single(Reflection),
    Dihedral(DihedralGroup),
}

impl SymmetryGroup {
    pub fn elements(&self) -> Vec<GroupElement> {
        match self {
            SymmetryGroup::Single(r) => vec![
                GroupElement {
                    word: Vec::new(),
                    matrix: Mat2::identity(),
                    name: "id".into(),
                },
                GroupElement {
                    word: vec![Generator::S1],
                    matrix: r.matrix.clone(),
                    name: "s".into(),
                },
            ],
            SymmetryGroup::Dihedral(g) => g.elements().to_vec(),
        }
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> Vec<usize> {
        match self {
            SymmetryGroup::Single(_) => vec![1],
            SymmetryGroup::Dihedral(_) => vec![1, 2],
        }
    }

    /// Oriented mirror normals `η` (one) or `η1, η2` (two).
    pub fn mirror_normals(&self) -> Vec<LatticeVec> {
        match self {
            SymmetryGroup::Single(r) => vec![r.mirror_normal],
            SymmetryGroup::Dihedral(g) => vec![g.eta1, g.eta2],
        }
    }

    pub fn order(&self) -> usize {
        match self {
            SymmetryGroup::Single(_) => 2,
            SymmetryGroup::Dihedral(g) => g.order(),
        }
    }

    pub fn is_single(&self) -> bool {
        matches!(self, SymmetryGroup::Single(_))
    }

    /// Mirror-edge variable names, in generator order.
    pub fn mirror_names(&self) -> Vec<&'static str> {
        match self {
            SymmetryGroup::Single(_) => vec!["s"],
            SymmetryGroup::Dihedral(_) => vec!["s1", "s2"],
        }
    }

    /// Edge permutation of every element, in element order.
    pub fn edge_permutations(&self, p: &RationalPolygon) -> Result<Vec<Vec<usize>>, SymmetryError> {
        self.elements()
            .iter()
            .map(|e| edge_permutation(p, &e.matrix))
            .collect()
    }

    pub fn ensure_preserves(&self, p: &RationalPolygon) -> Result<(), SymmetryError> {
        self.edge_permutations(p).map(|_| ())
    }
}

/// The largest reflection group of `p`: `None` if `p` has no reflection.
pub fn maximal_group(p: &RationalPolygon) -> Result<Option<SymmetryGroup>, SymmetryError> {
    let refl = detect_reflections(p);
    match refl.len() {
        0 => Ok(None),
        1 => Ok(Some(SymmetryGroup::Single(refl[0].clone()))),
        r => {
            for j in 1..r {
                let g = DihedralGroup::new(refl[0].clone(), refl[j].clone())?;
                if g.ell() == r {
                    return Ok(Some(SymmetryGroup::Dihedral(g)));
                }
            }
            Err(SymmetryError::InconsistentGeometry(
                "reflections do not generate a dihedral group".into(),
            ))
        }
    }
}

pub fn classify_dihedral(p: &RationalPolygon, w: &DihedralGroup) -> Result<SymmetryCase, SymmetryError> {
    SymmetryGroup::Dihedral(w.clone()).ensure_preserves(p)?;
    let (r1, r2) = w.chamber_rays();
    let at_vertex = |r: &RatPoint| {
        let (_, hits) = ray_exit(p, r);
        hits.len() > 1
    };
    let v = [at_vertex(&r1), at_vertex(&r2)];
    Ok(match v.iter().filter(|&&b| b).count() {
        0 => SymmetryCase::Dihedral21,
        1 => SymmetryCase::Dihedral22,
        _ => SymmetryCase::Dihedral23,
    })
}

/// Point where the ray `t r, t > 0` leaves `p`, with the edges it lies on.
fn ray_exit(p: &RationalPolygon, r: &RatPoint) -> (RatPoint, Vec<usize>) {
    let mut best: Option<Rat> = None;
    let mut hits = Vec::new();
    for e in p.edges() {
        let s = pairing(r, &e.normal);
        if !s.is_positive() {
            continue;
        }
        let t = -(&e.offset / &s);
        match &best {
            Some(b) if &t > b => {}
            Some(b) if &t == b => hits.push(e.index),
            _ => {
                best = Some(t);
                hits = vec![e.index];
            }
        }
    }
    let t = best.expect("origin is interior, every ray exits");
    (r.scale(&t), hits)
}

/// Which generator (if any) stabilizes an inherited edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stabilizer {
    Trivial,
    Generator(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InheritedEdge {
    pub region_index: usize,
    /// Index `j` of `E_j`.
    pub label: usize,
    pub parent: usize,
    pub truncated: bool,
    pub stabilizer: Stabilizer,
}

impl InheritedEdge {
    pub fn name(&self) -> String {
        format!("E{}", self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorEdge {
    pub region_index: usize,
    /// 0 for `s1` (or the single reflection), 1 for `s2`.
    pub generator: usize,
    pub eta: LatticeVec,
}

/// The region `P/W` with each edge labeled inherited or mirror.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalRegion {
    pub polygon: RationalPolygon,
    /// Inherited edges in traversal order starting next to the first mirror edge.
    pub inherited: Vec<InheritedEdge>,
    pub mirrors: Vec<MirrorEdge>,
    /// The `n` of the edge labeling `E_1, ..., E_n`.
    pub n: usize,
    pub case: SymmetryCase,
}

impl FundamentalRegion {
    /// Variable name of each region edge, indexed by region edge.
    pub fn variable_names(&self, group: &SymmetryGroup) -> Vec<String> {
        let mut names = vec![String::new(); self.polygon.num_edges()];
        for e in &self.inherited {
            names[e.region_index] = e.name();
        }
        let mnames = group.mirror_names();
        for m in &self.mirrors {
            names[m.region_index] = format!("E{}", mnames[m.generator]);
        }
        names
    }

    pub fn inherited_by_label(&self, label: usize) -> Option<&InheritedEdge> {
        self.inherited.iter().find(|e| e.label == label)
    }

    pub fn mirror_region_index(&self, generator: usize) -> usize {
        self.mirrors
            .iter()
            .find(|m| m.generator == generator)
            .expect("mirror edge present")
            .region_index
    }
}

fn clip(poly: &[RatPoint], eta: &LatticeVec) -> Vec<RatPoint> {
    let k = poly.len();
    let mut out = Vec::new();
    for i in 0..k {
        let a = &poly[i];
        let b = &poly[(i + 1) % k];
        let fa = pairing(a, eta);
        let fb = pairing(b, eta);
        if !fa.is_positive() {
            out.push(a.clone());
        }
        if fa.signum() * fb.signum() < 0 {
            let t = &fa / (&fa - &fb);
            out.push(a.add(&b.sub(a).scale(&t)));
        }
    }
    out
}

/// Builds `P/W`: `P ∩ {<x, η> <= 0}` for one reflection, or the chamber
/// `P ∩ {<x, η1> <= 0} ∩ {<x, η2> <= 0}` for a dihedral group.
pub fn fundamental_region(
    p: &RationalPolygon,
    group: &SymmetryGroup,
) -> Result<FundamentalRegion, SymmetryError> {
    let perms = group.edge_permutations(p)?;
    let etas = group.mirror_normals();
    let mut pts = p.vertices().to_vec();
    for eta in &etas {
        pts = clip(&pts, eta);
    }
    let region = RationalPolygon::from_vertices_unanchored(&pts)?;
    if &region.area() * Rat::from_int(group.order() as i64) != p.area() {
        return Err(SymmetryError::InconsistentGeometry(
            "region area times group order differs from the polygon area".into(),
        ));
    }
    let r = region.num_edges();
    let mut mirror_at: Vec<Option<usize>> = vec![None; r];
    let mut parent_at: Vec<Option<usize>> = vec![None; r];
    for (i, e) in region.edges().iter().enumerate() {
        if e.offset.is_zero() {
            if let Some(k) = etas.iter().position(|eta| *eta == e.normal) {
                mirror_at[i] = Some(k);
                continue;
            }
        }
        let parent = p
            .edges()
            .iter()
            .position(|f| f.normal == e.normal && f.offset == e.offset)
            .ok_or_else(|| {
                SymmetryError::InconsistentGeometry(format!("region edge {i} has no parent"))
            })?;
        parent_at[i] = Some(parent);
    }
    let mirrors: Vec<MirrorEdge> = (0..r)
        .filter_map(|i| {
            mirror_at[i].map(|k| MirrorEdge {
                region_index: i,
                generator: k,
                eta: etas[k],
            })
        })
        .collect();
    if mirrors.len() != etas.len() {
        return Err(SymmetryError::InconsistentGeometry(format!(
            "expected {} mirror edges, found {}",
            etas.len(),
            mirrors.len()
        )));
    }
    let gens = group.generator_indices();
    let stabilizer = |parent: usize| -> Result<Stabilizer, SymmetryError> {
        let fixing: Vec<usize> = (1..perms.len()).filter(|&u| perms[u][parent] == parent).collect();
        match fixing.as_slice() {
            [] => Ok(Stabilizer::Trivial),
            [u] => gens
                .iter()
                .position(|g| g == u)
                .map(Stabilizer::Generator)
                .ok_or_else(|| {
                    SymmetryError::PartitionFailure(format!(
                        "edge {parent} is fixed by a non-generator"
                    ))
                }),
            _ => Err(SymmetryError::PartitionFailure(format!(
                "edge {parent} has a stabilizer of order {}",
                fixing.len() + 1
            ))),
        }
    };
    // Walk the inherited chain away from the first mirror edge.
    let a = mirrors.iter().find(|m| m.generator == 0).expect("first mirror").region_index;
    let forward = match mirrors.iter().find(|m| m.generator == 1) {
        Some(m2) => m2.region_index != (a + 1) % r,
        None => true,
    };
    let mut chain = Vec::new();
    for step in 1..r {
        let i = if forward { (a + step) % r } else { (a + r - step) % r };
        if let Some(parent) = parent_at[i] {
            let full = p.edge(parent);
            let e = region.edge(i);
            chain.push((i, parent, e.start != full.start || e.end != full.end, stabilizer(parent)?));
        }
    }
    let mut inherited = Vec::with_capacity(chain.len());
    let (n, case) = match group {
        SymmetryGroup::Single(sigma) => {
            let free = chain.iter().filter(|c| c.3 == Stabilizer::Trivial).count();
            let mut next_free = 1;
            let mut next_fixed = 2 * free + 1;
            for &(i, parent, truncated, stab) in &chain {
                let label = if stab == Stabilizer::Trivial {
                    next_free += 1;
                    next_free - 1
                } else {
                    next_fixed += 1;
                    next_fixed - 1
                };
                inherited.push(InheritedEdge {
                    region_index: i,
                    label,
                    parent,
                    truncated,
                    stabilizer: stab,
                });
            }
            let case = match next_fixed - (2 * free + 1) {
                2 => SymmetryCase::Single11,
                1 => SymmetryCase::Single12,
                _ => SymmetryCase::Single13,
            };
            let classified = classify_single(p, sigma)?;
            if classified != case {
                return Err(SymmetryError::CaseMismatch(format!(
                    "region labels give {case}, mirror incidence gives {classified}"
                )));
            }
            (free, case)
        }
        SymmetryGroup::Dihedral(w) => {
            let starts_fixed = chain.first().map(|c| c.3) == Some(Stabilizer::Generator(0));
            let ends_fixed = chain.last().map(|c| c.3) == Some(Stabilizer::Generator(1));
            let first_label = if starts_fixed { 1 } else { 2 };
            for (k, &(i, parent, truncated, stab)) in chain.iter().enumerate() {
                let interior = k > 0 && k + 1 < chain.len();
                if interior && stab != Stabilizer::Trivial {
                    return Err(SymmetryError::PartitionFailure(format!(
                        "middle edge {parent} has a nontrivial stabilizer"
                    )));
                }
                inherited.push(InheritedEdge {
                    region_index: i,
                    label: first_label + k,
                    parent,
                    truncated,
                    stabilizer: stab,
                });
            }
            let last = first_label + chain.len() - 1;
            let n = if ends_fixed { last } else { last + 1 };
            let case = match (starts_fixed, ends_fixed) {
                (true, true) => SymmetryCase::Dihedral21,
                (false, false) => SymmetryCase::Dihedral23,
                _ => SymmetryCase::Dihedral22,
            };
            let classified = classify_dihedral(p, w)?;
            if classified != case {
                return Err(SymmetryError::CaseMismatch(format!(
                    "region labels give {case}, chamber walls give {classified}"
                )));
            }
            (n, case)
        }
    };
    Ok(FundamentalRegion {
        polygon: region,
        inherited,
        mirrors,
        n,
        case,
    })
}

/// One block of the facet decomposition: the edges `u(E_j)` for `u` in a
/// set of representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitBlock {
    pub label: usize,
    /// Element indices used as representatives.
    pub reps: Vec<usize>,
    /// `edges[k] = reps[k](E_j)` as parent edge indices.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub blocks: Vec<OrbitBlock>,
    /// For each parent edge: `(element index, label)` with `edge = u(E_label)`.
    pub labels: Vec<(usize, usize)>,
}

/// Writes every edge of `P` uniquely as `u(E_j)`. Edges fixed by `s_i` use
/// the minimal coset representatives `^{s_i}W`, free edges use all of `W`.
pub fn orbit_decomposition(
    p: &RationalPolygon,
    group: &SymmetryGroup,
    region: &FundamentalRegion,
) -> Result<OrbitDecomposition, SymmetryError> {
    let perms = group.edge_permutations(p)?;
    let mut labels: Vec<Option<(usize, usize)>> = vec![None; p.num_edges()];
    let mut blocks = Vec::new();
    for e in &region.inherited {
        let reps: Vec<usize> = match (group, e.stabilizer) {
            (_, Stabilizer::Trivial) => (0..perms.len()).collect(),
            (SymmetryGroup::Single(_), Stabilizer::Generator(_)) => vec![0],
            (SymmetryGroup::Dihedral(w), Stabilizer::Generator(0)) => w.coset_reps_s1().to_vec(),
            (SymmetryGroup::Dihedral(w), Stabilizer::Generator(_)) => w.coset_reps_s2().to_vec(),
        };
        let mut edges = Vec::with_capacity(reps.len());
        for &u in &reps {
            let f = perms[u][e.parent];
            if let Some((_, j)) = labels[f] {
                return Err(SymmetryError::PartitionFailure(format!(
                    "edge {f} labeled twice (E{j} and E{})",
                    e.label
                )));
            }
            labels[f] = Some((u, e.label));
            edges.push(f);
        }
        blocks.push(OrbitBlock {
            label: e.label,
            reps,
            edges,
        });
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(f, l)| l.ok_or_else(|| SymmetryError::PartitionFailure(format!("edge {f} unlabeled"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OrbitDecomposition { blocks, labels })
}

/// One coefficient row: `λ(u(E_j)) - λ(E_j) = Σ_k coeffs[k] η_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffEntry {
    pub element: usize,
    pub element_name: String,
    pub label: usize,
    pub edge: usize,
    pub coeffs: Vec<Rat>,
    /// Whether `(u, j)` indexes an edge in the facet decomposition.
    pub in_decomposition: bool,
}

/// The coefficient systems `c` (and `d` for a dihedral group).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffTable {
    pub mirrors: Vec<LatticeVec>,
    pub entries: Vec<CoeffEntry>,
}

impl CoeffTable {
    pub fn get(&self, element_name: &str, label: usize) -> Option<&CoeffEntry> {
        self.entries
            .iter()
            .find(|e| e.element_name == element_name && e.label == label)
    }

    pub fn c(&self, element_name: &str, label: usize) -> Option<&Rat> {
        self.get(element_name, label).map(|e| &e.coeffs[0])
    }

    pub fn d(&self, element_name: &str, label: usize) -> Option<&Rat> {
        self.get(element_name, label).and_then(|e| e.coeffs.get(1))
    }

    /// Coefficient for mirror `k` of the decomposition entry owning `edge`.
    pub fn for_edge(&self, edge: usize, k: usize) -> Rat {
        self.entries
            .iter()
            .find(|e| e.in_decomposition && e.edge == edge)
            .map(|e| e.coeffs[k].clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn all_integral(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.coeffs.iter().all(Rat::is_integer))
    }

    /// `c_{id,j} = c_{s2,j} = d_{id,j} = d_{s1,j} = 0` for every `j`.
    pub fn vanishing_holds(&self) -> bool {
        self.entries.iter().all(|e| {
            let c_ok = !(e.element_name == "id" || e.element_name == "s2") || e.coeffs[0].is_zero();
            let d_ok = e.coeffs.len() < 2
                || !(e.element_name == "id" || e.element_name == "s1")
                || e.coeffs[1].is_zero();
            c_ok && d_ok
        })
    }

    /// A copy with one decomposition coefficient shifted by `delta`.
    pub fn perturbed(&self, entry: usize, mirror: usize, delta: &Rat) -> CoeffTable {
        let mut t = self.clone();
        t.entries[entry].coeffs[mirror] += delta;
        t
    }
}

/// Solves `λ(u(E_j)) - λ(E_j)` in the basis of the mirror normals for every
/// group element `u` and inherited edge `E_j`.
pub fn coefficients(
    p: &RationalPolygon,
    group: &SymmetryGroup,
    region: &FundamentalRegion,
) -> Result<CoeffTable, SymmetryError> {
    let perms = group.edge_permutations(p)?;
    let elements = group.elements();
    let etas = group.mirror_normals();
    let decomposition = orbit_decomposition(p, group, region)?;
    let basis = RatMatrix::from_columns(
        2,
        &etas.iter().map(|e| e.to_rat().to_vec()).collect::<Vec<_>>(),
    );
    let mut entries = Vec::new();
    for e in &region.inherited {
        let base = p.edge(e.parent).normal;
        for (u, el) in elements.iter().enumerate() {
            let f = perms[u][e.parent];
            let img = p.edge(f).normal;
            let delta = [Rat::from_int(img.x - base.x), Rat::from_int(img.y - base.y)];
            let coeffs = basis.solve(&delta).map_err(|_| {
                SymmetryError::InconsistentGeometry(format!(
                    "λ({}(E{})) - λ(E{}) = ({}, {}) is not in the span of the mirror normals",
                    el.name, e.label, e.label, delta[0], delta[1]
                ))
            })?;
            entries.push(CoeffEntry {
                element: u,
                element_name: el.name.clone(),
                label: e.label,
                edge: f,
                coeffs,
                in_decomposition: decomposition.labels[f] == (u, e.label),
            });
        }
    }
    Ok(CoeffTable {
        mirrors: etas,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> RatPoint {
        RatPoint::from_ints(x, y)
    }

    fn poly(v: &[(i64, i64)]) -> RationalPolygon {
        RationalPolygon::from_vertices(&v.iter().map(|&(x, y)| pt(x, y)).collect::<Vec<_>>())
            .unwrap()
    }

    fn square() -> RationalPolygon {
        poly(&[(1, 1), (-1, 1), (-1, -1), (1, -1)])
    }

    fn hexagon() -> RationalPolygon {
        poly(&[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
    }

    fn mirror_y0() -> Reflection {
        Reflection::from_ints([[1, 0], [0, -1]]).unwrap()
    }

    #[test]
    fn reflection_normal_and_validation() {
        assert_eq!(mirror_y0().mirror_normal, LatticeVec::new(0, 1));
        let diag = Reflection::from_ints([[0, 1], [1, 0]]).unwrap();
        assert_eq!(diag.mirror_normal, LatticeVec::new(1, -1));
        assert!(Reflection::from_ints([[0, -1], [1, 0]]).is_err());
        assert!(Reflection::from_ints([[1, 0], [0, 1]]).is_err());
    }

    #[test]
    fn square_has_four_reflections() {
        let r = detect_reflections(&square());
        assert_eq!(r.len(), 4);
        for x in &r {
            assert!(x.matrix.mul(&x.matrix).is_identity());
            assert_eq!(x.matrix.det(), Rat::from_int(-1));
        }
    }

    #[test]
    fn scalene_triangle_has_none() {
        assert!(detect_reflections(&poly(&[(3, -1), (-1, 2), (-2, -3)])).is_empty());
    }

    #[test]
    fn non_lattice_reflection_is_rejected() {
        // Swapping x and y maps this rhombus-like quadrilateral's vertices to
        // themselves only if the normals match; here they do not exist at all.
        let rect = poly(&[(2, 1), (-2, 1), (-2, -1), (2, -1)]);
        let swap = Reflection::from_ints([[0, 1], [1, 0]]).unwrap();
        assert!(matches!(
            induced_edge_permutation(&rect, &swap),
            Err(SymmetryError::NotASymmetry(_))
        ));
        assert_eq!(detect_reflections(&rect).len(), 2);
    }

    #[test]
    fn square_permutations() {
        let s = square();
        // edges: 0 right, 1 top, 2 left, 3 bottom
        assert_eq!(induced_edge_permutation(&s, &mirror_y0()).unwrap(), vec![0, 3, 2, 1]);
        let diag = Reflection::from_ints([[0, 1], [1, 0]]).unwrap();
        let p = induced_edge_permutation(&s, &diag).unwrap();
        assert_eq!(p, vec![1, 0, 3, 2]);
        assert!((0..4).all(|i| p[i] != i));
    }

    #[test]
    fn single_classification() {
        let s = square();
        assert_eq!(classify_single(&s, &mirror_y0()).unwrap(), SymmetryCase::Single11);
        let diag = Reflection::from_ints([[0, 1], [1, 0]]).unwrap();
        assert_eq!(classify_single(&s, &diag).unwrap(), SymmetryCase::Single13);
        let house = poly(&[(-1, -1), (1, -1), (1, 1), (0, 2), (-1, 1)]);
        let flip = Reflection::from_ints([[-1, 0], [0, 1]]).unwrap();
        assert_eq!(classify_single(&house, &flip).unwrap(), SymmetryCase::Single12);
    }

    #[test]
    fn dihedral_orders() {
        let g = DihedralGroup::new(mirror_y0(), Reflection::from_ints([[-1, 0], [0, 1]]).unwrap())
            .unwrap();
        assert_eq!(g.ell(), 2);
        assert_eq!(g.order(), 4);
        // Hexagon mirrors x = y and y = 0 direction... pick two adjacent ones.
        let h = hexagon();
        let refl = detect_reflections(&h);
        assert_eq!(refl.len(), 6);
        let mut ells: Vec<usize> = (1..6)
            .map(|j| DihedralGroup::new(refl[0].clone(), refl[j].clone()).unwrap().ell())
            .collect();
        ells.sort();
        assert_eq!(ells, vec![2, 3, 3, 6, 6]);
        assert!(matches!(
            DihedralGroup::new(refl[0].clone(), refl[0].clone()),
            Err(SymmetryError::EllTooSmall(1))
        ));
    }

    #[test]
    fn coset_representatives_partition() {
        let refl = detect_reflections(&hexagon());
        for j in 1..refl.len() {
            let g = DihedralGroup::new(refl[0].clone(), refl[j].clone()).unwrap();
            for (reps, s) in [(g.coset_reps_s1(), g.s1()), (g.coset_reps_s2(), g.s2())] {
                assert_eq!(reps.len(), g.ell());
                let mut seen = Vec::new();
                for &u in reps {
                    let e = &g.elements()[u];
                    seen.push(e.matrix.clone());
                    seen.push(e.matrix.mul(&s.matrix));
                }
                for e in g.elements() {
                    assert_eq!(seen.iter().filter(|m| **m == e.matrix).count(), 1);
                }
            }
        }
    }

    #[test]
    fn square_region_and_coefficient() {
        let s = square();
        let g = SymmetryGroup::Single(mirror_y0());
        let r = fundamental_region(&s, &g).unwrap();
        assert_eq!(r.case, SymmetryCase::Single11);
        assert_eq!(r.n, 1);
        let expected =
            RationalPolygon::from_vertices_unanchored(&[pt(-1, -1), pt(1, -1), pt(1, 0), pt(-1, 0)])
                .unwrap();
        assert_eq!(r.polygon, expected);
        let e1 = r.inherited_by_label(1).unwrap();
        assert_eq!(e1.parent, 3);
        assert!(!e1.truncated);
        let e3 = r.inherited_by_label(3).unwrap();
        let e4 = r.inherited_by_label(4).unwrap();
        assert!(e3.truncated && e4.truncated);
        assert_eq!(
            {
                let mut v = vec![e3.parent, e4.parent];
                v.sort();
                v
            },
            vec![0, 2]
        );
        let c = coefficients(&s, &g, &r).unwrap();
        // λ_top - λ_bottom = (0, 2) = 2 η with η = (0, 1).
        assert_eq!(c.c("s", 1), Some(&Rat::from_int(2)));
        assert_eq!(c.c("id", 1), Some(&Rat::zero()));
    }

    #[test]
    fn hexagon_cases() {
        let h = hexagon();
        let refl = detect_reflections(&h);
        let inc: Vec<usize> = refl
            .iter()
            .map(|r| mirror_incidence(&h, &r.mirror_normal).vertices.len())
            .collect();
        let through_vertex: Vec<usize> = (0..6).filter(|&i| inc[i] == 2).collect();
        let through_edge: Vec<usize> = (0..6).filter(|&i| inc[i] == 0).collect();
        assert_eq!(through_vertex.len(), 3);
        assert_eq!(through_edge.len(), 3);
        let v = DihedralGroup::new(refl[through_vertex[0]].clone(), refl[through_vertex[1]].clone())
            .unwrap();
        assert_eq!(v.ell(), 3);
        assert_eq!(classify_dihedral(&h, &v).unwrap(), SymmetryCase::Dihedral23);
        let e = DihedralGroup::new(refl[through_edge[0]].clone(), refl[through_edge[1]].clone())
            .unwrap();
        assert_eq!(classify_dihedral(&h, &e).unwrap(), SymmetryCase::Dihedral21);
        let full = maximal_group(&h).unwrap().unwrap();
        let SymmetryGroup::Dihedral(full) = full else { panic!() };
        assert_eq!(full.ell(), 6);
        assert_eq!(classify_dihedral(&h, &full).unwrap(), SymmetryCase::Dihedral22);
    }

    #[test]
    fn orientation_override_is_validated() {
        let g = DihedralGroup::new(mirror_y0(), Reflection::from_ints([[-1, 0], [0, 1]]).unwrap())
            .unwrap();
        let bad = g.clone().with_orientation(LatticeVec::new(1, 1), g.eta2());
        assert_eq!(bad, Err(SymmetryError::OrientationAmbiguous));
        let ok = g.clone().with_orientation(g.eta1().neg(), g.eta2()).unwrap();
        assert_eq!(ok.eta1(), g.eta1().neg());
    }
}
