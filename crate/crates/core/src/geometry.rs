//! Convex rational polygons in `M ⊗ R` described by primitive outward normals.
//!
//! Coordinates on `M` and `N` are taken in a fixed pair of dual bases, so the
//! pairing `<m, n>` is the dot product. A polygon is stored both as its
//! counterclockwise vertex cycle and as one half-space `<x, λ_i> + a_i <= 0`
//! per edge. The edge list is rotated so that edge 0 carries the normal with
//! the smallest polar angle in `[0, 2π)`; two descriptions of the same
//! polygon therefore compare equal.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactlin::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("vertices are not in strictly convex position")]
    NotConvex,
    #[error("three consecutive vertices are collinear around vertex {0}")]
    CollinearTriple(usize),
    #[error("the origin is not in the interior of the polygon")]
    OriginNotInterior,
    #[error("half-spaces do not bound a polygon")]
    Unbounded,
    #[error("half-space {0} does not contribute an edge")]
    RedundantHalfspace(usize),
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("normal {0} is not primitive")]
    NonPrimitiveNormal(LatticeVec),
    #[error("offset {0} must be negative")]
    NonNegativeOffset(Rat),
    #[error("integer coordinate does not fit in 64 bits")]
    Overflow,
    #[error("edge index {0} out of range")]
    EdgeIndex(usize),
}

/// A vector of the lattice `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeVec {
    pub x: i64,
    pub y: i64,
}

impl LatticeVec {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticeVec { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.x.gcd(&self.y) == 1
    }

    pub fn neg(&self) -> Self {
        LatticeVec::new(-self.x, -self.y)
    }

    pub fn to_rat(&self) -> [Rat; 2] {
        [Rat::from_int(self.x), Rat::from_int(self.y)]
    }

    /// Sign chosen so the first nonzero coordinate is positive.
    pub fn canonical_sign(&self) -> Self {
        if self.x < 0 || (self.x == 0 && self.y < 0) {
            self.neg()
        } else {
            *self
        }
    }

    fn half(&self) -> u8 {
        if self.y > 0 || (self.y == 0 && self.x > 0) {
            0
        } else {
            1
        }
    }

    /// Orders nonzero vectors by polar angle in `[0, 2π)`.
    pub fn angle_cmp(&self, other: &LatticeVec) -> Ordering {
        self.half().cmp(&other.half()).then_with(|| {
            let c = det(self, other);
            0.cmp(&c)
        })
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `det(a, b) = a.x * b.y - a.y * b.x`, computed in 128 bits.
pub fn det(a: &LatticeVec, b: &LatticeVec) -> i128 {
    a.x as i128 * b.y as i128 - a.y as i128 * b.x as i128
}

/// A point of `M ⊗ R` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RatPoint::new(Rat::from_int(x), Rat::from_int(y))
    }

    pub fn origin() -> Self {
        RatPoint::new(Rat::zero(), Rat::zero())
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn sub(&self, o: &RatPoint) -> RatPoint {
        RatPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &RatPoint) -> RatPoint {
        RatPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, s: &Rat) -> RatPoint {
        RatPoint::new(&self.x * s, &self.y * s)
    }

    pub fn coords(&self) -> [Rat; 2] {
        [self.x.clone(), self.y.clone()]
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn cross(a: &RatPoint, b: &RatPoint) -> Rat {
    &a.x * &b.y - &a.y * &b.x
}

/// The pairing `<m, n>` between `M ⊗ Q` and `N`.
pub fn pairing(m: &RatPoint, n: &LatticeVec) -> Rat {
    &m.x * Rat::from_int(n.x) + &m.y * Rat::from_int(n.y)
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(x: i64, y: i64) -> Result<LatticeVec, GeometryError> {
    if x == 0 && y == 0 {
        return Err(GeometryError::ZeroVector);
    }
    let g = x.gcd(&y);
    Ok(LatticeVec::new(x / g, y / g))
}

/// The primitive lattice vector positively proportional to a rational vector.
pub fn primitive_rational(x: &Rat, y: &Rat) -> Result<LatticeVec, GeometryError> {
    if x.is_zero() && y.is_zero() {
        return Err(GeometryError::ZeroVector);
    }
    let l = x.denom().lcm(y.denom());
    let xi: BigInt = x.numer() * (&l / x.denom());
    let yi: BigInt = y.numer() * (&l / y.denom());
    let g = xi.gcd(&yi);
    let to = |v: BigInt| (v / &g).to_i64().ok_or(GeometryError::Overflow);
    Ok(LatticeVec::new(to(xi)?, to(yi)?))
}

/// One edge `F_i = { x : <x, λ_i> + a_i = 0 } ∩ P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub index: usize,
    pub start: RatPoint,
    pub end: RatPoint,
    pub normal: LatticeVec,
    pub offset: Rat,
}

impl Edge {
    /// `<x, λ> + a`; zero on the edge line, negative on the polygon side.
    pub fn evaluate(&self, x: &RatPoint) -> Rat {
        pairing(x, &self.normal) + &self.offset
    }

    pub fn midpoint(&self) -> RatPoint {
        self.start.add(&self.end).scale(&Rat::new(1, 2))
    }
}

/// A half-space `<x, normal> + offset <= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: LatticeVec,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: LatticeVec, offset: Rat) -> Self {
        Halfspace { normal, offset }
    }
}

/// A strictly convex rational polygon with cyclically ordered edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolygon {
    vertices: Vec<RatPoint>,
    edges: Vec<Edge>,
}

impl RationalPolygon {
    /// Builds the polygon with the given vertices, in either orientation.
    pub fn from_vertices(pts: &[RatPoint]) -> Result<Self, GeometryError> {
        let p = Self::build(pts)?;
        if p.edges.iter().any(|e| !e.offset.is_negative()) {
            return Err(GeometryError::OriginNotInterior);
        }
        Ok(p)
    }

    /// Like [`RationalPolygon::from_vertices`] but the origin may lie on the
    /// boundary or outside. Used for fundamental regions, whose mirror edges
    /// pass through the origin.
    pub(crate) fn from_vertices_unanchored(pts: &[RatPoint]) -> Result<Self, GeometryError> {
        Self::build(pts)
    }

    pub fn from_halfspaces(hs: &[Halfspace]) -> Result<Self, GeometryError> {
        for h in hs {
            if !h.normal.is_primitive() {
                return Err(GeometryError::NonPrimitiveNormal(h.normal));
            }
            if !h.offset.is_negative() {
                return Err(GeometryError::NonNegativeOffset(h.offset.clone()));
            }
        }
        if hs.len() < 3 {
            return Err(GeometryError::Unbounded);
        }
        let mut order: Vec<usize> = (0..hs.len()).collect();
        order.sort_by(|&a, &b| hs[a].normal.angle_cmp(&hs[b].normal));
        for w in order.windows(2) {
            if hs[w[0]].normal == hs[w[1]].normal {
                return Err(GeometryError::RedundantHalfspace(w[1]));
            }
        }
        let k = order.len();
        let sorted: Vec<&Halfspace> = order.iter().map(|&i| &hs[i]).collect();
        // Consecutive normals less than π apart; otherwise the region is unbounded.
        for i in 0..k {
            if det(&sorted[i].normal, &sorted[(i + 1) % k].normal) <= 0 {
                return Err(GeometryError::Unbounded);
            }
        }
        for i in 0..k {
            let prev = sorted[(i + k - 1) % k];
            let next = sorted[(i + 1) % k];
            if det(&prev.normal, &next.normal) > 0 {
                let p = line_intersection(prev, next);
                if !(pairing(&p, &sorted[i].normal) + &sorted[i].offset).is_positive() {
                    return Err(GeometryError::RedundantHalfspace(order[i]));
                }
            }
        }
        let vertices: Vec<RatPoint> = (0..k)
            .map(|i| line_intersection(sorted[(i + k - 1) % k], sorted[i]))
            .collect();
        let p = Self::from_vertices(&vertices)?;
        debug_assert_eq!(p.num_edges(), k);
        Ok(p)
    }

    fn build(pts: &[RatPoint]) -> Result<Self, GeometryError> {
        let m = pts.len();
        if m < 3 {
            return Err(GeometryError::TooFewVertices(m));
        }
        for i in 0..m {
            for j in i + 1..m {
                if pts[i] == pts[j] {
                    return Err(GeometryError::DuplicateVertex(pts[i].to_string()));
                }
            }
        }
        let twice_area: Rat = (0..m).map(|i| cross(&pts[i], &pts[(i + 1) % m])).sum();
        let mut v: Vec<RatPoint> = pts.to_vec();
        if twice_area.is_negative() {
            v.reverse();
        }
        for i in 0..m {
            let a = &v[(i + m - 1) % m];
            let b = &v[i];
            let c = &v[(i + 1) % m];
            if cross(&b.sub(a), &c.sub(b)).is_zero() {
                return Err(GeometryError::CollinearTriple(i));
            }
        }
        // Every other vertex strictly to the left of every edge.
        for i in 0..m {
            let a = &v[i];
            let d = v[(i + 1) % m].sub(a);
            for (j, w) in v.iter().enumerate() {
                if j == i || j == (i + 1) % m {
                    continue;
                }
                if !cross(&d, &w.sub(a)).is_positive() {
                    return Err(GeometryError::NotConvex);
                }
            }
        }
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let start = v[i].clone();
            let end = v[(i + 1) % m].clone();
            let d = end.sub(&start);
            let normal = primitive_rational(&d.y, &-d.x.clone())?;
            let offset = -pairing(&start, &normal);
            edges.push(Edge {
                index: i,
                start,
                end,
                normal,
                offset,
            });
        }
        let first = (0..m)
            .min_by(|&a, &b| edges[a].normal.angle_cmp(&edges[b].normal))
            .expect("nonempty");
        edges.rotate_left(first);
        v.rotate_left(first);
        for (i, e) in edges.iter_mut().enumerate() {
            e.index = i;
        }
        Ok(RationalPolygon { vertices: v, edges })
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn normals(&self) -> Vec<LatticeVec> {
        self.edges.iter().map(|e| e.normal).collect()
    }

    pub fn halfspaces(&self) -> Vec<Halfspace> {
        self.edges
            .iter()
            .map(|e| Halfspace::new(e.normal, e.offset.clone()))
            .collect()
    }

    /// Edges `i` and `j` share a vertex (an edge meets itself).
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let m = self.num_edges();
        assert!(i < m && j < m, "edge index out of range");
        let d = (i + m - j) % m;
        d == 0 || d == 1 || d == m - 1
    }

    pub fn edge_with_normal(&self, n: &LatticeVec) -> Option<usize> {
        self.edges.iter().position(|e| &e.normal == n)
    }

    pub fn vertex_index(&self, p: &RatPoint) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    pub fn area(&self) -> Rat {
        let m = self.vertices.len();
        let twice: Rat = (0..m)
            .map(|i| cross(&self.vertices[i], &self.vertices[(i + 1) % m]))
            .sum();
        twice * Rat::new(1, 2)
    }

    /// `max <x, λ_i> + a_i` over edges: negative strictly inside, zero on the
    /// boundary.
    pub fn support_value(&self, x: &RatPoint) -> Rat {
        self.edges
            .iter()
            .map(|e| e.evaluate(x))
            .max()
            .expect("nonempty")
    }

    pub fn is_lattice_polygon(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.x.is_integer() && v.y.is_integer())
    }
}

fn line_intersection(a: &Halfspace, b: &Halfspace) -> RatPoint {
    // Solve <x, λa> = -a_a and <x, λb> = -a_b by Cramer's rule.
    let d = Rat::from_bigint(BigInt::from(det(&a.normal, &b.normal)));
    let ra = -a.offset.clone();
    let rb = -b.offset.clone();
    let x = (&ra * Rat::from_int(b.normal.y) - &rb * Rat::from_int(a.normal.y)) / &d;
    let y = (&rb * Rat::from_int(a.normal.x) - &ra * Rat::from_int(b.normal.x)) / &d;
    RatPoint::new(x, y)
}

#[derive(Debug, Error)]
pub enum PolygonInputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid polygon description: {0}")]
    Schema(String),
    #[error("invalid rational: {0}")]
    Rational(#[from] crate::exactlin::ParseRatError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn rat_from_json(v: &Value) -> Result<Rat, PolygonInputError> {
    match v {
        Value::String(s) => Ok(s.parse()?),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_int(i))
            } else {
                Err(crate::exactlin::ParseRatError::Float(n.to_string()).into())
            }
        }
        other => Err(PolygonInputError::Schema(format!(
            "expected a rational, got {other}"
        ))),
    }
}

fn int_from_json(v: &Value) -> Result<i64, PolygonInputError> {
    v.as_i64()
        .ok_or_else(|| PolygonInputError::Schema(format!("expected an integer, got {v}")))
}

/// Parses the polygon JSON format: an object with `name` and exactly one of
/// `vertices` (pairs of rationals) or `halfspaces` (objects with an integer
/// `normal` pair and a rational `offset`). Rationals are `"p/q"` strings or
/// bare integers; floating-point numbers are rejected.
pub fn polygon_from_json(text: &str) -> Result<(String, RationalPolygon), PolygonInputError> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| PolygonInputError::Schema("top level must be an object".into()))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("unnamed")
        .to_string();
    match (obj.get("vertices"), obj.get("halfspaces")) {
        (Some(vs), None) => {
            let arr = vs
                .as_array()
                .ok_or_else(|| PolygonInputError::Schema("vertices must be an array".into()))?;
            let mut pts = Vec::with_capacity(arr.len());
            for p in arr {
                let pair = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                    PolygonInputError::Schema(format!("vertex {p} must be a pair"))
                })?;
                pts.push(RatPoint::new(rat_from_json(&pair[0])?, rat_from_json(&pair[1])?));
            }
            Ok((name, RationalPolygon::from_vertices(&pts)?))
        }
        (None, Some(hs)) => {
            let arr = hs
                .as_array()
                .ok_or_else(|| PolygonInputError::Schema("halfspaces must be an array".into()))?;
            let mut out = Vec::with_capacity(arr.len());
            for h in arr {
                let normal = h
                    .get("normal")
                    .and_then(Value::as_array)
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| PolygonInputError::Schema(format!("bad normal in {h}")))?;
                let offset = h
                    .get("offset")
                    .ok_or_else(|| PolygonInputError::Schema(format!("missing offset in {h}")))?;
                out.push(Halfspace::new(
                    LatticeVec::new(int_from_json(&normal[0])?, int_from_json(&normal[1])?),
                    rat_from_json(offset)?,
                ));
            }
            Ok((name, RationalPolygon::from_halfspaces(&out)?))
        }
        _ => Err(PolygonInputError::Schema(
            "exactly one of \"vertices\" or \"halfspaces\" is required".into(),
        )),
    }
}

/// The half-space form of a polygon in the input JSON schema.
pub fn polygon_to_json(name: &str, p: &RationalPolygon) -> Value {
    json!({
        "name": name,
        "halfspaces": p.edges().iter().map(|e| json!({
            "normal": [e.normal.x, e.normal.y],
            "offset": e.offset.to_string(),
        })).collect::<Vec<_>>(),
    })
}

/// Vertex form of a polygon in the input JSON schema.
pub fn polygon_vertices_json(name: &str, p: &RationalPolygon) -> Value {
    json!({
        "name": name,
        "vertices": p.vertices().iter()
            .map(|v| json!([v.x.to_string(), v.y.to_string()]))
            .collect::<Vec<_>>(),
    })
}
