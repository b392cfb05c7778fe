//! Shared fixtures: a polygon corpus, a brute-force cohomology oracle and
//! the named verification instances.
#![allow(dead_code)]

use std::collections::BTreeMap;

use toric_mirror::builtins::builtin;
use toric_mirror::cli::resolve_group;
use toric_mirror::exactlin::{Rat, RatMatrix};
use toric_mirror::geometry::{det, RatPoint, RationalPolygon};
use toric_mirror::symmetry::{SymmetryCase, SymmetryGroup};

/// Rational point on the circle of radius `r` at parameter `t = tan(θ/2)`.
fn circle_point(t: &Rat, r: &Rat) -> RatPoint {
    let one = Rat::one();
    let t2 = t * t;
    let den = &one + &t2;
    let x = &(&(&one - &t2) / &den) * r;
    let y = &(&(&Rat::from_int(2) * t) / &den) * r;
    RatPoint::new(x, y)
}

/// An irregular m-gon with rational vertices on a circle. Angles are jittered
/// per index so consecutive gaps differ.
pub fn circle_polygon(m: usize, seed: u64, radius: Rat) -> RationalPolygon {
    let mut pts = Vec::with_capacity(m);
    for k in 0..m {
        let jitter = (((seed + 7 * k as u64) % 11) as f64 - 5.0) / 40.0;
        let theta = -std::f64::consts::PI + 0.3 + (k as f64 + 0.5 + jitter) * 2.0 * std::f64::consts::PI / m as f64;
        let t = (theta / 2.0).tan();
        let q = 12i64;
        let t = Rat::new((t * q as f64).round() as i64, q);
        pts.push(circle_point(&t, &radius));
    }
    RationalPolygon::from_vertices(&pts).expect("corpus polygon is valid")
}

fn lattice(v: &[(i64, i64)]) -> RationalPolygon {
    let pts: Vec<RatPoint> = v.iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect();
    RationalPolygon::from_vertices(&pts).unwrap()
}

fn rational(v: &[(i64, i64, i64)]) -> RationalPolygon {
    let pts: Vec<RatPoint> = v
        .iter()
        .map(|&(x, y, d)| RatPoint::new(Rat::new(x, d), Rat::new(y, d)))
        .collect();
    RationalPolygon::from_vertices(&pts).unwrap()
}

/// Named polygons with 3 to 12 edges: builtins, hand-written lattice and
/// rational polygons, and circle polygons for every edge count.
pub fn corpus() -> Vec<(String, RationalPolygon)> {
    let mut out: Vec<(String, RationalPolygon)> = Vec::new();
    for n in ["square", "hexagon", "house", "triangle", "g2", "d12", "a2", "b2", "c2", "asym"] {
        out.push((n.to_string(), builtin(n).unwrap()));
    }
    out.push(("hirzebruch2".into(), lattice(&[(-1, -1), (3, -1), (1, 1), (-1, 1)])));
    out.push(("wp123".into(), lattice(&[(-1, -1), (5, -1), (-1, 2)])));
    out.push(("kite".into(), rational(&[(0, -3, 2), (5, 1, 3), (0, 7, 4), (-2, 1, 1)])));
    out.push((
        "skew-pentagon".into(),
        rational(&[(-1, -1, 1), (7, -2, 3), (9, 4, 5), (1, 3, 2), (-5, 2, 3)]),
    ));
    out.push((
        "blowup-heptagon".into(),
        lattice(&[(-2, -1), (-1, -2), (1, -2), (2, -1), (2, 1), (0, 2), (-2, 1)]),
    ));
    for m in 3..=12 {
        for seed in [1u64, 5] {
            let r = Rat::new(3 + seed as i64, 2);
            out.push((format!("circle{m}-{seed}"), circle_polygon(m, seed, r)));
        }
    }
    out
}

/// Index of degree-2 monomials `x_i x_j`, `i <= j`.
fn quadratic_index(m: usize) -> BTreeMap<(usize, usize), usize> {
    let mut index = BTreeMap::new();
    for i in 0..m {
        for j in i..m {
            let k = index.len();
            index.insert((i, j), k);
        }
    }
    index
}

/// Brute-force description of `H^4` straight from the normals: every
/// degree-2 relation `x_i x_j` (non-adjacent) and `x_k · L` is a row; the
/// quotient is read off a full RREF.
pub struct Oracle {
    pub m: usize,
    pub deg2_dim: usize,
    pub deg4_dim: usize,
    /// Functional on quadratic monomials vanishing on the relations,
    /// normalized so that `x_0 x_1` evaluates to `1/|det(λ_0, λ_1)|`.
    functional: Vec<Rat>,
    index: BTreeMap<(usize, usize), usize>,
}

impl Oracle {
    pub fn new(p: &RationalPolygon) -> Self {
        let normals = p.normals();
        let m = normals.len();
        let lin: Vec<Vec<Rat>> = vec![
            normals.iter().map(|n| Rat::from_int(n.x)).collect(),
            normals.iter().map(|n| Rat::from_int(n.y)).collect(),
        ];
        let deg2_dim = m - RatMatrix::from_rows(lin.clone()).unwrap().rank();

        let index = quadratic_index(m);
        let key = |a: usize, b: usize| index[&(a.min(b), a.max(b))];
        let adjacent = |a: usize, b: usize| (a + 1) % m == b || (b + 1) % m == a;
        let mut rows = Vec::new();
        if m > 3 {
            for i in 0..m {
                for j in i + 1..m {
                    if !adjacent(i, j) {
                        let mut r = vec![Rat::zero(); index.len()];
                        r[key(i, j)] = Rat::one();
                        rows.push(r);
                    }
                }
            }
        }
        for l in &lin {
            for k in 0..m {
                let mut r = vec![Rat::zero(); index.len()];
                for (i, c) in l.iter().enumerate() {
                    r[key(k, i)] += c;
                }
                rows.push(r);
            }
        }
        let rel = RatMatrix::from_rows(rows).unwrap();
        let (rref, pivots) = rel.rref();
        let deg4_dim = index.len() - pivots.len();

        // The annihilator of the row space is the kernel of the RREF.
        let ker = rref.kernel_basis();
        let functional = if ker.len() == 1 {
            let f = ker[0].clone();
            let scale = Rat::new(1, det(&normals[0], &normals[1]).unsigned_abs() as i64);
            let at01 = f[key(0, 1)].clone();
            assert!(!at01.is_zero(), "adjacent product vanishes");
            let s = &scale / &at01;
            f.iter().map(|c| c * &s).collect()
        } else {
            Vec::new()
        };
        Oracle {
            m,
            deg2_dim,
            deg4_dim,
            functional,
            index,
        }
    }

    /// `∫ x_i x_j`.
    pub fn integral(&self, i: usize, j: usize) -> Rat {
        self.functional[self.index[&(i.min(j), i.max(j))]].clone()
    }

    /// Pairing matrix on a chosen set of degree-2 variables.
    pub fn pairing(&self, basis: &[usize]) -> RatMatrix {
        let rows = basis
            .iter()
            .map(|&i| basis.iter().map(|&j| self.integral(i, j)).collect())
            .collect();
        RatMatrix::from_rows(rows).unwrap()
    }
}

/// A verification instance: polygon, group selector and expected outcome.
pub struct Named {
    pub name: String,
    pub polygon: RationalPolygon,
    pub group: SymmetryGroup,
    pub case: SymmetryCase,
    pub n: usize,
}

fn named(poly: &str, spec: &str, case: SymmetryCase, n: usize) -> Named {
    let polygon = builtin(poly).unwrap();
    let group = resolve_group(&polygon, spec).unwrap();
    Named {
        name: format!("{poly} {spec}"),
        polygon,
        group,
        case,
        n,
    }
}

/// Instances spanning all six cases. Reflection indices follow
/// `detect_reflections` order.
pub fn suite() -> Vec<Named> {
    use SymmetryCase::*;
    vec![
        named("square", "reflection:1", Single11, 1),
        named("square", "reflection:3", Single11, 1),
        named("square", "reflection:0", Single13, 2),
        named("house", "reflection:0", Single12, 2),
        named("triangle", "reflection:0", Single12, 1),
        named("hexagon", "reflection:1", Single11, 2),
        named("hexagon", "reflection:0", Single13, 3),
        named("g2", "reflection:0", Single11, 5),
        named("d12", "reflection:0", Single13, 6),
        named("g2", "auto", Dihedral21, 2),
        named("g2", "dihedral:0,2", Dihedral21, 3),
        named("g2", "dihedral:0,3", Dihedral21, 4),
        named("d12", "auto", Dihedral23, 3),
        named("d12", "dihedral:0,2", Dihedral23, 4),
        named("d12", "dihedral:0,3", Dihedral23, 5),
        named("hexagon", "auto", Dihedral22, 2),
        named("hexagon", "dihedral:0,3", Dihedral22, 3),
        named("hexagon", "dihedral:0,2", Dihedral23, 3),
        named("hexagon", "dihedral:1,3", Dihedral21, 2),
        named("square", "auto", Dihedral22, 2),
        named("square", "dihedral:1,3", Dihedral21, 2),
        named("square", "dihedral:0,2", Dihedral23, 3),
        named("triangle", "auto", Dihedral22, 2),
        named("a2", "auto", Dihedral22, 2),
        named("b2", "auto", Dihedral21, 2),
        named("c2", "auto", Dihedral21, 2),
    ]
}
