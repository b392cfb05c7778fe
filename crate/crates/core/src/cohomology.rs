//! Rational cohomology of the toric surface of a polygon.
//!
//! `H*(X_P; Q) = Q[x_1..x_m] / (I + J)` with `I` the Stanley–Reisner ideal of
//! the normal fan and `J` generated by `Σ_i <e_r, λ_i> x_i`. The ring vanishes
//! above degree 4, so it is stored as explicit graded pieces: a basis of
//! `H^2` with a normal-form matrix, and the intersection form on `H^2 x H^2`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactlin::{Rat, RatMatrix};
use crate::geometry::{det, LatticeVec, RatPoint, RationalPolygon, pairing};
use crate::symmetry::{FundamentalRegion, SymmetryError, SymmetryGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("unexpected Betti numbers: expected {expected:?}, found {found:?}")]
    UnexpectedBettiNumber { expected: [usize; 3], found: [usize; 3] },
    #[error("Poincaré pairing is degenerate")]
    DegeneratePairing,
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("product table violates relation {0}")]
    TableInconsistent(String),
    #[error("elements of degree {0} and {1} cannot be combined")]
    DegreeMismatch(usize, usize),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// A polynomial with rational coefficients; monomials are sorted variable
/// index lists (with repetition).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<usize>, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rat) -> Self {
        Poly::monomial(Vec::new(), c)
    }

    pub fn var(i: usize) -> Self {
        Poly::monomial(vec![i], Rat::one())
    }

    pub fn monomial(mut vars: Vec<usize>, c: Rat) -> Self {
        vars.sort_unstable();
        let mut p = Poly::zero();
        p.add_term(vars, c);
        p
    }

    /// `Σ coeffs[i] x_i`.
    pub fn linear(coeffs: &[Rat]) -> Self {
        let mut p = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![i], c.clone());
        }
        p
    }

    fn add_term(&mut self, mono: Vec<usize>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let cancelled = {
            let entry = self.terms.entry(mono.clone()).or_insert_with(Rat::zero);
            *entry += c;
            entry.is_zero()
        };
        if cancelled {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &[usize]) -> Rat {
        let mut k = mono.to_vec();
        k.sort_unstable();
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Polynomial degree (number of variables per monomial) if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Vec::len);
        let d = it.next().unwrap_or(0);
        it.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(k.clone(), v.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&Rat::from_int(-1)))
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        let mut r = Poly::zero();
        for (k, v) in &self.terms {
            r.add_term(k.clone(), v * s);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                m.sort_unstable();
                r.add_term(m, x * y);
            }
        }
        r
    }

    /// Substitutes `images[i]` for `x_i`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let mut r = Poly::zero();
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for &v in mono {
                t = t.mul(&images[v]);
            }
            r = r.add(&t);
        }
        r
    }

    /// Renames variables: `x_i ↦ x_{map[i]}`.
    pub fn rename(&self, map: &[usize]) -> Poly {
        let mut r = Poly::zero();
        for (mono, c) in &self.terms {
            let mut m: Vec<usize> = mono.iter().map(|&v| map[v]).collect();
            m.sort_unstable();
            r.add_term(m, c.clone());
        }
        r
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body: Vec<&str> = mono.iter().map(|&v| names[v].as_str()).collect();
            if body.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&body.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self
            .terms
            .keys()
            .flat_map(|m| m.iter().copied())
            .max()
            .map_or(0, |v| v + 1);
        let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&self.display_with(&names))
    }
}

/// Generators of `I` and `J` for the normal fan of a polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub normals: Vec<LatticeVec>,
    pub sr_generators: Vec<Vec<usize>>,
    /// Row `r`: `(<e_r, λ_1>, ..., <e_r, λ_m>)`.
    pub linear_relations: RatMatrix,
}

impl Presentation {
    pub fn num_vars(&self) -> usize {
        self.normals.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let m = self.num_vars();
        i != j && ((i + 1) % m == j || (j + 1) % m == i)
    }

    pub fn sr_polys(&self) -> Vec<Poly> {
        self.sr_generators
            .iter()
            .map(|g| Poly::monomial(g.clone(), Rat::one()))
            .collect()
    }

    pub fn linear_polys(&self) -> Vec<Poly> {
        self.linear_relations
            .row_vecs()
            .iter()
            .map(|r| Poly::linear(r))
            .collect()
    }
}

pub fn presentation(p: &RationalPolygon) -> Presentation {
    presentation_from_normals(&p.normals())
}

/// Presentation of the complete fan with the given cyclically ordered rays.
pub fn presentation_from_normals(normals: &[LatticeVec]) -> Presentation {
    let m = normals.len();
    let sr_generators = if m == 3 {
        vec![vec![0, 1, 2]]
    } else {
        let mut g = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if (i + 1) % m != j && (j + 1) % m != i {
                    g.push(vec![i, j]);
                }
            }
        }
        g
    };
    let linear_relations = RatMatrix::from_rows(vec![
        normals.iter().map(|n| Rat::from_int(n.x)).collect(),
        normals.iter().map(|n| Rat::from_int(n.y)).collect(),
    ])
    .expect("two rows of equal length");
    Presentation {
        normals: normals.to_vec(),
        sr_generators,
        linear_relations,
    }
}

/// An element of one graded piece, in that piece's basis. Degrees at least
/// 6 are the zero space and carry no coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    pub degree: usize,
    pub coords: Vec<Rat>,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyRing {
    presentation: Presentation,
    deg2_basis: Vec<usize>,
    /// Row `i`: coordinates of `x_i` in `deg2_basis`.
    deg2_nf: RatMatrix,
    /// `product_table[i][j]`: `x_i x_j` as a multiple of the point class.
    product_table: Vec<Vec<Rat>>,
}

pub fn build_ring(pres: &Presentation) -> Result<CohomologyRing, CohomologyError> {
    CohomologyRing::new(pres.clone())
}

impl CohomologyRing {
    pub fn new(presentation: Presentation) -> Result<Self, CohomologyError> {
        let m = presentation.num_vars();
        let lam = &presentation.normals;
        let l = &presentation.linear_relations;

        // H^2: pivots are taken from the right so the basis favours x_1, x_2, ...
        let reversed = RatMatrix::from_columns(2, &(0..m).rev().map(|j| l.column(j)).collect::<Vec<_>>());
        let (rref, piv_rev) = reversed.rref();
        let pivots: Vec<usize> = piv_rev.iter().map(|&c| m - 1 - c).collect();
        let deg2_basis: Vec<usize> = (0..m).filter(|j| !pivots.contains(j)).collect();
        let found2 = deg2_basis.len();
        let mut deg2_nf = RatMatrix::zeros(m, found2);
        for (b, &j) in deg2_basis.iter().enumerate() {
            deg2_nf[(j, b)] = Rat::one();
        }
        for (r, &p) in pivots.iter().enumerate() {
            for (b, &j) in deg2_basis.iter().enumerate() {
                deg2_nf[(p, b)] = -rref[(r, m - 1 - j)].clone();
            }
        }

        // H^4 dimension from the full monomial relation space.
        let found4 = deg4_dimension(&presentation);
        let found = [1, found2, found4];
        let expected = [1, m.saturating_sub(2), 1];
        if found != expected || m < 3 {
            return Err(CohomologyError::UnexpectedBettiNumber { expected, found });
        }

        let mut t = vec![vec![Rat::zero(); m]; m];
        for i in 0..m {
            let j = (i + 1) % m;
            let d = det(&lam[i], &lam[j]);
            if d == 0 {
                return Err(CohomologyError::TableInconsistent(format!(
                    "adjacent rays {i}, {j} are parallel"
                )));
            }
            let v = Rat::from_big(d.abs().into(), 1.into()).recip();
            t[i][j] = v.clone();
            t[j][i] = v;
        }
        for i in 0..m {
            let li = lam[i].to_rat();
            let norm = &li[0] * &li[0] + &li[1] * &li[1];
            let mu = RatPoint::new(&li[0] / &norm, &li[1] / &norm);
            let mut s = Rat::zero();
            for k in 0..m {
                if k != i {
                    s += pairing(&mu, &lam[k]) * &t[i][k];
                }
            }
            t[i][i] = -s;
        }
        for (k, row) in t.iter().enumerate() {
            for r in 0..2 {
                let s: Rat = (0..m).map(|i| &l[(r, i)] * &row[i]).sum();
                if !s.is_zero() {
                    return Err(CohomologyError::TableInconsistent(format!(
                        "x{} * L{} = {s}",
                        k + 1,
                        r + 1
                    )));
                }
            }
        }
        let ring = CohomologyRing {
            presentation,
            deg2_basis,
            deg2_nf,
            product_table: t,
        };
        if ring.poincare_pairing().determinant().map_or(true, |d| d.is_zero()) {
            return Err(CohomologyError::DegeneratePairing);
        }
        Ok(ring)
    }

    pub fn of_polygon(p: &RationalPolygon) -> Result<Self, CohomologyError> {
        Self::new(presentation(p))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn num_vars(&self) -> usize {
        self.presentation.num_vars()
    }

    pub fn betti(&self) -> [usize; 3] {
        [1, self.deg2_basis.len(), 1]
    }

    pub fn deg2_basis(&self) -> &[usize] {
        &self.deg2_basis
    }

    pub fn deg2_nf(&self) -> &RatMatrix {
        &self.deg2_nf
    }

    pub fn product_table(&self) -> &[Vec<Rat>] {
        &self.product_table
    }

    pub fn dim(&self, degree: usize) -> usize {
        match degree {
            0 | 4 => 1,
            2 => self.deg2_basis.len(),
            _ => 0,
        }
    }

    pub fn zero(&self, degree: usize) -> RingElement {
        RingElement {
            degree,
            coords: vec![Rat::zero(); self.dim(degree)],
        }
    }

    pub fn unit(&self) -> RingElement {
        RingElement {
            degree: 0,
            coords: vec![Rat::one()],
        }
    }

    pub fn point_class(&self) -> RingElement {
        RingElement {
            degree: 4,
            coords: vec![Rat::one()],
        }
    }

    /// `x_i` as a degree-2 element.
    pub fn variable(&self, i: usize) -> RingElement {
        RingElement {
            degree: 2,
            coords: self.deg2_nf.row(i).to_vec(),
        }
    }

    /// Coordinates of a homogeneous polynomial in the stored basis. The zero
    /// polynomial is returned as the zero of degree 0.
    pub fn normal_form(&self, p: &Poly) -> Result<RingElement, CohomologyError> {
        let d = p.homogeneous_degree().ok_or(CohomologyError::NonHomogeneous)?;
        let mut out = self.zero(2 * d);
        for (mono, c) in p.terms() {
            match mono.as_slice() {
                [] => out.coords[0] += c,
                [i] => {
                    for (o, v) in out.coords.iter_mut().zip(self.deg2_nf.row(*i)) {
                        *o += c * v;
                    }
                }
                [i, j] => out.coords[0] += c * &self.product_table[*i][*j],
                _ => {}
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let degree = a.degree + b.degree;
        match (a.degree, b.degree) {
            (0, _) => RingElement {
                degree,
                coords: b.coords.iter().map(|x| x * &a.coords[0]).collect(),
            },
            (_, 0) => self.multiply(b, a),
            (2, 2) => {
                let pair = self.poincare_pairing();
                let v: Rat = (0..a.coords.len())
                    .flat_map(|p| (0..b.coords.len()).map(move |q| (p, q)))
                    .map(|(p, q)| &a.coords[p] * &b.coords[q] * &pair[(p, q)])
                    .sum();
                RingElement { degree, coords: vec![v] }
            }
            _ => self.zero(degree),
        }
    }

    /// Intersection form on the `H^2` basis.
    pub fn poincare_pairing(&self) -> RatMatrix {
        let b = &self.deg2_basis;
        let mut m = RatMatrix::zeros(b.len(), b.len());
        for (p, &i) in b.iter().enumerate() {
            for (q, &j) in b.iter().enumerate() {
                m[(p, q)] = self.product_table[i][j].clone();
            }
        }
        m
    }

    /// A polynomial representative of a degree-2 element.
    pub fn lift2(&self, e: &RingElement) -> Poly {
        let mut p = Poly::zero();
        for (c, &j) in e.coords.iter().zip(&self.deg2_basis) {
            p = p.add(&Poly::monomial(vec![j], c.clone()));
        }
        p
    }
}

/// `dim Q[x]_4 / (I_4 + x·J)` by rank over all degree-2 monomials.
pub fn deg4_dimension(pres: &Presentation) -> usize {
    let m = pres.num_vars();
    let mut index = BTreeMap::new();
    for i in 0..m {
        for j in i..m {
            let k = index.len();
            index.insert((i, j), k);
        }
    }
    let key = |a: usize, b: usize| index[&(a.min(b), a.max(b))];
    let mut rows = Vec::new();
    for g in pres.sr_generators.iter().filter(|g| g.len() == 2) {
        let mut r = vec![Rat::zero(); index.len()];
        r[key(g[0], g[1])] = Rat::one();
        rows.push(r);
    }
    let l = &pres.linear_relations;
    for k in 0..m {
        for rr in 0..l.rows() {
            let mut r = vec![Rat::zero(); index.len()];
            for i in 0..m {
                r[key(k, i)] += &l[(rr, i)];
            }
            rows.push(r);
        }
    }
    let rank = RatMatrix::from_rows(rows).expect("uniform rows").rank();
    index.len() - rank
}

/// Action of a symmetry group on `H*(X_P)`, `u(x_E) = x_{u(E)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRepresentation {
    pub element_names: Vec<String>,
    pub generators: Vec<usize>,
    /// `deg2[u]`: matrix on the `H^2` basis acting on column vectors.
    pub deg2: Vec<RatMatrix>,
    pub deg4: Vec<Rat>,
    pub edge_permutations: Vec<Vec<usize>>,
}

impl GroupRepresentation {
    pub fn apply(&self, u: usize, e: &RingElement) -> RingElement {
        match e.degree {
            0 => e.clone(),
            2 => RingElement {
                degree: 2,
                coords: self.deg2[u].mul_vec(&e.coords).expect("dimensions"),
            },
            4 => RingElement {
                degree: 4,
                coords: vec![&self.deg4[u] * &e.coords[0]],
            },
            d => RingElement { degree: d, coords: Vec::new() },
        }
    }

    pub fn order(&self) -> usize {
        self.deg2.len()
    }

    /// `(1/|W|) Σ_u ρ(u)` on `H^2`.
    pub fn reynolds(&self) -> RatMatrix {
        let n = self.deg2[0].rows();
        let sum = self
            .deg2
            .iter()
            .fold(RatMatrix::zeros(n, n), |acc, m| acc.add(m).expect("square"));
        sum.scale(&Rat::new(1, self.order() as i64))
    }

    pub fn reynolds_scalar(&self) -> Rat {
        let s: Rat = self.deg4.iter().cloned().sum();
        s / Rat::from_int(self.order() as i64)
    }
}

pub fn group_action(
    ring: &CohomologyRing,
    p: &RationalPolygon,
    group: &SymmetryGroup,
) -> Result<GroupRepresentation, CohomologyError> {
    let perms = group.edge_permutations(p)?;
    let elements = group.elements();
    let basis = ring.deg2_basis();
    let mut deg2 = Vec::new();
    let mut deg4 = Vec::new();
    let t = ring.product_table();
    for perm in &perms {
        let cols: Vec<Vec<Rat>> = basis.iter().map(|&j| ring.deg2_nf().row(perm[j]).to_vec()).collect();
        deg2.push(RatMatrix::from_columns(basis.len(), &cols));
        deg4.push(&t[perm[0]][perm[1]] / &t[0][1]);
    }
    Ok(GroupRepresentation {
        element_names: elements.into_iter().map(|e| e.name).collect(),
        generators: group.generator_indices(),
        deg2,
        deg4,
        edge_permutations: perms,
    })
}

/// Basis of the invariants in degree 0, 2 or 4: the common kernel of
/// `ρ(s_i) - 1` over the generators.
pub fn invariant_subspace(rep: &GroupRepresentation, degree: usize) -> Vec<Vec<Rat>> {
    match degree {
        0 => vec![vec![Rat::one()]],
        2 => {
            let n = rep.deg2[0].rows();
            let id = RatMatrix::identity(n);
            let stacked = rep
                .generators
                .iter()
                .map(|&g| rep.deg2[g].sub(&id).expect("square"))
                .reduce(|a, b| a.vstack(&b).expect("same width"))
                .unwrap_or_else(|| RatMatrix::zeros(0, n));
            if n == 0 {
                Vec::new()
            } else {
                stacked.kernel_basis()
            }
        }
        4 => {
            if rep.generators.iter().all(|&g| rep.deg4[g].is_one()) {
                vec![vec![Rat::one()]]
            } else {
                Vec::new()
            }
        }
        _ => Vec::new(),
    }
}

/// Orbit sums `Σ x_{u(E_j)}` over the facet decomposition, one per inherited
/// edge of the fundamental region.
pub fn equivariant_invariant_generators(
    p: &RationalPolygon,
    group: &SymmetryGroup,
    region: &FundamentalRegion,
) -> Result<Vec<Poly>, CohomologyError> {
    let dec = crate::symmetry::orbit_decomposition(p, group, region)?;
    Ok(dec
        .blocks
        .iter()
        .map(|b| b.edges.iter().fold(Poly::zero(), |acc, &f| acc.add(&Poly::var(f))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{fundamental_region, Reflection};
    use proptest::prelude::*;

    fn poly(v: &[(i64, i64)]) -> RationalPolygon {
        RationalPolygon::from_vertices(
            &v.iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn square() -> RationalPolygon {
        poly(&[(1, 1), (-1, 1), (-1, -1), (1, -1)])
    }

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn square_presentation() {
        let pr = presentation(&square());
        assert_eq!(pr.sr_generators, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(
            pr.linear_relations,
            RatMatrix::from_i64_rows(&[[1, 0, -1, 0], [0, 1, 0, -1]])
        );
    }

    #[test]
    fn sr_sizes() {
        let tri = presentation_from_normals(&[
            LatticeVec::new(1, 1),
            LatticeVec::new(-1, 0),
            LatticeVec::new(0, -1),
        ]);
        assert_eq!(tri.sr_generators, vec![vec![0, 1, 2]]);
        let twelve: Vec<LatticeVec> = [
            (1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 1),
            (-1, 0), (-2, -1), (-1, -1), (-1, -2), (0, -1), (1, -1),
        ]
        .iter()
        .map(|&(x, y)| LatticeVec::new(x, y))
        .collect();
        assert_eq!(presentation_from_normals(&twelve).sr_generators.len(), 54);
    }

    #[test]
    fn square_ring() {
        let ring = CohomologyRing::of_polygon(&square()).unwrap();
        assert_eq!(ring.betti(), [1, 2, 1]);
        assert_eq!(ring.deg2_basis(), &[0, 1]);
        assert_eq!(ring.poincare_pairing(), RatMatrix::from_i64_rows(&[[0, 1], [1, 0]]));
        assert_eq!(ring.normal_form(&Poly::var(2)).unwrap(), ring.variable(0));
        let x1x3 = Poly::var(0).mul(&Poly::var(2));
        assert!(ring.normal_form(&x1x3).unwrap().is_zero());
        // On P1 x P1 every boundary divisor squares to zero.
        let x1sq = Poly::var(0).mul(&Poly::var(0));
        assert!(ring.normal_form(&x1sq).unwrap().is_zero());
        let x1x2 = Poly::var(0).mul(&Poly::var(1));
        assert_eq!(ring.normal_form(&x1x2).unwrap().coords, vec![r(1)]);
    }

    #[test]
    fn triangle_pairing_is_nonzero() {
        let tri = presentation_from_normals(&[
            LatticeVec::new(1, 1),
            LatticeVec::new(-1, 0),
            LatticeVec::new(0, -1),
        ]);
        let ring = build_ring(&tri).unwrap();
        assert_eq!(ring.betti(), [1, 1, 1]);
        let pm = ring.poincare_pairing();
        assert_eq!(pm.rows(), 1);
        assert!(!pm[(0, 0)].is_zero());
        // P^2: the hyperplane class squares to the point.
        assert_eq!(pm[(0, 0)], r(1));
    }

    #[test]
    fn weighted_projective_plane() {
        // Rays (1,0), (0,1), (-1,-2): P(1,1,2), H^2 generator squares to 1/2.
        let ring = build_ring(&presentation_from_normals(&[
            LatticeVec::new(1, 0),
            LatticeVec::new(0, 1),
            LatticeVec::new(-1, -2),
        ]))
        .unwrap();
        let d = ring.poincare_pairing()[(0, 0)].clone();
        assert_eq!(d, Rat::new(1, 2));
    }

    #[test]
    fn degree_six_vanishes_and_mixed_degree_errors() {
        let ring = CohomologyRing::of_polygon(&square()).unwrap();
        let cube = Poly::monomial(vec![0, 1, 1], r(1));
        let e = ring.normal_form(&cube).unwrap();
        assert_eq!(e.degree, 6);
        assert!(e.is_zero());
        let mixed = Poly::var(0).add(&Poly::monomial(vec![0, 1], r(1)));
        assert_eq!(ring.normal_form(&mixed), Err(CohomologyError::NonHomogeneous));
    }

    #[test]
    fn multiply_unit_and_nonadjacent() {
        let ring = CohomologyRing::of_polygon(&square()).unwrap();
        let a = ring.variable(1);
        assert_eq!(ring.multiply(&ring.unit(), &a), a);
        assert!(ring.multiply(&ring.variable(0), &ring.variable(2)).is_zero());
        assert!(ring.multiply(&a, &ring.point_class()).is_zero());
    }

    #[test]
    fn square_mirror_action_is_trivial_on_h2() {
        let s = square();
        let ring = CohomologyRing::of_polygon(&s).unwrap();
        let g = SymmetryGroup::Single(Reflection::from_ints([[1, 0], [0, -1]]).unwrap());
        let rep = group_action(&ring, &s, &g).unwrap();
        assert_eq!(rep.deg2[1], RatMatrix::identity(2));
        assert_eq!(rep.deg4[1], r(1));
        assert_eq!(invariant_subspace(&rep, 2).len(), 2);
        assert_eq!(invariant_subspace(&rep, 4).len(), 1);
    }

    #[test]
    fn single_reflection_generators() {
        let s = square();
        let g = SymmetryGroup::Single(Reflection::from_ints([[1, 0], [0, -1]]).unwrap());
        let region = fundamental_region(&s, &g).unwrap();
        let gens = equivariant_invariant_generators(&s, &g, &region).unwrap();
        let mut sizes: Vec<usize> = gens.iter().map(Poly::num_terms).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2]);
        assert!(gens.contains(&Poly::var(1).add(&Poly::var(3))));
    }

    #[test]
    fn poly_arithmetic_cancels() {
        let a = Poly::var(0).add(&Poly::var(1));
        let b = Poly::var(0).sub(&Poly::var(1));
        let p = a.mul(&b);
        assert_eq!(p.coefficient(&[0, 1]), Rat::zero());
        assert_eq!(p.num_terms(), 2);
        assert!(p.sub(&p).is_zero());
        assert_eq!(format!("{:?}", p), "x1*x1 - x2*x2");
    }

    prop_compose! {
        fn random_fan()(angles in proptest::collection::btree_set((-6i64..=6, -6i64..=6), 3..9)) -> Option<Vec<LatticeVec>> {
            use num_integer::Integer;
            let mut v: Vec<LatticeVec> = angles
                .into_iter()
                .filter(|&(x, y)| (x, y) != (0, 0) && x.gcd(&y) == 1)
                .map(|(x, y)| LatticeVec::new(x, y))
                .collect();
            v.sort_by(|a, b| a.angle_cmp(b));
            v.dedup();
            let m = v.len();
            if m < 3 {
                return None;
            }
            // complete fan: consecutive rays strictly less than π apart
            for i in 0..m {
                if det(&v[i], &v[(i + 1) % m]) <= 0 {
                    return None;
                }
            }
            Some(v)
        }
    }

    proptest! {
        #[test]
        fn betti_and_relations(fan in random_fan()) {
            let Some(fan) = fan else { return Ok(()); };
            let ring = build_ring(&presentation_from_normals(&fan)).unwrap();
            let m = fan.len();
            prop_assert_eq!(ring.betti(), [1, m - 2, 1]);
            for l in ring.presentation().linear_polys() {
                prop_assert!(ring.normal_form(&l).unwrap().is_zero());
            }
            for i in 0..m {
                for j in 0..m {
                    if i != j && !ring.presentation().adjacent(i, j) {
                        prop_assert!(ring.multiply(&ring.variable(i), &ring.variable(j)).is_zero());
                    }
                }
            }
            for i in 0..m {
                let j = (i + 1) % m;
                let d = Rat::from_int(det(&fan[i], &fan[j]) as i64);
                let e = ring.normal_form(&Poly::monomial(vec![i, j], d)).unwrap();
                prop_assert_eq!(e.coords, vec![Rat::one()]);
            }
            let pm = ring.poincare_pairing();
            prop_assert_eq!(pm.transpose(), pm.clone());
            prop_assert!(!pm.determinant().unwrap().is_zero());
        }

        #[test]
        fn normal_form_is_idempotent(fan in random_fan(), coeffs in proptest::collection::vec(-5i64..5, 9)) {
            let Some(fan) = fan else { return Ok(()); };
            let ring = build_ring(&presentation_from_normals(&fan)).unwrap();
            let lin: Vec<Rat> = coeffs.iter().take(fan.len()).map(|&c| Rat::from_int(c)).collect();
            let e = ring.normal_form(&Poly::linear(&lin)).unwrap();
            let again = ring.normal_form(&ring.lift2(&e)).unwrap();
            // The zero polynomial has no degree of its own.
            if e.is_zero() {
                prop_assert!(again.is_zero());
            } else {
                prop_assert_eq!(e, again);
            }
        }
    }
}
