//! Rank-2 root systems in the (simple root, fundamental coweight) coordinates.
//!
//! `M` has basis `α_1, α_2` and `N` the dual basis `ω_1, ω_2`. The Weyl group
//! acts on `N` by `s_i(ω_k) = ω_k - δ_ik α_i^∨`; on `M` it acts by the
//! transposed matrices.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactlin::Rat;
use crate::geometry::{primitive, GeometryError, Halfspace, LatticeVec, RationalPolygon};
use crate::symmetry::{
    coefficients, fundamental_region, CoeffTable, DihedralGroup, Mat2, Reflection, SymmetryError,
    SymmetryGroup,
};
use crate::theorem::{Instance, TheoremError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootType {
    A2,
    B2,
    C2,
    G2,
}

impl RootType {
    pub const ALL: [RootType; 4] = [RootType::A2, RootType::B2, RootType::C2, RootType::G2];
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootType::A2 => "A2",
            RootType::B2 => "B2",
            RootType::C2 => "C2",
            RootType::G2 => "G2",
        })
    }
}

impl FromStr for RootType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "A2" => Ok(RootType::A2),
            "B2" => Ok(RootType::B2),
            "C2" => Ok(RootType::C2),
            "G2" => Ok(RootType::G2),
            _ => Err(format!("unknown root system type {s:?} (expected A2, B2, C2 or G2)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("offsets must be negative, got {0}")]
    NonNegativeOffset(Rat),
    #[error("offsets do not give one edge per half-space: {0}")]
    DegenerateOffsets(GeometryError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemRank2 {
    pub tag: RootType,
    /// `cartan[i][j] = <α_j, α_i^∨>`.
    pub cartan: [[i64; 2]; 2],
    /// `α_i^∨` in the `ω` basis (row `i` of the Cartan matrix).
    pub coroots: [LatticeVec; 2],
    /// Matrices of `s_1`, `s_2` on `N` (columns are images of `ω_1, ω_2`).
    pub weyl_generators: [[[i64; 2]; 2]; 2],
}

pub fn root_system(tag: RootType) -> RootSystemRank2 {
    let cartan = match tag {
        RootType::A2 => [[2, -1], [-1, 2]],
        RootType::B2 => [[2, -1], [-2, 2]],
        RootType::C2 => [[2, -2], [-1, 2]],
        RootType::G2 => [[2, -3], [-1, 2]],
    };
    let coroots = [
        LatticeVec::new(cartan[0][0], cartan[0][1]),
        LatticeVec::new(cartan[1][0], cartan[1][1]),
    ];
    let gen = |i: usize| -> [[i64; 2]; 2] {
        // column k = ω_k - δ_ik α_i^∨
        let mut cols = [[1, 0], [0, 1]];
        cols[i][0] -= coroots[i].x;
        cols[i][1] -= coroots[i].y;
        [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]
    };
    RootSystemRank2 {
        tag,
        cartan,
        coroots,
        weyl_generators: [gen(0), gen(1)],
    }
}

impl RootSystemRank2 {
    /// `s_i` as a reflection of `M`.
    pub fn reflection(&self, i: usize) -> Reflection {
        let n = Mat2::from_ints(self.weyl_generators[i]);
        Reflection::from_matrix(n.transpose()).expect("simple reflections are reflections")
    }

    /// The Weyl group with the dominant chamber `<x, α_i^∨> >= 0` selected,
    /// i.e. mirror normals `η_i` the primitive vectors along `-α_i^∨`.
    pub fn weyl_group(&self) -> Result<DihedralGroup, SymmetryError> {
        let eta = |v: &LatticeVec| primitive(-v.x, -v.y).expect("coroots are nonzero");
        DihedralGroup::new(self.reflection(0), self.reflection(1))?
            .with_orientation(eta(&self.coroots[0]), eta(&self.coroots[1]))
    }

    /// `u(ω)` for a group element, via the dual action.
    pub fn act_on_coweight(&self, m: &Mat2, w: &LatticeVec) -> LatticeVec {
        m.dual_apply(w).expect("Weyl group preserves N")
    }
}

/// Offsets `a` for the `ω_2` family and `b` for the `ω_1` family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightOffsets {
    pub a: Rat,
    pub b: Rat,
}

impl WeightOffsets {
    pub fn uniform(v: Rat) -> Self {
        WeightOffsets { a: v.clone(), b: v }
    }

    pub fn new(a: i64, b: i64) -> Self {
        WeightOffsets {
            a: Rat::from_int(a),
            b: Rat::from_int(b),
        }
    }

    /// Offsets giving one edge per half-space. The two coweight orbits have
    /// different Euclidean lengths outside type A, so equal offsets would
    /// make one family redundant or touch at vertices.
    pub fn default_for(tag: RootType) -> Self {
        match tag {
            RootType::A2 => WeightOffsets::new(-1, -1),
            RootType::B2 => WeightOffsets::new(-3, -2),
            RootType::C2 => WeightOffsets::new(-2, -3),
            RootType::G2 => WeightOffsets::new(-3, -5),
        }
    }

    /// Rescales the default pair so that the `ω_2` family has offset `a`.
    pub fn with_first(tag: RootType, a: Rat) -> Self {
        let d = WeightOffsets::default_for(tag);
        let b = &a * &d.b / &d.a;
        WeightOffsets { a, b }
    }
}

/// `⋂_{u ∈ ^{s1}W} {<x, u ω_2> + a <= 0} ∩ ⋂_{v ∈ ^{s2}W} {<x, v ω_1> + b <= 0}`.
pub fn weight_polytope(rs: &RootSystemRank2, offsets: &WeightOffsets) -> Result<RationalPolygon, RootSystemError> {
    for o in [&offsets.a, &offsets.b] {
        if !o.is_negative() {
            return Err(RootSystemError::NonNegativeOffset(o.clone()));
        }
    }
    let w = rs.weyl_group()?;
    let omega1 = LatticeVec::new(1, 0);
    let omega2 = LatticeVec::new(0, 1);
    let mut hs = Vec::new();
    for &u in w.coset_reps_s1() {
        let n = rs.act_on_coweight(&w.elements()[u].matrix, &omega2);
        hs.push(Halfspace::new(n, offsets.a.clone()));
    }
    for &v in w.coset_reps_s2() {
        let n = rs.act_on_coweight(&w.elements()[v].matrix, &omega1);
        hs.push(Halfspace::new(n, offsets.b.clone()));
    }
    RationalPolygon::from_halfspaces(&hs).map_err(RootSystemError::DegenerateOffsets)
}

/// The weight polytope with its Weyl group, ready for verification.
pub fn weight_instance(rs: &RootSystemRank2, offsets: &WeightOffsets) -> Result<Instance, RootSystemError> {
    let p = weight_polytope(rs, offsets)?;
    let g = SymmetryGroup::Dihedral(rs.weyl_group()?);
    Ok(Instance::new(&p, &g)?)
}

/// Coefficient table of the default G2 weight polytope.
pub fn g2_golden_table(rs: &RootSystemRank2) -> Result<CoeffTable, RootSystemError> {
    let p = weight_polytope(rs, &WeightOffsets::default_for(rs.tag))?;
    let g = SymmetryGroup::Dihedral(rs.weyl_group()?);
    let region = fundamental_region(&p, &g)?;
    Ok(coefficients(&p, &g, &region)?)
}

/// Reference values for the G2 example.
pub mod g2_reference {
    /// `^{s1}W` in increasing length.
    pub const S1_COSETS: [&str; 6] = ["id", "s2", "s1s2", "s2s1s2", "s1s2s1s2", "s2s1s2s1s2"];
    /// `^{s2}W` in increasing length.
    pub const S2_COSETS: [&str; 6] = ["id", "s1", "s2s1", "s1s2s1", "s2s1s2s1", "s1s2s1s2s1"];
    pub const C1: [i64; 6] = [0, 0, 1, 1, 2, 2];
    pub const D1: [i64; 6] = [0, 1, 1, 3, 3, 4];
    pub const C2: [i64; 6] = [0, 1, 1, 3, 3, 4];
    pub const D2: [i64; 6] = [0, 0, 3, 3, 6, 6];

    /// `(u, j, λ(u(E_j)) - λ(E_j) in ω-coordinates, (p, q))` with the
    /// difference equal to `-p α_1^∨ - q α_2^∨`.
    pub const DIFFERENCES: [(&str, usize, [i64; 2], [i64; 2]); 10] = [
        ("s2", 1, [1, -2], [0, 1]),
        ("s1s2", 1, [-1, 1], [1, 1]),
        ("s2s1s2", 1, [1, -3], [1, 3]),
        ("s1s2s1s2", 1, [-1, 0], [2, 3]),
        ("s2s1s2s1s2", 1, [0, -2], [2, 4]),
        ("s1", 2, [-2, 3], [1, 0]),
        ("s2s1", 2, [1, -3], [1, 3]),
        ("s1s2s1", 2, [-3, 3], [3, 3]),
        ("s2s1s2s1", 2, [0, -3], [3, 6]),
        // The coroot combination -4α_1^∨ - 6α_2^∨ evaluates to -2ω_1.
        ("s1s2s1s2s1", 2, [-2, 0], [4, 6]),
    ];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_square_to_identity_and_have_expected_order() {
        for (t, ell) in [(RootType::A2, 3), (RootType::B2, 4), (RootType::C2, 4), (RootType::G2, 6)] {
            let rs = root_system(t);
            let w = rs.weyl_group().unwrap();
            assert_eq!(w.ell(), ell, "{t}");
            for i in 0..2 {
                let m = Mat2::from_ints(rs.weyl_generators[i]);
                assert!(m.mul(&m).is_identity());
            }
        }
    }

    #[test]
    fn g2_generator_matrices() {
        let rs = root_system(RootType::G2);
        assert_eq!(rs.weyl_generators[0], [[-1, 0], [3, 1]]);
        assert_eq!(rs.weyl_generators[1], [[1, 1], [0, -1]]);
        assert_eq!(rs.coroots[0].neg(), LatticeVec::new(-2, 3));
        assert_eq!(rs.coroots[1].neg(), LatticeVec::new(1, -2));
    }

    #[test]
    fn weight_polygon_sizes() {
        for (t, m) in [(RootType::A2, 6), (RootType::B2, 8), (RootType::C2, 8), (RootType::G2, 12)] {
            let p = weight_polytope(&root_system(t), &WeightOffsets::default_for(t)).unwrap();
            assert_eq!(p.num_edges(), m, "{t}");
            assert!(p.normals().iter().all(LatticeVec::is_primitive));
        }
    }

    #[test]
    fn dilation_keeps_normals() {
        let rs = root_system(RootType::G2);
        let d = WeightOffsets::default_for(RootType::G2);
        let p1 = weight_polytope(&rs, &d).unwrap();
        let p2 = weight_polytope(&rs, &WeightOffsets::with_first(RootType::G2, &d.a * Rat::from_int(2))).unwrap();
        assert_eq!(p1.normals(), p2.normals());
        assert_eq!(p2.area(), &p1.area() * Rat::from_int(4));
    }

    #[test]
    fn bad_offsets() {
        let rs = root_system(RootType::G2);
        assert!(matches!(
            weight_polytope(&rs, &WeightOffsets::uniform(Rat::zero())),
            Err(RootSystemError::NonNegativeOffset(_))
        ));
        // Equal offsets leave the ω_2 family outside the ω_1 hexagon.
        let skew = WeightOffsets::uniform(Rat::from_int(-1));
        assert!(matches!(weight_polytope(&rs, &skew), Err(RootSystemError::DegenerateOffsets(_))));
    }

    #[test]
    fn g2_cosets_match_reference() {
        let w = root_system(RootType::G2).weyl_group().unwrap();
        let names = |idx: &[usize]| -> Vec<String> {
            idx.iter().map(|&u| w.elements()[u].name.clone()).collect()
        };
        assert_eq!(names(w.coset_reps_s1()), g2_reference::S1_COSETS);
        assert_eq!(names(w.coset_reps_s2()), g2_reference::S2_COSETS);
    }

    #[test]
    fn parse_type() {
        assert_eq!("g2".parse::<RootType>().unwrap(), RootType::G2);
        assert!("D2".parse::<RootType>().is_err());
    }

    #[test]
    fn g2_table_matches_reference() {
        let rs = root_system(RootType::G2);
        let t = g2_golden_table(&rs).unwrap();
        for (k, u) in g2_reference::S1_COSETS.iter().enumerate() {
            assert_eq!(t.c(u, 1), Some(&Rat::from_int(g2_reference::C1[k])), "c {u},1");
            assert_eq!(t.d(u, 1), Some(&Rat::from_int(g2_reference::D1[k])), "d {u},1");
        }
        for (k, u) in g2_reference::S2_COSETS.iter().enumerate() {
            assert_eq!(t.c(u, 2), Some(&Rat::from_int(g2_reference::C2[k])), "c {u},2");
            assert_eq!(t.d(u, 2), Some(&Rat::from_int(g2_reference::D2[k])), "d {u},2");
        }
    }

    #[test]
    fn every_type_verifies() {
        for t in RootType::ALL {
            let rs = root_system(t);
            let inst = weight_instance(&rs, &WeightOffsets::default_for(t)).unwrap();
            let rep = inst.verify();
            assert!(rep.isomorphism, "{t}: {}", rep.to_text());
            assert_eq!(rep.case, crate::symmetry::SymmetryCase::Dihedral21, "{t}");
            assert_eq!(rep.n, 2);
        }
    }
}
