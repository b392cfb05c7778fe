//! Named polygons used by the CLI, the examples and the tests.

use crate::geometry::{RatPoint, RationalPolygon};
use crate::rootsystems::{root_system, weight_polytope, RootType, WeightOffsets};

pub const NAMES: [&str; 10] = [
    "square", "hexagon", "house", "triangle", "g2", "d12", "a2", "b2", "c2", "asym",
];

fn lattice(v: &[(i64, i64)]) -> RationalPolygon {
    let pts: Vec<RatPoint> = v.iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect();
    RationalPolygon::from_vertices(&pts).expect("builtin polygons are valid")
}

fn weight(t: RootType) -> RationalPolygon {
    weight_polytope(&root_system(t), &WeightOffsets::default_for(t)).expect("default offsets are valid")
}

/// Looks up a builtin polygon by name.
///
/// * `square`: vertices `(±1, ±1)`.
/// * `hexagon`: `(1,0),(1,1),(0,1),(-1,0),(-1,-1),(0,-1)`, symmetric under D12.
/// * `house`: a pentagon with one mirror through the apex and the base.
/// * `triangle`: the fan of the projective plane.
/// * `g2`, `a2`, `b2`, `c2`: default weight polytopes.
/// * `d12`: a G2-invariant 12-gon whose mirrors all pass through vertices.
/// * `asym`: a triangle with no reflection symmetry.
pub fn builtin(name: &str) -> Option<RationalPolygon> {
    Some(match name {
        "square" => lattice(&[(1, 1), (-1, 1), (-1, -1), (1, -1)]),
        "hexagon" => lattice(&[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]),
        "house" => lattice(&[(-1, -1), (1, -1), (1, 1), (0, 2), (-1, 1)]),
        "triangle" => lattice(&[(2, -1), (-1, 2), (-1, -1)]),
        "asym" => lattice(&[(3, -1), (-1, 2), (-2, -3)]),
        "d12" => lattice(&[
            (-10, -5), (-9, -6), (-5, -5), (0, -3), (5, 0), (9, 3),
            (10, 5), (9, 6), (5, 5), (0, 3), (-5, 0), (-9, -3),
        ]),
        "g2" => weight(RootType::G2),
        "a2" => weight(RootType::A2),
        "b2" => weight(RootType::B2),
        "c2" => weight(RootType::C2),
        _ => return None,
    })
}
