//! Rational polygons from vertices or half-spaces, their primitive normals
//! and the JSON round trip.

use toric_mirror::exactlin::Rat;
use toric_mirror::geometry::{polygon_from_json, polygon_to_json, Halfspace, LatticeVec, RatPoint, RationalPolygon};

fn main() {
    let pts = [
        RatPoint::new(Rat::new(3, 2), Rat::zero()),
        RatPoint::new(Rat::new(1, 2), Rat::new(4, 3)),
        RatPoint::new(Rat::from_int(-2), Rat::new(1, 3)),
        RatPoint::new(Rat::from_int(-1), Rat::from_int(-1)),
    ];
    let p = RationalPolygon::from_vertices(&pts).unwrap();
    println!("{} edges, area {}, lattice polygon: {}", p.num_edges(), p.area(), p.is_lattice_polygon());
    for e in p.edges() {
        println!("  x{}: normal {} offset {}  {} -> {}", e.index + 1, e.normal, e.offset, e.start, e.end);
    }

    let hs: Vec<Halfspace> = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
        .iter()
        .map(|&(x, y)| Halfspace::new(LatticeVec::new(x, y), Rat::from_int(-1)))
        .collect();
    let hex = RationalPolygon::from_halfspaces(&hs).unwrap();
    let verts: Vec<String> = hex.vertices().iter().map(|v| v.to_string()).collect();
    println!("hexagon from half-spaces: {}", verts.join(" "));

    let text = polygon_to_json("hexagon", &hex).to_string();
    let (name, back) = polygon_from_json(&text).unwrap();
    println!("round trip of {name}: same normals = {}", back.normals() == hex.normals());
}
