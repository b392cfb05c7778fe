//! Reflection detection and the single-reflection cases on small polygons.

use toric_mirror::builtins::builtin;
use toric_mirror::symmetry::{classify_single, detect_reflections, induced_edge_permutation, maximal_group, SymmetryGroup};

fn main() {
    for name in ["square", "house", "triangle", "hexagon", "asym"] {
        let p = builtin(name).unwrap();
        let refl = detect_reflections(&p);
        println!("{name}: {} reflection(s)", refl.len());
        for (k, r) in refl.iter().enumerate() {
            let perm = induced_edge_permutation(&p, r).unwrap();
            let case = classify_single(&p, r).unwrap();
            println!("  [{k}] {:?} mirror normal {} case {case} edges {perm:?}", r.matrix, r.mirror_normal);
        }
        match maximal_group(&p).unwrap() {
            None => println!("  no symmetry"),
            Some(SymmetryGroup::Single(_)) => println!("  group of order 2"),
            Some(SymmetryGroup::Dihedral(w)) => println!("  dihedral group of order {}", w.order()),
        }
    }
}
