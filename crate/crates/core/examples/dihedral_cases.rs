//! Dihedral groups: reduced words, coset representatives, fundamental
//! regions and facet decompositions for one instance of each case.

use toric_mirror::builtins::builtin;
use toric_mirror::cli::resolve_group;
use toric_mirror::symmetry::{classify_dihedral, fundamental_region, orbit_decomposition, SymmetryGroup};

fn main() {
    for (name, spec) in [("g2", "auto"), ("hexagon", "auto"), ("d12", "auto"), ("hexagon", "dihedral:0,2")] {
        let p = builtin(name).unwrap();
        let g = resolve_group(&p, spec).unwrap();
        let SymmetryGroup::Dihedral(w) = &g else { unreachable!() };
        let words: Vec<&str> = w.elements().iter().map(|e| e.name.as_str()).collect();
        let reps = |idx: &[usize]| idx.iter().map(|&u| words[u]).collect::<Vec<_>>().join(" ");
        println!("{name} {spec}: ell = {}, case {}", w.ell(), classify_dihedral(&p, w).unwrap());
        println!("  elements: {}", words.join(" "));
        println!("  ^s1 W: {}", reps(w.coset_reps_s1()));
        println!("  ^s2 W: {}", reps(w.coset_reps_s2()));
        let region = fundamental_region(&p, &g).unwrap();
        println!("  region: {} edges, n = {}, area {} of {}", region.polygon.num_edges(), region.n, region.polygon.area(), p.area());
        let dec = orbit_decomposition(&p, &g, &region).unwrap();
        for b in &dec.blocks {
            println!("  E{}: {} edges", b.label, b.edges.len());
        }
    }
}
