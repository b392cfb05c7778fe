//! The rational cohomology ring of a toric surface: presentation, graded
//! basis, products and the intersection form.

use toric_mirror::builtins::builtin;
use toric_mirror::cohomology::{CohomologyRing, Poly};

fn main() {
    for name in ["triangle", "square", "house", "hexagon"] {
        let p = builtin(name).unwrap();
        let ring = CohomologyRing::of_polygon(&p).unwrap();
        let pres = ring.presentation();
        println!("{name}: betti {:?}", ring.betti());
        println!("  SR generators {:?}", pres.sr_generators);
        for l in pres.linear_polys() {
            println!("  linear relation {l:?}");
        }
        let basis: Vec<String> = ring.deg2_basis().iter().map(|i| format!("x{}", i + 1)).collect();
        println!("  H2 basis {}", basis.join(", "));
        println!("  pairing:\n{}", ring.poincare_pairing());
        let sq = Poly::var(0).mul(&Poly::var(0));
        println!("  x1^2 = {:?} [pt]", ring.normal_form(&sq).unwrap().coords);
    }
}
