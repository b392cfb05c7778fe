//! The G2 weight polytope: coefficient table and difference vectors.

use toric_mirror::rootsystems::{g2_reference, root_system, weight_instance, RootType, WeightOffsets};

fn main() {
    let rs = root_system(RootType::G2);
    let inst = weight_instance(&rs, &WeightOffsets::default_for(RootType::G2)).unwrap();
    println!("{} edges, Weyl group of order {}", inst.polygon.num_edges(), inst.group.order());
    for (j, cosets) in [(1, g2_reference::S1_COSETS), (2, g2_reference::S2_COSETS)] {
        println!("E{j}:");
        for u in cosets {
            let c = inst.coefficients.c(u, j).unwrap();
            let d = inst.coefficients.d(u, j).unwrap();
            println!("  {u:>12}: c = {c}, d = {d}");
        }
    }
    let report = inst.verify();
    println!("case {}, n = {}, isomorphism {}", report.case, report.n, report.isomorphism);
}
