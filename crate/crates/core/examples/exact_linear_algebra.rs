//! Exact rational elimination: RREF, kernel, determinant, solve and inverse,
//! including entries whose products overflow 64-bit integers.

use toric_mirror::exactlin::{Rat, RatMatrix};

fn main() {
    let m = RatMatrix::from_rows(vec![
        vec![Rat::new(1, 3), Rat::new(2, 5), Rat::from_int(1)],
        vec![Rat::new(-7, 2), Rat::new(1, 9), Rat::from_int(0)],
        // Row 3 is the sum of rows 1 and 2.
        vec![Rat::new(-19, 6), Rat::new(23, 45), Rat::from_int(1)],
    ])
    .unwrap();
    let (r, pivots) = m.rref();
    println!("matrix:\n{m}");
    println!("rref:\n{r}");
    println!("pivots {pivots:?}, rank {}", m.rank());
    for k in m.kernel_basis() {
        let image = m.mul_vec(&k).unwrap();
        println!("kernel vector {k:?} maps to {image:?}");
    }

    let big = Rat::new(i64::MAX, 3);
    let h = RatMatrix::from_rows(vec![
        vec![big.clone(), Rat::from_int(1)],
        vec![Rat::from_int(1), big.recip()],
    ])
    .unwrap();
    println!("det [[b, 1], [1, 1/b]] with b = {big}: {}", h.determinant().unwrap());

    let a = RatMatrix::from_i64_rows(&[[2, -3], [-1, 2]]);
    let x = a.solve(&[Rat::from_int(1), Rat::from_int(0)]).unwrap();
    println!("G2-type Cartan matrix solve: {x:?}");
    println!("inverse:\n{}", a.inverse().unwrap());
}
