//! Full verification report for a polygon and group given on the command
//! line, e.g. `cargo run --example verify_theorem -- hexagon dihedral:0,2`.

use toric_mirror::builtins::builtin;
use toric_mirror::cli::resolve_group;
use toric_mirror::theorem::verify_theorem;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map_or("square", String::as_str);
    let spec = args.get(1).map_or("reflection:1", String::as_str);
    let p = builtin(name).expect("unknown builtin");
    let g = resolve_group(&p, spec).expect("bad group selector");
    let report = verify_theorem(&p, &g).unwrap();
    print!("{}", report.to_text());
}
