//! Command-line front end. `run` is the whole program; the binary only
//! forwards `std::env::args_os` and exits with the returned code.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::builtins;
use crate::cohomology::CohomologyRing;
use crate::exactlin::Rat;
use crate::geometry::{polygon_from_json, polygon_to_json, polygon_vertices_json, RationalPolygon};
use crate::rootsystems::{g2_reference, root_system, weight_instance, RootType, WeightOffsets};
use crate::symmetry::{
    classify_single, detect_reflections, induced_edge_permutation, maximal_group, DihedralGroup,
    Reflection, SymmetryGroup,
};
use crate::theorem::{coefficient_json, verify_theorem, VerificationReport};

#[derive(Debug, Parser)]
#[command(name = "toric-mirror", version, about = "Exact cohomology of toric surfaces with reflection symmetry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Source {
    /// Polygon JSON file.
    #[arg(long, conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// Builtin polygon name (see `toric_mirror::builtins::NAMES`).
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertices, edge normals, offsets and adjacency.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Betti numbers and the intersection form.
    Betti {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Reflections of the polygon and the group they generate.
    Symmetries {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Certify H*(X_{P/W}) = H*(X_P)^W.
    Verify {
        #[command(flatten)]
        source: Source,
        /// auto | reflection:<k> | dihedral:<i>,<j> (detection indices) | matrix:a,b,c,d.
        #[arg(long, default_value = "auto")]
        group: String,
        /// Verify every *.json polygon in a directory.
        #[arg(long, conflicts_with_all = ["input", "builtin"])]
        input_dir: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Weight polytope of a rank-2 root system, verified with its Weyl group.
    Rootdemo {
        #[arg(long = "type", default_value = "G2")]
        root_type: String,
        /// Offset p/q of the ω2 family; the ω1 family keeps the default ratio.
        #[arg(long, allow_hyphen_values = true)]
        offset: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (out, result) = match cli.command {
        Command::Analyze { source, out } => {
            let r = load(&source).map(|(n, p)| analyze(&n, &p, out.format));
            (out, r)
        }
        Command::Betti { source, out } => {
            let r = load(&source).and_then(|(_, p)| betti(&p, out.format));
            (out, r)
        }
        Command::Symmetries { source, out } => {
            let r = load(&source).and_then(|(_, p)| symmetries(&p, out.format));
            (out, r)
        }
        Command::Verify { source, group, input_dir, out } => {
            let r = match input_dir {
                Some(dir) => verify_dir(&dir, &group, out.format),
                None => load(&source).and_then(|(n, p)| verify_one(&n, &p, &group, out.format)),
            };
            (out, r)
        }
        Command::Rootdemo { root_type, offset, out } => {
            let r = rootdemo(&root_type, offset.as_deref(), out.format);
            (out, r)
        }
    };
    let (text, failure) = match result {
        Ok(Emitted { text, failure }) => (Some(text), failure),
        Err(f) => (None, Some(f)),
    };
    if let Some(text) = text {
        let written = match &out.output {
            Some(path) => fs::write(path, &text).map_err(input),
            None => stdout.write_all(text.as_bytes()).map_err(input),
        };
        if let Err(f) = written {
            let _ = writeln!(stderr, "error: {}", describe(&f));
            return f.code();
        }
    }
    match failure {
        None => 0,
        Some(f) => {
            let _ = writeln!(stderr, "error: {}", describe(&f));
            f.code()
        }
    }
}

fn describe(f: &Failure) -> &str {
    match f {
        Failure::Input(s) | Failure::Verification(s) => s,
    }
}

/// Rendered output plus an optional failure that still sets the exit code.
struct Emitted {
    text: String,
    failure: Option<Failure>,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Emitted { text, failure: None }
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load(src: &Source) -> Result<(String, RationalPolygon), Failure> {
    match (&src.input, &src.builtin) {
        (Some(path), None) => load_file(path),
        (None, Some(name)) => builtins::builtin(name)
            .map(|p| (name.clone(), p))
            .ok_or_else(|| {
                Failure::Input(format!(
                    "unknown builtin {name:?}; available: {}",
                    builtins::NAMES.join(", ")
                ))
            }),
        _ => Err(Failure::Input("one of --input or --builtin is required".into())),
    }
}

fn load_file(path: &Path) -> Result<(String, RationalPolygon), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    polygon_from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn analyze(name: &str, p: &RationalPolygon, format: Format) -> Emitted {
    let m = p.num_edges();
    let adjacency: Vec<[usize; 2]> = (0..m).map(|i| [i + 1, (i + 1) % m + 1]).collect();
    match format {
        Format::Json => {
            let mut v = polygon_to_json(name, p);
            v["vertices"] = polygon_vertices_json(name, p)["vertices"].clone();
            v["adjacency"] = json!(adjacency);
            v["area"] = json!(p.area().to_string());
            v["lattice_polygon"] = json!(p.is_lattice_polygon());
            Emitted::ok(render(&v))
        }
        Format::Text => {
            let mut s = format!("polygon {name}: {m} edges, area {}\n", p.area());
            s.push_str("edge  normal      offset  from -> to\n");
            for e in p.edges() {
                s.push_str(&format!(
                    "x{:<4} {:<11} {:<7} {} -> {}\n",
                    e.index + 1,
                    e.normal.to_string(),
                    e.offset.to_string(),
                    e.start,
                    e.end
                ));
            }
            let pairs: Vec<String> = adjacency.iter().map(|[a, b]| format!("x{a}-x{b}")).collect();
            s.push_str(&format!("adjacent: {}\n", pairs.join(" ")));
            s.push_str(&format!("lattice polygon: {}\n", p.is_lattice_polygon()));
            Emitted::ok(s)
        }
    }
}

fn betti(p: &RationalPolygon, format: Format) -> Result<Emitted, Failure> {
    let ring = CohomologyRing::of_polygon(p).map_err(input)?;
    let b = ring.betti();
    let pm = ring.poincare_pairing();
    let det = pm.determinant().map_err(input)?;
    let basis: Vec<String> = ring.deg2_basis().iter().map(|i| format!("x{}", i + 1)).collect();
    let rows: Vec<Vec<String>> = pm.row_vecs().iter().map(|r| r.iter().map(Rat::to_string).collect()).collect();
    Ok(Emitted::ok(match format {
        Format::Json => render(&json!({
            "betti": b,
            "deg2_basis": basis,
            "pairing": rows,
            "pairing_det": det.to_string(),
            "sr_generators": ring.presentation().sr_generators.len(),
        })),
        Format::Text => {
            let mut s = format!("b = ({}, {}, {})\n", b[0], b[1], b[2]);
            s.push_str(&format!("H2 basis: {}\n", basis.join(", ")));
            s.push_str("pairing:\n");
            for r in &rows {
                s.push_str(&format!("  [{}]\n", r.join(", ")));
            }
            s.push_str(&format!("det = {det}\n"));
            s
        }
    }))
}

fn symmetries(p: &RationalPolygon, format: Format) -> Result<Emitted, Failure> {
    let refl = detect_reflections(p);
    let mut entries = Vec::new();
    for (k, r) in refl.iter().enumerate() {
        let perm = induced_edge_permutation(p, r).map_err(input)?;
        let case = classify_single(p, r).map_err(input)?;
        entries.push(json!({
            "index": k,
            "matrix": r.matrix,
            "mirror_normal": [r.mirror_normal.x, r.mirror_normal.y],
            "edge_permutation": perm.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "case": case.label(),
        }));
    }
    let group = maximal_group(p).map_err(input)?;
    let group_json = match &group {
        None => Value::Null,
        Some(SymmetryGroup::Single(_)) => json!({"kind": "reflection", "order": 2}),
        Some(SymmetryGroup::Dihedral(w)) => {
            let case = crate::symmetry::classify_dihedral(p, w).map_err(input)?;
            json!({"kind": "dihedral", "ell": w.ell(), "order": w.order(), "case": case.label()})
        }
    };
    Ok(Emitted::ok(match format {
        Format::Json => render(&json!({"reflections": entries, "maximal_group": group_json})),
        Format::Text => {
            let mut s = format!("{} reflection(s)\n", refl.len());
            for e in &entries {
                s.push_str(&format!(
                    "  [{}] matrix {} mirror normal ({}, {}) case {}\n",
                    e["index"],
                    serde_json::to_string(&e["matrix"]).expect("json"),
                    e["mirror_normal"][0],
                    e["mirror_normal"][1],
                    e["case"].as_str().unwrap_or("")
                ));
            }
            match &group {
                None => s.push_str("no reflection group\n"),
                Some(SymmetryGroup::Single(_)) => s.push_str("maximal group: one reflection\n"),
                Some(SymmetryGroup::Dihedral(w)) => s.push_str(&format!(
                    "maximal group: D{} (ell = {}), case {}\n",
                    w.order(),
                    w.ell(),
                    group_json["case"].as_str().unwrap_or("")
                )),
            }
            s
        }
    }))
}

/// Parses `auto`, `reflection:<k>`, `dihedral:<i>,<j>` (indices into the
/// reflections detected on `p`) or `matrix:a,b,c,d` (row-major, acting on M).
pub fn resolve_group(p: &RationalPolygon, spec: &str) -> Result<SymmetryGroup, String> {
    let refl = detect_reflections(p);
    let pick = |s: &str| -> Result<usize, String> {
        let k: usize = s.trim().parse().map_err(|_| format!("bad reflection index {s:?}"))?;
        if k < refl.len() {
            Ok(k)
        } else {
            Err(format!(
                "not a symmetry: reflection index {k} out of range ({} detected)",
                refl.len()
            ))
        }
    };
    if spec == "auto" {
        return maximal_group(p)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| "not a symmetry: the polygon has no reflection".to_string());
    }
    if let Some(k) = spec.strip_prefix("reflection:") {
        return Ok(SymmetryGroup::Single(refl[pick(k)?].clone()));
    }
    if let Some(rest) = spec.strip_prefix("matrix:") {
        let v: Vec<i64> = rest
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| format!("expected matrix:a,b,c,d with integers, got {spec:?}"))?;
        let [a, b, c, d] = v[..] else {
            return Err(format!("expected four matrix entries, got {}", v.len()));
        };
        let r = Reflection::from_ints([[a, b], [c, d]]).map_err(|e| e.to_string())?;
        return Ok(SymmetryGroup::Single(r));
    }
    if let Some(rest) = spec.strip_prefix("dihedral:") {
        let (i, j) = rest
            .split_once(',')
            .ok_or_else(|| format!("expected dihedral:<i>,<j>, got {spec:?}"))?;
        let w = DihedralGroup::new(refl[pick(i)?].clone(), refl[pick(j)?].clone()).map_err(|e| e.to_string())?;
        return Ok(SymmetryGroup::Dihedral(w));
    }
    Err(format!("unknown group selector {spec:?}"))
}

fn verify_report(p: &RationalPolygon, spec: &str) -> Result<VerificationReport, Failure> {
    let g = resolve_group(p, spec).map_err(Failure::Input)?;
    verify_theorem(p, &g).map_err(input)
}

fn verify_one(name: &str, p: &RationalPolygon, spec: &str, format: Format) -> Result<Emitted, Failure> {
    let report = verify_report(p, spec)?;
    let failure = (!report.isomorphism)
        .then(|| Failure::Verification(format!("{name}: isomorphism not established")));
    let text = match format {
        Format::Json => {
            let mut v = report.to_json();
            v["polygon"] = json!(name);
            render(&v)
        }
        Format::Text => format!("polygon {name}\n{}", report.to_text()),
    };
    Ok(Emitted { text, failure })
}

fn verify_dir(dir: &Path, spec: &str, format: Format) -> Result<Emitted, Failure> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut worst: Option<Failure> = None;
    let mut json_out = Vec::new();
    let mut text = String::new();
    for f in &files {
        let label = f.display().to_string();
        let outcome = load_file(f).and_then(|(_, p)| verify_report(&p, spec));
        let (entry, line, fail) = match outcome {
            Ok(r) => {
                let fail = (!r.isomorphism).then(|| Failure::Verification(format!("{label}: isomorphism not established")));
                let mut v = r.to_json();
                v["file"] = json!(label);
                (v, format!("{label}: case {} isomorphism {}\n", r.case, r.isomorphism), fail)
            }
            Err(e) => (
                json!({"file": label, "error": describe(&e)}),
                format!("{label}: error {}\n", describe(&e)),
                Some(e),
            ),
        };
        json_out.push(entry);
        text.push_str(&line);
        if let Some(f) = fail {
            if worst.as_ref().is_none_or(|w| f.code() > w.code()) {
                worst = Some(f);
            }
        }
    }
    Ok(Emitted {
        text: match format {
            Format::Json => render(&Value::Array(json_out)),
            Format::Text => text,
        },
        failure: worst,
    })
}

fn rootdemo(tag: &str, offset: Option<&str>, format: Format) -> Result<Emitted, Failure> {
    let t: RootType = tag.parse().map_err(Failure::Input)?;
    let rs = root_system(t);
    let offsets = match offset {
        Some(s) => WeightOffsets::with_first(t, s.parse::<Rat>().map_err(input)?),
        None => WeightOffsets::default_for(t),
    };
    let inst = weight_instance(&rs, &offsets).map_err(input)?;
    let report = inst.verify();
    let mut failure = (!report.isomorphism)
        .then(|| Failure::Verification(format!("{t}: isomorphism not established")));
    let mut diff = Vec::new();
    if t == RootType::G2 {
        let rows = [
            ("c", 1, &g2_reference::S1_COSETS, &g2_reference::C1),
            ("d", 1, &g2_reference::S1_COSETS, &g2_reference::D1),
            ("c", 2, &g2_reference::S2_COSETS, &g2_reference::C2),
            ("d", 2, &g2_reference::S2_COSETS, &g2_reference::D2),
        ];
        for (which, j, cosets, expected) in rows {
            for (u, e) in cosets.iter().zip(expected.iter()) {
                let got = if which == "c" {
                    inst.coefficients.c(u, j)
                } else {
                    inst.coefficients.d(u, j)
                };
                let got = got.map(Rat::to_string).unwrap_or_else(|| "missing".into());
                let ok = got == e.to_string();
                diff.push(json!({
                    "coefficient": format!("{which}_{{{u},{j}}}"),
                    "expected": e.to_string(),
                    "computed": got,
                    "match": ok,
                }));
            }
        }
        if diff.iter().any(|d| d["match"] == json!(false)) {
            failure = Some(Failure::Verification("G2 coefficients differ from the reference table".into()));
        }
    }
    let name = format!("{t}-weight-polytope");
    let text = match format {
        Format::Json => {
            let mut poly = polygon_to_json(&name, &inst.polygon);
            poly["vertices"] = polygon_vertices_json(&name, &inst.polygon)["vertices"].clone();
            render(&json!({
                "type": t.to_string(),
                "offsets": {"a": offsets.a.to_string(), "b": offsets.b.to_string()},
                "polytope": poly,
                "case": report.case.label(),
                "n": report.n,
                "isomorphism": report.isomorphism,
                "coefficients": coefficient_json(&inst.coefficients),
                "reference_diff": diff,
            }))
        }
        Format::Text => {
            let mut s = format!(
                "{t}: {} edges, |W| = {}, offsets a = {}, b = {}\n",
                inst.polygon.num_edges(),
                report.group_order,
                offsets.a,
                offsets.b
            );
            s.push_str(&format!("case {} n = {} isomorphism {}\n", report.case, report.n, report.isomorphism));
            if !diff.is_empty() {
                let matched = diff.iter().filter(|d| d["match"] == json!(true)).count();
                s.push_str(&format!("reference table: {matched}/{} coefficients match\n", diff.len()));
                for d in diff.iter().filter(|d| d["match"] == json!(false)) {
                    s.push_str(&format!("  {} expected {} computed {}\n", d["coefficient"], d["expected"], d["computed"]));
                }
            }
            s
        }
    };
    Ok(Emitted { text, failure })
}
