//! Ring maps from the fundamental-region surface into the symmetric one, and
//! exact certification that they induce `H*(X_{P/W}) ≅ H*(X_P)^W`.

use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cohomology::{
    group_action, invariant_subspace, CohomologyError, CohomologyRing, GroupRepresentation, Poly,
    RingElement,
};
use crate::exactlin::{Rat, RatMatrix};
use crate::geometry::{pairing, RatPoint, RationalPolygon};
use crate::symmetry::{
    coefficients, fundamental_region, orbit_decomposition, CoeffTable, DihedralGroup,
    FundamentalRegion, OrbitDecomposition, Reflection, Stabilizer, SymmetryCase, SymmetryError,
    SymmetryGroup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
}

/// A degree-preserving map on generators: source variable `k` (region edge
/// `k`) goes to the linear form `images[k]` in the parent variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap {
    pub source_names: Vec<String>,
    pub target_names: Vec<String>,
    pub images: Vec<Poly>,
}

impl RingMap {
    pub fn apply(&self, p: &Poly) -> Poly {
        p.substitute(&self.images)
    }

    pub fn image_strings(&self) -> Vec<(String, String)> {
        self.source_names
            .iter()
            .zip(&self.images)
            .map(|(s, p)| (s.clone(), p.display_with(&self.target_names)))
            .collect()
    }
}

fn parent_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x{i}")).collect()
}

/// Inherited edges go to orbit sums; mirror edge `k` goes to
/// `Σ coeff_k(u, j) x_{u(E_j)}` over the facet decomposition.
fn build_map(
    p: &RationalPolygon,
    group: &SymmetryGroup,
    region: &FundamentalRegion,
    dec: &OrbitDecomposition,
    coeffs: &CoeffTable,
) -> RingMap {
    let r = region.polygon.num_edges();
    let mut images = vec![Poly::zero(); r];
    for (e, block) in region.inherited.iter().zip(&dec.blocks) {
        images[e.region_index] = block.edges.iter().fold(Poly::zero(), |a, &f| a.add(&Poly::var(f)));
    }
    for m in &region.mirrors {
        let mut img = Poly::zero();
        for entry in coeffs.entries.iter().filter(|x| x.in_decomposition) {
            img = img.add(&Poly::monomial(vec![entry.edge], entry.coeffs[m.generator].clone()));
        }
        images[m.region_index] = img;
    }
    RingMap {
        source_names: region.variable_names(group),
        target_names: parent_names(p.num_edges()),
        images,
    }
}

/// `φ` for a single reflection.
pub fn build_phi(
    p: &RationalPolygon,
    sigma: &Reflection,
    region: &FundamentalRegion,
    coeffs: &CoeffTable,
) -> Result<RingMap, TheoremError> {
    if !region.case.is_single() {
        return Err(TheoremError::CaseMismatch(format!(
            "φ needs a single-reflection region, got {}",
            region.case
        )));
    }
    let g = SymmetryGroup::Single(sigma.clone());
    let dec = orbit_decomposition(p, &g, region)?;
    Ok(build_map(p, &g, region, &dec, coeffs))
}

/// `ψ` for a dihedral group.
pub fn build_psi(
    p: &RationalPolygon,
    w: &DihedralGroup,
    region: &FundamentalRegion,
    coeffs: &CoeffTable,
) -> Result<RingMap, TheoremError> {
    if region.case.is_single() {
        return Err(TheoremError::CaseMismatch(format!(
            "ψ needs a dihedral region, got {}",
            region.case
        )));
    }
    let g = SymmetryGroup::Dihedral(w.clone());
    let dec = orbit_decomposition(p, &g, region)?;
    Ok(build_map(p, &g, region, &dec, coeffs))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub subject: String,
    pub expression: String,
    pub result: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub ok: bool,
    pub witnesses: Vec<Witness>,
}

impl CheckResult {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        CheckResult {
            ok: witnesses.iter().all(|w| w.ok),
            witnesses,
        }
    }
}

fn coords_string(e: &RingElement) -> String {
    let parts: Vec<String> = e.coords.iter().map(Rat::to_string).collect();
    format!("deg{} [{}]", e.degree, parts.join(", "))
}

/// Pushes every generator of the source ideals through the map and checks
/// the target normal form vanishes.
pub fn check_well_defined(map: &RingMap, source: &CohomologyRing, target: &CohomologyRing) -> CheckResult {
    let pres = source.presentation();
    let relations = pres.sr_polys().into_iter().chain(pres.linear_polys());
    let witnesses = relations
        .map(|rel| {
            let img = map.apply(&rel);
            let (result, ok) = match target.normal_form(&img) {
                Ok(e) => (coords_string(&e), e.is_zero()),
                Err(err) => (err.to_string(), false),
            };
            Witness {
                subject: rel.display_with(&map.source_names),
                expression: img.display_with(&map.target_names),
                result,
                ok,
            }
        })
        .collect();
    CheckResult::from_witnesses(witnesses)
}

/// Each generator image is fixed by every `ρ(s_i)`, and the images span the
/// whole invariant subspace of `H^2`.
pub fn check_image_invariant(
    map: &RingMap,
    target: &CohomologyRing,
    rep: &GroupRepresentation,
) -> (CheckResult, usize, usize) {
    let mut witnesses = Vec::new();
    let mut vectors = Vec::new();
    for (name, img) in map.source_names.iter().zip(&map.images) {
        let e = target.normal_form(img).expect("linear images are homogeneous");
        let e = if e.degree == 2 { e } else { target.zero(2) };
        let moved: Vec<String> = rep
            .generators
            .iter()
            .filter(|&&g| rep.apply(g, &e) != e)
            .map(|&g| rep.element_names[g].clone())
            .collect();
        witnesses.push(Witness {
            subject: name.clone(),
            expression: img.display_with(&map.target_names),
            result: if moved.is_empty() {
                "fixed by all generators".into()
            } else {
                format!("moved by {}", moved.join(", "))
            },
            ok: moved.is_empty(),
        });
        vectors.push(e.coords);
    }
    let dim = target.dim(2);
    let image_rank = if vectors.is_empty() || dim == 0 {
        0
    } else {
        RatMatrix::from_rows(vectors).expect("uniform").rank()
    };
    let inv_dim = invariant_subspace(rep, 2).len();
    witnesses.push(Witness {
        subject: "span of images".into(),
        expression: format!("rank {image_rank}"),
        result: format!("invariant dimension {inv_dim}"),
        ok: image_rank == inv_dim,
    });
    (CheckResult::from_witnesses(witnesses), image_rank, inv_dim)
}

/// Exact rank route to bijectivity in each degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectCheck {
    pub image_rank: usize,
    pub source_dim: usize,
    pub invariant_dim: usize,
    /// Image of the source point class as a multiple of the target one.
    pub top_degree_factor: Rat,
    pub invariant_top_dim: usize,
    pub multiplicative: bool,
    pub orientation_preserving: bool,
    pub verdict: bool,
}

/// Poincaré-duality route: a ring map between duality algebras of equal
/// dimension that is nonzero in top degree is an isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub source_pairing_det: Rat,
    pub top_degree_factor: Rat,
    pub reynolds_rank_deg2: usize,
    pub reynolds_deg4: Rat,
    pub verdict: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn check_isomorphism(
    map: &RingMap,
    source: &CohomologyRing,
    target: &CohomologyRing,
    rep: &GroupRepresentation,
    well_defined: bool,
    image_invariant: bool,
    image_rank: usize,
    invariant_dim: usize,
) -> (DirectCheck, DualityCheck) {
    let ts = source.product_table();
    let m = source.num_vars();
    let (a, b) = (0, 1 % m);
    let top = |i: usize, j: usize| -> Rat {
        let prod = map.images[i].mul(&map.images[j]);
        target
            .normal_form(&prod)
            .ok()
            .and_then(|e| e.coords.first().cloned())
            .unwrap_or_else(Rat::zero)
    };
    let factor = &top(a, b) / &ts[a][b];
    let multiplicative = (0..m).all(|i| (i..m).all(|j| top(i, j) == &ts[i][j] * &factor));
    let orientation_preserving = rep.deg4.iter().all(Rat::is_one);
    let invariant_top_dim = invariant_subspace(rep, 4).len();
    let source_dim = source.dim(2);
    let direct_verdict = well_defined
        && image_invariant
        && orientation_preserving
        && image_rank == source_dim
        && image_rank == invariant_dim
        && !factor.is_zero()
        && invariant_top_dim == 1
        && multiplicative;
    let direct = DirectCheck {
        image_rank,
        source_dim,
        invariant_dim,
        top_degree_factor: factor.clone(),
        invariant_top_dim,
        multiplicative,
        orientation_preserving,
        verdict: direct_verdict,
    };
    let det = source.poincare_pairing().determinant().unwrap_or_else(|_| Rat::zero());
    let reynolds_rank = if target.dim(2) == 0 { 0 } else { rep.reynolds().rank() };
    let reynolds_deg4 = rep.reynolds_scalar();
    let pd_verdict = well_defined
        && image_invariant
        && !det.is_zero()
        && !factor.is_zero()
        && !reynolds_deg4.is_zero()
        && reynolds_rank == source_dim;
    let duality = DualityCheck {
        source_pairing_det: det,
        top_degree_factor: factor,
        reynolds_rank_deg2: reynolds_rank,
        reynolds_deg4,
        verdict: pd_verdict,
    };
    (direct, duality)
}

/// An intermediate identity of the argument, re-evaluated on the instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Replay {
    pub name: String,
    pub expression: String,
    pub result: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: SymmetryCase,
    pub n: usize,
    pub group_order: usize,
    pub ell: Option<usize>,
    pub map: RingMap,
    pub edge_labels: Vec<String>,
    pub well_defined: CheckResult,
    pub image_invariant: CheckResult,
    pub graded_dims: [usize; 4],
    pub direct: DirectCheck,
    pub duality: DualityCheck,
    pub isomorphism: bool,
    pub pd_shortcut_agrees: bool,
    pub coefficients: CoeffTable,
    pub coefficients_integral: bool,
    pub vanishing: Option<bool>,
    pub replays: Vec<Replay>,
    pub warnings: Vec<String>,
}

/// Every stage of the pipeline for one polygon and group.
#[derive(Debug, Clone)]
pub struct Instance {
    pub polygon: RationalPolygon,
    pub group: SymmetryGroup,
    pub region: FundamentalRegion,
    pub decomposition: OrbitDecomposition,
    pub coefficients: CoeffTable,
    pub source: CohomologyRing,
    pub target: CohomologyRing,
    pub rep: GroupRepresentation,
}

impl Instance {
    pub fn new(p: &RationalPolygon, group: &SymmetryGroup) -> Result<Self, TheoremError> {
        group.ensure_preserves(p)?;
        let region = fundamental_region(p, group)?;
        let decomposition = orbit_decomposition(p, group, &region)?;
        let coefficients = coefficients(p, group, &region)?;
        let source = CohomologyRing::of_polygon(&region.polygon)?;
        let target = CohomologyRing::of_polygon(p)?;
        let rep = group_action(&target, p, group)?;
        Ok(Instance {
            polygon: p.clone(),
            group: group.clone(),
            region,
            decomposition,
            coefficients,
            source,
            target,
            rep,
        })
    }

    pub fn map_with(&self, coeffs: &CoeffTable) -> RingMap {
        build_map(&self.polygon, &self.group, &self.region, &self.decomposition, coeffs)
    }

    pub fn map(&self) -> RingMap {
        self.map_with(&self.coefficients)
    }

    /// `u(E_j)` label of each parent edge.
    pub fn edge_labels(&self) -> Vec<String> {
        let names: Vec<String> = self.group.elements().into_iter().map(|e| e.name).collect();
        self.decomposition
            .labels
            .iter()
            .map(|&(u, j)| {
                if u == 0 {
                    format!("E{j}")
                } else {
                    format!("{}(E{j})", names[u])
                }
            })
            .collect()
    }

    pub fn verify(&self) -> VerificationReport {
        self.verify_with(&self.coefficients)
    }

    /// Runs every check with a given coefficient table (used for negative
    /// controls with perturbed tables).
    pub fn verify_with(&self, coeffs: &CoeffTable) -> VerificationReport {
        let map = self.map_with(coeffs);
        let well_defined = check_well_defined(&map, &self.source, &self.target);
        let (image_invariant, image_rank, inv_dim) =
            check_image_invariant(&map, &self.target, &self.rep);
        let (direct, duality) = check_isomorphism(
            &map,
            &self.source,
            &self.target,
            &self.rep,
            well_defined.ok,
            image_invariant.ok,
            image_rank,
            inv_dim,
        );
        let mut warnings = Vec::new();
        let ell = match &self.group {
            SymmetryGroup::Dihedral(w) => {
                if w.ell() == 2 {
                    warnings.push("perpendicular mirrors: ell = 2 (Klein four-group)".to_string());
                }
                Some(w.ell())
            }
            SymmetryGroup::Single(_) => None,
        };
        if !coeffs.all_integral() {
            warnings.push("some coefficients are not integers".to_string());
        }
        if !direct.orientation_preserving {
            warnings.push("a group element acts by -1 on the top degree".to_string());
        }
        let mut replays = Vec::new();
        if self.region.case == SymmetryCase::Single11 {
            replays.push(self.replay_single_linear(&map));
        }
        if self.region.case == SymmetryCase::Dihedral23 && self.region.polygon.num_edges() == 3 {
            replays.push(self.replay_triangle(&map));
        }
        let vanishing = (!self.group.is_single()).then(|| coeffs.vanishing_holds());
        let isomorphism = direct.verdict;
        VerificationReport {
            case: self.region.case,
            n: self.region.n,
            group_order: self.group.order(),
            ell,
            edge_labels: self.edge_labels(),
            graded_dims: [self.source.dim(2), inv_dim, 1, direct.invariant_top_dim],
            pd_shortcut_agrees: duality.verdict == direct.verdict,
            isomorphism,
            well_defined,
            image_invariant,
            direct,
            duality,
            coefficients_integral: coeffs.all_integral(),
            coefficients: coeffs.clone(),
            vanishing,
            replays,
            warnings,
            map,
        }
    }

    /// With `{η, λ_{2n+1}}` as a basis of `N` and `η*` dual to `η`:
    /// `Σ_i <η*, λ_i>(x_i + x_{n+i}) + φ(x_σ)` is zero in `H^2(X_P)`.
    fn replay_single_linear(&self, map: &RingMap) -> Replay {
        let eta = self.group.mirror_normals()[0];
        let fixed = self
            .region
            .inherited
            .iter()
            .find(|e| e.stabilizer != Stabilizer::Trivial)
            .expect("case 1-1 has fixed edges");
        let l = self.polygon.edge(fixed.parent).normal;
        let basis = RatMatrix::from_rows(vec![eta.to_rat().to_vec(), l.to_rat().to_vec()])
            .expect("2x2");
        // η* solves <η*, η> = 1, <η*, λ_{2n+1}> = 0.
        let star = basis
            .solve(&[Rat::one(), Rat::zero()])
            .expect("η and λ_{2n+1} are independent");
        let star = RatPoint::new(star[0].clone(), star[1].clone());
        let mut combo = Poly::zero();
        for (e, block) in self.region.inherited.iter().zip(&self.decomposition.blocks) {
            if e.stabilizer != Stabilizer::Trivial {
                continue;
            }
            let w = pairing(&star, &self.polygon.edge(e.parent).normal);
            for &f in &block.edges {
                combo = combo.add(&Poly::monomial(vec![f], w.clone()));
            }
        }
        combo = combo.add(&map.images[self.region.mirror_region_index(0)]);
        let nf = self.target.normal_form(&combo).expect("linear");
        Replay {
            name: "single reflection linear identity".into(),
            expression: combo.display_with(&map.target_names),
            result: coords_string(&nf),
            ok: nf.is_zero(),
        }
    }

    /// Triangle region: `x_{E_2} ψ(x_{s1}) ψ(x_{s2})` already lies in the
    /// Stanley–Reisner ideal of `P`, so the triple product vanishes.
    fn replay_triangle(&self, map: &RingMap) -> Replay {
        let e2 = self
            .region
            .inherited
            .iter()
            .find(|e| e.label == 2)
            .expect("triangle region has E2");
        let s1 = &map.images[self.region.mirror_region_index(0)];
        let s2 = &map.images[self.region.mirror_region_index(1)];
        let prod = Poly::var(e2.parent).mul(s1).mul(s2);
        let pres = self.target.presentation();
        let mut outside = Poly::zero();
        for (mono, c) in prod.terms() {
            let mut support = mono.clone();
            support.dedup();
            let in_ideal = support
                .iter()
                .enumerate()
                .any(|(k, &a)| support[k + 1..].iter().any(|&b| !pres.adjacent(a, b)));
            if !in_ideal {
                outside = outside.add(&Poly::monomial(mono.clone(), c.clone()));
            }
        }
        let full = map.images[e2.region_index].mul(s1).mul(s2);
        let full_nf = self.target.normal_form(&full).expect("homogeneous");
        Replay {
            name: "triangle triple product".into(),
            expression: prod.display_with(&map.target_names),
            result: format!(
                "terms outside the Stanley-Reisner ideal: {}; full product {}",
                outside.display_with(&map.target_names),
                if full_nf.is_zero() { "vanishes" } else { "nonzero" }
            ),
            ok: outside.is_zero() && full_nf.is_zero(),
        }
    }
}

pub fn verify_theorem(p: &RationalPolygon, group: &SymmetryGroup) -> Result<VerificationReport, TheoremError> {
    Ok(Instance::new(p, group)?.verify())
}

fn check_json(c: &CheckResult) -> Value {
    json!({
        "ok": c.ok,
        "witnesses": c.witnesses.iter().map(|w| json!({
            "subject": w.subject,
            "expression": w.expression,
            "result": w.result,
            "ok": w.ok,
        })).collect::<Vec<_>>(),
    })
}

/// `{label: {element: value}}` over the facet decomposition, one map per
/// mirror.
pub fn coefficient_json(t: &CoeffTable) -> Value {
    let mut out = Map::new();
    for (k, key) in ["c", "d"].iter().enumerate().take(t.mirrors.len()) {
        let mut by_label: Map<String, Value> = Map::new();
        for e in t.entries.iter().filter(|e| e.in_decomposition) {
            let slot = by_label
                .entry(format!("E{}", e.label))
                .or_insert_with(|| Value::Object(Map::new()));
            slot.as_object_mut()
                .expect("object")
                .insert(e.element_name.clone(), Value::String(e.coeffs[k].to_string()));
        }
        out.insert((*key).to_string(), Value::Object(by_label));
    }
    Value::Object(out)
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case.label(),
            "n": self.n,
            "group_order": self.group_order,
            "ell": self.ell,
            "well_defined": check_json(&self.well_defined),
            "image_invariant": check_json(&self.image_invariant),
            "graded_dims": self.graded_dims,
            "isomorphism": self.isomorphism,
            "pd_shortcut_used": true,
            "pd_shortcut_agrees": self.pd_shortcut_agrees,
            "direct": serde_json::to_value(&self.direct).expect("serializable"),
            "duality": serde_json::to_value(&self.duality).expect("serializable"),
            "coefficients": coefficient_json(&self.coefficients),
            "coefficients_integral": self.coefficients_integral,
            "mirrors": self.coefficients.mirrors.iter().map(|m| [m.x, m.y]).collect::<Vec<_>>(),
            "vanishing": self.vanishing,
            "map": self.map.image_strings().into_iter().map(|(s, t)| (s, Value::String(t))).collect::<Map<_, _>>(),
            "edge_labels": self.map.target_names.iter().cloned().zip(self.edge_labels.iter().cloned().map(Value::String)).collect::<Map<_, _>>(),
            "replays": self.replays.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let yn = |b: bool| if b { "yes" } else { "NO" };
        s.push_str(&format!("case {}  n = {}  |W| = {}", self.case, self.n, self.group_order));
        if let Some(l) = self.ell {
            s.push_str(&format!("  ell = {l}"));
        }
        s.push('\n');
        s.push_str("map on generators:\n");
        for (src, img) in self.map.image_strings() {
            s.push_str(&format!("  {src} -> {img}\n"));
        }
        s.push_str(&format!(
            "well-defined: {} ({} relations)\n",
            yn(self.well_defined.ok),
            self.well_defined.witnesses.len()
        ));
        for w in self.well_defined.witnesses.iter().filter(|w| !w.ok) {
            s.push_str(&format!("  FAIL {} -> {} = {}\n", w.subject, w.expression, w.result));
        }
        s.push_str(&format!("image invariant: {}\n", yn(self.image_invariant.ok)));
        for w in self.image_invariant.witnesses.iter().filter(|w| !w.ok) {
            s.push_str(&format!("  FAIL {}: {}\n", w.subject, w.result));
        }
        let d = self.graded_dims;
        s.push_str(&format!(
            "graded dims: H2 source {} / invariant {}, H4 source {} / invariant {}\n",
            d[0], d[1], d[2], d[3]
        ));
        s.push_str(&format!(
            "top degree factor: {}  multiplicative: {}\n",
            self.direct.top_degree_factor,
            yn(self.direct.multiplicative)
        ));
        s.push_str(&format!(
            "isomorphism: {}  duality shortcut agrees: {}\n",
            yn(self.isomorphism),
            yn(self.pd_shortcut_agrees)
        ));
        if let Some(v) = self.vanishing {
            s.push_str(&format!("coefficient vanishing: {}\n", yn(v)));
        }
        for r in &self.replays {
            s.push_str(&format!("replay {}: {}\n", r.name, yn(r.ok)));
        }
        for w in &self.warnings {
            s.push_str(&format!("warning: {w}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{detect_reflections, maximal_group};

    fn poly(v: &[(i64, i64)]) -> RationalPolygon {
        RationalPolygon::from_vertices(
            &v.iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn square() -> RationalPolygon {
        poly(&[(1, 1), (-1, 1), (-1, -1), (1, -1)])
    }

    #[test]
    fn square_axis_mirror() {
        let s = square();
        let sigma = Reflection::from_ints([[1, 0], [0, -1]]).unwrap();
        let inst = Instance::new(&s, &SymmetryGroup::Single(sigma.clone())).unwrap();
        let map = build_phi(&s, &sigma, &inst.region, &inst.coefficients).unwrap();
        let strings: Vec<(String, String)> = map.image_strings();
        // parent edges: x1 right, x2 top, x3 left, x4 bottom
        assert!(strings.contains(&("E1".into(), "x2 + x4".into())));
        assert!(strings.contains(&("Es".into(), "2*x2".into())));
        let rep = inst.verify();
        assert!(rep.isomorphism, "{}", rep.to_text());
        assert!(rep.pd_shortcut_agrees);
        assert_eq!(rep.graded_dims, [2, 2, 1, 1]);
        assert!(rep.replays.iter().all(|r| r.ok));
        assert_eq!(rep.replays.len(), 1);
    }

    #[test]
    fn square_diagonal_mirror() {
        let s = square();
        let g = SymmetryGroup::Single(Reflection::from_ints([[0, 1], [1, 0]]).unwrap());
        let rep = verify_theorem(&s, &g).unwrap();
        assert_eq!(rep.case, SymmetryCase::Single13);
        assert!(rep.isomorphism);
        assert_eq!(rep.graded_dims[0], 1);
    }

    #[test]
    fn zero_coefficients_give_zero_mirror_image() {
        let s = square();
        let g = SymmetryGroup::Single(Reflection::from_ints([[1, 0], [0, -1]]).unwrap());
        let inst = Instance::new(&s, &g).unwrap();
        let mut zero = inst.coefficients.clone();
        for e in &mut zero.entries {
            for c in &mut e.coeffs {
                *c = Rat::zero();
            }
        }
        let map = inst.map_with(&zero);
        assert!(map.images[inst.region.mirror_region_index(0)].is_zero());
        assert!(!inst.verify_with(&zero).well_defined.ok);
    }

    #[test]
    fn wrong_case_is_rejected() {
        let s = square();
        let g = SymmetryGroup::Single(Reflection::from_ints([[1, 0], [0, -1]]).unwrap());
        let inst = Instance::new(&s, &g).unwrap();
        let SymmetryGroup::Dihedral(w) = maximal_group(&s).unwrap().unwrap() else { panic!() };
        assert!(matches!(
            build_psi(&s, &w, &inst.region, &inst.coefficients),
            Err(TheoremError::CaseMismatch(_))
        ));
    }

    #[test]
    fn hexagon_vertex_mirrors_triangle() {
        let h = poly(&[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]);
        let refl = detect_reflections(&h);
        let through: Vec<Reflection> = refl
            .into_iter()
            .filter(|r| crate::symmetry::mirror_incidence(&h, &r.mirror_normal).vertices.len() == 2)
            .collect();
        let w = DihedralGroup::new(through[0].clone(), through[1].clone()).unwrap();
        let rep = verify_theorem(&h, &SymmetryGroup::Dihedral(w)).unwrap();
        assert_eq!(rep.case, SymmetryCase::Dihedral23);
        assert!(rep.isomorphism, "{}", rep.to_text());
        assert_eq!(rep.replays.len(), 1);
        assert!(rep.replays[0].ok, "{:?}", rep.replays[0]);
        assert_eq!(rep.vanishing, Some(true));
    }

    #[test]
    fn asymmetric_polygon_is_rejected() {
        let tri = poly(&[(3, -1), (-1, 2), (-2, -3)]);
        let g = SymmetryGroup::Single(Reflection::from_ints([[1, 0], [0, -1]]).unwrap());
        assert!(matches!(
            verify_theorem(&tri, &g),
            Err(TheoremError::Symmetry(SymmetryError::NotASymmetry(_)))
        ));
    }
}
