//! Batch front end: fan-document ingestion, subcommand dispatch, canonical
//! report rendering, and the built-in example library.

use crate::floer::{
    a_function, filtration_inclusion, integer_filtration, rescaling_constant, rotation_class,
    FloerError,
};
use crate::groebner::{Poly, QuotientBasis};
use crate::matrix::kernel_of_power;
use crate::polyhedral::{
    classify_action_from_weights, core as fan_core, dual_cone_hilbert_basis, fixed_locus,
    min_moment, morse_bott_data, polytope_vertices, psi_map_exponents, support_membership,
    validate_fan, ActionClass, Cocharacter, Fan, Membership, MomentData, PolyhedralError,
    WeightSystem,
};
use crate::presentations::{
    classical_cohomology, classify_geometry, equivariant_quantum, equivariant_symplectic,
    jacobian_ring, quantum_cohomology, symplectic_cohomology, GeneratorTag, GeometryClass,
    GeometryKind, IdealPresentation, PresentationError, ReducedPresentation,
};
use crate::scalar::{Field, NovikovScalar};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Serialized form of a fan (1-based ray indices, matching the toric
/// divisor labels D_1..D_r).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
}

/// The structured output of a subcommand. The JSON rendering round-trips.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fan: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<String>,
    pub results: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            fan: None,
            geometry: None,
            results: BTreeMap::new(),
            warnings: vec![],
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(f) = &self.fan {
            let _ = writeln!(out, "fan: {f}");
        }
        if let Some(g) = &self.geometry {
            let _ = writeln!(out, "geometry: {g}");
        }
        for (k, v) in &self.results {
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                other => {
                    let _ = writeln!(out, "{k}: {other}");
                }
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

/// An error carrying the CLI exit status: 1 for input problems, 2 for
/// domain refusals on valid input.
#[derive(Debug)]
pub struct CliError {
    pub exit: i32,
    pub message: String,
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError {
            exit: 1,
            message: msg.into(),
        }
    }
    fn domain(msg: impl Into<String>) -> Self {
        CliError {
            exit: 2,
            message: msg.into(),
        }
    }
}

fn polyhedral_exit(e: &PolyhedralError) -> i32 {
    match e {
        PolyhedralError::NonPrimitiveRay { .. }
        | PolyhedralError::DuplicateRay { .. }
        | PolyhedralError::NonUnimodularCone { .. }
        | PolyhedralError::ConeOverlap { .. }
        | PolyhedralError::UnusedRay { .. }
        | PolyhedralError::MalformedCone { .. }
        | PolyhedralError::DimensionMismatch { .. }
        | PolyhedralError::InadmissibleLambda { .. } => 1,
        _ => 2,
    }
}

impl From<PolyhedralError> for CliError {
    fn from(e: PolyhedralError) -> Self {
        CliError {
            exit: polyhedral_exit(&e),
            message: e.to_string(),
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::Polyhedral(p) => p.into(),
            other => CliError::domain(other.to_string()),
        }
    }
}

impl From<FloerError> for CliError {
    fn from(e: FloerError) -> Self {
        match e {
            FloerError::Polyhedral(p) => p.into(),
            FloerError::Presentation(p) => p.into(),
            other => CliError::domain(other.to_string()),
        }
    }
}

/// Parse a fan document, validating the fan it describes.
pub fn parse_fan_document(text: &str) -> Result<FanDocument, CliError> {
    let doc: FanDocument = serde_json::from_str(text)
        .map_err(|e| CliError::input(format!("SyntaxError: {e}")))?;
    check_document(&doc)?;
    Ok(doc)
}

fn check_document(doc: &FanDocument) -> Result<(), CliError> {
    for (i, r) in doc.rays.iter().enumerate() {
        if r.len() != doc.rank {
            return Err(CliError::input(format!(
                "SchemaError: ray {} has length {}, expected rank {}",
                i + 1,
                r.len(),
                doc.rank
            )));
        }
    }
    if let Some(l) = &doc.lambda {
        if l.len() != doc.rays.len() {
            return Err(CliError::input(format!(
                "SchemaError: lambda has length {}, expected one offset per ray ({})",
                l.len(),
                doc.rays.len()
            )));
        }
    }
    for c in &doc.max_cones {
        if c.iter().any(|&i| i == 0 || i > doc.rays.len()) {
            return Err(CliError::input(format!(
                "SchemaError: cone {c:?} uses 1-based ray indices in 1..={}",
                doc.rays.len()
            )));
        }
    }
    let fan = doc.fan()?;
    validate_fan(&fan)?;
    Ok(())
}

impl FanDocument {
    /// Convert to the 0-based internal fan.
    pub fn fan(&self) -> Result<Fan, CliError> {
        let cones = self
            .max_cones
            .iter()
            .map(|c| c.iter().map(|&i| i - 1).collect())
            .collect();
        Fan::new(self.rank, self.rays.clone(), cones).map_err(CliError::from)
    }

    /// Attach offsets: explicit lambda, or the Fano normalization -1 when
    /// that is admissible.
    pub fn moment_data(&self) -> Result<MomentData, CliError> {
        let fan = self.fan()?;
        if let Some(l) = &self.lambda {
            return Ok(MomentData {
                fan,
                lambda: l.clone(),
            });
        }
        let md = MomentData {
            lambda: vec![-1; fan.rays.len()],
            fan,
        };
        match classify_geometry(&md) {
            Ok(g) if g.is_fano() => Ok(md),
            _ => Err(CliError::input(
                "LambdaRequired: the fan is not Fano with lambda = -1; supply explicit offsets",
            )),
        }
    }
}

/// Built-in example fans, 1-based, named as the CLI expects.
pub fn generate_example(name: &str, k: Option<i64>, m: Option<i64>) -> Result<FanDocument, CliError> {
    // Accept both the parametric name with flags and inline forms like
    // o(-2)-cp3.
    let (name, k, m) = if let Some(rest) = name.strip_prefix("o(-") {
        if name == "o(-k)-cpm" {
            ("o(-k)-cpm".to_string(), k, m)
        } else {
            let Some((kk, mm)) = rest.split_once(")-cp") else {
                return Err(CliError::input(format!("UnknownExample: {name}")));
            };
            let kk: i64 = kk
                .parse()
                .map_err(|_| CliError::input(format!("UnknownExample: {name}")))?;
            let mm: i64 = mm
                .parse()
                .map_err(|_| CliError::input(format!("UnknownExample: {name}")))?;
            ("o(-k)-cpm".to_string(), Some(kk), Some(mm))
        }
    } else {
        (name.to_string(), k, m)
    };
    match name.as_str() {
        "blp-cxp1" => Ok(FanDocument {
            name: Some("blp-cxp1".into()),
            rank: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![0, -1]],
            max_cones: vec![vec![2, 3], vec![3, 1], vec![1, 4]],
            lambda: Some(vec![-1, -1, -1, -1]),
        }),
        "cp2" => Ok(FanDocument {
            name: Some("cp2".into()),
            rank: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            max_cones: vec![vec![1, 2], vec![2, 3], vec![3, 1]],
            lambda: Some(vec![0, 0, -3]),
        }),
        "c2" => Ok(FanDocument {
            name: Some("c2".into()),
            rank: 2,
            rays: vec![vec![1, 0], vec![0, 1]],
            max_cones: vec![vec![1, 2]],
            lambda: Some(vec![0, 0]),
        }),
        "conifold-resolution" => Ok(FanDocument {
            name: Some("conifold-resolution".into()),
            rank: 3,
            rays: vec![vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]],
            max_cones: vec![vec![1, 2, 3], vec![1, 3, 4]],
            lambda: Some(vec![0, -1, 0, -1]),
        }),
        "o(-k)-cpm" => {
            let (Some(k), Some(m)) = (k, m) else {
                return Err(CliError::input(
                    "BadParams: o(-k)-cpm needs --k and --m",
                ));
            };
            if m < 1 || k < 1 || k > m + 1 {
                return Err(CliError::input(format!(
                    "BadParams: need 1 <= k <= m+1, got k={k}, m={m}"
                )));
            }
            let m = m as usize;
            let n = m + 1;
            let mut rays = vec![];
            for i in 0..m {
                let mut u = vec![0i64; n];
                u[i] = 1;
                rays.push(u);
            }
            let mut b = vec![k - 1; n];
            b[m] = k;
            rays.push(b);
            rays.push(vec![1; n]);
            let mut cones = vec![];
            let mut first: Vec<usize> = (1..=m).collect();
            first.push(m + 2);
            cones.push(first);
            for omit in 1..=m {
                let mut c: Vec<usize> = (1..=m).filter(|&j| j != omit).collect();
                c.push(m + 1);
                c.push(m + 2);
                cones.push(c);
            }
            let mut lambda = vec![-1i64; m + 2];
            if k == (m as i64) + 1 {
                lambda[m + 1] = 0; // Calabi-Yau admissible offsets
            }
            Ok(FanDocument {
                name: Some(format!("o(-{k})-cp{m}")),
                rank: n,
                rays,
                max_cones: cones,
                lambda: Some(lambda),
            })
        }
        other => Err(CliError::input(format!("UnknownExample: {other}"))),
    }
}

pub fn example_names() -> Vec<&'static str> {
    vec!["blp-cxp1", "cp2", "o(-k)-cpm", "conifold-resolution", "c2"]
}

fn geometry_string(g: &GeometryClass) -> String {
    let kind = match &g.kind {
        GeometryKind::FanoMonotone { t, xi } => {
            let xi: Vec<String> = xi.iter().map(|q| q.to_string()).collect();
            format!("FanoMonotone(t={t}, xi=[{}])", xi.join(","))
        }
        GeometryKind::CalabiYau { xi } => {
            let xi: Vec<String> = xi.iter().map(|q| q.to_string()).collect();
            format!("CalabiYau(xi=[{}])", xi.join(","))
        }
        GeometryKind::Other => "Other".to_string(),
    };
    if g.compact {
        format!("{kind}, compact")
    } else {
        format!("{kind}, noncompact")
    }
}

fn tag_string(tag: &GeneratorTag) -> String {
    match tag {
        GeneratorTag::Linear { xi } => format!("linear xi={xi:?}"),
        GeneratorTag::ClassicalSR { subset } => {
            format!("classical-sr p={:?}", one_based(subset))
        }
        GeneratorTag::QuantumSR { subset, rhs, omega } => {
            let rhs: Vec<String> = rhs
                .iter()
                .map(|(j, c)| format!("{}^{}", j + 1, c))
                .collect();
            format!(
                "quantum-sr p={:?} rhs=[{}] omega={omega}",
                one_based(subset),
                rhs.join(",")
            )
        }
        GeneratorTag::UIdentification { xi0, pairing } => {
            format!("u-identification xi0={xi0:?} pairing={pairing}")
        }
        GeneratorTag::Localized => "localized".to_string(),
    }
}

fn one_based(c: &[usize]) -> Vec<usize> {
    c.iter().map(|&i| i + 1).collect()
}

fn presentation_json<F: Field>(p: &IdealPresentation<F>) -> Value {
    let gens: Vec<Value> = p
        .generators
        .iter()
        .map(|g| json!({"tag": tag_string(&g.tag), "poly": g.poly.to_string()}))
        .collect();
    let gb: Vec<String> = p
        .groebner
        .generators()
        .iter()
        .map(|g| g.to_string())
        .collect();
    json!({
        "ring": ring_string(&p.ring.names, false),
        "generators": gens,
        "groebner_basis": gb,
        "quotient_basis": quotient_json(&p.quotient, &p.ring.names),
        "graded_dims": p.graded_dims,
        "dim": p.dim(),
    })
}

fn reduced_json<F: Field>(p: &ReducedPresentation<F>, laurent: bool) -> Value {
    let subs: Vec<String> = p
        .substitutions
        .iter()
        .map(|(i, img)| format!("x{} = {}", i + 1, img))
        .collect();
    let gb: Vec<String> = p
        .groebner
        .generators()
        .iter()
        .map(|g| g.to_string())
        .collect();
    json!({
        "ring": ring_string(&p.ring.names, laurent),
        "substitutions": subs,
        "groebner_basis": gb,
        "quotient_basis": quotient_json(&p.quotient, &p.ring.names),
        "dim": p.quotient.dim(),
    })
}

fn ring_string(names: &[String], laurent: bool) -> String {
    let vars: Vec<String> = names
        .iter()
        .map(|n| {
            if laurent {
                format!("{n}^+-1")
            } else {
                n.clone()
            }
        })
        .collect();
    format!("k[{}]", vars.join(", "))
}

fn quotient_json(q: &QuotientBasis, names: &[String]) -> Value {
    match q {
        QuotientBasis::Infinite => json!("infinite"),
        QuotientBasis::Finite(monos) => {
            let rendered: Vec<String> = monos
                .iter()
                .map(|m| {
                    let mut s = String::new();
                    for (i, &e) in m.iter().enumerate() {
                        if e == 0 {
                            continue;
                        }
                        if !s.is_empty() {
                            s.push('*');
                        }
                        if e == 1 {
                            let _ = write!(s, "{}", names[i]);
                        } else {
                            let _ = write!(s, "{}^{}", names[i], e);
                        }
                    }
                    if s.is_empty() {
                        "1".to_string()
                    } else {
                        s
                    }
                })
                .collect();
            json!(rendered)
        }
    }
}

fn parse_vector(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::input(format!("BadParams: cannot parse integer '{t}'")))
        })
        .collect()
}

fn parse_vector_list(s: &str) -> Result<Vec<Vec<i64>>, CliError> {
    s.split(';').map(parse_vector).collect()
}

/// Everything a subcommand can emit on stdout.
pub enum Output {
    Report(Report),
    Document(FanDocument),
}

impl Output {
    pub fn render(&self, machine: bool) -> String {
        match self {
            Output::Report(r) => {
                if machine {
                    serde_json::to_string_pretty(r).expect("report serializes")
                } else {
                    r.render_human()
                }
            }
            Output::Document(d) => {
                serde_json::to_string_pretty(d).expect("document serializes")
            }
        }
    }
}

pub struct Request {
    pub command: String,
    pub fan_path: Option<String>,
    pub fan_text: Option<String>,
    pub v: Option<Vec<i64>>,
    pub vp: Option<Vec<i64>>,
    pub vs: Option<Vec<Vec<i64>>>,
    pub weights: Option<Vec<Vec<i64>>>,
    pub p: Option<usize>,
    pub pp: Option<usize>,
    pub k: Option<i64>,
    pub m: Option<i64>,
    pub example: Option<String>,
    pub force_compact: bool,
}

fn load_document(req: &Request) -> Result<FanDocument, CliError> {
    if let Some(text) = &req.fan_text {
        return parse_fan_document(text);
    }
    let Some(path) = &req.fan_path else {
        return Err(CliError::input("BadParams: --fan FILE is required"));
    };
    let text = if path == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::input(format!("SyntaxError: cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("SyntaxError: cannot read {path}: {e}")))?
    };
    parse_fan_document(&text)
}

fn need_v(req: &Request) -> Result<Cocharacter, CliError> {
    req.v
        .clone()
        .map(Cocharacter)
        .ok_or_else(|| CliError::input("BadParams: --v a,b,... is required"))
}

fn membership_string(m: Membership) -> &'static str {
    match m {
        Membership::Interior => "interior (contracting)",
        Membership::Boundary => "boundary (complete, not contracting)",
        Membership::Outside => "outside (not complete)",
    }
}

/// Execute one request, producing the output or a classified error.
pub fn execute(req: &Request) -> Result<Output, CliError> {
    match req.command.as_str() {
        "examples" => {
            let Some(name) = &req.example else {
                let mut r = Report::new("examples");
                r.set("names", json!(example_names()));
                return Ok(Output::Report(r));
            };
            let doc = generate_example(name, req.k, req.m)?;
            Ok(Output::Document(doc))
        }
        "validate" => {
            let doc = load_document(req)?;
            let fan = doc.fan()?;
            let report = validate_fan(&fan)?;
            let mut r = Report::new("validate");
            r.fan = doc.name.clone();
            r.set("smooth", json!(report.smooth));
            r.set("support_convex", json!(report.support_convex));
            r.set("support_full_dim", json!(report.support_full_dim));
            r.set("complete", json!(report.complete));
            r.set(
                "semiprojective_candidate",
                json!(report.semiprojective_candidate),
            );
            r.set("rays", json!(fan.ray_count()));
            r.set("max_cones", json!(fan.max_cones.len()));
            Ok(Output::Report(r))
        }
        "classify" => {
            let doc = load_document(req)?;
            let md = doc.moment_data()?;
            let g = classify_geometry(&md)?;
            let mut r = Report::new("classify");
            r.fan = doc.name.clone();
            r.geometry = Some(geometry_string(&g));
            r.set("lambda", json!(md.lambda));
            Ok(Output::Report(r))
        }
        "cohomology" => {
            let doc = load_document(req)?;
            let fan = doc.fan()?;
            let p = classical_cohomology(&fan)?;
            let mut r = Report::new("cohomology");
            r.fan = doc.name.clone();
            r.set("classical", presentation_json(&p));
            Ok(Output::Report(r))
        }
        "quantum" => {
            let doc = load_document(req)?;
            let md = doc.moment_data()?;
            let qh = quantum_cohomology(&md)?;
            let mut r = Report::new("quantum");
            r.fan = doc.name.clone();
            r.geometry = Some(geometry_string(&qh.geometry));
            if qh.geometry.compact {
                r.warnings
                    .push("compact fan: quantum cohomology of a projective toric manifold".into());
            }
            r.set("quantum", presentation_json(&qh.presentation));
            r.set("reduced", reduced_json(&qh.reduced, false));
            Ok(Output::Report(r))
        }
        "symplectic" => {
            let doc = load_document(req)?;
            let md = doc.moment_data()?;
            let v = need_v(req)?;
            let qh = quantum_cohomology(&md)?;
            let mut r = Report::new("symplectic");
            r.fan = doc.name.clone();
            r.geometry = Some(geometry_string(&qh.geometry));
            if qh.geometry.compact {
                if !req.force_compact {
                    return Err(CliError::domain(
                        "CompactFan: symplectic cohomology needs a noncompact fan (use --force-compact for eigenspace data)",
                    ));
                }
                let f = integer_filtration(&md, &v, &qh)?;
                r.warnings.push(
                    "compact fan: reporting generalized 0-eigenspace data only".into(),
                );
                r.set("eigenspace_dim", json!(f.e_v.dim()));
                r.set("qh_dim", json!(f.qh_dim));
                r.set("complement_dim", json!(f.sh_dim));
                return Ok(Output::Report(r));
            }
            let sh = symplectic_cohomology(&md, &v)?;
            r.set("dim", json!(sh.dim));
            r.set("route_agreement", json!(sh.route_agreement));
            r.set("eigenspace_dim", json!(sh.eigenspace_dim));
            r.set("qh_dim", json!(sh.qh_dim));
            r.set("presentation", reduced_json(&sh.presentation, true));
            Ok(Output::Report(r))
        }
        "jacobian" => {
            let doc = load_document(req)?;
            let md = doc.moment_data()?;
            let j = jacobian_ring(&md)?;
            let mut r = Report::new("jacobian");
            r.fan = doc.name.clone();
            let gens: Vec<String> = j.generators.iter().map(|g| g.to_string()).collect();
            let gb: Vec<String> = j
                .groebner
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect();
            let w: Vec<String> = j
                .summands
                .iter()
                .map(|(l, e)| {
                    let mut parts = vec![];
                    match -l {
                        0 => {}
                        1 => parts.push("T".to_string()),
                        k => parts.push(format!("T^{k}")),
                    }
                    for (i, &exp) in e.iter().enumerate() {
                        match exp {
                            0 => {}
                            1 => parts.push(format!("z{}", i + 1)),
                            _ => parts.push(format!("z{}^{}", i + 1, exp)),
                        }
                    }
                    if parts.is_empty() {
                        "1".to_string()
                    } else {
                        parts.join("*")
                    }
                })
                .collect();
            r.set("superpotential", json!(w.join(" + ")));
            r.set("derivatives", json!(gens));
            r.set("groebner_basis", json!(gb));
            r.set("dim", json!(j.dim));
            Ok(Output::Report(r))
        }
        "equivariant" => {
            let doc = load_document(req)?;
            let md = doc.moment_data()?;
            let v = need_v(req)?;
            let eq = equivariant_quantum(&md, &v)?;
            let es = equivariant_symplectic(&md, &v)?;
            let mut r = Report::new("equivariant");
            r.fan = doc.name.clone();
            r.set("presentation", presentation_json(&eq.display));
            r.set("rank_over_k(u)", json!(eq.rank_over_ku));
            r.set("u0_matches_quantum", json!(eq.u0_matches_quantum));
            r.set("xi0", json!(eq.xi0));
            r.set("vperp_basis", json!(eq.vperp_basis));
            r.set("symplectic_dim_over_k(u)", json!(es.dim_over_ku));
            r.set("symplectic_dim_u0", json!(es.dim_u0));
            r.set("u_reduces_to_x", json!(es.u_reduces_to_x));
            if let Ok(j) = jacobian_ring(&md) {
                r.set("jacobian_dim", json!(j.dim));
            }
            Ok(Output::Report(r))
        }
        "fixed-loci" => {
            let doc = load_document(req)?;
            let fan = doc.fan()?;
            let v = need_v(req)?;
            let comps = fixed_locus(&fan, &v)?;
            let mut r = Report::new("fixed-loci");
            r.fan = doc.name.clone();
            let list: Vec<Value> = comps
                .iter()
                .map(|c| {
                    json!({
                        "cone": one_based(&c.cone),
                        "orbit_dim": c.orbit_dim,
                        "compact": c.compact,
                        "minimal": c.minimal,
                    })
                })
                .collect();
            r.set("membership", json!(membership_string(support_membership(&fan, &v)?)));
            r.set("components", json!(list));
            Ok(Output::Report(r))
        }
        "core" => {
            let doc = load_document(req)?;
            let fan = doc.fan()?;
            let cones = fan_core(&fan);
            let mut r = Report::new("core");
            r.fan = doc.name.clone();
            let divisors: Vec<usize> = cones
                .iter()
                .filter(|c| c.len() == 1)
                .map(|c| c[0] + 1)
                .collect();
            let all: Vec<Vec<usize>> = cones.iter().map(|c| one_based(c)).collect();
            r.set("interior_cones", json!(all));
            r.set("compact_divisors", json!(divisors));
            Ok(Output::Report(r))
        }
        "morse-bott" => {
            let doc = load_document(req)?;
            let md = doc.moment_data()?;
            let v = need_v(req)?;
            let data = morse_bott_data(&md, &v)?;
            let mut r = Report::new("morse-bott");
            r.fan = doc.name.clone();
            let pts: Vec<Value> = data
                .points
                .iter()
                .map(|p| {
                    let vert: Vec<String> = p.vertex.iter().map(|q| q.to_string()).collect();
                    json!({
                        "vertex": vert,
                        "cone": one_based(&p.cone),
                        "weights": p.weights,
                        "index": p.index,
                    })
                })
                .collect();
            let poincare = data
                .poincare
                .iter()
                .map(|(e, c)| match e {
                    0 => format!("{c}"),
                    1 => {
                        if *c == 1 {
                            "t".to_string()
                        } else {
                            format!("{c}*t")
                        }
                    }
                    _ => {
                        if *c == 1 {
                            format!("t^{e}")
                        } else {
                            format!("{c}*t^{e}")
                        }
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ");
            r.set("points", json!(pts));
            r.set("poincare", json!(poincare));
            Ok(Output::Report(r))
        }
        "rotation" => {
            let doc = load_document(req)?;
            let md = doc.moment_data()?;
            let v = need_v(req)?;
            let qh = quantum_cohomology(&md)?;
            let rc = rotation_class(&md, &v, &qh)?;
            let mut r = Report::new("rotation");
            r.fan = doc.name.clone();
            let mono = Poly::<NovikovScalar>::monomial(&qh.presentation.ring, rc.monomial.clone());
            r.set("monomial", json!(mono.to_string()));
            r.set("cone", json!(one_based(&md.fan.max_cones[rc.cone_index])));
            r.set("normal_form", json!(rc.normal_form.to_string()));
            r.set("min_moment", json!(rc.min_h.to_string()));
            r.set("normalized", json!(rc.normalized.to_string()));
            Ok(Output::Report(r))
        }
        "a-function" => {
            let doc = load_document(req)?;
            let md = doc.moment_data()?;
            let Some(vs) = &req.vs else {
                return Err(CliError::input("BadParams: --vs v1;v2;... is required"));
            };
            let vs: Vec<Cocharacter> = vs.iter().cloned().map(Cocharacter).collect();
            let a = a_function(&md, &vs)?;
            let mut r = Report::new("a-function");
            r.fan = doc.name.clone();
            r.set("a", json!(a.to_string()));
            let mins: Vec<String> = vs
                .iter()
                .map(|v| min_moment(&md, v).map(|m| m.to_string()))
                .collect::<Result<_, _>>()?;
            r.set("min_moments", json!(mins));
            Ok(Output::Report(r))
        }
        "rescale" => {
            let mut r = Report::new("rescale");
            let ws = if let Some(w) = &req.weights {
                WeightSystem {
                    weights: w.clone(),
                }
            } else {
                let doc = load_document(req)?;
                r.fan = doc.name.clone();
                let fan = doc.fan()?;
                dual_cone_hilbert_basis(&fan)?
            };
            let v = need_v(req)?;
            let vp = req
                .vp
                .clone()
                .map(Cocharacter)
                .ok_or_else(|| CliError::input("BadParams: --vp a,b,... is required"))?;
            let k = rescaling_constant(&ws, &v, &vp)?;
            r.set("weights", json!(ws.weights));
            r.set("k", json!(k.to_string()));
            let (lcm_v, p) = psi_map_exponents(&ws, &v)?;
            r.set("lcm_v", json!(lcm_v));
            r.set("psi_exponents_v", json!(p));
            let (lcm_vp, p) = psi_map_exponents(&ws, &vp)?;
            r.set("lcm_vp", json!(lcm_vp));
            r.set("psi_exponents_vp", json!(p));
            Ok(Output::Report(r))
        }
        "filtration" => {
            let doc = load_document(req)?;
            let md = doc.moment_data()?;
            let v = need_v(req)?;
            let qh = quantum_cohomology(&md)?;
            let f = integer_filtration(&md, &v, &qh)?;
            let mut r = Report::new("filtration");
            r.fan = doc.name.clone();
            r.set("chain_dims", json!(f.chain_dims));
            r.set("n_v", json!(f.n_v));
            r.set("eigenspace_dim", json!(f.e_v.dim()));
            r.set("qh_dim", json!(f.qh_dim));
            r.set("sh_dim", json!(f.sh_dim));
            // Both labellings of the chain.
            let descending: Vec<Value> = f
                .chain_dims
                .iter()
                .enumerate()
                .map(|(j, d)| json!({"power": j, "dim": d}))
                .collect();
            let ascending: Vec<Value> = (0..=f.n_v)
                .map(|p| json!({"fil": p, "dim": f.chain_dims[f.n_v - p]}))
                .collect();
            r.set("labels_by_power", json!(descending));
            r.set("labels_ascending", json!(ascending));
            if let (Some(vp), Some(p), Some(pp)) = (&req.vp, req.p, req.pp) {
                let vp = Cocharacter(vp.clone());
                let inc = filtration_inclusion(&md, &v, &vp, p, pp, &qh)?;
                r.set("inclusion", json!(inc));
            }
            Ok(Output::Report(r))
        }
        "hilbert-basis" => {
            let doc = load_document(req)?;
            let fan = doc.fan()?;
            let ws = dual_cone_hilbert_basis(&fan)?;
            let mut r = Report::new("hilbert-basis");
            r.fan = doc.name.clone();
            r.set("weights", json!(ws.weights));
            if let Some(v) = &req.v {
                let v = Cocharacter(v.clone());
                let class = classify_action_from_weights(&ws, &v)?;
                r.set(
                    "classification",
                    json!(match class {
                        ActionClass::Contracting => "contracting",
                        ActionClass::CompleteOnly => "complete-only",
                        ActionClass::NotComplete => "not-complete",
                    }),
                );
            }
            Ok(Output::Report(r))
        }
        "vertices" => {
            let doc = load_document(req)?;
            let md = doc.moment_data()?;
            let verts = polytope_vertices(&md)?;
            let mut r = Report::new("vertices");
            r.fan = doc.name.clone();
            let list: Vec<Value> = verts
                .iter()
                .map(|(x, c)| {
                    let coords: Vec<String> = x.iter().map(|q| q.to_string()).collect();
                    json!({"vertex": coords, "cone": one_based(c)})
                })
                .collect();
            r.set("vertices", json!(list));
            Ok(Output::Report(r))
        }
        other => Err(CliError::input(format!("UnknownCommand: {other}"))),
    }
}

/// Sanity helper used by tests: eigenspace dimension of multiplication by
/// the rotation monomial in forced-compact mode.
pub fn eigenspace_dim_for(md: &MomentData, v: &Cocharacter) -> Result<usize, CliError> {
    let qh = quantum_cohomology(md)?;
    let (_, exps) = crate::polyhedral::rotation_monomial(&md.fan, v)?;
    let xv = Poly::<NovikovScalar>::monomial(&qh.presentation.ring, exps);
    let m = crate::groebner::multiplication_matrix(&qh.presentation.groebner, &xv)
        .map_err(|_| CliError::domain("InfiniteQuotient: quantum quotient is infinite"))?;
    Ok(kernel_of_power(&m, qh.dim().max(1)).dim())
}

/// Parse argv and run; returns (exit status, stdout text, stderr text).
pub fn run(argv: &[String]) -> (i32, String, String) {
    match parse_args(argv) {
        Err(e) if e.exit == 0 => (0, e.message, String::new()),
        Err(e) => (e.exit, String::new(), format!("error: {}\n", e.message)),
        Ok((req, machine)) => match execute(&req) {
            Ok(out) => (0, out.render(machine), String::new()),
            Err(e) => (e.exit, String::new(), format!("error: {}\n", e.message)),
        },
    }
}

const USAGE: &str = "usage: qtoric <command> [options]

commands:
  validate      --fan FILE                 structural and geometric fan checks
  classify      --fan FILE                 Fano / Calabi-Yau / other
  cohomology    --fan FILE                 classical cohomology presentation
  quantum       --fan FILE                 quantum cohomology presentation
  symplectic    --fan FILE --v a,b         symplectic cohomology (two routes)
  jacobian      --fan FILE                 superpotential Jacobian ring
  equivariant   --fan FILE --v a,b         equivariant quantum/symplectic data
  fixed-loci    --fan FILE --v a,b         fixed locus of the action
  core          --fan FILE                 interior cones and compact divisors
  morse-bott    --fan FILE --v a,b         vertex weights and indices
  rotation      --fan FILE --v a,b         rotation class of the action
  a-function    --fan FILE --vs v1;v2;..   period defect of a sum of actions
  rescale       --weights w1;w2;.. --v a,b --vp c,d   period-rescaling constant
  filtration    --fan FILE --v a,b [--vp c,d --p P --pp Q]   integer filtration
  hilbert-basis --fan FILE [--v a,b]       dual-cone Hilbert basis
  vertices      --fan FILE                 moment polytope vertices
  examples [NAME] [--k K --m M]            emit a built-in fan document

options: --json (machine-readable report), --fan - (read stdin), --force-compact
";

fn parse_args(argv: &[String]) -> Result<(Request, bool), CliError> {
    let mut req = Request {
        command: String::new(),
        fan_path: None,
        fan_text: None,
        v: None,
        vp: None,
        vs: None,
        weights: None,
        p: None,
        pp: None,
        k: None,
        m: None,
        example: None,
        force_compact: false,
    };
    let mut machine = false;
    let mut args = argv.iter().skip(1).peekable();
    let Some(cmd) = args.next() else {
        return Err(CliError::input(format!("UnknownCommand: none given\n{USAGE}")));
    };
    if cmd == "--help" || cmd == "-h" || cmd == "help" {
        return Err(CliError {
            exit: 0,
            message: USAGE.to_string(),
        });
    }
    req.command = cmd.clone();
    if req.command == "examples" {
        if let Some(name) = args.peek() {
            if !name.starts_with("--") {
                req.example = Some(args.next().unwrap().clone());
            }
        }
    }
    while let Some(arg) = args.next() {
        let mut take = |name: &str| -> Result<String, CliError> {
            args.next()
                .cloned()
                .ok_or_else(|| CliError::input(format!("BadParams: {name} needs a value")))
        };
        match arg.as_str() {
            "--json" => machine = true,
            "--force-compact" => req.force_compact = true,
            "--fan" => req.fan_path = Some(take("--fan")?),
            "--v" => req.v = Some(parse_vector(&take("--v")?)?),
            "--vp" => req.vp = Some(parse_vector(&take("--vp")?)?),
            "--vs" => req.vs = Some(parse_vector_list(&take("--vs")?)?),
            "--weights" => req.weights = Some(parse_vector_list(&take("--weights")?)?),
            "--p" => {
                req.p = Some(take("--p")?.parse().map_err(|_| {
                    CliError::input("BadParams: --p needs a nonnegative integer")
                })?)
            }
            "--pp" => {
                req.pp = Some(take("--pp")?.parse().map_err(|_| {
                    CliError::input("BadParams: --pp needs a nonnegative integer")
                })?)
            }
            "--k" => {
                req.k = Some(take("--k")?.parse().map_err(|_| {
                    CliError::input("BadParams: --k needs an integer")
                })?)
            }
            "--m" => {
                req.m = Some(take("--m")?.parse().map_err(|_| {
                    CliError::input("BadParams: --m needs an integer")
                })?)
            }
            other => {
                return Err(CliError::input(format!(
                    "BadParams: unknown option {other}"
                )))
            }
        }
    }
    Ok((req, machine))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_parse_and_validate() {
        for name in ["blp-cxp1", "cp2", "c2", "conifold-resolution"] {
            let doc = generate_example(name, None, None).unwrap();
            let text = serde_json::to_string_pretty(&doc).unwrap();
            let parsed = parse_fan_document(&text).unwrap();
            assert_eq!(parsed, doc, "round trip for {name}");
        }
        for (k, m) in [(1, 1), (1, 2), (2, 2), (3, 2), (2, 1), (3, 3)] {
            let doc = generate_example("o(-k)-cpm", Some(k), Some(m)).unwrap();
            let text = serde_json::to_string(&doc).unwrap();
            parse_fan_document(&text).unwrap();
        }
        let inline = generate_example("o(-1)-cp1", None, None).unwrap();
        assert_eq!(inline.rays, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(inline.max_cones, vec![vec![1, 3], vec![2, 3]]);
        assert!(generate_example("o(-4)-cp2", None, None).is_err());
        assert!(generate_example("nope", None, None).is_err());
    }

    #[test]
    fn parse_rejects_bad_documents() {
        let e = parse_fan_document("{ not json").unwrap_err();
        assert_eq!(e.exit, 1);
        assert!(e.message.starts_with("SyntaxError"));

        let doc = r#"{"rank": 2, "rays": [[2, 0]], "max_cones": [[1]]}"#;
        let e = parse_fan_document(doc).unwrap_err();
        assert_eq!(e.exit, 1);
        assert!(e.message.contains("NonPrimitiveRay"));

        let doc = r#"{"rank": 2, "rays": [[1, 0, 0]], "max_cones": [[1]]}"#;
        let e = parse_fan_document(doc).unwrap_err();
        assert!(e.message.starts_with("SchemaError"));
    }

    fn run_cmd(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("qtoric".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        run(&argv)
    }

    fn with_example(name: &str) -> String {
        let doc = generate_example(name, None, None).unwrap();
        let dir = std::env::temp_dir().join("qtoric-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn symplectic_command_blp() {
        let path = with_example("blp-cxp1");
        let (code, out, err) = run_cmd(&["symplectic", "--fan", &path, "--v", "1,1"]);
        assert_eq!(code, 0, "stderr: {err}");
        assert!(out.contains("dim: 0"));
        assert!(out.contains("route_agreement: true"));
    }

    #[test]
    fn quantum_command_cp2_contains_relation() {
        let path = with_example("cp2");
        let (code, out, _) = run_cmd(&["quantum", "--fan", &path]);
        assert_eq!(code, 0);
        assert!(out.contains("x1^3 - T^3"), "output:\n{out}");
    }

    #[test]
    fn rescale_command_matches_example() {
        let (code, out, _) = run_cmd(&[
            "rescale",
            "--weights",
            "1,2;2,1;1,1",
            "--v",
            "1,1",
            "--vp",
            "1,0",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("k: 3/2"));
        assert!(out.contains("lcm_v: 6"));
    }

    #[test]
    fn exit_codes() {
        // input error: missing fan
        let (code, _, _) = run_cmd(&["quantum"]);
        assert_eq!(code, 1);
        // domain error: symplectic on a boundary cocharacter
        let path = with_example("blp-cxp1");
        let (code, _, err) = run_cmd(&["symplectic", "--fan", &path, "--v", "0,1"]);
        assert_eq!(code, 2);
        assert!(err.contains("NotContracting"));
        // domain error: compact fan without force
        let path = with_example("cp2");
        let (code, _, err) = run_cmd(&["symplectic", "--fan", &path, "--v", "1,1"]);
        assert_eq!(code, 2);
        assert!(err.contains("CompactFan"));
        let (code, out, _) = run_cmd(&[
            "symplectic",
            "--fan",
            &path,
            "--v",
            "1,1",
            "--force-compact",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("eigenspace_dim: 0"));
        // unknown command
        let (code, _, err) = run_cmd(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(err.contains("UnknownCommand"));
    }

    #[test]
    fn report_round_trips() {
        let path = with_example("blp-cxp1");
        let (code, out, _) = run_cmd(&["quantum", "--fan", &path, "--json"]);
        assert_eq!(code, 0);
        let report: Report = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn determinism() {
        let path = with_example("conifold-resolution");
        let (c1, o1, _) = run_cmd(&["quantum", "--fan", &path, "--json"]);
        let (c2, o2, _) = run_cmd(&["quantum", "--fan", &path, "--json"]);
        assert_eq!((c1, &o1), (c2, &o2));
    }
}
