use std::fmt::Write;

use anyhow::{anyhow, Result};
use serde::Serialize;

use skein_core::arith::{even_sublattice, expected_kernel, kernel_lattice, lambda_hat, lattice_index, orders, pi_degree, RootOfUnity};
use skein_core::pants::{decompose, lambda_violation, ComponentSpec, PantsCoord, PantsRegistry, PantsType};
use skein_core::qtrace::{check_thmbtr, slot_scalar_name, utr_coord, utr_lead, TraceTheoremReport, TraceElement};
use skein_core::surface::{d_embed, face_split, lambda_global_violation, phi_lead, DtDatum, GlobalCoord};

/// Plain-text rendering for `--format text`.
pub trait Render {
    fn render(&self) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok { Verdict::Pass } else { Verdict::Fail }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    fn label(self) -> &'static str {
        if self.passed() { "PASS" } else { "FAIL" }
    }
}

fn rows(rows: &[Vec<i64>]) -> String {
    rows.iter().map(|r| format!("  {r:?}\n")).collect()
}

fn render_element(value: &TraceElement, name: &dyn Fn(u32) -> String) -> String {
    if value.is_zero() {
        return "0".into();
    }
    value
        .terms()
        .rev()
        .map(|(e, c)| format!("({})Y^{:?}", c.display_with(name), e.as_slice()))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn puncture_name(var: u32) -> String {
    format!("d{}", var + 1)
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub genus: usize,
    pub punctures: usize,
    pub curves: usize,
    pub xi: RootOfUnity,
    pub q: Vec<Vec<i64>>,
    pub q_tilde: Vec<Vec<i64>>,
    pub lambda_hat: Vec<Vec<i64>>,
    pub even_sublattice: Vec<Vec<i64>>,
    pub kernel: Vec<Vec<i64>>,
    pub expected_kernel: Vec<Vec<i64>>,
    pub index: u128,
    pub pi_degree: u128,
    pub verdict: Verdict,
}

pub fn cmd_analyze(datum: &DtDatum, xi_order: u64) -> Result<AnalyzeReport> {
    let xi = orders(xi_order)?;
    let hat = lambda_hat(datum);
    let kernel = kernel_lattice(datum, xi_order)?;
    let expected = expected_kernel(datum, &xi);
    let index = lattice_index(&kernel, &hat)?;
    let degree = pi_degree(datum.genus(), datum.punctures(), &xi)?;
    Ok(AnalyzeReport {
        genus: datum.genus(),
        punctures: datum.punctures(),
        curves: datum.curves(),
        xi,
        q: datum.q_matrix().rows(),
        q_tilde: datum.q_tilde().rows(),
        lambda_hat: hat.vectors().to_vec(),
        even_sublattice: even_sublattice(datum).vectors().to_vec(),
        verdict: Verdict::from_bool(kernel == expected && index == degree * degree),
        kernel: kernel.vectors().to_vec(),
        expected_kernel: expected.vectors().to_vec(),
        index,
        pi_degree: degree,
    })
}

impl Render for AnalyzeReport {
    fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "surface (g, m) = ({}, {}), r = {}", self.genus, self.punctures, self.curves);
        let _ = writeln!(
            s,
            "root of unity: N'' = {}, N' = {}, N = {}, epsilon = xi^{}",
            self.xi.order, self.xi.square_order, self.xi.quartic_order, self.xi.epsilon_exponent
        );
        let _ = write!(s, "Q:\n{}Q~:\n{}", rows(&self.q), rows(&self.q_tilde));
        let _ = write!(s, "Lambda^ basis:\n{}even sublattice basis:\n{}", rows(&self.lambda_hat), rows(&self.even_sublattice));
        let _ = write!(s, "kernel basis:\n{}expected kernel basis:\n{}", rows(&self.kernel), rows(&self.expected_kernel));
        let _ = writeln!(s, "index = {}, PI-degree D = {}", self.index, self.pi_degree);
        let _ = writeln!(s, "verdict: {}", self.verdict.label());
        s
    }
}

#[derive(Serialize)]
pub struct FaceSplit {
    pub face: usize,
    pub pants: PantsType,
    pub boundary_curves: Vec<usize>,
    pub coord: PantsCoord,
    pub components: Vec<ComponentSpec>,
}

#[derive(Serialize)]
pub struct CoordsReport {
    pub genus: usize,
    pub punctures: usize,
    pub coord: GlobalCoord,
    pub member: bool,
    pub witness: Option<String>,
    pub degree: Option<Vec<i64>>,
    pub faces: Vec<FaceSplit>,
}

pub fn cmd_coords(datum: &DtDatum, flat: &[i64]) -> Result<CoordsReport> {
    let coord = GlobalCoord::from_flat(flat)?;
    if coord.curves() != datum.curves() {
        return Err(anyhow!("coordinate has {} curves, surface has {}", coord.curves(), datum.curves()));
    }
    let witness = lambda_global_violation(datum, &coord);
    let mut faces = Vec::new();
    let mut degree = None;
    if witness.is_none() {
        degree = Some(d_embed(&coord));
        for (idx, pc) in face_split(datum, &coord)?.into_iter().enumerate() {
            let face = &datum.faces()[idx];
            faces.push(FaceSplit {
                face: idx,
                pants: face.pants,
                boundary_curves: face.boundary_curves.clone(),
                components: decompose(face.pants, &pc)?,
                coord: pc,
            });
        }
    }
    Ok(CoordsReport {
        genus: datum.genus(),
        punctures: datum.punctures(),
        member: witness.is_none(),
        coord,
        witness,
        degree,
        faces,
    })
}

impl Render for CoordsReport {
    fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "surface (g, m) = ({}, {}), coordinate {}", self.genus, self.punctures, self.coord);
        match &self.witness {
            Some(w) => {
                let _ = writeln!(s, "not a member: {w}");
            }
            None => {
                let _ = writeln!(s, "member; degree vector {:?}", self.degree.as_deref().unwrap_or_default());
                for f in &self.faces {
                    let _ = writeln!(s, "  face {} ({}, curves {:?}): {}", f.face, f.pants, f.boundary_curves, f.coord);
                }
            }
        }
        s
    }
}

#[derive(Serialize)]
pub struct SurfaceTraceReport {
    pub genus: usize,
    pub punctures: usize,
    pub coord: GlobalCoord,
    pub lead: Vec<i64>,
    pub lead_coefficient: String,
    pub lead_matches: bool,
    pub terms: usize,
    pub trace: String,
    pub faces: Vec<TraceTheoremReport>,
}

impl SurfaceTraceReport {
    pub fn passed(&self) -> bool {
        self.lead_matches && self.faces.iter().all(TraceTheoremReport::passed)
    }
}

pub fn cmd_trace(datum: &DtDatum, flat: &[i64]) -> Result<SurfaceTraceReport> {
    let coord = GlobalCoord::from_flat(flat)?;
    if let Some(why) = lambda_global_violation(datum, &coord) {
        return Err(anyhow!("{coord} is not in the coordinate monoid: {why}"));
    }
    let value = phi_lead(datum, &coord)?;
    let faces = face_split(datum, &coord)?
        .iter()
        .zip(datum.faces())
        .map(|(pc, face)| check_thmbtr(face.pants, pc))
        .collect::<skein_core::Result<Vec<_>>>()?;
    Ok(SurfaceTraceReport {
        genus: datum.genus(),
        punctures: datum.punctures(),
        lead_matches: value.lead_matches(&coord),
        lead: value.lead.to_vec(),
        lead_coefficient: value.lead_coefficient.display_with(&puncture_name),
        terms: value.element.len(),
        trace: render_element(&value.element, &puncture_name),
        coord,
        faces,
    })
}

impl Render for SurfaceTraceReport {
    fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "surface (g, m) = ({}, {}), coordinate {}", self.genus, self.punctures, self.coord);
        let _ = writeln!(s, "trace ({} terms): {}", self.terms, self.trace);
        let _ = writeln!(s, "lead: ({})Y^{:?}, matches coordinate: {}", self.lead_coefficient, self.lead, self.lead_matches);
        for (idx, f) in self.faces.iter().enumerate() {
            let verdict = Verdict::from_bool(f.passed());
            let _ = writeln!(s, "  face {idx} ({}): trace theorem {}", f.pants, verdict.label());
        }
        let _ = writeln!(s, "verdict: {}", Verdict::from_bool(self.passed()).label());
        s
    }
}

#[derive(Serialize)]
pub struct PantsTraceReport {
    pub pants: PantsType,
    pub coord: PantsCoord,
    pub trace: String,
    pub terms: usize,
    pub lead: Vec<i64>,
    pub lead_coefficient: String,
    pub components: Vec<ComponentSpec>,
    pub trace_theorem: TraceTheoremReport,
}

pub fn cmd_trace_pants(name: &str, flat: &[i64]) -> Result<PantsTraceReport> {
    let registry = PantsRegistry::default();
    let model = registry.get(name).ok_or_else(|| {
        anyhow!("unknown pants type {name:?}; known: {}", registry.names().collect::<Vec<_>>().join(", "))
    })?;
    let ty = model.pants_type();
    let coord = PantsCoord::from_flat(ty, flat)?;
    if let Some(why) = lambda_violation(ty, &coord) {
        return Err(anyhow!("{coord} is not in the {ty} monoid: {why}"));
    }
    let value = utr_coord(ty, &coord)?;
    let (lead, coeff) = utr_lead(ty, &value)?;
    Ok(PantsTraceReport {
        pants: ty,
        trace: render_element(&value, &slot_scalar_name),
        terms: value.len(),
        lead: lead.to_vec(),
        lead_coefficient: coeff.display_with(&slot_scalar_name),
        components: decompose(ty, &coord)?,
        trace_theorem: check_thmbtr(ty, &coord)?,
        coord,
    })
}

impl Render for PantsTraceReport {
    fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} coordinate {}", self.pants, self.coord);
        let _ = writeln!(s, "trace ({} terms): {}", self.terms, self.trace);
        let _ = writeln!(s, "lead: ({})Y^{:?}", self.lead_coefficient, self.lead);
        let _ = writeln!(s, "trace theorem: {}", Verdict::from_bool(self.trace_theorem.passed()).label());
        for v in &self.trace_theorem.violations {
            let _ = writeln!(s, "  {v}");
        }
        s
    }
}
