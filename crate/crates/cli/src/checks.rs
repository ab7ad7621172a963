//! Verification checks, registered as trait objects and selected by name.

use std::collections::HashMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use skein_core::arith::{
    chebyshev, evaluate_laurent, expected_kernel, kernel_lattice_for, lambda_hat, lattice_index, orders, pi_degree,
    threading_coeffs, LatticeBasis,
};
use skein_core::pants::{lambda_contains, nu_of_component, Component, PantsCoord, PantsType};
use skein_core::qtorus::{mono_mul, weyl_normalize, AntisymMatrix, TorusElement};
use skein_core::qtrace::check_thmbtr;
use skein_core::ring::{GroundRing, HalfLaurent};
use skein_core::surface::{d_embed, graded_mul, lambda_global, phi, phi_lead, standard_datum, DtDatum, GlobalCoord};

use crate::report::{Render, Verdict};

#[derive(Clone, Debug, Serialize)]
pub struct GridSpec {
    pub rmax: usize,
    pub nmax: u64,
    /// Coordinate box `max |n|, |t|` for exhaustive checks.
    #[serde(rename = "box")]
    pub bound: i64,
    /// Random pairs per surface or monoid.
    pub pairs: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            rmax: 4,
            nmax: 12,
            bound: 2,
            pairs: 1000,
        }
    }
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = Self::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| anyhow!("grid entry {item:?} is not key=value"))?;
            let bad = || format!("bad value in grid entry {item:?}");
            match key.trim() {
                "rmax" => spec.rmax = value.trim().parse().with_context(bad)?,
                "nmax" => spec.nmax = value.trim().parse().with_context(bad)?,
                "box" => spec.bound = value.trim().parse().with_context(bad)?,
                "pairs" => spec.pairs = value.trim().parse().with_context(bad)?,
                other => bail!("unknown grid key {other:?}; expected rmax, nmax, box or pairs"),
            }
        }
        if spec.rmax == 0 || spec.nmax == 0 || spec.bound < 0 {
            bail!("grid needs rmax ≥ 1, nmax ≥ 1 and box ≥ 0");
        }
        Ok(spec)
    }

    /// Every non-excluded `(g, m)` with `1 ≤ 3g − 3 + m ≤ rmax`.
    pub fn surfaces(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in 0..=(self.rmax + 3) / 3 {
            for m in 0..=self.rmax + 3 {
                let r = (3 * g + m) as i64 - 3;
                if (1..=self.rmax as i64).contains(&r) && !(g == 1 && m == 1) {
                    out.push((g, m));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub surface: [usize; 2],
    pub xi_order: Option<u64>,
    pub k: Vec<i64>,
    pub l: Vec<i64>,
    /// `⟨k, l⟩` under the true Q̃.
    pub pairing: Option<i64>,
    /// `⟨k, l⟩` under the matrix the check used.
    pub pairing_used: Option<i64>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub verdict: Verdict,
    pub cases: usize,
    pub detail: String,
    pub witness: Option<Witness>,
}

pub struct Context {
    pub grid: GridSpec,
    pub seed: u64,
    pub corrupt_qtilde: bool,
    pub data: Vec<DtDatum>,
}

impl Context {
    /// The pairing matrix used by lattice checks; one `n`–`t` entry is zeroed under corruption.
    fn pairing_matrix(&self, d: &DtDatum) -> Arc<AntisymMatrix> {
        if self.corrupt_qtilde {
            Arc::new(d.q_tilde().with_raw_entry(0, d.curves(), 0))
        } else {
            d.q_tilde().clone()
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
    }
}

pub trait Check {
    fn name(&self) -> &'static str;
    fn run(&self, ctx: &Context) -> CheckResult;
}

struct Tally {
    check: &'static str,
    cases: usize,
}

impl Tally {
    fn new(check: &'static str) -> Self {
        Self { check, cases: 0 }
    }

    fn pass(self, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            check: self.check,
            verdict: Verdict::Pass,
            cases: self.cases,
            detail: detail.into(),
            witness: None,
        }
    }

    fn fail(self, detail: impl Into<String>, witness: Option<Witness>) -> CheckResult {
        CheckResult {
            check: self.check,
            verdict: Verdict::Fail,
            cases: self.cases,
            detail: detail.into(),
            witness,
        }
    }
}

fn surface_of(d: &DtDatum) -> [usize; 2] {
    [d.genus(), d.punctures()]
}

/// A basis vector on which `found` and `expected` disagree, with a pairing partner in `hat`.
fn lattice_witness(
    d: &DtDatum,
    hat: &LatticeBasis,
    used: &AntisymMatrix,
    found: &LatticeBasis,
    expected: &LatticeBasis,
    modulus: u64,
) -> Option<Witness> {
    let extra = found.vectors().iter().find(|k| !expected.contains(k));
    let missing = expected.vectors().iter().find(|k| !found.contains(k));
    let (k, note) = match (extra, missing) {
        (Some(k), _) => (k, "in the computed kernel but not the expected one"),
        (None, Some(k)) => (k, "in the expected kernel but not the computed one"),
        (None, None) => return None,
    };
    let m = modulus as i64;
    let pair = |q: &AntisymMatrix, l: &[i64]| q.pairing(k, l).expect("dimensions match");
    let l = hat
        .vectors()
        .iter()
        .find(|l| pair(d.q_tilde(), l).rem_euclid(m) != pair(used, l).rem_euclid(m) || pair(d.q_tilde(), l).rem_euclid(m) != 0)
        .or_else(|| hat.vectors().first())?;
    Some(Witness {
        surface: surface_of(d),
        xi_order: Some(modulus),
        k: k.clone(),
        l: l.clone(),
        pairing: Some(pair(d.q_tilde(), l)),
        pairing_used: Some(pair(used, l)),
        note: note.into(),
    })
}

struct PiDegree;

impl Check for PiDegree {
    fn name(&self) -> &'static str {
        "pi-degree"
    }

    fn run(&self, ctx: &Context) -> CheckResult {
        let mut tally = Tally::new(self.name());
        for d in &ctx.data {
            let hat = lambda_hat(d);
            let q = ctx.pairing_matrix(d);
            for n in 1..=ctx.grid.nmax {
                tally.cases += 1;
                let xi = orders(n).expect("positive order");
                let degree = pi_degree(d.genus(), d.punctures(), &xi).expect("grid surfaces are valid");
                let kernel = kernel_lattice_for(&hat, &q, n).expect("dimensions match");
                let index = lattice_index(&kernel, &hat).ok();
                if index != Some(degree * degree) {
                    let expected = expected_kernel(d, &xi);
                    let witness = lattice_witness(d, &hat, &q, &kernel, &expected, n);
                    let shown = index.map_or("undefined".into(), |i| i.to_string());
                    return tally.fail(
                        format!("(g, m, n) = ({}, {}, {n}): index {shown}, D² = {}", d.genus(), d.punctures(), degree * degree),
                        witness,
                    );
                }
            }
        }
        tally.pass("index of the kernel lattice equals D² on every grid cell")
    }
}

struct KernelForm;

impl Check for KernelForm {
    fn name(&self) -> &'static str {
        "kernel-form"
    }

    fn run(&self, ctx: &Context) -> CheckResult {
        let mut tally = Tally::new(self.name());
        for d in &ctx.data {
            let hat = lambda_hat(d);
            let q = ctx.pairing_matrix(d);
            for n in 1..=ctx.grid.nmax {
                tally.cases += 1;
                let kernel = kernel_lattice_for(&hat, &q, n).expect("dimensions match");
                let expected = expected_kernel(d, &orders(n).expect("positive order"));
                if kernel != expected {
                    let witness = lattice_witness(d, &hat, &q, &kernel, &expected, n);
                    return tally.fail(
                        format!("(g, m, n) = ({}, {}, {n}): kernel differs from N·Λ^•", d.genus(), d.punctures()),
                        witness,
                    );
                }
            }
        }
        tally.pass("kernel lattice equals N·Λ̂ or N·Λ̂^ev in Hermite normal form")
    }
}

struct EvenIndex;

impl Check for EvenIndex {
    fn name(&self) -> &'static str {
        "even-index"
    }

    fn run(&self, ctx: &Context) -> CheckResult {
        let mut tally = Tally::new(self.name());
        for d in &ctx.data {
            tally.cases += 1;
            let hat = lambda_hat(d);
            let q = ctx.pairing_matrix(d);
            let even = kernel_lattice_for(&hat, &q, 4).expect("dimensions match");
            let index = lattice_index(&even, &hat).ok();
            let want = 1u128 << (2 * d.genus());
            if index != Some(want) {
                let truth = kernel_lattice_for(&hat, d.q_tilde(), 4).expect("dimensions match");
                let witness = lattice_witness(d, &hat, &q, &even, &truth, 4);
                return tally.fail(
                    format!("(g, m) = ({}, {}): even index {index:?}, 2^(2g) = {want}", d.genus(), d.punctures()),
                    witness,
                );
            }
        }
        tally.pass("even sublattice has index 2^(2g)")
    }
}

fn members_in_box(d: &DtDatum, bound: i64) -> Vec<GlobalCoord> {
    let r = d.curves();
    let side = 2 * bound + 1;
    let total = ((bound + 1) * side).pow(r as u32);
    (0..total)
        .filter_map(|mut idx| {
            let mut n = Vec::with_capacity(r);
            let mut t = Vec::with_capacity(r);
            for _ in 0..r {
                n.push(idx % (bound + 1));
                idx /= bound + 1;
                t.push(idx % side - bound);
                idx /= side;
            }
            let c = GlobalCoord::new(n, t);
            lambda_global(d, &c).then_some(c)
        })
        .collect()
}

fn sample_member(d: &DtDatum, bound: i64, rng: &mut ChaCha8Rng) -> GlobalCoord {
    let r = d.curves();
    loop {
        let c = GlobalCoord::new(
            (0..r).map(|_| rng.gen_range(0..=bound)).collect(),
            (0..r).map(|_| rng.gen_range(-bound..=bound)).collect(),
        );
        if lambda_global(d, &c) {
            return c;
        }
    }
}

fn coord_witness(d: &DtDatum, k: &GlobalCoord, l: Option<&GlobalCoord>, note: String) -> Witness {
    Witness {
        surface: surface_of(d),
        xi_order: None,
        k: k.flat(),
        l: l.map(GlobalCoord::flat).unwrap_or_default(),
        pairing: l.map(|l| d.q_tilde().pairing(&k.flat(), &l.flat()).expect("dimensions match")),
        pairing_used: None,
        note,
    }
}

struct LeadTerm;

impl Check for LeadTerm {
    fn name(&self) -> &'static str {
        "lead-term"
    }

    fn run(&self, ctx: &Context) -> CheckResult {
        let mut tally = Tally::new(self.name());
        for d in &ctx.data {
            for c in members_in_box(d, ctx.grid.bound) {
                tally.cases += 1;
                let note = match phi_lead(d, &c) {
                    Ok(v) if v.lead_matches(&c) => continue,
                    Ok(v) => format!("lead exponent {:?}", v.lead.as_slice()),
                    Err(e) => e.to_string(),
                };
                let witness = coord_witness(d, &c, None, note);
                return tally.fail(format!("Σ({},{}) {c}: lead is not Y^k", d.genus(), d.punctures()), Some(witness));
            }
        }
        tally.pass("every coordinate in the box has unique lead Y^k")
    }
}

struct TopProduct;

impl Check for TopProduct {
    fn name(&self) -> &'static str {
        "product"
    }

    fn run(&self, ctx: &Context) -> CheckResult {
        let mut tally = Tally::new(self.name());
        let mut rng = ctx.rng(5);
        let degree = |e: &[i64]| d_embed(&GlobalCoord::from_flat(e).expect("even length"));
        let bound = ctx.grid.bound.max(1);
        for d in &ctx.data {
            let mut cache: HashMap<GlobalCoord, TorusElement<GroundRing>> = HashMap::new();
            for _ in 0..ctx.grid.pairs {
                tally.cases += 1;
                let k = sample_member(d, bound, &mut rng);
                let l = sample_member(d, bound, &mut rng);
                let outcome = (|| -> skein_core::Result<Option<String>> {
                    let graded = graded_mul(d, &k, &l)?;
                    for c in [&k, &l] {
                        if !cache.contains_key(c) {
                            cache.insert(c.clone(), phi(d, c)?);
                        }
                    }
                    let prod = cache[&k].mul(&cache[&l])?;
                    let (lead, coeff) = prod.unique_lead(degree)?;
                    let ok = lead.to_vec() == graded.sum.flat() && coeff == GroundRing::from_laurent(graded.scalar());
                    Ok((!ok).then(|| format!("lead ({coeff})Y^{:?}", lead.as_slice())))
                })();
                let note = match outcome {
                    Ok(None) => continue,
                    Ok(Some(note)) => note,
                    Err(e) => e.to_string(),
                };
                let witness = coord_witness(d, &k, Some(&l), note);
                return tally.fail(format!("Σ({},{}) {k} · {l}", d.genus(), d.punctures()), Some(witness));
            }
        }
        tally.pass("lead of φ(k)φ(l) is q^{⟨k,l⟩/2} Y^{k+l}")
    }
}

fn pants_box(ty: PantsType, bound: i64) -> Vec<PantsCoord> {
    let j = ty.boundaries();
    let side = 2 * bound + 1;
    let total = ((bound + 1) * side).pow(j as u32);
    (0..total)
        .filter_map(|mut idx| {
            let mut n = Vec::with_capacity(j);
            let mut t = Vec::with_capacity(j);
            for _ in 0..j {
                n.push(idx % (bound + 1));
                idx /= bound + 1;
                t.push(idx % side - bound);
                idx /= side;
            }
            let c = PantsCoord::new(n, t);
            lambda_contains(ty, &c).then_some(c)
        })
        .collect()
}

struct PantsTrace;

impl Check for PantsTrace {
    fn name(&self) -> &'static str {
        "pants-trace"
    }

    fn run(&self, ctx: &Context) -> CheckResult {
        let mut tally = Tally::new(self.name());
        for ty in PantsType::ALL {
            for c in pants_box(ty, ctx.grid.bound) {
                tally.cases += 1;
                let note = match check_thmbtr(ty, &c) {
                    Ok(report) if report.passed() => continue,
                    Ok(report) => report.violations.join("; "),
                    Err(e) => e.to_string(),
                };
                return tally.fail(format!("{ty} {c}: {note}"), None);
            }
        }
        tally.pass("pants trace theorem holds on the box")
    }
}

struct MonoidClosure;

impl Check for MonoidClosure {
    fn name(&self) -> &'static str {
        "monoid"
    }

    fn run(&self, ctx: &Context) -> CheckResult {
        let mut tally = Tally::new(self.name());
        let mut rng = ctx.rng(7);
        let bound = ctx.grid.bound.max(1) * 3;
        for ty in PantsType::ALL {
            let j = ty.boundaries();
            let draw = |rng: &mut ChaCha8Rng| loop {
                let c = PantsCoord::new(
                    (0..j).map(|_| rng.gen_range(0..=bound)).collect(),
                    (0..j).map(|_| rng.gen_range(-bound..=bound)).collect(),
                );
                if lambda_contains(ty, &c) {
                    return c;
                }
            };
            for _ in 0..ctx.grid.pairs {
                tally.cases += 1;
                let (a, b) = (draw(&mut rng), draw(&mut rng));
                if !lambda_contains(ty, &a.add(&b)) {
                    return tally.fail(format!("{ty}: {a} + {b} is not a member"), None);
                }
            }
        }
        for d in &ctx.data {
            for _ in 0..ctx.grid.pairs {
                tally.cases += 1;
                let a = sample_member(d, bound, &mut rng);
                let b = sample_member(d, bound, &mut rng);
                if !lambda_global(d, &a.add(&b)) {
                    let witness = coord_witness(d, &a, Some(&b), "sum is not a member".into());
                    return tally.fail(format!("Σ({},{}): {a} + {b}", d.genus(), d.punctures()), Some(witness));
                }
            }
        }
        tally.pass("pants and surface monoids are closed under addition")
    }
}

struct Catalog;

impl Check for Catalog {
    fn name(&self) -> &'static str {
        "catalog"
    }

    fn run(&self, _ctx: &Context) -> CheckResult {
        let mut tally = Tally::new(self.name());
        let mut expected: Vec<(PantsType, usize, Vec<i64>)> = (0..3)
            .map(|j| {
                let mut t = vec![0; 3];
                t[(j + 1) % 3] = 1;
                (PantsType::P3, j, t)
            })
            .collect();
        expected.extend([
            (PantsType::P2, 0, vec![0, 1]),
            (PantsType::P2, 1, vec![-1, 1]),
            (PantsType::P1, 0, vec![1]),
        ]);
        for (ty, j, t) in expected {
            tally.cases += 1;
            let mut n = vec![0; ty.boundaries()];
            n[j] = 2;
            let want = PantsCoord::new(n, t);
            match nu_of_component(ty, &Component::Return { boundary: j, twist: 0 }) {
                Ok(nu) if nu == want => {}
                other => return tally.fail(format!("{ty} a_{0}{0}: {other:?}, expected {want}", j + 1), None),
            }
        }
        tally.pass("return-arc coordinates match the catalog")
    }
}

struct Chebyshev;

impl Check for Chebyshev {
    fn name(&self) -> &'static str {
        "chebyshev"
    }

    fn run(&self, _ctx: &Context) -> CheckResult {
        let mut tally = Tally::new(self.name());
        let z = &HalfLaurent::q_power(1) + &HalfLaurent::q_power(-1);
        for k in 0..=64usize {
            tally.cases += 1;
            let t = chebyshev(k);
            let want = &HalfLaurent::q_power(k as i64) + &HalfLaurent::q_power(-(k as i64));
            if evaluate_laurent(&t, &z) != want {
                return tally.fail(format!("T_{k}(x + 1/x) ≠ x^{k} + x^-{k}"), None);
            }
            if k >= 1 && threading_coeffs(k) != (0..=k).map(|j| t.coeff(j)).collect::<Vec<_>>() {
                return tally.fail(format!("threading coefficients of T_{k} disagree"), None);
            }
        }
        tally.pass("T_k(x + 1/x) = x^k + x^-k for k ≤ 64")
    }
}

struct TorusLaws;

impl Check for TorusLaws {
    fn name(&self) -> &'static str {
        "torus-laws"
    }

    fn run(&self, ctx: &Context) -> CheckResult {
        const DIM: usize = 6;
        let mut tally = Tally::new(self.name());
        let mut rng = ctx.rng(10);
        let random_matrix = |rng: &mut ChaCha8Rng| {
            let mut m = AntisymMatrix::zeros(DIM);
            for i in 0..DIM {
                for j in i + 1..DIM {
                    m.set_pair(i, j, rng.gen_range(-3..=3));
                }
            }
            Arc::new(m)
        };
        for _ in 0..ctx.grid.pairs {
            tally.cases += 1;
            let q = random_matrix(&mut rng);
            let a: Vec<i64> = (0..DIM).map(|_| rng.gen_range(-4..=4)).collect();
            let b: Vec<i64> = (0..DIM).map(|_| rng.gen_range(-4..=4)).collect();
            let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let p = q.pairing(&a, &b).expect("dimensions match");
            let want = TorusElement::monomial(&q, &sum, HalfLaurent::q_half_power(p)).expect("dimensions match");
            if mono_mul(&q, &a, &b).ok() != Some(want) {
                return tally.fail(format!("product law fails for {a:?} · {b:?}"), None);
            }
            let mut seq: Vec<(usize, i64)> = (0..rng.gen_range(0..=8)).map(|_| (rng.gen_range(0..DIM), rng.gen_range(-2..=2))).collect();
            let mut total = vec![0i64; DIM];
            for &(g, e) in &seq {
                total[g] += e;
            }
            let normal = TorusElement::monomial(&q, &total, HalfLaurent::one()).expect("dimensions match");
            let first = weyl_normalize(&q, &seq).ok();
            seq.shuffle(&mut rng);
            if first.as_ref() != Some(&normal) || weyl_normalize(&q, &seq).ok().as_ref() != Some(&normal) {
                return tally.fail(format!("Weyl normalization depends on order for {seq:?}"), None);
            }
            if !normal.is_reflection_invariant() {
                return tally.fail(format!("Y^{total:?} is not reflection invariant"), None);
            }
        }
        tally.pass("product law, Weyl order invariance and reflection")
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    pub grid: GridSpec,
    pub seed: u64,
    pub corrupt_qtilde: bool,
    pub surfaces: Vec<[usize; 2]>,
    pub results: Vec<CheckResult>,
    pub passed: bool,
}

impl Render for CheckReport {
    fn render(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let label = if r.verdict.passed() { "PASS" } else { "FAIL" };
            s.push_str(&format!("{label} {:<12} {:>7} cases  {}\n", r.check, r.cases, r.detail));
            if let Some(w) = &r.witness {
                s.push_str(&format!("     witness: k = {:?}, l = {:?} ({})\n", w.k, w.l, w.note));
            }
        }
        s.push_str(if self.passed { "all checks PASS\n" } else { "some checks FAIL\n" });
        s
    }
}

pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl Default for CheckRegistry {
    fn default() -> Self {
        let mut registry = Self { checks: Vec::new() };
        registry.register(Box::new(PiDegree));
        registry.register(Box::new(KernelForm));
        registry.register(Box::new(EvenIndex));
        registry.register(Box::new(LeadTerm));
        registry.register(Box::new(TopProduct));
        registry.register(Box::new(PantsTrace));
        registry.register(Box::new(MonoidClosure));
        registry.register(Box::new(Catalog));
        registry.register(Box::new(Chebyshev));
        registry.register(Box::new(TorusLaws));
        registry
    }
}

impl CheckRegistry {
    pub fn register(&mut self, check: Box<dyn Check>) {
        self.checks.push(check);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.checks.iter().map(|c| c.name())
    }

    pub fn cmd_check(&self, names: &[String], grid: &GridSpec, seed: u64, corrupt_qtilde: bool) -> Result<CheckReport> {
        let selected = names
            .iter()
            .map(|name| {
                self.checks.iter().find(|c| c.name() == name).ok_or_else(|| {
                    anyhow!("unknown check {name:?}; known: {}", self.names().collect::<Vec<_>>().join(", "))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let surfaces = grid.surfaces();
        let data = surfaces
            .iter()
            .map(|&(g, m)| standard_datum(g, m))
            .collect::<skein_core::Result<Vec<_>>>()?;
        let ctx = Context {
            grid: grid.clone(),
            seed,
            corrupt_qtilde,
            data,
        };
        let results: Vec<CheckResult> = selected.iter().map(|c| c.run(&ctx)).collect();
        Ok(CheckReport {
            grid: grid.clone(),
            seed,
            corrupt_qtilde,
            surfaces: surfaces.iter().map(|&(g, m)| [g, m]).collect(),
            passed: results.iter().all(|r| r.verdict.passed()),
            results,
        })
    }
}
