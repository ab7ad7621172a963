//! Dehn-Thurston coordinates on the three pairs of pants `P3`, `P2`, `P1`
//! (three, two and one boundary circles; the remaining slots are punctures).
//!
//! Boundary indices are 0-based throughout: boundary `b_{i+1}` is index `i`.

mod models;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qtorus::AntisymMatrix;
use crate::ring::GroundRing;

pub use models::{OneBoundary, ThreeBoundary, TwoBoundary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PantsType {
    P1,
    P2,
    P3,
}

impl PantsType {
    pub const ALL: [PantsType; 3] = [PantsType::P1, PantsType::P2, PantsType::P3];

    /// Number of boundary circles `j`; the coordinate has length `2j`.
    pub fn boundaries(self) -> usize {
        match self {
            PantsType::P1 => 1,
            PantsType::P2 => 2,
            PantsType::P3 => 3,
        }
    }

    pub fn from_boundaries(j: usize) -> Option<Self> {
        match j {
            1 => Some(PantsType::P1),
            2 => Some(PantsType::P2),
            3 => Some(PantsType::P3),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PantsType::P1 => "P1",
            PantsType::P2 => "P2",
            PantsType::P3 => "P3",
        }
    }

    pub fn model(self) -> &'static dyn PantsModel {
        match self {
            PantsType::P1 => &OneBoundary,
            PantsType::P2 => &TwoBoundary,
            PantsType::P3 => &ThreeBoundary,
        }
    }

    fn check_index(self, i: usize) -> Result<()> {
        if i < self.boundaries() {
            Ok(())
        } else {
            Err(Error::BoundaryIndex {
                pants: self.name(),
                index: i,
            })
        }
    }
}

impl fmt::Display for PantsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        Self(twice)
    }

    pub fn from_int(k: i64) -> Self {
        Self(2 * k)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn to_integer(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }

    /// `k ≥ self` for an integer `k`.
    pub fn le_int(self, k: i64) -> bool {
        self.0 <= 2 * k
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

/// Coordinates `(n, t)` on a pair of pants; `n` counts intersections with each boundary, `t` are twists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PantsCoord {
    pub n: Vec<i64>,
    pub t: Vec<i64>,
}

impl PantsCoord {
    pub fn new(n: Vec<i64>, t: Vec<i64>) -> Self {
        Self { n, t }
    }

    pub fn zero(ty: PantsType) -> Self {
        let j = ty.boundaries();
        Self::new(vec![0; j], vec![0; j])
    }

    /// Split a flat `(n_1..n_j, t_1..t_j)` vector.
    pub fn from_flat(ty: PantsType, flat: &[i64]) -> Result<Self> {
        let j = ty.boundaries();
        if flat.len() != 2 * j {
            return Err(Error::DimensionMismatch {
                expected: 2 * j,
                found: flat.len(),
            });
        }
        Ok(Self::new(flat[..j].to_vec(), flat[j..].to_vec()))
    }

    pub fn flat(&self) -> Vec<i64> {
        self.n.iter().chain(&self.t).copied().collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            self.n.iter().zip(&rhs.n).map(|(a, b)| a + b).collect(),
            self.t.iter().zip(&rhs.t).map(|(a, b)| a + b).collect(),
        )
    }

    fn check_shape(&self, ty: PantsType) -> Result<()> {
        let j = ty.boundaries();
        for len in [self.n.len(), self.t.len()] {
            if len != j {
                return Err(Error::DimensionMismatch {
                    expected: j,
                    found: len,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for PantsCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.flat())
    }
}

/// Simple components of a curve on a pair of pants. Boundary indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    /// The loop `ℓ_i` parallel to boundary `i`.
    Loop { boundary: usize },
    /// The arc `a_{jk}` joining distinct boundaries `ends.0 < ends.1`, twisted `twists.0` times at
    /// the first end and `twists.1` times at the second.
    Cross { ends: (usize, usize), twists: (i64, i64) },
    /// The arc `a_{ii}` with both ends on boundary `i`, twisted `twist` times there.
    Return { boundary: usize, twist: i64 },
}

impl Component {
    fn touches(&self, i: usize) -> bool {
        match *self {
            Component::Loop { .. } => false,
            Component::Cross { ends, .. } => ends.0 == i || ends.1 == i,
            Component::Return { boundary, .. } => boundary == i,
        }
    }

    fn untwisted(&self) -> Self {
        match *self {
            Component::Cross { ends, .. } => Component::Cross { ends, twists: (0, 0) },
            Component::Return { boundary, .. } => Component::Return { boundary, twist: 0 },
            loop_ => loop_,
        }
    }

    fn add_twist(&mut self, i: usize, s: i64) {
        match self {
            Component::Cross { ends, twists } if ends.0 == i => twists.0 += s,
            Component::Cross { ends, twists } if ends.1 == i => twists.1 += s,
            Component::Return { boundary, twist } if *boundary == i => *twist += s,
            _ => unreachable!("twist carrier does not meet boundary {i}"),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Component::Loop { boundary } => write!(f, "l{}", boundary + 1),
            Component::Cross { ends, twists } => {
                write!(f, "a{}{}", ends.0 + 1, ends.1 + 1)?;
                if twists != (0, 0) {
                    write!(f, "[twist {},{}]", twists.0, twists.1)?;
                }
                Ok(())
            }
            Component::Return { boundary, twist } => {
                write!(f, "a{0}{0}", boundary + 1)?;
                if twist != 0 {
                    write!(f, "[twist {twist}]")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub component: Component,
    pub multiplicity: u64,
}

impl fmt::Display for ComponentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x{}", self.component, self.multiplicity)
    }
}

/// One pair-of-pants type: its monoid constraints, arc catalogue and trace torus.
///
/// Implementations are registered by name in a [`PantsRegistry`]; callers that only know a
/// type name at runtime (the command line, datum files) dispatch through it.
pub trait PantsModel: Send + Sync {
    fn pants_type(&self) -> PantsType;

    fn name(&self) -> &'static str {
        self.pants_type().name()
    }

    /// `2 Add_i(n)` for a valid index.
    fn add_twice(&self, i: usize, n: &[i64]) -> i64;

    fn parity_holds(&self, n: &[i64]) -> bool;

    /// Untwisted cross and return arcs realizing `n`, in canonical order. Requires the parity constraint.
    fn arc_counts(&self, n: &[i64]) -> Vec<(Component, u64)>;

    /// Twist part of the coordinates of the untwisted return arc at `i`.
    fn return_arc_twists(&self, i: usize) -> Vec<i64>;

    /// Terms `(exponent, coefficient)` of the trace of the return arc at `i` twisted `m` times.
    /// Exponents are Weyl-normalized; puncture variable `s` stands for the scalar at 0-based slot `s`.
    fn return_arc_trace(&self, i: usize, m: i64) -> Vec<(Vec<i64>, GroundRing)>;

    /// Commutation matrix of the trace torus on `x_1..x_j, u_1..u_j`.
    fn torus_matrix(&self) -> Arc<AntisymMatrix>;

    /// The degree map used to single out the lead monomial of a trace.
    fn degree(&self, exp: &[i64]) -> [i64; 3];
}

/// Name-keyed registry of pants models.
pub struct PantsRegistry {
    models: BTreeMap<&'static str, &'static dyn PantsModel>,
}

impl PantsRegistry {
    pub fn empty() -> Self {
        Self {
            models: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, model: &'static dyn PantsModel) {
        self.models.insert(model.name(), model);
    }

    pub fn get(&self, name: &str) -> Option<&'static dyn PantsModel> {
        self.models.get(name).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.models.keys().copied()
    }
}

impl Default for PantsRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        for ty in PantsType::ALL {
            reg.register(ty.model());
        }
        reg
    }
}

/// `Add_i(n)`; the lower bound on `t_i` when `n_i = 0`.
pub fn add_fn(ty: PantsType, i: usize, n: &[i64]) -> Result<HalfInt> {
    ty.check_index(i)?;
    check_len(ty, n)?;
    Ok(HalfInt::from_twice(ty.model().add_twice(i, n)))
}

fn check_len(ty: PantsType, v: &[i64]) -> Result<()> {
    if v.len() == ty.boundaries() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: ty.boundaries(),
            found: v.len(),
        })
    }
}

/// Membership in the monoid `Λ_j` of realizable coordinates.
pub fn lambda_contains(ty: PantsType, coord: &PantsCoord) -> bool {
    lambda_violation(ty, coord).is_none()
}

/// Why a coordinate fails to lie in `Λ_j`, if it does.
pub fn lambda_violation(ty: PantsType, coord: &PantsCoord) -> Option<String> {
    if coord.check_shape(ty).is_err() {
        return Some(format!("{ty} coordinates need {} lengths and twists", ty.boundaries()));
    }
    if let Some(i) = coord.n.iter().position(|&n| n < 0) {
        return Some(format!("negative length n{} = {}", i + 1, coord.n[i]));
    }
    let model = ty.model();
    if !model.parity_holds(&coord.n) {
        return Some(format!("length parity fails for n = {:?}", coord.n));
    }
    for i in 0..ty.boundaries() {
        let add = HalfInt::from_twice(model.add_twice(i, &coord.n));
        if coord.n[i] == 0 && !add.le_int(coord.t[i]) {
            return Some(format!("t{} = {} is below Add{} = {add}", i + 1, coord.t[i], i + 1));
        }
    }
    None
}

fn require_member(ty: PantsType, coord: &PantsCoord) -> Result<()> {
    match lambda_violation(ty, coord) {
        None => Ok(()),
        Some(why) => Err(Error::NotInMonoid(format!("{ty} {coord}: {why}"))),
    }
}

/// The Dehn twist along boundary `i`: increments `t_i` when the curve meets that boundary.
pub fn twist_apply(ty: PantsType, i: usize, coord: &PantsCoord) -> Result<PantsCoord> {
    twist_by(ty, i, coord, 1)
}

/// `twist_apply` iterated `power` times; negative powers twist backwards.
pub fn twist_by(ty: PantsType, i: usize, coord: &PantsCoord, power: i64) -> Result<PantsCoord> {
    ty.check_index(i)?;
    require_member(ty, coord)?;
    let mut out = coord.clone();
    if out.n[i] > 0 {
        out.t[i] += power;
    }
    Ok(out)
}

/// Coordinates of a single (possibly twisted) component.
pub fn nu_of_component(ty: PantsType, c: &Component) -> Result<PantsCoord> {
    validate_component(ty, c)?;
    let mut out = PantsCoord::zero(ty);
    match *c {
        Component::Loop { boundary } => out.t[boundary] = 1,
        Component::Cross { ends, twists } => {
            out.n[ends.0] = 1;
            out.n[ends.1] = 1;
            out.t[ends.0] = twists.0;
            out.t[ends.1] = twists.1;
        }
        Component::Return { boundary, twist } => {
            out.n[boundary] = 2;
            out.t = ty.model().return_arc_twists(boundary);
            out.t[boundary] += twist;
        }
    }
    Ok(out)
}

pub fn validate_component(ty: PantsType, c: &Component) -> Result<()> {
    let j = ty.boundaries();
    let ok = match *c {
        Component::Loop { boundary } => boundary < j,
        Component::Cross { ends, .. } => ends.0 < ends.1 && ends.1 < j,
        Component::Return { boundary, .. } => boundary < j,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidComponent(format!("{c} on {ty}")))
    }
}

/// Twists contributed by the untwisted arcs realizing `n`. At a boundary with `n_i = 0` this equals `Add_i(n)`.
pub fn base_twists(ty: PantsType, n: &[i64]) -> Result<Vec<i64>> {
    check_len(ty, n)?;
    let model = ty.model();
    if n.iter().any(|&x| x < 0) || !model.parity_holds(n) {
        return Err(Error::NotInMonoid(format!("{ty} lengths {n:?}")));
    }
    let mut t = vec![0; ty.boundaries()];
    for (c, mult) in model.arc_counts(n) {
        if let Component::Return { boundary, .. } = c {
            for (acc, x) in t.iter_mut().zip(model.return_arc_twists(boundary)) {
                *acc += x * mult as i64;
            }
        }
    }
    Ok(t)
}

/// Canonical component multiset of a coordinate.
///
/// Arcs come first in canonical order (cross arcs by ends, then return arcs), then loops.
/// Residual twisting at a boundary the curve meets is carried by one copy of the first arc
/// touching that boundary; residual twisting at a boundary it misses becomes parallel loops.
pub fn decompose(ty: PantsType, coord: &PantsCoord) -> Result<Vec<ComponentSpec>> {
    require_member(ty, coord)?;
    let model = ty.model();
    let arcs = model.arc_counts(&coord.n);
    let base = base_twists(ty, &coord.n)?;
    let j = ty.boundaries();

    let mut twisted: Vec<Option<Component>> = vec![None; arcs.len()];
    let mut loops = Vec::new();
    for i in 0..j {
        let residual = coord.t[i] - base[i];
        if coord.n[i] == 0 {
            debug_assert_eq!(2 * base[i], model.add_twice(i, &coord.n));
            if residual > 0 {
                loops.push(ComponentSpec {
                    component: Component::Loop { boundary: i },
                    multiplicity: residual as u64,
                });
            }
        } else if residual != 0 {
            let carrier = arcs
                .iter()
                .position(|(c, _)| c.touches(i))
                .expect("a boundary with n_i > 0 meets some arc");
            twisted[carrier]
                .get_or_insert_with(|| arcs[carrier].0.untwisted())
                .add_twist(i, residual);
        }
    }

    let mut out = Vec::new();
    for ((c, mult), tw) in arcs.into_iter().zip(twisted) {
        let mut rest = mult;
        if let Some(tc) = tw {
            out.push(ComponentSpec {
                component: tc,
                multiplicity: 1,
            });
            rest -= 1;
        }
        if rest > 0 {
            out.push(ComponentSpec {
                component: c,
                multiplicity: rest,
            });
        }
    }
    out.extend(loops);
    Ok(out)
}

/// Sum of component coordinates, with multiplicity.
pub fn nu_of_multiset(ty: PantsType, components: &[ComponentSpec]) -> Result<PantsCoord> {
    let mut total = PantsCoord::zero(ty);
    for spec in components {
        let nu = nu_of_component(ty, &spec.component)?;
        for _ in 0..spec.multiplicity {
            total = total.add(&nu);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests;
