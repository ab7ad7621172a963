use std::fmt;

use serde::{Deserialize, Serialize};

use super::DtDatum;
use crate::error::{Error, Result};
use crate::pants::{base_twists, HalfInt, PantsCoord};

/// Global coordinates `(n, t)`, one length and one twist per curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GlobalCoord {
    pub n: Vec<i64>,
    pub t: Vec<i64>,
}

impl GlobalCoord {
    pub fn new(n: Vec<i64>, t: Vec<i64>) -> Self {
        Self { n, t }
    }

    pub fn zero(r: usize) -> Self {
        Self::new(vec![0; r], vec![0; r])
    }

    pub fn from_flat(flat: &[i64]) -> Result<Self> {
        if !flat.len().is_multiple_of(2) || flat.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: flat.len() + 1,
                found: flat.len(),
            });
        }
        let r = flat.len() / 2;
        Ok(Self::new(flat[..r].to_vec(), flat[r..].to_vec()))
    }

    pub fn flat(&self) -> Vec<i64> {
        self.n.iter().chain(&self.t).copied().collect()
    }

    pub fn curves(&self) -> usize {
        self.n.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            self.n.iter().zip(&rhs.n).map(|(a, b)| a + b).collect(),
            self.t.iter().zip(&rhs.t).map(|(a, b)| a + b).collect(),
        )
    }
}

impl fmt::Display for GlobalCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.flat())
    }
}

/// Lengths seen by a face, in slot order.
pub fn face_n(datum: &DtDatum, face: usize, n: &[i64]) -> Vec<i64> {
    datum.faces[face].boundary_curves.iter().map(|&c| n[c]).collect()
}

/// `Add(c′; n) + Add(c″; n)`.
fn add_sum(datum: &DtDatum, curve: usize, n: &[i64]) -> HalfInt {
    datum.lifts(curve).iter().fold(HalfInt::from_int(0), |acc, lift| {
        let face = &datum.faces[lift.face];
        let local = face_n(datum, lift.face, n);
        acc + HalfInt::from_twice(face.pants.model().add_twice(lift.slot, &local))
    })
}

fn check_len(datum: &DtDatum, coord: &GlobalCoord) -> Result<()> {
    let r = datum.curves();
    for len in [coord.n.len(), coord.t.len()] {
        if len != r {
            return Err(Error::DimensionMismatch { expected: r, found: len });
        }
    }
    Ok(())
}

/// Why a coordinate fails to be realizable by a curve, if it does.
pub fn lambda_global_violation(datum: &DtDatum, coord: &GlobalCoord) -> Option<String> {
    if let Err(e) = check_len(datum, coord) {
        return Some(e.to_string());
    }
    if let Some(c) = coord.n.iter().position(|&x| x < 0) {
        return Some(format!("negative length n(c{c}) = {}", coord.n[c]));
    }
    for (f, face) in datum.faces.iter().enumerate() {
        let total: i64 = face_n(datum, f, &coord.n).iter().sum();
        if total % 2 != 0 {
            return Some(format!("odd total length {total} at vertex {}", face.vertex));
        }
    }
    for c in 0..datum.curves() {
        if coord.n[c] == 0 {
            let bound = add_sum(datum, c, &coord.n);
            if !bound.le_int(coord.t[c]) {
                return Some(format!("t(c{c}) = {} is below Add(c′) + Add(c″) = {bound}", coord.t[c]));
            }
        }
    }
    None
}

/// Membership in the monoid of curve coordinates.
pub fn lambda_global(datum: &DtDatum, coord: &GlobalCoord) -> bool {
    lambda_global_violation(datum, coord).is_none()
}

/// The degree vector `(Σn, Σt, t_0..t_{r-2}, n_0..n_{r-2})`, compared lexicographically.
pub fn d_embed(coord: &GlobalCoord) -> Vec<i64> {
    d_embed_flat(&coord.flat())
}

pub(crate) fn d_embed_flat(flat: &[i64]) -> Vec<i64> {
    let r = flat.len() / 2;
    let (n, t) = flat.split_at(r);
    let mut out = Vec::with_capacity(2 * r);
    out.push(n.iter().sum());
    out.push(t.iter().sum());
    out.extend_from_slice(&t[..r - 1]);
    out.extend_from_slice(&n[..r - 1]);
    out
}

/// Which side of each curve receives the residual twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResidualSide {
    /// `c′`: the side with the smaller slot, ties broken by face index.
    Prime,
    /// `c″`, the other side.
    DoublePrime,
}

/// Canonical per-face coordinates of a curve with global coordinates `coord`.
pub fn face_split(datum: &DtDatum, coord: &GlobalCoord) -> Result<Vec<PantsCoord>> {
    face_split_with(datum, coord, ResidualSide::Prime)
}

pub fn face_split_with(datum: &DtDatum, coord: &GlobalCoord, side: ResidualSide) -> Result<Vec<PantsCoord>> {
    if let Some(why) = lambda_global_violation(datum, coord) {
        return Err(Error::NotInMonoid(format!("{coord}: {why}")));
    }
    let mut split = Vec::with_capacity(datum.faces.len());
    for (f, face) in datum.faces.iter().enumerate() {
        let n = face_n(datum, f, &coord.n);
        let t = base_twists(face.pants, &n)?;
        split.push(PantsCoord::new(n, t));
    }
    for c in 0..datum.curves() {
        let [first, second] = datum.lifts(c);
        let base = split[first.face].t[first.slot] + split[second.face].t[second.slot];
        let residual = coord.t[c] - base;
        let target = match side {
            ResidualSide::Prime => first,
            ResidualSide::DoublePrime => second,
        };
        split[target.face].t[target.slot] += residual;
    }
    Ok(split)
}
