use serde::Serialize;

use super::coords::{d_embed_flat, face_split_with, lambda_global_violation, GlobalCoord, ResidualSide};
use super::DtDatum;
use crate::error::{Error, Result};
use crate::qtorus::{Exponent, TorusElement};
use crate::qtrace::utr_coord;
use crate::ring::{specialize, Coefficient, Cyclotomic, GroundRing, HalfLaurent};

/// `φ(coord)` together with its lead term for the degree order of [`d_embed`](super::d_embed).
#[derive(Clone, Debug)]
pub struct PhiValue {
    pub element: TorusElement<GroundRing>,
    pub lead: Exponent,
    pub lead_coefficient: GroundRing,
}

impl PhiValue {
    /// The lead monomial is exactly `Y^coord` with coefficient 1.
    pub fn lead_matches(&self, coord: &GlobalCoord) -> bool {
        self.lead.as_slice() == coord.flat().as_slice() && self.lead_coefficient.is_one()
    }
}

/// Image of the curve with coordinates `coord` in the global torus `T(Q̃)`: the tensor product of
/// the face traces of [`face_split`](super::face_split), with `x_{c′} x_{c″} ↦ y_c` and
/// `u_{c′}, u_{c″} ↦ u_c`. Face puncture scalars become the surface's puncture variables.
pub fn phi(datum: &DtDatum, coord: &GlobalCoord) -> Result<TorusElement<GroundRing>> {
    phi_with(datum, coord, ResidualSide::Prime)
}

pub fn phi_with(datum: &DtDatum, coord: &GlobalCoord, side: ResidualSide) -> Result<TorusElement<GroundRing>> {
    let split = face_split_with(datum, coord, side)?;
    let r = datum.curves();
    let mut acc: Vec<(Exponent, GroundRing)> = vec![(Exponent::from_elem(0, r), GroundRing::one())];
    for (f, face) in datum.faces().iter().enumerate() {
        let j = face.pants.boundaries();
        let trace = utr_coord(face.pants, &split[f])?;
        let mut local = Vec::with_capacity(trace.len());
        for (e, c) in trace.terms() {
            let mut shift = Exponent::from_elem(0, r);
            for (s, &curve) in face.boundary_curves.iter().enumerate() {
                if e[s] != coord.n[curve] {
                    return Err(Error::Unmatched(format!(
                        "face {f} slot b{} has x-degree {} but n(c{curve}) = {}",
                        s + 1,
                        e[s],
                        coord.n[curve]
                    )));
                }
                shift[curve] += e[j + s];
            }
            let coeff = c.remap_punctures(|var| face.punctures[var as usize - j] as u32);
            local.push((shift, coeff));
        }
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for (t1, c1) in &acc {
            for (t2, c2) in &local {
                let t: Exponent = t1.iter().zip(t2.iter()).map(|(a, b)| a + b).collect();
                next.push((t, c1 * c2));
            }
        }
        next.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        acc = Vec::with_capacity(next.len());
        for (t, c) in next {
            match acc.last_mut() {
                Some(last) if last.0 == t => last.1.add_assign_ref(&c),
                _ => acc.push((t, c)),
            }
        }
        acc.retain(|(_, c)| !c.is_zero());
    }
    let terms = acc.into_iter().map(|(t, c)| {
        let exp: Exponent = coord.n.iter().chain(t.iter()).copied().collect();
        (exp, c)
    });
    TorusElement::from_terms(datum.q_tilde(), terms)
}

/// [`phi`] with its unique lead term; a tie is reported as an error.
pub fn phi_lead(datum: &DtDatum, coord: &GlobalCoord) -> Result<PhiValue> {
    let element = phi(datum, coord)?;
    let (lead, lead_coefficient) = element.unique_lead(d_embed_flat)?;
    Ok(PhiValue {
        element,
        lead,
        lead_coefficient,
    })
}

/// Top-degree product `Y^k · Y^l = q^{half_pairing} Y^{k+l}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedProduct {
    /// `⟨k, l⟩_Q̃ / 2`.
    pub half_pairing: i64,
    pub sum: GlobalCoord,
}

impl GradedProduct {
    /// The scalar `q^{half_pairing}`.
    pub fn scalar(&self) -> HalfLaurent {
        HalfLaurent::q_power(self.half_pairing)
    }

    /// The scalar at `q = ξ`, `ξ` a primitive root of unity of order `xi_order`.
    pub fn scalar_at(&self, xi_order: u32) -> Result<Cyclotomic> {
        specialize(&self.scalar(), xi_order)
    }
}

pub fn graded_mul(datum: &DtDatum, k: &GlobalCoord, l: &GlobalCoord) -> Result<GradedProduct> {
    for c in [k, l] {
        if let Some(why) = lambda_global_violation(datum, c) {
            return Err(Error::NotInMonoid(format!("{c}: {why}")));
        }
    }
    let pairing = datum.q_tilde().pairing(&k.flat(), &l.flat())?;
    if pairing % 2 != 0 {
        return Err(Error::NotIntegral(pairing));
    }
    Ok(GradedProduct {
        half_pairing: pairing / 2,
        sum: k.add(l),
    })
}
