//! Quantum tori `T(Q)`: the algebra spanned by Weyl-normalized monomials `x^k`,
//! `k ∈ Z^r`, with `x^k x^l = q^{⟨k,l⟩/2} x^{k+l}` for an antisymmetric
//! integer matrix `Q`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::{Coefficient, HalfLaurent};

pub type Exponent = SmallVec<[i64; 8]>;

/// Antisymmetric integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AntisymMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl AntisymMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        let m = Self { dim, entries };
        for i in 0..dim {
            for j in 0..dim {
                if m.get(i, j) != -m.get(j, i) {
                    return Err(Error::NotAntisymmetric { row: i, col: j });
                }
            }
        }
        Ok(m)
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    /// Set entry `(i, j)` to `value` and `(j, i)` to `-value`.
    pub fn set_pair(&mut self, i: usize, j: usize, value: i64) {
        assert!(i != j || value == 0, "diagonal of an antisymmetric matrix is zero");
        self.entries[i * self.dim + j] = value;
        self.entries[j * self.dim + i] = -value;
    }

    /// Overwrite a single entry without restoring antisymmetry. Used only to build
    /// deliberately corrupted matrices for negative controls.
    pub fn with_raw_entry(&self, i: usize, j: usize, value: i64) -> Self {
        let mut out = self.clone();
        out.entries[i * self.dim + j] = value;
        out
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim.max(1)).map(<[i64]>::to_vec).take(self.dim).collect()
    }

    /// `Q l`.
    pub fn apply(&self, l: &[i64]) -> Exponent {
        self.entries
            .chunks_exact(self.dim.max(1))
            .take(self.dim)
            .map(|row| row.iter().zip(l).map(|(q, x)| q * x).sum())
            .collect()
    }

    /// `⟨k, l⟩ = Σ Q_ij k_i l_j`.
    pub fn pairing(&self, k: &[i64], l: &[i64]) -> Result<i64> {
        self.check_dim(k.len())?;
        self.check_dim(l.len())?;
        Ok(self.pairing_unchecked(k, l))
    }

    pub(crate) fn pairing_unchecked(&self, k: &[i64], l: &[i64]) -> i64 {
        let mut total = 0;
        for (i, &ki) in k.iter().enumerate() {
            if ki == 0 {
                continue;
            }
            let row = &self.entries[i * self.dim..(i + 1) * self.dim];
            total += ki * row.iter().zip(l).map(|(q, lj)| q * lj).sum::<i64>();
        }
        total
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            })
        }
    }
}

impl fmt::Debug for AntisymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// `⟨k, l⟩_Q`.
pub fn pairing(q: &AntisymMatrix, k: &[i64], l: &[i64]) -> Result<i64> {
    q.pairing(k, l)
}

/// Finite sum of Weyl-normalized monomials, sorted by exponent. Zero coefficients are never stored.
#[derive(Clone)]
pub struct TorusElement<C> {
    matrix: Arc<AntisymMatrix>,
    terms: Vec<(Exponent, C)>,
}

/// All terms attaining the maximal degree.
#[derive(Clone, Debug)]
pub struct LeadTerms<C, D> {
    pub degree: D,
    pub terms: Vec<(Exponent, C)>,
}

impl<C: Coefficient> TorusElement<C> {
    pub fn zero(matrix: &Arc<AntisymMatrix>) -> Self {
        Self {
            matrix: matrix.clone(),
            terms: Vec::new(),
        }
    }

    pub fn monomial(matrix: &Arc<AntisymMatrix>, exp: &[i64], coeff: C) -> Result<Self> {
        let mut out = Self::zero(matrix);
        out.add_monomial(exp, coeff)?;
        Ok(out)
    }

    pub fn from_terms(
        matrix: &Arc<AntisymMatrix>,
        terms: impl IntoIterator<Item = (Exponent, C)>,
    ) -> Result<Self> {
        let mut out = Self::zero(matrix);
        for (e, c) in terms {
            out.add_monomial(&e, c)?;
        }
        Ok(out)
    }

    pub fn add_monomial(&mut self, exp: &[i64], coeff: C) -> Result<()> {
        self.matrix.check_dim(exp.len())?;
        self.accumulate(Exponent::from_slice(exp), &coeff);
        Ok(())
    }

    fn accumulate(&mut self, exp: Exponent, coeff: &C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(e, _)| e.cmp(&exp)) {
            Ok(pos) => {
                self.terms[pos].1.add_assign_ref(coeff);
                if self.terms[pos].1.is_zero() {
                    self.terms.remove(pos);
                }
            }
            Err(pos) => self.terms.insert(pos, (exp, coeff.clone())),
        }
    }

    /// Build from unsorted terms, merging repeated exponents.
    fn from_raw(matrix: &Arc<AntisymMatrix>, mut raw: Vec<(Exponent, C)>) -> Self {
        raw.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Exponent, C)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == e => last.1.add_assign_ref(&c),
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Self {
            matrix: matrix.clone(),
            terms,
        }
    }

    pub fn matrix(&self) -> &Arc<AntisymMatrix> {
        &self.matrix
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &C)> {
        self.terms.iter().map(|(e, c)| (e, c))
    }

    pub fn coefficient(&self, exp: &[i64]) -> Option<&C> {
        self.terms
            .binary_search_by(|(e, _)| e.as_slice().cmp(exp))
            .ok()
            .map(|pos| &self.terms[pos].1)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_torus(&self, rhs: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.matrix, &rhs.matrix) || self.matrix == rhs.matrix {
            Ok(())
        } else {
            Err(Error::TorusMismatch)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_torus(rhs)?;
        let raw = self.terms.iter().chain(&rhs.terms).cloned().collect();
        Ok(Self::from_raw(&self.matrix, raw))
    }

    pub fn scale(&self, c: &C) -> Self {
        let raw = self.terms.iter().map(|(e, a)| (e.clone(), a.mul_ref(c))).collect();
        Self::from_raw(&self.matrix, raw)
    }

    /// Torus product; each pair of monomials contributes `q^{⟨a,b⟩/2} x^{a+b}`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_torus(rhs)?;
        let q = &*self.matrix;
        let rhs_images: Vec<(&Exponent, &C, Exponent)> =
            rhs.terms.iter().map(|(b, c)| (b, c, q.apply(b))).collect();
        let mut raw = Vec::with_capacity(self.terms.len() * rhs_images.len());
        for (a, ca) in &self.terms {
            for (b, cb, qb) in &rhs_images {
                let half_steps: i64 = a.iter().zip(qb).map(|(x, y)| x * y).sum();
                let exp: Exponent = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                let mut c = ca.mul_ref(cb);
                c.shift_q_mut(half_steps);
                raw.push((exp, c));
            }
        }
        Ok(Self::from_raw(&self.matrix, raw))
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let dim = self.matrix.dim();
        let mut acc = Self::zero(&self.matrix);
        let Some((_, c)) = self.terms.first() else {
            return Ok(if k == 0 { acc } else { self.clone() });
        };
        let unit = c.unit_like();
        acc.accumulate(SmallVec::from_elem(0, dim), &unit);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Bar involution on coefficients; Weyl-normalized monomials are fixed.
    pub fn reflect(&self) -> Self {
        Self {
            matrix: self.matrix.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.reflect())).collect(),
        }
    }

    pub fn is_reflection_invariant(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.reflect() == *c)
    }

    /// The unique `q^{a/2}` multiple fixed by reflection, when one exists.
    pub fn reflection_normalized(&self) -> Option<Self> {
        let Some((_, first)) = self.terms.first() else {
            return Some(self.clone());
        };
        let (lo, hi) = first.half_exponent_range()?;
        if (lo + hi) % 2 != 0 {
            return None;
        }
        let shift = -(lo + hi) / 2;
        let out = Self {
            matrix: self.matrix.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.shift_q(shift))).collect(),
        };
        out.is_reflection_invariant().then_some(out)
    }

    /// `[x^e · self]_Weyl`: every term shifted by `e`, which requires `⟨e, a⟩` to be the same for all terms.
    pub fn weyl_mul_monomial(&self, e: &[i64]) -> Result<Self> {
        self.matrix.check_dim(e.len())?;
        let mut common = None;
        for (a, _) in &self.terms {
            let p = self.matrix.pairing_unchecked(e, a);
            if *common.get_or_insert(p) != p {
                return Err(Error::NonUniformPairing(e.to_vec()));
            }
        }
        Ok(Self {
            matrix: self.matrix.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.iter().zip(e).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        })
    }

    /// Maximal terms for a caller-supplied degree map into a totally ordered set.
    pub fn lead_terms<D: Ord + Clone>(&self, degree: impl Fn(&[i64]) -> D) -> Result<LeadTerms<C, D>> {
        let mut best: Option<LeadTerms<C, D>> = None;
        for (e, c) in &self.terms {
            let d = degree(e);
            match &mut best {
                Some(b) if d < b.degree => {}
                Some(b) if d == b.degree => b.terms.push((e.clone(), c.clone())),
                _ => {
                    best = Some(LeadTerms {
                        degree: d,
                        terms: vec![(e.clone(), c.clone())],
                    })
                }
            }
        }
        best.ok_or(Error::ZeroElement)
    }

    /// The lead term when it is unique.
    pub fn unique_lead<D: Ord + Clone>(&self, degree: impl Fn(&[i64]) -> D) -> Result<(Exponent, C)> {
        let mut lead = self.lead_terms(degree)?;
        if lead.terms.len() == 1 {
            Ok(lead.terms.pop().expect("one term"))
        } else {
            Err(Error::NonUniqueLead(lead.terms.len()))
        }
    }

    /// Whether every monomial with nonzero coefficient satisfies `pred`.
    pub fn subalgebra_contains(&self, pred: impl Fn(&[i64]) -> bool) -> bool {
        self.terms.iter().all(|(e, _)| pred(e))
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TorusElement<D> {
        let raw = self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect();
        TorusElement::from_raw(&self.matrix, raw)
    }

    pub fn with_matrix(&self, matrix: &Arc<AntisymMatrix>) -> Result<Self> {
        self.matrix.check_dim(matrix.dim())?;
        Ok(Self {
            matrix: matrix.clone(),
            terms: self.terms.clone(),
        })
    }
}

impl<C: Coefficient> PartialEq for TorusElement<C> {
    fn eq(&self, rhs: &Self) -> bool {
        self.matrix == rhs.matrix && self.terms == rhs.terms
    }
}

impl<C: Coefficient> fmt::Debug for TorusElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusElement({self})")
    }
}

impl<C: Coefficient> fmt::Display for TorusElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})x^{:?}", e.as_slice())?;
        }
        Ok(())
    }
}

pub fn elem_mul<C: Coefficient>(a: &TorusElement<C>, b: &TorusElement<C>) -> Result<TorusElement<C>> {
    a.mul(b)
}

pub fn lead_term<C: Coefficient, D: Ord + Clone>(
    e: &TorusElement<C>,
    degree: impl Fn(&[i64]) -> D,
) -> Result<LeadTerms<C, D>> {
    e.lead_terms(degree)
}

/// `x^a x^b = q^{⟨a,b⟩/2} x^{a+b}`.
pub fn mono_mul(q: &Arc<AntisymMatrix>, a: &[i64], b: &[i64]) -> Result<TorusElement<HalfLaurent>> {
    let x = TorusElement::monomial(q, a, HalfLaurent::one())?;
    let y = TorusElement::monomial(q, b, HalfLaurent::one())?;
    x.mul(&y)
}

/// Weyl normalization of an ordered product of generator powers `x_{g}^{e}`:
/// the ordered product times `q^{-Σ_{i<j} c_ij / 2}` where `c_ij = e_i e_j Q(g_i, g_j)`.
pub fn weyl_normalize(q: &Arc<AntisymMatrix>, seq: &[(usize, i64)]) -> Result<TorusElement<HalfLaurent>> {
    let dim = q.dim();
    let mut product = TorusElement::monomial(q, &vec![0; dim], HalfLaurent::one())?;
    for &(g, e) in seq {
        if g >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g + 1,
            });
        }
        let mut exp = vec![0; dim];
        exp[g] = e;
        product = product.mul(&TorusElement::monomial(q, &exp, HalfLaurent::one())?)?;
    }
    let mut correction = 0;
    for (i, &(gi, ei)) in seq.iter().enumerate() {
        for &(gj, ej) in &seq[i + 1..] {
            correction += ei * ej * q.get(gi, gj);
        }
    }
    Ok(product.scale(&HalfLaurent::q_half_power(-correction)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p1_matrix() -> Arc<AntisymMatrix> {
        Arc::new(AntisymMatrix::new(vec![vec![0, -2], vec![2, 0]]).unwrap())
    }

    fn random_matrix(dim: usize, seed: &[i64]) -> Arc<AntisymMatrix> {
        let mut m = AntisymMatrix::zeros(dim);
        let mut k = 0;
        for i in 0..dim {
            for j in i + 1..dim {
                m.set_pair(i, j, seed[k % seed.len()]);
                k += 1;
            }
        }
        Arc::new(m)
    }

    #[test]
    fn u_times_x_in_the_one_boundary_torus() {
        let q = p1_matrix();
        let prod = mono_mul(&q, &[0, 1], &[1, 0]).unwrap();
        let expected = TorusElement::monomial(&q, &[1, 1], HalfLaurent::q_power(1)).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn weyl_normalization_of_u_x() {
        let q = p1_matrix();
        let w = weyl_normalize(&q, &[(1, 1), (0, 1)]).unwrap();
        assert_eq!(w, TorusElement::monomial(&q, &[1, 1], HalfLaurent::one()).unwrap());
    }

    #[test]
    fn mismatched_tori_are_rejected() {
        let a = TorusElement::monomial(&p1_matrix(), &[1, 0], HalfLaurent::one()).unwrap();
        let other = Arc::new(AntisymMatrix::zeros(2));
        let b = TorusElement::monomial(&other, &[1, 0], HalfLaurent::one()).unwrap();
        assert_eq!(a.mul(&b), Err(Error::TorusMismatch));
    }

    #[test]
    fn non_antisymmetric_input_is_rejected() {
        assert!(AntisymMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(AntisymMatrix::new(vec![vec![1, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn reflection_normalization_centres_the_coefficient() {
        let q = p1_matrix();
        let coeff = HalfLaurent::from_terms([(2, 1), (6, 1)]);
        let x = TorusElement::monomial(&q, &[1, 0], coeff).unwrap();
        let normalized = x.reflection_normalized().unwrap();
        let expected = HalfLaurent::from_terms([(-2, 1), (2, 1)]);
        assert_eq!(normalized.coefficient(&[1, 0]), Some(&expected));
    }

    #[test]
    fn lead_terms_return_the_full_tie_class() {
        let q = p1_matrix();
        let x = TorusElement::from_terms(
            &q,
            [
                (Exponent::from_slice(&[1, 0]), HalfLaurent::one()),
                (Exponent::from_slice(&[0, 1]), HalfLaurent::one()),
                (Exponent::from_slice(&[0, 0]), HalfLaurent::one()),
            ],
        )
        .unwrap();
        let lead = x.lead_terms(|e| e[0] + e[1]).unwrap();
        assert_eq!(lead.degree, 1);
        assert_eq!(lead.terms.len(), 2);
        assert!(x.unique_lead(|e| e[0] + e[1]).is_err());
        assert_eq!(x.unique_lead(|e| e.to_vec()).unwrap().0.as_slice(), &[1, 0]);
    }

    #[test]
    fn zero_has_no_lead() {
        let z: TorusElement<HalfLaurent> = TorusElement::zero(&p1_matrix());
        assert!(matches!(z.lead_terms(|e| e.to_vec()), Err(Error::ZeroElement)));
    }

    proptest! {
        #[test]
        fn product_is_associative(
            entries in prop::collection::vec(-3i64..=3, 6),
            a in prop::collection::vec(-3i64..=3, 4),
            b in prop::collection::vec(-3i64..=3, 4),
            c in prop::collection::vec(-3i64..=3, 4),
        ) {
            let q = random_matrix(4, &entries);
            let ab = mono_mul(&q, &a, &b).unwrap();
            let abc = ab.mul(&TorusElement::monomial(&q, &c, HalfLaurent::one()).unwrap()).unwrap();
            let bc = mono_mul(&q, &b, &c).unwrap();
            let a_bc = TorusElement::monomial(&q, &a, HalfLaurent::one()).unwrap().mul(&bc).unwrap();
            prop_assert_eq!(abc, a_bc);
        }

        #[test]
        fn commutation_scalar_is_the_full_pairing(
            entries in prop::collection::vec(-3i64..=3, 6),
            a in prop::collection::vec(-3i64..=3, 4),
            b in prop::collection::vec(-3i64..=3, 4),
        ) {
            let q = random_matrix(4, &entries);
            let ab = mono_mul(&q, &a, &b).unwrap();
            let ba = mono_mul(&q, &b, &a).unwrap();
            let p = q.pairing(&a, &b).unwrap();
            prop_assert_eq!(ab, ba.scale(&HalfLaurent::q_power(p)));
        }

        #[test]
        fn weyl_normalization_ignores_order(
            entries in prop::collection::vec(-3i64..=3, 6),
            seq in prop::collection::vec((0usize..4, -2i64..=2), 0..6),
        ) {
            let q = random_matrix(4, &entries);
            let mut total = vec![0i64; 4];
            for &(g, e) in &seq {
                total[g] += e;
            }
            let expected = TorusElement::monomial(&q, &total, HalfLaurent::one()).unwrap();
            prop_assert_eq!(weyl_normalize(&q, &seq).unwrap(), expected.clone());
            let mut reversed = seq.clone();
            reversed.reverse();
            prop_assert_eq!(weyl_normalize(&q, &reversed).unwrap(), expected);
        }
    }
}
