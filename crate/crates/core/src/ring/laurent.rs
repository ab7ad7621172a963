use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::Coefficient;

/// Element of `Z[q^{1/2}, q^{-1/2}]` as `(exponent of q^{1/2}, coefficient)` pairs, sorted by
/// exponent, with no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfLaurent {
    terms: SmallVec<[(i64, i128); 2]>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::monomial(0, c)
    }

    /// `coeff * q^{half_steps/2}`.
    pub fn monomial(half_steps: i64, coeff: i128) -> Self {
        let mut terms = SmallVec::new();
        if coeff != 0 {
            terms.push((half_steps, coeff));
        }
        Self { terms }
    }

    /// `q^{half_steps/2}`.
    pub fn q_half_power(half_steps: i64) -> Self {
        Self::monomial(half_steps, 1)
    }

    /// `q^k`.
    pub fn q_power(k: i64) -> Self {
        Self::monomial(2 * k, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i128)>) -> Self {
        let mut raw: SmallVec<[(i64, i128); 2]> = terms.into_iter().collect();
        raw.sort_unstable_by_key(|&(e, _)| e);
        Self { terms: combine_sorted(raw) }
    }

    pub fn add_term(&mut self, half_steps: i64, coeff: i128) {
        if coeff == 0 {
            return;
        }
        match self.terms.binary_search_by_key(&half_steps, |&(e, _)| e) {
            Ok(pos) => {
                self.terms[pos].1 += coeff;
                if self.terms[pos].1 == 0 {
                    self.terms.remove(pos);
                }
            }
            Err(pos) => self.terms.insert(pos, (half_steps, coeff)),
        }
    }

    /// Pairs `(exponent of q^{1/2}, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i128)> + '_ {
        self.terms.iter().copied()
    }

    pub fn coefficient(&self, half_steps: i64) -> i128 {
        self.terms
            .binary_search_by_key(&half_steps, |&(e, _)| e)
            .map_or(0, |pos| self.terms[pos].1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_monomial() == Some((0, 1))
    }

    pub fn as_monomial(&self) -> Option<(i64, i128)> {
        match self.terms.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn shift(&self, half_steps: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|&(e, c)| (e + half_steps, c)).collect(),
        }
    }

    pub fn reflect(&self) -> Self {
        Self {
            terms: self.terms.iter().rev().map(|&(e, c)| (-e, c)).collect(),
        }
    }

    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        Some((self.terms.first()?.0, self.terms.last()?.0))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute a complex value for `q^{1/2}`.
    pub fn evaluate(&self, q_half: num_complex::Complex64) -> num_complex::Complex64 {
        self.terms
            .iter()
            .map(|&(e, c)| q_half.powi(e as i32) * c as f64)
            .sum()
    }
}

/// Merge equal exponents of a sorted list and drop zeros.
fn combine_sorted(raw: SmallVec<[(i64, i128); 2]>) -> SmallVec<[(i64, i128); 2]> {
    let mut out: SmallVec<[(i64, i128); 2]> = SmallVec::with_capacity(raw.len());
    for (e, c) in raw {
        match out.last_mut() {
            Some(last) if last.0 == e => last.1 += c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

fn merge(lhs: &HalfLaurent, rhs: &HalfLaurent, sign: i128) -> HalfLaurent {
    let (a, b) = (&lhs.terms, &rhs.terms);
    let mut out = SmallVec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, sign * b[j].1));
            j += 1;
        } else {
            let c = a[i].1 + sign * b[j].1;
            if c != 0 {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    HalfLaurent { terms: out }
}

impl Add<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        merge(self, rhs, 1)
    }
}

impl Sub<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        merge(self, rhs, -1)
    }
}

impl Mul<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        if let Some((e, c)) = rhs.as_monomial() {
            return HalfLaurent {
                terms: self.terms.iter().map(|&(x, y)| (x + e, y * c)).collect(),
            };
        }
        let mut raw: SmallVec<[(i64, i128); 2]> = SmallVec::with_capacity(self.terms.len() * rhs.terms.len());
        for &(e1, c1) in &self.terms {
            for &(e2, c2) in &rhs.terms {
                raw.push((e1 + e2, c1 * c2));
            }
        }
        raw.sort_unstable_by_key(|&(e, _)| e);
        HalfLaurent { terms: combine_sorted(raw) }
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
        }
    }
}

impl Coefficient for HalfLaurent {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = merge(self, rhs, 1);
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn unit_like(&self) -> Self {
        HalfLaurent::one()
    }
    fn shift_q(&self, half_steps: i64) -> Self {
        self.shift(half_steps)
    }
    fn shift_q_mut(&mut self, half_steps: i64) {
        for t in &mut self.terms {
            t.0 += half_steps;
        }
    }
    fn reflect(&self) -> Self {
        HalfLaurent::reflect(self)
    }
    fn half_exponent_range(&self) -> Option<(i64, i64)> {
        self.exponent_range()
    }
}

pub(crate) fn fmt_q_power(f: &mut fmt::Formatter<'_>, half_steps: i64) -> fmt::Result {
    match half_steps {
        0 => Ok(()),
        2 => write!(f, "q"),
        h if h % 2 == 0 => write!(f, "q^{}", h / 2),
        h => write!(f, "q^({h}/2)"),
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, &(e, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            if magnitude != 1 || e == 0 {
                write!(f, "{magnitude}")?;
            }
            fmt_q_power(f, e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfLaurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_orders_terms_by_descending_degree() {
        let p = HalfLaurent::from_terms([(4, 1), (2, 2), (0, -1), (-1, 1)]);
        assert_eq!(p.to_string(), "q^2 + 2q - 1 + q^(-1/2)");
        assert_eq!(HalfLaurent::zero().to_string(), "0");
        assert_eq!(HalfLaurent::monomial(-3, -2).to_string(), "-2q^(-3/2)");
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = HalfLaurent::from_terms([(1, 3), (1, -3)]);
        assert!(p.is_zero());
    }

    #[test]
    fn reflection_is_an_involutive_ring_map() {
        let a = HalfLaurent::from_terms([(3, 2), (-1, 1)]);
        let b = HalfLaurent::from_terms([(1, -1), (0, 5)]);
        assert_eq!(a.reflect().reflect(), a);
        assert_eq!((&a * &b).reflect(), &a.reflect() * &b.reflect());
    }

    #[test]
    fn q_power_squares_the_half_power() {
        let h = HalfLaurent::q_half_power(1);
        assert_eq!(&h * &h, HalfLaurent::q_power(1));
    }
}
