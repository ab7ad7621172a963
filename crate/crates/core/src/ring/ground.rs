use std::fmt;
use std::ops::{Add, Mul, Neg};

use smallvec::SmallVec;

use super::laurent::HalfLaurent;
use super::Coefficient;

/// Laurent monomial in puncture variables: sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PunctureMonomial(SmallVec<[(u32, i32); 4]>);

impl PunctureMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(var: u32, exp: i32) -> Self {
        let mut m = Self::one();
        if exp != 0 {
            m.0.push((var, exp));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(u32, i32)] {
        &self.0
    }

    pub fn exponent(&self, var: u32) -> i32 {
        self.0.iter().find(|(v, _)| *v == var).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < rhs.0.len() {
            let take_left = j == rhs.0.len() || (i < self.0.len() && self.0[i].0 < rhs.0[j].0);
            let take_right = i == self.0.len() || (j < rhs.0.len() && rhs.0[j].0 < self.0[i].0);
            if take_left {
                out.push(self.0[i]);
                i += 1;
            } else if take_right {
                out.push(rhs.0[j]);
                j += 1;
            } else {
                let e = self.0[i].1 + rhs.0[j].1;
                if e != 0 {
                    out.push((self.0[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Self(out)
    }

    /// Rename variables; factors landing on the same variable are merged.
    pub fn remap(&self, mut f: impl FnMut(u32) -> u32) -> Self {
        self.0
            .iter()
            .fold(Self::one(), |acc, &(v, e)| acc.mul(&Self::var(f(v), e)))
    }

    fn fmt_with(&self, out: &mut String, name: &dyn Fn(u32) -> String) {
        for (idx, &(v, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                out.push('*');
            }
            out.push_str(&name(v));
            if e != 1 {
                out.push_str(&format!("^{e}"));
            }
        }
    }
}

/// The ground ring `Z[q^{±1/2}] ⊗ Z[v_p^{±1}]`: puncture monomials with Laurent coefficients,
/// sorted by monomial, with no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GroundRing {
    terms: SmallVec<[(PunctureMonomial, HalfLaurent); 1]>,
}

impl GroundRing {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_laurent(HalfLaurent::one())
    }

    pub fn from_laurent(p: HalfLaurent) -> Self {
        Self::term(PunctureMonomial::one(), p)
    }

    pub fn term(m: PunctureMonomial, p: HalfLaurent) -> Self {
        let mut terms = SmallVec::new();
        if !p.is_zero() {
            terms.push((m, p));
        }
        Self { terms }
    }

    /// The puncture variable `v_var^exp`.
    pub fn puncture(var: u32, exp: i32) -> Self {
        Self::term(PunctureMonomial::var(var, exp), HalfLaurent::one())
    }

    pub fn q_half_power(half_steps: i64) -> Self {
        Self::from_laurent(HalfLaurent::q_half_power(half_steps))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PunctureMonomial, &HalfLaurent)> {
        self.terms.iter().map(|(m, p)| (m, p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, p)] if m.is_one() && p.is_one())
    }

    /// The Laurent part when no puncture variable occurs.
    pub fn as_laurent(&self) -> Option<HalfLaurent> {
        match self.terms.as_slice() {
            [] => Some(HalfLaurent::zero()),
            [(m, p)] if m.is_one() => Some(p.clone()),
            _ => None,
        }
    }

    fn add_term(&mut self, m: PunctureMonomial, p: &HalfLaurent) {
        if p.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(k, _)| k.cmp(&m)) {
            Ok(pos) => {
                let sum = &self.terms[pos].1 + p;
                if sum.is_zero() {
                    self.terms.remove(pos);
                } else {
                    self.terms[pos].1 = sum;
                }
            }
            Err(pos) => self.terms.insert(pos, (m, p.clone())),
        }
    }

    pub fn remap_punctures(&self, mut f: impl FnMut(u32) -> u32) -> Self {
        let mut out = Self::zero();
        for (m, p) in &self.terms {
            out.add_term(m.remap(&mut f), p);
        }
        out
    }

    /// Render with a custom name for each puncture variable.
    pub fn display_with(&self, name: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, p)) in self.terms.iter().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            if m.is_one() {
                out.push_str(&p.to_string());
                continue;
            }
            if !p.is_one() {
                if p.len() == 1 {
                    out.push_str(&p.to_string());
                } else {
                    out.push_str(&format!("({p})"));
                }
                out.push('*');
            }
            m.fmt_with(&mut out, name);
        }
        out
    }
}

impl Add<&GroundRing> for &GroundRing {
    type Output = GroundRing;
    fn add(self, rhs: &GroundRing) -> GroundRing {
        let mut out = self.clone();
        for (m, p) in &rhs.terms {
            out.add_term(m.clone(), p);
        }
        out
    }
}

impl Mul<&GroundRing> for &GroundRing {
    type Output = GroundRing;
    fn mul(self, rhs: &GroundRing) -> GroundRing {
        if let [(m2, p2)] = rhs.terms.as_slice() {
            if m2.is_one() {
                return GroundRing {
                    terms: self.terms.iter().map(|(m, p)| (m.clone(), p * p2)).collect(),
                };
            }
        }
        let mut out = GroundRing::zero();
        for (m1, p1) in &self.terms {
            for (m2, p2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(p1 * p2));
            }
        }
        out
    }
}

impl Neg for &GroundRing {
    type Output = GroundRing;
    fn neg(self) -> GroundRing {
        GroundRing {
            terms: self.terms.iter().map(|(m, p)| (m.clone(), -p)).collect(),
        }
    }
}

impl From<HalfLaurent> for GroundRing {
    fn from(p: HalfLaurent) -> Self {
        Self::from_laurent(p)
    }
}

impl Coefficient for GroundRing {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        for (m, p) in &rhs.terms {
            self.add_term(m.clone(), p);
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn unit_like(&self) -> Self {
        GroundRing::one()
    }
    fn shift_q(&self, half_steps: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, p)| (m.clone(), p.shift(half_steps))).collect(),
        }
    }
    fn shift_q_mut(&mut self, half_steps: i64) {
        for (_, p) in &mut self.terms {
            p.shift_q_mut(half_steps);
        }
    }
    fn reflect(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, p)| (m.clone(), p.reflect())).collect(),
        }
    }
    fn half_exponent_range(&self) -> Option<(i64, i64)> {
        self.terms
            .iter()
            .filter_map(|(_, p)| p.exponent_range())
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }
}

impl fmt::Display for GroundRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&|v| format!("v{v}")))
    }
}

impl fmt::Debug for GroundRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundRing({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn puncture_variables_are_invertible() {
        let v = GroundRing::puncture(3, 1);
        let w = GroundRing::puncture(3, -1);
        assert!((&v * &w).is_one());
    }

    #[test]
    fn q_shift_leaves_puncture_part_alone() {
        let x = &GroundRing::puncture(1, 2) + &GroundRing::one();
        let shifted = x.shift_q(3);
        let expected = &(&GroundRing::puncture(1, 2) * &GroundRing::q_half_power(3))
            + &GroundRing::q_half_power(3);
        assert_eq!(shifted, expected);
    }

    #[test]
    fn remap_merges_variables() {
        let x = &GroundRing::puncture(1, 1) * &GroundRing::puncture(2, 1);
        assert_eq!(x.remap_punctures(|_| 7), GroundRing::puncture(7, 2));
    }

    #[test]
    fn display_names_variables() {
        let x = &GroundRing::puncture(1, 1) * &GroundRing::puncture(2, -1);
        assert_eq!(x.display_with(&|v| format!("b{}", v + 1)), "b2*b3^-1");
    }
}
