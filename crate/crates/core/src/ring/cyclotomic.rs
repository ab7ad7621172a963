use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::laurent::HalfLaurent;
use super::poly::{cyclotomic_poly, IntPoly};
use super::Coefficient;
use crate::error::{Error, Result};

/// `Z[ζ_d] = Z[x]/(Φ_d)` with `ζ_d = exp(2πi/d)`.
#[derive(PartialEq, Eq)]
pub struct CyclotomicRing {
    order: u32,
    modulus: IntPoly,
}

impl CyclotomicRing {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }
}

impl fmt::Debug for CyclotomicRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[zeta_{}]", self.order)
    }
}

/// Shared ring of order `d`; moduli are computed once per order.
pub fn cyclotomic_ring(order: u32) -> Result<Arc<CyclotomicRing>> {
    if order == 0 {
        return Err(Error::InvalidOrder(0));
    }
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicRing>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    Ok(guard
        .entry(order)
        .or_insert_with(|| {
            Arc::new(CyclotomicRing {
                order,
                modulus: cyclotomic_poly(order),
            })
        })
        .clone())
}

/// Element of `Z[ζ_d]`, reduced modulo `Φ_d`.
#[derive(Clone)]
pub struct Cyclotomic {
    ring: Arc<CyclotomicRing>,
    residue: IntPoly,
}

impl Cyclotomic {
    pub fn from_poly(ring: &Arc<CyclotomicRing>, p: &IntPoly) -> Self {
        let (_, residue) = p.div_rem_monic(&ring.modulus);
        Self {
            ring: ring.clone(),
            residue,
        }
    }

    pub fn zero(ring: &Arc<CyclotomicRing>) -> Self {
        Self::from_poly(ring, &IntPoly::zero())
    }

    pub fn one(ring: &Arc<CyclotomicRing>) -> Self {
        Self::from_poly(ring, &IntPoly::constant(1))
    }

    /// `ζ_d^k` for any integer `k`.
    pub fn zeta_power(ring: &Arc<CyclotomicRing>, k: i64) -> Self {
        let d = ring.order as i64;
        Self::from_poly(ring, &IntPoly::x_power(k.rem_euclid(d) as usize))
    }

    pub fn ring(&self) -> &Arc<CyclotomicRing> {
        &self.ring
    }

    pub fn order(&self) -> u32 {
        self.ring.order
    }

    /// Reduced representative, coefficients of `1, ζ, ζ², …`.
    pub fn residue(&self) -> &IntPoly {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.residue == IntPoly::constant(1)
    }

    fn check_ring(&self, rhs: &Self) {
        assert_eq!(self.ring.order, rhs.ring.order, "mixed cyclotomic orders");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_ring(rhs);
        Self {
            ring: self.ring.clone(),
            residue: self.residue.add(&rhs.residue),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_ring(rhs);
        Self::from_poly(&self.ring, &self.residue.mul(&rhs.residue))
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            residue: IntPoly::new(self.residue.coeffs().iter().map(|c| -c).collect()),
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order when the element is a root of unity. Roots of unity in `Q(ζ_d)`
    /// have order dividing `lcm(2, d)`.
    pub fn multiplicative_order(&self) -> Option<u64> {
        let bound = 2 * self.ring.order as u64;
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Complex value at `ζ_d = exp(2πi/d)`.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let zeta = num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU / self.ring.order as f64);
        self.residue.evaluate(zeta)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, rhs: &Self) -> bool {
        self.ring.order == rhs.ring.order && self.residue == rhs.residue
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.residue.display_in(&format!("z{}", self.ring.order)))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self} in {:?})", self.ring)
    }
}

impl Coefficient for Cyclotomic {
    fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = Cyclotomic::add(self, rhs);
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Cyclotomic::mul(self, rhs)
    }
    fn neg_ref(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn unit_like(&self) -> Self {
        Cyclotomic::one(&self.ring)
    }
    /// Only meaningful on rings produced by [`specialize`], where `q^{1/2} = ζ`.
    fn shift_q(&self, half_steps: i64) -> Self {
        self.mul(&Cyclotomic::zeta_power(&self.ring, half_steps))
    }
    /// Complex conjugation, `ζ -> ζ^{-1}`.
    fn reflect(&self) -> Self {
        let mut out = Cyclotomic::zero(&self.ring);
        for (k, &c) in self.residue.coeffs().iter().enumerate() {
            if c != 0 {
                let term = Cyclotomic::zeta_power(&self.ring, -(k as i64));
                let scaled = term.mul(&Cyclotomic::from_poly(&self.ring, &IntPoly::constant(c)));
                out = out.add(&scaled);
            }
        }
        out
    }
}

/// Evaluate at `q^{1/2} = ζ_{2n}`, so that `q` becomes the primitive `n`-th root `ζ_{2n}^2`.
pub fn specialize(p: &HalfLaurent, xi_order: u32) -> Result<Cyclotomic> {
    if xi_order == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let ring = cyclotomic_ring(2 * xi_order)?;
    let d = ring.order() as i64;
    let mut lifted = vec![0i128; d as usize];
    for (e, c) in p.terms() {
        lifted[e.rem_euclid(d) as usize] += c;
    }
    Ok(Cyclotomic::from_poly(&ring, &IntPoly::new(lifted)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_at_order_two_is_minus_one() {
        let x = specialize(&HalfLaurent::q_power(1), 2).unwrap();
        assert_eq!(x.residue(), &IntPoly::constant(-1));
    }

    #[test]
    fn q_plus_inverse_vanishes_at_order_four() {
        let p = &HalfLaurent::q_power(1) + &HalfLaurent::q_power(-1);
        assert!(specialize(&p, 4).unwrap().is_zero());
    }

    #[test]
    fn half_power_is_a_primitive_fourth_root_at_order_two() {
        let x = specialize(&HalfLaurent::q_half_power(1), 2).unwrap();
        assert_eq!(x.multiplicative_order(), Some(4));
        assert!((x.to_complex() - num_complex::Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn specialization_is_multiplicative() {
        let a = HalfLaurent::from_terms([(3, 2), (-5, 1), (0, -4)]);
        let b = HalfLaurent::from_terms([(1, 1), (7, -3)]);
        for n in 1..=12 {
            let lhs = specialize(&(&a * &b), n).unwrap();
            let rhs = specialize(&a, n).unwrap().mul(&specialize(&b, n).unwrap());
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn conjugation_inverts_zeta() {
        let ring = cyclotomic_ring(12).unwrap();
        let z = Cyclotomic::zeta_power(&ring, 5);
        assert!(z.mul(&z.reflect()).is_one());
    }

    #[test]
    fn zero_order_is_rejected() {
        assert!(specialize(&HalfLaurent::one(), 0).is_err());
    }
}
