//! Coefficient rings: Laurent polynomials in `q^{1/2}`, the puncture-extended
//! ground ring and cyclotomic integers used at roots of unity.

mod cyclotomic;
mod ground;
mod laurent;
mod poly;

use std::fmt;

pub use cyclotomic::{cyclotomic_ring, specialize, Cyclotomic, CyclotomicRing};
pub use ground::{GroundRing, PunctureMonomial};
pub use laurent::HalfLaurent;
pub use poly::{cyclotomic_poly, IntPoly};

/// Coefficients of quantum torus elements. Every ring here carries an action of
/// `q^{1/2}` by multiplication, which is how torus products absorb the
/// commutation scalars.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// The unit of the ring `self` lives in.
    fn unit_like(&self) -> Self;
    /// Multiply by `q^{half_steps/2}`.
    fn shift_q(&self, half_steps: i64) -> Self;
    fn shift_q_mut(&mut self, half_steps: i64) {
        if half_steps != 0 {
            *self = self.shift_q(half_steps);
        }
    }
    /// Bar involution `q^{1/2} -> q^{-1/2}`; the identity where it is not defined.
    fn reflect(&self) -> Self;
    /// Smallest and largest exponent of `q^{1/2}` present, if the ring is graded by it.
    fn half_exponent_range(&self) -> Option<(i64, i64)> {
        None
    }
}
