//! Root-of-unity bookkeeping, Chebyshev threading and the lattices describing the centre.

mod center;
mod chebyshev;
mod kostov;
pub mod lattice;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::check_surface;

pub use center::{even_sublattice, expected_kernel, kernel_lattice, kernel_lattice_for, lambda_hat};
pub use chebyshev::{chebyshev, evaluate_laurent, threading_coeffs};
pub use kostov::kostov_generic;
pub use lattice::{lattice_index, LatticeBasis};

/// The class of `ε = ξ^{N²}` among the fourth roots of unity, with `ξ = exp(2πi/n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Epsilon {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "i")]
    I,
    #[serde(rename = "-1")]
    MinusOne,
    #[serde(rename = "-i")]
    MinusI,
}

impl Epsilon {
    pub fn is_real(self) -> bool {
        matches!(self, Epsilon::One | Epsilon::MinusOne)
    }
}

/// Orders attached to a root of unity `ξ` of order `n`: `N″ = n`, `N′ = ord(ξ²)`, `N = ord(ξ⁴)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootOfUnity {
    pub order: u64,
    pub square_order: u64,
    pub quartic_order: u64,
    /// `N² mod n`; `ε = ξ^e`.
    pub epsilon_exponent: u64,
    pub epsilon: Epsilon,
}

impl RootOfUnity {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let square_order = n / gcd(n, 2);
        let quartic_order = n / gcd(n, 4);
        let e = (quartic_order * quartic_order) % n;
        let epsilon = match (4 * e) / n {
            0 => Epsilon::One,
            1 => Epsilon::I,
            2 => Epsilon::MinusOne,
            _ => Epsilon::MinusI,
        };
        debug_assert_eq!((4 * e) % n, 0);
        Ok(Self {
            order: n,
            square_order,
            quartic_order,
            epsilon_exponent: e,
            epsilon,
        })
    }

    pub fn square_order_is_odd(&self) -> bool {
        self.square_order % 2 == 1
    }
}

pub fn orders(n: u64) -> Result<RootOfUnity> {
    RootOfUnity::new(n)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `r = 3g − 3 + m`, the number of pants curves.
pub fn curve_count(genus: usize, punctures: usize) -> Result<usize> {
    check_surface(genus, punctures)?;
    Ok(3 * genus + punctures - 3)
}

/// `N^r` when `N′` is odd and `2^g N^r` when `N′` is even.
pub fn pi_degree(genus: usize, punctures: usize, xi: &RootOfUnity) -> Result<u128> {
    let r = curve_count(genus, punctures)?;
    let base = u128::from(xi.quartic_order).pow(r as u32);
    Ok(if xi.square_order_is_odd() { base } else { base << genus })
}
