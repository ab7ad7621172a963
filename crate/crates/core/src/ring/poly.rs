use std::fmt;

/// Dense integer polynomial, coefficients from the constant term upward. Trailing zeros are trimmed.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x^k`.
    pub fn x_power(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i128 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        assert_eq!(divisor.coeffs[d], 1, "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![0i128; rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            quot[k - d] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k - d + j] -= c * b;
            }
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    pub fn evaluate(&self, x: num_complex::Complex64) -> num_complex::Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, &c| acc * x + c as f64)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let magnitude = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if magnitude != 1 || k == 0 {
                out.push_str(&magnitude.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// The `d`-th cyclotomic polynomial, by exact division of `x^d - 1` by `Φ_e` for proper divisors `e | d`.
pub fn cyclotomic_poly(d: u32) -> IntPoly {
    assert!(d > 0, "cyclotomic order must be positive");
    let mut p = IntPoly::x_power(d as usize).sub(&IntPoly::constant(1));
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        let (quot, rem) = p.div_rem_monic(&cyclotomic_poly(e));
        debug_assert!(rem.is_zero());
        p = quot;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1).coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_poly(4).coeffs(), &[1, 0, 1]);
        assert_eq!(cyclotomic_poly(6).coeffs(), &[1, -1, 1]);
        assert_eq!(cyclotomic_poly(8).coeffs(), &[1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12).coeffs(), &[1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        let totient = |n: u32| (1..=n).filter(|k| gcd(*k, n) == 1).count();
        fn gcd(a: u32, b: u32) -> u32 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        for d in 1..=40 {
            assert_eq!(cyclotomic_poly(d).degree(), Some(totient(d)), "d = {d}");
        }
    }

    #[test]
    fn display_uses_requested_variable() {
        let p = IntPoly::new(vec![2, 0, -3, 1]);
        assert_eq!(p.display_in("z"), "z^3 - 3z^2 + 2");
    }
}
