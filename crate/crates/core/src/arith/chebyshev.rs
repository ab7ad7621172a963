use crate::ring::{HalfLaurent, IntPoly};

/// `T_0 = 2`, `T_1 = z`, `T_k = z T_{k−1} − T_{k−2}`.
pub fn chebyshev(k: usize) -> IntPoly {
    let mut prev = IntPoly::constant(2);
    if k == 0 {
        return prev;
    }
    let z = IntPoly::x_power(1);
    let mut cur = z.clone();
    for _ in 1..k {
        let next = z.mul(&cur).sub(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Coefficients `c_0..c_N` of `T_N`.
pub fn threading_coeffs(n: usize) -> Vec<i128> {
    let t = chebyshev(n);
    (0..=n).map(|j| t.coeff(j)).collect()
}

/// Horner evaluation of an integer polynomial at a Laurent polynomial.
pub fn evaluate_laurent(p: &IntPoly, z: &HalfLaurent) -> HalfLaurent {
    p.coeffs()
        .iter()
        .rev()
        .fold(HalfLaurent::zero(), |acc, &c| &(&acc * z) + &HalfLaurent::constant(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_examples() {
        assert_eq!(chebyshev(0).coeffs(), &[2]);
        assert_eq!(chebyshev(1).coeffs(), &[0, 1]);
        assert_eq!(chebyshev(2).coeffs(), &[-2, 0, 1]);
        assert_eq!(chebyshev(3).coeffs(), &[0, -3, 0, 1]);
        assert_eq!(threading_coeffs(1), vec![0, 1]);
        assert_eq!(threading_coeffs(3), vec![0, -3, 0, 1]);
        assert_eq!(threading_coeffs(5), vec![0, 5, 0, -5, 0, 1]);
    }

    #[test]
    fn trace_identity_up_to_64() {
        let x = HalfLaurent::q_power(1);
        let z = &x + &HalfLaurent::q_power(-1);
        for k in 0..=64i64 {
            let expected = &HalfLaurent::q_power(k) + &HalfLaurent::q_power(-k);
            assert_eq!(evaluate_laurent(&chebyshev(k as usize), &z), expected, "k = {k}");
        }
    }
}
