use num_complex::Complex64;

/// Whether `1` avoids every product `u_1^{±1} ⋯ u_m^{±1}` where `u_i + u_i^{-1} = w_i`.
/// A vector with some `w_i` within `tol` of `±2` is never generic.
pub fn kostov_generic(w: &[Complex64], tol: f64) -> bool {
    if w.iter().any(|&wi| (wi - 2.0).norm() <= tol || (wi + 2.0).norm() <= tol) {
        return false;
    }
    let roots: Vec<Complex64> = w
        .iter()
        .map(|&wi| (wi + (wi * wi - 4.0).sqrt()) / 2.0)
        .collect();
    let mut products = vec![Complex64::new(1.0, 0.0)];
    for u in roots {
        products = products.iter().flat_map(|&p| [p * u, p / u]).collect();
    }
    products.iter().all(|p| (p - 1.0).norm() >= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn examples() {
        assert!(!kostov_generic(&[c(2.0), c(0.0)], 1e-9));
        assert!(kostov_generic(&[c(3.0)], 1e-9));
        for w0 in [c(3.0), c(0.5), Complex64::new(0.3, 1.7)] {
            assert!(!kostov_generic(&[w0, w0], 1e-9));
        }
    }

    #[test]
    fn roots_solve_the_trace_equation() {
        let w = Complex64::new(0.7, -1.2);
        let u = (w + (w * w - 4.0).sqrt()) / 2.0;
        assert!((u + 1.0 / u - w).norm() < 1e-12);
    }
}
