use crate::error::Result;
use crate::qtorus::AntisymMatrix;
use crate::surface::DtDatum;

use super::lattice::{congruence_solutions, LatticeBasis};
use super::RootOfUnity;

/// The span of the coordinate monoid: even vertex sums on the `n`-block, free `t`-block.
pub fn lambda_hat(datum: &DtDatum) -> LatticeBasis {
    let r = datum.curves();
    let incidence: Vec<Vec<i128>> = datum
        .incidence()
        .into_iter()
        .map(|row| row.into_iter().map(i128::from).collect())
        .collect();
    let mut generators: Vec<Vec<i128>> = congruence_solutions(&incidence, r, 2)
        .into_iter()
        .map(|mut n| {
            n.resize(2 * r, 0);
            n
        })
        .collect();
    generators.extend((0..r).map(|i| {
        let mut e = vec![0; 2 * r];
        e[r + i] = 1;
        e
    }));
    LatticeBasis::from_generators(2 * r, &generators).expect("generators have ambient length")
}

/// `{k ∈ base : ⟨k, base⟩_q ⊆ modulus·Z}`.
pub fn kernel_lattice_for(base: &LatticeBasis, q: &AntisymMatrix, modulus: u64) -> Result<LatticeBasis> {
    q.check_dim(base.ambient())?;
    let b = base.vectors();
    // Row j of the system: Σ_i a_i ⟨b_i, b_j⟩.
    let system: Vec<Vec<i128>> = b
        .iter()
        .map(|bj| b.iter().map(|bi| i128::from(q.pairing_unchecked(bi, bj))).collect())
        .collect();
    let generators: Vec<Vec<i128>> = congruence_solutions(&system, b.len(), i128::from(modulus))
        .into_iter()
        .map(|a| {
            let mut k = vec![0i128; base.ambient()];
            for (ai, bi) in a.iter().zip(b) {
                for (kx, &bx) in k.iter_mut().zip(bi) {
                    *kx += ai * i128::from(bx);
                }
            }
            k
        })
        .collect();
    LatticeBasis::from_generators(base.ambient(), &generators)
}

pub fn kernel_lattice(datum: &DtDatum, modulus: u64) -> Result<LatticeBasis> {
    kernel_lattice_for(&lambda_hat(datum), datum.q_tilde(), modulus)
}

/// `{k ∈ Λ̂ : ⟨k, Λ̂⟩ ⊆ 4Z}`.
pub fn even_sublattice(datum: &DtDatum) -> LatticeBasis {
    kernel_lattice(datum, 4).expect("datum matrices match their lattice")
}

/// `N·Λ̂` when `N′` is odd, `N·Λ̂^ev` otherwise.
pub fn expected_kernel(datum: &DtDatum, xi: &RootOfUnity) -> LatticeBasis {
    let base = if xi.square_order_is_odd() {
        lambda_hat(datum)
    } else {
        even_sublattice(datum)
    };
    base.scaled(xi.quartic_order as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{lattice_index, orders, pi_degree};
    use crate::surface::standard_datum;

    #[test]
    fn four_holed_sphere_lattices() {
        let d = standard_datum(0, 4).unwrap();
        let hat = lambda_hat(&d);
        assert_eq!(hat.vectors(), &[vec![2, 0], vec![0, 1]]);
        assert_eq!(even_sublattice(&d), hat);
        assert_eq!(kernel_lattice(&d, 5).unwrap(), hat.scaled(5));
        assert_eq!(kernel_lattice(&d, 1).unwrap(), hat);
        let k3 = kernel_lattice(&d, 3).unwrap();
        let d3 = pi_degree(0, 4, &orders(3).unwrap()).unwrap();
        assert_eq!(lattice_index(&k3, &hat).unwrap(), d3 * d3);
    }

    #[test]
    fn genus_two_lattices() {
        let d = standard_datum(2, 0).unwrap();
        let hat = lambda_hat(&d);
        // Both theta vertices meet all three curves, so they impose one parity condition.
        assert_eq!(lattice_index(&hat, &LatticeBasis::full(6)).unwrap(), 2);
        let even = even_sublattice(&d);
        assert_eq!(lattice_index(&even, &hat).unwrap(), 16);
        assert_eq!(kernel_lattice_for(&even, d.q_tilde(), 4).unwrap(), even);
        let k4 = kernel_lattice(&d, 4).unwrap();
        assert_eq!(lattice_index(&k4, &hat).unwrap(), 16);
        assert_eq!(k4, expected_kernel(&d, &orders(4).unwrap()));
    }

    fn for_each_point(dim: usize, bound: i128, f: &mut impl FnMut(&[i128])) {
        let mut p = vec![-bound; dim];
        loop {
            f(&p);
            let mut i = 0;
            while i < dim && p[i] == bound {
                p[i] = -bound;
                i += 1;
            }
            if i == dim {
                return;
            }
            p[i] += 1;
        }
    }

    #[test]
    fn kernel_membership_matches_enumeration() {
        for (g, m, nmax) in [(0, 4, 12), (0, 5, 4), (1, 2, 4)] {
            let d = standard_datum(g, m).unwrap();
            let hat = lambda_hat(&d);
            let q = d.q_tilde();
            for n in 1..=nmax {
                let kernel = kernel_lattice(&d, n).unwrap();
                let bound = 2 * i128::from(n);
                for_each_point(hat.ambient(), bound, &mut |k| {
                    if hat.coordinates(k).is_none() {
                        return;
                    }
                    let k64: Vec<i64> = k.iter().map(|&x| x as i64).collect();
                    let predicate = hat
                        .vectors()
                        .iter()
                        .all(|b| q.pairing_unchecked(&k64, b).rem_euclid(n as i64) == 0);
                    assert_eq!(kernel.contains(&k64), predicate, "(g, m, n) = ({g}, {m}, {n}), k = {k:?}");
                });
            }
        }
    }
}
