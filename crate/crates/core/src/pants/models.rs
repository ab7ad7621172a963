use std::sync::{Arc, OnceLock};

use super::{Component, PantsModel, PantsType};
use crate::qtorus::AntisymMatrix;
use crate::ring::GroundRing;

/// Puncture variables in trace coefficients are the 0-based slot of the puncture.
const SLOT_B2: u32 = 1;
const SLOT_B3: u32 = 2;

/// `x_{i+1} x_i = q x_i x_{i+1}` along `chain`, `u_i x_i = q^2 x_i u_i`.
fn trace_matrix(j: usize, chain: &[(usize, usize)]) -> AntisymMatrix {
    let mut m = AntisymMatrix::zeros(2 * j);
    for &(next, prev) in chain {
        m.set_pair(next, prev, 1);
    }
    for i in 0..j {
        m.set_pair(j + i, i, 2);
    }
    m
}

/// Exponent of `x_i^2 · Π u_k^{e_k}`.
fn return_exponent(j: usize, i: usize, u: &[(usize, i64)]) -> Vec<i64> {
    let mut e = vec![0; 2 * j];
    e[i] = 2;
    for &(k, power) in u {
        e[j + k] += power;
    }
    e
}

pub struct ThreeBoundary;
pub struct TwoBoundary;
pub struct OneBoundary;

impl PantsModel for ThreeBoundary {
    fn pants_type(&self) -> PantsType {
        PantsType::P3
    }

    fn add_twice(&self, i: usize, n: &[i64]) -> i64 {
        (n[(i + 2) % 3] - n[i] - n[(i + 1) % 3]).max(0)
    }

    fn parity_holds(&self, n: &[i64]) -> bool {
        n.iter().sum::<i64>() % 2 == 0
    }

    fn arc_counts(&self, n: &[i64]) -> Vec<(Component, u64)> {
        let mut cross = [0i64; 3]; // indexed by the missing boundary
        let mut ret = [0i64; 3];
        match (0..3).find(|&i| n[i] > n[(i + 1) % 3] + n[(i + 2) % 3]) {
            Some(i) => {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                ret[i] = (n[i] - n[j] - n[k]) / 2;
                cross[k] = n[j];
                cross[j] = n[k];
            }
            None => {
                for l in 0..3 {
                    cross[l] = (n[(l + 1) % 3] + n[(l + 2) % 3] - n[l]) / 2;
                }
            }
        }
        let mut out = Vec::new();
        for (ends, missing) in [((0, 1), 2), ((0, 2), 1), ((1, 2), 0)] {
            if cross[missing] > 0 {
                out.push((Component::Cross { ends, twists: (0, 0) }, cross[missing] as u64));
            }
        }
        for (i, &count) in ret.iter().enumerate() {
            if count > 0 {
                out.push((Component::Return { boundary: i, twist: 0 }, count as u64));
            }
        }
        out
    }

    fn return_arc_twists(&self, i: usize) -> Vec<i64> {
        let mut t = vec![0; 3];
        t[(i + 1) % 3] = 1;
        t
    }

    fn return_arc_trace(&self, i: usize, m: i64) -> Vec<(Vec<i64>, GroundRing)> {
        let (next, after) = ((i + 1) % 3, (i + 2) % 3);
        vec![
            (return_exponent(3, i, &[(i, m), (next, 1)]), GroundRing::one()),
            (return_exponent(3, i, &[(i, m + 1), (after, -1)]), GroundRing::one()),
        ]
    }

    fn torus_matrix(&self) -> Arc<AntisymMatrix> {
        static M: OnceLock<Arc<AntisymMatrix>> = OnceLock::new();
        M.get_or_init(|| Arc::new(trace_matrix(3, &[(1, 0), (2, 1), (0, 2)]))).clone()
    }

    fn degree(&self, e: &[i64]) -> [i64; 3] {
        [e[0] + e[1] + e[2], e[3] + e[4] + e[5], 0]
    }
}

impl PantsModel for TwoBoundary {
    fn pants_type(&self) -> PantsType {
        PantsType::P2
    }

    fn add_twice(&self, i: usize, n: &[i64]) -> i64 {
        if i == 0 {
            -n[1]
        } else {
            n[0]
        }
    }

    fn parity_holds(&self, n: &[i64]) -> bool {
        (n[0] + n[1]) % 2 == 0
    }

    fn arc_counts(&self, n: &[i64]) -> Vec<(Component, u64)> {
        let cross = n[0].min(n[1]);
        let mut out = Vec::new();
        if cross > 0 {
            out.push((Component::Cross { ends: (0, 1), twists: (0, 0) }, cross as u64));
        }
        for i in 0..2 {
            let count = (n[i] - n[1 - i]).max(0) / 2;
            if count > 0 {
                out.push((Component::Return { boundary: i, twist: 0 }, count as u64));
            }
        }
        out
    }

    fn return_arc_twists(&self, i: usize) -> Vec<i64> {
        if i == 0 {
            vec![0, 1]
        } else {
            vec![-1, 1]
        }
    }

    fn return_arc_trace(&self, i: usize, m: i64) -> Vec<(Vec<i64>, GroundRing)> {
        if i == 0 {
            vec![
                (return_exponent(2, 0, &[(0, m), (1, 1)]), GroundRing::one()),
                (return_exponent(2, 0, &[(0, m + 1)]), GroundRing::puncture(SLOT_B3, -1)),
            ]
        } else {
            vec![
                (return_exponent(2, 1, &[(1, m + 1), (0, -1)]), GroundRing::one()),
                (return_exponent(2, 1, &[(1, m)]), GroundRing::puncture(SLOT_B3, 1)),
            ]
        }
    }

    fn torus_matrix(&self) -> Arc<AntisymMatrix> {
        static M: OnceLock<Arc<AntisymMatrix>> = OnceLock::new();
        M.get_or_init(|| Arc::new(trace_matrix(2, &[(1, 0)]))).clone()
    }

    fn degree(&self, e: &[i64]) -> [i64; 3] {
        [e[0] + e[1], e[2] + e[3], e[3]]
    }
}

impl PantsModel for OneBoundary {
    fn pants_type(&self) -> PantsType {
        PantsType::P1
    }

    fn add_twice(&self, _i: usize, _n: &[i64]) -> i64 {
        0
    }

    fn parity_holds(&self, n: &[i64]) -> bool {
        n[0] % 2 == 0
    }

    fn arc_counts(&self, n: &[i64]) -> Vec<(Component, u64)> {
        if n[0] > 0 {
            vec![(Component::Return { boundary: 0, twist: 0 }, (n[0] / 2) as u64)]
        } else {
            Vec::new()
        }
    }

    fn return_arc_twists(&self, _i: usize) -> Vec<i64> {
        vec![1]
    }

    fn return_arc_trace(&self, _i: usize, m: i64) -> Vec<(Vec<i64>, GroundRing)> {
        let b2b3 = &GroundRing::puncture(SLOT_B2, 1) * &GroundRing::puncture(SLOT_B3, 1);
        vec![
            (return_exponent(1, 0, &[(0, m + 1)]), GroundRing::one()),
            (return_exponent(1, 0, &[(0, m)]), b2b3),
        ]
    }

    fn torus_matrix(&self) -> Arc<AntisymMatrix> {
        static M: OnceLock<Arc<AntisymMatrix>> = OnceLock::new();
        M.get_or_init(|| Arc::new(trace_matrix(1, &[]))).clone()
    }

    fn degree(&self, e: &[i64]) -> [i64; 3] {
        [e[0], e[1], 0]
    }
}
