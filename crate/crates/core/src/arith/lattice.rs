//! Integer lattices in `Z^d`, kept in row-style Hermite normal form.

use serde::Serialize;

use crate::error::{Error, Result};

fn lattice_err(msg: impl Into<String>) -> Error {
    Error::Lattice(msg.into())
}

fn axpy(target: &mut [i128], factor: i128, source: &[i128]) {
    if factor == 0 {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t = t
            .checked_sub(factor.checked_mul(*s).expect("lattice arithmetic overflow"))
            .expect("lattice arithmetic overflow");
    }
}

/// Hermite normal form of the lattice spanned by `rows`: echelon rows with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(mut rows: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    let dim = rows.first().map_or(0, Vec::len);
    let mut p = 0;
    for col in 0..dim {
        while let Some(best) = (p..rows.len())
            .filter(|&i| rows[i][col] != 0)
            .min_by_key(|&i| rows[i][col].unsigned_abs())
        {
            rows.swap(p, best);
            let mut clean = true;
            for i in p + 1..rows.len() {
                let q = rows[i][col] / rows[p][col];
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], q, &head[p]);
                clean &= rows[i][col] == 0;
            }
            if clean {
                break;
            }
        }
        if p == rows.len() || rows[p][col] == 0 {
            continue;
        }
        if rows[p][col] < 0 {
            rows[p].iter_mut().for_each(|x| *x = -*x);
        }
        let pivot = rows[p][col];
        for i in 0..p {
            let q = rows[i][col].div_euclid(pivot);
            let (head, tail) = rows.split_at_mut(p);
            axpy(&mut head[i], q, &tail[0]);
        }
        p += 1;
    }
    rows.truncate(p);
    rows
}

/// Smith diagonalization `P·M·C = diag(d_0, d_1, …)` with `d_i | d_{i+1}`. Returns the
/// non-negative diagonal (length `min(rows, cols)`) and the unimodular column transform `C`.
pub fn smith_diagonal(m: &[Vec<i128>], cols: usize) -> (Vec<i128>, Vec<Vec<i128>>) {
    let rows = m.len();
    let mut a: Vec<Vec<i128>> = m.to_vec();
    // Column transform stored by columns: `ct[j]` is column j of C.
    let mut ct: Vec<Vec<i128>> = (0..cols)
        .map(|j| (0..cols).map(|i| i128::from(i == j)).collect())
        .collect();
    let col_axpy = |a: &mut Vec<Vec<i128>>, ct: &mut Vec<Vec<i128>>, j: usize, q: i128, t: usize| {
        for row in a.iter_mut() {
            row[j] -= q * row[t];
        }
        let src = ct[t].clone();
        axpy(&mut ct[j], q, &src);
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].unsigned_abs() < a[bi][bj].unsigned_abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                let diag = (0..steps).map(|k| a[k][k].abs()).collect();
                return (diag, transpose(&ct, cols));
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            ct.swap(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                let (head, tail) = a.split_at_mut(i);
                axpy(&mut tail[0], q, &head[t]);
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                col_axpy(&mut a, &mut ct, j, q, t);
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t];
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % pivot != 0));
            match offender {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    axpy(&mut head[t], -1, &tail[0]);
                }
                None => break,
            }
        }
    }
    let diag = (0..steps).map(|k| a[k][k].abs()).collect();
    (diag, transpose(&ct, cols))
}

fn transpose(columns: &[Vec<i128>], dim: usize) -> Vec<Vec<i128>> {
    (0..dim).map(|i| columns.iter().map(|c| c[i]).collect()).collect()
}

/// Basis of `{a ∈ Z^cols : M a ≡ 0 (mod modulus)}`.
pub fn congruence_solutions(m: &[Vec<i128>], cols: usize, modulus: i128) -> Vec<Vec<i128>> {
    assert!(modulus >= 1, "modulus must be positive");
    let (diag, c) = smith_diagonal(m, cols);
    // a = C b with b_i ∈ (modulus / gcd(modulus, d_i)) Z; columns past the diagonal are free.
    (0..cols)
        .map(|i| {
            let step = diag.get(i).map_or(1, |&d| modulus / gcd(modulus, d));
            (0..cols).map(|row| c[row][i] * step).collect()
        })
        .collect()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A lattice given by its Hermite-normal-form basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeBasis {
    ambient: usize,
    /// Basis vectors (the columns of the basis matrix), in Hermite normal form.
    vectors: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn from_generators(ambient: usize, generators: &[Vec<i128>]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: g.len(),
            });
        }
        let rows = hermite_rows(generators.to_vec());
        let vectors = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| lattice_err("entry exceeds i64"))).collect())
            .collect::<Result<_>>()?;
        Ok(Self { ambient, vectors })
    }

    pub fn full(ambient: usize) -> Self {
        let gens: Vec<Vec<i128>> = (0..ambient)
            .map(|i| (0..ambient).map(|j| i128::from(i == j)).collect())
            .collect();
        Self::from_generators(ambient, &gens).expect("identity basis")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient
    }

    fn wide(&self) -> Vec<Vec<i128>> {
        self.vectors.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect()
    }

    pub fn scaled(&self, k: i64) -> Self {
        let gens: Vec<Vec<i128>> = self.wide().into_iter().map(|v| v.into_iter().map(|x| x * k as i128).collect()).collect();
        Self::from_generators(self.ambient, &gens).expect("scaling preserves shape")
    }

    /// Coordinates of `v` in this basis, when `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i128]) -> Option<Vec<i128>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for b in self.wide() {
            let col = b.iter().position(|&x| x != 0).expect("nonzero basis vector");
            if rest[col] % b[col] != 0 {
                return None;
            }
            let x = rest[col] / b[col];
            axpy(&mut rest, x, &b);
            coords.push(x);
        }
        rest.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let wide: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        self.coordinates(&wide).is_some()
    }

    /// `|det|` of a full-rank basis.
    pub fn covolume(&self) -> Result<u128> {
        if !self.is_full_rank() {
            return Err(lattice_err("covolume of a lattice that is not full rank"));
        }
        Ok(self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| v[i].unsigned_abs() as u128)
            .product())
    }
}

/// `[sup : sub]`, the absolute determinant of the coordinates of `sub` in a basis of `sup`.
pub fn lattice_index(sub: &LatticeBasis, sup: &LatticeBasis) -> Result<u128> {
    if sub.ambient != sup.ambient {
        return Err(Error::DimensionMismatch {
            expected: sup.ambient,
            found: sub.ambient,
        });
    }
    if !sub.is_full_rank() || !sup.is_full_rank() {
        return Err(lattice_err("index requires full-rank lattices"));
    }
    let coords = sub
        .wide()
        .iter()
        .map(|v| sup.coordinates(v).ok_or_else(|| lattice_err(format!("{v:?} is not in the larger lattice"))))
        .collect::<Result<Vec<_>>>()?;
    let h = hermite_rows(coords);
    if h.len() != sup.rank() {
        return Err(lattice_err("coordinates are degenerate"));
    }
    Ok(h.iter().enumerate().map(|(i, r)| r[i].unsigned_abs()).product())
}
