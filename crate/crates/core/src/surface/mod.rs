//! Pants decompositions of a punctured surface, presented by their dual
//! trivalent fatgraph, and the global coordinates built from them.
//!
//! Conventions:
//! * cyclic orders at vertices are counterclockwise;
//! * slots `b1, b2, b3` of every face run clockwise, so a vertex listing its
//!   half-edges counterclockwise sees slots in the cyclic order `(1, 3, 2)`;
//! * curves, vertices, half-edges and punctures are numbered from 0, slots from 1.

mod coords;
mod phi;
mod standard;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pants::PantsType;
use crate::qtorus::AntisymMatrix;

pub use coords::{
    d_embed, face_n, face_split, face_split_with, lambda_global, lambda_global_violation, GlobalCoord,
    ResidualSide,
};
pub use phi::{graded_mul, phi, phi_lead, phi_with, GradedProduct, PhiValue};
pub use standard::standard_datum;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub curve: usize,
    pub half_edges: [usize; 2],
}

/// On-disk form of a datum. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    /// Half-edge ids around each vertex, counterclockwise.
    pub vertices: Vec<Vec<usize>>,
    pub edges: Vec<EdgeSpec>,
    pub legs: Vec<usize>,
    /// `slots[v][k]` is the slot (1..=3) of half-edge `vertices[v][k]`.
    pub slots: Vec<Vec<u8>>,
}

/// A face of the decomposition: one pair of pants at one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub vertex: usize,
    pub pants: PantsType,
    /// Curve glued to each boundary slot `b1..b_j`.
    pub boundary_curves: Vec<usize>,
    /// Puncture at each remaining slot `b_{j+1}..b3`.
    pub punctures: Vec<usize>,
}

/// Where a curve meets a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Lift {
    /// 0-based slot.
    pub slot: usize,
    pub face: usize,
}

/// A validated pants decomposition with its dual graph.
#[derive(Clone, Debug)]
pub struct DtDatum {
    file: DatumFile,
    genus: usize,
    punctures: usize,
    faces: Vec<Face>,
    lifts: Vec<[Lift; 2]>,
    q: Arc<AntisymMatrix>,
    q_tilde: Arc<AntisymMatrix>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidDatum(msg.into())
}

/// Excluded surfaces have no pants decomposition of the required kind.
pub fn check_surface(genus: usize, punctures: usize) -> Result<()> {
    let excluded = (genus == 0 && punctures <= 3) || (genus == 1 && punctures <= 1);
    if excluded {
        Err(Error::ExcludedSurface { genus, punctures })
    } else {
        Ok(())
    }
}

impl DtDatum {
    pub fn from_file(file: DatumFile) -> Result<Self> {
        let vcount = file.vertices.len();
        if file.slots.len() != vcount {
            return Err(invalid("one slot list per vertex is required"));
        }
        let hcount = 3 * vcount;
        let mut seen_id = vec![false; hcount];
        for (v, around) in file.vertices.iter().enumerate() {
            if around.len() != 3 {
                return Err(invalid(format!("vertex {v} is not trivalent")));
            }
            for &h in around {
                if h >= hcount || seen_id[h] {
                    return Err(invalid(format!("half-edge id {h} is out of range or repeated")));
                }
                seen_id[h] = true;
            }
        }

        let mut used = vec![false; hcount];
        for &h in file.edges.iter().flat_map(|e| e.half_edges.iter()).chain(&file.legs) {
            if h >= hcount || used[h] {
                return Err(invalid(format!("half-edge {h} is unknown or used twice")));
            }
            used[h] = true;
        }
        if used.iter().any(|u| !u) {
            return Err(invalid("every half-edge must belong to an edge or a leg"));
        }
        let r = file.edges.len();
        let curves: BTreeSet<usize> = file.edges.iter().map(|e| e.curve).collect();
        if curves.len() != r || curves.iter().next_back().is_some_and(|&c| c != r - 1) {
            return Err(invalid("curve indices must be 0..r, each used once"));
        }
        if r == 0 {
            return Err(invalid("the decomposition needs at least one curve"));
        }

        // Role of each half-edge: Some(curve) or None for a leg.
        let mut role: Vec<Option<usize>> = vec![None; hcount];
        for e in &file.edges {
            for &h in &e.half_edges {
                role[h] = Some(e.curve);
            }
        }
        let leg_index = |h: usize| file.legs.iter().position(|&l| l == h);

        let mut faces = Vec::with_capacity(vcount);
        for (v, around) in file.vertices.iter().enumerate() {
            let slots = &file.slots[v];
            let mut sorted = slots.clone();
            sorted.sort_unstable();
            if sorted != [1, 2, 3] {
                return Err(invalid(format!("vertex {v}: slots must be a permutation of 1, 2, 3")));
            }
            for k in 0..3 {
                // Counterclockwise successor of slot s must be slot s - 1 (cyclically).
                let expected = if slots[k] == 1 { 3 } else { slots[k] - 1 };
                if slots[(k + 1) % 3] != expected {
                    return Err(invalid(format!("vertex {v}: slots b1, b2, b3 must run clockwise")));
                }
            }
            let mut by_slot = [0usize; 3];
            for k in 0..3 {
                by_slot[slots[k] as usize - 1] = around[k];
            }
            let legs = by_slot.iter().filter(|&&h| role[h].is_none()).count();
            let pants = PantsType::from_boundaries(3 - legs)
                .ok_or_else(|| invalid(format!("vertex {v} has three legs")))?;
            let j = pants.boundaries();
            if by_slot[..j].iter().any(|&h| role[h].is_none()) {
                return Err(invalid(format!("vertex {v}: legs must occupy the last slots")));
            }
            let boundary_curves: Vec<usize> = by_slot[..j].iter().map(|&h| role[h].expect("curve")).collect();
            if pants == PantsType::P2 && boundary_curves[1] >= boundary_curves[0] {
                return Err(invalid(format!(
                    "vertex {v}: the curve at b2 must precede the curve at b1 (found c{} at b2, c{} at b1)",
                    boundary_curves[1], boundary_curves[0]
                )));
            }
            let punctures = by_slot[j..].iter().map(|&h| leg_index(h).expect("leg")).collect();
            faces.push(Face {
                vertex: v,
                pants,
                boundary_curves,
                punctures,
            });
        }

        let mut lifts = vec![Vec::with_capacity(2); r];
        for (f, face) in faces.iter().enumerate() {
            for (slot, &c) in face.boundary_curves.iter().enumerate() {
                lifts[c].push(Lift { slot, face: f });
            }
        }
        let lifts: Vec<[Lift; 2]> = lifts
            .into_iter()
            .map(|mut l| {
                l.sort();
                [l[0], l[1]]
            })
            .collect();

        // Connectivity over curves.
        let mut seen = vec![false; vcount];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &h in &file.vertices[v] {
                if let Some(c) = role[h] {
                    for l in lifts[c] {
                        let w = faces[l.face].vertex;
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(invalid("the dual graph is disconnected"));
        }

        let genus = r + 1 - vcount;
        let punctures = file.legs.len();
        check_surface(genus, punctures)?;

        let q = Arc::new(corner_matrix(&file, &role, r));
        let q_tilde = Arc::new(tilde_q(&q));
        Ok(Self {
            file,
            genus,
            punctures,
            faces,
            lifts,
            q,
            q_tilde,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DatumFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(file)
    }

    /// Canonical JSON text; `from_json(to_json())` reproduces the datum and the same text.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.file).expect("datum serializes");
        text.push('\n');
        text
    }

    pub fn file(&self) -> &DatumFile {
        &self.file
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    /// Number of curves `r = 3g - 3 + m`.
    pub fn curves(&self) -> usize {
        self.lifts.len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// The two sides of a curve, `c′` first: smaller slot, then smaller face.
    pub fn lifts(&self, curve: usize) -> [Lift; 2] {
        self.lifts[curve]
    }

    pub fn q_matrix(&self) -> &Arc<AntisymMatrix> {
        &self.q
    }

    pub fn q_tilde(&self) -> &Arc<AntisymMatrix> {
        &self.q_tilde
    }

    /// For each vertex, the number of times each curve is incident to it.
    pub fn incidence(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.curves()]; self.faces.len()];
        for (f, face) in self.faces.iter().enumerate() {
            for &c in &face.boundary_curves {
                out[f][c] += 1;
            }
        }
        out
    }

    /// The matrix induced by the face trace tori: `Σ_faces Q_face(slot(a), slot(c))` over the
    /// x-generators. Agrees with [`q_matrix`](Self::q_matrix) under the slot convention.
    pub fn face_induced_matrix(&self) -> AntisymMatrix {
        let r = self.curves();
        let mut m = AntisymMatrix::zeros(r);
        let mut acc = vec![vec![0i64; r]; r];
        for face in &self.faces {
            let local = face.pants.model().torus_matrix();
            for (s1, &a) in face.boundary_curves.iter().enumerate() {
                for (s2, &c) in face.boundary_curves.iter().enumerate() {
                    acc[a][c] += local.get(s1, s2);
                }
            }
        }
        for a in 0..r {
            for c in a + 1..r {
                m.set_pair(a, c, acc[a][c]);
            }
        }
        m
    }
}

/// `Q(a, c)`: +1 for each corner where a half-edge of `a` is the clockwise neighbour of a half-edge
/// of `c`, -1 for the counterclockwise neighbour.
fn corner_matrix(file: &DatumFile, role: &[Option<usize>], r: usize) -> AntisymMatrix {
    let mut acc = vec![vec![0i64; r]; r];
    for around in &file.vertices {
        for k in 0..3 {
            let h = around[k];
            let ccw_next = around[(k + 1) % 3];
            // `h` is the clockwise neighbour of `ccw_next`.
            if let (Some(a), Some(c)) = (role[h], role[ccw_next]) {
                acc[a][c] += 1;
                acc[c][a] -= 1;
            }
        }
    }
    let mut m = AntisymMatrix::zeros(r);
    for a in 0..r {
        for c in a + 1..r {
            m.set_pair(a, c, acc[a][c]);
        }
    }
    m
}

/// `Q̃ = [[Q, 2I], [-2I, 0]]`, so `⟨(n,t),(n',t')⟩ = ⟨n,n'⟩_Q + 2 n·t' - 2 n'·t`.
pub fn tilde_q(q: &AntisymMatrix) -> AntisymMatrix {
    let r = q.dim();
    let mut m = AntisymMatrix::zeros(2 * r);
    for a in 0..r {
        for c in a + 1..r {
            m.set_pair(a, c, q.get(a, c));
        }
        m.set_pair(a, r + a, 2);
    }
    m
}

#[cfg(test)]
mod tests;
