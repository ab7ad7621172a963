use super::{check_surface, DatumFile, DtDatum, EdgeSpec};
use crate::error::Result;

#[derive(Clone, Copy)]
enum Port {
    Curve(usize),
    Leg,
}

/// Assembles a datum from vertices given by their ports in slot order `b1, b2, b3`.
#[derive(Default)]
struct Builder {
    vertices: Vec<Vec<usize>>,
    slots: Vec<Vec<u8>>,
    ends: Vec<Vec<usize>>,
    legs: Vec<usize>,
    next_id: usize,
}

impl Builder {
    fn vertex(&mut self, b1: Port, b2: Port, b3: Port) {
        // Counterclockwise the slots read b1, b3, b2.
        let mut around = Vec::with_capacity(3);
        for port in [b1, b3, b2] {
            let h = self.next_id;
            self.next_id += 1;
            match port {
                Port::Curve(c) => {
                    if self.ends.len() <= c {
                        self.ends.resize(c + 1, Vec::new());
                    }
                    self.ends[c].push(h);
                }
                Port::Leg => self.legs.push(h),
            }
            around.push(h);
        }
        self.vertices.push(around);
        self.slots.push(vec![1, 3, 2]);
    }

    /// A three-holed vertex whose half-edges appear counterclockwise as `ccw`.
    fn core_vertex(&mut self, ccw: [usize; 3]) {
        self.vertex(Port::Curve(ccw[0]), Port::Curve(ccw[2]), Port::Curve(ccw[1]));
    }

    fn finish(self) -> Result<DtDatum> {
        let edges = self
            .ends
            .into_iter()
            .enumerate()
            .map(|(curve, ends)| EdgeSpec {
                curve,
                half_edges: [ends[0], ends[1]],
            })
            .collect();
        DtDatum::from_file(DatumFile {
            vertices: self.vertices,
            edges,
            legs: self.legs,
            slots: self.slots,
        })
    }
}

/// The standard decomposition of `Σ_{g,m}`.
///
/// * `g = 0`: a chain `P1 - c0 - P2 - c1 - … - P2 - c_{r-1} - P1`.
/// * `g = 1`: a cycle of `m` faces of type `P2`, curve `c_i` joining faces `i-1` and `i`.
/// * `g ≥ 2`: a cycle of `2g-2` three-holed faces with chords between faces `2i` and `2i+1`
///   (the theta graph for `g = 2`); the `m` punctured faces subdivide the cycle edge between the
///   first two core faces and their curves are numbered first.
///
/// Every two-holed face carries its lower-numbered curve at `b2`.
pub fn standard_datum(genus: usize, punctures: usize) -> Result<DtDatum> {
    check_surface(genus, punctures)?;
    let mut b = Builder::default();
    let m = punctures;
    match genus {
        0 => {
            let r = m - 3;
            b.vertex(Port::Curve(0), Port::Leg, Port::Leg);
            for i in 1..r {
                b.vertex(Port::Curve(i), Port::Curve(i - 1), Port::Leg);
            }
            b.vertex(Port::Curve(r - 1), Port::Leg, Port::Leg);
        }
        1 => {
            for i in 0..m {
                let (a, c) = (i, (i + 1) % m);
                b.vertex(Port::Curve(a.max(c)), Port::Curve(a.min(c)), Port::Leg);
            }
        }
        g => {
            let core = 2 * g - 2;
            // Curve ids: chain curves 0..=m replace cycle edge 0 when m > 0.
            let chain = if m > 0 { m + 1 } else { 1 };
            let cycle_edge = |i: usize| if i == 0 { 0 } else { chain + i - 1 };
            let chord = |i: usize| chain + core - 1 + i;
            let first_end = 0;
            let last_end = chain - 1;
            for v in 0..core {
                let out_edge = if v == 0 { first_end } else { cycle_edge(v) };
                let in_idx = (v + core - 1) % core;
                let in_edge = if in_idx == 0 { last_end } else { cycle_edge(in_idx) };
                let chord_edge = chord(v / 2);
                let ccw = if v % 2 == 0 {
                    [out_edge, in_edge, chord_edge]
                } else {
                    [in_edge, out_edge, chord_edge]
                };
                b.core_vertex(ccw);
            }
            for i in 0..m {
                b.vertex(Port::Curve(i + 1), Port::Curve(i), Port::Leg);
            }
        }
    }
    b.finish()
}
