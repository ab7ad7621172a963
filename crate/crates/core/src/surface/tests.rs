use proptest::prelude::*;

use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pants::{lambda_contains, PantsCoord};
use crate::qtorus::mono_mul;
use crate::ring::GroundRing;

fn gc(flat: &[i64]) -> GlobalCoord {
    GlobalCoord::from_flat(flat).unwrap()
}

#[test]
fn standard_data_have_the_expected_shape() {
    for (g, m) in [(0, 4), (0, 5), (0, 7), (1, 2), (1, 3), (2, 0), (2, 1), (2, 3), (3, 0), (3, 2)] {
        let d = standard_datum(g, m).unwrap();
        assert_eq!((d.genus(), d.punctures()), (g, m));
        assert_eq!(d.curves(), 3 * g + m - 3);
        assert_eq!(d.faces().len(), 2 * g + m - 2);
    }
    let sphere = standard_datum(0, 4).unwrap();
    assert!(sphere.faces().iter().all(|f| f.pants == PantsType::P1));
    let theta = standard_datum(2, 0).unwrap();
    assert!(theta.faces().iter().all(|f| f.pants == PantsType::P3));
    assert_eq!(theta.file().vertices, vec![vec![0, 1, 2], vec![3, 4, 5]]);
}

#[test]
fn excluded_surfaces_are_rejected() {
    for (g, m) in [(1, 0), (1, 1), (0, 0), (0, 3)] {
        assert_eq!(
            standard_datum(g, m).unwrap_err(),
            Error::ExcludedSurface { genus: g, punctures: m }
        );
    }
}

#[test]
fn corner_matrices() {
    assert_eq!(standard_datum(0, 4).unwrap().q_matrix().rows(), vec![vec![0]]);
    let theta = standard_datum(2, 0).unwrap();
    assert_eq!(
        theta.q_matrix().rows(),
        vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]
    );
    assert_eq!(standard_datum(1, 2).unwrap().q_matrix().rows(), vec![vec![0, 2], vec![-2, 0]]);
    assert_eq!(standard_datum(0, 5).unwrap().q_matrix().rows(), vec![vec![0, 1], vec![-1, 0]]);
}

#[test]
fn corner_matrix_agrees_with_face_tori() {
    for (g, m) in [(0, 4), (0, 6), (1, 2), (1, 4), (2, 0), (2, 2), (3, 1)] {
        let d = standard_datum(g, m).unwrap();
        assert_eq!(**d.q_matrix(), d.face_induced_matrix(), "({g}, {m})");
    }
}

#[test]
fn corner_matrix_ignores_rotation_at_a_vertex() {
    let d = standard_datum(2, 1).unwrap();
    let mut file = d.file().clone();
    for (around, slots) in file.vertices.iter_mut().zip(file.slots.iter_mut()) {
        around.rotate_left(1);
        slots.rotate_left(1);
    }
    let rotated = DtDatum::from_file(file).unwrap();
    assert_eq!(rotated.q_matrix(), d.q_matrix());
}

#[test]
fn symplectic_double() {
    let q = AntisymMatrix::zeros(1);
    assert_eq!(tilde_q(&q).rows(), vec![vec![0, 2], vec![-2, 0]]);
    let d = standard_datum(0, 5).unwrap();
    let (k, l) = (gc(&[2, 4, 1, -3]), gc(&[6, 2, 0, 5]));
    let expected = d.q_matrix().pairing(&k.n, &l.n).unwrap()
        + 2 * k.n.iter().zip(&l.t).map(|(a, b)| a * b).sum::<i64>()
        - 2 * l.n.iter().zip(&k.t).map(|(a, b)| a * b).sum::<i64>();
    assert_eq!(d.q_tilde().pairing(&k.flat(), &l.flat()).unwrap(), expected);
}

#[test]
fn monoid_examples() {
    let d = standard_datum(0, 4).unwrap();
    assert!(lambda_global(&d, &gc(&[2, 2])));
    assert!(!lambda_global(&d, &gc(&[1, 0])));
    assert!(!lambda_global(&d, &gc(&[0, -1])));
    assert!(lambda_global(&d, &gc(&[0, 0])));
}

#[test]
fn degree_vector() {
    assert_eq!(d_embed(&gc(&[2, 2])), vec![2, 2]);
    assert_eq!(d_embed(&gc(&[1, 3, 0, -1])), vec![4, -1, 0, 1]);
}

#[test]
fn face_split_examples() {
    let d = standard_datum(0, 4).unwrap();
    let split = face_split(&d, &gc(&[2, 2])).unwrap();
    assert_eq!(split.iter().map(PantsCoord::flat).collect::<Vec<_>>(), vec![vec![2, 1], vec![2, 1]]);
    let split = face_split(&d, &gc(&[2, 4])).unwrap();
    assert_eq!(split.iter().map(PantsCoord::flat).collect::<Vec<_>>(), vec![vec![2, 3], vec![2, 1]]);
    let other = face_split_with(&d, &gc(&[2, 4]), ResidualSide::DoublePrime).unwrap();
    assert_eq!(other.iter().map(PantsCoord::flat).collect::<Vec<_>>(), vec![vec![2, 1], vec![2, 3]]);
}

#[test]
fn phi_on_the_four_punctured_sphere() {
    let d = standard_datum(0, 4).unwrap();
    let v = phi_lead(&d, &gc(&[0, 1])).unwrap();
    assert_eq!(v.element.len(), 2);
    assert!(v.element.coefficient(&[0, -1]).unwrap().is_one());
    assert_eq!(v.lead.as_slice(), &[0, 1]);

    let v = phi_lead(&d, &gc(&[2, 2])).unwrap();
    assert!(v.lead_matches(&gc(&[2, 2])));
    assert_eq!(v.element.len(), 3);
    // Lower terms carry the puncture scalars of both faces.
    let middle = v.element.coefficient(&[2, 1]).unwrap();
    let expected = &(&GroundRing::puncture(0, 1) * &GroundRing::puncture(1, 1))
        + &(&GroundRing::puncture(2, 1) * &GroundRing::puncture(3, 1));
    assert_eq!(middle, &expected);
}

#[test]
fn graded_product_examples() {
    let d = standard_datum(0, 4).unwrap();
    let p = graded_mul(&d, &gc(&[2, 0]), &gc(&[0, 1])).unwrap();
    assert_eq!(p.half_pairing, 2);
    assert_eq!(p.sum, gc(&[2, 1]));
    assert_eq!(graded_mul(&d, &gc(&[2, 0]), &gc(&[0, 0])).unwrap().half_pairing, 0);
    assert_eq!(graded_mul(&d, &gc(&[2, 3]), &gc(&[2, 3])).unwrap().half_pairing, 0);
    let at_five = p.scalar_at(5).unwrap();
    assert_eq!(at_five, crate::ring::specialize(&crate::ring::HalfLaurent::q_power(2), 5).unwrap());
}

#[test]
fn datum_json_round_trip_is_bit_exact() {
    for (g, m) in [(0, 4), (1, 3), (2, 0), (2, 2)] {
        let d = standard_datum(g, m).unwrap();
        let text = d.to_json();
        let back = DtDatum::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.q_matrix(), d.q_matrix());
    }
}

#[test]
fn malformed_data_are_rejected() {
    let d = standard_datum(0, 5).unwrap();
    let mut bad = d.file().clone();
    bad.slots[1] = vec![1, 2, 3];
    assert!(DtDatum::from_file(bad).is_err());

    // Swapping b1 and b2 of the middle face breaks the curve-order condition.
    let mut swapped = d.file().clone();
    swapped.vertices[1].swap(0, 2);
    assert!(matches!(DtDatum::from_file(swapped), Err(Error::InvalidDatum(_))));

    let mut reused = d.file().clone();
    reused.legs[0] = reused.edges[0].half_edges[0];
    assert!(DtDatum::from_file(reused).is_err());

    assert!(matches!(DtDatum::from_json("{\"vertices\": 3}"), Err(Error::Parse(_))));
}

fn sample_member(d: &DtDatum, bound: i64, rng: &mut ChaCha8Rng) -> GlobalCoord {
    let r = d.curves();
    loop {
        let c = GlobalCoord::new(
            (0..r).map(|_| rng.gen_range(0..=bound)).collect(),
            (0..r).map(|_| rng.gen_range(-bound..=bound)).collect(),
        );
        if lambda_global(d, &c) {
            return c;
        }
    }
}

fn data() -> Vec<DtDatum> {
    [(0, 4), (0, 5), (1, 2), (2, 0), (2, 1)]
        .into_iter()
        .map(|(g, m)| standard_datum(g, m).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_leads_with_the_coordinate(idx in 0usize..5, seed in any::<u64>()) {
        let all = data();
        let d = &all[idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = sample_member(d, 3, &mut rng);
        let v = phi_lead(d, &c).unwrap();
        prop_assert!(v.lead_matches(&c), "{c}: lead {:?}", v.lead);
        let twin = phi_with(d, &c, ResidualSide::DoublePrime).unwrap();
        prop_assert_eq!(twin, v.element);
        for (f, pc) in face_split(d, &c).unwrap().iter().enumerate() {
            prop_assert!(lambda_contains(d.faces()[f].pants, pc));
        }
    }

    #[test]
    fn pairing_is_even_and_products_lead_correctly(idx in 0usize..5, seed in any::<u64>()) {
        let all = data();
        let d = &all[idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = sample_member(d, 2, &mut rng);
        let l = sample_member(d, 2, &mut rng);
        let g = graded_mul(d, &k, &l).unwrap();
        prop_assert!(lambda_global(d, &g.sum));
        let prod = phi(d, &k).unwrap().mul(&phi(d, &l).unwrap()).unwrap();
        let (lead, coeff) = prod.unique_lead(super::coords::d_embed_flat).unwrap();
        let top = mono_mul(d.q_tilde(), &k.flat(), &l.flat()).unwrap();
        prop_assert_eq!(lead.to_vec(), g.sum.flat());
        prop_assert_eq!(coeff, GroundRing::from_laurent(top.coefficient(&g.sum.flat()).unwrap().clone()));
    }

    #[test]
    fn degree_vector_is_injective(flat in prop::collection::vec(-20i64..20, 2..10)) {
        let mut flat = flat;
        if flat.len() % 2 == 1 {
            flat.pop();
        }
        let c = gc(&flat);
        let d = d_embed(&c);
        let r = c.curves();
        let n_last = d[0] - d[r + 1..].iter().sum::<i64>();
        let t_last = d[1] - d[2..r + 1].iter().sum::<i64>();
        prop_assert_eq!(n_last, c.n[r - 1]);
        prop_assert_eq!(t_last, c.t[r - 1]);
    }
}
