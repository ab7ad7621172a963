use proptest::prelude::*;

use super::*;

fn coord(flat: &[i64], ty: PantsType) -> PantsCoord {
    PantsCoord::from_flat(ty, flat).unwrap()
}

#[test]
fn add_function_examples() {
    assert_eq!(add_fn(PantsType::P3, 1, &[2, 0, 0]).unwrap(), HalfInt::from_int(1));
    assert_eq!(add_fn(PantsType::P2, 0, &[0, 4]).unwrap(), HalfInt::from_int(-2));
    assert_eq!(add_fn(PantsType::P1, 0, &[6]).unwrap(), HalfInt::from_int(0));
    assert_eq!(add_fn(PantsType::P3, 1, &[1, 0, 0]).unwrap(), HalfInt::from_twice(1));
    assert!(add_fn(PantsType::P2, 2, &[0, 0]).is_err());
}

#[test]
fn membership_examples() {
    use PantsType::*;
    assert!(lambda_contains(P3, &coord(&[2, 0, 0, 5, 1, 0], P3)));
    assert!(!lambda_contains(P3, &coord(&[2, 0, 0, 5, 0, 0], P3)));
    assert!(lambda_contains(P2, &coord(&[0, 4, -2, 7], P2)));
    assert!(!lambda_contains(P2, &coord(&[0, 4, -3, 7], P2)));
    assert!(lambda_contains(P1, &coord(&[0, 3], P1)));
    assert!(!lambda_contains(P1, &coord(&[0, -1], P1)));
    assert!(!lambda_contains(P1, &coord(&[1, 0], P1)));
    assert!(!lambda_contains(P3, &coord(&[1, 1, 1, 0, 0, 0], P3)));
}

#[test]
fn twist_examples() {
    let ty = PantsType::P3;
    let c = coord(&[2, 0, 0, 0, 1, 0], ty);
    assert_eq!(twist_apply(ty, 0, &c).unwrap(), coord(&[2, 0, 0, 1, 1, 0], ty));
    assert_eq!(twist_apply(ty, 1, &c).unwrap(), c);
    let back = twist_by(ty, 0, &twist_apply(ty, 0, &c).unwrap(), -1).unwrap();
    assert_eq!(back, c);
}

#[test]
fn catalog_coordinates() {
    use PantsType::*;
    let a = |i, j| Component::Cross { ends: (i, j), twists: (0, 0) };
    let r = |i| Component::Return { boundary: i, twist: 0 };
    let l = |i| Component::Loop { boundary: i };
    assert_eq!(nu_of_component(P3, &r(0)).unwrap().flat(), vec![2, 0, 0, 0, 1, 0]);
    assert_eq!(nu_of_component(P3, &r(2)).unwrap().flat(), vec![0, 0, 2, 1, 0, 0]);
    assert_eq!(nu_of_component(P3, &a(1, 2)).unwrap().flat(), vec![0, 1, 1, 0, 0, 0]);
    assert_eq!(nu_of_component(P3, &l(1)).unwrap().flat(), vec![0, 0, 0, 0, 1, 0]);
    assert_eq!(nu_of_component(P2, &r(0)).unwrap().flat(), vec![2, 0, 0, 1]);
    assert_eq!(nu_of_component(P2, &r(1)).unwrap().flat(), vec![0, 2, -1, 1]);
    assert_eq!(nu_of_component(P2, &a(0, 1)).unwrap().flat(), vec![1, 1, 0, 0]);
    assert_eq!(nu_of_component(P1, &r(0)).unwrap().flat(), vec![2, 1]);
    assert_eq!(nu_of_component(P1, &l(0)).unwrap().flat(), vec![0, 1]);
    assert!(nu_of_component(P1, &a(0, 1)).is_err());
    assert!(nu_of_component(P2, &l(2)).is_err());
}

#[test]
fn decomposition_examples() {
    use PantsType::*;
    let spec = |component, multiplicity| ComponentSpec { component, multiplicity };
    assert_eq!(
        decompose(P1, &coord(&[4, 2], P1)).unwrap(),
        vec![spec(Component::Return { boundary: 0, twist: 0 }, 2)]
    );
    assert_eq!(
        decompose(P3, &coord(&[0, 0, 0, 1, 0, 2], P3)).unwrap(),
        vec![
            spec(Component::Loop { boundary: 0 }, 1),
            spec(Component::Loop { boundary: 2 }, 2)
        ]
    );
    assert_eq!(
        decompose(P2, &coord(&[0, 2, -1, 1], P2)).unwrap(),
        vec![spec(Component::Return { boundary: 1, twist: 0 }, 1)]
    );
    assert!(decompose(P3, &coord(&[2, 0, 0, 5, 0, 0], P3)).is_err());
}

#[test]
fn residual_twist_rides_on_one_carrier() {
    let ty = PantsType::P3;
    let parts = decompose(ty, &coord(&[3, 1, 2, 4, -1, 0], ty)).unwrap();
    let twisted: Vec<_> = parts
        .iter()
        .filter(|s| s.component != s.component.untwisted())
        .collect();
    assert!(twisted.iter().all(|s| s.multiplicity == 1));
    assert_eq!(nu_of_multiset(ty, &parts).unwrap(), coord(&[3, 1, 2, 4, -1, 0], ty));
}

#[test]
fn registry_resolves_every_type_by_name() {
    let reg = PantsRegistry::default();
    assert_eq!(reg.names().collect::<Vec<_>>(), vec!["P1", "P2", "P3"]);
    for ty in PantsType::ALL {
        assert_eq!(reg.get(ty.name()).unwrap().pants_type(), ty);
    }
    assert!(reg.get("P4").is_none());
}

fn member_strategy(ty: PantsType, bound: i64) -> impl Strategy<Value = PantsCoord> {
    let j = ty.boundaries();
    (
        prop::collection::vec(0..=bound, j),
        prop::collection::vec(-bound..=bound, j),
    )
        .prop_map(move |(n, t)| {
            let mut c = PantsCoord::new(n, t);
            let model = ty.model();
            if !model.parity_holds(&c.n) {
                c.n[0] += 1;
            }
            for i in 0..j {
                if c.n[i] == 0 {
                    let add = model.add_twice(i, &c.n);
                    let floor = (add + 1).div_euclid(2);
                    c.t[i] = c.t[i].max(floor);
                }
            }
            c
        })
}

fn any_type() -> impl Strategy<Value = PantsType> {
    prop::sample::select(PantsType::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn generated_coordinates_are_members((ty, c) in any_type().prop_flat_map(|ty| (Just(ty), member_strategy(ty, 8)))) {
        prop_assert!(lambda_contains(ty, &c));
    }

    #[test]
    fn decomposition_round_trips((ty, c) in any_type().prop_flat_map(|ty| (Just(ty), member_strategy(ty, 8)))) {
        let parts = decompose(ty, &c).unwrap();
        prop_assert_eq!(nu_of_multiset(ty, &parts).unwrap(), c);
    }

    #[test]
    fn monoid_is_closed((ty, a, b) in any_type().prop_flat_map(|ty| (Just(ty), member_strategy(ty, 8), member_strategy(ty, 8)))) {
        prop_assert!(lambda_contains(ty, &a.add(&b)));
    }

    #[test]
    fn twisting_preserves_membership(
        (ty, c, i) in any_type().prop_flat_map(|ty| (Just(ty), member_strategy(ty, 8), 0..ty.boundaries()))
    ) {
        let twisted = twist_apply(ty, i, &c).unwrap();
        prop_assert!(lambda_contains(ty, &twisted));
        prop_assert_eq!(twist_by(ty, i, &twisted, -1).unwrap(), c);
    }

    #[test]
    fn add_is_linear_off_the_three_holed_sphere(
        ty in prop::sample::select(vec![PantsType::P1, PantsType::P2]),
        a in prop::collection::vec(0i64..20, 2),
        b in prop::collection::vec(0i64..20, 2),
    ) {
        let j = ty.boundaries();
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).take(j).collect();
        for i in 0..j {
            let lhs = add_fn(ty, i, &sum).unwrap();
            let rhs = add_fn(ty, i, &a[..j]).unwrap() + add_fn(ty, i, &b[..j]).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn add_is_subadditive_on_the_three_holed_sphere(
        a in prop::collection::vec(0i64..20, 3),
        b in prop::collection::vec(0i64..20, 3),
    ) {
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        for i in 0..3 {
            let lhs = add_fn(PantsType::P3, i, &sum).unwrap();
            let rhs = add_fn(PantsType::P3, i, &a).unwrap() + add_fn(PantsType::P3, i, &b).unwrap();
            prop_assert!(lhs <= rhs);
        }
    }
}
