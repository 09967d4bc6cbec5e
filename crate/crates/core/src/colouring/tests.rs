use super::*;
use crate::rat::Rat;

fn adhoc() -> Provenance {
    Provenance::Adhoc {
        note: "test".into(),
    }
}

#[test]
fn colour_map_validation() {
    assert!(matches!(
        PeriodicColouring::new(2, 2, vec![0, 1, 0], adhoc()),
        Err(ColouringError::BadColourMap { expected: 4, got: 3 })
    ));
    assert!(matches!(
        PeriodicColouring::new(1, 3, vec![0, 2, 0], adhoc()),
        Err(ColouringError::NonContiguousColours)
    ));
}

#[test]
fn rounding_rule() {
    // Parity colouring of the line with period 2.
    let c = PeriodicColouring::new(1, 2, vec![0, 1], adhoc()).unwrap();
    let at = |num: i64, den: i64| {
        c.colour_real_point(&Point::new(vec![Rat::new(num, den)]))
            .unwrap()
    };
    assert_eq!(at(3, 2), 1); // floor 1
    assert_eq!(at(4, 1), 0); // integers map to themselves
    assert_eq!(at(-1, 2), 1); // floor(-1/2) = -1 = 1 mod 2
}

#[test]
fn rounding_rule_two_dimensional() {
    let c = PeriodicColouring::new(2, 3, (0..9).collect(), adhoc()).unwrap();
    let x = Point::new(vec![Rat::new(3, 2), Rat::zero()]);
    assert_eq!(c.colour_real_point(&x).unwrap(), c.colour_at(&[1, 0]));
    assert!(matches!(
        c.colour_real_point(&Point::ints(&[1])),
        Err(ColouringError::DimensionMismatch { .. })
    ));
}

#[test]
fn monochromatic_pairs_survive_rounding() {
    // If two rational points with integral coordinate differences are
    // monochromatic, their floors are the same-coloured integer points at
    // the same distance.
    let (colouring, _) = periodic_colouring_for_baton(&Baton::unit(2), 3, 2, 0, 100).unwrap();
    let offsets = [Rat::new(1, 3), Rat::new(2, 5)];
    for ax in 0..3i64 {
        for ay in 0..3i64 {
            for bx in 0..3i64 {
                for by in 0..3i64 {
                    let a = Point::new(vec![
                        Rat::int(ax) + &offsets[0],
                        Rat::int(ay) + &offsets[1],
                    ]);
                    let b = Point::new(vec![
                        Rat::int(bx) + &offsets[0],
                        Rat::int(by) + &offsets[1],
                    ]);
                    let ca = colouring.colour_real_point(&a).unwrap();
                    let cb = colouring.colour_real_point(&b).unwrap();
                    assert_eq!(ca, colouring.colour_at(&[ax, ay]));
                    assert_eq!(cb, colouring.colour_at(&[bx, by]));
                    let d_real = crate::geometry::linf_distance(&a, &b).unwrap();
                    let d_floor =
                        crate::geometry::linf_distance(&Point::ints(&[ax, ay]), &Point::ints(&[bx, by]))
                            .unwrap();
                    assert_eq!(d_real, d_floor);
                }
            }
        }
    }
}

#[test]
fn non_integral_forbidden_rejected() {
    let c = PeriodicColouring::new(1, 2, vec![0, 1], adhoc()).unwrap();
    let half = Baton::uniform(1, Rat::new(1, 2)).unwrap();
    assert!(matches!(
        verify_colouring(&c, &ForbiddenSpace::Baton(half)),
        Err(ColouringError::NonIntegralForbidden)
    ));
}

#[test]
fn verifier_catches_violations_against_products() {
    // One colour on period 2 in the plane: the 4-point unit simplex is
    // monochromatic.
    let all_one = PeriodicColouring::new(2, 2, vec![0; 4], adhoc()).unwrap();
    let simplex = ForbiddenSpace::Product(
        crate::products::ProductSpace::power(Baton::unit(1), 2).unwrap(),
    );
    match verify_colouring(&all_one, &simplex).unwrap() {
        Verdict::Violation { points, .. } => assert_eq!(points.len(), 4),
        Verdict::Proper => panic!("expected a violation"),
    }
}

#[test]
fn verifier_accepts_parity_colouring_against_pairs() {
    // 2^n parity classes against the two-point space.
    let colours: Vec<u32> = (0..4).collect();
    let c = PeriodicColouring::new(2, 2, colours, adhoc()).unwrap();
    assert!(verify_colouring(&c, &ForbiddenSpace::Baton(Baton::unit(1)))
        .unwrap()
        .is_proper());
}

#[test]
fn verdict_is_deterministic_across_modes() {
    let all_one = PeriodicColouring::new(2, 3, vec![0; 9], adhoc()).unwrap();
    let f = ForbiddenSpace::Baton(Baton::unit(2));
    let par = verify_colouring(&all_one, &f).unwrap();
    let guard = crate::exec::force_sequential();
    let seq = verify_colouring(&all_one, &f).unwrap();
    drop(guard);
    assert_eq!(par, seq);
}

#[test]
fn colouring_serde_round_trip() {
    let (colouring, _) = periodic_colouring_for_baton(&Baton::unit(2), 3, 2, 0, 100).unwrap();
    let json = serde_json::to_string(&colouring).unwrap();
    let back: PeriodicColouring = serde_json::from_str(&json).unwrap();
    assert_eq!(back, colouring);
    assert!(json.contains("\"provenance\""));
    // Tampering with the count is caught on deserialize.
    let bad = json.replace("\"count\":", "\"count\":9");
    assert!(serde_json::from_str::<PeriodicColouring>(&bad).is_err());
}
