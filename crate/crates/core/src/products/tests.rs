use super::*;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn formula_values() {
    assert_eq!(bkm_alpha_formula(2, 1, 3).unwrap(), big(8));
    assert_eq!(bkm_alpha_formula(2, 2, 2).unwrap(), big(8));
    assert_eq!(bkm_alpha_formula(3, 2, 3).unwrap(), big(54));
    assert_eq!(bkm_alpha_formula(1, 1, 1).unwrap_err(), ProductsError::KTooSmall);
}

#[test]
fn degenerate_values() {
    assert_eq!(bkm_alpha_degenerate(2, 3).unwrap(), big(3));
    assert_eq!(bkm_alpha_degenerate(1, 1).unwrap(), big(1));
    assert_eq!(bkm_alpha_degenerate(5, 2).unwrap(), big(4));
}

#[test]
fn witness_shapes() {
    let w = bkm_witness(2, 2, 2).unwrap();
    assert_eq!(w.len(), 8);
    assert!(!w.contains(&[1, 1]));

    let w = bkm_witness(2, 1, 1).unwrap();
    assert_eq!(w.member_vec(), vec![vec![0], vec![2]]);

    let w = bkm_witness(3, 1, 2).unwrap();
    assert_eq!(w.len(), 9);
    assert!(w.members().all(|p| !p.contains(&1)));
}

#[test]
fn witness_size_matches_formula() {
    for (k, m, n) in [(2u32, 1u32, 2u32), (2, 2, 2), (3, 1, 2), (2, 2, 3), (3, 2, 2)] {
        let w = bkm_witness(k, m, n).unwrap();
        let f = bkm_alpha_formula(k, m, n).unwrap();
        assert_eq!(big(w.len() as u64), f, "k={k} m={m} n={n}");
    }
}

#[test]
fn witness_is_free_of_the_forbidden_power() {
    for (k, m, n) in [(2u32, 1u32, 2u32), (2, 2, 2), (3, 1, 2)] {
        let w = bkm_witness(k, m, n).unwrap();
        let forbidden = ProductSpace::power(Baton::unit(k as usize), m as usize).unwrap();
        let target = DistMatrix::from_points(&forbidden.points());
        let domain = DistMatrix::from_points(&w.points());
        let copies = search::embed::unordered_copies(&target, &domain);
        assert!(copies.is_empty(), "k={k} m={m} n={n}");
    }
}

#[test]
fn brute_alpha_unit_square_against_progression() {
    let domain = BruteDomain::Grid(GridSet::full_box(vec![3, 3]));
    let forbidden = ProductSpace::single(Baton::unit(2));
    let out = brute_alpha(&domain, &forbidden, 1 << 24).unwrap();
    assert!(out.optimal);
    assert_eq!(out.size, 4);
}

#[test]
fn brute_alpha_matches_formula_small() {
    let domain = BruteDomain::Grid(GridSet::full_box(vec![3, 3]));
    let forbidden = ProductSpace::power(Baton::unit(2), 2).unwrap();
    let out = brute_alpha(&domain, &forbidden, 1 << 24).unwrap();
    assert!(out.optimal);
    assert_eq!(big(out.size), bkm_alpha_formula(2, 2, 2).unwrap());
}

#[test]
fn brute_alpha_two_cube_unit_pairs() {
    // Any two points at distance 1 in {0,1}^2 host the two-point space.
    let domain = BruteDomain::Grid(GridSet::full_box(vec![2, 2]));
    let forbidden = ProductSpace::single(Baton::unit(1));
    let out = brute_alpha(&domain, &forbidden, 1 << 20).unwrap();
    assert!(out.optimal);
    assert_eq!(out.size, 1);
}

#[test]
fn alpha_power_examples() {
    let xs: Vec<Rat> = (1..=3).map(Rat::int).collect();
    assert_eq!(alpha_power(&xs, &Baton::unit(2), 2).unwrap(), big(4));

    let single = vec![Rat::int(1)];
    assert_eq!(alpha_power(&single, &Baton::unit(2), 5).unwrap(), big(1));

    let xs7: Vec<Rat> = (1..=7).map(Rat::int).collect();
    let b = Baton::unit(2);
    assert_eq!(alpha_power(&xs7, &b, 3).unwrap(), big(125));
}

#[test]
fn alpha_power_non_interval_set() {
    // X = {0, 1/2, 1, 3/2}: the half-step progression of three points fits
    // twice; exhaustive route.
    let xs: Vec<Rat> = vec![Rat::zero(), Rat::new(1, 2), Rat::one(), Rat::new(3, 2)];
    let b = Baton::uniform(2, Rat::new(1, 2)).unwrap();
    let alpha = alpha_power(&xs, &b, 1).unwrap();
    assert_eq!(alpha, big(3));
}

#[test]
fn alpha_power_matches_brute_on_squares() {
    for xs_max in [3i64, 4] {
        let xs: Vec<Rat> = (1..=xs_max).map(Rat::int).collect();
        for baton in [Baton::unit(1), Baton::unit(2)] {
            for n in [1u32, 2] {
                let formula = alpha_power(&xs, &baton, n).unwrap();
                let grid = GridSet::full_box(vec![xs_max as u32; n as usize]);
                let out = brute_alpha(
                    &BruteDomain::Grid(grid),
                    &ProductSpace::single(baton.clone()),
                    1 << 24,
                )
                .unwrap();
                assert!(out.optimal);
                assert_eq!(formula, big(out.size).pow(1), "X=[{xs_max}] n={n}");
            }
        }
    }
}

#[test]
fn k2t_reports() {
    for (k, m, n) in [(2u32, 1u32, 1u32), (2, 1, 2), (2, 2, 2), (3, 1, 2)] {
        let r = check_k2t(k, m, n, None).unwrap();
        assert!(r.passed(), "k={k} m={m} n={n}: {:?}", r.first_violation);
        assert!(r.isometries_checked > 0);
    }
}

#[test]
fn k2t_rejects_extreme_t() {
    assert!(matches!(
        check_k2t(2, 1, 1, Some(0)),
        Err(ProductsError::InvalidT { .. })
    ));
    assert!(matches!(
        check_k2t(2, 1, 1, Some(2)),
        Err(ProductsError::InvalidT { .. })
    ));
    assert!(check_k2t(3, 1, 1, Some(1)).unwrap().passed());
}

#[test]
fn degenerate_formula_matches_brute() {
    for n in 1..=3u32 {
        for m in 1..=3u32 {
            let domain = BruteDomain::Grid(GridSet::full_box(vec![2; n as usize]));
            let forbidden = ProductSpace::power(Baton::unit(1), m as usize).unwrap();
            let out = brute_alpha(&domain, &forbidden, 1 << 24).unwrap();
            assert!(out.optimal);
            assert_eq!(big(out.size), bkm_alpha_degenerate(m, n).unwrap(), "m={m} n={n}");
        }
    }
}

#[test]
fn product_serde_shape() {
    let p = ProductSpace::new(vec![Baton::unit(1), Baton::unit(2)]).unwrap();
    let json = serde_json::to_string(&p).unwrap();
    assert_eq!(json, r#"{"factors":[{"gaps":["1"]},{"gaps":["1","1"]}]}"#);
    let back: ProductSpace = serde_json::from_str(&json).unwrap();
    assert_eq!(back, p);
}

#[test]
fn oracle_equivalence_over_small_parameters() {
    for (k, m, n) in [
        (2u32, 1u32, 1u32),
        (2, 1, 2),
        (2, 2, 2),
        (2, 1, 3),
        (2, 2, 3),
        (3, 1, 1),
        (3, 1, 2),
        (3, 2, 2),
    ] {
        let domain = BruteDomain::Grid(GridSet::full_box(vec![k + 1; n as usize]));
        let forbidden = ProductSpace::power(Baton::unit(k as usize), m as usize).unwrap();
        let out = brute_alpha(&domain, &forbidden, 1 << 28).unwrap();
        assert!(out.optimal, "k={k} m={m} n={n}");
        assert_eq!(
            big(out.size),
            bkm_alpha_formula(k, m, n).unwrap(),
            "k={k} m={m} n={n}"
        );
    }
}
