use divzeta::exppair::*;
use divzeta::scan::write_frontier_csv;
use num_traits::One;

const GOLDEN: &str = include_str!("golden/frontier_depth10.csv");

#[test]
fn depth_ten_frontier_matches_golden_file() {
    let out = search_optimal(10, Objective::ThetaDiv).unwrap();
    let mut buf = Vec::new();
    write_frontier_csv(&out.frontier, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), GOLDEN);
}

#[test]
fn depth_ten_optimum() {
    let out = search_optimal(10, Objective::ThetaDiv).unwrap();
    assert_eq!(out.best.theta_div, ratio(229, 696));
    assert!(out.best.theta_div < ratio(27, 82));
    assert_eq!(out.best.pair.seed(), "classical");
    assert_eq!(out.best.pair.word_string(), "ABAABAAAB");
    // replaying the word reproduces the pair
    let mut p = seed_pairs().into_iter().find(|s| s.seed() == "classical").unwrap();
    for &step in out.best.pair.word() {
        p = p.apply(step).unwrap();
    }
    assert_eq!(p, out.best.pair);
}

#[test]
fn best_is_monotone_in_depth() {
    for objective in [Objective::ThetaDiv, Objective::ThetaZeta] {
        let out = search_optimal(12, objective).unwrap();
        assert!(out.best_by_depth.windows(2).all(|w| w[1] <= w[0]));
        for d in 0..=12 {
            let shallow = search_optimal(d, objective).unwrap();
            assert_eq!(shallow.best_by_depth.last().unwrap(), &out.best_by_depth[d]);
        }
    }
}

#[test]
fn zeta_objective_picks_the_same_pair() {
    // theta_zeta is exactly half of theta_div, so both objectives agree
    let a = search_optimal(10, Objective::ThetaDiv).unwrap();
    let b = search_optimal(10, Objective::ThetaZeta).unwrap();
    assert_eq!(a.best.pair, b.best.pair);
    assert_eq!(&a.best.theta_div / ratio(2, 1), b.best.theta_zeta);
}

#[test]
fn reachable_set_to_depth_twelve_is_admissible() {
    let all = reachable(&seed_pairs(), 12).unwrap();
    let half = ratio(1, 2);
    for p in &all {
        assert!(*p.kappa() >= ratio(0, 1) && *p.kappa() <= half, "{p:?}");
        assert!(*p.lambda() >= half && *p.lambda() <= num_rational::BigRational::one(), "{p:?}");
        assert!(p.kappa() + p.lambda() > half);
        assert!(p.word().len() <= 12);
    }
}

#[test]
fn hypothetical_lindelof_seed_is_absorbing_under_b() {
    let l = lindelof_pair();
    let b = l.apply_b().unwrap();
    assert_eq!((b.kappa().clone(), b.lambda().clone()), (ratio(0, 1), ratio(1, 2)));
    let out = search_from(&[l], 6, Objective::ThetaDiv).unwrap();
    assert_eq!(out.best.theta_div, ratio(1, 4));
}
