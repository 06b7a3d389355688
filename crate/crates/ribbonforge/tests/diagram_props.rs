use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ribbonforge::constructions::{annulus_lk_n, four_stick_lk1, pentagram_trefoil, regular_ngon, two_stick, Sign};
use ribbonforge::diagram_core::{
    fold_angles, interior_angles, is_convex, topological_type, validate, validate_with, ValidateOptions,
};
use ribbonforge::sampling::random_convex_polygon;

fn polygon(n: usize, seed: u64) -> ribbonforge::KnotDiagram {
    random_convex_polygon(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn convex_turns_sum_to_full_turn(n in 3usize..14, seed in any::<u64>()) {
        let d = polygon(n, seed);
        // signed turn is sign(a) * (pi - |a|)
        let turn: f64 = fold_angles(&d).unwrap().iter().map(|a| a.signum() * (PI - a.abs())).sum();
        prop_assert!((turn.abs() - 2.0 * PI).abs() < 1e-9, "{turn}");
        let rev: f64 = fold_angles(&d.reversed()).unwrap().iter().map(|a| a.signum() * (PI - a.abs())).sum();
        prop_assert!((rev + turn).abs() < 1e-9);
    }

    #[test]
    fn convex_interior_angle_sum(n in 3usize..14, seed in any::<u64>()) {
        let d = polygon(n, seed);
        let s: f64 = interior_angles(&d).unwrap().iter().sum();
        prop_assert!((s - (n as f64 - 2.0) * PI).abs() < 1e-9);
        prop_assert!(is_convex(&d).unwrap());
        prop_assert!(validate(&d).is_empty());
    }

    #[test]
    fn type_invariant_under_relabeling(n in 3usize..14, seed in any::<u64>(), k in 0usize..14) {
        let d = polygon(n, seed);
        let t = topological_type(&d).unwrap();
        prop_assert_eq!(topological_type(&d.rotated(k % n)).unwrap(), t);
        prop_assert_eq!(topological_type(&d.reversed()).unwrap(), t);
    }

    #[test]
    fn construction_types_invariant_under_relabeling(n in 1usize..12, k in 0usize..30, minus in any::<bool>()) {
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        let r = annulus_lk_n(n, sign, 1.0).unwrap();
        let d = &r.diagram;
        let t = topological_type(d).unwrap();
        prop_assert_eq!(topological_type(&d.rotated(k % d.len())).unwrap(), t);
        prop_assert_eq!(topological_type(&d.reversed()).unwrap(), t);
    }
}

#[test]
fn constructions_validate() {
    let lenient = ValidateOptions { strict_regular: false, ..ValidateOptions::default() };
    let mut all = vec![
        two_stick(1.0, 1.0).unwrap(),
        two_stick(0.01, 1.0).unwrap(),
        four_stick_lk1(Sign::Plus, 1.0).unwrap(),
        four_stick_lk1(Sign::Minus, 0.5).unwrap(),
        pentagram_trefoil(1.0).unwrap(),
    ];
    for n in 3..=12 {
        for k in ribbonforge::linking::enumerate_convex_linking(n).unwrap() {
            all.push(regular_ngon(n, k, 1.0).unwrap());
        }
    }
    for n in 1..=20 {
        all.push(annulus_lk_n(n, Sign::Plus, 1.0).unwrap());
        all.push(annulus_lk_n(n, Sign::Minus, 0.3).unwrap());
    }
    for r in &all {
        let v = validate_with(&r.diagram, lenient);
        assert!(v.is_empty(), "{:?}: {v:?}", r.kind);
    }
}
