mod common;

use common::{cnf_strategy, count_models};
use hcs_core::cnf::{base_features, reduce_width, render_dimacs, Cnf, Origin};
use hcs_core::{parse_dimacs, ParseOptions};
use proptest::prelude::*;

/// Which assignments of the first `n` variables extend to a model.
fn projected_models(cnf: &Cnf, n: usize) -> Vec<bool> {
    let total = cnf.num_vars;
    let mut seen = vec![false; 1 << n];
    for bits in 0u64..1 << total {
        let a: Vec<bool> = (0..total).map(|i| bits >> i & 1 == 1).collect();
        if cnf.is_satisfied_by(&a) {
            seen[(bits & ((1 << n) - 1)) as usize] = true;
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn render_then_parse_is_identity(f in cnf_strategy(30, 40, 6)) {
        for strict in [false, true] {
            let back = parse_dimacs(render_dimacs(&f).as_bytes(), ParseOptions { strict }).unwrap();
            prop_assert_eq!(back.num_vars, f.num_vars);
            prop_assert_eq!(&back.clauses, &f.clauses);
            prop_assert_eq!(back.origin, Origin::Parsed);
        }
    }

    #[test]
    fn occurrences_match_dv_mean(f in cnf_strategy(20, 30, 5)) {
        let base = base_features(&f).unwrap();
        let total: usize = f.clauses.iter().map(|c| c.width()).sum();
        prop_assert_eq!(base.total_occurrences, total as u64);
        prop_assert!((base.dv_mean * f.num_vars as f64 - total as f64).abs() < 1e-9);
        prop_assert!(base.dv_variance >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn width_reduction_preserves_projected_models(f in cnf_strategy(6, 4, 6)) {
        let narrow = reduce_width(&f, 3).unwrap();
        prop_assert!(narrow.max_width() <= 3);
        prop_assume!(narrow.num_vars <= 12);
        prop_assert_eq!(projected_models(&narrow, f.num_vars), projected_models(&f, f.num_vars));
        if f.max_width() <= 3 {
            prop_assert_eq!(&narrow.clauses, &f.clauses);
            prop_assert_eq!(count_models(&narrow), count_models(&f));
        }
    }
}
