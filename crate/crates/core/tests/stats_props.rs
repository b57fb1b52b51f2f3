mod common;

use common::*;
use proptest::prelude::*;
use shell_ergm::stats::{gof_compare_graphs, triangles, SummaryRecord};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn triangles_match_triple_scan(g in arb_graph_density(0, 12)) {
        prop_assert_eq!(triangles(&g), brute_triangles(&g));
    }
}

proptest! {
    #[test]
    fn summary_is_isomorphism_invariant((g, perm) in arb_graph_with_perm(3, 14)) {
        let a = SummaryRecord::from_graph(&g);
        let b = SummaryRecord::from_graph(&g.relabel(&perm));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn summary_vectors_sum_to_n(g in arb_graph_density(3, 14)) {
        let s = SummaryRecord::from_graph(&g);
        let n = g.n();
        prop_assert_eq!(s.degree_distribution.iter().sum::<usize>(), n);
        prop_assert_eq!(s.shell_distribution.iter().sum::<usize>(), n);
        prop_assert!(s.edges <= n * (n - 1) / 2);
        prop_assert!(s.triangles <= n * (n - 1) * (n - 2) / 6);
        prop_assert!((0.0..=1.0).contains(&s.centrality));
    }

    #[test]
    fn quantiles_are_monotone(
        observed in arb_graph_density(8, 8),
        samples in prop::collection::vec(arb_graph_density(8, 8), 1..40),
    ) {
        let report = gof_compare_graphs(&observed, &samples).unwrap();
        for s in &report.statistics {
            for w in s.quantiles.windows(2) {
                prop_assert!(w[0].0 < w[1].0);
                prop_assert!(w[0].1 <= w[1].1, "{}", s.name);
            }
            prop_assert!((0.0..=1.0).contains(&s.observed_quantile));
            prop_assert_eq!(s.histogram.iter().map(|b| b.count).sum::<usize>(), samples.len());
        }
        for b in report.degree_boxplots.iter().chain(&report.shell_boxplots) {
            prop_assert!(b.min <= b.q1 && b.q1 <= b.median && b.median <= b.q3 && b.q3 <= b.max);
        }
    }
}
