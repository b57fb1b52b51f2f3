mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use shell_ergm::cores::shell_distribution;
use shell_ergm::mcmc::{accept_prob, accept_prob_from_stats, run_chain, tnt_propose};
use shell_ergm::{rng_from_seed, ChainConfig, Correction, Graph, Params};

fn theta_strategy(n: usize) -> impl Strategy<Value = Params> {
    prop::collection::vec(-3.0f64..3.0, n - 1).prop_map(move |t| Params::new(n, t).unwrap())
}

proptest! {
    #[test]
    fn acceptance_depends_on_weighted_change_only(
        g in arb_graph_density(6, 6),
        h in arb_graph_density(6, 6),
        params in theta_strategy(6),
        log_ratio in -2.0f64..2.0,
    ) {
        let a = shell_distribution(&g).truncated();
        let b = shell_distribution(&h).truncated();
        let weighted: f64 = b.iter().zip(&a).zip(params.theta())
            .map(|((&nb, &na), &t)| (nb as f64 - na as f64) * t)
            .sum();
        let plain = accept_prob(&params, &g, &h, log_ratio, Correction::Metropolis).unwrap();
        prop_assert!((plain - weighted.exp().min(1.0)).abs() < 1e-12);
        let corrected = accept_prob(&params, &g, &h, log_ratio, Correction::HastingsCorrected).unwrap();
        prop_assert!((corrected - (weighted + log_ratio).exp().min(1.0)).abs() < 1e-12);
    }

    #[test]
    fn moving_mass_toward_favoured_shell(
        base in prop::collection::vec(-2.0f64..2.0, 5),
        i in 0usize..5,
        j in 0usize..5,
        gaps in prop::collection::vec(-4.0f64..4.0, 2..6),
    ) {
        prop_assume!(i != j);
        let mut cur = vec![1usize; 5];
        cur[j] = 2;
        let mut next = cur.clone();
        next[i] += 1;
        next[j] -= 1;
        let mut gaps = gaps;
        gaps.sort_by(f64::total_cmp);
        let mut last = 0.0;
        for gap in gaps {
            let mut theta = base.clone();
            theta[i] = theta[j] + gap;
            let params = Params::new(6, theta).unwrap();
            let pi = accept_prob_from_stats(&params, &cur, &next, 0.0, Correction::Metropolis);
            prop_assert!(pi >= last);
            last = pi;
        }
    }
}

#[test]
fn traces_are_reproducible() {
    let params = Params::new(6, vec![0.3, -0.2, 0.5, 0.1, -0.4]).unwrap();
    let init = Graph::cycle(6);
    let cfg = ChainConfig {
        steps: 3000,
        k: 2,
        burn_in: 100,
        thin: 7,
        seed: 99,
        correction: Correction::HastingsCorrected,
    };
    let a = run_chain(&params, &init, &cfg).unwrap();
    let b = run_chain(&params, &init, &cfg).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.summary_json().to_string(), b.summary_json().to_string());
    assert_eq!(a.records.len(), (3000 - 100) / 7);
    assert!((0.0..=1.0).contains(&a.acceptance_rate));
    let other = run_chain(&params, &init, &ChainConfig { seed: 100, ..cfg }).unwrap();
    assert_ne!(a.to_csv(), other.to_csv());
}

/// With zero parameters the corrected chain targets the uniform law on all
/// 64 labeled 4-vertex graphs.
#[test]
fn corrected_chain_is_uniform_at_zero() {
    let params = Params::zeros(4);
    let mut rng = rng_from_seed(5);
    let mut g = Graph::empty(4);
    let mut counts = [0u64; 64];
    let steps = 1_000_000;
    for _ in 0..steps {
        let prop = tnt_propose(&g, 1, &mut rng);
        let pi = accept_prob(&params, &g, &prop.graph, prop.log_ratio, Correction::HastingsCorrected).unwrap();
        if rng.gen::<f64>() < pi {
            g = prop.graph;
        }
        counts[g.dyad_mask() as usize] += 1;
    }
    let tv: f64 = counts
        .iter()
        .map(|&c| (c as f64 / steps as f64 - 1.0 / 64.0).abs())
        .sum::<f64>()
        / 2.0;
    assert!(tv < 0.02, "tv = {tv}");
}

#[test]
fn uncorrected_chain_has_a_known_bias() {
    // Without the proposal ratio, the same chain is not uniform: make sure
    // the two modes really differ so the correction is doing something.
    let params = Params::zeros(4);
    let mut counts = [[0u64; 7]; 2];
    for (slot, corr) in [Correction::Metropolis, Correction::HastingsCorrected].into_iter().enumerate() {
        let mut rng = rng_from_seed(6);
        let mut g = Graph::empty(4);
        for _ in 0..200_000 {
            let prop = tnt_propose(&g, 1, &mut rng);
            let pi = accept_prob(&params, &g, &prop.graph, prop.log_ratio, corr).unwrap();
            if rng.gen::<f64>() < pi {
                g = prop.graph;
            }
            counts[slot][g.edge_count()] += 1;
        }
    }
    // Uniform law puts 20/64 of the mass on 3 edges.
    let share = |c: &[u64; 7]| c[3] as f64 / c.iter().sum::<u64>() as f64;
    assert!((share(&counts[1]) - 20.0 / 64.0).abs() < 0.02);
    assert!((share(&counts[0]) - 20.0 / 64.0).abs() > 0.05);
}
