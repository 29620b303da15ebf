use chainloss_core::random::{random_graph, random_weights, GraphParams};
use chainloss_core::{
    brute_force_optimal, enumerate_acyclic_chains, evaluate_chain, greedy_chain,
    greedy_chain_multi_source, greedy_search, prob_chain_decision, InterfaceAdapterGraph,
    InvocationWeights,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Case {
    graph: InterfaceAdapterGraph,
    source: String,
    target: String,
    weights: InvocationWeights,
}

fn case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = random_graph(&mut rng, &GraphParams::default());
    let n = graph.interfaces().len();
    let source = graph.interfaces()[rng.random_range(0..n)].name.clone();
    let target = graph.interfaces()[rng.random_range(0..n)].name.clone();
    let methods = graph.interface(&target).unwrap().methods.len();
    let weights = random_weights(&mut rng, methods);
    Case {
        graph,
        source,
        target,
        weights,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn greedy_agrees_with_brute_force(seed: u64) {
        let c = case(seed);
        let greedy = greedy_chain(&c.graph, &c.source, &c.target, &c.weights).unwrap();
        let brute = brute_force_optimal(&c.graph, &c.source, &c.target, &c.weights).unwrap();
        match (greedy, brute) {
            (None, None) => {}
            (Some(g), Some(b)) => {
                prop_assert!((g.loss - b.loss).abs() <= 1e-9);
                prop_assert_eq!(g.chain, b.chain);
            }
            (g, b) => prop_assert!(false, "greedy {:?} vs brute {:?}", g, b),
        }
    }

    #[test]
    fn pops_are_non_decreasing_and_frontier_is_sound(seed: u64) {
        let c = case(seed);
        let search = greedy_search(&c.graph, &[&c.source], &c.target, &c.weights).unwrap();
        for w in search.popped.windows(2) {
            prop_assert!(w[0].loss <= w[1].loss + 1e-12);
        }
        for p in search.popped.iter().filter(|p| !p.chain.is_empty()) {
            // Resolving checks compatibility and acyclicity.
            prop_assert_eq!(&c.graph.chain_target(&p.chain).unwrap().name, &c.target);
            let again = evaluate_chain(&c.graph, &p.chain, &c.target, &c.weights).unwrap();
            prop_assert_eq!(again.loss, p.loss);
        }
        if let Some(r) = &search.result {
            prop_assert_eq!(r.loss, 1.0 - r.availability);
            prop_assert!((0.0..=1.0).contains(&r.availability));
        }
    }

    #[test]
    fn multi_source_is_best_single_source(seed: u64) {
        let c = case(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let sources: Vec<&str> = c
            .graph
            .interfaces()
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .map(|i| i.name.as_str())
            .collect();
        prop_assume!(!sources.is_empty());
        let multi = greedy_chain_multi_source(&c.graph, &sources, &c.target, &c.weights).unwrap();
        let best = sources
            .iter()
            .filter_map(|s| brute_force_optimal(&c.graph, s, &c.target, &c.weights).unwrap())
            .min_by(|a, b| {
                a.loss
                    .total_cmp(&b.loss)
                    .then(a.chain.len().cmp(&b.chain.len()))
                    .then_with(|| a.chain.cmp(&b.chain))
            });
        prop_assert_eq!(multi.map(|r| r.chain), best.map(|r| r.chain));
    }

    #[test]
    fn decision_matches_enumeration(seed: u64, threshold in 0.0f64..=1.0) {
        let c = case(seed);
        let any = enumerate_acyclic_chains(&c.graph, &c.source, &c.target, None)
            .unwrap()
            .any(|chain| {
                evaluate_chain(&c.graph, &chain, &c.target, &c.weights).unwrap().availability
                    >= threshold - 1e-12
            });
        prop_assert_eq!(
            prob_chain_decision(&c.graph, &c.source, &c.target, &c.weights, threshold).unwrap(),
            any
        );
    }
}
