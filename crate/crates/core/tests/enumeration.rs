use std::collections::BTreeSet;

use chainloss_core::random::{random_graph, GraphParams};
use chainloss_core::{
    chain_factor, enumerate_acyclic_chains, full_availability, prob_adapt, prob_compose,
    AdapterChain, InterfaceAdapterGraph,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Recursive DFS over adapters by source interface name.
fn dfs_chains(g: &InterfaceAdapterGraph, source: &str, target: &str) -> BTreeSet<Vec<String>> {
    fn go(
        g: &InterfaceAdapterGraph,
        here: &str,
        target: &str,
        visited: &mut Vec<String>,
        path: &mut Vec<String>,
        out: &mut BTreeSet<Vec<String>>,
    ) {
        if here == target {
            out.insert(path.clone());
            return;
        }
        for a in g.adapters().iter().filter(|a| a.source == here) {
            if visited.contains(&a.target) {
                continue;
            }
            visited.push(a.target.clone());
            path.push(a.name.clone());
            go(g, &a.target, target, visited, path, out);
            path.pop();
            visited.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(
        g,
        source,
        target,
        &mut vec![source.to_string()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn names(g: &InterfaceAdapterGraph) -> Vec<String> {
    g.interfaces().iter().map(|i| i.name.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumeration_matches_dfs(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, &GraphParams { max_adapters: 14, ..GraphParams::default() });
        let ifaces = names(&g);
        let s = &ifaces[rng.random_range(0..ifaces.len())];
        let t = &ifaces[rng.random_range(0..ifaces.len())];
        let listed: Vec<AdapterChain> = enumerate_acyclic_chains(&g, s, t, None).unwrap().collect();
        let as_set: BTreeSet<Vec<String>> = listed.iter().map(|c| c.adapters().to_vec()).collect();
        prop_assert_eq!(as_set.len(), listed.len(), "duplicates in enumeration");
        prop_assert_eq!(&as_set, &dfs_chains(&g, s, t));
        // Shorter first, then lexicographic.
        for w in listed.windows(2) {
            prop_assert!((w[0].len(), w[0].adapters()) < (w[1].len(), w[1].adapters()));
        }
        for c in &listed {
            if !c.is_empty() {
                prop_assert_eq!(&g.chain_source(c).unwrap().name, s);
                prop_assert_eq!(&g.chain_target(c).unwrap().name, t);
            }
        }
    }
}

/// Chains of one-to-one adapters: composition order cannot matter.
#[test]
fn chain_factor_fold_order_on_functional_chains() {
    use chainloss_core::graph::{AdapterSpec, InterfaceSpec};
    use chainloss_core::random::random_functional_factor;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.random_range(2..=5);
        let ifaces: Vec<_> = (0..n)
            .map(|k| {
                InterfaceSpec::new(
                    format!("I{k}"),
                    (0..rng.random_range(1..=4)).map(|m| format!("m{m}")),
                )
            })
            .collect();
        let adapters: Vec<_> = (0..n - 1)
            .map(|k| {
                let f =
                    random_functional_factor(&mut rng, ifaces[k + 1].slots(), ifaces[k].slots());
                AdapterSpec::new(format!("A{k}"), &ifaces[k].name, &ifaces[k + 1].name, f)
            })
            .collect();
        let g = InterfaceAdapterGraph::new(ifaces.clone(), adapters.clone()).unwrap();
        let chain = AdapterChain::new(adapters.iter().map(|a| a.name.clone()));
        let left = chain_factor(&g, &chain).unwrap();
        let right = adapters[1..]
            .iter()
            .fold(adapters[0].factor.clone(), |acc, a| {
                prob_compose(&a.factor, &acc).unwrap()
            });
        let one = full_availability(ifaces[0].slots());
        let (l, r) = (
            prob_adapt(&left, &one).unwrap(),
            prob_adapt(&right, &one).unwrap(),
        );
        for (x, y) in l.entries().iter().zip(r.entries()) {
            assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }
    }
}
