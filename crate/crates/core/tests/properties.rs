// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::collections::{BTreeSet, HashSet};
use std::io::{Read, Write};

use bmcif_core::aof::{all_supported_flows, Overrides};
use bmcif_core::distinct::{all_supported_vectors_adjusted, minimal_positive_cycle};
use bmcif_core::format::{read_instance, write_instance};
use bmcif_core::generators::{gen_example_backarcs, gen_example_path_cycles, gen_random, RandomConfig};
use bmcif_core::mcf::{residual, solve_scalar_mcf, Step};
use bmcif_core::oracle::{
    enumerate_all_integer_flows, filter_nondominated, flow_space_size, OracleReport, ORACLE_GUARD,
};
use bmcif_core::{validate_instance, Arc, BiCost, Instance};
use proptest::prelude::*;

fn arb_instance() -> impl Strategy<Value = Instance> {
    (2usize..7).prop_flat_map(|n| {
        let arc = (0..n, 1..n, 0i64..3, 0i64..4, -20i64..=20, -20i64..=20).prop_map(
            move |(s, off, lo, span, c1, c2)| Arc::new(s, (s + off) % n, lo, lo + span, c1, c2),
        );
        let balances = prop::collection::vec(-5i64..=5, n - 1).prop_map(|mut b| {
            b.push(-b.iter().sum::<i64>());
            b
        });
        (prop::collection::vec(arc, 0..12), balances).prop_map(move |(arcs, balances)| Instance {
            node_count: n,
            arcs,
            balances,
        })
    })
}

fn small_random(seed: u64, nodes: usize, arcs: usize, supply: i64) -> Option<Instance> {
    let inst = gen_random(&RandomConfig {
        node_count: nodes,
        arc_count: arcs,
        supply_nodes: 1,
        sink_nodes: 2,
        max_cost: 10,
        max_capacity: 3,
        total_supply: supply,
        seed,
    })
    .ok()?;
    (flow_space_size(&inst) <= ORACLE_GUARD).then_some(inst)
}

/// Cheapest positive proper residual cycle by listing every simple cycle.
fn brute_force_min_positive(inst: &Instance, flow: &[i64]) -> Option<i64> {
    let graph = residual(inst, flow);
    let out = graph.out_lists();
    let cost = inst.cost1();
    let mut best: Option<i64> = None;
    #[allow(clippy::too_many_arguments)]
    fn walk(
        node: usize,
        start: usize,
        path: &mut Vec<Step>,
        seen: &mut Vec<bool>,
        graph: &bmcif_core::mcf::ResidualGraph,
        out: &[Vec<usize>],
        cost: &[i64],
        best: &mut Option<i64>,
    ) {
        for &i in &out[node] {
            let ra = graph.arcs[i];
            if path.iter().any(|s| s.arc == ra.step.arc) {
                continue;
            }
            if ra.head == start {
                let total: i64 = path.iter().chain([&ra.step]).map(|s| s.cost(cost)).sum();
                if total > 0 && best.is_none_or(|b| total < b) {
                    *best = Some(total);
                }
            } else if ra.head > start && !seen[ra.head] {
                seen[ra.head] = true;
                path.push(ra.step);
                walk(ra.head, start, path, seen, graph, out, cost, best);
                path.pop();
                seen[ra.head] = false;
            }
        }
    }
    for start in 0..inst.node_count {
        let mut seen = vec![false; inst.node_count];
        walk(start, start, &mut Vec::new(), &mut seen, &graph, &out, &cost, &mut best);
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn file_round_trip(inst in arb_instance()) {
        prop_assume!(validate_instance(&inst).is_empty());
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(write_instance(&inst).as_bytes()).unwrap();
        let mut text = String::new();
        std::fs::File::open(file.path()).unwrap().read_to_string(&mut text).unwrap();
        let back = read_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn dominance_filter_idempotent_and_order_free(
        raw in prop::collection::vec((-30i64..30, -30i64..30), 0..40),
        rot in 0usize..40,
    ) {
        let points: Vec<BiCost> = raw.iter().map(|&(a, b)| BiCost::new(a, b)).collect();
        let once = filter_nondominated(&points);
        prop_assert_eq!(filter_nondominated(&once), once.clone());
        let mut shuffled = points.clone();
        shuffled.reverse();
        if !shuffled.is_empty() {
            let k = rot % shuffled.len();
            shuffled.rotate_left(k);
        }
        prop_assert_eq!(filter_nondominated(&shuffled), once.clone());
        for p in &points {
            prop_assert!(once.iter().any(|q| q == p || q.dominates(p)));
        }
    }

    #[test]
    fn minimal_positive_cycle_matches_brute_force(seed in 0u64..10_000, nodes in 3usize..7, extra in 0usize..6) {
        let inst = small_random(seed, nodes, nodes + extra, 3);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let flow = solve_scalar_mcf(&inst, &inst.cost1()).unwrap().flow;
        let found = minimal_positive_cycle(&inst, &flow, &Overrides::none(&inst)).unwrap();
        let expected = brute_force_min_positive(&inst, &flow);
        prop_assert_eq!(found.as_ref().map(|c| c.value), expected);
        // The cheapest positive cycle is also the smallest positive c1 gap.
        let c1 = inst.cost1();
        let base: i64 = c1.iter().zip(&flow).map(|(c, x)| c * x).sum();
        let gap = enumerate_all_integer_flows(&inst)
            .unwrap()
            .iter()
            .map(|f| c1.iter().zip(f).map(|(c, x)| c * x).sum::<i64>() - base)
            .filter(|&d| d > 0)
            .min();
        prop_assert_eq!(gap, expected);
    }

    #[test]
    fn supported_flows_partition_the_optimal_faces(seed in 0u64..10_000, nodes in 3usize..7, extra in 0usize..6) {
        let inst = small_random(seed, nodes, nodes + extra, 4);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let result = all_supported_flows(&inst).unwrap();
        let unique: HashSet<&Vec<i64>> = result.flows.iter().collect();
        prop_assert_eq!(unique.len(), result.flows.len());

        let all = enumerate_all_integer_flows(&inst).unwrap();
        let mut expected = BTreeSet::new();
        for face in &result.faces {
            let w = face.weight;
            let value = |f: &Vec<i64>| -> i64 {
                inst.arcs.iter().zip(f).map(|(a, x)| (w.w1 * a.cost1 + w.w2 * a.cost2) * x).sum()
            };
            let best = all.iter().map(value).min().unwrap();
            let optimal: Vec<&Vec<i64>> = all.iter().filter(|f| value(f) == best).collect();
            // Degenerate faces carry both objectives: keep the lexicographic optima.
            let optimal: Vec<Vec<i64>> = if result.frontier.points.len() == 1 {
                let img = |f: &Vec<i64>| bmcif_core::evaluate_cost(&inst, f).unwrap();
                let top = optimal.iter().map(|f| img(f)).min().unwrap();
                optimal.into_iter().filter(|f| img(f) == top).cloned().collect()
            } else {
                optimal.into_iter().cloned().collect()
            };
            prop_assert_eq!(optimal.len(), face.flow_count);
            expected.extend(optimal);
        }
        let got: BTreeSet<Vec<i64>> = result.flows.into_iter().collect();
        prop_assert_eq!(got, expected);
    }
}

#[test]
fn generator_counts_match_oracle() {
    let mut checked = 0;
    for k in 5..=7usize {
        for m in 1..=4i64 {
            for l in 1..=4i64 {
                let inst = gen_example_path_cycles(k, m, l).unwrap();
                if flow_space_size(&inst) > ORACLE_GUARD {
                    continue;
                }
                let report = OracleReport::compute(&inst).unwrap();
                let flows = (m + 1).pow(k as u32 - 3) * (l + 1);
                assert_eq!(report.supported_flow_count() as i64, flows, "path-cycles {k} {m} {l}");
                assert_eq!(report.supported().len() as i64, l + 1);
                assert_eq!(all_supported_flows(&inst).unwrap().flows.len() as i64, flows);
                checked += 1;
            }
        }
    }
    for k in 5..=7u64 {
        for l in 1..=4u64 {
            let inst = gen_example_backarcs(k as usize, l as i64).unwrap();
            if flow_space_size(&inst) > ORACLE_GUARD {
                continue;
            }
            let report = OracleReport::compute(&inst).unwrap();
            let binom = |n: u64, r: u64| (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
            let flows: u64 = (0..=l).map(|i| binom(k - 3 + i, i)).sum();
            assert_eq!(report.supported_flow_count() as u64, flows, "backarcs {k} {l}");
            let adjusted = all_supported_vectors_adjusted(&inst).unwrap();
            assert_eq!(adjusted.images(), report.supported());
            checked += 1;
        }
    }
    assert!(checked > 20, "only {checked} generator settings fit under the guard");
}
