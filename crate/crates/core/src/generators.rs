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

//! Instance families: the subset-sum gadget, two parametric examples with
//! known supported-set sizes, and seeded random networks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Arc, Instance};

/// Chain of `weights.len() + 1` nodes. Position `i` has a zero-cost arc and a
/// parallel arc of cost `(w_i, -w_i)`, both with capacity one, so unit flows
/// from the first to the last node correspond to subsets.
pub fn gen_subset_sum(weights: &[i64]) -> Result<Instance> {
    if weights.is_empty() || weights.iter().any(|&w| w <= 0) {
        return Err(Error::InvalidWeights);
    }
    let n = weights.len() + 1;
    let mut arcs = Vec::with_capacity(2 * weights.len());
    for (i, &w) in weights.iter().enumerate() {
        arcs.push(Arc::new(i, i + 1, 0, 1, 0, 0));
        arcs.push(Arc::new(i, i + 1, 0, 1, w, -w));
    }
    let mut balances = vec![0; n];
    balances[0] = 1;
    balances[n - 1] = -1;
    Ok(Instance::new(n, arcs, balances))
}

/// Chain `1 -> 2 -> ... -> k` carrying two units, back arcs `(k-i, k-i-2)` of
/// capacity `m` for `i = 1..=k-3`, and one arc `(k, k-2)` of capacity `l` with
/// cost `(1, -1)`. Every other arc costs nothing.
///
/// Has `(m+1)^(k-3) * (l+1)` supported efficient flows and `l+1` supported
/// nondominated vectors.
pub fn gen_example_path_cycles(k: usize, m: i64, l: i64) -> Result<Instance> {
    if k < 5 {
        return Err(Error::InvalidConfig(format!("k must be at least 5, got {k}")));
    }
    if m < 1 || l < 1 {
        return Err(Error::InvalidConfig("M and L must be positive".into()));
    }
    let chain_cap = (k as i64 - 3) * m + l + 2;
    let mut arcs: Vec<Arc> = (0..k - 1)
        .map(|i| Arc::new(i, i + 1, 0, chain_cap, 0, 0))
        .collect();
    // 1-based (k-i, k-i-2) is 0-based (k-i-1, k-i-3).
    for i in 1..=k - 3 {
        arcs.push(Arc::new(k - i - 1, k - i - 3, 0, m, 0, 0));
    }
    arcs.push(Arc::new(k - 1, k - 3, 0, l, 1, -1));
    Ok(Instance::new(k, arcs, terminal_balances(k)))
}

/// Chain `1 -> ... -> k` of capacity `l + 2` at zero cost plus arcs `(k, k-i)`
/// for `i = 2..=k-1` with capacity `l` and cost `(1, -1)`.
pub fn gen_example_backarcs(k: usize, l: i64) -> Result<Instance> {
    if k < 5 {
        return Err(Error::InvalidConfig(format!("k must be at least 5, got {k}")));
    }
    if l < 1 {
        return Err(Error::InvalidConfig("L must be positive".into()));
    }
    let mut arcs: Vec<Arc> = (0..k - 1)
        .map(|i| Arc::new(i, i + 1, 0, l + 2, 0, 0))
        .collect();
    for i in 2..k {
        arcs.push(Arc::new(k - 1, k - 1 - i, 0, l, 1, -1));
    }
    Ok(Instance::new(k, arcs, terminal_balances(k)))
}

fn terminal_balances(k: usize) -> Vec<i64> {
    let mut b = vec![0; k];
    b[0] = 2;
    b[k - 1] = -2;
    b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub node_count: usize,
    pub arc_count: usize,
    pub supply_nodes: usize,
    pub sink_nodes: usize,
    pub max_cost: i64,
    pub max_capacity: i64,
    pub total_supply: i64,
    pub seed: u64,
}

impl RandomConfig {
    fn check(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.node_count < 2 {
            return bad("need at least two nodes");
        }
        if self.arc_count + 1 < self.node_count {
            return Err(Error::CannotConnect {
                nodes: self.node_count,
                arcs: self.arc_count,
            });
        }
        if self.supply_nodes == 0 || self.sink_nodes == 0 {
            return bad("need at least one supply and one sink node");
        }
        if self.supply_nodes + self.sink_nodes > self.node_count {
            return bad("more supply and sink nodes than nodes");
        }
        if self.total_supply < self.supply_nodes.max(self.sink_nodes) as i64 {
            return bad("total supply must cover one unit per supply and per sink node");
        }
        if self.max_cost < 1 || self.max_capacity < 1 {
            return bad("maximum cost and capacity must be positive");
        }
        Ok(())
    }
}

/// Random positive split of `total` into `parts` pieces.
fn split(rng: &mut ChaCha8Rng, total: i64, parts: usize) -> Vec<i64> {
    let mut out = vec![1; parts];
    for _ in 0..total - parts as i64 {
        out[rng.gen_range(0..parts)] += 1;
    }
    out
}

/// Connected random network that always admits a feasible flow.
///
/// A random spanning tree is oriented along the flow it must carry and its
/// capacities are raised to that flow where needed; the remaining arcs join
/// uniformly random node pairs (parallel arcs allowed).
pub fn gen_random(cfg: &RandomConfig) -> Result<Instance> {
    cfg.check()?;
    let n = cfg.node_count;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut balances = vec![0i64; n];
    for (&v, s) in order[..cfg.supply_nodes]
        .iter()
        .zip(split(&mut rng, cfg.total_supply, cfg.supply_nodes))
    {
        balances[v] = s;
    }
    let sinks = &order[cfg.supply_nodes..cfg.supply_nodes + cfg.sink_nodes];
    for (&v, s) in sinks
        .iter()
        .zip(split(&mut rng, cfg.total_supply, cfg.sink_nodes))
    {
        balances[v] = -s;
    }

    order.shuffle(&mut rng);
    let mut parent = vec![usize::MAX; n];
    for i in 1..n {
        parent[order[i]] = order[rng.gen_range(0..i)];
    }
    let mut subtree = balances.clone();
    for i in (1..n).rev() {
        let v = order[i];
        subtree[parent[v]] += subtree[v];
    }

    let mut arcs = Vec::with_capacity(cfg.arc_count);
    let random_arc = |rng: &mut ChaCha8Rng, src: usize, dst: usize, need: i64| {
        let cap = rng.gen_range(1..=cfg.max_capacity).max(need);
        let c1 = rng.gen_range(1..=cfg.max_cost);
        let c2 = rng.gen_range(1..=cfg.max_cost);
        Arc::new(src, dst, 0, cap, c1, c2)
    };
    for &v in &order[1..] {
        let need = subtree[v];
        let (src, dst) = match need.cmp(&0) {
            std::cmp::Ordering::Greater => (v, parent[v]),
            std::cmp::Ordering::Less => (parent[v], v),
            std::cmp::Ordering::Equal if rng.gen_bool(0.5) => (v, parent[v]),
            std::cmp::Ordering::Equal => (parent[v], v),
        };
        arcs.push(random_arc(&mut rng, src, dst, need.abs()));
    }
    while arcs.len() < cfg.arc_count {
        let src = rng.gen_range(0..n);
        let mut dst = rng.gen_range(0..n - 1);
        if dst >= src {
            dst += 1;
        }
        arcs.push(random_arc(&mut rng, src, dst, 0));
    }
    arcs.shuffle(&mut rng);
    Ok(Instance::new(n, arcs, balances))
}

/// The five-node example network used throughout the documentation and tests:
/// ten units from node 1 to node 5.
pub fn example_five_node() -> Instance {
    let table = [
        (1, 2, 10, 3, 5),
        (1, 3, 5, 8, 1),
        (2, 3, 4, 5, 5),
        (2, 4, 7, 3, 9),
        (3, 4, 8, 2, 7),
        (3, 5, 6, 10, 2),
        (4, 5, 8, 1, 4),
    ];
    let arcs = table
        .iter()
        .map(|&(s, t, u, c1, c2)| Arc::new(s - 1, t - 1, 0, u, c1, c2))
        .collect();
    Instance::new(5, arcs, vec![10, 0, 0, 0, -10])
}
