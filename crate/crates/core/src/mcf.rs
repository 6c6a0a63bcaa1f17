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

//! Single-objective minimum cost flow: optimal tree solutions, potentials,
//! reduced costs, residual graphs and induced cycles.
//!
//! Bounds are handled as given (`lower <= f <= upper`); nothing here assumes
//! zero lower bounds.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::model::{check_flow_feasible, image, BiCost, Flow, Instance};

/// One residual copy of an original arc: forward raises its flow, backward
/// lowers it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub arc: usize,
    pub forward: bool,
}

impl Step {
    pub const fn new(arc: usize, forward: bool) -> Self {
        Self { arc, forward }
    }

    pub fn tail(&self, inst: &Instance) -> usize {
        let a = &inst.arcs[self.arc];
        if self.forward {
            a.src
        } else {
            a.dst
        }
    }

    pub fn head(&self, inst: &Instance) -> usize {
        let a = &inst.arcs[self.arc];
        if self.forward {
            a.dst
        } else {
            a.src
        }
    }

    pub fn capacity(&self, inst: &Instance, flow: &[i64]) -> i64 {
        let a = &inst.arcs[self.arc];
        if self.forward {
            a.upper - flow[self.arc]
        } else {
            flow[self.arc] - a.lower
        }
    }

    pub fn cost(&self, cost: &[i64]) -> i64 {
        if self.forward {
            cost[self.arc]
        } else {
            -cost[self.arc]
        }
    }

    pub fn twin(&self) -> Step {
        Step::new(self.arc, !self.forward)
    }

    /// The step that walks `arc` starting at node `from`.
    fn leaving(inst: &Instance, arc: usize, from: usize) -> Step {
        Step::new(arc, inst.arcs[arc].src == from)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidualArc {
    pub step: Step,
    pub tail: usize,
    pub head: usize,
    pub capacity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualGraph {
    pub node_count: usize,
    pub arcs: Vec<ResidualArc>,
}

impl ResidualGraph {
    /// Residual arc indices leaving each node.
    pub fn out_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count];
        for (i, r) in self.arcs.iter().enumerate() {
            out[r.tail].push(i);
        }
        out
    }

    pub fn contains(&self, step: Step) -> bool {
        self.arcs.iter().any(|r| r.step == step)
    }
}

/// Residual graph of `flow`: a forward copy for every arc below its upper
/// bound and a backward copy for every arc above its lower bound, in arc order.
pub fn residual(inst: &Instance, flow: &[i64]) -> ResidualGraph {
    let mut arcs = Vec::new();
    for (i, a) in inst.arcs.iter().enumerate() {
        let f = flow[i];
        if f < a.upper {
            arcs.push(ResidualArc {
                step: Step::new(i, true),
                tail: a.src,
                head: a.dst,
                capacity: a.upper - f,
            });
        }
        if f > a.lower {
            arcs.push(ResidualArc {
                step: Step::new(i, false),
                tail: a.dst,
                head: a.src,
                capacity: f - a.lower,
            });
        }
    }
    ResidualGraph {
        node_count: inst.node_count,
        arcs,
    }
}

/// Closed residual walk with its incidence vector and bi-objective cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub steps: Vec<Step>,
    /// Per original arc: +1 if traversed forward, -1 if backward, else 0.
    pub chi: Vec<i64>,
    pub cost: BiCost,
    /// Smallest residual capacity along the cycle under the flow it was built
    /// for. May be zero for cycles induced by degenerate tree solutions.
    pub max_step: i64,
}

impl Cycle {
    pub fn from_steps(inst: &Instance, flow: &[i64], steps: Vec<Step>) -> Cycle {
        let mut chi = vec![0; inst.arcs.len()];
        let mut cost = BiCost::default();
        let mut max_step = i64::MAX;
        for s in &steps {
            let a = &inst.arcs[s.arc];
            let sign = if s.forward { 1 } else { -1 };
            chi[s.arc] += sign;
            cost.c1 += sign * a.cost1;
            cost.c2 += sign * a.cost2;
            max_step = max_step.min(s.capacity(inst, flow));
        }
        if steps.is_empty() {
            max_step = 0;
        }
        Cycle {
            steps,
            chi,
            cost,
            max_step,
        }
    }

    pub fn scalar_cost(&self, cost: &[i64]) -> i64 {
        self.chi.iter().zip(cost).map(|(x, c)| x * c).sum()
    }

    /// Never uses both residual copies of one arc.
    pub fn is_proper(&self) -> bool {
        self.steps
            .iter()
            .all(|s| !self.steps.contains(&s.twin()))
    }

    /// Consecutive steps share endpoints and the walk returns to its start.
    pub fn is_closed(&self, inst: &Instance) -> bool {
        !self.steps.is_empty()
            && (0..self.steps.len()).all(|i| {
                let next = self.steps[(i + 1) % self.steps.len()];
                self.steps[i].head(inst) == next.tail(inst)
            })
    }

    /// The same cycle traversed the other way.
    pub fn reversed(&self, inst: &Instance, flow: &[i64]) -> Cycle {
        let steps = self.steps.iter().rev().map(Step::twin).collect();
        Cycle::from_steps(inst, flow, steps)
    }
}

/// `flow + theta * chi(cycle)`.
pub fn apply_cycle(flow: &[i64], cycle: &Cycle, theta: i64) -> Result<Flow> {
    if theta < 1 || theta > cycle.max_step {
        return Err(Error::StepOutOfRange {
            theta,
            max_step: cycle.max_step,
        });
    }
    Ok(flow
        .iter()
        .zip(&cycle.chi)
        .map(|(f, x)| f + theta * x)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcStatus {
    Tree,
    Lower,
    Upper,
}

/// Flow with a certifying spanning forest `T` and the partition of the other
/// arcs into those at their lower (`L`) and upper (`U`) bound.
///
/// On a connected instance `T` is a spanning tree. Arcs with `lower == upper`
/// outside `T` are put in `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFlow {
    pub flow: Flow,
    pub tree_arcs: Vec<usize>,
    pub lower_set: Vec<usize>,
    pub upper_set: Vec<usize>,
}

impl TreeFlow {
    /// Checks that `tree_arcs` is a maximal forest and that every other arc
    /// sits at one of its bounds.
    pub fn new(inst: &Instance, flow: Flow, mut tree_arcs: Vec<usize>) -> Result<TreeFlow> {
        inst.check_arity(&flow)?;
        if !check_flow_feasible(inst, &flow) {
            return Err(Error::InvalidTree("flow is infeasible".into()));
        }
        tree_arcs.sort_unstable();
        tree_arcs.dedup();
        let mut dsu = Dsu::new(inst.node_count);
        let mut in_tree = vec![false; inst.arcs.len()];
        for &a in &tree_arcs {
            let Some(arc) = inst.arcs.get(a) else {
                return Err(Error::InvalidTree(format!("arc {a} does not exist")));
            };
            if !dsu.union(arc.src, arc.dst) {
                return Err(Error::InvalidTree(format!("arc {a} closes a cycle in T")));
            }
            in_tree[a] = true;
        }
        let (_, components) = inst.components();
        if tree_arcs.len() + components != inst.node_count {
            return Err(Error::InvalidTree("T does not span every component".into()));
        }
        let mut lower_set = Vec::new();
        let mut upper_set = Vec::new();
        for (i, a) in inst.arcs.iter().enumerate() {
            if in_tree[i] {
                continue;
            }
            if flow[i] == a.lower {
                lower_set.push(i);
            } else if flow[i] == a.upper {
                upper_set.push(i);
            } else {
                return Err(Error::InvalidTree(format!(
                    "non-tree arc {i} is strictly inside its bounds"
                )));
            }
        }
        Ok(TreeFlow {
            flow,
            tree_arcs,
            lower_set,
            upper_set,
        })
    }

    pub fn status(&self, arc: usize) -> ArcStatus {
        if self.tree_arcs.binary_search(&arc).is_ok() {
            ArcStatus::Tree
        } else if self.upper_set.binary_search(&arc).is_ok() {
            ArcStatus::Upper
        } else {
            ArcStatus::Lower
        }
    }

    /// Arcs outside `T`, ascending.
    pub fn non_tree_arcs(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.lower_set.iter().chain(&self.upper_set).copied().collect();
        v.sort_unstable();
        v
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Rooted view of a forest for path queries.
struct Forest {
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

impl Forest {
    fn new(inst: &Instance, tree_arcs: &[usize]) -> Forest {
        let n = inst.node_count;
        let mut adj = vec![Vec::new(); n];
        for &a in tree_arcs {
            let arc = &inst.arcs[a];
            adj[arc.src].push((arc.dst, a));
            adj[arc.dst].push((arc.src, a));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &(w, a) in &adj[v] {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = Some((v, a));
                        queue.push_back(w);
                    }
                }
            }
        }
        Forest { parent, depth }
    }

    /// Steps of the forest path from `x` to `y`, or `None` if they lie in
    /// different trees.
    fn path(&self, inst: &Instance, mut x: usize, mut y: usize) -> Option<Vec<Step>> {
        let mut from_x = Vec::new();
        let mut to_y = Vec::new();
        while x != y {
            if self.depth[x] >= self.depth[y] {
                let (p, a) = self.parent[x]?;
                from_x.push(Step::leaving(inst, a, x));
                x = p;
            } else {
                let (p, a) = self.parent[y]?;
                to_y.push(Step::leaving(inst, a, p));
                y = p;
            }
        }
        from_x.extend(to_y.into_iter().rev());
        Some(from_x)
    }

    fn induced(&self, inst: &Instance, tf: &TreeFlow, arc: usize) -> Result<Cycle> {
        let step = match tf.status(arc) {
            ArcStatus::Tree => return Err(Error::TreeArc(arc)),
            ArcStatus::Lower => Step::new(arc, true),
            ArcStatus::Upper => Step::new(arc, false),
        };
        let back = self
            .path(inst, step.head(inst), step.tail(inst))
            .ok_or_else(|| Error::InvalidTree(format!("endpoints of arc {arc} not joined by T")))?;
        let mut steps = vec![step];
        steps.extend(back);
        Ok(Cycle::from_steps(inst, &tf.flow, steps))
    }
}

/// The unique cycle formed by non-tree `arc` and the tree path between its
/// endpoints, oriented so that one unit along it respects the bound `arc` sits
/// at: along `arc` when it is in `L`, against it when it is in `U`.
pub fn induced_cycle(inst: &Instance, tf: &TreeFlow, arc: usize) -> Result<Cycle> {
    if arc >= inst.arcs.len() {
        return Err(Error::InvalidTree(format!("arc {arc} does not exist")));
    }
    Forest::new(inst, &tf.tree_arcs).induced(inst, tf, arc)
}

/// Induced cycles of every non-tree arc, ascending by arc.
pub fn induced_cycles(inst: &Instance, tf: &TreeFlow) -> Result<Vec<(usize, Cycle)>> {
    let forest = Forest::new(inst, &tf.tree_arcs);
    tf.non_tree_arcs()
        .into_iter()
        .map(|a| Ok((a, forest.induced(inst, tf, a)?)))
        .collect()
}

/// Writes `other` as `tf.flow + sum_a lambda_a * chi(C_a)` over the non-tree
/// arcs and returns `(a, lambda_a)` ascending by arc. The coefficient is the
/// change of flow on `a` measured along its cycle orientation.
pub fn decompose_difference(
    inst: &Instance,
    tf: &TreeFlow,
    other: &[i64],
) -> Result<Vec<(usize, i64)>> {
    inst.check_arity(other)?;
    inst.check_arity(&tf.flow)?;
    let cycles = induced_cycles(inst, tf)?;
    let mut rebuilt = tf.flow.clone();
    let mut coefficients = Vec::with_capacity(cycles.len());
    for (a, cyc) in &cycles {
        let delta = other[*a] - tf.flow[*a];
        let lambda = delta * cyc.chi[*a];
        for (r, x) in rebuilt.iter_mut().zip(&cyc.chi) {
            *r += lambda * x;
        }
        coefficients.push((*a, lambda));
    }
    if rebuilt != other {
        return Err(Error::Decomposition);
    }
    Ok(coefficients)
}

/// Reassembles `tf.flow + sum lambda_a * chi(C_a)`.
pub fn compose(inst: &Instance, tf: &TreeFlow, coefficients: &[(usize, i64)]) -> Result<Flow> {
    let forest = Forest::new(inst, &tf.tree_arcs);
    let mut flow = tf.flow.clone();
    for &(a, lambda) in coefficients {
        let cyc = forest.induced(inst, tf, a)?;
        for (f, x) in flow.iter_mut().zip(&cyc.chi) {
            *f += lambda * x;
        }
    }
    Ok(flow)
}

fn check_cost(inst: &Instance, cost: &[i64]) -> Result<()> {
    inst.check_arity(cost)
}

/// Shortest residual distances from node 0 under `cost`.
///
/// Nodes the residual graph cannot reach get an artificial arc from the root
/// of cost `1 + sum |cost|`. Fails with `NotOptimal` if the residual graph has
/// a negative cycle.
pub fn node_potentials(inst: &Instance, flow: &[i64], cost: &[i64]) -> Result<Vec<i64>> {
    inst.check_arity(flow)?;
    check_cost(inst, cost)?;
    let n = inst.node_count;
    let big = 1 + cost.iter().map(|c| c.abs()).sum::<i64>();
    let edges: Vec<(usize, usize, i64)> = residual(inst, flow)
        .arcs
        .iter()
        .map(|r| (r.tail, r.head, r.step.cost(cost)))
        .collect();
    let mut dist = vec![big; n];
    if n > 0 {
        dist[0] = 0;
    }
    for round in 0..=n {
        let mut changed = false;
        for &(u, v, c) in &edges {
            if dist[u] + c < dist[v] {
                dist[v] = dist[u] + c;
                changed = true;
            }
        }
        if !changed {
            return Ok(dist);
        }
        if round == n {
            break;
        }
    }
    Err(Error::NotOptimal)
}

/// `cost_a + y[src] - y[dst]` per original arc. The residual reduced cost of
/// a backward copy is the negation.
pub fn reduced_costs(inst: &Instance, potentials: &[i64], cost: &[i64]) -> Vec<i64> {
    inst.arcs
        .iter()
        .zip(cost)
        .map(|(a, c)| c + potentials[a.src] - potentials[a.dst])
        .collect()
}

/// True iff the residual graph of `flow` has no negative cycle under `cost`.
pub fn check_optimal(inst: &Instance, flow: &[i64], cost: &[i64]) -> bool {
    node_potentials(inst, flow, cost).is_ok()
}

fn basic_checks(inst: &Instance) -> Result<()> {
    if inst.balances.len() != inst.node_count {
        return Err(Error::InvalidInstance("balance vector length".into()));
    }
    if let Some(i) = inst
        .arcs
        .iter()
        .position(|a| a.src >= inst.node_count || a.dst >= inst.node_count)
    {
        return Err(Error::InvalidInstance(format!("arc {i} references a missing node")));
    }
    if inst.balances.iter().sum::<i64>() != 0 || inst.arcs.iter().any(|a| a.lower > a.upper) {
        return Err(Error::Infeasible);
    }
    Ok(())
}

/// Successive shortest paths with Dijkstra on reduced costs.
///
/// Starts from every negative-cost arc at its upper bound and every other arc
/// at its lower bound, so that all initial residual costs are nonnegative.
fn successive_shortest_paths(inst: &Instance, cost: &[i64]) -> Result<Flow> {
    let n = inst.node_count;
    let mut flow: Flow = inst
        .arcs
        .iter()
        .zip(cost)
        .map(|(a, &c)| if c < 0 { a.upper } else { a.lower })
        .collect();
    let net = inst.net_outflow(&flow);
    let mut excess: Vec<i64> = inst.balances.iter().zip(&net).map(|(b, o)| b - o).collect();

    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for (i, a) in inst.arcs.iter().enumerate() {
        out[a.src].push(i);
        inc[a.dst].push(i);
    }

    let mut pot = vec![0i64; n];
    let mut dist = vec![i64::MAX; n];
    let mut pred: Vec<Option<Step>> = vec![None; n];
    while excess.iter().any(|&e| e > 0) {
        dist.fill(i64::MAX);
        pred.fill(None);
        let mut heap = BinaryHeap::new();
        for v in 0..n {
            if excess[v] > 0 {
                dist[v] = 0;
                heap.push(Reverse((0i64, v)));
            }
        }
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            let forward = out[v]
                .iter()
                .filter(|&&a| flow[a] < inst.arcs[a].upper)
                .map(|&a| Step::new(a, true));
            let backward = inc[v]
                .iter()
                .filter(|&&a| flow[a] > inst.arcs[a].lower)
                .map(|&a| Step::new(a, false));
            for s in forward.chain(backward) {
                let w = s.head(inst);
                let nd = d + s.cost(cost) + pot[v] - pot[w];
                if nd < dist[w] {
                    dist[w] = nd;
                    pred[w] = Some(s);
                    heap.push(Reverse((nd, w)));
                }
            }
        }

        let target = (0..n)
            .filter(|&v| excess[v] < 0 && dist[v] != i64::MAX)
            .min_by_key(|&v| (dist[v], v))
            .ok_or(Error::Infeasible)?;
        let mut path = Vec::new();
        let mut v = target;
        while let Some(s) = pred[v] {
            path.push(s);
            v = s.tail(inst);
        }
        let source = v;
        let delta = path
            .iter()
            .map(|s| s.capacity(inst, &flow))
            .fold(excess[source].min(-excess[target]), i64::min);
        for s in &path {
            flow[s.arc] += if s.forward { delta } else { -delta };
        }
        excess[source] -= delta;
        excess[target] += delta;

        let reach = dist.iter().filter(|&&d| d != i64::MAX).max().copied().unwrap_or(0);
        for v in 0..n {
            pot[v] += if dist[v] == i64::MAX { reach } else { dist[v] };
        }
    }
    Ok(flow)
}

/// Turns an optimal flow into a tree solution with the same cost.
///
/// While the arcs strictly inside their bounds contain a cycle, flow is pushed
/// around it in its non-increasing cost direction until an arc reaches a
/// bound. The remaining free arcs are then completed to a maximal forest by
/// lowest arc index.
fn extract_tree(inst: &Instance, cost: &[i64], mut flow: Flow) -> Result<TreeFlow> {
    let n = inst.node_count;
    let free = |f: &Flow, a: usize| inst.arcs[a].lower < f[a] && f[a] < inst.arcs[a].upper;
    loop {
        let mut dsu = Dsu::new(n);
        let mut forest_arcs = Vec::new();
        let mut closing = None;
        for a in 0..inst.arcs.len() {
            if !free(&flow, a) {
                continue;
            }
            if dsu.union(inst.arcs[a].src, inst.arcs[a].dst) {
                forest_arcs.push(a);
            } else {
                closing = Some(a);
                break;
            }
        }
        let Some(a) = closing else {
            let mut tree = forest_arcs;
            for b in 0..inst.arcs.len() {
                if !free(&flow, b) && dsu.union(inst.arcs[b].src, inst.arcs[b].dst) {
                    tree.push(b);
                }
            }
            return TreeFlow::new(inst, flow, tree);
        };
        let forest = Forest::new(inst, &forest_arcs);
        let arc = &inst.arcs[a];
        let mut steps = vec![Step::new(a, true)];
        steps.extend(
            forest
                .path(inst, arc.dst, arc.src)
                .expect("closing arc endpoints share a tree"),
        );
        let mut cyc = Cycle::from_steps(inst, &flow, steps);
        if cyc.scalar_cost(cost) > 0 {
            cyc = cyc.reversed(inst, &flow);
        }
        flow = apply_cycle(&flow, &cyc, cyc.max_step)?;
    }
}

/// Cost-minimal feasible flow with a certifying tree structure.
pub fn solve_scalar_mcf(inst: &Instance, cost: &[i64]) -> Result<TreeFlow> {
    check_cost(inst, cost)?;
    basic_checks(inst)?;
    let flow = successive_shortest_paths(inst, cost)?;
    extract_tree(inst, cost, flow)
}

/// Optimal for `first`, and among those optimal for `second`.
///
/// Arcs with nonzero reduced cost after the first stage are frozen at their
/// flow; the second stage optimizes over what is left.
pub fn lexmin_flow(inst: &Instance, first: &[i64], second: &[i64]) -> Result<TreeFlow> {
    check_cost(inst, second)?;
    let stage1 = solve_scalar_mcf(inst, first)?;
    let y = node_potentials(inst, &stage1.flow, first)?;
    let rc = reduced_costs(inst, &y, first);
    let bounds: Vec<(i64, i64)> = inst
        .arcs
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if rc[i] != 0 {
                (stage1.flow[i], stage1.flow[i])
            } else {
                (a.lower, a.upper)
            }
        })
        .collect();
    let stage2 = solve_scalar_mcf(&inst.with_bounds(&bounds), second)?;
    TreeFlow::new(inst, stage2.flow, stage2.tree_arcs)
}

/// Finds a negative-cost residual cycle, if any.
pub fn find_negative_cycle(inst: &Instance, flow: &[i64], cost: &[i64]) -> Option<Cycle> {
    let n = inst.node_count;
    let res = residual(inst, flow);
    let mut dist = vec![0i64; n];
    let mut pred: Vec<Option<Step>> = vec![None; n];
    let mut last = None;
    for _ in 0..n {
        last = None;
        for r in &res.arcs {
            let nd = dist[r.tail] + r.step.cost(cost);
            if nd < dist[r.head] {
                dist[r.head] = nd;
                pred[r.head] = Some(r.step);
                last = Some(r.head);
            }
        }
        last?;
    }
    let mut v = last?;
    for _ in 0..n {
        v = pred[v]?.tail(inst);
    }
    let start = v;
    let mut steps = Vec::new();
    loop {
        let s = pred[v]?;
        steps.push(s);
        v = s.tail(inst);
        if v == start {
            break;
        }
    }
    steps.reverse();
    Some(Cycle::from_steps(inst, flow, steps))
}

/// Cancels negative residual cycles until `flow` is optimal for `cost`.
pub fn cancel_negative_cycles(inst: &Instance, flow: &[i64], cost: &[i64]) -> Result<Flow> {
    inst.check_arity(flow)?;
    check_cost(inst, cost)?;
    let mut flow = flow.to_vec();
    while let Some(cyc) = find_negative_cycle(inst, &flow, cost) {
        flow = apply_cycle(&flow, &cyc, cyc.max_step)?;
    }
    Ok(flow)
}

/// Image of `flow`, checked for arity.
pub fn flow_image(inst: &Instance, flow: &[i64]) -> Result<BiCost> {
    inst.check_arity(flow)?;
    Ok(image(inst, flow))
}
