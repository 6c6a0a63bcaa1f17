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

//! The adjusted method: on each face, branch over distinct `c1` values using
//! the cheapest strictly positive proper cycle instead of an arbitrary one.

use std::collections::BTreeMap;

use crate::aof::Overrides;
use crate::error::{Error, Result};
use crate::frontier::{
    extreme_supported_points_with, map_faces, FrontierList, ReducedInstance, SupportedPoint,
    WeightVector,
};
use crate::mcf::{
    apply_cycle, cancel_negative_cycles, node_potentials, reduced_costs, residual, Cycle, Step,
};
use crate::model::{check_flow_feasible, image, scalar_value, BiCost, Flow, Instance};

/// All-pairs shortest residual distances with next-step path recovery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    /// `dist[i][j]`, `None` when `j` is unreachable from `i`.
    pub dist: Vec<Vec<Option<i64>>>,
    next: Vec<Vec<Option<Step>>>,
}

impl DistanceTable {
    /// Floyd–Warshall over `(tail, head, weight, step)` edges. With parallel
    /// edges the first of the cheapest is kept.
    fn build(inst: &Instance, edges: &[(usize, usize, i64, Step)]) -> Self {
        let n = inst.node_count;
        let mut dist = vec![vec![None; n]; n];
        let mut next = vec![vec![None; n]; n];
        for (i, row) in dist.iter_mut().enumerate() {
            row[i] = Some(0);
        }
        for &(u, v, w, s) in edges {
            if u != v && dist[u][v].is_none_or(|d| w < d) {
                dist[u][v] = Some(w);
                next[u][v] = Some(s);
            }
        }
        for k in 0..n {
            for i in 0..n {
                let Some(dik) = dist[i][k] else { continue };
                for j in 0..n {
                    let Some(dkj) = dist[k][j] else { continue };
                    if dist[i][j].is_none_or(|d| dik + dkj < d) {
                        dist[i][j] = Some(dik + dkj);
                        next[i][j] = next[i][k];
                    }
                }
            }
        }
        DistanceTable { dist, next }
    }

    pub fn node_count(&self) -> usize {
        self.dist.len()
    }

    pub fn distance(&self, from: usize, to: usize) -> Option<i64> {
        self.dist[from][to]
    }

    /// Residual steps of a shortest path, empty for `from == to`.
    pub fn path(&self, inst: &Instance, from: usize, to: usize) -> Option<Vec<Step>> {
        self.dist[from][to]?;
        let mut steps = Vec::new();
        let mut v = from;
        while v != to {
            let s = self.next[v][to]?;
            steps.push(s);
            v = s.head(inst);
            if steps.len() > self.node_count() {
                return None;
            }
        }
        Some(steps)
    }
}

/// Residual arcs of `flow` with their reduced `c1`, after checking that all
/// are nonnegative.
fn reduced_residual(inst: &Instance, flow: &[i64]) -> Result<Vec<(usize, usize, i64, Step)>> {
    let c1 = inst.cost1();
    let y = node_potentials(inst, flow, &c1)?;
    let rc = reduced_costs(inst, &y, &c1);
    let edges: Vec<_> = residual(inst, flow)
        .arcs
        .iter()
        .map(|r| (r.tail, r.head, r.step.cost(&rc), r.step))
        .collect();
    if edges.iter().any(|e| e.2 < 0) {
        return Err(Error::NotOptimal);
    }
    Ok(edges)
}

/// Distances under reduced `c1` in the residual graph of `flow`, which must be
/// `c1`-optimal in the network restricted by `overrides`.
pub fn distance_table(inst: &Instance, flow: &[i64], overrides: &Overrides) -> Result<DistanceTable> {
    let restricted = overrides.restrict(inst);
    let edges = reduced_residual(&restricted, flow)?;
    Ok(DistanceTable::build(&restricted, &edges))
}

/// The arc that closes the cheapest strictly positive proper cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub step: Step,
    /// `c1` cost of the cycle.
    pub value: i64,
    pub cycle: Cycle,
}

/// Over residual arcs with positive reduced cost and no residual twin, the
/// minimum of reduced cost plus the distance back; ties go to the lowest
/// `(tail, head)` and then the lowest arc.
fn cheapest_positive_cycle(inst: &Instance, flow: &[i64]) -> Result<Option<Candidate>> {
    let edges = reduced_residual(inst, flow)?;
    let table = DistanceTable::build(inst, &edges);
    let present: std::collections::HashSet<Step> = edges.iter().map(|e| e.3).collect();
    let best = edges
        .iter()
        .filter(|&&(_, _, w, s)| w > 0 && !present.contains(&s.twin()))
        .filter_map(|&(u, v, w, s)| table.distance(v, u).map(|d| (w + d, u, v, s)))
        .min_by_key(|&(value, u, v, s)| (value, u, v, s.arc));
    let Some((value, u, v, step)) = best else {
        return Ok(None);
    };
    let mut steps = vec![step];
    steps.extend(
        table
            .path(inst, v, u)
            .ok_or_else(|| Error::Internal("distance table path recovery failed".into()))?,
    );
    let cycle = Cycle::from_steps(inst, flow, steps);
    if !cycle.is_closed(inst) || !cycle.is_proper() || cycle.scalar_cost(&inst.cost1()) != value {
        return Err(Error::Internal("candidate cycle does not realize its value".into()));
    }
    Ok(Some(Candidate { step, value, cycle }))
}

fn checked_restriction(inst: &Instance, flow: &[i64], overrides: &Overrides) -> Result<Instance> {
    inst.check_arity(flow)?;
    let restricted = overrides.restrict(inst);
    if !check_flow_feasible(&restricted, flow) {
        return Err(Error::Infeasible);
    }
    Ok(restricted)
}

/// The cheapest positive proper cycle of a `c1`-optimal flow, with its
/// closing arc.
pub fn minimal_positive_cycle(
    inst: &Instance,
    flow: &[i64],
    overrides: &Overrides,
) -> Result<Option<Candidate>> {
    let restricted = checked_restriction(inst, flow, overrides)?;
    cheapest_positive_cycle(&restricted, flow)
}

/// `flow` moved one unit around the cheapest positive proper cycle: no
/// feasible flow of the restricted network has `c1` strictly between the two.
pub fn second_distinct_cost_flow(
    inst: &Instance,
    flow: &[i64],
    overrides: &Overrides,
) -> Result<Option<Flow>> {
    Ok(match minimal_positive_cycle(inst, flow, overrides)? {
        Some(c) => Some(apply_cycle(flow, &c.cycle, 1)?),
        None => None,
    })
}

/// One `c1` step taken inside a partition node, in reduced-network terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub overrides: Overrides,
    pub c1_before: i64,
    pub c1_after: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjustedFace {
    pub weight: WeightVector,
    pub reduced: ReducedInstance,
    /// Partition nodes without a positive cycle.
    pub leaves: usize,
    pub nodes: usize,
    pub steps: Vec<StepRecord>,
}

impl AdjustedFace {
    pub fn branches(&self) -> usize {
        self.nodes
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjustedResult {
    pub frontier: FrontierList,
    /// Supported nondominated points sorted by `c1`.
    pub points: Vec<SupportedPoint>,
    pub faces: Vec<AdjustedFace>,
}

impl AdjustedResult {
    pub fn images(&self) -> Vec<BiCost> {
        self.points.iter().map(|p| p.point).collect()
    }
}

/// Binary partition over one face's reduced network.
///
/// Every node first restores `c1`-optimality of its seed, then splits on the
/// arc closing the cheapest positive cycle: one side keeps the seed, the other
/// is seeded with the flow one unit along that cycle.
fn explore_face(red: ReducedInstance) -> Result<(AdjustedFace, BTreeMap<BiCost, Flow>)> {
    let base = &red.instance;
    let c1 = base.cost1();
    let mut points = BTreeMap::new();
    let mut stack = vec![(Overrides::none(base), red.restrict(&red.base_flow))];
    let (mut leaves, mut nodes) = (0, 0);
    let mut steps = Vec::new();
    while let Some((ov, seed)) = stack.pop() {
        nodes += 1;
        let restricted = ov.restrict(base);
        let flow = cancel_negative_cycles(&restricted, &seed, &c1)?;
        let point = image(base, &flow) + red.offset;
        if let std::collections::btree_map::Entry::Vacant(e) = points.entry(point) {
            e.insert(red.lift(&flow)?);
        }
        let Some(cand) = cheapest_positive_cycle(&restricted, &flow)? else {
            leaves += 1;
            continue;
        };
        let next = apply_cycle(&flow, &cand.cycle, 1)?;
        steps.push(StepRecord {
            overrides: ov.clone(),
            c1_before: scalar_value(&c1, &flow),
            c1_after: scalar_value(&c1, &next),
        });
        let (keep, moved) = ov.split(&flow, cand.step);
        stack.push((moved, next));
        stack.push((keep, flow));
    }
    let face = AdjustedFace {
        weight: red.weight,
        reduced: red,
        leaves,
        nodes,
        steps,
    };
    Ok((face, points))
}

/// All supported nondominated points, one witness flow each.
pub fn all_supported_vectors_adjusted(inst: &Instance) -> Result<AdjustedResult> {
    all_supported_vectors_adjusted_with(inst, false)
}

pub fn all_supported_vectors_adjusted_with(inst: &Instance, parallel: bool) -> Result<AdjustedResult> {
    let frontier = extreme_supported_points_with(inst, parallel)?;
    let faces = frontier.faces();
    let per_face = map_faces(&faces, parallel, |face| explore_face(face.reduce(inst)?))?;
    let mut points = BTreeMap::new();
    let mut out_faces = Vec::with_capacity(per_face.len());
    for (face, pts) in per_face {
        out_faces.push(face);
        for (p, w) in pts {
            points.entry(p).or_insert(w);
        }
    }
    let points = points
        .into_iter()
        .map(|(point, witness)| SupportedPoint { point, witness })
        .collect();
    Ok(AdjustedResult {
        frontier,
        points,
        faces: out_faces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontier::reduce_network;
    use crate::generators::{gen_example_backarcs, gen_example_path_cycles, gen_subset_sum};
    use crate::mcf::solve_scalar_mcf;
    use crate::model::tests::t1;
    use crate::model::Arc;

    fn reduced_t1() -> Instance {
        let w = WeightVector::new(4, 2).unwrap();
        reduce_network(&t1(), w, &[2, 2, 0]).unwrap().instance
    }

    #[test]
    fn distance_table_of_reduced_t1() {
        let inst = reduced_t1();
        let t = distance_table(&inst, &[2, 2, 0], &Overrides::none(&inst)).unwrap();
        // Potentials for c1 are (0, 2, 3): residual reduced costs are
        // 2->1: 1, 3->2: 0, 1->3: 0.
        let d: Vec<Vec<Option<i64>>> = t.dist.clone();
        assert_eq!(d[0], vec![Some(0), Some(0), Some(0)]);
        assert_eq!(d[1], vec![Some(1), Some(0), Some(1)]);
        assert_eq!(d[2], vec![Some(1), Some(0), Some(0)]);
        assert_eq!(t.path(&inst, 2, 0).unwrap().len(), 2);
    }

    #[test]
    fn one_way_tree_has_infinite_reverse_distances() {
        let inst = Instance::new(2, vec![Arc::new(0, 1, 0, 1, 1, 0)], vec![0, 0]);
        let t = distance_table(&inst, &[0], &Overrides::none(&inst)).unwrap();
        assert_eq!(t.distance(0, 1), Some(0));
        assert_eq!(t.distance(1, 0), None);
        let single = Instance::new(1, vec![], vec![0]);
        let t = distance_table(&single, &[], &Overrides::none(&single)).unwrap();
        assert_eq!(t.dist, vec![vec![Some(0)]]);
    }

    #[test]
    fn second_distinct_on_reduced_t1() {
        let inst = reduced_t1();
        let ov = Overrides::none(&inst);
        let next = second_distinct_cost_flow(&inst, &[2, 2, 0], &ov).unwrap().unwrap();
        assert_eq!(next, vec![1, 1, 1]);
        assert_eq!(image(&inst, &next).c1, 5);
        // Once the flow is pinned at the face's right end nothing remains.
        let pinned = ov.with_lower(2, 2);
        assert!(second_distinct_cost_flow(&inst, &[0, 0, 2], &pinned).unwrap().is_none());
        assert_eq!(
            second_distinct_cost_flow(&inst, &[1, 1, 1], &ov),
            Err(Error::NotOptimal)
        );
    }

    #[test]
    fn path_cycles_next_flow_uses_the_costly_arc() {
        let inst = gen_example_path_cycles(5, 10, 5).unwrap();
        let start = solve_scalar_mcf(&inst, &inst.cost1()).unwrap().flow;
        let cand = minimal_positive_cycle(&inst, &start, &Overrides::none(&inst))
            .unwrap()
            .unwrap();
        assert_eq!(cand.value, 1);
        assert_eq!(cand.step, Step::new(6, true));
    }

    #[test]
    fn adjusted_on_examples() {
        let r = all_supported_vectors_adjusted(&t1()).unwrap();
        assert_eq!(
            r.images(),
            vec![BiCost::new(4, 6), BiCost::new(5, 4), BiCost::new(6, 2)]
        );
        let r = all_supported_vectors_adjusted(&gen_example_path_cycles(5, 10, 5).unwrap()).unwrap();
        assert_eq!(r.points.len(), 6);
        assert_eq!(r.faces.len(), 1);
        assert_eq!(r.faces[0].leaves, 6);
        let r = all_supported_vectors_adjusted(&gen_example_backarcs(5, 5).unwrap()).unwrap();
        assert_eq!(r.points.len(), 6);
    }

    #[test]
    fn subset_sum_vectors_are_all_supported() {
        let inst = gen_subset_sum(&[3, 5, 7]).unwrap();
        let r = all_supported_vectors_adjusted(&inst).unwrap();
        assert_eq!(r.faces.len(), 1);
        let c1: Vec<i64> = r.images().iter().map(|p| p.c1).collect();
        assert_eq!(c1, vec![0, 3, 5, 7, 8, 10, 12, 15]);
        for p in &r.points {
            assert_eq!(image(&inst, &p.witness), p.point);
        }
    }
}
