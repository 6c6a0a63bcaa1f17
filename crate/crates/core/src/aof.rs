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

//! All supported efficient flows: on every face, enumerate the flows of the
//! reduced network by binary partition driven by proper residual cycles.

use std::collections::{HashSet, VecDeque};

use crate::error::Result;
use crate::frontier::{extreme_supported_points_with, map_faces, FrontierList, WeightVector};
use crate::mcf::{apply_cycle, residual, Cycle, Step};
use crate::model::{check_flow_feasible, Flow, Instance};

/// Tightened per-arc bounds of one partition node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Overrides {
    pub bounds: Vec<(i64, i64)>,
}

impl Overrides {
    /// The instance's own bounds.
    pub fn none(inst: &Instance) -> Self {
        Self {
            bounds: inst.bounds(),
        }
    }

    pub fn restrict(&self, inst: &Instance) -> Instance {
        inst.with_bounds(&self.bounds)
    }

    pub fn with_upper(&self, arc: usize, upper: i64) -> Self {
        let mut out = self.clone();
        out.bounds[arc].1 = out.bounds[arc].1.min(upper);
        out
    }

    pub fn with_lower(&self, arc: usize, lower: i64) -> Self {
        let mut out = self.clone();
        out.bounds[arc].0 = out.bounds[arc].0.max(lower);
        out
    }

    /// Splits on `arc` at the value `flow` has there. The first part keeps
    /// `flow`; the second holds every flow on the side `toward` points to.
    pub(crate) fn split(&self, flow: &[i64], toward: Step) -> (Self, Self) {
        let (a, v) = (toward.arc, flow[toward.arc]);
        if toward.forward {
            (self.with_upper(a, v), self.with_lower(a, v + 1))
        } else {
            (self.with_lower(a, v), self.with_upper(a, v - 1))
        }
    }
}

/// A proper residual cycle of `flow` in `inst`, or `None` if there is none.
///
/// For each residual arc `u -> v` in order, searches breadth-first for a path
/// from `v` back to `u` that avoids both copies of that arc; the first hit is
/// returned. A simple path cannot use both copies of any arc, so the result
/// is proper, and every proper cycle contains such an arc-plus-path pair.
pub fn proper_cycle(inst: &Instance, flow: &[i64]) -> Option<Cycle> {
    let res = residual(inst, flow);
    let out = res.out_lists();
    let n = inst.node_count;
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    for first in &res.arcs {
        pred.fill(None);
        seen.fill(false);
        seen[first.head] = true;
        let mut queue = VecDeque::from([first.head]);
        'bfs: while let Some(v) = queue.pop_front() {
            for &r in &out[v] {
                let arc = &res.arcs[r];
                if arc.step.arc == first.step.arc || seen[arc.head] {
                    continue;
                }
                seen[arc.head] = true;
                pred[arc.head] = Some(r);
                if arc.head == first.tail {
                    break 'bfs;
                }
                queue.push_back(arc.head);
            }
        }
        if !seen[first.tail] {
            continue;
        }
        let mut back = Vec::new();
        let mut v = first.tail;
        while let Some(r) = pred[v] {
            back.push(res.arcs[r].step);
            v = res.arcs[r].tail;
        }
        let mut steps = vec![first.step];
        steps.extend(back.into_iter().rev());
        return Some(Cycle::from_steps(inst, flow, steps));
    }
    None
}

/// [`proper_cycle`] in the network restricted by `overrides`.
pub fn find_proper_cycle(inst: &Instance, flow: &[i64], overrides: &Overrides) -> Option<Cycle> {
    proper_cycle(&overrides.restrict(inst), flow)
}

/// Result of one partition enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Leaf flows in depth-first order; each feasible flow exactly once.
    pub flows: Vec<Flow>,
    /// Partition nodes visited.
    pub nodes: usize,
}

/// Every feasible flow of `inst`, starting from the feasible flow `start`.
///
/// A node with a proper cycle is split on the lowest arc where the flow and
/// its one-unit neighbour along the cycle differ; a node without one holds a
/// single flow.
pub fn enumerate_optimal_flows(inst: &Instance, start: &[i64]) -> Result<Enumeration> {
    inst.check_arity(start)?;
    if !check_flow_feasible(inst, start) {
        return Err(crate::Error::Infeasible);
    }
    let mut stack = vec![(Overrides::none(inst), start.to_vec())];
    let mut flows = Vec::new();
    let mut nodes = 0;
    while let Some((ov, flow)) = stack.pop() {
        nodes += 1;
        let Some(cyc) = find_proper_cycle(inst, &flow, &ov) else {
            flows.push(flow);
            continue;
        };
        let other = apply_cycle(&flow, &cyc, 1)?;
        let a = (0..flow.len())
            .find(|&a| flow[a] != other[a])
            .expect("a cycle changes at least one arc");
        let (keep, moved) = ov.split(&flow, Step::new(a, other[a] > flow[a]));
        stack.push((moved, other));
        stack.push((keep, flow));
    }
    Ok(Enumeration { flows, nodes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceFlows {
    pub weight: WeightVector,
    /// Flows of this face's reduced network.
    pub flow_count: usize,
    pub nodes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportedFlows {
    pub frontier: FrontierList,
    /// Distinct supported efficient flows, sorted.
    pub flows: Vec<Flow>,
    pub faces: Vec<FaceFlows>,
}

/// All supported efficient flows, each once.
pub fn all_supported_flows(inst: &Instance) -> Result<SupportedFlows> {
    all_supported_flows_with(inst, false)
}

pub fn all_supported_flows_with(inst: &Instance, parallel: bool) -> Result<SupportedFlows> {
    let frontier = extreme_supported_points_with(inst, parallel)?;
    let faces = frontier.faces();
    let per_face = map_faces(&faces, parallel, |face| {
        let red = face.reduce(inst)?;
        let e = enumerate_optimal_flows(&red.instance, &red.restrict(&red.base_flow))?;
        let lifted: Vec<Flow> = e
            .flows
            .iter()
            .map(|f| red.lift(f))
            .collect::<Result<_>>()?;
        let stats = FaceFlows {
            weight: face.weight,
            flow_count: lifted.len(),
            nodes: e.nodes,
        };
        Ok((stats, lifted))
    })?;
    let mut seen = HashSet::new();
    let mut flows = Vec::new();
    let mut stats = Vec::with_capacity(per_face.len());
    for (s, lifted) in per_face {
        stats.push(s);
        for f in lifted {
            if seen.insert(f.clone()) {
                flows.push(f);
            }
        }
    }
    flows.sort_unstable();
    Ok(SupportedFlows {
        frontier,
        flows,
        faces: stats,
    })
}
