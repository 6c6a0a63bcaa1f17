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

//! Brute-force ground truth for small instances.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{image, BiCost, Flow, Instance};

/// Largest flow box `prod (upper - lower + 1)` the oracle will walk.
pub const ORACLE_GUARD: u128 = 10_000_000;

/// Size of the integer box spanned by the arc bounds, saturating.
pub fn flow_space_size(inst: &Instance) -> u128 {
    inst.arcs.iter().fold(1u128, |acc, a| {
        let width = (a.upper - a.lower + 1).max(0) as u128;
        acc.saturating_mul(width)
    })
}

/// Calls `visit` once for every feasible integer flow, in lexicographic
/// order of the flow vector. Refuses boxes larger than [`ORACLE_GUARD`].
pub fn for_each_feasible_flow(inst: &Instance, visit: impl FnMut(&[i64])) -> Result<()> {
    for_each_feasible_flow_guarded(inst, ORACLE_GUARD, visit)
}

/// [`for_each_feasible_flow`] with a caller-chosen box limit. Balance pruning
/// keeps the walk close to the number of feasible flows, so a larger limit is
/// reasonable for instances known to have few of them.
pub fn for_each_feasible_flow_guarded(
    inst: &Instance,
    guard: u128,
    mut visit: impl FnMut(&[i64]),
) -> Result<()> {
    let size = flow_space_size(inst);
    if size > guard {
        return Err(Error::GuardExceeded { size, guard });
    }
    let n = inst.node_count;
    let m = inst.arcs.len();
    if inst.balances.len() != n {
        return Err(Error::InvalidInstance("balance vector length".into()));
    }
    // lo[k][v], hi[k][v]: range of the net outflow arcs k.. can still add at v.
    let mut lo = vec![vec![0i64; n]; m + 1];
    let mut hi = vec![vec![0i64; n]; m + 1];
    for k in (0..m).rev() {
        let a = &inst.arcs[k];
        lo[k] = lo[k + 1].clone();
        hi[k] = hi[k + 1].clone();
        lo[k][a.src] += a.lower;
        hi[k][a.src] += a.upper;
        lo[k][a.dst] -= a.upper;
        hi[k][a.dst] -= a.lower;
    }
    let mut net = vec![0i64; n];
    let mut flow = vec![0i64; m];
    let feasible_tail = |net: &[i64], k: usize| {
        (0..n).all(|v| {
            let need = inst.balances[v] - net[v];
            lo[k][v] <= need && need <= hi[k][v]
        })
    };
    if !feasible_tail(&net, 0) {
        return Ok(());
    }
    // Explicit depth-first walk: `flow[k]` is the value being tried at depth k.
    let mut k = 0;
    if m == 0 {
        visit(&flow);
        return Ok(());
    }
    flow[0] = inst.arcs[0].lower - 1;
    loop {
        let a = &inst.arcs[k];
        if flow[k] >= a.lower {
            net[a.src] -= flow[k];
            net[a.dst] += flow[k];
        }
        flow[k] += 1;
        if flow[k] > a.upper {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            continue;
        }
        net[a.src] += flow[k];
        net[a.dst] -= flow[k];
        if !feasible_tail(&net, k + 1) {
            continue;
        }
        if k + 1 == m {
            visit(&flow);
        } else {
            k += 1;
            flow[k] = inst.arcs[k].lower - 1;
        }
    }
}

/// Every feasible integer flow exactly once.
pub fn enumerate_all_integer_flows(inst: &Instance) -> Result<Vec<Flow>> {
    let mut out = Vec::new();
    for_each_feasible_flow(inst, |f| out.push(f.to_vec()))?;
    Ok(out)
}

/// Points not dominated by any other point, sorted by `c1`, without repeats.
pub fn filter_nondominated(points: &[BiCost]) -> Vec<BiCost> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out: Vec<BiCost> = Vec::new();
    for p in sorted {
        // Sorted by (c1, c2): p is dominated iff some kept point has c2 <= p.c2.
        if out.last().is_none_or(|q| p.c2 < q.c2) {
            out.push(p);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Support {
    Extreme,
    /// On a hull edge but not a vertex.
    Supported,
    Unsupported,
}

impl Support {
    pub fn is_supported(self) -> bool {
        self != Support::Unsupported
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Support::Extreme => "extreme",
            Support::Supported => "supported-nonextreme",
            Support::Unsupported => "unsupported",
        })
    }
}

fn cross(o: BiCost, a: BiCost, b: BiCost) -> i128 {
    let (ax, ay) = ((a.c1 - o.c1) as i128, (a.c2 - o.c2) as i128);
    let (bx, by) = ((b.c1 - o.c1) as i128, (b.c2 - o.c2) as i128);
    ax * by - ay * bx
}

/// Labels each point of a nondominated set by its position relative to the
/// lower-left convex hull. Output is sorted by `c1`.
pub fn classify_supportedness(nondominated: &[BiCost]) -> Vec<(BiCost, Support)> {
    let pts = filter_nondominated(nondominated);
    let mut hull: Vec<BiCost> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let mut edge = 0;
    pts.iter()
        .map(|&p| {
            while edge + 1 < hull.len() && hull[edge + 1].c1 < p.c1 {
                edge += 1;
            }
            let label = if hull.binary_search(&p).is_ok() {
                Support::Extreme
            } else if cross(hull[edge], hull[edge + 1], p) == 0 {
                Support::Supported
            } else {
                Support::Unsupported
            };
            (p, label)
        })
        .collect()
}

/// Everything the oracle knows about one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub flow_count: usize,
    /// Flows per distinct image.
    pub images: BTreeMap<BiCost, usize>,
    pub classification: Vec<(BiCost, Support)>,
}

impl OracleReport {
    pub fn compute(inst: &Instance) -> Result<OracleReport> {
        let mut images = BTreeMap::new();
        let mut flow_count = 0;
        for_each_feasible_flow(inst, |f| {
            flow_count += 1;
            *images.entry(image(inst, f)).or_insert(0) += 1;
        })?;
        let all: Vec<BiCost> = images.keys().copied().collect();
        let classification = classify_supportedness(&filter_nondominated(&all));
        Ok(OracleReport {
            flow_count,
            images,
            classification,
        })
    }

    pub fn nondominated(&self) -> Vec<BiCost> {
        self.classification.iter().map(|(p, _)| *p).collect()
    }

    pub fn with_label(&self, pred: impl Fn(Support) -> bool) -> Vec<BiCost> {
        self.classification
            .iter()
            .filter(|(_, s)| pred(*s))
            .map(|(p, _)| *p)
            .collect()
    }

    pub fn extreme(&self) -> Vec<BiCost> {
        self.with_label(|s| s == Support::Extreme)
    }

    pub fn supported(&self) -> Vec<BiCost> {
        self.with_label(Support::is_supported)
    }

    /// Flows whose image is nondominated.
    pub fn efficient_flow_count(&self) -> usize {
        self.classification.iter().map(|(p, _)| self.images[p]).sum()
    }

    /// Flows whose image is supported nondominated.
    pub fn supported_flow_count(&self) -> usize {
        self.classification
            .iter()
            .filter(|(_, s)| s.is_supported())
            .map(|(p, _)| self.images[p])
            .sum()
    }
}
