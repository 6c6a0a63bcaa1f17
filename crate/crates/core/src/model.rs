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

//! Instances, flows and cost evaluation.

use std::fmt;

use crate::error::{Error, Result};

/// Directed arc with integer bounds and two integer unit costs.
///
/// Nodes are 0-based here; the text format uses 1-based ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub src: usize,
    pub dst: usize,
    pub lower: i64,
    pub upper: i64,
    pub cost1: i64,
    pub cost2: i64,
}

impl Arc {
    pub fn new(src: usize, dst: usize, lower: i64, upper: i64, cost1: i64, cost2: i64) -> Self {
        Self {
            src,
            dst,
            lower,
            upper,
            cost1,
            cost2,
        }
    }
}

/// Integer flow value per arc, indexed by arc position.
pub type Flow = Vec<i64>;

/// Per-arc scalar cost vector.
pub type ScalarCost = Vec<i64>;

/// Image of a flow in objective space. Ordered lexicographically by `(c1, c2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiCost {
    pub c1: i64,
    pub c2: i64,
}

impl BiCost {
    pub const fn new(c1: i64, c2: i64) -> Self {
        Self { c1, c2 }
    }

    /// True if `self` is componentwise no worse than `other` and differs from it.
    pub fn dominates(&self, other: &BiCost) -> bool {
        self.c1 <= other.c1 && self.c2 <= other.c2 && self != other
    }
}

impl std::ops::Add for BiCost {
    type Output = BiCost;
    fn add(self, rhs: BiCost) -> BiCost {
        BiCost::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl std::ops::Sub for BiCost {
    type Output = BiCost;
    fn sub(self, rhs: BiCost) -> BiCost {
        BiCost::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl fmt::Display for BiCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c1, self.c2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    pub node_count: usize,
    pub arcs: Vec<Arc>,
    pub balances: Vec<i64>,
}

impl Instance {
    pub fn new(node_count: usize, arcs: Vec<Arc>, balances: Vec<i64>) -> Self {
        Self {
            node_count,
            arcs,
            balances,
        }
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn cost1(&self) -> ScalarCost {
        self.arcs.iter().map(|a| a.cost1).collect()
    }

    pub fn cost2(&self) -> ScalarCost {
        self.arcs.iter().map(|a| a.cost2).collect()
    }

    /// `w1 * c1 + w2 * c2` per arc.
    pub fn weighted_cost(&self, w1: i64, w2: i64) -> ScalarCost {
        self.arcs.iter().map(|a| w1 * a.cost1 + w2 * a.cost2).collect()
    }

    /// Copy of the instance with every arc's bounds replaced.
    pub fn with_bounds(&self, bounds: &[(i64, i64)]) -> Instance {
        let mut out = self.clone();
        for (a, &(l, u)) in out.arcs.iter_mut().zip(bounds) {
            a.lower = l;
            a.upper = u;
        }
        out
    }

    pub fn bounds(&self) -> Vec<(i64, i64)> {
        self.arcs.iter().map(|a| (a.lower, a.upper)).collect()
    }

    /// Connected components of the underlying undirected graph, as a label
    /// per node plus the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.node_count;
        let mut adj = vec![Vec::new(); n];
        for a in &self.arcs {
            if a.src < n && a.dst < n {
                adj[a.src].push(a.dst);
                adj[a.dst].push(a.src);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Net outflow minus inflow at every node.
    pub fn net_outflow(&self, flow: &[i64]) -> Vec<i64> {
        let mut net = vec![0; self.node_count];
        for (a, &f) in self.arcs.iter().zip(flow) {
            net[a.src] += f;
            net[a.dst] -= f;
        }
        net
    }

    pub(crate) fn check_arity(&self, flow: &[i64]) -> Result<()> {
        if flow.len() != self.arcs.len() {
            return Err(Error::ArityMismatch {
                expected: self.arcs.len(),
                found: flow.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoNodes,
    BalanceLength { expected: usize, found: usize },
    BalanceSum(i64),
    NodeOutOfRange { arc: usize, node: usize },
    SelfLoop { arc: usize },
    CapacityOrder { arc: usize },
    NegativeLower { arc: usize },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "instance has no nodes"),
            Violation::BalanceLength { expected, found } => {
                write!(f, "{found} balances given for {expected} nodes")
            }
            Violation::BalanceSum(s) => write!(f, "balance sum ≠ 0 (sum is {s})"),
            Violation::NodeOutOfRange { arc, node } => {
                write!(f, "node index out of range: arc {} references node {}", arc + 1, node + 1)
            }
            Violation::SelfLoop { arc } => write!(f, "arc {} is a self-loop", arc + 1),
            Violation::CapacityOrder { arc } => {
                write!(f, "arc {} has lower bound above upper bound", arc + 1)
            }
            Violation::NegativeLower { arc } => {
                write!(f, "arc {} has a negative lower bound", arc + 1)
            }
            Violation::Disconnected { components } => {
                write!(f, "graph is not connected ({components} components)")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    /// Converts a non-empty report into an error listing every violation.
    pub fn into_result(self) -> Result<()> {
        if self.is_empty() {
            return Ok(());
        }
        Err(Error::InvalidInstance(self.to_string()))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let mut violations = Vec::new();
    let n = inst.node_count;
    if n == 0 {
        violations.push(Violation::NoNodes);
    }
    if inst.balances.len() != n {
        violations.push(Violation::BalanceLength {
            expected: n,
            found: inst.balances.len(),
        });
    }
    let sum: i64 = inst.balances.iter().sum();
    if sum != 0 {
        violations.push(Violation::BalanceSum(sum));
    }
    let mut ranges_ok = true;
    for (i, a) in inst.arcs.iter().enumerate() {
        for node in [a.src, a.dst] {
            if node >= n {
                violations.push(Violation::NodeOutOfRange { arc: i, node });
                ranges_ok = false;
            }
        }
        if a.src == a.dst {
            violations.push(Violation::SelfLoop { arc: i });
        }
        if a.lower < 0 {
            violations.push(Violation::NegativeLower { arc: i });
        }
        if a.lower > a.upper {
            violations.push(Violation::CapacityOrder { arc: i });
        }
    }
    if ranges_ok && n > 0 {
        let (_, components) = inst.components();
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }
    }
    ValidationReport { violations }
}

pub fn evaluate_cost(inst: &Instance, flow: &[i64]) -> Result<BiCost> {
    inst.check_arity(flow)?;
    Ok(image(inst, flow))
}

/// `evaluate_cost` without the arity check.
pub(crate) fn image(inst: &Instance, flow: &[i64]) -> BiCost {
    let mut c = BiCost::default();
    for (a, &f) in inst.arcs.iter().zip(flow) {
        c.c1 += a.cost1 * f;
        c.c2 += a.cost2 * f;
    }
    c
}

pub(crate) fn scalar_value(cost: &[i64], flow: &[i64]) -> i64 {
    cost.iter().zip(flow).map(|(c, f)| c * f).sum()
}

/// True iff `flow` meets every bound and every balance equation exactly.
/// A flow of the wrong length is simply infeasible.
pub fn check_flow_feasible(inst: &Instance, flow: &[i64]) -> bool {
    if flow.len() != inst.arcs.len() {
        return false;
    }
    if inst
        .arcs
        .iter()
        .zip(flow)
        .any(|(a, &f)| f < a.lower || f > a.upper)
    {
        return false;
    }
    inst.net_outflow(flow) == inst.balances
}
