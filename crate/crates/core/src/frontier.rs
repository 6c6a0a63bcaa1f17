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

//! Extreme supported points, face weights and the reduced network of a face.

use crate::error::{Error, Result};
use crate::mcf::{lexmin_flow, node_potentials, reduced_costs, TreeFlow};
use crate::model::{check_flow_feasible, image, BiCost, Flow, Instance, ScalarCost};

/// Strictly positive integer weights `(w1, w2)` of a weighted-sum objective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    pub w1: i64,
    pub w2: i64,
}

impl WeightVector {
    pub fn new(w1: i64, w2: i64) -> Result<Self> {
        if w1 <= 0 || w2 <= 0 {
            return Err(Error::InvalidFace(format!("weights ({w1}, {w2}) are not positive")));
        }
        Ok(Self { w1, w2 })
    }

    pub fn scalarize(&self, inst: &Instance) -> ScalarCost {
        inst.weighted_cost(self.w1, self.w2)
    }

    pub fn value(&self, p: BiCost) -> i64 {
        self.w1 * p.c1 + self.w2 * p.c2
    }
}

/// Normal of the segment between two consecutive extreme points:
/// `(c2(y) - c2(z), c1(z) - c1(y))`.
pub fn face_weight(y: BiCost, z: BiCost) -> Result<WeightVector> {
    if y.c1 >= z.c1 || y.c2 <= z.c2 {
        return Err(Error::InvalidFace(format!(
            "{y} and {z} are not ordered along the frontier"
        )));
    }
    WeightVector::new(y.c2 - z.c2, z.c1 - y.c1)
}

/// A nondominated image with one full flow attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportedPoint {
    pub point: BiCost,
    pub witness: Flow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierPoint {
    pub point: BiCost,
    pub witness: TreeFlow,
}

/// Extreme supported points, strictly increasing in `c1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierList {
    pub points: Vec<FrontierPoint>,
}

/// Segment between two adjacent extreme points.
///
/// An instance with a single nondominated point has one degenerate face with
/// `left == right` and weights `(1, 1)`.
#[derive(Clone, Copy, Debug)]
pub struct Face<'a> {
    pub index: usize,
    pub left: &'a FrontierPoint,
    pub right: &'a FrontierPoint,
    pub weight: WeightVector,
}

impl Face<'_> {
    pub fn is_degenerate(&self) -> bool {
        self.left.point == self.right.point
    }

    /// Reduced network around the left endpoint's witness.
    pub fn reduce(&self, inst: &Instance) -> Result<ReducedInstance> {
        reduce_network(inst, self.weight, &self.left.witness.flow)
    }
}

/// Runs `work` on every face, concurrently when `parallel` is set. Results
/// keep face order.
pub(crate) fn map_faces<T: Send>(
    faces: &[Face<'_>],
    parallel: bool,
    work: impl Fn(&Face<'_>) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    if parallel {
        use rayon::prelude::*;
        faces.par_iter().map(&work).collect()
    } else {
        faces.iter().map(work).collect()
    }
}

impl FrontierList {
    pub fn images(&self) -> Vec<BiCost> {
        self.points.iter().map(|p| p.point).collect()
    }

    pub fn faces(&self) -> Vec<Face<'_>> {
        if self.points.len() == 1 {
            let p = &self.points[0];
            return vec![Face {
                index: 0,
                left: p,
                right: p,
                weight: WeightVector { w1: 1, w2: 1 },
            }];
        }
        self.points
            .windows(2)
            .enumerate()
            .map(|(index, w)| Face {
                index,
                left: &w[0],
                right: &w[1],
                weight: face_weight(w[0].point, w[1].point)
                    .expect("frontier points are sorted and nondominated"),
            })
            .collect()
    }
}

fn frontier_point(inst: &Instance, witness: TreeFlow) -> FrontierPoint {
    FrontierPoint {
        point: image(inst, &witness.flow),
        witness,
    }
}

/// Extreme points strictly between `left` and `right`, in order.
fn between(
    inst: &Instance,
    c1: &[i64],
    left: &FrontierPoint,
    right: &FrontierPoint,
    parallel: bool,
) -> Result<Vec<FrontierPoint>> {
    let weight = face_weight(left.point, right.point)?;
    let tf = lexmin_flow(inst, &weight.scalarize(inst), c1)?;
    let mid = frontier_point(inst, tf);
    if weight.value(mid.point) >= weight.value(left.point) {
        return Ok(Vec::new());
    }
    let (lo, hi) = if parallel {
        rayon::join(
            || between(inst, c1, left, &mid, parallel),
            || between(inst, c1, &mid, right, parallel),
        )
    } else {
        (
            between(inst, c1, left, &mid, parallel),
            between(inst, c1, &mid, right, parallel),
        )
    };
    let mut out = lo?;
    out.push(mid);
    out.extend(hi?);
    Ok(out)
}

/// Every extreme supported point with one witness tree solution each, by
/// dichotomic weighted-sum search between the two lexicographic optima.
pub fn extreme_supported_points(inst: &Instance) -> Result<FrontierList> {
    extreme_supported_points_with(inst, false)
}

/// As [`extreme_supported_points`]; with `parallel` the two halves of every
/// split are searched concurrently.
pub fn extreme_supported_points_with(inst: &Instance, parallel: bool) -> Result<FrontierList> {
    let (c1, c2) = (inst.cost1(), inst.cost2());
    let left = frontier_point(inst, lexmin_flow(inst, &c1, &c2)?);
    let right = frontier_point(inst, lexmin_flow(inst, &c2, &c1)?);
    if left.point == right.point {
        return Ok(FrontierList { points: vec![left] });
    }
    let mut points = vec![left.clone()];
    points.extend(between(inst, &c1, &left, &right, parallel)?);
    points.push(right);
    Ok(FrontierList { points })
}

/// Subnetwork of the arcs with zero reduced cost under a weight vector, with
/// balances adjusted for the flow frozen on the removed arcs.
///
/// `instance` keeps every node of the base instance; `kept_arcs[i]` is the
/// base index of reduced arc `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    pub instance: Instance,
    pub kept_arcs: Vec<usize>,
    pub base_flow: Flow,
    pub weight: WeightVector,
    /// Cost of the removed arcs at `base_flow`.
    pub offset: BiCost,
}

impl ReducedInstance {
    pub fn restrict(&self, full: &[i64]) -> Flow {
        self.kept_arcs.iter().map(|&a| full[a]).collect()
    }

    /// Full flow that agrees with `rflow` on kept arcs and with the base flow
    /// elsewhere.
    pub fn lift(&self, rflow: &[i64]) -> Result<Flow> {
        self.instance.check_arity(rflow)?;
        if !check_flow_feasible(&self.instance, rflow) {
            return Err(Error::InfeasibleReducedFlow);
        }
        let mut full = self.base_flow.clone();
        for (&a, &f) in self.kept_arcs.iter().zip(rflow) {
            full[a] = f;
        }
        Ok(full)
    }

    /// Image of the lifted flow.
    pub fn image(&self, rflow: &[i64]) -> BiCost {
        image(&self.instance, rflow) + self.offset
    }

    /// Nodes incident to at least one kept arc.
    pub fn active_nodes(&self) -> Vec<usize> {
        let mut seen = vec![false; self.instance.node_count];
        for a in &self.instance.arcs {
            seen[a.src] = true;
            seen[a.dst] = true;
        }
        (0..seen.len()).filter(|&v| seen[v]).collect()
    }

    /// Connected components among the active nodes.
    pub fn active_components(&self) -> usize {
        let (_, all) = self.instance.components();
        let isolated = self.instance.node_count - self.active_nodes().len();
        all - isolated
    }
}

/// Keeps the arcs whose reduced cost under `weight` is zero at `flow`.
///
/// `flow` must be optimal for the weighted cost; otherwise `NotOptimal`.
pub fn reduce_network(
    inst: &Instance,
    weight: WeightVector,
    flow: &[i64],
) -> Result<ReducedInstance> {
    let w = weight.scalarize(inst);
    let y = node_potentials(inst, flow, &w)?;
    let rc = reduced_costs(inst, &y, &w);
    let mut kept_arcs = Vec::new();
    let mut arcs = Vec::new();
    let mut balances = inst.balances.clone();
    let mut offset = BiCost::default();
    for (i, a) in inst.arcs.iter().enumerate() {
        if rc[i] == 0 {
            kept_arcs.push(i);
            arcs.push(*a);
        } else {
            balances[a.src] -= flow[i];
            balances[a.dst] += flow[i];
            offset.c1 += a.cost1 * flow[i];
            offset.c2 += a.cost2 * flow[i];
        }
    }
    Ok(ReducedInstance {
        instance: Instance::new(inst.node_count, arcs, balances),
        kept_arcs,
        base_flow: flow.to_vec(),
        weight,
        offset,
    })
}

/// See [`ReducedInstance::lift`].
pub fn lift_flow(red: &ReducedInstance, rflow: &[i64]) -> Result<Flow> {
    red.lift(rflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example_five_node, gen_example_backarcs};
    use crate::mcf::check_optimal;
    use crate::model::tests::t1;
    use crate::model::Arc;

    #[test]
    fn face_weights() {
        let w = face_weight(BiCost::new(3, 6), BiCost::new(8, 3)).unwrap();
        assert_eq!((w.w1, w.w2), (3, 5));
        let w = face_weight(BiCost::new(4, 6), BiCost::new(6, 2)).unwrap();
        assert_eq!((w.w1, w.w2), (4, 2));
        assert_eq!(w.value(BiCost::new(4, 6)), 28);
        assert_eq!(w.value(BiCost::new(6, 2)), 28);
        let w = face_weight(BiCost::new(0, 1), BiCost::new(1, 0)).unwrap();
        assert_eq!((w.w1, w.w2), (1, 1));
        assert!(face_weight(BiCost::new(6, 2), BiCost::new(4, 6)).is_err());
        assert!(face_weight(BiCost::new(4, 6), BiCost::new(5, 7)).is_err());
    }

    #[test]
    fn t1_extreme_points() {
        let list = extreme_supported_points(&t1()).unwrap();
        assert_eq!(list.images(), vec![BiCost::new(4, 6), BiCost::new(6, 2)]);
        let faces = list.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!((faces[0].weight.w1, faces[0].weight.w2), (4, 2));
    }

    #[test]
    fn backarcs_has_two_extreme_points() {
        let inst = gen_example_backarcs(5, 5).unwrap();
        assert_eq!(extreme_supported_points(&inst).unwrap().points.len(), 2);
    }

    #[test]
    fn ideal_point_gives_single_degenerate_face() {
        let inst = Instance::new(
            2,
            vec![Arc::new(0, 1, 0, 1, 1, 1), Arc::new(0, 1, 0, 1, 2, 3)],
            vec![1, -1],
        );
        let list = extreme_supported_points(&inst).unwrap();
        assert_eq!(list.images(), vec![BiCost::new(1, 1)]);
        let faces = list.faces();
        assert_eq!(faces.len(), 1);
        assert!(faces[0].is_degenerate());
    }

    #[test]
    fn five_node_frontier_is_convex_and_parallel_agrees() {
        let inst = example_five_node();
        let list = extreme_supported_points(&inst).unwrap();
        let pts = list.images();
        assert_eq!(pts.first(), Some(&BiCost::new(96, 144)));
        assert_eq!(pts.last(), Some(&BiCost::new(136, 99)));
        for w in pts.windows(3) {
            let (a, b, c) = (w[0], w[1], w[2]);
            let cross = (b.c1 - a.c1) * (c.c2 - a.c2) - (b.c2 - a.c2) * (c.c1 - a.c1);
            assert!(cross > 0, "{a} {b} {c}");
        }
        assert_eq!(extreme_supported_points_with(&inst, true).unwrap(), list);
        for face in list.faces() {
            let w = face.weight;
            assert_eq!(w.value(face.left.point), w.value(face.right.point));
            let cost = w.scalarize(&inst);
            assert!(check_optimal(&inst, &face.left.witness.flow, &cost));
            assert!(check_optimal(&inst, &face.right.witness.flow, &cost));
        }
    }

    #[test]
    fn reduced_t1_keeps_everything() {
        let inst = t1();
        let w = WeightVector::new(4, 2).unwrap();
        let red = reduce_network(&inst, w, &[2, 2, 0]).unwrap();
        assert_eq!(red.kept_arcs, vec![0, 1, 2]);
        assert_eq!(red.instance.balances, inst.balances);
        let lifted = lift_flow(&red, &[0, 0, 2]).unwrap();
        assert_eq!(lifted, vec![0, 0, 2]);
        assert_eq!(w.value(image(&inst, &lifted)), 28);
        assert_eq!(red.lift(&red.restrict(&red.base_flow)).unwrap(), red.base_flow);
        assert!(check_optimal(&inst, &lifted, &w.scalarize(&inst)));
        assert_eq!(red.lift(&[1, 1, 0]), Err(Error::InfeasibleReducedFlow));
    }

    #[test]
    fn removed_arc_adjusts_balances() {
        // Arc 0 carries 3 units at a strictly positive reduced cost: it must be
        // removed and its flow charged to the balances.
        let inst = Instance::new(
            3,
            vec![
                Arc::new(0, 1, 3, 5, 4, 4),
                Arc::new(1, 2, 0, 5, 1, 1),
                Arc::new(0, 2, 0, 5, 0, 0),
            ],
            vec![3, 0, -3],
        );
        let w = WeightVector::new(1, 1).unwrap();
        let flow = vec![3, 3, 0];
        assert!(check_optimal(&inst, &flow, &w.scalarize(&inst)));
        let red = reduce_network(&inst, w, &flow).unwrap();
        assert!(!red.kept_arcs.contains(&0));
        assert_eq!(red.instance.balances[0], 0);
        assert_eq!(red.instance.balances[1], 3);
        assert_eq!(red.offset, BiCost::new(12, 12));
    }

    #[test]
    fn non_optimal_flow_is_rejected() {
        let w = WeightVector::new(1, 0);
        assert!(w.is_err());
        let w = WeightVector::new(1, 1).unwrap();
        let inst = Instance::new(
            2,
            vec![Arc::new(0, 1, 0, 1, 1, 1), Arc::new(0, 1, 0, 1, 5, 5)],
            vec![1, -1],
        );
        assert_eq!(reduce_network(&inst, w, &[0, 1]), Err(Error::NotOptimal));
        let red = reduce_network(&inst, w, &[1, 0]).unwrap();
        assert_eq!(red.instance.arcs.len(), 1);
        assert_eq!(red.active_nodes(), vec![0, 1]);
        assert_eq!(red.active_components(), 1);
    }
}
