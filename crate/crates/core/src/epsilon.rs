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

//! Epsilon-constraint sweeps over each face: minimize `c1` subject to
//! `c2 <= eps`, either over arc flows or over induced-cycle coefficients.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use bmcif_ilp::{solve_ilp, LinearModel, Relation};

use crate::error::{Error, Result};
use crate::frontier::{
    extreme_supported_points_with, map_faces, Face, FrontierList, ReducedInstance, SupportedPoint,
    WeightVector,
};
use crate::mcf::{induced_cycles, solve_scalar_mcf, Cycle, TreeFlow};
use crate::model::{BiCost, Flow, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// One variable per reduced-network arc.
    Standard,
    /// One variable per induced cycle of a `c1`-optimal tree solution.
    Compact,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Standard => "standard",
            Variant::Compact => "compact",
        })
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "standard" => Ok(Variant::Standard),
            "compact" => Ok(Variant::Compact),
            other => Err(format!("unknown variant {other:?} (expected standard or compact)")),
        }
    }
}

/// Outcome of one constrained solve.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    /// Full flow and its image, `None` if no reduced-network flow meets the bound.
    pub solution: Option<(Flow, BiCost)>,
    pub variables: usize,
    pub rows: usize,
    /// Branch-and-bound nodes.
    pub nodes: usize,
    pub elapsed: Duration,
}

impl StepOutcome {
    pub fn point(&self) -> Option<BiCost> {
        self.solution.as_ref().map(|s| s.1)
    }
}

/// Arc-variable model: balance rows on every active node, bounds as variable
/// boxes, and `sum c2 x <= eps - offset2`. The objective offset makes the
/// optimum the full-instance `c1`.
pub fn build_standard(red: &ReducedInstance, epsilon: i64) -> LinearModel {
    let inst = &red.instance;
    let mut model = LinearModel::new();
    for a in &inst.arcs {
        model.add_variable(a.lower, a.upper, a.cost1);
    }
    model.objective_offset = red.offset.c1;
    for v in red.active_nodes() {
        let row = inst
            .arcs
            .iter()
            .map(|a| i64::from(a.src == v) - i64::from(a.dst == v))
            .collect();
        model.add_constraint(row, Relation::Equal, inst.balances[v]);
    }
    let row = inst.arcs.iter().map(|a| a.cost2).collect();
    model.add_constraint(row, Relation::LessEq, epsilon - red.offset.c2);
    model
}

pub fn epsilon_step_standard(red: &ReducedInstance, epsilon: i64) -> Result<StepOutcome> {
    let start = Instant::now();
    let model = build_standard(red, epsilon);
    let res = solve_ilp(&model)?;
    let solution = if res.is_optimal() {
        let full = red.lift(&res.assignment)?;
        let point = red.image(&res.assignment);
        if point.c1 != res.objective {
            return Err(Error::Internal("standard model objective mismatch".into()));
        }
        Some((full, point))
    } else {
        None
    };
    Ok(StepOutcome {
        solution,
        variables: model.num_variables(),
        rows: model.num_constraints(),
        nodes: res.nodes,
        elapsed: start.elapsed(),
    })
}

/// Induced-cycle model over a tree solution of the reduced network.
#[derive(Clone, Debug)]
pub struct CompactModel {
    pub model: LinearModel,
    /// Non-tree arc and induced cycle behind each variable.
    pub cycles: Vec<(usize, Cycle)>,
    /// Arcs on at least one induced cycle; each has a two-sided window.
    pub window_arcs: Vec<usize>,
}

/// A `c1`-optimal tree solution of the reduced network (a spanning forest
/// when the network is disconnected).
pub fn compact_tree(red: &ReducedInstance) -> Result<TreeFlow> {
    solve_scalar_mcf(&red.instance, &red.instance.cost1())
}

/// Coefficient `lambda_a` in `[0, upper_a - lower_a]` per non-tree arc; rows
/// `lower_e - f_e <= sum lambda_a chi_e(C_a) <= upper_e - f_e` for arcs on
/// some cycle; `sum lambda_a c2(C_a) <= eps - c2(tf)` with `c2(tf)` measured
/// on the full instance.
pub fn build_compact(red: &ReducedInstance, tf: &TreeFlow, epsilon: i64) -> Result<CompactModel> {
    let inst = &red.instance;
    let cycles = induced_cycles(inst, tf)?;
    let base = red.image(&tf.flow);
    let mut model = LinearModel::new();
    for (a, cyc) in &cycles {
        let arc = &inst.arcs[*a];
        model.add_variable(0, arc.upper - arc.lower, cyc.cost.c1);
    }
    model.objective_offset = base.c1;
    let mut on_cycle = vec![false; inst.arcs.len()];
    for (_, cyc) in &cycles {
        for (e, &x) in cyc.chi.iter().enumerate() {
            on_cycle[e] |= x != 0;
        }
    }
    let window_arcs: Vec<usize> = (0..inst.arcs.len()).filter(|&e| on_cycle[e]).collect();
    for &e in &window_arcs {
        let row: Vec<i64> = cycles.iter().map(|(_, c)| c.chi[e]).collect();
        let arc = &inst.arcs[e];
        let f = tf.flow[e];
        model.add_constraint(row.clone(), Relation::GreaterEq, arc.lower - f);
        model.add_constraint(row, Relation::LessEq, arc.upper - f);
    }
    let row = cycles.iter().map(|(_, c)| c.cost.c2).collect();
    model.add_constraint(row, Relation::LessEq, epsilon - base.c2);
    Ok(CompactModel {
        model,
        cycles,
        window_arcs,
    })
}

impl CompactModel {
    /// Reduced-network flow `tf + sum lambda_a chi(C_a)`.
    pub fn reconstruct(&self, tf: &TreeFlow, lambda: &[i64]) -> Flow {
        let mut flow = tf.flow.clone();
        for ((_, cyc), &l) in self.cycles.iter().zip(lambda) {
            for (f, x) in flow.iter_mut().zip(&cyc.chi) {
                *f += l * x;
            }
        }
        flow
    }
}

pub fn epsilon_step_compact(red: &ReducedInstance, tf: &TreeFlow, epsilon: i64) -> Result<StepOutcome> {
    let start = Instant::now();
    let cm = build_compact(red, tf, epsilon)?;
    let res = solve_ilp(&cm.model)?;
    let solution = if res.is_optimal() {
        let rflow = cm.reconstruct(tf, &res.assignment);
        let full = red.lift(&rflow)?;
        let point = red.image(&rflow);
        if point.c1 != res.objective {
            return Err(Error::Internal("compact model objective mismatch".into()));
        }
        Some((full, point))
    } else {
        None
    };
    Ok(StepOutcome {
        solution,
        variables: cm.model.num_variables(),
        rows: cm.model.num_constraints(),
        nodes: res.nodes,
        elapsed: start.elapsed(),
    })
}

/// Sizes of both formulations for one reduced network.
///
/// Variable bounds are counted as rows: the standard model has a balance row
/// per active node, two capacity rows per arc and the epsilon row; the compact
/// model has two window rows per arc on some induced cycle and the epsilon row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelDimensions {
    pub active_nodes: usize,
    pub arcs: usize,
    pub components: usize,
    pub standard_variables: usize,
    pub standard_rows: usize,
    pub compact_variables: usize,
    pub compact_rows: usize,
}

impl ModelDimensions {
    pub fn is_connected(&self) -> bool {
        self.components == 1
    }
}

pub fn model_dimensions(red: &ReducedInstance) -> Result<ModelDimensions> {
    let tf = compact_tree(red)?;
    let cm = build_compact(red, &tf, 0)?;
    let n = red.active_nodes().len();
    let m = red.instance.arcs.len();
    Ok(ModelDimensions {
        active_nodes: n,
        arcs: m,
        components: red.active_components(),
        standard_variables: m,
        standard_rows: n + 2 * m + 1,
        compact_variables: cm.model.num_variables(),
        compact_rows: 2 * cm.window_arcs.len() + 1,
    })
}

#[derive(Clone, Debug)]
pub struct EpsilonStep {
    pub epsilon: i64,
    pub outcome: StepOutcome,
}

/// Sweep over one face from its left endpoint.
#[derive(Clone, Debug)]
pub struct EpsilonTrace {
    pub weight: WeightVector,
    pub start: BiCost,
    pub steps: Vec<EpsilonStep>,
    pub dimensions: ModelDimensions,
}

impl EpsilonTrace {
    /// Points in sweep order, starting with the left endpoint.
    pub fn points(&self) -> Vec<BiCost> {
        let mut out = vec![self.start];
        out.extend(self.steps.iter().filter_map(|s| s.outcome.point()));
        out
    }
}

#[derive(Clone, Debug)]
pub struct EpsilonResult {
    pub variant: Variant,
    pub frontier: FrontierList,
    pub points: Vec<SupportedPoint>,
    pub traces: Vec<EpsilonTrace>,
}

impl EpsilonResult {
    pub fn images(&self) -> Vec<BiCost> {
        self.points.iter().map(|p| p.point).collect()
    }

    pub fn solves(&self) -> usize {
        self.traces.iter().map(|t| t.steps.len()).sum()
    }
}

fn sweep_face(inst: &Instance, face: &Face<'_>, variant: Variant) -> Result<(EpsilonTrace, Vec<SupportedPoint>)> {
    let red = face.reduce(inst)?;
    let tf = match variant {
        Variant::Compact => Some(compact_tree(&red)?),
        Variant::Standard => None,
    };
    let mut points = vec![SupportedPoint {
        point: face.left.point,
        witness: face.left.witness.flow.clone(),
    }];
    let mut steps = Vec::new();
    let mut current = face.left.point;
    while current != face.right.point {
        let epsilon = current.c2 - 1;
        let outcome = match &tf {
            Some(tf) => epsilon_step_compact(&red, tf, epsilon)?,
            None => epsilon_step_standard(&red, epsilon)?,
        };
        let next = outcome.solution.clone();
        steps.push(EpsilonStep { epsilon, outcome });
        let Some((witness, point)) = next else {
            return Err(Error::Internal(format!(
                "sweep stopped at {current} before reaching {}",
                face.right.point
            )));
        };
        if point.c1 <= current.c1 || point.c2 >= current.c2 {
            return Err(Error::Internal(format!("sweep is not monotone at {point}")));
        }
        points.push(SupportedPoint { point, witness });
        current = point;
    }
    let trace = EpsilonTrace {
        weight: face.weight,
        start: face.left.point,
        steps,
        dimensions: model_dimensions(&red)?,
    };
    Ok((trace, points))
}

/// All supported nondominated points by epsilon sweeps.
///
/// On each face the sweep starts at the left endpoint, sets `eps` to the last
/// `c2` minus one and stops once the right endpoint is reached, so a face with
/// `s` supported points costs `s - 1` solves.
pub fn all_supported_vectors_epsilon(inst: &Instance, variant: Variant) -> Result<EpsilonResult> {
    all_supported_vectors_epsilon_with(inst, variant, false)
}

pub fn all_supported_vectors_epsilon_with(
    inst: &Instance,
    variant: Variant,
    parallel: bool,
) -> Result<EpsilonResult> {
    let frontier = extreme_supported_points_with(inst, parallel)?;
    let faces = frontier.faces();
    let per_face = map_faces(&faces, parallel, |face| sweep_face(inst, face, variant))?;
    let mut traces = Vec::with_capacity(per_face.len());
    let mut points: Vec<SupportedPoint> = Vec::new();
    for (trace, pts) in per_face {
        traces.push(trace);
        for p in pts {
            // Faces arrive in c1 order and share only their endpoints.
            if points.last().is_none_or(|q| q.point != p.point) {
                points.push(p);
            }
        }
    }
    Ok(EpsilonResult {
        variant,
        frontier,
        points,
        traces,
    })
}

/// Both formulations solved at the same bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulationCheck {
    pub face: usize,
    pub epsilon: i64,
    pub standard: Option<BiCost>,
    pub compact: Option<BiCost>,
}

impl FormulationCheck {
    pub fn agrees(&self) -> bool {
        self.standard == self.compact
    }
}

/// Runs the standard sweep on every face and solves the compact model at each
/// bound it uses, plus one bound past the right endpoint where both must be
/// infeasible.
pub fn compare_formulations(inst: &Instance) -> Result<Vec<FormulationCheck>> {
    let frontier = extreme_supported_points_with(inst, false)?;
    let mut out = Vec::new();
    for face in frontier.faces() {
        let red = face.reduce(inst)?;
        let tf = compact_tree(&red)?;
        let mut current = face.left.point;
        loop {
            let epsilon = current.c2 - 1;
            let standard = epsilon_step_standard(&red, epsilon)?.point();
            let compact = epsilon_step_compact(&red, &tf, epsilon)?.point();
            out.push(FormulationCheck {
                face: face.index,
                epsilon,
                standard,
                compact,
            });
            match standard {
                Some(p) if p.c2 < current.c2 => current = p,
                _ => break,
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontier::reduce_network;
    use crate::generators::{example_five_node, gen_example_backarcs};
    use crate::model::tests::t1;
    use crate::model::Arc;
    use crate::oracle::OracleReport;

    fn reduced_t1() -> ReducedInstance {
        reduce_network(&t1(), WeightVector::new(4, 2).unwrap(), &[2, 2, 0]).unwrap()
    }

    #[test]
    fn standard_steps_on_t1() {
        let red = reduced_t1();
        let p = |eps| epsilon_step_standard(&red, eps).unwrap().solution;
        assert_eq!(p(5), Some((vec![1, 1, 1], BiCost::new(5, 4))));
        assert_eq!(p(6), Some((vec![2, 2, 0], BiCost::new(4, 6))));
        assert_eq!(p(1), None);
    }

    #[test]
    fn compact_model_of_t1() {
        let red = reduced_t1();
        let tf = TreeFlow::new(&red.instance, vec![2, 2, 0], vec![0, 1]).unwrap();
        let cm = build_compact(&red, &tf, 5).unwrap();
        assert_eq!(cm.model.num_variables(), 1);
        assert_eq!(cm.model.variables[0].lower, 0);
        assert_eq!(cm.model.variables[0].upper, 2);
        assert_eq!(cm.window_arcs, vec![0, 1, 2]);
        assert_eq!(cm.model.objective, vec![1]);
        assert_eq!(cm.model.objective_offset, 4);
        let eps_row = cm.model.constraints.last().unwrap();
        assert_eq!((eps_row.coefficients.clone(), eps_row.rhs), (vec![-2], -1));

        let step = epsilon_step_compact(&red, &tf, 5).unwrap();
        assert_eq!(step.solution, Some((vec![1, 1, 1], BiCost::new(5, 4))));
        assert!(epsilon_step_compact(&red, &tf, 1).unwrap().solution.is_none());
        let step = epsilon_step_compact(&red, &tf, 6).unwrap();
        assert_eq!(step.solution.unwrap().0, tf.flow);
    }

    #[test]
    fn tree_only_network_has_no_compact_variables() {
        let inst = Instance::new(
            3,
            vec![Arc::new(0, 1, 0, 5, 1, 2), Arc::new(1, 2, 0, 5, 1, 2)],
            vec![2, 0, -2],
        );
        let red = reduce_network(&inst, WeightVector::new(1, 1).unwrap(), &[2, 2]).unwrap();
        let tf = compact_tree(&red).unwrap();
        let cm = build_compact(&red, &tf, 8).unwrap();
        assert_eq!(cm.model.num_variables(), 0);
        assert!(epsilon_step_compact(&red, &tf, 8).unwrap().solution.is_some());
        assert!(epsilon_step_compact(&red, &tf, 7).unwrap().solution.is_none());
        assert_eq!(model_dimensions(&red).unwrap().compact_variables, 0);
    }

    #[test]
    fn dimensions_of_t1() {
        let d = model_dimensions(&reduced_t1()).unwrap();
        assert_eq!((d.standard_variables, d.compact_variables), (3, 1));
        assert_eq!(d.standard_variables - d.compact_variables, d.active_nodes - 1);
        assert_eq!((d.standard_rows, d.compact_rows), (10, 7));
    }

    #[test]
    fn t1_sweeps() {
        for variant in [Variant::Standard, Variant::Compact] {
            let r = all_supported_vectors_epsilon(&t1(), variant).unwrap();
            assert_eq!(
                r.images(),
                vec![BiCost::new(4, 6), BiCost::new(5, 4), BiCost::new(6, 2)]
            );
            assert_eq!(r.solves(), 2);
            let eps: Vec<i64> = r.traces[0].steps.iter().map(|s| s.epsilon).collect();
            assert_eq!(eps, vec![5, 3]);
        }
    }

    #[test]
    fn backarcs_and_five_node_sweeps_match_oracle() {
        let inst = gen_example_backarcs(5, 5).unwrap();
        let r = all_supported_vectors_epsilon(&inst, Variant::Compact).unwrap();
        assert_eq!(r.points.len(), 6);
        let inst = example_five_node();
        let oracle = OracleReport::compute(&inst).unwrap().supported();
        for variant in [Variant::Standard, Variant::Compact] {
            assert_eq!(all_supported_vectors_epsilon(&inst, variant).unwrap().images(), oracle);
        }
        assert!(compare_formulations(&inst).unwrap().iter().all(FormulationCheck::agrees));
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("compact".parse::<Variant>(), Ok(Variant::Compact));
        assert_eq!(Variant::Standard.to_string(), "standard");
        assert!("dense".parse::<Variant>().is_err());
    }
}
