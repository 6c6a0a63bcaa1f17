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

//! Depth-first branch and bound on top of the exact relaxation.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::model::{LinearModel, ModelError};
use crate::simplex::{solve_with_bounds, LpOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Empty unless `status` is optimal.
    pub assignment: Vec<i64>,
    /// Objective including the constant offset; zero when infeasible.
    pub objective: i64,
    /// Relaxations solved during the search.
    pub nodes: usize,
}

impl SolveResult {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// Exact integer optimum of `model`.
///
/// Branches on the variable with the largest fractional part (lowest index on
/// ties) and prunes with the ceiling of the relaxation bound, which is valid
/// because every objective coefficient is an integer.
pub fn solve_ilp(model: &LinearModel) -> Result<SolveResult, ModelError> {
    model.validate()?;
    let root: Vec<(i64, i64)> = model.variables.iter().map(|v| (v.lower, v.upper)).collect();
    let mut stack = vec![root];
    let mut incumbent: Option<(Vec<i64>, i64)> = None;
    let mut nodes = 0;

    while let Some(bounds) = stack.pop() {
        nodes += 1;
        let LpOutcome::Optimal(sol) = solve_with_bounds(model, &bounds) else {
            continue;
        };
        let bound = to_i64(&sol.objective.ceil());
        if let Some((_, best)) = &incumbent {
            if bound >= *best {
                continue;
            }
        }

        let mut branch: Option<(usize, num_rational::BigRational)> = None;
        for (j, x) in sol.values.iter().enumerate() {
            let frac = x - x.floor();
            if frac.is_zero() {
                continue;
            }
            if branch.as_ref().is_none_or(|(_, f)| frac > *f) {
                branch = Some((j, frac));
            }
        }

        match branch {
            None => {
                let x: Vec<i64> = sol.values.iter().map(to_i64).collect();
                let value = model.evaluate(&x);
                if incumbent.as_ref().is_none_or(|(_, best)| value < *best) {
                    incumbent = Some((x, value));
                }
            }
            Some((j, _)) => {
                let down = to_i64(&sol.values[j].floor());
                let mut up_bounds = bounds.clone();
                up_bounds[j].0 = down + 1;
                let mut down_bounds = bounds;
                down_bounds[j].1 = down;
                stack.push(up_bounds);
                stack.push(down_bounds);
            }
        }
    }

    Ok(match incumbent {
        Some((assignment, objective)) => SolveResult {
            status: SolveStatus::Optimal,
            assignment,
            objective,
            nodes,
        },
        None => SolveResult {
            status: SolveStatus::Infeasible,
            assignment: Vec::new(),
            objective: 0,
            nodes,
        },
    })
}

fn to_i64(x: &num_rational::BigRational) -> i64 {
    debug_assert!(x.is_integer());
    let n: &BigInt = x.numer();
    n.to_i64().expect("integer value fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Relation::*;

    #[test]
    fn compact_step_rounds_up() {
        // min 4 + l s.t. 6 - 2l <= 5, l in {0,1,2}
        let mut m = LinearModel::new();
        m.add_variable(0, 2, 1);
        m.objective_offset = 4;
        m.add_constraint(vec![-2], LessEq, -1);
        let r = solve_ilp(&m).unwrap();
        assert!(r.is_optimal());
        assert_eq!(r.assignment, vec![1]);
        assert_eq!(r.objective, 5);
    }

    #[test]
    fn compact_step_out_of_reach() {
        let mut m = LinearModel::new();
        m.add_variable(0, 2, 1);
        m.objective_offset = 4;
        m.add_constraint(vec![-2], LessEq, -5);
        assert_eq!(solve_ilp(&m).unwrap().status, SolveStatus::Infeasible);
    }

    #[test]
    fn zero_objective_feasible() {
        let mut m = LinearModel::new();
        m.add_variable(0, 3, 0);
        m.add_variable(-2, 2, 0);
        m.add_constraint(vec![1, 1], Equal, 1);
        let r = solve_ilp(&m).unwrap();
        assert!(r.is_optimal());
        assert_eq!(r.objective, 0);
        assert!(m.is_feasible(&r.assignment));
    }

    #[test]
    fn parity_gap_needs_branching() {
        // 2x + 2y = 3 has rational but no integer solutions.
        let mut m = LinearModel::new();
        m.add_variable(0, 3, 1);
        m.add_variable(0, 3, 1);
        m.add_constraint(vec![2, 2], Equal, 3);
        assert_eq!(solve_ilp(&m).unwrap().status, SolveStatus::Infeasible);
    }

    #[test]
    fn malformed_row_is_rejected() {
        let mut m = LinearModel::new();
        m.add_variable(0, 1, 1);
        m.constraints.push(crate::Constraint::new(vec![1, 1], LessEq, 1));
        assert!(matches!(solve_ilp(&m), Err(ModelError::RowLength { .. })));
    }
}
