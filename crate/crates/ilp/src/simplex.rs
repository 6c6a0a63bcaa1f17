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

//! Bounded-variable primal simplex over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::model::{LinearModel, ModelError, Relation};

type Q = BigRational;

/// Optimal vertex of the continuous relaxation.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub values: Vec<BigRational>,
    /// Objective value including the model's constant offset.
    pub objective: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    /// Cannot arise for boxed models; kept so the solver is total.
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// Solves the continuous relaxation of `model` exactly.
pub fn solve_lp(model: &LinearModel) -> Result<LpOutcome, ModelError> {
    model.validate()?;
    let bounds: Vec<(i64, i64)> = model.variables.iter().map(|v| (v.lower, v.upper)).collect();
    Ok(solve_with_bounds(model, &bounds))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Basic,
    AtLower,
    AtUpper,
}

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

struct Tableau {
    /// `B^-1 A` restricted to structural and slack columns.
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    xb: Vec<Q>,
    lower: Vec<Q>,
    upper: Vec<Option<Q>>,
    status: Vec<Status>,
    /// Structural plus slack columns; ids at or above this are artificials.
    ncols: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Moved,
}

impl Tableau {
    fn value(&self, var: usize) -> Q {
        match self.status[var] {
            Status::AtLower => self.lower[var].clone(),
            Status::AtUpper => self.upper[var].clone().expect("finite upper bound"),
            Status::Basic => {
                let row = self.basis.iter().position(|&b| b == var).expect("basic");
                self.xb[row].clone()
            }
        }
    }

    fn reduced_cost(&self, cost: &[Q], j: usize) -> Q {
        let mut d = cost[j].clone();
        for (i, row) in self.rows.iter().enumerate() {
            let a = &row[j];
            if a.is_zero() {
                continue;
            }
            let cb = &cost[self.basis[i]];
            if !cb.is_zero() {
                d -= cb * a;
            }
        }
        d
    }

    fn step(&mut self, cost: &[Q]) -> Step {
        // Bland: smallest eligible index enters.
        let mut entering = None;
        for j in 0..self.ncols {
            let st = self.status[j];
            if st == Status::Basic {
                continue;
            }
            let movable = match &self.upper[j] {
                Some(u) => *u > self.lower[j],
                None => true,
            };
            if !movable {
                continue;
            }
            let d = self.reduced_cost(cost, j);
            if (st == Status::AtLower && d.is_negative()) || (st == Status::AtUpper && d.is_positive())
            {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return Step::Optimal;
        };
        let increasing = self.status[j] == Status::AtLower;

        let mut best_t: Option<Q> = self.upper[j].as_ref().map(|u| u - &self.lower[j]);
        let mut best_row: Option<usize> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][j];
            if a.is_zero() {
                continue;
            }
            // Change of the basic variable per unit move of the entering one.
            let rate = if increasing { -a.clone() } else { a.clone() };
            let var = self.basis[i];
            let limit = if rate.is_negative() {
                (&self.xb[i] - &self.lower[var]) / (-&rate)
            } else {
                match &self.upper[var] {
                    Some(u) => (u - &self.xb[i]) / &rate,
                    None => continue,
                }
            };
            let better = match (&best_t, best_row) {
                (None, _) => true,
                (Some(t), None) => limit < *t,
                (Some(t), Some(r)) => limit < *t || (limit == *t && var < self.basis[r]),
            };
            if better {
                best_t = Some(limit);
                best_row = Some(i);
            }
        }
        let Some(t) = best_t else {
            return Step::Unbounded;
        };

        for i in 0..self.rows.len() {
            let a = &self.rows[i][j];
            if a.is_zero() {
                continue;
            }
            let delta = a * &t;
            if increasing {
                self.xb[i] -= delta;
            } else {
                self.xb[i] += delta;
            }
        }
        let entering_value = if increasing {
            &self.lower[j] + &t
        } else {
            self.upper[j].clone().expect("finite upper bound") - &t
        };

        match best_row {
            None => {
                self.status[j] = if increasing {
                    Status::AtUpper
                } else {
                    Status::AtLower
                };
            }
            Some(r) => {
                let leaving = self.basis[r];
                let a = &self.rows[r][j];
                let rate_negative = if increasing { a.is_positive() } else { a.is_negative() };
                if leaving < self.status.len() {
                    self.status[leaving] = if rate_negative {
                        Status::AtLower
                    } else {
                        Status::AtUpper
                    };
                }
                self.xb[r] = entering_value;
                self.pivot(r, j);
                self.basis[r] = j;
                self.status[j] = Status::Basic;
            }
        }
        Step::Moved
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.rows[r][j].clone();
        if !piv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &piv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&k| !pivot_row[k].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[j].clone();
            if f.is_zero() {
                continue;
            }
            for &k in &nz {
                row[k] -= &f * &pivot_row[k];
            }
        }
        self.rows[r] = pivot_row;
    }

    fn run(&mut self, cost: &[Q]) -> bool {
        loop {
            match self.step(cost) {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Moved => {}
            }
        }
    }
}

/// Two-phase solve of `model` with its variable boxes replaced by `bounds`.
pub(crate) fn solve_with_bounds(model: &LinearModel, bounds: &[(i64, i64)]) -> LpOutcome {
    let n = model.variables.len();
    if bounds.iter().any(|&(l, u)| l > u) {
        return LpOutcome::Infeasible;
    }
    let m = model.constraints.len();
    let slack_rows: Vec<usize> = (0..m)
        .filter(|&i| model.constraints[i].relation != Relation::Equal)
        .collect();
    let ncols = n + slack_rows.len();
    let total = ncols + m;

    let mut lower = Vec::with_capacity(total);
    let mut upper = Vec::with_capacity(total);
    for &(l, u) in bounds {
        lower.push(q(l));
        upper.push(Some(q(u)));
    }
    for _ in 0..slack_rows.len() + m {
        lower.push(Q::zero());
        upper.push(None);
    }

    let mut rows = Vec::with_capacity(m);
    let mut xb = Vec::with_capacity(m);
    for (i, c) in model.constraints.iter().enumerate() {
        let mut row: Vec<Q> = c.coefficients.iter().map(|&a| q(a)).collect();
        row.resize(ncols, Q::zero());
        if let Some(s) = slack_rows.iter().position(|&r| r == i) {
            row[n + s] = match c.relation {
                Relation::LessEq => Q::one(),
                _ => -Q::one(),
            };
        }
        let at_lower: i64 = c
            .coefficients
            .iter()
            .zip(bounds)
            .map(|(a, (l, _))| a * l)
            .sum();
        let residual = c.rhs - at_lower;
        if residual < 0 {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        rows.push(row);
        xb.push(q(residual.abs()));
    }

    let mut status = vec![Status::AtLower; ncols];
    status.extend(std::iter::repeat_n(Status::Basic, m));
    let mut tab = Tableau {
        rows,
        basis: (ncols..total).collect(),
        xb,
        lower,
        upper,
        status,
        ncols,
    };

    let mut phase1 = vec![Q::zero(); total];
    for c in phase1.iter_mut().skip(ncols) {
        *c = Q::one();
    }
    tab.run(&phase1);
    let infeasibility: Q = tab
        .basis
        .iter()
        .zip(&tab.xb)
        .filter(|(&b, _)| b >= ncols)
        .fold(Q::zero(), |acc, (_, v)| acc + v);
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    for k in ncols..total {
        tab.upper[k] = Some(Q::zero());
    }
    let mut phase2 = vec![Q::zero(); total];
    for (j, &c) in model.objective.iter().enumerate() {
        phase2[j] = q(c);
    }
    if !tab.run(&phase2) {
        return LpOutcome::Unbounded;
    }

    let values: Vec<Q> = (0..n).map(|j| tab.value(j)).collect();
    let objective = values
        .iter()
        .zip(&model.objective)
        .fold(q(model.objective_offset), |acc, (x, &c)| acc + x * q(c));
    LpOutcome::Optimal(LpSolution { values, objective })
}
