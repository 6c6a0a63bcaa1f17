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

use std::fmt;

/// Integer box `[lower, upper]` for one decision variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Variable {
    pub lower: i64,
    pub upper: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    LessEq,
    Equal,
    GreaterEq,
}

impl Relation {
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::LessEq => lhs <= rhs,
            Relation::Equal => lhs == rhs,
            Relation::GreaterEq => lhs >= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::LessEq => "<=",
            Relation::Equal => "=",
            Relation::GreaterEq => ">=",
        })
    }
}

/// One linear row `coefficients · x (relation) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<i64>,
    pub relation: Relation,
    pub rhs: i64,
}

impl Constraint {
    pub fn new(coefficients: Vec<i64>, relation: Relation, rhs: i64) -> Self {
        Self {
            coefficients,
            relation,
            rhs,
        }
    }

    pub fn lhs(&self, x: &[i64]) -> i64 {
        self.coefficients.iter().zip(x).map(|(a, v)| a * v).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelError {
    RowLength { row: usize, expected: usize, found: usize },
    ObjectiveLength { expected: usize, found: usize },
    EmptyBox { variable: usize },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::RowLength {
                row,
                expected,
                found,
            } => write!(
                f,
                "constraint {row} has {found} coefficients, model has {expected} variables"
            ),
            ModelError::ObjectiveLength { expected, found } => write!(
                f,
                "objective has {found} coefficients, model has {expected} variables"
            ),
            ModelError::EmptyBox { variable } => {
                write!(f, "variable {variable} has lower bound above upper bound")
            }
        }
    }
}

impl std::error::Error for ModelError {}

/// Minimisation model with integer data and finite bounds on every variable.
///
/// `objective_offset` is a constant added to every reported objective value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearModel {
    pub variables: Vec<Variable>,
    pub objective: Vec<i64>,
    pub objective_offset: i64,
    pub constraints: Vec<Constraint>,
}

impl LinearModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a variable with the given box and objective coefficient and
    /// returns its index. Existing constraints are padded with a zero.
    pub fn add_variable(&mut self, lower: i64, upper: i64, cost: i64) -> usize {
        self.variables.push(Variable { lower, upper });
        self.objective.push(cost);
        for c in &mut self.constraints {
            c.coefficients.push(0);
        }
        self.variables.len() - 1
    }

    pub fn add_constraint(&mut self, coefficients: Vec<i64>, relation: Relation, rhs: i64) {
        self.constraints
            .push(Constraint::new(coefficients, relation, rhs));
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.variables.len();
        if self.objective.len() != n {
            return Err(ModelError::ObjectiveLength {
                expected: n,
                found: self.objective.len(),
            });
        }
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(ModelError::RowLength {
                    row,
                    expected: n,
                    found: c.coefficients.len(),
                });
            }
        }
        if let Some(variable) = self.variables.iter().position(|v| v.lower > v.upper) {
            return Err(ModelError::EmptyBox { variable });
        }
        Ok(())
    }

    /// True when `x` is integral-feasible: inside every box and satisfying every row.
    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.variables.len()
            && self
                .variables
                .iter()
                .zip(x)
                .all(|(v, &xi)| v.lower <= xi && xi <= v.upper)
            && self
                .constraints
                .iter()
                .all(|c| c.relation.holds(c.lhs(x), c.rhs))
    }

    pub fn evaluate(&self, x: &[i64]) -> i64 {
        self.objective_offset + self.objective.iter().zip(x).map(|(c, v)| c * v).sum::<i64>()
    }
}
