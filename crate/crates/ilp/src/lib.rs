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

//! Exact solvers for small, fully boxed integer linear programs.
//!
//! Everything here runs in arbitrary-precision rational arithmetic: the
//! continuous relaxation is solved by a bounded-variable primal simplex with
//! Bland's rule, and integrality is recovered by depth-first branch and bound.
//! The models this crate is built for have a few dozen variables at most, so
//! exactness is worth more than speed.

mod branch;
mod model;
mod simplex;

pub use branch::{solve_ilp, SolveResult, SolveStatus};
pub use model::{Constraint, LinearModel, ModelError, Relation, Variable};
pub use simplex::{solve_lp, LpOutcome, LpSolution};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
