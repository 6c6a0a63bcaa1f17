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

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("flow has {found} entries but the instance has {expected} arcs")]
    ArityMismatch { expected: usize, found: usize },
    #[error("instance is infeasible")]
    Infeasible,
    #[error("flow is not optimal: negative residual cycle")]
    NotOptimal,
    #[error("arc {0} is a tree arc")]
    TreeArc(usize),
    #[error("step {theta} is outside 1..={max_step}")]
    StepOutOfRange { theta: i64, max_step: i64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("decomposition does not reproduce the target flow")]
    Decomposition,
    #[error("invalid tree structure: {0}")]
    InvalidTree(String),
    #[error("invalid face: {0}")]
    InvalidFace(String),
    #[error("weights must be non-empty and positive")]
    InvalidWeights,
    #[error("cannot connect {nodes} nodes with {arcs} arcs")]
    CannotConnect { nodes: usize, arcs: usize },
    #[error("enumeration space {size} exceeds the guard {guard}")]
    GuardExceeded { size: u128, guard: u128 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("flow is infeasible on the reduced network")]
    InfeasibleReducedFlow,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Model(#[from] bmcif_ilp::ModelError),
}

pub type Result<T> = std::result::Result<T, Error>;
