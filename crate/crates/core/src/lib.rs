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

//! Supported nondominated points and supported efficient flows of
//! bi-objective minimum cost integer flow problems.

pub mod aof;
pub mod bench;
pub mod distinct;
pub mod epsilon;
pub mod error;
pub mod format;
pub mod frontier;
pub mod generators;
pub mod mcf;
pub mod model;
pub mod oracle;

pub use error::{Error, Result};
pub use model::{
    check_flow_feasible, evaluate_cost, validate_instance, Arc, BiCost, Flow, Instance,
    ScalarCost, ValidationReport, Violation,
};
