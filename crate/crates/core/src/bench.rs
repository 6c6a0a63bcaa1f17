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

//! Benchmark harness: runs all four methods on a set of instances and
//! reports counts and wall-clock times as CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::aof::all_supported_flows_with;
use crate::distinct::all_supported_vectors_adjusted_with;
use crate::epsilon::{all_supported_vectors_epsilon_with, EpsilonResult, Variant};
use crate::error::{Error, Result};
use crate::format::read_instance;
use crate::model::{image, BiCost, Instance};

pub const CSV_HEADER: &str = "instance,|Y_EN|,|Y_SN|,|X_SN|,t_AO,t_DS,t_eps,t_new_eps";

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub extreme: usize,
    pub supported: usize,
    pub flows: usize,
    pub t_ao: f64,
    pub t_ds: f64,
    pub t_eps: f64,
    pub t_new_eps: f64,
    /// All four methods found the same supported point set.
    pub methods_agree: bool,
    /// Both epsilon formulations used the same bounds and found the same point
    /// at each of them.
    pub formulations_agree: bool,
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed().as_secs_f64()))
}

fn trace_pairs(r: &EpsilonResult) -> Vec<Vec<(i64, Option<BiCost>)>> {
    r.traces
        .iter()
        .map(|t| t.steps.iter().map(|s| (s.epsilon, s.outcome.point())).collect())
        .collect()
}

pub fn run_instance(name: &str, inst: &Instance, parallel: bool) -> Result<BenchRow> {
    let (ao, t_ao) = timed(|| all_supported_flows_with(inst, parallel))?;
    let (ds, t_ds) = timed(|| all_supported_vectors_adjusted_with(inst, parallel))?;
    let (eps, t_eps) = timed(|| all_supported_vectors_epsilon_with(inst, Variant::Standard, parallel))?;
    let (new_eps, t_new_eps) =
        timed(|| all_supported_vectors_epsilon_with(inst, Variant::Compact, parallel))?;

    let mut ao_images: Vec<BiCost> = ao.flows.iter().map(|f| image(inst, f)).collect();
    ao_images.sort_unstable();
    ao_images.dedup();
    let ds_images = ds.images();
    let methods_agree =
        ao_images == ds_images && eps.images() == ds_images && new_eps.images() == ds_images;
    Ok(BenchRow {
        instance: name.to_string(),
        extreme: ds.frontier.points.len(),
        supported: ds_images.len(),
        flows: ao.flows.len(),
        t_ao,
        t_ds,
        t_eps,
        t_new_eps,
        methods_agree,
        formulations_agree: trace_pairs(&eps) == trace_pairs(&new_eps),
    })
}

/// `.bmcf` files directly inside `dir`, sorted by name.
pub fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |e: std::io::Error| Error::InvalidInstance(format!("{}: {e}", dir.display()));
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "bmcf"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn run_directory(dir: &Path, parallel: bool) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for path in instance_files(dir)? {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::InvalidInstance(format!("{}: {e}", path.display())))?;
        let inst = read_instance(&text)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        rows.push(run_instance(&name, &inst, parallel)?);
    }
    Ok(rows)
}

/// Instance class: the name with a trailing run of digits (and the `_` or `-`
/// before it) removed, so `c1_07` and `c1_12` share class `c1`.
pub fn instance_class(name: &str) -> &str {
    let trimmed = name.trim_end_matches(|c: char| c.is_ascii_digit());
    if trimmed.len() == name.len() {
        return name;
    }
    let trimmed = trimmed.trim_end_matches(['_', '-']);
    if trimmed.is_empty() {
        name
    } else {
        trimmed
    }
}

fn write_row(out: &mut String, label: &str, counts: [String; 3], times: [f64; 4]) {
    let [a, b, c] = counts;
    writeln!(
        out,
        "{label},{a},{b},{c},{:.6},{:.6},{:.6},{:.6}",
        times[0], times[1], times[2], times[3]
    )
    .unwrap();
}

/// CSV with one row per instance followed by `class/min`, `class/max` and
/// `class/mean` rows for every class.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    let mut classes: BTreeMap<&str, Vec<&BenchRow>> = BTreeMap::new();
    for r in rows {
        write_row(
            &mut out,
            &r.instance,
            [r.extreme.to_string(), r.supported.to_string(), r.flows.to_string()],
            [r.t_ao, r.t_ds, r.t_eps, r.t_new_eps],
        );
        classes.entry(instance_class(&r.instance)).or_default().push(r);
    }
    for (class, members) in classes {
        let counts = |r: &BenchRow| [r.extreme as f64, r.supported as f64, r.flows as f64];
        let times = |r: &BenchRow| [r.t_ao, r.t_ds, r.t_eps, r.t_new_eps];
        type Fold = fn(f64, f64) -> f64;
        for (stat, fold, init) in [
            ("min", f64::min as Fold, f64::INFINITY),
            ("max", f64::max as Fold, f64::NEG_INFINITY),
        ] {
            let c: Vec<f64> = (0..3)
                .map(|i| members.iter().map(|r| counts(r)[i]).fold(init, fold))
                .collect();
            let t: Vec<f64> = (0..4)
                .map(|i| members.iter().map(|r| times(r)[i]).fold(init, fold))
                .collect();
            write_row(
                &mut out,
                &format!("{class}/{stat}"),
                [c[0].to_string(), c[1].to_string(), c[2].to_string()],
                [t[0], t[1], t[2], t[3]],
            );
        }
        let k = members.len() as f64;
        let c: Vec<f64> = (0..3)
            .map(|i| members.iter().map(|r| counts(r)[i]).sum::<f64>() / k)
            .collect();
        let t: Vec<f64> = (0..4)
            .map(|i| members.iter().map(|r| times(r)[i]).sum::<f64>() / k)
            .collect();
        write_row(
            &mut out,
            &format!("{class}/mean"),
            [format!("{:.2}", c[0]), format!("{:.2}", c[1]), format!("{:.2}", c[2])],
            [t[0], t[1], t[2], t[3]],
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_example_backarcs;
    use crate::model::tests::t1;

    #[test]
    fn class_names() {
        assert_eq!(instance_class("c1_07"), "c1");
        assert_eq!(instance_class("backarcs-10"), "backarcs");
        assert_eq!(instance_class("t1"), "t");
        assert_eq!(instance_class("fig"), "fig");
        assert_eq!(instance_class("42"), "42");
    }

    #[test]
    fn csv_layout() {
        let rows = vec![
            run_instance("t1", &t1(), false).unwrap(),
            run_instance("b5", &gen_example_backarcs(5, 5).unwrap(), false).unwrap(),
        ];
        assert!(rows.iter().all(|r| r.methods_agree && r.formulations_agree));
        assert_eq!((rows[1].extreme, rows[1].supported, rows[1].flows), (2, 6, 56));
        let csv = to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("t1,2,3,3,"));
        assert!(lines[2].starts_with("b5,2,6,56,"));
        let labels: Vec<&str> = lines[3..].iter().map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(labels, vec!["b/min", "b/max", "b/mean", "t/min", "t/max", "t/mean"]);
        assert!(lines[5].starts_with("b/mean,2.00,6.00,56.00,"));
        assert!(lines.iter().all(|l| l.split(',').count() == 8));
    }
}
