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

use std::path::Path;
use std::process::{Command, Output};

const T1: &str = "c three-node example\np bmcf 3 3\nn 1 2\nn 3 -2\na 1 2 0 2 1 2\na 2 3 0 2 1 1\na 1 3 0 2 3 1\n";

fn bmcif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmcif")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn line_value<'a>(text: &'a str, prefix: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(prefix))
        .unwrap_or_else(|| panic!("no line starting with {prefix:?} in\n{text}"))
        .trim()
}

#[test]
fn verify_backarcs_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("backarcs.bmcf");
    let gen = bmcif(&["gen", "--family", "backarcs", "--k", "5", "--l-param", "5", "--out", path_str(&file)]);
    assert!(gen.status.success());
    let out = bmcif(&["verify", "--instance", path_str(&file)]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(line_value(&text, "|Y_SN|="), "6");
    assert_eq!(line_value(&text, "|X_SN|="), "56");
    assert!(text.contains("verify: OK"));
}

#[test]
fn epsilon_compact_on_three_node_example() {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), T1).unwrap();
    let out = bmcif(&["epsilon", "--variant", "compact", "--instance", path_str(file.path())]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert_eq!(line_value(&text, "supported nondominated vectors:"), "3");
    assert_eq!(line_value(&text, "ILP solves:"), "2");
    assert_eq!(line_value(&text, "variant:"), "compact");
}

#[test]
fn subset_sum_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ss.bmcf");
    let gen = bmcif(&["gen", "--family", "subset-sum", "--weights", "3,5,7", "--out", path_str(&file)]);
    assert!(gen.status.success());
    let out = bmcif(&["supported-vectors", "--instance", path_str(&file)]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert_eq!(line_value(&text, "supported nondominated vectors:"), "8");
    assert_eq!(line_value(&text, "faces:"), "1");
}

#[test]
fn extreme_and_flows_on_three_node_example() {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), T1).unwrap();
    let out = bmcif(&["extreme", "--instance", path_str(file.path())]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert_eq!(csv.lines().next(), Some("c1,c2"));
    assert_eq!(csv.lines().count(), 3);

    let out = bmcif(&["--parallel", "supported-flows", "--count-only", "--instance", path_str(file.path())]);
    let text = stdout(&out);
    assert!(out.status.success());
    assert!(!text.contains("->"));
    let full = stdout(&bmcif(&["supported-flows", "--instance", path_str(file.path())]));
    let n: usize = line_value(&full, "supported efficient flows:").parse().unwrap();
    assert_eq!(full.lines().filter(|l| l.contains("->")).count(), n);
}

#[test]
fn exit_codes() {
    assert_eq!(bmcif(&["verify", "--nope"]).status.code(), Some(2));
    assert_eq!(bmcif(&["verify", "--instance", "/no/such/file"]).status.code(), Some(3));

    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "p bmcf 2 1\na 1 9 0 1 0 0\n").unwrap();
    assert_eq!(bmcif(&["extreme", "--instance", path_str(bad.path())]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.bmcf");
    let gen = bmcif(&[
        "gen", "--family", "random", "--nodes", "20", "--arcs", "40", "--seed", "3", "--out", path_str(&big),
    ]);
    assert!(gen.status.success());
    assert_eq!(bmcif(&["verify", "--instance", path_str(&big)]).status.code(), Some(4));

    let infeasible = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(infeasible.path(), "p bmcf 2 1\nn 1 5\nn 2 -5\na 1 2 0 1 1 1\n").unwrap();
    assert_eq!(bmcif(&["extreme", "--instance", path_str(infeasible.path())]).status.code(), Some(5));
}

#[test]
fn bench_directory_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    for (name, seed) in [("small_1", "1"), ("small_2", "2")] {
        let file = dir.path().join(format!("{name}.bmcf"));
        let gen = bmcif(&[
            "gen", "--family", "random", "--nodes", "8", "--arcs", "14", "--max-cap", "4", "--supply", "4",
            "--seed", seed, "--out", path_str(&file),
        ]);
        assert!(gen.status.success());
    }
    let csv = dir.path().join("out.csv");
    let out = bmcif(&["bench", "--instance", path_str(dir.path()), "--out", path_str(&csv)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "instance,|Y_EN|,|Y_SN|,|X_SN|,t_AO,t_DS,t_eps,t_new_eps");
    assert!(lines[1].starts_with("small_1,"));
    assert!(lines[2].starts_with("small_2,"));
    assert!(lines.iter().any(|l| l.starts_with("small/mean,")));
}
