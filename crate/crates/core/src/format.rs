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

//! Plain-text bi-cost instance format.
//!
//! ```text
//! c comment
//! p bmcf <nodes> <arcs>
//! n <id> <balance>
//! a <src> <dst> <lower> <upper> <cost1> <cost2>
//! ```
//!
//! Node ids are 1-based. Omitted nodes have balance zero. Arc lines appear in
//! arc-index order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Arc, Instance};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn fields<const N: usize>(line: usize, rest: &[&str], what: &str) -> Result<[i64; N]> {
    if rest.len() != N {
        return Err(parse_err(
            line,
            format!("{what} line needs {N} fields, found {}", rest.len()),
        ));
    }
    let mut out = [0i64; N];
    for (slot, tok) in out.iter_mut().zip(rest) {
        *slot = tok
            .parse()
            .map_err(|_| parse_err(line, format!("not an integer: {tok:?}")))?;
    }
    Ok(out)
}

fn node_id(line: usize, raw: i64, n: usize) -> Result<usize> {
    if raw < 1 || raw as u64 > n as u64 {
        return Err(parse_err(line, format!("node id {raw} outside 1..={n}")));
    }
    Ok(raw as usize - 1)
}

pub fn read_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut balances = Vec::new();
    let mut seen_node = Vec::new();
    let mut arcs = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let Some((&kind, rest)) = toks.split_first() else {
            continue;
        };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                if rest.len() != 3 || rest[0] != "bmcf" {
                    return Err(parse_err(line, "expected \"p bmcf <nodes> <arcs>\""));
                }
                let [n, m] = fields::<2>(line, &rest[1..], "problem")?;
                if n < 1 || m < 0 {
                    return Err(parse_err(line, "node count must be positive"));
                }
                header = Some((n as usize, m as usize));
                balances = vec![0; n as usize];
                seen_node = vec![false; n as usize];
            }
            "n" | "a" => {
                let Some((n, m)) = header else {
                    return Err(parse_err(line, "missing problem line before data"));
                };
                if kind == "n" {
                    let [id, b] = fields::<2>(line, rest, "node")?;
                    let v = node_id(line, id, n)?;
                    if seen_node[v] {
                        return Err(parse_err(line, format!("duplicate node line for {id}")));
                    }
                    seen_node[v] = true;
                    balances[v] = b;
                } else {
                    if arcs.len() == m {
                        return Err(parse_err(line, format!("more than {m} arc lines")));
                    }
                    let [s, t, l, u, c1, c2] = fields::<6>(line, rest, "arc")?;
                    let src = node_id(line, s, n)?;
                    let dst = node_id(line, t, n)?;
                    arcs.push(Arc::new(src, dst, l, u, c1, c2));
                }
            }
            other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
    }

    let Some((n, m)) = header else {
        return Err(parse_err(last_line.max(1), "missing problem line"));
    };
    if arcs.len() != m {
        return Err(parse_err(
            last_line.max(1),
            format!("problem line declares {m} arcs, found {}", arcs.len()),
        ));
    }
    Ok(Instance::new(n, arcs, balances))
}

/// Canonical text: problem line, nonzero balances by node id, then arcs.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "p bmcf {} {}", inst.node_count, inst.arcs.len()).unwrap();
    for (i, &b) in inst.balances.iter().enumerate() {
        if b != 0 {
            writeln!(out, "n {} {}", i + 1, b).unwrap();
        }
    }
    for a in &inst.arcs {
        writeln!(
            out,
            "a {} {} {} {} {} {}",
            a.src + 1,
            a.dst + 1,
            a.lower,
            a.upper,
            a.cost1,
            a.cost2
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::t1;

    const T1: &str = "p bmcf 3 3\nn 1 2\nn 3 -2\na 1 2 0 2 1 2\na 2 3 0 2 1 1\na 1 3 0 2 3 1";

    #[test]
    fn reads_t1() {
        assert_eq!(read_instance(T1).unwrap(), t1());
    }

    #[test]
    fn round_trip_is_canonical() {
        let text = write_instance(&t1());
        assert_eq!(text, format!("{T1}\n"));
        assert_eq!(write_instance(&read_instance(&text).unwrap()), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = format!("c hello\n\n{T1}\nc trailing\n");
        assert_eq!(read_instance(&text).unwrap(), t1());
    }

    #[test]
    fn missing_problem_line_names_line_one() {
        let err = read_instance("n 1 2\na 1 2 0 1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = read_instance("").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn duplicate_problem_line() {
        let err = read_instance("p bmcf 2 0\np bmcf 2 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn arc_count_mismatch() {
        let err = read_instance("p bmcf 2 2\na 1 2 0 1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = read_instance("p bmcf 2 1\na 1 2 0 1 0 0\na 2 1 0 1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn malformed_lines() {
        for (text, line) in [
            ("p bmcf 2 1\na 1 2 0 1 0\n", 2),
            ("p bmcf 2 1\na 1 x 0 1 0 0\n", 2),
            ("p bmcf 2 1\nn 3 1\n", 2),
            ("p bmcf 2 1\nn 1 1\nn 1 1\n", 3),
            ("p min 2 1\n", 1),
            ("p bmcf 2 0\nq\n", 2),
        ] {
            let err = read_instance(text).unwrap_err();
            assert!(
                matches!(err, Error::Parse { line: l, .. } if l == line),
                "{text:?}: {err}"
            );
        }
    }
}
