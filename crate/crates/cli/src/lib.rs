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

//! Command-line front end: instance generation, the four supported-set
//! methods, oracle verification and the benchmark harness.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use bmcif_core::aof::all_supported_flows_with;
use bmcif_core::bench::{run_directory, to_csv};
use bmcif_core::distinct::all_supported_vectors_adjusted_with;
use bmcif_core::epsilon::{all_supported_vectors_epsilon_with, Variant};
use bmcif_core::format::{read_instance, write_instance};
use bmcif_core::frontier::extreme_supported_points_with;
use bmcif_core::generators::{
    gen_example_backarcs, gen_example_path_cycles, gen_random, gen_subset_sum, RandomConfig,
};
use bmcif_core::oracle::OracleReport;
use bmcif_core::{evaluate_cost, BiCost, Instance};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNREADABLE: i32 = 3;
pub const EXIT_GUARD: i32 = 4;
pub const EXIT_OTHER: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "bmcif", version, about = "Bi-objective minimum cost integer flow toolkit")]
struct Cli {
    /// Solve faces concurrently.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    SubsetSum,
    PathCycles,
    Backarcs,
    Random,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Extreme supported points as CSV.
    Extreme(InstanceArgs),
    /// Enumerate all supported efficient flows.
    SupportedFlows {
        #[command(flatten)]
        input: InstanceArgs,
        /// Print counts only.
        #[arg(long)]
        count_only: bool,
    },
    /// Supported nondominated points by binary partition.
    SupportedVectors(InstanceArgs),
    /// Supported nondominated points by epsilon-constraint sweeps.
    Epsilon {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, default_value = "compact")]
        variant: Variant,
    },
    /// Run every method and the oracle, and compare the point sets.
    Verify(InstanceArgs),
    /// Benchmark every instance file in a directory and write CSV.
    Bench {
        /// Directory holding `*.bmcf` files.
        #[arg(long = "instance", alias = "dir", value_name = "DIR")]
        dir: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct InstanceArgs {
    #[arg(long, value_name = "PATH")]
    instance: PathBuf,
}

#[derive(clap::Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m_param: Option<i64>,
    #[arg(long)]
    l_param: Option<i64>,
    /// Comma separated item weights.
    #[arg(long, value_delimiter = ',')]
    weights: Vec<i64>,
    /// Subset-sum target, recorded as a comment only.
    #[arg(long)]
    target: Option<i64>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    arcs: Option<usize>,
    #[arg(long, default_value_t = 10)]
    max_cost: i64,
    #[arg(long, default_value_t = 50)]
    max_cap: i64,
    #[arg(long, default_value_t = 50)]
    supply: i64,
    #[arg(long, default_value_t = 1)]
    sources: usize,
    #[arg(long, default_value_t = 1)]
    sinks: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Instance file that could not be read or parsed.
#[derive(Debug)]
struct Unreadable(String);

impl fmt::Display for Unreadable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Unreadable {}

/// Methods disagreed; the report has already been printed.
#[derive(Debug)]
struct Disagreement;

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("methods disagree with the oracle")
    }
}

impl std::error::Error for Disagreement {}

fn load(path: &Path) -> anyhow::Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Unreadable(format!("cannot read {}: {e}", path.display())))?;
    read_instance(&text).map_err(|e| Unreadable(format!("{}: {e}", path.display())).into())
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).map_err(Into::into),
    }
}

fn require<T>(value: Option<T>, flag: &str) -> anyhow::Result<T> {
    value.ok_or_else(|| anyhow!("--{flag} is required for this family"))
}

fn flow_text(flow: &[i64]) -> String {
    flow.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn points_text(points: &[BiCost]) -> String {
    points.iter().map(BiCost::to_string).collect::<Vec<_>>().join(" ")
}

fn generate(args: &GenArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let inst = match args.family {
        Family::SubsetSum => {
            if args.weights.is_empty() {
                return Err(anyhow!("--weights is required for subset-sum"));
            }
            gen_subset_sum(&args.weights)?
        }
        Family::PathCycles => gen_example_path_cycles(
            require(args.k, "k")?,
            require(args.m_param, "m-param")?,
            require(args.l_param, "l-param")?,
        )?,
        Family::Backarcs => gen_example_backarcs(require(args.k, "k")?, require(args.l_param, "l-param")?)?,
        Family::Random => gen_random(&RandomConfig {
            node_count: require(args.nodes, "nodes")?,
            arc_count: require(args.arcs, "arcs")?,
            supply_nodes: args.sources,
            sink_nodes: args.sinks,
            max_cost: args.max_cost,
            max_capacity: args.max_cap,
            total_supply: args.supply,
            seed: args.seed,
        })?,
    };
    let mut text = String::new();
    if let Some(t) = args.target {
        text.push_str(&format!("c target {t}\n"));
    }
    text.push_str(&write_instance(&inst));
    emit(out, args.out.as_deref(), &text)
}

fn extreme(path: &Path, parallel: bool, out: &mut dyn Write) -> anyhow::Result<()> {
    let inst = load(path)?;
    let frontier = extreme_supported_points_with(&inst, parallel)?;
    writeln!(out, "c1,c2")?;
    for p in frontier.images() {
        writeln!(out, "{},{}", p.c1, p.c2)?;
    }
    Ok(())
}

fn supported_flows(path: &Path, count_only: bool, parallel: bool, out: &mut dyn Write) -> anyhow::Result<()> {
    let inst = load(path)?;
    let res = all_supported_flows_with(&inst, parallel)?;
    writeln!(out, "supported efficient flows: {}", res.flows.len())?;
    for (i, f) in res.faces.iter().enumerate() {
        writeln!(
            out,
            "face {i} weight ({}, {}): {} flows, {} partition nodes",
            f.weight.w1, f.weight.w2, f.flow_count, f.nodes
        )?;
    }
    if !count_only {
        for f in &res.flows {
            writeln!(out, "{} -> {}", flow_text(f), evaluate_cost(&inst, f)?)?;
        }
    }
    Ok(())
}

fn supported_vectors(path: &Path, parallel: bool, out: &mut dyn Write) -> anyhow::Result<()> {
    let inst = load(path)?;
    let res = all_supported_vectors_adjusted_with(&inst, parallel)?;
    writeln!(out, "supported nondominated vectors: {}", res.points.len())?;
    for p in &res.points {
        writeln!(out, "{} via {}", p.point, flow_text(&p.witness))?;
    }
    let branches: usize = res.faces.iter().map(|f| f.branches()).sum();
    let leaves: usize = res.faces.iter().map(|f| f.leaves).sum();
    writeln!(out, "faces: {}", res.faces.len())?;
    writeln!(out, "branches: {branches}")?;
    writeln!(out, "leaves: {leaves}")?;
    if !res.points.is_empty() {
        writeln!(
            out,
            "partition nodes per vector: {:.2}",
            branches as f64 / res.points.len() as f64
        )?;
    }
    Ok(())
}

fn epsilon(path: &Path, variant: Variant, parallel: bool, out: &mut dyn Write) -> anyhow::Result<()> {
    let inst = load(path)?;
    let res = all_supported_vectors_epsilon_with(&inst, variant, parallel)?;
    writeln!(out, "variant: {variant}")?;
    writeln!(out, "supported nondominated vectors: {}", res.points.len())?;
    writeln!(out, "{}", points_text(&res.images()))?;
    for (i, t) in res.traces.iter().enumerate() {
        let d = &t.dimensions;
        writeln!(
            out,
            "face {i} weight ({}, {}): n'={} m'={} components={} standard {}x{} compact {}x{}",
            t.weight.w1,
            t.weight.w2,
            d.active_nodes,
            d.arcs,
            d.components,
            d.standard_variables,
            d.standard_rows,
            d.compact_variables,
            d.compact_rows
        )?;
        for s in &t.steps {
            let o = &s.outcome;
            let found = o.point().map_or_else(|| "infeasible".to_string(), |p| p.to_string());
            writeln!(
                out,
                "  eps {}: {} vars {} rows {} nodes {} time {:.6}s",
                s.epsilon,
                found,
                o.variables,
                o.rows,
                o.nodes,
                o.elapsed.as_secs_f64()
            )?;
        }
    }
    writeln!(out, "ILP solves: {}", res.solves())?;
    Ok(())
}

fn diff(name: &str, got: &[BiCost], want: &[BiCost], out: &mut dyn Write) -> anyhow::Result<bool> {
    let missing: Vec<BiCost> = want.iter().filter(|p| !got.contains(p)).copied().collect();
    let extra: Vec<BiCost> = got.iter().filter(|p| !want.contains(p)).copied().collect();
    if missing.is_empty() && extra.is_empty() {
        writeln!(out, "{name}: agrees ({} vectors)", got.len())?;
        return Ok(true);
    }
    writeln!(out, "{name}: DISAGREES")?;
    writeln!(out, "  missing: {}", points_text(&missing))?;
    writeln!(out, "  extra: {}", points_text(&extra))?;
    Ok(false)
}

fn verify(path: &Path, parallel: bool, out: &mut dyn Write) -> anyhow::Result<()> {
    let inst = load(path)?;
    let oracle = OracleReport::compute(&inst)?;
    let want = oracle.supported();
    let ao = all_supported_flows_with(&inst, parallel)?;
    let mut ao_points: Vec<BiCost> = ao
        .flows
        .iter()
        .map(|f| evaluate_cost(&inst, f))
        .collect::<bmcif_core::Result<_>>()?;
    ao_points.sort();
    ao_points.dedup();
    let ds = all_supported_vectors_adjusted_with(&inst, parallel)?.images();
    let st = all_supported_vectors_epsilon_with(&inst, Variant::Standard, parallel)?.images();
    let co = all_supported_vectors_epsilon_with(&inst, Variant::Compact, parallel)?.images();

    writeln!(out, "|Y_N|={}", oracle.nondominated().len())?;
    writeln!(out, "|Y_EN|={}", oracle.extreme().len())?;
    writeln!(out, "|Y_SN|={}", want.len())?;
    writeln!(out, "|X_SN|={}", ao.flows.len())?;
    writeln!(out, "oracle: {}", points_text(&want))?;
    let mut ok = true;
    for (name, got) in [
        ("all-optimal-flows", &ao_points),
        ("distinct-cost", &ds),
        ("epsilon-standard", &st),
        ("epsilon-compact", &co),
    ] {
        ok &= diff(name, got, &want, out)?;
    }
    if ao.flows.len() != oracle.supported_flow_count() {
        writeln!(
            out,
            "note: oracle counts {} supported efficient flows",
            oracle.supported_flow_count()
        )?;
    }
    if ok {
        writeln!(out, "verify: OK")?;
        Ok(())
    } else {
        writeln!(out, "verify: FAILED")?;
        Err(Disagreement.into())
    }
}

fn bench(dir: &Path, out_path: Option<&Path>, parallel: bool, out: &mut dyn Write) -> anyhow::Result<()> {
    let rows = run_directory(dir, parallel)?;
    emit(out, out_path, &to_csv(&rows))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    let parallel = cli.parallel;
    match cli.command {
        Command::Gen(args) => generate(&args, out),
        Command::Extreme(a) => extreme(&a.instance, parallel, out),
        Command::SupportedFlows { input, count_only } => {
            supported_flows(&input.instance, count_only, parallel, out)
        }
        Command::SupportedVectors(a) => supported_vectors(&a.instance, parallel, out),
        Command::Epsilon { input, variant } => epsilon(&input.instance, variant, parallel, out),
        Command::Verify(a) => verify(&a.instance, parallel, out),
        Command::Bench { dir, out: path } => bench(&dir, path.as_deref(), parallel, out),
    }
}

fn exit_code(err: &anyhow::Error) -> i32 {
    if err.is::<Disagreement>() {
        return EXIT_DISAGREE;
    }
    if err.is::<Unreadable>() {
        return EXIT_UNREADABLE;
    }
    match err.downcast_ref::<bmcif_core::Error>() {
        Some(bmcif_core::Error::GuardExceeded { .. }) => EXIT_GUARD,
        Some(bmcif_core::Error::Parse { .. }) => EXIT_UNREADABLE,
        _ => EXIT_OTHER,
    }
}

/// Runs one command line and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return if code == 0 { 0 } else { EXIT_USAGE };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let code = exit_code(&e);
            if code != EXIT_DISAGREE {
                let _ = writeln!(err, "error: {e:#}");
            }
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("bmcif").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(run_str(&["extreme", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run_str(&[]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("supported-flows"));
    }

    #[test]
    fn missing_file_is_unreadable() {
        let (code, _, err) = run_str(&["extreme", "--instance", "/nonexistent/x.bmcf"]);
        assert_eq!(code, EXIT_UNREADABLE);
        assert!(err.contains("cannot read"));
    }

    #[test]
    fn missing_family_parameter() {
        let (code, _, err) = run_str(&["gen", "--family", "backarcs", "--k", "5"]);
        assert_eq!(code, EXIT_OTHER);
        assert!(err.contains("--l-param"));
    }

    #[test]
    fn target_is_a_comment() {
        let (code, out, _) = run_str(&["gen", "--family", "subset-sum", "--weights", "2,3", "--target", "5"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("c target 5\n"));
        assert_eq!(read_instance(&out).unwrap().arcs.len(), 4);
    }
}
