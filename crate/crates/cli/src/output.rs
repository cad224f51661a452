//! Text, JSON and CSV encodings of command results.
//!
//! Every machine format carries the same numbers as the text format, and
//! all encoders are pure functions of their input, so output is byte-stable.

use std::fmt::Write;

use clap::ValueEnum;
use minmax_core::{CensusTable, EstimateTable, MinMaxTree, OrbitRecord, Permutation, VerifyReport};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
    Dot,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Dot => "dot",
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct NodeJson {
    pos: usize,
    entry: usize,
    parent: Option<usize>,
    left: Option<usize>,
    right: Option<usize>,
    span: [usize; 2],
    depth: usize,
    kind: &'static str,
}

#[derive(Serialize)]
struct TreeJson<'a> {
    n: usize,
    variant: &'static str,
    permutation: &'a [usize],
    root: usize,
    nodes: Vec<NodeJson>,
}

pub fn tree_json(t: &MinMaxTree) -> String {
    let nodes = (1..=t.len())
        .map(|i| {
            let (lo, hi) = t.span(i);
            NodeJson {
                pos: i,
                entry: t.entry(i),
                parent: t.parent(i),
                left: t.left(i),
                right: t.right(i),
                span: [lo, hi],
                depth: t.depth(i),
                kind: t.kind(i).label(),
            }
        })
        .collect();
    to_json(&TreeJson {
        n: t.len(),
        variant: t.variant().name(),
        permutation: t.permutation().entries(),
        root: t.root(),
        nodes,
    })
}

#[derive(Serialize)]
struct CensusJson<'a> {
    n: usize,
    variant: &'static str,
    total: u64,
    leaf_counts: Vec<u64>,
    d: &'a [[u64; 3]],
}

pub fn census_json(table: &CensusTable) -> String {
    to_json(&CensusJson {
        n: table.n(),
        variant: table.variant().name(),
        total: table.total(),
        leaf_counts: table.leaf_counts(),
        d: table.d(),
    })
}

pub fn census_csv(table: &CensusTable) -> String {
    let mut out = String::from("i,leaf,d0,d1,d2\n");
    for (k, row) in table.d().iter().enumerate() {
        writeln!(out, "{},{},{},{},{}", k + 1, row[0], row[0], row[1], row[2]).unwrap();
    }
    out
}

pub fn census_text(table: &CensusTable) -> String {
    let mut out = format!(
        "census n={} variant={} total={}\n",
        table.n(),
        table.variant(),
        table.total()
    );
    writeln!(
        out,
        "{:>4} {:>14} {:>14} {:>14} {:>14}",
        "i", "leaf", "d0", "d1", "d2"
    )
    .unwrap();
    for (k, row) in table.d().iter().enumerate() {
        writeln!(
            out,
            "{:>4} {:>14} {:>14} {:>14} {:>14}",
            k + 1,
            row[0],
            row[0],
            row[1],
            row[2]
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct EstimateRow {
    i: usize,
    leaf_hits: u64,
    estimate: f64,
    std_error: f64,
}

#[derive(Serialize)]
struct EstimateJson {
    n: usize,
    trials: u64,
    seed: u64,
    positions: Vec<EstimateRow>,
}

fn estimate_rows(e: &EstimateTable) -> Vec<EstimateRow> {
    (1..=e.n)
        .map(|i| EstimateRow {
            i,
            leaf_hits: e.leaf_hits[i - 1],
            estimate: e.estimate(i),
            std_error: e.std_error(i),
        })
        .collect()
}

pub fn estimate_json(e: &EstimateTable) -> String {
    to_json(&EstimateJson {
        n: e.n,
        trials: e.trials,
        seed: e.seed,
        positions: estimate_rows(e),
    })
}

pub fn estimate_csv(e: &EstimateTable) -> String {
    let mut out = String::from("i,leaf_hits,estimate,std_error\n");
    for r in estimate_rows(e) {
        writeln!(
            out,
            "{},{},{},{}",
            r.i, r.leaf_hits, r.estimate, r.std_error
        )
        .unwrap();
    }
    out
}

pub fn estimate_text(e: &EstimateTable) -> String {
    let mut out = format!("sample n={} trials={} seed={}\n", e.n, e.trials, e.seed);
    writeln!(
        out,
        "{:>4} {:>10} {:>22} {:>22}",
        "i", "leaf_hits", "estimate", "std_error"
    )
    .unwrap();
    for r in estimate_rows(e) {
        writeln!(
            out,
            "{:>4} {:>10} {:>22} {:>22}",
            r.i, r.leaf_hits, r.estimate, r.std_error
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    n: usize,
    passed: bool,
    counterexample: Option<String>,
    detail: Option<&'a str>,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    n_max: usize,
    passed: bool,
    checks: Vec<CheckJson<'a>>,
}

pub fn verify_json(r: &VerifyReport) -> String {
    to_json(&VerifyJson {
        n_max: r.n_max,
        passed: r.passed(),
        checks: r
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name,
                n: c.n,
                passed: c.passed,
                counterexample: c.counterexample.as_ref().map(|p| p.to_string()),
                detail: c.detail.as_deref(),
            })
            .collect(),
    })
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        writeln!(out, "{c}").unwrap();
    }
    let failed = r.failures().count();
    writeln!(
        out,
        "verify n_max={}: {} checks, {} failed",
        r.n_max,
        r.checks.len(),
        failed
    )
    .unwrap();
    out
}

#[derive(Serialize)]
struct OrbitJson {
    base: String,
    generators: Vec<usize>,
    trivial_generators: Vec<usize>,
    size: usize,
    members: Vec<String>,
}

pub fn orbit_json(o: &OrbitRecord) -> String {
    to_json(&OrbitJson {
        base: o.base().to_string(),
        generators: o.generators().iter().collect(),
        trivial_generators: o.trivial_generators(),
        size: o.size(),
        members: o.members().iter().map(|p| p.to_string()).collect(),
    })
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Header comment lines, then one member per line.
pub fn orbit_text(o: &OrbitRecord) -> String {
    let gens: Vec<usize> = o.generators().iter().collect();
    let mut out = format!(
        "# orbit of {} under {{{}}}: {} members; trivial generators {{{}}}\n",
        o.base(),
        join(&gens),
        o.size(),
        join(&o.trivial_generators())
    );
    for p in o.members() {
        writeln!(out, "{p}").unwrap();
    }
    out
}

#[derive(Serialize)]
struct PsiJson {
    input: String,
    i: usize,
    output: String,
}

pub fn psi_json(p: &Permutation, i: usize, q: &Permutation) -> String {
    to_json(&PsiJson {
        input: p.to_string(),
        i,
        output: q.to_string(),
    })
}

#[derive(Serialize)]
struct FixedJson<'a> {
    permutation: String,
    fixed: &'a [usize],
}

pub fn fixed_json(p: &Permutation, fixed: &[usize]) -> String {
    to_json(&FixedJson {
        permutation: p.to_string(),
        fixed,
    })
}

pub fn fixed_text(fixed: &[usize]) -> String {
    let words: Vec<String> = fixed.iter().map(|i| i.to_string()).collect();
    format!("{}\n", words.join(" "))
}
