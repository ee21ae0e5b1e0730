//! Report documents and their JSON, CSV and text encodings.
//!
//! All encodings are deterministic: records keep the order they were added
//! in and every collection inside a record is ordered.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::RuleApplication;
use crate::claims::ClaimResult;
use crate::families::{ChainReport, CounterexampleRecord};
use crate::knot::{PinchSolution, PinchTrajectory, TorusKnotClass};
use crate::two_bridge::SliceObstructionReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchRecord {
    pub knot: TorusKnotClass,
    pub solution: PinchSolution,
    pub result: TorusKnotClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    Pinch(PinchRecord),
    Trajectory(PinchTrajectory),
    Knot(CounterexampleRecord),
    Chain(ChainReport),
    SliceObstruction(SliceObstructionReport),
    Claim(ClaimResult),
}

impl Record {
    fn failed(&self) -> bool {
        matches!(self, Record::Claim(c) if !c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub command: String,
    pub records: Vec<Record>,
    pub verdict: Verdict,
}

impl ReportDocument {
    /// The verdict is `fail` exactly when some claim record failed.
    pub fn new(command: impl Into<String>, records: Vec<Record>) -> Self {
        let verdict = if records.iter().any(Record::failed) { Verdict::Fail } else { Verdict::Pass };
        ReportDocument { tool_version: env!("CARGO_PKG_VERSION").to_string(), command: command.into(), records, verdict }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (expected json, csv or text)")),
        }
    }
}

pub fn serialize(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("report documents always serialize");
            s.push('\n');
            s
        }
        Format::Csv => to_csv(doc),
        Format::Text => to_text(doc),
    }
}

pub fn parse_json(text: &str) -> Result<ReportDocument, serde_json::Error> {
    serde_json::from_str(text)
}

pub const KNOT_COLUMNS: [&str; 9] =
    ["p", "q", "theta", "gamma4_lower", "gamma4_upper", "counterexample", "candidate", "families", "provenance"];

fn columns(r: &Record) -> &'static [&'static str] {
    match r {
        Record::Knot(_) => &KNOT_COLUMNS,
        Record::Pinch(_) => &["p", "q", "t", "h", "result_p", "result_q"],
        Record::Trajectory(_) => &["start_p", "start_q", "step", "p", "q", "t", "h"],
        Record::Chain(_) => &["family", "step", "p", "q", "t", "h", "result_p", "result_q"],
        Record::SliceObstruction(_) => &["p", "q", "alexander", "determinant", "odd_square", "fox_milnor", "witness"],
        Record::Claim(_) => &["id", "title", "passed", "checks", "detail", "failures"],
    }
}

fn provenance_cell(apps: &[RuleApplication]) -> String {
    apps.iter().map(|a| format!("{}({})", a.rule, a.params)).collect::<Vec<_>>().join(";")
}

fn rows(r: &Record) -> Vec<Vec<String>> {
    let pair = |k: &TorusKnotClass| {
        let (p, q) = k.pair();
        [p.to_string(), q.to_string()]
    };
    match r {
        Record::Knot(k) => {
            let [p, q] = pair(&k.knot);
            let families = k.families.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(";");
            vec![vec![
                p,
                q,
                k.theta.to_string(),
                k.gamma4.lower.to_string(),
                k.gamma4.upper.to_string(),
                k.counterexample.to_string(),
                k.candidate.to_string(),
                families,
                provenance_cell(&k.provenance),
            ]]
        }
        Record::Pinch(pr) => {
            let [p, q] = pair(&pr.knot);
            let [rp, rq] = pair(&pr.result);
            vec![vec![p, q, pr.solution.t.to_string(), pr.solution.h.to_string(), rp, rq]]
        }
        Record::Trajectory(tr) => {
            let [sp, sq] = pair(&tr.start);
            tr.steps
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let [p, q] = pair(&s.knot);
                    vec![sp.clone(), sq.clone(), (i + 1).to_string(), p, q, s.solution.t.to_string(), s.solution.h.to_string()]
                })
                .collect()
        }
        Record::Chain(ch) => ch
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let [p, q] = pair(&s.knot);
                let [rp, rq] = pair(&s.result);
                vec![ch.params.to_string(), (i + 1).to_string(), p, q, s.solution.t.to_string(), s.solution.h.to_string(), rp, rq]
            })
            .collect(),
        Record::SliceObstruction(so) => vec![vec![
            so.fraction.p().to_string(),
            so.fraction.q().to_string(),
            so.alexander.to_string(),
            so.determinant.to_string(),
            so.determinant_is_odd_square.to_string(),
            so.fox_milnor_passes.to_string(),
            so.factor_witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
        ]],
        Record::Claim(c) => vec![vec![
            c.id.to_string(),
            c.title.clone(),
            c.passed.to_string(),
            c.checks.to_string(),
            c.detail.clone(),
            c.failures.join(";"),
        ]],
    }
}

/// One header per run of same-kind records. An empty document gets the
/// knot-record header alone.
fn to_csv(doc: &ReportDocument) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut current: Option<&[&str]> = None;
    if doc.records.is_empty() {
        w.write_record(KNOT_COLUMNS).expect("in-memory write");
    }
    for r in &doc.records {
        let cols = columns(r);
        if current != Some(cols) {
            w.write_record(cols).expect("in-memory write");
            current = Some(cols);
        }
        for row in rows(r) {
            w.write_record(&row).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

fn interval_text(lower: Option<u64>, upper: Option<u64>) -> String {
    match (lower, upper) {
        (Some(l), Some(u)) => format!("[{l},{u}]"),
        (Some(l), None) => format!(">= {l}"),
        (None, Some(u)) => format!("<= {u}"),
        (None, None) => String::new(),
    }
}

fn write_record_text(out: &mut String, r: &Record) {
    match r {
        Record::Pinch(p) => {
            let _ = writeln!(out, "{}: {} -> {}", p.knot, p.solution, p.result);
        }
        Record::Trajectory(tr) => {
            let _ = writeln!(out, "ϑ = {}", tr.len());
            let mut line = tr.start.to_string();
            for (i, s) in tr.steps.iter().enumerate() {
                let next = tr.steps.get(i + 1).map_or(tr.terminal, |n| n.knot);
                let _ = write!(line, " --{}--> {}", s.solution, next);
            }
            let _ = writeln!(out, "{line}");
        }
        Record::Knot(k) => {
            let mut flags = Vec::new();
            if k.counterexample {
                flags.push("counterexample");
            }
            if k.candidate {
                flags.push("candidate");
            }
            if k.is_stated_exception() {
                flags.push("stated exception");
            }
            let flags = if flags.is_empty() { String::new() } else { format!(" ({})", flags.join(", ")) };
            let _ = writeln!(out, "{}: ϑ = {}, γ₄ ∈ {}{flags}", k.knot, k.theta, k.gamma4);
            if !k.families.is_empty() {
                let fams: Vec<_> = k.families.iter().map(|f| f.to_string()).collect();
                let _ = writeln!(out, "  families: {}", fams.join(", "));
            }
            for a in &k.provenance {
                let _ = writeln!(out, "  {} {}: {} [{}]", a.rule, interval_text(a.lower, a.upper), a.params, a.quote);
            }
        }
        Record::Chain(ch) => {
            let _ = writeln!(out, "{}: {} -> {} ({})", ch.params, ch.start, ch.terminal, ch.terminal_family);
            for s in &ch.steps {
                let _ = writeln!(out, "  {} {} -> {}", s.knot, s.solution, s.result);
            }
        }
        Record::SliceObstruction(so) => {
            let _ = writeln!(out, "{}: Δ = {}, det = {}, {}", so.fraction, so.alexander, so.determinant, so.verdict());
            if let Some(w) = &so.factor_witness {
                let _ = writeln!(out, "  Δ = f(t)f(1/t) with f = {w}");
            }
        }
        Record::Claim(c) => {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{status}] {}. {} ({} checks; {})", c.id, c.title, c.checks, c.detail);
            for f in &c.failures {
                let _ = writeln!(out, "    {f}");
            }
        }
    }
}

fn to_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    for r in &doc.records {
        write_record_text(&mut out, r);
    }
    if doc.records.is_empty() {
        out.push_str("no records\n");
    }
    if doc.records.iter().any(|r| matches!(r, Record::Claim(_))) {
        let verdict = match doc.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        };
        let _ = writeln!(out, "verdict: {verdict}");
    }
    out
}
