//! Report values shared by the text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use tpa_core::generic::{self, SpectrumCheck};
use tpa_core::modules::LayeredGraph;
use tpa_core::oracle::{OraclePdim, ResolutionTrace};
use tpa_core::{ExtNat, MonomialModule, Path, SemisimpleSequence, SpectrumReport, TruncatedAlgebra, VertexId};

/// Bumped whenever a field changes meaning or disappears.
pub const REPORT_VERSION: u32 = 1;

/// One command's result: a JSON value and its text rendering.
#[derive(Debug, Clone)]
pub struct Report {
    command: &'static str,
    result: Value,
    human: String,
}

impl Report {
    fn new<T: Serialize>(command: &'static str, result: &T, human: String) -> Self {
        Report {
            command,
            result: serde_json::to_value(result).expect("report values serialize"),
            human,
        }
    }

    pub(crate) fn raw(command: &'static str, text: String) -> Self {
        Report {
            command,
            result: json!({ "text": text }),
            human: text,
        }
    }

    pub(crate) fn graph(graph: &LayeredGraph, human: String) -> Self {
        Report::new("graph", graph, human)
    }

    pub fn command(&self) -> &str {
        self.command
    }

    pub fn result(&self) -> &Value {
        &self.result
    }

    pub fn to_json(&self) -> String {
        let envelope = json!({
            "version": REPORT_VERSION,
            "command": self.command,
            "result": self.result,
        });
        let mut s = serde_json::to_string_pretty(&envelope).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        self.human.clone()
    }
}

fn name(alg: &TruncatedAlgebra, v: VertexId) -> String {
    alg.quiver().vertex_name(v).to_string()
}

fn set_text<'a>(items: impl IntoIterator<Item = &'a ExtNat>) -> String {
    let parts: Vec<String> = items.into_iter().map(ExtNat::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn rows_text(s: &SemisimpleSequence) -> String {
    let mut out = String::new();
    for (l, row) in s.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "  layer {l}: {}", cells.join(" "));
    }
    out
}

#[derive(Serialize)]
struct VertexRow {
    name: String,
    c: ExtNat,
    b: ExtNat,
    cyclebound: bool,
    pdim_simple: ExtNat,
}

#[derive(Serialize)]
struct Witness {
    vertex: String,
    length: usize,
}

#[derive(Serialize)]
struct FindimOut {
    s: i64,
    findim: u64,
    witness: Option<Witness>,
    m: Option<u64>,
    max_simple_pdim: Option<u64>,
    bracket: Option<[u64; 2]>,
}

#[derive(Serialize)]
struct TreeRow {
    vertex: String,
    branches: Vec<String>,
    pdim: ExtNat,
}

#[derive(Serialize)]
struct AnalyzeOut {
    name: String,
    bound: usize,
    vertex_count: usize,
    arrow_count: usize,
    vertices: Vec<VertexRow>,
    cyclebound: Vec<String>,
    findim: FindimOut,
    tree_modules: Vec<TreeRow>,
}

pub(crate) fn analyze(alg: &TruncatedAlgebra) -> Report {
    let q = alg.quiver();
    let vertices: Vec<VertexRow> = q
        .vertices()
        .map(|v| VertexRow {
            name: name(alg, v),
            c: q.c_out(v),
            b: q.b_in(v),
            cyclebound: q.is_cyclebound(v),
            pdim_simple: alg.pdim_simple(v),
        })
        .collect();
    let f = alg.findim();
    let findim = FindimOut {
        s: f.s,
        findim: f.findim,
        witness: f.witness.map(|(v, length)| Witness {
            vertex: name(alg, v),
            length,
        }),
        m: f.longest_acyclic_path,
        max_simple_pdim: f.max_simple_pdim,
        bracket: f.bracket.map(|(a, b)| [a, b]),
    };
    let tree_modules: Vec<TreeRow> = q
        .vertices()
        .map(|v| {
            let t = generic::tree_t(alg, v);
            TreeRow {
                vertex: name(alg, v),
                branches: t.branches().iter().map(|p| q.format_path(p)).collect(),
                pdim: t.to_module(alg).pdim(alg),
            }
        })
        .collect();
    let out = AnalyzeOut {
        name: alg.name().to_string(),
        bound: alg.bound(),
        vertex_count: alg.vertex_count(),
        arrow_count: q.arrows().len(),
        cyclebound: q.cyclebound_set().into_iter().map(|v| name(alg, v)).collect(),
        vertices,
        findim,
        tree_modules,
    };

    let mut h = String::new();
    let _ = writeln!(
        h,
        "algebra {}: {} vertices, {} arrows, L = {}",
        out.name, out.vertex_count, out.arrow_count, out.bound
    );
    let _ = writeln!(h, "{:<8} {:>4} {:>4} {:>10} {:>7}", "vertex", "c", "b", "cyclebound", "pdim S");
    for r in &out.vertices {
        let _ = writeln!(
            h,
            "{:<8} {:>4} {:>4} {:>10} {:>7}",
            r.name,
            r.c.to_string(),
            r.b.to_string(),
            if r.cyclebound { "yes" } else { "no" },
            r.pdim_simple.to_string()
        );
    }
    let _ = writeln!(h, "cyclebound = {{{}}}", out.cyclebound.join(", "));
    let _ = writeln!(h, "findim = {} (s = {})", out.findim.findim, out.findim.s);
    if let Some(w) = &out.findim.witness {
        let _ = writeln!(h, "witness: paths of length {} ending at {}", w.length, w.vertex);
    }
    match (out.findim.m, out.findim.max_simple_pdim, out.findim.bracket) {
        (Some(m), Some(best), Some([lo, hi])) => {
            let _ = writeln!(h, "m = {m}, max pdim of non-cyclebound simples = {best}, bracket [{lo}, {hi}]");
        }
        _ => {
            let _ = writeln!(h, "every vertex is cyclebound");
        }
    }
    let _ = writeln!(h, "tree modules T_i:");
    for t in &out.tree_modules {
        let _ = writeln!(h, "  T_{}: pdim {}, branches {}", t.vertex, t.pdim, t.branches.join(", "));
    }
    Report::new("analyze", &out, h)
}

#[derive(Serialize)]
struct PdimPathOut {
    path: String,
    length: usize,
    target: String,
    c: ExtNat,
    pdim: ExtNat,
}

pub(crate) fn pdim_path(alg: &TruncatedAlgebra, q: &Path, pdim: ExtNat) -> Report {
    let out = PdimPathOut {
        path: alg.quiver().format_path(q),
        length: q.len(),
        target: name(alg, q.target()),
        c: alg.quiver().c_out(q.target()),
        pdim,
    };
    let h = format!(
        "pdim Lambda({}) = {}  (length {}, ends at {} with c = {})\n",
        out.path, out.pdim, out.length, out.target, out.c
    );
    Report::new("pdim-path", &out, h)
}

#[derive(Serialize)]
struct PdimSimpleOut {
    vertex: String,
    cyclebound: bool,
    pdim: ExtNat,
}

pub(crate) fn pdim_simple(alg: &TruncatedAlgebra, v: VertexId) -> Report {
    let out = PdimSimpleOut {
        vertex: name(alg, v),
        cyclebound: alg.quiver().is_cyclebound(v),
        pdim: alg.pdim_simple(v),
    };
    let h = format!("pdim S_{} = {}\n", out.vertex, out.pdim);
    Report::new("pdim-simple", &out, h)
}

#[derive(Serialize)]
struct SummandOut {
    slot: usize,
    path: String,
    pdim: ExtNat,
}

#[derive(Serialize)]
struct PdimModuleOut {
    slots: Vec<String>,
    dimension: usize,
    layering: Vec<Vec<u64>>,
    syzygy: Vec<SummandOut>,
    pdim: ExtNat,
}

fn first_syzygy(alg: &TruncatedAlgebra, m: &MonomialModule) -> Vec<SummandOut> {
    m.syzygy(alg)
        .iter()
        .map(|sp| SummandOut {
            slot: sp.slot + 1,
            path: alg.quiver().format_path(&sp.path),
            pdim: alg.pdim_cyclic_shape(sp.target(), sp.len()),
        })
        .collect()
}

pub(crate) fn pdim_module(alg: &TruncatedAlgebra, m: &MonomialModule) -> Report {
    let layering = m.radical_layering(alg);
    let out = PdimModuleOut {
        slots: m.slots().iter().map(|&v| name(alg, v)).collect(),
        dimension: m.dimension(alg),
        layering: layering.rows(),
        syzygy: first_syzygy(alg, m),
        pdim: m.pdim(alg),
    };
    let mut h = format!("pdim M = {}\ndimension {}\nradical layering:\n", out.pdim, out.dimension);
    h.push_str(&rows_text(&layering));
    let _ = writeln!(h, "first syzygy:");
    for s in &out.syzygy {
        let _ = writeln!(h, "  Lambda({}) in slot {}: pdim {}", s.path, s.slot, s.pdim);
    }
    Report::new("pdim-module", &out, h)
}

#[derive(Serialize)]
struct ShapeOut {
    target: String,
    length: usize,
    multiplicity: u64,
}

#[derive(Serialize)]
struct StepOut {
    degree: usize,
    summands: Vec<ShapeOut>,
}

#[derive(Serialize)]
struct SyzygyOut {
    generators: Vec<SummandOut>,
    steps: Vec<StepOut>,
}

pub(crate) fn syzygy(
    alg: &TruncatedAlgebra,
    m: &MonomialModule,
    steps: &[BTreeMap<(VertexId, usize), u64>],
) -> Report {
    let out = SyzygyOut {
        generators: first_syzygy(alg, m),
        steps: steps
            .iter()
            .enumerate()
            .map(|(k, shapes)| StepOut {
                degree: k + 1,
                summands: shapes
                    .iter()
                    .map(|(&(v, length), &multiplicity)| ShapeOut {
                        target: name(alg, v),
                        length,
                        multiplicity,
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut h = String::from("first syzygy generators:\n");
    for s in &out.generators {
        let _ = writeln!(h, "  slot {}: {}", s.slot, s.path);
    }
    for step in &out.steps {
        let _ = write!(h, "syzygy {}:", step.degree);
        if step.summands.is_empty() {
            h.push_str(" 0");
        }
        for s in &step.summands {
            let _ = write!(h, " {}x(length {} at {})", s.multiplicity, s.length, s.target);
        }
        h.push('\n');
    }
    Report::new("syzygy", &out, h)
}

#[derive(Serialize)]
struct GenericOut {
    realizable: bool,
    s: Vec<Vec<u64>>,
    r: Option<Vec<Vec<u64>>>,
    generic_pdim: Option<ExtNat>,
}

pub(crate) fn generic(alg: &TruncatedAlgebra, s: &SemisimpleSequence) -> tpa_core::Result<Report> {
    let realizable = generic::realizable(alg, s)?;
    let (r, pdim) = if realizable {
        let d = generic::layer_decomposition(alg, s)?;
        (Some(d.r), Some(generic::generic_pdim(alg, s)?))
    } else {
        (None, None)
    };
    let out = GenericOut {
        realizable,
        s: s.rows(),
        r: r.as_ref().map(SemisimpleSequence::rows),
        generic_pdim: pdim,
    };
    let mut h = format!("realizable: {}\n", if realizable { "yes" } else { "no" });
    if let (Some(r), Some(p)) = (&r, pdim) {
        h.push_str("r:\n");
        h.push_str(&rows_text(r));
        let _ = writeln!(h, "generic pdim = {p}");
    }
    Ok(Report::new("generic", &out, h))
}

pub(crate) fn spectrum(report: &SpectrumReport) -> Report {
    let h = format!(
        "generic pdim = {}\nspectrum = {}\n",
        report.generic,
        set_text(&report.full_set)
    );
    Report::new("spectrum", report, h)
}

#[derive(Serialize)]
struct SpectrumCheckOut<'a> {
    predicted: &'a SpectrumReport,
    enumerated: Vec<ExtNat>,
    sequences_visited: u64,
    monotonicity_violations: u64,
    agrees: bool,
}

pub(crate) fn spectrum_check(check: &SpectrumCheck, elapsed: Duration) -> Report {
    let out = SpectrumCheckOut {
        predicted: &check.predicted,
        enumerated: check.enumerated_values.iter().copied().collect(),
        sequences_visited: check.sequences_visited,
        monotonicity_violations: check.monotonicity_violations,
        agrees: check.agrees(),
    };
    let h = format!(
        "predicted  = {}\nenumerated = {}\nsequences visited: {}\nmonotonicity violations: {}\n{} ({:.2} s)\n",
        set_text(&check.predicted.full_set),
        set_text(&check.enumerated_values),
        out.sequences_visited,
        out.monotonicity_violations,
        if out.agrees { "agree" } else { "MISMATCH" },
        elapsed.as_secs_f64()
    );
    Report::new("spectrum-check", &out, h)
}

#[derive(Serialize)]
struct OracleOut<'a> {
    formula: ExtNat,
    oracle: OraclePdim,
    depth: usize,
    agrees: bool,
    steps: &'a [tpa_core::oracle::ResolutionStep],
}

pub(crate) fn oracle(formula: ExtNat, trace: &ResolutionTrace, depth: usize) -> Report {
    let out = OracleOut {
        formula,
        oracle: trace.result,
        depth,
        agrees: trace.result.matches(formula),
        steps: &trace.steps,
    };
    let mut h = format!(
        "formula pdim = {}\noracle pdim  = {} (depth {})\n{}\n",
        formula,
        trace.result,
        depth,
        if out.agrees { "agree" } else { "MISMATCH" }
    );
    let minimal = trace.steps.iter().all(|s| s.minimal);
    let _ = writeln!(
        h,
        "{} syzygies computed; covers {}",
        trace.steps.len() - 1,
        if minimal { "certified minimal" } else { "NOT minimal" }
    );
    Report::new("oracle", &out, h)
}
