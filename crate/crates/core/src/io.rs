//! File formats and report rendering.
//!
//! Three JSON schemas cross the process boundary: lattice specs, generator
//! specs, and operation tables (the same schema `construct` emits is what
//! `verify` accepts, so externally produced operations can be audited).
//! Text and CSV renderings are deterministic byte-for-byte: element order is
//! the lattice's canonical order and nothing is timestamped.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conditions::{ConditionReport, ConditionStatus};
use crate::construct::{OpTable, Provenance, VariantKind};
use crate::genfun::{Anchors, GeneratorError};
use crate::lattice::{FiniteLattice, LatticeError};
use crate::verify::{AxiomReport, AxiomStatus};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("operation table: {0}")]
    Table(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnchorsSpec {
    pub e1: String,
    pub a: String,
    pub e2: String,
}

/// On-disk form of an operation table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpTableSpec {
    /// Column/row order; must match the lattice's element order exactly.
    pub elements: Vec<String>,
    pub anchors: AnchorsSpec,
    pub provenance: String,
    /// `table[x][y]` is the label of `op(x, y)`.
    pub table: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_map: Option<Vec<Vec<u8>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_convention_cells: Option<u32>,
}

pub fn optable_to_spec(t: &OpTable) -> OpTableSpec {
    let l = t.lattice();
    let n = l.n();
    let labels = |e: usize| l.label(e).to_string();
    OpTableSpec {
        elements: l.labels().to_vec(),
        anchors: AnchorsSpec {
            e1: labels(t.anchors().e1),
            a: labels(t.anchors().a),
            e2: labels(t.anchors().e2),
        },
        provenance: t.provenance().to_string(),
        table: (0..n)
            .map(|x| (0..n).map(|y| labels(t.at(x, y))).collect())
            .collect(),
        branch_map: t
            .branch_map()
            .map(|m| (0..n).map(|x| m[x * n..(x + 1) * n].to_vec()).collect()),
        empty_convention_cells: Some(t.empty_convention_cells()),
    }
}

pub fn optable_to_json(t: &OpTable) -> String {
    let mut s = serde_json::to_string_pretty(&optable_to_spec(t)).expect("serializable");
    s.push('\n');
    s
}

/// Load a table against a lattice; `anchors` overrides the file's anchors.
pub fn optable_from_spec(
    lattice: &Arc<FiniteLattice>,
    spec: &OpTableSpec,
    anchors: Option<Anchors>,
) -> Result<OpTable, IoError> {
    let n = lattice.n();
    if spec.elements != lattice.labels() {
        return Err(IoError::Table(
            "element list does not match the lattice (same labels, same order required)".into(),
        ));
    }
    if spec.table.len() != n || spec.table.iter().any(|row| row.len() != n) {
        return Err(IoError::Table(format!("table must be {n}x{n}")));
    }
    let lookup = |label: &str| {
        lattice
            .id_of(label)
            .ok_or_else(|| IoError::Table(format!("unknown element label {label:?}")))
    };
    let mut cells = Vec::with_capacity(n * n);
    for row in &spec.table {
        for label in row {
            cells.push(lookup(label)?);
        }
    }
    let anchors = match anchors {
        Some(a) => a,
        None => Anchors {
            e1: lookup(&spec.anchors.e1)?,
            a: lookup(&spec.anchors.a)?,
            e2: lookup(&spec.anchors.e2)?,
        },
    };
    if !(lattice.leq(anchors.e1, anchors.a) && lattice.leq(anchors.a, anchors.e2)) {
        return Err(IoError::Table("anchors must satisfy e1 <= a <= e2".into()));
    }
    Ok(OpTable::external(Arc::clone(lattice), anchors, cells))
}

pub fn optable_from_json(
    lattice: &Arc<FiniteLattice>,
    json: &str,
    anchors: Option<Anchors>,
) -> Result<OpTable, IoError> {
    let spec: OpTableSpec = serde_json::from_str(json)?;
    optable_from_spec(lattice, &spec, anchors)
}

/// Aligned text table in the style of the source tables: row and column
/// headers in element order.
pub fn optable_to_text(t: &OpTable) -> String {
    let l = t.lattice();
    let n = l.n();
    let corner = "op";
    let width = l
        .labels()
        .iter()
        .map(|s| s.len())
        .chain(std::iter::once(corner.len()))
        .max()
        .unwrap_or(2);
    let pad = |s: &str| format!("{s:>width$}");
    let mut out = String::new();
    out.push_str(&pad(corner));
    out.push_str(" |");
    for y in 0..n {
        out.push(' ');
        out.push_str(&pad(l.label(y)));
    }
    out.push('\n');
    out.push_str(&"-".repeat(width));
    out.push_str("-+");
    out.push_str(&"-".repeat((width + 1) * n));
    out.push('\n');
    for x in 0..n {
        out.push_str(&pad(l.label(x)));
        out.push_str(" |");
        for y in 0..n {
            out.push(' ');
            out.push_str(&pad(l.label(t.at(x, y))));
        }
        out.push('\n');
    }
    out
}

pub fn optable_to_csv(t: &OpTable) -> String {
    let l = t.lattice();
    let n = l.n();
    let mut out = String::new();
    out.push_str("op");
    for y in 0..n {
        out.push(',');
        out.push_str(l.label(y));
    }
    out.push('\n');
    for x in 0..n {
        out.push_str(l.label(x));
        for y in 0..n {
            out.push(',');
            out.push_str(l.label(t.at(x, y)));
        }
        out.push('\n');
    }
    out
}

pub fn condition_report_to_text(report: &ConditionReport, lattice: &FiniteLattice) -> String {
    let mut out = String::new();
    out.push_str(&format!("mode: {}\n", report.mode));
    out.push_str("condition  status  detail\n");
    for entry in &report.entries {
        let (status, detail) = match &entry.status {
            ConditionStatus::Pass => ("pass", String::new()),
            ConditionStatus::NotApplicable => ("n/a", String::new()),
            ConditionStatus::Fail(w) => (
                "FAIL",
                format!(
                    "witness ({}, {}): {}",
                    lattice.label(w.x),
                    lattice.label(w.y),
                    w.note
                ),
            ),
        };
        out.push_str(&format!("{:<10} {:<7} {}\n", entry.id.to_string(), status, detail));
    }
    out
}

pub fn axiom_report_to_text(report: &AxiomReport, lattice: &FiniteLattice) -> String {
    let mut out = String::new();
    out.push_str("axiom            status  detail\n");
    for entry in &report.entries {
        let (status, detail) = match &entry.status {
            AxiomStatus::Pass => ("pass", String::new()),
            AxiomStatus::Skipped => ("skipped", String::new()),
            AxiomStatus::Fail(w) => {
                let elems: Vec<&str> = w.elements.iter().map(|&e| lattice.label(e)).collect();
                ("FAIL", format!("witness ({}): {}", elems.join(", "), w.note))
            }
        };
        out.push_str(&format!("{:<16} {:<7} {}\n", entry.axiom.to_string(), status, detail));
    }
    if let Some(kind) = report.kind {
        out.push_str(&format!("classification: {kind}\n"));
    }
    out
}

pub fn parse_variant_kind(s: &str) -> Option<VariantKind> {
    match s {
        "uni-nullnorm" => Some(VariantKind::UniNullnorm),
        "null-uninorm" => Some(VariantKind::NullUninorm),
        "nullnorm" => Some(VariantKind::Nullnorm),
        "uninorm" => Some(VariantKind::Uninorm),
        "t-norm" => Some(VariantKind::TNorm),
        "t-conorm" => Some(VariantKind::TConorm),
        _ => None,
    }
}

pub fn provenance_label(p: &Provenance) -> String {
    p.to_string()
}
