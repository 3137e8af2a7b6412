//! Operation-table construction from admissible generators.
//!
//! Three independent code paths produce tables:
//!
//! * `construct_2uninorm` — the five-branch piecewise formula (increasing
//!   generators) and its decreasing mirror;
//! * `construct_alt_form` — the alternative closed form with explicit
//!   `x` / `y` / `a` / `bottom` / exact-inverse cases, evaluated in listed
//!   order;
//! * `construct_variant` — the degenerate-anchor closed forms for
//!   uni-nullnorms, null-uninorms, nullnorms, uninorms, t-norms, t-conorms.
//!
//! Equality of these paths on every admissible input is part of the test
//! suite, not assumed here.
//!
//! Branch guards overlap on value boundaries. The main builder evaluates
//! every matching branch and insists they agree, so a genuine ambiguity
//! surfaces as a hard error rather than a silent choice; the per-cell branch
//! map records the first match in listed order.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::conditions::{check_conditions, check_subset, CheckMode, ConditionId, ConditionReport};
use crate::genfun::{Anchors, Direction, Generator};
use crate::lattice::{ElemId, FiniteLattice};
use crate::value::{ext_add, ExtValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantKind {
    UniNullnorm,
    NullUninorm,
    Nullnorm,
    Uninorm,
    TNorm,
    TConorm,
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariantKind::UniNullnorm => write!(f, "uni-nullnorm"),
            VariantKind::NullUninorm => write!(f, "null-uninorm"),
            VariantKind::Nullnorm => write!(f, "nullnorm"),
            VariantKind::Uninorm => write!(f, "uninorm"),
            VariantKind::TNorm => write!(f, "t-norm"),
            VariantKind::TConorm => write!(f, "t-conorm"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Eq3,
    Eq4,
    AltForm,
    Variant(VariantKind),
    External,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Eq3 => write!(f, "eq3"),
            Provenance::Eq4 => write!(f, "eq4"),
            Provenance::AltForm => write!(f, "alt-form"),
            Provenance::Variant(k) => write!(f, "corollary-{k}"),
            Provenance::External => write!(f, "external"),
        }
    }
}

/// A total binary operation on a lattice as a dense matrix, with anchor
/// metadata and (for built tables) the branch that produced each cell.
#[derive(Debug, Clone)]
pub struct OpTable {
    lattice: Arc<FiniteLattice>,
    anchors: Anchors,
    cells: Vec<ElemId>,
    provenance: Provenance,
    branch_map: Option<Vec<u8>>,
    empty_convention_cells: u32,
}

impl OpTable {
    pub fn external(lattice: Arc<FiniteLattice>, anchors: Anchors, cells: Vec<ElemId>) -> OpTable {
        assert_eq!(cells.len(), lattice.n() * lattice.n());
        OpTable {
            lattice,
            anchors,
            cells,
            provenance: Provenance::External,
            branch_map: None,
            empty_convention_cells: 0,
        }
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn anchors(&self) -> Anchors {
        self.anchors
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    #[inline]
    pub fn at(&self, x: ElemId, y: ElemId) -> ElemId {
        self.cells[x * self.lattice.n() + y]
    }

    pub fn cells(&self) -> &[ElemId] {
        &self.cells
    }

    pub fn branch(&self, x: ElemId, y: ElemId) -> Option<u8> {
        self.branch_map.as_ref().map(|m| m[x * self.lattice.n() + y])
    }

    pub fn branch_map(&self) -> Option<&[u8]> {
        self.branch_map.as_deref()
    }

    /// Number of cells whose pseudo-inverse fell back on the empty-set
    /// convention (`inf {} = top` / `sup {} = bottom`). Surfaced in reports;
    /// normal for decreasing builds and the capped uninorm forms.
    pub fn empty_convention_cells(&self) -> u32 {
        self.empty_convention_cells
    }

    /// Same anchors and cells, regardless of provenance or branch maps.
    pub fn same_operation(&self, other: &OpTable) -> bool {
        self.anchors == other.anchors && self.cells == other.cells
    }

    /// First cell where the two tables differ.
    pub fn first_difference(&self, other: &OpTable) -> Option<(ElemId, ElemId)> {
        let n = self.lattice.n();
        (0..n * n).find(|&i| self.cells[i] != other.cells[i]).map(|i| (i / n, i % n))
    }
}

#[derive(Debug, Clone, Error)]
pub enum ConstructError {
    #[error("generator fails admissibility condition(s) {failed:?}; pass override to build anyway")]
    ConditionsNotMet {
        failed: Vec<ConditionId>,
        report: Box<ConditionReport>,
    },
    #[error("anchors do not match kind {kind}: {reason}")]
    KindMismatch { kind: VariantKind, reason: String },
    #[error("internal construction error: {0}")]
    Internal(String),
}

struct CellOut {
    element: ElemId,
    empty_convention: bool,
}

type Branch = (u8, CellOut);

/// Build the 2-uninorm table from the general piecewise formula (increasing
/// generators) or its decreasing mirror.
///
/// `override_conditions` builds from an inadmissible generator anyway, which
/// is how the counterexample studies reproduce broken operations.
pub fn construct_2uninorm(g: &Generator, override_conditions: bool) -> Result<OpTable, ConstructError> {
    let report = check_conditions(g, CheckMode::Full).expect("full mode always applies");
    if !report.passed() && !override_conditions {
        return Err(ConstructError::ConditionsNotMet {
            failed: report.failed_ids(),
            report: Box::new(report),
        });
    }
    let provenance = match g.direction() {
        Direction::Increasing => Provenance::Eq3,
        Direction::Decreasing => Provenance::Eq4,
    };
    build_table(g, provenance, |g, x, y| match g.direction() {
        Direction::Increasing => general_branches_increasing(g, x, y),
        Direction::Decreasing => general_branches_decreasing(g, x, y),
    })
}

/// Build from the alternative closed form. Cases are evaluated in listed
/// order, first match wins (the `x`/`y` fallthrough cases deliberately
/// overlap the earlier ones on boundaries).
pub fn construct_alt_form(g: &Generator, override_conditions: bool) -> Result<OpTable, ConstructError> {
    let report = check_conditions(g, CheckMode::Full).expect("full mode always applies");
    if !report.passed() && !override_conditions {
        return Err(ConstructError::ConditionsNotMet {
            failed: report.failed_ids(),
            report: Box::new(report),
        });
    }
    build_table(g, Provenance::AltForm, |g, x, y| {
        let case = match g.direction() {
            Direction::Increasing => alt_form_increasing(g, x, y),
            Direction::Decreasing => alt_form_decreasing(g, x, y),
        };
        vec![case]
    })
}

/// Build a degenerate-anchor specialization from its own closed form, an
/// independent code path from the general formula.
pub fn construct_variant(
    g: &Generator,
    kind: VariantKind,
    override_conditions: bool,
) -> Result<OpTable, ConstructError> {
    check_kind(g, kind)?;
    let ids = variant_conditions(g.direction(), kind);
    let report = check_subset(g, ids);
    if !report.passed() && !override_conditions {
        return Err(ConstructError::ConditionsNotMet {
            failed: report.failed_ids(),
            report: Box::new(report),
        });
    }
    build_table(g, Provenance::Variant(kind), |g, x, y| match g.direction() {
        Direction::Increasing => variant_branches_increasing(g, kind, x, y),
        Direction::Decreasing => variant_branches_decreasing(g, kind, x, y),
    })
}

fn check_kind(g: &Generator, kind: VariantKind) -> Result<(), ConstructError> {
    let l = g.lattice();
    let Anchors { e1, a, e2 } = g.anchors();
    let err = |reason: &str| {
        Err(ConstructError::KindMismatch { kind, reason: reason.to_string() })
    };
    match kind {
        VariantKind::UniNullnorm if e2 != l.top() => err("requires e2 = top"),
        VariantKind::NullUninorm if e1 != l.bottom() => err("requires e1 = bottom"),
        VariantKind::Nullnorm if e1 != l.bottom() || e2 != l.top() => {
            err("requires e1 = bottom and e2 = top")
        }
        VariantKind::Uninorm if a != l.top() => err("requires a = top"),
        VariantKind::TNorm if !(e1 == l.top() && a == l.top() && e2 == l.top()) => {
            err("requires e1 = a = e2 = top")
        }
        VariantKind::TConorm if !(e1 == l.bottom() && a == l.top() && e2 == l.top()) => {
            err("requires e1 = bottom and a = e2 = top")
        }
        _ => Ok(()),
    }
}

fn variant_conditions(direction: Direction, kind: VariantKind) -> &'static [ConditionId] {
    match kind {
        VariantKind::UniNullnorm => &[
            ConditionId::I,
            ConditionId::Ii,
            ConditionId::Iii,
            ConditionId::Iv,
            ConditionId::V,
        ],
        VariantKind::NullUninorm | VariantKind::Nullnorm => match direction {
            Direction::Increasing => {
                &[ConditionId::I, ConditionId::Ii, ConditionId::IvPrime, ConditionId::V]
            }
            Direction::Decreasing => {
                &[ConditionId::I, ConditionId::Ii, ConditionId::IvDoublePrime, ConditionId::V]
            }
        },
        VariantKind::Uninorm | VariantKind::TNorm | VariantKind::TConorm => {
            &[ConditionId::I, ConditionId::Ii, ConditionId::Iii]
        }
    }
}

fn build_table(
    g: &Generator,
    provenance: Provenance,
    eval: impl Fn(&Generator, ElemId, ElemId) -> Vec<Branch>,
) -> Result<OpTable, ConstructError> {
    let l = g.lattice();
    let n = l.n();
    let mut cells = vec![0usize; n * n];
    let mut branch_map = vec![0u8; n * n];
    let mut empty_cells = 0u32;
    for x in 0..n {
        for y in 0..n {
            let branches = eval(g, x, y);
            let (first_id, first) = match branches.first() {
                Some((id, out)) => (*id, out),
                None => {
                    return Err(ConstructError::Internal(format!(
                        "no branch matched cell ({}, {})",
                        l.label(x),
                        l.label(y)
                    )))
                }
            };
            for (id, out) in &branches[1..] {
                if out.element != first.element {
                    return Err(ConstructError::Internal(format!(
                        "branch disagreement at ({}, {}): branch {} gives {}, branch {} gives {}",
                        l.label(x),
                        l.label(y),
                        first_id,
                        l.label(first.element),
                        id,
                        l.label(out.element)
                    )));
                }
            }
            cells[x * n + y] = first.element;
            branch_map[x * n + y] = first_id;
            if first.empty_convention {
                empty_cells += 1;
            }
        }
    }
    Ok(OpTable {
        lattice: Arc::clone(l),
        anchors: g.anchors(),
        cells,
        provenance,
        branch_map: Some(branch_map),
        empty_convention_cells: empty_cells,
    })
}

fn zero() -> ExtValue {
    ExtValue::zero()
}

fn pi(g: &Generator, v: ExtValue) -> CellOut {
    let p = g.pseudo_inverse(&v);
    CellOut { element: p.element, empty_convention: p.empty_convention }
}

fn exact(g: &Generator, v: ExtValue) -> Result<CellOut, String> {
    match g.preimage_of(&v) {
        Some(e) => Ok(CellOut { element: e, empty_convention: false }),
        None => Err(format!("value {v} expected in range")),
    }
}

fn direct(e: ElemId) -> CellOut {
    CellOut { element: e, empty_convention: false }
}

fn sum(u: ExtValue, v: ExtValue) -> ExtValue {
    ext_add(u, v).expect("same-sign region sum")
}

/// The five branches of the increasing general formula. Every matching
/// branch is returned so the caller can assert agreement.
fn general_branches_increasing(g: &Generator, x: ElemId, y: ElemId) -> Vec<Branch> {
    let (u, v) = (g.value(x), g.value(y));
    let f_a = g.f_a();
    let f_e2 = g.f_e2();
    let mut out: Vec<Branch> = Vec::new();

    if u <= zero() && v <= zero() {
        out.push((1, pi(g, sum(u, v))));
    }
    let u_low = zero() <= u && u <= f_a;
    let v_low = zero() <= v && v <= f_a;
    if u_low && v_low && !g.in_i_a(x) && !g.in_i_a(y) {
        out.push((2, pi(g, sum(u, v).min(f_a))));
    }
    let absorb = (u > f_a && v_low)
        || (u_low && v > f_a)
        || (u_low && g.in_band(&v))
        || (g.in_band(&u) && v_low);
    if absorb {
        out.push((3, direct(g.anchors().a)));
    }
    let u_mid = f_a < u && u <= f_e2;
    let v_mid = f_a < v && v <= f_e2;
    if (u > f_e2 && v > f_e2) || (u > f_e2 && v_mid) || (u_mid && v > f_e2) {
        out.push((4, pi(g, u.max(v))));
    }
    if out.is_empty() {
        out.push((5, pi(g, u.min(v))));
    }
    out
}

/// Decreasing mirror of the general formula.
fn general_branches_decreasing(g: &Generator, x: ElemId, y: ElemId) -> Vec<Branch> {
    let (u, v) = (g.value(x), g.value(y));
    let f_a = g.f_a();
    let f_e2 = g.f_e2();
    let mut out: Vec<Branch> = Vec::new();

    if u >= zero() && v >= zero() {
        out.push((1, pi(g, sum(u, v))));
    }
    let u_low = f_a <= u && u <= zero();
    let v_low = f_a <= v && v <= zero();
    if u_low && v_low && !g.in_i_a(x) && !g.in_i_a(y) {
        out.push((2, pi(g, sum(u, v).max(f_a))));
    }
    let absorb = (u < f_a && v_low)
        || (u_low && v < f_a)
        || (u_low && g.in_band(&v))
        || (g.in_band(&u) && v_low);
    if absorb {
        out.push((3, direct(g.anchors().a)));
    }
    let u_mid = f_e2 <= u && u < f_a;
    let v_mid = f_e2 <= v && v < f_a;
    if (u < f_e2 && v < f_e2) || (u < f_e2 && v_mid) || (u_mid && v < f_e2) {
        out.push((4, pi(g, u.min(v))));
    }
    if out.is_empty() {
        out.push((5, pi(g, u.max(v))));
    }
    out
}

/// Alternative closed form, increasing. Cases in listed order; the result
/// is the first match. Case numbering: 1 exact inverse of the sum, 2
/// bottom, 3 constant a, 4 left argument, 5 right argument.
fn alt_form_increasing(g: &Generator, x: ElemId, y: ElemId) -> Branch {
    let (u, v) = (g.value(x), g.value(y));
    let f_a = g.f_a();
    let f_e2 = g.f_e2();
    let f_bot = g.f_bottom();
    let neg = u <= zero() && v <= zero();
    let low = zero() <= u && u <= f_a && zero() <= v && v <= f_a;

    if neg || low {
        let s = sum(u, v);
        if neg && g.ran_contains(&s) {
            return (1, exact(g, s).expect("guarded"));
        }
        if low && s <= f_a && g.ran_contains(&s) && !g.in_i_a(x) && !g.in_i_a(y) {
            return (1, exact(g, s).expect("guarded"));
        }
        if neg && s < f_bot {
            return (2, direct(g.lattice().bottom()));
        }
        if low && s >= f_a {
            return (3, direct(g.anchors().a));
        }
    }
    let u_low = zero() <= u && u <= f_a;
    let v_low = zero() <= v && v <= f_a;
    if (u >= f_a && v_low)
        || (u_low && v >= f_a)
        || (u_low && g.in_band(&v))
        || (g.in_band(&u) && v_low)
    {
        return (3, direct(g.anchors().a));
    }
    let u_mid = f_a <= u && u <= f_e2;
    let v_mid = f_a <= v && v <= f_e2;
    // Strict at f(e2): the boundary belongs to the middle min-region, as in
    // the general formula (the closed reading would contradict it on the
    // (e2, x) diagonal band).
    let u_high = u > f_e2;
    let v_high = v > f_e2;
    if (u <= zero() && v >= zero())
        || (u_high && v_mid)
        || (u_mid && v_mid && u <= v)
        || (u_high && v_high && u >= v)
    {
        return (4, direct(x));
    }
    if (u >= zero() && v <= zero())
        || (u_mid && v_high)
        || (u_mid && v_mid && u >= v)
        || (u_high && v_high && u <= v)
    {
        return (5, direct(y));
    }
    // The case analysis is total for monotone values.
    unreachable!("alternative form matched no case at ({u}, {v})")
}

/// Alternative closed form, decreasing: the order-dual case analysis.
fn alt_form_decreasing(g: &Generator, x: ElemId, y: ElemId) -> Branch {
    let (u, v) = (g.value(x), g.value(y));
    let f_a = g.f_a();
    let f_e2 = g.f_e2();
    let f_bot = g.f_bottom();
    let neg = u >= zero() && v >= zero();
    let low = f_a <= u && u <= zero() && f_a <= v && v <= zero();

    if neg || low {
        let s = sum(u, v);
        if neg && g.ran_contains(&s) {
            return (1, exact(g, s).expect("guarded"));
        }
        if low && s >= f_a && g.ran_contains(&s) && !g.in_i_a(x) && !g.in_i_a(y) {
            return (1, exact(g, s).expect("guarded"));
        }
        if neg && s > f_bot {
            return (2, direct(g.lattice().bottom()));
        }
        if low && s <= f_a {
            return (3, direct(g.anchors().a));
        }
    }
    let u_low = f_a <= u && u <= zero();
    let v_low = f_a <= v && v <= zero();
    if (u <= f_a && v_low)
        || (u_low && v <= f_a)
        || (u_low && g.in_band(&v))
        || (g.in_band(&u) && v_low)
    {
        return (3, direct(g.anchors().a));
    }
    let u_mid = f_e2 <= u && u <= f_a;
    let v_mid = f_e2 <= v && v <= f_a;
    let u_high = u < f_e2;
    let v_high = v < f_e2;
    if (u >= zero() && v <= zero())
        || (u_high && v_mid)
        || (u_mid && v_mid && u >= v)
        || (u_high && v_high && u <= v)
    {
        return (4, direct(x));
    }
    if (u <= zero() && v >= zero())
        || (u_mid && v_high)
        || (u_mid && v_mid && u <= v)
        || (u_high && v_high && u >= v)
    {
        return (5, direct(y));
    }
    unreachable!("alternative form matched no case at ({u}, {v})")
}

/// Corollary closed forms, increasing direction.
fn variant_branches_increasing(g: &Generator, kind: VariantKind, x: ElemId, y: ElemId) -> Vec<Branch> {
    let (u, v) = (g.value(x), g.value(y));
    let f_a = g.f_a();
    let f_e2 = g.f_e2();
    let a = g.anchors().a;
    let mut out: Vec<Branch> = Vec::new();
    let u_low = zero() <= u && u <= f_a;
    let v_low = zero() <= v && v <= f_a;
    let capped_sum = |g: &Generator| pi(g, sum(u, v).min(f_a));
    // Absorption bands, closed at f(a) in the corollary statements.
    let absorb = (u >= f_a && v_low)
        || (u_low && v >= f_a)
        || (u_low && g.in_band(&v))
        || (g.in_band(&u) && v_low);

    match kind {
        VariantKind::UniNullnorm => {
            if u <= zero() && v <= zero() {
                out.push((1, pi(g, sum(u, v))));
            }
            if u_low && v_low && !g.in_i_a(x) && !g.in_i_a(y) {
                out.push((2, capped_sum(g)));
            }
            if absorb {
                out.push((3, direct(a)));
            }
            if out.is_empty() {
                out.push((4, pi(g, u.min(v))));
            }
        }
        VariantKind::NullUninorm => {
            if u_low && v_low && !g.in_i_a(x) && !g.in_i_a(y) {
                out.push((1, capped_sum(g)));
            }
            if absorb {
                out.push((2, direct(a)));
            }
            if f_a <= u && u <= f_e2 && f_a <= v && v <= f_e2 {
                out.push((3, pi(g, u.min(v))));
            }
            if out.is_empty() {
                out.push((4, pi(g, u.max(v))));
            }
        }
        VariantKind::Nullnorm => {
            if u_low && v_low && !g.in_i_a(x) && !g.in_i_a(y) {
                out.push((1, capped_sum(g)));
            }
            if absorb {
                out.push((2, direct(a)));
            }
            if out.is_empty() {
                out.push((3, pi(g, u.min(v))));
            }
        }
        VariantKind::Uninorm | VariantKind::TNorm | VariantKind::TConorm => {
            if (u <= zero() && v <= zero()) || (u >= zero() && v >= zero()) {
                out.push((1, pi(g, sum(u, v))));
            } else {
                out.push((2, pi(g, u.min(v))));
            }
        }
    }
    out
}

/// Corollary closed forms, decreasing direction (order-duals).
fn variant_branches_decreasing(g: &Generator, kind: VariantKind, x: ElemId, y: ElemId) -> Vec<Branch> {
    let (u, v) = (g.value(x), g.value(y));
    let f_a = g.f_a();
    let f_e2 = g.f_e2();
    let a = g.anchors().a;
    let mut out: Vec<Branch> = Vec::new();
    let u_low = f_a <= u && u <= zero();
    let v_low = f_a <= v && v <= zero();
    let capped_sum = |g: &Generator| pi(g, sum(u, v).max(f_a));
    let absorb = (u <= f_a && v_low)
        || (u_low && v <= f_a)
        || (u_low && g.in_band(&v))
        || (g.in_band(&u) && v_low);

    match kind {
        VariantKind::UniNullnorm => {
            if u > zero() && v > zero() {
                out.push((1, pi(g, sum(u, v))));
            }
            if u_low && v_low && !g.in_i_a(x) && !g.in_i_a(y) {
                out.push((2, capped_sum(g)));
            }
            if absorb {
                out.push((3, direct(a)));
            }
            if out.is_empty() {
                out.push((4, pi(g, u.max(v))));
            }
        }
        VariantKind::NullUninorm => {
            if u_low && v_low && !g.in_i_a(x) && !g.in_i_a(y) {
                out.push((1, capped_sum(g)));
            }
            if absorb {
                out.push((2, direct(a)));
            }
            if f_e2 <= u && u <= f_a && f_e2 <= v && v <= f_a {
                out.push((3, pi(g, u.max(v))));
            }
            if out.is_empty() {
                out.push((4, pi(g, u.min(v))));
            }
        }
        VariantKind::Nullnorm => {
            if u_low && v_low && !g.in_i_a(x) && !g.in_i_a(y) {
                out.push((1, capped_sum(g)));
            }
            if absorb {
                out.push((2, direct(a)));
            }
            if out.is_empty() {
                out.push((3, pi(g, u.max(v))));
            }
        }
        VariantKind::Uninorm | VariantKind::TNorm | VariantKind::TConorm => {
            if (u <= zero() && v <= zero()) || (u >= zero() && v >= zero()) {
                out.push((1, pi(g, sum(u, v))));
            } else {
                out.push((2, pi(g, u.max(v))));
            }
        }
    }
    out
}
