//! Exhaustive axiom verification of operation tables and classification by
//! anchor degeneracies.
//!
//! All checks are plain brute force: commutativity and monotonicity are
//! O(n^2) / O(n^3) scans, associativity is the full n^3 triple loop
//! (partitioned across workers by the first coordinate, with the
//! lexicographically least witness winning so reports are deterministic).
//! Witnesses re-evaluate to violations; that property is itself under test.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::construct::OpTable;
use crate::lattice::ElemId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomId {
    Commutative,
    Associative,
    Monotone,
    NeutralLower,
    NeutralUpper,
    WellClassified,
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::Commutative => write!(f, "commutative"),
            AxiomId::Associative => write!(f, "associative"),
            AxiomId::Monotone => write!(f, "monotone"),
            AxiomId::NeutralLower => write!(f, "neutral-lower"),
            AxiomId::NeutralUpper => write!(f, "neutral-upper"),
            AxiomId::WellClassified => write!(f, "well-classified"),
        }
    }
}

/// Element tuple demonstrating a violation, plus a rendered explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomWitness {
    pub elements: Vec<ElemId>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Fail(AxiomWitness),
    /// Classification is skipped when a prior axiom already failed.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomEntry {
    pub axiom: AxiomId,
    pub status: AxiomStatus,
}

/// The seven specialization labels, most specific first in classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    TNorm,
    TConorm,
    Nullnorm,
    UniNullnorm,
    NullUninorm,
    Uninorm,
    TwoUninorm,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::TNorm => write!(f, "t-norm"),
            Kind::TConorm => write!(f, "t-conorm"),
            Kind::Nullnorm => write!(f, "nullnorm"),
            Kind::UniNullnorm => write!(f, "uni-nullnorm"),
            Kind::NullUninorm => write!(f, "null-uninorm"),
            Kind::Uninorm => write!(f, "uninorm"),
            Kind::TwoUninorm => write!(f, "2-uninorm"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
    pub kind: Option<Kind>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        !self.entries.iter().any(|e| matches!(e.status, AxiomStatus::Fail(_)))
    }

    pub fn entry(&self, axiom: AxiomId) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn failed_axioms(&self) -> Vec<AxiomId> {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, AxiomStatus::Fail(_)))
            .map(|e| e.axiom)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("operation fails the 2-uninorm axioms; classification refused")]
    Unclassifiable,
    #[error("classification spot-check failed: {0}")]
    SpotCheck(String),
}

pub fn check_commutative(t: &OpTable) -> AxiomEntry {
    let l = t.lattice();
    let n = l.n();
    for x in 0..n {
        for y in (x + 1)..n {
            if t.at(x, y) != t.at(y, x) {
                return AxiomEntry {
                    axiom: AxiomId::Commutative,
                    status: AxiomStatus::Fail(AxiomWitness {
                        elements: vec![x, y],
                        note: format!(
                            "op({x_}, {y_}) = {l_} but op({y_}, {x_}) = {r_}",
                            x_ = l.label(x),
                            y_ = l.label(y),
                            l_ = l.label(t.at(x, y)),
                            r_ = l.label(t.at(y, x)),
                        ),
                    }),
                };
            }
        }
    }
    AxiomEntry { axiom: AxiomId::Commutative, status: AxiomStatus::Pass }
}

pub fn check_associative(t: &OpTable) -> AxiomEntry {
    let l = t.lattice();
    let n = l.n();
    // Partition the scan by the first coordinate; merge to the least witness.
    let witness = (0..n)
        .into_par_iter()
        .filter_map(|x| {
            for y in 0..n {
                for z in 0..n {
                    let left = t.at(t.at(x, y), z);
                    let right = t.at(x, t.at(y, z));
                    if left != right {
                        return Some((x, y, z, left, right));
                    }
                }
            }
            None
        })
        .min();
    match witness {
        None => AxiomEntry { axiom: AxiomId::Associative, status: AxiomStatus::Pass },
        Some((x, y, z, left, right)) => AxiomEntry {
            axiom: AxiomId::Associative,
            status: AxiomStatus::Fail(AxiomWitness {
                elements: vec![x, y, z],
                note: format!(
                    "op(op({x_}, {y_}), {z_}) = {l_} but op({x_}, op({y_}, {z_})) = {r_}",
                    x_ = l.label(x),
                    y_ = l.label(y),
                    z_ = l.label(z),
                    l_ = l.label(left),
                    r_ = l.label(right),
                ),
            }),
        },
    }
}

/// Monotonicity in the first variable; the second is covered by
/// commutativity when it holds and checked explicitly when it does not.
/// An incomparable pair of outputs on a comparable pair of inputs is a
/// violation: increasing demands `op(x,z) <= op(y,z)`.
pub fn check_monotone(t: &OpTable, check_both_sides: bool) -> AxiomEntry {
    let l = t.lattice();
    let n = l.n();
    for x in 0..n {
        for y in 0..n {
            if x == y || !l.leq(x, y) {
                continue;
            }
            for z in 0..n {
                if !l.leq(t.at(x, z), t.at(y, z)) {
                    return AxiomEntry {
                        axiom: AxiomId::Monotone,
                        status: AxiomStatus::Fail(AxiomWitness {
                            elements: vec![x, y, z],
                            note: format!(
                                "{x_} <= {y_} but op({x_}, {z_}) = {l_} is not below op({y_}, {z_}) = {r_}",
                                x_ = l.label(x),
                                y_ = l.label(y),
                                z_ = l.label(z),
                                l_ = l.label(t.at(x, z)),
                                r_ = l.label(t.at(y, z)),
                            ),
                        }),
                    };
                }
                if check_both_sides && !l.leq(t.at(z, x), t.at(z, y)) {
                    return AxiomEntry {
                        axiom: AxiomId::Monotone,
                        status: AxiomStatus::Fail(AxiomWitness {
                            elements: vec![x, y, z],
                            note: format!(
                                "{x_} <= {y_} but op({z_}, {x_}) is not below op({z_}, {y_})",
                                x_ = l.label(x),
                                y_ = l.label(y),
                                z_ = l.label(z),
                            ),
                        }),
                    };
                }
            }
        }
    }
    AxiomEntry { axiom: AxiomId::Monotone, status: AxiomStatus::Pass }
}

/// The sandwiched neutrality: `op(e1, x) = x` for `x <= a` and
/// `op(e2, x) = x` for `x >= a`.
pub fn check_neutral_sandwich(t: &OpTable) -> (AxiomEntry, AxiomEntry) {
    let l = t.lattice();
    let anchors = t.anchors();
    let mut lower = AxiomEntry { axiom: AxiomId::NeutralLower, status: AxiomStatus::Pass };
    for x in l.elements() {
        if l.leq(x, anchors.a) && t.at(anchors.e1, x) != x {
            lower.status = AxiomStatus::Fail(AxiomWitness {
                elements: vec![x],
                note: format!(
                    "op(e1, {x_}) = {got} instead of {x_}",
                    x_ = l.label(x),
                    got = l.label(t.at(anchors.e1, x)),
                ),
            });
            break;
        }
    }
    let mut upper = AxiomEntry { axiom: AxiomId::NeutralUpper, status: AxiomStatus::Pass };
    for x in l.elements() {
        if l.leq(anchors.a, x) && t.at(anchors.e2, x) != x {
            upper.status = AxiomStatus::Fail(AxiomWitness {
                elements: vec![x],
                note: format!(
                    "op(e2, {x_}) = {got} instead of {x_}",
                    x_ = l.label(x),
                    got = l.label(t.at(anchors.e2, x)),
                ),
            });
            break;
        }
    }
    (lower, upper)
}

/// Most specific label for a verified 2-uninorm, read off the anchors.
/// Definitional spot-checks guard the result but never drive it.
pub fn classify(t: &OpTable) -> Result<Kind, VerifyError> {
    let l = t.lattice();
    let anchors = t.anchors();
    let (bot, top) = (l.bottom(), l.top());
    let kind = if anchors.a == top || anchors.a == bot {
        // A degenerate zero element makes the operation a plain uninorm;
        // the neutral element is e1 (a = top) or e2 (a = bottom).
        let e = if anchors.a == top { anchors.e1 } else { anchors.e2 };
        if e == top {
            Kind::TNorm
        } else if e == bot {
            Kind::TConorm
        } else {
            Kind::Uninorm
        }
    } else if anchors.e1 == bot && anchors.e2 == top {
        Kind::Nullnorm
    } else if anchors.e2 == top {
        Kind::UniNullnorm
    } else if anchors.e1 == bot {
        Kind::NullUninorm
    } else {
        Kind::TwoUninorm
    };
    spot_check(t, kind)?;
    Ok(kind)
}

fn spot_check(t: &OpTable, kind: Kind) -> Result<(), VerifyError> {
    let l = t.lattice();
    let anchors = t.anchors();
    let fail = |msg: String| Err(VerifyError::SpotCheck(msg));
    match kind {
        Kind::TNorm => {
            for x in l.elements() {
                if t.at(l.top(), x) != x {
                    return fail(format!("t-norm: op(top, {}) /= {0}", l.label(x)));
                }
            }
        }
        Kind::TConorm => {
            for x in l.elements() {
                if t.at(l.bottom(), x) != x {
                    return fail(format!("t-conorm: op(bottom, {}) /= {0}", l.label(x)));
                }
            }
        }
        Kind::Uninorm => {
            let e = if anchors.a == l.top() { anchors.e1 } else { anchors.e2 };
            for x in l.elements() {
                if t.at(e, x) != x {
                    return fail(format!("uninorm: op(e, {}) /= {0}", l.label(x)));
                }
            }
        }
        Kind::Nullnorm => {
            for x in l.elements() {
                if l.leq(x, anchors.a) && t.at(l.bottom(), x) != x {
                    return fail(format!("nullnorm: op(bottom, {}) /= {0}", l.label(x)));
                }
                if l.leq(anchors.a, x) && t.at(l.top(), x) != x {
                    return fail(format!("nullnorm: op(top, {}) /= {0}", l.label(x)));
                }
            }
        }
        Kind::UniNullnorm | Kind::NullUninorm | Kind::TwoUninorm => {
            for x in l.elements() {
                if l.leq(x, anchors.a) && t.at(anchors.e1, x) != x {
                    return fail(format!("op(e1, {}) /= {0}", l.label(x)));
                }
                if l.leq(anchors.a, x) && t.at(anchors.e2, x) != x {
                    return fail(format!("op(e2, {}) /= {0}", l.label(x)));
                }
            }
        }
    }
    Ok(())
}

/// Run every axiom check, then classify on success.
pub fn verify_full(t: &OpTable) -> AxiomReport {
    let commutative = check_commutative(t);
    let comm_failed = matches!(commutative.status, AxiomStatus::Fail(_));
    let associative = check_associative(t);
    let monotone = check_monotone(t, comm_failed);
    let (lower, upper) = check_neutral_sandwich(t);
    let mut entries = vec![commutative, associative, monotone, lower, upper];
    let all_pass = entries.iter().all(|e| matches!(e.status, AxiomStatus::Pass));
    let kind = if all_pass {
        match classify(t) {
            Ok(k) => {
                entries.push(AxiomEntry {
                    axiom: AxiomId::WellClassified,
                    status: AxiomStatus::Pass,
                });
                Some(k)
            }
            Err(e) => {
                entries.push(AxiomEntry {
                    axiom: AxiomId::WellClassified,
                    status: AxiomStatus::Fail(AxiomWitness {
                        elements: vec![],
                        note: e.to_string(),
                    }),
                });
                None
            }
        }
    } else {
        entries.push(AxiomEntry { axiom: AxiomId::WellClassified, status: AxiomStatus::Skipped });
        None
    };
    AxiomReport { entries, kind }
}

/// Re-evaluate an axiom witness; reports must be self-certifying.
pub fn axiom_violated(t: &OpTable, axiom: AxiomId, elements: &[ElemId]) -> bool {
    let l = t.lattice();
    match (axiom, elements) {
        (AxiomId::Commutative, [x, y]) => t.at(*x, *y) != t.at(*y, *x),
        (AxiomId::Associative, [x, y, z]) => {
            t.at(t.at(*x, *y), *z) != t.at(*x, t.at(*y, *z))
        }
        (AxiomId::Monotone, [x, y, z]) => {
            l.leq(*x, *y)
                && (!l.leq(t.at(*x, *z), t.at(*y, *z)) || !l.leq(t.at(*z, *x), t.at(*z, *y)))
        }
        (AxiomId::NeutralLower, [x]) => {
            l.leq(*x, t.anchors().a) && t.at(t.anchors().e1, *x) != *x
        }
        (AxiomId::NeutralUpper, [x]) => {
            l.leq(t.anchors().a, *x) && t.at(t.anchors().e2, *x) != *x
        }
        _ => false,
    }
}
