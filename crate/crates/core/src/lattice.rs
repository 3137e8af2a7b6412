//! Finite bounded lattices: order, meet, join, intervals, incomparability.
//!
//! A lattice is ingested from a list of element labels plus cover edges. The
//! order relation is the reflexive-transitive closure of the covers; meet and
//! join are computed per pair by brute force over common bounds at ingestion
//! and cached as dense tables. Canonical element ids are indices into the
//! label list, so all later witness reporting is deterministic in the order
//! the fixture declares its elements.
//!
//! Everything here is immutable after construction and safe to share across
//! worker threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Canonical element id: index into the lattice's label list.
pub type ElemId = usize;

/// On-disk form of a lattice: labels, cover edges, designated bounds.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    /// `[lower, upper]` label pairs. Redundant (non-cover) edges are accepted
    /// and removed again when the spec is normalised.
    pub covers: Vec<(String, String)>,
    pub bottom: String,
    pub top: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("no elements declared")]
    Empty,
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("cover edges contain a cycle through {0:?} and {1:?}")]
    Cycle(String, String),
    #[error("not a lattice: pair ({x:?}, {y:?}) has no unique {kind}")]
    NotALattice { x: String, y: String, kind: BoundKind },
    #[error("declared {role} {declared:?} is not the {role} of the order (expected {actual:?})")]
    Bound { role: &'static str, declared: String, actual: String },
    #[error("empty interval: {lo:?} is not below {hi:?}")]
    EmptyInterval { lo: String, hi: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Meet => write!(f, "meet"),
            BoundKind::Join => write!(f, "join"),
        }
    }
}

/// Subset of a lattice's elements as a membership bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    bits: Vec<bool>,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet { bits: vec![false; n] }
    }

    pub fn insert(&mut self, x: ElemId) {
        self.bits[x] = true;
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.bits[x]
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|b| *b)
    }

    pub fn iter(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)
    }
}

/// A validated finite bounded lattice with dense order/meet/join tables.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<bool>,       // n*n, leq[x*n+y] <=> x <= y
    meet_table: Vec<ElemId>,
    join_table: Vec<ElemId>,
    covers: Vec<(ElemId, ElemId)>, // transitive reduction, sorted
    bottom: ElemId,
    top: ElemId,
    chain: bool,
}

impl FiniteLattice {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: ElemId) -> &str {
        &self.labels[x]
    }

    pub fn id_of(&self, label: &str) -> Option<ElemId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bottom(&self) -> ElemId {
        self.bottom
    }

    pub fn top(&self) -> ElemId {
        self.top
    }

    /// True iff the lattice is totally ordered.
    pub fn is_chain(&self) -> bool {
        self.chain
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.n()
    }

    #[inline]
    pub fn leq(&self, x: ElemId, y: ElemId) -> bool {
        self.leq[x * self.n() + y]
    }

    #[inline]
    pub fn lt(&self, x: ElemId, y: ElemId) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: ElemId, y: ElemId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    #[inline]
    pub fn meet(&self, x: ElemId, y: ElemId) -> ElemId {
        self.meet_table[x * self.n() + y]
    }

    #[inline]
    pub fn join(&self, x: ElemId, y: ElemId) -> ElemId {
        self.join_table[x * self.n() + y]
    }

    /// Infimum of a set of elements; the empty fold is the top element.
    pub fn meet_fold(&self, xs: impl IntoIterator<Item = ElemId>) -> ElemId {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Supremum of a set of elements; the empty fold is the bottom element.
    pub fn join_fold(&self, xs: impl IntoIterator<Item = ElemId>) -> ElemId {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `I_a`: every element incomparable with `a`.
    pub fn incomparable_set(&self, a: ElemId) -> ElementSet {
        let mut set = ElementSet::empty(self.n());
        for x in self.elements() {
            if !self.comparable(x, a) {
                set.insert(x);
            }
        }
        set
    }

    /// `[lo, hi]` as a set; errors when `lo` is not below `hi`.
    pub fn interval(&self, lo: ElemId, hi: ElemId) -> Result<ElementSet, LatticeError> {
        if !self.leq(lo, hi) {
            return Err(LatticeError::EmptyInterval {
                lo: self.labels[lo].clone(),
                hi: self.labels[hi].clone(),
            });
        }
        let mut set = ElementSet::empty(self.n());
        for x in self.elements() {
            if self.leq(lo, x) && self.leq(x, hi) {
                set.insert(x);
            }
        }
        Ok(set)
    }

    /// Cover edges of the order (transitive reduction), sorted by id pair.
    pub fn covers(&self) -> &[(ElemId, ElemId)] {
        &self.covers
    }

    /// Round-trippable spec: original element order, closure-free covers
    /// sorted by label pair.
    pub fn normalized_spec(&self) -> LatticeSpec {
        let mut covers: Vec<(String, String)> = self
            .covers
            .iter()
            .map(|&(l, u)| (self.labels[l].clone(), self.labels[u].clone()))
            .collect();
        covers.sort();
        LatticeSpec {
            elements: self.labels.clone(),
            covers,
            bottom: self.labels[self.bottom].clone(),
            top: self.labels[self.top].clone(),
        }
    }
}

/// Validate a spec into a lattice: closure, cycle check, meet/join tables,
/// bound check, in that order (so a missing join is reported as
/// `NotALattice` even when the declared bounds are also wrong).
pub fn parse_lattice(spec: &LatticeSpec) -> Result<FiniteLattice, LatticeError> {
    if spec.elements.is_empty() {
        return Err(LatticeError::Empty);
    }
    let mut index: HashMap<&str, ElemId> = HashMap::new();
    for (i, label) in spec.elements.iter().enumerate() {
        if index.insert(label, i).is_some() {
            return Err(LatticeError::DuplicateLabel(label.clone()));
        }
    }
    let lookup = |label: &str| -> Result<ElemId, LatticeError> {
        index.get(label).copied().ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
    };

    let n = spec.elements.len();
    let mut up: Vec<Vec<ElemId>> = vec![Vec::new(); n];
    for (lo, hi) in &spec.covers {
        let (l, u) = (lookup(lo)?, lookup(hi)?);
        if l == u {
            return Err(LatticeError::Cycle(lo.clone(), hi.clone()));
        }
        up[l].push(u);
    }
    let bottom = lookup(&spec.bottom)?;
    let top = lookup(&spec.top)?;

    // Reflexive-transitive closure by DFS from each element.
    let mut leq = vec![false; n * n];
    for x in 0..n {
        let mut stack = vec![x];
        while let Some(v) = stack.pop() {
            if leq[x * n + v] {
                continue;
            }
            leq[x * n + v] = true;
            stack.extend(up[v].iter().copied());
        }
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if leq[x * n + y] && leq[y * n + x] {
                return Err(LatticeError::Cycle(spec.elements[x].clone(), spec.elements[y].clone()));
            }
        }
    }

    // Unique greatest lower / least upper bound per pair.
    let at = |x: ElemId, y: ElemId| x * n + y;
    let mut meet_table = vec![0usize; n * n];
    let mut join_table = vec![0usize; n * n];
    for x in 0..n {
        for y in x..n {
            let meet = bound_of(n, &leq, x, y, BoundKind::Meet).ok_or_else(|| {
                LatticeError::NotALattice {
                    x: spec.elements[x].clone(),
                    y: spec.elements[y].clone(),
                    kind: BoundKind::Meet,
                }
            })?;
            let join = bound_of(n, &leq, x, y, BoundKind::Join).ok_or_else(|| {
                LatticeError::NotALattice {
                    x: spec.elements[x].clone(),
                    y: spec.elements[y].clone(),
                    kind: BoundKind::Join,
                }
            })?;
            meet_table[at(x, y)] = meet;
            meet_table[at(y, x)] = meet;
            join_table[at(x, y)] = join;
            join_table[at(y, x)] = join;
        }
    }

    // Every pair has a meet and a join, so a least and a greatest element
    // exist; the declared bounds must be those.
    let actual_bottom = (0..n).fold(0, |acc, x| meet_table[at(acc, x)]);
    let actual_top = (0..n).fold(0, |acc, x| join_table[at(acc, x)]);
    if actual_bottom != bottom {
        return Err(LatticeError::Bound {
            role: "bottom",
            declared: spec.elements[bottom].clone(),
            actual: spec.elements[actual_bottom].clone(),
        });
    }
    if actual_top != top {
        return Err(LatticeError::Bound {
            role: "top",
            declared: spec.elements[top].clone(),
            actual: spec.elements[actual_top].clone(),
        });
    }

    // Transitive reduction: u -< v iff u < v with nothing strictly between.
    let mut covers = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || !leq[at(u, v)] {
                continue;
            }
            let direct = !(0..n).any(|w| w != u && w != v && leq[at(u, w)] && leq[at(w, v)]);
            if direct {
                covers.push((u, v));
            }
        }
    }
    covers.sort_unstable();

    let chain = (0..n).all(|x| (0..n).all(|y| leq[at(x, y)] || leq[at(y, x)]));

    Ok(FiniteLattice {
        labels: spec.elements.clone(),
        leq,
        meet_table,
        join_table,
        covers,
        bottom,
        top,
        chain,
    })
}

/// Parse a JSON lattice spec and validate it.
pub fn lattice_from_json(json: &str) -> Result<Arc<FiniteLattice>, crate::io::IoError> {
    let spec: LatticeSpec = serde_json::from_str(json)?;
    Ok(Arc::new(parse_lattice(&spec)?))
}

fn bound_of(n: usize, leq: &[bool], x: ElemId, y: ElemId, kind: BoundKind) -> Option<ElemId> {
    let below = |a: ElemId, b: ElemId| match kind {
        BoundKind::Meet => leq[a * n + b],
        BoundKind::Join => leq[b * n + a],
    };
    // Candidates: common lower (resp. upper) bounds of x and y.
    let mut best: Option<ElemId> = None;
    let mut count = 0usize;
    for z in 0..n {
        if below(z, x) && below(z, y) {
            count += 1;
            best = match best {
                None => Some(z),
                Some(b) if below(b, z) => Some(z),
                keep => keep,
            };
        }
    }
    let best = best?;
    // `best` is maximal among candidates; it is the bound iff it dominates
    // every candidate.
    let dominated = (0..n)
        .filter(|&z| below(z, x) && below(z, y))
        .all(|z| below(z, best));
    let _ = count;
    if dominated {
        Some(best)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> FiniteLattice {
        parse_lattice(&LatticeSpec {
            elements: vec!["0".into(), "1".into()],
            covers: vec![("0".into(), "1".into())],
            bottom: "0".into(),
            top: "1".into(),
        })
        .unwrap()
    }

    fn diamond() -> FiniteLattice {
        parse_lattice(&LatticeSpec {
            elements: vec!["0".into(), "p".into(), "q".into(), "1".into()],
            covers: vec![
                ("0".into(), "p".into()),
                ("0".into(), "q".into()),
                ("p".into(), "1".into()),
                ("q".into(), "1".into()),
            ],
            bottom: "0".into(),
            top: "1".into(),
        })
        .unwrap()
    }

    #[test]
    fn two_chain_is_min_max() {
        let l = chain2();
        assert!(l.is_chain());
        assert_eq!(l.meet(0, 1), 0);
        assert_eq!(l.join(0, 1), 1);
        assert!(l.leq(0, 1) && !l.leq(1, 0));
    }

    #[test]
    fn diamond_meet_join() {
        let l = diamond();
        let (p, q) = (1, 2);
        assert!(!l.comparable(p, q));
        assert_eq!(l.meet(p, q), l.bottom());
        assert_eq!(l.join(p, q), l.top());
        let inc = l.incomparable_set(p);
        assert_eq!(inc.iter().collect::<Vec<_>>(), vec![q]);
        assert!(!l.is_chain());
    }

    #[test]
    fn bounds_absorb() {
        let l = diamond();
        for x in l.elements() {
            assert_eq!(l.meet(x, l.top()), x);
            assert_eq!(l.join(x, l.bottom()), x);
        }
    }

    #[test]
    fn empty_folds_use_lattice_convention() {
        let l = diamond();
        assert_eq!(l.meet_fold(std::iter::empty()), l.top());
        assert_eq!(l.join_fold(std::iter::empty()), l.bottom());
    }

    #[test]
    fn intervals() {
        let l = diamond();
        assert_eq!(l.interval(l.bottom(), l.top()).unwrap().len(), 4);
        assert_eq!(l.interval(1, 1).unwrap().iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(l.interval(l.bottom(), 1).unwrap().iter().collect::<Vec<_>>(), vec![0, 1]);
        assert!(matches!(l.interval(1, 2), Err(LatticeError::EmptyInterval { .. })));
    }

    #[test]
    fn poset_without_join_is_rejected() {
        // Diamond with the top removed: p and q have no upper bound.
        let err = parse_lattice(&LatticeSpec {
            elements: vec!["z".into(), "p".into(), "q".into()],
            covers: vec![("z".into(), "p".into()), ("z".into(), "q".into())],
            bottom: "z".into(),
            top: "p".into(),
        })
        .unwrap_err();
        assert!(
            matches!(err, LatticeError::NotALattice { kind: BoundKind::Join, .. }),
            "got {err:?}"
        );
    }

    #[test]
    fn cycle_is_rejected() {
        let err = parse_lattice(&LatticeSpec {
            elements: vec!["a".into(), "b".into()],
            covers: vec![("a".into(), "b".into()), ("b".into(), "a".into())],
            bottom: "a".into(),
            top: "b".into(),
        })
        .unwrap_err();
        assert!(matches!(err, LatticeError::Cycle(..)));
    }

    #[test]
    fn wrong_bounds_are_rejected() {
        let err = parse_lattice(&LatticeSpec {
            elements: vec!["0".into(), "1".into()],
            covers: vec![("0".into(), "1".into())],
            bottom: "1".into(),
            top: "0".into(),
        })
        .unwrap_err();
        assert!(matches!(err, LatticeError::Bound { .. }));
    }

    #[test]
    fn normalized_spec_drops_redundant_covers() {
        // 3-chain declared with the redundant long edge.
        let l = parse_lattice(&LatticeSpec {
            elements: vec!["0".into(), "m".into(), "1".into()],
            covers: vec![
                ("0".into(), "m".into()),
                ("m".into(), "1".into()),
                ("0".into(), "1".into()),
            ],
            bottom: "0".into(),
            top: "1".into(),
        })
        .unwrap();
        let spec = l.normalized_spec();
        assert_eq!(
            spec.covers,
            vec![("0".to_string(), "m".to_string()), ("m".to_string(), "1".to_string())]
        );
        // Re-parsing the normalized spec gives the same order.
        let l2 = parse_lattice(&spec).unwrap();
        for x in l.elements() {
            for y in l.elements() {
                assert_eq!(l.leq(x, y), l2.leq(x, y));
            }
        }
    }

    #[test]
    fn meet_is_greatest_lower_bound() {
        let l = diamond();
        for x in l.elements() {
            for y in l.elements() {
                let m = l.meet(x, y);
                assert!(l.leq(m, x) && l.leq(m, y));
                let j = l.join(x, y);
                assert!(l.leq(x, j) && l.leq(y, j));
                for z in l.elements() {
                    if l.leq(z, x) && l.leq(z, y) {
                        assert!(l.leq(z, m));
                    }
                    if l.leq(x, z) && l.leq(y, z) {
                        assert!(l.leq(j, z));
                    }
                }
            }
        }
    }

    #[test]
    fn chains_have_no_incomparables() {
        let l = chain2();
        for x in l.elements() {
            assert!(l.incomparable_set(x).is_empty());
        }
    }
}
