//! Additive generators: injective monotone maps from a lattice into the
//! extended rationals, anchored by `f(e1) = 0`.
//!
//! A generator carries three anchor elements `e1 <= a <= e2`. For an
//! increasing generator the band set `F_a` collects the values of elements
//! incomparable with `a` lying strictly between `0` and `f(a)`; for a
//! decreasing one, `G_a` collects those strictly between `f(a)` and `0`.
//! These bands force the constant-`a` absorption region of the construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{ElemId, ElementSet, FiniteLattice};
use crate::value::{ext_add, ExtValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Increasing => write!(f, "increasing"),
            Direction::Decreasing => write!(f, "decreasing"),
        }
    }
}

/// Anchor triple `e1 <= a <= e2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchors {
    pub e1: ElemId,
    pub a: ElemId,
    pub e2: ElemId,
}

/// On-disk form of a generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    /// Element label -> value string ("-11", "3/2", "-inf", "+inf").
    pub values: BTreeMap<String, String>,
    pub direction: Direction,
    pub e1: String,
    pub a: String,
    pub e2: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorViolation {
    NotInjective { x: String, y: String, value: ExtValue },
    NotMonotone { lower: String, upper: String, f_lower: ExtValue, f_upper: ExtValue },
    AnchorNotZero { e1: String, value: ExtValue },
    AnchorOrder { e1: String, a: String, e2: String },
}

impl fmt::Display for GeneratorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorViolation::NotInjective { x, y, value } => {
                write!(f, "not injective: f({x}) = f({y}) = {value}")
            }
            GeneratorViolation::NotMonotone { lower, upper, f_lower, f_upper } => {
                write!(
                    f,
                    "not monotone: {lower} < {upper} but f({lower}) = {f_lower}, f({upper}) = {f_upper}"
                )
            }
            GeneratorViolation::AnchorNotZero { e1, value } => {
                write!(f, "anchor not zero: f({e1}) = {value}")
            }
            GeneratorViolation::AnchorOrder { e1, a, e2 } => {
                write!(f, "anchors violate {e1} <= {a} <= {e2}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("no value given for element {0:?}")]
    MissingValue(String),
    #[error("bad value for element {label:?}: {source}")]
    BadValue {
        label: String,
        #[source]
        source: crate::value::ValueParseError,
    },
    #[error("invalid generator:\n{}", .0.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<GeneratorViolation>),
}

/// A validated generator over a shared lattice.
#[derive(Debug, Clone)]
pub struct Generator {
    lattice: Arc<FiniteLattice>,
    values: Vec<ExtValue>,
    direction: Direction,
    anchors: Anchors,
    i_a: ElementSet,
    /// F_a (increasing) or G_a (decreasing): band values of I_a elements.
    band: BTreeSet<ExtValue>,
    preimage: BTreeMap<ExtValue, ElemId>,
}

/// Result of a pseudo-inverse query. `empty_convention` records that the
/// query fell off the range on the side where `{x : f(x) > y}` is empty, so
/// the `inf {} = top` / `sup {} = bottom` convention produced the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PseudoInverse {
    pub element: ElemId,
    pub empty_convention: bool,
}

impl Generator {
    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn anchors(&self) -> Anchors {
        self.anchors
    }

    pub fn value(&self, x: ElemId) -> ExtValue {
        self.values[x]
    }

    pub fn values(&self) -> &[ExtValue] {
        &self.values
    }

    pub fn f_a(&self) -> ExtValue {
        self.values[self.anchors.a]
    }

    pub fn f_e2(&self) -> ExtValue {
        self.values[self.anchors.e2]
    }

    pub fn f_bottom(&self) -> ExtValue {
        self.values[self.lattice.bottom()]
    }

    pub fn in_i_a(&self, x: ElemId) -> bool {
        self.i_a.contains(x)
    }

    pub fn i_a(&self) -> &ElementSet {
        &self.i_a
    }

    /// Membership in F_a (increasing) resp. G_a (decreasing).
    pub fn in_band(&self, v: &ExtValue) -> bool {
        self.band.contains(v)
    }

    pub fn ran_contains(&self, v: &ExtValue) -> bool {
        self.preimage.contains_key(v)
    }

    pub fn preimage_of(&self, v: &ExtValue) -> Option<ElemId> {
        self.preimage.get(v).copied()
    }

    /// Pseudo-inverse: the exact preimage on the range, otherwise the
    /// infimum (increasing) or supremum (decreasing) of `{x : f(x) > y}`,
    /// computed by folding meet resp. join over the set.
    pub fn pseudo_inverse(&self, y: &ExtValue) -> PseudoInverse {
        if let Some(x) = self.preimage_of(y) {
            return PseudoInverse { element: x, empty_convention: false };
        }
        let above: Vec<ElemId> =
            self.lattice.elements().filter(|&x| self.values[x] > *y).collect();
        let empty = above.is_empty();
        let element = match self.direction {
            Direction::Increasing => self.lattice.meet_fold(above),
            Direction::Decreasing => self.lattice.join_fold(above),
        };
        PseudoInverse { element, empty_convention: empty }
    }

    /// Summands of `v` over the ground set `Ran(f) ∪ {0}`: the nonzero
    /// self-summand plus every range value `s` with `v = s + b` for some
    /// range value `b` of the same sign.
    pub fn summands_of(&self, v: &ExtValue) -> BTreeSet<ExtValue> {
        let mut out = BTreeSet::new();
        if v.is_zero() {
            return out;
        }
        if self.ran_contains(v) {
            out.insert(*v);
        }
        for s in self.preimage.keys() {
            for b in self.preimage.keys() {
                if (s.signum() as i16) * (b.signum() as i16) > 0 {
                    if let Ok(sum) = ext_add(*s, *b) {
                        if sum == *v {
                            out.insert(*s);
                        }
                    }
                }
            }
        }
        out
    }

    /// The order-dual generator: negated values, flipped direction, same
    /// anchors. Negating twice gives back the original.
    pub fn negated(&self) -> Generator {
        let values: Vec<ExtValue> = self.values.iter().map(|v| v.neg()).collect();
        let direction = match self.direction {
            Direction::Increasing => Direction::Decreasing,
            Direction::Decreasing => Direction::Increasing,
        };
        build_unchecked(Arc::clone(&self.lattice), values, direction, self.anchors)
    }
}

/// Validate a value table into a generator. All invariant violations are
/// collected before rejecting, so the error lists every problem at once.
pub fn load_generator(
    lattice: &Arc<FiniteLattice>,
    spec: &GeneratorSpec,
) -> Result<Generator, GeneratorError> {
    for label in spec.values.keys() {
        if lattice.id_of(label).is_none() {
            return Err(GeneratorError::UnknownLabel(label.clone()));
        }
    }
    let mut values = Vec::with_capacity(lattice.n());
    for x in lattice.elements() {
        let label = lattice.label(x);
        let raw = spec
            .values
            .get(label)
            .ok_or_else(|| GeneratorError::MissingValue(label.to_string()))?;
        let v: ExtValue = raw
            .parse()
            .map_err(|e| GeneratorError::BadValue { label: label.to_string(), source: e })?;
        values.push(v);
    }
    let e1 = lattice.id_of(&spec.e1).ok_or_else(|| GeneratorError::UnknownLabel(spec.e1.clone()))?;
    let a = lattice.id_of(&spec.a).ok_or_else(|| GeneratorError::UnknownLabel(spec.a.clone()))?;
    let e2 = lattice.id_of(&spec.e2).ok_or_else(|| GeneratorError::UnknownLabel(spec.e2.clone()))?;
    let anchors = Anchors { e1, a, e2 };

    let mut violations = Vec::new();
    // Injectivity, with the offending pair as witness.
    for x in lattice.elements() {
        for y in (x + 1)..lattice.n() {
            if values[x] == values[y] {
                violations.push(GeneratorViolation::NotInjective {
                    x: lattice.label(x).to_string(),
                    y: lattice.label(y).to_string(),
                    value: values[x],
                });
            }
        }
    }
    // Order preservation, strict on strict pairs.
    for x in lattice.elements() {
        for y in lattice.elements() {
            if lattice.lt(x, y) {
                let ok = match spec.direction {
                    Direction::Increasing => values[x] < values[y],
                    Direction::Decreasing => values[x] > values[y],
                };
                if !ok {
                    violations.push(GeneratorViolation::NotMonotone {
                        lower: lattice.label(x).to_string(),
                        upper: lattice.label(y).to_string(),
                        f_lower: values[x],
                        f_upper: values[y],
                    });
                }
            }
        }
    }
    if !values[e1].is_zero() {
        violations.push(GeneratorViolation::AnchorNotZero {
            e1: spec.e1.clone(),
            value: values[e1],
        });
    }
    if !(lattice.leq(e1, a) && lattice.leq(a, e2)) {
        violations.push(GeneratorViolation::AnchorOrder {
            e1: spec.e1.clone(),
            a: spec.a.clone(),
            e2: spec.e2.clone(),
        });
    }
    if !violations.is_empty() {
        return Err(GeneratorError::Invalid(violations));
    }
    Ok(build_unchecked(Arc::clone(lattice), values, spec.direction, anchors))
}

/// Parse a JSON generator spec against a lattice.
pub fn generator_from_json(
    lattice: &Arc<FiniteLattice>,
    json: &str,
) -> Result<Generator, crate::io::IoError> {
    let spec: GeneratorSpec = serde_json::from_str(json)?;
    Ok(load_generator(lattice, &spec)?)
}

/// Assemble a generator whose invariants are already known to hold (used by
/// `negated` and the backtracking search, both of which construct monotone
/// injective assignments by construction).
pub(crate) fn build_unchecked(
    lattice: Arc<FiniteLattice>,
    values: Vec<ExtValue>,
    direction: Direction,
    anchors: Anchors,
) -> Generator {
    let i_a = lattice.incomparable_set(anchors.a);
    let f_a = values[anchors.a];
    let zero = ExtValue::zero();
    let mut band = BTreeSet::new();
    for x in i_a.iter() {
        let v = values[x];
        let in_band = match direction {
            Direction::Increasing => zero < v && v < f_a,
            Direction::Decreasing => f_a < v && v < zero,
        };
        if in_band {
            band.insert(v);
        }
    }
    let mut preimage = BTreeMap::new();
    for (x, v) in values.iter().enumerate() {
        preimage.insert(*v, x);
    }
    Generator { lattice, values, direction, anchors, i_a, band, preimage }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{parse_lattice, LatticeSpec};

    fn chain2() -> Arc<FiniteLattice> {
        Arc::new(
            parse_lattice(&LatticeSpec {
                elements: vec!["0".into(), "1".into()],
                covers: vec![("0".into(), "1".into())],
                bottom: "0".into(),
                top: "1".into(),
            })
            .unwrap(),
        )
    }

    fn spec(values: &[(&str, &str)], dir: Direction, e1: &str, a: &str, e2: &str) -> GeneratorSpec {
        GeneratorSpec {
            values: values.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            direction: dir,
            e1: e1.into(),
            a: a.into(),
            e2: e2.into(),
        }
    }

    #[test]
    fn t_norm_limit_case_on_two_chain() {
        let l = chain2();
        let g = load_generator(
            &l,
            &spec(&[("0", "-1"), ("1", "0")], Direction::Increasing, "1", "1", "1"),
        )
        .unwrap();
        assert_eq!(g.value(0), ExtValue::int(-1));
        assert!(g.i_a().is_empty());
    }

    #[test]
    fn duplicate_value_is_rejected_with_witness() {
        let l = chain2();
        let err = load_generator(
            &l,
            &spec(&[("0", "-1"), ("1", "-1")], Direction::Increasing, "1", "1", "1"),
        )
        .unwrap_err();
        match err {
            GeneratorError::Invalid(violations) => {
                assert!(violations
                    .iter()
                    .any(|v| matches!(v, GeneratorViolation::NotInjective { .. })));
            }
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn anchor_zero_is_enforced() {
        let l = chain2();
        let err = load_generator(
            &l,
            &spec(&[("0", "-1"), ("1", "3")], Direction::Increasing, "1", "1", "1"),
        )
        .unwrap_err();
        match err {
            GeneratorError::Invalid(violations) => {
                assert!(violations
                    .iter()
                    .any(|v| matches!(v, GeneratorViolation::AnchorNotZero { .. })));
            }
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn negation_is_an_involution() {
        let l = chain2();
        let g = load_generator(
            &l,
            &spec(&[("0", "-1"), ("1", "0")], Direction::Increasing, "1", "1", "1"),
        )
        .unwrap();
        let back = g.negated().negated();
        assert_eq!(back.values(), g.values());
        assert_eq!(back.direction(), g.direction());
    }
}
