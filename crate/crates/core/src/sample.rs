//! Randomized fixtures for the property suites: small random lattices and
//! chain generators that satisfy condition (i) by construction or by
//! rejection sampling. Everything is driven by a caller-supplied seeded RNG
//! so runs are reproducible.

use std::sync::Arc;

use rand::Rng;

use crate::conditions::{check_conditions, CheckMode};
use crate::genfun::{build_unchecked, Anchors, Direction, Generator};
use crate::lattice::{parse_lattice, FiniteLattice, LatticeSpec};
use crate::value::ExtValue;

/// A chain `c0 < c1 < ... < c{len-1}`.
pub fn chain(len: usize) -> Arc<FiniteLattice> {
    assert!(len >= 1);
    let elements: Vec<String> = (0..len).map(|i| format!("c{i}")).collect();
    let covers = (0..len - 1)
        .map(|i| (format!("c{i}"), format!("c{}", i + 1)))
        .collect();
    Arc::new(
        parse_lattice(&LatticeSpec {
            elements: elements.clone(),
            covers,
            bottom: elements[0].clone(),
            top: elements[len - 1].clone(),
        })
        .expect("chains are lattices"),
    )
}

/// A random lattice built as a chain with up to two parallel detours: for a
/// cover edge u -< v of the base chain, a fresh element p is inserted with
/// u -< p -< v, leaving p incomparable with everything strictly between u
/// and v. Inserting on distinct base edges preserves lattice-ness.
pub fn random_lattice(rng: &mut impl Rng, max_n: usize) -> Arc<FiniteLattice> {
    let max_n = max_n.max(2);
    let base = rng.random_range(2..=max_n.min(6));
    let spare = max_n - base;
    let detours = rng.random_range(0..=spare.min(2).min(base - 1));
    let mut elements: Vec<String> = (0..base).map(|i| format!("c{i}")).collect();
    let mut covers: Vec<(String, String)> = (0..base - 1)
        .map(|i| (format!("c{i}"), format!("c{}", i + 1)))
        .collect();
    // Pick distinct base edges, each at least length 2 apart in effect:
    // u -< p -< v needs v at least two above u to create incomparability,
    // but inserting on a cover edge is also fine (it just widens it).
    let mut edges: Vec<usize> = (0..base - 1).collect();
    for d in 0..detours {
        let pick = rng.random_range(0..edges.len());
        let i = edges.swap_remove(pick);
        let p = format!("p{d}");
        elements.push(p.clone());
        // Detour spans one or two chain steps when room allows.
        let span = if i + 2 < base && rng.random_bool(0.5) { 2 } else { 1 };
        covers.push((format!("c{i}"), p.clone()));
        covers.push((p, format!("c{}", i + span)));
    }
    Arc::new(
        parse_lattice(&LatticeSpec {
            elements: elements.clone(),
            covers,
            bottom: "c0".into(),
            top: format!("c{}", base - 1),
        })
        .expect("parallel extensions of chains are lattices"),
    )
}

/// Random increasing integer generator on a chain, anchored at a random
/// `e1 <= a <= e2`, satisfying condition (i). Random gap patterns are tried
/// first; consecutive integers (which always satisfy condition (i)) are the
/// fallback, so this terminates.
pub fn random_chain_generator(rng: &mut impl Rng, lattice: &Arc<FiniteLattice>) -> Generator {
    assert!(lattice.is_chain());
    let n = lattice.n();
    for attempt in 0..32 {
        let mut picks: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        picks.sort_unstable();
        let (e1, a, mut e2) = (picks[0].min(n - 1), picks[n / 2], picks[n - 1]);
        let (e1, a) = (e1.min(a), a);
        let mut e2 = e2.max(a);
        // a = e2 below the top breaks the upper neutrality (see search).
        if a == e2 && e2 != n - 1 {
            e2 = n - 1;
        }
        let anchors = Anchors { e1, a, e2 };
        let mut values = vec![0i64; n];
        let max_gap = if attempt < 24 { 2 } else { 1 };
        for x in 1..n {
            values[x] = values[x - 1] + rng.random_range(1..=max_gap);
        }
        let offset = values[e1];
        let values: Vec<ExtValue> = values.iter().map(|v| ExtValue::int(v - offset)).collect();
        let g = build_unchecked(Arc::clone(lattice), values, Direction::Increasing, anchors);
        let report = check_conditions(&g, CheckMode::Chain).expect("chain lattice");
        if report.passed() {
            return g;
        }
    }
    // Consecutive integers: sums below f(bottom) fall off the low end and
    // everything else lands in the range after the f(a) cap.
    let e1 = rng.random_range(0..n);
    let a = rng.random_range(e1..n);
    let mut e2 = rng.random_range(a..n);
    if a == e2 && e2 != n - 1 {
        e2 = n - 1;
    }
    let values: Vec<ExtValue> =
        (0..n).map(|x| ExtValue::int(x as i64 - e1 as i64)).collect();
    build_unchecked(Arc::clone(lattice), values, Direction::Increasing, Anchors { e1, a, e2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_lattices_parse_and_stay_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let l = random_lattice(&mut rng, 7);
            assert!(l.n() <= 7);
        }
    }

    #[test]
    fn random_chain_generators_satisfy_condition_i() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let len = rng.random_range(2..=12);
            let l = chain(len);
            let g = random_chain_generator(&mut rng, &l);
            let report = check_conditions(&g, CheckMode::Chain).unwrap();
            assert!(report.passed());
        }
    }
}
