//! Shared fixture loading for the integration tests.

use std::path::PathBuf;
use std::sync::Arc;

use unilat_core::construct::OpTable;
use unilat_core::genfun::{generator_from_json, Generator};
use unilat_core::io::optable_from_json;
use unilat_core::lattice::{lattice_from_json, ElemId, FiniteLattice};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

#[allow(dead_code)]
pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("read fixture {name}: {e}"))
}

pub fn lattice(name: &str) -> Arc<FiniteLattice> {
    lattice_from_json(&fixture(name)).unwrap_or_else(|e| panic!("lattice {name}: {e}"))
}

pub fn generator(l: &Arc<FiniteLattice>, name: &str) -> Generator {
    generator_from_json(l, &fixture(name)).unwrap_or_else(|e| panic!("generator {name}: {e}"))
}

#[allow(dead_code)]
pub fn optable(l: &Arc<FiniteLattice>, name: &str) -> OpTable {
    optable_from_json(l, &fixture(name), None).unwrap_or_else(|e| panic!("table {name}: {e}"))
}

pub fn id(l: &FiniteLattice, label: &str) -> ElemId {
    l.id_of(label).unwrap_or_else(|| panic!("no element {label}"))
}
