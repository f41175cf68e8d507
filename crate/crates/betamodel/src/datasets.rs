//! Bundled degree sequences.

use betamodel_core::DegreeSequence;

/// Chesapeake Bay food web: undirected degrees of its 33 taxa.
pub const CHESAPEAKE: [u32; 33] = [
    7, 8, 5, 1, 1, 2, 8, 10, 4, 2, 4, 5, 3, 6, 7, 3, 2, 7, 6, 1, 2, 9, 6, 1, 3, 4, 6, 3, 3, 3, 2,
    4, 4,
];

/// One representative chesapeake node per degree 1..=10 (1-based ids).
pub const CHESAPEAKE_PANEL: [usize; 10] = [4, 6, 13, 11, 12, 14, 15, 2, 22, 8];

pub const NAMES: &[&str] = &["chesapeake"];

pub fn dataset(name: &str) -> Option<DegreeSequence> {
    match name.to_ascii_lowercase().as_str() {
        "chesapeake" => {
            Some(DegreeSequence::new(CHESAPEAKE.to_vec()).expect("bundled sequence is valid"))
        }
        _ => None,
    }
}
