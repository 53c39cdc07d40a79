//! Published reference figures for the benchmark instances.

use std::sync::OnceLock;

use serde::Deserialize;

const TABLE: &str = include_str!("../data/reference_table.csv");

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ReferenceEntry {
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub ilp: Option<u64>,
}

pub fn reference_table() -> &'static [ReferenceEntry] {
    static ROWS: OnceLock<Vec<ReferenceEntry>> = OnceLock::new();
    ROWS.get_or_init(|| {
        csv::Reader::from_reader(TABLE.as_bytes())
            .deserialize()
            .collect::<Result<_, _>>()
            .expect("bundled reference table is well formed")
    })
}

pub fn lookup(name: &str) -> Option<&'static ReferenceEntry> {
    reference_table().iter().find(|r| r.graph == name)
}

/// ILP bound for a named DIMACS instance, if one is listed.
pub fn ilp_bound(name: &str) -> Option<u64> {
    lookup(name).and_then(|r| r.ilp)
}
