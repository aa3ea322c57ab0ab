//! Butson Hadamard matrices `BH(d, q)` and complete unbiased systems among them.

pub mod clique;
pub mod enumerate;
pub mod roots;
pub mod search;

pub use clique::Budget;
pub use enumerate::{
    enumerate_bh, orthogonal_row_candidates, BhEnumeration, ButsonSearchNode, ClassSummary,
    EnumerateOptions,
};
pub use roots::Row;
pub use search::{search_complete_muh_over_bh, MuhSearchReport, SearchOptions, UnbiasednessGraph};
