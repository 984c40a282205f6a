//! Classification of linear-like planar submersions `p(x, y) = r(x) + s(x) y`
//! up to topological equivalence, with exact arithmetic throughout.

pub mod cli;
pub mod equivalence;
pub mod expr;
pub mod foliation;
pub mod oracle;
pub mod realalg;
pub mod render;
pub mod report;
