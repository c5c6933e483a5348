//! Exact enumeration of triangulations of planar point sets, flip-trees of
//! degree-3 points, and the charging audit built on them.

pub mod bounds;
pub mod catalan;
pub mod charging;
pub mod cli;
pub mod enumerate;
pub mod geom;
pub mod number;
pub mod polygon;
pub mod triangulation;
