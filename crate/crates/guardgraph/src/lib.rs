//! Diagonal and edge 2-domination of triangulation graphs and guarding of
//! piecewise-convex polygons.

pub mod trigraph;
pub mod oracle;
mod reduction;
pub mod diag_dominate;
pub mod edge_dominate;
pub mod geometry;
pub mod monotone;
pub mod lowerbounds;
