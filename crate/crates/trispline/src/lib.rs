//! Exact dimension bounds, graded homology, and a brute-force dimension
//! oracle for spaces of piecewise polynomials on tetrahedral partitions.

pub mod bounds;
pub mod builtin;
pub mod forms;
pub mod homology;
pub mod ideals;
pub mod mesh;
pub mod oracle;
pub mod report;
