//! McKay quivers of metacyclic groups, their twisted superpotentials, and gradings
//! induced by lattice cuts, computed in exact cyclotomic arithmetic.

pub mod exact;
pub mod exec;
pub mod grading_algebra;
pub mod groups;
pub mod lattice;
pub mod mckay;
pub mod quiver;
pub mod superpotential;
