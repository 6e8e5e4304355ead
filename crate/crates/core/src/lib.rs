//! Exact computational pipeline for Ratcliffe–Tschantz 24-cell manifolds:
//! side pairings, ridge cycles, presentations, cusps, the orientable double
//! cover, boundary fillings and Kirby-diagram data.

pub mod census;
pub mod cover;
pub mod cusps;
pub mod exact;
pub mod groups;
pub mod kirby;
pub mod moebius;
pub mod polytope24;
