//! Exact images of Lie polynomial maps on `sl2(F_q)`, `q` odd.
//!
//! Images are computed as unions of automorphism orbits, which for `sl2(F_q)`
//! are the `PGL2(q)` conjugacy classes: zero, the nilpotent cone, and one
//! semisimple orbit per nonzero determinant value.

pub mod gf;
pub mod lieword;
pub mod sl2;
pub mod engine;
pub mod census;
pub mod genset;
pub mod cli;
