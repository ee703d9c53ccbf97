//! Exact computer algebra for split twisted Yangians and the twisted current
//! and loop algebras they degenerate to.

pub mod scalars;
pub mod rootdata;
pub mod liealg;
pub mod currentalg;
pub mod loopalg;
pub mod freealg;
pub mod presentations;
pub mod grobner;
pub mod verify;
