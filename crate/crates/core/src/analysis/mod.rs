//! Multisections, middle terms of almost split sequences, counting by
//! dimension vector, and the Hom and degeneration orders.

mod counting;
mod multisection;
mod orders;

pub use counting::*;
pub use multisection::*;
pub use orders::*;
