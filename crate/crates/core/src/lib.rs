//! Exact computations with bound quiver algebras, their representations and
//! translation quivers, with local surgery on Auslander-Reiten components.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod ops;
pub mod qalg;
pub mod reps;
pub mod tquiver;
pub mod verify;
