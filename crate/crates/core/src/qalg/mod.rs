mod algebra;
mod extension;
mod quiver;

pub use algebra::*;
pub use extension::*;
pub use quiver::*;
