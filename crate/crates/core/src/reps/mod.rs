mod hom;
mod module;
mod resolution;

pub use hom::*;
pub use module::*;
pub use resolution::*;

#[cfg(test)]
mod tests;
