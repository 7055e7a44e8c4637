pub mod bracket;
pub mod error;
pub mod exactalg;
pub mod exec;
pub mod fixtures;
pub mod geometry;
pub mod matroid;
pub mod purecond;
pub mod redraw;

pub use error::{Error, Result};
pub use exec::Execution;
