pub mod basis;
pub mod bimodule;
pub mod coalgebra;
pub mod differential;
pub mod error;
pub mod eval;
pub mod homology;
pub mod homotopy;
pub mod kernel;
pub mod notation;
pub mod operad;
pub mod presentation;
pub mod report;
pub mod rewrite;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{Element, Label, Ring, Tree};
pub use presentation::Presentation;
