//! Trees, signs, linear combinations and exact linear algebra.

pub mod element;
pub mod label;
pub mod linalg;
pub mod ring;
pub mod sign;
pub mod tree;

pub use element::Element;
pub use label::{Label, Pattern};
pub use ring::Ring;
pub use sign::koszul_sign;
pub use tree::{Choice, Node, Slot, Tree};
