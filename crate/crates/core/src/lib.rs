//! Bit-string reference frames compiled to classifier diagrams, with the
//! surrounding machinery: cobordism words and their permutation TQFT,
//! quiver sections, finite-group spin networks and characteristic-class
//! arithmetic. Everything is exact.

pub mod cccd;
pub mod charclass;
pub mod classifier;
pub mod cobordism;
pub mod error;
pub mod formats;
pub mod linalg;
pub mod perm;
pub mod qrf;
pub mod quiver;
pub mod rational;
pub mod tqnn;

pub use error::{Error, Result};
