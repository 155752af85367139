//! Exact computation of Grothendieck–Witt valued inflection data on
//! hyperelliptic curves y² = f(x) of odd degree.

pub mod curve;
pub mod error;
pub mod explorer;
pub mod field;
pub mod gw;
pub mod indices;
pub mod inflection;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
