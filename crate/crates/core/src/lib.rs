//! Maximum numbers of common zeros of homogeneous polynomials over finite
//! fields, extremal families attaining them, and exhaustive verification.

pub mod bounds;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod extremal;
pub mod gf;
pub mod linalg;
pub mod poly;
pub mod polyfile;
pub mod prm;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{Elem, Field};
