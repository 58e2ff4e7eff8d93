//! Degrees, counts and regular representation zeta functions of the regular
//! characters of `GL_n`, `GU_n`, `SL_n` and `SU_n` over a compact discrete
//! valuation ring, evaluated exactly from closed formulas, together with
//! brute-force finite-field oracles that recompute the underlying
//! combinatorics (type census, centralizer orders, determinant images).

pub mod counts;
pub mod error;
pub mod exactnum;
pub mod oracle;
pub mod orders;
pub mod typelib;
pub mod zeta;

pub use error::{Error, Result};
