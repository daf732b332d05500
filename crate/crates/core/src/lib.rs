//! Exact motivic Donaldson-Thomas series of the conifold quiver.
//!
//! The crate is organised bottom-up:
//!
//! - [`ring`]: Laurent polynomials and reduced rational functions in `q = L^{1/2}`.
//! - [`series`]: truncated power series in `y0, y1` (and in the geometric `s, T`).
//! - [`plethystic`]: Adams operations, plethystic `Exp`/`Log`, power structure, q-series identities.
//! - [`torus`]: the framed quantum torus, stability parameters and ray factorization.
//! - [`conifold`]: roots, chambers, the universal series and every chamber series.
//! - [`oracle`]: brute-force point counts over prime fields.
//! - [`verify`] and [`cli`]: the verification suites and the command-line front end.

pub mod cli;
pub mod conifold;
pub mod error;
mod json;
pub mod oracle;
pub mod plethystic;
pub mod ring;
pub mod series;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{HalfLaurent, RatFun};
pub use series::{DimVec, GeomSeries, TruncSeries};
