//! Exact symbolic dynamics for unpredictable points of the binary shift.
//!
//! The crate is organised bottom-up:
//!
//! * [`symbolic`] holds binary words, rule-defined infinite streams, the shift
//!   maps and the two dyadic metrics. Every metric value is an exact dyadic
//!   rational paired with an exact tail bound.
//! * [`star`] builds the two explicit points `s*` (one-sided and bi-infinite)
//!   from the length-then-lexicographic ordering of finite words.
//! * [`certify`] turns return times, separation times, density and
//!   sensitivity into finite, self-verifying certificates.
//! * [`conjugacy`] carries the construction to the logistic map, a planar
//!   affine horseshoe and the Hénon parameter region using interval
//!   arithmetic over exact rationals.

pub mod certify;
pub mod conjugacy;
mod error;
pub mod star;
pub mod symbolic;

pub use error::{Error, Result};
