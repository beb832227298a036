//! Concrete systems conjugate to the shift: the logistic map on its
//! invariant Cantor set, an affine horseshoe, and the Hénon family.
//!
//! All real quantities are closed intervals with exact rational endpoints.

mod henon;
mod horseshoe;
mod interval;
mod logistic;

pub use henon::{region_check, HenonSystem};
pub use horseshoe::{DottedWord, HorseshoeItinerary, HorseshoeSystem};
pub use interval::{round_down, round_up, sqrt_bounds, Interval, IntervalBox};
pub use logistic::{
    CommutationFailure, CommutationReport, Itinerary, LogisticSystem, DEFAULT_PRECISION_BITS,
};
