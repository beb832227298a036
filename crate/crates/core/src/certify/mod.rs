//! Finite-depth certificates for Poisson stability, unpredictability,
//! density and sensitivity of shift orbits.
//!
//! Every recorded number is recomputed with the exact metric before it is
//! returned, so a certificate is a self-verifying artifact: rerunning
//! [`UnpredictabilityCertificate::verify`] reproduces it bit for bit.

mod certificate;
mod density;
mod returns;
mod scan;
mod sensitivity;

pub use certificate::{
    certify_poisson, certify_unpredictable, transport_certificate, transport_certificate_backward,
    CertificateEntry, PoissonEntry, UnpredictabilityCertificate,
};
pub use density::{density_check, find_visit, DensityHit, DensityReport, DensityStrategy};
pub use returns::{
    aperiodicity_scan, bi_infinite_canonical_bound, canonical_return_time, find_period_break,
    find_return_time, find_return_time_from, find_separation_time, one_sided_canonical_bound,
    returns_within, ReturnMode, DEFAULT_HORIZON,
};
pub use scan::Direction;
pub use sensitivity::{
    sensitivity_witness, DiscreteSystem, SensitivityWitness, ShiftSystem, WitnessBranch,
    WitnessSource,
};
