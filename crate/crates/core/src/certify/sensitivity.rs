//! Sensitivity witnesses on the orbit closure of an unpredictable point.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::certificate::{proximity_limit, UnpredictabilityCertificate};
use super::certify_unpredictable;
use super::density::find_visit;
use super::returns::{find_return_time_from, find_separation_time, ReturnMode};
use super::scan::Direction;
use crate::error::domain;
use crate::symbolic::{
    metric, metric_at_least, Decision, Dyadic, DyadicEnclosure, Kind, Sequence, ShiftedStream,
    SymbolStream,
};
use crate::{Error, Result};

/// A map iterated in unit time steps, with a rigorous distance.
pub trait DiscreteSystem {
    type State;

    fn step(&self, x: &Self::State) -> Result<Self::State>;

    fn iterate(&self, x: &Self::State, t: u64) -> Result<Self::State> {
        let mut out = self.step(x)?;
        for _ in 1..t {
            out = self.step(&out)?;
        }
        Ok(out)
    }

    /// Inverse step for invertible systems.
    fn inverse_step(&self, _x: &Self::State) -> Option<Result<Self::State>> {
        None
    }

    fn distance(&self, a: &Self::State, b: &Self::State) -> Result<DyadicEnclosure>;
}

/// The shift on one-sided or bi-infinite sequences with a designated
/// unpredictable point.
#[derive(Clone, Debug)]
pub struct ShiftSystem {
    point: SymbolStream,
    resolution: u64,
    certificate: Option<UnpredictabilityCertificate>,
}

impl ShiftSystem {
    /// Distances are summed over windows of `resolution`.
    pub fn new(point: SymbolStream, resolution: u64) -> Self {
        Self {
            point,
            resolution,
            certificate: None,
        }
    }

    /// Attaches a minimal-time certificate of depth `n_max` for the point.
    pub fn with_certificate(self, n_max: u64, horizon: u64) -> Result<Self> {
        self.with_certificate_mode(n_max, ReturnMode::Minimal, horizon)
    }

    /// Attaches a certificate built with the given return mode. Canonical
    /// times of `s*` cost no search, so deep certificates are cheap.
    pub fn with_certificate_mode(
        mut self,
        n_max: u64,
        mode: ReturnMode,
        horizon: u64,
    ) -> Result<Self> {
        self.certificate = Some(certify_unpredictable(&self.point, n_max, mode, horizon)?);
        Ok(self)
    }

    pub fn point(&self) -> &SymbolStream {
        &self.point
    }

    pub fn kind(&self) -> Kind {
        self.point.kind()
    }

    pub fn certificate(&self) -> Option<&UnpredictabilityCertificate> {
        self.certificate.as_ref()
    }

    /// `σ^k` of the designated point.
    pub fn orbit_point(&self, k: i64) -> Result<ShiftedStream> {
        self.point.shift_by(k)
    }

    /// `ε₀` of the shift: an index-0 mismatch already gives distance 1.
    pub fn epsilon0(&self) -> Dyadic {
        Dyadic::from_int(1)
    }
}

impl DiscreteSystem for ShiftSystem {
    type State = ShiftedStream;

    fn step(&self, x: &ShiftedStream) -> Result<ShiftedStream> {
        x.shift_by(1)
    }

    fn iterate(&self, x: &ShiftedStream, t: u64) -> Result<ShiftedStream> {
        x.shift(&BigInt::from(t))
    }

    fn inverse_step(&self, x: &ShiftedStream) -> Option<Result<ShiftedStream>> {
        (self.kind() == Kind::BiInfinite).then(|| x.shift_by(-1))
    }

    fn distance(&self, a: &ShiftedStream, b: &ShiftedStream) -> Result<DyadicEnclosure> {
        metric(a, b, self.resolution)
    }
}

/// Which case of the sensitivity argument produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessBranch {
    /// `r = σ^k(p)` lies on the orbit; the witness is a return of `r`.
    OnTrajectory,
    /// `r` is only approximated by the orbit; the witness comes from a
    /// nearby orbit point `r_m` or from one of its returns.
    LimitPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    Certificate,
    OrbitScan,
}

#[derive(Clone, Debug)]
pub struct SensitivityWitness {
    pub base: ShiftedStream,
    pub perturbed: ShiftedStream,
    pub delta: Dyadic,
    /// Verified `d(base, perturbed) <= distance_upper < delta`.
    pub distance_upper: Dyadic,
    pub time: BigInt,
    /// Verified lower bound on `d(σ^time(perturbed), σ^time(base))`.
    pub separation_lower_bound: Dyadic,
    pub branch: WitnessBranch,
    pub source: WitnessSource,
}

/// Smallest depth `n` whose proximity limit is strictly below `bound`.
fn depth_below(kind: Kind, bound: &Dyadic) -> u64 {
    (0..)
        .find(|&n| proximity_limit(kind, n, 0) < *bound)
        .unwrap_or(0)
}

/// Finds `u` with `d(u, r) < delta` and a time after which the orbits of
/// `u` and `r` are at least `ε₀` apart (`ε₀/2` off the orbit).
///
/// Points on the orbit of the designated point use the transported
/// certificate first and fall back to a direct scan for returns of `r`.
/// Other points go through a nearby orbit point `r_m`: either `r_m` itself
/// separates from `r` by `ε₀/2`, or a return of `r_m` does.
pub fn sensitivity_witness(
    sys: &ShiftSystem,
    r: &ShiftedStream,
    delta: &Dyadic,
    horizon: u64,
) -> Result<SensitivityWitness> {
    if !delta.is_positive() {
        return Err(domain("delta must be positive"));
    }
    if r.kind() != sys.kind() {
        return Err(Error::KindMismatch(r.kind().name(), sys.kind().name()));
    }
    if r.base().same_point(sys.point()) {
        on_trajectory(sys, r, delta, horizon)
    } else {
        limit_point(sys, r, delta, horizon)
    }
}

fn on_trajectory(
    sys: &ShiftSystem,
    r: &ShiftedStream,
    delta: &Dyadic,
    horizon: u64,
) -> Result<SensitivityWitness> {
    let eps = sys.epsilon0();
    if let Some(cert) = sys.certificate() {
        // σ^k moves τ to τ - k and inflates proximity by at most 2^|k|;
        // finish() re-checks the witness exactly, so no full transport here
        let k = r.offset() - &cert.shift;
        let slack = k.magnitude().to_i64().unwrap_or(i64::MAX).min(1 << 16);
        for e in &cert.entries {
            let zeta = &e.tau - &k;
            if !zeta.is_positive() || e.proximity_bound.scale_pow2(slack) >= *delta {
                continue;
            }
            let u = r.shift(&e.t)?;
            let found = finish(
                r,
                u,
                &zeta,
                delta,
                &eps,
                WitnessBranch::OnTrajectory,
                WitnessSource::Certificate,
            );
            if let Ok(w) = found {
                return Ok(w);
            }
        }
    }
    let n = depth_below(r.kind(), delta);
    let t = find_return_time_from(r, n, 1, Direction::Forward, horizon)?;
    let tau = find_separation_time(r, &t, 1, horizon)?;
    let u = r.shift(&t)?;
    finish(
        r,
        u,
        &tau,
        delta,
        &eps,
        WitnessBranch::OnTrajectory,
        WitnessSource::OrbitScan,
    )
}

fn limit_point(
    sys: &ShiftSystem,
    r: &ShiftedStream,
    delta: &Dyadic,
    horizon: u64,
) -> Result<SensitivityWitness> {
    let half_delta = delta.half();
    let half_eps = sys.epsilon0().half();
    let kind = r.kind();
    let n = depth_below(kind, &half_delta);
    // r_m on the orbit with d(r_m, r) < δ/2
    let eta = find_visit(sys.point(), r, n, horizon)?.ok_or_else(|| Error::NotFound {
        what: format!("orbit point within depth {n} of the target"),
        horizon,
    })?;
    let r_m = sys.point().shift(&eta)?;
    let s = find_return_time_from(&r_m, n, 1, Direction::Forward, horizon)?;
    let xi = find_separation_time(&r_m, &s, 1, horizon)?;
    let apart = metric_at_least(&r_m.shift(&xi)?, &r.shift(&xi)?, &half_eps)?;
    let u = if apart == Decision::Yes {
        r_m
    } else {
        r_m.shift(&s)?
    };
    finish(
        r,
        u,
        &xi,
        delta,
        &half_eps,
        WitnessBranch::LimitPoint,
        WitnessSource::OrbitScan,
    )
}

/// Verifies both inequalities exactly and packages the witness.
fn finish(
    r: &ShiftedStream,
    u: ShiftedStream,
    time: &BigInt,
    delta: &Dyadic,
    required: &Dyadic,
    branch: WitnessBranch,
    source: WitnessSource,
) -> Result<SensitivityWitness> {
    if !time.is_positive() {
        return Err(Error::Verification("witness time must be positive".into()));
    }
    if metric_at_least(&u, r, delta)? != Decision::No {
        return Err(Error::Verification("witness is not within delta".into()));
    }
    let far_u = u.shift(time)?;
    let far_r = r.shift(time)?;
    if metric_at_least(&far_u, &far_r, required)? != Decision::Yes {
        return Err(Error::Verification(format!(
            "separation at time {time} below {required}"
        )));
    }
    let near = tight_upper(&u, r, delta)?;
    let lower = metric(&far_u, &far_r, 32)?
        .partial_sum
        .max(required.clone());
    Ok(SensitivityWitness {
        base: r.clone(),
        perturbed: u,
        delta: delta.clone(),
        distance_upper: near,
        time: time.clone(),
        separation_lower_bound: lower,
        branch,
        source,
    })
}

/// An upper bound on `d(u, r)` that is already below `delta`.
fn tight_upper(u: &ShiftedStream, r: &ShiftedStream, delta: &Dyadic) -> Result<Dyadic> {
    for radius in [16u64, 64, 256, 1024, 4096] {
        let up = metric(u, r, radius)?.upper();
        if up < *delta {
            return Ok(up);
        }
    }
    Err(Error::Verification(
        "no window bounds the distance below delta".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::DEFAULT_HORIZON;
    use crate::star;
    use crate::symbolic::Symbol;

    fn system(kind: Kind) -> ShiftSystem {
        ShiftSystem::new(star::star(kind), 64)
            .with_certificate(8, DEFAULT_HORIZON)
            .unwrap()
    }

    #[test]
    fn star_itself_uses_certificate() {
        let sys = system(Kind::OneSided);
        let r = sys.orbit_point(0).unwrap();
        let w = sensitivity_witness(&sys, &r, &Dyadic::pow2_neg(5), DEFAULT_HORIZON).unwrap();
        assert_eq!(w.source, WitnessSource::Certificate);
        assert_eq!(w.branch, WitnessBranch::OnTrajectory);
        // first certificate entry with 2^-n < 2^-5 is n = 6
        let t6 = &sys.certificate().unwrap().entries[5].t;
        assert_eq!(w.perturbed.offset(), t6);
        assert!(w.separation_lower_bound >= Dyadic::from_int(1));
    }

    #[test]
    fn shifted_point_and_large_delta() {
        let sys = system(Kind::OneSided);
        let r = sys.orbit_point(3).unwrap();
        let w = sensitivity_witness(&sys, &r, &Dyadic::pow2_neg(4), DEFAULT_HORIZON).unwrap();
        assert!(w.separation_lower_bound >= Dyadic::from_int(1));
        let w = sensitivity_witness(&sys, &r, &Dyadic::from_int(2), DEFAULT_HORIZON).unwrap();
        assert!(w.separation_lower_bound >= Dyadic::from_int(1));
    }

    #[test]
    fn limit_point_branch() {
        let sys = system(Kind::OneSided);
        let zeros = SymbolStream::constant(Kind::OneSided, Symbol::Zero)
            .shift_by(0)
            .unwrap();
        let w = sensitivity_witness(&sys, &zeros, &Dyadic::pow2_neg(4), DEFAULT_HORIZON).unwrap();
        assert_eq!(w.branch, WitnessBranch::LimitPoint);
        assert!(w.distance_upper < Dyadic::pow2_neg(4));
        assert!(w.separation_lower_bound >= Dyadic::pow2_neg(1));
    }

    #[test]
    fn bi_infinite_witness() {
        let sys = system(Kind::BiInfinite);
        let r = sys.orbit_point(-7).unwrap();
        let w = sensitivity_witness(&sys, &r, &Dyadic::pow2_neg(3), DEFAULT_HORIZON).unwrap();
        assert!(w.separation_lower_bound >= Dyadic::from_int(1));
        assert!(w.distance_upper < Dyadic::pow2_neg(3));
    }

    #[test]
    fn distance_axioms_on_samples() {
        let sys = system(Kind::BiInfinite);
        for (a, b) in [(0i64, 5i64), (-3, 17), (40, 2)] {
            let x = sys.orbit_point(a).unwrap();
            let y = sys.orbit_point(b).unwrap();
            assert_eq!(sys.distance(&x, &y).unwrap(), sys.distance(&y, &x).unwrap());
            assert!(sys.distance(&x, &x).unwrap().partial_sum.is_zero());
            let stepped = sys.iterate(&x, 4).unwrap();
            assert_eq!(stepped.offset(), &BigInt::from(a + 4));
            let back = sys.inverse_step(&stepped).unwrap().unwrap();
            assert_eq!(back.offset(), &BigInt::from(a + 3));
        }
    }
}
