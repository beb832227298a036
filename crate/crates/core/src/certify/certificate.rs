//! Unpredictability certificates and their transport along the orbit.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::returns::{
    canonical_return_time, ensure_positive_time, find_return_time_from, find_separation_time,
    ReturnMode,
};
use super::scan::Direction;
use crate::symbolic::{
    metric, metric_at_least, Decision, Dyadic, Kind, Sequence, ShiftedStream, SymbolStream,
};
use crate::{Error, Result};

/// One verified pair `(t_n, τ_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub n: u64,
    pub t: BigInt,
    pub tau: BigInt,
    /// Upper end of the exact enclosure of `d(σ^t(p), p)`.
    pub proximity_bound: Dyadic,
    pub separation_verified: bool,
}

/// Finite evidence that `σ^shift(base)` is unpredictable: returns `t_n`
/// approaching the point and times `τ_n` after which the returned orbit is
/// at least `epsilon0` away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnpredictabilityCertificate {
    pub epsilon0: Dyadic,
    pub kind: Kind,
    pub subject: String,
    /// The certified point is `σ^shift` of the base stream.
    pub shift: BigInt,
    /// Shift steps this certificate was transported across; each one
    /// loosens the proximity limit by a factor 2.
    pub transport_steps: u64,
    pub mode: ReturnMode,
    pub entries: Vec<CertificateEntry>,
}

impl UnpredictabilityCertificate {
    /// Largest admissible proximity bound for depth `n`. Transport by `k`
    /// costs a factor `2^k`, the Lipschitz constant of `σ^k`.
    pub fn proximity_limit(&self, n: u64) -> Dyadic {
        proximity_limit(
            self.kind,
            n,
            self.transport_steps.min(i64::MAX as u64) as i64,
        )
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Recomputes every entry against `base` with the exact metric.
    pub fn verify(&self, base: &SymbolStream) -> Result<()> {
        let subject = base.shift(&self.shift)?;
        let mut prev: Option<&CertificateEntry> = None;
        for e in &self.entries {
            if let Some(p) = prev {
                if e.t <= p.t || e.tau <= p.tau {
                    return Err(Error::Verification(format!(
                        "times not strictly increasing at n = {}",
                        e.n
                    )));
                }
            }
            let (bound, separated) = check_entry(&subject, e.n, &e.t, &e.tau, &self.epsilon0)?;
            if bound != e.proximity_bound {
                return Err(Error::Verification(format!(
                    "proximity bound at n = {} recomputes to {bound}",
                    e.n
                )));
            }
            if bound > self.proximity_limit(e.n) {
                return Err(Error::Verification(format!(
                    "proximity bound {bound} exceeds {} at n = {}",
                    self.proximity_limit(e.n),
                    e.n
                )));
            }
            if !separated || !e.separation_verified {
                return Err(Error::Verification(format!(
                    "separation fails at n = {}",
                    e.n
                )));
            }
            prev = Some(e);
        }
        Ok(())
    }
}

/// `2^-(n - k)` one-sided, `2^-(n - 1 - k)` bi-infinite.
pub(crate) fn proximity_limit(kind: Kind, n: u64, k: i64) -> Dyadic {
    let slack = match kind {
        Kind::OneSided => 0,
        Kind::BiInfinite => 1,
    };
    Dyadic::from_int(1).scale_pow2(k.saturating_add(slack) - n as i64)
}

/// Proximity bound of `σ^t(q)` to `q` at window radius `n`, and whether
/// `d(σ^(t+τ)(q), σ^τ(q)) >= epsilon0` is decided true.
fn check_entry(
    q: &ShiftedStream,
    n: u64,
    t: &BigInt,
    tau: &BigInt,
    epsilon0: &Dyadic,
) -> Result<(Dyadic, bool)> {
    ensure_positive_time(t)?;
    ensure_positive_time(tau)?;
    let returned = q.shift(t)?;
    let bound = metric(&returned, q, n)?.upper();
    let far = returned.shift(tau)?;
    let near = q.shift(tau)?;
    let separated = metric_at_least(&far, &near, epsilon0)? == Decision::Yes;
    Ok((bound, separated))
}

/// Builds and verifies a certificate with entries `n = 1..=n_max` for `s`
/// with `ε₀ = 1`.
///
/// Minimal times restart each search at `t_(n-1) + 1`, and `τ_n` is the
/// least mismatch time at or beyond `max(n + 1, τ_(n-1) + 1)`, so both
/// sequences are strictly increasing.
pub fn certify_unpredictable<S: Sequence + ?Sized>(
    s: &S,
    n_max: u64,
    mode: ReturnMode,
    horizon: u64,
) -> Result<UnpredictabilityCertificate> {
    if n_max < 1 {
        return Err(crate::error::domain("n_max must be at least 1"));
    }
    let view = s.view();
    let epsilon0 = Dyadic::from_int(1);
    let kind = s.kind();
    let mut entries: Vec<CertificateEntry> = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let prev_t = entries.last().map(|e| e.t.clone()).unwrap_or_default();
        let t = match mode {
            ReturnMode::Minimal => {
                let from = prev_t.to_i64().unwrap_or(i64::MAX - 1) + 1;
                find_return_time_from(&view, n, from, Direction::Forward, horizon)?
            }
            ReturnMode::Canonical => canonical_return_time(&view, n, Direction::Forward)?,
        };
        if t <= prev_t {
            return Err(Error::Verification(format!(
                "t_{n} = {t} does not increase"
            )));
        }
        let prev_tau = entries
            .last()
            .map(|e| e.tau.to_u64().unwrap_or(u64::MAX))
            .unwrap_or(0);
        let min_tau = (n + 1).max(prev_tau + 1);
        let tau = find_separation_time(&view, &t, min_tau, horizon)?;
        let (bound, separated) = check_entry(&view, n, &t, &tau, &epsilon0)?;
        if bound > proximity_limit(kind, n, 0) || !separated {
            return Err(Error::Verification(format!(
                "entry n = {n} failed re-check"
            )));
        }
        entries.push(CertificateEntry {
            n,
            t,
            tau,
            proximity_bound: bound,
            separation_verified: separated,
        });
    }
    Ok(UnpredictabilityCertificate {
        epsilon0,
        kind,
        subject: view.base().description().to_string(),
        shift: view.offset().clone(),
        transport_steps: 0,
        mode,
        entries,
    })
}

/// Carries a certificate for `p` to `σ^k(p)`: the same `t_n` and `ε₀`,
/// separation times `ζ_n = τ_n - k` for entries with `τ_n > k`, every entry
/// recomputed on the new point.
pub fn transport_certificate(
    base: &SymbolStream,
    cert: &UnpredictabilityCertificate,
    k: u64,
) -> Result<UnpredictabilityCertificate> {
    transport_by(base, cert, BigInt::from(k))
}

/// Carries a certificate for a bi-infinite `p` to `σ^-k(p)`. Every entry
/// survives, with `ζ_n = τ_n + k`.
pub fn transport_certificate_backward(
    base: &SymbolStream,
    cert: &UnpredictabilityCertificate,
    k: u64,
) -> Result<UnpredictabilityCertificate> {
    if cert.kind != Kind::BiInfinite {
        return Err(crate::error::domain(
            "backward transport needs a bi-infinite point",
        ));
    }
    transport_by(base, cert, -BigInt::from(k))
}

fn transport_by(
    base: &SymbolStream,
    cert: &UnpredictabilityCertificate,
    k: BigInt,
) -> Result<UnpredictabilityCertificate> {
    let steps = k.magnitude().to_u64().unwrap_or(u64::MAX);
    let shift = &cert.shift + &k;
    let subject = base.shift(&shift)?;
    let mut entries = Vec::new();
    for e in cert.entries.iter().filter(|e| e.tau > k) {
        let zeta = &e.tau - &k;
        let (bound, separated) = check_entry(&subject, e.n, &e.t, &zeta, &cert.epsilon0)?;
        if !separated {
            return Err(Error::Verification(format!(
                "transported separation fails at n = {}",
                e.n
            )));
        }
        entries.push(CertificateEntry {
            n: e.n,
            t: e.t.clone(),
            tau: zeta,
            proximity_bound: bound,
            separation_verified: separated,
        });
    }
    if entries.is_empty() {
        return Err(Error::EmptyCertificate { shift: steps });
    }
    let out = UnpredictabilityCertificate {
        epsilon0: cert.epsilon0.clone(),
        kind: cert.kind,
        subject: cert.subject.clone(),
        shift,
        transport_steps: cert.transport_steps.saturating_add(steps),
        mode: cert.mode,
        entries,
    };
    out.verify(base)?;
    Ok(out)
}

/// Monotone return times certifying positive (or negative) Poisson
/// stability: each `t_n` brings the orbit within the depth-`n` bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonEntry {
    pub n: u64,
    pub t: BigInt,
    pub proximity_bound: Dyadic,
}

pub fn certify_poisson<S: Sequence + ?Sized>(
    s: &S,
    dir: Direction,
    n_max: u64,
    horizon: u64,
) -> Result<Vec<PoissonEntry>> {
    let view = s.view();
    let kind = s.kind();
    if dir == Direction::Backward && kind != Kind::BiInfinite {
        return Err(crate::error::domain(
            "negative Poisson stability needs a bi-infinite stream",
        ));
    }
    let mut out: Vec<PoissonEntry> = Vec::new();
    let mut from: i64 = match dir {
        Direction::Forward => 1,
        Direction::Backward => -1,
    };
    for n in 1..=n_max {
        let t = find_return_time_from(&view, n, from, dir, horizon)?;
        let ti = t
            .to_i64()
            .ok_or_else(|| Error::Verification("return time beyond machine range".into()))?;
        let bound = metric(&view.shift(&t)?, &view, n)?.upper();
        if bound > proximity_limit(kind, n, 0) {
            return Err(Error::Verification(format!("proximity fails at n = {n}")));
        }
        from = match dir {
            Direction::Forward => ti + 1,
            Direction::Backward => ti - 1,
        };
        out.push(PoissonEntry {
            n,
            t,
            proximity_bound: bound,
        });
    }
    debug_assert!(out.windows(2).all(|w| match dir {
        Direction::Forward => w[0].t < w[1].t,
        Direction::Backward => w[0].t > w[1].t && w[1].t.is_negative(),
    }));
    Ok(out)
}
