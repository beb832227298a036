use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use updyn_core::certify::{
    bi_infinite_canonical_bound, certify_poisson, certify_unpredictable, density_check,
    one_sided_canonical_bound, sensitivity_witness, DensityStrategy, Direction, ReturnMode,
    ShiftSystem, UnpredictabilityCertificate, WitnessBranch, WitnessSource, DEFAULT_HORIZON,
};
use updyn_core::conjugacy::{
    region_check, DottedWord, HenonSystem, HorseshoeItinerary, HorseshoeSystem, Interval,
    IntervalBox, Itinerary, LogisticSystem,
};
use updyn_core::star;
use updyn_core::symbolic::{Dyadic, FiniteWord, Kind, Sequence};

use crate::args::{
    Cli, Command, Format, GlobalOpts, HorseshoeAction, LogisticAction, Mode, Sign, Space, Strategy,
};
use crate::report::ReportDocument;
use crate::{CliError, Outcome, Output};

type Res<T> = Result<T, CliError>;

const MAX_N: u64 = 16;
const MAX_WINDOW: usize = 14;
const MAX_GEN: u64 = 1 << 20;
const MAX_HENON_STEPS: usize = 64;

pub fn execute(cli: &Cli) -> Res<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen {
            space,
            start,
            count,
            blocks,
        } => gen(g, pick_space(g, Some(*space))?, start, *count, *blocks),
        Command::Certify {
            space,
            n_max,
            mode,
            format,
        } => certify(
            g,
            pick_space(g, *space)?,
            pick(n_max, &g.n_max, "n-max")?.ok_or_else(|| usage("certify needs n_max"))?,
            pick(mode, &g.mode, "mode")?.unwrap_or(Mode::Minimal),
            pick(format, &g.format, "format")?.unwrap_or(Format::Json),
        ),
        Command::Density {
            space,
            length,
            strategy,
        } => density(g, pick_space(g, Some(*space))?, *length, *strategy),
        Command::Poisson {
            space,
            direction,
            n_max,
            format,
        } => poisson(
            g,
            pick_space(g, *space)?,
            *direction,
            pick(n_max, &g.n_max, "n-max")?.ok_or_else(|| usage("poisson needs n_max"))?,
            pick(format, &g.format, "format")?.unwrap_or(Format::Json),
        ),
        Command::Sensitivity {
            space,
            delta_exponent,
            samples,
        } => sensitivity(g, pick_space(g, Some(*space))?, *delta_exponent, *samples),
        Command::Logistic { action } => logistic(g, action),
        Command::Henon {
            alpha,
            beta,
            steps,
            x,
            y,
        } => henon(g, alpha, beta, *steps, x, y),
        Command::Horseshoe {
            lambda,
            expansion,
            action,
        } => horseshoe(lambda, expansion, action),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A positional value, or the same setting given as a flag. Both at once
/// must agree.
fn pick<T: Copy + PartialEq + std::fmt::Debug>(
    positional: &Option<T>,
    flag: &Option<T>,
    name: &str,
) -> Res<Option<T>> {
    match (positional, flag) {
        (Some(a), Some(b)) if a != b => Err(usage(format!(
            "conflicting {name}: {a:?} and --{name} {b:?}"
        ))),
        (Some(a), _) => Ok(Some(*a)),
        (None, b) => Ok(*b),
    }
}

fn pick_space(g: &GlobalOpts, positional: Option<Space>) -> Res<Kind> {
    let space = pick(&positional, &g.space, "space")?.unwrap_or(Space::OneSided);
    Ok(match space {
        Space::OneSided => Kind::OneSided,
        Space::BiInfinite => Kind::BiInfinite,
    })
}

fn guard(g: &GlobalOpts, what: &str, value: u64, limit: u64) -> Res<()> {
    if value > limit && !g.unsafe_limits {
        return Err(usage(format!(
            "{what} {value} exceeds the cap {limit}; pass --unsafe-limits to override"
        )));
    }
    Ok(())
}

fn horizon(g: &GlobalOpts) -> Res<u64> {
    let h = g.horizon.unwrap_or(DEFAULT_HORIZON);
    guard(g, "horizon", h, DEFAULT_HORIZON)?;
    if h == 0 {
        return Err(usage("horizon must be positive"));
    }
    Ok(h)
}

fn parse_rational(text: &str) -> Res<BigRational> {
    let t = text.trim();
    let bad = || usage(format!("not a rational number: {text:?}"));
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let value = BigRational::new(int * &scale + frac, scale);
        return Ok(if negative { -value } else { value });
    }
    t.parse().map_err(|_| bad())
}

fn parse_word(text: &str) -> Res<FiniteWord> {
    Ok(text.trim_matches('"').parse()?)
}

fn space_name(kind: Kind) -> &'static str {
    kind.name()
}

fn interval_json(i: &Interval) -> Value {
    json!({
        "lo": i.lo().to_string(),
        "hi": i.hi().to_string(),
        "width": i.width().to_string(),
        "width_approx": approx(&i.width()),
    })
}

fn box_json(b: &IntervalBox) -> Value {
    json!({ "x": interval_json(&b.x), "y": interval_json(&b.y) })
}

/// Decimal approximation for readers; never used for decisions.
fn approx(q: &BigRational) -> String {
    format!("{:.6e}", q.to_f64().unwrap_or(f64::NAN))
}

fn report(doc: ReportDocument, results: Value, passed: bool) -> Outcome {
    let mut doc = doc;
    doc.results = results;
    Outcome {
        output: Output::Report(doc),
        passed,
    }
}

// ---- gen -------------------------------------------------------------------

fn gen(g: &GlobalOpts, kind: Kind, start: &BigInt, count: u64, blocks: bool) -> Res<Outcome> {
    if count == 0 {
        return Err(usage("count must be at least 1"));
    }
    guard(g, "count", count, MAX_GEN)?;
    if kind == Kind::OneSided && start.is_negative() {
        return Err(usage("one-sided sequences start at index 0"));
    }
    let s = star::star(kind);
    let mut symbols = String::with_capacity(count as usize);
    let mut annotated = String::new();
    for k in 0..count {
        let i = start + BigInt::from(k);
        let c = s.symbol_at(&i)?.as_char();
        symbols.push(c);
        if kind == Kind::BiInfinite && i.is_zero() {
            annotated.push('.');
        } else if blocks && k > 0 && is_block_start(kind, &i)? {
            annotated.push('|');
        }
        annotated.push(c);
    }
    let dot = (kind == Kind::BiInfinite)
        .then(|| -start)
        .filter(|d| !d.is_negative() && *d < BigInt::from(count));
    if kind == Kind::BiInfinite && dot.is_none() && !blocks {
        annotated = symbols.clone();
    }
    match g.format.unwrap_or(Format::Text) {
        Format::Text => Ok(Outcome {
            output: Output::Text(annotated),
            passed: true,
        }),
        Format::Json => {
            let doc = ReportDocument::new("gen")
                .param("space", space_name(kind))
                .param("start", start)
                .param("count", count);
            let results = json!({
                "offset": start.to_string(),
                "symbols": symbols,
                "dot_position": dot.map(|d| d.to_string()),
                "rendered": annotated,
            });
            Ok(report(doc, results, true))
        }
        Format::Csv => Err(usage("gen supports text or json output")),
    }
}

/// Whether a block of `s*` begins at index `i`.
fn is_block_start(kind: Kind, i: &BigInt) -> Res<bool> {
    let right_start = |m: u64| -> Res<BigInt> {
        Ok(match kind {
            Kind::OneSided => star::one_sided_segment_start(m)?,
            Kind::BiInfinite => star::bi_segment_start_right(m)?,
        })
    };
    if !i.is_negative() {
        let mut m = 1u64;
        while right_start(m + 1)? <= *i {
            m += 1;
        }
        return Ok(((i - right_start(m)?) % BigInt::from(m)).is_zero());
    }
    // left segments: length m spans [left(m), left(m-1)), left(1) = 0
    let mut m = 2u64;
    while star::bi_segment_start_left(m)? > *i {
        m += 1;
    }
    Ok(((i - star::bi_segment_start_left(m)?) % BigInt::from(m)).is_zero())
}

// ---- certificates ----------------------------------------------------------

fn canonical_bound(kind: Kind, n: u64) -> BigInt {
    match kind {
        Kind::OneSided => one_sided_canonical_bound(n),
        Kind::BiInfinite => bi_infinite_canonical_bound(n),
    }
}

fn certify(g: &GlobalOpts, kind: Kind, n_max: u64, mode: Mode, format: Format) -> Res<Outcome> {
    if n_max == 0 {
        return Err(usage("n_max must be at least 1"));
    }
    guard(g, "n_max", n_max, MAX_N)?;
    let h = horizon(g)?;
    let mode = match mode {
        Mode::Minimal => ReturnMode::Minimal,
        Mode::Canonical => ReturnMode::Canonical,
    };
    let s = star::star(kind);
    let cert = certify_unpredictable(&s, n_max, mode, h)?;
    let verified = cert.verify(&s).is_ok();
    let bounds_ok = mode == ReturnMode::Minimal
        || cert
            .entries
            .iter()
            .all(|e| e.t >= canonical_bound(kind, e.n));
    let passed = verified && bounds_ok;
    match format {
        Format::Csv => Ok(Outcome {
            output: Output::Csv(certificate_csv(&cert)?),
            passed,
        }),
        Format::Text => Err(usage("certify supports json or csv output")),
        Format::Json => {
            let doc = ReportDocument::new("certify")
                .param("space", space_name(kind))
                .param("n_max", n_max)
                .param("mode", mode.name())
                .param("horizon", h);
            let mut results = certificate_json(&cert);
            results["verified"] = json!(verified);
            if mode == ReturnMode::Canonical {
                results["canonical_bounds_hold"] = json!(bounds_ok);
                for (row, e) in results["entries"]
                    .as_array_mut()
                    .expect("entries array")
                    .iter_mut()
                    .zip(&cert.entries)
                {
                    row["canonical_lower_bound"] = json!(canonical_bound(kind, e.n).to_string());
                }
            }
            Ok(report(doc, results, passed))
        }
    }
}

pub(crate) fn certificate_json(cert: &UnpredictabilityCertificate) -> Value {
    json!({
        "kind": cert.kind.name(),
        "subject": cert.subject,
        "shift": cert.shift.to_string(),
        "epsilon0": cert.epsilon0.to_string(),
        "mode": cert.mode.name(),
        "entries": cert.entries.iter().map(|e| json!({
            "n": e.n,
            "t": e.t.to_string(),
            "tau": e.tau.to_string(),
            "proximity_bound": e.proximity_bound.to_string(),
            "proximity_limit": cert.proximity_limit(e.n).to_string(),
            "separation_verified": e.separation_verified,
        })).collect::<Vec<_>>(),
    })
}

fn certificate_csv(cert: &UnpredictabilityCertificate) -> Res<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "t_n", "tau_n", "proximity_bound"])?;
    for e in &cert.entries {
        w.write_record([
            e.n.to_string(),
            e.t.to_string(),
            e.tau.to_string(),
            e.proximity_bound.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn poisson(g: &GlobalOpts, kind: Kind, sign: Sign, n_max: u64, format: Format) -> Res<Outcome> {
    if n_max == 0 {
        return Err(usage("n_max must be at least 1"));
    }
    guard(g, "n_max", n_max, MAX_N)?;
    let h = horizon(g)?;
    let dir = match sign {
        Sign::Positive => Direction::Forward,
        Sign::Negative => Direction::Backward,
    };
    if dir == Direction::Backward && kind == Kind::OneSided {
        return Err(usage("negative times need the bi-infinite space"));
    }
    let entries = certify_poisson(&star::star(kind), dir, n_max, h)?;
    if format == Format::Csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "t_n", "proximity_bound"])?;
        for e in &entries {
            w.write_record([
                e.n.to_string(),
                e.t.to_string(),
                e.proximity_bound.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        return Ok(Outcome {
            output: Output::Csv(String::from_utf8(bytes).expect("utf-8")),
            passed: true,
        });
    }
    let doc = ReportDocument::new("poisson")
        .param("space", space_name(kind))
        .param(
            "direction",
            if dir == Direction::Forward {
                "positive"
            } else {
                "negative"
            },
        )
        .param("n_max", n_max)
        .param("horizon", h);
    let results = json!({
        "entries": entries.iter().map(|e| json!({
            "n": e.n,
            "t": e.t.to_string(),
            "proximity_bound": e.proximity_bound.to_string(),
        })).collect::<Vec<_>>(),
    });
    Ok(report(doc, results, true))
}

fn density(g: &GlobalOpts, kind: Kind, length: usize, strategy: Strategy) -> Res<Outcome> {
    guard(g, "window length", length as u64, MAX_WINDOW as u64)?;
    let strat = match strategy {
        Strategy::Block => DensityStrategy::BlockPosition,
        Strategy::Scan => DensityStrategy::Scan {
            horizon: horizon(g)?,
        },
    };
    let r = density_check(&star::star(kind), length, strat)?;
    let doc = ReportDocument::new("density")
        .param("space", space_name(kind))
        .param("length", length)
        .param("strategy", format!("{strategy:?}").to_lowercase());
    let results = json!({
        "patterns": 1u64 << length,
        "found": r.hits.len(),
        "complete": r.complete(),
        "hits": r.hits.iter().map(|h| json!({
            "pattern": h.pattern.to_string(),
            "shift": h.shift.to_string(),
        })).collect::<Vec<_>>(),
        "missing": r.missing.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    });
    Ok(report(doc, results, r.complete()))
}

/// Orbit offsets 0, 1, 2, ... one-sided and 0, 1, -1, 2, -2, ... otherwise.
fn sample_offsets(kind: Kind, samples: u64) -> Vec<i64> {
    (0..samples as i64)
        .map(|k| match kind {
            Kind::OneSided => k,
            Kind::BiInfinite if k % 2 == 1 => (k + 1) / 2,
            Kind::BiInfinite => -(k / 2),
        })
        .collect()
}

fn sensitivity(g: &GlobalOpts, kind: Kind, exponent: u32, samples: u64) -> Res<Outcome> {
    if samples == 0 {
        return Err(usage("samples must be at least 1"));
    }
    guard(g, "delta exponent", exponent as u64, MAX_N)?;
    guard(g, "samples", samples, 256)?;
    let h = horizon(g)?;
    let delta = Dyadic::pow2_neg(exponent as u64);
    let offsets = sample_offsets(kind, samples);
    // transport to σ^k costs 2^|k| in proximity, so go that much deeper;
    // canonical times need no search
    let reach = offsets.iter().map(|k| k.unsigned_abs()).max().unwrap_or(0);
    let depth = exponent as u64 + 2 + reach;
    let base = ShiftSystem::new(star::star(kind), 64);
    let sys = base
        .clone()
        .with_certificate_mode(depth, ReturnMode::Canonical, h)
        .or_else(|_| base.clone().with_certificate(exponent as u64 + 2, h))
        .unwrap_or(base);
    let mut rows = Vec::new();
    let mut all_ok = true;
    for k in offsets {
        let r = sys.orbit_point(k)?;
        let w = sensitivity_witness(&sys, &r, &delta, h)?;
        let ok = w.separation_lower_bound >= sys.epsilon0();
        all_ok &= ok;
        rows.push(json!({
            "point_shift": k.to_string(),
            "perturbed_shift": w.perturbed.offset().to_string(),
            "distance_upper": w.distance_upper.to_string(),
            "time": w.time.to_string(),
            "separation_lower_bound": w.separation_lower_bound.to_string(),
            "branch": match w.branch {
                WitnessBranch::OnTrajectory => "on-trajectory",
                WitnessBranch::LimitPoint => "limit-point",
            },
            "source": match w.source {
                WitnessSource::Certificate => "certificate",
                WitnessSource::OrbitScan => "orbit-scan",
            },
            "separated_by_epsilon0": ok,
        }));
    }
    let doc = ReportDocument::new("sensitivity")
        .param("space", space_name(kind))
        .param("delta", &delta)
        .param("samples", samples)
        .param("horizon", h);
    let results = json!({
        "certificate_depth": sys.certificate().map(|c| c.entries.len()),
        "epsilon0": sys.epsilon0().to_string(),
        "witnesses": rows,
        "all_separated": all_ok,
    });
    Ok(report(doc, results, all_ok))
}

// ---- conjugate models ------------------------------------------------------

fn logistic_system(g: &GlobalOpts, mu: &str) -> Res<LogisticSystem> {
    Ok(LogisticSystem::with_precision(
        parse_rational(mu)?,
        g.precision,
    )?)
}

fn itinerary_json(it: &Itinerary) -> Value {
    match it {
        Itinerary::Word(w) => json!({ "decided": true, "word": w.to_string() }),
        Itinerary::Undecided { step, prefix } => json!({
            "decided": false,
            "undecided_at_step": step,
            "prefix": prefix.to_string(),
        }),
    }
}

fn logistic(g: &GlobalOpts, action: &LogisticAction) -> Res<Outcome> {
    match action {
        LogisticAction::Itinerary { mu, lo, length, hi } => {
            let sys = logistic_system(g, mu)?;
            guard(g, "itinerary length", *length as u64, 4096)?;
            let lo_q = parse_rational(lo)?;
            let hi_q = match hi {
                Some(h) => parse_rational(h)?,
                None => lo_q.clone(),
            };
            let x = Interval::new(lo_q, hi_q)?;
            let it = sys.itinerary(&x, *length)?;
            let doc = ReportDocument::new("logistic itinerary")
                .param("mu", sys.mu())
                .param("x", &x)
                .param("length", length);
            let results = json!({ "box": interval_json(&x), "itinerary": itinerary_json(&it) });
            Ok(report(doc, results, true))
        }
        LogisticAction::Point { mu, word } => {
            let sys = logistic_system(g, mu)?;
            let w = parse_word(word)?;
            guard(g, "word length", w.len() as u64, MAX_WINDOW as u64)?;
            let inner = sys.point_for(&w)?;
            let hull = sys.cylinder_hull(&w)?;
            let it = sys.itinerary(&inner, w.len())?;
            let ok = it.word() == Some(&w);
            let doc = ReportDocument::new("logistic point")
                .param("mu", sys.mu())
                .param("word", &w)
                .param("precision", sys.precision_bits());
            let results = json!({
                "inner": interval_json(&inner),
                "hull": interval_json(&hull),
                "itinerary_of_inner": itinerary_json(&it),
                "round_trip": ok,
            });
            Ok(report(doc, results, ok))
        }
        LogisticAction::Transport { mu, depth } => {
            let sys = logistic_system(g, mu)?;
            guard(g, "depth", *depth as u64, MAX_WINDOW as u64)?;
            let hull = sys.transport_unpredictable_point(*depth)?;
            let prefix = star::one_sided().window(0, *depth)?;
            let inner = sys.point_for(&prefix)?;
            let doc = ReportDocument::new("logistic transport")
                .param("mu", sys.mu())
                .param("depth", depth)
                .param("precision", sys.precision_bits());
            let results = json!({
                "prefix": prefix.to_string(),
                "enclosure": interval_json(&hull),
                "inner": interval_json(&inner),
            });
            Ok(report(doc, results, true))
        }
        LogisticAction::Commute {
            mu,
            length,
            samples,
            seed,
        } => {
            let sys = logistic_system(g, mu)?;
            guard(g, "word length", *length as u64, MAX_WINDOW as u64)?;
            guard(g, "samples", *samples as u64, 10_000)?;
            let r = sys.commutation_check(*length, *samples, *seed)?;
            let doc = ReportDocument::new("logistic commute")
                .param("mu", sys.mu())
                .param("length", length)
                .param("samples", samples)
                .param("seed", seed);
            let results = json!({
                "checked": r.checked,
                "passed": r.passed(),
                "failures": r.failures.iter().map(|f| json!({
                    "word": f.word.to_string(),
                    "expected": f.expected.to_string(),
                    "observed": itinerary_json(&f.observed),
                })).collect::<Vec<_>>(),
            });
            Ok(report(doc, results, r.passed()))
        }
    }
}

fn henon(g: &GlobalOpts, alpha: &str, beta: &str, steps: usize, x: &str, y: &str) -> Res<Outcome> {
    guard(g, "steps", steps as u64, MAX_HENON_STEPS as u64)?;
    let alpha = parse_rational(alpha)?;
    let beta = parse_rational(beta)?;
    let region_ok = region_check(&alpha, &beta)?;
    let sys = HenonSystem::new(alpha.clone(), beta.clone())?;
    // iterates beyond this square are left alone: they grow doubly
    // exponentially and carry no information about the invariant set
    let bound = BigRational::from_integer(1.into()) + beta.abs() + alpha.abs();
    let mut p = IntervalBox::point(parse_rational(x)?, parse_rational(y)?);
    let mut orbit = vec![box_json(&p)];
    let mut left_at = None;
    for k in 1..=steps {
        p = sys.step(&p);
        orbit.push(box_json(&p));
        let outside = |i: &Interval| i.lo() > &bound || i.hi() < &-&bound;
        if outside(&p.x) || outside(&p.y) {
            left_at = Some(k);
            break;
        }
    }
    let doc = ReportDocument::new("henon")
        .param("alpha", &alpha)
        .param("beta", &beta)
        .param("steps", steps);
    let mut results = json!({
        "region_ok": region_ok,
        "square_bound": bound.to_string(),
        "orbit": orbit,
        "left_square_at_step": left_at,
    });
    if !region_ok {
        results["warning"] =
            json!("parameters lie outside the horseshoe region; iteration shown anyway");
    }
    Ok(report(doc, results, true))
}

fn horseshoe(lambda: &str, expansion: &str, action: &HorseshoeAction) -> Res<Outcome> {
    let sys = HorseshoeSystem::new(parse_rational(lambda)?, parse_rational(expansion)?)?;
    let doc = ReportDocument::new("horseshoe")
        .param("lambda", sys.contraction())
        .param("expansion", sys.expansion());
    let check_center = |word: &DottedWord, b: &IntervalBox| {
        let (cx, cy) = b.center();
        sys.itinerary(
            &IntervalBox::point(cx, cy),
            word.past.len(),
            word.future.len(),
        ) == HorseshoeItinerary::Word(word.clone())
    };
    match action {
        HorseshoeAction::Box { word } => {
            let w: DottedWord = word.parse()?;
            let b = sys.box_for(&w);
            let ok = check_center(&w, &b);
            let results =
                json!({ "word": w.to_string(), "box": box_json(&b), "center_round_trip": ok });
            Ok(report(doc.param("word", &w), results, ok))
        }
        HorseshoeAction::Itinerary { x, y, past, future } => {
            let p = IntervalBox::point(parse_rational(x)?, parse_rational(y)?);
            let it = match sys.itinerary(&p, *past, *future) {
                HorseshoeItinerary::Word(w) => json!({ "decided": true, "word": w.to_string() }),
                HorseshoeItinerary::Undecided { index } => {
                    json!({ "decided": false, "undecided_at_index": index })
                }
            };
            let doc = doc
                .param("point", &p)
                .param("past", past)
                .param("future", future);
            Ok(report(doc, json!({ "itinerary": it }), true))
        }
        HorseshoeAction::Star { radius } => {
            let w = DottedWord::central(&star::bi_infinite(), *radius)?;
            let b = sys.box_for(&w);
            let ok = check_center(&w, &b);
            let results =
                json!({ "word": w.to_string(), "box": box_json(&b), "center_round_trip": ok });
            Ok(report(doc.param("radius", radius), results, ok))
        }
    }
}
