//! Command implementations behind the `symcap` binary: domain-spec JSON,
//! CSV/JSON emission, and stable exit codes.
//!
//! Exit codes: 0 success, 2 malformed input (JSON, rationals, profiles),
//! 3 method/domain mismatch, 4 empty window. Data goes to stdout,
//! diagnostics to stderr.

use crate::asymptotics::{
    conjecture_check, embedding_obstruction, error_term, polygonalize_power, Verdict,
};
use crate::bounds::{exponent_scan, BoxOracle, MembershipOracle, ToricOracle};
use crate::capacities::{capacity_sequence_threads, MethodChoice};
use crate::ech::{action, approx_index, ech_index, gap_check, parse_generator};
use crate::geom::{region_area, Domain, Point2, Polyline, ProfileKind, ToricProfile};
use crate::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::ruelle::{ruelle_integral, ProfileSide, SmoothProfile};
use crate::weights::{default_min_weight, weight_expansion, weight_sum, DEFAULT_MAX_TERMS};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use serde::Deserialize;
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_METHOD: i32 = 3;
pub const EXIT_EMPTY_WINDOW: i32 = 4;

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MethodMismatch(_) | Error::KindMismatch { .. } => EXIT_METHOD,
            _ => EXIT_PARSE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

pub type CliResult = std::result::Result<(), CliError>;

/// 17-significant-digit decimal, enough for a lossless f64 round-trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A rational in a spec file: `"p/q"`, a decimal string, or a JSON number.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Str(String),
    Num(f64),
}

impl RationalSpec {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalSpec::Str(s) => parse_rational(s),
            RationalSpec::Num(x) => Rational::from_float(*x)
                .ok_or_else(|| Error::Parse(format!("non-finite number {x}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum KindSpec {
    Concave,
    Convex,
}

impl From<KindSpec> for ProfileKind {
    fn from(k: KindSpec) -> ProfileKind {
        match k {
            KindSpec::Concave => ProfileKind::Concave,
            KindSpec::Convex => ProfileKind::Convex,
        }
    }
}

fn default_samples() -> usize {
    256
}

fn default_denominator() -> u64 {
    1 << 20
}

/// JSON description of a domain, as accepted by every subcommand.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DomainSpec {
    Ball {
        a: RationalSpec,
    },
    Ellipsoid {
        a: RationalSpec,
        b: RationalSpec,
    },
    Polydisk {
        a: RationalSpec,
        b: RationalSpec,
    },
    Toric {
        kind: KindSpec,
        vertices: Vec<(RationalSpec, RationalSpec)>,
    },
    Profile {
        family: String,
        kind: KindSpec,
        a: f64,
        b: f64,
        p: f64,
        #[serde(default = "default_samples")]
        samples: usize,
        #[serde(default = "default_denominator")]
        denominator: u64,
    },
    Union {
        parts: Vec<DomainSpec>,
    },
}

impl DomainSpec {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("domain spec: {e}")))
    }

    /// Materialize the exact domain; smooth profiles are polygonalized at
    /// their declared sample count and denominator.
    pub fn to_domain(&self) -> Result<Domain> {
        let domain = match self {
            DomainSpec::Ball { a } => Domain::Ball(a.to_rational()?),
            DomainSpec::Ellipsoid { a, b } => Domain::Ellipsoid(a.to_rational()?, b.to_rational()?),
            DomainSpec::Polydisk { a, b } => Domain::Polydisk(a.to_rational()?, b.to_rational()?),
            DomainSpec::Toric { kind, vertices } => {
                let points = vertices
                    .iter()
                    .map(|(x, y)| Ok(Point2::new(x.to_rational()?, y.to_rational()?)))
                    .collect::<Result<Vec<_>>>()?;
                Domain::Toric(ToricProfile::new((*kind).into(), Polyline::new(points)?)?)
            }
            DomainSpec::Profile {
                family,
                kind,
                a,
                b,
                p,
                samples,
                denominator,
            } => {
                if family != "power" {
                    return Err(Error::Parse(format!("unknown profile family {family:?}")));
                }
                Domain::Toric(polygonalize_power(
                    *a,
                    *b,
                    *p,
                    (*kind).into(),
                    *samples,
                    *denominator,
                )?)
            }
            DomainSpec::Union { parts } => {
                Domain::Union(parts.iter().map(|p| p.to_domain()).collect::<Result<_>>()?)
            }
        };
        domain.validate()?;
        Ok(domain)
    }

    /// The smooth curve behind a `profile` spec, for quadrature.
    pub fn smooth_profile(&self) -> Result<Option<SmoothProfile>> {
        match self {
            DomainSpec::Profile {
                family,
                kind,
                a,
                b,
                p,
                ..
            } => {
                if family != "power" {
                    return Err(Error::Parse(format!("unknown profile family {family:?}")));
                }
                let side = match kind {
                    KindSpec::Concave => ProfileSide::ConcaveDomain,
                    KindSpec::Convex => ProfileSide::ConvexDomain,
                };
                Ok(Some(SmoothProfile::power(*a, *b, *p, side)?))
            }
            _ => Ok(None),
        }
    }
}

fn parse_method(method: &str) -> Result<MethodChoice> {
    Ok(match method {
        "auto" => MethodChoice::Auto,
        "weights" => MethodChoice::Weights,
        "path" => MethodChoice::Path,
        "complement" => MethodChoice::Complement,
        "closed" => MethodChoice::Closed,
        other => return Err(Error::Parse(format!("unknown method {other:?}"))),
    })
}

/// Worker count: an explicit request, then `SYMCAP_THREADS`, then the
/// machine parallelism.
pub fn resolve_threads(requested: Option<usize>) -> usize {
    requested
        .or_else(|| {
            std::env::var("SYMCAP_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1)
}

/// `capacities`: the capacity table of a domain as CSV or JSON rows
/// `k, c_k, c_k_float, method, lower_bound_only`.
pub fn cmd_capacities(
    spec_json: &str,
    kmax: u64,
    method: &str,
    out_fmt: &str,
    threads: usize,
    out: &mut dyn Write,
) -> CliResult {
    let spec = DomainSpec::parse(spec_json)?;
    let domain = spec.to_domain()?;
    let choice = parse_method(method)?;
    let results = capacity_sequence_threads(&domain, kmax, choice, threads)?;
    match out_fmt {
        "csv" => {
            writeln!(out, "k,c_k,c_k_float,method,lower_bound_only")?;
            for r in &results {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.k,
                    format_rational(&r.value),
                    fmt_f64(to_f64(&r.value)),
                    r.method.as_str(),
                    r.lower_bound_only
                )?;
            }
        }
        "json" => {
            let rows: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "k": r.k,
                        "c_k": format_rational(&r.value),
                        "c_k_float": to_f64(&r.value),
                        "method": r.method.as_str(),
                        "lower_bound_only": r.lower_bound_only,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(rows))?;
        }
        other => return Err(Error::Parse(format!("unknown output format {other:?}")).into()),
    }
    Ok(())
}

/// `error-term`: CSV rows `k, c_k, e_k` plus a window summary line with the
/// toric target `-Ru/2` when available.
pub fn cmd_error_term(
    spec_json: &str,
    kmax: u64,
    window: f64,
    threads: usize,
    out: &mut dyn Write,
) -> CliResult {
    if kmax < 1 {
        return Err(CliError::new(
            EXIT_EMPTY_WINDOW,
            "kmax = 0 leaves an empty window",
        ));
    }
    let spec = DomainSpec::parse(spec_json)?;
    let domain = spec.to_domain()?;
    let vol = domain.volume();
    let results = capacity_sequence_threads(&domain, kmax, MethodChoice::Auto, threads)?;
    writeln!(out, "k,c_k,e_k")?;
    for r in &results {
        writeln!(
            out,
            "{},{},{}",
            r.k,
            format_rational(&r.value),
            fmt_f64(error_term(&r.value, r.k, &vol))
        )?;
    }
    let series = conjecture_check(&domain, kmax, window.clamp(f64::MIN_POSITIVE, 1.0))?;
    let target = match series.ruelle_half {
        Some(t) => fmt_f64(t),
        None => "na".to_string(),
    };
    writeln!(
        out,
        "# window k in [{},{}]: min={} max={} mean={} ruelle_half={}",
        series.window.k_lo,
        series.window.k_hi,
        fmt_f64(series.window.min),
        fmt_f64(series.window.max),
        fmt_f64(series.window.mean),
        target
    )?;
    Ok(())
}

/// `ruelle`: the closed form `a + b`, and for smooth profile specs also the
/// quadrature value and its residual.
pub fn cmd_ruelle(spec_json: &str, quadrature: usize, out: &mut dyn Write) -> CliResult {
    let spec = DomainSpec::parse(spec_json)?;
    let domain = spec.to_domain()?;
    let closed = domain.intercept_sum().ok_or(Error::MethodMismatch(
        "the Ruelle invariant needs a toric domain",
    ))?;
    writeln!(
        out,
        "ruelle_closed_form {} ({})",
        format_rational(&closed),
        fmt_f64(to_f64(&closed))
    )?;
    if let Some(smooth) = spec.smooth_profile()? {
        let quad = ruelle_integral(&smooth, quadrature)?;
        let exact = smooth.a() + smooth.b();
        writeln!(out, "ruelle_quadrature {}", fmt_f64(quad))?;
        writeln!(out, "ruelle_residual {}", fmt_f64((quad - exact).abs()))?;
    }
    Ok(())
}

fn spec_to_profile(spec: &DomainSpec) -> Result<ToricProfile> {
    match spec.to_domain()? {
        Domain::Toric(p) => Ok(p),
        Domain::Ball(a) => ToricProfile::triangle(&a, &a, ProfileKind::Concave),
        Domain::Ellipsoid(a, b) => ToricProfile::triangle(&a, &b, ProfileKind::Concave),
        Domain::Polydisk(a, b) => ToricProfile::rectangle(&a, &b),
        Domain::Union(_) => Err(Error::MethodMismatch("unions have no single toric profile")),
    }
}

/// `obstruct`: the volume-constrained embedding verdict together with both
/// intercept sums. The convergence hypotheses are recorded as asserted.
pub fn cmd_obstruct(
    source_json: &str,
    target_json: &str,
    area_tol: &str,
    out: &mut dyn Write,
) -> CliResult {
    let source = spec_to_profile(&DomainSpec::parse(source_json)?)?;
    let target = spec_to_profile(&DomainSpec::parse(target_json)?)?;
    let tol = parse_rational(area_tol)?;
    if tol.is_negative() {
        return Err(Error::Parse("area tolerance must be nonnegative".into()).into());
    }
    let verdict = embedding_obstruction(&source, &target, &tol);
    writeln!(
        out,
        "source_ab {}",
        format_rational(&(source.a() + source.b()))
    )?;
    writeln!(
        out,
        "target_ab {}",
        format_rational(&(target.a() + target.b()))
    )?;
    writeln!(
        out,
        "source_area {}",
        format_rational(&region_area(&source))
    )?;
    writeln!(
        out,
        "target_area {}",
        format_rational(&region_area(&target))
    )?;
    let v = match verdict {
        Verdict::Obstructed => "Obstructed",
        Verdict::NotObstructed => "NotObstructed",
        Verdict::VolumeMismatch => "VolumeMismatch",
    };
    writeln!(out, "verdict {v}")?;
    writeln!(
        out,
        "note error-term convergence hypotheses asserted by caller"
    )?;
    Ok(())
}

/// Exact square root of a rational when both numerator and denominator are
/// perfect squares; otherwise a slightly rounded-down approximation (safe
/// for oracle boxes, which must never overreach).
fn sqrt_rational_down(r: &Rational) -> Rational {
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        return Rational::new(ns, ds);
    }
    let step = Rational::new(1.into(), (1i64 << 30).into());
    let mut s = crate::rational::round_to_denominator(to_f64(r).sqrt(), 1 << 30);
    while &s * &s > *r {
        s -= &step;
    }
    s.max(Rational::zero())
}

/// `cube-bound`: dyadic cube packing of the domain and the induced
/// error-term lower bounds at the requested indices, as CSV rows
/// `k, level, lower_bound, bound_over_k14, depth_limited`.
pub fn cmd_cube_bound(spec_json: &str, depth: u32, ks: &[u64], out: &mut dyn Write) -> CliResult {
    if depth < 1 {
        return Err(Error::Parse("depth must be at least 1".into()).into());
    }
    if ks.is_empty() || ks.contains(&0) {
        return Err(Error::Parse("need a list of positive k values".into()).into());
    }
    let spec = DomainSpec::parse(spec_json)?;
    let domain = spec.to_domain()?;
    let oracle: Box<dyn MembershipOracle> = match &domain {
        // a polydisk is the symplectic image of a product of squares, so its
        // packing runs on the literal box
        Domain::Polydisk(a, b) => {
            let sa = sqrt_rational_down(a);
            let sb = sqrt_rational_down(b);
            Box::new(BoxOracle::new(
                [
                    Rational::zero(),
                    Rational::zero(),
                    Rational::zero(),
                    Rational::zero(),
                ],
                [sa.clone(), sa, sb.clone(), sb],
            )?)
        }
        Domain::Toric(p) => Box::new(ToricOracle::new(p.clone())),
        Domain::Ball(a) => Box::new(ToricOracle::new(ToricProfile::triangle(
            a,
            a,
            ProfileKind::Concave,
        )?)),
        Domain::Ellipsoid(a, b) => Box::new(ToricOracle::new(ToricProfile::triangle(
            a,
            b,
            ProfileKind::Concave,
        )?)),
        Domain::Union(_) => {
            return Err(Error::MethodMismatch("cube bounds need a single domain").into())
        }
    };
    let vol = to_f64(&domain.volume());
    let rows = exponent_scan(oracle.as_ref(), vol, depth, ks);
    writeln!(out, "k,level,lower_bound,bound_over_k14,depth_limited")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.k,
            r.level,
            fmt_f64(r.bound),
            fmt_f64(r.normalized),
            r.depth_limited
        )?;
    }
    Ok(())
}

/// `ech-index`: index, approximation, gap and bound of a generator file.
pub fn cmd_ech_index(gen_json: &str, out: &mut dyn Write, diag: &mut dyn Write) -> CliResult {
    let gen = parse_generator(gen_json)?;
    for w in gen.boundary_warnings() {
        writeln!(diag, "warning: {w}")?;
    }
    let check = gap_check(&gen);
    writeln!(out, "action {}", fmt_f64(action(&gen)))?;
    writeln!(out, "I {}", ech_index(&gen))?;
    writeln!(out, "I_approx {}", fmt_f64(approx_index(&gen)))?;
    writeln!(out, "gap {}", fmt_f64(check.gap))?;
    writeln!(out, "bound {}", check.bound)?;
    writeln!(out, "ok {}", check.ok)?;
    Ok(())
}

/// `weights`: the weight expansion of a concave domain as CSV, the exact
/// remainder bookkeeping, and the weight-sum identity check.
pub fn cmd_weights(
    spec_json: &str,
    min_weight: Option<&str>,
    max_terms: usize,
    out: &mut dyn Write,
) -> CliResult {
    let spec = DomainSpec::parse(spec_json)?;
    let profile = match spec.to_domain()? {
        Domain::Toric(p) if p.kind() == ProfileKind::Concave => p,
        Domain::Ball(a) => ToricProfile::triangle(&a, &a, ProfileKind::Concave)?,
        Domain::Ellipsoid(a, b) => ToricProfile::triangle(&a, &b, ProfileKind::Concave)?,
        _ => {
            return Err(
                Error::MethodMismatch("weight expansions need a concave toric domain").into(),
            )
        }
    };
    let min_w = match min_weight {
        Some(s) => parse_rational(s)?,
        None => default_min_weight(&profile),
    };
    let terms = if max_terms == 0 {
        DEFAULT_MAX_TERMS
    } else {
        max_terms
    };
    let e = weight_expansion(&profile, &min_w, terms)?;
    writeln!(out, "index,weight,weight_float")?;
    for (i, w) in e.weights.iter().enumerate() {
        writeln!(
            out,
            "{},{},{}",
            i + 1,
            format_rational(w),
            fmt_f64(to_f64(w))
        )?;
    }
    writeln!(
        out,
        "# remainder_area {} truncated {}",
        format_rational(&e.remainder_area),
        e.truncated
    )?;
    if e.truncated {
        writeln!(out, "# mcduff skipped (truncated)")?;
    } else {
        let sum = weight_sum(&e);
        let rhs = profile.a() + profile.b() - crate::geom::affine_length(profile.boundary());
        let status = if sum == rhs { "equal" } else { "UNEQUAL" };
        writeln!(
            out,
            "# mcduff sum={} a_plus_b_minus_laff={} status={}",
            format_rational(&sum),
            format_rational(&rhs),
            status
        )?;
    }
    Ok(())
}
