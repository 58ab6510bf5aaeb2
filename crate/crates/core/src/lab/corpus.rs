//! Test functions for the Bohr-type inequalities, each paired with its image
//! domain, two omitted points and a certified enclosure of
//! `d(f(0), ∂f(U))`.

use std::f64::consts::PI;
use std::fmt;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::hyperbolic::{DomainSpec, MapFn};
use crate::modular::{coefficients_of_minus_j_minus, eval_j, eval_j_derivative};
use crate::series::{extract_coefficients, Envelope, TruncatedSeries, C64};

/// Closed enclosure `lo <= d <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn exact(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }
}

#[derive(Clone)]
pub struct CorpusEntry {
    pub label: String,
    pub series: TruncatedSeries,
    pub f: MapFn,
    pub df: MapFn,
    pub domain: DomainSpec,
    /// Omitted point nearest to `f(0)`.
    pub a: C64,
    pub b: C64,
    /// Enclosure of `d(f(0), ∂f(U))`.
    pub distance: Interval,
}

impl fmt::Debug for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CorpusEntry")
            .field("label", &self.label)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("distance", &self.distance)
            .finish()
    }
}

impl CorpusEntry {
    pub fn f0(&self) -> C64 {
        self.series.coeff(0)
    }

    pub fn eval(&self, z: C64) -> C64 {
        (self.f)(z)
    }
}

/// Argument in `[0, 2π)`.
fn arg_positive(z: C64) -> f64 {
    let t = z.arg();
    if t < 0.0 {
        t + 2.0 * PI
    } else {
        t
    }
}

/// Orders two omitted points so the first is nearest to `f0`; ties go to
/// the smaller argument in `[0, 2π)`.
pub fn order_omitted(f0: C64, p: C64, q: C64) -> (C64, C64) {
    let (dp, dq) = ((p - f0).norm(), (q - f0).norm());
    let tie = (dp - dq).abs() <= 1e-12 * dp.max(dq).max(1.0);
    if (!tie && dp < dq) || (tie && arg_positive(p) <= arg_positive(q)) {
        (p, q)
    } else {
        (q, p)
    }
}

fn entry(label: &str, series: TruncatedSeries, f: MapFn, df: MapFn, domain: DomainSpec, distance: Interval) -> CorpusEntry {
    let (p, q) = domain.omitted_points.expect("corpus domains list omitted points");
    let (a, b) = order_omitted(series.coeff(0), p, q);
    CorpusEntry { label: label.to_string(), series, f, df, domain, a, b, distance }
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

pub fn identity_entry(order: usize) -> CorpusEntry {
    entry(
        "identity",
        TruncatedSeries::identity(order),
        Arc::new(|z| z),
        Arc::new(|_| one()),
        DomainSpec::unit_disk(),
        Interval::exact(1.0),
    )
}

pub fn scaled_identity_entry(order: usize, s: f64) -> CorpusEntry {
    entry(
        &format!("scaled-identity({s})"),
        TruncatedSeries::identity(order).scale(C64::new(s, 0.0)),
        Arc::new(move |z| s * z),
        Arc::new(move |_| C64::new(s, 0.0)),
        DomainSpec::disk(C64::new(0.0, 0.0), s),
        Interval::exact(s),
    )
}

/// `(z + c) / (1 + conj(c) z)`, onto the unit disk with `f(0) = c`.
pub fn automorphism_series(order: usize, c: C64) -> TruncatedSeries {
    let m = c.norm();
    let s = TruncatedSeries::from_fn(order, |n| if n == 0 { c } else { (1.0 - m * m) * (-c.conj()).powu(n as u32 - 1) });
    if m == 0.0 {
        s
    } else {
        s.with_tail(Envelope::new((1.0 - m * m) / m, 1.0 / m, order + 1))
    }
}

pub fn automorphism_entry(order: usize, c: C64) -> CorpusEntry {
    let m = c.norm();
    let u = if m > 0.0 { c / m } else { one() };
    let domain = DomainSpec::unit_disk().with_omitted(u, -u);
    entry(
        &format!("automorphism({c})"),
        automorphism_series(order, c),
        Arc::new(move |z| (z + c) / (one() + c.conj() * z)),
        Arc::new(move |z| (1.0 - m * m) / (one() + c.conj() * z).powi(2)),
        domain,
        Interval::exact(1.0 - m),
    )
}

/// `max_n n θ^n`.
fn max_n_theta_pow(theta: f64) -> f64 {
    let mut best = 0.0;
    let mut p = 1.0;
    for n in 1..100_000usize {
        p *= theta;
        let v = n as f64 * p;
        if v < best {
            break;
        }
        best = v;
    }
    best
}

pub fn koebe_series(order: usize) -> TruncatedSeries {
    let theta = 0.9;
    TruncatedSeries::from_fn(order, |n| C64::new(n as f64, 0.0)).with_tail(Envelope::new(max_n_theta_pow(theta), 1.0 / theta, order + 1))
}

pub fn koebe_entry(order: usize) -> CorpusEntry {
    entry(
        "koebe",
        koebe_series(order),
        Arc::new(|z| z / (one() - z).powi(2)),
        Arc::new(|z| (one() + z) / (one() - z).powi(3)),
        DomainSpec::slit_plane(-0.25),
        Interval::exact(0.25),
    )
}

pub fn strip_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| if n % 2 == 1 { C64::new(2.0 / n as f64, 0.0) } else { C64::new(0.0, 0.0) })
        .with_tail(Envelope::new(2.0 / (order + 1) as f64, 1.0, order + 1))
}

pub fn strip_entry(order: usize) -> CorpusEntry {
    entry(
        "strip",
        strip_series(order),
        Arc::new(|z| ((one() + z) / (one() - z)).ln()),
        Arc::new(|z| 2.0 / (one() - z * z)),
        DomainSpec::strip(PI / 2.0),
        Interval::exact(PI / 2.0),
    )
}

/// `scale * J(r z) + shift`. The image omits `shift + scale` (as `J ≠ 1`)
/// and `shift + 2 scale J(-r)`, which lies beyond `max |J| = -J(-r)` on
/// `|z| <= r`. `J(rz)` is not univalent for large `r`, so only the omitted
/// points bound `d` from above.
pub fn modular_entry(order: usize, r: f64, scale: C64, shift: C64) -> Result<CorpusEntry> {
    let expansion = coefficients_of_minus_j_minus(order.max(2) - 1);
    let series = expansion.j_series().dilate(C64::new(r, 0.0)).scale(scale).add_constant(shift);
    let f: MapFn = Arc::new(move |z| scale * eval_j(r * z).unwrap_or(C64::new(f64::NAN, f64::NAN)) + shift);
    let df: MapFn = Arc::new(move |z| scale * r * eval_j_derivative(r * z).unwrap_or(C64::new(f64::NAN, f64::NAN)));
    let far = 2.0 * eval_j(C64::new(-r, 0.0))?;
    let label = format!("modular(A={scale},r={r},B={shift})");
    let domain = DomainSpec::sampled_image(&label, f.clone(), df.clone(), (shift + scale, shift + scale * far), false);
    let (lo, hi) = domain.base_distance_interval(shift);
    Ok(entry(&label, series, f, df, domain, Interval { lo, hi }))
}

/// `exp((ρz + 1) / (ρz - 1))`, the punctured-disk cover on a smaller disk;
/// it omits 0 and 1 and stays above `exp(-(1+ρ)/(1-ρ))` in modulus.
/// Coefficients by circle sampling.
pub fn punctured_disk_entry(order: usize, rho: f64) -> Result<CorpusEntry> {
    let f = move |z: C64| ((rho * z + one()) / (rho * z - one())).exp();
    let df = move |z: C64| f(z) * (-2.0 * rho) / (rho * z - one()).powi(2);
    let series = extract_coefficients(f, 0.5, order)?;
    let label = format!("punctured-disk-cover({rho}z)");
    let (f, df): (MapFn, MapFn) = (Arc::new(f), Arc::new(df));
    let domain = DomainSpec::sampled_image(&label, f.clone(), df.clone(), (C64::new(0.0, 0.0), one()), false);
    let (lo, hi) = domain.base_distance_interval(f(C64::new(0.0, 0.0)));
    Ok(entry(&label, series, f, df, domain, Interval { lo, hi }))
}

/// The corpus for the main bound and its proof trace. Built once per order;
/// the distance enclosures of the sampled images dominate the cost.
pub fn build_corpus(order: usize) -> Result<Vec<CorpusEntry>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<CorpusEntry>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    // held across the build so concurrent suites wait instead of rebuilding
    let mut map = cache.lock().expect("corpus cache");
    if let Some(c) = map.get(&order) {
        return Ok(c.clone());
    }
    let corpus = fresh_corpus(order)?;
    map.insert(order, corpus.clone());
    Ok(corpus)
}

fn fresh_corpus(order: usize) -> Result<Vec<CorpusEntry>> {
    Ok(vec![
        identity_entry(order),
        scaled_identity_entry(order, 0.9),
        automorphism_entry(order, C64::new(0.5, 0.0)),
        automorphism_entry(order, C64::new(-0.3, 0.4)),
        automorphism_entry(order, C64::new(0.0, 0.8)),
        koebe_entry(order),
        strip_entry(order),
        modular_entry(order, 0.5, one(), C64::new(0.0, 0.0))?,
        modular_entry(order, 0.9, C64::new(0.0, 0.5), C64::new(0.25, 0.0))?,
        punctured_disk_entry(order, 0.8)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omitted_ordering() {
        let (a, b) = order_omitted(C64::new(0.0, 0.0), C64::new(-1.0, 0.0), C64::new(-0.25, 0.0));
        assert_eq!((a, b), (C64::new(-0.25, 0.0), C64::new(-1.0, 0.0)));
        // tie: smaller argument wins
        let (a, _) = order_omitted(C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0));
        assert_eq!(a, C64::new(0.0, 1.0));
    }

    #[test]
    fn series_match_evaluators() {
        for e in build_corpus(64).unwrap() {
            let z = C64::new(0.03, -0.02);
            let err = (e.series.eval(z) - e.eval(z)).norm();
            assert!(err < 1e-12, "{}: {err}", e.label);
            assert!(e.distance.lo > 0.0 && e.distance.lo <= e.distance.hi, "{}: {:?}", e.label, e.distance);
        }
    }

    #[test]
    fn closed_form_distances() {
        assert_eq!(koebe_entry(8).distance, Interval::exact(0.25));
        assert_eq!(identity_entry(8).distance, Interval::exact(1.0));
        assert_eq!(strip_entry(8).distance, Interval::exact(PI / 2.0));
        let k = koebe_entry(8);
        assert_eq!((k.a, k.b), (C64::new(-0.25, 0.0), C64::new(-1.0, 0.0)));
    }

    #[test]
    fn modular_distance_is_enclosed() {
        let e = modular_entry(64, 0.5, one(), C64::new(0.0, 0.0)).unwrap();
        // J(0.5) is within 2e-3 of the omitted value 1
        let j = eval_j(C64::new(0.5, 0.0)).unwrap().re;
        assert_eq!(e.distance.hi, 1.0);
        assert!(e.distance.lo <= j && e.distance.lo > 0.99, "{:?} vs {j}", e.distance);
    }
}
