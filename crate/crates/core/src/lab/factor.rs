//! The factorization `h(z) = z (f(z) - a) / (b - a)` and the step-by-step
//! trace of the main bound at `r = e^{-π}`.

use std::f64::consts::PI;
use std::sync::Arc;


use crate::error::{Error, Result};
use crate::hyperbolic::{circle_min_lower_bound, default_radii, inscribed_radius_lower_bound, winding_on_circle, MapFn};
use crate::lab::corpus::{CorpusEntry, Interval};
use crate::modular::{minus_j_minus, ModularExpansion};
use crate::report::VerificationRecord;
use crate::series::{TruncatedSeries, C64};
use crate::E_MINUS_PI;

/// `|h|` below this off the origin counts as a zero.
pub const ZERO_GUARD: f64 = 1e-10;
const CIRCLE_SAMPLES: usize = 2048;

#[derive(Clone)]
pub struct HFactorization {
    /// `h = Σ c_n z^n`.
    pub h: TruncatedSeries,
    pub a: C64,
    pub b: C64,
    /// `f(0)`
    pub a0: C64,
    /// Certified lower bound on `δ = d(0, ∂h(U))`.
    pub delta: f64,
    /// `h1(z) = h(e^{-π} z)`.
    pub h1: TruncatedSeries,
    /// Enclosure of `δ1 = d(0, ∂h1(U))`.
    pub delta1: Interval,
    /// `h1'(0) = c_1 e^{-π}`.
    pub h1_prime_at_0: C64,
    /// `min Re(z h'(z) / h(z))` on `|z| = e^{-π}`; positive means `h1` is
    /// starlike, hence univalent.
    pub starlike_margin: f64,
    /// Grid points where `|z (f - a)| < ZERO_GUARD` but no local winding
    /// could be resolved in floating point.
    pub unresolved_grid_points: usize,
    /// Largest tested radius inside which `h` has only its zero at 0.
    pub zero_free_radius: f64,
    eval: MapFn,
}

impl std::fmt::Debug for HFactorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HFactorization")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("delta", &self.delta)
            .field("delta1", &self.delta1)
            .field("h1_prime_at_0", &self.h1_prime_at_0)
            .field("starlike_margin", &self.starlike_margin)
            .field("unresolved_grid_points", &self.unresolved_grid_points)
            .finish()
    }
}

impl HFactorization {
    pub fn c(&self, n: usize) -> C64 {
        self.h.coeff(n)
    }

    pub fn eval_h(&self, z: C64) -> C64 {
        (self.eval)(z)
    }

    /// Copy with every `c_n` multiplied by `factor` (harness self-test).
    /// `δ`, `δ1` are left untouched.
    pub fn perturbed(&self, factor: f64) -> Self {
        let k = C64::new(factor, 0.0);
        let h = self.h.scale(k);
        let h1 = h.dilate(C64::new(E_MINUS_PI, 0.0));
        let inner = self.eval.clone();
        HFactorization {
            h,
            h1,
            h1_prime_at_0: self.h1_prime_at_0 * factor,
            eval: Arc::new(move |z| inner(z) * factor),
            ..self.clone()
        }
    }
}

/// Factor `f` through `h(z) = z (f(z) - a) / (b - a)`.
///
/// `δ` is bounded below by the largest disk about 0 inside `h(D_r)` for
/// sampled `r` up to 0.999. `δ1` is the minimum of `|h|` on
/// `|z| = e^{-π}`, exact when `h1` is univalent (checked through
/// starlikeness).
pub fn h_factorize(entry: &CorpusEntry, a: C64, b: C64) -> Result<HFactorization> {
    let gap = (b - a).norm();
    if gap < 1e-12 {
        return Err(Error::DegenerateOmittedPoints(gap));
    }
    let inv = (b - a).inv();
    let f = entry.series.clone();
    let h = f.add_constant(-a).shift_up().scale(inv);
    let (fe, dfe) = (entry.f.clone(), entry.df.clone());
    let h_eval: MapFn = Arc::new(move |z| z * (fe(z) - a) * inv);
    let (fe, dfe2) = (entry.f.clone(), dfe);
    let dh_eval: MapFn = Arc::new(move |z| ((fe(z) - a) + z * dfe2(z)) * inv);

    // zero scan of the punctured disk on the b-independent |z (f - a)|;
    // a hit counts only if h winds around 0 on a small circle about it
    let (fe, gap_a) = (entry.f.clone(), a);
    let numer = move |z: C64| z * (fe(z) - gap_a);
    let mut unresolved = 0usize;
    for i in 1..=100 {
        let r = 0.999 * i as f64 / 100.0;
        for k in 0..100 {
            let z = C64::from_polar(r, 2.0 * PI * (k as f64 + 0.5) / 100.0);
            let m = numer(z).norm();
            if !(m >= ZERO_GUARD) {
                let eps = 0.004 * (1.0 - r).min(0.25) / 0.25;
                let local = |w: C64| numer(z + w * eps);
                match winding_on_circle(&local, 1.0, 256) {
                    Some(0) => {}
                    // round-off level values: the sign of the winding is not resolvable
                    None if m.is_finite() => unresolved += 1,
                    _ => return Err(Error::ZeroDetected { re: z.re, im: z.im, modulus: m / gap }),
                }
            }
        }
    }

    // argument principle: exactly one (simple) zero inside each circle on
    // which |z (f - a)| is resolvable in floating point
    let floor = 1e-12 * (1.0 + a.norm());
    // a circle through a zero is skipped, and certifies nothing beyond it
    let mut zero_free_radius = 0.0;
    let mut skipped = false;
    for r in [0.25, 0.5, 0.75, 0.9, 0.99] {
        let min = (0..4096).map(|k| numer(C64::from_polar(r, 2.0 * PI * k as f64 / 4096.0)).norm()).fold(f64::INFINITY, f64::min);
        if !(min > floor) {
            skipped = true;
            continue;
        }
        if winding_on_circle(&numer, r, 4096) != Some(1) {
            let (z, m) = grid_minimum(h_eval.as_ref(), r);
            return Err(Error::ZeroDetected { re: z.re, im: z.im, modulus: m });
        }
        if !skipped {
            zero_free_radius = r;
        }
    }

    let zero = C64::new(0.0, 0.0);
    let delta = inscribed_radius_lower_bound(h_eval.as_ref(), dh_eval.as_ref(), zero, &default_radii(), CIRCLE_SAMPLES);

    let r = E_MINUS_PI;
    let lo1 = circle_min_lower_bound(h_eval.as_ref(), dh_eval.as_ref(), zero, r, CIRCLE_SAMPLES);
    let mut hi1 = f64::INFINITY;
    let mut starlike = f64::INFINITY;
    for k in 0..CIRCLE_SAMPLES {
        let z = C64::from_polar(r, 2.0 * PI * k as f64 / CIRCLE_SAMPLES as f64);
        let hv = h_eval(z);
        hi1 = hi1.min(hv.norm());
        starlike = starlike.min((z * dh_eval(z) / hv).re);
    }

    let h1 = h.dilate(C64::new(r, 0.0));
    let h1_prime_at_0 = h.coeff(1) * r;
    Ok(HFactorization {
        h,
        a,
        b,
        a0: f.coeff(0),
        delta,
        h1,
        delta1: Interval { lo: lo1, hi: hi1 },
        h1_prime_at_0,
        starlike_margin: starlike,
        unresolved_grid_points: unresolved,
        zero_free_radius,
        eval: h_eval,
    })
}

/// Smallest `|h|` over a polar grid of `0 < |z| < r`.
fn grid_minimum(h: &(dyn Fn(C64) -> C64 + Send + Sync), r: f64) -> (C64, f64) {
    let mut best = (C64::new(0.0, 0.0), f64::INFINITY);
    for i in 1..=200 {
        let rho = r * i as f64 / 201.0;
        for k in 0..400 {
            let z = C64::from_polar(rho, 2.0 * PI * k as f64 / 400.0);
            let m = h(z).norm();
            if m < best.1 {
                best = (z, m);
            }
        }
    }
    best
}

/// Factorization with the omitted points chosen by the corpus entry.
pub fn h_factorize_entry(entry: &CorpusEntry) -> Result<HFactorization> {
    h_factorize(entry, entry.a, entry.b)
}

/// One record per step of the main bound's proof at `r = e^{-π}`.
///
/// Names carry the label prefix `trace/<label>/`:
/// `f1-split`, `coef-bound`, `h1-majorant`, `h1-contracted`, `zf-majorant`,
/// `zf-subadditive`, `final-bound`, `delta1-ratio`, `h1-starlike`.
pub fn trace_theorem21_proof(
    label: &str,
    fact: &HFactorization,
    f: &TruncatedSeries,
    expansion: &ModularExpansion,
) -> Result<Vec<VerificationRecord>> {
    let r = E_MINUS_PI;
    let name = |s: &str| format!("trace/{label}/{s}");
    let ba = (fact.b - fact.a).norm();
    let a_a0 = (fact.a - fact.a0).norm();
    let d1_lo = fact.delta1.lo;
    let d1_hi = fact.delta1.hi;
    let jm = minus_j_minus(r)?;
    let mut out = Vec::new();

    // M(f1) <= |b-a| M(h/z) + |a - f(0)|
    let m_f1 = f.bohr_majorant(r, 1)?.upper;
    let m_h_over_z = fact.h.shift_down().bohr_majorant(r, 0)?.value;
    out.push(
        VerificationRecord::new(name("f1-split"), m_f1, ba * m_h_over_z + a_a0, 0.0)
            .with("zero_free_radius", fact.zero_free_radius)
            .with("unresolved_grid_points", fact.unresolved_grid_points as u64),
    );

    // |c_n| < δ M_n
    let mut worst = 0.0f64;
    let mut worst_n = 0usize;
    for n in 1..=fact.h.order() {
        let Some(m) = expansion.m(n) else { break };
        let ratio = fact.c(n).norm() / (fact.delta * m);
        if !(ratio <= worst) {
            worst = ratio;
            worst_n = n;
        }
    }
    out.push(
        VerificationRecord::strict(name("coef-bound"), worst, 1.0)
            .with("worst_index", worst_n as u64)
            .with("delta_lower", fact.delta),
    );

    // M(h1) at |z| = 1, i.e. Σ |c_n| e^{-nπ} <= δ1 (-J(-e^{-π}))
    let m_h = fact.h.bohr_majorant(r, 1)?;
    out.push(
        VerificationRecord::new(name("h1-majorant"), m_h.upper, d1_lo * jm, 0.0)
            .with("delta1_upper", d1_hi)
            .with("minus_j_minus_at_r", jm),
    );

    // subordination majorant at |z| = e^{-π}: Σ |c_n| e^{-2nπ} <= δ1 (-J(-e^{-π}))
    let m_h1_r = fact.h1.bohr_majorant(r, 1)?.upper;
    out.push(VerificationRecord::new(name("h1-contracted"), m_h1_r, d1_lo * jm, 0.0));

    // M(z f) <= |b-a| M(h) + |a| r <= δ1 |b-a| + |a| r
    let m_zf = f.shift_up().bohr_majorant(r, 0)?.upper;
    // equality when a = 0, so allow round-off
    let sub = ba * m_h.value + fact.a.norm() * r;
    out.push(VerificationRecord::new(name("zf-subadditive"), m_zf, sub, 1e-12 * sub));
    out.push(VerificationRecord::new(name("zf-majorant"), m_zf, d1_lo * ba + fact.a.norm() * r, 0.0));

    // Σ_{n>=1} |a_n| r^n <= |a - a0| (δ1 |b - a| / (r |a - a0|) + 1)
    out.push(VerificationRecord::new(name("final-bound"), m_f1, d1_lo * ba / r + a_a0, 0.0));

    // δ1 / |h1'(0)| <= 1
    out.push(VerificationRecord::new(name("delta1-ratio"), d1_hi / fact.h1_prime_at_0.norm(), 1.0, 0.0));

    out.push(VerificationRecord::strict(name("h1-starlike"), 0.0, fact.starlike_margin));
    Ok(out)
}
