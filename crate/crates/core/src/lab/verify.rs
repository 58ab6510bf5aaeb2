//! Inequality verifiers and the suites built from them.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hyperbolic::{canonical_covers, check_cover_point, check_koebe_bounds, check_distance_density};
use crate::lab::corpus::{automorphism_series, build_corpus, identity_entry, koebe_entry, modular_entry, strip_entry, CorpusEntry};
use crate::lab::factor::{h_factorize_entry, trace_theorem21_proof};
use crate::modular::{
    coefficients_of_minus_j_minus, eval_j, lemma17_radius, lemma17_threshold, max_modulus_on_circle, subordination_coefficient_check,
    univalence_scan, ModularExpansion,
};
use crate::report::VerificationRecord;
use crate::series::{TruncatedSeries, C64};
use crate::E_MINUS_PI;

/// Radius for the harmonic bound and the von Neumann grid.
pub const HARMONIC_RADIUS: f64 = E_MINUS_PI / 3.0;
pub const VON_NEUMANN_TOL: f64 = 1e-9;
pub const MAX_POLY_DEGREE: usize = 16;
const RADIUS_SCAN_STEP: f64 = 1e-3;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `Σ_{n>=1} |a_n| e^{-nπ} <= 2d`, with the ratio `lhs / d` in metadata.
pub fn verify_theorem21(label: &str, f: &TruncatedSeries, d: f64) -> Result<VerificationRecord> {
    let lhs = f.bohr_majorant(E_MINUS_PI, 1)?.upper;
    let ratio = lhs / d;
    Ok(VerificationRecord::new(format!("bohr/{label}"), lhs, 2.0 * d, 0.0)
        .with("ratio", ratio)
        .with("ratio_le_one", ratio <= 1.0)
        .with("d", d))
}

/// `M(f)(1/3) <= 1` for `f` bounded by 1 on the disk.
pub fn verify_classical_bohr(label: &str, f: &TruncatedSeries) -> Result<VerificationRecord> {
    let lhs = f.bohr_majorant(1.0 / 3.0, 0)?.upper;
    Ok(VerificationRecord::new(format!("classical/{label}"), lhs, 1.0, 0.0))
}

fn horner(p: &[C64], w: C64) -> C64 {
    p.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * w + a)
}

/// `max |p|` over the unit circle by boundary sampling (maximum principle).
pub fn poly_sup_norm(p: &[C64]) -> f64 {
    (0..crate::hyperbolic::BOUNDARY_SAMPLES)
        .map(|k| horner(p, C64::from_polar(1.0, 2.0 * PI * k as f64 / crate::hyperbolic::BOUNDARY_SAMPLES as f64)).norm())
        .fold(0.0, f64::max)
}

/// `|p(f(z))| <= ||p||_∞` on a 10 x 10 polar grid of `|z| <= e^{-π}/3`.
/// The truncation error of `f` is pushed through `p` so `lhs` stays an
/// upper bound.
pub fn verify_von_neumann(label: &str, f: &TruncatedSeries, d: f64, p: &[C64]) -> Result<VerificationRecord> {
    if !(d < 1.0) {
        return Err(Error::DomainError(format!("d = {d} must be below 1")));
    }
    if p.len() > MAX_POLY_DEGREE + 1 {
        return Err(Error::DomainError(format!("degree {} exceeds {MAX_POLY_DEGREE}", p.len() - 1)));
    }
    let err = f.tail_bound(HARMONIC_RADIUS);
    let mut lhs = 0.0f64;
    for i in 1..=10 {
        let r = HARMONIC_RADIUS * i as f64 / 10.0;
        for k in 0..10 {
            let z = C64::from_polar(r, 2.0 * PI * k as f64 / 10.0);
            let w = f.eval(z);
            // Lipschitz constant of p on the disk of radius |w| + err
            let m = w.norm() + err;
            let lip: f64 = p.iter().enumerate().skip(1).map(|(k, a)| k as f64 * a.norm() * m.powi(k as i32 - 1)).sum();
            lhs = lhs.max(horner(p, w).norm() + lip * err);
        }
    }
    let sup = poly_sup_norm(p);
    Ok(VerificationRecord::new(format!("von-neumann/{label}/deg{}", p.len().saturating_sub(1)), lhs, sup, VON_NEUMANN_TOL).with("d", d))
}

/// `f = h + conj(g)` with `g' = μ h'`, `g(0) = 0`.
#[derive(Clone, Debug)]
pub struct HarmonicPair {
    pub h_series: TruncatedSeries,
    pub mu: TruncatedSeries,
    pub g_series: TruncatedSeries,
}

impl HarmonicPair {
    pub fn new(h: TruncatedSeries, mu: TruncatedSeries) -> Result<Self> {
        if mu.coeff(0).norm() > 1e-12 {
            return Err(Error::DomainError(format!("dilatation has μ(0) = {}", mu.coeff(0))));
        }
        let g = mu.mul(&h.differentiate()).integrate();
        Ok(HarmonicPair { h_series: h, mu, g_series: g })
    }
}

/// Main bound `M(h - a0) + M(g) <= 4d` at `|z| = e^{-π}/3`, plus
/// `M(g) <= M(h - a0)` on 20 radii up to 1/3 and `M(g) < 2d`.
pub fn verify_harmonic(label: &str, pair: &HarmonicPair, d: f64) -> Result<Vec<VerificationRecord>> {
    let r = HARMONIC_RADIUS;
    let mh = pair.h_series.bohr_majorant(r, 1)?.upper;
    let mg = pair.g_series.bohr_majorant(r, 1)?.upper;
    let mut out = vec![
        VerificationRecord::new(format!("harmonic/{label}"), mh + mg, 4.0 * d, 0.0).with("m_h", mh).with("m_g", mg),
        VerificationRecord::strict(format!("harmonic/{label}/g-below-2d"), mg, 2.0 * d),
    ];
    for k in 1..=20 {
        let rk = k as f64 / 60.0;
        let g = pair.g_series.bohr_majorant(rk, 1)?.upper;
        // h's majorant taken from below: a certified pass needs the smaller side
        let h = pair.h_series.bohr_majorant(rk, 1)?.value;
        out.push(VerificationRecord::new(format!("harmonic/{label}/g-le-h/r={k:02}of60"), g, h, 1e-12));
    }
    Ok(out)
}

/// Largest grid radius `r*` (step `1e-3`) up to which every member
/// satisfies `Σ_{n>=1} |a_n| r^n <= 2d`.
pub fn bohr_radius_scan(family: &[(TruncatedSeries, f64)]) -> Result<f64> {
    let mut best = 0.0;
    let steps = (1.0 / RADIUS_SCAN_STEP) as usize;
    for k in 1..steps {
        let r = k as f64 * RADIUS_SCAN_STEP;
        for (f, d) in family {
            if !(f.bohr_majorant(r, 1)?.upper <= 2.0 * d) {
                return Ok(best);
            }
        }
        best = r;
    }
    Ok(best)
}

fn theorem21_records(corpus: &[CorpusEntry]) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    let mut max_ratio = 0.0f64;
    for e in corpus {
        let rec = verify_theorem21(&e.label, &e.series, e.distance.lo)?;
        max_ratio = max_ratio.max(rec.lhs / e.distance.lo);
        out.push(rec);
    }
    let r = E_MINUS_PI;
    let k = verify_theorem21("koebe", &koebe_entry(corpus[0].series.order()).series, 0.25)?;
    out.push(VerificationRecord::new("bohr/koebe/closed-form", (k.lhs - r / (1.0 - r).powi(2)).abs(), 0.0, 1e-9));
    out.push(VerificationRecord::new("bohr/max-ratio", max_ratio, 2.0, 0.0).with("le_one", max_ratio <= 1.0));
    Ok(out)
}

pub fn suite_theorem21(order: usize) -> Result<Vec<VerificationRecord>> {
    theorem21_records(&build_corpus(order)?)
}

pub fn suite_proof_trace(order: usize) -> Result<Vec<VerificationRecord>> {
    let expansion = coefficients_of_minus_j_minus(order + 1);
    let mut out = Vec::new();
    for e in build_corpus(order)? {
        let fact = h_factorize_entry(&e)?;
        out.extend(trace_theorem21_proof(&e.label, &fact, &e.series, &expansion)?);
    }
    // self-test: inflated coefficients must break the trace
    let k = koebe_entry(order);
    let fact = h_factorize_entry(&k)?.perturbed(1e3);
    let failures = trace_theorem21_proof("self-test", &fact, &k.series, &expansion)?.iter().filter(|r| !r.passed).count();
    out.push(VerificationRecord::new("trace/self-test/detects-perturbation", 1.0, failures as f64, 0.0));
    Ok(out)
}

pub fn suite_classical(order: usize) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    for a in [c(0.5, 0.0), c(-0.3, 0.4), c(0.0, 0.8)] {
        let f = automorphism_series(order, a);
        out.push(verify_classical_bohr(&format!("automorphism({a})"), &f)?);
        out.push(verify_classical_bohr(&format!("automorphism({a})^2"), &f.mul(&f))?);
    }
    out.push(verify_classical_bohr("identity", &TruncatedSeries::identity(order))?);
    out.push(verify_classical_bohr("constant(0.99)", &TruncatedSeries::from_real(&[0.99]))?);
    let half = verify_classical_bohr("a", &automorphism_series(order, c(0.5, 0.0)))?;
    out.push(VerificationRecord::new("classical/automorphism(0.5)/closed-form", (half.lhs - 0.8).abs(), 0.0, 1e-12));
    Ok(out)
}

/// The five polynomials of the von Neumann battery.
pub fn test_polynomials() -> Vec<Vec<C64>> {
    vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0)],
        vec![c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0); 4],
        vec![c(0.0, 0.25), c(0.0, 0.0), c(-0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
    ]
}

pub fn suite_von_neumann(order: usize) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    for e in build_corpus(order)?.iter().filter(|e| e.distance.hi < 1.0) {
        for (i, p) in test_polynomials().iter().enumerate() {
            let mut rec = verify_von_neumann(&e.label, &e.series, e.distance.hi, p)?;
            rec.name = format!("von-neumann/{}/p{}", e.label, i + 1);
            out.push(rec);
        }
    }
    Ok(out)
}

/// `(label, pair, d)` for `μ ∈ {0, z, z^2}`.
pub fn harmonic_pairs(order: usize) -> Result<Vec<(String, HarmonicPair, f64)>> {
    let z = TruncatedSeries::identity(order);
    let j = modular_entry(order, 0.5, c(1.0, 0.0), c(0.0, 0.0))?;
    let k = koebe_entry(order);
    let s = strip_entry(order);
    Ok(vec![
        (format!("mu=0/{}", j.label), HarmonicPair::new(j.series.clone(), TruncatedSeries::zero(order))?, j.distance.lo),
        (format!("mu=z/{}", k.label), HarmonicPair::new(k.series.clone(), z.clone())?, k.distance.lo),
        (format!("mu=z^2/{}", s.label), HarmonicPair::new(s.series.clone(), z.mul(&z))?, s.distance.lo),
    ])
}

pub fn suite_harmonic(order: usize) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    for (label, pair, d) in harmonic_pairs(order)? {
        out.extend(verify_harmonic(&label, &pair, d)?);
    }
    Ok(out)
}

/// A labelled family of series, each with its certified distance `d`.
pub type Family = (String, Vec<(TruncatedSeries, f64)>);

/// Families sharing two omitted points, each member with its certified `d`.
pub fn radius_scan_families(order: usize) -> Result<Vec<Family>> {
    let id = identity_entry(order);
    let mut modular = Vec::new();
    for r in [0.5, 0.9] {
        let e = modular_entry(order, r, c(1.0, 0.0), c(0.0, 0.0))?;
        modular.push((e.series, e.distance.lo));
    }
    let autos = [c(0.5, 0.0), c(-0.3, 0.4), c(0.0, 0.8)].iter().map(|&a| (automorphism_series(order, a), 1.0 - a.norm())).collect();
    Ok(vec![
        ("identity".to_string(), vec![(id.series, id.distance.lo)]),
        ("modular".to_string(), modular),
        ("automorphisms".to_string(), autos),
    ])
}

pub fn suite_radius_scan(order: usize) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    for (label, family) in radius_scan_families(order)? {
        let r = bohr_radius_scan(&family)?;
        out.push(VerificationRecord::new(format!("radius-scan/{label}"), E_MINUS_PI, r, 0.0).with("radius", r).with("members", family.len() as u64));
    }
    Ok(out)
}

/// Constants, coefficient positivity, the max-modulus principle on small
/// circles and the radius `ρ(α)`.
pub fn suite_modular(order: usize) -> Result<Vec<VerificationRecord>> {
    let q = E_MINUS_PI;
    let exp = coefficients_of_minus_j_minus(order);
    let mut out = vec![
        VerificationRecord::new("modular/J(e^-pi)=1/2", (eval_j(c(q, 0.0))? - c(0.5, 0.0)).norm(), 0.0, 1e-10),
        VerificationRecord::new("modular/|J(-e^-pi)|=1", (eval_j(c(-q, 0.0))?.norm() - 1.0).abs(), 0.0, 1e-10),
        VerificationRecord::new("modular/M0=16", (exp.m(0).unwrap_or(f64::NAN) - 16.0).abs(), 0.0, 0.0),
        VerificationRecord::strict("modular/M_n-positive", 0.0, exp.m_coeffs().iter().cloned().fold(f64::INFINITY, f64::min)),
        VerificationRecord::new("modular/series-at-e^-pi", (exp.partial_sum(q) - 1.0).abs(), 0.0, 1e-10),
        subordination_coefficient_check(&exp.j_series(), c(1.0, 0.0), &exp),
    ];
    for k in 1..=20 {
        let r = q * k as f64 / 20.0;
        let mm = max_modulus_on_circle(r, 720)?;
        let mut rec = VerificationRecord::new(format!("modular/max-at-minus-r/{k:02}of20"), mm.max_value, mm.value_at_minus_r, 1e-12);
        rec.passed &= mm.argmax_at_minus_r();
        out.push(rec);
    }
    let mm = max_modulus_on_circle(q, 720)?;
    out.push(VerificationRecord::new("modular/max-modulus-at-e^-pi", (mm.max_value - 1.0).abs(), 0.0, 1e-9));
    let rho = lemma17_radius(PI)?;
    out.push(VerificationRecord::strict("modular/rho(pi)>e^-pi", q, rho).with("rho", rho));
    out.push(
        VerificationRecord::new("modular/rho-threshold-0.26", lemma17_radius(lemma17_threshold(0.26)?)?, 0.26, 1e-12)
            .with("alpha", lemma17_threshold(0.26)?),
    );
    let scan = univalence_scan(q, 64)?;
    out.push(VerificationRecord::new("modular/univalent-at-e^-pi", if scan.injective { 0.0 } else { 1.0 }, 0.0, 0.0));
    Ok(out)
}

/// 50 seeded points per canonical cover, Koebe bounds at the origin and
/// closed-form densities where available.
pub fn suite_hyperbolic(seed: u64) -> Result<Vec<VerificationRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for cover in canonical_covers() {
        for i in 0..50 {
            let z = loop {
                let r = 0.95 * rng.gen::<f64>().sqrt();
                let z = C64::from_polar(r, rng.gen_range(0.0..2.0 * PI));
                if (cover.resolvable)(z) {
                    break z;
                }
            };
            let mut rec = check_cover_point(&cover, z)?;
            rec.name = format!("{}/pt{i:02}", rec.name);
            out.push(rec);
            if cover.target.density(cover.eval(z)).is_some() {
                let mut rec = check_distance_density(&cover.target, cover.eval(z))?;
                rec.name = format!("{}/closed-form/pt{i:02}", rec.name);
                out.push(rec);
            }
        }
        out.push(check_koebe_bounds(&cover, c(0.0, 0.0))?);
    }
    Ok(out)
}

/// Seeded checks of `M(f+g) <= M(f) + M(g)` and `M(fg) <= M(f) M(g)`.
pub fn suite_algebra(order: usize, seed: u64) -> Result<Vec<VerificationRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let poly = |rng: &mut ChaCha8Rng| {
        let coeffs = (0..=order.min(12)).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        TruncatedSeries::exact(coeffs)
    };
    let mut out = Vec::new();
    for i in 0..20 {
        let f = poly(&mut rng);
        let g = poly(&mut rng);
        let r = rng.gen_range(0.0..0.99);
        let (mf, mg) = (f.bohr_majorant(r, 0)?.value, g.bohr_majorant(r, 0)?.value);
        out.push(VerificationRecord::new(format!("algebra/subadditive/{i:02}"), f.add(&g).bohr_majorant(r, 0)?.value, mf + mg, 1e-12));
        out.push(VerificationRecord::new(format!("algebra/submultiplicative/{i:02}"), f.mul(&g).bohr_majorant(r, 0)?.value, mf * mg, 1e-12));
    }
    Ok(out)
}

/// Used by the CLI's modular subcommand.
pub fn modular_expansion(order: usize) -> ModularExpansion {
    coefficients_of_minus_j_minus(order)
}
