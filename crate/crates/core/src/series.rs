//! Truncated complex power series with certified tails and the Bohr majorant.
//!
//! A [`TruncatedSeries`] stores `a_0..a_N` together with a list of coefficient
//! envelopes. Each [`Envelope`] bounds the error coefficients `e_n` (true
//! coefficient minus stored one, stored coefficients are zero past `N`) by
//! `weight * radius^-n` for `n >= start`. Summing the envelopes at a radius
//! `r` gives a certified bound on `sum |e_n| r^n`, which is what
//! [`TruncatedSeries::bohr_majorant`] adds to produce its `upper` value.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance on the constant term of an inner map passed to `compose`.
pub const SCHWARZ_TOL: f64 = 1e-12;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 64;

/// Shrink factor applied to an envelope radius when differentiating.
const DIFF_SHRINK: f64 = 0.9;

/// Coefficient envelope: `|e_n| <= weight * radius^-n` for every `n >= start`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub weight: f64,
    pub radius: f64,
    pub start: usize,
}

impl Envelope {
    pub fn new(weight: f64, radius: f64, start: usize) -> Self {
        Envelope { weight, radius, start }
    }

    /// Bound on `sum_{n >= start} |e_n| r^n`.
    pub fn at(&self, r: f64) -> f64 {
        if self.weight == 0.0 {
            return 0.0;
        }
        if !(r < self.radius) || !self.weight.is_finite() {
            return f64::INFINITY;
        }
        let q = r / self.radius;
        self.weight * pow_usize(q, self.start) / (1.0 - q)
    }
}

fn pow_usize(x: f64, n: usize) -> f64 {
    if n > i32::MAX as usize {
        return if x < 1.0 { 0.0 } else { f64::INFINITY };
    }
    x.powi(n as i32)
}

/// Value of the Bohr operator at a radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BohrValue {
    pub value: f64,
    pub radius: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<C64>,
    sample_radius: f64,
    tail: Vec<Envelope>,
}

impl TruncatedSeries {
    /// Series whose stored coefficients are exact and whose remaining
    /// coefficients are zero (a polynomial).
    pub fn exact(coeffs: Vec<C64>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![C64::new(0.0, 0.0)] } else { coeffs };
        TruncatedSeries { coeffs, sample_radius: 1.0, tail: Vec::new() }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::exact(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::exact(vec![C64::new(0.0, 0.0); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); order + 1];
        c[0] = C64::new(1.0, 0.0);
        Self::exact(c)
    }

    /// The identity map `z`, padded to `order`.
    pub fn identity(order: usize) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); order.max(1) + 1];
        c[1] = C64::new(1.0, 0.0);
        Self::exact(c)
    }

    /// Build `a_0..a_order` from a coefficient function.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> C64) -> Self {
        Self::exact((0..=order).map(f).collect())
    }

    pub fn with_tail(mut self, env: Envelope) -> Self {
        if env.weight != 0.0 {
            self.tail.push(env);
        }
        self
    }

    pub fn with_sample_radius(mut self, r: f64) -> Self {
        self.sample_radius = r;
        self
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> C64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn sample_radius(&self) -> f64 {
        self.sample_radius
    }

    pub fn envelopes(&self) -> &[Envelope] {
        &self.tail
    }

    pub fn is_exact(&self) -> bool {
        self.tail.is_empty()
    }

    /// Certified bound on the omitted/erroneous part at radius `r`.
    pub fn tail_bound(&self, r: f64) -> f64 {
        self.tail.iter().map(|e| e.at(r)).sum()
    }

    /// Radius below which every envelope is finite.
    pub fn certified_radius(&self) -> f64 {
        self.tail.iter().map(|e| e.radius).fold(f64::INFINITY, f64::min)
    }

    fn tail_start(&self) -> usize {
        self.tail.iter().map(|e| e.start).min().unwrap_or(usize::MAX)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_derivative(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, (n, &c)| acc * z + c * n as f64)
    }

    fn abs_sum(&self, r: f64, from: usize) -> f64 {
        let mut p = pow_usize(r, from);
        let mut s = 0.0;
        for c in self.coeffs.iter().skip(from) {
            s += c.norm() * p;
            p *= r;
        }
        s
    }

    /// Upper value of the majorant at any nonnegative radius, without the
    /// `r < 1` restriction. Used internally for composition bounds.
    fn majorant_upper(&self, r: f64) -> f64 {
        self.abs_sum(r, 0) + self.tail_bound(r)
    }

    /// `sum_{n >= from_index} |a_n| r^n`, plus the scaled tail in `upper`.
    pub fn bohr_majorant(&self, r: f64, from_index: usize) -> Result<BohrValue> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::InvalidRadius(r));
        }
        if from_index > self.order() {
            return Err(Error::InvalidIndex { index: from_index, order: self.order() });
        }
        let value = self.abs_sum(r, from_index);
        Ok(BohrValue { value, radius: r, upper: value + self.tail_bound(r) })
    }

    /// Output order for binary operations: polynomials pad freely, series
    /// with a tail cap the order.
    fn joint_order(&self, other: &Self) -> usize {
        match (self.is_exact(), other.is_exact()) {
            (true, true) => self.order().max(other.order()),
            (true, false) => other.order(),
            (false, true) => self.order(),
            (false, false) => self.order().min(other.order()),
        }
    }

    fn joint_sample_radius(&self, other: &Self) -> f64 {
        self.sample_radius.min(other.sample_radius)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().max(other.order());
        let coeffs = (0..=n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        let mut tail = self.tail.clone();
        tail.extend_from_slice(&other.tail);
        TruncatedSeries { coeffs, sample_radius: self.joint_sample_radius(other), tail }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Self {
        let m = c.norm();
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
            sample_radius: self.sample_radius,
            tail: self
                .tail
                .iter()
                .map(|e| Envelope { weight: e.weight * m, ..*e })
                .filter(|e| e.weight != 0.0)
                .collect(),
        }
    }

    pub fn add_constant(&self, c: C64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// `f(s z)` for a complex scale `s`.
    pub fn dilate(&self, s: C64) -> Self {
        let m = s.norm();
        let mut p = C64::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| {
                let v = a * p;
                p *= s;
                v
            })
            .collect();
        let tail = self
            .tail
            .iter()
            .map(|e| Envelope { radius: if m == 0.0 { f64::INFINITY } else { e.radius / m }, ..*e })
            .collect();
        TruncatedSeries { coeffs, sample_radius: self.sample_radius, tail }
    }

    /// Multiply by `z`.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        let tail = self
            .tail
            .iter()
            .map(|e| Envelope { weight: e.weight * e.radius, radius: e.radius, start: e.start + 1 })
            .collect();
        TruncatedSeries { coeffs, sample_radius: self.sample_radius, tail }
    }

    /// `(f(z) - f(0)) / z`.
    pub fn shift_down(&self) -> Self {
        let coeffs = if self.coeffs.len() > 1 { self.coeffs[1..].to_vec() } else { vec![C64::default()] };
        let tail = self
            .tail
            .iter()
            .map(|e| Envelope { weight: e.weight / e.radius, radius: e.radius, start: e.start.saturating_sub(1) })
            .collect();
        TruncatedSeries { coeffs, sample_radius: self.sample_radius, tail }
    }

    /// Cauchy product. The error of the result is bounded at a reference
    /// radius by `upper(s) * upper(t) - M(s t truncated)` and stored as an
    /// envelope at that radius.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.joint_order(other);
        let coeffs = cauchy_product(&self.coeffs, &other.coeffs, n);
        let mut out = TruncatedSeries {
            coeffs,
            sample_radius: self.joint_sample_radius(other),
            tail: Vec::new(),
        };
        let dropped = self.order() + other.order() > n;
        if self.is_exact() && other.is_exact() && !dropped {
            return out;
        }
        let rho = 0.9 * self.certified_radius().min(other.certified_radius()).min(1.0);
        let bound = self.majorant_upper(rho) * other.majorant_upper(rho) - out.abs_sum(rho, 0);
        let start = self.tail_start().min(other.tail_start()).min(n + 1);
        out.tail.push(Envelope::new(bound.max(0.0), rho, start));
        out.tail.retain(|e| e.weight != 0.0);
        out
    }

    /// Taylor coefficients of `self ∘ inner` by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let c0 = inner.coeff(0).norm();
        if c0 > SCHWARZ_TOL {
            return Err(Error::NonSchwarzInner(c0));
        }
        let n = self.joint_order(inner);
        let mut g = inner.coeffs.clone();
        g.truncate(n + 1);
        g[0] = C64::new(0.0, 0.0);
        let mut acc = vec![C64::new(0.0, 0.0); n + 1];
        for k in (0..=self.order()).rev() {
            acc = cauchy_product(&acc, &g, n);
            acc[0] += self.coeff(k);
        }
        let mut out = TruncatedSeries {
            coeffs: acc,
            sample_radius: self.joint_sample_radius(inner),
            tail: Vec::new(),
        };
        let dropped = self.order() * inner.order() > n;
        if self.is_exact() && inner.is_exact() && !dropped {
            return Ok(out);
        }
        let outer_limit = self.certified_radius();
        let mut rho = 0.9 * inner.certified_radius().min(1.0);
        let mut weight = f64::INFINITY;
        for _ in 0..64 {
            let g_up = inner.majorant_upper(rho);
            if g_up < outer_limit {
                weight = (self.majorant_upper(g_up) - out.abs_sum(rho, 0)).max(0.0);
                break;
            }
            rho *= 0.5;
        }
        let start = self.tail_start().min(inner.tail_start()).min(n + 1);
        if weight != 0.0 {
            out.tail.push(Envelope::new(weight, rho, start));
        }
        Ok(out)
    }

    pub fn differentiate(&self) -> Self {
        let n = self.order();
        let coeffs = if n == 0 {
            vec![C64::new(0.0, 0.0)]
        } else {
            (1..=n).map(|k| self.coeffs[k] * k as f64).collect()
        };
        let k = max_linear_geometric(DIFF_SHRINK);
        let tail = self
            .tail
            .iter()
            .map(|e| Envelope {
                weight: e.weight * k / e.radius,
                radius: e.radius * DIFF_SHRINK,
                start: e.start.saturating_sub(1),
            })
            .collect();
        TruncatedSeries { coeffs, sample_radius: self.sample_radius, tail }
    }

    /// Termwise antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C64::new(0.0, 0.0));
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, &a)| a / (k + 1) as f64));
        let tail = self
            .tail
            .iter()
            .map(|e| Envelope { weight: e.weight * e.radius, radius: e.radius, start: e.start + 1 })
            .collect();
        TruncatedSeries { coeffs, sample_radius: self.sample_radius, tail }
    }

    pub fn to_record(&self, r: f64) -> SeriesRecord {
        SeriesRecord {
            coeffs: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            order: self.order(),
            tail_bound: self.tail_bound(r),
        }
    }
}

/// JSON form of a series: `[re, im]` pairs plus order and the tail bound at
/// the radius the report uses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub coeffs: Vec<[f64; 2]>,
    pub order: usize,
    pub tail_bound: f64,
}

impl SeriesRecord {
    pub fn to_series(&self) -> TruncatedSeries {
        TruncatedSeries::exact(self.coeffs.iter().map(|p| C64::new(p[0], p[1])).collect())
    }
}

/// `max_n (n+1) theta^n` for `0 < theta < 1`.
fn max_linear_geometric(theta: f64) -> f64 {
    let mut best = 1.0;
    let mut p = 1.0;
    for n in 1..100_000usize {
        p *= theta;
        let v = (n + 1) as f64 * p;
        if v < best {
            break;
        }
        best = v;
    }
    best
}

pub(crate) fn cauchy_product(a: &[C64], b: &[C64], order: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); order + 1];
    for (i, &x) in a.iter().enumerate().take(order + 1) {
        if x == C64::new(0.0, 0.0) {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Approximate Taylor coefficients of `f` from `K = 4 * order` samples on the
/// circle `|z| = radius` (discretized Cauchy integral).
///
/// The tail carries three envelopes: truncation and aliasing, both from a
/// Cauchy estimate with the sampled maximum of `|f|` on an outer circle
/// halfway to the unit circle, and floating-point round-off at `radius`.
pub fn extract_coefficients<F>(f: F, radius: f64, order: usize) -> Result<TruncatedSeries>
where
    F: Fn(C64) -> C64,
{
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InvalidRadius(radius));
    }
    let order = order.max(1);
    let k = 4 * order;
    let nodes: Vec<C64> = (0..k).map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64)).collect();
    let mut values = Vec::with_capacity(k);
    let mut max_inner: f64 = 0.0;
    for &w in &nodes {
        let z = w * radius;
        let v = f(z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::EvaluationFailure { re: z.re, im: z.im });
        }
        max_inner = max_inner.max(v.norm());
        values.push(v);
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut rn = 1.0;
    for n in 0..=order {
        let mut s = C64::new(0.0, 0.0);
        for (j, v) in values.iter().enumerate() {
            // ζ_j^{-n} = nodes[(k - (j n mod k)) mod k]
            let idx = (k - (j * n) % k) % k;
            s += v * nodes[idx];
        }
        coeffs.push(s / (k as f64 * rn));
        rn *= radius;
    }

    let outer = radius + 0.5 * (1.0 - radius);
    let mut max_outer: f64 = 0.0;
    let mut outer_ok = true;
    for &w in &nodes {
        let v = f(w * outer);
        if !(v.re.is_finite() && v.im.is_finite()) {
            outer_ok = false;
            break;
        }
        max_outer = max_outer.max(v.norm());
    }
    let mut series = TruncatedSeries::exact(coeffs).with_sample_radius(radius);
    if outer_ok {
        let cauchy = 1.05 * max_outer;
        let q = (radius / outer).powi(k as i32);
        series = series
            .with_tail(Envelope::new(cauchy, outer, order + 1))
            .with_tail(Envelope::new(cauchy * q / (1.0 - q), outer, 0));
    } else {
        // Nothing is known past the sampling circle.
        series = series.with_tail(Envelope::new(f64::INFINITY, radius, order + 1));
    }
    let roundoff = 8.0 * f64::EPSILON * (k as f64).log2().max(1.0) * max_inner;
    Ok(series.with_tail(Envelope::new(roundoff, radius, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn add_coefficientwise() {
        let s = TruncatedSeries::from_real(&[1.0, 1.0, 1.0]);
        let t = TruncatedSeries::from_real(&[1.0, -1.0, 0.0]);
        assert_eq!(s.add(&t).coeffs(), &[c(2.0), c(0.0), c(1.0)]);
        assert_eq!(s.add(&TruncatedSeries::zero(0)), s);
    }

    #[test]
    fn add_sums_tails() {
        let s = TruncatedSeries::from_real(&[1.0]).with_tail(Envelope::new(1.0, 0.5, 1));
        let t = TruncatedSeries::from_real(&[0.0, 2.0]).with_tail(Envelope::new(2.0, 0.5, 2));
        let u = s.add(&t);
        assert_eq!(u.order(), 1);
        assert!((u.tail_bound(0.25) - (s.tail_bound(0.25) + t.tail_bound(0.25))).abs() < 1e-15);
    }

    #[test]
    fn geometric_square() {
        let g = TruncatedSeries::from_real(&[1.0; 5]);
        let sq = g.mul(&g);
        let want: Vec<C64> = (1..=5).map(|k| c(k as f64)).collect();
        assert_eq!(sq.coeffs(), want.as_slice());
        // dropped degree 5..8 terms must be covered by the tail
        let r: f64 = 0.3;
        let dropped: f64 = [4.0, 3.0, 2.0, 1.0].iter().enumerate().map(|(i, w)| w * r.powi(5 + i as i32)).sum();
        assert!(sq.tail_bound(r) >= dropped);
    }

    #[test]
    fn unit_is_multiplicative_identity() {
        let s = TruncatedSeries::from_real(&[0.5, -2.0, 3.0, 0.25]);
        assert_eq!(s.mul(&TruncatedSeries::one(3)).coeffs(), s.coeffs());
        assert_eq!(TruncatedSeries::one(10).bohr_majorant(0.7, 0).unwrap().value, 1.0);
    }

    #[test]
    fn compose_identity_and_substitution() {
        let s = TruncatedSeries::from_real(&[0.5, -2.0, 3.0, 0.25]);
        let id = TruncatedSeries::identity(3);
        assert_eq!(s.compose(&id).unwrap().coeffs(), s.coeffs());

        let geo = TruncatedSeries::from_real(&[1.0; 9]);
        let z2 = TruncatedSeries::from_real(&[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let out = geo.compose(&z2).unwrap();
        let want = [1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0];
        for (a, b) in out.coeffs().iter().zip(want) {
            assert!((a - c(b)).norm() < 1e-15);
        }
    }

    #[test]
    fn compose_exp_chain_rule() {
        let fact = |n: usize| (1..=n).map(|k| k as f64).product::<f64>();
        let exp = TruncatedSeries::from_fn(12, |n| c(1.0 / fact(n)));
        let two_z = TruncatedSeries::from_real(&[0.0, 2.0]);
        let out = exp.compose(&two_z).unwrap();
        assert!((out.coeff(3).re - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let s = TruncatedSeries::from_real(&[1.0, 1.0]);
        let inner = TruncatedSeries::from_real(&[1e-6, 1.0]);
        assert!(matches!(s.compose(&inner), Err(Error::NonSchwarzInner(_))));
        let inner = TruncatedSeries::from_real(&[1e-13, 1.0]);
        assert!(s.compose(&inner).is_ok());
    }

    #[test]
    fn calculus_rules() {
        let k = TruncatedSeries::from_real(&[3.0]);
        assert!(k.differentiate().coeffs().iter().all(|c| c.norm() == 0.0));
        let s = TruncatedSeries::from_real(&[1.0, 1.0, 1.0]);
        let i = s.integrate();
        assert_eq!(i.coeffs(), &[c(0.0), c(1.0), c(0.5), c(1.0 / 3.0)]);
        assert_eq!(i.differentiate().coeffs(), s.coeffs());
    }

    #[test]
    fn bohr_values() {
        assert_eq!(TruncatedSeries::zero(5).bohr_majorant(0.5, 0).unwrap().value, 0.0);
        let geo = TruncatedSeries::from_real(&[1.0; 65]);
        let v = geo.bohr_majorant(1.0 / 3.0, 0).unwrap();
        assert!((v.value - 1.5).abs() < 1e-15);
        let r = (-PI).exp();
        let koebe = TruncatedSeries::from_fn(64, |n| c(n as f64));
        let v = koebe.bohr_majorant(r, 1).unwrap();
        assert!((v.value - r / (1.0 - r).powi(2)).abs() < 1e-15);
        assert!((v.value - 0.047205).abs() < 1e-6);
    }

    #[test]
    fn bohr_rejects_bad_radius() {
        let s = TruncatedSeries::one(2);
        assert!(matches!(s.bohr_majorant(1.0, 0), Err(Error::InvalidRadius(_))));
        assert!(matches!(s.bohr_majorant(-0.1, 0), Err(Error::InvalidRadius(_))));
        assert!(matches!(s.bohr_majorant(0.5, 3), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn extraction_identity_and_exp() {
        let s = extract_coefficients(|z| z, 0.5, 16).unwrap();
        for n in 0..=16 {
            let want = if n == 1 { 1.0 } else { 0.0 };
            // round-off is amplified by 0.5^{-n}
            assert!((s.coeff(n) - c(want)).norm() < 1e-15 * 2f64.powi(n as i32), "n={n}");
        }
        let e = extract_coefficients(|z: C64| z.exp(), 0.5, 16).unwrap();
        assert!((e.coeff(3) - c(1.0 / 6.0)).norm() < 1e-12);
        // aliasing with K = 64 nodes dominates: (0.5 / 0.75)^64 ~ 5e-12
        assert!(e.tail_bound((-PI).exp()) < 1e-10);
    }

    #[test]
    fn extraction_reports_non_finite() {
        let r = extract_coefficients(|z: C64| if z.re > 0.49 { C64::new(f64::NAN, 0.0) } else { z }, 0.5, 4);
        assert!(matches!(r, Err(Error::EvaluationFailure { .. })));
    }

    #[test]
    fn tails_survive_calculus() {
        let s = extract_coefficients(|z: C64| (C64::new(1.0, 0.0) - z).inv(), 0.5, 16).unwrap();
        let r = 0.2;
        // true Bohr value of 1/(1-z)^2 at r versus certified upper bound
        let d = s.differentiate().bohr_majorant(r, 0).unwrap();
        assert!(d.upper >= 1.0 / (1.0 - r).powi(2) - 1e-12);
        let i = s.integrate().bohr_majorant(r, 0).unwrap();
        assert!(i.upper >= -(1.0f64 - r).ln() - 1e-12);
    }
}
