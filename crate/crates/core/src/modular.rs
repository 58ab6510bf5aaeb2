//! The elliptic modular function
//!
//! ```text
//! J(z) = 16 z ∏_{n≥1} [(1 + z^{2n}) / (1 + z^{2n-1})]^8 ,   |z| < 1,
//! ```
//!
//! (the modular lambda function in the nome), the positive expansion
//! `-J(-z) = z Σ M_n z^n`, and the numerical checks built on them.

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::VerificationRecord;
use crate::series::{Envelope, TruncatedSeries, C64};

/// Factors with `|z|^{2n-1}` below this are dropped from the product.
pub const PRODUCT_CUTOFF: f64 = 1e-18;
/// Minimum modulus of a denominator factor `1 + z^{2n-1}`.
pub const POLE_GUARD: f64 = 1e-12;
/// Nome used for the Cauchy estimate on `M_n`.
const ENVELOPE_NOME: f64 = 0.5;

struct ProductTerms {
    /// ∏ (1+z^{2n})/(1+z^{2n-1})
    product: C64,
    /// d/dz log of the product
    log_derivative: C64,
}

fn product_terms(z: C64) -> Result<ProductTerms> {
    let m = z.norm();
    if !(m < 1.0) {
        return Err(Error::DomainError(format!("|z| = {m} is not inside the unit disk")));
    }
    let one = C64::new(1.0, 0.0);
    let mut product = one;
    let mut log_derivative = C64::new(0.0, 0.0);
    if m == 0.0 {
        return Ok(ProductTerms { product, log_derivative });
    }
    let z2 = z * z;
    // z^{2n-2}, z^{2n-1}, z^{2n}
    let mut p_even_prev = one;
    let mut n = 1usize;
    loop {
        let p_odd = p_even_prev * z;
        let p_even = p_odd * z;
        let odd_mod = p_odd.norm();
        if odd_mod < PRODUCT_CUTOFF && (2 * n) as f64 * p_even_prev.norm() < PRODUCT_CUTOFF {
            break;
        }
        let den = one + p_odd;
        if den.norm() < POLE_GUARD {
            return Err(Error::PoleProximity(den.norm()));
        }
        let num = one + p_even;
        product *= num / den;
        let k = n as f64;
        log_derivative += (2.0 * k) * p_odd / num - (2.0 * k - 1.0) * p_even_prev / den;
        p_even_prev *= z2;
        n += 1;
    }
    Ok(ProductTerms { product, log_derivative })
}

/// `J(z)` from the infinite product.
pub fn eval_j(z: C64) -> Result<C64> {
    let t = product_terms(z)?;
    Ok(16.0 * z * t.product.powi(8))
}

/// `J'(z)` from the logarithmic derivative of the product.
pub fn eval_j_derivative(z: C64) -> Result<C64> {
    let t = product_terms(z)?;
    let p8 = t.product.powi(8);
    Ok(16.0 * p8 * (C64::new(1.0, 0.0) + 8.0 * z * t.log_derivative))
}

/// `-J(-x)` for real `0 <= x < 1`; equal to `Σ M_n x^{n+1}`.
pub fn minus_j_minus(x: f64) -> Result<f64> {
    Ok(-eval_j(C64::new(-x, 0.0))?.re)
}

/// Coefficients `M_0..M_N` of `-J(-z) = z Σ M_n z^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularExpansion {
    m_coeffs: Vec<f64>,
}

/// Exact integer coefficients `M_0..M_order`.
pub fn exact_minus_j_minus_coefficients(order: usize) -> Vec<BigUint> {
    let n = order;
    let mut a: Vec<BigUint> = vec![BigUint::zero(); n + 1];
    a[0] = BigUint::from(16u32);
    let mut k = 1usize;
    while 2 * k - 1 <= n {
        let odd = 2 * k - 1;
        // (1 - z^odd)^{-8}: eight passes of the running sum with stride `odd`
        for _ in 0..8 {
            for i in odd..=n {
                let prev = a[i - odd].clone();
                a[i] += prev;
            }
        }
        let even = 2 * k;
        if even <= n {
            // (1 + z^even)^8
            for _ in 0..8 {
                for i in (even..=n).rev() {
                    let prev = a[i - even].clone();
                    a[i] += prev;
                }
            }
        }
        k += 1;
    }
    a
}

pub fn coefficients_of_minus_j_minus(order: usize) -> ModularExpansion {
    let m_coeffs = exact_minus_j_minus_coefficients(order.max(1))
        .iter()
        .map(|b| b.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    ModularExpansion { m_coeffs }
}

impl ModularExpansion {
    pub fn m_coeffs(&self) -> &[f64] {
        &self.m_coeffs
    }

    pub fn order(&self) -> usize {
        self.m_coeffs.len() - 1
    }

    /// `M_n`, or `None` past the computed order.
    pub fn m(&self, n: usize) -> Option<f64> {
        self.m_coeffs.get(n).copied()
    }

    pub fn all_positive(&self) -> bool {
        self.m_coeffs.iter().all(|&m| m > 0.0)
    }

    /// Smallest second difference `M_{n+1} - 2 M_n + M_{n-1}` relative to `M_n`.
    pub fn min_relative_second_difference(&self) -> f64 {
        self.m_coeffs
            .windows(3)
            .map(|w| (w[2] - 2.0 * w[1] + w[0]) / w[1])
            .fold(f64::INFINITY, f64::min)
    }

    /// `Σ M_n x^{n+1}` over the stored coefficients.
    pub fn partial_sum(&self, x: f64) -> f64 {
        let mut p = x;
        let mut s = 0.0;
        for &m in &self.m_coeffs {
            s += m * p;
            p *= x;
        }
        s
    }

    /// `-J(-z)` as a series of order `N + 1` with a Cauchy-estimate tail
    /// (`M_n s^{n+1} <= -J(-s)`).
    pub fn to_series(&self) -> TruncatedSeries {
        let mut coeffs = vec![C64::new(0.0, 0.0)];
        coeffs.extend(self.m_coeffs.iter().map(|&m| C64::new(m, 0.0)));
        let cauchy = minus_j_minus(ENVELOPE_NOME).expect("nome inside the disk");
        TruncatedSeries::exact(coeffs).with_tail(Envelope::new(cauchy, ENVELOPE_NOME, self.order() + 2))
    }

    /// `J(z) = Σ (-1)^n M_n z^{n+1}` as a series.
    pub fn j_series(&self) -> TruncatedSeries {
        self.to_series().dilate(C64::new(-1.0, 0.0)).scale(C64::new(-1.0, 0.0))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxModulus {
    pub radius: f64,
    pub argmax: C64,
    pub max_value: f64,
    /// `|J(-r)|`
    pub value_at_minus_r: f64,
    /// Angular grid step.
    pub grid_step: f64,
    /// Angular distance of the argmax from `π`.
    pub angle_offset: f64,
}

impl MaxModulus {
    pub fn argmax_at_minus_r(&self) -> bool {
        self.angle_offset <= self.grid_step * (1.0 + 1e-9)
    }
}

/// Maximum of `|J|` over `samples` equispaced points of `|z| = r`.
pub fn max_modulus_on_circle(r: f64, samples: usize) -> Result<MaxModulus> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidRadius(r));
    }
    if samples < 360 {
        return Err(Error::DomainError(format!("{samples} samples; at least 360 required")));
    }
    let step = 2.0 * PI / samples as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for k in 0..samples {
        let v = eval_j(C64::from_polar(r, k as f64 * step))?.norm();
        if v > best.1 {
            best = (k, v);
        }
    }
    let theta = best.0 as f64 * step;
    Ok(MaxModulus {
        radius: r,
        argmax: C64::from_polar(r, theta),
        max_value: best.1,
        value_at_minus_r: eval_j(C64::new(-r, 0.0))?.norm(),
        grid_step: step,
        angle_offset: (theta - PI).abs(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnivalenceScanResult {
    pub radius_tested: f64,
    pub injective: bool,
    pub witness_pair: Option<(C64, C64)>,
}

/// Winding number of the closed polyline `curve` around `p`.
pub(crate) fn winding_number(curve: &[C64], p: C64) -> i64 {
    let mut total = 0.0;
    for i in 0..curve.len() {
        let a = curve[i] - p;
        let b = curve[(i + 1) % curve.len()] - p;
        total += (b / a).arg();
    }
    (total / (2.0 * PI)).round() as i64
}

fn polar_grid(radius: f64, density: usize) -> Vec<C64> {
    let d = density as f64;
    let rings = (radius * d).floor() as usize;
    let mut pts = Vec::new();
    for i in 1..=rings {
        let rho = i as f64 / d;
        if rho >= radius {
            break;
        }
        let m = ((2.0 * PI * rho * d).ceil() as usize).max(8);
        for k in 0..m {
            // half-step stagger avoids the real axis symmetry line
            let theta = 2.0 * PI * (k as f64 + 0.5 * (i % 2) as f64) / m as f64;
            pts.push(C64::from_polar(rho, theta));
        }
    }
    pts
}

fn newton_preimage(target: C64, start: C64, limit: f64) -> Option<C64> {
    let mut z = start;
    for _ in 0..60 {
        let f = eval_j(z).ok()? - target;
        let d = eval_j_derivative(z).ok()?;
        if d.norm() == 0.0 {
            return None;
        }
        let step = f / d;
        z -= step;
        if !(z.norm() <= limit) {
            return None;
        }
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    Some(z)
}

/// Refutation search for injectivity of `J` on `|z| <= radius`.
///
/// Grid points `w = J(z)` are tested with the argument principle against the
/// image of the circle: a winding number above one means `J - w` has several
/// zeros inside, and Newton's method from the grid then locates a second
/// preimage as the witness. `injective = true` only means no collision was
/// found.
pub fn univalence_scan(radius: f64, grid_density: usize) -> Result<UnivalenceScanResult> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InvalidRadius(radius));
    }
    let density = grid_density.max(50);
    let boundary_n = ((16.0 * PI * radius * density as f64).ceil() as usize).max(2048);
    let curve: Vec<C64> = (0..boundary_n)
        .map(|k| eval_j(C64::from_polar(radius, 2.0 * PI * k as f64 / boundary_n as f64)))
        .collect::<Result<_>>()?;
    let max_gap = (0..boundary_n)
        .map(|i| (curve[(i + 1) % boundary_n] - curve[i]).norm())
        .fold(0.0, f64::max);
    let grid = polar_grid(radius, density);
    let mut result = UnivalenceScanResult { radius_tested: radius, injective: true, witness_pair: None };
    for &z1 in &grid {
        let w = eval_j(z1)?;
        let clearance = curve.iter().map(|c| (c - w).norm()).fold(f64::INFINITY, f64::min);
        if clearance < 2.0 * max_gap {
            continue;
        }
        if winding_number(&curve, w) <= 1 {
            continue;
        }
        let tol = 1e-9 * (1.0 + eval_j_derivative(z1)?.norm());
        for &z0 in &grid {
            if (z0 - z1).norm() < 1e-3 {
                continue;
            }
            if let Some(z2) = newton_preimage(w, z0, radius) {
                if (z2 - z1).norm() > 1e-6 && (eval_j(z2)? - w).norm() < tol {
                    result.injective = false;
                    result.witness_pair = Some((z1, z2));
                    return Ok(result);
                }
            }
        }
    }
    Ok(result)
}

/// `ρ(α) = 1 + α - sqrt((1+α)^2 - 1)`, computed as `1 / (1 + α + sqrt(α^2 + 2α))`.
pub fn lemma17_radius(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::DomainError(format!("alpha = {alpha} must be positive and finite")));
    }
    Ok(1.0 / (1.0 + alpha + (alpha * alpha + 2.0 * alpha).sqrt()))
}

/// The `α` at which `ρ(α) = level`, for `0 < level < 1`.
pub fn lemma17_threshold(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::DomainError(format!("level {level} must lie in (0, 1)")));
    }
    let y = 1.0 / level;
    Ok(0.5 * (y + level) - 1.0)
}

/// Checks `|h_k| <= 16 |a| M_{k-1}` for `k >= 1`, i.e. against the `z^k`
/// coefficient of `-J(-z)` scaled by `16|a|`. Records the worst ratio.
pub fn subordination_coefficient_check(h: &TruncatedSeries, a: C64, expansion: &ModularExpansion) -> VerificationRecord {
    let scale = 16.0 * a.norm();
    let mut worst = 0.0f64;
    let mut worst_k = 0usize;
    for k in 1..=h.order() {
        let Some(m) = expansion.m(k - 1) else { break };
        let ratio = h.coeff(k).norm() / (scale * m);
        if ratio > worst || ratio.is_nan() {
            worst = ratio;
            worst_k = k;
        }
    }
    VerificationRecord::new("subordination/coefficients", worst, 1.0, 0.0)
        .with("worst_index", worst_k as u64)
        .with("omitted_modulus", a.norm())
}
