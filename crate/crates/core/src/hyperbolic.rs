//! Hyperbolic densities of canonical domains, covering maps from the unit
//! disk, and the distance–density inequalities
//!
//! ```text
//! d(w, ∂D) λ_D(w) <= 1                           (any hyperbolic D)
//! 1/4 <= d(w, ∂D) λ_D(w)                         (D simply connected)
//! d(F(z), ∂D) <= |F'(z)| (1 - |z|^2)             (F a covering map)
//! |F'(z)| (1 - |z|^2) / 4 <= d(F(z), ∂D)         (F univalent)
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{eval_j, eval_j_derivative};
use crate::modular::winding_number;
use crate::report::VerificationRecord;
use crate::series::C64;

pub type MapFn = Arc<dyn Fn(C64) -> C64 + Send + Sync>;

/// Slack allowed on the distance–density inequalities.
pub const DENSITY_TOL: f64 = 1e-9;
/// Boundary samples for sampled distances.
pub const BOUNDARY_SAMPLES: usize = 4096;
/// Circle used as a stand-in for the unit circle when sampling images.
/// Segment tests per circle in the winding-region bound.
const COVER_TESTS: usize = 48;
pub const SAMPLED_BOUNDARY_RADIUS: f64 = 0.999;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    UnitDisk,
    HalfPlane,
    Strip,
    SlitPlane,
    DiskWithCenterRadius,
    PuncturedDisk,
    TwicePuncturedPlane,
    SampledImage,
}

#[derive(Clone)]
enum Geometry {
    UnitDisk,
    Disk { center: C64, radius: f64 },
    /// `Re w > 0`
    RightHalfPlane,
    /// `|Im w| < half_width`
    Strip { half_width: f64 },
    /// `C \ (-∞, tip]`
    Slit { tip: f64 },
    /// `0 < |w| < 1`
    PuncturedDisk,
    TwicePunctured { p: C64, q: C64 },
    /// `f(U)` for an analytic `f`; distances come from samples of
    /// `f` on `|z| = SAMPLED_BOUNDARY_RADIUS`.
    Image { f: MapFn, df: MapFn },
}

/// A hyperbolic test domain with its boundary distance and, where a closed
/// form exists, its hyperbolic density.
#[derive(Clone)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub label: String,
    pub omitted_points: Option<(C64, C64)>,
    pub simply_connected: bool,
    geometry: Geometry,
}

impl fmt::Debug for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DomainSpec")
            .field("kind", &self.kind)
            .field("label", &self.label)
            .field("omitted_points", &self.omitted_points)
            .field("simply_connected", &self.simply_connected)
            .finish()
    }
}

impl DomainSpec {
    fn new(kind: DomainKind, label: &str, omitted: (C64, C64), simply_connected: bool, geometry: Geometry) -> Self {
        DomainSpec {
            kind,
            label: label.to_string(),
            omitted_points: Some(omitted),
            simply_connected,
            geometry,
        }
    }

    pub fn unit_disk() -> Self {
        Self::new(DomainKind::UnitDisk, "unit-disk", (C64::new(1.0, 0.0), C64::new(-1.0, 0.0)), true, Geometry::UnitDisk)
    }

    pub fn disk(center: C64, radius: f64) -> Self {
        Self::new(
            DomainKind::DiskWithCenterRadius,
            &format!("disk(c={center},r={radius})"),
            (center + radius, center - radius),
            true,
            Geometry::Disk { center, radius },
        )
    }

    pub fn right_half_plane() -> Self {
        Self::new(DomainKind::HalfPlane, "right-half-plane", (C64::new(0.0, 0.0), C64::new(-1.0, 0.0)), true, Geometry::RightHalfPlane)
    }

    pub fn strip(half_width: f64) -> Self {
        Self::new(
            DomainKind::Strip,
            &format!("strip(|Im w|<{half_width})"),
            (C64::new(0.0, half_width), C64::new(0.0, -half_width)),
            true,
            Geometry::Strip { half_width },
        )
    }

    pub fn slit_plane(tip: f64) -> Self {
        Self::new(
            DomainKind::SlitPlane,
            &format!("slit-plane(tip={tip})"),
            (C64::new(tip, 0.0), C64::new(tip - 0.75, 0.0)),
            true,
            Geometry::Slit { tip },
        )
    }

    pub fn punctured_disk() -> Self {
        Self::new(DomainKind::PuncturedDisk, "punctured-disk", (C64::new(0.0, 0.0), C64::new(1.0, 0.0)), false, Geometry::PuncturedDisk)
    }

    pub fn twice_punctured_plane(p: C64, q: C64) -> Self {
        Self::new(
            DomainKind::TwicePuncturedPlane,
            &format!("plane-minus({p},{q})"),
            (p, q),
            false,
            Geometry::TwicePunctured { p, q },
        )
    }

    /// Image of the unit disk under `f`. `omitted` must be two distinct
    /// points outside the image; `simply_connected` is the caller's claim.
    pub fn sampled_image(label: &str, f: MapFn, df: MapFn, omitted: (C64, C64), simply_connected: bool) -> Self {
        Self::new(DomainKind::SampledImage, label, omitted, simply_connected, Geometry::Image { f, df })
    }

    pub fn with_omitted(mut self, a: C64, b: C64) -> Self {
        self.omitted_points = Some((a, b));
        self
    }

    /// Distance from `w` to the boundary. Exact for the closed-form kinds;
    /// for sampled images an upper bound: the distance to the omitted
    /// points, capped by refined boundary samples when the image is claimed
    /// simply connected.
    pub fn distance(&self, w: C64) -> f64 {
        match &self.geometry {
            Geometry::UnitDisk => 1.0 - w.norm(),
            Geometry::Disk { center, radius } => radius - (w - center).norm(),
            Geometry::RightHalfPlane => w.re,
            Geometry::Strip { half_width } => half_width - w.im.abs(),
            Geometry::Slit { tip } => {
                if w.re >= *tip {
                    (w - tip).norm()
                } else {
                    w.im.abs()
                }
            }
            Geometry::PuncturedDisk => w.norm().min(1.0 - w.norm()),
            Geometry::TwicePunctured { p, q } => (w - p).norm().min((w - q).norm()),
            // the image of a circle bounds the image only for univalent maps,
            // which is what a simply connected claim stands for here
            Geometry::Image { f, df } if self.simply_connected => {
                let (_, hi) = sampled_boundary_distance(f.as_ref(), df.as_ref(), w, SAMPLED_BOUNDARY_RADIUS, BOUNDARY_SAMPLES);
                self.omitted_distance(w).map_or(hi, |o| o.min(hi))
            }
            Geometry::Image { .. } => self.omitted_distance(w).unwrap_or(f64::INFINITY),
        }
    }

    fn omitted_distance(&self, w: C64) -> Option<f64> {
        self.omitted_points.map(|(a, b)| (w - a).norm().min((w - b).norm()))
    }

    /// `[lo, hi]` enclosing the distance from `f(0)` to the boundary, for
    /// sampled images. For closed-form kinds both ends equal `distance`.
    ///
    /// The lower end uses the argument principle: if `m = min |f - f(0)|`
    /// on `|z| = r`, the winding number of `f(|z|=r)` about every `w` with
    /// `|w - f(0)| < m` equals the one about `f(0)`, which is at least one,
    /// so that disk lies in the image.
    pub fn base_distance_interval(&self, base: C64) -> (f64, f64) {
        match &self.geometry {
            Geometry::Image { f, df } => {
                let lo = inscribed_radius_lower_bound(f.as_ref(), df.as_ref(), base, &default_radii(), 2048);
                (lo, self.distance(base))
            }
            _ => {
                let d = self.distance(base);
                (d, d)
            }
        }
    }

    /// Closed-form hyperbolic density, where one is known.
    pub fn density(&self, w: C64) -> Option<f64> {
        match &self.geometry {
            Geometry::UnitDisk => Some(1.0 / (1.0 - w.norm_sqr())),
            Geometry::Disk { center, radius } => Some(radius / (radius * radius - (w - center).norm_sqr())),
            Geometry::RightHalfPlane => Some(1.0 / (2.0 * w.re)),
            Geometry::Strip { half_width } => Some(PI / (4.0 * half_width * (PI * w.im / (2.0 * half_width)).cos())),
            Geometry::Slit { tip } => {
                // translate onto the Koebe image and invert the Koebe function
                let u = w - (tip + 0.25);
                let s = (1.0 + 4.0 * u).sqrt();
                let z = (s - 1.0) / (s + 1.0);
                let dk = (1.0 + z) / (1.0 - z).powi(3);
                Some(1.0 / (dk.norm() * (1.0 - z.norm_sqr())))
            }
            Geometry::PuncturedDisk => {
                let r = w.norm();
                Some(1.0 / (2.0 * r * (1.0 / r).ln()))
            }
            Geometry::TwicePunctured { .. } | Geometry::Image { .. } => None,
        }
    }

    pub fn contains(&self, w: C64) -> bool {
        match &self.geometry {
            Geometry::Image { .. } => self.omitted_distance(w).is_some_and(|d| d > 0.0),
            _ => self.distance(w) > 0.0,
        }
    }
}

/// Radii used for inscribed-disk lower bounds.
pub(crate) fn default_radii() -> Vec<f64> {
    let mut r: Vec<f64> = (1..=19).map(|k| k as f64 * 0.05).collect();
    r.extend([0.97, 0.99, 0.995, 0.999]);
    r
}

/// Lower bound on the radius of a disk about `f(0) = base` contained in
/// `f(U)`: the maximum over `radii` of the circle-minimum and
/// winding-region bounds.
pub fn inscribed_radius_lower_bound(
    f: &(dyn Fn(C64) -> C64 + Send + Sync),
    df: &(dyn Fn(C64) -> C64 + Send + Sync),
    base: C64,
    radii: &[f64],
    samples: usize,
) -> f64 {
    radii
        .iter()
        .map(|&r| circle_min_lower_bound(f, df, base, r, samples).max(covered_radius_lower_bound(f, df, base, r, samples)))
        .fold(0.0, f64::max)
}

/// Lower bound on the radius of a disk about `base` inside `f(D_r)`, from
/// the argument principle: every `w` whose winding number under
/// `f(|z| = r)` is nonzero has a preimage in `D_r`. The winding-zero set is
/// open with boundary on the curve, so its distance to `base` is the
/// distance to the nearest curve segment bordering it, less the mesh bound.
/// Sharper than the circle minimum when `f` is not univalent.
pub fn covered_radius_lower_bound(
    f: &(dyn Fn(C64) -> C64 + Send + Sync),
    df: &(dyn Fn(C64) -> C64 + Send + Sync),
    base: C64,
    r: f64,
    samples: usize,
) -> f64 {
    let step = 2.0 * PI / samples as f64;
    let mut pts = Vec::with_capacity(samples);
    let mut slopes = Vec::with_capacity(samples);
    for k in 0..samples {
        let z = C64::from_polar(r, k as f64 * step);
        let (v, d) = (f(z) - base, df(z).norm());
        if !(v.re.is_finite() && v.im.is_finite() && d.is_finite()) {
            return 0.0;
        }
        pts.push(v);
        slopes.push(d);
    }
    let zero = C64::new(0.0, 0.0);
    if winding_number(&pts, zero) == 0 {
        return 0.0;
    }
    // (segment distance - mesh, mesh, index), nearest first
    let mut segs: Vec<(f64, f64, usize)> = (0..samples)
        .map(|k| {
            let (a, b) = (pts[k], pts[(k + 1) % samples]);
            let mesh = r * step * slopes[k].max(slopes[(k + 1) % samples]);
            (segment_distance(a, b) - mesh, mesh, k)
        })
        .collect();
    segs.sort_by(|x, y| x.0.total_cmp(&y.0));
    // segments are visited nearest first, so stopping early still leaves
    // the next segment's distance as a valid bound
    for (i, (bound, mesh, k)) in segs.into_iter().enumerate() {
        if i == COVER_TESTS {
            return bound.max(0.0);
        }
        if bound <= 0.0 {
            return 0.0;
        }
        let (a, b) = (pts[k], pts[(k + 1) % samples]);
        let t = b - a;
        if t.norm() == 0.0 {
            continue;
        }
        let normal = C64::new(-t.im, t.re) / t.norm();
        let eta = 2.0 * mesh + 1e-12 * (a.norm() + b.norm());
        let mid = 0.5 * (a + b);
        if winding_number(&pts, mid + eta * normal) == 0 || winding_number(&pts, mid - eta * normal) == 0 {
            return bound;
        }
    }
    0.0
}

/// Distance from 0 to the segment `[a, b]`.
fn segment_distance(a: C64, b: C64) -> f64 {
    let t = b - a;
    let len2 = t.norm_sqr();
    if len2 == 0.0 {
        return a.norm();
    }
    let s = (-(a.conj() * t).re / len2).clamp(0.0, 1.0);
    (a + s * t).norm()
}

/// Certified-by-mesh lower bound on `min_{|z|=r} |f(z) - w|`.
pub(crate) fn circle_min_lower_bound(
    f: &(dyn Fn(C64) -> C64 + Send + Sync),
    df: &(dyn Fn(C64) -> C64 + Send + Sync),
    w: C64,
    r: f64,
    samples: usize,
) -> f64 {
    let step = 2.0 * PI / samples as f64;
    let vals: Vec<(f64, f64)> = (0..samples)
        .map(|k| {
            let z = C64::from_polar(r, k as f64 * step);
            ((f(z) - w).norm(), df(z).norm())
        })
        .collect();
    let half_arc = 0.5 * r * step;
    let mut lo = f64::INFINITY;
    for k in 0..samples {
        let (a, da) = vals[k];
        let (b, db) = vals[(k + 1) % samples];
        let bound = a.min(b) - 2.0 * half_arc * da.max(db);
        if !bound.is_finite() {
            return 0.0;
        }
        lo = lo.min(bound);
    }
    lo.max(0.0)
}

/// Winding number of `g(r e^{iθ})` about 0, subdividing any step whose
/// argument change exceeds 0.5 rad. `None` if `g` vanishes or is not finite
/// on the circle, or the subdivision depth runs out.
pub(crate) fn winding_on_circle(g: &(dyn Fn(C64) -> C64 + Send + Sync), r: f64, samples: usize) -> Option<i64> {
    fn arc(g: &(dyn Fn(C64) -> C64 + Send + Sync), r: f64, t0: f64, t1: f64, v0: C64, v1: C64, depth: u32) -> Option<f64> {
        let d = (v1 / v0).arg();
        if d.abs() <= 0.5 {
            return Some(d);
        }
        if depth == 0 {
            return None;
        }
        let tm = 0.5 * (t0 + t1);
        let vm = g(C64::from_polar(r, tm));
        if !(vm.norm() > 0.0 && vm.norm().is_finite()) {
            return None;
        }
        Some(arc(g, r, t0, tm, v0, vm, depth - 1)? + arc(g, r, tm, t1, vm, v1, depth - 1)?)
    }
    let step = 2.0 * PI / samples as f64;
    let vals: Vec<C64> = (0..=samples).map(|k| g(C64::from_polar(r, k as f64 * step))).collect();
    if vals.iter().any(|v| !(v.norm() > 0.0 && v.norm().is_finite())) {
        return None;
    }
    let mut total = 0.0;
    for k in 0..samples {
        total += arc(g, r, k as f64 * step, (k + 1) as f64 * step, vals[k], vals[k + 1], 24)?;
    }
    Some((total / (2.0 * PI)).round() as i64)
}

/// Distance from `w` to the curve `f(r e^{iθ})`: returns
/// `[min sample - mesh bound, refined minimum]`.
pub fn sampled_boundary_distance(
    f: &(dyn Fn(C64) -> C64 + Send + Sync),
    df: &(dyn Fn(C64) -> C64 + Send + Sync),
    w: C64,
    r: f64,
    samples: usize,
) -> (f64, f64) {
    let step = 2.0 * PI / samples as f64;
    let dist = |t: f64| (f(C64::from_polar(r, t)) - w).norm();
    let mut best = (0.0, f64::INFINITY);
    for k in 0..samples {
        let t = k as f64 * step;
        let d = dist(t);
        if d < best.1 {
            best = (t, d);
        }
    }
    // golden-section refinement on the bracketing arc
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    for _ in 0..60 {
        if dist(c) < dist(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    let refined = dist(0.5 * (a + b)).min(best.1);
    let slope = df(C64::from_polar(r, best.0)).norm();
    (best.1 - 2.0 * 0.5 * r * step * slope, refined)
}

/// A covering map `F : U -> D` with its derivative.
#[derive(Clone)]
pub struct CoveringMap {
    pub label: String,
    pub evaluator: MapFn,
    pub derivative: MapFn,
    pub target: DomainSpec,
    pub univalent: bool,
    /// Where `eval` and `deriv` are accurate to working precision.
    pub resolvable: Arc<dyn Fn(C64) -> bool + Send + Sync>,
}

impl fmt::Debug for CoveringMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoveringMap")
            .field("label", &self.label)
            .field("target", &self.target)
            .field("univalent", &self.univalent)
            .finish()
    }
}

impl CoveringMap {
    pub fn new<F, D>(label: &str, evaluator: F, derivative: D, target: DomainSpec, univalent: bool) -> Self
    where
        F: Fn(C64) -> C64 + Send + Sync + 'static,
        D: Fn(C64) -> C64 + Send + Sync + 'static,
    {
        CoveringMap {
            label: label.to_string(),
            evaluator: Arc::new(evaluator),
            derivative: Arc::new(derivative),
            target,
            univalent,
            resolvable: Arc::new(|_| true),
        }
    }

    pub fn with_resolvable(mut self, pred: impl Fn(C64) -> bool + Send + Sync + 'static) -> Self {
        self.resolvable = Arc::new(pred);
        self
    }

    pub fn eval(&self, z: C64) -> C64 {
        (self.evaluator)(z)
    }

    pub fn deriv(&self, z: C64) -> C64 {
        (self.derivative)(z)
    }

    pub fn identity() -> Self {
        Self::new("identity", |z| z, |_| C64::new(1.0, 0.0), DomainSpec::unit_disk(), true)
    }

    /// `z -> e^{iθ} (z - a) / (1 - conj(a) z)`, `|a| < 1`.
    pub fn disk_automorphism(a: C64, theta: f64) -> Self {
        let rot = C64::from_polar(1.0, theta);
        let one = C64::new(1.0, 0.0);
        Self::new(
            &format!("disk-automorphism(a={a},θ={theta})"),
            move |z| rot * (z - a) / (one - a.conj() * z),
            move |z| rot * (one - a.norm_sqr()) / (one - a.conj() * z).powi(2),
            DomainSpec::unit_disk(),
            true,
        )
    }

    /// `z -> center + radius z`.
    pub fn affine_disk(center: C64, radius: f64) -> Self {
        Self::new(
            &format!("affine-disk(c={center},r={radius})"),
            move |z| center + radius * z,
            move |_| C64::new(radius, 0.0),
            DomainSpec::disk(center, radius),
            true,
        )
    }

    /// `(1 + z) / (1 - z)` onto the right half-plane.
    pub fn cayley() -> Self {
        let one = C64::new(1.0, 0.0);
        Self::new("cayley", move |z| (one + z) / (one - z), move |z| 2.0 / (one - z).powi(2), DomainSpec::right_half_plane(), true)
    }

    /// `z / (1 - z)^2` onto `C \ (-∞, -1/4]`.
    pub fn koebe() -> Self {
        let one = C64::new(1.0, 0.0);
        Self::new("koebe", move |z| z / (one - z).powi(2), move |z| (one + z) / (one - z).powi(3), DomainSpec::slit_plane(-0.25), true)
    }

    /// `log((1 + z) / (1 - z))` onto `|Im w| < π/2`.
    pub fn strip() -> Self {
        let one = C64::new(1.0, 0.0);
        Self::new(
            "strip",
            move |z| ((one + z) / (one - z)).ln(),
            move |z| 2.0 / (one - z * z),
            DomainSpec::strip(PI / 2.0),
            true,
        )
    }

    /// `exp((z + 1) / (z - 1))`, the universal cover of `0 < |w| < 1`.
    pub fn punctured_disk() -> Self {
        let one = C64::new(1.0, 0.0);
        Self::new(
            "punctured-disk-cover",
            move |z| ((z + one) / (z - one)).exp(),
            move |z| ((z + one) / (z - one)).exp() * (-2.0) / (z - one).powi(2),
            DomainSpec::punctured_disk(),
            false,
        )
    }

    /// `A J(q(z)) + B` with `q(z) = exp(-π (1 + z) / (1 - z))`, the universal
    /// cover of `C \ {B, A + B}`.
    pub fn twice_punctured(scale: C64, shift: C64) -> Self {
        let one = C64::new(1.0, 0.0);
        let nome = move |z: C64| (-PI * (one + z) / (one - z)).exp();
        Self::new(
            &format!("modular-cover(A={scale},B={shift})"),
            move |z| scale * eval_j(nome(z)).unwrap_or(C64::new(f64::NAN, f64::NAN)) + shift,
            move |z| {
                let q = nome(z);
                let dq = q * (-2.0 * PI) / (one - z).powi(2);
                scale * eval_j_derivative(q).unwrap_or(C64::new(f64::NAN, f64::NAN)) * dq
            },
            DomainSpec::twice_punctured_plane(shift, shift + scale),
            false,
        )
        // J is within round-off of 0 or 1 near most of |q| = 1
        .with_resolvable(move |z| nome(z).norm() <= 0.5)
    }

    /// `F ∘ T` for a disk automorphism `T(z) = (z - a) / (1 - conj(a) z)`.
    pub fn precompose_automorphism(&self, a: C64) -> Self {
        let t = CoveringMap::disk_automorphism(a, 0.0);
        let (f, df) = (self.evaluator.clone(), self.derivative.clone());
        let (t1, dt1) = (t.evaluator.clone(), t.derivative.clone());
        let t2 = t.evaluator;
        let (ok, t3) = (self.resolvable.clone(), t2.clone());
        CoveringMap {
            label: format!("{}∘T(a={a})", self.label),
            evaluator: Arc::new(move |z| f(t1(z))),
            derivative: Arc::new(move |z| df(t2(z)) * dt1(z)),
            target: self.target.clone(),
            univalent: self.univalent,
            resolvable: Arc::new(move |z| ok(t3(z))),
        }
    }
}

/// `λ_U(z) = 1 / (1 - |z|^2)`.
pub fn density_unit_disk(z: C64) -> Result<f64> {
    let m = z.norm_sqr();
    if !(m < 1.0) {
        return Err(Error::DomainError(format!("|z| = {} is not inside the unit disk", m.sqrt())));
    }
    Ok(1.0 / (1.0 - m))
}

/// `λ_D(F(z)) = 1 / (|F'(z)| (1 - |z|^2))`.
pub fn pushforward_density(cover: &CoveringMap, z: C64) -> Result<f64> {
    let base = density_unit_disk(z)?;
    let d = cover.deriv(z);
    let m = d.norm();
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::ZeroDerivative { re: z.re, im: z.im });
    }
    Ok(base / m)
}

fn density_record(name: String, p: f64, simply_connected: bool) -> VerificationRecord {
    let mut rec = VerificationRecord::new(name, p, 1.0, DENSITY_TOL).with("product", p);
    if !(p > 0.0) {
        rec.passed = false;
    }
    if simply_connected {
        rec = rec.with("lower_bound", 0.25);
        if p < 0.25 - DENSITY_TOL {
            rec.passed = false;
        }
    }
    rec
}

/// `p = d(w, ∂D) λ_D(w)` against `p <= 1`, and `p >= 1/4` for simply
/// connected domains. Needs a closed-form density.
pub fn check_distance_density(domain: &DomainSpec, w: C64) -> Result<VerificationRecord> {
    let lambda = domain.density(w).ok_or_else(|| Error::MissingDensity(domain.label.clone()))?;
    let p = domain.distance(w) * lambda;
    Ok(density_record(format!("density/{}", domain.label), p, domain.simply_connected))
}

/// Same inequality at `w = F(z)` with the density pushed forward by `F`.
pub fn check_cover_point(cover: &CoveringMap, z: C64) -> Result<VerificationRecord> {
    let lambda = pushforward_density(cover, z)?;
    let w = cover.eval(z);
    let p = cover.target.distance(w) * lambda;
    Ok(density_record(format!("density/{}", cover.label), p, cover.target.simply_connected))
}

/// `d(F(z), ∂D) <= |F'(z)| (1 - |z|^2)`, and the quarter lower bound when
/// `F` is univalent.
pub fn check_koebe_bounds(cover: &CoveringMap, z: C64) -> Result<VerificationRecord> {
    density_unit_disk(z)?;
    let d = cover.target.distance(cover.eval(z));
    let scale = cover.deriv(z).norm() * (1.0 - z.norm_sqr());
    let mut rec = VerificationRecord::new(format!("koebe-bounds/{}", cover.label), d, scale, DENSITY_TOL)
        .with("distance", d)
        .with("derivative_scale", scale);
    if cover.univalent {
        rec = rec.with("lower_bound", 0.25 * scale);
        if d < 0.25 * scale - DENSITY_TOL {
            rec.passed = false;
        }
    }
    Ok(rec)
}

/// The canonical covers exercised by the inequality battery.
pub fn canonical_covers() -> Vec<CoveringMap> {
    vec![
        CoveringMap::identity(),
        CoveringMap::disk_automorphism(C64::new(0.5, 0.0), 0.0),
        CoveringMap::disk_automorphism(C64::new(-0.3, 0.4), 1.0),
        CoveringMap::affine_disk(C64::new(1.0, -1.0), 0.9),
        CoveringMap::cayley(),
        CoveringMap::koebe(),
        CoveringMap::strip(),
        CoveringMap::punctured_disk(),
        CoveringMap::twice_punctured(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        CoveringMap::twice_punctured(C64::new(0.0, 2.0), C64::new(-1.0, 0.5)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn unit_disk_density() {
        assert_eq!(density_unit_disk(c(0.0, 0.0)).unwrap(), 1.0);
        assert!((density_unit_disk(c(0.5, 0.0)).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((density_unit_disk(c(0.9, 0.0)).unwrap() - 1.0 / 0.19).abs() < 1e-12);
        assert!(density_unit_disk(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let id = CoveringMap::identity();
        assert!((pushforward_density(&id, c(0.3, 0.0)).unwrap() - 1.0 / 0.91).abs() < 1e-15);
        let cay = CoveringMap::cayley();
        let p = pushforward_density(&cay, c(0.0, 0.0)).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert!((p - cay.target.density(c(1.0, 0.0)).unwrap()).abs() < 1e-15);
        let k = CoveringMap::koebe();
        assert!((pushforward_density(&k, c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!((k.target.density(c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_derivative_is_reported() {
        let flat = CoveringMap::new("flat", |z| z * z, |z| 2.0 * z, DomainSpec::unit_disk(), false);
        assert!(matches!(pushforward_density(&flat, c(0.0, 0.0)), Err(Error::ZeroDerivative { .. })));
    }

    #[test]
    fn distance_density_examples() {
        let disk = DomainSpec::unit_disk();
        let r = check_distance_density(&disk, c(0.0, 0.0)).unwrap();
        assert_eq!(r.lhs, 1.0);
        assert!(r.passed);
        let r = check_distance_density(&disk, c(0.5, 0.0)).unwrap();
        assert!((r.lhs - 2.0 / 3.0).abs() < 1e-15 && r.passed);
        let r = check_distance_density(&DomainSpec::right_half_plane(), c(1.0, 0.0)).unwrap();
        assert!((r.lhs - 0.5).abs() < 1e-15 && r.passed);
        let twice = DomainSpec::twice_punctured_plane(c(0.0, 0.0), c(1.0, 0.0));
        assert!(matches!(check_distance_density(&twice, c(0.5, 0.0)), Err(Error::MissingDensity(_))));
    }

    #[test]
    fn koebe_bound_examples() {
        let r = check_koebe_bounds(&CoveringMap::identity(), c(0.0, 0.0)).unwrap();
        assert!(r.passed && r.lhs == 1.0 && r.rhs == 1.0);
        let r = check_koebe_bounds(&CoveringMap::koebe(), c(0.0, 0.0)).unwrap();
        assert!(r.passed);
        assert!((r.lhs - 0.25).abs() < 1e-15 && (r.rhs - 1.0).abs() < 1e-15);
        let r = check_koebe_bounds(&CoveringMap::cayley(), c(0.0, 0.0)).unwrap();
        assert!(r.passed && (r.lhs - 1.0).abs() < 1e-15 && (r.rhs - 2.0).abs() < 1e-15);
    }

    #[test]
    fn strip_and_punctured_closed_forms() {
        let s = DomainSpec::strip(PI / 2.0);
        assert!((s.density(c(0.0, 0.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!((s.distance(c(3.0, 0.5)) - (PI / 2.0 - 0.5)).abs() < 1e-15);
        let p = DomainSpec::punctured_disk();
        let cover = CoveringMap::punctured_disk();
        let z = c(0.2, -0.3);
        let via_cover = pushforward_density(&cover, z).unwrap();
        assert!((via_cover - p.density(cover.eval(z)).unwrap()).abs() < 1e-10 * via_cover);
    }

    #[test]
    fn sampled_image_distance_of_disk() {
        let f: MapFn = Arc::new(|z| z);
        let df: MapFn = Arc::new(|_| C64::new(1.0, 0.0));
        let d = DomainSpec::sampled_image("disk", f, df, (c(1.0, 0.0), c(-1.0, 0.0)), true);
        let (lo, hi) = d.base_distance_interval(c(0.0, 0.0));
        assert!(lo <= 1.0 && hi <= 1.0 && lo > 0.99);
        assert!((d.distance(c(0.5, 0.0)) - 0.499).abs() < 1e-9);
    }
}
