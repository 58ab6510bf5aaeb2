//! Checks against values computed independently of the library code paths.

use std::f64::consts::PI;

use bohrlab::hyperbolic::{pushforward_density, CoveringMap};
use bohrlab::lab::verify_von_neumann;
use bohrlab::modular::{coefficients_of_minus_j_minus, eval_j, lemma17_radius, lemma17_threshold, univalence_scan};
use bohrlab::series::TruncatedSeries;
use bohrlab::{C64, E_MINUS_PI};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// q-expansion of `16 q Π ((1 + q^{2n}) / (1 + q^{2n-1}))^8` by repeated
/// polynomial multiplication and division in f64, truncated at degree `n`.
fn lambda_q_expansion(n: usize) -> Vec<f64> {
    let mut p = vec![0.0; n + 1];
    p[1] = 16.0;
    for k in 1..=n {
        for _ in 0..8 {
            if 2 * k <= n {
                for i in (2 * k..=n).rev() {
                    p[i] += p[i - 2 * k];
                }
            }
            // division by 1 + q^{2k-1}
            let m = 2 * k - 1;
            for i in m..=n {
                p[i] -= p[i - m];
            }
        }
    }
    p
}

#[test]
fn expansion_matches_independent_q_series() {
    let q = lambda_q_expansion(30);
    let exp = coefficients_of_minus_j_minus(29);
    // -J(-z) = Σ (-1)^{k+1} j_k z^k, so M_n = (-1)^n j_{n+1}
    for n in 0..30 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(exp.m(n).unwrap(), sign * q[n + 1], "M_{n}");
    }
}

#[test]
fn tabulated_lambda_coefficients() {
    // λ(q) = 16q - 128q^2 + 704q^3 - 3072q^4 + 11488q^5 - 38400q^6 + ...
    let exp = coefficients_of_minus_j_minus(8);
    assert_eq!(&exp.m_coeffs()[..6], &[16.0, 128.0, 704.0, 3072.0, 11488.0, 38400.0]);
}

#[test]
fn expansion_sums_to_one_at_e_minus_pi() {
    let exp = coefficients_of_minus_j_minus(64);
    let direct: f64 = (0..=64).map(|n| exp.m(n).unwrap() * E_MINUS_PI.powi(n as i32 + 1)).sum();
    assert!((direct - 1.0).abs() < 1e-12, "{direct}");
    assert!((exp.partial_sum(E_MINUS_PI) - 1.0).abs() < 1e-12);
}

#[test]
fn coefficients_are_convex() {
    let exp = coefficients_of_minus_j_minus(64);
    for n in 1..64 {
        let (a, b, d) = (exp.m(n - 1).unwrap(), exp.m(n).unwrap(), exp.m(n + 1).unwrap());
        assert!(a + d - 2.0 * b > 0.0, "second difference at {n}");
    }
}

#[test]
fn maximum_modulus_sits_on_the_negative_axis() {
    for r in [0.01, 0.02, E_MINUS_PI] {
        let at_minus = eval_j(c(-r, 0.0)).unwrap().norm();
        for k in 0..360 {
            let v = eval_j(C64::from_polar(r, 2.0 * PI * k as f64 / 360.0)).unwrap().norm();
            assert!(v <= at_minus * (1.0 + 1e-12), "r = {r}, k = {k}");
        }
    }
}

#[test]
fn univalence_scans() {
    assert!(univalence_scan(0.9 * (-PI / 2.0).exp(), 50).unwrap().injective);
    assert!(univalence_scan(E_MINUS_PI, 50).unwrap().injective);
    let big = univalence_scan(0.5, 50).unwrap();
    assert!(!big.injective);
    let (z1, z2) = big.witness_pair.expect("witness");
    assert!((z1 - z2).norm() > 1e-6 && z1.norm() <= 0.5 && z2.norm() <= 0.5);
    assert!((eval_j(z1).unwrap() - eval_j(z2).unwrap()).norm() < 1e-8);
}

#[test]
fn lemma_threshold_by_bisection() {
    let rho = |a: f64| 1.0 + a - ((1.0 + a).powi(2) - 1.0).sqrt();
    let (mut lo, mut hi) = (1e-6, 100.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if rho(mid) > 0.26 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = lemma17_threshold(0.26).unwrap();
    assert!((t - lo).abs() < 1e-9);
    assert!((t - 1.053077).abs() < 1e-6);
    for a in [0.1, 1.0, PI, 10.0] {
        assert!((lemma17_radius(a).unwrap() - rho(a)).abs() < 1e-9);
    }
}

#[test]
fn punctured_disk_density_is_independent_of_preimage() {
    let cover = CoveringMap::punctured_disk();
    for w in [c(0.3, 0.1), c(-0.05, 0.6), c(0.9, 0.0)] {
        let closed = 1.0 / (2.0 * w.norm() * w.norm().ln().abs());
        for k in -2..=2 {
            // preimages: (z + 1) / (z - 1) = log w + 2πik
            let s = w.ln() + c(0.0, 2.0 * PI * k as f64);
            let z = (s + 1.0) / (s - 1.0);
            assert!((cover.eval(z) - w).norm() < 1e-9);
            let p = pushforward_density(&cover, z).unwrap();
            assert!((p - closed).abs() < 1e-8 * closed, "w = {w}, k = {k}: {p} vs {closed}");
        }
    }
}

#[test]
fn modular_cover_density_is_independent_of_preimage() {
    let cover = CoveringMap::twice_punctured(c(1.0, 0.0), c(0.0, 0.0));
    for z0 in [c(0.1, 0.2), c(-0.4, 0.1), c(0.0, -0.5)] {
        // τ ↦ τ + 2 fixes the nome; with τ = i s this is s ↦ s - 2i
        let s0 = (1.0 + z0) / (1.0 - z0);
        let s1 = s0 - c(0.0, 2.0);
        let z1 = (s1 - 1.0) / (s1 + 1.0);
        assert!(z1.norm() < 1.0);
        assert!((cover.eval(z0) - cover.eval(z1)).norm() < 1e-12);
        let (p0, p1) = (pushforward_density(&cover, z0).unwrap(), pushforward_density(&cover, z1).unwrap());
        assert!((p0 - p1).abs() < 1e-9 * p0, "{p0} vs {p1}");
    }
}

#[test]
fn density_is_invariant_under_disk_automorphisms() {
    let a = c(0.3, -0.2);
    let t = |z: C64| (z - a) / (1.0 - a.conj() * z);
    for cover in [CoveringMap::koebe(), CoveringMap::strip(), CoveringMap::punctured_disk(), CoveringMap::cayley()] {
        let moved = cover.precompose_automorphism(a);
        for z in [c(0.1, 0.1), c(-0.5, 0.2), c(0.0, 0.6)] {
            assert!((moved.eval(z) - cover.eval(t(z))).norm() < 1e-9 * (1.0 + cover.eval(t(z)).norm()));
            let (p, q) = (pushforward_density(&moved, z).unwrap(), pushforward_density(&cover, t(z)).unwrap());
            assert!((p - q).abs() < 1e-9 * q, "{}: {p} vs {q}", cover.label);
        }
    }
}

#[test]
fn von_neumann_needs_values_in_the_disk() {
    // f maps the disk onto |w - 5| < 1/2, so d = 1/2 < 1 but |f| > 1
    let f = TruncatedSeries::exact(vec![c(5.0, 0.0), c(0.5, 0.0)]);
    let rec = verify_von_neumann("shifted", &f, 0.5, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    assert!(!rec.passed);
    assert!(rec.lhs > 4.9 && (rec.rhs - 1.0).abs() < 1e-12);
}
