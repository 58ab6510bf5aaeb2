use bohrlab::series::{extract_coefficients, TruncatedSeries};
use bohrlab::C64;
use proptest::prelude::*;

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b)), 1..=max_len)
}

/// Pads to `len` coefficients so products of short polynomials stay exact.
fn padded(mut c: Vec<C64>, len: usize) -> TruncatedSeries {
    c.resize(len, C64::new(0.0, 0.0));
    TruncatedSeries::exact(c)
}

fn majorant(s: &TruncatedSeries, r: f64) -> f64 {
    s.bohr_majorant(r, 0).unwrap().upper
}

proptest! {
    #[test]
    fn majorant_is_subadditive(a in coeffs(12), b in coeffs(12), r in 0.0f64..0.99) {
        let (f, g) = (padded(a, 12), padded(b, 12));
        prop_assert!(majorant(&f.add(&g), r) <= majorant(&f, r) + majorant(&g, r) + 1e-12);
    }

    #[test]
    fn majorant_is_submultiplicative(a in coeffs(6), b in coeffs(6), r in 0.0f64..0.99) {
        let (f, g) = (padded(a, 12), padded(b, 12));
        // degrees add up to at most 10, so every product coefficient is kept
        let fg = f.mul(&g).bohr_majorant(r, 0).unwrap().value;
        prop_assert!(fg <= majorant(&f, r) * majorant(&g, r) + 1e-12);
    }

    #[test]
    fn majorant_is_monotone_in_r(a in coeffs(16), r1 in 0.0f64..0.99, r2 in 0.0f64..0.99) {
        let f = TruncatedSeries::exact(a);
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        prop_assert!(majorant(&f, lo) <= majorant(&f, hi));
    }

    #[test]
    fn majorant_of_unimodular_constant(theta in 0.0f64..std::f64::consts::TAU, r in 0.0f64..0.99) {
        let one = TruncatedSeries::exact(vec![C64::from_polar(1.0, theta)]);
        prop_assert!((majorant(&one, r) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn extraction_recovers_polynomials(a in coeffs(9), radius in 0.6f64..0.95) {
        let degree = a.len() - 1;
        let p = TruncatedSeries::exact(a.clone());
        let got = extract_coefficients(|z| p.eval(z), radius, degree.max(1)).unwrap();
        for (n, want) in a.iter().enumerate() {
            prop_assert!((got.coeff(n) - want).norm() < 1e-12, "n = {n}: {} vs {want}", got.coeff(n));
        }
    }
}

#[test]
fn majorant_rejects_radius_outside_the_disk() {
    let f = TruncatedSeries::identity(4);
    assert!(f.bohr_majorant(1.0, 0).is_err());
    assert!(f.bohr_majorant(-0.1, 0).is_err());
    assert!(f.bohr_majorant(0.5, 5).is_err());
}
