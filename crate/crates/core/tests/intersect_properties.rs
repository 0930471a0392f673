use std::f64::consts::E;

use lambertw_core::intersect::TANGENT_BASE;
use lambertw_core::{
    base_to_z, compare_with_closed_form, diagonal_intersections, Base, EvalConfig,
    IntersectionClass, PointSource,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn log_spaced(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

/// 100 log-spaced bases inside each regime, away from the boundaries.
fn regime_samples() -> Vec<(f64, IntersectionClass)> {
    let mut out = Vec::new();
    out.extend(log_spaced(1e-6, 0.999, 100).map(|b| (b, IntersectionClass::UniqueDiagonal)));
    out.extend(
        log_spaced(1.001, TANGENT_BASE - 1e-4, 100).map(|b| (b, IntersectionClass::TwoPoints)),
    );
    out.extend(
        log_spaced(TANGENT_BASE + 1e-4, 1e3, 100).map(|b| (b, IntersectionClass::NoIntersection)),
    );
    out.push((TANGENT_BASE, IntersectionClass::Tangent));
    out
}

#[test]
fn fixed_point_symmetry_and_substitution() {
    for (b, class) in regime_samples() {
        let report = diagonal_intersections(Base::new(b).unwrap(), &EvalConfig::default()).unwrap();
        assert_eq!(report.class, class, "b={b}");
        assert_eq!(report.points.len(), class.point_count(), "b={b}");
        assert!(
            (report.z + b.ln()).abs() <= 2.0 * f64::EPSILON * b.ln().abs(),
            "b={b}"
        );
        let ln_b = b.ln();
        for p in &report.points {
            let scale = p.x.max(1.0);
            assert_eq!(p.x, p.y);
            assert!(
                (b.powf(p.x) - p.x).abs() <= 1e-10 * scale,
                "b={b} x={}",
                p.x
            );
            assert!(p.residual <= 1e-10 * scale);
            let log_form = p.x.ln() / ln_b;
            assert!(
                (log_form - p.x).abs() <= 1e-9 * scale,
                "log form b={b} x={}",
                p.x
            );
            let w = -p.x * ln_b;
            assert!(
                (w * w.exp() + ln_b).abs() <= 1e-12 * ln_b.abs().max(1.0),
                "substitution b={b}"
            );
        }
        assert!(report.points.windows(2).all(|w| w[0].x < w[1].x));
    }
}

#[test]
fn two_point_order_follows_branches() {
    for b in log_spaced(1.001, TANGENT_BASE - 1e-4, 50) {
        let r = diagonal_intersections(Base::new(b).unwrap(), &EvalConfig::default()).unwrap();
        assert!(matches!(
            r.points[0].source,
            PointSource::Branch(lambertw_core::BranchId::W0)
        ));
        assert!(matches!(
            r.points[1].source,
            PointSource::Branch(lambertw_core::BranchId::Wm1)
        ));
    }
}

#[test]
fn points_converge_to_e_at_tangency() {
    let mut prev = f64::INFINITY;
    for k in 2..=6 {
        let b = TANGENT_BASE * (1.0 - 10f64.powi(-k));
        let r = diagonal_intersections(Base::new(b).unwrap(), &EvalConfig::default()).unwrap();
        assert_eq!(r.class, IntersectionClass::TwoPoints);
        let gap = r.points.iter().map(|p| (p.x - E).abs()).fold(0.0, f64::max);
        assert!(gap < prev, "k={k}: {gap} !< {prev}");
        prev = gap;
    }
}

#[test]
fn base_to_z_sign() {
    for (b, _) in regime_samples() {
        let z = base_to_z(Base::new(b).unwrap());
        assert_eq!(z > 0.0, b < 1.0);
    }
}

#[test]
fn random_bases_agree_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let tol = 1e-9;
    for _ in 0..50 {
        let b = rng.gen_range(1.0 + 10.0 * tol..TANGENT_BASE * (1.0 - 1e-3));
        let v = compare_with_closed_form(Base::new(b).unwrap(), None, 20_000).unwrap();
        assert!(!v.count_mismatch, "b={b}: {:?}", v.oracle_roots);
        assert!(v.max_delta().unwrap() <= 1e-8, "b={b}");

        let b = rng.gen_range(TANGENT_BASE * (1.0 + 1e-3)..10.0);
        let v = compare_with_closed_form(Base::new(b).unwrap(), None, 20_000).unwrap();
        assert!(!v.count_mismatch && v.oracle_roots.is_empty(), "b={b}");

        // below 1 only the diagonal point is promised; off-diagonal extras are data
        let b = rng.gen_range(0.1..0.99);
        let v = compare_with_closed_form(Base::new(b).unwrap(), None, 20_000).unwrap();
        assert_eq!(v.pairs.len(), 1, "b={b}");
        assert!(v.pairs[0].delta <= 1e-8, "b={b}");
        assert!(v.unmatched_closed_form.is_empty());
    }
}

#[test]
fn small_base_exposes_off_diagonal_pair() {
    // Observed with the oracle: below e^-e ~ 0.0660 two extra roots appear
    // symmetric about the bisectrix (b = 0.05: 0.13736, 0.35022, 0.66266).
    let v = compare_with_closed_form(Base::new(0.05).unwrap(), None, 200_000).unwrap();
    assert_eq!(v.oracle_roots.len(), 3);
    assert_eq!(v.unmatched_oracle.len(), 2);
    assert!(v.count_mismatch);
    let (lo, hi) = (v.unmatched_oracle[0], v.unmatched_oracle[1]);
    assert!((0.05f64.powf(lo) - hi).abs() < 1e-9);
    assert!((0.05f64.powf(hi) - lo).abs() < 1e-9);

    let v = compare_with_closed_form(Base::new(0.07).unwrap(), None, 200_000).unwrap();
    assert!(!v.count_mismatch);
}
