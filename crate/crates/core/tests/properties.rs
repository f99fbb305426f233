use hbsqueeze::numerics::{integrate, Tolerance};
use hbsqueeze::yield_surface::{dr_dz0, r_of_z0, yield_residual};
use hbsqueeze::{FluidParams, Squeeze};
use proptest::prelude::*;

fn flow(log_b: f64, n: f64, eps: f64) -> Squeeze {
    Squeeze::new(FluidParams::stokes(10f64.powf(log_b), n, eps).unwrap()).unwrap()
}

fn tight() -> Tolerance {
    Tolerance::new(1e-15, 1e-12, 8000).unwrap()
}

fn across_gap(s: &Squeeze, r: f64, f: impl Fn(f64) -> f64) -> f64 {
    let z0 = s.z0(r).unwrap();
    integrate(&f, 0.0, z0, tight()).unwrap() + integrate(&f, z0, 1.0, tight()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn yield_surface_solves_its_equation(log_b in -2.0..2.0f64, n in 0.2..2.0f64, r in 0.0..=1.0f64) {
        let s = flow(log_b, n, 0.1);
        let z0 = s.z0(r).unwrap();
        prop_assert!(z0 > 0.0 && z0 <= 1.0);
        prop_assert!(yield_residual(s.params(), r, z0).abs() <= 1e-10);
    }

    #[test]
    fn yield_surface_descends(log_b in -2.0..2.0f64, n in 0.2..2.0f64, a in 0.0..1.0f64, d in 1e-3..1.0f64) {
        let s = flow(log_b, n, 0.1);
        let b = (a + d).min(1.0);
        prop_assume!(b > a);
        prop_assert!(s.z0(b).unwrap() < s.z0(a).unwrap());
    }

    #[test]
    fn inverse_map_round_trips(log_b in -2.0..2.0f64, n in 0.2..2.0f64, r in 0.01..=1.0f64) {
        let s = flow(log_b, n, 0.1);
        let z0 = s.z0(r).unwrap();
        prop_assert!((r_of_z0(s.params(), z0).unwrap() - r).abs() <= 1e-9);
    }

    #[test]
    fn inverse_map_slope_matches_differences(log_b in -2.0..2.0f64, n in 0.2..2.0f64, z0 in 0.05..0.95f64) {
        let s = flow(log_b, n, 0.1);
        let p = s.params();
        let h = 1e-6;
        let fd = (r_of_z0(p, z0 + h).unwrap() - r_of_z0(p, z0 - h).unwrap()) / (2.0 * h);
        let exact = dr_dz0(p, z0).unwrap();
        prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{fd} vs {exact}");
    }

    #[test]
    fn leading_flux_is_half_radius(log_b in -2.0..2.0f64, n in 0.2..2.0f64, r in 0.05..=1.0f64) {
        let s = flow(log_b, n, 0.1);
        let q = across_gap(&s, r, |z| s.u_zero(r, z).unwrap());
        prop_assert!((q - r / 2.0).abs() <= 1e-8);
    }

    #[test]
    fn leading_shear_stress_separates_regions(log_b in -2.0..2.0f64, n in 0.2..2.0f64, r in 0.01..=1.0f64, t in 0.01..0.99f64) {
        let s = flow(log_b, n, 0.1);
        let b = s.params().bingham();
        let z0 = s.z0(r).unwrap();
        let below = t * z0;
        let above = z0 + t * (1.0 - z0);
        prop_assert!(s.leading_stress(r, below).unwrap().tau_rz.abs() < b);
        prop_assert!(s.leading_stress(r, above).unwrap().tau_rz.abs() > b);
    }

    #[test]
    fn plug_sits_on_the_yield_surface(log_b in -2.0..2.0f64, n in 0.2..2.0f64, r in 0.01..=1.0f64, t in 0.0..1.0f64) {
        let s = flow(log_b, n, 0.1);
        let z = t * s.z0(r).unwrap();
        let inv = s.plug_stresses(r, z).unwrap().invariant();
        prop_assert!((inv - s.params().bingham()).abs() <= 1e-10 * s.params().bingham().max(1.0));
    }

    #[test]
    fn first_order_flux_vanishes(log_b in -2.0..2.0f64, n in 0.2..2.0f64, r in 0.05..=1.0f64) {
        let s = flow(log_b, n, 0.1);
        prop_assert!(s.flux_residual(r).unwrap().abs() <= 1e-6);
        let q = across_gap(&s, r, |z| s.u_first(r, z).unwrap());
        prop_assert!(q.abs() <= 1e-6, "{q}");
    }

    #[test]
    fn branches_match_at_yield_surface(log_b in -2.0..2.0f64, n in 0.2..2.0f64, r in 0.05..=1.0f64) {
        let s = flow(log_b, n, 0.1);
        let z0 = s.z0(r).unwrap();
        prop_assert!((s.plug_velocity(r).unwrap() - s.u_zero_shear(r, z0).unwrap()).abs() <= 1e-12);
        prop_assert!((s.u_first_plug(r, z0).unwrap() - s.u_first_shear(r, z0).unwrap()).abs() <= 1e-9);
        prop_assert!((s.p_first_plug(r, z0).unwrap() - s.p1(r).unwrap()).abs() <= 1e-12);
        let tau = s.tau_rz_first_plug(r, z0).unwrap() - s.tau_rz_first_shear(r, z0).unwrap();
        prop_assert!(tau.abs() <= 1e-6, "{tau}");
    }

    #[test]
    fn leading_plate_stress_is_yielded(log_b in -2.0..2.0f64, n in 0.2..2.0f64, r in 0.01..=1.0f64) {
        let s = flow(log_b, n, 1e-300);
        prop_assert!(s.plate_stress(r).unwrap() >= s.params().bingham());
    }

    #[test]
    fn force_components_add_up(log_b in -2.0..2.0f64, n in 0.2..2.0f64, eps in 0.01..0.2f64) {
        let s = flow(log_b, n, eps);
        let f = s.total_force().unwrap();
        let sum = f.f0 + eps * f.f1 + eps * std::f64::consts::PI * f.p_r;
        prop_assert!(f.f0.is_finite() && f.f1.is_finite() && f.p_r.is_finite());
        prop_assert!((f.total - sum).abs() <= 1e-12 * f.total.abs());
        let alt = s.force_zero_by_yield_surface().unwrap();
        prop_assert!(((alt - f.f0) / f.f0).abs() <= 1e-7);
    }

    #[test]
    fn force_grows_with_bingham_number(log_b in -2.0..1.5f64, step in 0.05..0.5f64, n in 0.2..2.0f64) {
        let lo = flow(log_b, n, 0.1).total_force().unwrap().total;
        let hi = flow(log_b + step, n, 0.1).total_force().unwrap().total;
        prop_assert!(hi > lo);
    }

    #[test]
    fn edge_stress_averages_to_zero(log_b in -2.0..2.0f64, n in 0.2..2.0f64, eps in 0.01..0.2f64) {
        let s = flow(log_b, n, eps);
        let avg = across_gap(&s, 1.0, |z| s.sigma_rr(1.0, z).unwrap());
        prop_assert!(avg.abs() <= 1e-8 * s.edge_pressure().max(1.0), "{avg}");
    }
}
