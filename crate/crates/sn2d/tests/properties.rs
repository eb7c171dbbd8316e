//! Property-based invariants of the functionals and the branch maps.

use proptest::prelude::*;
use std::f64::consts::PI;

use sn2d::branch::{lambdas_of_omega, omega_of_lambda, BranchConstants};
use sn2d::functionals::{kinetic, particle_number, potential_v, RadialProfile};
use sn2d::hls::{builtin_profile, dilate, hls_check, ProfileSpec};

fn family_profile(kind: bool, lambda: f64, width: f64) -> RadialProfile {
    let spec = if kind {
        ProfileSpec::Gaussian { lambda, width }
    } else {
        ProfileSpec::Exponential { lambda, width }
    };
    builtin_profile(&spec).unwrap()
}

fn scaled(p: &RadialProfile, c: f64) -> RadialProfile {
    let values = p.values().iter().map(|v| c * v).collect();
    RadialProfile::new(p.grid().to_vec(), values, p.interp()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// lambda and T are quadratic in the amplitude, V is quartic.
    #[test]
    fn functionals_scale_with_amplitude(
        kind in any::<bool>(),
        lambda in 0.2f64..40.0,
        width in 0.25f64..3.5,
        c in 0.2f64..4.0,
    ) {
        let p = family_profile(kind, lambda, width);
        let q = scaled(&p, c);
        let c2 = c * c;
        prop_assert!((particle_number(&q) - c2 * particle_number(&p)).abs()
            <= 1e-9 * c2 * particle_number(&p).abs());
        let t_p = kinetic(&p, 0).unwrap();
        let t_q = kinetic(&q, 0).unwrap();
        prop_assert!((t_q - c2 * t_p).abs() <= 1e-9 * (c2 * t_p).abs());
        let v_p = potential_v(&p);
        let v_q = potential_v(&q);
        prop_assert!((v_q - c2 * c2 * v_p).abs() <= 1e-9 * (c2 * c2 * v_p).abs().max(1e-12));
    }

    /// Dilation u(r/sigma)/sigma keeps lambda, divides T by sigma^2, and
    /// shifts V by exactly lambda^2 ln(sigma) / (2 pi).
    #[test]
    fn functionals_transform_under_dilation(
        kind in any::<bool>(),
        lambda in 0.2f64..40.0,
        width in 0.25f64..3.5,
        sigma in 0.3f64..3.5,
    ) {
        let p = family_profile(kind, lambda, width);
        let q = dilate(&p, sigma).unwrap();
        let lam_p = particle_number(&p);
        prop_assert!((particle_number(&q) - lam_p).abs() <= 1e-9 * lam_p);
        let t_p = kinetic(&p, 0).unwrap();
        let t_q = kinetic(&q, 0).unwrap();
        prop_assert!((t_q - t_p / (sigma * sigma)).abs() <= 1e-9 * t_p);
        let shift = lam_p * lam_p * sigma.ln() / (2.0 * PI);
        let v_p = potential_v(&p);
        let v_q = potential_v(&q);
        prop_assert!(
            (v_q - v_p - shift).abs() <= 1e-8 * (lam_p * lam_p).max(1.0),
            "V shift {} vs {}", v_q - v_p, shift
        );
    }

    /// Profiles survive a CSV round trip bit for bit.
    #[test]
    fn csv_round_trip_is_exact(
        kind in any::<bool>(),
        lambda in 0.2f64..40.0,
        width in 0.25f64..3.5,
    ) {
        let p = family_profile(kind, lambda, width);
        let file = tempfile::NamedTempFile::new().unwrap();
        p.write_csv(file.path()).unwrap();
        let q = RadialProfile::from_csv(file.path()).unwrap();
        prop_assert_eq!(p.grid(), q.grid());
        prop_assert_eq!(p.values(), q.values());
        prop_assert_eq!(p.lambda(), q.lambda());
    }

    /// No Gaussian or exponential profile beats the sharp interaction bound.
    /// These families stay well away from the equality case, so the rounded
    /// literature constants are accurate enough here.
    #[test]
    fn random_profiles_respect_the_sharp_bound(
        kind in any::<bool>(),
        lambda in 0.2f64..50.0,
        width in 0.25f64..3.5,
    ) {
        let p = family_profile(kind, lambda, width);
        let report = hls_check(&p, &BranchConstants::reference()).unwrap();
        prop_assert!(report.slack_sharp >= -1e-6 * lambda * lambda);
        prop_assert!(report.slack_weak >= report.slack_sharp - 1e-12 * lambda * lambda);
    }

    /// Frequencies invert back to the mass they came from.
    #[test]
    fn branch_inversion_round_trips(
        gamma in 0.2f64..5.0,
        frac in prop_oneof![0.05f64..0.34, 0.40f64..2.8],
    ) {
        let c = BranchConstants::reference();
        let lambda = frac * c.lambda0 / gamma;
        let omega = omega_of_lambda(lambda, gamma, &c).unwrap();
        let roots = lambdas_of_omega(omega, gamma, &c).unwrap();
        let best = roots
            .iter()
            .map(|r| ((r - lambda) / lambda).abs())
            .fold(f64::INFINITY, f64::min);
        prop_assert!(best <= 1e-8, "round trip missed by {best}");
    }
}
