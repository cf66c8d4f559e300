use std::f64::consts::{FRAC_PI_2, PI};

use circle_sqm::coulomb::{self, CoulombSystem};
use circle_sqm::numerics::oracle::terminating_series_exact;
use circle_sqm::numerics::{build_hamiltonian, eigenvalues_tridiagonal, richardson, sturm_count};
use circle_sqm::oscillator::{self, OscillatorSystem};
use circle_sqm::specfun::{hyp2f1_terminating, ln_gamma_complex, pochhammer};
use circle_sqm::{Branch, CircleGeometry};
use num_complex::Complex64;
use proptest::prelude::*;

fn branch_for(k1: f64, minus: bool) -> Branch {
    if minus && Branch::Minus.is_admissible(k1) {
        Branch::Minus
    } else {
        Branch::Plus
    }
}

fn oscillator_system() -> impl Strategy<Value = OscillatorSystem> {
    (0.0..5.0f64, 0.2..3.0f64, 0.01..3.0f64, any::<bool>()).prop_map(|(omega, r, k1, minus)| {
        OscillatorSystem::new(CircleGeometry::new(r).unwrap(), omega, k1, branch_for(k1, minus)).unwrap()
    })
}

fn coulomb_system() -> impl Strategy<Value = CoulombSystem> {
    (0.05..4.0f64, 0.2..5.0f64, 0.01..1.41f64, any::<bool>()).prop_map(|(mu, r, k1, minus)| {
        CoulombSystem::new(CircleGeometry::new(r).unwrap(), mu, k1, branch_for(k1, minus)).unwrap()
    })
}

proptest! {
    #[test]
    fn oscillator_energy_routes_agree(sys in oscillator_system(), n in 0usize..40) {
        let eps = oscillator::energy_epsilon(n, sys.k0(), sys.k1(), sys.branch()).unwrap();
        let via_eps = oscillator::energy_from_epsilon(&sys, eps);
        let direct = oscillator::energy_level(&sys, n).unwrap();
        prop_assert!((via_eps - direct).abs() <= 1e-12 * direct.abs().max(1e-300), "{via_eps} vs {direct}");
    }

    #[test]
    fn oscillator_levels_increase(sys in oscillator_system(), n in 0usize..30) {
        let a = oscillator::energy_level(&sys, n).unwrap();
        let b = oscillator::energy_level(&sys, n + 1).unwrap();
        prop_assert!(b > a);
    }

    #[test]
    fn oscillator_reduction_round_trips(sys in oscillator_system(), e in -5.0..50.0f64) {
        let form = oscillator::reduce_to_poschl_teller(&sys, e);
        let back = oscillator::energy_from_epsilon(&sys, form.epsilon.re);
        prop_assert!((back - e).abs() <= 1e-10 * e.abs().max(1.0));
        prop_assert!((form.k0_squared().re - (sys.omega().powi(2) * sys.radius().powi(4) + 0.25)).abs() < 1e-9 * form.k0_squared().re);
    }

    #[test]
    fn coulomb_duality_route_agrees(sys in coulomb_system(), n in 0usize..20) {
        let direct = coulomb::energy_level(&sys, n).unwrap();
        let dual = coulomb::energy_from_duality(&sys, n).unwrap();
        let scale = coulomb::energy_terms(&sys, n).unwrap();
        prop_assert!((dual - direct).abs() <= 1e-11 * scale.confinement.max(scale.binding).max(1.0));
    }

    #[test]
    fn coulomb_k0_solves_duality_quadratic(sys in coulomb_system(), n in 0usize..10) {
        let q = coulomb::quantize(&sys, n).unwrap();
        let e = coulomb::energy_level(&sys, n).unwrap();
        let form = coulomb::duality_parameters(&sys, e);
        let k0sq = q.k0 * q.k0;
        prop_assert!((form.k0_squared() - k0sq).norm() <= 1e-9 * k0sq.norm().max(1.0));
    }

    #[test]
    fn coulomb_wavefunction_is_real_on_the_segment(sys in coulomb_system(), n in 0usize..6, t in 0.02..0.98f64) {
        let v = coulomb::wavefunction(&sys, n, t * PI).unwrap();
        prop_assert!(v.im.abs() <= 1e-9 * v.norm().max(1e-12), "{v}");
        let d = coulomb::diamond_conjugate(&sys, n, t * PI).unwrap();
        prop_assert_eq!(d, v.conj());
    }

    #[test]
    fn normalization_routes_agree(sys in coulomb_system(), n in 0usize..6) {
        let q = coulomb::quantize(&sys, n).unwrap();
        let direct = coulomb::norm_constant_sigma(n, q.nu, q.sigma, sys.radius()).unwrap();
        let general = coulomb::norm_constant_general(n, q.k0, sys.k1(), sys.radius(), sys.branch()).unwrap();
        let mapped = coulomb::angle_map_factor(q.nu) * general.norm();
        prop_assert!((mapped - direct).abs() <= 1e-10 * direct);
    }

    #[test]
    fn gamma_recurrence(re in -6.0..8.0f64, im in -6.0..6.0f64) {
        let z = Complex64::new(re, im);
        prop_assume!((z - z.re.round()).norm() > 1e-3 || z.re > 0.5);
        let lhs = ln_gamma_complex(z + 1.0).unwrap().exp();
        let rhs = z * ln_gamma_complex(z).unwrap().exp();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm(), "{lhs} vs {rhs}");
    }

    #[test]
    fn pochhammer_step(re in -3.0..3.0f64, im in -3.0..3.0f64, j in 0usize..15) {
        let a = Complex64::new(re, im);
        let next = pochhammer(a, j + 1).unwrap();
        let step = pochhammer(a, j).unwrap() * (a + j as f64);
        prop_assert_eq!(next, step);
    }

    #[test]
    fn hypergeometric_matches_exact_summation(
        n in 0usize..=30,
        b in (-1.0..1.0f64, -1.0..1.0f64),
        c in (-1.0..1.0f64, -1.0..1.0f64),
        x in (0.0..1.0f64, 0.0..(2.0 * PI)),
    ) {
        let b = Complex64::new(b.0, b.1);
        let c = Complex64::new(c.0, c.1);
        prop_assume!(b.norm() <= 1.0 && c.norm() <= 1.0 && c.norm() > 1e-6);
        let x = Complex64::from_polar(x.0, x.1);
        let exact = terminating_series_exact(n, Some(b), c, x).unwrap();
        let fast = hyp2f1_terminating(n, b, c, x).unwrap();
        prop_assert!((fast - exact).norm() <= 1e-12 * exact.norm(), "{fast} vs {exact}");
    }

    #[test]
    fn binomial_identity(n in 0usize..25, b in 0.1..5.0f64, x in -0.9..0.9f64) {
        let v = hyp2f1_terminating(n, Complex64::new(b, 0.0), Complex64::new(b, 0.0), Complex64::new(x, 0.0)).unwrap();
        let expected = (1.0 - x).powi(n as i32);
        prop_assert!((v.re - expected).abs() <= 1e-12 * expected.abs().max(1e-300) + 1e-15);
    }

    #[test]
    fn oscillator_parity_on_full_well(omega in 0.1..3.0f64, k1 in 0.05..0.5f64, minus in any::<bool>(), n in 0usize..5, phi in 0.05..1.5f64) {
        let branch = if minus { Branch::Minus } else { Branch::Plus };
        let sys = OscillatorSystem::new(CircleGeometry::new(1.0).unwrap(), omega, k1, branch).unwrap();
        let right = oscillator::wavefunction(&sys, n, phi).unwrap();
        let left = oscillator::wavefunction(&sys, n, -phi).unwrap();
        let sign = if minus { 1.0 } else { -1.0 };
        prop_assert_eq!(left, sign * right);
        prop_assert!(phi < FRAC_PI_2);
    }

    #[test]
    fn sturm_count_is_monotone(diag in prop::collection::vec(-5.0..5.0f64, 2..40), lam in -10.0..10.0f64, step in 0.0..3.0f64) {
        let off = vec![-0.7; diag.len() - 1];
        let m = circle_sqm::numerics::TridiagonalMatrix::new(diag, off, 1.0, 0.0).unwrap();
        prop_assert!(sturm_count(&m, lam) <= sturm_count(&m, lam + step));
    }

    #[test]
    fn richardson_is_exact_on_quadratic_error(e in -10.0..10.0f64, c in -5.0..5.0f64, h in 1e-3..0.1f64) {
        let coarse = e + c * h * h;
        let fine = e + c * h * h / 4.0;
        prop_assert!((richardson(coarse, fine, 2) - e).abs() < 1e-12);
    }
}

#[test]
fn fd_spectrum_is_sorted_and_matches_sturm_counts() {
    let sys = OscillatorSystem::new(CircleGeometry::new(1.0).unwrap(), 1.0, 1.5, Branch::Plus).unwrap();
    let h = build_hamiltonian(|phi| oscillator::potential(&sys, phi), 1.0, sys.motion_domain(), 300).unwrap();
    let values = eigenvalues_tridiagonal(&h, 8).unwrap();
    for (k, pair) in values.windows(2).enumerate() {
        assert!(pair[1] > pair[0]);
        let mid = 0.5 * (pair[0] + pair[1]);
        assert_eq!(sturm_count(&h, mid), k + 1);
    }
}

#[test]
fn fd_levels_approach_closed_form() {
    let sys = OscillatorSystem::new(CircleGeometry::new(1.0).unwrap(), 1.0, 1.5, Branch::Plus).unwrap();
    let errs: Vec<f64> = [256, 513]
        .iter()
        .map(|&n| {
            let h = build_hamiltonian(|phi| oscillator::potential(&sys, phi), 1.0, sys.motion_domain(), n).unwrap();
            let v = eigenvalues_tridiagonal(&h, 1).unwrap()[0];
            (v - oscillator::energy_level(&sys, 0).unwrap()).abs()
        })
        .collect();
    let order = (errs[0] / errs[1]).log2();
    assert!((order - 2.0).abs() < 0.1, "order {order}");
}
