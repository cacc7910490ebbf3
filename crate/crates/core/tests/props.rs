//! Property-based invariants across the workspace: randomized structural
//! facts that must hold for every input, not just the frozen examples.

use proptest::prelude::*;
use uqm_core::coherent::{beamsplitter, gaussian_integral, recovery_map};
use uqm_core::comparison::{binomial, compare_prob_pure};
use uqm_core::linalg::{c, cr, CMatrix};
use uqm_core::operator::partial_trace;

proptest! {
    #[test]
    fn beamsplitter_conserves_energy(
        t in 0.0f64..=1.0,
        ar in -2.0f64..2.0, ai in -2.0f64..2.0,
        br in -2.0f64..2.0, bi in -2.0f64..2.0,
    ) {
        let (x, y) = beamsplitter(t, c(ar, ai), c(br, bi)).unwrap();
        let before = ar * ar + ai * ai + br * br + bi * bi;
        prop_assert!((x.norm_sqr() + y.norm_sqr() - before).abs() < 1e-12);
    }

    #[test]
    fn comparison_probability_is_symmetric_and_bounded(
        k in 1usize..=6, l in 1usize..=6, x in 0.0f64..=1.0,
    ) {
        let p = compare_prob_pure(k, l, x);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert_eq!(p, compare_prob_pure(l, k, x));
        // identical states are never flagged different
        prop_assert!(compare_prob_pure(k, l, 1.0).abs() < 1e-12);
    }

    #[test]
    fn binomial_recurrences(n in 1u64..=40, k in 0u64..=40) {
        if k <= n {
            prop_assert_eq!(binomial(n, k), binomial(n, n - k));
        } else {
            prop_assert_eq!(binomial(n, k), 0.0);
        }
        if k >= 1 && k <= n {
            let pascal = binomial(n - 1, k - 1) + binomial(n - 1, k);
            prop_assert!((binomial(n, k) - pascal).abs() < 1e-6 * binomial(n, k).max(1.0));
        }
    }

    #[test]
    fn partial_trace_preserves_trace(seed in 0u64..1000, da in 2usize..4, db in 2usize..4) {
        let mut rs = uqm_core::RandomStream::new(seed);
        let n = da * db;
        let m = CMatrix::from_fn(n, n, |_, _| rs.complex_normal());
        let full: uqm_core::C64 = m.diagonal().sum();
        let reduced = partial_trace(&m, &[1], &[da, db]).unwrap();
        let after: uqm_core::C64 = reduced.diagonal().sum();
        prop_assert!((full - after).norm() < 1e-10);
        // linearity: scaling commutes with the trace-out
        let scaled = partial_trace(&(&m * cr(2.5)), &[1], &[da, db]).unwrap();
        prop_assert!((scaled - reduced * cr(2.5)).norm() < 1e-10);
    }

    #[test]
    fn gaussian_chain_satisfies_its_recursion(
        m in 1usize..5, a in 0.01f64..3.0, b in 0.01f64..3.0, sigma in 0.0f64..1.0,
        xr in -2.0f64..2.0, xi in -2.0f64..2.0,
    ) {
        let x = c(xr, xi);
        let i_m = gaussian_integral(m, a, b, sigma, x).unwrap();
        prop_assert!(i_m > 0.0 && i_m <= 1.0 + 1e-12);
        // I_m(a, b) = b/(b + 2aσ²) · I_{m−1}(a, b + 2aσ²)
        let shifted = b + 2.0 * a * sigma * sigma;
        let recursed = b / shifted * gaussian_integral(m - 1, a, shifted, sigma, x).unwrap();
        prop_assert!((i_m - recursed).abs() <= 1e-12 * i_m.max(1e-30));
    }

    #[test]
    fn partial_trace_is_basis_independent(seed in 0u64..500, da in 2usize..4, db in 2usize..4) {
        // rotating the traced subsystem cannot change the reduction
        let mut rs = uqm_core::RandomStream::new(seed);
        let n = da * db;
        let m = CMatrix::from_fn(n, n, |_, _| rs.complex_normal());
        let u = uqm_core::rng::haar_unitary(db, &mut rs);
        let big_u = CMatrix::identity(da, da).kronecker(&u);
        let rotated = &big_u * &m * big_u.adjoint();
        let direct = partial_trace(&m, &[1], &[da, db]).unwrap();
        let via_rotation = partial_trace(&rotated, &[1], &[da, db]).unwrap();
        prop_assert!((direct - via_rotation).norm() < 1e-10);
    }

    #[test]
    fn constructed_projectors_are_idempotent_hermitian(
        d in 2usize..4, k in 1usize..4, seed in 0u64..200,
    ) {
        // symmetric, antisymmetric, support and intersection projectors all
        // satisfy ||P² − P|| ≤ 10·tol and ||P − P†|| ≤ tol
        let parties: Vec<usize> = (0..k).collect();
        let sym = uqm_core::operator::symmetric_projector(d, k, &parties, k).unwrap();
        prop_assert!(sym.projector_defect() < 1e-8);
        let asym = uqm_core::operator::antisymmetric_projector(d, k, &parties, k).unwrap();
        prop_assert!(asym.operator.projector_defect() < 1e-8);

        let mut rs = uqm_core::RandomStream::new(seed);
        let g = CMatrix::from_fn(d, d, |_, _| rs.complex_normal());
        let psd = &g * g.adjoint();
        let h = uqm_core::operator::HermitianOperator::new(psd, 1e-8).unwrap();
        let supp = uqm_core::operator::support_projector(&h, 1e-9).unwrap();
        prop_assert!(supp.projector_defect() < 1e-8);
        let inter = uqm_core::operator::intersect_projectors(supp.matrix(), supp.matrix());
        prop_assert!((&inter * &inter - &inter).norm() < 1e-8);
    }

    #[test]
    fn recovery_map_contracts(x in 1e-6f64..=1.0) {
        let f = recovery_map(x);
        prop_assert!(f > 0.0);
        prop_assert!(f < x);
    }

    #[test]
    fn idp_probability_within_bounds(lambda in 0.0f64..0.99, eta1 in 0.01f64..0.99) {
        let brute = uqm_core::oracle::idp_brute_force(lambda, eta1);
        prop_assert!((0.0..=1.0 + 1e-9).contains(&brute));
        // never better than the fidelity bound for pure states
        let bound = 1.0 - 2.0 * (eta1 * (1.0 - eta1)).sqrt() * lambda;
        prop_assert!(brute <= bound + 1e-9);
    }
}
