//! Integration tests for comparison of sharp observables: the labeled
//! single-shot strategy, the unlabeled two-shot qubit strategy and the
//! subspace audit behind it.

use uqm_core::linalg::{cr, identity, inner, projector, trace_re, CMatrix, CVector};
use uqm_core::meas::{
    antisymmetric_test_state, four_qubit_subspace_audit, build_outcome_operators, diffdiff_strategy,
    identity_not_concludable, labeled_compare, singlet, unlabeled_detection, unlabeled_success,
    unlabeled_success_matrix, unlabeled_test_state, SharpObservable,
};
use uqm_core::operator::{support_projector, symmetric_projector, HermitianOperator};
use uqm_core::oracle::Accumulator;
use uqm_core::rng::haar_unitary;
use uqm_core::RandomStream;

fn computational(d: usize) -> SharpObservable {
    SharpObservable::from_unitary(&identity(d)).unwrap()
}

fn qubit_basis(theta: f64) -> SharpObservable {
    let psi = CVector::from_vec(vec![cr(theta.cos()), cr(theta.sin())]);
    let psi_perp = CVector::from_vec(vec![cr(-theta.sin()), cr(theta.cos())]);
    SharpObservable::from_basis(vec![psi, psi_perp]).unwrap()
}

#[test]
fn labeled_comparator_values() {
    let rho = antisymmetric_test_state(2).unwrap();
    let cmp = labeled_compare(2, &rho).unwrap();
    // identical observables never produce equal outcomes on the singlet
    let z = computational(2);
    assert!(cmp.q_same(&z, &z).abs() < 1e-12);
    // Z vs X: q_same = 1/2 (frozen from the direct 4x4 evaluation)
    let x = qubit_basis(std::f64::consts::FRAC_PI_4);
    assert!((cmp.q_same(&z, &x) - 0.5).abs() < 1e-12);
    // strictly positive whenever the observables differ
    let tilted = qubit_basis(0.3);
    assert!(cmp.q_same(&z, &tilted) > 1e-4);
    assert!((cmp.average_success - 0.5).abs() < 1e-15);

    // symmetric test states are rejected
    let sym_state = {
        let mut v = CVector::zeros(4);
        v[0] = cr(1.0);
        HermitianOperator::new(projector(&v), 1e-9).unwrap()
    };
    assert!(labeled_compare(2, &sym_state).is_err());
}

#[test]
fn labeled_average_matches_haar_sampling() {
    let mut rs = RandomStream::new(401);
    for d in [2usize, 3] {
        let rho = antisymmetric_test_state(d).unwrap();
        let cmp = labeled_compare(d, &rho).unwrap();
        let mut acc = Accumulator::new();
        for _ in 0..20_000 {
            let a = SharpObservable::from_unitary(&haar_unitary(d, &mut rs)).unwrap();
            let b = SharpObservable::from_unitary(&haar_unitary(d, &mut rs)).unwrap();
            acc.push(cmp.q_same(&a, &b));
        }
        assert!(
            acc.within(1.0 / d as f64, 3.5),
            "d={d}: {} ± {}",
            acc.mean(),
            acc.se()
        );
    }
}

#[test]
fn labeling_invariance_of_single_use() {
    // with unlabeled outcomes every (j, a) pair is equally likely for any
    // test state: averaging over label permutations gives 1/d² exactly
    let mut rs = RandomStream::new(409);
    let d = 2;
    let a = SharpObservable::from_unitary(&haar_unitary(d, &mut rs)).unwrap();
    let b = SharpObservable::from_unitary(&haar_unitary(d, &mut rs)).unwrap();
    let probe = uqm_core::rng::haar_state(4, &mut rs);
    let rho = projector(&probe);
    for j in 0..d {
        for a_out in 0..d {
            let mut p = 0.0;
            // S(2) × S(2) label permutations
            for pi in 0..2usize {
                for pi_b in 0..2usize {
                    let jj = if pi == 0 { j } else { 1 - j };
                    let aa = if pi_b == 0 { a_out } else { 1 - a_out };
                    let op = a.projector(jj).kronecker(&b.projector(aa));
                    p += trace_re(&(&rho * op)) / 4.0;
                }
            }
            assert!((p - 0.25).abs() < 1e-12, "outcome ({j},{a_out})");
        }
    }
}

#[test]
fn two_shot_probabilities_depend_only_on_outcome_relations() {
    let mut rs = RandomStream::new(419);
    let d = 2;
    let a = SharpObservable::from_unitary(&haar_unitary(d, &mut rs)).unwrap();
    let b = SharpObservable::from_unitary(&haar_unitary(d, &mut rs)).unwrap();
    let probe = uqm_core::rng::haar_state(16, &mut rs);
    let rho = projector(&probe);

    // label-permutation average of p_{jk,ab}
    let averaged = |j: usize, k: usize, a_o: usize, b_o: usize| -> f64 {
        let mut p = 0.0;
        for pi in 0..2usize {
            for pi_b in 0..2usize {
                let map = |x: usize, flip: usize| if flip == 0 { x } else { 1 - x };
                let op = a
                    .projector(map(j, pi))
                    .kronecker(&a.projector(map(k, pi)))
                    .kronecker(&b.projector(map(a_o, pi_b)))
                    .kronecker(&b.projector(map(b_o, pi_b)));
                p += trace_re(&(&rho * op)) / 4.0;
            }
        }
        p
    };

    // collect by (j == k, a == b) class: every member must coincide
    for class_jk in [true, false] {
        for class_ab in [true, false] {
            let mut values = Vec::new();
            for j in 0..2 {
                for k in 0..2 {
                    if (j == k) != class_jk {
                        continue;
                    }
                    for a_o in 0..2 {
                        for b_o in 0..2 {
                            if (a_o == b_o) != class_ab {
                                continue;
                            }
                            values.push(averaged(j, k, a_o, b_o));
                        }
                    }
                }
            }
            for w in values.windows(2) {
                assert!((w[0] - w[1]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn identity_obstruction_spectra() {
    let report = identity_not_concludable(2).unwrap();
    assert!(report.full_rank);
    assert!((report.different_rate - 0.25).abs() < 1e-15);
    // eigenvalues {1/2 (antisym), 1/6 (sym)} on two qubits
    let max = report.equal_diff_eigenvalues[0];
    let min = *report.equal_diff_eigenvalues.last().unwrap();
    assert!((max - 0.5).abs() < 1e-12);
    assert!((min - 1.0 / 6.0).abs() < 1e-12);

    let report = identity_not_concludable(3).unwrap();
    assert!(report.full_rank);
}

#[test]
fn outcome_operators_structure() {
    let ops = build_outcome_operators(2).unwrap();
    assert!(build_outcome_operators(3).is_err());

    // A≠B same-same operator is d² R̄_same ⊗ R̄_same
    let p_sym2 = symmetric_projector(2, 2, &[0, 1], 2).unwrap();
    let r_same = p_sym2.matrix() / cr(3.0);
    let expect = (r_same.kronecker(&r_same)) * cr(4.0);
    assert!((ops.different.same_same.matrix() - expect).norm() < 1e-12);

    // per-hypothesis completeness: the four classes sum to identity
    for hyp in [&ops.equal, &ops.different] {
        let mut sum = CMatrix::zeros(16, 16);
        for op in hyp.all() {
            sum += op.matrix();
            assert!(op.min_eigenvalue() > -1e-10);
        }
        assert!((sum - identity(16)).norm() < 1e-10);
    }

    // support containment Π^{A=B} ≤ Π^{A≠B} for every class, with equality
    // (empty conclusive space) exactly for same-same
    let pairs = [
        (&ops.equal.same_same, &ops.different.same_same, true),
        (&ops.equal.same_diff, &ops.different.same_diff, false),
        (&ops.equal.diff_same, &ops.different.diff_same, false),
        (&ops.equal.diff_diff, &ops.different.diff_diff, false),
    ];
    for (eq, diff, must_be_equal) in pairs {
        let pi_eq = support_projector(eq, 1e-9).unwrap();
        let pi_diff = support_projector(diff, 1e-9).unwrap();
        // containment: Π_diff Π_eq = Π_eq
        assert!((pi_diff.matrix() * pi_eq.matrix() - pi_eq.matrix()).norm() < 1e-8);
        let equal_supports = (pi_diff.matrix() - pi_eq.matrix()).norm() < 1e-8;
        assert_eq!(equal_supports, must_be_equal);
    }
}

#[test]
fn outcome_operator_matches_haar_monte_carlo() {
    // O^{A=B}_{same,same} against 1e5 Haar samples of A^U_same ⊗ A^U_same
    let ops = build_outcome_operators(2).unwrap();
    let closed = ops.equal.same_same.matrix().clone();
    let mut rs = RandomStream::new(421);
    let n = 100_000;
    let mut acc = vec![Accumulator::new(); 16 * 16 * 2];
    for _ in 0..n {
        let a = SharpObservable::from_unitary(&haar_unitary(2, &mut rs)).unwrap();
        let same = a.same_operator();
        let big = same.kronecker(&same);
        for r in 0..16 {
            for c_ in 0..16 {
                acc[2 * (r * 16 + c_)].push(big[(r, c_)].re);
                acc[2 * (r * 16 + c_) + 1].push(big[(r, c_)].im);
            }
        }
    }
    for r in 0..16 {
        for c_ in 0..16 {
            assert!(
                acc[2 * (r * 16 + c_)].within(closed[(r, c_)].re, 4.0),
                "({r},{c_}) re"
            );
            assert!(
                acc[2 * (r * 16 + c_) + 1].within(closed[(r, c_)].im, 4.0),
                "({r},{c_}) im"
            );
        }
    }
}

#[test]
fn optimal_test_state_properties() {
    let phi_q = unlabeled_test_state();
    assert!((phi_q.norm() - 1.0).abs() < 1e-12);

    // annihilated by every three-party symmetric projector
    for parties in [[0usize, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
        let p = symmetric_projector(2, 3, &parties, 4).unwrap();
        assert!((p.matrix() * &phi_q).norm() < 1e-12, "{parties:?}");
    }
    // symmetric within each apparatus pair
    let p12 = symmetric_projector(2, 2, &[0, 1], 4).unwrap();
    let p34 = symmetric_projector(2, 2, &[2, 3], 4).unwrap();
    assert!((p12.matrix() * &phi_q - &phi_q).norm() < 1e-12);
    assert!((p34.matrix() * &phi_q - &phi_q).norm() < 1e-12);

    // uniqueness: the no-error solution space inside P12⊗P34 is exactly
    // one-dimensional and spanned by φ_Q
    let p123 = symmetric_projector(2, 3, &[0, 1, 2], 4).unwrap();
    let p124 = symmetric_projector(2, 3, &[0, 1, 3], 4).unwrap();
    let constraint = p123.matrix() + p124.matrix();
    let inside = p12.matrix() * p34.matrix();
    // eigenvectors of (constraint) restricted to the product-symmetric
    // subspace with eigenvalue 0
    let restricted = &inside * constraint * &inside + (identity(16) - &inside) * cr(10.0);
    let (vals, vecs) = uqm_core::linalg::herm_eigen(&restricted);
    let kernel: Vec<usize> = vals
        .iter()
        .enumerate()
        .filter(|(_, &v)| v.abs() < 1e-9)
        .map(|(i, _)| i)
        .collect();
    assert_eq!(kernel.len(), 1, "no-error space must be one-dimensional");
    let v = vecs.column(kernel[0]).into_owned();
    let overlap = inner(&v, &phi_q).norm();
    assert!((overlap - 1.0).abs() < 1e-9, "kernel vector differs from φ_Q");
}

#[test]
fn unlabeled_success_closed_form_and_matrix_route() {
    // frozen values
    assert!(unlabeled_success(
        &CVector::from_vec(vec![cr(1.0), cr(0.0)]),
        &CVector::from_vec(vec![cr(1.0), cr(0.0)])
    )
    .abs()
        < 1e-15);
    let theta = std::f64::consts::FRAC_PI_4;
    let z = computational(2);
    let x = qubit_basis(theta);
    assert!((unlabeled_success(&z.basis[0], &x.basis[0]) - 2.0 / 3.0).abs() < 1e-12);

    // θ grid: closed form vs dense 16×16 evaluation
    for i in 0..=40 {
        let theta = i as f64 * std::f64::consts::FRAC_PI_2 / 40.0;
        let b = qubit_basis(theta);
        let closed = unlabeled_success(&z.basis[0], &b.basis[0]);
        let dense = unlabeled_success_matrix(&z, &b);
        assert!((closed - dense).abs() < 1e-10, "θ = {theta}");
    }

    // Haar average 4/9
    let mut rs = RandomStream::new(431);
    let mut acc = Accumulator::new();
    for _ in 0..20_000 {
        let a = SharpObservable::from_unitary(&haar_unitary(2, &mut rs)).unwrap();
        let b = SharpObservable::from_unitary(&haar_unitary(2, &mut rs)).unwrap();
        acc.push(unlabeled_success_matrix(&a, &b));
    }
    assert!(acc.within(4.0 / 9.0, 3.5), "{} ± {}", acc.mean(), acc.se());
}

#[test]
fn conclusive_classes_are_same_diff_and_diff_same() {
    // on φ_Q the A=B hypothesis never produces (same,diff) or (diff,same)
    let ops = build_outcome_operators(2).unwrap();
    let phi_q = unlabeled_test_state();
    let sd = inner(&phi_q, &(ops.equal.same_diff.matrix() * &phi_q)).re;
    let ds = inner(&phi_q, &(ops.equal.diff_same.matrix() * &phi_q)).re;
    assert!(sd.abs() < 1e-12 && ds.abs() < 1e-12);
    // and the A≠B weight of those classes is exactly 4/9
    let sd = inner(&phi_q, &(ops.different.same_diff.matrix() * &phi_q)).re;
    let ds = inner(&phi_q, &(ops.different.diff_same.matrix() * &phi_q)).re;
    assert!((sd + ds - 4.0 / 9.0).abs() < 1e-12);
}

#[test]
fn diffdiff_strategy_space() {
    let (kappas, value) = diffdiff_strategy();
    assert_eq!(value, 1.0 / 9.0);
    let ops = build_outcome_operators(2).unwrap();
    let p12 = symmetric_projector(2, 2, &[0, 1], 4).unwrap();
    let p34 = symmetric_projector(2, 2, &[2, 3], 4).unwrap();
    let p13_24 = symmetric_projector(2, 2, &[0, 2], 4).unwrap().matrix()
        * symmetric_projector(2, 2, &[1, 3], 4).unwrap().matrix();
    let p14_23 = symmetric_projector(2, 2, &[0, 3], 4).unwrap().matrix()
        * symmetric_projector(2, 2, &[1, 2], 4).unwrap().matrix();

    for (i, k) in kappas.iter().enumerate() {
        for (j, l) in kappas.iter().enumerate() {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((inner(k, l) - cr(expect)).norm() < 1e-12);
        }
        // inside the product-symmetric subspace
        assert!((p12.matrix() * k - k).norm() < 1e-12);
        assert!((p34.matrix() * k - k).norm() < 1e-12);
        // no-error condition
        let rho = projector(k);
        assert!(trace_re(&(&rho * (&p13_24 + &p14_23))).abs() < 1e-12);
        // value 1/9 for every state in the span
        let got = inner(k, &(ops.different.diff_diff.matrix() * k)).re;
        assert!((got - 1.0 / 9.0).abs() < 1e-12);
        // ... and the equal hypothesis never lands there
        let eq = inner(k, &(ops.equal.diff_diff.matrix() * k)).re;
        assert!(eq.abs() < 1e-12);
    }
    // sanity: the optimal test state φ_Q lies outside this span
    let phi_q = unlabeled_test_state();
    let overlap: f64 = kappas.iter().map(|k| inner(k, &phi_q).norm_sqr()).sum();
    assert!(overlap < 1.0 - 1e-6);
    let _ = singlet();
}

#[test]
fn unlabeled_detection_values() {
    assert!((unlabeled_detection(0.5, std::f64::consts::FRAC_PI_2).unwrap() - 0.5).abs() < 1e-15);
    assert!(unlabeled_detection(0.3, 0.0).unwrap().abs() < 1e-15);
    assert!(
        (unlabeled_detection(0.5, std::f64::consts::FRAC_PI_4).unwrap() - 0.25).abs() < 1e-15
    );
    assert!(unlabeled_detection(1.5, 0.2).is_err());
    assert!(unlabeled_detection(0.5, 4.0).is_err());
}

#[test]
fn subspace_audit_passes() {
    let audit = four_qubit_subspace_audit().unwrap();
    assert!(audit.passes(), "{audit:?}");
}
